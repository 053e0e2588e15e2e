//! Test-only oracles and fixtures.
//!
//! Nothing here calls the library's enumeration, deviation, best-response or
//! tree code. Payoffs are read through `Game::payoff_of` only.

#![allow(dead_code)]

use std::collections::BTreeSet;

use multiself::{Action, Game, Profile};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The reference payoff table: cells in (Pm, Pa, Qm, Qa) action order, ranks in the
/// same player order, `*` where the rank is italicised as a best response.
pub const REFERENCE_TABLE: [(&str, &str); 16] = [
    ("CCCC", "3 3* 3 3*"),
    ("CCCD", "1 1* 4* 3*"),
    ("CCDC", "1 1* 4* 4*"),
    ("CCDD", "1 1* 4* 3"),
    ("CDCC", "4* 3* 1 1*"),
    ("CDCD", "2* 1* 2* 1*"),
    ("CDDC", "2* 1* 2* 2*"),
    ("CDDD", "2* 1* 2* 1"),
    ("DCCC", "4* 4* 1 1*"),
    ("DCCD", "2* 2* 2* 1*"),
    ("DCDC", "2* 2* 2* 2*"),
    ("DCDD", "2* 2* 2* 1"),
    ("DDCC", "4* 3 1 1*"),
    ("DDCD", "2* 1 2* 1*"),
    ("DDDC", "2* 1 2* 2*"),
    ("DDDD", "2* 1 2* 1"),
];

pub const REFERENCE_EQUILIBRIA: [&str; 4] = ["CDCD", "CDDC", "DCCD", "DCDC"];

/// (rank, marked) pairs for one reference table cell.
pub fn table_cell(cell: &str) -> Vec<(u32, bool)> {
    cell.split(' ')
        .map(|t| {
            let marked = t.ends_with('*');
            (t.trim_end_matches('*').parse().unwrap(), marked)
        })
        .collect()
}

pub fn profile_of(game: &Game, letters: &str) -> Profile {
    let labels: Vec<String> = letters.chars().map(String::from).collect();
    game.profile_from_labels(&labels).unwrap()
}

pub fn letters(game: &Game, profile: &Profile) -> String {
    game.profile_labels(profile).concat()
}

/// Every index vector for the given action-set sizes, by plain counting.
pub fn all_index_vectors(sizes: &[usize]) -> Vec<Vec<usize>> {
    let total: usize = sizes.iter().product();
    (0..total)
        .map(|mut k| {
            let mut v = vec![0; sizes.len()];
            for i in (0..sizes.len()).rev() {
                v[i] = k % sizes[i];
                k /= sizes[i];
            }
            v
        })
        .collect()
}

fn sizes(game: &Game) -> Vec<usize> {
    (0..game.num_players())
        .map(|i| game.actions(i).len())
        .collect()
}

fn rank(game: &Game, v: &[usize], player: usize) -> u32 {
    game.payoff_of(&Profile::new(v.to_vec()), player)
        .unwrap()
        .value()
}

/// Keep a profile iff no player gains strictly by switching alone.
pub fn nash_by_definition(game: &Game) -> Vec<Profile> {
    let sizes = sizes(game);
    let mut out = Vec::new();
    for v in all_index_vectors(&sizes) {
        let mut stable = true;
        'players: for i in 0..sizes.len() {
            let here = rank(game, &v, i);
            for d in 0..sizes[i] {
                let mut w = v.clone();
                w[i] = d;
                if rank(game, &w, i) > here {
                    stable = false;
                    break 'players;
                }
            }
        }
        if stable {
            out.push(Profile::new(v));
        }
    }
    out.sort();
    out
}

/// Weak best responses of `player` by direct scan, given a full profile.
pub fn best_by_scan(game: &Game, player: usize, v: &[usize]) -> Vec<usize> {
    let n_actions = game.actions(player).len();
    let ranks: Vec<u32> = (0..n_actions)
        .map(|a| {
            let mut w = v.to_vec();
            w[player] = a;
            rank(game, &w, player)
        })
        .collect();
    let top = *ranks.iter().max().unwrap();
    (0..n_actions).filter(|&a| ranks[a] == top).collect()
}

fn to_profile(order: &[usize], history: &[usize]) -> Vec<usize> {
    let mut v = vec![0; order.len()];
    for (k, &p) in order.iter().enumerate() {
        v[p] = history[k];
    }
    v
}

/// Subgame-perfect outcomes by trying every pure strategy of the sequential
/// game (one action per decision node) and keeping those with no profitable
/// one-shot deviation at any node. Exponential in the node count; meant for
/// trees with at most ~16 decision nodes.
pub fn spe_by_strategy_enumeration(game: &Game, order: &[usize]) -> Vec<Profile> {
    let n = order.len();
    let sizes = sizes(game);
    // Every history, breadth-first; decision nodes are those shorter than n.
    let mut histories: Vec<Vec<usize>> = vec![vec![]];
    let mut children: Vec<Vec<usize>> = Vec::new();
    let mut k = 0;
    while k < histories.len() {
        let h = histories[k].clone();
        let mut kids = Vec::new();
        if h.len() < n {
            for a in 0..sizes[order[h.len()]] {
                let mut g = h.clone();
                g.push(a);
                kids.push(histories.len());
                histories.push(g);
            }
        }
        children.push(kids);
        k += 1;
    }
    let decisions: Vec<usize> = (0..histories.len())
        .filter(|&i| !children[i].is_empty())
        .collect();
    let choice_sizes: Vec<usize> = decisions.iter().map(|&i| children[i].len()).collect();
    let leaf_ranks: Vec<Option<Vec<u32>>> = histories
        .iter()
        .map(|h| {
            (h.len() == n).then(|| {
                let v = to_profile(order, h);
                (0..n).map(|p| rank(game, &v, p)).collect()
            })
        })
        .collect();

    let mut outcomes = BTreeSet::new();
    let mut reached = vec![0usize; histories.len()];
    for strategy in all_index_vectors(&choice_sizes) {
        let mut choice = vec![0usize; histories.len()];
        for (d, &i) in decisions.iter().enumerate() {
            choice[i] = strategy[d];
        }
        for i in (0..histories.len()).rev() {
            reached[i] = if children[i].is_empty() {
                i
            } else {
                reached[children[i][choice[i]]]
            };
        }
        let value = |node: usize, mover: usize| leaf_ranks[reached[node]].as_ref().unwrap()[mover];
        let perfect = decisions.iter().all(|&i| {
            let mover = order[histories[i].len()];
            let chosen = value(children[i][choice[i]], mover);
            children[i].iter().all(|&c| value(c, mover) <= chosen)
        });
        if perfect {
            outcomes.insert(to_profile(order, &histories[reached[0]]));
        }
    }
    outcomes.into_iter().map(Profile::new).collect()
}

/// Subgame-perfect outcomes by enumerating, at every node, every combination
/// of outcomes its subgames can be resolved to, and every maximising choice
/// the mover can make against that combination. Subgames are resolved
/// independently, so this covers every tie resolution.
pub fn spe_by_resolution_enumeration(game: &Game, order: &[usize]) -> Vec<Profile> {
    fn solve(game: &Game, order: &[usize], history: &mut Vec<usize>) -> BTreeSet<Vec<usize>> {
        if history.len() == order.len() {
            return BTreeSet::from([to_profile(order, history)]);
        }
        let mover = order[history.len()];
        let mut child_sets = Vec::new();
        for a in 0..game.actions(mover).len() {
            history.push(a);
            child_sets.push(solve(game, order, history).into_iter().collect::<Vec<_>>());
            history.pop();
        }
        let mut out = BTreeSet::new();
        let child_sizes: Vec<usize> = child_sets.iter().map(Vec::len).collect();
        for pick in all_index_vectors(&child_sizes) {
            let resolved: Vec<&Vec<usize>> = pick
                .iter()
                .enumerate()
                .map(|(a, &k)| &child_sets[a][k])
                .collect();
            let values: Vec<u32> = resolved.iter().map(|v| rank(game, v, mover)).collect();
            let top = *values.iter().max().unwrap();
            for (a, v) in resolved.iter().enumerate() {
                if values[a] == top {
                    out.insert((*v).clone());
                }
            }
        }
        out
    }
    solve(game, order, &mut Vec::new())
        .into_iter()
        .map(Profile::new)
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform ranks in `1..=scale_max` over a random shape.
pub fn random_game(
    rng: &mut ChaCha8Rng,
    players: std::ops::RangeInclusive<usize>,
    actions: std::ops::RangeInclusive<usize>,
    scale_max: u32,
) -> Game {
    let n = rng.gen_range(players);
    let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(actions.clone())).collect();
    let names = (0..n).map(|i| format!("p{i}")).collect();
    let sets = sizes
        .iter()
        .map(|&s| (0..s).map(|a| Action::new(format!("a{a}"))).collect())
        .collect();
    Game::from_fn(names, sets, scale_max, |_| {
        Ok((0..n).map(|_| rng.gen_range(1..=scale_max)).collect())
    })
    .unwrap()
}

pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        v.swap(i, j);
    }
    v
}
