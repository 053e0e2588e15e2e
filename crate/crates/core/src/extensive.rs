//! Sequential retellings of a strategic game.
//!
//! [`sequentialize`] turns a simultaneous game into a perfect-information tree
//! in which players move one at a time in a chosen order, each seeing every
//! earlier move. [`backward_induction`] then finds every subgame-perfect
//! outcome. Ties are never broken: when a mover is indifferent, every
//! resolution is kept.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::game::{check_permutation, Game, Profile, Rank};

/// A permutation of the game's players, first mover first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MoveOrder(Vec<usize>);

impl MoveOrder {
    pub fn new(order: Vec<usize>, num_players: usize) -> Result<Self> {
        check_permutation(&order, num_players)?;
        Ok(MoveOrder(order))
    }

    /// Parses a comma-separated list of player display names.
    pub fn parse(game: &Game, names: &str) -> Result<Self> {
        let order = names
            .split(',')
            .map(|n| game.player_by_name(n.trim()).map(|p| p.index))
            .collect::<Result<Vec<_>>>()?;
        MoveOrder::new(order, game.num_players())
    }

    /// The identity order.
    pub fn natural(num_players: usize) -> Self {
        MoveOrder((0..num_players).collect())
    }

    /// Every order of `num_players` players, lexicographically.
    pub fn all(num_players: usize) -> Vec<MoveOrder> {
        fn extend(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<MoveOrder>) {
            if prefix.len() == used.len() {
                out.push(MoveOrder(prefix.clone()));
                return;
            }
            for i in 0..used.len() {
                if !used[i] {
                    used[i] = true;
                    prefix.push(i);
                    extend(prefix, used, out);
                    prefix.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        extend(&mut Vec::new(), &mut vec![false; num_players], &mut out);
        out
    }

    pub fn players(&self) -> &[usize] {
        &self.0
    }

    pub fn display(&self, game: &Game) -> String {
        self.0
            .iter()
            .map(|&i| game.players()[i].name.as_str())
            .collect::<Vec<_>>()
            .join(",")
    }
}

pub type NodeId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Decision {
        mover: usize,
        /// One child per action of the mover, in action order.
        children: Vec<NodeId>,
    },
    Leaf {
        profile: Profile,
        ranks: Vec<Rank>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    /// Actions taken so far, in move order.
    pub history: Vec<usize>,
    pub kind: NodeKind,
}

#[derive(Clone, Debug)]
pub struct GameTree {
    order: MoveOrder,
    /// Pre-order: every child has a larger id than its parent. Root is 0.
    nodes: Vec<Node>,
}

impl GameTree {
    pub const ROOT: NodeId = 0;

    pub fn order(&self) -> &MoveOrder {
        &self.order
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn leaves(&self) -> impl Iterator<Item = (NodeId, &Profile, &[Rank])> {
        self.nodes
            .iter()
            .enumerate()
            .filter_map(|(id, n)| match &n.kind {
                NodeKind::Leaf { profile, ranks } => Some((id, profile, ranks.as_slice())),
                NodeKind::Decision { .. } => None,
            })
    }

    pub fn depth(&self) -> usize {
        self.order.0.len()
    }
}

/// Builds the perfect-information tree in which players move in `order`.
pub fn sequentialize(game: &Game, order: &MoveOrder) -> Result<GameTree> {
    check_permutation(&order.0, game.num_players())?;
    let mut tree = GameTree {
        order: order.clone(),
        nodes: Vec::new(),
    };
    grow(game, &mut tree, Vec::new())?;
    Ok(tree)
}

fn grow(game: &Game, tree: &mut GameTree, history: Vec<usize>) -> Result<NodeId> {
    let id = tree.nodes.len();
    let depth = history.len();
    if depth == tree.order.0.len() {
        let mut actions = vec![0; depth];
        for (&player, &a) in tree.order.0.iter().zip(&history) {
            actions[player] = a;
        }
        let profile = Profile::new(actions);
        let ranks = game.ranks(&profile)?.to_vec();
        tree.nodes.push(Node {
            history,
            kind: NodeKind::Leaf { profile, ranks },
        });
        return Ok(id);
    }
    let mover = tree.order.0[depth];
    tree.nodes.push(Node {
        history: history.clone(),
        kind: NodeKind::Decision {
            mover,
            children: Vec::new(),
        },
    });
    let mut kids = Vec::with_capacity(game.actions(mover).len());
    for a in 0..game.actions(mover).len() {
        let mut next = history.clone();
        next.push(a);
        kids.push(grow(game, tree, next)?);
    }
    if let NodeKind::Decision { children, .. } = &mut tree.nodes[id].kind {
        *children = kids;
    }
    Ok(id)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InductionSolution {
    /// Subgame-perfect outcome profiles, lexicographic.
    pub outcomes: Vec<Profile>,
    /// For decision nodes, the actions some subgame-perfect strategy takes
    /// there. `None` for leaves.
    pub optimal: Vec<Option<Vec<usize>>>,
}

impl InductionSolution {
    pub fn optimal_at(&self, node: NodeId) -> Option<&[usize]> {
        self.optimal[node].as_deref()
    }
}

/// Subgame-perfect outcomes of a perfect-information tree, with ties kept.
///
/// Each subgame's outcome set is the set of outcomes of its subgame-perfect
/// strategies. At a node, the mover can settle on child `a` with outcome `o`
/// exactly when `o` is at least as good for the mover as the worst outcome
/// every other child could be resolved to; otherwise some equally rational
/// continuation elsewhere would be strictly better.
pub fn backward_induction(tree: &GameTree) -> InductionSolution {
    let n = tree.nodes.len();
    // Outcome sets as sorted leaf-id lists.
    let mut reach: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    let mut optimal: Vec<Option<Vec<usize>>> = vec![None; n];
    let rank_of = |leaf: NodeId, player: usize| match &tree.nodes[leaf].kind {
        NodeKind::Leaf { ranks, .. } => ranks[player],
        NodeKind::Decision { .. } => unreachable!("outcome sets hold leaves only"),
    };

    for id in (0..n).rev() {
        match &tree.nodes[id].kind {
            NodeKind::Leaf { .. } => reach[id] = vec![id],
            NodeKind::Decision { mover, children } => {
                let floors: Vec<Rank> = children
                    .iter()
                    .map(|&c| {
                        reach[c]
                            .iter()
                            .map(|&l| rank_of(l, *mover))
                            .min()
                            .expect("nonempty subgame outcome set")
                    })
                    .collect();
                let mut here = Vec::new();
                let mut best = Vec::new();
                for (a, &c) in children.iter().enumerate() {
                    // The strongest rival floor among the other actions.
                    let rival = floors
                        .iter()
                        .enumerate()
                        .filter(|&(b, _)| b != a)
                        .map(|(_, &r)| r)
                        .max();
                    let kept: Vec<NodeId> = reach[c]
                        .iter()
                        .copied()
                        .filter(|&l| rival.is_none_or(|r| rank_of(l, *mover) >= r))
                        .collect();
                    if !kept.is_empty() {
                        best.push(a);
                        here.extend(kept);
                    }
                }
                here.sort_unstable();
                reach[id] = here;
                optimal[id] = Some(best);
            }
        }
    }

    let mut outcomes: Vec<Profile> = reach
        .first()
        .into_iter()
        .flatten()
        .map(|&l| match &tree.nodes[l].kind {
            NodeKind::Leaf { profile, .. } => profile.clone(),
            NodeKind::Decision { .. } => unreachable!(),
        })
        .collect();
    outcomes.sort();
    InductionSolution { outcomes, optimal }
}

/// Subgame-perfect outcomes of `game` played sequentially in `order`.
pub fn subgame_perfect_outcomes(game: &Game, order: &MoveOrder) -> Result<Vec<Profile>> {
    Ok(backward_induction(&sequentialize(game, order)?).outcomes)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramingEntry {
    pub order: MoveOrder,
    pub outcomes: Vec<Profile>,
}

/// Orders grouped by the outcome set they produce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramingSummary {
    pub all_same: bool,
    /// Each distinct outcome set with the indices (into the report entries)
    /// of the orders producing it, in order of first appearance.
    pub groups: Vec<(Vec<Profile>, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramingReport {
    pub entries: Vec<FramingEntry>,
    /// Present when more than one order was analysed.
    pub summary: Option<FramingSummary>,
}

pub fn framing_report(game: &Game, orders: &[MoveOrder]) -> Result<FramingReport> {
    if orders.is_empty() {
        return Err(Error::invalid("framing needs at least one move order"));
    }
    let entries = orders
        .iter()
        .map(|order| {
            Ok(FramingEntry {
                order: order.clone(),
                outcomes: subgame_perfect_outcomes(game, order)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let summary = (entries.len() > 1).then(|| {
        let mut index: BTreeMap<&[Profile], usize> = BTreeMap::new();
        let mut groups: Vec<(Vec<Profile>, Vec<usize>)> = Vec::new();
        for (i, e) in entries.iter().enumerate() {
            let g = *index.entry(&e.outcomes).or_insert_with(|| {
                groups.push((e.outcomes.clone(), Vec::new()));
                groups.len() - 1
            });
            groups[g].1.push(i);
        }
        FramingSummary {
            all_same: groups.len() == 1,
            groups,
        }
    });
    Ok(FramingReport { entries, summary })
}

impl fmt::Display for MoveOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}
