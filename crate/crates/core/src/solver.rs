//! Best responses, pure Nash equilibria and internal-conflict detection.
//!
//! A profile is an equilibrium when every player's action is a weak best
//! response: no unilateral deviation reaches a strictly higher rank.

use crate::error::{Error, Result};
use crate::game::{Game, Profile, Rank};
use crate::multiself::CompositeSpec;

/// Best responses of one player to a fixed context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BestResponseMark {
    pub player: usize,
    /// Action indices of every other player, in player order.
    pub context: Vec<usize>,
    /// Never empty; ascending action indices.
    pub responses: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConflictFlags {
    pub profile: Profile,
    /// One flag per person: true when its trait-players disagree.
    pub persons: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquilibriumReport {
    /// Lexicographic profile order.
    pub equilibria: Vec<Profile>,
    /// Filled when the game carries person metadata.
    pub conflicts: Option<Vec<ConflictFlags>>,
}

fn check_context(game: &Game, player: usize, context: &[usize]) -> Result<()> {
    game.player(player)?;
    if context.len() + 1 != game.num_players() {
        return Err(Error::invalid(format!(
            "context fixes {} players, expected {}",
            context.len(),
            game.num_players() - 1
        )));
    }
    Ok(())
}

fn best_of(game: &Game, player: usize, context: &[usize]) -> Result<Vec<usize>> {
    let ranks: Vec<Rank> = (0..game.actions(player).len())
        .map(|a| game.payoff_of(&Profile::from_others(player, a, context), player))
        .collect::<Result<_>>()?;
    let top = ranks
        .iter()
        .copied()
        .max()
        .expect("action sets are nonempty");
    Ok(ranks
        .iter()
        .enumerate()
        .filter(|&(_, &r)| r == top)
        .map(|(a, _)| a)
        .collect())
}

/// All actions of `player` that reach the highest rank given the other
/// players' actions. Ties are all returned.
pub fn best_responses(game: &Game, player: usize, context: &[usize]) -> Result<Vec<usize>> {
    check_context(game, player, context)?;
    best_of(game, player, context)
}

/// Marks for every player against every context, players in index order and
/// contexts in lexicographic order.
pub fn best_response_marks(game: &Game) -> Vec<BestResponseMark> {
    let mut marks = Vec::new();
    for player in 0..game.num_players() {
        // Profiles with `player` fixed at 0 enumerate each context exactly once.
        for profile in game.enumerate_profiles().filter(|p| p.action(player) == 0) {
            let context = profile.others(player);
            let responses = best_of(game, player, &context).expect("enumerated context");
            marks.push(BestResponseMark {
                player,
                context,
                responses,
            });
        }
    }
    marks
}

/// For each profile (enumeration order) and player: is that player's action a
/// best response to the rest of the profile?
pub fn best_response_flags(game: &Game) -> Vec<Vec<bool>> {
    let n = game.num_players();
    let mut lookup: Vec<std::collections::HashMap<Vec<usize>, Vec<usize>>> =
        vec![Default::default(); n];
    for mark in best_response_marks(game) {
        lookup[mark.player].insert(mark.context, mark.responses);
    }
    game.enumerate_profiles()
        .map(|p| {
            (0..n)
                .map(|i| lookup[i][&p.others(i)].contains(&p.action(i)))
                .collect()
        })
        .collect()
}

pub fn pure_nash(game: &Game) -> EquilibriumReport {
    let equilibria: Vec<Profile> = game
        .enumerate_profiles()
        .zip(best_response_flags(game))
        .filter(|(_, flags)| flags.iter().all(|&f| f))
        .map(|(p, _)| p)
        .collect();
    let conflicts = game.persons().map(|persons| {
        equilibria
            .iter()
            .map(|p| ConflictFlags {
                profile: p.clone(),
                persons: persons
                    .iter()
                    .map(|info| disagree(info.players.iter().map(|&i| p.action(i))))
                    .collect(),
            })
            .collect()
    });
    EquilibriumReport {
        equilibria,
        conflicts,
    }
}

fn disagree(mut actions: impl Iterator<Item = usize>) -> bool {
    match actions.next() {
        Some(first) => actions.any(|a| a != first),
        None => false,
    }
}

/// Per-person disagreement at a single profile of the game built from `spec`.
pub fn conflict_flags(spec: &CompositeSpec, profile: &Profile) -> Result<ConflictFlags> {
    if profile.len() != spec.player_count() {
        return Err(Error::invalid(format!(
            "profile has {} entries, spec has {} trait-players",
            profile.len(),
            spec.player_count()
        )));
    }
    let persons = spec
        .person_players()
        .into_iter()
        .map(|players| disagree(players.into_iter().map(|i| profile.action(i))))
        .collect();
    Ok(ConflictFlags {
        profile: profile.clone(),
        persons,
    })
}

/// Conflict flags for each equilibrium in `report`.
pub fn internal_conflict(
    report: &EquilibriumReport,
    spec: &CompositeSpec,
) -> Result<Vec<ConflictFlags>> {
    report
        .equilibria
        .iter()
        .map(|p| conflict_flags(spec, p))
        .collect()
}
