//! Fixtures shared by the benchmarks.

use multiself::{build_composite_game, Action, CompositeSpec, Game};

pub fn reference_game() -> Game {
    build_composite_game(&CompositeSpec::prisoners_dilemma(1)).expect("reference spec builds")
}

/// A game with `players` players and `actions` actions each, ranks drawn from a
/// fixed arithmetic scramble so runs are reproducible.
pub fn scrambled_game(players: usize, actions: usize) -> Game {
    let names = (0..players).map(|i| format!("p{i}")).collect();
    let sets = vec![(0..actions).map(|a| Action::new(format!("a{a}"))).collect(); players];
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    Game::from_fn(names, sets, 4, |_| {
        Ok((0..players)
            .map(|_| {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                1 + ((state >> 33) % 4) as u32
            })
            .collect())
    })
    .expect("scrambled game is complete")
}
