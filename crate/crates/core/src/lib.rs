//! Multiple-self normal-form games.
//!
//! Persons are split into independent trait-players (for example a mercenary
//! and an altruistic side) whose joint internal choices decide what the person
//! actually does. This crate builds the resulting many-player game with
//! ordinal payoffs and analyses it: best responses, pure Nash equilibria,
//! internal conflict at equilibrium, and subgame-perfect outcomes when the
//! simultaneous game is retold as a sequence of moves.
//!
//! ```
//! use multiself::{build_composite_game, pure_nash, CompositeSpec};
//!
//! let game = build_composite_game(&CompositeSpec::prisoners_dilemma(1)).unwrap();
//! let report = pure_nash(&game);
//! assert_eq!(report.equilibria.len(), 4);
//! ```

pub mod error;
pub mod extensive;
pub mod game;
pub mod io;
pub mod multiself;
pub mod preferences;
pub mod solver;

pub use error::{Error, Result};
pub use extensive::{
    backward_induction, framing_report, sequentialize, subgame_perfect_outcomes, FramingReport,
    GameTree, InductionSolution, MoveOrder,
};
pub use game::{Action, Game, GameDraft, PlayerId, Profile, Rank, ValidationReport};
pub use multiself::{
    aggregate_action, build_composite_game, build_composite_game_with, person_actions,
    AggregationRule, CompositeSpec, Person, TraitPlayer,
};
pub use preferences::{altruistic_rank, mercenary_rank, PreferenceGenerator};
pub use solver::{
    best_response_flags, best_response_marks, best_responses, conflict_flags, internal_conflict,
    pure_nash, BestResponseMark, ConflictFlags, EquilibriumReport,
};
