//! Built-in preference generators for the two-person Prisoners' Dilemma.
//!
//! Both generators see only person-level outcomes: how the trait-player's own
//! person acted and how the other person acted. The altruistic generator also
//! sees the trait-player's own internal action, since its guilt depends on it.

use crate::error::{Error, Result};
use crate::game::{Action, Rank};

pub const PD_SCALE_MAX: u32 = 4;

/// Cooperate/defect, the only alphabet the built-in generators understand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Choice {
    Cooperate,
    Defect,
}

impl Choice {
    pub fn from_action(action: &Action) -> Result<Self> {
        match action.label() {
            "C" => Ok(Choice::Cooperate),
            "D" => Ok(Choice::Defect),
            other => Err(Error::invalid(format!(
                "`{other}` is not a cooperate/defect action"
            ))),
        }
    }

    pub fn to_action(self) -> Action {
        match self {
            Choice::Cooperate => Action::cooperate(),
            Choice::Defect => Action::defect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PreferenceGenerator {
    Mercenary,
    Altruistic { guilt: u32 },
}

impl PreferenceGenerator {
    pub const fn altruistic() -> Self {
        PreferenceGenerator::Altruistic { guilt: 1 }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            PreferenceGenerator::Mercenary => "mercenary",
            PreferenceGenerator::Altruistic { .. } => "altruistic",
        }
    }

    pub fn guilt(&self) -> Option<u32> {
        match self {
            PreferenceGenerator::Mercenary => None,
            PreferenceGenerator::Altruistic { guilt } => Some(*guilt),
        }
    }

    /// Rank for a trait-player given its own internal action, its person's
    /// aggregated action and the aggregated actions of every other person.
    /// The built-ins are defined against exactly one other person.
    pub fn rank(&self, own: &Action, person: &Action, others: &[Action]) -> Result<Rank> {
        let [other] = others else {
            return Err(Error::UnsupportedConfiguration(format!(
                "{} generator needs exactly one opposing person, got {}",
                self.kind(),
                others.len()
            )));
        };
        match *self {
            PreferenceGenerator::Mercenary => mercenary_rank(person, other),
            PreferenceGenerator::Altruistic { guilt } => altruistic_rank(own, person, other, guilt),
        }
    }
}

fn classic_pd(person: Choice, other: Choice) -> u32 {
    use Choice::*;
    match (person, other) {
        (Cooperate, Defect) => 1,
        (Defect, Defect) => 2,
        (Cooperate, Cooperate) => 3,
        (Defect, Cooperate) => 4,
    }
}

/// Classic PD ordering over the two person-level actions:
/// sucker < mutual defection < mutual cooperation < temptation.
pub fn mercenary_rank(person: &Action, other: &Action) -> Result<Rank> {
    let base = classic_pd(Choice::from_action(person)?, Choice::from_action(other)?);
    Ok(Rank::from_raw(base))
}

/// The mercenary rank lowered by `guilt` when this trait-player itself
/// defected, floored at the lowest rank.
pub fn altruistic_rank(own: &Action, person: &Action, other: &Action, guilt: u32) -> Result<Rank> {
    let own = Choice::from_action(own)?;
    let base = mercenary_rank(person, other)?.value();
    let penalty = if own == Choice::Defect { guilt } else { 0 };
    Ok(Rank::from_raw(base.saturating_sub(penalty).max(1)))
}
