//! Persons made of independent trait-players.
//!
//! Each person expands into one player per trait. The person's realized action
//! is the aggregate of its traits' internal actions, and every trait-player is
//! ranked on person-level outcomes by its own preference generator.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::game::{Action, Game, PersonInfo, Profile, Rank};
use crate::preferences::{Choice, PreferenceGenerator, PD_SCALE_MAX};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum AggregationRule {
    /// The person cooperates only if every trait cooperates.
    #[default]
    WeakestLink,
}

impl AggregationRule {
    pub fn name(&self) -> &'static str {
        match self {
            AggregationRule::WeakestLink => "weakest-link",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraitPlayer {
    pub name: String,
    /// Suffix appended to the person name to form the player's display name
    /// (`m` in `Pm`).
    pub label: String,
    pub generator: PreferenceGenerator,
}

impl TraitPlayer {
    /// Trait whose label is the first character of its name.
    pub fn new(name: impl Into<String>, generator: PreferenceGenerator) -> Self {
        let name = name.into();
        let label = name.chars().next().map(String::from).unwrap_or_default();
        TraitPlayer {
            name,
            label,
            generator,
        }
    }

    pub fn mercenary() -> Self {
        TraitPlayer::new("mercenary", PreferenceGenerator::Mercenary)
    }

    pub fn altruistic(guilt: u32) -> Self {
        TraitPlayer::new("altruistic", PreferenceGenerator::Altruistic { guilt })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Person {
    pub name: String,
    pub traits: Vec<TraitPlayer>,
    pub aggregation: AggregationRule,
}

impl Person {
    pub fn new(name: impl Into<String>, traits: Vec<TraitPlayer>) -> Self {
        Person {
            name: name.into(),
            traits,
            aggregation: AggregationRule::WeakestLink,
        }
    }
}

/// Persons over the cooperate/defect alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositeSpec {
    pub persons: Vec<Person>,
    pub scale_max: u32,
}

/// Inputs to a custom rank function in [`build_composite_game_with`].
#[derive(Debug)]
pub struct RankContext<'a> {
    pub person: usize,
    pub trait_index: usize,
    pub trait_player: &'a TraitPlayer,
    pub own: &'a Action,
    pub person_action: &'a Action,
    /// Aggregated actions of every other person, in person order.
    pub others: &'a [Action],
}

impl CompositeSpec {
    /// Two persons `P` and `Q`, each a mercenary and an altruistic trait.
    pub fn prisoners_dilemma(guilt: u32) -> Self {
        let person = |name: &str| {
            Person::new(
                name,
                vec![TraitPlayer::mercenary(), TraitPlayer::altruistic(guilt)],
            )
        };
        CompositeSpec {
            persons: vec![person("P"), person("Q")],
            scale_max: PD_SCALE_MAX,
        }
    }

    pub fn alphabet() -> Vec<Action> {
        vec![Action::cooperate(), Action::defect()]
    }

    /// Total trait-players across all persons.
    pub fn player_count(&self) -> usize {
        self.persons.iter().map(|p| p.traits.len()).sum()
    }

    /// Display names in person-major, declaration-minor order.
    pub fn player_names(&self) -> Vec<String> {
        self.persons
            .iter()
            .flat_map(|p| {
                p.traits
                    .iter()
                    .map(move |t| format!("{}{}", p.name, t.label))
            })
            .collect()
    }

    /// Game player indices belonging to each person.
    pub fn person_players(&self) -> Vec<Vec<usize>> {
        let mut next = 0;
        self.persons
            .iter()
            .map(|p| {
                let range: Vec<usize> = (next..next + p.traits.len()).collect();
                next += p.traits.len();
                range
            })
            .collect()
    }

    pub fn check(&self) -> Result<()> {
        if self.persons.is_empty() {
            return Err(Error::invalid("composite spec has no persons"));
        }
        if self.scale_max == 0 {
            return Err(Error::invalid("scale_max must be at least 1"));
        }
        let mut person_names = HashSet::new();
        for person in &self.persons {
            if person.name.is_empty() {
                return Err(Error::invalid("person with empty name"));
            }
            if !person_names.insert(person.name.as_str()) {
                return Err(Error::invalid(format!(
                    "duplicate person `{}`",
                    person.name
                )));
            }
            if person.traits.is_empty() {
                return Err(Error::invalid(format!(
                    "person `{}` has no traits",
                    person.name
                )));
            }
            let mut trait_names = HashSet::new();
            for t in &person.traits {
                if t.name.is_empty() || t.label.is_empty() {
                    return Err(Error::invalid(format!(
                        "person `{}` has a trait with an empty name or label",
                        person.name
                    )));
                }
                if !trait_names.insert(t.name.as_str()) {
                    return Err(Error::invalid(format!(
                        "person `{}` declares trait `{}` twice",
                        person.name, t.name
                    )));
                }
            }
        }
        let mut display = HashSet::new();
        for name in self.player_names() {
            if !display.insert(name.clone()) {
                return Err(Error::invalid(format!("player name `{name}` is ambiguous")));
            }
        }
        Ok(())
    }

    /// Same spec with every altruistic trait's guilt replaced.
    pub fn with_guilt(mut self, guilt: u32) -> Self {
        for t in self.persons.iter_mut().flat_map(|p| p.traits.iter_mut()) {
            if let PreferenceGenerator::Altruistic { guilt: g } = &mut t.generator {
                *g = guilt;
            }
        }
        self
    }
}

/// Collapses a person's internal actions to the action the person takes.
pub fn aggregate_action(rule: AggregationRule, internal: &[Action]) -> Result<Action> {
    if internal.is_empty() {
        return Err(Error::invalid("cannot aggregate an empty action vector"));
    }
    match rule {
        AggregationRule::WeakestLink => {
            let mut result = Choice::Cooperate;
            for a in internal {
                if Choice::from_action(a)? == Choice::Defect {
                    result = Choice::Defect;
                }
            }
            Ok(result.to_action())
        }
    }
}

/// Aggregated action of every person for a full internal action vector laid
/// out in trait-player order.
pub fn person_actions(spec: &CompositeSpec, internal: &[Action]) -> Result<Vec<Action>> {
    if internal.len() != spec.player_count() {
        return Err(Error::invalid(format!(
            "internal profile has {} actions, spec has {} trait-players",
            internal.len(),
            spec.player_count()
        )));
    }
    spec.persons
        .iter()
        .zip(spec.person_players())
        .map(|(person, players)| {
            aggregate_action(
                person.aggregation,
                &internal[players[0]..=players[players.len() - 1]],
            )
        })
        .collect()
}

/// Materializes the composite game using each trait's built-in generator.
pub fn build_composite_game(spec: &CompositeSpec) -> Result<Game> {
    spec.check()?;
    if spec.persons.len() != 2 {
        return Err(Error::UnsupportedConfiguration(format!(
            "built-in generators are defined for exactly 2 persons, spec has {}",
            spec.persons.len()
        )));
    }
    build_composite_game_with(spec, |ctx| {
        ctx.trait_player
            .generator
            .rank(ctx.own, ctx.person_action, ctx.others)
    })
}

/// Materializes the composite game with a caller-supplied rank function, for
/// configurations the built-in generators do not cover.
pub fn build_composite_game_with<F>(spec: &CompositeSpec, rank_fn: F) -> Result<Game>
where
    F: Fn(&RankContext<'_>) -> Result<Rank>,
{
    spec.check()?;
    let alphabet = CompositeSpec::alphabet();
    let names = spec.player_names();
    let groups = spec.person_players();
    let action_sets = vec![alphabet.clone(); names.len()];

    let game = Game::from_fn(names, action_sets, spec.scale_max, |profile: &Profile| {
        let internal: Vec<Action> = profile
            .actions()
            .iter()
            .map(|&a| alphabet[a].clone())
            .collect();
        let realized = person_actions(spec, &internal)?;
        let mut ranks = Vec::with_capacity(internal.len());
        for (pi, person) in spec.persons.iter().enumerate() {
            let others: Vec<Action> = realized
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != pi)
                .map(|(_, a)| a.clone())
                .collect();
            for (ti, t) in person.traits.iter().enumerate() {
                let ctx = RankContext {
                    person: pi,
                    trait_index: ti,
                    trait_player: t,
                    own: &internal[groups[pi][ti]],
                    person_action: &realized[pi],
                    others: &others,
                };
                ranks.push(rank_fn(&ctx)?.value());
            }
        }
        Ok(ranks)
    })?;

    let persons = spec
        .persons
        .iter()
        .zip(groups)
        .map(|(p, players)| PersonInfo {
            name: p.name.clone(),
            players,
        })
        .collect();
    Ok(game.with_persons(persons))
}
