//! JSON game spec documents.
//!
//! A document holds either a composite (persons and traits) or a raw game
//! with an explicit payoff tensor. Unknown fields are rejected everywhere.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{Action, Finding, Game, GameDraft, Profile};
use crate::multiself::{build_composite_game, AggregationRule, CompositeSpec, Person, TraitPlayer};
use crate::preferences::PreferenceGenerator;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub title: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
    pub scale_max: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub composite: Option<CompositeDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub raw: Option<RawGameDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompositeDoc {
    pub persons: Vec<PersonDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PersonDoc {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aggregation: Option<String>,
    pub traits: Vec<TraitDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraitDoc {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub generator: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub guilt: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGameDoc {
    pub players: Vec<String>,
    pub actions: Vec<Vec<String>>,
    pub payoffs: Vec<PayoffEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PayoffEntry {
    pub profile: Vec<String>,
    pub ranks: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecBody {
    Composite(CompositeSpec),
    Raw(Game),
}

/// A parsed and validated spec document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameSpecDocument {
    pub title: Option<String>,
    pub notes: Option<String>,
    pub body: SpecBody,
}

impl GameSpecDocument {
    pub fn scale_max(&self) -> u32 {
        match &self.body {
            SpecBody::Composite(spec) => spec.scale_max,
            SpecBody::Raw(game) => game.scale_max(),
        }
    }

    pub fn composite(&self) -> Option<&CompositeSpec> {
        match &self.body {
            SpecBody::Composite(spec) => Some(spec),
            SpecBody::Raw(_) => None,
        }
    }

    pub fn game(&self) -> Result<Game> {
        match &self.body {
            SpecBody::Composite(spec) => build_composite_game(spec),
            SpecBody::Raw(game) => Ok(game.clone()),
        }
    }

    /// Overrides every altruistic trait's guilt. Raw games are unaffected.
    pub fn with_guilt(mut self, guilt: u32) -> Self {
        if let SpecBody::Composite(spec) = self.body {
            self.body = SpecBody::Composite(spec.with_guilt(guilt));
        }
        self
    }

    pub fn to_document(&self) -> SpecDocument {
        let (composite, raw) = match &self.body {
            SpecBody::Composite(spec) => (Some(composite_to_doc(spec)), None),
            SpecBody::Raw(game) => (None, Some(raw_to_doc(game))),
        };
        SpecDocument {
            schema_version: SCHEMA_VERSION,
            title: self.title.clone(),
            notes: self.notes.clone(),
            scale_max: self.scale_max(),
            composite,
            raw,
        }
    }

    pub fn from_document(doc: &SpecDocument) -> Result<Self> {
        if doc.schema_version != SCHEMA_VERSION {
            return Err(Error::schema(
                "schema_version",
                format!(
                    "unsupported version {}, expected {SCHEMA_VERSION}",
                    doc.schema_version
                ),
            ));
        }
        let body = match (&doc.composite, &doc.raw) {
            (Some(c), None) => {
                let spec = composite_from_doc(c, doc.scale_max)?;
                build_composite_game(&spec).map_err(|e| match e {
                    Error::InvalidGame(report) => Error::schema("scale_max", report.to_string()),
                    other => Error::schema("composite.persons", other.to_string()),
                })?;
                SpecBody::Composite(spec)
            }
            (None, Some(r)) => SpecBody::Raw(raw_from_doc(r, doc.scale_max)?),
            (Some(_), Some(_)) => {
                return Err(Error::schema(
                    "composite",
                    "document has both `composite` and `raw`",
                ))
            }
            (None, None) => {
                return Err(Error::schema(
                    "composite",
                    "document needs one of `composite` or `raw`",
                ))
            }
        };
        Ok(GameSpecDocument {
            title: doc.title.clone(),
            notes: doc.notes.clone(),
            body,
        })
    }
}

pub(crate) fn syntax_error(e: serde_json::Error) -> Error {
    Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

/// Parses and validates a spec document.
pub fn parse_spec(text: &str) -> Result<GameSpecDocument> {
    let doc: SpecDocument = serde_json::from_str(text).map_err(syntax_error)?;
    GameSpecDocument::from_document(&doc)
}

fn composite_from_doc(doc: &CompositeDoc, scale_max: u32) -> Result<CompositeSpec> {
    let mut persons = Vec::with_capacity(doc.persons.len());
    for (pi, p) in doc.persons.iter().enumerate() {
        let aggregation = match p.aggregation.as_deref() {
            None | Some("weakest-link") => AggregationRule::WeakestLink,
            Some(other) => {
                return Err(Error::schema(
                    format!("composite.persons[{pi}].aggregation"),
                    format!("unknown aggregation rule `{other}`"),
                ))
            }
        };
        let mut traits = Vec::with_capacity(p.traits.len());
        for (ti, t) in p.traits.iter().enumerate() {
            let path = format!("composite.persons[{pi}].traits[{ti}]");
            let generator = match (t.generator.as_str(), t.guilt) {
                ("mercenary", None) => PreferenceGenerator::Mercenary,
                ("mercenary", Some(_)) => {
                    return Err(Error::schema(
                        format!("{path}.guilt"),
                        "guilt applies only to altruistic traits",
                    ))
                }
                ("altruistic", guilt) => PreferenceGenerator::Altruistic {
                    guilt: guilt.unwrap_or(1),
                },
                (other, _) => {
                    return Err(Error::schema(
                        format!("{path}.generator"),
                        format!("unknown generator kind `{other}`"),
                    ))
                }
            };
            let mut tp = TraitPlayer::new(t.name.clone(), generator);
            if let Some(label) = &t.label {
                tp.label = label.clone();
            }
            traits.push(tp);
        }
        persons.push(Person {
            name: p.name.clone(),
            traits,
            aggregation,
        });
    }
    let spec = CompositeSpec { persons, scale_max };
    spec.check()
        .map_err(|e| Error::schema("composite.persons", e.to_string()))?;
    Ok(spec)
}

fn composite_to_doc(spec: &CompositeSpec) -> CompositeDoc {
    CompositeDoc {
        persons: spec
            .persons
            .iter()
            .map(|p| PersonDoc {
                name: p.name.clone(),
                aggregation: Some(p.aggregation.name().to_string()),
                traits: p
                    .traits
                    .iter()
                    .map(|t| TraitDoc {
                        name: t.name.clone(),
                        label: Some(t.label.clone()),
                        generator: t.generator.kind().to_string(),
                        guilt: t.generator.guilt(),
                    })
                    .collect(),
            })
            .collect(),
    }
}

fn finding_field(f: &Finding) -> &'static str {
    match f {
        Finding::ZeroScale => "scale_max",
        Finding::ActionSetCountMismatch { .. }
        | Finding::EmptyActionSet { .. }
        | Finding::EmptyActionLabel { .. }
        | Finding::DuplicateAction { .. } => "raw.actions",
        Finding::DuplicatePlayer { .. } | Finding::EmptyPlayerName { .. } => "raw.players",
        Finding::MissingProfile { .. }
        | Finding::InvalidProfile { .. }
        | Finding::RankCount { .. }
        | Finding::RankOutOfBounds { .. } => "raw.payoffs",
    }
}

fn raw_from_doc(doc: &RawGameDoc, scale_max: u32) -> Result<Game> {
    let actions: Vec<Vec<Action>> = doc
        .actions
        .iter()
        .map(|set| set.iter().map(|a| Action::new(a.as_str())).collect())
        .collect();
    let mut draft = GameDraft {
        players: doc.players.clone(),
        actions,
        scale_max,
        payoffs: BTreeMap::new(),
    };
    // Structural problems first, so label lookups below are well defined.
    let pre = GameDraft {
        payoffs: BTreeMap::new(),
        ..draft.clone()
    }
    .validate();
    if let Some(f) = pre
        .findings
        .iter()
        .find(|f| !matches!(f, Finding::MissingProfile { .. }))
    {
        return Err(Error::schema(finding_field(f), f.to_string()));
    }

    for (ei, entry) in doc.payoffs.iter().enumerate() {
        let path = format!("raw.payoffs[{ei}]");
        if entry.profile.len() != draft.players.len() {
            return Err(Error::schema(
                format!("{path}.profile"),
                format!(
                    "profile has {} actions, game has {} players",
                    entry.profile.len(),
                    draft.players.len()
                ),
            ));
        }
        let mut idx = Vec::with_capacity(entry.profile.len());
        for (pi, label) in entry.profile.iter().enumerate() {
            let a = draft.actions[pi]
                .iter()
                .position(|x| x.label() == label)
                .ok_or_else(|| {
                    Error::schema(
                        format!("{path}.profile[{pi}]"),
                        format!("`{label}` is not an action of player {}", draft.players[pi]),
                    )
                })?;
            idx.push(a);
        }
        if draft
            .payoffs
            .insert(Profile::new(idx), entry.ranks.clone())
            .is_some()
        {
            return Err(Error::schema(
                format!("{path}.profile"),
                "profile listed more than once",
            ));
        }
    }
    let report = draft.validate();
    if let Some(first) = report.findings.first() {
        return Err(Error::schema(
            finding_field(first),
            report.to_string().trim_end().to_string(),
        ));
    }
    draft.build()
}

fn raw_to_doc(game: &Game) -> RawGameDoc {
    RawGameDoc {
        players: game.players().iter().map(|p| p.name.clone()).collect(),
        actions: game
            .action_sets()
            .iter()
            .map(|set| set.iter().map(|a| a.label().to_string()).collect())
            .collect(),
        payoffs: game
            .enumerate_profiles()
            .map(|p| PayoffEntry {
                profile: game.profile_labels(&p),
                ranks: game
                    .ranks(&p)
                    .expect("enumerated")
                    .iter()
                    .map(|r| r.value())
                    .collect(),
            })
            .collect(),
    }
}
