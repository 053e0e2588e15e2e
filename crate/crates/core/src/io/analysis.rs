use serde::{Deserialize, Serialize};

use super::spec_file::{syntax_error, GameSpecDocument, SpecDocument, SCHEMA_VERSION};
use crate::error::Result;
use crate::extensive::FramingReport;
use crate::game::{Game, Profile};
use crate::solver::{best_response_marks, internal_conflict, pure_nash};

/// Everything the solver says about one spec, in a serializable form.
/// Profiles and actions are written as labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisDocument {
    pub schema_version: u32,
    pub tool_version: String,
    pub spec: SpecDocument,
    pub players: Vec<String>,
    pub equilibria: Vec<Vec<String>>,
    pub best_responses: Vec<BestResponseDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conflicts: Option<Vec<ConflictDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub framing: Option<FramingDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BestResponseDoc {
    pub player: String,
    /// Actions of the other players, in player order.
    pub context: Vec<String>,
    pub responses: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConflictDoc {
    pub profile: Vec<String>,
    pub persons: Vec<PersonConflictDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PersonConflictDoc {
    pub person: String,
    pub conflicted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FramingDoc {
    pub orders: Vec<OrderOutcomesDoc>,
    /// Absent when only one order was analysed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub all_same: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub groups: Option<Vec<FramingGroupDoc>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderOutcomesDoc {
    pub order: Vec<String>,
    pub outcomes: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FramingGroupDoc {
    pub outcomes: Vec<Vec<String>>,
    /// Orders written as comma-separated player names.
    pub orders: Vec<String>,
}

impl AnalysisDocument {
    /// Solves `game` (built from `spec`) and collects the results.
    pub fn new(
        spec: &GameSpecDocument,
        game: &Game,
        framing: Option<&FramingReport>,
    ) -> Result<Self> {
        let labels = |p: &Profile| game.profile_labels(p);
        let report = pure_nash(game);

        let best_responses = best_response_marks(game)
            .into_iter()
            .map(|m| {
                let others: Vec<usize> =
                    (0..game.num_players()).filter(|&i| i != m.player).collect();
                BestResponseDoc {
                    player: game.players()[m.player].name.clone(),
                    context: others
                        .iter()
                        .zip(&m.context)
                        .map(|(&i, &a)| game.actions(i)[a].label().to_string())
                        .collect(),
                    responses: m
                        .responses
                        .iter()
                        .map(|&a| game.actions(m.player)[a].label().to_string())
                        .collect(),
                }
            })
            .collect();

        let conflicts = match spec.composite() {
            Some(composite) => Some(
                internal_conflict(&report, composite)?
                    .into_iter()
                    .map(|flags| ConflictDoc {
                        profile: labels(&flags.profile),
                        persons: composite
                            .persons
                            .iter()
                            .zip(flags.persons)
                            .map(|(p, conflicted)| PersonConflictDoc {
                                person: p.name.clone(),
                                conflicted,
                            })
                            .collect(),
                    })
                    .collect(),
            ),
            None => None,
        };

        let framing = framing.map(|f| {
            let order_names = |i: usize| f.entries[i].order.display(game);
            FramingDoc {
                orders: f
                    .entries
                    .iter()
                    .map(|e| OrderOutcomesDoc {
                        order: e
                            .order
                            .players()
                            .iter()
                            .map(|&i| game.players()[i].name.clone())
                            .collect(),
                        outcomes: e.outcomes.iter().map(labels).collect(),
                    })
                    .collect(),
                all_same: f.summary.as_ref().map(|s| s.all_same),
                groups: f.summary.as_ref().map(|s| {
                    s.groups
                        .iter()
                        .map(|(outcomes, ix)| FramingGroupDoc {
                            outcomes: outcomes.iter().map(labels).collect(),
                            orders: ix.iter().map(|&i| order_names(i)).collect(),
                        })
                        .collect()
                }),
            }
        });

        Ok(AnalysisDocument {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            spec: spec.to_document(),
            players: game.players().iter().map(|p| p.name.clone()).collect(),
            equilibria: report.equilibria.iter().map(labels).collect(),
            best_responses,
            conflicts,
            framing,
        })
    }
}

/// Pretty-printed JSON with a trailing newline. Field order is fixed by the
/// struct layout, and every list is already in a canonical order.
pub fn export_analysis(analysis: &AnalysisDocument) -> String {
    let mut out = serde_json::to_string_pretty(analysis).expect("analysis serializes");
    out.push('\n');
    out
}

pub fn parse_export(text: &str) -> Result<AnalysisDocument> {
    serde_json::from_str(text).map_err(syntax_error)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extensive::{framing_report, MoveOrder};
    use crate::io::{bundled, parse_spec};

    fn analyse(text: &str) -> AnalysisDocument {
        let spec = parse_spec(text).unwrap();
        let game = spec.game().unwrap();
        AnalysisDocument::new(&spec, &game, None).unwrap()
    }

    #[test]
    fn reference_export_lists_four_equilibria() {
        let a = analyse(bundled::PRISONERS_DILEMMA_MULTISELF);
        assert_eq!(a.equilibria.len(), 4);
        assert_eq!(a.equilibria[0], vec!["C", "D", "C", "D"]);
        assert_eq!(a.best_responses.len(), 32);
        let conflicts = a.conflicts.as_ref().unwrap();
        assert!(conflicts
            .iter()
            .all(|c| c.persons.iter().all(|p| p.conflicted)));
        let text = export_analysis(&a);
        assert_eq!(parse_export(&text).unwrap(), a);
    }

    #[test]
    fn empty_equilibria_export() {
        // Matching pennies has no pure equilibrium.
        let text = r#"{"schema_version":1,"scale_max":2,"raw":{"players":["A","B"],"actions":[["H","T"],["H","T"]],
            "payoffs":[{"profile":["H","H"],"ranks":[2,1]},{"profile":["H","T"],"ranks":[1,2]},
                       {"profile":["T","H"],"ranks":[1,2]},{"profile":["T","T"],"ranks":[2,1]}]}}"#;
        let a = analyse(text);
        assert!(a.equilibria.is_empty());
        assert!(a.conflicts.is_none());
        let out = export_analysis(&a);
        assert!(out.contains("\"equilibria\": []"));
        assert_eq!(parse_export(&out).unwrap(), a);
    }

    #[test]
    fn framing_round_trip() {
        let spec = parse_spec(bundled::PRISONERS_DILEMMA_MULTISELF).unwrap();
        let game = spec.game().unwrap();
        let f = framing_report(&game, &MoveOrder::all(4)).unwrap();
        let a = AnalysisDocument::new(&spec, &game, Some(&f)).unwrap();
        let doc = a.framing.as_ref().unwrap();
        assert_eq!(doc.orders.len(), 24);
        assert_eq!(doc.all_same, Some(false));
        let text = export_analysis(&a);
        assert_eq!(export_analysis(&parse_export(&text).unwrap()), text);
    }

    #[test]
    fn export_rejects_unknown_fields() {
        let a = analyse(bundled::CLASSIC_PD_RAW);
        let text = export_analysis(&a).replacen("{", "{\n  \"extra\": 1,", 1);
        assert!(parse_export(&text).is_err());
    }
}
