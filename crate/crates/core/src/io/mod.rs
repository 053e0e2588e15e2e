//! Spec files, analysis export and plain-text tables.

mod analysis;
mod spec_file;
mod table;

pub use analysis::{
    export_analysis, parse_export, AnalysisDocument, BestResponseDoc, ConflictDoc, FramingDoc,
    FramingGroupDoc, OrderOutcomesDoc, PersonConflictDoc,
};
pub use spec_file::{
    parse_spec, CompositeDoc, GameSpecDocument, PayoffEntry, PersonDoc, RawGameDoc, SpecBody,
    SpecDocument, TraitDoc, SCHEMA_VERSION,
};
pub use table::render_table;

/// Spec documents shipped with the crate.
pub mod bundled {
    pub const PRISONERS_DILEMMA_MULTISELF: &str =
        include_str!("../../specs/prisoners_dilemma_multiself.json");
    pub const CLASSIC_PD_RAW: &str = include_str!("../../specs/classic_pd_raw.json");
    pub const MERCENARY_ONLY_PD: &str = include_str!("../../specs/mercenary_only_pd.json");

    pub fn lookup(name: &str) -> Option<&'static str> {
        match name {
            "prisoners_dilemma_multiself" => Some(PRISONERS_DILEMMA_MULTISELF),
            "classic_pd_raw" => Some(CLASSIC_PD_RAW),
            "mercenary_only_pd" => Some(MERCENARY_ONLY_PD),
            _ => None,
        }
    }

    pub const NAMES: [&str; 3] = [
        "prisoners_dilemma_multiself",
        "classic_pd_raw",
        "mercenary_only_pd",
    ];
}
