//! Group catalogs, batch surveys of oracle and witness indices, family
//! constant fitting, and record persistence.

mod catalog;
mod fit;
mod record;
mod run;

pub use catalog::{build_catalog, Catalog, CatalogEntry, EntryDef, Structure};
pub use fit::{fit_families, fit_family_constant, profile_checks, FamilyFit, ProfileCheck};
pub use record::{
    emit, parse, parse_csv, parse_jsonl, render, to_csv, to_jsonl, Format, Ratio, Status,
    SurveyRecord,
};
pub use run::{
    entry_witnesses, outcome, run_survey, survey_entry, Outcome, PrimeChoice, SurveyOptions,
};
