//! Random corpora, the theorem-consequence battery, the counterexample, and
//! machine-readable verification reports.

mod battery;
mod corpus;
mod predicates;
mod report;
mod structural;

pub use battery::{run_battery, run_battery_with, BatteryOptions};
pub use corpus::{
    generate_corpus, max_truncation, random_complex, Corpus, CorpusMap, CorpusModule, CorpusSpec, Origin, DEFAULT_SEED,
    MAX_TRUNC_VAR,
};
pub use predicates::{
    check_fibration, check_weak_equivalence, degreewise_surjective, padded_epimorphism, FibrationVerdict, WeqVerdict,
};
pub use report::{CheckCounts, CheckRecord, ReportSummary, Verdict, VerificationReport, REPORT_FORMAT};
pub use structural::{
    brute_cube_maps, brute_injections, constant_coefficient_check, counterexample_checks, freeness_checks,
    hom_dimension_checks, resolution_checks, run_counterexample,
};
