//! Executable experiments: flat extensions, perturbation, convergence,
//! hyperplane slices and oracle audits.

mod audit;
mod bertini;
mod experiments;
mod report;

pub use audit::{oracle_audit, random_hypersurface, random_oracle_audit};
pub use bertini::{bertini_experiment, hyperplane_sample, rational_points, BertiniParams, RATIONAL_SAMPLING_CAVEAT};
pub use experiments::{
    convergence_check, flat_extension_check, monotone_containment, perturbation_experiment, signature_table,
};
pub use report::{
    Counterexample, Diagnostic, ExperimentKind, ExperimentReport, HyperplaneRecord, HyperplaneSample, OracleCase,
    SampleTable, SlicePoint, SliceStatus, StepTiming, Verdict,
};
