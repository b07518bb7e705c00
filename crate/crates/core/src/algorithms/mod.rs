//! Tree-building algorithms and the parameter schedule that drives the
//! peel-off ensemble.

mod ensemble;
mod linkage;
mod peel;
mod random;
mod recursive;
mod schedule;

pub use ensemble::{derive_seed, ensemble_best_of, Candidate, CandidateKind, EnsembleReport};
pub use linkage::average_linkage_tree;
pub use peel::{peel_off_max_cut_or_random, PeelOffDiagnostics, PeelStep, SecondPhase};
pub use random::{random_partition_tree, random_tree};
pub use recursive::recursive_max_cut_tree;
pub use schedule::{
    builtin_schedule, check_conditions, cost_h_ratio_bound, f_of_r, generate_parameter_schedule,
    named_schedule, Conditions, ParameterTriple, Schedule, StageRecord, ALPHA_GW,
};
