//! Avoidance classes: pruned generation, counting, statistic tables, prefix
//! classes and the deletion machinery.

mod prefix;
mod search;
mod wilf;

pub use prefix::{
    binomial, certify_reversibly_deletable, delete_map, gap_forced_empty, gen1_prefix_count,
    prefix_class_members, reversibly_deletable_predicted, PrefixClass, RevDelCounterexample,
    RevDelReport, VincularTailPattern,
};
pub use search::Avoiders;
pub use wilf::{
    avoiders_of, barred_set_coincidence, count_avoiders, count_pattern, stat_distribution,
    wilf_check, CoincidenceReport, SetDifference, StatTable, WilfReport, WilfRow,
};

use crate::patterns::VincularPattern;

/// Shorthand for `Avoiders::new`.
pub fn enumerate_avoiders(patterns: &[VincularPattern], n: usize) -> Avoiders {
    Avoiders::new(patterns, n)
}
