//! Exact truncated bivariate series, the insertion operators in monomial and
//! closed form, and the fixed-point solution of the three systems.

mod closed;
mod family;
mod operators;
mod truncated;

pub use closed::{closed_form_check, ClosedFormOutcome};
pub use family::{
    closed_form_random_trials, family_iterates, random_series, series_vs_bruteforce,
    series_vs_bruteforce_up_to, solve_family, Family, FamilySolution, RandomClosedFormReport,
    SeriesMismatch, SeriesReport, DEFAULT_BRUTEFORCE_CEILING,
};
pub use operators::{
    apply_operator, apply_split, split_variants_disagreement, OperatorKind, SplitOperator,
};
pub use truncated::TruncatedSeries;
