use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::closed::{closed_form_check, ClosedFormOutcome};
use super::operators::{apply_operator, OperatorKind};
use super::truncated::TruncatedSeries;
use crate::enumeration::{stat_distribution, Avoiders};
use crate::error::{Error, Result};
use crate::patterns::{Pattern, StatKind, StatValue, VincularPattern};

/// Brute-force cross-checks refuse orders above this by default.
pub const DEFAULT_BRUTEFORCE_CEILING: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "F1_124_134")]
    F1_124_134,
    #[serde(rename = "F2_132_142")]
    F2_132_142,
    #[serde(rename = "F3_231_241")]
    F3_231_241,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::F1_124_134, Family::F2_132_142, Family::F3_231_241];

    pub fn name(self) -> &'static str {
        match self {
            Family::F1_124_134 => "F1_124_134",
            Family::F2_132_142 => "F2_132_142",
            Family::F3_231_241 => "F3_231_241",
        }
    }

    /// The two patterns whose first-letter enumerators the system describes.
    pub fn patterns(self) -> [VincularPattern; 2] {
        let texts = match self {
            Family::F1_124_134 => ["124-3", "134-2"],
            Family::F2_132_142 => ["132-4", "142-3"],
            Family::F3_231_241 => ["231-4", "241-3"],
        };
        texts.map(|t| t.parse().expect("valid pattern literal"))
    }

    /// `(P132, P231, P123)` as used by this family's second equation.
    pub fn operators(self) -> [OperatorKind; 3] {
        match self {
            Family::F1_124_134 => [OperatorKind::P132Family1, OperatorKind::P231Family1, OperatorKind::P123Shift],
            Family::F2_132_142 => [OperatorKind::P132Family2, OperatorKind::P231Family2, OperatorKind::P123Sum],
            Family::F3_231_241 => [OperatorKind::P132Family3, OperatorKind::P231Family3, OperatorKind::P123Sum],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::parse(0, format!("unknown family {s:?}")))
    }
}

/// `F1` (length 1 or starting with a descent) and `F2` (starting with an
/// ascent), with `F = F1 + F2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySolution {
    pub f1: TruncatedSeries,
    pub f2: TruncatedSeries,
    /// Iterations until two successive iterates coincided.
    pub iterations: usize,
}

impl FamilySolution {
    pub fn total(&self) -> TruncatedSeries {
        self.f1.clone() + &self.f2
    }
}

fn step(family: Family, seeds: &(TruncatedSeries, TruncatedSeries), f1: &TruncatedSeries, f2: &TruncatedSeries) -> (TruncatedSeries, TruncatedSeries) {
    let [p132, p231, p123] = family.operators();
    // deleting the inserted letters lands anywhere in the class, so the
    // prefix insertions act on F = F1 + F2; only the 123 insertion is
    // confined to F2
    let f = f1.clone() + f2;
    let next1 = seeds.0.clone() + &apply_operator(OperatorKind::P21, &f);
    let next2 = seeds.1.clone() + &apply_operator(p132, &f) + &apply_operator(p231, &f) + &apply_operator(p123, f2);
    (next1, next2)
}

fn seeds(order: usize) -> (TruncatedSeries, TruncatedSeries) {
    let mut s1 = TruncatedSeries::zero(order);
    s1.add_term(1, 1, &BigInt::from(1));
    let mut s2 = TruncatedSeries::zero(order);
    s2.add_term(2, 1, &BigInt::from(1));
    (s1, s2)
}

/// Every iterate `(F1, F2)` of the system from zero, ending with the first
/// repeated one.
pub fn family_iterates(family: Family, order: usize) -> Vec<(TruncatedSeries, TruncatedSeries)> {
    let seeds = seeds(order);
    let mut out = vec![(TruncatedSeries::zero(order), TruncatedSeries::zero(order))];
    loop {
        let (f1, f2) = out.last().expect("nonempty");
        let next = step(family, &seeds, f1, f2);
        let done = &next == out.last().expect("nonempty");
        out.push(next);
        if done {
            return out;
        }
    }
}

pub fn solve_family(family: Family, order: usize) -> Result<FamilySolution> {
    if order < 1 {
        return Err(Error::domain("order must be at least 1"));
    }
    let mut it = family_iterates(family, order);
    let iterations = it.len() - 1;
    let (f1, f2) = it.pop().expect("nonempty");
    Ok(FamilySolution { f1, f2, iterations })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesMismatch {
    pub pattern: String,
    /// Which series was compared: `F`, `F1` or `F2`.
    pub part: String,
    pub n: usize,
    pub a: usize,
    pub series: String,
    pub brute_force: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub family: Family,
    #[serde(rename = "N")]
    pub order: usize,
    pub patterns: Vec<String>,
    pub coefficients_checked: usize,
    pub mismatches: Vec<SeriesMismatch>,
}

impl SeriesReport {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn series_vs_bruteforce(family: Family, order: usize) -> Result<SeriesReport> {
    series_vs_bruteforce_up_to(family, order, DEFAULT_BRUTEFORCE_CEILING)
}

/// Compares `F`, `F1` and `F2` coefficient by coefficient with the avoiders
/// of both patterns, for every length up to `order`.
pub fn series_vs_bruteforce_up_to(family: Family, order: usize, ceiling: usize) -> Result<SeriesReport> {
    if order > ceiling {
        return Err(Error::domain(format!("order {order} exceeds the brute-force ceiling {ceiling}")));
    }
    let sol = solve_family(family, order)?;
    let total = sol.total();
    let mut report = SeriesReport {
        family,
        order,
        patterns: family.patterns().iter().map(ToString::to_string).collect(),
        coefficients_checked: 0,
        mismatches: Vec::new(),
    };
    for p in family.patterns() {
        for n in 1..=order {
            let table = stat_distribution(&Pattern::Vincular(p.clone()), n, StatKind::FirstLetter);
            let (descents, ascents) = split_by_first_step(&p, n);
            for a in 0..=total.a_max() {
                let letter = u8::try_from(a).ok().filter(|&l| l >= 1);
                let brute = letter.map_or_else(BigUint::default, |l| table.get(&StatValue::Letter(l)));
                let parts = [
                    ("F", &total, BigInt::from(brute)),
                    ("F1", &sol.f1, BigInt::from(descents.get(&a).copied().unwrap_or(0))),
                    ("F2", &sol.f2, BigInt::from(ascents.get(&a).copied().unwrap_or(0))),
                ];
                for (part, series, want) in parts {
                    report.coefficients_checked += 1;
                    let got = series.coeff(n, a);
                    if got != want {
                        report.mismatches.push(SeriesMismatch {
                            pattern: p.to_string(),
                            part: part.into(),
                            n,
                            a,
                            series: got.to_string(),
                            brute_force: want.to_string(),
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

/// First-letter counts of avoiders of length `n`, split into those of length
/// 1 or starting with a descent, and those starting with an ascent.
fn split_by_first_step(p: &VincularPattern, n: usize) -> (BTreeMap<usize, u64>, BTreeMap<usize, u64>) {
    let (mut d, mut u) = (BTreeMap::new(), BTreeMap::new());
    let mut it = Avoiders::new(std::slice::from_ref(p), n);
    while it.advance() {
        let l = it.current();
        let side = if l.len() >= 2 && l[0] < l[1] { &mut u } else { &mut d };
        *side.entry(l[0] as usize).or_default() += 1;
    }
    (d, u)
}

/// A reproducible random series: each monomial `z^n x^a` with
/// `n <= max_degree` and `a <= n + 1` gets a coefficient in `-9..=9`.
pub fn random_series(rng: &mut impl Rng, order: usize, max_degree: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(order);
    for n in 1..=max_degree.min(order) {
        for a in 0..=n + 1 {
            if rng.gen_bool(0.5) {
                s.set(n, a, BigInt::from(rng.gen_range(-9i64..=9)));
            }
        }
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomClosedFormReport {
    pub operator: OperatorKind,
    pub seed: u64,
    pub trials: usize,
    /// Index of the first failing trial and what went wrong.
    pub failure: Option<(usize, ClosedFormOutcome)>,
}

impl RandomClosedFormReport {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

/// Runs `closed_form_check` on `trials` seeded random series of z-degree at
/// most `max_degree`, at an order high enough that nothing is truncated.
pub fn closed_form_random_trials(kind: OperatorKind, trials: usize, max_degree: usize, seed: u64) -> RandomClosedFormReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order = max_degree + 2;
    let failure = (0..trials).find_map(|i| {
        let g = random_series(&mut rng, order, max_degree);
        let out = closed_form_check(kind, &g);
        (!out.holds()).then_some((i, out))
    });
    RandomClosedFormReport { operator: kind, seed, trials, failure }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::count_avoiders;

    #[test]
    fn small_coefficients() {
        for family in Family::ALL {
            let sol = solve_family(family, 6).unwrap();
            assert_eq!(sol.f1.coeff(1, 1), BigInt::from(1));
            assert_eq!(sol.total().z_coefficient_sum(4), BigInt::from(23));
            for p in family.patterns() {
                for n in 1..=6 {
                    assert_eq!(sol.total().z_coefficient_sum(n), BigInt::from(count_avoiders(std::slice::from_ref(&p), n)));
                }
            }
            assert!(sol.iterations <= 7);
        }
        assert!(solve_family(Family::F1_124_134, 0).is_err());
    }

    #[test]
    fn iteration_is_monotone() {
        for family in Family::ALL {
            let its = family_iterates(family, 8);
            for k in 0..its.len() - 1 {
                assert!(its[k].0.agrees_through(&its[k + 1].0, k));
                assert!(its[k].1.agrees_through(&its[k + 1].1, k));
            }
        }
    }

    #[test]
    fn matches_brute_force() {
        for family in Family::ALL {
            let r = series_vs_bruteforce(family, 6).unwrap();
            assert!(r.holds(), "{:?}", r.mismatches.first());
        }
        assert!(series_vs_bruteforce(Family::F1_124_134, 9).is_err());
    }

    #[test]
    fn random_closed_forms() {
        for kind in OperatorKind::ALL {
            let r = closed_form_random_trials(kind, 20, 6, 7);
            assert!(r.holds(), "{kind}: {:?}", r.failure);
        }
    }

    #[test]
    fn names() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
    }
}
