use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::truncated::TruncatedSeries;
use crate::error::{Error, Result};

/// The insertion operators, each tied to the family whose display it follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OperatorKind {
    #[serde(rename = "P21")]
    P21,
    #[serde(rename = "P123_shift")]
    P123Shift,
    #[serde(rename = "P123_sum")]
    P123Sum,
    #[serde(rename = "P132_family1")]
    P132Family1,
    #[serde(rename = "P132_family2")]
    P132Family2,
    #[serde(rename = "P132_family3")]
    P132Family3,
    #[serde(rename = "P231_family1")]
    P231Family1,
    #[serde(rename = "P231_family2")]
    P231Family2,
    #[serde(rename = "P231_family3")]
    P231Family3,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 9] = [
        OperatorKind::P21,
        OperatorKind::P123Shift,
        OperatorKind::P123Sum,
        OperatorKind::P132Family1,
        OperatorKind::P132Family2,
        OperatorKind::P132Family3,
        OperatorKind::P231Family1,
        OperatorKind::P231Family2,
        OperatorKind::P231Family3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OperatorKind::P21 => "P21",
            OperatorKind::P123Shift => "P123_shift",
            OperatorKind::P123Sum => "P123_sum",
            OperatorKind::P132Family1 => "P132_family1",
            OperatorKind::P132Family2 => "P132_family2",
            OperatorKind::P132Family3 => "P132_family3",
            OperatorKind::P231Family1 => "P231_family1",
            OperatorKind::P231Family2 => "P231_family2",
            OperatorKind::P231Family3 => "P231_family3",
        }
    }

    /// Image of `z^n x^c` as `(z-degree, [(a, multiplicity)])`, written as the
    /// nested sums of the displays: the outer sum runs over `a`, the inner one
    /// (where present) over the inserted letter `b`, and every term counts 1.
    pub fn monomial_image(self, n: usize, c: usize) -> (usize, Vec<(usize, usize)>) {
        let outer = |a: RangeInclusive<usize>, inner: &dyn Fn(usize) -> RangeInclusive<usize>| {
            a.map(|a| (a, inner(a).count())).filter(|&(_, m)| m > 0).collect()
        };
        let once = |_: usize| 0..=0;
        match self {
            OperatorKind::P21 => (n + 1, outer(c + 1..=n + 1, &once)),
            OperatorKind::P123Shift => (n + 1, vec![(c, 1)]),
            OperatorKind::P123Sum => (n + 1, outer(1..=c, &once)),
            OperatorKind::P132Family1 | OperatorKind::P132Family3 => {
                (n + 2, outer(1..=c, &|_| c + 2..=n + 2))
            }
            OperatorKind::P132Family2 => (n + 2, outer(1..=c, &once)),
            OperatorKind::P231Family1 | OperatorKind::P231Family2 => {
                (n + 2, outer(c + 1..=n + 1, &|a| a + 1..=n + 2))
            }
            OperatorKind::P231Family3 => (n + 2, outer(c + 1..=n + 1, &once)),
        }
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OperatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OperatorKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::parse(0, format!("unknown operator {s:?}")))
    }
}

fn apply_images(g: &TruncatedSeries, image: impl Fn(usize, usize) -> (usize, Vec<(usize, usize)>)) -> TruncatedSeries {
    let mut out = TruncatedSeries::zero(g.order());
    for (n, c, coeff) in g.terms() {
        let (m, terms) = image(n, c);
        if m > g.order() {
            continue;
        }
        for (a, mult) in terms {
            out.add_term(m, a, &(coeff * BigInt::from(mult)));
        }
    }
    out
}

/// Applies `kind` term by term, dropping everything above the order of `g`.
pub fn apply_operator(kind: OperatorKind, g: &TruncatedSeries) -> TruncatedSeries {
    apply_images(g, |n, c| kind.monomial_image(n, c))
}

/// The two single-letter insertions behind each merged operator, before
/// merging: one per pattern of the family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SplitOperator {
    /// 132 prefix while avoiding 132-4: `b = n + 2`.
    P132Prime,
    /// 132 prefix while avoiding 142-3: `b = c + 2`.
    P132DoublePrime,
    /// 231 prefix while avoiding 231-4: `b = n + 2`.
    P231Prime,
    /// 231 prefix while avoiding 241-3: `b = c + 2`.
    P231DoublePrime,
}

impl SplitOperator {
    pub const ALL: [SplitOperator; 4] = [
        SplitOperator::P132Prime,
        SplitOperator::P132DoublePrime,
        SplitOperator::P231Prime,
        SplitOperator::P231DoublePrime,
    ];

    /// The merged operator this variant should coincide with.
    pub fn merged(self) -> OperatorKind {
        match self {
            SplitOperator::P132Prime | SplitOperator::P132DoublePrime => OperatorKind::P132Family2,
            SplitOperator::P231Prime | SplitOperator::P231DoublePrime => OperatorKind::P231Family3,
        }
    }

    pub fn monomial_image(self, n: usize, c: usize) -> (usize, Vec<(usize, usize)>) {
        let sum = |a: RangeInclusive<usize>, b: RangeInclusive<usize>| -> Vec<(usize, usize)> {
            a.map(|a| (a, b.clone().count())).filter(|&(_, m)| m > 0).collect()
        };
        match self {
            SplitOperator::P132Prime => (n + 2, sum(1..=c, n + 2..=n + 2)),
            SplitOperator::P132DoublePrime => (n + 2, sum(1..=c, c + 2..=c + 2)),
            SplitOperator::P231Prime => (n + 2, sum(c + 1..=n + 1, n + 2..=n + 2)),
            SplitOperator::P231DoublePrime => (n + 2, sum(c + 1..=n + 1, c + 2..=c + 2)),
        }
    }
}

pub fn apply_split(kind: SplitOperator, g: &TruncatedSeries) -> TruncatedSeries {
    apply_images(g, |n, c| kind.monomial_image(n, c))
}

/// First monomial `z^n x^c` (`n <= n_max`, `0 <= c <= n + 1`) on which the
/// two variants of a pair, or a variant and its merged operator, differ.
pub fn split_variants_disagreement(n_max: usize) -> Option<(SplitOperator, usize, usize)> {
    for n in 1..=n_max {
        for c in 0..=n + 1 {
            for v in SplitOperator::ALL {
                if v.monomial_image(n, c) != v.merged().monomial_image(n, c) {
                    return Some((v, n, c));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(order: usize, n: usize, a: usize) -> TruncatedSeries {
        TruncatedSeries::monomial(order, n, a, 1).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(apply_operator(OperatorKind::P21, &mono(4, 1, 1)), mono(4, 2, 2));
        assert_eq!(apply_operator(OperatorKind::P123Shift, &mono(4, 2, 1)), mono(4, 3, 1));
        for kind in OperatorKind::ALL {
            assert!(apply_operator(kind, &TruncatedSeries::zero(5)).is_zero());
            assert!(apply_operator(kind, &mono(2, 2, 1)).is_zero(), "{kind} must truncate");
        }
    }

    #[test]
    fn double_sums_carry_multiplicities() {
        // z^3 x^1: b ranges over 3..=5 for each a in 1..=1
        assert_eq!(OperatorKind::P132Family1.monomial_image(3, 1), (5, vec![(1, 3)]));
        assert_eq!(OperatorKind::P132Family2.monomial_image(3, 1), (5, vec![(1, 1)]));
        assert_eq!(
            OperatorKind::P231Family2.monomial_image(2, 1),
            (4, vec![(2, 2), (3, 1)])
        );
        assert_eq!(OperatorKind::P21.monomial_image(2, 3), (3, vec![]));
    }

    #[test]
    fn split_variants_agree() {
        assert_eq!(split_variants_disagreement(10), None);
        for v in SplitOperator::ALL {
            let g = mono(8, 3, 2) + &mono(8, 5, 6);
            assert_eq!(apply_split(v, &g), apply_operator(v.merged(), &g));
        }
    }

    #[test]
    fn names() {
        for k in OperatorKind::ALL {
            assert_eq!(k.name().parse::<OperatorKind>().unwrap(), k);
            assert_eq!(serde_json::to_string(&k).unwrap(), format!("\"{k}\""));
        }
    }
}
