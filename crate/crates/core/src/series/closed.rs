//! The closed forms of the operators, evaluated by exact polynomial
//! arithmetic and compared against the monomial actions.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::operators::{apply_operator, OperatorKind};
use super::truncated::TruncatedSeries;

/// Sparse polynomial in `z` and `x` with exact coefficients; `(n, a)` keys
/// the monomial `z^n x^a`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub(crate) struct BiPoly(BTreeMap<(usize, usize), BigInt>);

impl BiPoly {
    pub(crate) fn from_series(g: &TruncatedSeries) -> Self {
        BiPoly(g.terms().map(|(n, a, c)| ((n, a), c.clone())).collect())
    }

    fn add_term(&mut self, n: usize, a: usize, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry((n, a)).or_default();
        *e += c;
        if e.is_zero() {
            self.0.remove(&(n, a));
        }
    }

    fn map_terms(&self, f: impl Fn(usize, usize, &BigInt) -> (usize, usize, BigInt)) -> Self {
        let mut out = BiPoly::default();
        for (&(n, a), c) in &self.0 {
            let (n, a, c) = f(n, a, c);
            out.add_term(n, a, c);
        }
        out
    }

    /// `G(z, 1)`.
    pub(crate) fn at_x_one(&self) -> Self {
        self.map_terms(|n, _, c| (n, 0, c.clone()))
    }

    /// `G(zx, 1)`.
    pub(crate) fn at_zx_one(&self) -> Self {
        self.map_terms(|n, _, c| (n, n, c.clone()))
    }

    /// `z ∂G/∂z`.
    pub(crate) fn euler_z(&self) -> Self {
        self.map_terms(|n, a, c| (n, a, c * BigInt::from(n)))
    }

    /// `x ∂G/∂x`.
    pub(crate) fn euler_x(&self) -> Self {
        self.map_terms(|n, a, c| (n, a, c * BigInt::from(a)))
    }

    /// Multiplies by `z^i x^j`.
    pub(crate) fn shift(&self, i: usize, j: usize) -> Self {
        self.map_terms(|n, a, c| (n + i, a + j, c.clone()))
    }

    /// Multiplies by a polynomial in `x` given by its coefficients, constant
    /// term first.
    pub(crate) fn times_x_poly(&self, p: &[i64]) -> Self {
        let mut out = BiPoly::default();
        for (&(n, a), c) in &self.0 {
            for (j, &pj) in p.iter().enumerate() {
                out.add_term(n, a + j, c * BigInt::from(pj));
            }
        }
        out
    }

    pub(crate) fn plus(mut self, other: &BiPoly) -> Self {
        for (&(n, a), c) in &other.0 {
            self.add_term(n, a, c.clone());
        }
        self
    }

    pub(crate) fn minus(self, other: &BiPoly) -> Self {
        self.plus(&other.times_x_poly(&[-1]))
    }

    /// Exact division by `x - 1`, or the first z-degree whose x-polynomial
    /// leaves a remainder.
    pub(crate) fn div_x_minus_one(&self) -> Result<Self, usize> {
        let mut rows: BTreeMap<usize, BTreeMap<usize, BigInt>> = BTreeMap::new();
        for (&(n, a), c) in &self.0 {
            rows.entry(n).or_default().insert(a, c.clone());
        }
        let mut out = BiPoly::default();
        for (n, row) in rows {
            let top = *row.keys().next_back().expect("nonempty row");
            // synthetic division from the top coefficient down
            let mut carry = BigInt::zero();
            for a in (1..=top).rev() {
                carry += row.get(&a).cloned().unwrap_or_default();
                out.add_term(n, a - 1, carry.clone());
            }
            if carry + row.get(&0).cloned().unwrap_or_default() != BigInt::zero() {
                return Err(n);
            }
        }
        Ok(out)
    }

    pub(crate) fn truncated(&self, order: usize) -> Self {
        BiPoly(self.0.iter().filter(|((n, _), _)| *n <= order).map(|(k, v)| (*k, v.clone())).collect())
    }
}

/// The closed form of `kind` applied to `g`, before truncation.
pub(crate) fn closed_form(kind: OperatorKind, g: &BiPoly) -> Result<BiPoly, usize> {
    let g1 = g.at_x_one();
    let gzx = g.at_zx_one();
    let gz = g.euler_z();
    let gx = g.euler_x();
    match kind {
        OperatorKind::P21 => gzx.shift(0, 1).minus(g).div_x_minus_one().map(|q| q.shift(1, 1)),
        OperatorKind::P123Shift => Ok(g.shift(1, 0)),
        OperatorKind::P123Sum => g.clone().minus(&g1).div_x_minus_one().map(|q| q.shift(1, 1)),
        OperatorKind::P132Family1 | OperatorKind::P132Family3 => g
            .clone()
            .minus(&g1)
            .plus(&gx.at_x_one())
            .minus(&gx)
            .plus(&gz)
            .minus(&gz.at_x_one())
            .div_x_minus_one()
            .map(|q| q.shift(2, 1)),
        OperatorKind::P132Family2 => g.clone().minus(&g1).div_x_minus_one().map(|q| q.shift(2, 1)),
        OperatorKind::P231Family1 | OperatorKind::P231Family2 => g
            .times_x_poly(&[1, -2])
            .plus(&gzx.shift(0, 2))
            .plus(&gz.times_x_poly(&[1, -1]))
            .plus(&gx.times_x_poly(&[-1, 1]))
            .div_x_minus_one()
            .and_then(|q| q.div_x_minus_one())
            .map(|q| q.shift(2, 1)),
        OperatorKind::P231Family3 => gzx.shift(0, 1).minus(g).div_x_minus_one().map(|q| q.shift(2, 1)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ClosedFormOutcome {
    Agree,
    /// The numerator left a remainder on division by `x - 1` at this z-degree.
    NotDivisible { z_degree: usize },
    /// First coefficient where the two evaluations differ.
    Mismatch { n: usize, a: usize, monomial_action: String, closed_form: String },
}

/// Compares the closed form of `kind` with its monomial action on `g`
/// through the order of `g`.
pub fn closed_form_check(kind: OperatorKind, g: &TruncatedSeries) -> ClosedFormOutcome {
    let direct = BiPoly::from_series(&apply_operator(kind, g));
    let closed = match closed_form(kind, &BiPoly::from_series(g)) {
        Ok(c) => c.truncated(g.order()),
        Err(z_degree) => return ClosedFormOutcome::NotDivisible { z_degree },
    };
    compare(&direct, &closed)
}

pub(crate) fn compare(direct: &BiPoly, closed: &BiPoly) -> ClosedFormOutcome {
    let keys: std::collections::BTreeSet<_> = direct.0.keys().chain(closed.0.keys()).collect();
    for &&(n, a) in &keys {
        let d = direct.0.get(&(n, a)).cloned().unwrap_or_default();
        let c = closed.0.get(&(n, a)).cloned().unwrap_or_default();
        if d != c {
            return ClosedFormOutcome::Mismatch {
                n,
                a,
                monomial_action: d.to_string(),
                closed_form: c.to_string(),
            };
        }
    }
    ClosedFormOutcome::Agree
}

impl ClosedFormOutcome {
    pub fn holds(&self) -> bool {
        *self == ClosedFormOutcome::Agree
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(order: usize, n: usize, a: usize) -> TruncatedSeries {
        TruncatedSeries::monomial(order, n, a, 1).unwrap()
    }

    #[test]
    fn division() {
        // x^3 - 1 = (x - 1)(x^2 + x + 1)
        let mut p = BiPoly::default();
        p.add_term(1, 3, 1.into());
        p.add_term(1, 0, (-1).into());
        let q = p.div_x_minus_one().unwrap();
        assert_eq!(q.0.len(), 3);
        assert!(q.0.values().all(|c| c == &BigInt::from(1)));
        let mut r = BiPoly::default();
        r.add_term(2, 1, 1.into());
        assert_eq!(r.div_x_minus_one(), Err(2));
    }

    #[test]
    fn every_monomial_in_range() {
        for kind in OperatorKind::ALL {
            for n in 1..=6 {
                for c in 0..=n + 1 {
                    let out = closed_form_check(kind, &mono(9, n, c));
                    assert!(out.holds(), "{kind} on z^{n} x^{c}: {out:?}");
                }
            }
            assert!(closed_form_check(kind, &TruncatedSeries::zero(4)).holds());
        }
    }

    #[test]
    fn printed_first_family_231_form_disagrees() {
        // z^2 x / (x-1)^2 ((x-1)^2 G + (1-x) G_z + (x-1) G_x)
        let printed = |g: &BiPoly| {
            g.times_x_poly(&[1, -2, 1])
                .plus(&g.euler_z().times_x_poly(&[1, -1]))
                .plus(&g.euler_x().times_x_poly(&[-1, 1]))
                .div_x_minus_one()
                .and_then(|q| q.div_x_minus_one())
                .map(|q| q.shift(2, 1))
        };
        let wrong = (1..=5).flat_map(|n| (0..=n + 1).map(move |c| (n, c))).filter(|&(n, c)| {
            let m = mono(8, n, c);
            let direct = BiPoly::from_series(&apply_operator(OperatorKind::P231Family1, &m));
            printed(&BiPoly::from_series(&m)).map_or(true, |p| !compare(&direct, &p).holds())
        });
        assert!(wrong.count() > 0);
    }
}
