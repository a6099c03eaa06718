use std::fmt;
use std::ops::{Add, AddAssign};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Exact bivariate series `Σ c(n, a) z^n x^a` for `1 <= n <= N`,
/// `0 <= a <= N + 1`, stored densely.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    order: usize,
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            order,
            coeffs: vec![BigInt::zero(); order * (order + 2)],
        }
    }

    /// `c · z^n x^a`, or an error when the monomial lies outside the grid.
    pub fn monomial(order: usize, n: usize, a: usize, c: impl Into<BigInt>) -> Result<Self> {
        let mut s = Self::zero(order);
        if !s.in_grid(n, a) {
            return Err(Error::domain(format!("z^{n} x^{a} is outside order {order}")));
        }
        s.set(n, a, c.into());
        Ok(s)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn a_max(&self) -> usize {
        self.order + 1
    }

    pub(crate) fn in_grid(&self, n: usize, a: usize) -> bool {
        (1..=self.order).contains(&n) && a <= self.a_max()
    }

    fn index(&self, n: usize, a: usize) -> usize {
        (n - 1) * (self.order + 2) + a
    }

    /// Coefficient of `z^n x^a`; zero outside the grid.
    pub fn coeff(&self, n: usize, a: usize) -> BigInt {
        if self.in_grid(n, a) {
            self.coeffs[self.index(n, a)].clone()
        } else {
            BigInt::zero()
        }
    }

    pub fn set(&mut self, n: usize, a: usize, c: BigInt) {
        assert!(self.in_grid(n, a), "z^{n} x^{a} is outside order {}", self.order);
        let i = self.index(n, a);
        self.coeffs[i] = c;
    }

    /// Adds `c · z^n x^a`, silently dropping terms above the order.
    pub(crate) fn add_term(&mut self, n: usize, a: usize, c: &BigInt) {
        if n > self.order {
            return;
        }
        assert!(self.in_grid(n, a), "z^{n} x^{a} is outside the grid");
        let i = self.index(n, a);
        self.coeffs[i] += c;
    }

    /// Nonzero terms as `(n, a, coefficient)`, ordered by `n` then `a`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> + '_ {
        let width = self.order + 2;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (i / width + 1, i % width, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `Σ_a c(n, a)`.
    pub fn z_coefficient_sum(&self, n: usize) -> BigInt {
        (0..=self.a_max()).map(|a| self.coeff(n, a)).sum()
    }

    /// Equality of all coefficients with `n <= degree`; terms beyond either
    /// order count as zero.
    pub fn agrees_through(&self, other: &TruncatedSeries, degree: usize) -> bool {
        let a_max = self.a_max().max(other.a_max());
        (1..=degree).all(|n| (0..=a_max).all(|a| self.coeff(n, a) == other.coeff(n, a)))
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries(order {}: ", self.order)?;
        f.debug_list()
            .entries(self.terms().map(|(n, a, c)| format!("{c} z^{n} x^{a}")))
            .finish()?;
        f.write_str(")")
    }
}

impl AddAssign<&TruncatedSeries> for TruncatedSeries {
    fn add_assign(&mut self, rhs: &TruncatedSeries) {
        assert_eq!(self.order, rhs.order, "adding series of different orders");
        for (l, r) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *l += r;
        }
    }
}

impl Add<&TruncatedSeries> for TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(mut self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self += rhs;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid() {
        let s = TruncatedSeries::monomial(3, 2, 4, 7).unwrap();
        assert_eq!(s.coeff(2, 4), BigInt::from(7));
        assert_eq!(s.coeff(9, 0), BigInt::zero());
        assert_eq!(s.terms().collect::<Vec<_>>(), [(2, 4, &BigInt::from(7))]);
        assert!(TruncatedSeries::monomial(3, 4, 1, 1).is_err());
        assert!(TruncatedSeries::monomial(3, 1, 5, 1).is_err());
        assert!(TruncatedSeries::monomial(3, 0, 1, 1).is_err());
        let t = s.clone() + &s;
        assert_eq!(t.z_coefficient_sum(2), BigInt::from(14));
        assert!(!t.agrees_through(&s, 3));
        assert!(t.agrees_through(&s, 1));
    }
}
