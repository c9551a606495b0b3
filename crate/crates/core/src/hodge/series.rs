//! Truncated power series in two variables over arbitrary-precision integers.

use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{binomial, HodgeError, MultiDegree};

/// Power series in `y, z` truncated at degree `order` in each variable.
///
/// Coefficients are stored densely, row-major in the `y` exponent. Binary
/// operations require both operands to share the same truncation order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateSeries {
    order: usize,
    coeffs: Vec<BigInt>,
}

impl BivariateSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            order,
            coeffs: vec![BigInt::zero(); (order + 1) * (order + 1)],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigInt::one();
        s
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut s = Self::zero(order);
        for i in 0..=order {
            for j in 0..=order {
                s.coeffs[i * (order + 1) + j] = f(i, j);
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `y^i z^j`.
    pub fn coeff(&self, i: usize, j: usize) -> &BigInt {
        &self.coeffs[i * (self.order + 1) + j]
    }

    fn coeff_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.coeffs[i * (self.order + 1) + j]
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Multiplicative inverse; the constant term must be `1` or `-1`.
    pub fn inverse(&self) -> Option<Self> {
        let c0 = self.coeff(0, 0).clone();
        if !(c0.is_one() || (-&c0).is_one()) {
            return None;
        }
        let n = self.order;
        let mut inv = Self::zero(n);
        for i in 0..=n {
            for j in 0..=n {
                // sum_{(a,b) != (0,0)} self[a,b] * inv[i-a, j-b]
                let mut acc = if i == 0 && j == 0 {
                    BigInt::one()
                } else {
                    BigInt::zero()
                };
                for a in 0..=i {
                    for b in 0..=j {
                        if a == 0 && b == 0 {
                            continue;
                        }
                        let s = self.coeff(a, b);
                        if s.is_zero() {
                            continue;
                        }
                        acc -= s * inv.coeff(i - a, j - b);
                    }
                }
                *inv.coeff_mut(i, j) = acc * &c0;
            }
        }
        Some(inv)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..=self.order).all(|i| (0..i).all(|j| self.coeff(i, j) == self.coeff(j, i)))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// `coeff(p+1, q+1) >= coeff(p, q)` wherever both are inside the truncation,
    /// i.e. `H - yz H` has non-negative coefficients.
    pub fn dominates_yz_shift(&self) -> bool {
        (0..self.order)
            .all(|p| (0..self.order).all(|q| self.coeff(p + 1, q + 1) >= self.coeff(p, q)))
    }
}

impl Add for &BivariateSeries {
    type Output = BivariateSeries;
    fn add(self, rhs: &BivariateSeries) -> BivariateSeries {
        assert_eq!(self.order, rhs.order, "series truncation orders differ");
        BivariateSeries {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Mul for &BivariateSeries {
    type Output = BivariateSeries;
    fn mul(self, rhs: &BivariateSeries) -> BivariateSeries {
        assert_eq!(self.order, rhs.order, "series truncation orders differ");
        let n = self.order;
        let mut out = BivariateSeries::zero(n);
        for a in 0..=n {
            for b in 0..=n {
                let x = self.coeff(a, b);
                if x.is_zero() {
                    continue;
                }
                for c in 0..=n - a {
                    for d in 0..=n - b {
                        let y = rhs.coeff(c, d);
                        if !y.is_zero() {
                            *out.coeff_mut(a + c, b + d) += x * y;
                        }
                    }
                }
            }
        }
        out
    }
}

/// `(1 + y)(1 + z)` truncated at `order`.
fn hyperplane_factor(order: usize) -> BivariateSeries {
    BivariateSeries::from_fn(order, |i, j| {
        if i <= 1 && j <= 1 {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    })
}

/// Series of a single hypersurface of degree `d`: `P / (1 - Q)` with
/// `P = sum C(d-1, i+j+1) y^i z^j` and `Q = sum_{i,j >= 1} C(d, i+j) y^i z^j`.
pub fn series_single(d: u64, order: usize) -> Result<BivariateSeries, HodgeError> {
    if d < 2 {
        return Err(HodgeError::DegreeTooSmall(d));
    }
    let numerator = BivariateSeries::from_fn(order, |i, j| binomial(d - 1, (i + j + 1) as i64));
    let one_minus_q = BivariateSeries::from_fn(order, |i, j| match (i, j) {
        (0, 0) => BigInt::one(),
        (0, _) | (_, 0) => BigInt::zero(),
        _ => -binomial(d, (i + j) as i64),
    });
    let inv = one_minus_q
        .inverse()
        .expect("1 - Q has constant term 1");
    Ok(&numerator * &inv)
}

/// Series of a complete intersection:
/// `H(d_1..d_c) = sum over non-empty S of [(1+y)(1+z)]^{|S|-1} prod_{i in S} H(d_i)`.
///
/// Subsets are grouped by size, so the sum is evaluated as
/// `sum_k W^{k-1} e_k(H(d_1), ..., H(d_c))` with `e_k` the elementary
/// symmetric functions, built with `O(c^2)` series products instead of
/// `2^c - 1`. The codimension is still capped at [`super::MAX_CODIM`].
pub fn series_multi(degrees: &MultiDegree, order: usize) -> Result<BivariateSeries, HodgeError> {
    if degrees.codim() == 0 {
        return Err(HodgeError::EmptyDegrees);
    }
    let singles = degrees
        .degrees()
        .iter()
        .map(|&d| series_single(d, order))
        .collect::<Result<Vec<_>, _>>()?;
    if singles.len() == 1 {
        return Ok(singles.into_iter().next().unwrap());
    }
    // elementary[k] = e_k of the series seen so far
    let mut elementary = vec![BivariateSeries::one(order)];
    for h in &singles {
        elementary.push(BivariateSeries::zero(order));
        for k in (1..elementary.len()).rev() {
            let term = &elementary[k - 1] * h;
            elementary[k] = &elementary[k] + &term;
        }
    }
    let w = hyperplane_factor(order);
    let mut w_power = BivariateSeries::one(order);
    let mut total = BivariateSeries::zero(order);
    for e_k in &elementary[1..] {
        total = &total + &(&w_power * e_k);
        w_power = &w_power * &w;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(d: &[u64]) -> MultiDegree {
        MultiDegree::new(d).unwrap()
    }

    /// Literal subset enumeration of the multi-degree formula.
    fn series_multi_by_subsets(degrees: &[u64], order: usize) -> BivariateSeries {
        let singles: Vec<_> = degrees
            .iter()
            .map(|&d| series_single(d, order).unwrap())
            .collect();
        let w = hyperplane_factor(order);
        let mut total = BivariateSeries::zero(order);
        for mask in 1u32..(1 << degrees.len()) {
            let mut term = BivariateSeries::one(order);
            for (i, h) in singles.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    term = &term * h;
                }
            }
            for _ in 1..mask.count_ones() {
                term = &term * &w;
            }
            total = &total + &term;
        }
        total
    }

    #[test]
    fn cubic_low_order_coefficients() {
        let h = series_single(3, 1).unwrap();
        assert_eq!(h.coeff(0, 0), &BigInt::from(2));
        assert_eq!(h.coeff(1, 0), &BigInt::from(1));
        assert_eq!(h.coeff(0, 1), &BigInt::from(1));
    }

    #[test]
    fn cubic_known_values() {
        assert_eq!(series_single(3, 2).unwrap().coeff(1, 1), &BigInt::from(6));
        assert_eq!(series_single(3, 4).unwrap().coeff(3, 1), &BigInt::from(1));
    }

    #[test]
    fn multi_known_values() {
        assert_eq!(
            series_multi(&md(&[2, 3]), 4).unwrap().coeff(3, 1),
            &BigInt::from(8)
        );
        assert_eq!(
            series_multi(&md(&[2, 2, 2, 2]), 4).unwrap().coeff(3, 1),
            &BigInt::from(27)
        );
        assert_eq!(
            series_multi(&md(&[2, 2, 2]), 6).unwrap().coeff(4, 2),
            &BigInt::from(6)
        );
    }

    #[test]
    fn quadric_series_is_geometric_in_yz() {
        // H(2) = 1 / (1 - yz)
        let h = series_single(2, 5).unwrap();
        for i in 0..=5 {
            for j in 0..=5 {
                let expect = if i == j { 1 } else { 0 };
                assert_eq!(h.coeff(i, j), &BigInt::from(expect));
            }
        }
    }

    #[test]
    fn rejects_degenerate_inputs() {
        assert_eq!(series_single(1, 3), Err(HodgeError::DegreeTooSmall(1)));
        assert_eq!(
            series_multi(&md(&[1, 1]), 3),
            Err(HodgeError::EmptyDegrees)
        );
    }

    #[test]
    fn inverse_roundtrip() {
        let s = series_single(5, 4).unwrap();
        assert!(s.inverse().is_none()); // constant term 4
        let f = BivariateSeries::from_fn(4, |i, j| BigInt::from((i * 3 + j) as i64 - 1));
        let inv = f.inverse().unwrap();
        assert_eq!(&f * &inv, BivariateSeries::one(4));
    }

    #[test]
    fn elementary_grouping_matches_subset_enumeration() {
        for degrees in [
            vec![2, 3],
            vec![2, 2, 2],
            vec![3, 4, 5],
            vec![2, 2, 3, 5],
            vec![2, 3, 3, 4, 5],
        ] {
            let fast = series_multi(&md(&degrees), 6).unwrap();
            assert_eq!(fast, series_multi_by_subsets(&degrees, 6), "{degrees:?}");
        }
    }

    #[test]
    fn structural_properties_on_small_grid() {
        for a in 2..=6u64 {
            for b in 1..=5u64 {
                let s = series_multi(&md(&[a, b]), 8).unwrap();
                assert!(s.is_symmetric());
                assert!(s.is_nonnegative());
                assert!(s.dominates_yz_shift(), "({a},{b})");
            }
        }
    }
}
