//! Primitive Hodge numbers of complete intersections.
//!
//! A smooth complete intersection `V_n(d_1, ..., d_c)` has its primitive Hodge
//! numbers `h^{p,q}_o` packed into a single generating series
//! `H(d) = sum h^{p,q}_o y^p z^q`, where the coefficient of `y^p z^q` refers to
//! the variety of dimension `p + q`. The series for one hypersurface is the
//! quotient `P / (1 - Q)` and the multi-degree series is a sum over non-empty
//! subsets of the degree list; see [`series`].

mod euler;
pub mod series;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use euler::euler_oracle;
pub use series::{series_multi, series_single, BivariateSeries};

/// Largest codimension accepted. The subset formula has `2^c - 1` terms.
pub const MAX_CODIM: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HodgeError {
    #[error("multidegree is empty")]
    EmptyDegrees,
    #[error("degree entries must be >= 1, got {0}")]
    ZeroDegree(u64),
    #[error("codimension {0} exceeds the supported maximum of {MAX_CODIM}")]
    TooManyDegrees(usize),
    #[error("total degree overflows 64 bits")]
    DegreeOverflow,
    #[error("single-degree series needs d >= 2, got {0}")]
    DegreeTooSmall(u64),
    #[error("dimension must be even and >= 2, got {0}")]
    BadDimension(u32),
}

/// Binomial coefficient `C(a, b)`, zero when `b < 0` or `b > a`.
pub fn binomial(a: u64, b: i64) -> BigInt {
    if b < 0 || b as u64 > a {
        return BigInt::zero();
    }
    let b = (b as u64).min(a - b as u64);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// Multidegree `(d_1, ..., d_c)` of a complete intersection, in normalized form:
/// entries equal to 1 are dropped (a hyperplane section by a linear form gives
/// the same variety in a smaller projective space) and the rest are sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct MultiDegree {
    degrees: Vec<u64>,
    total: u64,
    even: usize,
}

impl MultiDegree {
    pub fn new(raw: &[u64]) -> Result<Self, HodgeError> {
        if raw.is_empty() {
            return Err(HodgeError::EmptyDegrees);
        }
        if let Some(&z) = raw.iter().find(|&&d| d == 0) {
            return Err(HodgeError::ZeroDegree(z));
        }
        let mut degrees: Vec<u64> = raw.iter().copied().filter(|&d| d > 1).collect();
        if degrees.len() > MAX_CODIM {
            return Err(HodgeError::TooManyDegrees(degrees.len()));
        }
        degrees.sort_unstable();
        let total = degrees
            .iter()
            .try_fold(1u64, |acc, &d| acc.checked_mul(d))
            .ok_or(HodgeError::DegreeOverflow)?;
        let even = degrees.iter().filter(|&&d| d % 2 == 0).count();
        Ok(Self {
            degrees,
            total,
            even,
        })
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// Number of entries after normalization.
    pub fn codim(&self) -> usize {
        self.degrees.len()
    }

    /// Total degree `d = d_1 * ... * d_c`.
    pub fn total_degree(&self) -> u64 {
        self.total
    }

    /// Number of even entries.
    pub fn even_count(&self) -> usize {
        self.even
    }

    pub fn is(&self, degrees: &[u64]) -> bool {
        self.degrees == degrees
    }
}

impl TryFrom<Vec<u64>> for MultiDegree {
    type Error = HodgeError;
    fn try_from(v: Vec<u64>) -> Result<Self, Self::Error> {
        Self::new(&v)
    }
}

impl From<MultiDegree> for Vec<u64> {
    fn from(m: MultiDegree) -> Self {
        m.degrees
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degrees.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.degrees.iter().map(|d| d.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// Middle row of the Hodge diamond of `V_n(d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeRow {
    pub n: u32,
    /// `h^{p, n-p}_o` for `p = 0..=n`.
    #[serde(with = "crate::serde_big::vec")]
    pub primitive: Vec<BigInt>,
}

impl HodgeRow {
    pub fn primitive(&self, p: u32) -> &BigInt {
        &self.primitive[p as usize]
    }

    /// `h^{p, n-p}`; the hyperplane class adds one at `p = n/2`.
    pub fn full(&self, p: u32) -> BigInt {
        let base = self.primitive[p as usize].clone();
        if 2 * p == self.n {
            base + 1
        } else {
            base
        }
    }

    pub fn full_row(&self) -> Vec<BigInt> {
        (0..=self.n).map(|p| self.full(p)).collect()
    }

    /// Middle Betti number `b_n`.
    pub fn betti(&self) -> BigInt {
        self.primitive.iter().sum::<BigInt>() + 1
    }
}

pub(crate) fn check_dimension(n: u32) -> Result<(), HodgeError> {
    if n < 2 || n % 2 != 0 {
        return Err(HodgeError::BadDimension(n));
    }
    Ok(())
}

/// Middle Hodge row of `V_n(d)` for even `n >= 2`.
pub fn hodge_row(degrees: &MultiDegree, n: u32) -> Result<HodgeRow, HodgeError> {
    check_dimension(n)?;
    let series = series_multi(degrees, n as usize)?;
    let primitive = (0..=n as usize)
        .map(|p| series.coeff(p, n as usize - p).clone())
        .collect();
    Ok(HodgeRow { n, primitive })
}
