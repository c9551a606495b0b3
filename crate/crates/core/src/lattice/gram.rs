use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::normal_form::{kernel_of_form, smith_diagonal};
use super::{IntMatrix, LatticeError};

/// Counts of positive, negative and zero squares of a real diagonalization.
/// Counts are unbounded so that formal sums with astronomically many
/// summands keep exact invariants.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    #[serde(with = "crate::serde_big")]
    pub positive: BigInt,
    #[serde(with = "crate::serde_big")]
    pub negative: BigInt,
    #[serde(with = "crate::serde_big")]
    pub zero: BigInt,
}

impl Signature {
    pub fn new(positive: impl Into<BigInt>, negative: impl Into<BigInt>, zero: impl Into<BigInt>) -> Self {
        Self {
            positive: positive.into(),
            negative: negative.into(),
            zero: zero.into(),
        }
    }

    pub fn rank(&self) -> BigInt {
        &self.positive + &self.negative + &self.zero
    }

    pub fn is_definite(&self) -> bool {
        self.zero.is_zero() && (self.positive.is_zero() || self.negative.is_zero())
    }

    fn scaled(&self, k: &BigInt) -> Self {
        Self::new(&self.positive * k, &self.negative * k, &self.zero * k)
    }

    fn plus(&self, other: &Self) -> Self {
        Self::new(
            &self.positive + &other.positive,
            &self.negative + &other.negative,
            &self.zero + &other.zero,
        )
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero.is_zero() {
            write!(f, "({}, {})", self.positive, self.negative)
        } else {
            write!(f, "({}, {}, {})", self.positive, self.negative, self.zero)
        }
    }
}

/// Finite abelian group given by its invariant factors `n_1 | n_2 | ...`, all `>= 2`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DiscriminantGroup {
    factors: Vec<BigInt>,
}

impl DiscriminantGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// Normalizes a product of cyclic groups of the given orders into
    /// invariant-factor form.
    pub fn from_orders(orders: impl IntoIterator<Item = BigInt>) -> Self {
        let mut a: Vec<BigInt> = orders
            .into_iter()
            .map(|x| x.abs())
            .filter(|x| !x.is_one())
            .collect();
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                let g = a[i].gcd(&a[j]);
                let l = a[i].lcm(&a[j]);
                a[i] = g;
                a[j] = l;
            }
        }
        a.retain(|x| !x.is_one());
        Self { factors: a }
    }

    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn order(&self) -> BigInt {
        self.factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::from_orders(self.factors.iter().chain(&other.factors).cloned())
    }

    pub fn is_cyclic_of_order(&self, d: &BigInt) -> bool {
        if d.abs().is_one() {
            return self.is_trivial();
        }
        self.factors.len() == 1 && &self.factors[0] == d
    }
}

impl fmt::Display for DiscriminantGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.factors.iter().map(|n| format!("Z/{n}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Serialize for DiscriminantGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        crate::serde_big::vec::serialize(&self.factors, s)
    }
}

impl<'de> Deserialize<'de> for DiscriminantGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        crate::serde_big::vec::deserialize(d).map(Self::from_orders)
    }
}

/// Basis-independent invariants of a lattice. Counts are `u64` so that
/// invariants of large formal sums can be assembled without materializing them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeInvariants {
    #[serde(with = "crate::serde_big")]
    pub rank: BigInt,
    pub signature: Signature,
    #[serde(with = "crate::serde_big")]
    pub determinant: BigInt,
    pub even: bool,
    /// `None` for degenerate lattices.
    pub discriminant: Option<DiscriminantGroup>,
}

impl LatticeInvariants {
    /// Invariants of the rank-0 lattice.
    pub fn empty() -> Self {
        Self {
            rank: BigInt::zero(),
            signature: Signature::default(),
            determinant: BigInt::one(),
            even: true,
            discriminant: Some(DiscriminantGroup::trivial()),
        }
    }

    /// Invariants of the orthogonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        Self {
            rank: &self.rank + &other.rank,
            signature: self.signature.plus(&other.signature),
            determinant: &self.determinant * &other.determinant,
            even: self.even && other.even,
            discriminant: match (&self.discriminant, &other.discriminant) {
                (Some(a), Some(b)) => Some(a.direct_sum(b)),
                _ => None,
            },
        }
    }

    /// Invariants of `k` orthogonal copies.
    pub fn repeat(&self, k: &BigInt) -> Result<Self, LatticeError> {
        const MAX_NONTRIVIAL_COPIES: u32 = 4096;
        if k.is_zero() {
            return Ok(Self::empty());
        }
        let too_large = |limit: BigInt| LatticeError::TooLarge {
            rank: &self.rank * k,
            limit,
        };
        let determinant = if self.determinant.abs().is_one() {
            if self.determinant.is_negative() && k.is_odd() {
                -BigInt::one()
            } else {
                BigInt::one()
            }
        } else {
            let exp = u32::try_from(k)
                .ok()
                .filter(|&e| e <= MAX_NONTRIVIAL_COPIES)
                .ok_or_else(|| too_large(&self.rank * MAX_NONTRIVIAL_COPIES))?;
            self.determinant.pow(exp)
        };
        let discriminant = match &self.discriminant {
            Some(g) if g.is_trivial() => Some(g.clone()),
            Some(g) => {
                let copies = u32::try_from(k)
                    .ok()
                    .filter(|&c| c <= MAX_NONTRIVIAL_COPIES)
                    .ok_or_else(|| too_large(&self.rank * MAX_NONTRIVIAL_COPIES))?;
                let orders = (0..copies).flat_map(|_| g.factors.iter().cloned());
                Some(DiscriminantGroup::from_orders(orders))
            }
            None => None,
        };
        Ok(Self {
            rank: &self.rank * k,
            signature: self.signature.scaled(k),
            determinant,
            even: self.even,
            discriminant,
        })
    }

    /// Names of the invariants in which `self` and `other` differ, with the
    /// determinant compared up to sign.
    pub fn mismatches(&self, other: &Self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.rank != other.rank {
            out.push("rank");
        }
        if self.signature != other.signature {
            out.push("signature");
        }
        if self.determinant.abs() != other.determinant.abs() {
            out.push("determinant");
        }
        if self.even != other.even {
            out.push("parity");
        }
        if self.discriminant != other.discriminant {
            out.push("discriminant group");
        }
        out
    }
}

/// Integral lattice given by a symmetric Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GramLattice {
    gram: IntMatrix,
}

impl GramLattice {
    pub fn new(gram: IntMatrix) -> Result<Self, LatticeError> {
        if !gram.is_square() {
            return Err(LatticeError::NotSquare {
                rows: gram.rows(),
                cols: gram.cols(),
            });
        }
        if !gram.is_symmetric() {
            return Err(LatticeError::NotSymmetric);
        }
        Ok(Self { gram })
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self, LatticeError> {
        Self::new(IntMatrix::from_rows(rows)?)
    }

    /// Diagonal form `<a_1> + ... + <a_k>`.
    pub fn diagonal<T: Into<BigInt> + Clone>(entries: &[T]) -> Self {
        Self {
            gram: IntMatrix::diagonal(entries),
        }
    }

    pub fn empty() -> Self {
        Self {
            gram: IntMatrix::zeros(0, 0),
        }
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    /// The same module with the form negated, `L(-1)`.
    pub fn twisted(&self) -> Self {
        Self {
            gram: self.gram.neg(),
        }
    }

    pub fn direct_sum<'a>(parts: impl IntoIterator<Item = &'a GramLattice>) -> Self {
        Self {
            gram: IntMatrix::block_diagonal(parts.into_iter().map(|p| &p.gram)),
        }
    }

    fn check_len(&self, v: &[BigInt]) -> Result<(), LatticeError> {
        if v.len() != self.rank() {
            return Err(LatticeError::DimensionMismatch {
                expected: self.rank(),
                got: v.len(),
            });
        }
        Ok(())
    }

    pub fn inner(&self, x: &[BigInt], y: &[BigInt]) -> Result<BigInt, LatticeError> {
        self.check_len(x)?;
        self.check_len(y)?;
        let gy = self.gram.mul_vec(y);
        Ok(x.iter().zip(&gy).map(|(a, b)| a * b).sum())
    }

    pub fn norm(&self, x: &[BigInt]) -> Result<BigInt, LatticeError> {
        self.inner(x, x)
    }

    pub fn determinant(&self) -> BigInt {
        self.gram.determinant()
    }

    /// Signature by exact congruence diagonalization over the rationals.
    ///
    /// When every remaining diagonal entry is zero but some off-diagonal
    /// coupling `a_ij` is not, row/column `j` is added to row/column `i`, which
    /// makes the new diagonal entry `2 a_ij` nonzero.
    pub fn signature(&self) -> Signature {
        let n = self.rank();
        let mut a: Vec<Vec<BigRational>> = self
            .gram
            .to_rows()
            .into_iter()
            .map(|row| row.into_iter().map(BigRational::from_integer).collect())
            .collect();
        let mut sig = Signature::default();
        for k in 0..n {
            let pivot = (k..n).find(|&i| !a[i][i].is_zero());
            let pivot = match pivot {
                Some(i) => i,
                None => {
                    let coupled = (k..n)
                        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                        .find(|&(i, j)| !a[i][j].is_zero());
                    let Some((i, j)) = coupled else {
                        sig.zero += (n - k) as u64;
                        return sig;
                    };
                    for c in 0..n {
                        let add = a[j][c].clone();
                        a[i][c] += add;
                    }
                    for r in 0..n {
                        let add = a[r][j].clone();
                        a[r][i] += add;
                    }
                    i
                }
            };
            a.swap(k, pivot);
            for row in a.iter_mut() {
                row.swap(k, pivot);
            }
            let p = a[k][k].clone();
            if p.is_positive() {
                sig.positive += 1;
            } else {
                sig.negative += 1;
            }
            for r in k + 1..n {
                if a[r][k].is_zero() {
                    continue;
                }
                let f = &a[r][k] / &p;
                for c in k..n {
                    if a[k][c].is_zero() {
                        continue;
                    }
                    let sub = &f * &a[k][c];
                    a[r][c] -= sub;
                }
            }
            // Column operations mirror the row operations; only the trailing
            // block is read afterwards, so clearing column k suffices.
            for row in a.iter_mut().skip(k + 1) {
                row[k] = BigRational::zero();
            }
        }
        sig
    }

    /// True iff every diagonal entry is even; `x.x = sum x_i^2 g_ii + 2 sum x_i x_j g_ij`.
    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[(i, i)].is_even())
    }

    /// Invariant factors `> 1` of the Smith normal form of the Gram matrix.
    pub fn discriminant_group(&self) -> Result<DiscriminantGroup, LatticeError> {
        let diag = smith_diagonal(&self.gram);
        if diag.iter().any(Zero::is_zero) {
            return Err(LatticeError::Degenerate);
        }
        Ok(DiscriminantGroup::from_orders(diag))
    }

    /// `h . b == b . b (mod 2)` for every basis vector `b`; both sides are
    /// additive mod 2, so this covers every lattice vector.
    pub fn is_characteristic(&self, h: &[BigInt]) -> Result<bool, LatticeError> {
        self.check_len(h)?;
        let gh = self.gram.mul_vec(h);
        Ok((0..self.rank()).all(|i| (&gh[i] - &self.gram[(i, i)]).is_even()))
    }

    /// Orthogonal complement of a primitive vector `v`: the sublattice
    /// `{x : v . x = 0}` with the restricted form.
    pub fn orthogonal_complement(&self, v: &[BigInt]) -> Result<GramLattice, LatticeError> {
        self.orthogonal_complement_with_basis(v).map(|(l, _)| l)
    }

    /// As [`Self::orthogonal_complement`], also returning the basis of the
    /// complement as columns in the coordinates of `self`.
    pub fn orthogonal_complement_with_basis(
        &self,
        v: &[BigInt],
    ) -> Result<(GramLattice, IntMatrix), LatticeError> {
        self.check_len(v)?;
        if v.iter().all(Zero::is_zero) {
            return Err(LatticeError::ZeroVector);
        }
        let content = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if !content.is_one() {
            return Err(LatticeError::NotPrimitive(content));
        }
        let form = self.gram.mul_vec(v);
        let (_, basis) = kernel_of_form(&form).ok_or(LatticeError::Degenerate)?;
        let restricted = &(&basis.transpose() * &self.gram) * &basis;
        Ok((GramLattice { gram: restricted }, basis))
    }

    /// Gram matrix `T^t G T` in the basis given by the columns of a unimodular `T`.
    pub fn transform(&self, t: &IntMatrix) -> Result<GramLattice, LatticeError> {
        if !t.is_square() || t.rows() != self.rank() {
            return Err(LatticeError::DimensionMismatch {
                expected: self.rank(),
                got: t.rows(),
            });
        }
        let det = t.determinant();
        if !det.abs().is_one() {
            return Err(LatticeError::NotUnimodular(det));
        }
        Ok(GramLattice {
            gram: &(&t.transpose() * &self.gram) * t,
        })
    }

    pub fn invariants(&self) -> LatticeInvariants {
        LatticeInvariants {
            rank: self.rank().into(),
            signature: self.signature(),
            determinant: self.determinant(),
            even: self.is_even(),
            discriminant: self.discriminant_group().ok(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("gram serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self, LatticeError> {
        serde_json::from_str(text).map_err(|e| LatticeError::Json(e.to_string()))
    }
}

impl Serialize for GramLattice {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rank())
            .map(|i| self.gram.row(i).iter().map(ToString::to_string).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GramLattice {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        let parsed = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|t| t.parse::<BigInt>())
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        GramLattice::from_rows(&parsed).map_err(D::Error::custom)
    }
}
