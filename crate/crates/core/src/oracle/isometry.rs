//! Isometry search for small definite lattices.
//!
//! Basis vectors of the first lattice are mapped, one at a time, to vectors
//! of the second lattice with the same norm and the already-fixed inner
//! products. Candidates of each norm are enumerated completely with a
//! Fincke-Pohst search over the exact `L D L^t` factorization of the Gram
//! matrix, so a search that finishes without a witness proves the lattices
//! are not isometric.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::lattice::{GramLattice, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsometrySearchBudget {
    /// Largest rank accepted, at most 8.
    pub max_rank: usize,
    /// Cap on the number of vectors of any single norm.
    pub max_candidates: usize,
    /// Cap on enumeration plus backtracking nodes.
    pub node_limit: u64,
}

impl Default for IsometrySearchBudget {
    fn default() -> Self {
        Self {
            max_rank: 8,
            max_candidates: 200_000,
            node_limit: 50_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsometryOutcome {
    /// `witness^t G2 witness = G1`.
    Isometric { witness: IntMatrix },
    /// Proved: a cheap invariant differs, or the complete search found nothing.
    NotIsometric { reason: String },
}

impl IsometryOutcome {
    pub fn is_isometric(&self) -> bool {
        matches!(self, IsometryOutcome::Isometric { .. })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsometryError {
    #[error("lattice is not definite")]
    NotDefinite,
    #[error("rank {rank} exceeds the search limit {max}")]
    RankTooLarge { rank: usize, max: usize },
    #[error("search budget exhausted before a verdict")]
    BudgetExhausted,
    #[error("Gram entries too large for the search")]
    EntryOverflow,
}

struct Search<'a> {
    budget: &'a IsometrySearchBudget,
    nodes: u64,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<(), IsometryError> {
        self.nodes += 1;
        if self.nodes > self.budget.node_limit {
            return Err(IsometryError::BudgetExhausted);
        }
        Ok(())
    }
}

fn to_i64_matrix(g: &GramLattice) -> Result<Vec<Vec<i64>>, IsometryError> {
    let n = g.rank();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| g.gram()[(i, j)].to_i64().ok_or(IsometryError::EntryOverflow))
                .collect()
        })
        .collect()
}

/// `(L, D)` with `G = L D L^t`, `L` unit lower triangular; `G` positive definite.
fn ldl(g: &GramLattice) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let n = g.rank();
    let entry = |i: usize, j: usize| BigRational::from_integer(g.gram()[(i, j)].clone());
    let mut l = vec![vec![BigRational::zero(); n]; n];
    let mut d = vec![BigRational::zero(); n];
    for j in 0..n {
        let mut dj = entry(j, j);
        for k in 0..j {
            dj -= &l[j][k] * &l[j][k] * &d[k];
        }
        d[j] = dj;
        l[j][j] = BigRational::from_integer(1.into());
        for i in j + 1..n {
            let mut v = entry(i, j);
            for k in 0..j {
                v -= &l[i][k] * &l[j][k] * &d[k];
            }
            l[i][j] = v / &d[j];
        }
    }
    (l, d)
}

/// Every `x` with `x^t G x = norm`, for positive definite `G`.
fn vectors_of_norm(
    g: &GramLattice,
    norm: i64,
    search: &mut Search<'_>,
) -> Result<Vec<Vec<i64>>, IsometryError> {
    let n = g.rank();
    let (l, d) = ldl(g);
    let target = BigRational::from_integer(norm.into());
    let gram = to_i64_matrix(g)?;
    let mut out = Vec::new();
    let mut x = vec![0i64; n];

    #[allow(clippy::too_many_arguments)]
    fn descend(
        j: usize,
        remaining: BigRational,
        x: &mut Vec<i64>,
        l: &[Vec<BigRational>],
        d: &[BigRational],
        gram: &[Vec<i64>],
        norm: i64,
        out: &mut Vec<Vec<i64>>,
        search: &mut Search<'_>,
    ) -> Result<(), IsometryError> {
        search.tick()?;
        let n = x.len();
        let mut center = BigRational::zero();
        for i in j + 1..n {
            if x[i] != 0 {
                center -= &l[i][j] * BigRational::from_integer(x[i].into());
            }
        }
        let radius_sq = &remaining / &d[j];
        let c = center.to_f64().unwrap_or(0.0);
        let r = radius_sq.to_f64().unwrap_or(0.0).max(0.0).sqrt();
        let lo = (c - r).floor() as i64 - 1;
        let hi = (c + r).ceil() as i64 + 1;
        for xj in lo..=hi {
            let offset = BigRational::from_integer(xj.into()) - &center;
            let used = &d[j] * &offset * &offset;
            if used > remaining {
                continue;
            }
            x[j] = xj;
            if j == 0 {
                let q: i64 = (0..n)
                    .map(|a| (0..n).map(|b| x[a] * gram[a][b] * x[b]).sum::<i64>())
                    .sum();
                if q == norm {
                    out.push(x.clone());
                    if out.len() > search.budget.max_candidates {
                        return Err(IsometryError::BudgetExhausted);
                    }
                }
            } else {
                descend(j - 1, &remaining - used, x, l, d, gram, norm, out, search)?;
            }
        }
        x[j] = 0;
        Ok(())
    }

    if n == 0 {
        return Ok(if norm == 0 { vec![vec![]] } else { vec![] });
    }
    descend(n - 1, target, &mut x, &l, &d, &gram, norm, &mut out, search)?;
    Ok(out)
}

fn sign_class(g: &GramLattice) -> Result<i8, IsometryError> {
    let sig = g.signature();
    if !sig.is_definite() {
        return Err(IsometryError::NotDefinite);
    }
    Ok(if sig.negative.is_positive() { -1 } else { 1 })
}

/// Decides whether two definite lattices are isometric; on success returns
/// `T` with `T^t G2 T = G1`.
pub fn definite_isometry(
    g1: &GramLattice,
    g2: &GramLattice,
    budget: &IsometrySearchBudget,
) -> Result<IsometryOutcome, IsometryError> {
    let max = budget.max_rank.min(8);
    for g in [g1, g2] {
        if g.rank() > max {
            return Err(IsometryError::RankTooLarge {
                rank: g.rank(),
                max,
            });
        }
    }
    let (s1, s2) = (sign_class(g1)?, sign_class(g2)?);
    let reject = |reason: &str| {
        Ok(IsometryOutcome::NotIsometric {
            reason: reason.to_string(),
        })
    };
    if g1.rank() != g2.rank() {
        return reject("ranks differ");
    }
    if g1.rank() > 0 && s1 != s2 {
        return reject("signatures differ");
    }
    if g1.determinant() != g2.determinant() {
        return reject("determinants differ");
    }
    if g1.is_even() != g2.is_even() {
        return reject("parities differ");
    }

    let (p1, p2) = if s1 < 0 {
        (g1.twisted(), g2.twisted())
    } else {
        (g1.clone(), g2.clone())
    };
    let target = to_i64_matrix(&p1)?;
    let gram2 = to_i64_matrix(&p2)?;
    let n = p1.rank();
    let mut search = Search { budget, nodes: 0 };

    let mut by_norm: BTreeMap<i64, Vec<Vec<i64>>> = BTreeMap::new();
    for i in 0..n {
        let norm = target[i][i];
        if !by_norm.contains_key(&norm) {
            let vs = vectors_of_norm(&p2, norm, &mut search)?;
            by_norm.insert(norm, vs);
        }
    }

    fn image(gram: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
        gram.iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn backtrack(
        idx: usize,
        chosen: &mut Vec<(Vec<i64>, Vec<i64>)>,
        target: &[Vec<i64>],
        gram2: &[Vec<i64>],
        by_norm: &BTreeMap<i64, Vec<Vec<i64>>>,
        search: &mut Search<'_>,
    ) -> Result<bool, IsometryError> {
        if idx == target.len() {
            return Ok(true);
        }
        for cand in &by_norm[&target[idx][idx]] {
            search.tick()?;
            let compatible = chosen.iter().enumerate().all(|(j, (_, img))| {
                cand.iter().zip(img).map(|(a, b)| a * b).sum::<i64>() == target[idx][j]
            });
            if !compatible {
                continue;
            }
            chosen.push((cand.clone(), image(gram2, cand)));
            if backtrack(idx + 1, chosen, target, gram2, by_norm, search)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }

    let mut chosen = Vec::with_capacity(n);
    if !backtrack(0, &mut chosen, &target, &gram2, &by_norm, &mut search)? {
        return reject("exhaustive search found no isometry");
    }
    let mut witness = IntMatrix::zeros(n, n);
    for (j, (v, _)) in chosen.iter().enumerate() {
        for (i, &x) in v.iter().enumerate() {
            witness[(i, j)] = BigInt::from(x);
        }
    }
    let check = &(&witness.transpose() * g2.gram()) * &witness;
    assert_eq!(&check, g1.gram(), "isometry witness does not reproduce G1");
    debug_assert!(witness.determinant().abs() == BigInt::from(1));
    Ok(IsometryOutcome::Isometric { witness })
}
