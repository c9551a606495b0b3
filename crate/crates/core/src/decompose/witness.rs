//! Explicit primitive vectors whose orthogonal complements realize each form.
//!
//! Each witness lives in an ambient unimodular lattice `head + tail`, where the
//! vector is supported on the small `head` block and `tail` is an even
//! unimodular sum of `E8(+-1)` and `U`. The complement is then
//! `(v^perp in head) + tail`, and only the head part needs a kernel computation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{Branch, DecomposeError, DecompositionReport, SignatureData};
use crate::lattice::{Component, Decomposition, GramLattice, LatticeInvariants, Sign, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    /// `v = e + (d/2) f` in a hyperbolic plane; needs `d` even.
    Hyperbolic,
    /// `v = e_1 + ... + e_d` in the diagonal form `<1>^d`.
    UnitSum,
    /// `v = (d/4 + 1) e + (d/4 - 1) f` in `<1> + <-1>`; needs `8 | d`.
    EightDivides,
    /// `v = 3 e_0 - e_1 - ... - e_r` in `<1> + <-1>^r` with `r = 9 - d`.
    Anticanonical,
}

impl WitnessKind {
    pub fn as_str(self) -> &'static str {
        match self {
            WitnessKind::Hyperbolic => "hyperbolic",
            WitnessKind::UnitSum => "unit-sum",
            WitnessKind::EightDivides => "eight-divides",
            WitnessKind::Anticanonical => "anticanonical",
        }
    }
}

/// Unimodular ambient lattice `head + tail`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambient {
    pub head: GramLattice,
    pub tail: Decomposition,
}

impl Ambient {
    pub fn rank(&self) -> BigInt {
        self.head.rank() + self.tail.rank()
    }

    pub fn invariants(&self) -> Result<LatticeInvariants, DecomposeError> {
        Ok(self.head.invariants().direct_sum(&self.tail.invariants()?))
    }

    pub fn realize(&self, max_rank: u64) -> Result<GramLattice, DecomposeError> {
        let tail = self.tail.realize(max_rank.saturating_sub(self.head.rank() as u64))?;
        Ok(GramLattice::direct_sum([&self.head, &tail]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallWitness {
    pub kind: WitnessKind,
    pub d: u64,
    pub ambient: Ambient,
    /// Coordinates on the head block; zero on the tail.
    pub vector: Vec<BigInt>,
    pub head_complement: GramLattice,
}

impl WallWitness {
    /// Coordinates of the vector in the full ambient basis; `None` when the
    /// ambient rank does not fit in memory.
    pub fn full_vector(&self) -> Option<Vec<BigInt>> {
        let rank = self.ambient.rank().to_usize()?;
        let mut v = self.vector.clone();
        v.resize(rank, BigInt::zero());
        Some(v)
    }

    pub fn complement_invariants(&self) -> Result<LatticeInvariants, DecomposeError> {
        Ok(self
            .head_complement
            .invariants()
            .direct_sum(&self.ambient.tail.invariants()?))
    }

    /// Gram matrix of the whole complement; refused above `max_rank`.
    pub fn complement(&self, max_rank: u64) -> Result<GramLattice, DecomposeError> {
        let head = self.head_complement.rank() as u64;
        let tail = self.ambient.tail.realize(max_rank.saturating_sub(head))?;
        Ok(GramLattice::direct_sum([&self.head_complement, &tail]))
    }
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Builds the witness vector of the given kind on its head block, inside the
/// ambient `head + tail`, and computes its orthogonal complement.
pub fn wall_witness(
    kind: WitnessKind,
    d: u64,
    tail: Decomposition,
) -> Result<WallWitness, DecomposeError> {
    let fail = |msg: String| Err(DecomposeError::Witness(msg));
    let di = BigInt::from(d);
    let (head, vector) = match kind {
        WitnessKind::Hyperbolic => {
            if d % 2 != 0 {
                return fail(format!("hyperbolic witness needs even d, got {d}"));
            }
            let head = Component::U.gram()?;
            (head, vec![BigInt::one(), &di / 2])
        }
        WitnessKind::UnitSum => {
            let n = usize::try_from(d).map_err(|_| DecomposeError::Witness("d too large".into()))?;
            (GramLattice::diagonal(&vec![1i64; n]), vec![BigInt::one(); n])
        }
        WitnessKind::EightDivides => {
            if d % 8 != 0 {
                return fail(format!("eight-divides witness needs 8 | d, got {d}"));
            }
            let quarter = &di / 4;
            (
                GramLattice::diagonal(&[1i64, -1]),
                vec![&quarter + 1, &quarter - 1],
            )
        }
        WitnessKind::Anticanonical => {
            if !(1..=8).contains(&d) {
                return fail(format!("anticanonical witness needs 1 <= d <= 8, got {d}"));
            }
            let r = 9 - d as usize;
            let mut diag = vec![1i64];
            diag.extend(std::iter::repeat(-1).take(r));
            let mut v = vec![3i64];
            v.extend(std::iter::repeat(-1).take(r));
            (GramLattice::diagonal(&diag), ints(&v))
        }
    };
    let norm = head.norm(&vector)?;
    if norm != di {
        return Err(DecomposeError::Inconsistent(format!(
            "witness has square {norm}, expected {d}"
        )));
    }
    if kind != WitnessKind::Hyperbolic && !head.is_characteristic(&vector)? {
        return Err(DecomposeError::Inconsistent(
            "witness in an odd ambient is not characteristic".into(),
        ));
    }
    let head_complement = head.orthogonal_complement(&vector)?;
    Ok(WallWitness {
        kind,
        d,
        ambient: Ambient { head, tail },
        vector,
        head_complement,
    })
}

fn e8_tail(q: &BigInt, hyperbolic: &BigInt) -> Result<Decomposition, DecomposeError> {
    let count = |x: &BigInt| -> Result<u64, DecomposeError> {
        u64::try_from(x.clone())
            .map_err(|_| DecomposeError::Witness(format!("tail multiplicity {x} invalid")))
    };
    let e8 = count(&q.abs())?;
    let sign = if q.is_negative() { Sign::Minus } else { Sign::Plus };
    Ok(Decomposition::new(vec![
        Term::new(Component::E8, sign, e8),
        Term::new(Component::U, Sign::Plus, count(hyperbolic)?),
    ]))
}

fn eighth(x: &BigInt) -> Result<BigInt, DecomposeError> {
    let (q, r) = x.div_mod_floor(&BigInt::from(8));
    if !r.is_zero() {
        return Err(DecomposeError::Witness(format!("{x} is not divisible by 8")));
    }
    Ok(q)
}

/// Witness of the given kind in an ambient lattice with the signature
/// `(b+, b-)` of `sig`.
pub fn witness_for(sig: &SignatureData, kind: WitnessKind) -> Result<WallWitness, DecomposeError> {
    let tail = match kind {
        WitnessKind::Hyperbolic | WitnessKind::EightDivides => {
            e8_tail(&eighth(&sig.s)?, &(&sig.t - 1))?
        }
        WitnessKind::UnitSum => {
            let u = sig
                .u
                .as_ref()
                .ok_or_else(|| DecomposeError::Witness("unit-sum witness needs b+ >= d".into()))?;
            e8_tail(&eighth(&(&sig.s - sig.d))?, u)?
        }
        WitnessKind::Anticanonical => {
            let r = 9 - sig.d.min(9);
            if sig.b_plus != BigInt::one() || sig.b_minus != BigInt::from(r) {
                return Err(DecomposeError::Witness(format!(
                    "anticanonical witness needs signature (1, {r})"
                )));
            }
            Decomposition::default()
        }
    };
    wall_witness(kind, sig.d, tail)
}

/// All witness constructions that apply to the report's case: the one
/// matching its branch, plus the eight-divides construction for odd lattices
/// with `8 | d`.
pub fn report_witnesses(report: &DecompositionReport) -> Vec<WitnessKind> {
    let sig = &report.signature;
    match report.branch {
        Branch::Even => vec![WitnessKind::Hyperbolic],
        Branch::Odd if sig.d % 8 == 0 => vec![WitnessKind::UnitSum, WitnessKind::EightDivides],
        Branch::Odd => vec![WitnessKind::UnitSum],
        Branch::EightDivides => vec![WitnessKind::EightDivides],
        Branch::Exceptional if report.dim == 2 => vec![WitnessKind::Anticanonical],
        Branch::Exceptional => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{IntMatrix, Signature};

    #[test]
    fn hyperbolic_witness_d4() {
        let w = wall_witness(WitnessKind::Hyperbolic, 4, Decomposition::default()).unwrap();
        assert_eq!(w.vector, ints(&[1, 2]));
        assert_eq!(
            w.head_complement.gram(),
            &IntMatrix::from_rows(&[vec![-4]]).unwrap()
        );
    }

    #[test]
    fn unit_sum_witness_d3() {
        let w = wall_witness(WitnessKind::UnitSum, 3, Decomposition::default()).unwrap();
        assert_eq!(w.vector, ints(&[1, 1, 1]));
        let c = &w.head_complement;
        assert_eq!(c.rank(), 2);
        assert_eq!(c.determinant(), BigInt::from(3));
        assert!(c.is_even());
        assert_eq!(c.signature(), Signature::new(2, 0, 0));
    }

    #[test]
    fn eight_divides_witness_d8() {
        let w = wall_witness(WitnessKind::EightDivides, 8, Decomposition::default()).unwrap();
        assert_eq!(w.vector, ints(&[3, 1]));
        let c = &w.head_complement;
        assert_eq!(c.rank(), 1);
        assert_eq!(c.determinant(), BigInt::from(-8));
    }

    #[test]
    fn divisibility_preconditions() {
        assert!(matches!(
            wall_witness(WitnessKind::Hyperbolic, 3, Decomposition::default()),
            Err(DecomposeError::Witness(_))
        ));
        assert!(matches!(
            wall_witness(WitnessKind::EightDivides, 12, Decomposition::default()),
            Err(DecomposeError::Witness(_))
        ));
    }

    #[test]
    fn structured_complement_matches_full_kernel() {
        let tail = Decomposition::new(vec![
            Term::new(Component::E8, Sign::Minus, 1),
            Term::new(Component::U, Sign::Plus, 2),
        ]);
        for (kind, d) in [
            (WitnessKind::Hyperbolic, 6),
            (WitnessKind::UnitSum, 5),
            (WitnessKind::EightDivides, 16),
        ] {
            let w = wall_witness(kind, d, tail.clone()).unwrap();
            let ambient = w.ambient.realize(100).unwrap();
            let full = ambient.orthogonal_complement(&w.full_vector().unwrap()).unwrap();
            assert_eq!(full.invariants(), w.complement_invariants().unwrap(), "{kind:?}");
            assert_eq!(
                w.complement(100).unwrap().invariants(),
                w.complement_invariants().unwrap()
            );
            assert!(ambient.determinant().abs().is_one());
        }
    }
}
