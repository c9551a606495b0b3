//! Orthogonal decomposition of the primitive middle cohomology lattice.
//!
//! For `X = V_n(d)` with `n` even, `L = H^n(X, Z)` is unimodular of signature
//! `(b+, b-)`, the class `h` of a linear section of codimension `n/2` is
//! primitive with `h.h = d`, and `h^perp` is even. `L` itself is even exactly
//! when `C(n/2 + e, e)` is even, `e` being the number of even degrees. Given
//! these facts the primitive lattice `h^perp` is one of
//!
//! * `<-d> + (s/8) E8 + (t-1) U` when `L` is even, or when `8 | d`;
//! * `A_{d-1} + ((s-d)/8) E8 + u U` when `L` is odd and `d <= b+`;
//!
//! with `s = b+ - b-`, `t = min(b+, b-)`, `u = min(b+ - d, b-)` and a negative
//! E8 count meaning copies of `E8(-1)`. The cubic surface and intersections of
//! two quadrics fall outside these hypotheses and are handled separately.

mod witness;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hodge::{binomial, hodge_row, HodgeError, HodgeRow, MultiDegree};
use crate::lattice::{Component, Decomposition, LatticeError, Sign, Signature, Term};
use crate::oracle::{lucas_parity, CheckResult};

pub use witness::{report_witnesses, wall_witness, witness_for, Ambient, WallWitness, WitnessKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecomposeError {
    #[error(transparent)]
    Hodge(#[from] HodgeError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("total degree must be at least 2 after removing linear entries")]
    DegreeTooSmall,
    #[error("outside theorem's hypotheses: {0}")]
    OutsideTheorem(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("witness precondition violated: {0}")]
    Witness(String),
}

/// Signature data of the middle cohomology `H^n(X, Z)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureData {
    /// Middle Betti number `b+ + b-`.
    #[serde(with = "crate::serde_big")]
    pub b_n: BigInt,
    #[serde(with = "crate::serde_big")]
    pub b_plus: BigInt,
    #[serde(with = "crate::serde_big")]
    pub b_minus: BigInt,
    #[serde(with = "crate::serde_big")]
    pub s: BigInt,
    #[serde(with = "crate::serde_big")]
    pub t: BigInt,
    /// `min(b+ - d, b-)`; absent when `b+ < d`.
    #[serde(with = "crate::serde_big::option")]
    pub u: Option<BigInt>,
    /// `n = 4k + 2 epsilon`.
    pub epsilon: u8,
    pub d: u64,
}

impl SignatureData {
    pub fn betti(&self) -> BigInt {
        self.b_n.clone()
    }
}

/// Parity of `C(n/2 + e, e)`, which decides whether `H^n(X, Z)` is even.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityClass {
    #[serde(with = "crate::serde_big")]
    pub binomial: BigInt,
    pub binomial_odd: bool,
    pub lattice_is_even: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// `<-d> + (s/8) E8 + (t-1) U` for an even lattice.
    Even,
    /// `A_{d-1} + ((s-d)/8) E8 + u U` for an odd lattice with `d <= b+`.
    Odd,
    /// Odd lattice with `d > b+` but `8 | d`: the `<-d>` form.
    EightDivides,
    /// Cubic surface (`E6`) or intersection of two quadrics (`D_{n+3}`).
    Exceptional,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Even => "even",
            Branch::Odd => "odd",
            Branch::EightDivides => "eight-divides",
            Branch::Exceptional => "exceptional",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub degrees: MultiDegree,
    pub dim: u32,
    pub hodge: HodgeRow,
    pub signature: SignatureData,
    pub parity: ParityClass,
    pub branch: Branch,
    pub decomposition: Decomposition,
    pub notes: Vec<String>,
    pub verification: Vec<CheckResult>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecomposeOptions {
    /// Use the known answers for the cubic surface and for intersections of
    /// two quadrics. When off, those inputs go through the general rules and
    /// are rejected by their guards.
    pub exceptional_cases: bool,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        Self {
            exceptional_cases: true,
        }
    }
}

/// `b+ = sum_{p even} h^{p,q} + eps`, `b- = sum_{p odd} h^{p,q} - eps`.
pub fn signature_from_row(row: &HodgeRow, d: u64) -> SignatureData {
    let n = row.n;
    let epsilon = ((n / 2) % 2) as u8;
    let mut b_plus = BigInt::from(epsilon);
    let mut b_minus = -BigInt::from(epsilon);
    for p in 0..=n {
        if p % 2 == 0 {
            b_plus += row.full(p);
        } else {
            b_minus += row.full(p);
        }
    }
    let s = &b_plus - &b_minus;
    let t = b_plus.clone().min(b_minus.clone());
    let excess = &b_plus - d;
    let u = (!excess.is_negative()).then(|| excess.min(b_minus.clone()));
    SignatureData {
        b_n: &b_plus + &b_minus,
        b_plus,
        b_minus,
        s,
        t,
        u,
        epsilon,
        d,
    }
}

pub fn signature_data(degrees: &MultiDegree, n: u32) -> Result<SignatureData, DecomposeError> {
    let row = hodge_row(degrees, n)?;
    Ok(signature_from_row(&row, degrees.total_degree()))
}

/// Parity of `C(n/2 + e, e)`, computed exactly and by the binary no-carry
/// rule; the two must agree.
pub fn parity_class(degrees: &MultiDegree, n: u32) -> ParityClass {
    let half = (n / 2) as u64;
    let e = degrees.even_count() as u64;
    let binomial = binomial(half + e, e as i64);
    let binomial_odd = binomial.is_odd();
    assert_eq!(
        binomial_odd,
        lucas_parity(half, e) == 1,
        "binomial parity disagrees with the carry criterion"
    );
    ParityClass {
        binomial,
        binomial_odd,
        lattice_is_even: !binomial_odd,
    }
}

fn to_count(x: &BigInt, what: &str) -> Result<BigInt, DecomposeError> {
    if x.is_negative() {
        return Err(DecomposeError::Inconsistent(format!(
            "negative multiplicity {x} for {what}"
        )));
    }
    Ok(x.clone())
}

/// `|q| E8(sign q)`, with the sign normalized to `+1` when `q = 0`.
fn e8_term(q: &BigInt) -> Result<Term, DecomposeError> {
    let count = to_count(&q.abs(), "E8")?;
    let sign = if count.is_zero() { Sign::Plus } else { Sign::of(q) };
    Ok(Term::new(Component::E8, sign, count))
}

fn exact_eighth(x: &BigInt, what: &str) -> Result<BigInt, DecomposeError> {
    let (q, r) = x.div_mod_floor(&BigInt::from(8));
    if !r.is_zero() {
        return Err(DecomposeError::Inconsistent(format!(
            "{what} = {x} is not divisible by 8"
        )));
    }
    Ok(q)
}

/// `<-d> + (s/8) E8 + (t-1) U`.
pub(crate) fn rank_one_form(sig: &SignatureData) -> Result<Decomposition, DecomposeError> {
    let q = exact_eighth(&sig.s, "s")?;
    let hyperbolic = to_count(&(&sig.t - 1), "U")?;
    Ok(Decomposition::new(vec![
        Term::one(Component::Rank1(-BigInt::from(sig.d)), Sign::Plus),
        e8_term(&q)?,
        Term::new(Component::U, Sign::Plus, hyperbolic),
    ]))
}

/// `A_{d-1} + ((s-d)/8) E8 + u U`.
pub(crate) fn root_form(sig: &SignatureData) -> Result<Decomposition, DecomposeError> {
    let u = sig
        .u
        .as_ref()
        .ok_or_else(|| DecomposeError::Inconsistent("u undefined since b+ < d".into()))?;
    let q = exact_eighth(&(&sig.s - sig.d), "s - d")?;
    let rank = usize::try_from(sig.d - 1)
        .map_err(|_| DecomposeError::Inconsistent("A_{d-1} rank overflows".into()))?;
    Ok(Decomposition::new(vec![
        Term::one(Component::A(rank), Sign::Plus),
        e8_term(&q)?,
        Term::new(Component::U, Sign::Plus, to_count(u, "U")?),
    ]))
}

/// Twist of a definite block chosen so that it has the primitive signature
/// `(b+ - 1, b-)`.
fn definite_twist(sig: &SignatureData, rank: u64) -> Result<Sign, DecomposeError> {
    let pos: BigInt = &sig.b_plus - 1u32;
    let neg = &sig.b_minus;
    if pos == BigInt::from(rank) && neg.is_zero() {
        Ok(Sign::Plus)
    } else if pos.is_zero() && neg == &BigInt::from(rank) {
        Ok(Sign::Minus)
    } else {
        Err(DecomposeError::Inconsistent(format!(
            "primitive signature ({pos}, {neg}) is not definite of rank {rank}"
        )))
    }
}

pub fn decompose(degrees: &MultiDegree, n: u32) -> Result<DecompositionReport, DecomposeError> {
    decompose_with(degrees, n, DecomposeOptions::default())
}

pub fn decompose_with(
    degrees: &MultiDegree,
    n: u32,
    options: DecomposeOptions,
) -> Result<DecompositionReport, DecomposeError> {
    let d = degrees.total_degree();
    if d < 2 {
        return Err(DecomposeError::DegreeTooSmall);
    }
    let hodge = hodge_row(degrees, n)?;
    let sig = signature_from_row(&hodge, d);
    let parity = parity_class(degrees, n);
    let mut notes = Vec::new();

    let (branch, decomposition) = if options.exceptional_cases && degrees.is(&[3]) && n == 2 {
        let sign = definite_twist(&sig, 6)?;
        let dec = Decomposition::new(vec![Term::one(Component::E6, sign)]);
        (Branch::Exceptional, dec)
    } else if options.exceptional_cases && degrees.is(&[2, 2]) {
        let rank = n as usize + 3;
        let sign = definite_twist(&sig, rank as u64)?;
        let dec = Decomposition::new(vec![Term::one(Component::D(rank), sign)]);
        (Branch::Exceptional, dec)
    } else {
        // The even-dimensional quadric is rank one and needs no guards.
        if !degrees.is(&[2]) {
            for (name, value) in [("b+", &sig.b_plus), ("b-", &sig.b_minus)] {
                if value < &BigInt::from(2) {
                    return Err(DecomposeError::OutsideTheorem(format!(
                        "{name} = {value} < 2"
                    )));
                }
            }
        }
        if parity.lattice_is_even {
            (Branch::Even, rank_one_form(&sig)?)
        } else if sig.b_plus >= BigInt::from(d) {
            let residue = (&sig.s - d).mod_floor(&BigInt::from(8));
            if !residue.is_zero() {
                return Err(DecomposeError::Inconsistent(format!(
                    "odd lattice with d = {d} not congruent to s = {} mod 8",
                    sig.s
                )));
            }
            (Branch::Odd, root_form(&sig)?)
        } else if d % 8 == 0 {
            notes.push(format!(
                "b+ = {} < d = {d}, so the A-form does not apply; 8 | d gives the <-d> form",
                sig.b_plus
            ));
            (Branch::EightDivides, rank_one_form(&sig)?)
        } else {
            return Err(DecomposeError::OutsideTheorem(format!(
                "odd lattice with b+ = {} < d = {d} and 8 does not divide d",
                sig.b_plus
            )));
        }
    };

    let rank = decomposition.rank();
    let expected = sig.betti() - 1;
    if rank != expected {
        return Err(DecomposeError::Inconsistent(format!(
            "decomposition rank {rank} differs from b_n - 1 = {expected}"
        )));
    }
    if branch != Branch::Exceptional && degrees.is(&[2, 2, 2, 2]) && n == 2 {
        let u = decomposition.multiplicity(&Component::U, Sign::Plus);
        notes.push(format!(
            "U multiplicity is t - 1 = {u}; {} copies would give rank {}, not b_2 - 1 = {rank}",
            &u + 1,
            &rank + 2
        ));
    }

    Ok(DecompositionReport {
        degrees: degrees.clone(),
        dim: n,
        hodge,
        signature: sig,
        parity,
        branch,
        decomposition,
        notes,
        verification: Vec::new(),
    })
}

/// Whether the degree-`d` hypersurface of dimension `n` takes the `A_{d-1}`
/// branch. The cubic surface is special-cased by [`decompose`], so for it the
/// answer comes from the parity class alone.
pub fn hypersurface_criterion(d: u64, n: u32) -> Result<bool, DecomposeError> {
    let degrees = MultiDegree::new(&[d])?;
    let report = decompose(&degrees, n)?;
    Ok(match report.branch {
        Branch::Odd => true,
        Branch::Exceptional => !report.parity.lattice_is_even,
        _ => false,
    })
}

/// Primitive signature `(b+ - 1, b-)`.
pub fn primitive_signature(sig: &SignatureData) -> Signature {
    Signature::new(&sig.b_plus - 1u32, sig.b_minus.clone(), 0)
}
