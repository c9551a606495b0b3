//! Named indecomposable lattices and formal orthogonal sums of them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{DiscriminantGroup, GramLattice, IntMatrix, LatticeError, LatticeInvariants, Signature};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Sign {
    #[default]
    Plus,
    Minus,
}

impl Sign {
    pub fn of(x: &BigInt) -> Sign {
        if x.is_negative() {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_i8(v: i8) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

/// Indecomposable building blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    /// `<m>`: rank one, generator of square `m`.
    Rank1(BigInt),
    /// Hyperbolic plane.
    U,
    A(usize),
    D(usize),
    E6,
    E8,
}

/// Gram matrix from Dynkin diagram edges: 2 on the diagonal, -1 on edges.
fn dynkin_gram(nodes: usize, edges: &[(usize, usize)]) -> IntMatrix {
    let mut g = IntMatrix::zeros(nodes, nodes);
    for i in 0..nodes {
        g[(i, i)] = BigInt::from(2);
    }
    for &(i, j) in edges {
        g[(i, j)] = BigInt::from(-1);
        g[(j, i)] = BigInt::from(-1);
    }
    g
}

fn chain(len: usize) -> Vec<(usize, usize)> {
    (1..len).map(|i| (i - 1, i)).collect()
}

impl Component {
    pub fn rank(&self) -> u64 {
        match self {
            Component::Rank1(_) => 1,
            Component::U => 2,
            Component::A(k) | Component::D(k) => *k as u64,
            Component::E6 => 6,
            Component::E8 => 8,
        }
    }

    pub fn validate(&self) -> Result<(), LatticeError> {
        match self {
            Component::Rank1(m) if m.is_zero() => {
                Err(LatticeError::InvalidComponent("<0> is degenerate".into()))
            }
            Component::A(0) => Err(LatticeError::InvalidComponent("A_k needs k >= 1".into())),
            Component::D(k) if *k < 3 => {
                Err(LatticeError::InvalidComponent("D_k needs k >= 3".into()))
            }
            _ => Ok(()),
        }
    }

    /// Standard Gram matrix: `U = [[0,1],[1,0]]`, `<m> = [[m]]`, and the
    /// positive-definite Dynkin form for the root lattices.
    pub fn gram(&self) -> Result<GramLattice, LatticeError> {
        self.validate()?;
        let g = match self {
            Component::Rank1(m) => IntMatrix::diagonal(std::slice::from_ref(m)),
            Component::U => IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]])?,
            Component::A(k) => dynkin_gram(*k, &chain(*k)),
            Component::D(k) => {
                // chain 0 - 1 - ... - (k-2), node k-1 attached to k-3
                let mut edges = chain(k - 1);
                edges.push((k - 3, k - 1));
                dynkin_gram(*k, &edges)
            }
            Component::E6 => {
                let mut edges = chain(5);
                edges.push((2, 5));
                dynkin_gram(6, &edges)
            }
            Component::E8 => {
                let mut edges = chain(7);
                edges.push((4, 7));
                dynkin_gram(8, &edges)
            }
        };
        GramLattice::new(g)
    }

    /// Invariants of the twisted block, from closed forms rather than the
    /// Gram matrix.
    pub fn invariants(&self, sign: Sign) -> Result<LatticeInvariants, LatticeError> {
        self.validate()?;
        let rank = self.rank();
        let (positive, negative, det, even, orders): (u64, u64, BigInt, bool, Vec<BigInt>) = match self {
            Component::Rank1(m) => {
                let pos = u64::from(m.is_positive());
                (pos, 1 - pos, m.clone(), m.is_even(), vec![m.abs()])
            }
            Component::U => (1, 1, BigInt::from(-1), true, vec![]),
            Component::A(k) => (rank, 0, BigInt::from(*k) + 1, true, vec![BigInt::from(*k) + 1]),
            Component::D(k) if k % 2 == 1 => (rank, 0, BigInt::from(4), true, vec![BigInt::from(4)]),
            Component::D(_) => (rank, 0, BigInt::from(4), true, vec![BigInt::from(2), BigInt::from(2)]),
            Component::E6 => (6, 0, BigInt::from(3), true, vec![BigInt::from(3)]),
            Component::E8 => (8, 0, BigInt::one(), true, vec![]),
        };
        let (positive, negative, determinant) = match sign {
            Sign::Plus => (positive, negative, det),
            Sign::Minus if rank % 2 == 1 => (negative, positive, -det),
            Sign::Minus => (negative, positive, det),
        };
        Ok(LatticeInvariants {
            rank: rank.into(),
            signature: Signature::new(positive, negative, 0),
            determinant,
            even,
            discriminant: Some(DiscriminantGroup::from_orders(orders)),
        })
    }

    /// Gram matrix with the form multiplied by `sign`.
    pub fn standard_gram(&self, sign: Sign) -> Result<GramLattice, LatticeError> {
        let g = self.gram()?;
        Ok(match sign {
            Sign::Plus => g,
            Sign::Minus => g.twisted(),
        })
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Rank1(m) => write!(f, "<{m}>"),
            Component::U => f.write_str("U"),
            Component::A(k) => write!(f, "A{k}"),
            Component::D(k) => write!(f, "D{k}"),
            Component::E6 => f.write_str("E6"),
            Component::E8 => f.write_str("E8"),
        }
    }
}

impl FromStr for Component {
    type Err = LatticeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LatticeError::Parse(format!("unknown component `{s}`"));
        let c = if let Some(inner) = s.strip_prefix('<').and_then(|r| r.strip_suffix('>')) {
            Component::Rank1(inner.parse().map_err(|_| bad())?)
        } else {
            match s {
                "U" => Component::U,
                "E6" => Component::E6,
                "E8" => Component::E8,
                _ => {
                    let (head, rest) = s.split_at(s.len().min(1));
                    let k: usize = rest.parse().map_err(|_| bad())?;
                    match head {
                        "A" => Component::A(k),
                        "D" => Component::D(k),
                        _ => return Err(bad()),
                    }
                }
            }
        };
        c.validate()?;
        Ok(c)
    }
}

/// `multiplicity` orthogonal copies of `component`, twisted by `sign`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub component: Component,
    pub sign: Sign,
    pub multiplicity: BigInt,
}

impl Term {
    pub fn new(component: Component, sign: Sign, multiplicity: impl Into<BigInt>) -> Self {
        Self {
            component,
            sign,
            multiplicity: multiplicity.into(),
        }
    }

    pub fn one(component: Component, sign: Sign) -> Self {
        Self::new(component, sign, 1)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.multiplicity.is_one() {
            write!(f, "{}*", self.multiplicity)?;
        }
        write!(f, "{}", self.component)?;
        if self.sign == Sign::Minus {
            f.write_str("(-1)")?;
        }
        Ok(())
    }
}

impl FromStr for Term {
    type Err = LatticeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (multiplicity, rest) = match s.split_once('*') {
            Some((k, rest)) => (
                k.trim()
                    .parse::<BigInt>()
                    .ok()
                    .filter(|k| !k.is_negative())
                    .ok_or_else(|| LatticeError::Parse(format!("bad multiplicity in `{s}`")))?,
                rest.trim(),
            ),
            None => (BigInt::one(), s),
        };
        let (name, sign) = if let Some(name) = rest.strip_suffix("(-1)") {
            (name, Sign::Minus)
        } else if let Some(name) = rest.strip_suffix("(+1)") {
            (name, Sign::Plus)
        } else {
            (rest, Sign::Plus)
        };
        Ok(Term::new(name.parse()?, sign, multiplicity))
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    tag: String,
    sign: i8,
    #[serde(with = "crate::serde_big")]
    multiplicity: BigInt,
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TermRepr {
            tag: self.component.to_string(),
            sign: self.sign.as_i8(),
            multiplicity: self.multiplicity.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Term {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = TermRepr::deserialize(d)?;
        let component = repr.tag.parse().map_err(D::Error::custom)?;
        let sign = Sign::from_i8(repr.sign)
            .ok_or_else(|| D::Error::custom(format!("sign must be +1 or -1, got {}", repr.sign)))?;
        if repr.multiplicity.is_negative() {
            return Err(D::Error::custom("multiplicity must be non-negative"));
        }
        Ok(Term::new(component, sign, repr.multiplicity))
    }
}

/// Formal orthogonal sum of twisted indecomposables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Decomposition {
    terms: Vec<Term>,
}

impl Decomposition {
    pub fn new(terms: Vec<Term>) -> Self {
        Self { terms }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn terms_mut(&mut self) -> &mut Vec<Term> {
        &mut self.terms
    }

    /// Total multiplicity of `component` with the given twist.
    pub fn multiplicity(&self, component: &Component, sign: Sign) -> BigInt {
        self.terms
            .iter()
            .filter(|t| &t.component == component && t.sign == sign)
            .map(|t| &t.multiplicity)
            .sum()
    }

    pub fn rank(&self) -> BigInt {
        self.terms
            .iter()
            .map(|t| t.component.rank() * &t.multiplicity)
            .sum()
    }

    /// Invariants of the orthogonal sum, assembled from the invariants of each
    /// distinct block (computed on its Gram matrix) without materializing the
    /// whole sum.
    pub fn invariants(&self) -> Result<LatticeInvariants, LatticeError> {
        let mut total = LatticeInvariants::empty();
        for term in &self.terms {
            if term.multiplicity.is_zero() {
                continue;
            }
            let block = term.component.invariants(term.sign)?;
            total = total.direct_sum(&block.repeat(&term.multiplicity)?);
        }
        Ok(total)
    }

    /// Block-diagonal Gram matrix of the whole sum; refused above `max_rank`.
    pub fn realize(&self, max_rank: u64) -> Result<GramLattice, LatticeError> {
        let rank = self.rank();
        if rank > BigInt::from(max_rank) {
            return Err(LatticeError::TooLarge {
                rank,
                limit: max_rank.into(),
            });
        }
        let mut blocks = Vec::new();
        for term in &self.terms {
            let g = term.component.standard_gram(term.sign)?;
            let copies = term.multiplicity.to_u64().expect("bounded by max_rank");
            for _ in 0..copies {
                blocks.push(g.clone());
            }
        }
        Ok(GramLattice::direct_sum(&blocks))
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .filter(|t| t.multiplicity.is_positive())
            .map(ToString::to_string)
            .collect();
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&parts.join(" + "))
    }
}

impl FromStr for Decomposition {
    type Err = LatticeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim() == "0" {
            return Ok(Self::default());
        }
        s.split(" + ")
            .map(str::parse)
            .collect::<Result<Vec<Term>, _>>()
            .map(Self::new)
    }
}
