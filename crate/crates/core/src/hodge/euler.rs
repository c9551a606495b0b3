use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{binomial, check_dimension, HodgeError, MultiDegree};

/// Truncated product of univariate polynomials.
fn mul_trunc(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Topological Euler number and middle Betti number of `V_n(d)`, from the
/// total Chern class: `e = d * [t^n] (1+t)^{n+c+1} / prod (1 + d_i t)`.
///
/// Every even Betti number off the middle is 1 and odd ones vanish, so
/// `b_n = e - n`.
pub fn euler_oracle(degrees: &MultiDegree, n: u32) -> Result<(BigInt, BigInt), HodgeError> {
    check_dimension(n)?;
    let len = n as usize + 1;
    let ambient = (n as u64) + degrees.codim() as u64 + 1;
    let mut poly: Vec<BigInt> = (0..len).map(|k| binomial(ambient, k as i64)).collect();
    for &d in degrees.degrees() {
        // 1 / (1 + d t) = sum (-d)^k t^k
        let mut inv = Vec::with_capacity(len);
        let mut term = BigInt::one();
        let step = -BigInt::from(d);
        for _ in 0..len {
            inv.push(term.clone());
            term *= &step;
        }
        poly = mul_trunc(&poly, &inv, len);
    }
    let euler = &poly[n as usize] * degrees.total_degree();
    let betti = &euler - n;
    Ok((euler, betti))
}
