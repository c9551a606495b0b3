//! Integer reductions: Smith diagonal and kernels of linear forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Diagonal of the Smith normal form of `m` (non-negative, in divisibility
/// order, zeros last), of length `min(rows, cols)`.
pub fn smith_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.to_rows();
    let size = rows.min(cols);
    let mut diag = Vec::with_capacity(size);
    for t in 0..size {
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()));
            let Some((pi, pj)) = pivot else {
                diag.resize(size, BigInt::zero());
                return diag;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }

            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let sub = &q * &a[t][j];
                    a[i][j] -= sub;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let sub = &q * &row[t];
                    row[j] -= sub;
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let p = a[t][t].clone();
            let offender = (t + 1..rows).find(|&i| {
                a[i][t + 1..cols]
                    .iter()
                    .any(|x| !x.is_multiple_of(&p))
            });
            match offender {
                Some(i) => {
                    for j in t..cols {
                        let add = a[i][j].clone();
                        a[t][j] += add;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}

/// For a nonzero integer row vector `w` of length `r`, returns `(g, B)` where
/// `g = gcd(w)` and the `r - 1` columns of `B` are a basis of the integer
/// kernel `{x : w . x = 0}`.
///
/// Built by column operations that carry `w` to `(g, 0, ..., 0)`; the
/// accumulated transform is unimodular, so its trailing columns span the kernel.
pub fn kernel_of_form(w: &[BigInt]) -> Option<(BigInt, IntMatrix)> {
    let r = w.len();
    if w.iter().all(Zero::is_zero) {
        return None;
    }
    let mut w = w.to_vec();
    let mut u = IntMatrix::identity(r);
    for j in 1..r {
        if w[j].is_zero() {
            continue;
        }
        let (a, b) = (w[0].clone(), w[j].clone());
        let eg = a.extended_gcd(&b);
        let (g, x, y) = (eg.gcd, eg.x, eg.y);
        let (p, q) = (&b / &g, &a / &g);
        // [col0, colj] <- [x*col0 + y*colj, -p*col0 + q*colj]; det = (x*a + y*b)/g = 1
        for i in 0..r {
            let c0 = u[(i, 0)].clone();
            let cj = u[(i, j)].clone();
            u[(i, 0)] = &x * &c0 + &y * &cj;
            u[(i, j)] = &q * &cj - &p * &c0;
        }
        w[0] = g;
        w[j] = BigInt::zero();
    }
    let g = w[0].clone();
    let mut basis = IntMatrix::zeros(r, r - 1);
    for i in 0..r {
        for j in 1..r {
            basis[(i, j - 1)] = u[(i, j)].clone();
        }
    }
    if g.is_negative() {
        Some((-g, basis))
    } else {
        Some((g, basis))
    }
}
