//! Sylvester resultants over `Q[x, y]`.
//!
//! A polynomial in an auxiliary variable `z` is given by its coefficient
//! list in ascending powers of `z`, each coefficient a [`Poly2`].

use super::Poly2;
use crate::error::{Error, Result};

fn trim(p: &[Poly2]) -> &[Poly2] {
    let mut n = p.len();
    while n > 0 && p[n - 1].is_zero() {
        n -= 1;
    }
    &p[..n]
}

/// `Res_z(f, g)`, the determinant of the Sylvester matrix.
pub fn resultant_z(f: &[Poly2], g: &[Poly2]) -> Result<Poly2> {
    let f = trim(f);
    let g = trim(g);
    if f.is_empty() || g.is_empty() {
        return Err(Error::domain("resultant of a zero polynomial"));
    }
    let m = f.len() - 1;
    let n = g.len() - 1;
    if m == 0 && n == 0 {
        return Err(Error::domain("nothing to eliminate"));
    }
    Ok(bareiss_det(sylvester(f, g)))
}

/// Rows: `n` shifted copies of `f`, then `m` shifted copies of `g`, with
/// coefficients in descending powers of `z`.
pub fn sylvester(f: &[Poly2], g: &[Poly2]) -> Vec<Vec<Poly2>> {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (src, copies) in [(f, n), (g, m)] {
        let deg = src.len() - 1;
        for shift in 0..copies {
            let mut row = vec![Poly2::zero(); size];
            for k in 0..=deg {
                row[shift + k] = src[deg - k].clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// Fraction-free Gaussian elimination; every division is exact.
pub fn bareiss_det(mut a: Vec<Vec<Poly2>>) -> Poly2 {
    let n = a.len();
    if n == 0 {
        return Poly2::one();
    }
    let mut negate = false;
    let mut prev = Poly2::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Poly2::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss step divides exactly");
            }
            a[i][k] = Poly2::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}
