//! Characteristic polynomials of small integer matrices.
//!
//! Polynomials are coefficient vectors in ascending degree.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{bigint_mod, inv_mod, mul_mod};

pub type IntMatrix = Vec<Vec<BigInt>>;

fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

pub fn commute(a: &IntMatrix, b: &IntMatrix) -> bool {
    mat_mul(a, b) == mat_mul(b, a)
}

pub fn trace(a: &IntMatrix) -> BigInt {
    (0..a.len()).map(|i| a[i][i].clone()).sum()
}

/// Faddeev-LeVerrier over the integers. Every division is exact for an
/// integer matrix, so the result is the exact monic characteristic
/// polynomial `det(x I - A)`.
pub fn charpoly(a: &IntMatrix) -> Vec<BigInt> {
    let n = a.len();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m: IntMatrix = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = mat_mul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        m = next;
        let am = mat_mul(a, &m);
        let t = trace(&am);
        let kk = BigInt::from(k);
        debug_assert!((&t % &kk).is_zero());
        coeffs[n - k] = -(t / kk);
    }
    coeffs
}

pub fn reduce_poly(poly: &[BigInt], p: u64) -> Vec<u64> {
    poly.iter().map(|c| bigint_mod(c, p)).collect()
}

/// Characteristic polynomial over `Z/pZ`, computed independently of
/// [`charpoly`] by reduction to upper Hessenberg form.
pub fn charpoly_mod_p(a: &IntMatrix, p: u64) -> Vec<u64> {
    let n = a.len();
    let mut h: Vec<Vec<u64>> = a
        .iter()
        .map(|row| row.iter().map(|x| bigint_mod(x, p)).collect())
        .collect();
    let sub = |x: u64, y: u64| (x + p - y) % p;
    for col in 0..n.saturating_sub(2) {
        let Some(piv) = (col + 1..n).find(|&r| h[r][col] != 0) else {
            continue;
        };
        if piv != col + 1 {
            h.swap(piv, col + 1);
            for row in h.iter_mut() {
                row.swap(piv, col + 1);
            }
        }
        let inv = inv_mod(h[col + 1][col], p);
        for r in col + 2..n {
            let f = mul_mod(h[r][col], inv, p);
            if f == 0 {
                continue;
            }
            let pivot = h[col + 1].clone();
            for (x, &y) in h[r].iter_mut().zip(&pivot) {
                *x = sub(*x, mul_mod(f, y, p));
            }
            for row in h.iter_mut() {
                let v = mul_mod(f, row[r], p);
                row[col + 1] = (row[col + 1] + v) % p;
            }
        }
    }
    // Leading principal minors of x I - H.
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 0..n {
        // x * P_m - h[m][m] * P_m
        let prev = &polys[m];
        let mut next = vec![0u64; m + 2];
        for (i, &c) in prev.iter().enumerate() {
            next[i + 1] = (next[i + 1] + c) % p;
            next[i] = sub(next[i], mul_mod(h[m][m], c, p));
        }
        let mut prod = 1u64;
        for i in (0..m).rev() {
            prod = mul_mod(prod, h[i + 1][i], p);
            let coef = mul_mod(prod, h[i][m], p);
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = sub(next[d], mul_mod(coef, c, p));
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

pub fn format_poly<T: ToString + PartialEq + Zero + One>(poly: &[T]) -> String {
    let mut terms = Vec::new();
    for (d, c) in poly.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let cs = c.to_string();
        let mono = match d {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{d}"),
        };
        terms.push(if mono.is_empty() {
            cs
        } else if c.is_one() {
            mono
        } else {
            format!("{cs}*{mono}")
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn two_by_two() {
        // x^2 - 5x - 2
        assert_eq!(charpoly(&m(&[&[1, 2], &[3, 4]])), ints(&[-2, -5, 1]));
    }

    #[test]
    fn three_by_three() {
        // det(xI - A) for A = [[2,0,1],[1,3,0],[0,1,4]]:
        // x^3 - 9x^2 + 26x - 25
        let a = m(&[&[2, 0, 1], &[1, 3, 0], &[0, 1, 4]]);
        assert_eq!(charpoly(&a), ints(&[-25, 26, -9, 1]));
        assert_eq!(charpoly_mod_p(&a, 7), reduce_poly(&charpoly(&a), 7));
    }

    #[test]
    fn empty_matrix() {
        assert_eq!(charpoly(&Vec::new()), ints(&[1]));
        assert_eq!(charpoly_mod_p(&Vec::new(), 5), vec![1]);
    }

    #[test]
    fn hessenberg_needs_pivot_swap() {
        let a = m(&[&[1, 2, 3, 4], &[0, 1, 5, 6], &[7, 0, 1, 2], &[3, 4, 0, 1]]);
        for p in [2, 3, 5, 7, 11] {
            assert_eq!(charpoly_mod_p(&a, p), reduce_poly(&charpoly(&a), p));
        }
    }

    #[test]
    fn poly_formatting() {
        assert_eq!(format_poly(&[0u64, 0, 1]), "x^2");
        assert_eq!(format_poly(&ints(&[-2, -5, 1])), "x^2 + -5*x + -2");
    }
}
