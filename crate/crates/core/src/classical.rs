//! Constructors for the classical level-one objects: Bernoulli numbers,
//! Eisenstein series, the discriminant, the `j`-function and the weight-2
//! forms `P(j) E14 / Delta`.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::sigma;
use crate::error::{Error, Result};
use crate::qseries::{at_precision, QSeries};

/// Memoized Bernoulli numbers `B_0, B_1, ...` with `B_1 = -1/2`.
#[derive(Debug, Clone)]
pub struct BernoulliCache {
    values: Vec<BigRational>,
}

impl Default for BernoulliCache {
    fn default() -> Self {
        BernoulliCache {
            values: vec![BigRational::one()],
        }
    }
}

impl BernoulliCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Extends the table with `sum_{i=0}^{n} C(n+1, i) B_i = 0`.
    pub fn get(&mut self, k: usize) -> BigRational {
        while self.values.len() <= k {
            let n = self.values.len();
            let mut acc = BigRational::zero();
            for (i, b) in self.values.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let c = binomial(BigInt::from(n + 1), BigInt::from(i));
                acc += b * BigRational::from_integer(c);
            }
            self.values
                .push(-acc / BigRational::from_integer(BigInt::from(n + 1)));
        }
        self.values[k].clone()
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }
}

fn cache() -> &'static Mutex<BernoulliCache> {
    static CACHE: OnceLock<Mutex<BernoulliCache>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(BernoulliCache::new()))
}

pub fn bernoulli(k: u32) -> BigRational {
    cache()
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .get(k as usize)
}

/// The factor `-2k / B_k` multiplying `sum sigma_{k-1}(n) q^n` in `E_k`.
pub fn eisenstein_factor(k: u32) -> BigRational {
    let two_k = BigRational::from_integer(BigInt::from(2 * k));
    -(two_k / bernoulli(k))
}

fn check_eisenstein_weight(k: i64) -> Result<u32> {
    if k == 0 || (k >= 4 && k % 2 == 0) {
        Ok(k as u32)
    } else {
        Err(Error::InvalidWeight(k))
    }
}

/// The normalized Eisenstein series `E_k` to `O(q^prec)`; `E_0 = 1`.
pub fn eisenstein(k: i64, prec: i64) -> Result<QSeries> {
    let k = check_eisenstein_weight(k)?;
    if k == 0 {
        return Ok(QSeries::one(prec).with_weight(Some(0)));
    }
    let factor = eisenstein_factor(k);
    let mut coeffs = vec![BigRational::one()];
    for n in 1..prec.max(0) as u64 {
        coeffs.push(&factor * BigRational::from_integer(sigma(n, k - 1)));
    }
    Ok(QSeries::new(0, coeffs, prec).with_weight(Some(k as i64)))
}

/// `Delta = q prod_{n >= 1} (1 - q^n)^24` expanded to `O(q^prec)`.
pub fn delta(prec: i64) -> QSeries {
    if prec <= 1 {
        return QSeries::zero(prec).with_weight(Some(12));
    }
    let len = (prec - 1) as usize;
    let mut euler = vec![0i64; len];
    euler[0] = 1;
    for n in 1..len {
        for i in (n..len).rev() {
            euler[i] -= euler[i - n];
        }
    }
    let euler = QSeries::from_integers(0, euler, len as i64);
    let eta24 = euler.pow(24).expect("positive power");
    let q = QSeries::from_integers(1, [1], prec);
    (&q * &eta24).with_weight(Some(12))
}

/// `j = E4^3 / Delta = q^-1 + 744 + 196884 q + ...` to `O(q^prec)`.
pub fn j_invariant(prec: i64) -> QSeries {
    at_precision(prec, |w| {
        let e4 = eisenstein(4, w)?;
        Ok(e4.pow(3)?.multiply(&delta(w).pow(-1)?))
    })
    .expect("j is always constructible")
}

/// The element of `{0, 4, 6, 8, 10, 14}` congruent to `k` modulo 12.
pub fn delta_residue(k: i64) -> Result<i64> {
    if k % 2 != 0 {
        return Err(Error::OddWeight(k));
    }
    Ok(match k.rem_euclid(12) {
        2 => 14,
        r => r,
    })
}

/// `E14` assembled as `E4^2 E6`.
pub fn e14_product(prec: i64) -> QSeries {
    let e4 = eisenstein(4, prec).expect("valid weight");
    let e6 = eisenstein(6, prec).expect("valid weight");
    &e4.pow(2).expect("positive power") * &e6
}

/// `P(j) E14 / Delta` for `P(x) = poly[0] + poly[1] x + ...`: a weakly
/// holomorphic form of weight 2.
pub fn weight2_form(poly: &[BigRational], prec: i64) -> Result<QSeries> {
    if poly.is_empty() {
        return Err(Error::Precondition("polynomial has no coefficients".into()));
    }
    at_precision(prec, |w| {
        let j = j_invariant(w);
        let mut acc = QSeries::monomial(0, poly[poly.len() - 1].clone(), w);
        for c in poly.iter().rev().skip(1) {
            acc = &acc.multiply(&j) + &QSeries::monomial(0, c.clone(), w);
        }
        let tail = e14_product(w).multiply(&delta(w).pow(-1)?);
        Ok(acc.multiply(&tail).with_weight(Some(2)))
    })
}
