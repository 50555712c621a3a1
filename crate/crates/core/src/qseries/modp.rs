use std::fmt;

use crate::arith::{inv_mod, mul_mod};
use crate::error::{Error, Result};

use super::exact::binary_pow;

/// A truncated Laurent series with coefficients in `Z/pZ`.
///
/// Same normal form as [`QSeries`](super::QSeries); every stored residue lies
/// in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPSeries {
    p: u64,
    valuation: i64,
    coeffs: Vec<u64>,
    prec: i64,
    weight: Option<i64>,
}

impl ModPSeries {
    pub fn new(p: u64, valuation: i64, coeffs: Vec<u64>, prec: i64) -> Self {
        assert!(p >= 2, "modulus must be at least 2");
        let mut s = ModPSeries {
            p,
            valuation,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
            prec,
            weight: None,
        };
        s.normalize();
        s
    }

    pub fn zero(p: u64, prec: i64) -> Self {
        ModPSeries::new(p, prec, Vec::new(), prec)
    }

    pub fn one(p: u64, prec: i64) -> Self {
        ModPSeries::new(p, 0, vec![1], prec)
    }

    fn normalize(&mut self) {
        let len = (self.prec - self.valuation).max(0) as usize;
        self.coeffs.truncate(len);
        match self.coeffs.iter().position(|&c| c != 0) {
            None => {
                self.coeffs.clear();
                self.valuation = self.prec;
            }
            Some(i) => {
                self.coeffs.drain(..i);
                self.valuation += i as i64;
                let len = (self.prec - self.valuation) as usize;
                self.coeffs.resize(len, 0);
            }
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn weight(&self) -> Option<i64> {
        self.weight
    }

    pub fn with_weight(mut self, weight: Option<i64>) -> Self {
        self.weight = weight;
        self
    }

    pub fn coefficient(&self, n: i64) -> Result<u64> {
        if n >= self.prec {
            return Err(Error::BeyondPrecision { n, prec: self.prec });
        }
        if n < self.valuation {
            return Ok(0);
        }
        Ok(self.coeffs[(n - self.valuation) as usize])
    }

    pub fn truncate(&self, prec: i64) -> Self {
        if prec >= self.prec {
            return self.clone();
        }
        let mut s = self.clone();
        s.prec = prec;
        s.normalize();
        s
    }

    fn check_modulus(&self, other: &ModPSeries) {
        assert_eq!(self.p, other.p, "series over different residue rings");
    }

    pub fn add(&self, other: &ModPSeries) -> ModPSeries {
        self.combine(other, |x, y, _| x + y)
    }

    pub fn sub(&self, other: &ModPSeries) -> ModPSeries {
        self.combine(other, |x, y, p| x + (p - y))
    }

    fn combine(&self, other: &ModPSeries, op: impl Fn(u64, u64, u64) -> u64) -> ModPSeries {
        self.check_modulus(other);
        let p = self.p;
        let prec = self.prec.min(other.prec);
        let val = self.valuation.min(other.valuation).min(prec);
        let len = (prec - val) as usize;
        let at = |s: &ModPSeries, n: i64| -> u64 {
            if n < s.valuation || n >= s.prec {
                0
            } else {
                s.coeffs[(n - s.valuation) as usize]
            }
        };
        let coeffs = (0..len as i64)
            .map(|i| op(at(self, val + i), at(other, val + i), p) % p)
            .collect();
        let weight = if self.weight == other.weight {
            self.weight
        } else {
            None
        };
        ModPSeries::new(p, val, coeffs, prec).with_weight(weight)
    }

    pub fn multiply(&self, other: &ModPSeries) -> ModPSeries {
        self.check_modulus(other);
        let p = self.p;
        let prec = (self.prec + other.valuation).min(other.prec + self.valuation);
        let weight = match (self.weight, other.weight) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        let val = self.valuation + other.valuation;
        if self.is_zero() || other.is_zero() || prec <= val {
            return ModPSeries::zero(p, prec).with_weight(weight);
        }
        let len = (prec - val) as usize;
        let (a, b) = (&self.coeffs, &other.coeffs);
        let mut coeffs = vec![0u64; len];
        for (i, &x) in a.iter().enumerate().take(len) {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate().take(len - i) {
                if y != 0 {
                    let slot = &mut coeffs[i + j];
                    *slot = (*slot + mul_mod(x, y, p)) % p;
                }
            }
        }
        ModPSeries::new(p, val, coeffs, prec).with_weight(weight)
    }

    pub fn inverse(&self) -> Result<ModPSeries> {
        if self.is_zero() {
            return Err(Error::NegativePowerOfZero);
        }
        let p = self.p;
        let c = &self.coeffs;
        let lead_inv = inv_mod(c[0], p);
        let mut out = vec![lead_inv];
        for n in 1..c.len() {
            let mut acc = 0u64;
            for i in 1..=n {
                acc = (acc + mul_mod(c[i], out[n - i], p)) % p;
            }
            out.push(mul_mod((p - acc) % p, lead_inv, p));
        }
        let val = -self.valuation;
        let len = out.len() as i64;
        Ok(ModPSeries::new(p, val, out, val + len).with_weight(self.weight.map(|w| -w)))
    }

    /// `self^e` by literal square-and-multiply; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<ModPSeries> {
        let weight = self.weight.map(|w| w * e);
        if e == 0 {
            let rel = if self.is_zero() {
                self.prec.max(1)
            } else {
                self.prec - self.valuation
            };
            return Ok(ModPSeries::one(self.p, rel).with_weight(weight));
        }
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        Ok(binary_pow(&base, e.unsigned_abs(), |x, y| x.multiply(y)))
    }

    /// The substitution `q -> q^p`, which equals `self^p` over `Z/pZ`.
    ///
    /// If `self = A + O(q^N)` then `self^p = A(q^p) + O(q^(pN))`, so both the
    /// valuation and the precision bound scale by `p`.
    pub fn frobenius(&self) -> ModPSeries {
        let p = self.p;
        let pi = p as i64;
        let prec = self.prec * pi;
        if self.is_zero() {
            return ModPSeries::zero(p, prec).with_weight(self.weight.map(|w| w * pi));
        }
        let val = self.valuation * pi;
        let mut coeffs = vec![0u64; (prec - val) as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * p as usize] = c;
        }
        ModPSeries::new(p, val, coeffs, prec).with_weight(self.weight.map(|w| w * pi))
    }

    /// `self^e` using Frobenius for every factor of `p` in the base-`p`
    /// expansion of `e`; only the base-`p` digits are raised by convolution.
    pub fn frobenius_power(&self, e: u64) -> ModPSeries {
        if e == 0 {
            return self.pow(0).expect("zeroth power never fails");
        }
        let p = self.p;
        let mut digits = Vec::new();
        let mut rest = e;
        while rest > 0 {
            digits.push(rest % p);
            rest /= p;
        }
        let mut acc: Option<ModPSeries> = None;
        for &d in digits.iter().rev() {
            acc = acc.map(|a| a.frobenius());
            if d > 0 {
                let term = self.pow(d as i64).expect("positive power never fails");
                acc = Some(match acc {
                    None => term,
                    Some(a) => a.multiply(&term),
                });
            }
        }
        acc.expect("e > 0 has a nonzero leading digit")
    }
}

impl fmt::Display for ModPSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                write!(f, "{c}*q^{} + ", self.valuation + i as i64)?;
            }
        }
        write!(f, "O(q^{}) (mod {})", self.prec, self.p)
    }
}
