use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ModPSeries;
use crate::arith::{bigint_mod, inv_mod, is_prime, mul_mod};
use crate::error::{Error, Result};

/// A truncated Laurent series `sum a_n q^n + O(q^prec)` with exact rational
/// coefficients.
///
/// Nonzero series are kept in normal form: `coeffs[0]` is the coefficient of
/// `q^valuation` and is nonzero, and `coeffs` covers every exponent up to
/// `prec - 1`. The zero series stores no coefficients and reports
/// `valuation == prec`, so `O(q^N)` still carries its precision.
///
/// An optional declared weight travels with the series through products and
/// powers. It is bookkeeping only and never inspected by the arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    valuation: i64,
    coeffs: Vec<BigRational>,
    prec: i64,
    weight: Option<i64>,
}

impl QSeries {
    /// Builds `sum coeffs[i] q^(valuation + i) + O(q^prec)`. Missing trailing
    /// coefficients are zero; coefficients at or beyond `prec` are dropped.
    pub fn new(valuation: i64, coeffs: Vec<BigRational>, prec: i64) -> Self {
        let mut s = QSeries {
            valuation,
            coeffs,
            prec,
            weight: None,
        };
        s.normalize();
        s
    }

    pub fn from_integers<I, T>(valuation: i64, coeffs: I, prec: i64) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        QSeries::new(
            valuation,
            coeffs
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
            prec,
        )
    }

    pub fn zero(prec: i64) -> Self {
        QSeries {
            valuation: prec,
            coeffs: Vec::new(),
            prec,
            weight: None,
        }
    }

    pub fn one(prec: i64) -> Self {
        QSeries::new(0, vec![BigRational::one()], prec)
    }

    /// `c q^n + O(q^prec)`.
    pub fn monomial(n: i64, c: BigRational, prec: i64) -> Self {
        QSeries::new(n, vec![c], prec)
    }

    fn normalize(&mut self) {
        let len = (self.prec - self.valuation).max(0) as usize;
        self.coeffs.truncate(len);
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.valuation = self.prec;
            }
            Some(i) => {
                self.coeffs.drain(..i);
                self.valuation += i as i64;
                let len = (self.prec - self.valuation) as usize;
                self.coeffs.resize(len, BigRational::zero());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient; equals `prec` for zero.
    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// Coefficients for exponents `valuation..prec`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn weight(&self) -> Option<i64> {
        self.weight
    }

    pub fn with_weight(mut self, weight: Option<i64>) -> Self {
        self.weight = weight;
        self
    }

    pub fn coefficient(&self, n: i64) -> Result<BigRational> {
        if n >= self.prec {
            return Err(Error::BeyondPrecision { n, prec: self.prec });
        }
        Ok(self.coeff_unchecked(n))
    }

    /// Coefficient at `n`, which must be below `prec`, as an integer.
    pub fn integer_coefficient(&self, n: i64) -> Result<BigInt> {
        let c = self.coefficient(n)?;
        if !c.is_integer() {
            return Err(Error::Precondition(format!(
                "coefficient of q^{n} is {c}, not an integer"
            )));
        }
        Ok(c.to_integer())
    }

    fn coeff_unchecked(&self, n: i64) -> BigRational {
        if n < self.valuation || n >= self.prec {
            BigRational::zero()
        } else {
            self.coeffs[(n - self.valuation) as usize].clone()
        }
    }

    /// Every stored coefficient is a rational integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Forgets every coefficient at or above `prec`.
    pub fn truncate(&self, prec: i64) -> Self {
        if prec >= self.prec {
            return self.clone();
        }
        let mut s = self.clone();
        s.prec = prec;
        s.normalize();
        s
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let coeffs = self.coeffs.iter().map(|x| x * c).collect();
        QSeries::new(self.valuation, coeffs, self.prec).with_weight(self.weight)
    }

    fn add_impl(&self, other: &QSeries, negate_other: bool) -> QSeries {
        let prec = self.prec.min(other.prec);
        let val = self.valuation.min(other.valuation).min(prec);
        let len = (prec - val) as usize;
        let mut coeffs = vec![BigRational::zero(); len];
        for (i, c) in self.coeffs.iter().enumerate() {
            let n = self.valuation + i as i64;
            if n >= prec {
                break;
            }
            coeffs[(n - val) as usize] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            let n = other.valuation + i as i64;
            if n >= prec {
                break;
            }
            if negate_other {
                coeffs[(n - val) as usize] -= c;
            } else {
                coeffs[(n - val) as usize] += c;
            }
        }
        let weight = if self.weight == other.weight {
            self.weight
        } else {
            None
        };
        QSeries::new(val, coeffs, prec).with_weight(weight)
    }

    /// Cauchy product. The result is known modulo
    /// `O(q^min(prec_a + val_b, prec_b + val_a))`.
    pub fn multiply(&self, other: &QSeries) -> QSeries {
        let prec = (self.prec + other.valuation).min(other.prec + self.valuation);
        let weight = match (self.weight, other.weight) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        let val = self.valuation + other.valuation;
        if self.is_zero() || other.is_zero() || prec <= val {
            return QSeries::zero(prec).with_weight(weight);
        }
        let len = (prec - val) as usize;
        let mut coeffs = vec![BigRational::zero(); len];
        let (a, b) = (&self.coeffs, &other.coeffs);
        // Integer series are the common case; convolve numerators directly.
        if self.is_integral() && other.is_integral() {
            let ai: Vec<&BigInt> = a.iter().map(|c| c.numer()).collect();
            let bi: Vec<&BigInt> = b.iter().map(|c| c.numer()).collect();
            for (n, slot) in coeffs.iter_mut().enumerate() {
                let mut acc = BigInt::zero();
                let lo = n.saturating_sub(bi.len().saturating_sub(1));
                for i in lo..=n.min(ai.len() - 1) {
                    if ai[i].is_zero() || bi[n - i].is_zero() {
                        continue;
                    }
                    acc += ai[i] * bi[n - i];
                }
                *slot = BigRational::from_integer(acc);
            }
        } else {
            for (n, slot) in coeffs.iter_mut().enumerate() {
                let lo = n.saturating_sub(b.len().saturating_sub(1));
                for i in lo..=n.min(a.len() - 1) {
                    if a[i].is_zero() || b[n - i].is_zero() {
                        continue;
                    }
                    *slot += &a[i] * &b[n - i];
                }
            }
        }
        QSeries::new(val, coeffs, prec).with_weight(weight)
    }

    /// Multiplicative inverse by back-substitution on the convolution
    /// equations. Relative precision `prec - valuation` is preserved.
    pub fn inverse(&self) -> Result<QSeries> {
        if self.is_zero() {
            return Err(Error::NegativePowerOfZero);
        }
        let c = &self.coeffs;
        let len = c.len();
        let val = -self.valuation;
        let weight = self.weight.map(|w| -w);
        if self.is_integral() {
            // With lead L, y_n = L^(n+1) out_n is an integer and satisfies
            // y_n = -sum_{i=1..n} c_i L^(i-1) y_(n-i).
            let lead = c[0].numer();
            let mut scaled: Vec<BigInt> = vec![BigInt::zero()];
            let mut power = BigInt::one();
            for ci in &c[1..] {
                scaled.push(ci.numer() * &power);
                power *= lead;
            }
            let mut y: Vec<BigInt> = Vec::with_capacity(len);
            y.push(BigInt::one());
            for n in 1..len {
                let mut acc = BigInt::zero();
                for i in 1..=n {
                    if !scaled[i].is_zero() {
                        acc += &scaled[i] * &y[n - i];
                    }
                }
                y.push(-acc);
            }
            let mut denom = lead.clone();
            let out = y
                .into_iter()
                .map(|yn| {
                    let r = BigRational::new(yn, denom.clone());
                    denom *= lead;
                    r
                })
                .collect();
            return Ok(QSeries::new(val, out, val + len as i64).with_weight(weight));
        }
        let lead_inv = c[0].recip();
        let mut out: Vec<BigRational> = Vec::with_capacity(len);
        out.push(lead_inv.clone());
        for n in 1..len {
            let mut acc = BigRational::zero();
            for i in 1..=n {
                if c[i].is_zero() {
                    continue;
                }
                acc += &c[i] * &out[n - i];
            }
            out.push(-(acc * &lead_inv));
        }
        Ok(QSeries::new(val, out, val + len as i64).with_weight(weight))
    }

    /// `self^e`; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<QSeries> {
        let weight = self.weight.map(|w| w * e);
        if e == 0 {
            let rel = if self.is_zero() {
                self.prec.max(1)
            } else {
                self.prec - self.valuation
            };
            return Ok(QSeries::one(rel).with_weight(weight));
        }
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        Ok(binary_pow(&base, e.unsigned_abs(), |x, y| x.multiply(y)))
    }

    /// Coefficient-wise reduction to a series over `Z/pZ`.
    pub fn reduce_mod_p(&self, p: u64) -> Result<ModPSeries> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut residues = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            let d = bigint_mod(c.denom(), p);
            if d == 0 {
                return Err(Error::DenominatorDivisibleByP {
                    exponent: self.valuation + i as i64,
                    p,
                });
            }
            let n = bigint_mod(c.numer(), p);
            residues.push(mul_mod(n, inv_mod(d, p), p));
        }
        Ok(ModPSeries::new(p, self.valuation, residues, self.prec).with_weight(self.weight))
    }
}

/// Square-and-multiply over any associative product; `e >= 1`.
pub(crate) fn binary_pow<T: Clone>(base: &T, mut e: u64, mul: impl Fn(&T, &T) -> T) -> T {
    debug_assert!(e >= 1);
    let mut sq = base.clone();
    let mut acc: Option<T> = None;
    loop {
        if e & 1 == 1 {
            acc = Some(match acc {
                None => sq.clone(),
                Some(a) => mul(&a, &sq),
            });
        }
        e >>= 1;
        if e == 0 {
            break;
        }
        sq = mul(&sq, &sq);
    }
    acc.unwrap()
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        self.add_impl(rhs, false)
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        self.add_impl(rhs, true)
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        self.multiply(rhs)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        self.scale(&-BigRational::one())
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let n = self.valuation + i as i64;
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let mono = match n {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{n}"),
            };
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O(q^{})", self.prec)
    }
}
