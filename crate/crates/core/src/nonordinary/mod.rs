//! Congruence criteria for non-ordinary primes and the exponent bookkeeping
//! behind the constant-term certificates.
//!
//! Every certificate multiplies a form `f` of weight `k` by auxiliary forms of
//! total weight `2 - k`. A weakly holomorphic form of weight 2 is the
//! derivative of a polynomial in `j`, so its constant term vanishes; reducing
//! the auxiliary factors modulo `p` turns that vanishing into a congruence for
//! `a_f(p^b)`.

mod certificate;
mod table;

pub use certificate::{
    certify_hatada, certify_nilpotency, certify_theorem1, certify_theorem2,
    certify_weight_criterion, Certificate, CertificateKind, Check, Params,
};
pub use table::{nonordinary_table, table_cell, NonordinaryTable, TableCell};

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::classical::{eisenstein, j_invariant};
use crate::error::{Error, Result};
use crate::qseries::{at_precision, QSeries};

/// The admissible residues `{4, 6, 8, 10, 14}`.
pub const A: [i64; 5] = [4, 6, 8, 10, 14];

pub fn check_m(m: i64) -> Result<()> {
    if A.contains(&m) {
        Ok(())
    } else {
        Err(Error::InvalidM(m))
    }
}

fn check_prime_ge5(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 5 {
        return Err(Error::Precondition(format!("p = {p} must be at least 5")));
    }
    Ok(())
}

/// `i^m` for even `m`.
pub fn i_pow(m: i64) -> i64 {
    if (m / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `2m / B_m` through the closed form `432 - 60m - 432 i^m`, valid on `A`.
pub fn two_m_over_bernoulli(m: i64) -> Result<i64> {
    check_m(m)?;
    Ok(432 - 60 * m - 432 * i_pow(m))
}

/// The weight criterion at `(k, p)`: some `m` in `A` with `(p - 1) | (k - m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Criterion {
    pub k: i64,
    pub p: u64,
    pub m: Option<i64>,
}

impl Criterion {
    pub fn holds(&self) -> bool {
        self.m.is_some()
    }
}

/// All `m` in `A` with `(p - 1) | (k - m)`, ascending.
pub fn admissible_ms(k: i64, p: u64) -> Vec<i64> {
    let modulus = p as i64 - 1;
    A.iter()
        .copied()
        .filter(|&m| (k - m).rem_euclid(modulus) == 0)
        .collect()
}

/// Smallest `m` in `A` with `(p - 1) | (k - m)`, if any.
pub fn weight_criterion(k: i64, p: u64) -> Criterion {
    Criterion {
        k,
        p,
        m: admissible_ms(k, p).first().copied(),
    }
}

/// Exponents `(e6, e4)` of `g_m = j E6^e6 / E4^e4`, from the closed formula
/// `e6 = (1 + i^m)/2`, `e4 = (m + 1 + 3 i^m)/4`.
pub fn g_exponents(m: i64) -> Result<(i64, i64)> {
    check_m(m)?;
    let i = i_pow(m);
    Ok(((1 + i) / 2, (m + 1 + 3 * i) / 4))
}

/// `g_m`, a weakly holomorphic form of weight `2 - m` with a simple pole:
/// `jE6/E4^2, j/E4, jE6/E4^3, j/E4^2, j/E4^3` for `m = 4, 6, 8, 10, 14`.
pub fn g_form(m: i64, prec: i64) -> Result<QSeries> {
    let (e6_exp, e4_exp) = match m {
        4 => (1, 2),
        6 => (0, 1),
        8 => (1, 3),
        10 => (0, 2),
        14 => (0, 3),
        _ => return Err(Error::InvalidM(m)),
    };
    debug_assert_eq!(g_exponents(m)?, (e6_exp, e4_exp));
    at_precision(prec, |w| {
        let j = j_invariant(w).with_weight(Some(0));
        let e6 = eisenstein(6, w)?.pow(e6_exp)?;
        let e4 = eisenstein(4, w)?.pow(-e4_exp)?;
        Ok(j.multiply(&e6).multiply(&e4))
    })
}

/// `(c1, c2)` with `4 c1 + 6 c2 = n`, `c1` maximal.
pub fn four_six_rep(n: i64) -> Result<(i64, i64)> {
    if n < 0 || n % 2 != 0 || n == 2 {
        return Err(Error::NotRepresentable(n));
    }
    if n % 4 == 0 {
        Ok((n / 4, 0))
    } else {
        Ok(((n - 6) / 4, 1))
    }
}

fn checked_pow(p: u64, e: u32) -> Result<i64> {
    (p as i64)
        .checked_pow(e)
        .ok_or_else(|| Error::Precondition(format!("{p}^{e} overflows")))
}

/// Exponents for the part-one congruence `a_f(p^b) = -(2m/B_m) a_f(0) (mod p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Part1Exponents {
    pub p: u64,
    pub k: i64,
    pub m: i64,
    /// Minimal with `k - 2 <= (m - 2) p^a`.
    pub a: u32,
    pub b: u32,
    /// `2 - k = c (p - 1) - (m - 2) p^b`.
    pub c: i64,
}

/// Solves for `a` and `c`; `b` defaults to `a`.
pub fn solve_part1(p: u64, k: i64, m: i64, b: Option<u32>) -> Result<Part1Exponents> {
    check_prime_ge5(p)?;
    check_m(m)?;
    if k % 2 != 0 {
        return Err(Error::OddWeight(k));
    }
    let modulus = p as i64 - 1;
    if (k - m).rem_euclid(modulus) != 0 {
        return Err(Error::CriterionFails { k, p, m: Some(m) });
    }
    let mut a = 0u32;
    while k - 2 > (m - 2) * checked_pow(p, a)? {
        a += 1;
    }
    let b = b.unwrap_or(a);
    if b < a {
        return Err(Error::BTooSmall { b, a });
    }
    let numer = (m - 2)
        .checked_mul(checked_pow(p, b)?)
        .ok_or_else(|| Error::Precondition("(m - 2) p^b overflows".into()))?
        + 2
        - k;
    let (c, rem) = numer.div_rem(&modulus);
    if rem != 0 || c < 0 {
        return Err(Error::Precondition(format!(
            "c = {numer}/{modulus} is not a nonnegative integer"
        )));
    }
    Ok(Part1Exponents { p, k, m, a, b, c })
}

/// One solution of `2 - k = r (p - 1) + s p^t` with `s != 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub r: i64,
    pub s: i64,
    pub t: u32,
}

/// Every decomposition with `t <= t_max`, sorted by `t` descending then `s`
/// ascending.
pub fn decompose_part2_up_to(k: i64, p: u64, t_max: u32) -> Vec<Decomposition> {
    let total = 2 - k;
    if total < 0 || k % 2 != 0 {
        return Vec::new();
    }
    let modulus = p as i64 - 1;
    let mut out = Vec::new();
    for t in (1..=t_max).rev() {
        let Some(pt) = (p as i64).checked_pow(t) else {
            continue;
        };
        let mut s = 0i64;
        while s * pt <= total {
            let rest = total - s * pt;
            if s != 2 && rest % modulus == 0 {
                assert!(s % 2 == 0, "odd s in a decomposition of an even weight");
                out.push(Decomposition {
                    r: rest / modulus,
                    s,
                    t,
                });
            }
            s += 1;
        }
    }
    out
}

/// All decompositions of `2 - k` for even `k <= 2`. With `s = 0` the exponent
/// `t` is unconstrained; it is listed up to the largest `t` with
/// `p^t <= 2 - k` (at least 1).
pub fn decompose_part2(k: i64, p: u64) -> Vec<Decomposition> {
    let total = 2 - k;
    let mut t_max = 1u32;
    while (p as i64)
        .checked_pow(t_max + 1)
        .is_some_and(|pt| pt <= total)
    {
        t_max += 1;
    }
    decompose_part2_up_to(k, p, t_max)
}

/// Exponents for part two of the constant-term argument (weights `k <= 2`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Part2Exponents {
    pub p: u64,
    pub k: i64,
    pub r: i64,
    pub s: i64,
    pub t: u32,
    pub u: u32,
    pub v: u32,
    /// `4 c1 + 6 c2 = s p^(t-u)`.
    pub c1: i64,
    pub c2: i64,
    /// `4 c1p + 6 c2p = s p^(t-v)`.
    pub c1p: i64,
    pub c2p: i64,
}

/// Picks a decomposition with `t >= v` (the given one, or the first listed)
/// and solves the two `4 c1 + 6 c2` representations.
pub fn solve_part2(
    k: i64,
    p: u64,
    u: u32,
    v: u32,
    decomposition: Option<Decomposition>,
) -> Result<Part2Exponents> {
    check_prime_ge5(p)?;
    if k % 2 != 0 {
        return Err(Error::OddWeight(k));
    }
    if k > 2 {
        return Err(Error::Precondition(format!("weight {k} exceeds 2")));
    }
    if u == 0 {
        return Err(Error::Precondition("u must be positive".into()));
    }
    if v < u {
        return Err(Error::Precondition(format!(
            "v = {v} is smaller than u = {u}"
        )));
    }
    let d = match decomposition {
        Some(d) => {
            let pt = checked_pow(p, d.t)?;
            if d.s == 2
                || d.r < 0
                || d.s < 0
                || d.t == 0
                || d.r * (p as i64 - 1) + d.s * pt != 2 - k
            {
                return Err(Error::Precondition(format!(
                    "({}, {}, {}) does not decompose 2 - k = {}",
                    d.r,
                    d.s,
                    d.t,
                    2 - k
                )));
            }
            if d.t < v {
                return Err(Error::NoDecomposition { k, p, min_t: v });
            }
            d
        }
        None => {
            let t_max = decompose_part2(k, p).first().map_or(1, |d| d.t).max(v);
            *decompose_part2_up_to(k, p, t_max)
                .iter()
                .find(|d| d.t >= v)
                .ok_or(Error::NoDecomposition { k, p, min_t: v })?
        }
    };
    let (c1, c2) = four_six_rep(d.s * checked_pow(p, d.t - u)?)?;
    let (c1p, c2p) = four_six_rep(d.s * checked_pow(p, d.t - v)?)?;
    Ok(Part2Exponents {
        p,
        k,
        r: d.r,
        s: d.s,
        t: d.t,
        u,
        v,
        c1,
        c2,
        c1p,
        c2p,
    })
}

fn odd_primes_ge5(primes: &[u64]) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for &p in primes {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 5 && !out.contains(&p) {
            out.push(p);
        }
    }
    if out.is_empty() {
        return Err(Error::Precondition(
            "the prime set has no prime p >= 5".into(),
        ));
    }
    Ok(out)
}

/// `k_S(j, m) = j prod_{p in S} (p - 1) + m`; 2 and 3 are ignored.
pub fn family_weight(primes: &[u64], j: u64, m: i64) -> Result<i64> {
    check_m(m)?;
    let primes = odd_primes_ge5(primes)?;
    let prod: i64 = primes.iter().map(|&p| p as i64 - 1).product();
    Ok(j as i64 * prod + m)
}

/// `base + j lcm_{p in S}(p - 1)`, for a base weight that already satisfies
/// the weight criterion at every `p >= 5` in `S`.
pub fn family_weight_lcm(primes: &[u64], j: u64, base: i64) -> Result<i64> {
    let primes = odd_primes_ge5(primes)?;
    for &p in &primes {
        if !weight_criterion(base, p).holds() {
            return Err(Error::CriterionFails {
                k: base,
                p,
                m: None,
            });
        }
    }
    let l = primes
        .iter()
        .fold(BigInt::from(1), |acc, &p| acc.lcm(&BigInt::from(p - 1)));
    let l: i64 = l
        .try_into()
        .map_err(|_| Error::Precondition("lcm overflows".into()))?;
    Ok(base + j as i64 * l)
}

/// Smallest `b >= 0` with `k - 2 < (m - 2) p^b` for every `p >= 5` in `S`.
pub fn family_b(primes: &[u64], k: i64, m: i64) -> Result<u32> {
    check_m(m)?;
    let primes = odd_primes_ge5(primes)?;
    let mut b = 0u32;
    loop {
        let mut ok = true;
        for &p in &primes {
            if k - 2 >= (m - 2).saturating_mul(checked_pow(p, b)?) {
                ok = false;
            }
        }
        if ok {
            return Ok(b);
        }
        b += 1;
    }
}
