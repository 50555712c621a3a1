//! Spaces of level-one forms, Hecke operators and the nilpotency test.
//!
//! `M_k` is realized by its Miller basis `f_i = q^i + O(q^dim M_k)`. The
//! cuspidal part `f_1, ..., f_{dim S_k}` is the coordinate system for `T_p`:
//! because the basis is reduced through `q^(dim M_k - 1)`, the coordinates of
//! a cusp form are just its coefficients at `q^1, ..., q^(dim S_k)`.

pub mod linalg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{bigint_mod, is_prime};
use crate::classical::{delta, eisenstein};
use crate::error::{Error, Result};
use crate::nonordinary::four_six_rep;
use crate::qseries::QSeries;

pub use linalg::IntMatrix;

/// `(dim M_k, dim S_k)` for even `k >= 4`.
pub fn dimensions(k: i64) -> Result<(usize, usize)> {
    if k < 4 || k % 2 != 0 {
        return Err(Error::InvalidWeight(k));
    }
    let base = (k / 12) as usize;
    let dim_m = if k % 12 == 2 { base } else { base + 1 };
    Ok((dim_m, dim_m - 1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormSpace {
    pub weight: i64,
    pub dim_m: usize,
    pub dim_s: usize,
    /// Miller basis of `M_k`; `basis[i] = q^i + O(q^dim_m)`.
    pub basis: Vec<QSeries>,
    pub prec: i64,
}

impl FormSpace {
    /// `f_1, ..., f_{dim S_k}`.
    pub fn cusp_basis(&self) -> &[QSeries] {
        &self.basis[1..]
    }
}

/// Miller basis of `M_k` to precision `prec`.
///
/// Starts from one monomial `E4^a E6^b Delta^c = q^c + ...` for each
/// `c < dim M_k` and clears the entries above the diagonal.
pub fn miller_basis(k: i64, prec: i64) -> Result<FormSpace> {
    let (dim_m, dim_s) = dimensions(k)?;
    if prec < dim_m as i64 {
        return Err(Error::PrecisionTooSmall {
            needed: dim_m as i64,
            got: prec,
        });
    }
    let e4 = eisenstein(4, prec)?;
    let e6 = eisenstein(6, prec)?;
    let d = delta(prec);
    let mut basis = Vec::with_capacity(dim_m);
    for c in 0..dim_m {
        let rest = k - 12 * c as i64;
        let (a, b) = four_six_rep(rest)?;
        let mut g = QSeries::one(prec);
        for (f, e) in [(&e4, a), (&e6, b), (&d, c as i64)] {
            if e > 0 {
                g = g.multiply(&f.pow(e)?);
            }
        }
        basis.push(g);
    }
    for i in (0..dim_m).rev() {
        for j in i + 1..dim_m {
            let c = basis[i].coefficient(j as i64)?;
            if !c.is_zero() {
                let fix = basis[j].scale(&c);
                basis[i] = &basis[i] - &fix;
            }
        }
    }
    for (i, f) in basis.iter().enumerate() {
        if !f.is_integral() {
            return Err(Error::Precondition(format!(
                "Miller basis element {i} of weight {k} is not integral"
            )));
        }
        debug_assert_eq!(f.coefficient(i as i64).unwrap(), BigRational::one());
    }
    let basis = basis
        .into_iter()
        .map(|f| f.truncate(prec).with_weight(Some(k)))
        .collect();
    Ok(FormSpace {
        weight: k,
        dim_m,
        dim_s,
        basis,
        prec,
    })
}

/// `(T_p f)(n) = a_f(pn) + p^(k-1) a_f(n/p)` for `n >= 1`.
pub fn hecke_coefficient(f: &QSeries, k: i64, p: u64, n: i64) -> Result<BigRational> {
    let pi = p as i64;
    let mut c = f.coefficient(pi * n)?;
    if n % pi == 0 {
        let scale = BigRational::from_integer(BigInt::from(p).pow((k - 1) as u32));
        c += scale * f.coefficient(n / pi)?;
    }
    Ok(c)
}

/// `T_p` on `S_k` in the cuspidal Miller basis, with its characteristic
/// polynomial over `Z` and modulo `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeData {
    pub weight: i64,
    pub p: u64,
    /// Column `i` holds the coordinates of `T_p f_{i+1}`.
    pub matrix: IntMatrix,
    /// Monic, ascending coefficients.
    pub charpoly: Vec<BigInt>,
    pub charpoly_mod_p: Vec<u64>,
}

impl HeckeData {
    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    /// `charpoly = x^dim (mod p)`.
    pub fn is_nilpotent_mod_p(&self) -> bool {
        let n = self.dim();
        self.charpoly_mod_p[..n].iter().all(|&c| c == 0) && self.charpoly_mod_p[n] == 1
    }
}

/// Smallest precision at which `T_p` on `S_k` is determined.
pub fn hecke_precision(k: i64, p: u64) -> Result<i64> {
    let (_, dim_s) = dimensions(k)?;
    Ok(p as i64 * dim_s as i64 + 1)
}

pub fn hecke_matrix(k: i64, p: u64, prec: i64) -> Result<HeckeData> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let needed = hecke_precision(k, p)?;
    if prec < needed {
        return Err(Error::PrecisionTooSmall { needed, got: prec });
    }
    let space = miller_basis(k, prec)?;
    hecke_matrix_on(&space, p)
}

/// `T_p` on an already constructed space.
pub fn hecke_matrix_on(space: &FormSpace, p: u64) -> Result<HeckeData> {
    let k = space.weight;
    let n = space.dim_s;
    let needed = p as i64 * n as i64 + 1;
    if space.prec < needed {
        return Err(Error::PrecisionTooSmall {
            needed,
            got: space.prec,
        });
    }
    let mut matrix = vec![vec![BigInt::zero(); n]; n];
    for (col, f) in space.cusp_basis().iter().enumerate() {
        for (row, entries) in matrix.iter_mut().enumerate() {
            let c = hecke_coefficient(f, k, p, row as i64 + 1)?;
            if !c.is_integer() {
                return Err(Error::Precondition(format!(
                    "T_{p} matrix entry ({row}, {col}) = {c} is not an integer"
                )));
            }
            entries[col] = c.to_integer();
        }
    }
    let charpoly = linalg::charpoly(&matrix);
    let charpoly_mod_p = charpoly.iter().map(|c| bigint_mod(c, p)).collect();
    Ok(HeckeData {
        weight: k,
        p,
        matrix,
        charpoly,
        charpoly_mod_p,
    })
}

/// Whether every eigenform of weight `k` has `a_f(p) = 0` modulo every prime
/// above `p`, certified by `charpoly(T_p) = x^dim (mod p)`.
pub fn is_nonordinary_space(k: i64, p: u64) -> Result<(bool, HeckeData)> {
    let (_, dim_s) = dimensions(k)?;
    if dim_s == 0 {
        return Err(Error::Precondition(format!(
            "S_{k} is zero; there is no eigenform to test"
        )));
    }
    let data = hecke_matrix(k, p, hecke_precision(k, p)?)?;
    Ok((data.is_nilpotent_mod_p(), data))
}

/// The normalized eigenform of a weight with one-dimensional `S_k`.
pub fn eigenform(k: i64, prec: i64) -> Result<QSeries> {
    let (dim_m, dim_s) = dimensions(k)?;
    if dim_s != 1 {
        return Err(Error::DimensionNotOne { k, dim: dim_s });
    }
    let space = miller_basis(k, prec.max(dim_m as i64))?;
    Ok(space.basis[1].truncate(prec))
}

/// Checks `a(p) a(p^m) = a(p^(m+1)) + p^(k-1) a(p^(m-1))` exactly and
/// `a(p^m) = a(p)^m (mod p)`.
pub fn prime_power_eigenvalue_congruence(f: &QSeries, k: i64, p: u64, m: u32) -> Result<bool> {
    if m == 0 {
        return Err(Error::Precondition("m must be positive".into()));
    }
    let pi = BigInt::from(p);
    let top = pi.pow(m + 1);
    let top_i64: i64 = top
        .clone()
        .try_into()
        .map_err(|_| Error::Precondition("p^(m+1) does not fit in i64".into()))?;
    if f.prec() <= top_i64 {
        return Err(Error::PrecisionTooSmall {
            needed: top_i64 + 1,
            got: f.prec(),
        });
    }
    let at = |e: u32| -> Result<BigInt> {
        let n: i64 = pi.pow(e).try_into().unwrap();
        f.integer_coefficient(n)
    };
    let ap = at(1)?;
    let apm = at(m)?;
    let recursion = &ap * &apm == at(m + 1)? + pi.pow((k - 1) as u32) * at(m - 1)?;
    let congruence = bigint_mod(&apm, p) == bigint_mod(&ap.pow(m), p);
    Ok(recursion && congruence)
}
