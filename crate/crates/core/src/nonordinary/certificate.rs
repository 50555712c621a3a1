use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{
    g_form, solve_part1, solve_part2, two_m_over_bernoulli, weight_criterion, Decomposition,
    Part1Exponents, Part2Exponents,
};
use crate::arith::{bigint_mod, inv_mod, is_prime, mul_mod};
use crate::classical::{bernoulli, eisenstein, j_invariant};
use crate::error::{Error, Result};
use crate::hecke::linalg::{charpoly_mod_p, format_poly, reduce_poly};
use crate::hecke::{dimensions, hecke_matrix_on, hecke_precision, miller_basis, FormSpace};
use crate::qseries::QSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    Hatada,
    WeightCriterion,
    Nilpotency,
    Theorem1,
    Theorem2,
}

/// Exponents used by a certificate. Absent fields are omitted from JSON.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub a: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub b: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub c: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub s: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub u: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub v: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub c1: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub c2: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub c1p: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub c2p: Option<i64>,
}

impl From<&Part1Exponents> for Params {
    fn from(e: &Part1Exponents) -> Self {
        Params {
            m: Some(e.m),
            a: Some(e.a.into()),
            b: Some(e.b.into()),
            c: Some(e.c),
            ..Params::default()
        }
    }
}

impl From<&Part2Exponents> for Params {
    fn from(e: &Part2Exponents) -> Self {
        Params {
            r: Some(e.r),
            s: Some(e.s),
            t: Some(e.t.into()),
            u: Some(e.u.into()),
            v: Some(e.v.into()),
            c1: Some(e.c1),
            c2: Some(e.c2),
            c1p: Some(e.c1p),
            c2p: Some(e.c2p),
            ..Params::default()
        }
    }
}

/// One verifiable step. Numbers are decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub observed: String,
    pub expected: String,
    pub pass: bool,
}

impl Check {
    fn new(name: impl Into<String>, observed: impl ToString, expected: impl ToString) -> Self {
        let observed = observed.to_string();
        let expected = expected.to_string();
        Check {
            name: name.into(),
            pass: observed == expected,
            observed,
            expected,
        }
    }

    fn flag(
        name: impl Into<String>,
        observed: impl ToString,
        expected: impl ToString,
        pass: bool,
    ) -> Self {
        Check {
            name: name.into(),
            observed: observed.to_string(),
            expected: expected.to_string(),
            pass,
        }
    }
}

/// A record of one non-ordinarity argument; `verified` is the conjunction of
/// all checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub k: i64,
    pub p: u64,
    pub params: Params,
    pub checks: Vec<Check>,
    pub verified: bool,
}

impl Certificate {
    fn new(kind: CertificateKind, k: i64, p: u64, params: Params, checks: Vec<Check>) -> Self {
        let verified = checks.iter().all(|c| c.pass);
        Certificate {
            kind,
            k,
            p,
            params,
            checks,
            verified,
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn declare_weight(f: &QSeries, k: i64) -> Result<QSeries> {
    match f.weight() {
        Some(w) if w != k => Err(Error::Precondition(format!(
            "form has weight {w}, expected {k}"
        ))),
        _ => Ok(f.clone().with_weight(Some(k))),
    }
}

/// Constant term of a product that must be a weight-2 form. Refuses to run
/// unless the declared weights add up to 2.
fn weight2_constant_term(product: &QSeries) -> Result<BigRational> {
    if product.weight() != Some(2) {
        return Err(Error::Precondition(format!(
            "constant-term vanishing needs weight 2, product has weight {:?}",
            product.weight()
        )));
    }
    product.coefficient(0)
}

fn pow_i64(p: u64, e: u32) -> Result<i64> {
    (p as i64)
        .checked_pow(e)
        .ok_or_else(|| Error::Precondition(format!("{p}^{e} overflows")))
}

fn residue(x: &BigRational, p: u64) -> Result<u64> {
    let d = bigint_mod(x.denom(), p);
    if d == 0 {
        return Err(Error::Precondition(format!(
            "{x} has a denominator divisible by {p}"
        )));
    }
    let n = bigint_mod(x.numer(), p);
    Ok(mul_mod(n, inv_mod(d, p), p))
}

fn check_form_preconditions(f: &QSeries, p: u64, min_order: i64, max_exponent: i64) -> Result<()> {
    if f.valuation() <= -min_order && !f.is_zero() {
        return Err(Error::Precondition(format!(
            "ord(f) = {} is not greater than -{min_order}",
            f.valuation()
        )));
    }
    if f.prec() <= max_exponent {
        return Err(Error::PrecisionTooSmall {
            needed: max_exponent + 1,
            got: f.prec(),
        });
    }
    f.reduce_mod_p(p)?;
    Ok(())
}

/// Certificate for `a_f(p^b) = -(2m/B_m) a_f(0) (mod p)`.
///
/// In exact mode the constant term of `g_m^(p^b) E_{p-1}^c f` is computed
/// over the rationals; otherwise the constant term of
/// `(g_m mod p)^(p^b) (f mod p)` is computed with Frobenius powering.
pub fn certify_theorem1(
    f: &QSeries,
    k: i64,
    p: u64,
    m: i64,
    b: Option<u32>,
    exact: bool,
) -> Result<Certificate> {
    let ex = solve_part1(p, k, m, b)?;
    let f = declare_weight(f, k)?;
    let pa = pow_i64(p, ex.a)?;
    let pb = pow_i64(p, ex.b)?;
    check_form_preconditions(&f, p, pa, pb)?;

    let mut checks = vec![Check::flag(
        "criterion",
        format!("k - m = {}", k - m),
        format!("divisible by {}", p - 1),
        (k - m) % (p as i64 - 1) == 0,
    )];
    checks.push(Check::new(
        "exponent-identity",
        ex.c * (p as i64 - 1) - (m - 2) * pb,
        2 - k,
    ));
    let closed = two_m_over_bernoulli(m)?;
    let from_bernoulli = BigRational::from_integer(BigInt::from(2 * m)) / bernoulli(m as u32);
    checks.push(Check::new("bernoulli-identity", &from_bernoulli, closed));

    let working = f.prec() + pb + 2;
    if exact {
        let g = g_form(m, working)?;
        let e = eisenstein(p as i64 - 1, working)?;
        let product = g.pow(pb)?.multiply(&e.pow(ex.c)?).multiply(&f);
        let ct = weight2_constant_term(&product)?;
        checks.push(Check::new("exact-constant-term", ct, 0));
    } else {
        let g = g_form(m, working)?.reduce_mod_p(p)?;
        let product = g.frobenius_power(pb as u64).multiply(&f.reduce_mod_p(p)?);
        if product.weight() != Some(2 + ex.c * (1 - p as i64)) {
            return Err(Error::Precondition(
                "mod-p product does not have the expected weight".into(),
            ));
        }
        checks.push(Check::new("modp-constant-term", product.coefficient(0)?, 0));
    }

    let apb = f.coefficient(pb)?;
    let a0 = f.coefficient(0)?;
    let combined = &apb + BigRational::from_integer(closed.into()) * &a0;
    checks.push(Check::new("target-congruence", residue(&combined, p)?, 0));
    Ok(Certificate::new(
        CertificateKind::Theorem1,
        k,
        p,
        Params::from(&ex),
        checks,
    ))
}

/// Certificate for `a_f(p^v) = a_f(0) = 0 (mod p)` when `k <= 2`.
pub fn certify_theorem2(
    f: &QSeries,
    k: i64,
    p: u64,
    u: u32,
    v: u32,
    decomposition: Option<Decomposition>,
) -> Result<Certificate> {
    let ex = solve_part2(k, p, u, v, decomposition)?;
    let f = declare_weight(f, k)?;
    let pu = pow_i64(p, u)?;
    let pv = pow_i64(p, v)?;
    check_form_preconditions(&f, p, pu, pv)?;

    let working = f.prec() + pv + 2;
    let e4 = eisenstein(4, working)?;
    let e6 = eisenstein(6, working)?;
    let ep = eisenstein(p as i64 - 1, working)?.pow(ex.r)?;
    let mut checks = vec![Check::new(
        "decomposition",
        ex.r * (p as i64 - 1) + ex.s * pow_i64(p, ex.t)?,
        2 - k,
    )];

    let h = e4.pow(ex.c1)?.multiply(&e6.pow(ex.c2)?).pow(pu)?;
    let ct = weight2_constant_term(&h.multiply(&ep).multiply(&f))?;
    checks.push(Check::new("exact-constant-term-u", ct, 0));

    let a0 = f.coefficient(0)?;
    checks.push(Check::new(
        "constant-coefficient-mod-p",
        residue(&a0, p)?,
        0,
    ));

    let j = j_invariant(working).with_weight(Some(0));
    let h2 = j
        .multiply(&e4.pow(ex.c1p)?)
        .multiply(&e6.pow(ex.c2p)?)
        .pow(pv)?;
    let ct = weight2_constant_term(&h2.multiply(&ep).multiply(&f))?;
    checks.push(Check::new("exact-constant-term-v", ct, 0));

    let apv = f.coefficient(pv)?;
    let shift = 744 + 240 * ex.c1p - 504 * ex.c2p;
    let combined = &apv + BigRational::from_integer(shift.into()) * &a0;
    checks.push(Check::new("proof-congruence", residue(&combined, p)?, 0));
    checks.push(Check::new("target-congruence", residue(&apv, p)?, 0));
    Ok(Certificate::new(
        CertificateKind::Theorem2,
        k,
        p,
        Params::from(&ex),
        checks,
    ))
}

fn nilpotency_checks(space: &FormSpace, p: u64) -> Result<Vec<Check>> {
    let data = hecke_matrix_on(space, p)?;
    let n = data.dim();
    let mut target = vec![0u64; n + 1];
    target[n] = 1;
    let hessenberg = charpoly_mod_p(&data.matrix, p);
    Ok(vec![
        Check::new("cusp-dimension", n, space.dim_s),
        Check::new(
            "charpoly-mod-p",
            format_poly(&data.charpoly_mod_p),
            format_poly(&target),
        ),
        Check::new(
            "charpoly-routes-agree",
            format_poly(&hessenberg),
            format_poly(&reduce_poly(&data.charpoly, p)),
        ),
    ])
}

/// `charpoly(T_p on S_k) = x^dim (mod p)`.
pub fn certify_nilpotency(k: i64, p: u64) -> Result<Certificate> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let space = miller_basis(k, hecke_precision(k, p)?)?;
    let checks = nilpotency_checks(&space, p)?;
    Ok(Certificate::new(
        CertificateKind::Nilpotency,
        k,
        p,
        Params::default(),
        checks,
    ))
}

/// `p = 2, 3`: every eigenform is non-ordinary. Carries the nilpotency
/// evidence for the given weight.
pub fn certify_hatada(k: i64, p: u64) -> Result<Certificate> {
    if p != 2 && p != 3 {
        return Err(Error::Precondition(format!("p = {p} is neither 2 nor 3")));
    }
    let space = miller_basis(k, hecke_precision(k, p)?)?;
    let mut checks = vec![Check::new("small-prime", p, p)];
    checks.extend(nilpotency_checks(&space, p)?);
    Ok(Certificate::new(
        CertificateKind::Hatada,
        k,
        p,
        Params::default(),
        checks,
    ))
}

/// Weight criterion at `(k, p)`, backed by the mod-`p` part-one check on
/// every element of the cuspidal Miller basis (each has `a_f(0) = 0`, so
/// each must satisfy `a_f(p^b) = 0 (mod p)`).
pub fn certify_weight_criterion(k: i64, p: u64) -> Result<Certificate> {
    dimensions(k)?;
    let crit = weight_criterion(k, p);
    let m = crit.m.ok_or(Error::CriterionFails { k, p, m: None })?;
    let ex = solve_part1(p, k, m, None)?;
    let pb = pow_i64(p, ex.b)?;
    let mut checks = vec![
        Check::flag(
            "criterion",
            format!("k - m = {}", k - m),
            format!("divisible by {}", p - 1),
            true,
        ),
        Check::new(
            "exponent-identity",
            ex.c * (p as i64 - 1) - (m - 2) * pb,
            2 - k,
        ),
    ];
    let space = miller_basis(k, pb + 1)?;
    if space.dim_s > 0 {
        let g = g_form(m, 2)?.reduce_mod_p(p)?;
        let gp = g.frobenius_power(pb as u64);
        for (i, f) in space.cusp_basis().iter().enumerate() {
            let fp = f.reduce_mod_p(p)?;
            let ct = gp.multiply(&fp).coefficient(0)?;
            checks.push(Check::new(
                format!("cusp-basis-{}-modp-constant-term", i + 1),
                ct,
                0,
            ));
            checks.push(Check::new(
                format!("cusp-basis-{}-target-congruence", i + 1),
                fp.coefficient(pb)?,
                0,
            ));
        }
    }
    Ok(Certificate::new(
        CertificateKind::WeightCriterion,
        k,
        p,
        Params::from(&ex),
        checks,
    ))
}
