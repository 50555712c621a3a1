use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("negative power of the zero series")]
    NegativePowerOfZero,
    #[error("coefficient at q^{exponent} has a denominator divisible by {p}")]
    DenominatorDivisibleByP { exponent: i64, p: u64 },
    #[error("coefficient q^{n} requested but the series is only known modulo O(q^{prec})")]
    BeyondPrecision { n: i64, prec: i64 },
    #[error("invalid weight {0}")]
    InvalidWeight(i64),
    #[error("odd weight {0}")]
    OddWeight(i64),
    #[error("precision {got} is too small, need at least {needed}")]
    PrecisionTooSmall { needed: i64, got: i64 },
    #[error("weight {k} has cusp space of dimension {dim}, not 1")]
    DimensionNotOne { k: i64, dim: usize },
    #[error("m = {0} is not one of 4, 6, 8, 10, 14")]
    InvalidM(i64),
    #[error("no m in {{4, 6, 8, 10, 14}} with ({p} - 1) | ({k} - m){}", .m.map(|m| format!(" (tried m = {m})")).unwrap_or_default())]
    CriterionFails { k: i64, p: u64, m: Option<i64> },
    #[error("b = {b} is smaller than the minimal exponent a = {a}")]
    BTooSmall { b: u32, a: u32 },
    #[error("no decomposition 2 - k = r(p - 1) + s p^t with s != 2 for k = {k}, p = {p}{}", if *.min_t > 1 { format!(", t >= {}", .min_t) } else { String::new() })]
    NoDecomposition { k: i64, p: u64, min_t: u32 },
    #[error("{0} is not of the form 4 c1 + 6 c2 with c1, c2 >= 0")]
    NotRepresentable(i64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0}")]
    Precondition(String),
}

impl Error {
    /// Stable short name of the variant, used in CLI diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NegativePowerOfZero => "NegativePowerOfZero",
            Error::DenominatorDivisibleByP { .. } => "DenominatorDivisibleByP",
            Error::BeyondPrecision { .. } => "BeyondPrecision",
            Error::InvalidWeight(_) => "InvalidWeight",
            Error::OddWeight(_) => "OddWeight",
            Error::PrecisionTooSmall { .. } => "PrecisionTooSmall",
            Error::DimensionNotOne { .. } => "DimensionNotOne",
            Error::InvalidM(_) => "InvalidM",
            Error::CriterionFails { .. } => "CriterionFails",
            Error::BTooSmall { .. } => "BTooSmall",
            Error::NoDecomposition { .. } => "NoDecomposition",
            Error::NotRepresentable(_) => "NotRepresentable",
            Error::NotPrime(_) => "NotPrime",
            Error::Precondition(_) => "Precondition",
        }
    }
}
