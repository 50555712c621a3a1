use serde::{Deserialize, Serialize};

use super::certificate::{certify_hatada, certify_weight_criterion, Certificate};
use super::weight_criterion;
use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::hecke::{dimensions, hecke_matrix, hecke_precision};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCell {
    pub p: u64,
    pub k: i64,
    /// Marked by `p in {2, 3}` or by the weight criterion.
    pub present: bool,
    pub certificate: Option<Certificate>,
    /// `charpoly(T_p) = x^dim (mod p)`, when cross-verification ran.
    /// Vacuously true when `S_k = 0`.
    pub nilpotent: Option<bool>,
}

impl TableCell {
    /// Marked, but the certificate failed or the Hecke check disagrees.
    pub fn is_mismatch(&self) -> bool {
        self.present
            && (self.certificate.as_ref().is_some_and(|c| !c.verified)
                || self.nilpotent == Some(false))
    }

    /// Not marked, yet every eigenform is non-ordinary.
    pub fn is_extra(&self) -> bool {
        !self.present && self.nilpotent == Some(true)
    }
}

pub fn table_cell(k: i64, p: u64, cross_verify: bool) -> Result<TableCell> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    dimensions(k)?;
    let (present, certificate) = if p == 2 || p == 3 {
        (true, Some(certify_hatada(k, p)?))
    } else if weight_criterion(k, p).holds() {
        (true, Some(certify_weight_criterion(k, p)?))
    } else {
        (false, None)
    };
    let nilpotent = if cross_verify {
        let data = hecke_matrix(k, p, hecke_precision(k, p)?)?;
        Some(data.is_nilpotent_mod_p())
    } else {
        None
    };
    Ok(TableCell {
        p,
        k,
        present,
        certificate,
        nilpotent,
    })
}

/// Rows are primes, columns are even weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonordinaryTable {
    pub primes: Vec<u64>,
    pub weights: Vec<i64>,
    /// Row-major: `cells[i * weights.len() + j]` is `(primes[i], weights[j])`.
    pub cells: Vec<TableCell>,
}

impl NonordinaryTable {
    /// Even weights in `k_min..=k_max`; empty when `k_min > k_max`.
    pub fn weights_in(k_min: i64, k_max: i64) -> Result<Vec<i64>> {
        if k_min % 2 != 0 {
            return Err(Error::OddWeight(k_min));
        }
        if k_min < 12 {
            return Err(Error::InvalidWeight(k_min));
        }
        Ok((k_min..=k_max).step_by(2).collect())
    }

    /// Assembles a table from cells computed in any order.
    pub fn from_cells(primes: Vec<u64>, weights: Vec<i64>, mut cells: Vec<TableCell>) -> Self {
        let row = |p: u64| primes.iter().position(|&x| x == p).unwrap_or(usize::MAX);
        let col = |k: i64| weights.iter().position(|&x| x == k).unwrap_or(usize::MAX);
        cells.sort_by_key(|c| (row(c.p), col(c.k)));
        NonordinaryTable {
            primes,
            weights,
            cells,
        }
    }

    pub fn cell(&self, p: u64, k: i64) -> Option<&TableCell> {
        self.cells.iter().find(|c| c.p == p && c.k == k)
    }

    pub fn row(&self, p: u64) -> Vec<i64> {
        self.cells
            .iter()
            .filter(|c| c.p == p && c.present)
            .map(|c| c.k)
            .collect()
    }

    pub fn mismatches(&self) -> Vec<&TableCell> {
        self.cells.iter().filter(|c| c.is_mismatch()).collect()
    }

    pub fn extras(&self) -> Vec<&TableCell> {
        self.cells.iter().filter(|c| c.is_extra()).collect()
    }

    fn marks(&self, p: u64) -> impl Iterator<Item = (i64, bool)> + '_ {
        self.weights
            .iter()
            .map(move |&k| (k, self.cell(p, k).is_some_and(|c| c.present)))
    }

    /// Header `p,k1,k2,...`; one row per prime with `x` in marked cells.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("p");
        for k in &self.weights {
            out.push_str(&format!(",{k}"));
        }
        out.push('\n');
        for &p in &self.primes {
            out.push_str(&p.to_string());
            for (_, present) in self.marks(p) {
                out.push(',');
                if present {
                    out.push('x');
                }
            }
            out.push('\n');
        }
        out
    }

    /// Marked cells show their weight.
    pub fn to_markdown(&self) -> String {
        let mut out = match (self.weights.first(), self.weights.last()) {
            (Some(lo), Some(hi)) => format!(
                "Weights {lo} <= k <= {hi} such that all Hecke eigenforms in S_k are non-ordinary at p\n\n"
            ),
            _ => String::new(),
        };
        out.push_str("| p |");
        for _ in &self.weights {
            out.push_str("   |");
        }
        out.push_str("\n|---|");
        for _ in &self.weights {
            out.push_str("---|");
        }
        out.push('\n');
        for &p in &self.primes {
            out.push_str(&format!("| {p} |"));
            for (k, present) in self.marks(p) {
                if present {
                    out.push_str(&format!(" {k} |"));
                } else {
                    out.push_str("   |");
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn to_plain(&self) -> String {
        let mut out = String::new();
        for &p in &self.primes {
            let row: Vec<String> = self.row(p).iter().map(|k| k.to_string()).collect();
            out.push_str(&format!("{p:>3}: {}\n", row.join(" ")));
        }
        out
    }
}

/// The table of weights `k` at which every eigenform of `S_k` is certified
/// non-ordinary at `p`, for each `p` in `primes`.
pub fn nonordinary_table(
    primes: &[u64],
    k_min: i64,
    k_max: i64,
    cross_verify: bool,
) -> Result<NonordinaryTable> {
    let weights = NonordinaryTable::weights_in(k_min, k_max)?;
    let mut cells = Vec::with_capacity(primes.len() * weights.len());
    for &p in primes {
        for &k in &weights {
            cells.push(table_cell(k, p, cross_verify)?);
        }
    }
    Ok(NonordinaryTable::from_cells(
        primes.to_vec(),
        weights,
        cells,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_eleven() {
        let t = nonordinary_table(&[11], 12, 42, false).unwrap();
        let row = t.row(11);
        for k in [12, 22, 32, 42] {
            assert!(!row.contains(&k));
        }
        assert_eq!(row.len(), 12);
    }

    #[test]
    fn row_thirteen_cross_verified() {
        let t = nonordinary_table(&[13], 12, 42, true).unwrap();
        let row = t.row(13);
        for k in [12, 24, 36] {
            assert!(!row.contains(&k));
        }
        assert!(t.mismatches().is_empty());
    }

    #[test]
    fn empty_range() {
        let t = nonordinary_table(&[2, 3], 44, 42, true).unwrap();
        assert!(t.weights.is_empty());
        assert_eq!(t.to_csv(), "p\n2\n3\n");
    }

    #[test]
    fn range_validation() {
        assert_eq!(
            nonordinary_table(&[5], 13, 42, false),
            Err(Error::OddWeight(13))
        );
        assert_eq!(
            nonordinary_table(&[5], 10, 42, false),
            Err(Error::InvalidWeight(10))
        );
    }

    #[test]
    fn mismatch_and_extra_flags() {
        let cell = |present, nilpotent| TableCell {
            p: 11,
            k: 12,
            present,
            certificate: None,
            nilpotent,
        };
        assert!(cell(true, Some(false)).is_mismatch());
        assert!(!cell(true, Some(true)).is_mismatch());
        assert!(!cell(true, None).is_mismatch());
        assert!(cell(false, Some(true)).is_extra());
        assert!(!cell(false, Some(false)).is_extra());
    }

    #[test]
    fn csv_shape() {
        let t = nonordinary_table(&[2, 11], 12, 16, false).unwrap();
        assert_eq!(t.to_csv(), "p,12,14,16\n2,x,x,x\n11,,x,x\n");
        assert_eq!(t.to_plain(), "  2: 12 14 16\n 11: 14 16\n");
    }
}
