use modform_core::{BigRational, Certificate, NonordinaryTable, QSeries};
use serde::Serialize;

use crate::Format;

fn decimal(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        c.to_string()
    }
}

fn nonzero(f: &QSeries) -> impl Iterator<Item = (i64, String)> + '_ {
    f.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(i, c)| (f.valuation() + i as i64, decimal(c)))
}

#[derive(Serialize)]
struct Coefficient {
    n: i64,
    value: String,
}

#[derive(Serialize)]
struct SeriesJson<'a> {
    form: &'a str,
    weight: Option<i64>,
    valuation: Option<i64>,
    prec: i64,
    coefficients: Vec<Coefficient>,
}

/// Nonzero coefficients below the precision, one per line as `n: value`.
pub fn series(label: &str, f: &QSeries, format: Format) -> String {
    match format {
        Format::Plain => nonzero(f).map(|(n, v)| format!("{n}: {v}\n")).collect(),
        Format::Csv => {
            let mut out = String::from("n,value\n");
            out.extend(nonzero(f).map(|(n, v)| format!("{n},{v}\n")));
            out
        }
        Format::Markdown => {
            let mut out = format!(
                "`{label}` to O(q^{})\n\n| n | a(n) |\n|---|---|\n",
                f.prec()
            );
            out.extend(nonzero(f).map(|(n, v)| format!("| {n} | {v} |\n")));
            out
        }
        Format::Json => {
            let doc = SeriesJson {
                form: label,
                weight: f.weight(),
                valuation: (!f.is_zero()).then(|| f.valuation()),
                prec: f.prec(),
                coefficients: nonzero(f)
                    .map(|(n, value)| Coefficient { n, value })
                    .collect(),
            };
            json(&doc)
        }
    }
}

pub fn certificate(c: &Certificate, format: Format) -> String {
    let kind = serde_json::to_value(c.kind).expect("kind serializes");
    let kind = kind.as_str().unwrap_or_default();
    let status = if c.verified {
        "verified"
    } else {
        "NOT verified"
    };
    let params = serde_json::to_value(&c.params).expect("params serialize");
    let params: Vec<String> = params
        .as_object()
        .into_iter()
        .flatten()
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    match format {
        Format::Json => json(c),
        Format::Plain => {
            let mut out = format!("{kind} k={} p={}: {status}\n", c.k, c.p);
            if !params.is_empty() {
                out.push_str(&format!("  params: {}\n", params.join(" ")));
            }
            for check in &c.checks {
                let mark = if check.pass { "ok  " } else { "FAIL" };
                out.push_str(&format!(
                    "  {mark} {}: {} (expected {})\n",
                    check.name, check.observed, check.expected
                ));
            }
            out
        }
        Format::Csv => {
            let mut out = String::from("name,observed,expected,pass\n");
            for check in &c.checks {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    csv_field(&check.name),
                    csv_field(&check.observed),
                    csv_field(&check.expected),
                    check.pass
                ));
            }
            out
        }
        Format::Markdown => {
            let mut out = format!("**{kind}** k = {}, p = {}: {status}\n\n", c.k, c.p);
            if !params.is_empty() {
                out.push_str(&format!("params: {}\n\n", params.join(", ")));
            }
            out.push_str("| check | observed | expected | pass |\n|---|---|---|---|\n");
            for check in &c.checks {
                out.push_str(&format!(
                    "| {} | {} | {} | {} |\n",
                    check.name, check.observed, check.expected, check.pass
                ));
            }
            out
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn table(t: &NonordinaryTable, format: Format) -> String {
    match format {
        Format::Csv => t.to_csv(),
        Format::Markdown => t.to_markdown(),
        Format::Plain => t.to_plain(),
        Format::Json => json(t),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
