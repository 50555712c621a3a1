//! `modform`: q-expansions, non-ordinarity certificates and weight tables
//! for level-one modular forms.
//!
//! Exit codes: 0 success or verified, 1 unverified certificate, 2
//! cross-verification mismatch, 3 precondition or usage error.

mod expr;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use modform_core::hecke::dimensions;
use modform_core::nonordinary::{
    certify_hatada, certify_nilpotency, certify_theorem1, certify_theorem2,
    certify_weight_criterion, solve_part1, table_cell, weight_criterion, Decomposition,
};
use modform_core::{Certificate, Error, NonordinaryTable};
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
    Plain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Theorem1,
    Theorem2,
    Nilpotency,
    Hatada,
    WeightCriterion,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Modp,
}

#[derive(Debug, Parser)]
#[command(
    name = "modform",
    version,
    about = "Exact q-expansions and non-ordinarity certificates for level-one modular forms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Precision: coefficients are computed through q^(prec-1).
    #[arg(long, global = true, value_parser = clap::value_parser!(i64).range(1..))]
    prec: Option<i64>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for table cells.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: Option<u32>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the q-expansion of a form expression such as `delta*E6*E4^2`.
    Expand { form: String },
    /// Weights at which every eigenform is certified non-ordinary.
    Table {
        #[arg(long, value_delimiter = ',', value_parser = parse_prime, default_value = "2,3,5,7,11,13,17,19")]
        primes: Vec<u64>,
        /// Inclusive even weight range `K_MIN..K_MAX`.
        #[arg(long, value_parser = parse_range, default_value = "12..42")]
        range: (i64, i64),
        /// Also check charpoly(T_p) = x^dim (mod p) for every cell.
        #[arg(long)]
        cross_verify: bool,
        /// Compare against a CSV table; any difference exits with code 2.
        #[arg(long)]
        expect: Option<PathBuf>,
    },
    /// Build and check a certificate.
    Certify {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long, allow_negative_numbers = true, value_parser = parse_even)]
        k: i64,
        #[arg(long, value_parser = parse_prime)]
        p: u64,
        #[arg(long)]
        m: Option<i64>,
        #[arg(long)]
        b: Option<u32>,
        #[arg(long, default_value_t = 1)]
        u: u32,
        #[arg(long)]
        v: Option<u32>,
        /// `R,S,T` with `2 - k = R (p - 1) + S p^T`.
        #[arg(long, value_parser = parse_decomposition)]
        decomposition: Option<Decomposition>,
        /// Form expression; defaults to the eigenform of weight k.
        #[arg(long)]
        form: Option<String>,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
    },
    /// The normalized eigenform of a weight with one-dimensional cusp space.
    Eigenform {
        #[arg(long, value_parser = parse_even)]
        k: i64,
    },
}

fn parse_prime(s: &str) -> Result<u64, String> {
    let p: u64 = s
        .trim()
        .parse()
        .map_err(|_| format!("'{s}' is not an integer"))?;
    if !modform_core::arith::is_prime(p) {
        return Err(format!("{p} is not prime"));
    }
    Ok(p)
}

fn parse_even(s: &str) -> Result<i64, String> {
    let k: i64 = s.parse().map_err(|_| format!("'{s}' is not an integer"))?;
    if k % 2 != 0 {
        return Err(format!("weight {k} is odd"));
    }
    Ok(k)
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("'{s}' is not of the form K_MIN..K_MAX"))?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    Ok((parse_even(lo)?, parse_even(hi)?))
}

fn parse_decomposition(s: &str) -> Result<Decomposition, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [r, s_, t] = parts[..] else {
        return Err(format!("'{s}' is not R,S,T"));
    };
    let bad = |x: &str| format!("'{x}' is not an integer");
    Ok(Decomposition {
        r: r.parse().map_err(|_| bad(r))?,
        s: s_.parse().map_err(|_| bad(s_))?,
        t: t.parse().map_err(|_| bad(t))?,
    })
}

/// A failure that ends the run with exit code 3.
#[derive(Debug)]
struct Failure {
    code: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: e.code(),
            message: e.to_string(),
        }
    }
}

impl From<expr::ParseError> for Failure {
    fn from(e: expr::ParseError) -> Self {
        Failure {
            code: "ParseError",
            message: e.to_string(),
        }
    }
}

fn failure(code: &'static str, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

/// Rendered output and the exit code it implies.
struct Output {
    text: String,
    status: u8,
    notes: Vec<String>,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            status: 0,
            notes: Vec::new(),
        }
    }
}

fn expand(label: &str, prec: i64, format: Format) -> Result<Output, Failure> {
    let e = expr::parse(label)?;
    let f = expr::evaluate(&e, prec)?;
    Ok(Output::ok(render::series(label, &f, format)))
}

fn table(
    cli: &Cli,
    primes: &[u64],
    range: (i64, i64),
    cross_verify: bool,
    expect: Option<&PathBuf>,
) -> Result<Output, Failure> {
    let weights = NonordinaryTable::weights_in(range.0, range.1)?;
    let jobs: Vec<(u64, i64)> = primes
        .iter()
        .flat_map(|&p| weights.iter().map(move |&k| (p, k)))
        .collect();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.jobs {
        pool = pool.num_threads(n as usize);
    }
    let pool = pool
        .build()
        .map_err(|e| failure("ThreadPool", e.to_string()))?;
    let cells = pool.install(|| {
        jobs.par_iter()
            .map(|&(p, k)| table_cell(k, p, cross_verify))
            .collect::<modform_core::Result<Vec<_>>>()
    })?;
    let t = NonordinaryTable::from_cells(primes.to_vec(), weights, cells);
    let mut out = Output::ok(render::table(&t, cli.format.unwrap_or(Format::Csv)));
    for c in t.mismatches() {
        out.status = 2;
        out.notes.push(format!(
            "mismatch: p = {}, k = {} is marked but not confirmed",
            c.p, c.k
        ));
    }
    if let Some(path) = expect {
        let want = std::fs::read_to_string(path)
            .map_err(|e| failure("Io", format!("{}: {e}", path.display())))?;
        let got = t.to_csv();
        for (i, (w, g)) in want.lines().zip(got.lines()).enumerate() {
            if w != g {
                out.status = 2;
                out.notes
                    .push(format!("mismatch: line {} is '{g}', expected '{w}'", i + 1));
            }
        }
        if want.lines().count() != got.lines().count() {
            out.status = 2;
            out.notes.push(format!(
                "mismatch: {} lines, expected {}",
                got.lines().count(),
                want.lines().count()
            ));
        }
    }
    for c in t.extras() {
        out.notes.push(format!(
            "note: p = {}, k = {} is nilpotent but not marked",
            c.p, c.k
        ));
    }
    Ok(out)
}

fn certificate_form(
    form: &Option<String>,
    k: i64,
    prec: i64,
) -> Result<modform_core::QSeries, Failure> {
    let src = match form {
        Some(s) => s.clone(),
        None => {
            let (_, dim) = dimensions(k)?;
            if dim != 1 {
                return Err(Error::DimensionNotOne { k, dim }.into());
            }
            format!("eigenform{k}")
        }
    };
    Ok(expr::evaluate(&expr::parse(&src)?, prec)?)
}

fn certify(cli: &Cli) -> Result<Output, Failure> {
    let Command::Certify {
        kind,
        k,
        p,
        m,
        b,
        u,
        v,
        decomposition,
        ref form,
        mode,
    } = cli.command
    else {
        unreachable!("certify called with another command")
    };
    let cert: Certificate = match kind {
        Kind::Theorem1 => {
            let m = match m {
                Some(m) => m,
                None => weight_criterion(k, p)
                    .m
                    .ok_or(Error::CriterionFails { k, p, m: None })?,
            };
            let ex = solve_part1(p, k, m, b)?;
            let pb = (p as i64).pow(ex.b);
            let f = certificate_form(form, k, cli.prec.unwrap_or(pb + 1))?;
            certify_theorem1(&f, k, p, m, Some(ex.b), mode == Mode::Exact)?
        }
        Kind::Theorem2 => {
            let src = form
                .as_ref()
                .ok_or_else(|| failure("MissingForm", "theorem2 needs --form"))?;
            let v = v.unwrap_or(u);
            let pv = (p as i64)
                .checked_pow(v)
                .ok_or_else(|| failure("Precondition", format!("{p}^{v} overflows")))?;
            let f = expr::evaluate(&expr::parse(src)?, cli.prec.unwrap_or(pv + 1))?;
            certify_theorem2(&f, k, p, u, v, decomposition)?
        }
        Kind::Nilpotency => certify_nilpotency(k, p)?,
        Kind::Hatada => certify_hatada(k, p)?,
        Kind::WeightCriterion => certify_weight_criterion(k, p)?,
    };
    let text = render::certificate(&cert, cli.format.unwrap_or(Format::Json));
    Ok(Output {
        text,
        status: if cert.verified { 0 } else { 1 },
        notes: Vec::new(),
    })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Expand { form } => expand(
            form,
            cli.prec.unwrap_or(20),
            cli.format.unwrap_or(Format::Plain),
        ),
        Command::Eigenform { k } => {
            let prec = cli.prec.unwrap_or(20);
            let f = modform_core::hecke::eigenform(*k, prec)?.with_weight(Some(*k));
            let label = format!("eigenform{k}");
            Ok(Output::ok(render::series(
                &label,
                &f,
                cli.format.unwrap_or(Format::Plain),
            )))
        }
        Command::Table {
            primes,
            range,
            cross_verify,
            expect,
        } => table(cli, primes, *range, *cross_verify, expect.as_ref()),
        Command::Certify { .. } => certify(cli),
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| failure("Io", format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            match stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
            {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    Err(failure("Io", e.to_string()))
                }
                _ => Ok(()),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = run(&cli).and_then(|out| emit(&cli, &out.text).map(|_| out));
    match result {
        Ok(out) => {
            for note in &out.notes {
                eprintln!("{note}");
            }
            ExitCode::from(out.status)
        }
        Err(f) => {
            eprintln!("error[{}]: {}", f.code, f.message);
            ExitCode::from(3)
        }
    }
}
