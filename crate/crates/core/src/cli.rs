//! The `bigoh` command line.
//!
//! Exit codes: 0 on success, 1 on domain errors, 2 on usage errors.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde::Serialize;

use crate::error::Error;
use crate::family::{
    envelope_csv, gen_theorem1, gen_theorem2, gen_theorem3, gen_theorem3_with, plot_data,
    witness_plan, FamilyFile,
};
use crate::fitter::{fit, read_measurements_csv, validate_bound, FitOptions, FitReport};
use crate::hardy::{parse_uni_sum, reduce_single};
use crate::independence::{
    check_report, exponent_pairs, feasible_interval, is_irreducible, reduce, Certificate,
    DominationJson, Witness,
};
use crate::rational::{fmt_sig, parse_rational, Rational};
use crate::term::parse_sum;

#[derive(Debug, Parser)]
#[command(
    name = "bigoh",
    version,
    about = "Big-oh term independence for two-variable monomial sums"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide independence of every term and whether the sum is irreducible.
    Check {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        json: bool,
    },
    /// Drop dependent terms, keeping an equivalent irreducible sum.
    Reduce {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        json: bool,
    },
    /// Generate an irreducible family.
    Gen {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        theorem: u8,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        beta: Option<String>,
        #[arg(long)]
        a1: Option<String>,
        #[arg(long)]
        b1: Option<String>,
        #[arg(long)]
        cap: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the envelope table `a_j z_i + b_j` as CSV.
    Table {
        /// Family file from `gen`; read from stdin when absent.
        #[arg(long)]
        family: Option<PathBuf>,
        /// Comma-separated witness exponents, e.g. `0.05,0.14`.
        #[arg(long)]
        z: Option<String>,
    },
    /// Write `r(i,j)` and witness CSVs to `<PREFIX>_r.csv` and `<PREFIX>_z.csv`.
    PlotData {
        #[arg(long)]
        family: Option<PathBuf>,
        #[arg(long)]
        out: String,
    },
    /// Fit a concise irreducible bound to `x,y,t` measurements.
    Fit {
        data: PathBuf,
        #[arg(long)]
        max_terms: usize,
        #[arg(long)]
        max_degree: String,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        lattice: Vec<u32>,
        #[arg(long)]
        robust: bool,
        #[arg(long)]
        json: bool,
    },
    /// Compare the growth of two single-variable expressions in `n`.
    Cmp {
        #[arg(allow_hyphen_values = true)]
        lhs: String,
        #[arg(allow_hyphen_values = true)]
        rhs: String,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Runs the CLI; output is buffered so a failing command writes nothing to `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with_stdin(args, &mut io::stdin(), out, err)
}

pub fn run_with_stdin<I, T>(
    args: I,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let first = text.lines().next().unwrap_or("usage error");
                    let _ = writeln!(err, "{first}");
                    2
                }
            };
        }
    };
    let mut buf = Vec::new();
    match dispatch(cli.command, stdin, &mut buf) {
        Ok(()) => {
            if out.write_all(&buf).is_err() {
                return 1;
            }
            0
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn dispatch(cmd: Command, stdin: &mut dyn Read, out: &mut Vec<u8>) -> Result<(), Failure> {
    match cmd {
        Command::Check { expr, json } => check(&expr, json, out),
        Command::Reduce { expr, json } => reduce_cmd(&expr, json, out),
        Command::Gen {
            theorem,
            k,
            alpha,
            beta,
            a1,
            b1,
            cap,
            out: path,
        } => {
            let file = gen(theorem, k, alpha, beta, a1, b1, cap)?;
            let mut text = serde_json::to_string_pretty(&file).expect("family serializes");
            text.push('\n');
            match path {
                Some(p) => fs::write(p, text)?,
                None => out.extend_from_slice(text.as_bytes()),
            }
            Ok(())
        }
        Command::Table { family, z } => {
            let file = load_family(family, stdin)?;
            let f = file.to_family()?;
            let zs = match z {
                Some(list) => parse_list(&list)?,
                None => witness_plan(&f).z,
            };
            out.extend_from_slice(envelope_csv(&f, &zs)?.as_bytes());
            Ok(())
        }
        Command::PlotData {
            family,
            out: prefix,
        } => {
            let f = load_family(family, stdin)?.to_family()?;
            if f.k() < 2 {
                return Err(Failure::Domain(
                    "plot data needs a family with k >= 2".into(),
                ));
            }
            let pd = plot_data(&f);
            fs::write(format!("{prefix}_r.csv"), pd.ratios_csv())?;
            fs::write(format!("{prefix}_z.csv"), pd.z_csv())?;
            Ok(())
        }
        Command::Fit {
            data,
            max_terms,
            max_degree,
            lattice,
            robust,
            json,
        } => {
            let file = fs::File::open(&data)
                .map_err(|e| Failure::Domain(format!("{}: {e}", data.display())))?;
            let measurements = read_measurements_csv(file)?;
            let opts = FitOptions {
                max_terms,
                max_degree: parse_rational(&max_degree).map_err(|e| usage(e.to_string()))?,
                lattice,
                robust,
            };
            let res = fit(&measurements, &opts)?;
            let report = FitReport::new(&res, validate_bound(&measurements, &res));
            if json {
                writeln_json(out, &report);
            } else {
                let text = format!(
                    "bound: {}\nconstant: {}\nslack: {}\ncandidates: {}\nviolations: {}\n",
                    res.bound,
                    fmt_f64(res.constant),
                    fmt_f64(res.slack),
                    res.candidates,
                    report.violations.len()
                );
                out.extend_from_slice(text.as_bytes());
            }
            Ok(())
        }
        Command::Cmp { lhs, rhs } => {
            let f = reduce_single(&parse_uni_sum(&lhs)?)?;
            let g = reduce_single(&parse_uni_sum(&rhs)?)?;
            let sym = match f.compare(&g) {
                std::cmp::Ordering::Less => "<<",
                std::cmp::Ordering::Equal => "~",
                std::cmp::Ordering::Greater => ">>",
            };
            out.extend_from_slice(format!("{f} {sym} {g}\n").as_bytes());
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct RemovedJson {
    term: usize,
    expr: String,
    domination: DominationJson,
    constant: String,
}

#[derive(Serialize)]
struct ReduceJson {
    input: String,
    reduced: String,
    constant: String,
    removed: Vec<RemovedJson>,
}

fn writeln_json(out: &mut Vec<u8>, v: &impl Serialize) {
    serde_json::to_writer(&mut *out, v).expect("json serializes");
    out.push(b'\n');
}

fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        // shortest round-trip digits, then 6 significant digits
        match parse_rational(&format!("{v}")) {
            Ok(r) => fmt_sig(&r, 6),
            Err(_) => format!("{v:e}"),
        }
    } else {
        v.to_string()
    }
}

fn parse_list(list: &str) -> Result<Vec<Rational>, Failure> {
    list.split(',')
        .map(|s| parse_rational(s).map_err(|e| usage(e.to_string())))
        .collect()
}

fn load_family(path: Option<PathBuf>, stdin: &mut dyn Read) -> Result<FamilyFile, Failure> {
    let text = match path {
        Some(p) => {
            fs::read_to_string(&p).map_err(|e| Failure::Domain(format!("{}: {e}", p.display())))?
        }
        None => {
            let mut s = String::new();
            stdin.read_to_string(&mut s)?;
            s
        }
    };
    if text.trim().is_empty() {
        return Err(usage(
            "no family given (use --family FILE or pipe `gen` output)",
        ));
    }
    serde_json::from_str(&text).map_err(|e| Failure::Domain(format!("invalid family file: {e}")))
}

fn rational_arg(name: &str, v: Option<String>) -> Result<Option<Rational>, Failure> {
    v.map(|s| parse_rational(&s).map_err(|_| usage(format!("--{name}: invalid rational `{s}`"))))
        .transpose()
}

fn required(name: &str, v: Option<Rational>) -> Result<Rational, Failure> {
    v.ok_or_else(|| usage(format!("--{name} is required for this theorem")))
}

/// Splits `p/q` into raw integers, keeping the denominator as written.
fn raw_fraction(name: &str, v: Option<String>) -> Result<(BigInt, BigInt), Failure> {
    let s = v.ok_or_else(|| usage(format!("--{name} is required for this theorem")))?;
    let bad = || usage(format!("--{name}: expected P/Q, got `{s}`"));
    let (p, q) = s.split_once('/').unwrap_or((&s, "1"));
    Ok((
        p.trim().parse().map_err(|_| bad())?,
        q.trim().parse().map_err(|_| bad())?,
    ))
}

fn gen(
    theorem: u8,
    k: usize,
    alpha: Option<String>,
    beta: Option<String>,
    a1: Option<String>,
    b1: Option<String>,
    cap: Option<String>,
) -> Result<FamilyFile, Failure> {
    let one = || Rational::from_integer(1.into());
    match theorem {
        1 => {
            let f = gen_theorem1(
                k,
                required("alpha", rational_arg("alpha", alpha)?)?,
                required("beta", rational_arg("beta", beta)?)?,
                rational_arg("a1", a1)?.unwrap_or_else(one),
                rational_arg("b1", b1)?.unwrap_or_else(one),
            )?;
            let mut file = FamilyFile::from_family(&f);
            file.z = Some(witness_plan(&f).z.iter().map(ToString::to_string).collect());
            Ok(file)
        }
        2 => {
            if a1.is_some() || b1.is_some() {
                return Err(usage("theorem 2 derives a1 and b1 from the denominators"));
            }
            let (pa, qa) = raw_fraction("alpha", alpha)?;
            let (pb, qb) = raw_fraction("beta", beta)?;
            let f = gen_theorem2(k, &pa, &qa, &pb, &qb)?;
            let mut file = FamilyFile::from_family(&f);
            file.z = Some(witness_plan(&f).z.iter().map(ToString::to_string).collect());
            Ok(file)
        }
        _ => {
            let cap = required("cap", rational_arg("cap", cap)?)?;
            let a1 = rational_arg("a1", a1)?.unwrap_or_else(one);
            let b1 = rational_arg("b1", b1)?.unwrap_or_else(one);
            let res = match (rational_arg("alpha", alpha)?, rational_arg("beta", beta)?) {
                (Some(al), Some(be)) => gen_theorem3_with(k, cap, a1, b1, al, be)?,
                (None, None) => gen_theorem3(k, cap, a1, b1)?,
                _ => return Err(usage("--alpha and --beta must be given together")),
            };
            let mut file = FamilyFile::from_family(&res.family);
            file.z = Some(res.plan.z.iter().map(ToString::to_string).collect());
            file.bound = Some(res.bound);
            Ok(file)
        }
    }
}

fn check(expr: &str, json: bool, out: &mut Vec<u8>) -> Result<(), Failure> {
    let s = parse_sum(expr)?;
    if s.is_empty() {
        return Err(Failure::Domain("empty sum".into()));
    }
    if json {
        writeln_json(out, &check_report(&s));
        return Ok(());
    }
    let (irreducible, verdicts) = is_irreducible(&s);
    let pairs = exponent_pairs(&s);
    let mut text = format!("sum: {s}\n");
    for v in &verdicts {
        let t = &s.terms()[v.term];
        let line = match &v.certificate {
            Certificate::Independent(Witness::FiniteZ(z)) => {
                let interval = feasible_interval(&s, v.term)?;
                format!("independent  z = {z}  interval {interval}")
            }
            Certificate::Independent(Witness::XDirection) => "independent  x-direction".to_string(),
            Certificate::Dependent(d) if d.j == d.l => {
                format!("dependent  dominated by term {}", d.j + 1)
            }
            Certificate::Dependent(d) => format!(
                "dependent  ({}, {}) <= {}*({}, {}) + {}*({}, {})",
                pairs[v.term].0,
                pairs[v.term].1,
                d.lambda,
                pairs[d.j].0,
                pairs[d.j].1,
                Rational::from_integer(1.into()) - &d.lambda,
                pairs[d.l].0,
                pairs[d.l].1
            ),
        };
        text.push_str(&format!("term {}: {t}  {line}\n", v.term + 1));
    }
    text.push_str(&format!(
        "irreducible: {}\n",
        if irreducible { "yes" } else { "no" }
    ));
    out.extend_from_slice(text.as_bytes());
    Ok(())
}

fn reduce_cmd(expr: &str, json: bool, out: &mut Vec<u8>) -> Result<(), Failure> {
    let s = parse_sum(expr)?;
    if s.is_empty() {
        return Err(Failure::Domain("empty sum".into()));
    }
    let red = reduce(&s);
    if json {
        let report = ReduceJson {
            input: s.print(),
            reduced: red.sum.print(),
            constant: red.constant.to_string(),
            removed: red
                .removed
                .iter()
                .map(|r| RemovedJson {
                    term: r.index,
                    expr: s.terms()[r.index].to_string(),
                    domination: DominationJson {
                        j: r.cert.j,
                        l: r.cert.l,
                        lambda: r.cert.lambda.to_string(),
                    },
                    constant: r.constant.to_string(),
                })
                .collect(),
        };
        writeln_json(out, &report);
        return Ok(());
    }
    let mut text = format!("reduced: {}\nconstant: {}\n", red.sum, red.constant);
    for r in &red.removed {
        text.push_str(&format!(
            "removed: {} <= {} * ({})\n",
            s.terms()[r.index],
            r.constant,
            red.sum
        ));
    }
    out.extend_from_slice(text.as_bytes());
    Ok(())
}
