//! Infers a concise irreducible polynomial bound from cost measurements.
//!
//! Candidates are irreducible sets of unit-coefficient monomials over an
//! exponent lattice. Irreducibility is hereditary (dropping a term only
//! shrinks the hull the others must escape), so a depth-first search that
//! prunes on irreducibility enumerates exactly the irreducible sets.

use std::io::Read;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::independence::is_irreducible_pairs;
use crate::rational::{to_f64, Rational};
use crate::term::TermSum;

/// Minimum number of measurements accepted by [`fit`].
pub const MIN_MEASUREMENTS: usize = 8;
/// Minimum `max / min` spread required in each variable.
pub const MIN_SPREAD: f64 = 4.0;
/// Candidates whose slack is within this factor of the best slack compete on conciseness.
pub const SLACK_TOLERANCE: f64 = 2.0;
/// Quantile used for the constant under `robust`.
pub const ROBUST_QUANTILE: f64 = 0.99;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Measurement {
    pub x: f64,
    pub y: f64,
    pub t: f64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FitOptions {
    pub max_terms: usize,
    pub max_degree: Rational,
    /// Allowed exponent denominators.
    pub lattice: Vec<u32>,
    pub robust: bool,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            max_terms: 3,
            max_degree: Rational::from_integer(3.into()),
            lattice: vec![1],
            robust: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub bound: TermSum,
    pub constant: f64,
    /// `max(c g / t) / min(c g / t)` over the data.
    pub slack: f64,
    pub candidates: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub row: usize,
    pub x: f64,
    pub y: f64,
    pub t: f64,
    /// `t / (constant * g)`, above 1 for a violation.
    pub excess: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub slack: f64,
    pub max_ratio: f64,
}

/// Wire form `{"bound", "constant", "slack", "violations"}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitReport {
    pub bound: String,
    pub constant: f64,
    pub slack: f64,
    pub violations: Vec<Violation>,
}

impl FitReport {
    pub fn new(result: &FitResult, validation: ValidationReport) -> Self {
        let mut violations = validation.violations;
        sort_violations(&mut violations);
        FitReport {
            bound: result.bound.print(),
            constant: result.constant,
            slack: result.slack,
            violations,
        }
    }
}

pub fn read_measurements_csv<R: Read>(reader: R) -> Result<Vec<Measurement>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| Error::InvalidMeasurement {
            row: 0,
            msg: e.to_string(),
        })?
        .clone();
    if headers.iter().collect::<Vec<_>>() != ["x", "y", "t"] {
        return Err(Error::InvalidMeasurement {
            row: 0,
            msg: format!(
                "expected header x,y,t, found {}",
                headers.iter().collect::<Vec<_>>().join(",")
            ),
        });
    }
    rdr.deserialize()
        .enumerate()
        .map(|(i, rec)| {
            let m: Measurement = rec.map_err(|e| Error::InvalidMeasurement {
                row: i + 1,
                msg: e.to_string(),
            })?;
            let positive = [m.x, m.y, m.t].iter().all(|v| v.is_finite() && *v > 0.0);
            if !positive {
                return Err(Error::InvalidMeasurement {
                    row: i + 1,
                    msg: format!(
                        "values must be positive and finite (got {}, {}, {})",
                        m.x, m.y, m.t
                    ),
                });
            }
            Ok(m)
        })
        .collect()
}

fn check_data(data: &[Measurement]) -> Result<()> {
    if data.len() < MIN_MEASUREMENTS {
        return Err(Error::InsufficientData(format!(
            "{} measurements, need at least {MIN_MEASUREMENTS}",
            data.len()
        )));
    }
    for (row, m) in data.iter().enumerate() {
        let ok = m.x.is_finite() && m.y.is_finite() && m.t.is_finite();
        if !ok || m.x < 1.0 || m.y < 1.0 || m.t <= 0.0 {
            return Err(Error::InvalidMeasurement {
                row: row + 1,
                msg: format!("need x >= 1, y >= 1, t > 0 (got {}, {}, {})", m.x, m.y, m.t),
            });
        }
    }
    for (name, proj) in [
        ("x", (|m: &Measurement| m.x) as fn(&Measurement) -> f64),
        ("y", |m| m.y),
    ] {
        let lo = data.iter().map(proj).fold(f64::INFINITY, f64::min);
        let hi = data.iter().map(proj).fold(f64::NEG_INFINITY, f64::max);
        if hi < MIN_SPREAD * lo {
            return Err(Error::InsufficientData(format!(
                "{name} spans {lo}..{hi}, need a {MIN_SPREAD}x range"
            )));
        }
    }
    Ok(())
}

/// Sorted exponent values `p/q` with `q` in the lattice and `0 <= p/q <= max_degree`.
pub fn lattice_values(max_degree: &Rational, lattice: &[u32]) -> Vec<Rational> {
    let mut vals = Vec::new();
    for &q in lattice {
        if q == 0 {
            continue;
        }
        let top = (max_degree * Rational::from_integer(q.into()))
            .floor()
            .to_integer();
        let top = top.to_u64().unwrap_or(0);
        for p in 0..=top {
            vals.push(Rational::new(BigInt::from(p), BigInt::from(q)));
        }
    }
    vals.sort();
    vals.dedup();
    vals
}

/// Every irreducible exponent set with at most `max_terms` lattice points.
pub fn enumerate_candidates(opts: &FitOptions) -> Result<Vec<Vec<(Rational, Rational)>>> {
    if opts.max_degree < Rational::from_integer(0.into()) {
        return Err(Error::EmptyCandidateSpace);
    }
    let vals = lattice_values(&opts.max_degree, &opts.lattice);
    let points: Vec<(Rational, Rational)> = vals
        .iter()
        .flat_map(|a| vals.iter().map(move |b| (a.clone(), b.clone())))
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    extend(&points, 0, opts.max_terms, &mut current, &mut out);
    if out.is_empty() {
        return Err(Error::EmptyCandidateSpace);
    }
    Ok(out)
}

fn extend(
    points: &[(Rational, Rational)],
    start: usize,
    max_terms: usize,
    current: &mut Vec<(Rational, Rational)>,
    out: &mut Vec<Vec<(Rational, Rational)>>,
) {
    if current.len() == max_terms {
        return;
    }
    for idx in start..points.len() {
        current.push(points[idx].clone());
        if is_irreducible_pairs(current) {
            out.push(current.clone());
            extend(points, idx + 1, max_terms, current, out);
        }
        current.pop();
    }
}

struct LogData {
    lx: Vec<f64>,
    ly: Vec<f64>,
    lt: Vec<f64>,
}

impl LogData {
    fn new(data: &[Measurement]) -> Self {
        LogData {
            lx: data.iter().map(|m| m.x.ln()).collect(),
            ly: data.iter().map(|m| m.y.ln()).collect(),
            lt: data.iter().map(|m| m.t.ln()).collect(),
        }
    }

    /// `ln t - ln g` per measurement, with `g` summed in log space.
    fn log_ratios(&self, exps: &[(f64, f64)]) -> Vec<f64> {
        let mut logs = vec![0.0; exps.len()];
        (0..self.lt.len())
            .map(|i| {
                for (slot, (a, b)) in logs.iter_mut().zip(exps) {
                    *slot = a * self.lx[i] + b * self.ly[i];
                }
                let m = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                let lg = m + logs.iter().map(|v| (v - m).exp()).sum::<f64>().ln();
                self.lt[i] - lg
            })
            .collect()
    }
}

fn float_exps(s: &TermSum) -> Vec<(f64, f64)> {
    s.terms()
        .iter()
        .map(|t| (to_f64(t.a()), to_f64(t.b())))
        .collect()
}

/// Ratios `t / g` per measurement, computed the same way by fit and validation.
fn ratios(data: &[Measurement], bound: &TermSum) -> Vec<f64> {
    LogData::new(data)
        .log_ratios(&float_exps(bound))
        .into_iter()
        .map(f64::exp)
        .collect()
}

fn constant_of(ratios: &[f64], robust: bool) -> f64 {
    if robust {
        let mut sorted = ratios.to_vec();
        sorted.sort_by(f64::total_cmp);
        let rank = (ROBUST_QUANTILE * sorted.len() as f64).ceil() as usize;
        sorted[rank.clamp(1, sorted.len()) - 1]
    } else {
        ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

fn slack_of(ratios: &[f64]) -> f64 {
    let hi = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    hi / lo
}

struct Scored {
    idx: usize,
    terms: usize,
    log_slack: f64,
    degree: Rational,
}

/// Fits the most concise irreducible bound whose slack is within
/// [`SLACK_TOLERANCE`] of the best achievable over the candidate space.
pub fn fit(data: &[Measurement], opts: &FitOptions) -> Result<FitResult> {
    check_data(data)?;
    let candidates = enumerate_candidates(opts)?;
    let logs = LogData::new(data);
    let scored: Vec<Scored> = candidates
        .par_iter()
        .enumerate()
        .map(|(idx, pairs)| {
            let exps: Vec<(f64, f64)> = pairs.iter().map(|(a, b)| (to_f64(a), to_f64(b))).collect();
            let r = logs.log_ratios(&exps);
            let hi = r.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let lo = r.iter().copied().fold(f64::INFINITY, f64::min);
            Scored {
                idx,
                terms: pairs.len(),
                log_slack: hi - lo,
                degree: pairs.iter().map(|(a, b)| a + b).sum(),
            }
        })
        .collect();
    let best = scored
        .iter()
        .map(|s| s.log_slack)
        .fold(f64::INFINITY, f64::min);
    let threshold = best + SLACK_TOLERANCE.ln() + 1e-12;
    let winner = scored
        .iter()
        .filter(|s| s.log_slack <= threshold)
        .min_by(|p, q| {
            p.terms
                .cmp(&q.terms)
                .then_with(|| p.log_slack.total_cmp(&q.log_slack))
                .then_with(|| p.degree.cmp(&q.degree))
                .then_with(|| p.idx.cmp(&q.idx))
        })
        .ok_or(Error::EmptyCandidateSpace)?;
    let bound = TermSum::from_exponents(&candidates[winner.idx]);
    let r = ratios(data, &bound);
    Ok(FitResult {
        constant: constant_of(&r, opts.robust),
        slack: slack_of(&r),
        bound,
        candidates: candidates.len(),
    })
}

/// Recomputes validity and slack of `result` on `data` from scratch.
pub fn validate_bound(data: &[Measurement], result: &FitResult) -> ValidationReport {
    let r = ratios(data, &result.bound);
    let violations = data
        .iter()
        .zip(&r)
        .enumerate()
        .filter(|(_, (_, &ratio))| ratio > result.constant)
        .map(|(row, (m, &ratio))| Violation {
            row: row + 1,
            x: m.x,
            y: m.y,
            t: m.t,
            excess: ratio / result.constant,
        })
        .collect();
    ValidationReport {
        violations,
        slack: slack_of(&r),
        max_ratio: r.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    }
}

/// Sorts ratios so equal inputs always produce the same report order.
pub fn sort_violations(v: &mut [Violation]) {
    v.sort_by(|p, q| q.excess.total_cmp(&p.excess).then(p.row.cmp(&q.row)));
}
