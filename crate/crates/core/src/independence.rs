//! Per-term independence, irreducibility, and reduction of monomial sums.
//!
//! Along the valuation `x = y^z` the term `x^a y^b` grows like `y^(a z + b)`,
//! so each term is a line `z -> a z + b`. Term `i` is independent exactly
//! when its line strictly tops every other line at some `z >= 0`, or when
//! its slope `a_i` is strictly maximal (the `z -> oo` direction). Otherwise
//! `(a_i, b_i)` sits under a convex combination of two other exponent pairs
//! and the weighted AM-GM inequality bounds it on `x, y >= 1`.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::term::TermSum;

/// `r(i,j) = (b_i - b_j) / (a_j - a_i)`, the crossing abscissa of two exponent lines.
pub fn ratio_r(ai: &Rational, bi: &Rational, aj: &Rational, bj: &Rational) -> Result<Rational> {
    let den = aj - ai;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok((bi - bj) / den)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Bound {
    Unbounded,
    Open(Rational),
    Closed(Rational),
}

impl Bound {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            Bound::Unbounded => None,
            Bound::Open(v) | Bound::Closed(v) => Some(v),
        }
    }

    pub fn is_strict(&self) -> bool {
        matches!(self, Bound::Open(_))
    }
}

/// The set `{ z >= 0 : a_i z + b_i > a_j z + b_j for all j != i }`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FeasibleInterval {
    pub lower: Bound,
    pub upper: Bound,
    /// `a_i` is strictly larger than every other `a_j`.
    pub x_direction: bool,
}

impl FeasibleInterval {
    pub fn contains(&self, z: &Rational) -> bool {
        let above = match &self.lower {
            Bound::Unbounded => true,
            Bound::Open(l) => z > l,
            Bound::Closed(l) => z >= l,
        };
        let below = match &self.upper {
            Bound::Unbounded => true,
            Bound::Open(u) => z < u,
            Bound::Closed(u) => z <= u,
        };
        above && below
    }

    pub fn is_empty(&self) -> bool {
        match (self.lower.value(), self.upper.value()) {
            (Some(l), Some(u)) => {
                if self.lower.is_strict() || self.upper.is_strict() {
                    l >= u
                } else {
                    l > u
                }
            }
            _ => false,
        }
    }

    /// Deterministic interior point: midpoint when bounded, `lower + 1` when
    /// only bounded below, and `1` for the whole half-line.
    pub fn witness(&self) -> Option<Rational> {
        if self.is_empty() {
            return None;
        }
        let z = match (self.lower.value(), self.upper.value()) {
            (Some(l), Some(u)) => (l + u) / int(2),
            (Some(l), None) => l + Rational::one(),
            (None, Some(u)) => u - Rational::one(),
            (None, None) => Rational::one(),
        };
        Some(z)
    }
}

impl fmt::Display for FeasibleInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "{{}}");
        }
        match &self.lower {
            Bound::Unbounded => write!(f, "(-inf")?,
            Bound::Open(v) => write!(f, "({v}")?,
            Bound::Closed(v) => write!(f, "[{v}")?,
        }
        match &self.upper {
            Bound::Unbounded => write!(f, ", inf)"),
            Bound::Open(v) => write!(f, ", {v})"),
            Bound::Closed(v) => write!(f, ", {v}]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Witness {
    /// Term dominates every other exponent along `x = y^z`.
    FiniteZ(Rational),
    /// Term has strictly the largest `x` exponent; `y` fixed, `x -> oo`.
    XDirection,
}

impl Witness {
    pub fn verify(&self, pairs: &[(Rational, Rational)], i: usize) -> bool {
        let Some((ai, bi)) = pairs.get(i) else {
            return false;
        };
        let others = pairs.iter().enumerate().filter(|&(j, _)| j != i);
        match self {
            Witness::FiniteZ(z) => {
                !z.is_negative() && {
                    let own = ai * z + bi;
                    others.into_iter().all(|(_, (aj, bj))| own > aj * z + bj)
                }
            }
            Witness::XDirection => others.into_iter().all(|(_, (aj, _))| ai > aj),
        }
    }
}

/// `(a_i, b_i) <= lambda (a_j, b_j) + (1 - lambda) (a_l, b_l)` componentwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DominationCert {
    pub j: usize,
    pub l: usize,
    pub lambda: Rational,
}

impl DominationCert {
    pub fn verify(&self, pairs: &[(Rational, Rational)], i: usize) -> bool {
        let (Some((ai, bi)), Some((aj, bj)), Some((al, bl))) =
            (pairs.get(i), pairs.get(self.j), pairs.get(self.l))
        else {
            return false;
        };
        if self.j == i || self.l == i {
            return false;
        }
        if self.lambda.is_negative() || self.lambda > Rational::one() {
            return false;
        }
        let mu = Rational::one() - &self.lambda;
        ai <= &(&self.lambda * aj + &mu * al) && bi <= &(&self.lambda * bj + &mu * bl)
    }

    /// Smallest `C` with `T_i <= C * (T_j + T_l)` on `x, y >= 1`, from the
    /// weighted AM-GM bound `u^l v^(1-l) <= l u + (1-l) v`.
    pub fn constant(&self, sum: &TermSum, i: usize) -> Rational {
        let t = sum.terms();
        let ci = t[i].coeff();
        let wj = &self.lambda / t[self.j].coeff();
        let wl = (Rational::one() - &self.lambda) / t[self.l].coeff();
        let w = if self.j == self.l {
            wj + wl
        } else {
            wj.max(wl)
        };
        ci * w
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Certificate {
    Independent(Witness),
    Dependent(DominationCert),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Verdict {
    pub term: usize,
    pub certificate: Certificate,
}

impl Verdict {
    pub fn independent(&self) -> bool {
        matches!(self.certificate, Certificate::Independent(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.certificate {
            Certificate::Independent(w) => Some(w),
            Certificate::Dependent(_) => None,
        }
    }

    pub fn domination(&self) -> Option<&DominationCert> {
        match &self.certificate {
            Certificate::Dependent(d) => Some(d),
            Certificate::Independent(_) => None,
        }
    }

    pub fn verify(&self, pairs: &[(Rational, Rational)]) -> bool {
        match &self.certificate {
            Certificate::Independent(w) => w.verify(pairs, self.term),
            Certificate::Dependent(d) => d.verify(pairs, self.term),
        }
    }

    pub fn to_json(&self) -> VerdictJson {
        let (witness, domination) = match &self.certificate {
            Certificate::Independent(Witness::FiniteZ(z)) => (
                Some(WitnessJson {
                    kind: "finite-z",
                    z: Some(z.to_string()),
                }),
                None,
            ),
            Certificate::Independent(Witness::XDirection) => (
                Some(WitnessJson {
                    kind: "x-direction",
                    z: None,
                }),
                None,
            ),
            Certificate::Dependent(d) => (
                None,
                Some(DominationJson {
                    j: d.j,
                    l: d.l,
                    lambda: d.lambda.to_string(),
                }),
            ),
        };
        VerdictJson {
            term: self.term,
            independent: self.independent(),
            witness,
            domination,
        }
    }
}

/// Wire form of a [`Verdict`]; rationals are `"p/q"` strings.
#[derive(Debug, Clone, Serialize)]
pub struct VerdictJson {
    pub term: usize,
    pub independent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub domination: Option<DominationJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessJson {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DominationJson {
    pub j: usize,
    pub l: usize,
    pub lambda: String,
}

/// Wire form of a whole-sum check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub sum: String,
    pub irreducible: bool,
    pub verdicts: Vec<VerdictJson>,
}

pub fn check_report(s: &TermSum) -> CheckReport {
    let (irreducible, verdicts) = is_irreducible(s);
    CheckReport {
        sum: s.print(),
        irreducible,
        verdicts: verdicts.iter().map(Verdict::to_json).collect(),
    }
}

pub fn exponent_pairs(s: &TermSum) -> Vec<(Rational, Rational)> {
    s.terms()
        .iter()
        .map(|t| (t.a().clone(), t.b().clone()))
        .collect()
}

fn interval_for(pairs: &[(Rational, Rational)], i: usize) -> FeasibleInterval {
    let (ai, bi) = &pairs[i];
    let mut lower = Bound::Closed(Rational::zero());
    let mut upper = Bound::Unbounded;
    let mut x_direction = true;
    let mut empty = false;
    for (j, (aj, bj)) in pairs.iter().enumerate() {
        if j == i {
            continue;
        }
        if aj >= ai {
            x_direction = false;
        }
        if aj == ai {
            if bj >= bi {
                empty = true;
            }
            continue;
        }
        let r = (bi - bj) / (aj - ai);
        if aj < ai {
            // z > r
            let tighter = match &lower {
                Bound::Closed(l) => r >= *l,
                Bound::Open(l) => r > *l,
                Bound::Unbounded => true,
            };
            if tighter {
                lower = Bound::Open(r);
            }
        } else {
            // z < r
            let tighter = match &upper {
                Bound::Unbounded => true,
                Bound::Open(u) | Bound::Closed(u) => r < *u,
            };
            if tighter {
                upper = Bound::Open(r);
            }
        }
    }
    if empty {
        upper = Bound::Open(Rational::zero());
        lower = Bound::Closed(Rational::zero());
    }
    FeasibleInterval {
        lower,
        upper,
        x_direction,
    }
}

/// Exact interval of witness exponents `z >= 0` for term `i`.
pub fn feasible_interval(s: &TermSum, i: usize) -> Result<FeasibleInterval> {
    s.get(i)?;
    Ok(interval_for(&exponent_pairs(s), i))
}

/// Independence decision on raw exponent pairs, without building a certificate.
pub fn is_independent_pairs(pairs: &[(Rational, Rational)], i: usize) -> bool {
    let f = interval_for(pairs, i);
    f.x_direction || !f.is_empty()
}

/// Upper-right convex chain of the given points: a ascending, b descending,
/// strictly concave. Returns indices into `pairs`.
fn upper_right_chain(pairs: &[(Rational, Rational)], members: &[usize]) -> Vec<usize> {
    let mut pts: Vec<usize> = members.to_vec();
    pts.sort_by(|&p, &q| pairs[p].cmp(&pairs[q]));
    // Pareto maxima: scanning from the right, keep points whose b beats all to their right
    let mut pareto: Vec<usize> = Vec::new();
    let mut best_b: Option<&Rational> = None;
    for &p in pts.iter().rev() {
        if best_b.is_none_or(|b| &pairs[p].1 > b) {
            pareto.push(p);
            best_b = Some(&pairs[p].1);
        }
    }
    pareto.reverse();
    // concave hull over the staircase (monotone chain, drop non-strict turns)
    let mut hull: Vec<usize> = Vec::new();
    for p in pareto {
        while hull.len() >= 2 {
            let o = &pairs[hull[hull.len() - 2]];
            let m = &pairs[hull[hull.len() - 1]];
            let n = &pairs[p];
            let cross = (&m.0 - &o.0) * (&n.1 - &o.1) - (&m.1 - &o.1) * (&n.0 - &o.0);
            // keep only clockwise (right) turns
            if cross >= Rational::zero() {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

fn domination_cert(pairs: &[(Rational, Rational)], i: usize) -> Option<DominationCert> {
    let (ai, bi) = &pairs[i];
    let others: Vec<usize> = (0..pairs.len()).filter(|&j| j != i).collect();
    if let Some(&j) = others
        .iter()
        .find(|&&j| &pairs[j].0 >= ai && &pairs[j].1 >= bi)
    {
        return Some(DominationCert {
            j,
            l: j,
            lambda: Rational::one(),
        });
    }
    let chain = upper_right_chain(pairs, &others);
    for w in chain.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let (a_lo, b_lo) = &pairs[lo];
        let (a_hi, b_hi) = &pairs[hi];
        if a_lo <= ai && ai <= a_hi {
            let lambda = (ai - a_lo) / (a_hi - a_lo);
            let b_at = &lambda * b_hi + (Rational::one() - &lambda) * b_lo;
            if &b_at >= bi {
                let cert = DominationCert {
                    j: hi,
                    l: lo,
                    lambda,
                };
                debug_assert!(cert.verify(pairs, i));
                return Some(cert);
            }
        }
    }
    None
}

/// Decides whether term `i` is independent in `s` and returns a certificate.
pub fn check_term(s: &TermSum, i: usize) -> Result<Verdict> {
    s.get(i)?;
    let pairs = exponent_pairs(s);
    Ok(check_pairs(&pairs, i))
}

pub(crate) fn check_pairs(pairs: &[(Rational, Rational)], i: usize) -> Verdict {
    let interval = interval_for(pairs, i);
    let certificate = if let Some(z) = interval.witness() {
        Certificate::Independent(Witness::FiniteZ(z))
    } else if interval.x_direction {
        Certificate::Independent(Witness::XDirection)
    } else {
        let cert = domination_cert(pairs, i)
            .expect("a term with no witness lies under the hull of the others");
        Certificate::Dependent(cert)
    };
    Verdict {
        term: i,
        certificate,
    }
}

/// True iff every term is independent, with one verdict per term.
pub fn is_irreducible(s: &TermSum) -> (bool, Vec<Verdict>) {
    let pairs = exponent_pairs(s);
    let verdicts: Vec<Verdict> = (0..pairs.len()).map(|i| check_pairs(&pairs, i)).collect();
    (verdicts.iter().all(Verdict::independent), verdicts)
}

pub fn is_irreducible_pairs(pairs: &[(Rational, Rational)]) -> bool {
    (0..pairs.len()).all(|i| is_independent_pairs(pairs, i))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemovedTerm {
    /// Index of the removed term in the input sum.
    pub index: usize,
    /// Certificate with `j`, `l` indexing the reduced sum.
    pub cert: DominationCert,
    /// `T <= constant * reduced` pointwise on `x, y >= 1`.
    pub constant: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub sum: TermSum,
    /// `reduced <= input <= constant * reduced` on `x, y >= 1`.
    pub constant: Rational,
    pub removed: Vec<RemovedTerm>,
}

/// Drops every dependent term, keeping the strict vertices of the upper-right hull.
pub fn reduce(s: &TermSum) -> Reduction {
    let pairs = exponent_pairs(s);
    let keep: Vec<usize> = (0..pairs.len())
        .filter(|&i| is_independent_pairs(&pairs, i))
        .collect();
    let kept = TermSum::new(keep.iter().map(|&i| s.terms()[i].clone()));
    let kept_pairs = exponent_pairs(&kept);
    let mut constant = Rational::one();
    let mut removed = Vec::new();
    for i in (0..pairs.len()).filter(|i| !keep.contains(i)) {
        let mut probe = kept_pairs.clone();
        probe.push(pairs[i].clone());
        let cert = domination_cert(&probe, probe.len() - 1)
            .expect("removed term is dominated by the kept hull");
        let ci = s.terms()[i].coeff();
        let wj = &cert.lambda / kept.terms()[cert.j].coeff();
        let wl = (Rational::one() - &cert.lambda) / kept.terms()[cert.l].coeff();
        let w = if cert.j == cert.l {
            wj + wl
        } else {
            wj.max(wl)
        };
        let c = ci * w;
        constant += &c;
        removed.push(RemovedTerm {
            index: i,
            cert,
            constant: c,
        });
    }
    Reduction {
        sum: kept,
        constant,
        removed,
    }
}
