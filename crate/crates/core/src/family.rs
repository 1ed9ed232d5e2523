//! Irreducible families `sum_i x^(a_i) y^(b_i)` with `a_i = a1 (2 - alpha^(i-1))`
//! and `b_i = b1 beta^(i-1)`, plus the witness exponents that certify them.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::independence::{ratio_r, Bound, FeasibleInterval};
use crate::rational::{fmt_fixed, fmt_sig, int, parse_rational, ratio, to_f64, Rational};
use crate::term::TermSum;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub k: usize,
    pub alpha: Rational,
    pub beta: Rational,
    pub a1: Rational,
    pub b1: Rational,
    /// Upper bound `c` on every witness exponent.
    pub cap: Option<Rational>,
}

impl FamilySpec {
    /// Checks `0 < alpha < beta < 1 - alpha < 1`, positivity, and `b1 < cap * a1`.
    pub fn validate(&self) -> Result<()> {
        let one = Rational::one();
        if self.k == 0 {
            return Err(Error::Constraint("k must be at least 1".into()));
        }
        if !self.alpha.is_positive() {
            return Err(Error::Constraint(format!(
                "0 < alpha fails (alpha = {})",
                self.alpha
            )));
        }
        if self.alpha >= self.beta {
            return Err(Error::Constraint(format!(
                "alpha < beta fails (alpha = {}, beta = {})",
                self.alpha, self.beta
            )));
        }
        if self.beta >= &one - &self.alpha {
            return Err(Error::Constraint(format!(
                "beta < 1 - alpha fails (beta = {}, 1 - alpha = {})",
                self.beta,
                &one - &self.alpha
            )));
        }
        if &one - &self.alpha >= one {
            return Err(Error::Constraint("1 - alpha < 1 fails".into()));
        }
        if !self.a1.is_positive() || !self.b1.is_positive() {
            return Err(Error::Constraint(format!(
                "a1 and b1 must be positive (a1 = {}, b1 = {})",
                self.a1, self.b1
            )));
        }
        if let Some(c) = &self.cap {
            if !c.is_positive() {
                return Err(Error::Constraint(format!(
                    "cap must be positive (cap = {c})"
                )));
            }
            if self.b1 >= c * &self.a1 {
                return Err(Error::Constraint(format!(
                    "b1 < cap * a1 fails (b1 = {}, cap * a1 = {})",
                    self.b1,
                    c * &self.a1
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Construction {
    Theorem1,
    Theorem2,
    Theorem3,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    pub spec: FamilySpec,
    pub exponents: Vec<(Rational, Rational)>,
    pub construction: Construction,
}

impl Family {
    pub fn k(&self) -> usize {
        self.exponents.len()
    }

    /// Unit-coefficient sum; canonical order coincides with family order.
    pub fn to_term_sum(&self) -> TermSum {
        TermSum::from_exponents(&self.exponents)
    }

    /// `r(i,j)` with 0-based indices.
    pub fn r(&self, i: usize, j: usize) -> Rational {
        let (ai, bi) = &self.exponents[i];
        let (aj, bj) = &self.exponents[j];
        ratio_r(ai, bi, aj, bj).expect("family exponents a_i are distinct")
    }
}

fn build(spec: FamilySpec, construction: Construction) -> Result<Family> {
    spec.validate()?;
    let mut exponents = Vec::with_capacity(spec.k);
    let mut alpha_pow = Rational::one();
    let mut beta_pow = Rational::one();
    for _ in 0..spec.k {
        let a = &spec.a1 * (int(2) - &alpha_pow);
        let b = &spec.b1 * &beta_pow;
        exponents.push((a, b));
        alpha_pow *= &spec.alpha;
        beta_pow *= &spec.beta;
    }
    Ok(Family {
        spec,
        exponents,
        construction,
    })
}

pub fn gen_theorem1(
    k: usize,
    alpha: Rational,
    beta: Rational,
    a1: Rational,
    b1: Rational,
) -> Result<Family> {
    build(
        FamilySpec {
            k,
            alpha,
            beta,
            a1,
            b1,
            cap: None,
        },
        Construction::Theorem1,
    )
}

/// Integer-exponent family with `a1 = q_alpha^(k-1)` and `b1 = q_beta^(k-1)`.
///
/// The denominators are used as given, so `2/6` scales by powers of 6.
pub fn gen_theorem2(
    k: usize,
    p_alpha: &BigInt,
    q_alpha: &BigInt,
    p_beta: &BigInt,
    q_beta: &BigInt,
) -> Result<Family> {
    if q_alpha.is_zero() || q_beta.is_zero() {
        return Err(Error::Constraint(
            "zero denominator in alpha or beta".into(),
        ));
    }
    let alpha = Rational::new(p_alpha.clone(), q_alpha.clone());
    let beta = Rational::new(p_beta.clone(), q_beta.clone());
    let e = k.saturating_sub(1);
    let a1 = Rational::from_integer(num_traits::pow(q_alpha.abs(), e));
    let b1 = Rational::from_integer(num_traits::pow(q_beta.abs(), e));
    build(
        FamilySpec {
            k,
            alpha,
            beta,
            a1,
            b1,
            cap: None,
        },
        Construction::Theorem2,
    )
}

/// `2 + log_{beta/alpha}((a1/b1) ((1-alpha)/(1-beta)) c)`; every admissible `k` is below it.
pub fn theorem3_bound(spec: &FamilySpec, cap: &Rational) -> f64 {
    let one = Rational::one();
    let inner = (&spec.a1 / &spec.b1) * ((&one - &spec.alpha) / (&one - &spec.beta)) * cap;
    let base = &spec.beta / &spec.alpha;
    2.0 + to_f64(&inner).ln() / to_f64(&base).ln()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Theorem3Output {
    pub family: Family,
    pub plan: WitnessPlan,
    /// Value of the `k` upper bound for the chosen `alpha`, `beta`.
    pub bound: f64,
}

fn theorem3_from(spec: FamilySpec) -> Result<Theorem3Output> {
    let cap = spec.cap.clone().expect("capped spec");
    let family = build(spec, Construction::Theorem3)?;
    let k = family.k();
    if k >= 2 && family.r(k - 2, k - 1) >= cap {
        return Err(Error::Constraint(format!(
            "r(k-1,k) = {} is not below cap {cap}",
            family.r(k - 2, k - 1)
        )));
    }
    let plan = witness_plan(&family);
    let bound = theorem3_bound(&family.spec, &cap);
    Ok(Theorem3Output {
        family,
        plan,
        bound,
    })
}

/// Family whose witness exponents all stay below `cap`.
///
/// Sets `beta = alpha (1 + eps)` and scans `alpha` over `1/4 + m/100`,
/// `m = 0..=24`, halving `eps` from `1/4` until `r(k-1,k) < cap` holds exactly.
pub fn gen_theorem3(k: usize, cap: Rational, a1: Rational, b1: Rational) -> Result<Theorem3Output> {
    if k == 0 {
        return Err(Error::Constraint("k must be at least 1".into()));
    }
    if !cap.is_positive() || !a1.is_positive() || !b1.is_positive() {
        return Err(Error::Constraint("cap, a1 and b1 must be positive".into()));
    }
    if b1 >= &cap * &a1 {
        return Err(Error::Constraint(format!(
            "b1 < cap * a1 fails (b1 = {b1}, cap * a1 = {})",
            &cap * &a1
        )));
    }
    let one = Rational::one();
    let mut eps = ratio(1, 4);
    for _ in 0..=64 {
        for m in 0..=24 {
            let alpha = ratio(1, 4) + ratio(m, 100);
            let beta = &alpha * (&one + &eps);
            if beta >= &one - &alpha {
                continue;
            }
            let spec = FamilySpec {
                k,
                alpha,
                beta,
                a1: a1.clone(),
                b1: b1.clone(),
                cap: Some(cap.clone()),
            };
            if k < 2 || r_last(&spec) < cap {
                return theorem3_from(spec);
            }
        }
        eps /= int(2);
    }
    Err(Error::SearchExhausted(format!(
        "no alpha, beta keep r(k-1,k) below {cap} for k = {k}"
    )))
}

/// Capped family with caller-chosen `alpha`, `beta`; fails if `r(k-1,k) >= cap`.
pub fn gen_theorem3_with(
    k: usize,
    cap: Rational,
    a1: Rational,
    b1: Rational,
    alpha: Rational,
    beta: Rational,
) -> Result<Theorem3Output> {
    theorem3_from(FamilySpec {
        k,
        alpha,
        beta,
        a1,
        b1,
        cap: Some(cap),
    })
}

/// `r(k-1,k) = (b1/a1) (beta/alpha)^(k-2) (1-beta)/(1-alpha)` in closed form.
fn r_last(spec: &FamilySpec) -> Rational {
    let one = Rational::one();
    let growth = num_traits::pow(&spec.beta / &spec.alpha, spec.k - 2);
    (&spec.b1 / &spec.a1) * growth * ((&one - &spec.beta) / (&one - &spec.alpha))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessPlan {
    pub z: Vec<Rational>,
    pub intervals: Vec<FeasibleInterval>,
}

/// Witness exponents from the ratio recipe: `z_1 < r(1,2)`, `z_k > r(k-1,k)`,
/// and `r(i-1,k) < z_i < r(i,i+1)` in between, each a midpoint.
pub fn witness_plan(f: &Family) -> WitnessPlan {
    let k = f.k();
    let cap = f.spec.cap.as_ref();
    if k < 2 {
        let z = match cap {
            Some(c) => (c / int(2)).min(Rational::one()),
            None => Rational::one(),
        };
        let interval = FeasibleInterval {
            lower: Bound::Closed(Rational::zero()),
            upper: Bound::Unbounded,
            x_direction: true,
        };
        return WitnessPlan {
            z: vec![z],
            intervals: vec![interval],
        };
    }
    let mut z = Vec::with_capacity(k);
    let mut intervals = Vec::with_capacity(k);
    for i in 0..k {
        let (lower, upper) = if i == 0 {
            (Bound::Closed(Rational::zero()), Bound::Open(f.r(0, 1)))
        } else if i == k - 1 {
            (Bound::Open(f.r(k - 2, k - 1)), Bound::Unbounded)
        } else {
            (Bound::Open(f.r(i - 1, k - 1)), Bound::Open(f.r(i, i + 1)))
        };
        let zi = match (lower.value(), upper.value()) {
            (Some(l), Some(u)) => (l + u) / int(2),
            (Some(l), None) => {
                let step = match cap {
                    Some(c) => ((c - l) / int(2)).min(Rational::one()),
                    None => Rational::one(),
                };
                l + step
            }
            _ => unreachable!("lower bound always present"),
        };
        z.push(zi);
        intervals.push(FeasibleInterval {
            lower,
            upper,
            x_direction: i == k - 1,
        });
    }
    WitnessPlan { z, intervals }
}

/// `M[j][i] = a_j z_i + b_j`.
pub fn envelope_table(f: &Family, z: &[Rational]) -> Result<Vec<Vec<Rational>>> {
    if z.len() != f.k() {
        return Err(Error::LengthMismatch {
            expected: f.k(),
            got: z.len(),
        });
    }
    Ok(f.exponents
        .iter()
        .map(|(a, b)| z.iter().map(|zi| a * zi + b).collect())
        .collect())
}

/// CSV in the layout `j,a_j,b_j,<one column per z_i>`, cells at 2 decimals.
pub fn envelope_csv(f: &Family, z: &[Rational]) -> Result<String> {
    let m = envelope_table(f, z)?;
    let mut out = String::from("j,a_j,b_j");
    for (i, zi) in z.iter().enumerate() {
        out.push_str(&format!(",z{}={}", i + 1, fmt_sig(zi, 6)));
    }
    out.push('\n');
    for (j, row) in m.iter().enumerate() {
        let (a, b) = &f.exponents[j];
        out.push_str(&format!("{},{},{}", j + 1, fmt_sig(a, 6), fmt_sig(b, 6)));
        for cell in row {
            out.push(',');
            out.push_str(&fmt_fixed(cell, 2));
        }
        out.push('\n');
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlotData {
    /// `(i, j, r(i,j))` for `i < j`, 1-based.
    pub ratios: Vec<(usize, usize, Rational)>,
    pub z: Vec<Rational>,
}

pub fn plot_data(f: &Family) -> PlotData {
    let k = f.k();
    let mut ratios = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            ratios.push((i + 1, j + 1, f.r(i, j)));
        }
    }
    PlotData {
        ratios,
        z: witness_plan(f).z,
    }
}

impl PlotData {
    pub fn ratios_csv(&self) -> String {
        let mut out = String::from("i,j,r_exact,r_decimal\n");
        for (i, j, r) in &self.ratios {
            out.push_str(&format!("{i},{j},{r},{}\n", fmt_sig(r, 6)));
        }
        out
    }

    pub fn z_csv(&self) -> String {
        let mut out = String::from("i,z_exact,z_decimal\n");
        for (i, z) in self.z.iter().enumerate() {
            out.push_str(&format!("{},{z},{}\n", i + 1, fmt_sig(z, 6)));
        }
        out
    }
}

/// On-disk family description written by `gen --out` and read by `table`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyFile {
    pub construction: Construction,
    pub k: usize,
    pub alpha: String,
    pub beta: String,
    pub a1: String,
    pub b1: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<String>,
    pub a: Vec<String>,
    pub b: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
}

impl FamilyFile {
    pub fn from_family(f: &Family) -> Self {
        FamilyFile {
            construction: f.construction,
            k: f.k(),
            alpha: f.spec.alpha.to_string(),
            beta: f.spec.beta.to_string(),
            a1: f.spec.a1.to_string(),
            b1: f.spec.b1.to_string(),
            cap: f.spec.cap.as_ref().map(ToString::to_string),
            a: f.exponents.iter().map(|(a, _)| a.to_string()).collect(),
            b: f.exponents.iter().map(|(_, b)| b.to_string()).collect(),
            z: None,
            bound: None,
        }
    }

    /// Rebuilds the family from its parameters and checks the stored exponents.
    pub fn to_family(&self) -> Result<Family> {
        let spec = FamilySpec {
            k: self.k,
            alpha: parse_rational(&self.alpha)?,
            beta: parse_rational(&self.beta)?,
            a1: parse_rational(&self.a1)?,
            b1: parse_rational(&self.b1)?,
            cap: self.cap.as_deref().map(parse_rational).transpose()?,
        };
        let family = build(spec, self.construction)?;
        let stored: Vec<(Rational, Rational)> = self
            .a
            .iter()
            .zip(&self.b)
            .map(|(a, b)| Ok((parse_rational(a)?, parse_rational(b)?)))
            .collect::<Result<_>>()?;
        if stored != family.exponents {
            return Err(Error::Constraint(
                "stored exponents disagree with the family parameters".into(),
            ));
        }
        Ok(family)
    }
}
