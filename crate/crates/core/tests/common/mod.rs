//! Shared generators and independent oracles for the integration tests.

#![allow(dead_code)]

use bigoh::rational::{int, ratio, to_f64};
use bigoh::{Rational, Term, TermSum};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Pair = (Rational, Rational);

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rational in `[0, max]` with denominator at most `max_den`.
pub fn small_rational(rng: &mut impl Rng, max: i64, max_den: i64) -> Rational {
    let d = rng.gen_range(1..=max_den);
    ratio(rng.gen_range(0..=max * d), d)
}

/// Random sum with up to `max_k` distinct exponent pairs and small integer coefficients.
pub fn random_sum(rng: &mut impl Rng, max_k: usize, max_exp: i64, max_den: i64) -> TermSum {
    let k = rng.gen_range(1..=max_k);
    let terms: Vec<Term> = (0..k)
        .map(|_| {
            let a = small_rational(rng, max_exp, max_den);
            let b = small_rational(rng, max_exp, max_den);
            Term::new(int(rng.gen_range(1..=5)), a, b).unwrap()
        })
        .collect();
    TermSum::new(terms)
}

pub fn pairs(s: &TermSum) -> Vec<Pair> {
    s.terms()
        .iter()
        .map(|t| (t.a().clone(), t.b().clone()))
        .collect()
}

/// Independence decided by scanning every cell of the line arrangement.
///
/// Candidate z values are 0, every pairwise crossing, the midpoints between
/// consecutive crossings, and one point past the last crossing. The order of
/// the lines `a z + b` is constant on each open cell, so a strict witness
/// exists iff one of these candidates is strict.
pub fn brute_independent(p: &[Pair], i: usize) -> bool {
    let mut cuts = vec![Rational::zero()];
    for (u, (a1, b1)) in p.iter().enumerate() {
        for (a2, b2) in &p[u + 1..] {
            if a1 != a2 {
                let z = (b2 - b1) / (a1 - a2);
                if z > Rational::zero() {
                    cuts.push(z);
                }
            }
        }
    }
    cuts.sort();
    cuts.dedup();
    let mut probes = cuts.clone();
    for w in cuts.windows(2) {
        probes.push((&w[0] + &w[1]) / int(2));
    }
    probes.push(cuts.last().unwrap() + Rational::one());
    let (ai, bi) = &p[i];
    probes.iter().any(|z| {
        let own = ai * z + bi;
        p.iter()
            .enumerate()
            .all(|(j, (aj, bj))| j == i || own > aj * z + bj)
    })
}

/// `ln(c x^a y^b)` for a term at `(ln x, ln y)`.
pub fn ln_term(t: &Term, lx: f64, ly: f64) -> f64 {
    to_f64(t.coeff()).ln() + to_f64(t.a()) * lx + to_f64(t.b()) * ly
}

pub fn log_sum_exp(v: impl IntoIterator<Item = f64>) -> f64 {
    let v: Vec<f64> = v.into_iter().collect();
    let m = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + v.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

/// `ln(T_i / (S - T_i))` at `(ln x, ln y)`.
pub fn ln_ratio_to_rest(s: &TermSum, i: usize, lx: f64, ly: f64) -> f64 {
    let t = s.terms();
    ln_term(&t[i], lx, ly)
        - log_sum_exp(
            t.iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, u)| ln_term(u, lx, ly)),
        )
}

/// Random `(k, alpha, beta, a1, b1)` with `0 < alpha < beta < 1 - alpha`.
pub fn random_spec(
    rng: &mut impl Rng,
    max_k: usize,
) -> (usize, Rational, Rational, Rational, Rational) {
    let k = rng.gen_range(1..=max_k);
    let q = rng.gen_range(3..=12);
    // alpha < 1/2 leaves room for beta
    let alpha = ratio(rng.gen_range(1..=(q - 1) / 2), q);
    let gap = Rational::one() - &alpha * int(2);
    let alpha = if gap <= Rational::zero() {
        ratio(1, 3)
    } else {
        alpha
    };
    let hi = Rational::one() - &alpha;
    let t = ratio(rng.gen_range(1..=99), 100);
    let beta = &alpha + (&hi - &alpha) * t;
    let a1 = ratio(rng.gen_range(1..=50), rng.gen_range(1..=5));
    let b1 = ratio(rng.gen_range(1..=50), rng.gen_range(1..=5));
    (k, alpha, beta, a1, b1)
}

/// Exponents straight from the closed form `a_i = a1 (2 - alpha^(i-1))`, `b_i = b1 beta^(i-1)`.
pub fn closed_form(
    k: usize,
    alpha: &Rational,
    beta: &Rational,
    a1: &Rational,
    b1: &Rational,
) -> Vec<Pair> {
    let mut out = Vec::with_capacity(k);
    let (mut pa, mut pb) = (Rational::one(), Rational::one());
    for _ in 0..k {
        out.push((a1 * (int(2) - &pa), b1 * &pb));
        pa *= alpha;
        pb *= beta;
    }
    out
}

/// `r(i,j) = (b_i - b_j) / (a_j - a_i)` on 0-based indices.
pub fn r(p: &[Pair], i: usize, j: usize) -> Rational {
    (&p[i].1 - &p[j].1) / (&p[j].0 - &p[i].0)
}
