mod common;

use bigoh::independence::{check_report, exponent_pairs};
use bigoh::rational::{int, to_f64};
use bigoh::{check_term, is_irreducible, parse_sum, reduce, Rational, TermSum, Witness};
use common::{brute_independent, ln_ratio_to_rest, ln_term, log_sum_exp, pairs, random_sum};
use num_traits::Zero;
use proptest::prelude::*;
use rand::Rng;

fn sums(seed: u64, n: usize) -> Vec<TermSum> {
    let mut rng = common::rng(seed);
    (0..n).map(|_| random_sum(&mut rng, 8, 16, 4)).collect()
}

#[test]
fn checker_matches_cell_scan_oracle() {
    for s in sums(11, 200) {
        let p = pairs(&s);
        for i in 0..s.len() {
            let v = check_term(&s, i).unwrap();
            assert_eq!(v.independent(), brute_independent(&p, i), "{s}, term {i}");
            assert!(v.verify(&p));
        }
    }
}

#[test]
fn independent_witness_has_positive_gap_and_growing_ratio() {
    for s in sums(12, 200) {
        let p = pairs(&s);
        for i in 0..s.len() {
            let v = check_term(&s, i).unwrap();
            let Some(Witness::FiniteZ(z)) = v.witness() else {
                continue;
            };
            let (ai, bi) = &p[i];
            let gap = p
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, (aj, bj))| ai * z + bi - aj * z - bj)
                .min();
            if let Some(gap) = gap {
                assert!(gap > Rational::zero());
                let zf = to_f64(z);
                let along = |y: f64| ln_ratio_to_rest(&s, i, zf * y.ln(), y.ln());
                let (r2, r3, r4) = (along(1e2), along(1e3), along(1e4));
                assert!(r2 < r3 && r3 < r4, "{s}, term {i}, z = {z}");
            }
        }
    }
}

#[test]
fn domination_holds_pointwise() {
    let mut rng = common::rng(13);
    for s in sums(14, 200) {
        let t = s.terms();
        for i in 0..s.len() {
            let v = check_term(&s, i).unwrap();
            let Some(d) = v.domination() else { continue };
            for _ in 0..100 {
                let lx = rng.gen_range(0.0..1e6f64).max(1.0).ln();
                let ly = rng.gen_range(0.0..1e6f64).max(1.0).ln();
                let ci = to_f64(t[i].coeff()).ln();
                // T_i <= c_i (T_j / c_j + T_l / c_l)
                let rhs = ci
                    + log_sum_exp([
                        ln_term(&t[d.j], lx, ly) - to_f64(t[d.j].coeff()).ln(),
                        ln_term(&t[d.l], lx, ly) - to_f64(t[d.l].coeff()).ln(),
                    ]);
                assert!(ln_term(&t[i], lx, ly) <= rhs + 1e-9, "{s}, term {i}");
            }
        }
    }
}

#[test]
fn reduce_is_idempotent_and_irreducible() {
    for s in sums(15, 200) {
        let r = reduce(&s);
        assert!(is_irreducible(&r.sum).0, "{s}");
        assert_eq!(reduce(&r.sum).sum, r.sum);
        assert!(reduce(&r.sum).removed.is_empty());
    }
}

#[test]
fn reduce_keeps_exactly_the_independent_terms() {
    for s in sums(16, 200) {
        let (_, verdicts) = is_irreducible(&s);
        let independent: Vec<_> = verdicts
            .iter()
            .filter(|v| v.independent())
            .map(|v| s.terms()[v.term].clone())
            .collect();
        let r = reduce(&s);
        assert_eq!(r.sum.terms(), independent.as_slice(), "{s}");
        assert_eq!(r.removed.len() + r.sum.len(), s.len());
    }
}

#[test]
fn removed_terms_are_dominated_by_kept_set() {
    for s in sums(17, 200) {
        let r = reduce(&s);
        let kept = exponent_pairs(&r.sum);
        let mut total = int(1);
        for rm in &r.removed {
            let mut probe = kept.clone();
            let t = &s.terms()[rm.index];
            probe.push((t.a().clone(), t.b().clone()));
            assert!(rm.cert.verify(&probe, probe.len() - 1), "{s}");
            assert!(rm.constant > Rational::zero());
            total += &rm.constant;
        }
        assert_eq!(total, r.constant);
    }
}

#[test]
fn reduce_constant_bounds_input_pointwise() {
    let mut rng = common::rng(18);
    for s in sums(19, 100) {
        let r = reduce(&s);
        let c = to_f64(&r.constant).ln();
        for _ in 0..20 {
            let lx = rng.gen_range(0.0..14.0);
            let ly = rng.gen_range(0.0..14.0);
            let full = log_sum_exp(s.terms().iter().map(|t| ln_term(t, lx, ly)));
            let core = log_sum_exp(r.sum.terms().iter().map(|t| ln_term(t, lx, ly)));
            assert!(core <= full + 1e-9);
            assert!(full <= c + core + 1e-9, "{s}");
        }
    }
}

#[test]
fn json_certificates_follow_schema() {
    let report = check_report(&parse_sum("x^2 + 2*x*y + y^2").unwrap());
    let v = serde_json::to_value(&report).unwrap();
    assert_eq!(v["irreducible"], false);
    assert_eq!(v["verdicts"][0]["witness"]["kind"], "finite-z");
    assert_eq!(v["verdicts"][1]["independent"], false);
    assert!(v["verdicts"][1].get("witness").is_none());
    assert_eq!(v["verdicts"][1]["domination"]["lambda"], "1/2");
    for w in v["verdicts"].as_array().unwrap() {
        if let Some(z) = w["witness"]["z"].as_str() {
            bigoh::rational::parse_rational(z).unwrap();
        }
    }
}

proptest! {
    #[test]
    fn verdicts_are_invariant_under_coefficients(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let s = random_sum(&mut rng, 6, 8, 3);
        let unit = TermSum::from_exponents(&pairs(&s));
        prop_assert_eq!(is_irreducible(&s).1, is_irreducible(&unit).1);
    }

    #[test]
    fn adding_a_dominated_term_keeps_the_core(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let s = random_sum(&mut rng, 6, 8, 2);
        let r = reduce(&s).sum;
        let top = &r.terms()[rng.gen_range(0..r.len())];
        prop_assume!(!(top.a().is_zero() && top.b().is_zero()));
        let below = bigoh::Term::monomial(top.a() / int(2), top.b() / int(2)).unwrap();
        let grown = TermSum::new(s.terms().iter().cloned().chain([below]));
        prop_assert_eq!(reduce(&grown).sum, r);
    }
}
