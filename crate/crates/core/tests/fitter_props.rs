mod common;

use std::collections::BTreeSet;

use bigoh::fitter::{enumerate_candidates, read_measurements_csv};
use bigoh::rational::{int, ratio};
use bigoh::{fit, is_irreducible, validate_bound, Error, FitOptions, Measurement};
use common::{brute_independent, Pair};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

fn brute_candidates(max_terms: usize, max_degree: i64) -> BTreeSet<Vec<Pair>> {
    let points: Vec<Pair> = (0..=max_degree)
        .flat_map(|a| (0..=max_degree).map(move |b| (int(a), int(b))))
        .collect();
    let mut out = BTreeSet::new();
    let n = points.len();
    for mask in 1u32..(1 << n) {
        if mask.count_ones() as usize > max_terms {
            continue;
        }
        let set: Vec<Pair> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| points[i].clone())
            .collect();
        if (0..set.len()).all(|i| brute_independent(&set, i)) {
            out.insert(set);
        }
    }
    out
}

#[test]
fn enumeration_matches_exhaustive_search() {
    for max_terms in 1..=3 {
        for max_degree in 0..=3 {
            let opts = FitOptions {
                max_terms,
                max_degree: int(max_degree),
                lattice: vec![1],
                robust: false,
            };
            let got: BTreeSet<Vec<Pair>> = enumerate_candidates(&opts)
                .unwrap()
                .into_iter()
                .map(|mut c| {
                    c.sort();
                    c
                })
                .collect();
            assert_eq!(
                got,
                brute_candidates(max_terms, max_degree),
                "{max_terms} {max_degree}"
            );
        }
    }
}

#[test]
fn half_integer_lattice_adds_points() {
    let mut opts = FitOptions {
        max_terms: 1,
        max_degree: int(1),
        ..FitOptions::default()
    };
    assert_eq!(enumerate_candidates(&opts).unwrap().len(), 4);
    opts.lattice = vec![1, 2];
    let got = enumerate_candidates(&opts).unwrap();
    assert_eq!(got.len(), 9);
    assert!(got.contains(&vec![(ratio(1, 2), ratio(1, 2))]));
}

fn noisy_grid(seed: u64, model: impl Fn(f64, f64) -> f64) -> Vec<Measurement> {
    let mut rng = common::rng(seed);
    let mut out = Vec::new();
    for i in 1..=12 {
        for j in 1..=12 {
            let (x, y) = (f64::from(i) * 3.0, f64::from(j) * 2.0);
            let noise: f64 = StandardNormal.sample(&mut rng);
            out.push(Measurement {
                x,
                y,
                t: model(x, y) * (0.05 * noise).exp() * rng.gen_range(1.0..3.0),
            });
        }
    }
    out
}

#[test]
fn fits_are_valid_irreducible_and_deterministic() {
    let models: [fn(f64, f64) -> f64; 4] = [
        |x, y| x * y + 5.0,
        |x, y| x.powi(3) + y,
        |x, y| (x * y).powf(1.5) + x * x,
        |x, _| x.sqrt() * 40.0,
    ];
    for (seed, model) in models.iter().enumerate() {
        let data = noisy_grid(seed as u64, model);
        for opts in [
            FitOptions::default(),
            FitOptions {
                lattice: vec![1, 2],
                max_degree: ratio(5, 2),
                ..FitOptions::default()
            },
        ] {
            let res = fit(&data, &opts).unwrap();
            assert!(is_irreducible(&res.bound).0, "{}", res.bound);
            let v = validate_bound(&data, &res);
            assert!(v.violations.is_empty(), "{}", res.bound);
            assert!((v.max_ratio - res.constant).abs() <= 1e-12 * res.constant);
            assert!(res.slack >= 1.0);
            assert_eq!(fit(&data, &opts).unwrap(), res);
        }
    }
}

#[test]
fn fit_does_not_depend_on_thread_count() {
    let data = noisy_grid(9, |x, y| x * x * y + y.powi(3));
    let opts = FitOptions::default();
    let serial = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let wide = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap();
    let a = serial.install(|| fit(&data, &opts).unwrap());
    let b = wide.install(|| fit(&data, &opts).unwrap());
    assert_eq!(a, b);
}

#[test]
fn rejects_thin_or_bad_data() {
    let few: Vec<Measurement> = (1..=5)
        .map(|i| Measurement {
            x: i as f64,
            y: i as f64,
            t: 1.0,
        })
        .collect();
    assert!(matches!(
        fit(&few, &FitOptions::default()),
        Err(Error::InsufficientData(_))
    ));
    let narrow: Vec<Measurement> = (0..20)
        .map(|i| Measurement {
            x: 1.0 + i as f64 / 10.0,
            y: 1.0 + i as f64,
            t: 1.0,
        })
        .collect();
    assert!(fit(&narrow, &FitOptions::default()).is_err());
    assert!(read_measurements_csv("a,b,c\n1,2,3\n".as_bytes()).is_err());
    assert!(read_measurements_csv("x,y,t\n1,2,-3\n".as_bytes()).is_err());
    assert!(read_measurements_csv("x,y,t\n1,2\n".as_bytes()).is_err());
    let ok = read_measurements_csv("x, y, t\n1, 2, 3.5\n".as_bytes()).unwrap();
    assert_eq!(
        ok,
        vec![Measurement {
            x: 1.0,
            y: 2.0,
            t: 3.5
        }]
    );
}
