use std::collections::HashSet;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::group::{element_of_word, factorization_roots, generate_weyl, reduced_words};
use super::interp::build_p_lambda0;
use super::roots::{build_root_system, RootKind};
use crate::error::Result;
use crate::estimates::{witness, Constants, GridSpec, VerificationReport, Worst};

/// Systems covered by the exhaustive checks.
pub fn default_kinds() -> Vec<RootKind> {
    vec![RootKind::A2, RootKind::B2, RootKind::G2, RootKind::A1Power(3)]
}

/// Exhaustive check over all reduced words of all elements: each word gives
/// the stored element, its length is the inversion count, and its
/// factorization roots are positive and pairwise distinct. The violation is
/// the number of failures.
pub fn check_factorization(kinds: &[RootKind]) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut worst = Worst::default();
    let mut failures = 0usize;
    let mut words = 0usize;
    let mut constants = Constants::new();
    for (ki, &kind) in kinds.iter().enumerate() {
        let rs = build_root_system(kind)?;
        let group = generate_weyl(&rs);
        constants.insert(format!("order[{kind}]"), group.len() as f64);
        for (ei, w) in group.iter().enumerate() {
            let mut bad = usize::from(w.inversions(&rs) != w.length());
            for word in reduced_words(w, &rs) {
                words += 1;
                if element_of_word(&rs, &word).images != w.images {
                    bad += 1;
                }
                let roots = factorization_roots(&word, &rs)?;
                let distinct: HashSet<&Vec<i64>> = roots.iter().collect();
                let positive = roots.iter().all(|r| matches!(rs.find_root(r), Some((_, true))));
                if distinct.len() != roots.len() || !positive {
                    bad += 1;
                }
            }
            if bad > 0 {
                failures += bad;
                worst.offer(failures as f64, || witness([("system", ki as f64), ("element", ei as f64)]));
            }
        }
    }
    constants.insert("reduced_words".into(), words as f64);
    constants.insert("failures".into(), failures as f64);
    Ok(VerificationReport::new(
        "weyl-factorization",
        GridSpec::interval(0.0, 0.0, 1),
        failures as f64,
        worst.witness,
        constants,
        0.0,
        started,
    ))
}

/// Interpolation conditions of `p_{lambda0}` for `count` seeded `lambda0`
/// per system, coordinates uniform in `[-3, 3] + i[-3, 3]`.
pub fn check_p_lambda0(kinds: &[RootKind], seed: u64, count: usize) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = Worst::default();
    let mut max_degree = 0usize;
    for (ki, &kind) in kinds.iter().enumerate() {
        let rs = build_root_system(kind)?;
        let group = generate_weyl(&rs);
        for trial in 0..count {
            let lam: Vec<Complex64> = (0..rs.dim)
                .map(|_| Complex64::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0)))
                .collect();
            let p = build_p_lambda0(&lam, &group)?;
            max_degree = max_degree.max(p.degree());
            let err = p.interpolation_error();
            worst.offer(err, || witness([("system", ki as f64), ("trial", trial as f64)]));
        }
    }
    let constants = Constants::from([
        ("max_degree".into(), max_degree as f64),
        ("per_system".into(), count as f64),
        ("seed".into(), seed as f64),
    ]);
    Ok(VerificationReport::new(
        "weyl-p-lambda0",
        GridSpec::interval(-3.0, 3.0, count),
        worst.value.max(0.0),
        worst.witness,
        constants,
        1e-12,
        started,
    ))
}
