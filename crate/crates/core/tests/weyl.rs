use std::collections::HashSet;

use num_complex::Complex64;
use pwcheck_core::weyl::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn systems() -> Vec<RootKind> {
    vec![RootKind::A1Power(2), RootKind::A1Power(3), RootKind::A2, RootKind::B2, RootKind::G2]
}

#[test]
fn positive_root_counts() {
    for (kind, n) in [(RootKind::A1Power(2), 2), (RootKind::A2, 3), (RootKind::B2, 4), (RootKind::G2, 6)] {
        assert_eq!(build_root_system(kind).unwrap().num_positive(), n, "{kind}");
    }
    let b2 = build_root_system(RootKind::B2).unwrap();
    let lengths: HashSet<i64> = b2
        .positive_roots
        .iter()
        .map(|r| r.iter().map(|x| x * x).sum())
        .collect();
    assert_eq!(lengths.len(), 2);
    assert!("E8".parse::<RootKind>().is_err());
}

#[test]
fn group_closed_under_multiplication() {
    for kind in systems() {
        let rs = build_root_system(kind).unwrap();
        let g = generate_weyl(&rs);
        let ids: HashSet<Vec<Vec<i64>>> = g.iter().map(|w| w.images.clone()).collect();
        assert_eq!(ids.len(), g.len());
        for a in &g {
            for b in &g {
                let mut word = a.word.clone();
                word.extend(&b.word);
                assert!(ids.contains(&element_of_word(&rs, &word).images), "{kind}");
            }
        }
    }
}

#[test]
fn every_reduced_word_is_consistent_and_factorizes() {
    for kind in systems() {
        let rs = build_root_system(kind).unwrap();
        for w in generate_weyl(&rs) {
            assert_eq!(w.inversions(&rs), w.length());
            for word in reduced_words(&w, &rs) {
                assert_eq!(word.len(), w.length());
                assert_eq!(element_of_word(&rs, &word).images, w.images);
                let roots = factorization_roots(&word, &rs).unwrap();
                let distinct: HashSet<&Vec<i64>> = roots.iter().collect();
                assert_eq!(distinct.len(), roots.len(), "{kind} {word:?}");
                for r in &roots {
                    assert_eq!(rs.find_root(r).map(|(_, pos)| pos), Some(true), "{kind} {word:?}");
                }
            }
        }
    }
}

#[test]
fn longest_word_counts() {
    let expected = [(RootKind::A2, 2), (RootKind::B2, 2), (RootKind::G2, 2), (RootKind::A1Power(3), 6)];
    for (kind, count) in expected {
        let rs = build_root_system(kind).unwrap();
        let g = generate_weyl(&rs);
        let longest = g.iter().max_by_key(|w| w.length()).unwrap();
        assert_eq!(longest.length(), rs.num_positive());
        assert_eq!(reduced_words(longest, &rs).len(), count, "{kind}");
    }
}

#[test]
fn orbit_interpolant_seeded() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x00c0_ffee);
    for kind in systems() {
        let rs = build_root_system(kind).unwrap();
        let g = generate_weyl(&rs);
        for _ in 0..50 {
            let lam: Vec<Complex64> = (0..rs.dim)
                .map(|_| Complex64::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0)))
                .collect();
            let p = build_p_lambda0(&lam, &g).unwrap();
            assert_eq!(p.degree(), p.orbit_points.len() - 1);
            assert!(p.interpolation_error() < 1e-12, "{kind}: {}", p.interpolation_error());
        }
    }
}

#[test]
fn orbit_interpolant_on_walls() {
    let rs = build_root_system(RootKind::B2).unwrap();
    let g = generate_weyl(&rs);
    let lam = [Complex64::new(1.0, 0.5), Complex64::new(0.0, 0.0)];
    let p = build_p_lambda0(&lam, &g).unwrap();
    assert_eq!(p.stabilizer_order, 2);
    assert_eq!(p.degree(), 3);
    assert!(p.interpolation_error() < 1e-12);
}

#[test]
fn weyl_data_roundtrips_through_json() {
    let data = WeylData::build(RootKind::G2).unwrap();
    let text = serde_json::to_string(&data).unwrap();
    let back: WeylData = serde_json::from_str(&text).unwrap();
    assert_eq!(back.elements, data.elements);
    assert_eq!(back.root_system, data.root_system);
}
