use std::time::Instant;

use num_complex::Complex64;
use pwcheck_core::ansatz2::*;
use pwcheck_core::estimates::GridSpec;
use pwcheck_core::rankone::{KTypeData, RankOneParams};
use pwcheck_core::specialfn::e_tau_poly;
use pwcheck_core::SpectralParameter;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn a1_squared(lambda0: Vec<Complex64>, t: u32) -> SymmetrizedInterpolant {
    SymmetrizedInterpolant::uniform(RankOneParams::sl2(), 2, SpectralParameter::new(lambda0), 4.0, t).unwrap()
}

#[test]
fn interpolation_at_lambda0() {
    for lam0 in [vec![c(0.3, -0.7), c(0.0, -0.4)], vec![c(0.0, -0.6), c(0.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]] {
        let si = a1_squared(lam0, 10);
        let rep = check_interpolation(&si, 10.0).unwrap();
        assert!(rep.passed, "{rep:?}");
    }
}

#[test]
fn cocycle_on_grid() {
    let si = a1_squared(vec![c(0.3, -0.7), c(0.0, -0.4)], 6);
    let rep = check_cocycle(&si, 6.0, &GridSpec::rect([-2.0, 2.0], [-1.3, 1.1], 9)).unwrap();
    assert!(rep.passed, "{rep:?}");
}

#[test]
fn w_invariance_on_grid() {
    for lam0 in [vec![c(0.3, -0.7), c(0.0, -0.4)], vec![c(0.0, -0.6), c(0.0, 0.0)]] {
        let si = a1_squared(lam0, 4);
        let rep = check_w_invariance(&si, 4.0, &GridSpec::rect([-2.0, 2.0], [-1.3, 1.1], 9)).unwrap();
        assert!(rep.passed, "{rep:?}");
    }
}

#[test]
fn w_invariance_with_double_root_factor() {
    let p = RankOneParams::preset("su12").unwrap();
    let model = ProductModel::new(vec![p, RankOneParams::sl2()]).unwrap();
    let tables = vec![
        pwcheck_core::rankone::KTypeTable::extremal(&p, 3),
        pwcheck_core::rankone::KTypeTable::extremal(&RankOneParams::sl2(), 3),
    ];
    let si = SymmetrizedInterpolant::new(model, SpectralParameter::new(vec![c(0.2, -0.3), c(-0.1, -0.5)]), 4.0, tables).unwrap();
    assert!(check_interpolation(&si, 3.0).unwrap().passed);
    let rep = check_w_invariance(&si, 3.0, &GridSpec::rect([-1.5, 1.5], [-1.2, 1.2], 7)).unwrap();
    assert!(rep.passed, "{rep:?}");
}

#[test]
fn trivial_type_is_w_invariant_scalar() {
    let si = a1_squared(vec![c(0.3, -0.7), c(0.0, -0.4)], 0);
    let f = build_f_tau(&si, &ProductKType::trivial(2)).unwrap();
    for lam in [[c(0.4, 0.2), c(-1.0, 0.3)], [c(1.7, -0.9), c(0.25, 0.0)]] {
        let v = f.eval(&lam);
        for flipped in [[-lam[0], lam[1]], [lam[0], -lam[1]], [-lam[0], -lam[1]]] {
            assert!((f.eval(&flipped) - v).norm() < 1e-10 * (1.0 + v.norm()));
        }
    }
}

#[test]
fn rank_one_two_term_expansion() {
    // l = 1, tau = 1: F(z) = p(z) phi(z) + p(-z) phi(-z) Q(z)/Q(-z)
    let si = SymmetrizedInterpolant::uniform(RankOneParams::sl2(), 1, SpectralParameter::rank_one(c(0.0, -0.8)), 4.0, 1).unwrap();
    let tau = ProductKType::new(vec![KTypeData::new(1.0, 0, 1)]);
    let f = build_f_tau(&si, &tau).unwrap();
    let r = si.r;
    let z0 = c(0.0, -0.8);
    let big_m = si.model.m_global;
    let e = e_tau_poly(big_m);
    let sinc = pwcheck_core::specialfn::SincProduct { n: big_m, r };
    let phi = |z: Complex64| e.eval(Complex64::i() * z) / e.eval(Complex64::i() * z0) * (sinc.eval(z) / sinc.eval(z0)).powi(8);
    let p = |z: Complex64| (z - (-z0)) / (z0 - (-z0));
    // Q(z) = Gamma_{1/2, 3/2}(iz) = 1 + 2iz
    let q = |z: Complex64| 1.0 + 2.0 * Complex64::i() * z;
    for z in [c(0.3, 0.1), c(-1.1, 0.6), c(0.9, -0.4)] {
        let want = p(z) * phi(z) + p(-z) * phi(-z) * q(z) / q(-z);
        assert!((f.eval(&[z]) - want).norm() < 1e-10 * (1.0 + want.norm()), "{z}");
    }
}

#[test]
fn polynomial_side_near_cancelled_pole() {
    let si = SymmetrizedInterpolant::uniform(RankOneParams::sl2(), 1, SpectralParameter::rank_one(c(0.0, -0.8)), 4.0, 2).unwrap();
    let tau = ProductKType::new(vec![KTypeData::new(2.0, 0, 2)]);
    let f = build_f_tau(&si, &tau).unwrap();
    // J has a pole at z = -i/2 in the flipped term; F stays continuous there
    let at = f.eval(&[c(0.0, -0.5)]);
    let near = f.eval(&[c(2e-3, -0.5)]);
    assert!(at.norm().is_finite());
    assert!((at - near).norm() < 1e-2 * (1.0 + at.norm()));
}

#[test]
fn f_factor_count_matches_positive_roots() {
    let si = a1_squared(vec![c(0.3, -0.7), c(0.0, -0.4)], 3);
    for (_, count) in f_factor_counts(&si, 3.0).unwrap() {
        assert_eq!(count, 8 * 2);
    }
}

#[test]
fn pole_cancellation_all_presets() {
    let started = Instant::now();
    let rep = pole_cancellation_check(&RankOneParams::presets(), 30);
    assert!(rep.passed);
    assert_eq!(rep.constants["failures"], 0.0);
    assert!(started.elapsed().as_secs_f64() < 2.0);
}

#[test]
fn plain_m_does_not_cancel_for_large_multiplicity() {
    // with M = m ceil|tau| instead of m_pole ceil|tau| the top root -(a + s - 1) escapes e_tau
    let p = RankOneParams::so1n(4).unwrap();
    let k = KTypeData::new(2.0, 0, 2);
    let d = j_denominator(&p, &k).unwrap();
    assert!(!d.divides(&e_tau_poly(p.m * 2)));
    assert!(d.divides(&e_tau_poly(m_pole(&p) * 2)));
}

#[test]
fn condition_iii_refinement_stable() {
    let started = Instant::now();
    let si = a1_squared(vec![c(0.3, -0.7), c(0.0, -0.4)], 10);
    let rep = estimate_condition_iii(&si, 10.0, 1.0, &GridSpec::rect([-3.0, 3.0], [-1.0, 1.0], 21)).unwrap();
    eprintln!("{}", rep.canonical_json());
    eprintln!("elapsed {:?}", started.elapsed());
    assert!(rep.passed, "{rep:?}");
}

#[test]
fn condition_iii_gate() {
    let si = a1_squared(vec![c(0.3, -0.7), c(0.0, -0.4)], 1);
    assert!(estimate_condition_iii(&si, 1.0, 0.5, &GridSpec::rect([-1.0, 1.0], [-1.0, 1.0], 5)).is_err());
}
