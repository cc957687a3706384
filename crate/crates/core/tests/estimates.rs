use std::f64::consts::E;
use std::time::Instant;

use pwcheck_core::estimates::*;

fn show(r: &VerificationReport) {
    println!(
        "{}: worst={:e} tol={:e} passed={} constants={:?} witness={:?} ({} ms)",
        r.check_id, r.worst_violation, r.tolerance, r.passed, r.constants, r.witness, r.runtime_ms
    );
}

#[test]
fn dual_representation_full_grid() {
    let g = GridSpec::rect([-5.0, 5.0], [-5.0, 5.0], 41)
        .with_n_range(0, 50)
        .with_r_values(vec![1.0, 3.0, 10.0]);
    let t = Instant::now();
    let r = check_dual_representation(&g).unwrap();
    show(&r);
    assert!(r.passed);
    assert!(t.elapsed().as_secs_f64() < 10.0);
}

#[test]
fn gamma_identities_full_grid() {
    let t = Instant::now();
    let g = GridSpec::rect([-5.0, 5.0], [-1.0, 1.0], 41)
        .with_n_range(0, 50)
        .with_r_values(vec![1.0, 3.0]);
    let a = check_euler_reflection(&g).unwrap();
    show(&a);
    let g = GridSpec::interval(0.0, 1.0, 41)
        .with_n_range(1, 50)
        .with_r_values(vec![1.0, 3.0, 10.0]);
    let b = check_gamma_representation(&g).unwrap();
    show(&b);
    assert!(a.passed && b.passed);
    assert!(t.elapsed().as_secs_f64() < 5.0);
}

#[test]
fn exact_inequalities() {
    let t = Instant::now();
    let reps = [
        check_separating_line(&[E * E, 10.0, 100.0, 1e4], 5000).unwrap(),
        check_phi_lower_bound(20_000),
        check_hr_bound(&[E, 3.0, 10.0, 100.0], 5000).unwrap(),
        check_gamma_ab_bounds(&GammaAbGrid::default()).unwrap(),
    ];
    for r in &reps {
        show(r);
        assert!(r.passed);
    }
    assert!(t.elapsed().as_secs_f64() < 10.0);
}

#[test]
fn boundedness() {
    let t = Instant::now();
    let g = GridSpec::rect([0.0, 3.0], [0.0, 2.0], 41)
        .with_n_range(0, 200)
        .with_r_values(vec![4.0, 10.0]);
    let a = check_largelambda(&g).unwrap();
    show(&a);
    let g = GridSpec::interval(0.0, 1.0, 201)
        .with_n_range(0, 200)
        .with_r_values(vec![10.0, 20.0]);
    let b = check_smalllambda(0.5, &g).unwrap();
    show(&b);
    let g = GridSpec::rect([0.0, 1.5], [0.0, 1.5], 41).with_n_range(0, 200);
    let c = check_prop_basic(0.5, 10.0, 2, &g).unwrap();
    show(&c);
    println!("{:?}", t.elapsed());
    assert!(a.passed && b.passed && c.passed);
}

#[test]
fn normalization_and_scaling() {
    let r = check_inf_f(0x5eed_2024, 20).unwrap();
    show(&r);
    assert!(r.passed);
    let s = check_scaling_remark(2.0, 5.0, 0.5).unwrap();
    show(&s);
    assert!(s.passed);
}
