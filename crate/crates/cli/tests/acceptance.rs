//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use pwcheck_cli::{registry, run, SuiteOutput};
use pwcheck_core::estimates::{inf_f_at, VerificationReport};
use pwcheck_core::rankone::sl2_j;
use pwcheck_core::weyl::{build_root_system, generate_weyl, RootKind};
use serde_json::Value;

struct Ctx {
    /// canonical JSON of every report, keyed by suite id
    first_runs: BTreeMap<String, Vec<String>>,
    failures: usize,
}

impl Ctx {
    fn suite(&mut self, id: &str) -> SuiteOutput {
        let out = run(id, &Value::Null, None).unwrap_or_else(|e| panic!("suite {id}: {e}"));
        self.first_runs
            .insert(id.to_string(), out.reports.iter().map(VerificationReport::canonical_json).collect());
        out
    }

    fn line(&mut self, n: usize, name: &str, ok: bool, elapsed: Duration, detail: String) {
        if !ok {
            self.failures += 1;
        }
        println!(
            "{} criterion {n:>2} {name}: {detail} [{:.1} s]",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
}

fn all_passed(out: &SuiteOutput) -> bool {
    out.reports.iter().all(|r| r.passed)
}

fn worst_summary(out: &SuiteOutput) -> String {
    out.reports
        .iter()
        .map(|r| format!("{}={:.2e}", r.check_id, r.worst_violation))
        .collect::<Vec<_>>()
        .join(" ")
}

fn find<'a>(out: &'a SuiteOutput, id: &str) -> &'a VerificationReport {
    out.reports.iter().find(|r| r.check_id == id).unwrap_or_else(|| panic!("no report {id}"))
}

fn main() {
    let mut ctx = Ctx { first_runs: BTreeMap::new(), failures: 0 };

    // 1
    let t = Instant::now();
    let out = ctx.suite("specialfn-dual");
    let e = t.elapsed();
    ctx.line(1, "dual representation of f_{n,R}", all_passed(&out) && e.as_secs_f64() < 10.0, e, worst_summary(&out));

    // 2
    let t = Instant::now();
    let out = ctx.suite("specialfn-gamma");
    let e = t.elapsed();
    ctx.line(2, "Gamma identities", all_passed(&out) && out.reports.len() == 2 && e.as_secs_f64() < 5.0, e, worst_summary(&out));

    // 3 and 4 and 5: the eight estimate suites, plus the Gamma_{a,b} bounds
    let t = Instant::now();
    let est = ctx.suite("estimates-all");
    let est_time = t.elapsed();
    let t = Instant::now();
    let gab = ctx.suite("specialfn-gamma-ab");
    let gab_time = t.elapsed();
    let exact_ids = ["separating-line", "phi-lower-bound", "hr-bound"];
    let mut exact_ok = exact_ids.iter().all(|id| find(&est, id).passed) && all_passed(&gab);
    let mut exact_detail: Vec<String> = exact_ids.iter().map(|id| format!("{id}={:.2e}", find(&est, id).worst_violation)).collect();
    exact_detail.push(worst_summary(&gab));
    let exact_time: u64 = exact_ids.iter().map(|id| find(&est, id).runtime_ms).sum::<u64>() + gab_time.as_millis() as u64;
    exact_ok &= exact_time < 10_000;
    ctx.line(3, "exact inequalities", exact_ok, Duration::from_millis(exact_time), exact_detail.join(" "));

    let bound_ids = ["largelambda", "smalllambda", "prop-basic"];
    let bound_time: u64 = bound_ids.iter().map(|id| find(&est, id).runtime_ms).sum();
    let bound_ok = bound_ids.iter().all(|id| find(&est, id).passed) && bound_time < 60_000;
    let detail = bound_ids
        .iter()
        .map(|id| {
            let r = find(&est, id);
            format!("{id}: change={:.2e} n_half={}", r.worst_violation, r.constants.get("n_half").copied().unwrap_or(f64::NAN))
        })
        .collect::<Vec<_>>()
        .join("; ");
    ctx.line(4, "boundedness, n-range 100 -> 200", bound_ok, Duration::from_millis(bound_time), detail);

    let t = Instant::now();
    let inf = find(&est, "inf-f");
    let example = inf_f_at(Complex64::new(0.5, 0.0), 1.0).map(|v| (v - 2.0 / PI).abs()).unwrap_or(f64::INFINITY);
    ctx.line(
        5,
        "inf_f_at against brute force",
        inf.passed && inf.constants["cases"] == 20.0 && example < 1e-12,
        t.elapsed() + Duration::from_millis(inf.runtime_ms),
        format!("20 seeded cases worst={:.2e}, (0.5, 1) -> 2/pi off by {example:.2e}", inf.worst_violation),
    );
    let _ = est_time;

    // 6
    let t = Instant::now();
    let out = ctx.suite("rankone-sl2");
    let real_unit = (0..=30)
        .flat_map(|n| (0..=40).map(move |k| (n, -10.0 + 0.5 * f64::from(k))))
        .map(|(n, x)| sl2_j(n, Complex64::new(x, 0.0)).map_or(f64::INFINITY, |j| (j.norm() - 1.0).abs()))
        .fold(0.0, f64::max);
    let e = t.elapsed();
    let inter = find(&out, "intertwining");
    ctx.line(
        6,
        "SL(2,R) rank one pipeline",
        all_passed(&out) && inter.constants["skipped_points"] == 0.0 && real_unit < 1e-10 && e.as_secs_f64() < 30.0,
        e,
        format!("{} |j|-1 on real axis={real_unit:.2e}", worst_summary(&out)),
    );

    // 7
    let t = Instant::now();
    let out = ctx.suite("weyl-factorization");
    let orders: Vec<usize> = [RootKind::A2, RootKind::B2, RootKind::G2, RootKind::A1Power(3)]
        .into_iter()
        .map(|k| generate_weyl(&build_root_system(k).unwrap()).len())
        .collect();
    let e = t.elapsed();
    ctx.line(
        7,
        "Weyl factorization roots",
        all_passed(&out) && orders == [6, 8, 12, 8] && e.as_secs_f64() < 5.0,
        e,
        format!("orders={orders:?} words={} failures={}", out.reports[0].constants["reduced_words"], out.reports[0].worst_violation),
    );

    // 8
    let t = Instant::now();
    let out = ctx.suite("weyl-p-lambda0");
    ctx.line(8, "orbit interpolation polynomial", all_passed(&out) && out.reports[0].constants["per_system"] == 50.0, t.elapsed(), worst_summary(&out));

    // 9
    let t = Instant::now();
    let out = ctx.suite("ansatz2-pole-cancellation");
    let e = t.elapsed();
    let r = &out.reports[0];
    ctx.line(
        9,
        "exact pole cancellation",
        r.passed && r.constants["failures"] == 0.0 && e.as_secs_f64() < 2.0,
        e,
        format!("{} K-types over {} presets, failures={}", r.constants["ktypes_checked"], r.constants["presets"], r.constants["failures"]),
    );

    // 10
    let t = Instant::now();
    let out = ctx.suite("ansatz2-a1sq");
    let e = t.elapsed();
    ctx.line(10, "Weyl-averaged interpolant on A1 x A1", all_passed(&out) && e.as_secs_f64() < 120.0, e, worst_summary(&out));

    // 11
    let t = Instant::now();
    let mut crown = SuiteOutput::default();
    for id in ["crown-su11", "crown-so1n", "crown-gln"] {
        crown.reports.extend(ctx.suite(id).reports);
    }
    let e = t.elapsed();
    let gln = find(&crown, "crown-gln");
    ctx.line(
        11,
        "crown geometry",
        all_passed(&crown) && e.as_secs_f64() < 120.0,
        e,
        format!("{} slope={:.4} gate_failures={}", worst_summary(&crown), gln.constants["slope"], gln.constants["gate_failures"]),
    );

    // 12: rerun every registered suite and compare the reports byte for byte
    let t = Instant::now();
    let mut mismatched = Vec::new();
    for s in registry() {
        let first = match ctx.first_runs.get(s.id) {
            Some(f) => f.clone(),
            None => ctx.suite(s.id).reports.iter().map(VerificationReport::canonical_json).collect(),
        };
        let again: Vec<String> = run(s.id, &Value::Null, None).unwrap().reports.iter().map(VerificationReport::canonical_json).collect();
        if first != again {
            mismatched.push(s.id);
        }
    }
    ctx.line(
        12,
        "determinism of every suite",
        mismatched.is_empty(),
        t.elapsed(),
        format!("{} suites, mismatched={mismatched:?}", registry().len()),
    );

    if ctx.failures > 0 {
        eprintln!("{} criteria failed", ctx.failures);
        std::process::exit(1);
    }
}
