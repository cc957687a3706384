use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;

use super::model::{flip_point, flips, j_denominator, j_product, ln_to_value, q_abs, ProductKType, ProductModel, PSI_POWER};
use crate::error::{Error, Result};
use crate::estimates::{Constants, GridSpec, Region, VerificationReport, Witness, Worst, GATE_C};
use crate::rankone::{KTypeTable, RankOneParams};
use crate::specialfn::{FactoredPoly, SincProduct};
use crate::weyl::{build_p_lambda0, build_root_system, generate_weyl, multiply, OrbitInterpolant, RootKind, RootSystemData, WeylElement};
use crate::SpectralParameter;

/// Distance in `x = -i z` below which a flipped factor is evaluated through
/// the exact quotient `e_tau / D`.
pub const POLY_SWITCH: f64 = 1e-3;

/// Skip threshold for `|Q~|` in the invariance check.
const Q_SKIP: f64 = 1e-6;

/// The averaged interpolation datum on a product model.
#[derive(Debug, Clone)]
pub struct SymmetrizedInterpolant {
    pub model: ProductModel,
    pub lambda0: SpectralParameter,
    pub r_requested: f64,
    pub r: f64,
    pub p_poly: OrbitInterpolant,
    pub tau_table: Vec<KTypeTable>,
    group: Vec<WeylElement>,
    root_system: RootSystemData,
}

impl SymmetrizedInterpolant {
    pub fn new(model: ProductModel, lambda0: SpectralParameter, r: f64, tau_table: Vec<KTypeTable>) -> Result<Self> {
        let l = model.rank();
        if lambda0.rank() != l {
            return Err(Error::DimensionMismatch { expected: l, got: lambda0.rank() });
        }
        if tau_table.len() != l {
            return Err(Error::DimensionMismatch { expected: l, got: tau_table.len() });
        }
        if !model.kostant_ok(&lambda0) {
            return Err(Error::Kostant(format!("{:?}", lambda0.coords())));
        }
        for (t, p) in tau_table.iter().zip(&model.factors) {
            t.validate(p)?;
        }
        SincProduct::new(0, r)?;
        let r_used = model.admissible_r(r, &lambda0)?;
        let rs = build_root_system(RootKind::A1Power(l))?;
        let group = generate_weyl(&rs);
        let p_poly = build_p_lambda0(lambda0.coords(), &group)?;
        Ok(Self { model, lambda0, r_requested: r, r: r_used, p_poly, tau_table, group, root_system: rs })
    }

    /// Model with `l` copies of `p`, extremal K-types up to `t` per factor.
    pub fn uniform(p: RankOneParams, l: usize, lambda0: SpectralParameter, r: f64, t: u32) -> Result<Self> {
        let model = ProductModel::uniform(p, l)?;
        Self::new(model, lambda0, r, vec![KTypeTable::extremal(&p, t); l])
    }

    pub fn group(&self) -> &[WeylElement] {
        &self.group
    }

    /// Product K-types built from the per-factor tables with `|tau| <= tau_max`,
    /// in lexicographic order of the factor indices.
    pub fn ktypes(&self, tau_max: f64) -> Vec<(Vec<i64>, ProductKType)> {
        let mut out: Vec<(Vec<i64>, ProductKType)> = vec![(Vec::new(), ProductKType::new(Vec::new()))];
        for table in &self.tau_table {
            let mut next = Vec::new();
            for (idx, tau) in &out {
                for (&k, data) in &table.entries {
                    let mut i2 = idx.clone();
                    i2.push(k);
                    let mut parts = tau.parts.clone();
                    parts.push(*data);
                    next.push((i2, ProductKType::new(parts)));
                }
            }
            out = next;
        }
        out.retain(|(_, t)| t.norm() <= tau_max + 1e-12);
        out
    }
}

#[derive(Debug, Clone)]
struct FactorData {
    denom: FactoredPoly,
    quotient: FactoredPoly,
}

/// Evaluator of `F_tau` for one K-type.
#[derive(Debug, Clone)]
pub struct FTau {
    tau: ProductKType,
    big_m: u32,
    sinc: SincProduct,
    e: FactoredPoly,
    factors: Vec<FactorData>,
    /// `sum_i [ln e(i z0_i) + 8 ln f(z0_i)]`
    ln_norm: Complex64,
    p_poly: OrbitInterpolant,
    flips: Vec<Vec<bool>>,
}

/// `F_tau(lambda) = exp(shift) * sum`, kept apart to survive overflow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogValue {
    pub shift: f64,
    pub sum: Complex64,
}

impl LogValue {
    pub fn value(&self) -> Complex64 {
        if self.sum == Complex64::new(0.0, 0.0) {
            return self.sum;
        }
        self.sum * self.shift.exp()
    }

    pub fn ln_abs(&self) -> f64 {
        self.shift + self.sum.norm().ln()
    }
}

pub fn build_f_tau(si: &SymmetrizedInterpolant, tau: &ProductKType) -> Result<FTau> {
    let model = &si.model;
    if tau.parts.len() != model.rank() {
        return Err(Error::DimensionMismatch { expected: model.rank(), got: tau.parts.len() });
    }
    let big_m = model.big_m(tau);
    let e = model.e_tau(tau);
    let sinc = SincProduct::new(big_m, si.r)?;
    let mut factors = Vec::with_capacity(model.rank());
    for (p, k) in model.factors.iter().zip(&tau.parts) {
        let denom = j_denominator(p, k)?;
        let quotient = denom.quotient_of(&e).ok_or_else(|| {
            Error::Precondition(format!("J denominator does not divide e_tau for {k:?}"))
        })?;
        factors.push(FactorData { denom, quotient });
    }
    let i = Complex64::i();
    let ln_norm = si
        .lambda0
        .coords()
        .iter()
        .map(|&z0| e.ln_eval(i * z0) + sinc.ln_eval(z0) * f64::from(PSI_POWER))
        .sum();
    Ok(FTau {
        tau: tau.clone(),
        big_m,
        sinc,
        e,
        factors,
        ln_norm,
        p_poly: si.p_poly.clone(),
        flips: si.group.iter().map(flips).collect(),
    })
}

impl FTau {
    pub fn tau(&self) -> &ProductKType {
        &self.tau
    }

    pub fn big_m(&self) -> u32 {
        self.big_m
    }

    /// Number of `f_{M,R}` factors in `phi_tau`: `8` per positive root.
    pub fn f_factor_count(&self) -> usize {
        PSI_POWER as usize * self.factors.len()
    }

    /// Log of the factor-`i` contribution to the `w`-term, unflipped.
    fn ln_plus(&self, z: Complex64) -> Complex64 {
        self.e.ln_eval(Complex64::i() * z) + self.sinc.ln_eval(z) * f64::from(PSI_POWER)
    }

    /// Flipped: `e(x) D(-x) / D(x) f(-z)^8` with `x = -iz`.
    fn ln_minus(&self, i: usize, z: Complex64) -> Complex64 {
        let fd = &self.factors[i];
        let x = -Complex64::i() * z;
        let poly = if fd.denom.root_distance(x) < POLY_SWITCH {
            fd.quotient.ln_eval(x)
        } else {
            self.e.ln_eval(x) - fd.denom.ln_eval(x)
        };
        poly + fd.denom.ln_eval(-x) + self.sinc.ln_eval(-z) * f64::from(PSI_POWER)
    }

    /// Per-coordinate logs `(plus, minus)` for factor `i`.
    pub(crate) fn factor_logs(&self, i: usize, z: Complex64) -> (Complex64, Complex64) {
        (self.ln_plus(z), self.ln_minus(i, z))
    }

    /// Combine precomputed factor logs with `p_{lambda0}(w lambda)`.
    pub(crate) fn combine(&self, lambda: &[Complex64], logs: &[(Complex64, Complex64)]) -> LogValue {
        let mut terms: Vec<(Complex64, Complex64)> = Vec::with_capacity(self.flips.len());
        let mut wl = lambda.to_vec();
        for flip in &self.flips {
            for ((dst, &z), &f) in wl.iter_mut().zip(lambda).zip(flip) {
                *dst = if f { -z } else { z };
            }
            let p = self.p_poly.eval(&wl);
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let mut l = -self.ln_norm;
            for (&f, (plus, minus)) in flip.iter().zip(logs) {
                l += if f { *minus } else { *plus };
            }
            if l.re.is_finite() {
                terms.push((p, l));
            }
        }
        let shift = terms.iter().map(|t| t.1.re).fold(f64::NEG_INFINITY, f64::max);
        if !shift.is_finite() {
            return LogValue { shift: 0.0, sum: Complex64::new(0.0, 0.0) };
        }
        let sum = terms.iter().map(|(p, l)| p * ln_to_value(l - shift)).sum();
        LogValue { shift, sum }
    }

    pub fn eval_log(&self, lambda: &[Complex64]) -> LogValue {
        let logs: Vec<(Complex64, Complex64)> =
            lambda.iter().enumerate().map(|(i, &z)| self.factor_logs(i, z)).collect();
        self.combine(lambda, &logs)
    }

    pub fn eval(&self, lambda: &[Complex64]) -> Complex64 {
        self.eval_log(lambda).value()
    }
}

/// `|J F(lambda) - F(w lambda)| / (1 + |F(lambda)|)` without forming either value.
fn invariance_residual(j: Complex64, a: LogValue, b: LogValue) -> f64 {
    let s = a.shift.max(b.shift);
    let ja = j * a.sum * (a.shift - s).exp();
    let bb = b.sum * (b.shift - s).exp();
    let fa = a.sum.norm() * (a.shift - s).exp();
    (ja - bb).norm() / ((-s).exp() + fa)
}

/// Every point of the product grid: the same rectangle in each coordinate.
pub fn product_grid(g: &GridSpec, l: usize) -> Result<Vec<Vec<Complex64>>> {
    g.validate()?;
    if !matches!(g.region, Region::Rect { .. }) {
        return Err(Error::InvalidParameter("product grids need a rectangular region".into()));
    }
    let axis: Vec<Complex64> = g.rect_points().into_iter().map(|(x, y)| Complex64::new(x, y)).collect();
    let mut out: Vec<Vec<Complex64>> = vec![Vec::new()];
    for _ in 0..l {
        out = out
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |&z| {
                    let mut q = p.clone();
                    q.push(z);
                    q
                })
            })
            .collect();
    }
    Ok(out)
}

fn point_witness(lambda: &[Complex64], extra: &[(&str, f64)]) -> Witness {
    let mut w = Witness::new();
    for (i, z) in lambda.iter().enumerate() {
        w.insert(format!("re{i}"), z.re);
        w.insert(format!("im{i}"), z.im);
    }
    for (k, v) in extra {
        w.insert((*k).to_string(), *v);
    }
    w
}

/// `|F_tau(lambda0) - 1|` over the K-types with `|tau| <= tau_max`.
pub fn check_interpolation(si: &SymmetrizedInterpolant, tau_max: f64) -> Result<VerificationReport> {
    let started = Instant::now();
    let taus = si.ktypes(tau_max);
    let mut worst = Worst::default();
    for (idx, tau) in &taus {
        let f = build_f_tau(si, tau)?;
        let v = f.eval(si.lambda0.coords());
        let err = (v - 1.0).norm();
        worst.offer(err, || tau_witness(idx));
    }
    let constants = Constants::from([
        ("ktypes".into(), taus.len() as f64),
        ("stabilizer_order".into(), si.p_poly.stabilizer_order as f64),
        ("r_used".into(), si.r),
    ]);
    Ok(VerificationReport::new(
        "ansatz2-interpolation",
        GridSpec::interval(0.0, tau_max, 1),
        worst.value,
        worst.witness,
        constants,
        1e-10,
        started,
    ))
}

fn tau_witness(idx: &[i64]) -> Witness {
    idx.iter().enumerate().map(|(i, &k)| (format!("tau{i}"), k as f64)).collect()
}

/// `F_tau(w lambda) = J_{w,lambda}[tau] F_tau(lambda)` for all `w` on a product
/// grid. Points where some `|Q~_i| < 1e-6` are skipped and counted.
pub fn check_w_invariance(si: &SymmetrizedInterpolant, tau_max: f64, g: &GridSpec) -> Result<VerificationReport> {
    let started = Instant::now();
    let pts = product_grid(g, si.model.rank())?;
    let taus = si.ktypes(tau_max);
    let mut worst = Worst::default();
    let mut skipped = 0usize;
    for (idx, tau) in &taus {
        let f = build_f_tau(si, tau)?;
        let parts: Vec<(Worst, usize)> = pts
            .par_iter()
            .map(|lam| {
                let mut w = Worst::default();
                let near_pole = lam.iter().enumerate().any(|(i, &z)| q_abs(&si.model, i, &tau.parts[i], z) < Q_SKIP);
                if near_pole {
                    return (w, 1);
                }
                let base = f.eval_log(lam);
                let sp = SpectralParameter::new(lam.clone());
                for el in &si.group {
                    let Ok(j) = j_product(&si.model, tau, el, &sp) else {
                        return (Worst::default(), 1);
                    };
                    let moved = f.eval_log(&flip_point(el, lam));
                    let res = invariance_residual(j, base, moved);
                    w.offer(res, || {
                        let mut wit = point_witness(lam, &[("w", el.word.len() as f64)]);
                        wit.extend(tau_witness(idx));
                        wit
                    });
                }
                (w, 0)
            })
            .collect();
        skipped += parts.iter().map(|p| p.1).sum::<usize>();
        worst.absorb(Worst::fold(parts.into_iter().map(|p| p.0)));
    }
    let constants = Constants::from([
        ("ktypes".into(), taus.len() as f64),
        ("skipped_points".into(), skipped as f64),
        ("r_used".into(), si.r),
    ]);
    Ok(VerificationReport::new(
        "ansatz2-w-invariance",
        g.clone(),
        worst.value.max(0.0),
        worst.witness,
        constants,
        1e-8,
        started,
    ))
}

/// `J(w2, w1 lambda) J(w1, lambda) = J(w2 w1, lambda)` for all pairs.
pub fn check_cocycle(si: &SymmetrizedInterpolant, tau_max: f64, g: &GridSpec) -> Result<VerificationReport> {
    let started = Instant::now();
    let pts = product_grid(g, si.model.rank())?;
    let taus = si.ktypes(tau_max);
    let group = &si.group;
    let mut worst = Worst::default();
    let mut skipped = 0usize;
    for (idx, tau) in &taus {
        let parts: Vec<(Worst, usize)> = pts
            .par_iter()
            .map(|lam| {
                let mut w = Worst::default();
                let sp = SpectralParameter::new(lam.clone());
                for w1 in group {
                    let l1 = SpectralParameter::new(flip_point(w1, lam));
                    for w2 in group {
                        let w21 = multiply(&si.root_system, group, w2, w1);
                        let vals = (
                            j_product(&si.model, tau, w2, &l1),
                            j_product(&si.model, tau, w1, &sp),
                            j_product(&si.model, tau, &w21, &sp),
                        );
                        let (Ok(a), Ok(b), Ok(c)) = vals else {
                            return (Worst::default(), 1);
                        };
                        let res = (a * b - c).norm() / (1.0 + c.norm());
                        w.offer(res, || {
                            let mut wit = point_witness(lam, &[]);
                            wit.extend(tau_witness(idx));
                            wit
                        });
                    }
                }
                (w, 0)
            })
            .collect();
        skipped += parts.iter().map(|p| p.1).sum::<usize>();
        worst.absorb(Worst::fold(parts.into_iter().map(|p| p.0)));
    }
    let constants = Constants::from([
        ("ktypes".into(), taus.len() as f64),
        ("skipped_points".into(), skipped as f64),
    ]);
    Ok(VerificationReport::new("ansatz2-cocycle", g.clone(), worst.value.max(0.0), worst.witness, constants, 1e-10, started))
}

/// Settings of the growth estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthExponents {
    /// `j = 4 |Sigma^+|`
    pub j: u32,
    /// `l = deg p_{lambda0}`
    pub l: u32,
    /// `A R` with `A = h |Sigma^+|`
    pub rate: f64,
    pub r_prime: f64,
}

impl GrowthExponents {
    pub fn for_interpolant(si: &SymmetrizedInterpolant, r: f64) -> Result<Self> {
        let big_r = si.r;
        let lower = big_r.ln().powi(2) / (big_r * big_r) / GATE_C;
        if !(lower < r) {
            return Err(Error::Precondition(format!(
                "gate (log R)^2/R^2 < {GATE_C} r fails for R = {big_r}, r = {r}"
            )));
        }
        let npos = si.model.num_positive() as u32;
        Ok(Self {
            j: 4 * npos,
            l: si.p_poly.degree() as u32,
            rate: si.model.h_const * f64::from(npos) * big_r,
            r_prime: 0.5 * (lower + r),
        })
    }

    fn ln_weight(&self, tau_norm: f64, lambda: &[Complex64]) -> f64 {
        let norm = lambda.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let im = lambda.iter().map(|z| z.im * z.im).sum::<f64>().sqrt();
        f64::from(self.j) * (1.0 + tau_norm).ln()
            + self.r_prime * tau_norm
            + f64::from(self.l) * (1.0 + norm).ln()
            + self.rate * im
    }
}

/// Per-coordinate factor of one `w`-term: `exp(ln_abs) * phase`.
#[derive(Debug, Clone, Copy)]
struct Split {
    ln_abs: f64,
    phase: Complex64,
}

impl Split {
    fn new(l: Complex64) -> Self {
        Self { ln_abs: l.re, phase: Complex64::from_polar(1.0, l.im) }
    }
}

/// Log of `sup |F_tau(lambda)| / weight` over the K-types and grid, with the
/// maximizer. All `w`-terms factor over the coordinates, so per-coordinate
/// tables are built once per K-type and `p_{lambda0}(w lambda)` once per point.
fn calibrate(si: &SymmetrizedInterpolant, ex: &GrowthExponents, taus: &[(Vec<i64>, ProductKType)], g: &GridSpec) -> Result<Worst> {
    let l = si.model.rank();
    let axis: Vec<Complex64> = g.rect_points().into_iter().map(|(x, y)| Complex64::new(x, y)).collect();
    let n_axis = axis.len();
    let total = n_axis.pow(l as u32);
    let flips: Vec<Vec<bool>> = si.group.iter().map(flips).collect();
    struct TauTable {
        // [coordinate][grid index] -> (plus, minus)
        cols: Vec<Vec<(Split, Split)>>,
        ln_tau: f64,
    }
    let mut tables = Vec::with_capacity(taus.len());
    for (_, tau) in taus {
        let f = build_f_tau(si, tau)?;
        let cols = (0..l)
            .map(|i| {
                axis.par_iter()
                    .map(|&z| {
                        let (a, b) = f.factor_logs(i, z);
                        (Split::new(a), Split::new(b))
                    })
                    .collect()
            })
            .collect();
        let tn = tau.norm();
        let ln_tau = -f.ln_norm.re - f64::from(ex.j) * (1.0 + tn).ln() - ex.r_prime * tn;
        tables.push(TauTable { cols, ln_tau });
    }
    let best = (0..total)
        .into_par_iter()
        .map(|flat| {
            let mut ks = Vec::with_capacity(l);
            let mut rest = flat;
            for _ in 0..l {
                ks.push(rest % n_axis);
                rest /= n_axis;
            }
            let lam: Vec<Complex64> = ks.iter().map(|&k| axis[k]).collect();
            let p_w: Vec<Complex64> = flips
                .iter()
                .map(|flip| {
                    let wl: Vec<Complex64> = lam.iter().zip(flip).map(|(&z, &f)| if f { -z } else { z }).collect();
                    si.p_poly.eval(&wl)
                })
                .collect();
            let norm = lam.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let im = lam.iter().map(|z| z.im * z.im).sum::<f64>().sqrt();
            let ln_lam = -f64::from(ex.l) * (1.0 + norm).ln() - ex.rate * im;
            let mut best = (f64::NEG_INFINITY, usize::MAX);
            let mut mags = vec![0.0; flips.len()];
            for (t_idx, t) in tables.iter().enumerate() {
                let mut shift = f64::NEG_INFINITY;
                for (w, flip) in flips.iter().enumerate() {
                    let mut m = 0.0;
                    for (i, &f) in flip.iter().enumerate() {
                        let e = &t.cols[i][ks[i]];
                        m += if f { e.1.ln_abs } else { e.0.ln_abs };
                    }
                    mags[w] = m;
                    if p_w[w] != Complex64::new(0.0, 0.0) && m > shift {
                        shift = m;
                    }
                }
                if !shift.is_finite() {
                    continue;
                }
                let mut sum = Complex64::new(0.0, 0.0);
                for (w, flip) in flips.iter().enumerate() {
                    if p_w[w] == Complex64::new(0.0, 0.0) || !mags[w].is_finite() {
                        continue;
                    }
                    let mut ph = p_w[w];
                    for (i, &f) in flip.iter().enumerate() {
                        let e = &t.cols[i][ks[i]];
                        ph *= if f { e.1.phase } else { e.0.phase };
                    }
                    sum += ph * (mags[w] - shift).exp();
                }
                if sum == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let v = shift + sum.norm().ln() + t.ln_tau + ln_lam;
                if v > best.0 {
                    best = (v, t_idx);
                }
            }
            (best.0, best.1, flat)
        })
        .reduce(
            || (f64::NEG_INFINITY, usize::MAX, usize::MAX),
            |a, b| if b.0 > a.0 || (b.0 == a.0 && (b.1, b.2) < (a.1, a.2)) { b } else { a },
        );
    let (val, t_idx, flat) = best;
    let mut worst = Worst { value: f64::NEG_INFINITY, witness: Witness::new() };
    if t_idx != usize::MAX {
        let mut rest = flat;
        let lam: Vec<Complex64> = (0..l)
            .map(|_| {
                let k = rest % n_axis;
                rest /= n_axis;
                axis[k]
            })
            .collect();
        worst.offer(val, || {
            let mut wit = point_witness(&lam, &[]);
            wit.extend(tau_witness(&taus[t_idx].0));
            wit
        });
    }
    Ok(worst)
}

/// Empirical constant of the Paley-Wiener type bound
/// `|F_tau(lambda)| <= C' (1+|tau|)^j e^{r'|tau|} (1+|lambda|)^l e^{A R |Im lambda|}`
/// on the grid `g` and on its refinement with `2 res - 1` points per axis.
/// The violation is the relative change of `C'` under refinement.
pub fn estimate_condition_iii(si: &SymmetrizedInterpolant, tau_max: f64, r: f64, g: &GridSpec) -> Result<VerificationReport> {
    let started = Instant::now();
    g.validate()?;
    if !matches!(g.region, Region::Rect { .. }) {
        return Err(Error::InvalidParameter("condition (iii) needs a rectangular region".into()));
    }
    let ex = GrowthExponents::for_interpolant(si, r)?;
    let taus = si.ktypes(tau_max);
    let coarse = calibrate(si, &ex, &taus, g)?;
    let mut fine_grid = g.clone();
    fine_grid.resolution = 2 * g.resolution - 1;
    let fine = calibrate(si, &ex, &taus, &fine_grid)?;
    let (c_coarse, c_fine) = (coarse.value.exp(), fine.value.exp());
    let change = ((fine.value - coarse.value).exp() - 1.0).abs();
    let constants = Constants::from([
        ("C_prime".into(), c_fine),
        ("C_prime_coarse".into(), c_coarse),
        ("j".into(), f64::from(ex.j)),
        ("l".into(), f64::from(ex.l)),
        ("rate".into(), ex.rate),
        ("r_prime".into(), ex.r_prime),
        ("r".into(), r),
        ("R".into(), si.r),
        ("m_global".into(), f64::from(si.model.m_global)),
        ("m_max".into(), f64::from(si.model.m_max())),
        ("ktypes".into(), taus.len() as f64),
        ("f_factors_per_tau".into(), (PSI_POWER as usize * si.model.num_positive()) as f64),
    ]);
    Ok(VerificationReport::new(
        "ansatz2-condition-iii",
        g.clone(),
        if change.is_finite() { change } else { f64::INFINITY },
        fine.witness,
        constants,
        0.02,
        started,
    ))
}

/// CSV rows `re_0,im_0,...,tau,abs_F,weight,normalized` for one K-type.
pub fn write_scan_csv<W: Write>(
    mut out: W,
    si: &SymmetrizedInterpolant,
    tau: &ProductKType,
    ex: &GrowthExponents,
    points: &[Vec<Complex64>],
) -> Result<()> {
    let f = build_f_tau(si, tau)?;
    let l = si.model.rank();
    let mut header: Vec<String> = (0..l).flat_map(|i| [format!("re_{i}"), format!("im_{i}")]).collect();
    header.extend(["tau", "abs_F", "weight", "normalized"].map(String::from));
    let io = |e: std::io::Error| Error::InvalidParameter(format!("write failed: {e}"));
    writeln!(out, "{}", header.join(",")).map_err(io)?;
    let tn = tau.norm();
    for lam in points {
        let v = f.eval_log(lam);
        let ln_w = ex.ln_weight(tn, lam);
        let abs_f = v.value().norm();
        let norm = if v.sum.norm() == 0.0 { 0.0 } else { (v.ln_abs() - ln_w).exp() };
        let mut cols: Vec<String> = lam.iter().flat_map(|z| [z.re.to_string(), z.im.to_string()]).collect();
        cols.extend([tn.to_string(), abs_f.to_string(), ln_w.exp().to_string(), norm.to_string()]);
        writeln!(out, "{}", cols.join(",")).map_err(io)?;
    }
    Ok(())
}

/// Per-K-type count of `f` factors, keyed by product index.
pub fn f_factor_counts(si: &SymmetrizedInterpolant, tau_max: f64) -> Result<BTreeMap<Vec<i64>, usize>> {
    si.ktypes(tau_max)
        .into_iter()
        .map(|(idx, tau)| Ok((idx, build_f_tau(si, &tau)?.f_factor_count())))
        .collect()
}
