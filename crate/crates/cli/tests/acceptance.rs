//! Acceptance suite. Each criterion is one test that prints a single
//! `criterion NN: PASS|FAIL` line to the real stdout (bypassing the test
//! harness capture) and then asserts.

use std::f64::consts::PI;
use std::io::Write;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use latticesum::direct_sum::{d_tensor_direct, d_tensor_direct_with_tail, DirectSumConfig};
use latticesum::dispersion::{j_inter, j_intra, splitting, stack_matrix, symmetric_eigen, Method};
use latticesum::ewald::{d_inter_ewald, d_inter_longwave, d_intra_ewald, f_constant, s_inter_derivatives, EwaldConfig};
use latticesum::model::{j0_scale, Axis};
use latticesum::specfun::{bessel_k, bessel_k_oracle, BesselOrder};
use latticesum::{CouplingTensor64, LatticeGeometry64, TransitionDipole64, WaveVector64};
use latticesum_cli::commands::{self, TermsNeeded};
use latticesum_cli::RunConfig;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EWALD: Method = Method::Ewald(EwaldConfig { n_max: 6, l_max: 30, bessel_n_max: 8 });

fn report(n: u32, title: &str, pass: bool, detail: &str, elapsed: Duration) {
    let line = format!(
        "criterion {n:>2}: {} {title}: {detail} [{:.3} s]\n",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(line.as_bytes());
    let _ = out.flush();
}

fn finish(n: u32, title: &str, pass: bool, detail: String, start: Instant) {
    report(n, title, pass, &detail, start.elapsed());
    assert!(pass, "criterion {n} ({title}) failed: {detail}");
}

fn tensor_residuals(tensors: &[CouplingTensor64]) -> (f64, f64) {
    tensors.iter().fold((0.0, 0.0), |(h, t), d| (h.max(d.hermiticity_residual()), t.max(d.trace().norm())))
}

// Criterion 3 sample: ka ∈ {0.5, 1, 2, 3} along four off-axis directions.
fn inter_grid() -> &'static Vec<(f64, WaveVector64, CouplingTensor64, CouplingTensor64)> {
    static DATA: OnceLock<Vec<(f64, WaveVector64, CouplingTensor64, CouplingTensor64)>> = OnceLock::new();
    DATA.get_or_init(|| {
        let cfg = DirectSumConfig::inter(500).unwrap();
        let mut out = Vec::new();
        for h in [1.0, 2.0, 10.0] {
            for ka in [0.5, 1.0, 2.0, 3.0] {
                for dir in [1.0, 3.0, 5.0, 7.0] {
                    let k = WaveVector64::from_polar(ka, dir * PI / 8.0);
                    let ew = d_inter_ewald(k, h, EwaldConfig::default()).unwrap();
                    let ds = d_tensor_direct(k, cfg, h).unwrap();
                    out.push((h, k, ew, ds));
                }
            }
        }
        out
    })
}

fn intra_points() -> &'static Vec<(WaveVector64, CouplingTensor64, CouplingTensor64)> {
    static DATA: OnceLock<Vec<(WaveVector64, CouplingTensor64, CouplingTensor64)>> = OnceLock::new();
    DATA.get_or_init(|| {
        let cfg = DirectSumConfig::intra(2000).unwrap();
        let ks = [(0.7, 0.3), (1.3, -0.9), (2.1, 0.4), (-0.5, 2.6), (2.9, 1.7), (0.35, 1.05), (-1.8, -2.2), (1.0, 3.0)];
        ks.iter()
            .map(|&(x, y)| {
                let k = WaveVector64::new(x, y);
                (k, d_intra_ewald(k, EwaldConfig::default()), d_tensor_direct(k, cfg, 1.0).unwrap())
            })
            .collect()
    })
}

fn longwave_pairs() -> Vec<(f64, CouplingTensor64, CouplingTensor64)> {
    let k = WaveVector64::new(1e-3, 0.0);
    [10.0, 1.0]
        .into_iter()
        .map(|h| (h, d_inter_longwave(k, h).unwrap(), d_inter_ewald(k, h, EwaldConfig::default()).unwrap()))
        .collect()
}

fn figure_thetas() -> [f64; 6] {
    [0.0, PI / 6.0, PI / 5.0, PI / 4.0, PI / 3.0, PI / 2.0]
}

#[test]
fn criterion_01_f_constant() {
    let start = Instant::now();
    let f: f64 = f_constant(EwaldConfig::default());
    let f_time = start.elapsed();
    let oracle = d_tensor_direct_with_tail(WaveVector64::zero(), DirectSumConfig::intra(2000).unwrap(), 1.0).unwrap();
    let oracle_f = -oracle.get(Axis::X, Axis::X).re;
    let in_range = (4.51..=4.52).contains(&f);
    let oracle_gap = (f - oracle_f).abs();
    let nine_halves = (f / 4.5 - 1.0).abs();
    let pass = in_range && oracle_gap <= 5e-3 && nine_halves <= 5e-3 && f_time < Duration::from_secs(1);
    let detail = format!("F = {f:.12}, direct oracle (L = 2000, tail-corrected) {oracle_f:.12}, |diff| {oracle_gap:.2e}, vs 9/2 {:.3}% (F in {:.1} ms)", nine_halves * 100.0, f_time.as_secs_f64() * 1e3);
    finish(1, "F constant", pass, detail, start);
}

#[test]
fn criterion_02_j0_scale() {
    let start = Instant::now();
    let j0: f64 = j0_scale(1.0, 1000.0).unwrap();
    let rel = (j0 / 1.440e-8 - 1.0).abs();
    finish(2, "J0 scale", rel <= 5e-3, format!("J0 = {j0:.6e} eV, {:.3}% from 1.440e-8", rel * 100.0), start);
}

#[test]
fn criterion_03_inter_plane_oracle() {
    let start = Instant::now();
    let data = inter_grid();
    let worst = data.iter().map(|(_, _, ew, ds)| ew.max_abs_diff(ds)).fold(0.0, f64::max);
    let elapsed = start.elapsed();
    let pass = data.len() == 48 && worst <= 1e-6 && elapsed < Duration::from_secs(10);
    finish(3, "inter-plane Ewald vs direct (L = 500)", pass, format!("{} tensors, max componentwise diff {worst:.3e}", data.len()), start);
}

#[test]
fn criterion_04_intra_plane_oracle() {
    let start = Instant::now();
    let data = intra_points();
    let worst = data.iter().map(|(_, ew, ds)| ew.max_abs_diff(ds)).fold(0.0, f64::max);
    let elapsed = start.elapsed();
    let pass = data.len() == 8 && worst <= 1e-5 && elapsed < Duration::from_secs(30);
    finish(4, "intra-plane Ewald vs direct (L = 2000)", pass, format!("8 k-points, max componentwise diff {worst:.3e}"), start);
}

#[test]
fn criterion_05_long_wavelength_limit() {
    let start = Instant::now();
    let pairs = longwave_pairs();
    let (_, lw, ew) = &pairs[0];
    let rel_far = lw.max_abs_diff(ew) / ew.max_abs();
    let (_, lw, ew) = &pairs[1];
    let abs_near = lw.max_abs_diff(ew);
    let rel_near = abs_near / ew.max_abs();
    let pass = rel_far <= 1e-10 && abs_near <= 5e-3;
    let detail = format!(
        "b = 10a: relative diff {rel_far:.2e} (<= 1e-10); b = a: diff {abs_near:.3e} ({:.1}% of max |D|), limit 5e-3",
        rel_near * 100.0
    );
    finish(5, "long-wavelength single-term limit", pass, detail, start);
}

#[test]
fn criterion_06_anisotropy_sweep() {
    let start = Instant::now();
    let cfg = RunConfig::default();
    let rows = commands::sweep_phi(&cfg).unwrap();
    let elapsed = start.elapsed();
    let amp = 2.0 * PI * 1e-3 * (-1e-2_f64).exp();
    let worst = rows
        .iter()
        .map(|r| {
            let (s, c) = r.theta.sin_cos();
            (r.jprime_over_j0 - amp * (s * s * r.phi.cos().powi(2) - c * c)).abs()
        })
        .fold(0.0, f64::max);
    let close = |v: f64, target: f64| (v - target).abs() <= 1e-9;
    let flat = rows.iter().filter(|r| r.theta == 0.0).all(|r| close(r.jprime_over_j0, -amp));
    let normal: Vec<_> = rows.iter().filter(|r| r.theta == PI / 2.0).collect();
    let peak = normal.iter().map(|r| r.jprime_over_j0).fold(f64::NEG_INFINITY, f64::max);
    let at_zero = normal.iter().find(|r| r.phi == 0.0).unwrap().jprime_over_j0;
    let peak_ok = close(peak, amp) && at_zero == peak && (amp / 6.2206e-3 - 1.0).abs() < 1e-4;
    let thetas_ok = figure_thetas().iter().all(|t| rows.iter().filter(|r| r.theta == *t).count() == 360);
    let pass = worst <= 1e-9 && flat && peak_ok && thetas_ok && elapsed < Duration::from_secs(1);
    let detail = format!("{} rows, max deviation from closed form {worst:.2e}, theta = 0 flat: {flat}, peak {peak:.6e} at phi = 0: {peak_ok}", rows.len());
    finish(6, "J' anisotropy curves", pass, detail, start);
}

#[test]
fn criterion_07_pair_modes() {
    let start = Instant::now();
    let geom = LatticeGeometry64::new(1000.0, 10.0, 1, 2).unwrap();
    let mut worst = 0.0_f64;
    let mut worst_split = 0.0_f64;
    for method in [EWALD, Method::LongWave, Method::Direct { cutoff: 200 }] {
        for theta in figure_thetas() {
            let d = TransitionDipole64::from_theta(theta, 1.0).unwrap();
            for (ka, phi) in [(1e-3, 0.0), (0.3, 0.4), (1.5, 2.0)] {
                let k = WaveVector64::from_polar(ka, phi);
                let j = j_intra(k, &d, method).unwrap();
                let jp = j_inter(k, &d, 10.0, method).unwrap();
                let ev = symmetric_eigen(&stack_matrix(k, &d, &geom, method, false).unwrap()).unwrap();
                let mut expected = [j - jp, j + jp];
                expected.sort_by(f64::total_cmp);
                worst = worst.max((ev[0] - expected[0]).abs()).max((ev[1] - expected[1]).abs());
                worst_split = worst_split.max((splitting(k, &d, 10.0, method).unwrap() - 2.0 * jp.abs()).abs()).max(((ev[1] - ev[0]) - 2.0 * jp.abs()).abs());
            }
        }
    }
    let pass = worst <= 1e-12 && worst_split <= 1e-12;
    finish(7, "two-plane eigenvalues", pass, format!("max |eig - (J ± J')| = {worst:.2e} J0, splitting mismatch {worst_split:.2e} J0"), start);
}

#[test]
fn criterion_08_exponential_decay() {
    let start = Instant::now();
    let ka = 0.5;
    let k = WaveVector64::from_polar(ka, 0.3);
    let d = TransitionDipole64::from_theta(PI / 3.0, 1.0).unwrap();
    let pts: Vec<(f64, f64)> = (0..=40)
        .map(|i| {
            let h = 5.0 + 0.25 * f64::from(i);
            (h, j_inter(k, &d, h, EWALD).unwrap().abs().ln())
        })
        .collect();
    let n = pts.len() as f64;
    let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / n, pts.iter().map(|p| p.1).sum::<f64>() / n);
    let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    let rel = (slope / -ka - 1.0).abs();
    let pass = rel <= 1e-3 && start.elapsed() < Duration::from_secs(1);
    finish(8, "exponential decay of J'", pass, format!("fitted slope {slope:.10} vs -{ka}, relative {rel:.2e}"), start);
}

#[test]
fn criterion_09_tensor_invariants() {
    let start = Instant::now();
    let mut tensors: Vec<CouplingTensor64> = Vec::new();
    for (_, _, ew, ds) in inter_grid() {
        tensors.extend([*ew, *ds]);
    }
    for (_, ew, ds) in intra_points() {
        tensors.extend([*ew, *ds]);
    }
    for (_, lw, ew) in longwave_pairs() {
        tensors.extend([lw, ew]);
    }
    // the sweep of criterion 6
    for _theta in figure_thetas() {
        for i in 0..360 {
            let k = WaveVector64::from_polar(1e-3, 2.0 * PI * f64::from(i) / 360.0);
            tensors.push(d_inter_ewald(k, 10.0, EwaldConfig::default()).unwrap());
        }
    }
    let (herm, trace) = tensor_residuals(&tensors);
    let pass = herm <= 1e-10 && trace <= 1e-10;
    finish(9, "Hermiticity and trace", pass, format!("{} tensors, max Hermiticity residual {herm:.2e}, max |trace| {trace:.2e}", tensors.len()), start);
}

#[test]
fn criterion_10_special_functions() {
    let start = Instant::now();
    let mut worst = 0.0_f64;
    let mut worst_rec = 0.0_f64;
    for i in 0..50 {
        let x = (0.05_f64.ln() + (30.0_f64.ln() - 0.05_f64.ln()) * f64::from(i) / 49.0).exp();
        let mut vals = [0.0; 3];
        let mut refs = [0.0; 3];
        for (n, order) in [BesselOrder::Zero, BesselOrder::One, BesselOrder::Two].into_iter().enumerate() {
            vals[n] = bessel_k(order, x).unwrap();
            refs[n] = bessel_k_oracle(order, x).unwrap();
            worst = worst.max((vals[n] / refs[n] - 1.0).abs());
        }
        for k in [vals, refs] {
            worst_rec = worst_rec.max((k[2] - k[0] - 2.0 / x * k[1]).abs() / k[2]);
        }
    }
    let pass = worst <= 1e-9 && worst_rec <= 1e-10 && start.elapsed() < Duration::from_secs(1);
    finish(10, "Bessel K0, K1, K2", pass, format!("50 points in [0.05, 30], max relative diff vs quadrature {worst:.2e}, recurrence residual {worst_rec:.2e}"), start);
}

#[test]
fn criterion_11_convergence_report() {
    let start = Instant::now();
    let cfg = RunConfig { b_over_a: 1.0, ..RunConfig::default() };
    let report = commands::convergence(&cfg).unwrap();
    let ewald_ok = matches!(report.ewald_needed, TermsNeeded::Reached(n) if n <= 169);
    let direct_ok = match report.direct_needed {
        TermsNeeded::Reached(n) => n >= 1_000_000,
        TermsNeeded::Beyond(n) => n >= 1_000_000,
    };
    let ratio = report.term_ratio().unwrap_or(0.0);
    let pass = ewald_ok && direct_ok && ratio >= 1e3 && start.elapsed() < Duration::from_secs(30);
    finish(11, "Ewald vs direct convergence", pass, report.summary(), start);
}

#[test]
fn criterion_12_derivative_check() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let cfg = EwaldConfig::default();
    let s = |x: f64, y: f64| s_inter_derivatives(WaveVector64::new(x, y), 1.0, cfg).unwrap();
    let mut worst1 = 0.0_f64;
    let mut worst2 = 0.0_f64;
    for _ in 0..10 {
        let (x, y) = (rng.gen_range(0.1..0.9), rng.gen_range(1.0..3.0));
        let exact = s(x, y);
        let step = 1e-5;
        let fd1 = (s(x + step, y).value - s(x - step, y).value) / (2.0 * step);
        let second = |h: f64| (s(x + h, y).value - 2.0 * exact.value + s(x - h, y).value) / (h * h);
        let h = 1e-3;
        let fd2 = (4.0 * second(h / 2.0) - second(h)) / 3.0;
        worst1 = worst1.max((fd1 / exact.d_x - 1.0).abs());
        worst2 = worst2.max((fd2 / exact.d_xx - 1.0).abs());
    }
    let pass = worst1 <= 1e-7 && worst2 <= 1e-7;
    finish(12, "analytic derivatives of the inter-plane series", pass, format!("10 points, first derivative rel err {worst1:.2e}, second {worst2:.2e}"), start);
}
