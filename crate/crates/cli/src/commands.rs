//! The four commands. Each returns its rows; [`crate::write_csv`] renders
//! them.

use std::f64::consts::PI;
use std::time::Instant;

use latticesum::direct_sum::{d_tensor_direct, DirectSumConfig};
use latticesum::dispersion::{j_inter, j_intra, stack_spectrum, Method};
use latticesum::ewald::{d_inter_ewald, EwaldConfig};
use latticesum::model::{Axis, WaveVector};
use serde::Serialize;

use crate::config::{KDirection, RunConfig};
use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPhiRow {
    pub theta: f64,
    pub phi: f64,
    pub ka: f64,
    pub b_over_a: f64,
    pub jprime_over_j0: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DispersionRow {
    pub kxa: f64,
    pub kya: f64,
    pub j_over_j0: f64,
    pub jprime_over_j0: f64,
    pub mode_index: usize,
    pub energy_ev: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub engine: &'static str,
    pub terms: usize,
    pub value_dzz: f64,
    pub abs_err_vs_reference: f64,
    pub wall_time_ns: u128,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StackRow {
    pub kxa: f64,
    pub kya: f64,
    pub mode_index: usize,
    pub energy_over_j0: f64,
}

fn finite(what: &str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::NonFinite { what: what.to_string() })
    }
}

/// Wave vectors scanned by `dispersion` and `stack`: `ka_values` along
/// `k_direction`, or the full k-grid of the lattice.
pub fn k_points(cfg: &RunConfig) -> Result<Vec<WaveVector<f64>>> {
    match cfg.k_direction {
        KDirection::Angle(angle) => Ok(cfg.ka_values.iter().map(|&ka| WaveVector::from_polar(ka, angle)).collect()),
        KDirection::Grid => Ok(cfg.geometry()?.k_grid()),
    }
}

/// The configured engine, except at the zone centre where the inter-plane
/// series is undefined and the tail-corrected direct sum is used instead.
pub fn method_at(cfg: &RunConfig, k: WaveVector<f64>) -> Method {
    let method = cfg.method();
    if k.reduced().is_zero() && !matches!(method, Method::Direct { .. }) {
        Method::Direct { cutoff: cfg.direct_cutoff }
    } else {
        method
    }
}

/// `J′/J₀` over a uniform `[0, 2π)` grid of `phi_points` directions, for
/// every `θ` and `ka`.
pub fn sweep_phi(cfg: &RunConfig) -> Result<Vec<SweepPhiRow>> {
    let method = cfg.method();
    let mut rows = Vec::with_capacity(cfg.theta.values().len() * cfg.ka_values.len() * cfg.phi_points);
    for &theta in cfg.theta.values() {
        let dipole = cfg.dipole(theta)?;
        for &ka in &cfg.ka_values {
            for i in 0..cfg.phi_points {
                let phi = 2.0 * PI * i as f64 / cfg.phi_points as f64;
                let k = WaveVector::from_polar(ka, phi);
                let jp = j_inter(k, &dipole, cfg.b_over_a, method)?;
                rows.push(SweepPhiRow { theta, phi, ka, b_over_a: cfg.b_over_a, jprime_over_j0: finite("jprime_over_j0", jp)? });
            }
        }
    }
    Ok(rows)
}

/// Stack eigenmodes at each k, with the dipole at the first configured `θ`.
/// `jprime_over_j0` is the nearest-plane coupling (zero for one plane).
pub fn dispersion(cfg: &RunConfig) -> Result<Vec<DispersionRow>> {
    let dipole = cfg.dipole(cfg.theta.values()[0])?;
    let geometry = cfg.geometry()?;
    let scale = cfg.energy_scale()?;
    let mut rows = Vec::new();
    for k in k_points(cfg)? {
        let method = method_at(cfg, k);
        let j = finite("j_over_j0", j_intra(k, &dipole, method)?)?;
        let jp = if cfg.n_planes > 1 { finite("jprime_over_j0", j_inter(k, &dipole, cfg.b_over_a, method)?)? } else { 0.0 };
        let spectrum = stack_spectrum(k, &dipole, &geometry, method, cfg.nearest_only, &scale)?;
        for (mode_index, &e) in spectrum.energies_ev.iter().enumerate() {
            rows.push(DispersionRow { kxa: k.kxa, kya: k.kya, j_over_j0: j, jprime_over_j0: jp, mode_index, energy_ev: finite("energy_ev", e)? });
        }
    }
    Ok(rows)
}

/// Like [`dispersion`] but energies relative to `E_A` in units of `J₀`;
/// needs at least two planes.
pub fn stack(cfg: &RunConfig) -> Result<Vec<StackRow>> {
    if cfg.n_planes < 2 {
        return Err(CliError::Config { key: "n_planes".into(), message: format!("stack needs at least 2 planes, got {}", cfg.n_planes) });
    }
    let dipole = cfg.dipole(cfg.theta.values()[0])?;
    let geometry = cfg.geometry()?;
    let scale = cfg.energy_scale()?;
    let mut rows = Vec::new();
    for k in k_points(cfg)? {
        let spectrum = stack_spectrum(k, &dipole, &geometry, method_at(cfg, k), cfg.nearest_only, &scale)?;
        for (mode_index, &e) in spectrum.energies_j0.iter().enumerate() {
            rows.push(StackRow { kxa: k.kxa, kya: k.kya, mode_index, energy_over_j0: finite("energy_over_j0", e)? });
        }
    }
    Ok(rows)
}

pub const DIRECT_CUTOFFS: [usize; 5] = [10, 30, 100, 300, 1000];
pub const EWALD_N_MAX: std::ops::RangeInclusive<usize> = 1..=8;
pub const REFERENCE_N_MAX: usize = 12;
pub const EWALD_TARGET: f64 = 1e-10;
pub const DIRECT_TARGET: f64 = 1e-6;

/// Terms an engine needed to reach its target error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermsNeeded {
    Reached(usize),
    /// Not reached even with this many terms.
    Beyond(usize),
}

impl TermsNeeded {
    fn from_rows(rows: &[ConvergenceRow], engine: &str, target: f64) -> Self {
        let mine = rows.iter().filter(|r| r.engine == engine);
        match mine.clone().find(|r| r.abs_err_vs_reference <= target) {
            Some(r) => TermsNeeded::Reached(r.terms),
            None => TermsNeeded::Beyond(mine.map(|r| r.terms).max().unwrap_or(0)),
        }
    }
}

/// Inter-plane `D̃_zz` from both engines against an `n_max = 12` Ewald
/// reference.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub k: WaveVector<f64>,
    pub b_over_a: f64,
    pub reference: f64,
    pub rows: Vec<ConvergenceRow>,
    pub ewald_needed: TermsNeeded,
    pub direct_needed: TermsNeeded,
}

impl ConvergenceReport {
    /// Direct terms for `1e-6` over Ewald terms for `1e-10`. When the
    /// direct sum never got there, its largest window stands in and the
    /// ratio is a lower bound. `None` if Ewald missed its target.
    pub fn term_ratio(&self) -> Option<f64> {
        let ewald = match self.ewald_needed {
            TermsNeeded::Reached(n) => n,
            TermsNeeded::Beyond(_) => return None,
        };
        let direct = match self.direct_needed {
            TermsNeeded::Reached(n) | TermsNeeded::Beyond(n) => n,
        };
        Some(direct as f64 / ewald as f64)
    }

    pub fn summary(&self) -> String {
        let show = |t: TermsNeeded| match t {
            TermsNeeded::Reached(n) => format!("{n} terms"),
            TermsNeeded::Beyond(n) => format!("more than {n} terms"),
        };
        let ratio = match self.term_ratio() {
            Some(r) if matches!(self.direct_needed, TermsNeeded::Beyond(_)) => format!("> {r:.0}"),
            Some(r) => format!("{r:.0}"),
            None => "n/a".into(),
        };
        format!(
            "k a = ({}, {}), b/a = {}: ewald needs {} for {:e}, direct needs {} for {:e}; term ratio {}",
            self.k.kxa,
            self.k.kya,
            self.b_over_a,
            show(self.ewald_needed),
            EWALD_TARGET,
            show(self.direct_needed),
            DIRECT_TARGET,
            ratio
        )
    }
}

/// Error of the inter-plane `D̃_zz` versus truncation, at the first `ka` along
/// `k_direction` (along `x` in grid mode).
pub fn convergence(cfg: &RunConfig) -> Result<ConvergenceReport> {
    let angle = match cfg.k_direction {
        KDirection::Angle(a) => a,
        KDirection::Grid => 0.0,
    };
    let k = WaveVector::from_polar(cfg.ka_values[0], angle);
    let b = cfg.b_over_a;
    let base = cfg.ewald_config();
    let zz = |cfg: EwaldConfig| -> Result<f64> { Ok(d_inter_ewald(k, b, cfg)?.get(Axis::Z, Axis::Z).re) };
    let reference = finite("reference", zz(base.with_n_max(REFERENCE_N_MAX))?)?;

    let mut rows = Vec::new();
    for cutoff in DIRECT_CUTOFFS {
        let dcfg = DirectSumConfig::inter(cutoff)?;
        let start = Instant::now();
        let value = d_tensor_direct(k, dcfg, b)?.get(Axis::Z, Axis::Z).re;
        let wall_time_ns = start.elapsed().as_nanos();
        let value = finite("value_dzz", value)?;
        rows.push(ConvergenceRow { engine: "direct", terms: dcfg.term_count(), value_dzz: value, abs_err_vs_reference: (value - reference).abs(), wall_time_ns });
    }
    for n_max in EWALD_N_MAX {
        let ecfg = base.with_n_max(n_max);
        let start = Instant::now();
        let value = zz(ecfg)?;
        let wall_time_ns = start.elapsed().as_nanos();
        let value = finite("value_dzz", value)?;
        rows.push(ConvergenceRow { engine: "ewald", terms: ecfg.inter_term_count(), value_dzz: value, abs_err_vs_reference: (value - reference).abs(), wall_time_ns });
    }
    let ewald_needed = TermsNeeded::from_rows(&rows, "ewald", EWALD_TARGET);
    let direct_needed = TermsNeeded::from_rows(&rows, "direct", DIRECT_TARGET);
    Ok(ConvergenceReport { k, b_over_a: b, reference, rows, ewald_needed, direct_needed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;

    fn amp(ka: f64, b: f64) -> f64 {
        2.0 * PI * ka * (-ka * b).exp()
    }

    #[test]
    fn sweep_phi_defaults() {
        let cfg = parse_config(r#"{"theta": [0, 1.5707963267948966, 0.7853981633974483], "phi_points": 8}"#).unwrap();
        let rows = sweep_phi(&cfg).unwrap();
        assert_eq!(rows.len(), 24);
        let a = amp(1e-3, 10.0);
        for r in &rows[..8] {
            assert!((r.jprime_over_j0 + a).abs() < 1e-12);
        }
        let peak = rows[8..16].iter().map(|r| r.jprime_over_j0).fold(f64::MIN, f64::max);
        assert_eq!(peak, rows[8].jprime_over_j0);
        assert!((peak - 6.2206e-3).abs() < 1e-7);
        assert!(rows[16].jprime_over_j0.abs() < 1e-12);
        assert!(rows[20].jprime_over_j0.abs() < 1e-12);
        assert_eq!(rows[20].phi, PI);
    }

    #[test]
    fn dispersion_pair_split() {
        let cfg = parse_config(r#"{"theta": 1.5707963267948966, "ka_values": [0.001, 0.1, 0.3]}"#).unwrap();
        let rows = dispersion(&cfg).unwrap();
        assert_eq!(rows.len(), 6);
        let j0 = cfg.energy_scale().unwrap().j0_ev;
        for pair in rows.chunks(2) {
            // energies carry E_A = 1 eV, so they resolve J₀ only to ~1e-8
            let gap = pair[1].energy_ev - pair[0].energy_ev;
            assert!((gap - 2.0 * pair[0].jprime_over_j0.abs() * j0).abs() < 4.0 * f64::EPSILON);
        }
        let decay = rows[4].jprime_over_j0 / rows[2].jprime_over_j0;
        let expected = amp(0.3, 10.0) / amp(0.1, 10.0);
        assert!((decay / expected - 1.0).abs() < 1e-6);

        let single = parse_config(r#"{"n_planes": 1}"#).unwrap();
        let rows = dispersion(&single).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].jprime_over_j0, 0.0);
        let scale = single.energy_scale().unwrap();
        assert!((rows[0].energy_ev - scale.to_ev(rows[0].j_over_j0)).abs() < 1e-15);
    }

    #[test]
    fn grid_mode_covers_zone_centre() {
        let cfg = parse_config(r#"{"k_direction": "grid", "n_sites": 16, "direct_cutoff": 40, "b_over_a": 2}"#).unwrap();
        let rows = dispersion(&cfg).unwrap();
        assert_eq!(rows.len(), 2 * 25);
        assert!(rows.iter().any(|r| r.kxa == 0.0 && r.kya == 0.0));
    }

    #[test]
    fn stack_matches_dispersion_and_rejects_one_plane() {
        let cfg = parse_config(r#"{"theta": 0.3, "ka_values": [0.2, 0.7]}"#).unwrap();
        let disp = dispersion(&cfg).unwrap();
        let st = stack(&cfg).unwrap();
        let scale = cfg.energy_scale().unwrap();
        for (d, s) in disp.iter().zip(&st) {
            assert_eq!(d.mode_index, s.mode_index);
            assert!((d.energy_ev - scale.to_ev(s.energy_over_j0)).abs() < 1e-15);
        }
        let single = parse_config(r#"{"n_planes": 1}"#).unwrap();
        assert!(matches!(stack(&single), Err(CliError::Config { key, .. }) if key == "n_planes"));
    }

    #[test]
    fn nearest_only_close_to_full() {
        let full = parse_config(r#"{"n_planes": 5, "ka_values": [0.5], "theta": 1.0}"#).unwrap();
        let near = RunConfig { nearest_only: true, ..full.clone() };
        let a = stack(&full).unwrap();
        let b = stack(&near).unwrap();
        let diff = a.iter().zip(&b).map(|(x, y)| (x.energy_over_j0 - y.energy_over_j0).abs()).fold(0.0, f64::max);
        // bounded by the dropped couplings, the largest being ~2π ka e^{-2kb}
        let dipole = full.dipole(1.0).unwrap();
        let k = WaveVector::new(0.5, 0.0);
        let dropped: f64 = (2..5).map(|d| j_inter(k, &dipole, 10.0 * d as f64, full.method()).unwrap().abs()).sum();
        assert!(diff > 0.0 && diff <= 2.0 * dropped, "{diff:e} vs {dropped:e}");
        assert!(diff < 1e-3);
    }

    #[test]
    fn convergence_with_short_windows() {
        let cfg = parse_config(r#"{"b_over_a": 1, "ka_values": [0.5], "k_direction": 0.3}"#).unwrap();
        let report = convergence(&cfg).unwrap();
        assert_eq!(report.rows.len(), 13);
        let ew6 = report.rows.iter().find(|r| r.engine == "ewald" && r.terms == 169).unwrap();
        assert!(ew6.abs_err_vs_reference <= 1e-10);
        assert!(matches!(report.ewald_needed, TermsNeeded::Reached(n) if n <= 169));
        assert!(report.summary().contains("term ratio"));
    }
}
