//! JSON run configuration.

use std::f64::consts::PI;
use std::fmt;

use latticesum::dispersion::Method;
use latticesum::ewald::EwaldConfig;
use latticesum::model::{perfect_square_side, EnergyScale, LatticeGeometry, TransitionDipole};
use serde::de::{self, Deserializer, Visitor};
use serde::Deserialize;

use crate::error::{CliError, Result};

/// Everything a command needs. Missing keys take the defaults of
/// [`RunConfig::default`]; unknown keys are rejected.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub a_angstrom: f64,
    pub b_over_a: f64,
    pub mu_e_angstrom: f64,
    pub ea_ev: f64,
    pub theta: Thetas,
    pub phi_points: usize,
    pub ka_values: Vec<f64>,
    pub k_direction: KDirection,
    /// Sites per plane; sets the k-grid when `k_direction` is `"grid"`.
    pub n_sites: usize,
    pub n_planes: usize,
    pub method: MethodName,
    pub direct_cutoff: usize,
    pub ewald: EwaldSection,
    pub nearest_only: bool,
    pub output_path: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            a_angstrom: 1000.0,
            b_over_a: 10.0,
            mu_e_angstrom: 1.0,
            ea_ev: 1.0,
            theta: Thetas::Many(vec![0.0, PI / 6.0, PI / 5.0, PI / 4.0, PI / 3.0, PI / 2.0]),
            phi_points: 360,
            ka_values: vec![1e-3],
            k_direction: KDirection::Angle(0.0),
            n_sites: 100,
            n_planes: 2,
            method: MethodName::Ewald,
            direct_cutoff: 500,
            ewald: EwaldSection::default(),
            nearest_only: false,
            output_path: None,
        }
    }
}

/// A single dipole angle or a list of them.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum Thetas {
    One(f64),
    Many(Vec<f64>),
}

impl Thetas {
    pub fn values(&self) -> &[f64] {
        match self {
            Thetas::One(t) => std::slice::from_ref(t),
            Thetas::Many(v) => v,
        }
    }
}

/// Direction of `k` for the `ka_values` scan, or the full k-grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KDirection {
    Angle(f64),
    Grid,
}

impl<'de> Deserialize<'de> for KDirection {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = KDirection;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an angle in radians or the string \"grid\"")
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<KDirection, E> {
                Ok(KDirection::Angle(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<KDirection, E> {
                Ok(KDirection::Angle(v as f64))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<KDirection, E> {
                Ok(KDirection::Angle(v as f64))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<KDirection, E> {
                match v {
                    "grid" => Ok(KDirection::Grid),
                    other => Err(E::invalid_value(de::Unexpected::Str(other), &self)),
                }
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodName {
    Direct,
    Ewald,
    Longwave,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EwaldSection {
    pub n_max: usize,
    pub l_max: usize,
    pub bessel_n_max: usize,
}

impl Default for EwaldSection {
    fn default() -> Self {
        let d = EwaldConfig::default();
        Self { n_max: d.n_max, l_max: d.l_max, bessel_n_max: d.bessel_n_max }
    }
}

/// Parses and validates a JSON document.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| invalid("", e.to_string()))?;
    if !value.is_object() {
        return Err(invalid("", "the configuration must be a JSON object"));
    }
    let cfg: RunConfig = serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        let key = if path == "." { String::new() } else { path };
        CliError::Config { key, message: e.into_inner().to_string() }
    })?;
    cfg.validate()?;
    Ok(cfg)
}

fn invalid(key: &str, message: impl Into<String>) -> CliError {
    CliError::Config { key: key.to_string(), message: message.into() }
}

fn positive(key: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(key, format!("must be positive and finite, got {v}")))
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        positive("a_angstrom", self.a_angstrom)?;
        positive("b_over_a", self.b_over_a)?;
        positive("mu_e_angstrom", self.mu_e_angstrom)?;
        positive("ea_ev", self.ea_ev)?;
        if self.theta.values().is_empty() {
            return Err(invalid("theta", "needs at least one angle"));
        }
        for (i, &t) in self.theta.values().iter().enumerate() {
            if !(0.0..=PI).contains(&t) {
                return Err(invalid(&format!("theta[{i}]"), format!("{t} is outside [0, π]")));
            }
        }
        if self.phi_points == 0 {
            return Err(invalid("phi_points", "must be at least 1"));
        }
        if self.ka_values.is_empty() {
            return Err(invalid("ka_values", "needs at least one value"));
        }
        for (i, &ka) in self.ka_values.iter().enumerate() {
            positive(&format!("ka_values[{i}]"), ka)?;
        }
        if let KDirection::Angle(a) = self.k_direction {
            if !a.is_finite() {
                return Err(invalid("k_direction", "angle must be finite"));
            }
        }
        if perfect_square_side(self.n_sites).is_err() || self.n_sites == 0 {
            return Err(invalid("n_sites", format!("{} is not a positive perfect square", self.n_sites)));
        }
        if self.n_planes == 0 {
            return Err(invalid("n_planes", "must be at least 1"));
        }
        if self.direct_cutoff == 0 {
            return Err(invalid("direct_cutoff", "must be at least 1"));
        }
        EwaldConfig::new(self.ewald.n_max, self.ewald.l_max, self.ewald.bessel_n_max).map_err(|e| match e {
            latticesum::Error::OutOfRange { name, reason } => invalid(&format!("ewald.{name}"), reason),
            other => invalid("ewald", other.to_string()),
        })?;
        Ok(())
    }

    pub fn ewald_config(&self) -> EwaldConfig {
        EwaldConfig { n_max: self.ewald.n_max, l_max: self.ewald.l_max, bessel_n_max: self.ewald.bessel_n_max }
    }

    pub fn method(&self) -> Method {
        match self.method {
            MethodName::Direct => Method::Direct { cutoff: self.direct_cutoff },
            MethodName::Ewald => Method::Ewald(self.ewald_config()),
            MethodName::Longwave => Method::LongWave,
        }
    }

    pub fn geometry(&self) -> Result<LatticeGeometry<f64>> {
        Ok(LatticeGeometry::new(self.a_angstrom, self.b_over_a, self.n_sites, self.n_planes)?)
    }

    pub fn energy_scale(&self) -> Result<EnergyScale<f64>> {
        Ok(EnergyScale::new(self.mu_e_angstrom, self.a_angstrom, self.ea_ev)?)
    }

    pub fn dipole(&self, theta: f64) -> Result<TransitionDipole<f64>> {
        Ok(TransitionDipole::from_theta(theta, self.mu_e_angstrom)?)
    }
}
