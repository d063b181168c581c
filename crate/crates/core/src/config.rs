//! Material, geometry and solver settings, loaded from a TOML file with `[material]`,
//! `[geometry]` and `[solver]` sections. Missing fields default to a silicon nanowire.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::consts::SPEED_OF_LIGHT;
use crate::error::{Error, Result};
use crate::scalar::{c, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, bound(deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct Material<T> {
    /// Refractive index.
    pub n: T,
    /// Longitudinal sound speed (m/s).
    pub v_l: T,
    /// Transverse sound speed (m/s).
    pub v_t: T,
    /// Mass density (kg/m³).
    pub rho: T,
    /// Elasto-optic coefficient.
    pub p12: T,
}

impl<T: Scalar> Default for Material<T> {
    fn default() -> Self {
        Self { n: c(3.5), v_l: c(8433.0), v_t: c(5843.0), rho: c(2328.0), p12: c(0.017) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, bound(deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct Geometry<T> {
    /// Wire radius (m).
    pub a: T,
    /// Wire length (m).
    #[serde(alias = "L")]
    pub length: T,
}

impl<T: Scalar> Default for Geometry<T> {
    fn default() -> Self {
        Self { a: c(250e-9), length: c(0.01) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, bound(deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct SolverSettings<T> {
    /// Relative residual target for characteristic-equation roots.
    pub root_tol: T,
    /// Relative error target for normalization and coupling integrals.
    pub quad_tol: T,
    /// Default number of wavenumber samples on a dispersion curve.
    pub dispersion_points: usize,
    /// Uniform sub-intervals of the photon root scan (a logarithmic tail near the light line is added).
    pub photon_scan_intervals: usize,
    /// Sub-intervals of the phonon frequency scan.
    pub phonon_scan_intervals: usize,
    /// Phonon scan cap: Ω_max = factor·v_l·√(q² + (radial/a)²).
    pub phonon_window_factor: T,
    pub phonon_window_radial: T,
    /// A continuation step is rejected when |Δω| exceeds this multiple of the extrapolated step.
    pub lost_track_factor: T,
}

impl<T: Scalar> Default for SolverSettings<T> {
    fn default() -> Self {
        Self {
            root_tol: c(1e-10),
            quad_tol: c(1e-9),
            dispersion_points: 600,
            photon_scan_intervals: 400,
            phonon_scan_intervals: 2000,
            phonon_window_factor: c(1.5),
            phonon_window_radial: c(12.0),
            lost_track_factor: c(5.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, bound(deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct Config<T> {
    pub material: Material<T>,
    pub geometry: Geometry<T>,
    pub solver: SolverSettings<T>,
}

impl<T: Scalar> Default for Config<T> {
    fn default() -> Self {
        Self { material: Material::default(), geometry: Geometry::default(), solver: SolverSettings::default() }
    }
}

/// Quantities derived from a [`Material`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedConstants<T> {
    /// Electrostriction constant n⁴·p12.
    pub gamma_el: T,
    /// Lamé constants (Pa).
    pub mu: T,
    pub lambda: T,
    /// Speed of light (m/s).
    pub c: T,
}

impl<T: Scalar> Material<T> {
    pub fn derived(&self) -> DerivedConstants<T> {
        DerivedConstants {
            gamma_el: self.n.powi(4) * self.p12,
            mu: self.rho * self.v_t * self.v_t,
            lambda: self.rho * (self.v_l * self.v_l - c::<T>(2.0) * self.v_t * self.v_t),
            c: c(SPEED_OF_LIGHT),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::Config(m.to_string()));
        if !(self.n > T::one()) {
            return fail("material.n must exceed 1");
        }
        if !(self.v_t > T::zero()) {
            return fail("material.v_t must be positive");
        }
        if !(self.v_l > self.v_t) {
            return fail("material.v_l must exceed material.v_t");
        }
        if !(self.rho > T::zero()) {
            return fail("material.rho must be positive");
        }
        if !(self.p12 >= T::zero()) {
            return fail("material.p12 must be non-negative");
        }
        Ok(())
    }
}

impl<T: Scalar> Geometry<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.a > T::zero() && self.a.is_finite()) {
            return Err(Error::Config("geometry.a must be positive".into()));
        }
        if !(self.length >= c::<T>(100.0) * self.a && self.length.is_finite()) {
            return Err(Error::Config("geometry.length must be at least 100 radii".into()));
        }
        Ok(())
    }
}

impl<T: Scalar> SolverSettings<T> {
    pub fn validate(&self) -> Result<()> {
        let unit = |v: T| v > T::zero() && v < T::one();
        if !unit(self.root_tol) {
            return Err(Error::Config("solver.root_tol must lie in (0, 1)".into()));
        }
        if !unit(self.quad_tol) {
            return Err(Error::Config("solver.quad_tol must lie in (0, 1)".into()));
        }
        if self.dispersion_points < 2 || self.photon_scan_intervals < 2 || self.phonon_scan_intervals < 2 {
            return Err(Error::Config("solver grid sizes must be at least 2".into()));
        }
        if !(self.phonon_window_factor > T::zero() && self.phonon_window_radial > T::zero()) {
            return Err(Error::Config("solver.phonon_window_* must be positive".into()));
        }
        if !(self.lost_track_factor > T::one()) {
            return Err(Error::Config("solver.lost_track_factor must exceed 1".into()));
        }
        Ok(())
    }
}

impl<T: Scalar> Config<T> {
    pub fn validate(&self) -> Result<()> {
        self.material.validate()?;
        self.geometry.validate()?;
        self.solver.validate()
    }

    /// Converts every field to another precision.
    pub fn cast<U: Scalar>(&self) -> Config<U> {
        let f = |v: T| U::lit(v.to_f64_lossy());
        let m = &self.material;
        let g = &self.geometry;
        let s = &self.solver;
        Config {
            material: Material { n: f(m.n), v_l: f(m.v_l), v_t: f(m.v_t), rho: f(m.rho), p12: f(m.p12) },
            geometry: Geometry { a: f(g.a), length: f(g.length) },
            solver: SolverSettings {
                root_tol: f(s.root_tol),
                quad_tol: f(s.quad_tol),
                dispersion_points: s.dispersion_points,
                photon_scan_intervals: s.photon_scan_intervals,
                phonon_scan_intervals: s.phonon_scan_intervals,
                phonon_window_factor: f(s.phonon_window_factor),
                phonon_window_radial: f(s.phonon_window_radial),
                lost_track_factor: f(s.lost_track_factor),
            },
        }
    }
}

impl Config<f64> {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }
}

/// Loads and validates a configuration file.
pub fn load_config(path: impl AsRef<Path>) -> Result<Config<f64>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Config::from_toml_str(&text)
}
