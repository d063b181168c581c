//! Photon-phonon coupling rates for two co-polarized HE₁₁ photons and one longitudinal phonon:
//! moving-boundary (radiation pressure) and electrostriction contributions, and sweeps of
//! both over the (ka, qa) plane.

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::numerics::adaptive_simpson;
use crate::phonon::{PhononMode, PhononSolver};
use crate::photon::{Polarization, PhotonMode, PhotonSolver, Side};
use crate::scalar::{c, Scalar};

/// Outcome of one coupling-map point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CouplingStatus {
    Ok,
    /// k − q = 0: no guided scattered photon.
    ScatteredAtRest,
    /// A photon mode could not be solved or normalized.
    PhotonUnresolved,
    /// The phonon branch has no root at q, or its normalization failed.
    PhononUnresolved,
    /// The electrostriction integral did not converge.
    QuadratureFailed,
}

impl CouplingStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Ok => "ok",
            Self::ScatteredAtRest => "scattered_at_rest",
            Self::PhotonUnresolved => "photon_unresolved",
            Self::PhononUnresolved => "phonon_unresolved",
            Self::QuadratureFailed => "quadrature_failed",
        }
    }
}

/// Coupling of pump k to scattered k − q through phonon (q, branch). Rates in rad/s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct CouplingRecord<T> {
    /// Pump wavenumber (1/m).
    pub k: T,
    /// Phonon wavenumber (1/m).
    pub q: T,
    pub branch: usize,
    pub f_rp: Complex<T>,
    pub f_el: Complex<T>,
    pub f_total: Complex<T>,
    pub status: CouplingStatus,
}

impl<T: Scalar> CouplingRecord<T> {
    fn failed(k: T, q: T, branch: usize, status: CouplingStatus) -> Self {
        let nan = Complex::new(T::nan(), T::nan());
        Self { k, q, branch, f_rp: nan, f_el: nan, f_total: nan, status }
    }

    /// Wavenumber of the scattered photon (1/m).
    pub fn k_scattered(&self) -> T {
        self.k - self.q
    }
}

fn check_same_setup<T: Scalar>(pump: &PhotonMode<T>, scattered: &PhotonMode<T>, phonon: &PhononMode<T>) -> Result<()> {
    let same = pump.material == scattered.material
        && pump.material == phonon.material
        && pump.geometry == scattered.geometry
        && pump.geometry == phonon.geometry;
    if !same {
        return Err(Error::Mismatch("photon and phonon modes were built from different configurations".into()));
    }
    if pump.polarization != scattered.polarization {
        return Err(Error::Mismatch("photon modes must share the same circular polarization".into()));
    }
    Ok(())
}

/// Common prefactor (Z_q/a_eff)·ω_k·(a/a_eff), with ω_{k−q} ≃ ω_k.
fn prefactor<T: Scalar>(pump: &PhotonMode<T>, phonon: &PhononMode<T>) -> T {
    let a = pump.geometry.a;
    phonon.z_q / pump.a_eff * pump.omega * (a / pump.a_eff)
}

/// Moving-boundary coupling
/// f = −(Z/a_eff)·ω·(a/a_eff)·((n²−1)/2)·w_r(a)·[u_z* u_z′ + u_θ* u_θ′ + n² u_r* u_r′],
/// photon factors taken on the interior side of r = a, the scattered mode unconjugated.
pub fn radiation_pressure_coupling<T: Scalar>(pump: &PhotonMode<T>, scattered: &PhotonMode<T>, phonon: &PhononMode<T>) -> Result<Complex<T>> {
    check_same_setup(pump, scattered, phonon)?;
    let n2 = pump.material.n * pump.material.n;
    let u = pump.eval_nd(T::one(), Side::Interior);
    let v = scattered.eval_nd(T::one(), Side::Interior);
    let overlap = u[2].conj() * v[2] + u[1].conj() * v[1] + u[0].conj() * v[0] * n2;
    let factor = -prefactor(pump, phonon) * (n2 - T::one()) / c::<T>(2.0) * phonon.surface_radial();
    Ok(overlap * factor)
}

/// Electrostriction coupling
/// f = (Z/a_eff)·ω·(γ_el/2)·(a/a_eff)·∫₀¹ ρ (u*·u′) a∇·w dρ over the core.
pub fn electrostriction_coupling<T: Scalar>(
    pump: &PhotonMode<T>,
    scattered: &PhotonMode<T>,
    phonon: &PhononMode<T>,
    gamma_el: T,
    rel_tol: T,
) -> Result<Complex<T>> {
    check_same_setup(pump, scattered, phonon)?;
    if gamma_el == T::zero() {
        return Ok(Complex::new(T::zero(), T::zero()));
    }
    let integrand = |rho: T| {
        let u = pump.eval_nd(rho, Side::Interior);
        let v = scattered.eval_nd(rho, Side::Interior);
        let dot: Complex<T> = u.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
        dot * (rho * phonon.divergence_nd(rho))
    };
    let integral: Complex<T> = adaptive_simpson(integrand, &[T::zero(), c(0.25), c(0.5), c(0.75), T::one()], rel_tol)?;
    Ok(integral * (prefactor(pump, phonon) * gamma_el / c::<T>(2.0)))
}

/// Both couplings for a solved triple, as a record with status `Ok`.
pub fn couple<T: Scalar>(pump: &PhotonMode<T>, scattered: &PhotonMode<T>, phonon: &PhononMode<T>, rel_tol: T) -> Result<CouplingRecord<T>> {
    let f_rp = radiation_pressure_coupling(pump, scattered, phonon)?;
    let gamma = pump.material.derived().gamma_el;
    let f_el = electrostriction_coupling(pump, scattered, phonon, gamma, rel_tol)?;
    Ok(CouplingRecord { k: pump.k, q: phonon.q, branch: phonon.branch, f_rp, f_el, f_total: f_rp + f_el, status: CouplingStatus::Ok })
}

/// Grid specification for a coupling sweep. Wavenumbers in 1/m.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingMapSpec<T> {
    pub k_grid: Vec<T>,
    pub q_grid: Vec<T>,
    pub branch: usize,
    pub polarization: Polarization,
}

/// Couplings on every (k, q) grid point, k-major. Points that cannot be evaluated are kept
/// with a status flag and NaN rates.
pub fn coupling_map<T: Scalar>(config: &Config<T>, spec: &CouplingMapSpec<T>) -> Vec<CouplingRecord<T>> {
    let photons = PhotonSolver::new(config);
    let phonons = PhononSolver::new(config);
    let tol = config.solver.quad_tol;
    let pumps: Vec<Result<PhotonMode<T>>> = spec.k_grid.par_iter().map(|&k| photons.mode(k, spec.polarization)).collect();
    let phonon_modes: Vec<Result<PhononMode<T>>> = spec.q_grid.par_iter().map(|&q| phonons.mode(q, spec.branch)).collect();
    let points: Vec<(usize, usize)> = (0..spec.k_grid.len()).flat_map(|i| (0..spec.q_grid.len()).map(move |j| (i, j))).collect();
    points
        .par_iter()
        .map(|&(i, j)| {
            let (k, q) = (spec.k_grid[i], spec.q_grid[j]);
            let fail = |s| CouplingRecord::failed(k, q, spec.branch, s);
            let Ok(pump) = &pumps[i] else { return fail(CouplingStatus::PhotonUnresolved) };
            let Ok(phonon) = &phonon_modes[j] else { return fail(CouplingStatus::PhononUnresolved) };
            if k - q == T::zero() {
                return fail(CouplingStatus::ScatteredAtRest);
            }
            let Ok(scattered) = photons.mode(k - q, spec.polarization) else {
                return fail(CouplingStatus::PhotonUnresolved);
            };
            match couple(pump, &scattered, phonon, tol) {
                Ok(r) => r,
                Err(Error::Quadrature { .. }) => fail(CouplingStatus::QuadratureFailed),
                Err(_) => fail(CouplingStatus::PhotonUnresolved),
            }
        })
        .collect()
}

/// The record with the largest |f_rp| among successful points.
pub fn max_radiation_pressure<T: Scalar>(records: &[CouplingRecord<T>]) -> Option<&CouplingRecord<T>> {
    records
        .iter()
        .filter(|r| r.status == CouplingStatus::Ok)
        .max_by(|a, b| a.f_rp.norm().partial_cmp(&b.f_rp.norm()).expect("finite couplings"))
}
