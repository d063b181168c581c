//! Backward stimulated Brillouin scattering: phase matching, the gain factor, steady-state
//! counter-propagating pump/Stokes intensities, and export of the mode and coupling tables.

use std::path::Path;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::consts::HBAR;
use crate::coupling::{CouplingRecord, CouplingStatus};
use crate::error::{Error, Result};
use crate::numerics::{brent, dopri5, linspace, Bracket, StepControl};
use crate::phonon::PhononMode;
use crate::photon::PhotonMode;
use crate::scalar::{c, Scalar};

/// Solution of ω(k_p) = ω(|k_s|) + Ω(q), q = k_p + |k_s|.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseMatch<T> {
    pub k_p: T,
    /// Stokes wavenumber; negative (counter-propagating).
    pub k_s: T,
    pub q: T,
    pub omega_p: T,
    pub omega_s: T,
    pub omega_phonon: T,
    pub iterations: usize,
}

impl<T: Scalar> PhaseMatch<T> {
    /// Relative residuals (energy, momentum) of the conservation laws, re-evaluated with the
    /// given dispersion relations.
    pub fn residuals(&self, photon: impl Fn(T) -> Result<T>, phonon: impl Fn(T) -> Result<T>) -> Result<(T, T)> {
        let wp = photon(self.k_p)?;
        let ws = photon(self.k_s.abs())?;
        let energy = (wp - ws - phonon(self.q)?).abs() / wp;
        let momentum = (self.q - self.k_p - self.k_s.abs()).abs() / self.q;
        Ok((energy, momentum))
    }
}

/// Solves ω(k) = target by the secant method from `k0`.
fn invert_dispersion<T: Scalar>(photon: &impl Fn(T) -> Result<T>, target: T, k0: T) -> Result<T> {
    let mut k_prev = k0;
    let mut f_prev = photon(k_prev)? - target;
    let mut k = k0 * (T::one() - c::<T>(1e-6));
    for _ in 0..60 {
        let f = photon(k)? - target;
        if f == T::zero() || f == f_prev {
            return Ok(k);
        }
        let next = k - f * (k - k_prev) / (f - f_prev);
        k_prev = k;
        f_prev = f;
        k = next;
        if (k - k_prev).abs() <= T::epsilon() * c::<T>(4.0) * k.abs() {
            return Ok(k);
        }
    }
    Err(Error::NonConvergence { what: "inversion of the photon dispersion", iterations: 60 })
}

/// Backward Stokes phase matching for pump wavenumber `k_p`, given the photon dispersion
/// ω(k) and the phonon dispersion Ω(q) (both on positive wavenumbers). Fixed-point iteration
/// on q from 2k_p until |Δq/q| < 1e-10, at most 100 iterations.
pub fn phase_match_backward<T: Scalar>(k_p: T, photon: impl Fn(T) -> Result<T>, phonon: impl Fn(T) -> Result<T>) -> Result<PhaseMatch<T>> {
    const MAX_ITER: usize = 100;
    let omega_p = photon(k_p)?;
    let mut q = c::<T>(2.0) * k_p;
    let mut k_s = k_p;
    for it in 1..=MAX_ITER {
        let omega_phonon = phonon(q)?;
        k_s = invert_dispersion(&photon, omega_p - omega_phonon, k_s)?;
        let q_next = k_p + k_s;
        let done = ((q_next - q) / q).abs() < c(1e-10);
        q = q_next;
        if done {
            let omega_phonon = phonon(q)?;
            return Ok(PhaseMatch { k_p, k_s: -k_s, q, omega_p, omega_s: omega_p - omega_phonon, omega_phonon, iterations: it });
        }
    }
    Err(Error::NonConvergence { what: "backward phase matching", iterations: MAX_ITER })
}

/// Phonon damping, either as a rate or through a quality factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Damping<T> {
    /// Γ in rad/s.
    Rate(T),
    /// Γ = Ω/Q.
    QualityFactor { quality: T, omega_phonon: T },
}

impl<T: Scalar> Damping<T> {
    pub fn rate(&self) -> T {
        match *self {
            Self::Rate(g) => g,
            Self::QualityFactor { quality, omega_phonon } => omega_phonon / quality,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GainResult<T> {
    /// Brillouin gain factor (1/(m·W)).
    pub g_b: T,
}

impl<T: Scalar> GainResult<T> {
    /// Single-pass Stokes amplification exp(G_B·I_p·𝒜·L) in the undepleted-pump limit.
    pub fn amplification(&self, pump_intensity: T, area: T, length: T) -> T {
        (self.g_b * pump_intensity * area * length).exp()
    }
}

/// G_B = 4L|f|² / (ħ ω v_g² Γ).
pub fn brillouin_gain<T: Scalar>(f: Complex<T>, omega: T, v_g: T, damping: Damping<T>, length: T) -> Result<GainResult<T>> {
    let gamma = damping.rate();
    for (what, v) in [("optical frequency", omega), ("group velocity", v_g), ("phonon damping", gamma), ("length", length)] {
        if !(v > T::zero() && v.is_finite()) {
            return Err(Error::Domain { what, value: v.to_f64_lossy() });
        }
    }
    Ok(GainResult { g_b: c::<T>(4.0) * length * f.norm_sqr() / (c::<T>(HBAR) * omega * v_g * v_g * gamma) })
}

/// Steady-state backward SBS: pump enters at z = 0, Stokes at z = L.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SbsProblem<T> {
    pub omega_p: T,
    pub omega_s: T,
    pub omega_phonon: T,
    pub q: T,
    /// Phonon damping rate (rad/s).
    pub gamma: T,
    /// Coupling (rad/s).
    pub f: Complex<T>,
    pub v_g: T,
    /// Cross section 𝒜 (m²).
    pub area: T,
    pub length: T,
    /// Pump intensity at z = 0 (W/m²).
    pub i_p_in: T,
    /// Stokes intensity at z = L (W/m²).
    pub i_s_in: T,
}

impl<T: Scalar> SbsProblem<T> {
    pub fn gain(&self) -> Result<GainResult<T>> {
        brillouin_gain(self.f, self.omega_p, self.v_g, Damping::Rate(self.gamma), self.length)
    }

    fn validate(&self) -> Result<()> {
        if !(self.i_p_in >= T::zero() && self.i_s_in >= T::zero()) {
            return Err(Error::Input("boundary intensities must be non-negative".into()));
        }
        if !(self.area > T::zero() && self.length > T::zero()) {
            return Err(Error::Input("cross section and length must be positive".into()));
        }
        let energy = (self.omega_p - self.omega_s - self.omega_phonon).abs();
        if energy > c::<T>(1e-9) * self.omega_p {
            return Err(Error::Input("frequencies violate ω_p = ω_s + Ω".into()));
        }
        Ok(())
    }
}

/// Intensity profiles on a uniform z grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Profiles<T> {
    pub z: Vec<T>,
    pub pump: Vec<T>,
    pub stokes: Vec<T>,
    pub g_b: T,
    /// Shooting iterates (I_s(0) guess, relative mismatch of I_s(L)).
    pub history: Vec<(f64, f64)>,
}

impl<T: Scalar> Profiles<T> {
    /// Largest relative drift of I_p − I_s along z.
    pub fn manley_rowe_drift(&self) -> T {
        let d0 = self.pump[0] - self.stokes[0];
        let scale = self.pump[0].abs().max(self.stokes[0].abs());
        self.pump.iter().zip(&self.stokes).map(|(p, s)| (*p - *s - d0).abs() / scale).fold(T::zero(), T::max)
    }
}

/// Integrates dI_p/dz = dI_s/dz = −G_B·𝒜·I_p·I_s from z = 0, sampling at `zs`.
fn integrate<T: Scalar>(rate: T, ip0: T, is0: T, zs: &[T]) -> Result<Vec<[T; 2]>> {
    let ctl = StepControl::default();
    let mut h = T::zero();
    let mut y = [ip0, is0];
    let mut out = vec![y];
    for w in zs.windows(2) {
        y = dopri5(
            |_, y: &[T; 2]| {
                let d = -rate * y[0] * y[1];
                [d, d]
            },
            w[0],
            y,
            w[1],
            &mut h,
            &ctl,
        )?;
        out.push(y);
    }
    Ok(out)
}

/// Solves the counter-propagating boundary-value problem by shooting on I_s(0), matching
/// I_s(L) to 1e-8 relative. `samples` ≥ 2 output points.
pub fn propagate_steady_state<T: Scalar>(problem: &SbsProblem<T>, samples: usize) -> Result<Profiles<T>> {
    problem.validate()?;
    let g_b = problem.gain()?.g_b;
    let rate = g_b * problem.area;
    let zs = linspace(T::zero(), problem.length, samples.max(2));
    let (ip, is_l) = (problem.i_p_in, problem.i_s_in);
    let flat = || Profiles { z: zs.clone(), pump: vec![ip; zs.len()], stokes: vec![is_l; zs.len()], g_b, history: Vec::new() };
    if rate * ip * problem.length == T::zero() || is_l == T::zero() {
        return Ok(flat());
    }
    let ends = [T::zero(), problem.length];
    let history = std::cell::RefCell::new(Vec::new());
    let mismatch = |guess: T| -> Result<T> {
        let end = integrate(rate, ip, guess, &ends)?;
        let m = end[1][1] / is_l - T::one();
        history.borrow_mut().push((guess.to_f64_lossy(), m.to_f64_lossy()));
        Ok(m)
    };
    // I_s(0) lies between the seed (no gain) and the undepleted-pump amplification
    let lo = is_l;
    let hi = is_l * (rate * ip * problem.length).exp() * (T::one() + c::<T>(1e-6));
    let br = Bracket { lo, hi, f_lo: mismatch(lo)?, f_hi: mismatch(hi)? };
    let shooting_error = || Error::Shooting { history: history.borrow().clone() };
    let guess = brent(mismatch, br, T::epsilon()).map_err(|_| shooting_error())?;
    if mismatch(guess)?.abs() > c(1e-8) {
        return Err(shooting_error());
    }
    let path = integrate(rate, ip, guess, &zs)?;
    Ok(Profiles { z: zs, pump: path.iter().map(|y| y[0]).collect(), stokes: path.iter().map(|y| y[1]).collect(), g_b, history: history.into_inner() })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhotonEntry {
    pub k: f64,
    pub omega: f64,
    pub v_g: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhononEntry {
    pub q: f64,
    pub omega: f64,
    pub z_q: f64,
    pub branch: usize,
}

/// One interaction term ħ(f a_k† a_{k−q} b_q + h.c.) with the conjugate pairing implicit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CouplingEntry {
    pub k: f64,
    pub k_scattered: f64,
    pub q: f64,
    pub branch: usize,
    pub f_re: f64,
    pub f_im: f64,
}

/// Mode and coupling tables in SI units, as written by [`export_hamiltonian`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianExport {
    pub units: std::collections::BTreeMap<String, String>,
    pub photon_modes: Vec<PhotonEntry>,
    pub phonon_modes: Vec<PhononEntry>,
    pub couplings: Vec<CouplingEntry>,
}

impl HamiltonianExport {
    pub fn new<T: Scalar>(photons: &[PhotonMode<T>], phonons: &[PhononMode<T>], couplings: &[CouplingRecord<T>]) -> Self {
        let units = [
            ("k", "1/m"),
            ("k_scattered", "1/m"),
            ("q", "1/m"),
            ("omega", "rad/s"),
            ("v_g", "m/s"),
            ("z_q", "m"),
            ("f_re", "rad/s"),
            ("f_im", "rad/s"),
        ]
        .into_iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
        let f = |v: T| v.to_f64_lossy();
        Self {
            units,
            photon_modes: photons.iter().map(|m| PhotonEntry { k: f(m.k), omega: f(m.omega), v_g: f(m.v_g) }).collect(),
            phonon_modes: phonons.iter().map(|m| PhononEntry { q: f(m.q), omega: f(m.omega), z_q: f(m.z_q), branch: m.branch }).collect(),
            couplings: couplings
                .iter()
                .filter(|r| r.status == CouplingStatus::Ok)
                .map(|r| CouplingEntry {
                    k: f(r.k),
                    k_scattered: f(r.k_scattered()),
                    q: f(r.q),
                    branch: r.branch,
                    f_re: f(r.f_total.re),
                    f_im: f(r.f_total.im),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("export serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Interaction matrix on the listed photon modes for a unit classical phonon amplitude:
    /// entry (k−q, k) collects f and entry (k, k−q) collects f*.
    pub fn interaction_matrix(&self) -> Result<Vec<Vec<Complex<f64>>>> {
        let n = self.photon_modes.len();
        let index = |k: f64| {
            self.photon_modes
                .iter()
                .position(|p| p.k == k)
                .ok_or_else(|| Error::Input(format!("coupling references photon k = {k:e} that is not listed")))
        };
        let mut m = vec![vec![Complex::new(0.0, 0.0); n]; n];
        for cpl in &self.couplings {
            let (i, j) = (index(cpl.k_scattered)?, index(cpl.k)?);
            let f = Complex::new(cpl.f_re, cpl.f_im);
            m[i][j] += f;
            m[j][i] += f.conj();
        }
        Ok(m)
    }
}

/// Writes the tables as a single JSON document.
pub fn export_hamiltonian<T: Scalar>(photons: &[PhotonMode<T>], phonons: &[PhononMode<T>], couplings: &[CouplingRecord<T>], path: impl AsRef<Path>) -> Result<HamiltonianExport> {
    let doc = HamiltonianExport::new(photons, phonons, couplings);
    std::fs::write(path, doc.to_json())?;
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn problem(g_b: f64, i_s_in: f64) -> SbsProblem<f64> {
        // choose f so that G_B comes out as requested
        let (omega, v_g, gamma, length) = (2e15, 6e7, 1e7, 0.01);
        let f2 = g_b * HBAR * omega * v_g * v_g * gamma / (4.0 * length);
        SbsProblem {
            omega_p: omega,
            omega_s: omega - 1e11,
            omega_phonon: 1e11,
            q: 1e7,
            gamma,
            f: Complex::new(f2.sqrt(), 0.0),
            v_g,
            area: 2e-13,
            length,
            i_p_in: 1e9,
            i_s_in,
        }
    }

    #[test]
    fn gain_formula_audit() {
        let g = brillouin_gain(Complex::new(3.0e4, -1.0e4), 2e15, 6e7, Damping::Rate(1e7), 0.01).unwrap();
        let ratio = g.g_b * HBAR * 2e15 * 6e7 * 6e7 * 1e7 / (4.0 * 0.01 * 1.0e9);
        assert!((ratio - 1.0).abs() < 1e-14);
        let q = Damping::QualityFactor { quality: 1000.0, omega_phonon: 1e10 };
        assert_eq!(q.rate(), 1e7);
        assert_eq!(brillouin_gain(Complex::new(0.0, 0.0), 1.0, 1.0, q, 1.0).unwrap().g_b, 0.0);
    }

    #[test]
    fn undepleted_exponential_law() {
        let p = problem(1e4, 1e-3);
        let prof = propagate_steady_state(&p, 11).unwrap();
        let want = (prof.g_b * p.i_p_in * p.area * p.length).exp();
        assert!((prof.stokes[0] / prof.stokes[10] / want - 1.0).abs() < 1e-6);
    }

    #[test]
    fn depletion_conserves_flux_difference() {
        let p = problem(1e4, 1e8);
        let prof = propagate_steady_state(&p, 101).unwrap();
        assert!(prof.manley_rowe_drift() < 1e-9);
        assert!((prof.stokes[100] / p.i_s_in - 1.0).abs() < 1e-8);
        assert!(prof.pump[100] < p.i_p_in);
    }

    #[test]
    fn phase_match_with_linear_dispersions() {
        // ω = ck/3, Ω = v q: closed form q = 2k_p·c'/(c' + v)
        let (cc, v) = (1e8f64, 1e4f64);
        let pm = phase_match_backward(1e7, |k| Ok(cc * k), |q| Ok(v * q)).unwrap();
        let want = 2.0 * 1e7 * cc / (cc + v);
        assert!((pm.q / want - 1.0).abs() < 1e-10);
        let (e, m) = pm.residuals(|k| Ok(cc * k), |q| Ok(v * q)).unwrap();
        assert!(e < 1e-9 && m < 1e-9);
    }

    #[test]
    fn empty_export_is_valid() {
        let doc = HamiltonianExport::new::<f64>(&[], &[], &[]);
        let back = HamiltonianExport::from_json(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        assert!(back.couplings.is_empty());
        assert!(back.interaction_matrix().unwrap().is_empty());
    }
}
