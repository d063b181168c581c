//! Elastic modes of a free cylinder: longitudinal (Pochhammer) and torsional branches, the
//! displacement profiles of longitudinal modes, and their effective volume and zero-point
//! fluctuation.
//!
//! Nondimensional variables: `Q = qa`, `W = Ωa/v_t`, `Lq = η_l²a² = (W v_t/v_l)² − Q²` and
//! `Tq = η_t²a² = W² − Q²`. Either squared wavenumber may be negative; the Bessel forms are
//! continued to modified Bessel functions there so everything stays real.

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{Config, Geometry, Material};
use crate::consts::HBAR;
use crate::dispersion::{check_continuation, BranchLabel, DispersionCurve, DispersionSample};
use crate::error::{Error, Result};
use crate::numerics::{adaptive_simpson, brent, linspace, scan_brackets};
use crate::photon::Residual;
use crate::scalar::{c, Scalar};
use crate::special::{bessel_j_zeros, jratio_kernel, radial_forms, RadialForms};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PhononFamily {
    Torsional,
    Longitudinal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PhononBranchQuery {
    pub family: PhononFamily,
    /// Root index: 0 is the acoustic (fundamental) branch.
    pub branch: usize,
}

/// LHS − RHS of the Pochhammer frequency equation in nondimensional form,
/// (Q² − Tq)²·G(Lq) + 4Q²·Lq·G(Tq) − 2·Lq·(Q² + Tq) with G(t) = √t J₀(√t)/J₁(√t).
pub fn pochhammer_residual_nd<T: Scalar>(velocity_ratio: T, qa: T, wa: T) -> Result<Residual<T>> {
    let q2 = qa * qa;
    let lq = (wa * velocity_ratio).powi(2) - q2;
    let tq = wa * wa - q2;
    let g_l = jratio_kernel(lq, T::one(), 0)?;
    let g_t = jratio_kernel(tq, T::one(), 0)?;
    let a = (q2 - tq).powi(2) * g_l;
    let b = c::<T>(4.0) * q2 * lq * g_t;
    let d = c::<T>(2.0) * lq * (q2 + tq);
    let scale = a.abs() + b.abs() + d.abs();
    Ok(Residual { value: a + b - d, scale, terms: scale })
}

/// The same equation multiplied through by J₁(√Lq)/√Lq · J₁(√Tq)/√Tq, which removes the
/// kernel poles. Roots are searched and checked in this form: next to a pole the kernel
/// itself is only accurate to about ε/|J₁|, while this product stays well conditioned.
pub fn pochhammer_determinant_nd<T: Scalar>(velocity_ratio: T, qa: T, wa: T) -> Residual<T> {
    let q2 = qa * qa;
    let lq = (wa * velocity_ratio).powi(2) - q2;
    let tq = wa * wa - q2;
    let (l, t) = (radial_forms(lq, T::one()), radial_forms(tq, T::one()));
    let a = (q2 - tq).powi(2);
    let b = c::<T>(4.0) * q2 * lq;
    let d = c::<T>(2.0) * lq * (q2 + tq);
    let value = a * l.zeroth * t.first_over_sqrt_t + b * t.zeroth * l.first_over_sqrt_t - d * l.first_over_sqrt_t * t.first_over_sqrt_t;
    // Term sizes use the Bessel envelopes, so a root where a factor happens to vanish
    // (pure shear at small q) is still measured against the natural size of the terms.
    let (zl, fl) = envelopes(lq, &l);
    let (zt, ft) = envelopes(tq, &t);
    let scale = a.abs() * zl * ft + b.abs() * zt * fl + d.abs() * fl * ft;
    Residual { value, scale, terms: scale }
}

/// Bounds on |zeroth| and |first_over_sqrt_t| from the amplitude √(J₀² + J₁²) (or I).
fn envelopes<T: Scalar>(t: T, f: &RadialForms<T>) -> (T, T) {
    let amp = f.zeroth.hypot(f.sqrt_t_first / t.abs().sqrt().max(T::min_positive_value()));
    (amp, amp.max(f.first_over_sqrt_t.abs()) / t.abs().sqrt().max(T::one()))
}

/// Phonon solver bound to one configuration.
#[derive(Debug, Clone)]
pub struct PhononSolver<T> {
    pub config: Config<T>,
}

impl<T: Scalar> PhononSolver<T> {
    pub fn new(config: &Config<T>) -> Self {
        Self { config: *config }
    }

    fn a(&self) -> T {
        self.config.geometry.a
    }

    fn v_t(&self) -> T {
        self.config.material.v_t
    }

    /// v_t / v_l
    fn velocity_ratio(&self) -> T {
        self.config.material.v_t / self.config.material.v_l
    }

    /// Pochhammer residual at wavenumber `q` (1/m) and angular frequency `omega` (rad/s).
    pub fn pochhammer_residual(&self, q: T, omega: T) -> Result<T> {
        if !(omega > T::zero()) {
            return Err(Error::Domain { what: "phonon frequency", value: omega.to_f64_lossy() });
        }
        let a = self.a();
        Ok(pochhammer_residual_nd(self.velocity_ratio(), q * a, omega * a / self.v_t())?.value)
    }

    /// Upper end of the frequency scan, in W units.
    fn scan_cap(&self, qa: T) -> T {
        let s = &self.config.solver;
        s.phonon_window_factor / self.velocity_ratio() * (qa * qa + s.phonon_window_radial * s.phonon_window_radial).sqrt()
    }

    /// All longitudinal roots W = Ωa/v_t at `qa` inside the scan window, ascending.
    pub fn roots_nd(&self, qa: T) -> Result<Vec<T>> {
        let qa = qa.abs();
        let ratio = self.velocity_ratio();
        let cap = self.scan_cap(qa);
        let intervals = self.config.solver.phonon_scan_intervals.max(2);
        let spacing = cap / T::from_usize_lossy(intervals);
        // Ω = 0 is a double root of the residual, so start above it; a geometric lead-in
        // resolves the acoustic root, which sits at W ≈ 1.4·qa for small qa.
        let mut grid = Vec::new();
        let lead = spacing * c(1e-3);
        let mut w = if qa > T::zero() { (qa * c(1e-2)).min(lead) } else { lead };
        let growth = c::<T>(10.0).powf(c(1.0 / 32.0));
        while w < spacing {
            grid.push(w);
            w = w * growth;
        }
        grid.extend(linspace(T::zero(), cap, intervals + 1).into_iter().skip(1));
        let f = |w: T| Ok(pochhammer_determinant_nd(ratio, qa, w).value);
        let mut roots = Vec::new();
        for br in scan_brackets(&grid, f) {
            let w = brent(f, br, T::epsilon())?;
            let res = pochhammer_determinant_nd(ratio, qa, w);
            if res.relative() > self.config.solver.root_tol.max(T::tol_floor()) {
                return Err(Error::Residual { what: "Pochhammer equation", at: qa.to_f64_lossy(), relative: res.relative().to_f64_lossy() });
            }
            roots.push(w);
        }
        roots.sort_by(|a, b| a.partial_cmp(b).expect("finite roots"));
        roots.dedup_by(|a, b| (*a - *b).abs() <= T::epsilon() * c::<T>(64.0) * *a);
        Ok(roots)
    }

    fn branch_root(&self, qa: T, branch: usize) -> Result<T> {
        self.roots_nd(qa)?
            .get(branch)
            .copied()
            .ok_or(Error::NoRoot { what: "longitudinal phonon branch", at: (qa / self.a()).to_f64_lossy() })
    }

    /// Angular frequency of a branch at wavenumber `q` (1/m).
    pub fn frequency(&self, query: &PhononBranchQuery, q: T) -> Result<T> {
        match query.family {
            PhononFamily::Longitudinal => Ok(self.branch_root(q * self.a(), query.branch)? * self.v_t() / self.a()),
            PhononFamily::Torsional => Ok(self.torsional_frequency(q, query.branch)),
        }
    }

    /// Longitudinal branch `branch` on `n_points` evenly spaced wavenumbers in `[q_lo, q_hi]` (1/m).
    pub fn solve_longitudinal_dispersion(&self, branch: usize, q_lo: T, q_hi: T, n_points: usize) -> Result<DispersionCurve<T>> {
        if !(q_lo > T::zero() && q_hi > q_lo) || n_points < 2 {
            return Err(Error::Input("wavenumber range must be positive and increasing".into()));
        }
        let a = self.a();
        let qs = linspace(q_lo, q_hi, n_points);
        let roots: Vec<Result<T>> = qs.par_iter().map(|&q| self.branch_root(q * a, branch)).collect();
        let mut samples: Vec<DispersionSample<T>> = Vec::with_capacity(n_points);
        for (q, w) in qs.into_iter().zip(roots) {
            let next = DispersionSample { k: q, omega: w? * self.v_t() / a };
            check_continuation("longitudinal phonon branch", &samples, next, self.config.solver.lost_track_factor)?;
            samples.push(next);
        }
        Ok(DispersionCurve { label: BranchLabel::Longitudinal { branch }, samples })
    }

    /// Radial wavenumbers ε_n (times a) of the torsional overtones: zeros of J₂.
    pub fn torsional_roots(&self, count: usize) -> Vec<T> {
        bessel_j_zeros(2, count)
    }

    /// Torsional branch: `overtone` 0 is Ω = v_t q, overtone n is Ω² = v_t²(q² + ε_n²/a²).
    pub fn torsional_frequency(&self, q: T, overtone: usize) -> T {
        if overtone == 0 {
            return self.v_t() * q.abs();
        }
        let eps = self.torsional_roots(overtone)[overtone - 1] / self.a();
        self.v_t() * (q * q + eps * eps).sqrt()
    }

    pub fn torsional_dispersion(&self, overtone: usize, q_lo: T, q_hi: T, n_points: usize) -> DispersionCurve<T> {
        let eps = if overtone == 0 { T::zero() } else { self.torsional_roots(overtone)[overtone - 1] / self.a() };
        let samples = linspace(q_lo, q_hi, n_points)
            .into_iter()
            .map(|q| DispersionSample { k: q, omega: self.v_t() * (q * q + eps * eps).sqrt() })
            .collect();
        DispersionCurve { label: BranchLabel::Torsional { overtone }, samples }
    }

    /// Normalized longitudinal mode at signed wavenumber `q`, with the group slope from a
    /// centered difference of step 1e-4·|qa| on the same branch.
    pub fn mode(&self, q: T, branch: usize) -> Result<PhononMode<T>> {
        let qa = q * self.a();
        let w = self.branch_root(qa, branch)?;
        let h = qa.abs() * c(1e-4);
        let up = self.branch_root(qa.abs() + h, branch)?;
        let down = self.branch_root(qa.abs() - h, branch)?;
        let slope = (up - down) / (c::<T>(2.0) * h);
        self.normalize_phonon(qa, w, branch, slope * self.v_t())
    }

    /// Normalized modes for every sample of a longitudinal curve.
    pub fn finalize_curve(&self, curve: &DispersionCurve<T>) -> Result<Vec<PhononMode<T>>> {
        let BranchLabel::Longitudinal { branch } = curve.label else {
            return Err(Error::Input("mode normalization is only available for longitudinal branches".into()));
        };
        let vs = curve.group_velocities();
        let a = self.a();
        curve
            .samples
            .par_iter()
            .zip(vs.par_iter())
            .map(|(s, &v)| self.normalize_phonon(s.k * a, s.omega * a / self.v_t(), branch, v))
            .collect()
    }

    /// Builds the displacement field at a root and fixes A > 0 so that max |w| = 1 on [0, a].
    pub fn normalize_phonon(&self, qa: T, wa: T, branch: usize, v_s: T) -> Result<PhononMode<T>> {
        let a = self.a();
        let ratio = self.velocity_ratio();
        let q2 = qa * qa;
        let lq = (wa * ratio).powi(2) - q2;
        let tq = wa * wa - q2;
        let l1 = radial_forms(lq, T::one());
        let t1 = radial_forms(tq, T::one());
        let d = (tq - q2) * t1.first_over_sqrt_t;
        let mut mode = PhononMode {
            q: qa / a,
            omega: wa * self.v_t() / a,
            eta_l_sq: lq / (a * a),
            eta_t_sq: tq / (a * a),
            a_amp: T::nan(),
            c_over_a: Complex::new(T::nan(), T::nan()),
            v_phon: T::nan(),
            m_eff: T::nan(),
            z_q: T::nan(),
            v_s,
            branch,
            qa,
            wa,
            lq,
            tq,
            d,
            f1_l_surface: l1.sqrt_t_first,
            scale: T::one(),
            material: self.config.material,
            geometry: self.config.geometry,
        };
        let peak = mode.raw_peak();
        if !(peak > T::zero() && peak.is_finite()) {
            return Err(Error::Input(format!("degenerate displacement profile at qa = {}", qa.to_f64_lossy())));
        }
        // w = (A/D)·raw with raw peak-normalized; A real-positive
        mode.scale = d.signum() / peak;
        mode.a_amp = d.abs() / peak * a;
        // C/A = 2iqη_l J₁(η_l a) / ((η_t² − q²) J₁(η_t a)), J₁(η_t a) = √Tq·(J₁(√Tq)/√Tq)
        let sqrt_t = Complex::new(tq, T::zero()).sqrt();
        mode.c_over_a = Complex::new(T::zero(), c::<T>(2.0) * qa * l1.sqrt_t_first) / (sqrt_t * d);
        let integral = adaptive_simpson(|rho: T| mode.magnitude_sqr_nd(rho) * rho, &[T::zero(), c(0.5), T::one()], self.config.solver.quad_tol)?;
        let length = self.config.geometry.length;
        mode.v_phon = c::<T>(2.0) * T::PI() * length * a * a * integral;
        mode.m_eff = self.config.material.rho * mode.v_phon;
        mode.z_q = (c::<T>(HBAR) / (c::<T>(2.0) * mode.m_eff * mode.omega)).sqrt();
        Ok(mode)
    }
}

/// A solved, normalized longitudinal phonon mode. Convention: A > 0 with max_{r≤a} |w| = 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct PhononMode<T> {
    /// Axial wavenumber (1/m).
    pub q: T,
    /// Angular frequency (rad/s).
    pub omega: T,
    /// Signed squared transverse wavenumbers Ω²/v² − q² (1/m²).
    pub eta_l_sq: T,
    pub eta_t_sq: T,
    /// Amplitude of the dilatational potential (m).
    pub a_amp: T,
    /// Ratio of the shear to dilatational potential amplitudes from the stress-free surface.
    pub c_over_a: Complex<T>,
    /// Effective volume ∫dV|w|² (m³).
    pub v_phon: T,
    /// Effective mass ρ·V_phon (kg).
    pub m_eff: T,
    /// Zero-point fluctuation √(ħ / 2M_eff Ω) (m).
    pub z_q: T,
    /// Group slope dΩ/dq (m/s).
    pub v_s: T,
    pub branch: usize,
    pub qa: T,
    pub wa: T,
    pub lq: T,
    pub tq: T,
    d: T,
    f1_l_surface: T,
    scale: T,
    pub material: Material<T>,
    pub geometry: Geometry<T>,
}

impl<T: Scalar> PhononMode<T> {
    fn forms(&self, rho: T) -> (RadialForms<T>, RadialForms<T>) {
        (radial_forms(self.lq, rho), radial_forms(self.tq, rho))
    }

    /// Unscaled (w_r, w_z/i), multiplied through by D to stay finite where C/A has a pole.
    fn raw_nd(&self, rho: T) -> (T, T) {
        let (l, t) = self.forms(rho);
        let q2 = self.qa * self.qa;
        let wr = -l.sqrt_t_first * self.d - c::<T>(2.0) * q2 * self.f1_l_surface * t.first_over_sqrt_t;
        let wz = self.qa * (l.zeroth * self.d - c::<T>(2.0) * self.f1_l_surface * t.zeroth);
        (wr, wz)
    }

    fn raw_peak(&self) -> T {
        let mag = |rho: T| {
            let (r, z) = self.raw_nd(rho);
            (r * r + z * z).sqrt()
        };
        let samples = 256;
        let grid = linspace(T::zero(), T::one(), samples + 1);
        let (mut best_i, mut best) = (0, T::zero());
        for (i, &rho) in grid.iter().enumerate() {
            let v = mag(rho);
            if v > best {
                best = v;
                best_i = i;
            }
        }
        // golden-section refinement around the best sample
        let (mut lo, mut hi) = (grid[best_i.saturating_sub(1)], grid[(best_i + 1).min(samples)]);
        let g = c::<T>(0.618_033_988_749_894_8);
        let mut x1 = hi - g * (hi - lo);
        let mut x2 = lo + g * (hi - lo);
        let (mut f1, mut f2) = (mag(x1), mag(x2));
        for _ in 0..80 {
            if f1 >= f2 {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - g * (hi - lo);
                f1 = mag(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + g * (hi - lo);
                f2 = mag(x2);
            }
        }
        best.max(f1).max(f2).max(mag(T::zero())).max(mag(T::one()))
    }

    /// Displacement (w_r, w_θ, w_z) at `rho = r/a`; w_r is real and w_z purely imaginary.
    pub fn eval_nd(&self, rho: T) -> [Complex<T>; 3] {
        let (r, z) = self.raw_nd(rho);
        [Complex::new(r * self.scale, T::zero()), Complex::new(T::zero(), T::zero()), Complex::new(T::zero(), z * self.scale)]
    }

    /// Displacement at radius `r` (m), 0 ≤ r ≤ a.
    pub fn eval(&self, r: T) -> [Complex<T>; 3] {
        self.eval_nd(r / self.geometry.a)
    }

    /// Radial displacement w_r(a).
    pub fn surface_radial(&self) -> T {
        self.eval_nd(T::one())[0].re
    }

    fn magnitude_sqr_nd(&self, rho: T) -> T {
        let (r, z) = self.raw_nd(rho);
        (r * r + z * z) * self.scale * self.scale
    }

    /// a·[(1/r)∂_r(r w_r) + i q w_z], from the Bessel derivative identities.
    pub fn divergence_nd(&self, rho: T) -> T {
        let l = radial_forms(self.lq, rho);
        -(self.lq + self.qa * self.qa) * l.zeroth * self.d * self.scale
    }

    /// a·∂_r w_r and a·∂_r(w_z/i).
    fn radial_derivatives_nd(&self, rho: T) -> (T, T) {
        let (l, t) = self.forms(rho);
        let q2 = self.qa * self.qa;
        let f1l_d = self.lq * l.zeroth - l.sqrt_t_first / rho;
        let g1t_d = t.zeroth - t.first_over_sqrt_t / rho;
        let dwr = -f1l_d * self.d - c::<T>(2.0) * q2 * self.f1_l_surface * g1t_d;
        let dwz = self.qa * (-l.sqrt_t_first * self.d + c::<T>(2.0) * self.f1_l_surface * t.sqrt_t_first);
        (dwr * self.scale, dwz * self.scale)
    }

    /// Surface tractions (σ_rr(a), |σ_rz(a)|) in units of μ/a, together with the peak of
    /// |σ_rr| over the cross section for scale.
    pub fn surface_traction(&self) -> (T, T, T) {
        let ratio = self.material.v_l / self.material.v_t;
        let lambda_over_mu = ratio * ratio - c::<T>(2.0);
        let sigma_rr = |rho: T| {
            let (dwr, _) = self.radial_derivatives_nd(rho);
            lambda_over_mu * self.divergence_nd(rho) + c::<T>(2.0) * dwr
        };
        let (_, dwz) = self.radial_derivatives_nd(T::one());
        // σ_rz/μ = ∂_z w_r + ∂_r w_z = i(q w_r + ∂_r(w_z/i))
        let sigma_rz = self.qa * self.surface_radial() + dwz;
        let peak = linspace(c(1e-3), T::one(), 200).into_iter().map(|r| sigma_rr(r).abs()).fold(T::zero(), T::max);
        (sigma_rr(T::one()), sigma_rz.abs(), peak)
    }

    /// V_phon / (π a² L).
    pub fn volume_ratio(&self) -> T {
        self.v_phon / (T::PI() * self.geometry.a * self.geometry.a * self.geometry.length)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solver() -> PhononSolver<f64> {
        PhononSolver::new(&Config::default())
    }

    #[test]
    fn table_point_frequencies() {
        let s = solver();
        let ghz: Vec<f64> = s.roots_nd(3.48).unwrap().iter().map(|w| w * 5843.0 / 250e-9 / 2.0 / std::f64::consts::PI / 1e9).collect();
        assert!((ghz[0] - 12.55).abs() < 0.02, "{ghz:?}");
        assert!((ghz[1] - 18.68).abs() < 0.02, "{ghz:?}");
    }

    #[test]
    fn long_wave_slope_is_bar_velocity() {
        let s = solver();
        let w = s.roots_nd(1e-3).unwrap()[0];
        let slope = w / 1e-3;
        assert!((slope - 1.441).abs() < 2e-3, "{slope}");
    }

    #[test]
    fn stress_free_surface() {
        let s = solver();
        for (q, b) in [(0.5, 0), (1.8, 0), (3.48, 0), (3.48, 1)] {
            let m = s.mode(q / 250e-9, b).unwrap();
            let (rr, rz, peak) = m.surface_traction();
            assert!(rr.abs() < 1e-6 * peak && rz < 1e-6 * peak, "qa={q} {rr} {rz} {peak}");
        }
    }

    #[test]
    fn divergence_matches_finite_difference() {
        let m = solver().mode(2.0 / 250e-9, 0).unwrap();
        let rho = 0.6;
        let h = 1e-6;
        let d = ((rho + h) * m.eval_nd(rho + h)[0].re - (rho - h) * m.eval_nd(rho - h)[0].re) / (2.0 * h) / rho;
        let fd = d - m.qa * m.eval_nd(rho)[2].im;
        assert!((fd - m.divergence_nd(rho)).abs() < 1e-7);
    }

    #[test]
    fn torsional_overtones() {
        let s = solver();
        let eps = s.torsional_roots(3);
        assert!((eps[0] - 5.1356).abs() < 1e-4);
        assert_eq!(s.torsional_frequency(2e6, 0) / 2e6, 5843.0);
    }
}
