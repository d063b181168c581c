//! Guided photon modes of a dielectric cylinder: characteristic equations for the HE/EH
//! families, dispersion curves, and the normalized HE₁₁ vector mode functions.
//!
//! Internally everything is nondimensional: `x = ka`, `y = k₀a = ωa/c`, `pa = √(n²y² − x²)`
//! and `qa = √(x² − y²)`. Roots are searched in `qa` rather than in `ω` because weakly guided
//! modes sit exponentially close to the light line.

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{Config, Geometry, Material};
use crate::consts::{EPSILON_0, HBAR, SPEED_OF_LIGHT};
use crate::dispersion::{check_continuation, BranchLabel, DispersionCurve, DispersionSample};
use crate::error::{Error, Result};
use crate::numerics::{adaptive_simpson, brent, linspace, scan_brackets};
use crate::scalar::{c, Scalar};
use crate::special::{bessel_j_array, bessel_k_scaled, bessel_k_scaled_array, jratio_kernel};

/// Highest azimuthal order the characteristic equations are evaluated for.
pub const MAX_AZIMUTHAL_ORDER: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    HE,
    EH,
}

/// Handedness of the e^{±iθ} azimuthal dependence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Polarization {
    Left,
    Right,
}

impl Polarization {
    pub fn sign<T: Scalar>(self) -> T {
        match self {
            Polarization::Left => T::one(),
            Polarization::Right => -T::one(),
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Polarization::Left => Polarization::Right,
            Polarization::Right => Polarization::Left,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhotonBranchQuery {
    pub family: Family,
    /// Azimuthal order.
    pub l: usize,
    /// Radial root index, 1-based.
    pub m: usize,
    pub polarization: Polarization,
}

impl PhotonBranchQuery {
    pub const HE11: Self = Self { family: Family::HE, l: 1, m: 1, polarization: Polarization::Left };

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::Input("radial index m starts at 1".into()));
        }
        if self.l > MAX_AZIMUTHAL_ORDER {
            return Err(Error::Input(format!("azimuthal order above {MAX_AZIMUTHAL_ORDER}")));
        }
        Ok(())
    }

    pub fn label(&self) -> BranchLabel {
        BranchLabel::Photon { family: self.family, l: self.l, m: self.m }
    }
}

/// Which side of the surface r = a a field is evaluated on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Interior,
    Exterior,
    /// Interior for r ≤ a, exterior beyond.
    Auto,
}

/// A root of the characteristic equation in nondimensional form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GuidedRoot<T> {
    /// ka (non-negative)
    pub ka: T,
    /// k₀a = ωa/c
    pub k0a: T,
    /// interior transverse wavenumber × a
    pub pa: T,
    /// exterior decay constant × a
    pub qa: T,
}

/// Residual of a characteristic equation. `terms` is the summed magnitude of its terms;
/// `scale` adds how strongly rounding of the inputs is amplified, so `relative` stays near ε
/// at a converged root even where the equation is ill conditioned.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual<T> {
    pub value: T,
    pub scale: T,
    pub terms: T,
}

impl<T: Scalar> Residual<T> {
    pub fn relative(&self) -> T {
        self.value.abs() / self.scale.max(T::min_positive_value())
    }

    /// How far the terms are from cancelling; of order one at a pole of the equation.
    pub fn cancellation(&self) -> T {
        self.value.abs() / self.terms.max(T::min_positive_value())
    }
}

/// LHS − RHS of the HE or EH characteristic equation of order `l`, as a function of
/// `x = ka` and `w = qa`. The HE difference term is evaluated in rationalized form so that the
/// leading 1/w⁴ parts, which cancel exactly on the light line, never get subtracted.
pub fn residual_nd<T: Scalar>(family: Family, l: usize, n: T, x: T, w: T) -> Result<Residual<T>> {
    if l > MAX_AZIMUTHAL_ORDER {
        return Err(Error::Input(format!("azimuthal order above {MAX_AZIMUTHAL_ORDER}")));
    }
    let n2 = n * n;
    let pa2 = (n2 - T::one()) * x * x - n2 * w * w;
    if !(w > T::zero() && w < x && pa2 > T::zero()) {
        return Err(Error::Domain { what: "guidance window", value: w.to_f64_lossy() });
    }
    let y = ((x - w) * (x + w)).sqrt();
    let lf = T::from_usize_lossy(l);

    let lhs = if l == 0 {
        // J_{-1} = −J_1
        let r = jratio_kernel(pa2, T::one(), 0)?;
        if r.abs() <= c::<T>(64.0) * T::epsilon() {
            return Err(Error::Pole { what: "photon characteristic equation", at: pa2.sqrt().to_f64_lossy(), denominator: r.to_f64_lossy() });
        }
        -T::one() / r
    } else {
        jratio_kernel(pa2, T::one(), l - 1)? / pa2
    };

    let k: [T; crate::special::MAX_ORDER + 2] = bessel_k_scaled_array(w)?;
    let k_lower = if l == 0 { k[1] } else { k[l - 1] };
    let k_ratio = k_lower / (w * k[l]);
    // (K_{l−1} + K_{l+1}) / (2 qa K_l)
    let kr = k_ratio + lf / (w * w);

    let c1 = (T::one() + n2) / (c::<T>(2.0) * n2);
    let c2 = (n2 - T::one()) / (c::<T>(2.0) * n2);
    let s = T::one() / (w * w) + T::one() / pa2;
    let beta = lf * x / (n * y);
    let root = (c2 * kr).hypot(beta * s);
    let hybrid = match family {
        Family::EH => c1 * kr + root,
        Family::HE if l == 0 => kr / n2,
        Family::HE => {
            let minus = k_ratio - lf / (y * (x + y)) - lf * x / (y * pa2);
            let plus = kr + lf * (x / y) * s;
            minus * (plus / (c1 * kr + root)) / n2
        }
    };
    let centrifugal = lf / pa2;
    let terms = lhs.abs() + hybrid.abs() + centrifugal;
    // for l = 0 the left side is −1/r with r ∝ J₀(pa); at a TE/TM root next to cutoff J₀ is tiny
    // and the rounding of pa (about ε·pa² in r) is amplified by lhs²
    let amplified = if l == 0 { lhs * lhs * pa2 } else { T::zero() };
    Ok(Residual { value: lhs - hybrid - centrifugal, scale: terms + amplified, terms })
}

/// Photon mode solver bound to one configuration.
#[derive(Debug, Clone)]
pub struct PhotonSolver<T> {
    pub config: Config<T>,
}

impl<T: Scalar> PhotonSolver<T> {
    pub fn new(config: &Config<T>) -> Self {
        Self { config: *config }
    }

    fn n(&self) -> T {
        self.config.material.n
    }

    fn a(&self) -> T {
        self.config.geometry.a
    }

    /// Characteristic residual in SI units: `k` in 1/m, `omega` in rad/s.
    pub fn characteristic_residual(&self, family: Family, l: usize, k: T, omega: T) -> Result<T> {
        let a = self.a();
        let x = k.abs() * a;
        let y = omega * a / c::<T>(SPEED_OF_LIGHT);
        if !(y < x && y * self.n() > x) {
            return Err(Error::Domain { what: "guidance window ck/n < ω < ck", value: omega.to_f64_lossy() });
        }
        let w = ((x - y) * (x + y)).sqrt();
        Ok(residual_nd(family, l, self.n(), x, w)?.value)
    }

    /// Scan grid in qa: uniform sub-intervals plus a logarithmic tail toward the light line.
    fn scan_grid(&self, x: T) -> Vec<T> {
        let n = self.n();
        let w_max = x * (n * n - T::one()).sqrt() / n;
        let intervals = self.config.solver.photon_scan_intervals.max(2);
        let first = w_max / T::from_usize_lossy(intervals);
        let floor = (x * c(1e-200)).max(T::min_positive_value().powf(c(0.25)));
        let mut tail = Vec::new();
        let step = c::<T>(10.0).powf(c(-0.125));
        let mut w = first * step;
        while w > floor {
            tail.push(w);
            w = w * step;
        }
        tail.reverse();
        let uniform = linspace(T::zero(), w_max, intervals + 1);
        tail.extend(uniform[1..intervals].iter().copied());
        tail
    }

    /// All guided roots at `ka`, ordered by increasing frequency.
    pub fn roots_nd(&self, family: Family, l: usize, x: T) -> Result<Vec<GuidedRoot<T>>> {
        if !(x > T::zero()) {
            return Err(Error::Domain { what: "photon wavenumber", value: x.to_f64_lossy() });
        }
        let n = self.n();
        let f = |w: T| residual_nd(family, l, n, x, w).map(|r| r.value);
        let grid = self.scan_grid(x);
        let mut roots = Vec::new();
        for br in scan_brackets(&grid, f) {
            let w = match brent(f, br, T::epsilon()) {
                Ok(w) => w,
                Err(_) => continue,
            };
            let res = match residual_nd(family, l, n, x, w) {
                Ok(r) => r,
                Err(_) => continue,
            };
            // sign changes across poles converge onto the pole; real roots have tiny residual
            if res.cancellation() > c(1e-6) {
                continue;
            }
            if res.relative() > self.config.solver.root_tol.max(T::tol_floor()) {
                return Err(Error::Residual { what: "photon characteristic equation", at: x.to_f64_lossy(), relative: res.relative().to_f64_lossy() });
            }
            let y = ((x - w) * (x + w)).sqrt();
            let pa = ((n * n - T::one()) * x * x - n * n * w * w).sqrt();
            roots.push(GuidedRoot { ka: x, k0a: y, pa, qa: w });
        }
        roots.sort_by(|a, b| b.qa.partial_cmp(&a.qa).expect("finite roots"));
        Ok(roots)
    }

    /// The `m`-th root of the queried branch at `ka = x`.
    pub fn solve_nd(&self, query: &PhotonBranchQuery, x: T) -> Result<GuidedRoot<T>> {
        query.validate()?;
        let roots = self.roots_nd(query.family, query.l, x)?;
        roots
            .get(query.m - 1)
            .copied()
            .ok_or(Error::NoRoot { what: "photon mode (cut off)", at: (x / self.a()).to_f64_lossy() })
    }

    /// Angular frequency of the queried branch at wavenumber `k` (1/m).
    pub fn frequency(&self, query: &PhotonBranchQuery, k: T) -> Result<T> {
        let root = self.solve_nd(query, k.abs() * self.a())?;
        Ok(root.k0a * c::<T>(SPEED_OF_LIGHT) / self.a())
    }

    /// Dispersion curve on `n_points` evenly spaced wavenumbers in `[k_lo, k_hi]` (1/m).
    pub fn solve_dispersion(&self, query: &PhotonBranchQuery, k_lo: T, k_hi: T, n_points: usize) -> Result<DispersionCurve<T>> {
        query.validate()?;
        if !(k_lo > T::zero() && k_hi > k_lo) || n_points < 2 {
            return Err(Error::Input("wavenumber range must be positive and increasing".into()));
        }
        let ks = linspace(k_lo, k_hi, n_points);
        let roots: Vec<Result<GuidedRoot<T>>> = ks.par_iter().map(|&k| self.solve_nd(query, k * self.a())).collect();
        let mut samples: Vec<DispersionSample<T>> = Vec::with_capacity(n_points);
        let scale = c::<T>(SPEED_OF_LIGHT) / self.a();
        for (k, root) in ks.into_iter().zip(roots) {
            let next = DispersionSample { k, omega: root?.k0a * scale };
            check_continuation("photon branch", &samples, next, self.config.solver.lost_track_factor)?;
            samples.push(next);
        }
        Ok(DispersionCurve { label: query.label(), samples })
    }

    /// Smallest V = k₀a√(n²−1) at which the queried branch is guided, by bisection on the
    /// existence of the m-th root for ka in `[x_lo, x_hi]`.
    pub fn cutoff_v(&self, query: &PhotonBranchQuery, x_lo: T, x_hi: T) -> Result<T> {
        // the m-th root just above cutoff, if any; re-solving at the limit would hit the light line
        let guided = |x: T| -> Result<Option<GuidedRoot<T>>> { Ok(self.roots_nd(query.family, query.l, x)?.into_iter().nth(query.m - 1)) };
        let mut found = match (guided(x_lo)?, guided(x_hi)?) {
            (None, Some(r)) => r,
            _ => return Err(Error::NoRoot { what: "cutoff bracket", at: x_lo.to_f64_lossy() }),
        };
        let (mut lo, mut hi) = (x_lo, x_hi);
        for _ in 0..100 {
            let mid = (lo + hi) * c(0.5);
            match guided(mid)? {
                Some(r) => {
                    hi = mid;
                    found = r;
                }
                None => lo = mid,
            }
            if hi - lo <= T::epsilon() * c::<T>(8.0) * hi {
                break;
            }
        }
        Ok(found.k0a * (self.n() * self.n() - T::one()).sqrt())
    }

    /// Normalized HE₁₁ mode at signed wavenumber `k`; negative `k` is the backward mode.
    /// The group velocity comes from a centered difference of step 1e-4·ka.
    pub fn mode(&self, k: T, polarization: Polarization) -> Result<PhotonMode<T>> {
        let query = PhotonBranchQuery { polarization, ..PhotonBranchQuery::HE11 };
        let x = k.abs() * self.a();
        let root = self.solve_nd(&query, x)?;
        let h = x * c(1e-4);
        let up = self.solve_nd(&query, x + h)?;
        let down = self.solve_nd(&query, x - h)?;
        let vg_over_c = (up.k0a - down.k0a) / (c::<T>(2.0) * h);
        self.normalize_and_finalize(k.signum(), root, vg_over_c, polarization)
    }

    /// Normalized HE₁₁ modes for every sample of a dispersion curve, with group velocities
    /// from finite differences on the curve.
    pub fn finalize_curve(&self, curve: &DispersionCurve<T>, polarization: Polarization) -> Result<Vec<PhotonMode<T>>> {
        let query = PhotonBranchQuery { polarization, ..PhotonBranchQuery::HE11 };
        if curve.label != query.label() {
            return Err(Error::Input("mode normalization is only available for HE11".into()));
        }
        let vg = curve.group_velocities();
        let cl = c::<T>(SPEED_OF_LIGHT);
        curve
            .samples
            .par_iter()
            .zip(vg.par_iter())
            .map(|(s, &v)| {
                let root = self.solve_nd(&query, s.k * self.a())?;
                self.normalize_and_finalize(T::one(), root, v / cl, polarization)
            })
            .collect()
    }

    /// Builds the mode functions at a solved root and fixes their normalization.
    pub fn normalize_and_finalize(&self, direction: T, root: GuidedRoot<T>, vg_over_c: T, polarization: Polarization) -> Result<PhotonMode<T>> {
        let a = self.a();
        let length = self.config.geometry.length;
        let mut mode = PhotonMode {
            k: direction.signum() * root.ka / a,
            omega: root.k0a * c::<T>(SPEED_OF_LIGHT) / a,
            p: root.pa / a,
            q_ev: root.qa / a,
            s: hybrid_parameter(root.pa, root.qa)?,
            b: T::one(),
            v_phot: T::nan(),
            a_eff: T::nan(),
            v_g: vg_over_c * c::<T>(SPEED_OF_LIGHT),
            e1: T::nan(),
            polarization,
            root,
            material: self.config.material,
            geometry: self.config.geometry,
            k1_scaled_at_surface: bessel_k_scaled(1, root.qa)?,
            j1_at_surface: bessel_j_array::<T, 2>(root.pa)[1],
        };
        let integral = mode.norm_integral(self.config.solver.quad_tol)?;
        mode.v_phot = c::<T>(2.0) * T::PI() * length * a * a * integral;
        mode.a_eff = a * (c::<T>(2.0) * integral).sqrt();
        mode.e1 = (c::<T>(HBAR) * mode.omega / (c::<T>(2.0) * c::<T>(EPSILON_0) * mode.v_phot)).sqrt();
        Ok(mode)
    }
}

/// s = (1/pa² + 1/qa²) / (J₁′(pa)/(pa J₁(pa)) + K₁′(qa)/(qa K₁(qa))), rewritten after
/// multiplying through by qa² so that nothing overflows as qa → 0.
fn hybrid_parameter<T: Scalar>(pa: T, qa: T) -> Result<T> {
    let [j0, j1, j2]: [T; 3] = bessel_j_array(pa);
    let [k0, k1]: [T; 2] = bessel_k_scaled_array(qa)?;
    let jd = (j0 - j2) / (c::<T>(2.0) * pa * j1);
    let w2 = qa * qa;
    let num = T::one() + w2 / (pa * pa);
    let den = w2 * jd - qa * k0 / k1 - T::one();
    Ok(num / den)
}

/// A solved, normalized HE₁₁ mode. Amplitude convention: u_z = J₁(pr) inside (B = 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct PhotonMode<T> {
    /// Signed axial wavenumber (1/m); negative for backward propagation.
    pub k: T,
    /// Angular frequency (rad/s).
    pub omega: T,
    /// Interior transverse wavenumber √(k₀²n² − k²) (1/m).
    pub p: T,
    /// Exterior decay constant √(k² − k₀²) (1/m).
    pub q_ev: T,
    /// Hybrid-mode parameter.
    pub s: T,
    /// Amplitude B.
    pub b: T,
    /// Effective volume ∫dV|u|² (m³).
    pub v_phot: T,
    /// Effective radius with V_phot = π a_eff² L (m).
    pub a_eff: T,
    /// Group speed |dω/dk| (m/s).
    pub v_g: T,
    /// Single-photon field amplitude √(ħω / 2ε₀V_phot) (V/m).
    pub e1: T,
    pub polarization: Polarization,
    pub root: GuidedRoot<T>,
    pub material: Material<T>,
    pub geometry: Geometry<T>,
    k1_scaled_at_surface: T,
    j1_at_surface: T,
}

impl<T: Scalar> PhotonMode<T> {
    /// Mode function (u_r, u_θ, u_z) at radius `r` (m).
    pub fn eval(&self, r: T, side: Side) -> [Complex<T>; 3] {
        self.eval_nd(r / self.geometry.a, side)
    }

    /// Mode function at `rho = r/a`.
    pub fn eval_nd(&self, rho: T, side: Side) -> [Complex<T>; 3] {
        let interior = match side {
            Side::Interior => true,
            Side::Exterior => false,
            Side::Auto => rho <= T::one(),
        };
        let GuidedRoot { ka, pa, qa, .. } = self.root;
        let xs = ka * self.k.signum() * self.b;
        let sigma = self.polarization.sign::<T>();
        let s = self.s;
        let (one_m, one_p) = (T::one() - s, T::one() + s);
        if interior {
            let [j0, j1, j2]: [T; 3] = bessel_j_array(pa * rho);
            let pre = xs / (c::<T>(2.0) * pa);
            [
                Complex::new(T::zero(), -pre * (one_m * j0 - one_p * j2)),
                Complex::new(sigma * pre * (one_m * j0 + one_p * j2), T::zero()),
                Complex::new(self.b * j1, T::zero()),
            ]
        } else {
            let z = qa * rho;
            let [k0, k1, k2]: [T; 3] = match bessel_k_scaled_array(z) {
                Ok(v) => v,
                Err(_) => return [Complex::new(T::nan(), T::nan()); 3],
            };
            // J₁(pa)·K_n(qa ρ)/K₁(qa) with the exponential scaling divided out
            let amp = self.b * self.j1_at_surface * (-(qa * (rho - T::one()))).exp() / self.k1_scaled_at_surface;
            let pre = xs / (c::<T>(2.0) * qa) * amp;
            [
                Complex::new(T::zero(), -pre * (one_m * k0 + one_p * k2)),
                Complex::new(sigma * pre * (one_m * k0 - one_p * k2), T::zero()),
                Complex::new(amp * k1, T::zero()),
            ]
        }
    }

    /// |u|² at `rho`.
    pub fn intensity_nd(&self, rho: T, side: Side) -> T {
        self.eval_nd(rho, side).iter().map(|v| v.norm_sqr()).sum()
    }

    /// ∫₀^∞ |u|² ρ dρ. The exterior part is integrated in t = qa(ρ − 1), with breakpoints
    /// growing geometrically from the scale qa so that very weakly guided modes resolve.
    pub fn norm_integral(&self, rel_tol: T) -> Result<T> {
        let inner = adaptive_simpson(|rho: T| self.intensity_nd(rho, Side::Interior) * rho, &[T::zero(), c(0.5), T::one()], rel_tol)?;
        let w = self.root.qa;
        let mut cuts = vec![T::zero()];
        let mut t = w.min(T::one());
        while t < T::one() {
            cuts.push(t);
            t = t * c(4.0);
        }
        for v in [1.0, 2.0, 4.0, 8.0, 16.0, 40.0] {
            cuts.push(c(v));
        }
        let outer = adaptive_simpson(
            |t: T| {
                let rho = T::one() + t / w;
                self.intensity_nd(rho, Side::Exterior) * rho / w
            },
            &cuts,
            rel_tol,
        )?;
        Ok(inner + outer)
    }

    /// V_phot / (π a² L).
    pub fn volume_ratio(&self) -> T {
        self.v_phot / (T::PI() * self.geometry.a * self.geometry.a * self.geometry.length)
    }

    /// The same mode with the opposite handedness.
    pub fn with_polarization(&self, polarization: Polarization) -> Self {
        Self { polarization, ..*self }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solver() -> PhotonSolver<f64> {
        PhotonSolver::new(&Config::default())
    }

    #[test]
    fn he11_frequency_at_reference_point() {
        let s = solver();
        let root = s.solve_nd(&PhotonBranchQuery::HE11, 1.74).unwrap();
        // guided wavelength and frequency near the mode-volume minimum
        let a = 250e-9;
        assert!((2.0 * std::f64::consts::PI * a / 1.74 - 903e-9).abs() < 1e-9);
        assert!(root.k0a < 1.74 && root.k0a * 3.5 > 1.74);
        assert!((root.k0a * (3.5f64 * 3.5 - 1.0).sqrt() - 2.62).abs() < 0.02);
    }

    #[test]
    fn weak_guidance_near_light_line() {
        let s = solver();
        let r = s.solve_nd(&PhotonBranchQuery::HE11, 0.3).unwrap();
        assert!((r.qa - 1.31e-5).abs() < 2e-7, "qa = {}", r.qa);
        let r = s.solve_nd(&PhotonBranchQuery::HE11, 0.2).unwrap();
        assert!(r.qa > 1e-13 && r.qa < 1e-11, "qa = {}", r.qa);
    }

    #[test]
    fn rationalized_residual_agrees_with_direct_form_away_from_light_line() {
        let (n, x, w): (f64, f64, f64) = (3.5, 2.0, 0.9);
        let y = (x * x - w * w).sqrt();
        let pa = (n * n * y * y - x * x).sqrt();
        let j: [f64; 3] = bessel_j_array(pa);
        let k: [f64; 3] = bessel_k_scaled_array(w).unwrap();
        let kr = (k[0] + k[2]) / (2.0 * w * k[1]);
        let lhs = j[0] / (pa * j[1]);
        let sq = (((n * n - 1.0) / (2.0 * n * n)).powi(2) * kr * kr + (x / (n * y)).powi(2) * (1.0 / (w * w) + 1.0 / (pa * pa)).powi(2)).sqrt();
        let he = lhs - ((1.0 + n * n) / (2.0 * n * n) * kr + 1.0 / (pa * pa) - sq);
        let eh = lhs - ((1.0 + n * n) / (2.0 * n * n) * kr + 1.0 / (pa * pa) + sq);
        assert!((residual_nd(Family::HE, 1, n, x, w).unwrap().value - he).abs() < 1e-12);
        assert!((residual_nd(Family::EH, 1, n, x, w).unwrap().value - eh).abs() < 1e-12);
    }

    #[test]
    fn surface_continuity() {
        let s = solver();
        let m = s.mode(1.74 / 250e-9, Polarization::Left).unwrap();
        let inn = m.eval_nd(1.0, Side::Interior);
        let out = m.eval_nd(1.0, Side::Exterior);
        assert_eq!(inn[2], out[2]);
        assert!((inn[1] - out[1]).norm() <= 1e-8 * inn[1].norm());
        assert!((inn[0] * 12.25 - out[0]).norm() <= 1e-8 * out[0].norm());
    }

    #[test]
    fn f32_mode_solve() {
        let s: PhotonSolver<f32> = PhotonSolver::new(&Config::<f64>::default().cast());
        let r32 = s.solve_nd(&PhotonBranchQuery::HE11, 1.74f32).unwrap();
        let r64 = solver().solve_nd(&PhotonBranchQuery::HE11, 1.74).unwrap();
        assert!((r32.k0a as f64 - r64.k0a).abs() < 1e-5);
    }
}
