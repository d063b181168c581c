use std::ops::{Add, Mul, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{c, Scalar};

/// Values that adaptive quadrature can accumulate: reals and complex numbers.
pub trait QuadValue<T>: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<T, Output = Self> {
    fn zero() -> Self;
    fn magnitude(&self) -> T;
}

impl<T: Scalar> QuadValue<T> for T {
    fn zero() -> Self {
        T::zero()
    }
    fn magnitude(&self) -> T {
        self.abs()
    }
}

impl<T: Scalar> QuadValue<T> for Complex<T> {
    fn zero() -> Self {
        Complex::new(T::zero(), T::zero())
    }
    fn magnitude(&self) -> T {
        self.norm()
    }
}

const MAX_DEPTH: u32 = 48;
const MAX_EVALS: usize = 4_000_000;
const INITIAL_PANELS: usize = 8;

struct Panel<T, V> {
    a: T,
    b: T,
    fa: V,
    fm: V,
    fb: V,
    whole: V,
    depth: u32,
}

/// Adaptive Simpson quadrature with Richardson correction.
///
/// `breakpoints` must be increasing and contain both end points; the integrand is only required
/// to be smooth between consecutive breakpoints. The error target is `rel_tol` times the
/// integral of `|f|`, estimated from an initial coarse pass.
pub fn adaptive_simpson<T, V, F>(mut f: F, breakpoints: &[T], rel_tol: T) -> Result<V>
where
    T: Scalar,
    V: QuadValue<T>,
    F: FnMut(T) -> V,
{
    if breakpoints.len() < 2 {
        return Ok(V::zero());
    }
    let half = c::<T>(0.5);
    let sixth = c::<T>(1.0 / 6.0);
    let rel_tol = rel_tol.max(T::tol_floor());

    let mut panels = Vec::new();
    let mut scale = T::zero();
    for w in breakpoints.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if !(hi > lo) {
            continue;
        }
        let h = (hi - lo) / T::from_usize_lossy(INITIAL_PANELS);
        let mut fa = f(lo);
        for i in 0..INITIAL_PANELS {
            let a = lo + h * T::from_usize_lossy(i);
            let b = if i + 1 == INITIAL_PANELS { hi } else { a + h };
            let m = (a + b) * half;
            let fm = f(m);
            let fb = f(b);
            let width = b - a;
            scale += width * sixth * (fa.magnitude() + c::<T>(4.0) * fm.magnitude() + fb.magnitude());
            let whole = (fa + fm * c::<T>(4.0) + fb) * (width * sixth);
            panels.push(Panel { a, b, fa, fm, fb, whole, depth: 0 });
            fa = fb;
        }
    }
    let span = breakpoints[breakpoints.len() - 1] - breakpoints[0];
    let abs_tol = (rel_tol * scale).max(T::min_positive_value());

    let mut total = V::zero();
    let mut err_total = T::zero();
    let mut failed = false;
    let mut evals = 0usize;
    while let Some(p) = panels.pop() {
        let width = p.b - p.a;
        let tol = abs_tol * width / span;
        let lm = (p.a + (p.a + p.b) * half) * half;
        let rm = ((p.a + p.b) * half + p.b) * half;
        let flm = f(lm);
        let frm = f(rm);
        evals += 2;
        let mid = (p.a + p.b) * half;
        let left = (p.fa + flm * c::<T>(4.0) + p.fm) * (width * half * sixth);
        let right = (p.fm + frm * c::<T>(4.0) + p.fb) * (width * half * sixth);
        let diff = left + right - p.whole;
        let err = diff.magnitude() / c::<T>(15.0);
        if err <= tol || p.depth >= MAX_DEPTH || evals > MAX_EVALS || !(width > T::epsilon() * mid.abs()) {
            if err > tol {
                failed = true;
            }
            total = total + left + right + diff * c::<T>(1.0 / 15.0);
            err_total += err;
        } else {
            panels.push(Panel { a: p.a, b: mid, fa: p.fa, fm: flm, fb: p.fm, whole: left, depth: p.depth + 1 });
            panels.push(Panel { a: mid, b: p.b, fa: p.fm, fm: frm, fb: p.fb, whole: right, depth: p.depth + 1 });
        }
    }
    if failed && err_total > abs_tol || !total.magnitude().is_finite() {
        return Err(Error::Quadrature { estimate: total.magnitude().to_f64_lossy(), error: err_total.to_f64_lossy() });
    }
    Ok(total)
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, by Newton iteration on the Legendre polynomial.
pub fn gauss_legendre_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else if n == 1 { z } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = nf * (z * pn - pm) / (z * z - 1.0);
            let dz = pn / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// Composite Gauss–Legendre rule with `panels` equal panels of `order` points on `[lo, hi]`.
pub fn gauss_legendre<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, order: usize, panels: usize) -> f64 {
    let (x, w) = gauss_legendre_rule(order);
    let h = (hi - lo) / panels as f64;
    let mut sum = 0.0;
    for p in 0..panels {
        let a = lo + h * p as f64;
        for (xi, wi) in x.iter().zip(&w) {
            sum += wi * f(a + 0.5 * h * (xi + 1.0));
        }
    }
    sum * 0.5 * h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_polynomial_and_exp() {
        let v: f64 = adaptive_simpson(|x: f64| x.exp(), &[0.0, 1.0], 1e-12).unwrap();
        assert!((v - (1f64.exp() - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn simpson_kink_with_breakpoint() {
        let v: f64 = adaptive_simpson(|x: f64| (x - 0.3).abs(), &[0.0, 0.3, 1.0], 1e-12).unwrap();
        assert!((v - (0.045 + 0.245)).abs() < 1e-13);
    }

    #[test]
    fn simpson_complex() {
        let v: Complex<f64> = adaptive_simpson(|x: f64| Complex::new(x.cos(), x.sin()), &[0.0, 2.0], 1e-12).unwrap();
        assert!((v.re - 2f64.sin()).abs() < 1e-12);
        assert!((v.im - (1.0 - 2f64.cos())).abs() < 1e-12);
    }

    #[test]
    fn gauss_legendre_integrates_high_degree_exactly() {
        let v = gauss_legendre(|x| x.powi(9) + x.powi(4), -1.0, 1.0, 5, 1);
        assert!((v - 0.4).abs() < 1e-15);
        let v = gauss_legendre(|x| x.sin(), 0.0, std::f64::consts::PI, 20, 4);
        assert!((v - 2.0).abs() < 1e-14);
    }
}
