use crate::error::{Error, Result};
use crate::scalar::{c, Scalar};

/// A sign-change bracket `[lo, hi]` with the function values at its ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket<T> {
    pub lo: T,
    pub hi: T,
    pub f_lo: T,
    pub f_hi: T,
}

/// Evaluates `f` on `grid` and returns every adjacent pair with a strict sign change.
/// Points where `f` fails (poles) or is non-finite break the chain, so no bracket spans them.
pub fn scan_brackets<T: Scalar, F>(grid: &[T], mut f: F) -> Vec<Bracket<T>>
where
    F: FnMut(T) -> Result<T>,
{
    let mut out = Vec::new();
    let mut prev: Option<(T, T)> = None;
    for &x in grid {
        let cur = match f(x) {
            Ok(v) if v.is_finite() => Some((x, v)),
            _ => None,
        };
        if let (Some((x0, f0)), Some((x1, f1))) = (prev, cur) {
            if f0 == T::zero() {
                out.push(Bracket { lo: x0, hi: x0, f_lo: f0, f_hi: f0 });
            } else if f0.signum() != f1.signum() && f1 != T::zero() {
                out.push(Bracket { lo: x0, hi: x1, f_lo: f0, f_hi: f1 });
            }
        }
        prev = cur;
    }
    if let Some((x, v)) = prev {
        if v == T::zero() {
            out.push(Bracket { lo: x, hi: x, f_lo: v, f_hi: v });
        }
    }
    out
}

/// Brent's method (bisection, secant and inverse quadratic steps) on a sign-change bracket.
/// Iterates until the bracket is below `x_tol` relative to the root, or machine precision.
pub fn brent<T: Scalar, F>(mut f: F, br: Bracket<T>, x_tol: T) -> Result<T>
where
    F: FnMut(T) -> Result<T>,
{
    let (mut a, mut b) = (br.lo, br.hi);
    let (mut fa, mut fb) = (br.f_lo, br.f_hi);
    if fa == T::zero() {
        return Ok(a);
    }
    if fb == T::zero() {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoRoot { what: "bracket without sign change", at: a.to_f64_lossy() });
    }
    let two = c::<T>(2.0);
    let half = c::<T>(0.5);
    let x_tol = x_tol.max(T::epsilon());
    let (mut cc, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if fb.signum() == fc.signum() {
            cc = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = cc;
            cc = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = two * T::epsilon() * b.abs() + half * x_tol * b.abs().max(T::min_positive_value());
        let xm = half * (cc - b);
        if xm.abs() <= tol1 || fb == T::zero() {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == cc {
                p = two * xm * s;
                q = T::one() - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (two * xm * qq * (qq - r) - (b - a) * (r - T::one()));
                q = (qq - T::one()) * (r - T::one()) * (s - T::one());
            }
            if p > T::zero() {
                q = -q;
            }
            p = p.abs();
            let min1 = c::<T>(3.0) * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if two * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b = if d.abs() > tol1 { b + d } else { b + tol1 * xm.signum() };
        fb = f(b)?;
    }
    Err(Error::NonConvergence { what: "brent root search", iterations: 200 })
}

/// `count` points evenly spaced on `[lo, hi]`, endpoints included.
pub fn linspace<T: Scalar>(lo: T, hi: T, count: usize) -> Vec<T> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let m = T::from_usize_lossy(count - 1);
            (0..count)
                .map(|i| {
                    if i == count - 1 {
                        hi
                    } else {
                        lo + (hi - lo) * T::from_usize_lossy(i) / m
                    }
                })
                .collect()
        }
    }
}
