use crate::error::{Error, Result};
use crate::scalar::{c, Scalar};

/// Step control for [`dopri5`].
#[derive(Debug, Clone, Copy)]
pub struct StepControl<T> {
    pub rel_tol: T,
    pub abs_tol: T,
    pub max_steps: usize,
}

impl<T: Scalar> Default for StepControl<T> {
    fn default() -> Self {
        Self { rel_tol: c(1e-10), abs_tol: T::zero(), max_steps: 1_000_000 }
    }
}

// Dormand–Prince 5(4) tableau
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn axpy<T: Scalar, const N: usize>(y: &[T; N], h: T, terms: &[(f64, &[T; N])]) -> [T; N] {
    let mut out = *y;
    for (coef, k) in terms {
        let s = h * c::<T>(*coef);
        for i in 0..N {
            out[i] += s * k[i];
        }
    }
    out
}

/// Integrates `y' = f(t, y)` from `t0` to `t1` with the adaptive Dormand–Prince 5(4) pair.
///
/// `h` carries the step size between calls so piecewise integration over an output grid keeps
/// its adapted step. Returns `y(t1)`.
pub fn dopri5<T, const N: usize, F>(mut f: F, t0: T, y0: [T; N], t1: T, h: &mut T, ctl: &StepControl<T>) -> Result<[T; N]>
where
    T: Scalar,
    F: FnMut(T, &[T; N]) -> [T; N],
{
    let span = t1 - t0;
    if span == T::zero() {
        return Ok(y0);
    }
    let dir = span.signum();
    if !(*h > T::zero()) || *h > span.abs() {
        *h = span.abs() * c(0.01);
    }
    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, &y);
    for _ in 0..ctl.max_steps {
        let remaining = (t1 - t) * dir;
        if remaining <= T::epsilon() * t1.abs().max(span.abs()) {
            return Ok(y);
        }
        let step = h.min(remaining) * dir;
        let k2 = f(t + step * c(C2), &axpy(&y, step, &[(A21, &k1)]));
        let k3 = f(t + step * c(C3), &axpy(&y, step, &[(A31, &k1), (A32, &k2)]));
        let k4 = f(t + step * c(C4), &axpy(&y, step, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
        let k5 = f(t + step * c(C5), &axpy(&y, step, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]));
        let k6 = f(t + step, &axpy(&y, step, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]));
        let y_new = axpy(&y, step, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
        let k7 = f(t + step, &y_new);
        let err_vec = axpy(&[T::zero(); N], step, &[(E1, &k1), (E3, &k3), (E4, &k4), (E5, &k5), (E6, &k6), (E7, &k7)]);
        let mut err = T::zero();
        for i in 0..N {
            let sc = ctl.abs_tol + ctl.rel_tol * y[i].abs().max(y_new[i].abs());
            let e = if sc > T::zero() { err_vec[i].abs() / sc } else { err_vec[i].abs() / T::min_positive_value() };
            err = err.max(e);
        }
        if !err.is_finite() {
            *h = *h * c(0.1);
            continue;
        }
        if err <= T::one() {
            t += step;
            y = y_new;
            k1 = k7;
        }
        let factor = if err == T::zero() { c(5.0) } else { (c::<T>(0.9) * err.powf(c(-0.2))).min(c(5.0)).max(c(0.2)) };
        *h = *h * factor;
        if *h <= T::epsilon() * t.abs().max(span.abs()) {
            return Err(Error::NonConvergence { what: "adaptive step size underflow", iterations: 0 });
        }
    }
    Err(Error::NonConvergence { what: "adaptive integration", iterations: ctl.max_steps })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_decay() {
        let mut h = 0.0;
        let y = dopri5(|_, y: &[f64; 1]| [-y[0]], 0.0, [1.0], 5.0, &mut h, &StepControl::default()).unwrap();
        assert!((y[0] - (-5f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn harmonic_oscillator_backwards() {
        let mut h = 0.0;
        let y = dopri5(|_, y: &[f64; 2]| [y[1], -y[0]], 0.0, [0.0, 1.0], -3.0, &mut h, &StepControl::default()).unwrap();
        assert!((y[0] - (-3f64).sin()).abs() < 1e-9);
        assert!((y[1] - (-3f64).cos()).abs() < 1e-9);
    }
}
