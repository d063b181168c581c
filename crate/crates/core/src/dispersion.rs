//! Sampled dispersion curves shared by the photon and phonon solvers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{c, Scalar};

/// Which branch a curve belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BranchLabel {
    Photon { family: crate::photon::Family, l: usize, m: usize },
    Longitudinal { branch: usize },
    Torsional { overtone: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DispersionSample<T> {
    /// Axial wavenumber (1/m).
    pub k: T,
    /// Angular frequency (rad/s).
    pub omega: T,
}

/// Samples `(k, ω)` with strictly increasing `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DispersionCurve<T> {
    pub label: BranchLabel,
    pub samples: Vec<DispersionSample<T>>,
}

impl<T: Scalar> DispersionCurve<T> {
    /// dω/dk at every sample: centered three-point differences inside, four-point one-sided
    /// differences at the ends (three points when the curve is that short).
    pub fn group_velocities(&self) -> Vec<T> {
        let s = &self.samples;
        let n = s.len();
        if n < 2 {
            return vec![T::nan(); n];
        }
        let end = n.min(4);
        (0..n)
            .map(|i| {
                let window = if i == 0 {
                    &s[..end]
                } else if i == n - 1 {
                    &s[n - end..]
                } else {
                    &s[i - 1..=i + 1]
                };
                polynomial_slope(window, s[i].k)
            })
            .collect()
    }

    /// Linear interpolation of ω at `k`; errors outside the sampled range.
    pub fn interpolate(&self, k: T) -> Result<T> {
        let s = &self.samples;
        let (first, last) = match (s.first(), s.last()) {
            (Some(f), Some(l)) => (f, l),
            _ => return Err(Error::Input("empty dispersion curve".into())),
        };
        if k < first.k || k > last.k {
            return Err(Error::Domain { what: "dispersion curve interpolation", value: k.to_f64_lossy() });
        }
        let i = s.partition_point(|p| p.k <= k).clamp(1, s.len() - 1);
        let (p, q) = (s[i - 1], s[i]);
        Ok(p.omega + (q.omega - p.omega) * (k - p.k) / (q.k - p.k))
    }
}

/// Derivative at `x` of the interpolating polynomial through `p`.
fn polynomial_slope<T: Scalar>(p: &[DispersionSample<T>], x: T) -> T {
    let mut total = T::zero();
    for (j, pj) in p.iter().enumerate() {
        let mut dj = T::zero();
        for (m, pm) in p.iter().enumerate() {
            if m == j {
                continue;
            }
            let mut term = T::one() / (pj.k - pm.k);
            for (l, pl) in p.iter().enumerate() {
                if l != j && l != m {
                    term = term * (x - pl.k) / (pj.k - pl.k);
                }
            }
            dj = dj + term;
        }
        total = total + pj.omega * dj;
    }
    total
}

/// Rejects a continuation step whose slope jumps by more than `factor` times the previous
/// slope. Flat stretches are measured against a floor of 5% of the phase velocity.
pub(crate) fn check_continuation<T: Scalar>(
    what: &'static str,
    prev: &[DispersionSample<T>],
    next: DispersionSample<T>,
    factor: T,
) -> Result<()> {
    if prev.len() < 2 {
        return Ok(());
    }
    let (p1, p0) = (prev[prev.len() - 2], prev[prev.len() - 1]);
    let old_slope = (p0.omega - p1.omega) / (p0.k - p1.k);
    let new_slope = (next.omega - p0.omega) / (next.k - p0.k);
    let floor = c::<T>(0.05) * (p0.omega / p0.k).abs();
    let allowed = factor * old_slope.abs().max(floor);
    if (new_slope - old_slope).abs() > allowed {
        let expected = p0.omega + old_slope * (next.k - p0.k);
        return Err(Error::LostTrack {
            what,
            at: next.k.to_f64_lossy(),
            expected: expected.to_f64_lossy(),
            found: next.omega.to_f64_lossy(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(f: impl Fn(f64) -> f64, n: usize) -> DispersionCurve<f64> {
        DispersionCurve {
            label: BranchLabel::Longitudinal { branch: 0 },
            samples: (0..n).map(|i| 1.0 + i as f64 * 0.1).map(|k| DispersionSample { k, omega: f(k) }).collect(),
        }
    }

    #[test]
    fn slopes_exact_for_parabola() {
        let cv = curve(|k| 3.0 * k * k - k + 2.0, 7);
        for (s, v) in cv.samples.iter().zip(cv.group_velocities()) {
            assert!((v - (6.0 * s.k - 1.0)).abs() < 1e-12);
        }
        let cv = curve(|k| 3.0 * k * k - k + 2.0, 3);
        for (s, v) in cv.samples.iter().zip(cv.group_velocities()) {
            assert!((v - (6.0 * s.k - 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn interpolation_and_range() {
        let cv = curve(|k| 2.0 * k, 5);
        assert!((cv.interpolate(1.25).unwrap() - 2.5).abs() < 1e-15);
        assert!(cv.interpolate(0.5).is_err());
    }

    #[test]
    fn continuation_flags_branch_jump() {
        let cv = curve(|k| k, 3);
        let ok = DispersionSample { k: 1.3, omega: 1.3 };
        assert!(check_continuation("t", &cv.samples, ok, 5.0).is_ok());
        let jump = DispersionSample { k: 1.3, omega: 3.0 };
        assert!(check_continuation("t", &cv.samples, jump, 5.0).is_err());
    }
}
