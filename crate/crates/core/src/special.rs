//! Integer-order Bessel functions J, I, K on the real axis, their derivatives, and real-valued
//! continuations across the sign change of a squared transverse wavenumber.

use crate::error::{Error, Result};
use crate::numerics::{brent, Bracket};
use crate::scalar::{c, Scalar};

/// Highest order the array routines produce.
pub const MAX_ORDER: usize = 7;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn factorial<T: Scalar>(n: usize) -> T {
    (1..=n).fold(T::one(), |acc, k| acc * T::from_usize_lossy(k))
}

/// Power series of J_n (alternating) or I_n (all positive); good for small x.
fn series_j_or_i<T: Scalar>(n: usize, x: T, modified: bool) -> T {
    let h = x * c(0.5);
    let h2 = h * h;
    let mut term = h.powi(n as i32) / factorial::<T>(n);
    let mut sum = term;
    for k in 1..500 {
        let kf = T::from_usize_lossy(k);
        term = term * h2 / (kf * (kf + T::from_usize_lossy(n)));
        if !modified {
            term = -term;
        }
        sum += term;
        if term.abs() <= T::epsilon() * c(0.25) * sum.abs() {
            break;
        }
    }
    sum
}

/// J_0..J_{len-1} at x ≥ 0, written into `out`.
fn j_orders<T: Scalar>(x: T, out: &mut [T]) {
    let len = out.len();
    if x == T::zero() {
        out.iter_mut().enumerate().for_each(|(i, v)| *v = if i == 0 { T::one() } else { T::zero() });
        return;
    }
    if x < c(2.0) {
        for (n, v) in out.iter_mut().enumerate() {
            *v = series_j_or_i(n, x, false);
        }
        return;
    }
    // Miller backward recurrence normalized by J0 + 2ΣJ_2k = 1
    let xf = x.to_f64_lossy();
    let start = (len as f64).max(xf) + 30.0 + 12.0 * xf.sqrt();
    let m = 2 * ((start as usize).div_ceil(2));
    let big = T::max_value().sqrt();
    let two_over_x = c::<T>(2.0) / x;
    let mut jp1 = T::zero();
    let mut j = c::<T>(1e-30);
    let mut norm = T::zero();
    out.iter_mut().for_each(|v| *v = T::zero());
    for k in (1..=m).rev() {
        let jm1 = T::from_usize_lossy(k) * two_over_x * j - jp1;
        jp1 = j;
        j = jm1;
        let order = k - 1;
        if order < len {
            out[order] = j;
        }
        if order % 2 == 0 && order > 0 {
            norm += c::<T>(2.0) * j;
        }
        if j.abs() > big {
            let s = T::one() / big;
            j = j * s;
            jp1 = jp1 * s;
            norm = norm * s;
            out.iter_mut().for_each(|v| *v = *v * s);
        }
    }
    norm += j;
    out.iter_mut().for_each(|v| *v = *v / norm);
}

/// Bessel function of the first kind J_n(x), x ≥ 0, n ≤ [`MAX_ORDER`].
pub fn bessel_j<T: Scalar>(n: usize, x: T) -> T {
    assert!(n <= MAX_ORDER, "bessel order {n} above {MAX_ORDER}");
    let mut buf = [T::zero(); MAX_ORDER + 2];
    j_orders(x.abs(), &mut buf[..=n]);
    if x < T::zero() && n % 2 == 1 {
        -buf[n]
    } else {
        buf[n]
    }
}

/// J_0..J_{N-1} at x in one recurrence pass.
pub fn bessel_j_array<T: Scalar, const N: usize>(x: T) -> [T; N] {
    let mut out = [T::zero(); N];
    j_orders(x, &mut out);
    out
}

/// J_n′(x) = (J_{n−1} − J_{n+1})/2 with J_{−1} = −J_1.
pub fn bessel_j_deriv<T: Scalar>(n: usize, x: T) -> T {
    let mut buf = [T::zero(); MAX_ORDER + 2];
    j_orders(x, &mut buf[..=n + 1]);
    let lower = if n == 0 { -buf[1] } else { buf[n - 1] };
    (lower - buf[n + 1]) * c(0.5)
}

/// Exponentially scaled modified Bessel function e^{−x} I_n(x), x ≥ 0.
pub fn bessel_i_scaled<T: Scalar>(n: usize, x: T) -> T {
    if x < c(25.0) {
        return series_j_or_i(n, x, true) * (-x).exp();
    }
    // large-argument asymptotic series
    let mu = c::<T>(4.0 * (n * n) as f64);
    let eight_x = c::<T>(8.0) * x;
    let mut term = T::one();
    let mut sum = T::one();
    for k in 1..60 {
        let odd = T::from_usize_lossy(2 * k - 1);
        term = -term * (mu - odd * odd) / (T::from_usize_lossy(k) * eight_x);
        sum += term;
        if term.abs() <= T::epsilon() * c(0.25) * sum.abs() {
            break;
        }
    }
    sum / (c::<T>(2.0) * T::PI() * x).sqrt()
}

/// Modified Bessel function of the first kind I_n(x), x ≥ 0.
pub fn bessel_i<T: Scalar>(n: usize, x: T) -> T {
    if x < c(25.0) {
        series_j_or_i(n, x, true)
    } else {
        bessel_i_scaled(n, x) * x.exp()
    }
}

/// Scaled e^x K_0(x) and e^x K_1(x) for x > 0.
fn k01_scaled<T: Scalar>(x: T) -> (T, T) {
    if x <= c(2.0) {
        // Ascending series
        let h = x * c(0.5);
        let h2 = h * h;
        let lnh = h.ln();
        let gamma = c::<T>(EULER_GAMMA);
        let i0 = series_j_or_i(0, x, true);
        let i1 = series_j_or_i(1, x, true);
        // K0 = −(ln(x/2)+γ) I0 + Σ_{k≥1} h^{2k}/(k!)² H_k
        let mut term = T::one();
        let mut harmonic = T::zero();
        let mut s0 = T::zero();
        // K1 = 1/x + ln(x/2) I1 − (h/2) Σ_{k≥0} (ψ(k+1)+ψ(k+2)) h^{2k}/(k!(k+1)!)
        let mut psi1 = -gamma;
        let mut psi2 = T::one() - gamma;
        let mut term1 = T::one();
        let mut s1 = psi1 + psi2;
        for k in 1..200 {
            let kf = T::from_usize_lossy(k);
            term = term * h2 / (kf * kf);
            harmonic += T::one() / kf;
            s0 += term * harmonic;
            term1 = term1 * h2 / (kf * (kf + T::one()));
            psi1 += T::one() / kf;
            psi2 += T::one() / (kf + T::one());
            let add = term1 * (psi1 + psi2);
            s1 += add;
            if term.abs() * harmonic <= T::epsilon() * c(0.1) * s0.abs() && add.abs() <= T::epsilon() * c(0.1) * s1.abs() {
                break;
            }
        }
        let k0 = -(lnh + gamma) * i0 + s0;
        let k1 = T::one() / x + lnh * i1 - h * c(0.5) * s1;
        let e = x.exp();
        return (k0 * e, k1 * e);
    }
    // Steed's continued fraction (order zero) for x > 2
    let mut b = c::<T>(2.0) * (T::one() + x);
    let mut d = T::one() / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = T::zero();
    let mut q2 = T::one();
    let a1 = c::<T>(0.25);
    let mut q = a1;
    let mut cc = a1;
    let mut a = -a1;
    let mut s = T::one() + q * delh;
    for i in 1..10_000 {
        let fi = T::from_usize_lossy(i);
        a -= c::<T>(2.0) * fi;
        cc = -a * cc / (fi + T::one());
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += cc * qnew;
        b += c(2.0);
        d = T::one() / (b + a * d);
        delh = (b * d - T::one()) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < T::epsilon() * c(0.5) {
            break;
        }
    }
    h = a1 * h;
    let k0 = (T::PI() / (c::<T>(2.0) * x)).sqrt() / s;
    let k1 = k0 * (x + c(0.5) - h) / x;
    (k0, k1)
}

fn k_domain<T: Scalar>(x: T) -> Result<()> {
    if x > T::zero() {
        Ok(())
    } else {
        Err(Error::Domain { what: "modified Bessel K", value: x.to_f64_lossy() })
    }
}

/// e^x K_0(x) .. e^x K_{N-1}(x) by upward recurrence, x > 0.
pub fn bessel_k_scaled_array<T: Scalar, const N: usize>(x: T) -> Result<[T; N]> {
    k_domain(x)?;
    let mut out = [T::zero(); N];
    let (k0, k1) = k01_scaled(x);
    if N > 0 {
        out[0] = k0;
    }
    if N > 1 {
        out[1] = k1;
    }
    for n in 2..N {
        out[n] = out[n - 2] + c::<T>(2.0) * T::from_usize_lossy(n - 1) / x * out[n - 1];
    }
    Ok(out)
}

/// e^x K_n(x), x > 0.
pub fn bessel_k_scaled<T: Scalar>(n: usize, x: T) -> Result<T> {
    let arr: [T; MAX_ORDER + 2] = bessel_k_scaled_array(x)?;
    Ok(arr[n])
}

/// Modified Bessel function of the second kind K_n(x), x > 0.
pub fn bessel_k<T: Scalar>(n: usize, x: T) -> Result<T> {
    Ok(bessel_k_scaled(n, x)? * (-x).exp())
}

/// K_n′(x) = −(K_{n−1} + K_{n+1})/2 with K_{−1} = K_1.
pub fn bessel_k_deriv<T: Scalar>(n: usize, x: T) -> Result<T> {
    let arr: [T; MAX_ORDER + 2] = bessel_k_scaled_array(x)?;
    let lower = if n == 0 { arr[1] } else { arr[n - 1] };
    Ok(-(lower + arr[n + 1]) * c(0.5) * (-x).exp())
}

/// η·a·J_n(ηa)/J_{n+1}(ηa) as a real function of `eta_sq`; for η² < 0 it equals
/// κa·I_n(κa)/I_{n+1}(κa), κ² = −η². Continuous through η² = 0 where it tends to 2(n+1).
pub fn jratio_kernel<T: Scalar>(eta_sq: T, a: T, n: usize) -> Result<T> {
    let t = eta_sq * a * a;
    if !t.is_finite() {
        return Err(Error::Domain { what: "jratio kernel", value: t.to_f64_lossy() });
    }
    if t < T::one() {
        // x J_n/J_{n+1} = 2(n+1) − t/(2(n+2) − t/(2(n+3) − …)), evaluated bottom-up
        let depth = 40 + (t.abs().sqrt().to_f64_lossy() as usize) * 2;
        let mut acc = c::<T>(2.0 * (n + depth + 1) as f64);
        for k in (n + 1..n + depth + 1).rev() {
            acc = c::<T>(2.0 * k as f64) - t / acc;
        }
        return Ok(acc);
    }
    let x = t.sqrt();
    let mut buf = [T::zero(); MAX_ORDER + 2];
    j_orders(x, &mut buf[..=n + 1]);
    let (num, den) = (buf[n], buf[n + 1]);
    if den.abs() <= c::<T>(64.0) * T::epsilon() * num.abs().max(T::one()) {
        return Err(Error::Pole { what: "jratio kernel", at: x.to_f64_lossy(), denominator: den.to_f64_lossy() });
    }
    Ok(x * num / den)
}

/// Real continuations of the radial Bessel forms used by the elastic problem, with
/// argument √t·ρ and t of either sign (t < 0 switches to I functions).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialForms<T> {
    /// J0(√t ρ), or I0(√−t ρ)
    pub zeroth: T,
    /// √t·J1(√t ρ), or −√−t·I1(√−t ρ); this is −d/dρ of `zeroth`
    pub sqrt_t_first: T,
    /// J1(√t ρ)/√t, or I1(√−t ρ)/√−t; ρ/2 at t = 0
    pub first_over_sqrt_t: T,
}

pub fn radial_forms<T: Scalar>(t: T, rho: T) -> RadialForms<T> {
    if t > T::zero() {
        let s = t.sqrt();
        let [j0, j1]: [T; 2] = bessel_j_array(s * rho);
        RadialForms { zeroth: j0, sqrt_t_first: s * j1, first_over_sqrt_t: j1 / s }
    } else if t < T::zero() {
        let s = (-t).sqrt();
        let x = s * rho;
        let (i0, i1) = (bessel_i(0, x), bessel_i(1, x));
        RadialForms { zeroth: i0, sqrt_t_first: -s * i1, first_over_sqrt_t: i1 / s }
    } else {
        RadialForms { zeroth: T::one(), sqrt_t_first: T::zero(), first_over_sqrt_t: rho * c(0.5) }
    }
}

/// First `count` positive zeros of J_n, by a bracketed scan and Brent refinement.
pub fn bessel_j_zeros<T: Scalar>(n: usize, count: usize) -> Vec<T> {
    let mut zeros = Vec::with_capacity(count);
    let step = c::<T>(0.25);
    let mut lo = step;
    let mut f_lo = bessel_j(n, lo);
    while zeros.len() < count {
        let hi = lo + step;
        let f_hi = bessel_j(n, hi);
        if f_lo.signum() != f_hi.signum() || f_hi == T::zero() {
            let br = Bracket { lo, hi, f_lo, f_hi };
            if let Ok(z) = brent(|x| Ok(bessel_j(n, x)), br, T::epsilon()) {
                zeros.push(z);
            }
        }
        lo = hi;
        f_lo = f_hi;
    }
    zeros
}
