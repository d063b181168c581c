//! CSV tables. Every float is written with 17 significant digits so reruns are byte-identical.

use std::fmt::Write;

use crate::coupling::CouplingRecord;
use crate::phonon::PhononMode;
use crate::photon::PhotonMode;
use crate::scalar::Scalar;
use crate::sbs::Profiles;

const TWO_PI: f64 = std::f64::consts::TAU;

/// Fixed scientific formatting with 17 significant digits.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn row(out: &mut String, cells: &[String]) {
    out.push_str(&cells.join(","));
    out.push('\n');
}

/// Columns: ka, omega_Hz, vg_over_c, Vphot_over_VF, aeff_over_a.
pub fn photon_table<T: Scalar>(modes: &[PhotonMode<T>]) -> String {
    let mut out = String::from("ka,omega_Hz,vg_over_c,Vphot_over_VF,aeff_over_a\n");
    for m in modes {
        let a = m.geometry.a.to_f64_lossy();
        row(
            &mut out,
            &[
                fmt_float(m.k.to_f64_lossy() * a),
                fmt_float(m.omega.to_f64_lossy() / TWO_PI),
                fmt_float(m.v_g.to_f64_lossy() / crate::consts::SPEED_OF_LIGHT),
                fmt_float(m.volume_ratio().to_f64_lossy()),
                fmt_float(m.a_eff.to_f64_lossy() / a),
            ],
        );
    }
    out
}

/// Columns: qa, Omega_Hz, Zq_over_a, Vphon_over_VF, branch.
pub fn phonon_table<T: Scalar>(modes: &[PhononMode<T>]) -> String {
    let mut out = String::from("qa,Omega_Hz,Zq_over_a,Vphon_over_VF,branch\n");
    for m in modes {
        let a = m.geometry.a.to_f64_lossy();
        row(
            &mut out,
            &[
                fmt_float(m.q.to_f64_lossy() * a),
                fmt_float(m.omega.to_f64_lossy() / TWO_PI),
                fmt_float(m.z_q.to_f64_lossy() / a),
                fmt_float(m.volume_ratio().to_f64_lossy()),
                m.branch.to_string(),
            ],
        );
    }
    out
}

/// Columns: ka, qa, branch, f_rp_Hz, f_el_Hz, f_abs_Hz, status. Rates are |f|/2π.
pub fn coupling_table<T: Scalar>(records: &[CouplingRecord<T>], a: T) -> String {
    let mut out = String::from("ka,qa,branch,f_rp_Hz,f_el_Hz,f_abs_Hz,status\n");
    let a = a.to_f64_lossy();
    for r in records {
        let hz = |f: num_complex::Complex<T>| fmt_float(f.norm().to_f64_lossy() / TWO_PI);
        row(
            &mut out,
            &[
                fmt_float(r.k.to_f64_lossy() * a),
                fmt_float(r.q.to_f64_lossy() * a),
                r.branch.to_string(),
                hz(r.f_rp),
                hz(r.f_el),
                hz(r.f_total),
                r.status.as_str().to_string(),
            ],
        );
    }
    out
}

/// Columns: z_m, Ip_W_per_m2, Is_W_per_m2.
pub fn profile_table<T: Scalar>(p: &Profiles<T>) -> String {
    let mut out = String::from("z_m,Ip_W_per_m2,Is_W_per_m2\n");
    for ((z, ip), is) in p.z.iter().zip(&p.pump).zip(&p.stokes) {
        let _ = writeln!(out, "{},{},{}", fmt_float(z.to_f64_lossy()), fmt_float(ip.to_f64_lossy()), fmt_float(is.to_f64_lossy()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits_round_trip() {
        for v in [0.1, 1.0 / 3.0, 2.186e14, -7.25e-300] {
            let s = fmt_float(v);
            assert_eq!(s.parse::<f64>().unwrap(), v);
            assert_eq!(s.split('e').next().unwrap().trim_start_matches('-').len(), 18);
        }
    }
}
