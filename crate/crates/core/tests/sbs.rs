use brillouin_core::consts::HBAR;
use brillouin_core::coupling::couple;
use brillouin_core::phonon::{PhononBranchQuery, PhononFamily};
use brillouin_core::photon::{PhotonBranchQuery, Polarization};
use brillouin_core::sbs::{brillouin_gain, export_hamiltonian, phase_match_backward, propagate_steady_state, Damping, HamiltonianExport, PhaseMatch};
use brillouin_core::{Config, CouplingRecord, PhononSolver, PhotonSolver, SbsProblem};
use num_complex::Complex;
use proptest::prelude::*;

const A: f64 = 250e-9;
const LINEWIDTH: f64 = 2.0 * std::f64::consts::PI * 1.5e6;

fn phase_match(cfg: &Config, ka: f64, branch: usize) -> PhaseMatch<f64> {
    let (photons, phonons) = (PhotonSolver::new(cfg), PhononSolver::new(cfg));
    let query = PhononBranchQuery { family: PhononFamily::Longitudinal, branch };
    phase_match_backward(ka / cfg.geometry.a, |k| photons.frequency(&PhotonBranchQuery::HE11, k), |q| phonons.frequency(&query, q)).unwrap()
}

/// Coupling at the phase-matched point, with the pump group velocity.
fn operating_point(cfg: &Config, ka: f64) -> (CouplingRecord, f64, f64) {
    let pm = phase_match(cfg, ka, 0);
    let photons = PhotonSolver::new(cfg);
    let pump = photons.mode(pm.k_p, Polarization::Left).unwrap();
    let stokes = photons.mode(pm.k_s, Polarization::Left).unwrap();
    let phonon = PhononSolver::new(cfg).mode(pm.q, 0).unwrap();
    (couple(&pump, &stokes, &phonon, cfg.solver.quad_tol).unwrap(), pump.omega, pump.v_g)
}

#[test]
fn backward_phase_matching_at_reference_pump() {
    let cfg = Config::default();
    let pm = phase_match(&cfg, 1.74, 0);
    assert!((pm.q * A - 3.48).abs() < 0.01, "qa = {}", pm.q * A);
    assert!((pm.k_s.abs() / pm.k_p - 1.0).abs() < 1e-3);
    assert!(pm.k_s < 0.0);
    let (photons, phonons) = (PhotonSolver::new(&cfg), PhononSolver::new(&cfg));
    let query = PhononBranchQuery { family: PhononFamily::Longitudinal, branch: 0 };
    let (energy, momentum) = pm.residuals(|k| photons.frequency(&PhotonBranchQuery::HE11, k), |q| phonons.frequency(&query, q)).unwrap();
    assert!(energy < 1e-9 && momentum < 1e-9, "{energy:e} {momentum:e}");
}

#[test]
fn gain_factor_does_not_depend_on_length() {
    let mut cfg = Config::default();
    let (r1, omega, v_g) = operating_point(&cfg, 1.74);
    let g1 = brillouin_gain(r1.f_total, omega, v_g, Damping::Rate(LINEWIDTH), cfg.geometry.length).unwrap().g_b;
    cfg.geometry.length *= 3.0;
    let (r3, _, _) = operating_point(&cfg, 1.74);
    let g3 = brillouin_gain(r3.f_total, omega, v_g, Damping::Rate(LINEWIDTH), cfg.geometry.length).unwrap().g_b;
    assert!((g3 / g1 - 1.0).abs() < 1e-10);
    // formula audit
    let back = g1 * HBAR * omega * v_g * v_g * LINEWIDTH / (4.0 * 0.01 * r1.f_total.norm_sqr());
    assert!((back - 1.0).abs() < 1e-14);
}

#[test]
fn quality_factor_damping() {
    let q = Damping::QualityFactor { quality: 1e4, omega_phonon: 2e10 };
    assert_eq!(q.rate(), 2e6);
    assert!(brillouin_gain(Complex::new(1.0, 0.0), 1e15, 1e8, Damping::Rate(0.0), 0.01).is_err());
}

fn problem(g_b: f64, i_s_in: f64, i_p_in: f64) -> SbsProblem {
    let (omega, v_g, gamma, length) = (1.2e15, 5.8e7, LINEWIDTH, 0.01);
    let f = (g_b * HBAR * omega * v_g * v_g * gamma / (4.0 * length)).sqrt();
    SbsProblem {
        omega_p: omega,
        omega_s: omega - 8e10,
        omega_phonon: 8e10,
        q: 1.4e7,
        gamma,
        f: Complex::new(f * 0.6, -f * 0.8),
        v_g,
        area: std::f64::consts::PI * A * A,
        length,
        i_p_in,
        i_s_in,
    }
}

#[test]
fn zero_pump_leaves_flat_profiles() {
    let p = problem(1e4, 5.0, 0.0);
    let prof = propagate_steady_state(&p, 21).unwrap();
    assert!(prof.pump.iter().all(|&v| v == 0.0));
    assert!(prof.stokes.iter().all(|&v| v == 5.0));
}

#[test]
fn inconsistent_frequencies_are_rejected() {
    let mut p = problem(1e4, 1.0, 1e9);
    p.omega_s = p.omega_p;
    assert!(propagate_steady_state(&p, 11).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn weak_seed_follows_exponential_law(gain_length in 0.01f64..3.0) {
        // pick the pump so that G_B·I_p·𝒜·L equals the sampled product
        let base = problem(1e4, 1e-6, 1.0);
        let i_p = gain_length / (1e4 * base.area * base.length);
        let p = SbsProblem { i_p_in: i_p, ..base };
        let prof = propagate_steady_state(&p, 3).unwrap();
        let amplification = prof.stokes[0] / prof.stokes[2];
        let want = p.gain().unwrap().amplification(i_p, p.area, p.length);
        prop_assert!((want.ln() / gain_length - 1.0).abs() < 1e-12);
        prop_assert!((amplification / want - 1.0).abs() < 1e-6, "{amplification} vs {want}");
    }

    #[test]
    fn flux_difference_conserved_under_depletion(seed_fraction in 1e-4f64..0.5, gain_length in 0.5f64..6.0) {
        let base = problem(1e4, 1.0, 1.0);
        let i_p = gain_length / (1e4 * base.area * base.length);
        let p = SbsProblem { i_p_in: i_p, i_s_in: i_p * seed_fraction, ..base };
        let prof = propagate_steady_state(&p, 64).unwrap();
        prop_assert!(prof.manley_rowe_drift() < 1e-9);
        prop_assert!((prof.stokes.last().unwrap() / p.i_s_in - 1.0).abs() < 1e-8);
    }
}

#[test]
fn export_round_trip_and_hermitian_matrix() {
    let cfg = Config::default();
    let photons = PhotonSolver::new(&cfg);
    let phonons = PhononSolver::new(&cfg);
    let ks: Vec<f64> = [1.7, 1.8, -1.7, -1.8].iter().map(|x| x / A).collect();
    let photon_modes: Vec<_> = ks.iter().map(|&k| photons.mode(k, Polarization::Left).unwrap()).collect();
    let phonon_modes: Vec<_> = [3.4, 3.5, 3.6].iter().map(|qa| phonons.mode(qa / A, 0).unwrap()).collect();
    let records: Vec<CouplingRecord> = [(0, 0), (1, 2), (1, 1)]
        .iter()
        .map(|&(pump, phonon)| {
            let p = &photon_modes[pump];
            let s = photons.mode(p.k - phonon_modes[phonon].q, Polarization::Left).unwrap();
            couple(p, &s, &phonon_modes[phonon], 1e-9).unwrap()
        })
        .collect();
    // the scattered photons must be listed for the matrix to close
    let mut listed = photon_modes.clone();
    for r in &records {
        listed.push(photons.mode(r.k_scattered(), Polarization::Left).unwrap());
    }
    let path = std::env::temp_dir().join(format!("brillouin-export-{}.json", std::process::id()));
    let written = export_hamiltonian(&listed, &phonon_modes, &records, &path).unwrap();
    let back = HamiltonianExport::read(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(back, written);
    for (c, r) in back.couplings.iter().zip(&records) {
        assert_eq!(c.f_re.to_bits(), r.f_total.re.to_bits());
        assert_eq!(c.f_im.to_bits(), r.f_total.im.to_bits());
        assert_eq!(c.k_scattered.to_bits(), r.k_scattered().to_bits());
    }
    assert_eq!(back.units["f_re"], "rad/s");
    let m = back.interaction_matrix().unwrap();
    let mut nonzero = 0;
    for i in 0..m.len() {
        for j in 0..m.len() {
            assert_eq!(m[i][j], m[j][i].conj());
            if m[i][j].norm() > 0.0 {
                nonzero += 1;
            }
        }
    }
    assert_eq!(nonzero, 2 * records.len());
}
