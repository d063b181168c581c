use std::f64::consts::{PI, TAU};
use std::path::Path;

use brillouin_core::config::load_config;
use brillouin_core::consts::SPEED_OF_LIGHT;
use brillouin_core::coupling::{coupling_map, couple, max_radiation_pressure, CouplingMapSpec, CouplingStatus};
use brillouin_core::output::{coupling_table, fmt_float, phonon_table, photon_table, profile_table};
use brillouin_core::phonon::{PhononBranchQuery, PhononFamily};
use brillouin_core::photon::{Polarization, PhotonBranchQuery};
use brillouin_core::sbs::{brillouin_gain, phase_match_backward, propagate_steady_state, Damping, HamiltonianExport, PhaseMatch};
use brillouin_core::{Config, CouplingRecord, Error, PhononMode, PhononSolver, PhotonMode, PhotonSolver, Result, SbsProblem};
use serde::Serialize;

use crate::args::{Cli, Command, CouplingMapArgs, DampingArgs, DispersionArgs, ExportArgs, GainArgs, Handedness, Kind, ModesArgs, PointArgs, PropagateArgs, Range};
use crate::outputs::Outputs;

/// Resolves the configuration file and applies command-line overrides.
pub fn resolve_config(cli: &Cli) -> Result<Config> {
    let mut cfg = match &cli.config {
        Some(path) => load_config(path)?,
        None if Path::new("brillouin.toml").exists() => load_config("brillouin.toml")?,
        None => Config::default(),
    };
    if let Some(t) = cli.tol_root {
        cfg.solver.root_tol = t;
    }
    if let Some(t) = cli.tol_quad {
        cfg.solver.quad_tol = t;
    }
    if let Some(l) = cli.length {
        cfg.geometry.length = l;
    }
    if let Some(a) = cli.radius {
        cfg.geometry.a = a;
    }
    cfg.validate()?;
    Ok(cfg)
}

pub fn run(cli: &Cli) -> Result<()> {
    let mut cfg = resolve_config(cli)?;
    let mut out = Outputs::new(&cli.out_dir)?;
    let name = match &cli.command {
        Command::Dispersion(a) => {
            dispersion(&cfg, a, &mut out)?;
            "dispersion"
        }
        Command::Modes(a) => {
            modes(&cfg, a, &mut out)?;
            "modes"
        }
        Command::CouplingMap(a) => {
            if let Some(g) = a.gamma_el {
                if !(g >= 0.0 && g.is_finite()) {
                    return Err(Error::Input("--gamma-el must be non-negative".into()));
                }
                cfg.material.p12 = g / cfg.material.n.powi(4);
            }
            map(&cfg, a, &mut out)?;
            "coupling-map"
        }
        Command::PhaseMatch(a) => {
            phase_match(&cfg, a, &mut out)?;
            "phase-match"
        }
        Command::Gain(a) => {
            gain(&cfg, a, &mut out)?;
            "gain"
        }
        Command::Propagate(a) => {
            propagate(&cfg, a, &mut out)?;
            "propagate"
        }
        Command::ExportHamiltonian(a) => {
            export(&cfg, a, &mut out)?;
            "export-hamiltonian"
        }
    };
    for path in out.commit(name, &cfg)? {
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn polarization(h: Handedness) -> Polarization {
    match h {
        Handedness::Left => Polarization::Left,
        Handedness::Right => Polarization::Right,
    }
}

fn to_json<S: Serialize>(v: &S) -> String {
    serde_json::to_string_pretty(v).expect("summary serializes")
}

fn wavenumbers(range: &Range, a: f64) -> Vec<f64> {
    range.values().into_iter().map(|x| x / a).collect()
}

fn default_range(start: f64, stop: f64, cfg: &Config) -> Range {
    Range { start, stop, count: cfg.solver.dispersion_points }
}

fn photon_modes(cfg: &Config, range: &Range) -> Result<Vec<PhotonMode>> {
    let solver = PhotonSolver::new(cfg);
    let a = cfg.geometry.a;
    let curve = solver.solve_dispersion(&PhotonBranchQuery::HE11, range.start / a, range.stop / a, range.count)?;
    solver.finalize_curve(&curve, Polarization::Left)
}

fn phonon_modes(cfg: &Config, range: &Range, branches: &[usize]) -> Result<Vec<PhononMode>> {
    let solver = PhononSolver::new(cfg);
    let a = cfg.geometry.a;
    let mut modes = Vec::new();
    for &b in branches {
        let curve = solver.solve_longitudinal_dispersion(b, range.start / a, range.stop / a, range.count)?;
        modes.extend(solver.finalize_curve(&curve)?);
    }
    Ok(modes)
}

fn dispersion(cfg: &Config, args: &DispersionArgs, out: &mut Outputs) -> Result<()> {
    match args.kind {
        Kind::Photon => {
            let range = args.ka.unwrap_or(default_range(0.2, 4.0, cfg));
            let modes = photon_modes(cfg, &range)?;
            out.write("photon_dispersion.csv", &photon_table(&modes))
        }
        Kind::Phonon => {
            let range = args.qa.unwrap_or(default_range(0.1, 4.0, cfg));
            let modes = phonon_modes(cfg, &range, &args.branches)?;
            out.write("phonon_dispersion.csv", &phonon_table(&modes))
        }
        Kind::Torsional => {
            let range = args.qa.unwrap_or(default_range(0.1, 4.0, cfg));
            let solver = PhononSolver::new(cfg);
            let a = cfg.geometry.a;
            let mut csv = String::from("qa,Omega_Hz,overtone\n");
            for &n in &args.overtones {
                for s in solver.torsional_dispersion(n, range.start / a, range.stop / a, range.count).samples {
                    csv.push_str(&format!("{},{},{n}\n", fmt_float(s.k * a), fmt_float(s.omega / TAU)));
                }
            }
            out.write("torsional_dispersion.csv", &csv)
        }
    }
}

#[derive(Serialize)]
struct ModesSummary {
    min_vphot_over_vf: f64,
    min_at_ka: f64,
    guided_wavelength_m: f64,
    zq_peaks: Vec<ZqPeak>,
}

#[derive(Serialize)]
struct ZqPeak {
    branch: usize,
    max_zq_over_a: f64,
    at_qa: f64,
}

fn modes(cfg: &Config, args: &ModesArgs, out: &mut Outputs) -> Result<()> {
    let a = cfg.geometry.a;
    let photons = photon_modes(cfg, &args.ka.unwrap_or(default_range(0.2, 4.0, cfg)))?;
    let phonons = phonon_modes(cfg, &args.qa.unwrap_or(default_range(0.1, 4.0, cfg)), &args.branches)?;
    let best = photons
        .iter()
        .min_by(|x, y| x.volume_ratio().total_cmp(&y.volume_ratio()))
        .ok_or(Error::Input("empty photon range".into()))?;
    let zq_peaks = args
        .branches
        .iter()
        .filter_map(|&b| {
            phonons
                .iter()
                .filter(|m| m.branch == b)
                .max_by(|x, y| x.z_q.total_cmp(&y.z_q))
                .map(|m| ZqPeak { branch: b, max_zq_over_a: m.z_q / a, at_qa: m.q * a })
        })
        .collect();
    let summary = ModesSummary {
        min_vphot_over_vf: best.volume_ratio(),
        min_at_ka: best.k * a,
        guided_wavelength_m: TAU / best.k,
        zq_peaks,
    };
    println!("V_phot/V_F minimum {:.6} at ka = {:.4} (guided wavelength {:.1} nm)", summary.min_vphot_over_vf, summary.min_at_ka, summary.guided_wavelength_m * 1e9);
    for p in &summary.zq_peaks {
        println!("branch {}: Z_q/a maximum {:.4e} at qa = {:.4}", p.branch, p.max_zq_over_a, p.at_qa);
    }
    out.write("photon_modes.csv", &photon_table(&photons))?;
    out.write("phonon_modes.csv", &phonon_table(&phonons))?;
    out.write("modes_summary.json", &to_json(&summary))
}

#[derive(Serialize)]
struct MapSummary {
    branch: usize,
    points: usize,
    failed_points: usize,
    max_f_rp_hz: f64,
    max_f_rp_at_ka: f64,
    max_f_rp_at_qa: f64,
    max_f_el_hz: f64,
    max_f_total_hz: f64,
}

fn map_summary(records: &[CouplingRecord], a: f64, branch: usize) -> Option<MapSummary> {
    let best = max_radiation_pressure(records)?;
    let ok = || records.iter().filter(|r| r.status == CouplingStatus::Ok);
    Some(MapSummary {
        branch,
        points: records.len(),
        failed_points: records.len() - ok().count(),
        max_f_rp_hz: best.f_rp.norm() / TAU,
        max_f_rp_at_ka: best.k * a,
        max_f_rp_at_qa: best.q * a,
        max_f_el_hz: ok().map(|r| r.f_el.norm()).fold(0.0, f64::max) / TAU,
        max_f_total_hz: ok().map(|r| r.f_total.norm()).fold(0.0, f64::max) / TAU,
    })
}

fn map(cfg: &Config, args: &CouplingMapArgs, out: &mut Outputs) -> Result<()> {
    let a = cfg.geometry.a;
    let (mut ka, mut qa) = (args.ka, args.qa);
    if let Some((nk, nq)) = args.grid {
        ka.count = nk;
        qa.count = nq;
    }
    let spec = CouplingMapSpec { k_grid: wavenumbers(&ka, a), q_grid: wavenumbers(&qa, a), branch: args.branch, polarization: polarization(args.polarization) };
    let records = coupling_map(cfg, &spec);
    out.write("coupling_map.csv", &coupling_table(&records, a))?;
    let summary = map_summary(&records, a, args.branch).ok_or(Error::NoRoot { what: "any coupling-map point", at: spec.k_grid[0] })?;
    println!(
        "max |f_rp|/2pi = {:.4e} Hz at ka = {:.4}, qa = {:.4}; max |f_el|/2pi = {:.4e} Hz; {} of {} points flagged",
        summary.max_f_rp_hz, summary.max_f_rp_at_ka, summary.max_f_rp_at_qa, summary.max_f_el_hz, summary.failed_points, summary.points
    );
    out.write("coupling_summary.json", &to_json(&summary))
}

/// A phase-matched backward Stokes configuration with its modes and coupling.
struct OperatingPoint {
    branch: usize,
    phase: PhaseMatch<f64>,
    pump: PhotonMode,
    phonon: PhononMode,
    coupling: CouplingRecord,
}

fn match_branch(cfg: &Config, k_p: f64, branch: usize) -> Result<PhaseMatch<f64>> {
    let photons = PhotonSolver::new(cfg);
    let phonons = PhononSolver::new(cfg);
    let query = PhononBranchQuery { family: PhononFamily::Longitudinal, branch };
    phase_match_backward(k_p, |k| photons.frequency(&PhotonBranchQuery::HE11, k), |q| phonons.frequency(&query, q))
}

fn operating_point(cfg: &Config, args: &PointArgs) -> Result<OperatingPoint> {
    if !(args.ka > 0.0) {
        return Err(Error::Input("--ka must be positive".into()));
    }
    let k_p = args.ka / cfg.geometry.a;
    let (branch, phase) = match args.near {
        Some(target) => (0..4)
            .filter_map(|b| match_branch(cfg, k_p, b).ok().map(|pm| (b, pm)))
            .min_by(|x, y| (x.1.omega_phonon / TAU - target).abs().total_cmp(&(y.1.omega_phonon / TAU - target).abs()))
            .ok_or(Error::NoRoot { what: "phase-matched phonon branch", at: k_p })?,
        None => {
            let b = args.branch.unwrap_or(0);
            (b, match_branch(cfg, k_p, b)?)
        }
    };
    let pol = polarization(args.polarization);
    let photons = PhotonSolver::new(cfg);
    let pump = photons.mode(k_p, pol)?;
    let stokes = photons.mode(phase.k_s, pol)?;
    let phonon = PhononSolver::new(cfg).mode(phase.q, branch)?;
    let coupling = couple(&pump, &stokes, &phonon, cfg.solver.quad_tol)?;
    Ok(OperatingPoint { branch, phase, pump, phonon, coupling })
}

#[derive(Serialize)]
struct PhaseMatchSummary {
    branch: usize,
    ka_pump: f64,
    ka_stokes: f64,
    qa: f64,
    pump_frequency_hz: f64,
    stokes_frequency_hz: f64,
    phonon_frequency_hz: f64,
    guided_wavelength_m: f64,
    vacuum_wavelength_m: f64,
    iterations: usize,
    energy_residual: f64,
    momentum_residual: f64,
}

fn phase_match(cfg: &Config, args: &PointArgs, out: &mut Outputs) -> Result<()> {
    let op = operating_point(cfg, args)?;
    let a = cfg.geometry.a;
    let pm = op.phase;
    let photons = PhotonSolver::new(cfg);
    let phonons = PhononSolver::new(cfg);
    let query = PhononBranchQuery { family: PhononFamily::Longitudinal, branch: op.branch };
    let (energy, momentum) = pm.residuals(|k| photons.frequency(&PhotonBranchQuery::HE11, k), |q| phonons.frequency(&query, q))?;
    let summary = PhaseMatchSummary {
        branch: op.branch,
        ka_pump: pm.k_p * a,
        ka_stokes: pm.k_s * a,
        qa: pm.q * a,
        pump_frequency_hz: pm.omega_p / TAU,
        stokes_frequency_hz: pm.omega_s / TAU,
        phonon_frequency_hz: pm.omega_phonon / TAU,
        guided_wavelength_m: TAU / pm.k_p,
        vacuum_wavelength_m: TAU * SPEED_OF_LIGHT / pm.omega_p,
        iterations: pm.iterations,
        energy_residual: energy,
        momentum_residual: momentum,
    };
    println!("branch {} qa = {:.6} phonon {:.4} GHz ({} iterations)", summary.branch, summary.qa, summary.phonon_frequency_hz / 1e9, summary.iterations);
    out.write("phase_match.json", &to_json(&summary))
}

fn damping(args: &DampingArgs, omega_phonon: f64) -> Result<Damping<f64>> {
    match (args.linewidth, args.quality) {
        (_, Some(q)) if q > 0.0 => Ok(Damping::QualityFactor { quality: q, omega_phonon }),
        (_, Some(_)) => Err(Error::Input("--quality must be positive".into())),
        (Some(lw), None) => Ok(Damping::Rate(TAU * lw)),
        // linewidth of the reference silicon case
        (None, None) => Ok(Damping::Rate(TAU * 1.5e6)),
    }
}

#[derive(Serialize)]
struct GainSummary {
    branch: usize,
    ka: f64,
    qa: f64,
    phonon_frequency_hz: f64,
    f_rp_hz: f64,
    f_el_hz: f64,
    f_total_hz: f64,
    v_g_over_c: f64,
    optical_frequency_hz: f64,
    vacuum_wavelength_m: f64,
    guided_wavelength_m: f64,
    linewidth_hz: f64,
    length_m: f64,
    g_b_per_m_per_w: f64,
}

fn gain(cfg: &Config, args: &GainArgs, out: &mut Outputs) -> Result<()> {
    let op = operating_point(cfg, &args.point)?;
    let d = damping(&args.damping, op.phase.omega_phonon)?;
    let g = brillouin_gain(op.coupling.f_total, op.pump.omega, op.pump.v_g, d, cfg.geometry.length)?;
    let a = cfg.geometry.a;
    let summary = GainSummary {
        branch: op.branch,
        ka: op.pump.k * a,
        qa: op.phonon.q * a,
        phonon_frequency_hz: op.phonon.omega / TAU,
        f_rp_hz: op.coupling.f_rp.norm() / TAU,
        f_el_hz: op.coupling.f_el.norm() / TAU,
        f_total_hz: op.coupling.f_total.norm() / TAU,
        v_g_over_c: op.pump.v_g / SPEED_OF_LIGHT,
        optical_frequency_hz: op.pump.omega / TAU,
        vacuum_wavelength_m: TAU * SPEED_OF_LIGHT / op.pump.omega,
        guided_wavelength_m: TAU / op.pump.k,
        linewidth_hz: d.rate() / TAU,
        length_m: cfg.geometry.length,
        g_b_per_m_per_w: g.g_b,
    };
    println!(
        "G_B = {:.4e} 1/(m W)  (|f|/2pi = {:.4e} Hz, v_g = {:.4} c, Omega/2pi = {:.4} GHz, branch {})",
        summary.g_b_per_m_per_w,
        summary.f_total_hz,
        summary.v_g_over_c,
        summary.phonon_frequency_hz / 1e9,
        summary.branch
    );
    out.write("gain.json", &to_json(&summary))
}

#[derive(Serialize)]
struct PropagateSummary {
    g_b_per_m_per_w: f64,
    area_m2: f64,
    length_m: f64,
    pump_in: f64,
    stokes_in: f64,
    gain_length_product: f64,
    stokes_amplification: f64,
    manley_rowe_drift: f64,
    shooting_iterations: usize,
    undepleted_max_deviation: Option<f64>,
}

fn propagate(cfg: &Config, args: &PropagateArgs, out: &mut Outputs) -> Result<()> {
    if args.samples < 2 {
        return Err(Error::Input("--samples must be at least 2".into()));
    }
    let op = operating_point(cfg, &args.point)?;
    let d = damping(&args.damping, op.phase.omega_phonon)?;
    let a = cfg.geometry.a;
    let area = args.area.unwrap_or(PI * a * a);
    let problem = SbsProblem {
        omega_p: op.phase.omega_p,
        omega_s: op.phase.omega_s,
        omega_phonon: op.phase.omega_phonon,
        q: op.phase.q,
        gamma: d.rate(),
        f: op.coupling.f_total,
        v_g: op.pump.v_g,
        area,
        length: cfg.geometry.length,
        i_p_in: args.pump,
        i_s_in: args.stokes,
    };
    let prof = propagate_steady_state(&problem, args.samples)?;
    let gl = prof.g_b * area * args.pump * cfg.geometry.length;
    let undepleted = if args.check_undepleted { Some(undepleted_check(&problem, prof.g_b)?) } else { None };
    let last = prof.stokes.len() - 1;
    let summary = PropagateSummary {
        g_b_per_m_per_w: prof.g_b,
        area_m2: area,
        length_m: cfg.geometry.length,
        pump_in: args.pump,
        stokes_in: args.stokes,
        gain_length_product: gl,
        stokes_amplification: prof.stokes[0] / prof.stokes[last],
        manley_rowe_drift: prof.manley_rowe_drift(),
        shooting_iterations: prof.history.len(),
        undepleted_max_deviation: undepleted,
    };
    println!(
        "G_B = {:.4e} 1/(m W), gain-length product {:.4e}, Stokes amplification {:.6e}, Manley-Rowe drift {:.2e}",
        summary.g_b_per_m_per_w, gl, summary.stokes_amplification, summary.manley_rowe_drift
    );
    if let Some(dev) = undepleted {
        println!("undepleted-pump law: max relative deviation {dev:.3e} over gain-length products 0.01..3");
    }
    out.write("profile.csv", &profile_table(&prof))?;
    out.write("propagate_summary.json", &to_json(&summary))
}

/// Largest |I_s(0)/I_s(L) / exp(G_B 𝒜 I_p L) − 1| for a weak seed over gain-length products
/// from 0.01 to 3.
fn undepleted_check(problem: &SbsProblem, g_b: f64) -> Result<f64> {
    if g_b == 0.0 {
        return Err(Error::Input("the undepleted check needs a nonzero gain".into()));
    }
    let mut worst: f64 = 0.0;
    for gl in [0.01, 0.03, 0.1, 0.3, 1.0, 2.0, 3.0] {
        let pump = gl / (g_b * problem.area * problem.length);
        let p = SbsProblem { i_p_in: pump, i_s_in: pump * 1e-12, ..*problem };
        let prof = propagate_steady_state(&p, 2)?;
        worst = worst.max((prof.stokes[0] / prof.stokes[1] / gl.exp() - 1.0).abs());
    }
    Ok(worst)
}

fn export(cfg: &Config, args: &ExportArgs, out: &mut Outputs) -> Result<()> {
    let a = cfg.geometry.a;
    let pol = polarization(args.polarization);
    let spec = CouplingMapSpec { k_grid: wavenumbers(&args.ka, a), q_grid: wavenumbers(&args.qa, a), branch: args.branch, polarization: pol };
    let records = coupling_map(cfg, &spec);
    let photons = PhotonSolver::new(cfg);
    let mut ks: Vec<f64> = spec.k_grid.clone();
    ks.extend(records.iter().filter(|r| r.status == CouplingStatus::Ok).map(|r| r.k_scattered()));
    ks.sort_by(f64::total_cmp);
    ks.dedup();
    let photon_modes = ks.iter().map(|&k| photons.mode(k, pol)).collect::<Result<Vec<_>>>()?;
    let phonons = PhononSolver::new(cfg);
    let phonon_modes = spec.q_grid.iter().map(|&q| phonons.mode(q, args.branch)).collect::<Result<Vec<_>>>()?;
    let doc = HamiltonianExport::new(&photon_modes, &phonon_modes, &records);
    println!("{} photon modes, {} phonon modes, {} coupling triplets", doc.photon_modes.len(), doc.phonon_modes.len(), doc.couplings.len());
    out.write("hamiltonian.json", &doc.to_json())
}
