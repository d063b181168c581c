use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "brillouin", version, about = "Photon, phonon and Brillouin coupling calculations for cylindrical nanowires")]
pub struct Cli {
    /// Configuration file; ./brillouin.toml is used when present, silicon defaults otherwise.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Directory receiving the output files.
    #[arg(long, global = true, default_value = ".")]
    pub out_dir: PathBuf,

    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Override solver.root_tol.
    #[arg(long, global = true)]
    pub tol_root: Option<f64>,

    /// Override solver.quad_tol.
    #[arg(long, global = true)]
    pub tol_quad: Option<f64>,

    /// Override geometry.length, e.g. 2cm.
    #[arg(long, global = true, value_parser = parse_length)]
    pub length: Option<f64>,

    /// Override geometry.a, e.g. 250nm.
    #[arg(long, global = true, value_parser = parse_length)]
    pub radius: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dispersion curves.
    Dispersion(DispersionArgs),
    /// Photon and phonon mode tables with effective volumes and zero-point fluctuations.
    Modes(ModesArgs),
    /// Coupling rates over the (ka, qa) plane.
    CouplingMap(CouplingMapArgs),
    /// Backward Stokes phase matching for one pump wavenumber.
    PhaseMatch(PointArgs),
    /// Brillouin gain factor at a phase-matched operating point.
    Gain(GainArgs),
    /// Steady-state pump and Stokes intensities along the wire.
    Propagate(PropagateArgs),
    /// JSON tables of modes and coupling triplets.
    ExportHamiltonian(ExportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Photon,
    Phonon,
    Torsional,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Handedness {
    Left,
    Right,
}

#[derive(Debug, Args)]
pub struct DispersionArgs {
    pub kind: Kind,
    /// Photon wavenumber range ka as start:stop:count.
    #[arg(long, value_parser = parse_range)]
    pub ka: Option<Range>,
    /// Phonon wavenumber range qa as start:stop:count.
    #[arg(long, value_parser = parse_range)]
    pub qa: Option<Range>,
    /// Longitudinal branches (0 = acoustic).
    #[arg(long, value_delimiter = ',', default_value = "0,1")]
    pub branches: Vec<usize>,
    /// Torsional overtones (0 = fundamental).
    #[arg(long, value_delimiter = ',', default_value = "0,1,2")]
    pub overtones: Vec<usize>,
}

#[derive(Debug, Args)]
pub struct ModesArgs {
    /// Photon wavenumbers ka as start:stop:count (default 0.2:4 at the configured point count).
    #[arg(long, value_parser = parse_range)]
    pub ka: Option<Range>,
    /// Phonon wavenumbers qa as start:stop:count (default 0.1:4 at the configured point count).
    #[arg(long, value_parser = parse_range)]
    pub qa: Option<Range>,
    /// Longitudinal branches (0 = acoustic).
    #[arg(long, value_delimiter = ',', default_value = "0,1")]
    pub branches: Vec<usize>,
}

#[derive(Debug, Args)]
pub struct CouplingMapArgs {
    #[arg(long, value_parser = parse_range, default_value = "0.2:4:60")]
    pub ka: Range,
    #[arg(long, value_parser = parse_range, default_value = "0.1:4:60")]
    pub qa: Range,
    /// Replace the point counts of both ranges, as NKAxNQA.
    #[arg(long, value_parser = parse_grid)]
    pub grid: Option<(usize, usize)>,
    #[arg(long, default_value_t = 0)]
    pub branch: usize,
    /// Electrostriction constant; sets p12 = gamma_el / n⁴.
    #[arg(long)]
    pub gamma_el: Option<f64>,
    #[arg(long, value_enum, default_value = "left")]
    pub polarization: Handedness,
}

/// Pump wavenumber and phonon branch selection.
#[derive(Debug, Args, Clone)]
pub struct PointArgs {
    /// Pump wavenumber ka.
    #[arg(long, default_value_t = 1.74)]
    pub ka: f64,
    /// Phonon branch (default 0).
    #[arg(long, conflicts_with = "near")]
    pub branch: Option<usize>,
    /// Pick the branch whose phase-matched frequency is closest to this, e.g. 15GHz.
    #[arg(long, value_parser = parse_frequency)]
    pub near: Option<f64>,
    #[arg(long, value_enum, default_value = "left")]
    pub polarization: Handedness,
}

#[derive(Debug, Args, Clone)]
pub struct DampingArgs {
    /// Phonon linewidth Γ/2π, e.g. 1.5MHz.
    #[arg(long, value_parser = parse_frequency, conflicts_with = "quality")]
    pub linewidth: Option<f64>,
    /// Phonon quality factor, Γ = Ω/Q.
    #[arg(long)]
    pub quality: Option<f64>,
}

#[derive(Debug, Args)]
pub struct GainArgs {
    #[command(flatten)]
    pub point: PointArgs,
    #[command(flatten)]
    pub damping: DampingArgs,
}

#[derive(Debug, Args)]
pub struct PropagateArgs {
    #[command(flatten)]
    pub point: PointArgs,
    #[command(flatten)]
    pub damping: DampingArgs,
    /// Pump intensity at z = 0 (W/m²).
    #[arg(long, default_value_t = 1e9)]
    pub pump: f64,
    /// Stokes intensity at z = L (W/m²).
    #[arg(long, default_value_t = 1.0)]
    pub stokes: f64,
    /// Cross section (m²); defaults to πa².
    #[arg(long)]
    pub area: Option<f64>,
    #[arg(long, default_value_t = 201)]
    pub samples: usize,
    /// Compare weak-seed propagation against the exponential law over gain-length
    /// products 0.01 to 3 and print the largest deviation.
    #[arg(long)]
    pub check_undepleted: bool,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[arg(long, value_parser = parse_range, default_value = "1.6:1.9:4")]
    pub ka: Range,
    #[arg(long, value_parser = parse_range, default_value = "3.3:3.6:4")]
    pub qa: Range,
    #[arg(long, default_value_t = 0)]
    pub branch: usize,
    #[arg(long, value_enum, default_value = "left")]
    pub polarization: Handedness,
}

/// Evenly spaced grid `start:stop:count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Range {
    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count).map(|i| if i + 1 == self.count { self.stop } else { self.start + step * i as f64 }).collect()
    }
}

pub fn parse_range(s: &str) -> Result<Range, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [start, stop, count] = parts.as_slice() else {
        return Err(format!("expected start:stop:count, got {s:?}"));
    };
    let num = |t: &str| t.trim().parse::<f64>().ok().filter(|v| v.is_finite()).ok_or(format!("bad number {t:?} in range {s:?}"));
    let (start, stop) = (num(start)?, num(stop)?);
    let count: usize = count.trim().parse().map_err(|_| format!("bad count {count:?} in range {s:?}"))?;
    if count == 0 {
        return Err("range count must be at least 1".into());
    }
    if count > 1 && stop <= start {
        return Err(format!("range {s:?} must increase"));
    }
    Ok(Range { start, stop, count })
}

pub fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(['x', 'X']).ok_or(format!("expected NxM, got {s:?}"))?;
    let n = |t: &str| t.parse::<usize>().ok().filter(|v| *v > 0).ok_or(format!("bad grid size {t:?}"));
    Ok((n(a)?, n(b)?))
}

/// Parses a number with an optional SI suffix. The suffix is folded into the decimal exponent
/// so that "250nm" gives exactly the same float as "250e-9".
fn parse_with_units(s: &str, units: &[(&str, i32)]) -> Result<f64, String> {
    let s = s.trim();
    let (number, shift) = units
        .iter()
        .find_map(|(suffix, shift)| s.strip_suffix(suffix).map(|n| (n.trim(), *shift)))
        .unwrap_or((s, 0));
    let (mantissa, exponent) = number.split_once(['e', 'E']).unwrap_or((number, "0"));
    let exponent: i32 = exponent.parse().map_err(|_| format!("cannot parse {s:?}"))?;
    let v: f64 = format!("{mantissa}e{}", exponent + shift).parse().map_err(|_| format!("cannot parse {s:?}"))?;
    if !v.is_finite() {
        return Err(format!("{s:?} is not finite"));
    }
    Ok(v)
}

/// Length in metres; accepts nm, um, mm, cm and m suffixes.
pub fn parse_length(s: &str) -> Result<f64, String> {
    parse_with_units(s, &[("nm", -9), ("um", -6), ("mm", -3), ("cm", -2), ("m", 0)])
}

/// Frequency in Hz; accepts GHz, MHz, kHz and Hz suffixes.
pub fn parse_frequency(s: &str) -> Result<f64, String> {
    parse_with_units(s, &[("GHz", 9), ("MHz", 6), ("kHz", 3), ("Hz", 0)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        let r = parse_range("0.2:4:60").unwrap();
        let v = r.values();
        assert_eq!(v.len(), 60);
        assert_eq!((v[0], v[59]), (0.2, 4.0));
        assert_eq!(parse_range("1.74:1.74:1").unwrap().values(), vec![1.74]);
        for bad in ["1:2", "a:2:3", "2:1:5", "0:1:0", "0:inf:3"] {
            assert!(parse_range(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn si_suffixes() {
        assert_eq!(parse_length("250nm").unwrap(), 250e-9);
        assert_eq!(parse_length("2cm").unwrap(), 0.02);
        assert_eq!(parse_length("0.5").unwrap(), 0.5);
        assert_eq!(parse_frequency("1.5MHz").unwrap(), 1.5e6);
        assert_eq!(parse_frequency("15GHz").unwrap(), 15e9);
        assert!(parse_frequency("fast").is_err());
        assert_eq!(parse_length("2.5e2nm").unwrap(), 250e-9);
        assert!(parse_length("1e400m").is_err());
        assert!(parse_length("nm").is_err());
        assert_eq!(parse_grid("3x3").unwrap(), (3, 3));
    }
}
