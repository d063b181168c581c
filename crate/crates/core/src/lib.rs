//! Guided photons, elastic phonons and their Brillouin coupling in a cylindrical dielectric
//! nanowire.
//!
//! The solvers are generic over the float type (`f32` or `f64`); the aliases at the crate
//! root fix `f64`, which is what the command-line tool and the reference tests use.

pub mod config;
pub mod consts;
pub mod coupling;
pub mod dispersion;
pub mod error;
pub mod numerics;
pub mod output;
pub mod phonon;
pub mod photon;
pub mod sbs;
pub mod scalar;
pub mod special;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type Config = config::Config<f64>;
pub type Material = config::Material<f64>;
pub type Geometry = config::Geometry<f64>;
pub type PhotonSolver = photon::PhotonSolver<f64>;
pub type PhotonMode = photon::PhotonMode<f64>;
pub type PhononSolver = phonon::PhononSolver<f64>;
pub type PhononMode = phonon::PhononMode<f64>;
pub type DispersionCurve = dispersion::DispersionCurve<f64>;
pub type CouplingRecord = coupling::CouplingRecord<f64>;
pub type SbsProblem = sbs::SbsProblem<f64>;
