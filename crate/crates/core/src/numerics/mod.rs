//! Root finding, quadrature and ODE integration shared by the solvers.

pub mod ode;
pub mod quad;
pub mod roots;

pub use ode::{dopri5, StepControl};
pub use quad::{adaptive_simpson, gauss_legendre, gauss_legendre_rule, QuadValue};
pub use roots::{brent, linspace, scan_brackets, Bracket};
