//! Born-Infeld electrostatics of a proton-electron pair on the line through
//! the charges.
//!
//! The crate evaluates the two inequivalent line-integral definitions of the
//! axial potential, shows that neither vanishes at both ends of the axis, and
//! measures what the difference does to the bound-state spectrum of the
//! resulting effective Schroedinger potentials.
//!
//! Modules, bottom-up:
//!
//! * [`quadrature`]: adaptive Gauss-Kronrod integration, finite and
//!   semi-infinite;
//! * [`specfun`]: Gamma / Beta functions and the constant `C = B(1/4, 1/4)`;
//! * [`field`]: the Born-Infeld map, the two-charge Coulomb field, the
//!   substituted axial integrands and a finite-difference curl probe;
//! * [`axial`]: the `def1` / `def2` potentials, their asymptotics and the
//!   effective-potential curves;
//! * [`spectrum`]: radial bound states by node-counting bisection and
//!   Numerov shooting on a logarithmic mesh.
//!
//! All computations are pure functions of their inputs. Parallel sweeps use
//! rayon and keep results in input order, so outputs are bitwise identical
//! for any pool size.

pub mod axial;
pub mod field;
pub mod quadrature;
pub mod specfun;
pub mod spectrum;

pub use axial::{AxialPotentials, PotentialError, PotentialKind, PotentialSample};
pub use field::{AxialConfig, FieldError, FieldVector, Point3};
pub use quadrature::{QuadratureError, QuadratureResult, Tolerance};
pub use specfun::{born_constant, DomainError};
pub use spectrum::{EigenLevel, Potential, PotentialTable, RadialProblem, SpectrumError};
