//! Time-optimal control of spinor states.
//!
//! The crate builds the generator algebras of su(2), su(3) and su(4), integrates
//! the quantum brachistochrone flow on a Hamiltonian/constraint split, evaluates
//! the closed-form time-optimal Hamiltonians and propagators, and checks all of
//! them against an independent step-product propagator.
//!
//! Module map:
//! - [`matrix`]: dense complex operators, brackets, exponentials
//! - [`generators`]: labeled bases, trace projection, Dirac operators
//! - [`brachistochrone`]: the projected Heisenberg flow and its RK4 integrator
//! - [`closedforms`]: explicit Hamiltonian/propagator families
//! - [`oracle`]: time-ordered exponentials and state diagnostics
//! - [`audit`]: identity-by-identity numerical report
//! - [`cli`]: the `spinctl` front end

pub mod audit;
pub mod brachistochrone;
pub mod cli;
pub mod closedforms;
pub mod error;
pub mod generators;
pub mod matrix;
pub mod oracle;

pub use error::{Error, Result};
pub use generators::{build_basis, GeneratorBasis, Group};
pub use matrix::{ComplexScalar, Operator};
