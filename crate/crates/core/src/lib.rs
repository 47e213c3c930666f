//! Verification and simulation toolkit for generalized Maxwell and Weyl
//! equations of massless particles.
//!
//! * [`clinalg`]: small dense complex linear algebra
//! * [`reps`]: Pauli, spin-1, gamma matrices and Pauli-Lubanski operators
//! * [`identities`]: randomized residual checks of the operator identities
//! * [`dispersion`]: momentum-space operators, spectra and solution spinors
//! * [`polarization`]: (1/2,1/2) polarization vectors, Proca and Weinberg checks
//! * [`fieldsim`]: time-domain evolution of the chi-coupled Maxwell system
//!
//! Units are natural (`c = hbar = 1`) unless a `c` parameter says otherwise.

pub mod clinalg;
pub mod dispersion;
pub mod error;
pub mod fieldsim;
pub mod identities;
pub mod polarization;
pub mod reps;
pub mod sampling;

pub use error::{Error, Result};
