//! Eigenfunction expansions for Hermite, special-Hermite (Laguerre) and
//! compact rank-one symmetric space (Jacobi) settings, with the moment,
//! kernel and compact-support diagnostics built on them.

pub mod cli;
pub mod error;
pub mod expansion;
pub mod ingham;
pub mod kernels;
pub mod orthopoly;
pub mod quadrature;
pub mod scaled;
pub mod spaces;
pub mod summation;
pub mod uncertainty;

pub use error::{Error, Result};
pub use scaled::ScaledValue;
