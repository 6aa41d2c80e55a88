//! Exact construction and verification of Z2^n-graded supersymmetric quantum
//! mechanics models built from Clifford algebras.

pub mod arith;
pub mod cli;
pub mod clifford;
pub mod error;
pub mod grading;
pub mod models;
pub mod sqm;
pub mod verify;

pub use error::{Error, Result};
