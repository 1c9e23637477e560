//! Obstructions to genus-3 hyperelliptic Jacobians in isogeny classes of
//! abelian threefolds over finite fields.
//!
//! The crate is organized bottom-up: [`weil`] computes exact invariants of a
//! Weil polynomial, [`rules`] evaluates the obstruction catalog on them,
//! [`lmfdb`] ingests isogeny-class data and audits the rules, [`enumeration`]
//! walks every Weil polynomial of a field, and [`stats`] / [`asymptotics`]
//! aggregate the results.

pub mod asymptotics;
pub mod enumeration;
pub mod error;
pub mod lmfdb;
pub mod numeric;
pub mod rules;
pub mod stats;
pub mod weil;

pub use error::{Error, Result};
