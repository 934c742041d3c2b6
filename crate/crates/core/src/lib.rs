//! Entanglement of the four-qubit fermionic W state as seen by uniformly
//! accelerated observers.
//!
//! The pipeline is: build `|W⟩` ([`fock::w_state`]), map each accelerated
//! observer's mode onto Rindler regions I and II ([`rindler::apply_rindler`]),
//! trace out the inaccessible region-II modes ([`rindler::observed_density`]),
//! then measure ([`measures`]). The [`oracle`] module holds closed-form
//! expressions for the same quantities, and [`check`] compares the two.
//!
//! ```
//! use wtangle::{fock::w_state, rindler::{observed_density, Scenario}, measures::TangleReport};
//!
//! let w = w_state(4)?;
//! let rho = observed_density(&w, &Scenario::from_r(&[("D", 0.3)])?)?;
//! let report = TangleReport::compute(&rho, vec![("D".into(), 0.3)])?;
//! assert!(report.pi4 >= report.big_pi4);
//! # Ok::<(), wtangle::Error>(())
//! ```

pub mod check;
pub mod dump;
pub mod error;
pub mod fock;
pub mod matrix;
pub mod measures;
pub mod oracle;
pub mod rindler;
pub mod sweep;

pub use error::{Error, Result};
