//! Optimal insurance contracts with limited commitment over a finite
//! horizon.
//!
//! A risk-neutral principal insures a risk-averse agent whose income is a
//! geometric Brownian motion and who can walk away for the autarky value
//! at any time. The dual of the contracting problem reduces to an optimal
//! stopping problem; its free boundary `z*(t)` is solved from an integral
//! equation ([`boundary`]), value functions and the promised-value map
//! are evaluated from their integral representations ([`value`]), and the
//! optimal contract itself is the running-maximum ratchet recovered in
//! [`contract`]. An independent finite-difference solver for the
//! variational inequality ([`fd`]) and a battery of closed-form and Monte
//! Carlo checks ([`verify`]) cross-validate every piece.

pub mod boundary;
pub mod contract;
pub mod dist;
pub mod error;
pub mod fd;
pub mod model;
pub mod quad;
pub mod rng;
pub mod value;
pub mod verify;

pub use error::{Error, Result};
