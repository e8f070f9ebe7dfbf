//! Average achievable data rate (AADR) of a ground-control-station to UAV
//! control link under short-packet transmission.
//!
//! Three estimators are provided and cross-check each other:
//!
//! * [`montecarlo`]: seeded averaging over random UAV positions,
//! * [`quadrature`]: nested Gauss-Legendre evaluation of the double integral,
//! * [`bound`]: a closed-form Jensen lower bound built on `E[1/SNR]`.
//!
//! The channel is the elevation-dependent air-to-ground model in [`channel`],
//! and the per-position rate is the normal approximation in [`fbl_rate`].

// `!(x >= 0.0)` is used deliberately so NaN falls into the rejection branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bound;
pub mod channel;
pub mod cli;
pub mod error;
pub mod fbl_rate;
pub mod geometry;
pub mod montecarlo;
pub mod quadrature;

pub use error::{Error, Result};
