//! Active noise control simulation and product-economics calculators.
//!
//! Two independent engines share this crate:
//!
//! * [`anc`] simulates a feed-forward noise canceller (reference pickup,
//!   adaptive anti-phase synthesis, residual feedback) and reports attenuation.
//! * [`econ`], [`costing`] and [`planning`] cover the business side: cash-flow
//!   models with NPV/IRR and sensitivity scenarios, bill-of-materials roll-ups,
//!   weighted concept scoring, market sizing and risk rating.
//!
//! [`cli`] wires all of them to JSON/CSV configuration files and reports.

pub mod anc;
pub mod cli;
pub mod costing;
pub mod econ;
pub mod error;
pub mod money;
pub mod planning;

pub use error::{Error, Result};
