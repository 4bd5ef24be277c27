//! Hybrid qubit/qumode/rotor statevector simulation.
//!
//! A [`RegisterLayout`] fixes the modes and their truncations, a
//! [`HybridState`] holds the amplitudes, and [`ir::Circuit`] programs run on
//! the [`engine`]. Model Hamiltonians live in [`hamiltonian`] and the
//! end-to-end protocols in [`algorithms`].

// `!(x > 0.0)` guards are written to reject NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algorithms;
pub mod demos;
pub mod engine;
pub mod error;
pub mod hamiltonian;
pub mod ir;
pub mod json;
pub mod layout;
pub mod linalg;
pub mod operators;
pub mod rng;
pub mod state;
pub mod states;

pub use error::{Error, Result};
pub use layout::{ModeKind, RegisterLayout};
pub use state::HybridState;

pub use engine::{run, SimResult};
pub use ir::Circuit;

/// Alias for [`RegisterLayout`].
pub type Layout = RegisterLayout;

/// Runs demo `name` with seed 0. See [`demos::run_demo`].
pub fn demos(name: &str, params: &serde_json::Value) -> Result<serde_json::Value> {
    demos::run_demo(name, params, 0)
}
