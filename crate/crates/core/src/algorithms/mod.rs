//! End-to-end protocols built on the engine.

mod lchs;
mod optimize;
mod qhd;
mod qpe;
mod qubo;
mod shor;
mod vqa;

pub use lchs::{lchs_kernel, lchs_solve, prepare_ancilla, LchsKernel, LchsMode, LchsResult, LchsSpec, Preparation, DENSE_LIMIT};
pub use optimize::{nelder_mead, Minimum};
pub use qhd::{qhd_minimize, QhdResult, BIN_WIDTH, LEAKAGE_TOL};
pub use qpe::{phase_distance, rotor_qpe, wrap_phase, QpeResult, Window, EIGEN_TOL};
pub use qubo::{fock_partition_encode, index_bits, partitions_without_ones, qubo_to_ising, FockEncoding, FockPartition, IsingProblem, QuboProblem};
pub use shor::{cvdv_shor_period, default_delta, default_grid, gcd, period_candidates, pow_mod, shor_factor, FactorResult, PeriodResult};
pub use vqa::{vqa_optimize, Encoding, VqaResult, MAX_VARIABLES, READOUT_SHOTS};
