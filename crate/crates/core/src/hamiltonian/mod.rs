//! Hamiltonian expressions and model builders.

mod expr;
mod fermion;
mod models;

pub use expr::{term, Block, HamiltonianExpr, Term, MAX_BLOCK_MODES};
pub use fermion::{cann, cdag, hopping, jordan_wigner, total_number, Ladder};
pub use models::{
    build_bose_hubbard, build_holstein, build_ivr_cubic, build_lvc_two_mode, build_peierls, build_qhd,
    build_spin_boson, build_tavis_cummings, oscillators, position, qhd_kinetic_coefficient, quadrature_power,
    Bath, Boundary, Interaction, LvcParams, QhdBuilder, QhdPotential, SpectralDensity, SpinBosonSpec,
    BATH_QUADRATURE_TOL,
};
