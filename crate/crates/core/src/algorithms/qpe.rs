//! Phase estimation with a quantum rotor as the phase register.

use std::f64::consts::PI;

use serde::Serialize;

use crate::engine::{self, apply_gate};
use crate::error::{Error, Result};
use crate::layout::{ModeKind, RegisterLayout};
use crate::linalg::{self, CMatrix, C64, ZERO};
use crate::operators::{fock_dft, LocalOperator, TargetKind};
use crate::rng::shot_rng;
use crate::state::HybridState;

/// Eigenvector residual tolerance for the supplied eigenstate.
pub const EIGEN_TOL: f64 = 1e-8;

/// Amplitude profile of the rotor's approximate phase state over `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Window {
    /// `e^{−l²/(2W²)}` with `W = l_max/4`.
    #[default]
    Gaussian,
    Uniform,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QpeResult {
    /// Circular mean of the sampled phases, in `(−π, π]`.
    pub theta: f64,
    pub samples: Vec<f64>,
    /// Phase-bin width `2π/(2l_max+1)`.
    pub bin_width: f64,
    /// Largest single-bin probability of the readout distribution.
    pub peak_probability: f64,
}

/// `(θ + π) mod 2π − π`, mapped into `(−π, π]`.
pub fn wrap_phase(theta: f64) -> f64 {
    let w = (theta + PI).rem_euclid(2.0 * PI) - PI;
    if w <= -PI { w + 2.0 * PI } else { w }
}

/// `|a − b|` on the circle.
pub fn phase_distance(a: f64, b: f64) -> f64 {
    wrap_phase(a - b).abs()
}

fn matrix_power(u: &CMatrix, mut k: usize) -> CMatrix {
    let mut base = u.clone();
    let mut acc = linalg::identity(u.nrows());
    while k > 0 {
        if k & 1 == 1 {
            acc = &acc * &base;
        }
        k >>= 1;
        if k > 0 {
            base = &base * &base;
        }
    }
    acc
}

/// Estimates the eigenphase `θ` of `U|ψ⟩ = e^{iθ}|ψ⟩`.
///
/// The rotor starts in a windowed phase state at `θ₀ = 0`, the oracle
/// `Σ_l |l⟩⟨l| ⊗ U^l` shifts it to `θ`, and each shot reads the rotor in the
/// phase basis (inverse DFT over the `2l_max+1` levels). `U` acts on qubits.
pub fn rotor_qpe(u: &CMatrix, eigenstate: &[C64], l_max: usize, window: Window, shots: usize, seed: u64) -> Result<QpeResult> {
    let dim = u.nrows();
    if u.ncols() != dim || dim < 2 || !dim.is_power_of_two() {
        return Err(Error::InvalidParameter(format!("U must be square on qubits, got {}x{}", dim, u.ncols())));
    }
    let res = linalg::unitarity_residual(u);
    if res > crate::operators::UNITARY_TOL {
        return Err(Error::NotUnitary(res));
    }
    if eigenstate.len() != dim {
        return Err(Error::LayoutMismatch(format!("eigenstate has {} entries for a {dim}-dim U", eigenstate.len())));
    }
    if l_max < 4 {
        return Err(Error::Precondition(format!("l_max = {l_max} resolves phases no finer than 2π/9; need l_max ≥ 4")));
    }
    if shots == 0 {
        return Err(Error::InvalidParameter("shots must be positive".into()));
    }
    let norm = linalg::norm_sqr(eigenstate).sqrt();
    if !(norm > 0.0) {
        return Err(Error::ZeroNormBranch);
    }
    let psi: Vec<C64> = eigenstate.iter().map(|z| z / norm).collect();
    let u_psi = linalg::matvec(u, &psi);
    let lambda = linalg::inner(&psi, &u_psi);
    let residual = u_psi.iter().zip(&psi).map(|(a, b)| (a - lambda * b).norm_sqr()).sum::<f64>().sqrt();
    if residual > EIGEN_TOL {
        return Err(Error::Precondition(format!("input is not an eigenstate of U (residual {residual:.2e})")));
    }

    let n_qubits = dim.trailing_zeros() as usize;
    let d = 2 * l_max + 1;
    let mut modes = vec![ModeKind::rotor(l_max)];
    modes.extend(std::iter::repeat_n(ModeKind::Qubit, n_qubits));
    let layout = RegisterLayout::new(modes)?;

    let width = l_max as f64 / 4.0;
    let window_amp: Vec<f64> = (0..d)
        .map(|j| {
            let l = j as f64 - l_max as f64;
            match window {
                Window::Gaussian => (-l * l / (2.0 * width * width)).exp(),
                Window::Uniform => 1.0,
            }
        })
        .collect();
    let mut amps = vec![ZERO; d * dim];
    for (j, w) in window_amp.iter().enumerate() {
        for (k, p) in psi.iter().enumerate() {
            amps[j * dim + k] = p * *w;
        }
    }
    let mut state = HybridState::from_amplitudes(&layout, amps)?;
    state.normalize()?;

    let u_inv = u.adjoint();
    let blocks: Vec<CMatrix> = (0..d)
        .map(|j| {
            let l = j as i64 - l_max as i64;
            if l >= 0 { matrix_power(u, l as usize) } else { matrix_power(&u_inv, (-l) as usize) }
        })
        .collect();
    let mut targets = vec![(TargetKind::Rotor, d)];
    targets.extend(std::iter::repeat_n((TargetKind::Qubit, 2), n_qubits));
    let oracle = LocalOperator::controlled("oracle", targets, blocks)?;
    let all: Vec<usize> = (0..=n_qubits).collect();
    apply_gate(&mut state, &oracle, &all)?;
    apply_gate(&mut state, &fock_dft(d)?.adjoint(), &[0])?;

    let p = state.marginal(0)?;
    let bin_width = 2.0 * PI / d as f64;
    let mut samples = Vec::with_capacity(shots);
    let mut sum = C64::new(0.0, 0.0);
    for shot in 0..shots {
        let k = engine::sample_index(&p, &mut shot_rng(seed, shot as u64))?;
        let phi = wrap_phase(k as f64 * bin_width);
        sum += C64::from_polar(1.0, phi);
        samples.push(phi);
    }
    Ok(QpeResult {
        theta: wrap_phase(sum.arg()),
        samples,
        bin_width,
        peak_probability: p.iter().cloned().fold(0.0, f64::max),
    })
}
