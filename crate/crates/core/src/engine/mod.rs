//! Gate application, circuit execution, measurement and time evolution.

pub(crate) mod kernel;
mod measure;
mod run;

use std::f64::consts::PI;

use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::hamiltonian::HamiltonianExpr;
use crate::linalg::{self, C64};
use crate::operators::{LocalOperator, OperatorMatrix};
use crate::state::HybridState;
use kernel::Targets;

pub use measure::{homodyne_grid, measure_fock, measure_homodyne, reset_mode, HOMODYNE_POINTS};
pub(crate) use measure::sample_index;
pub use run::{run, run_with, MeasurementRecord, MeasuredValue, RunOptions, SimResult};

/// Tolerance on the imaginary part of an expectation value of a Hermitian expression.
pub const IMAGINARY_TOL: f64 = 1e-10;

/// Applies `op` to `targets` (slot order) in place.
pub fn apply_gate(state: &mut HybridState, op: &LocalOperator, targets: &[usize]) -> Result<()> {
    let layout = state.layout().clone();
    for (i, &t) in targets.iter().enumerate() {
        state.check_mode(t)?;
        if targets[..i].contains(&t) {
            return Err(Error::TargetMismatch(format!("mode {t} targeted twice")));
        }
    }
    let kinds: Vec<_> = targets.iter().map(|&t| layout.mode(t)).collect();
    op.check_targets(&kinds)?;
    apply_unchecked(state, &op.matrix, targets, op.unitary);
    Ok(())
}

pub(crate) fn apply_unchecked(state: &mut HybridState, matrix: &OperatorMatrix, targets: &[usize], unitary: bool) {
    let tg = Targets::new(state.layout(), targets);
    kernel::apply(state.amplitudes_mut(), &tg, matrix);
    if !unitary {
        let n = state.computed_norm_sqr();
        state.set_squared_norm(n);
    }
}

/// `⟨ψ|H|ψ⟩/⟨ψ|ψ⟩` for a Hermitian `H`.
pub fn expectation(state: &HybridState, h: &HamiltonianExpr) -> Result<f64> {
    h.check_hermitian(state.layout())?;
    let e = h.expectation_complex(state)?;
    if e.im.abs() > IMAGINARY_TOL * e.re.abs().max(1.0) {
        return Err(Error::NotHermitian(e.im.abs()));
    }
    Ok(e.re)
}

/// Block exponentials for one symmetric Trotter step of length `dt`:
/// `half[k] = e^{−i B_k dt/2}` and `full = e^{−i B_last dt}`.
struct TrotterStep {
    modes: Vec<Vec<usize>>,
    half: Vec<OperatorMatrix>,
    full_last: Option<OperatorMatrix>,
    phase: C64,
}

fn block_exponential(block: &crate::hamiltonian::Block, t: f64) -> OperatorMatrix {
    if block.diagonal {
        let d = (0..block.matrix.nrows()).map(|i| (block.matrix[(i, i)] * C64::new(0.0, -t)).exp()).collect();
        OperatorMatrix::Diagonal(d)
    } else {
        OperatorMatrix::Dense(linalg::evolution(&block.matrix, t))
    }
}

impl TrotterStep {
    fn new(state: &HybridState, h: &HamiltonianExpr, dt: f64) -> Result<Self> {
        h.check_hermitian(state.layout())?;
        let blocks = h.blocks(state.layout())?;
        let half = blocks.iter().map(|b| block_exponential(b, dt / 2.0)).collect();
        let full_last = blocks.last().map(|b| block_exponential(b, dt));
        let phase = (h.constant() * C64::new(0.0, -dt)).exp();
        Ok(TrotterStep { modes: blocks.into_iter().map(|b| b.modes).collect(), half, full_last, phase })
    }

    /// `e^{−iB_1 dt/2} ⋯ e^{−iB_{m−1} dt/2} e^{−iB_m dt} e^{−iB_{m−1} dt/2} ⋯ e^{−iB_1 dt/2}`
    fn apply(&self, state: &mut HybridState) {
        let m = self.modes.len();
        if m == 0 {
            self.apply_phase(state);
            return;
        }
        for k in (0..m - 1).rev() {
            apply_unchecked(state, &self.half[k], &self.modes[k], true);
        }
        apply_unchecked(state, self.full_last.as_ref().expect("non-empty"), &self.modes[m - 1], true);
        for k in 0..m - 1 {
            apply_unchecked(state, &self.half[k], &self.modes[k], true);
        }
        self.apply_phase(state);
    }

    fn apply_phase(&self, state: &mut HybridState) {
        if (self.phase - linalg::ONE).norm() > 0.0 {
            for a in state.amplitudes_mut() {
                *a *= self.phase;
            }
        }
    }
}

/// Second-order (symmetric) Trotter evolution under `h` for time `t`.
///
/// Terms are merged into local blocks (see [`HamiltonianExpr::blocks`]), each
/// exponentiated densely on its at most three modes.
pub fn evolve_trotter(state: &mut HybridState, h: &HamiltonianExpr, t: f64, steps: usize) -> Result<()> {
    if steps == 0 {
        return Err(Error::InvalidParameter("Trotter steps must be >= 1".into()));
    }
    let step = TrotterStep::new(state, h, t / steps as f64)?;
    for _ in 0..steps {
        step.apply(state);
    }
    Ok(())
}

/// Midpoint-rule evolution under `builder(t)`: step `k` applies one symmetric
/// Trotter step of `H((k+½)Δt)`.
pub fn evolve_time_dependent<F>(state: &mut HybridState, builder: F, t_final: f64, steps: usize) -> Result<()>
where
    F: Fn(f64) -> Result<HamiltonianExpr>,
{
    if steps == 0 {
        return Err(Error::InvalidParameter("steps must be >= 1".into()));
    }
    let dt = t_final / steps as f64;
    for k in 0..steps {
        let h = builder((k as f64 + 0.5) * dt)?;
        TrotterStep::new(state, &h, dt)?.apply(state);
    }
    Ok(())
}

/// `C(t) = ⟨ψ|U†(t) A U(t) B|ψ⟩` for a pure state, with `U` from [`evolve_trotter`].
pub fn two_time_correlation(
    state: &HybridState,
    h: &HamiltonianExpr,
    a: &HamiltonianExpr,
    b: &HamiltonianExpr,
    t: f64,
    steps: usize,
) -> Result<C64> {
    let mut phi1 = b.apply(state)?;
    let mut phi2 = state.clone();
    evolve_trotter(&mut phi1, h, t, steps)?;
    evolve_trotter(&mut phi2, h, t, steps)?;
    let a_phi1 = a.apply(&phi1)?;
    phi2.inner_product(&a_phi1)
}

/// `Re σ(ω_k)` from uniformly sampled `C(t_j)`, `t_j = j·dt`, damped by `e^{−ηt}`.
///
/// Returns `(ω, Re σ)` with `σ(ω) = dt Σ_j C(t_j) e^{−ηt_j} e^{iωt_j}` on the
/// FFT grid `ω_k = 2πk/(n·dt)`, shifted to ascending order over `[−π/dt, π/dt)`.
pub fn correlation_spectrum(samples: &[C64], dt: f64, eta: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = samples.len();
    if n < 4 {
        return Err(Error::InvalidParameter(format!("need at least 4 correlation samples, got {n}")));
    }
    if !(eta > 0.0) || !(dt > 0.0) {
        return Err(Error::InvalidParameter("damping and time step must be positive".into()));
    }
    let mut buf: Vec<C64> = samples
        .iter()
        .enumerate()
        .map(|(j, c)| c * (-eta * j as f64 * dt).exp())
        .collect();
    // e^{+iωt} kernel is the inverse transform
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    let mut omega = Vec::with_capacity(n);
    let mut spec = Vec::with_capacity(n);
    for s in 0..n {
        let q = s as i64 - (n / 2) as i64;
        let k = q.rem_euclid(n as i64) as usize;
        omega.push(2.0 * PI * q as f64 / (n as f64 * dt));
        spec.push(buf[k].re * dt);
    }
    Ok((omega, spec))
}

/// `|⟨ψ0|e^{−iHt}|ψ0⟩|²` via Trotter evolution.
pub fn survival_probability(psi0: &HybridState, h: &HamiltonianExpr, t: f64, steps: usize) -> Result<f64> {
    let mut psi = psi0.clone();
    evolve_trotter(&mut psi, h, t, steps)?;
    Ok(psi0.inner_product(&psi)?.norm_sqr())
}
