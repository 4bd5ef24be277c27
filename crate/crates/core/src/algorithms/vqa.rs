//! Variational minimization of Ising problems on qubits or Fock encodings.

use std::f64::consts::PI;

use rand::Rng;
use serde::Serialize;

use super::optimize::nelder_mead;
use super::qubo::{fock_partition_encode, index_bits, FockPartition, IsingProblem};
use crate::engine::{apply_gate, sample_index};
use crate::error::{Error, Result};
use crate::layout::{ModeKind, RegisterLayout};
use crate::operators::{cnot, cross_kerr, fock_dft, kerr, phase_rotation, qubit_rotation};
use crate::rng::shot_rng;
use crate::state::HybridState;

pub const MAX_VARIABLES: usize = 16;

/// Shots drawn from the optimized state when picking the reported assignment.
pub const READOUT_SHOTS: usize = 256;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Encoding {
    Qubits,
    Fock(FockPartition),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VqaResult {
    /// Lowest-energy bit string among the readout samples.
    pub assignment: Vec<u8>,
    pub energy: f64,
    /// Best ansatz cost `⟨H⟩` seen by the optimizer.
    pub cost: f64,
    pub evaluations: usize,
    pub converged: bool,
    /// False when the optimizer never improved on its starting point.
    pub improved: bool,
}

struct Ansatz {
    layout: RegisterLayout,
    encoding: Encoding,
    depth: usize,
}

impl Ansatz {
    fn n_params(&self) -> usize {
        let m = self.layout.num_modes();
        match self.encoding {
            Encoding::Qubits => m * (self.depth + 1),
            Encoding::Fock(_) => self.depth * (4 * m + m.saturating_sub(1)),
        }
    }

    /// Qubits: `Ry` layer, CX ladder, repeated, closed by a final `Ry` layer.
    /// Fock: uniform superposition by `F`, then per layer `F† D(θ,χ) F`,
    /// Fock-diagonal rotation and Kerr phases, and cross-Kerr between
    /// neighbouring modes.
    fn state(&self, params: &[f64]) -> Result<HybridState> {
        let mut s = HybridState::vacuum(&self.layout)?;
        let m = self.layout.num_modes();
        let mut p = params.iter().copied();
        match self.encoding {
            Encoding::Qubits => {
                for layer in 0..=self.depth {
                    for q in 0..m {
                        apply_gate(&mut s, &qubit_rotation('y', p.next().unwrap()), &[q])?;
                    }
                    if layer < self.depth {
                        for q in 0..m.saturating_sub(1) {
                            apply_gate(&mut s, &cnot(), &[q, q + 1])?;
                        }
                    }
                }
            }
            Encoding::Fock(_) => {
                let dims = self.layout.dims();
                let dfts = dims.iter().map(|&d| fock_dft(d)).collect::<Result<Vec<_>>>()?;
                for (q, f) in dfts.iter().enumerate() {
                    apply_gate(&mut s, f, &[q])?;
                }
                for _ in 0..self.depth {
                    for (q, &d) in dims.iter().enumerate() {
                        let (theta, chi, phi, xi) = (p.next().unwrap(), p.next().unwrap(), p.next().unwrap(), p.next().unwrap());
                        apply_gate(&mut s, &dfts[q], &[q])?;
                        apply_gate(&mut s, &phase_rotation(theta, d), &[q])?;
                        apply_gate(&mut s, &kerr(chi, d), &[q])?;
                        apply_gate(&mut s, &dfts[q].adjoint(), &[q])?;
                        apply_gate(&mut s, &phase_rotation(phi, d), &[q])?;
                        apply_gate(&mut s, &kerr(xi, d), &[q])?;
                    }
                    for q in 0..m.saturating_sub(1) {
                        apply_gate(&mut s, &cross_kerr(p.next().unwrap(), dims[q], dims[q + 1]), &[q, q + 1])?;
                    }
                }
            }
        }
        Ok(s)
    }
}

/// Minimizes `⟨H_Ising⟩` over the ansatz with Nelder–Mead using at most
/// `budget` cost evaluations, then samples the optimized state and returns
/// the best sampled basis state.
pub fn vqa_optimize(problem: &IsingProblem, encoding: &Encoding, depth: usize, budget: usize, seed: u64) -> Result<VqaResult> {
    let n = problem.n();
    if n == 0 || n > MAX_VARIABLES {
        return Err(Error::InvalidParameter(format!("{n} variables; supported range is 1..={MAX_VARIABLES}")));
    }
    if budget == 0 {
        return Err(Error::InvalidParameter("budget must be positive".into()));
    }
    if problem.j.iter().any(|&(a, b, _)| a >= n || b >= n || a == b) {
        return Err(Error::InvalidParameter("coupling index out of range".into()));
    }
    let (layout, diag) = match encoding {
        Encoding::Qubits => (RegisterLayout::new(vec![ModeKind::Qubit; n])?, problem.diagonal()),
        Encoding::Fock(part) => {
            let enc = fock_partition_encode(n, part)?;
            let diag = enc.diagonal(problem)?;
            (enc.layout, diag)
        }
    };
    let ansatz = Ansatz { layout, encoding: encoding.clone(), depth: depth.max(1) };
    let mut init_rng = shot_rng(seed, 0);
    let x0: Vec<f64> = (0..ansatz.n_params()).map(|_| init_rng.random_range(0.0..2.0 * PI)).collect();

    let cost = |params: &[f64]| -> f64 {
        match ansatz.state(params) {
            Ok(s) => s.probabilities().iter().zip(&diag).map(|(p, e)| p * e).sum(),
            Err(_) => f64::INFINITY,
        }
    };
    let initial = cost(&x0);
    let best = if budget > 1 { nelder_mead(cost, &x0, 1.0, budget - 1, 1e-9) } else { super::optimize::Minimum { x: x0.clone(), value: initial, evaluations: 0, converged: false } };
    let evaluations = best.evaluations + 1;

    let probs = ansatz.state(&best.x)?.probabilities();
    let mut pick = None::<(usize, f64)>;
    for shot in 0..READOUT_SHOTS {
        let idx = sample_index(&probs, &mut shot_rng(seed, 1 + shot as u64))?;
        if pick.is_none_or(|(_, e)| diag[idx] < e) {
            pick = Some((idx, diag[idx]));
        }
    }
    let (idx, energy) = pick.expect("at least one readout");
    let assignment = match encoding {
        Encoding::Qubits => index_bits(idx, n),
        Encoding::Fock(part) => fock_partition_encode(n, part)?.coords_to_bits(&ansatz.layout.digits_of(idx))?,
    };
    Ok(VqaResult {
        assignment,
        energy,
        cost: best.value.min(initial),
        evaluations,
        converged: best.converged,
        improved: best.value < initial,
    })
}

#[cfg(test)]
mod tests {
    use super::super::qubo::{qubo_to_ising, QuboProblem};
    use super::*;

    #[test]
    fn single_variable_in_three_evaluations() {
        let p = IsingProblem { h: vec![1.0], j: vec![], offset: 0.0 };
        let r = vqa_optimize(&p, &Encoding::Qubits, 1, 3, 2).unwrap();
        assert!(r.evaluations <= 3);
        assert_eq!(r.assignment, vec![0]);
        assert_eq!(r.energy, -1.0);
    }

    #[test]
    fn fock_encoding_finds_triangle_cut() {
        let q = QuboProblem::maxcut(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let ising = qubo_to_ising(&q);
        let enc = Encoding::Fock(FockPartition::new(vec![3]).unwrap());
        let r = vqa_optimize(&ising, &enc, 1, 200, 5).unwrap();
        assert_eq!(q.value(&r.assignment), -2.0);
    }

    #[test]
    fn rejects_oversized() {
        let p = IsingProblem { h: vec![0.0; 17], j: vec![], offset: 0.0 };
        assert!(vqa_optimize(&p, &Encoding::Qubits, 1, 10, 0).is_err());
    }
}
