use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::ir::{Circuit, Instruction, MeasureBasis};
use crate::layout::{ModeKind, DEFAULT_MEMORY_CEILING};
use crate::operators::LocalOperator;
use crate::rng::shot_rng;
use crate::state::HybridState;

use super::{apply_unchecked, measure};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeasuredValue {
    /// Qubit bit, Fock number or rotor angular momentum.
    Int(i64),
    /// Homodyne quadrature sample.
    Real(f64),
}

impl MeasuredValue {
    pub fn as_f64(&self) -> f64 {
        match *self {
            MeasuredValue::Int(v) => v as f64,
            MeasuredValue::Real(v) => v,
        }
    }
}

impl Serialize for MeasuredValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            MeasuredValue::Int(v) => s.serialize_i64(v),
            MeasuredValue::Real(v) => s.serialize_f64(v),
        }
    }
}

/// One measurement outcome, keyed by instruction index and mode.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasurementRecord {
    pub instr: usize,
    pub mode: usize,
    pub value: MeasuredValue,
}

/// Outcome of [`run`]. Records are ordered shot-major: all of shot 0 in
/// program order, then shot 1, and so on.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimResult {
    pub shots: usize,
    pub measurements: Vec<MeasurementRecord>,
    /// Per-mode observables of the final state, averaged over shots:
    /// `z(q)` for qubits, `n(m)` for qumodes, `l(r)` for rotors.
    pub expectations: BTreeMap<String, f64>,
    /// Squared norm of the last shot's final state.
    pub norm: f64,
    /// Final state of the last shot.
    #[serde(skip)]
    pub state: Option<HybridState>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOptions {
    pub shots: usize,
    pub seed: u64,
    /// Bytes the statevector may occupy.
    pub ceiling_bytes: u128,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { shots: 1, seed: 0, ceiling_bytes: DEFAULT_MEMORY_CEILING }
    }
}

/// Runs `circuit` for `shots` trajectories from the vacuum.
pub fn run(circuit: &Circuit, shots: usize, seed: u64) -> Result<SimResult> {
    run_with(circuit, &RunOptions { shots, seed, ..RunOptions::default() })
}

pub fn run_with(circuit: &Circuit, opts: &RunOptions) -> Result<SimResult> {
    let layout = circuit.layout()?;
    layout.check_capacity(opts.ceiling_bytes)?;
    let ops: Vec<Option<LocalOperator>> = circuit
        .instructions()
        .iter()
        .map(|i| match i {
            Instruction::Gate(g) => g.operator(&layout).map(Some),
            _ => Ok(None),
        })
        .collect::<Result<_>>()?;
    let stochastic = circuit
        .instructions()
        .iter()
        .any(|i| matches!(i, Instruction::Measure { .. } | Instruction::Reset { .. }));
    let shots = opts.shots.max(1);
    // without measurements every shot ends in the same state
    let simulated = if stochastic { shots } else { 1 };
    let mut measurements = Vec::new();
    let mut sums: BTreeMap<String, f64> = BTreeMap::new();
    let mut last = None;
    for shot in 0..simulated {
        let mut rng = shot_rng(opts.seed, shot as u64);
        let mut state = HybridState::vacuum(&layout)?;
        for (idx, instr) in circuit.instructions().iter().enumerate() {
            match instr {
                Instruction::Gate(g) => {
                    let op = ops[idx].as_ref().expect("gate operator compiled");
                    apply_unchecked(&mut state, &op.matrix, &g.targets, op.unitary);
                }
                Instruction::Measure { mode, basis } => {
                    let value = match basis {
                        MeasureBasis::Homodyne(angle) => {
                            MeasuredValue::Real(measure::measure_homodyne(&mut state, *mode, *angle, &mut rng)?)
                        }
                        _ => {
                            let digit = measure::measure_fock(&mut state, *mode, &mut rng)?;
                            MeasuredValue::Int(digit as i64 - layout.mode(*mode).offset())
                        }
                    };
                    measurements.push(MeasurementRecord { instr: idx, mode: *mode, value });
                }
                Instruction::Reset { mode } => measure::reset_mode(&mut state, *mode, &mut rng)?,
                Instruction::Barrier => {}
            }
        }
        for (k, v) in mode_observables(circuit, &state)? {
            *sums.entry(k).or_default() += v;
        }
        last = Some(state);
    }
    let state = last.expect("at least one shot");
    let expectations = sums.into_iter().map(|(k, v)| (k, v / simulated as f64)).collect();
    Ok(SimResult { shots, measurements, expectations, norm: state.squared_norm(), state: Some(state) })
}

fn mode_observables(circuit: &Circuit, state: &HybridState) -> Result<Vec<(String, f64)>> {
    let norm = state.computed_norm_sqr();
    let mut out = Vec::new();
    for (m, decl) in circuit.modes().iter().enumerate() {
        let p = state.marginal(m)?;
        let mean: f64 = p.iter().enumerate().map(|(k, pk)| k as f64 * pk).sum::<f64>() / norm;
        let (key, value) = match decl.kind {
            ModeKind::Qubit => (format!("z({})", decl.name), 1.0 - 2.0 * mean),
            ModeKind::Qumode { .. } => (format!("n({})", decl.name), mean),
            ModeKind::Rotor { l_max } => (format!("l({})", decl.name), mean - l_max as f64),
        };
        out.push((key, value));
    }
    Ok(out)
}

