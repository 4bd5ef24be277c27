//! Quantum Hamiltonian descent on qumodes.

use serde::Serialize;

use crate::engine::{evolve_time_dependent, measure_homodyne};
use crate::error::{Error, Result};
use crate::hamiltonian::{build_qhd, QhdPotential};
use crate::rng::shot_rng;
use crate::state::HybridState;

/// Weight allowed in the top two Fock levels of any mode.
pub const LEAKAGE_TOL: f64 = 1e-3;

/// Histogram bin width for the homodyne sample mode.
pub const BIN_WIDTH: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QhdResult {
    /// `⟨x̂_j⟩` of the final state.
    pub mean_x: Vec<f64>,
    /// Centre of the most populated homodyne bin, per mode.
    pub sample_mode: Vec<f64>,
    pub samples: Vec<Vec<f64>>,
    /// Largest top-two-level weight over the modes.
    pub leakage: f64,
}

fn histogram_mode(samples: &[f64]) -> f64 {
    let mut counts: std::collections::BTreeMap<i64, usize> = std::collections::BTreeMap::new();
    for &x in samples {
        *counts.entry((x / BIN_WIDTH).round() as i64).or_default() += 1;
    }
    // ties go to the bin nearest the origin
    let best = counts.iter().max_by(|a, b| a.1.cmp(b.1).then(b.0.abs().cmp(&a.0.abs()))).map(|(k, _)| *k).unwrap_or(0);
    best as f64 * BIN_WIDTH
}

/// Evolves the vacuum under `H(t) = Σ p̂²/(2(1+t²)) + V(x̂)` to `t_final`
/// with `steps` midpoint steps, then reports `⟨x̂⟩` and `shots` homodyne samples.
pub fn qhd_minimize(potential: &QhdPotential, cutoff: usize, t_final: f64, steps: usize, shots: usize, seed: u64) -> Result<QhdResult> {
    let builder = build_qhd(potential, cutoff)?;
    if let Some(w) = builder.warnings().first() {
        return Err(Error::Precondition(w.clone()));
    }
    if !(t_final > 0.0) || shots == 0 {
        return Err(Error::InvalidParameter(format!("T = {t_final}, shots = {shots}")));
    }
    let layout = builder.layout()?;
    let mut state = HybridState::vacuum(&layout)?;
    evolve_time_dependent(&mut state, |t| builder.at(t), t_final, steps)?;

    let n = builder.n_modes();
    let mut leakage: f64 = 0.0;
    for m in 0..n {
        let p = state.marginal(m)?;
        leakage = leakage.max(p[cutoff - 2] + p[cutoff - 1]);
    }
    if leakage > LEAKAGE_TOL {
        return Err(Error::InsufficientCutoff {
            cutoff,
            detail: format!("{leakage:.2e} of the norm reached the top two Fock levels"),
        });
    }
    let (x, _) = crate::operators::quadratures(cutoff);
    let mut mean_x = Vec::with_capacity(n);
    for m in 0..n {
        let h = crate::hamiltonian::term(1.0, vec![(m, x.clone())])?;
        mean_x.push(crate::engine::expectation(&state, &h)?);
    }
    let mut samples = vec![Vec::with_capacity(shots); n];
    for shot in 0..shots {
        let mut rng = shot_rng(seed, shot as u64);
        let mut s = state.clone();
        for (m, out) in samples.iter_mut().enumerate() {
            out.push(measure_homodyne(&mut s, m, 0.0, &mut rng)?);
        }
    }
    let sample_mode = samples.iter().map(|s| histogram_mode(s)).collect();
    Ok(QhdResult { mean_x, sample_mode, samples, leakage })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn histogram_mode_picks_densest_bin() {
        assert!((histogram_mode(&[0.98, 1.02, 1.01, -1.0, 0.3]) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn harmonic_well_stays_centred() {
        let pot = QhdPotential { n_modes: 1, quadratic: vec![(0, 0, 1.0)], ..Default::default() };
        let r = qhd_minimize(&pot, 24, 3.0, 60, 100, 1).unwrap();
        assert!(r.mean_x[0].abs() < 1e-10);
        assert!(r.sample_mode[0].abs() <= 0.5);
    }

    #[test]
    fn unbounded_potential_rejected() {
        let pot = QhdPotential { n_modes: 1, quadratic: vec![(0, 0, -1.0)], ..Default::default() };
        assert!(qhd_minimize(&pot, 16, 1.0, 10, 10, 0).is_err());
    }
}
