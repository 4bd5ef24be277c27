use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::layout::ModeKind;
use crate::linalg::{C64, ZERO};
use crate::state::HybridState;
use crate::states::hermite_functions;

/// Homodyne grid size.
pub const HOMODYNE_POINTS: usize = 4096;

/// Off-grid mass above which homodyne sampling refuses to proceed.
const GRID_UNDERFLOW: f64 = 1e-6;

pub(crate) fn sample_index<R: Rng + ?Sized>(weights: &[f64], rng: &mut R) -> Result<usize> {
    let total: f64 = weights.iter().sum();
    if !(total > 0.0) || !total.is_finite() {
        return Err(Error::ZeroNormBranch);
    }
    let target = rng.random::<f64>() * total;
    let mut acc = 0.0;
    for (i, w) in weights.iter().enumerate() {
        acc += w;
        if target < acc {
            return Ok(i);
        }
    }
    Ok(weights.iter().rposition(|w| *w > 0.0).unwrap_or(0))
}

/// Born-samples the raw digit of `mode`, collapses and renormalizes.
/// Returns the digit (for rotors, the index `l + l_max`).
pub fn measure_fock<R: Rng + ?Sized>(state: &mut HybridState, mode: usize, rng: &mut R) -> Result<usize> {
    let p = state.marginal(mode)?;
    let k = sample_index(&p, rng)?;
    state.post_select(mode, k)?;
    state.normalize()?;
    Ok(k)
}

/// Trajectory reset: sample the mode's level, then move that branch to level 0.
pub fn reset_mode<R: Rng + ?Sized>(state: &mut HybridState, mode: usize, rng: &mut R) -> Result<()> {
    let k = measure_fock(state, mode, rng)?;
    if k == 0 {
        return Ok(());
    }
    let d = state.layout().mode(mode).dim();
    let stride = state.layout().strides()[mode];
    let amps = state.amplitudes_mut();
    for i in 0..amps.len() {
        if (i / stride) % d == k {
            amps[i - k * stride] = amps[i];
            amps[i] = ZERO;
        }
    }
    Ok(())
}

/// Grid `x_j` for a qumode of the given cutoff: `4096` points on `[−x_max, x_max]`,
/// `x_max = √(2·cutoff) + 4`.
pub fn homodyne_grid(cutoff: usize) -> Vec<f64> {
    let x_max = ((2 * cutoff) as f64).sqrt() + 4.0;
    let h = 2.0 * x_max / (HOMODYNE_POINTS - 1) as f64;
    (0..HOMODYNE_POINTS).map(|j| -x_max + j as f64 * h).collect()
}

thread_local! {
    static HERMITE_TABLES: RefCell<HashMap<usize, Rc<Vec<f64>>>> = RefCell::new(HashMap::new());
}

/// `ψ_n(x_j)` on the homodyne grid, row-major in `j`; computed once per cutoff and thread.
fn hermite_table(cutoff: usize, grid: &[f64]) -> Rc<Vec<f64>> {
    HERMITE_TABLES.with(|t| {
        t.borrow_mut()
            .entry(cutoff)
            .or_insert_with(|| Rc::new(grid.iter().flat_map(|&x| hermite_functions(cutoff, x)).collect()))
            .clone()
    })
}

/// Samples the rotated quadrature `x cos θ + p sin θ` of a qumode.
///
/// The reduced density of the mode is expanded in Hermite functions on the
/// homodyne grid, a grid point is drawn from the resulting density, and the
/// mode collapses onto the truncated quadrature eigenvector at that point.
pub fn measure_homodyne<R: Rng + ?Sized>(state: &mut HybridState, mode: usize, angle: f64, rng: &mut R) -> Result<f64> {
    state.check_mode(mode)?;
    let cutoff = match state.layout().mode(mode) {
        ModeKind::Qumode { cutoff } => cutoff,
        other => return Err(Error::TargetMismatch(format!("homodyne measurement on {other}"))),
    };
    let stride = state.layout().strides()[mode];
    let block = stride * cutoff;
    // Either the nonzero conditional branches of the mode, or its reduced
    // density when there are more branches than levels.
    let mut branches: Vec<Vec<C64>> = Vec::new();
    let amps = state.amplitudes();
    let n_rest = amps.len() / cutoff;
    if n_rest <= cutoff {
        for base in (0..amps.len()).step_by(block) {
            for low in 0..stride {
                let v: Vec<C64> = (0..cutoff).map(|n| amps[base + low + n * stride]).collect();
                if v.iter().any(|z| *z != ZERO) {
                    branches.push(v);
                }
            }
        }
    }
    let rho = if n_rest <= cutoff { None } else { Some(state.reduced_density(mode)?) };
    let trace = state.computed_norm_sqr();
    if !(trace > 0.0) {
        return Err(Error::ZeroNormBranch);
    }
    let grid = homodyne_grid(cutoff);
    let h = grid[1] - grid[0];
    // ⟨x_θ|n⟩ = e^{−inθ} ψ_n(x)
    let phases: Vec<C64> = (0..cutoff).map(|n| C64::from_polar(1.0, -(n as f64) * angle)).collect();
    let mut density = Vec::with_capacity(grid.len());
    let table = hermite_table(cutoff, &grid);
    let mut f = vec![ZERO; cutoff];
    for row in table.chunks_exact(cutoff) {
        for ((fi, hn), ph) in f.iter_mut().zip(row).zip(&phases) {
            *fi = ph * hn;
        }
        let p = match &rho {
            None => branches
                .iter()
                .map(|v| v.iter().zip(&f).map(|(c, fi)| c * fi).sum::<C64>().norm_sqr())
                .sum::<f64>(),
            // Σ_nm f_n ρ_nm f_m*
            Some(rho) => {
                let mut p = ZERO;
                for n in 0..cutoff {
                    if f[n] == ZERO {
                        continue;
                    }
                    let mut row = ZERO;
                    for m in 0..cutoff {
                        row += rho[(n, m)] * f[m].conj();
                    }
                    p += f[n] * row;
                }
                p.re
            }
        };
        density.push(p.max(0.0) * h);
    }
    let on_grid: f64 = density.iter().sum::<f64>() / trace;
    let missing = (1.0 - on_grid).abs();
    if missing > GRID_UNDERFLOW {
        return Err(Error::GridUnderflow(missing));
    }
    let j = sample_index(&density, rng)?;
    let x = grid[j];
    let hn = &table[j * cutoff..(j + 1) * cutoff];
    let bra: Vec<C64> = hn.iter().zip(&phases).map(|(h, p)| p * h).collect();
    let ket: Vec<C64> = bra.iter().map(|z| z.conj()).collect();
    let amps = state.amplitudes_mut();
    for base in (0..amps.len()).step_by(block) {
        for low in 0..stride {
            let off = base + low;
            let overlap: C64 = (0..cutoff).map(|n| bra[n] * amps[off + n * stride]).sum();
            for n in 0..cutoff {
                amps[off + n * stride] = overlap * ket[n];
            }
        }
    }
    state.normalize()?;
    Ok(x)
}
