//! Jordan–Wigner mapping of fermionic ladder products onto qubits.
//!
//! Site `j` is stored on qubit `modes[j]`; occupied is `|1⟩`. With
//! `Z = diag(1, −1)` the mapping is `c†_j = Z_0 ⋯ Z_{j−1} σ⁺_j`, so
//! `c†_j c_j = (I − Z_j)/2`. Sites are ordered site-major, spin-minor when a
//! model carries spin.

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, C64, ONE, ZERO};
use crate::operators::{pauli_z, qubit, sigma_plus, LocalOperator};

use super::HamiltonianExpr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ladder {
    Create,
    Annihilate,
}

/// `c†_site`.
pub fn cdag(site: usize) -> (Ladder, usize) {
    (Ladder::Create, site)
}

/// `c_site`.
pub fn cann(site: usize) -> (Ladder, usize) {
    (Ladder::Annihilate, site)
}

/// Maps `coeff · Π ops` (left to right) to a single qubit term.
///
/// Fails when the product vanishes identically, e.g. `c†_i c†_i`.
pub fn jordan_wigner(coeff: C64, ops: &[(Ladder, usize)], modes: &[usize]) -> Result<HamiltonianExpr> {
    let n = modes.len();
    let mut acc: Vec<Option<CMatrix>> = vec![None; n];
    let z = pauli_z();
    let plus = sigma_plus();
    let minus = plus.adjoint();
    for &(kind, site) in ops {
        if site >= n {
            return Err(Error::Index { mode: site, value: site as i64 });
        }
        for (s, slot) in acc.iter_mut().enumerate().take(site + 1) {
            let m = if s < site {
                &z
            } else if kind == Ladder::Create {
                &plus
            } else {
                &minus
            };
            *slot = Some(match slot.take() {
                Some(prev) => prev * m,
                None => m.clone(),
            });
        }
    }
    let mut factors = Vec::new();
    for (s, m) in acc.into_iter().enumerate() {
        let Some(m) = m else { continue };
        if m.iter().all(|x| *x == ZERO) {
            return Err(Error::Precondition(format!(
                "fermion product vanishes on site {s}: repeated ladder operator"
            )));
        }
        if linalg::max_abs(&(&m - linalg::identity(2))) == 0.0 {
            continue;
        }
        let op = if linalg::hermiticity_residual(&m) == 0.0 {
            LocalOperator::hermitian("jw", vec![qubit()], m)?
        } else {
            LocalOperator::general("jw", vec![qubit()], m)
        };
        factors.push((modes[s], op));
    }
    let mut h = HamiltonianExpr::new();
    h.push(coeff, factors)?;
    Ok(h)
}

/// `coeff · (c†_i c_j + c†_j c_i)` for real `coeff`, or `coeff · n_i` when `i == j`.
pub fn hopping(coeff: f64, i: usize, j: usize, modes: &[usize]) -> Result<HamiltonianExpr> {
    let k = C64::new(coeff, 0.0);
    if i == j {
        return jordan_wigner(k, &[cdag(i), cann(i)], modes);
    }
    let mut h = jordan_wigner(k, &[cdag(i), cann(j)], modes)?;
    h.extend(jordan_wigner(k, &[cdag(j), cann(i)], modes)?);
    Ok(h)
}

/// `Σ_j c†_j c_j` over all sites.
pub fn total_number(modes: &[usize]) -> Result<HamiltonianExpr> {
    let mut h = HamiltonianExpr::new();
    for s in 0..modes.len() {
        h.extend(jordan_wigner(ONE, &[cdag(s), cann(s)], modes)?);
    }
    Ok(h)
}
