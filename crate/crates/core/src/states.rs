//! Single-mode state preparation in the Fock basis and Hermite functions.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{c, C64, ONE, ZERO};

/// Fock state `|n⟩` truncated to `d` levels.
pub fn fock(n: usize, d: usize) -> Result<Vec<C64>> {
    if n >= d {
        return Err(Error::InsufficientCutoff { cutoff: d, detail: format!("Fock level {n} not representable") });
    }
    let mut v = vec![ZERO; d];
    v[n] = ONE;
    Ok(v)
}

/// Coherent state coefficients `e^{-|α|²/2} αⁿ/√n!`, renormalized on the truncation.
pub fn coherent(alpha: C64, d: usize) -> Vec<C64> {
    let mut v = Vec::with_capacity(d);
    let mut term = c((-alpha.norm_sqr() / 2.0).exp(), 0.0);
    for n in 0..d {
        v.push(term);
        term = term * alpha / ((n + 1) as f64).sqrt();
    }
    renormalize(v)
}

/// `S(r e^{iφ})|0⟩` coefficients, renormalized on the truncation.
pub fn squeezed_vacuum(r: f64, phi: f64, d: usize) -> Vec<C64> {
    let mut v = vec![ZERO; d];
    let t = -C64::from_polar(r.tanh(), phi);
    // amplitude of |2m⟩ is (−e^{iφ}tanh r)^m √((2m)!)/(2^m m!) / √cosh r
    let mut amp = c(1.0 / r.cosh().sqrt(), 0.0);
    let mut m = 0usize;
    while 2 * m < d {
        v[2 * m] = amp;
        let k = (2 * m + 1) as f64 * (2 * m + 2) as f64;
        amp = amp * t * k.sqrt() / (2.0 * (m + 1) as f64);
        m += 1;
    }
    renormalize(v)
}

fn renormalize(mut v: Vec<C64>) -> Vec<C64> {
    let n: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if n > 0.0 {
        for z in &mut v {
            *z /= n;
        }
    }
    v
}

/// Harmonic-oscillator eigenfunctions `ψ_0(x)..ψ_{n-1}(x)` in the `x = (a+a†)/√2`
/// convention, by the three-term recurrence carried in a rescaled frame so that
/// neither the Gaussian prefactor nor the polynomial growth over/underflows.
pub fn hermite_functions(n: usize, x: f64) -> Vec<f64> {
    let mut out = vec![0.0; n];
    if n == 0 {
        return out;
    }
    // ψ_k = v_k · exp(log_scale)
    let mut log_scale = -x * x / 2.0 - 0.25 * PI.ln();
    let mut prev = 0.0f64;
    let mut cur = 1.0f64;
    out[0] = log_scale.exp();
    for k in 0..n - 1 {
        let next = (2.0 / (k + 1) as f64).sqrt() * x * cur - (k as f64 / (k + 1) as f64).sqrt() * prev;
        prev = cur;
        cur = next;
        let mag = cur.abs().max(prev.abs());
        if mag > 1e150 || (mag < 1e-150 && mag > 0.0) {
            log_scale += mag.ln();
            prev /= mag;
            cur /= mag;
        }
        out[k + 1] = if log_scale < -745.0 { 0.0 } else { cur * log_scale.exp() };
    }
    out
}

/// Finite-energy comb `Σ_s e^{−Δ²(s·spacing)²/2} |x ≈ s·spacing⟩` in the Fock basis.
///
/// Each peak is a displaced squeezed vacuum of position variance `Δ²/2`; the
/// sum is projected onto the first `d` Hermite functions by quadrature on a
/// position grid. Fails if more than `1e-6` of the mass lies above the cutoff.
pub fn gkp_comb(d: usize, spacing: f64, delta: f64) -> Result<Vec<C64>> {
    if d < 2 || !(spacing > 0.0) || !(delta > 0.0) {
        return Err(Error::InvalidParameter(format!("gkp_comb(d={d}, spacing={spacing}, Δ={delta})")));
    }
    let reach = ((2 * d) as f64).sqrt() + 8.0;
    let h = (delta / 16.0).min(0.01);
    let points = (2.0 * reach / h).ceil() as usize + 1;
    let s_max = (reach / spacing).ceil() as i64;
    let peak_var = delta * delta / 2.0;
    let mut coeffs = vec![0.0f64; d];
    let mut mass = 0.0;
    for i in 0..points {
        let x = -reach + i as f64 * h;
        let mut psi = 0.0;
        for s in -s_max..=s_max {
            let xs = s as f64 * spacing;
            let env = (-delta * delta * xs * xs / 2.0).exp();
            psi += env * (-(x - xs).powi(2) / (4.0 * peak_var)).exp();
        }
        mass += psi * psi * h;
        if psi == 0.0 {
            continue;
        }
        for (cn, hn) in coeffs.iter_mut().zip(hermite_functions(d, x)) {
            *cn += hn * psi * h;
        }
    }
    let kept: f64 = coeffs.iter().map(|v| v * v).sum();
    let missing = 1.0 - kept / mass;
    if missing > 1e-6 {
        return Err(Error::InsufficientCutoff {
            cutoff: d,
            detail: format!("comb leaves {missing:.2e} of its mass above the cutoff"),
        });
    }
    Ok(renormalize(coeffs.into_iter().map(|v| c(v, 0.0)).collect()))
}

/// Position density `|Σ cₙ ψₙ(x)|²` of a single-mode vector.
pub fn position_density(coeffs: &[C64], x: f64) -> f64 {
    let h = hermite_functions(coeffs.len(), x);
    coeffs.iter().zip(h).map(|(cn, hn)| cn * hn).sum::<C64>().norm_sqr()
}
