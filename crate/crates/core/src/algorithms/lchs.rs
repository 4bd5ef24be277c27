//! Linear combination of Hamiltonian simulations with a qumode ancilla.
//!
//! For `du/dt = −A u` with `A = L + iH`, `L ⪰ 0`,
//! `e^{−TA} = ∫ g(k) e^{−iT(kL + H)} dk`. The kernel is loaded into the
//! momentum wavefunction of a qumode, the pair evolves under
//! `L ⊗ p̂ + H ⊗ I`, and projecting the qumode onto a squeezed vacuum leaves
//! the system in `e^{−TA}u₀` up to a known normalization.
//!
//! The qumode is handled in a squeezed frame `p = e^s p'`: the generator
//! becomes `e^s L ⊗ p̂' + H ⊗ I`, the preparation `χ(p') = e^{s/2} ψ_r(e^s p')`
//! and the projector `S(r − s)|0⟩`. This keeps the Fock expansion short.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::layout::{ModeKind, RegisterLayout};
use crate::linalg::{self, CMatrix, C64, I, ZERO};
use crate::operators::quadrature_matrices;
use crate::rng::shot_rng;
use crate::states::hermite_functions;

/// Kernel `g(k) = f(k)/(1 − ik)` with `f(k) = e^{2^β} e^{−(1+ik)^β}/(2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LchsKernel {
    beta: f64,
}

pub fn lchs_kernel(beta: f64) -> Result<LchsKernel> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::InvalidParameter(format!("β = {beta} must lie in (0, 1)")));
    }
    Ok(LchsKernel { beta })
}

impl LchsKernel {
    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn f(&self, k: f64) -> C64 {
        let z = C64::new(1.0, k).powf(self.beta);
        (2f64.powf(self.beta) - z).exp() / (2.0 * PI)
    }

    pub fn eval(&self, k: f64) -> C64 {
        self.f(k) / C64::new(1.0, -k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LchsMode {
    /// Deterministic projection of the statevector.
    StatevectorExact,
    /// Post-selection outcomes sampled shot by shot; the branch norm is
    /// estimated from the observed success frequency.
    PostselectSampled,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LchsSpec {
    pub beta: f64,
    /// Squeezing `r` of the projector `φ_r`.
    pub r: f64,
    /// Frame squeezing `s`.
    pub frame: f64,
    /// Fock cutoff of the ancilla; chosen adaptively when `None`.
    pub n_max: Option<usize>,
    /// Half-width `P` of the kernel grid in `k`; `max(8, 4e^r)` when `None`.
    pub p_range: Option<f64>,
    pub points: usize,
    pub eps_prep: f64,
    /// Strang steps, used when the joint dimension exceeds [`DENSE_LIMIT`].
    pub trotter_steps: usize,
    /// Shots for [`LchsMode::PostselectSampled`].
    pub shots: usize,
}

impl Default for LchsSpec {
    fn default() -> Self {
        LchsSpec {
            beta: 0.8,
            r: 3.0,
            frame: 3f64.ln(),
            n_max: None,
            p_range: None,
            points: 20001,
            eps_prep: 1e-4,
            trotter_steps: 400,
            shots: 100_000,
        }
    }
}

/// Joint dimensions up to this size are evolved with a dense exponential.
pub const DENSE_LIMIT: usize = 4096;

const N_MAX_CAP: usize = 4096;

/// Fock expansion of the ancilla preparation.
#[derive(Debug, Clone, PartialEq)]
pub struct Preparation {
    /// `C_n`, renormalized to unit length.
    pub coeffs: Vec<C64>,
    /// `Σ|C_n|²` before renormalization.
    pub weight: f64,
    /// `‖ψ_r‖` on the grid; the branch is rescaled by it.
    pub norm: f64,
}

/// `(π e^{2r})^{−1/4} e^{−p²/(2e^{2r})}`: momentum wavefunction of the projector.
fn phi_r(r: f64, p: f64) -> f64 {
    let w = (2.0 * r).exp();
    (PI * w).powf(-0.25) * (-p * p / (2.0 * w)).exp()
}

/// Computes `C_n = iⁿ ∫ ψ_n(p') χ(p') dp'` by the trapezoid rule.
pub fn prepare_ancilla(spec: &LchsSpec) -> Result<Preparation> {
    let kernel = lchs_kernel(spec.beta)?;
    if !(spec.r > 0.0) || !spec.frame.is_finite() || spec.points < 3 || !(spec.eps_prep > 0.0) {
        return Err(Error::InvalidParameter("LCHS spec out of range".into()));
    }
    let big_p = spec.p_range.unwrap_or_else(|| (4.0 * spec.r.exp()).max(8.0));
    let es = spec.frame.exp();
    let half = big_p / es;
    let h = 2.0 * half / (spec.points - 1) as f64;
    let chi: Vec<(f64, C64)> = (0..spec.points)
        .map(|i| {
            let pp = -half + i as f64 * h;
            let k = es * pp;
            (pp, es.sqrt() * kernel.eval(k) / phi_r(spec.r, k))
        })
        .collect();
    let weight = |i: usize| if i == 0 || i == spec.points - 1 { 0.5 * h } else { h };
    let mass: f64 = chi.iter().enumerate().map(|(i, (_, v))| weight(i) * v.norm_sqr()).sum();
    let norm = mass.sqrt();
    let peak = chi.iter().map(|(_, v)| v.norm_sqr()).fold(0.0, f64::max);
    let edge = chi[0].1.norm_sqr().max(chi[spec.points - 1].1.norm_sqr());
    if !norm.is_finite() || !(norm > 0.0) || edge > 1e-4 * peak {
        return Err(Error::Precondition(format!(
            "ψ_r is not normalizable on [−{big_p}, {big_p}] at r = {}",
            spec.r
        )));
    }

    let start = spec.n_max.unwrap_or_else(|| (1.0 / spec.eps_prep).ln().powi(2).ceil() as usize).max(2);
    let mut cap = spec.n_max.unwrap_or(4 * start);
    loop {
        let mut coeffs = vec![ZERO; cap];
        for (i, (pp, v)) in chi.iter().enumerate() {
            let w = weight(i) / norm;
            for (cn, hn) in coeffs.iter_mut().zip(hermite_functions(cap, *pp)) {
                *cn += v * (hn * w);
            }
        }
        let mut phase = C64::new(1.0, 0.0);
        for cn in coeffs.iter_mut() {
            *cn *= phase;
            phase *= I;
        }
        let mut acc = 0.0;
        let mut chosen = None;
        for (n, cn) in coeffs.iter().enumerate() {
            acc += cn.norm_sqr();
            if n + 1 >= start && acc >= 1.0 - spec.eps_prep {
                chosen = Some(n + 1);
                break;
            }
        }
        if let Some(n) = chosen.filter(|_| spec.n_max.is_none()) {
            coeffs.truncate(n);
        }
        let total: f64 = coeffs.iter().map(|z| z.norm_sqr()).sum();
        if total >= 1.0 - spec.eps_prep {
            let s = total.sqrt();
            coeffs.iter_mut().for_each(|z| *z /= s);
            return Ok(Preparation { coeffs, weight: total, norm });
        }
        if spec.n_max.is_some() || cap >= N_MAX_CAP {
            return Err(Error::InsufficientCutoff {
                cutoff: cap,
                detail: format!("Σ|C_n|² = {total:.6} < 1 − {:e}", spec.eps_prep),
            });
        }
        cap = (2 * cap).min(N_MAX_CAP);
    }
}

/// Unnormalized coefficients of `S(ρ)|0⟩` on the first `d` levels.
fn squeezed_projector(rho: f64, d: usize) -> Vec<C64> {
    let mut v = vec![ZERO; d];
    let t = -rho.tanh();
    let mut amp = 1.0 / rho.cosh().sqrt();
    let mut m = 0usize;
    while 2 * m < d {
        v[2 * m] = C64::new(amp, 0.0);
        amp *= t * (((2 * m + 1) * (2 * m + 2)) as f64).sqrt() / (2.0 * (m + 1) as f64);
        m += 1;
    }
    v
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LchsResult {
    /// Estimate of `e^{−TA}u₀`.
    pub u: Vec<C64>,
    /// Post-selection probability `‖projected branch‖²`.
    pub success_probability: f64,
    /// Observed success frequency in sampled mode.
    pub sampled_success: Option<f64>,
    pub n_max: usize,
    pub prep_weight: f64,
    /// Shift `c` added to `L` so that `L + c ⪰ 0`.
    pub shift: f64,
}

fn hermitian_parts(a: &CMatrix) -> (CMatrix, CMatrix) {
    let ad = a.adjoint();
    let l = (a + &ad) * C64::new(0.5, 0.0);
    let h = (a - &ad) * C64::new(0.0, -0.5);
    (l, h)
}

/// Applies `exp(−iT(e^s L ⊗ p̂ + H ⊗ I))` to the row-major `d × N` state,
/// densely when `steps` is `None`, else by Strang splitting.
fn joint_evolution(l: &CMatrix, h: &CMatrix, es: f64, n: usize, t: f64, psi: &[C64], steps: Option<usize>) -> Vec<C64> {
    let d = l.nrows();
    let (_, p) = quadrature_matrices(n);
    let Some(steps) = steps else {
        let g = linalg::kron(l, &(p * C64::new(es, 0.0))) + linalg::kron(h, &linalg::identity(n));
        return linalg::matvec(&linalg::evolution(&g, t), psi);
    };
    let el = nalgebra::linalg::SymmetricEigen::new(l.clone());
    let ep = nalgebra::linalg::SymmetricEigen::new(p);
    let dt = t / steps as f64;
    let half_h = linalg::evolution(h, dt / 2.0);
    let (vl, vp) = (&el.eigenvectors, &ep.eigenvectors);
    let phases = CMatrix::from_fn(d, n, |i, j| C64::from_polar(1.0, -dt * es * el.eigenvalues[i] * ep.eigenvalues[j]));
    // (A ⊗ B) vec(M) = A M Bᵀ for row-major vec
    let mut m = CMatrix::from_row_slice(d, n, psi);
    for _ in 0..steps {
        m = &half_h * m;
        let mut k = vl.adjoint() * &m * vp.conjugate();
        k.component_mul_assign(&phases);
        m = vl * k * vp.transpose();
        m = &half_h * m;
    }
    let mut out = Vec::with_capacity(d * n);
    for i in 0..d {
        for j in 0..n {
            out.push(m[(i, j)]);
        }
    }
    out
}

/// Solves `du/dt = −A u`, `u(0) = u₀` at time `T` for constant `A`.
///
/// `L = (A + A†)/2` is shifted by `c = max(0, −λ_min(L))` and the result
/// rescaled by `e^{cT}`. `A` acts on qubits, so its size must be a power of two.
pub fn lchs_solve(a: &CMatrix, u0: &[C64], t: f64, spec: &LchsSpec, mode: LchsMode, seed: u64) -> Result<LchsResult> {
    let d = a.nrows();
    if a.ncols() != d || d < 2 || !d.is_power_of_two() {
        return Err(Error::InvalidParameter(format!("A must be square of power-of-two size, got {}x{}", d, a.ncols())));
    }
    if u0.len() != d {
        return Err(Error::LayoutMismatch(format!("u0 has {} entries for a {d}-dim A", u0.len())));
    }
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::InvalidParameter(format!("T = {t}")));
    }
    let (mut l, h) = hermitian_parts(a);
    let lmin = nalgebra::linalg::SymmetricEigen::new(l.clone()).eigenvalues.min();
    let shift = (-lmin).max(0.0);
    if shift > 0.0 {
        l += linalg::identity(d) * C64::new(shift, 0.0);
    }
    let prep = prepare_ancilla(spec)?;
    let n = prep.coeffs.len();
    let mut modes = vec![ModeKind::Qubit; d.trailing_zeros() as usize];
    modes.push(ModeKind::qumode(n));
    RegisterLayout::new(modes)?;

    let mut psi = Vec::with_capacity(d * n);
    for ui in u0 {
        psi.extend(prep.coeffs.iter().map(|cn| ui * cn));
    }
    let es = spec.frame.exp();
    let steps = if d * n <= DENSE_LIMIT { None } else { Some(spec.trotter_steps.max(1)) };
    let out = joint_evolution(&l, &h, es, n, t, &psi, steps);
    let phi = squeezed_projector(spec.r - spec.frame, n);
    let branch: Vec<C64> = (0..d).map(|i| linalg::inner(&phi, &out[i * n..(i + 1) * n])).collect();
    let success = linalg::norm_sqr(&branch);
    let scale = prep.norm * (shift * t).exp();

    let (u, sampled) = match mode {
        LchsMode::StatevectorExact => (branch.iter().map(|z| z * scale).collect(), None),
        LchsMode::PostselectSampled => {
            use rand::Rng;
            if spec.shots == 0 {
                return Err(Error::InvalidParameter("shots must be positive".into()));
            }
            let hits = (0..spec.shots).filter(|&s| shot_rng(seed, s as u64).random::<f64>() < success).count();
            if hits == 0 {
                return Err(Error::Exhausted(format!("no successful post-selection in {} shots", spec.shots)));
            }
            let freq = hits as f64 / spec.shots as f64;
            let k = scale * (freq / success).sqrt();
            (branch.iter().map(|z| z * k).collect(), Some(freq))
        }
    };
    Ok(LchsResult { u, success_probability: success, sampled_success: sampled, n_max: n, prep_weight: prep.weight, shift })
}
