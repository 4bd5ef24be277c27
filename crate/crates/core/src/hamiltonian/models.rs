//! Model Hamiltonians over explicit layouts.
//!
//! Layout conventions: fermionic sites and spins come first as qubits, bosonic
//! modes follow as qumodes, each group in index order.

use crate::error::{Error, Result};
use crate::layout::{ModeKind, RegisterLayout};
use crate::linalg::{c, CMatrix};
use crate::operators::{
    annihilation, creation, number, pauli, quadrature_matrices, qumode, LocalOperator,
};

use super::fermion::{cann, cdag, jordan_wigner};
use super::HamiltonianExpr;

fn check_cutoff(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("cutoff {d} < 2")));
    }
    Ok(())
}

/// `x̂^k` or `p̂^k` truncated after the product: computed on a `d + k` space
/// and cut to `d` levels, so low-lying matrix elements are exact.
pub fn quadrature_power(d: usize, momentum: bool, k: u32) -> CMatrix {
    let big = d + k as usize;
    let (x, p) = quadrature_matrices(big);
    let q = if momentum { p } else { x };
    let mut m = crate::linalg::identity(big);
    for _ in 0..k {
        m = &m * &q;
    }
    let m = m.view((0, 0), (d, d)).into_owned();
    // symmetrize away rounding in large entries
    (&m + m.adjoint()) * c(0.5, 0.0)
}

fn quad_op(name: &str, d: usize, momentum: bool, k: u32) -> LocalOperator {
    LocalOperator::hermitian(name, vec![qumode(d)], quadrature_power(d, momentum, k)).expect("real symmetric power")
}

/// `x̂ = (a + a†)/√2` on a cutoff-`d` qumode.
pub fn position(d: usize) -> LocalOperator {
    quad_op("x", d, false, 1)
}

/// `b + b†`, i.e. `√2 x̂`.
fn displacement_coordinate(d: usize) -> LocalOperator {
    let m = quadrature_power(d, false, 1) * c(std::f64::consts::SQRT_2, 0.0);
    LocalOperator::hermitian("b+b†", vec![qumode(d)], m).expect("real symmetric")
}

/// `Σ_k ω_k b†_k b_k` on the given qumodes.
pub fn oscillators(omega: &[f64], modes: &[usize], cutoff: usize) -> Result<HamiltonianExpr> {
    if omega.len() != modes.len() {
        return Err(Error::InvalidParameter(format!("{} frequencies for {} modes", omega.len(), modes.len())));
    }
    let mut h = HamiltonianExpr::new();
    for (&w, &m) in omega.iter().zip(modes) {
        h.push(c(w, 0.0), vec![(m, number(cutoff))])?;
    }
    Ok(h)
}

/// Generalized Tavis–Cummings model
/// `Σ ε_i c†_i c_i + Σ_{i≠j} h_ij c†_i c_j + Σ ω_k a†_k a_k + g Σ_{ik} (c†_i a_k + h.c.)`
/// on `n_sites` qubits followed by `n_modes` qumodes. `hopping` is a real
/// symmetric `n_sites × n_sites` matrix whose diagonal is ignored.
pub fn build_tavis_cummings(
    eps: &[f64],
    hopping: &[Vec<f64>],
    omega: &[f64],
    g: f64,
    cutoffs: &[usize],
) -> Result<(HamiltonianExpr, RegisterLayout)> {
    let ns = eps.len();
    let nm = omega.len();
    if hopping.len() != ns || hopping.iter().any(|r| r.len() != ns) {
        return Err(Error::InvalidParameter(format!("hopping matrix must be {ns}×{ns}")));
    }
    if cutoffs.len() != nm {
        return Err(Error::InvalidParameter(format!("{} cutoffs for {nm} modes", cutoffs.len())));
    }
    for i in 0..ns {
        for j in 0..i {
            if hopping[i][j] != hopping[j][i] {
                return Err(Error::InvalidParameter("hopping matrix must be symmetric".into()));
            }
        }
    }
    cutoffs.iter().try_for_each(|&d| check_cutoff(d))?;
    let mut kinds = vec![ModeKind::Qubit; ns];
    kinds.extend(cutoffs.iter().map(|&d| ModeKind::qumode(d)));
    let layout = RegisterLayout::new(kinds)?;
    let sites: Vec<usize> = (0..ns).collect();
    let mut h = HamiltonianExpr::new();
    for (i, &e) in eps.iter().enumerate() {
        h.extend(jordan_wigner(c(e, 0.0), &[cdag(i), cann(i)], &sites)?);
        for j in 0..ns {
            if i != j {
                h.extend(jordan_wigner(c(hopping[i][j], 0.0), &[cdag(i), cann(j)], &sites)?);
            }
        }
    }
    for (k, (&w, &d)) in omega.iter().zip(cutoffs).enumerate() {
        h.push(c(w, 0.0), vec![(ns + k, number(d))])?;
    }
    if g != 0.0 {
        for i in 0..ns {
            let up = jordan_wigner(c(g, 0.0), &[cdag(i)], &sites)?;
            for (k, &d) in cutoffs.iter().enumerate() {
                for t in up.terms() {
                    let mut f = t.factors.clone();
                    f.push((ns + k, annihilation(d)));
                    h.push(t.coeff, f.clone())?;
                    let adj: Vec<_> = t.factors.iter().map(|(m, op)| (*m, op.adjoint())).collect();
                    let mut fa = adj;
                    fa.push((ns + k, creation(d)));
                    h.push(t.coeff.conj(), fa)?;
                }
            }
        }
    }
    Ok((h, layout))
}

/// Spectral density `J(ω)` of a continuous bath.
#[derive(Debug, Clone, Copy)]
pub enum SpectralDensity {
    /// `(π/2) α ω e^{−ω/ω_c}`
    Ohmic { alpha: f64, omega_c: f64 },
    /// `2λ ω ω_c / (ω² + ω_c²)`
    Debye { lambda: f64, omega_c: f64 },
    Custom(fn(f64) -> f64),
}

impl SpectralDensity {
    pub fn eval(&self, w: f64) -> f64 {
        match *self {
            SpectralDensity::Ohmic { alpha, omega_c } => std::f64::consts::FRAC_PI_2 * alpha * w * (-w / omega_c).exp(),
            SpectralDensity::Debye { lambda, omega_c } => 2.0 * lambda * w * omega_c / (w * w + omega_c * omega_c),
            SpectralDensity::Custom(f) => f(w),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Bath {
    /// Frequencies `ω_k` and couplings `g[i][k]` of spin `i` to mode `k`.
    Explicit { omega: Vec<f64>, couplings: Vec<Vec<f64>> },
    /// Linear grid `ω_k = kΔω` on `(0, ω_max]` with `g_k² = J(ω_k)Δω/π`,
    /// shared by all spins.
    Spectral { density: SpectralDensity, count: usize, omega_max: f64 },
}

#[derive(Debug, Clone)]
pub struct SpinBosonSpec {
    pub eps: Vec<f64>,
    pub delta: Vec<f64>,
    /// `(i, j, J_ij)` for `σz_i σz_j`, `i ≠ j`.
    pub couplings: Vec<(usize, usize, f64)>,
    pub bath: Bath,
}

/// Largest relative deviation allowed between `Σ_k J(ω_k)Δω` and `∫J`.
pub const BATH_QUADRATURE_TOL: f64 = 0.02;

impl SpinBosonSpec {
    /// Bath frequencies and the `spins × modes` coupling table.
    pub fn discretize(&self) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
        let n = self.eps.len();
        let (omega, g) = match &self.bath {
            Bath::Explicit { omega, couplings } => {
                if couplings.len() != n || couplings.iter().any(|r| r.len() != omega.len()) {
                    return Err(Error::InvalidParameter(format!("couplings must be {n}×{}", omega.len())));
                }
                (omega.clone(), couplings.clone())
            }
            Bath::Spectral { density, count, omega_max } => {
                if *count == 0 || !(*omega_max > 0.0) {
                    return Err(Error::InvalidParameter("bath needs count ≥ 1 and ω_max > 0".into()));
                }
                let dw = omega_max / *count as f64;
                let omega: Vec<f64> = (1..=*count).map(|k| k as f64 * dw).collect();
                let js: Vec<f64> = omega.iter().map(|&w| density.eval(w)).collect();
                if js.iter().any(|j| !(*j >= 0.0) || !j.is_finite()) {
                    return Err(Error::InvalidParameter("spectral density must be finite and non-negative".into()));
                }
                let discrete: f64 = js.iter().sum::<f64>() * dw;
                let exact = trapezoid(|w| density.eval(w), 0.0, *omega_max, 20_000);
                let rel = (discrete - exact).abs() / exact.abs().max(f64::MIN_POSITIVE);
                if rel > BATH_QUADRATURE_TOL {
                    return Err(Error::InvalidParameter(format!(
                        "bath discretization misses ∫J(ω)dω by {:.2}%; use more modes",
                        rel * 100.0
                    )));
                }
                let gk: Vec<f64> = js.iter().map(|j| (j * dw / std::f64::consts::PI).sqrt()).collect();
                (omega, vec![gk; n])
            }
        };
        if omega.iter().any(|w| !(*w > 0.0)) {
            return Err(Error::InvalidParameter("bath frequencies must be positive".into()));
        }
        Ok((omega, g))
    }
}

fn trapezoid(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = 0.5 * (f(a) + f(b));
    for k in 1..n {
        s += f(a + k as f64 * h);
    }
    s * h
}

/// `Σ (ε_i/2 σz_i + Δ_i/2 σx_i) + Σ J_ij σz_i σz_j + Σ ω_k b†_k b_k + Σ g_ik σz_i (b†_k + b_k)`
/// on spins (qubits) followed by bath modes. `cutoffs` holds one entry per
/// bath mode, or a single entry used for all of them.
pub fn build_spin_boson(spec: &SpinBosonSpec, cutoffs: &[usize]) -> Result<(HamiltonianExpr, RegisterLayout)> {
    let n = spec.eps.len();
    if spec.delta.len() != n {
        return Err(Error::InvalidParameter("ε and Δ must have one entry per spin".into()));
    }
    let (omega, g) = spec.discretize()?;
    let nb = omega.len();
    let cutoffs: Vec<usize> = match cutoffs.len() {
        1 => vec![cutoffs[0]; nb],
        k if k == nb => cutoffs.to_vec(),
        k => return Err(Error::InvalidParameter(format!("{k} cutoffs for {nb} bath modes"))),
    };
    cutoffs.iter().try_for_each(|&d| check_cutoff(d))?;
    let mut kinds = vec![ModeKind::Qubit; n];
    kinds.extend(cutoffs.iter().map(|&d| ModeKind::qumode(d)));
    let layout = RegisterLayout::new(kinds)?;
    let mut h = HamiltonianExpr::new();
    for i in 0..n {
        h.push(c(spec.eps[i] / 2.0, 0.0), vec![(i, pauli('z'))])?;
        h.push(c(spec.delta[i] / 2.0, 0.0), vec![(i, pauli('x'))])?;
    }
    for &(i, j, jij) in &spec.couplings {
        if i >= n || j >= n || i == j {
            return Err(Error::InvalidParameter(format!("bad spin coupling ({i}, {j})")));
        }
        h.push(c(jij, 0.0), vec![(i, pauli('z')), (j, pauli('z'))])?;
    }
    for k in 0..nb {
        h.push(c(omega[k], 0.0), vec![(n + k, number(cutoffs[k]))])?;
        for (i, gi) in g.iter().enumerate() {
            h.push(c(gi[k], 0.0), vec![(i, pauli('z')), (n + k, displacement_coordinate(cutoffs[k]))])?;
        }
    }
    Ok((h, layout))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interaction {
    Attractive,
    Repulsive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Open,
    Periodic,
}

/// `−J Σ (a_j a†_{j+1} + h.c.) ± (U/2) Σ n_j(n_j − 1) − μ Σ n_j`, with `+` for
/// the repulsive model.
pub fn build_bose_hubbard(
    sites: usize,
    j: f64,
    u: f64,
    mu: f64,
    interaction: Interaction,
    cutoff: usize,
    boundary: Boundary,
) -> Result<(HamiltonianExpr, RegisterLayout)> {
    if sites < 2 {
        return Err(Error::InvalidParameter("Bose–Hubbard chain needs at least 2 sites".into()));
    }
    check_cutoff(cutoff)?;
    let layout = RegisterLayout::new(vec![ModeKind::qumode(cutoff); sites])?;
    let sign = match interaction {
        Interaction::Repulsive => 1.0,
        Interaction::Attractive => -1.0,
    };
    let onsite: CMatrix =
        CMatrix::from_fn(cutoff, cutoff, |a, b| if a == b { c((a * a.saturating_sub(1)) as f64, 0.0) } else { c(0.0, 0.0) });
    let onsite = LocalOperator::hermitian("n(n-1)", vec![qumode(cutoff)], onsite)?;
    let mut bonds: Vec<(usize, usize)> = (0..sites - 1).map(|s| (s, s + 1)).collect();
    if boundary == Boundary::Periodic && sites > 2 {
        bonds.push((sites - 1, 0));
    }
    let mut h = HamiltonianExpr::new();
    for (a, b) in bonds {
        h.push(c(-j, 0.0), vec![(a, annihilation(cutoff)), (b, creation(cutoff))])?;
        h.push(c(-j, 0.0), vec![(a, creation(cutoff)), (b, annihilation(cutoff))])?;
    }
    for s in 0..sites {
        h.push(c(sign * u / 2.0, 0.0), vec![(s, onsite.clone())])?;
        h.push(c(-mu, 0.0), vec![(s, number(cutoff))])?;
    }
    Ok((h, layout))
}

fn check_pairing(fermions: &[usize], phonons: &[usize]) -> Result<()> {
    if fermions.len() != phonons.len() {
        return Err(Error::InvalidParameter(format!(
            "{} fermion sites but {} phonon modes",
            fermions.len(),
            phonons.len()
        )));
    }
    Ok(())
}

/// `g Σ_i (b_i + b†_i) c†_i c_i`; site `i` lives on qubit `fermions[i]` with
/// its phonon on qumode `phonons[i]`.
pub fn build_holstein(g: f64, fermions: &[usize], phonons: &[usize], cutoff: usize) -> Result<HamiltonianExpr> {
    check_pairing(fermions, phonons)?;
    check_cutoff(cutoff)?;
    let mut h = HamiltonianExpr::new();
    if g == 0.0 {
        return Ok(h);
    }
    for (i, &ph) in phonons.iter().enumerate() {
        for t in jordan_wigner(c(g, 0.0), &[cdag(i), cann(i)], fermions)?.terms() {
            let mut f = t.factors.clone();
            f.push((ph, displacement_coordinate(cutoff)));
            h.push(t.coeff, f)?;
        }
    }
    Ok(h)
}

/// `g Σ_{(i,j)} (X_j − X_i) c†_j c_i + h.c.` with `X = b + b†`, over the given bonds.
pub fn build_peierls(
    g: f64,
    bonds: &[(usize, usize)],
    fermions: &[usize],
    phonons: &[usize],
    cutoff: usize,
) -> Result<HamiltonianExpr> {
    check_pairing(fermions, phonons)?;
    check_cutoff(cutoff)?;
    let mut h = HamiltonianExpr::new();
    if g == 0.0 {
        return Ok(h);
    }
    for &(i, j) in bonds {
        if i >= fermions.len() || j >= fermions.len() || i == j {
            return Err(Error::InvalidParameter(format!("bond ({i}, {j}) does not match the site list")));
        }
        for (site, sign) in [(j, 1.0), (i, -1.0)] {
            for ops in [[cdag(j), cann(i)], [cdag(i), cann(j)]] {
                for t in jordan_wigner(c(sign * g, 0.0), &ops, fermions)?.terms() {
                    let mut f = t.factors.clone();
                    f.push((phonons[site], displacement_coordinate(cutoff)));
                    h.push(t.coeff, f)?;
                }
            }
        }
    }
    Ok(h)
}

/// Cubic anharmonic couplings `Σ Φ_jkl X_j X_k X_l`, `X = b + b†`. Each entry
/// names three distinct modes and contributes its product once; an unordered
/// triple may appear only once.
pub fn build_ivr_cubic(phi: &[(usize, usize, usize, f64)], n_modes: usize, cutoff: usize) -> Result<HamiltonianExpr> {
    check_cutoff(cutoff)?;
    let mut seen = std::collections::BTreeSet::new();
    let mut h = HamiltonianExpr::new();
    for &(a, b, cc, v) in phi {
        if a == b || b == cc || a == cc {
            return Err(Error::InvalidParameter(format!("repeated index in Φ({a}, {b}, {cc})")));
        }
        if a.max(b).max(cc) >= n_modes {
            return Err(Error::InvalidParameter(format!("Φ({a}, {b}, {cc}) exceeds {n_modes} modes")));
        }
        let mut key = [a, b, cc];
        key.sort_unstable();
        if !seen.insert(key) {
            return Err(Error::InvalidParameter(format!("Φ({a}, {b}, {cc}) given twice")));
        }
        let x = displacement_coordinate(cutoff);
        h.push(c(v, 0.0), vec![(a, x.clone()), (b, x.clone()), (cc, x)])?;
    }
    Ok(h)
}

/// Two-state, two-mode linear vibronic coupling parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LvcParams {
    pub delta: f64,
    pub kappa_g: f64,
    pub lambda_h: f64,
    pub omega_g: f64,
    pub omega_h: f64,
}

/// `½(P_g² + P_h²) + ½(Ω_g² Q_g² + Ω_h² Q_h²) + (Δ + κ_g Q_g) σz + λ_h Q_h σx`
/// on `[qubit, Q_g qumode, Q_h qumode]`.
pub fn build_lvc_two_mode(p: &LvcParams, cutoffs: [usize; 2]) -> Result<(HamiltonianExpr, RegisterLayout)> {
    if !(p.omega_g > 0.0 && p.omega_h > 0.0) {
        return Err(Error::InvalidParameter("LVC frequencies must be positive".into()));
    }
    cutoffs.iter().try_for_each(|&d| check_cutoff(d))?;
    let layout = RegisterLayout::new(vec![ModeKind::Qubit, ModeKind::qumode(cutoffs[0]), ModeKind::qumode(cutoffs[1])])?;
    let mut h = HamiltonianExpr::new();
    for (m, (d, w)) in [(1, (cutoffs[0], p.omega_g)), (2, (cutoffs[1], p.omega_h))] {
        h.push(c(0.5, 0.0), vec![(m, quad_op("p²", d, true, 2))])?;
        h.push(c(0.5 * w * w, 0.0), vec![(m, quad_op("x²", d, false, 2))])?;
    }
    h.push(c(p.delta, 0.0), vec![(0, pauli('z'))])?;
    h.push(c(p.kappa_g, 0.0), vec![(0, pauli('z')), (1, position(cutoffs[0]))])?;
    h.push(c(p.lambda_h, 0.0), vec![(0, pauli('x')), (2, position(cutoffs[1]))])?;
    Ok((h, layout))
}

/// Potential `Σ b_j x_j + Σ V_jk x_j x_k + Σ W_jklm x_j x_k x_l x_m` of a QHD problem.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct QhdPotential {
    pub n_modes: usize,
    pub linear: Vec<(usize, f64)>,
    pub quadratic: Vec<(usize, usize, f64)>,
    pub quartic: Vec<([usize; 4], f64)>,
}

impl QhdPotential {
    /// Classical value at `x`.
    pub fn value(&self, x: &[f64]) -> f64 {
        let l: f64 = self.linear.iter().map(|&(j, b)| b * x[j]).sum();
        let q: f64 = self.quadratic.iter().map(|&(j, k, v)| v * x[j] * x[k]).sum();
        let w: f64 = self.quartic.iter().map(|&(ix, w)| w * ix.iter().map(|&i| x[i]).product::<f64>()).sum();
        l + q + w
    }

    fn quartic_form(&self, u: &[f64]) -> f64 {
        self.quartic.iter().map(|&(ix, w)| w * ix.iter().map(|&i| u[i]).product::<f64>()).sum()
    }

    fn validate(&self) -> Result<()> {
        let ok = |j: usize| j < self.n_modes;
        let all = self.linear.iter().all(|t| ok(t.0))
            && self.quadratic.iter().all(|t| ok(t.0) && ok(t.1))
            && self.quartic.iter().all(|t| t.0.iter().all(|&j| ok(j)));
        if self.n_modes == 0 || !all {
            return Err(Error::InvalidParameter(format!("QHD indices must lie in 0..{}", self.n_modes)));
        }
        Ok(())
    }
}

/// Time-dependent QHD Hamiltonian `H(t) = Σ p̂²/(2μ(t)) + V(x̂)`, `μ(t) = 1 + t²`.
#[derive(Debug, Clone)]
pub struct QhdBuilder {
    cutoff: usize,
    n_modes: usize,
    potential: HamiltonianExpr,
    kinetic: LocalOperator,
    warnings: Vec<String>,
}

/// `1/(2μ(t))`.
pub fn qhd_kinetic_coefficient(t: f64) -> f64 {
    1.0 / (2.0 * (1.0 + t * t))
}

/// Assembles the QHD potential on `n_modes` qumodes of cutoff `cutoff`.
///
/// Repeated indices in a monomial become powers of `x̂` on that mode. The
/// potential is flagged as possibly unbounded when the quartic form is not
/// positive along every coordinate axis and pairwise diagonal.
pub fn build_qhd(potential: &QhdPotential, cutoff: usize) -> Result<QhdBuilder> {
    potential.validate()?;
    check_cutoff(cutoff)?;
    let n = potential.n_modes;
    let mut h = HamiltonianExpr::new();
    let mut monomial = |coeff: f64, idx: &[usize]| -> Result<()> {
        let mut powers: Vec<(usize, u32)> = Vec::new();
        for &j in idx {
            match powers.iter_mut().find(|p| p.0 == j) {
                Some(p) => p.1 += 1,
                None => powers.push((j, 1)),
            }
        }
        let f = powers.into_iter().map(|(j, k)| (j, quad_op(&format!("x^{k}"), cutoff, false, k))).collect();
        h.push(c(coeff, 0.0), f)
    };
    for &(j, b) in &potential.linear {
        monomial(b, &[j])?;
    }
    for &(j, k, v) in &potential.quadratic {
        monomial(v, &[j, k])?;
    }
    for &(ix, w) in &potential.quartic {
        monomial(w, &ix)?;
    }
    let mut warnings = Vec::new();
    let mut directions: Vec<Vec<f64>> = Vec::new();
    for a in 0..n {
        let mut u = vec![0.0; n];
        u[a] = 1.0;
        directions.push(u);
        for b in a + 1..n {
            for s in [1.0, -1.0] {
                let mut u = vec![0.0; n];
                u[a] = 1.0;
                u[b] = s;
                directions.push(u);
            }
        }
    }
    if potential.quartic.is_empty() {
        let v = nalgebra::DMatrix::<f64>::from_fn(n, n, |a, b| {
            potential.quadratic.iter().filter(|t| (t.0, t.1) == (a, b) || (t.0, t.1) == (b, a)).map(|t| if t.0 == t.1 { t.2 } else { t.2 / 2.0 }).sum()
        });
        if v.symmetric_eigenvalues().min() <= 0.0 {
            warnings.push("quadratic potential is not positive definite; potential may be unbounded below".into());
        }
    } else if directions.iter().any(|u| potential.quartic_form(u) <= 0.0) {
        warnings.push("quartic part is not positive in every direction; potential may be unbounded below".into());
    }
    let kinetic = quad_op("p²", cutoff, true, 2);
    Ok(QhdBuilder { cutoff, n_modes: n, potential: h, kinetic, warnings })
}

impl QhdBuilder {
    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn potential(&self) -> &HamiltonianExpr {
        &self.potential
    }

    pub fn layout(&self) -> Result<RegisterLayout> {
        RegisterLayout::new(vec![ModeKind::qumode(self.cutoff); self.n_modes])
    }

    /// `H(t)`.
    pub fn at(&self, t: f64) -> Result<HamiltonianExpr> {
        let k = qhd_kinetic_coefficient(t);
        let mut h = HamiltonianExpr::new();
        for m in 0..self.n_modes {
            h.push(c(k, 0.0), vec![(m, self.kinetic.clone())])?;
        }
        Ok(h.plus(&self.potential))
    }
}
