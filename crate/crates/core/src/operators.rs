//! Mode-local operators and gate constructors.
//!
//! Conventions (fixed once, ħ = 1):
//! - `x = (a + a†)/√2`, `p = (a − a†)/(i√2)`
//! - `D(α) = exp(α a† − α* a)`
//! - `S(z) = exp((z* a² − z a†²)/2)`
//! - beamsplitter `exp(θ (e^{iφ} a† b − e^{−iφ} a b†))`
//! - qubit `|0⟩` is the ground/lower level, `σ⁺ = |1⟩⟨0|`, `Z = diag(1, −1)`
//!
//! Continuous gates are built by truncating the generator to the cutoff and
//! exponentiating, so they are unitary on the simulated space; closeness to
//! the untruncated gate is the caller's cutoff responsibility.

use std::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};
use crate::layout::ModeKind;
use crate::linalg::{self, c, kron, CMatrix, C64, I, ONE, ZERO};

/// Tolerance asserted on every operator flagged unitary.
pub const UNITARY_TOL: f64 = 1e-10;
/// Tolerance asserted on every operator flagged Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Which mode kinds an operator slot accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetKind {
    Qubit,
    Qumode,
    Rotor,
    /// Qumode or rotor.
    Bosonic,
    Any,
}

impl TargetKind {
    pub fn accepts(&self, kind: &ModeKind) -> bool {
        match self {
            TargetKind::Qubit => kind.is_qubit(),
            TargetKind::Qumode => kind.is_qumode(),
            TargetKind::Rotor => kind.is_rotor(),
            TargetKind::Bosonic => kind.is_qumode() || kind.is_rotor(),
            TargetKind::Any => true,
        }
    }
}

/// Storage for an operator on the product space of its targets.
/// The first target is the most significant index.
#[derive(Debug, Clone, PartialEq)]
pub enum OperatorMatrix {
    Dense(CMatrix),
    Diagonal(Vec<C64>),
    /// Basis state `k` is sent to `perm[k]`.
    Permutation(Vec<usize>),
    /// Block-diagonal in the first target: block `c` acts on the remaining
    /// targets when the first target is in level `c`.
    Controlled(Vec<CMatrix>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalOperator {
    pub name: String,
    pub targets: Vec<(TargetKind, usize)>,
    pub matrix: OperatorMatrix,
    pub hermitian: bool,
    pub unitary: bool,
}

impl LocalOperator {
    fn dense(name: &str, targets: Vec<(TargetKind, usize)>, m: CMatrix) -> Self {
        LocalOperator {
            name: name.to_string(),
            targets,
            matrix: OperatorMatrix::Dense(m),
            hermitian: false,
            unitary: false,
        }
    }

    /// A Hermitian operator; the flag is checked against [`HERMITIAN_TOL`].
    pub fn hermitian(name: &str, targets: Vec<(TargetKind, usize)>, m: CMatrix) -> Result<Self> {
        let res = linalg::hermiticity_residual(&m);
        if res > HERMITIAN_TOL {
            return Err(Error::NotHermitian(res));
        }
        let mut op = Self::dense(name, targets, m);
        op.hermitian = true;
        Ok(op)
    }

    /// A unitary operator; the flag is checked against [`UNITARY_TOL`].
    pub fn unitary(name: &str, targets: Vec<(TargetKind, usize)>, m: CMatrix) -> Result<Self> {
        let res = linalg::unitarity_residual(&m);
        if res > UNITARY_TOL {
            return Err(Error::NotUnitary(res));
        }
        let mut op = Self::dense(name, targets, m);
        op.unitary = true;
        Ok(op)
    }

    /// A general (neither Hermitian nor unitary) operator.
    pub fn general(name: &str, targets: Vec<(TargetKind, usize)>, m: CMatrix) -> Self {
        Self::dense(name, targets, m)
    }

    pub fn diagonal_unitary(name: &str, targets: Vec<(TargetKind, usize)>, d: Vec<C64>) -> Self {
        debug_assert!(d.iter().all(|z| (z.norm() - 1.0).abs() < 1e-12));
        LocalOperator {
            name: name.to_string(),
            targets,
            matrix: OperatorMatrix::Diagonal(d),
            hermitian: false,
            unitary: true,
        }
    }

    pub fn permutation(name: &str, targets: Vec<(TargetKind, usize)>, perm: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || seen[p] {
                return Err(Error::InvalidParameter(format!("{name}: not a permutation")));
            }
            seen[p] = true;
        }
        Ok(LocalOperator {
            name: name.to_string(),
            targets,
            matrix: OperatorMatrix::Permutation(perm),
            hermitian: false,
            unitary: true,
        })
    }

    /// Block-diagonal unitary controlled by the first target.
    pub fn controlled(name: &str, targets: Vec<(TargetKind, usize)>, blocks: Vec<CMatrix>) -> Result<Self> {
        if blocks.len() != targets[0].1 {
            return Err(Error::TargetMismatch(format!(
                "{name}: {} blocks for control dimension {}",
                blocks.len(),
                targets[0].1
            )));
        }
        let mut worst: f64 = 0.0;
        for b in &blocks {
            worst = worst.max(linalg::unitarity_residual(b));
        }
        if worst > UNITARY_TOL {
            return Err(Error::NotUnitary(worst));
        }
        Ok(LocalOperator {
            name: name.to_string(),
            targets,
            matrix: OperatorMatrix::Controlled(blocks),
            hermitian: false,
            unitary: true,
        })
    }

    pub fn arity(&self) -> usize {
        self.targets.len()
    }

    /// Product dimension of the target modes.
    pub fn dim(&self) -> usize {
        self.targets.iter().map(|t| t.1).product()
    }

    pub fn to_dense(&self) -> CMatrix {
        let n = self.dim();
        match &self.matrix {
            OperatorMatrix::Dense(m) => m.clone(),
            OperatorMatrix::Diagonal(d) => linalg::from_diagonal(d),
            OperatorMatrix::Permutation(p) => {
                let mut m = CMatrix::zeros(n, n);
                for (k, &to) in p.iter().enumerate() {
                    m[(to, k)] = ONE;
                }
                m
            }
            OperatorMatrix::Controlled(blocks) => {
                let b = n / blocks.len();
                let mut m = CMatrix::zeros(n, n);
                for (ci, blk) in blocks.iter().enumerate() {
                    m.view_mut((ci * b, ci * b), (b, b)).copy_from(blk);
                }
                m
            }
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> LocalOperator {
        let matrix = match &self.matrix {
            OperatorMatrix::Dense(m) => OperatorMatrix::Dense(m.adjoint()),
            OperatorMatrix::Diagonal(d) => OperatorMatrix::Diagonal(d.iter().map(|z| z.conj()).collect()),
            OperatorMatrix::Permutation(p) => {
                let mut inv = vec![0; p.len()];
                for (k, &to) in p.iter().enumerate() {
                    inv[to] = k;
                }
                OperatorMatrix::Permutation(inv)
            }
            OperatorMatrix::Controlled(blocks) => {
                OperatorMatrix::Controlled(blocks.iter().map(|b| b.adjoint()).collect())
            }
        };
        LocalOperator {
            name: format!("{}†", self.name),
            targets: self.targets.clone(),
            matrix,
            hermitian: self.hermitian,
            unitary: self.unitary,
        }
    }

    /// Checks that `kinds` (the layout kinds at the chosen targets) fit this operator.
    pub fn check_targets(&self, kinds: &[ModeKind]) -> Result<()> {
        if kinds.len() != self.targets.len() {
            return Err(Error::TargetMismatch(format!(
                "{} acts on {} modes, {} given",
                self.name,
                self.targets.len(),
                kinds.len()
            )));
        }
        for (slot, (kind, (want, dim))) in kinds.iter().zip(&self.targets).enumerate() {
            if !want.accepts(kind) {
                return Err(Error::TargetMismatch(format!(
                    "{} slot {slot} expects {want:?}, got {kind}",
                    self.name
                )));
            }
            if kind.dim() != *dim {
                return Err(Error::TargetMismatch(format!(
                    "{} slot {slot} has dimension {dim}, mode has {}",
                    self.name,
                    kind.dim()
                )));
            }
        }
        Ok(())
    }
}

pub(crate) fn qumode(d: usize) -> (TargetKind, usize) {
    (TargetKind::Qumode, d)
}

pub(crate) fn qubit() -> (TargetKind, usize) {
    (TargetKind::Qubit, 2)
}

// ---------------------------------------------------------------------------
// Bosonic matrices

/// Truncated annihilation matrix: `⟨n−1|a|n⟩ = √n`.
pub fn annihilation_matrix(d: usize) -> CMatrix {
    let mut a = CMatrix::zeros(d, d);
    for n in 1..d {
        a[(n - 1, n)] = c((n as f64).sqrt(), 0.0);
    }
    a
}

pub fn number_matrix(d: usize) -> CMatrix {
    CMatrix::from_fn(d, d, |i, j| if i == j { c(i as f64, 0.0) } else { ZERO })
}

/// `(x, p)` on the truncated space.
pub fn quadrature_matrices(d: usize) -> (CMatrix, CMatrix) {
    let a = annihilation_matrix(d);
    let ad = a.adjoint();
    let x = (&a + &ad) / c(SQRT_2, 0.0);
    let p = (&a - &ad) / c(0.0, SQRT_2);
    (x, p)
}

/// Rotated quadrature `x cos θ + p sin θ`.
pub fn rotated_quadrature_matrix(d: usize, angle: f64) -> CMatrix {
    let (x, p) = quadrature_matrices(d);
    x * c(angle.cos(), 0.0) + p * c(angle.sin(), 0.0)
}

pub fn annihilation(d: usize) -> LocalOperator {
    LocalOperator::general("a", vec![qumode(d)], annihilation_matrix(d))
}

pub fn creation(d: usize) -> LocalOperator {
    LocalOperator::general("a†", vec![qumode(d)], annihilation_matrix(d).adjoint())
}

pub fn number(d: usize) -> LocalOperator {
    LocalOperator::hermitian("n", vec![qumode(d)], number_matrix(d)).expect("diagonal real")
}

/// Position and momentum quadratures.
pub fn quadratures(d: usize) -> (LocalOperator, LocalOperator) {
    let (x, p) = quadrature_matrices(d);
    (
        LocalOperator::hermitian("x", vec![qumode(d)], x).expect("x is Hermitian"),
        LocalOperator::hermitian("p", vec![qumode(d)], p).expect("p is Hermitian"),
    )
}

fn exp_generator(name: &str, targets: Vec<(TargetKind, usize)>, generator: CMatrix) -> Result<LocalOperator> {
    LocalOperator::unitary(name, targets, linalg::expm(&generator))
}

/// `D(α) = exp(α a† − α* a)`, truncate-then-exponentiate.
pub fn displacement(alpha: C64, d: usize) -> Result<LocalOperator> {
    check_cutoff(d)?;
    if let Some(w) = displacement_leakage(alpha, d) {
        log::warn!("{w}");
    }
    let a = annihilation_matrix(d);
    let gen = a.adjoint() * alpha - a * alpha.conj();
    exp_generator("dgate", vec![qumode(d)], gen)
}

/// `S(z) = exp((z* a² − z a†²)/2)`, truncate-then-exponentiate.
pub fn squeeze(z: C64, d: usize) -> Result<LocalOperator> {
    check_cutoff(d)?;
    if let Some(w) = squeeze_leakage(z.norm(), d) {
        log::warn!("{w}");
    }
    let a = annihilation_matrix(d);
    let a2 = &a * &a;
    let gen = (&a2 * z.conj() - a2.adjoint() * z) * c(0.5, 0.0);
    exp_generator("sq", vec![qumode(d)], gen)
}

/// `exp(θ (e^{iφ} a† b − e^{−iφ} a b†))` on two qumodes.
pub fn beamsplitter(theta: f64, phi: f64, d1: usize, d2: usize) -> Result<LocalOperator> {
    check_cutoff(d1)?;
    check_cutoff(d2)?;
    let a = annihilation_matrix(d1);
    let b = annihilation_matrix(d2);
    let e = C64::from_polar(1.0, phi);
    let gen = (kron(&a.adjoint(), &b) * e - kron(&a, &b.adjoint()) * e.conj()) * c(theta, 0.0);
    exp_generator("bs", vec![qumode(d1), qumode(d2)], gen)
}

/// Phase rotation `exp(i θ n)` on a qumode.
pub fn phase_rotation(theta: f64, d: usize) -> LocalOperator {
    let diag = (0..d).map(|n| C64::from_polar(1.0, theta * n as f64)).collect();
    LocalOperator::diagonal_unitary("rot", vec![qumode(d)], diag)
}

/// Self-Kerr `exp(−i χ n²)`.
pub fn kerr(chi: f64, d: usize) -> LocalOperator {
    let diag = (0..d).map(|n| C64::from_polar(1.0, -chi * (n * n) as f64)).collect();
    LocalOperator::diagonal_unitary("kerr", vec![qumode(d)], diag)
}

/// Cross-Kerr `exp(−i χ n ⊗ m)`.
pub fn cross_kerr(chi: f64, d1: usize, d2: usize) -> LocalOperator {
    let mut diag = Vec::with_capacity(d1 * d2);
    for n in 0..d1 {
        for m in 0..d2 {
            diag.push(C64::from_polar(1.0, -chi * (n * m) as f64));
        }
    }
    LocalOperator::diagonal_unitary("xkerr", vec![qumode(d1), qumode(d2)], diag)
}

/// `F[j,k] = e^{2πi jk/d}/√d`. Accepts qumodes and rotors.
pub fn fock_dft_matrix(d: usize) -> CMatrix {
    let norm = 1.0 / (d as f64).sqrt();
    CMatrix::from_fn(d, d, |j, k| C64::from_polar(norm, 2.0 * PI * ((j * k) % d) as f64 / d as f64))
}

pub fn fock_dft(d: usize) -> Result<LocalOperator> {
    check_cutoff(d)?;
    LocalOperator::unitary("dft", vec![(TargetKind::Bosonic, d)], fock_dft_matrix(d))
}

/// `|j,k⟩ → |j, (j+k) mod d⟩` synthesized as `(I⊗F†)·CPhase·(I⊗F)`
/// with `CPhase = Σ e^{2πi jm/d}|j,m⟩⟨j,m|`, checked against the permutation.
pub fn modular_add(d: usize) -> Result<LocalOperator> {
    check_cutoff(d)?;
    let f = fock_dft_matrix(d);
    let id = linalg::identity(d);
    let mut cphase = Vec::with_capacity(d * d);
    for j in 0..d {
        for m in 0..d {
            cphase.push(C64::from_polar(1.0, 2.0 * PI * ((j * m) % d) as f64 / d as f64));
        }
    }
    let cphase = linalg::from_diagonal(&cphase);
    let m = kron(&id, &f.adjoint()) * cphase * kron(&id, &f);
    let mut worst: f64 = 0.0;
    for j in 0..d {
        for k in 0..d {
            for out in 0..d * d {
                let expect = if out == j * d + (j + k) % d { 1.0 } else { 0.0 };
                worst = worst.max((m[(out, j * d + k)] - c(expect, 0.0)).norm());
            }
        }
    }
    if worst > UNITARY_TOL {
        return Err(Error::NotUnitary(worst));
    }
    LocalOperator::unitary("modadd", vec![qumode(d), qumode(d)], m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PauliAxis {
    X,
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quadrature {
    X,
    P,
}

/// `exp(−i·param·σ_axis ⊗ quadrature)` with the qubit as the first target.
/// `(Z, X)`, `(X, X)`, `(Z, P)` are the `cdx`, `cdxx`, `cdp` gates.
pub fn conditional_displacement(axis: PauliAxis, param: f64, quad: Quadrature, d: usize) -> Result<LocalOperator> {
    check_cutoff(d)?;
    if let Some(w) = conditional_leakage(param, d) {
        log::warn!("{w}");
    }
    let sigma = match axis {
        PauliAxis::Z => pauli_z(),
        PauliAxis::X => pauli_x(),
    };
    let (x, p) = quadrature_matrices(d);
    let q = match quad {
        Quadrature::X => x,
        Quadrature::P => p,
    };
    let gen = kron(&sigma, &q) * C64::new(0.0, -param);
    let name = match (axis, quad) {
        (PauliAxis::Z, Quadrature::X) => "cdx",
        (PauliAxis::X, Quadrature::X) => "cdxx",
        (PauliAxis::Z, Quadrature::P) => "cdp",
        (PauliAxis::X, Quadrature::P) => "cdxp",
    };
    exp_generator(name, vec![qubit(), qumode(d)], gen)
}

/// Hermitian `g (σ⁺ ⊗ a + σ⁻ ⊗ a†)`, qubit first.
pub fn jaynes_cummings(g: f64, d: usize) -> Result<LocalOperator> {
    check_cutoff(d)?;
    LocalOperator::hermitian("jc", vec![qubit(), qumode(d)], jaynes_cummings_matrix(g, d))
}

pub fn jaynes_cummings_matrix(g: f64, d: usize) -> CMatrix {
    let a = annihilation_matrix(d);
    (kron(&sigma_plus(), &a) + kron(&sigma_plus().adjoint(), &a.adjoint())) * c(g, 0.0)
}

/// `exp(−i θ (σ⁺ a + σ⁻ a†))`.
pub fn jaynes_cummings_gate(theta: f64, d: usize) -> Result<LocalOperator> {
    check_cutoff(d)?;
    exp_generator("jc", vec![qubit(), qumode(d)], jaynes_cummings_matrix(theta, d) * C64::new(0.0, -1.0))
}

// ---------------------------------------------------------------------------
// Rotors

/// Angular momentum `l = diag(−l_max..=l_max)`.
pub fn angular_momentum(l_max: usize) -> LocalOperator {
    let d = 2 * l_max + 1;
    let m = CMatrix::from_fn(d, d, |i, j| if i == j { c(i as f64 - l_max as f64, 0.0) } else { ZERO });
    LocalOperator::hermitian("l", vec![(TargetKind::Rotor, d)], m).expect("diagonal real")
}

/// `diag e^{i l θ}`: shifts rotor phase states by θ.
pub fn phase_displacement(theta: f64, l_max: usize) -> LocalOperator {
    let diag = (-(l_max as i64)..=l_max as i64)
        .map(|l| C64::from_polar(1.0, (l as f64 * theta).rem_euclid(2.0 * PI)))
        .collect();
    LocalOperator::diagonal_unitary("rot", vec![(TargetKind::Rotor, 2 * l_max + 1)], diag)
}

pub fn rotor_ops(l_max: usize, theta: f64) -> Result<(LocalOperator, LocalOperator)> {
    if l_max < 1 {
        return Err(Error::InvalidParameter("rotor l_max must be >= 1".into()));
    }
    Ok((angular_momentum(l_max), phase_displacement(theta, l_max)))
}

// ---------------------------------------------------------------------------
// Qubits

pub fn pauli_x() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO])
}

pub fn pauli_y() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[ZERO, -I, I, ZERO])
}

pub fn pauli_z() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE])
}

/// `σ⁺ = |1⟩⟨0|`.
pub fn sigma_plus() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[ZERO, ZERO, ONE, ZERO])
}

pub fn hadamard() -> LocalOperator {
    let s = 1.0 / SQRT_2;
    let m = CMatrix::from_row_slice(2, 2, &[c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)]);
    LocalOperator::unitary("h", vec![qubit()], m).expect("hadamard")
}

pub fn pauli(axis: char) -> LocalOperator {
    let (name, m) = match axis {
        'x' => ("x", pauli_x()),
        'y' => ("y", pauli_y()),
        _ => ("z", pauli_z()),
    };
    let mut op = LocalOperator::unitary(name, vec![qubit()], m).expect("pauli");
    op.hermitian = true;
    op
}

/// `exp(−i θ σ/2)` about `axis` ∈ {x, y, z}.
pub fn qubit_rotation(axis: char, theta: f64) -> LocalOperator {
    let (cs, sn) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let (name, m) = match axis {
        'x' => ("rx", CMatrix::from_row_slice(2, 2, &[c(cs, 0.0), c(0.0, -sn), c(0.0, -sn), c(cs, 0.0)])),
        'y' => ("ry", CMatrix::from_row_slice(2, 2, &[c(cs, 0.0), c(-sn, 0.0), c(sn, 0.0), c(cs, 0.0)])),
        _ => ("rz", CMatrix::from_row_slice(2, 2, &[c(cs, -sn), ZERO, ZERO, c(cs, sn)])),
    };
    LocalOperator::unitary(name, vec![qubit()], m).expect("rotation")
}

/// CNOT with the first target as control.
pub fn cnot() -> LocalOperator {
    LocalOperator::permutation("cx", vec![qubit(), qubit()], vec![0, 1, 3, 2]).expect("cnot")
}

// ---------------------------------------------------------------------------
// Leakage heuristics

/// Warning text when `|α|² > d/4`.
pub fn displacement_leakage(alpha: C64, d: usize) -> Option<String> {
    let occ = alpha.norm_sqr();
    (occ > d as f64 / 4.0)
        .then(|| format!("displacement |α|²={occ:.3} exceeds cutoff/4={:.3}; expect truncation leakage", d as f64 / 4.0))
}

/// Warning text when `sinh²|z| > d/4`.
pub fn squeeze_leakage(r: f64, d: usize) -> Option<String> {
    let occ = r.sinh().powi(2);
    (occ > d as f64 / 4.0)
        .then(|| format!("squeezing sinh²r={occ:.3} exceeds cutoff/4={:.3}; expect truncation leakage", d as f64 / 4.0))
}

/// Conditional displacements kick by `param` in phase space, adding `param²/2` quanta.
pub fn conditional_leakage(param: f64, d: usize) -> Option<String> {
    displacement_leakage(c(param / SQRT_2, 0.0), d)
}

fn check_cutoff(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("cutoff must be >= 2, got {d}")));
    }
    Ok(())
}
