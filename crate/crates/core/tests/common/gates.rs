//! Gate oracle: spectral exponentials of generators assembled from raw
//! ladder matrices, plus explicit matrices for the discrete gates.

use std::f64::consts::PI;

use cvdv::ir::{GateKind, GateSpec};
use cvdv::linalg::{CMatrix, C64};
use cvdv::{ModeKind, RegisterLayout};

use super::{exp_anti_hermitian, max_abs};

fn z(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn lower(d: usize) -> CMatrix {
    CMatrix::from_fn(d, d, |r, c| if c == r + 1 { z((c as f64).sqrt(), 0.0) } else { z(0.0, 0.0) })
}

fn eye(d: usize) -> CMatrix {
    CMatrix::identity(d, d)
}

fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

fn x_quad(d: usize) -> CMatrix {
    let a = lower(d);
    (&a + a.adjoint()) * z(0.5f64.sqrt(), 0.0)
}

fn p_quad(d: usize) -> CMatrix {
    let a = lower(d);
    (&a - a.adjoint()) * z(0.0, -(0.5f64.sqrt()))
}

fn qubit(entries: [C64; 4]) -> CMatrix {
    CMatrix::from_row_slice(2, 2, &entries)
}

fn sx() -> CMatrix {
    qubit([z(0.0, 0.0), z(1.0, 0.0), z(1.0, 0.0), z(0.0, 0.0)])
}

fn sy() -> CMatrix {
    qubit([z(0.0, 0.0), z(0.0, -1.0), z(0.0, 1.0), z(0.0, 0.0)])
}

fn sz() -> CMatrix {
    qubit([z(1.0, 0.0), z(0.0, 0.0), z(0.0, 0.0), z(-1.0, 0.0)])
}

fn diag(values: impl Iterator<Item = f64>) -> CMatrix {
    let v: Vec<f64> = values.collect();
    CMatrix::from_fn(v.len(), v.len(), |r, c| if r == c { z(v[r], 0.0) } else { z(0.0, 0.0) })
}

/// Oracle matrix for `kind` with the given parameters and target dimensions;
/// `rotor` selects the angular-momentum form of `rot`.
pub fn oracle(kind: GateKind, p: &[f64], dims: &[usize], rotor: bool) -> CMatrix {
    let minus_i = |h: CMatrix| exp_anti_hermitian(&(h * z(0.0, -1.0)));
    let d = *dims.last().unwrap();
    match kind {
        GateKind::Dgate => {
            let (a, al) = (lower(d), z(p[0], p[1]));
            exp_anti_hermitian(&(a.adjoint() * al - a * al.conj()))
        }
        GateKind::Sq => {
            let a = lower(d);
            let a2 = &a * &a;
            let s = C64::from_polar(p[0], p[1]);
            exp_anti_hermitian(&((&a2 * s.conj() - a2.adjoint() * s) * z(0.5, 0.0)))
        }
        GateKind::Bs => {
            let (a, b) = (lower(dims[0]), lower(dims[1]));
            let e = C64::from_polar(1.0, p[1]);
            exp_anti_hermitian(&((kron(&a.adjoint(), &b) * e - kron(&a, &b.adjoint()) * e.conj()) * z(p[0], 0.0)))
        }
        GateKind::Rot if rotor => {
            // rotor: e^{i θ l}, l = −l_max..=l_max
            let l_max = (d - 1) / 2;
            minus_i(diag((0..d).map(|k| -(p[0] * (k as f64 - l_max as f64)))))
        }
        GateKind::Rot => minus_i(diag((0..d).map(|n| -p[0] * n as f64))),
        GateKind::Kerr => minus_i(diag((0..d).map(|n| p[0] * (n * n) as f64))),
        GateKind::Xkerr => {
            let (d1, d2) = (dims[0], dims[1]);
            minus_i(diag((0..d1 * d2).map(|k| p[0] * ((k / d2) * (k % d2)) as f64)))
        }
        GateKind::Cdx => minus_i(kron(&sz(), &x_quad(d)) * z(p[0], 0.0)),
        GateKind::Cdp => minus_i(kron(&sz(), &p_quad(d)) * z(p[0], 0.0)),
        GateKind::Cdxx => minus_i(kron(&sx(), &x_quad(d)) * z(p[0], 0.0)),
        GateKind::Jc => {
            // σ⁺ = |1⟩⟨0| raises the qubit
            let up = qubit([z(0.0, 0.0), z(0.0, 0.0), z(1.0, 0.0), z(0.0, 0.0)]);
            let a = lower(d);
            minus_i((kron(&up, &a) + kron(&up.adjoint(), &a.adjoint())) * z(p[0], 0.0))
        }
        GateKind::Dft => CMatrix::from_fn(d, d, |j, k| C64::from_polar(1.0 / (d as f64).sqrt(), 2.0 * PI * (j * k) as f64 / d as f64)),
        GateKind::Modadd => CMatrix::from_fn(d * d, d * d, |r, c| {
            let (j, k) = (c / d, c % d);
            if r == j * d + (j + k) % d { z(1.0, 0.0) } else { z(0.0, 0.0) }
        }),
        GateKind::H => qubit([z(1.0, 0.0), z(1.0, 0.0), z(1.0, 0.0), z(-1.0, 0.0)]) * z(0.5f64.sqrt(), 0.0),
        GateKind::X => sx(),
        GateKind::Y => sy(),
        GateKind::Z => sz(),
        GateKind::Rx => minus_i(sx() * z(p[0] / 2.0, 0.0)),
        GateKind::Ry => minus_i(sy() * z(p[0] / 2.0, 0.0)),
        GateKind::Rz => minus_i(sz() * z(p[0] / 2.0, 0.0)),
        GateKind::Cx => {
            let mut m = kron(&diag([1.0, 0.0].into_iter()), &eye(2));
            m += kron(&diag([0.0, 1.0].into_iter()), &sx());
            m
        }
    }
}

/// Layout and targets for `kind`; `rotor` selects the rotor form of `rot`/`dft`.
pub fn place(kind: GateKind, d1: usize, d2: usize, rotor: bool) -> (RegisterLayout, Vec<usize>, Vec<usize>) {
    use cvdv::operators::TargetKind::*;
    let slots = kind.slots();
    let mut modes = Vec::new();
    let mut dims = Vec::new();
    for (i, s) in slots.iter().enumerate() {
        let d = if i == 0 { d1 } else { d2 };
        let (m, dim) = match s {
            Qubit => (ModeKind::Qubit, 2),
            Qumode => (ModeKind::qumode(d), d),
            Bosonic if rotor => (ModeKind::rotor(d.div_ceil(2)), 2 * d.div_ceil(2) + 1),
            _ => (ModeKind::qumode(d), d),
        };
        modes.push(m);
        dims.push(dim);
    }
    if kind == GateKind::Modadd {
        modes[1] = ModeKind::qumode(d1);
        dims[1] = d1;
    }
    let targets = (0..slots.len()).collect();
    (RegisterLayout::new(modes).unwrap(), targets, dims)
}

/// Max-entry deviation from the oracle and unitarity residual of `kind` on
/// target dimensions drawn from `d1`, `d2`.
pub fn gate_errors(kind: GateKind, params: &[f64], d1: usize, d2: usize, rotor: bool) -> (f64, f64) {
    let (layout, targets, dims) = place(kind, d1, d2, rotor);
    let spec = GateSpec::new(kind, &targets, &params[..kind.num_params()]);
    let got = spec.operator(&layout).unwrap().to_dense();
    let want = oracle(kind, params, &dims, rotor);
    let unit = max_abs(&(got.adjoint() * &got - eye(got.nrows())));
    (max_abs(&(&got - &want)), unit)
}

/// Parameter scale keeping the generator norms moderate.
pub fn param_range(kind: GateKind) -> f64 {
    match kind {
        GateKind::Dgate => 1.2,
        GateKind::Sq => 0.8,
        GateKind::Cdx | GateKind::Cdp | GateKind::Cdxx => 0.6,
        _ => PI,
    }
}

