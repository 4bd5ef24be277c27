//! Independent dense oracles shared by the integration tests.
#![allow(dead_code)]

pub mod corpus;
pub mod gates;

use std::f64::consts::PI;

use cvdv::linalg::{CMatrix, C64};
use nalgebra::linalg::SymmetricEigen;

/// Eigenvalues (ascending) and eigenvectors of a Hermitian matrix.
pub fn eigh(h: &CMatrix) -> (Vec<f64>, CMatrix) {
    let e = SymmetricEigen::new(h.clone());
    let mut idx: Vec<usize> = (0..h.nrows()).collect();
    idx.sort_by(|&a, &b| e.eigenvalues[a].partial_cmp(&e.eigenvalues[b]).unwrap());
    let vals = idx.iter().map(|&i| e.eigenvalues[i]).collect();
    let vecs = CMatrix::from_fn(h.nrows(), h.ncols(), |r, c| e.eigenvectors[(r, idx[c])]);
    (vals, vecs)
}

/// `e^{−iHt}` by Padé scaling-and-squaring (the engine diagonalizes instead).
pub fn evolve_dense(h: &CMatrix, t: f64) -> CMatrix {
    (h * C64::new(0.0, -t)).exp()
}

/// `e^{G}` for anti-Hermitian `G` through the spectral decomposition of `iG`
/// (gate constructors use Padé instead).
pub fn exp_anti_hermitian(g: &CMatrix) -> CMatrix {
    let h = g * C64::new(0.0, 1.0);
    let (vals, v) = eigh(&h);
    let phases = CMatrix::from_fn(vals.len(), vals.len(), |r, c| {
        if r == c { C64::from_polar(1.0, -vals[r]) } else { C64::new(0.0, 0.0) }
    });
    &v * phases * v.adjoint()
}

/// Composite Simpson rule; `intervals` must be even.
pub fn commutator_norm(a: &CMatrix, b: &CMatrix) -> f64 {
    max_abs(&(a * b - b * a))
}

pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().fold(0.0, |m, z| m.max(z.norm()))
}

pub fn apply(m: &CMatrix, v: &[C64]) -> Vec<C64> {
    (0..m.nrows()).map(|i| (0..v.len()).map(|j| m[(i, j)] * v[j]).sum()).collect()
}

pub fn dist(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}

/// Full-space diagonal operator from a per-index function.
pub fn diagonal(n: usize, f: impl Fn(usize) -> f64) -> CMatrix {
    CMatrix::from_fn(n, n, |r, c| if r == c { C64::new(f(r), 0.0) } else { C64::new(0.0, 0.0) })
}

/// LCHS kernel `g(k)` written out independently of the library.
pub fn lchs_kernel_oracle(beta: f64, k: f64) -> C64 {
    let f = (C64::new(2f64.powf(beta), 0.0) - C64::new(1.0, k).powf(beta)).exp() / (2.0 * PI);
    f / C64::new(1.0, -k)
}

pub fn simpson(f: impl Fn(f64) -> C64, a: f64, b: f64, intervals: usize) -> C64 {
    let h = (b - a) / intervals as f64;
    let mut s = f(a) + f(b);
    for i in 1..intervals {
        s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}
