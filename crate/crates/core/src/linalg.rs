//! Small dense complex linear-algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub const I: C64 = C64::new(0.0, 1.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const ZERO: C64 = C64::new(0.0, 0.0);

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn dagger(a: &CMatrix) -> CMatrix {
    a.adjoint()
}

/// Largest entry magnitude.
pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().fold(0.0, |m, z| m.max(z.norm()))
}

pub fn unitarity_residual(u: &CMatrix) -> f64 {
    let n = u.nrows();
    max_abs(&(u.adjoint() * u - identity(n)))
}

pub fn hermiticity_residual(a: &CMatrix) -> f64 {
    max_abs(&(a - a.adjoint()))
}

/// Matrix exponential by Padé scaling-and-squaring.
pub fn expm(a: &CMatrix) -> CMatrix {
    a.exp()
}

/// `exp(-i t H)` for a Hermitian `H`, through its eigendecomposition.
pub fn evolution(h: &CMatrix, t: f64) -> CMatrix {
    if h.iter().all(|z| z.im == 0.0) {
        let e = nalgebra::linalg::SymmetricEigen::new(h.map(|z| z.re));
        let v = e.eigenvectors.map(|x| C64::new(x, 0.0));
        let mut scaled = v.clone();
        for (k, lam) in e.eigenvalues.iter().enumerate() {
            let ph = C64::from_polar(1.0, -lam * t);
            for z in scaled.column_mut(k).iter_mut() {
                *z *= ph;
            }
        }
        return scaled * v.transpose();
    }
    let e = nalgebra::linalg::SymmetricEigen::new(h.clone());
    let v = &e.eigenvectors;
    let mut scaled = v.clone();
    for (k, lam) in e.eigenvalues.iter().enumerate() {
        let ph = C64::from_polar(1.0, -lam * t);
        for z in scaled.column_mut(k).iter_mut() {
            *z *= ph;
        }
    }
    scaled * v.adjoint()
}

pub fn from_diagonal(d: &[C64]) -> CMatrix {
    CMatrix::from_diagonal(&CVector::from_row_slice(d))
}

/// `⟨a|b⟩` with conjugation on `a`.
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm_sqr(a: &[C64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum()
}

pub fn matvec(m: &CMatrix, v: &[C64]) -> Vec<C64> {
    let n = m.nrows();
    let mut out = vec![ZERO; n];
    for (j, &x) in v.iter().enumerate() {
        if x == ZERO {
            continue;
        }
        for (i, o) in out.iter_mut().enumerate() {
            *o += m[(i, j)] * x;
        }
    }
    out
}
