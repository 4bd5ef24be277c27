//! Strided application of mode-local matrices to a flat amplitude vector.
//!
//! For targets `t_0..t_{k-1}` (slot order, first slot most significant in the
//! local index) every amplitude index splits into a complement base, with all
//! target digits zero, plus a local offset `Σ digit_j · stride(t_j)`. The
//! kernels walk the complement bases with an odometer and act on the gathered
//! local vector, so the full-space matrix never exists.

use crate::layout::RegisterLayout;
use crate::linalg::{CMatrix, C64, ZERO};
use crate::operators::OperatorMatrix;

pub(crate) struct Targets {
    offsets: Vec<usize>,
    rest_dims: Vec<usize>,
    rest_strides: Vec<usize>,
    count: usize,
}

impl Targets {
    pub(crate) fn new(layout: &RegisterLayout, targets: &[usize]) -> Self {
        let dims = layout.dims();
        let strides = layout.strides();
        let local: usize = targets.iter().map(|&t| dims[t]).product();
        let mut offsets = vec![0usize; local];
        for (l, off) in offsets.iter_mut().enumerate() {
            let mut rem = l;
            for &t in targets.iter().rev() {
                *off += (rem % dims[t]) * strides[t];
                rem /= dims[t];
            }
        }
        let mut rest_dims = Vec::new();
        let mut rest_strides = Vec::new();
        for m in 0..dims.len() {
            if !targets.contains(&m) {
                rest_dims.push(dims[m]);
                rest_strides.push(strides[m]);
            }
        }
        let count = rest_dims.iter().product();
        Targets { offsets, rest_dims, rest_strides, count }
    }

    pub(crate) fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// Calls `f` with every complement base index, in increasing order.
    pub(crate) fn for_each_base(&self, mut f: impl FnMut(usize)) {
        let k = self.rest_dims.len();
        let mut digits = vec![0usize; k];
        let mut base = 0usize;
        for _ in 0..self.count {
            f(base);
            for j in (0..k).rev() {
                digits[j] += 1;
                base += self.rest_strides[j];
                if digits[j] < self.rest_dims[j] {
                    break;
                }
                base -= digits[j] * self.rest_strides[j];
                digits[j] = 0;
            }
        }
    }
}

fn dense_matvec(m: &CMatrix, v: &[C64], w: &mut [C64]) {
    let n = v.len();
    let data = m.as_slice();
    w.iter_mut().for_each(|x| *x = ZERO);
    for (j, &vj) in v.iter().enumerate() {
        if vj == ZERO {
            continue;
        }
        let col = &data[j * n..(j + 1) * n];
        for (wi, &mij) in w.iter_mut().zip(col) {
            *wi += mij * vj;
        }
    }
}

/// `amps ← (I ⊗ M ⊗ I) amps` for `M` on `targets`.
pub(crate) fn apply(amps: &mut [C64], tg: &Targets, matrix: &OperatorMatrix) {
    let off = tg.offsets();
    let d = off.len();
    match matrix {
        OperatorMatrix::Diagonal(diag) => tg.for_each_base(|base| {
            for (o, z) in off.iter().zip(diag) {
                amps[base + o] *= z;
            }
        }),
        OperatorMatrix::Permutation(perm) => {
            let mut v = vec![ZERO; d];
            tg.for_each_base(|base| {
                for (l, o) in off.iter().enumerate() {
                    v[l] = amps[base + o];
                }
                for (l, &to) in perm.iter().enumerate() {
                    amps[base + off[to]] = v[l];
                }
            })
        }
        OperatorMatrix::Dense(m) => {
            let mut v = vec![ZERO; d];
            let mut w = vec![ZERO; d];
            tg.for_each_base(|base| {
                for (l, o) in off.iter().enumerate() {
                    v[l] = amps[base + o];
                }
                dense_matvec(m, &v, &mut w);
                for (l, o) in off.iter().enumerate() {
                    amps[base + o] = w[l];
                }
            })
        }
        OperatorMatrix::Controlled(blocks) => {
            let b = d / blocks.len();
            let mut v = vec![ZERO; b];
            let mut w = vec![ZERO; b];
            tg.for_each_base(|base| {
                for (c, blk) in blocks.iter().enumerate() {
                    let sub = &off[c * b..(c + 1) * b];
                    for (l, o) in sub.iter().enumerate() {
                        v[l] = amps[base + o];
                    }
                    dense_matvec(blk, &v, &mut w);
                    for (l, o) in sub.iter().enumerate() {
                        amps[base + o] = w[l];
                    }
                }
            })
        }
    }
}

/// `Σ_base v_base† M v_base`, i.e. `⟨ψ|I ⊗ M ⊗ I|ψ⟩` without normalization.
pub(crate) fn expectation(amps: &[C64], tg: &Targets, m: &CMatrix) -> C64 {
    let off = tg.offsets();
    let d = off.len();
    let mut v = vec![ZERO; d];
    let mut w = vec![ZERO; d];
    let mut acc = ZERO;
    tg.for_each_base(|base| {
        for (l, o) in off.iter().enumerate() {
            v[l] = amps[base + o];
        }
        dense_matvec(m, &v, &mut w);
        acc += v.iter().zip(&w).map(|(a, b)| a.conj() * b).sum::<C64>();
    });
    acc
}
