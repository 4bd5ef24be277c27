//! QUBO and Ising problems, and Fock-basis encodings of bit strings.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::layout::{ModeKind, RegisterLayout};

/// Minimize `xᵀQx + constant` over `x ∈ {0,1}ⁿ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuboProblem {
    q: Vec<Vec<f64>>,
    constant: f64,
}

impl QuboProblem {
    pub fn new(q: Vec<Vec<f64>>) -> Result<Self> {
        Self::with_constant(q, 0.0)
    }

    pub fn with_constant(q: Vec<Vec<f64>>, constant: f64) -> Result<Self> {
        let n = q.len();
        if n == 0 || q.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidParameter("Q must be a non-empty square matrix".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if (q[i][j] - q[j][i]).abs() > 1e-12 * (1.0 + q[i][j].abs()) {
                    return Err(Error::InvalidParameter(format!("Q is not symmetric at ({i}, {j})")));
                }
            }
        }
        if q.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("Q has non-finite entries".into()));
        }
        Ok(QuboProblem { q, constant })
    }

    pub fn n(&self) -> usize {
        self.q.len()
    }

    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.q
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn value(&self, x: &[u8]) -> f64 {
        let mut v = self.constant;
        for (i, row) in self.q.iter().enumerate() {
            if x[i] == 0 {
                continue;
            }
            for (j, q) in row.iter().enumerate() {
                if x[j] != 0 {
                    v += q;
                }
            }
        }
        v
    }

    /// `Q_ii = −deg(i)`, `Q_ij = 1` per edge, so the value is `−(cut size)`.
    pub fn maxcut(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut q = vec![vec![0.0; n]; n];
        for &(a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(Error::InvalidParameter(format!("bad edge ({a}, {b})")));
            }
            q[a][a] -= 1.0;
            q[b][b] -= 1.0;
            q[a][b] += 1.0;
            q[b][a] += 1.0;
        }
        Self::new(q)
    }

    /// `Σ x_i + penalty · Σ_edges (1 − x_i)(1 − x_j)`.
    pub fn vertex_cover(n: usize, edges: &[(usize, usize)], penalty: f64) -> Result<Self> {
        let mut q = vec![vec![0.0; n]; n];
        let mut constant = 0.0;
        for (i, row) in q.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        for &(a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(Error::InvalidParameter(format!("bad edge ({a}, {b})")));
            }
            // (1 − x_a)(1 − x_b) = 1 − x_a − x_b + x_a x_b
            constant += penalty;
            q[a][a] -= penalty;
            q[b][b] -= penalty;
            q[a][b] += penalty / 2.0;
            q[b][a] += penalty / 2.0;
        }
        Self::with_constant(q, constant)
    }
}

/// Minimize `Σ h_i s_i + Σ_{i<j} J_ij s_i s_j + offset` over `s ∈ {−1,+1}ⁿ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsingProblem {
    pub h: Vec<f64>,
    /// `(i, j, J_ij)` with `i < j`.
    pub j: Vec<(usize, usize, f64)>,
    pub offset: f64,
}

impl IsingProblem {
    pub fn n(&self) -> usize {
        self.h.len()
    }

    pub fn energy(&self, s: &[i8]) -> f64 {
        let mut e = self.offset;
        for (hi, si) in self.h.iter().zip(s) {
            e += hi * *si as f64;
        }
        for &(a, b, jab) in &self.j {
            e += jab * (s[a] * s[b]) as f64;
        }
        e
    }

    /// Energy of the bit string `x`, read through `s = 2x − 1`.
    pub fn energy_bits(&self, x: &[u8]) -> f64 {
        let s: Vec<i8> = x.iter().map(|&b| if b != 0 { 1 } else { -1 }).collect();
        self.energy(&s)
    }

    /// Energies of all `2ⁿ` basis states; bit 0 is the most significant.
    pub fn diagonal(&self) -> Vec<f64> {
        let n = self.n();
        (0..1usize << n).map(|idx| self.energy_bits(&index_bits(idx, n))).collect()
    }
}

/// Big-endian bits of `idx`.
pub fn index_bits(idx: usize, n: usize) -> Vec<u8> {
    (0..n).map(|i| ((idx >> (n - 1 - i)) & 1) as u8).collect()
}

/// `x = (s + 1)/2`: `J_ij = Q_ij/2`, `h_i = Σ_j Q_ij/2`, `offset = (ΣQ + Σ Q_ii)/4 + constant`.
pub fn qubo_to_ising(q: &QuboProblem) -> IsingProblem {
    let n = q.n();
    let m = q.matrix();
    let h = (0..n).map(|i| m[i].iter().sum::<f64>() / 2.0).collect();
    let mut j = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if m[a][b] != 0.0 {
                j.push((a, b, m[a][b] / 2.0));
            }
        }
    }
    let total: f64 = m.iter().flatten().sum();
    let trace: f64 = (0..n).map(|i| m[i][i]).sum();
    IsingProblem { h, j, offset: (total + trace) / 4.0 + q.constant() }
}

/// Parts `k_i ≥ 2` of `n`; part `i` becomes a qumode of cutoff `2^{k_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FockPartition {
    parts: Vec<usize>,
}

impl FockPartition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidParameter("empty partition".into()));
        }
        if let Some(p) = parts.iter().find(|&&p| p < 2) {
            return Err(Error::InvalidParameter(format!("part {p} is below 2")));
        }
        if parts.iter().any(|&p| p > 24) {
            return Err(Error::InvalidParameter("parts above 24 bits are not supported".into()));
        }
        Ok(FockPartition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn cutoffs(&self) -> Vec<usize> {
        self.parts.iter().map(|&k| 1 << k).collect()
    }
}

/// Partitions of `n` without parts of size 1, ordered as
/// (2,2,2,2), (3,3,2), (4,2,2), (4,4), (5,3), (6,2), (8) for `n = 8`.
pub fn partitions_without_ones(n: usize) -> Vec<FockPartition> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (2..=max.min(rest)).rev() {
            cur.push(k);
            rec(rest - k, k, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    rec(n, n, &mut Vec::new(), &mut all);
    all.sort();
    all.into_iter().map(|p| FockPartition { parts: p }).collect()
}

/// Layout and bit ↔ Fock-coordinate maps of a partition.
#[derive(Debug, Clone, PartialEq)]
pub struct FockEncoding {
    pub partition: FockPartition,
    pub layout: RegisterLayout,
}

pub fn fock_partition_encode(n: usize, partition: &FockPartition) -> Result<FockEncoding> {
    if partition.total() != n {
        return Err(Error::InvalidParameter(format!("partition sums to {} but n = {n}", partition.total())));
    }
    let layout = RegisterLayout::new(partition.cutoffs().into_iter().map(ModeKind::qumode).collect())?;
    Ok(FockEncoding { partition: partition.clone(), layout })
}

impl FockEncoding {
    /// Big-endian within each part.
    pub fn bits_to_coords(&self, bits: &[u8]) -> Result<Vec<usize>> {
        if bits.len() != self.partition.total() || bits.iter().any(|&b| b > 1) {
            return Err(Error::InvalidParameter("bit string does not match the partition".into()));
        }
        let mut out = Vec::with_capacity(self.partition.parts.len());
        let mut pos = 0;
        for &k in &self.partition.parts {
            out.push(bits[pos..pos + k].iter().fold(0usize, |acc, &b| 2 * acc + b as usize));
            pos += k;
        }
        Ok(out)
    }

    pub fn coords_to_bits(&self, coords: &[usize]) -> Result<Vec<u8>> {
        if coords.len() != self.partition.parts.len() {
            return Err(Error::InvalidParameter("coordinate count does not match the partition".into()));
        }
        let mut bits = Vec::with_capacity(self.partition.total());
        for (&c, &k) in coords.iter().zip(&self.partition.parts) {
            if c >= 1 << k {
                return Err(Error::InvalidParameter(format!("level {c} exceeds cutoff {}", 1 << k)));
            }
            bits.extend(index_bits(c, k));
        }
        Ok(bits)
    }

    /// Ising energies indexed by the flat Fock basis of the layout.
    pub fn diagonal(&self, problem: &IsingProblem) -> Result<Vec<f64>> {
        if problem.n() != self.partition.total() {
            return Err(Error::LayoutMismatch(format!("{} spins for {} bits", problem.n(), self.partition.total())));
        }
        let dim = self.layout.dim()?;
        (0..dim)
            .map(|i| {
                let coords: Vec<usize> = self.layout.digits_of(i);
                Ok(problem.energy_bits(&self.coords_to_bits(&coords)?))
            })
            .collect()
    }
}
