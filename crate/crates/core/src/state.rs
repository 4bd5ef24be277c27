//! Dense hybrid statevector.

use crate::error::{Error, Result};
use crate::layout::RegisterLayout;
use crate::linalg::{self, CMatrix, C64, ONE, ZERO};

/// Complex amplitudes over a layout's product space.
///
/// `squared_norm` is bookkept rather than recomputed: unitary gates leave it
/// alone, post-selection replaces it by the retained branch weight, and
/// [`HybridState::normalize`] resets it to one.
#[derive(Debug, Clone, PartialEq)]
pub struct HybridState {
    layout: RegisterLayout,
    amplitudes: Vec<C64>,
    squared_norm: f64,
}

impl HybridState {
    /// All modes in their index-0 level.
    pub fn vacuum(layout: &RegisterLayout) -> Result<Self> {
        let mut amplitudes = vec![ZERO; layout.dim()?];
        amplitudes[0] = ONE;
        Ok(HybridState { layout: layout.clone(), amplitudes, squared_norm: 1.0 })
    }

    /// Vacuum after checking the state fits under `ceiling_bytes`.
    pub fn vacuum_within(layout: &RegisterLayout, ceiling_bytes: u128) -> Result<Self> {
        layout.check_capacity(ceiling_bytes)?;
        Self::vacuum(layout)
    }

    /// Basis state at user coordinates (rotors given as `l`).
    pub fn basis(layout: &RegisterLayout, coords: &[i64]) -> Result<Self> {
        let idx = layout.index_of(coords)?;
        let mut amplitudes = vec![ZERO; layout.dim()?];
        amplitudes[idx] = ONE;
        Ok(HybridState { layout: layout.clone(), amplitudes, squared_norm: 1.0 })
    }

    pub fn from_amplitudes(layout: &RegisterLayout, amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.len() != layout.dim()? {
            return Err(Error::LayoutMismatch(format!(
                "{} amplitudes for dimension {}",
                amplitudes.len(),
                layout.total_dim()
            )));
        }
        let squared_norm = linalg::norm_sqr(&amplitudes);
        Ok(HybridState { layout: layout.clone(), amplitudes, squared_norm })
    }

    /// Tensor product of per-mode vectors, in layout order.
    pub fn product(layout: &RegisterLayout, factors: &[Vec<C64>]) -> Result<Self> {
        if factors.len() != layout.num_modes() {
            return Err(Error::LayoutMismatch(format!(
                "{} factors for {} modes",
                factors.len(),
                layout.num_modes()
            )));
        }
        let mut amps = vec![ONE];
        for (i, f) in factors.iter().enumerate() {
            if f.len() != layout.mode(i).dim() {
                return Err(Error::LayoutMismatch(format!(
                    "factor {i} has length {}, mode has dimension {}",
                    f.len(),
                    layout.mode(i).dim()
                )));
            }
            let mut next = Vec::with_capacity(amps.len() * f.len());
            for a in &amps {
                next.extend(f.iter().map(|b| a * b));
            }
            amps = next;
        }
        Self::from_amplitudes(layout, amps)
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [C64] {
        &mut self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amplitudes
    }

    pub fn squared_norm(&self) -> f64 {
        self.squared_norm
    }

    /// Norm recomputed from the amplitudes.
    pub fn computed_norm_sqr(&self) -> f64 {
        linalg::norm_sqr(&self.amplitudes)
    }

    pub(crate) fn set_squared_norm(&mut self, v: f64) {
        self.squared_norm = v;
    }

    pub fn normalize(&mut self) -> Result<()> {
        let n = self.computed_norm_sqr();
        if n <= 0.0 || !n.is_finite() {
            return Err(Error::ZeroNormBranch);
        }
        let s = 1.0 / n.sqrt();
        for a in &mut self.amplitudes {
            *a *= s;
        }
        self.squared_norm = 1.0;
        Ok(())
    }

    /// `⟨self|other⟩`.
    pub fn inner_product(&self, other: &HybridState) -> Result<C64> {
        if self.layout != other.layout {
            return Err(Error::LayoutMismatch("inner product of states on different layouts".into()));
        }
        Ok(linalg::inner(&self.amplitudes, &other.amplitudes))
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Unnormalized marginal distribution of one mode's digit.
    pub fn marginal(&self, mode: usize) -> Result<Vec<f64>> {
        self.check_mode(mode)?;
        let d = self.layout.mode(mode).dim();
        let stride = self.layout.strides()[mode];
        let mut p = vec![0.0; d];
        for (i, a) in self.amplitudes.iter().enumerate() {
            p[(i / stride) % d] += a.norm_sqr();
        }
        Ok(p)
    }

    /// Unnormalized reduced density matrix of one mode.
    pub fn reduced_density(&self, mode: usize) -> Result<CMatrix> {
        self.check_mode(mode)?;
        let d = self.layout.mode(mode).dim();
        let stride = self.layout.strides()[mode];
        let mut rho = CMatrix::zeros(d, d);
        let block = stride * d;
        for base in (0..self.amplitudes.len()).step_by(block) {
            for low in 0..stride {
                let off = base + low;
                for i in 0..d {
                    let ai = self.amplitudes[off + i * stride];
                    if ai == ZERO {
                        continue;
                    }
                    for j in 0..d {
                        rho[(i, j)] += ai * self.amplitudes[off + j * stride].conj();
                    }
                }
            }
        }
        Ok(rho)
    }

    /// Keeps only the branch where `mode` has raw digit `digit`; amplitudes stay
    /// unnormalized and `squared_norm` becomes the branch weight. Returns it.
    pub fn post_select(&mut self, mode: usize, digit: usize) -> Result<f64> {
        self.check_mode(mode)?;
        let d = self.layout.mode(mode).dim();
        if digit >= d {
            return Err(Error::Index { mode, value: digit as i64 });
        }
        let stride = self.layout.strides()[mode];
        for (i, a) in self.amplitudes.iter_mut().enumerate() {
            if (i / stride) % d != digit {
                *a = ZERO;
            }
        }
        self.squared_norm = self.computed_norm_sqr();
        Ok(self.squared_norm)
    }

    /// `|⟨self|other⟩|²` for normalized inputs.
    pub fn fidelity(&self, other: &HybridState) -> Result<f64> {
        Ok(self.inner_product(other)?.norm_sqr() / (self.computed_norm_sqr() * other.computed_norm_sqr()))
    }

    pub(crate) fn check_mode(&self, mode: usize) -> Result<()> {
        if mode >= self.layout.num_modes() {
            return Err(Error::LayoutMismatch(format!(
                "mode {mode} out of range for {} modes",
                self.layout.num_modes()
            )));
        }
        Ok(())
    }
}
