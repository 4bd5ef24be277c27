use std::fmt;

use crate::engine::kernel::{self, Targets};
use crate::error::{Error, Result};
use crate::layout::RegisterLayout;
use crate::linalg::{self, kron, CMatrix, C64, ZERO};
use crate::operators::{LocalOperator, OperatorMatrix, HERMITIAN_TOL};
use crate::state::HybridState;

/// Largest number of modes a single Trotter block may span.
pub const MAX_BLOCK_MODES: usize = 3;

/// `coeff · Π factors`, each factor a single-mode operator on a distinct mode.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coeff: C64,
    pub factors: Vec<(usize, LocalOperator)>,
}

impl Term {
    /// Sorted mode support.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.factors.iter().map(|f| f.0).collect();
        s.sort_unstable();
        s
    }
}

/// Weighted sum of products of mode-local operators.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct HamiltonianExpr {
    terms: Vec<Term>,
}

/// Terms merged onto a common support, as one local matrix.
#[derive(Debug, Clone)]
pub struct Block {
    pub modes: Vec<usize>,
    pub matrix: CMatrix,
    pub diagonal: bool,
}

impl HamiltonianExpr {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Adds `coeff · Π factors`. An empty factor list is a constant.
    pub fn push(&mut self, coeff: C64, factors: Vec<(usize, LocalOperator)>) -> Result<()> {
        for (i, (m, op)) in factors.iter().enumerate() {
            if op.arity() != 1 {
                return Err(Error::TargetMismatch(format!("factor `{}` must act on one mode", op.name)));
            }
            if factors[..i].iter().any(|(o, _)| o == m) {
                return Err(Error::TargetMismatch(format!("mode {m} appears twice in one term")));
            }
        }
        if coeff != ZERO {
            self.terms.push(Term { coeff, factors });
        }
        Ok(())
    }

    /// Builder form of [`HamiltonianExpr::push`] with a real coefficient.
    pub fn with(mut self, coeff: f64, factors: Vec<(usize, LocalOperator)>) -> Result<Self> {
        self.push(C64::new(coeff, 0.0), factors)?;
        Ok(self)
    }

    pub fn extend(&mut self, other: HamiltonianExpr) {
        self.terms.extend(other.terms);
    }

    pub fn plus(mut self, other: &HamiltonianExpr) -> Self {
        self.terms.extend(other.terms.iter().cloned());
        self
    }

    pub fn scaled(&self, s: C64) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|_| s != ZERO)
            .map(|t| Term { coeff: t.coeff * s, factors: t.factors.clone() })
            .collect();
        HamiltonianExpr { terms }
    }

    /// Conjugate transpose (factors act on distinct modes, so order is free).
    pub fn adjoint(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: t.coeff.conj(),
                factors: t.factors.iter().map(|(m, op)| (*m, op.adjoint())).collect(),
            })
            .collect();
        HamiltonianExpr { terms }
    }

    /// Sum of the constant (factor-free) terms.
    pub fn constant(&self) -> C64 {
        self.terms.iter().filter(|t| t.factors.is_empty()).map(|t| t.coeff).sum()
    }

    fn check_layout(&self, layout: &RegisterLayout) -> Result<()> {
        for t in &self.terms {
            for (m, op) in &t.factors {
                if *m >= layout.num_modes() {
                    return Err(Error::LayoutMismatch(format!("term acts on mode {m}, layout has {}", layout.num_modes())));
                }
                op.check_targets(&[layout.mode(*m)])?;
            }
        }
        Ok(())
    }

    /// Groups terms into local blocks: every maximal support becomes a block
    /// (in order of first appearance) and each smaller support is folded
    /// into the first block containing it. Constants are left out.
    pub fn blocks(&self, layout: &RegisterLayout) -> Result<Vec<Block>> {
        self.check_layout(layout)?;
        let mut supports: Vec<Vec<usize>> = Vec::new();
        for t in &self.terms {
            let s = t.support();
            if !s.is_empty() && !supports.contains(&s) {
                supports.push(s);
            }
        }
        let subset = |a: &[usize], b: &[usize]| a.iter().all(|x| b.contains(x));
        let maximal: Vec<Vec<usize>> = supports
            .iter()
            .filter(|s| !supports.iter().any(|o| o.len() > s.len() && subset(s, o)))
            .cloned()
            .collect();
        if let Some(big) = maximal.iter().find(|s| s.len() > MAX_BLOCK_MODES) {
            return Err(Error::UnsupportedTerm(big.len()));
        }
        let dims = layout.dims();
        let mut blocks: Vec<Block> = maximal
            .iter()
            .map(|s| {
                let d: usize = s.iter().map(|&m| dims[m]).product();
                Block { modes: s.clone(), matrix: CMatrix::zeros(d, d), diagonal: true }
            })
            .collect();
        for t in &self.terms {
            let s = t.support();
            if s.is_empty() {
                continue;
            }
            let b = blocks.iter_mut().find(|b| subset(&s, &b.modes)).expect("support has a maximal superset");
            let mut m = CMatrix::from_element(1, 1, t.coeff);
            let mut diagonal = true;
            for &mode in &b.modes {
                let factor = match t.factors.iter().find(|f| f.0 == mode) {
                    Some((_, op)) => {
                        diagonal &= matches!(op.matrix, OperatorMatrix::Diagonal(_)) || is_diagonal(&op.to_dense());
                        op.to_dense()
                    }
                    None => linalg::identity(dims[mode]),
                };
                m = kron(&m, &factor);
            }
            b.matrix += m;
            b.diagonal &= diagonal;
        }
        Ok(blocks)
    }

    /// Largest entry of `A − A†` over the merged blocks.
    pub fn hermiticity_residual(&self, layout: &RegisterLayout) -> Result<f64> {
        let mut worst = self.constant().im.abs();
        for b in self.blocks(layout)? {
            worst = worst.max(linalg::hermiticity_residual(&b.matrix));
        }
        Ok(worst)
    }

    pub fn check_hermitian(&self, layout: &RegisterLayout) -> Result<()> {
        let r = self.hermiticity_residual(layout)?;
        if r > HERMITIAN_TOL {
            return Err(Error::NotHermitian(r));
        }
        Ok(())
    }

    /// Full-space matrix; meant for oracles on small layouts.
    pub fn to_dense(&self, layout: &RegisterLayout) -> Result<CMatrix> {
        self.check_layout(layout)?;
        let n = layout.dim()?;
        let mut h = CMatrix::zeros(n, n);
        for t in &self.terms {
            let mut m = CMatrix::from_element(1, 1, t.coeff);
            for mode in 0..layout.num_modes() {
                let f = match t.factors.iter().find(|f| f.0 == mode) {
                    Some((_, op)) => op.to_dense(),
                    None => linalg::identity(layout.mode(mode).dim()),
                };
                m = kron(&m, &f);
            }
            h += m;
        }
        Ok(h)
    }

    /// `H|ψ⟩` as a new (unnormalized) state.
    pub fn apply(&self, state: &HybridState) -> Result<HybridState> {
        let layout = state.layout();
        let mut out = vec![ZERO; state.amplitudes().len()];
        let c = self.constant();
        if c != ZERO {
            for (o, a) in out.iter_mut().zip(state.amplitudes()) {
                *o += c * a;
            }
        }
        for b in self.blocks(layout)? {
            let mut tmp = state.amplitudes().to_vec();
            kernel::apply(&mut tmp, &Targets::new(layout, &b.modes), &OperatorMatrix::Dense(b.matrix));
            for (o, x) in out.iter_mut().zip(tmp) {
                *o += x;
            }
        }
        HybridState::from_amplitudes(layout, out)
    }

    /// `⟨ψ|H|ψ⟩ / ⟨ψ|ψ⟩` without the Hermiticity requirement.
    pub fn expectation_complex(&self, state: &HybridState) -> Result<C64> {
        let layout = state.layout();
        let norm = state.computed_norm_sqr();
        if norm <= 0.0 {
            return Err(Error::ZeroNormBranch);
        }
        let mut acc = self.constant() * norm;
        for b in self.blocks(layout)? {
            acc += kernel::expectation(state.amplitudes(), &Targets::new(layout, &b.modes), &b.matrix);
        }
        Ok(acc / norm)
    }
}

fn is_diagonal(m: &CMatrix) -> bool {
    m.iter().enumerate().all(|(k, z)| k % (m.nrows() + 1) == 0 || *z == ZERO)
}

impl fmt::Display for HamiltonianExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({:.4}{:+.4}i)", t.coeff.re, t.coeff.im)?;
            for (m, op) in &t.factors {
                write!(f, " {}[{m}]", op.name)?;
            }
            if t.factors.is_empty() {
                write!(f, " I")?;
            }
        }
        Ok(())
    }
}

/// Real-coefficient helper: `coeff · Π factors`.
pub fn term(coeff: f64, factors: Vec<(usize, LocalOperator)>) -> Result<HamiltonianExpr> {
    HamiltonianExpr::new().with(coeff, factors)
}
