//! Register layouts: ordered qubit/qumode/rotor descriptors and the
//! mixed-radix index space they span.
//!
//! Mode 0 is the most significant digit. Rotor coordinates are angular
//! momenta `l` in `-l_max..=l_max`, stored at digit `l + l_max`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bytes per amplitude for double-precision complex storage.
pub const BYTES_PER_AMPLITUDE: u128 = 16;

/// Default memory ceiling for state allocation (4 GiB).
pub const DEFAULT_MEMORY_CEILING: u128 = 4 << 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModeKind {
    Qubit,
    /// Bosonic mode keeping Fock levels `0..cutoff`.
    Qumode { cutoff: usize },
    /// Planar rotor keeping angular momenta `-l_max..=l_max`.
    Rotor { l_max: usize },
}

impl ModeKind {
    pub fn qumode(cutoff: usize) -> Self {
        ModeKind::Qumode { cutoff }
    }

    pub fn rotor(l_max: usize) -> Self {
        ModeKind::Rotor { l_max }
    }

    pub fn dim(&self) -> usize {
        match *self {
            ModeKind::Qubit => 2,
            ModeKind::Qumode { cutoff } => cutoff,
            ModeKind::Rotor { l_max } => 2 * l_max + 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            ModeKind::Qubit => Ok(()),
            ModeKind::Qumode { cutoff } if cutoff >= 2 => Ok(()),
            ModeKind::Qumode { cutoff } => {
                Err(Error::InvalidMode(format!("qumode cutoff must be >= 2, got {cutoff}")))
            }
            ModeKind::Rotor { l_max } if l_max >= 1 => Ok(()),
            ModeKind::Rotor { .. } => Err(Error::InvalidMode("rotor l_max must be >= 1".into())),
        }
    }

    /// Offset added to a user coordinate to get the digit (nonzero only for rotors).
    pub fn offset(&self) -> i64 {
        match *self {
            ModeKind::Rotor { l_max } => l_max as i64,
            _ => 0,
        }
    }

    pub fn is_qubit(&self) -> bool {
        matches!(self, ModeKind::Qubit)
    }

    pub fn is_qumode(&self) -> bool {
        matches!(self, ModeKind::Qumode { .. })
    }

    pub fn is_rotor(&self) -> bool {
        matches!(self, ModeKind::Rotor { .. })
    }
}

impl fmt::Display for ModeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ModeKind::Qubit => write!(f, "qubit"),
            ModeKind::Qumode { cutoff } => write!(f, "qumode[{cutoff}]"),
            ModeKind::Rotor { l_max } => write!(f, "rotor[{l_max}]"),
        }
    }
}

/// Immutable ordered list of modes with precomputed strides.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RegisterLayout {
    modes: Vec<ModeKind>,
    total_dim: u128,
}

impl RegisterLayout {
    /// Builds a layout subject to the default 4 GiB ceiling.
    pub fn new(modes: Vec<ModeKind>) -> Result<Self> {
        Self::with_ceiling(modes, DEFAULT_MEMORY_CEILING)
    }

    /// Builds a layout whose double-precision state must fit in `ceiling_bytes`.
    pub fn with_ceiling(modes: Vec<ModeKind>, ceiling_bytes: u128) -> Result<Self> {
        let layout = Self::declared(modes)?;
        let required = layout.memory_estimate(BYTES_PER_AMPLITUDE)?;
        if required > ceiling_bytes {
            return Err(Error::Capacity { required, allowed: ceiling_bytes });
        }
        Ok(layout)
    }

    /// Builds a layout without a memory ceiling. Used for declarations that
    /// are only counted (resource estimation), never simulated.
    pub fn declared(modes: Vec<ModeKind>) -> Result<Self> {
        if modes.is_empty() {
            return Err(Error::EmptyLayout);
        }
        let mut total: u128 = 1;
        for m in &modes {
            m.validate()?;
            total = total.checked_mul(m.dim() as u128).ok_or(Error::Overflow("total dimension"))?;
        }
        Ok(RegisterLayout { modes, total_dim: total })
    }

    pub fn modes(&self) -> &[ModeKind] {
        &self.modes
    }

    pub fn num_modes(&self) -> usize {
        self.modes.len()
    }

    pub fn mode(&self, i: usize) -> ModeKind {
        self.modes[i]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.modes.iter().map(ModeKind::dim).collect()
    }

    /// Product of the mode dimensions.
    pub fn total_dim(&self) -> u128 {
        self.total_dim
    }

    /// Total dimension as a `usize`, failing if it cannot be addressed.
    pub fn dim(&self) -> Result<usize> {
        usize::try_from(self.total_dim).map_err(|_| Error::Overflow("addressable dimension"))
    }

    /// Strides for row-major mixed-radix indexing (mode 0 most significant).
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1usize; self.modes.len()];
        for i in (0..self.modes.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1].saturating_mul(self.modes[i + 1].dim());
        }
        strides
    }

    pub fn memory_estimate(&self, bytes_per_amplitude: u128) -> Result<u128> {
        self.total_dim
            .checked_mul(bytes_per_amplitude)
            .ok_or(Error::Overflow("memory estimate"))
    }

    /// Fails with a capacity error unless the state fits under `ceiling_bytes`.
    pub fn check_capacity(&self, ceiling_bytes: u128) -> Result<()> {
        let required = self.memory_estimate(BYTES_PER_AMPLITUDE)?;
        if required > ceiling_bytes {
            return Err(Error::Capacity { required, allowed: ceiling_bytes });
        }
        Ok(())
    }

    /// Mixed-radix index of user coordinates (rotors given as `l`).
    pub fn index_of(&self, coords: &[i64]) -> Result<usize> {
        if coords.len() != self.modes.len() {
            return Err(Error::LayoutMismatch(format!(
                "expected {} coordinates, got {}",
                self.modes.len(),
                coords.len()
            )));
        }
        let mut index: usize = 0;
        for (mode, (kind, &c)) in self.modes.iter().zip(coords).enumerate() {
            let digit = c + kind.offset();
            if digit < 0 || digit >= kind.dim() as i64 {
                return Err(Error::Index { mode, value: c });
            }
            index = index
                .checked_mul(kind.dim())
                .and_then(|i| i.checked_add(digit as usize))
                .ok_or(Error::Overflow("index"))?;
        }
        Ok(index)
    }

    /// Inverse of [`RegisterLayout::index_of`].
    pub fn coords_of(&self, mut index: usize) -> Result<Vec<i64>> {
        if (index as u128) >= self.total_dim {
            return Err(Error::Index { mode: 0, value: index as i64 });
        }
        let mut coords = vec![0i64; self.modes.len()];
        for (i, kind) in self.modes.iter().enumerate().rev() {
            let d = kind.dim();
            coords[i] = (index % d) as i64 - kind.offset();
            index /= d;
        }
        Ok(coords)
    }

    /// Raw digits (no rotor offset) of a flat index.
    pub fn digits_of(&self, mut index: usize) -> Vec<usize> {
        let mut digits = vec![0usize; self.modes.len()];
        for (i, kind) in self.modes.iter().enumerate().rev() {
            let d = kind.dim();
            digits[i] = index % d;
            index /= d;
        }
        digits
    }
}
