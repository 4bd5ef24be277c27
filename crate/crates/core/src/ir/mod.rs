//! Typed textual circuit format (`.hcir`).
//!
//! ```text
//! circuit demo;            // optional name
//! qubit q;
//! qumode[8] m;
//! rotor[4] r;
//! h q;
//! dgate m 1.0 0.0;         // Re α, Im α
//! cdx q m 0.25;
//! measure m fock;
//! measure m homodyne 1.5707963267948966;
//! reset q;
//! ```
//!
//! Mode names must be declared before use. Measurement results are keyed by
//! `(instruction index, mode)`, where declarations do not count as instructions.

mod parse;
mod resources;
mod serialize;
mod validate;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::layout::{ModeKind, RegisterLayout};
use crate::linalg::c;
use crate::operators::{self, LocalOperator, PauliAxis, Quadrature, TargetKind};

pub use parse::parse;
pub use resources::{resource_count, ResourceCount};
pub use serialize::serialize;
pub use validate::validate;

/// 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    /// Instruction index the diagnostic refers to, if any.
    pub instr: Option<usize>,
    pub span: Option<Span>,
    pub message: String,
}

impl Diagnostic {
    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        match self.span {
            Some(s) => write!(f, "{}:{}: {sev}: {}", s.line, s.col, self.message),
            None => write!(f, "{sev}: {}", self.message),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    Dgate,
    Sq,
    Bs,
    Rot,
    Kerr,
    Xkerr,
    Cdx,
    Cdp,
    Cdxx,
    Jc,
    Dft,
    Modadd,
    H,
    X,
    Y,
    Z,
    Rx,
    Ry,
    Rz,
    Cx,
}

impl GateKind {
    pub const ALL: [GateKind; 20] = [
        GateKind::Dgate,
        GateKind::Sq,
        GateKind::Bs,
        GateKind::Rot,
        GateKind::Kerr,
        GateKind::Xkerr,
        GateKind::Cdx,
        GateKind::Cdp,
        GateKind::Cdxx,
        GateKind::Jc,
        GateKind::Dft,
        GateKind::Modadd,
        GateKind::H,
        GateKind::X,
        GateKind::Y,
        GateKind::Z,
        GateKind::Rx,
        GateKind::Ry,
        GateKind::Rz,
        GateKind::Cx,
    ];

    pub fn mnemonic(self) -> &'static str {
        match self {
            GateKind::Dgate => "dgate",
            GateKind::Sq => "sq",
            GateKind::Bs => "bs",
            GateKind::Rot => "rot",
            GateKind::Kerr => "kerr",
            GateKind::Xkerr => "xkerr",
            GateKind::Cdx => "cdx",
            GateKind::Cdp => "cdp",
            GateKind::Cdxx => "cdxx",
            GateKind::Jc => "jc",
            GateKind::Dft => "dft",
            GateKind::Modadd => "modadd",
            GateKind::H => "h",
            GateKind::X => "x",
            GateKind::Y => "y",
            GateKind::Z => "z",
            GateKind::Rx => "rx",
            GateKind::Ry => "ry",
            GateKind::Rz => "rz",
            GateKind::Cx => "cx",
        }
    }

    pub fn from_mnemonic(s: &str) -> Option<GateKind> {
        GateKind::ALL.into_iter().find(|g| g.mnemonic() == s)
    }

    /// Expected kind of each target slot.
    pub fn slots(self) -> &'static [TargetKind] {
        use TargetKind::*;
        match self {
            GateKind::Dgate | GateKind::Sq | GateKind::Kerr => &[Qumode],
            GateKind::Bs | GateKind::Xkerr | GateKind::Modadd => &[Qumode, Qumode],
            GateKind::Rot | GateKind::Dft => &[Bosonic],
            GateKind::Cdx | GateKind::Cdp | GateKind::Cdxx | GateKind::Jc => &[Qubit, Qumode],
            GateKind::H | GateKind::X | GateKind::Y | GateKind::Z | GateKind::Rx | GateKind::Ry | GateKind::Rz => {
                &[Qubit]
            }
            GateKind::Cx => &[Qubit, Qubit],
        }
    }

    pub fn num_params(self) -> usize {
        match self {
            GateKind::Dgate | GateKind::Sq | GateKind::Bs => 2,
            GateKind::Rot
            | GateKind::Kerr
            | GateKind::Xkerr
            | GateKind::Cdx
            | GateKind::Cdp
            | GateKind::Cdxx
            | GateKind::Jc
            | GateKind::Rx
            | GateKind::Ry
            | GateKind::Rz => 1,
            _ => 0,
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.mnemonic())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GateSpec {
    pub kind: GateKind,
    pub targets: Vec<usize>,
    pub params: Vec<f64>,
}

impl GateSpec {
    pub fn new(kind: GateKind, targets: &[usize], params: &[f64]) -> Self {
        GateSpec { kind, targets: targets.to_vec(), params: params.to_vec() }
    }

    /// Builds the operator for this gate on `layout`. Assumes a validated gate.
    pub fn operator(&self, layout: &RegisterLayout) -> Result<LocalOperator> {
        let dim = |slot: usize| layout.mode(self.targets[slot]).dim();
        let p = |i: usize| self.params[i];
        let d_last = dim(self.targets.len() - 1);
        let op = match self.kind {
            GateKind::Dgate => operators::displacement(c(p(0), p(1)), d_last)?,
            GateKind::Sq => operators::squeeze(num_complex::Complex64::from_polar(p(0), p(1)), d_last)?,
            GateKind::Bs => operators::beamsplitter(p(0), p(1), dim(0), dim(1))?,
            GateKind::Rot => match layout.mode(self.targets[0]) {
                ModeKind::Rotor { l_max } => operators::phase_displacement(p(0), l_max),
                _ => operators::phase_rotation(p(0), d_last),
            },
            GateKind::Kerr => operators::kerr(p(0), d_last),
            GateKind::Xkerr => operators::cross_kerr(p(0), dim(0), dim(1)),
            GateKind::Cdx => operators::conditional_displacement(PauliAxis::Z, p(0), Quadrature::X, d_last)?,
            GateKind::Cdp => operators::conditional_displacement(PauliAxis::Z, p(0), Quadrature::P, d_last)?,
            GateKind::Cdxx => operators::conditional_displacement(PauliAxis::X, p(0), Quadrature::X, d_last)?,
            GateKind::Jc => operators::jaynes_cummings_gate(p(0), d_last)?,
            GateKind::Dft => operators::fock_dft(d_last)?,
            GateKind::Modadd => operators::modular_add(d_last)?,
            GateKind::H => operators::hadamard(),
            GateKind::X => operators::pauli('x'),
            GateKind::Y => operators::pauli('y'),
            GateKind::Z => operators::pauli('z'),
            GateKind::Rx => operators::qubit_rotation('x', p(0)),
            GateKind::Ry => operators::qubit_rotation('y', p(0)),
            GateKind::Rz => operators::qubit_rotation('z', p(0)),
            GateKind::Cx => operators::cnot(),
        };
        Ok(op)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum MeasureBasis {
    /// Computational basis of a qubit.
    Z,
    /// Number basis of a qumode, angular momentum of a rotor.
    Fock,
    /// Rotated quadrature `x cos θ + p sin θ`; 0 is `x`, π/2 is `p`.
    Homodyne(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Instruction {
    Gate(GateSpec),
    Measure { mode: usize, basis: MeasureBasis },
    Reset { mode: usize },
    Barrier,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeDecl {
    pub name: String,
    pub kind: ModeKind,
}

/// Declared modes plus an ordered instruction list.
///
/// Source positions are carried alongside for diagnostics but do not take
/// part in equality, so a parsed circuit equals its programmatic twin.
#[derive(Debug, Clone, Default)]
pub struct Circuit {
    name: Option<String>,
    modes: Vec<ModeDecl>,
    instructions: Vec<Instruction>,
    spans: Vec<Option<Span>>,
}

impl PartialEq for Circuit {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.modes == other.modes && self.instructions == other.instructions
    }
}

impl Circuit {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn named(name: &str) -> Self {
        Circuit { name: Some(name.to_string()), ..Self::default() }
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn modes(&self) -> &[ModeDecl] {
        &self.modes
    }

    pub fn instructions(&self) -> &[Instruction] {
        &self.instructions
    }

    pub fn span(&self, instr: usize) -> Option<Span> {
        self.spans.get(instr).copied().flatten()
    }

    pub fn mode_index(&self, name: &str) -> Option<usize> {
        self.modes.iter().position(|m| m.name == name)
    }

    /// Layout of the declared modes, without a memory ceiling.
    pub fn layout(&self) -> Result<RegisterLayout> {
        RegisterLayout::declared(self.modes.iter().map(|m| m.kind).collect())
    }

    /// Declares a mode and returns its index.
    pub fn declare(&mut self, name: &str, kind: ModeKind) -> Result<usize> {
        kind.validate()?;
        if !is_identifier(name) || parse::is_keyword(name) {
            return Err(Error::InvalidParameter(format!("`{name}` is not a usable mode name")));
        }
        if self.mode_index(name).is_some() {
            return Err(Error::InvalidParameter(format!("mode `{name}` declared twice")));
        }
        self.modes.push(ModeDecl { name: name.to_string(), kind });
        Ok(self.modes.len() - 1)
    }

    pub fn qubit(&mut self, name: &str) -> Result<usize> {
        self.declare(name, ModeKind::Qubit)
    }

    pub fn qumode(&mut self, name: &str, cutoff: usize) -> Result<usize> {
        self.declare(name, ModeKind::qumode(cutoff))
    }

    pub fn rotor(&mut self, name: &str, l_max: usize) -> Result<usize> {
        self.declare(name, ModeKind::rotor(l_max))
    }

    /// Appends an instruction after type-checking it; leakage warnings are logged.
    pub fn push(&mut self, instr: Instruction) -> Result<()> {
        let diags = validate::check_instruction(&self.modes, &instr, self.instructions.len(), None);
        let errors: Vec<Diagnostic> = diags.iter().filter(|d| d.is_error()).cloned().collect();
        if !errors.is_empty() {
            return Err(Error::Validation(errors));
        }
        for w in diags {
            log::warn!("{w}");
        }
        self.instructions.push(instr);
        self.spans.push(None);
        Ok(())
    }

    pub fn gate(&mut self, kind: GateKind, targets: &[usize], params: &[f64]) -> Result<&mut Self> {
        self.push(Instruction::Gate(GateSpec::new(kind, targets, params)))?;
        Ok(self)
    }

    pub fn measure(&mut self, mode: usize, basis: MeasureBasis) -> Result<&mut Self> {
        self.push(Instruction::Measure { mode, basis })?;
        Ok(self)
    }

    pub fn reset(&mut self, mode: usize) -> Result<&mut Self> {
        self.push(Instruction::Reset { mode })?;
        Ok(self)
    }

    pub fn barrier(&mut self) -> &mut Self {
        self.instructions.push(Instruction::Barrier);
        self.spans.push(None);
        self
    }

    pub(crate) fn push_unchecked(&mut self, instr: Instruction, span: Span) {
        self.instructions.push(instr);
        self.spans.push(Some(span));
    }

    pub(crate) fn set_name(&mut self, name: String) {
        self.name = Some(name);
    }

    pub(crate) fn push_decl(&mut self, decl: ModeDecl) {
        self.modes.push(decl);
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(ch) if ch.is_ascii_alphabetic() || ch == '_' => {}
        _ => return false,
    }
    chars.all(|ch| ch.is_ascii_alphanumeric() || ch == '_')
}
