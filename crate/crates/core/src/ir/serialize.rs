use std::fmt::Write;

use crate::json::fmt_g17;
use crate::layout::ModeKind;

use super::{Circuit, Instruction, MeasureBasis};

/// Canonical text: name, then declarations, then one instruction per line,
/// numbers in `%.17g`.
pub fn serialize(circuit: &Circuit) -> String {
    let mut out = String::new();
    if let Some(name) = circuit.name() {
        let _ = writeln!(out, "circuit {name};");
    }
    for decl in circuit.modes() {
        let _ = match decl.kind {
            ModeKind::Qubit => writeln!(out, "qubit {};", decl.name),
            ModeKind::Qumode { cutoff } => writeln!(out, "qumode[{cutoff}] {};", decl.name),
            ModeKind::Rotor { l_max } => writeln!(out, "rotor[{l_max}] {};", decl.name),
        };
    }
    let name = |m: usize| circuit.modes()[m].name.as_str();
    for instr in circuit.instructions() {
        match instr {
            Instruction::Gate(g) => {
                out.push_str(g.kind.mnemonic());
                for &t in &g.targets {
                    out.push(' ');
                    out.push_str(name(t));
                }
                for &p in &g.params {
                    out.push(' ');
                    out.push_str(&fmt_g17(p));
                }
                out.push_str(";\n");
            }
            Instruction::Measure { mode, basis } => {
                let b = match basis {
                    MeasureBasis::Z => "z".to_string(),
                    MeasureBasis::Fock => "fock".to_string(),
                    MeasureBasis::Homodyne(a) => format!("homodyne {}", fmt_g17(*a)),
                };
                let _ = writeln!(out, "measure {} {b};", name(*mode));
            }
            Instruction::Reset { mode } => {
                let _ = writeln!(out, "reset {};", name(*mode));
            }
            Instruction::Barrier => out.push_str("barrier;\n"),
        }
    }
    out
}
