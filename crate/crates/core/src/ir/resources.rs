use std::collections::BTreeMap;

use serde::Serialize;

use crate::layout::{ModeKind, BYTES_PER_AMPLITUDE};

use super::{Circuit, Instruction};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ResourceCount {
    /// Gate counts keyed by mnemonic.
    pub gates: BTreeMap<String, usize>,
    pub measurements: usize,
    pub resets: usize,
    pub qubits: usize,
    pub qumodes: usize,
    pub rotors: usize,
    pub max_cutoff: usize,
    /// Product of mode dimensions; `None` if it overflows 128 bits.
    pub total_dim: Option<u128>,
    /// Bytes for a double-precision statevector; `None` on overflow.
    pub memory_bytes: Option<u128>,
}

/// Counts gates and sizes the state without allocating it.
pub fn resource_count(circuit: &Circuit) -> ResourceCount {
    let mut rc = ResourceCount::default();
    let mut total: Option<u128> = if circuit.modes().is_empty() { Some(0) } else { Some(1) };
    for decl in circuit.modes() {
        match decl.kind {
            ModeKind::Qubit => rc.qubits += 1,
            ModeKind::Qumode { cutoff } => {
                rc.qumodes += 1;
                rc.max_cutoff = rc.max_cutoff.max(cutoff);
            }
            ModeKind::Rotor { .. } => rc.rotors += 1,
        }
        total = total.and_then(|t| t.checked_mul(decl.kind.dim() as u128));
    }
    rc.total_dim = total;
    rc.memory_bytes = total.and_then(|t| t.checked_mul(BYTES_PER_AMPLITUDE));
    for instr in circuit.instructions() {
        match instr {
            Instruction::Gate(g) => *rc.gates.entry(g.kind.mnemonic().to_string()).or_default() += 1,
            Instruction::Measure { .. } => rc.measurements += 1,
            Instruction::Reset { .. } => rc.resets += 1,
            Instruction::Barrier => {}
        }
    }
    rc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::parse;

    #[test]
    fn empty_is_zero() {
        let rc = resource_count(&Circuit::new());
        assert!(rc.gates.is_empty());
        assert_eq!(rc.memory_bytes, Some(0));
        assert_eq!(rc.max_cutoff, 0);
    }

    #[test]
    fn counts_by_kind() {
        let c = parse("qumode[4] a; qumode[4] b; dgate a 1 0; dgate b 1 0; dgate a 0 1; bs a b 0.1 0;").unwrap();
        let rc = resource_count(&c);
        assert_eq!(rc.gates.get("dgate"), Some(&3));
        assert_eq!(rc.gates.get("bs"), Some(&1));
        assert_eq!(rc.memory_bytes, Some(16 * 16));
    }

    #[test]
    fn huge_layout_is_only_counted() {
        let mut src = String::new();
        for i in 0..30 {
            src += &format!("qubit q{i};\n");
        }
        for i in 0..10 {
            src += &format!("qumode[16] m{i};\n");
        }
        let rc = resource_count(&parse(&src).unwrap());
        assert_eq!(rc.memory_bytes, Some((1u128 << 30) * 16u128.pow(10) * 16));
    }
}
