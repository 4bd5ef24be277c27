use num_complex::Complex64;

use crate::layout::ModeKind;
use crate::operators;

use super::{Circuit, Diagnostic, GateKind, Instruction, MeasureBasis, ModeDecl, Severity, Span};

/// Static checks over every instruction, in program order.
///
/// Errors: target count, parameter count, unknown or repeated targets, kind
/// mismatches, unequal cutoffs for `modadd`, non-finite parameters, and
/// measurements in a basis the mode does not support. Warnings: parameters
/// that push a qumode's occupation past a quarter of its cutoff.
pub fn validate(circuit: &Circuit) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for (i, instr) in circuit.instructions().iter().enumerate() {
        out.extend(check_instruction(circuit.modes(), instr, i, circuit.span(i)));
    }
    out
}

pub(crate) fn check_instruction(
    modes: &[ModeDecl],
    instr: &Instruction,
    index: usize,
    span: Option<Span>,
) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    let mut error = |message: String| {
        diags.push(Diagnostic { severity: Severity::Error, instr: Some(index), span, message });
    };
    let name = |m: usize| modes[m].name.as_str();
    match instr {
        Instruction::Barrier => {}
        Instruction::Reset { mode } => {
            if *mode >= modes.len() {
                error(format!("reset of undeclared mode #{mode}"));
            }
        }
        Instruction::Measure { mode, basis } => {
            if *mode >= modes.len() {
                error(format!("measurement of undeclared mode #{mode}"));
                return diags;
            }
            let kind = modes[*mode].kind;
            match basis {
                MeasureBasis::Z if !kind.is_qubit() => {
                    error(format!("z measurement needs a qubit, `{}` is {kind}", name(*mode)))
                }
                MeasureBasis::Fock if kind.is_qubit() => {
                    error(format!("fock measurement needs a qumode or rotor, `{}` is a qubit", name(*mode)))
                }
                MeasureBasis::Homodyne(_) if !kind.is_qumode() => {
                    error(format!("homodyne measurement needs a qumode, `{}` is {kind}", name(*mode)))
                }
                MeasureBasis::Homodyne(a) if !a.is_finite() => error("homodyne angle must be finite".into()),
                _ => {}
            }
        }
        Instruction::Gate(g) => {
            let slots = g.kind.slots();
            if g.targets.len() != slots.len() {
                error(format!("{} acts on {} mode(s), {} given", g.kind, slots.len(), g.targets.len()));
            }
            if g.params.len() != g.kind.num_params() {
                error(format!("{} takes {} parameter(s), {} given", g.kind, g.kind.num_params(), g.params.len()));
            }
            if g.params.iter().any(|p| !p.is_finite()) {
                error(format!("{} parameters must be finite", g.kind));
            }
            for &t in &g.targets {
                if t >= modes.len() {
                    error(format!("{} targets undeclared mode #{t}", g.kind));
                }
            }
            if diags.iter().any(Diagnostic::is_error) {
                return diags;
            }
            let mut error = |message: String| {
                diags.push(Diagnostic { severity: Severity::Error, instr: Some(index), span, message });
            };
            for (slot, (&t, want)) in g.targets.iter().zip(slots).enumerate() {
                let kind = modes[t].kind;
                if !want.accepts(&kind) {
                    let need = match want {
                        operators::TargetKind::Qubit => "a qubit",
                        operators::TargetKind::Qumode => "a qumode",
                        operators::TargetKind::Rotor => "a rotor",
                        operators::TargetKind::Bosonic => "a qumode or rotor",
                        operators::TargetKind::Any => "a mode",
                    };
                    let all_qumodes = slots.iter().all(|s| *s == operators::TargetKind::Qumode);
                    let what = if all_qumodes && slots.len() > 1 { "qumodes".to_string() } else { need.to_string() };
                    error(format!(
                        "{} requires {what} in slot {slot}, `{}` is {kind}",
                        g.kind,
                        name(t)
                    ));
                }
            }
            for (i, &t) in g.targets.iter().enumerate() {
                if g.targets[..i].contains(&t) {
                    error(format!("{} targets `{}` twice", g.kind, name(t)));
                }
            }
            if g.kind == GateKind::Modadd && modes[g.targets[0]].kind.dim() != modes[g.targets[1]].kind.dim() {
                error(format!(
                    "modadd needs equal cutoffs, got {} and {}",
                    modes[g.targets[0]].kind.dim(),
                    modes[g.targets[1]].kind.dim()
                ));
            }
            if diags.iter().any(Diagnostic::is_error) {
                return diags;
            }
            let cutoff = |slot: usize| match modes[g.targets[slot]].kind {
                ModeKind::Qumode { cutoff } => cutoff,
                _ => usize::MAX,
            };
            let warning = match g.kind {
                GateKind::Dgate => operators::displacement_leakage(Complex64::new(g.params[0], g.params[1]), cutoff(0)),
                GateKind::Sq => operators::squeeze_leakage(g.params[0].abs(), cutoff(0)),
                GateKind::Cdx | GateKind::Cdp | GateKind::Cdxx => operators::conditional_leakage(g.params[0], cutoff(1)),
                _ => None,
            };
            if let Some(message) = warning {
                diags.push(Diagnostic { severity: Severity::Warning, instr: Some(index), span, message });
            }
        }
    }
    diags
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::{parse, GateSpec};

    #[test]
    fn valid_circuit_is_clean() {
        let c = parse("qubit q; qumode[8] m; h q; cdx q m 0.3; measure q z; measure m fock;").unwrap();
        assert!(validate(&c).is_empty());
    }

    #[test]
    fn leakage_warning() {
        let c = parse("qumode[8] m; dgate m 5 0;").unwrap();
        let d = validate(&c);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].severity, Severity::Warning);
        assert_eq!(d[0].span, Some(Span { line: 1, col: 14 }));
    }

    #[test]
    fn error_cases_carry_positions() {
        let cases = [
            "qubit q;\nmeasure q fock;",
            "qumode[4] m;\nmeasure m z;",
            "rotor[2] r;\nmeasure r homodyne 0;",
            "qumode[4] m;\ndgate m 1;",
            "qumode[4] m; qumode[4] n;\ndgate m n 1 0;",
            "qumode[4] m;\nbs m m 0.1 0;",
            "qumode[4] m; qumode[5] n;\nmodadd m n;",
            "qubit q; qumode[4] m;\ncdx m q 0.1;",
            "qubit q;\nrot q 0.5;",
        ];
        for src in cases {
            match parse(src) {
                Err(crate::Error::Validation(d)) => {
                    assert!(d.iter().all(|x| x.span.map(|s| s.line) == Some(2)), "{src}: {d:?}");
                }
                other => panic!("{src}: {other:?}"),
            }
        }
    }

    #[test]
    fn out_of_range_target() {
        let modes = vec![ModeDecl { name: "q".into(), kind: ModeKind::Qubit }];
        let instr = Instruction::Gate(GateSpec::new(GateKind::H, &[3], &[]));
        let d = check_instruction(&modes, &instr, 0, None);
        assert!(d[0].is_error());
    }
}
