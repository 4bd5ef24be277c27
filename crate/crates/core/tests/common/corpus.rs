//! Seeded generator of well-typed circuits.

use cvdv::ir::{Circuit, GateKind, Instruction, MeasureBasis};
use cvdv::operators::TargetKind;
use cvdv::ModeKind;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn draw_param(rng: &mut ChaCha8Rng) -> f64 {
    match rng.random_range(0..4) {
        0 => rng.random_range(-3.0..3.0),
        1 => rng.random_range(-1.0..1.0) * 10f64.powi(rng.random_range(-300..300)),
        2 => rng.random_range(-5..5) as f64,
        _ => f64::from_bits(rng.random::<u64>() & !(0x7ffu64 << 52)) * if rng.random() { 1.0 } else { -1.0 },
    }
}

fn fits(slot: TargetKind, kind: ModeKind) -> bool {
    match slot {
        TargetKind::Qubit => kind == ModeKind::Qubit,
        TargetKind::Qumode => matches!(kind, ModeKind::Qumode { .. }),
        TargetKind::Bosonic => kind != ModeKind::Qubit,
        TargetKind::Rotor => matches!(kind, ModeKind::Rotor { .. }),
        TargetKind::Any => true,
    }
}

/// Random well-typed circuit; instructions the builder rejects are skipped.
pub fn generate(seed: u64) -> Circuit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = if rng.random_bool(0.5) { Circuit::named(&format!("c{seed}")) } else { Circuit::new() };
    let n_modes = rng.random_range(1..=6);
    let mut kinds = Vec::new();
    for m in 0..n_modes {
        let kind = match rng.random_range(0..3) {
            0 => ModeKind::Qubit,
            1 => ModeKind::qumode(*[2, 3, 4, 8, 16].choose(&mut rng).unwrap()),
            _ => ModeKind::rotor(rng.random_range(1..=6)),
        };
        c.declare(&format!("m{m}"), kind).unwrap();
        kinds.push(kind);
    }
    for _ in 0..rng.random_range(0..30) {
        match rng.random_range(0..10) {
            0 => {
                let m = rng.random_range(0..n_modes);
                let basis = match kinds[m] {
                    ModeKind::Qubit => MeasureBasis::Z,
                    ModeKind::Qumode { .. } if rng.random_bool(0.5) => MeasureBasis::Homodyne(draw_param(&mut rng)),
                    _ => MeasureBasis::Fock,
                };
                c.measure(m, basis).unwrap();
            }
            1 => {
                c.reset(rng.random_range(0..n_modes)).unwrap();
            }
            2 => {
                c.barrier();
            }
            _ => {
                let kind = *GateKind::ALL.choose(&mut rng).unwrap();
                let mut targets = Vec::new();
                for &slot in kind.slots() {
                    let free: Vec<usize> = (0..n_modes).filter(|m| !targets.contains(m) && fits(slot, kinds[*m])).collect();
                    match free.choose(&mut rng) {
                        Some(&m) => targets.push(m),
                        None => break,
                    }
                }
                if targets.len() == kind.slots().len() {
                    let params: Vec<f64> = (0..kind.num_params()).map(|_| draw_param(&mut rng)).collect();
                    let _ = c.gate(kind, &targets, &params);
                }
            }
        }
    }
    c
}

pub fn param_bits(c: &Circuit) -> Vec<u64> {
    c.instructions()
        .iter()
        .flat_map(|i| match i {
            Instruction::Gate(g) => g.params.clone(),
            Instruction::Measure { basis: MeasureBasis::Homodyne(a), .. } => vec![*a],
            _ => vec![],
        })
        .map(f64::to_bits)
        .collect()
}


/// Every validator error class, with the offending statement on the last line.
pub const TYPE_ERRORS: [&str; 10] = [
    "qubit q;\nmeasure q fock;",
    "qumode[4] m;\nmeasure m z;",
    "rotor[2] r;\nmeasure r homodyne 0;",
    "qumode[4] m;\ndgate m 1;",
    "qumode[4] m; qumode[4] n;\ndgate m n 1 0;",
    "qumode[4] m;\nbs m m 0.1 0;",
    "qumode[4] m; qumode[5] n;\nmodadd m n;",
    "qubit q; qumode[4] m;\ncdx m q 0.1;",
    "qubit q;\nrot q 0.5;",
    "qubit a; qubit b;\ncx a;",
];

pub const SYNTAX_ERRORS: [(&str, usize); 6] = [
    ("qubit q;\n  foo q;", 3),
    ("qumode[8] m;\ndgate n 1 0;", 7),
    ("qubit q;\nh q $;", 5),
    ("qubit q;\nqubit q;", 7),
    ("qubit q;\nmeasure q bogus;", 11),
    ("qumode[4] m;\ndgate m 1.2.3 0;", 9),
];
