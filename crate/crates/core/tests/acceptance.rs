//! Acceptance suite: one PASS/FAIL line per primary criterion.
//!
//! Runs without the libtest harness so the lines always reach stdout;
//! the process exits non-zero when any criterion fails.

mod common;

use std::f64::consts::PI;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::corpus::{generate, param_bits, TYPE_ERRORS};
use common::gates::{gate_errors, param_range};
use common::{apply, commutator_norm, diagonal, dist, evolve_dense, lchs_kernel_oracle, simpson};
use cvdv::algorithms::*;
use cvdv::engine::{evolve_trotter, measure_fock, measure_homodyne, survival_probability};
use cvdv::hamiltonian::*;
use cvdv::ir::{self, GateKind};
use cvdv::linalg::{c, from_diagonal, CMatrix, C64};
use cvdv::rng::shot_rng;
use cvdv::{states, Error, HybridState, ModeKind, RegisterLayout};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(ok: bool, detail: String) -> Check {
    if ok { Ok(detail) } else { Err(detail) }
}

fn classical_order(a: u64, n: u64) -> u64 {
    let mut x = a % n;
    let mut r = 1;
    while x != 1 {
        x = x * a % n;
        r += 1;
    }
    r
}

fn trial_division(n: u64) -> [u64; 2] {
    let p = (2..n).find(|d| n % d == 0).unwrap();
    [p, n / p]
}

fn shor() -> Check {
    let mut notes = Vec::new();
    for (n, a, want) in [(15, 7, 4), (15, 4, 2), (21, 2, 6)] {
        assert_eq!(classical_order(a, n), want);
        let grid = default_grid(n);
        let start = Instant::now();
        let r = cvdv_shor_period(n, a, grid, default_delta(grid), 20, 1).map_err(|e| format!("({n},{a}): {e}"))?;
        let secs = start.elapsed().as_secs_f64();
        if r.r != want || r.attempts > 20 || grid > 512 || secs >= 60.0 {
            return Err(format!("({n},{a}) gave r={} after {} attempts, grid {grid}, {secs:.1}s", r.r, r.attempts));
        }
        notes.push(format!("({n},{a})→{} in {} tries", r.r, r.attempts));
    }
    for n in [15, 21] {
        let f = shor_factor(n, 20, 1).map_err(|e| format!("factor {n}: {e}"))?;
        if f.factors != trial_division(n) {
            return Err(format!("factor {n} gave {:?}", f.factors));
        }
        notes.push(format!("{n}={}·{}", f.factors[0], f.factors[1]));
    }
    Ok(notes.join(", "))
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 { v[n / 2] } else { 0.5 * (v[n / 2 - 1] + v[n / 2]) }
}

fn rotor_qpe_scaling() -> Check {
    let bound = 2.0 * 2.0 * PI / 129.0;
    let e = [c(0.0, 0.0), c(1.0, 0.0)];
    let mut notes = Vec::new();
    let mut ok = true;
    for theta in [PI / 2.0, 1.0, 2.7] {
        let u = from_diagonal(&[c(1.0, 0.0), C64::from_polar(1.0, theta)]);
        let med = |l_max: usize| -> Result<f64, String> {
            let errs = (0..50)
                .map(|seed| rotor_qpe(&u, &e, l_max, Window::Gaussian, 32, seed).map(|r| phase_distance(r.theta, theta)))
                .collect::<cvdv::Result<Vec<f64>>>()
                .map_err(|e| e.to_string())?;
            Ok(median(errs))
        };
        let (m64, m128) = (med(64)?, med(128)?);
        let ratio = m64 / m128;
        ok &= m64 <= bound && (2.0 / 1.5..=2.0 * 1.5).contains(&ratio);
        notes.push(format!("θ={theta:.3}: {m64:.4}/{m128:.4} ratio {ratio:.2}"));
    }
    ensure(ok, format!("{} (bound {bound:.4})", notes.join("; ")))
}

fn rel_err(got: &[C64], want: &[C64]) -> f64 {
    dist(got, want) / want.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn lchs() -> Check {
    let a = from_diagonal(&[c(1.0, 0.0), c(2.0, 0.0)]);
    let s = 0.5f64.sqrt();
    let u0 = [c(s, 0.0), c(s, 0.0)];
    let want = [c(s * (-0.5f64).exp(), 0.0), c(s * (-1.0f64).exp(), 0.0)];
    let spec = LchsSpec { beta: 0.8, ..LchsSpec::default() };
    let r = lchs_solve(&a, &u0, 0.5, &spec, LchsMode::StatevectorExact, 0).map_err(|e| e.to_string())?;
    let err = rel_err(&r.u, &want);
    let norm = simpson(|k| lchs_kernel_oracle(0.8, k), -200.0, 200.0, 400_000);
    let norm_err = (norm - c(1.0, 0.0)).norm();
    let h = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(-1.0, 0.0)]);
    let skew = &h * c(0.0, 1.0);
    let ru = lchs_solve(&skew, &u0, 0.5, &spec, LchsMode::StatevectorExact, 0).map_err(|e| e.to_string())?;
    let unitary_err = dist(&ru.u, &apply(&evolve_dense(&h, 0.5), &u0));
    ensure(
        err <= 1e-2 && norm_err <= 1e-4 && unitary_err <= 1e-3,
        format!("rel err {err:.2e}, ∫g−1 {norm_err:.1e}, unitary limit {unitary_err:.1e}, p_s {:.4}", r.success_probability),
    )
}

fn operator_fidelity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut worst, mut worst_unit) = (0.0f64, 0.0f64);
    let draws = 240;
    for k in 0..draws {
        // cycle through every gate so each kind gets a dozen draws
        let kind = GateKind::ALL[k % GateKind::ALL.len()];
        let params = [rng.random_range(-1.0..1.0) * param_range(kind), rng.random_range(-PI..PI)];
        let params = if kind == GateKind::Sq { [params[0].abs(), params[1]] } else { params };
        let (d1, d2) = (rng.random_range(2..=16), rng.random_range(2..=16));
        let (err, unit) = gate_errors(kind, &params, d1, d2, rng.random_bool(0.5));
        worst = worst.max(err);
        worst_unit = worst_unit.max(unit);
    }
    ensure(worst <= 1e-10 && worst_unit <= 1e-10, format!("{draws} draws, max dev {worst:.1e}, unitarity {worst_unit:.1e}"))
}

fn trotter() -> Check {
    let (h, l) = build_bose_hubbard(3, 1.0, 1.0, 0.0, Interaction::Repulsive, 4, Boundary::Open).map_err(|e| e.to_string())?;
    let psi0 = HybridState::basis(&l, &[2, 0, 1]).map_err(|e| e.to_string())?;
    let exact = apply(&evolve_dense(&h.to_dense(&l).unwrap(), 1.0), psi0.amplitudes());
    let errs: Vec<f64> = [8, 16, 32]
        .iter()
        .map(|&steps| {
            let mut psi = psi0.clone();
            evolve_trotter(&mut psi, &h, 1.0, steps).unwrap();
            dist(psi.amplitudes(), &exact)
        })
        .collect();
    let ratios: Vec<f64> = errs.windows(2).map(|w| w[0] / w[1]).collect();
    ensure(ratios.iter().all(|r| (3.5..=4.5).contains(r)), format!("errors {}, ratios {ratios:.3?}", errs.iter().map(|e| format!("{e:.2e}")).collect::<Vec<_>>().join(" ")))
}

fn brute_force(q: &QuboProblem) -> f64 {
    (0..1usize << q.n()).map(|i| q.value(&index_bits(i, q.n()))).fold(f64::INFINITY, f64::min)
}

fn qubo_encodings() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let partitions = partitions_without_ones(8);
    for trial in 0..20 {
        let mut m = vec![vec![0.0; 8]; 8];
        for i in 0..8 {
            for j in i..8 {
                let v = if trial % 2 == 0 { rng.random_range(-3.0..3.0) } else { rng.random_range(-2..=2) as f64 };
                m[i][j] = v;
                m[j][i] = v;
            }
        }
        let q = QuboProblem::new(m).map_err(|e| e.to_string())?;
        let best = brute_force(&q);
        let is = qubo_to_ising(&q);
        for part in &partitions {
            let enc = fock_partition_encode(8, part).map_err(|e| e.to_string())?;
            let diag = enc.diagonal(&is).map_err(|e| e.to_string())?;
            let arg = (0..diag.len()).min_by(|&a, &b| diag[a].total_cmp(&diag[b])).unwrap();
            let bits = enc.coords_to_bits(&enc.layout.digits_of(arg)).map_err(|e| e.to_string())?;
            if (diag[arg] - best).abs() > 1e-9 || (q.value(&bits) - best).abs() > 1e-9 {
                return Err(format!("trial {trial}, partition {:?}: {} vs {best}", part.parts(), diag[arg]));
            }
        }
    }
    let tri = QuboProblem::maxcut(3, &[(0, 1), (1, 2), (0, 2)]).map_err(|e| e.to_string())?;
    let is = qubo_to_ising(&tri);
    let mut wins = 0;
    for seed in 0..10 {
        let r = vqa_optimize(&is, &Encoding::Qubits, 1, 300, seed).map_err(|e| e.to_string())?;
        if r.evaluations <= 300 && -tri.value(&r.assignment) == 2.0 {
            wins += 1;
        }
    }
    ensure(wins >= 8, format!("20 QUBOs × {} partitions agree; triangle cut 2 in {wins}/10 seeds", partitions.len()))
}

fn statistics() -> Check {
    const N: usize = 10_000;
    let layout = RegisterLayout::new(vec![ModeKind::qumode(16)]).unwrap();
    let vac = HybridState::vacuum(&layout).unwrap();
    let mut rng = shot_rng(5, 0);
    let xs: Vec<f64> = (0..N).map(|_| measure_homodyne(&mut vac.clone(), 0, 0.0, &mut rng).unwrap()).collect();
    let mean = xs.iter().sum::<f64>() / N as f64;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (N - 1) as f64;
    let alpha = C64::new(1.0, 0.5);
    let layout = RegisterLayout::new(vec![ModeKind::qumode(30)]).unwrap();
    let coh = HybridState::from_amplitudes(&layout, states::coherent(alpha, 30)).unwrap();
    let mut rng = shot_rng(6, 0);
    let total: usize = (0..N).map(|_| measure_fock(&mut coh.clone(), 0, &mut rng).unwrap()).sum();
    let n_mean = total as f64 / N as f64;
    let n_bar = alpha.norm_sqr();
    let sigma = (n_bar / N as f64).sqrt();
    ensure(
        (var - 0.5).abs() <= 0.02 && (n_mean - n_bar).abs() <= 3.0 * sigma,
        format!("vacuum var {var:.4}; Fock mean {n_mean:.4} vs |α|² {n_bar} (3σ {:.4})", 3.0 * sigma),
    )
}

fn ir_checks() -> Check {
    for seed in 0..200 {
        let c = generate(seed);
        let text = ir::serialize(&c);
        let back = ir::parse(&text).map_err(|e| format!("corpus {seed}: {e}"))?;
        if back != c || param_bits(&back) != param_bits(&c) {
            return Err(format!("corpus {seed} changed on round trip"));
        }
    }
    for src in TYPE_ERRORS {
        match ir::parse(src) {
            Err(Error::Validation(d)) if d.iter().all(|x| x.span.is_some_and(|s| s.line == 2 && s.col >= 1)) => {}
            other => return Err(format!("{src:?}: {other:?}")),
        }
    }
    let src: String = (0..30).map(|i| format!("qubit q{i};\nh q{i};\n")).collect();
    let c = ir::parse(&src).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let rc = ir::resource_count(&c);
    let elapsed = start.elapsed();
    ensure(
        rc.total_dim == Some(1 << 30) && elapsed < Duration::from_millis(10),
        format!("200 circuits round-trip, {} error classes located, 2^30 counted in {elapsed:?}", TYPE_ERRORS.len()),
    )
}

fn physics() -> Check {
    let fail = |e: Error| e.to_string();
    let (h, l) = build_bose_hubbard(3, 1.0, 1.0, 0.0, Interaction::Repulsive, 4, Boundary::Open).map_err(fail)?;
    let n_tot = diagonal(l.dim().unwrap(), |i| l.digits_of(i).iter().sum::<usize>() as f64);
    let bh = commutator_norm(&h.to_dense(&l).unwrap(), &n_tot);

    let (h, l) = build_tavis_cummings(&[0.9], &[vec![0.0]], &[1.0], 0.3, &[6]).map_err(fail)?;
    let m = h.to_dense(&l).unwrap();
    // excitations: occupied qubit plus bosons
    let exc = diagonal(l.dim().unwrap(), |i| l.digits_of(i).iter().sum::<usize>() as f64);
    let jc = commutator_norm(&m, &exc);

    let spec = SpinBosonSpec {
        eps: vec![0.5],
        delta: vec![0.0],
        couplings: vec![],
        bath: Bath::Explicit { omega: vec![1.0, 1.7], couplings: vec![vec![0.2, 0.1]] },
    };
    let (h, l) = build_spin_boson(&spec, &[3]).map_err(fail)?;
    let z = diagonal(l.dim().unwrap(), |i| if l.digits_of(i)[0] == 0 { 1.0 } else { -1.0 });
    let sb = commutator_norm(&h.to_dense(&l).unwrap(), &z);

    let (h, l) = build_tavis_cummings(&[1.0], &[vec![0.0]], &[1.0], 0.4, &[4]).map_err(fail)?;
    let s = 0.5f64.sqrt();
    let mut amps = vec![c(0.0, 0.0); l.dim().unwrap()];
    amps[l.index_of(&[1, 0]).unwrap()] = c(s, 0.0);
    amps[l.index_of(&[0, 1]).unwrap()] = c(s, 0.0);
    let eig = HybridState::from_amplitudes(&l, amps).map_err(fail)?;
    let surv = [0.3, 2.0, 11.0]
        .iter()
        .map(|&t| survival_probability(&eig, &h, t, 7).map(|p| (p - 1.0).abs()))
        .collect::<cvdv::Result<Vec<f64>>>()
        .map_err(fail)?
        .into_iter()
        .fold(0.0, f64::max);

    let p = LvcParams { delta: 0.3, kappa_g: 0.4, lambda_h: 0.1, omega_g: 1.0, omega_h: 1.5 };
    let (h, l) = build_lvc_two_mode(&p, [8, 8]).map_err(fail)?;
    let m = h.to_dense(&l).unwrap();
    let start = HybridState::basis(&l, &[0, 0, 0]).map_err(fail)?;
    let upper = |v: &[C64]| -> f64 { (0..v.len()).filter(|&i| l.digits_of(i)[0] == 0).map(|i| v[i].norm_sqr()).sum() };
    let mut state = start.clone();
    let mut lvc: f64 = 0.0;
    for k in 1..=10 {
        evolve_trotter(&mut state, &h, 0.5, 400).map_err(fail)?;
        let exact = apply(&evolve_dense(&m, 0.5 * k as f64), start.amplitudes());
        lvc = lvc.max((upper(state.amplitudes()) - upper(&exact)).abs());
    }
    ensure(
        bh < 1e-12 && jc < 1e-12 && sb < 1e-12 && surv < 1e-8 && lvc <= 1e-6,
        format!("[H,N] {bh:.0e}, JC {jc:.0e}, Δ=0 σz {sb:.0e}, survival {surv:.0e}, LVC trace {lvc:.1e}"),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("Shor end-to-end", shor),
        ("Rotor QPE", rotor_qpe_scaling),
        ("LCHS", lchs),
        ("Operator fidelity", operator_fidelity),
        ("Trotter convergence", trotter),
        ("QUBO/encodings", qubo_encodings),
        ("Statistics", statistics),
        ("IR", ir_checks),
        ("Physics invariants", physics),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {name} ({secs:.1}s): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name} ({secs:.1}s): {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
