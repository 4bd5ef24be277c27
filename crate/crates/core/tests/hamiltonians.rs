mod common;

use common::{commutator_norm, diagonal, eigh, evolve_dense};
use cvdv::engine::{evolve_trotter, expectation, survival_probability};
use cvdv::hamiltonian::*;
use cvdv::linalg::{self, CMatrix, C64};
use cvdv::{HybridState, ModeKind, RegisterLayout};

fn number_total(layout: &RegisterLayout, weight: impl Fn(usize, usize) -> f64) -> CMatrix {
    let n = layout.dim().unwrap();
    diagonal(n, |i| {
        layout.digits_of(i).iter().enumerate().map(|(m, &d)| weight(m, d)).sum()
    })
}

#[test]
fn tavis_cummings_decoupled_is_diagonal() {
    let (h, l) = build_tavis_cummings(&[0.4, -0.3], &[vec![0.0, 0.0], vec![0.0, 0.0]], &[1.0], 0.0, &[3]).unwrap();
    let m = h.to_dense(&l).unwrap();
    let off: f64 = m.iter().enumerate().filter(|(k, _)| k % (m.nrows() + 1) != 0).map(|(_, z)| z.norm()).sum();
    assert_eq!(off, 0.0);
    let (vals, _) = eigh(&m);
    assert!((vals[0] + 0.3).abs() < 1e-12);
}

#[test]
fn jaynes_cummings_splitting() {
    let g = 0.3;
    let (h, l) = build_tavis_cummings(&[1.0], &[vec![0.0]], &[1.0], g, &[5]).unwrap();
    let m = h.to_dense(&l).unwrap();
    assert!(linalg::hermiticity_residual(&m) <= 1e-12);
    // one-excitation block spanned by |1,0⟩ and |0,1⟩
    let a = l.index_of(&[1, 0]).unwrap();
    let b = l.index_of(&[0, 1]).unwrap();
    let block = CMatrix::from_fn(2, 2, |r, c| m[([a, b][r], [a, b][c])]);
    let (vals, _) = eigh(&block);
    assert!((vals[1] - vals[0] - 2.0 * g).abs() < 1e-12);
    assert!((m[(a, b)].re - g).abs() < 1e-15);
}

#[test]
fn tavis_cummings_conserves_excitations() {
    let hop = vec![vec![0.0, 0.2], vec![0.2, 0.0]];
    let (h, l) = build_tavis_cummings(&[0.7, 0.7], &hop, &[0.7, 0.7], 0.25, &[3, 3]).unwrap();
    let m = h.to_dense(&l).unwrap();
    // qubit digit 1 is an occupied site, qumode digit is the boson number
    let n = number_total(&l, |_, d| d as f64);
    assert!(commutator_norm(&m, &n) < 1e-12);
    assert!(linalg::hermiticity_residual(&m) <= 1e-12);
}

#[test]
fn tavis_cummings_rejects_small_cutoff() {
    assert!(build_tavis_cummings(&[1.0], &[vec![0.0]], &[1.0], 0.1, &[1]).is_err());
}

fn single_spin(eps: f64, delta: f64, omega: f64, g: f64) -> SpinBosonSpec {
    SpinBosonSpec {
        eps: vec![eps],
        delta: vec![delta],
        couplings: vec![],
        bath: Bath::Explicit { omega: vec![omega], couplings: vec![vec![g]] },
    }
}

#[test]
fn spin_boson_dephasing_conserves_sigma_z() {
    let spec = SpinBosonSpec {
        eps: vec![0.5, -0.2],
        delta: vec![0.0, 0.0],
        couplings: vec![(0, 1, 0.3)],
        bath: Bath::Explicit { omega: vec![1.0, 1.7], couplings: vec![vec![0.2, 0.1], vec![0.05, 0.3]] },
    };
    let (h, l) = build_spin_boson(&spec, &[3]).unwrap();
    let m = h.to_dense(&l).unwrap();
    for spin in 0..2 {
        let z = diagonal(l.dim().unwrap(), |i| if l.digits_of(i)[spin] == 0 { 1.0 } else { -1.0 });
        assert!(commutator_norm(&m, &z) < 1e-12);
    }
    let (h2, l2) = build_spin_boson(&single_spin(0.0, 0.4, 1.0, 0.2), &[4]).unwrap();
    let m2 = h2.to_dense(&l2).unwrap();
    let z = diagonal(l2.dim().unwrap(), |i| if l2.digits_of(i)[0] == 0 { 1.0 } else { -1.0 });
    assert!(commutator_norm(&m2, &z) > 1e-3);
}

#[test]
fn spin_boson_polaron_shift() {
    for g in [0.02, 0.05, 0.1] {
        let (h, l) = build_spin_boson(&single_spin(0.0, 0.0, 1.0, g), &[16]).unwrap();
        let (vals, _) = eigh(&h.to_dense(&l).unwrap());
        assert!((vals[0] + g * g).abs() < 10.0 * g.powi(4), "g = {g}: {}", vals[0]);
    }
}

#[test]
fn spin_boson_vacuum_bath_energy_is_zero() {
    let spec = SpinBosonSpec { eps: vec![0.0], delta: vec![0.0], couplings: vec![], bath: Bath::Explicit { omega: vec![2.0], couplings: vec![vec![0.0]] } };
    let (h, l) = build_spin_boson(&spec, &[4]).unwrap();
    let v = HybridState::vacuum(&l).unwrap();
    assert_eq!(expectation(&v, &h).unwrap(), 0.0);
}

#[test]
fn spectral_bath_discretization() {
    let ohmic = SpectralDensity::Ohmic { alpha: 0.1, omega_c: 1.0 };
    let spec = |count| SpinBosonSpec {
        eps: vec![1.0],
        delta: vec![0.5],
        couplings: vec![],
        bath: Bath::Spectral { density: ohmic, count, omega_max: 6.0 },
    };
    let (omega, g) = spec(60).discretize().unwrap();
    assert_eq!(omega.len(), 60);
    assert!((omega[59] - 6.0).abs() < 1e-12);
    let dw = 0.1;
    for (w, gk) in omega.iter().zip(&g[0]) {
        assert!((std::f64::consts::PI * gk * gk / dw - ohmic.eval(*w)).abs() < 1e-12);
    }
    assert!(spec(3).discretize().is_err());
    let neg = SpinBosonSpec { bath: Bath::Explicit { omega: vec![-1.0], couplings: vec![vec![0.1]] }, ..spec(60) };
    assert!(neg.discretize().is_err());
}

#[test]
fn bose_hubbard_single_particle_band() {
    let j = 0.8;
    let (h, l) = build_bose_hubbard(3, j, 0.0, 0.0, Interaction::Repulsive, 3, Boundary::Open).unwrap();
    let m = h.to_dense(&l).unwrap();
    let one: Vec<usize> = (0..l.dim().unwrap()).filter(|&i| l.digits_of(i).iter().sum::<usize>() == 1).collect();
    let block = CMatrix::from_fn(3, 3, |r, c| m[(one[r], one[c])]);
    let (vals, _) = eigh(&block);
    assert!((vals[0] + 2f64.sqrt() * j).abs() < 1e-12);
}

#[test]
fn bose_hubbard_onsite_energy_and_symmetry() {
    for (kind, sign) in [(Interaction::Repulsive, 1.0), (Interaction::Attractive, -1.0)] {
        let (h, l) = build_bose_hubbard(2, 0.0, 1.3, 0.4, kind, 4, Boundary::Open).unwrap();
        let s = HybridState::basis(&l, &[2, 0]).unwrap();
        let e = expectation(&s, &h).unwrap();
        assert!((e - (sign * 1.3 - 0.8)).abs() < 1e-12);
    }
    for (j, u, mu, b) in [(1.0, 1.0, 0.0, Boundary::Open), (0.3, 2.1, -0.5, Boundary::Periodic), (1.7, 0.2, 0.9, Boundary::Periodic)] {
        let (h, l) = build_bose_hubbard(3, j, u, mu, Interaction::Attractive, 3, b).unwrap();
        let m = h.to_dense(&l).unwrap();
        let n = number_total(&l, |_, d| d as f64);
        assert!(commutator_norm(&m, &n) <= 1e-10);
        assert!(linalg::hermiticity_residual(&m) <= 1e-12);
    }
    assert!(build_bose_hubbard(1, 1.0, 1.0, 0.0, Interaction::Repulsive, 3, Boundary::Open).is_err());
    assert!(build_bose_hubbard(3, 1.0, 1.0, 0.0, Interaction::Repulsive, 1, Boundary::Open).is_err());
}

#[test]
fn holstein_polaron_shift() {
    let g = 0.6;
    let l = RegisterLayout::new(vec![ModeKind::Qubit, ModeKind::qumode(40)]).unwrap();
    let h = build_holstein(g, &[0], &[1], 40).unwrap().plus(&oscillators(&[1.0], &[1], 40).unwrap());
    let m = h.to_dense(&l).unwrap();
    assert!(linalg::hermiticity_residual(&m) <= 1e-12);
    // occupied sector: ω b†b + g(b + b†), ground −g²/ω
    let occ: Vec<usize> = (0..l.dim().unwrap()).filter(|&i| l.digits_of(i)[0] == 1).collect();
    let block = CMatrix::from_fn(occ.len(), occ.len(), |r, c| m[(occ[r], occ[c])]);
    let (vals, _) = eigh(&block);
    assert!((vals[0] + g * g).abs() < 1e-10, "{}", vals[0]);
    assert!(build_holstein(0.0, &[0], &[1], 4).unwrap().is_empty());
    assert!(build_holstein(1.0, &[0, 1], &[2], 4).is_err());
}

#[test]
fn peierls_is_hermitian_and_conserves_fermions() {
    let l = RegisterLayout::new(vec![ModeKind::Qubit, ModeKind::Qubit, ModeKind::qumode(3), ModeKind::qumode(3)]).unwrap();
    let h = build_peierls(0.4, &[(0, 1)], &[0, 1], &[2, 3], 3).unwrap();
    let m = h.to_dense(&l).unwrap();
    assert!(linalg::hermiticity_residual(&m) <= 1e-12);
    let nf = number_total(&l, |mode, d| if mode < 2 { d as f64 } else { 0.0 });
    assert!(commutator_norm(&m, &nf) < 1e-12);
    assert!(build_peierls(0.0, &[(0, 1)], &[0, 1], &[2, 3], 3).unwrap().is_empty());
    assert!(build_peierls(0.4, &[(0, 2)], &[0, 1], &[2, 3], 3).is_err());
}

#[test]
fn ivr_cubic_parity_and_errors() {
    assert!(build_ivr_cubic(&[], 3, 4).unwrap().is_empty());
    let h = build_ivr_cubic(&[(0, 1, 2, 0.3)], 3, 4).unwrap();
    let l = RegisterLayout::new(vec![ModeKind::qumode(4); 3]).unwrap();
    let s = HybridState::basis(&l, &[1, 1, 1]).unwrap();
    assert!(expectation(&s, &h).unwrap().abs() < 1e-15);
    assert!(build_ivr_cubic(&[(0, 0, 2, 0.3)], 3, 4).is_err());
    assert!(build_ivr_cubic(&[(0, 1, 2, 0.3), (2, 1, 0, 0.1)], 3, 4).is_err());
}

#[test]
fn ivr_survival_matches_dense_evolution() {
    let d = 6;
    let l = RegisterLayout::new(vec![ModeKind::qumode(d); 3]).unwrap();
    let h = build_ivr_cubic(&[(0, 1, 2, 0.16)], 3, d)
        .unwrap()
        .plus(&oscillators(&[1.0, 0.5, 0.5], &[0, 1, 2], d).unwrap());
    let psi0 = HybridState::basis(&l, &[1, 0, 0]).unwrap();
    let m = h.to_dense(&l).unwrap();
    let mut min_p: f64 = 1.0;
    let mut last = 1.0;
    for k in 1..=8 {
        let t = 2.5 * k as f64;
        let p = survival_probability(&psi0, &h, t, 1).unwrap();
        let u = evolve_dense(&m, t);
        let amp = u[(l.index_of(&[1, 0, 0]).unwrap(), l.index_of(&[1, 0, 0]).unwrap())];
        assert!((p - amp.norm_sqr()).abs() < 1e-6, "t = {t}");
        min_p = min_p.min(p);
        last = p;
    }
    // decays, then revives
    assert!(min_p < 0.2);
    assert!(last > min_p + 0.5);
}

#[test]
fn lvc_structure() {
    let p = LvcParams { delta: 0.5, kappa_g: 0.3, lambda_h: 0.0, omega_g: 1.0, omega_h: 1.3 };
    let (h, l) = build_lvc_two_mode(&p, [6, 6]).unwrap();
    let m = h.to_dense(&l).unwrap();
    let z = diagonal(l.dim().unwrap(), |i| if l.digits_of(i)[0] == 0 { 1.0 } else { -1.0 });
    assert!(commutator_norm(&m, &z) < 1e-12);

    let p0 = LvcParams { kappa_g: 0.0, omega_h: 1.0, ..p };
    let (h0, l0) = build_lvc_two_mode(&p0, [6, 6]).unwrap();
    let (vals, vecs) = eigh(&h0.to_dense(&l0).unwrap());
    assert!((vals[0] - (-0.5 + 0.5 * (1.0 + 1.0))).abs() < 1e-12);
    let g = l0.index_of(&[1, 0, 0]).unwrap();
    assert!((vecs[(g, 0)].norm() - 1.0).abs() < 1e-10);
    assert!(build_lvc_two_mode(&LvcParams { omega_g: 0.0, ..p }, [4, 4]).is_err());
}

#[test]
fn lvc_population_transfer_matches_dense() {
    let p = LvcParams { delta: 0.3, kappa_g: 0.4, lambda_h: 0.1, omega_g: 1.0, omega_h: 1.5 };
    let (h, l) = build_lvc_two_mode(&p, [8, 8]).unwrap();
    let m = h.to_dense(&l).unwrap();
    let start = HybridState::basis(&l, &[0, 0, 0]).unwrap();
    let upper = |v: &[C64]| -> f64 { (0..v.len()).filter(|&i| l.digits_of(i)[0] == 0).map(|i| v[i].norm_sqr()).sum() };
    let mut state = start.clone();
    let dt = 0.5;
    let mut worst: f64 = 0.0;
    for k in 1..=10 {
        evolve_trotter(&mut state, &h, dt, 400).unwrap();
        let exact = common::apply(&evolve_dense(&m, dt * k as f64), start.amplitudes());
        worst = worst.max((upper(state.amplitudes()) - upper(&exact)).abs());
    }
    assert!(worst <= 1e-6, "{worst}");
}

#[test]
fn qhd_builder() {
    assert_eq!(qhd_kinetic_coefficient(0.0), 0.5);
    assert!(qhd_kinetic_coefficient(1e4) < 1e-8);
    let pot = QhdPotential { n_modes: 1, quadratic: vec![(0, 0, -2.0)], quartic: vec![([0; 4], 1.0)], ..Default::default() };
    let b = build_qhd(&pot, 12).unwrap();
    assert!(b.warnings().is_empty());
    let h0 = b.at(0.0).unwrap();
    let h_late = b.at(50.0).unwrap();
    assert_eq!(h0.len(), 3);
    assert!((h0.terms()[0].coeff.re - 0.5).abs() < 1e-15);
    assert!(h_late.terms()[0].coeff.re < 2e-4);
    // golden-section search on x > 0 of the classical potential
    let f = |x: f64| pot.value(&[x]);
    let (mut a, mut c) = (0.1, 3.0);
    let r = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let x1 = c - r * (c - a);
        let x2 = a + r * (c - a);
        if f(x1) < f(x2) { c = x2 } else { a = x1 }
    }
    assert!((0.5 * (a + c) - 1.0).abs() < 1e-6);
    assert!((f(-1.0) - f(1.0)).abs() < 1e-15);
    let bad = QhdPotential { n_modes: 1, quartic: vec![([0; 4], -1.0)], ..Default::default() };
    assert!(!build_qhd(&bad, 8).unwrap().warnings().is_empty());
}

#[test]
fn builders_are_hermitian() {
    let spec = SpinBosonSpec {
        eps: vec![0.3],
        delta: vec![0.7],
        couplings: vec![],
        bath: Bath::Spectral { density: SpectralDensity::Debye { lambda: 0.2, omega_c: 1.0 }, count: 400, omega_max: 3.0 },
    };
    // only check the first couple of modes densely
    let (omega, g) = spec.discretize().unwrap();
    let small = SpinBosonSpec { bath: Bath::Explicit { omega: omega[..2].to_vec(), couplings: vec![g[0][..2].to_vec()] }, ..spec };
    let (h, l) = build_spin_boson(&small, &[4]).unwrap();
    assert!(h.hermiticity_residual(&l).unwrap() <= 1e-12);
    let pot = QhdPotential {
        n_modes: 2,
        linear: vec![(1, 0.3)],
        quadratic: vec![(0, 1, 0.4), (1, 0, 0.4)],
        quartic: vec![([0, 0, 0, 0], 1.0), ([1, 1, 1, 1], 1.0), ([0, 0, 1, 1], 0.2)],
    };
    let b = build_qhd(&pot, 6).unwrap();
    let l = b.layout().unwrap();
    assert!(linalg::hermiticity_residual(&b.at(0.7).unwrap().to_dense(&l).unwrap()) <= 1e-10);
}
