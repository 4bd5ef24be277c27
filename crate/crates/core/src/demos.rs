//! Named end-to-end demos with JSON parameters and JSON reports.
//!
//! Every demo takes an object of parameters (missing fields take the
//! defaults shown by [`demo_defaults`]) and returns
//! `{"demo", "seed", "params", "result"}`.

use std::f64::consts::PI;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algorithms::{
    cvdv_shor_period, default_delta, default_grid, fock_partition_encode, index_bits, lchs_solve, phase_distance, qhd_minimize, qubo_to_ising,
    rotor_qpe, shor_factor, vqa_optimize, Encoding, FockPartition, LchsMode, LchsSpec, QuboProblem, Window,
};
use crate::engine::{evolve_trotter, expectation, survival_probability};
use crate::error::{Error, Result};
use crate::hamiltonian::{
    build_bose_hubbard, build_ivr_cubic, build_lvc_two_mode, build_spin_boson, oscillators, term, Bath, Boundary, Interaction, LvcParams,
    QhdPotential, SpectralDensity, SpinBosonSpec,
};
use crate::linalg::{self, CMatrix, C64};
use crate::operators::{number, pauli};
use crate::state::HybridState;

pub const DEMOS: [&str; 9] = ["rotor-qpe", "shor", "lchs", "maxcut", "qhd", "bose-hubbard", "lvc", "spin-boson", "ivr"];

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct QpeParams {
    theta: f64,
    l_max: usize,
    window: String,
    shots: usize,
}

impl Default for QpeParams {
    fn default() -> Self {
        QpeParams { theta: PI / 2.0, l_max: 64, window: "gaussian".into(), shots: 32 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct ShorParams {
    #[serde(rename = "N")]
    n: u64,
    /// Base for a single order-finding run; factoring when absent.
    a: Option<u64>,
    grid: Option<usize>,
    delta: Option<f64>,
    shots: usize,
}

impl Default for ShorParams {
    fn default() -> Self {
        ShorParams { n: 15, a: None, grid: None, delta: None, shots: 20 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct LchsParams {
    /// Real part of `A`, row-major rows.
    #[serde(rename = "A")]
    a: Vec<Vec<f64>>,
    #[serde(rename = "A_imag")]
    a_imag: Option<Vec<Vec<f64>>>,
    u0: Vec<f64>,
    #[serde(rename = "T")]
    t: f64,
    beta: f64,
    r: f64,
    mode: String,
    shots: usize,
}

impl Default for LchsParams {
    fn default() -> Self {
        LchsParams {
            a: vec![vec![1.0, 0.0], vec![0.0, 2.0]],
            a_imag: None,
            u0: vec![0.5f64.sqrt(); 2],
            t: 0.5,
            beta: 0.8,
            r: 3.0,
            mode: "statevector-exact".into(),
            shots: 100_000,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct MaxcutParams {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// `"qubits"` or a list of part sizes.
    encoding: Value,
    depth: usize,
    budget: usize,
}

impl Default for MaxcutParams {
    fn default() -> Self {
        MaxcutParams { n: 3, edges: vec![(0, 1), (1, 2), (0, 2)], encoding: json!("qubits"), depth: 1, budget: 300 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct QhdParams {
    n_modes: usize,
    linear: Vec<(usize, f64)>,
    quadratic: Vec<(usize, usize, f64)>,
    quartic: Vec<([usize; 4], f64)>,
    cutoff: usize,
    #[serde(rename = "T")]
    t: f64,
    steps: usize,
    shots: usize,
}

impl Default for QhdParams {
    fn default() -> Self {
        QhdParams {
            n_modes: 1,
            linear: vec![],
            quadratic: vec![(0, 0, -2.0)],
            quartic: vec![([0, 0, 0, 0], 1.0)],
            cutoff: 60,
            t: 10.0,
            steps: 200,
            shots: 200,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct BoseHubbardParams {
    sites: usize,
    #[serde(rename = "J")]
    j: f64,
    #[serde(rename = "U")]
    u: f64,
    mu: f64,
    attractive: bool,
    periodic: bool,
    cutoff: usize,
    initial: Vec<i64>,
    #[serde(rename = "T")]
    t: f64,
    steps: usize,
}

impl Default for BoseHubbardParams {
    fn default() -> Self {
        BoseHubbardParams {
            sites: 3,
            j: 1.0,
            u: 1.0,
            mu: 0.0,
            attractive: false,
            periodic: false,
            cutoff: 4,
            initial: vec![2, 0, 1],
            t: 1.0,
            steps: 32,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct LvcDemoParams {
    delta: f64,
    kappa_g: f64,
    lambda_h: f64,
    omega_g: f64,
    omega_h: f64,
    cutoffs: [usize; 2],
    dt: f64,
    samples: usize,
    steps_per_sample: usize,
}

impl Default for LvcDemoParams {
    fn default() -> Self {
        LvcDemoParams {
            delta: 0.3,
            kappa_g: 0.4,
            lambda_h: 0.1,
            omega_g: 1.0,
            omega_h: 1.5,
            cutoffs: [8, 8],
            dt: 0.5,
            samples: 10,
            steps_per_sample: 100,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct SpinBosonParams {
    eps: f64,
    delta: f64,
    alpha: f64,
    omega_c: f64,
    modes: usize,
    omega_max: f64,
    cutoff: usize,
    dt: f64,
    samples: usize,
    steps_per_sample: usize,
}

impl Default for SpinBosonParams {
    fn default() -> Self {
        SpinBosonParams {
            eps: 0.0,
            delta: 1.0,
            alpha: 0.1,
            omega_c: 1.0,
            modes: 3,
            omega_max: 3.0,
            cutoff: 4,
            dt: 0.5,
            samples: 10,
            steps_per_sample: 20,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct IvrParams {
    omega: Vec<f64>,
    phi: Vec<(usize, usize, usize, f64)>,
    cutoff: usize,
    initial: Vec<i64>,
    times: Vec<f64>,
    steps: usize,
}

impl Default for IvrParams {
    fn default() -> Self {
        IvrParams {
            omega: vec![1.0, 0.5, 0.5],
            phi: vec![(0, 1, 2, 0.16)],
            cutoff: 6,
            initial: vec![1, 0, 0],
            times: (1..=8).map(|k| 2.5 * k as f64).collect(),
            steps: 1,
        }
    }
}

/// Default parameters of a demo.
pub fn demo_defaults(name: &str) -> Result<Value> {
    let v = match name {
        "rotor-qpe" => serde_json::to_value(QpeParams::default()),
        "shor" => serde_json::to_value(ShorParams::default()),
        "lchs" => serde_json::to_value(LchsParams::default()),
        "maxcut" => serde_json::to_value(MaxcutParams::default()),
        "qhd" => serde_json::to_value(QhdParams::default()),
        "bose-hubbard" => serde_json::to_value(BoseHubbardParams::default()),
        "lvc" => serde_json::to_value(LvcDemoParams::default()),
        "spin-boson" => serde_json::to_value(SpinBosonParams::default()),
        "ivr" => serde_json::to_value(IvrParams::default()),
        _ => return Err(unknown(name)),
    };
    v.map_err(|e| Error::InvalidParameter(e.to_string()))
}

fn unknown(name: &str) -> Error {
    Error::InvalidParameter(format!("unknown demo '{name}'; expected one of {}", DEMOS.join(", ")))
}

fn parse<P: DeserializeOwned>(params: &Value) -> Result<P> {
    serde_json::from_value(params.clone()).map_err(|e| Error::InvalidParameter(format!("params: {e}")))
}

fn echo<P: Serialize>(p: &P) -> Value {
    serde_json::to_value(p).expect("parameter structs serialize")
}

/// Strips a `{"model": ..., "params": {...}}` or `{"params": {...}}` wrapper.
fn unwrap_model(name: &str, params: &Value) -> Result<Value> {
    let Value::Object(m) = params else {
        return match params {
            Value::Null => Ok(json!({})),
            _ => Err(Error::InvalidParameter("params must be a JSON object".into())),
        };
    };
    let wrapped = m.contains_key("params") && m.keys().all(|k| k == "params" || k == "model");
    if !wrapped {
        return Ok(params.clone());
    }
    if let Some(model) = m.get("model") {
        let model = model.as_str().ok_or_else(|| Error::InvalidParameter("model must be a string".into()))?;
        if model.replace('_', "-") != name {
            return Err(Error::InvalidParameter(format!("model '{model}' does not match demo '{name}'")));
        }
    }
    match &m["params"] {
        Value::Null => Ok(json!({})),
        p @ Value::Object(_) => Ok(p.clone()),
        _ => Err(Error::InvalidParameter("params must be a JSON object".into())),
    }
}

/// Runs demo `name`. `params` is an object of overrides, optionally wrapped
/// as `{"model": name, "params": {...}}`; `null` means all defaults.
pub fn run_demo(name: &str, params: &Value, seed: u64) -> Result<Value> {
    if !DEMOS.contains(&name) {
        return Err(unknown(name));
    }
    let params = unwrap_model(name, params)?;
    let (echoed, result) = match name {
        "rotor-qpe" => {
            let p: QpeParams = parse(&params)?;
            let r = qpe(&p, seed)?;
            (echo(&p), r)
        }
        "shor" => {
            let p: ShorParams = parse(&params)?;
            let r = shor(&p, seed)?;
            (echo(&p), r)
        }
        "lchs" => {
            let p: LchsParams = parse(&params)?;
            let r = lchs(&p, seed)?;
            (echo(&p), r)
        }
        "maxcut" => {
            let p: MaxcutParams = parse(&params)?;
            let r = maxcut(&p, seed)?;
            (echo(&p), r)
        }
        "qhd" => {
            let p: QhdParams = parse(&params)?;
            let r = qhd(&p, seed)?;
            (echo(&p), r)
        }
        "bose-hubbard" => {
            let p: BoseHubbardParams = parse(&params)?;
            let r = bose_hubbard(&p)?;
            (echo(&p), r)
        }
        "lvc" => {
            let p: LvcDemoParams = parse(&params)?;
            let r = lvc(&p)?;
            (echo(&p), r)
        }
        "spin-boson" => {
            let p: SpinBosonParams = parse(&params)?;
            let r = spin_boson(&p)?;
            (echo(&p), r)
        }
        "ivr" => {
            let p: IvrParams = parse(&params)?;
            let r = ivr(&p)?;
            (echo(&p), r)
        }
        _ => return Err(unknown(name)),
    };
    Ok(json!({ "demo": name, "seed": seed, "params": echoed, "result": result }))
}

fn qpe(p: &QpeParams, seed: u64) -> Result<Value> {
    let window = match p.window.as_str() {
        "gaussian" => Window::Gaussian,
        "uniform" => Window::Uniform,
        w => return Err(Error::InvalidParameter(format!("window '{w}'; expected gaussian or uniform"))),
    };
    let u = linalg::from_diagonal(&[C64::new(1.0, 0.0), C64::from_polar(1.0, p.theta)]);
    let e = [C64::new(0.0, 0.0), C64::new(1.0, 0.0)];
    let r = rotor_qpe(&u, &e, p.l_max, window, p.shots, seed)?;
    Ok(json!({
        "theta_hat": r.theta,
        "error": phase_distance(r.theta, p.theta),
        "bin_width": r.bin_width,
        "peak_probability": r.peak_probability,
    }))
}

fn shor(p: &ShorParams, seed: u64) -> Result<Value> {
    match p.a {
        Some(a) => {
            let grid = p.grid.unwrap_or_else(|| default_grid(p.n));
            let delta = p.delta.unwrap_or_else(|| default_delta(grid));
            let r = cvdv_shor_period(p.n, a, grid, delta, p.shots, seed)?;
            Ok(json!({ "period": r.r, "attempts": r.attempts, "readouts": r.readouts, "grid": grid }))
        }
        None => {
            let f = shor_factor(p.n, p.shots, seed)?;
            Ok(json!({ "factors": f.factors, "a": f.a, "period": f.r, "bases_tried": f.bases_tried }))
        }
    }
}

fn lchs(p: &LchsParams, seed: u64) -> Result<Value> {
    let d = p.a.len();
    if d == 0 || p.a.iter().any(|r| r.len() != d) {
        return Err(Error::InvalidParameter("A must be square".into()));
    }
    let imag = |i: usize, j: usize| p.a_imag.as_ref().and_then(|m| m.get(i).and_then(|r| r.get(j))).copied().unwrap_or(0.0);
    if let Some(m) = &p.a_imag {
        if m.len() != d || m.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidParameter("A_imag must match A".into()));
        }
    }
    let a = CMatrix::from_fn(d, d, |i, j| C64::new(p.a[i][j], imag(i, j)));
    let u0: Vec<C64> = p.u0.iter().map(|&x| C64::new(x, 0.0)).collect();
    let mode = match p.mode.as_str() {
        "statevector-exact" => LchsMode::StatevectorExact,
        "postselect-sampled" => LchsMode::PostselectSampled,
        m => return Err(Error::InvalidParameter(format!("mode '{m}'; expected statevector-exact or postselect-sampled"))),
    };
    let spec = LchsSpec { beta: p.beta, r: p.r, shots: p.shots, ..LchsSpec::default() };
    let r = lchs_solve(&a, &u0, p.t, &spec, mode, seed)?;
    if u0.len() != d {
        return Err(Error::InvalidParameter("u0 must match A".into()));
    }
    let exact = linalg::matvec(&linalg::expm(&(&a * C64::new(-p.t, 0.0))), &u0);
    let diff: Vec<C64> = r.u.iter().zip(&exact).map(|(x, y)| x - y).collect();
    let rel = (linalg::norm_sqr(&diff) / linalg::norm_sqr(&exact)).sqrt();
    Ok(json!({
        "u": r.u,
        "exact": exact,
        "relative_error": rel,
        "success_probability": r.success_probability,
        "sampled_success": r.sampled_success,
        "n_max": r.n_max,
        "prep_weight": r.prep_weight,
        "shift": r.shift,
    }))
}

fn maxcut(p: &MaxcutParams, seed: u64) -> Result<Value> {
    let q = QuboProblem::maxcut(p.n, &p.edges)?;
    let ising = qubo_to_ising(&q);
    let encoding = match &p.encoding {
        Value::String(s) if s == "qubits" => Encoding::Qubits,
        Value::Array(_) => {
            let parts: Vec<usize> = parse(&p.encoding)?;
            let part = FockPartition::new(parts)?;
            fock_partition_encode(p.n, &part)?;
            Encoding::Fock(part)
        }
        other => return Err(Error::InvalidParameter(format!("encoding {other}; expected \"qubits\" or a list of parts"))),
    };
    let r = vqa_optimize(&ising, &encoding, p.depth, p.budget, seed)?;
    let best = (0..1usize << p.n).map(|i| q.value(&index_bits(i, p.n))).fold(f64::INFINITY, f64::min);
    Ok(json!({
        "assignment": r.assignment,
        "cut": -q.value(&r.assignment),
        "optimal_cut": -best,
        "energy": r.energy,
        "cost": r.cost,
        "evaluations": r.evaluations,
        "converged": r.converged,
        "improved": r.improved,
    }))
}

fn qhd(p: &QhdParams, seed: u64) -> Result<Value> {
    let pot = QhdPotential { n_modes: p.n_modes, linear: p.linear.clone(), quadratic: p.quadratic.clone(), quartic: p.quartic.clone() };
    let r = qhd_minimize(&pot, p.cutoff, p.t, p.steps, p.shots, seed)?;
    Ok(json!({ "mean_x": r.mean_x, "sample_mode": r.sample_mode, "leakage": r.leakage }))
}

fn bose_hubbard(p: &BoseHubbardParams) -> Result<Value> {
    let interaction = if p.attractive { Interaction::Attractive } else { Interaction::Repulsive };
    let boundary = if p.periodic { Boundary::Periodic } else { Boundary::Open };
    let (h, layout) = build_bose_hubbard(p.sites, p.j, p.u, p.mu, interaction, p.cutoff, boundary)?;
    let mut psi = HybridState::basis(&layout, &p.initial)?;
    let e0 = expectation(&psi, &h)?;
    evolve_trotter(&mut psi, &h, p.t, p.steps)?;
    let occupations = (0..p.sites)
        .map(|s| expectation(&psi, &term(1.0, vec![(s, number(p.cutoff))])?))
        .collect::<Result<Vec<f64>>>()?;
    Ok(json!({
        "energy_initial": e0,
        "energy_final": expectation(&psi, &h)?,
        "occupations": occupations,
        "total_number": occupations.iter().sum::<f64>(),
        "norm": psi.computed_norm_sqr(),
    }))
}

fn lvc(p: &LvcDemoParams) -> Result<Value> {
    let params = LvcParams { delta: p.delta, kappa_g: p.kappa_g, lambda_h: p.lambda_h, omega_g: p.omega_g, omega_h: p.omega_h };
    let (h, layout) = build_lvc_two_mode(&params, p.cutoffs)?;
    let mut psi = HybridState::basis(&layout, &[0, 0, 0])?;
    let upper = |s: &HybridState| -> Result<f64> { Ok(s.marginal(0)?[0]) };
    let mut times = vec![0.0];
    let mut population = vec![upper(&psi)?];
    for k in 1..=p.samples {
        evolve_trotter(&mut psi, &h, p.dt, p.steps_per_sample)?;
        times.push(p.dt * k as f64);
        population.push(upper(&psi)?);
    }
    Ok(json!({ "times": times, "upper_population": population }))
}

fn spin_boson(p: &SpinBosonParams) -> Result<Value> {
    let spec = SpinBosonSpec {
        eps: vec![p.eps],
        delta: vec![p.delta],
        couplings: vec![],
        bath: Bath::Spectral { density: SpectralDensity::Ohmic { alpha: p.alpha, omega_c: p.omega_c }, count: p.modes, omega_max: p.omega_max },
    };
    let (h, layout) = build_spin_boson(&spec, &[p.cutoff])?;
    let sz = term(1.0, vec![(0, pauli('z'))])?;
    let mut psi = HybridState::vacuum(&layout)?;
    let mut times = vec![0.0];
    let mut z = vec![expectation(&psi, &sz)?];
    for k in 1..=p.samples {
        evolve_trotter(&mut psi, &h, p.dt, p.steps_per_sample)?;
        times.push(p.dt * k as f64);
        z.push(expectation(&psi, &sz)?);
    }
    Ok(json!({ "times": times, "sigma_z": z }))
}

fn ivr(p: &IvrParams) -> Result<Value> {
    let n = p.omega.len();
    let layout = crate::RegisterLayout::new(vec![crate::ModeKind::qumode(p.cutoff); n])?;
    let modes: Vec<usize> = (0..n).collect();
    let h = build_ivr_cubic(&p.phi, n, p.cutoff)?.plus(&oscillators(&p.omega, &modes, p.cutoff)?);
    let psi0 = HybridState::basis(&layout, &p.initial)?;
    let survival = p.times.iter().map(|&t| survival_probability(&psi0, &h, t, p.steps)).collect::<Result<Vec<f64>>>()?;
    Ok(json!({ "times": p.times, "survival": survival }))
}
