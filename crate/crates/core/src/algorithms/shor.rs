//! Order finding and factoring on grid-emulated qumodes.
//!
//! Qumodes 1 and 2 are integer position registers of `grid` points, so the
//! multiplication `M_N: y → yN` and the oracle `U_{a,N}: (x, y) → (x, y + a^x mod N)`
//! are exact permutations. Qumode 3 and the qubit are carried along and stay
//! in their ground states.

use serde::Serialize;

use crate::engine::{apply_gate, measure_fock};
use crate::error::{Error, Result};
use crate::layout::{ModeKind, RegisterLayout};
use crate::linalg::{c, C64, ZERO};
use crate::operators::{fock_dft, LocalOperator, TargetKind};
use crate::rng::shot_rng;
use crate::state::HybridState;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc
}

/// Smallest power of two that is at least `8N`.
pub fn default_grid(n: u64) -> usize {
    (8 * n as usize).next_power_of_two()
}

/// Default comb envelope `Δ = 4/grid`: an envelope of width `grid/4` points.
pub fn default_delta(grid: usize) -> f64 {
    4.0 / grid as f64
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodResult {
    pub r: u64,
    /// Measurement rounds used, including the successful one.
    pub attempts: usize,
    /// Momentum readouts `k` of every round.
    pub readouts: Vec<usize>,
}

/// Continued-fraction convergent denominators of `num/den`, distinct and increasing.
fn convergent_denominators(num: u64, den: u64) -> Vec<u64> {
    let (mut p, mut q) = (num, den);
    let (mut k_prev, mut k) = (1u64, 0u64);
    let mut out: Vec<u64> = Vec::new();
    while q != 0 {
        let a = p / q;
        (p, q) = (q, p % q);
        (k_prev, k) = (k, a.saturating_mul(k).saturating_add(k_prev));
        if out.last() != Some(&k) {
            out.push(k);
        }
    }
    out
}

/// Candidate orders read off a momentum peak `k` on a `grid`-point register.
pub fn period_candidates(k: usize, grid: usize, n: u64, a: u64) -> Option<u64> {
    if k == 0 {
        return None;
    }
    for q in convergent_denominators(k as u64, grid as u64) {
        if q == 0 || q >= n {
            break;
        }
        let mut m = q;
        while m < n {
            if pow_mod(a, m, n) == 1 {
                return Some(m);
            }
            m += q;
        }
    }
    None
}

/// Prepares `U_{a,N} M_N |ψ₁⟩` on the four-mode register.
fn prepare(n: u64, a: u64, grid: usize, delta: f64) -> Result<HybridState> {
    let layout = RegisterLayout::new(vec![ModeKind::qumode(grid), ModeKind::qumode(grid), ModeKind::qumode(2), ModeKind::Qubit])?;
    let centre = grid as f64 / 2.0;
    let x: Vec<C64> = (0..grid)
        .map(|j| {
            let u = (j as f64 - centre) * delta;
            c((-u * u / 2.0).exp(), 0.0)
        })
        .collect();
    let span = grid / n as usize;
    let y: Vec<C64> = (0..grid).map(|j| if j < span { c(1.0, 0.0) } else { ZERO }).collect();
    let ground = vec![c(1.0, 0.0), ZERO];
    let mut state = HybridState::product(&layout, &[x, y, ground.clone(), ground])?;
    state.normalize()?;

    let g = grid as u64;
    let times_n: Vec<usize> = (0..g).map(|y| (y * n % g) as usize).collect();
    apply_gate(&mut state, &LocalOperator::permutation("mulN", vec![(TargetKind::Qumode, grid)], times_n)?, &[1])?;
    let mut add = Vec::with_capacity(grid * grid);
    for x in 0..g {
        let f = pow_mod(a, x, n);
        for y in 0..g {
            add.push((x * g + (y + f) % g) as usize);
        }
    }
    let targets = vec![(TargetKind::Qumode, grid), (TargetKind::Qumode, grid)];
    apply_gate(&mut state, &LocalOperator::permutation("Uan", targets, add)?, &[0, 1])?;

    for mode in [2, 3] {
        let p = state.marginal(mode)?;
        if (p[0] - 1.0).abs() > 1e-12 {
            return Err(Error::Precondition(format!("mode {mode} left its ground state")));
        }
    }
    Ok(state)
}

fn check_inputs(n: u64, a: u64, grid: usize, delta: f64) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("N = {n} too small")));
    }
    if a < 2 || a >= n {
        return Err(Error::InvalidParameter(format!("a = {a} must lie in [2, N)")));
    }
    if gcd(a, n) != 1 {
        return Err(Error::Precondition(format!("gcd({a}, {n}) = {}", gcd(a, n))));
    }
    if !grid.is_power_of_two() || (grid as u64) < 8 * n {
        return Err(Error::InvalidParameter(format!("grid {grid} must be a power of two ≥ 8N = {}", 8 * n)));
    }
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::InvalidParameter(format!("Δ = {delta}")));
    }
    Ok(())
}

/// Order of `a` modulo `N`. Every returned `r` satisfies `a^r ≡ 1 (mod N)`.
///
/// Each round measures qumode 2 in position, applies the grid DFT to qumode 1
/// and reads its momentum; at most `shots` rounds are attempted.
pub fn cvdv_shor_period(n: u64, a: u64, grid: usize, delta: f64, shots: usize, seed: u64) -> Result<PeriodResult> {
    check_inputs(n, a, grid, delta)?;
    let prepared = prepare(n, a, grid, delta)?;
    let dft = fock_dft(grid)?;
    let mut readouts = Vec::new();
    for shot in 0..shots {
        let mut rng = shot_rng(seed, shot as u64);
        let mut state = prepared.clone();
        measure_fock(&mut state, 1, &mut rng)?;
        apply_gate(&mut state, &dft, &[0])?;
        let k = measure_fock(&mut state, 0, &mut rng)?;
        readouts.push(k);
        if let Some(r) = period_candidates(k, grid, n, a) {
            debug_assert_eq!(pow_mod(a, r, n), 1);
            return Ok(PeriodResult { r, attempts: shot + 1, readouts });
        }
    }
    Err(Error::Exhausted(format!("no valid period for a = {a}, N = {n} in {shots} rounds")))
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn is_prime_power(n: u64) -> bool {
    (2..).take_while(|p| p * p <= n).any(|p| {
        if !is_prime(p) || n % p != 0 {
            return false;
        }
        let mut m = n;
        while m % p == 0 {
            m /= p;
        }
        m == 1
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorResult {
    /// Sorted nontrivial factors.
    pub factors: [u64; 2],
    pub a: u64,
    pub r: u64,
    /// Bases tried, including the successful one.
    pub bases_tried: usize,
}

/// Factors an odd composite that is not a prime power.
///
/// Draws random bases (skipping those sharing a factor with `N`), finds their
/// order with [`cvdv_shor_period`] and keeps the first even `r` with
/// `a^{r/2} ≢ −1`. At most `shots` bases are tried.
pub fn shor_factor(n: u64, shots: usize, seed: u64) -> Result<FactorResult> {
    use rand::Rng;
    if n % 2 == 0 || n < 9 || is_prime(n) {
        return Err(Error::Precondition(format!("N = {n} must be an odd composite")));
    }
    if is_prime_power(n) {
        return Err(Error::Precondition(format!("N = {n} is a prime power")));
    }
    let grid = default_grid(n);
    let delta = default_delta(grid);
    let mut rng = shot_rng(seed, u64::MAX);
    let mut tried = 0;
    while tried < shots {
        let a = rng.random_range(2..n);
        if gcd(a, n) != 1 {
            continue;
        }
        tried += 1;
        let r = match cvdv_shor_period(n, a, grid, delta, shots, seed.wrapping_add(tried as u64)) {
            Ok(p) => p.r,
            Err(Error::Exhausted(_)) => continue,
            Err(e) => return Err(e),
        };
        if r % 2 == 1 {
            continue;
        }
        let half = pow_mod(a, r / 2, n);
        if half == n - 1 {
            continue;
        }
        let p = gcd(half + n - 1, n);
        let q = gcd(half + 1, n);
        for f in [p, q] {
            if f > 1 && f < n {
                let mut factors = [f, n / f];
                factors.sort_unstable();
                return Ok(FactorResult { factors, a, r, bases_tried: tried });
            }
        }
    }
    Err(Error::Exhausted(format!("no factor of {n} after {shots} bases")))
}
