//! Reference computations shared by the integration tests. None of these go
//! through the Fourier kernel code paths they are used to check.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use qorw::distribution::{PositionDistribution, WalkerInit};
use qorw::oracle::{oracle_trajectory, JointState};
use qorw::walk::{Builtin, WalkModel};

/// `A(φ, φ′)` recovered from one lattice step started at `|0⟩⟨0|`:
/// `Σ ⟨m|ρ^{(1)}|m′⟩ e^{imφ − im′φ′}`.
pub fn lattice_kernel(model: &WalkModel) -> impl Fn(f64, f64) -> C64 {
    let states = oracle_trajectory(model, &WalkerInit::origin(), 1).unwrap();
    let joint: &JointState = &states[1];
    let w = joint.walker();
    let n = joint.half_width() as i64;
    let mut entries = Vec::new();
    for i in 0..w.dim() {
        for j in 0..w.dim() {
            let z = w[(i, j)];
            if z.norm() > 0.0 {
                entries.push((i as i64 - n, j as i64 - n, z));
            }
        }
    }
    move |phi, phip| {
        entries
            .iter()
            .map(|&(m, mp, z)| z * C64::from_polar(1.0, m as f64 * phi - mp as f64 * phip))
            .sum()
    }
}

/// `cos²φ₋ − i cos φ₊ sin φ₋`, `φ± = φ ± φ′`.
pub fn example_ii_closed(phi: f64, phip: f64) -> C64 {
    let (p, m) = (phi + phip, phi - phip);
    C64::new(m.cos().powi(2), -p.cos() * m.sin())
}

/// Cavity walk with entry survival `c_t = 1 − g_t` and second-round survival
/// `c_τ = 1 − g_τ`.
pub fn example_iii_closed(gt: f64, gtau: f64, q: f64) -> impl Fn(f64, f64) -> C64 {
    let (ct, ctau) = (1.0 - gt, 1.0 - gtau);
    move |phi, phip| {
        let m = phi - phip;
        C64::from_polar(1.0 - q * ct, -2.0 * m) + C64::from_polar(q * ct * ctau, 2.0 * m) + q * ct * gtau
    }
}

/// Mixed-reshuffle walk with recomputed coefficients.
pub fn example_iv_corrected(q: f64) -> impl Fn(f64, f64) -> C64 {
    move |phi, phip| {
        let (p, m) = (phi + phip, phi - phip);
        C64::from_polar(3.0 * (1.0 + 2.0 * q) / 16.0, 2.0 * m)
            + C64::from_polar(3.0 * (3.0 - 2.0 * q) / 16.0, -2.0 * m)
            + C64::new(0.0, (1.0 - 2.0 * q) / 4.0 * m.sin() * p.cos())
            + 0.25
    }
}

/// The same walk with `3(1−2q)/16` on `e^{−2iφ₋}`; not normalized.
pub fn example_iv_unbalanced(q: f64) -> impl Fn(f64, f64) -> C64 {
    move |phi, phip| {
        let (p, m) = (phi + phip, phi - phip);
        C64::from_polar(3.0 * (1.0 + 2.0 * q) / 16.0, 2.0 * m)
            + C64::from_polar(3.0 * (1.0 - 2.0 * q) / 16.0, -2.0 * m)
            + C64::new(0.0, (1.0 - 2.0 * q) / 4.0 * m.sin() * p.cos())
            + 0.25
    }
}

/// `n`-fold convolution of a one-step site law with a start law.
pub fn convolve(start: &BTreeMap<i64, f64>, step: &BTreeMap<i64, f64>, n: usize) -> BTreeMap<i64, f64> {
    let mut cur = start.clone();
    for _ in 0..n {
        let mut next = BTreeMap::new();
        for (&m, &p) in &cur {
            for (&d, &w) in step {
                *next.entry(m + d).or_insert(0.0) += p * w;
            }
        }
        cur = next;
    }
    cur
}

pub fn max_dev(dist: &PositionDistribution, law: &BTreeMap<i64, f64>) -> f64 {
    let lo = dist.first_site().min(*law.keys().next().unwrap());
    let hi = dist.last_site().max(*law.keys().last().unwrap());
    (lo..=hi)
        .map(|m| (dist.prob(m) - law.get(&m).copied().unwrap_or(0.0)).abs())
        .fold(0.0, f64::max)
}

/// Average density of `1/(π√(β² − (y−α)²))` over `[a, b]`.
pub fn arcsine_bin_density(a: f64, b: f64, alpha: f64, beta: f64) -> f64 {
    let cdf = |y: f64| ((y - alpha) / beta).clamp(-1.0, 1.0).asin() / PI;
    (cdf(b) - cdf(a)) / (b - a)
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

pub fn nodes(m: usize) -> impl Iterator<Item = f64> {
    (0..m).map(move |a| 2.0 * PI * a as f64 / m as f64)
}

/// Models used for cross-engine comparisons.
pub fn dual_engine_models() -> Vec<Builtin> {
    vec![
        Builtin::ExampleII,
        Builtin::ExampleIII {
            decay_t: 0.3,
            decay_tau: 0.5,
            q: 0.7,
        },
        Builtin::ExampleIV { q: 0.0 },
        Builtin::ExampleIV { q: 0.3 },
        Builtin::ExampleIV { q: 0.5 },
    ]
}
