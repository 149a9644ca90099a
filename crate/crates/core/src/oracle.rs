//! Brute-force evolution of the joint coin ⊗ walker density matrix on a
//! truncated lattice, independent of the Fourier kernel.
//!
//! Basis index of `|c⟩ ⊗ |m⟩` is `c·S + (m + N)` with `S = 2N + 1`. Coin
//! `|+⟩` (index 0) moves the walker one site right, `|−⟩` one site left.
//! Shifts are truncated, never wrapped: before every step the `k` outermost
//! sites at each edge must carry no weight.

use crate::algebra::matrix::{Mat2, C64, ZERO};
use crate::algebra::{ComplexMatrix, DensityMatrix};
use crate::distribution::{PositionDistribution, WalkerInit};
use crate::error::{QorwError, Result};
use crate::tolerance::LIMITS;
use crate::walk::WalkModel;

/// Weight at or below which a guard-band site counts as empty.
const GUARD_FLOOR: f64 = 1e-14;

/// Joint coin ⊗ walker density matrix on sites `−N ..= N`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointState {
    half_width: usize,
    matrix: ComplexMatrix,
}

impl JointState {
    /// `ρ_c ⊗ ρ_w` with the walker given as an `S × S` site matrix.
    pub fn product(coin: &DensityMatrix, walker: &ComplexMatrix, half_width: usize) -> Result<Self> {
        let sites = 2 * half_width + 1;
        if walker.dim() != sites || coin.dim() != 2 {
            return Err(QorwError::Structural(format!(
                "joint state needs a 2×2 coin and a {sites}×{sites} walker"
            )));
        }
        Ok(Self {
            half_width,
            matrix: coin.matrix().kron(walker),
        })
    }

    /// Fresh `|+⟩⟨+| ⊗ ρ_w` for a finitely supported walker state.
    pub fn from_init(init: &WalkerInit, half_width: usize) -> Result<Self> {
        Self::product(&DensityMatrix::plus(), &walker_matrix(init, half_width)?, half_width)
    }

    pub fn half_width(&self) -> usize {
        self.half_width
    }

    pub fn sites(&self) -> usize {
        2 * self.half_width + 1
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// `Tr_c ρ`.
    pub fn walker(&self) -> ComplexMatrix {
        let s = self.sites();
        let mut out = ComplexMatrix::zeros(s);
        for c in 0..2 {
            for i in 0..s {
                for j in 0..s {
                    out[(i, j)] += self.matrix[(c * s + i, c * s + j)];
                }
            }
        }
        out
    }

    /// Diagonal of the walker marginal as a distribution over `−N ..= N`.
    pub fn distribution(&self, n: usize) -> PositionDistribution {
        let w = self.walker();
        let probs = (0..self.sites()).map(|i| w[(i, i)].re).collect();
        PositionDistribution::new(n, -(self.half_width as i64), probs)
    }

    /// Fails unless the `width` outermost sites on each side carry no weight.
    pub fn check_guard_band(&self, width: usize) -> Result<()> {
        let s = self.sites();
        let w = width.min(s);
        for c in 0..2 {
            for i in (0..w).chain(s - w..s) {
                let idx = c * s + i;
                if self.matrix[(idx, idx)].norm() > GUARD_FLOOR {
                    return Err(QorwError::Resource(format!(
                        "lattice too small: site {} is occupied inside the guard band",
                        i as i64 - self.half_width as i64
                    )));
                }
            }
        }
        Ok(())
    }

    /// Index range of sites with nonzero weight; rows and columns outside it
    /// vanish by positivity.
    fn occupied(&self) -> std::ops::Range<usize> {
        let s = self.sites();
        let weight = |i: usize| self.matrix[(i, i)].norm() + self.matrix[(s + i, s + i)].norm();
        let lo = (0..s).find(|&i| weight(i) > 0.0).unwrap_or(0);
        let hi = (0..s).rev().find(|&i| weight(i) > 0.0).map_or(0, |i| i + 1);
        lo..hi.max(lo)
    }

    /// `(K ⊗ 1) ρ (K ⊗ 1)†` summed over a Kraus set, block by block.
    fn apply_coin_channel(&mut self, kraus: &[Mat2]) {
        let s = self.sites();
        let window = self.occupied();
        let block = |m: &ComplexMatrix, c: usize, d: usize, i: usize, j: usize| m[(c * s + i, d * s + j)];
        let mut out = ComplexMatrix::zeros(2 * s);
        for k in kraus {
            let kd = k.0;
            for i in window.clone() {
                for j in window.clone() {
                    let r = [
                        [block(&self.matrix, 0, 0, i, j), block(&self.matrix, 0, 1, i, j)],
                        [block(&self.matrix, 1, 0, i, j), block(&self.matrix, 1, 1, i, j)],
                    ];
                    for c in 0..2 {
                        for d in 0..2 {
                            let mut acc = ZERO;
                            for x in 0..2 {
                                for y in 0..2 {
                                    acc += kd[c][x] * r[x][y] * kd[d][y].conj();
                                }
                            }
                            out[(c * s + i, d * s + j)] += acc;
                        }
                    }
                }
            }
        }
        self.matrix = out;
    }

    /// `P₊ ⊗ E₊ + P₋ ⊗ E₋` by conjugation; amplitude beyond the edge is dropped.
    fn apply_shift(&mut self) {
        let s = self.sites();
        let offset = |c: usize| if c == 0 { 1i64 } else { -1 };
        let window = self.occupied();
        let mut out = ComplexMatrix::zeros(2 * s);
        for c in 0..2 {
            for d in 0..2 {
                for i in window.clone() {
                    let ti = i as i64 + offset(c);
                    if ti < 0 || ti >= s as i64 {
                        continue;
                    }
                    for j in window.clone() {
                        let tj = j as i64 + offset(d);
                        if tj < 0 || tj >= s as i64 {
                            continue;
                        }
                        out[(c * s + ti as usize, d * s + tj as usize)] = self.matrix[(c * s + i, d * s + j)];
                    }
                }
            }
        }
        self.matrix = out;
    }
}

/// `ρ_w` as an `S × S` matrix on sites `−N ..= N`.
pub fn walker_matrix(init: &WalkerInit, half_width: usize) -> Result<ComplexMatrix> {
    let n = half_width as i64;
    if init.min_site() < -n || init.max_site() > n {
        return Err(QorwError::Resource(format!(
            "initial state does not fit on sites −{n}..={n}"
        )));
    }
    let mut out = ComplexMatrix::zeros(2 * half_width + 1);
    for (m, mp, z) in init.entries() {
        out[((m + n) as usize, (mp + n) as usize)] += z;
    }
    Ok(out)
}

fn lower(model: &WalkModel) -> Vec<Vec<Mat2>> {
    model
        .quantizers()
        .iter()
        .map(|ch| {
            ch.kraus()
                .iter()
                .map(|k| Mat2::try_from(k).expect("walk model channels are 2×2"))
                .collect()
        })
        .collect()
}

/// One walk step: the coin of `state` is discarded, `fresh_coin` passes the
/// entry channel, and `k` rounds of (coin channel ⊗ 1, conditional shift)
/// act on the product. The returned joint state still holds the used coin.
pub fn oracle_step(model: &WalkModel, state: &JointState, fresh_coin: &DensityMatrix) -> Result<JointState> {
    state.check_guard_band(model.k())?;
    let coin = match model.entry_channel() {
        Some(ch) => ch.apply(fresh_coin)?,
        None => fresh_coin.clone(),
    };
    let mut next = JointState::product(&coin, &state.walker(), state.half_width)?;
    for kraus in lower(model) {
        next.apply_coin_channel(&kraus);
        next.apply_shift();
    }
    Ok(next)
}

/// Lattice half-width that keeps an `n`-step run clear of the guard band.
pub fn oracle_half_width(model: &WalkModel, init: &WalkerInit, n: usize) -> usize {
    model.k() * n + init.max_abs_site() + model.k() + 1
}

/// Joint states after steps `0 ..= n`, each step with a fresh `ρ_c`.
pub fn oracle_trajectory(model: &WalkModel, init: &WalkerInit, n: usize) -> Result<Vec<JointState>> {
    let half_width = oracle_half_width(model, init, n);
    if half_width > LIMITS.max_half_width {
        return Err(QorwError::Resource(format!(
            "lattice half-width {half_width} exceeds the cap {}",
            LIMITS.max_half_width
        )));
    }
    let mut states = Vec::with_capacity(n + 1);
    states.push(JointState::from_init(init, half_width)?);
    for _ in 0..n {
        let next = oracle_step(model, states.last().expect("non-empty"), model.coin_init())?;
        states.push(next);
    }
    Ok(states)
}

/// `P_m^{(n)}` from the joint-matrix evolution, trimmed to the reachable window
/// `[min start − kn, max start + kn]`.
pub fn oracle_run(model: &WalkModel, init: &WalkerInit, n: usize) -> Result<PositionDistribution> {
    let half_width = oracle_half_width(model, init, n);
    if half_width > LIMITS.max_half_width {
        return Err(QorwError::Resource(format!(
            "lattice half-width {half_width} exceeds the cap {}",
            LIMITS.max_half_width
        )));
    }
    let mut state = JointState::from_init(init, half_width)?;
    for _ in 0..n {
        state = oracle_step(model, &state, model.coin_init())?;
    }
    let full = state.distribution(n);
    let step = (model.k() * n) as i64;
    let first = init.min_site() - step;
    let probs = (first..=init.max_site() + step).map(|m| full.prob(m)).collect();
    Ok(PositionDistribution::new(n, first, probs))
}

/// Walker-only Kraus operators of one step for a pure entering coin `|ψ⟩`:
/// `⟨c| S K_{i_k} ⋯ S K_{i_1} |ψ⟩` on an `S`-site lattice, one per coin
/// outcome `c` and Kraus index string.
pub fn walker_kraus(kraus_rounds: &[Vec<ComplexMatrix>], psi: [C64; 2], half_width: usize) -> Vec<ComplexMatrix> {
    let s = 2 * half_width + 1;
    // each branch is a pair of S×S blocks: coin component c ↦ operator on walker
    let mut branches: Vec<[ComplexMatrix; 2]> = vec![[
        ComplexMatrix::identity(s).scale(psi[0]),
        ComplexMatrix::identity(s).scale(psi[1]),
    ]];
    let shift = |dir: i64| {
        let mut e = ComplexMatrix::zeros(s);
        for i in 0..s {
            let t = i as i64 + dir;
            if (0..s as i64).contains(&t) {
                e[(t as usize, i)] = C64::new(1.0, 0.0);
            }
        }
        e
    };
    let (e_plus, e_minus) = (shift(1), shift(-1));
    for round in kraus_rounds {
        let mut next = Vec::with_capacity(branches.len() * round.len());
        for b in &branches {
            for k in round {
                let mut mixed = [ComplexMatrix::zeros(s), ComplexMatrix::zeros(s)];
                for (c, slot) in mixed.iter_mut().enumerate() {
                    for (d, bd) in b.iter().enumerate() {
                        slot.add_scaled(bd, k[(c, d)]);
                    }
                }
                next.push([&e_plus * &mixed[0], &e_minus * &mixed[1]]);
            }
        }
        branches = next;
    }
    branches.into_iter().flatten().collect()
}
