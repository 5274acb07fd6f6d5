//! Energy bookkeeping for the four elementary reactions, and the structure
//! operators that feed them.
//!
//! The `*_balance` functions are pure: they take the energies before and after
//! a reaction plus the random fractions the rule needs, and either return the
//! new kinetic energies or `None` when the reaction is infeasible. Each
//! accepted balance conserves `Σ(PE + KE) + buffer`.

use crate::perturbation::{sample, PerturbationSpec};
use crate::rng::RandomSource;

/// Outcome of an accepted on-wall collision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OnWallBalance {
    pub ke: f64,
    /// Energy released into the central buffer.
    pub to_buffer: f64,
}

/// `PE + KE >= PE'` decides; on success `KE' = q·t` and `q·(1 − t)` goes to the
/// buffer, with `q = PE − PE' + KE` and `t` drawn from `[loss_rate, 1]`.
///
/// `draw_t` is only called when the collision is accepted.
pub fn on_wall_balance(
    pe: f64,
    ke: f64,
    new_pe: f64,
    draw_t: impl FnOnce() -> f64,
) -> Option<OnWallBalance> {
    if pe + ke < new_pe {
        return None;
    }
    let q = pe - new_pe + ke;
    let t = draw_t();
    let ke = q * t;
    Some(OnWallBalance {
        ke,
        to_buffer: q - ke,
    })
}

/// Kinetic energies of two product molecules and the buffer after a split.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitBalance {
    pub ke1: f64,
    pub ke2: f64,
    pub buffer: f64,
}

/// Decomposition of one molecule into two.
///
/// With `temp = PE + KE − PE₁' − PE₂'`: a non-negative `temp` is split by one
/// uniform `k`; otherwise the buffer subsidises the reaction if it can, with
/// the energy handed out through four uniforms `m₁..m₄`. `uniform` is called
/// once or four times accordingly, never when the reaction is rejected.
pub fn decomposition_balance(
    pe: f64,
    ke: f64,
    pe1: f64,
    pe2: f64,
    buffer: f64,
    mut uniform: impl FnMut() -> f64,
) -> Option<SplitBalance> {
    let temp = pe + ke - pe1 - pe2;
    if temp >= 0.0 {
        let k = uniform();
        let ke1 = temp * k;
        return Some(SplitBalance {
            ke1,
            ke2: temp - ke1,
            buffer,
        });
    }
    let pool = temp + buffer;
    if pool < 0.0 {
        return None;
    }
    let (m1, m2, m3, m4) = (uniform(), uniform(), uniform(), uniform());
    let ke1 = pool * m1 * m2;
    let ke2 = (pool - ke1) * m3 * m4;
    Some(SplitBalance {
        ke1,
        ke2,
        buffer: (pool - ke1 - ke2).max(0.0),
    })
}

/// Inter-molecular ineffective collision: the surplus
/// `E = PE₁ + PE₂ + KE₁ + KE₂ − PE₁' − PE₂'` is shared as `(E·k, E·(1 − k))`.
/// The buffer is not involved.
pub fn intermolecular_balance(
    (pe1, ke1): (f64, f64),
    (pe2, ke2): (f64, f64),
    (new_pe1, new_pe2): (f64, f64),
    draw_k: impl FnOnce() -> f64,
) -> Option<(f64, f64)> {
    let surplus = pe1 + pe2 + ke1 + ke2 - new_pe1 - new_pe2;
    if surplus < 0.0 {
        return None;
    }
    let k = draw_k();
    let a = surplus * k;
    Some((a, surplus - a))
}

/// Synthesis of two molecules into one; returns the product's kinetic energy.
pub fn synthesis_balance(
    (pe1, ke1): (f64, f64),
    (pe2, ke2): (f64, f64),
    new_pe: f64,
) -> Option<f64> {
    let total = pe1 + pe2 + ke1 + ke2;
    if total < new_pe {
        None
    } else {
        Some(total - new_pe)
    }
}

/// Maps `x` back into `[lo, hi]`: one reflection about the violated bound,
/// then a clamp for steps longer than the interval.
#[inline]
pub fn reflect(x: f64, lo: f64, hi: f64) -> f64 {
    let r = if x > hi {
        hi - (x - hi)
    } else if x < lo {
        lo + (lo - x)
    } else {
        return x;
    };
    r.clamp(lo, hi)
}

/// Copy of `omega` with one uniformly chosen coordinate moved by a perturbation
/// factor and reflected into bounds.
pub fn neighbor(
    omega: &[f64],
    spec: &PerturbationSpec,
    rng: &mut RandomSource,
    lower: &[f64],
    upper: &[f64],
) -> Vec<f64> {
    let mut out = omega.to_vec();
    let j = rng.index(out.len());
    let eps = sample(spec, rng);
    out[j] = reflect(out[j] + eps, lower[j], upper[j]);
    out
}

/// Decomposition product: every coordinate is perturbed with probability ½,
/// and at least one coordinate always is.
pub fn decomposition_child(
    omega: &[f64],
    spec: &PerturbationSpec,
    rng: &mut RandomSource,
    lower: &[f64],
    upper: &[f64],
) -> Vec<f64> {
    let mask: Vec<bool> = (0..omega.len()).map(|_| rng.coin()).collect();
    let forced = if mask.iter().any(|m| *m) {
        None
    } else {
        Some(rng.index(omega.len()))
    };
    let mut out = omega.to_vec();
    for (j, v) in out.iter_mut().enumerate() {
        if mask[j] || forced == Some(j) {
            *v = reflect(*v + sample(spec, rng), lower[j], upper[j]);
        }
    }
    out
}

/// Synthesis product: each coordinate copied from either parent with equal odds.
pub fn synthesis_child(a: &[f64], b: &[f64], rng: &mut RandomSource) -> Vec<f64> {
    a.iter()
        .zip(b)
        .map(|(x, y)| if rng.coin() { *x } else { *y })
        .collect()
}
