//! Independent verification of the closed-form belief/plausibility.
//!
//! A bpa constrains the unknown probability distribution through an
//! allocation problem: each decomposed crisp focal must distribute its mass
//! over its own cut. Belief/plausibility of a query are the min/max of the
//! expected query membership over all feasible allocations — a linear
//! program whose optima sit at vertices, i.e. at allocations concentrating
//! each focal's mass on a single cut element. This module enumerates those
//! vertices directly (up to a size guard) rather than trusting the closed
//! forms in [`crate::belief`], and can also sample random interior points of
//! the feasible region.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{BeliefInterval, Bpa, Error, FuzzySet, Result};

/// Upper bound on the number of enumerated vertex allocations.
pub const ENUMERATION_GUARD: u128 = 1_000_000;

/// One decomposed crisp focal: the cut's member indices and its mass share
/// (focal mass times level fraction).
struct SubFocal {
    members: Vec<usize>,
    mass: f64,
}

fn decomposed(m: &Bpa) -> Result<Vec<SubFocal>> {
    let mut subs = Vec::new();
    for (focal, mass) in m.focals() {
        for level in focal.decompose()?.levels() {
            let members = level
                .cut
                .grades()
                .iter()
                .enumerate()
                .filter(|(_, &g)| g > 0.0)
                .map(|(i, _)| i)
                .collect();
            subs.push(SubFocal {
                members,
                mass: mass * level.fraction,
            });
        }
    }
    Ok(subs)
}

fn check_guard(subs: &[SubFocal]) -> Result<()> {
    let mut product: u128 = 1;
    for sub in subs {
        product = product.saturating_mul(sub.members.len() as u128);
        if product > ENUMERATION_GUARD {
            return Err(Error::TooLarge(product));
        }
    }
    Ok(())
}

fn visit_vertices(values: &[Vec<f64>], acc: f64, min: &mut f64, max: &mut f64) {
    match values.split_first() {
        None => {
            if acc < *min {
                *min = acc;
            }
            if acc > *max {
                *max = acc;
            }
        }
        Some((first, rest)) => {
            for v in first {
                visit_vertices(rest, acc + v, min, max);
            }
        }
    }
}

/// Brute-force belief/plausibility: min and max of the allocation objective
/// over the full product of per-focal vertex choices. Errors with
/// [`Error::TooLarge`] when the product exceeds [`ENUMERATION_GUARD`].
pub fn oracle_bel_pls(m: &Bpa, b: &FuzzySet) -> Result<BeliefInterval> {
    if m.frame() != b.frame() {
        return Err(Error::FrameMismatch);
    }
    let subs = decomposed(m)?;
    check_guard(&subs)?;
    // Objective contribution of assigning all of a sub-focal's mass to one
    // of its cut members.
    let values: Vec<Vec<f64>> = subs
        .iter()
        .map(|s| s.members.iter().map(|&i| s.mass * b.grade(i)).collect())
        .collect();
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    visit_vertices(&values, 0.0, &mut min, &mut max);

    // The per-focal allocations do not interfere, so the global optimum must
    // equal the sum of per-focal optima; check that the enumeration agrees.
    let separable_min: f64 = values
        .iter()
        .map(|v| v.iter().copied().fold(f64::INFINITY, f64::min))
        .sum();
    let separable_max: f64 = values
        .iter()
        .map(|v| v.iter().copied().fold(f64::NEG_INFINITY, f64::max))
        .sum();
    debug_assert!(
        (min - separable_min).abs() <= 1e-9 && (max - separable_max).abs() <= 1e-9,
        "product enumeration disagrees with per-focal separability"
    );
    Ok(BeliefInterval { bel: min, pls: max })
}

/// Draws `n` random feasible allocations (uniform Dirichlet weights over
/// each cut, via exponential spacings of a seeded ChaCha8 stream) and
/// returns their objective values. Every value lies in `[bel, pls]` up to
/// tolerance.
pub fn sample_feasible(m: &Bpa, b: &FuzzySet, n: usize, seed: u64) -> Result<Vec<f64>> {
    if m.frame() != b.frame() {
        return Err(Error::FrameMismatch);
    }
    let subs = decomposed(m)?;
    check_guard(&subs)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let mut objective = 0.0;
        for sub in &subs {
            let weights: Vec<f64> = sub
                .members
                .iter()
                .map(|_| -(1.0 - rng.gen::<f64>()).ln())
                .collect();
            let total: f64 = weights.iter().sum();
            if total <= 0.0 {
                // All spacings zero is astronomically unlikely; fall back to
                // the uniform weight.
                let w = 1.0 / sub.members.len() as f64;
                for &i in &sub.members {
                    objective += w * sub.mass * b.grade(i);
                }
                continue;
            }
            for (w, &i) in weights.iter().zip(&sub.members) {
                objective += (w / total) * sub.mass * b.grade(i);
            }
        }
        out.push(objective);
    }
    Ok(out)
}
