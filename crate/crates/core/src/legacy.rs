//! Earlier fuzzy evidential-reasoning proposals, kept for comparison: the
//! expected possibility/certainty pair, three inclusion measures with the
//! inclusion-weighted belief formula, and the degree-of-intersection
//! combination rule.
//!
//! Two of the inclusion formulas circulate in damaged typographical forms;
//! the standard readings implemented here are: Yager's as the min of the
//! pointwise Kleene implication with no denominator, and Ogawa's as the
//! relative sigma-count `sum min(mu_A, mu_B) / sum mu_A`. Both choices are
//! surfaced in the CLI `compare` table rather than asserted against any
//! printed value. Note the consequences: Yager's measure of a properly fuzzy
//! set in itself is below 1, and Ogawa's grades partial overlap of crisp
//! sets, so only nested-or-disjoint crisp instances reduce to the classic
//! belief sums under all three kinds.

use crate::{epsilon, Bpa, Error, FuzzySet, Result};

/// Which inclusion measure `I(A ⊂ B)` to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureKind {
    Ishizuka,
    Yager,
    Ogawa,
}

impl MeasureKind {
    pub const ALL: [MeasureKind; 3] = [
        MeasureKind::Ishizuka,
        MeasureKind::Yager,
        MeasureKind::Ogawa,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            MeasureKind::Ishizuka => "ishizuka",
            MeasureKind::Yager => "yager",
            MeasureKind::Ogawa => "ogawa",
        }
    }
}

/// Expected possibility: `sum_i m(A_i) * sup(B ∩ A_i)` — the mass-weighted
/// peak of each focal's min-intersection with the query.
pub fn expected_possibility(m: &Bpa, b: &FuzzySet) -> Result<f64> {
    if m.frame() != b.frame() {
        return Err(Error::FrameMismatch);
    }
    let mut total = 0.0;
    for (focal, mass) in m.focals() {
        total += mass * focal.intersect_min(b)?.peak();
    }
    Ok(total)
}

/// Expected certainty, computed exclusively through the complement identity
/// `EC(B) = 1 - EΠ(B^c)` so no implication operator has to be chosen.
pub fn expected_certainty(m: &Bpa, b: &FuzzySet) -> Result<f64> {
    Ok(1.0 - expected_possibility(m, &b.complement())?)
}

/// Degree to which `a` is included in `b` under the chosen measure.
/// `a` must be nonempty.
pub fn inclusion(kind: MeasureKind, a: &FuzzySet, b: &FuzzySet) -> Result<f64> {
    if a.frame() != b.frame() {
        return Err(Error::FrameMismatch);
    }
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let value = match kind {
        // min_x [1 ∧ (1 + mu_B - mu_A)] / max_x mu_A, clamped into [0,1]
        // (the quotient exceeds 1 for subnormal a).
        MeasureKind::Ishizuka => {
            let min = a
                .grades()
                .iter()
                .zip(b.grades())
                .map(|(&ga, &gb)| (1.0 + gb - ga).min(1.0))
                .fold(f64::INFINITY, f64::min);
            min / a.peak()
        }
        // min_x [(1 - mu_A) ∨ mu_B]: pointwise Kleene implication.
        MeasureKind::Yager => a
            .grades()
            .iter()
            .zip(b.grades())
            .map(|(&ga, &gb)| (1.0 - ga).max(gb))
            .fold(f64::INFINITY, f64::min),
        // Relative sigma-count: sum min(mu_A, mu_B) / sum mu_A.
        MeasureKind::Ogawa => {
            let numerator: f64 = a
                .grades()
                .iter()
                .zip(b.grades())
                .map(|(&ga, &gb)| ga.min(gb))
                .sum();
            let denominator: f64 = a.grades().iter().sum();
            numerator / denominator
        }
    };
    Ok(value.clamp(0.0, 1.0))
}

/// Inclusion-weighted belief: `sum_i I(A_i ⊂ B) * m(A_i)`.
pub fn bel_via_inclusion(kind: MeasureKind, m: &Bpa, b: &FuzzySet) -> Result<f64> {
    if m.frame() != b.frame() {
        return Err(Error::FrameMismatch);
    }
    let mut total = 0.0;
    for (focal, mass) in m.focals() {
        total += mass * inclusion(kind, focal, b)?;
    }
    Ok(total)
}

/// Degree of intersection `J(A, B) = peak(A ∩ B) / min(peak(A), peak(B))`.
/// 0 when either set is empty.
pub fn degree_of_intersection(a: &FuzzySet, b: &FuzzySet) -> Result<f64> {
    if a.frame() != b.frame() {
        return Err(Error::FrameMismatch);
    }
    let denominator = a.peak().min(b.peak());
    if denominator <= epsilon() {
        return Ok(0.0);
    }
    Ok(a.intersect_min(b)?.peak() / denominator)
}

/// The degree-of-intersection combination rule, evaluated literally: the
/// focal for each pair is the raw (possibly subnormal) min-intersection with
/// weight `J * m1 * m2`, renormalized by `1 - sum (1 - J) m1 m2`. The output
/// bpa may carry subnormal focals; the main-path rule in [`crate::combine`]
/// normalizes them instead and agrees with this one on normal inputs up to
/// that normalization.
pub fn ishizuka_combine(m1: &Bpa, m2: &Bpa) -> Result<Bpa> {
    if m1.frame() != m2.frame() {
        return Err(Error::FrameMismatch);
    }
    let eps = epsilon();
    let mut conflict = 0.0;
    let mut groups: Vec<(FuzzySet, f64)> = Vec::new();
    for (a, ma) in m1.focals() {
        for (b, mb) in m2.focals() {
            let j = degree_of_intersection(a, b)?;
            let product = ma * mb;
            conflict += (1.0 - j) * product;
            let weight = j * product;
            if weight <= 0.0 {
                continue;
            }
            let intersection = a.intersect_min(b)?;
            match groups.iter_mut().find(|(f, _)| f.approx_eq(&intersection)) {
                Some((_, mass)) => *mass += weight,
                None => groups.push((intersection, weight)),
            }
        }
    }
    let denominator = 1.0 - conflict;
    if denominator <= eps {
        return Err(Error::TotalConflict(conflict));
    }
    for (_, mass) in &mut groups {
        *mass /= denominator;
    }
    Bpa::new_allow_subnormal(m1.frame().clone(), groups)
}
