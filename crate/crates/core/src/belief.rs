//! Belief and plausibility of fuzzy sets as lower/upper probabilities.
//!
//! Each fuzzy focal is decomposed into its alpha-level sets; a level
//! contributes its mass fraction times the smallest (belief) or largest
//! (plausibility) membership the query assigns to an element of the cut.
//! Summed over levels and focals this yields the closed forms that the
//! [`crate::oracle`] module cross-checks against the underlying linear
//! program.

use crate::{approx_eq, epsilon, Bpa, Error, FuzzySet, Result};

/// The range `[bel, pls]` admitted for the probability of a query set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeliefInterval {
    pub bel: f64,
    pub pls: f64,
}

impl BeliefInterval {
    pub fn width(&self) -> f64 {
        self.pls - self.bel
    }

    pub fn approx_eq(&self, other: &BeliefInterval) -> bool {
        approx_eq(self.bel, other.bel) && approx_eq(self.pls, other.pls)
    }
}

impl std::fmt::Display for BeliefInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}]", self.bel, self.pls)
    }
}

fn check_mass(mass: f64) -> Result<()> {
    if !mass.is_finite() || mass < 0.0 || mass > 1.0 + epsilon() {
        return Err(Error::BadMass(format!(
            "focal mass {mass} is outside [0, 1]"
        )));
    }
    Ok(())
}

/// Per-focal lower and upper coefficients: the inf- and sup-weighted level
/// sums of the query's membership over the focal's decomposition. Multiplied
/// by the focal's mass these are its contributions to belief and
/// plausibility.
fn coefficients(query: &FuzzySet, focal: &FuzzySet) -> Result<(f64, f64)> {
    if query.frame() != focal.frame() {
        return Err(Error::FrameMismatch);
    }
    let decomposition = focal.decompose()?;
    let mut lower = 0.0;
    let mut upper = 0.0;
    for level in decomposition.levels() {
        let mut inf = f64::INFINITY;
        let mut sup = 0.0f64;
        for (i, &member) in level.cut.grades().iter().enumerate() {
            if member > 0.0 {
                let g = query.grade(i);
                inf = inf.min(g);
                sup = sup.max(g);
            }
        }
        debug_assert!(inf.is_finite(), "alpha-cuts of a normal focal are nonempty");
        lower += level.fraction * inf;
        upper += level.fraction * sup;
    }
    Ok((lower, upper))
}

/// Lower mass contribution of a focal `a` with mass `m` to the belief of
/// `b`: `m * sum_i (alpha_i - alpha_{i-1}) * inf_{x in A_{alpha_i}} mu_b(x)`.
pub fn mass_lower(b: &FuzzySet, a: &FuzzySet, m: f64) -> Result<f64> {
    check_mass(m)?;
    Ok(m * coefficients(b, a)?.0)
}

/// Upper mass contribution: as [`mass_lower`] with the sup over each cut.
pub fn mass_upper(b: &FuzzySet, a: &FuzzySet, m: f64) -> Result<f64> {
    check_mass(m)?;
    Ok(m * coefficients(b, a)?.1)
}

/// Belief of `b` under `m`: the sum of [`mass_lower`] over all focals.
pub fn bel(m: &Bpa, b: &FuzzySet) -> Result<f64> {
    if m.frame() != b.frame() {
        return Err(Error::FrameMismatch);
    }
    let mut total = 0.0;
    for (focal, mass) in m.focals() {
        total += mass * coefficients(b, focal)?.0;
    }
    Ok(total)
}

/// Plausibility of `b` under `m`: the sum of [`mass_upper`] over all focals.
pub fn pls(m: &Bpa, b: &FuzzySet) -> Result<f64> {
    if m.frame() != b.frame() {
        return Err(Error::FrameMismatch);
    }
    let mut total = 0.0;
    for (focal, mass) in m.focals() {
        total += mass * coefficients(b, focal)?.1;
    }
    Ok(total)
}

/// Both bounds in one pass over the focals.
pub fn interval(m: &Bpa, b: &FuzzySet) -> Result<BeliefInterval> {
    if m.frame() != b.frame() {
        return Err(Error::FrameMismatch);
    }
    let mut lower = 0.0;
    let mut upper = 0.0;
    for (focal, mass) in m.focals() {
        let (lo, up) = coefficients(b, focal)?;
        lower += mass * lo;
        upper += mass * up;
    }
    debug_assert!(lower <= upper + epsilon());
    Ok(BeliefInterval {
        bel: lower,
        pls: upper,
    })
}

/// Classic belief over crisp focals: the mass of focals contained in `b`.
/// Cross-check path only; must equal [`bel`] on the same inputs.
pub fn bel_crisp(m: &Bpa, b: &FuzzySet) -> Result<f64> {
    if m.frame() != b.frame() {
        return Err(Error::FrameMismatch);
    }
    if !m.is_crisp() || !b.is_crisp() {
        return Err(Error::NotCrisp);
    }
    let mut total = 0.0;
    for (focal, mass) in m.focals() {
        if focal.is_subset_of(b) {
            total += mass;
        }
    }
    Ok(total)
}

/// Classic plausibility over crisp focals: the mass of focals meeting `b`.
pub fn pls_crisp(m: &Bpa, b: &FuzzySet) -> Result<f64> {
    if m.frame() != b.frame() {
        return Err(Error::FrameMismatch);
    }
    if !m.is_crisp() || !b.is_crisp() {
        return Err(Error::NotCrisp);
    }
    let eps = epsilon();
    let mut total = 0.0;
    for (focal, mass) in m.focals() {
        let meets = focal
            .grades()
            .iter()
            .zip(b.grades())
            .any(|(&x, &y)| x.min(y) > eps);
        if meets {
            total += mass;
        }
    }
    Ok(total)
}

/// Plausibility of the crisp singleton `{t}` via the membership identity
/// `Pls({t}) = sum_A m(A) * mu_A(t)` — the maximum mass allocatable to `t`.
pub fn singleton_pls(m: &Bpa, t: &str) -> Result<f64> {
    let i = m
        .frame()
        .index_of(t)
        .ok_or_else(|| Error::UnknownLabel(t.to_string()))?;
    Ok(m.focals()
        .iter()
        .map(|(focal, mass)| mass * focal.grade(i))
        .sum())
}
