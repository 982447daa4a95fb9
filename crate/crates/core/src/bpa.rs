//! Compatibility relations, granules, and induction of basic probability
//! assignments from a source probability distribution.

use crate::{approx_eq, epsilon, Error, Frame, FuzzySet, Result};

/// Separator used when labelling product-space elements `r⊗s`.
pub const PRODUCT_SEPARATOR: char = '\u{2297}';

/// Joint possibility distribution over a source space S and the frame T.
/// The classic relation is the special case with entries in {0,1}.
#[derive(Debug, Clone, PartialEq)]
pub struct CompatibilityRelation {
    source: Frame,
    target: Frame,
    rows: Vec<Vec<f64>>,
}

impl CompatibilityRelation {
    pub fn new(source: Frame, target: Frame, rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.len() != source.len() {
            return Err(Error::LengthMismatch {
                expected: source.len(),
                got: rows.len(),
            });
        }
        let eps = epsilon();
        let mut clamped = rows;
        for row in &mut clamped {
            if row.len() != target.len() {
                return Err(Error::LengthMismatch {
                    expected: target.len(),
                    got: row.len(),
                });
            }
            for e in row.iter_mut() {
                if !e.is_finite() || *e < -eps || *e > 1.0 + eps {
                    return Err(Error::GradeOutOfRange(*e));
                }
                *e = e.clamp(0.0, 1.0);
            }
        }
        Ok(CompatibilityRelation {
            source,
            target,
            rows: clamped,
        })
    }

    pub fn source(&self) -> &Frame {
        &self.source
    }

    pub fn target(&self) -> &Frame {
        &self.target
    }

    pub fn entry(&self, s: usize, t: usize) -> f64 {
        self.rows[s][t]
    }

    /// All possibilities are 0 or 1 (the original multivalued mapping).
    pub fn is_classic(&self) -> bool {
        let eps = epsilon();
        self.rows
            .iter()
            .flatten()
            .all(|&e| e <= eps || e >= 1.0 - eps)
    }

    /// Conditional possibility distribution of the frame given source
    /// element `s`: the max-min composition of the singleton {s} with the
    /// relation, which for a singleton is just row s.
    pub fn granule(&self, s: &str) -> Result<FuzzySet> {
        let i = self
            .source
            .index_of(s)
            .ok_or_else(|| Error::UnknownLabel(s.to_string()))?;
        Ok(self.granule_at(i))
    }

    pub fn granule_at(&self, index: usize) -> FuzzySet {
        FuzzySet::new(self.target.clone(), self.rows[index].clone())
            .expect("validated at construction")
    }
}

/// Probability distribution over the source space.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceDistribution {
    frame: Frame,
    probabilities: Vec<f64>,
}

impl SourceDistribution {
    pub fn new(frame: Frame, probabilities: Vec<f64>) -> Result<Self> {
        if probabilities.len() != frame.len() {
            return Err(Error::LengthMismatch {
                expected: frame.len(),
                got: probabilities.len(),
            });
        }
        for &p in &probabilities {
            if !p.is_finite() || p < 0.0 {
                return Err(Error::BadProbability(format!("negative entry {p}")));
            }
        }
        let sum: f64 = probabilities.iter().sum();
        if !approx_eq(sum, 1.0) {
            return Err(Error::BadProbability(format!(
                "entries sum to {sum}, not 1"
            )));
        }
        Ok(SourceDistribution {
            frame,
            probabilities,
        })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }
}

/// Basic probability assignment: focal elements (possibly fuzzy, all normal)
/// with strictly positive masses summing to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Bpa {
    frame: Frame,
    focals: Vec<(FuzzySet, f64)>,
}

impl Bpa {
    /// Validating constructor: merges grade-wise equal focals by adding their
    /// masses, then checks positivity, the unit mass sum, and normality of
    /// every focal.
    pub fn new(frame: Frame, focals: Vec<(FuzzySet, f64)>) -> Result<Self> {
        let bpa = Self::new_allow_subnormal(frame, focals)?;
        for (focal, _) in &bpa.focals {
            if !focal.is_normal() {
                return Err(Error::SubnormalFocal(focal.peak()));
            }
        }
        Ok(bpa)
    }

    /// Same merging and mass checks but without the normality gate. Only the
    /// literal legacy combination rule produces subnormal focals; everything
    /// in the main path goes through [`Bpa::new`].
    pub(crate) fn new_allow_subnormal(frame: Frame, focals: Vec<(FuzzySet, f64)>) -> Result<Self> {
        let mut merged: Vec<(FuzzySet, f64)> = Vec::with_capacity(focals.len());
        for (focal, mass) in focals {
            if focal.frame() != &frame {
                return Err(Error::FrameMismatch);
            }
            if !mass.is_finite() || mass <= 0.0 {
                return Err(Error::BadMass(format!("focal mass {mass} is not positive")));
            }
            match merged.iter_mut().find(|(f, _)| f.approx_eq(&focal)) {
                Some((_, m)) => *m += mass,
                None => merged.push((focal, mass)),
            }
        }
        let sum: f64 = merged.iter().map(|(_, m)| m).sum();
        if !approx_eq(sum, 1.0) {
            return Err(Error::BadMass(format!("masses sum to {sum}, not 1")));
        }
        if merged.is_empty() {
            return Err(Error::BadMass("a bpa needs at least one focal".into()));
        }
        Ok(Bpa {
            frame,
            focals: merged,
        })
    }

    /// The vacuous bpa: all mass on the whole frame.
    pub fn vacuous(frame: Frame) -> Self {
        let whole = FuzzySet::whole(frame.clone());
        Bpa {
            frame,
            focals: vec![(whole, 1.0)],
        }
    }

    /// Single-focal bpa carrying the entire unit mass.
    pub fn single(focal: FuzzySet) -> Result<Self> {
        Bpa::new(focal.frame().clone(), vec![(focal, 1.0)])
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn focals(&self) -> &[(FuzzySet, f64)] {
        &self.focals
    }

    pub fn len(&self) -> usize {
        self.focals.len()
    }

    pub fn is_empty(&self) -> bool {
        false // at least one focal by construction
    }

    pub fn is_crisp(&self) -> bool {
        self.focals.iter().all(|(f, _)| f.is_crisp())
    }

    /// Focal-wise comparison within tolerance, after canonical ordering.
    pub fn approx_eq(&self, other: &Bpa) -> bool {
        if self.frame != other.frame || self.focals.len() != other.focals.len() {
            return false;
        }
        let eps = epsilon();
        let mut a = self.focals.clone();
        let mut b = other.focals.clone();
        canonical_sort(&mut a);
        canonical_sort(&mut b);
        a.iter()
            .zip(&b)
            .all(|((fa, ma), (fb, mb))| fa.approx_eq(fb) && (ma - mb).abs() <= eps)
    }
}

/// Orders focals by their grade vectors (total order on f64), used wherever a
/// deterministic focal order is needed.
pub(crate) fn canonical_sort(focals: &mut [(FuzzySet, f64)]) {
    focals.sort_by(|(a, _), (b, _)| {
        let mut ord = std::cmp::Ordering::Equal;
        for (x, y) in a.grades().iter().zip(b.grades()) {
            ord = x.total_cmp(y);
            if ord != std::cmp::Ordering::Equal {
                break;
            }
        }
        ord
    });
}

/// Induces a bpa on the relation's target frame: granules of equal shape are
/// grouped, their source probability pooled, and the pool renormalized by the
/// probability not lost to empty granules.
pub fn induce_bpa(p: &SourceDistribution, rel: &CompatibilityRelation) -> Result<Bpa> {
    if p.frame() != rel.source() {
        return Err(Error::FrameMismatch);
    }
    let eps = epsilon();
    // Normality is an assumption on the relation itself, so every granule is
    // checked, not just those carrying probability.
    for i in 0..rel.source().len() {
        let g = rel.granule_at(i);
        let peak = g.peak();
        if peak > eps && peak < 1.0 - eps {
            return Err(Error::SubnormalGranule {
                label: rel.source().label(i).to_string(),
                peak,
            });
        }
    }
    let mut groups: Vec<(FuzzySet, f64)> = Vec::new();
    let mut discarded = 0.0;
    for (i, &prob) in p.probabilities().iter().enumerate() {
        if prob <= 0.0 {
            continue;
        }
        let g = rel.granule_at(i);
        if g.is_empty() {
            discarded += prob;
            continue;
        }
        match groups.iter_mut().find(|(f, _)| f.approx_eq(&g)) {
            Some((_, m)) => *m += prob,
            None => groups.push((g, prob)),
        }
    }
    let kept = 1.0 - discarded;
    if kept <= eps || groups.is_empty() {
        return Err(Error::TotalIncompatibility);
    }
    for (_, m) in &mut groups {
        *m /= kept;
    }
    Bpa::new(rel.target().clone(), groups)
}

/// Combines two relations over source spaces R and S into one over the
/// product space R×S under noninteractivity: the joint possibility of
/// ([r,s], t) is the min of the marginals, so the granule of [r,s] is the
/// min-intersection of the granules of r and s.
pub fn combine_relations(
    c1: &CompatibilityRelation,
    c2: &CompatibilityRelation,
) -> Result<CompatibilityRelation> {
    if c1.target() != c2.target() {
        return Err(Error::FrameMismatch);
    }
    for label in c1.source().labels().iter().chain(c2.source().labels()) {
        if label.contains(PRODUCT_SEPARATOR) {
            return Err(Error::ReservedSeparator(label.clone()));
        }
    }
    let mut labels = Vec::with_capacity(c1.source().len() * c2.source().len());
    let mut rows = Vec::with_capacity(labels.capacity());
    for (r, row1) in c1.source().labels().iter().zip(&c1.rows) {
        for (s, row2) in c2.source().labels().iter().zip(&c2.rows) {
            labels.push(format!("{r}{PRODUCT_SEPARATOR}{s}"));
            rows.push(row1.iter().zip(row2).map(|(&a, &b)| a.min(b)).collect());
        }
    }
    CompatibilityRelation::new(Frame::new(labels)?, c1.target().clone(), rows)
}
