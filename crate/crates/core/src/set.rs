//! Frames of discernment, fuzzy subsets, alpha-level cuts and the
//! resolution-identity decomposition.

use std::fmt;
use std::sync::Arc;

use crate::{approx_eq, epsilon, Error, Result};

/// Finite ordered set of hypothesis labels. Element order is fixed at
/// construction and defines vector indexing everywhere downstream.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Frame {
    labels: Arc<Vec<String>>,
}

impl Frame {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyFrame);
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(Frame {
            labels: Arc::new(labels),
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false // nonempty by construction
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// Fuzzy subset of a frame: one membership grade in [0,1] per element.
/// Crisp sets are the special case with grades in {0,1}.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzySet {
    frame: Frame,
    grades: Vec<f64>,
}

impl FuzzySet {
    /// Builds a set from a dense grade vector. Grades within tolerance of the
    /// unit interval are clamped onto it; anything farther out is rejected.
    pub fn new(frame: Frame, grades: Vec<f64>) -> Result<Self> {
        if grades.len() != frame.len() {
            return Err(Error::LengthMismatch {
                expected: frame.len(),
                got: grades.len(),
            });
        }
        let eps = epsilon();
        let mut clamped = grades;
        for g in &mut clamped {
            if !g.is_finite() || *g < -eps || *g > 1.0 + eps {
                return Err(Error::GradeOutOfRange(*g));
            }
            *g = g.clamp(0.0, 1.0);
        }
        Ok(FuzzySet {
            frame,
            grades: clamped,
        })
    }

    /// Set with the given labels at grade 1 and everything else at 0.
    pub fn crisp(frame: Frame, members: &[&str]) -> Result<Self> {
        let mut grades = vec![0.0; frame.len()];
        for label in members {
            let i = frame
                .index_of(label)
                .ok_or_else(|| Error::UnknownLabel((*label).to_string()))?;
            grades[i] = 1.0;
        }
        Ok(FuzzySet { frame, grades })
    }

    /// Set from (label, grade) pairs; omitted labels get grade 0.
    pub fn from_grades(frame: Frame, pairs: &[(&str, f64)]) -> Result<Self> {
        let mut grades = vec![0.0; frame.len()];
        for (label, g) in pairs {
            let i = frame
                .index_of(label)
                .ok_or_else(|| Error::UnknownLabel((*label).to_string()))?;
            grades[i] = *g;
        }
        FuzzySet::new(frame, grades)
    }

    pub fn empty(frame: Frame) -> Self {
        let n = frame.len();
        FuzzySet {
            frame,
            grades: vec![0.0; n],
        }
    }

    /// The whole frame as a crisp set.
    pub fn whole(frame: Frame) -> Self {
        let n = frame.len();
        FuzzySet {
            frame,
            grades: vec![1.0; n],
        }
    }

    pub fn singleton(frame: Frame, label: &str) -> Result<Self> {
        FuzzySet::crisp(frame, &[label])
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn grades(&self) -> &[f64] {
        &self.grades
    }

    pub fn grade(&self, index: usize) -> f64 {
        self.grades[index]
    }

    pub fn grade_of(&self, label: &str) -> Result<f64> {
        let i = self
            .frame
            .index_of(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
        Ok(self.grades[i])
    }

    /// Highest membership grade, sup_x of the membership function.
    pub fn peak(&self) -> f64 {
        self.grades.iter().copied().fold(0.0, f64::max)
    }

    pub fn is_normal(&self) -> bool {
        self.peak() >= 1.0 - epsilon()
    }

    pub fn is_empty(&self) -> bool {
        self.peak() <= epsilon()
    }

    pub fn is_crisp(&self) -> bool {
        let eps = epsilon();
        self.grades.iter().all(|&g| g <= eps || g >= 1.0 - eps)
    }

    /// Number of elements with nonzero grade.
    pub fn support_size(&self) -> usize {
        let eps = epsilon();
        self.grades.iter().filter(|&&g| g > eps).count()
    }

    /// Crisp set of all elements with nonzero grade.
    pub fn support(&self) -> FuzzySet {
        let eps = epsilon();
        let grades = self
            .grades
            .iter()
            .map(|&g| if g > eps { 1.0 } else { 0.0 })
            .collect();
        FuzzySet {
            frame: self.frame.clone(),
            grades,
        }
    }

    /// Grade-wise equality within the global tolerance.
    pub fn approx_eq(&self, other: &FuzzySet) -> bool {
        self.frame == other.frame
            && self
                .grades
                .iter()
                .zip(&other.grades)
                .all(|(&a, &b)| approx_eq(a, b))
    }

    /// Pointwise `mu_self <= mu_other` within tolerance.
    pub fn is_subset_of(&self, other: &FuzzySet) -> bool {
        self.frame == other.frame
            && self
                .grades
                .iter()
                .zip(&other.grades)
                .all(|(&a, &b)| a <= b + epsilon())
    }

    /// Crisp level set {x | mu(x) >= alpha} for alpha in (0,1].
    pub fn alpha_cut(&self, alpha: f64) -> Result<FuzzySet> {
        let eps = epsilon();
        if !alpha.is_finite() || alpha <= 0.0 || alpha > 1.0 + eps {
            return Err(Error::AlphaOutOfRange(alpha));
        }
        let grades = self
            .grades
            .iter()
            .map(|&g| if g >= alpha - eps { 1.0 } else { 0.0 })
            .collect();
        Ok(FuzzySet {
            frame: self.frame.clone(),
            grades,
        })
    }

    /// Pointwise minimum, the fuzzy intersection.
    pub fn intersect_min(&self, other: &FuzzySet) -> Result<FuzzySet> {
        if self.frame != other.frame {
            return Err(Error::FrameMismatch);
        }
        let grades = self
            .grades
            .iter()
            .zip(&other.grades)
            .map(|(&a, &b)| a.min(b))
            .collect();
        Ok(FuzzySet {
            frame: self.frame.clone(),
            grades,
        })
    }

    /// Pointwise `1 - mu`; involutive.
    pub fn complement(&self) -> FuzzySet {
        let grades = self.grades.iter().map(|&g| 1.0 - g).collect();
        FuzzySet {
            frame: self.frame.clone(),
            grades,
        }
    }

    /// Splits a normal set into its alpha-level sets with their mass
    /// fractions. The alphas are exactly the distinct nonzero grades present
    /// in the membership vector, ascending; fraction_i = alpha_i - alpha_{i-1}.
    pub fn decompose(&self) -> Result<Decomposition> {
        if self.is_empty() {
            return Err(Error::EmptySet);
        }
        if !self.is_normal() {
            return Err(Error::SubnormalFocal(self.peak()));
        }
        self.decompose_any()
    }

    /// Decomposition without the normality gate; fractions then sum to the
    /// peak rather than to 1. Needed internally for subnormal-focal mass
    /// accounting.
    pub(crate) fn decompose_any(&self) -> Result<Decomposition> {
        if self.is_empty() {
            return Err(Error::EmptySet);
        }
        let eps = epsilon();
        let mut alphas: Vec<f64> = self.grades.iter().copied().filter(|&g| g > eps).collect();
        alphas.sort_by(|a, b| a.partial_cmp(b).unwrap());
        // Cluster grades within tolerance; keep the largest of each cluster so
        // the cut at (alpha - eps) still captures every cluster member.
        let mut distinct: Vec<f64> = Vec::new();
        for a in alphas {
            match distinct.last_mut() {
                Some(last) if a - *last <= eps => *last = a,
                _ => distinct.push(a),
            }
        }
        if let Some(last) = distinct.last_mut() {
            if approx_eq(*last, 1.0) {
                *last = 1.0;
            }
        }
        let mut levels = Vec::with_capacity(distinct.len());
        let mut prev = 0.0;
        for alpha in distinct {
            let cut = self.alpha_cut(alpha)?;
            levels.push(Level {
                alpha,
                cut,
                fraction: alpha - prev,
            });
            prev = alpha;
        }
        Ok(Decomposition { levels })
    }

    /// Recomposes a fuzzy set from a strictly nested chain of crisp focals
    /// with positive masses summing to 1. Each element's grade is the total
    /// mass of the chain members containing it, so decomposing the result
    /// returns exactly the given chain.
    pub fn from_consonant(focals: &[(FuzzySet, f64)]) -> Result<FuzzySet> {
        let (first, _) = focals.first().ok_or(Error::EmptySet)?;
        let frame = first.frame.clone();
        let mut sum = 0.0;
        for (set, mass) in focals {
            if set.frame != frame {
                return Err(Error::FrameMismatch);
            }
            if !set.is_crisp() {
                return Err(Error::NotCrisp);
            }
            if set.is_empty() {
                return Err(Error::EmptySet);
            }
            if !mass.is_finite() || *mass <= 0.0 {
                return Err(Error::BadMass(format!("focal mass {mass} is not positive")));
            }
            sum += mass;
        }
        if !approx_eq(sum, 1.0) {
            return Err(Error::BadMass(format!("masses sum to {sum}, not 1")));
        }
        let mut chain: Vec<&(FuzzySet, f64)> = focals.iter().collect();
        chain.sort_by_key(|(set, _)| set.support_size());
        for pair in chain.windows(2) {
            let (inner, outer) = (&pair[0].0, &pair[1].0);
            if !inner.is_subset_of(outer) || inner.approx_eq(outer) {
                return Err(Error::NotConsonant);
            }
        }
        let eps = epsilon();
        let mut grades = vec![0.0; frame.len()];
        for (set, mass) in focals {
            for (g, &member) in grades.iter_mut().zip(&set.grades) {
                if member > eps {
                    *g += mass;
                }
            }
        }
        FuzzySet::new(frame, grades)
    }

    /// Member labels of a crisp set, in frame order.
    pub fn member_labels(&self) -> Vec<&str> {
        let eps = epsilon();
        self.frame
            .labels()
            .iter()
            .zip(&self.grades)
            .filter(|(_, &g)| g > eps)
            .map(|(l, _)| l.as_str())
            .collect()
    }
}

impl fmt::Display for FuzzySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_crisp() {
            write!(f, "{{")?;
            for (i, label) in self.member_labels().iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{label}")?;
            }
            write!(f, "}}")
        } else {
            write!(f, "{{")?;
            let eps = epsilon();
            let mut first = true;
            for (label, &g) in self.frame.labels().iter().zip(&self.grades) {
                if g <= eps {
                    continue;
                }
                if !first {
                    write!(f, ", ")?;
                }
                write!(f, "{g}/{label}")?;
                first = false;
            }
            write!(f, "}}")
        }
    }
}

/// One alpha-level of a decomposition: the crisp cut and its mass fraction.
#[derive(Debug, Clone)]
pub struct Level {
    pub alpha: f64,
    pub cut: FuzzySet,
    pub fraction: f64,
}

/// Nested alpha-level sets of a fuzzy focal, ascending in alpha, with
/// fractions that sum to the peak of the source set (1 for a normal set).
#[derive(Debug, Clone)]
pub struct Decomposition {
    levels: Vec<Level>,
}

impl Decomposition {
    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// The chain as (cut, fraction) pairs, innermost level last.
    pub fn consonant_focals(&self) -> Vec<(FuzzySet, f64)> {
        self.levels
            .iter()
            .map(|l| (l.cut.clone(), l.fraction))
            .collect()
    }
}
