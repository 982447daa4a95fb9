//! JSON wire formats for the domain values.
//!
//! Grade and probability maps are keyed by label; omitted labels mean zero.
//! Maps serialize through `BTreeMap` so output key order is deterministic.
//! Unknown JSON fields are ignored on input, which lets the `combine`
//! output (a bpa plus a `conflict_mass` field) feed straight back into any
//! verb expecting a bpa.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::{
    epsilon, Bpa, CompatibilityRelation, Error, Frame, FuzzySet, Result, SourceDistribution,
};

/// Bpa mass sums further than ε from 1 but within this bound are
/// renormalized with a warning (or rejected under `--strict`).
pub const LENIENT_MASS_TOLERANCE: f64 = 1e-6;

/// `{"frame": [...], "grades": {"label": grade, ...}}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FuzzySetJson {
    pub frame: Vec<String>,
    #[serde(default)]
    pub grades: BTreeMap<String, f64>,
}

impl FuzzySetJson {
    pub fn to_set(&self) -> Result<FuzzySet> {
        let frame = Frame::new(self.frame.clone())?;
        set_from_map(frame, &self.grades)
    }

    pub fn from_set(set: &FuzzySet) -> Self {
        FuzzySetJson {
            frame: set.frame().labels().to_vec(),
            grades: map_from_set(set),
        }
    }
}

fn set_from_map(frame: Frame, grades: &BTreeMap<String, f64>) -> Result<FuzzySet> {
    let mut dense = vec![0.0; frame.len()];
    for (label, &grade) in grades {
        let i = frame
            .index_of(label)
            .ok_or_else(|| Error::UnknownLabel(label.clone()))?;
        dense[i] = grade;
    }
    FuzzySet::new(frame, dense)
}

fn map_from_set(set: &FuzzySet) -> BTreeMap<String, f64> {
    set.frame()
        .labels()
        .iter()
        .zip(set.grades())
        .filter(|(_, &g)| g > 0.0)
        .map(|(l, &g)| (l.clone(), g))
        .collect()
}

/// One focal of a bpa: `{"grades": {...}, "mass": m}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FocalJson {
    #[serde(default)]
    pub grades: BTreeMap<String, f64>,
    pub mass: f64,
}

/// `{"frame": [...], "focals": [...]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BpaJson {
    pub frame: Vec<String>,
    pub focals: Vec<FocalJson>,
}

impl BpaJson {
    /// Builds the bpa. A mass sum within [`LENIENT_MASS_TOLERANCE`] of 1 but
    /// beyond ε is renormalized and reported in the returned warning; under
    /// `strict` it is an error instead.
    pub fn to_bpa(&self, strict: bool) -> Result<(Bpa, Option<String>)> {
        let frame = Frame::new(self.frame.clone())?;
        let mut focals = Vec::with_capacity(self.focals.len());
        for focal in &self.focals {
            focals.push((set_from_map(frame.clone(), &focal.grades)?, focal.mass));
        }
        let sum: f64 = focals.iter().map(|(_, m)| m).sum();
        let drift = (sum - 1.0).abs();
        let mut warning = None;
        if drift > epsilon() {
            if strict || drift > LENIENT_MASS_TOLERANCE || !sum.is_finite() || sum <= 0.0 {
                return Err(Error::BadMass(format!("masses sum to {sum}, not 1")));
            }
            for (_, m) in &mut focals {
                *m /= sum;
            }
            warning = Some(format!(
                "focal masses sum to {sum}; renormalized (use --strict to reject)"
            ));
        }
        Ok((Bpa::new(frame, focals)?, warning))
    }

    pub fn from_bpa(bpa: &Bpa) -> Self {
        BpaJson {
            frame: bpa.frame().labels().to_vec(),
            focals: bpa
                .focals()
                .iter()
                .map(|(set, mass)| FocalJson {
                    grades: map_from_set(set),
                    mass: *mass,
                })
                .collect(),
        }
    }
}

/// `combine` output: a bpa plus the conflict mass.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CombineJson {
    pub frame: Vec<String>,
    pub focals: Vec<FocalJson>,
    pub conflict_mass: f64,
}

impl CombineJson {
    pub fn new(report: &crate::CombinationReport) -> Self {
        let bpa = BpaJson::from_bpa(&report.result);
        CombineJson {
            frame: bpa.frame,
            focals: bpa.focals,
            conflict_mass: report.conflict_mass,
        }
    }
}

/// `{"source": [...], "target": [...], "rows": {"s": {"t": grade, ...}}}`
/// Omitted rows and cells are zero.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RelationJson {
    pub source: Vec<String>,
    pub target: Vec<String>,
    #[serde(default)]
    pub rows: BTreeMap<String, BTreeMap<String, f64>>,
}

impl RelationJson {
    pub fn to_relation(&self) -> Result<CompatibilityRelation> {
        let source = Frame::new(self.source.clone())?;
        let target = Frame::new(self.target.clone())?;
        for label in self.rows.keys() {
            if source.index_of(label).is_none() {
                return Err(Error::UnknownLabel(label.clone()));
            }
        }
        let mut matrix = Vec::with_capacity(source.len());
        for label in source.labels() {
            let mut dense = vec![0.0; target.len()];
            if let Some(row) = self.rows.get(label) {
                for (t, &grade) in row {
                    let i = target
                        .index_of(t)
                        .ok_or_else(|| Error::UnknownLabel(t.clone()))?;
                    dense[i] = grade;
                }
            }
            matrix.push(dense);
        }
        CompatibilityRelation::new(source, target, matrix)
    }
}

/// `{"frame": [...], "p": {"label": probability, ...}}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DistributionJson {
    pub frame: Vec<String>,
    #[serde(default)]
    pub p: BTreeMap<String, f64>,
}

impl DistributionJson {
    pub fn to_distribution(&self) -> Result<SourceDistribution> {
        let frame = Frame::new(self.frame.clone())?;
        let mut dense = vec![0.0; frame.len()];
        for (label, &prob) in &self.p {
            let i = frame
                .index_of(label)
                .ok_or_else(|| Error::UnknownLabel(label.clone()))?;
            dense[i] = prob;
        }
        SourceDistribution::new(frame, dense)
    }
}

/// One level of a decomposition, with the cut as its member labels.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LevelJson {
    pub alpha: f64,
    pub cut: Vec<String>,
    pub fraction: f64,
}

/// `decompose` output: `{"levels": [...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub levels: Vec<LevelJson>,
}

impl DecompositionJson {
    pub fn new(d: &crate::Decomposition) -> Self {
        DecompositionJson {
            levels: d
                .levels()
                .iter()
                .map(|level| LevelJson {
                    alpha: level.alpha,
                    cut: level
                        .cut
                        .member_labels()
                        .iter()
                        .map(|s| s.to_string())
                        .collect(),
                    fraction: level.fraction,
                })
                .collect(),
        }
    }
}
