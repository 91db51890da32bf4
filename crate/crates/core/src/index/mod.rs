//! Degree-based topological indices and their optimization over the catalog.
//!
//! An index assigns a weight `c_ij` to each of the five edge types. Using the
//! completion identities, `I = c'12 m12 + c'13 m13 + c'33 m33 + C_I(n, m)`,
//! so the extremal values for fixed `(n, m)` are attained at extreme points
//! of the edge-type polytope.

pub mod exact;
pub mod formula;
pub mod preset;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{extreme_points, LabeledPoint, PointLabel};
use crate::edgetype::{CountsProfile, Point3, ValidPair};
use exact::Surd;
pub use formula::{EvalError, SyntaxError};
pub use preset::{descriptors as preset_descriptors, preset, PresetDescriptor};

/// Absolute tolerance on reduced index values used to detect ties.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IndexError {
    #[error("{0}")]
    Syntax(SyntaxError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("coefficient {edge} is not finite")]
    NonFiniteCoefficient { edge: EdgeType },
    #[error("unknown preset '{0}'")]
    UnknownPreset(String),
    #[error("index request must give exactly one of coeffs, formula or preset")]
    AmbiguousRequest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeType {
    #[serde(rename = "c12")]
    E12,
    #[serde(rename = "c13")]
    E13,
    #[serde(rename = "c22")]
    E22,
    #[serde(rename = "c23")]
    E23,
    #[serde(rename = "c33")]
    E33,
}

impl EdgeType {
    pub const ALL: [EdgeType; 5] = [
        EdgeType::E12,
        EdgeType::E13,
        EdgeType::E22,
        EdgeType::E23,
        EdgeType::E33,
    ];

    pub const fn degrees(self) -> (u8, u8) {
        match self {
            EdgeType::E12 => (1, 2),
            EdgeType::E13 => (1, 3),
            EdgeType::E22 => (2, 2),
            EdgeType::E23 => (2, 3),
            EdgeType::E33 => (3, 3),
        }
    }
}

impl fmt::Display for EdgeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j) = self.degrees();
        write!(f, "c{i}{j}")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IndexSource {
    Preset { name: String, alpha: Option<f64> },
    Coefficients,
    Formula { text: String },
}

/// The five edge weights of an index.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexSpec {
    coeffs: [f64; 5],
    exact: Option<[Surd; 5]>,
    pub source: IndexSource,
}

impl IndexSpec {
    fn from_parts(coeffs: [f64; 5], exact: Option<[Surd; 5]>, source: IndexSource) -> Result<Self, IndexError> {
        for (c, e) in coeffs.iter().zip(EdgeType::ALL) {
            if !c.is_finite() {
                return Err(IndexError::NonFiniteCoefficient { edge: e });
            }
        }
        Ok(IndexSpec { coeffs, exact, source })
    }

    /// Explicit weights in the order `c12, c13, c22, c23, c33`.
    pub fn from_coefficients(coeffs: [f64; 5]) -> Result<Self, IndexError> {
        Self::from_parts(coeffs, None, IndexSource::Coefficients)
    }

    pub fn coefficients(&self) -> [f64; 5] {
        self.coeffs
    }

    pub fn coefficient(&self, e: EdgeType) -> f64 {
        self.coeffs[e as usize]
    }

    pub fn exact_coefficients(&self) -> Option<&[Surd; 5]> {
        self.exact.as_ref()
    }

    /// Multiplies every weight by `k`.
    pub fn scaled(&self, k: f64) -> Result<Self, IndexError> {
        Self::from_parts(self.coeffs.map(|c| c * k), None, IndexSource::Coefficients)
    }

    pub fn label(&self) -> String {
        match &self.source {
            IndexSource::Preset { name, alpha: Some(a) } => format!("{name}(alpha={a})"),
            IndexSource::Preset { name, alpha: None } => name.clone(),
            IndexSource::Coefficients => "coefficients".to_string(),
            IndexSource::Formula { text } => text.clone(),
        }
    }
}

/// Parses a formula in `i`, `j` and evaluates it on the five degree pairs.
pub fn parse_index_formula(text: &str) -> Result<IndexSpec, IndexError> {
    let expr = formula::parse(text).map_err(IndexError::Syntax)?;
    let mut coeffs = [0.0; 5];
    for (k, e) in EdgeType::ALL.iter().enumerate() {
        let (i, j) = e.degrees();
        coeffs[k] = expr.eval(i, j)?;
    }
    IndexSpec::from_parts(coeffs, None, IndexSource::Formula { text: text.to_string() })
}

/// JSON form of an index: `{"coeffs": {...}}`, `{"formula": "..."}` or
/// `{"preset": "...", "alpha": ...}`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndexRequest {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<CoefficientMap>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub formula: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientMap {
    pub c12: f64,
    pub c13: f64,
    pub c22: f64,
    pub c23: f64,
    pub c33: f64,
}

impl IndexRequest {
    pub fn resolve(&self) -> Result<IndexSpec, IndexError> {
        match (&self.coeffs, &self.formula, &self.preset) {
            (Some(c), None, None) => IndexSpec::from_coefficients([c.c12, c.c13, c.c22, c.c23, c.c33]),
            (None, Some(f), None) => parse_index_formula(f),
            (None, None, Some(p)) => preset(p, self.alpha),
            _ => Err(IndexError::AmbiguousRequest),
        }
    }
}

/// Linear form `c'12 m12 + c'13 m13 + c'33 m33` plus what `C_I` needs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReducedIndex {
    pub cp12: f64,
    pub cp13: f64,
    pub cp33: f64,
    pub c22: f64,
    pub c23: f64,
}

/// Exact counterpart of [`ReducedIndex`] for presets with closed forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactReduced {
    pub cp12: Surd,
    pub cp13: Surd,
    pub cp33: Surd,
}

pub fn reduce(spec: &IndexSpec) -> ReducedIndex {
    let [c12, c13, c22, c23, c33] = spec.coeffs;
    ReducedIndex {
        cp12: c12 - 4.0 * c22 + 3.0 * c23,
        cp13: c13 - 3.0 * c22 + 2.0 * c23,
        cp33: c22 - 2.0 * c23 + c33,
        c22,
        c23,
    }
}

pub fn reduce_exact(spec: &IndexSpec) -> Option<ExactReduced> {
    let [c12, c13, c22, c23, c33] = spec.exact.clone()?;
    Some(ExactReduced {
        cp12: c12 - c22.clone() * 4 + c23.clone() * 3,
        cp13: c13 - c22.clone() * 3 + c23.clone() * 2,
        cp33: c22 - c23 * 2 + c33,
    })
}

impl ReducedIndex {
    /// `C_I(n, m) = (6n - 5m) c22 + (6m - 6n) c23`.
    pub fn constant(&self, pair: ValidPair) -> f64 {
        let (n, m) = (pair.n() as f64, pair.m() as f64);
        (6.0 * n - 5.0 * m) * self.c22 + (6.0 * m - 6.0 * n) * self.c23
    }

    pub fn coefficients(&self) -> [f64; 3] {
        [self.cp12, self.cp13, self.cp33]
    }
}

pub fn evaluate_reduced(red: &ReducedIndex, p: Point3) -> f64 {
    red.cp12 * p.m12 as f64 + red.cp13 * p.m13 as f64 + red.cp33 * p.m33 as f64
}

/// Direct edge-weight sum over a full census.
pub fn evaluate_full(spec: &IndexSpec, q: &CountsProfile) -> f64 {
    spec.coeffs.iter().zip(q.edge_counts()).map(|(c, k)| c * k as f64).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Max,
    Min,
}

impl Sense {
    pub fn flip(self) -> Sense {
        match self {
            Sense::Max => Sense::Min,
            Sense::Min => Sense::Max,
        }
    }
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sense::Max => "max",
            Sense::Min => "min",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Candidate {
    pub labels: Vec<PointLabel>,
    pub point: Point3,
    pub reduced_value: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizationResult {
    pub pair: ValidPair,
    pub sense: Sense,
    pub optimal_value: f64,
    pub optimal_reduced_value: f64,
    pub constant: f64,
    pub tolerance: f64,
    pub arg_points: Vec<LabeledPoint>,
    pub table: Vec<Candidate>,
}

impl OptimizationResult {
    pub fn arg_coordinates(&self) -> Vec<Point3> {
        self.arg_points.iter().map(|lp| lp.point).collect()
    }
}

pub fn optimize(spec: &IndexSpec, pair: ValidPair, sense: Sense) -> OptimizationResult {
    optimize_with_tolerance(spec, pair, sense, DEFAULT_TOLERANCE)
}

/// Evaluates the reduced index at every catalog extreme point and keeps all
/// points within `tolerance` of the optimum.
pub fn optimize_with_tolerance(spec: &IndexSpec, pair: ValidPair, sense: Sense, tolerance: f64) -> OptimizationResult {
    let red = reduce(spec);
    let constant = red.constant(pair);
    let points = extreme_points(pair);
    let table: Vec<Candidate> = points
        .iter()
        .map(|lp| {
            let reduced_value = evaluate_reduced(&red, lp.point);
            Candidate {
                labels: lp.labels.clone(),
                point: lp.point,
                reduced_value,
                value: reduced_value + constant,
            }
        })
        .collect();
    let better = |a: f64, b: f64| match sense {
        Sense::Max => a > b,
        Sense::Min => a < b,
    };
    let best = table
        .iter()
        .map(|c| c.reduced_value)
        .reduce(|acc, v| if better(v, acc) { v } else { acc })
        .expect("catalog answers are never empty");
    let arg_points = points
        .iter()
        .zip(&table)
        .filter(|(_, c)| (c.reduced_value - best).abs() <= tolerance)
        .map(|(lp, _)| lp.clone())
        .collect();
    OptimizationResult {
        pair,
        sense,
        optimal_value: best + constant,
        optimal_reduced_value: best,
        constant,
        tolerance,
        arg_points,
        table,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    Borderline,
}

/// Verdicts of the four sufficient conditions for paths and cycles to be
/// the unique extremal trees / unicyclic graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExtremalClassification {
    /// `c'13 < c'12 < -c'33 < 0`: the path uniquely maximizes over trees.
    pub path_unique_max: Verdict,
    /// `c'13 > c'12 > -c'33 > 0`: the path uniquely minimizes over trees.
    pub path_unique_min: Verdict,
    /// `max(0, -c'33) < min(c'12, c'13)`: the cycle uniquely minimizes.
    pub cycle_unique_min: Verdict,
    /// `max(c'12, c'13) < min(0, -c'33)`: the cycle uniquely maximizes.
    pub cycle_unique_max: Verdict,
}

/// Each pair `(a, b)` stands for the strict inequality `a < b`.
fn verdict(chain: &[(f64, f64)], tolerance: f64) -> Verdict {
    let mut out = Verdict::Holds;
    for &(a, b) in chain {
        let margin = b - a;
        if margin < -tolerance {
            return Verdict::Fails;
        }
        if margin <= tolerance {
            out = Verdict::Borderline;
        }
    }
    out
}

pub fn classify_extremal_family(spec: &IndexSpec) -> ExtremalClassification {
    classify_with_tolerance(spec, DEFAULT_TOLERANCE)
}

pub fn classify_with_tolerance(spec: &IndexSpec, tolerance: f64) -> ExtremalClassification {
    let r = reduce(spec);
    let (c12, c13, c33) = (r.cp12, r.cp13, r.cp33);
    ExtremalClassification {
        path_unique_max: verdict(&[(c13, c12), (c12, -c33), (-c33, 0.0)], tolerance),
        path_unique_min: verdict(&[(c12, c13), (-c33, c12), (0.0, -c33)], tolerance),
        cycle_unique_min: verdict(&[(0.0, c12), (0.0, c13), (-c33, c12), (-c33, c13)], tolerance),
        cycle_unique_max: verdict(&[(c12, 0.0), (c13, 0.0), (c12, -c33), (c13, -c33)], tolerance),
    }
}
