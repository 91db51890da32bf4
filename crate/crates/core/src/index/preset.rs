//! Named degree-based indices.

use serde::Serialize;

use super::exact::{Rational, Surd};
use super::{EdgeType, IndexError, IndexSource, IndexSpec};

#[derive(Debug, Clone, Serialize)]
pub struct ParamDescriptor {
    pub name: &'static str,
    #[serde(rename = "type")]
    pub kind: &'static str,
    pub default: f64,
}

/// Machine-readable description of a preset.
#[derive(Debug, Clone, Serialize)]
pub struct PresetDescriptor {
    pub name: &'static str,
    pub title: &'static str,
    pub formula: &'static str,
    pub params: Vec<ParamDescriptor>,
}

struct Preset {
    name: &'static str,
    title: &'static str,
    formula: &'static str,
    exact: fn(i: i128, j: i128) -> Option<Surd>,
}

fn ratio_sqrt(num: i128, den: i128) -> Option<Surd> {
    Surd::sqrt_of(Rational::new(num, den))
}

const PRESETS: &[Preset] = &[
    Preset {
        name: "randic",
        title: "Randic index",
        formula: "1/sqrt(i*j)",
        exact: |i, j| ratio_sqrt(1, i * j),
    },
    Preset {
        name: "sombor",
        title: "Sombor index",
        formula: "sqrt(i^2+j^2)",
        exact: |i, j| ratio_sqrt(i * i + j * j, 1),
    },
    Preset {
        name: "reduced_sombor",
        title: "Reduced Sombor index",
        formula: "sqrt((i-1)^2+(j-1)^2)",
        exact: |i, j| ratio_sqrt((i - 1) * (i - 1) + (j - 1) * (j - 1), 1),
    },
    Preset {
        name: "abs",
        title: "Atom-bond sum-connectivity index",
        formula: "sqrt((i+j-2)/(i+j))",
        exact: |i, j| ratio_sqrt(i + j - 2, i + j),
    },
    Preset {
        name: "abc",
        title: "Atom-bond connectivity index",
        formula: "sqrt((i+j-2)/(i*j))",
        exact: |i, j| ratio_sqrt(i + j - 2, i * j),
    },
    Preset {
        name: "sum_connectivity",
        title: "Sum-connectivity index",
        formula: "1/sqrt(i+j)",
        exact: |i, j| ratio_sqrt(1, i + j),
    },
    Preset {
        name: "geometric_arithmetic",
        title: "Geometric-arithmetic index",
        formula: "2*sqrt(i*j)/(i+j)",
        exact: |i, j| ratio_sqrt(4 * i * j, (i + j) * (i + j)),
    },
    Preset {
        name: "harmonic",
        title: "Harmonic index",
        formula: "2/(i+j)",
        exact: |i, j| Some(Surd::rational(Rational::new(2, i + j))),
    },
    Preset {
        name: "first_zagreb",
        title: "First Zagreb index",
        formula: "i+j",
        exact: |i, j| Some(Surd::integer(i + j)),
    },
    Preset {
        name: "second_zagreb",
        title: "Second Zagreb index",
        formula: "i*j",
        exact: |i, j| Some(Surd::integer(i * j)),
    },
];

pub const GENERALIZED_RANDIC: &str = "generalized_randic";
const GENERALIZED_RANDIC_FORMULA: &str = "(i*j)^alpha";

pub fn descriptors() -> Vec<PresetDescriptor> {
    let mut out = vec![PresetDescriptor {
        name: GENERALIZED_RANDIC,
        title: "Generalized Randic index",
        formula: GENERALIZED_RANDIC_FORMULA,
        params: vec![ParamDescriptor {
            name: "alpha",
            kind: "number",
            default: -0.5,
        }],
    }];
    out.extend(PRESETS.iter().map(|p| PresetDescriptor {
        name: p.name,
        title: p.title,
        formula: p.formula,
        params: Vec::new(),
    }));
    out
}

/// `(ij)^alpha` exactly, when `2 alpha` is a small integer.
fn generalized_randic_exact(alpha: f64, i: i128, j: i128) -> Option<Surd> {
    let twice = 2.0 * alpha;
    if twice.fract() != 0.0 || twice.abs() > 16.0 {
        return None;
    }
    let k = twice as i32;
    let base = Rational::from_integer(i * j);
    let squared = if k >= 0 {
        num_traits::pow(base, k as usize)
    } else {
        num_traits::pow(base.recip(), (-k) as usize)
    };
    Surd::sqrt_of(squared)
}

/// Builds a preset; `alpha` is required by (and only used for) `generalized_randic`.
pub fn preset(name: &str, alpha: Option<f64>) -> Result<IndexSpec, IndexError> {
    let key = name.trim().to_ascii_lowercase().replace(['-', ' '], "_");
    if key == GENERALIZED_RANDIC {
        let alpha = alpha.unwrap_or(-0.5);
        if !alpha.is_finite() {
            return Err(IndexError::NonFiniteCoefficient { edge: EdgeType::E12 });
        }
        let mut coeffs = [0.0; 5];
        let mut exact: Vec<Option<Surd>> = Vec::with_capacity(5);
        for (k, e) in EdgeType::ALL.iter().enumerate() {
            let (i, j) = e.degrees();
            coeffs[k] = ((i as f64) * (j as f64)).powf(alpha);
            exact.push(generalized_randic_exact(alpha, i as i128, j as i128));
        }
        let source = IndexSource::Preset {
            name: GENERALIZED_RANDIC.to_string(),
            alpha: Some(alpha),
        };
        return IndexSpec::from_parts(coeffs, collect_exact(exact), source);
    }
    let alias = match key.as_str() {
        "randic_index" | "r" => "randic",
        "so" => "sombor",
        "so_red" | "sombor_red" => "reduced_sombor",
        other => other,
    };
    let p = PRESETS
        .iter()
        .find(|p| p.name == alias)
        .ok_or_else(|| IndexError::UnknownPreset(name.to_string()))?;
    let exact: Vec<Option<Surd>> = EdgeType::ALL
        .iter()
        .map(|e| {
            let (i, j) = e.degrees();
            (p.exact)(i as i128, j as i128)
        })
        .collect();
    let exact = collect_exact(exact).expect("fixed presets have exact forms");
    let coeffs: [f64; 5] = std::array::from_fn(|k| exact[k].to_f64());
    IndexSpec::from_parts(
        coeffs,
        Some(exact),
        IndexSource::Preset {
            name: p.name.to_string(),
            alpha: None,
        },
    )
}

pub fn formula_of(name: &str) -> Option<&'static str> {
    if name == GENERALIZED_RANDIC {
        return Some(GENERALIZED_RANDIC_FORMULA);
    }
    PRESETS.iter().find(|p| p.name == name).map(|p| p.formula)
}

fn collect_exact(parts: Vec<Option<Surd>>) -> Option<[Surd; 5]> {
    let parts: Option<Vec<Surd>> = parts.into_iter().collect();
    parts.and_then(|v| v.try_into().ok())
}
