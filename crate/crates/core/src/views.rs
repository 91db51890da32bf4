//! JSON shapes shared by the CLI, the HTTP service and the C interface.
//!
//! Points are shown with all five edge counts `(m12, m13, m22, m23, m33)`.

use serde::{Deserialize, Serialize};

use crate::catalog::{classify_regime, extreme_points, tool_name, LabeledPoint, PointLabel, Regime};
use crate::edgetype::{complete_point, Point3, ValidPair};
use crate::graph::{profile_of, ChemGraph};
use crate::hull::{convex_hull, Facet, Polytope};
use crate::index::{reduce, IndexSource, IndexSpec, OptimizationResult, ReducedIndex, Sense};

/// Exact hull of the catalog's extreme points.
pub fn catalog_polytope(pair: ValidPair) -> Polytope {
    let points: Vec<Point3> = extreme_points(pair).into_iter().map(|lp| lp.point).collect();
    convex_hull(&points)
        .expect("catalog coordinates are small and non-empty")
        .with_pair(pair)
}

fn five(pair: ValidPair, p: Point3) -> [i64; 5] {
    complete_point(pair, p)
        .expect("catalog and hull vertices complete")
        .edge_counts()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointView {
    pub name: String,
    pub m12: i64,
    pub m13: i64,
    pub m22: i64,
    pub m23: i64,
    pub m33: i64,
    pub labels: Vec<String>,
}

impl PointView {
    fn new(pair: ValidPair, index: usize, p: Point3, labels: &[PointLabel]) -> Self {
        let [m12, m13, m22, m23, m33] = five(pair, p);
        PointView {
            name: tool_name(pair, index),
            m12,
            m13,
            m22,
            m23,
            m33,
            labels: labels.iter().map(|l| l.to_string()).collect(),
        }
    }

    pub fn point(&self) -> Point3 {
        Point3::new(self.m12, self.m13, self.m33)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolytopeView {
    pub n: i64,
    pub m: i64,
    pub dim: u8,
    pub regime: Regime,
    pub vertices: Vec<PointView>,
    pub facets: Vec<Facet>,
    pub equalities: Vec<Facet>,
}

fn labels_for(catalog: &[LabeledPoint], p: Point3) -> Vec<PointLabel> {
    catalog
        .iter()
        .find(|lp| lp.point == p)
        .map(|lp| lp.labels.clone())
        .unwrap_or_default()
}

impl PolytopeView {
    pub fn new(pair: ValidPair, poly: &Polytope) -> Self {
        let catalog = extreme_points(pair);
        PolytopeView {
            n: pair.n(),
            m: pair.m(),
            dim: poly.dim,
            regime: classify_regime(pair),
            vertices: poly
                .vertices
                .iter()
                .enumerate()
                .map(|(i, &p)| PointView::new(pair, i, p, &labels_for(&catalog, p)))
                .collect(),
            facets: poly.facets.clone(),
            equalities: poly.equalities.clone(),
        }
    }

    pub fn for_pair(pair: ValidPair) -> Self {
        PolytopeView::new(pair, &catalog_polytope(pair))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CandidateView {
    #[serde(flatten)]
    pub point: PointView,
    pub reduced_value: f64,
    pub value: f64,
    pub optimal: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizationView {
    pub n: i64,
    pub m: i64,
    pub sense: Sense,
    pub index: IndexSource,
    pub label: String,
    pub reduced: ReducedIndex,
    pub optimal_value: f64,
    pub optimal_reduced_value: f64,
    pub constant: f64,
    pub tolerance: f64,
    pub arg_points: Vec<PointView>,
    pub candidates: Vec<CandidateView>,
}

impl OptimizationView {
    pub fn new(spec: &IndexSpec, result: &OptimizationResult) -> Self {
        let pair = result.pair;
        // names follow the vertex order of the polytope view
        let order: Vec<Point3> = catalog_polytope(pair).vertices;
        let index_of = |p: Point3| order.iter().position(|&q| q == p).unwrap_or(0);
        let arg = result.arg_coordinates();
        let candidates = result
            .table
            .iter()
            .map(|c| CandidateView {
                point: PointView::new(pair, index_of(c.point), c.point, &c.labels),
                reduced_value: c.reduced_value,
                value: c.value,
                optimal: arg.contains(&c.point),
            })
            .collect();
        OptimizationView {
            n: pair.n(),
            m: pair.m(),
            sense: result.sense,
            index: spec.source.clone(),
            label: spec.label(),
            reduced: reduce(spec),
            optimal_value: result.optimal_value,
            optimal_reduced_value: result.optimal_reduced_value,
            constant: result.constant,
            tolerance: result.tolerance,
            arg_points: result
                .arg_points
                .iter()
                .map(|lp| PointView::new(pair, index_of(lp.point), lp.point, &lp.labels))
                .collect(),
            candidates,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphView {
    pub n: usize,
    pub m: usize,
    pub edges: Vec<(u32, u32)>,
    /// `(m12, m13, m22, m23, m33)` recomputed from the edges.
    pub counts: [i64; 5],
}

impl GraphView {
    pub fn new(g: &ChemGraph) -> Self {
        GraphView {
            n: g.order(),
            m: g.size(),
            edges: g.edges().to_vec(),
            counts: profile_of(g).edge_counts(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p88_view() {
        let v = PolytopeView::for_pair(ValidPair::new(8, 8).unwrap());
        assert_eq!((v.dim, v.vertices.len(), v.facets.len()), (3, 7, 8));
        let v4 = v.vertices.iter().find(|p| p.name == "P88-V4").unwrap();
        assert_eq!((v4.m12, v4.m13, v4.m22, v4.m23, v4.m33), (0, 4, 0, 0, 4));
    }

    #[test]
    fn k4_minus_edge_view() {
        let v = PolytopeView::for_pair(ValidPair::new(4, 5).unwrap());
        assert_eq!(v.dim, 0);
        let p = &v.vertices[0];
        assert_eq!((p.m12, p.m13, p.m22, p.m23, p.m33), (0, 0, 0, 4, 1));
    }
}
