//! Exhaustive enumeration of small chemical graphs.
//!
//! Graphs are grown one edge at a time. Each level keeps one representative
//! per isomorphism class, with degree at most 3, and drops partial graphs that
//! can no longer become connected with the edges that remain.

pub mod canon;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::Serialize;
use thiserror::Error;

use crate::catalog::extreme_points;
use crate::edgetype::{Point3, ValidPair};
use crate::graph::ChemGraph;
use crate::hull::convex_hull;
use canon::{SmallGraph, MAX_ORDER};

pub const DEFAULT_LIMIT: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("order n = {n} exceeds the enumeration limit {limit}")]
    LimitExceeded { n: i64, limit: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest order accepted; values above 16 are clamped.
    pub limit: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { limit: DEFAULT_LIMIT }
    }
}

impl OracleConfig {
    fn check(&self, pair: ValidPair) -> Result<usize, OracleError> {
        let limit = self.limit.min(MAX_ORDER);
        if pair.n() as usize > limit {
            return Err(OracleError::LimitExceeded { n: pair.n(), limit });
        }
        Ok(pair.n() as usize)
    }
}

fn point_of(g: &SmallGraph) -> Point3 {
    let n = g.n as usize;
    let (mut m12, mut m13, mut m33) = (0, 0, 0);
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) {
                match (g.degree(u).min(g.degree(v)), g.degree(u).max(g.degree(v))) {
                    (1, 2) => m12 += 1,
                    (1, 3) => m13 += 1,
                    (3, 3) => m33 += 1,
                    _ => {}
                }
            }
        }
    }
    Point3::new(m12, m13, m33)
}

fn to_chem(g: &SmallGraph) -> ChemGraph {
    ChemGraph::new(g.n as usize, g.edges()).expect("enumerated graphs are chemical")
}

/// One representative per isomorphism class of connected chemical graphs.
fn iso_classes(n: usize, m: usize) -> Vec<SmallGraph> {
    let mut level = vec![SmallGraph::empty(n)];
    for k in 0..m {
        let left = m - k - 1;
        let merged = level
            .par_iter()
            .fold(HashMap::new, |mut acc: HashMap<Vec<(u8, u128)>, SmallGraph>, g| {
                for u in 0..n {
                    if g.degree(u) >= 3 {
                        continue;
                    }
                    for v in u + 1..n {
                        if g.degree(v) >= 3 || g.has_edge(u, v) {
                            continue;
                        }
                        let h = g.with_edge(u, v);
                        if h.components().len() - 1 > left {
                            continue;
                        }
                        acc.entry(h.canonical_key())
                            .and_modify(|r| *r = (*r).min(h))
                            .or_insert(h);
                    }
                }
                acc
            })
            .reduce(HashMap::new, |mut a, b| {
                for (key, h) in b {
                    a.entry(key).and_modify(|r| *r = (*r).min(h)).or_insert(h);
                }
                a
            });
        level = merged.into_values().collect();
        level.sort_unstable();
    }
    level.retain(|g| g.components().len() == 1);
    level
}

/// Every labeled connected chemical graph on `n` vertices with `m` edges.
fn for_each_labeled(n: usize, m: usize, visit: &mut dyn FnMut(&SmallGraph)) {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    fn go(pairs: &[(usize, usize)], idx: usize, g: SmallGraph, left: usize, visit: &mut dyn FnMut(&SmallGraph)) {
        if left == 0 {
            if g.components().len() == 1 {
                visit(&g);
            }
            return;
        }
        if pairs.len() - idx < left {
            return;
        }
        let (u, v) = pairs[idx];
        if g.degree(u) < 3 && g.degree(v) < 3 {
            go(pairs, idx + 1, g.with_edge(u, v), left - 1, visit);
        }
        go(pairs, idx + 1, g, left, visit);
    }
    go(&pairs, 0, SmallGraph::empty(n), m, visit);
}

/// Streams graphs to `visit`. With `dedupe_isomorphic`, exactly one graph per
/// isomorphism class; otherwise every labeled graph on vertices `0..n`.
pub fn for_each_graph(
    pair: ValidPair,
    dedupe_isomorphic: bool,
    config: OracleConfig,
    mut visit: impl FnMut(ChemGraph),
) -> Result<(), OracleError> {
    let n = config.check(pair)?;
    let m = pair.m() as usize;
    if dedupe_isomorphic {
        for g in iso_classes(n, m) {
            visit(to_chem(&g));
        }
    } else {
        for_each_labeled(n, m, &mut |g| visit(to_chem(g)));
    }
    Ok(())
}

pub fn enumerate_graphs(
    pair: ValidPair,
    dedupe_isomorphic: bool,
    config: OracleConfig,
) -> Result<Vec<ChemGraph>, OracleError> {
    let mut out = Vec::new();
    for_each_graph(pair, dedupe_isomorphic, config, |g| out.push(g))?;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationReport {
    pub pair: ValidPair,
    pub realizable_points: BTreeSet<Point3>,
    /// Number of isomorphism classes.
    pub graph_count_total: usize,
    pub per_point_counts: BTreeMap<Point3, usize>,
    pub elapsed: Duration,
}

impl Serialize for EnumerationReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Count {
            point: [i64; 3],
            count: usize,
        }
        let counts: Vec<Count> = self
            .per_point_counts
            .iter()
            .map(|(p, &count)| Count {
                point: p.to_array(),
                count,
            })
            .collect();
        let points: Vec<[i64; 3]> = self.realizable_points.iter().map(|p| p.to_array()).collect();
        let mut st = s.serialize_struct("EnumerationReport", 6)?;
        st.serialize_field("n", &self.pair.n())?;
        st.serialize_field("m", &self.pair.m())?;
        st.serialize_field("realizable_points", &points)?;
        st.serialize_field("graph_count_total", &self.graph_count_total)?;
        st.serialize_field("per_point_counts", &counts)?;
        st.serialize_field("elapsed_ms", &(self.elapsed.as_secs_f64() * 1e3))?;
        st.end()
    }
}

pub fn realizable_points(pair: ValidPair, config: OracleConfig) -> Result<EnumerationReport, OracleError> {
    let start = Instant::now();
    let n = config.check(pair)?;
    let classes = iso_classes(n, pair.m() as usize);
    let mut per_point_counts = BTreeMap::new();
    for g in &classes {
        *per_point_counts.entry(point_of(g)).or_insert(0) += 1;
    }
    Ok(EnumerationReport {
        pair,
        realizable_points: per_point_counts.keys().copied().collect(),
        graph_count_total: classes.len(),
        per_point_counts,
        elapsed: start.elapsed(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CatalogVerdict {
    Match,
    Mismatch {
        /// Catalog points that are not hull vertices of the realizable set.
        missing: Vec<Point3>,
        /// Hull vertices absent from the catalog.
        extra: Vec<Point3>,
    },
}

pub fn verify_catalog(pair: ValidPair, config: OracleConfig) -> Result<CatalogVerdict, OracleError> {
    let report = realizable_points(pair, config)?;
    Ok(compare_with_catalog(pair, &report))
}

pub fn compare_with_catalog(pair: ValidPair, report: &EnumerationReport) -> CatalogVerdict {
    let points: Vec<Point3> = report.realizable_points.iter().copied().collect();
    let hull = convex_hull(&points).expect("small coordinates, non-empty set");
    let found: BTreeSet<Point3> = hull.vertices.into_iter().collect();
    let expected: BTreeSet<Point3> = extreme_points(pair).into_iter().map(|lp| lp.point).collect();
    if found == expected {
        CatalogVerdict::Match
    } else {
        CatalogVerdict::Mismatch {
            missing: expected.difference(&found).copied().collect(),
            extra: found.difference(&expected).copied().collect(),
        }
    }
}
