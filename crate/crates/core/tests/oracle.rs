use std::collections::BTreeSet;

use chemhull::edgetype::{complete_point, Point3, ValidPair};
use chemhull::hull::{convex_hull, point_location, Location};
use chemhull::oracle::{enumerate_graphs, realizable_points, verify_catalog, CatalogVerdict, OracleConfig};

fn pair(n: i64, m: i64) -> ValidPair {
    ValidPair::new(n, m).unwrap()
}

#[test]
fn connected_cubic_census() {
    for (n, count) in [(4, 1), (6, 2), (8, 5), (10, 19)] {
        let g = enumerate_graphs(pair(n, 3 * n / 2), true, OracleConfig::default()).unwrap();
        assert_eq!(g.len(), count, "n = {n}");
        assert!(g.iter().all(|g| g.point() == Point3::new(0, 0, 3 * n / 2)));
    }
}

#[test]
fn subcubic_tree_census() {
    // trees with maximum degree at most 3
    for (n, count) in [(4, 2), (5, 2), (6, 4), (7, 6), (8, 11), (9, 18), (10, 37)] {
        let r = realizable_points(pair(n, n - 1), OracleConfig::default()).unwrap();
        assert_eq!(r.graph_count_total, count, "n = {n}");
    }
}

#[test]
fn labeled_counts_agree_with_orbit_counting() {
    // labeled graphs on 4 vertices with 3 edges, connected, max degree 3:
    // 12 paths and 4 stars; 4 vertices with 4 edges: 3 four-cycles and 12 paws
    assert_eq!(
        enumerate_graphs(pair(4, 3), false, OracleConfig::default())
            .unwrap()
            .len(),
        16
    );
    assert_eq!(
        enumerate_graphs(pair(4, 4), false, OracleConfig::default())
            .unwrap()
            .len(),
        15
    );
    let labeled: BTreeSet<Point3> = enumerate_graphs(pair(6, 6), false, OracleConfig::default())
        .unwrap()
        .iter()
        .map(|g| g.point())
        .collect();
    let classes = realizable_points(pair(6, 6), OracleConfig::default()).unwrap();
    assert_eq!(labeled, classes.realizable_points);
}

#[test]
fn dedupe_yields_pairwise_non_isomorphic_graphs() {
    use chemhull::oracle::canon::SmallGraph;
    for (n, m) in [(6, 6), (7, 8), (8, 9)] {
        let gs = enumerate_graphs(pair(n, m), true, OracleConfig::default()).unwrap();
        let keys: BTreeSet<_> = gs
            .iter()
            .map(|g| {
                g.edges()
                    .iter()
                    .fold(SmallGraph::empty(n as usize), |s, &(u, v)| {
                        s.with_edge(u as usize, v as usize)
                    })
                    .canonical_key()
            })
            .collect();
        assert_eq!(keys.len(), gs.len());
    }
}

#[test]
fn documented_verdicts() {
    for (n, m) in [(8, 8), (7, 9), (9, 13)] {
        assert_eq!(
            verify_catalog(pair(n, m), OracleConfig::default()).unwrap(),
            CatalogVerdict::Match
        );
    }
    let r = realizable_points(pair(9, 13), OracleConfig::default()).unwrap();
    assert_eq!(r.realizable_points, BTreeSet::from([Point3::new(0, 0, 11)]));
}

#[test]
fn realizable_points_complete_and_lie_in_hull() {
    for n in 3..=8 {
        for p in ValidPair::all_with_order(n) {
            let r = realizable_points(p, OracleConfig::default()).unwrap();
            let pts: Vec<Point3> = r.realizable_points.iter().copied().collect();
            let hull = convex_hull(&pts).unwrap();
            for &q in &pts {
                assert!(complete_point(p, q).is_ok());
                assert_ne!(point_location(&hull, q), Location::Outside);
            }
        }
    }
}

#[test]
#[ignore = "extended run, about 40 s"]
fn extended_catalog_equivalence() {
    let cfg = OracleConfig { limit: 12 };
    for n in 10..=12 {
        for p in ValidPair::all_with_order(n) {
            assert_eq!(
                verify_catalog(p, cfg).unwrap(),
                CatalogVerdict::Match,
                "({n}, {})",
                p.m()
            );
        }
    }
}
