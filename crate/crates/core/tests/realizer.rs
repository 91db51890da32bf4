use chemhull::catalog::extreme_points;
use chemhull::edgetype::{complete_point, Point3, ValidPair};
use chemhull::graph::profile_of;
use chemhull::oracle::{realizable_points, OracleConfig};
use chemhull::realizer::{realize, RealizeBudget, RealizeError, Unrealized};

fn consistent_points(p: ValidPair) -> Vec<Point3> {
    let m = p.m();
    let mut out = Vec::new();
    for a in 0..=m {
        for b in 0..=m - a {
            for c in 0..=m - a - b {
                let q = Point3::new(a, b, c);
                if complete_point(p, q).is_ok() {
                    out.push(q);
                }
            }
        }
    }
    out
}

#[test]
fn backtracking_agrees_with_enumeration() {
    let exhaustive_only = RealizeBudget {
        restarts: 0,
        ..RealizeBudget::default()
    };
    let mut unrealizable = 0;
    for n in 3..=9 {
        for p in ValidPair::all_with_order(n) {
            let truth = realizable_points(p, OracleConfig::default()).unwrap().realizable_points;
            for q in consistent_points(p) {
                match realize(p, q, exhaustive_only) {
                    Ok(g) => {
                        assert!(truth.contains(&q));
                        assert_eq!(g.point(), q);
                    }
                    Err(RealizeError::Unrealized { reason, .. }) => {
                        assert_eq!(reason, Unrealized::ProvenUnrealizable, "({n}, {}) {q}", p.m());
                        assert!(!truth.contains(&q), "({n}, {}) {q}", p.m());
                        unrealizable += 1;
                    }
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }
    // consistent but unrealizable points exist, so the proof path is exercised
    assert!(unrealizable > 0);
}

#[test]
fn swap_search_agrees_on_realizable_points() {
    let heuristic_only = RealizeBudget {
        exhaustive_nodes: 0,
        ..RealizeBudget::default()
    };
    for (n, m) in [(8, 8), (9, 10), (10, 12), (10, 14)] {
        let p = ValidPair::new(n, m).unwrap();
        for q in realizable_points(p, OracleConfig::default()).unwrap().realizable_points {
            let g = realize(p, q, heuristic_only).unwrap_or_else(|e| panic!("({n},{m}) {q}: {e}"));
            assert_eq!(profile_of(&g), complete_point(p, q).unwrap());
        }
    }
}

#[test]
fn large_orders() {
    for (n, m) in [(200, 220), (500, 700), (1000, 1499)] {
        let p = ValidPair::new(n, m).unwrap();
        for lp in extreme_points(p) {
            let g = realize(p, lp.point, RealizeBudget::default()).unwrap();
            assert_eq!(g.point(), lp.point);
            assert_eq!(g.order(), n as usize);
        }
    }
}
