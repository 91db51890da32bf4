//! Exact convex hulls of integer points in at most three dimensions.
//!
//! All geometry runs in integer arithmetic (`i128` for intermediate
//! products); there is no floating-point path. Hulls of every affine
//! dimension are supported: lower-dimensional inputs get an equality system
//! describing their affine span next to the inequalities that bound them
//! inside it.
//!
//! Inequalities are always oriented as `a . x >= b`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::edgetype::{Point3, ValidPair};

/// Largest coordinate magnitude accepted; keeps every triple product inside `i128`.
pub const MAX_COORDINATE: i64 = 1 << 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HullError {
    #[error("convex hull of an empty point set")]
    EmptyInput,
    #[error("coordinate {0} exceeds the supported magnitude")]
    CoordinateTooLarge(i64),
    #[error("facet coefficient overflow")]
    Overflow,
    #[error("candidate inequality is violated by vertex {0}")]
    InvalidCandidate(Point3),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

/// One row `a . x >= b` (or `a . x = b`) of an H-representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Facet {
    pub a: [i64; 3],
    pub b: i64,
    pub rel: Relation,
}

type Vec3 = [i128; 3];

fn sub(p: Point3, q: Point3) -> Vec3 {
    [
        (p.m12 - q.m12) as i128,
        (p.m13 - q.m13) as i128,
        (p.m33 - q.m33) as i128,
    ]
}

fn wide(p: Point3) -> Vec3 {
    [p.m12 as i128, p.m13 as i128, p.m33 as i128]
}

fn cross(u: Vec3, v: Vec3) -> Vec3 {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

fn dot(u: Vec3, v: Vec3) -> i128 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

fn is_zero(u: Vec3) -> bool {
    u == [0, 0, 0]
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Facet {
    /// `a . x >= b`, divided through by the gcd of all four entries.
    pub fn ge(a: [i64; 3], b: i64) -> Facet {
        Self::normalize([a[0] as i128, a[1] as i128, a[2] as i128], b as i128, Relation::Ge)
            .expect("i64 input cannot overflow after division")
    }

    /// `a . x <= b`, stored as `-a . x >= -b`.
    pub fn le(a: [i64; 3], b: i64) -> Facet {
        Facet::ge([-a[0], -a[1], -a[2]], -b)
    }

    pub fn eq(a: [i64; 3], b: i64) -> Facet {
        Self::normalize([a[0] as i128, a[1] as i128, a[2] as i128], b as i128, Relation::Eq)
            .expect("i64 input cannot overflow after division")
    }

    fn normalize(a: Vec3, b: i128, rel: Relation) -> Result<Facet, HullError> {
        let g = gcd(gcd(gcd(a[0], a[1]), a[2]), b);
        let (mut a, mut b) = if g > 1 {
            ([a[0] / g, a[1] / g, a[2] / g], b / g)
        } else {
            (a, b)
        };
        if rel == Relation::Eq {
            let lead = a.iter().copied().find(|&c| c != 0).unwrap_or(b);
            if lead < 0 {
                a = [-a[0], -a[1], -a[2]];
                b = -b;
            }
        }
        let narrow = |v: i128| i64::try_from(v).map_err(|_| HullError::Overflow);
        Ok(Facet {
            a: [narrow(a[0])?, narrow(a[1])?, narrow(a[2])?],
            b: narrow(b)?,
            rel,
        })
    }

    /// `a . p - b`; non-negative exactly when `p` satisfies an inequality row.
    pub fn slack(&self, p: Point3) -> i128 {
        dot(self.normal(), wide(p)) - self.b as i128
    }

    pub fn is_satisfied(&self, p: Point3) -> bool {
        match self.rel {
            Relation::Ge => self.slack(p) >= 0,
            Relation::Eq => self.slack(p) == 0,
        }
    }

    fn normal(&self) -> Vec3 {
        [self.a[0] as i128, self.a[1] as i128, self.a[2] as i128]
    }

    /// Same halfspace up to positive scaling.
    pub fn same_halfspace(&self, other: &Facet) -> bool {
        let lhs = Facet::normalize(self.normal(), self.b as i128, self.rel);
        let rhs = Facet::normalize(other.normal(), other.b as i128, other.rel);
        lhs.is_ok() && lhs == rhs
    }
}

impl fmt::Display for Facet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["m12", "m13", "m33"];
        let mut wrote = false;
        for (c, name) in self.a.iter().zip(names) {
            if *c == 0 {
                continue;
            }
            let sign = if *c < 0 {
                "-"
            } else if wrote {
                "+"
            } else {
                ""
            };
            let sep = if wrote { " " } else { "" };
            let mag = c.abs();
            if wrote {
                write!(f, "{sep}{sign} ")?;
            } else {
                write!(f, "{sign}")?;
            }
            if mag == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{mag} {name}")?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        let rel = match self.rel {
            Relation::Ge => ">=",
            Relation::Eq => "=",
        };
        write!(f, " {rel} {}", self.b)
    }
}

/// V- and H-representation of a polytope, plus its affine dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    pub pair: Option<ValidPair>,
    pub vertices: Vec<Point3>,
    pub facets: Vec<Facet>,
    pub equalities: Vec<Facet>,
    pub dim: u8,
}

#[derive(Serialize, Deserialize)]
struct PolytopeJson {
    n: Option<i64>,
    m: Option<i64>,
    dim: u8,
    vertices: Vec<[i64; 3]>,
    facets: Vec<Facet>,
    equalities: Vec<Facet>,
}

impl Serialize for Polytope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolytopeJson {
            n: self.pair.map(|p| p.n()),
            m: self.pair.map(|p| p.m()),
            dim: self.dim,
            vertices: self.vertices.iter().map(|v| v.to_array()).collect(),
            facets: self.facets.clone(),
            equalities: self.equalities.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polytope {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = PolytopeJson::deserialize(d)?;
        let pair = match (raw.n, raw.m) {
            (Some(n), Some(m)) => Some(ValidPair::new(n, m).map_err(serde::de::Error::custom)?),
            _ => None,
        };
        Ok(Polytope {
            pair,
            vertices: raw.vertices.into_iter().map(Point3::from_array).collect(),
            facets: raw.facets,
            equalities: raw.equalities,
            dim: raw.dim,
        })
    }
}

/// Position of a point relative to a polytope.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "location", rename_all = "snake_case")]
pub enum Location {
    Interior,
    /// On the relative boundary; lists the indices of the tight facets.
    Boundary {
        active: Vec<usize>,
    },
    Outside,
}

fn check_input(points: &[Point3]) -> Result<Vec<Point3>, HullError> {
    if points.is_empty() {
        return Err(HullError::EmptyInput);
    }
    for p in points {
        for c in p.to_array() {
            if c.abs() > MAX_COORDINATE {
                return Err(HullError::CoordinateTooLarge(c));
            }
        }
    }
    let unique: BTreeSet<Point3> = points.iter().copied().collect();
    Ok(unique.into_iter().collect())
}

/// Up to three difference vectors spanning the affine hull of `points`.
fn affine_basis(points: &[Point3]) -> Vec<Vec3> {
    let base = points[0];
    let mut basis: Vec<Vec3> = Vec::with_capacity(3);
    for &p in &points[1..] {
        let d = sub(p, base);
        let independent = match basis.len() {
            0 => !is_zero(d),
            1 => !is_zero(cross(basis[0], d)),
            2 => dot(cross(basis[0], basis[1]), d) != 0,
            _ => false,
        };
        if independent {
            basis.push(d);
            if basis.len() == 3 {
                break;
            }
        }
    }
    basis
}

/// Dimension of the affine span of a non-empty point list.
pub fn affine_dimension(points: &[Point3]) -> Result<u8, HullError> {
    let pts = check_input(points)?;
    Ok(affine_basis(&pts).len() as u8)
}

fn rank(vectors: &[Vec3]) -> usize {
    let mut basis: Vec<Vec3> = Vec::new();
    for &v in vectors {
        let independent = match basis.len() {
            0 => !is_zero(v),
            1 => !is_zero(cross(basis[0], v)),
            2 => dot(cross(basis[0], basis[1]), v) != 0,
            _ => false,
        };
        if independent {
            basis.push(v);
        }
    }
    basis.len()
}

/// Keeps a point set's halfspace `normal . x >= normal . anchor` if every
/// point lies on that side, flipping the normal when they all lie on the other.
fn supporting(normal: Vec3, anchor: Point3, points: &[Point3]) -> Option<(Vec3, i128)> {
    let offset = dot(normal, wide(anchor));
    let mut pos = false;
    let mut neg = false;
    for &p in points {
        let s = dot(normal, wide(p)) - offset;
        if s > 0 {
            pos = true;
        } else if s < 0 {
            neg = true;
        }
        if pos && neg {
            return None;
        }
    }
    if neg {
        Some(([-normal[0], -normal[1], -normal[2]], -offset))
    } else {
        Some((normal, offset))
    }
}

/// Exact convex hull: minimal vertex list, irredundant facets and, for
/// lower-dimensional inputs, the equalities of the affine span.
pub fn convex_hull(points: &[Point3]) -> Result<Polytope, HullError> {
    let pts = check_input(points)?;
    let basis = affine_basis(&pts);
    let dim = basis.len() as u8;
    let p0 = pts[0];
    let mut facets: BTreeSet<Facet> = BTreeSet::new();
    let mut equalities: Vec<Facet> = Vec::new();

    match dim {
        0 => {
            for (i, c) in p0.to_array().into_iter().enumerate() {
                let mut a = [0i64; 3];
                a[i] = 1;
                equalities.push(Facet::eq(a, c));
            }
        }
        1 => {
            let d = basis[0];
            let mut normals: Vec<Vec3> = Vec::new();
            for e in [[1, 0, 0], [0, 1, 0], [0, 0, 1]] {
                let c = cross(d, e);
                if !is_zero(c) && (normals.is_empty() || !is_zero(cross(normals[0], c))) {
                    normals.push(c);
                }
                if normals.len() == 2 {
                    break;
                }
            }
            for nrm in normals {
                equalities.push(Facet::normalize(nrm, dot(nrm, wide(p0)), Relation::Eq)?);
            }
            for dir in [d, [-d[0], -d[1], -d[2]]] {
                let lo = pts.iter().map(|&p| dot(dir, wide(p))).min().expect("non-empty");
                facets.insert(Facet::normalize(dir, lo, Relation::Ge)?);
            }
        }
        2 => {
            let nrm = cross(basis[0], basis[1]);
            equalities.push(Facet::normalize(nrm, dot(nrm, wide(p0)), Relation::Eq)?);
            for i in 0..pts.len() {
                for j in i + 1..pts.len() {
                    let inward = cross(nrm, sub(pts[j], pts[i]));
                    if let Some((a, b)) = supporting(inward, pts[i], &pts) {
                        facets.insert(Facet::normalize(a, b, Relation::Ge)?);
                    }
                }
            }
        }
        _ => {
            for i in 0..pts.len() {
                for j in i + 1..pts.len() {
                    let u = sub(pts[j], pts[i]);
                    for k in j + 1..pts.len() {
                        let nrm = cross(u, sub(pts[k], pts[i]));
                        if is_zero(nrm) {
                            continue;
                        }
                        let probe = Facet::normalize(nrm, dot(nrm, wide(pts[i])), Relation::Ge)?;
                        let flipped =
                            Facet::normalize([-nrm[0], -nrm[1], -nrm[2]], -dot(nrm, wide(pts[i])), Relation::Ge)?;
                        if facets.contains(&probe) || facets.contains(&flipped) {
                            continue;
                        }
                        if let Some((a, b)) = supporting(nrm, pts[i], &pts) {
                            facets.insert(Facet::normalize(a, b, Relation::Ge)?);
                        }
                    }
                }
            }
        }
    }

    let facets: Vec<Facet> = facets.into_iter().collect();
    let eq_normals: Vec<Vec3> = equalities.iter().map(Facet::normal).collect();
    let vertices: Vec<Point3> = pts
        .iter()
        .copied()
        .filter(|&p| {
            let mut normals = eq_normals.clone();
            normals.extend(facets.iter().filter(|f| f.slack(p) == 0).map(Facet::normal));
            rank(&normals) == 3
        })
        .collect();

    Ok(Polytope {
        pair: None,
        vertices,
        facets,
        equalities,
        dim,
    })
}

impl Polytope {
    pub fn with_pair(mut self, pair: ValidPair) -> Self {
        self.pair = Some(pair);
        self
    }

    pub fn contains(&self, p: Point3) -> bool {
        self.equalities.iter().all(|e| e.is_satisfied(p)) && self.facets.iter().all(|f| f.is_satisfied(p))
    }

    /// Vertices lying on a given row.
    pub fn tight_vertices(&self, f: &Facet) -> Vec<Point3> {
        self.vertices.iter().copied().filter(|&v| f.slack(v) == 0).collect()
    }
}

/// Classifies `p` against `poly` (relative interior for lower-dimensional polytopes).
pub fn point_location(poly: &Polytope, p: Point3) -> Location {
    if !poly.equalities.iter().all(|e| e.is_satisfied(p)) {
        return Location::Outside;
    }
    let mut active = Vec::new();
    for (i, f) in poly.facets.iter().enumerate() {
        let s = f.slack(p);
        if s < 0 {
            return Location::Outside;
        }
        if s == 0 {
            active.push(i);
        }
    }
    if active.is_empty() {
        Location::Interior
    } else {
        Location::Boundary { active }
    }
}

/// True iff `candidate` (valid on every vertex) defines no facet of `poly`.
pub fn is_redundant(poly: &Polytope, candidate: &Facet) -> Result<bool, HullError> {
    if let Some(&v) = poly.vertices.iter().find(|&&v| candidate.slack(v) < 0) {
        return Err(HullError::InvalidCandidate(v));
    }
    let tight = poly.tight_vertices(candidate);
    if poly.dim == 0 || tight.is_empty() || tight.len() == poly.vertices.len() {
        return Ok(true);
    }
    Ok(affine_dimension(&tight)? + 1 != poly.dim)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(raw: &[[i64; 3]]) -> Vec<Point3> {
        raw.iter().copied().map(Point3::from_array).collect()
    }

    fn example_square() -> Polytope {
        convex_hull(&pts(&[
            [0, 0, 0],
            [1, 0, 0],
            [1, 1, 0],
            [1, 2, 0],
            [2, 0, 0],
            [2, 1, 0],
            [3, 0, 0],
            [3, 1, 0],
        ]))
        .unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(affine_dimension(&pts(&[[0, 0, 12]])).unwrap(), 0);
        assert_eq!(affine_dimension(&pts(&[[0, 0, 0], [2, 0, 0]])).unwrap(), 1);
        assert_eq!(
            affine_dimension(&pts(&[[0, 0, 0], [2, 0, 0], [4, 0, 0], [1, 1, 0]])).unwrap(),
            2
        );
        assert_eq!(affine_dimension(&[]), Err(HullError::EmptyInput));
    }

    #[test]
    fn planar_example_facets_and_redundancy() {
        let hull = example_square();
        assert_eq!(hull.dim, 2);
        assert_eq!(hull.vertices, pts(&[[0, 0, 0], [1, 2, 0], [3, 0, 0], [3, 1, 0]]));
        assert_eq!(hull.equalities, vec![Facet::eq([0, 0, 1], 0)]);
        let expected = [
            Facet::le([1, 0, 0], 3),
            Facet::le([0, -1, 0], 0),
            Facet::le([1, 2, 0], 5),
            // the printed x1 - 2 x2 <= 0 excludes (3, 0); the edge through (0,0) and (1,2) is x2 <= 2 x1
            Facet::le([-2, 1, 0], 0),
        ];
        assert!(!Facet::le([1, -2, 0], 0).is_satisfied(Point3::new(3, 0, 0)));
        assert_eq!(hull.facets.len(), 4);
        for f in &expected {
            assert!(hull.facets.iter().any(|g| g.same_halfspace(f)), "missing {f}");
            assert_eq!(is_redundant(&hull, f), Ok(false));
        }
        assert_eq!(is_redundant(&hull, &Facet::le([-1, 2, 0], 4)), Ok(true));
        assert_eq!(is_redundant(&hull, &Facet::ge([0, 0, 0], -1)), Ok(true));
        assert!(matches!(
            is_redundant(&hull, &Facet::le([1, 0, 0], 2)),
            Err(HullError::InvalidCandidate(_))
        ));
    }

    #[test]
    fn degenerate_hulls() {
        let single = convex_hull(&pts(&[[2, 3, 4], [2, 3, 4]])).unwrap();
        assert_eq!(single.dim, 0);
        assert!(single.facets.is_empty());
        assert_eq!(single.equalities.len(), 3);
        assert_eq!(single.vertices, pts(&[[2, 3, 4]]));

        let seg = convex_hull(&pts(&[[0, 0, 0], [2, 0, 0], [1, 0, 0]])).unwrap();
        assert_eq!(seg.dim, 1);
        assert_eq!(seg.vertices, pts(&[[0, 0, 0], [2, 0, 0]]));
        assert_eq!(seg.facets.len(), 2);
        assert_eq!(seg.equalities.len(), 2);
        assert_eq!(point_location(&seg, Point3::new(1, 0, 0)), Location::Interior);
        assert_eq!(point_location(&seg, Point3::new(1, 1, 0)), Location::Outside);
    }

    #[test]
    fn cube_hull() {
        let mut raw = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                for z in 0..3 {
                    raw.push([x, y, z]);
                }
            }
        }
        let hull = convex_hull(&pts(&raw)).unwrap();
        assert_eq!(hull.dim, 3);
        assert_eq!(hull.vertices.len(), 8);
        assert_eq!(hull.facets.len(), 6);
        assert_eq!(point_location(&hull, Point3::new(1, 1, 1)), Location::Interior);
        match point_location(&hull, Point3::new(0, 0, 0)) {
            Location::Boundary { active } => assert_eq!(active.len(), 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn display_and_json() {
        assert_eq!(Facet::ge([-4, -4, 1], -31).to_string(), "-4 m12 - 4 m13 + m33 >= -31");
        let hull = example_square();
        let json = serde_json::to_value(&hull).unwrap();
        assert_eq!(json["dim"], 2);
        assert_eq!(json["facets"][0]["rel"], ">=");
        let back: Polytope = serde_json::from_value(json).unwrap();
        assert_eq!(back, hull);
    }

    #[test]
    fn rejects_huge_coordinates() {
        assert!(matches!(
            convex_hull(&pts(&[[MAX_COORDINATE + 1, 0, 0]])),
            Err(HullError::CoordinateTooLarge(_))
        ));
    }
}
