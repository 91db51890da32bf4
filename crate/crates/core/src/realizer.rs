//! Witness graphs for polytope points.
//!
//! A randomized degree-preserving swap search runs first; if it fails, a
//! complete backtracking search over the joint degree matrix either finds a
//! graph or proves that none exists. Every result is re-checked with
//! [`profile_of`].

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::edgetype::{complete_point, CountsProfile, EdgeTypeError, Point3, ValidPair};
use crate::graph::{profile_of, ChemGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Unrealized {
    /// A complete search found no graph.
    ProvenUnrealizable,
    /// Search limits were hit before an answer was known.
    BudgetExhausted,
}

impl Unrealized {
    pub fn reason(self) -> &'static str {
        match self {
            Unrealized::ProvenUnrealizable => "proven_unrealizable",
            Unrealized::BudgetExhausted => "budget",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizeError {
    #[error("inconsistent point: {0}")]
    InconsistentPoint(#[from] EdgeTypeError),
    #[error("no graph realizes {point} for (n, m) = ({n}, {m}): {}", reason.reason())]
    Unrealized {
        n: i64,
        m: i64,
        point: Point3,
        reason: Unrealized,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct RealizeBudget {
    pub seed: u64,
    pub restarts: u32,
    pub steps_per_restart: u32,
    /// Node cap for the backtracking search; 0 disables it.
    pub exhaustive_nodes: u64,
}

impl Default for RealizeBudget {
    fn default() -> Self {
        RealizeBudget {
            seed: 0x5eed,
            restarts: 8,
            steps_per_restart: 20_000,
            exhaustive_nodes: 2_000_000,
        }
    }
}

/// Backtracking is done on 64-bit adjacency masks.
const EXHAUSTIVE_MAX_ORDER: usize = 64;

pub fn realize(pair: ValidPair, p: Point3, budget: RealizeBudget) -> Result<ChemGraph, RealizeError> {
    let target = complete_point(pair, p)?;
    let unrealized = |reason| RealizeError::Unrealized {
        n: pair.n(),
        m: pair.m(),
        point: p,
        reason,
    };
    let degrees = degree_sequence(&target);
    let n = degrees.len();

    if !is_graphical(&degrees) {
        return Err(unrealized(Unrealized::ProvenUnrealizable));
    }

    let found = (0..budget.restarts).into_par_iter().find_map_first(|r| {
        let seed = budget.seed ^ (r as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
        swap_search(&degrees, &target, seed, budget.steps_per_restart)
    });
    let edges = match found {
        Some(e) => e,
        None if n <= EXHAUSTIVE_MAX_ORDER && budget.exhaustive_nodes > 0 => {
            match Backtrack::new(&degrees, &target, budget.exhaustive_nodes).run() {
                Some(Some(e)) => e,
                Some(None) => return Err(unrealized(Unrealized::ProvenUnrealizable)),
                None => return Err(unrealized(Unrealized::BudgetExhausted)),
            }
        }
        None => return Err(unrealized(Unrealized::BudgetExhausted)),
    };
    let g = ChemGraph::new(n, edges)
        .expect("search only produces simple connected graphs")
        .bfs_relabeled();
    assert_eq!(profile_of(&g), target, "witness must reproduce the target profile");
    Ok(g)
}

/// Vertices sorted by degree: `n1` leaves, then `n2` degree-2, then `n3` degree-3.
fn degree_sequence(q: &CountsProfile) -> Vec<u8> {
    let mut d = Vec::with_capacity(q.pair.n() as usize);
    d.extend(std::iter::repeat_n(1u8, q.n1 as usize));
    d.extend(std::iter::repeat_n(2u8, q.n2 as usize));
    d.extend(std::iter::repeat_n(3u8, q.n3 as usize));
    d
}

/// Erdos-Gallai.
fn is_graphical(d: &[u8]) -> bool {
    let mut s: Vec<i64> = d.iter().map(|&x| x as i64).collect();
    s.sort_unstable_by(|a, b| b.cmp(a));
    if s.iter().sum::<i64>() % 2 != 0 {
        return false;
    }
    let n = s.len();
    let mut lhs = 0;
    for k in 1..=n {
        lhs += s[k - 1];
        let rhs = (k * (k - 1)) as i64 + s[k..].iter().map(|&x| x.min(k as i64)).sum::<i64>();
        if lhs > rhs {
            return false;
        }
    }
    true
}

fn type_index(a: u8, b: u8) -> usize {
    match (a.min(b), a.max(b)) {
        (1, 1) => 0,
        (1, 2) => 1,
        (1, 3) => 2,
        (2, 2) => 3,
        (2, 3) => 4,
        _ => 5,
    }
}

fn target_counts(q: &CountsProfile) -> [i64; 6] {
    [0, q.m12, q.m13, q.m22, q.m23, q.m33]
}

/// Havel-Hakimi with random tie-breaking; `None` if the sequence is not graphical.
fn havel_hakimi<R: Rng>(d: &[u8], rng: &mut R) -> Option<Vec<(u32, u32)>> {
    let n = d.len();
    let mut rem: Vec<u8> = d.to_vec();
    let mut order: Vec<usize> = (0..n).collect();
    let mut edges = Vec::new();
    loop {
        order.shuffle(rng);
        order.sort_by(|&a, &b| rem[b].cmp(&rem[a]));
        let v = order[0];
        let k = rem[v] as usize;
        if k == 0 {
            return Some(edges);
        }
        if order.len() <= k {
            return None;
        }
        for &u in &order[1..=k] {
            if rem[u] == 0 {
                return None;
            }
            rem[u] -= 1;
            edges.push((v as u32, u as u32));
        }
        rem[v] = 0;
    }
}

struct SwapState {
    n: usize,
    deg: Vec<u8>,
    adj: Vec<Vec<u32>>,
    edges: Vec<(u32, u32)>,
    counts: [i64; 6],
}

impl SwapState {
    fn new(deg: &[u8], edges: Vec<(u32, u32)>) -> Self {
        let n = deg.len();
        let mut adj = vec![Vec::with_capacity(3); n];
        let mut counts = [0i64; 6];
        for &(u, v) in &edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
            counts[type_index(deg[u as usize], deg[v as usize])] += 1;
        }
        SwapState {
            n,
            deg: deg.to_vec(),
            adj,
            edges,
            counts,
        }
    }

    fn adjacent(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].contains(&v)
    }

    fn components(&self) -> usize {
        let mut parent: Vec<u32> = (0..self.n as u32).collect();
        fn find(p: &mut [u32], mut x: u32) -> u32 {
            while p[x as usize] != x {
                p[x as usize] = p[p[x as usize] as usize];
                x = p[x as usize];
            }
            x
        }
        let mut comps = self.n;
        for &(u, v) in &self.edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a as usize] = b;
                comps -= 1;
            }
        }
        comps
    }

    fn component_labels(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if label[w as usize] == usize::MAX {
                        label[w as usize] = next;
                        stack.push(w as usize);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// `bridges()[i]` iff edge `i` is a bridge (iterative lowpoint search).
    fn bridges(&self) -> Vec<bool> {
        let mut inc: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.n];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            inc[u as usize].push((v as usize, i));
            inc[v as usize].push((u as usize, i));
        }
        let mut is_bridge = vec![false; self.edges.len()];
        let mut disc = vec![usize::MAX; self.n];
        let mut low = vec![0usize; self.n];
        let mut time = 0;
        for root in 0..self.n {
            if disc[root] != usize::MAX {
                continue;
            }
            // frames: (vertex, parent edge, next incidence index)
            let mut stack = vec![(root, usize::MAX, 0usize)];
            disc[root] = time;
            low[root] = time;
            time += 1;
            while let Some(&mut (v, pe, ref mut k)) = stack.last_mut() {
                if *k < inc[v].len() {
                    let (w, e) = inc[v][*k];
                    *k += 1;
                    if e == pe {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        stack.push((w, e, 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[v]);
                        if low[v] > disc[p] {
                            is_bridge[pe] = true;
                        }
                    }
                }
            }
        }
        is_bridge
    }

    fn replace(&mut self, idx: usize, new: (u32, u32)) {
        let (u, v) = self.edges[idx];
        self.adj[u as usize].retain(|&w| w != v);
        self.adj[v as usize].retain(|&w| w != u);
        self.counts[type_index(self.deg[u as usize], self.deg[v as usize])] -= 1;
        let (a, b) = new;
        self.adj[a as usize].push(b);
        self.adj[b as usize].push(a);
        self.counts[type_index(self.deg[a as usize], self.deg[b as usize])] += 1;
        self.edges[idx] = new;
    }
}

/// Builds a graph with the exact joint degree matrix, if the balanced split
/// of each class's stubs is realizable.
// degree classes 1..=3 index several tables at once
#[allow(clippy::needless_range_loop)]
fn jdm_construct<R: Rng>(deg: &[u8], q: &CountsProfile, rng: &mut R) -> Option<Vec<(u32, u32)>> {
    let mut class: [Vec<usize>; 4] = Default::default();
    for (v, &d) in deg.iter().enumerate() {
        class[d as usize].push(v);
    }
    for c in class.iter_mut() {
        c.shuffle(rng);
    }
    let target = target_counts(q);
    let stubs = |i: usize, j: usize| -> usize {
        let t = target[type_index(i as u8, j as u8)] as usize;
        if i == j {
            2 * t
        } else {
            t
        }
    };
    // demand[v][j]: neighbours of v in class j; stub positions are dealt round robin
    let mut demand = vec![[0usize; 4]; deg.len()];
    for i in 1..=3 {
        let verts = &class[i];
        if verts.is_empty() {
            continue;
        }
        let mut pos = 0;
        for j in 1..=3 {
            for _ in 0..stubs(i, j) {
                demand[verts[pos % verts.len()]][j] += 1;
                pos += 1;
            }
        }
        if pos != i * verts.len() {
            return None;
        }
    }
    let mut edges = Vec::new();
    for i in 1..=3 {
        for j in i..=3 {
            if stubs(i, j) == 0 {
                continue;
            }
            let mut left: Vec<(usize, usize)> = class[i].iter().map(|&v| (v, demand[v][j])).collect();
            if i == j {
                // Havel-Hakimi inside the class
                loop {
                    left.sort_by_key(|e| std::cmp::Reverse(e.1));
                    let (v, k) = left[0];
                    if k == 0 {
                        break;
                    }
                    if left.len() <= k || left[k].1 == 0 {
                        return None;
                    }
                    left[0].1 = 0;
                    for e in left.iter_mut().skip(1).take(k) {
                        e.1 -= 1;
                        edges.push((v as u32, e.0 as u32));
                    }
                }
            } else {
                let mut right: Vec<(usize, usize)> = class[j].iter().map(|&w| (w, demand[w][i])).collect();
                left.sort_by_key(|e| std::cmp::Reverse(e.1));
                for &(v, k) in &left {
                    right.sort_by_key(|e| std::cmp::Reverse(e.1));
                    if k > right.len() || (k > 0 && right[k - 1].1 == 0) {
                        return None;
                    }
                    for e in right.iter_mut().take(k) {
                        e.1 -= 1;
                        edges.push((v as u32, e.0 as u32));
                    }
                }
                if right.iter().any(|e| e.1 != 0) {
                    return None;
                }
            }
        }
    }
    Some(edges)
}

/// Joins components with swaps (a,b),(c,d) -> (a,d),(c,b) where deg b = deg d,
/// which keeps every edge type count. (a,b) must lie on a cycle so that its
/// own component stays connected.
fn merge_components<R: Rng>(st: &mut SwapState, rng: &mut R) {
    loop {
        let comp = st.component_labels();
        if comp.iter().all(|&c| c == 0) {
            return;
        }
        let bridges = st.bridges();
        let mut order: Vec<usize> = (0..st.edges.len()).collect();
        order.shuffle(rng);
        let mut done = false;
        'outer: for &i in &order {
            if bridges[i] {
                continue;
            }
            let (a0, b0) = st.edges[i];
            for (a, b) in [(a0, b0), (b0, a0)] {
                for (j, &(c0, d0)) in st.edges.iter().enumerate() {
                    if comp[c0 as usize] == comp[a as usize] {
                        continue;
                    }
                    for (c, d) in [(c0, d0), (d0, c0)] {
                        if st.deg[d as usize] == st.deg[b as usize] {
                            st.replace(i, (a, d));
                            st.replace(j, (c, b));
                            done = true;
                            break 'outer;
                        }
                    }
                }
            }
        }
        if !done {
            return;
        }
    }
}

fn l1(a: &[i64; 6], b: &[i64; 6]) -> i64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

fn swap_search(deg: &[u8], target: &CountsProfile, seed: u64, steps: u32) -> Option<Vec<(u32, u32)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let goal = target_counts(target);
    let mut st = match jdm_construct(deg, target, &mut rng) {
        Some(edges) => {
            let mut st = SwapState::new(deg, edges);
            merge_components(&mut st, &mut rng);
            st
        }
        None => SwapState::new(deg, havel_hakimi(deg, &mut rng)?),
    };
    let m = st.edges.len();
    let cost = |st: &SwapState| l1(&st.counts, &goal) + 2 * (st.components() as i64 - 1);
    let mut current = cost(&st);
    let mut temperature = 1.0f64;
    for _ in 0..steps {
        if current == 0 {
            return Some(st.edges);
        }
        if m < 2 {
            return None;
        }
        let i = rng.gen_range(0..m);
        let mut j = rng.gen_range(0..m - 1);
        if j >= i {
            j += 1;
        }
        let (a, b) = st.edges[i];
        let (mut c, mut d) = st.edges[j];
        if rng.gen_bool(0.5) {
            std::mem::swap(&mut c, &mut d);
        }
        if a == c || a == d || b == c || b == d || st.adjacent(a, c) || st.adjacent(b, d) {
            continue;
        }
        st.replace(i, (a, c));
        st.replace(j, (b, d));
        let next = cost(&st);
        let accept = next <= current || rng.gen_bool((-((next - current) as f64) / temperature).exp().clamp(0.0, 1.0));
        if accept {
            current = next;
        } else {
            st.replace(j, (c, d));
            st.replace(i, (a, b));
        }
        temperature = (temperature * 0.9995).max(0.05);
    }
    (current == 0).then_some(st.edges)
}

/// Complete search that adds edges vertex by vertex, respecting the joint
/// degree matrix. Untouched vertices of equal degree are interchangeable, so
/// only the first one of each class is tried.
struct Backtrack {
    n: usize,
    deg: Vec<u8>,
    rem: Vec<u8>,
    adj: Vec<u64>,
    need: [[i64; 4]; 4],
    edges: Vec<(u32, u32)>,
    nodes: u64,
    limit: u64,
}

impl Backtrack {
    fn new(deg: &[u8], q: &CountsProfile, limit: u64) -> Self {
        let mut need = [[0i64; 4]; 4];
        for (a, b, c) in [
            (1, 2, q.m12),
            (1, 3, q.m13),
            (2, 2, q.m22),
            (2, 3, q.m23),
            (3, 3, q.m33),
        ] {
            need[a][b] = c;
            need[b][a] = c;
        }
        Backtrack {
            n: deg.len(),
            deg: deg.to_vec(),
            rem: deg.to_vec(),
            adj: vec![0; deg.len()],
            need,
            edges: Vec::new(),
            nodes: 0,
            limit,
        }
    }

    /// `None` on budget exhaustion, `Some(None)` if proven impossible.
    fn run(mut self) -> Option<Option<Vec<(u32, u32)>>> {
        match self.dfs(usize::MAX, 0) {
            Some(true) => Some(Some(self.edges)),
            Some(false) => Some(None),
            None => None,
        }
    }

    fn connectivity_ok(&self) -> bool {
        let remaining: u64 = self.rem.iter().map(|&r| r as u64).sum::<u64>() / 2;
        let mut seen = 0u64;
        let mut comps = 0u64;
        for s in 0..self.n {
            if seen >> s & 1 == 1 {
                continue;
            }
            comps += 1;
            let mut frontier = 1u64 << s;
            let mut comp = 0u64;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                if comp >> v & 1 == 1 {
                    continue;
                }
                comp |= 1 << v;
                frontier |= self.adj[v] & !comp;
            }
            seen |= comp;
            let open = (0..self.n).any(|v| comp >> v & 1 == 1 && self.rem[v] > 0);
            if !open && comp.count_ones() as usize != self.n {
                return false;
            }
        }
        comps - 1 <= remaining
    }

    fn set_edge(&mut self, v: usize, u: usize, add: bool) {
        let (dv, du) = (self.deg[v] as usize, self.deg[u] as usize);
        let delta = if add { -1 } else { 1 };
        self.need[dv][du] += delta;
        if dv != du {
            self.need[du][dv] += delta;
        }
        if add {
            self.rem[v] -= 1;
            self.rem[u] -= 1;
            self.adj[v] |= 1 << u;
            self.adj[u] |= 1 << v;
            self.edges.push((v as u32, u as u32));
        } else {
            self.rem[v] += 1;
            self.rem[u] += 1;
            self.adj[v] &= !(1 << u);
            self.adj[u] &= !(1 << v);
            self.edges.pop();
        }
    }

    fn dfs(&mut self, prev: usize, last: usize) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return None;
        }
        if !self.connectivity_ok() {
            return Some(false);
        }
        let Some(v) = (0..self.n).find(|&v| self.rem[v] > 0) else {
            return Some(true);
        };
        // neighbours of v are chosen in increasing order within its round
        let start = if v == prev { last + 1 } else { 0 };
        let dv = self.deg[v] as usize;
        let mut fresh_tried = [false; 4];
        for u in start..self.n {
            if u == v || self.rem[u] == 0 || self.adj[v] >> u & 1 == 1 {
                continue;
            }
            let du = self.deg[u] as usize;
            if self.need[dv][du] == 0 || (dv == du && self.need[dv][du] < 1) {
                continue;
            }
            if self.rem[u] == self.deg[u] {
                if fresh_tried[du] {
                    continue;
                }
                fresh_tried[du] = true;
            }
            self.set_edge(v, u, true);
            let r = self.dfs(v, u);
            if r != Some(false) {
                return r;
            }
            self.set_edge(v, u, false);
        }
        Some(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::extreme_points;

    fn pair(n: i64, m: i64) -> ValidPair {
        ValidPair::new(n, m).unwrap()
    }

    #[test]
    fn realizes_documented_examples() {
        let b = RealizeBudget::default();
        let g = realize(pair(8, 8), Point3::new(0, 4, 4), b).unwrap();
        assert_eq!(g.point(), Point3::new(0, 4, 4));
        let cubic = realize(pair(8, 12), Point3::new(0, 0, 12), b).unwrap();
        assert!(cubic.degrees().iter().all(|&d| d == 3));
        let g = realize(pair(8, 8), Point3::new(1, 1, 1), b).unwrap();
        assert_eq!(g.point(), Point3::new(1, 1, 1));
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let b = RealizeBudget::default();
        let a = realize(pair(12, 14), Point3::new(1, 2, 3), b);
        let c = realize(pair(12, 14), Point3::new(1, 2, 3), b);
        assert_eq!(a, c);
    }

    #[test]
    fn inconsistent_point_is_an_error() {
        let err = realize(pair(8, 8), Point3::new(3, 0, 0), RealizeBudget::default()).unwrap_err();
        assert!(matches!(err, RealizeError::InconsistentPoint(_)));
    }

    #[test]
    fn backtracking_alone_is_complete() {
        // only the exhaustive path runs
        let b = RealizeBudget {
            restarts: 0,
            ..RealizeBudget::default()
        };
        for (n, m) in [(6, 6), (7, 8), (8, 8), (8, 10)] {
            for lp in extreme_points(pair(n, m)) {
                let g = realize(pair(n, m), lp.point, b).unwrap();
                assert_eq!(g.point(), lp.point);
            }
        }
    }

    #[test]
    fn erdos_gallai() {
        assert!(is_graphical(&[3, 3, 3, 3]));
        assert!(!is_graphical(&[3, 3, 1, 1]));
        assert!(!is_graphical(&[3, 1, 1]));
        assert!(is_graphical(&[1, 1, 2, 2]));
    }
}
