//! Small graphs on at most 16 vertices and their canonical forms.

use std::cmp::Ordering;

pub const MAX_ORDER: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SmallGraph {
    pub n: u8,
    pub adj: [u16; MAX_ORDER],
}

impl SmallGraph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_ORDER);
        SmallGraph {
            n: n as u8,
            adj: [0; MAX_ORDER],
        }
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.adj[v].count_ones()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn with_edge(mut self, u: usize, v: usize) -> Self {
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        self
    }

    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for u in 0..self.n as usize {
            for v in u + 1..self.n as usize {
                if self.has_edge(u, v) {
                    out.push((u as u32, v as u32));
                }
            }
        }
        out
    }

    /// Vertex masks of the connected components, ordered by lowest vertex.
    pub fn components(&self) -> Vec<u16> {
        let n = self.n as usize;
        let mut seen = 0u16;
        let mut out = Vec::new();
        for s in 0..n {
            if seen >> s & 1 == 1 {
                continue;
            }
            let mut comp = 1u16 << s;
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = self.adj[v] & !comp;
                comp |= new;
                frontier |= new;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    /// Isomorphism invariant: sorted (size, canonical code) of every component.
    pub fn canonical_key(&self) -> Vec<(u8, u128)> {
        let mut key: Vec<(u8, u128)> = self
            .components()
            .into_iter()
            .map(|mask| (mask.count_ones() as u8, component_code(self, mask)))
            .collect();
        key.sort_unstable();
        key
    }
}

/// Maximum adjacency code over all labelings reachable by individualization
/// and refinement from the degree partition.
fn component_code(g: &SmallGraph, mask: u16) -> u128 {
    let verts: Vec<usize> = (0..g.n as usize).filter(|&v| mask >> v & 1 == 1).collect();
    let k = verts.len();
    let mut local = vec![0u16; k];
    for (i, &v) in verts.iter().enumerate() {
        for (j, &w) in verts.iter().enumerate() {
            if g.has_edge(v, w) {
                local[i] |= 1 << j;
            }
        }
    }
    let mut by_degree: Vec<Vec<usize>> = vec![Vec::new(); 4];
    for (i, row) in local.iter().enumerate() {
        by_degree[row.count_ones() as usize].push(i);
    }
    let cells: Vec<Vec<usize>> = by_degree.into_iter().filter(|c| !c.is_empty()).collect();
    let mut best = None;
    search(&local, cells, &mut best);
    best.expect("at least one leaf")
}

fn refine(adj: &[u16], cells: &mut Vec<Vec<usize>>) {
    loop {
        let k = adj.len();
        let mut cell_of = vec![0usize; k];
        for (c, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = c;
            }
        }
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(cells.len());
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let sig = |v: usize| -> Vec<u8> {
                let mut s = vec![0u8; cells.len()];
                let mut row = adj[v];
                while row != 0 {
                    let w = row.trailing_zeros() as usize;
                    row &= row - 1;
                    s[cell_of[w]] += 1;
                }
                s
            };
            let mut tagged: Vec<(Vec<u8>, usize)> = cell.iter().map(|&v| (sig(v), v)).collect();
            tagged.sort();
            let mut start = 0;
            for i in 1..=tagged.len() {
                if i == tagged.len() || tagged[i].0 != tagged[start].0 {
                    next.push(tagged[start..i].iter().map(|t| t.1).collect());
                    start = i;
                }
            }
        }
        let grew = next.len() != cells.len();
        *cells = next;
        if !grew {
            return;
        }
    }
}

fn search(adj: &[u16], mut cells: Vec<Vec<usize>>, best: &mut Option<u128>) {
    refine(adj, &mut cells);
    let Some(t) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let code = code_of(adj, &order);
        if best.is_none_or(|b| code.cmp(&b) == Ordering::Greater) {
            *best = Some(code);
        }
        return;
    };
    for &v in &cells[t] {
        let mut next = Vec::with_capacity(cells.len() + 1);
        next.extend_from_slice(&cells[..t]);
        next.push(vec![v]);
        next.push(cells[t].iter().copied().filter(|&w| w != v).collect());
        next.extend_from_slice(&cells[t + 1..]);
        search(adj, next, best);
    }
}

fn code_of(adj: &[u16], order: &[usize]) -> u128 {
    let mut code = 0u128;
    for r in 0..order.len() {
        for s in r + 1..order.len() {
            code = code << 1 | (adj[order[r]] >> order[s] & 1) as u128;
        }
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> SmallGraph {
        edges.iter().fold(SmallGraph::empty(n), |g, &(u, v)| g.with_edge(u, v))
    }

    #[test]
    fn relabelings_share_a_key() {
        // Petersen graph under two labelings
        let outer: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let spokes: Vec<(usize, usize)> = (0..5).map(|i| (i, i + 5)).collect();
        let inner: Vec<(usize, usize)> = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5)).collect();
        let all: Vec<(usize, usize)> = outer.iter().chain(&spokes).chain(&inner).copied().collect();
        let g = graph(10, &all);
        let perm = [3, 7, 1, 9, 0, 5, 8, 2, 6, 4];
        let h = graph(10, &all.iter().map(|&(u, v)| (perm[u], perm[v])).collect::<Vec<_>>());
        assert_eq!(g.canonical_key(), h.canonical_key());
    }

    #[test]
    fn distinguishes_non_isomorphic() {
        // C6 versus two triangles; prism versus K_{3,3}
        let c6 = graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let tt = graph(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        assert_ne!(c6.canonical_key(), tt.canonical_key());
        let prism = graph(
            6,
            &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
        );
        let k33 = graph(
            6,
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        );
        assert_ne!(prism.canonical_key(), k33.canonical_key());
        assert_eq!(tt.components().len(), 2);
    }
}
