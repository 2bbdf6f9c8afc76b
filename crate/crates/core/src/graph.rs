//! Simple undirected graphs on labelled vertices.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A simple undirected graph on vertices `0..n`.
///
/// Edges are stored canonically: smaller endpoint first, list sorted and
/// deduplicated, so derived equality is structural equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Graph {
    n: u32,
    edges: Vec<(u32, u32)>,
}

impl Graph {
    pub fn new(n: u32, edges: &[(u32, u32)]) -> Result<Self> {
        let mut canon = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(Error::BadParameter("loops are not allowed"));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        canon.dedup();
        Ok(Graph { n, edges: canon })
    }

    pub fn empty(n: u32) -> Self {
        Graph { n, edges: Vec::new() }
    }

    pub fn complete(k: u32) -> Self {
        let mut edges = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                edges.push((i, j));
            }
        }
        Graph { n: k, edges }
    }

    pub fn cycle(k: u32) -> Result<Self> {
        if k < 3 {
            return Err(Error::BadParameter("cycle needs at least 3 vertices"));
        }
        let edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
        Graph::new(k, &edges)
    }

    /// Path on `k` vertices (`k - 1` edges).
    pub fn path(k: u32) -> Self {
        let edges: Vec<_> = (0..k.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Graph { n: k, edges }
    }

    pub fn complete_bipartite(a: u32, b: u32) -> Self {
        let mut edges = Vec::new();
        for i in 0..a {
            for j in 0..b {
                edges.push((i, a + j));
            }
        }
        Graph { n: a + b, edges }
    }

    /// The Petersen graph: outer 5-cycle 0..4, inner pentagram 5..9, spokes.
    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, 5 + i));
        }
        Graph::new(10, &edges).unwrap()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        let e = (u.min(v), u.max(v));
        self.edges.binary_search(&e).is_ok()
    }

    pub fn degree(&self, v: u32) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn neighbours(&self, v: u32) -> Vec<u32> {
        let mut out = Vec::new();
        for &(a, b) in &self.edges {
            if a == v {
                out.push(b);
            } else if b == v {
                out.push(a);
            }
        }
        out.sort_unstable();
        out
    }

    /// Adjacency as bit rows; only valid for `n <= 64`.
    pub fn adjacency_masks(&self) -> Option<Vec<u64>> {
        if self.n > 64 {
            return None;
        }
        let mut adj = vec![0u64; self.n as usize];
        for &(u, v) in &self.edges {
            adj[u as usize] |= 1 << v;
            adj[v as usize] |= 1 << u;
        }
        Some(adj)
    }

    /// Graph with one edge removed (vertex set unchanged).
    pub fn without_edge(&self, u: u32, v: u32) -> Self {
        let e = (u.min(v), u.max(v));
        let edges = self.edges.iter().copied().filter(|&f| f != e).collect();
        Graph { n: self.n, edges }
    }

    /// Subgraph induced on `keep` (relabelled in increasing order of `keep`).
    pub fn induced(&self, keep: &[u32]) -> Result<Self> {
        let mut sorted: Vec<u32> = keep.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut index = vec![u32::MAX; self.n as usize];
        for (i, &v) in sorted.iter().enumerate() {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
            index[v as usize] = i as u32;
        }
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            let (iu, iv) = (index[u as usize], index[v as usize]);
            if iu != u32::MAX && iv != u32::MAX {
                edges.push((iu, iv));
            }
        }
        Graph::new(sorted.len() as u32, &edges)
    }

    /// Vertices with degree at least one.
    pub fn non_isolated(&self) -> Vec<u32> {
        let mut seen = vec![false; self.n as usize];
        for &(u, v) in &self.edges {
            seen[u as usize] = true;
            seen[v as usize] = true;
        }
        (0..self.n).filter(|&v| seen[v as usize]).collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n as usize];
        let mut stack = vec![0u32];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in self.neighbours(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Proper 2-colourability of the vertex set.
    pub fn is_bipartite(&self) -> bool {
        let mut colour = vec![u8::MAX; self.n as usize];
        for start in 0..self.n {
            if colour[start as usize] != u8::MAX {
                continue;
            }
            colour[start as usize] = 0;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                let c = colour[v as usize];
                for w in self.neighbours(v) {
                    let cw = &mut colour[w as usize];
                    if *cw == u8::MAX {
                        *cw = 1 - c;
                        stack.push(w);
                    } else if *cw == c {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Whether removing some single edge makes the graph bipartite.
    pub fn is_nearly_bipartite(&self) -> bool {
        self.edges
            .iter()
            .any(|&(u, v)| self.without_edge(u, v).is_bipartite())
    }

    /// The `k`-blowup: each vertex becomes an independent class of size `k`,
    /// each edge a complete bipartite graph between the two classes.
    ///
    /// Vertex `a` of the original maps to the class `a*k .. a*k + k`.
    pub fn blowup(&self, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::BadParameter("blowup factor must be positive"));
        }
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            for i in 0..k {
                for j in 0..k {
                    edges.push((u * k + i, v * k + j));
                }
            }
        }
        Graph::new(self.n * k, &edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_storage() {
        let g = Graph::new(4, &[(2, 1), (0, 3), (1, 2)]).unwrap();
        assert_eq!(g.edges(), &[(0, 3), (1, 2)]);
        assert!(g.has_edge(2, 1));
        assert!(!g.has_edge(0, 1));
    }

    #[test]
    fn rejects_bad_vertices_and_loops() {
        assert!(Graph::new(3, &[(0, 3)]).is_err());
        assert!(Graph::new(3, &[(1, 1)]).is_err());
    }

    #[test]
    fn atlas_sizes() {
        assert_eq!(Graph::complete(5).edge_count(), 10);
        assert_eq!(Graph::cycle(7).unwrap().edge_count(), 7);
        assert_eq!(Graph::path(4).edge_count(), 3);
        assert_eq!(Graph::complete_bipartite(3, 3).edge_count(), 9);
        let p = Graph::petersen();
        assert_eq!(p.edge_count(), 15);
        assert!((0..10).all(|v| p.degree(v) == 3));
        assert!(p.is_connected());
        assert!(!p.is_bipartite());
    }

    #[test]
    fn bipartite_checks() {
        assert!(Graph::complete_bipartite(2, 3).is_bipartite());
        assert!(!Graph::cycle(5).unwrap().is_bipartite());
        assert!(Graph::cycle(5).unwrap().is_nearly_bipartite());
        assert!(!Graph::petersen().is_nearly_bipartite());
        assert!(Graph::complete(3).is_nearly_bipartite());
    }

    #[test]
    fn blowup_examples() {
        // blowup(K_2, 2) is a 4-cycle.
        let b = Graph::complete(2).blowup(2).unwrap();
        assert_eq!(b.n(), 4);
        assert_eq!(b.edge_count(), 4);
        assert!(b.is_connected());
        assert!(b.is_bipartite());
        // blowup(F, 1) = F.
        let h = Graph::petersen();
        assert_eq!(h.blowup(1).unwrap(), h);
        // blowup(K_3, 2) = K_{2,2,2} with 12 edges.
        let t = Graph::complete(3).blowup(2).unwrap();
        assert_eq!(t.n(), 6);
        assert_eq!(t.edge_count(), 12);
    }

    #[test]
    fn induced_subgraph() {
        let g = Graph::complete(5);
        let h = g.induced(&[0, 2, 4]).unwrap();
        assert_eq!(h, Graph::complete(3));
    }
}
