//! s-uniform hypergraphs on labelled vertices.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// An `s`-uniform hypergraph on vertices `0..n`.
///
/// Edges are stored as sorted vertex lists, the edge list itself sorted
/// lexicographically and deduplicated, so equality is structural and the
/// lexicographic edge order used by the reveal procedure is the storage
/// order. An optional multiplicity vector (parallel to `edges`) supports
/// multihypergraph use; absent means all multiplicities are one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformHypergraph {
    s: usize,
    n: u32,
    edges: Vec<Vec<u32>>,
    multiplicity: Option<Vec<u64>>,
}

/// Degree statistics of an `s`-uniform hypergraph.
///
/// For each `t` in `1..=s`: the maximum degree of a `t`-set, the average
/// degree over occupied `t`-sets, and the normalised ratio
/// `delta_t * v / (p^(t-1) * e)` where `p = (v/e)^(1/(s-1))`.
/// Degree counts are exact; `p` and the ratios are doubles (compare with
/// tolerance 1e-9).
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeProfile {
    pub s: usize,
    pub vertices: u64,
    pub edge_count: u64,
    pub max_degree: Vec<u64>,
    pub avg_degree: Vec<f64>,
    pub p_scale: f64,
    pub ratio: Vec<f64>,
}

impl UniformHypergraph {
    pub fn new(s: usize, n: u32, edges: &[Vec<u32>]) -> Result<Self> {
        if s < 2 {
            return Err(Error::UniformityTooSmall { s });
        }
        let mut canon: Vec<Vec<u32>> = Vec::with_capacity(edges.len());
        for e in edges {
            let mut e = e.clone();
            e.sort_unstable();
            e.dedup();
            if e.len() != s {
                return Err(Error::BadEdge { expected: s, got: e.len() });
            }
            if let Some(&last) = e.last() {
                if last >= n {
                    return Err(Error::VertexOutOfRange { vertex: last, n });
                }
            }
            canon.push(e);
        }
        canon.sort_unstable();
        canon.dedup();
        Ok(UniformHypergraph { s, n, edges: canon, multiplicity: None })
    }

    /// Attach multiplicities (parallel to the deduplicated edge list).
    pub fn with_multiplicity(mut self, mult: Vec<u64>) -> Result<Self> {
        if mult.len() != self.edges.len() {
            return Err(Error::BadParameter("multiplicity length mismatch"));
        }
        self.multiplicity = Some(mult);
        Ok(self)
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn edges(&self) -> &[Vec<u32>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Total edge weight (multiplicities, or the edge count when absent).
    pub fn weight(&self) -> u64 {
        match &self.multiplicity {
            Some(m) => m.iter().sum(),
            None => self.edges.len() as u64,
        }
    }

    pub fn multiplicity(&self, edge_index: usize) -> u64 {
        self.multiplicity.as_ref().map_or(1, |m| m[edge_index])
    }

    pub fn degree(&self, v: u32) -> u64 {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.binary_search(&v).is_ok())
            .map(|(i, _)| self.multiplicity(i))
            .sum()
    }

    /// Edge indices incident to each vertex.
    pub fn incidence(&self) -> Vec<Vec<u32>> {
        let mut inc = vec![Vec::new(); self.n as usize];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v as usize].push(i as u32);
            }
        }
        inc
    }

    /// Subhypergraph induced by `keep`: exactly the edges fully inside
    /// `keep`, vertices relabelled order-preservingly. Returns the
    /// hypergraph together with the sorted list of original labels
    /// (`result vertex i` = `labels[i]`).
    pub fn induced(&self, keep: &[u32]) -> Result<(UniformHypergraph, Vec<u32>)> {
        let mut labels: Vec<u32> = keep.to_vec();
        labels.sort_unstable();
        labels.dedup();
        let mut index = vec![u32::MAX; self.n as usize];
        for (i, &v) in labels.iter().enumerate() {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
            index[v as usize] = i as u32;
        }
        let mut edges = Vec::new();
        let mut mult = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.iter().all(|&v| index[v as usize] != u32::MAX) {
                edges.push(e.iter().map(|&v| index[v as usize]).collect());
                mult.push(self.multiplicity(i));
            }
        }
        let mut sub = UniformHypergraph::new(self.s, labels.len() as u32, &edges)?;
        if self.multiplicity.is_some() {
            sub = sub.with_multiplicity(mult)?;
        }
        Ok((sub, labels))
    }

    /// Whether the subhypergraph induced by `set` is connected (every two
    /// vertices joined by a chain of overlapping edges inside `set`).
    /// Singletons count as connected; the empty set does not.
    pub fn is_connected_subset(&self, set: &[u32]) -> bool {
        let verts: BTreeSet<u32> = set.iter().copied().collect();
        if verts.is_empty() {
            return false;
        }
        let inside: Vec<&Vec<u32>> = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|v| verts.contains(v)))
            .collect();
        let start = *verts.iter().next().unwrap();
        let mut reached = BTreeSet::new();
        reached.insert(start);
        let mut grew = true;
        while grew {
            grew = false;
            for e in &inside {
                if e.iter().any(|v| reached.contains(v)) {
                    for &v in e.iter() {
                        if reached.insert(v) {
                            grew = true;
                        }
                    }
                }
            }
        }
        reached.len() == verts.len()
    }

    /// Maximum degree of a `t`-set, computed by enumerating `t`-subsets of
    /// edges only.
    pub fn max_t_degree(&self, t: usize) -> u64 {
        *self.t_degrees(t).values().max().unwrap_or(&0)
    }

    /// Degrees of all occupied `t`-sets.
    pub fn t_degrees(&self, t: usize) -> BTreeMap<Vec<u32>, u64> {
        let mut deg: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
        if t == 0 || t > self.s {
            return deg;
        }
        for (i, e) in self.edges.iter().enumerate() {
            let m = self.multiplicity(i);
            for_each_subset(e, t, &mut |sub| {
                *deg.entry(sub.to_vec()).or_insert(0) += m;
            });
        }
        deg
    }

    /// The degree profile. Errors on an empty hypergraph (`p` undefined).
    pub fn degree_profile(&self) -> Result<DegreeProfile> {
        if self.edges.is_empty() || self.n == 0 {
            return Err(Error::Empty);
        }
        let v = self.n as f64;
        let e = self.weight() as f64;
        let p_scale = libm::pow(v / e, 1.0 / (self.s as f64 - 1.0));
        let mut max_degree = Vec::with_capacity(self.s);
        let mut avg_degree = Vec::with_capacity(self.s);
        let mut ratio = Vec::with_capacity(self.s);
        for t in 1..=self.s {
            let deg = self.t_degrees(t);
            let max = *deg.values().max().unwrap_or(&0);
            let total: u64 = deg.values().sum();
            let avg = total as f64 / deg.len() as f64;
            max_degree.push(max);
            avg_degree.push(avg);
            ratio.push(max as f64 * v / (libm::pow(p_scale, t as f64 - 1.0) * e));
        }
        Ok(DegreeProfile {
            s: self.s,
            vertices: self.n as u64,
            edge_count: self.weight(),
            max_degree,
            avg_degree,
            p_scale,
            ratio,
        })
    }

    /// Iteratively removes `m` edges, each containing a `t`-set of currently
    /// largest degree (ties broken towards the lexicographically smallest
    /// set, then the smallest edge). The result satisfies
    /// `max_t_degree(t) <= sum_T deg(T)^2 / m` against the original degrees.
    pub fn trim_by_degree(&self, t: usize, m: usize) -> Result<UniformHypergraph> {
        if t == 0 || t > self.s {
            return Err(Error::BadParameter("t must lie in 1..=s"));
        }
        if m >= self.edges.len() {
            return UniformHypergraph::new(self.s, self.n, &[]);
        }
        let mut deg = self.t_degrees(t);
        let mut alive: Vec<bool> = vec![true; self.edges.len()];
        for _ in 0..m {
            let (best, _) = deg
                .iter()
                .max_by(|a, b| a.1.cmp(b.1).then_with(|| b.0.cmp(a.0)))
                .map(|(k, v)| (k.clone(), *v))
                .unwrap();
            let victim = self
                .edges
                .iter()
                .enumerate()
                .find(|(i, e)| alive[*i] && contains_sorted(e, &best))
                .map(|(i, _)| i)
                .expect("positive degree set must lie in a live edge");
            alive[victim] = false;
            let mult = self.multiplicity(victim);
            for_each_subset(&self.edges[victim], t, &mut |sub| {
                let d = deg.get_mut(sub).unwrap();
                *d -= mult;
                if *d == 0 {
                    deg.remove(sub);
                }
            });
        }
        let kept: Vec<Vec<u32>> = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| alive[*i])
            .map(|(_, e)| e.clone())
            .collect();
        let mut out = UniformHypergraph::new(self.s, self.n, &kept)?;
        if self.multiplicity.is_some() {
            let mult: Vec<u64> = (0..self.edges.len())
                .filter(|&i| alive[i])
                .map(|i| self.multiplicity(i))
                .collect();
            out = out.with_multiplicity(mult)?;
        }
        Ok(out)
    }

    /// The Fano plane, a handy 7-point fixture.
    pub fn fano() -> UniformHypergraph {
        let blocks = [
            vec![0, 1, 2],
            vec![0, 3, 4],
            vec![0, 5, 6],
            vec![1, 3, 5],
            vec![1, 4, 6],
            vec![2, 3, 6],
            vec![2, 4, 5],
        ];
        UniformHypergraph::new(3, 7, &blocks).unwrap()
    }
}

fn contains_sorted(edge: &[u32], set: &[u32]) -> bool {
    set.iter().all(|v| edge.binary_search(v).is_ok())
}

/// Calls `f` on every `t`-subset of the sorted slice `items`.
pub fn for_each_subset(items: &[u32], t: usize, f: &mut dyn FnMut(&[u32])) {
    fn rec(items: &[u32], t: usize, start: usize, buf: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
        if buf.len() == t {
            f(buf);
            return;
        }
        let need = t - buf.len();
        for i in start..=items.len().saturating_sub(need) {
            buf.push(items[i]);
            rec(items, t, i + 1, buf, f);
            buf.pop();
        }
    }
    if t <= items.len() {
        let mut buf = Vec::with_capacity(t);
        rec(items, t, 0, &mut buf, f);
    }
}
