//! Deterministic layer-revealing of connected vertex sets.
//!
//! Starting from the smallest vertex of `S`, the procedure repeatedly
//! absorbs the lexicographically smallest edge of the induced subhypergraph
//! that meets the current set in `2..=s-1` vertices (a *degenerate* step);
//! when no such edge exists it closes the layer and, unless finished,
//! starts a new one from the smallest vertex having an edge meeting the
//! layer exactly in itself. Vertices first revealed by a degenerate step
//! are the degenerate elements. The global vertex labels define "smallest"
//! throughout, so traces are bit-identical across runs.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hypergraph::UniformHypergraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    Degenerate,
    NewLayer,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RevealStep {
    pub kind: StepKind,
    pub edge: Vec<u32>,
    pub new_vertices: Vec<u32>,
    /// 1-based index of the layer under construction.
    pub layer: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RevealTrace {
    pub start: u32,
    pub layers: Vec<Vec<u32>>,
    pub steps: Vec<RevealStep>,
    /// Vertices first revealed during a degenerate step, sorted.
    pub degenerate: Vec<u32>,
}

impl RevealTrace {
    /// `d(S)`: the number of layers.
    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn final_set(&self) -> &[u32] {
        self.layers.last().map(|l| l.as_slice()).unwrap_or(&[])
    }

    pub fn degenerate_steps(&self) -> usize {
        self.steps.iter().filter(|s| s.kind == StepKind::Degenerate).count()
    }
}

/// Runs the reveal procedure on `set` (which must induce a connected
/// subhypergraph).
pub fn reveal_layers(h: &UniformHypergraph, set: &[u32]) -> Result<RevealTrace> {
    let mut s: Vec<u32> = set.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.is_empty() {
        return Err(Error::Empty);
    }
    if let Some(&v) = s.iter().find(|&&v| v >= h.n()) {
        return Err(Error::VertexOutOfRange { vertex: v, n: h.n() });
    }
    if !h.is_connected_subset(&s) {
        return Err(Error::Disconnected);
    }
    // Edges inside S, in storage (lexicographic) order.
    let inside: Vec<&Vec<u32>> = h
        .edges()
        .iter()
        .filter(|e| e.iter().all(|v| s.binary_search(v).is_ok()))
        .collect();
    let uniformity = h.s();

    let start = s[0];
    let mut current: Vec<u32> = vec![start];
    let mut degenerate: Vec<u32> = Vec::new();
    let mut layers: Vec<Vec<u32>> = Vec::new();
    let mut steps: Vec<RevealStep> = Vec::new();
    let mut layer = 1usize;
    loop {
        // Degenerate steps: smallest edge meeting the set in 2..=s-1.
        loop {
            let pick = inside.iter().find(|e| {
                let overlap = e.iter().filter(|v| current.binary_search(v).is_ok()).count();
                (2..=uniformity - 1).contains(&overlap)
            });
            match pick {
                Some(e) => {
                    let fresh: Vec<u32> = e
                        .iter()
                        .copied()
                        .filter(|v| current.binary_search(v).is_err())
                        .collect();
                    for &v in &fresh {
                        current.push(v);
                        degenerate.push(v);
                    }
                    current.sort_unstable();
                    steps.push(RevealStep {
                        kind: StepKind::Degenerate,
                        edge: (*e).clone(),
                        new_vertices: fresh,
                        layer,
                    });
                }
                None => break,
            }
        }
        layers.push(current.clone());
        if current.len() == s.len() {
            break;
        }
        // New layer: smallest vertex with an edge meeting the layer exactly
        // in itself, then the smallest such edge.
        let mut chosen: Option<(u32, &Vec<u32>)> = None;
        'verts: for &v in &current {
            for e in &inside {
                let overlap: Vec<u32> = e
                    .iter()
                    .copied()
                    .filter(|w| current.binary_search(w).is_ok())
                    .collect();
                if overlap == [v] {
                    chosen = Some((v, e));
                    break 'verts;
                }
            }
        }
        let (v, e) = chosen.ok_or(Error::Disconnected)?;
        let fresh: Vec<u32> = e
            .iter()
            .copied()
            .filter(|w| current.binary_search(w).is_err())
            .collect();
        for &w in &fresh {
            current.push(w);
        }
        current.sort_unstable();
        layer += 1;
        steps.push(RevealStep {
            kind: StepKind::NewLayer,
            edge: e.clone(),
            new_vertices: fresh,
            layer,
        });
        let _ = v;
    }
    degenerate.sort_unstable();
    let trace = RevealTrace { start, layers, steps, degenerate };
    debug_assert_eq!(
        trace.degenerate.len(),
        s.len() - 1 - (trace.depth() - 1) * (uniformity - 1),
    );
    Ok(trace)
}

/// The number of degenerate elements, checking the accounting identity
/// `|S| - 1 - (d - 1)(s - 1)`.
pub fn count_degenerate(h: &UniformHypergraph, trace: &RevealTrace) -> usize {
    let s_len = trace.final_set().len();
    let expected = s_len - 1 - (trace.depth() - 1) * (h.s() - 1);
    assert_eq!(trace.degenerate.len(), expected, "reveal accounting identity");
    trace.degenerate.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_loose_edges() {
        // Edges {0,1,2}, {2,3,4}: layer one is just the start vertex, each
        // later layer absorbs one loose edge through a single shared vertex
        // (hand trace: {0}, {0,1,2}, all).
        let h = UniformHypergraph::new(3, 5, &[vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
        let t = reveal_layers(&h, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(t.depth(), 3);
        assert_eq!(t.degenerate, Vec::<u32>::new());
        assert_eq!(count_degenerate(&h, &t), 0);
        assert_eq!(t.layers[0], vec![0]);
        assert_eq!(t.layers[1], vec![0, 1, 2]);
        assert_eq!(t.layers[2], vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn tight_pair_is_degenerate() {
        // Edges {0,1,2}, {1,2,3}: layer two opens with {0,1,2} and then
        // absorbs {1,2,3} degenerately (overlap two), so vertex 3 is
        // degenerate and d = 2.
        let h = UniformHypergraph::new(3, 4, &[vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        let t = reveal_layers(&h, &[0, 1, 2, 3]).unwrap();
        assert_eq!(t.depth(), 2);
        assert_eq!(t.degenerate, vec![3]);
        assert_eq!(count_degenerate(&h, &t), 1);
        assert_eq!(t.degenerate_steps(), 1);
    }

    #[test]
    fn three_layer_chain() {
        // Hand trace of {0,1,2},{2,3,4},{4,5,6} from the full set: layers
        // {0}, {0,1,2}, {0..4}, {0..6}; d = 4, no degenerates.
        let h = UniformHypergraph::new(
            3,
            7,
            &[vec![0, 1, 2], vec![2, 3, 4], vec![4, 5, 6]],
        )
        .unwrap();
        let t = reveal_layers(&h, &(0..7).collect::<Vec<_>>()).unwrap();
        assert_eq!(t.depth(), 4);
        assert_eq!(count_degenerate(&h, &t), 0);
    }

    #[test]
    fn singleton_trace() {
        let h = UniformHypergraph::new(3, 5, &[vec![0, 1, 2]]).unwrap();
        let t = reveal_layers(&h, &[4]).unwrap();
        assert_eq!(t.depth(), 1);
        assert_eq!(t.layers, vec![vec![4]]);
        assert_eq!(count_degenerate(&h, &t), 0);
    }

    #[test]
    fn disconnected_rejected() {
        let h = UniformHypergraph::new(3, 6, &[vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        assert_eq!(reveal_layers(&h, &[0, 1, 2, 3]), Err(Error::Disconnected));
    }

    #[test]
    fn determinism() {
        let h = UniformHypergraph::fano();
        let a = reveal_layers(&h, &(0..7).collect::<Vec<_>>()).unwrap();
        let b = reveal_layers(&h, &(0..7).collect::<Vec<_>>()).unwrap();
        assert_eq!(a, b);
    }
}
