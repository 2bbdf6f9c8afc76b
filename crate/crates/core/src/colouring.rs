//! Proper r-colourings of hypergraphs by complete backtracking search.
//!
//! Colours are 1-based. The searcher propagates the unit rule (an edge with
//! all but one vertex in a single colour forbids that colour on the last
//! vertex) and breaks colour symmetry by canonical first use, which is
//! sound for existence and for minimisation.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hypergraph::UniformHypergraph;

/// Partial vertex colouring; `None` is uncoloured, colours are `1..=r`.
pub type PartialColouring = Vec<Option<u32>>;

/// A proper colouring with no monochromatic edge, or a certified `None`.
pub fn proper_colouring(h: &UniformHypergraph, r: u32) -> Result<Option<Vec<u32>>> {
    if r < 2 {
        return Err(Error::BadParameter("r must be at least 2"));
    }
    let n = h.n() as usize;
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let incidence = h.incidence();
    let mut state = Search {
        h,
        incidence: &incidence,
        colour: vec![0u32; n],
        allowed: vec![mask_all(r); n],
        trail: Vec::new(),
        r,
    };
    if state.solve(0) {
        Ok(Some(state.colour))
    } else {
        Ok(None)
    }
}

/// Checks that `colouring` leaves no edge of `h` monochromatic.
pub fn verify_proper(h: &UniformHypergraph, colouring: &[u32]) -> bool {
    if colouring.len() != h.n() as usize {
        return false;
    }
    h.edges().iter().all(|e| {
        let first = colouring[e[0] as usize];
        !e.iter().all(|&v| colouring[v as usize] == first)
    })
}

fn mask_all(r: u32) -> u32 {
    if r >= 32 {
        u32::MAX
    } else {
        (1 << r) - 1
    }
}

struct Search<'a> {
    h: &'a UniformHypergraph,
    incidence: &'a [Vec<u32>],
    colour: Vec<u32>,
    allowed: Vec<u32>,
    trail: Vec<(usize, Vec<(usize, u32)>)>,
    r: u32,
}

impl Search<'_> {
    fn solve(&mut self, max_used: u32) -> bool {
        // Most constrained vertex first, ties on index.
        let mut pick: Option<(usize, u32)> = None;
        for v in 0..self.colour.len() {
            if self.colour[v] != 0 {
                continue;
            }
            let options = self.allowed[v].count_ones();
            match pick {
                Some((_, best)) if best <= options => {}
                _ => pick = Some((v, options)),
            }
        }
        let Some((v, _)) = pick else {
            return true;
        };
        let cap = (max_used + 1).min(self.r);
        for c in 1..=cap {
            if self.allowed[v] >> (c - 1) & 1 == 0 {
                continue;
            }
            if self.assign_and_check(v, c) {
                if self.solve(max_used.max(c)) {
                    return true;
                }
                self.undo(v);
            }
        }
        false
    }

    /// Sets the colour and reruns unit propagation on incident edges.
    /// Returns false when an edge goes monochromatic or a vertex runs out
    /// of colours; the caller then calls `undo`.
    fn assign_and_check(&mut self, v: usize, c: u32) -> bool {
        self.colour[v] = c;
        let mut touched: Vec<(usize, u32)> = Vec::new();
        let ok = 'prop: {
            for &ei in &self.incidence[v] {
                let edge = &self.h.edges()[ei as usize];
                let mut uncoloured = None;
                let mut same = 0;
                for &w in edge {
                    let cw = self.colour[w as usize];
                    if cw == 0 {
                        uncoloured = Some(w as usize);
                    } else if cw == c {
                        same += 1;
                    }
                }
                if same == edge.len() {
                    break 'prop false;
                }
                if same == edge.len() - 1 {
                    if let Some(u) = uncoloured {
                        if self.allowed[u] >> (c - 1) & 1 == 1 {
                            touched.push((u, self.allowed[u]));
                            self.allowed[u] &= !(1 << (c - 1));
                            if self.allowed[u] == 0 {
                                break 'prop false;
                            }
                        }
                    }
                }
            }
            true
        };
        if !ok {
            for (u, old) in touched.into_iter().rev() {
                self.allowed[u] = old;
            }
            self.colour[v] = 0;
            return false;
        }
        self.trail.push((v, touched));
        true
    }

    fn undo(&mut self, v: usize) {
        if let Some((tv, touched)) = self.trail.pop() {
            debug_assert_eq!(tv, v);
            for (u, old) in touched.into_iter().rev() {
                self.allowed[u] = old;
            }
        }
        self.colour[v] = 0;
    }
}

/// Outcome of the monochromatic-edge minimisation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinMono {
    Exact(u64),
    /// Best upper bound found within the vertex cap.
    Heuristic(u64),
}

impl MinMono {
    pub fn value(&self) -> u64 {
        match *self {
            MinMono::Exact(v) | MinMono::Heuristic(v) => v,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, MinMono::Exact(_))
    }
}

/// Exact minimum number of monochromatic edges over all r-colourings
/// (branch and bound with canonical colour introduction), falling back to a
/// greedy upper bound above `vertex_cap`.
pub fn min_monochromatic_edges(h: &UniformHypergraph, r: u32, vertex_cap: u32) -> Result<MinMono> {
    if r < 2 {
        return Err(Error::BadParameter("r must be at least 2"));
    }
    let n = h.n() as usize;
    if n == 0 || h.edge_count() == 0 {
        return Ok(MinMono::Exact(0));
    }
    let greedy = greedy_colouring_cost(h, r);
    if h.n() > vertex_cap {
        return Ok(MinMono::Heuristic(greedy));
    }
    let incidence = h.incidence();
    let mut colour = vec![0u32; n];
    let mut best = greedy;
    branch_min(h, &incidence, r, &mut colour, 0, 0, 0, &mut best);
    Ok(MinMono::Exact(best))
}

#[allow(clippy::too_many_arguments)]
fn branch_min(
    h: &UniformHypergraph,
    incidence: &[Vec<u32>],
    r: u32,
    colour: &mut Vec<u32>,
    v: usize,
    mono_so_far: u64,
    max_used: u32,
    best: &mut u64,
) {
    if mono_so_far >= *best {
        return;
    }
    if v == colour.len() {
        *best = mono_so_far;
        return;
    }
    let cap = (max_used + 1).min(r);
    for c in 1..=cap {
        colour[v] = c;
        // Edges completed by v: add those that came out monochromatic.
        let mut added = 0;
        for &ei in &incidence[v] {
            let edge = &h.edges()[ei as usize];
            if edge.iter().all(|&w| colour[w as usize] == c) {
                added += h.multiplicity(ei as usize);
            }
        }
        branch_min(h, incidence, r, colour, v + 1, mono_so_far + added, max_used.max(c), best);
        colour[v] = 0;
    }
}

fn greedy_colouring_cost(h: &UniformHypergraph, r: u32) -> u64 {
    let n = h.n() as usize;
    let incidence = h.incidence();
    let mut colour = vec![0u32; n];
    for v in 0..n {
        let mut best_c = 1;
        let mut best_cost = u64::MAX;
        for c in 1..=r {
            colour[v] = c;
            let mut cost = 0;
            for &ei in &incidence[v] {
                let edge = &h.edges()[ei as usize];
                if edge
                    .iter()
                    .all(|&w| (w as usize) <= v && colour[w as usize] == c)
                {
                    cost += h.multiplicity(ei as usize);
                }
            }
            if cost < best_cost {
                best_cost = cost;
                best_c = c;
            }
        }
        colour[v] = best_c;
    }
    let mut total = 0;
    for (i, edge) in h.edges().iter().enumerate() {
        let first = colour[edge[0] as usize];
        if edge.iter().all(|&w| colour[w as usize] == first) {
            total += h.multiplicity(i);
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::build_schur_hypergraph;

    #[test]
    fn single_edge_two_colourable() {
        let h = UniformHypergraph::new(3, 3, &[vec![0, 1, 2]]).unwrap();
        let c = proper_colouring(&h, 2).unwrap().unwrap();
        assert!(verify_proper(&h, &c));
    }

    #[test]
    fn fano_not_two_colourable() {
        let f = UniformHypergraph::fano();
        assert_eq!(proper_colouring(&f, 2).unwrap(), None);
        // Exhaustive oracle over all 2^7 colourings.
        let mut any = false;
        for bits in 0..128u32 {
            let colouring: Vec<u32> = (0..7).map(|v| 1 + (bits >> v & 1)).collect();
            any |= verify_proper(&f, &colouring);
        }
        assert!(!any);
        // Three colours do suffice.
        let c = proper_colouring(&f, 3).unwrap().unwrap();
        assert!(verify_proper(&f, &c));
    }

    #[test]
    fn empty_hypergraph_trivially_colourable() {
        let h = UniformHypergraph::new(3, 5, &[]).unwrap();
        let c = proper_colouring(&h, 2).unwrap().unwrap();
        assert_eq!(c.len(), 5);
    }

    #[test]
    fn min_mono_on_two_colourable_is_zero() {
        let h = UniformHypergraph::new(3, 4, &[vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        assert_eq!(min_monochromatic_edges(&h, 2, 30).unwrap(), MinMono::Exact(0));
    }

    /// Oracle: full enumeration of r^n colourings.
    fn min_mono_brute(h: &UniformHypergraph, r: u32) -> u64 {
        let n = h.n();
        let mut best = u64::MAX;
        let mut code = vec![1u32; n as usize];
        loop {
            let mut mono = 0;
            for (i, edge) in h.edges().iter().enumerate() {
                let first = code[edge[0] as usize];
                if edge.iter().all(|&w| code[w as usize] == first) {
                    mono += h.multiplicity(i);
                }
            }
            best = best.min(mono);
            let mut i = 0;
            loop {
                if i == n as usize {
                    return best;
                }
                code[i] += 1;
                if code[i] <= r {
                    break;
                }
                code[i] = 1;
                i += 1;
            }
        }
    }

    #[test]
    fn fano_min_mono_matches_brute_force() {
        let f = UniformHypergraph::fano();
        let brute = min_mono_brute(&f, 2);
        assert!(brute >= 1);
        assert_eq!(min_monochromatic_edges(&f, 2, 30).unwrap(), MinMono::Exact(brute));
    }

    #[test]
    fn schur_z11_min_mono_matches_brute_force() {
        let h = build_schur_hypergraph(11, false).unwrap();
        let brute = min_mono_brute(&h, 2);
        assert_eq!(min_monochromatic_edges(&h, 2, 30).unwrap(), MinMono::Exact(brute));
    }

    #[test]
    fn heuristic_flag_above_cap() {
        let f = UniformHypergraph::fano();
        let out = min_monochromatic_edges(&f, 2, 5).unwrap();
        assert!(!out.is_exact());
        assert!(out.value() >= min_mono_brute(&f, 2));
    }
}
