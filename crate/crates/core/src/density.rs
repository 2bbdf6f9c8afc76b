//! Exact graph densities: 2-density, maximum subgraph density, strict
//! 2-balance and the incidence-count inequality behind the list-colouring
//! argument.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::graph::Graph;
use crate::rational::{rat, rat_string, Rat};

/// Summary of the density predicates of a pattern graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityReport {
    pub m2: Rat,
    pub m2_witness: Vec<u32>,
    pub m: Rat,
    pub strictly_2_balanced: bool,
    pub balance_violation: Option<Vec<u32>>,
    pub nearly_bipartite: bool,
}

impl DensityReport {
    pub fn m2_string(&self) -> String {
        rat_string(self.m2)
    }
}

pub fn density_report(h: &Graph) -> Result<DensityReport> {
    let (m2, m2_witness) = two_density(h)?;
    let balance = is_strictly_2_balanced(h)?;
    Ok(DensityReport {
        m2,
        m2_witness,
        m: max_density(h)?.0,
        strictly_2_balanced: balance.is_none(),
        balance_violation: balance,
        nearly_bipartite: h.is_nearly_bipartite(),
    })
}

const SUBSET_ENUM_LIMIT: u32 = 30;

/// The 2-density: max of `(e_F - 1)/(v_F - 2)` over subgraphs `F` with at
/// least three vertices, floored at 1/2. Also returns a maximising vertex
/// set (empty when the floor wins).
pub fn two_density(h: &Graph) -> Result<(Rat, Vec<u32>)> {
    if h.n() == 0 {
        return Err(Error::Empty);
    }
    if h.n() > SUBSET_ENUM_LIMIT {
        return Err(Error::BadParameter("two_density is exact-search only (max 30 vertices)"));
    }
    let mut best = rat(1, 2);
    let mut witness = Vec::new();
    // For a fixed vertex set the induced subgraph maximises the ratio.
    for_each_vertex_subset(h.n(), 3, &mut |w| {
        let edges = induced_edge_count(h, w);
        let r = rat(edges as i64 - 1, w.len() as i64 - 2);
        if r > best {
            best = r;
            witness = w.to_vec();
        }
    });
    Ok((best, witness))
}

/// `None` if every proper subgraph with at least three vertices has strictly
/// smaller 2-density, otherwise a violating vertex set.
pub fn is_strictly_2_balanced(h: &Graph) -> Result<Option<Vec<u32>>> {
    if h.n() == 0 {
        return Err(Error::Empty);
    }
    if h.n() > SUBSET_ENUM_LIMIT {
        return Err(Error::BadParameter(
            "is_strictly_2_balanced is exact-search only (max 30 vertices)",
        ));
    }
    let (m2, _) = two_density(h)?;
    let mut violation: Option<Vec<u32>> = None;
    for_each_vertex_subset(h.n(), 3, &mut |w| {
        if violation.is_some() {
            return;
        }
        // On the full vertex set only proper subgraphs count, so the best
        // proper choice drops one edge.
        let edges = induced_edge_count(h, w);
        let e = if w.len() as u32 == h.n() { edges.saturating_sub(1) } else { edges };
        let r = rat(e as i64 - 1, w.len() as i64 - 2);
        if r >= m2 {
            violation = Some(w.to_vec());
        }
    });
    Ok(violation)
}

/// Maximum subgraph density `max e_F / v_F` over nonempty subgraphs, with a
/// maximising vertex set. Exact: subset enumeration up to 20 vertices, the
/// standard flow reduction beyond that.
pub fn max_density(g: &Graph) -> Result<(Rat, Vec<u32>)> {
    if g.n() == 0 {
        return Err(Error::Empty);
    }
    if g.edge_count() == 0 {
        return Ok((Rat::zero(), vec![0]));
    }
    if g.n() <= 20 {
        let mut best = Rat::zero();
        let mut witness = vec![0u32];
        for_each_vertex_subset(g.n(), 1, &mut |w| {
            let r = rat(induced_edge_count(g, w) as i64, w.len() as i64);
            if r > best {
                best = r;
                witness = w.to_vec();
            }
        });
        Ok((best, witness))
    } else {
        max_density_flow(g)
    }
}

/// Goldberg's reduction: `max e(S)/|S| > a/b` iff the min cut of the
/// auxiliary network is below `m * b`. Binary search over the finite set of
/// candidate densities keeps everything exact.
fn max_density_flow(g: &Graph) -> Result<(Rat, Vec<u32>)> {
    let n = g.n() as usize;
    let m = g.edge_count();
    let mut candidates: Vec<Rat> = Vec::new();
    for v in 1..=n as i64 {
        for e in 0..=m as i64 {
            candidates.push(rat(e, v));
        }
    }
    candidates.sort_unstable();
    candidates.dedup();
    // Invariant: density > candidates[lo] is achievable, > candidates[hi] is not.
    let mut lo = 0usize;
    let mut hi = candidates.len() - 1;
    debug_assert!(candidates[lo].is_zero());
    if exceeds_density(g, candidates[hi]).is_some() {
        return Err(Error::BadParameter("density search space exhausted"));
    }
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if exceeds_density(g, candidates[mid]).is_some() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // The maximum equals candidates[hi]; the cut at candidates[lo] witnesses it.
    let witness = exceeds_density(g, candidates[lo]).expect("achievable by invariant");
    let value = rat(induced_edge_count(g, &witness) as i64, witness.len() as i64);
    debug_assert_eq!(value, candidates[hi]);
    Ok((value, witness))
}

/// If some nonempty `S` has `e(S)/|S| > guess`, returns one such `S`.
fn exceeds_density(g: &Graph, guess: Rat) -> Option<Vec<u32>> {
    let n = g.n() as usize;
    let m = g.edge_count();
    let (a, b) = (*guess.numer(), *guess.denom());
    // Nodes: 0 = source, 1 = sink, 2.. vertices, 2+n.. edge nodes.
    let mut net = FlowNetwork::new(2 + n + m);
    let inf = i64::MAX / 4;
    for v in 0..n {
        net.add_arc(2 + v, 1, a);
    }
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        net.add_arc(0, 2 + n + i, b);
        net.add_arc(2 + n + i, 2 + u as usize, inf);
        net.add_arc(2 + n + i, 2 + v as usize, inf);
    }
    let cut = net.max_flow(0, 1);
    if cut >= m as i64 * b {
        return None;
    }
    let side = net.source_side(0);
    let s: Vec<u32> = (0..n).filter(|&v| side[2 + v]).map(|v| v as u32).collect();
    debug_assert!(!s.is_empty());
    Some(s)
}

/// For strictly 2-balanced `h`, checks `m2(h) * |W| < e_h - e(h - W)` for
/// every `W` with `1 <= |W| <= v_h - 3`. Returns the first violating `W`,
/// expected never to exist.
pub fn helpful_lemma_check(h: &Graph) -> Result<Option<Vec<u32>>> {
    if is_strictly_2_balanced(h)?.is_some() {
        return Err(Error::BadParameter("helpful_lemma_check needs a strictly 2-balanced graph"));
    }
    let (m2, _) = two_density(h)?;
    let v = h.n() as i64;
    let mut violation = None;
    for_each_vertex_subset(h.n(), 1, &mut |w| {
        if violation.is_some() || w.len() as i64 > v - 3 {
            return;
        }
        let rest: Vec<u32> = (0..h.n()).filter(|x| !w.contains(x)).collect();
        let incident = h.edge_count() - induced_edge_count(h, &rest);
        if m2 * rat(w.len() as i64, 1) >= rat(incident as i64, 1) {
            violation = Some(w.to_vec());
        }
    });
    Ok(violation)
}

fn induced_edge_count(g: &Graph, w: &[u32]) -> usize {
    if g.n() <= 64 {
        let mut inside = 0u64;
        for &v in w {
            inside |= 1 << v;
        }
        g.edges()
            .iter()
            .filter(|&&(u, v)| inside >> u & 1 == 1 && inside >> v & 1 == 1)
            .count()
    } else {
        let mut mask = vec![false; g.n() as usize];
        for &v in w {
            mask[v as usize] = true;
        }
        g.edges()
            .iter()
            .filter(|&&(u, v)| mask[u as usize] && mask[v as usize])
            .count()
    }
}

/// Calls `f` on every subset of `0..n` with at least `min_size` elements.
fn for_each_vertex_subset(n: u32, min_size: usize, f: &mut dyn FnMut(&[u32])) {
    let total = 1u64 << n;
    let mut buf = Vec::with_capacity(n as usize);
    for bits in 1..total {
        if (bits.count_ones() as usize) < min_size {
            continue;
        }
        buf.clear();
        for v in 0..n {
            if bits >> v & 1 == 1 {
                buf.push(v);
            }
        }
        f(&buf);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_density_fixtures() {
        assert_eq!(two_density(&Graph::complete(3)).unwrap().0, rat(2, 1));
        assert_eq!(two_density(&Graph::cycle(4).unwrap()).unwrap().0, rat(3, 2));
        assert_eq!(two_density(&Graph::complete(4)).unwrap().0, rat(5, 2));
        assert_eq!(two_density(&Graph::complete(2)).unwrap().0, rat(1, 2));
        // Petersen: the whole graph maximises, (15 - 1)/(10 - 2).
        assert_eq!(two_density(&Graph::petersen()).unwrap().0, rat(7, 4));
    }

    #[test]
    fn two_density_witness_is_maximising() {
        let g = Graph::complete(4);
        let (value, w) = two_density(&g).unwrap();
        let sub = g.induced(&w).unwrap();
        assert_eq!(rat(sub.edge_count() as i64 - 1, sub.n() as i64 - 2), value);
    }

    #[test]
    fn max_density_fixtures() {
        assert_eq!(max_density(&Graph::complete_bipartite(3, 3)).unwrap().0, rat(3, 2));
        assert_eq!(max_density(&Graph::path(4)).unwrap().0, rat(3, 4));
        assert_eq!(max_density(&Graph::complete(5)).unwrap().0, rat(2, 1));
    }

    #[test]
    fn max_density_flow_agrees_with_enumeration() {
        // Force the flow path by inflating the vertex count past 20 with
        // isolated vertices; the maximiser is still inside the real graph.
        for g in [Graph::petersen(), Graph::complete(6), Graph::complete_bipartite(4, 3)] {
            let (want, _) = max_density(&g).unwrap();
            let big = Graph::new(25, g.edges()).unwrap();
            let (got, w) = max_density(&big).unwrap();
            assert_eq!(got, want);
            assert_eq!(rat(induced_edge_count(&big, &w) as i64, w.len() as i64), want);
        }
    }

    #[test]
    fn strictly_2_balanced_fixtures() {
        assert!(is_strictly_2_balanced(&Graph::complete(4)).unwrap().is_none());
        assert!(is_strictly_2_balanced(&Graph::cycle(5).unwrap()).unwrap().is_none());
        // K_4 plus a pendant edge: the violating subgraph is K_4 itself.
        let mut edges = Graph::complete(4).edges().to_vec();
        edges.push((0, 4));
        let g = Graph::new(5, &edges).unwrap();
        let violation = is_strictly_2_balanced(&g).unwrap().unwrap();
        assert_eq!(violation, vec![0, 1, 2, 3]);
    }

    #[test]
    fn helpful_lemma_fixtures() {
        // K_4: exhaustive over all admissible W.
        assert_eq!(helpful_lemma_check(&Graph::complete(4)).unwrap(), None);
        // K_3 is vacuously fine (no W with |W| <= v - 3 = 0).
        assert_eq!(helpful_lemma_check(&Graph::complete(3)).unwrap(), None);
        // C_5 singletons: degree 2 > m2 * 1 = 4/3.
        assert_eq!(helpful_lemma_check(&Graph::cycle(5).unwrap()).unwrap(), None);
        // Not applicable to non-strictly-2-balanced graphs.
        let mut edges = Graph::complete(4).edges().to_vec();
        edges.push((0, 4));
        assert!(helpful_lemma_check(&Graph::new(5, &edges).unwrap()).is_err());
    }

    #[test]
    fn report_shape() {
        let r = density_report(&Graph::cycle(4).unwrap()).unwrap();
        assert_eq!(r.m2_string(), "3/2");
        assert!(r.nearly_bipartite);
        assert!(r.strictly_2_balanced);
        assert_eq!(r.m, rat(1, 1));
    }
}
