//! Collapsibility predicates.
//!
//! A graph is collapsible if for every edge `e` and endpoint `a` of `e`
//! there are an edge `f` and a homomorphism `H - f -> H - e` sending both
//! endpoints of `f` to `a`. Semi-collapsibility drops the choice of the
//! target vertex.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hom::{find_homomorphism, ColouredPattern};

/// A witness for one `(e, a)` collapsibility subproblem: the folded edge `f`
/// and the homomorphism as a vertex map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollapseWitness {
    pub removed_edge: (u32, u32),
    pub endpoint: u32,
    pub folded_edge: (u32, u32),
    pub map: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Collapsibility {
    /// One witness per `(edge, endpoint)` pair, in edge order.
    Collapsible(Vec<CollapseWitness>),
    /// An exhaustively certified failing pair.
    NotCollapsible { edge: (u32, u32), endpoint: u32 },
}

impl Collapsibility {
    pub fn holds(&self) -> bool {
        matches!(self, Collapsibility::Collapsible(_))
    }
}

/// Exact decision over all `(e, a, f)` triples.
pub fn is_collapsible(h: &Graph) -> Result<Collapsibility> {
    if h.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let mut witnesses = Vec::new();
    for &e in h.edges() {
        let target = ColouredPattern::monochromatic(&h.without_edge(e.0, e.1), 1);
        for a in [e.0, e.1] {
            match fold_into(h, &target, Some(a)) {
                Some(w) => witnesses.push(CollapseWitness {
                    removed_edge: e,
                    endpoint: a,
                    folded_edge: w.0,
                    map: w.1,
                }),
                None => {
                    return Ok(Collapsibility::NotCollapsible { edge: e, endpoint: a });
                }
            }
        }
    }
    Ok(Collapsibility::Collapsible(witnesses))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SemiCollapsibility {
    SemiCollapsible(Vec<CollapseWitness>),
    NotSemiCollapsible { edge: (u32, u32) },
}

impl SemiCollapsibility {
    pub fn holds(&self) -> bool {
        matches!(self, SemiCollapsibility::SemiCollapsible(_))
    }
}

/// Like [`is_collapsible`] but the identified endpoint image is free.
pub fn is_semi_collapsible(h: &Graph) -> Result<SemiCollapsibility> {
    if h.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let mut witnesses = Vec::new();
    for &e in h.edges() {
        let target = ColouredPattern::monochromatic(&h.without_edge(e.0, e.1), 1);
        let mut hit = None;
        for a in 0..h.n() {
            if let Some(w) = fold_into(h, &target, Some(a)) {
                hit = Some(CollapseWitness {
                    removed_edge: e,
                    endpoint: a,
                    folded_edge: w.0,
                    map: w.1,
                });
                break;
            }
        }
        match hit {
            Some(w) => witnesses.push(w),
            None => return Ok(SemiCollapsibility::NotSemiCollapsible { edge: e }),
        }
    }
    Ok(SemiCollapsibility::SemiCollapsible(witnesses))
}

/// Searches all edges `f` for a homomorphism `h - f -> target` mapping both
/// endpoints of `f` to `a`.
fn fold_into(h: &Graph, target: &ColouredPattern, a: Option<u32>) -> Option<((u32, u32), Vec<u32>)> {
    for &f in h.edges() {
        let source = ColouredPattern::monochromatic(&h.without_edge(f.0, f.1), 1);
        let pins: Vec<(u32, u32)> = match a {
            Some(a) => alloc::vec![(f.0, a), (f.1, a)],
            None => alloc::vec![],
        };
        if let Some(map) = find_homomorphism(&source, target, &pins) {
            return Some((f, map));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::verify_homomorphism;

    fn check_witnesses(h: &Graph, ws: &[CollapseWitness]) {
        assert_eq!(ws.len(), 2 * h.edge_count());
        for w in ws {
            let source = ColouredPattern::monochromatic(
                &h.without_edge(w.folded_edge.0, w.folded_edge.1),
                1,
            );
            let target = ColouredPattern::monochromatic(
                &h.without_edge(w.removed_edge.0, w.removed_edge.1),
                1,
            );
            assert!(verify_homomorphism(&source, &target, &w.map));
            assert_eq!(w.map[w.folded_edge.0 as usize], w.endpoint);
            assert_eq!(w.map[w.folded_edge.1 as usize], w.endpoint);
        }
    }

    #[test]
    fn cliques_are_collapsible() {
        for k in [3u32, 4, 5] {
            match is_collapsible(&Graph::complete(k)).unwrap() {
                Collapsibility::Collapsible(ws) => check_witnesses(&Graph::complete(k), &ws),
                other => panic!("K_{k} should be collapsible: {other:?}"),
            }
        }
    }

    #[test]
    fn odd_cycles_are_collapsible() {
        for k in [5u32, 7] {
            assert!(is_collapsible(&Graph::cycle(k).unwrap()).unwrap().holds());
        }
    }

    #[test]
    fn petersen_is_not_collapsible() {
        let p = Graph::petersen();
        assert!(!is_collapsible(&p).unwrap().holds());
        assert!(!is_semi_collapsible(&p).unwrap().holds());
    }

    #[test]
    fn k3_semi_collapsible() {
        assert!(is_semi_collapsible(&Graph::complete(3)).unwrap().holds());
    }

    #[test]
    fn collapsible_implies_semi_collapsible() {
        for g in [
            Graph::complete(4),
            Graph::cycle(5).unwrap(),
            Graph::cycle(7).unwrap(),
            Graph::complete_bipartite(2, 3),
        ] {
            if is_collapsible(&g).unwrap().holds() {
                assert!(is_semi_collapsible(&g).unwrap().holds());
            }
        }
    }
}
