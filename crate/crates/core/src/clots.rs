//! Nuclei, clots and the obstruction report for minimally non-2-choosable
//! sets.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hypergraph::{for_each_subset, UniformHypergraph};
use crate::listcol::{is_2_choosable, Choosability, FamilyLimits};
use crate::reveal::{reveal_layers, RevealTrace};

/// A clot: a nucleus of `2s - 3` vertices whose every `(s-1)`-subset
/// extends to at least two edges via distinct outside vertices. Exactly the
/// two smallest completions per subset are stored; `total` records how many
/// exist inside the searched set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clot {
    pub nucleus: Vec<u32>,
    pub completions: Vec<CompletionPair>,
    pub support: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletionPair {
    pub subset: Vec<u32>,
    pub vertices: [u32; 2],
    pub total: usize,
}

/// All clots whose support lies inside `w`.
pub fn find_clots(h: &UniformHypergraph, w: &[u32]) -> Result<Vec<Clot>> {
    let s = h.s();
    if s < 3 {
        return Err(Error::BadParameter("clots need uniformity at least 3"));
    }
    let mut inside: Vec<u32> = w.to_vec();
    inside.sort_unstable();
    inside.dedup();
    if let Some(&v) = inside.iter().find(|&&v| v >= h.n()) {
        return Err(Error::VertexOutOfRange { vertex: v, n: h.n() });
    }
    // Completions of every (s-1)-set, from the edges inside w.
    let mut completed: BTreeMap<Vec<u32>, Vec<u32>> = BTreeMap::new();
    for e in h.edges() {
        if !e.iter().all(|v| inside.binary_search(v).is_ok()) {
            continue;
        }
        for (i, &v) in e.iter().enumerate() {
            let mut sub = e.clone();
            sub.remove(i);
            completed.entry(sub).or_default().push(v);
        }
    }
    let nucleus_size = 2 * s - 3;
    let mut clots = Vec::new();
    for_each_subset(&inside, nucleus_size, &mut |candidate| {
        let mut completions = Vec::new();
        let mut good = true;
        for_each_subset(candidate, s - 1, &mut |sub| {
            if !good {
                return;
            }
            let outside: Vec<u32> = completed
                .get(sub)
                .map(|vs| {
                    let mut vs: Vec<u32> = vs
                        .iter()
                        .copied()
                        .filter(|v| candidate.binary_search(v).is_err())
                        .collect();
                    vs.sort_unstable();
                    vs.dedup();
                    vs
                })
                .unwrap_or_default();
            if outside.len() < 2 {
                good = false;
                return;
            }
            completions.push(CompletionPair {
                subset: sub.to_vec(),
                vertices: [outside[0], outside[1]],
                total: outside.len(),
            });
        });
        if good {
            let mut support: Vec<u32> = candidate.to_vec();
            for c in &completions {
                support.extend_from_slice(&c.vertices);
            }
            support.sort_unstable();
            support.dedup();
            clots.push(Clot { nucleus: candidate.to_vec(), completions, support });
        }
    });
    Ok(clots)
}

/// How (or whether) a set satisfies the obstruction disjunction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObstructionReport {
    /// The set is not minimally non-2-choosable.
    NotApplicable { reason: &'static str },
    /// A choosability check hit its caps.
    Inconclusive { reason: &'static str },
    /// Minimally non-2-choosable with the predicted structure.
    Holds {
        degenerate_elements: usize,
        depth: usize,
        clot: Option<Clot>,
    },
    /// Minimally non-2-choosable yet neither obstruction found: a bug
    /// indicator, surfaced loudly.
    Violated { degenerate_elements: usize, depth: usize },
}

impl ObstructionReport {
    pub fn is_violation(&self) -> bool {
        matches!(self, ObstructionReport::Violated { .. })
    }
}

/// Verifies that `set` is minimally non-2-choosable (itself bad, every
/// one-vertex-deleted subset fine) and reports whether it carries at least
/// `s - 1` degenerate elements or a clot.
pub fn check_obstruction(
    h: &UniformHypergraph,
    set: &[u32],
    r: u32,
    limits: FamilyLimits,
) -> Result<ObstructionReport> {
    let mut s: Vec<u32> = set.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.is_empty() {
        return Err(Error::Empty);
    }
    if !h.is_connected_subset(&s) {
        return Ok(ObstructionReport::NotApplicable { reason: "set is not connected" });
    }
    let (sub, _) = h.induced(&s)?;
    match is_2_choosable(&sub, r, limits)? {
        Choosability::Choosable => {
            return Ok(ObstructionReport::NotApplicable { reason: "set is 2-choosable" })
        }
        Choosability::Inconclusive { reason } => {
            return Ok(ObstructionReport::Inconclusive { reason })
        }
        Choosability::NotChoosable { .. } => {}
    }
    for skip in &s {
        let rest: Vec<u32> = s.iter().copied().filter(|v| v != skip).collect();
        let (del, _) = h.induced(&rest)?;
        match is_2_choosable(&del, r, limits)? {
            Choosability::NotChoosable { .. } => {
                return Ok(ObstructionReport::NotApplicable {
                    reason: "set is not minimal",
                })
            }
            Choosability::Inconclusive { reason } => {
                return Ok(ObstructionReport::Inconclusive { reason })
            }
            Choosability::Choosable => {}
        }
    }
    let trace: RevealTrace = reveal_layers(h, &s)?;
    let degenerate_elements = trace.degenerate.len();
    let depth = trace.depth();
    if degenerate_elements >= h.s() - 1 {
        return Ok(ObstructionReport::Holds { degenerate_elements, depth, clot: None });
    }
    let clots = find_clots(h, &s)?;
    match clots.into_iter().next() {
        Some(clot) => Ok(ObstructionReport::Holds {
            degenerate_elements,
            depth,
            clot: Some(clot),
        }),
        None => Ok(ObstructionReport::Violated { degenerate_elements, depth }),
    }
}
