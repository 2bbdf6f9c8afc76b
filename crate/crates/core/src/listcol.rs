//! Choosability from 2-element lists, decided exactly.
//!
//! The decision works on an abstract system: a ground set (hypergraph
//! vertices, or host-graph edges in the pattern variant) and a family of
//! constraint sets (hyperedges, or copies of the pattern). An assignment of
//! 2-lists defeats every choice function exactly when, after iteratively
//! playing unthreatened colours, what remains is a *fully threatened* core:
//! each colour class is a nonempty union of constraint sets and every
//! element of the core lies in exactly two classes. The search therefore
//! enumerates multisets of unions of constraint sets covering each covered
//! element exactly twice, and checks each induced assignment by complete
//! backtracking. Restricting to at most `max_classes` colours is lossless
//! for the vertex variant (lists over `[r]`) and justified by a size count
//! in the pattern variant (every class holds a whole copy).

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hypergraph::UniformHypergraph;

/// 2-element colour lists over the ground set, colours 1-based. Elements
/// untouched by the defeating core keep the default list `(1, 2)`.
pub type ListAssignment = Vec<(u32, u32)>;

/// Ground set plus constraint sets, both as bit masks (ground size <= 64).
#[derive(Debug, Clone)]
pub struct TwoListSystem {
    pub ground: usize,
    pub sets: Vec<u64>,
}

#[derive(Debug, Clone, Copy)]
pub struct FamilyLimits {
    /// Cap on the union-closure size.
    pub max_unions: usize,
    /// Cap on family-search nodes.
    pub max_nodes: u64,
}

impl Default for FamilyLimits {
    fn default() -> Self {
        FamilyLimits { max_unions: 1 << 16, max_nodes: 50_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Choosability {
    Choosable,
    NotChoosable {
        /// A defeating assignment (padded with `(1, 2)` off the core).
        lists: ListAssignment,
        /// The colour classes, as ground-set masks.
        family: Vec<u64>,
    },
    Inconclusive {
        reason: &'static str,
    },
}

impl Choosability {
    pub fn verdict(&self) -> Option<bool> {
        match self {
            Choosability::Choosable => Some(true),
            Choosability::NotChoosable { .. } => Some(false),
            Choosability::Inconclusive { .. } => None,
        }
    }
}

/// Decides 2-choosability of the system from lists over `max_classes`
/// colours.
pub fn two_choosable(sys: &TwoListSystem, max_classes: usize, limits: FamilyLimits) -> Choosability {
    if sys.ground > 64 {
        return Choosability::Inconclusive { reason: "ground set exceeds 64 elements" };
    }
    if max_classes < 2 || sys.sets.is_empty() {
        return Choosability::Choosable;
    }
    let unions = match union_closure(&sys.sets, limits.max_unions) {
        Some(u) => u,
        None => return Choosability::Inconclusive { reason: "union closure cap exceeded" },
    };
    let mut search = FamilySearch {
        sys,
        unions: &unions,
        max_classes,
        budget: limits.max_nodes,
        emitted: BTreeSet::new(),
        found: None,
    };
    let mut chosen = Vec::new();
    let exhausted = search.run(&mut chosen, 0, 0);
    match search.found {
        Some(family) => {
            let lists = family_lists(sys.ground, &family);
            Choosability::NotChoosable { lists, family }
        }
        None if exhausted => Choosability::Choosable,
        None => Choosability::Inconclusive { reason: "family search budget exceeded" },
    }
}

/// All distinct nonempty unions of the given sets, or `None` above the
/// cap. Closing under union with the generators alone already yields every
/// union of a subfamily.
fn union_closure(sets: &[u64], cap: usize) -> Option<Vec<u64>> {
    let generators: Vec<u64> = {
        let dedup: BTreeSet<u64> = sets.iter().copied().filter(|&m| m != 0).collect();
        dedup.into_iter().collect()
    };
    let mut closure: BTreeSet<u64> = generators.iter().copied().collect();
    let mut frontier: Vec<u64> = generators.clone();
    while let Some(m) = frontier.pop() {
        for &g in &generators {
            let u = m | g;
            if u != m && closure.insert(u) {
                if closure.len() > cap {
                    return None;
                }
                frontier.push(u);
            }
        }
    }
    Some(closure.into_iter().collect())
}

struct FamilySearch<'a> {
    sys: &'a TwoListSystem,
    unions: &'a [u64],
    max_classes: usize,
    budget: u64,
    emitted: BTreeSet<Vec<u64>>,
    found: Option<Vec<u64>>,
}

impl FamilySearch<'_> {
    /// Depth-first over families; `count1`/`count2` are the masks of
    /// elements covered once/twice. Returns false when the budget ran out.
    fn run(&mut self, chosen: &mut Vec<usize>, count1: u64, count2: u64) -> bool {
        if self.found.is_some() {
            return true;
        }
        if self.budget == 0 {
            return false;
        }
        self.budget -= 1;
        if count1 == 0 {
            if !chosen.is_empty() {
                let mut key: Vec<u64> = chosen.iter().map(|&i| self.unions[i]).collect();
                key.sort_unstable();
                if self.emitted.insert(key.clone()) && defeated(self.sys, &key) {
                    self.found = Some(key);
                }
            }
            if !chosen.is_empty() {
                // A closed family is maximal for its connected core; larger
                // families split into independent cores, so stop here.
                return true;
            }
            // Initial pick.
            for i in 0..self.unions.len() {
                chosen.push(i);
                let ok = self.run(chosen, self.unions[i], 0);
                chosen.pop();
                if !ok {
                    return false;
                }
                if self.found.is_some() {
                    return true;
                }
            }
            return true;
        }
        if chosen.len() == self.max_classes {
            return true;
        }
        let pivot = 1u64 << count1.trailing_zeros();
        for i in 0..self.unions.len() {
            let m = self.unions[i];
            if m & pivot == 0 || m & count2 != 0 {
                continue;
            }
            chosen.push(i);
            let ok = self.run(chosen, count1 ^ m, count2 | (count1 & m));
            chosen.pop();
            if !ok {
                return false;
            }
            if self.found.is_some() {
                return true;
            }
        }
        true
    }
}

/// Lists induced by a family: the two covering class positions per element.
fn family_lists(ground: usize, family: &[u64]) -> ListAssignment {
    let mut lists = vec![(1u32, 2u32); ground];
    for (e, slot) in lists.iter_mut().enumerate() {
        let covering: Vec<u32> = family
            .iter()
            .enumerate()
            .filter(|(_, m)| *m >> e & 1 == 1)
            .map(|(c, _)| c as u32 + 1)
            .collect();
        if covering.len() == 2 {
            *slot = (covering[0], covering[1]);
        } else {
            debug_assert!(covering.is_empty());
        }
    }
    lists
}

/// True when no choice from the family's lists avoids monochromatic
/// constraint sets (complete backtracking over covered elements).
fn defeated(sys: &TwoListSystem, family: &[u64]) -> bool {
    // Constraints: (set, class) with the set inside the class.
    let mut constraints: Vec<(u64, usize)> = Vec::new();
    for (c, &class) in family.iter().enumerate() {
        for &s in &sys.sets {
            if s != 0 && s & !class == 0 {
                constraints.push((s, c));
            }
        }
    }
    let covered: Vec<usize> = (0..sys.ground)
        .filter(|&e| family.iter().any(|m| m >> e & 1 == 1))
        .collect();
    // options[e] = the class positions covering e (possibly equal masks,
    // distinct positions).
    let mut options = vec![[usize::MAX; 2]; sys.ground];
    for &e in &covered {
        let mut it = family
            .iter()
            .enumerate()
            .filter(|(_, m)| *m >> e & 1 == 1)
            .map(|(c, _)| c);
        options[e][0] = it.next().unwrap();
        options[e][1] = it.next().unwrap();
    }
    let mut choice = vec![usize::MAX; sys.ground];
    !satisfiable(&covered, &options, &constraints, &mut choice, 0)
}

fn satisfiable(
    covered: &[usize],
    options: &[[usize; 2]],
    constraints: &[(u64, usize)],
    choice: &mut Vec<usize>,
    at: usize,
) -> bool {
    if at == covered.len() {
        return true;
    }
    let e = covered[at];
    'opts: for pick in 0..2 {
        let c = options[e][pick];
        if pick == 1 && c == options[e][0] {
            break;
        }
        choice[e] = c;
        // A constraint fails only once all its elements chose its class.
        for &(set, class) in constraints {
            if class != c || set >> e & 1 == 0 {
                continue;
            }
            let mut all_same = true;
            let mut bits = set;
            while bits != 0 {
                let x = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if choice[x] != class {
                    all_same = false;
                    break;
                }
            }
            if all_same {
                choice[e] = usize::MAX;
                continue 'opts;
            }
        }
        if satisfiable(covered, options, constraints, choice, at + 1) {
            choice[e] = usize::MAX;
            return true;
        }
        choice[e] = usize::MAX;
    }
    false
}

/// 2-choosability of a hypergraph from lists over `[r]`.
pub fn is_2_choosable(h: &UniformHypergraph, r: u32, limits: FamilyLimits) -> Result<Choosability> {
    if r < 2 {
        return Err(Error::BadParameter("r must be at least 2"));
    }
    if h.n() > 64 {
        return Ok(Choosability::Inconclusive { reason: "vertex count exceeds 64" });
    }
    let sets: Vec<u64> = h
        .edges()
        .iter()
        .map(|e| e.iter().fold(0u64, |m, &v| m | 1 << v))
        .collect();
    Ok(two_choosable(
        &TwoListSystem { ground: h.n() as usize, sets },
        r as usize,
        limits,
    ))
}

/// A non-2-choosable vertex set found by [`find_non_choosable_subsets`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonChoosableSet {
    pub vertices: Vec<u32>,
    pub minimal: bool,
}

/// All connected `W` with `|W| <= k` whose induced subhypergraph is not
/// 2-choosable from `[r]`; minimal ones (under vertex deletion) flagged.
pub fn find_non_choosable_subsets(
    h: &UniformHypergraph,
    k: usize,
    r: u32,
    limits: FamilyLimits,
) -> Result<(Vec<NonChoosableSet>, usize)> {
    if r < 2 {
        return Err(Error::BadParameter("r must be at least 2"));
    }
    let mut bad: Vec<Vec<u32>> = Vec::new();
    let mut inconclusive = 0usize;
    for_each_connected_subset(h, k, &mut |w| {
        if !h.is_connected_subset(w) {
            return true;
        }
        let (sub, _) = h.induced(w).expect("subset vertices are in range");
        match is_2_choosable(&sub, r, limits).expect("r checked above") {
            Choosability::NotChoosable { .. } => bad.push(w.to_vec()),
            Choosability::Inconclusive { .. } => inconclusive += 1,
            Choosability::Choosable => {}
        }
        true
    });
    bad.sort_unstable();
    let out = bad
        .iter()
        .map(|w| {
            let minimal = w.iter().all(|skip| {
                let rest: Vec<u32> = w.iter().copied().filter(|v| v != skip).collect();
                let (sub, _) = h.induced(&rest).expect("subset vertices are in range");
                !matches!(
                    is_2_choosable(&sub, r, limits),
                    Ok(Choosability::NotChoosable { .. })
                )
            });
            NonChoosableSet { vertices: w.clone(), minimal }
        })
        .collect();
    Ok((out, inconclusive))
}

/// Enumerates, exactly once each, every vertex subset of size at most
/// `max_size` that is connected under shared-edge adjacency of vertex
/// pairs. This is a superset of the sets whose *induced* subhypergraph is
/// connected; callers wanting the latter filter with
/// [`UniformHypergraph::is_connected_subset`]. The callback returns false
/// to abort; the function reports whether enumeration completed.
pub fn for_each_connected_subset(
    h: &UniformHypergraph,
    max_size: usize,
    f: &mut dyn FnMut(&[u32]) -> bool,
) -> bool {
    let n = h.n() as usize;
    if n > 64 {
        return false;
    }
    // Vertex adjacency through shared edges.
    let mut adj = vec![0u64; n];
    for e in h.edges() {
        for &u in e {
            for &v in e {
                if u != v {
                    adj[u as usize] |= 1 << v;
                }
            }
        }
    }
    let mut members: Vec<u32> = Vec::new();
    for start in 0..n {
        members.push(start as u32);
        if !grow(
            &adj,
            start,
            1 << start,
            adj[start] & !((1u64 << (start + 1)) - 1),
            1 << start,
            max_size,
            &mut members,
            f,
        ) {
            return false;
        }
        members.pop();
    }
    true
}

#[allow(clippy::too_many_arguments)]
fn grow(
    adj: &[u64],
    start: usize,
    set: u64,
    frontier: u64,
    banned: u64,
    max_size: usize,
    members: &mut Vec<u32>,
    f: &mut dyn FnMut(&[u32]) -> bool,
) -> bool {
    if !f(members) {
        return false;
    }
    if members.len() == max_size {
        return true;
    }
    let mut fr = frontier;
    let mut taken_banned = banned;
    while fr != 0 {
        let v = fr.trailing_zeros() as usize;
        fr &= fr - 1;
        taken_banned |= 1 << v;
        let new_frontier =
            (fr | (adj[v] & !taken_banned & !((1u64 << (start + 1)) - 1))) & !(set | 1 << v);
        members.push(v as u32);
        if !grow(adj, start, set | 1 << v, new_frontier, taken_banned, max_size, members, f) {
            return false;
        }
        members.pop();
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ListRamseyVerdict {
    True,
    False,
    Inconclusive,
}

/// Whether some 2-list assignment forces a monochromatic Schur triple on
/// every list colouring of `y` inside Z_N.
pub fn is_list_schur(y: &[u32], n: u32, limits: FamilyLimits) -> Result<ListRamseyVerdict> {
    let h = crate::families::build_schur_hypergraph(n, false)?;
    list_ramsey_on(&h, y, limits)
}

/// The k-AP analogue of [`is_list_schur`].
pub fn is_list_vdw(y: &[u32], n: u32, k: usize, limits: FamilyLimits) -> Result<ListRamseyVerdict> {
    let h = crate::families::build_kap_hypergraph(k, n)?;
    list_ramsey_on(&h, y, limits)
}

fn list_ramsey_on(
    h: &UniformHypergraph,
    y: &[u32],
    limits: FamilyLimits,
) -> Result<ListRamseyVerdict> {
    if y.is_empty() {
        return Ok(ListRamseyVerdict::False);
    }
    let (sub, _) = h.induced(y)?;
    // List-Ramsey is the negation of 2-choosability; lists may use any
    // colours, and four per component already saturate the 2-list structure.
    match is_2_choosable(&sub, 4, limits)? {
        Choosability::Choosable => Ok(ListRamseyVerdict::False),
        Choosability::NotChoosable { .. } => Ok(ListRamseyVerdict::True),
        Choosability::Inconclusive { .. } => Ok(ListRamseyVerdict::Inconclusive),
    }
}

/// Checks a defeating assignment directly: exhaustive over all choice
/// functions (test oracle; exponential).
pub fn assignment_defeats(h: &UniformHypergraph, lists: &ListAssignment) -> bool {
    let n = h.n() as usize;
    assert_eq!(lists.len(), n);
    let total = 1u64 << n;
    'choices: for bits in 0..total {
        let colouring: Vec<u32> = (0..n)
            .map(|v| if bits >> v & 1 == 0 { lists[v].0 } else { lists[v].1 })
            .collect();
        for e in h.edges() {
            let first = colouring[e[0] as usize];
            if e.iter().all(|&v| colouring[v as usize] == first) {
                continue 'choices;
            }
        }
        return false;
    }
    true
}
