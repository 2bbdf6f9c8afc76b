//! Edge-coloured patterns and complete homomorphism search.
//!
//! A homomorphism maps every coloured edge of the pattern onto a
//! same-coloured edge of the target. The searcher is complete and
//! deterministic: most-constrained-vertex-first with neighbour-domain
//! pruning, ties broken on vertex index.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// An edge-coloured graph with optional distinguished vertices (star
/// centres, constellation bases).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ColouredPattern {
    n: u32,
    edges: Vec<(u32, u32, u32)>,
    distinguished: Vec<u32>,
}

impl ColouredPattern {
    pub fn new(n: u32, edges: &[(u32, u32, u32)]) -> Result<Self> {
        let mut canon: Vec<(u32, u32, u32)> = Vec::with_capacity(edges.len());
        let mut seen = BTreeSet::new();
        for &(u, v, c) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(Error::BadParameter("loops are not allowed"));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::BadParameter("each edge carries exactly one colour"));
            }
            canon.push((u.min(v), u.max(v), c));
        }
        canon.sort_unstable();
        Ok(ColouredPattern { n, edges: canon, distinguished: Vec::new() })
    }

    /// Every edge of `g` in colour `colour`.
    pub fn monochromatic(g: &Graph, colour: u32) -> Self {
        let edges: Vec<_> = g.edges().iter().map(|&(u, v)| (u, v, colour)).collect();
        ColouredPattern { n: g.n(), edges, distinguished: Vec::new() }
    }

    pub fn with_distinguished(mut self, distinguished: Vec<u32>) -> Self {
        self.distinguished = distinguished;
        self
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn edges(&self) -> &[(u32, u32, u32)] {
        &self.edges
    }

    pub fn distinguished(&self) -> &[u32] {
        &self.distinguished
    }

    pub fn colours(&self) -> BTreeSet<u32> {
        self.edges.iter().map(|&(_, _, c)| c).collect()
    }

    fn adjacency(&self) -> Vec<Vec<(u32, u32)>> {
        let mut adj = vec![Vec::new(); self.n as usize];
        for &(u, v, c) in &self.edges {
            adj[u as usize].push((v, c));
            adj[v as usize].push((u, c));
        }
        for row in adj.iter_mut() {
            row.sort_unstable();
        }
        adj
    }

    pub fn has_edge(&self, u: u32, v: u32, c: u32) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v), c)).is_ok()
    }
}

/// A complete search for a homomorphism from `f` to `g` extending `pins`
/// (pairs `(pattern vertex, target vertex)`). Returns the total map when one
/// exists; `None` is a certificate that none does.
pub fn find_homomorphism(
    f: &ColouredPattern,
    g: &ColouredPattern,
    pins: &[(u32, u32)],
) -> Option<Vec<u32>> {
    if g.n == 0 {
        return if f.n == 0 { Some(Vec::new()) } else { None };
    }
    let f_adj = f.adjacency();
    let g_adj = g.adjacency();
    let mut assignment: Vec<Option<u32>> = vec![None; f.n as usize];
    for &(fv, gv) in pins {
        if fv >= f.n || gv >= g.n {
            return None;
        }
        match assignment[fv as usize] {
            Some(prev) if prev != gv => return None,
            _ => assignment[fv as usize] = Some(gv),
        }
    }
    // Pinned edges must already be colour-compatible.
    for &(u, v, c) in &f.edges {
        if let (Some(a), Some(b)) = (assignment[u as usize], assignment[v as usize]) {
            if !g.has_edge(a, b, c) {
                return None;
            }
        }
    }
    if extend(&f_adj, g, &g_adj, &mut assignment) {
        Some(assignment.into_iter().map(|a| a.unwrap()).collect())
    } else {
        None
    }
}

fn extend(
    f_adj: &[Vec<(u32, u32)>],
    g: &ColouredPattern,
    g_adj: &[Vec<(u32, u32)>],
    assignment: &mut Vec<Option<u32>>,
) -> bool {
    // Most assigned neighbours first; ties on vertex index.
    let mut next: Option<(usize, usize)> = None;
    for v in 0..assignment.len() {
        if assignment[v].is_some() {
            continue;
        }
        let assigned = f_adj[v]
            .iter()
            .filter(|&&(w, _)| assignment[w as usize].is_some())
            .count();
        match next {
            Some((_, best)) if assigned <= best => {}
            _ => next = Some((v, assigned)),
        }
    }
    let Some((v, _)) = next else {
        return true;
    };
    let mut domain: Option<Vec<u32>> = None;
    for &(w, c) in &f_adj[v] {
        if let Some(img) = assignment[w as usize] {
            let nbrs: Vec<u32> = g_adj[img as usize]
                .iter()
                .filter(|&&(_, gc)| gc == c)
                .map(|&(gn, _)| gn)
                .collect();
            domain = Some(match domain {
                None => nbrs,
                Some(old) => old.into_iter().filter(|x| nbrs.contains(x)).collect(),
            });
            if domain.as_ref().unwrap().is_empty() {
                return false;
            }
        }
    }
    let candidates = domain.unwrap_or_else(|| (0..g.n).collect());
    for cand in candidates {
        assignment[v] = Some(cand);
        if extend(f_adj, g, g_adj, assignment) {
            return true;
        }
        assignment[v] = None;
    }
    false
}

/// Exact number of homomorphisms from `f` to `g`.
///
/// Vertices of `f` with identical coloured neighbourhoods (twins) are
/// grouped, the search runs over image sets per group, and each complete
/// choice contributes a product of surjection counts. This makes counting
/// from blowups cheap while staying exact.
pub fn hom_count(f: &ColouredPattern, g: &ColouredPattern) -> Result<BigUint> {
    if g.n > 32 {
        return Err(Error::BadParameter("hom_count target limited to 32 vertices"));
    }
    if f.n == 0 {
        return Ok(BigUint::one());
    }
    if g.n == 0 {
        return Ok(BigUint::zero());
    }
    let f_adj = f.adjacency();
    // Twin classes: same coloured neighbourhood (adjacent vertices would
    // list each other, so members are automatically non-adjacent).
    let mut class_of = vec![usize::MAX; f.n as usize];
    let mut reps: Vec<u32> = Vec::new();
    let mut sizes: Vec<u64> = Vec::new();
    for v in 0..f.n {
        let mut found = None;
        for (i, &r) in reps.iter().enumerate() {
            if f_adj[v as usize] == f_adj[r as usize] {
                found = Some(i);
                break;
            }
        }
        match found {
            Some(i) => {
                class_of[v as usize] = i;
                sizes[i] += 1;
            }
            None => {
                class_of[v as usize] = reps.len();
                reps.push(v);
                sizes.push(1);
            }
        }
    }
    let k = reps.len();
    // Class graph: edge (a, b) with colour c when members are adjacent.
    let mut class_edges: BTreeSet<(usize, usize, u32)> = BTreeSet::new();
    for &(u, v, c) in &f.edges {
        let (a, b) = (class_of[u as usize], class_of[v as usize]);
        class_edges.insert((a.min(b), a.max(b), c));
    }
    let mut class_adj: Vec<Vec<(usize, u32)>> = vec![Vec::new(); k];
    for &(a, b, c) in &class_edges {
        class_adj[a].push((b, c));
        class_adj[b].push((a, c));
    }
    // Colour-c adjacency masks of the target.
    let mut g_masks: BTreeMap<u32, Vec<u64>> = BTreeMap::new();
    for &(u, v, c) in &g.edges {
        let m = g_masks.entry(c).or_insert_with(|| vec![0u64; g.n as usize]);
        m[u as usize] |= 1 << v;
        m[v as usize] |= 1 << u;
    }
    let max_m = *sizes.iter().max().unwrap() as usize;
    let surj = surjection_table(max_m, g.n as usize);

    // Connected components of the class graph multiply.
    let mut seen = vec![false; k];
    let mut total = BigUint::one();
    for start in 0..k {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < comp.len() {
            let a = comp[i];
            i += 1;
            for &(b, _) in &class_adj[a] {
                if !seen[b] {
                    seen[b] = true;
                    comp.push(b);
                }
            }
        }
        if comp.len() == 1 && class_adj[comp[0]].is_empty() {
            // Isolated class: every function works.
            let m = sizes[comp[0]] as u32;
            total *= BigUint::from(g.n as u64).pow(m);
            continue;
        }
        comp.sort_unstable();
        let mut images: Vec<Option<u64>> = vec![None; k];
        let mut acc = BigUint::zero();
        count_classes(
            &comp,
            &class_adj,
            &sizes,
            &g_masks,
            g.n as usize,
            &surj,
            &mut images,
            &BigUint::one(),
            &mut acc,
        );
        total *= acc;
    }
    Ok(total)
}

#[allow(clippy::too_many_arguments)]
fn count_classes(
    comp: &[usize],
    class_adj: &[Vec<(usize, u32)>],
    sizes: &[u64],
    g_masks: &BTreeMap<u32, Vec<u64>>,
    gn: usize,
    surj: &[Vec<BigUint>],
    images: &mut Vec<Option<u64>>,
    partial: &BigUint,
    acc: &mut BigUint,
) {
    // Most constrained class next (most assigned neighbours, then index).
    let mut next: Option<(usize, usize)> = None;
    for &a in comp {
        if images[a].is_some() {
            continue;
        }
        let assigned = class_adj[a].iter().filter(|&&(b, _)| images[b].is_some()).count();
        match next {
            Some((_, best)) if assigned <= best => {}
            _ => next = Some((a, assigned)),
        }
    }
    let Some((a, _)) = next else {
        *acc += partial;
        return;
    };
    // The image set must consist of common coloured neighbours of every
    // already-assigned neighbouring class.
    let mut allowed: u64 = if gn == 64 { u64::MAX } else { (1u64 << gn) - 1 };
    for &(b, c) in &class_adj[a] {
        if let Some(img) = images[b] {
            let masks = match g_masks.get(&c) {
                Some(m) => m,
                None => return,
            };
            let mut bits = img;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                allowed &= masks[v];
            }
            if allowed == 0 {
                return;
            }
        }
    }
    let m = sizes[a] as usize;
    let mut members: Vec<u64> = Vec::new();
    let mut bits = allowed;
    while bits != 0 {
        let v = bits.trailing_zeros();
        bits &= bits - 1;
        members.push(1 << v);
    }
    // Nonempty subsets of `allowed` with at most m elements.
    let mut subset_stack: Vec<(u64, usize, usize)> = vec![(0, 0, 0)];
    while let Some((mask, from, count)) = subset_stack.pop() {
        if count > 0 {
            images[a] = Some(mask);
            let weight = partial * &surj[m][count];
            count_classes(comp, class_adj, sizes, g_masks, gn, surj, images, &weight, acc);
            images[a] = None;
        }
        if count < m {
            for (i, &bit) in members.iter().enumerate().skip(from) {
                subset_stack.push((mask | bit, i + 1, count + 1));
            }
        }
    }
}

/// `surj[m][k]`: surjections from an m-set onto a k-set (inclusion-exclusion).
fn surjection_table(max_m: usize, max_k: usize) -> Vec<Vec<BigUint>> {
    let mut binom = vec![vec![BigUint::zero(); max_k + 1]; max_k + 1];
    for n in 0..=max_k {
        binom[n][0] = BigUint::one();
        for r in 1..=n {
            let upper = if r <= n - 1 { binom[n - 1][r].clone() } else { BigUint::zero() };
            binom[n][r] = &binom[n - 1][r - 1] + upper;
        }
    }
    let mut table = vec![vec![BigUint::zero(); max_k + 1]; max_m + 1];
    for m in 0..=max_m {
        for k in 0..=max_k {
            let mut total = num_bigint::BigInt::zero();
            for j in 0..=k {
                let term = num_bigint::BigInt::from(binom[k][j].clone())
                    * num_bigint::BigInt::from((k - j) as u64).pow(m as u32);
                if j % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
            }
            table[m][k] = total.to_biguint().unwrap_or_else(BigUint::zero);
        }
    }
    table
}

/// Homomorphism density `|Hom(f, g)| / v_g^{v_f}`.
pub fn hom_density(f: &ColouredPattern, g: &ColouredPattern) -> Result<BigRational> {
    let count = hom_count(f, g)?;
    let denom = BigUint::from(g.n as u64).pow(f.n);
    Ok(BigRational::new(count.into(), denom.into()))
}

/// Colour-preserving isomorphism of patterns (distinguished vertices are
/// ignored). Used to deduplicate star types.
pub fn colour_isomorphic(f: &ColouredPattern, g: &ColouredPattern) -> bool {
    if f.n != g.n || f.edges.len() != g.edges.len() {
        return false;
    }
    if invariant_key(f) != invariant_key(g) {
        return false;
    }
    // A bijective homomorphism between patterns with equal edge counts is an
    // isomorphism.
    let f_adj = f.adjacency();
    let g_adj = g.adjacency();
    let mut assignment: Vec<Option<u32>> = vec![None; f.n as usize];
    let mut used = vec![false; g.n as usize];
    extend_injective(&f_adj, &g_adj, &mut assignment, &mut used)
}

fn extend_injective(
    f_adj: &[Vec<(u32, u32)>],
    g_adj: &[Vec<(u32, u32)>],
    assignment: &mut Vec<Option<u32>>,
    used: &mut Vec<bool>,
) -> bool {
    let mut next = None;
    for v in 0..assignment.len() {
        if assignment[v].is_none() {
            let assigned = f_adj[v]
                .iter()
                .filter(|&&(w, _)| assignment[w as usize].is_some())
                .count();
            match next {
                Some((_, best)) if assigned <= best => {}
                _ => next = Some((v, assigned)),
            }
        }
    }
    let Some((v, _)) = next else {
        return true;
    };
    'cands: for cand in 0..used.len() as u32 {
        if used[cand as usize] {
            continue;
        }
        if f_adj[v].len() != g_adj[cand as usize].len() {
            continue;
        }
        for &(w, c) in &f_adj[v] {
            if let Some(img) = assignment[w as usize] {
                if !g_adj[cand as usize].contains(&(img, c)) {
                    continue 'cands;
                }
            }
        }
        assignment[v] = Some(cand);
        used[cand as usize] = true;
        if extend_injective(f_adj, g_adj, assignment, used) {
            return true;
        }
        assignment[v] = None;
        used[cand as usize] = false;
    }
    false
}

fn invariant_key(p: &ColouredPattern) -> Vec<Vec<(u32, usize)>> {
    // Sorted per-vertex colour-degree profiles.
    let adj = p.adjacency();
    let mut key: Vec<Vec<(u32, usize)>> = adj
        .iter()
        .map(|row| {
            let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
            for &(_, c) in row {
                *counts.entry(c).or_insert(0) += 1;
            }
            counts.into_iter().collect()
        })
        .collect();
    key.sort_unstable();
    key
}

/// Verifies that `map` is a homomorphism from `f` to `g`.
pub fn verify_homomorphism(f: &ColouredPattern, g: &ColouredPattern, map: &[u32]) -> bool {
    if map.len() != f.n as usize {
        return false;
    }
    f.edges.iter().all(|&(u, v, c)| {
        let (a, b) = (map[u as usize], map[v as usize]);
        a != b && g.has_edge(a, b, c)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(g: &Graph) -> ColouredPattern {
        ColouredPattern::monochromatic(g, 1)
    }

    #[test]
    fn identity_on_single_edge() {
        let e = mono(&Graph::complete(2));
        let found = find_homomorphism(&e, &e, &[]).unwrap();
        assert!(verify_homomorphism(&e, &e, &found));
    }

    #[test]
    fn odd_cycle_does_not_fold_to_edge() {
        let c5 = mono(&Graph::cycle(5).unwrap());
        let e = mono(&Graph::complete(2));
        assert!(find_homomorphism(&c5, &e, &[]).is_none());
        let c4 = mono(&Graph::cycle(4).unwrap());
        assert!(find_homomorphism(&c4, &e, &[]).is_some());
    }

    #[test]
    fn colours_are_respected() {
        let f = ColouredPattern::new(2, &[(0, 1, 1)]).unwrap();
        let g = ColouredPattern::new(2, &[(0, 1, 2)]).unwrap();
        assert!(find_homomorphism(&f, &g, &[]).is_none());
    }

    #[test]
    fn pins_are_honoured() {
        let p3 = mono(&Graph::path(3));
        let k2 = mono(&Graph::complete(2));
        // Fold the path onto the edge with both ends at vertex 0.
        let map = find_homomorphism(&p3, &k2, &[(0, 0), (2, 0)]).unwrap();
        assert_eq!(map[0], 0);
        assert_eq!(map[2], 0);
        assert_eq!(map[1], 1);
    }

    /// Oracle: enumerate all v_g^{v_f} maps directly.
    fn hom_count_brute(f: &ColouredPattern, g: &ColouredPattern) -> u64 {
        let vf = f.n() as usize;
        let vg = g.n() as u64;
        let mut count = 0;
        let total = vg.pow(vf as u32);
        for code in 0..total {
            let mut map = Vec::with_capacity(vf);
            let mut x = code;
            for _ in 0..vf {
                map.push((x % vg) as u32);
                x /= vg;
            }
            if verify_homomorphism(f, g, &map) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn hom_count_matches_brute_force() {
        let cases = [
            (mono(&Graph::complete(3)), mono(&Graph::complete(4))),
            (mono(&Graph::cycle(4).unwrap()), mono(&Graph::complete(3))),
            (mono(&Graph::path(4)), mono(&Graph::cycle(5).unwrap())),
            (mono(&Graph::complete(2)), mono(&Graph::petersen())),
            (mono(&Graph::empty(3)), mono(&Graph::complete(3))),
        ];
        for (f, g) in cases {
            let got = hom_count(&f, &g).unwrap();
            assert_eq!(got, BigUint::from(hom_count_brute(&f, &g)));
        }
    }

    #[test]
    fn hom_count_on_blowups_matches_brute_force() {
        let f = Graph::path(3).blowup(2).unwrap();
        let g = Graph::complete(3);
        let got = hom_count(&mono(&f), &mono(&g)).unwrap();
        assert_eq!(got, BigUint::from(hom_count_brute(&mono(&f), &mono(&g))));
    }

    #[test]
    fn colour_iso_basics() {
        let a = ColouredPattern::new(3, &[(0, 1, 1), (1, 2, 2)]).unwrap();
        let b = ColouredPattern::new(3, &[(0, 1, 2), (1, 2, 1)]).unwrap();
        let c = ColouredPattern::new(3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        assert!(colour_isomorphic(&a, &b));
        assert!(!colour_isomorphic(&a, &c));
    }
}
