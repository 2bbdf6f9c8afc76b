//! The built-in hypergraph families: copies of a graph in K_n, k-term
//! arithmetic progressions in Z_N, and Schur triples in Z_N.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hypergraph::UniformHypergraph;

/// Lexicographic (row-major) index of the pair `{i, j}` of `K_n`, `i < j`.
///
/// Pairs are ordered (0,1), (0,2), ..., (0,n-1), (1,2), ... so labels are
/// reproducible across runs.
pub fn pair_index(n: u32, i: u32, j: u32) -> u32 {
    let (i, j) = (i.min(j) as u64, i.max(j) as u64);
    let n = n as u64;
    (i * (2 * n - i - 1) / 2 + (j - i - 1)) as u32
}

/// Inverse of [`pair_index`].
pub fn pair_from_index(n: u32, mut idx: u32) -> (u32, u32) {
    let mut i = 0u32;
    loop {
        let row = n - i - 1;
        if idx < row {
            return (i, i + 1 + idx);
        }
        idx -= row;
        i += 1;
    }
}

/// The hypergraph of copies of `h` in `K_n`: vertices are the `C(n,2)` edges
/// of `K_n` under the pair-index bijection, hyperedges are the distinct edge
/// sets of subgraph-isomorphic copies of `h`. Uniformity is `e(h)`.
pub fn build_copies_hypergraph(h: &Graph, n: u32) -> Result<UniformHypergraph> {
    if h.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    if h.edge_count() < 2 {
        return Err(Error::UniformityTooSmall { s: h.edge_count() });
    }
    if n < h.n() {
        return Err(Error::HostTooSmall { needed: h.n(), got: n });
    }
    let vh = h.n() as usize;
    let mut edges: Vec<Vec<u32>> = Vec::new();
    let mut map = vec![u32::MAX; vh];
    let mut used = vec![false; n as usize];
    embed_all(h, n, 0, &mut map, &mut used, &mut |map| {
        let mut copy: Vec<u32> = h
            .edges()
            .iter()
            .map(|&(a, b)| pair_index(n, map[a as usize], map[b as usize]))
            .collect();
        copy.sort_unstable();
        edges.push(copy);
    });
    UniformHypergraph::new(h.edge_count(), n * (n - 1) / 2, &edges)
}

fn embed_all(
    h: &Graph,
    n: u32,
    next: usize,
    map: &mut Vec<u32>,
    used: &mut Vec<bool>,
    emit: &mut dyn FnMut(&[u32]),
) {
    if next == h.n() as usize {
        emit(map);
        return;
    }
    // Host is complete, so every injective map is a copy.
    for target in 0..n {
        if used[target as usize] {
            continue;
        }
        map[next] = target;
        used[target as usize] = true;
        embed_all(h, n, next + 1, map, used, emit);
        used[target as usize] = false;
        map[next] = u32::MAX;
    }
}

/// All copies of `h` in an arbitrary host graph `g`, as sorted sets of host
/// edge positions (indices into `g.edges()`).
pub fn copies_in_graph(h: &Graph, g: &Graph) -> Vec<Vec<u32>> {
    let vh = h.n() as usize;
    if g.n() < h.n() || h.edge_count() == 0 {
        return Vec::new();
    }
    let mut pos = alloc::collections::BTreeMap::new();
    for (i, &e) in g.edges().iter().enumerate() {
        pos.insert(e, i as u32);
    }
    let mut out: Vec<Vec<u32>> = Vec::new();
    let mut map = vec![u32::MAX; vh];
    let mut used = vec![false; g.n() as usize];
    fn rec(
        h: &Graph,
        g: &Graph,
        pos: &alloc::collections::BTreeMap<(u32, u32), u32>,
        next: usize,
        map: &mut Vec<u32>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if next == h.n() as usize {
            let mut copy: Vec<u32> = h
                .edges()
                .iter()
                .map(|&(a, b)| {
                    let (x, y) = (map[a as usize], map[b as usize]);
                    pos[&(x.min(y), x.max(y))]
                })
                .collect();
            copy.sort_unstable();
            out.push(copy);
            return;
        }
        'targets: for target in 0..g.n() {
            if used[target as usize] {
                continue;
            }
            for &(a, b) in h.edges() {
                let (a, b) = (a as usize, b as usize);
                if a == next && map[b] != u32::MAX && !g.has_edge(map[b], target) {
                    continue 'targets;
                }
                if b == next && map[a] != u32::MAX && !g.has_edge(map[a], target) {
                    continue 'targets;
                }
            }
            map[next] = target;
            used[target as usize] = true;
            rec(h, g, pos, next + 1, map, used, out);
            used[target as usize] = false;
            map[next] = u32::MAX;
        }
    }
    rec(h, g, &pos, 0, &mut map, &mut used, &mut out);
    out.sort_unstable();
    out.dedup();
    out
}

/// The k-uniform hypergraph of proper k-term arithmetic progressions in Z_N:
/// all sets `{a, a+d, ..., a+(k-1)d}` mod N with `d != 0` whose `k` terms are
/// pairwise distinct, deduplicated as sets.
pub fn build_kap_hypergraph(k: usize, n: u32) -> Result<UniformHypergraph> {
    if k < 3 {
        return Err(Error::BadParameter("k must be at least 3"));
    }
    if n as usize <= k {
        return Err(Error::BadParameter("N must exceed k"));
    }
    let mut edges: Vec<Vec<u32>> = Vec::new();
    for a in 0..n {
        'diffs: for d in 1..n {
            let mut ap = Vec::with_capacity(k);
            let mut x = a;
            for _ in 0..k {
                ap.push(x);
                x = (x + d) % n;
            }
            let mut sorted = ap.clone();
            sorted.sort_unstable();
            for w in sorted.windows(2) {
                if w[0] == w[1] {
                    continue 'diffs;
                }
            }
            edges.push(sorted);
        }
    }
    UniformHypergraph::new(k, n, &edges)
}

/// The 3-uniform Schur hypergraph on Z_N: all sets `{x, y, z}` of distinct
/// residues with `x + y = z (mod N)` under some labelling.
///
/// With `exclude_zero`, residue 0 and all triples through it are removed and
/// the remaining residues relabel as `vertex i = residue i + 1`; for prime N
/// the result is vertex-transitive under multiplication by units.
pub fn build_schur_hypergraph(n: u32, exclude_zero: bool) -> Result<UniformHypergraph> {
    if n < 5 {
        return Err(Error::BadParameter("N must be at least 5"));
    }
    let mut edges: Vec<Vec<u32>> = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            let z = ((x as u64 + y as u64) % n as u64) as u32;
            if z == x || z == y {
                continue;
            }
            if exclude_zero && (x == 0 || y == 0 || z == 0) {
                continue;
            }
            let mut e = vec![x, y, z];
            e.sort_unstable();
            if exclude_zero {
                for v in e.iter_mut() {
                    *v -= 1;
                }
            }
            edges.push(e);
        }
    }
    let verts = if exclude_zero { n - 1 } else { n };
    UniformHypergraph::new(3, verts, &edges)
}
