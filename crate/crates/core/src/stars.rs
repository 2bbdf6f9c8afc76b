//! Rainbow stars, constellations, and the star-constellation criterion.
//!
//! A rainbow star of a pattern `H` in `r` colours is built from `r - 1`
//! copies of `H` minus an edge (one per colour), glued on the missing edge:
//! the shared pair is the centre. A constellation places one star on every
//! edge of a base copy of `H`, the stars otherwise disjoint. The criterion
//! decides, for every star type `S`, whether some constellation `C` admits a
//! colour-preserving homomorphism `C -> S`; the base edges themselves are
//! centre pairs, hence non-edges of both patterns.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hom::{colour_isomorphic, find_homomorphism, ColouredPattern};

/// One copy choice inside a star: the removed edge (index into
/// `pattern.edges()`) and an orientation bit. With `false`, the smaller
/// endpoint of the removed edge sits at centre `u`; with `true`, at `v`.
pub type CopyChoice = (usize, bool);

/// A star type: `r - 1` copy choices, copy `j` carrying colour `j + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarSpec {
    pub pattern: Graph,
    pub r: u32,
    pub copies: Vec<CopyChoice>,
}

/// A constellation: a star per base edge plus a bit aligning the star's
/// centre pair with the base edge (with `false`, centre `u` sits at the
/// smaller base endpoint).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstellationSpec {
    pub base: Graph,
    pub stars: Vec<(StarSpec, bool)>,
}

/// A built star: the coloured pattern (centres 0 and 1 distinguished) and,
/// per copy, the map from pattern vertices to star vertices.
#[derive(Debug, Clone)]
pub struct BuiltStar {
    pub pattern: ColouredPattern,
    pub copy_maps: Vec<Vec<u32>>,
}

/// Generic gluing; `v_S = (v_H - 2)(r - 1) + 2`.
pub fn build_rainbow_star(spec: &StarSpec) -> Result<BuiltStar> {
    let h = &spec.pattern;
    if spec.r < 2 || spec.copies.len() != spec.r as usize - 1 {
        return Err(Error::BadParameter("star needs r - 1 copy choices"));
    }
    if h.n() < 2 {
        return Err(Error::BadParameter("pattern needs at least two vertices"));
    }
    let vh = h.n();
    let block = vh - 2;
    let mut edges: Vec<(u32, u32, u32)> = Vec::new();
    let mut copy_maps = Vec::with_capacity(spec.copies.len());
    for (j, &(edge_idx, flip)) in spec.copies.iter().enumerate() {
        let &(a, b) = h
            .edges()
            .get(edge_idx)
            .ok_or(Error::BadParameter("copy edge index out of range"))?;
        let colour = j as u32 + 1;
        let mut map = vec![u32::MAX; vh as usize];
        map[a as usize] = if flip { 1 } else { 0 };
        map[b as usize] = if flip { 0 } else { 1 };
        let mut next = 2 + j as u32 * block;
        for v in 0..vh {
            if v != a && v != b {
                map[v as usize] = next;
                next += 1;
            }
        }
        for &(x, y) in h.edges() {
            if (x, y) == (a, b) {
                continue;
            }
            edges.push((map[x as usize], map[y as usize], colour));
        }
        copy_maps.push(map);
    }
    let pattern = ColouredPattern::new(2 + block * (spec.r - 1), &edges)?
        .with_distinguished(vec![0, 1]);
    Ok(BuiltStar { pattern, copy_maps })
}

/// A built constellation: base vertices are `0..v_H`, `star_maps[i][j]`
/// maps pattern vertices of copy `j` of the star on base edge `i` into the
/// constellation.
#[derive(Debug, Clone)]
pub struct BuiltConstellation {
    pub pattern: ColouredPattern,
    pub star_maps: Vec<Vec<Vec<u32>>>,
}

/// Generic gluing; `v_C = e_H (v_H - 2)(r - 1) + v_H`.
pub fn build_constellation(spec: &ConstellationSpec) -> Result<BuiltConstellation> {
    let base = &spec.base;
    if spec.stars.len() != base.edge_count() {
        return Err(Error::BadParameter("constellation needs a star per base edge"));
    }
    let vh = base.n();
    let mut edges: Vec<(u32, u32, u32)> = Vec::new();
    let mut star_maps = Vec::with_capacity(spec.stars.len());
    let mut next_free = vh;
    for (i, &(x, y)) in base.edges().iter().enumerate() {
        let (star, align) = &spec.stars[i];
        let built = build_rainbow_star(star)?;
        let (cu, cv) = if *align { (y, x) } else { (x, y) };
        let star_n = built.pattern.n();
        // Relocate the star: centres onto the base edge, internals to a
        // fresh block.
        let mut relocate = vec![u32::MAX; star_n as usize];
        relocate[0] = cu;
        relocate[1] = cv;
        for s in 2..star_n {
            relocate[s as usize] = next_free + s - 2;
        }
        next_free += star_n - 2;
        for &(u, v, c) in built.pattern.edges() {
            edges.push((relocate[u as usize], relocate[v as usize], c));
        }
        let maps: Vec<Vec<u32>> = built
            .copy_maps
            .iter()
            .map(|m| m.iter().map(|&s| relocate[s as usize]).collect())
            .collect();
        star_maps.push(maps);
    }
    let pattern =
        ColouredPattern::new(next_free, &edges)?.with_distinguished((0..vh).collect());
    Ok(BuiltConstellation { pattern, star_maps })
}

/// Caps for the star-type enumeration.
#[derive(Debug, Clone, Copy)]
pub struct RscLimits {
    pub max_star_types: usize,
}

impl Default for RscLimits {
    fn default() -> Self {
        RscLimits { max_star_types: 20_000 }
    }
}

/// A per-star-type witness: where the base copy lands inside the star and
/// the constellation realising the homomorphism.
#[derive(Debug, Clone)]
pub struct StarWitness {
    pub star: StarSpec,
    pub base_map: Vec<u32>,
    pub constellation: ConstellationSpec,
    pub hom: Vec<u32>,
}

#[derive(Debug, Clone)]
pub enum RscVerdict {
    /// Every star type admits a constellation; one witness per type.
    Holds(Vec<StarWitness>),
    /// Exhaustively certified failure for this star type.
    Fails { star: StarSpec },
    /// The star-type cap was exceeded.
    Inconclusive { star_types: usize },
}

impl RscVerdict {
    pub fn holds(&self) -> Option<bool> {
        match self {
            RscVerdict::Holds(_) => Some(true),
            RscVerdict::Fails { .. } => Some(false),
            RscVerdict::Inconclusive { .. } => None,
        }
    }
}

/// Decides the rainbow star-constellation criterion for `h` in `r` colours:
/// every star type (up to colour-preserving isomorphism, unless
/// `dedup_stars` is off) must admit a constellation with a homomorphism
/// into it.
pub fn has_rainbow_sc_property(
    h: &Graph,
    r: u32,
    limits: RscLimits,
    dedup_stars: bool,
) -> Result<RscVerdict> {
    if r < 2 {
        return Err(Error::BadParameter("r must be at least 2"));
    }
    if h.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    if !h.is_connected() {
        return Err(Error::Disconnected);
    }
    let copies_per_star = r as usize - 1;
    let choice_count = h.edge_count() * 2;
    // Total star types before dedup: (2 e_H)^(r-1).
    let mut total: usize = 1;
    for _ in 0..copies_per_star {
        total = match total.checked_mul(choice_count) {
            Some(t) if t <= 4 * limits.max_star_types => t,
            _ => return Ok(RscVerdict::Inconclusive { star_types: usize::MAX }),
        };
    }

    let mut reps: Vec<(StarSpec, BuiltStar)> = Vec::new();
    let mut code = vec![0usize; copies_per_star];
    'types: loop {
        let copies: Vec<CopyChoice> = code
            .iter()
            .map(|&c| (c / 2, c % 2 == 1))
            .collect();
        let spec = StarSpec { pattern: h.clone(), r, copies };
        let built = build_rainbow_star(&spec)?;
        if !dedup_stars || !reps.iter().any(|(_, b)| colour_isomorphic(&b.pattern, &built.pattern)) {
            reps.push((spec, built));
            if reps.len() > limits.max_star_types {
                return Ok(RscVerdict::Inconclusive { star_types: reps.len() });
            }
        }
        // Advance the mixed-radix code.
        let mut i = 0;
        loop {
            if i == copies_per_star {
                break 'types;
            }
            code[i] += 1;
            if code[i] < choice_count {
                break;
            }
            code[i] = 0;
            i += 1;
        }
    }

    let mut witnesses = Vec::new();
    for (spec, built) in &reps {
        match constellation_into_star(h, r, spec, built)? {
            Some(w) => witnesses.push(w),
            None => return Ok(RscVerdict::Fails { star: spec.clone() }),
        }
    }
    Ok(RscVerdict::Holds(witnesses))
}

/// Searches for a constellation of `h` with a homomorphism into the star.
///
/// A constellation maps into `S` exactly when there is a placement
/// `phi: V(H) -> V(S)` such that every base edge lands on a "linkable" pair:
/// a pair `(p, q)` admitting, for every colour, some copy of `H` minus an
/// edge inside `S` with the missing edge's endpoints at `p` and `q`. The
/// stars of the constellation are disjoint outside the base, so the link
/// checks are independent per base edge.
fn constellation_into_star(
    h: &Graph,
    r: u32,
    spec: &StarSpec,
    built: &BuiltStar,
) -> Result<Option<StarWitness>> {
    let s_pattern = &built.pattern;
    let vs = s_pattern.n();
    // linkable[p][q] per unordered pair (symmetric by flipping orientations).
    let mut linkable = vec![vec![false; vs as usize]; vs as usize];
    for p in 0..vs {
        for q in 0..=p {
            if link_choices(h, r, s_pattern, p, q).is_some() {
                linkable[p as usize][q as usize] = true;
                linkable[q as usize][p as usize] = true;
            }
        }
    }
    // Complete search for phi: V(H) -> V(S) with all edges linkable.
    let mut phi = vec![u32::MAX; h.n() as usize];
    if !place_base(h, &linkable, vs, 0, &mut phi) {
        return Ok(None);
    }
    // Assemble the witness constellation.
    let mut stars = Vec::new();
    let mut copy_homs: Vec<Vec<Vec<u32>>> = Vec::new();
    for &(x, y) in h.edges() {
        let (p, q) = (phi[x as usize], phi[y as usize]);
        let choices = link_choices(h, r, s_pattern, p, q).expect("linkable by construction");
        let copies: Vec<CopyChoice> = choices.iter().map(|&(e, o, _)| (e, o)).collect();
        copy_homs.push(choices.into_iter().map(|(_, _, m)| m).collect());
        stars.push((StarSpec { pattern: h.clone(), r, copies }, false));
    }
    let constellation = ConstellationSpec { base: h.clone(), stars };
    let built_c = build_constellation(&constellation)?;
    // Stitch the homomorphism C -> S from phi and the per-copy maps.
    let mut hom = vec![u32::MAX; built_c.pattern.n() as usize];
    for v in 0..h.n() {
        hom[v as usize] = phi[v as usize];
    }
    for (i, star_map) in built_c.star_maps.iter().enumerate() {
        for (j, map) in star_map.iter().enumerate() {
            for hv in 0..h.n() as usize {
                let cv = map[hv];
                if cv == u32::MAX {
                    continue;
                }
                hom[cv as usize] = copy_homs[i][j][hv];
            }
        }
    }
    debug_assert!(crate::hom::verify_homomorphism(&built_c.pattern, s_pattern, &hom));
    Ok(Some(StarWitness { star: spec.clone(), base_map: phi, constellation, hom }))
}

/// For a centre image `(p, q)`, finds per colour a removed edge,
/// orientation and homomorphism of the corresponding copy into the star.
/// The returned maps are per pattern vertex (the removed edge's endpoints
/// land on `p` and `q`).
fn link_choices(
    h: &Graph,
    r: u32,
    star: &ColouredPattern,
    p: u32,
    q: u32,
) -> Option<Vec<(usize, bool, Vec<u32>)>> {
    let mut out = Vec::with_capacity(r as usize - 1);
    for colour in 1..r {
        let mut found = None;
        'search: for (idx, &(a, b)) in h.edges().iter().enumerate() {
            for flip in [false, true] {
                let (ia, ib) = if flip { (q, p) } else { (p, q) };
                let copy = ColouredPattern::monochromatic(&h.without_edge(a, b), colour);
                if let Some(map) = find_homomorphism(&copy, star, &[(a, ia), (b, ib)]) {
                    found = Some((idx, flip, map));
                    break 'search;
                }
            }
        }
        out.push(found?);
    }
    Some(out)
}

fn place_base(h: &Graph, linkable: &[Vec<bool>], vs: u32, v: u32, phi: &mut Vec<u32>) -> bool {
    if v == h.n() {
        return true;
    }
    'cands: for cand in 0..vs {
        for w in h.neighbours(v) {
            if w < v && !linkable[cand as usize][phi[w as usize] as usize] {
                continue 'cands;
            }
        }
        phi[v as usize] = cand;
        if place_base(h, linkable, vs, v + 1, phi) {
            return true;
        }
        phi[v as usize] = u32::MAX;
    }
    false
}
