//! Deterministic binomial sampling and Monte Carlo property evaluation.
//!
//! Randomness is counter-based: the value for vertex `v` of trial `i` under
//! seed `s` is
//!
//! ```text
//! u(s, i, v) = mix64(s .+ (i + 1) * 0x9E3779B97F4A7C15 .+ (v + 1) * 0xD1B54A32D192ED03)
//! ```
//!
//! with `.+` wrapping addition and `mix64` the SplitMix64 finaliser
//! (`z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
//! z *= 0x94D049BB133111EB; z ^= z >> 31`). A vertex is retained when
//! `u < ceil(p * 2^64)` (everything for p >= 1, nothing for p <= 0).
//! Results are therefore bit-identical for a given `(seed, trial)` no
//! matter how trials are scheduled across workers.

use alloc::vec::Vec;

use crate::clots::find_clots;
use crate::colouring::proper_colouring;
use crate::error::{Error, Result};
use crate::hypergraph::UniformHypergraph;
use crate::listcol::{
    for_each_connected_subset, is_2_choosable, Choosability, FamilyLimits,
};
use crate::reveal::reveal_layers;

pub const TRIAL_STRIDE: u64 = 0x9E3779B97F4A7C15;
pub const INDEX_STRIDE: u64 = 0xD1B54A32D192ED03;

/// The SplitMix64 finaliser.
pub fn mix64(mut z: u64) -> u64 {
    z ^= z >> 30;
    z = z.wrapping_mul(0xBF58476D1CE4E5B9);
    z ^= z >> 27;
    z = z.wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

fn stream(seed: u64, trial: u64, counter: u64) -> u64 {
    mix64(
        seed.wrapping_add((trial.wrapping_add(1)).wrapping_mul(TRIAL_STRIDE))
            .wrapping_add((counter.wrapping_add(1)).wrapping_mul(INDEX_STRIDE)),
    )
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleConfig {
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
}

impl SampleConfig {
    pub fn new(p: f64, trials: u64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::BadProbability);
        }
        if trials == 0 {
            return Err(Error::BadParameter("trials must be positive"));
        }
        Ok(SampleConfig { p, trials, seed })
    }
}

/// Inclusion threshold `ceil(p * 2^64)` (saturating); compare stream values
/// strictly below it.
fn inclusion_threshold(p: f64) -> Option<u64> {
    if p >= 1.0 {
        return None; // keep everything
    }
    if p <= 0.0 {
        return Some(0);
    }
    Some((p * 18446744073709551616.0) as u64)
}

/// The random subset of `0..n` for this `(seed, trial)`.
pub fn sample_subset(n: u32, p: f64, seed: u64, trial: u64) -> Vec<u32> {
    match inclusion_threshold(p) {
        None => (0..n).collect(),
        Some(t) => (0..n)
            .filter(|&v| stream(seed, trial, v as u64) < t)
            .collect(),
    }
}

/// Properties evaluated per sampled induced subhypergraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum McProperty {
    /// The induced subhypergraph admits no proper r-colouring.
    NonColourable { r: u32 },
    /// Some clot has its support inside the sample.
    ContainsClot,
    /// Some connected subset carries at least `count` degenerate elements.
    HasDegenerates { count: usize },
    /// Some subset of at most `k` vertices is not 2-choosable from `[r]`.
    NonChoosableSubset { k: usize, r: u32 },
    /// The whole sample is not 2-choosable from `[r]` (list-Schur and
    /// list-van-der-Waerden under the matching family).
    NotTwoChoosable { r: u32 },
}

/// Caps for the per-trial evaluations.
#[derive(Debug, Clone, Copy)]
pub struct McCaps {
    /// Largest connected subset examined by the degenerate-elements search.
    pub max_subset_size: usize,
    /// Budget on enumerated subsets per trial.
    pub max_subsets: u64,
    pub family: FamilyLimits,
}

impl Default for McCaps {
    fn default() -> Self {
        McCaps { max_subset_size: 16, max_subsets: 1 << 20, family: FamilyLimits::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrialOutcome {
    True,
    False,
    Inconclusive,
}

/// Evaluates the property on the subset sampled for `trial`; pure in
/// `(seed, trial)`.
pub fn evaluate_trial(
    h: &UniformHypergraph,
    p: f64,
    seed: u64,
    trial: u64,
    property: McProperty,
    caps: &McCaps,
) -> TrialOutcome {
    let subset = sample_subset(h.n(), p, seed, trial);
    evaluate_property(h, &subset, property, caps)
}

pub fn evaluate_property(
    h: &UniformHypergraph,
    subset: &[u32],
    property: McProperty,
    caps: &McCaps,
) -> TrialOutcome {
    match property {
        McProperty::NonColourable { r } => {
            let (sub, _) = h.induced(subset).expect("sampled vertices are in range");
            match proper_colouring(&sub, r) {
                Ok(Some(_)) => TrialOutcome::False,
                Ok(None) => TrialOutcome::True,
                Err(_) => TrialOutcome::Inconclusive,
            }
        }
        McProperty::ContainsClot => match find_clots(h, subset) {
            Ok(clots) if clots.is_empty() => TrialOutcome::False,
            Ok(_) => TrialOutcome::True,
            Err(_) => TrialOutcome::Inconclusive,
        },
        McProperty::HasDegenerates { count } => degenerates_in_sample(h, subset, count, caps),
        McProperty::NonChoosableSubset { k, r } => {
            let (sub, _) = h.induced(subset).expect("sampled vertices are in range");
            subset_choosability(&sub, k, r, caps)
        }
        McProperty::NotTwoChoosable { r } => {
            let (sub, _) = h.induced(subset).expect("sampled vertices are in range");
            match is_2_choosable(&sub, r, caps.family) {
                Ok(Choosability::Choosable) => TrialOutcome::False,
                Ok(Choosability::NotChoosable { .. }) => TrialOutcome::True,
                _ => TrialOutcome::Inconclusive,
            }
        }
    }
}

/// Searches connected subsets of the sample for one with at least `count`
/// degenerate elements. Exact when every component fits the caps.
fn degenerates_in_sample(
    h: &UniformHypergraph,
    subset: &[u32],
    count: usize,
    caps: &McCaps,
) -> TrialOutcome {
    let (sub, _) = h.induced(subset).expect("sampled vertices are in range");
    if sub.n() > 64 {
        return TrialOutcome::Inconclusive;
    }
    let mut hit = false;
    let mut budget = caps.max_subsets;
    let complete = for_each_connected_subset(&sub, caps.max_subset_size, &mut |w| {
        if budget == 0 {
            return false;
        }
        budget -= 1;
        if !sub.is_connected_subset(w) {
            return true;
        }
        if let Ok(trace) = reveal_layers(&sub, w) {
            if trace.degenerate.len() >= count {
                hit = true;
                return false;
            }
        }
        true
    });
    if hit {
        return TrialOutcome::True;
    }
    if !complete || largest_component(&sub) > caps.max_subset_size {
        return TrialOutcome::Inconclusive;
    }
    TrialOutcome::False
}

fn subset_choosability(sub: &UniformHypergraph, k: usize, r: u32, caps: &McCaps) -> TrialOutcome {
    if sub.n() > 64 {
        return TrialOutcome::Inconclusive;
    }
    let mut hit = false;
    let mut saw_inconclusive = false;
    let mut budget = caps.max_subsets;
    let complete = for_each_connected_subset(sub, k, &mut |w| {
        if budget == 0 {
            return false;
        }
        budget -= 1;
        if !sub.is_connected_subset(w) {
            return true;
        }
        let (inner, _) = sub.induced(w).expect("subset vertices are in range");
        match is_2_choosable(&inner, r, caps.family) {
            Ok(Choosability::NotChoosable { .. }) => {
                hit = true;
                false
            }
            Ok(Choosability::Choosable) => true,
            _ => {
                saw_inconclusive = true;
                true
            }
        }
    });
    if hit {
        TrialOutcome::True
    } else if !complete || saw_inconclusive {
        TrialOutcome::Inconclusive
    } else {
        TrialOutcome::False
    }
}

fn largest_component(h: &UniformHypergraph) -> usize {
    let n = h.n() as usize;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for e in h.edges() {
        let r0 = find(&mut parent, e[0] as usize);
        for &v in &e[1..] {
            let rv = find(&mut parent, v as usize);
            parent[rv] = r0;
        }
    }
    let mut sizes = alloc::vec![0usize; n];
    let mut best = 0;
    for v in 0..n {
        let r = find(&mut parent, v);
        sizes[r] += 1;
        best = best.max(sizes[r]);
    }
    best
}

/// Aggregated Monte Carlo tallies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct McTallies {
    pub successes: u64,
    pub failures: u64,
    pub inconclusive: u64,
}

impl McTallies {
    pub fn add(&mut self, outcome: TrialOutcome) {
        match outcome {
            TrialOutcome::True => self.successes += 1,
            TrialOutcome::False => self.failures += 1,
            TrialOutcome::Inconclusive => self.inconclusive += 1,
        }
    }

    pub fn merge(&mut self, other: McTallies) {
        self.successes += other.successes;
        self.failures += other.failures;
        self.inconclusive += other.inconclusive;
    }

    pub fn decided(&self) -> u64 {
        self.successes + self.failures
    }
}

/// Runs all trials sequentially (callers may fan trials out instead; the
/// tallies merge associatively).
pub fn monte_carlo(
    h: &UniformHypergraph,
    cfg: &SampleConfig,
    property: McProperty,
    caps: &McCaps,
) -> McTallies {
    let mut tallies = McTallies::default();
    for trial in 0..cfg.trials {
        tallies.add(evaluate_trial(h, cfg.p, cfg.seed, trial, property, caps));
    }
    tallies
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extreme_probabilities() {
        assert_eq!(sample_subset(10, 0.0, 7, 0), Vec::<u32>::new());
        assert_eq!(sample_subset(10, 1.0, 7, 0), (0..10).collect::<Vec<_>>());
    }

    #[test]
    fn sampling_is_reproducible() {
        let a = sample_subset(100, 0.3, 42, 5);
        let b = sample_subset(100, 0.3, 42, 5);
        assert_eq!(a, b);
        let c = sample_subset(100, 0.3, 42, 6);
        assert_ne!(a, c);
    }

    #[test]
    fn sample_sizes_concentrate() {
        // Mean size over 100 trials within 3 sigma of n * p (binomial
        // arithmetic: sigma of the mean = sqrt(n p (1-p) / trials)).
        let (n, p, trials) = (10_000u32, 0.3f64, 100u64);
        let mut total = 0usize;
        for t in 0..trials {
            total += sample_subset(n, p, 99, t).len();
        }
        let mean = total as f64 / trials as f64;
        let sigma = libm::sqrt(n as f64 * p * (1.0 - p) / trials as f64);
        assert!((mean - 3000.0).abs() < 3.0 * sigma, "mean {mean}");
    }

    #[test]
    fn fano_full_sample_not_colourable() {
        let f = UniformHypergraph::fano();
        let cfg = SampleConfig::new(1.0, 5, 1).unwrap();
        let t = monte_carlo(&f, &cfg, McProperty::NonColourable { r: 2 }, &McCaps::default());
        assert_eq!(t.successes, 5);
    }

    #[test]
    fn empty_sample_has_nothing() {
        let f = UniformHypergraph::fano();
        let cfg = SampleConfig::new(0.0, 3, 1).unwrap();
        for prop in [
            McProperty::NonColourable { r: 2 },
            McProperty::ContainsClot,
            McProperty::HasDegenerates { count: 2 },
            McProperty::NonChoosableSubset { k: 5, r: 4 },
            McProperty::NotTwoChoosable { r: 4 },
        ] {
            let t = monte_carlo(&f, &cfg, prop, &McCaps::default());
            assert_eq!(t.successes, 0, "{prop:?}");
            assert_eq!(t.inconclusive, 0, "{prop:?}");
        }
    }

    #[test]
    fn degenerate_search_finds_tight_pairs() {
        let h = UniformHypergraph::new(3, 4, &[vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        let out = evaluate_property(
            &h,
            &[0, 1, 2, 3],
            McProperty::HasDegenerates { count: 1 },
            &McCaps::default(),
        );
        assert_eq!(out, TrialOutcome::True);
        let out = evaluate_property(
            &h,
            &[0, 1, 2, 3],
            McProperty::HasDegenerates { count: 2 },
            &McCaps::default(),
        );
        assert_eq!(out, TrialOutcome::False);
    }

    #[test]
    fn clot_detected_in_sample() {
        let h = crate::clots::tests::clot_fixture();
        let out =
            evaluate_property(&h, &(0..9).collect::<Vec<_>>(), McProperty::ContainsClot, &McCaps::default());
        assert_eq!(out, TrialOutcome::True);
        let out =
            evaluate_property(&h, &(0..8).collect::<Vec<_>>(), McProperty::ContainsClot, &McCaps::default());
        assert_eq!(out, TrialOutcome::False);
    }
}
