//! The lower-tail bound from pseudo-variance, and the local-coarseness
//! Monte Carlo check for containment properties.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::sampling::sample_subset;

/// A family of subsets of a ground set `0..n`, a retention probability and
/// a deviation `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct JansonInput {
    pub ground: u32,
    pub sets: Vec<Vec<u32>>,
    pub p: f64,
    pub t: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JansonBound {
    pub mu: f64,
    pub pseudo_variance: f64,
    pub bound: f64,
}

/// `mu = sum p^|B_i|`, `Var' = sum over ordered dependent pairs (shared
/// elements, including i = j) of `p^|B_i u B_j|`, and the lower-tail bound
/// `exp(-t^2 / (2 Var'))`.
pub fn janson_bound(input: &JansonInput) -> Result<JansonBound> {
    if !(0.0..=1.0).contains(&input.p) {
        return Err(Error::BadProbability);
    }
    for set in &input.sets {
        if let Some(&v) = set.iter().find(|&&v| v >= input.ground) {
            return Err(Error::VertexOutOfRange { vertex: v, n: input.ground });
        }
    }
    let sorted: Vec<Vec<u32>> = input
        .sets
        .iter()
        .map(|s| {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();
    let mu: f64 = sorted.iter().map(|s| libm::pow(input.p, s.len() as f64)).sum();
    if !(0.0..=mu + 1e-12).contains(&input.t) {
        return Err(Error::DeviationOutOfRange);
    }
    let mut pseudo_variance = 0.0;
    for a in &sorted {
        for b in &sorted {
            let shared = intersects(a, b);
            if shared {
                pseudo_variance += libm::pow(input.p, union_size(a, b) as f64);
            }
        }
    }
    let bound = if input.t == 0.0 {
        1.0
    } else if pseudo_variance == 0.0 {
        0.0
    } else {
        libm::exp(-input.t * input.t / (2.0 * pseudo_variance))
    };
    Ok(JansonBound { mu, pseudo_variance, bound })
}

fn intersects(a: &[u32], b: &[u32]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => return true,
        }
    }
    false
}

fn union_size(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
        n += 1;
    }
    n + (a.len() - i) + (b.len() - j)
}

/// Monte Carlo check of `mu(c p) >= c^K mu(p)` for the property of
/// containing a member of the family, where `K` is the largest member size.
/// Both probabilities are estimated on coupled samples (the sample at `c p`
/// is a subset of the sample at `p` in every trial).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoarsenessReport {
    pub mu_p: f64,
    pub mu_cp: f64,
    pub required: f64,
    pub slack_sigma: f64,
    pub holds: bool,
}

pub fn local_coarseness_check(
    ground: u32,
    sets: &[Vec<u32>],
    p: f64,
    c: f64,
    trials: u64,
    seed: u64,
) -> Result<CoarsenessReport> {
    if !(0.0..=1.0).contains(&p) || !(0.0..=1.0).contains(&c) {
        return Err(Error::BadProbability);
    }
    if trials == 0 {
        return Err(Error::BadParameter("trials must be positive"));
    }
    let k = sets.iter().map(|s| s.len()).max().unwrap_or(0) as f64;
    let mut hits_p = 0u64;
    let mut hits_cp = 0u64;
    for trial in 0..trials {
        let sample = sample_subset(ground, p, seed, trial);
        if contains_member(&sample, sets) {
            hits_p += 1;
            // Coupling: the cp-sample keeps exactly the stream values below
            // the smaller threshold, hence is a subset of the p-sample.
            let small = sample_subset(ground, c * p, seed, trial);
            if contains_member(&small, sets) {
                hits_cp += 1;
            }
        }
    }
    let mu_p = hits_p as f64 / trials as f64;
    let mu_cp = hits_cp as f64 / trials as f64;
    let required = libm::pow(c, k) * mu_p;
    let var = mu_cp * (1.0 - mu_cp) / trials as f64
        + libm::pow(c, 2.0 * k) * mu_p * (1.0 - mu_p) / trials as f64;
    let slack_sigma = libm::sqrt(var.max(1.0 / trials as f64 / trials as f64));
    let holds = mu_cp >= required - 3.0 * slack_sigma;
    Ok(CoarsenessReport { mu_p, mu_cp, required, slack_sigma, holds })
}

fn contains_member(sample: &[u32], sets: &[Vec<u32>]) -> bool {
    sets.iter().any(|s| {
        !s.is_empty() && s.iter().all(|v| sample.binary_search(v).is_ok())
    })
}
