//! Threshold curves: Wilson intervals, isotonic smoothing, and the scaled
//! crossing statistic.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::families::{build_copies_hypergraph, build_kap_hypergraph, build_schur_hypergraph};
use crate::graph::Graph;
use crate::hypergraph::UniformHypergraph;
use crate::rational::Rat;
use crate::sampling::{evaluate_trial, mix64, McCaps, McProperty, McTallies};

const Z95: f64 = 1.959963984540054;

/// Wilson score interval at 95%.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let centre = p + z2 / (2.0 * n);
    let spread = Z95 * libm::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    // At the boundaries the exact endpoints are 0 and 1; rounding in the
    // formula would otherwise leave dust.
    let lo = if successes == 0 { 0.0 } else { ((centre - spread) / denom).max(0.0) };
    let hi = if successes == trials { 1.0 } else { ((centre + spread) / denom).min(1.0) };
    (lo, hi)
}

/// Pool-adjacent-violators: the least-squares non-decreasing fit of `ys`
/// with the given weights.
pub fn isotonic_fit(ys: &[f64], weights: &[f64]) -> Vec<f64> {
    assert_eq!(ys.len(), weights.len());
    let mut level: Vec<f64> = Vec::new();
    let mut weight: Vec<f64> = Vec::new();
    let mut span: Vec<usize> = Vec::new();
    for (&y, &w) in ys.iter().zip(weights) {
        level.push(y);
        weight.push(w);
        span.push(1);
        while level.len() > 1 && level[level.len() - 2] > level[level.len() - 1] {
            let (l1, w1, s1) = (level.pop().unwrap(), weight.pop().unwrap(), span.pop().unwrap());
            let k = level.len() - 1;
            let merged_w = weight[k] + w1;
            level[k] = (level[k] * weight[k] + l1 * w1) / merged_w;
            weight[k] = merged_w;
            span[k] += s1;
        }
    }
    let mut out = Vec::with_capacity(ys.len());
    for (l, s) in level.iter().zip(&span) {
        for _ in 0..*s {
            out.push(*l);
        }
    }
    out
}

/// Crossing of `level` on the isotonic fit by linear interpolation;
/// censored (`None`) when the fit does not bracket the level.
pub fn crossing(grid: &[f64], iso: &[f64], level: f64) -> Option<f64> {
    let first = *iso.first()?;
    if first >= level {
        return None;
    }
    for i in 1..iso.len() {
        if iso[i] >= level {
            let (x0, x1, y0, y1) = (grid[i - 1], grid[i], iso[i - 1], iso[i]);
            if y1 == y0 {
                return Some(x0);
            }
            return Some(x0 + (x1 - x0) * (level - y0) / (y1 - y0));
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvePoint {
    pub p: f64,
    pub successes: u64,
    pub trials: u64,
    pub inconclusive: u64,
    pub freq: f64,
    pub wilson_lo: f64,
    pub wilson_hi: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdCurve {
    pub points: Vec<CurvePoint>,
    /// Isotonic fit of the raw frequencies (stored separately).
    pub isotonic: Vec<f64>,
    /// Empirical 1/2-crossing, censored when the grid does not bracket it.
    pub p_hat: Option<f64>,
    /// Width `p_{0.9} - p_{0.1}` on the isotonic fit.
    pub width: Option<f64>,
    /// `p_hat * size^(1/exponent)`.
    pub scaled: Option<f64>,
}

/// The built-in experiment families with their threshold exponents.
#[derive(Debug, Clone)]
pub enum CurveFamily {
    Copies { h: Graph, r: u32 },
    Kap { k: usize, r: u32 },
    Schur { r: u32 },
}

impl CurveFamily {
    pub fn build(&self, size: u32) -> Result<UniformHypergraph> {
        match self {
            CurveFamily::Copies { h, .. } => build_copies_hypergraph(h, size),
            CurveFamily::Kap { k, .. } => build_kap_hypergraph(*k, size),
            CurveFamily::Schur { .. } => build_schur_hypergraph(size, false),
        }
    }

    pub fn r(&self) -> u32 {
        match self {
            CurveFamily::Copies { r, .. } | CurveFamily::Kap { r, .. } | CurveFamily::Schur { r } => {
                *r
            }
        }
    }

    /// The threshold exponent: `m_2(h)` for copies, `k - 1` for
    /// progressions, `2` for Schur triples.
    pub fn exponent(&self) -> Result<f64> {
        match self {
            CurveFamily::Copies { h, .. } => {
                let (m2, _): (Rat, _) = crate::density::two_density(h)?;
                Ok(*m2.numer() as f64 / *m2.denom() as f64)
            }
            CurveFamily::Kap { k, .. } => Ok(*k as f64 - 1.0),
            CurveFamily::Schur { .. } => Ok(2.0),
        }
    }
}

/// Seed block for grid point `i`: distinct points draw from disjoint
/// streams while staying pure in `(seed, i, trial)`.
pub fn grid_block_seed(seed: u64, i: usize) -> u64 {
    seed.wrapping_add(mix64(i as u64 + 1))
}

/// The full experiment in one call: per grid point, `trials` samples of
/// the family instance evaluated for non-r-colourability, assembled into a
/// curve with the family's threshold exponent. Single-threaded; drivers
/// wanting parallelism fan out [`evaluate_trial`] with [`grid_block_seed`]
/// and feed [`assemble_curve`], which yields identical bytes.
pub fn threshold_curve(
    family: &CurveFamily,
    size: u32,
    grid: &[f64],
    trials: u64,
    seed: u64,
    caps: &McCaps,
) -> Result<ThresholdCurve> {
    if trials == 0 {
        return Err(Error::BadParameter("trials must be positive"));
    }
    let h = family.build(size)?;
    let exponent = family.exponent()?;
    let property = McProperty::NonColourable { r: family.r() };
    let mut tallies = Vec::with_capacity(grid.len());
    for (i, &p) in grid.iter().enumerate() {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::BadProbability);
        }
        let block = grid_block_seed(seed, i);
        let mut t = McTallies::default();
        for trial in 0..trials {
            t.add(evaluate_trial(&h, p, block, trial, property, caps));
        }
        tallies.push(t);
    }
    assemble_curve(grid, &tallies, size as f64, exponent)
}

/// Assembles a curve from per-grid-point tallies; `size_scale` is the
/// family size and `exponent` its threshold exponent. Frequencies use the
/// decided trials only.
pub fn assemble_curve(
    grid: &[f64],
    tallies: &[McTallies],
    size_scale: f64,
    exponent: f64,
) -> Result<ThresholdCurve> {
    if grid.len() != tallies.len() {
        return Err(Error::BadParameter("grid and tallies must align"));
    }
    if grid.iter().any(|p| !(0.0..=1.0).contains(p)) {
        return Err(Error::BadProbability);
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadParameter("grid must be strictly increasing"));
    }
    let mut points = Vec::with_capacity(grid.len());
    for (&p, t) in grid.iter().zip(tallies) {
        let decided = t.decided();
        let freq = if decided == 0 { 0.0 } else { t.successes as f64 / decided as f64 };
        let (lo, hi) = wilson_interval(t.successes, decided);
        points.push(CurvePoint {
            p,
            successes: t.successes,
            trials: decided,
            inconclusive: t.inconclusive,
            freq,
            wilson_lo: lo,
            wilson_hi: hi,
        });
    }
    let freqs: Vec<f64> = points.iter().map(|pt| pt.freq).collect();
    let weights: Vec<f64> = points.iter().map(|pt| pt.trials.max(1) as f64).collect();
    let isotonic = isotonic_fit(&freqs, &weights);
    let p_hat = crossing(grid, &isotonic, 0.5);
    let width = match (crossing(grid, &isotonic, 0.1), crossing(grid, &isotonic, 0.9)) {
        (Some(a), Some(b)) => Some(b - a),
        _ => None,
    };
    let scaled = p_hat.map(|p| p * libm::pow(size_scale, 1.0 / exponent));
    Ok(ThresholdCurve { points, isotonic, p_hat, width, scaled })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_behaves_at_extremes() {
        let (lo, hi) = wilson_interval(0, 100);
        assert_eq!(lo, 0.0);
        assert!(hi < 0.05);
        let (lo, hi) = wilson_interval(100, 100);
        assert!(lo > 0.95);
        assert_eq!(hi, 1.0);
    }

    #[test]
    fn isotonic_restores_monotonicity() {
        let ys = [0.1, 0.3, 0.2, 0.6, 0.5, 0.9];
        let ws = [10.0; 6];
        let iso = isotonic_fit(&ys, &ws);
        assert!(iso.windows(2).all(|w| w[0] <= w[1]));
        // Already-monotone input is unchanged.
        let flat = [0.0, 0.25, 0.5, 1.0];
        assert_eq!(isotonic_fit(&flat, &[1.0; 4]), flat);
    }

    #[test]
    fn crossing_interpolates() {
        let grid = [0.1, 0.2, 0.3];
        let iso = [0.0, 0.4, 0.8];
        let x = crossing(&grid, &iso, 0.5).unwrap();
        assert!((x - 0.225).abs() < 1e-12);
        assert_eq!(crossing(&grid, &iso, 0.9), None);
        assert_eq!(crossing(&grid, &[0.6, 0.7, 0.8], 0.5), None);
    }

    #[test]
    fn assemble_rejects_bad_grids() {
        let t = [McTallies::default(), McTallies::default()];
        assert!(assemble_curve(&[0.2, 0.1], &t, 10.0, 2.0).is_err());
        assert!(assemble_curve(&[0.1, 1.2], &t, 10.0, 2.0).is_err());
    }

    #[test]
    fn threshold_curve_end_to_end() {
        let fam = CurveFamily::Schur { r: 2 };
        let grid = [0.2, 0.4, 0.6, 0.8];
        let caps = McCaps::default();
        let curve = threshold_curve(&fam, 13, &grid, 50, 7, &caps).unwrap();
        assert_eq!(curve.points.len(), 4);
        assert!(curve.isotonic.windows(2).all(|w| w[0] <= w[1]));
        // Reruns are identical.
        let again = threshold_curve(&fam, 13, &grid, 50, 7, &caps).unwrap();
        assert_eq!(curve, again);
        // Out-of-range grids are rejected.
        assert!(threshold_curve(&fam, 13, &[0.5, 1.5], 10, 7, &caps).is_err());
    }

    #[test]
    fn family_exponents() {
        let copies = CurveFamily::Copies { h: Graph::complete(3), r: 2 };
        assert_eq!(copies.exponent().unwrap(), 2.0);
        let kap = CurveFamily::Kap { k: 3, r: 2 };
        assert_eq!(kap.exponent().unwrap(), 2.0);
        let schur = CurveFamily::Schur { r: 2 };
        assert_eq!(schur.exponent().unwrap(), 2.0);
        let c4 = CurveFamily::Copies { h: Graph::cycle(4).unwrap(), r: 2 };
        assert_eq!(c4.exponent().unwrap(), 1.5);
    }
}
