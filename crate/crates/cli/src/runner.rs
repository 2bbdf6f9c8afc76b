//! Deterministic fan-out of Monte Carlo trials across worker threads.
//!
//! Trials are pure functions of `(seed, trial_index)`, so chunking the
//! index range and summing tallies gives byte-identical results for any
//! worker count.

use ramsey_core::hypergraph::UniformHypergraph;
use ramsey_core::sampling::{evaluate_trial, McCaps, McProperty, McTallies};

pub fn run_trials(
    h: &UniformHypergraph,
    p: f64,
    seed: u64,
    trials: u64,
    property: McProperty,
    caps: &McCaps,
    workers: usize,
) -> McTallies {
    let workers = workers.max(1).min(trials.max(1) as usize);
    if workers == 1 {
        let mut t = McTallies::default();
        for trial in 0..trials {
            t.add(evaluate_trial(h, p, seed, trial, property, caps));
        }
        return t;
    }
    let chunk = trials.div_ceil(workers as u64);
    let mut total = McTallies::default();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for w in 0..workers as u64 {
            let lo = w * chunk;
            let hi = ((w + 1) * chunk).min(trials);
            if lo >= hi {
                break;
            }
            handles.push(scope.spawn(move || {
                let mut t = McTallies::default();
                for trial in lo..hi {
                    t.add(evaluate_trial(h, p, seed, trial, property, caps));
                }
                t
            }));
        }
        for handle in handles {
            total.merge(handle.join().expect("worker panicked"));
        }
    });
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worker_count_is_invisible() {
        let f = UniformHypergraph::fano();
        let caps = McCaps::default();
        let one = run_trials(&f, 0.7, 9, 64, McProperty::NonColourable { r: 2 }, &caps, 1);
        let eight = run_trials(&f, 0.7, 9, 64, McProperty::NonColourable { r: 2 }, &caps, 8);
        assert_eq!(one, eight);
    }
}
