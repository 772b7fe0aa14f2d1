//! Uniform sampling over the elementary-event multiset.
//!
//! Every event is equally real, so measurement statistics are uniform
//! draws over the `Σ m_x²` stationary events. Draws use a weighted
//! categorical over the per-position event counts instead of materialized
//! events; the distributions are identical and memory stays at O(positions)
//! even when event counts reach 10¹² and beyond.
//!
//! Sampling is deterministic in `(census, n, seed)`: draws are split into
//! fixed-size chunks, chunk `j` uses its own ChaCha stream `j` derived from
//! the master seed, and tallies merge by addition. Chunks may therefore be
//! processed in parallel in any order with bit-identical results.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::probability::{exact_event_probability, ProbabilityDistribution};
use crate::wave::StateCensus;

/// Draws per RNG stream; the chunk layout is part of the reproducibility
/// contract, so changing it changes every sampled report.
const CHUNK: u64 = 1 << 16;

/// Empirical frequencies from uniform event sampling.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleReport {
    pub seed: u64,
    pub n_samples: u64,
    /// Per-position draw tallies; they sum to exactly `n_samples`.
    pub tallies: BTreeMap<usize, u64>,
    /// `tallies[x] / n_samples` per position.
    pub empirical: BTreeMap<usize, f64>,
    /// Largest per-position gap to the exact event probability.
    pub max_abs_deviation: f64,
}

/// Draw `n` uniform picks over the stationary event multiset of a census.
pub fn sample_events(census: &StateCensus, n: u64, seed: u64) -> Result<SampleReport> {
    if n == 0 {
        return Err(Error::ZeroSamples);
    }
    let positions: Vec<usize> = census.counts().keys().copied().collect();

    // cumulative m² weights; u128 holds any product of u64 counts
    let mut cumulative: Vec<u128> = Vec::with_capacity(positions.len());
    let mut total: u128 = 0;
    for &m in census.counts().values() {
        let weight = m as u128 * m as u128;
        total = total.checked_add(weight).ok_or(Error::WeightOverflow)?;
        cumulative.push(total);
    }
    if total == 0 {
        return Err(Error::AllZeroCounts);
    }

    let n_chunks = n.div_ceil(CHUNK);
    let tallies_by_index: Vec<u64> = (0..n_chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            rng.set_stream(chunk);
            let draws = CHUNK.min(n - chunk * CHUNK);
            let mut local = vec![0u64; positions.len()];
            for _ in 0..draws {
                let r = rng.gen_range(0..total);
                let i = cumulative.partition_point(|&c| c <= r);
                local[i] += 1;
            }
            local
        })
        .reduce(
            || vec![0u64; positions.len()],
            |mut acc, local| {
                for (a, l) in acc.iter_mut().zip(&local) {
                    *a += l;
                }
                acc
            },
        );

    let tallies: BTreeMap<usize, u64> = positions
        .iter()
        .copied()
        .zip(tallies_by_index.iter().copied())
        .collect();
    let empirical: BTreeMap<usize, f64> = tallies
        .iter()
        .map(|(&x, &tally)| (x, tally as f64 / n as f64))
        .collect();

    let mut report = SampleReport {
        seed,
        n_samples: n,
        tallies,
        empirical,
        max_abs_deviation: 0.0,
    };
    let reference = exact_event_probability(&census.count_list())?;
    report.max_abs_deviation = frequency_deviation(&report, &reference)?;
    Ok(report)
}

/// Largest per-position gap between a report's empirical frequencies and
/// a reference distribution over the same positions.
pub fn frequency_deviation(
    report: &SampleReport,
    reference: &ProbabilityDistribution,
) -> Result<f64> {
    if report.empirical.keys().copied().ne(reference.positions()) {
        return Err(Error::SupportMismatch);
    }
    let reference = reference.weights_f64();
    Ok(report
        .empirical
        .iter()
        .map(|(x, f)| (f - reference[x]).abs())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wave::MinimumUnit;

    fn census(counts: &[u64]) -> StateCensus {
        StateCensus::from_counts(counts, MinimumUnit::new(0.1).unwrap(), 0)
    }

    #[test]
    fn single_outcome_census() {
        let report = sample_events(&census(&[0, 7]), 1000, 9).unwrap();
        assert_eq!(report.tallies[&0], 0);
        assert_eq!(report.tallies[&1], 1000);
        assert_eq!(report.empirical[&0], 0.0);
        assert_eq!(report.empirical[&1], 1.0);
        assert_eq!(report.max_abs_deviation, 0.0);
    }

    #[test]
    fn sampling_is_deterministic() {
        let c = census(&[3, 4]);
        let a = sample_events(&c, 100_000, 42).unwrap();
        let b = sample_events(&c, 100_000, 42).unwrap();
        assert_eq!(a, b);
        let other_seed = sample_events(&c, 100_000, 43).unwrap();
        assert_ne!(a.tallies, other_seed.tallies);
    }

    #[test]
    fn binomial_bound_at_pinned_seed() {
        let report = sample_events(&census(&[3, 4]), 100_000, 42).unwrap();
        // 4·sqrt(p(1-p)/n) for p = 0.36, n = 1e5
        assert!((report.empirical[&0] - 0.36).abs() <= 0.0061);
        assert!(report.max_abs_deviation <= 0.0061);
    }

    #[test]
    fn tallies_sum_to_n() {
        for n in [1u64, 7, CHUNK - 1, CHUNK, CHUNK + 1, 3 * CHUNK + 17] {
            let report = sample_events(&census(&[1, 2, 3, 4]), n, 5).unwrap();
            assert_eq!(report.tallies.values().sum::<u64>(), n);
        }
    }

    #[test]
    fn zero_count_positions_are_never_sampled() {
        let report = sample_events(&census(&[5, 0, 2, 0]), 50_000, 7).unwrap();
        assert_eq!(report.tallies[&1], 0);
        assert_eq!(report.tallies[&3], 0);
    }

    #[test]
    fn degenerate_inputs_are_rejected() {
        assert!(matches!(
            sample_events(&census(&[0, 0]), 10, 1),
            Err(Error::AllZeroCounts)
        ));
        assert!(matches!(
            sample_events(&census(&[1]), 0, 1),
            Err(Error::ZeroSamples)
        ));
    }

    #[test]
    fn deviation_examples() {
        let report = sample_events(&census(&[1, 1]), 4, 11).unwrap();
        let same = ProbabilityDistribution::Floating(report.empirical.clone());
        assert_eq!(frequency_deviation(&report, &same).unwrap(), 0.0);

        let all_zero = sample_events(&census(&[9, 0]), 100, 3).unwrap();
        let half = ProbabilityDistribution::Floating(
            [(0usize, 0.5), (1usize, 0.5)].into_iter().collect(),
        );
        assert_eq!(frequency_deviation(&all_zero, &half).unwrap(), 0.5);
    }

    #[test]
    fn deviation_requires_matching_support() {
        let report = sample_events(&census(&[1, 1]), 4, 11).unwrap();
        let reference = exact_event_probability(&[1, 1, 1]).unwrap();
        assert!(matches!(
            frequency_deviation(&report, &reference),
            Err(Error::SupportMismatch)
        ));
    }
}
