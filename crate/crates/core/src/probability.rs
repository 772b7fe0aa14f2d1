//! Event-counting probabilities and their convergence to the Born rule.
//!
//! A census with counts `m_x` assigns position `x` the exact probability
//! `m_x² / Σ m_j²` (stationary mode; the general mode uses `m_x·m'_x`).
//! On integer amplitudes this equals the Born weight `|ψ(x)|²/Σ|ψ|²` as a
//! rational identity; for real amplitudes the counting probability
//! converges to the Born weight as the minimum unit shrinks, and the
//! sweep helpers here measure that convergence.
//!
//! Counts and their squares are kept in arbitrary precision end to end;
//! floats appear only at comparison and output boundaries.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::torus::{event_count, stationary_event_count, EventCensus};
use crate::wave::{census, MinimumUnit, WaveFunction};

/// Normalized nonnegative weights over positions, exact or floating.
#[derive(Debug, Clone, PartialEq)]
pub enum ProbabilityDistribution {
    Exact(BTreeMap<usize, BigRational>),
    Floating(BTreeMap<usize, f64>),
}

impl ProbabilityDistribution {
    pub fn is_exact(&self) -> bool {
        matches!(self, Self::Exact(_))
    }

    pub fn len(&self) -> usize {
        match self {
            Self::Exact(w) => w.len(),
            Self::Floating(w) => w.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn positions(&self) -> Vec<usize> {
        match self {
            Self::Exact(w) => w.keys().copied().collect(),
            Self::Floating(w) => w.keys().copied().collect(),
        }
    }

    /// Weight at a position as a float (exact weights are converted).
    pub fn weight(&self, x: usize) -> Option<f64> {
        match self {
            Self::Exact(w) => w.get(&x).map(rational_to_f64),
            Self::Floating(w) => w.get(&x).copied(),
        }
    }

    /// All weights as floats, ordered by position.
    pub fn weights_f64(&self) -> BTreeMap<usize, f64> {
        match self {
            Self::Exact(w) => w.iter().map(|(&x, r)| (x, rational_to_f64(r))).collect(),
            Self::Floating(w) => w.clone(),
        }
    }

    /// The exact rational weights, when in exact mode.
    pub fn exact_weights(&self) -> Option<&BTreeMap<usize, BigRational>> {
        match self {
            Self::Exact(w) => Some(w),
            Self::Floating(_) => None,
        }
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn normalize_exact(weights: Vec<BigUint>) -> Result<ProbabilityDistribution> {
    let total: BigUint = weights.iter().sum();
    if total.is_zero() {
        return Err(Error::AllZeroCounts);
    }
    let total = BigInt::from(total);
    Ok(ProbabilityDistribution::Exact(
        weights
            .into_iter()
            .enumerate()
            .map(|(x, w)| (x, BigRational::new(BigInt::from(w), total.clone())))
            .collect(),
    ))
}

/// Stationary event probability `P(x_i) = m_i² / Σ m_j²`, exact.
pub fn exact_event_probability(counts: &[u64]) -> Result<ProbabilityDistribution> {
    normalize_exact(counts.iter().map(|&m| stationary_event_count(m)).collect())
}

/// General event probability `P(x_i) = m_i·m'_i / Σ m_j·m'_j`, exact.
pub fn product_event_probability(
    counts_t: &[u64],
    counts_next: &[u64],
) -> Result<ProbabilityDistribution> {
    if counts_t.len() != counts_next.len() {
        return Err(Error::LengthMismatch { left: counts_t.len(), right: counts_next.len() });
    }
    normalize_exact(
        counts_t
            .iter()
            .zip(counts_next)
            .map(|(&m, &m_next)| event_count(m, m_next))
            .collect(),
    )
}

/// Born weights `P(x) = |ψ(x)|² / Σ |ψ|²` of an (unnormalized) wave
/// function; the reference the event probabilities are measured against.
pub fn born_probability(wf: &WaveFunction) -> Result<ProbabilityDistribution> {
    let squares: Vec<f64> = wf.modulus().iter().map(|m| m * m).collect();
    let total: f64 = squares.iter().sum();
    if total <= 0.0 {
        return Err(Error::AllZeroWaveFunction);
    }
    Ok(ProbabilityDistribution::Floating(
        squares.into_iter().enumerate().map(|(x, s)| (x, s / total)).collect(),
    ))
}

/// Quantize a wave function at unit `u` and normalize the squared counts
/// (stationary mode). Errors when every count rounds to zero.
pub fn event_probability_at(
    wf: &WaveFunction,
    unit: &MinimumUnit,
) -> Result<ProbabilityDistribution> {
    let census = census(wf, unit, 0)?;
    if census.is_all_zero() {
        return Err(Error::DegenerateDiscretization);
    }
    exact_event_probability(&census.count_list())
}

/// Distance between the event probability at one unit and the Born weights.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRecord {
    pub u: f64,
    /// `max_x |P_u(x) − P_born(x)|`
    pub linf_error: f64,
    /// `Σ_x |P_u(x) − P_born(x)|`
    pub l1_error: f64,
    pub total_states: u64,
    pub total_events: BigUint,
}

/// Measure how far the event probability at `unit` sits from the Born
/// weights. Exact rationals are converted to floats only here, at the
/// comparison boundary.
pub fn discretization_error(wf: &WaveFunction, unit: &MinimumUnit) -> Result<ConvergenceRecord> {
    let census = census(wf, unit, 0)?;
    if census.is_all_zero() {
        return Err(Error::DegenerateDiscretization);
    }
    let event_probability = exact_event_probability(&census.count_list())?;
    let born = born_probability(wf)?;

    let event_weights = event_probability.weights_f64();
    let born_weights = born.weights_f64();
    let mut linf_error: f64 = 0.0;
    let mut l1_error: f64 = 0.0;
    for (x, p) in &event_weights {
        let diff = (p - born_weights[x]).abs();
        linf_error = linf_error.max(diff);
        l1_error += diff;
    }

    Ok(ConvergenceRecord {
        u: unit.value(),
        linf_error,
        l1_error,
        total_states: census.total_states(),
        total_events: EventCensus::stationary(&census).total_events(),
    })
}

/// Run [`discretization_error`] over a strictly decreasing unit list,
/// one record per unit in input order.
pub fn convergence_sweep(
    wf: &WaveFunction,
    units: &[MinimumUnit],
) -> Result<Vec<ConvergenceRecord>> {
    if units.is_empty() {
        return Err(Error::EmptyUnitList);
    }
    if units.windows(2).any(|pair| pair[1].value() >= pair[0].value()) {
        return Err(Error::UnitsNotDecreasing);
    }
    units.iter().map(|u| discretization_error(wf, u)).collect()
}
