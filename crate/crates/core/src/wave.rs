//! Geometric wave functions on a periodic position ring.
//!
//! A wave function stores, per site, a nonnegative modulus `R_w` and a
//! phase angle on the double cover `[0, 4π·R_θ)`. The complex value at a
//! site is `R_w · exp(i·θ / 2R_θ)`: one `2π·R_θ` loop of the phase flips
//! the sign, two loops close — the Möbius structure of the phase circle.
//!
//! The modulus quantizes into an integer elementary-state count
//! `m = round(2π·R_w / u)` for a minimum unit `u`; a [`StateCensus`] holds
//! these counts per site. Counts never see the phase.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::decimal;
use crate::error::{Error, Result};

/// The common quantization step shared by all position quantities.
///
/// Construct from a float with [`MinimumUnit::new`] or from a decimal
/// string with [`MinimumUnit::from_decimal`]; the latter keeps the exact
/// rational alongside the float value.
#[derive(Debug, Clone, PartialEq)]
pub struct MinimumUnit {
    value: f64,
    exact: Option<BigRational>,
}

impl MinimumUnit {
    pub fn new(value: f64) -> Result<Self> {
        if value <= 0.0 || !value.is_finite() {
            return Err(Error::InvalidUnit(value));
        }
        Ok(Self { value, exact: None })
    }

    /// Parse a decimal string such as `"0.01"` into a unit, keeping the
    /// exact rational representation.
    pub fn from_decimal(text: &str) -> Result<Self> {
        let exact = decimal::parse_rational(text)?;
        let value = exact.to_f64().ok_or(Error::MalformedDecimal(text.to_owned()))?;
        if value <= 0.0 || !value.is_finite() {
            return Err(Error::InvalidUnit(value));
        }
        Ok(Self { value, exact: Some(exact) })
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    /// The exact rational value, when the unit was supplied as one.
    pub fn exact(&self) -> Option<&BigRational> {
        self.exact.as_ref()
    }
}

/// Complex amplitudes on a 1-D periodic ring of sites `0..len`, stored in
/// polar form with the phase on the double cover.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveFunction {
    modulus: Vec<f64>,
    phase: Vec<f64>,
    phase_radius: f64,
}

impl WaveFunction {
    /// Build from per-site moduli and phases. Phases may be any finite
    /// reals; they are reduced into `[0, 4π·phase_radius)`.
    pub fn from_polar(modulus: Vec<f64>, phase: Vec<f64>, phase_radius: f64) -> Result<Self> {
        if modulus.is_empty() {
            return Err(Error::EmptySites);
        }
        if modulus.len() != phase.len() {
            return Err(Error::LengthMismatch { left: modulus.len(), right: phase.len() });
        }
        if phase_radius <= 0.0 || !phase_radius.is_finite() {
            return Err(Error::InvalidPhaseRadius(phase_radius));
        }
        for &m in &modulus {
            if m < 0.0 || !m.is_finite() {
                return Err(Error::InvalidModulus(m));
            }
        }
        let span = 2.0 * TAU * phase_radius;
        let phase = phase
            .into_iter()
            .map(|p| {
                if !p.is_finite() {
                    return Err(Error::NonFinitePhase(p));
                }
                Ok(reduce_phase(p, span))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { modulus, phase, phase_radius })
    }

    /// Build from complex amplitudes, choosing the phase on the principal
    /// sheet with phase radius 1. A zero amplitude gets phase 0.
    pub fn from_cartesian(amplitudes: &[Complex64]) -> Result<Self> {
        Self::from_cartesian_with_radius(amplitudes, 1.0)
    }

    /// As [`from_cartesian`](Self::from_cartesian) but with an explicit
    /// phase radius; the complex values are identical for any radius.
    pub fn from_cartesian_with_radius(amplitudes: &[Complex64], phase_radius: f64) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::EmptySites);
        }
        let mut modulus = Vec::with_capacity(amplitudes.len());
        let mut phase = Vec::with_capacity(amplitudes.len());
        for (site, amp) in amplitudes.iter().enumerate() {
            if !amp.re.is_finite() || !amp.im.is_finite() {
                return Err(Error::NonFiniteAmplitude(site));
            }
            modulus.push(amp.norm());
            // atan2 of the zero amplitude is 0, matching the convention.
            let mut angle = amp.arg();
            if angle < 0.0 {
                angle += TAU;
            }
            phase.push(2.0 * phase_radius * angle);
        }
        Self::from_polar(modulus, phase, phase_radius)
    }

    pub fn num_sites(&self) -> usize {
        self.modulus.len()
    }

    /// Position labels of the ring, in order.
    pub fn sites(&self) -> std::ops::Range<usize> {
        0..self.modulus.len()
    }

    pub fn modulus(&self) -> &[f64] {
        &self.modulus
    }

    pub fn phase(&self) -> &[f64] {
        &self.phase
    }

    pub fn phase_radius(&self) -> f64 {
        self.phase_radius
    }

    /// Modulus at a cyclic site index (site `len` is site 0 again).
    pub fn modulus_at(&self, site: i64) -> f64 {
        self.modulus[self.wrap(site)]
    }

    /// Phase at a cyclic site index.
    pub fn phase_at(&self, site: i64) -> f64 {
        self.phase[self.wrap(site)]
    }

    /// Complex value `modulus · exp(i·phase / 2R_θ)` at a cyclic site index.
    pub fn value(&self, site: i64) -> Complex64 {
        let i = self.wrap(site);
        Complex64::from_polar(self.modulus[i], self.phase[i] / (2.0 * self.phase_radius))
    }

    /// Complex values at every site, in order.
    pub fn values(&self) -> Vec<Complex64> {
        self.sites().map(|x| self.value(x as i64)).collect()
    }

    /// A copy with every phase shifted by `delta`, reduced back into the
    /// double cover. Moduli are untouched.
    pub fn shift_phase(&self, delta: f64) -> WaveFunction {
        let span = 2.0 * TAU * self.phase_radius;
        WaveFunction {
            modulus: self.modulus.clone(),
            phase: self.phase.iter().map(|&p| reduce_phase(p + delta, span)).collect(),
            phase_radius: self.phase_radius,
        }
    }

    fn wrap(&self, site: i64) -> usize {
        (site as i128).rem_euclid(self.modulus.len() as i128) as usize
    }
}

fn reduce_phase(phase: f64, span: f64) -> f64 {
    let reduced = phase.rem_euclid(span);
    // rem_euclid can land on `span` itself when rounding a tiny negative.
    if reduced >= span {
        0.0
    } else {
        reduced
    }
}

/// Number of elementary states carried by a modulus: `round(2π·R_w / u)`,
/// rounding half to even.
pub fn state_count(modulus: f64, unit: &MinimumUnit) -> Result<u64> {
    if modulus < 0.0 || !modulus.is_finite() {
        return Err(Error::InvalidModulus(modulus));
    }
    let scaled = TAU * modulus / unit.value();
    let rounded = scaled.round_ties_even();
    if !rounded.is_finite() || rounded >= u64::MAX as f64 {
        return Err(Error::CountOverflow(scaled));
    }
    Ok(rounded as u64)
}

/// Per-site elementary-state counts at one time slice.
///
/// Counts depend only on the moduli; the phase never enters.
#[derive(Debug, Clone, PartialEq)]
pub struct StateCensus {
    counts: BTreeMap<usize, u64>,
    unit: MinimumUnit,
    time_index: i64,
}

impl StateCensus {
    /// Build directly from a count list; position `i` gets `counts[i]`.
    pub fn from_counts(counts: &[u64], unit: MinimumUnit, time_index: i64) -> Self {
        Self {
            counts: counts.iter().copied().enumerate().collect(),
            unit,
            time_index,
        }
    }

    pub fn counts(&self) -> &BTreeMap<usize, u64> {
        &self.counts
    }

    /// Count at a position; absent positions count zero.
    pub fn count(&self, x: usize) -> u64 {
        self.counts.get(&x).copied().unwrap_or(0)
    }

    /// Counts as a list ordered by position.
    pub fn count_list(&self) -> Vec<u64> {
        self.counts.values().copied().collect()
    }

    pub fn unit(&self) -> &MinimumUnit {
        &self.unit
    }

    pub fn time_index(&self) -> i64 {
        self.time_index
    }

    pub fn total_states(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn is_all_zero(&self) -> bool {
        self.counts.values().all(|&m| m == 0)
    }
}

/// Count elementary states at every site of a wave function.
pub fn census(wf: &WaveFunction, unit: &MinimumUnit, time_index: i64) -> Result<StateCensus> {
    let counts = wf
        .sites()
        .map(|x| Ok((x, state_count(wf.modulus()[x], unit)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(StateCensus { counts, unit: unit.clone(), time_index })
}

/// A nonnegative number of full loops around the phase circle.
///
/// The parity factor is exactly `+1` for an even loop count and `-1` for
/// an odd one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LoopParity(pub u32);

impl LoopParity {
    pub fn new(loops: u32) -> Self {
        Self(loops)
    }

    pub fn loops(&self) -> u32 {
        self.0
    }

    /// `(-1)^k` as an exact integer sign.
    pub fn factor(&self) -> i32 {
        if self.0.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl From<u32> for LoopParity {
    fn from(loops: u32) -> Self {
        Self(loops)
    }
}

/// Sign contributed by `k` full phase loops: `(-1)^k`, exact.
///
/// Adjacent loop counts carry opposite signs, so one loop and two loops
/// cancel in superposition.
pub fn loop_phase_factor(k: LoopParity) -> i32 {
    k.factor()
}

/// Superpose contributions with the given loop counts over one modulus:
/// `modulus · Σ (-1)^k`. Pairs of adjacent loop counts contribute zero.
pub fn mobius_superposition(base_modulus: f64, loop_counts: &[u32]) -> f64 {
    let sum: i64 = loop_counts
        .iter()
        .map(|&k| loop_phase_factor(LoopParity::new(k)) as i64)
        .sum();
    base_modulus * sum as f64
}
