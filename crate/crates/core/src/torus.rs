//! Discrete 4-torus enumeration: elementary states and elementary events.
//!
//! A lattice point `(w, θ, x, t)` is an elementary state; the same state
//! exists only once, so enumeration yields sets. An elementary event is an
//! ordered pair of states on adjacent time slices within one position
//! fiber, and every possible event exists: a fiber with `m` states at `t`
//! and `m'` at `t+1` carries exactly `m·m'` events (`m²` when stationary).
//!
//! Event counts grow as `1/u²`, so explicit materialization is capped
//! (default [`DEFAULT_EVENT_CAP`]); probabilities only ever need the
//! counts, which are exact big integers.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::wave::{MinimumUnit, StateCensus};

/// Materialization limit for [`enumerate_events`].
pub const DEFAULT_EVENT_CAP: u64 = 1_000_000;

/// Discrete torus with periodic θ, x and t circles.
///
/// The w-circle size is per-(θ,x,t): it is the state count from the
/// census, not a fixed lattice dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusLattice {
    n_theta: usize,
    n_x: usize,
    n_t: usize,
    unit: MinimumUnit,
}

impl TorusLattice {
    pub fn new(n_theta: usize, n_x: usize, n_t: usize, unit: MinimumUnit) -> Result<Self> {
        if n_theta == 0 {
            return Err(Error::ZeroLatticeSize("theta"));
        }
        if n_x == 0 {
            return Err(Error::ZeroLatticeSize("x"));
        }
        if n_t == 0 {
            return Err(Error::ZeroLatticeSize("t"));
        }
        Ok(Self { n_theta, n_x, n_t, unit })
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn n_x(&self) -> usize {
        self.n_x
    }

    pub fn n_t(&self) -> usize {
        self.n_t
    }

    pub fn unit(&self) -> &MinimumUnit {
        &self.unit
    }

    pub fn wrap_theta(&self, index: i64) -> usize {
        wrap(index, self.n_theta)
    }

    pub fn wrap_x(&self, index: i64) -> usize {
        wrap(index, self.n_x)
    }

    pub fn wrap_t(&self, index: i64) -> usize {
        wrap(index, self.n_t)
    }
}

fn wrap(index: i64, size: usize) -> usize {
    (index as i128).rem_euclid(size as i128) as usize
}

/// One lattice point `(w, θ, x, t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ElementaryState {
    pub w: u64,
    pub theta: usize,
    pub x: usize,
    pub t: usize,
}

impl Ord for ElementaryState {
    // Canonical order by (x, w, theta), then t.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.x, self.w, self.theta, self.t).cmp(&(other.x, other.w, other.theta, other.t))
    }
}

impl PartialOrd for ElementaryState {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordered pair of elementary states on adjacent time slices, within one
/// position fiber.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementaryEvent {
    pub from: ElementaryState,
    pub to: ElementaryState,
}

/// Enumerate the elementary states of a census at one time slice: for each
/// position `x` with count `m`, the states `(w, θ(x), x, t)` for `w < m`.
///
/// Positions absent from `theta_of_x` sit at θ index 0. The result has
/// exactly `Σ_x m_x` states; materialize accordingly.
pub fn enumerate_states(
    lattice: &TorusLattice,
    census: &StateCensus,
    theta_of_x: &BTreeMap<usize, usize>,
    t: i64,
) -> Result<BTreeSet<ElementaryState>> {
    let t = lattice.wrap_t(t);
    let mut states = BTreeSet::new();
    for (&x, &m) in census.counts() {
        if x >= lattice.n_x() {
            return Err(Error::PositionOutOfRange { x, n_x: lattice.n_x() });
        }
        let theta = theta_of_x.get(&x).copied().unwrap_or(0);
        if theta >= lattice.n_theta() {
            return Err(Error::ThetaOutOfRange { theta, n_theta: lattice.n_theta() });
        }
        for w in 0..m {
            states.insert(ElementaryState { w, theta, x, t });
        }
    }
    Ok(states)
}

/// Enumerate every ordered pair `(s, s')` with `s.x = s'.x` between two
/// state sets on adjacent time slices, up to [`DEFAULT_EVENT_CAP`] events.
pub fn enumerate_events(
    states_t: &BTreeSet<ElementaryState>,
    states_next: &BTreeSet<ElementaryState>,
) -> Result<BTreeSet<ElementaryEvent>> {
    enumerate_events_capped(states_t, states_next, DEFAULT_EVENT_CAP)
}

/// As [`enumerate_events`] with an explicit materialization cap.
pub fn enumerate_events_capped(
    states_t: &BTreeSet<ElementaryState>,
    states_next: &BTreeSet<ElementaryState>,
    cap: u64,
) -> Result<BTreeSet<ElementaryEvent>> {
    check_uniform_time(states_t, "from")?;
    check_uniform_time(states_next, "to")?;

    let from_fibers = position_fibers(states_t);
    let to_fibers = position_fibers(states_next);

    let mut total: u128 = 0;
    for (x, from) in &from_fibers {
        if let Some(to) = to_fibers.get(x) {
            total += from.len() as u128 * to.len() as u128;
        }
    }
    if total > cap as u128 {
        return Err(Error::EventCapExceeded { total, cap });
    }

    let mut events = BTreeSet::new();
    for (x, from) in &from_fibers {
        if let Some(to) = to_fibers.get(x) {
            for &s in from {
                for &s_next in to {
                    events.insert(ElementaryEvent { from: s, to: s_next });
                }
            }
        }
    }
    Ok(events)
}

fn check_uniform_time(states: &BTreeSet<ElementaryState>, which: &'static str) -> Result<()> {
    let mut iter = states.iter();
    if let Some(first) = iter.next() {
        if iter.any(|s| s.t != first.t) {
            return Err(Error::MixedTimeIndices(which));
        }
    }
    Ok(())
}

fn position_fibers(states: &BTreeSet<ElementaryState>) -> BTreeMap<usize, Vec<ElementaryState>> {
    let mut fibers: BTreeMap<usize, Vec<ElementaryState>> = BTreeMap::new();
    for &s in states {
        fibers.entry(s.x).or_default().push(s);
    }
    fibers
}

/// Exact number of events between fibers of `m` and `m_prime` states.
pub fn event_count(m: u64, m_prime: u64) -> BigUint {
    BigUint::from(m) * BigUint::from(m_prime)
}

/// Stationary event count `m²` for a fiber paired with itself.
pub fn stationary_event_count(m: u64) -> BigUint {
    event_count(m, m)
}

/// Per-position event counts, exact at any scale.
#[derive(Debug, Clone, PartialEq)]
pub struct EventCensus {
    event_counts: BTreeMap<usize, BigUint>,
}

impl EventCensus {
    /// Event counts `m_x²` of a census paired with itself.
    pub fn stationary(census: &StateCensus) -> Self {
        Self {
            event_counts: census
                .counts()
                .iter()
                .map(|(&x, &m)| (x, stationary_event_count(m)))
                .collect(),
        }
    }

    /// Event counts `m_x·m'_x` between two censuses over the same positions.
    pub fn product(census_t: &StateCensus, census_next: &StateCensus) -> Result<Self> {
        if census_t.counts().keys().ne(census_next.counts().keys()) {
            return Err(Error::SupportMismatch);
        }
        Ok(Self {
            event_counts: census_t
                .counts()
                .iter()
                .map(|(&x, &m)| (x, event_count(m, census_next.count(x))))
                .collect(),
        })
    }

    pub fn counts(&self) -> &BTreeMap<usize, BigUint> {
        &self.event_counts
    }

    pub fn total_events(&self) -> BigUint {
        self.event_counts.values().sum()
    }
}
