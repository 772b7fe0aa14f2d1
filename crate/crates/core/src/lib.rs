//! Event counting on a discrete torus, reproducing quantum probability.
//!
//! Wave-function moduli quantize into integer elementary-state counts
//! `m = round(2π·R_w / u)` for a common minimum unit `u`. States pair
//! into elementary events across adjacent time slices within each
//! position fiber, every possible event exists exactly once, and the
//! normalized event counts `m_x² / Σ m_j²` are the measurement
//! probabilities: an exact rational identity with the Born rule on
//! integer amplitudes, and a convergent approximation of it as `u → 0`
//! for real ones.
//!
//! Modules:
//!
//! - [`wave`] — geometric wave functions, the minimum unit, state
//!   censuses, and the half-angle phase algebra on the double cover.
//! - [`torus`] — the discrete 4-torus, elementary-state and
//!   elementary-event enumeration, exact event counts.
//! - [`probability`] — exact event probabilities, the Born reference,
//!   and convergence sweeps.
//! - [`sampler`] — reproducible uniform sampling over the event multiset.
//! - [`document`] — the JSON wave-function input format.

mod decimal;
mod error;

pub mod document;
pub mod probability;
pub mod sampler;
pub mod torus;
pub mod wave;

pub use document::{Amplitudes, WaveDocument};
pub use error::{Error, Result};
pub use probability::{
    born_probability, convergence_sweep, discretization_error, event_probability_at,
    exact_event_probability, product_event_probability, ConvergenceRecord,
    ProbabilityDistribution,
};
pub use sampler::{frequency_deviation, sample_events, SampleReport};
pub use torus::{
    enumerate_events, enumerate_events_capped, enumerate_states, event_count,
    stationary_event_count, ElementaryEvent, ElementaryState, EventCensus, TorusLattice,
    DEFAULT_EVENT_CAP,
};
pub use wave::{
    census, loop_phase_factor, mobius_superposition, state_count, LoopParity, MinimumUnit,
    StateCensus, WaveFunction,
};
