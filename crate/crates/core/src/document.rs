//! Wave-function input documents.
//!
//! A document is a JSON object with an optional minimum unit `u` and
//! phase radius `phase_radius` (both decimal strings, parsed as exact
//! rationals, or plain numbers), and the amplitudes in one of two shapes:
//!
//! ```json
//! { "u": "0.1", "phase_radius": "1",
//!   "amplitudes": { "cartesian": [[0.6, 0.0], [0.8, 0.0]] } }
//! ```
//!
//! ```json
//! { "u": "0.1",
//!   "amplitudes": { "polar": { "modulus": [0.6, 0.8], "phase": [0.0, 3.1] } } }
//! ```

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::Deserialize;

use crate::decimal;
use crate::error::{Error, Result};
use crate::wave::{MinimumUnit, WaveFunction};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    #[serde(default)]
    u: Option<DecimalValue>,
    #[serde(default)]
    phase_radius: Option<DecimalValue>,
    amplitudes: RawAmplitudes,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum DecimalValue {
    Text(String),
    Number(f64),
}

impl DecimalValue {
    fn to_f64(&self) -> Result<f64> {
        match self {
            // via the exact rational, so "0.1" and 0.1 agree
            Self::Text(s) => decimal::parse_rational(s)?
                .to_f64()
                .ok_or_else(|| Error::MalformedDecimal(s.clone())),
            Self::Number(v) => Ok(*v),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "lowercase")]
enum RawAmplitudes {
    Cartesian(Vec<[f64; 2]>),
    Polar { modulus: Vec<f64>, phase: Vec<f64> },
}

/// Per-site amplitudes of a parsed document.
#[derive(Debug, Clone, PartialEq)]
pub enum Amplitudes {
    Cartesian(Vec<Complex64>),
    Polar { modulus: Vec<f64>, phase: Vec<f64> },
}

/// A parsed wave-function document.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveDocument {
    unit: Option<MinimumUnit>,
    phase_radius: Option<f64>,
    amplitudes: Amplitudes,
}

impl WaveDocument {
    /// Parse a JSON document.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawDocument =
            serde_json::from_str(text).map_err(|e| Error::MalformedDocument(e.to_string()))?;

        let unit = match &raw.u {
            Some(DecimalValue::Text(s)) => Some(MinimumUnit::from_decimal(s)?),
            Some(DecimalValue::Number(v)) => Some(MinimumUnit::new(*v)?),
            None => None,
        };
        let phase_radius = raw.phase_radius.as_ref().map(|v| v.to_f64()).transpose()?;

        let amplitudes = match raw.amplitudes {
            RawAmplitudes::Cartesian(pairs) => Amplitudes::Cartesian(
                pairs.iter().map(|&[re, im]| Complex64::new(re, im)).collect(),
            ),
            RawAmplitudes::Polar { modulus, phase } => Amplitudes::Polar { modulus, phase },
        };

        Ok(Self { unit, phase_radius, amplitudes })
    }

    /// The document's minimum unit, when present.
    pub fn unit(&self) -> Option<&MinimumUnit> {
        self.unit.as_ref()
    }

    /// The document's phase radius; defaults to 1 when absent.
    pub fn phase_radius(&self) -> f64 {
        self.phase_radius.unwrap_or(1.0)
    }

    pub fn amplitudes(&self) -> &Amplitudes {
        &self.amplitudes
    }

    /// Build the wave function the document describes.
    pub fn wave_function(&self) -> Result<WaveFunction> {
        let radius = self.phase_radius();
        match &self.amplitudes {
            Amplitudes::Cartesian(amps) => WaveFunction::from_cartesian_with_radius(amps, radius),
            Amplitudes::Polar { modulus, phase } => {
                WaveFunction::from_polar(modulus.clone(), phase.clone(), radius)
            }
        }
    }
}
