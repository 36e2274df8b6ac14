use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::channels::MmWaveParams;
use crate::error::{Error, Result};
use crate::precoders::{PhaseDistance, QuantizationSpec};

/// Channel model drawn for every trial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChannelKind {
    Rayleigh,
    Mmwave,
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChannelKind::Rayleigh => "rayleigh",
            ChannelKind::Mmwave => "mmwave",
        })
    }
}

impl FromStr for ChannelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rayleigh" => Ok(ChannelKind::Rayleigh),
            "mmwave" => Ok(ChannelKind::Mmwave),
            other => Err(Error::Config(format!(
                "unknown channel '{other}' (expected rayleigh or mmwave)"
            ))),
        }
    }
}

/// Precoding scheme. The textual form doubles as the CSV `scheme` label:
/// `pzf`, `pzf_q<B>`, `fczf`, `bmimo`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Scheme {
    Pzf,
    PzfQuantized { bits: u8 },
    Fczf,
    Bmimo,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scheme::Pzf => f.write_str("pzf"),
            Scheme::PzfQuantized { bits } => write!(f, "pzf_q{bits}"),
            Scheme::Fczf => f.write_str("fczf"),
            Scheme::Bmimo => f.write_str("bmimo"),
        }
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pzf" => Ok(Scheme::Pzf),
            "fczf" => Ok(Scheme::Fczf),
            "bmimo" => Ok(Scheme::Bmimo),
            _ => {
                let bits = s
                    .strip_prefix("pzf_q")
                    .and_then(|b| b.parse::<u8>().ok())
                    .ok_or_else(|| {
                        Error::Config(format!(
                            "unknown scheme '{s}' (expected pzf, pzf_q<bits>, fczf or bmimo)"
                        ))
                    })?;
                QuantizationSpec::new(bits, PhaseDistance::Circular)?;
                Ok(Scheme::PzfQuantized { bits })
            }
        }
    }
}

impl TryFrom<String> for Scheme {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Scheme> for String {
    fn from(s: Scheme) -> String {
        s.to_string()
    }
}

/// Comma-separated scheme list, e.g. `pzf,pzf_q2,fczf`.
pub fn parse_schemes(list: &str) -> Result<Vec<Scheme>> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect()
}

/// SNR grid in dB: `start:step:stop` (inclusive), a comma list, or a single
/// value.
pub fn parse_snr_grid(spec: &str) -> Result<Vec<f64>> {
    let bad = || Error::Config(format!("invalid SNR grid '{spec}'"));
    let number = |s: &str| s.trim().parse::<f64>().map_err(|_| bad());
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        [start, step, stop] => {
            let (start, step, stop) = (number(start)?, number(step)?, number(stop)?);
            if step.is_nan() || step <= 0.0 || stop < start || !start.is_finite() || !stop.is_finite() {
                return Err(bad());
            }
            let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
            if count > 100_000 {
                return Err(bad());
            }
            Ok((0..count).map(|i| start + i as f64 * step).collect())
        }
        [list] => list.split(',').map(number).collect(),
        _ => Err(bad()),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum SnrGridField {
    Spec(String),
    Values(Vec<f64>),
}

/// Full description of a Monte Carlo sweep.
///
/// Config files are flat TOML documents using the field names below, e.g.
///
/// ```toml
/// antennas = 128
/// users = 4
/// channel = "mmwave"
/// mmwave_paths = 10
/// mmwave_spacing = 0.5
/// snr_db = "-10:2:10"     # or an explicit list: [-10.0, 0.0, 10.0]
/// trials = 1000
/// seed = 42
/// schemes = ["pzf", "pzf_q2", "fczf", "bmimo"]
/// quant_circular = true
/// emit_closed_form = true
/// ```
///
/// Omitted keys take the [`Default`] values (128 antennas, 4 users, Rayleigh,
/// -10..10 dB in 2 dB steps, 1000 trials, seed 0, PZF and full ZF).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SimulationConfig {
    pub antennas: usize,
    pub users: usize,
    pub channel: ChannelKind,
    pub mmwave_paths: usize,
    pub mmwave_spacing: f64,
    #[serde(rename = "snr_db", with = "snr_serde")]
    pub snr_grid_db: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub schemes: Vec<Scheme>,
    /// Wrap-around phase distance for quantization (`false` uses the plain
    /// absolute difference, treating 0 and 2π as far apart).
    pub quant_circular: bool,
    pub emit_closed_form: bool,
    /// Permit the beamspace baseline on Rayleigh channels.
    pub allow_bmimo_rayleigh: bool,
}

mod snr_serde {
    use super::{parse_snr_grid, SnrGridField};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[f64], s: S) -> Result<S::Ok, S::Error> {
        SnrGridField::Values(v.to_vec()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
        match SnrGridField::deserialize(d)? {
            SnrGridField::Values(v) => Ok(v),
            SnrGridField::Spec(s) => parse_snr_grid(&s).map_err(serde::de::Error::custom),
        }
    }
}

impl Default for SimulationConfig {
    fn default() -> Self {
        let mm = MmWaveParams::default();
        Self {
            antennas: 128,
            users: 4,
            channel: ChannelKind::Rayleigh,
            mmwave_paths: mm.paths,
            mmwave_spacing: mm.spacing,
            snr_grid_db: (0..=10).map(|i| -10.0 + 2.0 * i as f64).collect(),
            trials: 1000,
            seed: 0,
            schemes: vec![Scheme::Pzf, Scheme::Fczf],
            quant_circular: true,
            emit_closed_form: false,
            allow_bmimo_rayleigh: false,
        }
    }
}

impl SimulationConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(format!("invalid config: {}", e.message())))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::Config(format!("cannot read config {}: {e}", path.display()))
        })?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn mmwave_params(&self) -> MmWaveParams {
        MmWaveParams {
            paths: self.mmwave_paths,
            spacing: self.mmwave_spacing,
        }
    }

    pub fn phase_distance(&self) -> PhaseDistance {
        if self.quant_circular {
            PhaseDistance::Circular
        } else {
            PhaseDistance::Literal
        }
    }

    /// Spacing handed to the beamspace baseline.
    pub fn beam_spacing(&self) -> f64 {
        self.mmwave_spacing
    }

    pub fn validate(&self) -> Result<()> {
        if self.users == 0 || self.antennas == 0 {
            return Err(Error::Config("users and antennas must be at least 1".into()));
        }
        if self.users > self.antennas {
            return Err(Error::Config("users must not exceed antennas".into()));
        }
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.snr_grid_db.is_empty() {
            return Err(Error::Config("SNR grid must not be empty".into()));
        }
        if self.snr_grid_db.iter().any(|s| !s.is_finite()) {
            return Err(Error::Config("SNR grid values must be finite".into()));
        }
        if self.snr_grid_db.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config("SNR grid must be strictly increasing".into()));
        }
        for (i, s) in self.schemes.iter().enumerate() {
            if self.schemes[..i].contains(s) {
                return Err(Error::Config(format!("scheme {s} listed twice")));
            }
        }
        if self.channel == ChannelKind::Mmwave || self.schemes.contains(&Scheme::Bmimo) {
            self.mmwave_params().validate()?;
        }
        if self.schemes.contains(&Scheme::Bmimo)
            && self.channel != ChannelKind::Mmwave
            && !self.allow_bmimo_rayleigh
        {
            return Err(Error::Config(
                "bmimo requires the mmwave channel (override with allow_bmimo_rayleigh)".into(),
            ));
        }
        Ok(())
    }
}
