//! Deterministic Monte Carlo sweeps.
//!
//! Trial `t` draws one channel from `SimRng::for_trial(seed, t)`. That
//! channel is shared by every scheme and every SNR point, so scheme
//! comparisons are paired. Precoders do not depend on transmit power: each
//! scheme's precoder is built once per trial and its coupling gains are
//! reused across the SNR grid. Trials run on the ambient rayon pool and are
//! reduced in trial-index order, so results are bit-identical for any worker
//! count.

mod config;
mod coupling;
mod csv;

pub use config::{parse_schemes, parse_snr_grid, ChannelKind, Scheme, SimulationConfig};
pub use coupling::{coupling_statistics, write_coupling_csv, CouplingStatistics};
pub use csv::{format_significant, write_bound_csv, write_csv, BOUND_HEADER, CSV_HEADER};

use rayon::prelude::*;

use crate::analysis::{fczf_asymptotic_rate, pzf_rate_bound, SystemScale};
use crate::channels::{mmwave_channel, rayleigh_channel, ChannelMatrix};
use crate::error::{Error, Result};
use crate::metrics::{db_to_linear, sum_spectral_efficiency, CouplingGains, LinkBudget};
use crate::numerics::{ComplexMatrix, SimRng};
use crate::precoders::{bmimo_precoder, full_zf, pzf, QuantizationSpec};

/// Version tag carried by every result.
pub const ARTIFACT_VERSION: &str = concat!("pzf ", env!("CARGO_PKG_VERSION"));

/// Channel realization of trial `trial`.
pub fn trial_channel(config: &SimulationConfig, trial: u64) -> Result<ChannelMatrix> {
    let mut rng = SimRng::for_trial(config.seed, trial);
    match config.channel {
        ChannelKind::Rayleigh => rayleigh_channel(&mut rng, config.users, config.antennas),
        ChannelKind::Mmwave => {
            mmwave_channel(&mut rng, config.users, config.antennas, &config.mmwave_params())
        }
    }
}

/// Total `N_t x K` precoder of `scheme` for channel `h`.
pub fn scheme_precoder(
    scheme: Scheme,
    h: &ChannelMatrix,
    config: &SimulationConfig,
) -> Result<ComplexMatrix> {
    Ok(match scheme {
        Scheme::Pzf => pzf(h, None)?.total(),
        Scheme::PzfQuantized { bits } => {
            let spec = QuantizationSpec::new(bits, config.phase_distance())?;
            pzf(h, Some(&spec))?.total()
        }
        Scheme::Fczf => full_zf(h)?.matrix().clone(),
        Scheme::Bmimo => bmimo_precoder(h, config.beam_spacing())?.precoder.total(),
    })
}

/// Outcome of one trial.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialRecord {
    pub channel_checksum: u64,
    /// Indexed like `config.schemes`; `None` when the scheme hit a singular
    /// matrix on this channel. Inner vectors follow `config.snr_grid_db`.
    pub sum_se: Vec<Option<Vec<f64>>>,
}

/// Per-trial sum spectral efficiencies of every scheme at every SNR point.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialRecords {
    pub schemes: Vec<Scheme>,
    pub snr_grid_db: Vec<f64>,
    pub trials: Vec<TrialRecord>,
}

impl TrialRecords {
    fn scheme_index(&self, scheme: Scheme) -> Option<usize> {
        self.schemes.iter().position(|&s| s == scheme)
    }

    fn snr_index(&self, snr_db: f64) -> Option<usize> {
        self.snr_grid_db.iter().position(|&s| s == snr_db)
    }

    /// Sum SE of `scheme` at `snr_db` for every non-singular trial, in trial
    /// order (`None` for singular trials, so series stay aligned).
    pub fn series(&self, scheme: Scheme, snr_db: f64) -> Option<Vec<Option<f64>>> {
        let s = self.scheme_index(scheme)?;
        let p = self.snr_index(snr_db)?;
        Some(
            self.trials
                .iter()
                .map(|t| t.sum_se[s].as_ref().map(|v| v[p]))
                .collect(),
        )
    }

    pub fn singular_count(&self, scheme: Scheme) -> usize {
        self.scheme_index(scheme)
            .map(|s| self.trials.iter().filter(|t| t.sum_se[s].is_none()).count())
            .unwrap_or(0)
    }
}

fn run_trial(config: &SimulationConfig, trial: u64) -> Result<TrialRecord> {
    let h = trial_channel(config, trial)?;
    let budgets = config
        .snr_grid_db
        .iter()
        .map(|&db| LinkBudget::from_db(db, config.users))
        .collect::<Result<Vec<_>>>()?;
    let mut sum_se = Vec::with_capacity(config.schemes.len());
    for &scheme in &config.schemes {
        let total = match scheme_precoder(scheme, &h, config) {
            Ok(t) => t,
            Err(Error::SingularMatrix { .. }) => {
                sum_se.push(None);
                continue;
            }
            Err(e) => return Err(e),
        };
        let gains = CouplingGains::new(&h, &total)?;
        let per_snr = budgets
            .iter()
            .map(|b| sum_spectral_efficiency(&gains.sinrs(b)?))
            .collect::<Result<Vec<_>>>()?;
        sum_se.push(Some(per_snr));
    }
    Ok(TrialRecord {
        channel_checksum: h.checksum(),
        sum_se,
    })
}

/// Runs every trial of `config` without aggregating.
pub fn run_trials(config: &SimulationConfig) -> Result<TrialRecords> {
    config.validate()?;
    let trials = (0..config.trials as u64)
        .into_par_iter()
        .map(|t| run_trial(config, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(TrialRecords {
        schemes: config.schemes.clone(),
        snr_grid_db: config.snr_grid_db.clone(),
        trials,
    })
}

/// Statistics of one (scheme, SNR) cell.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepCell {
    pub scheme: Scheme,
    pub snr_db: f64,
    /// Non-singular trials contributing to the mean.
    pub trials: usize,
    pub se_mean: f64,
    /// Sample standard deviation over `√trials` (0 for a single trial).
    pub se_stderr: f64,
}

/// Closed-form Rayleigh rates at one SNR point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClosedForm {
    pub snr_db: f64,
    pub pzf_bound: f64,
    pub fczf_asymptotic: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    /// Scheme-major, in config order.
    pub cells: Vec<SweepCell>,
    pub closed_form: Option<Vec<ClosedForm>>,
    pub singular_trials: Vec<(Scheme, usize)>,
    pub config: SimulationConfig,
    pub version: &'static str,
}

impl SweepResult {
    pub fn cell(&self, scheme: Scheme, snr_db: f64) -> Option<&SweepCell> {
        self.cells
            .iter()
            .find(|c| c.scheme == scheme && c.snr_db == snr_db)
    }

    pub fn closed_form_at(&self, snr_db: f64) -> Option<&ClosedForm> {
        self.closed_form.as_ref()?.iter().find(|c| c.snr_db == snr_db)
    }
}

/// Sample mean and standard error of the mean, accumulated in slice order.
pub fn mean_and_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}

/// Closed-form columns for every SNR point of `config`.
pub fn closed_form_rates(config: &SimulationConfig) -> Result<Vec<ClosedForm>> {
    config
        .snr_grid_db
        .iter()
        .map(|&snr_db| {
            let scale = SystemScale::new(config.antennas, config.users, db_to_linear(snr_db))?;
            Ok(ClosedForm {
                snr_db,
                pzf_bound: pzf_rate_bound(&scale),
                fczf_asymptotic: fczf_asymptotic_rate(&scale),
            })
        })
        .collect()
}

/// Aggregates trial records; fails if any scheme was singular on more than
/// 1% of trials.
pub fn aggregate(config: &SimulationConfig, records: &TrialRecords) -> Result<SweepResult> {
    let total = records.trials.len();
    let mut cells = Vec::with_capacity(config.schemes.len() * config.snr_grid_db.len());
    let mut singular_trials = Vec::new();
    for &scheme in &config.schemes {
        let singular = records.singular_count(scheme);
        if singular * 100 > total {
            return Err(Error::SingularTrials {
                scheme: scheme.to_string(),
                singular,
                trials: total,
            });
        }
        singular_trials.push((scheme, singular));
        for &snr_db in &config.snr_grid_db {
            let values: Vec<f64> = records
                .series(scheme, snr_db)
                .unwrap_or_default()
                .into_iter()
                .flatten()
                .collect();
            let (se_mean, se_stderr) = mean_and_stderr(&values);
            cells.push(SweepCell {
                scheme,
                snr_db,
                trials: values.len(),
                se_mean,
                se_stderr,
            });
        }
    }
    let closed_form = if config.emit_closed_form {
        Some(closed_form_rates(config)?)
    } else {
        None
    };
    Ok(SweepResult {
        cells,
        closed_form,
        singular_trials,
        config: config.clone(),
        version: ARTIFACT_VERSION,
    })
}

/// Monte Carlo sweep over every (scheme, SNR) pair of `config`.
pub fn run_sweep(config: &SimulationConfig) -> Result<SweepResult> {
    let records = run_trials(config)?;
    aggregate(config, &records)
}

/// Runs `f` on a dedicated pool of `threads` workers (`0` = rayon default).
pub fn with_threads<T, F>(threads: usize, f: F) -> Result<T>
where
    T: Send,
    F: FnOnce() -> T + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Config(format!("cannot build thread pool: {e}")))?;
    Ok(pool.install(f))
}
