use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;

use super::csv::format_significant;
use crate::channels::rayleigh_channel;
use crate::error::{Error, Result};
use crate::numerics::SimRng;
use crate::precoders::{effective_channel, pzf_rf};

/// Sample moments of the PZF coupling terms `h_kᴴ f_j` under Rayleigh fading.
///
/// Each trial draws two users, builds the PZF RF stage and records one
/// diagonal term `h_1ᴴ f_1` and one off-diagonal term `h_2ᴴ f_1`. Given
/// `f_1`, the latter depends only on `h_2`, so the two samples are
/// independent.
#[derive(Clone, Debug, PartialEq)]
pub struct CouplingStatistics {
    pub antennas: usize,
    pub samples: usize,
    pub diagonal_mean: f64,
    pub diagonal_variance: f64,
    pub off_diagonal_mean: Complex64,
    /// `𝔼|z - z̄|²`, the complex variance.
    pub off_diagonal_variance: f64,
}

impl CouplingStatistics {
    /// Large-array mean `√(πN_t)/2` of the diagonal term.
    pub fn diagonal_mean_limit(&self) -> f64 {
        (std::f64::consts::PI * self.antennas as f64).sqrt() / 2.0
    }

    /// Variance `1 - π/4` of the diagonal term.
    pub fn diagonal_variance_limit(&self) -> f64 {
        1.0 - std::f64::consts::FRAC_PI_4
    }
}

pub fn coupling_statistics(antennas: usize, trials: usize, seed: u64) -> Result<CouplingStatistics> {
    if antennas < 2 {
        return Err(Error::Config("coupling statistics need at least 2 antennas".into()));
    }
    if trials < 1000 {
        return Err(Error::Config("coupling statistics need at least 1000 trials".into()));
    }
    let samples = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = SimRng::for_trial(seed, t);
            let h = rayleigh_channel(&mut rng, 2, antennas)?;
            let g = effective_channel(&h, &pzf_rf(&h))?;
            Ok((g[(0, 0)].re, g[(1, 0)]))
        })
        .collect::<Result<Vec<(f64, Complex64)>>>()?;

    let n = samples.len() as f64;
    let diagonal_mean = samples.iter().map(|s| s.0).sum::<f64>() / n;
    let diagonal_variance =
        samples.iter().map(|s| (s.0 - diagonal_mean).powi(2)).sum::<f64>() / (n - 1.0);
    let off_diagonal_mean = samples.iter().map(|s| s.1).sum::<Complex64>() / n;
    let off_diagonal_variance = samples
        .iter()
        .map(|s| (s.1 - off_diagonal_mean).norm_sqr())
        .sum::<f64>()
        / (n - 1.0);
    Ok(CouplingStatistics {
        antennas,
        samples: samples.len(),
        diagonal_mean,
        diagonal_variance,
        off_diagonal_mean,
        off_diagonal_variance,
    })
}

pub const COUPLING_HEADER: &str = "antennas,samples,diag_mean,diag_var,diag_mean_limit,diag_var_limit,offdiag_mean_re,offdiag_mean_im,offdiag_var";

/// One-row CSV of the coupling moments and their large-array limits.
pub fn write_coupling_csv<W: Write>(stats: &CouplingStatistics, mut sink: W) -> Result<()> {
    let f = |x: f64| format_significant(x, 10);
    writeln!(sink, "{COUPLING_HEADER}")?;
    writeln!(
        sink,
        "{},{},{},{},{},{},{},{},{}",
        stats.antennas,
        stats.samples,
        f(stats.diagonal_mean),
        f(stats.diagonal_variance),
        f(stats.diagonal_mean_limit()),
        f(stats.diagonal_variance_limit()),
        f(stats.off_diagonal_mean.re),
        f(stats.off_diagonal_mean.im),
        f(stats.off_diagonal_variance)
    )?;
    sink.flush()?;
    Ok(())
}
