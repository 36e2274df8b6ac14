//! Per-user SINR and instantaneous sum spectral efficiency.

use crate::channels::ChannelMatrix;
use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;

/// Total transmit power `P` (linear, unit noise variance) split evenly over
/// `K` streams.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinkBudget {
    power: f64,
    users: usize,
}

impl LinkBudget {
    pub fn new(power: f64, users: usize) -> Result<Self> {
        if !(power > 0.0 && power.is_finite()) {
            return Err(Error::Domain(format!(
                "transmit power must be positive and finite, got {power}"
            )));
        }
        if users == 0 {
            return Err(Error::Domain("link budget needs at least one user".into()));
        }
        Ok(Self { power, users })
    }

    /// `P = 10^{snr_db/10}`.
    pub fn from_db(snr_db: f64, users: usize) -> Result<Self> {
        Self::new(db_to_linear(snr_db), users)
    }

    pub fn power(&self) -> f64 {
        self.power
    }

    pub fn users(&self) -> usize {
        self.users
    }

    pub fn per_user_power(&self) -> f64 {
        self.power / self.users as f64
    }
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// `|h_kᴴ t_j|²` for every user `k` and stream `j`.
///
/// Precoders here do not depend on transmit power, so one set of gains
/// serves every SNR point.
#[derive(Clone, Debug)]
pub struct CouplingGains {
    users: usize,
    gains: Vec<f64>,
}

impl CouplingGains {
    pub fn new(h: &ChannelMatrix, total_precoder: &ComplexMatrix) -> Result<Self> {
        let (k, n) = (h.users(), h.antennas());
        if total_precoder.rows() != n || total_precoder.cols() != k {
            return Err(Error::Dimension(format!(
                "precoder is {}x{}, expected {n}x{k} for this channel",
                total_precoder.rows(),
                total_precoder.cols()
            )));
        }
        let product = h.matrix().matmul(total_precoder)?;
        Ok(Self {
            users: k,
            gains: product.as_slice().iter().map(|z| z.norm_sqr()).collect(),
        })
    }

    pub fn gain(&self, user: usize, stream: usize) -> f64 {
        self.gains[user * self.users + stream]
    }

    /// `SINR_k = ρ|h_kᴴt_k|² / (1 + Σ_{j≠k} ρ|h_kᴴt_j|²)` with `ρ = P/K`.
    pub fn sinrs(&self, budget: &LinkBudget) -> Result<Vec<f64>> {
        if budget.users() != self.users {
            return Err(Error::Dimension(format!(
                "link budget is for {} users, channel has {}",
                budget.users(),
                self.users
            )));
        }
        let rho = budget.per_user_power();
        Ok((0..self.users)
            .map(|k| {
                let row = &self.gains[k * self.users..(k + 1) * self.users];
                let interference: f64 = row
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != k)
                    .map(|(_, g)| g)
                    .sum();
                rho * row[k] / (1.0 + rho * interference)
            })
            .collect())
    }
}

/// SINR of every user for the total `N_t x K` precoder (`F·W` for hybrid
/// schemes).
pub fn sinr_per_user(
    h: &ChannelMatrix,
    total_precoder: &ComplexMatrix,
    budget: &LinkBudget,
) -> Result<Vec<f64>> {
    CouplingGains::new(h, total_precoder)?.sinrs(budget)
}

/// `Σ_k log₂(1 + SINR_k)` in bits/s/Hz.
pub fn sum_spectral_efficiency(sinrs: &[f64]) -> Result<f64> {
    sinrs.iter().try_fold(0.0, |acc, &s| {
        if s >= 0.0 {
            Ok(acc + s.ln_1p() / std::f64::consts::LN_2)
        } else {
            Err(Error::Domain(format!("SINR must be non-negative, got {s}")))
        }
    })
}
