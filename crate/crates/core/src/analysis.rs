//! Closed-form large-array rates for Rayleigh fading.
//!
//! With PZF, `h_kᴴ f_k = Σ_i |h_ik| / √N_t` concentrates around
//! `√(πN_t)/2`, which gives the per-user bound `log₂(1 + (π/4)·P·N_t/K)`.
//! Full-complexity ZF converges to interference-free matched filtering, so
//! its rate is `K·𝔼[log₂(1 + (P/K)·‖h_k‖²)]` with `‖h_k‖²` a sum of `N_t`
//! unit-mean exponentials; that expectation has a closed form in
//! exponential integrals.

use std::f64::consts::{FRAC_PI_4, LOG2_E};

use crate::error::{Error, Result};
use crate::numerics::exponential_integral_scaled;

/// Array size, user count and linear transmit power.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SystemScale {
    antennas: usize,
    users: usize,
    power: f64,
}

impl SystemScale {
    pub fn new(antennas: usize, users: usize, power: f64) -> Result<Self> {
        if users == 0 || users > antennas {
            return Err(Error::Domain(format!(
                "need 1 <= users <= antennas, got users={users} antennas={antennas}"
            )));
        }
        if !(power > 0.0 && power.is_finite()) {
            return Err(Error::Domain(format!(
                "transmit power must be positive and finite, got {power}"
            )));
        }
        Ok(Self {
            antennas,
            users,
            power,
        })
    }

    pub fn antennas(&self) -> usize {
        self.antennas
    }

    pub fn users(&self) -> usize {
        self.users
    }

    pub fn power(&self) -> f64 {
        self.power
    }
}

/// `K·log₂(1 + (π/4)·P·N_t/K)`, the large-`N_t` upper bound on PZF sum rate.
pub fn pzf_rate_bound(scale: &SystemScale) -> f64 {
    let k = scale.users as f64;
    let snr = FRAC_PI_4 * scale.power * scale.antennas as f64 / k;
    k * snr.ln_1p() * LOG2_E
}

/// `K·log₂e·Σ_{n=1}^{N_t} e^{K/P}E_n(K/P)`, the large-`N_t` full-ZF sum rate.
pub fn fczf_asymptotic_rate(scale: &SystemScale) -> f64 {
    let k = scale.users as f64;
    let x = k / scale.power;
    let sum: f64 = (1..=scale.antennas as u32)
        .map(|n| exponential_integral_scaled(n, x).expect("K/P is positive and finite"))
        .sum();
    k * LOG2_E * sum
}
