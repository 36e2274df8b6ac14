//! Downlink channel realizations.
//!
//! Row `k` of a [`ChannelMatrix`] is `h_kᴴ`, the conjugated channel from the
//! `N_t` base-station antennas to single-antenna user `k`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{complex_gaussian_matrix, ComplexMatrix, SimRng};

/// Composite `K x N_t` downlink channel `H = [h_1, ..., h_K]ᴴ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChannelMatrix {
    matrix: ComplexMatrix,
}

impl ChannelMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        check_users(matrix.rows(), matrix.cols())?;
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn users(&self) -> usize {
        self.matrix.rows()
    }

    pub fn antennas(&self) -> usize {
        self.matrix.cols()
    }

    /// `‖h_k‖²`.
    pub fn user_energy(&self, k: usize) -> f64 {
        self.matrix.row(k).iter().map(|z| z.norm_sqr()).sum()
    }

    /// FNV-1a over the bit patterns of every entry, for pairing checks.
    pub fn checksum(&self) -> u64 {
        let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
        for z in self.matrix.as_slice() {
            for word in [z.re.to_bits(), z.im.to_bits()] {
                for byte in word.to_le_bytes() {
                    hash ^= u64::from(byte);
                    hash = hash.wrapping_mul(0x0100_0000_01b3);
                }
            }
        }
        hash
    }
}

fn check_users(users: usize, antennas: usize) -> Result<()> {
    if users == 0 || antennas == 0 {
        return Err(Error::Dimension(
            "users and antennas must be at least 1".into(),
        ));
    }
    if users > antennas {
        return Err(Error::Dimension(format!(
            "users must not exceed antennas ({users} > {antennas})"
        )));
    }
    Ok(())
}

/// Sparse-scattering parameters of the geometric mmWave model.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MmWaveParams {
    /// Propagation paths per user.
    pub paths: usize,
    /// Antenna spacing in wavelengths.
    pub spacing: f64,
}

impl Default for MmWaveParams {
    fn default() -> Self {
        Self {
            paths: 10,
            spacing: 0.5,
        }
    }
}

impl MmWaveParams {
    pub fn validate(&self) -> Result<()> {
        if self.paths == 0 {
            return Err(Error::Config("mmwave paths must be at least 1".into()));
        }
        if !(self.spacing > 0.0 && self.spacing.is_finite()) {
            return Err(Error::Config(format!(
                "antenna spacing must be positive, got {}",
                self.spacing
            )));
        }
        Ok(())
    }
}

/// I.i.d. CN(0, 1) channel.
pub fn rayleigh_channel(rng: &mut SimRng, users: usize, antennas: usize) -> Result<ChannelMatrix> {
    check_users(users, antennas)?;
    ChannelMatrix::new(complex_gaussian_matrix(rng, users, antennas)?)
}

/// Entry `m` of the unit-norm ULA response toward azimuth `azimuth`:
/// `exp(j·2π·d·m·sin φ)/√N_t`.
fn ula_entry(antennas: usize, spacing: f64, sin_azimuth: f64, m: usize) -> Complex64 {
    let phase = TAU * spacing * m as f64 * sin_azimuth;
    Complex64::from_polar(1.0 / (antennas as f64).sqrt(), phase)
}

/// Uniform linear array response `a(φ)` as an `N_t x 1` column.
pub fn ula_response(antennas: usize, spacing: f64, azimuth: f64) -> Result<ComplexMatrix> {
    if spacing.is_nan() || spacing <= 0.0 {
        return Err(Error::Domain(format!(
            "antenna spacing must be positive, got {spacing}"
        )));
    }
    let s = azimuth.sin();
    ComplexMatrix::from_fn(antennas, 1, |m, _| ula_entry(antennas, spacing, s, m))
}

/// Path gains and azimuths behind one mmWave draw, indexed `[user][path]`.
#[derive(Clone, Debug)]
pub struct PathGeometry {
    pub gains: Vec<Vec<Complex64>>,
    pub azimuths: Vec<Vec<f64>>,
}

/// Geometric mmWave channel with a ULA:
/// `h_kᴴ = √(N_t/N_p) Σ_l α_l^k a(φ_l^k)ᴴ`.
///
/// Gains are CN(0, 1) and azimuths uniform on [0, 2π]. The ULA response has
/// no elevation dependence, so no elevation angle is drawn.
pub fn mmwave_channel(
    rng: &mut SimRng,
    users: usize,
    antennas: usize,
    params: &MmWaveParams,
) -> Result<ChannelMatrix> {
    mmwave_channel_with_geometry(rng, users, antennas, params).map(|(h, _)| h)
}

/// [`mmwave_channel`] that also returns the drawn path geometry.
pub fn mmwave_channel_with_geometry(
    rng: &mut SimRng,
    users: usize,
    antennas: usize,
    params: &MmWaveParams,
) -> Result<(ChannelMatrix, PathGeometry)> {
    check_users(users, antennas)?;
    params.validate()?;
    let scale = (antennas as f64 / params.paths as f64).sqrt();
    let mut matrix = ComplexMatrix::zeros(users, antennas)?;
    let mut geometry = PathGeometry {
        gains: Vec::with_capacity(users),
        azimuths: Vec::with_capacity(users),
    };
    for k in 0..users {
        let mut gains = Vec::with_capacity(params.paths);
        let mut azimuths = Vec::with_capacity(params.paths);
        for _ in 0..params.paths {
            let alpha = rng.complex_normal();
            let phi = rng.uniform_angle();
            let s = phi.sin();
            for m in 0..antennas {
                let a = ula_entry(antennas, params.spacing, s, m);
                matrix[(k, m)] += scale * alpha * a.conj();
            }
            gains.push(alpha);
            azimuths.push(phi);
        }
        geometry.gains.push(gains);
        geometry.azimuths.push(azimuths);
    }
    Ok((ChannelMatrix::new(matrix)?, geometry))
}
