//! Precoder construction.
//!
//! Hybrid schemes produce an analog stage `F` (`N_t x K`, every entry of
//! magnitude `1/√N_t`) and a baseband stage `W` (`K x K`). Full-complexity
//! ZF produces a single `N_t x K` matrix. Every scheme is power-independent,
//! so one precoder serves every SNR point of a sweep.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channels::ChannelMatrix;
use crate::error::{Error, Result};
use crate::numerics::{gram_inverse, ComplexMatrix};

/// Analog phase-shifter network, `N_t x K`.
#[derive(Clone, Debug, PartialEq)]
pub struct RfPrecoder {
    matrix: ComplexMatrix,
}

impl RfPrecoder {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn antennas(&self) -> usize {
        self.matrix.rows()
    }

    pub fn streams(&self) -> usize {
        self.matrix.cols()
    }

    /// Builds an RF stage from raw phases (row-major, `antennas x streams`).
    pub fn from_phases(antennas: usize, streams: usize, phases: &[f64]) -> Result<Self> {
        if phases.len() != antennas * streams {
            return Err(Error::Dimension(format!(
                "{} phases supplied for a {antennas}x{streams} RF precoder",
                phases.len()
            )));
        }
        let scale = entry_magnitude(antennas);
        let matrix = ComplexMatrix::from_fn(antennas, streams, |i, j| {
            Complex64::from_polar(scale, phases[i * streams + j])
        })?;
        Ok(Self { matrix })
    }
}

fn entry_magnitude(antennas: usize) -> f64 {
    1.0 / (antennas as f64).sqrt()
}

/// Digital precoder `W`, `K x K`.
#[derive(Clone, Debug, PartialEq)]
pub struct BasebandPrecoder {
    matrix: ComplexMatrix,
}

impl BasebandPrecoder {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

/// Single-stage `N_t x K` precoder with unit-norm columns.
#[derive(Clone, Debug, PartialEq)]
pub struct FullPrecoder {
    matrix: ComplexMatrix,
}

impl FullPrecoder {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

/// RF stage followed by a baseband stage.
#[derive(Clone, Debug, PartialEq)]
pub struct HybridPrecoder {
    pub rf: RfPrecoder,
    pub baseband: BasebandPrecoder,
}

impl HybridPrecoder {
    /// `F·W`.
    pub fn total(&self) -> ComplexMatrix {
        self.rf
            .matrix
            .matmul(&self.baseband.matrix)
            .expect("RF and baseband shapes agree by construction")
    }
}

/// How the distance between a phase and a quantization level is measured.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhaseDistance {
    /// Wrap-around distance on the circle; `2π` is an alias of level 0.
    #[default]
    Circular,
    /// Plain `|φ - 2πn/2^B|` over `n = 0..2^B-1` with `φ ∈ [0, 2π)`.
    Literal,
}

/// Phase-shifter resolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuantizationSpec {
    bits: u8,
    distance: PhaseDistance,
}

impl QuantizationSpec {
    pub const MAX_BITS: u8 = 16;

    pub fn new(bits: u8, distance: PhaseDistance) -> Result<Self> {
        if !(1..=Self::MAX_BITS).contains(&bits) {
            return Err(Error::Config(format!(
                "quantization bits must be in 1..={}, got {bits}",
                Self::MAX_BITS
            )));
        }
        Ok(Self { bits, distance })
    }

    pub fn bits(&self) -> u8 {
        self.bits
    }

    pub fn distance(&self) -> PhaseDistance {
        self.distance
    }

    pub fn levels(&self) -> u32 {
        1 << self.bits
    }

    /// Index `n̂` of the level closest to `phase` (any real; reduced mod 2π).
    /// Equidistant levels resolve to the smaller index.
    pub fn level_index(&self, phase: f64) -> u32 {
        let levels = i64::from(self.levels());
        let step = TAU / levels as f64;
        let phi = phase.rem_euclid(TAU);
        let lo = (phi / step).floor() as i64;

        let mut best: Option<(f64, i64)> = None;
        for candidate in [lo - 1, lo, lo + 1] {
            let n = match self.distance {
                PhaseDistance::Circular => candidate.rem_euclid(levels),
                PhaseDistance::Literal => candidate.clamp(0, levels - 1),
            };
            let d = (phi - step * n as f64).abs();
            let d = match self.distance {
                PhaseDistance::Circular => d.min(TAU - d),
                PhaseDistance::Literal => d,
            };
            best = match best {
                Some((bd, bn)) if bd < d || (bd == d && bn <= n) => Some((bd, bn)),
                _ => Some((d, n)),
            };
        }
        best.map(|(_, n)| n as u32).unwrap_or(0)
    }

    /// Quantized phase `2πn̂/2^B`.
    pub fn quantize_phase(&self, phase: f64) -> f64 {
        TAU * f64::from(self.level_index(phase)) / f64::from(self.levels())
    }
}

/// Phase of `z`, with the phase of zero defined as 0.
fn phase_of(z: Complex64) -> f64 {
    if z == Complex64::new(0.0, 0.0) {
        0.0
    } else {
        z.arg()
    }
}

/// PZF analog stage: `F_ij = e^{j·arg([Hᴴ]_ij)}/√N_t`.
///
/// Column `j` carries the element-wise phases of `h_j`, so that
/// `h_jᴴ f_j = Σ_i |h_ij| / √N_t` is real and positive.
pub fn pzf_rf(h: &ChannelMatrix) -> RfPrecoder {
    let hm = h.matrix();
    let (users, antennas) = (h.users(), h.antennas());
    let scale = entry_magnitude(antennas);
    let matrix = ComplexMatrix::from_fn(antennas, users, |i, j| {
        Complex64::from_polar(scale, phase_of(hm[(j, i)].conj()))
    })
    .expect("channel dimensions are positive");
    RfPrecoder { matrix }
}

/// Snap every RF phase to the nearest of `2^B` uniformly spaced levels.
pub fn quantize_rf(f: &RfPrecoder, spec: &QuantizationSpec) -> RfPrecoder {
    let scale = entry_magnitude(f.antennas());
    let matrix = f
        .matrix
        .map(|z| Complex64::from_polar(scale, spec.quantize_phase(phase_of(z))));
    RfPrecoder { matrix }
}

/// `H_eq = H·F`, the `K x K` channel seen from baseband.
pub fn effective_channel(h: &ChannelMatrix, f: &RfPrecoder) -> Result<ComplexMatrix> {
    h.matrix().matmul(&f.matrix)
}

/// Baseband ZF on the effective channel:
/// `W = H_eqᴴ (H_eq H_eqᴴ)⁻¹ Λ`, with the real diagonal `Λ` chosen so that
/// every column of `F·W` has unit norm (hence `‖FW‖_F² = K`).
pub fn baseband_zf(h_eq: &ComplexMatrix, f: &RfPrecoder) -> Result<BasebandPrecoder> {
    let k = f.streams();
    if h_eq.rows() != k || h_eq.cols() != k {
        return Err(Error::Dimension(format!(
            "effective channel is {}x{}, RF precoder has {k} streams",
            h_eq.rows(),
            h_eq.cols()
        )));
    }
    let h_eq_adj = h_eq.adjoint();
    let gram = h_eq.matmul(&h_eq_adj)?;
    let mut w = h_eq_adj.matmul(&gram_inverse(&gram)?)?;
    let fw = f.matrix.matmul(&w)?;
    for j in 0..k {
        w.scale_column(j, 1.0 / fw.column_norm(j));
    }
    Ok(BasebandPrecoder { matrix: w })
}

/// Full-complexity ZF: column `k` is `h_k` projected onto the null space of
/// the other users' channels, normalized to unit length.
pub fn full_zf(h: &ChannelMatrix) -> Result<FullPrecoder> {
    let hm = h.matrix();
    let h_adj = hm.adjoint();
    let gram = hm.matmul(&h_adj)?;
    let mut p = h_adj.matmul(&gram_inverse(&gram)?)?;
    for j in 0..p.cols() {
        let norm = p.column_norm(j);
        p.scale_column(j, 1.0 / norm);
    }
    Ok(FullPrecoder { matrix: p })
}

/// PZF hybrid precoder, optionally with quantized RF phases.
pub fn pzf(h: &ChannelMatrix, quantization: Option<&QuantizationSpec>) -> Result<HybridPrecoder> {
    let mut rf = pzf_rf(h);
    if let Some(spec) = quantization {
        rf = quantize_rf(&rf, spec);
    }
    let h_eq = effective_channel(h, &rf)?;
    let baseband = baseband_zf(&h_eq, &rf)?;
    Ok(HybridPrecoder { rf, baseband })
}

/// Beamspace (DFT-beam) hybrid precoder and the beams it selected.
#[derive(Clone, Debug, PartialEq)]
pub struct BeamspacePrecoder {
    pub precoder: HybridPrecoder,
    /// Selected DFT column indices, strongest first.
    pub beams: Vec<usize>,
}

/// Column `k` of the unitary `N x N` DFT matrix at row `m`.
fn dft_entry(antennas: usize, m: usize, k: usize) -> Complex64 {
    let phase = TAU * ((m * k) % antennas) as f64 / antennas as f64;
    Complex64::from_polar(entry_magnitude(antennas), phase)
}

/// Sine of the steering azimuth of DFT beam `index` for element spacing
/// `spacing`, or `None` if the beam points outside visible space.
pub fn beam_sine(index: usize, antennas: usize, spacing: f64) -> Option<f64> {
    let mut u = index as f64 / antennas as f64;
    if u >= 0.5 {
        u -= 1.0;
    }
    let s = u / spacing;
    (s.abs() <= 1.0).then_some(s)
}

/// Beamspace MIMO baseline.
///
/// The RF stage takes `K` distinct columns of the unitary DFT matrix, chosen
/// greedily by total projected channel power `Σ_k |h_kᴴ f|²` (ties go to the
/// smaller column index). Baseband ZF then runs on the resulting effective
/// channel. `spacing` must be positive; the DFT beams themselves do not depend
/// on it (see [`beam_sine`] for the corresponding steering directions).
pub fn bmimo_precoder(h: &ChannelMatrix, spacing: f64) -> Result<BeamspacePrecoder> {
    if spacing.is_nan() || spacing <= 0.0 {
        return Err(Error::Domain(format!(
            "antenna spacing must be positive, got {spacing}"
        )));
    }
    let (users, antennas) = (h.users(), h.antennas());
    let hm = h.matrix();

    let mut power: Vec<(f64, usize)> = (0..antennas)
        .map(|beam| {
            let p = (0..users)
                .map(|u| {
                    hm.row(u)
                        .iter()
                        .enumerate()
                        .map(|(m, &x)| x * dft_entry(antennas, m, beam))
                        .sum::<Complex64>()
                        .norm_sqr()
                })
                .sum::<f64>();
            (p, beam)
        })
        .collect();
    power.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    let beams: Vec<usize> = power.iter().take(users).map(|&(_, b)| b).collect();

    let matrix = ComplexMatrix::from_fn(antennas, users, |m, j| dft_entry(antennas, m, beams[j]))?;
    let rf = RfPrecoder { matrix };
    let h_eq = effective_channel(h, &rf)?;
    let baseband = baseband_zf(&h_eq, &rf)?;
    Ok(BeamspacePrecoder {
        precoder: HybridPrecoder { rf, baseband },
        beams,
    })
}
