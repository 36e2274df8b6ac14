//! Phased-ZF (PZF) hybrid precoding for massive multiuser MIMO downlinks.
//!
//! The RF stage copies the phases of the conjugate-transposed composite
//! channel into an `N_t x K` bank of phase shifters, and a `K x K` baseband
//! zero-forcing stage cancels the residual inter-user coupling seen through
//! that analog front end. This crate provides:
//!
//! - [`channels`]: i.i.d. Rayleigh and sparse geometric mmWave channel draws
//!   with a uniform linear array,
//! - [`precoders`]: PZF (optionally with quantized phases), full-complexity
//!   ZF and a beamspace (DFT-beam) baseline,
//! - [`metrics`]: per-user SINR and instantaneous sum spectral efficiency,
//! - [`analysis`]: closed-form large-array rates for PZF and full ZF,
//! - [`harness`]: a seeded, order-independent Monte Carlo sweep engine with
//!   CSV output.
//!
//! ```
//! use pzf::channels::rayleigh_channel;
//! use pzf::metrics::{sinr_per_user, sum_spectral_efficiency, LinkBudget};
//! use pzf::numerics::SimRng;
//! use pzf::precoders::pzf;
//!
//! let mut rng = SimRng::new(7);
//! let h = rayleigh_channel(&mut rng, 4, 64).unwrap();
//! let precoder = pzf(&h, None).unwrap();
//! let budget = LinkBudget::from_db(10.0, 4).unwrap();
//! let sinrs = sinr_per_user(&h, &precoder.total(), &budget).unwrap();
//! assert!(sum_spectral_efficiency(&sinrs).unwrap() > 0.0);
//! ```

pub mod analysis;
pub mod channels;
pub mod error;
pub mod harness;
pub mod metrics;
pub mod numerics;
pub mod precoders;

pub use error::{Error, Result};
pub use num_complex::Complex64;
