//! Scaled generalized exponential integral `eˣ·E_n(x)`.
//!
//! `E_n(x) = ∫₁^∞ e^{-xt} t^{-n} dt`. Products such as `e^{K/P}·E_n(K/P)`
//! overflow/underflow in unscaled form once `K/P` reaches a few hundred, so
//! only the scaled value is exposed.
//!
//! For `x > 1` the modified Lentz algorithm evaluates the continued fraction
//!
//! ```text
//! eˣE_n(x) = 1/(x+n- 1·n/(x+n+2- 2(n+1)/(x+n+4- ...)))
//! ```
//!
//! which converges for every order. For `0 < x ≤ 1` the power series around
//! the origin (with the digamma term at `k = n-1`) is used instead. Each
//! order is evaluated directly, never by recurrence from `E_1`: upward
//! recurrence amplifies rounding by roughly `x/n` per step while `n < x`.

use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const MAX_ITERATIONS: usize = 100_000;
const TINY: f64 = 1e-300;

/// `eˣ·E_n(x)` for `n ≥ 0`, `x > 0`.
pub fn exponential_integral_scaled(n: u32, x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 || x.is_infinite() {
        return Err(Error::Domain(format!(
            "exponential integral needs a finite x > 0, got {x}"
        )));
    }
    if n == 0 {
        return Ok(1.0 / x);
    }
    if x > 1.0 {
        Ok(continued_fraction(n, x))
    } else {
        Ok(series(n, x) * x.exp())
    }
}

fn continued_fraction(n: u32, x: f64) -> f64 {
    let nm1 = f64::from(n - 1);
    let mut b = x + f64::from(n);
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..=MAX_ITERATIONS {
        let i = i as f64;
        let an = -i * (nm1 + i);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let delta = c * d;
        h *= delta;
        if (delta - 1.0).abs() <= f64::EPSILON {
            break;
        }
    }
    h
}

/// Unscaled `E_n(x)` for `0 < x ≤ 1`.
fn series(n: u32, x: f64) -> f64 {
    let nm1 = (n - 1) as usize;
    let mut sum = if nm1 == 0 {
        -x.ln() - EULER_GAMMA
    } else {
        1.0 / nm1 as f64
    };
    let mut fact = 1.0;
    for i in 1..=MAX_ITERATIONS {
        fact *= -x / i as f64;
        let term = if i != nm1 {
            -fact / (i as f64 - nm1 as f64)
        } else {
            let digamma = -EULER_GAMMA + (1..=nm1).map(|k| 1.0 / k as f64).sum::<f64>();
            fact * (-x.ln() + digamma)
        };
        sum += term;
        if term.abs() <= sum.abs() * f64::EPSILON {
            break;
        }
    }
    sum
}
