//! Principal branch of the Lambert W function.
//!
//! `W0(x)` is the unique `w ≥ −1` with `w·e^w = x`, defined for `x ≥ −1/e`.
//! Every super-exponential formula in the crate evaluates it at non-negative
//! arguments; the branch-point neighbourhood is still supported.

use std::f64::consts::E;

use serde::Serialize;

use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 50;
const BRANCH_POINT: f64 = -1.0 / E;

/// Value of `W0(x)` with its absolute defining-identity residual `|w·e^w − x|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LambertResult {
    pub w: f64,
    pub residual: f64,
}

/// Principal-branch Lambert W.
pub fn lambert_w0(x: f64) -> Result<f64> {
    lambert_w0_checked(x).map(|r| r.w)
}

/// Principal-branch Lambert W with its residual.
pub fn lambert_w0_checked(x: f64) -> Result<LambertResult> {
    if x.is_nan() {
        return Err(Error::domain("Lambert W of NaN"));
    }
    if x < BRANCH_POINT {
        // Allow rounding of −1/e itself.
        if x >= BRANCH_POINT - 4.0 * f64::EPSILON {
            return Ok(LambertResult { w: -1.0, residual: 0.0 });
        }
        return Err(Error::domain(format!("Lambert W0 undefined below -1/e, got {x}")));
    }
    if x == 0.0 {
        return Ok(LambertResult { w: 0.0, residual: 0.0 });
    }
    if x == f64::INFINITY {
        return Ok(LambertResult { w: f64::INFINITY, residual: 0.0 });
    }

    let mut w = initial_guess(x);
    for _ in 0..MAX_ITERATIONS {
        let ew = w.exp();
        let f = w * ew - x;
        if f == 0.0 {
            break;
        }
        let w1 = w + 1.0;
        if w1 == 0.0 {
            break;
        }
        // Halley step for f(w) = w e^w − x.
        let step = f / (ew * w1 - (w + 2.0) * f / (2.0 * w1));
        let next = w - step;
        let done = (next - w).abs() <= 2.0 * f64::EPSILON * (1.0 + next.abs());
        w = next.max(-1.0);
        if done {
            break;
        }
    }
    let residual = (w * w.exp() - x).abs();
    Ok(LambertResult { w, residual })
}

fn initial_guess(x: f64) -> f64 {
    if x < 0.0 {
        // Series about the branch point in p = sqrt(2(ex + 1)).
        let p = (2.0 * (E * x + 1.0)).max(0.0).sqrt();
        -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
    } else if x > 1e15 {
        let l1 = x.ln();
        l1 - l1.ln()
    } else {
        x.ln_1p()
    }
}
