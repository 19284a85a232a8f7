//! Formal-group generators, their inverses and the composition law
//! `φ(x, y) = G(G⁻¹(x) + G⁻¹(y))`.
//!
//! A non-trace group entropy has the form `S[p] = c · G(ln Σ p_i^α)`, with
//! `c = 1/(1 − α)` for the laws derived from a growth model. Composition is
//! carried out on entropy values, i.e. with the rescaled generator `c·G`, so that
//! `S(A × B) = φ(S(A), S(B))` holds for independent systems. Rescaling a
//! generator by a constant conjugates the law and keeps every group axiom.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lambertw::lambert_w0;
use crate::prob::{alpha_log_sum, Distribution};
use crate::state_space::StateSpaceModel;

const INV_E: f64 = 0.367_879_441_171_442_33;

/// Closed-form generator families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum Generator {
    /// `G(t) = λ(1−α)(e^{t/(a(1−α))} − 1)`, from `W(N) = N^a`.
    Algebraic { lambda: f64, alpha: f64, a: f64 },
    /// `G(t) = λ t / ln k`, from `W(N) = k^N`.
    Exponential { lambda: f64, k: f64 },
    /// `G(t) = λ(1−α)(e^{L(t/(γ(1−α)))} − 1)`, from `W(N) = N^{γN}`.
    SuperExponential { lambda: f64, alpha: f64, gamma: f64 },
    /// `G(t) = (e^{aa·t} − e^{bb·t}) / (aa − bb)`.
    Unified { aa: f64, bb: f64 },
}

/// Closed interval `[lo, hi]`, possibly unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    const REAL_LINE: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }
}

/// A formal group law realized through its generator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GroupLaw {
    generator: Generator,
    /// Order `α` of the `ln Σ p^α` argument, when the law carries one.
    alpha: Option<f64>,
    /// Factor `c` in `S = c·G(ln Σ p^α)`.
    entropy_scale: f64,
    /// Values of `t` on which `G` is strictly increasing.
    domain: Interval,
    /// Range of entropy values `c·G(t)` over the domain.
    image: Interval,
}

/// Specializes the extensivity-derived generator to a growth model.
pub fn derive_generator(model: &StateSpaceModel, lambda: f64, alpha: f64) -> Result<GroupLaw> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::invalid(format!("lambda must be > 0, got {lambda}")));
    }
    if !(alpha > 0.0) || alpha == 1.0 || !alpha.is_finite() {
        return Err(Error::invalid(format!("alpha must be > 0 and != 1, got {alpha}")));
    }
    let generator = match *model {
        StateSpaceModel::Algebraic { a } => {
            StateSpaceModel::algebraic(a)?;
            Generator::Algebraic { lambda, alpha, a }
        }
        StateSpaceModel::Exponential { k } => {
            StateSpaceModel::exponential(k)?;
            Generator::Exponential { lambda, k }
        }
        StateSpaceModel::SuperExponential { gamma } => {
            StateSpaceModel::super_exponential(gamma)?;
            Generator::SuperExponential { lambda, alpha, gamma }
        }
    };
    Ok(GroupLaw::build(generator, Some(alpha), 1.0 / (1.0 - alpha)))
}

/// The two-parameter generator `(e^{aa·t} − e^{bb·t}) / (aa − bb)`.
///
/// `aa = 1, bb = 0` gives `e^t − 1` (Tsallis); `aa, bb → 0` approaches `G(t) = t`.
/// The returned law composes raw generator values; attach an order with
/// [`GroupLaw::with_order`] to use it as an entropy.
pub fn unified_generator(aa: f64, bb: f64) -> Result<GroupLaw> {
    if !aa.is_finite() || !bb.is_finite() {
        return Err(Error::invalid("unified generator parameters must be finite"));
    }
    if aa == bb {
        return Err(Error::invalid(
            "unified generator needs aa != bb; the aa = bb limit is t·e^{aa t}",
        ));
    }
    let (aa, bb) = if aa > bb { (aa, bb) } else { (bb, aa) };
    Ok(GroupLaw::build(Generator::Unified { aa, bb }, None, 1.0))
}

impl GroupLaw {
    /// The additive law `φ(x, y) = x + y` (generator `G(t) = t`).
    pub fn additive() -> Self {
        Self::build(
            Generator::Exponential {
                lambda: 1.0,
                k: std::f64::consts::E,
            },
            None,
            1.0,
        )
    }

    /// Attaches the order `α` and sets the entropy scale to `1/(1 − α)`.
    pub fn with_order(self, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0) || alpha == 1.0 || !alpha.is_finite() {
            return Err(Error::invalid(format!("alpha must be > 0 and != 1, got {alpha}")));
        }
        Ok(Self::build(self.generator, Some(alpha), 1.0 / (1.0 - alpha)))
    }

    /// Replaces the entropy scale `c` (must be finite and non-zero).
    pub fn with_entropy_scale(self, scale: f64) -> Result<Self> {
        if scale == 0.0 || !scale.is_finite() {
            return Err(Error::invalid(format!("entropy scale must be finite and non-zero, got {scale}")));
        }
        Ok(Self::build(self.generator, self.alpha, scale))
    }

    fn build(generator: Generator, alpha: Option<f64>, entropy_scale: f64) -> Self {
        let domain = generator_domain(&generator);
        let g_lo = generator_limit(&generator, domain.lo);
        let g_hi = generator_limit(&generator, domain.hi);
        let (a, b) = (entropy_scale * g_lo, entropy_scale * g_hi);
        let image = Interval {
            lo: a.min(b),
            hi: a.max(b),
        };
        Self {
            generator,
            alpha,
            entropy_scale,
            domain,
            image,
        }
    }

    pub fn generator(&self) -> &Generator {
        &self.generator
    }

    pub fn alpha(&self) -> Option<f64> {
        self.alpha
    }

    pub fn entropy_scale(&self) -> f64 {
        self.entropy_scale
    }

    /// Interval of `t` on which `G` is defined and strictly increasing.
    pub fn domain(&self) -> Interval {
        self.domain
    }

    /// Range of entropy values reachable by the law.
    pub fn image(&self) -> Interval {
        self.image
    }

    /// The generator `G(t)`.
    pub fn g(&self, t: f64) -> Result<f64> {
        if !self.domain.contains(t) {
            return Err(Error::domain(format!(
                "t = {t} outside generator domain [{}, {}]",
                self.domain.lo, self.domain.hi
            )));
        }
        Ok(eval_generator(&self.generator, t))
    }

    /// The inverse `G⁻¹(y)`.
    pub fn g_inv(&self, y: f64) -> Result<f64> {
        let out_of_range = || Error::domain(format!("{y} is outside the image of the generator"));
        let t = match self.generator {
            Generator::Algebraic { lambda, alpha, a } => {
                let z = y / (lambda * (1.0 - alpha));
                if !(z > -1.0) {
                    return Err(out_of_range());
                }
                a * (1.0 - alpha) * z.ln_1p()
            }
            Generator::Exponential { lambda, k } => y * k.ln() / lambda,
            Generator::SuperExponential { lambda, alpha, gamma } => {
                let z = y / (lambda * (1.0 - alpha));
                if !(z > -1.0) {
                    return Err(out_of_range());
                }
                let v = z.ln_1p();
                if v < -1.0 {
                    return Err(out_of_range());
                }
                gamma * (1.0 - alpha) * v * v.exp()
            }
            Generator::Unified { .. } => self.unified_inverse(y)?,
        };
        if !t.is_finite() && y.is_finite() {
            return Err(out_of_range());
        }
        Ok(t)
    }

    /// Entropy-scale generator `c·G(t)`.
    pub fn entropy_generator(&self, t: f64) -> Result<f64> {
        Ok(self.entropy_scale * self.g(t)?)
    }

    /// Inverse of the entropy-scale generator.
    pub fn entropy_generator_inv(&self, s: f64) -> Result<f64> {
        if !self.image.contains(s) {
            return Err(Error::domain(format!(
                "entropy value {s} outside the image [{}, {}] of the law",
                self.image.lo, self.image.hi
            )));
        }
        self.g_inv(s / self.entropy_scale)
    }

    /// `φ(x, y)`.
    pub fn compose(&self, x: f64, y: f64) -> Result<f64> {
        let t = self.entropy_generator_inv(x)? + self.entropy_generator_inv(y)?;
        self.entropy_generator(t)
    }

    /// The formal inverse `ψ(x)` with `φ(x, ψ(x)) = 0`.
    pub fn inverse_element(&self, x: f64) -> Result<f64> {
        let t = self.entropy_generator_inv(x)?;
        self.entropy_generator(-t)
    }

    /// `c·G(ln Σ p_i^α)`; requires a law that carries an order.
    pub fn entropy(&self, p: &Distribution) -> Result<f64> {
        let alpha = self
            .alpha
            .ok_or_else(|| Error::invalid("law has no order alpha; use with_order"))?;
        let x = alpha_log_sum(p, alpha)?.value;
        self.entropy_generator(x)
    }

    fn unified_inverse(&self, y: f64) -> Result<f64> {
        let g = |t: f64| eval_generator(&self.generator, t);
        let lo_val = generator_limit(&self.generator, self.domain.lo);
        let hi_val = generator_limit(&self.generator, self.domain.hi);
        if !(y >= lo_val && y <= hi_val) {
            return Err(Error::domain(format!("{y} outside generator image [{lo_val}, {hi_val}]")));
        }
        // Bracket expansion from a point inside the domain.
        let start = if self.domain.lo.is_finite() {
            self.domain.lo + 1.0
        } else if self.domain.hi.is_finite() {
            self.domain.hi - 1.0
        } else {
            0.0
        };
        let (mut lo, mut hi) = (start, start);
        let mut width = 1.0;
        while g(lo) > y {
            if self.domain.lo.is_finite() {
                lo = self.domain.lo;
                break;
            }
            lo = start - width;
            width *= 2.0;
            if !lo.is_finite() {
                return Err(Error::domain(format!("cannot bracket G⁻¹({y})")));
            }
        }
        width = 1.0;
        while g(hi) < y {
            if self.domain.hi.is_finite() {
                hi = self.domain.hi;
                break;
            }
            hi = start + width;
            width *= 2.0;
            if !hi.is_finite() {
                return Err(Error::domain(format!("cannot bracket G⁻¹({y})")));
            }
        }
        for _ in 0..2000 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if g(mid) < y {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

fn eval_generator(generator: &Generator, t: f64) -> f64 {
    match *generator {
        Generator::Algebraic { lambda, alpha, a } => {
            lambda * (1.0 - alpha) * (t / (a * (1.0 - alpha))).exp_m1()
        }
        Generator::Exponential { lambda, k } => lambda * t / k.ln(),
        Generator::SuperExponential { lambda, alpha, gamma } => {
            let u = (t / (gamma * (1.0 - alpha))).max(-INV_E);
            let w = lambert_w0(u).unwrap_or(-1.0);
            lambda * (1.0 - alpha) * w.exp_m1()
        }
        Generator::Unified { aa, bb } => {
            if t == 0.0 {
                0.0
            } else {
                (bb * t).exp() * ((aa - bb) * t).exp_m1() / (aa - bb)
            }
        }
    }
}

/// `G` at a domain endpoint, taking the limit when the endpoint is infinite.
fn generator_limit(generator: &Generator, t: f64) -> f64 {
    if t.is_finite() {
        return eval_generator(generator, t);
    }
    match *generator {
        Generator::Unified { aa, bb } => {
            // aa > bb is enforced at construction.
            if t > 0.0 {
                if aa > 0.0 {
                    f64::INFINITY
                } else {
                    // aa == 0 (aa < 0 has a finite upper endpoint)
                    -1.0 / bb
                }
            } else if bb < 0.0 {
                f64::NEG_INFINITY
            } else {
                -1.0 / aa
            }
        }
        _ => {
            // Monotone increasing: the sign of t decides the limit, except for
            // the algebraic family which saturates on one side.
            if let Generator::Algebraic { lambda, alpha, a } = *generator {
                let rate = 1.0 / (a * (1.0 - alpha));
                if (t > 0.0) != (rate > 0.0) {
                    return -lambda * (1.0 - alpha);
                }
            }
            t
        }
    }
}

fn generator_domain(generator: &Generator) -> Interval {
    match *generator {
        Generator::Algebraic { .. } | Generator::Exponential { .. } => Interval::REAL_LINE,
        Generator::SuperExponential { alpha, gamma, .. } => {
            // t/(γ(1−α)) ≥ −1/e
            let edge = -gamma * (1.0 - alpha) * INV_E;
            if alpha < 1.0 {
                Interval {
                    lo: edge,
                    hi: f64::INFINITY,
                }
            } else {
                Interval {
                    lo: f64::NEG_INFINITY,
                    hi: edge,
                }
            }
        }
        Generator::Unified { aa, bb } => {
            if bb > 0.0 {
                Interval {
                    lo: (bb / aa).ln() / (aa - bb),
                    hi: f64::INFINITY,
                }
            } else if aa < 0.0 {
                Interval {
                    lo: f64::NEG_INFINITY,
                    hi: (bb / aa).ln() / (aa - bb),
                }
            } else {
                Interval::REAL_LINE
            }
        }
    }
}
