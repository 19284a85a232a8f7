//! The entropy functionals: Boltzmann–Gibbs–Shannon, Tsallis, Rényi, the three
//! non-trace group entropies, the three trace-form group entropies and the
//! Z-entropy.
//!
//! Every non-trace family depends on `p` only through the Rényi value
//! `R_α = ln Σ p_i^α / (1 − α)`:
//!
//! | kind          | value                       |
//! |---------------|-----------------------------|
//! | `NonTraceI`   | `λ (e^{R/a} − 1)`           |
//! | `NonTraceII`  | `λ R / ln k`                |
//! | `NonTraceIII` | `λ (e^{L(R/γ)} − 1)`        |
//! | `ZEntropy`    | `e^{L(R/γ)} − 1`            |
//!
//! where `L` is the principal Lambert W. The trace forms are sums
//! `Σ p_i f(p_i)` over the support.
//!
//! `α = 1` (and `q = 1` for Tsallis) is rejected unless the spec is built with
//! [`LimitPolicy::Shannon`], in which case `R_α` is replaced by the Shannon
//! entropy.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formal_group::{derive_generator, unified_generator, GroupLaw};
use crate::lambertw::lambert_w0;
use crate::prob::{log_sum_pow, Distribution};
use crate::state_space::StateSpaceModel;
use crate::sum::compensated_sum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EntropyKind {
    #[serde(rename = "BGS")]
    Bgs,
    Tsallis,
    Renyi,
    NonTraceI,
    NonTraceII,
    NonTraceIII,
    TraceI,
    TraceII,
    TraceIII,
    ZEntropy,
}

impl EntropyKind {
    pub const ALL: [EntropyKind; 10] = [
        EntropyKind::Bgs,
        EntropyKind::Tsallis,
        EntropyKind::Renyi,
        EntropyKind::NonTraceI,
        EntropyKind::NonTraceII,
        EntropyKind::NonTraceIII,
        EntropyKind::TraceI,
        EntropyKind::TraceII,
        EntropyKind::TraceIII,
        EntropyKind::ZEntropy,
    ];

    /// Kinds defined through `ln Σ p^α` (or `Σ p^q`).
    pub fn is_non_trace(self) -> bool {
        matches!(
            self,
            EntropyKind::Renyi
                | EntropyKind::NonTraceI
                | EntropyKind::NonTraceII
                | EntropyKind::NonTraceIII
                | EntropyKind::ZEntropy
        )
    }
}

/// Whether an order of exactly one is accepted and replaced by the Shannon limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LimitPolicy {
    #[default]
    Reject,
    Shannon,
}

/// Raw, unvalidated parameters as they appear in JSON.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntropyParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<EntropyKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_scale: Option<f64>,
}

/// A validated entropy functional.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "EntropyParams", into = "EntropyParams")]
pub struct EntropySpec {
    kind: EntropyKind,
    lambda: f64,
    alpha: Option<f64>,
    q: Option<f64>,
    a: Option<f64>,
    k: Option<f64>,
    gamma: Option<f64>,
    k_scale: f64,
    shannon_limit: bool,
}

impl TryFrom<EntropyParams> for EntropySpec {
    type Error = Error;

    fn try_from(params: EntropyParams) -> Result<Self> {
        EntropySpec::from_params(&params, LimitPolicy::Reject)
    }
}

impl From<EntropySpec> for EntropyParams {
    fn from(spec: EntropySpec) -> Self {
        let uses_lambda = !matches!(
            spec.kind,
            EntropyKind::Bgs | EntropyKind::Tsallis | EntropyKind::Renyi | EntropyKind::ZEntropy
        );
        EntropyParams {
            kind: Some(spec.kind),
            lambda: uses_lambda.then_some(spec.lambda),
            alpha: spec.alpha,
            q: spec.q,
            a: spec.a,
            k: spec.k,
            gamma: spec.gamma,
            k_scale: (spec.kind == EntropyKind::Tsallis).then_some(spec.k_scale),
        }
    }
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::invalid(format!("{name} must be positive and finite, got {v}")))
    }
}

impl EntropySpec {
    /// Validates raw parameters for the selected kind.
    pub fn from_params(params: &EntropyParams, limit: LimitPolicy) -> Result<Self> {
        use EntropyKind::*;
        let kind = params
            .kind
            .ok_or_else(|| Error::invalid("entropy spec needs a kind"))?;
        let needs = |name: &str, v: Option<f64>| {
            v.ok_or_else(|| Error::invalid(format!("{kind:?} requires parameter {name}")))
        };
        let reject_extra = |name: &str, v: Option<f64>, used: bool| {
            if v.is_some() && !used {
                Err(Error::invalid(format!("parameter {name} does not apply to {kind:?}")))
            } else {
                Ok(())
            }
        };

        let uses_alpha = matches!(kind, Renyi | NonTraceI | NonTraceII | NonTraceIII | ZEntropy);
        let uses_a = matches!(kind, NonTraceI | TraceI);
        let uses_k = matches!(kind, NonTraceII | TraceII);
        let uses_gamma = matches!(kind, NonTraceIII | TraceIII | ZEntropy);
        let uses_lambda = !matches!(kind, Bgs | Tsallis | Renyi | ZEntropy);
        reject_extra("alpha", params.alpha, uses_alpha)?;
        reject_extra("q", params.q, kind == Tsallis)?;
        reject_extra("a", params.a, uses_a)?;
        reject_extra("k", params.k, uses_k)?;
        reject_extra("gamma", params.gamma, uses_gamma)?;
        if !uses_lambda && params.lambda.is_some_and(|l| l != 1.0) {
            return Err(Error::invalid(format!("parameter lambda does not apply to {kind:?}")));
        }
        if kind != Tsallis && params.k_scale.is_some_and(|c| c != 1.0) {
            return Err(Error::invalid(format!("parameter k_scale does not apply to {kind:?}")));
        }

        let lambda = positive("lambda", params.lambda.unwrap_or(1.0))?;
        let k_scale = positive("k_scale", params.k_scale.unwrap_or(1.0))?;
        let mut shannon_limit = false;
        let mut order = |name: &str, v: f64| -> Result<f64> {
            positive(name, v)?;
            if v == 1.0 {
                if limit == LimitPolicy::Shannon {
                    shannon_limit = true;
                } else {
                    return Err(Error::invalid(format!(
                        "{name} = 1 is the Shannon limit; use the BGS entropy or enable the limit explicitly"
                    )));
                }
            }
            Ok(v)
        };
        let alpha = if uses_alpha {
            Some(order("alpha", needs("alpha", params.alpha)?)?)
        } else {
            None
        };
        let q = if kind == Tsallis {
            Some(order("q", needs("q", params.q)?)?)
        } else {
            None
        };
        let a = if uses_a {
            Some(positive("a", needs("a", params.a)?)?)
        } else {
            None
        };
        let k = if uses_k {
            let k = needs("k", params.k)?;
            if !(k > 1.0) || !k.is_finite() {
                return Err(Error::invalid(format!("k must be > 1, got {k}")));
            }
            Some(k)
        } else {
            None
        };
        let gamma = if uses_gamma {
            Some(positive("gamma", needs("gamma", params.gamma)?)?)
        } else {
            None
        };
        Ok(Self {
            kind,
            lambda,
            alpha,
            q,
            a,
            k,
            gamma,
            k_scale,
            shannon_limit,
        })
    }

    fn build(kind: EntropyKind, params: EntropyParams) -> Result<Self> {
        Self::from_params(
            &EntropyParams {
                kind: Some(kind),
                ..params
            },
            LimitPolicy::Reject,
        )
    }

    pub fn bgs() -> Self {
        Self::build(EntropyKind::Bgs, EntropyParams::default()).expect("BGS has no parameters")
    }

    pub fn tsallis(q: f64, k_scale: f64) -> Result<Self> {
        Self::build(
            EntropyKind::Tsallis,
            EntropyParams {
                q: Some(q),
                k_scale: Some(k_scale),
                ..Default::default()
            },
        )
    }

    pub fn renyi(alpha: f64) -> Result<Self> {
        Self::build(
            EntropyKind::Renyi,
            EntropyParams {
                alpha: Some(alpha),
                ..Default::default()
            },
        )
    }

    pub fn non_trace_algebraic(lambda: f64, alpha: f64, a: f64) -> Result<Self> {
        Self::build(
            EntropyKind::NonTraceI,
            EntropyParams {
                lambda: Some(lambda),
                alpha: Some(alpha),
                a: Some(a),
                ..Default::default()
            },
        )
    }

    pub fn non_trace_exponential(lambda: f64, alpha: f64, k: f64) -> Result<Self> {
        Self::build(
            EntropyKind::NonTraceII,
            EntropyParams {
                lambda: Some(lambda),
                alpha: Some(alpha),
                k: Some(k),
                ..Default::default()
            },
        )
    }

    pub fn non_trace_super_exponential(lambda: f64, alpha: f64, gamma: f64) -> Result<Self> {
        Self::build(
            EntropyKind::NonTraceIII,
            EntropyParams {
                lambda: Some(lambda),
                alpha: Some(alpha),
                gamma: Some(gamma),
                ..Default::default()
            },
        )
    }

    pub fn trace_algebraic(lambda: f64, a: f64) -> Result<Self> {
        Self::build(
            EntropyKind::TraceI,
            EntropyParams {
                lambda: Some(lambda),
                a: Some(a),
                ..Default::default()
            },
        )
    }

    pub fn trace_exponential(lambda: f64, k: f64) -> Result<Self> {
        Self::build(
            EntropyKind::TraceII,
            EntropyParams {
                lambda: Some(lambda),
                k: Some(k),
                ..Default::default()
            },
        )
    }

    pub fn trace_super_exponential(lambda: f64, gamma: f64) -> Result<Self> {
        Self::build(
            EntropyKind::TraceIII,
            EntropyParams {
                lambda: Some(lambda),
                gamma: Some(gamma),
                ..Default::default()
            },
        )
    }

    pub fn z_entropy(alpha: f64, gamma: f64) -> Result<Self> {
        Self::build(
            EntropyKind::ZEntropy,
            EntropyParams {
                alpha: Some(alpha),
                gamma: Some(gamma),
                ..Default::default()
            },
        )
    }

    pub fn kind(&self) -> EntropyKind {
        self.kind
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn alpha(&self) -> Option<f64> {
        self.alpha
    }

    pub fn q(&self) -> Option<f64> {
        self.q
    }

    pub fn a(&self) -> Option<f64> {
        self.a
    }

    pub fn k(&self) -> Option<f64> {
        self.k
    }

    pub fn gamma(&self) -> Option<f64> {
        self.gamma
    }

    pub fn k_scale(&self) -> f64 {
        self.k_scale
    }

    /// True when the order is one and the Shannon limit is substituted.
    pub fn is_shannon_limit(&self) -> bool {
        self.shannon_limit
    }

    /// `R_α(p)`, or the Shannon entropy in the limit form.
    fn renyi_value(&self, p: &Distribution) -> f64 {
        let alpha = self.alpha.expect("validated non-trace spec has alpha");
        if self.shannon_limit {
            p.shannon()
        } else {
            log_sum_pow(p.support(), alpha) / (1.0 - alpha)
        }
    }

    /// Maps a Rényi value to the non-trace family.
    fn map_renyi(&self, r: f64) -> Result<f64> {
        use EntropyKind::*;
        Ok(match self.kind {
            Renyi => r,
            NonTraceI => self.lambda * (r / self.a.unwrap()).exp_m1(),
            NonTraceII => (self.lambda / self.k.unwrap().ln()) * r,
            NonTraceIII => self.lambda * lambert_w0(r / self.gamma.unwrap())?.exp_m1(),
            ZEntropy => lambert_w0(r / self.gamma.unwrap())?.exp_m1(),
            _ => unreachable!("not a non-trace kind"),
        })
    }

    /// Evaluates the functional on `p`.
    pub fn evaluate(&self, p: &Distribution) -> Result<f64> {
        use EntropyKind::*;
        match self.kind {
            Bgs => Ok(p.shannon()),
            Tsallis => {
                let q = self.q.unwrap();
                if self.shannon_limit {
                    Ok(self.k_scale * p.shannon())
                } else {
                    let x = log_sum_pow(p.support(), q);
                    Ok(-self.k_scale * x.exp_m1() / (q - 1.0))
                }
            }
            Renyi | NonTraceI | NonTraceII | NonTraceIII | ZEntropy => {
                self.map_renyi(self.renyi_value(p))
            }
            TraceI => {
                let a = self.a.unwrap();
                Ok(self.lambda * compensated_sum(p.support().map(|pi| pi * (-pi.ln() / a).exp_m1())))
            }
            TraceII => Ok((self.lambda / self.k.unwrap().ln()) * p.shannon()),
            TraceIII => {
                let gamma = self.gamma.unwrap();
                let terms = p
                    .support()
                    .map(|pi| Ok(pi * lambert_w0(-pi.ln() / gamma)?.exp_m1()))
                    .collect::<Result<Vec<f64>>>()?;
                Ok(self.lambda * compensated_sum(terms))
            }
        }
    }

    /// Value on the uniform distribution over `W = e^{log_w}` states, from `ln W` alone.
    pub fn evaluate_on_uniform_log_w(&self, log_w: f64) -> Result<f64> {
        use EntropyKind::*;
        if !(log_w >= 0.0) || !log_w.is_finite() {
            return Err(Error::invalid(format!("ln W must be finite and >= 0, got {log_w}")));
        }
        match self.kind {
            Bgs => Ok(log_w),
            Tsallis => {
                let q = self.q.unwrap();
                if self.shannon_limit {
                    Ok(self.k_scale * log_w)
                } else {
                    Ok(-self.k_scale * ((1.0 - q) * log_w).exp_m1() / (q - 1.0))
                }
            }
            // R_α = ln W for every order on the uniform ensemble.
            Renyi | NonTraceI | NonTraceII | NonTraceIII | ZEntropy => self.map_renyi(log_w),
            TraceI => Ok(self.lambda * (log_w / self.a.unwrap()).exp_m1()),
            TraceII => Ok((self.lambda / self.k.unwrap().ln()) * log_w),
            TraceIII => Ok(self.lambda * lambert_w0(log_w / self.gamma.unwrap())?.exp_m1()),
        }
    }

    /// Partial derivatives `∂S/∂p_i`, evaluated at strictly positive entries.
    ///
    /// Entries with `p_i = 0` get the one-sided limit, which may be infinite.
    pub fn gradient(&self, p: &Distribution) -> Result<Vec<f64>> {
        use EntropyKind::*;
        let probs = p.probs();
        let shannon_grad = |pi: f64| -pi.ln() - 1.0;
        match self.kind {
            Bgs => Ok(probs.iter().map(|&pi| shannon_grad(pi)).collect()),
            Tsallis => {
                let q = self.q.unwrap();
                if self.shannon_limit {
                    return Ok(probs.iter().map(|&pi| self.k_scale * shannon_grad(pi)).collect());
                }
                Ok(probs
                    .iter()
                    .map(|&pi| -self.k_scale * q * pi.powf(q - 1.0) / (q - 1.0))
                    .collect())
            }
            Renyi | NonTraceI | NonTraceII | NonTraceIII | ZEntropy => {
                let alpha = self.alpha.unwrap();
                let r = self.renyi_value(p);
                let outer = match self.kind {
                    Renyi => 1.0,
                    NonTraceI => {
                        let a = self.a.unwrap();
                        self.lambda * (r / a).exp() / a
                    }
                    NonTraceII => self.lambda / self.k.unwrap().ln(),
                    NonTraceIII | ZEntropy => {
                        let gamma = self.gamma.unwrap();
                        let w = lambert_w0(r / gamma)?;
                        let lambda = if self.kind == ZEntropy { 1.0 } else { self.lambda };
                        lambda / (gamma * (1.0 + w))
                    }
                    _ => unreachable!(),
                };
                if self.shannon_limit {
                    return Ok(probs.iter().map(|&pi| outer * shannon_grad(pi)).collect());
                }
                let x = log_sum_pow(p.support(), alpha);
                Ok(probs
                    .iter()
                    .map(|&pi| {
                        // ∂R/∂p_i = α p_i^{α−1} / (Σ p^α (1 − α))
                        let ratio = ((alpha - 1.0) * pi.ln() - x).exp();
                        outer * alpha * ratio / (1.0 - alpha)
                    })
                    .collect())
            }
            TraceI => {
                let a = self.a.unwrap();
                Ok(probs
                    .iter()
                    .map(|&pi| self.lambda * ((1.0 - 1.0 / a) * pi.powf(-1.0 / a) - 1.0))
                    .collect())
            }
            TraceII => {
                let c = self.lambda / self.k.unwrap().ln();
                Ok(probs.iter().map(|&pi| c * shannon_grad(pi)).collect())
            }
            TraceIII => {
                let gamma = self.gamma.unwrap();
                probs
                    .iter()
                    .map(|&pi| {
                        if pi == 0.0 {
                            return Ok(f64::INFINITY);
                        }
                        let w = lambert_w0(-pi.ln() / gamma)?;
                        Ok(self.lambda * (w.exp_m1() - 1.0 / (gamma * (1.0 + w))))
                    })
                    .collect()
            }
        }
    }

    /// The composition law on entropy values, for kinds that have one.
    ///
    /// The law acting on entropy values does not depend on `α`, so Shannon-limit
    /// specs reuse the law of any order.
    pub fn group_law(&self) -> Result<GroupLaw> {
        use EntropyKind::*;
        let order = if self.shannon_limit { 2.0 } else { self.alpha.unwrap_or(2.0) };
        match self.kind {
            Bgs => Ok(GroupLaw::additive()),
            Tsallis => {
                if self.shannon_limit {
                    return Ok(GroupLaw::additive());
                }
                let q = self.q.unwrap();
                unified_generator(1.0, 0.0)?
                    .with_order(q)?
                    .with_entropy_scale(self.k_scale / (1.0 - q))
            }
            Renyi => derive_generator(&StateSpaceModel::exponential(std::f64::consts::E)?, 1.0, order),
            NonTraceI => derive_generator(&StateSpaceModel::algebraic(self.a.unwrap())?, self.lambda, order),
            NonTraceII => derive_generator(&StateSpaceModel::exponential(self.k.unwrap())?, self.lambda, order),
            NonTraceIII => derive_generator(
                &StateSpaceModel::super_exponential(self.gamma.unwrap())?,
                self.lambda,
                order,
            ),
            ZEntropy => derive_generator(&StateSpaceModel::super_exponential(self.gamma.unwrap())?, 1.0, order),
            TraceI | TraceII | TraceIII => Err(Error::invalid(format!(
                "{:?} is a trace-form entropy without a composition law on the whole simplex",
                self.kind
            ))),
        }
    }
}

/// `Σ p ln(1/p)`.
pub fn bgs(p: &Distribution) -> f64 {
    p.shannon()
}

/// `k (1 − Σ p^q)/(q − 1)`; `q = 1` is an error.
pub fn tsallis(p: &Distribution, q: f64, k_scale: f64) -> Result<f64> {
    EntropySpec::tsallis(q, k_scale)?.evaluate(p)
}

/// `ln Σ p^α / (1 − α)`; `α = 1` is an error.
pub fn renyi(p: &Distribution, alpha: f64) -> Result<f64> {
    EntropySpec::renyi(alpha)?.evaluate(p)
}
