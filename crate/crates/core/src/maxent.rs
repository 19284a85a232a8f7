//! Entropy maximization under normalization and a linear mean-energy
//! constraint, and the q-exponential family its maximizers belong to.
//!
//! The feasible set `{p : Σ p_i = 1, Σ E_i p_i = E}` is an affine slice of the
//! simplex. The solver works in an orthonormal basis of its tangent space,
//! starting from the Boltzmann distribution with the right mean, and takes
//! Newton steps built from a finite-difference Hessian of the analytic
//! gradient, falling back to gradient ascent when the reduced Hessian is not
//! negative definite. Every step is shortened so that iterates stay strictly
//! inside the simplex.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::entropy::{EntropyKind, EntropySpec};
use crate::error::{Error, Result};
use crate::prob::Distribution;
use crate::sum::compensated_sum;

/// Projected-gradient max-norm accepted as a stationary point.
pub const STATIONARITY_TOLERANCE: f64 = 1e-8;
/// Iteration cap of the ascent loop.
pub const MAX_ITERATIONS: usize = 100_000;
/// Probabilities at or below this value mark a boundary solution.
pub const BOUNDARY_PROBABILITY: f64 = 1e-12;
/// Maximum relative deviation accepted by [`verify_qexponential_form`].
pub const QEXP_TOLERANCE: f64 = 1e-6;

/// The q-exponential `[1 + (1 − q) x]_+^{1/(1 − q)}`, with `e^x` at `q = 1`.
pub fn qexp(x: f64, q: f64) -> f64 {
    if q == 1.0 {
        return x.exp();
    }
    let u = (1.0 - q) * x;
    if u <= -1.0 {
        return 0.0;
    }
    (u.ln_1p() / (1.0 - q)).exp()
}

/// Energy levels and the prescribed mean energy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawConstraint")]
pub struct EnergyConstraint {
    levels: Vec<f64>,
    mean_target: f64,
}

#[derive(Deserialize)]
struct RawConstraint {
    levels: Vec<f64>,
    mean_target: f64,
}

impl TryFrom<RawConstraint> for EnergyConstraint {
    type Error = Error;

    fn try_from(raw: RawConstraint) -> Result<Self> {
        EnergyConstraint::new(raw.levels, raw.mean_target)
    }
}

impl EnergyConstraint {
    /// Checks that there are at least two finite levels and that the target is
    /// strictly between the extreme levels (or equal to the common level).
    pub fn new(levels: Vec<f64>, mean_target: f64) -> Result<Self> {
        if levels.len() < 2 {
            return Err(Error::invalid("maximization needs at least two energy levels"));
        }
        if levels.iter().any(|e| !e.is_finite()) || !mean_target.is_finite() {
            return Err(Error::invalid("energy levels and target must be finite"));
        }
        let (lo, hi) = min_max(&levels);
        if lo == hi {
            if mean_target != lo {
                return Err(Error::InfeasibleConstraint(format!(
                    "all levels equal {lo} but the target mean is {mean_target}"
                )));
            }
        } else if !(mean_target > lo && mean_target < hi) {
            return Err(Error::InfeasibleConstraint(format!(
                "target mean {mean_target} must lie strictly inside ({lo}, {hi})"
            )));
        }
        Ok(Self { levels, mean_target })
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn mean_target(&self) -> f64 {
        self.mean_target
    }

    /// Scale used for the mean-energy residual.
    pub fn scale(&self) -> f64 {
        self.levels
            .iter()
            .fold(self.mean_target.abs(), |m, e| m.max(e.abs()))
            .max(1.0)
    }
}

fn min_max(v: &[f64]) -> (f64, f64) {
    v.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)))
}

/// Outcome of [`maximize`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaxEntResult {
    /// Energy levels the solution refers to.
    pub levels: Vec<f64>,
    pub p_star: Distribution,
    /// `(λ₁, λ₂)` with `∂S/∂p_i = λ₁ + λ₂ E_i` at the solution.
    pub multipliers: (f64, f64),
    /// Max-norm of the gradient projected onto the constraint tangent space.
    pub stationarity_norm: f64,
    pub objective: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Some probability collapsed to (numerically) zero.
    pub boundary: bool,
    /// Whether the reduced Hessian at the solution is negative definite;
    /// `None` when the feasible set is a single point.
    pub local_maximum: Option<bool>,
}

struct Problem<'a> {
    spec: &'a EntropySpec,
    levels: &'a [f64],
    target: f64,
    /// Orthonormal basis of the constraint row space.
    rows: [Vec<f64>; 2],
    /// Orthonormal basis of its complement.
    tangent: Vec<Vec<f64>>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    compensated_sum(a.iter().zip(b).map(|(x, y)| x * y))
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

impl<'a> Problem<'a> {
    fn new(spec: &'a EntropySpec, c: &'a EnergyConstraint) -> Self {
        let w = c.levels.len();
        let mean = c.levels.iter().sum::<f64>() / w as f64;
        let u1 = vec![1.0 / (w as f64).sqrt(); w];
        let centred: Vec<f64> = c.levels.iter().map(|e| e - mean).collect();
        let norm = dot(&centred, &centred).sqrt();
        let u2 = centred.iter().map(|x| x / norm).collect();
        let rows = [u1, u2];

        // Gram–Schmidt (applied twice) of the coordinate axes against the row space.
        let mut tangent: Vec<Vec<f64>> = Vec::with_capacity(w.saturating_sub(2));
        for i in 0..w {
            if tangent.len() + 2 == w {
                break;
            }
            let mut v = vec![0.0; w];
            v[i] = 1.0;
            for _ in 0..2 {
                for b in rows.iter().chain(tangent.iter()) {
                    let proj = dot(&v, b);
                    v.iter_mut().zip(b).for_each(|(x, y)| *x -= proj * y);
                }
            }
            let n = dot(&v, &v).sqrt();
            if n > 1e-8 {
                v.iter_mut().for_each(|x| *x /= n);
                tangent.push(v);
            }
        }
        Self {
            spec,
            levels: &c.levels,
            target: c.mean_target,
            rows,
            tangent,
        }
    }

    fn dist(p: &[f64]) -> Distribution {
        Distribution { probs: p.to_vec() }
    }

    fn objective(&self, p: &[f64]) -> Result<f64> {
        self.spec.evaluate(&Self::dist(p))
    }

    fn gradient(&self, p: &[f64]) -> Result<Vec<f64>> {
        self.spec.gradient(&Self::dist(p))
    }

    /// Removes the row-space component of `v`.
    fn project(&self, v: &[f64]) -> Vec<f64> {
        let mut out = v.to_vec();
        for b in &self.rows {
            let proj = dot(v, b);
            out.iter_mut().zip(b).for_each(|(x, y)| *x -= proj * y);
        }
        out
    }

    /// Restores the two constraints exactly (up to rounding).
    fn restore(&self, p: &mut [f64]) {
        for _ in 0..2 {
            let total = compensated_sum(p.iter().copied());
            let mean = dot(p, self.levels);
            let w = p.len() as f64;
            let r1 = (total - 1.0) / w.sqrt();
            let centred_norm = dot(&self.rows[1], self.levels);
            // Σ E_i p_i − E split into its row-space coordinates.
            let e_bar = self.levels.iter().sum::<f64>() / w;
            let r2 = ((mean - self.target) - e_bar * (total - 1.0)) / centred_norm;
            for (x, (a, b)) in p.iter_mut().zip(self.rows[0].iter().zip(&self.rows[1])) {
                *x -= r1 * a + r2 * b;
            }
        }
    }

    fn reduced(&self, v: &[f64]) -> DVector<f64> {
        DVector::from_iterator(self.tangent.len(), self.tangent.iter().map(|z| dot(z, v)))
    }

    fn expand(&self, d: &DVector<f64>) -> Vec<f64> {
        let mut out = vec![0.0; self.levels.len()];
        for (z, &c) in self.tangent.iter().zip(d.iter()) {
            out.iter_mut().zip(z).for_each(|(x, y)| *x += c * y);
        }
        out
    }

    /// Central-difference Hessian of `S` restricted to the tangent space.
    fn reduced_hessian(&self, p: &[f64]) -> Result<Option<DMatrix<f64>>> {
        let m = self.tangent.len();
        let min_p = p.iter().copied().fold(f64::INFINITY, f64::min);
        let h = (1e-6f64).min(0.25 * min_p);
        if !(h > 0.0) {
            return Ok(None);
        }
        let mut hess = DMatrix::zeros(m, m);
        for (j, z) in self.tangent.iter().enumerate() {
            let up: Vec<f64> = p.iter().zip(z).map(|(x, y)| x + h * y).collect();
            let dn: Vec<f64> = p.iter().zip(z).map(|(x, y)| x - h * y).collect();
            let gu = self.gradient(&up)?;
            let gd = self.gradient(&dn)?;
            if gu.iter().chain(&gd).any(|g| !g.is_finite()) {
                return Ok(None);
            }
            let diff: Vec<f64> = gu.iter().zip(&gd).map(|(a, b)| (a - b) / (2.0 * h)).collect();
            hess.set_column(j, &self.reduced(&diff));
        }
        Ok(Some((&hess + hess.transpose()) * 0.5))
    }

    /// Largest step along `d` keeping every entry above 1% of its current value.
    fn max_step(p: &[f64], d: &[f64]) -> f64 {
        p.iter()
            .zip(d)
            .filter(|(_, &di)| di < 0.0)
            .map(|(&pi, &di)| 0.99 * pi / -di)
            .fold(f64::INFINITY, f64::min)
    }

    fn step(p: &[f64], d: &[f64], tau: f64) -> Vec<f64> {
        p.iter().zip(d).map(|(x, y)| x + tau * y).collect()
    }

    /// Boltzmann distribution `∝ e^{−β E_i}` with the target mean.
    fn boltzmann_start(&self) -> Vec<f64> {
        let (lo, _) = min_max(self.levels);
        let weights = |beta: f64| -> Vec<f64> {
            // Shift by the level that dominates for the sign of β.
            let shift = if beta >= 0.0 {
                lo
            } else {
                min_max(self.levels).1
            };
            let w: Vec<f64> = self.levels.iter().map(|e| (-beta * (e - shift)).exp()).collect();
            let z = compensated_sum(w.iter().copied());
            w.into_iter().map(|x| x / z).collect()
        };
        let mean = |beta: f64| dot(&weights(beta), self.levels);
        let (mut a, mut b) = (-1.0, 1.0);
        while mean(b) > self.target && b < 1e300 {
            b *= 2.0;
        }
        while mean(a) < self.target && a > -1e300 {
            a *= 2.0;
        }
        // mean(β) is decreasing: mean(a) ≥ target ≥ mean(b).
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if mean(mid) > self.target {
                a = mid;
            } else {
                b = mid;
            }
        }
        weights(0.5 * (a + b))
    }

    fn multipliers(&self, grad: &[f64]) -> (f64, f64) {
        // Least squares for grad_i ≈ λ₁ + λ₂ E_i over finite entries.
        let pts: Vec<(f64, f64)> = self
            .levels
            .iter()
            .zip(grad)
            .filter(|(_, g)| g.is_finite())
            .map(|(&e, &g)| (e, g))
            .collect();
        let n = pts.len() as f64;
        if n == 0.0 {
            return (f64::NAN, f64::NAN);
        }
        let me = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let mg = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let see: f64 = pts.iter().map(|p| (p.0 - me).powi(2)).sum();
        let seg: f64 = pts.iter().map(|p| (p.0 - me) * (p.1 - mg)).sum();
        let l2 = if see > 0.0 { seg / see } else { 0.0 };
        (mg - l2 * me, l2)
    }

    /// Derivative-free ascent: golden-section searches along each tangent axis.
    fn coordinate_exchange(&self, mut p: Vec<f64>, budget: usize) -> Result<(Vec<f64>, usize)> {
        let mut f = self.objective(&p)?;
        let mut used = 0;
        while used < budget {
            let before = f;
            for z in &self.tangent {
                // Feasible interval along z.
                let (mut t_lo, mut t_hi) = (f64::NEG_INFINITY, f64::INFINITY);
                for (&pi, &zi) in p.iter().zip(z) {
                    if zi > 0.0 {
                        t_lo = t_lo.max(-pi / zi);
                    } else if zi < 0.0 {
                        t_hi = t_hi.min(-pi / zi);
                    }
                }
                let eval = |t: f64| self.objective(&Self::step(&p, z, t));
                let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
                let (mut a, mut b) = (t_lo, t_hi);
                let mut c = b - inv_phi * (b - a);
                let mut d = a + inv_phi * (b - a);
                let (mut fc, mut fd) = (eval(c)?, eval(d)?);
                for _ in 0..80 {
                    if fc > fd {
                        b = d;
                        d = c;
                        fd = fc;
                        c = b - inv_phi * (b - a);
                        fc = eval(c)?;
                    } else {
                        a = c;
                        c = d;
                        fc = fd;
                        d = a + inv_phi * (b - a);
                        fd = eval(d)?;
                    }
                }
                let t = 0.5 * (a + b);
                let cand = Self::step(&p, z, t);
                let fnew = self.objective(&cand)?;
                if fnew > f && cand.iter().all(|&x| x >= 0.0) {
                    p = cand;
                    f = fnew;
                }
                used += 1;
            }
            if f - before <= 1e-15 * f.abs().max(1.0) {
                break;
            }
        }
        Ok((p, used))
    }
}

/// Maximizes `S[p]` subject to `Σ p_i = 1` and `Σ E_i p_i = E`.
///
/// Non-convergence is reported through [`MaxEntResult::converged`] together
/// with the last iterate, never as an error.
pub fn maximize(spec: &EntropySpec, constraint: &EnergyConstraint) -> Result<MaxEntResult> {
    let w = constraint.levels.len();
    let (lo, hi) = min_max(&constraint.levels);
    if lo == hi {
        let p = Distribution::uniform(w)?;
        let grad = spec.gradient(&p)?;
        let objective = spec.evaluate(&p)?;
        return Ok(MaxEntResult {
            levels: constraint.levels.clone(),
            multipliers: (grad[0], 0.0),
            p_star: p,
            stationarity_norm: 0.0,
            objective,
            iterations: 0,
            converged: true,
            boundary: false,
            local_maximum: None,
        });
    }
    let problem = Problem::new(spec, constraint);
    let mut p = problem.boltzmann_start();
    problem.restore(&mut p);
    let mut iterations = 0;
    let mut step_scale = 1.0f64;

    if !problem.tangent.is_empty() {
        let mut f = problem.objective(&p)?;
        while iterations < MAX_ITERATIONS {
            let grad = problem.gradient(&p)?;
            if grad.iter().any(|g| !g.is_finite()) {
                let (q, used) = problem.coordinate_exchange(p, MAX_ITERATIONS - iterations)?;
                p = q;
                iterations += used.max(1);
                break;
            }
            let pg = problem.project(&grad);
            let norm = max_abs(&pg);
            if norm <= 1e-14 * max_abs(&grad).max(1.0) {
                break;
            }
            iterations += 1;
            let g_r = problem.reduced(&grad);

            let newton = match problem.reduced_hessian(&p)? {
                Some(h) => (-h).cholesky().map(|c| c.solve(&g_r)),
                None => None,
            };
            let mut accepted = false;
            if let Some(d_r) = newton {
                let d = problem.expand(&d_r);
                let slope = g_r.dot(&d_r);
                let tau_max = Problem::max_step(&p, &d).min(1.0);
                let mut tau = tau_max;
                for _ in 0..60 {
                    let cand = Problem::step(&p, &d, tau);
                    let fc = problem.objective(&cand)?;
                    if fc >= f + 1e-4 * tau * slope && fc > f {
                        p = cand;
                        f = fc;
                        accepted = true;
                        break;
                    }
                    tau *= 0.5;
                }
                if !accepted {
                    // Objective differences are below rounding; accept the
                    // full step if it reduces the projected gradient.
                    let cand = Problem::step(&p, &d, tau_max);
                    let gc = problem.gradient(&cand)?;
                    if gc.iter().all(|g| g.is_finite()) && max_abs(&problem.project(&gc)) < 0.5 * norm {
                        f = problem.objective(&cand)?;
                        p = cand;
                        accepted = true;
                    }
                }
            }
            if !accepted {
                let d = pg;
                let slope = dot(&d, &grad);
                let tau_max = Problem::max_step(&p, &d);
                let mut tau = (step_scale / norm).min(tau_max);
                for _ in 0..60 {
                    let cand = Problem::step(&p, &d, tau);
                    let fc = problem.objective(&cand)?;
                    if fc >= f + 1e-4 * tau * slope && fc > f {
                        p = cand;
                        accepted = true;
                        step_scale = (2.0 * tau * norm).min(1e6);
                        break;
                    }
                    tau *= 0.5;
                }
                if !accepted {
                    step_scale = (step_scale * 0.5).max(1e-12);
                }
            }
            if !accepted {
                break;
            }
            problem.restore(&mut p);
            f = problem.objective(&p)?;
        }
    }

    problem.restore(&mut p);
    let boundary = p.iter().any(|&x| x <= BOUNDARY_PROBABILITY);
    for x in p.iter_mut() {
        *x = x.max(0.0);
    }
    let grad = problem.gradient(&p)?;
    let stationarity_norm = if problem.tangent.is_empty() {
        0.0
    } else if grad.iter().all(|g| g.is_finite()) {
        max_abs(&problem.project(&grad))
    } else {
        f64::INFINITY
    };
    let local_maximum = if problem.tangent.is_empty() {
        None
    } else {
        Some(match problem.reduced_hessian(&p)? {
            Some(h) => (-h).cholesky().is_some(),
            None => false,
        })
    };
    let objective = problem.objective(&p)?;
    Ok(MaxEntResult {
        levels: constraint.levels.clone(),
        multipliers: problem.multipliers(&grad),
        p_star: Distribution { probs: p },
        stationarity_norm,
        objective,
        iterations,
        converged: stationarity_norm <= STATIONARITY_TOLERANCE,
        boundary,
        local_maximum,
    })
}

/// Parameters of `p_i = c · qexp(−β E_i, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QExpParams {
    pub q: f64,
    pub beta: f64,
    pub c: f64,
}

/// Outcome of [`verify_qexponential_form`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QExpFit {
    /// False for boundary solutions or fewer than three distinct levels.
    pub applicable: bool,
    pub is_qexp: bool,
    pub params: Option<QExpParams>,
    /// Max relative deviation between fitted and observed probabilities.
    pub residual: f64,
}

impl QExpFit {
    fn not_applicable() -> Self {
        Self {
            applicable: false,
            is_qexp: false,
            params: None,
            residual: f64::NAN,
        }
    }
}

/// Exponent `s = 1 − q` that the stationarity conditions predict, if any.
fn predicted_exponent(spec: &EntropySpec) -> Option<f64> {
    if spec.is_shannon_limit() {
        return Some(0.0);
    }
    match spec.kind() {
        EntropyKind::Bgs | EntropyKind::TraceII => Some(0.0),
        EntropyKind::Tsallis => spec.q().map(|q| q - 1.0),
        EntropyKind::TraceI => spec.a().map(|a| -1.0 / a),
        EntropyKind::TraceIII => None,
        _ => spec.alpha().map(|a| a - 1.0),
    }
}

/// Box–Cox fit at exponent `s`: `(p^s − 1)/s ≈ a + b E`.
fn box_cox_fit(levels: &[f64], probs: &[f64], s: f64) -> (f64, f64, f64) {
    let y: Vec<f64> = probs
        .iter()
        .map(|p| if s == 0.0 { p.ln() } else { (s * p.ln()).exp_m1() / s })
        .collect();
    let n = levels.len() as f64;
    let me = levels.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let see: f64 = levels.iter().map(|e| (e - me).powi(2)).sum();
    let sey: f64 = levels.iter().zip(&y).map(|(e, v)| (e - me) * (v - my)).sum();
    let b = sey / see;
    let a = my - b * me;
    let residual = levels
        .iter()
        .zip(probs)
        .map(|(&e, &p)| {
            let lin = a + b * e;
            let fitted = if s == 0.0 {
                lin.exp()
            } else if s * lin <= -1.0 {
                0.0
            } else {
                ((s * lin).ln_1p() / s).exp()
            };
            (fitted - p).abs() / p
        })
        .fold(0.0, f64::max);
    (a, b, residual)
}

/// Fits the maximizer to `p_i = c · qexp(−β E_i, q)`.
///
/// Equal levels are merged (their probabilities averaged) before fitting.
pub fn verify_qexponential_form(result: &MaxEntResult, spec: &EntropySpec) -> QExpFit {
    if result.boundary {
        return QExpFit::not_applicable();
    }
    let mut pairs: Vec<(f64, f64)> = result
        .levels
        .iter()
        .copied()
        .zip(result.p_star.probs().iter().copied())
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut levels: Vec<f64> = Vec::new();
    let mut probs: Vec<f64> = Vec::new();
    let mut counts: Vec<f64> = Vec::new();
    for (e, p) in pairs {
        if levels.last() == Some(&e) {
            *probs.last_mut().unwrap() += p;
            *counts.last_mut().unwrap() += 1.0;
        } else {
            levels.push(e);
            probs.push(p);
            counts.push(1.0);
        }
    }
    if levels.len() < 3 {
        return QExpFit::not_applicable();
    }
    probs.iter_mut().zip(&counts).for_each(|(p, c)| *p /= c);

    let score = |s: f64| box_cox_fit(&levels, &probs, s).2;
    let mut best_s = 0.0;
    let mut best = score(0.0);
    for i in 0..=2000 {
        let s = -10.0 + 0.01 * i as f64;
        let r = score(s);
        if r < best {
            best = r;
            best_s = s;
        }
    }
    // Golden-section refinement around the best grid point.
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (best_s - 0.01, best_s + 0.01);
    for _ in 0..100 {
        let c = b - inv_phi * (b - a);
        let d = a + inv_phi * (b - a);
        if score(c) < score(d) {
            b = d;
        } else {
            a = c;
        }
    }
    for s in [0.5 * (a + b)].into_iter().chain(predicted_exponent(spec)) {
        let r = score(s);
        if r < best {
            best = r;
            best_s = s;
        }
    }

    let (a, b, residual) = box_cox_fit(&levels, &probs, best_s);
    let big_a = 1.0 + best_s * a;
    let c = if best_s == 0.0 { a.exp() } else { (big_a.ln() / best_s).exp() };
    QExpFit {
        applicable: true,
        is_qexp: residual <= QEXP_TOLERANCE,
        params: Some(QExpParams {
            q: 1.0 - best_s,
            beta: -b / big_a,
            c,
        }),
        residual,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boltzmann(levels: &[f64], beta: f64) -> Vec<f64> {
        let w: Vec<f64> = levels.iter().map(|e| (-beta * e).exp()).collect();
        let z: f64 = w.iter().sum();
        w.into_iter().map(|x| x / z).collect()
    }

    #[test]
    fn qexp_examples() {
        for q in [0.2, 1.0, 1.7, 3.0] {
            assert_eq!(qexp(0.0, q), 1.0);
        }
        assert_eq!(qexp(0.7, 1.0), 0.7f64.exp());
        for x in [-3.0, -0.5, 0.2, 0.9] {
            assert!((qexp(x, 2.0) - 1.0 / (1.0 - x)).abs() <= 1e-14 * (1.0 / (1.0 - x)));
        }
        assert_eq!(qexp(-3.0, 0.5), 0.0);
    }

    #[test]
    fn symmetric_two_level() {
        let c = EnergyConstraint::new(vec![0.0, 1.0], 0.5).unwrap();
        let r = maximize(&EntropySpec::bgs(), &c).unwrap();
        assert!((r.p_star.probs()[0] - 0.5).abs() < 1e-15);
        assert!(r.converged);
    }

    #[test]
    fn two_level_boltzmann() {
        let e1 = (-1f64).exp();
        let c = EnergyConstraint::new(vec![0.0, 1.0], e1 / (1.0 + e1)).unwrap();
        let r = maximize(&EntropySpec::bgs(), &c).unwrap();
        let want = boltzmann(&[0.0, 1.0], 1.0);
        for (a, b) in r.p_star.probs().iter().zip(&want) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!((r.multipliers.1 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn infeasible_targets() {
        assert!(matches!(
            EnergyConstraint::new(vec![0.0, 1.0], 1.5),
            Err(Error::InfeasibleConstraint(_))
        ));
        assert!(matches!(
            EnergyConstraint::new(vec![0.0, 1.0], 1.0),
            Err(Error::InfeasibleConstraint(_))
        ));
        assert!(EnergyConstraint::new(vec![2.0, 2.0], 2.0).is_ok());
        assert!(EnergyConstraint::new(vec![2.0], 2.0).is_err());
        let bad: std::result::Result<EnergyConstraint, _> =
            serde_json::from_str(r#"{"levels":[0,1],"mean_target":3}"#);
        assert!(bad.is_err());
    }

    #[test]
    fn bgs_matches_boltzmann_on_random_levels() {
        let mut state = 99u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for w in 3..=10 {
            let levels: Vec<f64> = (0..w).map(|_| 3.0 * next()).collect();
            let beta = 2.0 * next() - 1.0;
            let want = boltzmann(&levels, beta);
            let mean: f64 = levels.iter().zip(&want).map(|(e, p)| e * p).sum();
            let c = EnergyConstraint::new(levels, mean).unwrap();
            let r = maximize(&EntropySpec::bgs(), &c).unwrap();
            assert!(r.converged, "W={w}: {}", r.stationarity_norm);
            let err = r.p_star.probs().iter().zip(&want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            assert!(err <= 1e-8, "W={w}: {err}");
        }
    }

    #[test]
    fn tsallis_maximizer_is_qexponential() {
        let spec = EntropySpec::tsallis(0.5, 1.0).unwrap();
        let c = EnergyConstraint::new(vec![0.0, 1.0, 2.0], 0.8).unwrap();
        let r = maximize(&spec, &c).unwrap();
        assert!(r.converged && !r.boundary);
        assert_eq!(r.local_maximum, Some(true));
        let fit = verify_qexponential_form(&r, &spec);
        assert!(fit.is_qexp && fit.residual <= 1e-8, "{fit:?}");
        assert!((fit.params.unwrap().q - 1.5).abs() < 1e-6);
    }

    #[test]
    fn equal_levels_are_not_fittable() {
        let c = EnergyConstraint::new(vec![1.0; 4], 1.0).unwrap();
        let r = maximize(&EntropySpec::bgs(), &c).unwrap();
        assert_eq!(r.p_star, Distribution::uniform(4).unwrap());
        assert!(!verify_qexponential_form(&r, &EntropySpec::bgs()).applicable);
    }

    #[test]
    fn constraints_hold() {
        let c = EnergyConstraint::new(vec![0.0, 0.3, 1.1, 2.0, 2.5], 1.7).unwrap();
        let spec = EntropySpec::non_trace_super_exponential(1.0, 0.6, 1.0).unwrap();
        let r = maximize(&spec, &c).unwrap();
        let p = r.p_star.probs();
        assert!((p.iter().sum::<f64>() - 1.0).abs() <= 1e-10);
        let mean: f64 = p.iter().zip(c.levels()).map(|(a, b)| a * b).sum();
        assert!((mean - 1.7).abs() <= 1e-8 * c.scale());
        assert!(r.converged);
    }

    #[test]
    fn stationarity_against_finite_differences() {
        let c = EnergyConstraint::new(vec![0.0, 0.4, 1.0, 1.5, 3.0], 1.1).unwrap();
        let spec = EntropySpec::renyi(2.0).unwrap();
        let r = maximize(&spec, &c).unwrap();
        let problem = Problem::new(&spec, &c);
        let p = r.p_star.probs();
        let mut state = 5u64;
        for _ in 0..50 {
            let coeffs: Vec<f64> = problem
                .tangent
                .iter()
                .map(|_| {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
                    ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5
                })
                .collect();
            let d = problem.expand(&DVector::from_vec(coeffs));
            let h = 1e-6;
            let up = problem.objective(&Problem::step(p, &d, h)).unwrap();
            let dn = problem.objective(&Problem::step(p, &d, -h)).unwrap();
            assert!(((up - dn) / (2.0 * h)).abs() <= 1e-6);
        }
    }

    #[test]
    fn two_level_monotonicity() {
        let mut last = 1.0;
        for i in 1..20 {
            let c = EnergyConstraint::new(vec![0.0, 2.0], 0.1 * i as f64).unwrap();
            let r = maximize(&EntropySpec::tsallis(2.0, 1.0).unwrap(), &c).unwrap();
            assert!(r.p_star.probs()[0] <= last);
            last = r.p_star.probs()[0];
        }
    }
}
