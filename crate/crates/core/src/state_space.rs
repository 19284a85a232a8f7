//! Asymptotic growth laws `W(N)` of the number of available states and the
//! extensivity scan `S(N)/N` on the uniform ensemble.
//!
//! `N` is real-valued here: the generator derivation composes the inverse of
//! `W` with an exponential, so a continuous inverse is needed.

use serde::{Deserialize, Serialize};

use crate::entropy::EntropySpec;
use crate::error::{Error, Result};
use crate::lambertw::lambert_w0;

/// Growth class of the state space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", try_from = "RawModel")]
pub enum StateSpaceModel {
    /// `W(N) = N^a`
    Algebraic { a: f64 },
    /// `W(N) = k^N`
    Exponential { k: f64 },
    /// `W(N) = N^{γN}`
    SuperExponential { gamma: f64 },
}

#[derive(Deserialize)]
#[serde(tag = "kind")]
enum RawModel {
    Algebraic { a: f64 },
    Exponential { k: f64 },
    SuperExponential { gamma: f64 },
}

impl TryFrom<RawModel> for StateSpaceModel {
    type Error = Error;

    fn try_from(raw: RawModel) -> Result<Self> {
        match raw {
            RawModel::Algebraic { a } => Self::algebraic(a),
            RawModel::Exponential { k } => Self::exponential(k),
            RawModel::SuperExponential { gamma } => Self::super_exponential(gamma),
        }
    }
}

impl StateSpaceModel {
    pub fn algebraic(a: f64) -> Result<Self> {
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::invalid(format!("algebraic exponent a must be > 0, got {a}")));
        }
        Ok(Self::Algebraic { a })
    }

    pub fn exponential(k: f64) -> Result<Self> {
        if !(k > 1.0) || !k.is_finite() {
            return Err(Error::invalid(format!("states per component k must be > 1, got {k}")));
        }
        Ok(Self::Exponential { k })
    }

    pub fn super_exponential(gamma: f64) -> Result<Self> {
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::invalid(format!("gamma must be > 0, got {gamma}")));
        }
        Ok(Self::SuperExponential { gamma })
    }

    /// `ln W(N)`.
    pub fn log_states(&self, n: f64) -> Result<f64> {
        if !(n >= 1.0) {
            return Err(Error::invalid(format!("number of components must be >= 1, got {n}")));
        }
        Ok(match *self {
            Self::Algebraic { a } => a * n.ln(),
            Self::Exponential { k } => n * k.ln(),
            Self::SuperExponential { gamma } => gamma * n * n.ln(),
        })
    }

    /// The real `N` with `ln W(N) = log_w`.
    pub fn inverse_states(&self, log_w: f64) -> Result<f64> {
        if !(log_w >= 0.0) {
            return Err(Error::domain(format!("ln W must be >= 0, got {log_w}")));
        }
        Ok(match *self {
            Self::Algebraic { a } => (log_w / a).exp(),
            Self::Exponential { k } => log_w / k.ln(),
            Self::SuperExponential { gamma } => lambert_w0(log_w / gamma)?.exp(),
        })
    }
}

/// One row of an extensivity scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanRow {
    pub n: u64,
    pub entropy: f64,
    pub entropy_per_component: f64,
}

/// Evaluates `S(uniform(W(N)))/N` for each `N`, using only `ln W(N)`.
pub fn extensivity_scan(
    spec: &EntropySpec,
    model: &StateSpaceModel,
    ns: &[u64],
) -> Result<Vec<ScanRow>> {
    if ns.is_empty() {
        return Err(Error::invalid("extensivity scan needs at least one N"));
    }
    if ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("N values must be strictly ascending"));
    }
    ns.iter()
        .map(|&n| {
            let log_w = model.log_states(n as f64)?;
            let entropy = spec.evaluate_on_uniform_log_w(log_w)?;
            Ok(ScanRow {
                n,
                entropy,
                entropy_per_component: entropy / n as f64,
            })
        })
        .collect()
}

/// Convergence verdict on a scan: relative change of `S/N` between the last row
/// and the first row at or above `N_max/10` must be below `threshold`.
///
/// Returns `None` when the scan does not span a decade.
pub fn scan_converged(rows: &[ScanRow], threshold: f64) -> Option<bool> {
    let last = rows.last()?;
    let start = rows.iter().find(|r| r.n * 10 >= last.n)?;
    if start.n == last.n || start.n * 10 > last.n {
        return None;
    }
    let scale = last.entropy_per_component.abs().max(f64::MIN_POSITIVE);
    Some((last.entropy_per_component - start.entropy_per_component).abs() / scale < threshold)
}

/// Default threshold for [`scan_converged`].
pub const DEFAULT_CONVERGENCE_THRESHOLD: f64 = 1e-2;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::EntropySpec;

    #[test]
    fn log_states_examples() {
        let ln2 = 2f64.ln();
        let m = StateSpaceModel::exponential(2.0).unwrap();
        assert!((m.log_states(10.0).unwrap() - 10.0 * ln2).abs() < 1e-15);
        assert_eq!(StateSpaceModel::algebraic(3.0).unwrap().log_states(1.0).unwrap(), 0.0);
        let s = StateSpaceModel::super_exponential(1.0).unwrap();
        assert!((s.log_states(std::f64::consts::E).unwrap() - std::f64::consts::E).abs() < 1e-15);
        assert!(m.log_states(0.5).is_err());
    }

    #[test]
    fn inverse_states_examples() {
        let alg = StateSpaceModel::algebraic(2.0).unwrap();
        assert!((alg.inverse_states(2.0 * 5f64.ln()).unwrap() - 5.0).abs() < 1e-14);
        let exp = StateSpaceModel::exponential(std::f64::consts::E).unwrap();
        assert!((exp.inverse_states(7.0).unwrap() - 7.0).abs() < 1e-15);
        let sup = StateSpaceModel::super_exponential(1.0).unwrap();
        assert!((sup.inverse_states(10.0 * 10f64.ln()).unwrap() - 10.0).abs() < 1e-13);
        assert!(matches!(alg.inverse_states(-1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn invalid_models_rejected() {
        assert!(StateSpaceModel::algebraic(0.0).is_err());
        assert!(StateSpaceModel::exponential(1.0).is_err());
        assert!(StateSpaceModel::super_exponential(-2.0).is_err());
        let bad: std::result::Result<StateSpaceModel, _> =
            serde_json::from_str(r#"{"kind":"Exponential","k":0.5}"#);
        assert!(bad.is_err());
        let ok: StateSpaceModel = serde_json::from_str(r#"{"kind":"SuperExponential","gamma":1.5}"#).unwrap();
        assert_eq!(ok, StateSpaceModel::SuperExponential { gamma: 1.5 });
    }

    #[test]
    fn inverse_round_trip() {
        let models = [
            StateSpaceModel::algebraic(0.7).unwrap(),
            StateSpaceModel::algebraic(3.0).unwrap(),
            StateSpaceModel::exponential(2.0).unwrap(),
            StateSpaceModel::exponential(10.0).unwrap(),
            StateSpaceModel::super_exponential(0.5).unwrap(),
            StateSpaceModel::super_exponential(2.0).unwrap(),
        ];
        for m in models {
            let mut n = 1.0;
            while n <= 1e6 {
                let back = m.inverse_states(m.log_states(n).unwrap()).unwrap();
                assert!((back - n).abs() <= 1e-10 * n, "{m:?} {n} {back}");
                n *= 1.37;
            }
        }
    }

    #[test]
    fn scan_examples() {
        let ns: Vec<u64> = (1..=200).collect();
        let k = 3.0f64;
        let rows = extensivity_scan(
            &EntropySpec::non_trace_exponential(1.0, 2.0, k).unwrap(),
            &StateSpaceModel::exponential(k).unwrap(),
            &ns,
        )
        .unwrap();
        for r in &rows {
            assert!((r.entropy_per_component - 1.0).abs() < 1e-14);
        }

        let rows = extensivity_scan(
            &EntropySpec::non_trace_algebraic(1.0, 0.5, 2.0).unwrap(),
            &StateSpaceModel::algebraic(2.0).unwrap(),
            &ns,
        )
        .unwrap();
        for r in &rows {
            let n = r.n as f64;
            assert!((r.entropy_per_component - (n - 1.0) / n).abs() < 1e-13);
        }
        // Relative change over the last decade is 9/(N_max − 9): too large at 200.
        assert_eq!(scan_converged(&rows, DEFAULT_CONVERGENCE_THRESHOLD), Some(false));
        let long: Vec<u64> = (1..=2000).collect();
        let rows = extensivity_scan(
            &EntropySpec::non_trace_algebraic(1.0, 0.5, 2.0).unwrap(),
            &StateSpaceModel::algebraic(2.0).unwrap(),
            &long,
        )
        .unwrap();
        assert_eq!(scan_converged(&rows, DEFAULT_CONVERGENCE_THRESHOLD), Some(true));

        let gamma = 1.5;
        let rows = extensivity_scan(
            &EntropySpec::bgs(),
            &StateSpaceModel::super_exponential(gamma).unwrap(),
            &ns,
        )
        .unwrap();
        for r in &rows {
            assert!((r.entropy_per_component - gamma * (r.n as f64).ln()).abs() < 1e-12);
        }
        assert_eq!(scan_converged(&rows, DEFAULT_CONVERGENCE_THRESHOLD), Some(false));
    }

    #[test]
    fn scan_rejects_bad_n_lists() {
        let spec = EntropySpec::bgs();
        let m = StateSpaceModel::exponential(2.0).unwrap();
        assert!(extensivity_scan(&spec, &m, &[]).is_err());
        assert!(extensivity_scan(&spec, &m, &[3, 2]).is_err());
        assert!(extensivity_scan(&spec, &m, &[0]).is_err());
    }

    #[test]
    fn matched_pairs_approach_limit_monotonically() {
        let ns: Vec<u64> = (2..=100).collect();
        let pairs = [
            (
                EntropySpec::non_trace_algebraic(1.0, 2.0, 1.5).unwrap(),
                StateSpaceModel::algebraic(1.5).unwrap(),
                1.0,
            ),
            (
                EntropySpec::non_trace_super_exponential(1.0, 0.5, 2.0).unwrap(),
                StateSpaceModel::super_exponential(2.0).unwrap(),
                1.0,
            ),
            (
                EntropySpec::non_trace_exponential(1.0, 2.0, 5.0).unwrap(),
                StateSpaceModel::exponential(5.0).unwrap(),
                1.0,
            ),
        ];
        for (spec, model, limit) in pairs {
            let rows = extensivity_scan(&spec, &model, &ns).unwrap();
            let gaps: Vec<f64> = rows.iter().map(|r| (r.entropy_per_component - limit).abs()).collect();
            assert!(gaps.windows(2).all(|w| w[1] <= w[0] + 1e-15));
            assert!(*gaps.last().unwrap() <= 0.02);
        }
    }

    #[test]
    fn mismatched_pairs_diverge_or_vanish() {
        let ns: Vec<u64> = (3..=300).collect();
        let rows = extensivity_scan(
            &EntropySpec::bgs(),
            &StateSpaceModel::algebraic(2.0).unwrap(),
            &ns,
        )
        .unwrap();
        assert!(rows.windows(2).all(|w| w[1].entropy_per_component < w[0].entropy_per_component));
        assert!(rows.last().unwrap().entropy_per_component < 0.04);

        let ns: Vec<u64> = (1..=60).collect();
        let rows = extensivity_scan(
            &EntropySpec::tsallis(0.5, 1.0).unwrap(),
            &StateSpaceModel::exponential(2.0).unwrap(),
            &ns,
        )
        .unwrap();
        assert!(rows.windows(2).all(|w| w[1].entropy_per_component > w[0].entropy_per_component));
    }
}
