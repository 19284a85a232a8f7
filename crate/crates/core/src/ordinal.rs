//! Ordinal patterns of time series and the entropies built on them.
//!
//! A window `(x_t, …, x_{t+L−1})` is mapped to the permutation `ρ` that sorts
//! it ascending. Ties are broken by position: the earlier sample ranks lower.
//! Patterns are keyed by their Lehmer code (index in the factorial number
//! system), which fits in 64 bits for `L ≤ 20`.
//!
//! Complexity classes describe how the number of allowed patterns `A_L` grows
//! with `L`, through a complexity function `g` with `ln A_L ~ g(L)`; the group
//! permutation entropy of order `α` is `g⁻¹(R_α(p_L)) − g⁻¹(0)`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lambertw::lambert_w0;
use crate::prob::log_sum_pow;
use crate::sum::compensated_sum;

/// Largest supported pattern length (`20!` is the largest factorial below 2⁶⁴).
pub const MAX_PATTERN_LENGTH: usize = 20;

/// Largest pattern length accepted by [`estimate_complexity_class`].
pub const MAX_CLASSIFY_LENGTH: usize = 9;

/// Windows per parallel work item.
const PARALLEL_GRAIN: usize = 1 << 14;

/// `n!` for `n ≤ 20`.
pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// A permutation `(ρ₀, …, ρ_{L−1})` of `0..L` with `x_{ρ₀} ≤ x_{ρ₁} ≤ …`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrdinalPattern {
    ranks: Vec<u8>,
}

impl OrdinalPattern {
    pub fn new(ranks: Vec<u8>) -> Result<Self> {
        let l = ranks.len();
        check_length(l)?;
        let mut seen = [false; MAX_PATTERN_LENGTH];
        for &r in &ranks {
            if r as usize >= l || seen[r as usize] {
                return Err(Error::invalid(format!("{ranks:?} is not a permutation of 0..{l}")));
            }
            seen[r as usize] = true;
        }
        Ok(Self { ranks })
    }

    pub fn ranks(&self) -> &[u8] {
        &self.ranks
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    /// Index of the pattern in lexicographic order of permutations.
    pub fn lehmer_index(&self) -> u64 {
        lehmer(&self.ranks)
    }

    /// Inverse of [`OrdinalPattern::lehmer_index`].
    pub fn from_lehmer(index: u64, l: usize) -> Result<Self> {
        check_length(l)?;
        if index >= factorial(l) {
            return Err(Error::invalid(format!("Lehmer index {index} out of range for L = {l}")));
        }
        let mut pool: Vec<u8> = (0..l as u8).collect();
        let mut rest = index;
        let mut ranks = Vec::with_capacity(l);
        for i in 0..l {
            let f = factorial(l - 1 - i);
            let digit = (rest / f) as usize;
            rest %= f;
            ranks.push(pool.remove(digit));
        }
        Ok(Self { ranks })
    }
}

fn check_length(l: usize) -> Result<()> {
    if !(2..=MAX_PATTERN_LENGTH).contains(&l) {
        return Err(Error::invalid(format!(
            "pattern length must be in 2..={MAX_PATTERN_LENGTH}, got {l}"
        )));
    }
    Ok(())
}

fn lehmer(ranks: &[u8]) -> u64 {
    let l = ranks.len();
    let mut index = 0u64;
    for i in 0..l {
        let smaller = ranks[i + 1..].iter().filter(|&&r| r < ranks[i]).count() as u64;
        index = index * (l - i) as u64 + smaller;
    }
    index
}

/// Stable argsort of a short window into `out`.
fn argsort_into(window: &[f64], out: &mut [u8]) {
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = i as u8;
    }
    for i in 1..window.len() {
        let key = out[i];
        let mut j = i;
        while j > 0 && window[out[j - 1] as usize] > window[key as usize] {
            out[j] = out[j - 1];
            j -= 1;
        }
        out[j] = key;
    }
}

fn window_key(window: &[f64]) -> u64 {
    let mut buf = [0u8; MAX_PATTERN_LENGTH];
    let ranks = &mut buf[..window.len()];
    argsort_into(window, ranks);
    lehmer(ranks)
}

/// The ordinal pattern of a window.
pub fn pattern_of(window: &[f64]) -> Result<OrdinalPattern> {
    check_length(window.len())?;
    if window.iter().any(|x| x.is_nan()) {
        return Err(Error::invalid("window contains NaN"));
    }
    let mut ranks = vec![0u8; window.len()];
    argsort_into(window, &mut ranks);
    Ok(OrdinalPattern { ranks })
}

/// Empirical distribution of ordinal patterns of one length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternDistribution {
    #[serde(rename = "L")]
    l: usize,
    total: u64,
    /// Lehmer index → count; only observed patterns are stored.
    counts: BTreeMap<u64, u64>,
}

impl PatternDistribution {
    /// Builds a distribution from explicit counts; zero counts are dropped.
    pub fn from_counts(l: usize, counts: BTreeMap<u64, u64>) -> Result<Self> {
        check_length(l)?;
        let limit = factorial(l);
        if let Some(k) = counts.keys().find(|&&k| k >= limit) {
            return Err(Error::invalid(format!("Lehmer index {k} out of range for L = {l}")));
        }
        let counts: BTreeMap<u64, u64> = counts.into_iter().filter(|&(_, c)| c > 0).collect();
        let total = counts.values().sum();
        Ok(Self { l, total, counts })
    }

    pub fn pattern_length(&self) -> usize {
        self.l
    }

    pub fn total_windows(&self) -> u64 {
        self.total
    }

    pub fn counts(&self) -> &BTreeMap<u64, u64> {
        &self.counts
    }

    pub fn count(&self, pattern: &OrdinalPattern) -> u64 {
        if pattern.len() != self.l {
            return 0;
        }
        self.counts.get(&pattern.lehmer_index()).copied().unwrap_or(0)
    }

    /// `A_L`, the number of patterns that occur.
    pub fn allowed_count(&self) -> usize {
        self.counts.len()
    }

    /// Relative frequencies of the observed patterns, in Lehmer order.
    pub fn probabilities(&self) -> Vec<f64> {
        let t = self.total as f64;
        self.counts.values().map(|&c| c as f64 / t).collect()
    }

    fn require_nonempty(&self) -> Result<()> {
        if self.total == 0 {
            return Err(Error::invalid("pattern distribution has no windows"));
        }
        Ok(())
    }
}

fn window_count(n: usize, l: usize, stride: usize) -> Result<usize> {
    check_length(l)?;
    if stride == 0 {
        return Err(Error::invalid("stride must be >= 1"));
    }
    if n < l {
        return Err(Error::invalid(format!("series of length {n} is shorter than L = {l}")));
    }
    Ok((n - l) / stride + 1)
}

fn check_series(series: &[f64]) -> Result<()> {
    if let Some(i) = series.iter().position(|x| x.is_nan()) {
        return Err(Error::invalid(format!("series value at index {i} is NaN")));
    }
    Ok(())
}

/// Counts patterns over windows starting at `0, stride, 2·stride, …`,
/// splitting the windows across the current rayon pool.
pub fn pattern_distribution(series: &[f64], l: usize, stride: usize) -> Result<PatternDistribution> {
    let m = window_count(series.len(), l, stride)?;
    check_series(series)?;
    let key = |t: usize| window_key(&series[t * stride..t * stride + l]);
    let counts: BTreeMap<u64, u64> = if l <= 8 {
        let size = factorial(l) as usize;
        let dense = (0..m)
            .into_par_iter()
            .with_min_len(PARALLEL_GRAIN)
            .fold(
                || vec![0u64; size],
                |mut acc, t| {
                    acc[key(t) as usize] += 1;
                    acc
                },
            )
            .reduce(
                || vec![0u64; size],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            );
        dense
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c > 0)
            .map(|(k, c)| (k as u64, c))
            .collect()
    } else {
        (0..m)
            .into_par_iter()
            .with_min_len(PARALLEL_GRAIN)
            .fold(HashMap::new, |mut acc: HashMap<u64, u64>, t| {
                *acc.entry(key(t)).or_default() += 1;
                acc
            })
            .reduce(HashMap::new, |mut a, b| {
                for (k, c) in b {
                    *a.entry(k).or_default() += c;
                }
                a
            })
            .into_iter()
            .collect()
    };
    Ok(PatternDistribution {
        l,
        total: m as u64,
        counts,
    })
}

/// Single-threaded reference implementation of [`pattern_distribution`].
pub fn pattern_distribution_sequential(
    series: &[f64],
    l: usize,
    stride: usize,
) -> Result<PatternDistribution> {
    let m = window_count(series.len(), l, stride)?;
    check_series(series)?;
    let mut counts = BTreeMap::new();
    for t in 0..m {
        *counts.entry(window_key(&series[t * stride..t * stride + l])).or_default() += 1;
    }
    Ok(PatternDistribution {
        l,
        total: m as u64,
        counts,
    })
}

/// Shannon entropy of the pattern frequencies, `H*(L)`.
pub fn permutation_entropy(pd: &PatternDistribution) -> Result<f64> {
    pd.require_nonempty()?;
    Ok(-compensated_sum(pd.probabilities().into_iter().map(|p| p * p.ln())))
}

/// `ln A_L`.
pub fn topological_permutation_entropy(pd: &PatternDistribution) -> Result<f64> {
    pd.require_nonempty()?;
    Ok((pd.allowed_count() as f64).ln())
}

/// Rényi entropy of the pattern frequencies for `α ≥ 0`; `α = 0` gives
/// `ln A_L` and `α = 1` the Shannon value.
pub fn renyi_permutation_entropy(pd: &PatternDistribution, alpha: f64) -> Result<f64> {
    pd.require_nonempty()?;
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return Err(Error::invalid(format!("alpha must be finite and >= 0, got {alpha}")));
    }
    if alpha == 0.0 {
        topological_permutation_entropy(pd)
    } else if alpha == 1.0 {
        permutation_entropy(pd)
    } else {
        let p = pd.probabilities();
        Ok(log_sum_pow(p.iter().copied(), alpha) / (1.0 - alpha))
    }
}

fn check_ascending(pds: &[PatternDistribution]) -> Result<()> {
    if pds.len() < 2 {
        return Err(Error::invalid("rates need at least two pattern lengths"));
    }
    if pds.windows(2).any(|w| w[0].l >= w[1].l) {
        return Err(Error::invalid("pattern lengths must be strictly ascending"));
    }
    Ok(())
}

/// Finite-`L` estimates of the metric and topological permutation entropy rates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateRow {
    #[serde(rename = "L")]
    pub l: usize,
    /// `H*(L)/L`
    pub h_metric: f64,
    /// `ln A_L / L`
    pub h_topological: f64,
}

pub fn entropy_rates(pds: &[PatternDistribution]) -> Result<Vec<RateRow>> {
    check_ascending(pds)?;
    pds.iter()
        .map(|pd| {
            let l = pd.l as f64;
            Ok(RateRow {
                l: pd.l,
                h_metric: permutation_entropy(pd)? / l,
                h_topological: topological_permutation_entropy(pd)? / l,
            })
        })
        .collect()
}

/// Growth class of `ln A_L`, given by its complexity function `g`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", try_from = "RawClass")]
pub enum ComplexityClass {
    /// `g(t) = c t`
    Exponential { c: f64 },
    /// `g(t) = t ln t`
    Factorial,
    /// `g(t) = c t ln t` with `0 < c < 1`
    ScaledFactorial { c: f64 },
    /// `g(t) = t ln^{(k)} t`, the `k`-fold iterated logarithm, `2 ≤ k ≤ 4`
    IteratedLog { k: u32 },
}

#[derive(Deserialize)]
#[serde(tag = "kind")]
enum RawClass {
    Exponential { c: f64 },
    Factorial,
    ScaledFactorial { c: f64 },
    IteratedLog { k: u32 },
}

impl TryFrom<RawClass> for ComplexityClass {
    type Error = Error;

    fn try_from(raw: RawClass) -> Result<Self> {
        match raw {
            RawClass::Exponential { c } => Self::exponential(c),
            RawClass::Factorial => Ok(Self::Factorial),
            RawClass::ScaledFactorial { c } => Self::scaled_factorial(c),
            RawClass::IteratedLog { k } => Self::iterated_log(k),
        }
    }
}

fn iterated_ln(mut t: f64, k: u32) -> f64 {
    for _ in 0..k {
        t = t.ln();
    }
    t
}

impl ComplexityClass {
    pub fn exponential(c: f64) -> Result<Self> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::invalid(format!("exponential class needs c > 0, got {c}")));
        }
        Ok(Self::Exponential { c })
    }

    pub fn scaled_factorial(c: f64) -> Result<Self> {
        if !(c > 0.0 && c < 1.0) {
            return Err(Error::invalid(format!("scaled factorial class needs 0 < c < 1, got {c}")));
        }
        Ok(Self::ScaledFactorial { c })
    }

    pub fn iterated_log(k: u32) -> Result<Self> {
        if !(2..=4).contains(&k) {
            return Err(Error::invalid(format!("iterated logarithm depth must be 2..=4, got {k}")));
        }
        Ok(Self::IteratedLog { k })
    }

    /// Left end `t₀` of the domain where `g` is increasing and `g(t₀) = 0`.
    pub fn t0(&self) -> f64 {
        match *self {
            Self::Exponential { .. } => 0.0,
            Self::Factorial | Self::ScaledFactorial { .. } => 1.0,
            // ln^{(k)} t = 0 at t = exp^{(k−1)}(1).
            Self::IteratedLog { k } => (1..k).fold(1.0, |t, _| f64::exp(t)),
        }
    }

    pub fn g(&self, t: f64) -> Result<f64> {
        if !(t >= self.t0()) {
            return Err(Error::domain(format!("g undefined at t = {t} (t0 = {})", self.t0())));
        }
        Ok(match *self {
            Self::Exponential { c } => c * t,
            Self::Factorial => t * t.ln(),
            Self::ScaledFactorial { c } => c * t * t.ln(),
            Self::IteratedLog { k } => t * iterated_ln(t, k),
        })
    }

    /// `g⁻¹(y)` in closed form where one exists, by bisection otherwise.
    pub fn g_inv(&self, y: f64) -> Result<f64> {
        self.check_image(y)?;
        match *self {
            Self::Exponential { c } => Ok(y / c),
            Self::Factorial => Ok(lambert_w0(y)?.exp()),
            Self::ScaledFactorial { c } => Ok(lambert_w0(y / c)?.exp()),
            Self::IteratedLog { .. } => self.g_inv_bisection(y),
        }
    }

    fn check_image(&self, y: f64) -> Result<()> {
        if !(y >= 0.0) || !y.is_finite() {
            return Err(Error::domain(format!("g⁻¹ needs a finite y >= g(t0) = 0, got {y}")));
        }
        Ok(())
    }

    /// Inverse of `g` by bisection on `[t₀, ∞)`, to relative precision 1e−12,
    /// for any class.
    pub fn g_inv_bisection(&self, y: f64) -> Result<f64> {
        self.check_image(y)?;
        if y == 0.0 {
            return Ok(self.t0());
        }
        let mut lo = self.t0();
        let mut hi = (2.0 * lo).max(2.0);
        while self.g(hi)? < y {
            lo = hi;
            hi *= 2.0;
            if !hi.is_finite() {
                return Err(Error::domain(format!("g⁻¹({y}) overflows")));
            }
        }
        while hi - lo > 1e-12 * hi {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.g(mid)? < y {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

pub fn class_g(cls: &ComplexityClass, t: f64) -> Result<f64> {
    cls.g(t)
}

pub fn class_g_inverse(cls: &ComplexityClass, y: f64) -> Result<f64> {
    cls.g_inv(y)
}

/// `Z_{g,α} = g⁻¹(R_α(p_L)) − g⁻¹(0)`; `α = 0` is the topological form.
pub fn group_permutation_entropy(pd: &PatternDistribution, cls: &ComplexityClass, alpha: f64) -> Result<f64> {
    let r = renyi_permutation_entropy(pd, alpha)?;
    Ok(cls.g_inv(r)? - cls.g_inv(0.0)?)
}

/// Closed forms of [`group_permutation_entropy`]: `R/c`, `e^{W(R)} − 1` and
/// `e^{W(R/c)} − 1`. `None` for the iterated-logarithm classes.
pub fn group_permutation_entropy_closed_form(
    pd: &PatternDistribution,
    cls: &ComplexityClass,
    alpha: f64,
) -> Result<Option<f64>> {
    let r = renyi_permutation_entropy(pd, alpha)?;
    Ok(match *cls {
        ComplexityClass::Exponential { c } => Some(r / c),
        ComplexityClass::Factorial => Some(lambert_w0(r)?.exp_m1()),
        ComplexityClass::ScaledFactorial { c } => Some(lambert_w0(r / c)?.exp_m1()),
        ComplexityClass::IteratedLog { .. } => None,
    })
}

/// Finite-`L` estimate `g⁻¹(R_α(p_L))/L` of the group entropy rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GroupRateRow {
    #[serde(rename = "L")]
    pub l: usize,
    pub z: f64,
}

pub fn group_rates(pds: &[PatternDistribution], cls: &ComplexityClass, alpha: f64) -> Result<Vec<GroupRateRow>> {
    check_ascending(pds)?;
    pds.iter()
        .map(|pd| {
            let r = renyi_permutation_entropy(pd, alpha)?;
            Ok(GroupRateRow {
                l: pd.l,
                z: cls.g_inv(r)? / pd.l as f64,
            })
        })
        .collect()
}

/// Candidate growth shapes for `ln A_L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassKind {
    Exponential,
    Factorial,
    ScaledFactorial,
    IteratedLog,
}

/// Least-squares fit of one candidate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CandidateFit {
    pub kind: ClassKind,
    /// Fitted coefficients: `[c, d]` for `c·g(L) + d`, `[c]` for scaled
    /// factorial, empty for the parameter-free factorial shape.
    pub params: Vec<f64>,
    pub rss: f64,
}

/// Outcome of [`estimate_complexity_class`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassEstimate {
    /// `None` when too few pattern lengths are usable.
    pub best: Option<ClassKind>,
    pub candidates: Vec<CandidateFit>,
    /// `(L, ln A_L)` for every usable `L`.
    pub observations: Vec<(usize, f64)>,
    pub low_confidence: bool,
    pub notes: Vec<String>,
}

fn ln_factorial(l: usize) -> f64 {
    (2..=l).map(|i| (i as f64).ln()).sum()
}

/// `min_c Σ (y − c x)²` with optional intercept; returns (params, rss).
fn linear_fit(x: &[f64], y: &[f64], intercept: bool) -> (Vec<f64>, f64) {
    let n = x.len() as f64;
    let (c, d) = if intercept {
        let mx = x.iter().sum::<f64>() / n;
        let my = y.iter().sum::<f64>() / n;
        let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
        let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
        let c = if sxx > 0.0 { sxy / sxx } else { 0.0 };
        (c, my - c * mx)
    } else {
        let sxx: f64 = x.iter().map(|v| v * v).sum();
        let sxy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
        (sxy / sxx, 0.0)
    };
    let rss = x.iter().zip(y).map(|(a, b)| (b - c * a - d).powi(2)).sum();
    let params = if intercept { vec![c, d] } else { vec![c] };
    (params, rss)
}

/// Compares the observed growth of `ln A_L` over `l_range` with the candidate
/// shapes `c·L + d`, `ln L!`, `c·ln L!` (`c < 1`) and `c·L ln ln L + d`.
///
/// The smallest residual sum of squares wins; residuals within 1e−9 (absolute)
/// of each other count as a tie, resolved towards fewer parameters.
/// Lengths with fewer windows than `L!` are flagged as low confidence, since
/// unseen and forbidden patterns cannot be told apart there.
pub fn estimate_complexity_class(series: &[f64], l_range: std::ops::RangeInclusive<usize>) -> Result<ClassEstimate> {
    let (lo, hi) = (*l_range.start(), *l_range.end());
    if lo < 2 || hi > MAX_CLASSIFY_LENGTH || lo > hi {
        return Err(Error::invalid(format!(
            "pattern lengths must lie in 2..={MAX_CLASSIFY_LENGTH}, got {lo}..={hi}"
        )));
    }
    check_series(series)?;
    let mut notes = Vec::new();
    let mut low_confidence = false;
    let mut observations = Vec::new();
    for l in lo..=hi {
        if series.len() < l {
            notes.push(format!("L = {l}: series has only {} samples", series.len()));
            low_confidence = true;
            continue;
        }
        let pd = pattern_distribution(series, l, 1)?;
        if pd.total < factorial(l) {
            notes.push(format!(
                "L = {l}: {} windows cannot cover all {} patterns",
                pd.total,
                factorial(l)
            ));
            low_confidence = true;
        }
        observations.push((l, (pd.allowed_count() as f64).ln()));
    }
    if observations.len() < 3 {
        notes.push(format!("only {} usable pattern lengths; at least 3 are needed", observations.len()));
        return Ok(ClassEstimate {
            best: None,
            candidates: Vec::new(),
            observations,
            low_confidence: true,
            notes,
        });
    }

    let ls: Vec<f64> = observations.iter().map(|&(l, _)| l as f64).collect();
    let y: Vec<f64> = observations.iter().map(|&(_, v)| v).collect();
    let lnf: Vec<f64> = observations.iter().map(|&(l, _)| ln_factorial(l)).collect();
    let lll: Vec<f64> = ls.iter().map(|&l| l * l.ln().ln()).collect();

    let mut candidates = Vec::new();
    let (params, rss) = linear_fit(&ls, &y, true);
    candidates.push(CandidateFit {
        kind: ClassKind::Exponential,
        params,
        rss,
    });
    let rss = y.iter().zip(&lnf).map(|(a, b)| (a - b).powi(2)).sum();
    candidates.push(CandidateFit {
        kind: ClassKind::Factorial,
        params: Vec::new(),
        rss,
    });
    let (mut params, mut rss) = linear_fit(&lnf, &y, false);
    if params[0] >= 1.0 {
        // Clamped to the boundary c = 1, where the shape is the factorial one.
        params[0] = 1.0;
        rss = candidates[1].rss;
    }
    candidates.push(CandidateFit {
        kind: ClassKind::ScaledFactorial,
        params,
        rss,
    });
    let (params, rss) = linear_fit(&lll, &y, true);
    candidates.push(CandidateFit {
        kind: ClassKind::IteratedLog,
        params,
        rss,
    });

    let min_rss = candidates.iter().map(|c| c.rss).fold(f64::INFINITY, f64::min);
    let best = candidates
        .iter()
        .filter(|c| c.rss <= min_rss + 1e-9)
        .min_by_key(|c| c.params.len())
        .map(|c| c.kind);
    Ok(ClassEstimate {
        best,
        candidates,
        observations,
        low_confidence,
        notes,
    })
}
