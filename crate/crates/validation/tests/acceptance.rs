//! Acceptance suite: one test per criterion, each printing a PASS or FAIL
//! line with the measured worst case.
//!
//! The lines are written straight to stdout so they show up without
//! `--nocapture`.

use std::io::Write;
use std::time::{Duration, Instant};

use groupent::delta::{delta, JointSystem};
use groupent::entropy::{bgs, renyi, tsallis};
use groupent::formal_group::unified_generator;
use groupent::lambertw::lambert_w0;
use groupent::maxent::{maximize, verify_qexponential_form, EnergyConstraint, QEXP_TOLERANCE, STATIONARITY_TOLERANCE};
use groupent::ordinal::{
    factorial, group_permutation_entropy, group_permutation_entropy_closed_form, pattern_distribution,
    pattern_distribution_sequential, permutation_entropy, renyi_permutation_entropy, topological_permutation_entropy,
    PatternDistribution,
};
use groupent::process::{logistic_map, white_noise, SplitMix64};
use groupent::state_space::extensivity_scan;
use groupent::{ComplexityClass, Distribution, EntropyKind, EntropySpec, StateSpaceModel};

type Check = Result<String, String>;

fn report(n: u32, title: &str, outcome: Check) {
    let line = match &outcome {
        Ok(detail) => format!("PASS criterion {n:>2}: {title} [{detail}]"),
        Err(detail) => format!("FAIL criterion {n:>2}: {title} [{detail}]"),
    };
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
    if let Err(detail) = outcome {
        panic!("criterion {n} failed: {detail}");
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("runtime {elapsed:.2?} exceeds {limit:?}"))
}

fn random_distribution(rng: &mut SplitMix64, max_w: usize, zero_chance: f64) -> Distribution {
    loop {
        let w = 1 + (rng.next_u64() % max_w as u64) as usize;
        let weights: Vec<f64> = (0..w)
            .map(|_| if rng.next_f64() < zero_chance { 0.0 } else { rng.next_f64() })
            .collect();
        if let Ok(d) = Distribution::with_renormalize(weights, true) {
            return d;
        }
    }
}

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

#[test]
fn criterion_01_extensivity_closed_forms() {
    let start = Instant::now();
    let run = || -> Check {
        let ns: Vec<u64> = (2..=100).collect();
        let mut worst = [0.0f64; 3];
        for alpha in [0.3, 0.5, 2.0, 3.5] {
            for (a, k, gamma) in [(0.5, 2.0, 0.5), (1.0, std::f64::consts::E, 1.0), (3.0, 5.0, 2.5)] {
                let cases = [
                    (0, EntropySpec::non_trace_algebraic(1.0, alpha, a), StateSpaceModel::algebraic(a)),
                    (1, EntropySpec::non_trace_exponential(1.0, alpha, k), StateSpaceModel::exponential(k)),
                    (2, EntropySpec::non_trace_super_exponential(1.0, alpha, gamma), StateSpaceModel::super_exponential(gamma)),
                ];
                for (class, spec, model) in cases {
                    let rows = extensivity_scan(&spec.unwrap(), &model.unwrap(), &ns).map_err(|e| e.to_string())?;
                    for r in rows {
                        let n = r.n as f64;
                        let expected = if class == 1 { 1.0 } else { (n - 1.0) / n };
                        worst[class] = worst[class].max((r.entropy_per_component - expected).abs());
                    }
                }
            }
        }
        ensure(worst.iter().all(|&e| e <= 1e-9), || format!("max errors I/II/III = {worst:?}"))?;
        within(start.elapsed(), Duration::from_secs(1))?;
        Ok(format!(
            "max |S/N - closed form|: I {:.1e}, II {:.1e}, III {:.1e}; {:.2?}",
            worst[0],
            worst[1],
            worst[2],
            start.elapsed()
        ))
    };
    report(1, "extensivity closed forms, N = 2..100, tol 1e-9", run());
}

#[test]
fn criterion_02_composability() {
    let start = Instant::now();
    let run = || -> Check {
        let specs = [
            EntropySpec::renyi(0.6).unwrap(),
            EntropySpec::non_trace_algebraic(1.0, 0.5, 2.0).unwrap(),
            EntropySpec::non_trace_algebraic(0.7, 2.5, 1.5).unwrap(),
            EntropySpec::non_trace_exponential(2.0, 3.0, 2.0).unwrap(),
            EntropySpec::non_trace_exponential(1.0, 0.4, 5.0).unwrap(),
            EntropySpec::non_trace_super_exponential(1.0, 0.5, 1.0).unwrap(),
            EntropySpec::non_trace_super_exponential(1.3, 2.0, 0.5).unwrap(),
            EntropySpec::z_entropy(2.0, 1.5).unwrap(),
            EntropySpec::z_entropy(0.5, 0.8).unwrap(),
        ];
        let mut rng = SplitMix64::new(2);
        let mut worst = 0.0f64;
        for spec in &specs {
            let law = spec.group_law().map_err(|e| e.to_string())?;
            for _ in 0..1000 {
                let a = random_distribution(&mut rng, 16, 0.1);
                let b = random_distribution(&mut rng, 16, 0.1);
                let sa = spec.evaluate(&a).unwrap();
                let sb = spec.evaluate(&b).unwrap();
                let sab = spec.evaluate(&a.product(&b)).unwrap();
                let phi = law.compose(sa, sb).map_err(|e| e.to_string())?;
                let err = rel_err(phi, sab);
                worst = worst.max(err);
                ensure(err <= 1e-10, || format!("{:?}: phi {phi} vs S(AxB) {sab}", spec.kind()))?;
            }
        }
        within(start.elapsed(), Duration::from_secs(5))?;
        Ok(format!("{} specs x 1000 pairs, max rel error {worst:.1e}, {:.2?}", specs.len(), start.elapsed()))
    };
    report(2, "composability S(AxB) = phi(S(A), S(B)), tol 1e-10", run());
}

#[test]
fn criterion_03_classic_limits() {
    let run = || -> Check {
        let mut rng = SplitMix64::new(3);
        let mut worst_unified = 0.0f64;
        let mut worst_tsallis = 0.0f64;
        for _ in 0..500 {
            let p = random_distribution(&mut rng, 12, 0.1);
            for k in [2.0f64, 3.0, 10.0] {
                for alpha in [0.3, 0.8, 2.0, 4.0] {
                    let nt2 = EntropySpec::non_trace_exponential(k.ln(), alpha, k).unwrap().evaluate(&p).unwrap();
                    let r = renyi(&p, alpha).unwrap();
                    ensure(nt2 == r, || format!("NonTraceII {nt2} != Renyi {r}"))?;
                }
                let t2 = EntropySpec::trace_exponential(k.ln(), k).unwrap().evaluate(&p).unwrap();
                ensure(t2 == bgs(&p), || format!("TraceII {t2} != BGS {}", bgs(&p)))?;
            }
            for alpha in [0.3, 0.8, 2.0, 4.0] {
                let law = unified_generator(1.0, 0.0).and_then(|l| l.with_order(alpha)).unwrap();
                let s = law.entropy(&p).unwrap();
                let t = tsallis(&p, alpha, 1.0).unwrap();
                worst_unified = worst_unified.max((s - t).abs());
            }
            for q in [1.0 - 1e-7, 1.0 + 1e-7] {
                worst_tsallis = worst_tsallis.max((tsallis(&p, q, 1.0).unwrap() - bgs(&p)).abs());
            }
        }
        ensure(worst_unified <= 1e-10, || format!("unified(1,0) vs Tsallis: {worst_unified:e}"))?;
        ensure(worst_tsallis <= 1e-6, || format!("Tsallis q = 1 +- 1e-7 vs BGS: {worst_tsallis:e}"))?;
        Ok(format!(
            "NonTraceII/TraceII exact; unified(1,0) {worst_unified:.1e}; Tsallis near q = 1 {worst_tsallis:.1e}"
        ))
    };
    report(3, "classic-limit identities", run());
}

#[test]
fn criterion_04_lambert_kernel() {
    let run = || -> Check {
        let mut worst_residual = 0.0f64;
        let mut grid = vec![0.0];
        grid.extend((0..=2000).map(|i| 10f64.powf(-12.0 + 20.0 * i as f64 / 2000.0)));
        for x in grid {
            let w = lambert_w0(x).map_err(|e| e.to_string())?;
            let scaled = (w * w.exp() - x).abs() / x.abs().max(1.0);
            worst_residual = worst_residual.max(scaled);
            ensure(scaled <= 1e-12, || format!("residual {scaled:e} at x = {x:e}"))?;
        }
        let mut worst_round_trip = 0.0f64;
        for i in 0..=3000 {
            let x = 30.0 * i as f64 / 3000.0;
            let back = lambert_w0(x * x.exp()).map_err(|e| e.to_string())?;
            worst_round_trip = worst_round_trip.max((back - x).abs());
        }
        ensure(worst_round_trip <= 1e-11, || format!("round trip error {worst_round_trip:e}"))?;
        Ok(format!("max scaled residual {worst_residual:.1e}, max round-trip error {worst_round_trip:.1e}"))
    };
    report(4, "Lambert W residual 1e-12 on [0, 1e8], round trip 1e-11 on [0, 30]", run());
}

fn family_representatives() -> Vec<EntropySpec> {
    vec![
        EntropySpec::bgs(),
        EntropySpec::tsallis(0.6, 1.0).unwrap(),
        EntropySpec::renyi(2.0).unwrap(),
        EntropySpec::non_trace_algebraic(1.0, 0.5, 2.0).unwrap(),
        EntropySpec::non_trace_exponential(1.0, 0.5, 2.0).unwrap(),
        EntropySpec::non_trace_super_exponential(1.0, 0.5, 1.0).unwrap(),
        EntropySpec::trace_algebraic(1.0, 2.0).unwrap(),
        EntropySpec::trace_exponential(1.0, 2.0).unwrap(),
        EntropySpec::trace_super_exponential(1.0, 1.0).unwrap(),
        EntropySpec::z_entropy(0.5, 1.0).unwrap(),
    ]
}

#[test]
fn criterion_05_sk_axioms() {
    let run = || -> Check {
        let specs = family_representatives();
        let kinds: std::collections::BTreeSet<_> = specs.iter().map(|s| format!("{:?}", s.kind())).collect();
        ensure(kinds.len() == EntropyKind::ALL.len(), || "not every family covered".into())?;
        let mut rng = SplitMix64::new(5);
        for spec in &specs {
            for _ in 0..1000 {
                let p = random_distribution(&mut rng, 12, 0.15);
                let s = spec.evaluate(&p).unwrap();
                let top = spec.evaluate(&Distribution::uniform(p.len()).unwrap()).unwrap();
                ensure(s <= top + 1e-12 * top.abs().max(1.0), || {
                    format!("{:?}: S(p) = {s} > S(uniform) = {top} for {:?}", spec.kind(), p.probs())
                })?;
                let extended = spec.evaluate(&p.append_zero_event()).unwrap();
                ensure(rel_err(extended, s) <= 1e-14, || {
                    format!("{:?}: expansibility {extended} vs {s}", spec.kind())
                })?;
            }
        }
        Ok(format!("{} families x 1000 trials", specs.len()))
    };
    report(5, "SK2 maximum at uniform and SK3 expansibility", run());
}

/// Orthonormal basis of `{d : Σ d = 0, Σ E d = 0}`.
fn tangent_basis(levels: &[f64]) -> Vec<Vec<f64>> {
    let w = levels.len();
    let mut normals = vec![vec![1.0; w], levels.to_vec()];
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let orthonormalize = |mut v: Vec<f64>, against: &[Vec<f64>]| -> Option<Vec<f64>> {
        for _ in 0..2 {
            for u in against {
                let c = dot(&v, u);
                v.iter_mut().zip(u).for_each(|(x, y)| *x -= c * y);
            }
        }
        let n = dot(&v, &v).sqrt();
        (n > 1e-8).then(|| v.into_iter().map(|x| x / n).collect())
    };
    let mut ortho_normals = Vec::new();
    for v in normals.drain(..) {
        if let Some(u) = orthonormalize(v, &ortho_normals) {
            ortho_normals.push(u);
        }
    }
    for i in 0..w {
        let mut e = vec![0.0; w];
        e[i] = 1.0;
        let mut all = ortho_normals.clone();
        all.extend(basis.iter().cloned());
        if let Some(u) = orthonormalize(e, &all) {
            basis.push(u);
        }
    }
    basis
}

/// Boltzmann weights with the target mean, with β found by bisection.
fn boltzmann(levels: &[f64], mean: f64) -> Vec<f64> {
    let weights = |beta: f64| {
        let e0 = levels.iter().copied().fold(f64::INFINITY, f64::min);
        let w: Vec<f64> = levels.iter().map(|e| (-beta * (e - e0)).exp()).collect();
        let z: f64 = w.iter().sum();
        w.into_iter().map(|x| x / z).collect::<Vec<f64>>()
    };
    let mean_at = |beta: f64| weights(beta).iter().zip(levels).map(|(p, e)| p * e).sum::<f64>();
    let (mut lo, mut hi) = (-50.0, 50.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mean_at(mid) > mean {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    weights(0.5 * (lo + hi))
}

fn random_constraint(rng: &mut SplitMix64, w: usize, spread: f64) -> EnergyConstraint {
    let levels: Vec<f64> = (0..w).map(|_| 3.0 * rng.next_f64()).collect();
    let (lo, hi) = levels.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
    let centre = levels.iter().sum::<f64>() / w as f64;
    let mean = (centre + spread * (rng.next_f64() - 0.5) * (hi - lo)).clamp(lo + 0.05 * (hi - lo), hi - 0.05 * (hi - lo));
    EnergyConstraint::new(levels, mean).unwrap()
}

#[test]
fn criterion_06_maxent() {
    let run = || -> Check {
        let mut rng = SplitMix64::new(6);
        let mut worst_boltzmann = 0.0f64;
        for _ in 0..40 {
            let w = 2 + (rng.next_u64() % 9) as usize;
            let c = random_constraint(&mut rng, w, 1.0);
            let r = maximize(&EntropySpec::bgs(), &c).map_err(|e| e.to_string())?;
            let oracle = boltzmann(c.levels(), c.mean_target());
            for (p, q) in r.p_star.probs().iter().zip(&oracle) {
                worst_boltzmann = worst_boltzmann.max((p - q).abs());
            }
        }
        ensure(worst_boltzmann <= 1e-8, || format!("BGS vs Boltzmann {worst_boltzmann:e}"))?;

        let h = 1e-6;
        let mut worst_stationarity = 0.0f64;
        let mut worst_fit = 0.0f64;
        let mut trace_iii_fit = 0.0f64;
        for _ in 0..10 {
            let c = random_constraint(&mut rng, 6, 0.2);
            let basis = tangent_basis(c.levels());
            for spec in family_representatives() {
                let r = maximize(&spec, &c).map_err(|e| e.to_string())?;
                ensure(r.converged && !r.boundary, || format!("{:?} did not converge in the interior", spec.kind()))?;
                ensure(r.stationarity_norm <= STATIONARITY_TOLERANCE, || format!("{:?}: {}", spec.kind(), r.stationarity_norm))?;
                let p = r.p_star.probs();
                for d in &basis {
                    let shifted = |s: f64| {
                        let q: Vec<f64> = p.iter().zip(d).map(|(x, y)| x + s * y).collect();
                        spec.evaluate(&Distribution::new(q).unwrap()).unwrap()
                    };
                    let slope = (shifted(h) - shifted(-h)) / (2.0 * h);
                    worst_stationarity = worst_stationarity.max(slope.abs());
                }
                let fit = verify_qexponential_form(&r, &spec);
                if spec.kind() == EntropyKind::TraceIII {
                    trace_iii_fit = trace_iii_fit.max(fit.residual);
                } else {
                    ensure(fit.applicable && fit.residual <= QEXP_TOLERANCE, || {
                        format!("{:?}: q-exponential residual {:e}", spec.kind(), fit.residual)
                    })?;
                    worst_fit = worst_fit.max(fit.residual);
                }
            }
        }
        ensure(worst_stationarity <= 1e-8, || format!("finite-difference stationarity {worst_stationarity:e}"))?;
        Ok(format!(
            "Boltzmann {worst_boltzmann:.1e}; FD stationarity {worst_stationarity:.1e}; \
             q-exp residual {worst_fit:.1e}; TraceIII residual {trace_iii_fit:.1e} (not of q-exponential form, informational)"
        ))
    };
    report(6, "maxent: Boltzmann 1e-8, stationarity 1e-8, q-exponential fit 1e-6", run());
}

#[test]
fn criterion_07_delta_measure() {
    let run = || -> Check {
        let laws = [
            EntropySpec::bgs(),
            EntropySpec::tsallis(0.6, 1.5).unwrap(),
            EntropySpec::renyi(2.0).unwrap(),
            EntropySpec::non_trace_algebraic(1.0, 0.5, 2.0).unwrap(),
            EntropySpec::non_trace_exponential(2.0, 3.0, 2.0).unwrap(),
            EntropySpec::non_trace_super_exponential(1.0, 0.5, 1.0).unwrap(),
            EntropySpec::z_entropy(2.0, 1.5).unwrap(),
        ];
        let mut rng = SplitMix64::new(7);
        let mut worst = 0.0f64;
        for spec in &laws {
            for _ in 0..500 {
                let a = random_distribution(&mut rng, 8, 0.1);
                let b = random_distribution(&mut rng, 8, 0.1);
                let d = delta(spec, &JointSystem::independent(&a, &b)).map_err(|e| e.to_string())?;
                let scale = spec.evaluate(&a.product(&b)).unwrap().abs().max(1.0);
                worst = worst.max(d.abs() / scale);
            }
        }
        ensure(worst <= 1e-10, || format!("independent Delta {worst:e}"))?;
        let pair = JointSystem::from_matrix(&[vec![0.5, 0.0], vec![0.0, 0.5]]).unwrap();
        let near = [
            EntropySpec::bgs(),
            EntropySpec::renyi(1.0 - 1e-8).unwrap(),
            EntropySpec::tsallis(1.0 + 1e-8, 1.0).unwrap(),
            EntropySpec::non_trace_exponential(1.0, 1.0 - 1e-9, std::f64::consts::E).unwrap(),
        ];
        let mut worst_pair = 0.0f64;
        for spec in &near {
            let d = delta(spec, &pair).map_err(|e| e.to_string())?;
            worst_pair = worst_pair.max((d - std::f64::consts::LN_2).abs());
        }
        ensure(worst_pair <= 1e-6, || format!("correlated pair |Delta - ln 2| = {worst_pair:e}"))?;
        Ok(format!(
            "{} laws x 500 joints, max Delta {worst:.1e}; correlated pair |Delta - ln 2| {worst_pair:.1e}",
            laws.len()
        ))
    };
    report(7, "Delta = 0 on independent joints, ln 2 on the correlated pair", run());
}

fn entropy_chain(pd: &PatternDistribution) -> Result<(), String> {
    let h = permutation_entropy(pd).unwrap();
    let top = topological_permutation_entropy(pd).unwrap();
    let max = (factorial(pd.pattern_length()) as f64).ln();
    ensure(h <= top + 1e-12 && top <= max + 1e-12, || {
        format!("L = {}: H* {h}, ln A {top}, ln L! {max}", pd.pattern_length())
    })
}

#[test]
fn criterion_08_ordinal_pipeline() {
    let start = Instant::now();
    let run = || -> Check {
        let noise = white_noise(1_000_000, 8).unwrap();
        let mut worst_freq = 0.0f64;
        for l in 2..=6 {
            let pd = pattern_distribution(&noise, l, 1).map_err(|e| e.to_string())?;
            entropy_chain(&pd)?;
            ensure(pd.allowed_count() as u64 == factorial(l), || format!("white noise A_{l} = {}", pd.allowed_count()))?;
            if l == 3 {
                for p in pd.probabilities() {
                    worst_freq = worst_freq.max((p - 1.0 / 6.0).abs());
                }
            }
        }
        ensure(worst_freq <= 0.005, || format!("L = 3 frequency deviation {worst_freq}"))?;
        let mut pooled = std::collections::BTreeSet::new();
        for seed in 0..100u64 {
            let x0 = 0.05 + 0.9 * SplitMix64::new(seed).next_f64();
            let s = logistic_map(100_000, 4.0, x0, 1000).map_err(|e| e.to_string())?;
            for l in 3..=5 {
                let pd = pattern_distribution(&s, l, 1).unwrap();
                entropy_chain(&pd)?;
                if l == 3 {
                    pooled.extend(pd.counts().keys().copied());
                }
            }
        }
        ensure(pooled.len() == 5, || format!("logistic A_3 = {}", pooled.len()))?;
        within(start.elapsed(), Duration::from_secs(180))?;
        Ok(format!(
            "white noise A_L = L! for L = 2..6, L = 3 deviation {worst_freq:.4}; logistic A_3 = 5; {:.1?}",
            start.elapsed()
        ))
    };
    report(8, "ordinal pipeline on white noise and the logistic map", run());
}

fn random_histogram(rng: &mut SplitMix64) -> PatternDistribution {
    let l = 3 + (rng.next_u64() % 4) as usize;
    let n = factorial(l);
    let mut counts = std::collections::BTreeMap::new();
    for k in 0..n {
        if rng.next_f64() < 0.7 {
            counts.insert(k, 1 + rng.next_u64() % 1000);
        }
    }
    PatternDistribution::from_counts(l, counts).unwrap()
}

#[test]
fn criterion_09a_group_entropy_closed_forms_and_ordering() {
    let run = || -> Check {
        let classes = [
            ComplexityClass::exponential(0.7).unwrap(),
            ComplexityClass::exponential(2.0).unwrap(),
            ComplexityClass::Factorial,
            ComplexityClass::scaled_factorial(0.5).unwrap(),
        ];
        let mut rng = SplitMix64::new(9);
        let mut worst = 0.0f64;
        for _ in 0..500 {
            let pd = random_histogram(&mut rng);
            if pd.counts().is_empty() {
                continue;
            }
            for cls in &classes {
                for alpha in [0.0, 0.5, 1.0, 2.0, 3.0] {
                    let closed = group_permutation_entropy_closed_form(&pd, cls, alpha).unwrap().unwrap();
                    let r = renyi_permutation_entropy(&pd, alpha).unwrap();
                    let generic = cls.g_inv_bisection(r).unwrap() - cls.g_inv_bisection(0.0).unwrap();
                    let library = group_permutation_entropy(&pd, cls, alpha).unwrap();
                    worst = worst.max(rel_err(generic, closed)).max(rel_err(library, closed));
                }
                let z0 = group_permutation_entropy(&pd, cls, 0.0).unwrap();
                let z2 = group_permutation_entropy(&pd, cls, 2.0).unwrap();
                ensure(z2 <= z0 + 1e-12, || format!("z(2) = {z2} > z(0) = {z0}"))?;
            }
        }
        ensure(worst <= 1e-10, || format!("generic vs closed form {worst:e}"))?;
        let noise = white_noise(1_000_000, 9).unwrap();
        for l in 3..=7 {
            let pd = pattern_distribution(&noise, l, 1).unwrap();
            let z0 = group_permutation_entropy(&pd, &ComplexityClass::Factorial, 0.0).unwrap();
            let z2 = group_permutation_entropy(&pd, &ComplexityClass::Factorial, 2.0).unwrap();
            ensure(z2 <= z0, || format!("white noise L = {l}: z(2) = {z2} > z(0) = {z0}"))?;
        }
        Ok(format!("max generic vs closed form {worst:.1e}; z(2) <= z(0) on all histograms"))
    };
    report(9, "group permutation entropy closed forms and order monotonicity", run());
}

#[test]
fn criterion_09b_white_noise_factorial_rate_band() {
    // At finite L the factorial-class estimate is e^{W(ln L!)}/L even when
    // every pattern is present, which is ~0.74 at L = 7.
    let run = || -> Check {
        let noise = white_noise(1_000_000, 19).unwrap();
        let pd = pattern_distribution(&noise, 7, 1).unwrap();
        let ln_a = topological_permutation_entropy(&pd).unwrap();
        let rate = lambert_w0(ln_a).unwrap().exp() / 7.0;
        let exact = lambert_w0((factorial(7) as f64).ln()).unwrap().exp() / 7.0;
        let detail = format!("A_7 = {}, rate {rate:.4}, all-patterns value {exact:.4}", pd.allowed_count());
        if (0.85..=1.05).contains(&rate) {
            Ok(detail)
        } else {
            Err(format!("{detail}; outside [0.85, 1.05]"))
        }
    };
    report(9, "white-noise factorial-class rate e^{W(ln A_7)}/7 in [0.85, 1.05]", run());
}

#[test]
fn criterion_10_determinism() {
    let run = || -> Check {
        for case in groupent_validation::GOLDEN_CASES {
            groupent_validation::check_case(case)?;
        }
        let noise = white_noise(500_000, 10).unwrap();
        let logistic = logistic_map(500_000, 4.0, 0.123, 1000).unwrap();
        for s in [&noise, &logistic] {
            for (l, stride) in [(3, 1), (5, 2), (8, 1), (9, 1), (12, 3)] {
                let par = pattern_distribution(s, l, stride).unwrap();
                let seq = pattern_distribution_sequential(s, l, stride).unwrap();
                ensure(par == seq, || format!("parallel and sequential counts differ at L = {l}"))?;
            }
        }
        Ok(format!("{} golden cases byte-identical; parallel == sequential counts", groupent_validation::GOLDEN_CASES.len()))
    };
    report(10, "determinism of golden files and pattern counts", run());
}
