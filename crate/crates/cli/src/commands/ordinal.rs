use std::path::PathBuf;

use groupent::ordinal::{
    group_permutation_entropy, pattern_distribution, permutation_entropy, renyi_permutation_entropy,
    topological_permutation_entropy, OrdinalPattern, PatternDistribution, MAX_CLASSIFY_LENGTH, MAX_PATTERN_LENGTH,
};
use groupent::ComplexityClass;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{require, write_csv};
use crate::config;
use crate::error::{CliError, CliResult};
use crate::input::{parse_json_arg, read_values, JsonArg};
use crate::record::{Fnv1a, RunRecord};
use crate::Outcome;

#[derive(Debug, Clone, clap::Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Args {
    /// Series, one value per line.
    #[arg(long, value_name = "FILE")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<PathBuf>,

    /// Smallest pattern length (default 3).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l_min: Option<usize>,

    /// Largest pattern length (default 6).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l_max: Option<usize>,

    /// Distance between window starts (default 1).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stride: Option<usize>,

    /// Rényi orders, comma separated (default 0,1,2).
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<f64>>,

    /// Complexity class, e.g. `{"kind":"Factorial"}` (the default).
    #[arg(long = "class", value_name = "JSON|FILE", value_parser = parse_json_arg)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<JsonArg>,

    /// Allow pattern lengths above 9, up to 20.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub allow_long: bool,

    /// Write the per-length table here.
    #[arg(long, value_name = "FILE")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,

    /// Write one pattern histogram `hist_L{L}.json` per length into this
    /// directory.
    #[arg(long, value_name = "DIR")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub histograms: Option<PathBuf>,

    /// Fit `h(L) = h_inf + b/L` to the rate estimates.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub extrapolate: bool,
}

/// One pattern length: counts, Shannon and topological values, and for
/// each order `(R_α, Z_α, z_α)`.
struct Row {
    l: usize,
    windows: u64,
    allowed: usize,
    h: f64,
    ln_a: f64,
    per_alpha: Vec<(f64, f64, f64)>,
}

impl Row {
    fn h_metric(&self) -> f64 {
        self.h / self.l as f64
    }

    fn h_topological(&self) -> f64 {
        self.ln_a / self.l as f64
    }
}

fn alpha_label(a: f64) -> String {
    crate::record::fmt_g12(a)
}

fn histogram_json(pd: &PatternDistribution) -> CliResult<Value> {
    let total = pd.total_windows() as f64;
    let l = pd.pattern_length();
    let patterns = pd
        .counts()
        .iter()
        .map(|(&k, &c)| {
            let pattern = OrdinalPattern::from_lehmer(k, l)?;
            Ok(json!({
                "lehmer": k,
                "pattern": pattern.ranks(),
                "count": c,
                "p": c as f64 / total,
            }))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(json!({
        "L": l,
        "windows": pd.total_windows(),
        "allowed": pd.allowed_count(),
        "patterns": patterns,
    }))
}

/// Least squares `y = h_inf + b/L`.
fn extrapolate(ls: &[f64], y: &[f64]) -> Value {
    let x: Vec<f64> = ls.iter().map(|l| 1.0 / l).collect();
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let b = sxy / sxx;
    let h_inf = my - b * mx;
    let rss: f64 = x.iter().zip(y).map(|(a, v)| (v - h_inf - b * a).powi(2)).sum();
    json!({"h_inf": h_inf, "b": b, "rss": rss})
}

pub fn run(args: Args, cfg: Option<&Value>) -> CliResult<Outcome> {
    let mut args: Args = config::resolve("ordinal", &args, cfg)?;
    let lo = *args.l_min.get_or_insert(3);
    let hi = *args.l_max.get_or_insert(6);
    let stride = *args.stride.get_or_insert(1);
    let alphas = args.alpha.get_or_insert_with(|| vec![0.0, 1.0, 2.0]).clone();
    let cap = if args.allow_long { MAX_PATTERN_LENGTH } else { MAX_CLASSIFY_LENGTH };
    if lo < 2 || lo > hi {
        return Err(CliError::Precondition(format!("need 2 <= l_min <= l_max, got {lo} and {hi}")));
    }
    if hi > cap {
        return Err(CliError::Precondition(if args.allow_long {
            format!("pattern length {hi} exceeds the maximum {MAX_PATTERN_LENGTH}")
        } else {
            format!("pattern length {hi} exceeds {MAX_CLASSIFY_LENGTH}; pass --allow-long for up to {MAX_PATTERN_LENGTH}")
        }));
    }
    if args.extrapolate && hi - lo < 2 {
        return Err(CliError::Precondition("extrapolation needs at least three pattern lengths".into()));
    }
    if alphas.is_empty() {
        return Err(CliError::Input("--alpha needs at least one order".into()));
    }
    let class: ComplexityClass = match &args.class {
        Some(c) => c.decode("class")?,
        None => ComplexityClass::Factorial,
    };
    let mut digest = Fnv1a::default();
    let series = read_values(&require(args.series.clone(), "series")?, &mut digest)?;

    if let Some(dir) = &args.histograms {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    let mut rows = Vec::new();
    for l in lo..=hi {
        let pd = pattern_distribution(&series, l, stride)?;
        let per_alpha = alphas
            .iter()
            .map(|&a| {
                let r = renyi_permutation_entropy(&pd, a)?;
                let z_total = group_permutation_entropy(&pd, &class, a)?;
                Ok((r, z_total, class.g_inv(r)? / l as f64))
            })
            .collect::<CliResult<Vec<_>>>()?;
        if let Some(dir) = &args.histograms {
            let path = dir.join(format!("hist_L{l}.json"));
            let text = serde_json::to_string_pretty(&crate::record::round_json(histogram_json(&pd)?)).unwrap();
            std::fs::write(&path, text + "\n").map_err(|e| CliError::io(&path, e))?;
        }
        rows.push(Row {
            l,
            windows: pd.total_windows(),
            allowed: pd.allowed_count(),
            h: permutation_entropy(&pd)?,
            ln_a: topological_permutation_entropy(&pd)?,
            per_alpha,
        });
    }

    let mut header: Vec<String> = ["L", "windows", "A_L", "H", "ln_A_L", "h_M", "h_T"].map(String::from).to_vec();
    for &a in &alphas {
        let s = alpha_label(a);
        header.extend([format!("R_{s}"), format!("Z_{s}"), format!("z_{s}")]);
    }
    let table: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| {
            let mut v = vec![
                r.l as f64,
                r.windows as f64,
                r.allowed as f64,
                r.h,
                r.ln_a,
                r.h_metric(),
                r.h_topological(),
            ];
            for &(rr, zz, z) in &r.per_alpha {
                v.extend([rr, zz, z]);
            }
            v
        })
        .collect();

    let json_rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            let orders: Vec<Value> = alphas
                .iter()
                .zip(&r.per_alpha)
                .map(|(&a, &(rr, zz, z))| json!({"alpha": a, "R": rr, "Z": zz, "z": z}))
                .collect();
            json!({
                "L": r.l,
                "windows": r.windows,
                "A_L": r.allowed,
                "H": r.h,
                "ln_A_L": r.ln_a,
                "h_M": r.h_metric(),
                "h_T": r.h_topological(),
                "orders": orders,
            })
        })
        .collect();
    let mut outputs = json!({
        "class": class,
        "series_length": series.len(),
        "rows": json_rows,
    });
    if args.extrapolate {
        let ls: Vec<f64> = rows.iter().map(|r| r.l as f64).collect();
        let hm: Vec<f64> = rows.iter().map(Row::h_metric).collect();
        let ht: Vec<f64> = rows.iter().map(Row::h_topological).collect();
        let z: Vec<Value> = alphas
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let zs: Vec<f64> = rows.iter().map(|r| r.per_alpha[i].2).collect();
                let mut fit = extrapolate(&ls, &zs);
                fit["alpha"] = json!(a);
                fit
            })
            .collect();
        outputs["extrapolation"] = json!({
            "model": format!("h(L) = h_inf + b/L, least squares over L = {lo}..{hi}"),
            "h_M": extrapolate(&ls, &hm),
            "h_T": extrapolate(&ls, &ht),
            "z": z,
        });
    }
    if let Some(path) = &args.csv {
        write_csv(path, &header, &table)?;
    }
    Ok(Outcome::ok(RunRecord::new("ordinal", serde_json::to_value(&args).unwrap(), &digest, outputs)))
}
