//! Golden-file cases for the `groupent` command line.
//!
//! Each case writes its inputs into a fresh directory, runs the command
//! line in-process with relative paths, and compares stdout, stderr and
//! produced files with the files under `golden/`. Every case runs twice,
//! with one and with four worker threads, and both runs must agree byte for
//! byte. Set `GROUPENT_BLESS=1` to rewrite the stored files.

use std::path::{Path, PathBuf};
use std::sync::Mutex;

/// Serializes runs, which change the process working directory.
static CWD: Mutex<()> = Mutex::new(());

/// A CLI invocation with fixed inputs whose outputs are stored.
pub struct GoldenCase {
    pub name: &'static str,
    /// Files written into the working directory first.
    pub inputs: &'static [(&'static str, &'static str)],
    /// Invocations run before the checked one, e.g. to generate a series.
    pub prepare: &'static [&'static [&'static str]],
    pub args: &'static [&'static str],
    /// Golden file for stdout.
    pub stdout: Option<&'static str>,
    /// Golden file for stderr.
    pub stderr: Option<&'static str>,
    /// Produced file and its golden file.
    pub files: &'static [(&'static str, &'static str)],
}

const LOGISTIC_SERIES: &[&str] = &["gen", "--process", "logistic", "--n", "20000", "--seed", "11", "--out", "series.txt"];

pub const GOLDEN_CASES: &[GoldenCase] = &[
    GoldenCase {
        name: "gen_white_noise",
        inputs: &[],
        prepare: &[],
        args: &["gen", "--process", "white-noise", "--n", "200", "--seed", "42"],
        stdout: Some("gen_white_noise.txt"),
        stderr: Some("gen_white_noise.json"),
        files: &[],
    },
    GoldenCase {
        name: "gen_noisy_logistic",
        inputs: &[],
        prepare: &[],
        args: &[
            "gen", "--process", "logistic", "--n", "300", "--seed", "7", "--noise-amplitude", "0.001", "--out", "series.txt",
        ],
        stdout: Some("gen_noisy_logistic.json"),
        stderr: None,
        files: &[("series.txt", "gen_noisy_logistic.txt")],
    },
    GoldenCase {
        name: "ordinal_pipeline",
        inputs: &[],
        prepare: &[LOGISTIC_SERIES],
        args: &[
            "ordinal", "--series", "series.txt", "--l-min", "3", "--l-max", "5", "--alpha", "0,1,2", "--csv", "rows.csv",
            "--histograms", "hist", "--extrapolate",
        ],
        stdout: Some("ordinal.json"),
        stderr: None,
        files: &[("rows.csv", "ordinal.csv"), ("hist/hist_L3.json", "ordinal_hist_L3.json")],
    },
    GoldenCase {
        name: "ordinal_exponential_class",
        inputs: &[],
        prepare: &[LOGISTIC_SERIES],
        args: &[
            "ordinal", "--series", "series.txt", "--l-max", "4", "--class", r#"{"kind":"Exponential","c":0.7}"#, "--stride", "2",
        ],
        stdout: Some("ordinal_exponential.json"),
        stderr: None,
        files: &[],
    },
    GoldenCase {
        name: "classify_logistic",
        inputs: &[],
        prepare: &[LOGISTIC_SERIES],
        args: &["classify", "--series", "series.txt", "--l-max", "6"],
        stdout: Some("classify.json"),
        stderr: None,
        files: &[],
    },
    GoldenCase {
        name: "entropy_non_trace_super_exponential",
        inputs: &[("p.txt", "p\n0.1\n0.2\n0.3\n0.4\n")],
        prepare: &[],
        args: &["entropy", "--dist", "p.txt", "--spec", r#"{"kind":"NonTraceIII","lambda":1.5,"alpha":0.5,"gamma":2}"#],
        stdout: Some("entropy.json"),
        stderr: None,
        files: &[],
    },
    GoldenCase {
        name: "compose_exponential_law",
        inputs: &[],
        prepare: &[],
        args: &["compose", "--spec", r#"{"kind":"NonTraceII","lambda":1,"alpha":2,"k":3}"#, "--x", "0.4", "--y", "1.3"],
        stdout: Some("compose.json"),
        stderr: None,
        files: &[],
    },
    GoldenCase {
        name: "extensivity_algebraic",
        inputs: &[],
        prepare: &[],
        args: &[
            "extensivity", "--spec", r#"{"kind":"NonTraceI","lambda":1,"alpha":2,"a":2}"#, "--model",
            r#"{"kind":"Algebraic","a":2}"#, "--n-max", "50", "--csv", "scan.csv",
        ],
        stdout: Some("extensivity.json"),
        stderr: None,
        files: &[("scan.csv", "extensivity.csv")],
    },
    GoldenCase {
        name: "maxent_non_trace_super_exponential",
        inputs: &[("c.json", r#"{"levels":[0.0,0.37,1.1,1.9,2.6],"mean_target":0.9}"#)],
        prepare: &[],
        args: &["maxent", "--spec", r#"{"kind":"NonTraceIII","lambda":1,"alpha":0.5,"gamma":1}"#, "--constraint", "c.json"],
        stdout: Some("maxent.json"),
        stderr: None,
        files: &[],
    },
    GoldenCase {
        name: "delta_correlated",
        inputs: &[("joint.csv", "0.4,0.1\n0.1,0.4\n")],
        prepare: &[],
        args: &["delta", "--spec", r#"{"kind":"Tsallis","q":2}"#, "--joint", "joint.csv"],
        stdout: Some("delta.json"),
        stderr: None,
        files: &[],
    },
];

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("golden")
}

/// Output of one in-process invocation.
pub struct Run {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command line in `dir` with the given worker thread count.
pub fn run_in(dir: &Path, args: &[&str], threads: Option<&str>) -> Run {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = {
        let _guard = CWD.lock().unwrap_or_else(|e| e.into_inner());
        let previous = std::env::current_dir().expect("working directory");
        std::env::set_current_dir(dir).expect("enter case directory");
        let argv = std::iter::once("groupent").chain(args.iter().copied());
        let code = groupent_cli::run(argv, threads, &mut out, &mut err);
        std::env::set_current_dir(previous).expect("restore working directory");
        code
    };
    Run {
        code,
        stdout: String::from_utf8(out).expect("utf-8 stdout"),
        stderr: String::from_utf8(err).expect("utf-8 stderr"),
    }
}

/// Hides the tool version so records stay comparable across releases.
pub fn without_version(text: &str) -> String {
    let mut lines: Vec<&str> = text
        .lines()
        .map(|l| {
            if l.trim_start().starts_with("\"version\":") {
                "  \"version\": \"*\""
            } else {
                l
            }
        })
        .collect();
    if text.ends_with('\n') {
        lines.push("");
    }
    lines.join("\n")
}

/// Compares `actual` with a stored golden file, or rewrites the file when
/// `GROUPENT_BLESS` is set.
pub fn compare_golden(name: &str, actual: &str) -> Result<(), String> {
    let path = golden_dir().join(name);
    let actual = without_version(actual);
    if std::env::var_os("GROUPENT_BLESS").is_some() {
        std::fs::write(&path, &actual).map_err(|e| format!("{}: {e}", path.display()))?;
        return Ok(());
    }
    let expected = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected == actual {
        Ok(())
    } else {
        Err(format!("{name} differs from the golden file\n--- expected\n{expected}\n--- actual\n{actual}"))
    }
}

fn run_once(case: &GoldenCase, threads: &str) -> Result<(tempfile::TempDir, Run), String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for (name, text) in case.inputs {
        std::fs::write(dir.path().join(name), text).map_err(|e| e.to_string())?;
    }
    for args in case.prepare {
        let r = run_in(dir.path(), args, None);
        if r.code != 0 {
            return Err(format!("{}: preparation {args:?} failed: {}", case.name, r.stderr));
        }
    }
    let r = run_in(dir.path(), case.args, Some(threads));
    if r.code != 0 {
        return Err(format!("{}: exit {}: {}", case.name, r.code, r.stderr));
    }
    Ok((dir, r))
}

/// Runs a case with one and with four threads and compares every output
/// with its golden file.
pub fn check_case(case: &GoldenCase) -> Result<(), String> {
    let (dir, first) = run_once(case, "1")?;
    let (other, second) = run_once(case, "4")?;
    if first.stdout != second.stdout || first.stderr != second.stderr {
        return Err(format!("{}: outputs differ between thread counts", case.name));
    }
    if let Some(g) = case.stdout {
        compare_golden(g, &first.stdout)?;
    }
    if let Some(g) = case.stderr {
        compare_golden(g, &first.stderr)?;
    }
    for (produced, g) in case.files {
        let read = |d: &Path| std::fs::read_to_string(d.join(produced)).map_err(|e| format!("{produced}: {e}"));
        let text = read(dir.path())?;
        if text != read(other.path())? {
            return Err(format!("{}: {produced} differs between thread counts", case.name));
        }
        compare_golden(g, &text)?;
    }
    Ok(())
}

pub fn golden_case(name: &str) -> &'static GoldenCase {
    GOLDEN_CASES
        .iter()
        .find(|c| c.name == name)
        .unwrap_or_else(|| panic!("unknown golden case {name}"))
}
