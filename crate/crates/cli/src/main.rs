//! Command-line surface for the coxhecke library. Configuration is a JSON
//! file describing the Coxeter matrix (0 encodes an infinite bond) and one
//! parameter per generator (a variable name or a rational constant).

use clap::{Parser, Subcommand};
use coxhecke::algnum::Rat;
use coxhecke::cosets::{enumerate_r, min_double_rep};
use coxhecke::coxeter::{
    build_system, AnySystem, CoxeterMatrix, CoxeterSystem, GenSubset, Scalar,
};
use coxhecke::error::Error;
use coxhecke::hecke::{commutativity_check, parabolic_product, CommutativityVerdict};
use coxhecke::pregallery::parabolic_constant;
use coxhecke::qpoly::{ParamAssignment, ParamValue};
use coxhecke::randwalk::{build_walk, return_probability_series};
use coxhecke::spheres::sphere_size;
use coxhecke::suites::run_suite;
use serde::Deserialize;
use std::collections::BTreeMap;
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(name = "coxhecke", about = "Exact combinatorics of regular buildings", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cardinality of a generalised sphere as a polynomial in the parameters
    Sphere {
        #[arg(long)]
        config: String,
        #[arg(long = "I", default_value = "")]
        i: String,
        #[arg(long = "J", default_value = "")]
        j: String,
        /// comma-separated 0-based generator indices; empty for the identity
        #[arg(long, default_value = "")]
        word: String,
    },
    /// Parabolic Hecke structure constant c_{u,v}^w(I,J,K)
    Structconst {
        #[arg(long)]
        config: String,
        #[arg(long = "I", default_value = "")]
        i: String,
        #[arg(long = "J", default_value = "")]
        j: String,
        #[arg(long = "K", default_value = "")]
        k: String,
        #[arg(long = "u-word", default_value = "")]
        u_word: String,
        #[arg(long = "v-word", default_value = "")]
        v_word: String,
        #[arg(long = "w-word", default_value = "")]
        w_word: String,
    },
    /// Full P-basis multiplication table for R(I,I) up to a length bound
    Multable {
        #[arg(long)]
        config: String,
        #[arg(long = "I", default_value = "")]
        i: String,
        #[arg(long = "max-len")]
        max_len: usize,
    },
    /// Search for a commutativity counterexample in the corner algebra
    Commutativity {
        #[arg(long)]
        config: String,
        #[arg(long = "I", default_value = "")]
        i: String,
        #[arg(long)]
        bound: usize,
    },
    /// Return probabilities of an isotropic random walk
    Walk {
        #[arg(long)]
        config: String,
        #[arg(long = "I", default_value = "")]
        i: String,
        #[arg(long)]
        steps: usize,
        /// JSON file: {"steps": [{"word": "1", "prob": "1/12"}, ...]}
        #[arg(long)]
        probs: String,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Run a named fixture suite
    Check {
        #[arg(long)]
        suite: String,
    },
}

#[derive(Deserialize)]
struct SystemConfig {
    coxeter_matrix: Vec<Vec<u32>>,
    parameters: Vec<String>,
    #[allow(dead_code)]
    labels: Option<Vec<String>>,
}

#[derive(Deserialize)]
struct ProbsFile {
    steps: Vec<StepEntry>,
}

#[derive(Deserialize)]
struct StepEntry {
    word: String,
    prob: String,
}

/// User-facing failure with its exit code; internal errors map to 2.
struct CliError {
    code: u8,
    message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        let code = match e {
            Error::Internal(_) => 2,
            _ => 1,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

fn fail(msg: impl Into<String>) -> CliError {
    CliError {
        code: 1,
        message: msg.into(),
    }
}

fn parse_subset(spec: &str, rank: usize) -> Result<GenSubset, CliError> {
    let mut set = GenSubset::from_indices([]);
    for part in spec.split(',').filter(|p| !p.trim().is_empty()) {
        let idx: usize = part
            .trim()
            .parse()
            .map_err(|_| fail(format!("invalid generator index {part:?}")))?;
        if idx >= rank {
            return Err(fail(format!("generator index {idx} out of range for rank {rank}")));
        }
        set.insert(idx);
    }
    Ok(set)
}

fn parse_word(spec: &str, rank: usize) -> Result<Vec<usize>, CliError> {
    let mut word = Vec::new();
    for part in spec.split(',').filter(|p| !p.trim().is_empty()) {
        let idx: usize = part
            .trim()
            .parse()
            .map_err(|_| fail(format!("invalid generator index {part:?}")))?;
        if idx >= rank {
            return Err(fail(format!("generator index {idx} out of range for rank {rank}")));
        }
        word.push(idx);
    }
    Ok(word)
}

fn load_config(path: &str) -> Result<(AnySystem, ParamAssignment), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| fail(format!("cannot read config {path}: {e}")))?;
    let cfg: SystemConfig =
        serde_json::from_str(&text).map_err(|e| fail(format!("invalid config JSON: {e}")))?;
    let matrix = CoxeterMatrix::new(cfg.coxeter_matrix)?;
    let rank = matrix.rank();
    if cfg.parameters.len() != rank {
        return Err(fail(format!(
            "expected {rank} parameters, got {}",
            cfg.parameters.len()
        )));
    }
    let values: Vec<ParamValue> = cfg
        .parameters
        .iter()
        .map(|p| match Rat::from_str(p) {
            Ok(r) => ParamValue::Const(r),
            Err(_) => ParamValue::Var(p.clone()),
        })
        .collect();
    let params = ParamAssignment::new(values);
    if let Some(warning) = params.odd_bond_warning(&matrix) {
        eprintln!("warning: {warning}");
    }
    let sys = build_system(matrix)?;
    Ok((sys, params))
}

fn word_key(word: &[usize]) -> String {
    if word.is_empty() {
        "e".to_string()
    } else {
        word.iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn run_sphere<T: Scalar>(
    sys: &CoxeterSystem<T>,
    params: &ParamAssignment,
    i: &str,
    j: &str,
    word: &str,
) -> Result<String, CliError> {
    let rank = sys.rank();
    let i_set = parse_subset(i, rank)?;
    let j_set = parse_subset(j, rank)?;
    let w = sys.from_word(&parse_word(word, rank)?)?;
    let rep = min_double_rep(&w, i_set, j_set);
    Ok(sphere_size(&rep, params)?.canonical_string())
}

#[allow(clippy::too_many_arguments)]
fn run_structconst<T: Scalar>(
    sys: &CoxeterSystem<T>,
    params: &ParamAssignment,
    i: &str,
    j: &str,
    k: &str,
    u_word: &str,
    v_word: &str,
    w_word: &str,
) -> Result<String, CliError> {
    let rank = sys.rank();
    let i_set = parse_subset(i, rank)?;
    let j_set = parse_subset(j, rank)?;
    let k_set = parse_subset(k, rank)?;
    let u = min_double_rep(&sys.from_word(&parse_word(u_word, rank)?)?, i_set, j_set);
    let v = min_double_rep(&sys.from_word(&parse_word(v_word, rank)?)?, k_set, j_set);
    let w = min_double_rep(&sys.from_word(&parse_word(w_word, rank)?)?, i_set, k_set);
    Ok(parabolic_constant(&u, &v, &w, params)?.canonical_string())
}

fn run_multable<T: Scalar>(
    sys: &CoxeterSystem<T>,
    params: &ParamAssignment,
    i: &str,
    max_len: usize,
) -> Result<String, CliError> {
    let i_set = parse_subset(i, sys.rank())?;
    let reps = enumerate_r(sys, i_set, i_set, max_len);
    let mut table: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
    for u in &reps {
        for v in &reps {
            let expansion = parabolic_product(u, v, params)?;
            let mut row: BTreeMap<String, String> = BTreeMap::new();
            for (w, c) in expansion {
                row.insert(word_key(&w.element.word_usize()), c.canonical_string());
            }
            let key = format!(
                "{}|{}",
                word_key(&u.element.word_usize()),
                word_key(&v.element.word_usize())
            );
            table.insert(key, row);
        }
    }
    serde_json::to_string_pretty(&table).map_err(|e| fail(e.to_string()))
}

fn run_commutativity<T: Scalar>(
    sys: &CoxeterSystem<T>,
    params: &ParamAssignment,
    i: &str,
    bound: usize,
) -> Result<String, CliError> {
    let i_set = parse_subset(i, sys.rank())?;
    match commutativity_check(sys, i_set, bound, params)? {
        CommutativityVerdict::NoCounterexample {
            reps_checked,
            all_involutions,
        } => Ok(format!(
            "no counterexample: {reps_checked} representatives up to length {bound}, all involutions: {all_involutions}"
        )),
        CommutativityVerdict::Counterexample { u, v, w, c_uv, c_vu } => Ok(format!(
            "counterexample: u={} v={} w={} c_uv={} c_vu={}",
            word_key(&u.word_usize()),
            word_key(&v.word_usize()),
            word_key(&w.word_usize()),
            c_uv.canonical_string(),
            c_vu.canonical_string()
        )),
    }
}

fn run_walk<T: Scalar>(
    sys: &CoxeterSystem<T>,
    params: &ParamAssignment,
    i: &str,
    steps: usize,
    probs_path: &str,
    format: &str,
) -> Result<String, CliError> {
    let rank = sys.rank();
    let i_set = parse_subset(i, rank)?;
    // a walk needs fully numeric parameters
    let mut qvals = Vec::with_capacity(rank);
    for s in 0..rank {
        let q = params.q_s(s);
        let v = q
            .eval(&std::collections::HashMap::new())
            .map_err(|_| fail("walk requires numeric parameters in the config"))?;
        qvals.push(v);
    }
    let text = std::fs::read_to_string(probs_path)
        .map_err(|e| fail(format!("cannot read probs {probs_path}: {e}")))?;
    let probs: ProbsFile =
        serde_json::from_str(&text).map_err(|e| fail(format!("invalid probs JSON: {e}")))?;
    let mut step_list = Vec::new();
    for entry in &probs.steps {
        let w = sys.from_word(&parse_word(&entry.word, rank)?)?;
        let rep = min_double_rep(&w, i_set, i_set);
        let p = Rat::from_str(&entry.prob)
            .map_err(|_| fail(format!("invalid probability {:?}", entry.prob)))?;
        step_list.push((rep, p));
    }
    let walk = build_walk(sys, i_set, step_list, qvals)?;
    let series = return_probability_series(&walk, steps)?;
    let mut rows = Vec::new();
    for (n, p) in series.iter().enumerate() {
        let exact = p.exact().map(|r| r.to_string());
        let approx = p.as_f64();
        rows.push((n, exact, approx));
    }
    if format == "json" {
        #[derive(serde::Serialize)]
        struct Row {
            n: usize,
            exact: Option<String>,
            value: f64,
        }
        let out: Vec<Row> = rows
            .into_iter()
            .map(|(n, exact, approx)| Row {
                n,
                exact,
                value: approx,
            })
            .collect();
        serde_json::to_string_pretty(&out).map_err(|e| fail(e.to_string()))
    } else if format == "text" {
        let mut out = String::from("n\tp\tvalue\n");
        for (n, exact, approx) in rows {
            let p = exact.unwrap_or_else(|| "-".into());
            out.push_str(&format!("{n}\t{p}\t{approx:.12e}\n"));
        }
        Ok(out.trim_end().to_string())
    } else {
        Err(fail(format!("unknown format {format:?}")))
    }
}

fn run_check(suite: &str) -> Result<(String, bool), CliError> {
    if !["f4", "e8", "affine", "thin"].contains(&suite) {
        return Err(fail(format!(
            "unknown suite {suite:?}; expected f4, e8, affine or thin"
        )));
    }
    let results = run_suite(suite)?;
    let mut out = String::new();
    let mut all_ok = true;
    for r in &results {
        let tag = if r.passed { "PASS" } else { "FAIL" };
        if !r.passed {
            all_ok = false;
        }
        out.push_str(&format!("{tag} {}: {}\n", r.name, r.detail));
    }
    out.push_str(&format!(
        "{}: {} checks, {} failed",
        suite,
        results.len(),
        results.iter().filter(|r| !r.passed).count()
    ));
    Ok((out, all_ok))
}

fn dispatch(cli: Cli) -> Result<(String, bool), CliError> {
    match cli.command {
        Command::Sphere { config, i, j, word } => {
            let (sys, params) = load_config(&config)?;
            let out = match &sys {
                AnySystem::Int(s) => run_sphere(s, &params, &i, &j, &word)?,
                AnySystem::Alg(s) => run_sphere(s, &params, &i, &j, &word)?,
            };
            Ok((out, true))
        }
        Command::Structconst {
            config,
            i,
            j,
            k,
            u_word,
            v_word,
            w_word,
        } => {
            let (sys, params) = load_config(&config)?;
            let out = match &sys {
                AnySystem::Int(s) => {
                    run_structconst(s, &params, &i, &j, &k, &u_word, &v_word, &w_word)?
                }
                AnySystem::Alg(s) => {
                    run_structconst(s, &params, &i, &j, &k, &u_word, &v_word, &w_word)?
                }
            };
            Ok((out, true))
        }
        Command::Multable { config, i, max_len } => {
            let (sys, params) = load_config(&config)?;
            let out = match &sys {
                AnySystem::Int(s) => run_multable(s, &params, &i, max_len)?,
                AnySystem::Alg(s) => run_multable(s, &params, &i, max_len)?,
            };
            Ok((out, true))
        }
        Command::Commutativity { config, i, bound } => {
            let (sys, params) = load_config(&config)?;
            let out = match &sys {
                AnySystem::Int(s) => run_commutativity(s, &params, &i, bound)?,
                AnySystem::Alg(s) => run_commutativity(s, &params, &i, bound)?,
            };
            Ok((out, true))
        }
        Command::Walk {
            config,
            i,
            steps,
            probs,
            format,
        } => {
            let (sys, params) = load_config(&config)?;
            let out = match &sys {
                AnySystem::Int(s) => run_walk(s, &params, &i, steps, &probs, &format)?,
                AnySystem::Alg(s) => run_walk(s, &params, &i, steps, &probs, &format)?,
            };
            Ok((out, true))
        }
        Command::Check { suite } => run_check(&suite),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are not errors
            use clap::error::ErrorKind;
            let kind = e.kind();
            if kind == ErrorKind::DisplayHelp || kind == ErrorKind::DisplayVersion {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match dispatch(cli) {
        Ok((out, ok)) => {
            println!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.message.replace('\n', " "));
            ExitCode::from(e.code)
        }
    }
}
