use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use oracleid_core::concept::{BitString, ConceptClass};
use oracleid_core::identify::{
    run, trial_seed, Algorithm, DisagreementFinder, EngineKind, ExactFinder, QuantumFinder, RunTrace,
};
use oracleid_core::qsim::SearchParams;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::class_source::ClassArgs;
use crate::{emit, Globals};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum EngineArg {
    Ideal,
    Quantum,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum AlgorithmArg {
    Basic,
    Improved,
    Final,
}

#[derive(Args, Debug, Serialize)]
pub struct RunArgs {
    #[command(flatten)]
    pub class: ClassArgs,

    /// Hidden string to identify.
    #[arg(long, conflicts_with = "all")]
    pub x: Option<String>,

    /// Identify every member of the class.
    #[arg(long)]
    pub all: bool,

    #[arg(long, value_enum, default_value = "ideal")]
    #[serde(skip)]
    pub engine: EngineArg,

    #[arg(long, value_enum, default_value = "final")]
    #[serde(skip)]
    pub algorithm: AlgorithmArg,

    /// Trials per hidden string.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,

    /// Exit with status 1 if the success rate falls below this.
    #[arg(long, default_value_t = 0.0)]
    pub min_success_rate: f64,
}

#[derive(Serialize)]
struct Row {
    x: BitString,
    trial: u64,
    seed: u64,
    algorithm: Algorithm,
    engine: EngineKind,
    success: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<RunTrace>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    max_norm_drift: f64,
}

fn one_trial(
    class: &ConceptClass,
    x: BitString,
    algorithm: Algorithm,
    engine: EngineKind,
    seed: u64,
) -> (std::result::Result<RunTrace, String>, f64) {
    fn go(
        class: &ConceptClass,
        algorithm: Algorithm,
        mut finder: impl DisagreementFinder,
    ) -> (std::result::Result<RunTrace, String>, f64) {
        let result = run(algorithm, class, &mut finder).map_err(|e| e.to_string());
        (result, finder.max_norm_drift())
    }
    match engine {
        EngineKind::Ideal => go(class, algorithm, ExactFinder::new(x)),
        EngineKind::Quantum => go(
            class,
            algorithm,
            QuantumFinder::for_class_size(x, class.len(), seed, SearchParams::default()),
        ),
    }
}

pub fn execute(globals: &Globals, args: RunArgs) -> Result<bool> {
    let class = args.class.load(globals.seed)?;
    let targets: Vec<BitString> = match (&args.x, args.all) {
        (Some(x), false) => {
            let x: BitString = x.parse().context("parsing --x")?;
            if x.len() != class.n() {
                bail!("--x has length {}, class strings have length {}", x.len(), class.n());
            }
            vec![x]
        }
        (None, true) => class.members().to_vec(),
        _ => bail!("give --x STRING or --all"),
    };
    let engine = match args.engine {
        EngineArg::Ideal => EngineKind::Ideal,
        EngineArg::Quantum => EngineKind::Quantum,
    };
    let algorithm = match args.algorithm {
        AlgorithmArg::Basic => Algorithm::Basic,
        AlgorithmArg::Improved => Algorithm::Improved,
        AlgorithmArg::Final => Algorithm::Final,
    };

    let mut out = globals.writer()?;
    emit(
        &mut out,
        &json!({ "config": {
            "command": "run",
            "globals": globals,
            "args": &args,
            "engine": engine,
            "algorithm": algorithm,
            "class_size": class.len(),
            "n": class.n(),
        }}),
    )?;

    let jobs: Vec<(usize, u64)> = (0..targets.len())
        .flat_map(|i| (0..args.trials).map(move |t| (i, t)))
        .collect();
    let rows: Vec<Row> = globals.pool()?.install(|| {
        jobs.par_iter()
            .map(|&(i, trial)| {
                let x = targets[i];
                let seed = trial_seed(globals.seed, i as u64 * args.trials + trial);
                let (result, drift) = one_trial(&class, x, algorithm, engine, seed);
                let (trace, error) = match result {
                    Ok(t) => (Some(t), None),
                    Err(e) => (None, Some(e)),
                };
                Row {
                    x,
                    trial,
                    seed,
                    algorithm,
                    engine,
                    success: trace.as_ref().is_some_and(|t| t.identified == x),
                    trace,
                    error,
                    max_norm_drift: drift,
                }
            })
            .collect()
    });

    for row in &rows {
        emit(&mut out, row)?;
    }
    let count = rows.len() as f64;
    let successes = rows.iter().filter(|r| r.success).count();
    let traces: Vec<&RunTrace> = rows.iter().filter_map(|r| r.trace.as_ref()).collect();
    let mean = |f: &dyn Fn(&RunTrace) -> f64| {
        if traces.is_empty() {
            0.0
        } else {
            traces.iter().map(|t| f(t)).sum::<f64>() / traces.len() as f64
        }
    };
    let success_rate = successes as f64 / count;
    let passed = success_rate >= args.min_success_rate;
    emit(
        &mut out,
        &json!({ "summary": {
            "rows": rows.len(),
            "successes": successes,
            "success_rate": success_rate,
            "mean_raw_queries": mean(&|t| t.raw_queries as f64),
            "mean_ideal_cost": mean(&|t| t.ideal_cost),
            "max_norm_drift": rows.iter().map(|r| r.max_norm_drift).fold(0.0, f64::max),
            "passed": passed,
        }}),
    )?;
    out.flush()?;
    eprintln!(
        "{} rows, success rate {:.4}{}",
        rows.len(),
        success_rate,
        if passed { "" } else { " (below --min-success-rate)" }
    );
    Ok(passed)
}
