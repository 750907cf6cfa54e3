use std::io::Write;

use anyhow::{bail, Result};
use clap::{Args, ValueEnum};
use oracleid_core::bounds::{brute_force_c, check_dual_certificate, lp_primal_opt};
use oracleid_core::concept::{cube, generate_class, subset_by_mask, BitString, ClassKind, ConceptClass, FunctionTable, GramMatrix};
use oracleid_core::identify::trial_seed;
use oracleid_core::ordering::{hegedus_ordering, ordering_holds, verify_ordering};
use oracleid_core::sdp::{cost_of, find_first_one_solution, first_disagreement_rank, oracle_id_solution, verify_feasible};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::class_source::ClassArgs;
use crate::{emit, Globals};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Ordering,
    Sdp,
    Lp,
    All,
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,

    /// Class for the sdp suite; without one, the first-one solution on the
    /// `--n`-bit cube is checked. `--n` also sets the length for the
    /// ordering and lp suites.
    #[command(flatten)]
    pub class: ClassArgs,

    /// LP parameter m (plain `--m` also works when no `--kind` is given);
    /// with `--n`, checks that single cell instead of the full grid.
    #[arg(long = "lp-m")]
    pub lp_m: Option<usize>,

    /// Random sets to check when the ordering suite runs above N = 4.
    #[arg(long, default_value_t = 500)]
    pub samples: u64,

    /// Include solution vectors in the sdp report.
    #[arg(long)]
    pub dump: bool,
}

/// Outcome of one suite.
#[derive(Serialize)]
struct Check {
    suite: &'static str,
    passed: bool,
    details: Value,
}

fn ordering_suite(globals: &Globals, n: usize, samples: u64) -> Result<Check> {
    if n == 0 || n > 16 {
        bail!("ordering suite needs 1 ≤ N ≤ 16");
    }
    let sets: Vec<Vec<BitString>> = if n <= 4 {
        let universe = cube(n);
        (1u64..1 << (1usize << n)).map(|mask| subset_by_mask(&universe, mask)).collect()
    } else {
        let cap = (1u64 << n).min(1 << 10);
        (0..samples)
            .map(|i| {
                let seed = trial_seed(globals.seed, i);
                let size = (seed % cap) as usize + 1;
                generate_class(ClassKind::Random { size }, n, seed).map(|c| c.members().to_vec())
            })
            .collect::<oracleid_core::Result<_>>()?
    };
    let results: Vec<(bool, f64)> = globals.pool()?.install(|| {
        sets.par_iter()
            .map(|set| {
                let ord = hegedus_ordering(set).expect("nonempty set");
                let holds = ordering_holds(set, &ord).expect("matching lengths");
                let ratio = verify_ordering(set, &ord).expect("matching lengths");
                (holds, ratio)
            })
            .collect()
    });
    let failures = results.iter().filter(|r| !r.0 || r.1 > 1.0).count();
    let worst = results.iter().map(|r| r.1).fold(0.0, f64::max);
    Ok(Check {
        suite: "ordering",
        passed: failures == 0,
        details: json!({
            "n": n,
            "exhaustive": n <= 4,
            "sets_checked": results.len(),
            "failures": failures,
            "worst_ratio": worst,
        }),
    })
}

fn sdp_class_check(globals: &Globals, class: &ConceptClass, dump: bool) -> Result<Check> {
    let built = oracle_id_solution(class)?;
    let target = GramMatrix::identity(class.members()).complement();
    let report = verify_feasible(&target, &built.solution)?;
    let kappa = built.kappa();
    let passed = report.feasible(globals.tolerance) && kappa <= 3.0;
    let mut details = json!({
        "matrix": "J-I",
        "n": class.n(),
        "class_size": class.len(),
        "stages": built.stages,
        "max_violation": report.max_violation,
        "worst_pair": report.worst_pair,
        "kappa": kappa,
        "cost": class.members().iter().zip(&built.cost.values)
            .map(|(x, c)| json!({ "x": x, "cost": c }))
            .collect::<Vec<_>>(),
    });
    if dump {
        details["solution"] = serde_json::to_value(&built.solution)?;
    }
    Ok(Check {
        suite: "sdp",
        passed,
        details,
    })
}

fn sdp_first_one_check(globals: &Globals, n: usize, dump: bool) -> Result<Check> {
    if n == 0 || n > 12 {
        bail!("first-one check needs 1 ≤ N ≤ 12");
    }
    let domain = cube(n);
    let order: Vec<usize> = (0..n).collect();
    let s = BitString::zeros(n)?;
    let sol = find_first_one_solution(&domain, &order, &s)?;
    let f = FunctionTable::from_fn(&domain, |x| first_disagreement_rank(x, &order, &s))?;
    let report = verify_feasible(&f.gram().complement(), &sol)?;
    let cost = cost_of(&sol);
    let cost_ok = domain
        .iter()
        .zip(&cost.values)
        .all(|(x, c)| *c <= 3.0 * (first_disagreement_rank(x, &order, &s) as f64).sqrt() + 1e-12);
    let mut details = json!({
        "matrix": "J-F(first one)",
        "n": n,
        "max_violation": report.max_violation,
        "worst_pair": report.worst_pair,
        "cost_bound_holds": cost_ok,
        "max_cost": cost.max(),
    });
    if dump {
        details["solution"] = serde_json::to_value(&sol)?;
    }
    Ok(Check {
        suite: "sdp",
        passed: report.feasible(globals.tolerance) && cost_ok,
        details,
    })
}

fn lp_suite(globals: &Globals, cells: Vec<(usize, usize)>) -> Result<Check> {
    let tol = globals.tolerance;
    let rows: Vec<Value> = globals.pool()?.install(|| {
        cells
            .par_iter()
            .map(|&(n, m)| {
                let primal = lp_primal_opt(n, m);
                let (dual, slack, feasible) = match check_dual_certificate(n, m) {
                    Ok(c) => (Some(c.value), Some(c.worst_slack), c.feasible),
                    Err(_) => (None, None, false),
                };
                let brute = (n <= 12).then(|| brute_force_c(1u64 << m, n).map(|o| o.value).ok()).flatten();
                let chain = brute.is_none_or(|b| b <= primal + tol) && dual.is_some_and(|d| primal <= d + tol);
                json!({
                    "n": n, "m": m, "lp_primal": primal, "lp_dual": dual,
                    "worst_slack": slack, "brute_force_C": brute,
                    "passed": feasible && chain,
                })
            })
            .collect()
    });
    let failures: Vec<&Value> = rows.iter().filter(|r| r["passed"] != json!(true)).collect();
    Ok(Check {
        suite: "lp",
        passed: failures.is_empty(),
        details: json!({
            "cells": rows.len(),
            "failures": failures,
            "rows": if rows.len() <= 16 { json!(rows) } else { Value::Null },
        }),
    })
}

pub fn execute(globals: &Globals, args: VerifyArgs) -> Result<bool> {
    let mut out = globals.writer()?;
    emit(&mut out, &json!({ "config": { "command": "verify", "globals": globals, "args": &args } }))?;
    let n = args.class.generator.n;
    let mut checks = Vec::new();
    let run_all = args.suite == Suite::All;
    if run_all || args.suite == Suite::Ordering {
        checks.push(ordering_suite(globals, n.unwrap_or(4), args.samples)?);
    }
    if run_all || args.suite == Suite::Sdp {
        if args.class.is_given() {
            let class = args.class.load(globals.seed)?;
            checks.push(sdp_class_check(globals, &class, args.dump)?);
        } else {
            checks.push(sdp_first_one_check(globals, n.unwrap_or(4), args.dump)?);
        }
        if run_all && !args.class.is_given() {
            for kind in [ClassKind::HammingWeight { k: 1 }, ClassKind::Cube] {
                let len = if kind == ClassKind::Cube { 2 } else { 3 };
                checks.push(sdp_class_check(globals, &generate_class(kind, len, 0)?, false)?);
            }
        }
    }
    if run_all || args.suite == Suite::Lp {
        // Without --kind, `--m` means the LP parameter.
        let lp_m = args.lp_m.or(args.class.generator.kind.is_none().then_some(args.class.generator.m).flatten());
        let cells = match (n, lp_m) {
            (Some(n), Some(m)) => vec![(n, m)],
            (Some(n), None) => (1..=n).map(|m| (n, m)).collect(),
            _ => (4..=64).flat_map(|n| (1..=n).map(move |m| (n, m))).collect(),
        };
        checks.push(lp_suite(globals, cells)?);
    }
    let passed = checks.iter().all(|c| c.passed);
    for c in &checks {
        emit(&mut out, c)?;
        eprintln!("{:<9} {}", c.suite, if c.passed { "pass" } else { "FAIL" });
    }
    emit(&mut out, &json!({ "summary": { "checks": checks.len(), "passed": passed } }))?;
    out.flush()?;
    Ok(passed)
}
