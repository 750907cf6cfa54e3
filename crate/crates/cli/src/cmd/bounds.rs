use std::io::Write;

use anyhow::{bail, Result};
use clap::Args;
use oracleid_core::bounds::{bound_report, BoundReport};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::Globals;

#[derive(Args, Debug, Serialize)]
pub struct BoundsArgs {
    /// String lengths N of the grid, comma separated.
    #[arg(long = "n", value_delimiter = ',')]
    pub n_values: Vec<usize>,

    /// Class sizes M of the grid, comma separated.
    #[arg(long = "m", value_delimiter = ',')]
    pub m_values: Vec<u64>,

    /// Also add M = 2^N for every N.
    #[arg(long)]
    pub full_cube: bool,

    /// Exit with status 1 if brute_force_C ≤ lp_primal ≤ lp_dual fails on a row.
    #[arg(long)]
    pub check_chain: bool,
}

pub fn execute(globals: &Globals, args: BoundsArgs) -> Result<bool> {
    eprintln!("{}", json!({ "config": { "command": "bounds", "globals": globals, "args": &args } }));
    let mut cells = Vec::new();
    for &n in &args.n_values {
        if n == 0 || n > 63 {
            bail!("N = {n} outside 1..=63");
        }
        let mut ms = args.m_values.clone();
        if args.full_cube {
            ms.push(1u64 << n);
        }
        ms.sort_unstable();
        ms.dedup();
        cells.extend(ms.into_iter().map(|m| (m, n)));
    }
    let rows: Vec<BoundReport> = globals.pool()?.install(|| {
        cells
            .par_iter()
            .map(|&(m, n)| bound_report(m, n))
            .collect::<oracleid_core::Result<_>>()
    })?;
    let mut out = globals.writer()?;
    {
        let mut csv = csv::WriterBuilder::new().has_headers(false).from_writer(&mut out);
        csv.write_record(BoundReport::HEADER)?;
        for row in &rows {
            csv.serialize(row)?;
        }
        csv.flush()?;
    }
    out.flush()?;
    let broken = rows.iter().filter(|r| !r.chain_holds(globals.tolerance)).count();
    if broken > 0 {
        eprintln!("chain inequality fails on {broken} rows");
    }
    Ok(!args.check_chain || broken == 0)
}
