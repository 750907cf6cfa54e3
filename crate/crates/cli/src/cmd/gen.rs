use std::io::Write;

use anyhow::Result;
use clap::Args;

use crate::class_source::GeneratorArgs;
use crate::Globals;

#[derive(Args, Debug)]
pub struct GenArgs {
    #[command(flatten)]
    pub generator: GeneratorArgs,
}

pub fn execute(globals: &Globals, args: GenArgs) -> Result<bool> {
    let class = args.generator.generate(globals.seed)?;
    let mut out = globals.writer()?;
    writeln!(out, "{}", class.to_json())?;
    out.flush()?;
    eprintln!("generated {} members of length {}", class.len(), class.n());
    Ok(true)
}
