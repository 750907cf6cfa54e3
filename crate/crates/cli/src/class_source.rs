use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use oracleid_core::concept::{generate_class, ClassKind, ConceptClass};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Cube,
    /// Weight-one strings.
    Hamming1,
    /// Strings of weight `--k`.
    HammingWeight,
    /// Strings of weight `--k − 1` or `--k`.
    HammingPair,
    /// Free first `--free-bits` bits, zeros after.
    Prefix,
    /// `--m` distinct uniform strings (uses `--seed`).
    Random,
}

/// A generated class: family, length and family parameters.
#[derive(Args, Clone, Debug, Serialize)]
pub struct GeneratorArgs {
    /// Class family.
    #[arg(long)]
    pub kind: Option<Family>,
    /// String length N.
    #[arg(long)]
    pub n: Option<usize>,
    /// Weight parameter for the Hamming families.
    #[arg(long)]
    pub k: Option<usize>,
    /// Number of members for random classes.
    #[arg(long)]
    pub m: Option<usize>,
    /// Free bits for prefix classes.
    #[arg(long)]
    pub free_bits: Option<usize>,
}

impl GeneratorArgs {
    pub fn kind(&self) -> Result<ClassKind> {
        let need = |v: Option<usize>, flag: &str| {
            v.with_context(|| format!("--{flag} is required for this --kind"))
        };
        Ok(match self.kind.context("--kind is required")? {
            Family::Cube => ClassKind::Cube,
            Family::Hamming1 => ClassKind::HammingWeight { k: 1 },
            Family::HammingWeight => ClassKind::HammingWeight { k: need(self.k, "k")? },
            Family::HammingPair => ClassKind::HammingPair { k: need(self.k, "k")? },
            Family::Prefix => ClassKind::Prefix {
                free_bits: need(self.free_bits, "free-bits")?,
            },
            Family::Random => ClassKind::Random { size: need(self.m, "m")? },
        })
    }

    pub fn generate(&self, seed: u64) -> Result<ConceptClass> {
        let n = self.n.context("--n is required")?;
        Ok(generate_class(self.kind()?, n, seed)?)
    }
}

/// Either a class file or generator flags.
#[derive(Args, Clone, Debug, Serialize)]
pub struct ClassArgs {
    /// Class JSON file as written by `gen`.
    #[arg(long, conflicts_with = "kind")]
    pub class: Option<PathBuf>,
    #[command(flatten)]
    pub generator: GeneratorArgs,
}

impl ClassArgs {
    pub fn is_given(&self) -> bool {
        self.class.is_some() || self.generator.kind.is_some()
    }

    pub fn load(&self, seed: u64) -> Result<ConceptClass> {
        match &self.class {
            Some(path) => {
                let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                ConceptClass::from_json(&text).with_context(|| format!("parsing {}", path.display()))
            }
            None if self.generator.kind.is_some() => self.generator.generate(seed),
            None => bail!("give --class FILE or --kind with --n"),
        }
    }
}
