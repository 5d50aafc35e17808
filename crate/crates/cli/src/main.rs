//! `subdirect`: run any stage of the certification pipeline on JSON inputs.
//!
//! Exit codes: 0 when the computation succeeded and the checked property
//! holds, 1 when it succeeded and the property fails, 2 on input, usage or
//! budget errors.

mod commands;
mod input;
mod report;

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use input::CliError;

#[derive(Debug, Parser)]
#[command(name = "subdirect", version, about = "Certify projectivity of torsion-free factors of subdirect presentations")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Cap on S-pairs per Gröbner computation.
    #[arg(long, global = true)]
    budget: Option<usize>,
}

#[derive(Debug, Args)]
pub struct RingArg {
    /// Ring descriptor file.
    #[arg(long)]
    ring: PathBuf,
}

#[derive(Debug, Args)]
pub struct GensArgs {
    #[command(flatten)]
    ring: RingArg,
    /// Submodule file listing generator vectors.
    #[arg(long)]
    gens: PathBuf,
    /// Rank of the ambient free module, if the file does not fix it.
    #[arg(long)]
    q: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ModuleArgs {
    #[command(flatten)]
    ring: RingArg,
    /// Module file: a relation matrix, or {"generators": g, "relations": matrix}.
    #[arg(long)]
    module: PathBuf,
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    /// Ring descriptor file (with --A/--B).
    #[arg(long)]
    ring: Option<PathBuf>,
    #[arg(long)]
    q: Option<usize>,
    /// Submodule file for the first component.
    #[arg(long = "A")]
    a: Option<PathBuf>,
    /// Submodule file for the second component.
    #[arg(long = "B")]
    b: Option<PathBuf>,
    /// Self-contained instance files {"ring", "q", "A", "B"}; several are accepted by certify.
    #[arg(long, num_args = 1..)]
    instance: Vec<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Reduced standard basis of a submodule.
    Gb(GensArgs),
    /// Normal form of a vector modulo a submodule, with a lift when it is a member.
    Nf {
        #[command(flatten)]
        gens: GensArgs,
        /// File holding one vector: a JSON array of polynomial strings.
        #[arg(long)]
        vector: PathBuf,
    },
    /// Module of relations among the generators.
    Syz(GensArgs),
    /// Intersection of two submodules.
    Intersect(InstanceArgs),
    /// Free resolution of a module.
    Resolve {
        #[command(flatten)]
        module: ModuleArgs,
        /// Number of differentials to compute (default: global dimension + 1).
        #[arg(long)]
        length: Option<usize>,
    },
    /// Ext^i(M, N); N defaults to the ring.
    Ext {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Grade of a module.
    Grade(ModuleArgs),
    /// Codimension of a module.
    Codim(ModuleArgs),
    /// Annihilator ideal of a module.
    Annihilator(ModuleArgs),
    /// Transpose (Auslander dual) of a module.
    Auslander(ModuleArgs),
    /// Torsion submodule.
    Torsion(ModuleArgs),
    /// Torsion-free factor.
    TfFactor(ModuleArgs),
    /// Embedding of a torsion-free module in a free module.
    Embed(ModuleArgs),
    /// Does the presentation map R^g -> M split?
    Split(ModuleArgs),
    /// Complement of A above B, or the obstruction Ext^1(T, A).
    Complement(InstanceArgs),
    /// Full certificate for an instance.
    Certify {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Worker threads for batches of instance files.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Check that splitting is equivalent to the vanishing of Ext^1(T, A).
    AppendixCheck(InstanceArgs),
    /// Compare the pipeline with closed forms over the integers.
    Oracle {
        /// Ring descriptor file; must describe the integers when given.
        #[arg(long)]
        ring: Option<PathBuf>,
        #[arg(long)]
        module: PathBuf,
    },
    /// Write the structured instance family, sheared by seeded random changes of coordinates.
    Generate {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sheared copies per family member.
        #[arg(long, default_value_t = 6)]
        shears: usize,
        /// Directory for the instance files.
        #[arg(long)]
        dir: PathBuf,
    },
}

/// Whether the property a subcommand checks holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Holds,
    Fails,
    Error,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Holds => 0,
            Status::Fails => 1,
            Status::Error => 2,
        }
    }

    pub fn from_bool(b: bool) -> Self {
        if b {
            Status::Holds
        } else {
            Status::Fails
        }
    }
}

pub struct Outcome {
    pub report: serde_json::Value,
    pub status: Status,
}

fn emit(out: Option<&PathBuf>, report: &serde_json::Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(report).expect("report serializes");
    text.push('\n');
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Input {
            file: path.clone(),
            line: None,
            token: None,
            message: e.to_string(),
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Usage(format!("cannot write report: {e}")))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = commands::run(&cli.command, cli.budget).and_then(|o| {
        emit(cli.out.as_ref(), &o.report)?;
        Ok(o.status)
    });
    match result {
        Ok(status) => ExitCode::from(status.code()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(Status::Error.code())
        }
    }
}
