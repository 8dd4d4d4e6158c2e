//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mvt_core::mv::DEFAULT_BUDGET;
use mvt_core::sampling::DEFAULT_SAMPLES;

#[derive(Debug, Parser)]
#[command(
    name = "mvt",
    version,
    about = "MV-algebra workbench: constructions and theorem checks"
)]
pub struct Cli {
    #[command(flatten)]
    pub opts: Options,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Args)]
pub struct Options {
    /// Element cap for materializing operations.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Samples drawn by checks on intensional algebras.
    #[arg(long, global = true, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    /// Emit the report as JSON (the default).
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,
    /// Emit the report as readable text.
    #[arg(long, global = true)]
    pub text: bool,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Include wall-clock time in the report (makes it non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            budget: DEFAULT_BUDGET,
            seed: 0,
            samples: DEFAULT_SAMPLES,
            json: false,
            text: false,
            out: None,
            timing: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LiftMode {
    /// Riesz MV homomorphisms out of a finite algebra.
    Riesz,
    /// f-MV homomorphisms out of a PMV algebra.
    Fmv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Signature {
    Mv,
    Pmv,
    Riesz,
    Fmv,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Γ(G,u) of a unital lattice-ordered group.
    Gamma {
        #[arg(long)]
        group: String,
    },
    /// The unital group of a finite algebra, with Γ(Ξ(A)) ≅ A.
    Xi {
        #[arg(long)]
        algebra: String,
    },
    /// Semisimple tensor product.
    Tensor {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Radical and maximal ideals of a finite algebra.
    Radical {
        #[arg(long)]
        algebra: String,
    },
    /// Quotient by an ideal (by the radical when none is given).
    Quotient {
        #[arg(long)]
        algebra: String,
        /// Comma-separated element indices generating the ideal.
        #[arg(long, value_delimiter = ',')]
        ideal: Option<Vec<usize>>,
    },
    /// Isomorphism test with witness or certificate.
    Iso {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Γ(G) ⊗ Γ(H) ≅ Γ(G ⊗ H).
    CheckCommutes {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
    },
    /// The scalar action of A on A ⊗ B.
    CheckSep {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Lifts of every homomorphism out of the source along the scalar extension.
    CheckAdjunction {
        #[arg(long)]
        source: String,
        /// Defaults to the scalar extension of the source.
        #[arg(long)]
        target: Option<String>,
        #[arg(long, value_enum, default_value_t = LiftMode::Riesz)]
        mode: LiftMode,
        #[arg(long, default_value = "rational")]
        scalars: String,
    },
    /// Decompositions of one-variable Riesz terms into scalar multiples of
    /// McNaughton functions.
    CheckFree {
        #[arg(long = "term")]
        terms: Vec<String>,
        /// Also check this many generated terms.
        #[arg(long)]
        generate: Option<usize>,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Evaluate a term in [0,1] or in a finite algebra.
    Eval {
        #[arg(long)]
        term: String,
        /// Assignments `x=1/2`; element indices when --algebra is given.
        #[arg(long, value_delimiter = ',')]
        env: Vec<String>,
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long, value_enum, default_value_t = Signature::Fmv)]
        signature: Signature,
    },
    /// Subalgebra generated by the elements of a `functions` spec.
    Closure {
        #[arg(long)]
        generators: String,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Gamma { .. } => "gamma",
            Command::Xi { .. } => "xi",
            Command::Tensor { .. } => "tensor",
            Command::Radical { .. } => "radical",
            Command::Quotient { .. } => "quotient",
            Command::Iso { .. } => "iso",
            Command::CheckCommutes { .. } => "check-commutes",
            Command::CheckSep { .. } => "check-sep",
            Command::CheckAdjunction { .. } => "check-adjunction",
            Command::CheckFree { .. } => "check-free",
            Command::Eval { .. } => "eval",
            Command::Closure { .. } => "closure",
        }
    }
}
