use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

/// Inputs are file paths, or `fixture:NAME` for a built-in fixture.
#[derive(Debug, Parser)]
#[command(name = "bqlab", version, about = "Biquandle brackets, cocycles and link invariants")]
pub struct Cli {
    /// Output on stdout: a JSON report, or the human summary.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check, construct or inspect biquandles.
    #[command(subcommand)]
    Biquandle(BiquandleCmd),
    /// Verify or rescale biquandle brackets.
    #[command(subcommand)]
    Bracket(BracketCmd),
    /// Verify 2-cocycles.
    #[command(subcommand)]
    Cocycle(CocycleCmd),
    /// Structural analyses of a bracket.
    #[command(subcommand)]
    Analyze(AnalyzeCmd),
    /// Inspect PD-coded diagrams.
    #[command(subcommand)]
    Diagram(DiagramCmd),
    /// Evaluate invariants on a diagram.
    #[command(subcommand)]
    Invariant(InvariantCmd),
    /// Enumerate brackets.
    #[command(subcommand)]
    Search(SearchCmd),
    /// The built-in fixture corpus.
    #[command(subcommand)]
    Fixtures(FixturesCmd),
    /// Verify every JSON object and PD file under a directory.
    VerifyAll { dir: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Trivial,
    Flip2,
    Dihedral,
}

#[derive(Debug, Subcommand)]
pub enum BiquandleCmd {
    /// Check every biquandle axiom and report the first witness of each failure.
    Check { file: String },
    /// Build a standard biquandle.
    Make {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: Option<usize>,
        /// Also write the canonical JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report whether some element's two rows cover the whole set.
    Semitransitive { file: String },
}

#[derive(Debug, Subcommand)]
pub enum BracketCmd {
    Check { file: String },
    /// Multiply A and B by a unit of the ring.
    Scale {
        file: String,
        /// Ring element as JSON, e.g. `3` or `[[1, {"t": 1}]]`.
        #[arg(long)]
        by: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CocycleCmd {
    Check { file: String },
    /// Test whether phi is a constant multiple of a cocycle.
    UpToConstant { file: String },
}

#[derive(Debug, Subcommand)]
pub enum AnalyzeCmd {
    /// Distinct ratios A/B.
    Ratio { bracket: String },
    /// Case split of every entry relative to a base pair.
    Psi {
        bracket: String,
        /// 1-based base pair.
        #[arg(long, default_value = "1,1")]
        base: String,
    },
    /// Write a constant-ratio bracket as a constant bracket times a cocycle.
    Factor { bracket: String },
    /// Check that (A/phi, B/phi) is a bracket iff phi is a cocycle up to a constant.
    Theorem1 {
        bracket: String,
        /// Matrix of ring units, inline or from a file: a bare array or an object with a `phi` field.
        phi: String,
    },
    /// Diagonal-orbit equalities and the diagonal rigidity checks.
    Corollaries { bracket: String },
}

#[derive(Debug, Subcommand)]
pub enum DiagramCmd {
    Info { file: String },
    Colorings {
        file: String,
        #[arg(long)]
        biquandle: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum InvariantCmd {
    Bracket {
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        bracket: String,
        #[arg(long)]
        per_coloring: bool,
    },
    Cocycle {
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        cocycle: String,
        #[arg(long)]
        per_coloring: bool,
    },
    Counting {
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        biquandle: String,
    },
    /// Jones polynomial by direct state summation.
    Jones {
        #[arg(long)]
        diagram: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum SearchCmd {
    Brackets {
        #[arg(long)]
        biquandle: String,
        /// Ring JSON (inline or file), or `Z<n>`.
        #[arg(long)]
        ring: String,
        /// Keep only brackets with A[1,1] = 1.
        #[arg(long)]
        up_to_scaling: bool,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        jobs: Option<usize>,
        /// Stop enumerating after this many seconds.
        #[arg(long)]
        time_budget: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum FixturesCmd {
    List,
    /// Write every fixture into a directory.
    Emit { dir: PathBuf },
}

impl Command {
    pub fn name(&self) -> String {
        let sub = match self {
            Command::Biquandle(c) => match c {
                BiquandleCmd::Check { .. } => "check",
                BiquandleCmd::Make { .. } => "make",
                BiquandleCmd::Semitransitive { .. } => "semitransitive",
            },
            Command::Bracket(c) => match c {
                BracketCmd::Check { .. } => "check",
                BracketCmd::Scale { .. } => "scale",
            },
            Command::Cocycle(c) => match c {
                CocycleCmd::Check { .. } => "check",
                CocycleCmd::UpToConstant { .. } => "up-to-constant",
            },
            Command::Analyze(c) => match c {
                AnalyzeCmd::Ratio { .. } => "ratio",
                AnalyzeCmd::Psi { .. } => "psi",
                AnalyzeCmd::Factor { .. } => "factor",
                AnalyzeCmd::Theorem1 { .. } => "theorem1",
                AnalyzeCmd::Corollaries { .. } => "corollaries",
            },
            Command::Diagram(c) => match c {
                DiagramCmd::Info { .. } => "info",
                DiagramCmd::Colorings { .. } => "colorings",
            },
            Command::Invariant(c) => match c {
                InvariantCmd::Bracket { .. } => "bracket",
                InvariantCmd::Cocycle { .. } => "cocycle",
                InvariantCmd::Counting { .. } => "counting",
                InvariantCmd::Jones { .. } => "jones",
            },
            Command::Search(SearchCmd::Brackets { .. }) => "brackets",
            Command::Fixtures(c) => match c {
                FixturesCmd::List => "list",
                FixturesCmd::Emit { .. } => "emit",
            },
            Command::VerifyAll { .. } => return "verify-all".into(),
        };
        let group = match self {
            Command::Biquandle(_) => "biquandle",
            Command::Bracket(_) => "bracket",
            Command::Cocycle(_) => "cocycle",
            Command::Analyze(_) => "analyze",
            Command::Diagram(_) => "diagram",
            Command::Invariant(_) => "invariant",
            Command::Search(_) => "search",
            Command::Fixtures(_) => "fixtures",
            Command::VerifyAll { .. } => unreachable!(),
        };
        format!("{group} {sub}")
    }
}
