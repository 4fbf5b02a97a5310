use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lieposet::FieldCtx;

#[derive(Debug, Parser)]
#[command(name = "lieposet", version, about = "Cohomology and deformations of Lie poset algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Show the closed relation set, covers, height and components.
    Poset(PosetArgs),
    /// Simplicial cohomology of the nerve, reduced unless `--unreduced`.
    Nerve(NerveArgs),
    /// Basis, weights, bracket table and center of g(P).
    Algebra(CommonArgs),
    /// Chevalley-Eilenberg cohomology with trivial or adjoint coefficients.
    Cohomology(CohomologyArgs),
    /// Run the full consistency suite on one poset.
    Verify(VerifyArgs),
    /// Build a one-parameter deformation and certify the Jacobi identity.
    Deform(DeformArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct PosetSource {
    /// Poset JSON file: {"n": N, "relations": [[i, j], ...]}.
    #[arg(long, value_name = "FILE")]
    pub poset: Option<PathBuf>,
    /// Named family: chain:N, antichain:N or sphere:K.
    #[arg(long, value_name = "NAME:PARAM")]
    pub family: Option<String>,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Emit JSON instead of a table.
    #[arg(long)]
    pub json: bool,
    /// Report wall-clock runtimes (makes output non-deterministic).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Args)]
pub struct PosetArgs {
    #[command(flatten)]
    pub source: PosetSource,
    #[command(flatten)]
    pub output: Output,
}

fn parse_field(s: &str) -> Result<FieldCtx, String> {
    s.parse::<FieldCtx>().map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    #[command(flatten)]
    pub source: PosetSource,
    /// Coefficient field: q or fp:P with P prime and P > N.
    #[arg(long, default_value = "q", value_parser = parse_field)]
    pub field: FieldCtx,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct NerveArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Use the nerve without the (-1)-simplex.
    #[arg(long)]
    pub unreduced: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModuleArg {
    Trivial,
    Adjoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ActingArg {
    /// The whole algebra g.
    G,
    /// The nilpotent ideal k.
    K,
}

#[derive(Debug, Args)]
pub struct CohomologyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_enum, default_value = "adjoint")]
    pub module: ModuleArg,
    #[arg(long, value_enum, default_value = "g")]
    pub acting: ActingArg,
    /// Restrict to the weight-zero subcomplex.
    #[arg(long)]
    pub weight_zero: bool,
    /// Highest degree; defaults to every degree when dim g <= 10, otherwise 4.
    #[arg(long)]
    pub max_degree: Option<usize>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long)]
    pub max_degree: Option<usize>,
    /// Random cochains per identity.
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DeformType {
    #[value(name = "20")]
    T20,
    #[value(name = "11")]
    T11,
    #[value(name = "02")]
    T02,
}

#[derive(Debug, Args)]
pub struct DeformArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long = "type", value_enum)]
    pub kind: DeformType,
    /// Type 20: the Cartan pair i,j with [eta_i, eta_j]* = t c.
    #[arg(long, value_name = "I,J", default_value = "1,2")]
    pub pair: String,
    /// Type 20: central element as eta coordinates, e.g. 1,2. Defaults to the first center basis vector.
    #[arg(long, value_name = "C1,C2,...")]
    pub central: Option<String>,
    /// Type 11: the functional xi by its values on eta_1, eta_2, ... Defaults to the dual of eta_1.
    #[arg(long, value_name = "X1,X2,...")]
    pub xi: Option<String>,
    /// Types 11 and 02: nerve cocycle as simplex:value pairs, e.g. 1-3:1,2-3:-1.
    /// Defaults to the first cohomology generator of the nerve.
    #[arg(long, value_name = "SPEC")]
    pub cochain: Option<String>,
    /// Print the plain bracket table at t = VALUE instead of the polynomial one.
    #[arg(long, value_name = "t=VALUE")]
    pub specialize: Option<String>,
}
