use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "ffcount", version, about = "Counts special polynomials over finite fields")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact count of one class of monic multivariate polynomials.
    Count(CountArgs),
    /// Main term, exact value and relative error bound.
    Approx(CountArgs),
    /// Coefficients 0..N of a generating series.
    Series(SeriesArgs),
    /// Bounds and exact values for decomposable univariate polynomials.
    Decomp(DecompArgs),
    /// Builds and verifies a collision family.
    Families(FamilyArgs),
    /// Exhaustive census of univariate decompositions.
    Census(DecompArgs),
    /// Compares the formula with exhaustive enumeration.
    Verify(VerifyArgs),
    /// Compares irreducible counts with a local table of sequence values.
    OeisCheck(OeisArgs),
}

#[derive(Args, Debug, Clone)]
pub struct CountArgs {
    #[arg(long)]
    pub class: String,
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub s: Option<u32>,
    #[arg(long, conflicts_with = "symbolic", required_unless_present = "symbolic")]
    pub q: Option<u64>,
    #[arg(long)]
    pub symbolic: bool,
}

#[derive(Args, Debug, Clone)]
pub struct SeriesArgs {
    #[arg(long)]
    pub class: String,
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub max_n: u32,
    #[arg(long)]
    pub s: Option<u32>,
    #[arg(long)]
    pub q: Option<u64>,
}

#[derive(Args, Debug, Clone)]
pub struct DecompArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub q: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyName {
    Ritt1,
    Ritt2,
    Frobenius,
    #[value(name = "S")]
    S,
    #[value(name = "M")]
    M,
}

#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: FamilyName,
    #[arg(long)]
    pub q: u64,
    /// Comma-separated `key=value` pairs, e.g. `l=2,k=1,w=x+1,a=0`.
    #[arg(long, default_value = "")]
    pub params: String,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(long)]
    pub class: String,
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub s: Option<u32>,
}

#[derive(Args, Debug, Clone)]
pub struct OeisArgs {
    #[arg(long)]
    pub file: std::path::PathBuf,
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub max_n: u32,
}
