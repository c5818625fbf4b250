//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "gradzeta",
    version,
    about = "Graded ideal zeta functions of free nilpotent Lie algebras over F_p"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Worker threads for enumerations (default: GRADZETA_THREADS, else 1).
    #[arg(long, global = true, env = "GRADZETA_THREADS")]
    pub threads: Option<usize>,
    /// Ceiling on enumeration nodes; larger jobs are refused up front.
    #[arg(long, global = true, default_value_t = 1_000_000_000)]
    pub budget: u64,
    /// Append-only NDJSON log of completed cell ranges; existing records are reused.
    #[arg(long, global = true)]
    pub checkpoint: Option<PathBuf>,
    /// No progress on stderr.
    #[arg(long, short, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Graded ideal zeta function, closed form and/or enumeration.
    Zeta(ZetaArgs),
    /// One coefficient: a single profile b_m, or a whole codimension.
    Coeff(CoeffArgs),
    /// Orders of the word-permutation groups and the fixed-space checks.
    Gamma(GammaArgs),
    /// Fit polynomials in p to counts over a prime range.
    Scan(ScanArgs),
    /// Run a named verification suite.
    Verify(VerifyArgs),
    /// Layer dimensions, Lambda and W data of the algebra.
    Algebra(AlgebraArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Closed,
    Enum,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Fast,
    Naive,
}

#[derive(Args, Debug, Clone)]
pub struct EnumArgs {
    #[arg(long, value_enum, default_value_t = StrategyArg::Fast)]
    pub strategy: StrategyArg,
    /// Weight GL_2 orbits of the first layer instead of visiting every subspace.
    #[arg(long)]
    pub orbits: bool,
}

#[derive(Args, Debug)]
pub struct ZetaArgs {
    #[arg(long)]
    pub c: usize,
    #[arg(long, conflicts_with = "symbolic")]
    pub p: Option<u64>,
    /// Closed form as polynomials in p.
    #[arg(long)]
    pub symbolic: bool,
    #[arg(long, value_enum, default_value_t = Mode::Closed)]
    pub mode: Mode,
    #[command(flatten)]
    pub enumeration: EnumArgs,
}

#[derive(Args, Debug)]
pub struct CoeffArgs {
    #[arg(long)]
    pub c: usize,
    /// Prime, comma list, or range a..b.
    #[arg(long)]
    pub p: String,
    /// Dimensions m_1,...,m_c.
    #[arg(long, conflicts_with = "codim", required_unless_present = "codim")]
    pub profile: Option<String>,
    #[arg(long)]
    pub codim: Option<usize>,
    #[command(flatten)]
    pub enumeration: EnumArgs,
}

#[derive(Args, Debug)]
pub struct GammaArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub order: bool,
    /// Also compute the order by randomized Schreier-Sims with this seed.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, requires = "p")]
    pub verify_prop1: bool,
    #[arg(long, requires = "p")]
    pub verify_thm1: bool,
    #[arg(long)]
    pub p: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Task {
    C6Codim9,
    Onestep,
    Profile,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(long, value_enum)]
    pub task: Task,
    /// Prime list: a..b, comma list, or a mix.
    #[arg(long)]
    pub primes: String,
    #[arg(long = "mod", default_value_t = 1)]
    pub modulus: u64,
    #[arg(long)]
    pub deg: usize,
    #[arg(long)]
    pub c: Option<usize>,
    #[arg(long)]
    pub profile: Option<String>,
    /// Visit every first-layer subspace instead of weighting GL_2 orbits.
    #[arg(long)]
    pub no_orbits: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Table1,
    Prop1,
    Thm1,
    G,
    Fk,
    Alpha1,
    Alpha2,
    Lemma34,
    Kernel,
    Wdisjoint,
    Curve,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub c: Option<usize>,
}

#[derive(Args, Debug)]
pub struct AlgebraArgs {
    #[arg(long)]
    pub c: usize,
    #[arg(long)]
    pub p: u64,
}

/// Parses `5..70`, `5,7,11` or mixtures such as `5,7,11..20` into sorted primes.
/// Ranges keep only primes; listed values must be prime.
pub fn parse_primes(s: &str) -> Result<Vec<u64>, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let lo: u64 = a
                .trim()
                .parse()
                .map_err(|_| format!("bad range start in {part:?}"))?;
            let hi: u64 = b
                .trim()
                .parse()
                .map_err(|_| format!("bad range end in {part:?}"))?;
            if lo > hi {
                return Err(format!("empty range {part:?}"));
            }
            out.extend(gradzeta_core::scan::primes_in(lo, hi));
        } else {
            let p: u64 = part.parse().map_err(|_| format!("bad prime {part:?}"))?;
            if !gradzeta_core::field::is_prime(p) {
                return Err(format!("{p} is not prime"));
            }
            out.push(p);
        }
    }
    out.sort_unstable();
    out.dedup();
    if out.is_empty() {
        return Err(format!("no primes in {s:?}"));
    }
    Ok(out)
}

pub fn parse_profile(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad profile entry {x:?}"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_lists() {
        assert_eq!(parse_primes("5..20").unwrap(), [5, 7, 11, 13, 17, 19]);
        assert_eq!(parse_primes("7,5,11..13").unwrap(), [5, 7, 11, 13]);
        assert!(parse_primes("9").is_err());
        assert!(parse_primes("8..10").is_err());
        assert!(parse_primes("20..5").is_err());
    }

    #[test]
    fn profiles() {
        assert_eq!(parse_profile("0, 0,1").unwrap(), [0, 0, 1]);
        assert!(parse_profile("0,x").is_err());
    }
}
