//! Command-line grammar.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "qzero",
    about = "q-series entire functions: evaluation, certified zeros, PF tests, identity checks",
    version
)]
pub struct Cli {
    /// Output decimal digits (env QZERO_DIGITS overrides the default of 50)
    #[arg(long, global = true)]
    pub digits: Option<u32>,

    /// Extra working digits on top of the output digits
    #[arg(long, global = true, default_value_t = 20)]
    pub guard: u32,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write output to this path instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum HalfAxisArg {
    Negative,
    Positive,
}

#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    /// Family: aq | mixed | hyper | ratio | rs | sw
    #[arg(long)]
    pub family: String,

    /// alpha (decimal string)
    #[arg(long)]
    pub alpha: Option<String>,

    /// a parameter: scalar for aq, comma list for ratio
    #[arg(long)]
    pub a: Option<String>,

    /// b parameter list for ratio (comma separated)
    #[arg(long)]
    pub b: Option<String>,

    /// q (decimal string in (0,1))
    #[arg(long)]
    pub q: Option<String>,

    /// x parameter (rs / sw)
    #[arg(long)]
    pub x: Option<String>,

    /// y parameter (rs / sw)
    #[arg(long)]
    pub y: Option<String>,

    /// l list (mixed / hyper), comma separated integers >= 2
    #[arg(long)]
    pub l: Option<String>,

    /// q_j list (mixed), comma separated
    #[arg(long)]
    pub qj: Option<String>,

    /// nu list (mixed / hyper), comma separated
    #[arg(long)]
    pub nu: Option<String>,

    /// q_r list (mixed), comma separated
    #[arg(long)]
    pub qr: Option<String>,

    /// start index K (ratio)
    #[arg(long)]
    pub start: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate the family's entire function at a point
    Eval {
        #[command(flatten)]
        family: FamilyArgs,
        /// evaluation point, "re" or "re,im"
        #[arg(long)]
        z: String,
        /// absolute error target (default 1e-30)
        #[arg(long)]
        eps: Option<String>,
    },
    /// Certify zeros of the family in a disk (axis confinement report)
    Zeros {
        #[command(flatten)]
        family: FamilyArgs,
        /// disk radius; omitted means "enclose --count zeros"
        #[arg(long)]
        radius: Option<String>,
        /// number of zeros the disk should enclose (default 6)
        #[arg(long, default_value_t = 6)]
        count: usize,
        #[arg(long, value_enum, default_value_t = HalfAxisArg::Negative)]
        half: HalfAxisArg,
        #[arg(long)]
        eps: Option<String>,
    },
    /// Test a sequence (JSON array of decimal strings) for the PF property
    Pfcheck {
        /// JSON file with an array of decimal strings
        #[arg(long)]
        seq: PathBuf,
        #[arg(long, default_value_t = 12)]
        window: usize,
        #[arg(long, default_value_t = 4)]
        order: usize,
        /// minor tolerance for the float path (default 10^-(digits-10))
        #[arg(long)]
        tol: Option<String>,
        /// use pivoted float elimination instead of exact rational minors
        #[arg(long, default_value_t = false)]
        float: bool,
        /// cross-check with the nonpositive-root oracle
        #[arg(long, default_value_t = false)]
        roots: bool,
    },
    /// Check one identity
    Identity {
        /// q-binomial | collapse | rs-gf | sw-gf | aq-special | hopital |
        /// pochhammer | hn-bound
        #[arg(long)]
        name: String,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        y: Option<String>,
        #[arg(long)]
        q: Option<String>,
        #[arg(long)]
        z: Option<String>,
        #[arg(long)]
        t: Option<String>,
        #[arg(long)]
        l: Option<u32>,
        #[arg(long)]
        nu: Option<String>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        j: Option<u32>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        eps: Option<String>,
    },
    /// Run a named verification suite
    Verify {
        /// t1i | t1ii | t1iii | t2 | tt1-rs | tt1-sw | klv-threshold |
        /// identities-all | pf-all | order-all
        #[arg(long, alias = "suite")]
        theorem: String,
        /// single-instance override for t1i: l
        #[arg(long)]
        l: Option<u32>,
        /// single-instance override: alpha
        #[arg(long)]
        alpha: Option<String>,
        /// single-instance override: q
        #[arg(long)]
        q: Option<String>,
        /// zeros to certify in single-instance mode
        #[arg(long)]
        zeros: Option<usize>,
    },
    /// Estimate the entire-function order from a coefficient window
    Order {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 500)]
        kmax: usize,
    },
}
