use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

use commands::Outcome;

#[derive(Parser, Debug)]
#[command(name = "polyreal", version, about = "Polyhedral realizations of B(infinity) for affine types A1, C1, A2, D2")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Affine family: A1, C1, A2 or D2.
    #[arg(long, global = true)]
    pub family: Option<String>,
    /// Number of vertices of the Dynkin diagram.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// One period of the sequence, comma separated (defaults to 1,2,...,n).
    #[arg(long, global = true, value_delimiter = ',')]
    pub word: Option<Vec<usize>>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the inequalities `L(T) >= 0` for one charge and one `s`.
    Inequalities {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        s: usize,
        /// Largest generator object, in boxes, unit cells or blocks.
        #[arg(long, default_value_t = 3)]
        bound: u32,
    },
    /// Run verification checks.
    Verify(VerifyArgs),
    /// Kashiwara operators on the lattice crystal.
    Crystal {
        #[command(subcommand)]
        action: CrystalAction,
    },
    /// Draw a diagram or wall given by flags or by JSON.
    Render(RenderArgs),
    /// List the generator objects of one charge up to a size bound.
    Enumerate {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        bound: u32,
        /// Also print the form of each object at this `s`.
        #[arg(long)]
        s: Option<usize>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    StepIdentities,
    Closure,
    Image,
    Positivity,
    Axioms,
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub check: Check,
    /// Charge for the closure check (all charges when omitted).
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub s: usize,
    /// Closure depth, or image depth for the axiom sample.
    #[arg(long, visible_alias = "dep", default_value_t = 4)]
    pub depth: usize,
    /// Largest entry sum in the image check.
    #[arg(long, visible_alias = "w", default_value_t = 3)]
    pub max_weight: usize,
    /// Generator size bound for the image check (default: max weight + 2).
    #[arg(long)]
    pub bound: Option<u32>,
    /// Largest `s` for the image and positivity checks (default: max weight + 1).
    #[arg(long)]
    pub max_s: Option<usize>,
    /// Largest diagram in the step-identity check.
    #[arg(long, default_value_t = 6)]
    pub max_size: u32,
    /// Largest wall, in half-units, in the step-identity check.
    #[arg(long, default_value_t = 8)]
    pub max_halves: u32,
}

#[derive(Subcommand, Debug)]
pub enum CrystalAction {
    /// Apply operators such as `f1 f2 e1` to the zero vector, left to right.
    Apply {
        #[arg(required = true, num_args = 1..)]
        ops: Vec<String>,
    },
    /// Every element reachable by at most `depth` operators `f_i`.
    Enumerate {
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderKind {
    Eyd,
    Reyd,
    Wall,
}

#[derive(Args, Debug)]
pub struct RenderArgs {
    /// Object type; omit when reading JSON.
    pub kind: Option<RenderKind>,
    /// Charge of a diagram, or ground of a wall.
    #[arg(long, alias = "charge", alias = "ground")]
    pub k: Option<usize>,
    /// Column values, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub ys: Vec<i64>,
    /// Leftmost stored column of a revised diagram.
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    pub t_lo: i64,
    /// Wall column heights in half-units, right to left.
    #[arg(long, value_delimiter = ',')]
    pub halves: Vec<u32>,
    /// Read a tagged generator from this JSON file (`-` for stdin).
    #[arg(long, conflicts_with = "kind")]
    pub from_json: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(outcome) => {
            let Outcome { text, json, code } = outcome;
            if cli.common.json {
                println!("{}", serde_json::to_string_pretty(&json).expect("serializable output"));
            } else {
                print!("{text}");
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
