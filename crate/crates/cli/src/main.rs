use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod report;

use report::{Exit, RunReport};

#[derive(Parser)]
#[command(
    name = "pdpair",
    version,
    about = "Poincaré duality checks for finite simplicial pairs"
)]
struct Cli {
    /// Print a human-readable table instead of JSON
    #[arg(long, global = true)]
    summary: bool,

    /// Seed recorded in the report fingerprint
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Cap on cosets during coset enumeration
    #[arg(long, global = true, default_value_t = pdpair::group::DEFAULT_MAX_COSETS)]
    max_cosets: usize,

    /// Allow the expensive scenario parameters
    #[arg(long, global = true)]
    large: bool,

    /// Include wall-clock step timings (makes output run-dependent)
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

/// Selects a coefficient system on the total complex.
#[derive(Args, Clone, Debug, Default)]
pub struct SystemArgs {
    /// Local system file (rank, generator matrices, presentation hash)
    #[arg(long, conflicts_with_all = ["signs", "orientation"])]
    pub system: Option<PathBuf>,

    /// Rank-one system given by signs on the presentation generators, e.g. "1,-1"
    #[arg(long, allow_hyphen_values = true, conflicts_with = "orientation")]
    pub signs: Option<String>,

    /// Index into the list of orientation characters (0 is trivial)
    #[arg(long)]
    pub orientation: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Integer or twisted (co)homology of a complex or pair
    Homology {
        file: PathBuf,
        #[command(flatten)]
        system: SystemArgs,
        /// Use the subcomplex from `sub_facets` and compute relative groups
        #[arg(long)]
        relative: bool,
        /// Cohomology instead of homology
        #[arg(long)]
        cohomology: bool,
        /// Degree range such as "0..3" or "2"
        #[arg(long)]
        degrees: Option<String>,
    },
    /// Decide whether a pair satisfies duality for all local systems
    VerifyPair {
        file: PathBuf,
        /// Accept a disconnected total complex and decide it componentwise
        #[arg(long)]
        componentwise: bool,
        /// Fix the orientation character by generator signs
        #[arg(long, allow_hyphen_values = true)]
        signs: Option<String>,
        /// Fix the fundamental class from a class file
        #[arg(long)]
        class: Option<PathBuf>,
    },
    /// Check a triad (X; Y1, Y2) given by `sub_facets` and `sub2_facets`
    VerifyTriad { file: PathBuf },
    /// Search for a Thom class of a pair
    Thom {
        file: PathBuf,
        /// Degree to test; every degree up to the dimension when omitted
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Build a complex and write it in canonical form
    Construct {
        #[command(subcommand)]
        op: ConstructOp,
        /// Output file; standard output when omitted
        #[arg(long, short, global = true)]
        output: Option<PathBuf>,
    },
    /// Fundamental group data and finite-index subgroups
    Cover {
        file: PathBuf,
        /// List transitive actions of degree up to this index
        #[arg(long)]
        index: Option<usize>,
        /// Enumerate the whole group with the coset cap
        #[arg(long)]
        order: bool,
        /// Subgroup generators as a JSON list of words, e.g. "[[1,2],[-3]]"
        #[arg(long)]
        subgroup: Option<String>,
        /// Write the first table of this degree (or the subgroup table) here
        #[arg(long)]
        save_table: Option<PathBuf>,
        /// Degree of the table written by --save-table
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Run a standard example and compare with the recorded expectations
    Scenario {
        name: String,
        /// Sphere dimension for theorem-a
        #[arg(long)]
        n: Option<usize>,
    },
    /// Compare twisted homology of a product with the Künneth formula
    Kunneth {
        first: PathBuf,
        second: PathBuf,
        /// Signs on the first factor's generators
        #[arg(long, allow_hyphen_values = true)]
        signs_first: Option<String>,
        /// Signs on the second factor's generators
        #[arg(long, allow_hyphen_values = true)]
        signs_second: Option<String>,
        /// Use relative chains of each factor's pair
        #[arg(long)]
        relative: bool,
    },
}

#[derive(Subcommand)]
enum ConstructOp {
    /// Cone on a complex; the pair (CK, K)
    Cone { file: PathBuf },
    /// Product of two complexes or pairs
    Product { first: PathBuf, second: PathBuf },
    /// The double X ∪_Y X of a pair
    Double { file: PathBuf },
    /// Glue two pairs along an isomorphism of their subcomplexes
    Glue {
        first: PathBuf,
        second: PathBuf,
        /// JSON vertex map from the first sub to the second; identity when omitted
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Remove a top simplex: (X minus an open facet, its boundary)
    Puncture {
        file: PathBuf,
        /// Index of the top simplex to remove
        #[arg(long)]
        facet: Option<usize>,
    },
    /// Finite cover determined by a coset table file
    Cover {
        file: PathBuf,
        #[arg(long)]
        table: PathBuf,
    },
    /// A built-in complex: poincare-sphere, rp3, rp2, torus, klein-bottle, circle, mobius-band, simplex-N, sphere-N
    Library { name: String },
}

pub struct Globals {
    pub seed: u64,
    pub max_cosets: usize,
    pub large: bool,
    pub timing: bool,
}

fn run(cli: &Cli) -> Result<RunReport, String> {
    let g = Globals {
        seed: cli.seed,
        max_cosets: cli.max_cosets,
        large: cli.large,
        timing: cli.timing,
    };
    match &cli.command {
        Command::Homology {
            file,
            system,
            relative,
            cohomology,
            degrees,
        } => commands::homology(&g, file, system, *relative, *cohomology, degrees.as_deref()),
        Command::VerifyPair {
            file,
            componentwise,
            signs,
            class,
        } => commands::verify_pair(&g, file, *componentwise, signs.as_deref(), class.as_deref()),
        Command::VerifyTriad { file } => commands::verify_triad(&g, file),
        Command::Thom { file, degree } => commands::thom(&g, file, *degree),
        Command::Construct { op, output } => {
            let op = match op {
                ConstructOp::Cone { file } => commands::Construction::Cone(file),
                ConstructOp::Product { first, second } => commands::Construction::Product(first, second),
                ConstructOp::Double { file } => commands::Construction::Double(file),
                ConstructOp::Glue { first, second, map } => commands::Construction::Glue(first, second, map.as_deref()),
                ConstructOp::Puncture { file, facet } => commands::Construction::Puncture(file, *facet),
                ConstructOp::Cover { file, table } => commands::Construction::Cover(file, table),
                ConstructOp::Library { name } => commands::Construction::Library(name),
            };
            commands::construct(&g, op, output.as_deref())
        }
        Command::Cover {
            file,
            index,
            order,
            subgroup,
            save_table,
            degree,
        } => commands::cover(
            &g,
            file,
            *index,
            *order,
            subgroup.as_deref(),
            save_table.as_deref(),
            *degree,
        ),
        Command::Scenario { name, n } => commands::scenario(&g, name, *n),
        Command::Kunneth {
            first,
            second,
            signs_first,
            signs_second,
            relative,
        } => commands::kunneth(
            &g,
            first,
            second,
            signs_first.as_deref(),
            signs_second.as_deref(),
            *relative,
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.summary {
                println!("{}", report.summary);
            } else {
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            }
            ExitCode::from(report.exit.code() as u8)
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(Exit::Input.code() as u8)
        }
    }
}
