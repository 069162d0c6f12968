//! Command-line front end for the `rackinv` library.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rackinv::bundled::{self, TableExample};
use rackinv::homology::DEFAULT_SIZE_CAP;
use rackinv::table::{self, TableRow};
use rackinv::{
    Cochain2, CocycleBasis, Coefficients, Complex, Execution, HomologyError, InvariantError, NamedDiagram, Rack,
    RackComplex,
};

#[derive(Parser)]
#[command(name = "rackinv", version, about = "Rack homology, reduced 2-cocycles and cocycle link invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a rack file and report its size, rank and kink permutation.
    Rack {
        #[arg(long)]
        rack: PathBuf,
    },
    /// Homology of the rack complex, its degenerate subcomplex or the quotient.
    Homology {
        #[arg(long)]
        rack: PathBuf,
        #[arg(long)]
        degree: usize,
        /// R, ND, R/ND (or ND', R/ND' for the diagonal degeneracy).
        #[arg(long, default_value = "R")]
        complex: Complex,
        /// Coefficients in Z_m instead of Z.
        #[arg(long = "mod")]
        modulus: Option<u64>,
        /// Largest chain basis allowed.
        #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
        cap: usize,
    },
    /// Generators of the reduced 2-cocycles over Z_m.
    Cocycles {
        #[arg(long)]
        rack: PathBuf,
        #[arg(long = "mod")]
        modulus: u64,
        /// Also check this cocycle file against the module.
        #[arg(long)]
        cocycle: Option<PathBuf>,
    },
    /// Cocycle invariant of every link in a link file.
    Invariant {
        #[arg(long)]
        rack: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
        #[arg(long)]
        links: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Recompute the bundled tables and compare them with the reference values.
    Reproduce {
        /// Only this example (example22, example23, example24).
        #[arg(long)]
        example: Option<String>,
        /// Print the computed tables too.
        #[arg(long)]
        show: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct OutputArgs {
    /// Group links sharing a value, one line per value.
    #[arg(long)]
    group: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads; 1 runs sequentially. Defaults to all cores.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Tsv,
}

enum Failure {
    Usage(String),
    InvalidRack(String),
    SizeOverflow(String),
    NotReduced(String),
    Mismatch(usize),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::InvalidRack(_) => 2,
            Failure::SizeOverflow(_) => 3,
            Failure::NotReduced(_) => 4,
            Failure::Mismatch(_) => 5,
        }
    }
}

impl From<HomologyError> for Failure {
    fn from(e: HomologyError) -> Failure {
        match e {
            HomologyError::SizeOverflow { .. } | HomologyError::MatrixTooLarge { .. } => Failure::SizeOverflow(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<InvariantError> for Failure {
    fn from(e: InvariantError) -> Failure {
        match e {
            InvariantError::CocycleNotReduced(_) => Failure::NotReduced(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_rack(path: &Path) -> Result<Rack, Failure> {
    Rack::parse(&read(path)?).map_err(|e| Failure::InvalidRack(format!("{}: {e}", path.display())))
}

fn load_cocycle(path: &Path, rack: &Rack) -> Result<Cochain2, Failure> {
    Cochain2::parse_file(&read(path)?, rack.len()).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_links(path: &Path) -> Result<Vec<NamedDiagram>, Failure> {
    rackinv::parse_link_file(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Runs `f` with the requested parallelism.
fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce(Execution) -> T + Send) -> Result<T, Failure> {
    match jobs {
        Some(0) => Err(Failure::Usage("--jobs must be at least 1".into())),
        Some(1) => Ok(f(Execution::Sequential)),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Failure::Usage(e.to_string()))?;
            Ok(pool.install(|| f(Execution::best())))
        }
        None => Ok(f(Execution::best())),
    }
}

fn render(rows: &[TableRow], output: &OutputArgs) -> String {
    match (output.format, output.group) {
        (Format::Text, false) => table::format_text(rows),
        (Format::Text, true) => table::format_grouped(rows),
        (Format::Tsv, false) => table::format_tsv(rows),
        (Format::Tsv, true) => table::format_grouped_tsv(rows),
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Rack { rack } => {
            let r = load_rack(&rack)?;
            println!(
                "n={}, quandle={}, rank={}, pi={}",
                r.len(),
                if r.is_quandle() { "yes" } else { "no" },
                r.rank(),
                r.kink_cycles()
            );
        }
        Command::Homology { rack, degree, complex, modulus, cap } => {
            let r = load_rack(&rack)?;
            if degree == 0 {
                return Err(Failure::Usage("--degree must be at least 1".into()));
            }
            let coeffs = match modulus {
                None => Coefficients::Integers,
                Some(m) if m >= 2 => Coefficients::Modular(m),
                Some(m) => return Err(Failure::Usage(format!("--mod must be at least 2, got {m}"))),
            };
            let report = RackComplex::new(&r).with_cap(cap).homology(degree, complex, coeffs)?;
            println!(
                "H_{degree} = {}; rank ker={}, rank im={}",
                report.group, report.cycles_rank, report.boundaries_rank
            );
        }
        Command::Cocycles { rack, modulus, cocycle } => {
            let r = load_rack(&rack)?;
            let basis =
                CocycleBasis::enumerate(&r, modulus).map_err(|e| Failure::Usage(e.to_string()))?;
            let gens = basis.generators();
            if gens.is_empty() {
                println!("reduced 2-cocycles over Z_{modulus}: trivial");
            } else {
                println!("reduced 2-cocycles over Z_{modulus}: {} elements", basis.cocycle_count());
                for (i, g) in gens.iter().enumerate() {
                    println!("phi_{} = {g}", i + 1);
                }
                println!("reduced coboundaries: {}", basis.coboundary_count());
                println!("classes: {}", basis.class_count());
            }
            if let Some(path) = cocycle {
                let phi = load_cocycle(&path, &r)?;
                if phi.modulus() != modulus {
                    return Err(Failure::Usage(format!("cocycle is over Z_{}, not Z_{modulus}", phi.modulus())));
                }
                if basis.contains(&phi) {
                    println!("cocycle: reduced; class representative {}", basis.representative(&phi));
                } else {
                    return Err(Failure::NotReduced(format!("{} is not a reduced 2-cocycle", path.display())));
                }
            }
        }
        Command::Invariant { rack, cocycle, links, output } => {
            let r = load_rack(&rack)?;
            let phi = load_cocycle(&cocycle, &r)?;
            let links = load_links(&links)?;
            let rows = with_jobs(output.jobs, |exec| table::evaluate(&links, &r, &phi, exec))??;
            print!("{}", render(&rows, &output));
        }
        Command::Reproduce { example, show, output } => {
            let examples: Vec<TableExample> = match &example {
                None => bundled::TABLE_EXAMPLES.to_vec(),
                Some(name) => vec![TableExample::by_name(name)
                    .ok_or_else(|| Failure::Usage(format!("unknown example {name}")))?],
            };
            let links = bundled::all_links();
            let mut mismatches = 0;
            for ex in examples {
                let (r, phi) = (ex.rack(), ex.cocycle());
                let rows = with_jobs(output.jobs, |exec| table::evaluate(&links, &r, &phi, exec))??;
                let diff = ex.golden().diff(&rows);
                println!("{}: {} links, {} mismatches", ex.name, rows.len(), diff.len());
                for m in &diff {
                    println!("  {m}");
                }
                if show {
                    print!("{}", render(&rows, &output));
                }
                mismatches += diff.len();
            }
            if mismatches > 0 {
                return Err(Failure::Mismatch(mismatches));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Usage(m) | Failure::InvalidRack(m) | Failure::SizeOverflow(m) | Failure::NotReduced(m) => {
                    eprintln!("error: {m}")
                }
                Failure::Mismatch(n) => eprintln!("{n} entries differ from the reference tables"),
            }
            ExitCode::from(f.code())
        }
    }
}
