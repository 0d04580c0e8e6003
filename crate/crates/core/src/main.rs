use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use junior_ghost::battery::run_battery;
use junior_ghost::constructions::{construct_prime_family, lift_witness, preset};
use junior_ghost::families::{GraphFamily, DEFAULT_GENUS_CAP};
use junior_ghost::io::{parse_graph, WitnessDocument};
use junior_ghost::report::{
    classification_json, classification_text, oracle_report, sieve_report, witness_text, witnesses_json, witnesses_text,
};
use junior_ghost::search::{classify_level, search_graph, SearchConfig, SearchError};
use junior_ghost::table::{OdotTable, TableFormat};
use junior_ghost::{GhostWitness, Level, StableGraph, SupportPolicy};

const EXIT_FAILURE: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_INCOMPLETE: u8 = 3;

#[derive(Parser)]
#[command(name = "junior-ghost", version, about = "Junior ghost automorphisms on decorated stable graphs over Z/l")]
struct Cli {
    /// Worker threads for the search (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFmt {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Support {
    Full,
    Any,
}

impl From<Support> for SupportPolicy {
    fn from(s: Support) -> Self {
        match s {
            Support::Full => SupportPolicy::Full,
            Support::Any => SupportPolicy::Any,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Banana,
    AllStable,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphSource {
    /// Graph file, line records or JSON.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Two genus-0 vertices joined by K edges.
    #[arg(long)]
    banana: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the multiplication table of the twist action at one level.
    Table {
        #[arg(long)]
        level: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: TableFmt,
    },
    /// Search one graph for junior ghosts.
    Search {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        level: u64,
        #[arg(long, value_enum, default_value = "full")]
        support: Support,
        /// Report every witness instead of the first.
        #[arg(long)]
        all: bool,
        /// With --all, keep one witness per graph-symmetry class.
        #[arg(long)]
        dedupe: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Exit with status 1 if nothing is found.
        #[arg(long)]
        expect_witness: bool,
    },
    /// Smallest edge count carrying a junior ghost, per graph family.
    Classify {
        #[arg(long)]
        level: u64,
        #[arg(long)]
        max_edges: usize,
        #[arg(long, value_enum, default_value = "banana")]
        family: Family,
        #[arg(long, default_value_t = DEFAULT_GENUS_CAP)]
        genus_cap: u32,
        #[arg(long, value_enum, default_value = "full")]
        support: Support,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Theta-graph witness for a prime level above 3.
    Family {
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 1)]
        n: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Built-in witness: l8, l9 or l12codim4.
    Preset {
        #[arg(long)]
        name: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Lift a witness document from level l to level k*l.
    Lift {
        #[arg(long)]
        witness: PathBuf,
        #[arg(long)]
        k: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Candidate twist multisets on the theta graph and what survives.
    Sieve {
        #[arg(long)]
        level: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Cross-check the circuit test for coboundaries against brute force.
    Oracle {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        level: u64,
        /// Sample this many cochains instead of enumerating all of them.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the whole reproduction battery.
    VerifyPaper {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

enum Failure {
    Invalid(String),
    Incomplete(String),
    Failed(String),
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::CapExceeded { .. } => Failure::Incomplete(e.to_string()),
            SearchError::Inconsistent(_) => Failure::Failed(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure::Invalid(e.to_string())
}

fn level(l: u64) -> Result<Level, Failure> {
    Level::new(l).map_err(invalid)
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<StableGraph, Failure> {
    parse_graph(&read(path)?).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn render_one(w: &GhostWitness, format: Format) -> String {
    match format {
        Format::Json => WitnessDocument::from_witness(w).to_json(),
        Format::Text => witness_text(w),
    }
}

/// Output on success, or a failure with its exit status. A run can also
/// print output and still fail (battery items, missing expected witness).
fn run(cli: Cli) -> Result<(String, u8), Failure> {
    let config = SearchConfig::default();
    let out = match cli.command {
        Command::Table { level: l, format } => {
            let f = match format {
                TableFmt::Text => TableFormat::Text,
                TableFmt::Csv => TableFormat::Csv,
                TableFmt::Json => TableFormat::Json,
            };
            OdotTable::compute(level(l)?).render(f)
        }
        Command::Search {
            source,
            level: l,
            support,
            all,
            dedupe,
            format,
            expect_witness,
        } => {
            let graph = match (source.graph, source.banana) {
                (Some(p), _) => load_graph(&p)?,
                (None, Some(k)) if k >= 1 => StableGraph::banana(k),
                _ => return Err(Failure::Invalid("--banana needs at least one edge".into())),
            };
            let mut config = config.with_support(support.into());
            config.stop_at_first = !all;
            config.dedupe_by_symmetry = dedupe;
            let found = search_graph(&graph, level(l)?, &config)?;
            let out = match format {
                Format::Json => witnesses_json(&found),
                Format::Text => witnesses_text(&found),
            };
            let code = if expect_witness && found.is_empty() { EXIT_FAILURE } else { 0 };
            return Ok((out, code));
        }
        Command::Classify {
            level: l,
            max_edges,
            family,
            genus_cap,
            support,
            format,
        } => {
            let family = match family {
                Family::Banana => GraphFamily::Banana,
                Family::AllStable => GraphFamily::AllStable { genus_cap },
            };
            let c = classify_level(level(l)?, max_edges, &family, &config.with_support(support.into()))?;
            let out = match format {
                Format::Json => classification_json(&c),
                Format::Text => classification_text(&c),
            };
            let code = if c.minimal == junior_ghost::search::MinimalCodimension::Unresolved { EXIT_INCOMPLETE } else { 0 };
            return Ok((out, code));
        }
        Command::Family { prime, n, format } => render_one(&construct_prime_family(prime, n)?, format),
        Command::Preset { name, format } => render_one(&preset(&name)?.witness, format),
        Command::Lift { witness, k, format } => {
            let doc = WitnessDocument::parse(&read(&witness)?).map_err(invalid)?;
            let w = doc.verify().map_err(invalid)?;
            render_one(&lift_witness(&w, k)?, format)
        }
        Command::Sieve { level: l, format } => {
            let r = sieve_report(level(l)?);
            match format {
                Format::Json => r.json(),
                Format::Text => r.text(),
            }
        }
        Command::Oracle {
            graph,
            level: l,
            samples,
            format,
        } => {
            let g = load_graph(&graph)?;
            let r = oracle_report(&g, level(l)?, samples).map_err(|e| Failure::Incomplete(e.to_string()))?;
            let code = if r.disagreements.is_empty() { 0 } else { EXIT_FAILURE };
            let out = match format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&r).expect("serializes");
                    s.push('\n');
                    s
                }
                Format::Text => r.text(),
            };
            return Ok((out, code));
        }
        Command::VerifyPaper { format } => {
            let r = run_battery();
            let out = match format {
                Format::Json => r.json(),
                Format::Text => r.text(),
            };
            return Ok((out, if r.all_pass() { 0 } else { EXIT_FAILURE }));
        }
    };
    Ok((out, 0))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INVALID);
        }
    }
    match run(cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            let (msg, code) = match f {
                Failure::Invalid(m) => (m, EXIT_INVALID),
                Failure::Incomplete(m) => (m, EXIT_INCOMPLETE),
                Failure::Failed(m) => (m, EXIT_FAILURE),
            };
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
