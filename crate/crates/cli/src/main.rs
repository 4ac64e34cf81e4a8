use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use smale5_cli::commands::{self, parse_verdict, SeriesRanges, Span};
use smale5_cli::format::write_records;
use smale5_cli::{exit_code, Cache, Format};
use smale5_core::tables::audit_tables;
use smale5_core::{SeStatus, SearchFilters, SearchSpec, SmaleManifold, TorsionFilter, YyType};

/// Classify 5-dimensional links of weighted homogeneous hypersurface singularities.
#[derive(Parser)]
#[command(name = "smale5", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Worker threads for searches (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Result cache file (JSON lines); unset disables caching.
    #[arg(long, env = "SMALE5_CACHE", global = true)]
    cache: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify L(w; d) for the generic polynomial or an explicit support.
    Check {
        #[arg(short, long, value_delimiter = ',', required = true)]
        weights: Vec<u64>,
        #[arg(short, long)]
        degree: u64,
        /// Explicit monomials, e.g. "z0^5 + z1^3*z3".
        #[arg(long)]
        support: Option<String>,
    },
    /// Solve a standard Yau-Yu exponent system and classify the link.
    Solve {
        #[arg(short = 't', long = "type")]
        yy_type: YyType,
        #[arg(short, long = "exponents", value_delimiter = ',', required = true)]
        a: Vec<u64>,
    },
    /// Enumerate exponent boxes of standard types.
    Search(SearchArgs),
    /// Instantiate parametric series.
    Series {
        /// Family names (table1.row1 .. table1.row16, double.4m2) or "all".
        #[arg(long, value_delimiter = ',')]
        family: Vec<String>,
        #[arg(long, default_value = "1")]
        k: Span,
        #[arg(long, default_value = "1")]
        n: Span,
        #[arg(long, default_value = "1")]
        l: Span,
    },
    /// Audit the embedded tables against the engine.
    Tables {
        /// Exit with code 2 unless the mismatches are exactly the errata overlay.
        #[arg(long)]
        strict: bool,
    },
    /// List the Yau-Yu normal forms.
    Catalog,
    /// Genus of a quasi-smooth curve of degree d in P(w0,w1,w2).
    Genus {
        #[arg(short, long, value_delimiter = ',', required = true)]
        weights: Vec<u64>,
        #[arg(short, long)]
        degree: u64,
    },
}

#[derive(Args)]
struct SearchArgs {
    /// Types to search: Roman numerals, "standard" or "all".
    #[arg(short = 't', long = "type", value_delimiter = ',', default_value = "standard")]
    types: Vec<String>,
    /// Upper bound for every exponent slot not given explicitly.
    #[arg(long, default_value_t = 12)]
    bound: u64,
    /// Range for the first exponent: "5", "5..18" (inclusive) or "5..=18".
    #[arg(long)]
    a0: Option<Span>,
    /// Range for the second exponent.
    #[arg(long)]
    a1: Option<Span>,
    /// Range for the third exponent.
    #[arg(long)]
    a2: Option<Span>,
    /// Range for the fourth exponent.
    #[arg(long)]
    a3: Option<Span>,
    /// Keep links by whether H2 has torsion.
    #[arg(long, value_enum, default_value = "any")]
    torsion: TorsionArg,
    /// Keep one verdict: certified, obstructed or unknown.
    #[arg(long, value_parser = parse_verdict)]
    verdict: Option<SeStatus>,
    /// Manifold name such as "M∞#3M3" (Minf is accepted).
    #[arg(long)]
    manifold: Option<SmaleManifold>,
    /// Smallest index |w| - d to keep.
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    index_min: i64,
    /// Keep every index, including non-positive links.
    #[arg(long, conflicts_with_all = ["index_min", "index_max"])]
    any_index: bool,
    /// Largest index |w| - d to keep.
    #[arg(long, allow_negative_numbers = true)]
    index_max: Option<i64>,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum TorsionArg {
    Any,
    Trivial,
    Nontrivial,
}

impl SearchArgs {
    fn spec(&self, jobs: Option<usize>) -> Result<SearchSpec> {
        let slots = [self.a0, self.a1, self.a2, self.a3];
        let default = Span { lo: 2, hi: self.bound };
        Ok(SearchSpec {
            types: commands::parse_types(&self.types)?,
            bounds: slots.map(|s| {
                let s = s.unwrap_or(default);
                (s.lo, s.hi)
            }),
            filters: SearchFilters {
                torsion: match self.torsion {
                    TorsionArg::Any => TorsionFilter::Any,
                    TorsionArg::Trivial => TorsionFilter::Trivial,
                    TorsionArg::Nontrivial => TorsionFilter::Nontrivial,
                },
                verdict: self.verdict,
                manifold: self.manifold.clone(),
                index_min: (!self.any_index).then_some(self.index_min),
                index_max: self.index_max,
            },
            jobs,
        })
    }
}

fn run(cli: Cli) -> Result<()> {
    let mut cache = cli.cache.as_ref().map(Cache::open).transpose()?;
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let records = match &cli.command {
        Command::Check { weights, degree, support } => {
            let support = support.as_deref().map(commands::parse_support).transpose()?;
            let r = commands::check(commands::four(weights, "weights")?, *degree, support, cache.as_ref())?;
            eprintln!("{}", commands::summary(&r));
            vec![r]
        }
        Command::Solve { yy_type, a } => {
            let r = commands::solve(*yy_type, a, cache.as_ref())?;
            eprintln!("{}", commands::summary(&r));
            vec![r]
        }
        Command::Search(args) => commands::search(&args.spec(cli.jobs)?, cache.as_ref())?,
        Command::Series { family, k, n, l } => {
            commands::series(family, SeriesRanges { k: *k, n: *n, l: *l }, cache.as_ref())?
        }
        Command::Tables { strict } => {
            let report = audit_tables()?;
            commands::write_tables(&mut out, &report, cli.format)?;
            out.flush()?;
            if *strict {
                commands::check_errata(&report)?;
            }
            return Ok(());
        }
        Command::Genus { weights, degree } => {
            let w: [u64; 3] = weights
                .as_slice()
                .try_into()
                .map_err(|_| smale5_core::Error::Usage(format!("weights: expected 3 values, got {}", weights.len())))?;
            commands::write_genus(&mut out, w, *degree, cli.format)?;
            out.flush()?;
            return Ok(());
        }
        Command::Catalog => {
            commands::write_catalog(&mut out, cli.format)?;
            out.flush()?;
            return Ok(());
        }
    };
    write_records(&mut out, &records, cli.format)?;
    out.flush()?;
    if let Some(cache) = cache.as_mut() {
        cache.flush()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        // a closed stdout (`| head`) is not an error
        Err(e)
            if e.chain().any(|c| {
                c.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
            }) =>
        {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
