//! Command-line front end: constructions, bounds, families, the optimizer,
//! the exact oracle and the verification battery.

use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use andrasfai::constructions::{andrasfai as andrasfai_graph, vega, vega_regular_blowup};
use andrasfai::extremal::{format_rational, g_k, g_min, pieces_containing};
use andrasfai::families::{classify_extremal, family_g, family_h};
use andrasfai::optimizer::{max_blowup_edges_with, OptimizerConfig, DEFAULT_NODE_BUDGET};
use andrasfai::oracle::{exact_ex_with, Mode, OracleConfig, OracleDb, OracleRecord, OracleTable, MAX_ORDER};
use andrasfai::verify::{self, Suite};
use andrasfai::{Error, Graph};
use clap::{Parser, Subcommand, ValueEnum};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(name = "andrasfai", version, about = "Triangle-free graphs with bounded independence number")]
struct Cli {
    /// Worker threads for the oracle and optimizer (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a construction as graph6.
    Gen {
        #[command(subcommand)]
        which: GenKind,
    },
    /// Evaluate g_k(n, s).
    Gk {
        n: u64,
        s: u64,
        /// Single piece `k`.
        #[arg(long, conflicts_with = "min")]
        k: Option<u64>,
        /// Minimum over all pieces with its argmin.
        #[arg(long)]
        min: bool,
    },
    /// Members of an extremal family.
    Family {
        family: FamilyArg,
        n: u64,
        s: u64,
        k: u64,
        /// Write `.g6` files and JSON sidecars here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximise the edge count over blow-ups of a base graph.
    Optimize {
        /// `gamma<k>`, `vega<i><mu><nu>`, a graph6 string or `-` for stdin.
        base: String,
        n: u64,
        s: u64,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        node_budget: u64,
    },
    /// Exact ex(n, s).
    Oracle {
        n: usize,
        s: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Full)]
        mode: ModeArg,
        #[arg(long, env = "ANDRASFAI_DB")]
        db: Option<PathBuf>,
    },
    /// Compare ex(n, s) with g_min(n, s) for every n/3 < s <= n.
    Scan {
        n: usize,
        #[arg(long, env = "ANDRASFAI_DB")]
        db: Option<PathBuf>,
        /// Comma-separated output.
        #[arg(long)]
        csv: bool,
    },
    /// Run the fact battery; exits 1 on any failure.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
    /// Family membership of an extremal candidate.
    Classify {
        /// graph6 string or `-` for stdin.
        graph: String,
        n: u64,
        s: u64,
    },
}

#[derive(Subcommand)]
enum GenKind {
    Andrasfai {
        k: usize,
        #[arg(long)]
        props: bool,
    },
    Vega {
        i: usize,
        mu: u8,
        nu: u8,
        #[arg(long)]
        props: bool,
    },
    VegaBlowup {
        i: usize,
        mu: u8,
        nu: u8,
        #[arg(long)]
        props: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    G,
    H,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Full,
    Structured,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Full => Mode::Full,
            ModeArg::Structured => Mode::Structured,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Facts,
    Families,
    Windows,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Facts => Suite::Facts,
            SuiteArg::Families => Suite::Families,
            SuiteArg::Windows => Suite::Windows,
            SuiteArg::All => Suite::All,
        }
    }
}

enum Failure {
    Lib(Error),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        Failure::Lib(e.into())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(EXIT_FAILURE),
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::ResourceLimit(_) => EXIT_RESOURCE,
                Error::Io(_) | Error::Infeasible(_) => EXIT_FAILURE,
                _ => EXIT_USAGE,
            })
        }
    }
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Gen { which } => gen(which),
        Command::Gk { n, s, k, min } => gk(n, s, k, min),
        Command::Family { family, n, s, k, out } => emit_family(family, n, s, k, out.as_deref()),
        Command::Optimize { base, n, s, node_budget } => optimize(&base, n, s, node_budget),
        Command::Oracle { n, s, mode, db } => oracle(n, s, mode.into(), db.as_deref()),
        Command::Scan { n, db, csv } => scan(n, db.as_deref(), csv),
        Command::Verify { suite } => {
            let report = verify::run(suite.into());
            print!("{}", report.render());
            if report.ok() {
                Ok(())
            } else {
                Err(Failure::Verify)
            }
        }
        Command::Classify { graph, n, s } => {
            let g = read_graph(&graph)?;
            let c = classify_extremal(&g, n, s);
            println!("{}", c.verdict());
            println!("{}", serde_json::to_string(&c).expect("classification serializes"));
            Ok(())
        }
    }
}

fn gen(which: GenKind) -> Outcome {
    let (g, props) = match which {
        GenKind::Andrasfai { k, props } => (andrasfai_graph(k)?, props),
        GenKind::Vega { i, mu, nu, props } => (vega(i, mu, nu)?, props),
        GenKind::VegaBlowup { i, mu, nu, props } => (vega_regular_blowup(i, mu, nu)?, props),
    };
    println!("{}", g.to_graph6());
    if props {
        println!("{}", properties(&g));
    }
    Ok(())
}

fn properties(g: &Graph) -> String {
    let regular = g.regularity().map_or_else(|| "no".to_string(), |d| d.to_string());
    format!(
        "n={} e={} regular={} alpha={} chi={} triangle_free={}",
        g.order(),
        g.edge_count(),
        regular,
        g.independence_number(),
        g.chromatic_number(),
        g.is_triangle_free()
    )
}

fn gk(n: u64, s: u64, k: Option<u64>, min: bool) -> Outcome {
    if let Some(k) = k {
        println!("{}", format_rational(&g_k(n, s, k)));
    } else if min {
        let m = g_min(n, s)?;
        println!("{} (k={})", format_rational(&m.value), m.argmin);
    } else {
        let pieces = pieces_containing(n, s);
        if pieces.is_empty() {
            let m = g_min(n, s)?;
            println!("{} (k={})", format_rational(&m.value), m.argmin);
        }
        for k in pieces {
            println!("{} (k={k})", format_rational(&g_k(n, s, k)));
        }
    }
    Ok(())
}

fn emit_family(which: FamilyArg, n: u64, s: u64, k: u64, out: Option<&Path>) -> Outcome {
    let (tag, members) = match which {
        FamilyArg::G => ("g", family_g(n, s, k)),
        FamilyArg::H => ("h", family_h(n, s, k)),
    };
    if let Some(dir) = out {
        fs::create_dir_all(dir)?;
    }
    for (idx, m) in members.iter().enumerate() {
        let g6 = m.graph.to_graph6();
        println!("{g6}");
        if let Some(dir) = out {
            let stem = format!("{tag}_{n}_{s}_{k}_{idx}");
            fs::write(dir.join(format!("{stem}.g6")), format!("{g6}\n"))?;
            let sidecar = serde_json::to_string_pretty(&m.sidecar()).expect("sidecar serializes");
            fs::write(dir.join(format!("{stem}.json")), format!("{sidecar}\n"))?;
        }
    }
    Ok(())
}

/// `gamma<k>`, `vega<i><mu><nu>`, or a graph6 string.
fn named_base(name: &str) -> Result<Graph, Error> {
    if let Some(k) = name.strip_prefix("gamma") {
        let k = k
            .parse()
            .map_err(|_| Error::BadParams(format!("bad base `{name}`")))?;
        return andrasfai_graph(k);
    }
    if let Some(rest) = name.strip_prefix("vega") {
        let digits = rest.as_bytes();
        if digits.len() >= 3 && digits.iter().all(u8::is_ascii_digit) {
            let (i, flags) = rest.split_at(rest.len() - 2);
            let i = i.parse().map_err(|_| Error::BadParams(format!("bad base `{name}`")))?;
            let mu = flags.as_bytes()[0] - b'0';
            let nu = flags.as_bytes()[1] - b'0';
            return vega(i, mu, nu);
        }
        return Err(Error::BadParams(format!("bad base `{name}`, expected vega<i><mu><nu>")));
    }
    Graph::from_graph6(name)
}

fn read_graph(arg: &str) -> Result<Graph, Error> {
    if arg == "-" {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf)?;
        let line = buf.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
        Graph::from_graph6(line.trim())
    } else {
        named_base(arg)
    }
}

fn optimize(base: &str, n: u64, s: u64, node_budget: u64) -> Outcome {
    let g = read_graph(base)?;
    let report = max_blowup_edges_with(&g, n, s, &OptimizerConfig { node_budget })?;
    println!("{}", serde_json::to_string(&report).expect("report serializes"));
    Ok(())
}

fn oracle(n: usize, s: usize, mode: Mode, db: Option<&Path>) -> Outcome {
    let config = OracleConfig::default();
    let report = match db {
        Some(path) => OracleDb::open(path)?.exact_ex(n, s, mode, &config)?,
        None => exact_ex_with(n, s, mode, &config)?,
    };
    println!("{}", serde_json::to_string(&report).expect("report serializes"));
    Ok(())
}

struct Row {
    s: usize,
    ex: Option<i64>,
    g_min: String,
    argmin: u64,
    status: &'static str,
}

fn scan(n: usize, db: Option<&Path>, csv: bool) -> Outcome {
    let mut db = db.map(OracleDb::open).transpose()?;
    let range: Vec<usize> = (1..=n).filter(|&s| 3 * s > n).collect();
    let mut table: Option<OracleTable> = None;
    let mut rows = Vec::new();
    for s in range {
        let m = g_min(n as u64, s as u64)?;
        let cached = db.as_ref().and_then(|d| d.get(n, s, Mode::Full)).map(|r| r.ex);
        let ex = match cached {
            Some(v) => Some(v),
            None if n <= MAX_ORDER => {
                if table.is_none() {
                    table = Some(OracleTable::build(n)?);
                }
                let report = table.as_ref().expect("built above").exact_ex(s)?;
                if let Some(d) = db.as_mut() {
                    d.append(OracleRecord::from_report(n, s, Mode::Full, &report))?;
                }
                Some(report.optimum)
            }
            None => None,
        };
        let status = match ex {
            None => "ORACLE_SKIPPED",
            Some(v) if andrasfai::Rational::from(v as i128) == m.value => "MATCH",
            Some(_) => "MISMATCH",
        };
        rows.push(Row {
            s,
            ex,
            g_min: format_rational(&m.value),
            argmin: m.argmin,
            status,
        });
    }
    if csv {
        println!("n,s,ex,g_min,argmin_k,status");
        for r in &rows {
            let ex = r.ex.map_or_else(String::new, |v| v.to_string());
            println!("{n},{},{ex},{},{},{}", r.s, r.g_min, r.argmin, r.status);
        }
    } else {
        println!("{:>4} {:>4} {:>8} {:>8} {:>8}  status", "n", "s", "ex", "g_min", "argmin_k");
        for r in &rows {
            let ex = r.ex.map_or_else(|| "-".to_string(), |v| v.to_string());
            println!("{n:>4} {:>4} {ex:>8} {:>8} {:>8}  {}", r.s, r.g_min, r.argmin, r.status);
        }
    }
    Ok(())
}
