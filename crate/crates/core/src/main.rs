use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgAction, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hopfgal::catalog::{
    candidates, catalog_for_degree, enumerate_transitive, import_gap, load_catalog,
    validate_cached, validate_catalog, write_catalog,
};
use hopfgal::report::{list_structures, oracle_degree, run_degree, DegreeSummary, RunOptions, StructureRow};
use hopfgal::twop::{lemma_suite, twop2_suite, twopn_suite, verify_corollary_table, SuiteReport};
use hopfgal::Error;

#[derive(Parser)]
#[command(name = "hopfgal", version, about = "Hopf Galois structures on separable extensions of small degree")]
struct Cli {
    /// Catalog file, or directory of trans<g>.cat files.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Give up after this many seconds (exit code 3).
    #[arg(long, global = true)]
    time_budget: Option<f64>,
    /// Forbid randomized shortcuts.
    #[arg(long, global = true, default_value_t = true, action = ArgAction::Set)]
    seedless: bool,
    /// Include wall time in table output.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Transitive group catalogs.
    Catalog {
        #[command(subcommand)]
        action: CatalogCmd,
    },
    /// List the structures of a degree, one entry or one type.
    Hgs {
        #[arg(long)]
        degree: usize,
        /// Catalog index k of gTk.
        #[arg(long)]
        group: Option<usize>,
        /// Type label such as C3xC6 or D2p2.
        #[arg(long = "type")]
        type_label: Option<String>,
    },
    /// Summary row for a degree.
    Table {
        #[arg(long)]
        degree: usize,
        /// Include per-group detail in JSON output.
        #[arg(long)]
        detail: bool,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Primes to check (default 3).
        #[arg(long = "prime")]
        primes: Vec<u64>,
        /// Exponents n for the lemma suite (default 2..=6).
        #[arg(long = "n")]
        exponents: Vec<u32>,
        /// Corollary rows (0-based) to leave out.
        #[arg(long = "skip-row")]
        skip_rows: Vec<usize>,
    },
    /// Compare the holomorph search against direct enumeration.
    Oracle {
        #[arg(long)]
        degree: usize,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// Enumerate transitive groups of degree at most 8 and print the catalog.
    Enumerate {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Load the catalog that would be used for a degree and summarize it.
    Load {
        #[arg(long)]
        degree: usize,
    },
    /// Check orders, transitivity and pairwise non-conjugacy.
    Validate {
        #[arg(long)]
        degree: usize,
        /// Decide every tie by a conjugacy search.
        #[arg(long)]
        full: bool,
        /// Cache file keyed by catalog digest.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Convert a GAP transitive-groups library file.
    ImportGap {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Lemma,
    #[value(name = "2pn")]
    TwoPn,
    #[value(name = "2p2")]
    TwoP2,
    Corollary,
}

enum Outcome {
    Ok,
    Mismatch,
    ResourceCap,
}

fn exit_for_error(e: &Error) -> u8 {
    match e {
        e if e.is_resource_cap() => 3,
        Error::Parse(_)
        | Error::Catalog { .. }
        | Error::MissingCatalog(_)
        | Error::UnknownType { .. }
        | Error::UnsupportedOrder(_)
        | Error::Unsupported(_)
        | Error::InvalidPrime(_)
        | Error::Io(_) => 2,
        _ => 1,
    }
}

fn json<T: Serialize>(x: &T) -> Result<String, Error> {
    serde_json::to_string_pretty(x).map_err(|e| Error::Parse(e.to_string()))
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => Ok(std::fs::write(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn print_summary(s: &DegreeSummary, fmt: Format) -> Result<(), Error> {
    match fmt {
        Format::Json => println!("{}", json(s)?),
        Format::Csv => {
            println!("{}", DegreeSummary::CSV_HEADER);
            println!("{}", s.csv_row());
        }
        Format::Text => {
            let head = DegreeSummary::CSV_HEADER.split(',').collect::<Vec<_>>();
            let mut vals = vec![s.degree.to_string()];
            vals.extend(s.row().iter().map(ToString::to_string));
            let w: Vec<usize> = head.iter().zip(&vals).map(|(h, v)| h.len().max(v.len())).collect();
            let line = |cells: &[String]| {
                cells
                    .iter()
                    .zip(&w)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            println!("{}", line(&head.iter().map(|h| h.to_string()).collect::<Vec<_>>()));
            println!("{}", line(&vals));
            if let Some(t) = s.wall_time_seconds {
                println!("wall time {t:.2}s");
            }
        }
    }
    Ok(())
}

fn print_structures(rows: &[StructureRow], fmt: Format) -> Result<(), Error> {
    match fmt {
        Format::Json => println!("{}", json(&rows)?),
        Format::Csv => {
            println!("{}", StructureRow::CSV_HEADER);
            for r in rows {
                println!("{}", r.csv_row());
            }
        }
        Format::Text => {
            for r in rows {
                let mut flags = Vec::new();
                if r.almost_classical {
                    flags.push("a-c".to_string());
                }
                if r.bijective_corr {
                    flags.push("bc".to_string());
                }
                if let Some(c) = r.class_id {
                    flags.push(format!("class {c}"));
                }
                println!("{} {} [{}] {}", r.group, r.type_label, flags.join(", "), r.generators.join(" "));
            }
            println!("{} structures", rows.len());
        }
    }
    Ok(())
}

fn print_suite(r: &SuiteReport, fmt: Format) -> Result<Outcome, Error> {
    match fmt {
        Format::Json => println!("{}", json(r)?),
        Format::Csv => {
            println!("check,expected,actual,pass");
            for c in &r.checks {
                println!("\"{}\",{},{},{}", c.name, c.expected, c.actual, c.pass);
            }
        }
        Format::Text => {
            for c in &r.checks {
                let tag = if c.pass { "ok  " } else { "FAIL" };
                println!("{tag} {} (expected {}, got {})", c.name, c.expected, c.actual);
            }
            for s in &r.skipped {
                println!("skip {s}");
            }
            println!("suite {}: {}", r.suite, if r.pass { "pass" } else { "fail" });
        }
    }
    Ok(if !r.pass {
        Outcome::Mismatch
    } else if !r.skipped.is_empty() {
        Outcome::ResourceCap
    } else {
        Outcome::Ok
    })
}

#[derive(Serialize)]
struct CatalogSummary {
    degree: usize,
    entries: usize,
    enumerated: bool,
    candidates: usize,
    holomorph_orders: Vec<(String, u128)>,
}

fn run_catalog(cli: &Cli, action: &CatalogCmd, fmt: Format) -> Result<Outcome, Error> {
    match action {
        CatalogCmd::Enumerate { degree, out } => {
            let cat = enumerate_transitive(*degree)?;
            let header = format!("transitive groups of degree {degree}, enumerated up to conjugacy");
            write_or_print(out.as_deref(), &write_catalog(&cat, &[&header]))?;
        }
        CatalogCmd::Load { degree } => {
            let cat = catalog_for_degree(*degree, cli.catalog.as_deref())?;
            let cand = candidates(*degree, &cat)?;
            let s = CatalogSummary {
                degree: *degree,
                entries: cat.entries.len(),
                enumerated: cat.local,
                candidates: cand.max_count,
                holomorph_orders: cand.hol_orders,
            };
            match fmt {
                Format::Json => println!("{}", json(&s)?),
                Format::Csv => println!("{},{},{}", s.degree, s.entries, s.candidates),
                Format::Text => {
                    println!("degree {}: {} transitive groups, {} candidates", s.degree, s.entries, s.candidates);
                    for (l, o) in &s.holomorph_orders {
                        println!("  |Hol({l})| = {o}");
                    }
                }
            }
        }
        CatalogCmd::Validate { degree, full, cache } => {
            let cat = catalog_for_degree(*degree, cli.catalog.as_deref())?;
            let r = match cache {
                Some(p) => validate_cached(&cat, *full, p)?,
                None => validate_catalog(&cat, *full)?,
            };
            match fmt {
                Format::Json => println!("{}", json(&r)?),
                _ => {
                    println!(
                        "degree {}: {} entries, orders {}, transitivity {}, {} pairs by invariants, {} by search, {} unresolved",
                        r.degree,
                        r.entries,
                        if r.orders_ok { "ok" } else { "BAD" },
                        if r.transitive_ok { "ok" } else { "BAD" },
                        r.pairs_by_invariant,
                        r.pairs_searched,
                        r.unresolved.len()
                    );
                    println!("digest {}", r.digest);
                }
            }
            if !(r.orders_ok && r.transitive_ok) {
                return Ok(Outcome::Mismatch);
            }
        }
        CatalogCmd::ImportGap { degree, input, out } => {
            let cat = import_gap(&std::fs::read_to_string(input)?, *degree)?;
            let header = format!("transitive groups of degree {degree}, converted from GAP library format");
            write_or_print(out.as_deref(), &write_catalog(&cat, &[&header]))?;
            // the written text must load back
            if let Some(p) = out {
                load_catalog(p)?;
            }
        }
    }
    Ok(Outcome::Ok)
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    if !cli.seedless {
        eprintln!("note: no randomized shortcuts are implemented; --seedless false has no effect");
    }
    let opts = RunOptions {
        jobs: cli.jobs,
        time_budget: cli.time_budget,
        timing: cli.timing,
    };
    match &cli.command {
        Command::Catalog { action } => run_catalog(cli, action, cli.format.unwrap_or(Format::Text)),
        Command::Hgs { degree, group, type_label } => {
            let cat = catalog_for_degree(*degree, cli.catalog.as_deref())?;
            let rows = list_structures(*degree, &cat, *group, type_label.as_deref(), &opts)?;
            print_structures(&rows, cli.format.unwrap_or(Format::Text))?;
            Ok(Outcome::Ok)
        }
        Command::Table { degree, detail } => {
            let cat = catalog_for_degree(*degree, cli.catalog.as_deref())?;
            let r = run_degree(*degree, &cat, &opts)?;
            match (cli.format.unwrap_or(Format::Text), detail) {
                (Format::Json, true) => println!("{}", json(&r)?),
                (fmt, _) => print_summary(&r.summary, fmt)?,
            }
            Ok(Outcome::Ok)
        }
        Command::Verify { suite, primes, exponents, skip_rows } => {
            let primes = if primes.is_empty() { vec![3] } else { primes.clone() };
            let report = match suite {
                Suite::Lemma => {
                    let ns = if exponents.is_empty() { (2..=6).collect() } else { exponents.clone() };
                    let mut checks = Vec::new();
                    for &p in &primes {
                        checks.extend(lemma_suite(p, &ns)?.checks);
                    }
                    SuiteReport {
                        suite: "lemma".into(),
                        pass: checks.iter().all(|c| c.pass),
                        checks,
                        skipped: Vec::new(),
                    }
                }
                Suite::TwoPn => {
                    let mut checks = Vec::new();
                    for &p in &primes {
                        checks.extend(twopn_suite(p)?.checks);
                    }
                    SuiteReport {
                        suite: "2pn".into(),
                        pass: checks.iter().all(|c| c.pass),
                        checks,
                        skipped: Vec::new(),
                    }
                }
                Suite::TwoP2 => twop2_suite(&primes)?,
                Suite::Corollary => {
                    let p = primes[0];
                    verify_corollary_table(p, skip_rows, cli.time_budget)?
                }
            };
            print_suite(&report, cli.format.unwrap_or(Format::Json))
        }
        Command::Oracle { degree } => {
            let r = oracle_degree(*degree)?;
            match cli.format.unwrap_or(Format::Text) {
                Format::Json => println!("{}", json(&r)?),
                _ => {
                    for d in &r.differences {
                        println!("{d}");
                    }
                    println!(
                        "degree {}: {} groups, {} group/type pairs, {} structures, {} differences",
                        r.degree,
                        r.groups,
                        r.pairs,
                        r.structures,
                        r.differences.len()
                    );
                }
            }
            Ok(if r.differences.is_empty() { Outcome::Ok } else { Outcome::Mismatch })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(1),
        Ok(Outcome::ResourceCap) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for_error(&e))
        }
    }
}
