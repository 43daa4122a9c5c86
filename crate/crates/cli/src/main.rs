use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use ryser_core::analysis::{
    check_8edge_lemma, classify_degree_scheme, degree_table, linearity_report, ryser_ratio,
};
use ryser_core::constructions::{pad_to, paper_instance, truncated_projective_plane, PaperInstance};
use ryser_core::search::{search_with, SearchOptions};
use ryser_core::{
    canonical_form, cover_number, parse_instance, write_instance, PartiteHypergraph, SearchMode,
    SearchParams, SearchStatus,
};

/// Exit status for a well-formed input that fails the property checked.
const PROPERTY_FAILS: u8 = 1;
/// Exit status for usage, I/O and parse errors.
const USAGE_ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "ryser", version, about = "Intersecting r-partite hypergraphs and their cover numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that an instance is well formed and intersecting.
    Verify {
        /// Instance file, or `-` for standard input.
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Compute the cover number exactly.
    Tau {
        file: PathBuf,
        /// Give up above this cover size.
        #[arg(long)]
        limit: Option<usize>,
        /// Also print the cover certificate.
        #[arg(long)]
        certificate: bool,
        #[arg(long)]
        json: bool,
        /// Worker threads (default: available parallelism).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Degree table, linearity, Ryser ratio and lemma checks.
    Report {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Write a generated instance to standard output.
    Gen {
        #[command(subcommand)]
        which: Generator,
    },
    /// Add parts with a private vertex per edge.
    Pad {
        file: PathBuf,
        /// Number of parts after padding.
        #[arg(long)]
        to: usize,
    },
    /// Search for intersecting instances with m edges and τ at least a target.
    Search {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        tau: usize,
        /// Most vertices per part (default: m).
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, value_enum, default_value_t = Mode::First)]
        mode: Mode,
        /// With `--mode all`, stop after this many instances.
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        threads: Option<usize>,
        /// State file to resume from and keep up to date.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Stop after this many frontier subtrees; resume with `--checkpoint`.
        #[arg(long)]
        max_subtrees: Option<usize>,
        /// Disable the pruning rules.
        #[arg(long)]
        no_prune: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print the canonical representative of an instance.
    Canon {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum Generator {
    /// Truncated projective plane of order q.
    Tpp {
        #[arg(long)]
        q: usize,
    },
    /// A built-in instance.
    Paper {
        #[arg(long, value_enum)]
        name: Named,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    First,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Named {
    F6,
    F7,
}

fn read_instance(path: &PathBuf) -> Result<PartiteHypergraph> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading standard input")?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    parse_instance(&text).with_context(|| format!("parsing {}", path.display()))
}

fn print_json(value: &impl Serialize) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn set_threads(threads: Option<usize>) -> Result<()> {
    if let Some(n) = threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring worker threads")?;
    }
    Ok(())
}

fn verify(file: &PathBuf, as_json: bool) -> Result<u8> {
    let h = read_instance(file)?;
    let pair = h.first_disjoint_pair();
    if as_json {
        print_json(&json!({
            "schema": "ryser.verify/1",
            "rank": h.rank(),
            "edges": h.edge_count(),
            "part_sizes": h.part_sizes(),
            "intersecting": pair.is_none(),
            "disjoint_pair": pair.map(|(i, j)| [i + 1, j + 1]),
        }))?;
    } else {
        match pair {
            None => println!("ok: {} parts, {} edges, intersecting", h.rank(), h.edge_count()),
            Some((i, j)) => println!("not intersecting: E{} and E{} are disjoint", i + 1, j + 1),
        }
    }
    Ok(if pair.is_none() { 0 } else { PROPERTY_FAILS })
}

fn tau(file: &PathBuf, limit: Option<usize>, certificate: bool, as_json: bool) -> Result<u8> {
    let h = read_instance(file)?;
    let cert = cover_number(&h, limit);
    let exact = cert.tau();
    if as_json {
        let mut value = json!({
            "schema": "ryser.tau/1",
            "tau": exact,
            "limit": limit,
        });
        if certificate {
            value["certificate"] = serde_json::to_value(&cert)?;
        }
        print_json(&value)?;
    } else {
        match exact {
            Some(t) => println!("tau {t}"),
            None => println!("tau > {}", cert.exhausted_size.unwrap_or(0)),
        }
        if certificate {
            println!("{}", serde_json::to_string(&cert)?);
        }
    }
    Ok(if exact.is_some() { 0 } else { PROPERTY_FAILS })
}

fn report(file: &PathBuf, as_json: bool) -> Result<u8> {
    let h = read_instance(file)?;
    let table = degree_table(&h);
    let linearity = linearity_report(&h, &[]);
    let t = ryser_core::tau(&h);
    let nu = h.matching_number();
    let ratio = ryser_ratio(&h).ok();
    let lemma = check_8edge_lemma(&h).ok().map(|eight| {
        let scheme = classify_degree_scheme(&h).expect("same hypotheses");
        (eight, scheme)
    });
    if as_json {
        print_json(&json!({
            "schema": "ryser.report/1",
            "rank": h.rank(),
            "edges": h.edge_count(),
            "part_sizes": h.part_sizes(),
            "intersecting": h.is_intersecting(),
            "tau": t,
            "nu": nu,
            "ryser_ratio": ratio.map(|q| json!({"numerator": q.numer(), "denominator": q.denom()})),
            "degree_table": table,
            "linearity": linearity,
            "eight_edge_lemma": lemma.as_ref().map(|(e, s)| json!({
                "holds": e.holds(),
                "report": e,
                "degree_scheme": s,
                "scheme_matches": s.matches_lemma(),
            })),
        }))?;
        return Ok(0);
    }
    println!(
        "{} parts, {} edges, intersecting: {}",
        h.rank(),
        h.edge_count(),
        if h.is_intersecting() { "yes" } else { "no" }
    );
    println!();
    print!("{table}");
    println!();
    if linearity.is_linear() {
        println!("linear: every two edges meet in exactly one vertex");
    } else {
        println!("linear: no");
        for p in &linearity.pairs {
            println!("  |{} ∩ {}| = {}", p.first, p.second, p.size);
        }
    }
    println!("tau {t}");
    println!("nu {nu}");
    match ratio {
        Some(q) => println!("ryser ratio tau/((r-1) nu) = {q}"),
        None => println!("ryser ratio undefined"),
    }
    if let Some((eight, scheme)) = &lemma {
        println!();
        println!(
            "8-edge lemma: degree-3 vertex in every part: {}; edge pair sharing two degree-3 vertices: {}",
            yes_no(eight.deg3_in_every_part),
            match eight.heavy_pair {
                Some((a, b)) => format!("{a}, {b}"),
                None => "none".into(),
            }
        );
        for part in &scheme.parts {
            println!("  part {}: degrees {:?} -> {:?}", part.part, part.degrees, part.kind);
        }
        println!("degree scheme as stated: {}", yes_no(scheme.matches_lemma()));
    }
    Ok(0)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[allow(clippy::too_many_arguments)]
fn search(
    r: usize,
    m: usize,
    tau: usize,
    cap: Option<usize>,
    mode: Mode,
    limit: Option<usize>,
    checkpoint: Option<PathBuf>,
    max_subtrees: Option<usize>,
    no_prune: bool,
    as_json: bool,
) -> Result<u8> {
    let mut params = SearchParams::new(r, m, tau)
        .mode(match mode {
            Mode::First => SearchMode::First,
            Mode::All => SearchMode::All,
        })
        .pruning(!no_prune);
    params.cap = cap;
    params.limit = limit;
    let outcome = search_with(
        &params,
        &SearchOptions {
            checkpoint,
            max_subtrees,
        },
    )?;
    let texts: Vec<String> = outcome.instances.iter().map(write_instance).collect();
    let mut summary = json!({
        "schema": "ryser.search/1",
        "r": r,
        "m": m,
        "tau": tau,
        "cap": cap.unwrap_or(m).min(m),
        "mode": params.mode,
        "limit": limit,
        "pruning": !no_prune,
        "status": outcome.status,
        "count": outcome.instances.len(),
        "nodes": outcome.nodes,
        "seconds": outcome.seconds,
    });
    if as_json {
        summary["instances"] = Value::from(texts);
        print_json(&summary)?;
    } else {
        let mut out = io::stdout().lock();
        for (k, text) in texts.iter().enumerate() {
            writeln!(out, "# instance {}", k + 1)?;
            write!(out, "{text}")?;
        }
        writeln!(out, "# summary {}", serde_json::to_string(&summary)?)?;
    }
    Ok(match outcome.status {
        SearchStatus::Found | SearchStatus::Exhausted | SearchStatus::Interrupted => 0,
    })
}

fn canon(file: &PathBuf, as_json: bool) -> Result<u8> {
    let h = read_instance(file)?;
    let form = canonical_form(&h);
    let text = write_instance(&form.to_hypergraph());
    if as_json {
        print_json(&json!({
            "schema": "ryser.canon/1",
            "form": form.to_hex(),
            "rank": form.rank(),
            "edges": form.edge_count(),
            "instance": text,
        }))?;
    } else {
        println!("# canonical form {}", form.to_hex());
        print!("{text}");
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Verify { file, json } => verify(&file, json),
        Command::Tau {
            file,
            limit,
            certificate,
            json,
            threads,
        } => {
            set_threads(threads)?;
            tau(&file, limit, certificate, json)
        }
        Command::Report { file, json } => report(&file, json),
        Command::Gen { which } => {
            let h = match which {
                Generator::Tpp { q } => truncated_projective_plane(q)?,
                Generator::Paper { name } => paper_instance(match name {
                    Named::F6 => PaperInstance::F6,
                    Named::F7 => PaperInstance::F7,
                }),
            };
            print!("{}", write_instance(&h));
            Ok(0)
        }
        Command::Pad { file, to } => {
            let h = read_instance(&file)?;
            print!("{}", write_instance(&pad_to(&h, to)?));
            Ok(0)
        }
        Command::Search {
            r,
            m,
            tau,
            cap,
            mode,
            limit,
            threads,
            checkpoint,
            max_subtrees,
            no_prune,
            json,
        } => {
            set_threads(threads)?;
            search(r, m, tau, cap, mode, limit, checkpoint, max_subtrees, no_prune, json)
        }
        Command::Canon { file, json } => canon(&file, json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(USAGE_ERROR)
        }
    }
}
