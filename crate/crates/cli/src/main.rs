//! Command-line front end: parse oriented-graph files, run the DGSS
//! certification pipeline, search for cospectral mates, and drive
//! enumeration sweeps.
//!
//! Exit codes: 0 for a certified/clean outcome, 1 for a negative verdict,
//! 2 for usage or input errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use skewspec_core::{
    anti_automorphism, determinant, dgss_check_with_bound, enumerate_oriented_graphs, find_mates,
    orientation_count, parse_oriented_graph, smith_normal_form, snf_pattern_check, walk_matrix,
    OrientedGraph, Verdict, DEFAULT_FACTOR_BOUND, DEFAULT_MAX_EXHAUSTIVE,
};

#[derive(Parser)]
#[command(
    name = "skewspec",
    version,
    about = "Exact-arithmetic spectral certification of oriented graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit JSON instead of human-readable text
    #[arg(long, global = true)]
    json: bool,

    /// Run the per-prime anisotropy audit when a graph is certified
    #[arg(long, global = true)]
    audit: bool,

    /// Trial-division bound for the audit factorization
    #[arg(long, global = true, default_value_t = DEFAULT_FACTOR_BOUND)]
    factor_bound: u64,

    /// Cap on exhaustive scans; order n costs 3^(n(n-1)/2) graphs
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_EXHAUSTIVE)]
    max_exhaustive: usize,

    /// Seed for randomized workflows (reserved; the current commands are
    /// fully deterministic)
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full certification pipeline on a graph file
    Check { input: PathBuf },
    /// Print the Smith normal form of the walk matrix
    Snf { input: PathBuf },
    /// Decide self-converseness and print the witness
    Selfconverse { input: PathBuf },
    /// Exhaustively scan for generalized-cospectral mates
    Mates { input: PathBuf },
    /// Stream every labelled oriented graph of order n with a summary line each
    Enumerate {
        #[arg(long)]
        n: usize,
    },
    /// Same as check with the anisotropy audit forced on
    Audit { input: PathBuf },
}

fn load_graph(path: &PathBuf) -> Result<OrientedGraph, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_oriented_graph(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn cmd_check(g: &OrientedGraph, json: bool, audit: bool, factor_bound: u64) -> ExitCode {
    let report = dgss_check_with_bound(g, audit, factor_bound);
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    if report.verdict == Verdict::Certified {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn cmd_snf(g: &OrientedGraph, json: bool) -> ExitCode {
    let w = walk_matrix(&g.skew_adjacency());
    let det = determinant(w.matrix()).expect("walk matrix is square");
    let diagonal = smith_normal_form(w.matrix()).full_diagonal();
    let pattern = snf_pattern_check(&diagonal, g.n()).expect("full diagonal");
    if json {
        println!(
            "{}",
            json!({
                "n": g.n(),
                "det_w": det.to_string(),
                "snf": diagonal.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "pattern": {
                    "matches": pattern.matches,
                    "d": pattern.d.as_ref().map(ToString::to_string),
                    "reason": pattern.failure_reason,
                },
            })
        );
    } else {
        let snf: Vec<String> = diagonal.iter().map(ToString::to_string).collect();
        println!("n:       {}", g.n());
        println!("det(W):  {det}");
        println!("SNF(W):  {}", snf.join(", "));
        match (&pattern.d, &pattern.failure_reason) {
            (Some(d), _) => println!("pattern: matches, d = {d}"),
            (None, None) => println!("pattern: matches (degenerate, no d)"),
            (None, Some(reason)) => println!("pattern: no ({reason})"),
        }
    }
    ExitCode::SUCCESS
}

fn cmd_selfconverse(g: &OrientedGraph, json: bool) -> ExitCode {
    let witness = anti_automorphism(g);
    if json {
        println!(
            "{}",
            json!({
                "n": g.n(),
                "self_converse": witness.is_some(),
                "witness": witness.as_ref().map(|p| p.images().to_vec()),
            })
        );
    } else {
        match &witness {
            Some(p) => println!("self-converse: yes, witness {p}"),
            None => println!("self-converse: no"),
        }
    }
    if witness.is_some() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn cmd_mates(g: &OrientedGraph, json: bool, max_exhaustive: usize) -> Result<ExitCode, String> {
    let result = find_mates(g, max_exhaustive).map_err(|e| e.to_string())?;
    if json {
        println!("{}", result.to_json());
    } else {
        println!("n:             {}", g.n());
        println!("scanned:       {}", result.candidates_scanned);
        println!("cospectral:    {}", result.cospectral_mates.len());
        println!("nonisomorphic: {}", result.nonisomorphic_mates.len());
        for mate in &result.nonisomorphic_mates {
            let arcs: Vec<String> = mate
                .arcs()
                .iter()
                .map(|&(u, v)| format!("{u}>{v}"))
                .collect();
            println!("  mate: {}", arcs.join(" "));
        }
        if !result.q_evidence.is_empty() {
            let levels: Vec<String> = result
                .q_evidence
                .iter()
                .map(|(_, q)| q.level().to_string())
                .collect();
            println!("levels:        {}", levels.join(", "));
        }
    }
    Ok(if result.nonisomorphic_mates.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn cmd_enumerate(n: usize, json: bool, max_exhaustive: usize) -> Result<ExitCode, String> {
    if n > max_exhaustive {
        return Err(format!(
            "vertex count {n} exceeds the exhaustive-search bound {max_exhaustive} \
             (raise it with --max-exhaustive)"
        ));
    }
    let mut self_converse = 0u64;
    let mut pattern_matches = 0u64;
    let mut certified = 0u64;
    for (index, g) in enumerate_oriented_graphs(n).enumerate() {
        let witness = anti_automorphism(&g);
        let w = walk_matrix(&g.skew_adjacency());
        let diagonal = smith_normal_form(w.matrix()).full_diagonal();
        let pattern = snf_pattern_check(&diagonal, n).expect("full diagonal");
        if witness.is_some() {
            self_converse += 1;
        }
        if pattern.matches {
            pattern_matches += 1;
        }
        if witness.is_some() && pattern.matches {
            certified += 1;
        }
        let snf: Vec<String> = diagonal.iter().map(ToString::to_string).collect();
        if json {
            println!(
                "{}",
                json!({
                    "index": index,
                    "arcs": g.arcs().iter().map(|&(u, v)| json!([u, v])).collect::<Vec<_>>(),
                    "self_converse": witness.is_some(),
                    "snf": snf,
                    "pattern": pattern.matches,
                })
            );
        } else {
            let arcs: Vec<String> = g.arcs().iter().map(|&(u, v)| format!("{u}>{v}")).collect();
            println!(
                "{index} sc={} pattern={} snf=[{}] arcs=[{}]",
                u8::from(witness.is_some()),
                u8::from(pattern.matches),
                snf.join(","),
                arcs.join(" ")
            );
        }
    }
    if json {
        println!(
            "{}",
            json!({
                "n": n,
                "total": u64::try_from(orientation_count(n)).expect("bounded by max_exhaustive"),
                "self_converse": self_converse,
                "pattern_matches": pattern_matches,
                "certified": certified,
            })
        );
    } else {
        println!(
            "total {} graphs, {} self-converse, {} matching the pattern, {} certified",
            orientation_count(n),
            self_converse,
            pattern_matches,
            certified
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Check { input } => {
            load_graph(input).map(|g| cmd_check(&g, cli.json, cli.audit, cli.factor_bound))
        }
        Command::Audit { input } => {
            load_graph(input).map(|g| cmd_check(&g, cli.json, true, cli.factor_bound))
        }
        Command::Snf { input } => load_graph(input).map(|g| cmd_snf(&g, cli.json)),
        Command::Selfconverse { input } => {
            load_graph(input).map(|g| cmd_selfconverse(&g, cli.json))
        }
        Command::Mates { input } => {
            load_graph(input).and_then(|g| cmd_mates(&g, cli.json, cli.max_exhaustive))
        }
        Command::Enumerate { n } => cmd_enumerate(*n, cli.json, cli.max_exhaustive),
    };
    match outcome {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
