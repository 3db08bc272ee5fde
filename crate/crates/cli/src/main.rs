//! `hypo` — command-line front end for the hypoplactic toolkit.

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use serde_json::json;

use hypoplactic::checker::{
    build_pk, build_qk, chaos, check, find_critical, oracle_verdict, Identity, MonoidTag,
};
use hypoplactic::hypo::{equivalent, inver, tableau_of, RankedWord};
use hypoplactic::models::{build_a01, build_b, build_c, FiniteInvMonoid};
use hypoplactic::repr::{psi1, psi2, psi3, psi_n};
use hypoplactic::semiring::{render_trop, TropMatrix, TropMatrixJson};

#[derive(Parser)]
#[command(name = "hypo", version, about = "Hypoplactic monoid toolkit: tableaux, tropical representations and identity checking")]
struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the quasi-ribbon tableau of a ranked word
    Tableau {
        /// Digits for ranks ≤ 9, space/comma-separated letters otherwise
        word: String,
        /// Alphabet rank; defaults to the largest letter in the word
        #[arg(long)]
        rank: Option<u32>,
    },
    /// Decide whether two words are equal in the hypoplactic monoid
    Equiv {
        #[arg(long)]
        rank: u32,
        w1: String,
        w2: String,
    },
    /// Print the faithful tropical matrix representation of a word
    Repr {
        #[arg(long)]
        rank: u32,
        word: String,
    },
    /// Check a word identity "U ≈ V" against a monoid
    Check {
        #[arg(long, default_value = "hypoN")]
        monoid: String,
        identity: String,
    },
    /// Brute-force a word identity over a finite model
    Oracle {
        /// a01, b or c
        #[arg(long)]
        model: String,
        #[arg(long, default_value_t = 3)]
        max_vars: usize,
        identity: String,
    },
    /// List the unstable pairs and one critical pair of a balanced identity
    Chaos { identity: String },
    /// Emit the identity p_K ≈ q_K
    Pk { k: usize },
    /// Finite model inspection
    Model {
        #[command(subcommand)]
        cmd: ModelCmd,
    },
}

#[derive(Subcommand)]
enum ModelCmd {
    /// Emit the multiplication and involution tables as JSON
    Dump {
        /// a01, b or c
        #[arg(long)]
        name: String,
    },
}

fn parse_letters(text: &str) -> Result<Vec<u32>, String> {
    let text = text.trim();
    if text.contains([' ', ',']) {
        text.split([' ', ','])
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<u32>().map_err(|_| format!("invalid letter {s:?}")))
            .collect()
    } else {
        text.chars()
            .map(|c| c.to_digit(10).ok_or_else(|| format!("invalid letter {c:?}")))
            .collect()
    }
}

fn ranked(rank: u32, text: &str) -> Result<RankedWord, String> {
    RankedWord::parse(rank, text).map_err(|e| e.to_string())
}

fn identity(text: &str) -> Result<Identity, String> {
    Identity::parse(text).map_err(|e| e.to_string())
}

fn model_by_name(name: &str) -> Result<FiniteInvMonoid, String> {
    match name.to_ascii_lowercase().as_str() {
        "a01" => Ok(build_a01()),
        "b" => Ok(build_b()),
        "c" => Ok(build_c()),
        _ => Err(format!("unknown model {name:?}; expected a01, b or c")),
    }
}

fn print_matrix(m: &TropMatrix, as_json: bool) {
    if as_json {
        println!("{}", serde_json::to_string(&TropMatrixJson::from(m)).unwrap());
    } else {
        println!("{}", render_trop(m));
    }
}

/// Ok(status) is the process exit status; Err is an input error (status 2).
fn run(cli: Cli) -> Result<u8, String> {
    match cli.cmd {
        Cmd::Tableau { word, rank } => {
            let letters = parse_letters(&word)?;
            let rank = rank.unwrap_or_else(|| letters.iter().copied().max().unwrap_or(1));
            let w = RankedWord::new(rank, letters).map_err(|e| e.to_string())?;
            let t = tableau_of(&w);
            if cli.json {
                let pairs: Vec<[u32; 2]> = inver(&w).into_iter().map(|(a, b)| [a, b]).collect();
                println!("{}", json!({ "rank": rank, "rows": t.rows(), "inver": pairs }));
            } else {
                let color = std::env::var_os("NO_COLOR").is_none();
                println!("{}", t.render(color));
            }
            Ok(0)
        }
        Cmd::Equiv { rank, w1, w2 } => {
            let eq = equivalent(&ranked(rank, &w1)?, &ranked(rank, &w2)?);
            if cli.json {
                println!("{}", json!({ "equivalent": eq }));
            } else {
                println!("{eq}");
            }
            Ok(if eq { 0 } else { 1 })
        }
        Cmd::Repr { rank, word } => {
            let w = ranked(rank, &word)?;
            let m = match rank {
                1 => psi1(&w),
                2 => psi2(&w),
                3 => psi3(&w),
                _ => psi_n(&w),
            }
            .map_err(|e| e.to_string())?;
            print_matrix(&m, cli.json);
            Ok(0)
        }
        Cmd::Check { monoid, identity: text } => {
            let tag = MonoidTag::from_str(&monoid).map_err(|e| e.to_string())?;
            let id = identity(&text)?;
            let verdict = check(&id, tag);
            if cli.json {
                println!("{}", serde_json::to_string(&verdict).unwrap());
            } else if verdict.holds {
                println!("{id} holds in {tag}");
            } else {
                let f = verdict.failed_condition.as_ref().unwrap();
                println!("{id} does not hold in {tag}: fails {} at ({})", f.clause, f.pair.join(", "));
            }
            Ok(if verdict.holds { 0 } else { 1 })
        }
        Cmd::Oracle { model, max_vars, identity: text } => {
            let m = model_by_name(&model)?;
            let tag = MonoidTag::from_str(&model).map_err(|e| e.to_string())?;
            let id = identity(&text)?;
            let verdict = oracle_verdict(&m, &id, tag, max_vars).map_err(|e| e.to_string())?;
            if cli.json {
                println!("{}", serde_json::to_string(&verdict).unwrap());
            } else if verdict.holds {
                println!("{id} holds in {} (exhaustive)", m.name());
            } else {
                let w = verdict.witness_assignment.as_ref().unwrap();
                let parts: Vec<String> =
                    w.assignment.iter().map(|(v, e)| format!("{v} ↦ {e}")).collect();
                println!("{id} refuted in {}: {}", m.name(), parts.join(", "));
            }
            Ok(if verdict.holds { 0 } else { 1 })
        }
        Cmd::Chaos { identity: text } => {
            let id = identity(&text)?;
            let pairs = chaos(&id).map_err(|e| e.to_string())?;
            let critical = find_critical(&id).map_err(|e| e.to_string())?;
            if cli.json {
                let unstable: Vec<[String; 2]> = pairs
                    .iter()
                    .map(|(p, q)| [p.to_string(), q.to_string()])
                    .collect();
                let crit = critical.map(|(p, q)| [p.to_string(), q.to_string()]);
                println!("{}", json!({ "unstable": unstable, "critical": crit }));
            } else {
                println!("{} unstable pair(s)", pairs.len());
                for (p, q) in &pairs {
                    println!("  ({p}, {q})");
                }
                match critical {
                    Some((p, q)) => println!("critical: ({p}, {q})"),
                    None => println!("critical: none"),
                }
            }
            Ok(0)
        }
        Cmd::Pk { k } => {
            let lhs = build_pk(k).map_err(|e| e.to_string())?;
            let rhs = build_qk(k).map_err(|e| e.to_string())?;
            if cli.json {
                println!("{}", json!({ "lhs": lhs.to_string(), "rhs": rhs.to_string() }));
            } else {
                println!("{lhs} ≈ {rhs}");
            }
            Ok(0)
        }
        Cmd::Model { cmd: ModelCmd::Dump { name } } => {
            let m = model_by_name(&name)?;
            println!("{}", serde_json::to_string(&m.dump()).unwrap());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(status) => ExitCode::from(status),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
