//! Command-line interface: argument parsing, output rendering, and the
//! process exit-code contract.
//!
//! Exit codes are part of the interface and stay stable:
//!
//! | code | meaning                                             |
//! |------|-----------------------------------------------------|
//! | 0    | success (including a completed search with 0 found) |
//! | 1    | mathematical negative: non-existence, failed check  |
//! | 2    | out of scope: odd part count                        |
//! | 3    | delegated: `n = 2` existence known, no construction |
//! | 4    | search budget or order cap exceeded                 |
//! | 64   | usage error                                         |
//! | 65   | design file does not parse                          |

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::constructor::{construct, BaseCycleSet, Construction};
use crate::design::{parse_design, write_design};
use crate::feasibility::{self, Existence};
use crate::oracle::{search_base_sets, SearchMode, DEFAULT_CAP};
use crate::trail::DifferenceMultiset;
use crate::verifier::{verify_base, verify_full, verify_parity, verify_symmetric, FullReport};
use crate::zmod::Params;

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_OUT_OF_SCOPE: u8 = 2;
pub const EXIT_DELEGATED: u8 = 3;
pub const EXIT_BUDGET: u8 = 4;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_PARSE: u8 = 65;

/// Environment variable overriding the search order cap.
pub const ORACLE_CAP_VAR: &str = "HCS_ORACLE_CAP";

#[derive(Parser, Debug)]
#[command(
    name = "hcs",
    version,
    about = "Cyclic, shift-symmetric Hamiltonian cycle systems of complete \
             multipartite graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether K_{m x n} admits a cyclic symmetric system
    Exists { m: u64, n: u64 },
    /// Build a base-cycle set and emit it as a design file
    Construct {
        m: u64,
        n: u64,
        /// Progression index for the m = 2 (mod 4), n = 2 (mod 4) branch
        #[arg(long)]
        kappa: Option<u64>,
        /// Write the design to this file instead of stdout
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Follow each trail line with every cycle it stands for
        #[arg(long)]
        expand: bool,
        /// Run the full verifier first and refuse to emit on failure
        #[arg(long)]
        verify: bool,
    },
    /// Check a design file; flags pick which checks run
    Verify {
        file: PathBuf,
        /// Edge-by-edge check of the fully expanded system
        #[arg(long)]
        full: bool,
        /// Compare the odd-orbit count against its forced parity
        #[arg(long)]
        parity: bool,
        /// Require every orbit length to divide m
        #[arg(long)]
        symmetric: bool,
        /// Print one JSON object instead of text lines
        #[arg(long)]
        json: bool,
    },
    /// Enumerate every base-cycle set for a small order from scratch
    Search {
        m: u64,
        n: u64,
        /// Keep going after the first solution
        #[arg(long)]
        all: bool,
        /// Node budget; giving one also lifts the order cap
        #[arg(long, value_name = "N")]
        budget: Option<u64>,
    },
    /// Reproduce a worked example end to end
    Demo { name: String },
}

pub fn run(cli: Cli) -> u8 {
    match cli.command {
        Command::Exists { m, n } => cmd_exists(m, n),
        Command::Construct {
            m,
            n,
            kappa,
            out,
            expand,
            verify,
        } => cmd_construct(m, n, kappa, out, expand, verify),
        Command::Verify {
            file,
            full,
            parity,
            symmetric,
            json,
        } => cmd_verify(&file, full, parity, symmetric, json),
        Command::Search { m, n, all, budget } => cmd_search(m, n, all, budget),
        Command::Demo { name } => cmd_demo(&name),
    }
}

fn usage(msg: String) -> u8 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

fn params_or_usage(m: u64, n: u64) -> Result<Params, u8> {
    Params::new(m, n).map_err(|e| usage(e.to_string()))
}

fn cmd_exists(m: u64, n: u64) -> u8 {
    let params = match params_or_usage(m, n) {
        Ok(p) => p,
        Err(code) => return code,
    };
    match feasibility::exists_cyclic_symmetric_even_m(&params) {
        Ok(Existence::Exists) => {
            println!("exists");
            EXIT_OK
        }
        Ok(Existence::NotExists(reason)) => {
            println!("not-exists: {reason}");
            EXIT_NEGATIVE
        }
        Err(e) => {
            println!("out-of-scope: {e}");
            EXIT_OUT_OF_SCOPE
        }
    }
}

/// First failure in a full report, for one-line messages.
fn full_failure(report: &FullReport) -> String {
    if let Some((idx, fault)) = report.cycle_faults.first() {
        return format!("trail {idx}: {fault}");
    }
    if let Some(fault) = &report.partition {
        return fault.to_string();
    }
    if let Some(fault) = &report.closure {
        return fault.to_string();
    }
    "no failure".to_string()
}

fn cmd_construct(
    m: u64,
    n: u64,
    kappa: Option<u64>,
    out: Option<PathBuf>,
    expand: bool,
    verify: bool,
) -> u8 {
    let params = match params_or_usage(m, n) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let set = match construct(&params, kappa) {
        Err(e) => return usage(e.to_string()),
        Ok(Construction::Built(set)) => set,
        Ok(Construction::DelegatedN2 { exists }) => {
            println!("delegated: existence = {exists}; construction for n = 2 is out of scope");
            return EXIT_DELEGATED;
        }
        Ok(Construction::Nonexistent(reason)) => {
            println!("not-exists: {reason}");
            return EXIT_NEGATIVE;
        }
        Ok(Construction::UnsupportedOddM) => {
            println!("out-of-scope: m = {m} odd is not covered by the even-m theory");
            return EXIT_OUT_OF_SCOPE;
        }
    };
    if verify {
        let report = verify_full(&set);
        if !report.pass() {
            eprintln!(
                "refusing to emit: full verification failed: {}",
                full_failure(&report)
            );
            return EXIT_NEGATIVE;
        }
    }
    let text = write_design(&set, expand);
    match out {
        Some(path) => match fs::write(&path, &text) {
            Ok(()) => EXIT_OK,
            Err(e) => usage(format!("cannot write {}: {e}", path.display())),
        },
        None => {
            print!("{text}");
            EXIT_OK
        }
    }
}

fn cmd_verify(file: &PathBuf, full: bool, parity: bool, symmetric: bool, json: bool) -> u8 {
    let text = match fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => return usage(format!("cannot read {}: {e}", file.display())),
    };
    let set = match parse_design(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("parse error: {e}");
            return EXIT_PARSE;
        }
    };

    let base = verify_base(&set);
    let full_report = full.then(|| verify_full(&set));
    let symmetry = symmetric.then(|| verify_symmetric(&set));
    let parity_report = parity.then(|| verify_parity(&set));

    let base_pass = matches!(&base, Ok(r) if r.pass);
    let full_pass = full_report.as_ref().is_none_or(FullReport::pass);
    let sym_pass = symmetry.as_ref().is_none_or(Result::is_ok);
    let par_pass = parity_report
        .as_ref()
        .is_none_or(|r| matches!(r, Ok(p) if p.pass));
    let all_pass = base_pass && full_pass && sym_pass && par_pass;

    if json {
        let base_json = match &base {
            Ok(r) => json!({
                "pass": r.pass,
                "wrong": r.wrong,
            }),
            Err((idx, e)) => json!({
                "pass": false,
                "invalid_trail": { "index": idx, "error": e.to_string() },
            }),
        };
        let value = json!({
            "pass": all_pass,
            "base_criterion": base_json,
            "hamiltonicity": full_report.as_ref().map(|r| json!({
                "pass": r.cycle_faults.is_empty(),
                "faults": r.cycle_faults.iter()
                    .map(|(idx, f)| json!({ "trail": idx, "fault": f.to_string() }))
                    .collect::<Vec<_>>(),
            })),
            "full_partition": full_report.as_ref().map(|r| json!({
                "pass": r.partition.is_none(),
                "fault": r.partition.as_ref().map(ToString::to_string),
            })),
            "cyclic_closure": full_report.as_ref().map(|r| json!({
                "pass": r.closure.is_none(),
                "fault": r.closure.as_ref().map(ToString::to_string),
            })),
            "counts": full_report.as_ref().map(|r| json!({
                "cycles": r.cycles,
                "edges": r.edges,
            })),
            "symmetry": symmetry.as_ref().map(|r| json!({
                "pass": r.is_ok(),
                "fault": r.as_ref().err().map(ToString::to_string),
            })),
            "parity": parity_report.as_ref().map(|r| match r {
                Ok(p) => json!({
                    "pass": p.pass,
                    "observed": p.observed,
                    "target": p.target,
                }),
                Err(e) => json!({ "pass": false, "error": e.to_string() }),
            }),
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&value).expect("report serializes")
        );
    } else {
        match &base {
            Ok(r) if r.pass => println!("base: pass"),
            Ok(r) => {
                let (residue, seen) = r.wrong[0];
                println!(
                    "base: fail ({} residues with wrong multiplicity; first: {residue} seen {seen})",
                    r.wrong.len()
                );
            }
            Err((idx, e)) => println!("base: fail (trail {idx}: {e})"),
        }
        if let Some(report) = &full_report {
            if report.pass() {
                println!(
                    "full: pass ({} cycles, {} edges)",
                    report.cycles, report.edges
                );
            } else {
                println!("full: fail ({})", full_failure(report));
            }
        }
        if let Some(result) = &symmetry {
            match result {
                Ok(()) => println!("symmetric: pass"),
                Err(fault) => println!("symmetric: fail ({fault})"),
            }
        }
        if let Some(result) = &parity_report {
            match result {
                Ok(p) if p.pass => {
                    println!("parity: pass (observed {}, target {} mod 2)", p.observed, p.target);
                }
                Ok(p) => {
                    println!("parity: fail (observed {}, target {} mod 2)", p.observed, p.target);
                }
                Err(e) => println!("parity: fail ({e})"),
            }
        }
    }

    if all_pass {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

fn oracle_cap() -> Result<u64, String> {
    match std::env::var(ORACLE_CAP_VAR) {
        Ok(value) => value
            .trim()
            .parse()
            .map_err(|_| format!("{ORACLE_CAP_VAR} must be a non-negative integer, got `{value}`")),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_CAP),
        Err(e) => Err(format!("{ORACLE_CAP_VAR}: {e}")),
    }
}

fn cmd_search(m: u64, n: u64, all: bool, budget: Option<u64>) -> u8 {
    let params = match params_or_usage(m, n) {
        Ok(p) => p,
        Err(code) => return code,
    };
    // An explicit budget is an explicit opt-in to spend work, so it
    // lifts the order cap; the cap exists to catch accidental monsters.
    let cap = match budget {
        Some(_) => u64::MAX,
        None => match oracle_cap() {
            Ok(cap) => cap,
            Err(msg) => return usage(msg),
        },
    };
    let mode = if all {
        SearchMode::All
    } else {
        SearchMode::FirstOnly
    };
    match search_base_sets(&params, mode, budget.unwrap_or(u64::MAX), cap) {
        Err(e) => {
            eprintln!("{e}");
            EXIT_BUDGET
        }
        Ok(outcome) => {
            for (idx, solution) in outcome.solutions.iter().enumerate() {
                println!("# solution {idx}");
                print!("{}", write_design(solution, false));
            }
            let status = if outcome.exhausted {
                "exhausted"
            } else {
                "not exhausted"
            };
            println!("{} found, {status}", outcome.solutions.len());
            if outcome.truncated {
                EXIT_BUDGET
            } else {
                EXIT_OK
            }
        }
    }
}

const DEMO_NAMES: [&str; 6] = ["k10x6", "k2x14", "k18x4", "k72x8", "k6x14", "k10x10"];

/// `±{...}` rendering of the residues a multiset covers, one entry per
/// plus-minus pair, ascending.
fn pm_set(pd: &DifferenceMultiset, modulus: u64) -> String {
    let mut items = Vec::new();
    for d in 1..=modulus / 2 {
        if pd.multiplicity(d) > 0 || pd.multiplicity(modulus - d) > 0 {
            items.push(d.to_string());
        }
    }
    format!("\u{b1}{{{}}}", items.join(","))
}

/// Demo text plus an all-checks-passed flag. The output doubles as a
/// design file: everything except the header and trail lines is
/// comments.
fn render_demo(name: &str, set: &BaseCycleSet) -> (String, bool) {
    let params = set.params();
    let modulus = params.order();
    let full = verify_full(set);
    let base_pass = matches!(verify_base(set), Ok(r) if r.pass);
    let sym_ok = verify_symmetric(set).is_ok();
    let parity = verify_parity(set);

    let mut out = String::new();
    writeln!(
        out,
        "# demo {name}: K_{{{}x{}}}, order {modulus}",
        params.m(),
        params.n()
    )
    .unwrap();
    writeln!(out, "hcs 1").unwrap();
    writeln!(out, "m {}", params.m()).unwrap();
    writeln!(out, "n {}", params.n()).unwrap();
    for trail in set.trails() {
        write!(out, "trail {}", trail.stride()).unwrap();
        for &v in trail.base() {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
        let pd = trail
            .partial_differences(params)
            .expect("demo trails are valid");
        writeln!(
            out,
            "# pd {} orbit {}",
            pm_set(&pd, modulus),
            trail.orbit_length(params)
        )
        .unwrap();
    }
    let mut lengths: Vec<usize> = Vec::new();
    for trail in set.trails() {
        if !lengths.contains(&trail.r()) {
            lengths.push(trail.r());
        }
    }
    for r in lengths {
        let mut union = DifferenceMultiset::new(modulus);
        for trail in set.trails().iter().filter(|t| t.r() == r) {
            union.union_with(&trail.partial_differences(params).expect("valid"));
        }
        writeln!(out, "# pd union len {r}: {}", pm_set(&union, modulus)).unwrap();
    }
    let par_pass = match &parity {
        Ok(p) => {
            writeln!(
                out,
                "# parity: {} odd orbit(s), target {} (mod 2): {}",
                p.observed,
                p.target,
                if p.pass { "pass" } else { "fail" }
            )
            .unwrap();
            p.pass
        }
        Err(e) => {
            writeln!(out, "# parity: fail ({e})").unwrap();
            false
        }
    };
    writeln!(
        out,
        "# verify: base {}, full {} ({} cycles, {} edges), symmetric {}",
        if base_pass { "pass" } else { "fail" },
        if full.pass() { "pass" } else { "fail" },
        full.cycles,
        full.edges,
        if sym_ok { "pass" } else { "fail" }
    )
    .unwrap();
    (out, base_pass && full.pass() && sym_ok && par_pass)
}

fn cmd_demo(name: &str) -> u8 {
    let (m, n, kappa) = match name {
        "k10x6" => (10, 6, None),
        "k2x14" => (2, 14, None),
        "k18x4" => (18, 4, None),
        "k72x8" => (72, 8, None),
        "k6x14" => (6, 14, None),
        "k10x10" => (10, 10, Some(1)),
        _ => {
            return usage(format!(
                "unknown demo `{name}`; available: {}",
                DEMO_NAMES.join(", ")
            ))
        }
    };
    let params = Params::new(m, n).expect("demo parameters are valid");
    let set = match construct(&params, kappa) {
        Ok(Construction::Built(set)) => set,
        other => {
            eprintln!("demo construction failed unexpectedly: {other:?}");
            return EXIT_NEGATIVE;
        }
    };
    let (text, all_pass) = render_demo(name, &set);
    print!("{text}");
    if all_pass {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}
