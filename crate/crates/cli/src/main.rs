use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use sring::duality::dual_sring;
use sring::multiplier::{is_separable, SeparabilityReport};
use sring::oracle::{enumerate_srings, is_separable_bruteforce, OracleLimits};
use sring::report::analyze;
use sring::sring::{closure, parse_seed_sets, SRingJson};
use sring::verify::{self, Suite, VerifyConfig};
use sring::{Error, SRing};

#[derive(Parser)]
#[command(name = "sring", version, about = "Schur rings over cyclic groups")]
struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    #[command(flatten)]
    limits: LimitArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct LimitArgs {
    /// Largest n for S-ring enumeration
    #[arg(long, global = true, default_value_t = OracleLimits::default().enumerate)]
    enum_bound: u32,

    /// Largest n for the brute-force isomorphism search
    #[arg(long, global = true, default_value_t = OracleLimits::default().isomorphism)]
    iso_bound: u32,

    /// Largest n for coset closure
    #[arg(long, global = true, default_value_t = OracleLimits::default().coset_closure)]
    coset_bound: u32,
}

impl LimitArgs {
    fn limits(&self) -> OracleLimits {
        OracleLimits {
            enumerate: self.enum_bound,
            isomorphism: self.iso_bound,
            coset_closure: self.coset_bound,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the S-ring axioms
    Validate { input: Option<PathBuf> },
    /// Smallest S-ring containing the seed sets
    Closure {
        #[arg(long)]
        n: u32,
        /// Seeds as semicolon-separated residue lists, e.g. "1,4;2"
        #[arg(long, default_value = "")]
        seed_sets: String,
    },
    /// Structural summary and separability decision
    Analyze {
        input: Option<PathBuf>,
        /// Include per-phase timings
        #[arg(long)]
        timings: bool,
    },
    /// Decide separability with the multiplier criterion
    Separability {
        input: Option<PathBuf>,
        /// Also run the brute-force isomorphism oracle
        #[arg(long)]
        oracle: bool,
    },
    /// The dual S-ring
    Dual { input: Option<PathBuf> },
    /// All S-rings over Z_n
    Enumerate {
        n: u32,
        /// Print only the number of S-rings
        #[arg(long)]
        count: bool,
    },
    /// Run a verification suite
    Verify {
        /// axioms, pgroups, duality, phi-iso, oracle, coset-closure, reduction, projective, burnside
        suite: Suite,
        #[arg(long, default_value_t = 12)]
        max_n: u32,
        #[arg(long, default_value_t = VerifyConfig::default().seed)]
        seed: u64,
    },
}

enum Failure {
    Input(String),
    Limit(String),
    Suite,
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::LimitExceeded { .. } => Failure::Limit(e.to_string()),
            Error::NotADivisor { .. }
            | Error::ZeroOrder
            | Error::NotAPartition { .. }
            | Error::MissingIdentityClass { .. }
            | Error::NotInverseClosed { .. }
            | Error::NotMultiplicativelyClosed { .. }
            | Error::NotASection { .. }
            | Error::NotCoprime { .. }
            | Error::OrderMismatch(..)
            | Error::InvalidInput(_) => Failure::Input(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<SRing, Failure> {
    let text = match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?
        }
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
            s
        }
    };
    let raw: SRingJson = serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("malformed S-ring JSON: {e}")))?;
    Ok(SRing::try_from(raw)?)
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable")
}

fn print_sring(a: &SRing, json: bool) {
    if json {
        println!("{}", to_json(a));
    } else {
        println!("{a:?}");
    }
}

#[derive(Serialize)]
struct SeparabilityOutput<'a> {
    #[serde(flatten)]
    report: &'a SeparabilityReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<bool>,
}

fn run(cli: Cli) -> Result<(), Failure> {
    let json = cli.json;
    let limits = cli.limits.limits();
    match cli.command {
        Command::Validate { input } => {
            let a = read_input(&input)?;
            if json {
                println!(
                    "{}",
                    to_json(&serde_json::json!({"valid": true, "n": a.n(), "rank": a.rank()}))
                );
            } else {
                println!("valid S-ring over Z_{} of rank {}", a.n(), a.rank());
            }
        }
        Command::Closure { n, seed_sets } => {
            let seeds = parse_seed_sets(n, &seed_sets)?;
            print_sring(&closure(n, &seeds), json);
        }
        Command::Analyze { input, timings } => {
            let a = read_input(&input)?;
            let r = analyze(&a, timings)?;
            if json {
                println!("{}", to_json(&r));
            } else {
                println!("n: {}", r.n);
                println!("rank: {}", r.rank);
                println!("A-subgroups: {:?}", r.a_subgroups);
                println!("sections: {}", r.sections);
                println!("principal sections: {}", join(&r.principal_sections));
                println!("frs0: {}", join(&r.frs0));
                println!("quasidense: {}", r.quasidense);
                if let Some(w) = &r.singular {
                    println!(
                        "singular class: smallest {}, largest {}",
                        w.smallest, w.largest
                    );
                }
                if !r.reduction_trace.is_empty() {
                    println!("extended at: {}", join(&r.reduction_trace));
                }
                println!("mult order: {}", r.mult_order);
                println!("fmult order: {}", r.fmult_order);
                println!("separable: {}", r.separable);
                if let Some(t) = &r.timings {
                    println!(
                        "timings: structure {}us, separability {}us",
                        t.structure_us, t.separability_us
                    );
                }
            }
        }
        Command::Separability { input, oracle } => {
            let a = read_input(&input)?;
            let report = is_separable(&a)?;
            let oracle = if oracle {
                Some(is_separable_bruteforce(&a, &limits)?)
            } else {
                None
            };
            if json {
                println!(
                    "{}",
                    to_json(&SeparabilityOutput {
                        report: &report,
                        oracle
                    })
                );
            } else {
                println!("separable: {}", report.separable);
                println!(
                    "mult order: {}, fmult order: {}, image: {}",
                    report.mult_order, report.fmult_order, report.image_order
                );
                if !report.reduction_trace.is_empty() {
                    println!("reduced to {:?}", report.reduct);
                }
                if let Some(o) = oracle {
                    println!("oracle: {o}");
                }
            }
        }
        Command::Dual { input } => {
            let a = read_input(&input)?;
            print_sring(&dual_sring(&a)?, json);
        }
        Command::Enumerate { n, count } => {
            if n == 0 {
                return Err(Error::ZeroOrder.into());
            }
            let all = enumerate_srings(n, &limits)?;
            if count {
                println!("{}", all.len());
            } else if json {
                println!("{}", to_json(&all));
            } else {
                for a in &all {
                    println!("{a:?}");
                }
            }
        }
        Command::Verify { suite, max_n, seed } => {
            let cfg = VerifyConfig {
                limits,
                seed,
                ..VerifyConfig::default()
            };
            let r = verify::run(suite, max_n, &cfg)?;
            if json {
                println!("{}", to_json(&r));
            } else {
                let status = if r.passed() { "pass" } else { "FAIL" };
                println!(
                    "{} (max n {}): {status}, {} checked, {} failures",
                    r.suite,
                    r.max_n,
                    r.checked,
                    r.failures.len()
                );
                for f in &r.failures {
                    println!("  n={} {:?}: {}", f.n, f.classes, f.reason);
                }
                for note in &r.notes {
                    println!("  note: {note}");
                }
            }
            if !r.passed() {
                return Err(Failure::Suite);
            }
        }
    }
    Ok(())
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    let report = |kind: &str, msg: &str| {
        if json {
            println!(
                "{}",
                to_json(&serde_json::json!({"error": kind, "message": msg}))
            );
        }
        eprintln!("error: {msg}");
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Suite) => ExitCode::from(1),
        Err(Failure::Internal(msg)) => {
            report("internal", &msg);
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            report("input", &msg);
            ExitCode::from(2)
        }
        Err(Failure::Limit(msg)) => {
            report("limit", &msg);
            ExitCode::from(3)
        }
    }
}
