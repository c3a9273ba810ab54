#![allow(clippy::result_large_err)]

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use maslov_core::format::{parse_trace, serialize_trace};
use maslov_core::generate::{generate, Profile};
use maslov_core::maslov::{
    maslov_direct, maslov_of_word, maslov_recursive, maslov_via_arc_formula,
    maslov_via_trace_formula,
};
use maslov_core::reduction::CrossingWord;
use maslov_core::render::write_svg;
use maslov_core::trace::Trace;
use maslov_core::verify::{run_verify, VerifyOptions};
use maslov_core::Error;

#[derive(Parser)]
#[command(name = "maslov", version, about = "Viterbo-Maslov index of traces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Formula,
    Arc,
    Direct,
    Recursive,
    /// Run every method and require agreement.
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the index of a trace document.
    Compute {
        /// Trace document; `-` or absent reads stdin.
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "formula")]
        method: Method,
    },
    /// Run the property suites over generated traces.
    Verify {
        #[arg(long, default_value_t = 100)]
        n: u64,
        #[arg(long, env = "MASLOV_SEED", default_value_t = 0)]
        seed: u64,
        /// Profiles to run; all of them when omitted.
        #[arg(long, value_parser = parse_profile)]
        profile: Vec<Profile>,
        /// Flip the sign of the trace formula.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Draw a trace document as SVG.
    Render {
        input: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Reduce a crossing word read from stdin.
    Reduce,
    /// Print a generated trace document.
    Generate {
        #[arg(long, env = "MASLOV_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = parse_profile, default_value = "plane-arc")]
        profile: Profile,
    },
}

fn parse_profile(s: &str) -> Result<Profile, String> {
    s.parse::<Profile>().map_err(|e| e.to_string())
}

enum Failure {
    Check(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read_input(input: Option<&PathBuf>) -> Result<String, Failure> {
    let mut text = String::new();
    match input {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p)
                .map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        }
    }
    Ok(text)
}

fn compute(t: &Trace, method: Method) -> Result<(), Failure> {
    let single = |m: Method| match m {
        Method::Formula => maslov_via_trace_formula(t),
        Method::Arc => maslov_via_arc_formula(t),
        Method::Direct => maslov_direct(t),
        Method::Recursive | Method::All => maslov_recursive(t),
    };
    if method != Method::All {
        println!("{}", single(method)?);
        return Ok(());
    }
    let mut values = Vec::new();
    for (name, m) in [
        ("formula", Method::Formula),
        ("arc", Method::Arc),
        ("direct", Method::Direct),
        ("recursive", Method::Recursive),
    ] {
        match single(m) {
            Ok(v) => {
                println!("{name:10} {v}");
                values.push(v);
            }
            Err(e) => println!("{name:10} n/a ({e})"),
        }
    }
    if values.windows(2).any(|w| w[0] != w[1]) {
        return Err(Failure::Check("methods disagree".into()));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Compute { input, method } => {
            let t = parse_trace(&read_input(input.as_ref())?)?;
            compute(&t, method)
        }
        Command::Verify {
            n,
            seed,
            profile,
            inject_fault,
        } => {
            let profiles = if profile.is_empty() {
                Profile::ALL.to_vec()
            } else {
                profile
            };
            let report = run_verify(&profiles, n, seed, VerifyOptions { inject_fault });
            print!("{report}");
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Check(format!(
                    "{} checks failed",
                    report.failures().count()
                )))
            }
        }
        Command::Render { input, out } => {
            let t = parse_trace(&read_input(input.as_ref())?)?;
            write_svg(&t, &out)?;
            Ok(())
        }
        Command::Reduce => {
            let word = CrossingWord::parse(&read_input(None)?)?;
            let reduced = word.reduce();
            print!("{}", reduced.to_text());
            let cases = reduced.classify()?;
            let names: Vec<String> = cases.iter().map(|c| c.number().to_string()).collect();
            println!("# cases {}", names.join(" "));
            let mu = maslov_of_word(&reduced.b_positions(), &reduced.b_ups())?;
            println!("# index {mu}");
            Ok(())
        }
        Command::Generate { seed, profile } => {
            print!("{}", serialize_trace(&generate(seed, profile)?));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
