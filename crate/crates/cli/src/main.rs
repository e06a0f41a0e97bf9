use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sesh_core::BigInt;

mod commands;

#[derive(Debug, Parser)]
#[command(name = "sesh", version, about = "Seshadri constants and principal polarizations on E1 x E2")]
struct Cli {
    /// Print a JSON record instead of a table.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Basis {
    /// a1·F1 + a2·F2 + a3·∇
    Nabla,
    /// c1·F1 + c2·F2 + c3·Δ
    Delta,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// ε*(L), L² and the Seshadri constant (or its bounds) of one class.
    Eps {
        #[arg(long, value_parser = parse_int)]
        d: BigInt,
        /// Coefficients `x,y,z`; negative entries are allowed.
        #[arg(long, value_parser = parse_class, allow_hyphen_values = true)]
        class: [BigInt; 3],
        #[arg(long, value_enum, default_value = "nabla")]
        basis: Basis,
    },
    /// Every ample class with |a_i| ≤ bound: submaximality counts and ε* histogram.
    Survey {
        #[arg(long, value_parser = parse_int)]
        d: BigInt,
        #[arg(long, value_parser = parse_int)]
        bound: BigInt,
    },
    /// Principal polarizations of E1 x E2 as reduced forms.
    Pp {
        #[arg(long, value_parser = parse_int)]
        d: BigInt,
    },
    /// Degrees d ≤ limit without an irreducible principal polarization.
    Kani {
        #[arg(long, value_parser = parse_int)]
        limit: BigInt,
    },
    /// Idoneal numbers ≤ limit.
    Idoneal {
        #[arg(long, value_parser = parse_int)]
        limit: BigInt,
    },
    /// The d ≥ 3 bundle without weakly submaximal curves, with its certificate.
    Counterexample {
        #[arg(long, value_parser = parse_int)]
        d: BigInt,
    },
    /// Run the acceptance checks.
    Verify {
        /// `all`, or a check name or number.
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

fn parse_int(s: &str) -> Result<BigInt, String> {
    s.trim()
        .parse::<BigInt>()
        .map_err(|_| format!("`{s}` is not an integer"))
}

fn parse_class(s: &str) -> Result<[BigInt; 3], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated integers, got `{s}`"));
    }
    let mut out: [BigInt; 3] = Default::default();
    for (slot, part) in out.iter_mut().zip(parts) {
        *slot = parse_int(part)?;
    }
    Ok(out)
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
    let output = match cli.command {
        Command::Eps { d, class, basis } => commands::eps(&d, &class, basis),
        Command::Survey { d, bound } => commands::survey(&d, &bound),
        Command::Pp { d } => commands::pp(&d),
        Command::Kani { limit } => commands::kani(&limit),
        Command::Idoneal { limit } => commands::idoneal(&limit),
        Command::Counterexample { d } => commands::counterexample(&d),
        Command::Verify { suite } => commands::verify(&suite),
    };
    match output {
        Ok(out) => {
            if cli.json {
                println!("{}", commands::render_json(&out.record));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.status)
        }
        Err(commands::Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(commands::Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
