use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use num_traits::ToPrimitive;
use serde_json::json;

use hodge_forge::characters::{decompose, ext_character, sym_character};
use hodge_forge::dsl::evaluate_str;
use hodge_forge::report::{emit_report, exit_code, Format};
use hodge_forge::ring::Space;
use hodge_forge::verifier::{run_all, run_check, CheckName, MAX_T};
use hodge_forge::{Error, Result};

/// Largest rank accepted by `decompose`.
const MAX_N: usize = 6;

#[derive(Parser)]
#[command(name = "hodge-forge", version, about = "Symbolic intersection theory and C_n characters")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suite or a single check.
    #[command(group(ArgGroup::new("target").required(true).args(["n", "check"])))]
    Verify {
        /// Comma-separated list of n, e.g. `2,3,4`.
        #[arg(long, value_delimiter = ',')]
        n: Vec<i64>,
        #[arg(long, requires = "params")]
        check: Option<CheckName>,
        /// Comma-separated `key=value` pairs, e.g. `n=2,i_max=10`.
        #[arg(long, requires = "check")]
        params: Option<String>,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Evaluate a DSL expression on a space.
    Eval {
        #[arg(long)]
        space: Space,
        #[arg(long)]
        n: u32,
        expr: String,
    },
    /// Decompose an exterior or symmetric power of the standard representation.
    #[command(group(ArgGroup::new("power").required(true).args(["ext", "sym"])))]
    Decompose {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ext: Option<u32>,
        #[arg(long)]
        sym: Option<u32>,
    },
    /// Run the full suite for n = 2, 3, 4 and emit the report.
    Report {
        #[arg(long, default_value = "text")]
        format: Format,
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        n: Vec<i64>,
    },
}

fn parse_params(text: &str) -> Result<BTreeMap<String, i64>> {
    text.split(',')
        .filter(|kv| !kv.trim().is_empty())
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Guard(format!("parameter `{kv}` is not key=value")))?;
            let v = v
                .trim()
                .parse()
                .map_err(|_| Error::Guard(format!("parameter `{k}` has non-integer value `{v}`")))?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

fn decomposition_json(n: usize, ext: Option<u32>, sym: Option<u32>) -> Result<serde_json::Value> {
    if !(1..=MAX_N).contains(&n) {
        return Err(Error::Guard(format!("n = {n} outside 1..={MAX_N}")));
    }
    let (label, chi) = match (ext, sym) {
        (Some(j), _) => {
            if j as usize > 2 * n {
                return Err(Error::Guard(format!("j = {j} exceeds 2n = {}", 2 * n)));
            }
            (format!("ext^{j}"), ext_character(n, j))
        }
        (_, Some(t)) => {
            if i64::from(t) > MAX_T {
                return Err(Error::Guard(format!("t = {t} exceeds {MAX_T}")));
            }
            (format!("sym^{t}"), sym_character(n, t))
        }
        _ => unreachable!("clap requires --ext or --sym"),
    };
    let decomp = decompose(n, &chi)?;
    Ok(json!({
        "n": n,
        "representation": label,
        "dimension": decomp.dimension().to_u64(),
        "decomposition": decomp,
    }))
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Verify {
            n,
            check,
            params,
            format,
        } => {
            let reports = match check {
                Some(name) => vec![run_check(name, &parse_params(params.as_deref().unwrap_or(""))?)?],
                None => run_all(&n)?,
            };
            print!("{}", emit_report(&reports, format));
            Ok(exit_code(&reports))
        }
        Command::Report { format, n } => {
            let reports = run_all(&n)?;
            print!("{}", emit_report(&reports, format));
            Ok(exit_code(&reports))
        }
        Command::Eval { space, n, expr } => {
            println!("{}", evaluate_str(&expr, space, n)?);
            Ok(0)
        }
        Command::Decompose { n, ext, sym } => {
            let value = decomposition_json(n, ext, sym)?;
            println!("{}", serde_json::to_string_pretty(&value).expect("json"));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
