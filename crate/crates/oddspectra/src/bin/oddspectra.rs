//! Command-line surface: field inspection, single-function analysis,
//! closed-form scans, and character-sum queries.
//!
//! Exit status: 0 on success (including empty scans), 1 when any proved
//! claim mismatched, 2 on usage or construction errors.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{ArgGroup, Parser, Subcommand};

use oddspectra::field::Field;
use oddspectra::output::{
    self, AnalyzeRequest, CharsumMode, OutputFormat,
};
use oddspectra::verify::{self, ResidueClass, ScanConfig, Theorem, UPolicy};

#[derive(Parser)]
#[command(
    name = "oddspectra",
    version,
    about = "Differential and boomerang properties of x^r*(1 + u*chi(x)) over odd-characteristic fields"
)]
struct Cli {
    /// Output rendering.
    #[arg(long, value_enum, global = true, default_value_t = OutputFormat::Markdown)]
    format: OutputFormat,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for the randomized spot checks; fixed default for reproducibility.
    #[arg(long, global = true, default_value_t = verify::DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Field construction details and sign-class sizes.
    FieldInfo {
        /// Characteristic (odd prime).
        p: u64,
        /// Extension degree.
        #[arg(default_value_t = 1)]
        n: u32,
    },
    /// Spectra, uniformities, locality, and quadrant tables for one function.
    Analyze {
        p: u64,
        #[arg(default_value_t = 1)]
        n: u32,
        /// Exponent; defaults to (q+1)/4.
        #[arg(long)]
        r: Option<u64>,
        /// Coefficient u: canonical index, or a negative integer.
        #[arg(long, allow_negative_numbers = true)]
        u: i64,
        /// Difference spectrum, uniformity, locality.
        #[arg(long)]
        diff: bool,
        /// Pair spectrum and uniformity.
        #[arg(long)]
        boom: bool,
        /// Per-b sign-class solution table.
        #[arg(long)]
        quadrants: bool,
        /// Restrict the quadrant table to these b values; repeatable.
        #[arg(long = "b", allow_negative_numbers = true)]
        b: Vec<i64>,
        /// Largest q for which the full pair table is walked.
        #[arg(long, default_value_t = 1024)]
        full_bct_cap: u64,
    },
    /// Compare brute force against the closed forms over a field range.
    Scan {
        #[arg(long, default_value_t = 200)]
        q_max: u64,
        #[arg(long, value_enum)]
        theorem: Theorem,
        /// Extra residue filter on top of the claim's own class.
        #[arg(long, value_enum)]
        filter: Option<ResidueClass>,
        #[arg(long, value_enum, default_value_t = UPolicy::Auto)]
        u_policy: UPolicy,
        /// Worker threads; 0 uses all logical cores.
        #[arg(long, env = "ODDSPECTRA_JOBS", default_value_t = 0)]
        jobs: usize,
        #[arg(long, default_value_t = 1024)]
        full_bct_cap: u64,
        /// Permit q_max beyond 10000 (hours-scale sweeps).
        #[arg(long)]
        allow_long_run: bool,
    },
    /// Character sums: identity suite, correction term, or one polynomial.
    #[command(group(ArgGroup::new("mode").required(true)))]
    Charsums {
        p: u64,
        #[arg(default_value_t = 1)]
        n: u32,
        /// Run the stock identity suite.
        #[arg(long, group = "mode")]
        identity_suite: bool,
        /// The restricted cubic sum steering the pair spectrum.
        #[arg(long, group = "mode")]
        gamma: bool,
        /// Comma-separated coefficients, constant first; negative entries
        /// are small integers, the rest canonical indices.
        #[arg(long, group = "mode", allow_hyphen_values = true)]
        poly: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let fmt = cli.format;
    let (text, mismatched) = match cli.command {
        Command::FieldInfo { p, n } => {
            let fld = Field::new(p, n).map_err(|e| e.to_string())?;
            let doc = output::build_field_info_doc(&fld);
            (output::render_field_info(&doc, fmt), false)
        }
        Command::Analyze {
            p,
            n,
            r,
            u,
            diff,
            boom,
            quadrants,
            b,
            full_bct_cap,
        } => {
            let fld = Arc::new(Field::new(p, n).map_err(|e| e.to_string())?);
            let u_index = resolve_element(&fld, u)?;
            let b_indices = b
                .iter()
                .map(|&v| resolve_element(&fld, v))
                .collect::<Result<Vec<_>, _>>()?;
            // With no section chosen, the difference view is the default.
            let any = diff || boom || quadrants;
            let req = AnalyzeRequest {
                r,
                u_index,
                diff: diff || !any,
                boom,
                quadrants,
                b_indices,
                full_bct_cap,
            };
            let doc = output::build_analyze_doc(&fld, &req).map_err(|e| e.to_string())?;
            (output::render_analyze(&doc, fmt), false)
        }
        Command::Scan {
            q_max,
            theorem,
            filter,
            u_policy,
            jobs,
            full_bct_cap,
            allow_long_run,
        } => {
            if q_max > 10_000 && !allow_long_run {
                return Err(format!(
                    "q_max {} is an hours-scale sweep; pass --allow-long-run to confirm",
                    q_max
                ));
            }
            let cfg = ScanConfig {
                q_max,
                theorem,
                filter,
                u_policy,
                jobs,
                seed: cli.seed,
                full_bct_cap,
            };
            let reports = verify::scan(&cfg).map_err(|e| e.to_string())?;
            let doc = output::build_scan_doc(cfg, reports);
            let bad = !doc.all_matched;
            (output::render_scan(&doc, fmt), bad)
        }
        Command::Charsums {
            p,
            n,
            identity_suite,
            gamma,
            poly,
        } => {
            let fld = Field::new(p, n).map_err(|e| e.to_string())?;
            let mode = if identity_suite {
                CharsumMode::Suite { seed: cli.seed }
            } else if gamma {
                CharsumMode::Gamma
            } else {
                let coeffs = parse_poly(&fld, poly.as_deref().unwrap_or_default())?;
                CharsumMode::Poly { coeffs }
            };
            let doc = output::build_charsum_doc(&fld, &mode).map_err(|e| e.to_string())?;
            let bad = !doc.all_matched;
            (output::render_charsums(&doc, fmt), bad)
        }
    };
    match &cli.out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| format!("writing {:?}: {}", path, e))?
        }
        None => print!("{}", text),
    }
    Ok(if mismatched {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

/// Negative values embed as integers; non-negative ones are canonical
/// indices and must be in range.
fn resolve_element(fld: &Field, v: i64) -> Result<u64, String> {
    if v < 0 {
        Ok(fld.embed(v).index())
    } else {
        fld.element(v as u64)
            .map(|e| e.index())
            .map_err(|e| e.to_string())
    }
}

fn parse_poly(fld: &Field, text: &str) -> Result<Vec<u32>, String> {
    let cleaned = text.replace('\u{2212}', "-");
    let mut coeffs = Vec::new();
    for part in cleaned.split(',') {
        let part = part.trim();
        if part.is_empty() {
            return Err("empty coefficient in polynomial".to_string());
        }
        let v: i64 = part
            .parse()
            .map_err(|_| format!("bad coefficient {:?}", part))?;
        coeffs.push(resolve_element(fld, v)? as u32);
    }
    Ok(coeffs)
}
