//! Command-line front end: winding reports, spectrum summaries,
//! extendibility verdicts, decompositions, factorization, witness search,
//! certification, classification, and reproduction scenarios.
//!
//! Exit codes: 0 success/certified, 2 witness found, 3 inconclusive,
//! 64 usage error, 65 data error.

mod input;
mod report;
mod scenarios;

use std::io::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use windext::catalog::{list_cases, make_case, parse_boundary_nodes, parse_located_factors};
use windext::criteria::{
    certify_meromorphic_extension, classify_probe_factors, probe_winding, shift_criterion_test,
    witness_search, ProbeFamily,
};
use windext::decompose::{factorize_nonvanishing, newton_decompose};
use windext::error::Error;
use windext::extension::{meromorphic_test, Verdict};
use windext::grid::CircleGrid;
use windext::io::write_samples_csv;
use windext::series::analyze;
use windext::winding::{effective_order, winding_number, Delta};

use input::InputArgs;
use report::{
    certification, certification_exit, complex_line, line, poles, poly_lines, verdict_token,
    winding_report, witness_report,
};

const EXIT_WITNESS: i32 = 2;
const EXIT_USAGE: i32 = 64;
const EXIT_DATA: i32 = 65;

/// An error already classified into an exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: String) -> Self {
        Self {
            code: EXIT_USAGE,
            message,
        }
    }

    pub fn data(message: String) -> Self {
        Self {
            code: EXIT_DATA,
            message,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::data(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "windext",
    about = "Winding-number analysis and extendibility certification for boundary functions on the unit circle",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    /// Probes of the form P·f + 1.
    Pf1,
    /// Probes of the form f + Π·p.
    Fpip,
}

#[derive(Subcommand)]
enum Command {
    /// Winding number of the samples by argument continuation.
    Winding {
        #[command(flatten)]
        input: InputArgs,
        /// Write cumulative phase per node to a CSV file.
        #[arg(long, value_name = "FILE")]
        trace: Option<PathBuf>,
        /// Relative zero guard.
        #[arg(long, default_value_t = 1e-9)]
        delta_rel: f64,
    },
    /// Fourier spectrum summary; optionally dump coefficients.
    Fourier {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Holomorphic/meromorphic extendibility with a pole budget.
    Extend {
        #[command(flatten)]
        input: InputArgs,
        /// Pole budget J.
        #[arg(long, default_value_t = 0)]
        budget: usize,
        /// Rank tolerance relative to the top singular value.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Write pole estimates to a CSV file.
        #[arg(long, value_name = "FILE")]
        poles: Option<PathBuf>,
    },
    /// Newton-form decomposition over boundary nodes.
    Decompose {
        #[command(flatten)]
        input: InputArgs,
        /// Boundary nodes as `point:mult,point:mult`.
        #[arg(long)]
        nodes: String,
        /// Write remainder samples to a CSV file.
        #[arg(long, value_name = "FILE")]
        remainder: Option<PathBuf>,
    },
    /// Zero-free factorization F·conj(G)·z^N of nonvanishing samples.
    Factorize {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 1e-9)]
        delta_rel: f64,
    },
    /// Search for a probe with winding at or below -(J+1).
    Witness {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "pf1")]
        family: FamilyArg,
        /// Pole budget J of the criterion under test.
        #[arg(long = "budget-j", default_value_t = 0)]
        budget_j: usize,
        /// Number of probes to try.
        #[arg(long, default_value_t = 10_000)]
        probes: usize,
        /// Defaults to $WINDEXT_SEED, then 0.
        #[arg(long)]
        seed: Option<u64>,
        /// Probe degree cap.
        #[arg(long, default_value_t = 16)]
        max_degree: usize,
        /// Fixed factors for the fpip family, `point:mult:loc` list.
        #[arg(long, value_name = "FACTORS")]
        factors: Option<String>,
    },
    /// Certify a meromorphic extension over boundary nodes.
    Certify {
        #[command(flatten)]
        input: InputArgs,
        /// Boundary nodes as `point:mult,...`.
        #[arg(long)]
        nodes: String,
        /// Pole budget J.
        #[arg(long, default_value_t = 0)]
        budget: usize,
    },
    /// Classify f/Π₁ over a mixed factor set.
    Classify {
        #[command(flatten)]
        input: InputArgs,
        /// Factors as `point:mult:loc` with loc in `in|bd|out`.
        #[arg(long)]
        pi: String,
        #[arg(long, default_value_t = 0)]
        budget: usize,
    },
    /// Constant-shift certification test.
    ShiftTest {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 2000)]
        probes: usize,
        /// Defaults to $WINDEXT_SEED, then 0.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// List catalog cases or emit one as CSV.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Run a named reproduction scenario.
    Reproduce {
        /// One of: paper-7, prop-2-1, thm-8-2, lemma-4-4.
        scenario: String,
        #[arg(long, default_value_t = 2048)]
        grid_n: usize,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List case names with parameter summaries.
    List,
    /// Sample a case and write it to CSV.
    Emit {
        name: String,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        #[arg(long = "param", value_name = "K=V")]
        params: Vec<String>,
        #[arg(long, default_value_t = 2048)]
        grid_n: usize,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not usage errors.
            if e.use_stderr() {
                eprintln!("{e}");
                std::process::exit(EXIT_USAGE);
            }
            print!("{e}");
            std::process::exit(0);
        }
    };
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            std::process::exit(e.code);
        }
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Winding {
            input,
            trace,
            delta_rel,
        } => {
            let f = input.load()?;
            let rep = winding_number(&f, Delta::Relative(delta_rel))?;
            winding_report(&rep);
            if let Some(path) = trace {
                write_phase_trace(&path, &f)?;
            }
            Ok(0)
        }
        Command::Fourier { input, out } => {
            let f = input.load()?;
            let s = analyze(&f);
            line("order", s.order());
            line("energy", s.energy());
            line("negative_energy", s.negative_energy());
            line("effective_order", effective_order(&s, 1e-13));
            if let Some(path) = out {
                let mut w = std::io::BufWriter::new(
                    std::fs::File::create(&path).map_err(Error::from)?,
                );
                writeln!(w, "k,re,im").map_err(Error::from)?;
                for (k, c) in s.modes() {
                    writeln!(w, "{k},{},{}", c.re, c.im).map_err(Error::from)?;
                }
            }
            Ok(0)
        }
        Command::Extend {
            input,
            budget,
            tol,
            poles: poles_out,
        } => {
            if tol <= 0.0 {
                return Err(CliError::usage("--tol must be positive".into()));
            }
            let f = input.load()?;
            let rep = meromorphic_test(&f, budget, tol)?;
            line("verdict", verdict_token(&rep.verdict));
            if let Verdict::MeromorphicAtMost(r) = rep.verdict {
                line("rank", r);
            }
            line("pole_count", rep.pole_count);
            line("negative_energy", rep.negative_energy);
            if let Some(top) = rep.hankel_singular_values.first() {
                line("hankel_sigma_1", top);
            }
            poles(&rep.pole_estimates);
            if let Some(path) = poles_out {
                let mut w = std::io::BufWriter::new(
                    std::fs::File::create(&path).map_err(Error::from)?,
                );
                writeln!(w, "re,im,multiplicity").map_err(Error::from)?;
                for &(p, m) in &rep.pole_estimates {
                    writeln!(w, "{},{},{m}", p.re, p.im).map_err(Error::from)?;
                }
            }
            Ok(0)
        }
        Command::Decompose {
            input,
            nodes,
            remainder,
        } => {
            let f = input.load()?;
            let set = parse_boundary_nodes(&nodes)?;
            let d = newton_decompose(&f, &set)?;
            line("n_total", set.total_multiplicity());
            for (k, a) in d.coeffs.iter().enumerate() {
                complex_line(&format!("a_{k}"), *a);
            }
            poly_lines("jet", &d.jet_polynomial);
            let recon = d.reconstruct()?;
            line(
                "reconstruction_residual",
                recon.max_abs_diff(&f) / f.max_abs().max(1e-300),
            );
            if let Some(path) = remainder {
                write_samples_csv(&path, &d.remainder)?;
            }
            Ok(0)
        }
        Command::Factorize { input, delta_rel } => {
            let f = input.load()?;
            let fact = factorize_nonvanishing(&f, Delta::Relative(delta_rel))?;
            line("winding", fact.winding);
            line("residual", fact.residual);
            line("grid_n", fact.grid_n);
            emit_series("f", &fact.analytic);
            emit_series("g", &fact.anti);
            Ok(0)
        }
        Command::Witness {
            input,
            family,
            budget_j,
            probes,
            seed,
            max_degree,
            factors,
        } => {
            let f = input.load()?;
            let family = match family {
                FamilyArg::Pf1 => ProbeFamily::pf_plus_one(budget_j),
                FamilyArg::Fpip => {
                    let set = match &factors {
                        Some(text) => parse_located_factors(text)?,
                        None => {
                            return Err(CliError::usage(
                                "--family fpip requires --factors".into(),
                            ))
                        }
                    };
                    ProbeFamily::f_plus_pi_p(set, budget_j)
                }
            }
            .with_max_degree(max_degree);
            let result = witness_search(&f, &family, probes, resolve_seed(seed));
            witness_report(&result);
            if result.found {
                // Surface the re-verified composite for the record.
                let rep = probe_winding(&f, &result.probe, &family, Delta::default())?;
                line("verified_winding", rep.winding);
                Ok(EXIT_WITNESS)
            } else {
                Ok(0)
            }
        }
        Command::Certify {
            input,
            nodes,
            budget,
        } => {
            let f = input.load()?;
            let set = parse_boundary_nodes(&nodes)?;
            let result = certify_meromorphic_extension(&f, &set, budget)?;
            certification(&result);
            Ok(certification_exit(&result))
        }
        Command::Classify { input, pi, budget } => {
            let f = input.load()?;
            let set = parse_located_factors(&pi)?;
            let result = classify_probe_factors(&f, &set, budget)?;
            certification(&result);
            Ok(certification_exit(&result))
        }
        Command::ShiftTest {
            input,
            probes,
            seed,
        } => {
            let f = input.load()?;
            let result = shift_criterion_test(&f, probes, resolve_seed(seed))?;
            certification(&result);
            Ok(certification_exit(&result))
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                for (name, description) in list_cases() {
                    line(name, description);
                }
                Ok(0)
            }
            CatalogAction::Emit {
                name,
                out,
                params,
                grid_n,
            } => {
                let grid = CircleGrid::new(grid_n)?;
                let params: Result<Vec<(String, String)>, CliError> = params
                    .iter()
                    .map(|p| {
                        p.split_once('=')
                            .map(|(k, v)| (k.to_string(), v.to_string()))
                            .ok_or_else(|| {
                                CliError::usage(format!("parameter `{p}` must be key=value"))
                            })
                    })
                    .collect();
                let case = make_case(&name, &params?, grid)?;
                write_samples_csv(&out, &case.f)?;
                line("name", case.name);
                line("written", out.display());
                Ok(0)
            }
        },
        Command::Reproduce { scenario, grid_n } => {
            let grid = CircleGrid::new(grid_n)?;
            scenarios::run(&scenario, grid)
        }
    }
}

/// Flag wins; otherwise `$WINDEXT_SEED`, otherwise 0.
fn resolve_seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var("WINDEXT_SEED")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(0)
}

fn emit_series(prefix: &str, s: &windext::series::FourierSeries) {
    let floor = 1e-12 * s.max_coeff_abs();
    for (k, c) in s.modes() {
        if c.norm() > floor {
            println!("{prefix}_{k}={},{}", c.re, c.im);
        }
    }
}

fn write_phase_trace(path: &std::path::Path, f: &windext::grid::BoundaryFunction) -> Result<(), CliError> {
    let values = f.values();
    let mut w = std::io::BufWriter::new(std::fs::File::create(path).map_err(Error::from)?);
    writeln!(w, "theta,cumulative_phase").map_err(Error::from)?;
    let mut phase = values[0].arg();
    for j in 0..values.len() {
        if j > 0 {
            phase += (values[j] / values[j - 1]).arg();
        }
        writeln!(w, "{},{phase}", f.grid().theta(j)).map_err(Error::from)?;
    }
    Ok(())
}
