//! Command-line front door: run the verification pipeline on catalog or
//! user geometries and evaluate the eigenvalue bounds directly.
//!
//! Exit codes: 0 = all checks pass, 1 = a mathematical assertion failed,
//! 2 = input error (unknown entry, schema violation, bad flags).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use spinlab::bounds::{self, BoundsInput};
use spinlab::catalog;
use spinlab::report::{self, Geometry, DEFAULT_ASSERT_TOL};
use spinlab::schema::{export_entry, GeometryFile};

#[derive(Parser)]
#[command(name = "spinlab", version, about = "Spin geometry of connections with parallel skew torsion")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List or run the built-in example geometries
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Run the verification pipeline on a JSON geometry file
    Analyze {
        /// Path to a geometry file
        path: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Tolerance for floating assertions
        #[arg(long, default_value_t = DEFAULT_ASSERT_TOL)]
        tol: f64,
    },
    /// Evaluate the eigenvalue bounds from explicit inputs
    Bounds {
        /// Frame dimension n
        #[arg(long)]
        n: usize,
        /// Largest block dimension n_k
        #[arg(long)]
        nk: usize,
        /// Minimum Riemannian scalar curvature
        #[arg(long)]
        scal: f64,
        /// Squared torsion norm ‖T‖²
        #[arg(long)]
        t2: f64,
        /// Comma-separated squared torsion eigenvalues μ²
        #[arg(long, value_delimiter = ',', required = true)]
        mu2: Vec<f64>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Print all entry names
    List,
    /// Run the verification pipeline on an entry
    Run {
        name: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Tolerance for floating assertions
        #[arg(long, default_value_t = DEFAULT_ASSERT_TOL)]
        tol: f64,
    },
    /// Export an entry in the JSON geometry format
    Export {
        name: String,
        /// Write to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

const EXIT_ASSERTION_FAILED: u8 = 1;
const EXIT_INPUT_ERROR: u8 = 2;

fn run_pipeline(geometry: &Geometry, format: Format, tol: f64) -> ExitCode {
    match report::analyze(geometry, tol) {
        Ok(report) => {
            match format {
                Format::Table => print!("{}", report::render_table(&report)),
                Format::Json => println!("{}", report::to_json_string(&report)),
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_ASSERTION_FAILED)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(EXIT_ASSERTION_FAILED)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                for name in catalog::names() {
                    println!("{name}");
                }
                ExitCode::SUCCESS
            }
            CatalogAction::Run { name, format, tol } => match catalog::get(&name) {
                Ok(entry) => run_pipeline(&Geometry::from_entry(&entry), format, tol),
                Err(err) => {
                    eprintln!("error: {err}");
                    ExitCode::from(EXIT_INPUT_ERROR)
                }
            },
            CatalogAction::Export { name, out } => match catalog::get(&name) {
                Ok(entry) => {
                    let text = report::to_json_string(&export_entry(&entry));
                    match out {
                        Some(path) => {
                            if let Err(err) = std::fs::write(&path, text + "\n") {
                                eprintln!("error: cannot write {}: {err}", path.display());
                                return ExitCode::from(EXIT_INPUT_ERROR);
                            }
                            ExitCode::SUCCESS
                        }
                        None => {
                            println!("{text}");
                            ExitCode::SUCCESS
                        }
                    }
                }
                Err(err) => {
                    eprintln!("error: {err}");
                    ExitCode::from(EXIT_INPUT_ERROR)
                }
            },
        },
        Command::Analyze { path, format, tol } => {
            let fallback = path
                .file_stem()
                .map(|s| s.to_string_lossy().to_string())
                .unwrap_or_else(|| "geometry".to_string());
            let geometry = GeometryFile::from_path(&path).and_then(|f| f.to_geometry(&fallback));
            match geometry {
                Ok(geometry) => run_pipeline(&geometry, format, tol),
                Err(err) => {
                    eprintln!("error: {err}");
                    ExitCode::from(EXIT_INPUT_ERROR)
                }
            }
        }
        Command::Bounds {
            n,
            nk,
            scal,
            t2,
            mu2,
            format,
        } => match BoundsInput::new(n, nk, scal, t2, mu2) {
            Ok(input) => {
                let result = bounds::compare(&input);
                match format {
                    Format::Table => {
                        println!(
                            "β_split = {}",
                            result
                                .beta_split
                                .map(report::fmt_val)
                                .unwrap_or_else(|| "undefined (largest block has dimension 1)".into())
                        );
                        println!("β_univ = {}", report::fmt_val(result.beta_univ));
                        println!(
                            "β_tw = {}",
                            result
                                .beta_tw
                                .map(report::fmt_val)
                                .unwrap_or_else(|| "undefined (n=3)".into())
                        );
                        for (mu2, beta) in &result.per_mu {
                            println!(
                                "  β_split(μ²={}) = {}",
                                report::fmt_val(*mu2),
                                beta.map(report::fmt_val).unwrap_or_else(|| "undefined".into())
                            );
                        }
                        for note in &result.notes {
                            println!("note: {note}");
                        }
                    }
                    Format::Json => {
                        let json = report::BoundsJson {
                            n,
                            n_k: nk,
                            beta_split: result.beta_split,
                            beta_univ: result.beta_univ,
                            beta_tw: result.beta_tw,
                            per_mu: result
                                .per_mu
                                .iter()
                                .map(|&(mu2, b)| report::PerMuJson {
                                    mu2,
                                    beta_split_mu: b,
                                })
                                .collect(),
                            notes: result.notes.clone(),
                        };
                        println!("{}", report::to_json_string(&json));
                    }
                }
                ExitCode::SUCCESS
            }
            Err(err) => {
                eprintln!("error: {err}");
                ExitCode::from(EXIT_INPUT_ERROR)
            }
        },
    }
}
