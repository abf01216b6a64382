use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use ndarray::Array1;
use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use mcalc::clifford::{self, Verdict};
use mcalc::dsl::{self, PatternDocument};
use mcalc::{graph, library, matrix, notation, random, rewrite, sim, Angle, Matrix};

#[derive(Parser)]
#[command(name = "mcalc", version, about = "Measurement pattern workbench")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the definiteness conditions and EMC shape.
    Validate {
        /// Pattern document; standard input when omitted or `-`.
        file: Option<PathBuf>,
    },
    /// Rewrite to standard form.
    Standardize {
        file: Option<PathBuf>,
        /// Also shift signals out of measurements.
        #[arg(long)]
        extended: bool,
        /// Print the rewrite trace on standard error.
        #[arg(long)]
        trace: bool,
        /// Print the command sequence right to left instead of a document.
        #[arg(long)]
        paper_order: bool,
    },
    /// Run every branch and extract the unitary if deterministic.
    Simulate {
        file: Option<PathBuf>,
        /// Basis index (`3`) or comma-separated amplitudes (`0.6,0.8i`).
        #[arg(long)]
        input: Option<String>,
        /// List the branches.
        #[arg(long)]
        branches: bool,
    },
    /// Compare the pattern's unitary with a builtin or a matrix file.
    Verify {
        file: Option<PathBuf>,
        /// `name[:angle,...]` of a builtin, or a path to a matrix file.
        #[arg(long)]
        against: String,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Entanglement or dependency graph.
    Graph {
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Kind::Entanglement)]
        kind: Kind,
        /// Emit DOT instead of a summary.
        #[arg(long)]
        dot: bool,
    },
    /// Emit a builtin pattern document.
    Library {
        /// One of the builtin names; omit to list them.
        name: Option<String>,
        /// Angles, or the qubit count for `ghz`.
        params: Vec<String>,
    },
    /// Rewrite step counts on random wild patterns.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [20usize, 50, 100, 200])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        seeds: u64,
    },
    /// Check the no-dependency theorems over the Clifford suite.
    Theorems {
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Entanglement,
    Dependency,
}

enum Failure {
    /// Bad input: exit code 2.
    Usage(anyhow::Error),
    /// A check failed or a computation could not run: exit code 1.
    Check(anyhow::Error),
}

macro_rules! check_failure {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::Check(e.into())
            }
        }
    )*};
}

check_failure!(anyhow::Error, mcalc::RewriteError, mcalc::SimError);

type Outcome = Result<ExitCode, Failure>;

fn usage(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Usage(e.into())
}

fn read_text(file: Option<&Path>) -> Result<String, Failure> {
    match file {
        Some(p) if p != Path::new("-") => std::fs::read_to_string(p)
            .with_context(|| format!("reading {}", p.display()))
            .map_err(usage),
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .context("reading standard input")
                .map_err(usage)?;
            Ok(s)
        }
    }
}

fn read_document(file: Option<&Path>) -> Result<PatternDocument, Failure> {
    let text = read_text(file)?;
    let origin = file
        .map(|p| p.display().to_string())
        .unwrap_or_else(|| "<stdin>".into());
    dsl::parse_document(&text).map_err(|e| usage(anyhow!("{origin}:{e}")))
}

fn parse_angles(params: &[String]) -> Result<Vec<Angle>, Failure> {
    params
        .iter()
        .map(|t| dsl::parse_angle(t).map_err(|e| usage(anyhow!("angle {t:?}: {}", e.message))))
        .collect()
}

fn parse_input(spec: Option<&str>, n_inputs: usize) -> Result<Array1<Complex<f64>>, Failure> {
    let dim = 1usize << n_inputs;
    let Some(spec) = spec else {
        return Ok(Array1::from_shape_fn(dim, |k| {
            if k == 0 {
                Complex::new(1.0, 0.0)
            } else {
                Complex::new(0.0, 0.0)
            }
        }));
    };
    if !spec.contains(',') {
        if let Ok(k) = spec.trim().parse::<usize>() {
            if k >= dim {
                return Err(usage(anyhow!(
                    "basis index {k} out of range for {n_inputs} input qubits"
                )));
            }
            return Ok(Array1::from_shape_fn(dim, |j| {
                Complex::new(if j == k { 1.0 } else { 0.0 }, 0.0)
            }));
        }
    }
    let amps: Vec<Complex<f64>> = spec
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<Complex<f64>>()
                .map_err(|_| usage(anyhow!("bad amplitude {t:?}")))
        })
        .collect::<Result<_, _>>()?;
    if amps.len() != dim {
        return Err(usage(anyhow!("expected {dim} amplitudes, got {}", amps.len())));
    }
    Ok(Array1::from_vec(amps))
}

/// Rows of whitespace-separated complex entries, as printed by `simulate`.
fn read_matrix(path: &Path) -> Result<Matrix, Failure> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(usage)?;
    let rows: Vec<Vec<Complex<f64>>> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, l)| {
            l.split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| usage(anyhow!("{}:{}: bad entry {t:?}", path.display(), i + 1)))
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let width = rows.first().map_or(0, Vec::len);
    if width == 0 || rows.iter().any(|r| r.len() != width) {
        return Err(usage(anyhow!(
            "{}: rows must be nonempty and of equal length",
            path.display()
        )));
    }
    let refs: Vec<&[Complex<f64>]> = rows.iter().map(Vec::as_slice).collect();
    Ok(matrix::from_rows(&refs))
}

fn validate(file: Option<&Path>) -> Outcome {
    let doc = read_document(file)?;
    let report = doc.pattern.validate();
    print!("{report}");
    Ok(if report.is_runnable() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn standardize(file: Option<&Path>, extended: bool, trace: bool, paper_order: bool) -> Outcome {
    let doc = read_document(file)?;
    let run = if extended {
        rewrite::standardize_extended
    } else {
        rewrite::standardize
    };
    let (p, steps) = run(&doc.pattern)?;
    if trace {
        eprint!("{}", rewrite::format_trace(&steps));
    }
    if paper_order {
        println!("{}", notation::sequence(p.commands()));
    } else {
        print!("{}", dsl::serialize(&doc.name, &p));
    }
    Ok(ExitCode::SUCCESS)
}

fn simulate(file: Option<&Path>, input: Option<&str>, show_branches: bool) -> Outcome {
    let doc = read_document(file)?;
    let p = doc.pattern;
    let psi = parse_input(input, p.inputs().len())?;
    let branches = sim::run_all_branches(&p, &psi)?;
    println!("branches: {}", branches.len());
    if show_branches {
        print!("{}", sim::branch_report(&branches, true));
    }
    let deterministic = sim::is_deterministic::<f64>(&p, 1e-9)?;
    println!("deterministic: {}", if deterministic { "yes" } else { "no" });
    if deterministic {
        let u = sim::unitary_along_reference::<f64>(&p)?;
        println!("unitary:");
        print!("{}", matrix::format_matrix(&u, 9));
    }
    Ok(ExitCode::SUCCESS)
}

fn reference(against: &str) -> Result<Matrix, Failure> {
    let path = Path::new(against);
    if path.is_file() {
        return read_matrix(path);
    }
    let (name, args) = against.split_once(':').unwrap_or((against, ""));
    let params: Vec<String> = args
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().to_string())
        .collect();
    let angles = parse_angles(&params)?;
    library::reference_unitary::<f64>(name, &angles).ok_or_else(|| {
        usage(anyhow!(
            "{against:?} is neither a matrix file nor a builtin with a reference unitary"
        ))
    })
}

fn verify(file: Option<&Path>, against: &str, tol: f64) -> Outcome {
    let doc = read_document(file)?;
    let expected = reference(against)?;
    let u = sim::extract_unitary::<f64>(&doc.pattern, tol)?;
    match matrix::phase_distance(&u, &expected) {
        None => {
            println!("shape mismatch: pattern {:?}, reference {:?}", u.dim(), expected.dim());
            Ok(ExitCode::from(1))
        }
        Some(d) => {
            println!("distance: {d:.3e}");
            if d <= tol {
                println!("match");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("mismatch");
                Ok(ExitCode::from(1))
            }
        }
    }
}

fn show_graph(file: Option<&Path>, kind: Kind, dot: bool) -> Outcome {
    let doc = read_document(file)?;
    match kind {
        Kind::Entanglement => {
            let g = graph::entanglement_graph(&doc.pattern);
            if dot {
                print!("{}", g.to_dot());
            } else {
                println!("vertices: {}\nedges: {}", g.vertex_count(), g.edge_count());
            }
        }
        Kind::Dependency => {
            let g = graph::dependency_graph(&doc.pattern).map_err(|e| anyhow!("{e}; run `mcalc standardize` first"))?;
            if dot {
                print!("{}", g.to_dot());
            } else {
                println!("depth: {}", g.depth());
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn emit_library(name: Option<&str>, params: &[String]) -> Outcome {
    let Some(name) = name else {
        println!("{}", library::NAMES.join("\n"));
        return Ok(ExitCode::SUCCESS);
    };
    let p = if name == "ghz" {
        if params.len() > 1 {
            return Err(usage(anyhow!("ghz takes one qubit count")));
        }
        let n = params
            .first()
            .map(|t| t.parse::<u32>().map_err(|_| usage(anyhow!("bad qubit count {t:?}"))))
            .transpose()?;
        library::by_name(name, &[], n)
    } else {
        library::by_name(name, &parse_angles(params)?, None)
    };
    let p = p.map_err(usage)?;
    print!("{}", dsl::serialize(name, &p));
    Ok(ExitCode::SUCCESS)
}

fn bench(sizes: &[usize], seeds: u64) -> Outcome {
    if sizes.contains(&0) || seeds == 0 {
        return Err(usage(anyhow!("sizes and seeds must be positive")));
    }
    println!("{:>6} {:>10} {:>8} {:>10}", "n", "mean", "max", "max/n^2");
    let (mut num, mut den) = (0.0, 0.0);
    for &n in sizes {
        let mut counts = Vec::new();
        for seed in 0..seeds {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = random::wild_pattern(&mut rng, n);
            counts.push(rewrite::standardize(&p)?.1.len());
        }
        let mean = counts.iter().sum::<usize>() as f64 / counts.len() as f64;
        let max = *counts.iter().max().expect("seeds > 0");
        let n2 = (n * n) as f64;
        println!("{n:>6} {mean:>10.1} {max:>8} {:>10.4}", max as f64 / n2);
        num += mean * n2;
        den += n2 * n2;
    }
    println!("fit: mean steps = {:.4} n^2", num / den);
    Ok(ExitCode::SUCCESS)
}

fn theorems(tol: f64) -> Outcome {
    let report = clifford::verify_no_dependency_theorems(&library::clifford_suite(), tol);
    let mut failed = false;
    for check in &report {
        println!("{check}");
        failed |= matches!(check.verdict, Verdict::Fail | Verdict::Error(_));
    }
    Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Cmd::Validate { file } => validate(file.as_deref()),
        Cmd::Standardize {
            file,
            extended,
            trace,
            paper_order,
        } => standardize(file.as_deref(), *extended, *trace, *paper_order),
        Cmd::Simulate { file, input, branches } => simulate(file.as_deref(), input.as_deref(), *branches),
        Cmd::Verify { file, against, tol } => verify(file.as_deref(), against, *tol),
        Cmd::Graph { file, kind, dot } => show_graph(file.as_deref(), *kind, *dot),
        Cmd::Library { name, params } => emit_library(name.as_deref(), params),
        Cmd::Bench { sizes, seeds } => bench(sizes, *seeds),
        Cmd::Theorems { tol } => theorems(*tol),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Check(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
