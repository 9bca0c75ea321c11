use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use zgram_cli::config::{HRule, OutputFormat, RunConfig};
use zgram_cli::{emit, execute};

#[derive(Parser, Debug)]
#[command(
    name = "zgram",
    about = "Verification sums for Hardy's Z function over shifted Gram grids",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Run the configured claims over the T ladder and write a report file.
    Verify(VerifyArgs),
    /// Shortcut: build the T ladder as a geometric progression.
    Scan(ScanArgs),
    /// Print the nodes of one window.
    Gram(GramArgs),
    /// Trigonometric-sum sweep |S(a, 2a)| at fixed t.
    Trigsum(TrigsumArgs),
}

#[derive(Args, Debug, Clone)]
struct VerifyArgs {
    /// JSON file mirroring the run configuration; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Ladder point(s); repeat for several (must be increasing).
    #[arg(long = "T", value_name = "T")]
    t: Vec<f64>,
    /// Fixed window length; shorthand for --h-rule fixed:<H>.
    #[arg(long = "H", value_name = "H", conflicts_with = "h_rule")]
    h: Option<f64>,
    /// Window rule: fixed:<H>, delta-ln or sixth-eps.
    #[arg(long = "h-rule")]
    h_rule: Option<HRule>,
    /// Shift grid; repeat for several values.
    #[arg(long)]
    tau: Vec<f64>,
    /// Offset grid; repeat for several values.
    #[arg(long)]
    offset: Vec<f64>,
    /// Residual-scale exponent (T^delta ln T).
    #[arg(long, conflicts_with = "lindelof")]
    delta: Option<f64>,
    /// Scale residuals by T^eps ln T instead (conditional-regime reporting).
    #[arg(long, value_name = "EPS")]
    lindelof: Option<f64>,
    /// Epsilon of the H1 = T^(1/6+eps) window warning bound.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Comma-separated claim ids (default: the full suite).
    #[arg(long, value_delimiter = ',')]
    claims: Vec<zgram::ClaimId>,
    /// Riemann-Siegel correction order (0 or 1).
    #[arg(long = "rs-order")]
    rs_order: Option<u8>,
    /// Worker threads (0 = machine default).
    #[arg(long)]
    threads: Option<usize>,
    /// Output path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format: csv or json.
    #[arg(long)]
    format: Option<OutputFormat>,
}

#[derive(Args, Debug)]
struct ScanArgs {
    /// First ladder point.
    #[arg(long = "t-start")]
    t_start: f64,
    /// Multiplicative step between ladder points.
    #[arg(long = "t-factor", default_value_t = 10.0)]
    t_factor: f64,
    /// Number of ladder points.
    #[arg(long = "t-count", default_value_t = 3)]
    t_count: usize,
    #[command(flatten)]
    rest: VerifyArgs,
}

#[derive(Args, Debug)]
struct GramArgs {
    #[arg(long = "T")]
    t: f64,
    #[arg(long = "H")]
    h: f64,
    #[arg(long, default_value_t = 0.0)]
    tau: f64,
    /// all, even or odd node indices.
    #[arg(long, default_value = "all")]
    parity: String,
    #[arg(long = "rs-order")]
    rs_order: Option<u8>,
}

#[derive(Args, Debug)]
struct TrigsumArgs {
    #[arg(long = "T")]
    t: f64,
    /// Left endpoint; with --b prints a single sum instead of the sweep.
    #[arg(long)]
    a: Option<u64>,
    /// Right endpoint (exclusive).
    #[arg(long, requires = "a")]
    b: Option<u64>,
}

enum AppError {
    Config(String),
    Io(String),
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        AppError::Io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let is_help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if is_help {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    let result = match cli.cmd {
        Cmd::Verify(args) => cmd_verify(args, None),
        Cmd::Scan(args) => {
            let ladder: Vec<f64> = (0..args.t_count)
                .map(|i| args.t_start * args.t_factor.powi(i as i32))
                .collect();
            cmd_verify(args.rest, Some(ladder))
        }
        Cmd::Gram(args) => cmd_gram(args),
        Cmd::Trigsum(args) => cmd_trigsum(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::Config(msg)) => {
            eprintln!("config error: {msg}");
            ExitCode::from(1)
        }
        Err(AppError::Io(msg)) => {
            eprintln!("io error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn build_config(args: &VerifyArgs, ladder: Option<Vec<f64>>) -> Result<RunConfig, AppError> {
    let mut config = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            serde_json::from_str::<RunConfig>(&text)
                .map_err(|e| AppError::Config(format!("{}: {e}", path.display())))?
        }
        None => RunConfig::default(),
    };
    if let Some(ladder) = ladder {
        config.t_ladder = ladder;
    } else if !args.t.is_empty() {
        config.t_ladder = args.t.clone();
    }
    if let Some(rule) = args.h_rule {
        config.h_rule = rule;
    }
    if let Some(h) = args.h {
        config.h_rule = HRule::Fixed(h);
    }
    if !args.tau.is_empty() {
        config.tau_grid = args.tau.clone();
    }
    if !args.offset.is_empty() {
        config.offset_grid = args.offset.clone();
    }
    if let Some(d) = args.delta {
        config.delta = d;
    }
    if let Some(eps) = args.lindelof {
        config.delta = eps;
    }
    if let Some(e) = args.epsilon {
        config.epsilon = e;
    }
    if !args.claims.is_empty() {
        config.claims = args.claims.clone();
    }
    if let Some(order) = args.rs_order {
        config.rs.correction_order = order;
    }
    if let Some(n) = args.threads {
        config.threads = n;
    }
    if let Some(out) = &args.out {
        config.out_path = out.display().to_string();
    }
    if let Some(f) = args.format {
        config.output = f;
    }
    config.validate().map_err(AppError::Config)?;
    Ok(config)
}

fn cmd_verify(args: VerifyArgs, ladder: Option<Vec<f64>>) -> Result<(), AppError> {
    let config = build_config(&args, ladder)?;
    let outcomes = execute(&config).map_err(|e| AppError::Config(e.to_string()))?;
    let path = PathBuf::from(&config.out_path);
    emit(&outcomes, config.output, &path)?;
    let errors = outcomes.iter().filter(|o| o.report.is_err()).count();
    for o in &outcomes {
        match &o.report {
            Ok(r) => println!(
                "{:<8} T={:<12.6e} param={:<22} lhs={:<24} main={:<24} nres={:.6e}",
                r.claim_id.to_string(),
                r.t,
                r.parameter,
                r.lhs,
                r.main_term,
                r.normalized_residual()
            ),
            Err(msg) => println!(
                "{:<8} T={:<12.6e} param={:<22} ERROR {msg}",
                o.cell.claim.to_string(),
                o.cell.t,
                o.cell.parameter
            ),
        }
    }
    println!(
        "wrote {} cells ({errors} errors) to {}",
        outcomes.len(),
        path.display()
    );
    Ok(())
}

fn parity_from(name: &str) -> Result<zgram::Parity, AppError> {
    match name {
        "all" => Ok(zgram::Parity::All),
        "even" => Ok(zgram::Parity::Even),
        "odd" => Ok(zgram::Parity::Odd),
        other => Err(AppError::Config(format!("unknown parity: {other}"))),
    }
}

fn cmd_gram(args: GramArgs) -> Result<(), AppError> {
    let mut cfg = zgram::RsConfig::default();
    if let Some(order) = args.rs_order {
        cfg.correction_order = order;
    }
    cfg.validate()
        .map_err(|e| AppError::Config(e.to_string()))?;
    let parity = parity_from(&args.parity)?;
    let w = zgram::Window::new(args.t, args.h).map_err(|e| AppError::Config(e.to_string()))?;
    let nodes = zgram::enumerate_nodes(&w, args.tau, parity, &cfg)
        .map_err(|e| AppError::Config(e.to_string()))?;
    println!("nu,tau,t,phase_residual");
    for n in &nodes {
        println!("{},{},{:.16e},{:.3e}", n.nu, n.tau, n.t, n.phase_residual());
    }
    Ok(())
}

fn cmd_trigsum(args: TrigsumArgs) -> Result<(), AppError> {
    println!("a,b,t,modulus,delta_hat");
    match (args.a, args.b) {
        (Some(a), Some(b)) => {
            let e = zgram::trig_sum(a, b, args.t).map_err(|e| AppError::Config(e.to_string()))?;
            println!(
                "{},{},{:e},{:.16e},{:.16e}",
                e.a, e.b, e.t, e.modulus, e.delta_hat
            );
        }
        _ => {
            let p0 = (args.t / (2.0 * std::f64::consts::PI)).sqrt();
            let mut worst: Option<zgram::TrigSumEstimate> = None;
            let mut a = args.a.unwrap_or(1);
            while 2 * a <= p0 as u64 {
                let e = zgram::trig_sum(a, 2 * a, args.t)
                    .map_err(|e| AppError::Config(e.to_string()))?;
                println!(
                    "{},{},{:e},{:.16e},{:.16e}",
                    e.a, e.b, e.t, e.modulus, e.delta_hat
                );
                if worst.is_none() || e.delta_hat > worst.unwrap().delta_hat {
                    worst = Some(e);
                }
                a += 1;
            }
            if let Some(w) = worst {
                eprintln!(
                    "max delta_hat = {:.6} at (a, b) = ({}, {})",
                    w.delta_hat, w.a, w.b
                );
            }
        }
    }
    Ok(())
}
