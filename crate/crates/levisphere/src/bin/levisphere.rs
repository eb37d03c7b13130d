//! Command-line driver: build structures, run the named check suite,
//! consolidate reports, and print the exploratory probes.
//!
//! Exit codes: 0 when everything asked for passed, 1 when a theorem check
//! failed, 2 on configuration errors, 3 when a budget was exceeded.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use levisphere::verify::{
    cmd_build, cmd_check, cmd_report, run_check, Config, Status, CHECK_IDS,
};
use levisphere::Error;

#[derive(Parser)]
#[command(name = "levisphere", version, about = "Decomposition posets of spherical buildings: constructions, homology checks, probes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build configured structures and serialize them to JSON files.
    Build {
        /// JSON configuration file; flags override its fields.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Building spec, e.g. "A(p=2,n=3)" or "thin:A2".
        #[arg(long)]
        building: Option<String>,
        /// Construction to serialize (repeatable): CB, Y, D, OD, PD, OPD,
        /// PD(V), OPD(V), D(V), OD(V), K2, OK2.
        #[arg(long = "construct")]
        constructions: Vec<String>,
        /// Output directory.
        #[arg(long)]
        out: Option<String>,
    },
    /// Run named checks and write a JSON report.
    Check {
        /// Check ids; the configured list, or every known check, when empty.
        ids: Vec<String>,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        building: Option<String>,
        /// Where to write the report JSON.
        #[arg(long)]
        out: Option<PathBuf>,
        /// List the known check ids and exit.
        #[arg(long)]
        list: bool,
    },
    /// Consolidate report files into one Markdown and one CSV table.
    Report {
        files: Vec<PathBuf>,
        #[arg(long)]
        out_md: Option<PathBuf>,
        #[arg(long)]
        out_csv: Option<PathBuf>,
    },
    /// Run the exploratory probes and print their tables.
    Probe {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        building: Option<String>,
    },
}

fn main() -> ExitCode {
    // Die quietly when a pipe closes early (probe tables under head, etc)
    // instead of panicking on the next print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Budget(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn load_config(path: &Option<PathBuf>, building: &Option<String>) -> Result<Config, Error> {
    let mut cfg = match path {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    if let Some(b) = building {
        cfg.building = b.clone();
    }
    cfg.apply_memory_env()?;
    cfg.validate()?;
    Ok(cfg)
}

fn dispatch(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Build { config, building, constructions, out } => {
            let mut cfg = load_config(&config, &building)?;
            if !constructions.is_empty() {
                cfg.constructions = constructions;
            }
            if let Some(o) = out {
                cfg.output_dir = o;
            }
            for path in cmd_build(&cfg)? {
                println!("{}", path.display());
            }
            Ok(0)
        }
        Command::Check { ids, config, building, out, list } => {
            if list {
                for id in CHECK_IDS {
                    println!("{id}");
                }
                return Ok(0);
            }
            let cfg = load_config(&config, &building)?;
            let report = cmd_check(&cfg, &ids)?;
            for o in &report.outcomes {
                let status = match o.status {
                    Status::Pass => "pass",
                    Status::Fail => "FAIL",
                    Status::Unknown => "unknown",
                    Status::Probe => "probe",
                };
                println!("{:<16} {:<14} {status:<8} {:.2}s", o.id, o.building, o.seconds);
            }
            if let Some(path) = out {
                std::fs::write(&path, report.to_json_string()?)?;
                println!("report written to {}", path.display());
            }
            Ok(report.exit_code() as u8)
        }
        Command::Report { files, out_md, out_csv } => {
            let (md, csv) = cmd_report(&files)?;
            match out_md {
                Some(p) => std::fs::write(&p, &md)?,
                None => print!("{md}"),
            }
            if let Some(p) = out_csv {
                std::fs::write(&p, &csv)?;
            }
            Ok(0)
        }
        Command::Probe { config, building } => {
            let cfg = load_config(&config, &building)?;
            let cell = |v: &serde_json::Value| match v {
                serde_json::Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            let y = run_check("y-question", &cfg)?;
            println!("convexity poset dimension against 2 dim + 1");
            println!("{:<8} {:>4} {:>8} {:>6} {:>8}  match", "type", "dim", "census", "poset", "2dim+1");
            for r in y.values["rows"].as_array().into_iter().flatten() {
                println!(
                    "{:<8} {:>4} {:>8} {:>6} {:>8}  {}",
                    cell(&r["type"]),
                    cell(&r["complex_dim"]),
                    cell(&r["census_size"]),
                    cell(&r["poset_dim"]),
                    cell(&r["two_dim_plus_one"]),
                    cell(&r["matches"])
                );
            }
            let u = run_check("upper-conjecture", &cfg)?;
            println!();
            println!("upper intervals of simplices in the crossed posets of {}", cfg.building);
            println!(
                "{:<6} {:>4} {:>9} {:>6} {:>10}  betti",
                "family", "dim", "conj dim", "count", "spherical"
            );
            for r in u.values["rows"].as_array().into_iter().flatten() {
                println!(
                    "{:<6} {:>4} {:>9} {:>6} {:>10}  {}",
                    cell(&r["family"]),
                    cell(&r["simplex_dim"]),
                    cell(&r["conjectured_dim"]),
                    cell(&r["count"]),
                    cell(&r["spherical"]),
                    cell(&r["betti"])
                );
            }
            // Probes record outcomes and never fail.
            Ok(0)
        }
    }
}
