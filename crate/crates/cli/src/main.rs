mod args;
mod commands;
mod oracle;
mod record;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{Context as _, Result};
use clap::Parser;
use hlv_core::cache::DiskCache;
use hlv_core::macdonald::{HtildeSource, MemoryStore};

use args::{Cli, Command, Format, GlobalOpts, OracleCommand, VerifyCommand};
use record::Outcome;

const EXIT_ERROR: u8 = 1;
const EXIT_USAGE: u8 = 64;

/// Rejected before any computation; reported with usage on stderr.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub struct Context {
    pub source: Arc<dyn HtildeSource>,
    disk: Option<Arc<DiskCache>>,
    pub pool: rayon::ThreadPool,
}

impl Context {
    fn new(opts: &GlobalOpts) -> Result<Self> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .context("building thread pool")?;
        let dir = if opts.no_cache {
            None
        } else {
            opts.cache_dir.clone().or_else(default_cache_dir)
        };
        let disk = dir.and_then(|dir| match DiskCache::open(&dir) {
            Ok(c) => Some(Arc::new(c)),
            Err(e) => {
                eprintln!("warning: {e}; continuing without a cache");
                None
            }
        });
        let source: Arc<dyn HtildeSource> = match &disk {
            Some(c) => c.clone(),
            None => Arc::new(MemoryStore::new()),
        };
        Ok(Context { source, disk, pool })
    }

    fn flush_warnings(&self) {
        if let Some(c) = &self.disk {
            for w in c.take_warnings() {
                eprintln!("warning: {w}");
            }
        }
    }
}

fn default_cache_dir() -> Option<PathBuf> {
    if let Some(dir) = std::env::var_os("HLV_CACHE_DIR") {
        return Some(dir.into());
    }
    if let Some(dir) = std::env::var_os("XDG_CACHE_HOME") {
        return Some(PathBuf::from(dir).join("hlv"));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("hlv"))
}

fn run(cli: &Cli, ctx: &Context) -> Result<Outcome> {
    match &cli.command {
        Command::Kernel(i) => commands::kernel(ctx, i),
        Command::Epoly(i) => commands::epoly(ctx, i),
        Command::Kac(i) => commands::kac(ctx, i),
        Command::Mhp(i) => commands::mhp(ctx, i),
        Command::HilbertCheck { n_max, trunc } => commands::hilbert_check(*n_max, *trunc),
        Command::QuasimodularCheck { n_max, u_order } => {
            commands::quasimodular_check(*n_max, *u_order)
        }
        Command::ExpansionCheck {
            g,
            k,
            n_max,
            y_convention,
        } => commands::expansion_check(*g, *k, *n_max, *y_convention),
        Command::OptimSweep {
            g,
            mu,
            k,
            n_max,
            y_convention,
        } => commands::optim_sweep(ctx, *g, mu.as_ref(), *k, *n_max, *y_convention),
        Command::Oracle(OracleCommand::PointCount { g, mu, q }) => oracle::point_count(*g, mu, *q),
        Command::Oracle(OracleCommand::KacCount { instance, q }) => oracle::kac_count(instance, *q),
        Command::Verify(VerifyCommand::All {
            n_max,
            g_max,
            k_max,
            u_order,
        }) => verify::all(
            ctx,
            &verify::Bounds {
                n_max: *n_max,
                g_max: *g_max,
                k_max: *k_max,
                u_order: *u_order,
            },
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(EXIT_USAGE);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    let ctx = match Context::new(&cli.global) {
        Ok(ctx) => ctx,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(EXIT_ERROR);
        }
    };
    let result = run(&cli, &ctx);
    ctx.flush_warnings();
    match result {
        Ok(outcome) => {
            match cli.global.format {
                Format::Text if outcome.text.is_some() => {
                    println!("{}", outcome.text.as_deref().unwrap_or_default())
                }
                _ => println!(
                    "{}",
                    serde_json::to_string_pretty(&outcome.json).expect("JSON values serialize")
                ),
            }
            ExitCode::from(outcome.verdict.exit_code())
        }
        Err(e) if e.downcast_ref::<UsageError>().is_some() => {
            eprintln!("error: {e}\n\nFor more information, try '--help'.");
            ExitCode::from(EXIT_USAGE)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
