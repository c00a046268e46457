use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use museumviz::blueprint::load_blueprint;
use museumviz::harvest::{harvest, open_source, write_harvest, HarvestOptions};
use museumviz::service::{export_bundle, serve, ServeOptions};
use museumviz::source::{default_user_agent, fixture_file_name};
use museumviz::store::{read_raw_artifacts, save_catalog};
use museumviz_core::build_catalog;

#[derive(Parser)]
#[command(
    name = "museumviz",
    version,
    about = "Harvest museum portal metadata and serve visualization geometry"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fetch listing and detail pages and write raw_artifacts.json + harvest_report.json.
    Harvest {
        #[arg(long)]
        blueprint: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Read pages from this fixture directory instead of the blueprint's setting.
        #[arg(long)]
        fixtures: Option<PathBuf>,
        /// Skip pages that fail to fetch and exit with status 2.
        #[arg(long)]
        keep_going: bool,
        /// RFC 3339 timestamp recorded as fetched_at (default: now).
        #[arg(long)]
        stamp: Option<String>,
        #[arg(long)]
        user_agent: Option<String>,
    },
    /// Normalize raw artifacts into a catalog file.
    Build {
        #[arg(long)]
        raw: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        portal: String,
        /// RFC 3339 timestamp recorded as built_at (default: latest fetched_at, else now).
        #[arg(long)]
        stamp: Option<String>,
    },
    /// Serve the catalog and visualization API.
    Serve {
        #[arg(long)]
        catalog: PathBuf,
        #[arg(long, default_value = "127.0.0.1:8080")]
        bind: String,
        /// Directory of UI assets served at `/`.
        #[arg(long = "static")]
        static_dir: Option<PathBuf>,
        /// Restrict CORS to this origin (repeatable). Any origin is allowed by default.
        #[arg(long = "cors-origin")]
        cors_origins: Vec<String>,
    },
    /// Write catalog.json and the four default visualization payloads.
    Export {
        #[arg(long)]
        catalog: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the fixture file name each URL maps to.
    FixtureName { urls: Vec<String> },
}

fn now() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

fn check_stamp(stamp: &str) -> Result<()> {
    chrono::DateTime::parse_from_rfc3339(stamp)
        .map(|_| ())
        .with_context(|| format!("--stamp `{stamp}` is not an RFC 3339 timestamp"))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Harvest {
            blueprint,
            out,
            fixtures,
            keep_going,
            stamp,
            user_agent,
        } => {
            let mut bp = load_blueprint(&blueprint)?;
            if fixtures.is_some() {
                bp.fixture_dir = fixtures;
            }
            let stamp = match stamp {
                Some(s) => {
                    check_stamp(&s)?;
                    s
                }
                None => now(),
            };
            let ua = user_agent.unwrap_or_else(default_user_agent);
            let mut source = open_source(&bp, &ua)?;
            let h = harvest(&bp, source.as_mut(), &HarvestOptions { keep_going, stamp })?;
            write_harvest(&out, &h)
                .with_context(|| format!("cannot write harvest to {}", out.display()))?;
            let r = &h.report;
            println!(
                "harvested {} records from {} urls ({} pages, {} failures, {} suspects, {} warnings)",
                r.records_extracted,
                r.urls_enumerated,
                r.pages_fetched,
                r.failures.len(),
                r.suspects.len(),
                r.warnings.len()
            );
            Ok(if r.failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Command::Build {
            raw,
            out,
            portal,
            stamp,
        } => {
            let raws = read_raw_artifacts(&raw)?;
            let built_at = match stamp {
                Some(s) => {
                    check_stamp(&s)?;
                    s
                }
                None => raws
                    .iter()
                    .map(|r| r.fetched_at.clone())
                    .max()
                    .unwrap_or_else(now),
            };
            let (cat, rejects) = build_catalog(&raws, &portal, &built_at);
            for r in &rejects {
                tracing::warn!(url = %r.source_url, reason = ?r.reason, "rejected");
            }
            save_catalog(&cat, &out)?;
            println!("{} records, {} rejects", cat.len(), rejects.len());
            Ok(ExitCode::SUCCESS)
        }
        Command::Serve {
            catalog,
            bind,
            static_dir,
            cors_origins,
        } => {
            let opts = ServeOptions {
                static_dir,
                cors_origins,
            };
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(serve(&catalog, &bind, &opts, |addr| {
                println!("listening on http://{addr}");
            }))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Export { catalog, out } => {
            for path in export_bundle(&catalog, &out)? {
                println!("{}", path.display());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::FixtureName { urls } => {
            if urls.is_empty() {
                bail!("give at least one URL");
            }
            for u in urls {
                println!("{}  {u}", fixture_file_name(&u));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    tracing_subscriber::fmt()
        .with_env_filter(
            tracing_subscriber::EnvFilter::try_from_default_env().unwrap_or_else(|_| "warn".into()),
        )
        .with_writer(std::io::stderr)
        .init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
