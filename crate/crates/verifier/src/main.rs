use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

use pichar_core::pi::PrimeSet;
use pichar_verifier::cache::TableCache;
use pichar_verifier::checks::{canonical_id, run_check, CHECK_IDS};
use pichar_verifier::corpus::{scan, Probe, ScanConfig};
use pichar_verifier::error::VerifyError;
use pichar_verifier::replay::{read_reports, replay_reports};
use pichar_verifier::report::Status;
use pichar_verifier::session::Session;
use pichar_verifier::spec::GroupSpec;

#[derive(Parser)]
#[command(name = "pichar", about = "Character tables, partial characters and lift checks for finite groups")]
struct Cli {
    /// Character table cache directory (PICHAR_CACHE overrides).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the character table of a group as JSON.
    Table {
        /// Group description: inline JSON or a file path.
        #[arg(long)]
        group: String,
    },
    /// Run one check on one group.
    Verify {
        #[arg(long)]
        check: String,
        #[arg(long)]
        group: String,
        /// Prime set, e.g. 2,3.
        #[arg(long)]
        pi: Option<String>,
        #[arg(long)]
        timings: bool,
    },
    /// Run checks over the built-in corpus.
    Corpus {
        #[arg(long)]
        max_order: usize,
        #[arg(long)]
        odd_only: bool,
        /// Comma-separated check ids, or "all".
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum)]
        probe: Option<ProbeArg>,
        #[arg(long)]
        timings: bool,
    },
    /// Re-check every witness in a report file.
    WitnessReplay {
        #[arg(long)]
        report: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ProbeArg {
    LiftProfile,
}

fn read_spec(arg: &str) -> Result<GroupSpec, VerifyError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(Path::new(arg))?
    };
    Ok(GroupSpec::parse(&text)?)
}

fn run(cli: Cli) -> Result<ExitCode, VerifyError> {
    let cache = TableCache::resolve(cli.cache);
    match cli.command {
        Command::Table { group } => {
            let spec = read_spec(&group)?;
            let s = Session::with_cache(&spec, cache.as_ref())?;
            let g = s.group();
            let out = serde_json::json!({
                "fingerprint": s.fingerprint,
                "order": g.order(),
                "class_sizes": g.classes().sizes(),
                "element_orders": (0..g.classes().len()).map(|c| g.classes().rep_order(c)).collect::<Vec<_>>(),
                "rows": s.table.rows().iter().map(|r| r.values().to_vec()).collect::<Vec<_>>(),
            });
            println!("{out}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            check,
            group,
            pi,
            timings,
        } => {
            let id = canonical_id(&check)?;
            let spec = read_spec(&group)?;
            let pi = pi.as_deref().map(PrimeSet::from_str).transpose()?;
            let mut s = Session::with_cache(&spec, cache.as_ref())?;
            let r = run_check(id, &mut s, pi.as_ref(), timings)?;
            println!("{}", r.to_line());
            Ok(if r.status == Status::Violated {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Corpus {
            max_order,
            odd_only,
            checks,
            out,
            probe,
            timings,
        } => {
            let checks: Vec<&'static str> = if checks.trim() == "all" {
                CHECK_IDS.to_vec()
            } else {
                checks.split(',').map(canonical_id).collect::<Result<_, _>>()?
            };
            let cfg = ScanConfig {
                max_order,
                odd_only,
                checks,
                probe: probe.map(|ProbeArg::LiftProfile| Probe::LiftProfile),
                timings,
                cache: cache.as_ref(),
            };
            let mut w = BufWriter::new(fs::File::create(&out)?);
            let summary = scan(&cfg, &mut w)?;
            w.flush()?;
            for p in &summary.profiles {
                println!("{}", serde_json::to_string(p)?);
            }
            let mut brief = serde_json::to_value(&summary)?;
            if let Some(m) = brief.as_object_mut() {
                m.remove("profiles");
            }
            println!("{}", serde_json::json!({ "summary": brief }));
            Ok(if !summary.errors.is_empty() {
                ExitCode::from(2)
            } else if !summary.violations.is_empty() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::WitnessReplay { report } => {
            let text = fs::read_to_string(&report)?;
            let reports = read_reports(&text)?;
            let summary = replay_reports(&reports, cache.as_ref());
            for (r, k, why) in &summary.failures {
                match k {
                    Some(k) => eprintln!("report {r} witness {k}: {why}"),
                    None => eprintln!("report {r}: {why}"),
                }
            }
            println!(
                "{}",
                serde_json::json!({
                    "reports": summary.reports,
                    "witnesses": summary.witnesses,
                    "failures": summary.failures.len(),
                })
            );
            Ok(if summary.ok() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
