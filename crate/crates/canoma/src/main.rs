//! Command-line front end: rate-region sweeps, delivery-time solves,
//! Monte-Carlo experiments, and the oracle verification run.
//!
//! Exit codes: 0 on success, 2 on configuration/usage errors, 3 when the
//! verification run finds a disagreement.

use canoma::delivery::min_delivery_time;
use canoma::model::{split_files, ChannelState};
use canoma::sim::{
    gen_drop, parse_sweep, run_montecarlo, run_region_sweep, run_verify, substream_rng,
    write_mc_csv, write_sweep_csv, ScenarioConfig, SimError,
};
use clap::{Parser, Subcommand};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "canoma", version, about = "Cache-aided NOMA downlink delivery")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Emit the rate-region frontiers (proposed, NOMA, OMA) as CSV.
    Region {
        /// Effective noise level of the strong user (linear).
        #[arg(long, default_value_t = 1e-3)]
        alpha_i: f64,
        /// Effective noise level of the weak user (linear).
        #[arg(long, default_value_t = 1e-2)]
        alpha_j: f64,
        /// Transmit power budget (linear).
        #[arg(long, default_value_t = 10.0)]
        power: f64,
        /// Grid points per power axis.
        #[arg(long, default_value_t = 200)]
        grid: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Solve one delivery-time instance and print the solution.
    Delivery {
        /// Scenario JSON (field names match the config struct).
        #[arg(long)]
        config: PathBuf,
        /// Optional CSV output with the solution row.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte-Carlo average delivery times over a weak-user radius sweep.
    Mc {
        #[arg(long)]
        config: PathBuf,
        /// Weak-user radius sweep in km, as START:STOP:STEPS.
        #[arg(long, value_name = "START:STOP:STEPS")]
        rj_sweep: String,
        /// Drops per radius (defaults to the config value).
        #[arg(long)]
        drops: Option<usize>,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Cross-check the closed-form regions against the brute-force decoder.
    Verify {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, SimError> {
    match cli.cmd {
        Cmd::Region {
            alpha_i,
            alpha_j,
            power,
            grid,
            out,
        } => {
            let rows = run_region_sweep(alpha_i, alpha_j, power, grid)?;
            let mut w = BufWriter::new(File::create(&out)?);
            write_sweep_csv(&mut w, &rows)?;
            w.flush()?;
            println!("wrote {} frontier points to {}", rows.len(), out.display());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Delivery { config, out } => {
            let cfg = ScenarioConfig::from_json_file(&config)?;
            let (channel, cache) = match (cfg.alpha_i, cfg.alpha_j) {
                (Some(ai), Some(aj)) => (
                    ChannelState::new(ai, aj, cfg.tx_power_w(), cfg.bandwidth_hz)?,
                    cfg.cache_config()?,
                ),
                _ => {
                    let mut rng = substream_rng(cfg.seed.unwrap_or(1), 0);
                    let drop = gen_drop(&cfg, &mut rng)?;
                    (drop.channel, drop.cache)
                }
            };
            let load = split_files(&cache)?;
            let sol = min_delivery_time(&channel, &load, None)?;
            println!(
                "channel: alpha_i={:e} alpha_j={:e} P={:.4} W bw={:.3e} Hz",
                channel.alpha_i(),
                channel.alpha_j(),
                channel.power_budget(),
                channel.bandwidth_hz()
            );
            println!(
                "T* = {:.6} s  (rho = {:.6e} 1/s)",
                sol.delivery_time_s, sol.rho
            );
            println!("region: {}", sol.region);
            println!("order:  {}", sol.order.0);
            println!("        {}", sol.order.1);
            let p = sol.p_star.as_array();
            println!(
                "p* = ({:.6e}, {:.6e}, {:.6e}, {:.6e}) W",
                p[0], p[1], p[2], p[3]
            );
            let r = sol.r_star.as_array();
            println!(
                "r* = ({:.6}, {:.6}, {:.6}, {:.6}) bit/s/Hz",
                r[0], r[1], r[2], r[3]
            );
            if let Some(path) = out {
                let mut w = BufWriter::new(File::create(&path)?);
                w.write_all(
                    b"delivery_time_s,rho_per_s,region,order_i,order_j,\
                      p_i1,p_i2,p_j1,p_j2,r_i1,r_i2,r_j1,r_j2\n",
                )?;
                writeln!(
                    w,
                    "{},{},{},\"{}\",\"{}\",{},{},{},{},{},{},{},{}",
                    sol.delivery_time_s,
                    sol.rho,
                    sol.region,
                    sol.order.0,
                    sol.order.1,
                    p[0],
                    p[1],
                    p[2],
                    p[3],
                    r[0],
                    r[1],
                    r[2],
                    r[3]
                )?;
                w.flush()?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Mc {
            config,
            rj_sweep,
            drops,
            seed,
            out,
        } => {
            let cfg = ScenarioConfig::from_json_file(&config)?;
            let sweep = parse_sweep(&rj_sweep)?;
            let drops = drops.unwrap_or(cfg.drops);
            let rows = run_montecarlo(&cfg, &sweep, drops, seed)?;
            let mut w = BufWriter::new(File::create(&out)?);
            write_mc_csv(&mut w, &rows)?;
            w.flush()?;
            println!(
                "wrote {} rows ({} radii x {} schemes, {} drops each) to {}",
                rows.len(),
                sweep.len(),
                canoma::sim::SCHEMES.len(),
                drops,
                out.display()
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { samples, seed } => {
            let report = run_verify(samples, seed);
            println!("{report}");
            if report.passed() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(3))
            }
        }
    }
}
