//! Average delivery times of all four schemes versus the weak user's
//! distance, on the reference scenario.
//!
//! Run with: `cargo run --example monte_carlo [drops] [seed] [pl_const_db]`

use canoma::sim::{run_montecarlo, ScenarioConfig, SCHEMES};

fn main() {
    let mut args = std::env::args().skip(1);
    let drops: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(200);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);

    let mut cfg = ScenarioConfig::default();
    if let Some(pl) = args.next().and_then(|s| s.parse().ok()) {
        cfg.pl_const_db = pl;
    }
    let radii = [0.2, 0.6, 1.0, 1.4, 2.0];
    let rows = run_montecarlo(&cfg, &radii, drops, seed).expect("simulation failed");

    println!("{drops} drops per radius, seed {seed}");
    println!(
        "{:>7} {:>14} {:>14} {:>14} {:>14}",
        "R_j/km", SCHEMES[0], SCHEMES[1], SCHEMES[2], SCHEMES[3]
    );
    for rj in radii {
        let t = |scheme: &str| {
            rows.iter()
                .find(|r| r.r_j_km == rj && r.scheme == scheme)
                .map(|r| r.mean_t_s)
                .unwrap()
        };
        println!(
            "{:>7.1} {:>13.2}s {:>13.2}s {:>13.2}s {:>13.2}s",
            rj,
            t("proposed"),
            t("noma-cache"),
            t("noma-nocache"),
            t("oma")
        );
        let b1 = t("oma");
        println!(
            "        vs oma: proposed -{:.2}%  noma-cache -{:.2}%  noma-nocache -{:.2}%",
            100.0 * (1.0 - t("proposed") / b1),
            100.0 * (1.0 - t("noma-cache") / b1),
            100.0 * (1.0 - t("noma-nocache") / b1),
        );
    }
}
