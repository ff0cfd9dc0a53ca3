//! Experiment harness: scenario configuration, Monte-Carlo channel drops,
//! rate-region sweeps, CSV emission, and the oracle verification run.
//!
//! Everything is deterministic under a fixed seed: each drop (and each
//! verification sample) runs on its own counter-derived ChaCha substream, so
//! results do not depend on evaluation order.

use crate::delivery::{
    min_delivery_time, noma_min_delivery_time, offloaded_bits, oma_min_delivery_time,
    oma_sum_form_delivery_time, DeliveryError,
};
use crate::model::{effective_noise, CacheConfig, ChannelState, ModelError, PowerAlloc, RateAlloc};
use crate::oracle::{excluded_order_pair_feasible, oracle_achievable};
use crate::region::{
    achievable, eval_bounds, noma_frontier, oma_frontier, power_region_contains,
    sweep_region_frontier, RegionId,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::io::{self, Write};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("config parse error: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Delivery(#[from] DeliveryError),
}

/// How user positions are drawn around the base station.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Placement {
    /// Uniform over the disc area (default; radius via square-root law).
    Disc,
    /// Fixed on the circle of the given radius (sensitivity checks).
    Ring,
}

/// Which TDMA time model the OMA baseline uses in experiments.
///
/// `Sum` is the slot-fraction reading `T = μ_i/τ + μ_j/(1−τ)`; `Max` is the
/// simultaneous reading `T = max(μ_i/τ, μ_j/(1−τ))`. The reference
/// delivery-time gaps are only reproduced by `Sum`, which is the default;
/// `Max` is available for sensitivity comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OmaForm {
    Sum,
    Max,
}

/// Full experiment scenario. JSON config files mirror these field names;
/// every field has the reference default.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScenarioConfig {
    pub cell_radius_km: f64,
    pub r_i_km: f64,
    pub r_j_km: f64,
    pub bandwidth_hz: f64,
    pub noise_psd_dbm_hz: f64,
    pub tx_power_dbm: f64,
    pub v_a_bits: f64,
    pub v_b_bits: f64,
    pub c_ia: f64,
    pub c_ib: f64,
    pub c_ja: f64,
    pub c_jb: f64,
    pub drops: usize,
    pub seed: Option<u64>,
    /// Path loss `PL_dB = pl_const_db + pl_slope_db · log10(d_km)`.
    ///
    /// The default constant is calibrated so that the desk-scale experiment
    /// reproduces the reference percentage gaps between the schemes; set it
    /// to 128.1 for the standard 2-GHz macro model.
    pub pl_const_db: f64,
    pub pl_slope_db: f64,
    pub placement: Placement,
    pub oma_form: OmaForm,
    /// Explicit effective noise levels (linear). When set, `delivery` skips
    /// drop generation and uses them directly.
    pub alpha_i: Option<f64>,
    pub alpha_j: Option<f64>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            cell_radius_km: 2.0,
            r_i_km: 0.2,
            r_j_km: 0.6,
            bandwidth_hz: 5e6,
            noise_psd_dbm_hz: -172.6,
            tx_power_dbm: 35.0,
            v_a_bits: 4e9,
            v_b_bits: 4e9,
            c_ia: 0.2,
            c_ib: 0.8,
            c_ja: 0.8,
            c_jb: 0.2,
            drops: 500,
            seed: None,
            pl_const_db: 85.0,
            pl_slope_db: 37.6,
            placement: Placement::Disc,
            oma_form: OmaForm::Sum,
            alpha_i: None,
            alpha_j: None,
        }
    }
}

pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

impl ScenarioConfig {
    pub fn from_json_file(path: &Path) -> Result<Self, SimError> {
        let text = std::fs::read_to_string(path)?;
        let cfg: ScenarioConfig = serde_json::from_str(&text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), SimError> {
        let err = |msg: String| Err(SimError::Config(msg));
        if !(self.cell_radius_km > 0.0 && self.r_i_km > 0.0 && self.r_j_km > 0.0) {
            return err("radii must be positive".into());
        }
        if self.r_i_km > self.cell_radius_km || self.r_j_km > self.cell_radius_km {
            return err(format!(
                "user radii ({}, {}) must not exceed the cell radius {}",
                self.r_i_km, self.r_j_km, self.cell_radius_km
            ));
        }
        if !self.bandwidth_hz.is_finite() || self.bandwidth_hz <= 0.0 {
            return err("bandwidth_hz must be positive".into());
        }
        if !(self.v_a_bits.is_finite() && self.v_b_bits.is_finite())
            || self.v_a_bits <= 0.0
            || self.v_b_bits <= 0.0
        {
            return err("file sizes must be positive".into());
        }
        for (label, c) in [
            ("c_ia", self.c_ia),
            ("c_ib", self.c_ib),
            ("c_ja", self.c_ja),
            ("c_jb", self.c_jb),
        ] {
            if !(0.0..=1.0).contains(&c) {
                return err(format!("{label} = {c} is outside [0, 1]"));
            }
        }
        if self.c_ia >= 1.0 || self.c_jb >= 1.0 {
            return err("each user must request some uncached data (c_ia < 1, c_jb < 1)".into());
        }
        if self.drops == 0 {
            return err("drops must be at least 1".into());
        }
        if self.alpha_i.is_some() != self.alpha_j.is_some() {
            return err("alpha_i and alpha_j must be set together".into());
        }
        Ok(())
    }

    pub fn cache_config(&self) -> Result<CacheConfig, ModelError> {
        CacheConfig::new(
            (self.c_ia, self.c_ib, self.c_ja, self.c_jb),
            self.v_a_bits,
            self.v_b_bits,
            None,
        )
    }

    /// Receiver noise power over the full bandwidth, watts.
    pub fn noise_power_w(&self) -> f64 {
        dbm_to_watts(self.noise_psd_dbm_hz) * self.bandwidth_hz
    }

    pub fn tx_power_w(&self) -> f64 {
        dbm_to_watts(self.tx_power_dbm)
    }
}

/// Deterministic per-work-item RNG: one seed, one counter stream.
pub fn substream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// One Monte-Carlo realization: the labeled channel plus the (possibly
/// relabeled) cache configuration.
#[derive(Debug, Clone)]
pub struct ChannelDrop {
    pub channel: ChannelState,
    pub cache: CacheConfig,
    /// Whether the user labels were exchanged to keep UE i the strong user.
    pub swapped: bool,
}

fn path_loss_db(cfg: &ScenarioConfig, d_km: f64) -> f64 {
    // Distances are clamped at 1 m.
    cfg.pl_const_db + cfg.pl_slope_db * d_km.max(1e-3).log10()
}

fn sample_alpha(cfg: &ScenarioConfig, radius_km: f64, rng: &mut impl Rng) -> f64 {
    let d_km = match cfg.placement {
        Placement::Disc => radius_km * rng.gen::<f64>().sqrt(),
        Placement::Ring => radius_km,
    };
    let pl_lin = 10f64.powf(-path_loss_db(cfg, d_km) / 10.0);
    // |h|^2 ~ Exp(1): Rayleigh amplitude fading.
    let fading = (-(1.0 - rng.gen::<f64>()).ln()).max(1e-15);
    let gain_sq = fading * pl_lin;
    effective_noise(gain_sq, cfg.noise_power_w()).expect("positive gain and noise")
}

/// Draws user positions and fading, forms effective noise levels, and
/// relabels so that UE i is the strong user. The relabeling swaps users and
/// files jointly, which preserves cache case I.
pub fn gen_drop(cfg: &ScenarioConfig, rng: &mut impl Rng) -> Result<ChannelDrop, SimError> {
    let cache = cfg.cache_config()?;
    let a_near = sample_alpha(cfg, cfg.r_i_km, rng);
    let a_far = sample_alpha(cfg, cfg.r_j_km, rng);
    let (mut alpha_i, mut alpha_j, swapped) = if a_near < a_far {
        (a_near, a_far, false)
    } else {
        (a_far, a_near, true)
    };
    if alpha_i >= alpha_j {
        // Exactly equal draws are measure-zero; nudge to keep the strict order.
        alpha_j = alpha_i * (1.0 + 1e-12);
        if alpha_i >= alpha_j {
            alpha_i *= 1.0 - 1e-12;
        }
    }
    let channel = ChannelState::new(alpha_i, alpha_j, cfg.tx_power_w(), cfg.bandwidth_hz)?;
    let cache = if swapped {
        cache.swap_users_and_files()
    } else {
        cache
    };
    Ok(ChannelDrop {
        channel,
        cache,
        swapped,
    })
}

pub const SCHEMES: [&str; 4] = ["proposed", "noma-cache", "noma-nocache", "oma"];

/// Delivery times of all four schemes for one drop.
#[derive(Debug, Clone)]
pub struct DropResult {
    pub alpha_i: f64,
    pub alpha_j: f64,
    pub t_proposed_s: f64,
    pub t_noma_cache_s: f64,
    pub t_noma_nocache_s: f64,
    pub t_oma_s: f64,
    pub region: RegionId,
}

impl DropResult {
    pub fn time_for(&self, scheme: &str) -> f64 {
        match scheme {
            "proposed" => self.t_proposed_s,
            "noma-cache" => self.t_noma_cache_s,
            "noma-nocache" => self.t_noma_nocache_s,
            "oma" => self.t_oma_s,
            other => panic!("unknown scheme {other}"),
        }
    }
}

pub fn evaluate_drop(drop: &ChannelDrop, oma_form: OmaForm) -> Result<DropResult, SimError> {
    let load = crate::model::split_files(&drop.cache)?;
    let proposed = min_delivery_time(&drop.channel, &load, None)?;
    let (bi, bj) = offloaded_bits(&drop.cache);
    let cached = noma_min_delivery_time(&drop.channel, bi, bj)?;
    let nocache =
        noma_min_delivery_time(&drop.channel, drop.cache.v_a_bits(), drop.cache.v_b_bits())?;
    let oma = match oma_form {
        OmaForm::Sum => oma_sum_form_delivery_time(&drop.channel, bi, bj),
        OmaForm::Max => oma_min_delivery_time(&drop.channel, bi, bj),
    };
    Ok(DropResult {
        alpha_i: drop.channel.alpha_i(),
        alpha_j: drop.channel.alpha_j(),
        t_proposed_s: proposed.delivery_time_s,
        t_noma_cache_s: cached.time_s,
        t_noma_nocache_s: nocache.time_s,
        t_oma_s: oma.time_s,
        region: proposed.region,
    })
}

// ---------------------------------------------------------------------------
// Region sweep
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub scheme: &'static str,
    pub r_i: f64,
    pub r_j: f64,
}

/// Frontier points of all three schemes on one channel.
pub fn run_region_sweep(
    alpha_i: f64,
    alpha_j: f64,
    power: f64,
    grid: usize,
) -> Result<Vec<SweepRow>, SimError> {
    // Bandwidth does not enter spectral-efficiency regions.
    let ch = ChannelState::new(alpha_i, alpha_j, power, 1.0)?;
    let mut rows = Vec::new();
    for (ri, rj) in sweep_region_frontier(&ch, grid) {
        rows.push(SweepRow {
            scheme: "proposed",
            r_i: ri,
            r_j: rj,
        });
    }
    for (ri, rj) in noma_frontier(&ch, grid) {
        rows.push(SweepRow {
            scheme: "noma",
            r_i: ri,
            r_j: rj,
        });
    }
    for (ri, rj) in oma_frontier(&ch, grid) {
        rows.push(SweepRow {
            scheme: "oma",
            r_i: ri,
            r_j: rj,
        });
    }
    Ok(rows)
}

pub fn write_sweep_csv<W: Write>(mut w: W, rows: &[SweepRow]) -> io::Result<()> {
    w.write_all(b"scheme,r_i,r_j\n")?;
    for row in rows {
        writeln!(w, "{},{},{}", row.scheme, row.r_i, row.r_j)?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Monte Carlo
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct McRow {
    pub r_j_km: f64,
    pub scheme: &'static str,
    pub mean_t_s: f64,
    pub ci95_s: f64,
}

/// Runs `drops` channel drops per weak-user radius and averages each scheme.
/// Drop `d` always runs on substream `d` regardless of the radius, so the
/// output is independent of evaluation order and the radius sweep sees
/// common random numbers: positions and fades are shared across radii and
/// only the weak user's distance scale changes, which makes every per-drop
/// delivery time (and hence every mean) monotone in `R_j`.
pub fn run_montecarlo(
    cfg: &ScenarioConfig,
    rj_sweep_km: &[f64],
    drops: usize,
    seed: u64,
) -> Result<Vec<McRow>, SimError> {
    if drops == 0 || rj_sweep_km.is_empty() {
        return Err(SimError::Config(
            "need at least one drop and one radius".into(),
        ));
    }
    let mut rows = Vec::with_capacity(rj_sweep_km.len() * SCHEMES.len());
    for &rj in rj_sweep_km {
        let mut scenario = cfg.clone();
        scenario.r_j_km = rj;
        scenario.validate()?;
        let mut times: [Vec<f64>; 4] = [vec![], vec![], vec![], vec![]];
        for d in 0..drops {
            let mut rng = substream_rng(seed, d as u64);
            let drop = gen_drop(&scenario, &mut rng)?;
            let res = evaluate_drop(&drop, scenario.oma_form)?;
            for (slot, scheme) in times.iter_mut().zip(SCHEMES) {
                slot.push(res.time_for(scheme));
            }
        }
        for (slot, scheme) in times.iter().zip(SCHEMES) {
            let n = slot.len() as f64;
            let mean = slot.iter().sum::<f64>() / n;
            let var = if slot.len() > 1 {
                slot.iter().map(|t| (t - mean).powi(2)).sum::<f64>() / (n - 1.0)
            } else {
                0.0
            };
            rows.push(McRow {
                r_j_km: rj,
                scheme,
                mean_t_s: mean,
                ci95_s: 1.96 * (var / n).sqrt(),
            });
        }
    }
    Ok(rows)
}

pub fn write_mc_csv<W: Write>(mut w: W, rows: &[McRow]) -> io::Result<()> {
    w.write_all(b"r_j_km,scheme,mean_t_s,ci95_s\n")?;
    for row in rows {
        writeln!(
            w,
            "{},{},{},{}",
            row.r_j_km, row.scheme, row.mean_t_s, row.ci95_s
        )?;
    }
    Ok(())
}

/// Parses `START:STOP:STEPS` into an inclusive linspace.
pub fn parse_sweep(spec: &str) -> Result<Vec<f64>, SimError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = |msg: &str| SimError::Config(format!("bad sweep '{spec}': {msg}"));
    if parts.len() != 3 {
        return Err(bad("expected START:STOP:STEPS"));
    }
    let start: f64 = parts[0].parse().map_err(|_| bad("START not a number"))?;
    let stop: f64 = parts[1].parse().map_err(|_| bad("STOP not a number"))?;
    let steps: usize = parts[2].parse().map_err(|_| bad("STEPS not an integer"))?;
    if steps == 0 {
        return Err(bad("STEPS must be positive"));
    }
    if steps == 1 {
        return Ok(vec![start]);
    }
    Ok((0..steps)
        .map(|k| start + (stop - start) * k as f64 / (steps - 1) as f64)
        .collect())
}

// ---------------------------------------------------------------------------
// Oracle verification
// ---------------------------------------------------------------------------

/// Margin kept from every bounding surface when sampling rate vectors.
pub const VERIFY_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct Disagreement {
    pub alpha_i: f64,
    pub alpha_j: f64,
    pub p: [f64; 4],
    pub r: [f64; 4],
    pub closed_form: bool,
    pub oracle: bool,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub samples_requested: usize,
    pub samples_used: usize,
    pub inside: usize,
    pub outside: usize,
    pub disagreements: Vec<Disagreement>,
    pub excluded_pair_trials: usize,
    pub excluded_pair_hits: usize,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty() && self.excluded_pair_hits == 0
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "verify: {} samples requested, {} used ({} inside, {} outside), margin {:e}",
            self.samples_requested, self.samples_used, self.inside, self.outside, VERIFY_MARGIN
        )?;
        writeln!(
            f,
            "closed-form vs oracle disagreements: {}",
            self.disagreements.len()
        )?;
        for d in &self.disagreements {
            writeln!(
                f,
                "  alpha=({:e},{:e}) p={:?} r={:?} closed_form={} oracle={}",
                d.alpha_i, d.alpha_j, d.p, d.r, d.closed_form, d.oracle
            )?;
        }
        writeln!(
            f,
            "excluded order pair satisfied on {}/{} random power vectors",
            self.excluded_pair_hits, self.excluded_pair_trials
        )?;
        write!(f, "result: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Corruption {
    None,
    /// Test hook: inflate region 1's bounds on the closed-form side so the
    /// detector has something to catch.
    #[cfg_attr(not(test), allow(dead_code))]
    InflateRegion1,
}

fn corrupt_contains(id: RegionId, bounds: &crate::region::RateBoundSet, r: &RateAlloc) -> bool {
    let factor = if id.n() == 1 { 1.35 } else { 1.0 };
    let rv = r.as_array();
    for (rate, bound) in rv.iter().zip(&bounds.per_signal) {
        if *rate > bound * factor {
            return false;
        }
    }
    if let Some(c) = bounds.sum_i {
        if rv[0] + rv[1] > c * factor {
            return false;
        }
    }
    if let Some(c) = bounds.sum_j {
        if rv[2] + rv[3] > c * factor {
            return false;
        }
    }
    true
}

/// Compares the closed-form union against the brute-force oracle on rate
/// vectors anchored to dominant faces of the valid regions, scaled inward
/// and outward, and far enough (by [`VERIFY_MARGIN`]) from every bounding
/// surface that both verdicts are unambiguous. Also counts satisfactions of
/// the excluded decoding-order pair (there must be none).
pub fn run_verify(samples: usize, seed: u64) -> VerifyReport {
    run_verify_impl(samples, seed, Corruption::None)
}

pub(crate) fn run_verify_impl(samples: usize, seed: u64, corruption: Corruption) -> VerifyReport {
    let mut report = VerifyReport {
        samples_requested: samples,
        samples_used: 0,
        inside: 0,
        outside: 0,
        disagreements: Vec::new(),
        excluded_pair_trials: samples,
        excluded_pair_hits: 0,
    };

    for k in 0..samples {
        let mut rng = substream_rng(seed, k as u64);
        let alpha_i = 10f64.powf(rng.gen_range(-4.0..-1.0));
        let alpha_j = alpha_i * 10f64.powf(rng.gen_range(0.05..2.0));
        let budget = alpha_j * 10f64.powf(rng.gen_range(-0.5..3.0));
        let ch = ChannelState::new(alpha_i, alpha_j, budget, 1.0).expect("valid by construction");

        // Uniform over the solid simplex sum(p) <= budget.
        let exp = |rng: &mut ChaCha8Rng| -> f64 { -(1.0 - rng.gen::<f64>()).ln().max(1e-300) };
        let e: [f64; 5] = [(); 5].map(|_| exp(&mut rng));
        let total: f64 = e.iter().sum();
        let p = PowerAlloc::new([
            budget * e[0] / total,
            budget * e[1] / total,
            budget * e[2] / total,
            budget * e[3] / total,
        ])
        .expect("non-negative");

        // Excluded-order-pair sub-test on the same power sample.
        if excluded_order_pair_feasible(&p, &ch) {
            report.excluded_pair_hits += 1;
        }

        let valid: Vec<RegionId> = RegionId::all()
            .into_iter()
            .filter(|id| power_region_contains(*id, &p, &ch))
            .collect();

        // Draw an anchored rate sample clear of every bounding surface.
        let mut accepted: Option<RateAlloc> = None;
        for _ in 0..64 {
            let id = valid[rng.gen_range(0..valid.len())];
            let b = eval_bounds(id, &p, &ch);
            let mut anchor = b.per_signal;
            if let Some(c12) = b.sum_i {
                let lo = (c12 - b.per_signal[1]).max(0.0);
                let hi = b.per_signal[0].min(c12);
                let x = lo + (hi - lo) * rng.gen::<f64>();
                anchor[0] = x;
                anchor[1] = c12 - x;
            }
            if let Some(c12) = b.sum_j {
                let lo = (c12 - b.per_signal[3]).max(0.0);
                let hi = b.per_signal[2].min(c12);
                let x = lo + (hi - lo) * rng.gen::<f64>();
                anchor[2] = x;
                anchor[3] = c12 - x;
            }
            let m = rng.gen_range(1e-3..0.3);
            let scale = if rng.gen_bool(0.5) { 1.0 - m } else { 1.0 + m };
            let r = RateAlloc::new(anchor.map(|x| x * scale)).expect("non-negative");
            let rv = r.as_array();
            let clear = valid.iter().all(|vid| {
                let vb = eval_bounds(*vid, &p, &ch);
                let mut ok = true;
                for (rate, bound) in rv.iter().zip(&vb.per_signal) {
                    if (rate - bound).abs() < VERIFY_MARGIN * bound.max(1.0) {
                        ok = false;
                    }
                }
                if let Some(c) = vb.sum_i {
                    if (rv[0] + rv[1] - c).abs() < VERIFY_MARGIN * c.max(1.0) {
                        ok = false;
                    }
                }
                if let Some(c) = vb.sum_j {
                    if (rv[2] + rv[3] - c).abs() < VERIFY_MARGIN * c.max(1.0) {
                        ok = false;
                    }
                }
                ok
            });
            if clear {
                accepted = Some(r);
                break;
            }
        }
        let Some(r) = accepted else { continue };

        let closed_form = match corruption {
            Corruption::None => achievable(&r, &p, &ch).is_some(),
            Corruption::InflateRegion1 => valid
                .iter()
                .any(|id| corrupt_contains(*id, &eval_bounds(*id, &p, &ch), &r)),
        };
        let oracle = oracle_achievable(&r, &p, &ch);
        report.samples_used += 1;
        if closed_form {
            report.inside += 1;
        } else {
            report.outside += 1;
        }
        if closed_form != oracle {
            report.disagreements.push(Disagreement {
                alpha_i,
                alpha_j,
                p: p.as_array(),
                r: r.as_array(),
                closed_form,
                oracle,
            });
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_conversions() {
        assert!((dbm_to_watts(35.0) - 3.1622776601683795).abs() < 1e-12);
        let cfg = ScenarioConfig::default();
        // -172.6 dBm/Hz over 5 MHz = -105.61 dBm.
        let noise_dbm = 10.0 * (cfg.noise_power_w() * 1e3).log10();
        assert!((noise_dbm - -105.6103).abs() < 1e-3);
    }

    #[test]
    fn path_loss_reference_point() {
        let cfg = ScenarioConfig {
            pl_const_db: 128.1,
            ..Default::default()
        };
        // Standard macro constants: 128.1 dB at 1 km, slope 37.6 dB/decade.
        assert!((path_loss_db(&cfg, 1.0) - 128.1).abs() < 1e-12);
        assert!((path_loss_db(&cfg, 10.0) - (128.1 + 37.6)).abs() < 1e-9);
        // 1 m clamp.
        assert!((path_loss_db(&cfg, 0.0) - (128.1 - 3.0 * 37.6)).abs() < 1e-9);
    }

    #[test]
    fn default_config_validates_and_roundtrips() {
        let cfg = ScenarioConfig::default();
        cfg.validate().unwrap();
        let text = serde_json::to_string(&cfg).unwrap();
        let back: ScenarioConfig = serde_json::from_str(&text).unwrap();
        back.validate().unwrap();
        assert_eq!(back.r_j_km, 0.6);
    }

    #[test]
    fn config_rejects_unknown_fields_and_bad_values() {
        let r: Result<ScenarioConfig, _> = serde_json::from_str(r#"{"r_z_km": 1.0}"#);
        assert!(r.is_err());
        let cfg = ScenarioConfig {
            c_ia: 1.0,
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
        let cfg = ScenarioConfig {
            r_j_km: 5.0,
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn drops_are_labeled_and_deterministic() {
        let cfg = ScenarioConfig::default();
        for k in 0..50 {
            let mut rng = substream_rng(7, k);
            let drop = gen_drop(&cfg, &mut rng).unwrap();
            assert!(drop.channel.alpha_i() < drop.channel.alpha_j());
            let mut rng = substream_rng(7, k);
            let again = gen_drop(&cfg, &mut rng).unwrap();
            assert_eq!(drop.channel.alpha_i(), again.channel.alpha_i());
            assert_eq!(drop.channel.alpha_j(), again.channel.alpha_j());
        }
    }

    #[test]
    fn swapped_drop_preserves_case_i() {
        let cfg = ScenarioConfig {
            c_ia: 0.1,
            c_ib: 0.9,
            c_ja: 0.7,
            c_jb: 0.3,
            ..Default::default()
        };
        let mut swapped_seen = false;
        for k in 0..200 {
            let mut rng = substream_rng(11, k);
            let drop = gen_drop(&cfg, &mut rng).unwrap();
            assert_eq!(
                crate::model::classify_cache_case(&drop.cache),
                crate::model::CacheCase::I
            );
            swapped_seen |= drop.swapped;
        }
        assert!(swapped_seen, "some drops should swap labels");
    }

    #[test]
    fn sweep_parsing() {
        assert_eq!(
            parse_sweep("0.2:1.0:5").unwrap(),
            vec![0.2, 0.4, 0.6000000000000001, 0.8, 1.0]
        );
        assert_eq!(parse_sweep("2:2:1").unwrap(), vec![2.0]);
        assert!(parse_sweep("1:2").is_err());
        assert!(parse_sweep("a:2:3").is_err());
        assert!(parse_sweep("1:2:0").is_err());
    }

    #[test]
    fn csv_headers_are_stable() {
        let mut buf = Vec::new();
        write_sweep_csv(
            &mut buf,
            &[SweepRow {
                scheme: "oma",
                r_i: 1.5,
                r_j: 0.25,
            }],
        )
        .unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("scheme,r_i,r_j\n"));
        assert!(text.ends_with("oma,1.5,0.25\n"));
        assert!(!text.contains('\r'));

        let mut buf = Vec::new();
        write_mc_csv(
            &mut buf,
            &[McRow {
                r_j_km: 0.6,
                scheme: "proposed",
                mean_t_s: 12.125,
                ci95_s: 0.5,
            }],
        )
        .unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("r_j_km,scheme,mean_t_s,ci95_s\n"));
        assert!(text.contains("0.6,proposed,12.125,0.5"));
    }

    #[test]
    fn csv_floats_roundtrip_exactly() {
        let value = 12.287856641840545_f64 / 7.0;
        let mut buf = Vec::new();
        write_mc_csv(
            &mut buf,
            &[McRow {
                r_j_km: value,
                scheme: "oma",
                mean_t_s: value * 3.0,
                ci95_s: value / 3.0,
            }],
        )
        .unwrap();
        let text = String::from_utf8(buf).unwrap();
        let line = text.lines().nth(1).unwrap();
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[0].parse::<f64>().unwrap(), value);
        assert_eq!(fields[2].parse::<f64>().unwrap(), value * 3.0);
        assert_eq!(fields[3].parse::<f64>().unwrap(), value / 3.0);
    }

    #[test]
    fn small_montecarlo_is_deterministic() {
        let cfg = ScenarioConfig::default();
        let rows_a = run_montecarlo(&cfg, &[0.4, 1.2], 20, 42).unwrap();
        let rows_b = run_montecarlo(&cfg, &[0.4, 1.2], 20, 42).unwrap();
        assert_eq!(rows_a, rows_b);
        assert_eq!(rows_a.len(), 8);
        // Dominance holds on averages too.
        let t = |rj: f64, s: &str| {
            rows_a
                .iter()
                .find(|r| r.r_j_km == rj && r.scheme == s)
                .unwrap()
                .mean_t_s
        };
        for rj in [0.4, 1.2] {
            assert!(t(rj, "proposed") <= t(rj, "noma-cache"));
            assert!(t(rj, "noma-cache") <= t(rj, "noma-nocache"));
            assert!(t(rj, "proposed") <= t(rj, "oma"));
        }
    }

    #[test]
    fn verify_small_run_agrees() {
        let report = run_verify(1500, 9);
        assert!(report.passed(), "{report}");
        assert!(report.samples_used > 1200);
        assert!(report.inside > 300 && report.outside > 300);
    }

    #[test]
    fn verify_is_deterministic() {
        let a = format!("{}", run_verify(300, 5));
        let b = format!("{}", run_verify(300, 5));
        assert_eq!(a, b);
    }

    #[test]
    fn corrupted_bounds_are_detected() {
        let report = run_verify_impl(800, 21, Corruption::InflateRegion1);
        assert!(
            !report.disagreements.is_empty(),
            "detector failed to notice corrupted bounds"
        );
    }
}
