//! Minimum file-delivery-time optimization.
//!
//! Delivery time is `T = max_{k,s} β_{k,s} / (bw · r_{k,s})`: the slowest
//! codeword finishes last. Writing `ρ = 1/T`, each region's best rate
//! `ρ*_n = max { ρ : some p ∈ P_n supports spectral efficiencies
//! ρ·β_{k,s}/bw }` is found by bisection. Feasibility of a candidate `ρ`
//! is a [`HalfspaceSystem`] built from the region's linearized capacity
//! bounds plus the closure of the region predicate. The overall optimum
//! is `T* = 1 / max_n ρ*_n` with the winning region's decoding order and
//! power witness.
//!
//! Codewords owing zero bits contribute no constraint and are pinned to zero
//! power and rate; spending power on them only adds interference.
//!
//! The TDMA and conventional-NOMA baselines live here too, so every scheme
//! in the experiments is optimized by the same machinery (NOMA shares the
//! bisection path; TDMA has the closed-form time split).

use crate::lp::{feasible, linearize, Halfspace, HalfspaceSystem, LpError};
use crate::model::{capacity, ChannelState, DeliveryLoad, PowerAlloc, RateAlloc, Signal};
use crate::region::{bound_defs, decoding_order, BoundTarget, DecodingOrder, RegionId};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DeliveryError {
    #[error("nothing to deliver: every per-signal load is zero")]
    NothingToDeliver,
    #[error("no region admits a positive delivery rate")]
    Infeasible,
    #[error(transparent)]
    Lp(#[from] LpError),
}

/// Bracket and termination gap for the `ρ` bisection (units 1/s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BisectionConfig {
    pub lower: f64,
    pub upper: f64,
    pub epsilon: f64,
}

impl BisectionConfig {
    pub fn new(lower: f64, upper: f64, epsilon: f64) -> Self {
        assert!(
            0.0 <= lower && lower < upper && epsilon > 0.0,
            "need 0 <= lower < upper and epsilon > 0"
        );
        Self {
            lower,
            upper,
            epsilon,
        }
    }

    /// Default bracket for a load: no codeword can outrun the strong user's
    /// interference-free rate, so `ρ <= bw·C(P/α_i) / min β` over the
    /// positive loads. Termination at a 1e-6 relative gap.
    pub fn default_for(ch: &ChannelState, load: &DeliveryLoad) -> Option<Self> {
        let min_beta = load
            .as_array()
            .into_iter()
            .filter(|b| *b > 0.0)
            .fold(f64::INFINITY, f64::min);
        if !min_beta.is_finite() {
            return None;
        }
        let upper = ch.bandwidth_hz() * capacity(ch.power_budget() / ch.alpha_i()) / min_beta;
        Some(Self::new(0.0, upper, 1e-6 * upper))
    }
}

fn mask_to_vec(mask: u8) -> [f64; 4] {
    let mut v = [0.0; 4];
    for (s, slot) in v.iter_mut().enumerate() {
        if mask & (1 << s) != 0 {
            *slot = 1.0;
        }
    }
    v
}

fn push_region_closure(sys: &mut HalfspaceSystem, id: RegionId, ch: &ChannelState) {
    let gap = ch.alpha_gap();
    match id.n() {
        1 => {}
        2 => sys.push(Halfspace {
            normal: [0.0, 0.0, -1.0, 1.0],
            offset: gap,
        }),
        3 => sys.push(Halfspace {
            normal: [-1.0, 0.0, 0.0, 0.0],
            offset: -gap,
        }),
        4 => sys.push(Halfspace {
            normal: [1.0, 0.0, 0.0, 0.0],
            offset: gap,
        }),
        5 => sys.push(Halfspace {
            normal: [-1.0, 0.0, 1.0, 0.0],
            offset: -gap,
        }),
        6 | 7 => {
            sys.push(Halfspace {
                normal: [1.0, 0.0, -1.0, 0.0],
                offset: gap,
            });
            match id.delta_branch() {
                Some(true) => sys.push(Halfspace {
                    normal: [-1.0, 1.0, 1.0, 0.0],
                    offset: -gap,
                }),
                Some(false) => sys.push(Halfspace {
                    normal: [1.0, -1.0, -1.0, 0.0],
                    offset: gap,
                }),
                None => {}
            }
        }
        _ => unreachable!(),
    }
}

/// The feasibility system of one region at a candidate rate `rho` (1/s):
/// linearized per-signal and sum capacity bounds for every positive load,
/// the closure of the region predicate, and zero pins for empty codewords.
pub fn region_system(
    id: RegionId,
    ch: &ChannelState,
    load: &DeliveryLoad,
    rho: f64,
) -> HalfspaceSystem {
    let bw = ch.bandwidth_hz();
    let mut sys = HalfspaceSystem::new(ch.power_budget());
    push_region_closure(&mut sys, id, ch);
    for sig in Signal::ALL {
        if load.beta(sig) == 0.0 {
            let mut normal = [0.0; 4];
            normal[sig.index()] = -1.0;
            sys.push(Halfspace {
                normal,
                offset: 0.0,
            });
        }
    }
    for def in bound_defs(id) {
        let target_bits = match def.target {
            BoundTarget::Single(sig) => load.beta(sig),
            BoundTarget::UserSum(user) => load.total_for(user),
        };
        if target_bits > 0.0 {
            sys.push(linearize(
                mask_to_vec(def.num),
                mask_to_vec(def.den),
                ch.alpha(def.noise),
                rho * target_bits / bw,
            ));
        }
    }
    sys
}

/// Bisection over `rho` against a system builder. Returns the largest
/// verified-feasible `rho` (within `epsilon` of the supremum) and its
/// witness, or `None` when even `rho = max(lower, 0)` is infeasible.
fn bisect_feasibility<F>(
    build: F,
    cfg: &BisectionConfig,
) -> Result<Option<(f64, [f64; 4])>, LpError>
where
    F: Fn(f64) -> HalfspaceSystem,
{
    let mut lo = cfg.lower;
    let mut witness = match feasible(&build(lo))? {
        Some(w) => w,
        None => {
            if lo == 0.0 {
                return Ok(None);
            }
            // Caller passed a positive lower bound that is not feasible;
            // restart the bracket from zero.
            lo = 0.0;
            match feasible(&build(0.0))? {
                Some(w) => w,
                None => return Ok(None),
            }
        }
    };
    let mut hi = cfg.upper;
    if let Some(w) = feasible(&build(hi))? {
        // The bracket cannot enclose the optimum; the upper bound itself is
        // attainable (single-codeword corner cases).
        return Ok(Some((hi, w)));
    }
    while hi - lo > cfg.epsilon {
        let mid = 0.5 * (lo + hi);
        match feasible(&build(mid))? {
            Some(w) => {
                lo = mid;
                witness = w;
            }
            None => hi = mid,
        }
    }
    Ok(Some((lo, witness)))
}

/// Best inverse delivery time of a single region (all constraints of that
/// region only). `None` means the region's power set is empty under the
/// budget and pins, so it contributes nothing to the optimum.
pub fn rho_star_region(
    id: RegionId,
    ch: &ChannelState,
    load: &DeliveryLoad,
    cfg: &BisectionConfig,
) -> Result<Option<(f64, PowerAlloc)>, DeliveryError> {
    let out = bisect_feasibility(|rho| region_system(id, ch, load, rho), cfg)?;
    Ok(out.map(|(rho, w)| {
        (
            rho,
            PowerAlloc::new(w).expect("simplex witnesses are non-negative"),
        )
    }))
}

/// The full minimum-delivery-time solution.
#[derive(Debug, Clone)]
pub struct DeliverySolution {
    pub delivery_time_s: f64,
    /// Inverse delivery time actually certified feasible (1/s).
    pub rho: f64,
    pub region: RegionId,
    pub order: (DecodingOrder, DecodingOrder),
    pub p_star: PowerAlloc,
    /// Spectral efficiencies `ρ·β/bw` (bit/s/Hz): the minimal rates that
    /// finish every codeword exactly at `T*`.
    pub r_star: RateAlloc,
}

/// Optimizes decoding region, power, and rate allocation jointly; the
/// returned time is within the bisection gap of the optimum.
pub fn min_delivery_time(
    ch: &ChannelState,
    load: &DeliveryLoad,
    cfg: Option<BisectionConfig>,
) -> Result<DeliverySolution, DeliveryError> {
    let cfg = match cfg.or_else(|| BisectionConfig::default_for(ch, load)) {
        Some(c) => c,
        None => return Err(DeliveryError::NothingToDeliver),
    };
    let mut best: Option<(f64, PowerAlloc, RegionId)> = None;
    for id in RegionId::all() {
        if let Some((rho, witness)) = rho_star_region(id, ch, load, &cfg)? {
            let better = match &best {
                Some((b, _, _)) => rho > *b,
                None => true,
            };
            if better {
                best = Some((rho, witness, id));
            }
        }
    }
    let (rho, p_star, region) = best.ok_or(DeliveryError::Infeasible)?;
    if rho <= 0.0 {
        return Err(DeliveryError::Infeasible);
    }
    let bw = ch.bandwidth_hz();
    let r_star = RateAlloc::new(load.as_array().map(|b| rho * b / bw))
        .expect("rates from non-negative loads");
    Ok(DeliverySolution {
        delivery_time_s: 1.0 / rho,
        rho,
        region,
        order: decoding_order(region),
        p_star,
        r_star,
    })
}

/// Per-user bits left after offloading the cache-hit part, the load both
/// baselines deliver: `β_k = (1 − c_kf)·V_f` for the requested file.
pub fn offloaded_bits(cache: &crate::model::CacheConfig) -> (f64, f64) {
    let (c_ia, _, _, c_jb) = cache.fractions();
    (
        (1.0 - c_ia) * cache.v_a_bits(),
        (1.0 - c_jb) * cache.v_b_bits(),
    )
}

/// TDMA baseline result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OmaSolution {
    pub time_s: f64,
    /// Fraction of time serving UE i.
    pub tau: f64,
}

/// Time-shared TDMA: UE i transmits for a `τ` fraction of the time at its
/// interference-free rate, UE j for the rest. `T(τ) = max(μ_i/τ, μ_j/(1−τ))`
/// with `μ_k = β_k/(bw·C(P/α_k))` is minimized by equalizing both sides.
pub fn oma_min_delivery_time(ch: &ChannelState, beta_i_bits: f64, beta_j_bits: f64) -> OmaSolution {
    assert!(beta_i_bits >= 0.0 && beta_j_bits >= 0.0);
    let bw = ch.bandwidth_hz();
    let mu_i = beta_i_bits / (bw * capacity(ch.power_budget() / ch.alpha_i()));
    let mu_j = beta_j_bits / (bw * capacity(ch.power_budget() / ch.alpha_j()));
    if mu_i == 0.0 && mu_j == 0.0 {
        return OmaSolution {
            time_s: 0.0,
            tau: 0.5,
        };
    }
    if mu_j == 0.0 {
        return OmaSolution {
            time_s: mu_i,
            tau: 1.0,
        };
    }
    if mu_i == 0.0 {
        return OmaSolution {
            time_s: mu_j,
            tau: 0.0,
        };
    }
    OmaSolution {
        time_s: mu_i + mu_j,
        tau: mu_i / (mu_i + mu_j),
    }
}

/// Slot-fraction TDMA reading: each user's delivery occupies the whole
/// horizon at its slot-scaled rate, `T(τ) = μ_i/τ + μ_j/(1−τ)`, minimized
/// at `τ* = √μ_i/(√μ_i+√μ_j)` with `T* = (√μ_i+√μ_j)²`. Never faster than
/// [`oma_min_delivery_time`]; this is the reading that reproduces the
/// reference delivery-time gaps between the baselines.
pub fn oma_sum_form_delivery_time(
    ch: &ChannelState,
    beta_i_bits: f64,
    beta_j_bits: f64,
) -> OmaSolution {
    assert!(beta_i_bits >= 0.0 && beta_j_bits >= 0.0);
    let bw = ch.bandwidth_hz();
    let mu_i = beta_i_bits / (bw * capacity(ch.power_budget() / ch.alpha_i()));
    let mu_j = beta_j_bits / (bw * capacity(ch.power_budget() / ch.alpha_j()));
    if mu_i == 0.0 || mu_j == 0.0 {
        // Degenerate loads collapse to the single-user schedule.
        return oma_min_delivery_time(ch, beta_i_bits, beta_j_bits);
    }
    let (si, sj) = (mu_i.sqrt(), mu_j.sqrt());
    OmaSolution {
        time_s: (si + sj) * (si + sj),
        tau: si / (si + sj),
    }
}

/// Conventional-NOMA baseline result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NomaSolution {
    pub time_s: f64,
    pub p_i: f64,
    pub p_j: f64,
}

/// Two-codeword NOMA: UE i decodes and cancels `x_B` first, so
/// `r_i = C(p_i/α_i)` and `r_j = C(p_j/(p_i+α_j))`. Delivery time is
/// minimized by the same `ρ` bisection over the two linearized constraints;
/// caching (when available) only shrinks the per-user bit loads upstream.
pub fn noma_min_delivery_time(
    ch: &ChannelState,
    beta_i_bits: f64,
    beta_j_bits: f64,
) -> Result<NomaSolution, DeliveryError> {
    assert!(beta_i_bits >= 0.0 && beta_j_bits >= 0.0);
    if beta_i_bits == 0.0 && beta_j_bits == 0.0 {
        return Ok(NomaSolution {
            time_s: 0.0,
            p_i: 0.0,
            p_j: 0.0,
        });
    }
    let bw = ch.bandwidth_hz();
    let min_beta = [beta_i_bits, beta_j_bits]
        .into_iter()
        .filter(|b| *b > 0.0)
        .fold(f64::INFINITY, f64::min);
    let upper = bw * capacity(ch.power_budget() / ch.alpha_i()) / min_beta;
    let cfg = BisectionConfig::new(0.0, upper, 1e-6 * upper);
    // Map (p_i, p_j) onto the (A2, B2) slots of the 4-variable machinery and
    // pin the CIC-only slots to zero.
    let build = |rho: f64| {
        let mut sys = HalfspaceSystem::new(ch.power_budget());
        sys.push(Halfspace {
            normal: [-1.0, 0.0, 0.0, 0.0],
            offset: 0.0,
        });
        sys.push(Halfspace {
            normal: [0.0, 0.0, -1.0, 0.0],
            offset: 0.0,
        });
        if beta_i_bits > 0.0 {
            sys.push(linearize(
                [0.0, 1.0, 0.0, 0.0],
                [0.0; 4],
                ch.alpha_i(),
                rho * beta_i_bits / bw,
            ));
        }
        if beta_j_bits > 0.0 {
            sys.push(linearize(
                [0.0, 0.0, 0.0, 1.0],
                [0.0, 1.0, 0.0, 0.0],
                ch.alpha_j(),
                rho * beta_j_bits / bw,
            ));
        }
        sys
    };
    let (rho, w) = bisect_feasibility(build, &cfg)?.ok_or(DeliveryError::Infeasible)?;
    if rho <= 0.0 {
        return Err(DeliveryError::Infeasible);
    }
    Ok(NomaSolution {
        time_s: 1.0 / rho,
        p_i: w[1],
        p_j: w[3],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::feasible;
    use crate::model::{split_files, CacheConfig};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn ch() -> ChannelState {
        ChannelState::new(1e-3, 1e-2, 10.0, 5e6).unwrap()
    }

    fn reference_load() -> DeliveryLoad {
        let cache = CacheConfig::new((0.2, 0.8, 0.8, 0.2), 4e9, 4e9, None).unwrap();
        split_files(&cache).unwrap()
    }

    #[test]
    fn oma_symmetric_and_single_user() {
        let chan = ChannelState::new(1e-3, 1e-3 + 1e-12, 10.0, 1e6).unwrap();
        let sol = oma_min_delivery_time(&chan, 1e6, 1e6);
        assert!((sol.tau - 0.5).abs() < 1e-9);
        let mu = 1e6 / (1e6 * capacity(10.0 / 1e-3));
        assert!((sol.time_s - 2.0 * mu).abs() < 1e-9 * mu);

        let sol = oma_min_delivery_time(&ch(), 1e6, 0.0);
        assert_eq!(sol.tau, 1.0);
        assert!((sol.time_s - 1e6 / (5e6 * capacity(10.0 / 1e-3))).abs() < 1e-15);

        let sol = oma_min_delivery_time(&ch(), 0.0, 0.0);
        assert_eq!(sol.time_s, 0.0);
    }

    #[test]
    fn oma_matches_grid_search_over_tau() {
        let chan = ch();
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..20 {
            let bi = rng.gen_range(1e6..1e9);
            let bj = rng.gen_range(1e6..1e9);
            let sol = oma_min_delivery_time(&chan, bi, bj);
            let bw = chan.bandwidth_hz();
            let (ci, cj) = (
                capacity(10.0 / chan.alpha_i()),
                capacity(10.0 / chan.alpha_j()),
            );
            let mut best = f64::INFINITY;
            for k in 1..10_000 {
                let tau = k as f64 / 10_000.0;
                let t = (bi / (bw * tau * ci)).max(bj / (bw * (1.0 - tau) * cj));
                best = best.min(t);
            }
            assert!(sol.time_s <= best + 1e-9 * best);
            assert!(best <= sol.time_s * (1.0 + 1e-3));
        }
    }

    #[test]
    fn noma_single_user_and_symmetric_closed_form() {
        let chan = ch();
        let sol = noma_min_delivery_time(&chan, 1e9, 0.0).unwrap();
        let expect = 1e9 / (5e6 * capacity(10.0 / 1e-3));
        assert!((sol.time_s - expect).abs() < 1e-4 * expect);

        // Nearly equal noise levels, equal loads: the optimum equalizes
        // C(p_i/alpha) = C(p_j/(p_i+alpha)), p_i + p_j = P.
        let alpha = 1e-2;
        let chan = ChannelState::new(alpha, alpha * (1.0 + 1e-9), 10.0, 5e6).unwrap();
        let beta = 2e9;
        let sol = noma_min_delivery_time(&chan, beta, beta).unwrap();
        let p_i = -alpha + (alpha * alpha + alpha * 10.0).sqrt();
        let expect = beta / (5e6 * capacity(p_i / alpha));
        assert!(
            (sol.time_s - expect).abs() < 1e-4 * expect,
            "{} vs {expect}",
            sol.time_s
        );
    }

    #[test]
    fn noma_matches_power_grid() {
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..10 {
            let ai = 10f64.powf(rng.gen_range(-4.0..-2.0));
            let aj = ai * rng.gen_range(2.0..50.0);
            let chan = ChannelState::new(ai, aj, 10.0, 5e6).unwrap();
            let bi = rng.gen_range(1e8..4e9);
            let bj = rng.gen_range(1e8..4e9);
            let sol = noma_min_delivery_time(&chan, bi, bj).unwrap();
            let bw = chan.bandwidth_hz();
            let mut best = f64::INFINITY;
            for k in 0..=20_000 {
                let p_i = 10.0 * k as f64 / 20_000.0;
                let p_j = 10.0 - p_i;
                let ri = bw * capacity(p_i / ai);
                let rj = bw * capacity(p_j / (p_i + aj));
                let t = (bi / ri).max(bj / rj);
                if t.is_finite() {
                    best = best.min(t);
                }
            }
            // The bisection gap is 1e-6 of the bracket top, which can be a
            // couple of orders above rho*; allow that slack in T.
            assert!(
                sol.time_s <= best * (1.0 + 1e-4),
                "optimizer worse than grid: {} vs {best}",
                sol.time_s
            );
            assert!(
                best <= sol.time_s * (1.0 + 2e-3),
                "grid beats optimizer: {best} vs {}",
                sol.time_s
            );
        }
    }

    #[test]
    fn cached_and_uncached_noma_scale_with_beta() {
        let chan = ch();
        let a = noma_min_delivery_time(&chan, 4e9, 4e9).unwrap();
        let b = noma_min_delivery_time(&chan, 3.2e9, 3.2e9).unwrap();
        // Same rho-problem shape: scaling both loads scales the time.
        assert!((a.time_s * 0.8 - b.time_s).abs() < 1e-3 * a.time_s);
    }

    #[test]
    fn region_feasibility_flips_at_rho_star() {
        let chan = ch();
        let load = reference_load();
        let cfg = BisectionConfig::default_for(&chan, &load).unwrap();
        for id in RegionId::all() {
            if let Some((rho, _)) = rho_star_region(id, &chan, &load, &cfg).unwrap() {
                if rho == 0.0 {
                    continue;
                }
                let margin = 50.0 * cfg.epsilon;
                let below = feasible(&region_system(id, &chan, &load, rho - margin)).unwrap();
                let above = feasible(&region_system(id, &chan, &load, rho + margin)).unwrap();
                assert!(below.is_some(), "{id}: infeasible just below rho*");
                assert!(above.is_none(), "{id}: feasible well above rho*");
            }
        }
    }

    #[test]
    fn verdict_is_monotone_in_rho() {
        let chan = ch();
        let load = reference_load();
        let cfg = BisectionConfig::default_for(&chan, &load).unwrap();
        let id = RegionId::numbered(1).unwrap();
        let (rho1, _) = rho_star_region(id, &chan, &load, &cfg).unwrap().unwrap();
        let mut prev = true;
        for k in 0..40 {
            let rho = rho1 * 2.0 * k as f64 / 39.0;
            let now = feasible(&region_system(id, &chan, &load, rho))
                .unwrap()
                .is_some();
            assert!(!(now && !prev), "feasibility regained as rho grew");
            prev = now;
        }
    }

    #[test]
    fn solution_satisfies_contract() {
        let chan = ch();
        let load = reference_load();
        let sol = min_delivery_time(&chan, &load, None).unwrap();
        assert!(sol.delivery_time_s > 0.0);
        assert!(sol.p_star.within_budget(chan.power_budget()));
        // C4 with equality by construction.
        let bw = chan.bandwidth_hz();
        for sig in Signal::ALL {
            let delivered = sol.r_star.get(sig) * bw * sol.delivery_time_s;
            assert!(delivered >= load.beta(sig) * (1.0 - 1e-6));
        }
        // The witness admits the certified rho in its own region system.
        let sys = region_system(sol.region, &chan, &load, sol.rho);
        assert!(sys.satisfied_by(&sol.p_star.as_array()));
        // Dominant-face consistency: at the optimum some capacity bound is
        // (near-)tight, otherwise rho could still grow.
        let bounds = crate::region::rate_bounds(sol.region, &sol.p_star, &chan).unwrap();
        let r = sol.r_star.as_array();
        let mut ratios = vec![];
        for (rate, bound) in r.iter().zip(&bounds.per_signal) {
            if *bound > 0.0 {
                ratios.push(rate / bound);
            }
        }
        if let Some(c) = bounds.sum_i {
            ratios.push((r[0] + r[1]) / c);
        }
        if let Some(c) = bounds.sum_j {
            ratios.push((r[2] + r[3]) / c);
        }
        let max_ratio = ratios.iter().cloned().fold(0.0, f64::max);
        assert!(max_ratio > 1.0 - 1e-3, "no binding constraint: {max_ratio}");
        assert!(max_ratio <= 1.0 + 1e-6);
    }

    #[test]
    fn rejects_empty_load() {
        let chan = ch();
        let load = DeliveryLoad::from_beta([0.0; 4]).unwrap();
        assert!(matches!(
            min_delivery_time(&chan, &load, None),
            Err(DeliveryError::NothingToDeliver)
        ));
    }

    #[test]
    fn cic_only_load_matches_two_power_grid() {
        // Fully shared tail (c̄ = 1): only the cross-cached codewords are
        // sent, each clean at its receiver in region 1.
        let chan = ch();
        let cache = CacheConfig::new((0.4, 1.0, 1.0, 0.4), 4e9, 4e9, None).unwrap();
        let load = split_files(&cache).unwrap();
        assert_eq!(load.beta(Signal::A2), 0.0);
        assert_eq!(load.beta(Signal::B2), 0.0);
        let sol = min_delivery_time(&chan, &load, None).unwrap();

        let bw = chan.bandwidth_hz();
        let (bi, bj) = (load.beta(Signal::A1), load.beta(Signal::B1));
        let mut best = f64::INFINITY;
        for k in 0..=20_000 {
            let p0 = 10.0 * k as f64 / 20_000.0;
            let p2 = 10.0 - p0;
            let t = (bi / (bw * capacity(p0 / chan.alpha_i())))
                .max(bj / (bw * capacity(p2 / chan.alpha_j())));
            if t.is_finite() {
                best = best.min(t);
            }
        }
        assert!((sol.delivery_time_s - best).abs() < 2e-3 * best);
    }

    #[test]
    fn zero_cache_equals_uncached_noma() {
        let chan = ch();
        let cache = CacheConfig::new((0.0, 0.0, 0.0, 0.0), 4e9, 4e9, None).unwrap();
        let load = split_files(&cache).unwrap();
        let proposed = min_delivery_time(&chan, &load, None).unwrap();
        let noma = noma_min_delivery_time(&chan, 4e9, 4e9).unwrap();
        assert!(
            (proposed.delivery_time_s - noma.time_s).abs() < 1e-4 * noma.time_s,
            "{} vs {}",
            proposed.delivery_time_s,
            noma.time_s
        );
    }

    #[test]
    fn more_cache_never_hurts() {
        let chan = ch();
        let mut rng = StdRng::seed_from_u64(77);
        for _ in 0..10 {
            let c_ia = rng.gen_range(0.0..0.5);
            let c_ja = rng.gen_range(c_ia..0.9);
            let c_jb = rng.gen_range(0.0..0.5);
            let c_ib = rng.gen_range(c_jb..0.9);
            let base = CacheConfig::new((c_ia, c_ib, c_ja, c_jb), 4e9, 4e9, None).unwrap();
            let t_base = min_delivery_time(&chan, &split_files(&base).unwrap(), None)
                .unwrap()
                .delivery_time_s;
            let richer =
                CacheConfig::new((c_ia, c_ib, (c_ja + 0.1).min(1.0), c_jb), 4e9, 4e9, None)
                    .unwrap();
            let t_rich = min_delivery_time(&chan, &split_files(&richer).unwrap(), None)
                .unwrap()
                .delivery_time_s;
            assert!(t_rich <= t_base * (1.0 + 1e-4));
        }
    }

    #[test]
    fn dominance_chain_on_random_channels() {
        let mut rng = StdRng::seed_from_u64(2024);
        let cache = CacheConfig::new((0.2, 0.8, 0.8, 0.2), 4e9, 4e9, None).unwrap();
        let load = split_files(&cache).unwrap();
        for _ in 0..10 {
            let ai = 10f64.powf(rng.gen_range(-5.0..-2.0));
            let aj = ai * rng.gen_range(1.5..80.0);
            let chan = ChannelState::new(ai, aj, 3.162, 5e6).unwrap();
            let t_prop = min_delivery_time(&chan, &load, None)
                .unwrap()
                .delivery_time_s;
            let (bi, bj) = offloaded_bits(&cache);
            let t_cached = noma_min_delivery_time(&chan, bi, bj).unwrap().time_s;
            let t_plain = noma_min_delivery_time(&chan, 4e9, 4e9).unwrap().time_s;
            let t_oma = oma_min_delivery_time(&chan, bi, bj).time_s;
            let slack = 1.0 + 1e-4;
            assert!(t_prop <= t_cached * slack);
            assert!(t_cached <= t_plain * slack);
            assert!(t_prop <= t_oma * slack);
        }
    }
}
