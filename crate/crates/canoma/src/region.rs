//! Closed-form achievable rate regions of the cache-aided NOMA downlink.
//!
//! After cache-enabled interference cancellation (CIC), UE i still receives
//! `{x_A1, x_A2, x_B2}` and UE j receives `{x_A2, x_B1, x_B2}`. Depending on
//! which signal each user decodes first, seven rate regions `R_n` arise, each
//! valid on a power region `P_n` and each a small polyhedron in the rate
//! vector `r` once the power vector `p` is fixed:
//!
//! | n | power region `P_n`                 | bound set highlights                        |
//! |---|------------------------------------|---------------------------------------------|
//! | 1 | all of `P`                         | `r_i2 ≤ C(p_i2/α_i)`, sum bound for UE j     |
//! | 2 | `p_j2 − p_j1 > α_j − α_i`          | `r_j1 ≤ C(p_j1/α_j)`                         |
//! | 3 | `p_i1 < α_j − α_i`                 | UE i interference-free + sum bound           |
//! | 4 | complement of `P_3`                | `r_j2 ≤ C(p_j2/α_j)`                         |
//! | 5 | `p_i1 < p_j1 + α_j − α_i`          | UE i interference-free + sum bound           |
//! | 6 | complement of `P_5`, Δ-split       | `r_i1` denominator depends on the Δ branch   |
//! | 7 | complement of `P_5`                | UE j interference-free + sum bound           |
//!
//! Region 6 splits on the indicator `Δ = 1[p_i2 > p_i1 − p_j1 − α_j + α_i]`.
//! `Δ = 1` is exactly the condition under which UE i can decode and cancel
//! `x_B2` after removing `x_A2` (the worst-case rate of `x_B2`,
//! `C(p_j2/(p_i2+p_j1+α_j))`, then fits under UE i's capacity
//! `C(p_j2/(p_i1+α_i))`), so the `Δ = 1` branch gets the interference-free
//! `r_i1 ≤ C(p_i1/α_i)` and the `Δ = 0` branch keeps `p_j2` as noise. The
//! brute-force decoder in [`crate::oracle`] confirms the assignment.
//!
//! The overall achievable region is the union of the seven (eight, counting
//! both Δ branches) regions over all power vectors satisfying the budget.
//! Strict power-region predicates are evaluated with a small absolute
//! tolerance and boundary points belong to the closure of both sides; the
//! bound values are continuous across those boundaries, so the union is
//! insensitive to the assignment.

use crate::model::{capacity, ChannelState, PowerAlloc, RateAlloc, Signal, User, BOUNDARY_TOL};
use std::fmt;
use thiserror::Error;

/// Relative slack when testing `r` against a rate bound (closed regions).
const RATE_TOL: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum RegionError {
    #[error("power allocation lies outside region {region}")]
    RegionMismatch { region: RegionId },
    #[error("invalid region number {0}; regions are numbered 1..=7")]
    InvalidNumber(u8),
}

/// Identifier of one closed-form region. Region 6 always carries its Δ
/// branch; the other regions never do.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RegionId {
    n: u8,
    delta: Option<bool>,
}

impl RegionId {
    /// A region other than 6.
    pub fn numbered(n: u8) -> Result<Self, RegionError> {
        match n {
            1..=5 | 7 => Ok(Self { n, delta: None }),
            _ => Err(RegionError::InvalidNumber(n)),
        }
    }

    /// Region 6 with an explicit Δ branch.
    pub fn region6(delta: bool) -> Self {
        Self {
            n: 6,
            delta: Some(delta),
        }
    }

    /// All eight region branches, in witness order: ascending `n`, and for
    /// region 6 the `Δ = 1` branch before `Δ = 0`.
    pub fn all() -> [RegionId; 8] {
        [
            Self { n: 1, delta: None },
            Self { n: 2, delta: None },
            Self { n: 3, delta: None },
            Self { n: 4, delta: None },
            Self { n: 5, delta: None },
            Self::region6(true),
            Self::region6(false),
            Self { n: 7, delta: None },
        ]
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn delta_branch(&self) -> Option<bool> {
        self.delta
    }
}

impl fmt::Display for RegionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.delta {
            Some(d) => write!(f, "R6(delta={})", d as u8),
            None => write!(f, "R{}", self.n),
        }
    }
}

// ---------------------------------------------------------------------------
// Bound tables
// ---------------------------------------------------------------------------

/// What a single capacity bound constrains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum BoundTarget {
    /// `r_{k,s} <= C(...)`
    Single(Signal),
    /// `r_{k,1} + r_{k,2} <= C(...)`
    UserSum(User),
}

/// One capacity bound `C(num·p / (den·p + α_user))`, with `num`/`den` as
/// bitmasks over the power-vector indices.
#[derive(Debug, Clone, Copy)]
pub(crate) struct BoundDef {
    pub target: BoundTarget,
    pub num: u8,
    pub den: u8,
    pub noise: User,
}

const A1: u8 = 1 << 0;
const A2: u8 = 1 << 1;
const B1: u8 = 1 << 2;
const B2: u8 = 1 << 3;

const fn single(sig: Signal, num: u8, den: u8, noise: User) -> BoundDef {
    BoundDef {
        target: BoundTarget::Single(sig),
        num,
        den,
        noise,
    }
}

const fn user_sum(user: User, num: u8, den: u8, noise: User) -> BoundDef {
    BoundDef {
        target: BoundTarget::UserSum(user),
        num,
        den,
        noise,
    }
}

const R1_BOUNDS: &[BoundDef] = &[
    single(Signal::A1, A1, A2 | B2, User::I),
    single(Signal::A2, A2, 0, User::I),
    single(Signal::B1, B1, A2, User::J),
    single(Signal::B2, B2, A2, User::J),
    user_sum(User::J, B1 | B2, A2, User::J),
];

const R2_BOUNDS: &[BoundDef] = &[
    single(Signal::A1, A1, A2 | B2, User::I),
    single(Signal::A2, A2, B2, User::I),
    single(Signal::B1, B1, 0, User::J),
    single(Signal::B2, B2, A2 | B1, User::J),
];

const R3_BOUNDS: &[BoundDef] = &[
    single(Signal::A1, A1, 0, User::I),
    single(Signal::A2, A2, 0, User::I),
    user_sum(User::I, A1 | A2, 0, User::I),
    single(Signal::B1, B1, A2 | B2, User::J),
    single(Signal::B2, B2, A2, User::J),
];

const R4_BOUNDS: &[BoundDef] = &[
    single(Signal::A1, A1, B2, User::I),
    single(Signal::A2, A2, A1 | B2, User::I),
    single(Signal::B1, B1, A2 | B2, User::J),
    single(Signal::B2, B2, 0, User::J),
];

const R5_BOUNDS: &[BoundDef] = &[
    single(Signal::A1, A1, 0, User::I),
    single(Signal::A2, A2, 0, User::I),
    user_sum(User::I, A1 | A2, 0, User::I),
    single(Signal::B1, B1, A2, User::J),
    single(Signal::B2, B2, A2 | B1, User::J),
];

// Δ = 1: x_B2 is decoded and canceled at UE i between x_A2 and x_A1.
const R6_DELTA1_BOUNDS: &[BoundDef] = &[
    single(Signal::A1, A1, 0, User::I),
    single(Signal::A2, A2, A1 | B2, User::I),
    single(Signal::B1, B1, 0, User::J),
    single(Signal::B2, B2, A2 | B1, User::J),
];

// Δ = 0: x_B2 stays as noise while UE i decodes x_A1.
const R6_DELTA0_BOUNDS: &[BoundDef] = &[
    single(Signal::A1, A1, B2, User::I),
    single(Signal::A2, A2, A1 | B2, User::I),
    single(Signal::B1, B1, 0, User::J),
    single(Signal::B2, B2, A2 | B1, User::J),
];

const R7_BOUNDS: &[BoundDef] = &[
    single(Signal::A1, A1, B2, User::I),
    single(Signal::A2, A2, A1 | B2, User::I),
    single(Signal::B1, B1, 0, User::J),
    single(Signal::B2, B2, 0, User::J),
    user_sum(User::J, B1 | B2, 0, User::J),
];

pub(crate) fn bound_defs(id: RegionId) -> &'static [BoundDef] {
    match (id.n, id.delta) {
        (1, _) => R1_BOUNDS,
        (2, _) => R2_BOUNDS,
        (3, _) => R3_BOUNDS,
        (4, _) => R4_BOUNDS,
        (5, _) => R5_BOUNDS,
        (6, Some(true)) => R6_DELTA1_BOUNDS,
        (6, Some(false)) => R6_DELTA0_BOUNDS,
        (7, _) => R7_BOUNDS,
        _ => unreachable!("RegionId invariants violated"),
    }
}

pub(crate) fn mask_dot(mask: u8, p: &[f64; 4]) -> f64 {
    let mut acc = 0.0;
    for (s, v) in p.iter().enumerate() {
        if mask & (1 << s) != 0 {
            acc += v;
        }
    }
    acc
}

// ---------------------------------------------------------------------------
// Power-region predicates
// ---------------------------------------------------------------------------

/// The Δ indicator of region 6: true iff `p_i2 > p_i1 − p_j1 − (α_j − α_i)`
/// (exact equality counts as Δ = 0).
pub fn delta_indicator(p: &PowerAlloc, ch: &ChannelState) -> bool {
    let q = p.as_array();
    q[1] > q[0] - q[2] - ch.alpha_gap()
}

/// Membership of `p` in the closure of `P_n` (both Δ branches of region 6
/// are gated by their indicator condition, again in closure form).
///
/// Assumes `p` already satisfies the power budget; the predicate only looks
/// at the region inequalities.
pub fn power_region_contains(id: RegionId, p: &PowerAlloc, ch: &ChannelState) -> bool {
    let q = p.as_array();
    let gap = ch.alpha_gap();
    match id.n {
        1 => true,
        2 => q[3] - q[2] > gap - BOUNDARY_TOL,
        3 => q[0] < gap + BOUNDARY_TOL,
        4 => q[0] >= gap - BOUNDARY_TOL,
        5 => q[0] < q[2] + gap + BOUNDARY_TOL,
        6 => {
            let in_p6 = q[0] >= q[2] + gap - BOUNDARY_TOL;
            let threshold = q[0] - q[2] - gap;
            match id.delta {
                Some(true) => in_p6 && q[1] > threshold - BOUNDARY_TOL,
                Some(false) => in_p6 && q[1] <= threshold + BOUNDARY_TOL,
                None => unreachable!("region 6 carries a delta branch"),
            }
        }
        7 => q[0] >= q[2] + gap - BOUNDARY_TOL,
        _ => unreachable!(),
    }
}

// ---------------------------------------------------------------------------
// Rate bounds
// ---------------------------------------------------------------------------

/// The evaluated bound set of one region at a fixed power allocation:
/// per-signal capacities `C_{k,s}` plus the per-user sum capacities
/// `C_{k,1,2}` where the region has one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateBoundSet {
    pub per_signal: [f64; 4],
    pub sum_i: Option<f64>,
    pub sum_j: Option<f64>,
}

impl RateBoundSet {
    /// True iff `r` satisfies every bound (closed comparison, with a small
    /// relative slack for floating point).
    pub fn contains(&self, r: &RateAlloc) -> bool {
        let rv = r.as_array();
        for (rate, bound) in rv.iter().zip(&self.per_signal) {
            if *rate > bound * (1.0 + RATE_TOL) + BOUNDARY_TOL {
                return false;
            }
        }
        if let Some(c) = self.sum_i {
            if rv[0] + rv[1] > c * (1.0 + RATE_TOL) + BOUNDARY_TOL {
                return false;
            }
        }
        if let Some(c) = self.sum_j {
            if rv[2] + rv[3] > c * (1.0 + RATE_TOL) + BOUNDARY_TOL {
                return false;
            }
        }
        true
    }

    /// Largest total rate the bound set allows for one user,
    /// `min(C_{k,1} + C_{k,2}, C_{k,1,2})`.
    pub fn max_user_total(&self, user: User) -> f64 {
        let (a, b, sum) = match user {
            User::I => (self.per_signal[0], self.per_signal[1], self.sum_i),
            User::J => (self.per_signal[2], self.per_signal[3], self.sum_j),
        };
        match sum {
            Some(c) => c.min(a + b),
            None => a + b,
        }
    }

    pub fn sum_bound(&self, user: User) -> Option<f64> {
        match user {
            User::I => self.sum_i,
            User::J => self.sum_j,
        }
    }
}

/// Evaluates region `id`'s bound set at `p`. Fails when `p` lies outside
/// the region's power predicate.
pub fn rate_bounds(
    id: RegionId,
    p: &PowerAlloc,
    ch: &ChannelState,
) -> Result<RateBoundSet, RegionError> {
    if !power_region_contains(id, p, ch) {
        return Err(RegionError::RegionMismatch { region: id });
    }
    Ok(eval_bounds(id, p, ch))
}

/// Bound evaluation without the membership check (callers in hot loops that
/// have already tested the predicate).
pub(crate) fn eval_bounds(id: RegionId, p: &PowerAlloc, ch: &ChannelState) -> RateBoundSet {
    let q = p.as_array();
    let mut per_signal = [0.0; 4];
    let mut sum_i = None;
    let mut sum_j = None;
    for def in bound_defs(id) {
        let gamma = mask_dot(def.num, &q) / (mask_dot(def.den, &q) + ch.alpha(def.noise));
        let c = capacity(gamma);
        match def.target {
            BoundTarget::Single(sig) => per_signal[sig.index()] = c,
            BoundTarget::UserSum(User::I) => sum_i = Some(c),
            BoundTarget::UserSum(User::J) => sum_j = Some(c),
        }
    }
    RateBoundSet {
        per_signal,
        sum_i,
        sum_j,
    }
}

/// Whether `r` is achievable at `(p, ch)`, and if so the first witnessing
/// region (lowest `n`, with region 6's `Δ = 1` branch tried before `Δ = 0`).
pub fn achievable(r: &RateAlloc, p: &PowerAlloc, ch: &ChannelState) -> Option<RegionId> {
    RegionId::all()
        .into_iter()
        .find(|&id| power_region_contains(id, p, ch) && eval_bounds(id, p, ch).contains(r))
}

// ---------------------------------------------------------------------------
// Decoding orders
// ---------------------------------------------------------------------------

/// One receiver-side decode step: a single codeword, or two own codewords
/// decoded jointly over the same residual channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecodeStep {
    Single(Signal),
    JointOwn(Signal, Signal),
}

/// An ordered SIC schedule at one user.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodingOrder {
    pub user: User,
    pub steps: Vec<DecodeStep>,
}

impl fmt::Display for DecodingOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let user = match self.user {
            User::I => "i",
            User::J => "j",
        };
        write!(f, "{user}: ")?;
        for (k, step) in self.steps.iter().enumerate() {
            if k > 0 {
                write!(f, " -> ")?;
            }
            match step {
                DecodeStep::Single(s) => write!(f, "{}", s.label())?,
                DecodeStep::JointOwn(a, b) => write!(f, "({},{})", a.label(), b.label())?,
            }
        }
        Ok(())
    }
}

/// The SIC schedules that achieve each region's bound set.
///
/// These are the orders the achievability proofs actually use; where the
/// region needs an interfering codeword canceled mid-stream (regions 2 and
/// 6), that step is included.
pub fn decoding_order(id: RegionId) -> (DecodingOrder, DecodingOrder) {
    use DecodeStep::{JointOwn, Single};
    use Signal::*;
    let (i_steps, j_steps): (Vec<DecodeStep>, Vec<DecodeStep>) = match (id.n, id.delta) {
        (1, _) => (
            vec![Single(A1), Single(B2), Single(A2)],
            vec![JointOwn(B1, B2)],
        ),
        (2, _) => (
            vec![Single(A1), Single(A2)],
            vec![Single(B2), Single(A2), Single(B1)],
        ),
        (3, _) => (
            vec![Single(B2), JointOwn(A1, A2)],
            vec![Single(B1), Single(B2)],
        ),
        (4, _) => (
            vec![Single(A2), Single(A1)],
            vec![Single(B1), Single(A2), Single(B2)],
        ),
        (5, _) => (
            vec![Single(B2), JointOwn(A1, A2)],
            vec![Single(B2), Single(B1)],
        ),
        (6, Some(true)) => (
            vec![Single(A2), Single(B2), Single(A1)],
            vec![Single(B2), Single(A2), Single(B1)],
        ),
        (6, Some(false)) => (
            vec![Single(A2), Single(A1)],
            vec![Single(B2), Single(A2), Single(B1)],
        ),
        (7, _) => (
            vec![Single(A2), Single(A1)],
            vec![Single(A2), JointOwn(B1, B2)],
        ),
        _ => unreachable!(),
    };
    (
        DecodingOrder {
            user: User::I,
            steps: i_steps,
        },
        DecodingOrder {
            user: User::J,
            steps: j_steps,
        },
    )
}

// ---------------------------------------------------------------------------
// Frontier sweeps
// ---------------------------------------------------------------------------

/// Pareto frontier of per-user total rates `(r_i1 + r_i2, r_j1 + r_j2)` over
/// a simplex grid of power allocations, sorted by ascending `r_i`.
///
/// The grid covers the full-budget face of C1: for every region there is a
/// slack-power direction that weakly improves both users' totals while
/// preserving the region predicate, so unused budget never reaches the
/// frontier. Per region and power point the reachable totals form a
/// rectangle, whose corner `min(C_{k,1}+C_{k,2}, C_{k,1,2})` per user is the
/// only candidate; the split along a sum bound moves rates between a user's
/// two codewords without changing the total.
pub fn sweep_region_frontier(ch: &ChannelState, grid_points_per_axis: usize) -> Vec<(f64, f64)> {
    assert!(grid_points_per_axis >= 2, "need at least 2 grid points");
    let steps = grid_points_per_axis - 1;
    let budget = ch.power_budget();
    let h = budget / steps as f64;

    let ri_max = capacity(budget / ch.alpha_i());
    let rj_max = capacity(budget / ch.alpha_j());
    let nbins = (grid_points_per_axis * 8).max(256);
    let bin_w = ri_max / nbins as f64;
    // Per bin: the (r_i, r_j) pair with the largest r_j seen so far.
    let mut best: Vec<Option<(f64, f64)>> = vec![None; nbins + 1];

    let mut push = |ri: f64, rj: f64| {
        let idx = ((ri / bin_w) as usize).min(nbins);
        match best[idx] {
            Some((bri, brj)) if rj < brj || (rj == brj && ri <= bri) => {}
            _ => best[idx] = Some((ri, rj)),
        }
    };

    // Exact extreme points (all power to one user).
    push(ri_max, 0.0);
    push(0.0, rj_max);

    let ids = RegionId::all();
    for a in 0..=steps {
        for b in 0..=(steps - a) {
            for c in 0..=(steps - a - b) {
                let d = steps - a - b - c;
                let p = PowerAlloc::new([a as f64 * h, b as f64 * h, c as f64 * h, d as f64 * h])
                    .expect("grid powers are non-negative");
                for id in ids {
                    if power_region_contains(id, &p, ch) {
                        let bounds = eval_bounds(id, &p, ch);
                        push(
                            bounds.max_user_total(User::I),
                            bounds.max_user_total(User::J),
                        );
                    }
                }
            }
        }
    }

    // Extract the Pareto-maximal set: walk bins from high r_i down, keeping
    // points whose r_j strictly exceeds everything to their right.
    let mut frontier = Vec::new();
    let mut best_rj = f64::NEG_INFINITY;
    for entry in best.iter().rev().flatten() {
        if entry.1 > best_rj {
            best_rj = entry.1;
            frontier.push(*entry);
        }
    }
    frontier.reverse();
    frontier
}

/// Conventional-NOMA frontier `(C(p_i/α_i), C(p_j/(p_i+α_j)))` over a sweep
/// of the strong user's power, `p_i + p_j = P`.
pub fn noma_frontier(ch: &ChannelState, points: usize) -> Vec<(f64, f64)> {
    assert!(points >= 2);
    let p_total = ch.power_budget();
    (0..points)
        .map(|k| {
            let p_i = p_total * k as f64 / (points - 1) as f64;
            let p_j = p_total - p_i;
            (
                capacity(p_i / ch.alpha_i()),
                capacity(p_j / (p_i + ch.alpha_j())),
            )
        })
        .collect()
}

/// TDMA frontier: the segment `(τ·C(P/α_i), (1−τ)·C(P/α_j))` over τ ∈ [0,1].
pub fn oma_frontier(ch: &ChannelState, points: usize) -> Vec<(f64, f64)> {
    assert!(points >= 2);
    let ci = capacity(ch.power_budget() / ch.alpha_i());
    let cj = capacity(ch.power_budget() / ch.alpha_j());
    (0..points)
        .map(|k| {
            let tau = k as f64 / (points - 1) as f64;
            (tau * ci, (1.0 - tau) * cj)
        })
        .collect()
}
