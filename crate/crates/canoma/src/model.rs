//! Physical and cache-state types for a two-user cache-aided NOMA downlink.
//!
//! A base station serves two users over the same time-frequency resource.
//! UE `i` (the strong user) requests file `A`, UE `j` (the weak user)
//! requests file `B`. Each user may have cached an arbitrary prefix fraction
//! of *either* file before the requests are known. Cached data that is hit
//! (requested by its holder) is simply not transmitted; cached data that is
//! missed (held by the non-requester) still pays off, because the holder can
//! reconstruct the corresponding codeword and subtract it from its received
//! signal before SIC decoding.
//!
//! Per file `f` the transmitter splits the payload into
//!
//! * a part cached at both users (never transmitted),
//! * a part cached only at the non-requesting user (codeword `x_f1`; the
//!   non-requester cancels it before decoding anything), and
//! * a part cached nowhere (codeword `x_f2`, received by both users).
//!
//! The four superposed codewords get powers `p = (p_i1, p_i2, p_j1, p_j2)`
//! and code rates `r = (r_i1, r_i2, r_j1, r_j2)`; everything downstream of
//! this module is a pure function of these vectors plus [`ChannelState`].
//!
//! All powers and noise levels are linear units throughout the crate; dB
//! appears only at the CLI boundary. Rates are spectral efficiencies
//! (bit/s/Hz); bits/s only enter when delivery times are computed.

use thiserror::Error;

/// Absolute tolerance for comparisons that decide power-region membership.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// Errors from constructing or transforming the model types.
#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("channel parameters must be positive (alpha_i={alpha_i}, alpha_j={alpha_j}, power={power}, bandwidth={bandwidth})")]
    NonPositiveChannel {
        alpha_i: f64,
        alpha_j: f64,
        power: f64,
        bandwidth: f64,
    },
    #[error("effective noise must satisfy alpha_i < alpha_j (got {alpha_i} >= {alpha_j})")]
    ChannelOrder { alpha_i: f64, alpha_j: f64 },
    #[error("degenerate channel: gain^2={gain_sq}, noise={noise}")]
    DegenerateChannel { gain_sq: f64, noise: f64 },
    #[error("cached fraction {value} for {label} is outside [0, 1]")]
    FractionOutOfRange { label: &'static str, value: f64 },
    #[error("file size must be positive (V_A={v_a}, V_B={v_b})")]
    NonPositiveFileSize { v_a: f64, v_b: f64 },
    #[error("cache contents exceed capacity at user {user:?}: {used} > {capacity} bits")]
    CacheOverCapacity {
        user: User,
        used: f64,
        capacity: f64,
    },
    #[error("delivery is only implemented for cache case I (got case {0:?})")]
    UnsupportedCase(CacheCase),
    #[error("allocation entries must be non-negative: {0:?}")]
    NegativeEntry([f64; 4]),
}

/// The two downlink users. `I` is the strong user (smaller effective noise).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum User {
    I,
    J,
}

impl User {
    pub fn other(self) -> User {
        match self {
            User::I => User::J,
            User::J => User::I,
        }
    }
}

/// The four transmitted codewords. `A1`/`A2` carry file A (for UE i),
/// `B1`/`B2` carry file B (for UE j). `*1` is the sub-file cached at the
/// non-requesting user, `*2` the sub-file cached nowhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Signal {
    A1,
    A2,
    B1,
    B2,
}

impl Signal {
    pub const ALL: [Signal; 4] = [Signal::A1, Signal::A2, Signal::B1, Signal::B2];

    /// Index into the `(p_i1, p_i2, p_j1, p_j2)` vectors.
    pub fn index(self) -> usize {
        match self {
            Signal::A1 => 0,
            Signal::A2 => 1,
            Signal::B1 => 2,
            Signal::B2 => 3,
        }
    }

    /// The user this codeword is destined for.
    pub fn user(self) -> User {
        match self {
            Signal::A1 | Signal::A2 => User::I,
            Signal::B1 | Signal::B2 => User::J,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Signal::A1 => "A1",
            Signal::A2 => "A2",
            Signal::B1 => "B1",
            Signal::B2 => "B2",
        }
    }
}

/// AWGN channel capacity `log2(1 + gamma)` in bit/s/Hz.
///
/// `gamma` is a (linear, dimensionless) SINR and must be non-negative.
pub fn capacity(gamma: f64) -> f64 {
    assert!(
        gamma >= 0.0,
        "capacity is only defined for non-negative SINR, got {gamma}"
    );
    gamma.ln_1p() / std::f64::consts::LN_2
}

/// Effective noise level `alpha = noise / gain^2` of a link.
///
/// Smaller alpha means a stronger user.
pub fn effective_noise(channel_gain_sq: f64, noise_power: f64) -> Result<f64, ModelError> {
    if channel_gain_sq <= 0.0 || noise_power <= 0.0 {
        return Err(ModelError::DegenerateChannel {
            gain_sq: channel_gain_sq,
            noise: noise_power,
        });
    }
    Ok(noise_power / channel_gain_sq)
}

/// One physical downlink instance: effective noise levels of the two users,
/// the total transmit power budget, and the system bandwidth.
///
/// Invariant (enforced at construction): `alpha_i < alpha_j`, everything
/// positive. UE i is always the strong user.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelState {
    alpha_i: f64,
    alpha_j: f64,
    power_budget: f64,
    bandwidth_hz: f64,
}

impl ChannelState {
    pub fn new(
        alpha_i: f64,
        alpha_j: f64,
        power_budget: f64,
        bandwidth_hz: f64,
    ) -> Result<Self, ModelError> {
        if !(alpha_i > 0.0 && alpha_j > 0.0 && power_budget > 0.0 && bandwidth_hz > 0.0) {
            return Err(ModelError::NonPositiveChannel {
                alpha_i,
                alpha_j,
                power: power_budget,
                bandwidth: bandwidth_hz,
            });
        }
        if alpha_i >= alpha_j {
            return Err(ModelError::ChannelOrder { alpha_i, alpha_j });
        }
        Ok(Self {
            alpha_i,
            alpha_j,
            power_budget,
            bandwidth_hz,
        })
    }

    pub fn alpha_i(&self) -> f64 {
        self.alpha_i
    }

    pub fn alpha_j(&self) -> f64 {
        self.alpha_j
    }

    pub fn alpha(&self, user: User) -> f64 {
        match user {
            User::I => self.alpha_i,
            User::J => self.alpha_j,
        }
    }

    /// Total transmit power budget `P` (constraint C1 is `sum(p) <= P`).
    pub fn power_budget(&self) -> f64 {
        self.power_budget
    }

    pub fn bandwidth_hz(&self) -> f64 {
        self.bandwidth_hz
    }

    /// `alpha_j - alpha_i`, the gap that all power-region predicates compare
    /// against.
    pub fn alpha_gap(&self) -> f64 {
        self.alpha_j - self.alpha_i
    }
}

/// Cached fraction of each file at each user, plus file sizes.
///
/// `c_kf` is the fraction of file `f` held by user `k`; caching is by prefix,
/// so the smaller holding is always a subset of the larger one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CacheConfig {
    c_ia: f64,
    c_ib: f64,
    c_ja: f64,
    c_jb: f64,
    v_a_bits: f64,
    v_b_bits: f64,
    cache_capacity_bits: Option<(f64, f64)>,
}

impl CacheConfig {
    /// `fractions` is `(c_iA, c_iB, c_jA, c_jB)`.
    pub fn new(
        fractions: (f64, f64, f64, f64),
        v_a_bits: f64,
        v_b_bits: f64,
        cache_capacity_bits: Option<(f64, f64)>,
    ) -> Result<Self, ModelError> {
        let (c_ia, c_ib, c_ja, c_jb) = fractions;
        for (label, value) in [
            ("c_iA", c_ia),
            ("c_iB", c_ib),
            ("c_jA", c_ja),
            ("c_jB", c_jb),
        ] {
            if !(0.0..=1.0).contains(&value) || value.is_nan() {
                return Err(ModelError::FractionOutOfRange { label, value });
            }
        }
        if !(v_a_bits > 0.0 && v_b_bits > 0.0) {
            return Err(ModelError::NonPositiveFileSize {
                v_a: v_a_bits,
                v_b: v_b_bits,
            });
        }
        if let Some((cap_i, cap_j)) = cache_capacity_bits {
            let used_i = c_ia * v_a_bits + c_ib * v_b_bits;
            let used_j = c_ja * v_a_bits + c_jb * v_b_bits;
            if used_i > cap_i {
                return Err(ModelError::CacheOverCapacity {
                    user: User::I,
                    used: used_i,
                    capacity: cap_i,
                });
            }
            if used_j > cap_j {
                return Err(ModelError::CacheOverCapacity {
                    user: User::J,
                    used: used_j,
                    capacity: cap_j,
                });
            }
        }
        Ok(Self {
            c_ia,
            c_ib,
            c_ja,
            c_jb,
            v_a_bits,
            v_b_bits,
            cache_capacity_bits,
        })
    }

    pub fn fractions(&self) -> (f64, f64, f64, f64) {
        (self.c_ia, self.c_ib, self.c_ja, self.c_jb)
    }

    pub fn v_a_bits(&self) -> f64 {
        self.v_a_bits
    }

    pub fn v_b_bits(&self) -> f64 {
        self.v_b_bits
    }

    /// Joint (user, file) relabel: swaps the user roles together with the
    /// file labels, so the "new i" requests the file the old j requested.
    /// Cache case I is preserved under this map; it is what a label swap on
    /// channel ordering must apply.
    pub fn swap_users_and_files(&self) -> CacheConfig {
        CacheConfig {
            c_ia: self.c_jb,
            c_ib: self.c_ja,
            c_ja: self.c_ib,
            c_jb: self.c_ia,
            v_a_bits: self.v_b_bits,
            v_b_bits: self.v_a_bits,
            cache_capacity_bits: self.cache_capacity_bits.map(|(i, j)| (j, i)),
        }
    }
}

/// Which of the four cache configurations holds at request time, determined
/// by who holds the larger fraction of each requested file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheCase {
    I,
    II,
    III,
    IV,
}

/// Classifies the cache placement against the pair of requests.
///
/// Case I is the configuration where each file's *non*-requester holds the
/// larger cached fraction. Ties resolve toward case I: the requesting user
/// is taken as the min-holder, which makes the tied sub-file empty and all
/// cases numerically identical.
pub fn classify_cache_case(cfg: &CacheConfig) -> CacheCase {
    // min-holder of file A is its requester i  <=>  c_iA <= c_jA (tie -> i)
    let i_min_for_a = cfg.c_ia <= cfg.c_ja;
    // min-holder of file B is its requester j  <=>  c_jB <= c_iB (tie -> j)
    let j_min_for_b = cfg.c_jb <= cfg.c_ib;
    match (i_min_for_a, j_min_for_b) {
        (true, true) => CacheCase::I,
        (false, true) => CacheCase::II,
        (true, false) => CacheCase::III,
        (false, false) => CacheCase::IV,
    }
}

/// Bits still owed to each user, per codeword.
///
/// `beta(A1)` is the part of file A cached only at UE j (transmitted, but
/// cancelable at j), `beta(A2)` the part cached nowhere; symmetrically for
/// file B.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeliveryLoad {
    beta: [f64; 4],
}

impl DeliveryLoad {
    /// Builds a load directly from per-signal bit counts (all `>= 0`).
    pub fn from_beta(beta: [f64; 4]) -> Result<Self, ModelError> {
        if beta.iter().any(|b| *b < 0.0 || b.is_nan()) {
            return Err(ModelError::NegativeEntry(beta));
        }
        Ok(Self { beta })
    }

    pub fn beta(&self, signal: Signal) -> f64 {
        self.beta[signal.index()]
    }

    pub fn as_array(&self) -> [f64; 4] {
        self.beta
    }

    /// Total bits owed to one user.
    pub fn total_for(&self, user: User) -> f64 {
        match user {
            User::I => self.beta[0] + self.beta[1],
            User::J => self.beta[2] + self.beta[3],
        }
    }
}

/// Splits both requested files into the transmitted sub-file loads.
///
/// Only cache case I is supported; any other case is reported, not silently
/// mis-delivered.
pub fn split_files(cfg: &CacheConfig) -> Result<DeliveryLoad, ModelError> {
    let case = classify_cache_case(cfg);
    if case != CacheCase::I {
        return Err(ModelError::UnsupportedCase(case));
    }
    // In case I the non-requester holds the max fraction of each file:
    // c̄_A = c_jA and c̄_B = c_iB.
    let beta = [
        (cfg.c_ja - cfg.c_ia) * cfg.v_a_bits,
        (1.0 - cfg.c_ja) * cfg.v_a_bits,
        (cfg.c_ib - cfg.c_jb) * cfg.v_b_bits,
        (1.0 - cfg.c_ib) * cfg.v_b_bits,
    ];
    // Guard against -0.0 / rounding from the subtractions above.
    DeliveryLoad::from_beta(beta.map(|b| b.max(0.0)))
}

/// Transmit power split over the four codewords, linear units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerAlloc {
    p: [f64; 4],
}

impl PowerAlloc {
    /// `p = (p_i1, p_i2, p_j1, p_j2)`, all entries non-negative.
    pub fn new(p: [f64; 4]) -> Result<Self, ModelError> {
        if p.iter().any(|x| *x < 0.0 || x.is_nan()) {
            return Err(ModelError::NegativeEntry(p));
        }
        Ok(Self { p })
    }

    pub fn get(&self, signal: Signal) -> f64 {
        self.p[signal.index()]
    }

    pub fn as_array(&self) -> [f64; 4] {
        self.p
    }

    pub fn total(&self) -> f64 {
        self.p.iter().sum()
    }

    /// Constraint C1 with a small absolute slack.
    pub fn within_budget(&self, budget: f64) -> bool {
        self.total() <= budget + BOUNDARY_TOL * budget.max(1.0)
    }
}

/// Code rates of the four codewords, spectral efficiencies in bit/s/Hz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateAlloc {
    r: [f64; 4],
}

impl RateAlloc {
    pub fn new(r: [f64; 4]) -> Result<Self, ModelError> {
        if r.iter().any(|x| *x < 0.0 || x.is_nan()) {
            return Err(ModelError::NegativeEntry(r));
        }
        Ok(Self { r })
    }

    pub fn zero() -> Self {
        Self { r: [0.0; 4] }
    }

    pub fn get(&self, signal: Signal) -> f64 {
        self.r[signal.index()]
    }

    pub fn as_array(&self) -> [f64; 4] {
        self.r
    }

    pub fn total_for(&self, user: User) -> f64 {
        match user {
            User::I => self.r[0] + self.r[1],
            User::J => self.r[2] + self.r[3],
        }
    }
}
