//! Brute-force achievability checker for the CIC+SIC receiver.
//!
//! This module knows nothing about the closed-form regions. It enumerates
//! every SIC schedule a user could run over its post-CIC residual signals
//! and simulates rate-based decoding: a codeword transmitted at rate `r`
//! decodes at the current step iff `r` fits under the AWGN capacity given
//! the not-yet-canceled interference. A rate vector is achievable iff both
//! users have at least one schedule that decodes all of their own codewords.
//!
//! After CIC, UE i holds `{x_A1, x_A2, x_B2}` (its cached share of file B
//! lets it reconstruct and subtract `x_B1`) and UE j holds
//! `{x_A2, x_B1, x_B2}`. Each user's own pair may also be decoded jointly,
//! since both arrive over the same residual channel. Interfering codewords
//! are judged at their actual transmit rate; a failed interferer step simply
//! leaves the interference in place and the schedule continues.

use crate::model::{capacity, ChannelState, PowerAlloc, RateAlloc, Signal, User};
use crate::region::{DecodeStep, DecodingOrder};

/// Relative slack on decode comparisons (closed-region convention: a rate
/// exactly equal to the capacity decodes).
const DECODE_TOL: f64 = 1e-9;

/// The codewords that remain at a user after CIC preprocessing:
/// its two own codewords plus the single cross interferer.
pub struct ResidualSignalSet {
    pub own: [Signal; 2],
    pub interferer: Signal,
}

pub fn residual_signals(user: User) -> ResidualSignalSet {
    match user {
        User::I => ResidualSignalSet {
            own: [Signal::A1, Signal::A2],
            interferer: Signal::B2,
        },
        User::J => ResidualSignalSet {
            own: [Signal::B1, Signal::B2],
            interferer: Signal::A2,
        },
    }
}

/// All decode schedules a user can attempt: the six orderings of its three
/// residual codewords as single steps, plus the three placements of the
/// joint own-pair step relative to the (optional) interferer step.
pub fn enumerate_orders(user: User) -> Vec<DecodingOrder> {
    let res = residual_signals(user);
    let [o1, o2] = res.own;
    let intf = res.interferer;
    let mut orders = Vec::with_capacity(9);
    for (a, b) in [(o1, o2), (o2, o1)] {
        for steps in [vec![intf, a, b], vec![a, intf, b], vec![a, b, intf]] {
            orders.push(DecodingOrder {
                user,
                steps: steps.into_iter().map(DecodeStep::Single).collect(),
            });
        }
    }
    let joint = DecodeStep::JointOwn(o1, o2);
    for steps in [
        vec![joint],
        vec![DecodeStep::Single(intf), joint],
        vec![joint, DecodeStep::Single(intf)],
    ] {
        orders.push(DecodingOrder { user, steps });
    }
    orders
}

fn decodes(rate: f64, cap: f64) -> bool {
    rate <= cap * (1.0 + DECODE_TOL) + 1e-12
}

/// Walks one schedule. Every decoded codeword is subtracted from the
/// residual interference; a step that cannot decode is skipped (its signal
/// stays as interference). Returns true iff both own codewords decode.
pub fn attempt_decodes(
    att: &DecodingOrder,
    r: &RateAlloc,
    p: &PowerAlloc,
    ch: &ChannelState,
) -> bool {
    let res = residual_signals(att.user);
    let alpha = ch.alpha(att.user);
    let pw = p.as_array();
    let rates = r.as_array();

    let mut active = [false; 4];
    for sig in res.own.iter().chain(std::iter::once(&res.interferer)) {
        active[sig.index()] = true;
    }
    let mut own_decoded = 0usize;

    for step in &att.steps {
        match *step {
            DecodeStep::Single(sig) => {
                let s = sig.index();
                let mut rest = alpha;
                for (k, powered) in pw.iter().enumerate() {
                    if active[k] && k != s {
                        rest += powered;
                    }
                }
                if decodes(rates[s], capacity(pw[s] / rest)) {
                    active[s] = false;
                    if sig.user() == att.user {
                        own_decoded += 1;
                    }
                }
            }
            DecodeStep::JointOwn(x, y) => {
                let (sx, sy) = (x.index(), y.index());
                let mut rest = alpha;
                for (k, powered) in pw.iter().enumerate() {
                    if active[k] && k != sx && k != sy {
                        rest += powered;
                    }
                }
                // Two-user multiple-access bounds over the residual channel.
                let ok = decodes(rates[sx], capacity(pw[sx] / rest))
                    && decodes(rates[sy], capacity(pw[sy] / rest))
                    && decodes(rates[sx] + rates[sy], capacity((pw[sx] + pw[sy]) / rest));
                if ok {
                    active[sx] = false;
                    active[sy] = false;
                    own_decoded += 2;
                }
            }
        }
    }
    own_decoded == 2
}

/// Exhaustive achievability verdict: some schedule succeeds at UE i and some
/// schedule succeeds at UE j. The two receivers decode independently.
pub fn oracle_achievable(r: &RateAlloc, p: &PowerAlloc, ch: &ChannelState) -> bool {
    [User::I, User::J].into_iter().all(|user| {
        enumerate_orders(user)
            .iter()
            .any(|att| attempt_decodes(att, r, p, ch))
    })
}

/// The excluded order pair (UE j starts with `x_A2`, UE i starts with
/// `x_B2`) would need both
/// `C(p_i2/(p_j1+p_j2+α_j)) > C(p_i2/(p_i1+α_i))` and
/// `C(p_j2/(p_i1+p_i2+α_i)) > C(p_j2/(p_j1+α_j))`
/// to hold; adding the underlying denominator inequalities forces
/// `p_i2 + p_j2 < 0`. Returns whether the pair is satisfied at `p`
/// (it never is for valid powers).
pub fn excluded_order_pair_feasible(p: &PowerAlloc, ch: &ChannelState) -> bool {
    let q = p.as_array();
    let (ai, aj) = (ch.alpha_i(), ch.alpha_j());
    let first = capacity(q[1] / (q[2] + q[3] + aj)) > capacity(q[1] / (q[0] + ai));
    let second = capacity(q[3] / (q[0] + q[1] + ai)) > capacity(q[3] / (q[2] + aj));
    first && second
}
