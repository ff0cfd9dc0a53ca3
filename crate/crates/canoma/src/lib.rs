//! Cache-aided NOMA downlink delivery.
//!
//! A base station superposes four codewords to serve two users that have
//! cached arbitrary prefix fractions of each other's requested files.
//! Cached-but-unrequested data is exploited for interference cancellation
//! atop ordinary SIC, which enlarges the achievable rate region and
//! shortens file delivery. This crate provides:
//!
//! * [`model`]: channel/cache/load types, file splitting, the capacity
//!   function;
//! * [`region`]: the seven closed-form achievable rate regions, decoding
//!   orders, and rate-region frontier sweeps (proposed / NOMA / TDMA);
//! * [`oracle`]: a brute-force CIC+SIC decoding oracle that checks
//!   achievability with no knowledge of the closed forms;
//! * [`lp`]: fractional-constraint linearization and a small phase-1
//!   simplex feasibility solver;
//! * [`delivery`]: minimum-delivery-time optimization via bisection over
//!   per-region feasibility problems, plus the TDMA and conventional-NOMA
//!   baselines;
//! * [`sim`]: scenario configs, Monte-Carlo channel drops, CSV emission,
//!   and the oracle-vs-closed-form verification harness.
//!
//! The `canoma` binary exposes the `region`, `delivery`, `mc`, and `verify`
//! subcommands; the `examples/` directory holds one runnable example per
//! capability.
//!
//! ```
//! use canoma::delivery::min_delivery_time;
//! use canoma::model::{split_files, CacheConfig, ChannelState};
//!
//! let ch = ChannelState::new(1e-3, 1e-2, 10.0, 5e6).unwrap();
//! let cache = CacheConfig::new((0.2, 0.8, 0.8, 0.2), 4e9, 4e9, None).unwrap();
//! let load = split_files(&cache).unwrap();
//! let sol = min_delivery_time(&ch, &load, None).unwrap();
//! assert!(sol.delivery_time_s > 0.0);
//! ```

pub mod delivery;
pub mod lp;
pub mod model;
pub mod oracle;
pub mod region;
pub mod sim;
