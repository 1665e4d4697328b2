//! Desk-scale simulation laboratory for comparison-model search algorithms.
//!
//! The crate simulates amplitude-amplified claw finding, collision finding
//! (element distinctness), and triangle finding at the rotation level,
//! metering every black-box access (comparisons, evaluations, edge probes)
//! so that query-complexity scaling can be measured empirically. Classical
//! baselines, brute-force verification of adversary-relation parameters, and
//! a log-log exponent fitter round out the harness.
//!
//! Two cost modes are supported everywhere:
//! * `sampled` - runs the pinned randomized schedules with a seeded ChaCha8
//!   stream and reports the ledger of actual oracle calls;
//! * `analytic` - evaluates the exact expected cost of the same schedules in
//!   closed form (white-box instance knowledge enters only the expectation,
//!   never the control flow).

pub mod adversary;
pub mod amplify;
pub mod claw;
pub mod error;
pub mod fit;
pub mod numerics;
pub mod oracle;
pub mod report;
pub mod triangle;

pub use error::{Error, Result};
