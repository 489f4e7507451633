//! Newcomb-Benford discrepancy (NBD) of designs of experiments.
//!
//! A design is a set of `N_s` points in the `d`-dimensional half-open unit
//! hypercube. Mapping every coordinate `x` to `10^x` produces values in
//! `[1, 10)` whose first significant digits follow the Newcomb-Benford law
//! `Pr(g) = log10(1 + 1/g)` exactly when the coordinates are uniform. The NBD
//! measures how far a design's empirical digit frequencies deviate from that
//! law:
//!
//! - [`benford::nbd_flat`] pools the digits of all `N_s × d` entries and
//!   costs `O(N_s × d)`, much cheaper than the classical `O(N_s² × d)`
//!   centered-L2 discrepancy it is compared against.
//! - [`benford::nbd_joint`] scores every ordered 2-dimensional subprojection
//!   against a pairwise digit law, so it also reacts to correlation between
//!   coordinates that the flattened form cannot see.
//!
//! The crate ships the metrics ([`benford`], [`discrepancy`]), the design
//! generators used to study them ([`samplers`]: Monte Carlo, Sobol' with
//! digital-shift scrambling, Latin hypercube), and a replication harness
//! ([`benchmark`]) that produces convergence and per-digit conformance
//! statistics with fully reproducible seeding.

pub mod benchmark;
pub mod benford;
pub mod design;
pub mod discrepancy;
mod error;
pub mod samplers;

pub use design::Design;
pub use error::{Error, Result};
