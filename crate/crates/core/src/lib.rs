//! Unique-neighborhood networks (UNNs): graphs in which every vertex is
//! identified by its neighbor set.
//!
//! The crate covers recognition ([`unn`]), construction and repair
//! ([`construct`], [`extend`]), vertex-disjoint routing ([`connectivity`]),
//! and an information-theoretically secure messaging layer built from
//! threshold sharing ([`coding`]) and one-time MACs ([`auth`]), exercised
//! end to end by the simulator in [`sim`].

pub mod auth;
pub mod coding;
pub mod connectivity;
pub mod construct;
pub mod extend;
pub mod graph;
pub mod random;
pub mod sim;
pub mod unn;
