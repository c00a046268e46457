//! Harvesting, persistence and HTTP serving for museum collection catalogs.
//!
//! The geometry itself lives in `museumviz_core`; this crate fetches portal
//! pages, writes and validates the JSON hand-off files, and serves the
//! visualization payloads.

pub mod blueprint;
pub mod harvest;
pub mod service;
pub mod source;
pub mod store;
pub mod viz;
