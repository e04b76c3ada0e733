//! Shared helpers for the integration tests.
//!
//! Each test binary pulls in only part of this module.
#![allow(dead_code)]

pub mod dd;
pub mod rng;
