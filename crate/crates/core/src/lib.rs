//! Algebra and graph algorithms for projective norm graphs NG(q, t).
//!
//! Everything here is `no_std` with `alloc`; IO lives in the `nglab` crate.
#![no_std]
#![forbid(unsafe_code)]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod aut;
pub mod bitset;
pub mod charsum;
pub mod error;
pub mod ff;
pub mod k46;
pub mod neighborhoods;
pub mod normgraph;
pub mod resultants;
pub mod subgraphs;

pub use error::{Error, Result};
