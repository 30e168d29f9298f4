//! Cyclotomic multiple zeta values and Carlitz multiple polylogarithms at
//! roots of unity over `F_q[θ]`.

#![allow(clippy::needless_range_loop)]

pub mod array;
pub mod basis;
pub mod checks;
pub mod cli;
pub mod config;
pub mod error;
pub mod field;
pub mod harmonic;
pub mod motives;
pub mod poly;
pub mod reduce;
pub mod report;
pub mod search;
pub mod selftest;
pub mod series;
pub mod values;

pub use error::{Error, Result};
