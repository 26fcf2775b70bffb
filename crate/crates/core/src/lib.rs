//! Exact computational Lie theory for secant varieties of compact Hermitian
//! symmetric spaces: root data, characters, Bott's algorithm, the geometric
//! technique, explicit multilinear algebra and coordinate-ring oracles.

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod exec;
pub mod bott;
pub mod coordring;
pub mod decompose;
pub mod partitions;
pub mod rootsys;
pub mod tensorlab;
pub mod weyman;

pub use error::{Error, Result};
pub use exec::Exec;
