//! Exact numerical invariants of codimension-one distributions and rank-2
//! reflexive sheaves on smooth projective threefolds with cyclic Picard group.
//!
//! * [`chow`]: Chern data, Chern characters, twists, Riemann–Roch.
//! * [`cohomology`]: Bott formula on `P^3` and a long-exact-sequence chaser.
//! * [`sheafdsl`]: a small language for sheaves built from exact sequences.
//! * [`dist`]: stability, Chern data and singular schemes of distributions.
//! * [`modulispec`]: moduli components on `P^3` and stable spectrum points.

pub mod chow;
pub mod cohomology;
pub mod dist;
pub mod error;
pub mod modulispec;
pub mod sheafdsl;

pub use chow::{ChernData, ChowClass, TangentStability, ThreefoldData};
pub use error::{Error, Result};
