//! Exact construction and analysis of qutrit triorthogonal codes for magic
//! state distillation.
//!
//! The crate builds the `[9m-k, k, 2]_3` family of triorthogonal CSS codes
//! over GF(3), verifies the defining algebraic properties (self-orthogonality,
//! vanishing triple products, maximality), and computes the distillation
//! figures of merit: yield parameter, output-error maps, depolarizing-noise
//! thresholds, basins of attraction, and the Wigner-polytope bound. A small
//! exhaustive search over triorthogonal spaces is included.
//!
//! Start from [`space::family_space`] and [`code::family_code`]; see the
//! `examples/` directory for one runnable example per capability. The `triortho`
//! binary exposes the same pipelines as subcommands.

pub mod code;
pub mod distill;
pub mod error;
pub mod gf3;
pub mod search;
pub mod selftest;
pub mod space;
pub mod statevec;
pub mod wigner;

pub use error::{Error, Result};
