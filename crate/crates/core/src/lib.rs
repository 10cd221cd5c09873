//! Exact computational engine for finite permutation groups and their
//! complex character theory: Dixon-Burnside modular character tables,
//! class-function algebra, decomposition of tensor squares chi*conj(chi),
//! and structural verdicts for groups where that product has at most two
//! non-principal irreducible constituents.

pub mod builders;
pub mod chartab;
pub mod conjugacy;
pub mod error;
pub mod extraspecial;
pub mod ffmatrix;
pub mod gf;
pub mod group;
pub mod modp;
pub mod perm;
pub mod smallgrp;
pub mod structure;

pub use error::{Error, Result};
pub use group::{Bounds, PermGroup};
pub use perm::Permutation;
