//! Finite skew braces given by Cayley tables: structure, second cohomology,
//! Schur multipliers and Schur covers, computed exactly.

pub mod brace;
pub mod builder;
pub mod cohomology;
pub mod corpus;
pub mod covers;
pub mod error;
pub mod extension;
pub mod group;
pub mod iso;
pub mod json;
pub mod isoclinism;
pub mod linalg;
pub mod selftest;
pub mod twisted;

pub use error::{Error, Result};
pub use group::GroupTable;
pub use brace::{validate_brace, BraceMorphism, Ideal, SkewBrace};
pub use iso::find_isomorphism;
