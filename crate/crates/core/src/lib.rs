//! Exact computations for BGG category O attached to a split semisimple Lie
//! algebra: root data and Weyl groups, PBW arithmetic in U(g), p-adic Gauss
//! norms, central characters, and per-block decomposition and Cartan matrices.

#![allow(clippy::needless_range_loop)]

pub mod category;
pub mod error;
pub mod gaussnorm;
pub mod harish;
pub mod linalg;
pub mod liealg;
pub mod poly;
pub mod rational;
pub mod rootdata;
pub mod selftest;

pub use category::{BlockReport, Category, DecompositionMatrix, VermaSlice, VermaVector};
pub use error::{Error, Result};
pub use gaussnorm::{LogNorm, NormParam};
pub use liealg::{LieAlgebra, LieElement, Monomial, UEAElement};
pub use poly::Poly;
pub use rational::Q;
pub use rootdata::{CartanMatrixInput, Convention, RootSystem, Weight, WeylElement};
