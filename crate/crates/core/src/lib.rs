//! Quantum parabolic differential calculi: exact arithmetic over ℚ(q^{1/D}),
//! root data, Weyl groups, weight modules, braidings and the de Rham / BGG
//! comparison for cominuscule quantum flag manifolds.

pub mod bgg;
pub mod braiding;
pub mod cartan;
pub mod cli;
pub mod decalculus;
pub mod error;
pub mod linalg;
pub mod qalgebra;
pub mod repmod;
pub mod rewrite;
pub mod scalar;
pub mod weyl;
