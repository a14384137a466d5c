//! Σ¹-invariants of Artin groups: graph tests, characters, the complement
//! polyhedron, Fox calculus and the module computations behind them.

pub mod algebra;
pub mod character;
pub mod fox;
pub mod graph;
pub mod koszul;
pub mod kt;
pub mod polyhedron;
pub mod sigma;
