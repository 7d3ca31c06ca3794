//! A semiring-generic workbench for the resource λ-calculus: exact
//! truncated Taylor expansions of weighted non-deterministic λ-terms,
//! resource reduction and normal forms, and normal-form approximants in the
//! style of Böhm trees.

pub mod calculus;
pub mod lambda;
pub mod reduction;
pub mod scalars;
pub mod syntax;
pub mod taylor;
