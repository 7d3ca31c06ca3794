//! Syntax of resource expressions and algebraic λ-terms: canonical α-form,
//! parsing, printing, metrics and ordering.
//!
//! Binders are nameless (de Bruijn indices); free variables carry names.
//! α-equivalent expressions are therefore structurally identical, and the
//! derived `Ord` is the total term order used to keep monomials sorted and
//! formal sums deterministic.

mod alg;
mod parse;
mod print;
mod res;
mod sum;

pub use alg::*;
pub use parse::*;
pub use print::*;
pub use res::*;
pub use sum::*;

/// A variable reference: bound (de Bruijn index to the enclosing binder) or
/// free (named).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarRef {
    Bound(u32),
    Free(String),
}

impl VarRef {
    pub fn free(name: &str) -> VarRef {
        VarRef::Free(name.to_string())
    }
}
