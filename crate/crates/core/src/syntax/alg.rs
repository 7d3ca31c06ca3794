//! Algebraic λ-terms and their canonical representatives.
//!
//! Raw terms add `0`, scalar action and binary sums to the λ-calculus.
//! Canonicalization rewrites the six linearity equations left to right:
//! abstraction and the function position of an application distribute over
//! `0`, scalar action and sums. Nothing else is identified; in particular
//! `0 * M` is kept (its Taylor support is that of `M`) and nested scalar
//! actions are not fused.

use super::res::Target;
use super::VarRef;
use crate::scalars::{Scalar, Semiring};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AlgTerm {
    Var(VarRef),
    Abs(Box<AlgTerm>),
    App(Box<AlgTerm>, Box<AlgTerm>),
    Zero,
    Scale(Scalar, Box<AlgTerm>),
    Sum(Box<AlgTerm>, Box<AlgTerm>),
}

impl AlgTerm {
    pub fn var(name: &str) -> AlgTerm {
        AlgTerm::Var(VarRef::free(name))
    }

    pub fn abs(body: AlgTerm) -> AlgTerm {
        AlgTerm::Abs(Box::new(body))
    }

    pub fn app(fun: AlgTerm, arg: AlgTerm) -> AlgTerm {
        AlgTerm::App(Box::new(fun), Box::new(arg))
    }

    pub fn apps(fun: AlgTerm, args: impl IntoIterator<Item = AlgTerm>) -> AlgTerm {
        args.into_iter().fold(fun, AlgTerm::app)
    }

    pub fn scale(a: Scalar, m: AlgTerm) -> AlgTerm {
        AlgTerm::Scale(a, Box::new(m))
    }

    pub fn sum(m: AlgTerm, n: AlgTerm) -> AlgTerm {
        AlgTerm::Sum(Box::new(m), Box::new(n))
    }

    /// True if the term uses none of `0`, scalar action, sums.
    pub fn is_pure(&self) -> bool {
        match self {
            AlgTerm::Var(_) => true,
            AlgTerm::Abs(m) => m.is_pure(),
            AlgTerm::App(m, n) => m.is_pure() && n.is_pure(),
            AlgTerm::Zero | AlgTerm::Scale(..) | AlgTerm::Sum(..) => false,
        }
    }

    /// Simple terms: x | λx.S | S M with S simple.
    pub fn is_simple(&self) -> bool {
        match self {
            AlgTerm::Var(_) => true,
            AlgTerm::Abs(m) => m.is_simple(),
            AlgTerm::App(f, _) => f.is_simple(),
            _ => false,
        }
    }

    /// Canonical terms: S | 0 | a*M | M+N.
    pub fn is_canonical(&self) -> bool {
        match self {
            AlgTerm::Zero => true,
            AlgTerm::Scale(_, m) => m.is_canonical(),
            AlgTerm::Sum(m, n) => m.is_canonical() && n.is_canonical(),
            _ => self.is_simple_canonical(),
        }
    }

    fn is_simple_canonical(&self) -> bool {
        match self {
            AlgTerm::Var(_) => true,
            AlgTerm::Abs(m) => m.is_simple_canonical(),
            AlgTerm::App(f, a) => f.is_simple_canonical() && a.is_canonical(),
            _ => false,
        }
    }

    /// True if no β-redex occurs anywhere in the term.
    pub fn is_beta_normal(&self) -> bool {
        match self {
            AlgTerm::Var(_) => true,
            AlgTerm::Abs(m) => m.is_beta_normal(),
            AlgTerm::App(f, a) => {
                !matches!(**f, AlgTerm::Abs(_)) && f.is_beta_normal() && a.is_beta_normal()
            }
            AlgTerm::Zero => true,
            AlgTerm::Scale(_, m) => m.is_beta_normal(),
            AlgTerm::Sum(m, n) => m.is_beta_normal() && n.is_beta_normal(),
        }
    }
}

/// A term in ≡can normal form. Constructed only through `canonicalize_alg`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalAlgTerm(AlgTerm);

impl CanonicalAlgTerm {
    pub fn term(&self) -> &AlgTerm {
        &self.0
    }

    pub fn into_term(self) -> AlgTerm {
        self.0
    }

    pub fn is_beta_normal(&self) -> bool {
        self.0.is_beta_normal()
    }

    /// Weighted simple summands of a canonical term, left to right. `Zero`
    /// leaves contribute nothing; scalar actions multiply out in `ring`.
    pub fn summands(&self, ring: Semiring) -> Vec<(Scalar, &AlgTerm)> {
        fn walk<'a>(ring: Semiring, m: &'a AlgTerm, w: &Scalar, out: &mut Vec<(Scalar, &'a AlgTerm)>) {
            match m {
                AlgTerm::Zero => {}
                AlgTerm::Scale(a, inner) => walk(ring, inner, &ring.mul(w, a), out),
                AlgTerm::Sum(p, q) => {
                    walk(ring, p, w, out);
                    walk(ring, q, w, out);
                }
                simple => out.push((w.clone(), simple)),
            }
        }
        let mut out = Vec::new();
        walk(ring, &self.0, &ring.one(), &mut out);
        out
    }
}

/// Rewrite to the unique ≡can normal form (the six equations oriented left
/// to right), bottom-up.
pub fn canonicalize_alg(m: &AlgTerm) -> CanonicalAlgTerm {
    CanonicalAlgTerm(canon(m))
}

fn canon(m: &AlgTerm) -> AlgTerm {
    match m {
        AlgTerm::Var(v) => AlgTerm::Var(v.clone()),
        AlgTerm::Zero => AlgTerm::Zero,
        AlgTerm::Scale(a, inner) => AlgTerm::scale(a.clone(), canon(inner)),
        AlgTerm::Sum(p, q) => AlgTerm::sum(canon(p), canon(q)),
        AlgTerm::Abs(body) => push_abs(canon(body)),
        AlgTerm::App(f, a) => push_app(canon(f), canon(a)),
    }
}

fn push_abs(body: AlgTerm) -> AlgTerm {
    match body {
        AlgTerm::Zero => AlgTerm::Zero,
        AlgTerm::Scale(a, inner) => AlgTerm::scale(a, push_abs(*inner)),
        AlgTerm::Sum(p, q) => AlgTerm::sum(push_abs(*p), push_abs(*q)),
        simple => AlgTerm::abs(simple),
    }
}

fn push_app(fun: AlgTerm, arg: AlgTerm) -> AlgTerm {
    match fun {
        AlgTerm::Zero => AlgTerm::Zero,
        AlgTerm::Scale(a, inner) => AlgTerm::scale(a, push_app(*inner, arg)),
        AlgTerm::Sum(p, q) => AlgTerm::sum(push_app(*p, arg.clone()), push_app(*q, arg)),
        simple => AlgTerm::app(simple, arg),
    }
}

/// Shift dangling indices >= `cutoff` by `by`.
pub fn shift_alg(m: &AlgTerm, by: u32, cutoff: u32) -> AlgTerm {
    if by == 0 {
        return m.clone();
    }
    match m {
        AlgTerm::Var(VarRef::Bound(i)) if *i >= cutoff => AlgTerm::Var(VarRef::Bound(i + by)),
        AlgTerm::Var(_) => m.clone(),
        AlgTerm::Abs(b) => AlgTerm::abs(shift_alg(b, by, cutoff + 1)),
        AlgTerm::App(f, a) => AlgTerm::app(shift_alg(f, by, cutoff), shift_alg(a, by, cutoff)),
        AlgTerm::Zero => AlgTerm::Zero,
        AlgTerm::Scale(s, b) => AlgTerm::scale(s.clone(), shift_alg(b, by, cutoff)),
        AlgTerm::Sum(p, q) => AlgTerm::sum(shift_alg(p, by, cutoff), shift_alg(q, by, cutoff)),
    }
}

/// Substitute `n` for a target variable in `m`, capture-avoiding (the
/// replacement's dangling indices are shifted as binders are crossed).
pub fn subst_alg(m: &AlgTerm, x: Target, n: &AlgTerm, depth: u32) -> AlgTerm {
    match m {
        AlgTerm::Var(v) => {
            if x.matches(v, depth) {
                shift_alg(n, depth, 0)
            } else {
                m.clone()
            }
        }
        AlgTerm::Abs(b) => AlgTerm::abs(subst_alg(b, x, n, depth + 1)),
        AlgTerm::App(f, a) => AlgTerm::app(subst_alg(f, x, n, depth), subst_alg(a, x, n, depth)),
        AlgTerm::Zero => AlgTerm::Zero,
        AlgTerm::Scale(s, b) => AlgTerm::scale(s.clone(), subst_alg(b, x, n, depth)),
        AlgTerm::Sum(p, q) => AlgTerm::sum(subst_alg(p, x, n, depth), subst_alg(q, x, n, depth)),
    }
}

/// Replace the binder of an abstraction body by `arg` (β-step payload):
/// occurrences of index 0 are substituted and outer indices shift down.
pub fn open_alg(body: &AlgTerm, arg: &AlgTerm) -> AlgTerm {
    fn go(m: &AlgTerm, arg: &AlgTerm, depth: u32) -> AlgTerm {
        match m {
            AlgTerm::Var(VarRef::Bound(i)) => {
                if *i == depth {
                    shift_alg(arg, depth, 0)
                } else if *i > depth {
                    AlgTerm::Var(VarRef::Bound(i - 1))
                } else {
                    m.clone()
                }
            }
            AlgTerm::Var(_) => m.clone(),
            AlgTerm::Abs(b) => AlgTerm::abs(go(b, arg, depth + 1)),
            AlgTerm::App(f, a) => AlgTerm::app(go(f, arg, depth), go(a, arg, depth)),
            AlgTerm::Zero => AlgTerm::Zero,
            AlgTerm::Scale(s, b) => AlgTerm::scale(s.clone(), go(b, arg, depth)),
            AlgTerm::Sum(p, q) => AlgTerm::sum(go(p, arg, depth), go(q, arg, depth)),
        }
    }
    go(body, arg, 0)
}

pub fn free_vars_alg(m: &AlgTerm) -> std::collections::BTreeSet<String> {
    fn go(m: &AlgTerm, out: &mut std::collections::BTreeSet<String>) {
        match m {
            AlgTerm::Var(VarRef::Free(x)) => {
                out.insert(x.clone());
            }
            AlgTerm::Var(_) => {}
            AlgTerm::Abs(b) => go(b, out),
            AlgTerm::App(f, a) => {
                go(f, out);
                go(a, out);
            }
            AlgTerm::Zero => {}
            AlgTerm::Scale(_, b) => go(b, out),
            AlgTerm::Sum(p, q) => {
                go(p, out);
                go(q, out);
            }
        }
    }
    let mut out = std::collections::BTreeSet::new();
    go(m, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_rules_fire_left_to_right() {
        // \x.(M+N) -> \x.M + \x.N
        let m = AlgTerm::abs(AlgTerm::sum(AlgTerm::var("y"), AlgTerm::var("z")));
        let c = canonicalize_alg(&m);
        assert_eq!(
            c.term(),
            &AlgTerm::sum(AlgTerm::abs(AlgTerm::var("y")), AlgTerm::abs(AlgTerm::var("z")))
        );

        // (a*M) P -> a*(M P)
        let m = AlgTerm::app(
            AlgTerm::scale(Scalar::from_int(2), AlgTerm::var("f")),
            AlgTerm::var("p"),
        );
        let c = canonicalize_alg(&m);
        assert_eq!(
            c.term(),
            &AlgTerm::scale(Scalar::from_int(2), AlgTerm::app(AlgTerm::var("f"), AlgTerm::var("p")))
        );

        // 0 P -> 0
        let m = AlgTerm::app(AlgTerm::Zero, AlgTerm::var("p"));
        assert_eq!(canonicalize_alg(&m).term(), &AlgTerm::Zero);
    }

    #[test]
    fn canonicalization_is_idempotent() {
        let m = AlgTerm::abs(AlgTerm::app(
            AlgTerm::sum(
                AlgTerm::scale(Scalar::ratio(1, 2), AlgTerm::var("y")),
                AlgTerm::Zero,
            ),
            AlgTerm::var("z"),
        ));
        let c1 = canonicalize_alg(&m);
        let c2 = canonicalize_alg(c1.term());
        assert_eq!(c1, c2);
        assert!(c1.term().is_canonical());
    }

    #[test]
    fn zero_scale_is_preserved() {
        let m = AlgTerm::scale(Scalar::from_int(0), AlgTerm::var("x"));
        let c = canonicalize_alg(&m);
        assert_eq!(c.term(), &m);
    }
}
