//! Resource terms, resource monomials and their metrics.

use super::VarRef;
use std::collections::BTreeSet;

/// A resource term: variable, abstraction, or application of a term to a
/// monomial of arguments.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ResTerm {
    Var(VarRef),
    Abs(Box<ResTerm>),
    App(Box<ResTerm>, ResMonomial),
}

/// A finite multiset of resource terms, stored as a sequence sorted by the
/// total term order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ResMonomial(Vec<ResTerm>);

/// Either a resource term or a resource monomial.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ResExpr {
    Term(ResTerm),
    Mono(ResMonomial),
}

impl ResTerm {
    pub fn var(name: &str) -> ResTerm {
        ResTerm::Var(VarRef::free(name))
    }

    pub fn abs(body: ResTerm) -> ResTerm {
        ResTerm::Abs(Box::new(body))
    }

    pub fn app(fun: ResTerm, bag: ResMonomial) -> ResTerm {
        ResTerm::App(Box::new(fun), bag)
    }
}

impl ResMonomial {
    pub fn new(mut elems: Vec<ResTerm>) -> ResMonomial {
        elems.sort();
        ResMonomial(elems)
    }

    pub fn empty() -> ResMonomial {
        ResMonomial(Vec::new())
    }

    pub fn elems(&self) -> &[ResTerm] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn union(&self, other: &ResMonomial) -> ResMonomial {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        ResMonomial::new(v)
    }

    pub fn inserted(&self, t: ResTerm) -> ResMonomial {
        let mut v = self.0.clone();
        v.push(t);
        ResMonomial::new(v)
    }

    /// Element at `i` replaced by `t`, re-sorted.
    pub fn replaced(&self, i: usize, t: ResTerm) -> ResMonomial {
        let mut v = self.0.clone();
        v[i] = t;
        ResMonomial::new(v)
    }

    /// The sub-multiset at the given positions.
    pub fn select(&self, positions: &[usize]) -> ResMonomial {
        ResMonomial::new(positions.iter().map(|&i| self.0[i].clone()).collect())
    }

    /// Distinct elements with multiplicities, in term order.
    pub fn multiplicities(&self) -> Vec<(&ResTerm, usize)> {
        let mut out: Vec<(&ResTerm, usize)> = Vec::new();
        for t in &self.0 {
            match out.last_mut() {
                Some((u, k)) if *u == t => *k += 1,
                _ => out.push((t, 1)),
            }
        }
        out
    }
}

impl From<ResTerm> for ResExpr {
    fn from(t: ResTerm) -> ResExpr {
        ResExpr::Term(t)
    }
}

impl From<ResMonomial> for ResExpr {
    fn from(m: ResMonomial) -> ResExpr {
        ResExpr::Mono(m)
    }
}

/// Size, height and monomial depth of a resource expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Metrics {
    pub size: u64,
    pub height: u64,
    pub mono_depth: u64,
}

pub fn term_size(t: &ResTerm) -> u64 {
    match t {
        ResTerm::Var(_) => 1,
        ResTerm::Abs(s) => 1 + term_size(s),
        ResTerm::App(s, bag) => 1 + term_size(s) + mono_size(bag),
    }
}

pub fn mono_size(m: &ResMonomial) -> u64 {
    m.elems().iter().map(term_size).sum()
}

pub fn term_height(t: &ResTerm) -> u64 {
    match t {
        ResTerm::Var(_) => 1,
        ResTerm::Abs(s) => 1 + term_height(s),
        ResTerm::App(s, bag) => term_height(s).max(1 + mono_height(bag)),
    }
}

pub fn mono_height(m: &ResMonomial) -> u64 {
    m.elems().iter().map(term_height).max().unwrap_or(0)
}

pub fn term_mono_depth(t: &ResTerm) -> u64 {
    match t {
        ResTerm::Var(_) => 0,
        ResTerm::Abs(s) => term_mono_depth(s),
        ResTerm::App(s, bag) => term_mono_depth(s).max(mono_depth(bag)),
    }
}

pub fn mono_depth(m: &ResMonomial) -> u64 {
    1 + m.elems().iter().map(term_mono_depth).max().unwrap_or(0)
}

pub fn metrics(e: &ResExpr) -> Metrics {
    match e {
        ResExpr::Term(t) => Metrics {
            size: term_size(t),
            height: term_height(t),
            mono_depth: term_mono_depth(t),
        },
        ResExpr::Mono(m) => Metrics {
            size: mono_size(m),
            height: mono_height(m),
            mono_depth: mono_depth(m),
        },
    }
}

/// Total order on resource expressions of the same kind. This is the derived
/// structural order; exposed by name for the public contract.
pub fn compare_terms(a: &ResExpr, b: &ResExpr) -> std::cmp::Ordering {
    a.cmp(b)
}

/// Occurrence count and occurrence depths of a variable.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OccInfo {
    pub count: u64,
    pub depths: BTreeSet<u64>,
}

impl OccInfo {
    pub fn max_depth(&self) -> u64 {
        self.depths.iter().next_back().copied().unwrap_or(0)
    }
}

/// Substitution target: a named free variable, or the bound variable that
/// has de Bruijn index `k` at the point of entry (the index grows as the
/// traversal crosses binders).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target<'a> {
    Free(&'a str),
    Bound(u32),
}

impl<'a> Target<'a> {
    pub(crate) fn matches(&self, v: &VarRef, depth: u32) -> bool {
        match (self, v) {
            (Target::Free(x), VarRef::Free(y)) => *x == y,
            (Target::Bound(k), VarRef::Bound(i)) => *i == k + depth,
            _ => false,
        }
    }
}

fn occ_term(x: Target, t: &ResTerm, depth: u32, at: u64, info: &mut OccInfo) {
    match t {
        ResTerm::Var(v) => {
            if x.matches(v, depth) {
                info.count += 1;
                info.depths.insert(at);
            }
        }
        ResTerm::Abs(s) => occ_term(x, s, depth + 1, at + 1, info),
        ResTerm::App(s, bag) => {
            occ_term(x, s, depth, at, info);
            for u in bag.elems() {
                occ_term(x, u, depth, at + 1, info);
            }
        }
    }
}

pub fn occ_target(x: Target, e: &ResExpr) -> OccInfo {
    let mut info = OccInfo::default();
    match e {
        ResExpr::Term(t) => occ_term(x, t, 0, 1, &mut info),
        ResExpr::Mono(m) => {
            for u in m.elems() {
                occ_term(x, u, 0, 1, &mut info);
            }
        }
    }
    info
}

/// Number of occurrences and set of occurrence depths of the free variable
/// `x` in `e`.
pub fn occ(x: &str, e: &ResExpr) -> OccInfo {
    occ_target(Target::Free(x), e)
}

pub fn deg_term(x: Target, t: &ResTerm) -> u64 {
    match t {
        ResTerm::Var(v) => x.matches(v, 0) as u64,
        ResTerm::Abs(s) => deg_term(
            match x {
                Target::Bound(k) => Target::Bound(k + 1),
                f => f,
            },
            s,
        ),
        ResTerm::App(s, bag) => deg_term(x, s) + deg_mono(x, bag),
    }
}

pub fn deg_mono(x: Target, m: &ResMonomial) -> u64 {
    m.elems().iter().map(|t| deg_term(x, t)).sum()
}

fn fv_term(t: &ResTerm, out: &mut BTreeSet<String>) {
    match t {
        ResTerm::Var(VarRef::Free(x)) => {
            out.insert(x.clone());
        }
        ResTerm::Var(VarRef::Bound(_)) => {}
        ResTerm::Abs(s) => fv_term(s, out),
        ResTerm::App(s, bag) => {
            fv_term(s, out);
            for u in bag.elems() {
                fv_term(u, out);
            }
        }
    }
}

pub fn free_vars(e: &ResExpr) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    match e {
        ResExpr::Term(t) => fv_term(t, &mut out),
        ResExpr::Mono(m) => {
            for u in m.elems() {
                fv_term(u, &mut out);
            }
        }
    }
    out
}

/// Shift dangling indices >= `cutoff` by `by`.
pub fn shift_term(t: &ResTerm, by: u32, cutoff: u32) -> ResTerm {
    if by == 0 {
        return t.clone();
    }
    match t {
        ResTerm::Var(VarRef::Bound(i)) if *i >= cutoff => ResTerm::Var(VarRef::Bound(i + by)),
        ResTerm::Var(_) => t.clone(),
        ResTerm::Abs(s) => ResTerm::abs(shift_term(s, by, cutoff + 1)),
        ResTerm::App(s, bag) => ResTerm::app(
            shift_term(s, by, cutoff),
            ResMonomial::new(bag.elems().iter().map(|u| shift_term(u, by, cutoff)).collect()),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ident() -> ResTerm {
        // \x. x
        ResTerm::abs(ResTerm::Var(VarRef::Bound(0)))
    }

    #[test]
    fn metric_clauses() {
        let x = ResExpr::Term(ResTerm::var("x"));
        assert_eq!(
            metrics(&x),
            Metrics { size: 1, height: 1, mono_depth: 0 }
        );

        // (\x.x)[y]
        let e = ResExpr::Term(ResTerm::app(
            ident(),
            ResMonomial::new(vec![ResTerm::var("y")]),
        ));
        assert_eq!(
            metrics(&e),
            Metrics { size: 4, height: 2, mono_depth: 1 }
        );

        // [y, \x.x]
        let m = ResExpr::Mono(ResMonomial::new(vec![ResTerm::var("y"), ident()]));
        assert_eq!(
            metrics(&m),
            Metrics { size: 3, height: 2, mono_depth: 1 }
        );
    }

    #[test]
    fn occurrence_clauses() {
        let x_in_x = occ("x", &ResExpr::Term(ResTerm::var("x")));
        assert_eq!(x_in_x.count, 1);
        assert_eq!(x_in_x.depths, BTreeSet::from([1]));

        let x_in_y = occ("x", &ResExpr::Term(ResTerm::var("y")));
        assert_eq!(x_in_y.count, 0);
        assert!(x_in_y.depths.is_empty());

        // \y. x[x]
        let e = ResExpr::Term(ResTerm::abs(ResTerm::app(
            ResTerm::var("x"),
            ResMonomial::new(vec![ResTerm::var("x")]),
        )));
        let info = occ("x", &e);
        assert_eq!(info.count, 2);
        assert_eq!(info.depths, BTreeSet::from([2, 3]));
    }

    #[test]
    fn ordering_tags() {
        let x = ResTerm::var("x");
        let y = ResTerm::var("y");
        assert!(ResExpr::Term(x.clone()) < ResExpr::Term(y.clone()));
        assert!(ResExpr::Term(x.clone()) < ResExpr::Term(ident()));
        assert_eq!(
            compare_terms(&ResExpr::Term(x.clone()), &ResExpr::Term(x)),
            std::cmp::Ordering::Equal
        );
    }

    #[test]
    fn fv() {
        let e = ResExpr::Term(ident());
        assert!(free_vars(&e).is_empty());
        let e = ResExpr::Term(ResTerm::app(
            ResTerm::var("x"),
            ResMonomial::new(vec![ResTerm::var("y")]),
        ));
        assert_eq!(
            free_vars(&e),
            BTreeSet::from(["x".to_string(), "y".to_string()])
        );
    }
}
