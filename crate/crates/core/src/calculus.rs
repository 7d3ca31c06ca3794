//! Partial derivatives, iterated derivatives, multilinear substitution and
//! substitution of finite sums.
//!
//! Iterated derivatives and multilinear substitution are computed directly
//! by enumerating partitions of the argument positions over the occurrences
//! of the variable, not by iterating single derivatives; coefficients from
//! coinciding summands accumulate through the semiring embedding of the
//! naturals.

use crate::scalars::Semiring;
use crate::syntax::{
    combine, deg_mono, deg_term, shift_term, FinSum, ResMonomial, ResTerm, Target, VarRef,
};

/// Rebuild a non-occurrence leaf. When substituting for a binder, dangling
/// indices above it step down because the abstraction node disappears.
fn fixup_var(x: Target, v: &VarRef, depth: u32) -> VarRef {
    match (x, v) {
        (Target::Bound(k), VarRef::Bound(i)) if *i > k + depth => VarRef::Bound(i - 1),
        _ => v.clone(),
    }
}

// ------------------------------------------------------------------- pdiff

/// Partial derivative of a term along `u` at the free variable `x`: the sum
/// of single-occurrence replacements.
pub fn pdiff_term(ring: Semiring, t: &ResTerm, x: &str, u: &ResTerm) -> FinSum<ResTerm> {
    pd_term(ring, t, x, u, 0)
}

pub fn pdiff_mono(ring: Semiring, m: &ResMonomial, x: &str, u: &ResTerm) -> FinSum<ResMonomial> {
    pd_mono(ring, m, x, u, 0)
}

fn pd_term(ring: Semiring, t: &ResTerm, x: &str, u: &ResTerm, depth: u32) -> FinSum<ResTerm> {
    match t {
        ResTerm::Var(VarRef::Free(y)) if y == x => {
            FinSum::singleton(ring, shift_term(u, depth, 0))
        }
        ResTerm::Var(_) => FinSum::zero(ring),
        ResTerm::Abs(s) => pd_term(ring, s, x, u, depth + 1).map(|b| ResTerm::abs(b.clone())),
        ResTerm::App(s, bag) => {
            let mut out = pd_term(ring, s, x, u, depth).map(|f| ResTerm::app(f.clone(), bag.clone()));
            out.add_assign(
                &pd_mono(ring, bag, x, u, depth).map(|b| ResTerm::app((**s).clone(), b.clone())),
            );
            out
        }
    }
}

fn pd_mono(ring: Semiring, m: &ResMonomial, x: &str, u: &ResTerm, depth: u32) -> FinSum<ResMonomial> {
    let mut out = FinSum::zero(ring);
    for (i, elem) in m.elems().iter().enumerate() {
        out.add_assign(&pd_term(ring, elem, x, u, depth).map(|d| m.replaced(i, d.clone())));
    }
    out
}

// ----------------------------------------------------- npdiff and lsubst

/// All ways to pick a subset of `positions` of exactly (`exact`) or at most
/// the given size, returning (chosen, rest). Each subset is produced once.
fn pick(positions: &[usize], size: usize, exact: bool) -> Vec<(Vec<usize>, Vec<usize>)> {
    fn go(
        rest: &[usize],
        size: usize,
        exact: bool,
        chosen: &mut Vec<usize>,
        not_chosen: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, Vec<usize>)>,
    ) {
        if chosen.len() == size {
            let mut nc = not_chosen.clone();
            nc.extend_from_slice(rest);
            out.push((chosen.clone(), nc));
            return;
        }
        if rest.is_empty() {
            if !exact {
                out.push((chosen.clone(), not_chosen.clone()));
            }
            return;
        }
        chosen.push(rest[0]);
        go(&rest[1..], size, exact, chosen, not_chosen, out);
        chosen.pop();
        not_chosen.push(rest[0]);
        go(&rest[1..], size, exact, chosen, not_chosen, out);
        not_chosen.pop();
    }
    let mut out = Vec::new();
    go(positions, size, exact, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

struct Multi<'a> {
    ring: Semiring,
    x: Target<'a>,
    bag: &'a [ResTerm],
    exact: bool,
}

impl<'a> Multi<'a> {
    fn term(&self, t: &ResTerm, positions: &[usize], depth: u32) -> FinSum<ResTerm> {
        let n = positions.len() as u64;
        match t {
            ResTerm::Var(v) => {
                if self.x.matches(v, depth) {
                    match n {
                        0 if !self.exact => FinSum::singleton(self.ring, t.clone()),
                        1 => FinSum::singleton(
                            self.ring,
                            shift_term(&self.bag[positions[0]], depth, 0),
                        ),
                        _ => FinSum::zero(self.ring),
                    }
                } else if n == 0 {
                    FinSum::singleton(self.ring, ResTerm::Var(fixup_var(self.x, v, depth)))
                } else {
                    FinSum::zero(self.ring)
                }
            }
            ResTerm::Abs(s) => self
                .term(s, positions, depth + 1)
                .map(|b| ResTerm::abs(b.clone())),
            ResTerm::App(s, bag) => {
                let ds = deg_at(self.x, depth, |x| deg_term(x, s));
                let dbag = deg_at(self.x, depth, |x| deg_mono(x, bag));
                if self.exact && ds + dbag != n {
                    return FinSum::zero(self.ring);
                }
                let mut out = FinSum::zero(self.ring);
                let want = ds.min(n) as usize;
                for (i, j) in pick(positions, want, self.exact) {
                    if !self.exact && (j.len() as u64) > dbag {
                        continue;
                    }
                    let fs = self.term(s, &i, depth);
                    if fs.is_zero() {
                        continue;
                    }
                    let bs = self.mono_elems(bag.elems(), &j, depth);
                    out.add_assign(&combine(&fs, &bs, |f, b| ResTerm::app(f.clone(), b.clone())));
                }
                out
            }
        }
    }

    fn mono_elems(&self, elems: &[ResTerm], positions: &[usize], depth: u32) -> FinSum<ResMonomial> {
        if elems.is_empty() {
            return if positions.is_empty() {
                FinSum::singleton(self.ring, ResMonomial::empty())
            } else {
                FinSum::zero(self.ring)
            };
        }
        let head = &elems[0];
        let dh = deg_at(self.x, depth, |x| deg_term(x, head));
        let n = positions.len() as u64;
        let want = dh.min(n) as usize;
        let mut out = FinSum::zero(self.ring);
        for (i, j) in pick(positions, want, self.exact) {
            let hs = self.term(head, &i, depth);
            if hs.is_zero() {
                continue;
            }
            let rest = self.mono_elems(&elems[1..], &j, depth);
            out.add_assign(&combine(&hs, &rest, |h, r| r.inserted(h.clone())));
        }
        out
    }
}

fn deg_at(x: Target, depth: u32, f: impl Fn(Target) -> u64) -> u64 {
    match x {
        Target::Free(name) => f(Target::Free(name)),
        Target::Bound(k) => f(Target::Bound(k + depth)),
    }
}

/// Iterated derivative along the multiset `bag` at the free variable `x`,
/// by direct partition enumeration. Zero whenever `|bag| > deg_x`.
pub fn npdiff_term(ring: Semiring, t: &ResTerm, x: &str, bag: &ResMonomial) -> FinSum<ResTerm> {
    let eng = Multi { ring, x: Target::Free(x), bag: bag.elems(), exact: false };
    let positions: Vec<usize> = (0..bag.len()).collect();
    eng.term(t, &positions, 0)
}

pub fn npdiff_mono(ring: Semiring, m: &ResMonomial, x: &str, bag: &ResMonomial) -> FinSum<ResMonomial> {
    let eng = Multi { ring, x: Target::Free(x), bag: bag.elems(), exact: false };
    let positions: Vec<usize> = (0..bag.len()).collect();
    eng.mono_elems(m.elems(), &positions, 0)
}

/// Multilinear substitution of the multiset `bag` for the free variable
/// `x`: the sum over bijective distributions of the elements onto the
/// occurrences; zero unless `deg_x = |bag|`.
pub fn lsubst_term(ring: Semiring, t: &ResTerm, x: &str, bag: &ResMonomial) -> FinSum<ResTerm> {
    if deg_term(Target::Free(x), t) != bag.len() as u64 {
        return FinSum::zero(ring);
    }
    let eng = Multi { ring, x: Target::Free(x), bag: bag.elems(), exact: true };
    let positions: Vec<usize> = (0..bag.len()).collect();
    eng.term(t, &positions, 0)
}

pub fn lsubst_mono(ring: Semiring, m: &ResMonomial, x: &str, bag: &ResMonomial) -> FinSum<ResMonomial> {
    if deg_mono(Target::Free(x), m) != bag.len() as u64 {
        return FinSum::zero(ring);
    }
    let eng = Multi { ring, x: Target::Free(x), bag: bag.elems(), exact: true };
    let positions: Vec<usize> = (0..bag.len()).collect();
    eng.mono_elems(m.elems(), &positions, 0)
}

/// Fire a redex: multilinear substitution of `bag` for the binder of
/// `body`. Outer dangling indices step down past the consumed binder.
pub fn lsubst_binder(ring: Semiring, body: &ResTerm, bag: &ResMonomial) -> FinSum<ResTerm> {
    if deg_term(Target::Bound(0), body) != bag.len() as u64 {
        return FinSum::zero(ring);
    }
    let eng = Multi { ring, x: Target::Bound(0), bag: bag.elems(), exact: true };
    let positions: Vec<usize> = (0..bag.len()).collect();
    eng.term(body, &positions, 0)
}

// --------------------------------------------------------------- subst_sum

/// Substitution of a finite sum of terms for the free variable `x`; agrees
/// with classical capture-avoiding substitution on single terms, and is not
/// linear in the sum.
pub fn subst_sum_term(ring: Semiring, t: &ResTerm, x: &str, sum: &FinSum<ResTerm>) -> FinSum<ResTerm> {
    ss_term(ring, t, x, sum, 0)
}

pub fn subst_sum_mono(
    ring: Semiring,
    m: &ResMonomial,
    x: &str,
    sum: &FinSum<ResTerm>,
) -> FinSum<ResMonomial> {
    ss_mono_elems(ring, m.elems(), x, sum, 0)
}

fn ss_term(ring: Semiring, t: &ResTerm, x: &str, sum: &FinSum<ResTerm>, depth: u32) -> FinSum<ResTerm> {
    match t {
        ResTerm::Var(VarRef::Free(y)) if y == x => sum.map(|s| shift_term(s, depth, 0)),
        ResTerm::Var(_) => FinSum::singleton(ring, t.clone()),
        ResTerm::Abs(s) => ss_term(ring, s, x, sum, depth + 1).map(|b| ResTerm::abs(b.clone())),
        ResTerm::App(s, bag) => combine(
            &ss_term(ring, s, x, sum, depth),
            &ss_mono_elems(ring, bag.elems(), x, sum, depth),
            |f, b| ResTerm::app(f.clone(), b.clone()),
        ),
    }
}

fn ss_mono_elems(
    ring: Semiring,
    elems: &[ResTerm],
    x: &str,
    sum: &FinSum<ResTerm>,
    depth: u32,
) -> FinSum<ResMonomial> {
    match elems.split_first() {
        None => FinSum::singleton(ring, ResMonomial::empty()),
        Some((head, rest)) => combine(
            &ss_term(ring, head, x, sum, depth),
            &ss_mono_elems(ring, rest, x, sum, depth),
            |h, r| r.inserted(h.clone()),
        ),
    }
}

// ------------------------------------------------- linear extensions in e

pub fn lsubst_term_sum(
    ring: Semiring,
    e: &FinSum<ResTerm>,
    x: &str,
    bag: &ResMonomial,
) -> FinSum<ResTerm> {
    e.flat_map(|t| lsubst_term(ring, t, x, bag))
}

pub fn npdiff_term_sum(
    ring: Semiring,
    e: &FinSum<ResTerm>,
    x: &str,
    bag: &ResMonomial,
) -> FinSum<ResTerm> {
    e.flat_map(|t| npdiff_term(ring, t, x, bag))
}

pub fn subst_sum_term_sum(
    ring: Semiring,
    e: &FinSum<ResTerm>,
    x: &str,
    sum: &FinSum<ResTerm>,
) -> FinSum<ResTerm> {
    e.flat_map(|t| subst_sum_term(ring, t, x, sum))
}
