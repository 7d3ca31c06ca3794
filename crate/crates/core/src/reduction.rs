//! Resource reduction, normal forms, reachability, the canonical parallel
//! reducts (full, left, substitution-depth-bounded) and the growth bound
//! recurrence.

use crate::calculus::lsubst_binder;
use crate::scalars::Semiring;
use crate::syntax::{combine, occ_target, FinSum, ResMonomial, ResTerm, Target};
use num_bigint::BigUint;
use std::collections::{BTreeSet, HashMap, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error("expression size {size} exceeds the enumeration cap {cap}")]
    CapExceeded { size: u64, cap: u64 },
}

/// One child selector on the path from the root to a redex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    AbsBody,
    AppFun,
    AppArg(usize),
}

/// Path from the root to an application whose function is an abstraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RedexPosition(pub Vec<Step>);

pub fn is_normal_term(t: &ResTerm) -> bool {
    match t {
        ResTerm::Var(_) => true,
        ResTerm::Abs(s) => is_normal_term(s),
        ResTerm::App(f, bag) => {
            !matches!(**f, ResTerm::Abs(_))
                && is_normal_term(f)
                && bag.elems().iter().all(is_normal_term)
        }
    }
}

fn lsubst_binder_sums(
    ring: Semiring,
    bodies: &FinSum<ResTerm>,
    bags: &FinSum<ResMonomial>,
) -> FinSum<ResTerm> {
    let mut out = FinSum::zero(ring);
    for (b, c1) in bodies.iter() {
        for (bag, c2) in bags.iter() {
            out.add_assign(&lsubst_binder(ring, b, bag).scaled(&ring.mul(c1, c2)));
        }
    }
    out
}

/// One entry per redex occurrence: the position and the contextual
/// replacement of that redex by its multilinear reduct.
pub fn one_step_reducts(ring: Semiring, t: &ResTerm) -> Vec<(RedexPosition, FinSum<ResTerm>)> {
    let mut out = Vec::new();
    one_step_inner(ring, t, &mut Vec::new(), &mut out);
    out
}

fn one_step_inner(
    ring: Semiring,
    t: &ResTerm,
    path: &mut Vec<Step>,
    out: &mut Vec<(RedexPosition, FinSum<ResTerm>)>,
) {
    match t {
        ResTerm::Var(_) => {}
        ResTerm::Abs(s) => {
            path.push(Step::AbsBody);
            let before = out.len();
            one_step_inner(ring, s, path, out);
            for (_, sum) in &mut out[before..] {
                *sum = sum.map(|b| ResTerm::abs(b.clone()));
            }
            path.pop();
        }
        ResTerm::App(f, bag) => {
            if let ResTerm::Abs(body) = &**f {
                out.push((RedexPosition(path.clone()), lsubst_binder(ring, body, bag)));
            }
            path.push(Step::AppFun);
            let before = out.len();
            one_step_inner(ring, f, path, out);
            for (_, sum) in &mut out[before..] {
                *sum = sum.map(|g| ResTerm::app(g.clone(), bag.clone()));
            }
            path.pop();
            for (i, elem) in bag.elems().iter().enumerate() {
                path.push(Step::AppArg(i));
                let before = out.len();
                one_step_inner(ring, elem, path, out);
                for (_, sum) in &mut out[before..] {
                    *sum = sum.map(|e| ResTerm::app((**f).clone(), bag.replaced(i, e.clone())));
                }
                path.pop();
            }
        }
    }
}

// ------------------------------------------------------------ normal forms

/// Normalizer with a memo table keyed on canonical terms; any reduction
/// discipline reaches the same result, this one is leftmost-innermost.
pub struct Normalizer {
    ring: Semiring,
    memo: HashMap<ResTerm, FinSum<ResTerm>>,
}

impl Normalizer {
    pub fn new(ring: Semiring) -> Normalizer {
        Normalizer { ring, memo: HashMap::new() }
    }

    pub fn nf_term(&mut self, t: &ResTerm) -> FinSum<ResTerm> {
        if let Some(hit) = self.memo.get(t) {
            return hit.clone();
        }
        let result = match t {
            ResTerm::Var(_) => FinSum::singleton(self.ring, t.clone()),
            ResTerm::Abs(s) => self.nf_term(s).map(|b| ResTerm::abs(b.clone())),
            ResTerm::App(f, bag) => {
                let fs = self.nf_term(f);
                let bags = self.nf_mono(bag);
                let mut out = FinSum::zero(self.ring);
                for (f2, c1) in fs.iter() {
                    for (bag2, c2) in bags.iter() {
                        let c = self.ring.mul(c1, c2);
                        if let ResTerm::Abs(body) = f2 {
                            let fired = lsubst_binder(self.ring, body, bag2);
                            let normalized = self.nf_sum(&fired);
                            out.add_assign(&normalized.scaled(&c));
                        } else {
                            out.add_entry(ResTerm::app(f2.clone(), bag2.clone()), c);
                        }
                    }
                }
                out
            }
        };
        self.memo.insert(t.clone(), result.clone());
        result
    }

    pub fn nf_mono(&mut self, m: &ResMonomial) -> FinSum<ResMonomial> {
        let mut acc = FinSum::singleton(self.ring, ResMonomial::empty());
        for elem in m.elems() {
            let es = self.nf_term(elem);
            acc = combine(&es, &acc, |e, rest| rest.inserted(e.clone()));
        }
        acc
    }

    pub fn nf_sum(&mut self, sum: &FinSum<ResTerm>) -> FinSum<ResTerm> {
        let ring = self.ring;
        let mut out = FinSum::zero(ring);
        for (t, c) in sum.iter() {
            out.add_assign(&self.nf_term(t).scaled(c));
        }
        out
    }
}

/// The unique resource normal form of a finite sum.
pub fn nf(sum: &FinSum<ResTerm>) -> FinSum<ResTerm> {
    Normalizer::new(sum.ring()).nf_sum(sum)
}

pub fn nf_term(ring: Semiring, t: &ResTerm) -> FinSum<ResTerm> {
    Normalizer::new(ring).nf_term(t)
}

/// Projection on normal resource terms: keep exactly the normal entries.
pub fn normal_restrict(sum: &FinSum<ResTerm>) -> FinSum<ResTerm> {
    let mut out = sum.clone();
    out.retain(is_normal_term);
    out
}

/// The set of expressions reachable from `t` by iterated one-step
/// reduction, `t` included.
pub fn reachable_support(t: &ResTerm) -> BTreeSet<ResTerm> {
    let ring = Semiring::Nat;
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(t.clone());
    queue.push_back(t.clone());
    while let Some(cur) = queue.pop_front() {
        for (_, sum) in one_step_reducts(ring, &cur) {
            for (next, _) in sum.iter() {
                if seen.insert(next.clone()) {
                    queue.push_back(next.clone());
                }
            }
        }
    }
    seen
}

// ------------------------------------------------------- canonical reducts

/// Spine view: innermost head and the argument bags applied to it, in
/// application order.
fn spine(t: &ResTerm) -> (&ResTerm, Vec<&ResMonomial>) {
    let mut bags = Vec::new();
    let mut cur = t;
    while let ResTerm::App(f, bag) = cur {
        bags.push(bag);
        cur = f;
    }
    bags.reverse();
    (cur, bags)
}

fn rebuild_spine(head: FinSum<ResTerm>, bags: &[FinSum<ResMonomial>]) -> FinSum<ResTerm> {
    let mut acc = head;
    for bag in bags {
        acc = combine(&acc, bag, |f, b| ResTerm::app(f.clone(), b.clone()));
    }
    acc
}

/// Left reduct: fire the head redex of every spine, or left-reduce the
/// arguments of a head variable.
pub fn left_reduct_term(ring: Semiring, t: &ResTerm) -> FinSum<ResTerm> {
    match t {
        ResTerm::Var(_) => FinSum::singleton(ring, t.clone()),
        ResTerm::Abs(s) => left_reduct_term(ring, s).map(|b| ResTerm::abs(b.clone())),
        ResTerm::App(..) => {
            let (head, bags) = spine(t);
            match head {
                ResTerm::Abs(body) => {
                    let fired = lsubst_binder(ring, body, bags[0]);
                    let rest: Vec<FinSum<ResMonomial>> = bags[1..]
                        .iter()
                        .map(|b| FinSum::singleton(ring, (*b).clone()))
                        .collect();
                    rebuild_spine(fired, &rest)
                }
                ResTerm::Var(_) => {
                    let reduced: Vec<FinSum<ResMonomial>> =
                        bags.iter().map(|b| left_reduct_mono(ring, b)).collect();
                    rebuild_spine(FinSum::singleton(ring, head.clone()), &reduced)
                }
                _ => unreachable!("spine head is a variable or abstraction"),
            }
        }
    }
}

pub fn left_reduct_mono(ring: Semiring, m: &ResMonomial) -> FinSum<ResMonomial> {
    let mut acc = FinSum::singleton(ring, ResMonomial::empty());
    for elem in m.elems() {
        let es = left_reduct_term(ring, elem);
        acc = combine(&es, &acc, |e, rest| rest.inserted(e.clone()));
    }
    acc
}

pub fn left_reduct(sum: &FinSum<ResTerm>) -> FinSum<ResTerm> {
    sum.flat_map(|t| left_reduct_term(sum.ring(), t))
}

/// Full parallel reduct: fire every redex simultaneously.
pub fn full_reduct_term(ring: Semiring, t: &ResTerm) -> FinSum<ResTerm> {
    match t {
        ResTerm::Var(_) => FinSum::singleton(ring, t.clone()),
        ResTerm::Abs(s) => full_reduct_term(ring, s).map(|b| ResTerm::abs(b.clone())),
        ResTerm::App(f, bag) => {
            let bags = full_reduct_mono(ring, bag);
            if let ResTerm::Abs(body) = &**f {
                let bodies = full_reduct_term(ring, body);
                lsubst_binder_sums(ring, &bodies, &bags)
            } else {
                combine(&full_reduct_term(ring, f), &bags, |g, b| {
                    ResTerm::app(g.clone(), b.clone())
                })
            }
        }
    }
}

pub fn full_reduct_mono(ring: Semiring, m: &ResMonomial) -> FinSum<ResMonomial> {
    let mut acc = FinSum::singleton(ring, ResMonomial::empty());
    for elem in m.elems() {
        let es = full_reduct_term(ring, elem);
        acc = combine(&es, &acc, |e, rest| rest.inserted(e.clone()));
    }
    acc
}

pub fn full_reduct(sum: &FinSum<ResTerm>) -> FinSum<ResTerm> {
    sum.flat_map(|t| full_reduct_term(sum.ring(), t))
}

/// Full parallel reduct at substitution depth `d`: a redex fires one level
/// down only if its bound variable occurs at depth at most the remaining
/// budget.
pub fn fpbs_reduct_term(ring: Semiring, d: u64, t: &ResTerm) -> FinSum<ResTerm> {
    if d == 0 {
        return FinSum::singleton(ring, t.clone());
    }
    match t {
        ResTerm::Var(_) => FinSum::singleton(ring, t.clone()),
        ResTerm::Abs(s) => fpbs_reduct_term(ring, d - 1, s).map(|b| ResTerm::abs(b.clone())),
        ResTerm::App(f, bag) => {
            let bags = fpbs_reduct_mono(ring, d - 1, bag);
            if let ResTerm::Abs(body) = &**f {
                let occ = occ_target(Target::Bound(0), &(**body).clone().into());
                if occ.max_depth() <= d - 1 {
                    let bodies = fpbs_reduct_term(ring, d - 1, body);
                    return lsubst_binder_sums(ring, &bodies, &bags);
                }
            }
            combine(&fpbs_reduct_term(ring, d, f), &bags, |g, b| {
                ResTerm::app(g.clone(), b.clone())
            })
        }
    }
}

pub fn fpbs_reduct_mono(ring: Semiring, d: u64, m: &ResMonomial) -> FinSum<ResMonomial> {
    if d == 0 {
        return FinSum::singleton(ring, m.clone());
    }
    let mut acc = FinSum::singleton(ring, ResMonomial::empty());
    for elem in m.elems() {
        let es = fpbs_reduct_term(ring, d, elem);
        acc = combine(&es, &acc, |e, rest| rest.inserted(e.clone()));
    }
    acc
}

pub fn fpbs_reduct(d: u64, sum: &FinSum<ResTerm>) -> FinSum<ResTerm> {
    sum.flat_map(|t| fpbs_reduct_term(sum.ring(), d, t))
}

// ------------------------------------------------------- parallel reducts

/// All parallel reducts of `t`: at each redex both the fire and do-not-fire
/// alternatives, products over sub-positions. Contains `t` itself and the
/// full reduct.
pub fn parallel_reducts(
    ring: Semiring,
    t: &ResTerm,
    cap: u64,
) -> Result<BTreeSet<FinSum<ResTerm>>, ReductionError> {
    let size = crate::syntax::term_size(t);
    if size > cap {
        return Err(ReductionError::CapExceeded { size, cap });
    }
    Ok(par_term(ring, t).into_iter().collect())
}

fn par_term(ring: Semiring, t: &ResTerm) -> Vec<FinSum<ResTerm>> {
    match t {
        ResTerm::Var(_) => vec![FinSum::singleton(ring, t.clone())],
        ResTerm::Abs(s) => par_term(ring, s)
            .into_iter()
            .map(|sum| sum.map(|b| ResTerm::abs(b.clone())))
            .collect(),
        ResTerm::App(f, bag) => {
            let bag_choices = par_mono(ring, bag);
            let mut out: BTreeSet<FinSum<ResTerm>> = BTreeSet::new();
            for fc in par_term(ring, f) {
                for bc in &bag_choices {
                    out.insert(combine(&fc, bc, |g, b| ResTerm::app(g.clone(), b.clone())));
                }
            }
            if let ResTerm::Abs(body) = &**f {
                for bodyc in par_term(ring, body) {
                    for bc in &bag_choices {
                        out.insert(lsubst_binder_sums(ring, &bodyc, bc));
                    }
                }
            }
            out.into_iter().collect()
        }
    }
}

fn par_mono(ring: Semiring, m: &ResMonomial) -> Vec<FinSum<ResMonomial>> {
    let mut acc: Vec<FinSum<ResMonomial>> = vec![FinSum::singleton(ring, ResMonomial::empty())];
    for elem in m.elems() {
        let choices = par_term(ring, elem);
        let mut next: BTreeSet<FinSum<ResMonomial>> = BTreeSet::new();
        for rest in &acc {
            for c in &choices {
                next.insert(combine(c, rest, |e, r| r.inserted(e.clone())));
            }
        }
        acc = next.into_iter().collect();
    }
    acc
}

// ------------------------------------------------------------ growth bound

/// The antecedent-size bound recurrence:
/// B(k,0,0) = 0, B(k,l+1,0) = B(k,l,k)+1, B(k,l,m+1) = 4 B(k,l,m).
pub fn growth_bound(k: u64, l: u64, m: u64) -> BigUint {
    let four = BigUint::from(4u32);
    let step = four.pow(k as u32);
    let mut b0 = BigUint::from(0u32);
    for _ in 0..l {
        b0 = &b0 * &step + 1u32;
    }
    b0 * four.pow(m as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Scalar;
    use crate::syntax::VarRef;

    const R: Semiring = Semiring::Nat;

    fn v(n: &str) -> ResTerm {
        ResTerm::var(n)
    }

    fn b0() -> ResTerm {
        ResTerm::Var(VarRef::Bound(0))
    }

    fn ident() -> ResTerm {
        ResTerm::abs(b0())
    }

    fn bag(ts: Vec<ResTerm>) -> ResMonomial {
        ResMonomial::new(ts)
    }

    /// \x. x[x]
    fn delta() -> ResTerm {
        ResTerm::abs(ResTerm::app(b0(), bag(vec![b0()])))
    }

    #[test]
    fn one_step_enumerates_positions() {
        assert!(one_step_reducts(R, &v("x")).is_empty());

        // (\x.x)[(\y.y)[z]]: outer fires to (\y.y)[z], inner to (\x.x)[z]
        let inner = ResTerm::app(ident(), bag(vec![v("z")]));
        let outer = ResTerm::app(ident(), bag(vec![inner.clone()]));
        let steps = one_step_reducts(R, &outer);
        assert_eq!(steps.len(), 2);
        let sums: Vec<&FinSum<ResTerm>> = steps.iter().map(|(_, s)| s).collect();
        assert!(sums.iter().any(|s| s.coeff(&inner) == Scalar::from_int(1) && s.len() == 1));
        let fired_inner = ResTerm::app(ident(), bag(vec![v("z")]));
        assert!(sums.iter().any(|s| s.coeff(&fired_inner) == Scalar::from_int(1)));

        // (\x.x[x])[\x.x[x]]: one entry, reduct 0 by degree mismatch
        let omega = ResTerm::app(delta(), bag(vec![delta()]));
        let steps = one_step_reducts(R, &omega);
        assert_eq!(steps.len(), 1);
        assert!(steps[0].1.is_zero());
    }

    /// Follow a redex path back into the term.
    fn subterm_at<'a>(mut t: &'a ResTerm, path: &[Step]) -> &'a ResTerm {
        for step in path {
            t = match (step, t) {
                (Step::AbsBody, ResTerm::Abs(s)) => s,
                (Step::AppFun, ResTerm::App(f, _)) => f,
                (Step::AppArg(i), ResTerm::App(_, bag)) => &bag.elems()[*i],
                _ => panic!("path does not fit the term"),
            };
        }
        t
    }

    #[test]
    fn positions_land_on_redexes() {
        let t = ResTerm::abs(ResTerm::app(
            ResTerm::app(ident(), bag(vec![ResTerm::app(ident(), bag(vec![b0()]))])),
            bag(vec![ResTerm::app(delta(), bag(vec![v("y")])), v("z")]),
        ));
        let steps = one_step_reducts(R, &t);
        assert!(!steps.is_empty());
        for (RedexPosition(path), _) in &steps {
            let sub = subterm_at(&t, path);
            assert!(
                matches!(sub, ResTerm::App(f, _) if matches!(**f, ResTerm::Abs(_))),
                "position {path:?} is not a redex"
            );
        }
    }

    #[test]
    fn normal_forms() {
        // (\x.x)[y] -> y
        let t = ResTerm::app(ident(), bag(vec![v("y")]));
        let n = nf_term(R, &t);
        assert_eq!(n.coeff(&v("y")), Scalar::from_int(1));
        assert_eq!(n.len(), 1);

        // Omega with multiset arity mismatch normalizes to 0
        let omega = ResTerm::app(delta(), bag(vec![delta()]));
        assert!(nf_term(R, &omega).is_zero());

        // \y.(\x.x)[(\x.x)[y]] -> \y.y
        let t = ResTerm::abs(ResTerm::app(
            ident(),
            bag(vec![ResTerm::app(ident(), bag(vec![b0()]))]),
        ));
        let n = nf_term(R, &t);
        assert_eq!(n.coeff(&ident()), Scalar::from_int(1));
        assert_eq!(n.len(), 1);
    }

    #[test]
    fn restriction_keeps_normal_entries() {
        let mut s = FinSum::zero(R);
        s.add_entry(v("y"), Scalar::from_int(1));
        s.add_entry(ResTerm::app(ident(), bag(vec![v("y")])), Scalar::from_int(1));
        let r = normal_restrict(&s);
        assert_eq!(r.coeff(&v("y")), Scalar::from_int(1));
        assert_eq!(r.len(), 1);

        let z: FinSum<ResTerm> = FinSum::zero(R);
        assert!(normal_restrict(&z).is_zero());
    }

    #[test]
    fn reachability() {
        assert_eq!(reachable_support(&v("y")), BTreeSet::from([v("y")]));

        let t = ResTerm::app(ident(), bag(vec![v("y")]));
        assert_eq!(reachable_support(&t), BTreeSet::from([t.clone(), v("y")]));

        // the only reduct is the empty sum, contributing no expressions
        let omega = ResTerm::app(delta(), bag(vec![delta()]));
        assert_eq!(reachable_support(&omega), BTreeSet::from([omega.clone()]));
    }

    #[test]
    fn left_reducts() {
        let t = ResTerm::app(ident(), bag(vec![v("y")]));
        assert_eq!(left_reduct_term(R, &t).coeff(&v("y")), Scalar::from_int(1));

        // x[(\y.y)[z]] -> x[z]: argument clause
        let t = ResTerm::app(v("x"), bag(vec![ResTerm::app(ident(), bag(vec![v("z")]))]));
        let l = left_reduct_term(R, &t);
        assert_eq!(
            l.coeff(&ResTerm::app(v("x"), bag(vec![v("z")]))),
            Scalar::from_int(1)
        );
        assert_eq!(l.len(), 1);

        // normal expressions are fixed
        let n = ResTerm::app(v("x"), bag(vec![v("z")]));
        assert_eq!(left_reduct_term(R, &n).coeff(&n), Scalar::from_int(1));

        // the head redex fires but trailing bags are untouched
        let t = ResTerm::app(
            ResTerm::app(ident(), bag(vec![v("x")])),
            bag(vec![ResTerm::app(ident(), bag(vec![v("z")]))]),
        );
        let l = left_reduct_term(R, &t);
        let expect = ResTerm::app(v("x"), bag(vec![ResTerm::app(ident(), bag(vec![v("z")]))]));
        assert_eq!(l.coeff(&expect), Scalar::from_int(1));
        assert_eq!(l.len(), 1);
    }

    #[test]
    fn full_reducts() {
        // (\x.x)[(\y.y)[z]] -> z: both redexes fired
        let inner = ResTerm::app(ident(), bag(vec![v("z")]));
        let t = ResTerm::app(ident(), bag(vec![inner]));
        let f = full_reduct_term(R, &t);
        assert_eq!(f.coeff(&v("z")), Scalar::from_int(1));
        assert_eq!(f.len(), 1);

        // x[y] is fixed
        let t = ResTerm::app(v("x"), bag(vec![v("y")]));
        assert_eq!(full_reduct_term(R, &t).coeff(&t), Scalar::from_int(1));

        // (\x.x[x])[\y.y] -> 0 by degree mismatch
        let t = ResTerm::app(delta(), bag(vec![ident()]));
        assert!(full_reduct_term(R, &t).is_zero());
    }

    #[test]
    fn bounded_substitution_depth() {
        let t = ResTerm::app(ident(), bag(vec![v("y")]));

        // depth 0 is the identity
        assert_eq!(fpbs_reduct_term(R, 0, &t).coeff(&t), Scalar::from_int(1));

        // depth 1: the bound variable occurs at depth 1 > 0, redex not fired
        assert_eq!(fpbs_reduct_term(R, 1, &t).coeff(&t), Scalar::from_int(1));

        // depth 2 fires it
        assert_eq!(fpbs_reduct_term(R, 2, &t).coeff(&v("y")), Scalar::from_int(1));

        // at depth >= height the full reduct is reached
        let inner = ResTerm::app(ident(), bag(vec![v("z")]));
        let t = ResTerm::app(ident(), bag(vec![inner]));
        let h = crate::syntax::term_height(&t);
        assert_eq!(fpbs_reduct_term(R, h, &t), full_reduct_term(R, &t));
    }

    #[test]
    fn parallel_reduct_sets() {
        let x = v("x");
        let set = parallel_reducts(R, &x, 10).unwrap();
        assert_eq!(set.len(), 1);

        let t = ResTerm::app(ident(), bag(vec![v("y")]));
        let set = parallel_reducts(R, &t, 10).unwrap();
        assert_eq!(set.len(), 2);
        assert!(set.contains(&FinSum::singleton(R, t.clone())));
        assert!(set.contains(&FinSum::singleton(R, v("y"))));

        // two nested redexes give four fire/skip choices; here two of the
        // results are alpha-equal so the set has three elements
        let inner = ResTerm::app(ident(), bag(vec![v("z")]));
        let t = ResTerm::app(ident(), bag(vec![inner.clone()]));
        let set = parallel_reducts(R, &t, 10).unwrap();
        assert_eq!(set.len(), 3);
        assert!(set.contains(&FinSum::singleton(R, t.clone())));
        assert!(set.contains(&FinSum::singleton(R, inner)));
        assert!(set.contains(&full_reduct_term(R, &t)));

        // with distinguishable redexes all four alternatives survive
        let inner = ResTerm::app(
            ResTerm::abs(ResTerm::app(b0(), ResMonomial::empty())),
            bag(vec![v("z")]),
        );
        let t = ResTerm::app(ident(), bag(vec![inner]));
        let set = parallel_reducts(R, &t, 10).unwrap();
        assert_eq!(set.len(), 4);
        assert!(set.contains(&full_reduct_term(R, &t)));

        let big = ResTerm::app(delta(), bag(vec![delta(), delta(), delta()]));
        assert!(parallel_reducts(R, &big, 10).is_err());
    }

    #[test]
    fn growth_bound_identities() {
        for k in 0..=4u64 {
            for m in 0..=4u64 {
                assert_eq!(growth_bound(k, 0, m), BigUint::from(0u32));
                assert_eq!(growth_bound(k, 1, m), BigUint::from(4u32).pow(m as u32));
            }
        }
        // B(1,2,0) = B(1,1,1) + 1 = 5
        assert_eq!(growth_bound(1, 2, 0), BigUint::from(5u32));
    }
}
