//! Algebraic λ-term dynamics: β-substitution, head classification, left and
//! full parallel reducts, normalization, weak solvability, determinable
//! terms, normal approximants and the normal form of Taylor expansion.
//!
//! Judgements that are only semi-decidable return a three-valued `Verdict`:
//! a cycling deterministic head or left reduction upgrades fuel exhaustion
//! to a definite negative answer, everything else times out as `Unknown`.

use crate::reduction::is_normal_term;
use crate::scalars::{Scalar, ScalarError, Semiring};
use crate::syntax::{
    canonicalize_alg, open_alg, subst_alg, AlgTerm, CanonicalAlgTerm, FinSum,
    ResMonomial, ResTerm, Target, VarRef,
};
use crate::taylor::{factorial, TaylorEngine, TaylorError, TruncationBound};
use crate::scalars::inv_nat_big;
use std::collections::{HashMap, HashSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LambdaError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Taylor(#[from] TaylorError),
    #[error("target resource term is reducible")]
    NotNormal,
}

/// Outcome of a semi-decidable judgement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<T> {
    Definite(T),
    No,
    Unknown(u64),
}

impl<T> Verdict<T> {
    pub fn is_definite(&self) -> bool {
        matches!(self, Verdict::Definite(_))
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Verdict<U> {
        match self {
            Verdict::Definite(v) => Verdict::Definite(f(v)),
            Verdict::No => Verdict::No,
            Verdict::Unknown(k) => Verdict::Unknown(k),
        }
    }

    pub fn value(self) -> Option<T> {
        match self {
            Verdict::Definite(v) => Some(v),
            _ => None,
        }
    }
}

// ------------------------------------------------------------ substitution

/// Capture-avoiding substitution of `n` for the free variable `x`, with the
/// result canonicalized.
pub fn beta_subst(m: &AlgTerm, x: &str, n: &AlgTerm) -> CanonicalAlgTerm {
    canonicalize_alg(&subst_alg(m, Target::Free(x), n, 0))
}

// ----------------------------------------------------------- head analysis

/// The two shapes of a simple term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HeadShape {
    /// λ-prefix, head variable and its arguments: a head normal form.
    Normal { binders: usize, head: VarRef, args: Vec<AlgTerm> },
    /// λ-prefix, head redex function and argument, trailing arguments.
    Redex { binders: usize, fun: AlgTerm, arg: AlgTerm, trail: Vec<AlgTerm> },
}

fn strip_binders(s: &AlgTerm) -> (usize, &AlgTerm) {
    let mut n = 0;
    let mut cur = s;
    while let AlgTerm::Abs(b) = cur {
        n += 1;
        cur = b;
    }
    (n, cur)
}

fn spine_alg(s: &AlgTerm) -> (&AlgTerm, Vec<&AlgTerm>) {
    let mut args = Vec::new();
    let mut cur = s;
    while let AlgTerm::App(f, a) = cur {
        args.push(&**a);
        cur = f;
    }
    args.reverse();
    (cur, args)
}

/// Decompose a simple term into its unique head shape.
pub fn head_classify(s: &AlgTerm) -> HeadShape {
    debug_assert!(s.is_simple(), "head_classify needs a simple term");
    let (binders, body) = strip_binders(s);
    let (head, args) = spine_alg(body);
    match head {
        AlgTerm::Var(v) => HeadShape::Normal {
            binders,
            head: v.clone(),
            args: args.into_iter().cloned().collect(),
        },
        AlgTerm::Abs(_) => {
            let mut it = args.into_iter();
            let arg = it.next().expect("a simple non-hnf spine has an argument").clone();
            HeadShape::Redex {
                binders,
                fun: head.clone(),
                arg,
                trail: it.cloned().collect(),
            }
        }
        other => unreachable!("simple spine head is a variable or abstraction, got {other:?}"),
    }
}

fn wrap_binders(mut t: AlgTerm, binders: usize) -> AlgTerm {
    for _ in 0..binders {
        t = AlgTerm::abs(t);
    }
    t
}

/// Fire the head redex of a simple term (under its binder prefix), raw.
fn head_step_raw(s: &AlgTerm) -> AlgTerm {
    match head_classify(s) {
        HeadShape::Redex { binders, fun, arg, trail } => {
            let body = match fun {
                AlgTerm::Abs(b) => *b,
                _ => unreachable!(),
            };
            wrap_binders(AlgTerm::apps(open_alg(&body, &arg), trail), binders)
        }
        HeadShape::Normal { .. } => s.clone(),
    }
}

// ------------------------------------------------------- parallel reducts

/// Left reduct: fire the head redex on every spine; arguments of head
/// variables are left-reduced.
pub fn left_reduct_alg(m: &CanonicalAlgTerm) -> CanonicalAlgTerm {
    canonicalize_alg(&left_raw(m.term()))
}

fn left_raw(m: &AlgTerm) -> AlgTerm {
    match m {
        AlgTerm::Zero => AlgTerm::Zero,
        AlgTerm::Scale(a, inner) => AlgTerm::scale(a.clone(), left_raw(inner)),
        AlgTerm::Sum(p, q) => AlgTerm::sum(left_raw(p), left_raw(q)),
        simple => match head_classify(simple) {
            HeadShape::Normal { binders, head, args } => wrap_binders(
                AlgTerm::apps(AlgTerm::Var(head), args.iter().map(left_raw)),
                binders,
            ),
            HeadShape::Redex { .. } => head_step_raw(simple),
        },
    }
}

/// Full parallel reduct: fire every β-redex once.
pub fn full_reduct_alg(m: &CanonicalAlgTerm) -> CanonicalAlgTerm {
    canonicalize_alg(&full_raw(m.term()))
}

fn full_raw(m: &AlgTerm) -> AlgTerm {
    match m {
        AlgTerm::Var(v) => AlgTerm::Var(v.clone()),
        AlgTerm::Zero => AlgTerm::Zero,
        AlgTerm::Scale(a, inner) => AlgTerm::scale(a.clone(), full_raw(inner)),
        AlgTerm::Sum(p, q) => AlgTerm::sum(full_raw(p), full_raw(q)),
        AlgTerm::Abs(b) => AlgTerm::abs(full_raw(b)),
        AlgTerm::App(f, a) => {
            let fa = full_raw(a);
            if let AlgTerm::Abs(body) = &**f {
                open_alg(&full_raw(body), &fa)
            } else {
                AlgTerm::app(full_raw(f), fa)
            }
        }
    }
}

// ------------------------------------------------------------- engine

/// Shared fuel and solvability memo for the semi-decidable procedures.
struct Engine {
    ring: Semiring,
    budget: u64,
    spent: u64,
    // memo of definitive solvability answers; fuel-dependent unknowns are
    // never cached
    solvable: HashMap<AlgTerm, bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct OutOfFuel;

impl Engine {
    fn new(ring: Semiring, budget: u64) -> Engine {
        Engine { ring, budget, spent: 0, solvable: HashMap::new() }
    }

    fn tick(&mut self) -> Result<(), OutOfFuel> {
        if self.spent >= self.budget {
            return Err(OutOfFuel);
        }
        self.spent += 1;
        Ok(())
    }

    /// Weak solvability: search head reduction from every summand until a
    /// head normal form appears; a search space exhausted by cycles is a
    /// definite no.
    fn weak_solvable(&mut self, m: &AlgTerm) -> Verdict<()> {
        let canon = canonicalize_alg(m);
        if let Some(&known) = self.solvable.get(canon.term()) {
            return if known { Verdict::Definite(()) } else { Verdict::No };
        }
        let mut queue: Vec<AlgTerm> = canon
            .summands(self.ring)
            .into_iter()
            .map(|(_, s)| s.clone())
            .collect();
        let mut visited: HashSet<AlgTerm> = queue.iter().cloned().collect();
        while let Some(s) = queue.pop() {
            match head_classify(&s) {
                HeadShape::Normal { .. } => {
                    self.solvable.insert(canon.term().clone(), true);
                    return Verdict::Definite(());
                }
                HeadShape::Redex { .. } => {
                    if self.tick().is_err() {
                        return Verdict::Unknown(self.spent);
                    }
                    let next = canonicalize_alg(&head_step_raw(&s));
                    for (_, t) in next.summands(self.ring) {
                        if visited.insert(t.clone()) {
                            queue.push(t.clone());
                        }
                    }
                }
            }
        }
        // every branch cycled back or vanished into 0
        self.solvable.insert(canon.term().clone(), false);
        Verdict::No
    }

    /// Determinate form at level `d`: every summand is unsolvable or a head
    /// normal form whose arguments are determinate at `d - 1`.
    fn determinate(&mut self, m: &AlgTerm, d: u64) -> Verdict<()> {
        if d == 0 {
            return Verdict::Definite(());
        }
        match m {
            AlgTerm::Zero => Verdict::Definite(()),
            AlgTerm::Scale(_, inner) => self.determinate(inner, d),
            AlgTerm::Sum(p, q) => {
                match (self.determinate(p, d), self.determinate(q, d)) {
                    (Verdict::Definite(()), Verdict::Definite(())) => Verdict::Definite(()),
                    (Verdict::No, _) | (_, Verdict::No) => Verdict::No,
                    _ => Verdict::Unknown(self.spent),
                }
            }
            AlgTerm::Abs(b) => self.determinate(b, d),
            simple => match head_classify(simple) {
                HeadShape::Normal { args, .. } => {
                    let mut unknown = false;
                    for arg in &args {
                        match self.determinate(arg, d - 1) {
                            Verdict::Definite(()) => {}
                            Verdict::No => return Verdict::No,
                            Verdict::Unknown(_) => unknown = true,
                        }
                    }
                    if unknown {
                        Verdict::Unknown(self.spent)
                    } else {
                        Verdict::Definite(())
                    }
                }
                HeadShape::Redex { .. } => match self.weak_solvable(simple) {
                    Verdict::No => Verdict::Definite(()),
                    Verdict::Definite(()) => Verdict::No,
                    Verdict::Unknown(k) => Verdict::Unknown(k),
                },
            },
        }
    }

    /// Search along left reduction for a determinate form; a negative
    /// subcheck is only upgraded to a definite no on a detected cycle.
    fn determinable(&mut self, m: &AlgTerm, d: u64) -> Verdict<u64> {
        let mut cur = canonicalize_alg(m);
        let mut seen: HashSet<AlgTerm> = HashSet::new();
        for k in 0u64.. {
            let det = self.determinate(cur.term(), d);
            if let Verdict::Definite(()) = det {
                return Verdict::Definite(k);
            }
            if !seen.insert(cur.term().clone()) {
                return match det {
                    Verdict::No => Verdict::No,
                    _ => Verdict::Unknown(self.spent),
                };
            }
            if self.tick().is_err() {
                return Verdict::Unknown(self.spent);
            }
            cur = left_reduct_alg(&cur);
        }
        unreachable!()
    }

    /// Normal approximant at depth `d`: zero on unsolvable parts, head
    /// normal forms kept with arguments approximated one level lower.
    fn approximant(&mut self, m: &AlgTerm, d: u64) -> Result<AlgTerm, Stop> {
        if d == 0 {
            return Ok(AlgTerm::Zero);
        }
        match self.weak_solvable(m) {
            Verdict::No => return Ok(AlgTerm::Zero),
            Verdict::Unknown(k) => return Err(Stop::Unknown(k)),
            Verdict::Definite(()) => {}
        }
        match m {
            AlgTerm::Zero => unreachable!("0 is unsolvable"),
            AlgTerm::Scale(a, inner) => {
                Ok(AlgTerm::scale(a.clone(), self.approximant(inner, d)?))
            }
            AlgTerm::Sum(p, q) => Ok(AlgTerm::sum(
                self.approximant(p, d)?,
                self.approximant(q, d)?,
            )),
            AlgTerm::Abs(b) => Ok(AlgTerm::abs(self.approximant(b, d)?)),
            simple => match head_classify(simple) {
                HeadShape::Normal { binders, head, args } => {
                    let mut approxed = Vec::with_capacity(args.len());
                    for arg in &args {
                        let a = self.approximant(arg, d - 1)?;
                        approxed.push(canonicalize_alg(&a).into_term());
                    }
                    Ok(wrap_binders(
                        AlgTerm::apps(AlgTerm::Var(head), approxed),
                        binders,
                    ))
                }
                HeadShape::Redex { .. } => {
                    if self.tick().is_err() {
                        return Err(Stop::Unknown(self.spent));
                    }
                    let next = canonicalize_alg(&head_step_raw(simple));
                    self.approximant(next.term(), d)
                }
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Stop {
    Unknown(u64),
}

// ----------------------------------------------------------- public front

/// Iterate the left reduct up to `fuel` steps; a β-normal fixed point is a
/// definite answer and a cycle of canonical terms is definite divergence.
pub fn normalize_alg(m: &AlgTerm, fuel: u64) -> Verdict<CanonicalAlgTerm> {
    let mut cur = canonicalize_alg(m);
    let mut seen: HashSet<CanonicalAlgTerm> = HashSet::new();
    for _ in 0..=fuel {
        if cur.is_beta_normal() {
            return Verdict::Definite(cur);
        }
        if !seen.insert(cur.clone()) {
            return Verdict::No;
        }
        cur = left_reduct_alg(&cur);
    }
    Verdict::Unknown(fuel)
}

pub fn weak_solvable(ring: Semiring, m: &AlgTerm, fuel: u64) -> Verdict<()> {
    Engine::new(ring, fuel).weak_solvable(m)
}

pub fn d_determinate(ring: Semiring, m: &AlgTerm, d: u64, fuel: u64) -> Verdict<()> {
    let mut eng = Engine::new(ring, fuel);
    let canon = canonicalize_alg(m);
    eng.determinate(canon.term(), d)
}

pub fn d_determinable(ring: Semiring, m: &AlgTerm, d: u64, fuel: u64) -> Verdict<u64> {
    Engine::new(ring, fuel).determinable(m, d)
}

pub fn approximant(ring: Semiring, m: &AlgTerm, d: u64, fuel: u64) -> Verdict<CanonicalAlgTerm> {
    let mut eng = Engine::new(ring, fuel);
    let canon = canonicalize_alg(m);
    match eng.approximant(canon.term(), d) {
        Ok(a) => Verdict::Definite(canonicalize_alg(&a)),
        Err(Stop::Unknown(k)) => Verdict::Unknown(k),
    }
}

// ----------------------------------- normal form of the Taylor expansion

/// Coefficient of the normal resource term `t` in the normal form of the
/// Taylor expansion of `m`.
///
/// The primary route runs the determinable-term search at depth
/// `mono_depth(t) + 1` and reads the coefficient off the approximant. When
/// that search is inconclusive, a structural route decomposes left iterates
/// summand-wise: head-normal summands contribute through their arguments,
/// and summands whose λ-prefix is already deeper than the target's can
/// never contribute (reduction never shrinks a leading binder prefix).
pub fn nf_taylor_coeff(
    ring: Semiring,
    m: &AlgTerm,
    t: &ResTerm,
    fuel: u64,
) -> Result<Verdict<Scalar>, LambdaError> {
    if !ring.has_fractions() {
        return Err(ScalarError::NoFractions(ring).into());
    }
    if !is_normal_term(t) {
        return Err(LambdaError::NotNormal);
    }
    let mut taylor = TaylorEngine::new(ring);
    nfc(ring, m, t, fuel, &mut taylor)
}

fn nfc(
    ring: Semiring,
    m: &AlgTerm,
    t: &ResTerm,
    fuel: u64,
    taylor: &mut TaylorEngine,
) -> Result<Verdict<Scalar>, LambdaError> {
    let d = crate::syntax::term_mono_depth(t) + 1;
    let mut eng = Engine::new(ring, fuel);
    if let Verdict::Definite(k) = eng.determinable(m, d) {
        let mut cur = canonicalize_alg(m);
        for _ in 0..k {
            cur = left_reduct_alg(&cur);
        }
        if let Ok(a) = Engine::new(ring, fuel).approximant(cur.term(), d) {
            let c = taylor.coeff(&canonicalize_alg(&a).into_term(), t)?;
            return Ok(Verdict::Definite(c));
        }
    }
    nfc_structural(ring, m, t, fuel, taylor)
}

enum Resolution {
    Done(Scalar),
    NeedMoreSteps,
    Unknown(u64),
}

fn nfc_structural(
    ring: Semiring,
    m: &AlgTerm,
    t: &ResTerm,
    fuel: u64,
    taylor: &mut TaylorEngine,
) -> Result<Verdict<Scalar>, LambdaError> {
    let mut cur = canonicalize_alg(m);
    let mut seen: HashSet<AlgTerm> = HashSet::new();
    for k in 0..=fuel {
        match resolve_coeff(ring, &cur, t, fuel, taylor)? {
            Resolution::Done(c) => return Ok(Verdict::Definite(c)),
            Resolution::Unknown(spent) => return Ok(Verdict::Unknown(spent)),
            Resolution::NeedMoreSteps => {}
        }
        if !seen.insert(cur.term().clone()) {
            return Ok(Verdict::Unknown(k));
        }
        cur = left_reduct_alg(&cur);
    }
    Ok(Verdict::Unknown(fuel))
}

fn resolve_coeff(
    ring: Semiring,
    cur: &CanonicalAlgTerm,
    t: &ResTerm,
    fuel: u64,
    taylor: &mut TaylorEngine,
) -> Result<Resolution, LambdaError> {
    let (t_binders, t_body) = strip_res_binders(t);
    let (t_head, t_bags) = spine_res(t_body);
    let mut total = ring.zero();
    let mut eng = Engine::new(ring, fuel);
    for (weight, s) in cur.summands(ring) {
        let (s_binders, s_body) = strip_binders(s);
        let (head, args) = spine_alg(s_body);
        match head {
            AlgTerm::Var(v) => {
                // a head normal form: its expansion and all reducts keep
                // exactly this prefix, head and argument count
                if s_binders != t_binders || args.len() != t_bags.len() {
                    continue;
                }
                if !matches!(t_head, ResTerm::Var(w) if w == v) {
                    continue;
                }
                let mut contrib = weight.clone();
                'outer: for (arg, bag) in args.iter().zip(&t_bags) {
                    for (u, mult) in bag.multiplicities() {
                        match nfc(ring, arg, u, fuel, taylor)? {
                            Verdict::Definite(cu) => {
                                for _ in 0..mult {
                                    contrib = ring.mul(&contrib, &cu);
                                }
                                contrib = ring.mul(
                                    &contrib,
                                    &inv_nat_big(ring, &factorial(mult as u64))
                                        .map_err(LambdaError::from)?,
                                );
                            }
                            Verdict::Unknown(spent) => {
                                return Ok(Resolution::Unknown(spent));
                            }
                            Verdict::No => unreachable!("coefficients are never refuted"),
                        }
                        if contrib.is_zero() {
                            break 'outer;
                        }
                    }
                }
                total = ring.add(&total, &contrib);
            }
            AlgTerm::Abs(_) => {
                if s_binders > t_binders {
                    // reducts never lose leading binders: orthogonal to t
                    continue;
                }
                match eng.weak_solvable(s) {
                    Verdict::No => continue,
                    _ => return Ok(Resolution::NeedMoreSteps),
                }
            }
            _ => unreachable!("canonical simple spine head"),
        }
    }
    Ok(Resolution::Done(total))
}

fn strip_res_binders(t: &ResTerm) -> (usize, &ResTerm) {
    let mut n = 0;
    let mut cur = t;
    while let ResTerm::Abs(b) = cur {
        n += 1;
        cur = b;
    }
    (n, cur)
}

fn spine_res(t: &ResTerm) -> (&ResTerm, Vec<&ResMonomial>) {
    let mut bags = Vec::new();
    let mut cur = t;
    while let ResTerm::App(f, bag) = cur {
        bags.push(bag);
        cur = f;
    }
    bags.reverse();
    (cur, bags)
}

/// Truncated normal form of the Taylor expansion: the expansion of the
/// approximant deep enough to cover every normal term in the window.
pub fn nf_taylor_truncated(
    ring: Semiring,
    m: &AlgTerm,
    bound: &TruncationBound,
    fuel: u64,
) -> Result<Verdict<FinSum<ResTerm>>, LambdaError> {
    if !ring.has_fractions() {
        return Err(ScalarError::NoFractions(ring).into());
    }
    // a normal term of size <= B has monomial depth <= B/2
    let depth_cap = bound.max_mono_depth.unwrap_or(bound.max_size / 2);
    let d = depth_cap + 1;
    match approximant(ring, m, d, fuel) {
        Verdict::Definite(a) => {
            let sum = crate::taylor::taylor_truncated(ring, a.term(), bound)?;
            Ok(Verdict::Definite(sum))
        }
        Verdict::No => unreachable!("approximants are never refuted"),
        Verdict::Unknown(k) => Ok(Verdict::Unknown(k)),
    }
}

// ----------------------------------------------------------------- helpers

/// λ-prefix-preserving iterate of the left reduct, exposed for strategy
/// comparisons and reporting.
pub fn left_iterates(m: &AlgTerm, steps: u64) -> CanonicalAlgTerm {
    let mut cur = canonicalize_alg(m);
    for _ in 0..steps {
        cur = left_reduct_alg(&cur);
    }
    cur
}

pub fn full_iterates(m: &AlgTerm, steps: u64) -> CanonicalAlgTerm {
    let mut cur = canonicalize_alg(m);
    for _ in 0..steps {
        cur = full_reduct_alg(&cur);
    }
    cur
}
