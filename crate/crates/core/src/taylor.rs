//! Taylor support, exact Taylor coefficients, truncated Taylor expansion,
//! promotion coefficients, the uniform multiplicity of resource terms, and
//! the linear skeleton of pure terms.

use crate::scalars::{inv_nat_big, Scalar, ScalarError, Semiring};
use crate::syntax::{
    term_mono_depth, term_size, AlgTerm, FinSum, ResMonomial, ResTerm,
};
use num_bigint::BigUint;
use num_traits::One;
use std::collections::{BTreeSet, HashMap};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TaylorError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("term uses 0, scalar action or sums")]
    NotPure,
}

/// A finite window into the expansion: a bound on resource-term size and,
/// optionally, on monomial depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncationBound {
    pub max_size: u64,
    pub max_mono_depth: Option<u64>,
}

impl TruncationBound {
    pub fn size(max_size: u64) -> TruncationBound {
        assert!(max_size >= 1);
        TruncationBound { max_size, max_mono_depth: None }
    }

    pub fn size_and_depth(max_size: u64, max_mono_depth: u64) -> TruncationBound {
        assert!(max_size >= 1);
        TruncationBound { max_size, max_mono_depth: Some(max_mono_depth) }
    }

    pub fn admits(&self, t: &ResTerm) -> bool {
        term_size(t) <= self.max_size
            && self
                .max_mono_depth
                .map(|d| term_mono_depth(t) <= d)
                .unwrap_or(true)
    }
}

pub fn factorial(n: u64) -> BigUint {
    let mut out = BigUint::one();
    for i in 2..=n {
        out *= i;
    }
    out
}

/// Coefficient of the monomial `bag` in the promotion of the term vector
/// `tau`: the product over distinct elements of `tau(u)^m / m!`.
pub fn prom_coeff(tau: &FinSum<ResTerm>, bag: &ResMonomial) -> Result<Scalar, TaylorError> {
    let ring = tau.ring();
    if !ring.has_fractions() {
        return Err(ScalarError::NoFractions(ring).into());
    }
    let mut out = ring.one();
    for (u, m) in bag.multiplicities() {
        let c = tau.coeff(u);
        for _ in 0..m {
            out = ring.mul(&out, &c);
        }
        out = ring.mul(&out, &inv_nat_big(ring, &factorial(m as u64)).map_err(TaylorError::from)?);
    }
    Ok(out)
}

/// Exact Taylor coefficients of an algebraic term, memoized across queries.
pub struct TaylorEngine {
    ring: Semiring,
    memo: HashMap<(AlgTerm, ResTerm), Scalar>,
}

impl TaylorEngine {
    pub fn new(ring: Semiring) -> TaylorEngine {
        TaylorEngine { ring, memo: HashMap::new() }
    }

    pub fn ring(&self) -> Semiring {
        self.ring
    }

    /// The coefficient of the resource term `s` in the expansion of `m`.
    pub fn coeff(&mut self, m: &AlgTerm, s: &ResTerm) -> Result<Scalar, TaylorError> {
        if !self.ring.has_fractions() {
            return Err(ScalarError::NoFractions(self.ring).into());
        }
        self.coeff_inner(m, s)
    }

    fn coeff_inner(&mut self, m: &AlgTerm, s: &ResTerm) -> Result<Scalar, TaylorError> {
        let key = (m.clone(), s.clone());
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        let ring = self.ring;
        let out = match (m, s) {
            (AlgTerm::Var(v), ResTerm::Var(w)) => {
                if v == w {
                    ring.one()
                } else {
                    ring.zero()
                }
            }
            (AlgTerm::Abs(body), ResTerm::Abs(sb)) => self.coeff_inner(body, sb)?,
            (AlgTerm::App(f, arg), ResTerm::App(sf, bag)) => {
                let cf = self.coeff_inner(f, sf)?;
                if cf.is_zero() {
                    ring.zero()
                } else {
                    let mut out = cf;
                    for (u, mult) in bag.multiplicities() {
                        let cu = self.coeff_inner(arg, u)?;
                        for _ in 0..mult {
                            out = ring.mul(&out, &cu);
                        }
                        out = ring.mul(&out, &inv_nat_big(ring, &factorial(mult as u64))?);
                        if out.is_zero() {
                            break;
                        }
                    }
                    out
                }
            }
            (AlgTerm::Zero, _) => ring.zero(),
            (AlgTerm::Scale(a, inner), _) => ring.mul(a, &self.coeff_inner(inner, s)?),
            (AlgTerm::Sum(p, q), _) => {
                ring.add(&self.coeff_inner(p, s)?, &self.coeff_inner(q, s)?)
            }
            _ => ring.zero(),
        };
        self.memo.insert(key, out.clone());
        Ok(out)
    }
}

pub fn taylor_coeff(ring: Semiring, m: &AlgTerm, s: &ResTerm) -> Result<Scalar, TaylorError> {
    TaylorEngine::new(ring).coeff(m, s)
}

// ----------------------------------------------------------------- support

/// The Taylor support restricted to the window: computed structurally,
/// coefficients ignored (`0 * M` contributes like `M`).
pub fn taylor_support(m: &AlgTerm, bound: &TruncationBound) -> BTreeSet<ResTerm> {
    sup(m, bound.max_size, bound.max_mono_depth)
}

fn sup(m: &AlgTerm, max_size: u64, max_depth: Option<u64>) -> BTreeSet<ResTerm> {
    if max_size == 0 {
        return BTreeSet::new();
    }
    match m {
        AlgTerm::Var(v) => BTreeSet::from([ResTerm::Var(v.clone())]),
        AlgTerm::Zero => BTreeSet::new(),
        AlgTerm::Scale(_, inner) => sup(inner, max_size, max_depth),
        AlgTerm::Sum(p, q) => {
            let mut out = sup(p, max_size, max_depth);
            out.extend(sup(q, max_size, max_depth));
            out
        }
        AlgTerm::Abs(body) => sup(body, max_size - 1, max_depth)
            .into_iter()
            .map(ResTerm::abs)
            .collect(),
        AlgTerm::App(f, arg) => {
            let mut out = BTreeSet::new();
            if max_depth == Some(0) {
                // any application carries a bag, whose depth is at least 1
                return out;
            }
            let elem_depth = max_depth.map(|d| d - 1);
            let funs = sup(f, max_size - 1, max_depth);
            for s0 in funs {
                let budget = max_size - 1 - term_size(&s0);
                let candidates: Vec<ResTerm> = sup(arg, budget, elem_depth)
                    .into_iter()
                    .collect();
                for bag in bags_within(&candidates, budget) {
                    out.insert(ResTerm::app(s0.clone(), bag));
                }
            }
            out
        }
    }
}

/// All multisets over `candidates` with total size within `budget`
/// (elements may repeat; candidates are indexed nondecreasingly).
fn bags_within(candidates: &[ResTerm], budget: u64) -> Vec<ResMonomial> {
    let sizes: Vec<u64> = candidates.iter().map(term_size).collect();
    let mut out = Vec::new();
    let mut cur: Vec<ResTerm> = Vec::new();
    fn go(
        candidates: &[ResTerm],
        sizes: &[u64],
        from: usize,
        budget: u64,
        cur: &mut Vec<ResTerm>,
        out: &mut Vec<ResMonomial>,
    ) {
        out.push(ResMonomial::new(cur.clone()));
        for i in from..candidates.len() {
            if sizes[i] <= budget {
                cur.push(candidates[i].clone());
                go(candidates, sizes, i, budget - sizes[i], cur, out);
                cur.pop();
            }
        }
    }
    go(candidates, &sizes, 0, budget, &mut cur, &mut out);
    out
}

/// Truncated expansion: support elements with their exact coefficients,
/// zero coefficients dropped.
pub fn taylor_truncated(
    ring: Semiring,
    m: &AlgTerm,
    bound: &TruncationBound,
) -> Result<FinSum<ResTerm>, TaylorError> {
    let mut engine = TaylorEngine::new(ring);
    let mut out = FinSum::zero(ring);
    for s in taylor_support(m, bound) {
        let c = engine.coeff(m, &s)?;
        out.add_entry(s, c);
    }
    Ok(out)
}

// ------------------------------------------------------------ multiplicity

/// The uniform multiplicity of a resource term: 1 on variables, product
/// through abstractions and applications, and on a monomial the product of
/// element multiplicities times the factorials of their repetition counts.
pub fn er_multiplicity(s: &ResTerm) -> BigUint {
    match s {
        ResTerm::Var(_) => BigUint::one(),
        ResTerm::Abs(b) => er_multiplicity(b),
        ResTerm::App(f, bag) => er_multiplicity(f) * er_multiplicity_mono(bag),
    }
}

pub fn er_multiplicity_mono(bag: &ResMonomial) -> BigUint {
    let mut out = BigUint::one();
    for (u, k) in bag.multiplicities() {
        out *= factorial(k as u64);
        out *= er_multiplicity(u).pow(k as u32);
    }
    out
}

/// The coefficient `1/m(s)` as a scalar of `ring`.
pub fn uniform_coeff(ring: Semiring, s: &ResTerm) -> Result<Scalar, TaylorError> {
    Ok(inv_nat_big(ring, &er_multiplicity(s))?)
}

// -------------------------------------------------------------- skeleton

/// The linear skeleton of a pure term: every application argument becomes a
/// singleton bag.
pub fn linear_skeleton(m: &AlgTerm) -> Result<ResTerm, TaylorError> {
    match m {
        AlgTerm::Var(v) => Ok(ResTerm::Var(v.clone())),
        AlgTerm::Abs(b) => Ok(ResTerm::abs(linear_skeleton(b)?)),
        AlgTerm::App(f, a) => Ok(ResTerm::app(
            linear_skeleton(f)?,
            ResMonomial::new(vec![linear_skeleton(a)?]),
        )),
        _ => Err(TaylorError::NotPure),
    }
}

/// An upper bound on the height of every expansion support element,
/// computed structurally on the algebraic term.
pub fn expansion_height(m: &AlgTerm) -> u64 {
    match m {
        AlgTerm::Var(_) => 1,
        AlgTerm::Abs(b) => 1 + expansion_height(b),
        AlgTerm::App(f, a) => expansion_height(f).max(1 + expansion_height(a)),
        AlgTerm::Zero => 0,
        AlgTerm::Scale(_, b) => expansion_height(b),
        AlgTerm::Sum(p, q) => expansion_height(p).max(expansion_height(q)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Semiring;
    use crate::syntax::{parse_algebraic, VarRef};

    const Q: Semiring = Semiring::Rat;

    fn v(n: &str) -> ResTerm {
        ResTerm::var(n)
    }

    fn bag(ts: Vec<ResTerm>) -> ResMonomial {
        ResMonomial::new(ts)
    }

    fn alg(src: &str) -> AlgTerm {
        parse_algebraic(src, Q).unwrap()
    }

    #[test]
    fn promotion_coefficients() {
        let mut tau = FinSum::zero(Q);
        tau.add_entry(v("u"), Scalar::from_int(1));
        // the empty bag always has coefficient 1
        assert_eq!(prom_coeff(&tau, &ResMonomial::empty()).unwrap(), Scalar::from_int(1));
        // [u, u] against 1*u gives 1/2!
        assert_eq!(
            prom_coeff(&tau, &bag(vec![v("u"), v("u")])).unwrap(),
            Scalar::ratio(1, 2)
        );
        // a*u + b*v against [u, v] gives a*b
        let mut tau = FinSum::zero(Q);
        tau.add_entry(v("u"), Scalar::from_int(3));
        tau.add_entry(v("w"), Scalar::ratio(1, 5));
        assert_eq!(
            prom_coeff(&tau, &bag(vec![v("u"), v("w")])).unwrap(),
            Scalar::ratio(3, 5)
        );

        let nat_tau: FinSum<ResTerm> = FinSum::zero(Semiring::Nat);
        assert!(prom_coeff(&nat_tau, &ResMonomial::empty()).is_err());
    }

    #[test]
    fn coefficients_on_applications() {
        // T(y ((\x.x) z)) at y[(\x.x)[z]] is 1
        let m = alg("y ((\\x. x) z)");
        let s = ResTerm::app(
            v("y"),
            bag(vec![ResTerm::app(
                ResTerm::abs(ResTerm::Var(VarRef::Bound(0))),
                bag(vec![v("z")]),
            )]),
        );
        assert_eq!(taylor_coeff(Q, &m, &s).unwrap(), Scalar::from_int(1));

        // T(y z) at y[z, z] is 1/2
        let m = alg("y z");
        let s = ResTerm::app(v("y"), bag(vec![v("z"), v("z")]));
        assert_eq!(taylor_coeff(Q, &m, &s).unwrap(), Scalar::ratio(1, 2));

        // 0 * M has only zero coefficients
        let m = alg("0 * x");
        assert_eq!(taylor_coeff(Q, &m, &v("x")).unwrap(), Scalar::from_int(0));
    }

    #[test]
    fn support_enumeration() {
        let b = TruncationBound::size(10);
        assert_eq!(taylor_support(&alg("x"), &b), BTreeSet::from([v("x")]));

        // x y within size 3: x[] and x[y]
        let b3 = TruncationBound::size(3);
        let s = taylor_support(&alg("x y"), &b3);
        assert_eq!(
            s,
            BTreeSet::from([
                ResTerm::app(v("x"), ResMonomial::empty()),
                ResTerm::app(v("x"), bag(vec![v("y")])),
            ])
        );

        // support ignores scalar actions entirely
        let s0 = taylor_support(&alg("0 * x y"), &b3);
        assert_eq!(s0, s);
    }

    #[test]
    fn truncation_collects_coefficients() {
        // (\x.x) y within size 5
        let m = alg("(\\x. x) y");
        let t = taylor_truncated(Q, &m, &TruncationBound::size(5)).unwrap();
        let ident = ResTerm::abs(ResTerm::Var(VarRef::Bound(0)));
        assert_eq!(
            t.coeff(&ResTerm::app(ident.clone(), bag(vec![v("y")]))),
            Scalar::from_int(1)
        );
        assert_eq!(
            t.coeff(&ResTerm::app(ident.clone(), ResMonomial::empty())),
            Scalar::from_int(1)
        );
        assert_eq!(
            t.coeff(&ResTerm::app(ident, bag(vec![v("y"), v("y")]))),
            Scalar::ratio(1, 2)
        );

        assert!(taylor_truncated(Q, &AlgTerm::Zero, &TruncationBound::size(4))
            .unwrap()
            .is_zero());

        let t = taylor_truncated(Q, &alg("1/2 * x"), &TruncationBound::size(4)).unwrap();
        assert_eq!(t.coeff(&v("x")), Scalar::ratio(1, 2));
        assert_eq!(t.len(), 1);
    }

    #[test]
    fn multiplicities() {
        assert_eq!(er_multiplicity(&v("x")), BigUint::one());
        // x[y, y]: 2! from the repeated element
        let s = ResTerm::app(v("x"), bag(vec![v("y"), v("y")]));
        assert_eq!(er_multiplicity(&s), BigUint::from(2u32));
        // x[y[], y[]]: repetition of compound elements counts too
        let ye = ResTerm::app(v("y"), ResMonomial::empty());
        let s = ResTerm::app(v("x"), bag(vec![ye.clone(), ye]));
        assert_eq!(er_multiplicity(&s), BigUint::from(2u32));
    }

    #[test]
    fn promotion_commutes_with_substitution_on_small_bags() {
        use crate::calculus::{subst_sum_mono, subst_sum_term_sum};

        // sigma mentions the substituted variable, tau replaces it by a sum
        let mut sigma = FinSum::zero(Q);
        sigma.add_entry(v("x"), Scalar::from_int(1));
        sigma.add_entry(v("y"), Scalar::ratio(1, 2));
        let mut tau = FinSum::zero(Q);
        tau.add_entry(v("z"), Scalar::from_int(1));
        tau.add_entry(ResTerm::app(v("w"), ResMonomial::empty()), Scalar::ratio(1, 3));

        let substituted = subst_sum_term_sum(Q, &sigma, "x", &tau);

        // enumerate bags of each cardinality over the relevant supports
        let sub_support: Vec<ResTerm> = substituted.keys().cloned().collect();
        let sigma_support: Vec<ResTerm> = sigma.keys().cloned().collect();
        for n in 0..=3usize {
            for bag in bags_of_card(&sub_support, n) {
                let lhs = prom_coeff(&substituted, &bag).unwrap();
                // substitute inside the promotion of sigma instead
                let mut rhs = Q.zero();
                for pre in bags_of_card(&sigma_support, n) {
                    let c = prom_coeff(&sigma, &pre).unwrap();
                    if c.is_zero() {
                        continue;
                    }
                    let image = subst_sum_mono(Q, &pre, "x", &tau);
                    rhs = Q.add(&rhs, &Q.mul(&c, &image.coeff(&bag)));
                }
                assert_eq!(lhs, rhs, "bag {bag:?}");
            }
        }
    }

    fn bags_of_card(candidates: &[ResTerm], n: usize) -> Vec<ResMonomial> {
        if n == 0 {
            return vec![ResMonomial::empty()];
        }
        let mut out = Vec::new();
        for (i, c) in candidates.iter().enumerate() {
            for rest in bags_of_card(&candidates[i..], n - 1) {
                out.push(rest.inserted(c.clone()));
            }
        }
        out
    }

    #[test]
    fn skeletons() {
        assert_eq!(linear_skeleton(&alg("x")).unwrap(), v("x"));
        let s = linear_skeleton(&alg("(\\x. x) y")).unwrap();
        assert_eq!(
            s,
            ResTerm::app(ResTerm::abs(ResTerm::Var(VarRef::Bound(0))), bag(vec![v("y")]))
        );
        assert_eq!(linear_skeleton(&alg("x + y")), Err(TaylorError::NotPure));

        // the skeleton lands in the support window of its own size
        let m = alg("(\\x. x x) (\\y. y)");
        let sk = linear_skeleton(&m).unwrap();
        let b = TruncationBound::size(term_size(&sk));
        assert!(taylor_support(&m, &b).contains(&sk));
    }
}
