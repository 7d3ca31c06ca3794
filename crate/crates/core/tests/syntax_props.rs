mod common;

use common::{arb_alg_term, arb_res_term};
use proptest::prelude::*;
use rlw_core::scalars::{Scalar, Semiring};
use rlw_core::syntax::{
    canonicalize_alg, compare_terms, free_vars, metrics, occ, parse_algebraic, parse_resource,
    render_alg, render_res_term, AlgTerm, ResExpr, ResInput, ResTerm,
};

proptest! {
    #[test]
    fn resource_rendering_round_trips(t in arb_res_term(8, 0)) {
        let rendered = render_res_term(&t);
        let parsed = parse_resource(&rendered, Semiring::Rat).unwrap();
        prop_assert_eq!(parsed, ResInput::Expr(ResExpr::Term(t)));
    }

    #[test]
    fn algebraic_rendering_round_trips(t in arb_alg_term(8, 0)) {
        let rendered = render_alg(&t);
        let parsed = parse_algebraic(&rendered, Semiring::Rat).unwrap();
        prop_assert_eq!(parsed, t);
    }

    #[test]
    fn term_order_is_total(a in arb_res_term(6, 0), b in arb_res_term(6, 0), c in arb_res_term(6, 0)) {
        use std::cmp::Ordering;
        let ea = ResExpr::Term(a);
        let eb = ResExpr::Term(b);
        let ec = ResExpr::Term(c);
        // antisymmetry
        if compare_terms(&ea, &eb) == Ordering::Equal {
            prop_assert_eq!(&ea, &eb);
        }
        prop_assert_eq!(compare_terms(&ea, &eb), compare_terms(&eb, &ea).reverse());
        // transitivity
        if compare_terms(&ea, &eb) != Ordering::Greater
            && compare_terms(&eb, &ec) != Ordering::Greater
        {
            prop_assert_ne!(compare_terms(&ea, &ec), Ordering::Greater);
        }
    }

    #[test]
    fn metric_laws(t in arb_res_term(10, 0)) {
        let e = ResExpr::Term(t);
        let m = metrics(&e);
        prop_assert!(m.height <= m.size);
        prop_assert!(m.size >= 1 && m.height >= 1);
        for x in ["a", "b", "c"] {
            let info = occ(x, &e);
            prop_assert!(info.count <= m.size);
            prop_assert!(info.max_depth() <= m.height);
            prop_assert_eq!(info.count == 0, info.depths.is_empty());
            prop_assert_eq!(info.count > 0, free_vars(&e).contains(x));
        }
    }

    #[test]
    fn parsers_never_panic(src in "[ -~]{0,40}") {
        let _ = parse_algebraic(&src, Semiring::Rat);
        let _ = parse_resource(&src, Semiring::Rat);
        let _ = parse_algebraic(&src, Semiring::Bool);
    }

    #[test]
    fn canonicalization_is_idempotent_and_canonical(t in arb_alg_term(10, 0)) {
        let c = canonicalize_alg(&t);
        prop_assert!(c.term().is_canonical());
        prop_assert_eq!(&canonicalize_alg(c.term()), &c);
    }

    #[test]
    fn canonicalization_is_confluent(
        t in arb_alg_term(12, 0),
        order in proptest::collection::vec(any::<proptest::sample::Index>(), 0..64),
    ) {
        // fire the six oriented equations one position at a time, in an
        // arbitrary order, and land on the same normal form
        let mut cur = t.clone();
        let mut picks = order.iter();
        loop {
            let redexes = can_redexes(&cur);
            if redexes.is_empty() {
                break;
            }
            let which = match picks.next() {
                Some(i) => i.index(redexes.len()),
                None => 0,
            };
            cur = rewrite_at(&cur, &redexes[which], 0);
        }
        let expected = canonicalize_alg(&t);
        prop_assert_eq!(&cur, expected.term());
    }
}

/// Positions (as root paths) where one of the six oriented equations fires.
fn can_redexes(t: &AlgTerm) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    fn walk(t: &AlgTerm, path: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        match t {
            AlgTerm::Abs(b) => {
                if matches!(**b, AlgTerm::Zero | AlgTerm::Scale(..) | AlgTerm::Sum(..)) {
                    out.push(path.clone());
                }
                path.push(0);
                walk(b, path, out);
                path.pop();
            }
            AlgTerm::App(f, a) => {
                if matches!(**f, AlgTerm::Zero | AlgTerm::Scale(..) | AlgTerm::Sum(..)) {
                    out.push(path.clone());
                }
                path.push(0);
                walk(f, path, out);
                path.pop();
                path.push(1);
                walk(a, path, out);
                path.pop();
            }
            AlgTerm::Scale(_, b) => {
                path.push(0);
                walk(b, path, out);
                path.pop();
            }
            AlgTerm::Sum(p, q) => {
                path.push(0);
                walk(p, path, out);
                path.pop();
                path.push(1);
                walk(q, path, out);
                path.pop();
            }
            AlgTerm::Var(_) | AlgTerm::Zero => {}
        }
    }
    walk(t, &mut Vec::new(), &mut out);
    out
}

fn rewrite_at(t: &AlgTerm, path: &[u8], at: usize) -> AlgTerm {
    if at == path.len() {
        return match t {
            AlgTerm::Abs(b) => match &**b {
                AlgTerm::Zero => AlgTerm::Zero,
                AlgTerm::Scale(c, m) => AlgTerm::scale(c.clone(), AlgTerm::abs((**m).clone())),
                AlgTerm::Sum(p, q) => AlgTerm::sum(
                    AlgTerm::abs((**p).clone()),
                    AlgTerm::abs((**q).clone()),
                ),
                _ => unreachable!("not a redex"),
            },
            AlgTerm::App(f, a) => match &**f {
                AlgTerm::Zero => AlgTerm::Zero,
                AlgTerm::Scale(c, m) => {
                    AlgTerm::scale(c.clone(), AlgTerm::app((**m).clone(), (**a).clone()))
                }
                AlgTerm::Sum(p, q) => AlgTerm::sum(
                    AlgTerm::app((**p).clone(), (**a).clone()),
                    AlgTerm::app((**q).clone(), (**a).clone()),
                ),
                _ => unreachable!("not a redex"),
            },
            _ => unreachable!("not a redex"),
        };
    }
    let step = path[at];
    match t {
        AlgTerm::Abs(b) => AlgTerm::abs(rewrite_at(b, path, at + 1)),
        AlgTerm::App(f, a) => {
            if step == 0 {
                AlgTerm::app(rewrite_at(f, path, at + 1), (**a).clone())
            } else {
                AlgTerm::app((**f).clone(), rewrite_at(a, path, at + 1))
            }
        }
        AlgTerm::Scale(c, b) => AlgTerm::scale(c.clone(), rewrite_at(b, path, at + 1)),
        AlgTerm::Sum(p, q) => {
            if step == 0 {
                AlgTerm::sum(rewrite_at(p, path, at + 1), (**q).clone())
            } else {
                AlgTerm::sum((**p).clone(), rewrite_at(q, path, at + 1))
            }
        }
        AlgTerm::Var(_) | AlgTerm::Zero => unreachable!("path leads nowhere"),
    }
}

#[test]
fn canonical_examples() {
    let ring = Semiring::Rat;
    let m = parse_algebraic("\\x. (y + z)", ring).unwrap();
    assert_eq!(
        canonicalize_alg(&m).term(),
        &parse_algebraic("(\\x. y) + (\\x. z)", ring).unwrap()
    );
    let m = parse_algebraic("(2 * f) p", ring).unwrap();
    assert_eq!(
        canonicalize_alg(&m).term(),
        &AlgTerm::scale(
            Scalar::from_int(2),
            parse_algebraic("f p", ring).unwrap()
        )
    );
    let m = parse_algebraic("0 p", ring).unwrap();
    assert_eq!(canonicalize_alg(&m).term(), &AlgTerm::Zero);
}

#[test]
fn rejects_unbalanced_brackets() {
    assert!(parse_resource("\\x. x [y", Semiring::Rat).is_err());
    assert!(parse_algebraic("\\x.", Semiring::Rat).is_err());
}

#[test]
fn rendering_examples() {
    let mut s = rlw_core::syntax::FinSum::zero(Semiring::Rat);
    s.add_entry(ResTerm::var("y"), Scalar::ratio(1, 2));
    assert_eq!(rlw_core::syntax::render_term_sum(&s), "1/2 * y");
    let empty: rlw_core::syntax::FinSum<ResTerm> = rlw_core::syntax::FinSum::zero(Semiring::Rat);
    assert_eq!(rlw_core::syntax::render_term_sum(&empty), "0");
}
