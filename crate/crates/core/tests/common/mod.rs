#![allow(dead_code)]

//! Proptest strategies for locally closed resource and algebraic terms.

use proptest::prelude::*;
use rlw_core::scalars::Scalar;
use rlw_core::syntax::{AlgTerm, ResMonomial, ResTerm, VarRef};

pub fn arb_var(depth: u32) -> BoxedStrategy<ResTerm> {
    if depth == 0 {
        prop_oneof![Just("a"), Just("b"), Just("c")]
            .prop_map(|n| ResTerm::var(n))
            .boxed()
    } else {
        prop_oneof![
            2 => (0..depth).prop_map(|i| ResTerm::Var(VarRef::Bound(i))),
            1 => prop_oneof![Just("a"), Just("b"), Just("c")].prop_map(|n| ResTerm::var(n)),
        ]
        .boxed()
    }
}

/// Resource terms of size at most `size` with binders resolved in scope.
pub fn arb_res_term(size: u32, depth: u32) -> BoxedStrategy<ResTerm> {
    if size <= 1 {
        return arb_var(depth);
    }
    let abs = arb_res_term(size - 1, depth + 1).prop_map(ResTerm::abs);
    let app = (
        arb_res_term(size / 2, depth),
        proptest::collection::vec(arb_res_term((size / 2).max(1), depth), 0..=2),
    )
        .prop_map(|(f, elems)| ResTerm::app(f, ResMonomial::new(elems)));
    prop_oneof![
        1 => arb_var(depth),
        2 => abs,
        2 => app,
    ]
    .boxed()
}

fn arb_alg_var(depth: u32) -> BoxedStrategy<AlgTerm> {
    if depth == 0 {
        prop_oneof![Just("a"), Just("b"), Just("c")]
            .prop_map(|n| AlgTerm::var(n))
            .boxed()
    } else {
        prop_oneof![
            2 => (0..depth).prop_map(|i| AlgTerm::Var(VarRef::Bound(i))),
            1 => prop_oneof![Just("a"), Just("b"), Just("c")].prop_map(|n| AlgTerm::var(n)),
        ]
        .boxed()
    }
}

pub fn arb_scalar() -> BoxedStrategy<Scalar> {
    prop_oneof![
        Just(Scalar::from_int(0)),
        Just(Scalar::from_int(1)),
        Just(Scalar::from_int(2)),
        Just(Scalar::ratio(1, 2)),
        Just(Scalar::ratio(2, 3)),
    ]
    .boxed()
}

/// Raw algebraic terms of size at most `size`, exercising zero, scalar
/// actions and sums.
pub fn arb_alg_term(size: u32, depth: u32) -> BoxedStrategy<AlgTerm> {
    if size <= 1 {
        return prop_oneof![
            4 => arb_alg_var(depth),
            1 => Just(AlgTerm::Zero),
        ]
        .boxed();
    }
    let abs = arb_alg_term(size - 1, depth + 1).prop_map(AlgTerm::abs);
    let app = (
        arb_alg_term(size / 2, depth),
        arb_alg_term(size / 2, depth),
    )
        .prop_map(|(f, a)| AlgTerm::app(f, a));
    let scale = (arb_scalar(), arb_alg_term(size - 1, depth))
        .prop_map(|(a, m)| AlgTerm::scale(a, m));
    let sum = (
        arb_alg_term(size / 2, depth),
        arb_alg_term(size / 2, depth),
    )
        .prop_map(|(m, n)| AlgTerm::sum(m, n));
    prop_oneof![
        2 => arb_alg_var(depth),
        2 => abs,
        2 => app,
        1 => scale,
        1 => sum,
    ]
    .boxed()
}

/// Pure λ-terms of size at most `size`.
pub fn arb_pure_term(size: u32, depth: u32) -> BoxedStrategy<AlgTerm> {
    if size <= 1 {
        return arb_alg_var(depth);
    }
    let abs = arb_pure_term(size - 1, depth + 1).prop_map(AlgTerm::abs);
    let app = (
        arb_pure_term(size / 2, depth),
        arb_pure_term(size / 2, depth),
    )
        .prop_map(|(f, a)| AlgTerm::app(f, a));
    prop_oneof![
        1 => arb_alg_var(depth),
        2 => abs,
        2 => app,
    ]
    .boxed()
}
