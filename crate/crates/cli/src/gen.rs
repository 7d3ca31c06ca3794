//! Seeded random generation of resource and algebraic terms.
//!
//! Generation is grammar-directed with an exact size budget and is
//! deterministic for a fixed seed. Algebraic generation exercises `0`,
//! scalar actions and sums; application functions are biased towards
//! abstractions so that reduction suites see plenty of redexes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rlw_core::scalars::{Scalar, Semiring};
use rlw_core::syntax::{AlgTerm, ResMonomial, ResTerm, VarRef};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenKind {
    Resource,
    Algebraic,
    Pure,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generated {
    Res(ResTerm),
    Alg(AlgTerm),
}

pub fn gen_random(kind: GenKind, size: u64, vars: u64, seed: u64) -> Generated {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind {
        GenKind::Resource => Generated::Res(gen_res_term(&mut rng, size.max(1), vars, 0)),
        GenKind::Pure => Generated::Alg(gen_pure(&mut rng, size.max(1), vars, 0)),
        GenKind::Algebraic => Generated::Alg(gen_alg(&mut rng, size.max(1), vars, 0, Semiring::Rat)),
    }
}

pub fn gen_resource(rng: &mut ChaCha8Rng, size: u64, vars: u64) -> ResTerm {
    gen_res_term(rng, size.max(1), vars, 0)
}

pub fn gen_pure_term(rng: &mut ChaCha8Rng, size: u64, vars: u64) -> AlgTerm {
    gen_pure(rng, size.max(1), vars, 0)
}

pub fn gen_alg_term(rng: &mut ChaCha8Rng, size: u64, vars: u64, ring: Semiring) -> AlgTerm {
    gen_alg(rng, size.max(1), vars, 0, ring)
}

fn gen_var(rng: &mut ChaCha8Rng, vars: u64, depth: u32) -> VarRef {
    // prefer a bound variable when one is in scope
    if depth > 0 && rng.gen_bool(0.6) {
        VarRef::Bound(rng.gen_range(0..depth))
    } else if vars > 0 {
        VarRef::Free(format!("x{}", rng.gen_range(0..vars)))
    } else {
        VarRef::Bound(0)
    }
}

/// Split `total` into `parts` positive summands.
fn split_sizes(rng: &mut ChaCha8Rng, total: u64, parts: u64) -> Vec<u64> {
    debug_assert!(total >= parts && parts >= 1);
    let mut out = vec![1u64; parts as usize];
    for _ in 0..(total - parts) {
        let i = rng.gen_range(0..parts) as usize;
        out[i] += 1;
    }
    out
}

fn gen_res_term(rng: &mut ChaCha8Rng, size: u64, vars: u64, depth: u32) -> ResTerm {
    if size <= 1 {
        return ResTerm::Var(gen_var(rng, vars, depth));
    }
    if size == 2 || rng.gen_bool(0.4) {
        return ResTerm::abs(gen_res_term(rng, size - 1, vars, depth + 1));
    }
    // application: 1 + fun + bag, bag may be empty
    let budget = size - 1;
    let fun_size = rng.gen_range(1..=budget);
    let bag_budget = budget - fun_size;
    let fun = if fun_size >= 2 && rng.gen_bool(0.5) {
        // bias towards redexes
        ResTerm::abs(gen_res_term(rng, fun_size - 1, vars, depth + 1))
    } else {
        gen_res_term(rng, fun_size, vars, depth)
    };
    let elems = if bag_budget == 0 {
        Vec::new()
    } else {
        let max_elems = bag_budget.min(3);
        let n = rng.gen_range(1..=max_elems);
        split_sizes(rng, bag_budget, n)
            .into_iter()
            .map(|s| gen_res_term(rng, s, vars, depth))
            .collect()
    };
    ResTerm::app(fun, ResMonomial::new(elems))
}

fn gen_pure(rng: &mut ChaCha8Rng, size: u64, vars: u64, depth: u32) -> AlgTerm {
    if size <= 1 {
        return AlgTerm::Var(gen_var(rng, vars, depth));
    }
    if size == 2 || rng.gen_bool(0.4) {
        return AlgTerm::abs(gen_pure(rng, size - 1, vars, depth + 1));
    }
    let budget = size - 1;
    let fun_size = rng.gen_range(1..budget);
    let fun = if fun_size >= 2 && rng.gen_bool(0.5) {
        AlgTerm::abs(gen_pure(rng, fun_size - 1, vars, depth + 1))
    } else {
        gen_pure(rng, fun_size, vars, depth)
    };
    let arg = gen_pure(rng, budget - fun_size, vars, depth);
    AlgTerm::app(fun, arg)
}

fn scalar_pool(ring: Semiring) -> Vec<Scalar> {
    let mut pool = vec![Scalar::from_int(0), Scalar::from_int(1), Scalar::from_int(2)];
    if ring.has_fractions() && ring != Semiring::Bool {
        pool.push(Scalar::ratio(1, 2));
    }
    if ring.is_ring() {
        pool.push(Scalar::from_int(-1));
    }
    if ring == Semiring::Bool {
        pool.truncate(2);
    }
    pool
}

fn gen_alg(rng: &mut ChaCha8Rng, size: u64, vars: u64, depth: u32, ring: Semiring) -> AlgTerm {
    if size <= 1 {
        return match rng.gen_range(0..5u8) {
            0 => AlgTerm::Zero,
            _ => AlgTerm::Var(gen_var(rng, vars, depth)),
        };
    }
    match rng.gen_range(0..10u8) {
        0..=2 => AlgTerm::abs(gen_alg(rng, size - 1, vars, depth + 1, ring)),
        3..=5 if size >= 3 => {
            let budget = size - 1;
            let fun_size = rng.gen_range(1..budget);
            let fun = if fun_size >= 2 && rng.gen_bool(0.5) {
                AlgTerm::abs(gen_alg(rng, fun_size - 1, vars, depth + 1, ring))
            } else {
                gen_alg(rng, fun_size, vars, depth, ring)
            };
            AlgTerm::app(fun, gen_alg(rng, budget - fun_size, vars, depth, ring))
        }
        6..=7 => {
            let pool = scalar_pool(ring);
            let a = pool[rng.gen_range(0..pool.len())].clone();
            AlgTerm::scale(a, gen_alg(rng, size - 1, vars, depth, ring))
        }
        _ if size >= 3 => {
            let budget = size - 1;
            let left = rng.gen_range(1..budget);
            AlgTerm::sum(
                gen_alg(rng, left, vars, depth, ring),
                gen_alg(rng, budget - left, vars, depth, ring),
            )
        }
        _ => AlgTerm::abs(gen_alg(rng, size - 1, vars, depth + 1, ring)),
    }
}
