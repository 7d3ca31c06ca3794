//! Verification suites: each law is exercised at a configured scale and
//! reported with an instance count and a counterexample rendering on
//! failure. The acceptance tests drive the same checks.

use crate::corpus;
use crate::gen;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rlw_core::calculus::{
    lsubst_mono, lsubst_term, npdiff_term, pdiff_term, subst_sum_term, subst_sum_term_sum,
};
use rlw_core::lambda::{
    approximant, beta_subst, d_determinable, d_determinate, left_iterates, left_reduct_alg,
    nf_taylor_coeff, nf_taylor_truncated, normalize_alg, weak_solvable, Verdict,
};
use rlw_core::reduction::{
    full_reduct_term, fpbs_reduct_term, growth_bound, left_reduct_term, nf, nf_term,
    one_step_reducts, parallel_reducts,
};
use rlw_core::scalars::{split2, split_multi, Scalar, Semiring};
use rlw_core::syntax::{
    canonicalize_alg, free_vars, mono_size, occ, render_alg, render_res_term, render_term_sum,
    term_height, term_mono_depth, term_size, AlgTerm, FinSum, ResExpr, ResMonomial, ResTerm,
};
use rlw_core::taylor::{
    linear_skeleton, taylor_coeff, taylor_support, taylor_truncated,
    uniform_coeff, TaylorEngine, TruncationBound,
};
use std::collections::BTreeMap;

#[derive(Debug, Clone)]
pub struct LawReport {
    pub law: String,
    pub instances: u64,
    pub failures: u64,
    pub counterexample: Option<String>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub laws: Vec<LawReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(LawReport::passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for law in &self.laws {
            let status = if law.passed() { "pass" } else { "FAIL" };
            out.push_str(&format!(
                "{}: {} [{} instances] {}\n",
                self.suite, law.law, law.instances, status
            ));
            if let Some(ce) = &law.counterexample {
                out.push_str(&format!("  counterexample: {ce}\n"));
            }
        }
        out
    }
}

/// Accumulates a single law over many instances, keeping the first
/// counterexample.
struct Law {
    report: LawReport,
}

impl Law {
    fn new(name: &str) -> Law {
        Law {
            report: LawReport {
                law: name.to_string(),
                instances: 0,
                failures: 0,
                counterexample: None,
            },
        }
    }

    fn check(&mut self, ok: bool, ce: impl FnOnce() -> String) {
        self.report.instances += 1;
        if !ok {
            self.report.failures += 1;
            if self.report.counterexample.is_none() {
                self.report.counterexample = Some(ce());
            }
        }
    }

    fn done(self) -> LawReport {
        self.report
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub seed: u64,
    pub fuel: u64,
    pub max_size: u64,
}

impl Default for SuiteConfig {
    fn default() -> SuiteConfig {
        SuiteConfig { seed: 0, fuel: 500, max_size: 10 }
    }
}

pub const SUITES: &[&str] = &[
    "calculus",
    "reduction-bounds",
    "diamond",
    "taylor-uniform",
    "commutation",
    "approximants",
    "conservativity",
    "scalars",
];

pub fn verify_suite(name: &str, cfg: SuiteConfig) -> Option<SuiteReport> {
    let laws = match name {
        "scalars" => vec![
            check_semiring_axioms(cfg.seed, 300),
            check_embed_morphism(),
            check_splitting(cfg.seed, 1000),
            check_growth_bound_laws(),
        ],
        "calculus" => vec![
            check_schwarz(cfg.seed, 300),
            check_npdiff_oracle(cfg.seed, 200),
            check_lsubst_commutation(cfg.seed, 300),
            check_lsubst_laws(cfg.seed, 300),
            check_taylor_subst_commutation(cfg.seed, 300),
        ],
        "reduction-bounds" => vec![
            check_onestep_bounds(cfg.seed, 500, cfg.max_size.max(12)),
            check_left_bound(cfg.seed, 500, cfg.max_size.max(12)),
            check_full_bound(cfg.seed, 500, cfg.max_size.max(12)),
            check_height_growth(cfg.seed, 500, cfg.max_size.max(12)),
            check_fpbs_coherence(cfg.seed, 100),
        ],
        "diamond" => vec![check_diamond(cfg.seed, 100)],
        "taylor-uniform" => vec![
            check_uniform_coeff(cfg.seed, 200),
            check_skeleton(),
            check_bool_collapse(),
            check_support_coherence(cfg.seed, 100),
        ],
        "commutation" => vec![
            check_commutation_corpus(cfg.fuel),
            check_commutation_brute_force(cfg.fuel),
            check_omega_vanishing(cfg.fuel),
        ],
        "approximants" => vec![
            check_approximant_convergence(cfg.fuel),
            check_approximant_stability(cfg.fuel),
            check_m_loop(),
            probe_determinability_after_parallel_step(cfg.fuel),
        ],
        "conservativity" => vec![check_conservativity(cfg.fuel)],
        _ => return None,
    };
    Some(SuiteReport { suite: name.to_string(), laws })
}

// ----------------------------------------------------------------- scalars

pub fn check_semiring_axioms(seed: u64, instances: u64) -> LawReport {
    let mut law = Law::new("semiring axioms on random triples");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rings = [
        Semiring::Nat,
        Semiring::Int,
        Semiring::RatNonNeg,
        Semiring::Rat,
        Semiring::Bool,
    ];
    for _ in 0..instances {
        let ring = rings[rng.gen_range(0..rings.len())];
        let pick = |rng: &mut ChaCha8Rng| match ring {
            Semiring::Bool => Scalar::from_int(rng.gen_range(0..=1)),
            Semiring::Nat => Scalar::from_int(rng.gen_range(0..20)),
            Semiring::Int => Scalar::from_int(rng.gen_range(-20..20)),
            Semiring::RatNonNeg => Scalar::ratio(rng.gen_range(0..12), rng.gen_range(1..7)),
            Semiring::Rat => Scalar::ratio(rng.gen_range(-12..12), rng.gen_range(1..7)),
        };
        let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let ok = ring.add(&ring.add(&a, &b), &c) == ring.add(&a, &ring.add(&b, &c))
            && ring.add(&a, &b) == ring.add(&b, &a)
            && ring.mul(&ring.mul(&a, &b), &c) == ring.mul(&a, &ring.mul(&b, &c))
            && ring.mul(&a, &b) == ring.mul(&b, &a)
            && ring.add(&a, &ring.zero()) == a
            && ring.mul(&a, &ring.one()) == a
            && ring.mul(&a, &ring.zero()) == ring.zero()
            && ring.mul(&a, &ring.add(&b, &c)) == ring.add(&ring.mul(&a, &b), &ring.mul(&a, &c));
        law.check(ok, || format!("{ring}: a={a} b={b} c={c}"));
    }
    law.done()
}

pub fn check_embed_morphism() -> LawReport {
    let mut law = Law::new("naturals embed as a semiring morphism");
    for ring in [
        Semiring::Nat,
        Semiring::Int,
        Semiring::RatNonNeg,
        Semiring::Rat,
        Semiring::Bool,
    ] {
        for m in 0..=50u64 {
            for n in 0..=50u64 {
                let add_ok = rlw_core::scalars::nat_embed(ring, m + n)
                    == ring.add(
                        &rlw_core::scalars::nat_embed(ring, m),
                        &rlw_core::scalars::nat_embed(ring, n),
                    );
                let mul_ok = rlw_core::scalars::nat_embed(ring, m * n)
                    == ring.mul(
                        &rlw_core::scalars::nat_embed(ring, m),
                        &rlw_core::scalars::nat_embed(ring, n),
                    );
                law.check(add_ok && mul_ok, || format!("{ring}: m={m} n={n}"));
            }
        }
    }
    law.done()
}

pub fn check_splitting(seed: u64, instances: u64) -> LawReport {
    let mut law = Law::new("additive splitting satisfies all marginals");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rings = [Semiring::Nat, Semiring::RatNonNeg, Semiring::Int];

    // random decomposition of an integer total into k parts, valid in `ring`
    fn decompose(rng: &mut ChaCha8Rng, ring: Semiring, total: i64, k: usize) -> Vec<i64> {
        let mut parts = vec![0i64; k];
        match ring {
            Semiring::Int => {
                let mut sum = 0;
                for p in parts.iter_mut().take(k - 1) {
                    *p = rng.gen_range(-6..=6);
                    sum += *p;
                }
                parts[k - 1] = total - sum;
            }
            _ => {
                // distribute `total` units among k non-negative buckets
                for _ in 0..total {
                    parts[rng.gen_range(0..k)] += 1;
                }
            }
        }
        parts
    }

    for _ in 0..instances {
        let ring = rings[rng.gen_range(0..rings.len())];
        // a common denominator turns integer decompositions into rational ones
        let den: i64 = if ring == Semiring::RatNonNeg { rng.gen_range(1..5) } else { 1 };
        let total: i64 = match ring {
            Semiring::Int => rng.gen_range(-12..=12),
            _ => rng.gen_range(0..=12),
        };
        let n_rows = rng.gen_range(1..=4usize);
        let rows: Vec<Vec<Scalar>> = (0..n_rows)
            .map(|_| {
                let k = rng.gen_range(1..=4usize);
                decompose(&mut rng, ring, total, k)
                    .into_iter()
                    .map(|n| Scalar::ratio(n, den))
                    .collect()
            })
            .collect();
        let tensor = match split_multi(ring, &rows) {
            Ok(t) => t,
            Err(e) => {
                law.check(false, || format!("{ring}: split failed: {e}"));
                continue;
            }
        };
        let mut ok = true;
        for (i, row) in rows.iter().enumerate() {
            for (j, want) in row.iter().enumerate() {
                if &tensor.marginal(ring, i, j) != want {
                    ok = false;
                }
            }
        }
        // values must stay inside the instance
        ok = ok && tensor.entries.values().all(|v| ring.admits(v));
        law.check(ok, || format!("{ring}: rows {rows:?}"));

        // binary case on the same instance
        let a = decompose(&mut rng, ring, total, 2);
        let b = decompose(&mut rng, ring, total, 2);
        let (a1, a2) = (Scalar::ratio(a[0], den), Scalar::ratio(a[1], den));
        let (b1, b2) = (Scalar::ratio(b[0], den), Scalar::ratio(b[1], den));
        match split2(ring, (&a1, &a2), (&b1, &b2)) {
            Ok(c) => {
                let ok = ring.add(&c[0][0], &c[0][1]) == a1
                    && ring.add(&c[1][0], &c[1][1]) == a2
                    && ring.add(&c[0][0], &c[1][0]) == b1
                    && ring.add(&c[0][1], &c[1][1]) == b2
                    && c.iter().flatten().all(|v| ring.admits(v));
                law.check(ok, || format!("{ring}: split2 of {a:?} and {b:?}"));
            }
            Err(e) => law.check(false, || format!("{ring}: split2 failed: {e}")),
        }
    }
    law.done()
}

pub fn check_growth_bound_laws() -> LawReport {
    let mut law = Law::new("growth bound superadditivity, lower bound and monotonicity");
    for k in 0..=6u64 {
        for l in 0..=6u64 {
            for m in 0..=6u64 {
                let b = growth_bound(k, l, m);
                law.check(b >= BigUint::from(l), || format!("B({k},{l},{m}) < l"));
                for l2 in 0..=6u64 {
                    let sum = growth_bound(k, l, m) + growth_bound(k, l2, m);
                    law.check(
                        growth_bound(k, l + l2, m) >= sum,
                        || format!("superadditivity fails at k={k} l={l} l'={l2} m={m}"),
                    );
                }
                for (k2, l2, m2) in [(k + 1, l, m), (k, l + 1, m), (k, l, m + 1)] {
                    law.check(
                        growth_bound(k2, l2, m2) >= b,
                        || format!("monotonicity fails at ({k},{l},{m}) vs ({k2},{l2},{m2})"),
                    );
                }
            }
        }
    }
    law.done()
}

// ---------------------------------------------------------------- calculus

const R: Semiring = Semiring::Nat;

fn pdiff_sum(sum: &FinSum<ResTerm>, x: &str, u: &ResTerm) -> FinSum<ResTerm> {
    sum.flat_map(|t| pdiff_term(sum.ring(), t, x, u))
}

pub fn check_schwarz(seed: u64, instances: u64) -> LawReport {
    let mut law = Law::new("second derivatives commute");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..instances {
        let size = rng.gen_range(1..=8);
        // differentiate at names vx, vy that cannot occur in t and u,
        // which range over x0, x1 only
        let e = rename_for_schwarz(&gen::gen_resource(&mut rng, size, 3));
        let ts = rng.gen_range(1..=3);
        let t = gen::gen_resource(&mut rng, ts, 2);
        let us = rng.gen_range(1..=3);
        let u = gen::gen_resource(&mut rng, us, 2);
        let lhs = pdiff_sum(&pdiff_term(R, &e, "vx", &t), "vy", &u);
        let rhs = pdiff_sum(&pdiff_term(R, &e, "vy", &u), "vx", &t);
        law.check(lhs == rhs, || {
            format!("e = {}, t = {}, u = {}", render_res_term(&e), render_res_term(&t), render_res_term(&u))
        });
    }
    law.done()
}

/// Rename x0 -> vx and x1 -> vy so the differentiation variables cannot
/// occur in the generated arguments.
fn rename_for_schwarz(e: &ResTerm) -> ResTerm {
    let one = |name: &str| FinSum::singleton(R, ResTerm::var(name));
    let step = subst_sum_term(R, e, "x0", &one("vx"));
    let mut out = FinSum::zero(R);
    for (t, c) in step.iter() {
        out.add_assign(&subst_sum_term(R, t, "x1", &one("vy")).scaled(c));
    }
    let renamed = out.keys().next().expect("renaming is total").clone();
    renamed
}

pub fn check_npdiff_oracle(seed: u64, instances: u64) -> LawReport {
    let mut law = Law::new("iterated derivative equals the fold of single derivatives");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..instances {
        let es = rng.gen_range(1..=6);
        let e = gen::gen_resource(&mut rng, es, 2);
        let n = rng.gen_range(0..=2);
        let elems: Vec<ResTerm> = (0..n)
            .map(|_| {
                let s = rng.gen_range(1..=3);
                gen::gen_resource(&mut rng, s, 3)
            })
            .collect();
        let bag = ResMonomial::new(elems.clone());
        let direct = npdiff_term(R, &e, "x0", &bag);
        // oracle: rename the variable out of the arguments' way, then take
        // one derivative at a time
        let fresh = "orc";
        let renamed = subst_sum_term(R, &e, "x0", &FinSum::singleton(R, ResTerm::var(fresh)));
        let mut acc = renamed;
        for s in &elems {
            acc = pdiff_sum(&acc, fresh, s);
        }
        let restored = subst_sum_term_sum(
            R,
            &acc,
            fresh,
            &FinSum::singleton(R, ResTerm::var("x0")),
        );
        law.check(direct == restored, || {
            format!(
                "e = {}, bag = {}",
                render_res_term(&e),
                render_term_sum(&FinSum::from_entries(
                    R,
                    elems.iter().map(|t| (t.clone(), Scalar::from_int(1)))
                ))
            )
        });
    }
    law.done()
}

fn subsets(n: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let mut i = Vec::new();
        let mut j = Vec::new();
        for b in 0..n {
            if mask & (1 << b) != 0 {
                i.push(b);
            } else {
                j.push(b);
            }
        }
        out.push((i, j));
    }
    out
}

pub fn check_lsubst_commutation(seed: u64, instances: u64) -> LawReport {
    let mut law = Law::new("nested multilinear substitutions decompose over partitions");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..instances {
        // e over vx, vy, x0; t-bag may mention vy; u-bag avoids vx
        let es = rng.gen_range(1..=6);
        let e = rename_for_schwarz(&gen::gen_resource(&mut rng, es, 3));
        let t_count = rng.gen_range(0..=2);
        let t_elems: Vec<ResTerm> = (0..t_count)
            .map(|_| {
                let s = rng.gen_range(1..=3);
                rename_vy_only(&gen::gen_resource(&mut rng, s, 2))
            })
            .collect();
        let u_count = rng.gen_range(0..=3);
        let u_elems: Vec<ResTerm> = (0..u_count)
            .map(|_| {
                let s = rng.gen_range(1..=2);
                gen::gen_resource(&mut rng, s, 2)
            })
            .collect();
        let t_bag = ResMonomial::new(t_elems);
        let u_bag = ResMonomial::new(u_elems.clone());

        let lhs = {
            let step = lsubst_term(R, &e, "vx", &t_bag);
            step.flat_map(|t| lsubst_term(R, t, "vy", &u_bag))
        };

        let mut rhs = FinSum::zero(R);
        for (i, j) in subsets(u_elems.len()) {
            let u_i = ResMonomial::new(i.iter().map(|&k| u_elems[k].clone()).collect());
            let u_j = ResMonomial::new(j.iter().map(|&k| u_elems[k].clone()).collect());
            let outer = lsubst_term(R, &e, "vy", &u_i);
            let inner_bags = lsubst_mono(R, &t_bag, "vy", &u_j);
            for (e2, c1) in outer.iter() {
                for (bag2, c2) in inner_bags.iter() {
                    rhs.add_assign(&lsubst_term(R, e2, "vx", bag2).scaled(&R.mul(c1, c2)));
                }
            }
        }
        law.check(lhs == rhs, || format!("e = {}", render_res_term(&e)));
    }
    law.done()
}

/// Rename x0 -> vy; used to let bags mention the second substitution
/// variable without mentioning the first.
fn rename_vy_only(e: &ResTerm) -> ResTerm {
    let sum = subst_sum_term(R, e, "x0", &FinSum::singleton(R, ResTerm::var("vy")));
    let renamed = sum.keys().next().expect("renaming is total").clone();
    renamed
}

pub fn check_lsubst_laws(seed: u64, instances: u64) -> LawReport {
    let mut law = Law::new("substitution supports satisfy the size and occurrence laws");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..instances {
        let es = rng.gen_range(1..=7);
        let e = rename_for_schwarz(&gen::gen_resource(&mut rng, es, 3));
        let count = rng.gen_range(0..=3);
        let elems: Vec<ResTerm> = (0..count)
            .map(|_| {
                let s = rng.gen_range(1..=3);
                gen::gen_resource(&mut rng, s, 2)
            })
            .collect();
        let bag = ResMonomial::new(elems);
        let x = "vx";
        let expr = ResExpr::Term(e.clone());
        let deg = occ(x, &expr).count;
        let n = bag.len() as u64;
        let result = lsubst_term(R, &e, x, &bag);
        if deg != n {
            law.check(result.is_zero(), || {
                format!("degree {deg} != {n} but nonzero for {}", render_res_term(&e))
            });
            continue;
        }
        let mut ok = true;
        for (e2, _) in result.iter() {
            let size_law =
                term_size(e2) == term_size(&e) + mono_size(&bag) - n;
            let gone = occ(x, &ResExpr::Term(e2.clone())).count == 0;
            // occurrence additivity at a spectator variable
            let y = "x0";
            let occ_e = occ(y, &expr);
            let occ_bag = occ(y, &ResExpr::Mono(bag.clone()));
            let occ_e2 = occ(y, &ResExpr::Term(e2.clone()));
            let additive = occ_e2.count == occ_e.count + occ_bag.count;
            let depths_grow = occ_e.depths.is_subset(&occ_e2.depths);
            if !(size_law && gone && additive && depths_grow) {
                ok = false;
            }
        }
        // the partial-derivative bookkeeping on a possibly smaller bag
        let partial = ResMonomial::new(bag.elems().iter().take(1).cloned().collect());
        let pn = partial.len() as u64;
        if deg >= pn {
            for (e2, _) in npdiff_term(R, &e, x, &partial).iter() {
                let expr2 = ResExpr::Term(e2.clone());
                let consumed = occ(x, &expr2).count == deg - pn;
                let size_law =
                    term_size(e2) == term_size(&e) + mono_size(&partial) - pn;
                let h_low = rlw_core::syntax::term_height(&e) <= rlw_core::syntax::term_height(e2);
                let h_high = rlw_core::syntax::term_height(e2)
                    <= rlw_core::syntax::term_height(&e).max(
                        (occ(x, &expr).max_depth() + rlw_core::syntax::mono_height(&partial))
                            .saturating_sub(1),
                    );
                let depths_shrink = occ(x, &expr2).depths.is_subset(&occ(x, &expr).depths);
                if !(consumed && size_law && h_low && h_high && depths_shrink) {
                    ok = false;
                }
            }
        }
        law.check(ok, || format!("e = {}", render_res_term(&e)));
    }
    law.done()
}

pub fn check_taylor_subst_commutation(seed: u64, instances: u64) -> LawReport {
    let mut law = Law::new("expansion commutes with substitution on truncated coefficients");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ring = Semiring::Rat;
    let bound = TruncationBound::size(8);
    for _ in 0..instances {
        let ms = rng.gen_range(1..=5);
        let m = gen::gen_alg_term(&mut rng, ms, 2, ring);
        let ns = rng.gen_range(1..=4);
        let n = gen::gen_alg_term(&mut rng, ns, 2, ring);
        let lhs = taylor_truncated(ring, beta_subst(&m, "x0", &n).term(), &bound)
            .expect("rationals have fractions");
        let tm = taylor_truncated(ring, &m, &bound).unwrap();
        let tn = taylor_truncated(ring, &n, &bound).unwrap();
        let mut rhs = subst_sum_term_sum(ring, &tm, "x0", &tn);
        rhs.retain(|t| term_size(t) <= 8);
        law.check(lhs == rhs, || {
            format!("M = {}, N = {}", render_alg(&m), render_alg(&n))
        });
    }
    law.done()
}

// --------------------------------------------------------------- reduction

pub fn check_onestep_bounds(seed: u64, instances: u64, max_size: u64) -> LawReport {
    let mut law = Law::new("one-step reducts obey the two-sided size law");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..instances {
        let es = rng.gen_range(1..=max_size);
        let e = gen::gen_resource(&mut rng, es, 2);
        let se = term_size(&e);
        let fve = free_vars(&ResExpr::Term(e.clone()));
        let mut ok = true;
        for (_, sum) in one_step_reducts(R, &e) {
            for (e2, _) in sum.iter() {
                let s2 = term_size(e2);
                if !(s2 + 2 <= se && se <= 2 * s2 + 2) {
                    ok = false;
                }
                if free_vars(&ResExpr::Term(e2.clone())) != fve {
                    ok = false;
                }
            }
        }
        law.check(ok, || render_res_term(&e));
    }
    law.done()
}

pub fn check_left_bound(seed: u64, instances: u64, max_size: u64) -> LawReport {
    let mut law = Law::new("left reducts shrink by a factor of at most four");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..instances {
        let es = rng.gen_range(1..=max_size);
        let e = gen::gen_resource(&mut rng, es, 2);
        let se = term_size(&e);
        let mut ok = true;
        for (e2, _) in left_reduct_term(R, &e).iter() {
            if se > 4 * term_size(e2) {
                ok = false;
            }
        }
        law.check(ok, || render_res_term(&e));
    }
    law.done()
}

pub fn check_full_bound(seed: u64, instances: u64, max_size: u64) -> LawReport {
    let mut law = Law::new("full reducts shrink by at most four to the height");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..instances {
        let es = rng.gen_range(1..=max_size);
        let e = gen::gen_resource(&mut rng, es, 2);
        let se = term_size(&e) as u128;
        let h = term_height(&e) as u32;
        let factor = 4u128.pow(h);
        let mut ok = true;
        for (e2, _) in full_reduct_term(R, &e).iter() {
            if se > factor * term_size(e2) as u128 {
                ok = false;
            }
        }
        law.check(ok, || render_res_term(&e));
    }
    law.done()
}

pub fn check_height_growth(seed: u64, instances: u64, max_size: u64) -> LawReport {
    let mut law = Law::new("parallel reducts keep height within two to the height");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..instances {
        let es = rng.gen_range(1..=max_size);
        let e = gen::gen_resource(&mut rng, es, 2);
        let h = term_height(&e);
        let cap = (1u128 << h.min(64)) * h as u128;
        let mut ok = true;
        for sum in [
            left_reduct_term(R, &e),
            full_reduct_term(R, &e),
            fpbs_reduct_term(R, h / 2, &e),
        ] {
            for (e2, _) in sum.iter() {
                if (term_height(e2) as u128) > cap {
                    ok = false;
                }
            }
        }
        law.check(ok, || render_res_term(&e));
    }
    law.done()
}

pub fn check_fpbs_coherence(seed: u64, instances: u64) -> LawReport {
    let mut law = Law::new("depth-bounded reducts are parallel reducts, full at the height");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..instances {
        let es = rng.gen_range(1..=6);
        let e = gen::gen_resource(&mut rng, es, 2);
        let h = term_height(&e);
        let full_at_height = fpbs_reduct_term(R, h, &e) == full_reduct_term(R, &e);
        let mut member = true;
        if let Ok(set) = parallel_reducts(R, &e, 7) {
            for d in 0..=h {
                if !set.contains(&fpbs_reduct_term(R, d, &e)) {
                    member = false;
                }
            }
        }
        law.check(full_at_height && member, || render_res_term(&e));
    }
    law.done()
}

// ----------------------------------------------------------------- diamond

fn to_counts(sum: &FinSum<ResTerm>) -> Option<BTreeMap<ResTerm, u64>> {
    let mut out = BTreeMap::new();
    for (t, c) in sum.iter() {
        let r = c.rational();
        if !r.denom().eq(&num_bigint::BigInt::from(1)) {
            return None;
        }
        let n: u64 = r.numer().try_into().ok()?;
        out.insert(t.clone(), n);
    }
    Some(out)
}

/// Search a per-summand choice of parallel reducts of `from` that sums to
/// `target`.
fn reaches_in_one_parallel_step(from: &FinSum<ResTerm>, target: &FinSum<ResTerm>) -> bool {
    let entries: Vec<(ResTerm, u64)> = match to_counts(from) {
        Some(m) => m.into_iter().collect(),
        None => return false,
    };
    let mut remaining = match to_counts(target) {
        Some(m) => m,
        None => return false,
    };
    fn subtract(remaining: &mut BTreeMap<ResTerm, u64>, delta: &BTreeMap<ResTerm, u64>) -> bool {
        let fits = delta
            .iter()
            .all(|(t, c)| remaining.get(t).map(|r| r >= c).unwrap_or(*c == 0));
        if !fits {
            return false;
        }
        for (t, c) in delta {
            if let Some(r) = remaining.get_mut(t) {
                *r -= c;
            }
        }
        remaining.retain(|_, v| *v > 0);
        true
    }
    fn restore(remaining: &mut BTreeMap<ResTerm, u64>, delta: &BTreeMap<ResTerm, u64>) {
        for (t, c) in delta {
            if *c > 0 {
                *remaining.entry(t.clone()).or_insert(0) += c;
            }
        }
    }
    fn go(
        flat: &[(ResTerm, u64)],
        idx: usize,
        copies_left: u64,
        choices: &[Vec<BTreeMap<ResTerm, u64>>],
        remaining: &mut BTreeMap<ResTerm, u64>,
    ) -> bool {
        if idx == flat.len() {
            return remaining.is_empty();
        }
        if copies_left == 0 {
            let next_copies = flat.get(idx + 1).map(|e| e.1).unwrap_or(0);
            return go(flat, idx + 1, next_copies, choices, remaining);
        }
        for delta in &choices[idx] {
            if subtract(remaining, delta) {
                if go(flat, idx, copies_left - 1, choices, remaining) {
                    return true;
                }
                restore(remaining, delta);
            }
        }
        false
    }
    let mut choices = Vec::new();
    for (t, _) in &entries {
        let set = match parallel_reducts(R, t, u64::MAX) {
            Ok(s) => s,
            Err(_) => return false,
        };
        let counts: Vec<BTreeMap<ResTerm, u64>> =
            set.iter().filter_map(to_counts).collect();
        choices.push(counts);
    }
    let first_copies = entries.first().map(|e| e.1).unwrap_or(0);
    go(&entries, 0, first_copies, &choices, &mut remaining)
}

pub fn check_diamond(seed: u64, instances: u64) -> LawReport {
    let mut law = Law::new("every parallel reduct reaches the full reduct in one step");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..instances {
        let es = rng.gen_range(1..=7);
        let e = gen::gen_resource(&mut rng, es, 2);
        let full = full_reduct_term(R, &e);
        let base_nf = nf_term(R, &e);
        let set = match parallel_reducts(R, &e, 7) {
            Ok(s) => s,
            Err(_) => continue,
        };
        let mut ok = true;
        for reduct in &set {
            if nf(reduct) != base_nf {
                ok = false;
            }
            if !reaches_in_one_parallel_step(reduct, &full) {
                ok = false;
            }
        }
        law.check(ok, || render_res_term(&e));
    }
    law.done()
}

// ------------------------------------------------------------------ taylor

pub fn check_uniform_coeff(seed: u64, instances: u64) -> LawReport {
    let mut law = Law::new("pure expansions weigh each support element by its multiplicity");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ring = Semiring::Rat;
    let bound = TruncationBound::size(10);
    for _ in 0..instances {
        let ms = rng.gen_range(1..=8);
        let m = gen::gen_pure_term(&mut rng, ms, 2);
        let mut engine = TaylorEngine::new(ring);
        let mut ok = true;
        for s in taylor_support(&m, &bound) {
            let c = engine.coeff(&m, &s).unwrap();
            let expect = uniform_coeff(ring, &s).unwrap();
            if c != expect {
                ok = false;
            }
        }
        law.check(ok, || render_alg(&m));
    }
    law.done()
}

pub fn check_skeleton() -> LawReport {
    let mut law = Law::new("linear skeletons identify pure terms inside supports");
    let terms = corpus::pure_normalizable();
    for (name, m) in &terms {
        let sk = linear_skeleton(m).unwrap();
        let b = TruncationBound::size(term_size(&sk));
        law.check(taylor_support(m, &b).contains(&sk), || {
            format!("{name}: skeleton not in own support")
        });
        for (other_name, other) in &terms {
            if name == other_name {
                continue;
            }
            law.check(!taylor_support(other, &b).contains(&sk), || {
                format!("{name} skeleton found in {other_name}")
            });
        }
    }
    law.done()
}

pub fn check_bool_collapse() -> LawReport {
    let mut law = Law::new("support of the collapse example matches over booleans");
    let lhs_term = corpus::supp_example();
    let rhs_term = AlgTerm::app(AlgTerm::var("x"), AlgTerm::var("x"));
    for b in 1..=8u64 {
        let bound = TruncationBound::size(b);
        let lhs = taylor_support(&lhs_term, &bound);
        let rhs = taylor_support(&rhs_term, &bound);
        law.check(lhs == rhs, || format!("bound {b}"));
        // over booleans the truncated expansion is exactly the support
        let t = taylor_truncated(Semiring::Bool, &rhs_term, &bound).unwrap();
        let members: std::collections::BTreeSet<ResTerm> = t.keys().cloned().collect();
        law.check(members == rhs, || format!("boolean expansion at bound {b}"));
    }
    law.done()
}

pub fn check_support_coherence(seed: u64, instances: u64) -> LawReport {
    let mut law = Law::new("truncated supports contain truncated expansions, exactly on pure terms");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ring = Semiring::Rat;
    let bound = TruncationBound::size(8);
    for i in 0..instances {
        let pure = i % 2 == 0;
        let size = rng.gen_range(1..=6);
        let m = if pure {
            gen::gen_pure_term(&mut rng, size, 2)
        } else {
            gen::gen_alg_term(&mut rng, size, 2, ring)
        };
        let sup = taylor_support(&m, &bound);
        let trunc = taylor_truncated(ring, &m, &bound).unwrap();
        let mut ok = trunc.keys().all(|t| sup.contains(t));
        if pure {
            ok = ok && trunc.len() == sup.len();
        }
        law.check(ok, || render_alg(&m));
    }
    law.done()
}

/// The stability of the determinable class under a full parallel step is a
/// conjecture; this probe reports the observed agreement without asserting.
pub fn probe_determinability_after_parallel_step(fuel: u64) -> LawReport {
    let ring = Semiring::Rat;
    let mut total = 0u64;
    let mut agreements = 0u64;
    for (_, m) in corpus::normalizable() {
        let stepped = rlw_core::lambda::full_reduct_alg(&canonicalize_alg(&m));
        for d in 1..=2u64 {
            let before = d_determinable(ring, &m, d, fuel);
            let after = d_determinable(ring, stepped.term(), d, fuel);
            total += 1;
            if before.is_definite() == after.is_definite() {
                agreements += 1;
            }
        }
    }
    LawReport {
        law: format!(
            "determinability agrees across a parallel step on {agreements}/{total} corpus cases (probe, not asserted)"
        ),
        instances: total,
        failures: 0,
        counterexample: None,
    }
}

// ------------------------------------------------------------- commutation

pub fn check_commutation_corpus(fuel: u64) -> LawReport {
    let mut law = Law::new("normal form of the expansion equals the expansion of the normal form");
    let ring = Semiring::Rat;
    let bound = TruncationBound::size(10);
    for (name, m) in corpus::normalizable() {
        let normal = match normalize_alg(&m, fuel) {
            Verdict::Definite(n) => n,
            other => {
                law.check(false, || format!("{name}: did not normalize: {other:?}"));
                continue;
            }
        };
        let lhs = match nf_taylor_truncated(ring, &m, &bound, fuel) {
            Ok(Verdict::Definite(sum)) => sum,
            other => {
                law.check(false, || format!("{name}: expansion not resolved: {other:?}"));
                continue;
            }
        };
        let rhs = taylor_truncated(ring, normal.term(), &bound).unwrap();
        law.check(lhs == rhs, || {
            format!(
                "{name}: lhs = {}, rhs = {}",
                render_term_sum(&lhs),
                render_term_sum(&rhs)
            )
        });
    }
    law.done()
}

/// Independent oracle: normalize the truncated expansion itself, with a
/// window wide enough (four to the height times the target size) that
/// every antecedent of a small normal term is inside it, and compare
/// against the approximant route coefficient by coefficient.
pub fn check_commutation_brute_force(fuel: u64) -> LawReport {
    let mut law = Law::new("normalizing the truncated expansion agrees with the approximant route");
    let ring = Semiring::Rat;
    let target_size = 4u64;
    let picks = [
        ("identity redex", corpus::normalizable()[0].1.clone()),
        ("scaled redex with a zero tail", rlw_core::syntax::parse_algebraic(
            "2 * ((\\x. x) y) + 0",
            ring,
        )
        .unwrap()),
        ("sum of redexes", rlw_core::syntax::parse_algebraic("(\\x. x) a + (\\x. x) b", ring).unwrap()),
        ("projection discarding a variable", rlw_core::syntax::parse_algebraic("(\\x. \\y. x) a", ring).unwrap()),
    ];
    for (name, m) in picks {
        let h = rlw_core::taylor::expansion_height(&m);
        let window = 4u64.pow(h as u32) * target_size;
        let brute = nf(&taylor_truncated(ring, &m, &TruncationBound::size(window)).unwrap());
        let via_approximant =
            match nf_taylor_truncated(ring, &m, &TruncationBound::size(target_size), fuel) {
                Ok(Verdict::Definite(sum)) => sum,
                other => {
                    law.check(false, || format!("{name}: {other:?}"));
                    continue;
                }
            };
        let mut ok = true;
        for (t, c) in via_approximant.iter() {
            if &brute.coeff(t) != c {
                ok = false;
            }
        }
        for (t, c) in brute.iter() {
            if term_size(t) <= target_size && &via_approximant.coeff(t) != c {
                ok = false;
            }
        }
        law.check(ok, || {
            format!("{name}: brute {}", render_term_sum(&brute))
        });
    }
    law.done()
}

pub fn check_omega_vanishing(fuel: u64) -> LawReport {
    let mut law = Law::new("the looping self-application has an empty normalized expansion");
    let ring = Semiring::Rat;
    let omega = corpus::omega();
    for b in [4u64, 8, 12] {
        match nf_taylor_truncated(ring, &omega, &TruncationBound::size(b), fuel) {
            Ok(Verdict::Definite(sum)) => law.check(sum.is_zero(), || format!("bound {b}")),
            other => law.check(false, || format!("bound {b}: {other:?}")),
        }
    }
    law.check(
        weak_solvable(ring, &omega, fuel) == Verdict::No,
        || "solvability of the loop".to_string(),
    );
    law.done()
}

// ------------------------------------------------------------ approximants

pub fn check_approximant_convergence(fuel: u64) -> LawReport {
    let mut law = Law::new("approximant coefficients match the normalized expansion");
    let ring = Semiring::Rat;
    for (name, m) in [("fixpoint of swapped application", corpus::y_g()), ("looping argument", corpus::x_omega())] {
        // candidate targets: everything the deepest approximant reaches,
        // plus two off-support probes
        let a3 = match approximant(ring, &m, 3, fuel) {
            Verdict::Definite(a) => a,
            other => {
                law.check(false, || format!("{name}: depth 3 approximant {other:?}"));
                continue;
            }
        };
        let mut candidates = taylor_support(a3.term(), &TruncationBound::size(10));
        candidates.insert(ResTerm::var("y"));
        candidates.insert(ResTerm::app(ResTerm::var("z"), ResMonomial::empty()));
        for d in 1..=3u64 {
            let ad = match approximant(ring, &m, d, fuel) {
                Verdict::Definite(a) => a,
                other => {
                    law.check(false, || format!("{name}: depth {d} approximant {other:?}"));
                    continue;
                }
            };
            for t in &candidates {
                if term_mono_depth(t) >= d || term_size(t) > 10 {
                    continue;
                }
                let direct = taylor_coeff(ring, ad.term(), t).unwrap();
                match nf_taylor_coeff(ring, &m, t, fuel) {
                    Ok(Verdict::Definite(c)) => {
                        law.check(c == direct, || {
                            format!("{name} depth {d}: {} has {c} vs {direct}", render_res_term(t))
                        });
                    }
                    other => law.check(false, || {
                        format!("{name} depth {d}: {} gave {other:?}", render_res_term(t))
                    }),
                }
            }
        }
    }
    law.done()
}

pub fn check_approximant_stability(fuel: u64) -> LawReport {
    let mut law = Law::new("approximants are invariant under one left step");
    let ring = Semiring::Rat;
    for (name, m) in corpus::normalizable() {
        let l = left_reduct_alg(&canonicalize_alg(&m));
        for d in 1..=3u64 {
            let a = approximant(ring, &m, d, fuel);
            let b = approximant(ring, l.term(), d, fuel);
            if a.is_definite() && b.is_definite() {
                law.check(a == b, || format!("{name} at depth {d}"));
            }
        }
    }
    law.done()
}

pub fn check_m_loop() -> LawReport {
    let mut law = Law::new("the stepping loop resolves coefficient-wise but not structurally");
    let ring = Semiring::Rat;
    let m_loop = corpus::m_loop();

    // two left steps reach \x.x + \x.(loop), which is not 1-determinate
    let l2 = left_iterates(&m_loop, 2);
    law.check(
        d_determinate(ring, l2.term(), 1, 400) == Verdict::No,
        || "determinate form check".into(),
    );
    law.check(
        matches!(d_determinable(ring, &m_loop, 1, 50), Verdict::Unknown(_)),
        || "determinable search outcome".into(),
    );

    // the normal forms reached: ladders of abstractions over the binder
    let s0 = ResTerm::abs(ResTerm::Var(rlw_core::syntax::VarRef::Bound(0)));
    let s1 = ResTerm::abs(s0.clone());
    for (idx, t) in [(0u32, s0.clone()), (1, s1.clone())] {
        match nf_taylor_coeff(ring, &m_loop, &t, 80) {
            Ok(Verdict::Definite(c)) => law.check(c == Scalar::from_int(1), || {
                format!("ladder {idx} coefficient {c}")
            }),
            other => law.check(false, || format!("ladder {idx}: {other:?}")),
        }
    }

    // brute force: aggregate normal forms over the truncated support
    let mut engine = TaylorEngine::new(ring);
    let mut brute: BTreeMap<ResTerm, Scalar> = BTreeMap::new();
    for s in taylor_support(&m_loop, &TruncationBound::size(14)) {
        let c = engine.coeff(&m_loop, &s).unwrap();
        if c.is_zero() {
            continue;
        }
        for (t, k) in nf_term(ring, &s).iter() {
            let add = ring.mul(&c, k);
            let entry = brute.entry(t.clone()).or_insert_with(|| ring.zero());
            *entry = ring.add(entry, &add);
        }
    }
    law.check(brute.get(&s0) == Some(&Scalar::from_int(1)), || {
        format!("brute-force ladder 0: {:?}", brute.get(&s0))
    });
    law.check(brute.get(&s1) == Some(&Scalar::from_int(1)), || {
        format!("brute-force ladder 1: {:?}", brute.get(&s1))
    });
    law.done()
}

// ---------------------------------------------------------- conservativity

pub fn check_conservativity(fuel: u64) -> LawReport {
    let mut law = Law::new("truncated expansion equality coincides with shared normal forms");
    let ring = Semiring::Rat;
    let bound = TruncationBound::size(10);
    let terms = corpus::pure_normalizable();
    let mut results = Vec::new();
    for (name, m) in &terms {
        let normal = match normalize_alg(m, fuel) {
            Verdict::Definite(n) => n,
            other => {
                law.check(false, || format!("{name}: did not normalize: {other:?}"));
                continue;
            }
        };
        let expansion = match nf_taylor_truncated(ring, m, &bound, fuel) {
            Ok(Verdict::Definite(sum)) => sum,
            other => {
                law.check(false, || format!("{name}: {other:?}"));
                continue;
            }
        };
        results.push((name.clone(), normal, expansion));
    }
    for i in 0..results.len() {
        for j in (i + 1)..results.len() {
            let (na, forma, expa) = &results[i];
            let (nb, formb, expb) = &results[j];
            let alpha_eq = forma == formb;
            let taylor_eq = expa == expb;
            law.check(alpha_eq == taylor_eq, || {
                format!("{na} vs {nb}: alpha {alpha_eq}, expansion {taylor_eq}")
            });
        }
    }
    law.done()
}
