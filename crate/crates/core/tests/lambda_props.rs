mod common;

use rlw_core::lambda::{
    approximant, d_determinable, full_iterates, full_reduct_alg, left_iterates, left_reduct_alg,
    nf_taylor_coeff, normalize_alg, weak_solvable, Verdict,
};
use rlw_core::reduction::nf;
use rlw_core::scalars::Semiring;
use rlw_core::syntax::{canonicalize_alg, parse_algebraic, AlgTerm};
use rlw_core::taylor::{taylor_coeff, taylor_truncated, TruncationBound};

const Q: Semiring = Semiring::Rat;

fn alg(src: &str) -> AlgTerm {
    parse_algebraic(src, Q).unwrap()
}

fn normalizing_corpus() -> Vec<AlgTerm> {
    vec![
        alg("(\\x. x) y"),
        alg("(\\x. \\y. x) a b"),
        alg("(\\x. x x) (\\y. y)"),
        alg("(\\f. \\x. f (f x)) (\\y. y) z"),
        alg("x ((\\y. y) z)"),
        alg("(\\x. \\y. \\z. x z (y z)) (\\u. \\v. u) (\\u. \\v. u)"),
    ]
}

#[test]
fn left_and_full_strategies_reach_the_same_normal_form() {
    for m in normalizing_corpus() {
        let via_left = normalize_alg(&m, 100);
        let mut via_full = canonicalize_alg(&m);
        for _ in 0..100 {
            if via_full.is_beta_normal() {
                break;
            }
            via_full = full_reduct_alg(&via_full);
        }
        match via_left {
            Verdict::Definite(n) => assert_eq!(n, via_full),
            other => panic!("left strategy failed: {other:?}"),
        }
    }
}

/// One parallel step commutes with expansion on truncated normal
/// coefficients: both reducts and the source normalize to vectors that
/// agree on every small normal term. The antecedent window is chosen from
/// the four-to-the-height bound, so the corpus sticks to terms whose
/// expansions grow along a single bag.
#[test]
fn reducts_preserve_normalized_coefficients() {
    let corpus = vec![alg("(\\x. x) y"), alg("(\\x. \\y. x) a"), alg("(\\x. x) (\\y. y)")];
    for m in corpus {
        let canon = canonicalize_alg(&m);
        let height = rlw_core::taylor::expansion_height(&m);
        let target_size = 4u64;
        let window = 4u64.pow(height as u32) * target_size;
        let source = nf(&taylor_truncated(Q, canon.term(), &TruncationBound::size(window)).unwrap());
        for reduct in [left_reduct_alg(&canon), full_reduct_alg(&canon)] {
            let reduced =
                nf(&taylor_truncated(Q, reduct.term(), &TruncationBound::size(window)).unwrap());
            for (t, c) in source.iter() {
                if rlw_core::syntax::term_size(t) <= target_size {
                    assert_eq!(&reduced.coeff(t), c, "term {t:?} of {m:?}");
                }
            }
            for (t, c) in reduced.iter() {
                if rlw_core::syntax::term_size(t) <= target_size {
                    assert_eq!(&source.coeff(t), c, "term {t:?} of {m:?}");
                }
            }
        }
    }
}

#[test]
fn deeper_approximants_refine_shallower_ones() {
    let y_g = {
        let y = alg("\\f. (\\x. f (x x)) (\\x. f (x x))");
        AlgTerm::app(y, alg("\\y. \\z. z y"))
    };
    for m in [y_g, AlgTerm::app(AlgTerm::var("x"), alg("(\\x. x x) (\\x. x x)"))] {
        let mut approxes = Vec::new();
        for d in 1..=3u64 {
            match approximant(Q, &m, d, 200) {
                Verdict::Definite(a) => approxes.push(a),
                other => panic!("approximant at depth {d} failed: {other:?}"),
            }
        }
        // coefficients of normal terms with depth below the shallower level
        // agree between consecutive approximants
        for d in 1..approxes.len() {
            let shallow = &approxes[d - 1];
            let deep = &approxes[d];
            let bound = TruncationBound::size(10);
            let shallow_exp = taylor_truncated(Q, shallow.term(), &bound).unwrap();
            let deep_exp = taylor_truncated(Q, deep.term(), &bound).unwrap();
            for (t, c) in shallow_exp.iter() {
                if rlw_core::syntax::term_mono_depth(t) < d as u64 {
                    assert_eq!(&deep_exp.coeff(t), c);
                }
            }
            for (t, c) in deep_exp.iter() {
                if rlw_core::syntax::term_mono_depth(t) < d as u64 {
                    assert_eq!(&shallow_exp.coeff(t), c);
                }
            }
        }
    }
}

fn assert_monotone<T: std::fmt::Debug>(series: &[Verdict<T>]) {
    let mut decided = false;
    let mut refuted = false;
    for v in series {
        match v {
            Verdict::Definite(_) => {
                assert!(!refuted, "refutation retracted");
                decided = true;
            }
            Verdict::No => {
                assert!(!decided, "definite answer retracted");
                refuted = true;
            }
            Verdict::Unknown(_) => {
                assert!(!decided && !refuted, "decided answer degraded to unknown");
            }
        }
    }
}

#[test]
fn verdicts_are_monotone_in_fuel() {
    let omega = alg("(\\x. x x) (\\x. x x)");
    let candidates = vec![
        alg("(\\x. x) y"),
        omega.clone(),
        AlgTerm::app(AlgTerm::var("x"), omega.clone()),
        alg("(\\x. \\y. x) a b"),
    ];
    for m in &candidates {
        let mut solv = Vec::new();
        let mut norm = Vec::new();
        let mut det = Vec::new();
        for fuel in [2u64, 10, 50, 200] {
            solv.push(weak_solvable(Q, m, fuel));
            norm.push(normalize_alg(m, fuel));
            det.push(d_determinable(Q, m, 2, fuel));
        }
        // once definite or refuted, later runs agree
        assert_monotone(&solv);
        assert_monotone(&det);
        let mut normal_value = None;
        for v in &norm {
            if let Verdict::Definite(n) = v {
                if let Some(prev) = &normal_value {
                    assert_eq!(prev, n);
                }
                normal_value = Some(n.clone());
            }
        }
    }
}

#[test]
fn nf_coefficient_routes_agree_on_determinable_terms() {
    // for plainly normalizable terms the approximant route and a direct
    // expansion of the normal form give the same coefficients
    for m in normalizing_corpus() {
        let normal = normalize_alg(&m, 200).value().expect("normalizes");
        let expanded = taylor_truncated(Q, normal.term(), &TruncationBound::size(8)).unwrap();
        for (t, c) in expanded.iter() {
            let got = nf_taylor_coeff(Q, &m, t, 200).unwrap();
            assert_eq!(got, Verdict::Definite(c.clone()));
        }
    }
}

#[test]
fn growing_divergers_and_self_feeding_sums() {
    // \x. x x x applied to itself grows forever: no cycle, so the searches
    // time out rather than refute
    let delta3 = alg("\\x. x x x");
    let omega3 = AlgTerm::app(delta3.clone(), delta3);
    assert!(matches!(weak_solvable(Q, &omega3, 40), Verdict::Unknown(_)));
    assert!(matches!(normalize_alg(&omega3, 40), Verdict::Unknown(_)));

    // delta_M = \x. (M + x x): its self application unfolds to M + itself,
    // so it is solvable whenever M is, but never normalizes
    let delta_x = alg("\\w. x + w w");
    let inf_x = AlgTerm::app(delta_x.clone(), delta_x);
    assert_eq!(weak_solvable(Q, &inf_x, 50), Verdict::Definite(()));
    assert!(matches!(normalize_alg(&inf_x, 40), Verdict::Unknown(_)));
    // and the level-two determinable search cannot settle it either
    assert!(!d_determinable(Q, &inf_x, 2, 40).is_definite());
}

#[test]
fn strategy_iterates_are_exposed_deterministically() {
    let m = alg("(\\x. x) ((\\y. y) z)");
    assert_eq!(left_iterates(&m, 2).term(), &alg("z"));
    assert_eq!(full_iterates(&m, 1).term(), &alg("z"));
    // taylor_coeff on the iterate agrees with the normal form
    let c = taylor_coeff(Q, left_iterates(&m, 2).term(), &rlw_core::syntax::ResTerm::var("z"))
        .unwrap();
    assert_eq!(c, rlw_core::scalars::Scalar::from_int(1));
}
