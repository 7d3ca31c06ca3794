//! Bundled terms used by the golden files and the verification suites.

use rlw_core::scalars::{Scalar, Semiring};
use rlw_core::syntax::{parse_algebraic, AlgTerm};

fn alg(src: &str) -> AlgTerm {
    parse_algebraic(src, Semiring::Rat).expect("corpus term parses")
}

pub fn i() -> AlgTerm {
    alg("\\x. x")
}

pub fn k() -> AlgTerm {
    alg("\\x. \\y. x")
}

pub fn s() -> AlgTerm {
    alg("\\x. \\y. \\z. x z (y z)")
}

pub fn church(n: u64) -> AlgTerm {
    let mut body = String::from("x");
    for _ in 0..n {
        body = format!("f ({body})");
    }
    alg(&format!("\\f. \\x. {body}"))
}

pub fn delta() -> AlgTerm {
    alg("\\x. x x")
}

pub fn omega() -> AlgTerm {
    AlgTerm::app(delta(), delta())
}

/// \x. x x x and its self-application, a growing diverger.
pub fn delta3() -> AlgTerm {
    alg("\\x. x x x")
}

pub fn omega3() -> AlgTerm {
    AlgTerm::app(delta3(), delta3())
}

pub fn y_comb() -> AlgTerm {
    alg("\\f. (\\x. f (x x)) (\\x. f (x x))")
}

pub fn g() -> AlgTerm {
    alg("\\y. \\z. z y")
}

pub fn y_g() -> AlgTerm {
    AlgTerm::app(y_comb(), g())
}

pub fn x_omega() -> AlgTerm {
    AlgTerm::app(AlgTerm::var("x"), omega())
}

pub fn m_step() -> AlgTerm {
    alg("(\\y. \\z. z) + (\\y. \\z. \\x. y y z)")
}

pub fn m_loop() -> AlgTerm {
    AlgTerm::app(AlgTerm::app(m_step(), m_step()), i())
}

/// The support-collapse example: x applied to the zero term, plus x x.
pub fn supp_example() -> AlgTerm {
    alg("x 0 + x x")
}

/// \x. (M + x x), whose self-application unfolds to M + itself.
pub fn delta_of(m: &AlgTerm) -> AlgTerm {
    AlgTerm::abs(AlgTerm::sum(
        rlw_core::syntax::shift_alg(m, 1, 0),
        AlgTerm::app(
            AlgTerm::Var(rlw_core::syntax::VarRef::Bound(0)),
            AlgTerm::Var(rlw_core::syntax::VarRef::Bound(0)),
        ),
    ))
}

pub fn inf_of(m: &AlgTerm) -> AlgTerm {
    AlgTerm::app(delta_of(m), delta_of(m))
}

/// Normalizable corpus with weighted sums, for the commutation checks.
pub fn normalizable() -> Vec<(String, AlgTerm)> {
    let half_iy = AlgTerm::scale(
        Scalar::ratio(1, 2),
        alg("(\\x. x) y"),
    );
    let third_kab = AlgTerm::scale(Scalar::ratio(1, 3), alg("(\\x. \\y. x) a b"));
    vec![
        ("identity redex".into(), alg("(\\x. x) y")),
        ("two-step projection".into(), alg("(\\x. \\y. x) a b")),
        ("weighted mix".into(), AlgTerm::sum(half_iy, third_kab)),
        ("discarded divergence".into(), AlgTerm::apps(k(), [i(), omega()])),
        ("self application of the identity".into(), AlgTerm::app(i(), i())),
        ("skk".into(), AlgTerm::apps(s(), [k(), k()])),
        ("argument redex".into(), alg("x ((\\y. y) z)")),
        ("under a binder".into(), alg("\\x. (\\y. y) x")),
        ("duplicating redex".into(), AlgTerm::app(delta(), i())),
        ("church successor".into(), {
            let succ = alg("\\n. \\f. \\x. f (n f x)");
            AlgTerm::app(succ, church(2))
        }),
        ("church addition".into(), {
            let add = alg("\\m. \\n. \\f. \\x. m f (n f x)");
            AlgTerm::apps(add, [church(1), church(2)])
        }),
        ("scaled redex with a zero tail".into(), alg("2 * ((\\x. x) y) + 0")),
        ("zero coefficient persists".into(), alg("0 * ((\\x. x) y)")),
        ("sum of redexes".into(), alg("(\\x. x) a + (\\x. x) b")),
        ("nested weights".into(), alg("1/2 * (2 * ((\\x. x) y))")),
        ("redex under sum and scale".into(), alg("1/3 * ((\\x. x x) (\\y. y)) + z")),
    ]
}

/// Normalizable pure terms whose normal forms differ pairwise within small
/// truncations.
pub fn pure_normalizable() -> Vec<(String, AlgTerm)> {
    vec![
        ("i".into(), i()),
        ("k".into(), k()),
        ("s".into(), s()),
        ("c0".into(), church(0)),
        ("c1 eta-distinct".into(), church(1)),
        ("c2".into(), church(2)),
        ("c3".into(), church(3)),
        ("skk".into(), AlgTerm::apps(s(), [k(), k()])),
        ("ii".into(), AlgTerm::app(i(), i())),
        ("ki omega-free".into(), AlgTerm::apps(k(), [i(), AlgTerm::var("w")])),
    ]
}
