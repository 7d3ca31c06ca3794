//! Deterministic rendering. `parse(render(v))` is structurally `v`; binder
//! names are regenerated from a fixed pool, skipping free names in scope.

use super::alg::AlgTerm;
use super::res::{ResExpr, ResMonomial, ResTerm};
use super::sum::FinSum;
use super::VarRef;
use crate::scalars::Scalar;
use std::collections::BTreeSet;

const POOL: &[&str] = &["x", "y", "z", "w", "u", "v", "a", "b", "c", "f", "g", "h"];

struct Names {
    avoid: BTreeSet<String>,
    stack: Vec<String>,
}

impl Names {
    fn new(avoid: BTreeSet<String>) -> Names {
        Names { avoid, stack: Vec::new() }
    }

    fn push_fresh(&mut self) -> String {
        let taken = |n: &str, stack: &[String], avoid: &BTreeSet<String>| {
            avoid.contains(n) || stack.iter().any(|s| s == n)
        };
        for cand in POOL {
            if !taken(cand, &self.stack, &self.avoid) {
                self.stack.push(cand.to_string());
                return cand.to_string();
            }
        }
        let mut i = 1u64;
        loop {
            let cand = format!("x{i}");
            if !taken(&cand, &self.stack, &self.avoid) {
                self.stack.push(cand.clone());
                return cand;
            }
            i += 1;
        }
    }

    fn pop(&mut self) {
        self.stack.pop();
    }

    fn bound(&self, idx: u32) -> String {
        let n = self.stack.len();
        let i = idx as usize;
        if i < n {
            self.stack[n - 1 - i].clone()
        } else {
            // dangling index: stable placeholder, not parseable back on purpose
            format!("?{}", i - n)
        }
    }
}

// ---------------------------------------------------------------- resource

fn res_needs_parens_in_fun(t: &ResTerm) -> bool {
    matches!(t, ResTerm::Abs(_))
}

fn render_res_term_inner(t: &ResTerm, names: &mut Names, out: &mut String) {
    match t {
        ResTerm::Var(VarRef::Free(x)) => out.push_str(x),
        ResTerm::Var(VarRef::Bound(i)) => out.push_str(&names.bound(*i)),
        ResTerm::Abs(body) => {
            let name = names.push_fresh();
            out.push('\\');
            out.push_str(&name);
            out.push_str(". ");
            render_res_term_inner(body, names, out);
            names.pop();
        }
        ResTerm::App(fun, bag) => {
            if res_needs_parens_in_fun(fun) {
                out.push('(');
                render_res_term_inner(fun, names, out);
                out.push(')');
            } else {
                render_res_term_inner(fun, names, out);
            }
            render_res_mono_inner(bag, names, out);
        }
    }
}

fn render_res_mono_inner(m: &ResMonomial, names: &mut Names, out: &mut String) {
    out.push('[');
    for (i, t) in m.elems().iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        render_res_term_inner(t, names, out);
    }
    out.push(']');
}

pub fn render_res_term(t: &ResTerm) -> String {
    let fv = super::res::free_vars(&ResExpr::Term(t.clone()));
    let mut names = Names::new(fv);
    let mut out = String::new();
    render_res_term_inner(t, &mut names, &mut out);
    out
}

pub fn render_res_mono(m: &ResMonomial) -> String {
    let fv = super::res::free_vars(&ResExpr::Mono(m.clone()));
    let mut names = Names::new(fv);
    let mut out = String::new();
    render_res_mono_inner(m, &mut names, &mut out);
    out
}

pub fn render_res_expr(e: &ResExpr) -> String {
    match e {
        ResExpr::Term(t) => render_res_term(t),
        ResExpr::Mono(m) => render_res_mono(m),
    }
}

fn render_coeff_prefix(c: &Scalar, out: &mut String) {
    if c != &Scalar::from_int(1) {
        out.push_str(&c.to_string());
        out.push_str(" * ");
    }
}

pub fn render_term_sum(s: &FinSum<ResTerm>) -> String {
    if s.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (t, c)) in s.iter().enumerate() {
        if i > 0 {
            out.push_str(" + ");
        }
        render_coeff_prefix(c, &mut out);
        out.push_str(&render_res_term(t));
    }
    out
}

pub fn render_mono_sum(s: &FinSum<ResMonomial>) -> String {
    if s.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in s.iter().enumerate() {
        if i > 0 {
            out.push_str(" + ");
        }
        render_coeff_prefix(c, &mut out);
        out.push_str(&render_res_mono(m));
    }
    out
}

// ---------------------------------------------------------------- algebraic

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Sum,
    Scale,
    App,
    Atom,
}

fn alg_prec(t: &AlgTerm) -> Prec {
    match t {
        AlgTerm::Var(_) | AlgTerm::Zero => Prec::Atom,
        AlgTerm::Abs(_) => Prec::Sum, // body extends right; parenthesize unless outermost
        AlgTerm::App(..) => Prec::App,
        AlgTerm::Scale(..) => Prec::Scale,
        AlgTerm::Sum(..) => Prec::Sum,
    }
}

fn render_alg_inner(t: &AlgTerm, names: &mut Names, min: Prec, out: &mut String) {
    let prec = alg_prec(t);
    let parens = prec < min;
    if parens {
        out.push('(');
    }
    match t {
        AlgTerm::Var(VarRef::Free(x)) => out.push_str(x),
        AlgTerm::Var(VarRef::Bound(i)) => out.push_str(&names.bound(*i)),
        AlgTerm::Zero => out.push('0'),
        AlgTerm::Abs(body) => {
            let name = names.push_fresh();
            out.push('\\');
            out.push_str(&name);
            out.push_str(". ");
            render_alg_inner(body, names, Prec::Sum, out);
            names.pop();
        }
        AlgTerm::App(f, a) => {
            render_alg_inner(f, names, Prec::App, out);
            out.push(' ');
            render_alg_inner(a, names, Prec::Atom, out);
        }
        AlgTerm::Scale(c, m) => {
            out.push_str(&c.to_string());
            out.push_str(" * ");
            render_alg_inner(m, names, Prec::Scale, out);
        }
        AlgTerm::Sum(m, n) => {
            render_alg_inner(m, names, Prec::Scale, out);
            out.push_str(" + ");
            render_alg_inner(n, names, Prec::Scale, out);
        }
    }
    if parens {
        out.push(')');
    }
}

pub fn render_alg(t: &AlgTerm) -> String {
    let fv = super::alg::free_vars_alg(t);
    let mut names = Names::new(fv);
    let mut out = String::new();
    render_alg_inner(t, &mut names, Prec::Sum, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Semiring;
    use crate::syntax::parse::{parse_algebraic, parse_resource, ResInput};

    #[test]
    fn render_examples() {
        // Application(x, [y, y]) -> "x[y, y]"
        let t = ResTerm::app(
            ResTerm::var("x"),
            ResMonomial::new(vec![ResTerm::var("y"), ResTerm::var("y")]),
        );
        assert_eq!(render_res_term(&t), "x[y, y]");

        // FinSum {y -> 1/2} -> "1/2 * y"
        let mut s = FinSum::zero(Semiring::Rat);
        s.add_entry(ResTerm::var("y"), Scalar::ratio(1, 2));
        assert_eq!(render_term_sum(&s), "1/2 * y");

        assert_eq!(render_alg(&AlgTerm::Zero), "0");
    }

    #[test]
    fn round_trip_specific() {
        let ring = Semiring::Rat;
        for src in [
            "\\x. x[x]",
            "(\\x. x)[y][z]",
            "x[\\y. y[], z]",
            "y[] + 2 * y[z]",
        ] {
            let v = parse_resource(src, ring).unwrap();
            let rendered = match &v {
                ResInput::Expr(e) => render_res_expr(e),
                ResInput::TermSum(s) => render_term_sum(s),
                ResInput::MonoSum(s) => render_mono_sum(s),
            };
            let v2 = parse_resource(&rendered, ring).unwrap();
            assert_eq!(v, v2, "round trip failed for {src}: {rendered}");
        }

        for src in [
            "(\\x. x) y",
            "1/2 * (x + 0)",
            "\\x. \\y. x (y 0) + 2 * x",
            "x ((\\x. x x) (\\x. x x))",
        ] {
            let v = parse_algebraic(src, ring).unwrap();
            let rendered = render_alg(&v);
            let v2 = parse_algebraic(&rendered, ring).unwrap();
            assert_eq!(v, v2, "round trip failed for {src}: {rendered}");
        }
    }

    #[test]
    fn binders_avoid_capture_of_free_names() {
        // \. y where the pool's first candidate "x" is free in scope: body
        // mentions free y and free x, binder must not shadow either
        let t = ResTerm::abs(ResTerm::app(
            ResTerm::var("x"),
            ResMonomial::new(vec![ResTerm::var("y"), ResTerm::Var(VarRef::Bound(0))]),
        ));
        // bound references sort before free ones inside the bag
        let rendered = render_res_term(&t);
        assert_eq!(rendered, "\\z. x[z, y]");
    }
}
