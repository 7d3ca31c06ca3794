//! Command-line surface for the resource λ-calculus workbench.

pub mod corpus;
pub mod gen;
pub mod output;
pub mod suites;

use clap::{Parser, Subcommand};
use rlw_core::lambda::{
    approximant, full_iterates, left_iterates, nf_taylor_coeff, nf_taylor_truncated,
    normalize_alg, weak_solvable, Verdict,
};
use rlw_core::reduction::nf;
use rlw_core::scalars::Semiring;
use rlw_core::syntax::{
    canonicalize_alg, parse_algebraic, parse_resource, parse_resource_term, render_alg,
    render_mono_sum, FinSum, ResExpr, ResInput,
};
use rlw_core::taylor::{taylor_coeff, taylor_truncated, TruncationBound};
use std::io::Write;

#[derive(Parser, Debug)]
#[command(name = "rlw", about = "resource lambda-calculus workbench", disable_help_subcommand = true)]
pub struct Cli {
    /// Scalar instance: nat, int, rat or bool
    #[arg(long, global = true, default_value = "rat")]
    pub semiring: String,
    /// Step budget for semi-decidable judgements (RLW_FUEL overrides the default)
    #[arg(long, global = true)]
    pub fuel: Option<u64>,
    /// Resource-term size bound for truncations
    #[arg(long, global = true, default_value_t = 10)]
    pub max_size: u64,
    /// Optional monomial-depth bound for truncations
    #[arg(long, global = true)]
    pub max_depth: Option<u64>,
    /// Seed for randomized suites
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output format: text or json
    #[arg(long, global = true, default_value = "text")]
    pub output: String,
    /// Read terms from a file, one per line ('#' comments)
    #[arg(long, global = true)]
    pub file: Option<std::path::PathBuf>,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Print the canonical form of an algebraic term
    Canon {
        #[arg(allow_hyphen_values = true)]
        term: Option<String>,
    },
    /// Truncated Taylor expansion of an algebraic term
    Expand {
        #[arg(allow_hyphen_values = true)]
        term: Option<String>,
    },
    /// Single Taylor coefficient: term and resource target
    Coeff {
        #[arg(allow_hyphen_values = true)]
        term: String,
        #[arg(allow_hyphen_values = true)]
        target: String,
    },
    /// Resource normal form of a resource expression or sum
    NfRes {
        #[arg(allow_hyphen_values = true)]
        term: Option<String>,
    },
    /// Truncated normal form of the Taylor expansion
    NfTaylor {
        #[arg(allow_hyphen_values = true)]
        term: Option<String>,
    },
    /// Normal approximant at a depth
    Approx {
        #[arg(allow_hyphen_values = true)]
        term: Option<String>,
        #[arg(long, default_value_t = 1)]
        depth: u64,
    },
    /// Weak solvability of an algebraic term
    Solvable {
        #[arg(allow_hyphen_values = true)]
        term: Option<String>,
    },
    /// Normal form by iterated left reduction
    Normalize {
        #[arg(allow_hyphen_values = true)]
        term: Option<String>,
    },
    /// Iterate a reduction strategy
    Reduce {
        #[arg(allow_hyphen_values = true)]
        term: Option<String>,
        #[arg(long, default_value = "left")]
        strategy: String,
        #[arg(long, default_value_t = 1)]
        steps: u64,
    },
    /// Run a named verification suite
    Verify { suite: String },
}

#[derive(Debug, Clone, Copy)]
pub struct Config {
    pub ring: Semiring,
    pub fuel: u64,
    pub max_size: u64,
    pub max_depth: Option<u64>,
    pub seed: u64,
    pub json: bool,
}

fn ring_of(name: &str) -> Option<Semiring> {
    Some(match name {
        "nat" => Semiring::Nat,
        "int" => Semiring::Int,
        "rat" => Semiring::Rat,
        "bool" => Semiring::Bool,
        _ => return None,
    })
}

const EXIT_OK: i32 = 0;
const EXIT_ERR: i32 = 1;
const EXIT_UNKNOWN: i32 = 2;

/// Run the command line. Definite answers exit 0, fuel exhaustion exits 2,
/// errors exit 1.
pub fn run(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_ERR;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    let ring = match ring_of(&cli.semiring) {
        Some(r) => r,
        None => {
            let _ = writeln!(err, "unknown semiring {:?}", cli.semiring);
            return EXIT_ERR;
        }
    };
    let fuel = cli
        .fuel
        .or_else(|| std::env::var("RLW_FUEL").ok().and_then(|v| v.parse().ok()))
        .unwrap_or(500);
    let json = match cli.output.as_str() {
        "json" => true,
        "text" => false,
        other => {
            let _ = writeln!(err, "unknown output format {other:?}");
            return EXIT_ERR;
        }
    };
    let cfg = Config {
        ring,
        fuel,
        max_size: cli.max_size,
        max_depth: cli.max_depth,
        seed: cli.seed,
        json,
    };

    let inputs: Vec<String> = match collect_inputs(&cli) {
        Ok(v) => v,
        Err(msg) => {
            let _ = writeln!(err, "{msg}");
            return EXIT_ERR;
        }
    };

    match &cli.cmd {
        Cmd::Verify { suite } => {
            let report = match suites::verify_suite(
                suite,
                suites::SuiteConfig { seed: cfg.seed, fuel: cfg.fuel, max_size: cfg.max_size },
            ) {
                Some(r) => r,
                None => {
                    let _ = writeln!(
                        err,
                        "unknown suite {suite:?}; available: {}",
                        suites::SUITES.join(", ")
                    );
                    return EXIT_ERR;
                }
            };
            let _ = write!(out, "{}", report.render());
            if report.passed() {
                EXIT_OK
            } else {
                EXIT_ERR
            }
        }
        Cmd::Coeff { term, target } => run_coeff(cfg, term, target, out, err),
        cmd => {
            let mut worst = EXIT_OK;
            if inputs.is_empty() {
                let _ = writeln!(err, "missing term (pass it as an argument or via --file)");
                return EXIT_ERR;
            }
            for input in &inputs {
                let code = run_on_term(cfg, cmd, input, out, err);
                worst = worst.max(code);
            }
            worst
        }
    }
}

fn collect_inputs(cli: &Cli) -> Result<Vec<String>, String> {
    let arg_term = match &cli.cmd {
        Cmd::Canon { term }
        | Cmd::Expand { term }
        | Cmd::NfRes { term }
        | Cmd::NfTaylor { term }
        | Cmd::Approx { term, .. }
        | Cmd::Solvable { term }
        | Cmd::Normalize { term }
        | Cmd::Reduce { term, .. } => term.clone(),
        _ => None,
    };
    let mut inputs = Vec::new();
    if let Some(t) = arg_term {
        inputs.push(t);
    }
    if let Some(path) = &cli.file {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {path:?}: {e}"))?;
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if !line.is_empty() {
                inputs.push(line.to_string());
            }
        }
    }
    Ok(inputs)
}

fn bound_of(cfg: Config) -> TruncationBound {
    match cfg.max_depth {
        Some(d) => TruncationBound::size_and_depth(cfg.max_size, d),
        None => TruncationBound::size(cfg.max_size),
    }
}

fn run_coeff(cfg: Config, term: &str, target: &str, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let m = match parse_algebraic(term, cfg.ring) {
        Ok(m) => m,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            return EXIT_ERR;
        }
    };
    let t = match parse_resource_term(target, cfg.ring) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            return EXIT_ERR;
        }
    };
    match taylor_coeff(cfg.ring, &m, &t) {
        Ok(c) => {
            let _ = writeln!(out, "{c}");
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "{e}");
            EXIT_ERR
        }
    }
}

fn emit_sum(cfg: Config, sum: &FinSum<rlw_core::syntax::ResTerm>, out: &mut dyn Write) {
    let _ = writeln!(out, "{}", output::render_sum(sum, cfg.json));
}

fn run_on_term(cfg: Config, cmd: &Cmd, input: &str, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    macro_rules! parse_alg {
        () => {
            match parse_algebraic(input, cfg.ring) {
                Ok(m) => m,
                Err(e) => {
                    let _ = writeln!(err, "{e}");
                    return EXIT_ERR;
                }
            }
        };
    }
    match cmd {
        Cmd::Canon { .. } => {
            let m = parse_alg!();
            let _ = writeln!(out, "{}", render_alg(canonicalize_alg(&m).term()));
            EXIT_OK
        }
        Cmd::Expand { .. } => {
            let m = parse_alg!();
            match taylor_truncated(cfg.ring, &m, &bound_of(cfg)) {
                Ok(sum) => {
                    emit_sum(cfg, &sum, out);
                    EXIT_OK
                }
                Err(e) => {
                    let _ = writeln!(err, "{e}");
                    EXIT_ERR
                }
            }
        }
        Cmd::NfRes { .. } => match parse_resource(input, cfg.ring) {
            Ok(ResInput::Expr(ResExpr::Term(t))) => {
                let sum = nf(&FinSum::singleton(cfg.ring, t));
                emit_sum(cfg, &sum, out);
                EXIT_OK
            }
            Ok(ResInput::TermSum(s)) => {
                emit_sum(cfg, &nf(&s), out);
                EXIT_OK
            }
            Ok(ResInput::Expr(ResExpr::Mono(m))) => {
                let mut norm = rlw_core::reduction::Normalizer::new(cfg.ring);
                let _ = writeln!(out, "{}", render_mono_sum(&norm.nf_mono(&m)));
                EXIT_OK
            }
            Ok(ResInput::MonoSum(s)) => {
                let mut norm = rlw_core::reduction::Normalizer::new(cfg.ring);
                let mut acc = FinSum::zero(cfg.ring);
                for (m, c) in s.iter() {
                    acc.add_assign(&norm.nf_mono(m).scaled(c));
                }
                let _ = writeln!(out, "{}", render_mono_sum(&acc));
                EXIT_OK
            }
            Err(e) => {
                let _ = writeln!(err, "{e}");
                EXIT_ERR
            }
        },
        Cmd::NfTaylor { .. } => {
            let m = parse_alg!();
            match nf_taylor_truncated(cfg.ring, &m, &bound_of(cfg), cfg.fuel) {
                Ok(Verdict::Definite(sum)) => {
                    emit_sum(cfg, &sum, out);
                    EXIT_OK
                }
                Ok(Verdict::No) => unreachable!(),
                Ok(Verdict::Unknown(k)) => {
                    let _ = writeln!(out, "unknown (fuel spent: {k})");
                    EXIT_UNKNOWN
                }
                Err(e) => {
                    let _ = writeln!(err, "{e}");
                    EXIT_ERR
                }
            }
        }
        Cmd::Approx { depth, .. } => {
            let m = parse_alg!();
            match approximant(cfg.ring, &m, *depth, cfg.fuel) {
                Verdict::Definite(a) => {
                    let _ = writeln!(out, "{}", render_alg(a.term()));
                    EXIT_OK
                }
                Verdict::No => unreachable!(),
                Verdict::Unknown(k) => {
                    let _ = writeln!(out, "unknown (fuel spent: {k})");
                    EXIT_UNKNOWN
                }
            }
        }
        Cmd::Solvable { .. } => {
            let m = parse_alg!();
            match weak_solvable(cfg.ring, &m, cfg.fuel) {
                Verdict::Definite(()) => {
                    let _ = writeln!(out, "solvable");
                    EXIT_OK
                }
                Verdict::No => {
                    let _ = writeln!(out, "unsolvable");
                    EXIT_OK
                }
                Verdict::Unknown(k) => {
                    let _ = writeln!(out, "unknown (fuel spent: {k})");
                    EXIT_UNKNOWN
                }
            }
        }
        Cmd::Normalize { .. } => {
            let m = parse_alg!();
            match normalize_alg(&m, cfg.fuel) {
                Verdict::Definite(n) => {
                    let _ = writeln!(out, "{}", render_alg(n.term()));
                    EXIT_OK
                }
                Verdict::No => {
                    let _ = writeln!(out, "diverges");
                    EXIT_OK
                }
                Verdict::Unknown(k) => {
                    let _ = writeln!(out, "unknown (fuel spent: {k})");
                    EXIT_UNKNOWN
                }
            }
        }
        Cmd::Reduce { strategy, steps, .. } => {
            let m = parse_alg!();
            let result = match strategy.as_str() {
                "left" => left_iterates(&m, *steps),
                "full" => full_iterates(&m, *steps),
                other => {
                    let _ = writeln!(err, "unknown strategy {other:?} (expected left or full)");
                    return EXIT_ERR;
                }
            };
            let _ = writeln!(out, "{}", render_alg(result.term()));
            EXIT_OK
        }
        Cmd::Coeff { .. } | Cmd::Verify { .. } => unreachable!("handled by the caller"),
    }
}

/// Coefficient of a normal resource term in the normalized expansion,
/// exposed for scripting the same path the subcommands use.
pub fn nf_coeff_of(
    cfg: Config,
    term: &str,
    target: &str,
) -> Result<Verdict<rlw_core::scalars::Scalar>, String> {
    let m = parse_algebraic(term, cfg.ring).map_err(|e| e.to_string())?;
    let t = parse_resource_term(target, cfg.ring).map_err(|e| e.to_string())?;
    nf_taylor_coeff(cfg.ring, &m, &t, cfg.fuel).map_err(|e| e.to_string())
}
