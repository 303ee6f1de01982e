use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use ncalg::alphabet::{x, Alphabet, Word};
use ncalg::automata::{
    classify, from_json, minimize, random_rep, rep_conc, rep_difference, rep_star, rep_stuffle, rep_sum,
    rep_shuffle, to_json, words_over, AutomataError, LinearRepresentation, RingKind,
};
use ncalg::chen::{
    chen_series, chen_series_for_rep, derive_scalar_ode, exact_inputs, pair_ode, pair_series, parse_inputs,
    ChenError, SegmentPath,
};
use ncalg::expr::{parse_expression, Expr, ExprError};
use ncalg::hopf::{BasisTable, HopfError};
use ncalg::ring::{Coeff, Field, RatFun, UPoly, Q};
use ncalg::series::NCPoly;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::{AlphabetArg, Cli, Command, Op};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Automata(#[from] AutomataError),
    #[error(transparent)]
    Chen(#[from] ChenError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let ring: RingKind = cli.ring.parse()?;
    let seed = cli.seed;
    match &cli.command {
        Command::Expand { expr, max_length } => {
            let e = parse_expression(expr)?;
            match ring {
                RingKind::Rational => expand::<Q>(&e, *max_length),
                RingKind::Polynomial => expand::<UPoly>(&e, *max_length),
                RingKind::RationalFunction => expand::<RatFun>(&e, *max_length),
            }
        }
        Command::Op { op, lhs, rhs, max_length } => match ring {
            RingKind::Rational => combine::<Q>(*op, lhs, rhs, *max_length, ring, seed),
            RingKind::Polynomial => combine::<UPoly>(*op, lhs, rhs, *max_length, ring, seed),
            RingKind::RationalFunction => combine::<RatFun>(*op, lhs, rhs, *max_length, ring, seed),
        },
        Command::Star { operand: a, max_length } => match ring {
            RingKind::Rational => star::<Q>(a, *max_length, ring, seed),
            RingKind::Polynomial => star::<UPoly>(a, *max_length, ring, seed),
            RingKind::RationalFunction => star::<RatFun>(a, *max_length, ring, seed),
        },
        Command::Bases { alphabet, letters, max_length } => bases(*alphabet, *letters, *max_length),
        Command::Minimize { operand: a } => match ring {
            RingKind::Rational => Ok(Output::ok(to_json(&minimize(&operand::<Q>(a, seed)?), ring) + "\n")),
            _ => Ok(Output::ok(
                to_json(&minimize(&operand::<RatFun>(a, seed)?), RingKind::RationalFunction) + "\n",
            )),
        },
        Command::Classify { operand: a } => {
            let class = match ring {
                RingKind::Rational => classify(&operand::<Q>(a, seed)?),
                _ => classify(&operand::<RatFun>(a, seed)?),
            };
            Ok(Output::ok(format!("{class}\n")))
        }
        Command::CheckIdentity { lhs, rhs, max_length } => match ring {
            RingKind::Rational => check_identity::<Q>(lhs, rhs, *max_length, seed),
            _ => check_identity::<RatFun>(lhs, rhs, *max_length, seed),
        },
        Command::Chen { inputs, z0, z, max_length, tol } => chen(inputs, *z0, *z, *max_length, *tol),
        Command::Pair { rep, inputs, z0, z, max_length, tol } => {
            pair(&operand::<Q>(rep, seed)?, inputs, *z0, *z, *max_length, *tol)
        }
        Command::DeriveOde { rep, inputs, max_order } => {
            let r = operand::<Q>(rep, seed)?;
            let exact = exact_inputs(&parse_inputs(inputs)?)?;
            let ode = derive_scalar_ode(&r, &exact, max_order.unwrap_or(r.dim()))?;
            Ok(Output::ok(format!("{ode}\n")))
        }
    }
}

/// An expression, a representation file or `random:<dim>`.
fn operand<C: Coeff>(text: &str, seed: u64) -> Result<LinearRepresentation<C>, CliError> {
    if let Some(dim) = text.strip_prefix("random:") {
        let dim: usize = dim.parse().map_err(|_| CliError::Usage(format!("bad dimension in {text:?}")))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        return Ok(random_rep(&mut rng, &[x(0), x(1)], dim).map(C::from_rational));
    }
    if Path::new(text).is_file() {
        let json = fs::read_to_string(text).map_err(|source| CliError::Io { path: text.to_string(), source })?;
        return Ok(from_json(&json)?);
    }
    Ok(parse_expression(text)?.to_rep()?)
}

fn emit<C: Coeff>(r: &LinearRepresentation<C>, max_length: Option<usize>, ring: RingKind) -> Output {
    match max_length {
        Some(l) => Output::ok(format!("{}\n", r.expand(l).poly())),
        None => Output::ok(to_json(r, ring) + "\n"),
    }
}

fn expand<C: Coeff>(e: &Expr, max_length: Option<usize>) -> Result<Output, CliError> {
    let p: NCPoly<C> = match max_length {
        None if e.is_polynomial() => e.to_poly()?,
        None => return Err(CliError::Usage("the expression has a star; give --max-length".into())),
        Some(l) => e.expand::<C>(l)?.into_poly(),
    };
    Ok(Output::ok(format!("{p}\n")))
}

fn combine<C: Coeff>(
    op: Op,
    lhs: &str,
    rhs: &str,
    max_length: Option<usize>,
    ring: RingKind,
    seed: u64,
) -> Result<Output, CliError> {
    let (a, b) = (operand::<C>(lhs, seed)?, operand::<C>(rhs, seed)?);
    let r = match op {
        Op::Sum => rep_sum(&a, &b),
        Op::Conc => rep_conc(&a, &b),
        Op::Shuffle => rep_shuffle(&a, &b),
        Op::Stuffle => rep_stuffle(&a, &b)?,
    };
    Ok(emit(&r, max_length, ring))
}

fn star<C: Coeff>(a: &str, max_length: Option<usize>, ring: RingKind, seed: u64) -> Result<Output, CliError> {
    let r = if a.starts_with("random:") || Path::new(a).is_file() {
        rep_star(&operand::<C>(a, seed)?)?
    } else {
        Expr::Star(Box::new(parse_expression(a)?)).to_rep()?
    };
    Ok(emit(&r, max_length, ring))
}

fn bases(alphabet: AlphabetArg, letters: u32, max_length: usize) -> Result<Output, CliError> {
    let alphabet = match alphabet {
        AlphabetArg::X if letters == 0 => return Err(CliError::Usage("--letters must be positive".into())),
        AlphabetArg::X => Alphabet::x(letters),
        AlphabetArg::Y => Alphabet::y(),
    };
    Ok(Output::ok(BasisTable::build(&alphabet, max_length).golden()))
}

fn check_identity<C: Field>(lhs: &str, rhs: &str, max_length: Option<usize>, seed: u64) -> Result<Output, CliError> {
    let (a, b) = (operand::<C>(lhs, seed)?, operand::<C>(rhs, seed)?);
    let letters: Vec<_> = a.letters().chain(b.letters()).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    let (holds, how, window) = match max_length {
        Some(l) => (a.expand(l) == b.expand(l), format!("up to length {l}"), l),
        None => {
            let d = minimize(&rep_difference(&a, &b));
            // Some word of length below dim(d) tells the sides apart.
            let grade = letters.iter().map(|l| l.grade()).max().unwrap_or(1);
            (d.dim() == 0, "exactly".to_string(), d.dim() * grade)
        }
    };
    if holds {
        return Ok(Output::ok(format!("identity holds {how}\n")));
    }
    let mut words = words_over(&letters, window);
    words.sort_by(Word::graded_cmp);
    let w = words.into_iter().find(|w| a.coeff(w) != b.coeff(w)).expect("a distinguishing word");
    Ok(Output { text: format!("identity fails at {w}: {} vs {}\n", a.coeff(&w), b.coeff(&w)), code: 1 })
}

fn path(z0: f64, z: f64) -> Result<SegmentPath, CliError> {
    Ok(SegmentPath::new(z0, z)?)
}

fn chen(inputs: &str, z0: f64, z: f64, max_length: usize, tol: f64) -> Result<Output, CliError> {
    let inputs = parse_inputs(inputs)?;
    let ev = chen_series(&inputs, &path(z0, z)?, max_length, tol)?;
    let letters: Vec<_> = inputs.keys().copied().collect();
    let mut words = words_over(&letters, max_length);
    words.sort_by(Word::graded_cmp);
    let mut text = String::from("word\tvalue\terror\n");
    for w in words {
        match (ev.value(&w), ev.error(&w)) {
            (Some(v), e) => writeln!(text, "{w}\t{v}\t{:.1e}", e.unwrap_or(0.0)),
            (None, _) => writeln!(text, "{w}\tdivergent\t-"),
        }
        .expect("string");
    }
    Ok(Output::ok(text))
}

fn pair(r: &LinearRepresentation<Q>, inputs: &str, z0: f64, z: f64, bound: usize, tol: f64) -> Result<Output, CliError> {
    let inputs = parse_inputs(inputs)?;
    let p = path(z0, z)?;
    let ev = chen_series_for_rep(&inputs, &p, r, bound, tol)?;
    let pv = pair_series(&ev, r)?;
    let mut text = String::new();
    writeln!(text, "series\t{}", pv.value).expect("string");
    writeln!(text, "tail\t{:.3e}", pv.tail).expect("string");
    writeln!(text, "quadrature_error\t{:.1e}", pv.quadrature_error).expect("string");
    match pair_ode(r, &inputs, &p, tol) {
        Ok(v) => writeln!(text, "ode\t{v}").expect("string"),
        Err(e) => {
            eprintln!("ncalg: no ODE value: {e}");
            writeln!(text, "ode\t-").expect("string");
        }
    }
    Ok(Output::ok(text))
}
