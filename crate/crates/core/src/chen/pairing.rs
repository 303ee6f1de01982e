use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use ode_solvers::{DVector, Dopri5, OutputType, System};

use super::collocation::{chen_series_for, Grid};
use super::{ChenError, ChenEvaluation, InputFunction, SegmentPath};
use crate::alphabet::{Letter, Word};
use crate::automata::LinearRepresentation;
use crate::diffring::{q_l, specialize_nc};
use crate::linalg::{dot, Matrix};
use crate::ring::{fmt_q, q_to_f64, Coeff, RatFun, UPoly, Q};

/// `y = ⟨C, R⟩` truncated to the evaluation's bound, with a bound on the
/// omitted tail and the accumulated quadrature error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairValue {
    pub value: f64,
    pub tail: f64,
    pub quadrature_error: f64,
}

/// Words of length at most `bound` with `⟨R, w⟩ ≠ 0`.
pub fn support_words(rep: &LinearRepresentation<Q>, bound: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut stack = vec![(Word::empty(), rep.nu().to_vec())];
    while let Some((w, row)) = stack.pop() {
        if row.iter().all(|c| c.is_zero()) {
            continue;
        }
        if !dot(&row, rep.eta()).is_zero() {
            out.push(w.clone());
        }
        if w.len() < bound {
            for (l, m) in rep.matrices() {
                let mut u = w.clone();
                u.push(l);
                stack.push((u, Matrix::vec_mul(&row, m)));
            }
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// A Chen evaluation restricted to the words needed to pair with `rep`.
pub fn chen_series_for_rep(
    inputs: &BTreeMap<Letter, InputFunction>,
    path: &SegmentPath,
    rep: &LinearRepresentation<Q>,
    bound: usize,
    tol: f64,
) -> Result<ChenEvaluation, ChenError> {
    chen_series_for(inputs, path, &support_words(rep, bound), bound, tol)
}

fn row_norm(m: &Matrix<Q>) -> f64 {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| q_to_f64(m.get(i, j)).abs()).sum::<f64>()).fold(0.0, f64::max)
}

/// `‖ν‖₁ ‖η‖∞ Σ_{n > bound} Kⁿ/n!` with `K = Σ_x ‖μ(x)‖∞ ∫|u_x|`, which
/// bounds `Σ_{|w| > bound} |⟨C, w⟩ ⟨R, w⟩|`.
pub fn tail_bound(
    rep: &LinearRepresentation<Q>,
    inputs: &BTreeMap<Letter, InputFunction>,
    path: &SegmentPath,
    bound: usize,
) -> Result<f64, ChenError> {
    let grid = Grid::new(path, 2);
    let mut k = 0.0;
    for (l, m) in rep.matrices() {
        let u = inputs.get(&l).ok_or(ChenError::MissingInput(l))?;
        let mass = if u.order_at(path.z0) <= -1.0 { f64::INFINITY } else { grid.integral(|s| u.eval(s).abs()).abs() };
        k += row_norm(m) * mass;
    }
    let scale = rep.nu().iter().map(|c| q_to_f64(c).abs()).sum::<f64>()
        * rep.eta().iter().map(|c| q_to_f64(c).abs()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Ok(0.0);
    }
    if !k.is_finite() {
        return Ok(f64::INFINITY);
    }
    // Slight inflation absorbs the quadrature error in K.
    let k = k * (1.0 + 1e-9);
    let mut term = 1.0;
    for n in 1..=bound + 1 {
        term *= k / n as f64;
    }
    let mut sum = 0.0;
    let mut n = bound + 1;
    while term > 0.0 && term > sum * 1e-17 {
        sum += term;
        n += 1;
        term *= k / n as f64;
    }
    Ok(scale * sum)
}

/// `Σ_{|w| ≤ L} ⟨C, w⟩ ⟨R, w⟩` over the evaluation's words.
pub fn pair_series(ev: &ChenEvaluation, rep: &LinearRepresentation<Q>) -> Result<PairValue, ChenError> {
    let mut value = 0.0;
    let mut quadrature_error = 0.0;
    for w in support_words(rep, ev.bound()) {
        let c = q_to_f64(&rep.coeff(&w));
        let v = ev.value(&w).ok_or_else(|| ChenError::Incomplete(w.clone()))?;
        value += c * v;
        quadrature_error += c.abs() * ev.error(&w).unwrap_or(0.0);
    }
    let tail = tail_bound(rep, ev.inputs(), ev.path(), ev.bound())?;
    Ok(PairValue { value, tail, quadrature_error })
}

struct LinearSystem {
    n: usize,
    terms: Vec<(Vec<f64>, InputFunction)>,
}

impl System<f64, DVector<f64>> for LinearSystem {
    fn system(&self, z: f64, q: &DVector<f64>, dq: &mut DVector<f64>) {
        dq.fill(0.0);
        for (m, u) in &self.terms {
            let c = u.eval(z);
            for i in 0..self.n {
                let row = &m[i * self.n..(i + 1) * self.n];
                dq[i] += c * row.iter().zip(q.iter()).map(|(a, b)| a * b).sum::<f64>();
            }
        }
    }
}

/// `q(z1)` for `q' = (Σ_x u_x μ(x)) q`, `q(z0) = η`.
pub fn ode_state(
    rep: &LinearRepresentation<Q>,
    inputs: &BTreeMap<Letter, InputFunction>,
    path: &SegmentPath,
    tol: f64,
) -> Result<Vec<f64>, ChenError> {
    let n = rep.dim();
    let mut terms = Vec::new();
    for (l, m) in rep.matrices() {
        let u = inputs.get(&l).ok_or(ChenError::MissingInput(l))?;
        u.check_path(l, path)?;
        if u.order_at(path.z0) < 0.0 {
            return Err(ChenError::Singular { letter: l, detail: format!("pole at the start {}", path.z0) });
        }
        terms.push((m.entries().map(q_to_f64).collect(), u.clone()));
    }
    let eta: Vec<f64> = rep.eta().iter().map(q_to_f64).collect();
    if n == 0 {
        return Ok(eta);
    }
    let system = LinearSystem { n, terms };
    let span = path.z1 - path.z0;
    // Default controller, sparse output (the dense interpolant is not
    // used), stiffness test off: these linear systems are not stiff.
    let mut solver = Dopri5::from_param(
        system,
        path.z0,
        path.z1,
        span,
        DVector::from_vec(eta),
        tol,
        tol,
        0.9,
        0.04,
        0.2,
        10.0,
        span.abs(),
        0.0,
        1_000_000,
        u32::MAX,
        OutputType::Sparse,
    );
    solver.integrate().map_err(|e| ChenError::Integration(e.to_string()))?;
    let last = solver.y_out().last().ok_or_else(|| ChenError::Integration("no output".into()))?;
    Ok(last.iter().copied().collect())
}

/// `ν q(z1)`: the same pairing computed from the linear system.
pub fn pair_ode(
    rep: &LinearRepresentation<Q>,
    inputs: &BTreeMap<Letter, InputFunction>,
    path: &SegmentPath,
    tol: f64,
) -> Result<f64, ChenError> {
    let q = ode_state(rep, inputs, path, tol)?;
    Ok(rep.nu().iter().zip(&q).map(|(a, b)| q_to_f64(a) * b).sum())
}

/// Rows `v_l = ν μ(Q_l)` over `Q(z)`, `l = 0..=n`, so that `∂^l y = v_l q`.
pub fn derivative_rows(
    rep: &LinearRepresentation<Q>,
    inputs: &BTreeMap<Letter, RatFun>,
    n: usize,
) -> Result<Vec<Vec<RatFun>>, ChenError> {
    let letters: Vec<Letter> = rep.matrices().map(|(l, _)| l).collect();
    let lifted = rep.map(|c| RatFun::from_rational(c));
    let mut rows = Vec::new();
    for l in 0..=n {
        let ql = specialize_nc(&q_l(&letters, l), inputs)?;
        let mut row = vec![RatFun::zero(); rep.dim()];
        for (w, c) in ql.iter() {
            let state = lifted.state_after(w);
            for (r, s) in row.iter_mut().zip(state) {
                *r = r.clone() + c.clone() * s;
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

/// A scalar linear ODE `Σ_l a_l(z) y^(l) = 0` with polynomial coefficients,
/// normalized to coprime integer content and a positive lowest coefficient
/// of the leading `a_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarOde {
    coeffs: Vec<UPoly>,
}

impl ScalarOde {
    /// Normalizes `Σ_l a_l y^(l)`; trailing zero coefficients are dropped.
    pub fn from_coeffs(mut a: Vec<RatFun>) -> Self {
        while a.last().is_some_and(|c| c.is_zero()) {
            a.pop();
        }
        if a.is_empty() {
            return ScalarOde { coeffs: vec![] };
        }
        let den = a.iter().fold(UPoly::one(), |acc, f| {
            let g = UPoly::gcd(&acc, f.denom());
            (acc * f.denom().clone()).div_rem(&g).0
        });
        let mut polys: Vec<UPoly> = a.iter().map(|f| f.numer().clone() * den.div_rem(f.denom()).0).collect();
        let g = polys.iter().fold(UPoly::zero(), |acc, p| UPoly::gcd(&acc, p));
        polys = polys.into_iter().map(|p| p.div_rem(&g).0).collect();
        // Integer content over all coefficients at once.
        let flat = UPoly::new(
            polys.iter().flat_map(|p| p.coeffs().iter().cloned().chain(std::iter::once(Q::zero()))).collect(),
        );
        let (_, content) = flat.primitive_part();
        let lead = polys.last().expect("nonempty").coeffs().iter().find(|c| !c.is_zero()).cloned().expect("nonzero");
        let factor = if lead.is_negative() { -content } else { content };
        let inv = Q::one() / factor;
        ScalarOde { coeffs: polys.into_iter().map(|p| p.scale(&inv)).collect() }
    }

    /// The order `N`; `None` for the empty equation.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[UPoly] {
        &self.coeffs
    }

    /// `Σ_l a_l(z) d_l` for numeric derivative values `d_l = y^(l)(z)`.
    pub fn residual(&self, z: f64, derivatives: &[f64]) -> f64 {
        self.coeffs.iter().zip(derivatives).map(|(a, d)| a.eval_f64(z) * d).sum()
    }
}

fn derivative_name(l: usize) -> String {
    match l {
        0..=3 => format!("y{}", "'".repeat(l)),
        _ => format!("y^({l})"),
    }
}

impl fmt::Display for ScalarOde {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (l, p) in self.coeffs.iter().enumerate().rev() {
            if p.is_zero() {
                continue;
            }
            let terms = p.coeffs().iter().filter(|c| !c.is_zero()).count();
            let (neg, text) = if terms == 1 {
                let (deg, c) = p.coeffs().iter().enumerate().find(|(_, c)| !c.is_zero()).expect("one term");
                let mono = UPoly::monomial(c.abs(), deg);
                let text = if deg == 0 { fmt_q(&c.abs()) } else { mono.fmt_with('z') };
                (c.is_negative(), if text == "1" { String::new() } else { format!("{text}*") })
            } else {
                (false, format!("({})*", p.fmt_with('z')))
            };
            let sign = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            write!(f, "{sign}{text}{}", derivative_name(l))?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        f.write_str(" = 0")
    }
}

/// The least-order linear ODE over `Q(z)` satisfied by `y = ⟨C, R⟩`,
/// found as the first dependence among the rows `v_0, v_1, ...`.
pub fn derive_scalar_ode(
    rep: &LinearRepresentation<Q>,
    inputs: &BTreeMap<Letter, RatFun>,
    max_order: usize,
) -> Result<ScalarOde, ChenError> {
    if rep.dim() == 0 {
        return Ok(ScalarOde::from_coeffs(vec![RatFun::one()]));
    }
    let rows = derivative_rows(rep, inputs, max_order)?;
    for order in 0..=max_order {
        let m = Matrix::from_rows(rows[..=order].to_vec()).transpose();
        if let Some(a) = m.kernel().into_iter().next() {
            return Ok(ScalarOde::from_coeffs(a));
        }
    }
    Err(ChenError::NoDependence(max_order))
}
