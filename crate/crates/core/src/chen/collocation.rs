use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::num::NonZeroUsize;
use std::sync::OnceLock;

use gauss_quad::legendre::GaussLegendre;

use super::{ChenError, InputFunction, SegmentPath};
use crate::alphabet::{Letter, Word};
use crate::automata::words_over;
use crate::ring::q_to_f64;
use crate::series::{t_log, NCPoly, Truncated};

const NODES: usize = 16;
const MAX_LEVEL: usize = 6;

/// Gauss–Legendre rule on `[-1, 1]` with its integration matrix:
/// `int[j][k]` integrates the `k`-th Lagrange basis polynomial from `-1`
/// to node `j`.
struct Rule {
    x: Vec<f64>,
    w: Vec<f64>,
    int: Vec<Vec<f64>>,
}

fn legendre_values(x: f64, n: usize) -> Vec<f64> {
    let mut p = vec![1.0, x];
    for m in 1..n {
        let next = ((2 * m + 1) as f64 * x * p[m] - m as f64 * p[m - 1]) / (m + 1) as f64;
        p.push(next);
    }
    p
}

fn rule() -> &'static Rule {
    static RULE: OnceLock<Rule> = OnceLock::new();
    RULE.get_or_init(|| {
        let gl = GaussLegendre::new(NonZeroUsize::new(NODES).expect("positive"));
        let mut pairs: Vec<(f64, f64)> = gl.iter().map(|(x, w)| (*x, *w)).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (x, w): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
        let p: Vec<Vec<f64>> = x.iter().map(|&t| legendre_values(t, NODES)).collect();
        let int = (0..NODES)
            .map(|j| {
                (0..NODES)
                    .map(|k| {
                        let tail: f64 = (1..NODES).map(|m| p[k][m] * (p[j][m + 1] - p[j][m - 1])).sum();
                        w[k] / 2.0 * ((x[j] + 1.0) + tail)
                    })
                    .collect()
            })
            .collect();
        Rule { x, w, int }
    })
}

/// Panels in the path parameter `τ ∈ [0, 1]`, graded geometrically toward
/// the start and halved `level` times.
fn mesh(level: usize) -> Vec<(f64, f64)> {
    let rho: f64 = 0.25;
    let grading = 10 + 5 * level as i32;
    let mut breaks = vec![0.0];
    breaks.extend((1..=grading).rev().map(|k| rho.powi(k)));
    breaks.extend((1..=3).map(|i| rho + (1.0 - rho) * i as f64 / 3.0));
    let pieces = 1usize << level;
    breaks
        .windows(2)
        .flat_map(|b| {
            let (a, h) = (b[0], (b[1] - b[0]) / pieces as f64);
            (0..pieces).map(move |i| (a + h * i as f64, a + h * (i + 1) as f64))
        })
        .collect()
}

/// Collocation grid along the path: node positions and panel lengths in `z`.
pub(crate) struct Grid {
    nodes: Vec<f64>,
    steps: Vec<f64>,
}

impl Grid {
    pub(crate) fn new(path: &SegmentPath, level: usize) -> Self {
        let r = rule();
        let span = path.z1 - path.z0;
        let mut nodes = Vec::new();
        let mut steps = Vec::new();
        for (a, b) in mesh(level) {
            steps.push((b - a) * span);
            for &x in &r.x {
                nodes.push(path.z0 + span * (a + (b - a) * (x + 1.0) / 2.0));
            }
        }
        Grid { nodes, steps }
    }

    /// `∫_{z0}^{z1} f`.
    pub(crate) fn integral(&self, f: impl Fn(f64) -> f64) -> f64 {
        let r = rule();
        self.steps
            .iter()
            .enumerate()
            .map(|(p, h)| h / 2.0 * (0..NODES).map(|k| r.w[k] * f(self.nodes[p * NODES + k])).sum::<f64>())
            .sum()
    }

    /// Node values and final value of `s ↦ ∫_{z0}^{s} g`, given `g` at the nodes.
    fn antiderivative(&self, g: &[f64]) -> (Vec<f64>, f64) {
        let r = rule();
        let mut out = Vec::with_capacity(g.len());
        let mut start = 0.0;
        for (p, h) in self.steps.iter().enumerate() {
            let gp = &g[p * NODES..(p + 1) * NODES];
            for j in 0..NODES {
                out.push(start + h / 2.0 * (0..NODES).map(|k| r.int[j][k] * gp[k]).sum::<f64>());
            }
            start += h / 2.0 * (0..NODES).map(|k| r.w[k] * gp[k]).sum::<f64>();
        }
        (out, start)
    }
}

/// Values at the end of the path of all words in `words` (suffix-closed,
/// sorted by length), using `α(x v)(s) = ∫_{z0}^{s} u_x α(v)`.
fn integrate_words(
    inputs: &BTreeMap<Letter, InputFunction>,
    words: &[Word],
    grid: &Grid,
) -> BTreeMap<Word, f64> {
    let u: BTreeMap<Letter, Vec<f64>> =
        inputs.iter().map(|(l, f)| (*l, grid.nodes.iter().map(|&s| f.eval(s)).collect())).collect();
    let mut node_values: HashMap<Word, Vec<f64>> = HashMap::new();
    node_values.insert(Word::empty(), vec![1.0; grid.nodes.len()]);
    let mut out = BTreeMap::new();
    out.insert(Word::empty(), 1.0);
    for w in words.iter().filter(|w| !w.is_empty()) {
        let x = w.first().expect("nonempty");
        let inner = &node_values[&w.tail()];
        let g: Vec<f64> = u[&x].iter().zip(inner).map(|(a, b)| a * b).collect();
        let (vals, end) = grid.antiderivative(&g);
        node_values.insert(w.clone(), vals);
        out.insert(w.clone(), end);
    }
    out
}

/// Whether the iterated integral of `w` converges at `z0`, tracking the
/// order of vanishing of each suffix integral.
fn converges(w: &Word, inputs: &BTreeMap<Letter, InputFunction>, z0: f64) -> bool {
    let mut order = 0.0;
    for x in w.letters().iter().rev() {
        let q = inputs[x].order_at(z0);
        if order + q <= -1.0 {
            return false;
        }
        order += q + 1.0;
    }
    true
}

fn suffix_closure(words: &[Word]) -> Vec<Word> {
    let mut set = BTreeSet::new();
    for w in words {
        let mut v = w.clone();
        while !v.is_empty() {
            set.insert(v.clone());
            v = v.tail();
        }
    }
    let mut out: Vec<Word> = set.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

type Estimated = (BTreeMap<Word, f64>, BTreeMap<Word, f64>);

/// Refines the mesh until successive values agree to `tol` (relative for
/// values above one).
fn converge(
    inputs: &BTreeMap<Letter, InputFunction>,
    words: &[Word],
    path: &SegmentPath,
    tol: f64,
) -> Result<Estimated, ChenError> {
    let mut prev = integrate_words(inputs, words, &Grid::new(path, 0));
    let mut worst = (Word::empty(), f64::INFINITY);
    for level in 1..=MAX_LEVEL {
        let cur = integrate_words(inputs, words, &Grid::new(path, level));
        let errors: BTreeMap<Word, f64> = cur.iter().map(|(w, v)| (w.clone(), (v - prev[w]).abs())).collect();
        worst = (Word::empty(), 0.0);
        for (w, e) in &errors {
            let scaled = e / cur[w].abs().max(1.0);
            if scaled > worst.1 || scaled.is_nan() {
                worst = (w.clone(), scaled);
            }
        }
        if worst.1 <= tol {
            return Ok((cur, errors));
        }
        prev = cur;
    }
    Err(ChenError::NoConvergence { word: worst.0, estimate: worst.1 })
}

/// Coefficients `⟨C_{z0⇝z1}, w⟩` on a set of words.
#[derive(Clone, Debug)]
pub struct ChenEvaluation {
    letters: Vec<Letter>,
    inputs: BTreeMap<Letter, InputFunction>,
    path: SegmentPath,
    bound: usize,
    values: BTreeMap<Word, f64>,
    errors: BTreeMap<Word, f64>,
    divergent: Vec<Word>,
    complete: bool,
}

impl ChenEvaluation {
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn inputs(&self) -> &BTreeMap<Letter, InputFunction> {
        &self.inputs
    }

    pub fn path(&self) -> &SegmentPath {
        &self.path
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn value(&self, w: &Word) -> Option<f64> {
        self.values.get(w).copied()
    }

    pub fn error(&self, w: &Word) -> Option<f64> {
        self.errors.get(w).copied()
    }

    pub fn values(&self) -> &BTreeMap<Word, f64> {
        &self.values
    }

    /// Words of length at most the bound whose integrals diverge.
    pub fn divergent(&self) -> &[Word] {
        &self.divergent
    }

    /// True when every word up to the bound has a value.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Overwrites a value, e.g. to build a negative control.
    pub fn set_value(&mut self, w: &Word, value: f64) {
        self.values.insert(w.clone(), value);
    }
}

fn check_inputs(
    inputs: &BTreeMap<Letter, InputFunction>,
    letters: impl IntoIterator<Item = Letter>,
    path: &SegmentPath,
) -> Result<(), ChenError> {
    for l in letters {
        inputs.get(&l).ok_or(ChenError::MissingInput(l))?.check_path(l, path)?;
    }
    Ok(())
}

/// All coefficients on words of length at most `bound` over the input
/// letters; words whose integrals diverge at the start are listed apart.
pub fn chen_series(
    inputs: &BTreeMap<Letter, InputFunction>,
    path: &SegmentPath,
    bound: usize,
    tol: f64,
) -> Result<ChenEvaluation, ChenError> {
    let letters: Vec<Letter> = inputs.keys().copied().collect();
    check_inputs(inputs, letters.iter().copied(), path)?;
    let (good, divergent): (Vec<Word>, Vec<Word>) =
        words_over(&letters, bound).into_iter().partition(|w| converges(w, inputs, path.z0));
    let words = suffix_closure(&good);
    let (values, errors) = converge(inputs, &words, path, tol)?;
    Ok(ChenEvaluation {
        letters,
        inputs: inputs.clone(),
        path: *path,
        bound,
        values,
        errors,
        complete: divergent.is_empty(),
        divergent,
    })
}

/// Coefficients on the given words and their suffixes only.
pub fn chen_series_for(
    inputs: &BTreeMap<Letter, InputFunction>,
    path: &SegmentPath,
    words: &[Word],
    bound: usize,
    tol: f64,
) -> Result<ChenEvaluation, ChenError> {
    let words = suffix_closure(words);
    let letters: BTreeSet<Letter> = words.iter().flat_map(|w| w.letters().to_vec()).collect();
    check_inputs(inputs, letters.iter().copied(), path)?;
    if let Some(w) = words.iter().find(|w| !converges(w, inputs, path.z0)) {
        return Err(ChenError::Divergent(w.clone()));
    }
    let (values, errors) = converge(inputs, &words, path, tol)?;
    Ok(ChenEvaluation {
        letters: letters.into_iter().collect(),
        inputs: inputs.clone(),
        path: *path,
        bound,
        values,
        errors,
        divergent: Vec::new(),
        complete: false,
    })
}

/// One iterated integral with its error estimate.
pub fn iterated_integral(
    word: &Word,
    inputs: &BTreeMap<Letter, InputFunction>,
    path: &SegmentPath,
    tol: f64,
) -> Result<(f64, f64), ChenError> {
    let ev = chen_series_for(inputs, path, std::slice::from_ref(word), word.len(), tol)?;
    Ok((ev.values[word], ev.errors.get(word).copied().unwrap_or(0.0)))
}

fn shuffle_pairs(ev: &ChenEvaluation) -> Vec<(Word, Word, NCPoly<crate::ring::Q>)> {
    let words: Vec<&Word> = ev.values.keys().filter(|w| !w.is_empty()).collect();
    let mut out = Vec::new();
    for (i, u) in words.iter().enumerate() {
        for v in &words[i..] {
            if u.len() + v.len() <= ev.bound {
                let s = NCPoly::word((*u).clone()).shuffle(&NCPoly::word((*v).clone()));
                out.push(((*u).clone(), (*v).clone(), s));
            }
        }
    }
    out
}

/// Largest `|⟨C, u ⧢ v⟩ - ⟨C, u⟩⟨C, v⟩|` over nonempty `u`, `v` with
/// `|u| + |v| ≤ bound` whose shuffle is covered by the evaluation.
pub fn friedrichs_check(ev: &ChenEvaluation) -> f64 {
    let mut worst: f64 = 0.0;
    for (u, v, s) in shuffle_pairs(ev) {
        let Some(lhs) = s.iter().map(|(w, c)| ev.value(w).map(|x| q_to_f64(c) * x)).sum::<Option<f64>>() else {
            continue;
        };
        worst = worst.max((lhs - ev.values[&u] * ev.values[&v]).abs());
    }
    worst
}

/// The truncated logarithm of a complete evaluation.
pub fn log_series(ev: &ChenEvaluation) -> Result<Truncated<f64>, ChenError> {
    if let Some(w) = ev.divergent.first() {
        return Err(ChenError::Incomplete(w.clone()));
    }
    let s = Truncated::new(NCPoly::from_terms(ev.values.iter().map(|(w, v)| (w.clone(), *v))), ev.bound);
    Ok(t_log(&s, ev.bound)?)
}

/// Largest `|⟨log C, u ⧢ v⟩|` over nonempty `u`, `v`: the defect of
/// primitivity of the logarithm.
pub fn primitive_log_check(ev: &ChenEvaluation) -> Result<f64, ChenError> {
    if !ev.complete {
        let missing = ev.divergent.first().cloned().unwrap_or_else(Word::empty);
        return Err(ChenError::Incomplete(missing));
    }
    let log = log_series(ev)?;
    let mut worst: f64 = 0.0;
    for (_, _, s) in shuffle_pairs(ev) {
        let v: f64 = s.iter().map(|(w, c)| q_to_f64(c) * log.poly().coeff(w)).sum();
        worst = worst.max(v.abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integration_matrix_is_exact_on_polynomials() {
        let r = rule();
        for deg in 0..NODES {
            let f: Vec<f64> = r.x.iter().map(|t| t.powi(deg as i32)).collect();
            for j in 0..NODES {
                let got: f64 = (0..NODES).map(|k| r.int[j][k] * f[k]).sum();
                let exact = (r.x[j].powi(deg as i32 + 1) - (-1f64).powi(deg as i32 + 1)) / (deg + 1) as f64;
                assert!((got - exact).abs() < 1e-13, "degree {deg}, node {j}");
            }
        }
        assert!((r.w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn mesh_covers_unit_interval() {
        for level in 0..3 {
            let m = mesh(level);
            assert_eq!(m.first().unwrap().0, 0.0);
            assert!((m.last().unwrap().1 - 1.0).abs() < 1e-15);
            assert!(m.windows(2).all(|p| p[0].1 == p[1].0));
        }
    }
}
