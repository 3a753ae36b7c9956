//! `φ_G(D) = inf λ(f)/μ(f)` over real class functions positive only on `D`
//! with positive mean, as a linear program.
//!
//! With `μ(f) = 1` fixed, the objective is `Σ_π dim π |f̂(π)|`, linearized by
//! `t_π ≥ ±f̂(π)`. Averaging a minimizer over any symmetry of `(G, D)` keeps it
//! optimal, so the variables can be one value per symmetry orbit of classes:
//! Galois orbits (power maps by units mod the table modulus) on the exact path,
//! inversion orbits on the float path, single classes on the relaxed path.

mod candidates;
mod reduce;
pub mod simplex;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

use crate::characters::CharacterTable;
use crate::error::{Error, Result};
use crate::littlewood::{lambda_norm, lambda_of_set, ClassFunction};
use crate::nt::{euler_phi, unit_group_generators};
use crate::sets::ClassSet;
use simplex::{solve, Lp, LpNum};

pub use candidates::{candidate_fixed_points, candidate_generators, Candidate, FixedPointKind};
pub use reduce::{phi_quotient_reduce, PhiReduction};

/// Directions of the polygonal outer approximation of `|z|`.
pub const RELAXATION_DIRECTIONS: usize = 32;

/// Seed of the probe functional for alternative optima.
const PROBE_SEED: u64 = 0x5eed_0f_f1;

/// Relative spread of the probe functional that counts as a second optimum in
/// float mode.
const PROBE_TOLERANCE: f64 = 1e-6;

/// A `φ` problem: a table and a nonempty class set.
pub struct PhiInstance<'a> {
    table: &'a CharacterTable,
    set: ClassSet,
    symmetric: bool,
}

impl<'a> PhiInstance<'a> {
    pub fn new(table: &'a CharacterTable, set: ClassSet) -> Result<Self> {
        if set.group() != table.group() {
            return Err(Error::GroupMismatch("set and table are on different groups".into()));
        }
        if set.is_empty() {
            return Err(Error::invalid("φ needs a nonempty set"));
        }
        let symmetric = set.is_symmetric();
        Ok(PhiInstance { table, set, symmetric })
    }

    pub fn table(&self) -> &CharacterTable {
        self.table
    }

    pub fn set(&self) -> &ClassSet {
        &self.set
    }

    pub fn symmetric(&self) -> bool {
        self.symmetric
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PhiFlags {
    pub exact: bool,
    /// `|f̂|` was replaced by its polygonal approximation.
    pub relaxed: bool,
    pub multiple_optima: bool,
    /// The solver failed and the interval is the closed-form sandwich.
    pub numerical_failure: bool,
}

#[derive(Clone, Debug)]
pub struct PhiSolution {
    pub lower: f64,
    pub upper: f64,
    pub exact_value: Option<BigRational>,
    /// A minimizer normalized to `Σ_g |f*(g)| = 1`.
    pub f_star: ClassFunction,
    /// Dual multipliers: one per linearized row, then the mean row.
    pub dual: Vec<f64>,
    pub flags: PhiFlags,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhiMode {
    Auto,
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhiBounds {
    /// `|G|/|D|`.
    pub lower: f64,
    /// `λ(D) |G|/|D|`.
    pub upper_littlewood: f64,
    /// `|G|/√|D|`.
    pub upper_cauchy_schwarz: f64,
}

pub fn phi_bounds(inst: &PhiInstance) -> Result<PhiBounds> {
    let n = inst.table.group().order() as f64;
    let d = inst.set.size() as f64;
    let lam = lambda_of_set(&inst.set, inst.table)?.lambda.value();
    Ok(PhiBounds { lower: n / d, upper_littlewood: lam * n / d, upper_cauchy_schwarz: n / d.sqrt() })
}

/// LP data over orbit variables `f_o`.
#[derive(Clone)]
struct Model<T> {
    orbits: Vec<Vec<usize>>,
    in_d: Vec<bool>,
    /// Mean row: `μ(f) = Σ_o s_o f_o`.
    mean: Vec<T>,
    /// Rows `t_r ≥ a · f`, as `(r, a)`.
    rows: Vec<(usize, Vec<T>)>,
    weights: Vec<T>,
}

struct Layout {
    /// Column of `p_o`, and of `q_o` for orbits inside `D`.
    p: Vec<usize>,
    q: Vec<Option<usize>>,
    t0: usize,
    cols: usize,
}

impl<T: LpNum> Model<T> {
    fn layout(&self) -> Layout {
        let mut p = Vec::new();
        let mut q = Vec::new();
        let mut col = 0;
        for &inside in &self.in_d {
            p.push(col);
            col += 1;
            q.push(if inside {
                col += 1;
                Some(col - 1)
            } else {
                None
            });
        }
        let t0 = col;
        let cols = t0 + self.weights.len() + self.rows.len();
        Layout { p, q, t0, cols }
    }

    /// Coefficients of `Σ_o a_o f_o` on the split columns.
    fn put(&self, lay: &Layout, row: &mut [T], a: &[T], sign: &T) {
        for (o, ao) in a.iter().enumerate() {
            let v = ao.mul(sign);
            match lay.q[o] {
                Some(qc) => {
                    row[lay.p[o]] = v.clone();
                    row[qc] = v.neg();
                }
                None => row[lay.p[o]] = v.neg(),
            }
        }
    }

    fn program(&self, lay: &Layout) -> Lp<T> {
        let mut a = Vec::with_capacity(self.rows.len() + 1);
        let mut b = Vec::with_capacity(self.rows.len() + 1);
        for (i, (r, coeffs)) in self.rows.iter().enumerate() {
            let mut row = vec![T::zero(); lay.cols];
            self.put(lay, &mut row, coeffs, &T::from_i64(-1));
            row[lay.t0 + r] = T::one();
            row[lay.t0 + self.weights.len() + i] = T::from_i64(-1);
            a.push(row);
            b.push(T::zero());
        }
        let mut row = vec![T::zero(); lay.cols];
        self.put(lay, &mut row, &self.mean, &T::one());
        a.push(row);
        b.push(T::one());
        let mut c = vec![T::zero(); lay.cols];
        for (r, w) in self.weights.iter().enumerate() {
            c[lay.t0 + r] = w.clone();
        }
        Lp { a, b, c }
    }

    fn orbit_values(&self, lay: &Layout, x: &[T]) -> Vec<T> {
        (0..self.orbits.len())
            .map(|o| match lay.q[o] {
                Some(qc) => x[lay.p[o]].sub(&x[qc]),
                None => x[lay.p[o]].neg(),
            })
            .collect()
    }

    /// The program restricted to the optimal face `Σ w_r t_r = optimum`, with
    /// objective `±` a seeded functional of `f`.
    fn probe_program(&self, lay: &Layout, optimum: &T, sign: &T) -> Lp<T> {
        let mut lp = self.program(lay);
        let mut row = vec![T::zero(); lay.cols];
        for (r, w) in self.weights.iter().enumerate() {
            row[lay.t0 + r] = w.clone();
        }
        lp.a.push(row);
        lp.b.push(optimum.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED);
        let r: Vec<T> = (0..self.orbits.len()).map(|_| T::from_i64(rng.random_range(-3..=3))).collect();
        let mut obj = vec![T::zero(); lay.cols];
        self.put(lay, &mut obj, &r, sign);
        lp.c = obj;
        lp
    }

    /// Whether the optimal face contains points with different `f`: minimizes
    /// and maximizes a seeded functional of `f` subject to optimality.
    fn probe_multiple(&self, lay: &Layout, optimum: &T) -> bool {
        let lo = solve(&self.probe_program(lay, optimum, &T::one()));
        let hi = solve(&self.probe_program(lay, optimum, &T::from_i64(-1)));
        match (lo, hi) {
            (Ok(lo), Ok(hi)) => lo.value.add(&hi.value).neg().is_pos(),
            _ => false,
        }
    }
}

fn class_function_from_orbits(inst: &PhiInstance, orbits: &[Vec<usize>], vals: &[f64]) -> Result<ClassFunction> {
    let mut v = vec![0.0; inst.set.group().class_count()];
    for (o, cs) in orbits.iter().enumerate() {
        for &c in cs {
            v[c] = vals[o];
        }
    }
    ClassFunction::real(inst.set.group(), v)
}

/// Galois orbits of classes under `c ↦ c^k`, `k ∈ (Z/m)*`.
fn galois_orbits(inst: &PhiInstance) -> Vec<Vec<usize>> {
    let g = inst.table.group();
    let gens = unit_group_generators(inst.table.modulus());
    let mut seen = vec![false; g.class_count()];
    let mut out = Vec::new();
    for c in 0..g.class_count() {
        if seen[c] {
            continue;
        }
        seen[c] = true;
        let mut orbit = vec![c];
        let mut i = 0;
        while i < orbit.len() {
            for &k in &gens {
                let d = g.class_power(orbit[i], k as i64);
                if !seen[d] {
                    seen[d] = true;
                    orbit.push(d);
                }
            }
            i += 1;
        }
        out.push(orbit);
    }
    out
}

fn exact_model(inst: &PhiInstance) -> Option<Model<BigRational>> {
    let t = inst.table;
    if !t.is_exact() {
        return None;
    }
    let g = t.group();
    let orbits = galois_orbits(inst);
    if orbits.iter().any(|o| o.iter().any(|&c| inst.set.contains(c) != inst.set.contains(o[0]))) {
        return None;
    }
    let m = t.modulus();
    let denom = BigInt::from(g.order() as u64 * euler_phi(m));
    // Σ_{c ∈ o} |c| χ(c) = |c₀| |o| Tr χ(c₀) / φ(m).
    let mass: Vec<u64> = orbits.iter().map(|o| g.class_size(o[0]) * o.len() as u64).collect();
    let mut groups: HashMap<Vec<BigRational>, usize> = HashMap::new();
    let mut rows = Vec::new();
    let mut weights: Vec<BigRational> = Vec::new();
    for pi in 0..t.irrep_count() {
        let mut a = Vec::with_capacity(orbits.len());
        for (o, cs) in orbits.iter().enumerate() {
            let tr = t.exact_value(pi, cs[0])?.trace(m);
            a.push(BigRational::new(BigInt::from(tr) * BigInt::from(mass[o]), denom.clone()));
        }
        merge_row(&mut groups, &mut rows, &mut weights, a, BigRational::from_i64(t.dim(pi) as i64), true);
    }
    let mean = mass.iter().map(|&s| BigRational::new(BigInt::from(s), BigInt::from(g.order()))).collect();
    let in_d = orbits.iter().map(|o| inst.set.contains(o[0])).collect();
    Some(Model { orbits, in_d, mean, rows, weights })
}

/// Adds `t_r ≥ ±a·f` for a coefficient vector, merging weights of repeated
/// vectors (up to sign) and dropping zero vectors.
fn merge_row<T: LpNum + Keyed>(
    groups: &mut HashMap<T::Key, usize>,
    rows: &mut Vec<(usize, Vec<T>)>,
    weights: &mut Vec<T>,
    a: Vec<T>,
    w: T,
    both_signs: bool,
) {
    let Some(first) = a.iter().find(|v| !v.is_zero_num()) else { return };
    let a = if first.is_neg() { a.iter().map(LpNum::neg).collect() } else { a };
    let key = T::key(&a);
    match groups.get(&key) {
        Some(&r) => weights[r] = weights[r].add(&w),
        None => {
            let r = weights.len();
            groups.insert(key, r);
            weights.push(w);
            if both_signs {
                rows.push((r, a.iter().map(LpNum::neg).collect()));
            }
            rows.push((r, a));
        }
    }
}

/// Hash keys for deduplicating coefficient rows.
trait Keyed: Sized {
    type Key: std::hash::Hash + Eq;
    fn key(a: &[Self]) -> Self::Key;
}

impl Keyed for BigRational {
    type Key = Vec<BigRational>;
    fn key(a: &[Self]) -> Self::Key {
        a.to_vec()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct F(f64);

impl std::hash::Hash for F {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.to_bits().hash(state)
    }
}
impl Eq for F {}

impl Keyed for F {
    type Key = Vec<i64>;
    fn key(a: &[Self]) -> Self::Key {
        a.iter().map(|x| (x.0 * 1e9).round() as i64).collect()
    }
}

impl LpNum for F {
    fn zero() -> Self {
        F(0.0)
    }
    fn one() -> Self {
        F(1.0)
    }
    fn from_i64(v: i64) -> Self {
        F(v as f64)
    }
    fn add(&self, o: &Self) -> Self {
        F(self.0 + o.0)
    }
    fn sub(&self, o: &Self) -> Self {
        F(self.0 - o.0)
    }
    fn mul(&self, o: &Self) -> Self {
        F(self.0 * o.0)
    }
    fn div(&self, o: &Self) -> Self {
        F(self.0 / o.0)
    }
    fn is_pos(&self) -> bool {
        self.0.is_pos()
    }
    fn is_neg(&self) -> bool {
        self.0.is_neg()
    }
    fn lt(&self, o: &Self) -> bool {
        LpNum::lt(&self.0, &o.0)
    }
    fn to_f64(&self) -> f64 {
        self.0
    }
    fn is_stable_pivot(&self) -> bool {
        self.0.is_stable_pivot()
    }
    const INEXACT: bool = true;
    fn from_f64(v: f64) -> Self {
        F(v)
    }
}

/// Float model: inversion orbits with `±` rows, or single classes with
/// directional rows when `D` is not inversion-closed.
fn float_model(inst: &PhiInstance) -> Model<F> {
    let t = inst.table;
    let g = t.group();
    let n = g.order() as f64;
    let orbits: Vec<Vec<usize>> = if inst.symmetric {
        let mut seen = vec![false; g.class_count()];
        let mut out = Vec::new();
        for c in 0..g.class_count() {
            if !seen[c] {
                let ci = g.inverse_class(c);
                seen[c] = true;
                seen[ci] = true;
                out.push(if ci == c { vec![c] } else { vec![c, ci] });
            }
        }
        out
    } else {
        (0..g.class_count()).map(|c| vec![c]).collect()
    };
    let mut groups = HashMap::new();
    let mut rows = Vec::new();
    let mut weights = Vec::new();
    for pi in 0..t.irrep_count() {
        let b: Vec<Complex64> = orbits
            .iter()
            .map(|o| o.iter().map(|&c| t.value(pi, c).conj() * g.class_size(c) as f64).sum::<Complex64>() / n)
            .collect();
        let w = F(t.dim(pi) as f64);
        if inst.symmetric {
            merge_row(&mut groups, &mut rows, &mut weights, b.iter().map(|z| F(z.re)).collect(), w, true);
        } else {
            // Conjugate characters share |f̂|; key on the smaller of b and conj b.
            let flat = |sign: f64| -> Vec<F> { b.iter().flat_map(|z| [F(z.re), F(sign * z.im)]).collect() };
            let key = F::key(&flat(1.0)).min(F::key(&flat(-1.0)));
            let r = match groups.get(&key) {
                Some(&r) => {
                    weights[r] = F(weights[r].0 + w.0);
                    continue;
                }
                None => {
                    let r = weights.len();
                    groups.insert(key, r);
                    weights.push(w);
                    r
                }
            };
            for k in 0..RELAXATION_DIRECTIONS {
                let th = std::f64::consts::TAU * k as f64 / RELAXATION_DIRECTIONS as f64;
                let (s, c) = th.sin_cos();
                rows.push((r, b.iter().map(|z| F(c * z.re + s * z.im)).collect()));
            }
        }
    }
    let mean = orbits.iter().map(|o| F(o.iter().map(|&c| g.class_size(c) as f64).sum::<f64>() / n)).collect();
    let in_d = orbits.iter().map(|o| inst.set.contains(o[0])).collect();
    Model { orbits, in_d, mean, rows, weights }
}

/// Solves for `φ(D)`, exactly when the Galois-orbit model is rational.
pub fn phi_solve(inst: &PhiInstance) -> Result<PhiSolution> {
    phi_solve_with(inst, PhiMode::Auto)
}

pub fn phi_solve_with(inst: &PhiInstance, mode: PhiMode) -> Result<PhiSolution> {
    if mode != PhiMode::Float {
        match exact_model(inst) {
            Some(model) => return solve_exact(inst, model),
            None if mode == PhiMode::Exact => {
                return Err(Error::invalid(
                    "exact φ needs an exact table and a set stable under the Galois power maps",
                ))
            }
            None => {}
        }
    }
    solve_float(inst, float_model(inst))
}

fn normalize(f: &ClassFunction) -> ClassFunction {
    let mass = f.l1_mass();
    f.scale_rational(&BigRational::from_float(1.0 / mass).unwrap_or_else(|| BigRational::from_i64(1)))
}

fn solve_exact(inst: &PhiInstance, model: Model<BigRational>) -> Result<PhiSolution> {
    let lay = model.layout();
    let lp = model.program(&lay);
    let sol = solve(&lp).map_err(|e| Error::Numerical(format!("exact simplex failed: {e:?}")))?;
    let vals = model.orbit_values(&lay, &sol.x);
    let g = inst.set.group();
    let mut per_class = vec![BigRational::from_i64(0); g.class_count()];
    for (o, cs) in model.orbits.iter().enumerate() {
        for &c in cs {
            per_class[c] = vals[o].clone();
        }
    }
    let f = ClassFunction::rational(g, per_class.clone())?;
    let rep = lambda_norm(&f, inst.table)?;
    let ratio = match (&rep.lambda.exact(), &rep.mu_exact) {
        (Some(l), Some(m)) => (*l).clone() / m.clone(),
        _ => return Err(Error::Invariant("exact minimizer lost exactness".into())),
    };
    if ratio != sol.value {
        return Err(Error::Invariant(format!("LP value {} differs from λ/μ = {}", sol.value, ratio)));
    }
    let multiple = model.probe_multiple(&lay, &sol.value);
    // Σ_g |f(g)| as an exact rational, for the normalized minimizer.
    let mass = per_class
        .iter()
        .enumerate()
        .fold(BigRational::from_i64(0), |acc, (c, v)| acc + num_traits::Signed::abs(v) * BigInt::from(g.class_size(c)));
    let f_star = f.scale_rational(&(BigRational::from_i64(1) / mass));
    let value = LpNum::to_f64(&sol.value);
    Ok(PhiSolution {
        lower: value,
        upper: value,
        exact_value: Some(sol.value),
        f_star,
        dual: sol.dual.iter().map(LpNum::to_f64).collect(),
        flags: PhiFlags { exact: true, relaxed: false, multiple_optima: multiple, numerical_failure: false },
    })
}

fn fallback(inst: &PhiInstance, relaxed: bool) -> Result<PhiSolution> {
    let b = phi_bounds(inst)?;
    let f = ClassFunction::indicator(&inst.set);
    Ok(PhiSolution {
        lower: b.lower,
        upper: b.upper_littlewood,
        exact_value: None,
        f_star: normalize(&f),
        dual: Vec::new(),
        flags: PhiFlags { exact: false, relaxed, multiple_optima: false, numerical_failure: true },
    })
}

/// Stride of the initial row subset within each character's rows.
const INITIAL_ROW_STRIDE: usize = 8;

/// Cap on row-generation rounds before the full program is solved directly.
const ROW_ROUNDS: usize = 64;

/// Row generation: solves `build` over submodels holding the active rows,
/// activating for each character its most violated omitted row until none is
/// violated. The submodel optimum is then feasible, hence optimal, for the full
/// program. After `ROW_ROUNDS` rounds every row is activated.
fn with_rows(
    model: &Model<F>,
    active: &mut [bool],
    build: impl Fn(&Model<F>, &Layout) -> Lp<F>,
) -> Option<(Model<F>, Vec<usize>, simplex::LpSolution<F>)> {
    for round in 0..=ROW_ROUNDS {
        if round == ROW_ROUNDS {
            active.fill(true);
        }
        let idx: Vec<usize> = (0..active.len()).filter(|&i| active[i]).collect();
        let sub = Model {
            orbits: model.orbits.clone(),
            in_d: model.in_d.clone(),
            mean: model.mean.clone(),
            rows: idx.iter().map(|&i| model.rows[i].clone()).collect(),
            weights: model.weights.clone(),
        };
        let lay = sub.layout();
        let sol = solve(&build(&sub, &lay)).ok()?;
        let f = sub.orbit_values(&lay, &sol.x);
        let mut worst: Vec<Option<(usize, f64)>> = vec![None; model.weights.len()];
        for (i, (r, a)) in model.rows.iter().enumerate() {
            if active[i] {
                continue;
            }
            let t = sol.x[lay.t0 + r].0;
            let excess = a.iter().zip(&f).map(|(ai, fi)| ai.0 * fi.0).sum::<f64>() - t;
            if excess > 1e-9 * (1.0 + t.abs()) && worst[*r].is_none_or(|(_, w)| excess > w) {
                worst[*r] = Some((i, excess));
            }
        }
        let added: Vec<usize> = worst.iter().flatten().map(|&(i, _)| i).collect();
        if added.is_empty() {
            return Some((sub, idx, sol));
        }
        for i in added {
            active[i] = true;
        }
    }
    None
}

/// Whether the optimal face of the full program holds points with different
/// `f`, probing by row generation from the rows active at the optimum.
fn probe_multiple_by_rows(model: &Model<F>, active: &[bool], optimum: &F) -> bool {
    let run = |sign: f64| {
        let mut act = active.to_vec();
        with_rows(model, &mut act, |sub, lay| sub.probe_program(lay, optimum, &F(sign))).map(|(_, _, sol)| sol.value.0)
    };
    match (run(1.0), run(-1.0)) {
        // Float programs are perturbed, which thickens the face slightly.
        (Some(lo), Some(hi)) => -(lo + hi) > PROBE_TOLERANCE * (1.0 + lo.abs()),
        _ => false,
    }
}

fn solve_float(inst: &PhiInstance, model: Model<F>) -> Result<PhiSolution> {
    let relaxed = !inst.symmetric;
    let nr = model.rows.len();
    let mut active = vec![false; nr];
    let mut seen = vec![0usize; model.weights.len()];
    for (i, (r, _)) in model.rows.iter().enumerate() {
        active[i] = seen[*r] % INITIAL_ROW_STRIDE == 0;
        seen[*r] += 1;
    }
    let Some((sub, idx, sol)) = with_rows(&model, &mut active, |sub, lay| sub.program(lay)) else {
        return fallback(inst, relaxed);
    };
    // Omitted rows take zero multipliers; the mean row's multiplier comes last.
    let mut dual = vec![F(0.0); nr + 1];
    for (k, &i) in idx.iter().enumerate() {
        dual[i] = sol.dual[k];
    }
    dual[nr] = sol.dual[idx.len()];
    let lay = sub.layout();
    let vals: Vec<f64> = sub.orbit_values(&lay, &sol.x).iter().map(|v| v.0).collect();
    let f = class_function_from_orbits(inst, &model.orbits, &vals)?;
    let rep = lambda_norm(&f, inst.table)?;
    if rep.mu.re <= 0.0 {
        return fallback(inst, relaxed);
    }
    let mut upper = (rep.lambda.value() + rep.lambda.error()) / rep.mu.re;
    let b = phi_bounds(inst)?;
    // The polygonal relaxation can return an optimizer worse than the indicator of D.
    let f = if b.upper_littlewood < upper {
        upper = b.upper_littlewood;
        ClassFunction::indicator(&inst.set)
    } else {
        f
    };
    let lower = certified_lower(&model, &dual, upper);
    let multiple = probe_multiple_by_rows(&model, &active, &sol.value);
    Ok(PhiSolution {
        lower: lower.max(b.lower).min(upper),
        upper,
        exact_value: None,
        f_star: normalize(&f),
        dual: dual.iter().map(|y| y.0).collect(),
        flags: PhiFlags { exact: false, relaxed, multiple_optima: multiple, numerical_failure: false },
    })
}

/// Weak-duality bound from float multipliers. With `u_ρ ≥ 0`,
/// `Σ_{ρ ∈ r} u_ρ ≤ w_r` and every row satisfying `a_ρ·f ≤ |f̂_r|`:
/// `λ(f) ≥ Σ_ρ u_ρ a_ρ·f = v + Σ_o g_o f_o`, and `|f_o| ≤ λ(f) ≤ upper`
/// near the optimum, so residuals `g_o` of the wrong sign cost `upper · |g_o|`.
fn certified_lower(model: &Model<F>, dual: &[F], upper: f64) -> f64 {
    let nr = model.rows.len();
    let mut u: Vec<f64> = dual[..nr].iter().map(|y| y.0.max(0.0)).collect();
    let mut load = vec![0.0; model.weights.len()];
    for (i, (r, _)) in model.rows.iter().enumerate() {
        load[*r] += u[i];
    }
    for (i, (r, _)) in model.rows.iter().enumerate() {
        let w = model.weights[*r].0;
        if load[*r] > w {
            u[i] *= w / load[*r];
        }
    }
    let v = dual[nr].0;
    let mut bad = 0.0;
    let mut scale = 0.0;
    for o in 0..model.orbits.len() {
        let mut acc = 0.0;
        for (i, (_, a)) in model.rows.iter().enumerate() {
            acc += u[i] * a[o].0;
            scale += (u[i] * a[o].0).abs();
        }
        let g = acc - v * model.mean[o].0;
        bad += if model.in_d[o] { g.abs() } else { g.max(0.0) };
    }
    // Rounding in the residuals themselves.
    let margin = 64.0 * f64::EPSILON * (scale + v.abs()) * (1.0 + upper);
    v - upper * bad - margin
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::auto_table;
    use crate::group::Group;

    fn build(s: &str) -> Group {
        Group::build(&s.parse().unwrap()).unwrap()
    }

    fn solve_set(g: &Group, set: &str, mode: PhiMode) -> PhiSolution {
        let t = auto_table(g).unwrap();
        let inst = PhiInstance::new(&t, ClassSet::parse(g, set).unwrap()).unwrap();
        phi_solve_with(&inst, mode).unwrap()
    }

    #[test]
    fn coset_in_c4() {
        let c4 = build("C4");
        let s = solve_set(&c4, "union:1,3", PhiMode::Auto);
        assert_eq!(s.exact_value, Some(BigRational::from_i64(2)));
        for c in 0..4 {
            let v = s.f_star.value(c).re;
            assert!((v - if c % 2 == 1 { 0.5 } else { 0.0 }).abs() < 1e-12);
        }
        let f = solve_set(&c4, "union:1,3", PhiMode::Float);
        assert!(f.lower <= 2.0 + 1e-9 && f.upper >= 2.0 - 1e-9 && f.upper - f.lower < 1e-6);
    }

    #[test]
    fn whole_group_is_one() {
        for g in ["S3", "C5", "Q8"] {
            let g = build(g);
            let s = solve_set(&g, "all", PhiMode::Auto);
            assert_eq!(s.exact_value, Some(BigRational::from_i64(1)));
        }
    }

    #[test]
    fn three_cycles_in_s3() {
        let s3 = build("S3");
        let s = solve_set(&s3, "ncycle", PhiMode::Auto);
        let v = s.exact_value.clone().unwrap();
        assert!(v >= BigRational::from_i64(3) && v <= BigRational::from_i64(4));
        let f = solve_set(&s3, "ncycle", PhiMode::Float);
        assert!(f.lower <= s.upper + 1e-9 && f.upper >= s.upper - 1e-9);
        assert!((f.f_star.l1_mass() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn non_symmetric_sets_are_relaxed() {
        let c5 = build("C5");
        let s = solve_set(&c5, "union:1", PhiMode::Auto);
        assert!(s.flags.relaxed && !s.flags.exact);
        // D = {1}: a central singleton coset, φ = |G| = 5.
        assert!(s.lower <= 5.0 + 1e-9 && s.upper >= 5.0 - 1e-9);
        assert!(s.lower > 0.0);
        assert!(matches!(
            phi_solve_with(
                &PhiInstance::new(&auto_table(&c5).unwrap(), ClassSet::parse(&c5, "union:1").unwrap()).unwrap(),
                PhiMode::Exact
            ),
            Err(Error::Invalid(_))
        ));
    }

    #[test]
    fn bounds_examples() {
        let c6 = build("C6");
        let t = auto_table(&c6).unwrap();
        let b = phi_bounds(&PhiInstance::new(&t, ClassSet::parse(&c6, "gen").unwrap()).unwrap()).unwrap();
        assert!((b.lower - 3.0).abs() < 1e-12);
        assert!((b.upper_littlewood - 4.0).abs() < 1e-12);
        assert!((b.upper_cauchy_schwarz - 6.0 / 2f64.sqrt()).abs() < 1e-12);
        let s4 = build("S4");
        let t = auto_table(&s4).unwrap();
        let b = phi_bounds(&PhiInstance::new(&t, ClassSet::parse(&s4, "ncycle").unwrap()).unwrap()).unwrap();
        assert!((b.lower - 4.0).abs() < 1e-12 && (b.upper_littlewood - 8.0).abs() < 1e-12);
        let q8 = build("Q8");
        let t = auto_table(&q8).unwrap();
        let z = q8.center().into_iter().find(|&x| x != 0).unwrap();
        let b = phi_bounds(&PhiInstance::new(&t, ClassSet::from_elements(&q8, &[z]).unwrap()).unwrap()).unwrap();
        assert!((b.lower - 8.0).abs() < 1e-12 && (b.upper_littlewood - 8.0).abs() < 1e-12);
        assert!((b.upper_cauchy_schwarz - 8.0).abs() < 1e-12);
    }

    #[test]
    fn solutions_satisfy_admissibility_and_sandwich() {
        for (g, set) in [("S4", "fix=0"), ("D5", "class:r"), ("C12", "gen"), ("GL2(3)", "trace=0")] {
            let g = build(g);
            let t = auto_table(&g).unwrap();
            let Ok(d) = ClassSet::parse(&g, set) else { continue };
            let inst = PhiInstance::new(&t, d.clone()).unwrap();
            let s = phi_solve(&inst).unwrap();
            let b = phi_bounds(&inst).unwrap();
            assert!(s.lower >= b.lower - 1e-9, "{}", g.name());
            assert!(s.upper <= b.upper_littlewood.min(b.upper_cauchy_schwarz) + 1e-9, "{}", g.name());
            assert!(s.lower <= s.upper + 1e-12);
            for c in 0..g.class_count() {
                if s.f_star.value(c).re > 1e-12 {
                    assert!(d.contains(c));
                }
            }
        }
    }

    #[test]
    fn relaxed_path_converges_on_every_subset_of_c8() {
        let g = build("C8");
        let t = auto_table(&g).unwrap();
        for mask in 1u32..256 {
            let d = ClassSet::from_classes(&g, (0..8).filter(|&c| mask >> c & 1 == 1));
            let inst = PhiInstance::new(&t, d).unwrap();
            let s = phi_solve_with(&inst, PhiMode::Float).unwrap();
            let b = phi_bounds(&inst).unwrap();
            assert!(!s.flags.numerical_failure, "mask {mask:b}");
            assert!(s.lower >= b.lower - 1e-9 && s.upper <= b.upper_littlewood + 1e-9, "mask {mask:b}");
            // The polygon has 32 sides, so the certified interval is narrow.
            assert!(s.upper <= s.lower * 1.01 + 1e-9, "mask {mask:b}: [{}, {}]", s.lower, s.upper);
        }
    }
}
