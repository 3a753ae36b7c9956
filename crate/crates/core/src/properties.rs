//! Seeded randomized checks of the structural inequalities satisfied by λ.
//!
//! Each property draws its instances from its own ChaCha stream, so a
//! property's outcome depends only on the seed and the case count.

use std::collections::BTreeSet;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::characters::{auto_table, CharacterTable};
use crate::error::Result;
use crate::group::{Group, SubgroupHandle};
use crate::littlewood::{
    induce, induction_equality_condition, lambda, lambda_of_set, trace_norm_oracle, ClassFunction,
};
use crate::sets::ClassSet;

/// Absolute tolerance, scaled by `1 + |value|` in comparisons.
const TOL: f64 = 1e-9;

/// Groups used for general properties.
pub const PROPERTY_GROUPS: &[&str] =
    &["C12", "C2xC4", "C8", "S3", "S4", "A4", "D4", "D5", "D6", "Q8", "GL2(3)", "prod:S3*S3"];

/// Groups whose subgroup lattices drive the induction check.
pub const LATTICE_GROUPS: &[&str] = &["S3", "S4", "D4"];

#[derive(Clone, Debug)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug)]
pub struct Scoreboard {
    pub seed: u64,
    pub outcomes: Vec<PropertyOutcome>,
}

impl Scoreboard {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(PropertyOutcome::passed)
    }

    pub fn render(&self) -> String {
        let width = self.outcomes.iter().map(|o| o.name.len()).max().unwrap_or(0);
        let mut out = String::new();
        for o in &self.outcomes {
            let status = if o.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "{status}  {:width$}  {}/{}",
                o.name,
                o.cases - o.failures,
                o.cases,
                width = width
            ));
            if let Some(msg) = &o.first_failure {
                out.push_str(&format!("  first failure: {msg}"));
            }
            out.push('\n');
        }
        out
    }
}

struct Fixture {
    group: Group,
    table: CharacterTable,
    /// Automorphisms as element permutations, identity excluded.
    automorphisms: Vec<Vec<usize>>,
}

struct Lattice {
    group: Group,
    table: CharacterTable,
    subgroups: Vec<(SubgroupHandle, CharacterTable)>,
}

pub struct Fixtures {
    general: Vec<Fixture>,
    lattices: Vec<Lattice>,
}

impl Fixtures {
    pub fn build() -> Result<Self> {
        let mut general = Vec::new();
        for name in PROPERTY_GROUPS {
            let group = Group::build(&name.parse()?)?;
            let table = auto_table(&group)?;
            let automorphisms = automorphisms(&group);
            general.push(Fixture { group, table, automorphisms });
        }
        let mut lattices = Vec::new();
        for name in LATTICE_GROUPS {
            let group = Group::build(&name.parse()?)?;
            let table = auto_table(&group)?;
            let subgroups = subgroup_lattice(&group)?
                .into_iter()
                .map(|h| {
                    let t = auto_table(h.group())?;
                    Ok((h, t))
                })
                .collect::<Result<Vec<_>>>()?;
            lattices.push(Lattice { group, table, subgroups });
        }
        Ok(Fixtures { general, lattices })
    }
}

/// All subgroups, each generated by at most two elements (enough for the
/// lattice groups used here).
pub fn subgroup_lattice(g: &Group) -> Result<Vec<SubgroupHandle>> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    for a in 0..g.order() {
        for b in a..g.order() {
            let h = g.subgroup(&[a, b])?;
            let mut key = h.elements().to_vec();
            key.sort_unstable();
            if seen.insert(key) {
                out.push(h);
            }
        }
    }
    Ok(out)
}

/// The element map extending `images` on the generators, if it is an automorphism.
pub fn extend_automorphism(g: &Group, images: &[usize]) -> Option<Vec<usize>> {
    let gens = g.generators();
    let mut map = vec![usize::MAX; g.order()];
    let mut used = vec![false; g.order()];
    map[g.identity()] = g.identity();
    used[g.identity()] = true;
    let mut queue = vec![g.identity()];
    while let Some(x) = queue.pop() {
        for (s, &img) in gens.iter().zip(images) {
            let y = g.mul(x, *s);
            let fy = g.mul(map[x], img);
            if map[y] == usize::MAX {
                if used[fy] {
                    return None;
                }
                map[y] = fy;
                used[fy] = true;
                queue.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    map.iter().all(|&v| v != usize::MAX).then_some(map)
}

/// Automorphisms found by trying every generator image tuple, when that search
/// is small; otherwise power maps (abelian) or the factor swap (`G × G`).
fn automorphisms(g: &Group) -> Vec<Vec<usize>> {
    let n = g.order();
    let k = g.generators().len() as u32;
    let mut out = Vec::new();
    if (n as u64).checked_pow(k).is_some_and(|t| t <= 20_000) {
        let mut images = vec![0usize; k as usize];
        loop {
            if let Some(m) = extend_automorphism(g, &images) {
                if m.iter().enumerate().any(|(i, &v)| i != v) {
                    out.push(m);
                }
            }
            let mut i = 0;
            while i < images.len() {
                images[i] += 1;
                if images[i] < n {
                    break;
                }
                images[i] = 0;
                i += 1;
            }
            if i == images.len() {
                break;
            }
        }
    } else if g.is_abelian() {
        let e = g.exponent();
        for k in 2..e {
            if crate::nt::gcd(k, e) == 1 {
                out.push((0..n).map(|x| g.pow(x, k as i64)).collect());
            }
        }
    }
    if let Some((a, b)) = g.product_factors() {
        if a.id() == b.id() || a.name() == b.name() {
            let m = b.order();
            out.push((0..n).map(|x| (x % m) * m + x / m).collect());
        }
    }
    out
}

fn class_action(g: &Group, map: &[usize]) -> Vec<usize> {
    (0..g.class_count()).map(|c| g.class_of(map[g.class_rep(c)])).collect()
}

fn random_function(rng: &mut ChaCha8Rng, g: &Group) -> ClassFunction {
    let complex = rng.random_bool(0.5);
    let density = rng.random_range(0.2..=1.0);
    let values = (0..g.class_count())
        .map(|_| {
            if !rng.random_bool(density) {
                return Complex64::new(0.0, 0.0);
            }
            let re = rng.random_range(-1.0..1.0);
            let im = if complex { rng.random_range(-1.0..1.0) } else { 0.0 };
            Complex64::new(re, im)
        })
        .collect();
    ClassFunction::new(g, values).expect("finite values")
}

fn random_set(rng: &mut ChaCha8Rng, g: &Group, nonempty: bool) -> ClassSet {
    let p = rng.random_range(0.1..0.9);
    let mut mask: Vec<bool> = (0..g.class_count()).map(|_| rng.random_bool(p)).collect();
    if nonempty && !mask.iter().any(|&b| b) {
        let c = rng.random_range(0..mask.len());
        mask[c] = true;
    }
    ClassSet::from_mask(g, mask).expect("mask length")
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= TOL * (1.0 + a.abs().max(b.abs()))
}

fn le(a: f64, b: f64) -> bool {
    a <= b + TOL * (1.0 + b.abs())
}

type Check = fn(&mut ChaCha8Rng, &Fixtures) -> Result<Option<String>>;

fn pick<'a>(rng: &mut ChaCha8Rng, fx: &'a Fixtures) -> &'a Fixture {
    &fx.general[rng.random_range(0..fx.general.len())]
}

fn fail(g: &Group, msg: String) -> Option<String> {
    Some(format!("{}: {msg}", g.name()))
}

fn triangle(rng: &mut ChaCha8Rng, fx: &Fixtures) -> Result<Option<String>> {
    let x = pick(rng, fx);
    let (f, g) = (random_function(rng, &x.group), random_function(rng, &x.group));
    let (lf, lg, ls) = (lambda(&f, &x.table)?, lambda(&g, &x.table)?, lambda(&f.add(&g)?, &x.table)?);
    Ok((!le(ls, lf + lg)).then(|| fail(&x.group, format!("λ(f+g) = {ls} > {lf} + {lg}"))).flatten())
}

fn homogeneity(rng: &mut ChaCha8Rng, fx: &Fixtures) -> Result<Option<String>> {
    let x = pick(rng, fx);
    let f = random_function(rng, &x.group);
    let alpha = Complex64::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
    let (lf, la) = (lambda(&f, &x.table)?, lambda(&f.scale(alpha), &x.table)?);
    Ok((!close(la, alpha.norm() * lf)).then(|| fail(&x.group, format!("λ(αf) = {la}, |α|λ(f) = {}", alpha.norm() * lf))).flatten())
}

fn definiteness(rng: &mut ChaCha8Rng, fx: &Fixtures) -> Result<Option<String>> {
    let x = pick(rng, fx);
    let f = if rng.random_bool(0.2) {
        ClassFunction::new(&x.group, vec![Complex64::new(0.0, 0.0); x.group.class_count()])?
    } else {
        random_function(rng, &x.group)
    };
    let l = lambda(&f, &x.table)?;
    let ok = if f.is_zero() { l == 0.0 } else { l > 0.0 };
    Ok((!ok).then(|| fail(&x.group, format!("λ = {l} for a {} function", if f.is_zero() { "zero" } else { "nonzero" }))).flatten())
}

fn set_lambda(d: &ClassSet, t: &CharacterTable) -> Result<f64> {
    if d.is_empty() {
        return Ok(0.0);
    }
    Ok(lambda_of_set(d, t)?.lambda.value())
}

fn union_inequality(rng: &mut ChaCha8Rng, fx: &Fixtures) -> Result<Option<String>> {
    let x = pick(rng, fx);
    let (a, b) = (random_set(rng, &x.group, false), random_set(rng, &x.group, false));
    let (la, lb, lu, li) =
        (set_lambda(&a, &x.table)?, set_lambda(&b, &x.table)?, set_lambda(&a.union(&b), &x.table)?, set_lambda(&a.intersection(&b), &x.table)?);
    Ok((!le(lu, la + lb + li)).then(|| fail(&x.group, format!("λ(A∪B) = {lu} > {la} + {lb} + {li}"))).flatten())
}

fn disjoint_union(rng: &mut ChaCha8Rng, fx: &Fixtures) -> Result<Option<String>> {
    let x = pick(rng, fx);
    let a = random_set(rng, &x.group, false);
    let b = random_set(rng, &x.group, false).intersection(&a.complement());
    let (la, lb, lu) = (set_lambda(&a, &x.table)?, set_lambda(&b, &x.table)?, set_lambda(&a.union(&b), &x.table)?);
    let ok = le((la - lb).abs(), lu) && le(lu, la + lb);
    Ok((!ok).then(|| fail(&x.group, format!("disjoint λ's {la}, {lb}, union {lu}"))).flatten())
}

fn complement(rng: &mut ChaCha8Rng, fx: &Fixtures) -> Result<Option<String>> {
    let x = pick(rng, fx);
    let a = random_set(rng, &x.group, false);
    let (la, lc) = (set_lambda(&a, &x.table)?, set_lambda(&a.complement(), &x.table)?);
    Ok((!le((la - lc).abs(), 1.0)).then(|| fail(&x.group, format!("λ(D) = {la}, λ(G−D) = {lc}"))).flatten())
}

fn automorphism(rng: &mut ChaCha8Rng, fx: &Fixtures) -> Result<Option<String>> {
    let candidates: Vec<&Fixture> = fx.general.iter().filter(|x| !x.automorphisms.is_empty()).collect();
    let x = candidates[rng.random_range(0..candidates.len())];
    let m = &x.automorphisms[rng.random_range(0..x.automorphisms.len())];
    let f = random_function(rng, &x.group);
    let moved = f.permute(&class_action(&x.group, m))?;
    let (a, b) = (lambda(&f, &x.table)?, lambda(&moved, &x.table)?);
    Ok((!close(a, b)).then(|| fail(&x.group, format!("λ(f) = {a}, λ(f∘α) = {b}"))).flatten())
}

fn inversion(rng: &mut ChaCha8Rng, fx: &Fixtures) -> Result<Option<String>> {
    let x = pick(rng, fx);
    let f = random_function(rng, &x.group);
    let (a, b) = (lambda(&f, &x.table)?, lambda(&f.compose_inverse(), &x.table)?);
    Ok((!close(a, b)).then(|| fail(&x.group, format!("λ(f) = {a}, λ(f∘inv) = {b}"))).flatten())
}

fn central_translation(rng: &mut ChaCha8Rng, fx: &Fixtures) -> Result<Option<String>> {
    let x = pick(rng, fx);
    let center = x.group.center();
    let z = center[rng.random_range(0..center.len())];
    let f = random_function(rng, &x.group);
    let (a, b) = (lambda(&f, &x.table)?, lambda(&f.translate_central(z)?, &x.table)?);
    Ok((!close(a, b)).then(|| fail(&x.group, format!("λ(f) = {a}, λ(f(z·)) = {b}"))).flatten())
}

fn submultiplicative(rng: &mut ChaCha8Rng, fx: &Fixtures) -> Result<Option<String>> {
    let x = pick(rng, fx);
    let (f, g) = (random_function(rng, &x.group), random_function(rng, &x.group));
    let (lf, lg, lp) = (lambda(&f, &x.table)?, lambda(&g, &x.table)?, lambda(&f.mul(&g)?, &x.table)?);
    Ok((!le(lp, lf * lg)).then(|| fail(&x.group, format!("λ(fg) = {lp} > {lf}·{lg}"))).flatten())
}

fn set_at_least_one(rng: &mut ChaCha8Rng, fx: &Fixtures) -> Result<Option<String>> {
    let x = pick(rng, fx);
    let d = random_set(rng, &x.group, true);
    let l = set_lambda(&d, &x.table)?;
    Ok((!le(1.0, l)).then(|| fail(&x.group, format!("λ(D) = {l} < 1"))).flatten())
}

fn dominates_sup(rng: &mut ChaCha8Rng, fx: &Fixtures) -> Result<Option<String>> {
    let x = pick(rng, fx);
    let f = random_function(rng, &x.group);
    let l = lambda(&f, &x.table)?;
    Ok((!le(f.max_abs(), l)).then(|| fail(&x.group, format!("λ(f) = {l} < max|f| = {}", f.max_abs()))).flatten())
}

fn cauchy_schwarz(rng: &mut ChaCha8Rng, fx: &Fixtures) -> Result<Option<String>> {
    let x = pick(rng, fx);
    let g = &x.group;
    let d = if rng.random_bool(0.25) {
        let center = g.center();
        ClassSet::from_elements(g, &[center[rng.random_range(0..center.len())]])?
    } else {
        random_set(rng, g, true)
    };
    let l = set_lambda(&d, &x.table)?;
    let bound = (d.size() as f64).sqrt();
    let central_singleton = d.size() == 1;
    let ok = le(l, bound) && (close(l, bound) == central_singleton);
    Ok((!ok).then(|| fail(g, format!("λ(D) = {l}, √|D| = {bound}, |D| = {}", d.size()))).flatten())
}

fn trivial_bound(rng: &mut ChaCha8Rng, fx: &Fixtures) -> Result<Option<String>> {
    let x = pick(rng, fx);
    let f = random_function(rng, &x.group);
    let l = lambda(&f, &x.table)?;
    Ok((!le(l, f.l1_mass())).then(|| fail(&x.group, format!("λ(f) = {l} > Σ|f| = {}", f.l1_mass()))).flatten())
}

fn oracle(rng: &mut ChaCha8Rng, fx: &Fixtures) -> Result<Option<String>> {
    let x = pick(rng, fx);
    let f = random_function(rng, &x.group);
    let (l, o) = (lambda(&f, &x.table)?, trace_norm_oracle(&f)?);
    Ok(((l - o).abs() > 1e-8 * (1.0 + l)).then(|| fail(&x.group, format!("λ = {l}, trace norm = {o}"))).flatten())
}

/// `f = Σ a_ρ χ_ρ` on `H`, so that `f̂(ρ) = a_ρ`.
fn function_from_coefficients(t: &CharacterTable, a: &[Complex64]) -> Result<ClassFunction> {
    let g = t.group();
    let values = (0..g.class_count()).map(|c| a.iter().enumerate().map(|(r, &ar)| ar * t.value(r, c)).sum()).collect();
    ClassFunction::new(g, values)
}

fn induction(rng: &mut ChaCha8Rng, fx: &Fixtures) -> Result<Option<String>> {
    let lat = &fx.lattices[rng.random_range(0..fx.lattices.len())];
    let (h, th) = &lat.subgroups[rng.random_range(0..lat.subgroups.len())];
    let k = th.irrep_count();
    // Common phase (condition holds), independent phases, or a single coefficient.
    let mode = rng.random_range(0..3);
    let phase = Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
    let single = rng.random_range(0..k);
    let a: Vec<Complex64> = (0..k)
        .map(|r| {
            let keep = rng.random_bool(0.6);
            let mag = rng.random_range(0.1..1.0);
            let theta = rng.random_range(0.0..std::f64::consts::TAU);
            match mode {
                0 if keep => phase * mag,
                1 if keep => Complex64::from_polar(mag, theta),
                2 if r == single => Complex64::from_polar(mag, theta),
                _ => Complex64::new(0.0, 0.0),
            }
        })
        .collect();
    if a.iter().all(|z| z.norm() == 0.0) {
        return Ok(None);
    }
    let f = function_from_coefficients(th, &a)?;
    let lhs = lambda(&induce(&f, h)?, &lat.table)?;
    let rhs = (lat.group.order() / h.order()) as f64 * lambda(&f, th)?;
    let cond = induction_equality_condition(&f, h, &lat.table, th)?;
    let equal = (lhs - rhs).abs() <= 1e-8 * (1.0 + rhs);
    let ok = le(lhs, rhs) && equal == cond;
    Ok((!ok).then(|| {
        fail(&lat.group, format!("|H| = {}: λ(Ind f) = {lhs}, index·λ_H(f) = {rhs}, condition {cond}", h.order()))
    })
    .flatten())
}

fn progression(rng: &mut ChaCha8Rng, _fx: &Fixtures) -> Result<Option<String>> {
    let n = rng.random_range(2..=5000u64);
    let g = Group::build(&crate::group::GroupSpec::cyclic(n))?;
    let t = auto_table(&g)?;
    let a = rng.random_range(0..n);
    let r = rng.random_range(1..n.max(2));
    let len = rng.random_range(1..=n.min(200));
    let elems: Vec<usize> = (0..len).map(|k| ((a + r * k) % n) as usize).collect();
    let d = ClassSet::from_elements(&g, &elems)?;
    let l = set_lambda(&d, &t)?;
    let ratio = l / (1.0 + (d.size() as f64).ln());
    Ok((!(0.0..=4.0).contains(&ratio)).then(|| fail(&g, format!("a = {a}, r = {r}, len = {len}: ratio {ratio}"))).flatten())
}

/// Property names with their checks, in scoreboard order.
pub const PROPERTIES: &[(&str, Check)] = &[
    ("norm_triangle_inequality", triangle),
    ("norm_homogeneity", homogeneity),
    ("norm_vanishes_only_at_zero", definiteness),
    ("union_bounded_by_parts_and_overlap", union_inequality),
    ("disjoint_union_bounds", disjoint_union),
    ("complement_changes_norm_by_at_most_one", complement),
    ("automorphism_invariance", automorphism),
    ("inversion_invariance", inversion),
    ("central_translation_invariance", central_translation),
    ("submultiplicativity", submultiplicative),
    ("nonempty_set_norm_at_least_one", set_at_least_one),
    ("norm_dominates_sup_norm", dominates_sup),
    ("cauchy_schwarz_bound_and_equality", cauchy_schwarz),
    ("trivial_bound", trivial_bound),
    ("trace_norm_agreement", oracle),
    ("induction_equality_condition", induction),
    ("arithmetic_progression_window", progression),
];

/// Runs one property for `cases` instances.
pub fn run_property(index: usize, seed: u64, cases: usize, fx: &Fixtures) -> PropertyOutcome {
    let (name, check) = PROPERTIES[index];
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (0x9e37_79b9_7f4a_7c15u64.wrapping_mul(index as u64 + 1)));
    let mut failures = 0;
    let mut first_failure = None;
    for case in 0..cases {
        let outcome = match check(&mut rng, fx) {
            Ok(r) => r,
            Err(e) => Some(format!("error: {e}")),
        };
        if let Some(msg) = outcome {
            failures += 1;
            first_failure.get_or_insert_with(|| format!("case {case}: {msg}"));
        }
    }
    PropertyOutcome { name, cases, failures, first_failure }
}

/// Runs every property in parallel; the result is independent of scheduling.
pub fn run_suite(seed: u64, cases: usize) -> Result<Scoreboard> {
    use rayon::prelude::*;
    let fx = Fixtures::build()?;
    let outcomes = crate::harness::pool()
        .install(|| (0..PROPERTIES.len()).into_par_iter().map(|i| run_property(i, seed, cases, &fx)).collect());
    Ok(Scoreboard { seed, outcomes })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn automorphism_search() {
        let s3 = Group::build(&"S3".parse().unwrap()).unwrap();
        // Aut(S3) = S3, so five nontrivial automorphisms.
        assert_eq!(automorphisms(&s3).len(), 5);
        let d4 = Group::build(&"D4".parse().unwrap()).unwrap();
        // Aut(D4) has order 8; some automorphism swaps the two reflection classes.
        let auts = automorphisms(&d4);
        assert_eq!(auts.len(), 7);
        assert!(auts.iter().any(|m| class_action(&d4, m).iter().enumerate().any(|(i, &c)| i != c)));
    }

    #[test]
    fn lattices() {
        let s4 = Group::build(&"S4".parse().unwrap()).unwrap();
        assert_eq!(subgroup_lattice(&s4).unwrap().len(), 30);
        let d4 = Group::build(&"D4".parse().unwrap()).unwrap();
        assert_eq!(subgroup_lattice(&d4).unwrap().len(), 10);
    }

    #[test]
    fn small_suite_passes() {
        let board = run_suite(7, 20).unwrap();
        assert!(board.all_passed(), "{}", board.render());
        let again = run_suite(7, 20).unwrap();
        assert_eq!(board.render(), again.render());
    }
}
