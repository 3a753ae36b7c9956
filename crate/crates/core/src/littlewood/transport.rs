//! Moving class functions between groups: restriction, induction, inflation, products.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use super::{fourier, ClassFunction};
use crate::characters::CharacterTable;
use crate::error::{Error, Result};
use crate::group::{Group, QuotientHandle, SubgroupHandle};

/// Relative tolerance when comparing complex arguments of Fourier coefficients.
const ARG_TOLERANCE: f64 = 1e-9;

/// `f|_H`.
pub fn restrict(f: &ClassFunction, h: &SubgroupHandle) -> Result<ClassFunction> {
    let g = f.group();
    if h.parent() != g {
        return Err(Error::GroupMismatch("subgroup is not in the class function's group".into()));
    }
    let hg = h.group();
    let map: Vec<usize> = (0..hg.class_count()).map(|c| g.class_of(h.embed(hg.class_rep(c)))).collect();
    match f.exact() {
        Some(e) => ClassFunction::rational(hg, map.iter().map(|&c| e[c].clone()).collect()),
        None => ClassFunction::new(hg, map.iter().map(|&c| f.value(c)).collect()),
    }
}

/// `(Ind f)(x) = (1/|H|) Σ_{y ∈ G, y x y⁻¹ ∈ H} f(y x y⁻¹)`, evaluated as
/// `|G| / (|H| |c|) Σ_{h ∈ H ∩ c} f(h)` on each class `c`.
pub fn induce(f: &ClassFunction, h: &SubgroupHandle) -> Result<ClassFunction> {
    let hg = h.group();
    if f.group() != hg {
        return Err(Error::GroupMismatch("class function is not on the subgroup".into()));
    }
    let g = h.parent();
    let k = g.class_count();
    let mut sums = vec![Complex64::zero(); k];
    let mut exact_sums = f.exact().map(|_| vec![BigRational::zero(); k]);
    for c in 0..hg.class_count() {
        let target = g.class_of(h.embed(hg.class_rep(c)));
        let size = hg.class_size(c);
        sums[target] += f.value(c) * size as f64;
        if let (Some(acc), Some(e)) = (exact_sums.as_mut(), f.exact()) {
            acc[target] += &e[c] * BigInt::from(size);
        }
    }
    let (gn, hn) = (g.order() as u64, h.order() as u64);
    match exact_sums {
        Some(acc) => {
            let vals = acc
                .into_iter()
                .enumerate()
                .map(|(c, s)| s * BigRational::new(BigInt::from(gn), BigInt::from(hn * g.class_size(c))))
                .collect();
            ClassFunction::rational(g, vals)
        }
        None => {
            let vals = sums
                .into_iter()
                .enumerate()
                .map(|(c, s)| s * (gn as f64 / (hn as f64 * g.class_size(c) as f64)))
                .collect();
            ClassFunction::new(g, vals)
        }
    }
}

/// `f ∘ s` for the projection `s : G → G/U`.
pub fn inflate(f: &ClassFunction, q: &QuotientHandle) -> Result<ClassFunction> {
    if f.group() != q.group() {
        return Err(Error::GroupMismatch("class function is not on the quotient".into()));
    }
    let g = q.parent();
    let map: Vec<usize> =
        (0..g.class_count()).map(|c| q.group().class_of(q.project(g.class_rep(c)))).collect();
    match f.exact() {
        Some(e) => ClassFunction::rational(g, map.iter().map(|&c| e[c].clone()).collect()),
        None => ClassFunction::new(g, map.iter().map(|&c| f.value(c)).collect()),
    }
}

/// `(f1 ⊗ f2)(x, y) = f1(x) f2(y)` on a freshly built `G1 × G2`.
pub fn tensor(f1: &ClassFunction, f2: &ClassFunction) -> Result<ClassFunction> {
    let product = Group::direct_product(f1.group(), f2.group());
    tensor_on(f1, f2, &product)
}

/// As [`tensor`], on a given product group whose factors are the two groups.
pub fn tensor_on(f1: &ClassFunction, f2: &ClassFunction, product: &Group) -> Result<ClassFunction> {
    match product.product_factors() {
        Some((a, b)) if a == f1.group() && b == f2.group() => {}
        _ => return Err(Error::GroupMismatch("product group does not match the factors".into())),
    }
    let split: Vec<(usize, usize)> =
        (0..product.class_count()).map(|c| product.product_class_split(c).unwrap()).collect();
    match (f1.exact(), f2.exact()) {
        (Some(a), Some(b)) => {
            ClassFunction::rational(product, split.iter().map(|&(x, y)| &a[x] * &b[y]).collect())
        }
        _ => ClassFunction::new(product, split.iter().map(|&(x, y)| f1.value(x) * f2.value(y)).collect()),
    }
}

/// Multiplicity of the `H`-irrep `ρ` in the restriction of the `G`-irrep `π`:
/// `(1/|H|) Σ_{h ∈ H} χ_π(h) conj χ_ρ(h)`.
pub fn multiplicity(h: &SubgroupHandle, tg: &CharacterTable, th: &CharacterTable, pi: usize, rho: usize) -> u64 {
    let hg = h.group();
    let g = h.parent();
    let s: Complex64 = (0..hg.class_count())
        .map(|c| {
            let gc = g.class_of(h.embed(hg.class_rep(c)));
            tg.value(pi, gc) * th.value(rho, c).conj() * hg.class_size(c) as f64
        })
        .sum();
    (s.re / hg.order() as f64).round().max(0.0) as u64
}

/// Whether the nonzero values among `z` (indexed by `members`) share one argument.
pub(crate) fn constant_argument(values: impl IntoIterator<Item = Complex64>, scale: f64) -> bool {
    let mut reference: Option<Complex64> = None;
    for z in values {
        if z.norm() <= super::SUPPORT_TOLERANCE * scale.max(f64::MIN_POSITIVE) {
            continue;
        }
        let u = z / z.norm();
        match reference {
            None => reference = Some(u),
            Some(r) => {
                if (u - r).norm() > ARG_TOLERANCE.sqrt() {
                    return false;
                }
            }
        }
    }
    true
}

/// Equality condition for `λ_G(Ind f) ≤ (|G|/|H|) λ_H(f)`: for every `π ∈ Ĝ`,
/// the coefficients `f̂(ρ)` over the `ρ` occurring in `π|_H` have constant argument.
pub fn induction_equality_condition(
    f: &ClassFunction,
    h: &SubgroupHandle,
    tg: &CharacterTable,
    th: &CharacterTable,
) -> Result<bool> {
    if tg.group() != h.parent() || th.group() != h.group() {
        return Err(Error::GroupMismatch("tables do not match the subgroup pair".into()));
    }
    let fh = fourier(f, th)?;
    let scale = fh.max_abs();
    for pi in 0..tg.irrep_count() {
        let occurring = (0..th.irrep_count()).filter(|&rho| multiplicity(h, tg, th, pi, rho) > 0);
        if !constant_argument(occurring.map(|rho| fh.get(rho)), scale) {
            return Ok(false);
        }
    }
    Ok(true)
}
