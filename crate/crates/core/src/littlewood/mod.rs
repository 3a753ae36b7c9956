//! Fourier analysis of class functions and Littlewood norms.
//!
//! `f̂(π) = (1/|G|) Σ_c |c| f(c) conj χ_π(c)` and `λ(f) = Σ_π |f̂(π)| dim π`.
//!
//! When `f` is rational and fixed by the power maps `c ↦ c^k`, `k ∈ (Z/m)*`
//! (`m` the table's cyclotomic modulus), every `f̂(π)` is rational and equals
//! `(1/(|G| φ(m))) Σ_c |c| f(c) Tr χ_π(c)`; that sum is evaluated in checked
//! `i128` arithmetic and λ is returned exactly.

mod class_function;
mod oracle;
mod serre;
mod transport;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::characters::CharacterTable;
use crate::error::{Error, Result};
use crate::nt::{divisors, euler_phi, gcd, ramanujan_sum, unit_group_generators};
use crate::sets::ClassSet;

pub use class_function::ClassFunction;
pub use oracle::{trace_norm_oracle, ORACLE_MAX_ORDER};
pub use serre::{coset_certificate, serre_reduce, sieve_weight, CosetCertificate, SerreReport, SieveWeight};
pub use transport::{
    induce, induction_equality_condition, inflate, multiplicity, restrict, tensor, tensor_on,
};

/// Relative threshold for the spectral support of float transforms.
pub const SUPPORT_TOLERANCE: f64 = 1e-10;

/// Work limit (irreps × support classes) for the exact abelian path.
const EXACT_BUDGET: u64 = 200_000_000;

/// Work limit for the float abelian transform.
const FLOAT_BUDGET: u64 = 4_000_000_000;

/// Fourier coefficients of a class function against an attached table.
#[derive(Clone, Debug)]
pub struct FourierCoeffs {
    coeffs: Vec<Complex64>,
    exact: Option<Vec<BigRational>>,
    /// Absolute error bound per coefficient (zero when exact).
    error: f64,
}

impl FourierCoeffs {
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn get(&self, pi: usize) -> Complex64 {
        self.coeffs[pi]
    }

    pub fn exact(&self) -> Option<&[BigRational]> {
        self.exact.as_deref()
    }

    pub fn error(&self) -> f64 {
        self.error
    }

    pub fn is_zero_at(&self, pi: usize, scale: f64) -> bool {
        match &self.exact {
            Some(e) => e[pi].is_zero(),
            None => self.coeffs[pi].norm() <= SUPPORT_TOLERANCE * scale,
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `|Σ_π |f̂(π)|² − (1/|G|) Σ_c |c| |f(c)|²|`, relative to the right side.
    pub fn parseval_residual(&self, f: &ClassFunction) -> f64 {
        let lhs: f64 = self.coeffs.iter().map(|z| z.norm_sqr()).sum();
        let rhs = f.l2_mass() / f.group().order() as f64;
        (lhs - rhs).abs() / rhs.max(f64::MIN_POSITIVE)
    }
}

/// λ as an exact rational or a float with an error bound.
#[derive(Clone, Debug, PartialEq)]
pub enum NormValue {
    Exact(BigRational),
    Float { value: f64, error: f64 },
}

impl NormValue {
    pub fn value(&self) -> f64 {
        match self {
            NormValue::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            NormValue::Float { value, .. } => *value,
        }
    }

    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            NormValue::Exact(q) => Some(q),
            NormValue::Float { .. } => None,
        }
    }

    pub fn error(&self) -> f64 {
        match self {
            NormValue::Exact(_) => 0.0,
            NormValue::Float { error, .. } => *error,
        }
    }
}

/// Upper bounds for λ that need no character table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bounds {
    /// `sqrt(Σ_g |f(g)|²)`, which is `√|D|` for an indicator.
    pub cauchy_schwarz: f64,
    /// `Σ_g |f(g)|`, which is `|D|` for an indicator.
    pub trivial: f64,
}

#[derive(Clone, Debug)]
pub struct NormReport {
    pub lambda: NormValue,
    /// Mean value `f̂(trivial)`.
    pub mu: Complex64,
    pub mu_exact: Option<BigRational>,
    /// Irreps with nonzero coefficient.
    pub support: Vec<usize>,
    pub bounds: Bounds,
    pub coeffs: FourierCoeffs,
}

fn check_group(f: &ClassFunction, t: &CharacterTable) -> Result<()> {
    if f.group() != t.group() {
        return Err(Error::GroupMismatch(format!(
            "class function on {} but table for {}",
            f.group().name(),
            t.group().name()
        )));
    }
    Ok(())
}

/// Fourier transform of `f`, exact when the rational path applies.
pub fn fourier(f: &ClassFunction, t: &CharacterTable) -> Result<FourierCoeffs> {
    check_group(f, t)?;
    if let Some(exact) = exact_coeffs(f, t) {
        let coeffs = exact.iter().map(|q| Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0)).collect();
        return Ok(FourierCoeffs { coeffs, exact: Some(exact), error: 0.0 });
    }
    float_coeffs(f, t)
}

/// `Σ_π f̂(π) χ_π`.
pub fn reconstruct(coeffs: &FourierCoeffs, t: &CharacterTable) -> Result<ClassFunction> {
    let g = t.group();
    let k = g.class_count();
    if coeffs.coeffs.len() != k {
        return Err(Error::GroupMismatch("coefficient vector does not match the table".into()));
    }
    let values = (0..k)
        .into_par_iter()
        .map(|c| (0..k).map(|pi| coeffs.coeffs[pi] * t.value(pi, c)).sum())
        .collect();
    ClassFunction::new(g, values)
}

/// λ(f) with mean, spectral support and the table-free bounds.
pub fn lambda_norm(f: &ClassFunction, t: &CharacterTable) -> Result<NormReport> {
    let coeffs = fourier(f, t)?;
    let scale = coeffs.max_abs();
    let support: Vec<usize> = (0..coeffs.coeffs.len()).filter(|&pi| !coeffs.is_zero_at(pi, scale)).collect();
    let lambda = match &coeffs.exact {
        Some(ex) => {
            let total = support
                .iter()
                .fold(BigRational::zero(), |acc, &pi| acc + ex[pi].abs() * BigInt::from(t.dim(pi)));
            NormValue::Exact(total)
        }
        None => {
            let value = support.iter().map(|&pi| coeffs.coeffs[pi].norm() * t.dim(pi) as f64).sum();
            let dim_sum: f64 = (0..coeffs.coeffs.len()).map(|pi| t.dim(pi) as f64).sum();
            NormValue::Float { value, error: coeffs.error * dim_sum }
        }
    };
    let g = f.group();
    let bounds = Bounds { cauchy_schwarz: f.l2_mass().sqrt(), trivial: f.l1_mass() };
    let max = f.max_abs();
    let lam = lambda.value();
    if lam + 1e-9 * (1.0 + lam) + lambda.error() < max {
        return Err(Error::Invariant(format!("λ = {lam} is below max |f| = {max} on {}", g.name())));
    }
    Ok(NormReport {
        mu: coeffs.coeffs[t.trivial()],
        mu_exact: coeffs.exact.as_ref().map(|e| e[t.trivial()].clone()),
        lambda,
        support,
        bounds,
        coeffs,
    })
}

/// λ as a float.
pub fn lambda(f: &ClassFunction, t: &CharacterTable) -> Result<f64> {
    Ok(lambda_norm(f, t)?.lambda.value())
}

/// λ of the indicator of a class set.
pub fn lambda_of_set(d: &ClassSet, t: &CharacterTable) -> Result<NormReport> {
    lambda_norm(&ClassFunction::indicator(d), t)
}

/// Ramanujan sums `c_m(j)` for all `0 ≤ j < m`.
fn ramanujan_row(m: u64) -> Vec<i64> {
    let by_div: std::collections::HashMap<u64, i64> = divisors(m).into_iter().map(|d| (d, ramanujan_sum(m, d))).collect();
    (0..m).map(|j| by_div[&gcd(j, m)]).collect()
}

fn exact_coeffs(f: &ClassFunction, t: &CharacterTable) -> Option<Vec<BigRational>> {
    let vals = f.exact()?;
    if !t.is_exact() {
        return None;
    }
    let g = t.group();
    let m = t.modulus();
    // Rational coefficients require f to be constant on Galois orbits of classes.
    for k in unit_group_generators(m) {
        for c in 0..g.class_count() {
            if vals[g.class_power(c, k as i64)] != vals[c] {
                return None;
            }
        }
    }
    let denom = vals.iter().fold(BigInt::from(1), |acc, q| num_integer::Integer::lcm(&acc, q.denom()));
    let scaled: Vec<i128> = vals
        .iter()
        .map(|q| (q.numer() * (&denom / q.denom())).to_i128())
        .collect::<Option<_>>()?;
    let supp: Vec<usize> = (0..scaled.len()).filter(|&c| scaled[c] != 0).collect();
    let k = g.class_count();

    let numer: Vec<i128> = if g.is_abelian() && t.abelian_exponent(0, 0).is_some() {
        if (k as u64).saturating_mul(supp.len() as u64) > EXACT_BUDGET || m > 1 << 26 {
            return None;
        }
        let ram = ramanujan_row(m);
        (0..k)
            .into_par_iter()
            .map(|pi| {
                supp.iter().try_fold(0i128, |acc, &x| {
                    let j = t.abelian_exponent(pi, x).unwrap();
                    acc.checked_add(scaled[x].checked_mul(ram[j as usize] as i128)?)
                })
            })
            .collect::<Option<Vec<_>>>()?
    } else {
        if (k as u64).saturating_mul(supp.len() as u64) > EXACT_BUDGET {
            return None;
        }
        (0..k)
            .into_par_iter()
            .map(|pi| {
                supp.iter().try_fold(0i128, |acc, &c| {
                    let tr = t.exact_value(pi, c)?.trace(m) as i128;
                    let term = scaled[c].checked_mul(g.class_size(c) as i128)?.checked_mul(tr)?;
                    acc.checked_add(term)
                })
            })
            .collect::<Option<Vec<_>>>()?
    };
    let full = denom * BigInt::from(g.order()) * BigInt::from(euler_phi(m));
    Some(numer.into_iter().map(|n| BigRational::new(BigInt::from(n), full.clone())).collect())
}

fn float_coeffs(f: &ClassFunction, t: &CharacterTable) -> Result<FourierCoeffs> {
    let g = t.group();
    let k = g.class_count();
    let n = g.order() as f64;
    let vals = f.values();
    let supp: Vec<usize> = (0..k).filter(|&c| vals[c] != Complex64::zero()).collect();
    if g.is_abelian() && (k as u64).saturating_mul(supp.len() as u64) > FLOAT_BUDGET {
        return Err(Error::Budget(format!(
            "transform on {} needs {k}×{} character evaluations",
            g.name(),
            supp.len()
        )));
    }
    let coeffs: Vec<Complex64> = (0..k)
        .into_par_iter()
        .map(|pi| {
            let s: Complex64 =
                supp.iter().map(|&c| vals[c] * t.value(pi, c).conj() * g.class_size(c) as f64).sum();
            s / n
        })
        .collect();
    // First-order rounding: each of the |supp| terms and the table entries
    // carry a few ulps relative to (1/|G|) Σ |c| |f(c)| · max dim.
    let max_dim = (0..k).map(|pi| t.dim(pi)).max().unwrap_or(1) as f64;
    let error = 8.0 * f64::EPSILON * (supp.len() as f64 + 4.0) * f.l1_mass() / n * max_dim;
    Ok(FourierCoeffs { coeffs, exact: None, error })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::auto_table;
    use crate::group::Group;
    use num_bigint::BigInt;

    fn build(s: &str) -> Group {
        Group::build(&s.parse().unwrap()).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn set_lambda(g: &str, set: &str) -> NormReport {
        let g = build(g);
        let t = auto_table(&g).unwrap();
        lambda_of_set(&ClassSet::parse(&g, set).unwrap(), &t).unwrap()
    }

    #[test]
    fn exact_values() {
        assert_eq!(set_lambda("C6", "gen").lambda, NormValue::Exact(q(4, 3)));
        assert_eq!(set_lambda("S3", "ncycle").lambda, NormValue::Exact(q(4, 3)));
        assert_eq!(set_lambda("C4", "union:1,3").lambda, NormValue::Exact(q(1, 1)));
        assert_eq!(set_lambda("S3", "all").lambda, NormValue::Exact(q(1, 1)));
    }

    #[test]
    fn transforms_of_basic_functions() {
        let s3 = build("S3");
        let t = auto_table(&s3).unwrap();
        let f = ClassFunction::indicator(&ClassSet::parse(&s3, "ncycle").unwrap());
        let fc = fourier(&f, &t).unwrap();
        // Table order (3), (2,1), (1,1,1): trivial, standard, sign.
        assert_eq!(fc.exact().unwrap(), &[q(1, 3), q(-1, 3), q(1, 3)]);
        let back = reconstruct(&fc, &t).unwrap();
        for c in 0..3 {
            assert!((back.value(c) - f.value(c)).norm() < 1e-12);
        }
        let e = ClassFunction::indicator(&ClassSet::from_classes(&s3, [0]));
        let fe = fourier(&e, &t).unwrap();
        for pi in 0..3 {
            assert!((fe.get(pi).re - t.dim(pi) as f64 / 6.0).abs() < 1e-12);
        }
        let one = ClassFunction::indicator(&ClassSet::all(&s3));
        let fo = fourier(&one, &t).unwrap();
        assert_eq!(fo.exact().unwrap(), &[q(1, 1), q(0, 1), q(0, 1)]);
    }

    #[test]
    fn float_path_matches_exact_path() {
        let g = build("GL2(3)");
        let t = auto_table(&g).unwrap();
        for a in 0..3 {
            let d = ClassSet::parse(&g, &format!("trace={a}")).unwrap();
            let f = ClassFunction::indicator(&d);
            let float = float_coeffs(&f, &t).unwrap();
            let rep = lambda_norm(&f, &t).unwrap();
            let direct: f64 = (0..t.irrep_count()).map(|pi| float.get(pi).norm() * t.dim(pi) as f64).sum();
            assert!((rep.lambda.value() - direct).abs() < 1e-9);
            assert!(float.parseval_residual(&f) < 1e-9);
        }
        let c12 = build("C12");
        let t = auto_table(&c12).unwrap();
        let f = ClassFunction::indicator(&ClassSet::parse(&c12, "gen").unwrap());
        let ex = lambda_norm(&f, &t).unwrap();
        assert!(ex.lambda.exact().is_some());
        let fl = float_coeffs(&f, &t).unwrap();
        let direct: f64 = fl.coeffs().iter().map(|z| z.norm()).sum();
        assert!((ex.lambda.value() - direct).abs() < 1e-12);
    }

    #[test]
    fn non_invariant_sets_use_float_path() {
        let rep = set_lambda("C5", "union:1");
        assert!(rep.lambda.exact().is_none());
        assert!((rep.lambda.value() - 1.0).abs() < 1e-12);
        assert_eq!(rep.support.len(), 5);
    }

    #[test]
    fn bounds_and_mean() {
        let rep = set_lambda("S4", "fix=0");
        assert_eq!(rep.mu_exact, Some(q(9, 24)));
        assert!((rep.bounds.cauchy_schwarz - 3.0).abs() < 1e-12);
        assert!((rep.bounds.trivial - 9.0).abs() < 1e-12);
        assert!(rep.lambda.value() <= rep.bounds.cauchy_schwarz + 1e-12);
    }

    #[test]
    fn group_mismatch_is_an_error() {
        let t = auto_table(&build("C4")).unwrap();
        let f = ClassFunction::indicator(&ClassSet::all(&build("C4")));
        assert!(matches!(fourier(&f, &t), Err(Error::GroupMismatch(_))));
    }
}
