//! Reduction to a quotient of a subgroup, coset certificates, and sieve weights.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::transport::constant_argument;
use super::{fourier, lambda_norm, lambda_of_set, ClassFunction};
use crate::characters::{auto_table, CharacterTable};
use crate::error::{Error, Result};
use crate::group::SubgroupHandle;
use crate::sets::ClassSet;

/// Outcome of bounding `λ_G(D)` through `H/U`.
#[derive(Clone, Debug)]
pub struct SerreReport {
    /// `|C(d)|` is the same for every class in `D`.
    pub class_sizes_uniform: bool,
    /// `|C(d) ∩ H|` is the same, and nonzero, for every class in `D`.
    pub intersections_uniform: bool,
    /// `U (D ∩ H) = D ∩ H`.
    pub kernel_stable: bool,
    /// `|C(d)| / |C(d) ∩ H|`, when the three hypotheses hold.
    pub factor: Option<BigRational>,
    /// `λ_{H/U}` of the image of `D ∩ H`.
    pub quotient_lambda: Option<f64>,
    pub bound: Option<f64>,
    /// `λ_G(D)`, always computed.
    pub lambda: f64,
    /// For every `π ∈ Ĝ`, the quotient coefficients over the `ρ` with `ρ ∘ s` in
    /// `π|_H` share one argument.
    pub argument_condition: Option<bool>,
    /// `λ_G(D)` equals the bound (relative tolerance 1e-9).
    pub equality: Option<bool>,
}

impl SerreReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.class_sizes_uniform && self.intersections_uniform && self.kernel_stable
    }
}

/// Checks the hypotheses by enumeration and, when they hold, evaluates
/// `λ_G(D) ≤ |C(d)| / |C(d) ∩ H| · λ_{H/U}(s(D ∩ H))`.
pub fn serre_reduce(
    tg: &CharacterTable,
    d: &ClassSet,
    h: &SubgroupHandle,
    u: &SubgroupHandle,
) -> Result<SerreReport> {
    let g = tg.group();
    if d.is_empty() {
        return Err(Error::invalid("the class set is empty"));
    }
    if d.group() != g || h.parent() != g || u.parent() != h.group() {
        return Err(Error::GroupMismatch("set, subgroup and kernel must be nested in one group".into()));
    }
    if !u.is_normal() {
        return Err(Error::NotNormal("the kernel is not normal in the subgroup".into()));
    }
    let hg = h.group();
    let lambda = lambda_of_set(d, tg)?.lambda.value();
    let classes = d.classes();
    let size = g.class_size(classes[0]);
    let class_sizes_uniform = classes.iter().all(|&c| g.class_size(c) == size);

    let mut in_h = vec![0u64; g.class_count()];
    for &x in h.elements() {
        in_h[g.class_of(x)] += 1;
    }
    let meet = in_h[classes[0]];
    let intersections_uniform = meet > 0 && classes.iter().all(|&c| in_h[c] == meet);

    let dh: Vec<usize> = (0..hg.order()).filter(|&y| d.contains_element(h.embed(y))).collect();
    let kernel_gens: Vec<usize> = u.group().generators().iter().map(|&x| u.embed(x)).collect();
    let kernel_stable = kernel_gens
        .iter()
        .all(|&k| dh.iter().all(|&y| d.contains_element(h.embed(hg.mul(k, y)))));

    let mut report = SerreReport {
        class_sizes_uniform,
        intersections_uniform,
        kernel_stable,
        factor: None,
        quotient_lambda: None,
        bound: None,
        lambda,
        argument_condition: None,
        equality: None,
    };
    if !report.hypotheses_hold() {
        return Ok(report);
    }

    let q = hg.quotient(u)?;
    let qg = q.group();
    let image: Vec<usize> = dh.iter().map(|&y| q.project(y)).collect();
    let sd = ClassSet::from_elements(qg, &image)?;
    let tq = auto_table(qg)?;
    let fq = ClassFunction::indicator(&sd);
    let lq = lambda_norm(&fq, &tq)?.lambda.value();
    let factor = BigRational::new(BigInt::from(size), BigInt::from(meet));
    let bound = factor.to_f64().unwrap_or(f64::NAN) * lq;

    // ρ ∘ s restricted to H-classes, against π restricted to H.
    let coeffs = fourier(&fq, &tq)?;
    let scale = coeffs.max_abs();
    let h_classes: Vec<(usize, usize, f64)> = (0..hg.class_count())
        .map(|c| {
            let rep = hg.class_rep(c);
            (g.class_of(h.embed(rep)), qg.class_of(q.project(rep)), hg.class_size(c) as f64)
        })
        .collect();
    let mut argument_condition = true;
    for pi in 0..tg.irrep_count() {
        let occurring = (0..tq.irrep_count()).filter(|&rho| {
            let s: Complex64 = h_classes
                .iter()
                .map(|&(gc, qc, sz)| tg.value(pi, gc) * tq.value(rho, qc).conj() * sz)
                .sum();
            s.re / hg.order() as f64 > 0.5
        });
        if !constant_argument(occurring.map(|rho| coeffs.get(rho)), scale) {
            argument_condition = false;
            break;
        }
    }
    report.factor = Some(factor);
    report.quotient_lambda = Some(lq);
    report.bound = Some(bound);
    report.argument_condition = Some(argument_condition);
    report.equality = Some((lambda - bound).abs() <= 1e-9 * (1.0 + bound));
    Ok(report)
}

/// Witness that a class set is a coset `aH` of a normal subgroup with `a`
/// central modulo `H`.
#[derive(Clone, Debug)]
pub struct CosetCertificate {
    pub a: usize,
    pub subgroup: SubgroupHandle,
}

/// Finds `(a, H)` with `D = aH`, `H = {x y⁻¹ : x, y ∈ D}` normal and `a`
/// central in `G/H`, or reports that none exists.
pub fn coset_certificate(d: &ClassSet) -> Result<Option<CosetCertificate>> {
    if d.is_empty() {
        return Err(Error::invalid("the class set is empty"));
    }
    let g = d.group();
    let elems = d.elements();
    let a = elems[0];
    let a_inv = g.inv(a);
    let mut hset: Vec<usize> = elems.iter().map(|&x| g.mul(a_inv, x)).collect();
    hset.sort_unstable();
    let sub = g.subgroup(&hset)?;
    if sub.order() != hset.len() || !sub.is_normal() {
        return Ok(None);
    }
    let central = g.generators().iter().all(|&s| {
        let comm = g.mul(g.mul(g.mul(s, a), g.inv(s)), a_inv);
        sub.contains(comm)
    });
    Ok(central.then_some(CosetCertificate { a, subgroup: sub }))
}

/// The mean-zero, unit-variance two-valued weight attached to `D`.
#[derive(Clone, Debug)]
pub struct SieveWeight {
    pub phi: ClassFunction,
    pub lambda: f64,
    /// λ of the pointwise square.
    pub lambda_sq: f64,
    pub mu: f64,
    /// `(|G|/|D|) λ(D)`.
    pub bound: f64,
}

/// `φ_D = sqrt((|G|−|D|)/|D|)` on `D` and `−sqrt(|D|/(|G|−|D|))` off `D`.
pub fn sieve_weight(d: &ClassSet, t: &CharacterTable) -> Result<SieveWeight> {
    let g = d.group();
    let n = g.order() as f64;
    let sz = d.size() as f64;
    if d.is_empty() || d.size() == g.order() as u64 {
        return Err(Error::invalid("sieve weight needs 0 < |D| < |G|"));
    }
    let on = ((n - sz) / sz).sqrt();
    let off = -(sz / (n - sz)).sqrt();
    let values = d.mask().iter().map(|&b| if b { on } else { off }).collect();
    let phi = ClassFunction::real(g, values)?;
    let rep = lambda_norm(&phi, t)?;
    // φ_D² takes the rational values (|G|−|D|)/|D| and |D|/(|G|−|D|).
    let (nd, dd) = (BigInt::from(g.order() as u64 - d.size()), BigInt::from(d.size()));
    let sq_on = BigRational::new(nd.clone(), dd.clone());
    let sq_off = BigRational::new(dd, nd);
    let sq = ClassFunction::rational(
        g,
        d.mask().iter().map(|&b| if b { sq_on.clone() } else { sq_off.clone() }).collect(),
    )?;
    let lambda_sq = lambda_norm(&sq, t)?.lambda.value();
    let bound = n / sz * lambda_of_set(d, t)?.lambda.value();
    Ok(SieveWeight { phi, lambda: rep.lambda.value(), lambda_sq, mu: rep.mu.re, bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;

    fn build(s: &str) -> Group {
        Group::build(&s.parse().unwrap()).unwrap()
    }

    fn borel_pair(g: &crate::group::Group) -> (SubgroupHandle, SubgroupHandle) {
        let upper: Vec<usize> = (0..g.order()).filter(|&x| g.as_matrix(x).unwrap().0[2] == 0).collect();
        let b = g.subgroup(&upper).unwrap();
        let bg = b.group().clone();
        let unipotent: Vec<usize> = (0..bg.order())
            .filter(|&y| {
                let m = g.as_matrix(b.embed(y)).unwrap().0;
                m[0] == 1 && m[3] == 1
            })
            .collect();
        let u = bg.subgroup(&unipotent).unwrap();
        (b, u)
    }

    #[test]
    fn gl2_three_trace_zero() {
        let g = build("GL2(3)");
        let t = auto_table(&g).unwrap();
        let (b, u) = borel_pair(&g);
        assert_eq!((b.order(), u.order()), (12, 3));
        let d = ClassSet::parse(&g, "trace=0,dr").unwrap();
        let r = serre_reduce(&t, &d, &b, &u).unwrap();
        assert!(r.hypotheses_hold());
        assert_eq!(r.factor, Some(BigRational::from_integer(BigInt::from(2))));
        assert!((r.quotient_lambda.unwrap() - 1.0).abs() < 1e-12);
        assert!((r.lambda - 2.0).abs() < 1e-9);
        assert_eq!(r.equality, Some(true));
        assert_eq!(r.argument_condition, Some(true));
    }

    #[test]
    fn degenerate_and_violating_inputs() {
        let s4 = build("S4");
        let t = auto_table(&s4).unwrap();
        let whole = s4.as_subgroup().unwrap();
        let triv = whole.group().subgroup(&[]).unwrap();
        let d = ClassSet::parse(&s4, "ncycle").unwrap();
        let r = serre_reduce(&t, &d, &whole, &triv).unwrap();
        assert_eq!(r.factor, Some(BigRational::from_integer(BigInt::from(1))));
        assert!((r.bound.unwrap() - r.lambda).abs() < 1e-9);
        assert_eq!(r.equality, Some(true));
        let mixed = ClassSet::parse(&s4, "fix=0").unwrap();
        let r = serre_reduce(&t, &mixed, &whole, &triv).unwrap();
        assert!(!r.class_sizes_uniform);
        assert!(r.bound.is_none());
        assert!(serre_reduce(&t, &ClassSet::empty(&s4), &whole, &triv).is_err());
    }

    #[test]
    fn coset_examples() {
        let c4 = build("C4");
        let cert = coset_certificate(&ClassSet::parse(&c4, "union:1,3").unwrap()).unwrap().unwrap();
        assert_eq!(cert.a, 1);
        assert_eq!(cert.subgroup.elements(), &[0, 2]);
        let s3 = build("S3");
        let a3 = ClassSet::parse(&s3, "fix=0").unwrap().union(&ClassSet::from_classes(&s3, [0]));
        let cert = coset_certificate(&a3).unwrap().unwrap();
        assert_eq!(cert.a, 0);
        assert_eq!(cert.subgroup.order(), 3);
        assert!(coset_certificate(&ClassSet::parse(&s3, "ncycle").unwrap()).unwrap().is_none());
        assert!(coset_certificate(&ClassSet::empty(&s3)).is_err());
    }

    #[test]
    fn sieve_weight_examples() {
        let c4 = build("C4");
        let t = auto_table(&c4).unwrap();
        let w = sieve_weight(&ClassSet::from_classes(&c4, [0]), &t).unwrap();
        assert!((w.phi.value(0).re - 3f64.sqrt()).abs() < 1e-12);
        assert!((w.phi.value(1).re + 1.0 / 3f64.sqrt()).abs() < 1e-12);
        assert!(w.mu.abs() < 1e-12);
        assert!(w.lambda < w.bound && w.lambda_sq < w.bound);

        let s3 = build("S3");
        let t = auto_table(&s3).unwrap();
        let w = sieve_weight(&ClassSet::parse(&s3, "ncycle").unwrap(), &t).unwrap();
        assert!(w.lambda <= 4.0 + 1e-12);
        assert!((w.bound - 4.0).abs() < 1e-12);

        let c2 = build("C2");
        let t = auto_table(&c2).unwrap();
        let w = sieve_weight(&ClassSet::from_classes(&c2, [1]), &t).unwrap();
        assert!(w.mu.abs() < 1e-12);
        assert!((w.lambda - 1.0).abs() < 1e-12);
        assert!(sieve_weight(&ClassSet::all(&c2), &t).is_err());
    }
}
