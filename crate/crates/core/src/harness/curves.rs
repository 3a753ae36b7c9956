//! Trace statistics of elliptic curves and disagreement of characters.

use num_complex::Complex64;

use super::least::LeastPrimeReport;
use super::par_map;
use super::stats::DensityReport;
use crate::arith::{ap, gl2_trace_class_size, primes_up_to, radical, Ap, ECurve};
use crate::characters::CharacterTable;
use crate::error::{Error, Result};
use crate::littlewood::ClassFunction;

/// `a_p` for all primes `p < x`.
pub fn ap_values(e: &ECurve, x: u64) -> Result<Vec<(u64, Ap)>> {
    let primes: Vec<u64> = primes_up_to(x.saturating_sub(1))?.iter().collect();
    let values = par_map(&primes, |p| ap(e, p)).into_iter().collect::<Result<Vec<_>>>()?;
    Ok(primes.into_iter().zip(values).collect())
}

/// `π(a, x)`: good primes `p < x` with `a_p = a`.
pub fn lang_trotter(e: &ECurve, a: i64, x: u64) -> Result<u64> {
    Ok(ap_values(e, x)?.iter().filter(|(_, v)| *v == Ap::Good(a)).count() as u64)
}

/// Distribution of `a_p mod ℓ` over good `p < x`, `p ≠ ℓ`, against the trace
/// densities of `GL2(F_ℓ)` (which assumes the mod-ℓ image is all of `GL2`).
pub fn ap_mod_distribution(e: &ECurve, ell: u64, x: u64) -> Result<DensityReport> {
    let order = ((ell * ell - 1) * (ell * ell - ell)) as f64;
    let densities = (0..ell).map(|a| Ok(gl2_trace_class_size(ell, a)? as f64 / order)).collect::<Result<Vec<_>>>()?;
    let mut counts = vec![0u64; ell as usize];
    let mut skipped = 0;
    for (p, v) in ap_values(e, x)? {
        match v {
            Ap::Good(a) if p != ell => counts[a.rem_euclid(ell as i64) as usize] += 1,
            _ => skipped += 1,
        }
    }
    let labels = (0..ell).map(|a| format!("tr={a}")).collect();
    Ok(DensityReport::new(x, labels, counts, densities, skipped))
}

#[derive(Clone, Debug)]
pub struct DisagreementReport {
    pub least: LeastPrimeReport,
    /// `(log M)² (log log 2M)³`, the shape for quadratic twists.
    pub twist_shape: f64,
}

/// Least prime of good reduction for both curves with `a_p ≠ a′_p`, against
/// `(log M)² (log log 2M)⁵`.
pub fn first_disagreement(e1: &ECurve, e2: &ECurve, budget: u64) -> Result<DisagreementReport> {
    let mut found = None;
    let mut lo = 0u64;
    let mut hi = 1024u64.min(budget);
    'outer: loop {
        let primes: Vec<u64> = primes_up_to(hi)?.iter().filter(|&p| p > lo).collect();
        let pairs = par_map(&primes, |p| Ok::<_, Error>((ap(e1, p)?, ap(e2, p)?)));
        for (p, pair) in primes.iter().zip(pairs) {
            if let (Ap::Good(a), Ap::Good(b)) = pair? {
                if a != b {
                    found = Some(*p);
                    break 'outer;
                }
            }
        }
        if hi >= budget {
            break;
        }
        lo = hi;
        hi = hi.saturating_mul(4).min(budget);
    }
    let searched = hi;
    let verified = match found {
        Some(p) => matches!((ap(e1, p)?, ap(e2, p)?), (Ap::Good(a), Ap::Good(b)) if a != b),
        None => true,
    };
    let m = radical(&(e1.discriminant() * e2.discriminant()))? as f64;
    let lm = m.ln();
    let lll = (2.0 * m).ln().ln();
    let general = lm * lm * lll.powi(5);
    let ratio = found.map(|p| p as f64 / general);
    let least = LeastPrimeReport {
        prime: found,
        searched_to: searched,
        log_m: lm,
        bound_shape: Some(general),
        ratio,
        verified,
        shape: "(log M)²(log log 2M)⁵".into(),
    };
    Ok(DisagreementReport { least, twist_shape: lm * lm * lll.powi(3) })
}

/// Size of the disagreement set of two characters of equal degree `d`,
/// against `|G| / (2d²)`.
#[derive(Clone, Debug)]
pub struct DisagreementSetReport {
    pub degree: u64,
    pub size: u64,
    pub lower: f64,
    /// `A = ∅` or `|A| ≥ |G|/(2d²)`.
    pub holds: bool,
    /// `A = ∅` or `|A| > |G|/(2d²)`.
    pub strict: bool,
}

pub fn disagreement_set_bound(chi1: &ClassFunction, chi2: &ClassFunction) -> Result<DisagreementSetReport> {
    let g = chi1.group();
    if chi2.group() != g {
        return Err(Error::GroupMismatch("characters on different groups".into()));
    }
    let e = g.class_of(g.identity());
    let degree_of = |chi: &ClassFunction| {
        let v = chi.value(e);
        let d = v.re.round();
        if (v - Complex64::new(d, 0.0)).norm() > 1e-9 || d < 1.0 {
            return Err(Error::invalid(format!("value {v} at the identity is not a positive degree")));
        }
        Ok(d as u64)
    };
    let d = degree_of(chi1)?;
    if degree_of(chi2)? != d {
        return Err(Error::invalid("characters have different degrees"));
    }
    let size: u64 = (0..g.class_count())
        .filter(|&c| (chi1.value(c) - chi2.value(c)).norm() > 1e-9)
        .map(|c| g.class_size(c))
        .sum();
    let lower = g.order() as f64 / (2.0 * (d * d) as f64);
    // |G|/(2d²) is rational; compare 2d²|A| with |G| exactly.
    let lhs = 2 * d * d * size;
    let order = g.order() as u64;
    Ok(DisagreementSetReport {
        degree: d,
        size,
        lower,
        holds: size == 0 || lhs >= order,
        strict: size == 0 || lhs > order,
    })
}

/// `8(1 + √(ℓ⁴(ℓ²+ℓ)/(ℓ−1)))`, or `8√2 ℓ²` for quadratic twists.
pub fn twist_phi_bound(ell: u64, quadratic_twist: bool) -> Result<f64> {
    if ell < 2 {
        return Err(Error::invalid("ℓ must be at least 2"));
    }
    let l = ell as f64;
    Ok(if quadratic_twist {
        8.0 * 2f64.sqrt() * l * l
    } else {
        8.0 * (1.0 + (l.powi(4) * (l * l + l) / (l - 1.0)).sqrt())
    })
}

/// Every character of degree `d`: nonnegative integer combinations of irreducibles.
pub fn characters_of_degree(t: &CharacterTable, d: u64) -> Vec<ClassFunction> {
    let dims = t.dims();
    let mut out = Vec::new();
    let mut mult = vec![0u64; dims.len()];
    fn rec(i: usize, left: u64, dims: &[u64], mult: &mut [u64], t: &CharacterTable, out: &mut Vec<ClassFunction>) {
        if i == dims.len() {
            if left == 0 {
                let g = t.group();
                let values = (0..g.class_count())
                    .map(|c| (0..dims.len()).map(|pi| t.value(pi, c) * mult[pi] as f64).sum())
                    .collect();
                out.push(ClassFunction::new(g, values).expect("finite character values"));
            }
            return;
        }
        let mut k = 0;
        while k * dims[i] <= left {
            mult[i] = k;
            rec(i + 1, left - k * dims[i], dims, mult, t, out);
            k += 1;
        }
        mult[i] = 0;
    }
    rec(0, d, &dims, &mut mult, t, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::auto_table;
    use crate::group::Group;

    #[test]
    fn supersingular_primes_of_37a() {
        let e: ECurve = "ec:37a".parse().unwrap();
        assert!(lang_trotter(&e, 0, 10_000).unwrap() > 0);
        assert_eq!(lang_trotter(&e, 0, 2).unwrap(), 0);
    }

    #[test]
    fn trace_distribution_mod_three() {
        let e: ECurve = "ec:37a".parse().unwrap();
        let r = ap_mod_distribution(&e, 3, 20_000).unwrap();
        assert!((r.densities.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(r.tv_distance < 0.05, "{}", r.tv_distance);
    }

    #[test]
    fn disagreeing_curves() {
        let e1 = ECurve::short(1, 1).unwrap();
        let e2 = ECurve::short(1, 2).unwrap();
        let r = first_disagreement(&e1, &e2, 1000).unwrap();
        assert!(r.least.prime.unwrap() <= 7);
        assert!(r.least.verified);
        let same = first_disagreement(&e1, &e1, 200).unwrap();
        assert_eq!(same.least.prime, None);
    }

    #[test]
    fn disagreement_sets() {
        let c4 = Group::build(&"C4".parse().unwrap()).unwrap();
        let t = auto_table(&c4).unwrap();
        let linear = characters_of_degree(&t, 1);
        assert_eq!(linear.len(), 4);
        // Trivial against the order-two character: A = {1, 3}, |G|/2 = 2.
        let order_two = linear
            .iter()
            .find(|chi| (0..4).all(|c| (chi.value(c).re.abs() - 1.0).abs() < 1e-9 && chi.value(c).im.abs() < 1e-9) && chi.value(1).re < 0.0)
            .unwrap();
        let trivial = linear.iter().find(|chi| (0..4).all(|c| (chi.value(c).re - 1.0).abs() < 1e-9)).unwrap();
        let r = disagreement_set_bound(trivial, order_two).unwrap();
        assert_eq!(r.size, 2);
        assert!(r.holds);
        assert!(!r.strict);
        let r = disagreement_set_bound(trivial, trivial).unwrap();
        assert_eq!(r.size, 0);
        assert!(r.holds);
        let s3 = Group::build(&"S3".parse().unwrap()).unwrap();
        assert_eq!(characters_of_degree(&auto_table(&s3).unwrap(), 2).len(), 4);
    }

    #[test]
    fn twist_bounds() {
        assert!((twist_phi_bound(3, true).unwrap() - 72.0 * 2f64.sqrt()).abs() < 1e-9);
        assert!((twist_phi_bound(3, false).unwrap() - 8.0 * (1.0 + (81.0 * 12.0 / 2.0f64).sqrt())).abs() < 1e-9);
    }
}
