//! Prime counts weighted by class functions of Frobenius.

use num_complex::Complex64;

use super::sampler::{FrobSampler, Samples};
use crate::error::{Error, Result};
use crate::littlewood::{lambda_norm, ClassFunction};
use crate::sets::ClassSet;

/// Target absolute error of [`li`].
pub const LI_TOLERANCE: f64 = 1e-10;

/// `Li(x) = ∫₂^x dt / log t`, by adaptive Simpson in `u = log t`.
pub fn li(x: f64) -> Result<f64> {
    if !(x > 1.0) || !x.is_finite() {
        return Err(Error::invalid(format!("Li needs x > 1, got {x}")));
    }
    let g = |u: f64| u.exp() / u;
    let (a, b) = (2f64.ln(), x.ln());
    if a == b {
        return Ok(0.0);
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    // Subdivide at unit steps in u so each piece starts well resolved.
    let pieces = (hi - lo).ceil().max(1.0) as usize;
    let h = (hi - lo) / pieces as f64;
    let mut total = 0.0;
    for i in 0..pieces {
        let (s, e) = (lo + i as f64 * h, lo + (i + 1) as f64 * h);
        let m = 0.5 * (s + e);
        let (fs, fm, fe) = (g(s), g(m), g(e));
        let whole = (e - s) / 6.0 * (fs + 4.0 * fm + fe);
        total += simpson(&g, s, e, fs, fm, fe, whole, LI_TOLERANCE / pieces as f64, 48);
    }
    Ok(sign * total)
}

#[allow(clippy::too_many_arguments)]
fn simpson(g: &impl Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, eps: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (g(lm), g(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        return left + right + delta / 15.0;
    }
    simpson(g, a, m, fa, flm, fm, left, eps / 2.0, depth - 1) + simpson(g, m, b, fm, frm, fb, right, eps / 2.0, depth - 1)
}

fn set_function(s: &FrobSampler, d: &ClassSet) -> Result<ClassFunction> {
    if d.group() != s.group() {
        return Err(Error::GroupMismatch(format!(
            "set in {} but sampler on {}",
            d.group().name(),
            s.group().name()
        )));
    }
    Ok(ClassFunction::indicator(d))
}

/// `π(D, x)`: unramified primes `p < x` with Frobenius in `D`.
pub fn pi_set(s: &FrobSampler, d: &ClassSet, x: u64) -> Result<u64> {
    set_function(s, d)?;
    let mask = s.block_mask(d)?;
    let samples = s.sample(x.saturating_sub(1))?;
    Ok(count_in(&samples, &mask))
}

fn count_in(samples: &Samples, mask: &[bool]) -> u64 {
    samples.blocks.iter().flatten().filter(|&&b| mask[b]).count() as u64
}

/// `π(f, x) = Σ_{p < x unramified} f(Frob_p)`.
pub fn pi_f(s: &FrobSampler, f: &ClassFunction, x: u64) -> Result<Complex64> {
    let values = s.block_values(f)?;
    let samples = s.sample(x.saturating_sub(1))?;
    Ok(sum_values(&samples, &values))
}

fn sum_values(samples: &Samples, values: &[Complex64]) -> Complex64 {
    samples.blocks.iter().flatten().map(|&b| values[b]).sum()
}

/// Weighted von Mangoldt sums up to `x`.
#[derive(Clone, Debug)]
pub struct PsiReport {
    pub x: u64,
    /// `Σ_{p^k ≤ x} f(Frob_p^k) log p`.
    pub psi: Complex64,
    /// `Σ_{p^k ≤ x} f(Frob_p^k) log p (x − p^k)`.
    pub psi1: Complex64,
    /// `Σ_{p ≤ x} f(Frob_p) log p (x − p)`.
    pub theta1: Complex64,
    /// `ψ₁ − θ₁`, the prime-power contribution.
    pub discrepancy: Complex64,
}

pub fn psi_sums(s: &FrobSampler, f: &ClassFunction, x: u64) -> Result<PsiReport> {
    let values = s.block_values(f)?;
    let samples = s.sample(x)?;
    let xf = x as f64;
    let (mut psi, mut psi1, mut theta1) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    for (&p, b) in samples.primes.iter().zip(&samples.blocks) {
        let Some(b) = *b else { continue };
        let lp = (p as f64).ln();
        let first = values[b] * lp;
        theta1 += first * (xf - p as f64);
        let (mut q, mut k) = (p, 1u32);
        loop {
            let v = values[s.block_power(b, k)] * lp;
            psi += v;
            psi1 += v * (xf - q as f64);
            match q.checked_mul(p) {
                Some(next) if next <= x => {
                    q = next;
                    k += 1;
                }
                _ => break,
            }
        }
    }
    Ok(PsiReport { x, psi, psi1, theta1, discrepancy: psi1 - theta1 })
}

/// Deviation of `π(f, x)` from `μ(f) Li(x)` against `√x λ(f) (log x + log M + log|G|)`.
#[derive(Clone, Debug)]
pub struct ErrorTerm {
    pub x: u64,
    pub pi: Complex64,
    pub mu: Complex64,
    pub lambda: f64,
    pub li: f64,
    pub deviation: f64,
    pub scale: f64,
    pub ratio: f64,
}

pub fn error_term(s: &FrobSampler, f: &ClassFunction, x: u64) -> Result<ErrorTerm> {
    let values = s.block_values(f)?;
    let samples = s.sample(x.saturating_sub(1))?;
    error_term_from(s, f, &values, &samples, x)
}

fn error_term_from(
    s: &FrobSampler,
    f: &ClassFunction,
    values: &[Complex64],
    samples: &Samples,
    x: u64,
) -> Result<ErrorTerm> {
    if x < 3 {
        return Err(Error::invalid("error ratio needs x ≥ 3"));
    }
    let rep = lambda_norm(f, s.table()?)?;
    let lambda = rep.lambda.value();
    if lambda <= 0.0 {
        return Err(Error::invalid("error ratio needs λ(f) > 0"));
    }
    let pi = sum_values(samples, values);
    let li = li(x as f64)?;
    let deviation = (pi - rep.mu * li).norm();
    let xf = x as f64;
    let logs = xf.ln() + (s.modulus() as f64).ln() + (s.group().order() as f64).ln();
    let scale = xf.sqrt() * lambda * logs;
    Ok(ErrorTerm { x, pi, mu: rep.mu, lambda, li, deviation, scale, ratio: deviation / scale })
}

pub fn error_ratio(s: &FrobSampler, f: &ClassFunction, x: u64) -> Result<f64> {
    Ok(error_term(s, f, x)?.ratio)
}

/// Observed frequency of each label against its predicted density.
#[derive(Clone, Debug)]
pub struct DensityReport {
    pub x: u64,
    pub labels: Vec<String>,
    pub counts: Vec<u64>,
    pub densities: Vec<f64>,
    pub frequencies: Vec<f64>,
    /// `frequency − density`.
    pub deviations: Vec<f64>,
    /// Counted primes (ramified or skipped primes excluded).
    pub total: u64,
    pub skipped: u64,
    /// `½ Σ |frequency − density|`.
    pub tv_distance: f64,
    /// Error ratio of each block indicator, when a character table is available.
    pub error_ratios: Option<Vec<f64>>,
}

impl DensityReport {
    pub(crate) fn new(x: u64, labels: Vec<String>, counts: Vec<u64>, densities: Vec<f64>, skipped: u64) -> Self {
        let total: u64 = counts.iter().sum();
        let frequencies: Vec<f64> =
            counts.iter().map(|&c| if total == 0 { 0.0 } else { c as f64 / total as f64 }).collect();
        let deviations: Vec<f64> = frequencies.iter().zip(&densities).map(|(f, d)| f - d).collect();
        let tv_distance = 0.5 * deviations.iter().map(|d| d.abs()).sum::<f64>();
        DensityReport { x, labels, counts, densities, frequencies, deviations, total, skipped, tv_distance, error_ratios: None }
    }

    pub fn max_deviation(&self) -> f64 {
        self.deviations.iter().fold(0.0, |m, d| m.max(d.abs()))
    }
}

/// Frobenius distribution over blocks for primes `< x`.
pub fn chebotarev_density(s: &FrobSampler, x: u64, with_error_ratios: bool) -> Result<DensityReport> {
    let samples = s.sample(x.saturating_sub(1))?;
    let n = s.block_count();
    let mut counts = vec![0u64; n];
    for b in samples.blocks.iter().flatten() {
        counts[*b] += 1;
    }
    let order = s.group().order() as f64;
    let densities = (0..n).map(|b| s.block_size(b) as f64 / order).collect();
    let labels = (0..n).map(|b| s.block_label(b).to_string()).collect();
    let mut report = DensityReport::new(x, labels, counts, densities, samples.ramified() as u64);
    if with_error_ratios && x >= 3 {
        let mut ratios = Vec::with_capacity(n);
        for b in 0..n {
            let d = ClassSet::from_classes(s.group(), s.block_classes(b).iter().copied());
            let f = ClassFunction::indicator(&d);
            let values = s.block_values(&f)?;
            ratios.push(error_term_from(s, &f, &values, &samples, x)?.ratio);
        }
        report.error_ratios = Some(ratios);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    /// Ramanujan's series for `li(x)`, an independent oracle.
    fn li_series(x: f64) -> f64 {
        let gamma = 0.577_215_664_901_532_9;
        let l = x.ln();
        let mut sum = 0.0;
        let mut term_fact = 1.0;
        for n in 1..200 {
            term_fact *= l / n as f64;
            let inner: f64 = (0..=(n - 1) / 2).map(|k| 1.0 / (2 * k + 1) as f64).sum();
            let sign = if (n - 1) % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * term_fact / 2f64.powi(n as i32 - 1) * inner;
        }
        gamma + l.ln() + x.sqrt() * sum
    }

    #[test]
    fn logarithmic_integral() {
        let offset = li_series(2.0);
        for x in [3.0, 10.0, 100.0, 1e4, 1e6] {
            let want = li_series(x) - offset;
            assert!((li(x).unwrap() - want).abs() < 1e-8 * (1.0 + want), "x = {x}");
        }
        assert!((li(100.0).unwrap() - 29.080_977_804_1).abs() < 1e-6);
        assert_eq!(li(2.0).unwrap(), 0.0);
        assert!(li(1.0).is_err());
    }

    #[test]
    fn cyclotomic_counts() {
        let s = FrobSampler::cyclotomic(4).unwrap();
        let g = s.group().clone();
        let one = ClassSet::parse(&g, "class:1").unwrap();
        assert_eq!(pi_set(&s, &one, 100).unwrap(), 11);
        // Whole group: π(100) minus the ramified prime 2.
        assert_eq!(pi_set(&s, &ClassSet::all(&g), 100).unwrap(), 24);
        let three = one.complement();
        assert_eq!(pi_set(&s, &three, 100).unwrap() + 11, 24);
    }

    #[test]
    fn chebyshev_sum() {
        let s = FrobSampler::cyclotomic(1).unwrap();
        let g = s.group().clone();
        let ones = ClassFunction::constant(&g, num_rational::BigRational::one());
        let r = psi_sums(&s, &ones, 100).unwrap();
        // ψ(100) by direct summation of log p over prime powers.
        let mut want = 0.0;
        for n in 2u64..=100 {
            let p = crate::nt::prime_divisors(n);
            if p.len() == 1 {
                want += (p[0] as f64).ln();
            }
        }
        assert!((r.psi.re - want).abs() < 1e-9);
        assert!((r.psi.re - 94.045).abs() < 1e-3);
        assert!(r.discrepancy.re > 0.0);
        let zero = ClassFunction::constant(&g, num_rational::BigRational::from_integer(0.into()));
        assert_eq!(psi_sums(&s, &zero, 100).unwrap().psi, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn small_error_ratios_are_finite() {
        let s = FrobSampler::cyclotomic(4).unwrap();
        let g = s.group().clone();
        let f = ClassFunction::indicator(&ClassSet::parse(&g, "class:1").unwrap());
        let r = error_ratio(&s, &f, 3).unwrap();
        assert!(r.is_finite());
        let rep = chebotarev_density(&s, 1000, true).unwrap();
        assert_eq!(rep.total + rep.skipped, 168);
        assert!(rep.error_ratios.unwrap().iter().all(|r| *r < 5.0));
    }
}
