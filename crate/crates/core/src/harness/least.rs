//! Least primes with prescribed Frobenius, against the `φ² log²` bound shape.

use super::par_map;
use super::sampler::FrobSampler;
use crate::arith::{factor_pattern, primes_up_to, radical, FactorPattern, PolyZ};
use crate::error::{Error, Result};
use crate::nt::{mult_order, omega, prime_divisors};
use crate::phi::{phi_solve, PhiInstance};
use crate::sets::ClassSet;

/// Default search limit for least-prime scans.
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug)]
pub struct LeastPrimeReport {
    /// `None` when no qualifying prime was found below `searched_to`.
    pub prime: Option<u64>,
    pub searched_to: u64,
    /// `log M` for the ramified radical used.
    pub log_m: f64,
    /// Bound shape with constant 1, when defined.
    pub bound_shape: Option<f64>,
    /// `prime / bound_shape`.
    pub ratio: Option<f64>,
    /// The prime was re-checked after the scan.
    pub verified: bool,
    /// Description of the bound shape.
    pub shape: String,
}

impl LeastPrimeReport {
    fn finish(prime: Option<u64>, searched_to: u64, log_m: f64, bound_shape: Option<f64>, verified: bool, shape: String) -> Self {
        let ratio = match (prime, bound_shape) {
            (Some(p), Some(b)) if b > 0.0 => Some(p as f64 / b),
            _ => None,
        };
        LeastPrimeReport { prime, searched_to, log_m, bound_shape, ratio, verified, shape }
    }
}

/// Scans primes in doubling windows up to `budget`; `test` returns `Some(true)`
/// for a qualifying prime and `None` for a skipped one.
fn scan(budget: u64, test: impl Fn(u64) -> Result<Option<bool>> + Sync + Send) -> Result<Option<u64>> {
    let mut lo = 0u64;
    let mut hi = 1024u64.min(budget);
    loop {
        let table = primes_up_to(hi)?;
        let window: Vec<u64> = table.iter().filter(|&p| p > lo).collect();
        let hits = par_map(&window, &test);
        for (p, hit) in window.iter().zip(hits) {
            if hit? == Some(true) {
                return Ok(Some(*p));
            }
        }
        if hi >= budget {
            return Ok(None);
        }
        lo = hi;
        hi = hi.saturating_mul(4).min(budget);
    }
}

/// Least unramified prime with Frobenius in `D`, against `φ(D)² (log M + log|G|)²`.
pub fn least_prime(s: &FrobSampler, d: &ClassSet, budget: u64) -> Result<LeastPrimeReport> {
    if d.group() != s.group() {
        return Err(Error::GroupMismatch(format!("set in {} but sampler on {}", d.group().name(), s.group().name())));
    }
    if d.is_empty() {
        return Err(Error::invalid("empty target set"));
    }
    let mask = s.block_mask(d)?;
    let hit = |p: u64| -> Result<Option<bool>> { Ok(s.frob(p)?.map(|b| mask[b])) };
    let prime = scan(budget, hit)?;
    let verified = match prime {
        Some(p) => hit(p)? == Some(true),
        None => true,
    };
    let log_m = (s.modulus() as f64).ln();
    let phi = s
        .table()
        .ok()
        .and_then(|t| PhiInstance::new(t, d.clone()).ok().and_then(|inst| phi_solve(&inst).ok()))
        .map(|sol| sol.upper);
    let logs = log_m + (s.group().order() as f64).ln();
    let bound = phi.map(|v| v * v * logs * logs);
    Ok(LeastPrimeReport::finish(prime, budget, log_m, bound, verified, "φ(D)²(log M + log|G|)²".into()))
}

/// Root conditions on `P mod p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyMode {
    HasRoot,
    TwoRoots,
    NoRoot,
    Irreducible,
}

impl std::str::FromStr for PolyMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "has_root" => Ok(PolyMode::HasRoot),
            "two_roots" => Ok(PolyMode::TwoRoots),
            "no_root" => Ok(PolyMode::NoRoot),
            "irreducible" => Ok(PolyMode::Irreducible),
            _ => Err(Error::parse(format!("unknown mode '{s}' (has_root|two_roots|no_root|irreducible)"))),
        }
    }
}

impl PolyMode {
    pub fn holds(self, pattern: &FactorPattern, degree: usize) -> Option<bool> {
        let degrees = pattern.degrees()?;
        let roots = degrees.iter().filter(|&&d| d == 1).count();
        Some(match self {
            PolyMode::HasRoot => roots >= 1,
            PolyMode::TwoRoots => roots >= 2,
            PolyMode::NoRoot => roots == 0,
            PolyMode::Irreducible => degrees == [degree as u32],
        })
    }
}

/// Least prime with squarefree `P mod p` meeting the root condition.
pub fn least_prime_poly(p: &PolyZ, mode: PolyMode, budget: u64) -> Result<LeastPrimeReport> {
    let disc = p.discriminant();
    if disc == num_bigint::BigInt::from(0) {
        return Err(Error::invalid(format!("{p} is not squarefree")));
    }
    let n = p.degree();
    let hit = |q: u64| -> Result<Option<bool>> { Ok(mode.holds(&factor_pattern(p, q), n)) };
    let prime = scan(budget, hit)?;
    let verified = match prime {
        Some(q) => hit(q)? == Some(true),
        None => true,
    };
    let log_m = (radical(&(disc * num_bigint::BigInt::from(p.leading())))? as f64).ln();
    let nf = n as f64;
    let inner = (log_m + nf * nf.ln()).powi(2);
    let (factor, shape) = match mode {
        PolyMode::HasRoot => (nf * nf, "n²(log M + n log n)²"),
        PolyMode::TwoRoots | PolyMode::NoRoot => (nf.powi(4), "n⁴(log M + n log n)²"),
        PolyMode::Irreducible => (4f64.powi(n as i32 - 1) / nf.powi(4), "4^(n−1)(log M + n log n)²/n⁴"),
    };
    Ok(LeastPrimeReport::finish(prime, budget, log_m, Some(factor * inner), verified, shape.into()))
}

/// Least prime generating `(Z/ℓ)^×`.
pub fn least_prime_primitive_root(ell: u64) -> Result<LeastPrimeReport> {
    if ell < 3 || !crate::nt::is_prime(ell) {
        return Err(Error::invalid(format!("{ell} is not an odd prime")));
    }
    let hit = |p: u64| -> Result<Option<bool>> {
        if p == ell {
            return Ok(None);
        }
        Ok(Some(mult_order(p % ell, ell) == ell - 1))
    };
    // A primitive root below ℓ always exists, and the least prime one is small.
    let prime = scan(DEFAULT_SEARCH_BUDGET, hit)?;
    let verified = match prime {
        Some(p) => hit(p)? == Some(true),
        None => false,
    };
    let mass: f64 = prime_divisors(ell - 1).iter().map(|&q| 1.0 / q as f64).sum();
    let log_l = (ell as f64).ln();
    let bound = (mass < 1.0).then(|| (omega(ell - 1) as f64 / (1.0 - mass)).powi(2) * log_l * log_l);
    Ok(LeastPrimeReport::finish(prime, DEFAULT_SEARCH_BUDGET, log_l, bound, verified, "(ω(ℓ−1)/(1 − Σ 1/p))²(log ℓ)²".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_least_primes() {
        let s = FrobSampler::cyclotomic(4).unwrap();
        let g = s.group().clone();
        let three = ClassSet::parse(&g, "class:3").unwrap();
        let r = least_prime(&s, &three, 1000).unwrap();
        assert_eq!(r.prime, Some(3));
        assert!(r.verified);
        assert!(r.bound_shape.is_some());
    }

    #[test]
    fn polynomial_least_primes() {
        let x2 = "poly:1,0,1".parse::<PolyZ>().unwrap();
        assert_eq!(least_prime_poly(&x2, PolyMode::NoRoot, 1000).unwrap().prime, Some(3));
        assert_eq!(least_prime_poly(&x2, PolyMode::HasRoot, 1000).unwrap().prime, Some(5));
        let cubic = "poly:1,0,-1,-1".parse::<PolyZ>().unwrap();
        assert_eq!(least_prime_poly(&cubic, PolyMode::Irreducible, 1000).unwrap().prime, Some(2));
        let quartic = "poly:1,0,0,0,1".parse::<PolyZ>().unwrap();
        let r = least_prime_poly(&quartic, PolyMode::Irreducible, 20_000).unwrap();
        assert_eq!(r.prime, None);
        assert_eq!(r.searched_to, 20_000);
        let s = FrobSampler::parse("poly:1,0,-1,-1").unwrap();
        let three = ClassSet::parse(s.group(), "ncycle").unwrap();
        assert_eq!(least_prime(&s, &three, 1000).unwrap().prime, Some(2));
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(least_prime_primitive_root(7).unwrap().prime, Some(3));
        assert_eq!(least_prime_primitive_root(5).unwrap().prime, Some(2));
        assert_eq!(least_prime_primitive_root(41).unwrap().prime, Some(7));
        assert!(least_prime_primitive_root(31).unwrap().bound_shape.is_none());
        assert!(least_prime_primitive_root(9).is_err());
    }
}
