//! Closed-form admissible functions giving upper bounds for `φ`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::characters::{auto_table, CharacterTable};
use crate::error::{Error, Result};
use crate::group::{perm, Group};
use crate::littlewood::{lambda_norm, ClassFunction};
use crate::nt::prime_divisors;
use crate::sets::ClassSet;

/// An admissible function for `D`, with `λ(f)/μ(f)` and the closed-form bound it meets.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub f: ClassFunction,
    pub set: ClassSet,
    pub value: f64,
    pub bound: f64,
}

fn ratio(f: &ClassFunction, t: &CharacterTable) -> Result<f64> {
    let rep = lambda_norm(f, t)?;
    if rep.mu.re <= 0.0 {
        return Err(Error::Invariant("candidate has nonpositive mean".into()));
    }
    Ok(rep.lambda.value() / rep.mu.re)
}

/// Positive values only on `D`, positive mean.
fn check_admissible(f: &ClassFunction, d: &ClassSet) -> Result<()> {
    for c in 0..f.values().len() {
        if f.value(c).re > 0.0 && !d.contains(c) {
            return Err(Error::Invariant(format!("candidate is positive on class {c} outside D")));
        }
    }
    Ok(())
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `f = 1 − Σ_{p | n} 1_{pZ/nZ}` on `Z/n` for the generators, with bound
/// `(ω(n)+1) / (1 − Σ_{p|n} 1/p)`.
pub fn candidate_generators(n: u64) -> Result<Candidate> {
    let ps = prime_divisors(n);
    let mass: f64 = ps.iter().map(|&p| 1.0 / p as f64).sum();
    if mass >= 1.0 {
        return Err(Error::invalid(format!("Σ 1/p over primes dividing {n} is {mass:.4} ≥ 1")));
    }
    let g = Group::build(&crate::group::GroupSpec::cyclic(n))?;
    let t = auto_table(&g)?;
    let values: Vec<BigRational> = (0..n)
        .map(|a| q(1 - ps.iter().filter(|&&p| a % p == 0).count() as i64))
        .collect();
    let f = ClassFunction::rational(&g, values)?;
    let d = ClassSet::parse(&g, "gen")?;
    check_admissible(&f, &d)?;
    let value = ratio(&f, &t)?;
    let bound = (ps.len() as f64 + 1.0) / (1.0 - mass);
    if value > bound + 1e-9 * bound {
        return Err(Error::Invariant(format!("generator candidate {value} exceeds {bound}")));
    }
    Ok(Candidate { f, set: d, value, bound })
}

/// Which fixed-point condition the candidate targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixedPointKind {
    /// `D = {fix ≥ 1}`, `f = fix`, bound `n`.
    AtLeast1,
    /// `D = {fix ≥ 2}`, `f = fix² − 1`, bound `n² + 1`.
    AtLeast2,
    /// `D = {fix = 0}`, `f = (fix − 1)(fix − n)`, bound `2n² + 2n`.
    None,
}

impl std::str::FromStr for FixedPointKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "atleast1" => Ok(FixedPointKind::AtLeast1),
            "atleast2" => Ok(FixedPointKind::AtLeast2),
            "none" => Ok(FixedPointKind::None),
            _ => Err(Error::parse(format!("unknown fixed-point kind '{s}' (atleast1|atleast2|none)"))),
        }
    }
}

fn is_transitive(g: &Group, n: usize) -> bool {
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        for &s in g.generators() {
            let j = g.as_permutation(s).unwrap()[i] as usize;
            if !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.iter().all(|&b| b)
}

/// Fixed-point polynomial candidates for a permutation group.
pub fn candidate_fixed_points(g: &Group, t: &CharacterTable, kind: FixedPointKind) -> Result<Candidate> {
    let n = g
        .permutation_degree()
        .ok_or_else(|| Error::invalid(format!("{} is not a permutation group", g.name())))?;
    if kind == FixedPointKind::None && !is_transitive(g, n) {
        return Err(Error::invalid(format!("{} is not transitive on {n} points", g.name())));
    }
    let nn = n as i64;
    let fix: Vec<i64> = (0..g.class_count())
        .map(|c| perm::fixed_points(&g.as_permutation(g.class_rep(c)).unwrap()) as i64)
        .collect();
    let (vals, set, bound): (Vec<i64>, &str, f64) = match kind {
        FixedPointKind::AtLeast1 => (fix.clone(), "fix>=1", n as f64),
        FixedPointKind::AtLeast2 => (fix.iter().map(|&x| x * x - 1).collect(), "fix>=2", (nn * nn + 1) as f64),
        FixedPointKind::None => {
            (fix.iter().map(|&x| (x - 1) * (x - nn)).collect(), "fix=0", (2 * nn * nn + 2 * nn) as f64)
        }
    };
    let f = ClassFunction::integers(g, &vals)?;
    let d = ClassSet::parse(g, set)?;
    if d.is_empty() {
        return Err(Error::invalid(format!("the set {set} is empty in {}", g.name())));
    }
    check_admissible(&f, &d)?;
    let value = ratio(&f, t)?;
    if value > bound + 1e-9 * bound {
        return Err(Error::Invariant(format!("fixed-point candidate {value} exceeds {bound}")));
    }
    Ok(Candidate { f, set: d, value, bound })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_candidates() {
        assert!((candidate_generators(5).unwrap().bound - 2.5).abs() < 1e-12);
        let c = candidate_generators(35).unwrap();
        assert!((c.bound - 3.0 / (1.0 - 1.0 / 5.0 - 1.0 / 7.0)).abs() < 1e-12);
        assert!(c.value <= c.bound);
        assert!((candidate_generators(6).unwrap().bound - 18.0).abs() < 1e-9);
        assert!(candidate_generators(30).is_err());
    }

    #[test]
    fn fixed_point_candidates() {
        let s4 = Group::build(&"S4".parse().unwrap()).unwrap();
        let t = auto_table(&s4).unwrap();
        let c1 = candidate_fixed_points(&s4, &t, FixedPointKind::AtLeast1).unwrap();
        assert!(c1.value <= 4.0 + 1e-9);
        let c0 = candidate_fixed_points(&s4, &t, FixedPointKind::None).unwrap();
        assert!(c0.value <= 40.0 + 1e-9);
        let s3 = Group::build(&"S3".parse().unwrap()).unwrap();
        let t3 = auto_table(&s3).unwrap();
        let c2 = candidate_fixed_points(&s3, &t3, FixedPointKind::AtLeast2).unwrap();
        assert!(c2.value <= 10.0 + 1e-9);
        let c6 = Group::build(&"C6".parse().unwrap()).unwrap();
        assert!(candidate_fixed_points(&c6, &auto_table(&c6).unwrap(), FixedPointKind::AtLeast1).is_err());
    }
}
