//! Exact cyclotomic integers `Σ c_j ζ_m^j`.
//!
//! The modulus `m` is owned by the table that holds the values, so a `Cyclo`
//! stores only residues and coefficients. The representation is not canonical:
//! `ζ_3 + ζ_3^2` and `-1` are different term lists for the same number.

use std::collections::HashMap;

use num_complex::Complex64;

use crate::nt::{gcd, ramanujan_sum};

/// Sparse sum of roots of unity; terms sorted by residue, no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Cyclo {
    terms: Vec<(u64, i64)>,
}

impl Cyclo {
    pub fn zero() -> Self {
        Cyclo { terms: Vec::new() }
    }

    pub fn integer(n: i64) -> Self {
        Cyclo::from_terms([(0, n)], 1)
    }

    /// `ζ_m^j`.
    pub fn root(j: u64, m: u64) -> Self {
        Cyclo::from_terms([(j, 1)], m)
    }

    /// Normalizes residues mod `m`, merges equal residues and drops zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (u64, i64)>, m: u64) -> Self {
        let mut acc: Vec<(u64, i64)> = terms.into_iter().map(|(j, c)| (j % m, c)).collect();
        acc.sort_unstable_by_key(|t| t.0);
        let mut out: Vec<(u64, i64)> = Vec::with_capacity(acc.len());
        for (j, c) in acc {
            match out.last_mut() {
                Some(last) if last.0 == j => last.1 += c,
                _ => out.push((j, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Cyclo { terms: out }
    }

    pub fn terms(&self) -> &[(u64, i64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_complex(&self, m: u64) -> Complex64 {
        let step = std::f64::consts::TAU / m as f64;
        self.terms.iter().fold(Complex64::new(0.0, 0.0), |acc, &(j, c)| {
            let (s, co) = (step * j as f64).sin_cos();
            acc + Complex64::new(co, s) * c as f64
        })
    }

    /// Field trace from `Q(ζ_m)` to `Q`.
    pub fn trace(&self, m: u64) -> i64 {
        self.terms.iter().map(|&(j, c)| c * ramanujan_sum(m, j)).sum()
    }

    /// Same number written over a multiple `m_new` of the modulus `m`.
    pub fn lift(&self, m: u64, m_new: u64) -> Cyclo {
        debug_assert_eq!(m_new % m, 0);
        let f = m_new / m;
        Cyclo { terms: self.terms.iter().map(|&(j, c)| (j * f, c)).collect() }
    }

    /// Galois action `ζ ↦ ζ^k` for `k` coprime to `m`.
    pub fn galois(&self, k: u64, m: u64) -> Cyclo {
        Cyclo::from_terms(self.terms.iter().map(|&(j, c)| ((j as u128 * k as u128 % m as u128) as u64, c)), m)
    }

    pub fn conj(&self, m: u64) -> Cyclo {
        Cyclo::from_terms(self.terms.iter().map(|&(j, c)| ((m - j) % m, c)), m)
    }

    pub fn add(&self, other: &Cyclo, m: u64) -> Cyclo {
        Cyclo::from_terms(self.terms.iter().chain(&other.terms).copied(), m)
    }

    pub fn mul(&self, other: &Cyclo, m: u64) -> Cyclo {
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        for &(a, x) in &self.terms {
            for &(b, y) in &other.terms {
                out.push(((a + b) % m, x * y));
            }
        }
        Cyclo::from_terms(out, m)
    }
}

/// Cached Ramanujan sums `c_m(j)`, which depend only on `gcd(j, m)`.
pub struct RamanujanCache {
    m: u64,
    by_gcd: HashMap<u64, i64>,
}

impl RamanujanCache {
    pub fn new(m: u64) -> Self {
        RamanujanCache { m, by_gcd: HashMap::new() }
    }

    /// Trace of `ζ_m^j`.
    pub fn get(&mut self, j: u64) -> i64 {
        let g = gcd(j % self.m, self.m);
        let m = self.m;
        *self.by_gcd.entry(g).or_insert_with(|| ramanujan_sum(m, g))
    }
}
