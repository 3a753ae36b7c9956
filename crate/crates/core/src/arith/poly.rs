//! Integer polynomials: discriminants and factorization patterns modulo primes.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::nt::{inv_mod, mul_mod, prime_divisors};

/// Integer polynomial, coefficients from the highest degree down.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyZ {
    coeffs: Vec<i64>,
}

impl PolyZ {
    pub fn new(mut coeffs: Vec<i64>) -> Result<Self> {
        while coeffs.first() == Some(&0) {
            coeffs.remove(0);
        }
        if coeffs.len() < 2 {
            return Err(Error::invalid("polynomial must have degree at least 1"));
        }
        Ok(PolyZ { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn leading(&self) -> i64 {
        self.coeffs[0]
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs[0] == 1
    }

    /// Reduction mod `p`, lowest degree first, trimmed.
    fn reduce(&self, p: u64) -> Vec<u64> {
        let mut v: Vec<u64> = self.coeffs.iter().rev().map(|&c| c.rem_euclid(p as i64) as u64).collect();
        trim(&mut v);
        v
    }

    /// `(−1)^{n(n−1)/2} Res(P, P′) / lc(P)`.
    pub fn discriminant(&self) -> BigInt {
        let n = self.degree();
        let p: Vec<BigInt> = self.coeffs.iter().map(|&c| BigInt::from(c)).collect();
        let dp: Vec<BigInt> = self.coeffs[..n]
            .iter()
            .enumerate()
            .map(|(i, &c)| BigInt::from(c) * BigInt::from((n - i) as i64))
            .collect();
        let res = resultant(&p, &dp);
        let sign = if (n * (n - 1) / 2) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        sign * res / BigInt::from(self.leading())
    }
}

impl std::str::FromStr for PolyZ {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().strip_prefix("poly:").unwrap_or(s.trim());
        let coeffs = body
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| Error::parse(format!("bad coefficient '{t}'"))))
            .collect::<Result<Vec<_>>>()?;
        PolyZ::new(coeffs)
    }
}

impl std::fmt::Display for PolyZ {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(i64::to_string).collect();
        write!(f, "poly:{}", parts.join(","))
    }
}

/// Resultant of two polynomials (highest degree first) as the determinant of
/// their Sylvester matrix, by fraction-free Bareiss elimination.
pub fn resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for i in 0..n {
        for (j, c) in a.iter().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in b.iter().enumerate() {
            mat[n + i][i + j] = c.clone();
        }
    }
    determinant(mat)
}

/// Exact determinant by Bareiss elimination.
pub fn determinant(mut mat: Vec<Vec<BigInt>>) -> BigInt {
    let n = mat.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if mat[k][k].is_zero() {
            match (k + 1..n).find(|&i| !mat[i][k].is_zero()) {
                Some(i) => {
                    mat.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j];
                mat[i][j] = v / &prev;
            }
        }
        prev = mat[k][k].clone();
    }
    sign * &mat[n - 1][n - 1]
}

/// Product of the distinct primes dividing `|m|` (1 for `m = ±1`).
pub fn radical(m: &BigInt) -> Result<u64> {
    let a = m.abs().to_u64().ok_or_else(|| Error::Budget("radical needs |m| < 2^64".into()))?;
    if a == 0 {
        return Err(Error::invalid("radical of zero"));
    }
    Ok(prime_divisors(a).into_iter().product())
}

/// Degrees of the irreducible factors of `P mod p`, or ramified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorPattern {
    /// Ascending factor degrees.
    Degrees(Vec<u32>),
    /// `p` divides the leading coefficient or `P mod p` is not squarefree.
    Ramified,
}

impl FactorPattern {
    pub fn degrees(&self) -> Option<&[u32]> {
        match self {
            FactorPattern::Degrees(d) => Some(d),
            FactorPattern::Ramified => None,
        }
    }

    /// Number of roots in `F_p` (linear factors).
    pub fn roots(&self) -> Option<usize> {
        self.degrees().map(|d| d.iter().filter(|&&x| x == 1).count())
    }
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn deg(v: &[u64]) -> isize {
    v.len() as isize - 1
}

/// `a mod f` for monic `f`.
fn rem(mut a: Vec<u64>, f: &[u64], p: u64) -> Vec<u64> {
    let df = f.len() - 1;
    while a.len() > df {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - df;
        if lead != 0 {
            for (i, &c) in f.iter().enumerate() {
                a[shift + i] = (a[shift + i] + p - mul_mod(lead, c, p)) % p;
            }
        }
        a.pop();
    }
    trim(&mut a);
    a
}

fn mul_rem(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u128; a.len() + b.len() - 1];
    let pp = p as u128;
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u128 * y as u128) % pp;
        }
    }
    rem(out.into_iter().map(|v| v as u64).collect(), f, p)
}

fn pow_rem(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_rem(&acc, &b, f, p);
        }
        b = mul_rem(&b, &b, f, p);
        e >>= 1;
    }
    acc
}

fn make_monic(mut a: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut a);
    if let Some(&lead) = a.last() {
        let inv = inv_mod(lead, p).expect("nonzero residue mod a prime");
        for c in a.iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
    }
    a
}

fn gcd_poly(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = make_monic(a.to_vec(), p);
    let mut y = make_monic(b.to_vec(), p);
    while !y.is_empty() {
        let r = make_monic(rem(x, &y, p), p);
        x = y;
        y = r;
    }
    x
}

/// Exact quotient `a / f` for monic `f`.
fn div_exact(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let df = f.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![0u64; a.len().saturating_sub(df)];
    while r.len() > df {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - df;
        q[shift] = lead;
        for (i, &c) in f.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - mul_mod(lead, c, p)) % p;
        }
        r.pop();
    }
    trim(&mut q);
    q
}

fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim(&mut out);
    out
}

/// Distinct-degree factorization of `P mod p`.
pub fn factor_pattern(poly: &PolyZ, p: u64) -> FactorPattern {
    if poly.leading().rem_euclid(p as i64) == 0 {
        return FactorPattern::Ramified;
    }
    let f = make_monic(poly.reduce(p), p);
    let df: Vec<u64> = (1..f.len()).map(|i| mul_mod(f[i], i as u64 % p, p)).collect();
    let mut df = df;
    trim(&mut df);
    if deg(&gcd_poly(&f, &df, p)) != 0 {
        return FactorPattern::Ramified;
    }
    let x = vec![0u64, 1];
    let mut rest = f;
    let mut h = rem(x.clone(), &rest, p);
    let mut degrees = Vec::new();
    let mut d = 1u32;
    while deg(&rest) >= 2 * d as isize {
        h = pow_rem(&h, p, &rest, p);
        let g = gcd_poly(&rest, &sub(&h, &x, p), p);
        let k = deg(&g);
        if k > 0 {
            degrees.extend(std::iter::repeat_n(d, k as usize / d as usize));
            rest = div_exact(&rest, &g, p);
            h = rem(h, &rest, p);
        }
        d += 1;
    }
    if deg(&rest) > 0 {
        degrees.push(deg(&rest) as u32);
    }
    degrees.sort_unstable();
    FactorPattern::Degrees(degrees)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> PolyZ {
        s.parse().unwrap()
    }

    #[test]
    fn discriminants() {
        assert_eq!(poly("1,0,-1,-1").discriminant(), BigInt::from(-23));
        assert_eq!(poly("1,0,1").discriminant(), BigInt::from(-4));
        assert_eq!(poly("1,0,-1").discriminant(), BigInt::from(4));
        assert_eq!(poly("2,3,1").discriminant(), BigInt::from(1));
        // x^4 + 1: discriminant 256.
        assert_eq!(poly("poly:1,0,0,0,1").discriminant(), BigInt::from(256));
        assert_eq!(radical(&BigInt::from(-23)).unwrap(), 23);
        assert_eq!(radical(&BigInt::from(256)).unwrap(), 2);
        assert_eq!(radical(&BigInt::from(1)).unwrap(), 1);
        assert!(PolyZ::new(vec![0, 5]).is_err());
    }

    #[test]
    fn patterns() {
        let p = poly("1,0,-1,-1");
        assert_eq!(factor_pattern(&p, 2), FactorPattern::Degrees(vec![3]));
        assert_eq!(factor_pattern(&p, 23), FactorPattern::Ramified);
        assert_eq!(factor_pattern(&poly("1,0,1"), 5), FactorPattern::Degrees(vec![1, 1]));
        assert_eq!(factor_pattern(&poly("1,0,1"), 3), FactorPattern::Degrees(vec![2]));
        assert_eq!(factor_pattern(&poly("1,0,1"), 2), FactorPattern::Ramified);
        assert_eq!(factor_pattern(&poly("2,0,1"), 2), FactorPattern::Ramified);
    }

    #[test]
    fn patterns_match_root_counts() {
        let p = poly("1,0,-1,-1");
        for &q in &[5u64, 7, 11, 13, 17, 19, 29, 31, 37, 41, 43, 47, 53, 59, 61] {
            let roots = (0..q)
                .filter(|&x| (x * x % q * x % q + 2 * q - x - 1) % q == 0)
                .count();
            let pat = factor_pattern(&p, q);
            assert_eq!(pat.roots(), Some(roots), "p = {q}");
            assert_eq!(pat.degrees().unwrap().iter().sum::<u32>(), 3);
        }
        // (x^2+1)(x^3-x-1)(x+3); 5 is ramified since -3 is a root of x^2+1 mod 5.
        let big = poly("1,3,0,-1,-4,-4,-3");
        assert_eq!(factor_pattern(&big, 5), FactorPattern::Ramified);
        for &q in &[7u64, 11, 13, 17] {
            let d = factor_pattern(&big, q);
            assert_eq!(d.degrees().unwrap().iter().sum::<u32>(), 6);
            assert!(d.roots().unwrap() >= 1);
        }
    }
}
