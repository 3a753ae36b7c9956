//! Elliptic curves over Q in long Weierstrass form and naive point counts.

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::radical;
use crate::error::{Error, Result};

/// Largest prime for point enumeration.
pub const AP_LIMIT: u64 = 1_000_000;

/// `y² + a1 xy + a3 y = x³ + a2 x² + a4 x + a6`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ECurve {
    pub a: [i64; 5],
    disc: BigInt,
}

impl ECurve {
    pub fn new(a1: i64, a2: i64, a3: i64, a4: i64, a6: i64) -> Result<Self> {
        let [a1b, a2b, a3b, a4b, a6b] = [a1, a2, a3, a4, a6].map(BigInt::from);
        let b2 = &a1b * &a1b + 4 * &a2b;
        let b4 = 2 * &a4b + &a1b * &a3b;
        let b6 = &a3b * &a3b + 4 * &a6b;
        let b8 = &a1b * &a1b * &a6b + 4 * &a2b * &a6b - &a1b * &a3b * &a4b + &a2b * &a3b * &a3b - &a4b * &a4b;
        let disc: BigInt = -&b2 * &b2 * &b8 - 8 * &b4 * &b4 * &b4 - 27 * &b6 * &b6 + 9 * &b2 * &b4 * &b6;
        if disc.is_zero() {
            return Err(Error::invalid("singular curve (discriminant 0)"));
        }
        Ok(ECurve { a: [a1, a2, a3, a4, a6], disc })
    }

    pub fn short(a: i64, b: i64) -> Result<Self> {
        Self::new(0, 0, 0, a, b)
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.disc
    }

    /// Product of the primes of bad reduction for this model.
    pub fn bad_support(&self) -> Result<u64> {
        radical(&self.disc)
    }

    pub fn is_bad(&self, p: u64) -> bool {
        (&self.disc % BigInt::from(p)).is_zero()
    }
}

impl std::str::FromStr for ECurve {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let body = s.strip_prefix("ec:").unwrap_or(s);
        if body == "37a" {
            return ECurve::new(0, 0, 1, -1, 0);
        }
        let (short, body) = match body.strip_prefix("short:") {
            Some(rest) => (true, rest),
            None => (false, body),
        };
        let v = body
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| Error::parse(format!("bad curve coefficient '{t}'"))))
            .collect::<Result<Vec<_>>>()?;
        match (short, v.as_slice()) {
            (true, &[a, b]) => ECurve::short(a, b),
            (false, &[a1, a2, a3, a4, a6]) => ECurve::new(a1, a2, a3, a4, a6),
            _ => Err(Error::parse("curve is ec:a1,a2,a3,a4,a6 or ec:short:a,b")),
        }
    }
}

impl std::fmt::Display for ECurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [a1, a2, a3, a4, a6] = self.a;
        write!(f, "ec:{a1},{a2},{a3},{a4},{a6}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ap {
    Good(i64),
    Bad,
}

/// `|E(F_p)|` counted directly, point at infinity included.
fn count_points(e: &ECurve, p: u64) -> u64 {
    let m = |v: i64| v.rem_euclid(p as i64) as u64;
    let [a1, a2, a3, a4, a6] = e.a.map(m);
    if p <= 3 {
        let mut count = 1;
        for x in 0..p {
            for y in 0..p {
                let lhs = (y * y + a1 * x * y + a3 * y) % p;
                let rhs = (x * x * x + a2 * x * x + a4 * x + a6) % p;
                count += u64::from(lhs == rhs);
            }
        }
        return count;
    }
    // (2y + a1 x + a3)² = 4(x³ + a2 x² + a4 x + a6) + (a1 x + a3)².
    // p ≤ 10⁶, so products of two residues fit in u64.
    let mut square = vec![false; p as usize];
    for y in 0..p {
        square[(y * y % p) as usize] = true;
    }
    let mut count = 1u64;
    for x in 0..p {
        let cubic = (((x + a2) * x % p + a4) * x % p + a6) % p;
        let lin = (a1 * x + a3) % p;
        let d = ((4 * cubic + lin * lin) % p) as usize;
        count += if d == 0 {
            1
        } else if square[d] {
            2
        } else {
            0
        };
    }
    count
}

/// `a_p = p + 1 − |E(F_p)|`, or bad when `p` divides the discriminant.
pub fn ap(e: &ECurve, p: u64) -> Result<Ap> {
    if p > AP_LIMIT {
        return Err(Error::Budget(format!("point count at p = {p} exceeds {AP_LIMIT}")));
    }
    if e.is_bad(p) {
        return Ok(Ap::Bad);
    }
    let a = p as i64 + 1 - count_points(e, p) as i64;
    if (a * a) as u64 > 4 * p {
        return Err(Error::Invariant(format!("a_{p} = {a} violates the Hasse bound")));
    }
    Ok(Ap::Good(a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let e = ECurve::short(1, 1).unwrap();
        assert_eq!(count_points(&e, 5), 9);
        assert_eq!(ap(&e, 5).unwrap(), Ap::Good(-3));
        let e37: ECurve = "ec:0,0,1,-1,0".parse().unwrap();
        assert_eq!(e37.discriminant(), &BigInt::from(37));
        assert_eq!(ap(&e37, 2).unwrap(), Ap::Good(-2));
        assert_eq!(ap(&e37, 37).unwrap(), Ap::Bad);
        assert_eq!(ap(&e37, 3).unwrap(), Ap::Good(-3));
        assert_eq!(ap(&e37, 5).unwrap(), Ap::Good(-2));
        assert!(ECurve::short(0, 0).is_err());
        assert_eq!("ec:37a".parse::<ECurve>().unwrap(), e37);
        assert_eq!(e.discriminant(), &BigInt::from(-496));
    }

    #[test]
    fn fast_count_matches_brute_force() {
        let e: ECurve = "ec:1,-1,1,-2,3".parse().unwrap();
        for p in [5u64, 7, 11, 13, 17, 19, 23] {
            if e.is_bad(p) {
                continue;
            }
            let brute = 1 + (0..p)
                .flat_map(|x| (0..p).map(move |y| (x, y)))
                .filter(|&(x, y)| {
                    let m = |v: i64| v.rem_euclid(p as i64) as u64;
                    let [a1, a2, a3, a4, a6] = e.a.map(m);
                    (y * y + a1 * x * y + a3 * y) % p == (x * x * x + a2 * x * x + a4 * x + a6) % p
                })
                .count() as u64;
            assert_eq!(count_points(&e, p), brute, "p = {p}");
        }
    }
}
