use crate::error::{Error, Result};

/// Largest sieve limit.
pub const SIEVE_LIMIT: u64 = 100_000_000;

/// All primes up to a limit, ascending.
#[derive(Clone, Debug)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// `π(y)` for `y ≤ limit`.
    pub fn count_up_to(&self, y: u64) -> usize {
        self.primes.partition_point(|&p| p <= y)
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes.iter().copied()
    }
}

/// Sieve of Eratosthenes over odd numbers, one bit each.
pub fn primes_up_to(x: u64) -> Result<PrimeTable> {
    if x > SIEVE_LIMIT {
        return Err(Error::Budget(format!("sieve limit {x} exceeds {SIEVE_LIMIT}")));
    }
    let mut primes = Vec::new();
    if x >= 2 {
        primes.push(2);
    }
    if x >= 3 {
        // Bit i stands for 2i + 1.
        let n = (x as usize - 1) / 2 + 1;
        let mut composite = vec![0u64; n / 64 + 1];
        let mut i = 1usize;
        while (2 * i + 1) * (2 * i + 1) <= x as usize {
            if composite[i / 64] >> (i % 64) & 1 == 0 {
                let p = 2 * i + 1;
                let mut j = (p * p - 1) / 2;
                while j < n {
                    composite[j / 64] |= 1 << (j % 64);
                    j += p;
                }
            }
            i += 1;
        }
        primes.extend((1..n).filter(|&i| composite[i / 64] >> (i % 64) & 1 == 0).map(|i| 2 * i as u64 + 1));
    }
    Ok(PrimeTable { limit: x, primes })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_tables() {
        assert_eq!(primes_up_to(10).unwrap().primes(), &[2, 3, 5, 7]);
        assert_eq!(primes_up_to(2).unwrap().primes(), &[2]);
        assert_eq!(primes_up_to(1).unwrap().len(), 0);
        assert_eq!(primes_up_to(100).unwrap().len(), 25);
        assert_eq!(primes_up_to(1_000_000).unwrap().len(), 78_498);
        assert!(primes_up_to(SIEVE_LIMIT + 1).is_err());
        let t = primes_up_to(1000).unwrap();
        assert!(t.iter().all(crate::nt::is_prime));
        assert_eq!(t.count_up_to(30), 10);
    }
}
