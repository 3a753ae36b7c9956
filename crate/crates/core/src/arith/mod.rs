//! Number-theoretic inputs for Frobenius sampling.

pub mod curve;
pub mod poly;
pub mod primes;

pub use curve::{ap, Ap, ECurve, AP_LIMIT};
pub use poly::{determinant, factor_pattern, radical, resultant, FactorPattern, PolyZ};
pub use primes::{primes_up_to, PrimeTable, SIEVE_LIMIT};

use crate::error::{Error, Result};
use crate::nt::{gcd, is_prime};

/// Largest `ℓ` for the brute-force trace count.
pub const GL2_TRACE_LIMIT: u64 = 13;

/// Frobenius at `p` in `(Z/n)^×`, which is `p mod n`.
pub fn cyclo_frob(n: u64, p: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::invalid("modulus must be positive"));
    }
    if gcd(n, p) != 1 {
        return Err(Error::invalid(format!("{p} is ramified in the {n}-th cyclotomic field")));
    }
    Ok(p % n)
}

/// Number of invertible 2×2 matrices over `F_ℓ` with trace `a`, by enumeration.
pub fn gl2_trace_class_size(l: u64, a: u64) -> Result<u64> {
    if !is_prime(l) {
        return Err(Error::invalid(format!("{l} is not prime")));
    }
    if l > GL2_TRACE_LIMIT {
        return Err(Error::Budget(format!("enumeration over GL2(F_{l}) exceeds ℓ ≤ {GL2_TRACE_LIMIT}")));
    }
    let a = a % l;
    let mut count = 0;
    for x in 0..l {
        let w = (a + l - x) % l;
        for y in 0..l {
            for z in 0..l {
                count += u64::from((x * w + l * l - y * z) % l != 0);
            }
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frobenius_residues() {
        assert_eq!(cyclo_frob(5, 7).unwrap(), 2);
        assert_eq!(cyclo_frob(12, 13).unwrap(), 1);
        assert!(cyclo_frob(5, 5).is_err());
        assert!(cyclo_frob(12, 2).is_err());
    }

    #[test]
    fn trace_fibres_partition_gl2() {
        // Trace 0 over F_2: the identity, two transvections, and the swap.
        assert_eq!(gl2_trace_class_size(2, 0).unwrap(), 4);
        for l in [2u64, 3, 5, 7, 11, 13] {
            let total: u64 = (0..l).map(|a| gl2_trace_class_size(l, a).unwrap()).sum();
            assert_eq!(total, (l * l - 1) * (l * l - l));
        }
        // Singular matrices of trace a ≠ 0 are conjugate to diag(0, a): ℓ² + ℓ of them.
        // Those of trace 0 are the ℓ² nilpotents.
        for l in [3u64, 5, 7] {
            assert_eq!(gl2_trace_class_size(l, 0).unwrap(), l * l * l - l * l);
            assert_eq!(gl2_trace_class_size(l, 1).unwrap(), l * l * l - l * l - l);
        }
        assert!(gl2_trace_class_size(17, 0).is_err());
        assert!(gl2_trace_class_size(4, 0).is_err());
    }
}
