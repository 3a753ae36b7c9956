//! Empirical Chebotarev statistics over Frobenius samplers.
//!
//! Unknown absolute constants are taken to be 1 throughout; reports carry
//! ratios and never judge a conditional statement.

pub mod curves;
pub mod least;
pub mod sampler;
pub mod stats;

pub use curves::{
    ap_mod_distribution, ap_values, characters_of_degree, disagreement_set_bound, first_disagreement,
    lang_trotter, twist_phi_bound, DisagreementReport, DisagreementSetReport,
};
pub use least::{
    least_prime, least_prime_poly, least_prime_primitive_root, LeastPrimeReport, PolyMode, DEFAULT_SEARCH_BUDGET,
};
pub use sampler::{FrobSampler, SamplerKind, Samples};
pub use stats::{
    chebotarev_density, error_ratio, error_term, li, pi_f, pi_set, psi_sums, DensityReport, ErrorTerm, PsiReport,
};

use std::sync::OnceLock;

use rayon::prelude::*;

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "LL_THREADS";

/// Shared worker pool, sized by `LL_THREADS` when set.
pub fn pool() -> &'static rayon::ThreadPool {
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
            b = b.num_threads(n.max(1));
        }
        b.build().expect("worker pool")
    })
}

/// Maps over primes in parallel; output order follows input order.
pub(crate) fn par_map<T: Send>(primes: &[u64], f: impl Fn(u64) -> T + Sync + Send) -> Vec<T> {
    pool().install(|| primes.par_iter().map(|&p| f(p)).collect())
}
