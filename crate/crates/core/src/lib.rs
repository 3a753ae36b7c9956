//! Littlewood norms of class functions on finite groups.
//!
//! The crate builds finite groups from a compact specification language,
//! computes exact character tables (abelian, Murnaghan-Nakayama, and
//! Dixon-Schneider engines), evaluates Fourier transforms and Littlewood
//! norms of class functions, solves the `phi` linear program, and runs
//! Chebotarev-style statistics over primes.

pub mod arith;
pub mod characters;
pub mod error;
pub mod group;
pub mod harness;
pub mod littlewood;
pub mod nt;
pub mod phi;
pub mod properties;
pub mod sets;

pub use arith::{ECurve, FactorPattern, PolyZ, PrimeTable};
pub use characters::{auto_table, CharacterTable, Cyclo, Engine, TableReport};
pub use harness::{DensityReport, FrobSampler, LeastPrimeReport};
pub use littlewood::{ClassFunction, FourierCoeffs, NormReport, NormValue};
pub use phi::{PhiInstance, PhiSolution};
pub use sets::ClassSet;
pub use error::{Error, Result};
pub use group::{ConjugacyData, Group, GroupSpec, QuotientHandle, SubgroupHandle};
