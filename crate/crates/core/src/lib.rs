//! Prime-ideal duality toolkit for quadratic number rings.
//!
//! The crate is organized bottom-up:
//!
//! * [`field`]: number-field and abelian extension backends: splitting of
//!   rational primes, prime-ideal enumeration, Artin classes, class densities
//!   and the Dedekind-zeta residue `c_K`.
//! * [`ideal`]: factored ideals and the per-ideal arithmetic functions
//!   (norm, Möbius, omega, k-th largest norm levels, salience, selectors),
//!   plus ideal enumeration and divisor lattices.
//! * [`duality`]: exact evaluation of the higher-order duality identities,
//!   both over ideals and in the classical integer form.
//! * [`density`]: Chebotarev-density partial sums, cumulative `Q^k` sums and
//!   the supporting prime/ideal counting reports.
//! * [`smooth`]: smooth-ideal counting and the Dickman function.
//!
//! Sweeps that run in parallel use the ambient rayon pool (feature
//! `parallel`); callers size it with `ThreadPool::install`. Every reduction
//! is performed on integer per-norm tables or in ascending norm order, so
//! results do not depend on the pool size.

pub mod density;
pub mod duality;
mod error;
pub mod field;
pub mod ideal;
pub mod numeric;
pub mod report;
pub mod smooth;

pub use error::{Error, Result, NORM_CAP};
pub use field::{ArtinClass, ClassLabel, ExtensionContext, ExtensionSpec, FieldSpec, PrimeIdeal, Splitting};
pub use ideal::{Direction, FactoredIdeal, PrimeIdealSelector};
