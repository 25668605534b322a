use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::Serialize;

use super::arith::{euler_phi, is_squarefree, kronecker, prime_divisors};
use super::{FieldSpec, PrimeIdeal};
use crate::error::{usage, Result};

/// Abelian Galois extensions `L/K` with a computable Frobenius.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ExtensionSpec {
    Trivial,
    /// `ℚ(ζ_n)/ℚ`, Galois group `(ℤ/n)^×`.
    Cyclotomic {
        n: u64,
    },
    /// `K(√m)/K` for a quadratic `K`.
    RelativeQuadratic {
        m: i64,
    },
}

impl fmt::Display for ExtensionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtensionSpec::Trivial => write!(f, "trivial"),
            ExtensionSpec::Cyclotomic { n } => write!(f, "cyclo:{n}"),
            ExtensionSpec::RelativeQuadratic { m } => write!(f, "relquad:{m}"),
        }
    }
}

impl FromStr for ExtensionSpec {
    type Err = crate::Error;

    /// `"trivial"`, `"cyclo:<n>"` or `"relquad:<m>"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "trivial" {
            return Ok(ExtensionSpec::Trivial);
        }
        let bad = || usage(format!("bad extension spec {s:?}"));
        match s.split_once(':') {
            Some(("cyclo", n)) => {
                let n: u64 = n.trim().parse().map_err(|_| bad())?;
                if n < 3 {
                    return Err(usage(format!("cyclotomic conductor must be ≥ 3, got {n}")));
                }
                Ok(ExtensionSpec::Cyclotomic { n })
            }
            Some(("relquad", m)) => {
                let m: i64 = m.trim().parse().map_err(|_| bad())?;
                Ok(ExtensionSpec::RelativeQuadratic { m })
            }
            _ => Err(usage(format!(
                "unknown extension spec {s:?} (expected trivial, cyclo:<n> or relquad:<m>)"
            ))),
        }
    }
}

/// A conjugacy-class label. Singleton classes only (abelian groups):
/// the identity is `1` for every backend, cyclotomic classes are the reduced
/// residues `a mod n`, and the non-trivial class of a relative quadratic
/// extension is `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ClassLabel(pub i64);

impl ClassLabel {
    pub const IDENTITY: ClassLabel = ClassLabel(1);
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for ClassLabel {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .parse()
            .map(ClassLabel)
            .map_err(|_| usage(format!("bad class label {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArtinClass {
    Class(ClassLabel),
    /// Ramified in `L`, or over a rational prime conservatively excluded.
    Excluded,
}

/// A validated pair `(K, L/K)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ExtensionContext {
    field: FieldSpec,
    ext: ExtensionSpec,
}

impl ExtensionContext {
    pub fn new(field: FieldSpec, ext: ExtensionSpec) -> Result<Self> {
        match (field, ext) {
            (_, ExtensionSpec::Trivial) => {}
            (FieldSpec::Rationals, ExtensionSpec::Cyclotomic { .. }) => {}
            (FieldSpec::Quadratic { .. }, ExtensionSpec::Cyclotomic { .. }) => {
                return Err(usage("cyclotomic extensions are only supported over q"));
            }
            (FieldSpec::Quadratic { d }, ExtensionSpec::RelativeQuadratic { m }) => {
                if !is_squarefree(m) || m == 1 {
                    return Err(usage(format!("relquad parameter {m} must be squarefree and ≠ 1")));
                }
                if m == d {
                    return Err(usage(format!("{m} is a square in quad:{d}")));
                }
            }
            (FieldSpec::Rationals, ExtensionSpec::RelativeQuadratic { .. }) => {
                return Err(usage("relquad extensions need a quadratic base field"));
            }
        }
        Ok(ExtensionContext { field, ext })
    }

    /// The identity extension `K/K`.
    pub fn trivial(field: FieldSpec) -> Self {
        ExtensionContext {
            field,
            ext: ExtensionSpec::Trivial,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ext(&self) -> ExtensionSpec {
        self.ext
    }

    pub fn group_order(&self) -> u64 {
        match self.ext {
            ExtensionSpec::Trivial => 1,
            ExtensionSpec::Cyclotomic { n } => euler_phi(n),
            ExtensionSpec::RelativeQuadratic { .. } => 2,
        }
    }

    pub fn class_ids(&self) -> Vec<ClassLabel> {
        match self.ext {
            ExtensionSpec::Trivial => vec![ClassLabel::IDENTITY],
            ExtensionSpec::Cyclotomic { n } => (1..n)
                .filter(|&a| num_integer::gcd(a, n) == 1)
                .map(|a| ClassLabel(a as i64))
                .collect(),
            ExtensionSpec::RelativeQuadratic { .. } => {
                vec![ClassLabel::IDENTITY, ClassLabel(-1)]
            }
        }
    }

    pub fn has_class(&self, class: ClassLabel) -> bool {
        match self.ext {
            ExtensionSpec::Trivial => class == ClassLabel::IDENTITY,
            ExtensionSpec::Cyclotomic { n } => {
                class.0 >= 1 && (class.0 as u64) < n && num_integer::gcd(class.0 as u64, n) == 1
            }
            ExtensionSpec::RelativeQuadratic { .. } => class.0 == 1 || class.0 == -1,
        }
    }

    /// Rational primes whose prime ideals are excluded from every class.
    pub fn excluded_primes(&self) -> Vec<u64> {
        match self.ext {
            ExtensionSpec::Trivial => Vec::new(),
            ExtensionSpec::Cyclotomic { n } => prime_divisors(n),
            ExtensionSpec::RelativeQuadratic { m } => {
                let disc = self.field.discriminant().unsigned_abs();
                let mut ps = prime_divisors(2 * m.unsigned_abs() * disc);
                ps.sort_unstable();
                ps
            }
        }
    }

    pub fn is_excluded(&self, p: u64) -> bool {
        match self.ext {
            ExtensionSpec::Trivial => false,
            ExtensionSpec::Cyclotomic { n } => n % p == 0,
            ExtensionSpec::RelativeQuadratic { m } => {
                p == 2 || m.unsigned_abs() % p == 0 || self.field.discriminant().unsigned_abs().is_multiple_of(p)
            }
        }
    }

    /// Artin class of a prime ideal of `K`.
    pub fn artin_class(&self, prime: &PrimeIdeal) -> Result<ArtinClass> {
        if !self.field.owns(prime) {
            return Err(usage(format!("{prime} is not a prime ideal of {}", self.field)));
        }
        Ok(self.artin_class_unchecked(prime))
    }

    pub(crate) fn artin_class_unchecked(&self, prime: &PrimeIdeal) -> ArtinClass {
        let p = prime.p();
        if self.is_excluded(p) {
            return ArtinClass::Excluded;
        }
        let label = match self.ext {
            ExtensionSpec::Trivial => ClassLabel::IDENTITY,
            ExtensionSpec::Cyclotomic { n } => {
                ClassLabel(super::arith::pow_mod(p, prime.residue_degree() as u64, n) as i64)
            }
            ExtensionSpec::RelativeQuadratic { m } => {
                if prime.residue_degree() == 2 {
                    // m ∈ 𝔽_p is always a square in 𝔽_{p²}
                    ClassLabel::IDENTITY
                } else {
                    ClassLabel(kronecker(m, p) as i64)
                }
            }
        };
        ArtinClass::Class(label)
    }

    /// Chebotarev density `|C| / |G|`.
    pub fn class_density(&self, class: ClassLabel) -> Result<Ratio<u64>> {
        if !self.has_class(class) {
            return Err(usage(format!("unknown class {class} for {}", self.ext)));
        }
        Ok(Ratio::new(1, self.group_order()))
    }
}

impl fmt::Display for ExtensionContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.ext, self.field)
    }
}
