use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use num_rational::Ratio;

use crate::error::{usage, Result};
use crate::field::arith::euler_phi;
use crate::field::{ArtinClass, ClassLabel, ExtensionContext, FieldSpec, PrimeIdeal};

type Predicate = dyn Fn(&PrimeIdeal) -> bool + Send + Sync;

/// An arbitrary set of prime ideals given by a predicate.
#[derive(Clone)]
pub struct CustomSet {
    description: String,
    predicate: Arc<Predicate>,
}

impl CustomSet {
    pub fn new(
        description: impl Into<String>,
        predicate: impl Fn(&PrimeIdeal) -> bool + Send + Sync + 'static,
    ) -> Self {
        CustomSet {
            description: description.into(),
            predicate: Arc::new(predicate),
        }
    }

    /// An explicit finite set.
    pub fn from_primes(primes: impl IntoIterator<Item = PrimeIdeal>) -> Self {
        let set: HashSet<PrimeIdeal> = primes.into_iter().collect();
        let mut labels: Vec<_> = set.iter().copied().collect();
        labels.sort();
        let labels: Vec<String> = labels.iter().map(|q| q.label()).collect();
        let description = format!("set:{}", labels.join(","));
        CustomSet::new(description, move |q| set.contains(q))
    }

    /// Prime ideals whose norm is `residue mod modulus`.
    pub fn norm_residue(residue: u64, modulus: u64) -> Self {
        CustomSet::new(format!("normmod:{residue}:{modulus}"), move |q| {
            q.norm() % modulus == residue % modulus
        })
    }

    pub fn contains(&self, q: &PrimeIdeal) -> bool {
        (self.predicate)(q)
    }
}

impl fmt::Debug for CustomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomSet")
            .field("description", &self.description)
            .finish_non_exhaustive()
    }
}

/// Predicate over prime ideals: the set `𝒜` behind `Q_𝒜^k` and `S(𝒜)`.
#[derive(Debug, Clone)]
pub enum PrimeIdealSelector {
    All,
    /// Unramified primes with Artin class `class`; excluded primes never match.
    ConjugacyClass {
        ctx: ExtensionContext,
        class: ClassLabel,
    },
    /// Rational primes `p ≡ residue mod modulus` (base field ℚ only).
    ResidueClass {
        residue: u64,
        modulus: u64,
    },
    Custom(CustomSet),
}

impl PrimeIdealSelector {
    pub fn class(ctx: ExtensionContext, class: ClassLabel) -> Result<Self> {
        if !ctx.has_class(class) {
            return Err(usage(format!("unknown class {class} for {}", ctx.ext())));
        }
        Ok(PrimeIdealSelector::ConjugacyClass { ctx, class })
    }

    pub fn residue_class(field: FieldSpec, residue: u64, modulus: u64) -> Result<Self> {
        if field != FieldSpec::Rationals {
            return Err(usage("residue-class selectors need base field q"));
        }
        if modulus == 0 {
            return Err(usage("modulus must be positive"));
        }
        Ok(PrimeIdealSelector::ResidueClass {
            residue: residue % modulus,
            modulus,
        })
    }

    /// Parses `all`, `class`, `residue:<r>:<m>`, `normmod:<r>:<m>` or
    /// `set:<literal>,<literal>,...`. `class` uses `ctx` and `class`
    /// (identity when absent).
    pub fn from_spec(spec: &str, ctx: ExtensionContext, class: Option<ClassLabel>) -> Result<Self> {
        let spec = spec.trim();
        let two = |rest: &str| -> Result<(u64, u64)> {
            let (r, m) = rest
                .split_once(':')
                .ok_or_else(|| usage(format!("expected <r>:<m> in selector {spec:?}")))?;
            let r = r.parse().map_err(|_| usage(format!("bad residue in {spec:?}")))?;
            let m: u64 = m.parse().map_err(|_| usage(format!("bad modulus in {spec:?}")))?;
            if m == 0 {
                return Err(usage("modulus must be positive"));
            }
            Ok((r, m))
        };
        match spec.split_once(':') {
            None if spec == "all" => Ok(PrimeIdealSelector::All),
            None if spec == "class" => PrimeIdealSelector::class(ctx, class.unwrap_or(ClassLabel::IDENTITY)),
            Some(("residue", rest)) => {
                let (r, m) = two(rest)?;
                PrimeIdealSelector::residue_class(ctx.field(), r, m)
            }
            Some(("normmod", rest)) => {
                let (r, m) = two(rest)?;
                Ok(PrimeIdealSelector::Custom(CustomSet::norm_residue(r, m)))
            }
            Some(("set", rest)) => {
                let field = ctx.field();
                let primes = rest
                    .split(',')
                    .map(|atom| {
                        let ideal = super::FactoredIdeal::parse_literal(&field, atom)?;
                        match ideal.factors() {
                            [(q, 1)] => Ok(*q),
                            _ => Err(usage(format!("{atom:?} is not a prime ideal"))),
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(PrimeIdealSelector::Custom(CustomSet::from_primes(primes)))
            }
            _ => Err(usage(format!(
                "unknown selector {spec:?} (all, class, residue:r:m, normmod:r:m, set:...)"
            ))),
        }
    }

    pub fn contains(&self, q: &PrimeIdeal) -> bool {
        match self {
            PrimeIdealSelector::All => true,
            PrimeIdealSelector::ConjugacyClass { ctx, class } => {
                ctx.artin_class_unchecked(q) == ArtinClass::Class(*class)
            }
            PrimeIdealSelector::ResidueClass { residue, modulus } => q.p() % modulus == *residue,
            PrimeIdealSelector::Custom(set) => set.contains(q),
        }
    }

    /// Natural density of the selected primes, when known a priori.
    pub fn density(&self) -> Option<Ratio<u64>> {
        match self {
            PrimeIdealSelector::All => Some(Ratio::from_integer(1)),
            PrimeIdealSelector::ConjugacyClass { ctx, class } => ctx.class_density(*class).ok(),
            PrimeIdealSelector::ResidueClass { residue, modulus } => {
                if num_integer::gcd(*residue, *modulus) == 1 {
                    Some(Ratio::new(1, euler_phi(*modulus)))
                } else {
                    Some(Ratio::from_integer(0))
                }
            }
            PrimeIdealSelector::Custom(_) => None,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            PrimeIdealSelector::All => "all".to_string(),
            PrimeIdealSelector::ConjugacyClass { ctx, class } => {
                format!("class:{class}[{}]", ctx.ext())
            }
            PrimeIdealSelector::ResidueClass { residue, modulus } => {
                format!("residue:{residue}:{modulus}")
            }
            PrimeIdealSelector::Custom(set) => set.description.clone(),
        }
    }
}
