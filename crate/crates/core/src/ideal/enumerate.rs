use super::FactoredIdeal;
use crate::error::{capacity, check_bound, Result};
use crate::field::arith::FactorSieve;
use crate::field::{primes_up_to_norm, FieldSpec, PrimeIdeal, Splitting};

/// Calls `visit` once for every ideal of norm `<= x` (and `O_K` when
/// `include_unit`), in depth-first order over ascending prime ideals.
///
/// Ideals are built by multiplicative composition: each ideal is the
/// product of powers of strictly increasing prime ideals.
pub fn for_each_ideal(
    field: FieldSpec,
    x: u64,
    include_unit: bool,
    mut visit: impl FnMut(&FactoredIdeal),
) -> Result<()> {
    let primes = primes_up_to_norm(field, x)?;
    let mut current = FactoredIdeal::unit();
    if include_unit {
        visit(&current);
    }
    compose(&primes, 0, x, &mut current, &mut visit);
    Ok(())
}

fn compose(
    primes: &[PrimeIdeal],
    start: usize,
    budget: u64,
    current: &mut FactoredIdeal,
    visit: &mut impl FnMut(&FactoredIdeal),
) {
    for (i, &q) in primes.iter().enumerate().skip(start) {
        let n = q.norm();
        if n > budget {
            break;
        }
        let mut power = n;
        let mut e = 1;
        while power <= budget {
            current.push_unchecked(q, e, power);
            visit(current);
            compose(primes, i + 1, budget / power, current, visit);
            current.pop_unchecked(power);
            e += 1;
            match power.checked_mul(n) {
                Some(next) => power = next,
                None => break,
            }
        }
    }
}

/// Every ideal with norm `<= x`, sorted by norm and then by factor list.
pub fn enumerate_ideals(field: FieldSpec, x: u64, include_unit: bool) -> Result<Vec<FactoredIdeal>> {
    let mut out = Vec::new();
    for_each_ideal(field, x, include_unit, |i| out.push(i.clone()))?;
    out.sort();
    Ok(out)
}

const SPLIT_RATIONAL: u8 = 1;
const SPLIT_SPLIT: u8 = 2;
const SPLIT_INERT: u8 = 3;
const SPLIT_RAMIFIED: u8 = 4;

/// Norm-indexed ideal generator: factors each integer `n` with a
/// smallest-prime-factor table and lists the ideals of norm exactly `n`.
///
/// Visiting norms block by block gives an enumeration that can be split
/// into independent norm ranges.
#[derive(Debug, Clone)]
pub struct IdealSieve {
    field: FieldSpec,
    factors: FactorSieve,
    splitting: Vec<u8>,
}

impl IdealSieve {
    pub fn new(field: FieldSpec, limit: u64) -> Result<Self> {
        check_bound(limit)?;
        if limit > FactorSieve::MAX_LIMIT {
            return Err(capacity(format!("sieve limit {limit} exceeds the 32-bit table")));
        }
        let factors = FactorSieve::new(limit.max(1));
        let mut splitting = vec![0u8; factors.limit() as usize + 1];
        for &p in factors.primes() {
            splitting[p as usize] = match field.splitting(p as u64) {
                Splitting::Rational => SPLIT_RATIONAL,
                Splitting::Split => SPLIT_SPLIT,
                Splitting::Inert => SPLIT_INERT,
                Splitting::Ramified => SPLIT_RAMIFIED,
            };
        }
        Ok(IdealSieve {
            field,
            factors,
            splitting,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn limit(&self) -> u64 {
        self.factors.limit()
    }

    /// Visits every ideal of norm exactly `n` (`O_K` for `n = 1`).
    pub fn for_each_of_norm(&self, n: u64, scratch: &mut SieveScratch, visit: &mut impl FnMut(&FactoredIdeal)) {
        assert!(n >= 1 && n <= self.limit());
        self.factors.factorize_into(n, &mut scratch.rational);
        scratch.building.clear();
        let rational = std::mem::take(&mut scratch.rational);
        self.expand(&rational, 0, &mut scratch.building, &mut scratch.leaf, visit);
        scratch.rational = rational;
    }

    /// Visits every ideal with `lo <= N(I) <= hi`, by ascending norm.
    pub fn for_each_in(&self, lo: u64, hi: u64, mut visit: impl FnMut(&FactoredIdeal)) {
        let mut scratch = SieveScratch::default();
        for n in lo.max(1)..=hi.min(self.limit()) {
            self.for_each_of_norm(n, &mut scratch, &mut visit);
        }
    }

    fn expand(
        &self,
        rational: &[(u64, u32)],
        pos: usize,
        building: &mut Vec<(PrimeIdeal, u32)>,
        leaf: &mut FactoredIdeal,
        visit: &mut impl FnMut(&FactoredIdeal),
    ) {
        let Some(&(p, a)) = rational.get(pos) else {
            leaf.clear();
            for &(q, e) in building.iter() {
                leaf.push_unchecked(q, e, q.norm().pow(e));
            }
            leaf.sort_factors();
            visit(leaf);
            return;
        };
        let above = self.field.primes_above_unchecked(p);
        let ideals = above.as_slice();
        match self.splitting[p as usize] {
            SPLIT_SPLIT => {
                for i in 0..=a {
                    let before = building.len();
                    if i > 0 {
                        building.push((ideals[0], i));
                    }
                    if a - i > 0 {
                        building.push((ideals[1], a - i));
                    }
                    self.expand(rational, pos + 1, building, leaf, visit);
                    building.truncate(before);
                }
            }
            SPLIT_INERT => {
                if a % 2 == 0 {
                    building.push((ideals[0], a / 2));
                    self.expand(rational, pos + 1, building, leaf, visit);
                    building.pop();
                }
            }
            _ => {
                building.push((ideals[0], a));
                self.expand(rational, pos + 1, building, leaf, visit);
                building.pop();
            }
        }
    }
}

/// Reusable buffers for [`IdealSieve::for_each_of_norm`].
#[derive(Debug, Default)]
pub struct SieveScratch {
    rational: Vec<(u64, u32)>,
    building: Vec<(PrimeIdeal, u32)>,
    leaf: FactoredIdeal,
}

/// Norms per parallel work unit.
pub(crate) const BLOCK: u64 = 1 << 14;

/// Maps `f` over consecutive norm blocks covering `[lo, hi]`, returning the
/// per-block results in ascending order.
pub(crate) fn map_blocks<T, F>(lo: u64, hi: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, u64) -> T + Sync + Send,
{
    if hi < lo {
        return Vec::new();
    }
    let blocks: Vec<(u64, u64)> = (0..=(hi - lo) / BLOCK)
        .map(|b| {
            let start = lo + b * BLOCK;
            (start, (start + BLOCK - 1).min(hi))
        })
        .collect();
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        blocks.into_par_iter().map(|(a, b)| f(a, b)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        blocks.into_iter().map(|(a, b)| f(a, b)).collect()
    }
}
