//! Factored ideals of `O_K` and the arithmetic functions defined on them.

mod divisors;
mod enumerate;
mod selector;

use std::cmp::Ordering;
use std::fmt;

use crate::error::{capacity, usage, Result};
use crate::field::{FieldSpec, PrimeIdeal};

pub use divisors::Divisors;
pub(crate) use enumerate::map_blocks;
pub use enumerate::{enumerate_ideals, for_each_ideal, IdealSieve, SieveScratch};
pub use selector::{CustomSet, PrimeIdealSelector};

/// Which end of the norm ordering `m_k` counts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Largest,
    Smallest,
}

/// A nonzero ideal of `O_K` as a sorted list of prime-ideal powers.
///
/// Factors are sorted by `(norm, p, index)` without repeats; the empty
/// list is `O_K`. The norm is cached.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FactoredIdeal {
    factors: Vec<(PrimeIdeal, u32)>,
    norm: u64,
}

fn checked_pow(base: u64, exp: u32) -> Result<u64> {
    base.checked_pow(exp)
        .ok_or_else(|| capacity(format!("norm overflow computing {base}^{exp}")))
}

impl FactoredIdeal {
    pub fn unit() -> Self {
        FactoredIdeal {
            factors: Vec::new(),
            norm: 1,
        }
    }

    pub fn prime(q: PrimeIdeal) -> Self {
        FactoredIdeal {
            factors: vec![(q, 1)],
            norm: q.norm(),
        }
    }

    /// Builds an ideal from prime powers in any order; repeated primes have
    /// their exponents added and zero exponents are dropped.
    pub fn from_factors(factors: impl IntoIterator<Item = (PrimeIdeal, u32)>) -> Result<Self> {
        let mut fs: Vec<(PrimeIdeal, u32)> = factors.into_iter().filter(|f| f.1 > 0).collect();
        fs.sort_by_key(|a| a.0);
        let mut merged: Vec<(PrimeIdeal, u32)> = Vec::with_capacity(fs.len());
        for (q, e) in fs {
            match merged.last_mut() {
                Some(last) if last.0 == q => last.1 += e,
                _ => merged.push((q, e)),
            }
        }
        let mut norm = 1u64;
        for &(q, e) in &merged {
            norm = norm
                .checked_mul(checked_pow(q.norm(), e)?)
                .ok_or_else(|| capacity("ideal norm exceeds 64 bits"))?;
        }
        Ok(FactoredIdeal { factors: merged, norm })
    }

    /// Internal constructor for already-canonical factor lists.
    pub(crate) fn from_sorted_unchecked(factors: Vec<(PrimeIdeal, u32)>, norm: u64) -> Self {
        debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
        FactoredIdeal { factors, norm }
    }

    pub(crate) fn clear(&mut self) {
        self.factors.clear();
        self.norm = 1;
    }

    pub(crate) fn push_unchecked(&mut self, q: PrimeIdeal, e: u32, qe_norm: u64) {
        self.factors.push((q, e));
        self.norm *= qe_norm;
    }

    pub(crate) fn pop_unchecked(&mut self, qe_norm: u64) {
        self.factors.pop();
        self.norm /= qe_norm;
    }

    pub(crate) fn sort_factors(&mut self) {
        self.factors.sort_unstable_by_key(|a| a.0);
    }

    pub fn factors(&self) -> &[(PrimeIdeal, u32)] {
        &self.factors
    }

    pub fn norm(&self) -> u64 {
        self.norm
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn multiply(&self, other: &FactoredIdeal) -> Result<FactoredIdeal> {
        FactoredIdeal::from_factors(self.factors.iter().chain(other.factors.iter()).copied())
    }

    /// Whether `other` divides `self`, i.e. `other ⊇ self`.
    pub fn is_divisible_by(&self, other: &FactoredIdeal) -> bool {
        other
            .factors
            .iter()
            .all(|(q, e)| self.factors.iter().any(|(r, f)| r == q && f >= e))
    }

    /// Generalized Möbius function.
    pub fn mobius(&self) -> i8 {
        if self.factors.iter().any(|&(_, e)| e >= 2) {
            0
        } else if self.factors.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Number of distinct prime ideals dividing the ideal.
    pub fn omega(&self) -> u32 {
        self.factors.len() as u32
    }

    /// Distinct prime-factor norms in ascending order, each with the primes
    /// sitting at that norm level.
    pub fn norm_levels(&self) -> NormLevels<'_> {
        NormLevels { factors: &self.factors }
    }

    fn level(&self, k: usize, direction: Direction) -> Option<&[(PrimeIdeal, u32)]> {
        if k == 0 {
            return None;
        }
        match direction {
            Direction::Smallest => self.norm_levels().nth(k - 1),
            Direction::Largest => self.norm_levels().rev().nth(k - 1),
        }
    }

    /// `k`-th largest (or smallest) among the distinct prime-factor norms;
    /// `None` when there are fewer than `k` distinct norms.
    pub fn m_k(&self, k: usize, direction: Direction) -> Option<u64> {
        self.level(k, direction).map(|lvl| lvl[0].0.norm())
    }

    /// Number of distinct primes at norm level `M_k` accepted by `sel`;
    /// `None` when `M_k` is undefined.
    pub fn q_k(&self, k: usize, sel: &PrimeIdealSelector) -> Option<u32> {
        self.level(k, Direction::Largest)
            .map(|lvl| lvl.iter().filter(|(q, _)| sel.contains(q)).count() as u32)
    }

    /// A unique prime factor of minimum norm exists.
    pub fn is_salient(&self) -> bool {
        self.smallest_prime().is_some()
    }

    /// The unique minimum-norm prime factor, if the ideal is salient.
    pub fn smallest_prime(&self) -> Option<PrimeIdeal> {
        match self.factors.as_slice() {
            [] => None,
            [(q, _)] => Some(*q),
            [(q, _), (r, _), ..] => (q.norm() != r.norm()).then_some(*q),
        }
    }

    /// Characteristic function of the salient ideals whose minimum-norm
    /// prime lies in `sel`.
    pub fn indicator_f(&self, sel: &PrimeIdealSelector) -> bool {
        self.smallest_prime().is_some_and(|q| sel.contains(&q))
    }

    /// All divisors `J ⊇ I`, including `O_K` and `I` itself.
    pub fn divisors(&self) -> Result<Divisors<'_>> {
        Divisors::new(self)
    }

    /// Parses the literal syntax `p2.0^1*p5.1^2` (exponent optional, `1`
    /// for the unit ideal).
    pub fn parse_literal(field: &FieldSpec, s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(FactoredIdeal::unit());
        }
        let mut factors = Vec::new();
        for atom in s.split('*') {
            let atom = atom.trim();
            let (prime, exp) = match atom.split_once('^') {
                Some((q, e)) => (
                    q,
                    e.parse::<u32>()
                        .map_err(|_| usage(format!("bad exponent in {atom:?}")))?,
                ),
                None => (atom, 1),
            };
            let body = prime
                .strip_prefix('p')
                .ok_or_else(|| usage(format!("prime atom must start with 'p': {atom:?}")))?;
            let (p, idx) = body
                .split_once('.')
                .ok_or_else(|| usage(format!("prime atom needs p<prime>.<index>: {atom:?}")))?;
            let p: u64 = p.parse().map_err(|_| usage(format!("bad prime in {atom:?}")))?;
            let idx: u32 = idx.parse().map_err(|_| usage(format!("bad index in {atom:?}")))?;
            if exp == 0 {
                return Err(usage(format!("zero exponent in {atom:?}")));
            }
            factors.push((field.prime_ideal(p, idx)?, exp));
        }
        FactoredIdeal::from_factors(factors)
    }
}

/// Serialized as its literal, e.g. `"p2.0^1*p5.1^2"`.
impl serde::Serialize for FactoredIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for FactoredIdeal {
    /// Literal form, e.g. `p2.0^2*p3.0^1`; the unit ideal prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (q, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{q}^{e}")?;
        }
        Ok(())
    }
}

impl Ord for FactoredIdeal {
    /// By norm, then lexicographically by factor list.
    fn cmp(&self, other: &Self) -> Ordering {
        self.norm
            .cmp(&other.norm)
            .then_with(|| self.factors.cmp(&other.factors))
    }
}

impl PartialOrd for FactoredIdeal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Iterator over groups of factors sharing a norm, ascending.
#[derive(Debug, Clone)]
pub struct NormLevels<'a> {
    factors: &'a [(PrimeIdeal, u32)],
}

impl<'a> Iterator for NormLevels<'a> {
    type Item = &'a [(PrimeIdeal, u32)];

    fn next(&mut self) -> Option<Self::Item> {
        let first = self.factors.first()?.0.norm();
        let len = self.factors.iter().take_while(|f| f.0.norm() == first).count();
        let (head, tail) = self.factors.split_at(len);
        self.factors = tail;
        Some(head)
    }
}

impl DoubleEndedIterator for NormLevels<'_> {
    fn next_back(&mut self) -> Option<Self::Item> {
        let last = self.factors.last()?.0.norm();
        let len = self.factors.iter().rev().take_while(|f| f.0.norm() == last).count();
        let (head, tail) = self.factors.split_at(self.factors.len() - len);
        self.factors = head;
        Some(tail)
    }
}
