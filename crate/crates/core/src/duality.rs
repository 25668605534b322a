//! Exact evaluation of the higher-order duality identities.
//!
//! For an ideal `I`, an integer `k >= 1` and a selector `C`,
//!
//! ```text
//! Σ_{J ⊇ I} μ_K(J) · C(ω_K(J) − 1, k − 1) · f(J) = (−1)^k · Q_C^k(I)
//! ```
//!
//! whenever `M_k(I)` is defined and `Q^i(I) = 1` for `1 <= i < k`. Here `f`
//! is the indicator of salient ideals whose minimum-norm prime lies in `C`.
//! The integer form over `ℤ` (four identities in `P_k` and `p_k`) lives in
//! [`ClassicalIdentity`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{capacity, check_bound, usage, Result};
use crate::field::arith::FactorSieve;
use crate::field::ExtensionContext;
use crate::ideal::{map_blocks, FactoredIdeal, IdealSieve, PrimeIdealSelector, SieveScratch};

/// Exact binomial coefficient; zero when `b > a` or `a < 0`.
pub fn binomial(a: i64, b: i64) -> i64 {
    if a < 0 || b < 0 || b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut out: i64 = 1;
    for i in 0..b {
        out = out * (a - i) / (i + 1);
    }
    out
}

fn sign(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Left-hand side, summed over the squarefree divisors of `I` (the only
/// ones with `μ_K != 0`).
pub fn duality_lhs(ideal: &FactoredIdeal, k: usize, sel: &PrimeIdealSelector) -> Result<i64> {
    if k == 0 {
        return Err(usage("k must be at least 1"));
    }
    // capacity is judged on the full divisor lattice
    ideal.divisors()?;
    let factors = ideal.factors();
    let w = factors.len();
    if w > 62 {
        return Err(capacity(format!("{w} distinct prime factors")));
    }
    let selected: Vec<bool> = factors.iter().map(|(q, _)| sel.contains(q)).collect();
    let mut total = 0i64;
    for mask in 1u64..(1u64 << w) {
        let low = mask.trailing_zeros() as usize;
        if !selected[low] {
            continue;
        }
        let rest = mask & (mask - 1);
        if rest != 0 {
            let next = rest.trailing_zeros() as usize;
            if factors[next].0.norm() == factors[low].0.norm() {
                continue;
            }
        }
        let omega = mask.count_ones() as i64;
        let weight = binomial(omega - 1, k as i64 - 1);
        total += if omega % 2 == 0 { weight } else { -weight };
    }
    Ok(total)
}

/// `(−1)^k · Q_C^k(I)`, or `None` when `M_k(I)` is undefined.
pub fn duality_rhs(ideal: &FactoredIdeal, k: usize, sel: &PrimeIdealSelector) -> Option<i64> {
    ideal.q_k(k, sel).map(|q| sign(k) * q as i64)
}

/// `Q^i(I) = 1` for every `1 <= i < k`.
pub fn hypothesis_met(ideal: &FactoredIdeal, k: usize) -> bool {
    (1..k).all(|i| ideal.q_k(i, &PrimeIdealSelector::All) == Some(1))
}

/// Both sides of the identity for one ideal, with the hypothesis flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub ideal: FactoredIdeal,
    pub k: usize,
    pub lhs: i64,
    /// `None` when `M_k(I)` is undefined.
    pub rhs: Option<i64>,
    pub hypothesis_met: bool,
    pub applicable: bool,
    pub holds: bool,
}

impl DualityReport {
    /// The identity is guaranteed for this ideal.
    pub fn is_covered(&self) -> bool {
        self.hypothesis_met && self.applicable
    }
}

pub fn verify_duality(ideal: &FactoredIdeal, k: usize, sel: &PrimeIdealSelector) -> Result<DualityReport> {
    let lhs = duality_lhs(ideal, k, sel)?;
    let rhs = duality_rhs(ideal, k, sel);
    Ok(DualityReport {
        ideal: ideal.clone(),
        k,
        lhs,
        rhs,
        hypothesis_met: hypothesis_met(ideal, k),
        applicable: rhs.is_some(),
        holds: rhs == Some(lhs),
    })
}

/// An ideal covered by the theorem on which the two sides differ.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub norm: u64,
    pub ideal: FactoredIdeal,
    pub k: usize,
    pub lhs: i64,
    pub rhs: i64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct BatchSummary {
    pub checked: u64,
    pub skipped_hypothesis: u64,
    pub skipped_undefined: u64,
    pub violations: Vec<Violation>,
}

impl BatchSummary {
    pub fn merge(&mut self, other: BatchSummary) {
        self.checked += other.checked;
        self.skipped_hypothesis += other.skipped_hypothesis;
        self.skipped_undefined += other.skipped_undefined;
        self.violations.extend(other.violations);
    }

    fn finish(&mut self) {
        self.violations.sort();
    }

    fn record(&mut self, ideal: &FactoredIdeal, k_max: usize, sel: &PrimeIdealSelector) -> Result<()> {
        for k in 1..=k_max {
            // undefined M_k takes precedence over a failed hypothesis
            let Some(rhs) = duality_rhs(ideal, k, sel) else {
                self.skipped_undefined += 1;
                continue;
            };
            if !hypothesis_met(ideal, k) {
                self.skipped_hypothesis += 1;
                continue;
            }
            self.checked += 1;
            let lhs = duality_lhs(ideal, k, sel)?;
            if lhs != rhs {
                self.violations.push(Violation {
                    norm: ideal.norm(),
                    ideal: ideal.clone(),
                    k,
                    lhs,
                    rhs,
                });
            }
        }
        Ok(())
    }
}

/// Sweeps every ideal with `2 <= N(I) <= x` and every `k <= k_max`.
///
/// Violations come back sorted by norm, then factor list, then `k`.
pub fn batch_verify(ctx: &ExtensionContext, x: u64, k_max: usize, sel: &PrimeIdealSelector) -> Result<BatchSummary> {
    check_bound(x)?;
    if k_max == 0 {
        return Err(usage("kmax must be at least 1"));
    }
    let sieve = IdealSieve::new(ctx.field(), x.max(2))?;
    let parts = map_blocks(2, x, |lo, hi| -> Result<BatchSummary> {
        let mut part = BatchSummary::default();
        let mut scratch = SieveScratch::default();
        let mut err = None;
        for n in lo..=hi {
            sieve.for_each_of_norm(n, &mut scratch, &mut |ideal| {
                if err.is_none() {
                    if let Err(e) = part.record(ideal, k_max, sel) {
                        err = Some(e);
                    }
                }
            });
        }
        match err {
            Some(e) => Err(e),
            None => Ok(part),
        }
    });
    let mut summary = BatchSummary::default();
    for part in parts {
        summary.merge(part?);
    }
    summary.finish();
    Ok(summary)
}

/// `Σ_{J ⊇ I} g(J)` over the full divisor lattice.
pub fn divisor_sum(ideal: &FactoredIdeal, g: impl Fn(&FactoredIdeal) -> i64) -> Result<i64> {
    Ok(ideal.divisors()?.map(|j| g(&j)).sum())
}

/// `Σ_{J ⊇ I} μ_K(J) · ω_K(J)^u`.
pub fn mobius_power_sum(ideal: &FactoredIdeal, u: u32) -> Result<i64> {
    divisor_sum(ideal, |j| j.mobius() as i64 * (j.omega() as i64).pow(u))
}

/// `Σ_{J ⊇ I} μ_K(J) · ω_K(J)(ω_K(J) − 1)···(ω_K(J) − j + 1)`.
pub fn mobius_falling_sum(ideal: &FactoredIdeal, j: u32) -> Result<i64> {
    divisor_sum(ideal, |d| {
        let w = d.omega() as i64;
        d.mobius() as i64 * (0..j as i64).map(|i| w - i).product::<i64>()
    })
}

/// The four integer identities, in terms of the `k`-th largest (`P_k`) and
/// `k`-th smallest (`p_k`) prime factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ClassicalIdentity {
    /// `Σ μ(d) f(P_k(d)) = (−1)^k C(ω(n)−1, k−1) f(p_1(n))`
    LargestToSmallest,
    /// `Σ μ(d) f(p_k(d)) = (−1)^k C(ω(n)−1, k−1) f(P_1(n))`
    SmallestToLargest,
    /// `Σ μ(d) C(ω(d)−1, k−1) f(P_1(d)) = (−1)^k f(p_k(n))`
    BinomialLargest,
    /// `Σ μ(d) C(ω(d)−1, k−1) f(p_1(d)) = (−1)^k f(P_k(n))`
    BinomialSmallest,
}

impl ClassicalIdentity {
    pub const ALL: [ClassicalIdentity; 4] = [
        ClassicalIdentity::LargestToSmallest,
        ClassicalIdentity::SmallestToLargest,
        ClassicalIdentity::BinomialLargest,
        ClassicalIdentity::BinomialSmallest,
    ];

    pub fn number(self) -> u8 {
        self as u8 + 1
    }
}

impl fmt::Display for ClassicalIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

impl FromStr for ClassicalIdentity {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "1" => Ok(ClassicalIdentity::LargestToSmallest),
            "2" => Ok(ClassicalIdentity::SmallestToLargest),
            "3" => Ok(ClassicalIdentity::BinomialLargest),
            "4" => Ok(ClassicalIdentity::BinomialSmallest),
            other => Err(usage(format!("identity must be 1..4, got {other:?}"))),
        }
    }
}

pub type Rational = Ratio<i64>;

/// Arithmetic function on primes; zero off its support and at `1`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PrimeFunction {
    values: BTreeMap<u64, Rational>,
}

impl PrimeFunction {
    pub fn from_map(values: BTreeMap<u64, Rational>) -> Self {
        let mut values = values;
        values.remove(&1);
        values.retain(|_, v| !v.is_zero());
        PrimeFunction { values }
    }

    /// Seeded random values `a/b` with `|a| <= 30`, `1 <= b <= 6` on every
    /// prime up to `limit`.
    pub fn random(seed: u64, limit: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut values = BTreeMap::new();
        for p in crate::field::arith::primes_up_to(limit) {
            let num: i64 = rng.gen_range(-30..=30);
            let den: i64 = rng.gen_range(1..=6);
            values.insert(p, Rational::new(num, den));
        }
        PrimeFunction::from_map(values)
    }

    pub fn get(&self, n: u64) -> Rational {
        self.values.get(&n).copied().unwrap_or_else(Rational::zero)
    }
}

/// Both sides of one classical identity for the distinct primes of `n`,
/// given ascending.
fn classical_sides(primes: &[u64], k: usize, f: &PrimeFunction, which: ClassicalIdentity) -> (Rational, Rational) {
    let w = primes.len();
    // P_k and p_k of a subset in ascending order; 1 when fewer than k primes
    let largest = |s: &[u64], k: usize| if s.len() >= k { s[s.len() - k] } else { 1 };
    let smallest = |s: &[u64], k: usize| if s.len() >= k { s[k - 1] } else { 1 };
    let mut lhs = Rational::zero();
    let mut subset = Vec::with_capacity(w);
    for mask in 0u64..(1u64 << w) {
        subset.clear();
        subset.extend((0..w).filter(|i| mask >> i & 1 == 1).map(|i| primes[i]));
        let mu = if subset.len() % 2 == 0 { 1 } else { -1 };
        let omega = subset.len() as i64;
        let term = match which {
            ClassicalIdentity::LargestToSmallest => f.get(largest(&subset, k)),
            ClassicalIdentity::SmallestToLargest => f.get(smallest(&subset, k)),
            ClassicalIdentity::BinomialLargest => f.get(largest(&subset, 1)) * binomial(omega - 1, k as i64 - 1),
            ClassicalIdentity::BinomialSmallest => f.get(smallest(&subset, 1)) * binomial(omega - 1, k as i64 - 1),
        };
        lhs += term * mu;
    }
    let wn = w as i64;
    let rhs = match which {
        ClassicalIdentity::LargestToSmallest => f.get(smallest(primes, 1)) * binomial(wn - 1, k as i64 - 1),
        ClassicalIdentity::SmallestToLargest => f.get(largest(primes, 1)) * binomial(wn - 1, k as i64 - 1),
        ClassicalIdentity::BinomialLargest => f.get(smallest(primes, k)),
        ClassicalIdentity::BinomialSmallest => f.get(largest(primes, k)),
    } * sign(k);
    (lhs, rhs)
}

/// Both sides of a classical identity at `n`, summed over `d | n`.
pub fn classical_duality(
    n: u64,
    k: usize,
    f: &PrimeFunction,
    which: ClassicalIdentity,
) -> Result<(Rational, Rational)> {
    if n == 0 || k == 0 {
        return Err(usage("n and k must be positive"));
    }
    let primes = crate::field::arith::prime_divisors(n);
    Ok(classical_sides(&primes, k, f, which))
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ClassicalViolation {
    pub n: u64,
    pub k: usize,
    pub identity: ClassicalIdentity,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ClassicalSummary {
    pub checked: u64,
    pub violations: Vec<ClassicalViolation>,
}

/// Checks all four identities for `1 <= n <= n_max` and `1 <= k <= k_max`.
pub fn classical_sweep(n_max: u64, k_max: usize, f: &PrimeFunction) -> Result<ClassicalSummary> {
    check_bound(n_max)?;
    if n_max > FactorSieve::MAX_LIMIT {
        return Err(capacity(format!("n_max {n_max} exceeds the 32-bit table")));
    }
    let sieve = FactorSieve::new(n_max.max(2));
    let parts = map_blocks(1, n_max, |lo, hi| {
        let mut part = ClassicalSummary::default();
        let mut fac = Vec::new();
        let mut primes = Vec::new();
        for n in lo..=hi {
            sieve.factorize_into(n, &mut fac);
            primes.clear();
            primes.extend(fac.iter().map(|&(p, _)| p));
            for k in 1..=k_max {
                for which in ClassicalIdentity::ALL {
                    part.checked += 1;
                    let (lhs, rhs) = classical_sides(&primes, k, f, which);
                    if lhs != rhs {
                        part.violations.push(ClassicalViolation {
                            n,
                            k,
                            identity: which,
                            lhs: lhs.to_string(),
                            rhs: rhs.to_string(),
                        });
                    }
                }
            }
        }
        part
    });
    let mut summary = ClassicalSummary::default();
    for part in parts {
        summary.checked += part.checked;
        summary.violations.extend(part.violations);
    }
    Ok(summary)
}
