use super::FactoredIdeal;
use crate::error::{capacity, Result};

const MAX_DIVISORS: u64 = 1 << 32;

/// Iterator over every divisor of an ideal (exponent vectors bounded by the
/// ideal's), starting at `O_K`.
#[derive(Debug, Clone)]
pub struct Divisors<'a> {
    ideal: &'a FactoredIdeal,
    exponents: Vec<u32>,
    count: u64,
    done: bool,
}

impl<'a> Divisors<'a> {
    pub(super) fn new(ideal: &'a FactoredIdeal) -> Result<Self> {
        let mut count = 1u64;
        for &(_, e) in ideal.factors() {
            count = count.saturating_mul(e as u64 + 1);
        }
        if count > MAX_DIVISORS {
            return Err(capacity(format!("{count} divisors exceeds 2^32")));
        }
        Ok(Divisors {
            ideal,
            exponents: vec![0; ideal.factors().len()],
            count,
            done: false,
        })
    }

    /// `Π (e_i + 1)`.
    pub fn total(&self) -> u64 {
        self.count
    }
}

impl Iterator for Divisors<'_> {
    type Item = FactoredIdeal;

    fn next(&mut self) -> Option<FactoredIdeal> {
        if self.done {
            return None;
        }
        let factors = self.ideal.factors();
        let mut out = Vec::with_capacity(factors.len());
        let mut norm = 1u64;
        for (&(q, _), &e) in factors.iter().zip(&self.exponents) {
            if e > 0 {
                out.push((q, e));
                norm *= q.norm().pow(e);
            }
        }
        // advance the odometer
        self.done = true;
        for (slot, &(_, max)) in self.exponents.iter_mut().zip(factors) {
            if *slot < max {
                *slot += 1;
                self.done = false;
                break;
            }
            *slot = 0;
        }
        Some(FactoredIdeal::from_sorted_unchecked(out, norm))
    }
}
