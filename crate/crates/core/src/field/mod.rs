//! Computable number fields (ℚ and quadratic fields) and abelian Galois
//! extensions over them.

pub mod arith;
mod extension;
mod residue;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{check_bound, usage, Result};
use arith::{is_prime, is_squarefree, kronecker, primes_up_to};

pub use extension::{ArtinClass, ClassLabel, ExtensionContext, ExtensionSpec};
pub use residue::{residue_constant, ResidueConstant};

/// A supported base field `K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FieldSpec {
    Rationals,
    /// `ℚ(√d)` for a squarefree `d ∉ {0, 1}`.
    Quadratic {
        d: i64,
    },
}

/// How a rational prime decomposes in `K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Splitting {
    /// `K = ℚ`: the prime itself.
    Rational,
    Split,
    Inert,
    Ramified,
}

impl FieldSpec {
    pub fn quadratic(d: i64) -> Result<Self> {
        if d == 0 || d == 1 {
            return Err(usage(format!("quadratic field needs d ∉ {{0, 1}}, got {d}")));
        }
        if !is_squarefree(d) {
            return Err(usage(format!("{d} is not squarefree")));
        }
        Ok(FieldSpec::Quadratic { d })
    }

    pub fn degree(&self) -> u32 {
        match self {
            FieldSpec::Rationals => 1,
            FieldSpec::Quadratic { .. } => 2,
        }
    }

    /// Fundamental discriminant: `1` for ℚ, `d` or `4d` for `ℚ(√d)`.
    pub fn discriminant(&self) -> i64 {
        match *self {
            FieldSpec::Rationals => 1,
            FieldSpec::Quadratic { d } if d.rem_euclid(4) == 1 => d,
            FieldSpec::Quadratic { d } => 4 * d,
        }
    }

    pub fn splitting(&self, p: u64) -> Splitting {
        match self {
            FieldSpec::Rationals => Splitting::Rational,
            FieldSpec::Quadratic { .. } => match kronecker(self.discriminant(), p) {
                1 => Splitting::Split,
                -1 => Splitting::Inert,
                _ => Splitting::Ramified,
            },
        }
    }

    /// Prime ideals above the rational prime `p` with their ramification
    /// index. `p` is assumed prime.
    pub(crate) fn primes_above_unchecked(&self, p: u64) -> PrimesAbove {
        let ideal = |f: u32, index: u32, ramified: bool| PrimeIdeal {
            p,
            residue_degree: f,
            index,
            ramified,
            norm: p.pow(f),
        };
        match self.splitting(p) {
            Splitting::Rational => PrimesAbove::one(ideal(1, 0, false), 1),
            Splitting::Split => PrimesAbove {
                ideals: [ideal(1, 0, false), ideal(1, 1, false)],
                len: 2,
                ramification: 1,
            },
            Splitting::Inert => PrimesAbove::one(ideal(2, 0, false), 1),
            Splitting::Ramified => PrimesAbove::one(ideal(1, 0, true), 2),
        }
    }

    /// The prime ideal over `p` with the given conjugate index.
    pub fn prime_ideal(&self, p: u64, index: u32) -> Result<PrimeIdeal> {
        split_prime(*self, p)?
            .into_iter()
            .map(|(q, _)| q)
            .find(|q| q.index == index)
            .ok_or_else(|| usage(format!("no prime ideal with index {index} above {p} in {self}")))
    }

    /// Whether `q` is one of the prime ideals this field produces.
    pub fn owns(&self, q: &PrimeIdeal) -> bool {
        is_prime(q.p) && self.primes_above_unchecked(q.p).as_slice().contains(q)
    }

    /// The two roots `r0 < r1` of the defining polynomial of the integral
    /// generator `ω` modulo a split (or ramified, `r0 == r1`) prime `p`.
    /// `ω = √d` with polynomial `x² − d`, or `ω = (1 + √d)/2` with
    /// `x² − x + (1 − d)/4` when `d ≡ 1 mod 4`.
    pub fn canonical_roots(&self, p: u64) -> Option<(u64, u64)> {
        let FieldSpec::Quadratic { d } = *self else {
            return None;
        };
        let (b, c) = if d.rem_euclid(4) == 1 {
            (-1i128, ((1 - d) / 4) as i128)
        } else {
            (0i128, -(d as i128))
        };
        let pm = p as i128;
        let eval = |x: i128| (x * x + b * x + c).rem_euclid(pm) == 0;
        let roots: Vec<u64> = if p < 64 {
            (0..pm).filter(|&x| eval(x)).map(|x| x as u64).collect()
        } else {
            // x = (−b ± s) / 2 with s² = b² − 4c = disc
            let disc = (b * b - 4 * c).rem_euclid(pm) as u64;
            let s = arith::sqrt_mod(disc, p)? as i128;
            let inv2 = (pm + 1) / 2;
            let mut rs: Vec<u64> = [s, -s]
                .iter()
                .map(|&t| (((-b + t) * inv2).rem_euclid(pm)) as u64)
                .collect();
            rs.dedup();
            rs
        };
        match roots.as_slice() {
            [r] => Some((*r, *r)),
            [r0, r1] => Some((*r0.min(r1), *r0.max(r1))),
            _ => None,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::Quadratic { d } => write!(f, "quad:{d}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = crate::Error;

    /// `"q"` or `"quad:<d>"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        match s.split_once(':') {
            Some(("quad", d)) => {
                let d: i64 = d
                    .trim()
                    .parse()
                    .map_err(|_| usage(format!("bad quadratic parameter in {s:?}")))?;
                FieldSpec::quadratic(d)
            }
            _ => Err(usage(format!("unknown field spec {s:?} (expected q or quad:<d>)"))),
        }
    }
}

/// A nonzero prime ideal of `O_K`.
///
/// Ordered by `(norm, p, index)`, the canonical order used everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeIdeal {
    p: u64,
    residue_degree: u32,
    index: u32,
    ramified: bool,
    norm: u64,
}

impl PrimeIdeal {
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn residue_degree(&self) -> u32 {
        self.residue_degree
    }
    /// Distinguishes conjugates above the same `p`.
    pub fn index(&self) -> u32 {
        self.index
    }
    /// Ramified in `K/ℚ`.
    pub fn is_ramified_in_base(&self) -> bool {
        self.ramified
    }
    pub fn norm(&self) -> u64 {
        self.norm
    }

    /// Short label `p<p>.<index>`, the atom of the ideal literal syntax.
    pub fn label(&self) -> String {
        format!("p{}.{}", self.p, self.index)
    }

    /// Two-element generator description, e.g. `(5, ω - 2)`.
    pub fn generators(&self, field: &FieldSpec) -> String {
        match field {
            FieldSpec::Rationals => format!("({})", self.p),
            FieldSpec::Quadratic { .. } if self.residue_degree == 2 => format!("({})", self.p),
            FieldSpec::Quadratic { .. } => match field.canonical_roots(self.p) {
                Some((r0, r1)) => {
                    let r = if self.index == 0 { r0 } else { r1 };
                    format!("({}, ω - {})", self.p, r)
                }
                None => format!("({})", self.p),
            },
        }
    }

    fn key(&self) -> (u64, u64, u32) {
        (self.norm, self.p, self.index)
    }
}

impl Ord for PrimeIdeal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for PrimeIdeal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// At most two prime ideals above a rational prime in a field of degree ≤ 2.
#[derive(Debug, Clone, Copy)]
pub(crate) struct PrimesAbove {
    ideals: [PrimeIdeal; 2],
    len: u8,
    pub ramification: u32,
}

impl PrimesAbove {
    fn one(ideal: PrimeIdeal, ramification: u32) -> Self {
        PrimesAbove {
            ideals: [ideal, ideal],
            len: 1,
            ramification,
        }
    }

    pub fn as_slice(&self) -> &[PrimeIdeal] {
        &self.ideals[..self.len as usize]
    }
}

/// Decomposition of the rational prime `p` in `K`: the prime ideals above it
/// with their ramification indices.
pub fn split_prime(field: FieldSpec, p: u64) -> Result<Vec<(PrimeIdeal, u32)>> {
    if !is_prime(p) {
        return Err(usage(format!("{p} is not prime")));
    }
    let above = field.primes_above_unchecked(p);
    Ok(above.as_slice().iter().map(|&q| (q, above.ramification)).collect())
}

/// Every prime ideal of norm `<= x`, sorted by `(norm, p, index)`.
pub fn primes_up_to_norm(field: FieldSpec, x: u64) -> Result<Vec<PrimeIdeal>> {
    check_bound(x)?;
    let mut out = Vec::new();
    for p in primes_up_to(x) {
        for q in field.primes_above_unchecked(p).as_slice() {
            if q.norm <= x {
                out.push(*q);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}
