//! Chebotarev-density partial sums, cumulative `Q^k` sums and the
//! supporting prime and ideal counts.
//!
//! Every sweep first reduces the ideals of each norm `n` to small integer
//! coefficients (a [`NormProfile`]), then accumulates those in ascending
//! norm order. The reduction is exact, so accumulated values do not depend
//! on how the norm range was split across threads.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{check_bound, usage, Result};
use crate::field::arith::primes_up_to;
use crate::field::{primes_up_to_norm, residue_constant, ArtinClass, ClassLabel, ExtensionContext, FieldSpec};
use crate::ideal::{map_blocks, IdealSieve, PrimeIdealSelector, SieveScratch};
use crate::numeric::{li, NeumaierSum};

/// Checkpoints at or below this norm carry an exact rational value.
pub const EXACT_LIMIT: u64 = 100_000;

/// Which per-norm columns a [`NormProfile`] computes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Columns {
    /// `count`, `mu` and `omega`.
    pub ideals: bool,
    /// `mu_f` and `mu_omega_f`.
    pub salient: bool,
    /// `q1` and `q2`.
    pub q: bool,
}

/// Per-norm sums over the ideals of norm exactly `n`, indexed by `n`.
///
/// Index 0 is unused; index 1 holds `O_K`. Columns not requested are empty.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NormProfile {
    pub x: u64,
    /// Number of ideals.
    pub count: Vec<u32>,
    /// `Σ μ_K(I)`.
    pub mu: Vec<i32>,
    /// `Σ ω_K(I)`.
    pub omega: Vec<u32>,
    /// `Σ μ_K(I) f(I)`.
    pub mu_f: Vec<i32>,
    /// `Σ μ_K(I) ω_K(I) f(I)`.
    pub mu_omega_f: Vec<i32>,
    /// `Σ Q^1(I)` under the selector.
    pub q1: Vec<u32>,
    /// `Σ Q^2(I)` under the selector, undefined counted as 0.
    pub q2: Vec<u32>,
}

fn pad<T: Default>(v: &mut Vec<T>, on: bool) {
    if on {
        v.push(T::default());
    }
}

impl NormProfile {
    pub fn build(field: FieldSpec, x: u64, sel: &PrimeIdealSelector, columns: Columns) -> Result<Self> {
        check_bound(x)?;
        let sieve = IdealSieve::new(field, x.max(2))?;
        let blocks = map_blocks(1, x, |lo, hi| {
            let len = (hi - lo + 1) as usize;
            let sized = |on: bool| if on { len } else { 0 };
            let mut part = NormProfile {
                x: hi,
                count: vec![0; sized(columns.ideals)],
                mu: vec![0; sized(columns.ideals)],
                omega: vec![0; sized(columns.ideals)],
                mu_f: vec![0; sized(columns.salient)],
                mu_omega_f: vec![0; sized(columns.salient)],
                q1: vec![0; sized(columns.q)],
                q2: vec![0; sized(columns.q)],
            };
            let mut scratch = SieveScratch::default();
            for n in lo..=hi {
                let i = (n - lo) as usize;
                sieve.for_each_of_norm(n, &mut scratch, &mut |ideal| {
                    let mu = ideal.mobius() as i32;
                    let omega = ideal.omega();
                    if columns.ideals {
                        part.count[i] += 1;
                        part.mu[i] += mu;
                        part.omega[i] += omega;
                    }
                    if columns.salient && mu != 0 && ideal.indicator_f(sel) {
                        part.mu_f[i] += mu;
                        part.mu_omega_f[i] += mu * omega as i32;
                    }
                    if columns.q {
                        part.q1[i] += ideal.q_k(1, sel).unwrap_or(0);
                        part.q2[i] += ideal.q_k(2, sel).unwrap_or(0);
                    }
                });
            }
            part
        });
        let sized = |on: bool| if on { x as usize + 1 } else { 0 };
        let mut out = NormProfile {
            x,
            count: Vec::with_capacity(sized(columns.ideals)),
            mu: Vec::with_capacity(sized(columns.ideals)),
            omega: Vec::with_capacity(sized(columns.ideals)),
            mu_f: Vec::with_capacity(sized(columns.salient)),
            mu_omega_f: Vec::with_capacity(sized(columns.salient)),
            q1: Vec::with_capacity(sized(columns.q)),
            q2: Vec::with_capacity(sized(columns.q)),
        };
        pad(&mut out.count, columns.ideals);
        pad(&mut out.mu, columns.ideals);
        pad(&mut out.omega, columns.ideals);
        pad(&mut out.mu_f, columns.salient);
        pad(&mut out.mu_omega_f, columns.salient);
        pad(&mut out.q1, columns.q);
        pad(&mut out.q2, columns.q);
        for b in blocks {
            out.count.extend(b.count);
            out.mu.extend(b.mu);
            out.omega.extend(b.omega);
            out.mu_f.extend(b.mu_f);
            out.mu_omega_f.extend(b.mu_omega_f);
            out.q1.extend(b.q1);
            out.q2.extend(b.q2);
        }
        Ok(out)
    }
}

/// Weight applied to each selected ideal `I ∈ S(C)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SeriesWeight {
    /// `μ_K(I) / N(I)`; limit `−|C|/|G|`.
    MobiusOverNorm,
    /// `μ_K(I)(ω_K(I) − 1) / N(I)`; limit `+|C|/|G|`.
    MobiusOmegaMinus1OverNorm,
    /// `μ_K(I) ω_K(I) / N(I)`; limit 0.
    MobiusOmegaOverNorm,
    /// `μ_K(I)`.
    MobiusUnweighted,
    /// `μ_K(I) ω_K(I)`.
    MobiusOmegaUnweighted,
}

impl SeriesWeight {
    pub const ALL: [SeriesWeight; 5] = [
        SeriesWeight::MobiusOverNorm,
        SeriesWeight::MobiusOmegaMinus1OverNorm,
        SeriesWeight::MobiusOmegaOverNorm,
        SeriesWeight::MobiusUnweighted,
        SeriesWeight::MobiusOmegaUnweighted,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SeriesWeight::MobiusOverNorm => "mobius_over_norm",
            SeriesWeight::MobiusOmegaMinus1OverNorm => "mobius_omega_minus1_over_norm",
            SeriesWeight::MobiusOmegaOverNorm => "mobius_omega_over_norm",
            SeriesWeight::MobiusUnweighted => "mobius_unweighted",
            SeriesWeight::MobiusOmegaUnweighted => "mobius_omega_unweighted",
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            SeriesWeight::MobiusOverNorm => "mobius",
            SeriesWeight::MobiusOmegaMinus1OverNorm => "momega1",
            SeriesWeight::MobiusOmegaOverNorm => "momega",
            SeriesWeight::MobiusUnweighted => "mobius-count",
            SeriesWeight::MobiusOmegaUnweighted => "momega-count",
        }
    }

    pub fn divides_by_norm(self) -> bool {
        matches!(
            self,
            SeriesWeight::MobiusOverNorm | SeriesWeight::MobiusOmegaMinus1OverNorm | SeriesWeight::MobiusOmegaOverNorm
        )
    }

    /// Limit as a multiple of the selector density.
    fn target_factor(self) -> i64 {
        match self {
            SeriesWeight::MobiusOverNorm => -1,
            SeriesWeight::MobiusOmegaMinus1OverNorm => 1,
            _ => 0,
        }
    }

    /// Per-norm integer coefficient.
    fn coefficient(self, profile: &NormProfile, n: usize) -> i64 {
        let mu = profile.mu_f[n] as i64;
        let mu_omega = profile.mu_omega_f[n] as i64;
        match self {
            SeriesWeight::MobiusOverNorm | SeriesWeight::MobiusUnweighted => mu,
            SeriesWeight::MobiusOmegaMinus1OverNorm => mu_omega - mu,
            SeriesWeight::MobiusOmegaOverNorm | SeriesWeight::MobiusOmegaUnweighted => mu_omega,
        }
    }
}

impl fmt::Display for SeriesWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SeriesWeight {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        SeriesWeight::ALL
            .into_iter()
            .find(|w| w.name() == s || w.short_name() == s)
            .ok_or_else(|| {
                usage(format!(
                    "unknown weight {s:?} (mobius, momega1, momega, mobius-count, momega-count)"
                ))
            })
    }
}

/// Where partial sums are sampled.
#[derive(Debug, Clone, PartialEq)]
pub enum Checkpoints {
    /// `start · ratio^i` rounded, with `steps` points per decade, then `X_max`.
    Geometric {
        start: u64,
        steps: u32,
    },
    List(Vec<u64>),
}

impl Default for Checkpoints {
    fn default() -> Self {
        Checkpoints::Geometric { start: 1000, steps: 4 }
    }
}

impl Checkpoints {
    /// Strictly increasing checkpoints, all `<= x_max`, ending at `x_max`
    /// for geometric spacing.
    pub fn resolve(&self, x_max: u64) -> Result<Vec<u64>> {
        match self {
            Checkpoints::Geometric { start, steps } => {
                let mut out = Vec::new();
                for i in 0.. {
                    let decades = (i / *steps) as i32;
                    let frac = (i % *steps) as f64 / *steps as f64;
                    let x = (*start as f64 * 10f64.powi(decades) * 10f64.powf(frac)).round() as u64;
                    if x >= x_max {
                        break;
                    }
                    out.push(x);
                }
                out.push(x_max);
                Ok(out)
            }
            Checkpoints::List(xs) => {
                let mut xs = xs.clone();
                xs.sort_unstable();
                xs.dedup();
                if xs.is_empty() {
                    return Err(usage("empty checkpoint list"));
                }
                if xs[0] == 0 || *xs.last().unwrap() > x_max {
                    return Err(usage(format!("checkpoints must lie in [1, {x_max}]")));
                }
                Ok(xs)
            }
        }
    }
}

impl fmt::Display for Checkpoints {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Checkpoints::Geometric { start, steps } => write!(f, "geometric:{start}:{steps}"),
            Checkpoints::List(xs) => {
                let parts: Vec<String> = xs.iter().map(u64::to_string).collect();
                f.write_str(&parts.join(","))
            }
        }
    }
}

impl FromStr for Checkpoints {
    type Err = crate::Error;

    /// `geometric`, `geometric:<start>:<steps per decade>` or `x1,x2,...`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || usage(format!("bad checkpoint spec {s:?}"));
        if s == "geometric" {
            return Ok(Checkpoints::default());
        }
        if let Some(rest) = s.strip_prefix("geometric:") {
            let (a, b) = rest.split_once(':').ok_or_else(bad)?;
            let start: u64 = a.parse().map_err(|_| bad())?;
            let steps: u32 = b.parse().map_err(|_| bad())?;
            if start == 0 || steps == 0 {
                return Err(bad());
            }
            return Ok(Checkpoints::Geometric { start, steps });
        }
        let xs = s
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Checkpoints::List(xs))
    }
}

/// How a series is accumulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Accumulation {
    /// Exact values at checkpoints `<= EXACT_LIMIT`, compensated floating
    /// sums reported beyond.
    Auto,
    /// Compensated floating summation only.
    Float,
}

/// Cumulative sums of `coeff[n]` (or `coeff[n] / n`) sampled at ascending
/// checkpoints. Returns the floating value and, where computed, the exact
/// rational value at each checkpoint.
pub fn accumulate(
    coeff: impl Fn(usize) -> i64,
    divide_by_norm: bool,
    start: u64,
    checkpoints: &[u64],
    mode: Accumulation,
) -> Vec<(f64, Option<BigRational>)> {
    let last = checkpoints.last().copied().unwrap_or(0);
    let exact_max = match mode {
        Accumulation::Auto => checkpoints.iter().copied().filter(|&x| x <= EXACT_LIMIT).max(),
        Accumulation::Float => None,
    };
    // every 1/n with n <= exact_max is an integer multiple of 1/L
    let common = match (exact_max, divide_by_norm) {
        (Some(m), true) => lcm_up_to(m),
        _ => BigUint::one(),
    };
    let common_int = BigInt::from(common.clone());
    let mut exact_acc = BigInt::zero();
    let mut float_acc = NeumaierSum::default();
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut next = checkpoints.iter().peekable();
    // checkpoints below `start` hold the empty sum
    while next.next_if(|&&x| x < start).is_some() {
        out.push((0.0, exact_max.map(|_| BigRational::zero())));
    }
    for n in start..=last {
        let c = coeff(n as usize);
        if c != 0 {
            if divide_by_norm {
                float_acc.add(c as f64 / n as f64);
            } else {
                float_acc.add(c as f64);
            }
            if exact_max.is_some_and(|m| n <= m) {
                let scale = if divide_by_norm { &common / n } else { BigUint::one() };
                exact_acc += BigInt::from(scale) * c;
            }
        }
        while next.peek().is_some_and(|&&x| x == n) {
            let x = *next.next().unwrap();
            let exact = exact_max
                .filter(|&m| x <= m)
                .map(|_| BigRational::new(exact_acc.clone(), common_int.clone()));
            let value = match &exact {
                Some(r) => r.to_f64().unwrap_or(f64::NAN),
                None => float_acc.total(),
            };
            out.push((value, exact));
        }
    }
    out
}

/// `lcm(1, 2, ..., n)`.
pub fn lcm_up_to(n: u64) -> BigUint {
    let mut factors: Vec<BigUint> = primes_up_to(n)
        .into_iter()
        .map(|p| {
            let mut q = p;
            while q <= n / p {
                q *= p;
            }
            BigUint::from(q)
        })
        .collect();
    // balanced product keeps the operands similar in size
    while factors.len() > 1 {
        factors = factors
            .chunks(2)
            .map(|c| if c.len() == 2 { &c[0] * &c[1] } else { c[0].clone() })
            .collect();
    }
    factors.pop().unwrap_or_else(BigUint::one)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesPoint {
    pub x: u64,
    pub value: f64,
    /// Exact value as `num/den`, when accumulated exactly.
    #[serde(serialize_with = "serialize_opt_ratio")]
    pub exact: Option<BigRational>,
    pub target: f64,
    pub abs_error: f64,
}

fn serialize_opt_ratio<S: serde::Serializer>(r: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.collect_str(r),
        None => s.serialize_none(),
    }
}

/// Origin of a series target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TargetSource {
    /// Selector density `|C|/|G|` known a priori.
    Density,
    /// `𝒦 / c_K` with `𝒦` measured as the slope of `Σ Q^1` at `X_max`.
    Estimated,
    /// The weight has limit 0 regardless of the selector.
    Zero,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartialSumSeries {
    pub weight: SeriesWeight,
    pub selector: String,
    /// Exact target when it is a known rational.
    #[serde(serialize_with = "serialize_opt_small_ratio")]
    pub target_exact: Option<Ratio<i64>>,
    pub target_source: TargetSource,
    pub points: Vec<SeriesPoint>,
}

fn serialize_opt_small_ratio<S: serde::Serializer>(
    r: &Option<Ratio<i64>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.collect_str(r),
        None => s.serialize_none(),
    }
}

/// Selector density, or the estimate `𝒦 / c_K` for custom sets.
fn selector_density(
    field: FieldSpec,
    sel: &PrimeIdealSelector,
    profile: Option<&NormProfile>,
    x_max: u64,
) -> Result<(f64, Option<Ratio<i64>>, bool)> {
    if let Some(d) = sel.density() {
        let r = Ratio::new(*d.numer() as i64, *d.denom() as i64);
        return Ok((*d.numer() as f64 / *d.denom() as f64, Some(r), false));
    }
    let owned;
    let profile = match profile {
        Some(p) if !p.q1.is_empty() => p,
        _ => {
            owned = NormProfile::build(
                field,
                x_max,
                sel,
                Columns {
                    q: true,
                    ..Columns::default()
                },
            )?;
            &owned
        }
    };
    let total: u64 = profile.q1.iter().skip(2).map(|&q| q as u64).sum();
    let slope = total as f64 / x_max as f64;
    Ok((slope / residue_constant(field).value, None, true))
}

/// Partial sums of `weight` over `I ∈ S(sel)`, `2 <= N(I) <= X`.
pub fn density_series(
    ctx: &ExtensionContext,
    sel: &PrimeIdealSelector,
    weight: SeriesWeight,
    x_max: u64,
    checkpoints: &Checkpoints,
) -> Result<PartialSumSeries> {
    density_series_with(ctx, sel, weight, x_max, checkpoints, Accumulation::Auto)
}

pub fn density_series_with(
    ctx: &ExtensionContext,
    sel: &PrimeIdealSelector,
    weight: SeriesWeight,
    x_max: u64,
    checkpoints: &Checkpoints,
    mode: Accumulation,
) -> Result<PartialSumSeries> {
    check_bound(x_max)?;
    let xs = checkpoints.resolve(x_max)?;
    let needs_estimate = sel.density().is_none() && weight.target_factor() != 0;
    let columns = Columns {
        salient: true,
        q: needs_estimate,
        ..Columns::default()
    };
    let profile = NormProfile::build(ctx.field(), x_max, sel, columns)?;
    series_from_profile(ctx.field(), sel, weight, &profile, &xs, mode)
}

fn series_from_profile(
    field: FieldSpec,
    sel: &PrimeIdealSelector,
    weight: SeriesWeight,
    profile: &NormProfile,
    xs: &[u64],
    mode: Accumulation,
) -> Result<PartialSumSeries> {
    let factor = weight.target_factor();
    let (target, target_exact, source) = if factor == 0 {
        (0.0, Some(Ratio::from_integer(0)), TargetSource::Zero)
    } else {
        let (d, exact, estimated) = selector_density(field, sel, Some(profile), profile.x)?;
        let source = if estimated {
            TargetSource::Estimated
        } else {
            TargetSource::Density
        };
        (factor as f64 * d, exact.map(|r| r * factor), source)
    };
    let values = accumulate(
        |n| weight.coefficient(profile, n),
        weight.divides_by_norm(),
        2,
        xs,
        mode,
    );
    let points = xs
        .iter()
        .zip(values)
        .map(|(&x, (value, exact))| SeriesPoint {
            x,
            value,
            exact,
            target,
            abs_error: (value - target).abs(),
        })
        .collect();
    Ok(PartialSumSeries {
        weight,
        selector: sel.describe(),
        target_exact,
        target_source: source,
        points,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QSumPoint {
    pub x: u64,
    pub sum: u64,
    pub predicted: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QSumReport {
    pub k: usize,
    pub selector: String,
    /// Predicted slope `c_K · |C|/|G|` (or the measured `𝒦` for custom sets).
    pub slope: f64,
    pub points: Vec<QSumPoint>,
}

/// Cumulative `Σ_{2 <= N(I) <= X} Q^k(I)` under `sel`.
pub fn q_sum_series(
    ctx: &ExtensionContext,
    sel: &PrimeIdealSelector,
    k: usize,
    x_max: u64,
    checkpoints: &Checkpoints,
) -> Result<QSumReport> {
    if !(1..=2).contains(&k) {
        return Err(usage(format!("k must be 1 or 2, got {k}")));
    }
    check_bound(x_max)?;
    let xs = checkpoints.resolve(x_max)?;
    let field = ctx.field();
    let profile = NormProfile::build(
        field,
        x_max,
        sel,
        Columns {
            q: true,
            ..Columns::default()
        },
    )?;
    let slope = match sel.density() {
        Some(d) => residue_constant(field).value * (*d.numer() as f64 / *d.denom() as f64),
        None => profile.q1.iter().skip(2).map(|&q| q as u64).sum::<u64>() as f64 / x_max as f64,
    };
    let column = if k == 1 { &profile.q1 } else { &profile.q2 };
    let mut points = Vec::with_capacity(xs.len());
    let mut sum = 0u64;
    let mut n = 2u64;
    for &x in &xs {
        while n <= x {
            sum += column[n as usize] as u64;
            n += 1;
        }
        let predicted = slope * x as f64;
        points.push(QSumPoint {
            x,
            sum,
            predicted,
            ratio: sum as f64 / predicted,
        });
    }
    Ok(QSumReport {
        k,
        selector: sel.describe(),
        slope,
        points,
    })
}

/// `Σ_{N(I) <= X} μ_K(I)` (or `μ_K(I)/N(I)` when `normalized`), `O_K`
/// included. Target 0.
pub fn mobius_sum_series(
    field: FieldSpec,
    x_max: u64,
    normalized: bool,
    checkpoints: &Checkpoints,
) -> Result<PartialSumSeries> {
    check_bound(x_max)?;
    let xs = checkpoints.resolve(x_max)?;
    let profile = NormProfile::build(
        field,
        x_max,
        &PrimeIdealSelector::All,
        Columns {
            ideals: true,
            ..Columns::default()
        },
    )?;
    let values = accumulate(|n| profile.mu[n] as i64, normalized, 1, &xs, Accumulation::Auto);
    let points = xs
        .iter()
        .zip(values)
        .map(|(&x, (value, exact))| SeriesPoint {
            x,
            value,
            exact,
            target: 0.0,
            abs_error: value.abs(),
        })
        .collect();
    Ok(PartialSumSeries {
        weight: if normalized {
            SeriesWeight::MobiusOverNorm
        } else {
            SeriesWeight::MobiusUnweighted
        },
        selector: "all-ideals".to_string(),
        target_exact: Some(Ratio::from_integer(0)),
        target_source: TargetSource::Zero,
        points,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Theorem5Point {
    pub x: u64,
    /// `Σ_{I ∈ S(sel)} μ_K(I)`.
    pub mobius_sum: i64,
    /// `Σ_{I ∈ S(sel)} μ_K(I) ω_K(I)`.
    pub mobius_omega_sum: i64,
    pub mobius_ratio: f64,
    pub mobius_omega_ratio: f64,
}

/// Unweighted sums over `S(sel)` with `|sum| / X` at each checkpoint.
pub fn theorem5_sums(
    ctx: &ExtensionContext,
    sel: &PrimeIdealSelector,
    x_max: u64,
    checkpoints: &Checkpoints,
) -> Result<Vec<Theorem5Point>> {
    check_bound(x_max)?;
    let xs = checkpoints.resolve(x_max)?;
    let profile = NormProfile::build(
        ctx.field(),
        x_max,
        sel,
        Columns {
            salient: true,
            ..Columns::default()
        },
    )?;
    let mut out = Vec::with_capacity(xs.len());
    let (mut a, mut b) = (0i64, 0i64);
    let mut n = 2u64;
    for &x in &xs {
        while n <= x {
            a += profile.mu_f[n as usize] as i64;
            b += profile.mu_omega_f[n as usize] as i64;
            n += 1;
        }
        out.push(Theorem5Point {
            x,
            mobius_sum: a,
            mobius_omega_sum: b,
            mobius_ratio: a.unsigned_abs() as f64 / x as f64,
            mobius_omega_ratio: b.unsigned_abs() as f64 / x as f64,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountingRow {
    pub x: u64,
    /// `π(K; X)`.
    pub pi: u64,
    /// `Li(X) = ∫_2^X dt / log t`.
    pub li: f64,
    /// `π_C(X)` in the order of [`CountingReport::classes`].
    pub pi_c: Vec<u64>,
    /// Ideals with `N(I) <= X`, `O_K` included.
    pub ideals: u64,
    /// `c_K · X`.
    pub ck_x: f64,
    /// Mean of `ω_K(I) / log log N(I)` over `10 <= N(I) <= X`.
    pub hardy_ramanujan: f64,
    /// `Π_{N(𝔱) <= X} (1 − 1/N(𝔱))^{-1} / log X`.
    pub mertens: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountingReport {
    pub field: String,
    pub ext: String,
    pub classes: Vec<ClassLabel>,
    pub c_k: f64,
    pub rows: Vec<CountingRow>,
}

pub fn counting_report(ctx: &ExtensionContext, x_max: u64, checkpoints: &Checkpoints) -> Result<CountingReport> {
    check_bound(x_max)?;
    let xs = checkpoints.resolve(x_max)?;
    let field = ctx.field();
    let classes = ctx.class_ids();
    let primes = if x_max >= 2 {
        primes_up_to_norm(field, x_max)?
    } else {
        Vec::new()
    };
    let profile = NormProfile::build(
        field,
        x_max,
        &PrimeIdealSelector::All,
        Columns {
            ideals: true,
            ..Columns::default()
        },
    )?;
    let c_k = residue_constant(field).value;

    let mut rows = Vec::with_capacity(xs.len());
    let mut pi = 0u64;
    let mut pi_c = vec![0u64; classes.len()];
    let mut log_euler = NeumaierSum::default();
    let mut next_prime = primes.iter().peekable();
    let mut ideals = 0u64;
    let mut hr_sum = NeumaierSum::default();
    let mut hr_count = 0u64;
    let mut n = 1u64;
    for &x in &xs {
        while next_prime.peek().is_some_and(|q| q.norm() <= x) {
            let q = next_prime.next().unwrap();
            pi += 1;
            if let ArtinClass::Class(c) = ctx.artin_class_unchecked(q) {
                if let Some(i) = classes.iter().position(|&l| l == c) {
                    pi_c[i] += 1;
                }
            }
            log_euler.add(-(-1.0 / q.norm() as f64).ln_1p());
        }
        while n <= x {
            let i = n as usize;
            ideals += profile.count[i] as u64;
            if n >= 10 && profile.count[i] > 0 {
                hr_sum.add(profile.omega[i] as f64 / (n as f64).ln().ln());
                hr_count += profile.count[i] as u64;
            }
            n += 1;
        }
        let xf = x as f64;
        rows.push(CountingRow {
            x,
            pi,
            li: if x >= 2 { li(xf) } else { 0.0 },
            pi_c: pi_c.clone(),
            ideals,
            ck_x: c_k * xf,
            hardy_ramanujan: if hr_count > 0 {
                hr_sum.total() / hr_count as f64
            } else {
                f64::NAN
            },
            mertens: log_euler.total().exp() / xf.ln(),
        });
    }
    Ok(CountingReport {
        field: field.to_string(),
        ext: ctx.ext().to_string(),
        classes,
        c_k,
        rows,
    })
}
