//! Smooth-ideal counts and the Dickman function.

use std::f64::consts::PI;
use std::sync::{OnceLock, RwLock};

use serde::Serialize;

use crate::error::{check_bound, usage, Error, Result};
use crate::field::{primes_up_to_norm, FieldSpec, PrimeIdeal};
use crate::ideal::{map_blocks, Direction, FactoredIdeal, IdealSieve, PrimeIdealSelector, SieveScratch};
use crate::numeric::adaptive_simpson;

/// Largest argument accepted by the Dickman evaluator.
pub const RHO_MAX_BETA: f64 = 64.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DickmanConfig {
    /// Chebyshev nodes per unit interval, minus one.
    pub degree: usize,
    /// Initial Simpson panels for each known-part integral.
    pub panels: usize,
    /// Quadrature tolerance relative to `ρ(k)` times the integration length.
    pub tol: f64,
}

impl Default for DickmanConfig {
    fn default() -> Self {
        DickmanConfig {
            degree: 32,
            panels: 2,
            tol: 1e-14,
        }
    }
}

/// Dickman's `ρ`, solved one unit interval at a time.
///
/// On `[k, k + 1]` the identity `β ρ(β) = ∫_{β−1}^{β} ρ(t) dt` splits into a
/// known part over `[β − 1, k]` and an unknown part over `[k, β]`. Writing
/// `ρ` on `[k, k + 1]` as its interpolant at Chebyshev points, the identity
/// at each node is a small linear system whose terms are all positive, so
/// relative accuracy survives the rapid decay of `ρ`. The known part is
/// integrated by adaptive Simpson over the previous interval's interpolant.
/// Intervals are appended on demand and never modified.
#[derive(Debug)]
pub struct DickmanRho {
    config: DickmanConfig,
    /// Chebyshev points of the second kind on `[−1, 1]`, ascending.
    nodes: Vec<f64>,
    weights: Vec<f64>,
    /// `integration[j][m] = ∫_{−1}^{nodes[j]} ℓ_m(x) dx` for the Lagrange
    /// basis `ℓ_m` on `nodes`.
    integration: Vec<Vec<f64>>,
    /// `pieces[i]` holds node values on `[i + 1, i + 2]`.
    pieces: RwLock<Vec<Vec<f64>>>,
}

impl Default for DickmanRho {
    fn default() -> Self {
        DickmanRho::with_config(DickmanConfig::default())
    }
}

/// Indefinite integrals from `−1` of the Lagrange basis at Chebyshev points
/// `x_j = −cos(jπ/n)`, via Chebyshev coefficients.
fn chebyshev_integration(n: usize) -> Vec<Vec<f64>> {
    let theta: Vec<f64> = (0..=n).map(|j| PI - j as f64 * PI / n as f64).collect();
    // coeff[i][m]: coefficient of T_i in ℓ_m
    let mut coeff = vec![vec![0.0; n + 1]; n + 1];
    for (i, row) in coeff.iter_mut().enumerate() {
        for (m, c) in row.iter_mut().enumerate() {
            let end = if m == 0 || m == n { 0.5 } else { 1.0 };
            let scale = if i == 0 || i == n {
                1.0 / n as f64
            } else {
                2.0 / n as f64
            };
            *c = scale * end * (i as f64 * theta[m]).cos();
        }
    }
    // ∫_{−1}^{x} T_i in terms of T_i(x) = cos(iθ)
    let t = |i: usize, th: f64| (i as f64 * th).cos();
    let antiderivative = |i: usize, th: f64| match i {
        0 => t(1, th),
        1 => t(2, th) / 4.0,
        _ => 0.5 * (t(i + 1, th) / (i + 1) as f64 - t(i - 1, th) / (i - 1) as f64),
    };
    let mut out = vec![vec![0.0; n + 1]; n + 1];
    for (j, row) in out.iter_mut().enumerate() {
        for (i, crow) in coeff.iter().enumerate() {
            let g = antiderivative(i, theta[j]) - antiderivative(i, PI);
            for (m, o) in row.iter_mut().enumerate() {
                *o += crow[m] * g;
            }
        }
    }
    out
}

/// Solves `a · x = b` by Gaussian elimination with partial pivoting.
fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            if factor != 0.0 {
                let (top, bottom) = a.split_at_mut(row);
                for (t, &p) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                    *t -= factor * p;
                }
                b[row] -= factor * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let tail: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - tail) / a[row][row];
    }
    x
}

impl DickmanRho {
    pub fn with_config(config: DickmanConfig) -> Self {
        let n = config.degree.max(2);
        let nodes = (0..=n).map(|j| -(j as f64 * PI / n as f64).cos()).collect();
        let weights = (0..=n)
            .map(|j| {
                let w = if j % 2 == 0 { 1.0 } else { -1.0 };
                if j == 0 || j == n {
                    w / 2.0
                } else {
                    w
                }
            })
            .collect();
        DickmanRho {
            config: DickmanConfig { degree: n, ..config },
            nodes,
            weights,
            integration: chebyshev_integration(n),
            pieces: RwLock::new(Vec::new()),
        }
    }

    pub fn config(&self) -> DickmanConfig {
        self.config
    }

    fn interpolate(&self, values: &[f64], x: f64) -> f64 {
        let mut num = 0.0;
        let mut den = 0.0;
        for ((&node, &w), &v) in self.nodes.iter().zip(&self.weights).zip(values) {
            let d = x - node;
            if d == 0.0 {
                return v;
            }
            let c = w / d;
            num += c * v;
            den += c;
        }
        num / den
    }

    /// `ρ` on `[k, k + 1]` given the node values on `[k − 1, k]` (`None`
    /// for `k = 1`, where `ρ = 1` on `[0, 1]`).
    fn solve_piece(&self, k: usize, previous: Option<&[f64]>) -> Vec<f64> {
        let base = k as f64;
        let lagged = |t: f64| match previous {
            Some(p) => self.interpolate(p, 2.0 * (t - (base - 1.0)) - 1.0),
            None => 1.0,
        };
        // ρ is decreasing, so ρ(k) bounds the integrand of the known part
        let scale = match previous {
            Some(p) => *p.last().unwrap(),
            None => 1.0,
        };
        let size = self.nodes.len();
        let mut matrix = vec![vec![0.0; size]; size];
        let mut rhs = vec![0.0; size];
        for (j, &x) in self.nodes.iter().enumerate() {
            let u = base + (x + 1.0) / 2.0;
            let lo = u - 1.0;
            rhs[j] = if lo < base {
                adaptive_simpson(
                    &lagged,
                    lo,
                    base,
                    self.config.tol * scale * (base - lo),
                    self.config.panels,
                )
            } else {
                0.0
            };
            for (m, a) in matrix[j].iter_mut().enumerate() {
                // dt = dx / 2 on [k, k + 1]
                *a = -0.5 * self.integration[j][m];
            }
            matrix[j][j] += u;
        }
        solve_dense(matrix, rhs)
    }

    fn ensure(&self, count: usize) {
        if self.pieces.read().unwrap().len() >= count {
            return;
        }
        let mut pieces = self.pieces.write().unwrap();
        while pieces.len() < count {
            let k = pieces.len() + 1;
            let piece = self.solve_piece(k, pieces.last().map(Vec::as_slice));
            pieces.push(piece);
        }
    }

    /// `ρ(β)`; `β > 64` reports [`Error::Underflow`].
    pub fn eval(&self, beta: f64) -> Result<f64> {
        if beta.is_nan() || beta < 0.0 {
            return Err(usage(format!("rho needs beta >= 0, got {beta}")));
        }
        if beta <= 1.0 {
            return Ok(1.0);
        }
        if beta > RHO_MAX_BETA {
            return Err(Error::Underflow(beta));
        }
        let k = (beta.floor() as usize).min(RHO_MAX_BETA as usize - 1);
        self.ensure(k);
        let pieces = self.pieces.read().unwrap();
        let x = 2.0 * (beta - k as f64) - 1.0;
        Ok(self.interpolate(&pieces[k - 1], x))
    }
}

/// `ρ(β)` from a shared, lazily extended evaluator.
pub fn dickman_rho(beta: f64) -> Result<f64> {
    static RHO: OnceLock<DickmanRho> = OnceLock::new();
    RHO.get_or_init(DickmanRho::default).eval(beta)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SmoothCountReport {
    pub x: u64,
    pub y: u64,
    /// `log X / log Y`.
    pub beta: f64,
    pub exact_count: u64,
    /// `X · ρ(β)`.
    pub rho_prediction: f64,
    pub ratio: f64,
    /// `log(Ψ / X) / β`.
    pub log_density_per_beta: f64,
}

impl SmoothCountReport {
    fn new(x: u64, y: u64, exact_count: u64) -> Result<Self> {
        let beta = if y >= 2 {
            (x as f64).ln() / (y as f64).ln()
        } else {
            f64::INFINITY
        };
        let rho = dickman_rho(beta)?;
        let rho_prediction = x as f64 * rho;
        Ok(SmoothCountReport {
            x,
            y,
            beta,
            exact_count,
            rho_prediction,
            ratio: exact_count as f64 / rho_prediction,
            log_density_per_beta: (exact_count as f64 / x as f64).ln() / beta,
        })
    }
}

fn check_xy(x: u64, y: u64) -> Result<()> {
    check_bound(x)?;
    if y < 2 || y > x {
        return Err(usage(format!("need 2 <= Y <= X, got X={x} Y={y}")));
    }
    Ok(())
}

/// Ideals of norm `<= budget` built from `norms[start..]`, `O_K` included.
fn count_smooth(norms: &[u64], start: usize, budget: u64) -> u64 {
    let mut total = 1;
    for (i, &n) in norms.iter().enumerate().skip(start) {
        if n > budget {
            break;
        }
        let mut b = budget / n;
        while b >= 1 {
            total += count_smooth(norms, i + 1, b);
            b /= n;
        }
    }
    total
}

/// `Ψ_K(X, Y)` counted directly over products of primes of norm `<= Y`.
pub fn psi_smooth(field: FieldSpec, x: u64, y: u64) -> Result<SmoothCountReport> {
    check_xy(x, y)?;
    let norms: Vec<u64> = primes_up_to_norm(field, y)?.iter().map(PrimeIdeal::norm).collect();
    SmoothCountReport::new(x, y, count_smooth(&norms, 0, x))
}

/// Cumulative counts `T[X] = Σ_{1 <= N(I) <= X} weight(I)` for every
/// `X <= x_max`.
fn cumulative(field: FieldSpec, x_max: u64, weight: impl Fn(&FactoredIdeal) -> u64 + Sync + Send) -> Result<Vec<u64>> {
    check_bound(x_max)?;
    let sieve = IdealSieve::new(field, x_max.max(2))?;
    let blocks = map_blocks(1, x_max, |lo, hi| {
        let mut scratch = SieveScratch::default();
        let mut out = Vec::with_capacity((hi - lo + 1) as usize);
        for n in lo..=hi {
            let mut s = 0;
            sieve.for_each_of_norm(n, &mut scratch, &mut |i| s += weight(i));
            out.push(s);
        }
        out
    });
    let mut table = Vec::with_capacity(x_max as usize + 1);
    table.push(0);
    let mut running = 0;
    for v in blocks.into_iter().flatten() {
        running += v;
        table.push(running);
    }
    Ok(table)
}

fn largest_norm(i: &FactoredIdeal) -> u64 {
    i.m_k(1, Direction::Largest).unwrap_or(1)
}

/// `Ψ_K(X, Y)` for every `X <= x_max`, indexed by `X`.
pub fn psi_smooth_table(field: FieldSpec, x_max: u64, y: u64) -> Result<Vec<u64>> {
    cumulative(field, x_max, |i| (largest_norm(i) <= y) as u64)
}

fn second_at_most(i: &FactoredIdeal, y: u64) -> bool {
    i.m_k(2, Direction::Largest).is_none_or(|m| m <= y)
}

/// `Ψ_{K,2}(X, Y)`: ideals of norm `<= X` with `M_2(I) <= Y`, an undefined
/// `M_2` counting as satisfied.
pub fn psi_second(field: FieldSpec, x: u64, y: u64) -> Result<u64> {
    Ok(*psi_second_table(field, x, y)?.last().unwrap())
}

pub fn psi_second_table(field: FieldSpec, x_max: u64, y: u64) -> Result<Vec<u64>> {
    cumulative(field, x_max, |i| second_at_most(i, y) as u64)
}

/// `Ψ_{K,2}(X, 𝔭)`: ideals `I ⊂ 𝔭` of norm `<= X` with `M_2(I) = N(𝔭)`.
pub fn psi_second_at_prime(field: FieldSpec, x: u64, prime: &PrimeIdeal) -> Result<u64> {
    if !field.owns(prime) {
        return Err(usage(format!("{prime} is not a prime of {field}")));
    }
    let target = *prime;
    let t = cumulative(field, x, move |i| {
        (i.m_k(2, Direction::Largest) == Some(target.norm()) && i.factors().iter().any(|(q, _)| *q == target)) as u64
    })?;
    Ok(*t.last().unwrap())
}

fn n1_qualifies(i: &FactoredIdeal) -> bool {
    match i.m_k(1, Direction::Largest) {
        Some(m) => m.checked_mul(m).is_some_and(|sq| i.norm().is_multiple_of(sq)),
        None => false,
    }
}

/// Ideals with `2 <= N(I) <= X` and `M_1(I)^2 | N(I)`.
pub fn n1_count(field: FieldSpec, x: u64) -> Result<u64> {
    Ok(*n1_table(field, x)?.last().unwrap())
}

pub fn n1_table(field: FieldSpec, x_max: u64) -> Result<Vec<u64>> {
    cumulative(field, x_max, |i| n1_qualifies(i) as u64)
}

fn q2_excess(i: &FactoredIdeal) -> u64 {
    match i.q_k(2, &PrimeIdealSelector::All) {
        Some(q) if q >= 2 => q as u64 - 1,
        _ => 0,
    }
}

/// `Σ_{N(I) <= X, Q^2(I) >= 2} (Q^2(I) − 1)`.
pub fn q2_excess_sum(field: FieldSpec, x: u64) -> Result<u64> {
    Ok(*q2_excess_table(field, x)?.last().unwrap())
}

pub fn q2_excess_table(field: FieldSpec, x_max: u64) -> Result<Vec<u64>> {
    cumulative(field, x_max, q2_excess)
}

/// Integer `Y` with `Y^β ≈ X`: the rounded root when it is within `1e−9`
/// relative, the floor otherwise.
pub fn smoothness_bound(x: u64, beta: f64) -> u64 {
    let y = (x as f64).powf(1.0 / beta);
    let r = y.round();
    if (y - r).abs() <= 1e-9 * y {
        r as u64
    } else {
        y.floor() as u64
    }
}

/// For each `β`, `Ψ_K(X, X^{1/β})` against `X · ρ(β)`.
pub fn hildebrand_compare(field: FieldSpec, x: u64, betas: &[f64]) -> Result<Vec<SmoothCountReport>> {
    betas
        .iter()
        .map(|&beta| {
            if beta.is_nan() || beta < 1.0 {
                return Err(usage(format!("beta must be >= 1, got {beta}")));
            }
            psi_smooth(field, x, smoothness_bound(x, beta).max(2))
        })
        .collect()
}
