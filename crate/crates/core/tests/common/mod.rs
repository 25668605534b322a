//! Brute-force oracles built only on std: splitting from root counts of the
//! minimal polynomial, ideals as nested prime-power products.

#![allow(dead_code)]

/// `None` for ℚ, `Some(d)` for ℚ(√d).
pub type Field = Option<i64>;

pub const FIELDS: [(&str, Field); 4] = [
    ("q", None),
    ("quad:-1", Some(-1)),
    ("quad:5", Some(5)),
    ("quad:-5", Some(-5)),
];

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| !n.is_multiple_of(k))
}

/// Roots of the minimal polynomial of the ring generator mod `p`.
fn root_count(d: i64, p: u64) -> usize {
    let p_i = p as i128;
    let (b, c) = if d.rem_euclid(4) == 1 {
        // x² − x − (d − 1)/4
        (-1i128, -((d as i128 - 1) / 4))
    } else {
        (0i128, -(d as i128))
    };
    (0..p_i).filter(|&x| (x * x + b * x + c).rem_euclid(p_i) == 0).count()
}

/// Prime ideals as `(norm, id)` with norm `<= x`, sorted by norm.
pub fn prime_ideals(field: Field, x: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for p in 2..=x {
        if !is_prime(p) {
            continue;
        }
        match field {
            None => out.push((p, 2 * p)),
            Some(d) => match root_count(d, p) {
                2 => {
                    out.push((p, 2 * p));
                    out.push((p, 2 * p + 1));
                }
                1 => out.push((p, 2 * p)),
                _ => {
                    if p * p <= x {
                        out.push((p * p, 2 * p));
                    }
                }
            },
        }
    }
    out.sort();
    out
}

/// An ideal as `(prime norm, prime id, exponent)`, sorted by norm.
pub type Ideal = Vec<(u64, u64, u32)>;

/// Every ideal of norm `<= x`, unit included, by nested prime powers.
pub fn ideals(field: Field, x: u64) -> Vec<(u64, Ideal)> {
    let primes = prime_ideals(field, x);
    let mut out = vec![(1, Vec::new())];
    let mut stack: Vec<(usize, u64, Ideal)> = vec![(0, 1, Vec::new())];
    while let Some((start, norm, ideal)) = stack.pop() {
        for (i, &(q, id)) in primes.iter().enumerate().skip(start) {
            if norm * q > x {
                break;
            }
            let mut n = norm;
            let mut e = 0;
            while n * q <= x {
                n *= q;
                e += 1;
                let mut next = ideal.clone();
                next.push((q, id, e));
                out.push((n, next.clone()));
                stack.push((i + 1, n, next));
            }
        }
    }
    out.sort();
    out
}

pub fn mobius(i: &Ideal) -> i64 {
    if i.iter().any(|&(_, _, e)| e > 1) {
        0
    } else if i.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Distinct prime norms, largest first.
pub fn levels(i: &Ideal) -> Vec<u64> {
    let mut v: Vec<u64> = i.iter().map(|&(q, _, _)| q).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v.dedup();
    v
}

pub fn primes_at(i: &Ideal, norm: u64) -> usize {
    i.iter().filter(|&&(q, _, _)| q == norm).count()
}

/// `t[X] = #{ideals I : N(I) <= X, pred(I)}` for `X <= x`.
pub fn cumulative(list: &[(u64, Ideal)], x: u64, weight: impl Fn(u64, &Ideal) -> u64) -> Vec<u64> {
    let mut per = vec![0u64; x as usize + 1];
    for (n, i) in list {
        per[*n as usize] += weight(*n, i);
    }
    let mut run = 0;
    per.iter()
        .map(|v| {
            run += v;
            run
        })
        .collect()
}

pub fn psi(list: &[(u64, Ideal)], x: u64, y: u64) -> Vec<u64> {
    cumulative(list, x, |_, i| levels(i).first().is_none_or(|&m| m <= y) as u64)
}

pub fn psi_second(list: &[(u64, Ideal)], x: u64, y: u64) -> Vec<u64> {
    cumulative(list, x, |_, i| levels(i).get(1).is_none_or(|&m| m <= y) as u64)
}

pub fn n1(list: &[(u64, Ideal)], x: u64) -> Vec<u64> {
    cumulative(list, x, |n, i| {
        levels(i).first().is_some_and(|&m| n % (m * m) == 0) as u64
    })
}

pub fn q2_excess(list: &[(u64, Ideal)], x: u64) -> Vec<u64> {
    cumulative(list, x, |_, i| match levels(i).get(1) {
        Some(&m) => primes_at(i, m).saturating_sub(1) as u64,
        None => 0,
    })
}

/// Squarefree subsets of the distinct primes of `i`, as index masks.
pub fn squarefree_divisors(i: &Ideal) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0u64..1 << i.len()).map(move |m| (0..i.len()).filter(|b| m >> b & 1 == 1).collect())
}

pub fn mobius_table(n: usize) -> Vec<i64> {
    let mut mu = vec![1i64; n + 1];
    mu[0] = 0;
    for p in 2..=n {
        if !is_prime(p as u64) {
            continue;
        }
        for m in (p..=n).step_by(p) {
            mu[m] = -mu[m];
        }
        let sq = p * p;
        for m in (sq..=n).step_by(sq) {
            mu[m] = 0;
        }
    }
    mu
}
