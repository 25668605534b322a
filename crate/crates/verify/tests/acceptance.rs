//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::process::ExitCode;
use std::time::Instant;

use ideal_duality::density::{counting_report, density_series, q_sum_series, Checkpoints, SeriesWeight};
use ideal_duality::duality::{batch_verify, classical_sweep, mobius_falling_sum, mobius_power_sum, PrimeFunction};
use ideal_duality::ideal::enumerate_ideals;
use ideal_duality::report::{write_series_csv, write_smooth_csv};
use ideal_duality::smooth::{
    dickman_rho, hildebrand_compare, n1_table, psi_second_table, psi_smooth_table, q2_excess_table, DickmanConfig,
    DickmanRho,
};
use ideal_duality::{ExtensionContext, FieldSpec, PrimeIdealSelector};
use statrs::function::gamma::gamma;

const BACKENDS: [(&str, &str); 7] = [
    ("q", "trivial"),
    ("q", "cyclo:4"),
    ("q", "cyclo:8"),
    ("quad:-1", "trivial"),
    ("quad:5", "trivial"),
    ("quad:-5", "trivial"),
    ("quad:5", "relquad:-1"),
];

fn ctx(field: &str, ext: &str) -> ExtensionContext {
    ExtensionContext::new(field.parse().unwrap(), ext.parse().unwrap()).unwrap()
}

type Check = fn() -> Outcome;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn duality_output() -> String {
    let mut out = String::new();
    for (field, ext) in BACKENDS {
        let c = ctx(field, ext);
        for class in c.class_ids() {
            let sel = PrimeIdealSelector::class(c, class).unwrap();
            let s = batch_verify(&c, 3000, 3, &sel).unwrap();
            out += &serde_json::to_string(&s).unwrap();
            out.push('\n');
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (mut checked, mut violations, mut k1_skips) = (0, 0, 0);
    for (field, ext) in BACKENDS {
        let c = ctx(field, ext);
        for class in c.class_ids() {
            let sel = PrimeIdealSelector::class(c, class).unwrap();
            let s = batch_verify(&c, 3000, 3, &sel).unwrap();
            checked += s.checked;
            violations += s.violations.len();
            let s1 = batch_verify(&c, 3000, 1, &sel).unwrap();
            k1_skips += s1.skipped_hypothesis;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        violations == 0 && k1_skips == 0 && secs < 300.0,
        format!("{checked} checks, {violations} violations, {k1_skips} k=1 hypothesis skips, {secs:.2}s"),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let (mut checked, mut violations) = (0, 0);
    for seed in [1, 2, 3] {
        let f = PrimeFunction::random(seed, 100_000);
        let s = classical_sweep(100_000, 4, &f).unwrap();
        checked += s.checked;
        violations += s.violations.len();
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        violations == 0 && checked == 3 * 100_000 * 4 * 4 && secs < 120.0,
        format!("{checked} checks over 3 seeds, {violations} violations, {secs:.2}s"),
    )
}

/// Stirling numbers of the second kind `S(u, w)`.
fn stirling2(u: u32, w: u32) -> i64 {
    let mut row = vec![1i64];
    for n in 1..=u as usize {
        let mut next = vec![0i64; n + 1];
        for k in 1..=n {
            next[k] = k as i64 * row.get(k).copied().unwrap_or(0) + row[k - 1];
        }
        row = next;
    }
    row.get(w as usize).copied().unwrap_or(0)
}

fn criterion_3() -> Outcome {
    // Over the squarefree divisors of w primes, Σ μ ω^u = (−1)^w w! S(u, w)
    // and Σ μ ω(ω−1)...(ω−j+1) = (−1)^w w! [w = j].
    let mut checked = 0u64;
    let mut failures = 0u64;
    for (field, ext) in BACKENDS {
        let f = ctx(field, ext).field();
        for i in enumerate_ideals(f, 10_000, false).unwrap() {
            let w = i.omega();
            let fact: i64 = (1..=w as i64).product();
            let sign = if w % 2 == 0 { 1 } else { -1 };
            for u in 0..=4 {
                checked += 1;
                let expected = if u == 0 { 0 } else { sign * fact * stirling2(u, w) };
                failures += (mobius_power_sum(&i, u).unwrap() != expected) as u64;
            }
            for j in 1..=4 {
                checked += 1;
                let expected = if w == j { sign * fact } else { 0 };
                failures += (mobius_falling_sum(&i, j).unwrap() != expected) as u64;
            }
        }
    }
    outcome(failures == 0, format!("{checked} sums, {failures} mismatches"))
}

fn criterion_4() -> Outcome {
    let x = 10_000;
    let mut tables = 0;
    let mut mismatched = Vec::new();
    for (spec, f) in common::FIELDS {
        let field: FieldSpec = spec.parse().unwrap();
        let list = common::ideals(f, x);
        for y in [2, 5, 31, 100, 1000, 10_000] {
            tables += 2;
            if psi_smooth_table(field, x, y).unwrap() != common::psi(&list, x, y) {
                mismatched.push(format!("{spec} psi Y={y}"));
            }
            if psi_second_table(field, x, y).unwrap() != common::psi_second(&list, x, y) {
                mismatched.push(format!("{spec} psi2 Y={y}"));
            }
        }
        tables += 2;
        if n1_table(field, x).unwrap() != common::n1(&list, x) {
            mismatched.push(format!("{spec} n1"));
        }
        if q2_excess_table(field, x).unwrap() != common::q2_excess(&list, x) {
            mismatched.push(format!("{spec} q2_excess"));
        }
    }
    outcome(
        mismatched.is_empty(),
        format!("{tables} tables of every X <= {x}, mismatches: {mismatched:?}"),
    )
}

fn criterion_5() -> Outcome {
    let e2 = (dickman_rho(2.0).unwrap() - (1.0 - 2f64.ln())).abs();
    let e3 = (dickman_rho(3.0).unwrap() - 0.048_608_4).abs();
    let norton = (2..=16).all(|i| {
        let beta = i as f64 * 0.5;
        dickman_rho(beta).unwrap() <= 1.0 / gamma(beta + 1.0)
    });
    let base = DickmanRho::default();
    let config = base.config();
    let refined = DickmanRho::with_config(DickmanConfig {
        panels: 2 * config.panels,
        ..config
    });
    let half_step = (2..=40)
        .map(|i| {
            let beta = i as f64 * 0.5;
            (base.eval(beta).unwrap() - refined.eval(beta).unwrap()).abs()
        })
        .fold(0.0, f64::max);
    outcome(
        e2 <= 1e-8 && e3 <= 1e-6 && norton && half_step <= 1e-10,
        format!("|rho(2) err| {e2:.1e}, |rho(3) err| {e3:.1e}, Norton {norton}, half-step {half_step:.1e}"),
    )
}

fn hildebrand_rows() -> Vec<ideal_duality::smooth::SmoothCountReport> {
    hildebrand_compare(FieldSpec::Rationals, 1_000_000, &[1.5, 2.0, 2.5, 3.0]).unwrap()
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let rows = hildebrand_rows();
    let secs = start.elapsed().as_secs_f64();
    let ratios: Vec<String> = rows
        .iter()
        .map(|r| format!("beta {:.2}: {:.4}", r.beta, r.ratio))
        .collect();
    let pass = rows.iter().all(|r| (0.85..=1.15).contains(&r.ratio)) && secs < 180.0;
    outcome(pass, format!("{}, {secs:.2}s", ratios.join(", ")))
}

fn criterion_7() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    let c = ctx("q", "cyclo:4");
    let x = 1_000_000;
    for class in c.class_ids() {
        let sel = PrimeIdealSelector::class(c, class).unwrap();
        for k in 1..=2 {
            let p = q_sum_series(&c, &sel, k, x, &Checkpoints::List(vec![x]))
                .unwrap()
                .points[0];
            let slope = p.sum as f64 / x as f64;
            pass &= (slope / 0.5 - 1.0).abs() <= 0.1;
            parts.push(format!("class {class} k={k}: {slope:.4}"));
        }
    }
    let g = ctx("quad:-1", "trivial");
    let x = 100_000;
    for k in 1..=2 {
        let p = q_sum_series(&g, &PrimeIdealSelector::All, k, x, &Checkpoints::List(vec![x]))
            .unwrap()
            .points[0];
        let slope = p.sum as f64 / x as f64;
        pass &= (slope / std::f64::consts::FRAC_PI_4 - 1.0).abs() <= 0.1;
        parts.push(format!("Q(i) k={k}: {slope:.4}"));
    }
    outcome(pass, format!("targets 0.5 and pi/4 = 0.7854; {}", parts.join(", ")))
}

fn density_runs() -> Vec<ideal_duality::density::PartialSumSeries> {
    let c = ctx("q", "cyclo:4");
    let cps = Checkpoints::Geometric { start: 1000, steps: 4 };
    let mut out = Vec::new();
    for class in c.class_ids() {
        let sel = PrimeIdealSelector::class(c, class).unwrap();
        for w in [SeriesWeight::MobiusOverNorm, SeriesWeight::MobiusOmegaMinus1OverNorm] {
            out.push(density_series(&c, &sel, w, 1_000_000, &cps).unwrap());
        }
    }
    out
}

fn criterion_8() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for s in density_runs() {
        let first = s.points.first().unwrap();
        let last = s.points.last().unwrap();
        let target = if s.weight == SeriesWeight::MobiusOverNorm {
            -0.5
        } else {
            0.5
        };
        pass &= first.x == 1000 && last.x == 1_000_000;
        pass &= last.target == target && last.abs_error < first.abs_error && last.abs_error < 0.25;
        parts.push(format!(
            "{} {} target {:+}: {:.4} -> {:.4}",
            s.selector,
            s.weight.short_name(),
            last.target,
            first.abs_error,
            last.abs_error
        ));
    }
    outcome(pass, parts.join("; "))
}

fn criterion_9() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    let g = counting_report(&ctx("quad:-1", "trivial"), 25, &Checkpoints::List(vec![25])).unwrap();
    pass &= g.rows[0].pi == 8;
    parts.push(format!("pi(Q(i);25) = {}", g.rows[0].pi));

    let c = ctx("q", "cyclo:4");
    let r = counting_report(&c, 100, &Checkpoints::List(vec![100])).unwrap();
    let oracle: Vec<u64> = r
        .classes
        .iter()
        .map(|l| {
            (3..=100)
                .filter(|&p| common::is_prime(p) && p % 4 == l.0 as u64)
                .count() as u64
        })
        .collect();
    pass &= r.rows[0].pi_c == vec![11, 13] && r.rows[0].pi_c == oracle;
    parts.push(format!("pi_C(100) = {:?} (oracle {:?})", r.rows[0].pi_c, oracle));

    let x = 1_000_000;
    for (field, ext) in BACKENDS {
        let rep = counting_report(&ctx(field, ext), x, &Checkpoints::List(vec![x])).unwrap();
        let row = &rep.rows[0];
        let dev = (row.pi as f64 - row.li).abs() / (x as f64 / (x as f64).ln());
        pass &= dev <= 0.2;
        parts.push(format!("{field}+{ext} {dev:.4}"));
    }
    outcome(pass, parts.join(", "))
}

/// Outputs of criteria 1, 6 and 8 as they would be written to disk.
fn determinism_outputs() -> String {
    let mut out = duality_output().into_bytes();
    write_smooth_csv(&mut out, &hildebrand_rows()).unwrap();
    for s in density_runs() {
        write_series_csv(&mut out, &s).unwrap();
    }
    String::from_utf8(out).unwrap()
}

fn criterion_10() -> Outcome {
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(determinism_outputs)
    };
    let one = run(1);
    let eight = run(8);
    let again = run(8);
    outcome(
        one == eight && eight == again,
        format!(
            "{} bytes, 1 vs 8 threads identical: {}, repeat identical: {}",
            one.len(),
            one == eight,
            eight == again
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 10] = [
        ("duality exactness", criterion_1),
        ("classical identities", criterion_2),
        ("Mobius orthogonality", criterion_3),
        ("oracle equivalence", criterion_4),
        ("Dickman rho", criterion_5),
        ("Hildebrand check", criterion_6),
        ("Q-sum slopes", criterion_7),
        ("density convergence", criterion_8),
        ("prime counting", criterion_9),
        ("determinism", criterion_10),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        failed += !o.pass as usize;
        println!(
            "{} criterion {:>2} {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            n + 1,
            o.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
