mod common;

use ideal_duality::density::{
    counting_report, density_series, density_series_with, mobius_sum_series, q_sum_series, theorem5_sums, Accumulation,
    Checkpoints, SeriesWeight, TargetSource,
};
use ideal_duality::field::residue_constant;
use ideal_duality::ideal::enumerate_ideals;
use ideal_duality::{ClassLabel, ExtensionContext, FieldSpec, PrimeIdealSelector};

fn ctx(field: &str, ext: &str) -> ExtensionContext {
    ExtensionContext::new(field.parse().unwrap(), ext.parse().unwrap()).unwrap()
}

fn li(x: f64) -> f64 {
    // Ramanujan's series for li(x), minus li(2).
    let l = x.ln();
    let gamma = 0.577_215_664_901_532_9;
    let mut sum = 0.0;
    let mut term = 1.0;
    let mut inner = 0.0;
    for n in 1..200 {
        term *= l / n as f64;
        if (n - 1) % 2 == 0 {
            inner += 1.0 / (2 * ((n - 1) / 2) + 1) as f64;
        }
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        sum += sign * term / 2f64.powi(n - 1) * inner;
    }
    gamma + l.ln() + x.sqrt() * sum - 1.045_163_780_117_493
}

#[test]
fn exact_and_float_paths_agree() {
    let c = ctx("q", "cyclo:4");
    let cps = Checkpoints::List(vec![1000, 10_000, 100_000]);
    for class in [1, 3] {
        let sel = PrimeIdealSelector::class(c, ClassLabel(class)).unwrap();
        for w in SeriesWeight::ALL {
            let exact = density_series(&c, &sel, w, 100_000, &cps).unwrap();
            let float = density_series_with(&c, &sel, w, 100_000, &cps, Accumulation::Float).unwrap();
            for (a, b) in exact.points.iter().zip(&float.points) {
                assert!(a.exact.is_some() && b.exact.is_none());
                let scale = a.value.abs().max(1.0);
                assert!(
                    (a.value - b.value).abs() <= 1e-12 * scale,
                    "{w:?} {} {} {}",
                    a.x,
                    a.value,
                    b.value
                );
            }
        }
    }
}

#[test]
fn mertens_matches_oracle() {
    let mu = common::mobius_table(20_000);
    let xs: Vec<u64> = vec![1, 2, 10, 100, 999, 20_000];
    let s = mobius_sum_series(FieldSpec::Rationals, 20_000, false, &Checkpoints::List(xs.clone())).unwrap();
    for (p, &x) in s.points.iter().zip(&xs) {
        let m: i64 = mu[1..=x as usize].iter().sum();
        assert_eq!(p.value, m as f64, "M({x})");
    }
}

#[test]
fn mobius_over_norm_matches_oracle_in_gaussian_field() {
    let list = common::ideals(Some(-1), 5000);
    let salient = |i: &common::Ideal| i.first().is_some_and(|&(q, _, _)| common::primes_at(i, q) == 1);
    let oracle: f64 = list
        .iter()
        .filter(|(n, i)| *n >= 2 && salient(i))
        .map(|(n, i)| common::mobius(i) as f64 / *n as f64)
        .sum();
    let c = ctx("quad:-1", "trivial");
    let sel = PrimeIdealSelector::class(c, ClassLabel::IDENTITY).unwrap();
    let s = density_series(
        &c,
        &sel,
        SeriesWeight::MobiusOverNorm,
        5000,
        &Checkpoints::List(vec![5000]),
    )
    .unwrap();
    assert!(
        (s.points[0].value - oracle).abs() < 1e-12,
        "{} {oracle}",
        s.points[0].value
    );
    assert_eq!(s.points[0].target, -1.0);
}

#[test]
fn targets_follow_weight_sign() {
    let c = ctx("q", "cyclo:4");
    let sel = PrimeIdealSelector::class(c, ClassLabel(3)).unwrap();
    let cps = Checkpoints::List(vec![1000]);
    let t = |w| density_series(&c, &sel, w, 1000, &cps).unwrap().points[0].target;
    assert_eq!(t(SeriesWeight::MobiusOverNorm), -0.5);
    assert_eq!(t(SeriesWeight::MobiusOmegaMinus1OverNorm), 0.5);
    assert_eq!(t(SeriesWeight::MobiusOmegaOverNorm), 0.0);
}

#[test]
fn custom_selector_target_is_estimated() {
    let c = ctx("quad:-1", "trivial");
    let sel = PrimeIdealSelector::from_spec("normmod:1:3", c, None).unwrap();
    let s = density_series(&c, &sel, SeriesWeight::MobiusOverNorm, 20_000, &Checkpoints::default()).unwrap();
    assert_eq!(s.target_source, TargetSource::Estimated);
    let t = s.points[0].target;
    assert!(t < 0.0 && t > -1.0, "{t}");
}

#[test]
fn q_sums_minus_prime_powers_over_rationals() {
    // Over ℚ, Q¹(n) = 1 always; Q²(n) = 1 unless n is a prime power.
    let x = 50_000;
    let c = ctx("q", "trivial");
    let cps = Checkpoints::List(vec![x]);
    let q1 = q_sum_series(&c, &PrimeIdealSelector::All, 1, x, &cps).unwrap().points[0].sum;
    let q2 = q_sum_series(&c, &PrimeIdealSelector::All, 2, x, &cps).unwrap().points[0].sum;
    let prime_powers = (2..=x)
        .filter(|&n| {
            let p = (2..=n).find(|d| n % d == 0).unwrap();
            let mut m = n;
            while m % p == 0 {
                m /= p;
            }
            m == 1
        })
        .count() as u64;
    assert_eq!(q1, x - 1);
    assert_eq!(q1 - q2, prime_powers);
}

#[test]
fn q_sums_match_oracle() {
    for (spec, f) in common::FIELDS {
        let c = ctx(spec, "trivial");
        let x = 4000;
        let list = common::ideals(f, x);
        let sum = |k: usize| -> u64 {
            list.iter()
                .filter(|(n, _)| *n >= 2)
                .map(|(_, i)| {
                    common::levels(i)
                        .get(k - 1)
                        .map_or(0, |&m| common::primes_at(i, m) as u64)
                })
                .sum()
        };
        for k in 1..=2 {
            let got = q_sum_series(&c, &PrimeIdealSelector::All, k, x, &Checkpoints::List(vec![x])).unwrap();
            assert_eq!(got.points[0].sum, sum(k), "{spec} k={k}");
        }
    }
}

#[test]
fn theorem5_sums_match_direct_enumeration() {
    let c = ctx("quad:5", "trivial");
    let sel = PrimeIdealSelector::class(c, ClassLabel::IDENTITY).unwrap();
    let x = 3000;
    let pts = theorem5_sums(&c, &sel, x, &Checkpoints::List(vec![x])).unwrap();
    let (mut s0, mut s1) = (0i64, 0i64);
    for i in enumerate_ideals(c.field(), x, false).unwrap() {
        if i.is_salient() {
            let mu = i.mobius() as i64;
            s0 += mu;
            s1 += mu * i.omega() as i64;
        }
    }
    assert_eq!(pts[0].mobius_sum, s0);
    assert_eq!(pts[0].mobius_omega_sum, s1);
}

#[test]
fn prime_counts_match_residue_oracle() {
    let c = ctx("q", "cyclo:4");
    let r = counting_report(&c, 100, &Checkpoints::List(vec![100])).unwrap();
    let row = &r.rows[0];
    let primes: Vec<u64> = (2..=100).filter(|&p| common::is_prime(p)).collect();
    assert_eq!(row.pi, primes.len() as u64);
    for (label, count) in r.classes.iter().zip(&row.pi_c) {
        let expected = primes.iter().filter(|&&p| p % 4 == label.0 as u64).count() as u64;
        assert_eq!(*count, expected, "class {label}");
    }
    assert_eq!(row.pi_c, vec![11, 13]);
}

#[test]
fn gaussian_prime_count_and_ideal_total() {
    let c = ctx("quad:-1", "trivial");
    let r = counting_report(&c, 1000, &Checkpoints::List(vec![25, 1000])).unwrap();
    assert_eq!(r.rows[0].pi, 8);
    let oracle = common::prime_ideals(Some(-1), 1000).len() as u64;
    assert_eq!(r.rows[1].pi, oracle);
    assert_eq!(r.rows[1].ideals, common::ideals(Some(-1), 1000).len() as u64);
}

#[test]
fn logarithmic_integral_reference() {
    let c = ctx("q", "trivial");
    let r = counting_report(&c, 1_000_000, &Checkpoints::List(vec![100, 1_000_000])).unwrap();
    for row in &r.rows {
        let expected = li(row.x as f64);
        assert!((row.li - expected).abs() < 1e-6 * expected, "{} {}", row.li, expected);
    }
    assert_eq!(r.rows[1].pi, 78_498);
}

#[test]
fn prime_ideal_theorem_at_desk_scale() {
    for (field, ext) in [
        ("q", "cyclo:4"),
        ("quad:-1", "trivial"),
        ("quad:5", "relquad:-1"),
        ("quad:-5", "trivial"),
    ] {
        let c = ctx(field, ext);
        let r = counting_report(&c, 1_000_000, &Checkpoints::List(vec![1_000_000])).unwrap();
        let row = &r.rows[0];
        let x = row.x as f64;
        assert!((row.pi as f64 - row.li).abs() / (x / x.ln()) <= 0.2, "{field}+{ext}");
        for (label, pc) in r.classes.iter().zip(&row.pi_c) {
            let share = c.class_density(*label).unwrap();
            let expected = *share.numer() as f64 / *share.denom() as f64;
            assert!(
                (*pc as f64 / row.pi as f64 - expected).abs() < 0.1,
                "{field}+{ext} {label}"
            );
        }
        assert!((0.5..=1.5).contains(&row.hardy_ramanujan), "{}", row.hardy_ramanujan);
    }
}

#[test]
fn ideal_count_slope_matches_residue() {
    for d in [-1, 5, -5] {
        let f = FieldSpec::quadratic(d).unwrap();
        let c = ExtensionContext::trivial(f);
        let r = counting_report(&c, 1_000_000, &Checkpoints::List(vec![1_000_000])).unwrap();
        let slope = r.rows[0].ideals as f64 / 1e6;
        let ck = residue_constant(f).value;
        assert!((slope / ck - 1.0).abs() < 0.01, "d={d} {slope} {ck}");
    }
}

#[test]
fn mobius_mean_tends_to_zero() {
    let f = FieldSpec::quadratic(-1).unwrap();
    let s = mobius_sum_series(f, 1_000_000, true, &Checkpoints::default()).unwrap();
    assert!(s.points.last().unwrap().value.abs() < 0.05);
}
