//! WebAssembly front end for the static page in `www/`. Each export returns
//! a JSON string; the plain-Rust versions in [`api`] carry the logic and the
//! tests.

use wasm_bindgen::prelude::*;

pub mod api {
    use ideal_duality::density::{density_series_with, Accumulation, Checkpoints, SeriesWeight};
    use ideal_duality::duality::verify_duality;
    use ideal_duality::ideal::{IdealSieve, SieveScratch};
    use ideal_duality::smooth::dickman_rho;
    use ideal_duality::{ClassLabel, ExtensionContext, PrimeIdealSelector};
    use serde::Serialize;

    /// Browser sweeps stay below this norm bound.
    pub const DEMO_MAX: u64 = 1_000_000;

    fn err(e: impl ToString) -> String {
        e.to_string()
    }

    fn context(field: &str, ext: &str) -> Result<ExtensionContext, String> {
        ExtensionContext::new(field.parse().map_err(err)?, ext.parse().map_err(err)?).map_err(err)
    }

    fn class(label: &str) -> Result<Option<ClassLabel>, String> {
        let label = label.trim();
        if label.is_empty() {
            Ok(None)
        } else {
            label.parse().map(Some).map_err(err)
        }
    }

    #[derive(Serialize)]
    struct Curve {
        beta: Vec<f64>,
        rho: Vec<f64>,
    }

    /// `ρ` sampled at `0, step, 2·step, ..., beta_max`.
    pub fn dickman_curve(beta_max: f64, step: f64) -> Result<String, String> {
        if step.is_nan() || step <= 0.0 || !(0.0..=60.0).contains(&beta_max) || beta_max / step > 10_000.0 {
            return Err("need step > 0, 0 <= beta_max <= 60 and at most 10000 samples".into());
        }
        let n = (beta_max / step + 1e-9).floor() as usize;
        let beta: Vec<f64> = (0..=n).map(|i| i as f64 * step).collect();
        let rho = beta
            .iter()
            .map(|&b| dickman_rho(b))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        serde_json::to_string(&Curve { beta, rho }).map_err(err)
    }

    /// Density partial-sum series at 8 checkpoints per decade from 100, in
    /// floating point only.
    pub fn density(field: &str, ext: &str, class_label: &str, weight: &str, xmax: u64) -> Result<String, String> {
        if !(100..=DEMO_MAX).contains(&xmax) {
            return Err(format!("xmax must lie in [100, {DEMO_MAX}]"));
        }
        let ctx = context(field, ext)?;
        let sel = PrimeIdealSelector::class(ctx, class(class_label)?.unwrap_or(ClassLabel::IDENTITY)).map_err(err)?;
        let weight: SeriesWeight = weight.parse().map_err(err)?;
        let cps = Checkpoints::Geometric { start: 100, steps: 8 };
        let series = density_series_with(&ctx, &sel, weight, xmax, &cps, Accumulation::Float).map_err(err)?;
        serde_json::to_string(&series).map_err(err)
    }

    #[derive(Serialize)]
    struct Order {
        k: usize,
        lhs: i64,
        rhs: Option<i64>,
        hypothesis_met: bool,
        holds: bool,
    }

    #[derive(Serialize)]
    struct IdealRow {
        ideal: String,
        mobius: i8,
        omega: u32,
        salient: bool,
        orders: Vec<Order>,
    }

    /// Every ideal of norm `n` with both sides of the duality identity for
    /// `k <= kmax` under the selector spec.
    pub fn ideals_of_norm(
        field: &str,
        ext: &str,
        selector: &str,
        class_label: &str,
        n: u64,
        kmax: usize,
    ) -> Result<String, String> {
        if !(1..=DEMO_MAX).contains(&n) || !(1..=6).contains(&kmax) {
            return Err(format!("need 1 <= n <= {DEMO_MAX} and 1 <= kmax <= 6"));
        }
        let ctx = context(field, ext)?;
        let sel = PrimeIdealSelector::from_spec(selector, ctx, class(class_label)?).map_err(err)?;
        let sieve = IdealSieve::new(ctx.field(), n).map_err(err)?;
        let mut ideals = Vec::new();
        sieve.for_each_of_norm(n, &mut SieveScratch::default(), &mut |i| ideals.push(i.clone()));
        let mut rows = Vec::with_capacity(ideals.len());
        for ideal in ideals {
            let mut orders = Vec::new();
            for k in 1..=kmax {
                let r = verify_duality(&ideal, k, &sel).map_err(err)?;
                orders.push(Order {
                    k,
                    lhs: r.lhs,
                    rhs: r.rhs,
                    hypothesis_met: r.hypothesis_met,
                    holds: r.holds,
                });
            }
            rows.push(IdealRow {
                ideal: ideal.to_string(),
                mobius: ideal.mobius(),
                omega: ideal.omega(),
                salient: ideal.is_salient(),
                orders,
            });
        }
        serde_json::to_string(&rows).map_err(err)
    }
}

fn js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn dickman_curve(beta_max: f64, step: f64) -> Result<String, JsValue> {
    js(api::dickman_curve(beta_max, step))
}

#[wasm_bindgen]
pub fn density_series(field: &str, ext: &str, class: &str, weight: &str, xmax: u32) -> Result<String, JsValue> {
    js(api::density(field, ext, class, weight, xmax as u64))
}

#[wasm_bindgen]
pub fn ideals_of_norm(
    field: &str,
    ext: &str,
    selector: &str,
    class: &str,
    n: u32,
    kmax: u32,
) -> Result<String, JsValue> {
    js(api::ideals_of_norm(
        field,
        ext,
        selector,
        class,
        n as u64,
        kmax as usize,
    ))
}
