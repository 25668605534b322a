//! Floating-point helpers: compensated summation, adaptive Simpson
//! quadrature, the logarithmic integral and fixed-significance formatting.

/// Neumaier's variant of Kahan compensated summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Adaptive Simpson quadrature of `f` over `[a, b]`.
///
/// The interval is first cut into `panels` equal pieces; each piece is then
/// refined until the Richardson estimate `|S2 − S1| / 15` is below its share
/// of `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, panels: usize) -> f64 {
    if a == b {
        return 0.0;
    }
    let panels = panels.max(1);
    let h = (b - a) / panels as f64;
    let mut total = NeumaierSum::default();
    for i in 0..panels {
        let lo = a + h * i as f64;
        let hi = if i + 1 == panels { b } else { lo + h };
        let (flo, fhi) = (f(lo), f(hi));
        let mid = 0.5 * (lo + hi);
        let fmid = f(mid);
        let whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
        total.add(simpson_step(f, lo, hi, flo, fmid, fhi, whole, tol / panels as f64, 48));
    }
    total.total()
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}

/// Offset logarithmic integral `Li(x) = ∫_2^x dt / log t` (0 for `x <= 2`).
pub fn li(x: f64) -> f64 {
    if x <= 2.0 {
        return 0.0;
    }
    // Integrate in u = log t: ∫ e^u / u du, split at doublings of u.
    let f = |u: f64| u.exp() / u;
    let (mut lo, hi) = (2f64.ln(), x.ln());
    let mut total = NeumaierSum::default();
    while lo < hi {
        let next = (lo * 2.0).min(hi);
        let scale = f(next) * (next - lo);
        total.add(adaptive_simpson(&f, lo, next, scale * 1e-13, 8));
        lo = next;
    }
    total.total()
}

/// Formats `x` with `digits` significant digits; fixed notation for
/// magnitudes in `[1e-5, 1e12)`, scientific otherwise.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (_, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    if (-5..12).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        format!("{:.*}", decimals, x)
    } else {
        sci
    }
}
