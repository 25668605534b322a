use super::arith::kronecker;
use super::FieldSpec;
use crate::numeric::NeumaierSum;

/// Residue of `ζ_K` at `s = 1` with an absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidueConstant {
    pub value: f64,
    pub error_bound: f64,
}

const TARGET_ERROR: f64 = 1e-7;
const MAX_TERMS: u64 = 400_000_000;

/// `c_K`. For a quadratic field `ζ_K = ζ · L(s, χ_D)`, so the residue is
/// `L(1, χ_D)`, summed directly up to a multiple `N` of the period `|D|`.
/// With `S` the running character sum, Abel summation bounds the tail by
/// `max|S| / (N + 1)`.
pub fn residue_constant(field: FieldSpec) -> ResidueConstant {
    let FieldSpec::Quadratic { .. } = field else {
        return ResidueConstant {
            value: 1.0,
            error_bound: 0.0,
        };
    };
    let disc = field.discriminant();
    let period = disc.unsigned_abs();
    let chi: Vec<i8> = (0..period).map(|n| kronecker(disc, n)).collect();

    let mut running = 0i64;
    let mut max_partial = 0i64;
    for &c in &chi[1..] {
        running += c as i64;
        max_partial = max_partial.max(running.abs());
    }
    let periods = ((max_partial as f64 / TARGET_ERROR) / period as f64).ceil() as u64;
    let terms = (periods.max(1) * period).min(MAX_TERMS / period * period);

    let mut sum = NeumaierSum::default();
    for n in 1..=terms {
        let c = chi[(n % period) as usize];
        if c != 0 {
            sum.add(c as f64 / n as f64);
        }
    }
    let tail = max_partial as f64 / (terms as f64 + 1.0);
    let rounding = terms as f64 * f64::EPSILON * 1e-1;
    ResidueConstant {
        value: sum.total(),
        error_bound: tail + rounding,
    }
}
