//! Scalar fractional-calculus primitives: the Gamma function and the exact
//! action of the Riemann-Liouville integral and Caputo derivative on
//! monomials in t.

use crate::error::{Result, TfchError};

/// One monomial `coef * t^exponent` with a nonnegative real exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Monomial {
    pub coef: f64,
    pub exponent: f64,
}

impl Monomial {
    pub fn new(coef: f64, exponent: f64) -> Result<Self> {
        if !coef.is_finite() {
            return Err(TfchError::Domain(format!("monomial coef {coef} not finite")));
        }
        if !(exponent >= 0.0) {
            return Err(TfchError::Domain(format!(
                "monomial exponent {exponent} must be >= 0"
            )));
        }
        Ok(Self { coef, exponent })
    }
}

// Lanczos coefficients for g = 7, n = 9 (GSL values).
const LANCZOS_G: f64 = 7.0;
const LANCZOS_P: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function for positive real arguments.
///
/// Only positive arguments arise here (they are `k*alpha + 1` with
/// `k >= 0` and `0 < alpha <= 1`), so no reflection formula is needed.
pub fn gamma(z: f64) -> Result<f64> {
    if !z.is_finite() || z <= 0.0 {
        return Err(TfchError::Domain(format!("gamma requires z > 0, got {z}")));
    }
    if z < 0.5 {
        // Recurrence instead of reflection: Gamma(z) = Gamma(z+1)/z.
        return Ok(lanczos(z + 1.0) / z);
    }
    Ok(lanczos(z))
}

fn lanczos(z: f64) -> f64 {
    let x = z - 1.0;
    let mut acc = LANCZOS_P[0];
    for (i, p) in LANCZOS_P.iter().enumerate().skip(1) {
        acc += p / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    (2.0 * std::f64::consts::PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
}

/// Riemann-Liouville integral of a monomial:
/// `J^alpha t^tau = Gamma(tau+1)/Gamma(tau+1+alpha) t^(tau+alpha)`.
pub fn riemann_liouville_monomial(m: Monomial, alpha: f64) -> Result<Monomial> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(TfchError::Domain(format!(
            "fractional integral order must be > 0, got {alpha}"
        )));
    }
    let tau = m.exponent;
    let ratio = gamma(tau + 1.0)? / gamma(tau + 1.0 + alpha)?;
    Monomial::new(m.coef * ratio, tau + alpha)
}

/// Caputo derivative of a monomial for order `0 < alpha <= 1`.
///
/// A constant maps to `None`; otherwise
/// `D^alpha t^gamma = Gamma(gamma+1)/Gamma(gamma-alpha+1) t^(gamma-alpha)`.
/// Exponents strictly between 0 and alpha cannot arise from a valid series
/// and are rejected.
pub fn caputo_monomial(m: Monomial, alpha: f64) -> Result<Option<Monomial>> {
    if !alpha.is_finite() || alpha <= 0.0 || alpha > 1.0 {
        return Err(TfchError::Domain(format!(
            "Caputo order must be in (0, 1], got {alpha}"
        )));
    }
    let g = m.exponent;
    if g == 0.0 {
        return Ok(None);
    }
    if g < alpha {
        return Err(TfchError::Domain(format!(
            "exponent {g} in (0, alpha={alpha}) signals a corrupted series"
        )));
    }
    let ratio = gamma(g + 1.0)? / gamma(g - alpha + 1.0)?;
    Ok(Some(Monomial::new(m.coef * ratio, g - alpha)?))
}
