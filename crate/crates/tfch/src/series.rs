//! Truncated fractional-power series `sum_k c_k(x) * t^(k*alpha)`.
//!
//! The exponent ladder is indexed by the integer k, never by the real
//! value `k*alpha`, so no floating-point exponent matching is needed.

use crate::dd::{self, Dd};
use crate::error::{Result, TfchError};
use crate::gamma::gamma;
use crate::grid::{CoefField, Grid1D};

/// Default maximum retained index k in `t^(k*alpha)`.
pub const DEFAULT_POWER_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub struct FracSeries {
    alpha: f64,
    grid: Grid1D,
    terms: Vec<CoefField>,
    truncated: bool,
}

impl FracSeries {
    /// Series with the given term list; trailing zero terms are trimmed.
    pub fn new(alpha: f64, grid: Grid1D, terms: Vec<CoefField>) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(TfchError::Domain(format!(
                "series alpha must be in (0, 1], got {alpha}"
            )));
        }
        for t in &terms {
            if t.grid() != grid {
                return Err(TfchError::Structural("series term on a different grid".into()));
            }
        }
        let mut s = Self { alpha, grid, terms, truncated: false };
        s.trim();
        Ok(s)
    }

    pub fn zero(alpha: f64, grid: Grid1D) -> Result<Self> {
        Self::new(alpha, grid, Vec::new())
    }

    /// One-term series holding only the t^0 coefficient.
    pub fn from_field(alpha: f64, field: CoefField) -> Result<Self> {
        Self::new(alpha, field.grid(), vec![field])
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn grid(&self) -> Grid1D {
        self.grid
    }

    pub fn terms(&self) -> &[CoefField] {
        &self.terms
    }

    pub fn term(&self, k: usize) -> Option<&CoefField> {
        self.terms.get(k)
    }

    /// True if a product or integral dropped terms above the power cap.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.iter().map(CoefField::max_abs).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn trim(&mut self) {
        while self.terms.last().is_some_and(CoefField::is_zero) {
            self.terms.pop();
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.alpha != other.alpha {
            return Err(TfchError::Structural(format!(
                "alpha mismatch: {} vs {}",
                self.alpha, other.alpha
            )));
        }
        if self.grid != other.grid {
            return Err(TfchError::Structural("grid mismatch between series".into()));
        }
        Ok(())
    }

    /// Termwise sum; K = max of the operand lengths.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let n = self.terms.len().max(other.terms.len());
        let zero = CoefField::zeros(self.grid);
        let mut terms = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.terms.get(k).unwrap_or(&zero);
            let b = other.terms.get(k).unwrap_or(&zero);
            terms.push(a.zip_with(b, Dd::add)?);
        }
        let mut s = Self::new(self.alpha, self.grid, terms)?;
        s.truncated = self.truncated || other.truncated;
        Ok(s)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = Self {
            alpha: self.alpha,
            grid: self.grid,
            terms: self.terms.iter().map(|t| t.scale(s)).collect(),
            truncated: self.truncated,
        };
        out.trim();
        out
    }

    /// Cauchy product in k, pointwise in x. Terms with index above `cap`
    /// are dropped and the truncation flag is raised.
    pub fn mul(&self, other: &Self, cap: usize) -> Result<Self> {
        self.check_compatible(other)?;
        if self.terms.is_empty() || other.terms.is_empty() {
            let mut z = Self::zero(self.alpha, self.grid)?;
            z.truncated = self.truncated || other.truncated;
            return Ok(z);
        }
        let full = self.terms.len() + other.terms.len() - 2;
        let kept = full.min(cap);
        let n = self.grid.n_points();
        let mut terms = Vec::with_capacity(kept + 1);
        for m in 0..=kept {
            let mut acc = vec![dd::ZERO; n];
            for k in 0..=m {
                let (Some(a), Some(b)) = (self.terms.get(k), other.terms.get(m - k)) else {
                    continue;
                };
                for (dst, (x, y)) in acc
                    .iter_mut()
                    .zip(a.dd_values().iter().zip(b.dd_values()))
                {
                    *dst = dst.add(x.mul(*y));
                }
            }
            terms.push(CoefField::new_dd(self.grid, acc)?);
        }
        let mut s = Self::new(self.alpha, self.grid, terms)?;
        s.truncated = self.truncated || other.truncated || full > cap;
        Ok(s)
    }

    /// Riemann-Liouville integral J^alpha: term k maps to term k+1 scaled
    /// by `Gamma(k*alpha+1)/Gamma((k+1)*alpha+1)`.
    pub fn frac_integral(&self, cap: usize) -> Result<Self> {
        let mut terms = vec![CoefField::zeros(self.grid)];
        let mut dropped = false;
        for (k, t) in self.terms.iter().enumerate() {
            if k + 1 > cap {
                dropped = true;
                break;
            }
            let ratio = gamma(k as f64 * self.alpha + 1.0)?
                / gamma((k + 1) as f64 * self.alpha + 1.0)?;
            terms.push(t.scale(ratio));
        }
        let mut s = Self::new(self.alpha, self.grid, terms)?;
        s.truncated = self.truncated || dropped;
        Ok(s)
    }

    /// Caputo derivative D^alpha: term 0 is dropped, term k >= 1 maps to
    /// term k-1 scaled by `Gamma(k*alpha+1)/Gamma((k-1)*alpha+1)`.
    pub fn caputo(&self) -> Result<Self> {
        let mut terms = Vec::with_capacity(self.terms.len().saturating_sub(1));
        for (k, t) in self.terms.iter().enumerate().skip(1) {
            let ratio = gamma(k as f64 * self.alpha + 1.0)?
                / gamma((k - 1) as f64 * self.alpha + 1.0)?;
            terms.push(t.scale(ratio));
        }
        let mut s = Self::new(self.alpha, self.grid, terms)?;
        s.truncated = self.truncated;
        Ok(s)
    }

    /// Termwise spatial derivative of the given order.
    pub fn spatial_derivative(&self, order: usize, accuracy: usize) -> Result<Self> {
        let terms = self
            .terms
            .iter()
            .map(|t| t.derivative(order, accuracy))
            .collect::<Result<Vec<_>>>()?;
        let mut s = Self::new(self.alpha, self.grid, terms)?;
        s.truncated = self.truncated;
        Ok(s)
    }

    /// Pointwise evaluation `sum_k c_k(x) t^(k*alpha)` in ascending k at
    /// double-double precision.
    pub fn eval(&self, t: f64) -> Result<CoefField> {
        if !(t >= 0.0) {
            return Err(TfchError::Domain(format!(
                "series evaluation needs t >= 0, got {t}"
            )));
        }
        let n = self.grid.n_points();
        let mut sum = vec![dd::ZERO; n];
        for (k, term) in self.terms.iter().enumerate() {
            let tk = if k == 0 {
                dd::ONE
            } else if self.alpha == 1.0 {
                Dd::from_f64(t).powi(k as u32)
            } else {
                Dd::from_f64(t.powf(k as f64 * self.alpha))
            };
            for (dst, c) in sum.iter_mut().zip(term.dd_values()) {
                *dst = dst.add(c.mul(tk));
            }
        }
        CoefField::new_dd(self.grid, sum)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> Grid1D {
        Grid1D::new(-2.0, 2.0, 41).unwrap()
    }

    fn constant_series(alpha: f64, terms: &[f64]) -> FracSeries {
        let fields = terms
            .iter()
            .map(|&c| CoefField::constant(grid(), c))
            .collect();
        FracSeries::new(alpha, grid(), fields).unwrap()
    }

    fn assert_terms(s: &FracSeries, expect: &[f64], tol: f64) {
        assert_eq!(s.terms().len(), expect.len(), "term count");
        for (k, &e) in expect.iter().enumerate() {
            for v in s.terms()[k].values_f64() {
                assert!((v - e).abs() <= tol, "term {k}: {v} vs {e}");
            }
        }
    }

    #[test]
    fn add_examples() {
        let a = constant_series(0.5, &[1.0]);
        let b = constant_series(0.5, &[0.0, 2.0]);
        let z = FracSeries::zero(0.5, grid()).unwrap();
        assert_eq!(a.add(&z).unwrap(), a);
        assert_terms(&a.add(&b).unwrap(), &[1.0, 2.0], 0.0);
        assert!(a.add(&a.scale(-1.0)).unwrap().is_zero());
    }

    #[test]
    fn add_rejects_mismatch() {
        let a = constant_series(0.5, &[1.0]);
        let b = constant_series(0.7, &[1.0]);
        assert!(a.add(&b).is_err());
    }

    #[test]
    fn mul_examples() {
        let a = constant_series(0.5, &[3.0, -1.0]);
        let unit = constant_series(0.5, &[1.0]);
        assert_eq!(a.mul(&unit, 12).unwrap(), a);
        // (t^alpha)^2 = t^(2 alpha)
        let t = constant_series(0.5, &[0.0, 1.0]);
        assert_terms(&t.mul(&t, 12).unwrap(), &[0.0, 0.0, 1.0], 0.0);
        // cube of the tanh kink sample at a known node
        let kink = FracSeries::from_field(
            0.5,
            CoefField::sample(grid(), |x| crate::dd::tanh(x.div(crate::dd::SQRT2))).unwrap(),
        )
        .unwrap();
        let cube = kink.mul(&kink, 12).unwrap().mul(&kink, 12).unwrap();
        let i = (0..41).find(|&i| (grid().node(i) - 1.0).abs() < 1e-12).unwrap();
        let expect = 0.608_859_365_013_913_8f64.powi(3);
        assert!((cube.terms()[0].value(i) - expect).abs() < 1e-13);
    }

    #[test]
    fn mul_truncation_flag() {
        let t = constant_series(0.5, &[0.0, 1.0]);
        let sq = t.mul(&t, 1).unwrap();
        assert!(sq.truncated());
        assert!(sq.is_zero());
        assert!(!t.mul(&t, 2).unwrap().truncated());
    }

    #[test]
    fn frac_integral_examples() {
        // J^alpha of a constant: [0, c/Gamma(alpha+1)]
        let alpha = 0.5;
        let s = constant_series(alpha, &[2.0]);
        let j = s.frac_integral(12).unwrap();
        let expect = 2.0 / gamma(alpha + 1.0).unwrap();
        assert_terms(&j, &[0.0, expect], 1e-15);
        // classical: alpha = 1, J(c t) = c t^2 / 2
        let s = constant_series(1.0, &[0.0, 3.0]);
        assert_terms(&s.frac_integral(12).unwrap(), &[0.0, 0.0, 1.5], 1e-15);
        // J^alpha twice on [1] equals the monomial composition
        let s = constant_series(0.3, &[1.0]);
        let twice = s.frac_integral(12).unwrap().frac_integral(12).unwrap();
        let m = crate::gamma::riemann_liouville_monomial(
            crate::gamma::riemann_liouville_monomial(
                crate::gamma::Monomial::new(1.0, 0.0).unwrap(),
                0.3,
            )
            .unwrap(),
            0.3,
        )
        .unwrap();
        assert_terms(&twice, &[0.0, 0.0, m.coef], 1e-14);
    }

    #[test]
    fn caputo_examples() {
        let s = constant_series(0.7, &[4.0]);
        assert!(s.caputo().unwrap().is_zero());
        let s = constant_series(1.0, &[0.0, 2.5]);
        assert_terms(&s.caputo().unwrap(), &[2.5], 1e-15);
    }

    #[test]
    fn caputo_inverts_integral() {
        for &alpha in &[0.3, 0.5, 1.0] {
            let s = constant_series(alpha, &[1.5, -0.5, 0.25]);
            let back = s.frac_integral(12).unwrap().caputo().unwrap();
            assert_eq!(back.terms().len(), s.terms().len());
            for (a, b) in back.terms().iter().zip(s.terms()) {
                for (x, y) in a.values_f64().into_iter().zip(b.values_f64()) {
                    assert!((x - y).abs() / y.abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn integral_of_caputo_drops_term_zero() {
        let alpha = 0.6;
        let s = constant_series(alpha, &[1.5, -0.5, 0.25]);
        let round = s.caputo().unwrap().frac_integral(12).unwrap();
        let minus0 = constant_series(alpha, &[0.0, -0.5, 0.25]);
        for (a, b) in round.terms().iter().zip(minus0.terms()) {
            for (x, y) in a.values_f64().into_iter().zip(b.values_f64()) {
                assert!((x - y).abs() <= 1e-12 * y.abs().max(1.0));
            }
        }
    }

    #[test]
    fn eval_examples() {
        let s = constant_series(0.5, &[1.0, 1.0]);
        // t = 0 collapses to term 0
        assert_eq!(s.eval(0.0).unwrap(), CoefField::constant(grid(), 1.0));
        // alpha = 0.5, t = 4: 1 + 2 = 3
        let v = s.eval(4.0).unwrap();
        for x in v.values_f64() {
            assert!((x - 3.0).abs() < 1e-14);
        }
        assert!(s.eval(-0.1).is_err());
    }

    #[test]
    fn eval_additivity() {
        let a = constant_series(0.5, &[1.0, -2.0, 0.5]);
        let b = constant_series(0.5, &[0.25, 1.0]);
        let lhs = a.add(&b).unwrap().eval(0.37).unwrap();
        let rhs = a
            .eval(0.37)
            .unwrap()
            .zip_with(&b.eval(0.37).unwrap(), |x, y| x + y)
            .unwrap();
        for (x, y) in lhs.values_f64().into_iter().zip(rhs.values_f64()) {
            assert!((x - y).abs() / y.abs().max(1e-30) < 1e-12);
        }
    }

    #[test]
    fn ring_laws() {
        let a = constant_series(0.5, &[1.0, 2.0]);
        let b = constant_series(0.5, &[-0.5, 0.25, 1.0]);
        let c = constant_series(0.5, &[3.0, 0.0, -1.0]);
        let cap = 12;
        let ab = a.mul(&b, cap).unwrap();
        let ba = b.mul(&a, cap).unwrap();
        assert_eq!(ab, ba);
        let abc1 = ab.mul(&c, cap).unwrap();
        let abc2 = a.mul(&b.mul(&c, cap).unwrap(), cap).unwrap();
        for (x, y) in abc1.terms().iter().zip(abc2.terms()) {
            for (u, v) in x.values_f64().into_iter().zip(y.values_f64()) {
                assert!((u - v).abs() / v.abs().max(1e-30) < 1e-12);
            }
        }
        let distl = a.mul(&b.add(&c).unwrap(), cap).unwrap();
        let distr = a.mul(&b, cap).unwrap().add(&a.mul(&c, cap).unwrap()).unwrap();
        for (x, y) in distl.terms().iter().zip(distr.terms()) {
            for (u, v) in x.values_f64().into_iter().zip(y.values_f64()) {
                assert!((u - v).abs() / v.abs().max(1e-30) < 1e-12);
            }
        }
    }
}
