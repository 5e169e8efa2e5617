//! q-Homotopy Analysis Method: deformation components driven by the
//! convolution-form residual, with auxiliary parameter h and embedding
//! denominator n.

use crate::error::{Result, TfchError};
use crate::model::{initial_condition, qham_residual, ProblemSpec};
use crate::series::{FracSeries, DEFAULT_POWER_CAP};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QhamConfig {
    /// Number of deformation components beyond u_0.
    pub orders: usize,
    /// Auxiliary convergence-control parameter, nonzero.
    pub h: f64,
    /// Embedding denominator, n >= 1.
    pub n: u32,
    pub power_cap: usize,
    pub stencil_order: usize,
}

impl Default for QhamConfig {
    fn default() -> Self {
        Self { orders: 3, h: -1.0, n: 1, power_cap: DEFAULT_POWER_CAP, stencil_order: 8 }
    }
}

impl QhamConfig {
    pub fn validate(&self) -> Result<()> {
        if self.orders < 1 {
            return Err(TfchError::Config("orders must be >= 1".into()));
        }
        if !self.h.is_finite() || self.h == 0.0 {
            return Err(TfchError::Config(format!("h must be finite and nonzero, got {}", self.h)));
        }
        if self.n < 1 {
            return Err(TfchError::Config("n must be >= 1".into()));
        }
        if self.power_cap < 1 {
            return Err(TfchError::Config("power_cap must be >= 1".into()));
        }
        if self.stencil_order < 2 || self.stencil_order % 2 != 0 {
            return Err(TfchError::Config(format!(
                "stencil_order must be a positive even number, got {}",
                self.stencil_order
            )));
        }
        Ok(())
    }
}

/// chi_r = 0 for r <= 1, else n.
pub fn chi_factor(r: usize, n: u32) -> Result<f64> {
    if r < 1 {
        return Err(TfchError::Config(format!("chi is defined for r >= 1, got {r}")));
    }
    Ok(if r == 1 { 0.0 } else { n as f64 })
}

/// Deformation components u_0 .. u_orders of
/// u_r = chi_r u_{r-1} + h J^alpha( R_r(u_0, ..., u_{r-1}) ).
pub fn qham_components(p: &ProblemSpec, cfg: &QhamConfig) -> Result<Vec<FracSeries>> {
    cfg.validate()?;
    let mut components = vec![initial_condition(p)?];
    for r in 1..=cfg.orders {
        let residual = qham_residual(&components, r, p, cfg.power_cap, cfg.stencil_order)?;
        let chi = chi_factor(r, cfg.n)?;
        let next = components[r - 1]
            .scale(chi)
            .add(&residual.frac_integral(cfg.power_cap)?.scale(cfg.h))?;
        for (k, term) in next.terms().iter().enumerate() {
            if let Some((i, _)) = term
                .dd_values()
                .iter()
                .enumerate()
                .find(|(_, v)| !v.is_finite())
            {
                return Err(TfchError::Numerical {
                    context: format!("q-HAM component {r}, power {k}"),
                    index: i,
                });
            }
        }
        components.push(next);
    }
    Ok(components)
}

/// Partial sum U_m = u_0 + sum_{j=1}^{m} u_j (1/n)^j.
pub fn qham_partial_sum(components: &[FracSeries], m: usize, n: u32) -> Result<FracSeries> {
    let Some(first) = components.first() else {
        return Err(TfchError::Config("no components to sum".into()));
    };
    if m >= components.len() {
        return Err(TfchError::Config(format!(
            "partial sum order {m} exceeds {} available components",
            components.len() - 1
        )));
    }
    if n < 1 {
        return Err(TfchError::Config("n must be >= 1".into()));
    }
    let inv_n = 1.0 / n as f64;
    let mut acc = first.clone();
    let mut weight = 1.0;
    for u in &components[1..=m] {
        weight *= inv_n;
        acc = acc.add(&u.scale(weight))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{default_grid, Equation, InitialCondition, ProblemSpec};
    use crate::nim::{nim_components, NimConfig};

    fn kink_ch4(alpha: f64) -> ProblemSpec {
        let ic = InitialCondition::TanhKink;
        ProblemSpec::new(Equation::Ch4, alpha, 1.0, ic, default_grid(ic)).unwrap()
    }

    #[test]
    fn chi_values() {
        assert!(chi_factor(0, 1).is_err());
        assert_eq!(chi_factor(1, 5).unwrap(), 0.0);
        assert_eq!(chi_factor(2, 5).unwrap(), 5.0);
        assert_eq!(chi_factor(7, 2).unwrap(), 2.0);
    }

    #[test]
    fn config_validation() {
        assert!(QhamConfig { h: 0.0, ..Default::default() }.validate().is_err());
        assert!(QhamConfig { n: 0, ..Default::default() }.validate().is_err());
        assert!(QhamConfig { orders: 0, ..Default::default() }.validate().is_err());
        assert!(QhamConfig::default().validate().is_ok());
    }

    #[test]
    fn first_component_is_negated_h_times_nim() {
        // u_1^qham = -h u_1^nim for any equation/alpha.
        for eq in [Equation::Ch4, Equation::Ch6] {
            let ic = InitialCondition::TanhKink;
            let p = ProblemSpec::new(eq, 0.6, 1.0, ic, default_grid(ic)).unwrap();
            let h = -0.8;
            let q = qham_components(&p, &QhamConfig { orders: 1, h, ..Default::default() }).unwrap();
            let nim = nim_components(&p, &NimConfig { iterations: 1, ..Default::default() }).unwrap();
            let diff = q[1].add(&nim[1].scale(h)).unwrap();
            let max = p
                .grid
                .interior_window(1.0)
                .map(|i| {
                    diff.terms()
                        .iter()
                        .map(|t| t.value(i).abs())
                        .fold(0.0f64, f64::max)
                })
                .fold(0.0f64, f64::max);
            assert!(max < 1e-10, "{eq:?}: {max}");
        }
    }

    #[test]
    fn second_component_carries_n_plus_h_factor() {
        // The t^alpha part of u_2 equals (n + h) times the t^alpha part of u_1.
        let p = kink_ch4(0.7);
        for (n, h) in [(1u32, -1.0), (2, -0.5), (3, -2.0)] {
            let cfg = QhamConfig { orders: 2, h, n, ..Default::default() };
            let comps = qham_components(&p, &cfg).unwrap();
            let expect = comps[1].scale(n as f64 + h);
            let zero = crate::grid::CoefField::zeros(p.grid);
            let got_t1 = comps[2].term(1).unwrap_or(&zero);
            let want_t1 = expect.term(1).unwrap_or(&zero);
            let max = p
                .grid
                .interior_window(1.0)
                .map(|i| (got_t1.value(i) - want_t1.value(i)).abs())
                .fold(0.0f64, f64::max);
            assert!(max < 1e-9, "n={n} h={h}: {max}");
        }
    }

    #[test]
    fn nim_duality_at_unit_parameters() {
        // n = 1, h = -1: U_1 partial sum matches NIM S_1.
        let p = kink_ch4(0.5);
        let q = qham_components(&p, &QhamConfig { orders: 1, ..Default::default() }).unwrap();
        let s = qham_partial_sum(&q, 1, 1).unwrap();
        let nim = nim_components(&p, &NimConfig { iterations: 1, ..Default::default() }).unwrap();
        let ns = crate::nim::nim_partial_sum(&nim, 1).unwrap();
        let diff = s.sub(&ns).unwrap();
        let max = p
            .grid
            .interior_window(1.0)
            .map(|i| {
                diff.terms()
                    .iter()
                    .map(|t| t.value(i).abs())
                    .fold(0.0f64, f64::max)
            })
            .fold(0.0f64, f64::max);
        assert!(max < 1e-10, "max {max}");
    }

    #[test]
    fn partial_sum_weights() {
        let p = kink_ch4(1.0);
        let cfg = QhamConfig { orders: 2, h: -1.0, n: 4, ..Default::default() };
        let comps = qham_components(&p, &cfg).unwrap();
        let s = qham_partial_sum(&comps, 2, 4).unwrap();
        let manual = comps[0]
            .add(&comps[1].scale(0.25))
            .unwrap()
            .add(&comps[2].scale(0.0625))
            .unwrap();
        let diff = s.sub(&manual).unwrap();
        assert!(diff.max_abs() < 1e-14);
        assert!(qham_partial_sum(&comps, 3, 4).is_err());
        assert!(qham_partial_sum(&comps, 1, 0).is_err());
    }
}
