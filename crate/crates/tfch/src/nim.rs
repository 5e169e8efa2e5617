//! New Iterative Method: builds solution components u_0, u_1, ... where each
//! step integrates the linear part of the latest component and the telescoped
//! nonlinear difference of successive partial sums.

use crate::error::{Result, TfchError};
use crate::model::{initial_condition, linear_rhs, nonlinear_rhs, ProblemSpec};
use crate::series::{FracSeries, DEFAULT_POWER_CAP};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NimConfig {
    /// Number of correction components beyond u_0.
    pub iterations: usize,
    pub power_cap: usize,
    pub stencil_order: usize,
}

impl Default for NimConfig {
    fn default() -> Self {
        Self { iterations: 2, power_cap: DEFAULT_POWER_CAP, stencil_order: 8 }
    }
}

impl NimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.iterations < 1 {
            return Err(TfchError::Config("iterations must be >= 1".into()));
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

fn check_finite(label: &str, m: usize, s: &FracSeries) -> Result<()> {
    for (k, term) in s.terms().iter().enumerate() {
        if let Some((i, _)) = term
            .dd_values()
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_finite())
        {
            return Err(TfchError::Numerical {
                context: format!("{label} component {m}, power {k}"),
                index: i,
            });
        }
    }
    Ok(())
}

/// Components u_0 .. u_iterations of the NIM recurrence
/// u_0 = f,  u_{m+1} = L(u_m) + { N(S_m) - N(S_{m-1}) },
/// with S_m the m-th partial sum and L, N the J^alpha-wrapped linear and
/// nonlinear operators.
pub fn nim_components(p: &ProblemSpec, cfg: &NimConfig) -> Result<Vec<FracSeries>> {
    cfg.validate()?;
    let cap = cfg.power_cap;
    let acc = cfg.stencil_order;

    let l_op = |u: &FracSeries| -> Result<FracSeries> {
        linear_rhs(p, u, acc)?.frac_integral(cap)
    };
    let n_op = |u: &FracSeries| -> Result<FracSeries> {
        nonlinear_rhs(p, u, cap, acc)?.frac_integral(cap)
    };

    let u0 = initial_condition(p)?;
    let mut components = vec![u0.clone()];
    let mut partial = u0;
    // N(S_{m-1}) carried forward so each step does one nonlinear evaluation.
    let mut n_prev: Option<FracSeries> = None;

    for m in 1..=cfg.iterations {
        let n_cur = n_op(&partial)?;
        let nonlinear = match &n_prev {
            Some(prev) => n_cur.sub(prev)?,
            None => n_cur.clone(),
        };
        let next = l_op(components.last().unwrap())?.add(&nonlinear)?;
        check_finite("NIM", m, &next)?;
        partial = partial.add(&next)?;
        n_prev = Some(n_cur);
        components.push(next);
    }
    Ok(components)
}

/// Partial sum S_m = u_0 + ... + u_m of precomputed components.
pub fn nim_partial_sum(components: &[FracSeries], m: usize) -> Result<FracSeries> {
    let Some(first) = components.first() else {
        return Err(TfchError::Config("no components to sum".into()));
    };
    if m >= components.len() {
        return Err(TfchError::Config(format!(
            "partial sum order {m} exceeds {} available components",
            components.len() - 1
        )));
    }
    let mut acc = first.clone();
    for u in &components[1..=m] {
        acc = acc.add(u)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::gamma;
    use crate::model::{default_grid, Equation, InitialCondition, ProblemSpec};

    const S2: f64 = std::f64::consts::SQRT_2;

    fn kink_ch4(alpha: f64, mu: f64) -> ProblemSpec {
        let ic = InitialCondition::TanhKink;
        ProblemSpec::new(Equation::Ch4, alpha, mu, ic, default_grid(ic)).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(NimConfig { iterations: 0, ..Default::default() }.validate().is_err());
        assert!(NimConfig { stencil_order: 3, ..Default::default() }.validate().is_err());
        assert!(NimConfig::default().validate().is_ok());
    }

    #[test]
    fn component_power_structure() {
        // u_m starts at power m: terms below it vanish.
        let p = kink_ch4(0.7, 1.0);
        let comps = nim_components(&p, &NimConfig::default()).unwrap();
        assert_eq!(comps.len(), 3);
        for (m, u) in comps.iter().enumerate() {
            for k in 0..m.min(u.terms().len()) {
                assert!(
                    u.terms()[k].max_abs() < 1e-9,
                    "component {m} power {k}: {}",
                    u.terms()[k].max_abs()
                );
            }
        }
    }

    #[test]
    fn first_component_matches_closed_form() {
        // u_1 = mu/sqrt2 sech^2(x/sqrt2) t^alpha / Gamma(alpha+1)
        for &alpha in &[1.0, 0.5] {
            let p = kink_ch4(alpha, 1.0);
            let comps = nim_components(&p, &NimConfig { iterations: 1, ..Default::default() })
                .unwrap();
            let u1 = &comps[1];
            let ga = gamma(alpha + 1.0).unwrap();
            for i in p.grid.interior_window(1.0) {
                let x = p.grid.node(i);
                let sech2 = 1.0 / (x / S2).cosh().powi(2);
                let expect = p.mu / S2 * sech2 / ga;
                assert!(
                    (u1.terms()[1].value(i) - expect).abs() < 1e-7,
                    "alpha {alpha} node {i}"
                );
            }
        }
    }

    #[test]
    fn mu_zero_kink_is_stationary() {
        let p = kink_ch4(1.0, 0.0);
        let comps = nim_components(&p, &NimConfig::default()).unwrap();
        let s2 = nim_partial_sum(&comps, 2).unwrap();
        let max = p
            .grid
            .interior_window(1.0)
            .map(|i| {
                s2.terms()[1..]
                    .iter()
                    .map(|t| t.value(i).abs())
                    .fold(0.0f64, f64::max)
            })
            .fold(0.0f64, f64::max);
        assert!(max < 1e-5, "time-dependent residue {max}");
    }

    #[test]
    fn partial_sum_bounds() {
        let p = kink_ch4(1.0, 1.0);
        let comps = nim_components(&p, &NimConfig { iterations: 1, ..Default::default() }).unwrap();
        assert!(nim_partial_sum(&comps, 2).is_err());
        assert!(nim_partial_sum(&[], 0).is_err());
        let s0 = nim_partial_sum(&comps, 0).unwrap();
        assert_eq!(s0.terms().len(), 1);
    }

    #[test]
    fn classical_limit_matches_exact_rate() {
        // alpha = 1: S_2 at small t should track tanh((x+t)/sqrt2).
        let p = kink_ch4(1.0, 1.0);
        let comps = nim_components(&p, &NimConfig::default()).unwrap();
        let s2 = nim_partial_sum(&comps, 2).unwrap();
        let t = 0.01;
        let u = s2.eval(t).unwrap();
        for i in p.grid.interior_window(1.0) {
            let x = p.grid.node(i);
            let exact = ((x + t) / S2).tanh();
            assert!((u.value(i) - exact).abs() < 1e-5, "node {i}");
        }
    }
}
