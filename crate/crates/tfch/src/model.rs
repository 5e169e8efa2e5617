//! The two Cahn-Hilliard right-hand sides in expanded form, split into
//! linear and nonlinear parts, plus the convolution-form residual used by
//! the q-HAM deformation recurrence.

use crate::dd::{self, Dd};
use crate::error::{Result, TfchError};
use crate::grid::{CoefField, Grid1D};
use crate::series::FracSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Equation {
    /// Fourth order: D_t^a u = mu u_x + 6 u u_x^2 + 3 u^2 u_xx - u_xx - u_xxxx
    Ch4,
    /// Sixth order: D_t^a u = mu u u_x - 18 u u_xx^2 - 36 u_x^2 u_xx
    ///              - 24 u u_x u_xxx - 3 u^2 u_xxxx + u_xxxx + u_xxxxxx
    Ch6,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialCondition {
    /// u(x,0) = tanh(x / sqrt(2))
    TanhKink,
    /// u(x,0) = exp(lambda x)
    ExpLambda(f64),
}

pub const DEFAULT_LAMBDA: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemSpec {
    pub equation: Equation,
    pub alpha: f64,
    pub mu: f64,
    pub ic: InitialCondition,
    pub grid: Grid1D,
}

impl ProblemSpec {
    pub fn new(
        equation: Equation,
        alpha: f64,
        mu: f64,
        ic: InitialCondition,
        grid: Grid1D,
    ) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(TfchError::Config(format!("alpha must be in (0, 1], got {alpha}")));
        }
        if !(mu >= 0.0) {
            return Err(TfchError::Config(format!("mu must be >= 0, got {mu}")));
        }
        if let InitialCondition::ExpLambda(l) = ic {
            if !l.is_finite() {
                return Err(TfchError::Config(format!("lambda must be finite, got {l}")));
            }
        }
        Ok(Self { equation, alpha, mu, ic, grid })
    }
}

/// Default spatial window for each initial-condition family.
pub fn default_grid(ic: InitialCondition) -> Grid1D {
    match ic {
        InitialCondition::TanhKink => Grid1D::new(-8.0, 8.0, 801).unwrap(),
        InitialCondition::ExpLambda(_) => Grid1D::new(-4.0, 4.0, 801).unwrap(),
    }
}

pub fn ic_scalar(ic: InitialCondition) -> impl Fn(Dd) -> Dd {
    move |x| match ic {
        InitialCondition::TanhKink => dd::tanh(x.div(dd::SQRT2)),
        InitialCondition::ExpLambda(l) => dd::exp(x.mul_f64(l)),
    }
}

/// One-term series holding the sampled initial condition.
pub fn initial_condition(p: &ProblemSpec) -> Result<FracSeries> {
    let field = CoefField::sample(p.grid, ic_scalar(p.ic))?;
    FracSeries::from_field(p.alpha, field)
}

/// CH4 linear integrand `mu u_x - u_xx - u_xxxx` (the solver applies J^a).
pub fn ch4_linear_rhs(u: &FracSeries, mu: f64, accuracy: usize) -> Result<FracSeries> {
    let ux = u.spatial_derivative(1, accuracy)?;
    let uxx = u.spatial_derivative(2, accuracy)?;
    let uxxxx = u.spatial_derivative(4, accuracy)?;
    ux.scale(mu).sub(&uxx)?.sub(&uxxxx)
}

/// CH4 nonlinear integrand `6 u u_x^2 + 3 u^2 u_xx`.
pub fn ch4_nonlinear_rhs(u: &FracSeries, cap: usize, accuracy: usize) -> Result<FracSeries> {
    let ux = u.spatial_derivative(1, accuracy)?;
    let uxx = u.spatial_derivative(2, accuracy)?;
    let a = u.mul(&ux.mul(&ux, cap)?, cap)?.scale(6.0);
    let b = u.mul(&u, cap)?.mul(&uxx, cap)?.scale(3.0);
    a.add(&b)
}

/// CH6 linear integrand `u_xxxx + u_xxxxxx`.
pub fn ch6_linear_rhs(u: &FracSeries, accuracy: usize) -> Result<FracSeries> {
    let uxxxx = u.spatial_derivative(4, accuracy)?;
    let uxxxxxx = u.spatial_derivative(6, accuracy)?;
    uxxxx.add(&uxxxxxx)
}

/// CH6 nonlinear integrand
/// `mu u u_x - 18 u u_xx^2 - 36 u_x^2 u_xx - 24 u u_x u_xxx - 3 u^2 u_xxxx`.
pub fn ch6_nonlinear_rhs(
    u: &FracSeries,
    mu: f64,
    cap: usize,
    accuracy: usize,
) -> Result<FracSeries> {
    let ux = u.spatial_derivative(1, accuracy)?;
    let uxx = u.spatial_derivative(2, accuracy)?;
    let uxxx = u.spatial_derivative(3, accuracy)?;
    let uxxxx = u.spatial_derivative(4, accuracy)?;
    let mut acc = u.mul(&ux, cap)?.scale(mu);
    acc = acc.sub(&u.mul(&uxx.mul(&uxx, cap)?, cap)?.scale(18.0))?;
    acc = acc.sub(&ux.mul(&ux, cap)?.mul(&uxx, cap)?.scale(36.0))?;
    acc = acc.sub(&u.mul(&ux, cap)?.mul(&uxxx, cap)?.scale(24.0))?;
    acc.sub(&u.mul(&u, cap)?.mul(&uxxxx, cap)?.scale(3.0))
}

/// Linear integrand for the problem's equation.
pub fn linear_rhs(p: &ProblemSpec, u: &FracSeries, accuracy: usize) -> Result<FracSeries> {
    match p.equation {
        Equation::Ch4 => ch4_linear_rhs(u, p.mu, accuracy),
        Equation::Ch6 => ch6_linear_rhs(u, accuracy),
    }
}

/// Nonlinear integrand for the problem's equation.
pub fn nonlinear_rhs(
    p: &ProblemSpec,
    u: &FracSeries,
    cap: usize,
    accuracy: usize,
) -> Result<FracSeries> {
    match p.equation {
        Equation::Ch4 => ch4_nonlinear_rhs(u, cap, accuracy),
        Equation::Ch6 => ch6_nonlinear_rhs(u, p.mu, cap, accuracy),
    }
}

/// q-HAM residual R_m over the component history `u_0 .. u_{m-1}`.
///
/// CH4: R_m = D_t^a u_{m-1} - mu u_(m-1)x
///          - 6 sum_{k<m} sum_{j<=k} u_j u_(k-j)x u_(m-1-k)x
///          - 3 sum_{k<m} sum_{j<=k} u_j u_(k-j) u_(m-1-k)xx
///          + u_(m-1)xx + u_(m-1)xxxx
///
/// CH6: R_m = D_t^a u_{m-1} - mu sum_{k<m} u_k u_(m-1-k)x
///          + 18 sum sum u_j u_(k-j)xx u_(m-1-k)xx
///          + 36 sum sum u_jx u_(k-j)x u_(m-1-k)xx
///          + 24 sum sum u_j u_(k-j)x u_(m-1-k)xxx
///          + 3 sum sum u_j u_(k-j) u_(m-1-k)xxxx
///          - u_(m-1)xxxx - u_(m-1)xxxxxx
pub fn qham_residual(
    history: &[FracSeries],
    m: usize,
    p: &ProblemSpec,
    cap: usize,
    accuracy: usize,
) -> Result<FracSeries> {
    if m < 1 || history.len() != m {
        return Err(TfchError::Config(format!(
            "residual order {m} requires exactly {m} history entries, got {}",
            history.len()
        )));
    }
    let last = &history[m - 1];
    let dlast = |order: usize| last.spatial_derivative(order, accuracy);

    // Derivatives of every history entry, reused across the convolutions.
    let d: Vec<[FracSeries; 5]> = history
        .iter()
        .map(|u| {
            Ok([
                u.clone(),
                u.spatial_derivative(1, accuracy)?,
                u.spatial_derivative(2, accuracy)?,
                u.spatial_derivative(3, accuracy)?,
                u.spatial_derivative(4, accuracy)?,
            ])
        })
        .collect::<Result<Vec<_>>>()?;

    let tri = |a: usize, b: usize, c: usize| -> Result<FracSeries> {
        // sum_{k=0}^{m-1} sum_{j=0}^{k} d[j][a] * d[k-j][b] * d[m-1-k][c]
        let mut acc = FracSeries::zero(last.alpha(), last.grid())?;
        for k in 0..m {
            for j in 0..=k {
                let prod = d[j][a].mul(&d[k - j][b], cap)?.mul(&d[m - 1 - k][c], cap)?;
                acc = acc.add(&prod)?;
            }
        }
        Ok(acc)
    };

    let mut r = last.caputo()?;
    match p.equation {
        Equation::Ch4 => {
            r = r.sub(&dlast(1)?.scale(p.mu))?;
            r = r.sub(&tri(0, 1, 1)?.scale(6.0))?;
            r = r.sub(&tri(0, 0, 2)?.scale(3.0))?;
            r = r.add(&dlast(2)?)?;
            r.add(&dlast(4)?)
        }
        Equation::Ch6 => {
            let mut conv = FracSeries::zero(last.alpha(), last.grid())?;
            for k in 0..m {
                conv = conv.add(&d[k][0].mul(&d[m - 1 - k][1], cap)?)?;
            }
            r = r.sub(&conv.scale(p.mu))?;
            r = r.add(&tri(0, 2, 2)?.scale(18.0))?;
            r = r.add(&tri(1, 1, 2)?.scale(36.0))?;
            r = r.add(&tri(0, 1, 3)?.scale(24.0))?;
            r = r.add(&tri(0, 0, 4)?.scale(3.0))?;
            r = r.sub(&dlast(4)?)?;
            r.sub(&last.spatial_derivative(6, accuracy)?)
        }
    }
}
