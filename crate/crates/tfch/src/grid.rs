//! Uniform 1-D grid, sampled coefficient fields, and numerical spatial
//! differentiation up to sixth order.
//!
//! Fields are held at double-double precision (see `dd`); the public
//! surface exposes f64 views.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::dd::{self, Dd};
use crate::error::{Result, TfchError};
use crate::stencil;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Uniform grid on `[x_min, x_max]` with nodes `x_i = x_min + i*dx`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    x_min: f64,
    x_max: f64,
    n_points: usize,
}

/// Minimum node count so that a sixth derivative at the default accuracy
/// still has room for one-sided stencils on both sides.
pub const MIN_POINTS: usize = 25;

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if !(x_max > x_min) || !x_min.is_finite() || !x_max.is_finite() {
            return Err(TfchError::Config(format!(
                "grid bounds invalid: [{x_min}, {x_max}]"
            )));
        }
        if n_points < MIN_POINTS {
            return Err(TfchError::Config(format!(
                "grid needs at least {MIN_POINTS} nodes, got {n_points}"
            )));
        }
        Ok(Self { x_min, x_max, n_points })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    pub fn dx_dd(&self) -> Dd {
        Dd::from_f64(self.x_max)
            .sub(Dd::from_f64(self.x_min))
            .div_f64((self.n_points - 1) as f64)
    }

    pub fn node(&self, i: usize) -> f64 {
        self.node_dd(i).to_f64()
    }

    pub fn node_dd(&self, i: usize) -> Dd {
        Dd::from_f64(self.x_min).add(self.dx_dd().mul_f64(i as f64))
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(|i| self.node(i))
    }

    /// Index range of nodes at least `margin` inside both domain ends.
    pub fn interior_window(&self, margin: f64) -> std::ops::Range<usize> {
        let lo = (0..self.n_points)
            .find(|&i| self.node(i) >= self.x_min + margin)
            .unwrap_or(self.n_points);
        let hi = (0..self.n_points)
            .rev()
            .find(|&i| self.node(i) <= self.x_max - margin)
            .map(|i| i + 1)
            .unwrap_or(0);
        lo..hi.max(lo)
    }
}

/// One spatial coefficient function sampled on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefField {
    grid: Grid1D,
    values: Vec<Dd>,
}

impl CoefField {
    pub fn new(grid: Grid1D, values: Vec<f64>) -> Result<Self> {
        Self::new_dd(grid, values.into_iter().map(Dd::from_f64).collect())
    }

    pub fn new_dd(grid: Grid1D, values: Vec<Dd>) -> Result<Self> {
        if values.len() != grid.n_points() {
            return Err(TfchError::Structural(format!(
                "field length {} does not match grid with {} nodes",
                values.len(),
                grid.n_points()
            )));
        }
        for (i, v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(TfchError::Numerical {
                    context: "field construction".into(),
                    index: i,
                });
            }
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: Grid1D) -> Self {
        Self { grid, values: vec![dd::ZERO; grid.n_points()] }
    }

    pub fn constant(grid: Grid1D, c: f64) -> Self {
        Self { grid, values: vec![Dd::from_f64(c); grid.n_points()] }
    }

    /// Sample a scalar function at every node (double-double in and out, so
    /// analytic profiles enter at full working precision).
    pub fn sample<F: Fn(Dd) -> Dd>(grid: Grid1D, f: F) -> Result<Self> {
        let mut values = Vec::with_capacity(grid.n_points());
        for i in 0..grid.n_points() {
            let x = grid.node_dd(i);
            let v = f(x);
            if !v.is_finite() {
                return Err(TfchError::Sampling { index: i, x: x.to_f64(), value: v.to_f64() });
            }
            values.push(v);
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> Grid1D {
        self.grid
    }

    /// f64 view of one node value.
    pub fn value(&self, i: usize) -> f64 {
        self.values[i].to_f64()
    }

    pub fn values_f64(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.to_f64()).collect()
    }

    pub fn dd_values(&self) -> &[Dd] {
        &self.values
    }

    pub fn max_abs(&self) -> f64 {
        self.values
            .iter()
            .fold(0.0, |m, v| m.max(v.to_f64().abs()))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.hi == 0.0 && v.lo == 0.0)
    }

    /// Pointwise binary combination; grids must match.
    pub fn zip_with<F: Fn(Dd, Dd) -> Dd>(&self, other: &Self, f: F) -> Result<Self> {
        if self.grid != other.grid {
            return Err(TfchError::Structural("grid mismatch in field operation".into()));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(Self { grid: self.grid, values })
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|v| v.mul_f64(s)).collect(),
        }
    }

    /// Numerical derivative of the given order (1..=6) with stencil
    /// accuracy `accuracy` (2, 4, 6 or 8).
    ///
    /// At the default accuracy 8 the interior uses wide least-squares
    /// stencils (degree-33 exactness over 73 taps where the grid allows);
    /// lower accuracies use minimal central stencils. Nodes too close to
    /// the boundary use minimal near-sided windows clamped into the grid.
    /// Parallel and serial paths produce identical bits: each node is an
    /// independent dot product in fixed tap order.
    pub fn derivative(&self, order: usize, accuracy: usize) -> Result<Self> {
        let plan = DerivativePlan::get(self.grid, order, accuracy)?;
        #[cfg(feature = "parallel")]
        {
            let values: Vec<Dd> = (0..self.grid.n_points())
                .into_par_iter()
                .map(|i| plan.apply_at(&self.values, i))
                .collect();
            Ok(Self { grid: self.grid, values })
        }
        #[cfg(not(feature = "parallel"))]
        {
            self.derivative_serial(order, accuracy)
        }
    }

    /// Sequential reference path for `derivative`; always available so the
    /// two can be compared (and benchmarked) against each other.
    pub fn derivative_serial(&self, order: usize, accuracy: usize) -> Result<Self> {
        let plan = DerivativePlan::get(self.grid, order, accuracy)?;
        let values: Vec<Dd> = (0..self.grid.n_points())
            .map(|i| plan.apply_at(&self.values, i))
            .collect();
        Ok(Self { grid: self.grid, values })
    }
}

#[derive(PartialEq, Eq, Hash, Clone)]
struct PlanKey {
    n_points: usize,
    x_min_bits: u64,
    x_max_bits: u64,
    order: usize,
    accuracy: usize,
}

/// Precomputed stencil weights for one (grid, order, accuracy) triple.
/// Exact-rational weight generation is expensive, so plans are cached.
struct DerivativePlan {
    half_width: usize,
    n: usize,
    /// Central weights, already divided by dx^order.
    central: Vec<Dd>,
    /// One (start, weights) row per node in the boundary zones.
    left: Vec<(usize, Vec<Dd>)>,
    right: Vec<(usize, Vec<Dd>)>,
}

impl DerivativePlan {
    fn get(grid: Grid1D, order: usize, accuracy: usize) -> Result<Arc<Self>> {
        static CACHE: OnceLock<Mutex<HashMap<PlanKey, Arc<DerivativePlan>>>> = OnceLock::new();
        let key = PlanKey {
            n_points: grid.n_points(),
            x_min_bits: grid.x_min().to_bits(),
            x_max_bits: grid.x_max().to_bits(),
            order,
            accuracy,
        };
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(plan) = cache.lock().unwrap().get(&key) {
            return Ok(plan.clone());
        }
        let plan = Arc::new(Self::build(grid, order, accuracy)?);
        cache.lock().unwrap().insert(key, plan.clone());
        Ok(plan)
    }

    fn build(grid: Grid1D, order: usize, accuracy: usize) -> Result<Self> {
        if !(1..=6).contains(&order) {
            return Err(TfchError::Config(format!(
                "derivative order must be in 1..=6, got {order}"
            )));
        }
        if ![2, 4, 6, 8].contains(&accuracy) {
            return Err(TfchError::Config(format!(
                "stencil accuracy must be one of 2, 4, 6, 8, got {accuracy}"
            )));
        }
        let n = grid.n_points();
        let m = stencil::one_sided_width(order, accuracy);
        if n < m + 1 {
            return Err(TfchError::Config(format!(
                "grid with {n} nodes too small for order-{order} derivative at accuracy {accuracy}"
            )));
        }
        let scale = grid.dx_dd().powi(order as u32);
        let to_scaled = |w: Vec<num_rational::BigRational>| -> Vec<Dd> {
            w.iter()
                .map(|r| stencil::rational_to_dd(r).div(scale))
                .collect()
        };
        let (hw, central) = if accuracy == 8 {
            let hw = stencil::WIDE_HALF_WIDTH.min((n - 1) / 2);
            let degree = stencil::WIDE_DEGREE.min(2 * hw).max(order + accuracy - 1);
            (hw, to_scaled(stencil::lsq_weights(order, degree, hw)))
        } else {
            let hw = stencil::central_half_width(order, accuracy);
            let offs: Vec<i64> = (-(hw as i64)..=hw as i64).collect();
            (hw, to_scaled(stencil::fornberg_weights(order, &offs)))
        };
        // Boundary zones: a minimal window of m taps clamped into the grid,
        // always containing the evaluation node.
        let row_for = |i: usize| -> (usize, Vec<Dd>) {
            let start = i.saturating_sub(m / 2).min(n - m);
            let offs: Vec<i64> = (0..m as i64).map(|j| start as i64 + j - i as i64).collect();
            (start, to_scaled(stencil::fornberg_weights(order, &offs)))
        };
        let left: Vec<_> = (0..hw.min(n)).map(row_for).collect();
        let right: Vec<_> = ((n - hw.min(n))..n).map(row_for).collect();
        Ok(Self { half_width: hw, n, central, left, right })
    }

    fn apply_at(&self, values: &[Dd], i: usize) -> Dd {
        if i < self.half_width {
            let (start, w) = &self.left[i];
            stencil::dd_dot(w, &values[*start..*start + w.len()])
        } else if i >= self.n - self.half_width {
            let (start, w) = &self.right[i - (self.n - self.half_width)];
            stencil::dd_dot(w, &values[*start..*start + w.len()])
        } else {
            stencil::dd_dot(
                &self.central,
                &values[i - self.half_width..=i + self.half_width],
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dd::{Dd, ONE, SQRT2};

    fn grid() -> Grid1D {
        Grid1D::new(-2.0, 2.0, 81).unwrap() // dx = 0.05
    }

    #[test]
    fn grid_invariants() {
        let g = grid();
        assert!((g.dx() - 0.05).abs() < 1e-15);
        assert_eq!(g.nodes().count(), 81);
        assert!(Grid1D::new(1.0, -1.0, 81).is_err());
        assert!(Grid1D::new(-1.0, 1.0, 10).is_err());
    }

    #[test]
    fn sample_examples() {
        let g = Grid1D::new(-1.0, 1.0, 41).unwrap();
        let f = CoefField::sample(g, |x| crate::dd::tanh(x.div(SQRT2))).unwrap();
        assert_eq!(f.value(20), 0.0); // x = 0, odd function
        let e = CoefField::sample(g, |x| crate::dd::exp(x.mul_f64(0.1))).unwrap();
        assert_eq!(e.value(20), 1.0);
        // golden scalar sample at x = 1: tanh(1/sqrt 2)
        assert!((f.value(40) - 0.608_859_365_013_913_8).abs() < 1e-15);
    }

    #[test]
    fn sample_rejects_non_finite() {
        let g = Grid1D::new(-1.0, 1.0, 41).unwrap();
        let err = CoefField::sample(g, |x| ONE.div(x)).unwrap_err();
        match err {
            TfchError::Sampling { index, .. } => assert_eq!(index, 20),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn derivative_of_x_squared() {
        let f = CoefField::sample(grid(), |x| x.mul(x)).unwrap();
        let d = f.derivative(2, 8).unwrap();
        for i in 0..grid().n_points() {
            assert!((d.value(i) - 2.0).abs() < 1e-10);
        }
    }

    #[test]
    fn derivative_sixth_of_x6_over_720() {
        let f = CoefField::sample(grid(), |x| x.powi(6).div_f64(720.0)).unwrap();
        let d = f.derivative(6, 8).unwrap();
        for i in 0..grid().n_points() {
            assert!((d.value(i) - 1.0).abs() < 1e-8, "node {i}: {}", d.value(i));
        }
    }

    #[test]
    fn derivative_tanh_kink_at_origin() {
        let g = Grid1D::new(-4.0, 4.0, 801).unwrap(); // dx = 0.01
        let f = CoefField::sample(g, |x| crate::dd::tanh(x.div(SQRT2))).unwrap();
        let d = f.derivative(1, 8).unwrap();
        let mid = g.n_points() / 2;
        assert!((d.value(mid) - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-9);
    }

    #[test]
    fn polynomial_exactness_all_orders() {
        for order in 1..=6usize {
            for j in 0..=(order + 7) {
                let f = CoefField::sample(grid(), |x| x.powi(j as u32)).unwrap();
                let d = f.derivative(order, 8).unwrap();
                for i in 0..grid().n_points() {
                    let x = grid().node(i);
                    let exact = exact_poly_derivative(j, order, x);
                    assert!(
                        (d.value(i) - exact).abs() < 1e-7,
                        "order {order} x^{j} node {i}: {} vs {exact}",
                        d.value(i)
                    );
                }
            }
        }
    }

    fn exact_poly_derivative(j: usize, order: usize, x: f64) -> f64 {
        if j < order {
            return 0.0;
        }
        let mut c = 1.0;
        for k in 0..order {
            c *= (j - k) as f64;
        }
        c * x.powi((j - order) as i32)
    }

    #[test]
    fn convergence_order_sin() {
        // Halving dx must shrink the max error by at least 2^(p-1) until
        // the roundoff floor; with wide high-degree stencils every grid
        // here is already at the floor, so the errors just have to be tiny.
        fn dd_sin(x: Dd) -> Dd {
            // adequate for a test: f64 sin plus one Newton-style correction
            // via the derivative, accurate to ~1e-26 for |x| <= pi
            let s = x.hi.sin();
            let c = x.hi.cos();
            Dd::from_parts(s, x.lo * c)
        }
        for order in [1usize, 2, 3] {
            let mut prev = f64::INFINITY;
            for n in [65usize, 129, 257] {
                let g = Grid1D::new(-std::f64::consts::PI, std::f64::consts::PI, n).unwrap();
                let f = CoefField::sample(g, dd_sin).unwrap();
                let d = f.derivative(order, 8).unwrap();
                let err = (0..n)
                    .map(|i| (d.value(i) - sin_derivative(order, g.node(i))).abs())
                    .fold(0.0f64, f64::max);
                let floor = 1e-11 / g.dx().powi(order as i32);
                assert!(
                    err <= floor || prev / err >= 2f64.powi(7),
                    "order {order}, n {n}: err {err}, prev {prev}"
                );
                prev = err;
            }
        }
    }

    fn sin_derivative(order: usize, x: f64) -> f64 {
        match order % 4 {
            0 => x.sin(),
            1 => x.cos(),
            2 => -x.sin(),
            _ => -x.cos(),
        }
    }

    #[test]
    fn linearity() {
        let f = CoefField::sample(grid(), |x| crate::dd::tanh(x.mul_f64(0.5))).unwrap();
        let g = CoefField::sample(grid(), |x| crate::dd::exp(x.mul_f64(0.3))).unwrap();
        let (a, b) = (2.5, -1.25);
        let combo = f
            .scale(a)
            .zip_with(&g.scale(b), |u, v| u.add(v))
            .unwrap()
            .derivative(3, 8)
            .unwrap();
        let parts = f
            .derivative(3, 8)
            .unwrap()
            .scale(a)
            .zip_with(&g.derivative(3, 8).unwrap().scale(b), |u, v| u.add(v))
            .unwrap();
        let scale = parts.max_abs();
        for i in 0..grid().n_points() {
            assert!((combo.value(i) - parts.value(i)).abs() < 1e-12 * scale.max(1.0));
        }
    }

    #[test]
    fn parallel_matches_serial_bitwise() {
        let f = CoefField::sample(grid(), |x| crate::dd::tanh(x.div(SQRT2))).unwrap();
        for order in 1..=6 {
            let a = f.derivative(order, 8).unwrap();
            let b = f.derivative_serial(order, 8).unwrap();
            assert_eq!(a.dd_values(), b.dd_values(), "order {order}");
        }
    }

    #[test]
    fn invalid_derivative_requests() {
        let g = Grid1D::new(-1.0, 1.0, 25).unwrap();
        let f = CoefField::sample(g, |x| x).unwrap();
        assert!(f.derivative(7, 8).is_err());
        assert!(f.derivative(0, 8).is_err());
        assert!(f.derivative(2, 3).is_err());
    }

    #[test]
    fn interior_window() {
        let g = Grid1D::new(-8.0, 8.0, 801).unwrap();
        let w = g.interior_window(1.0);
        assert!(g.node(w.start) >= -7.0);
        assert!(g.node(w.end - 1) <= 7.0);
        assert!(g.node(w.start.wrapping_sub(1)) < -7.0);
    }
}
