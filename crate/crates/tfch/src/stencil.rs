//! Finite-difference weight generation on integer node offsets.
//!
//! Weights are built in exact rational arithmetic and converted once to
//! double-double. Two families are used:
//!
//! * minimal Fornberg stencils — the unique weights on the smallest node
//!   set, used for boundary one-sided rows and for accuracy orders < 8;
//! * wide least-squares stencils — minimum-norm weights on a much wider
//!   window with polynomial exactness through a high degree, used for the
//!   default accuracy order 8 in the interior. The widening suppresses
//!   amplification of coefficient-field noise when derivative passes are
//!   nested (each solver iteration differentiates the previous numerical
//!   result), while the high exactness degree keeps the truncation bias
//!   of deep chains small.

use crate::dd::Dd;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Exactness degree of the wide interior stencils at accuracy order 8.
pub const WIDE_DEGREE: usize = 33;
/// Half-width (in nodes) of the wide interior stencils.
pub const WIDE_HALF_WIDTH: usize = 36;

/// Weights of the `order`-th derivative at offset 0 for the given integer
/// node offsets (Fornberg 1988, exact rational arithmetic).
pub fn fornberg_weights(order: usize, offsets: &[i64]) -> Vec<BigRational> {
    assert!(offsets.len() > order, "need more nodes than derivative order");
    let n = offsets.len();
    let x: Vec<BigRational> = offsets
        .iter()
        .map(|&o| BigRational::from_integer(BigInt::from(o)))
        .collect();
    let m = order;
    // c[i][k]: weight of node i for the k-th derivative.
    let mut c = vec![vec![BigRational::zero(); m + 1]; n];
    let mut c1 = BigRational::one();
    let mut c4 = x[0].clone();
    c[0][0] = BigRational::one();
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = BigRational::one();
        let c5 = c4.clone();
        c4 = x[i].clone();
        for j in 0..i {
            let c3 = &x[i] - &x[j];
            c2 *= &c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = &c1 * (BigRational::from_integer(BigInt::from(k)) * &c[i - 1][k - 1]
                        - &c5 * &c[i - 1][k])
                        / &c2;
                }
                c[i][0] = -&c1 * &c5 * &c[i - 1][0] / &c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (&c4 * &c[j][k] - BigRational::from_integer(BigInt::from(k)) * &c[j][k - 1])
                    / &c3;
            }
            c[j][0] = &c4 * &c[j][0] / &c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|mut row| row.swap_remove(m)).collect()
}

/// Minimum-norm weights on offsets −M..M that reproduce the `order`-th
/// derivative of every polynomial of degree ≤ `degree` exactly.
///
/// Solves the normal equations G y = d!·e_order with G the moment matrix
/// G[j][k] = Σ o^{j+k}, then w_i = Σ_j y_j o_i^j — the least-squares
/// (Savitzky–Golay style) derivative filter, in exact rationals.
pub fn lsq_weights(order: usize, degree: usize, half_width: usize) -> Vec<BigRational> {
    assert!(degree >= order, "exactness degree below derivative order");
    assert!(2 * half_width >= degree, "window too narrow for the degree");
    let offs: Vec<i64> = (-(half_width as i64)..=half_width as i64).collect();
    let q = degree;
    let mut moments = vec![BigRational::zero(); 2 * q + 1];
    for &o in &offs {
        let mut p = BigRational::one();
        let ob = BigRational::from_integer(BigInt::from(o));
        for m in moments.iter_mut() {
            *m += &p;
            p *= &ob;
        }
    }
    // augmented [G | b], eliminated with exact fractions
    let mut a: Vec<Vec<BigRational>> = (0..=q)
        .map(|j| {
            let mut row: Vec<BigRational> = (0..=q).map(|k| moments[j + k].clone()).collect();
            row.push(if j == order {
                BigRational::from_integer((1..=order as u64).product::<u64>().into())
            } else {
                BigRational::zero()
            });
            row
        })
        .collect();
    let n = q + 1;
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("moment matrix is nonsingular");
        a.swap(col, piv);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                for k in col..=n {
                    let sub = &f * &a[col][k];
                    a[r][k] -= sub;
                }
            }
        }
    }
    let y: Vec<BigRational> = (0..n).map(|i| &a[i][n] / &a[i][i]).collect();
    offs.iter()
        .map(|&o| {
            let ob = BigRational::from_integer(BigInt::from(o));
            let mut p = BigRational::one();
            let mut w = BigRational::zero();
            for yj in &y {
                w += yj * &p;
                p *= &ob;
            }
            w
        })
        .collect()
}

/// Rational weight to double-double, exact to ~1e-32 relative.
pub fn rational_to_dd(r: &BigRational) -> Dd {
    let hi = rational_to_f64(r);
    let rem = r - BigRational::from_float(hi).expect("finite weight");
    Dd::from_parts(hi, rational_to_f64(&rem))
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let num = r.numer();
        let den = r.denom();
        let shift = (num.bits() as i64 - den.bits() as i64).max(0);
        let scaled = num / (BigInt::one() << shift as usize);
        (scaled.to_f64().unwrap() / den.to_f64().unwrap()) * 2f64.powi(shift as i32)
    })
}

/// Number of nodes in the minimal central stencil's half-width.
pub fn central_half_width(order: usize, accuracy: usize) -> usize {
    (order + 1) / 2 + accuracy / 2 - 1
}

/// Number of nodes in the one-sided stencils used near the boundary,
/// chosen so polynomial exactness matches a minimal central stencil
/// (degree `order + accuracy - 1`).
pub fn one_sided_width(order: usize, accuracy: usize) -> usize {
    order + accuracy
}

/// Dot product of stencil weights and field values at double-double
/// precision, fixed tap order.
pub fn dd_dot(weights: &[Dd], values: &[Dd]) -> Dd {
    debug_assert_eq!(weights.len(), values.len());
    let mut acc = crate::dd::ZERO;
    for (w, v) in weights.iter().zip(values) {
        acc = acc.add(w.mul(*v));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn to_f64(w: &[BigRational]) -> Vec<f64> {
        w.iter().map(rational_to_f64).collect()
    }

    #[test]
    fn classic_second_derivative_weights() {
        let w = to_f64(&fornberg_weights(2, &[-1, 0, 1]));
        assert_eq!(w, vec![1.0, -2.0, 1.0]);
    }

    #[test]
    fn classic_first_derivative_fourth_order() {
        let w = to_f64(&fornberg_weights(1, &[-2, -1, 0, 1, 2]));
        let expect = [1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0];
        for (a, b) in w.iter().zip(expect.iter()) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn lsq_reduces_to_fornberg_on_minimal_window() {
        // with window = minimal and degree = 2M the LSQ system is square
        let f = fornberg_weights(2, &[-1, 0, 1]);
        let l = lsq_weights(2, 2, 1);
        assert_eq!(f, l);
    }

    fn assert_moment_conditions(w: &[BigRational], order: usize, degree: usize, hw: usize) {
        let fact: BigRational =
            BigRational::from_integer((1..=order as u64).product::<u64>().into());
        for j in 0..=degree {
            let mut s = BigRational::zero();
            for (i, wi) in w.iter().enumerate() {
                let o = BigInt::from(i as i64 - hw as i64);
                s += wi * BigRational::from_integer(o.pow(j as u32));
            }
            let expect = if j == order { fact.clone() } else { BigRational::zero() };
            assert_eq!(s, expect, "moment {j}");
        }
    }

    #[test]
    fn lsq_moment_conditions_exact() {
        for order in [1usize, 4, 6] {
            let w = lsq_weights(order, 13, 10);
            assert_moment_conditions(&w, order, 13, 10);
        }
    }

    #[test]
    fn wide_default_weights_exact_and_small() {
        let w = lsq_weights(4, WIDE_DEGREE, WIDE_HALF_WIDTH);
        assert_moment_conditions(&w, 4, WIDE_DEGREE, WIDE_HALF_WIDTH);
        // widening buys a small weight norm: well under the minimal stencil's
        let sum_abs: f64 = to_f64(&w).iter().map(|x| x.abs()).sum();
        assert!(sum_abs < 10.0, "sum |w| = {sum_abs}");
    }

    #[test]
    fn rational_to_dd_round_trip() {
        let r = BigRational::new(BigInt::from(1), BigInt::from(3));
        let d = rational_to_dd(&r);
        // hi + lo carries ~32 digits of 1/3
        let err = (d.hi - 1.0 / 3.0).abs();
        assert!(err < 1e-16);
        assert!((d.lo - (1.0 / 3.0f64).mul_add(-3.0, 1.0) / 3.0).abs() < 1e-32 || d.lo.abs() < 1e-16);
        let back = d.hi + d.lo;
        assert!((back - 0.333_333_333_333_333_3).abs() < 1e-15);
    }

    #[test]
    fn dd_dot_cancellation() {
        // large cancelling taps resolved to double-double accuracy
        let a = 1.0 + 1e-9; // rounded once on entry, then handled exactly
        let w = vec![Dd::from_f64(1e8), Dd::from_f64(-1e8), Dd::from_f64(1.0)];
        let v = vec![Dd::from_f64(a), Dd::from_f64(1.0), Dd::from_f64(0.5)];
        let r = dd_dot(&w, &v).to_f64();
        let expect = 1e8 * (a - 1.0) + 0.5; // (a - 1) is exact by Sterbenz
        assert!((r - expect).abs() < 1e-20, "{r} vs {expect}");
    }
}
