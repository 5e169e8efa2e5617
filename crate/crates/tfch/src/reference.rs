//! Printed closed-form solution surfaces, transcribed term by term, plus the
//! exact travelling-kink solution and the published error table.
//!
//! Every form is kept verbatim, including defects that were found when the
//! transcriptions were cross-checked against an independent exact-series
//! expansion of the same recurrences (40-digit arithmetic over polynomial
//! rings in tanh(x/sqrt2) resp. e^{lambda x}):
//!
//! * `Ch4/TanhKink/NimU2` — exact (every power, both alpha regimes).
//! * `Ch4/TanhKink/QhamU3` — exact under the documented reading of one
//!   unbalanced parenthesis in its t^{3a} numerator (see the term comment).
//! * `Ch4/ExpLambda/NimU2` — the t^{3a} term carries a spurious printed
//!   factor "h^3" in a method that has no h parameter; the caller must
//!   supply its value through [`RefParams::anomalous_h3`] (the source form
//!   evaluates exactly when it is -1, i.e. the factor is a leftover from
//!   the companion derivation at h = -1). The final t^{4a} block prints
//!   "-mu^3" where the recurrence yields "+mu^3"; kept as printed.
//! * `Ch4/ExpLambda/QhamU3` — all component terms exact; the assembled
//!   series drops a Gamma(2a+1) numerator factor from its final t^{3a}
//!   term; kept as printed.
//! * `Ch6/TanhKink/NimU2` — t^a, t^{2a}, t^{4a} exact; the t^{3a} pair
//!   deviates from the recurrence by an odd polynomial of degree <= 11 in
//!   tanh(x/sqrt2); kept as printed, frozen recurrence values are in
//!   [`oracle_nim_u2_t3a`].
//! * `Ch6/TanhKink/QhamU3` — t^a exact once a 1/sqrt2 dropped by the
//!   assembled equation (but present in its component listing) is
//!   restored; t^{2a} exact (including the (3n+2h)/n^3 assembly); of the
//!   ten t^{3a} terms the two sech^14 terms
//!   with 64-bit-rational coefficients are exact while the remaining eight
//!   jointly deviate by an odd polynomial of degree <= 11 in
//!   tanh(x/sqrt2); kept as printed, frozen recurrence values are in
//!   [`oracle_qham_u3_t3a`].
//! * `Ch6/ExpLambda/NimU2` — t^a, t^{2a} exact; t^{3a} deviates at
//!   e^{lambda x} powers 3..5, t^{4a} at powers 3, 4 and 6; kept as
//!   printed.
//! * `Ch6/ExpLambda/QhamU3` — t^a and t^{2a} exact; the t^{3a} block
//!   deviates at e^{lambda x} powers 2..7. One garbled product in its
//!   sixth term is restored to the reading consistent with the companion
//!   component listing (see the term comment); kept as printed otherwise.
//!
//! The big integer ratios of `Ch6/TanhKink/QhamU3` have power-of-two
//! denominators (2^36..2^44), so reducing each to f64 costs one rounding of
//! the numerator only; they are reduced once, here, as literals.

use crate::error::{Result, TfchError};
use crate::gamma::gamma;
use crate::model::Equation;

const S2: f64 = std::f64::consts::SQRT_2;

/// Initial-condition family of a printed form (the exp case takes its rate
/// from [`RefParams::lambda`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RefIc {
    TanhKink,
    ExpLambda,
}

/// Which printed surface to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RefMethod {
    /// Two-term NIM partial sum U_2.
    NimU2,
    /// Three-term q-HAM partial sum U_3.
    QhamU3,
    /// Exact solution; only defined for the fourth-order kink problem.
    Exact,
}

/// A printed closed form, identified by equation, initial condition and
/// method.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RefCase {
    pub equation: Equation,
    pub ic: RefIc,
    pub method: RefMethod,
}

/// Parameters of a reference evaluation.
///
/// `h` and `n` only enter the q-HAM forms, with one exception: the printed
/// fourth-order/exp NIM form carries a spurious `h^3` factor on its t^{3a}
/// term, and `anomalous_h3` supplies the value used for it. There is no
/// default — the caller must state what the undefined symbol means.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefParams {
    pub alpha: f64,
    pub mu: f64,
    pub lambda: f64,
    pub h: f64,
    pub n: u32,
    /// Value substituted for the printed `h^3` in the NIM `Ch4/ExpLambda`
    /// t^{3a} term. The form reproduces the recurrence when this is -1.
    pub anomalous_h3: f64,
}

impl RefParams {
    /// Parameters matching the published error table: classical order,
    /// unit mobility, h = -1, n = 1.
    pub fn table1() -> Self {
        Self { alpha: 1.0, mu: 1.0, lambda: 0.1, h: -1.0, n: 1, anomalous_h3: -1.0 }
    }

    pub fn validate(&self, case: RefCase) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(TfchError::Config(format!(
                "alpha must lie in (0, 1], got {}",
                self.alpha
            )));
        }
        if !self.mu.is_finite() || !self.lambda.is_finite() {
            return Err(TfchError::Config("mu and lambda must be finite".into()));
        }
        if case.method == RefMethod::QhamU3 {
            if !self.h.is_finite() || self.h == 0.0 {
                return Err(TfchError::Config(format!(
                    "h must be finite and nonzero, got {}",
                    self.h
                )));
            }
            if self.n < 1 {
                return Err(TfchError::Config("n must be >= 1".into()));
            }
        }
        if case.method == RefMethod::NimU2
            && case.equation == Equation::Ch4
            && case.ic == RefIc::ExpLambda
            && !self.anomalous_h3.is_finite()
        {
            return Err(TfchError::Config(
                "anomalous_h3 must be finite for the fourth-order exp NIM form".into(),
            ));
        }
        Ok(())
    }
}

/// Gamma(k alpha + 1) for k = 0..=4.
#[derive(Debug, Clone, Copy)]
pub struct Gammas {
    pub g: [f64; 5],
}

impl Gammas {
    pub fn new(alpha: f64) -> Result<Self> {
        let mut g = [1.0; 5];
        for (k, slot) in g.iter_mut().enumerate() {
            *slot = gamma(k as f64 * alpha + 1.0)?;
        }
        Ok(Self { g })
    }
}

/// One printed term: the power k of t^{k alpha} it multiplies, a short
/// label for reports, and its spatial coefficient.
pub struct RefTerm {
    pub power: u32,
    pub label: &'static str,
    pub coeff: fn(f64, &RefParams, &Gammas) -> f64,
}

#[inline]
fn kink_parts(x: f64) -> (f64, f64) {
    // (tanh, sech^2) at x/sqrt2
    let th = (x / S2).tanh();
    (th, 1.0 - th * th)
}

#[inline]
fn coshes(x: f64) -> (f64, f64, f64) {
    // cosh(sqrt2 x), cosh(2 sqrt2 x), cosh(3 sqrt2 x)
    let c1 = (S2 * x).cosh();
    let c2 = 2.0 * c1 * c1 - 1.0;
    let c3 = (4.0 * c1 * c1 - 3.0) * c1;
    (c1, c2, c3)
}

#[inline]
fn qham_t1_shape(p: &RefParams) -> f64 {
    // -h (3n^2 + 3nh + h^2) / n^3: the assembled t^a weight of U_3
    let n = p.n as f64;
    -p.h * (3.0 * n * n + 3.0 * n * p.h + p.h * p.h) / (n * n * n)
}

#[inline]
fn qham_t2_shape(p: &RefParams) -> f64 {
    // h^2 (3n + 2h) / n^3: the assembled t^{2a} weight of U_3
    let n = p.n as f64;
    p.h * p.h * (3.0 * n + 2.0 * p.h) / (n * n * n)
}

#[inline]
fn qham_t3_shape(p: &RefParams) -> f64 {
    // h^3 / n^3: the assembled t^{3a} weight of U_3
    let n = p.n as f64;
    p.h * p.h * p.h / (n * n * n)
}

// ---------------------------------------------------------------- Ch4 tanh

static CH4_TANH_NIM: &[RefTerm] = &[
    RefTerm { power: 0, label: "u0 kink", coeff: |x, _, _| kink_parts(x).0 },
    RefTerm {
        power: 1,
        label: "t^a: mu sech^2 / (sqrt2 G1)",
        coeff: |x, p, g| p.mu * kink_parts(x).1 / (S2 * g.g[1]),
    },
    RefTerm {
        power: 2,
        label: "t^2a: -mu^2 tanh sech^2 / G2",
        coeff: |x, p, g| {
            let (th, s2h) = kink_parts(x);
            -p.mu * p.mu * th * s2h / g.g[2]
        },
    },
    RefTerm {
        power: 3,
        label: "t^3a: 3 mu^2 G2 (4cosh-11) tanh sech^6 / (2 G1^2 G3)",
        coeff: |x, p, g| {
            let (th, s2h) = kink_parts(x);
            let (c1, _, _) = coshes(x);
            3.0 * p.mu * p.mu * g.g[2] * (4.0 * c1 - 11.0) * th * s2h.powi(3)
                / (2.0 * g.g[1] * g.g[1] * g.g[3])
        },
    },
    RefTerm {
        power: 4,
        label: "t^4a: 3 mu^3 G3 (3cosh-4) sech^8 / (2 sqrt2 G1^3 G4)",
        coeff: |x, p, g| {
            let s2h = kink_parts(x).1;
            let (c1, _, _) = coshes(x);
            3.0 * p.mu.powi(3) * g.g[3] * (3.0 * c1 - 4.0) * s2h.powi(4)
                / (2.0 * S2 * g.g[1].powi(3) * g.g[4])
        },
    },
];

static CH4_TANH_QHAM: &[RefTerm] = &[
    RefTerm { power: 0, label: "u0 kink", coeff: |x, _, _| kink_parts(x).0 },
    RefTerm {
        power: 1,
        label: "t^a: -mu h (3n^2+3nh+h^2) sech^2 / (sqrt2 n^3 G1)",
        coeff: |x, p, g| p.mu * qham_t1_shape(p) * kink_parts(x).1 / (S2 * g.g[1]),
    },
    RefTerm {
        power: 2,
        label: "t^2a: -mu^2 h^2 (3n+2h) tanh sech^2 / (n^3 G2)",
        coeff: |x, p, g| {
            let (th, s2h) = kink_parts(x);
            -p.mu * p.mu * qham_t2_shape(p) * th * s2h / g.g[2]
        },
    },
    RefTerm {
        power: 3,
        // The source prints "(4cosh(sqrt2 x - 11)" with the parenthesis
        // inside the cosh argument; the only reading that balances and
        // matches the listed components is (4 cosh(sqrt2 x) - 11).
        label: "t^3a: -h^3 mu^2 sech^4 (sqrt2 mu (cosh-2) - 6(4cosh-11) tanh sech^2) / (2 n^3 G3)",
        coeff: |x, p, g| {
            let (th, s2h) = kink_parts(x);
            let (c1, _, _) = coshes(x);
            let inner = S2 * p.mu * (c1 - 2.0) - 6.0 * (4.0 * c1 - 11.0) * th * s2h;
            -qham_t3_shape(p) * p.mu * p.mu * s2h * s2h * inner / (2.0 * g.g[3])
        },
    },
    RefTerm {
        power: 3,
        label: "t^3a: -3 h^3 mu^2 G2 (4cosh-11) tanh sech^6 / (2 n^3 G1^2 G3)",
        coeff: |x, p, g| {
            let (th, s2h) = kink_parts(x);
            let (c1, _, _) = coshes(x);
            -3.0 * qham_t3_shape(p) * p.mu * p.mu * g.g[2] * (4.0 * c1 - 11.0) * th
                * s2h.powi(3)
                / (2.0 * g.g[1] * g.g[1] * g.g[3])
        },
    },
];

// ----------------------------------------------------------------- Ch4 exp

static CH4_EXP_NIM: &[RefTerm] = &[
    RefTerm { power: 0, label: "u0 exp", coeff: |x, p, _| (p.lambda * x).exp() },
    RefTerm {
        power: 1,
        label: "t^a: l E (-l^3 + 9 l E^2 - l + mu) / G1",
        coeff: |x, p, g| {
            let l = p.lambda;
            let e = (l * x).exp();
            l * e * (-l.powi(3) + 9.0 * l * e * e - l + p.mu) / g.g[1]
        },
    },
    RefTerm {
        power: 2,
        label: "t^2a: l^2 E (-54 l E^2 (14l^3+2l-mu) + (l^3+l-mu)^2 + 675 l^2 E^4) / G2",
        coeff: |x, p, g| {
            let l = p.lambda;
            let e = (l * x).exp();
            let a = l.powi(3) + l - p.mu;
            l * l
                * e
                * (-54.0 * l * e * e * (14.0 * l.powi(3) + 2.0 * l - p.mu) + a * a
                    + 675.0 * l * l * e.powi(4))
                / g.g[2]
        },
    },
    RefTerm {
        power: 3,
        // The printed factor "h^3" has no meaning for NIM; its value is the
        // caller-supplied `anomalous_h3` (the form is exact when it is -1).
        label: "t^3a: 27 l^4 [h^3] E^3 G2 (50 l (l^3+l-mu) E^2 - (l^3+l-mu)^2 - 441 l^2 E^4) / (G1^2 G3)",
        coeff: |x, p, g| {
            let l = p.lambda;
            let e = (l * x).exp();
            let a = l.powi(3) + l - p.mu;
            27.0 * l.powi(4) * p.anomalous_h3 * e.powi(3) * g.g[2]
                * (50.0 * l * a * e * e - a * a - 441.0 * l * l * e.powi(4))
                / (g.g[1] * g.g[1] * g.g[3])
        },
    },
    RefTerm {
        power: 4,
        label: "t^4a: -9 l^5 E^3 G3 (l^9 + 3l^7 + 3l^5 + l^3(3mu^2+1) - 3 l mu (l^5+2l^3+l-mu) + 1323 (l^5+l^3-l^2 mu) E^4) / (G1^3 G4)",
        coeff: |x, p, g| {
            let l = p.lambda;
            let m = p.mu;
            let e = (l * x).exp();
            -9.0 * l.powi(5) * e.powi(3) * g.g[3]
                * (l.powi(9) + 3.0 * l.powi(7) + 3.0 * l.powi(5)
                    + l.powi(3) * (3.0 * m * m + 1.0)
                    - 3.0 * l * m * (l.powi(5) + 2.0 * l.powi(3) + l - m)
                    + 1323.0 * (l.powi(5) + l.powi(3) - l * l * m) * e.powi(4))
                / (g.g[1].powi(3) * g.g[4])
        },
    },
    RefTerm {
        power: 4,
        // The recurrence yields +mu^3 here; "-mu^3" is kept as printed.
        label: "t^4a: 9 l^5 E^3 G3 (75 (l^7 - 2l^4 mu - 2l^2 mu + l mu^2 + 2l^5 + l^3) E^2 + 6561 l^3 E^6 - mu^3) / (G1^3 G4)",
        coeff: |x, p, g| {
            let l = p.lambda;
            let m = p.mu;
            let e = (l * x).exp();
            9.0 * l.powi(5) * e.powi(3) * g.g[3]
                * (75.0
                    * (l.powi(7) - 2.0 * l.powi(4) * m - 2.0 * l * l * m + l * m * m
                        + 2.0 * l.powi(5)
                        + l.powi(3))
                    * e
                    * e
                    + 6561.0 * l.powi(3) * e.powi(6)
                    - m.powi(3))
                / (g.g[1].powi(3) * g.g[4])
        },
    },
];

static CH4_EXP_QHAM: &[RefTerm] = &[
    RefTerm { power: 0, label: "u0 exp", coeff: |x, p, _| (p.lambda * x).exp() },
    RefTerm {
        power: 1,
        label: "t^a: -l E h (3n^2+3nh+h^2) (-l^3 + 9 l E^2 - l + mu) / (n^3 G1)",
        coeff: |x, p, g| {
            let l = p.lambda;
            let e = (l * x).exp();
            qham_t1_shape(p) * l * e * (-l.powi(3) + 9.0 * l * e * e - l + p.mu) / g.g[1]
        },
    },
    RefTerm {
        power: 2,
        label: "t^2a: l^2 h^2 (3n+2h) E (-54 l E^2 (14l^3+2l-mu) + (l^3+l-mu)^2 + 675 l^2 E^4) / (n^3 G2)",
        coeff: |x, p, g| {
            let l = p.lambda;
            let e = (l * x).exp();
            let a = l.powi(3) + l - p.mu;
            qham_t2_shape(p) * l * l * e
                * (-54.0 * l * e * e * (14.0 * l.powi(3) + 2.0 * l - p.mu) + a * a
                    + 675.0 * l * l * e.powi(4))
                / g.g[2]
        },
    },
    RefTerm {
        power: 3,
        label: "t^3a: l^3 h^3 E ((l^3+l-mu)^3 - 99225 l^3 E^6 + 675 l^3 (709 l^2 + 37) E^4 - 27 l^3 (2269 l^4 + 578 l^2 + 37) E^2) / (n^3 G3)",
        coeff: |x, p, g| {
            let l = p.lambda;
            let e = (l * x).exp();
            let a = l.powi(3) + l - p.mu;
            qham_t3_shape(p) * l.powi(3) * e
                * (a.powi(3) - 99225.0 * l.powi(3) * e.powi(6)
                    + 675.0 * l.powi(3) * (709.0 * l * l + 37.0) * e.powi(4)
                    - 27.0 * l.powi(3) * (2269.0 * l.powi(4) + 578.0 * l * l + 37.0) * e * e)
                / g.g[3]
        },
    },
    RefTerm {
        power: 3,
        label: "t^3a: -27 mu l^4 h^3 E^3 (-248 l^3 + l (275 E^2 - 32) + 7 mu) / (n^3 G3)",
        coeff: |x, p, g| {
            let l = p.lambda;
            let e = (l * x).exp();
            -27.0 * qham_t3_shape(p) * p.mu * l.powi(4) * e.powi(3)
                * (-248.0 * l.powi(3) + l * (275.0 * e * e - 32.0) + 7.0 * p.mu)
                / g.g[3]
        },
    },
    RefTerm {
        power: 3,
        // The listed component carries a Gamma(2a+1) numerator factor that
        // the assembled series omits; kept as the assembled series prints it.
        label: "t^3a: 27 l^4 h^3 E^3 (50 l (l^3+l-mu) E^2 - (l^3+l-mu)^2 - 441 l^2 E^4) / (n^3 G1^2 G3)",
        coeff: |x, p, g| {
            let l = p.lambda;
            let e = (l * x).exp();
            let a = l.powi(3) + l - p.mu;
            27.0 * qham_t3_shape(p) * l.powi(4) * e.powi(3)
                * (50.0 * l * a * e * e - a * a - 441.0 * l * l * e.powi(4))
                / (g.g[1] * g.g[1] * g.g[3])
        },
    },
];

// ---------------------------------------------------------------- Ch6 tanh

static CH6_TANH_NIM: &[RefTerm] = &[
    RefTerm { power: 0, label: "u0 kink", coeff: |x, _, _| kink_parts(x).0 },
    RefTerm {
        power: 1,
        label: "t^a: mu tanh sech^2 / (sqrt2 G1)",
        coeff: |x, p, g| {
            let (th, s2h) = kink_parts(x);
            p.mu * th * s2h / (S2 * g.g[1])
        },
    },
    RefTerm {
        power: 2,
        label: "t^2a: -mu tanh sech^8 (mu ch^6 + (96 sqrt2 - 2 mu) ch^4 - 585 sqrt2 ch^2 + 630 sqrt2) / G2",
        coeff: |x, p, g| {
            let (th, s2h) = kink_parts(x);
            let ch2 = 1.0 / s2h; // cosh^2(x/sqrt2)
            -p.mu * th * s2h.powi(4)
                * (p.mu * ch2.powi(3) + (96.0 * S2 - 2.0 * p.mu) * ch2 * ch2
                    - 585.0 * S2 * ch2
                    + 630.0 * S2)
                / g.g[2]
        },
    },
    RefTerm {
        power: 3,
        label: "t^3a: mu^2 G2 tanh sech^4 (3 (mu sqrt2 + 1428) sech^2 - 2 (sqrt2 mu + 192)) / (64 G1^2 G3)",
        coeff: |x, p, g| {
            let (th, s2h) = kink_parts(x);
            p.mu * p.mu * g.g[2] * th * s2h * s2h
                * (3.0 * (p.mu * S2 + 1428.0) * s2h - 2.0 * (S2 * p.mu + 192.0))
                / (64.0 * g.g[1] * g.g[1] * g.g[3])
        },
    },
    RefTerm {
        power: 3,
        label: "t^3a: 420 mu^2 G2 tanh sech^10 (5 - 13 cosh) / (64 G1^2 G3)",
        coeff: |x, p, g| {
            let (th, s2h) = kink_parts(x);
            let (c1, _, _) = coshes(x);
            420.0 * p.mu * p.mu * g.g[2] * th * s2h.powi(5) * (5.0 - 13.0 * c1)
                / (64.0 * g.g[1] * g.g[1] * g.g[3])
        },
    },
    RefTerm {
        power: 4,
        label: "t^4a: -3 mu^3 G3 tanh sech^12 (3773 cosh - 646 cosh2 + 27 cosh3 - 3474) / (16 sqrt2 G1^3 G4)",
        coeff: |x, p, g| {
            let (th, s2h) = kink_parts(x);
            let (c1, c2, c3) = coshes(x);
            -3.0 * p.mu.powi(3) * g.g[3] * th * s2h.powi(6)
                * (3773.0 * c1 - 646.0 * c2 + 27.0 * c3 - 3474.0)
                / (16.0 * S2 * g.g[1].powi(3) * g.g[4])
        },
    },
];

// Big-rational coefficients of the sech^14 / sech^8 / sech^10 terms below,
// reduced once: all denominators are powers of two, so only the numerator
// rounds (at ~1e-16 relative).
const C6_F: f64 = 153_385_672_396_573_417_792.0 / 17_592_186_044_416.0; // /2^44
const C6_F0: f64 = 216_241_588_341_872_290_245.0 / 17_592_186_044_416.0;
const C6_G: f64 = 69_679_073_538_343_302_995.0 / 17_592_186_044_416.0;
const C6_H: f64 = 49_120_689_046_652_631.0 / 68_719_476_736.0; // /2^36
const C6_H0: f64 = 1_487_475_224_720_429_629.0 / 68_719_476_736.0;
const C6_I: f64 = 5_457_854_338_516_959.0 / 2_199_023_255_552.0; // /2^41
const C6_I0: f64 = 24_770_261_997_884_659.0 / 2_199_023_255_552.0;
const C6_J: f64 = 39_184_595_250_890_985.0 / 4_398_046_511_104.0; // /2^42

static CH6_TANH_QHAM: &[RefTerm] = &[
    RefTerm { power: 0, label: "u0 kink", coeff: |x, _, _| kink_parts(x).0 },
    RefTerm {
        power: 1,
        // The assembled source equation drops the 1/sqrt2 that its own
        // component listing carries; the component reading is used, since
        // without it U_3 would not reduce to the NIM sum at n = 1, h = -1.
        label: "t^a: -mu h (3n^2+3nh+h^2) tanh sech^2 / (sqrt2 n^3 G1)",
        coeff: |x, p, g| {
            let (th, s2h) = kink_parts(x);
            p.mu * qham_t1_shape(p) * th * s2h / (S2 * g.g[1])
        },
    },
    RefTerm {
        power: 2,
        label: "t^2a: -mu h^2 (3n+2h) tanh sech^8 (mu ch^6 + (96 sqrt2 - 2 mu) ch^4) / (n^3 G2)",
        coeff: |x, p, g| {
            let (th, s2h) = kink_parts(x);
            let ch2 = 1.0 / s2h;
            -p.mu * qham_t2_shape(p) * th * s2h.powi(4)
                * (p.mu * ch2.powi(3) + (96.0 * S2 - 2.0 * p.mu) * ch2 * ch2)
                / g.g[2]
        },
    },
    RefTerm {
        power: 2,
        label: "t^2a: -mu h^2 (3n+2h) tanh sech^8 (-585 sqrt2 ch^2 + 630 sqrt2) / (n^3 G2)",
        coeff: |x, p, g| {
            let (th, s2h) = kink_parts(x);
            let ch2 = 1.0 / s2h;
            -p.mu * qham_t2_shape(p) * th * s2h.powi(4)
                * (-585.0 * S2 * ch2 + 630.0 * S2)
                / g.g[2]
        },
    },
    RefTerm {
        power: 3,
        label: "t^3a A: 144 sqrt2 h^3 mu tanh sech^10 (4484 cosh - 471 cosh2 + 8 cosh3 - 5117) / (n^3 G3)",
        coeff: |x, p, g| {
            let (th, s2h) = kink_parts(x);
            let (c1, c2, c3) = coshes(x);
            144.0 * S2 * qham_t3_shape(p) * p.mu * th * s2h.powi(5)
                * (4484.0 * c1 - 471.0 * c2 + 8.0 * c3 - 5117.0)
                / g.g[3]
        },
    },
    RefTerm {
        power: 3,
        label: "t^3a B: -3 h^3 mu^2 tanh sech^10 (17972 cosh - 2031 cosh2 + 56 cosh3 - 20261) / (4 n^3 G3)",
        coeff: |x, p, g| {
            let (th, s2h) = kink_parts(x);
            let (c1, c2, c3) = coshes(x);
            -3.0 * qham_t3_shape(p) * p.mu * p.mu * th * s2h.powi(5)
                * (17972.0 * c1 - 2031.0 * c2 + 56.0 * c3 - 20261.0)
                / (4.0 * g.g[3])
        },
    },
    RefTerm {
        power: 3,
        label: "t^3a C: h^3 mu^3 tanh sech^6 (-20 cosh + cosh2 + 27) / (4 sqrt2 n^3 G3)",
        coeff: |x, p, g| {
            let (th, s2h) = kink_parts(x);
            let (c1, c2, _) = coshes(x);
            qham_t3_shape(p) * p.mu.powi(3) * th * s2h.powi(3)
                * (-20.0 * c1 + c2 + 27.0)
                / (4.0 * S2 * g.g[3])
        },
    },
    RefTerm {
        power: 3,
        label: "t^3a D: 3 h^3 mu^2 G2 tanh sech^10 (2323 cosh - 309 cosh2 + 8 cosh3 - 2391) / (8 n^3 G1^2 G3)",
        coeff: |x, p, g| {
            let (th, s2h) = kink_parts(x);
            let (c1, c2, c3) = coshes(x);
            3.0 * qham_t3_shape(p) * p.mu * p.mu * g.g[2] * th * s2h.powi(5)
                * (2323.0 * c1 - 309.0 * c2 + 8.0 * c3 - 2391.0)
                / (8.0 * g.g[1] * g.g[1] * g.g[3])
        },
    },
    RefTerm {
        power: 3,
        label: "t^3a E: h^3 mu^3 G2 tanh sech^6 (cosh - 2) / (2 sqrt2 n^3 G1^2 G3)",
        coeff: |x, p, g| {
            let (th, s2h) = kink_parts(x);
            let (c1, _, _) = coshes(x);
            qham_t3_shape(p) * p.mu.powi(3) * g.g[2] * th * s2h.powi(3) * (c1 - 2.0)
                / (2.0 * S2 * g.g[1] * g.g[1] * g.g[3])
        },
    },
    RefTerm {
        power: 3,
        label: "t^3a F: 9 h^3 mu tanh sech^14 (153385672396573417792 cosh - 216241588341872290245) / (2^44 n^3 G3)",
        coeff: |x, p, g| {
            let (th, s2h) = kink_parts(x);
            let (c1, _, _) = coshes(x);
            9.0 * qham_t3_shape(p) * p.mu * th * s2h.powi(7) * (C6_F * c1 - C6_F0) / g.g[3]
        },
    },
    RefTerm {
        power: 3,
        label: "t^3a G: -9 h^3 mu tanh sech^14 (69679073538343302995 cosh2) / (2^44 n^3 G3)",
        coeff: |x, p, g| {
            let (th, s2h) = kink_parts(x);
            let (_, c2, _) = coshes(x);
            -9.0 * qham_t3_shape(p) * p.mu * th * s2h.powi(7) * C6_G * c2 / g.g[3]
        },
    },
    RefTerm {
        power: 3,
        label: "t^3a H: -3 h^3 mu tanh sech^8 (49120689046652631 cosh - 1487475224720429629) / (2^36 n^3 G3)",
        coeff: |x, p, g| {
            let (th, s2h) = kink_parts(x);
            let (c1, _, _) = coshes(x);
            -3.0 * qham_t3_shape(p) * p.mu * th * s2h.powi(4) * (C6_H * c1 - C6_H0) / g.g[3]
        },
    },
    RefTerm {
        power: 3,
        label: "t^3a I: h^3 mu^2 tanh sech^8 (5457854338516959 cosh2 - 24770261997884659) / (2^41 sqrt2 n^3 G3)",
        coeff: |x, p, g| {
            let (th, s2h) = kink_parts(x);
            let (_, c2, _) = coshes(x);
            qham_t3_shape(p) * p.mu * p.mu * th * s2h.powi(4) * (C6_I * c2 - C6_I0)
                / (S2 * g.g[3])
        },
    },
    RefTerm {
        power: 3,
        label: "t^3a J: -39184595250890985 h^3 mu^2 tanh sech^10 / (2^42 sqrt2 n^3 G3)",
        coeff: |x, p, g| {
            let (th, s2h) = kink_parts(x);
            -C6_J * qham_t3_shape(p) * p.mu * p.mu * th * s2h.powi(5) / (S2 * g.g[3])
        },
    },
];

// ----------------------------------------------------------------- Ch6 exp

static CH6_EXP_NIM: &[RefTerm] = &[
    RefTerm { power: 0, label: "u0 exp", coeff: |x, p, _| (p.lambda * x).exp() },
    RefTerm {
        power: 1,
        label: "t^a: l E (l^5 + l^3 (1 - 81 E^2) + mu E) / G1",
        coeff: |x, p, g| {
            let l = p.lambda;
            let e = (l * x).exp();
            l * e * (l.powi(5) + l.powi(3) * (1.0 - 81.0 * e * e) + p.mu * e) / g.g[1]
        },
    },
    RefTerm {
        power: 2,
        label: "t^2a: l^2 E (151875 l^6 E^4 - 1092 mu l^3 E^3 - 3 (324 l^6 (61 l^2 + 7) - mu^2) E^2 + (l^2+1)^2 l^6 + 6 mu (11 l^2 + 3) l^3 E) / G2",
        coeff: |x, p, g| {
            let l = p.lambda;
            let m = p.mu;
            let e = (l * x).exp();
            l * l * e
                * (151875.0 * l.powi(6) * e.powi(4) - 1092.0 * m * l.powi(3) * e.powi(3)
                    - 3.0 * (324.0 * l.powi(6) * (61.0 * l * l + 7.0) - m * m) * e * e
                    + (l * l + 1.0).powi(2) * l.powi(6)
                    + 6.0 * m * (11.0 * l * l + 3.0) * l.powi(3) * e)
                / g.g[2]
        },
    },
    RefTerm {
        power: 3,
        label: "t^3a: -l^3 E^4 G2 (-303750 l^11 E + 47258883 l^9 E^3 - 649539 mu l^6 E^2 + 1860 mu l^6 - 2 mu^3) / (G1^2 G3)",
        coeff: |x, p, g| {
            let l = p.lambda;
            let m = p.mu;
            let e = (l * x).exp();
            -l.powi(3) * e.powi(4) * g.g[2]
                * (-303750.0 * l.powi(11) * e + 47258883.0 * l.powi(9) * e.powi(3)
                    - 649539.0 * m * l.powi(6) * e * e
                    + 1860.0 * m * l.powi(6)
                    - 2.0 * m.powi(3))
                / (g.g[1] * g.g[1] * g.g[3])
        },
    },
    RefTerm {
        power: 3,
        label: "t^3a: l^6 E^2 G2 (-243 l^10 E - 486 l^8 E + mu l^7 - 248 l^6 E + 303750 l^6 E^3 - 1860 mu l^5 E^2) / (G1^2 G3)",
        coeff: |x, p, g| {
            let l = p.lambda;
            let m = p.mu;
            let e = (l * x).exp();
            l.powi(6) * e * e * g.g[2]
                * (-243.0 * l.powi(10) * e - 486.0 * l.powi(8) * e + m * l.powi(7)
                    - 248.0 * l.powi(6) * e
                    + 303750.0 * l.powi(6) * e.powi(3)
                    - 1860.0 * m * l.powi(5) * e * e)
                / (g.g[1] * g.g[1] * g.g[3])
        },
    },
    RefTerm {
        power: 3,
        label: "t^3a: l^6 E^2 G2 (2 mu l^5 + mu l^3 + 3 l^2 mu^2 E + 3 mu^2 E^2 - 2280 mu E^3) / (G1^2 G3)",
        coeff: |x, p, g| {
            let l = p.lambda;
            let m = p.mu;
            let e = (l * x).exp();
            l.powi(6) * e * e * g.g[2]
                * (2.0 * m * l.powi(5) + m * l.powi(3) + 3.0 * l * l * m * m * e
                    + 3.0 * m * m * e * e
                    - 2280.0 * m * e.powi(3))
                / (g.g[1] * g.g[1] * g.g[3])
        },
    },
    RefTerm {
        power: 4,
        label: "t^4a: 3 l^10 E^5 G3 (101250 l^8 - 15752961 l^6 E^2 + 1162261467 l^6 E^4 + 50625 l^6) / (G1^3 G4)",
        coeff: |x, p, g| {
            let l = p.lambda;
            let e = (l * x).exp();
            3.0 * l.powi(10) * e.powi(5) * g.g[3]
                * (101250.0 * l.powi(8) - 15752961.0 * l.powi(6) * e * e
                    + 1162261467.0 * l.powi(6) * e.powi(4)
                    + 50625.0 * l.powi(6))
                / (g.g[1].powi(3) * g.g[4])
        },
    },
    RefTerm {
        power: 4,
        label: "t^4a: 3 l^10 E^5 G3 (209952 mu l^5 E - 625 mu^2 l^2 + 194481 mu^2 E^2 - 625 mu^2) / (G1^3 G4)",
        coeff: |x, p, g| {
            let l = p.lambda;
            let m = p.mu;
            let e = (l * x).exp();
            3.0 * l.powi(10) * e.powi(5) * g.g[3]
                * (209952.0 * m * l.powi(5) * e - 625.0 * m * m * l * l
                    + 194481.0 * m * m * e * e
                    - 625.0 * m * m)
                / (g.g[1].powi(3) * g.g[4])
        },
    },
    RefTerm {
        power: 4,
        label: "t^4a: -3 l^7 E^3 G3 (27 l^9 + 512 mu l^8 E + 256 mu l^6 E - 209952 mu l^6 E^3 + 26873856 mu l^6 E^5 + 432 mu^3 E) / (G1^3 G4)",
        coeff: |x, p, g| {
            let l = p.lambda;
            let m = p.mu;
            let e = (l * x).exp();
            -3.0 * l.powi(7) * e.powi(3) * g.g[3]
                * (27.0 * l.powi(9)
                    + 512.0 * m * l.powi(8) * e
                    + 256.0 * m * l.powi(6) * e
                    - 209952.0 * m * l.powi(6) * e.powi(3)
                    + 26873856.0 * m * l.powi(6) * e.powi(5)
                    + 432.0 * m.powi(3) * e)
                / (g.g[1].powi(3) * g.g[4])
        },
    },
    RefTerm {
        power: 4,
        label: "t^4a: -3 l^7 E^3 G3 (27 l^15 - 50625 l^13 E^2 + 18 l^13 + 15752961 l^11 E^4 + 81 l^11 + 256 mu l^10 E) / (G1^3 G4)",
        coeff: |x, p, g| {
            let l = p.lambda;
            let m = p.mu;
            let e = (l * x).exp();
            -3.0 * l.powi(7) * e.powi(3) * g.g[3]
                * (27.0 * l.powi(15) - 50625.0 * l.powi(13) * e * e + 18.0 * l.powi(13)
                    + 15752961.0 * l.powi(11) * e.powi(4)
                    + 81.0 * l.powi(11)
                    + 256.0 * m * l.powi(10) * e)
                / (g.g[1].powi(3) * g.g[4])
        },
    },
];

static CH6_EXP_QHAM: &[RefTerm] = &[
    RefTerm { power: 0, label: "u0 exp", coeff: |x, p, _| (p.lambda * x).exp() },
    RefTerm {
        power: 1,
        label: "t^a: -l h (3n^2+3nh+h^2) E (l^5 + l^3 (1 - 81 E^2) + mu E) / (n^3 G1)",
        coeff: |x, p, g| {
            let l = p.lambda;
            let e = (l * x).exp();
            qham_t1_shape(p) * l * e
                * (l.powi(5) + l.powi(3) * (1.0 - 81.0 * e * e) + p.mu * e)
                / g.g[1]
        },
    },
    RefTerm {
        power: 2,
        label: "t^2a: l^2 h^2 (3n+2h) E (151875 l^6 E^4 - 1092 mu l^3 E^3 - 3 (324 l^6 (61 l^2 + 7) - mu^2) E^2) / (n^3 G2)",
        coeff: |x, p, g| {
            let l = p.lambda;
            let m = p.mu;
            let e = (l * x).exp();
            qham_t2_shape(p) * l * l * e
                * (151875.0 * l.powi(6) * e.powi(4) - 1092.0 * m * l.powi(3) * e.powi(3)
                    - 3.0 * (324.0 * l.powi(6) * (61.0 * l * l + 7.0) - m * m) * e * e)
                / g.g[2]
        },
    },
    RefTerm {
        power: 2,
        label: "t^2a: l^2 h^2 (3n+2h) E ((l^2+1)^2 l^6 + 6 mu (11 l^2 + 3) l^3 E) / (n^3 G2)",
        coeff: |x, p, g| {
            let l = p.lambda;
            let e = (l * x).exp();
            qham_t2_shape(p) * l * l * e
                * ((l * l + 1.0).powi(2) * l.powi(6)
                    + 6.0 * p.mu * (11.0 * l * l + 3.0) * l.powi(3) * e)
                / g.g[2]
        },
    },
    RefTerm {
        power: 3,
        label: "t^3a Q1: l^12 h^3 E (-151875 (16357 l^2 + 709) E^4 - (l^2+1)^3 + 1093955625 E^6) / (n^3 G3)",
        coeff: |x, p, g| {
            let l = p.lambda;
            let e = (l * x).exp();
            qham_t3_shape(p) * l.powi(12) * e
                * (-151875.0 * (16357.0 * l * l + 709.0) * e.powi(4)
                    - (l * l + 1.0).powi(3)
                    + 1093955625.0 * e.powi(6))
                / g.g[3]
        },
    },
    RefTerm {
        power: 3,
        label: "t^3a Q2: l^12 h^3 E (243 (177877 l^4 + 40178 l^2 + 2269) E^6) / (n^3 G3)",
        coeff: |x, p, g| {
            let l = p.lambda;
            let e = (l * x).exp();
            qham_t3_shape(p) * l.powi(12) * e
                * (243.0 * (177877.0 * l.powi(4) + 40178.0 * l * l + 2269.0) * e.powi(6))
                / g.g[3]
        },
    },
    RefTerm {
        power: 3,
        label: "t^3a Q3: 3 mu l^6 h^3 E^3 (1586896 l^5 E - 1718982 l^3 E^3 - 795 mu l^2 + 3695 mu E^2) / (n^3 G3)",
        coeff: |x, p, g| {
            let l = p.lambda;
            let m = p.mu;
            let e = (l * x).exp();
            3.0 * qham_t3_shape(p) * m * l.powi(6) * e.powi(3)
                * (1586896.0 * l.powi(5) * e - 1718982.0 * l.powi(3) * e.powi(3)
                    - 795.0 * m * l * l
                    + 3695.0 * m * e * e)
                / g.g[3]
        },
    },
    RefTerm {
        power: 3,
        label: "t^3a Q4: mu l^3 h^3 E^2 (12 (26716 l^6 - mu^2) E^2 - 297 mu l^3 E - 2 (2113 l^4 + 1106 l^2 + 145) l^6) / (n^3 G3)",
        coeff: |x, p, g| {
            let l = p.lambda;
            let m = p.mu;
            let e = (l * x).exp();
            qham_t3_shape(p) * m * l.powi(3) * e * e
                * (12.0 * (26716.0 * l.powi(6) - m * m) * e * e - 297.0 * m * l.powi(3) * e
                    - 2.0 * (2113.0 * l.powi(4) + 1106.0 * l * l + 145.0) * l.powi(6))
                / g.g[3]
        },
    },
    RefTerm {
        power: 3,
        label: "t^3a Q5: h^3 E^3 G2 (243 l^16 + l^14 (486 - 303750 E^2) + l^12 (47258883 E^4 - 303750 E^2 + 243) - 3 mu^2 l^6) / (n^3 G1^2 G3)",
        coeff: |x, p, g| {
            let l = p.lambda;
            let m = p.mu;
            let e = (l * x).exp();
            qham_t3_shape(p) * e.powi(3) * g.g[2]
                * (243.0 * l.powi(16) + l.powi(14) * (486.0 - 303750.0 * e * e)
                    + l.powi(12) * (47258883.0 * e.powi(4) - 303750.0 * e * e + 243.0)
                    - 3.0 * m * m * l.powi(6))
                / (g.g[1] * g.g[1] * g.g[3])
        },
    },
    RefTerm {
        power: 3,
        // The source garbles one product here ("-1860 l^8 E^2 2 l^8"); the
        // reading consistent with the companion component listing is
        // "- 1860 l^8 E^2 + 2 l^8".
        label: "t^3a Q6: -mu h^3 E^2 G2 (l^10 - 1860 l^8 E^2 + 2 l^8 - 1860 l^6 E^2 + 649539 l^6 E^4 + l^6) / (n^3 G1^2 G3)",
        coeff: |x, p, g| {
            let l = p.lambda;
            let e = (l * x).exp();
            -qham_t3_shape(p) * p.mu * e * e * g.g[2]
                * (l.powi(10) - 1860.0 * l.powi(8) * e * e + 2.0 * l.powi(8)
                    - 1860.0 * l.powi(6) * e * e
                    + 649539.0 * l.powi(6) * e.powi(4)
                    + l.powi(6))
                / (g.g[1] * g.g[1] * g.g[3])
        },
    },
    RefTerm {
        power: 3,
        label: "t^3a Q7: -mu h^3 E^2 G2 (3 mu l^5 E - 2280 mu l^3 E^3 + 2 mu^2 E^2) / (n^3 G1^2 G3)",
        coeff: |x, p, g| {
            let l = p.lambda;
            let m = p.mu;
            let e = (l * x).exp();
            -qham_t3_shape(p) * m * e * e * g.g[2]
                * (3.0 * m * l.powi(5) * e - 2280.0 * m * l.powi(3) * e.powi(3)
                    + 2.0 * m * m * e * e)
                / (g.g[1] * g.g[1] * g.g[3])
        },
    },
];

/// The terms of a printed form, in source order.
pub fn ref_terms(case: RefCase) -> Result<&'static [RefTerm]> {
    match (case.equation, case.ic, case.method) {
        (_, _, RefMethod::Exact) => {
            if case.equation == Equation::Ch4 && case.ic == RefIc::TanhKink {
                Err(TfchError::Structural(
                    "the exact solution has no term decomposition; use ref_exact".into(),
                ))
            } else {
                Err(TfchError::Config(
                    "the exact solution is only defined for the fourth-order kink problem"
                        .into(),
                ))
            }
        }
        (Equation::Ch4, RefIc::TanhKink, RefMethod::NimU2) => Ok(CH4_TANH_NIM),
        (Equation::Ch4, RefIc::TanhKink, RefMethod::QhamU3) => Ok(CH4_TANH_QHAM),
        (Equation::Ch4, RefIc::ExpLambda, RefMethod::NimU2) => Ok(CH4_EXP_NIM),
        (Equation::Ch4, RefIc::ExpLambda, RefMethod::QhamU3) => Ok(CH4_EXP_QHAM),
        (Equation::Ch6, RefIc::TanhKink, RefMethod::NimU2) => Ok(CH6_TANH_NIM),
        (Equation::Ch6, RefIc::TanhKink, RefMethod::QhamU3) => Ok(CH6_TANH_QHAM),
        (Equation::Ch6, RefIc::ExpLambda, RefMethod::NimU2) => Ok(CH6_EXP_NIM),
        (Equation::Ch6, RefIc::ExpLambda, RefMethod::QhamU3) => Ok(CH6_EXP_QHAM),
    }
}

/// Exact travelling-kink solution of the fourth-order problem at mu = 1.
pub fn ref_exact(x: f64, t: f64) -> f64 {
    ((x + t) / S2).tanh()
}

/// Evaluate a printed form (or the exact solution) at one point.
pub fn ref_eval(case: RefCase, x: f64, t: f64, p: &RefParams) -> Result<f64> {
    p.validate(case)?;
    if !x.is_finite() || !t.is_finite() || t < 0.0 {
        return Err(TfchError::Domain(format!(
            "x must be finite and t nonnegative, got x = {x}, t = {t}"
        )));
    }
    if case.method == RefMethod::Exact {
        if case.equation != Equation::Ch4 || case.ic != RefIc::TanhKink {
            return Err(TfchError::Config(
                "the exact solution is only defined for the fourth-order kink problem".into(),
            ));
        }
        return Ok(ref_exact(x, t));
    }
    let g = Gammas::new(p.alpha)?;
    let terms = ref_terms(case)?;
    let mut acc = 0.0;
    for term in terms {
        let tk = if term.power == 0 {
            1.0
        } else if t == 0.0 {
            0.0
        } else {
            t.powf(term.power as f64 * p.alpha)
        };
        acc += (term.coeff)(x, p, &g) * tk;
    }
    if !acc.is_finite() {
        return Err(TfchError::Numerical {
            context: format!("reference evaluation at x = {x}, t = {t}"),
            index: 0,
        });
    }
    Ok(acc)
}

/// Published absolute-error table of the fourth-order kink problem at
/// alpha = mu = n = 1, h = -1: rows of (t, x, |U_2^NIM - exact|,
/// |U_3^qHAM - exact|).
pub const TABLE1: [(f64, f64, f64, f64); 16] = [
    (0.01, 0.0, 1.151971e-7, 2.356975e-12),
    (0.01, 1.0, 1.810671e-7, 2.823765e-10),
    (0.01, 2.0, 6.167394e-8, 5.749512e-11),
    (0.01, 3.0, 1.165205e-9, 3.757261e-11),
    (0.05, 0.0, 1.306675e-5, 7.361971e-9),
    (0.05, 1.0, 2.224480e-5, 1.736922e-7),
    (0.05, 2.0, 7.794449e-6, 3.622408e-8),
    (0.05, 3.0, 1.257660e-7, 2.328496e-8),
    (0.08, 0.0, 4.940148e-5, 7.713501e-8),
    (0.08, 1.0, 8.990891e-5, 1.124520e-6),
    (0.08, 2.0, 3.218897e-5, 2.387229e-7),
    (0.08, 3.0, 4.548965e-7, 1.516340e-7),
    (0.1, 0.0, 9.109940e-5, 2.352262e-7),
    (0.1, 1.0, 1.740220e-4, 2.722916e-6),
    (0.1, 2.0, 6.321236e-5, 5.848640e-7),
    (0.1, 3.0, 8.108096e-7, 3.686350e-7),
];

/// Regenerate the error table from the printed closed forms: rows of
/// (t, x, |U_2^NIM - exact|, |U_3^qHAM - exact|) in `TABLE1` order.
pub fn table1_reference() -> Result<Vec<(f64, f64, f64, f64)>> {
    let p = RefParams::table1();
    let nim = RefCase {
        equation: Equation::Ch4,
        ic: RefIc::TanhKink,
        method: RefMethod::NimU2,
    };
    let qham = RefCase { method: RefMethod::QhamU3, ..nim };
    TABLE1
        .iter()
        .map(|&(t, x, _, _)| {
            let exact = ref_exact(x, t);
            let en = (ref_eval(nim, x, t, &p)? - exact).abs();
            let eq = (ref_eval(qham, x, t, &p)? - exact).abs();
            Ok((t, x, en, eq))
        })
        .collect()
}

/// Frozen recurrence values for the sixth-order kink q-HAM u_3: the t^{3a}
/// coefficient field as an odd polynomial sum c_1 T + c_3 T^3 + ... +
/// c_15 T^15 in T = tanh(x/sqrt2), at mu = 1, computed once from the exact
/// series expansion of the recurrence at 40-digit precision.
///
/// Returns `None` for parameter sets outside the frozen table.
pub fn oracle_qham_u3_t3a(alpha: f64, n: u32, h: f64) -> Option<&'static [f64; 8]> {
    const A1_N1: [f64; 8] = [
        871903.07276435495936,
        -15517320.419619612158,
        92863960.682940550602,
        -270359072.4734590711,
        433437124.97918545289,
        -392355202.32379419053,
        188516117.43323500243,
        -37457510.951252487086,
    ];
    const A05_N1: [f64; 8] = [
        3935275.053322981147,
        -70036835.45268335864,
        419139951.29081501429,
        -1220265231.2271680393,
        1956322014.4142672666,
        -1770900712.337546774,
        850870638.29357419901,
        -169065100.03458128907,
    ];
    const A1_N2: [f64; 8] = [
        108987.88409554436992,
        -1939665.0524524515197,
        11607995.085367568825,
        -33794884.059182383888,
        54179640.622398181611,
        -49044400.290474273816,
        23564514.679154375303,
        -4682188.8689065608858,
    ];
    const A05_N2: [f64; 8] = [
        491909.38166537264338,
        -8754604.4315854198301,
        52392493.911351876786,
        -152533153.90339600492,
        244540251.80178340832,
        -221362589.04219334675,
        106358829.78669677488,
        -21133137.504322661134,
    ];
    match (alpha, n, h) {
        (a, 1, hh) if a == 1.0 && hh == -1.0 => Some(&A1_N1),
        (a, 1, hh) if a == 0.5 && hh == -1.0 => Some(&A05_N1),
        (a, 2, hh) if a == 1.0 && hh == -0.5 => Some(&A1_N2),
        (a, 2, hh) if a == 0.5 && hh == -0.5 => Some(&A05_N2),
        _ => None,
    }
}

/// Frozen recurrence values for the sixth-order kink NIM u_2: the t^{3a}
/// coefficient field as an odd polynomial c_1 T + ... + c_11 T^11 in
/// T = tanh(x/sqrt2), at mu = 1.
pub fn oracle_nim_u2_t3a(alpha: f64) -> Option<&'static [f64; 6]> {
    const A1: [f64; 6] = [
        45.117851130197757921,
        -517.5892556509887896,
        1879.8249579113843054,
        -3017.3535533905932738,
        2240.0,
        -630.0,
    ];
    const A05: [f64; 6] = [
        129.64136065510254292,
        -1487.2378378442908908,
        5401.4776686458858402,
        -8670.0454574009881214,
        6436.4024569659695709,
        -1810.2381910216789418,
    ];
    if alpha == 1.0 {
        Some(&A1)
    } else if alpha == 0.5 {
        Some(&A05)
    } else {
        None
    }
}

/// Deviation of the printed sixth-order kink q-HAM u_3 t^{3a} block from
/// the recurrence at alpha = mu = n = 1, h = -1, as an odd polynomial
/// d_1 T + d_3 T^3 + ... + d_11 T^11 in T = tanh(x/sqrt2). The printed
/// T^13 and T^15 coefficients agree with the recurrence to f64 rounding
/// (~3e-17 relative), so the deviation is entirely degree <= 11.
pub const QHAM_U3_T3A_PRINTED_DEVIATION: [f64; 6] = [
    2100.6535954791958144,
    -12255.075168354456037,
    23921.593145751413485,
    -21579.921572879991101,
    9911.6250000102906255,
    -2098.8750000113319065,
];

/// Evaluate an odd polynomial c_1 T + c_3 T^3 + ... at T = tanh(x/sqrt2).
pub fn eval_odd_poly(coeffs: &[f64], x: f64) -> f64 {
    let t = (x / S2).tanh();
    let t2 = t * t;
    // Horner over T^2, then one multiply by T
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * t2 + c) * t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case(eq: Equation, ic: RefIc, method: RefMethod) -> RefCase {
        RefCase { equation: eq, ic, method }
    }

    fn all_series_cases() -> Vec<RefCase> {
        let mut v = Vec::new();
        for eq in [Equation::Ch4, Equation::Ch6] {
            for ic in [RefIc::TanhKink, RefIc::ExpLambda] {
                for m in [RefMethod::NimU2, RefMethod::QhamU3] {
                    v.push(case(eq, ic, m));
                }
            }
        }
        v
    }

    #[test]
    fn leading_term_is_initial_condition() {
        let p = RefParams { lambda: 0.3, ..RefParams::table1() };
        for c in all_series_cases() {
            for &x in &[-2.0, -0.5, 0.0, 1.0, 2.5] {
                let expect = match c.ic {
                    RefIc::TanhKink => (x / S2).tanh(),
                    RefIc::ExpLambda => (p.lambda * x).exp(),
                };
                let got = ref_eval(c, x, 0.0, &p).unwrap();
                assert_eq!(got, expect, "{c:?} at x = {x}");
            }
        }
    }

    #[test]
    fn exact_solution_values() {
        assert_eq!(ref_exact(1.0, 0.0), (1.0f64 / S2).tanh());
        let c = case(Equation::Ch4, RefIc::TanhKink, RefMethod::Exact);
        let p = RefParams::table1();
        let v = ref_eval(c, 0.5, 0.25, &p).unwrap();
        assert!((v - (0.75f64 / S2).tanh()).abs() < 1e-16);
        // exact is rejected elsewhere
        let bad = case(Equation::Ch6, RefIc::TanhKink, RefMethod::Exact);
        assert!(ref_eval(bad, 0.0, 0.0, &p).is_err());
    }

    #[test]
    fn parameter_validation() {
        let c = case(Equation::Ch4, RefIc::TanhKink, RefMethod::QhamU3);
        let p = RefParams::table1();
        assert!(ref_eval(c, 0.0, 0.1, &RefParams { alpha: 0.0, ..p }).is_err());
        assert!(ref_eval(c, 0.0, 0.1, &RefParams { alpha: 1.2, ..p }).is_err());
        assert!(ref_eval(c, 0.0, 0.1, &RefParams { h: 0.0, ..p }).is_err());
        assert!(ref_eval(c, 0.0, 0.1, &RefParams { n: 0, ..p }).is_err());
        assert!(ref_eval(c, f64::NAN, 0.1, &p).is_err());
        assert!(ref_eval(c, 0.0, -0.1, &p).is_err());
        let nim_exp = case(Equation::Ch4, RefIc::ExpLambda, RefMethod::NimU2);
        assert!(ref_eval(nim_exp, 0.0, 0.1, &RefParams { anomalous_h3: f64::NAN, ..p })
            .is_err());
    }

    #[test]
    fn qham_duality_at_unit_parameters() {
        // n = 1, h = -1: the t^a weight -h(3n^2+3nh+h^2)/n^3 collapses to 1
        // and the q-HAM t^a term equals the NIM one, for all four problems.
        let p = RefParams { lambda: 0.2, ..RefParams::table1() };
        let g = Gammas::new(p.alpha).unwrap();
        for eq in [Equation::Ch4, Equation::Ch6] {
            for ic in [RefIc::TanhKink, RefIc::ExpLambda] {
                let nim = ref_terms(case(eq, ic, RefMethod::NimU2)).unwrap();
                let qham = ref_terms(case(eq, ic, RefMethod::QhamU3)).unwrap();
                let tn: f64 = nim
                    .iter()
                    .filter(|t| t.power == 1)
                    .map(|t| (t.coeff)(0.7, &p, &g))
                    .sum();
                let tq: f64 = qham
                    .iter()
                    .filter(|t| t.power == 1)
                    .map(|t| (t.coeff)(0.7, &p, &g))
                    .sum();
                assert!((tn - tq).abs() <= 1e-12 * tn.abs().max(1.0), "{eq:?} {ic:?}");
            }
        }
    }

    #[test]
    fn table1_regenerates_within_one_percent() {
        let rows = table1_reference().unwrap();
        for ((t, x, en, eq), (pt, px, pn, pq)) in rows.iter().zip(TABLE1.iter()) {
            assert_eq!(t, pt);
            assert_eq!(x, px);
            assert!((en - pn).abs() / pn < 0.01, "NIM at t={t} x={x}: {en} vs {pn}");
            assert!((eq - pq).abs() / pq < 0.01, "qHAM at t={t} x={x}: {eq} vs {pq}");
        }
    }

    #[test]
    fn ch4_kink_qham_tracks_exact_at_unit_parameters() {
        // n = 1, h = -1, alpha = mu = 1: U_3 should track the exact kink.
        let p = RefParams::table1();
        let c = case(Equation::Ch4, RefIc::TanhKink, RefMethod::QhamU3);
        let mut worst = 0.0f64;
        for i in 0..=60 {
            let x = -3.0 + i as f64 * 0.1;
            for &t in &[0.01, 0.03, 0.05] {
                let d = (ref_eval(c, x, t, &p).unwrap() - ref_exact(x, t)).abs();
                worst = worst.max(d);
            }
        }
        assert!(worst < 1e-6, "max deviation {worst}");
    }

    #[test]
    fn ch6_kink_u1_golden_value() {
        // t^a coefficient of the sixth-order kink forms at x = 1, mu = 1:
        // tanh(1/sqrt2) sech^2(1/sqrt2) / sqrt2.
        let p = RefParams::table1();
        let g = Gammas::new(1.0).unwrap();
        let terms = ref_terms(case(Equation::Ch6, RefIc::TanhKink, RefMethod::NimU2)).unwrap();
        let c1: f64 = terms
            .iter()
            .filter(|t| t.power == 1)
            .map(|t| (t.coeff)(1.0, &p, &g))
            .sum();
        assert!((c1 - 0.270_927_451_559_588).abs() < 1e-14, "{c1}");
    }

    #[test]
    fn frozen_oracle_matches_printed_terms_up_to_frozen_deviation() {
        // printed t^{3a} sum = frozen recurrence polynomial + frozen
        // deviation polynomial, pointwise. This ties the transcription,
        // the frozen oracle, and the localization claim together.
        let p = RefParams::table1();
        let g = Gammas::new(1.0).unwrap();
        let terms = ref_terms(case(Equation::Ch6, RefIc::TanhKink, RefMethod::QhamU3)).unwrap();
        let frozen = oracle_qham_u3_t3a(1.0, 1, -1.0).unwrap();
        for &x in &[-2.0, -0.7, 0.5, 1.0, 1.5, 3.0] {
            let printed: f64 = terms
                .iter()
                .filter(|t| t.power == 3)
                .map(|t| (t.coeff)(x, &p, &g))
                .sum();
            let expect =
                eval_odd_poly(frozen, x) + eval_odd_poly(&QHAM_U3_T3A_PRINTED_DEVIATION, x);
            // coefficients reach ~4e8, so allow ~1e-16 relative in that scale
            assert!(
                (printed - expect).abs() < 1e-6,
                "x = {x}: printed {printed} expect {expect}"
            );
        }
    }

    #[test]
    fn nim_u2_t3a_oracle_at_origin_is_odd() {
        for alpha in [1.0, 0.5] {
            let c = oracle_nim_u2_t3a(alpha).unwrap();
            assert_eq!(eval_odd_poly(c, 0.0), 0.0);
            assert_eq!(eval_odd_poly(c, 1.0), -eval_odd_poly(c, -1.0));
        }
        assert!(oracle_nim_u2_t3a(0.7).is_none());
        assert!(oracle_qham_u3_t3a(0.7, 1, -1.0).is_none());
    }
}
