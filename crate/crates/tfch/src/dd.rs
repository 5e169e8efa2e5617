//! Double-double arithmetic: an unevaluated sum of two f64 giving ~31
//! significant digits.
//!
//! Coefficient fields are stored and combined at this precision because the
//! solvers feed numerical derivatives back into further differentiation;
//! the ~1e-16 representation noise of plain f64 fields is amplified by
//! dx^-4 per fourth-derivative pass and would dominate the higher series
//! coefficients. At double-double precision the same amplification lands
//! around 1e-25 and the stencil truncation bias is all that remains.

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
pub const TWO: Dd = Dd { hi: 2.0, lo: 0.0 };
pub const SQRT2: Dd = Dd { hi: 1.414_213_562_373_095_1, lo: -9.667_293_313_452_913e-17 };
pub const LN2: Dd = Dd { hi: 0.693_147_180_559_945_3, lo: 2.319_046_813_846_299_6e-17 };

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let v = s - a;
    (s, (a - (s - v)) + (b - v))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    #[inline]
    pub fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    /// Renormalized value from an unevaluated hi + lo pair.
    #[inline]
    pub fn from_parts(hi: f64, lo: f64) -> Self {
        let (h, l) = quick_two_sum(hi, lo);
        Self { hi: h, lo: l }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    #[inline]
    pub fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    #[inline]
    pub fn add(self, o: Self) -> Self {
        let (s, e) = two_sum(self.hi, o.hi);
        let e = e + self.lo + o.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Self { hi, lo }
    }

    #[inline]
    pub fn sub(self, o: Self) -> Self {
        self.add(-o)
    }

    #[inline]
    pub fn mul(self, o: Self) -> Self {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + self.hi * o.lo + self.lo * o.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, s: f64) -> Self {
        let (p, e) = two_prod(self.hi, s);
        let e = e + self.lo * s;
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }

    #[inline]
    pub fn div(self, o: Self) -> Self {
        let q0 = self.hi / o.hi;
        let r = self.sub(o.mul_f64(q0));
        let q1 = r.hi / o.hi;
        let r = r.sub(o.mul_f64(q1));
        let q2 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q0, q1);
        Self { hi, lo }.add(Self::from_f64(q2))
    }

    #[inline]
    pub fn div_f64(self, s: f64) -> Self {
        self.div(Self::from_f64(s))
    }

    pub fn powi(self, mut n: u32) -> Self {
        let mut base = self;
        let mut acc = ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            n >>= 1;
        }
        acc
    }
}

impl std::ops::Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl std::ops::Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        Dd::add(self, o)
    }
}

impl std::ops::Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        Dd::sub(self, o)
    }
}

impl std::ops::Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        Dd::mul(self, o)
    }
}

impl std::ops::Div for Dd {
    type Output = Dd;
    fn div(self, o: Dd) -> Dd {
        Dd::div(self, o)
    }
}

/// exp at double-double precision: range reduction by ln 2, then the
/// Taylor series on |r| <= ln(2)/2 with exact integer divisions.
pub fn exp(x: Dd) -> Dd {
    if x.hi > 709.0 {
        return Dd::from_f64(f64::INFINITY);
    }
    if x.hi < -745.0 {
        return ZERO;
    }
    let k = (x.hi / LN2.hi).round();
    let r = x.sub(LN2.mul_f64(k));
    let er = expm1_small(r).add(ONE);
    let scale = 2f64.powi(k as i32);
    Dd { hi: er.hi * scale, lo: er.lo * scale }
}

/// e^r - 1 on |r| <= ~0.35 without cancellation:
/// r * (1 + r/2 * (1 + r/3 * (...))).
fn expm1_small(r: Dd) -> Dd {
    let mut acc = ONE;
    for n in (2..=26u32).rev() {
        acc = ONE.add(r.div_f64(n as f64).mul(acc));
    }
    r.mul(acc)
}

/// tanh at double-double precision.
pub fn tanh(x: Dd) -> Dd {
    if x.hi < 0.0 || (x.hi == 0.0 && x.lo < 0.0) {
        return -tanh(-x);
    }
    if x.hi > 40.0 {
        return ONE;
    }
    let t2 = x.mul_f64(2.0);
    if t2.hi <= 0.34 {
        // tanh = em / (em + 2) with em = e^(2x) - 1, stable near zero
        let em = expm1_small(t2);
        em.div(em.add(TWO))
    } else {
        let e = exp(t2);
        ONE.sub(TWO.div(e.add(ONE)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Dd, hi: f64, lo: f64) -> bool {
        let r = a.sub(Dd { hi, lo });
        r.to_f64().abs() <= 1e-30 * hi.abs().max(1e-300)
    }

    #[test]
    fn representation_identities() {
        let a = Dd::from_f64(0.1);
        let b = Dd::from_f64(3.0e-17);
        let s = a.add(b);
        assert_eq!(s.sub(a).to_f64(), 3.0e-17);
        assert_eq!(SQRT2.mul(SQRT2).sub(TWO).to_f64().abs().max(0.0) < 1e-31, true);
    }

    #[test]
    fn arithmetic_round_trip() {
        let a = Dd { hi: 1.234_567_890_123_456_7, lo: 5.4e-17 };
        let b = Dd { hi: -0.987_654_321, lo: 1.1e-18 };
        let p = a.mul(b);
        let q = p.div(b);
        assert!(q.sub(a).to_f64().abs() < 1e-30);
        assert!((a + b - b - a).to_f64().abs() < 1e-31);
    }

    #[test]
    fn exp_known_values() {
        // e and e^fl(0.1) against 36-digit references
        assert!(close(exp(ONE), 2.718_281_828_459_045, 1.445_646_891_729_250_2e-16));
        assert!(close(
            exp(Dd::from_f64(0.1)),
            1.105_170_918_075_647_7,
            -8.149_523_913_327_619e-17
        ));
        assert_eq!(exp(ZERO), ONE);
        let x = Dd::from_f64(2.5);
        let prod = exp(x).mul(exp(-x)).sub(ONE);
        assert!(prod.to_f64().abs() < 1e-30);
    }

    #[test]
    fn tanh_known_values() {
        assert!(close(tanh(ONE), 0.761_594_155_955_764_9, 3.709_021_448_216_492_4e-17));
        let t = tanh(ONE.div(SQRT2));
        assert!(close(t, 0.608_859_365_013_913_8, 1.011_734_842_635_517_6e-17));
        assert_eq!(tanh(ZERO), ZERO);
        assert_eq!(tanh(Dd::from_f64(50.0)), ONE);
        assert_eq!(tanh(Dd::from_f64(-50.0)).to_f64(), -1.0);
    }

    #[test]
    fn tanh_odd_and_identity() {
        for &v in &[0.05, 0.17, 0.3, 1.3, 7.5] {
            let x = Dd::from_f64(v);
            let t = tanh(x);
            assert!(t.add(tanh(-x)).to_f64().abs() < 1e-31, "odd at {v}");
            // 1 - tanh^2 = sech^2 = 4 e^{2x} / (e^{2x}+1)^2
            let e = exp(x.mul_f64(2.0));
            let sech2 = e.mul_f64(4.0).div(e.add(ONE).mul(e.add(ONE)));
            let lhs = ONE.sub(t.mul(t));
            assert!(lhs.sub(sech2).to_f64().abs() < 1e-29, "identity at {v}");
        }
    }

    #[test]
    fn powi_matches_repeated_mul() {
        let x = Dd::from_f64(0.37);
        let mut acc = ONE;
        for _ in 0..9 {
            acc = acc.mul(x);
        }
        assert!(x.powi(9).sub(acc).to_f64().abs() < 1e-32);
        assert_eq!(x.powi(0), ONE);
    }
}
