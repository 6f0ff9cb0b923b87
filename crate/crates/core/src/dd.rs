//! Double-double arithmetic (roughly 31 significant decimal digits).
//!
//! A value is an unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`. The
//! error-free transforms (`two_sum`, `two_prod` via FMA) follow Dekker and
//! Bailey. The module exists for one purpose: summing the cancellation-heavy
//! kernel series in the special-function evaluator, which needs a gamma
//! function and an exponential at this precision but nothing else, so the
//! transcendental surface is deliberately small: `exp`, `ln`, and a Stirling
//! gamma with an exact-rational Bernoulli tail.

/// Double-double number.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline(always)]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline(always)]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline(always)]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

const LN2: Dd = Dd { hi: 0.693_147_180_559_945_3, lo: 2.319_046_813_846_299_6e-17 };
const SQRT_2PI: Dd = Dd { hi: 2.506_628_274_631_000_7, lo: -1.832_857_998_045_916_7e-16 };
const EULER_E: Dd = Dd { hi: 2.718_281_828_459_045, lo: 1.445_646_891_729_250_2e-16 };

/// Coefficients of the Stirling correction mu(x) = sum c_j x^(1-2j), as exact
/// rationals c_j = B_2j / (2j (2j-1)). Fourteen terms keep the truncation
/// error of the tail below 2e-35 for x >= 25.
const BINET_RATIONALS: [(f64, f64); 14] = [
    (1.0, 12.0),
    (-1.0, 360.0),
    (1.0, 1260.0),
    (-1.0, 1680.0),
    (1.0, 1188.0),
    (-691.0, 360_360.0),
    (1.0, 156.0),
    (-3617.0, 122_400.0),
    (43_867.0, 244_188.0),
    (-174_611.0, 125_400.0),
    (854_513.0, 63_756.0),
    (-236_364_091.0, 1_506_960.0),
    (8_553_103.0, 3900.0),
    (-23_749_461_029.0, 657_720.0),
];

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) { self.neg() } else { self }
    }

    #[inline]
    pub fn add(self, b: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn add_f64(self, b: f64) -> Dd {
        let (s1, s2) = two_sum(self.hi, b);
        let (hi, lo) = quick_two_sum(s1, s2 + self.lo);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, b: Dd) -> Dd {
        self.add(b.neg())
    }

    #[inline]
    pub fn mul(self, b: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, b.hi);
        let p2 = p2 + self.hi * b.lo + self.lo * b.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Dd {
        let (p1, p2) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p1, p2 + self.lo * b);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self.sub(b.mul_f64(q1));
        let q2 = r.hi / b.hi;
        let r = r.sub(b.mul_f64(q2));
        let q3 = r.hi / b.hi;
        let (s, e) = quick_two_sum(q1, q2);
        let (hi, lo) = quick_two_sum(s, e + q3);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div_f64(self, b: f64) -> Dd {
        self.div(Dd::from_f64(b))
    }

    /// Exact scaling by 2^n.
    #[inline]
    fn ldexp(self, n: i32) -> Dd {
        let s = (2.0f64).powi(n);
        Dd { hi: self.hi * s, lo: self.lo * s }
    }

    /// Nonnegative integer power by binary exponentiation. The base is never
    /// squared past the highest needed bit, so intermediates stay no larger
    /// than base times the result.
    pub fn powi(self, n: u32) -> Dd {
        let mut base = self;
        let mut n = n;
        let mut acc = Dd::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(base);
            }
            n >>= 1;
            if n == 0 {
                break;
            }
            base = base.mul(base);
        }
        acc
    }

    /// exp(self) with argument reduction against a two-part ln 2 and a
    /// 25-term Taylor tail on |r| <= ln(2)/2.
    pub fn exp(self) -> Dd {
        if self.hi > 709.7 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Dd::ZERO;
        }
        let n = (self.hi / LN2.hi).round();
        let r = self.sub(LN2.mul_f64(n));
        let mut term = Dd::ONE;
        let mut sum = Dd::ONE;
        for k in 1..=25 {
            term = term.mul(r).div_f64(k as f64);
            sum = sum.add(term);
        }
        sum.ldexp(n as i32)
    }

    /// Natural log by two Newton corrections of the f64 seed, each solving
    /// exp(y) = x, so no standalone log expansion is needed.
    pub fn ln(self) -> Dd {
        debug_assert!(self.hi > 0.0);
        let mut y = Dd::from_f64(self.hi.ln());
        for _ in 0..2 {
            let e = y.neg().exp();
            y = y.add(self.mul(e).add_f64(-1.0));
        }
        y
    }

    /// Gamma for positive argument: Stirling with the exact-rational Bernoulli
    /// tail at x >= 25, reached by upward recursion for smaller x. The factor
    /// x^(x-1/2) e^(-x) is regrouped as (x/e)^q exp(r (ln x - 1)) e^(-1/2)
    /// with x - 1/2 = q + r, |r| <= 1/2: the integer power stays inside f64
    /// range over the whole domain and no exp sees an argument past ~2.1,
    /// which keeps the reduction error of exp out of the result. Arguments
    /// beyond 170.6 overflow to infinity.
    pub fn gamma(self) -> Dd {
        debug_assert!(self.hi > 0.0);
        if self.hi > 170.6 {
            return Dd::from_f64(f64::INFINITY);
        }
        let mut x = self;
        let mut scale = Dd::ONE;
        while x.hi < 25.0 {
            scale = scale.mul(x);
            x = x.add_f64(1.0);
        }
        let e = x.add_f64(-0.5);
        let q = e.hi.round();
        let r = e.sub(Dd::from_f64(q));
        let base = x.div(EULER_E);
        let pow = base.powi(q as u32).mul(r.mul(x.ln().add_f64(-1.0)).exp());
        let w = Dd::ONE.div(x.mul(x));
        let mut mu = Dd::ZERO;
        for &(num, den) in BINET_RATIONALS.iter().rev() {
            mu = mu.mul(w).add(Dd::from_f64(num).div_f64(den));
        }
        mu = mu.div(x);
        let g = SQRT_2PI.mul(pow).mul(Dd::from_f64(-0.5).exp()).mul(mu.exp());
        g.div(scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_dd_close(v: Dd, hi: f64, lo: f64, rel: f64) {
        let expect = Dd { hi, lo };
        let scale = hi.abs().max(f64::MIN_POSITIVE);
        let err = v.sub(expect).abs().hi / scale;
        assert!(err <= rel, "got {:?} want {:e}+{:e}, rel err {:e}", v, hi, lo, err);
    }

    #[test]
    fn arithmetic_identities_hold_beyond_f64() {
        let third = Dd::ONE.div_f64(3.0);
        let one = third.mul_f64(3.0);
        assert!(one.sub(Dd::ONE).abs().hi < 1e-31);
        let x = Dd::from_f64(1.0).add_f64(1e-20);
        assert_eq!(x.hi, 1.0);
        assert_eq!(x.lo, 1e-20);
        let y = x.sub(Dd::ONE);
        assert!((y.to_f64() - 1e-20).abs() < 1e-36);
    }

    #[test]
    fn powi_matches_repeated_multiplication() {
        let x = Dd::from_f64(1.5).add_f64(1e-18);
        let mut ref_pow = Dd::ONE;
        for _ in 0..13 {
            ref_pow = ref_pow.mul(x);
        }
        assert!(x.powi(13).sub(ref_pow).abs().hi <= 1e-28 * ref_pow.hi);
    }

    #[test]
    fn exp_reference_values() {
        let cases = [
            (1.0, 2.718281828459045, 1.4456468917292502e-16),
            (-0.3, 0.7408182206817179, -1.805530505953e-18),
            (0.5, 1.6487212707001282, -4.731568479435833e-17),
            (183.6, 5.4508832156923375e+79, 3.10464846265103e+63),
            (-60.25, 6.819577438961235e-27, -4.000031413879361e-43),
            (-7.125, 0.0008047330101246132, 2.4410959048953827e-20),
            (0.0025, 1.0025031276057952, -1.0064603832496376e-16),
        ];
        for (x, hi, lo) in cases {
            assert_dd_close(Dd::from_f64(x).exp(), hi, lo, 4e-30);
        }
    }

    #[test]
    fn ln_reference_values() {
        let cases = [
            (42.5, 3.7495040759303713, -1.2641892004398288e-16),
            (2.0, 0.6931471805599453, 2.3190468138462996e-17),
            (60.0, 4.0943445622221, 2.70513385762801e-16),
            (0.034, -3.3813947543659757, 1.0613681690361819e-16),
        ];
        for (x, hi, lo) in cases {
            assert_dd_close(Dd::from_f64(x).ln(), hi, lo, 3e-31);
        }
    }

    #[test]
    fn gamma_reference_values() {
        let cases = [
            (0.5, 1.772453850905516, -7.666586499825799e-17),
            (1.5, 0.886226925452758, -3.8332932499128993e-17),
            (0.3, 2.991568987687591, -8.576219985605117e-17),
            (3.25, 2.5492569667185294, -1.3394559147364056e-16),
            (25.25, 1.3821549138373968e+24, 119338690.36885908),
            (41.5, 5.208503505432716e+48, -2.955759022969223e+32),
            (60.0, 1.3868311854568984e+80, -2.8672092482841673e+63),
            (89.75, 5.368942291405935e+135, 2.4382598110629205e+119),
            (12.7, 225322480.24141848, 4.723185157947628e-09),
            (24.999, 6.184669304916471e+23, -26945503.452234134),
            (170.25, 1.540656022718819e+305, -9.427461830459881e+287),
        ];
        for (x, hi, lo) in cases {
            assert_dd_close(Dd::from_f64(x).gamma(), hi, lo, 6e-30);
        }
    }

    #[test]
    fn gamma_small_integers_are_factorials() {
        assert!(Dd::from_f64(1.0).gamma().sub(Dd::ONE).abs().hi < 1e-30);
        assert!(Dd::from_f64(5.0).gamma().add_f64(-24.0).abs().hi < 1e-28);
    }

    #[test]
    fn gamma_overflows_to_infinity_past_f64_range() {
        assert!(Dd::from_f64(172.0).gamma().hi.is_infinite());
    }
}
