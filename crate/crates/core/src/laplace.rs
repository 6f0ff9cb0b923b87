//! Numerical inverse Laplace transform on the fixed Talbot contour, plus the
//! minimal complex arithmetic needed to sample transforms off the real axis.
//! The inverter serves as an independent oracle for solver and modulus
//! cross-checks.

use std::f64::consts::PI;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Number of contour nodes used by `laplace_invert`. The Talbot rule
/// amplifies f64 roundoff like exp(2M/5), so more nodes stop helping well
/// before the usual arbitrary-precision choices; 24 keeps the validation
/// pairs at or below 1e-8 relative error over t in [0.1, 10].
pub const TALBOT_NODES: usize = 24;

/// Complex number with f64 parts.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Cplx {
    pub re: f64,
    pub im: f64,
}

impl Cplx {
    #[inline]
    pub const fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    #[inline]
    pub const fn from_real(re: f64) -> Self {
        Self { re, im: 0.0 }
    }

    #[inline]
    pub fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }

    #[inline]
    pub fn arg(self) -> f64 {
        self.im.atan2(self.re)
    }

    pub fn exp(self) -> Self {
        let m = self.re.exp();
        Self::new(m * self.im.cos(), m * self.im.sin())
    }

    /// Principal-branch real power |z|^p exp(i p arg z).
    pub fn powf(self, p: f64) -> Self {
        let m = self.abs().powf(p);
        let th = p * self.arg();
        Self::new(m * th.cos(), m * th.sin())
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl Add for Cplx {
    type Output = Cplx;
    #[inline]
    fn add(self, rhs: Cplx) -> Cplx {
        Cplx::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Add<f64> for Cplx {
    type Output = Cplx;
    #[inline]
    fn add(self, rhs: f64) -> Cplx {
        Cplx::new(self.re + rhs, self.im)
    }
}

impl Sub for Cplx {
    type Output = Cplx;
    #[inline]
    fn sub(self, rhs: Cplx) -> Cplx {
        Cplx::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Neg for Cplx {
    type Output = Cplx;
    #[inline]
    fn neg(self) -> Cplx {
        Cplx::new(-self.re, -self.im)
    }
}

impl Mul for Cplx {
    type Output = Cplx;
    #[inline]
    fn mul(self, rhs: Cplx) -> Cplx {
        Cplx::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

impl Mul<f64> for Cplx {
    type Output = Cplx;
    #[inline]
    fn mul(self, rhs: f64) -> Cplx {
        Cplx::new(self.re * rhs, self.im * rhs)
    }
}

impl Div for Cplx {
    type Output = Cplx;
    #[inline]
    fn div(self, rhs: Cplx) -> Cplx {
        let d = rhs.re * rhs.re + rhs.im * rhs.im;
        Cplx::new(
            (self.re * rhs.re + self.im * rhs.im) / d,
            (self.im * rhs.re - self.re * rhs.im) / d,
        )
    }
}

impl Div<f64> for Cplx {
    type Output = Cplx;
    #[inline]
    fn div(self, rhs: f64) -> Cplx {
        Cplx::new(self.re / rhs, self.im / rhs)
    }
}

/// Value f(t) recovered from the Laplace transform by the fixed Talbot rule
/// with the default node count.
pub fn laplace_invert(transform: impl Fn(Cplx) -> Cplx, t: f64) -> Result<f64> {
    laplace_invert_with_nodes(transform, t, TALBOT_NODES)
}

/// Fixed Talbot inversion with an explicit node count. The contour is
/// s(theta) = r theta (cot theta + i) with r = 2 nodes / (5 t).
pub fn laplace_invert_with_nodes(
    transform: impl Fn(Cplx) -> Cplx,
    t: f64,
    nodes: usize,
) -> Result<f64> {
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::domain(format!(
            "inversion time must be positive and finite, got {t}"
        )));
    }
    if nodes < 2 {
        return Err(Error::domain(format!("node count must be at least 2, got {nodes}")));
    }
    let m = nodes as f64;
    let r = 2.0 * m / (5.0 * t);
    let first = transform(Cplx::from_real(r));
    if !first.is_finite() {
        return Err(Error::convergence(format!(
            "transform sample at s = {r} is not finite"
        )));
    }
    let mut acc = 0.5 * first.re * (r * t).exp();
    for k in 1..nodes {
        let th = k as f64 * PI / m;
        let cot = th.cos() / th.sin();
        let s = Cplx::new(r * th * cot, r * th);
        let sigma = th + (th * cot - 1.0) * cot;
        let fs = transform(s);
        if !fs.is_finite() {
            return Err(Error::convergence(format!(
                "transform sample at s = {} + {}i is not finite",
                s.re, s.im
            )));
        }
        acc += ((s * t).exp() * fs * Cplx::new(1.0, sigma)).re;
    }
    let value = acc * r / m;
    if !value.is_finite() {
        return Err(Error::convergence(
            "talbot accumulation left the f64 range".to_string(),
        ));
    }
    Ok(value)
}
