//! Sampled functions on uniform time grids and the normalization functions
//! that scale the nonsingular-kernel derivatives.
//!
//! Operators that need the derivative of their input take it from the grid
//! function: an exact derivative channel when the caller supplied one, a
//! second-order finite-difference synthesis when the samples are declared
//! smooth enough, and a precondition error when they are not.

use crate::error::{Error, Result};

/// Declared regularity of sampled data, deciding how operators may treat it.
///
/// `Rough` admits integration only; derivative-based operators refuse it.
/// `Continuous` admits finite-difference derivative synthesis.
/// `Differentiable` promises the attached exact derivative channel.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Smoothness {
    Rough,
    Continuous,
    Differentiable,
}

/// Uniformly sampled function on [a, a + (n-1) h].
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    a: f64,
    h: f64,
    values: Vec<f64>,
    deriv: Option<Vec<f64>>,
    smoothness: Smoothness,
}

fn check_samples(a: f64, h: f64, values: &[f64]) -> Result<()> {
    if !a.is_finite() {
        return Err(Error::domain(format!("grid origin must be finite, got {a}")));
    }
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::domain(format!("grid step must be positive and finite, got {h}")));
    }
    if values.len() < 2 {
        return Err(Error::domain(format!("grid needs at least 2 samples, got {}", values.len())));
    }
    if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::domain(format!("grid samples must be finite, found {bad}")));
    }
    Ok(())
}

impl GridFunction {
    /// Samples assumed continuous with an integrable derivative, so
    /// derivative synthesis is permitted.
    pub fn new(a: f64, h: f64, values: Vec<f64>) -> Result<Self> {
        check_samples(a, h, &values)?;
        Ok(Self { a, h, values, deriv: None, smoothness: Smoothness::Continuous })
    }

    /// Samples carrying no smoothness claim. Integral operators accept them;
    /// derivative-based operators report a precondition error.
    pub fn rough(a: f64, h: f64, values: Vec<f64>) -> Result<Self> {
        check_samples(a, h, &values)?;
        Ok(Self { a, h, values, deriv: None, smoothness: Smoothness::Rough })
    }

    /// Samples with an exact derivative channel of the same length.
    pub fn with_derivative(a: f64, h: f64, values: Vec<f64>, deriv: Vec<f64>) -> Result<Self> {
        check_samples(a, h, &values)?;
        if deriv.len() != values.len() {
            return Err(Error::domain(format!(
                "derivative channel has {} samples, values have {}",
                deriv.len(),
                values.len()
            )));
        }
        if let Some(bad) = deriv.iter().find(|v| !v.is_finite()) {
            return Err(Error::domain(format!("derivative samples must be finite, found {bad}")));
        }
        Ok(Self { a, h, values, deriv: Some(deriv), smoothness: Smoothness::Differentiable })
    }

    /// Sample a closure at n uniform points starting at a.
    pub fn from_fn(a: f64, h: f64, n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = (0..n).map(|i| f(a + h * i as f64)).collect();
        Self::new(a, h, values)
    }

    /// Sample a closure and its exact derivative at n uniform points.
    pub fn from_fn_with_derivative(
        a: f64,
        h: f64,
        n: usize,
        f: impl Fn(f64) -> f64,
        df: impl Fn(f64) -> f64,
    ) -> Result<Self> {
        let values = (0..n).map(|i| f(a + h * i as f64)).collect();
        let deriv = (0..n).map(|i| df(a + h * i as f64)).collect();
        Self::with_derivative(a, h, values, deriv)
    }

    #[inline]
    pub fn a(&self) -> f64 {
        self.a
    }

    #[inline]
    pub fn step(&self) -> f64 {
        self.h
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn derivative(&self) -> Option<&[f64]> {
        self.deriv.as_deref()
    }

    #[inline]
    pub fn smoothness(&self) -> Smoothness {
        self.smoothness
    }

    #[inline]
    pub fn time(&self, i: usize) -> f64 {
        self.a + self.h * i as f64
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.values.len()).map(|i| self.time(i)).collect()
    }

    /// Derivative samples for operators that differentiate their input:
    /// the exact channel when present, otherwise a second-order synthesis
    /// (central differences inside, one-sided stencils at the ends). The flag
    /// reports whether synthesis happened.
    pub(crate) fn derivative_samples(&self) -> Result<(Vec<f64>, bool)> {
        if let Some(d) = &self.deriv {
            return Ok((d.clone(), false));
        }
        if self.smoothness == Smoothness::Rough {
            return Err(Error::precondition(
                "operator needs the input's derivative, but the samples are marked rough; \
                 construct the grid function with a derivative channel or as continuous",
            ));
        }
        let n = self.values.len();
        if n < 3 {
            return Err(Error::precondition(
                "derivative synthesis needs at least 3 samples",
            ));
        }
        let f = &self.values;
        let h = self.h;
        let mut d = vec![0.0; n];
        d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
        for i in 1..n - 1 {
            d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
        }
        d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
        Ok((d, true))
    }
}

/// Normalization function M(alpha) with M(0) = M(1) = 1, either the constant
/// one or a table interpolated linearly over [0, 1].
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizationFn {
    repr: Repr,
}

#[derive(Clone, Debug, PartialEq)]
enum Repr {
    One,
    Table(Vec<(f64, f64)>),
}

impl NormalizationFn {
    /// The constant normalization M(alpha) = 1.
    pub fn constant_one() -> Self {
        Self { repr: Repr::One }
    }

    /// Tabulated normalization over [0, 1]. The table must start at alpha = 0
    /// and end at alpha = 1 with both values equal to 1 within 1e-12, have
    /// strictly increasing abscissae, and positive finite values.
    pub fn table(pairs: &[(f64, f64)]) -> Result<Self> {
        if pairs.len() < 2 {
            return Err(Error::domain("normalization table needs at least 2 entries"));
        }
        let first = pairs[0];
        let last = pairs[pairs.len() - 1];
        if first.0 != 0.0 || last.0 != 1.0 {
            return Err(Error::domain(format!(
                "normalization table must span alpha in [0, 1], got [{}, {}]",
                first.0, last.0
            )));
        }
        if (first.1 - 1.0).abs() > 1e-12 || (last.1 - 1.0).abs() > 1e-12 {
            return Err(Error::domain(
                "normalization must satisfy M(0) = M(1) = 1 within 1e-12",
            ));
        }
        for w in pairs.windows(2) {
            if !(w[1].0 > w[0].0) {
                return Err(Error::domain(
                    "normalization table abscissae must be strictly increasing",
                ));
            }
        }
        if let Some(bad) = pairs.iter().find(|(_, m)| !(m.is_finite() && *m > 0.0)) {
            return Err(Error::domain(format!(
                "normalization values must be positive and finite, found {}",
                bad.1
            )));
        }
        Ok(Self { repr: Repr::Table(pairs.to_vec()) })
    }

    /// M(alpha) for alpha in [0, 1].
    pub fn value(&self, alpha: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::domain(format!(
                "normalization is defined on [0, 1], got alpha = {alpha}"
            )));
        }
        match &self.repr {
            Repr::One => Ok(1.0),
            Repr::Table(pairs) => {
                let j = pairs.partition_point(|(x, _)| *x <= alpha);
                if j == pairs.len() {
                    return Ok(pairs[pairs.len() - 1].1);
                }
                let (x0, y0) = pairs[j - 1];
                let (x1, y1) = pairs[j];
                Ok(y0 + (y1 - y0) * (alpha - x0) / (x1 - x0))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_validates_inputs() {
        assert!(GridFunction::new(0.0, 0.1, vec![1.0, 2.0, 3.0]).is_ok());
        assert!(GridFunction::new(0.0, 0.0, vec![1.0, 2.0]).is_err());
        assert!(GridFunction::new(0.0, 0.1, vec![1.0]).is_err());
        assert!(GridFunction::new(0.0, 0.1, vec![1.0, f64::NAN]).is_err());
        assert!(GridFunction::with_derivative(0.0, 0.1, vec![1.0, 2.0], vec![1.0]).is_err());
    }

    #[test]
    fn synthesized_derivative_is_second_order() {
        let f = |t: f64| t.sin();
        let df = |t: f64| t.cos();
        let mut errs = Vec::new();
        for &n in &[101usize, 201] {
            let h = 1.0 / (n - 1) as f64;
            let g = GridFunction::from_fn(0.0, h, n, f).unwrap();
            let (d, synthesized) = g.derivative_samples().unwrap();
            assert!(synthesized);
            let worst = d
                .iter()
                .enumerate()
                .map(|(i, v)| (v - df(g.time(i))).abs())
                .fold(0.0f64, f64::max);
            errs.push(worst);
        }
        let order = (errs[0] / errs[1]).log2();
        assert!(order > 1.8, "observed order {order}, errors {errs:?}");
    }

    #[test]
    fn exact_derivative_channel_is_passed_through() {
        let g = GridFunction::from_fn_with_derivative(0.0, 0.5, 4, |t| t * t, |t| 2.0 * t).unwrap();
        assert_eq!(g.smoothness(), Smoothness::Differentiable);
        let (d, synthesized) = g.derivative_samples().unwrap();
        assert!(!synthesized);
        assert_eq!(d, vec![0.0, 1.0, 2.0, 3.0]);
    }

    #[test]
    fn rough_samples_refuse_derivative_synthesis() {
        let g = GridFunction::rough(0.0, 0.1, vec![1.0, 4.0, 2.0]).unwrap();
        let err = g.derivative_samples().unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn normalization_table_interpolates_and_validates() {
        let m = NormalizationFn::constant_one();
        assert_eq!(m.value(0.3).unwrap(), 1.0);
        assert!(m.value(1.5).is_err());
        let t = NormalizationFn::table(&[(0.0, 1.0), (0.5, 1.2), (1.0, 1.0)]).unwrap();
        assert!((t.value(0.25).unwrap() - 1.1).abs() < 1e-15);
        assert_eq!(t.value(1.0).unwrap(), 1.0);
        assert!(NormalizationFn::table(&[(0.1, 1.0), (1.0, 1.0)]).is_err());
        assert!(NormalizationFn::table(&[(0.0, 1.1), (1.0, 1.0)]).is_err());
        assert!(NormalizationFn::table(&[(0.0, 1.0), (0.5, -1.0), (1.0, 1.0)]).is_err());
    }
}
