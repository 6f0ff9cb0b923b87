//! Stress relaxation moduli of a fractional viscoelastic element under three
//! memory kernels: the classical power law and its exponential and
//! Mittag-Leffler regularizations. Includes the log-spaced comparison dataset
//! the CLI renders as CSV.

use crate::error::{Error, Result};
use crate::grid::NormalizationFn;
use crate::special::{gamma_fn, mittag_leffler};

/// Material constants for the relaxation models: a viscosity coefficient, a
/// fractional order in (0, 1), and the normalization applied by the
/// regularized kernels.
#[derive(Clone, Debug)]
pub struct MaterialParams {
    eta: f64,
    alpha: f64,
    norm: NormalizationFn,
}

impl MaterialParams {
    pub fn new(eta: f64, alpha: f64, norm: NormalizationFn) -> Result<Self> {
        if !eta.is_finite() || eta <= 0.0 {
            return Err(Error::domain(format!(
                "viscosity coefficient must be positive and finite, got {eta}"
            )));
        }
        if !alpha.is_finite() || alpha <= 0.0 || alpha >= 1.0 {
            return Err(Error::domain(format!(
                "relaxation order must lie in (0, 1), got {alpha}"
            )));
        }
        Ok(Self { eta, alpha, norm })
    }

    #[inline]
    pub fn eta(&self) -> f64 {
        self.eta
    }

    #[inline]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    #[inline]
    pub fn normalization(&self) -> &NormalizationFn {
        &self.norm
    }
}

/// Power-law modulus eta t^(-alpha) / Gamma(1 - alpha). Singular at t = 0, so
/// only t > 0 is accepted.
pub fn relaxation_scott_blair(p: &MaterialParams, t: f64) -> Result<f64> {
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::domain(format!(
            "the power-law modulus needs t > 0, got {t}"
        )));
    }
    Ok(p.eta * t.powf(-p.alpha) / gamma_fn(1.0 - p.alpha)?)
}

/// Exponential-kernel modulus eta M(alpha)/(1 - alpha) exp(-alpha t/(1 - alpha)),
/// finite at t = 0.
pub fn relaxation_cf(p: &MaterialParams, t: f64) -> Result<f64> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::domain(format!(
            "the exponential-kernel modulus needs t >= 0, got {t}"
        )));
    }
    let m = p.norm.value(p.alpha)?;
    Ok(p.eta * m / (1.0 - p.alpha) * (-p.alpha * t / (1.0 - p.alpha)).exp())
}

/// Mittag-Leffler-kernel modulus
/// eta B(alpha)/(1 - alpha) E_alpha(-alpha t^alpha/(1 - alpha)), finite at t = 0.
pub fn relaxation_abc(p: &MaterialParams, t: f64) -> Result<f64> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::domain(format!(
            "the Mittag-Leffler-kernel modulus needs t >= 0, got {t}"
        )));
    }
    let b = p.norm.value(p.alpha)?;
    let z = -p.alpha * t.powf(p.alpha) / (1.0 - p.alpha);
    Ok(p.eta * b / (1.0 - p.alpha) * mittag_leffler(p.alpha, z)?)
}

/// The three relaxation models the workbench compares.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelaxationModel {
    ScottBlair,
    CfMaxwell,
    AbcMaxwell,
}

/// One model evaluated on a time grid. Construction checks the physical
/// shape of the curve: finite, non-negative, non-increasing.
#[derive(Clone, Debug)]
pub struct RelaxationCurve {
    pub model: RelaxationModel,
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

/// Modulus curve for one model on a strictly increasing positive time grid.
pub fn relaxation_curve(
    model: RelaxationModel,
    p: &MaterialParams,
    times: &[f64],
) -> Result<RelaxationCurve> {
    if times.is_empty() {
        return Err(Error::domain("time grid must be non-empty".to_string()));
    }
    for w in times.windows(2) {
        if !(w[1] > w[0]) {
            return Err(Error::domain(
                "time grid must be strictly increasing".to_string(),
            ));
        }
    }
    if !(times[0] > 0.0) || !times[times.len() - 1].is_finite() {
        return Err(Error::domain(
            "time grid must be positive and finite".to_string(),
        ));
    }
    let eval = |t: f64| match model {
        RelaxationModel::ScottBlair => relaxation_scott_blair(p, t),
        RelaxationModel::CfMaxwell => relaxation_cf(p, t),
        RelaxationModel::AbcMaxwell => relaxation_abc(p, t),
    };
    let values: Vec<f64> = times.iter().map(|&t| eval(t)).collect::<Result<_>>()?;
    for w in values.windows(2) {
        if !(w[1] <= w[0]) {
            return Err(Error::range(
                "relaxation curve lost monotonicity; the model evaluation is outside its trusted range"
                    .to_string(),
            ));
        }
    }
    if values.iter().any(|&v| !v.is_finite() || v < 0.0) {
        return Err(Error::range(
            "relaxation curve left the expected non-negative range".to_string(),
        ));
    }
    Ok(RelaxationCurve {
        model,
        times: times.to_vec(),
        values,
    })
}

/// Columns of the three-model comparison: the power-law modulus next to the
/// regularized moduli with their normalizations divided out.
#[derive(Clone, Debug)]
pub struct Figure1Data {
    pub times: Vec<f64>,
    pub scott_blair: Vec<f64>,
    pub cf_over_m: Vec<f64>,
    pub abc_over_b: Vec<f64>,
}

/// Default comparison grid: 401 log-spaced points on [1e-2, 1e2], with the
/// decades hit exactly.
pub fn default_figure1_grid() -> Vec<f64> {
    (0..=400)
        .map(|k| 10f64.powf(-2.0 + k as f64 / 100.0))
        .collect()
}

/// The three-model comparison dataset on the given time grid, computed with a
/// constant-one normalization so the regularized columns are the moduli
/// divided by M(alpha) and B(alpha).
pub fn figure1_dataset(alpha: f64, eta: f64, times: &[f64]) -> Result<Figure1Data> {
    let p = MaterialParams::new(eta, alpha, NormalizationFn::constant_one())?;
    let sb = relaxation_curve(RelaxationModel::ScottBlair, &p, times)?;
    let cf = relaxation_curve(RelaxationModel::CfMaxwell, &p, times)?;
    let abc = relaxation_curve(RelaxationModel::AbcMaxwell, &p, times)?;
    Ok(Figure1Data {
        times: times.to_vec(),
        scott_blair: sb.values,
        cf_over_m: cf.values,
        abc_over_b: abc.values,
    })
}
