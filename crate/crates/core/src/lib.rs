//! Numerical workbench for fractional-calculus operators with nonsingular
//! exponential and Mittag-Leffler memory kernels, built around the
//! three-parameter kernel family t^{beta-1} E^gamma_{alpha,beta}(omega t^alpha).

pub mod dd;
pub mod error;
pub mod fde;
pub mod grid;
pub mod kahan;
pub mod laplace;
pub mod operators;
pub mod special;
pub mod visco;

pub use error::{Error, Result};
pub use fde::{
    solve_abc_caputo_form, solve_abc_integral, solve_caputo_adams, solve_cf_integral,
    solve_cf_ode, FDEProblem, PathTag, Trajectory,
};
pub use grid::{GridFunction, NormalizationFn, Smoothness};
pub use kahan::Kahan;
pub use laplace::{laplace_invert, laplace_invert_with_nodes, Cplx};
pub use operators::{
    abc_derivative, abc_series, caputo_derivative, cf_derivative, cf_series, prabhakar_integral,
    prabhakar_integral_series, rl_integral, OperatorKind, OperatorSpec, SeriesEval,
};
pub use special::{
    gamma_fn, mittag_leffler, pochhammer, prabhakar_function, prabhakar_kernel,
    series_truncation, PrabhakarParams, Truncation,
};
pub use visco::{
    default_figure1_grid, figure1_dataset, relaxation_abc, relaxation_cf, relaxation_curve,
    relaxation_scott_blair, Figure1Data, MaterialParams, RelaxationCurve, RelaxationModel,
};
