//! Command line front end for the fractional operator workbench: point
//! evaluation of the kernel special functions, grid application of the
//! operators to built-in test functions, relaxation equation solvers with
//! selectable computation routes, dual route agreement checks, and the
//! three model relaxation modulus comparison table.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use prabhakar::{
    abc_derivative, abc_series, caputo_derivative, cf_derivative, cf_series,
    default_figure1_grid, figure1_dataset, gamma_fn, mittag_leffler, prabhakar_function,
    prabhakar_integral, prabhakar_integral_series, prabhakar_kernel, rl_integral,
    series_truncation, solve_abc_caputo_form, solve_abc_integral, solve_caputo_adams,
    solve_cf_integral, solve_cf_ode, Error, FDEProblem, GridFunction, NormalizationFn,
    OperatorKind, OperatorSpec, PrabhakarParams, Result, Trajectory,
};

#[derive(Parser)]
#[command(name = "prabhakar", version, about = "Workbench for fractional operators with nonsingular kernels")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a kernel special function at a point.
    Eval(EvalArgs),
    /// Apply a fractional operator to a built-in function on a uniform grid.
    Apply(ApplyArgs),
    /// Solve a fractional relaxation equation and print the trajectory.
    Solve(SolveArgs),
    /// Check that two independent computation routes agree.
    Crosscheck(CrosscheckArgs),
    /// Print the three model relaxation modulus comparison table.
    Figure1(Figure1Args),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EvalFn {
    /// Mittag-Leffler function of alpha at z.
    MittagLeffler,
    /// Three-parameter Mittag-Leffler function of (alpha, beta, gamma) at z.
    Prabhakar,
    /// Kernel t^(beta-1) E^gamma_(alpha,beta)(omega t^alpha) at t.
    Kernel,
    /// Gamma function at z.
    Gamma,
    /// Series truncation plan for arguments up to z: term count and tail bound.
    Truncation,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Builtin {
    /// Constant one.
    Const1,
    /// Identity t.
    T,
    /// Square t^2.
    T2,
    /// Sine of t.
    Sin,
    /// Exponential decay exp(-t).
    ExpDecay,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ApplyOp {
    /// Riemann-Liouville integral of order alpha.
    Rl,
    /// Caputo derivative of order alpha.
    Caputo,
    /// Caputo-Fabrizio derivative of order alpha.
    Cf,
    /// Atangana-Baleanu derivative of order alpha.
    Abc,
    /// Prabhakar integral with kernel parameters (alpha, beta, gamma, omega).
    Prabhakar,
    /// Prabhakar integral through its term-by-term series expansion.
    PrabhakarSeries,
    /// Caputo-Fabrizio derivative through the kernel series expansion.
    CfSeries,
    /// Atangana-Baleanu derivative through the kernel series expansion.
    AbcSeries,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolveOp {
    /// Caputo-Fabrizio derivative on the left side.
    Cf,
    /// Atangana-Baleanu derivative on the left side.
    Abc,
    /// Caputo derivative on the left side.
    Caputo,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Rhs {
    /// Pure relaxation, f(t, y) = -y.
    Decay,
    /// Constant forcing, f(t, y) = 1.
    Const,
    /// Damped sinusoidal forcing, f(t, y) = -y + sin t.
    Forced,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Route {
    /// Second kind Volterra integral reformulation.
    Integral,
    /// Equivalent first order ordinary differential equation.
    Ode,
    /// Equivalent Caputo-form equation solved by a graded L1 scheme.
    Caputo,
    /// Fractional Adams predictor-corrector.
    Adams,
}

#[derive(Args)]
struct EvalArgs {
    /// Function to evaluate.
    #[arg(long = "fn", value_enum)]
    function: EvalFn,
    /// First kernel parameter alpha.
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    alpha: f64,
    /// Second kernel parameter beta.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    beta: f64,
    /// Third kernel parameter gamma.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    gamma: f64,
    /// Kernel frequency omega.
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    omega: f64,
    /// Function argument; for truncation, the largest argument magnitude.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    z: f64,
    /// Time argument for the kernel.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    t: f64,
    /// Tail tolerance for the truncation plan.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Write the output to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ApplyArgs {
    /// Operator to apply.
    #[arg(long, value_enum)]
    op: ApplyOp,
    /// Built-in function to apply it to.
    #[arg(long, value_enum, default_value = "t2")]
    f: Builtin,
    /// Operator order alpha.
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    alpha: f64,
    /// Second kernel parameter beta.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    beta: f64,
    /// Third kernel parameter gamma.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    gamma: f64,
    /// Kernel frequency omega.
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    omega: f64,
    /// End of the time grid.
    #[arg(long = "T", default_value_t = 1.0)]
    horizon: f64,
    /// Grid step.
    #[arg(long = "h", default_value_t = 1e-3)]
    step: f64,
    /// Series term count for the series operators; planned from tol if absent.
    #[arg(long = "K")]
    terms: Option<usize>,
    /// Tail tolerance used to plan the series term count.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Write the output to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    /// Operator on the left side of the equation.
    #[arg(long, value_enum)]
    op: SolveOp,
    /// Right side of the equation.
    #[arg(long, value_enum, default_value = "decay")]
    rhs: Rhs,
    /// Computation route; each operator has a default.
    #[arg(long, value_enum)]
    route: Option<Route>,
    /// Initial value.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    y0: f64,
    /// Operator order alpha.
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    alpha: f64,
    /// End of the time grid.
    #[arg(long = "T", default_value_t = 5.0)]
    horizon: f64,
    /// Grid step.
    #[arg(long = "h", default_value_t = 1e-3)]
    step: f64,
    /// Write the output to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CrosscheckArgs {
    /// Which agreement check to run (1 through 5).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=5))]
    theorem: u8,
    /// Built-in function the operators are applied to.
    #[arg(long, value_enum, default_value = "t2")]
    f: Builtin,
    /// Operator order alpha.
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    /// Second kernel parameter beta.
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    /// Third kernel parameter gamma.
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
    /// Kernel frequency omega.
    #[arg(long, allow_negative_numbers = true)]
    omega: Option<f64>,
    /// End of the time grid.
    #[arg(long = "T")]
    horizon: Option<f64>,
    /// Grid step.
    #[arg(long = "h")]
    step: Option<f64>,
    /// Pass threshold for the discrepancy.
    #[arg(long)]
    tol: Option<f64>,
    /// Write the output to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Figure1Args {
    /// Relaxation order alpha.
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    alpha: f64,
    /// Viscosity coefficient eta.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    eta: f64,
    /// Write the output to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() {
    let cli = Cli::try_parse().unwrap_or_else(|e| e.exit());
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Command::Eval(a) => cmd_eval(a),
        Command::Apply(a) => cmd_apply(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Crosscheck(a) => cmd_crosscheck(a),
        Command::Figure1(a) => cmd_figure1(a),
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::Range(_) | Error::Precondition(_) => 3,
        Error::Convergence(_) => 4,
    }
}

/// Formats one CSV value with twelve significant digits, switching to
/// scientific notation at or above 1e6 and below 1e-4 in magnitude.
fn format_value(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let a = v.abs();
    if a >= 1e6 || a < 1e-4 {
        format!("{v:.11e}")
    } else {
        let dp = (11 - a.log10().floor() as i32).clamp(0, 17) as usize;
        format!("{v:.dp$}")
    }
}

fn emit(out: &Option<PathBuf>, body: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| Error::precondition(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn builtin_fns(b: Builtin) -> (fn(f64) -> f64, fn(f64) -> f64) {
    match b {
        Builtin::Const1 => (|_| 1.0, |_| 0.0),
        Builtin::T => (|t| t, |_| 1.0),
        Builtin::T2 => (|t| t * t, |t| 2.0 * t),
        Builtin::Sin => (f64::sin, f64::cos),
        Builtin::ExpDecay => (|t| (-t).exp(), |t| -(-t).exp()),
    }
}

fn grid_len(horizon: f64, step: f64) -> Result<usize> {
    if !horizon.is_finite() || horizon <= 0.0 {
        return Err(Error::domain(format!("horizon must be positive and finite, got {horizon}")));
    }
    if !step.is_finite() || step <= 0.0 {
        return Err(Error::domain(format!("step must be positive and finite, got {step}")));
    }
    let steps = (horizon / step).round();
    if steps < 1.0 {
        return Err(Error::domain("the grid needs at least one step"));
    }
    if steps > 2e7 {
        return Err(Error::domain("the step is too small for the horizon"));
    }
    Ok(steps as usize + 1)
}

fn builtin_grid(b: Builtin, horizon: f64, step: f64) -> Result<GridFunction> {
    let (f, df) = builtin_fns(b);
    let n = grid_len(horizon, step)?;
    GridFunction::from_fn_with_derivative(0.0, step, n, f, df)
}

fn grid_csv(header: &str, g: &GridFunction) -> String {
    let mut s = String::with_capacity(32 * (g.len() + 1));
    s.push_str(header);
    s.push('\n');
    for i in 0..g.len() {
        s.push_str(&format_value(g.time(i)));
        s.push(',');
        s.push_str(&format_value(g.values()[i]));
        s.push('\n');
    }
    s
}

fn trajectory_csv(traj: &Trajectory) -> String {
    let mut s = String::with_capacity(48 * (traj.times.len() + 1));
    s.push_str("t,y,residual\n");
    for i in 0..traj.times.len() {
        s.push_str(&format_value(traj.times[i]));
        s.push(',');
        s.push_str(&format_value(traj.values[i]));
        s.push(',');
        s.push_str(&format_value(traj.residuals[i]));
        s.push('\n');
    }
    s
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

/// Planned term count for a kernel series, from the override if given.
fn series_terms(p: &PrabhakarParams, zmax: f64, over: Option<usize>, tol: f64) -> Result<usize> {
    match over {
        Some(k) => Ok(k),
        None => Ok(series_truncation(p, zmax, tol)?.terms),
    }
}

fn cmd_eval(a: EvalArgs) -> Result<i32> {
    let body = match a.function {
        EvalFn::MittagLeffler => format!("{}\n", mittag_leffler(a.alpha, a.z)?),
        EvalFn::Prabhakar => {
            let p = PrabhakarParams::new(a.alpha, a.beta, a.gamma, a.omega)?;
            format!("{}\n", prabhakar_function(&p, a.z)?)
        }
        EvalFn::Kernel => {
            let p = PrabhakarParams::new(a.alpha, a.beta, a.gamma, a.omega)?;
            format!("{}\n", prabhakar_kernel(&p, a.t)?)
        }
        EvalFn::Gamma => format!("{}\n", gamma_fn(a.z)?),
        EvalFn::Truncation => {
            let p = PrabhakarParams::new(a.alpha, a.beta, a.gamma, a.omega)?;
            let plan = series_truncation(&p, a.z, a.tol)?;
            format!("terms,bound\n{},{}\n", plan.terms, format_value(plan.bound))
        }
    };
    emit(&a.out, &body)?;
    Ok(0)
}

fn cmd_apply(a: ApplyArgs) -> Result<i32> {
    let grid = builtin_grid(a.f, a.horizon, a.step)?;
    let norm = NormalizationFn::constant_one();
    let result = match a.op {
        ApplyOp::Rl => rl_integral(&grid, a.alpha)?,
        ApplyOp::Caputo => caputo_derivative(&grid, a.alpha)?,
        ApplyOp::Cf => cf_derivative(&grid, a.alpha, &norm)?,
        ApplyOp::Abc => abc_derivative(&grid, a.alpha, &norm)?,
        ApplyOp::Prabhakar => {
            let p = PrabhakarParams::new(a.alpha, a.beta, a.gamma, a.omega)?;
            prabhakar_integral(&grid, &p)?
        }
        ApplyOp::PrabhakarSeries => {
            let p = PrabhakarParams::new(a.alpha, a.beta, a.gamma, a.omega)?;
            let k = series_terms(&p, a.omega.abs() * a.horizon.powf(a.alpha), a.terms, a.tol)?;
            prabhakar_integral_series(&grid, &p, k)?.grid
        }
        ApplyOp::CfSeries => {
            let w = -a.alpha / (1.0 - a.alpha);
            let p = PrabhakarParams::new(1.0, 1.0, 1.0, w)?;
            let k = series_terms(&p, w.abs() * a.horizon, a.terms, a.tol)?;
            cf_series(&grid, a.alpha, &norm, k)?
        }
        ApplyOp::AbcSeries => {
            let w = -a.alpha / (1.0 - a.alpha);
            let p = PrabhakarParams::new(a.alpha, 1.0, 1.0, w)?;
            let k = series_terms(&p, w.abs() * a.horizon.powf(a.alpha), a.terms, a.tol)?;
            abc_series(&grid, a.alpha, &norm, k)?
        }
    };
    emit(&a.out, &grid_csv("t,value", &result))?;
    Ok(0)
}

fn op_name(op: SolveOp) -> &'static str {
    match op {
        SolveOp::Cf => "cf",
        SolveOp::Abc => "abc",
        SolveOp::Caputo => "caputo",
    }
}

fn route_name(r: Route) -> &'static str {
    match r {
        Route::Integral => "integral",
        Route::Ode => "ode",
        Route::Caputo => "caputo",
        Route::Adams => "adams",
    }
}

fn valid_routes(op: SolveOp) -> &'static str {
    match op {
        SolveOp::Cf => "integral, ode",
        SolveOp::Abc => "integral, caputo",
        SolveOp::Caputo => "adams",
    }
}

fn cmd_solve(a: SolveArgs) -> Result<i32> {
    let route = a.route.unwrap_or(match a.op {
        SolveOp::Cf | SolveOp::Abc => Route::Integral,
        SolveOp::Caputo => Route::Adams,
    });
    let kind = match a.op {
        SolveOp::Cf => OperatorKind::CfDerivative,
        SolveOp::Abc => OperatorKind::AbcDerivative,
        SolveOp::Caputo => OperatorKind::CaputoDerivative,
    };
    let rhs: fn(f64, f64) -> f64 = match a.rhs {
        Rhs::Decay => |_, y| -y,
        Rhs::Const => |_, _| 1.0,
        Rhs::Forced => |t, y| -y + t.sin(),
    };
    let spec = OperatorSpec::new(kind, a.alpha, None, NormalizationFn::constant_one())?;
    let prob = FDEProblem::new(spec, rhs, a.y0, a.horizon, a.step)?;
    let traj = match (a.op, route) {
        (SolveOp::Cf, Route::Integral) => solve_cf_integral(&prob)?,
        (SolveOp::Cf, Route::Ode) => solve_cf_ode(&prob)?,
        (SolveOp::Abc, Route::Integral) => solve_abc_integral(&prob)?,
        (SolveOp::Abc, Route::Caputo) => solve_abc_caputo_form(&prob)?,
        (SolveOp::Caputo, Route::Adams) => solve_caputo_adams(&prob)?,
        (op, r) => {
            eprintln!(
                "error: route {} is not valid for operator {}; valid routes: {}",
                route_name(r),
                op_name(op),
                valid_routes(op)
            );
            return Ok(2);
        }
    };
    emit(&a.out, &trajectory_csv(&traj))?;
    Ok(0)
}

fn cmd_crosscheck(a: CrosscheckArgs) -> Result<i32> {
    let th = a.theorem;
    let (t_def, h_def, tol_def) = match th {
        1 => (5.0, 5e-3, 1e-8),
        2 => (1.0, 1e-3, 1e-10),
        3 => (1.0, 1e-3, 1e-8),
        _ => (1.0, 5e-4, 1e-7),
    };
    let alpha = a.alpha.unwrap_or(0.5);
    let beta = a.beta.unwrap_or(1.0);
    let gamma = a.gamma.unwrap_or(1.0);
    let omega = a.omega.unwrap_or(-1.0);
    let horizon = a.horizon.unwrap_or(t_def);
    let step = a.step.unwrap_or(h_def);
    let tol = a.tol.unwrap_or(tol_def);
    let grid = builtin_grid(a.f, horizon, step)?;
    let norm = NormalizationFn::constant_one();
    let disc = match th {
        1 => {
            let p = PrabhakarParams::new(alpha, beta, gamma, omega)?;
            let direct = prabhakar_integral(&grid, &p)?;
            let k = series_truncation(&p, omega.abs() * horizon.powf(alpha), 1e-12)?.terms;
            let series = prabhakar_integral_series(&grid, &p, k)?.grid;
            let scale = direct.values().iter().fold(0.0f64, |m, v| m.max(v.abs()));
            max_abs_diff(direct.values(), series.values()) / scale.max(1e-300)
        }
        2 | 3 => {
            let w = -alpha / (1.0 - alpha);
            let (_, df) = builtin_fns(a.f);
            let fp = GridFunction::from_fn(0.0, step, grid.len(), df)?;
            let (left, p) = if th == 2 {
                (cf_derivative(&grid, alpha, &norm)?, PrabhakarParams::new(1.0, 1.0, 1.0, w)?)
            } else {
                (abc_derivative(&grid, alpha, &norm)?, PrabhakarParams::new(alpha, 1.0, 1.0, w)?)
            };
            let right = prabhakar_integral(&fp, &p)?;
            let factor = norm.value(alpha)? / (1.0 - alpha);
            left.values()
                .iter()
                .zip(right.values())
                .fold(0.0f64, |m, (l, r)| m.max((l - factor * r).abs()))
        }
        _ => {
            let w = -alpha / (1.0 - alpha);
            if th == 4 {
                let direct = cf_derivative(&grid, alpha, &norm)?;
                let p = PrabhakarParams::new(1.0, 1.0, 1.0, w)?;
                let k = series_truncation(&p, w.abs() * horizon, 1e-10)?.terms;
                let series = cf_series(&grid, alpha, &norm, k)?;
                max_abs_diff(direct.values(), series.values())
            } else {
                let direct = abc_derivative(&grid, alpha, &norm)?;
                let p = PrabhakarParams::new(alpha, 1.0, 1.0, w)?;
                let k = series_truncation(&p, w.abs() * horizon.powf(alpha), 1e-10)?.terms;
                let series = abc_series(&grid, alpha, &norm, k)?;
                max_abs_diff(direct.values(), series.values())
            }
        }
    };
    let pass = disc <= tol;
    let verdict = if pass { "PASS" } else { "FAIL" };
    let line = format!("theorem {th}: max discrepancy {disc:e} (tol {tol:e}) {verdict}\n");
    emit(&a.out, &line)?;
    Ok(if pass { 0 } else { 1 })
}

fn cmd_figure1(a: Figure1Args) -> Result<i32> {
    let times = default_figure1_grid();
    let data = figure1_dataset(a.alpha, a.eta, &times)?;
    let mut s = String::with_capacity(64 * (times.len() + 1));
    s.push_str("t,G_SB,G_CF_over_M,G_ABC_over_B\n");
    for i in 0..data.times.len() {
        s.push_str(&format_value(data.times[i]));
        s.push(',');
        s.push_str(&format_value(data.scott_blair[i]));
        s.push(',');
        s.push_str(&format_value(data.cf_over_m[i]));
        s.push(',');
        s.push_str(&format_value(data.abc_over_b[i]));
        s.push('\n');
    }
    emit(&a.out, &s)?;
    Ok(0)
}
