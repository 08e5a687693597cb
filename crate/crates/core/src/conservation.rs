//! Floating-point cross-check of the first integral.
//!
//! The series solution f of f'' + q f = 0 yields a conserved quantity
//! Xi = y f(x) + z f'(x) + F(x), where F is the term-by-term antiderivative
//! of f. Integrating the cubic-like system numerically and watching Xi
//! stay constant gives an independent, non-symbolic check of the same
//! structure the exact modules certify.

use num::{BigRational, FromPrimitive, ToPrimitive};

use crate::families::TriangleParameters;
use crate::poly::Var;
use crate::rat::Rat;
use crate::ratfunc::RationalFunction;
use crate::series::{ode_series_solution, ExactSeries};
use crate::unipoly::UniPoly;

/// Everything measured during one integration run.
#[derive(Debug, Clone)]
pub struct ConservationOutcome {
    /// max over the trajectory of |Xi(t) - Xi(0)|.
    pub max_drift: f64,
    /// Xi at the starting point.
    pub initial_value: f64,
    /// Estimated radius of convergence of the series around the base point.
    pub window: f64,
    /// Number of accepted integration steps.
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConservationError {
    /// The requested base point sits on a pole of the potential.
    PoleAtBase,
    /// The trajectory wandered outside the estimated convergence window,
    /// so the truncated series no longer approximates f there.
    LeavesWindow { reached: f64, window: f64 },
    /// Nonsensical step parameters (dt <= 0 or t_end < 0).
    BadStep,
}

impl std::fmt::Display for ConservationError {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConservationError::PoleAtBase => {
                write!(out, "starting x sits on a pole of the potential")
            }
            ConservationError::LeavesWindow { reached, window } => write!(
                out,
                "trajectory reached |x - x0| = {reached:.4}, outside the \
                 estimated convergence window {window:.4}"
            ),
            ConservationError::BadStep => write!(out, "step parameters must be positive"),
        }
    }
}

impl std::error::Error for ConservationError {}

/// f64 evaluator for a univariate rational function, seeded from exact data.
struct RatFnEval {
    num: Vec<f64>,
    den: Vec<f64>,
}

impl RatFnEval {
    fn new(r: &RationalFunction<Rat>) -> Self {
        let grab = |p: &UniPoly| p.coeffs.iter().map(|c| c.to_f64().unwrap()).collect();
        let num = UniPoly::from_multipoly(r.num(), Var::X).expect("univariate numerator");
        let den = UniPoly::from_multipoly(r.den(), Var::X).expect("univariate denominator");
        RatFnEval {
            num: grab(&num),
            den: grab(&den),
        }
    }

    fn eval(&self, x: f64) -> f64 {
        horner(&self.num, x) / horner(&self.den, x)
    }
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

/// Estimate the radius of convergence from the tail of the coefficient
/// sequence via the root test: the median of |c_k|^(-1/k) over the last
/// several nonzero coefficients approximates 1 / limsup |c_k|^{1/k}.
/// Robust against interleaved zero coefficients (even or odd solutions).
fn estimate_window(series: &ExactSeries) -> f64 {
    let mut roots: Vec<f64> = Vec::new();
    for k in (1..series.order()).rev() {
        let c = series.coeff(k).to_f64().unwrap().abs();
        if c > 0.0 {
            roots.push(c.powf(-1.0 / k as f64));
        }
        if roots.len() >= 8 {
            break;
        }
    }
    if roots.is_empty() {
        return f64::INFINITY;
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots[roots.len() / 2]
}

/// Integrate x' = 1, y' = q(x) z - 1, z' = -y with the classical
/// fourth-order Runge-Kutta scheme and report how far the conserved
/// quantity Xi = y f + z f' + F wanders from its initial value.
///
/// `start` is the initial point (x0, y0, z0); the series for f is expanded
/// around x0 with `degree + 1` coefficients and f(x0) = 1, f'(x0) = 0.
/// F takes the antiderivative constant 0, so starting from y0 = z0 = 0
/// gives Xi(0) = 0 exactly.
pub fn numeric_conservation_check(
    params: &TriangleParameters,
    start: (f64, f64, f64),
    t_end: f64,
    dt: f64,
    degree: usize,
) -> Result<ConservationOutcome, ConservationError> {
    if !(dt > 0.0) || !(t_end >= 0.0) {
        return Err(ConservationError::BadStep);
    }
    let base = BigRational::from_f64(start.0).ok_or(ConservationError::PoleAtBase)?;
    let q = params.schwarz_potential();
    let order = degree + 1;
    let f = ode_series_solution(
        &q,
        &base,
        Rat::from_integer(1.into()),
        Rat::from_integer(0.into()),
        order,
    )
    .map_err(|_| ConservationError::PoleAtBase)?;
    let fp = f.derivative();
    let big_f = f.antiderivative();
    let window = estimate_window(&f);

    let q_eval = RatFnEval::new(&q);
    let x0 = start.0;
    let xi = |x: f64, y: f64, z: f64| y * f.eval_f64(x) + z * fp.eval_f64(x) + big_f.eval_f64(x);

    let (mut x, mut y, mut z) = start;
    let xi0 = xi(x, y, z);
    let mut max_drift = 0.0f64;
    let mut steps = 0usize;
    let total = (t_end / dt).round() as usize;

    let rhs = |x: f64, y: f64, z: f64| (1.0, q_eval.eval(x) * z - 1.0, -y);

    for _ in 0..total {
        let (k1x, k1y, k1z) = rhs(x, y, z);
        let (k2x, k2y, k2z) = rhs(x + 0.5 * dt * k1x, y + 0.5 * dt * k1y, z + 0.5 * dt * k1z);
        let (k3x, k3y, k3z) = rhs(x + 0.5 * dt * k2x, y + 0.5 * dt * k2y, z + 0.5 * dt * k2z);
        let (k4x, k4y, k4z) = rhs(x + dt * k3x, y + dt * k3y, z + dt * k3z);
        x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        y += dt / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        z += dt / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z);
        steps += 1;
        if (x - x0).abs() >= window {
            return Err(ConservationError::LeavesWindow {
                reached: (x - x0).abs(),
                window,
            });
        }
        let drift = (xi(x, y, z) - xi0).abs();
        if drift > max_drift {
            max_drift = drift;
        }
    }

    Ok(ConservationOutcome {
        max_drift,
        initial_value: xi0,
        window,
        steps,
    })
}

/// Least-squares slope of log(drift) against log(dt). For a fourth-order
/// scheme far from the series truncation floor this sits near 4.
pub fn convergence_slope(measurements: &[(f64, f64)]) -> f64 {
    let n = measurements.len() as f64;
    let xs: Vec<f64> = measurements.iter().map(|(dt, _)| dt.ln()).collect();
    let ys: Vec<f64> = measurements.iter().map(|(_, drift)| drift.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    cov / var
}
