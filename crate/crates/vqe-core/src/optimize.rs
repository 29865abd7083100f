//! Classical minimizers for the energy objective.
//!
//! Three methods cover the derivative-free, quasi-Newton, and stochastic
//! regimes: a reflection simplex, BFGS with finite-difference gradients,
//! and simultaneous-perturbation stochastic approximation. All three emit
//! the same trace format and share one bookkeeping rule: the reported
//! best value is exactly the minimum energy stored in the trace, and the
//! evaluation counts along the trace are strictly increasing.

use serde::{Deserialize, Serialize};

use crate::backend::ExpectationEstimate;
use crate::error::{Result, VqeError};
use crate::rng::{derive_seed, rng_from_seed};

/// Armijo sufficient-decrease constant for the quasi-Newton line search.
const ARMIJO_C1: f64 = 1e-4;
/// Step halvings allowed before the line search gives up.
const MAX_HALVINGS: usize = 40;
/// Probe pairs used to calibrate the SPSA step amplitude.
const SPSA_CALIBRATION_PAIRS: usize = 25;
/// Target first-step magnitude for SPSA calibration, one tenth of a turn.
const SPSA_TARGET_STEP: f64 = std::f64::consts::TAU / 10.0;

/// A counted, arity-checked objective function.
///
/// The wrapped closure receives the evaluation point and a running
/// evaluation index; the index lets stochastic backends derive a fresh
/// sampling seed per call while staying reproducible. The counter
/// increments exactly once per accepted call.
pub struct Objective<'a> {
    arity: usize,
    n_evaluations: u64,
    f: Box<dyn FnMut(&[f64], u64) -> Result<ExpectationEstimate> + 'a>,
}

impl<'a> Objective<'a> {
    pub fn new<F>(arity: usize, f: F) -> Result<Self>
    where
        F: FnMut(&[f64], u64) -> Result<ExpectationEstimate> + 'a,
    {
        if arity == 0 {
            return Err(VqeError::Configuration(
                "objective needs at least one parameter".into(),
            ));
        }
        Ok(Objective {
            arity,
            n_evaluations: 0,
            f: Box::new(f),
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn n_evaluations(&self) -> u64 {
        self.n_evaluations
    }

    pub fn evaluate(&mut self, x: &[f64]) -> Result<ExpectationEstimate> {
        if x.len() != self.arity {
            return Err(VqeError::ArityMismatch {
                expected: self.arity,
                got: x.len(),
            });
        }
        let index = self.n_evaluations;
        self.n_evaluations += 1;
        (self.f)(x, index)
    }
}

/// One saved step of an optimization run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub nfev: u64,
    pub parameters: Vec<f64>,
    pub energy: f64,
    pub stddev: f64,
}

/// Why an optimizer stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TerminationReason {
    Converged,
    MaxIterations,
    LineSearchStall,
    NonFiniteObjective,
}

/// Outcome of an optimization run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptResult {
    pub best_parameters: Vec<f64>,
    pub best_value: f64,
    pub n_evaluations: u64,
    pub trace: Vec<IterationRecord>,
    pub termination: TerminationReason,
}

/// Lowest finite energy seen anywhere during a run, trace or not.
struct BestPoint {
    parameters: Vec<f64>,
    energy: f64,
}

impl BestPoint {
    fn new() -> Self {
        BestPoint {
            parameters: Vec::new(),
            energy: f64::INFINITY,
        }
    }

    fn note(&mut self, x: &[f64], energy: f64) {
        if energy.is_finite() && energy < self.energy {
            self.energy = energy;
            self.parameters = x.to_vec();
        }
    }
}

fn push_row(trace: &mut Vec<IterationRecord>, nfev: u64, x: &[f64], energy: f64, stddev: f64) {
    debug_assert!(trace.last().map_or(true, |r| r.nfev < nfev));
    trace.push(IterationRecord {
        nfev,
        parameters: x.to_vec(),
        energy,
        stddev,
    });
}

/// Shared run epilogue.
///
/// Re-measures the best point seen, appends that row, then hands back the
/// lowest-energy trace row. Re-measuring keeps the headline value honest
/// under a noisy objective, and selecting over stored rows makes the
/// best-value invariant hold exactly by construction.
fn finish(
    f: &mut Objective<'_>,
    mut trace: Vec<IterationRecord>,
    best: &BestPoint,
    fallback: &[f64],
    termination: TerminationReason,
) -> Result<OptResult> {
    let point = if best.energy.is_finite() {
        best.parameters.clone()
    } else {
        fallback.to_vec()
    };
    let est = f.evaluate(&point)?;
    push_row(&mut trace, f.n_evaluations(), &point, est.value, est.stddev);
    let mut pick = 0usize;
    let mut lowest = f64::INFINITY;
    for (i, row) in trace.iter().enumerate() {
        if row.energy.is_finite() && row.energy < lowest {
            lowest = row.energy;
            pick = i;
        }
    }
    Ok(OptResult {
        best_parameters: trace[pick].parameters.clone(),
        best_value: trace[pick].energy,
        n_evaluations: f.n_evaluations(),
        trace,
        termination,
    })
}

fn check_start(f: &Objective<'_>, x0: &[f64]) -> Result<()> {
    if x0.len() != f.arity() {
        return Err(VqeError::ArityMismatch {
            expected: f.arity(),
            got: x0.len(),
        });
    }
    Ok(())
}

/// Evaluate the starting point and stop; shared by every optimizer when
/// the iteration budget is zero.
fn zero_iteration_run(mut f: Objective<'_>, x0: &[f64]) -> Result<OptResult> {
    let est = f.evaluate(x0)?;
    let mut trace = Vec::new();
    push_row(&mut trace, f.n_evaluations(), x0, est.value, est.stddev);
    let mut best = BestPoint::new();
    best.note(x0, est.value);
    finish(&mut f, trace, &best, x0, TerminationReason::MaxIterations)
}

/// Derivative-free simplex minimization.
///
/// Standard reflection/expansion/contraction/shrink with coefficients
/// 1, 2, 0.5, 0.5. Stops when both the vertex spread and the value spread
/// fall below `xtol` and `ftol`, or on the iteration budget. A non-finite
/// objective value aborts the run with the trace collected so far.
pub fn nelder_mead(
    mut f: Objective<'_>,
    x0: &[f64],
    max_iter: usize,
    xtol: f64,
    ftol: f64,
) -> Result<OptResult> {
    check_start(&f, x0)?;
    if max_iter == 0 {
        return zero_iteration_run(f, x0);
    }
    let n = f.arity();
    let mut best = BestPoint::new();
    let mut trace = Vec::new();

    let mut vertices: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    vertices.push(x0.to_vec());
    for i in 0..n {
        let mut v = x0.to_vec();
        if v[i] != 0.0 {
            v[i] *= 1.05;
        } else {
            v[i] = 2.5e-4;
        }
        vertices.push(v);
    }
    let mut values = Vec::with_capacity(n + 1);
    let mut stddevs = Vec::with_capacity(n + 1);
    let mut termination = TerminationReason::MaxIterations;
    let mut aborted = false;
    for v in &vertices {
        let est = f.evaluate(v)?;
        best.note(v, est.value);
        values.push(est.value);
        stddevs.push(est.stddev);
        if !est.value.is_finite() {
            aborted = true;
        }
    }
    if aborted {
        return finish(&mut f, trace, &best, x0, TerminationReason::NonFiniteObjective);
    }

    let order = |values: &[f64]| -> Vec<usize> {
        let mut idx: Vec<usize> = (0..values.len()).collect();
        idx.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap());
        idx
    };
    let idx0 = order(&values);
    push_row(
        &mut trace,
        f.n_evaluations(),
        &vertices[idx0[0]],
        values[idx0[0]],
        stddevs[idx0[0]],
    );

    'outer: for _ in 0..max_iter {
        let idx = order(&values);
        let best_i = idx[0];
        let worst_i = idx[n];
        let second_worst_i = idx[n - 1];

        let x_spread = vertices
            .iter()
            .flat_map(|v| {
                v.iter()
                    .zip(&vertices[best_i])
                    .map(|(a, b)| (a - b).abs())
            })
            .fold(0.0f64, f64::max);
        let f_spread = values
            .iter()
            .map(|v| (v - values[best_i]).abs())
            .fold(0.0f64, f64::max);
        if x_spread < xtol && f_spread < ftol {
            termination = TerminationReason::Converged;
            break;
        }

        let mut centroid = vec![0.0; n];
        for (i, v) in vertices.iter().enumerate() {
            if i == worst_i {
                continue;
            }
            for (c, a) in centroid.iter_mut().zip(v) {
                *c += a;
            }
        }
        for c in centroid.iter_mut() {
            *c /= n as f64;
        }

        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&vertices[worst_i])
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };
        let mut probe = |f: &mut Objective<'_>, x: Vec<f64>| -> Result<(Vec<f64>, f64, f64)> {
            let est = f.evaluate(&x)?;
            best.note(&x, est.value);
            Ok((x, est.value, est.stddev))
        };

        let (xr, fr, sr) = probe(&mut f, along(1.0))?;
        let mut replacement = None;
        if fr.is_finite() {
            if fr < values[best_i] {
                let (xe, fe, se) = probe(&mut f, along(2.0))?;
                if !fe.is_finite() {
                    termination = TerminationReason::NonFiniteObjective;
                    break;
                }
                replacement = if fe < fr {
                    Some((xe, fe, se))
                } else {
                    Some((xr, fr, sr))
                };
            } else if fr < values[second_worst_i] {
                replacement = Some((xr, fr, sr));
            } else {
                let t = if fr < values[worst_i] { 0.5 } else { -0.5 };
                let (xc, fc, sc) = probe(&mut f, along(t))?;
                if !fc.is_finite() {
                    termination = TerminationReason::NonFiniteObjective;
                    break;
                }
                let threshold = if t > 0.0 { fr } else { values[worst_i] };
                if fc <= threshold {
                    replacement = Some((xc, fc, sc));
                }
            }
        } else {
            termination = TerminationReason::NonFiniteObjective;
            break;
        }

        match replacement {
            Some((x, v, s)) => {
                vertices[worst_i] = x;
                values[worst_i] = v;
                stddevs[worst_i] = s;
            }
            None => {
                // Shrink every non-best vertex halfway toward the best.
                for i in 0..=n {
                    if i == best_i {
                        continue;
                    }
                    let shrunk: Vec<f64> = vertices[best_i]
                        .iter()
                        .zip(&vertices[i])
                        .map(|(b, v)| b + 0.5 * (v - b))
                        .collect();
                    let (x, v, s) = probe(&mut f, shrunk)?;
                    if !v.is_finite() {
                        termination = TerminationReason::NonFiniteObjective;
                        break 'outer;
                    }
                    vertices[i] = x;
                    values[i] = v;
                    stddevs[i] = s;
                }
            }
        }

        let idx = order(&values);
        push_row(
            &mut trace,
            f.n_evaluations(),
            &vertices[idx[0]],
            values[idx[0]],
            stddevs[idx[0]],
        );
    }

    finish(&mut f, trace, &best, x0, termination)
}

/// Central-difference gradient of an objective, step `h` per coordinate.
pub fn finite_difference_gradient(
    f: &mut Objective<'_>,
    x: &[f64],
    h: f64,
) -> Result<Vec<f64>> {
    if !(h > 0.0) {
        return Err(VqeError::Configuration(
            "finite-difference step must be positive".into(),
        ));
    }
    let mut g = Vec::with_capacity(x.len());
    let mut point = x.to_vec();
    for i in 0..x.len() {
        point[i] = x[i] + h;
        let plus = f.evaluate(&point)?.value;
        point[i] = x[i] - h;
        let minus = f.evaluate(&point)?.value;
        point[i] = x[i];
        g.push((plus - minus) / (2.0 * h));
    }
    Ok(g)
}

/// Quasi-Newton minimization with finite-difference gradients.
///
/// Maintains an inverse-Hessian estimate through BFGS updates and uses a
/// backtracking Armijo line search. Stops when the gradient infinity norm
/// drops below `gtol` or the budget runs out; a line search that fails
/// after 40 halvings ends the run with a stall flag and the best point
/// found so far.
pub fn bfgs_fd(
    mut f: Objective<'_>,
    x0: &[f64],
    max_iter: usize,
    gtol: f64,
    fd_step: f64,
) -> Result<OptResult> {
    if !(fd_step > 0.0) {
        return Err(VqeError::Configuration(
            "finite-difference step must be positive".into(),
        ));
    }
    if !(gtol >= 0.0) {
        return Err(VqeError::Configuration(
            "gradient tolerance must be non-negative".into(),
        ));
    }
    check_start(&f, x0)?;
    if max_iter == 0 {
        return zero_iteration_run(f, x0);
    }
    let n = f.arity();
    let mut best = BestPoint::new();
    let mut trace = Vec::new();

    let mut x = x0.to_vec();
    let est = f.evaluate(&x)?;
    let mut fx = est.value;
    let mut sd = est.stddev;
    best.note(&x, fx);
    push_row(&mut trace, f.n_evaluations(), &x, fx, sd);
    if !fx.is_finite() {
        return finish(&mut f, trace, &best, x0, TerminationReason::NonFiniteObjective);
    }

    // Row-major inverse-Hessian estimate, started at the identity.
    let mut h_inv = vec![0.0; n * n];
    for i in 0..n {
        h_inv[i * n + i] = 1.0;
    }
    let mut g = finite_difference_gradient(&mut f, &x, fd_step)?;
    let mut termination = TerminationReason::MaxIterations;

    for _ in 0..max_iter {
        if g.iter().any(|v| !v.is_finite()) {
            termination = TerminationReason::NonFiniteObjective;
            break;
        }
        let g_norm = g.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if g_norm < gtol {
            termination = TerminationReason::Converged;
            break;
        }

        let mut p = vec![0.0; n];
        for i in 0..n {
            for j in 0..n {
                p[i] -= h_inv[i * n + j] * g[j];
            }
        }
        let mut slope: f64 = g.iter().zip(&p).map(|(a, b)| a * b).sum();
        if slope >= 0.0 {
            // The estimate lost positive definiteness; restart from steepest
            // descent.
            for i in 0..n {
                for j in 0..n {
                    h_inv[i * n + j] = if i == j { 1.0 } else { 0.0 };
                }
            }
            for (pi, gi) in p.iter_mut().zip(&g) {
                *pi = -gi;
            }
            slope = -g.iter().map(|v| v * v).sum::<f64>();
        }

        let mut t = 1.0f64;
        let mut accepted = None;
        for _ in 0..=MAX_HALVINGS {
            let trial: Vec<f64> = x.iter().zip(&p).map(|(a, b)| a + t * b).collect();
            let est = f.evaluate(&trial)?;
            best.note(&trial, est.value);
            if est.value.is_finite() && est.value <= fx + ARMIJO_C1 * t * slope {
                accepted = Some((trial, est.value, est.stddev, t));
                break;
            }
            t *= 0.5;
        }
        let (x_new, fx_new, sd_new, t) = match accepted {
            Some(step) => step,
            None => {
                termination = TerminationReason::LineSearchStall;
                break;
            }
        };

        let g_new = finite_difference_gradient(&mut f, &x_new, fd_step)?;
        let s: Vec<f64> = p.iter().map(|v| t * v).collect();
        let y: Vec<f64> = g_new.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy: f64 = s.iter().zip(&y).map(|(a, b)| a * b).sum();
        let s_norm = s.iter().map(|v| v * v).sum::<f64>().sqrt();
        let y_norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        if sy > 1e-12 * s_norm * y_norm {
            let rho = 1.0 / sy;
            let mut hy = vec![0.0; n];
            for i in 0..n {
                for j in 0..n {
                    hy[i] += h_inv[i * n + j] * y[j];
                }
            }
            let yhy: f64 = y.iter().zip(&hy).map(|(a, b)| a * b).sum();
            for i in 0..n {
                for j in 0..n {
                    h_inv[i * n + j] += -rho * (s[i] * hy[j] + hy[i] * s[j])
                        + (rho * rho * yhy + rho) * s[i] * s[j];
                }
            }
        }

        x = x_new;
        fx = fx_new;
        sd = sd_new;
        g = g_new;
        push_row(&mut trace, f.n_evaluations(), &x, fx, sd);
        if !fx.is_finite() {
            termination = TerminationReason::NonFiniteObjective;
            break;
        }
    }

    finish(&mut f, trace, &best, x0, termination)
}

/// Simultaneous-perturbation stochastic approximation.
///
/// Iteration `k` steps against a two-point gradient estimate taken along
/// a random sign vector, with gain schedules
/// `a_k = a / (k + 1 + A)^alpha` and `c_k = c / (k + 1)^gamma`. When `a`
/// is not given it is calibrated from 25 probe pairs around the start so
/// the first step moves each parameter by about a tenth of a turn. The
/// trace is saved every `save_steps` iterations plus the final one, and
/// the run returns the lowest-energy point visited anywhere, probes
/// included.
#[allow(clippy::too_many_arguments)]
pub fn spsa(
    mut f: Objective<'_>,
    x0: &[f64],
    max_iter: usize,
    a: Option<f64>,
    c: f64,
    alpha: f64,
    gamma: f64,
    big_a: Option<f64>,
    save_steps: usize,
    seed: u64,
) -> Result<OptResult> {
    if !(c > 0.0) {
        return Err(VqeError::Configuration(
            "perturbation size c must be positive".into(),
        ));
    }
    if !(alpha > 0.0) || !(gamma > 0.0) {
        return Err(VqeError::Configuration(
            "gain exponents must be positive".into(),
        ));
    }
    if let Some(a) = a {
        if !(a > 0.0) {
            return Err(VqeError::Configuration(
                "step amplitude a must be positive when given".into(),
            ));
        }
    }
    if save_steps == 0 {
        return Err(VqeError::Configuration(
            "save_steps must be at least one".into(),
        ));
    }
    let big_a = big_a.unwrap_or(0.1 * max_iter as f64);
    if !(big_a >= 0.0) {
        return Err(VqeError::Configuration(
            "stability constant A must be non-negative".into(),
        ));
    }
    check_start(&f, x0)?;
    if max_iter == 0 {
        return zero_iteration_run(f, x0);
    }

    let n = f.arity();
    let mut best = BestPoint::new();
    let mut trace = Vec::new();

    let rademacher = |seed: u64| -> Vec<f64> {
        let mut rng = rng_from_seed(seed);
        (0..n)
            .map(|_| if rand::Rng::gen::<bool>(&mut rng) { 1.0 } else { -1.0 })
            .collect()
    };

    let a = match a {
        Some(a) => a,
        None => {
            // Probe the objective around the start to size the first step.
            let mut magnitude_sum = 0.0;
            let mut pairs = 0usize;
            for j in 0..SPSA_CALIBRATION_PAIRS {
                let delta = rademacher(derive_seed(seed, "spsa-calibrate", j as u64));
                let plus: Vec<f64> = x0.iter().zip(&delta).map(|(x, d)| x + c * d).collect();
                let minus: Vec<f64> = x0.iter().zip(&delta).map(|(x, d)| x - c * d).collect();
                let ep = f.evaluate(&plus)?;
                best.note(&plus, ep.value);
                let em = f.evaluate(&minus)?;
                best.note(&minus, em.value);
                if ep.value.is_finite() && em.value.is_finite() {
                    magnitude_sum += (ep.value - em.value).abs() / (2.0 * c);
                    pairs += 1;
                }
            }
            let mean_magnitude = if pairs > 0 {
                magnitude_sum / pairs as f64
            } else {
                0.0
            };
            if mean_magnitude > 1e-12 {
                SPSA_TARGET_STEP * (big_a + 1.0).powf(alpha) / mean_magnitude
            } else {
                1.0
            }
        }
    };

    let mut x = x0.to_vec();
    for k in 0..max_iter {
        let ck = c / ((k + 1) as f64).powf(gamma);
        let ak = a / (k as f64 + 1.0 + big_a).powf(alpha);
        let delta = rademacher(derive_seed(seed, "spsa-delta", k as u64));
        let plus: Vec<f64> = x.iter().zip(&delta).map(|(v, d)| v + ck * d).collect();
        let minus: Vec<f64> = x.iter().zip(&delta).map(|(v, d)| v - ck * d).collect();
        let ep = f.evaluate(&plus)?;
        best.note(&plus, ep.value);
        let em = f.evaluate(&minus)?;
        best.note(&minus, em.value);

        if ep.value.is_finite() && em.value.is_finite() {
            let scale = (ep.value - em.value) / (2.0 * ck);
            for (v, d) in x.iter_mut().zip(&delta) {
                *v -= ak * scale * d;
            }
        }
        // A non-finite probe pair holds position for the iteration.

        if (k + 1) % save_steps == 0 || k + 1 == max_iter {
            // The probes ring the iterate at radius c_k, so the saved row
            // measures the iterate itself.
            let est = f.evaluate(&x)?;
            best.note(&x, est.value);
            push_row(&mut trace, f.n_evaluations(), &x, est.value, est.stddev);
        }
    }

    finish(&mut f, trace, &best, x0, TerminationReason::MaxIterations)
}
