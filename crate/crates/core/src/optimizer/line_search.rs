//! Strong Wolfe line search with cubic interpolation (Nocedal & Wright,
//! algorithms 3.5 and 3.6).

use thiserror::Error;

use super::dot;

const MAX_BRACKET_STEPS: usize = 40;
const MAX_ZOOM_STEPS: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum LineSearchError {
    #[error("search direction is not a descent direction")]
    NotDescent,
    #[error("no step decreased the objective")]
    NoProgress,
}

#[derive(Debug, Clone)]
pub struct WolfePoint {
    pub step: f64,
    pub x: Vec<f64>,
    pub value: f64,
    pub grad: Vec<f64>,
    pub evaluations: usize,
    /// `false` when only sufficient decrease holds (zoom ran out of room).
    pub strong: bool,
}

struct Sample {
    step: f64,
    value: f64,
    slope: f64,
    x: Vec<f64>,
    grad: Vec<f64>,
}

/// Minimizer of the cubic interpolating values and slopes at `a` and `b`,
/// or the midpoint when the cubic is degenerate.
fn cubic_minimizer(a: (f64, f64, f64), b: (f64, f64, f64)) -> f64 {
    let (a0, f0, d0) = a;
    let (a1, f1, d1) = b;
    let theta = d0 + d1 - 3.0 * (f0 - f1) / (a0 - a1);
    let disc = theta * theta - d0 * d1;
    if !(disc >= 0.0) {
        return 0.5 * (a0 + a1);
    }
    let gamma = disc.sqrt().copysign(a1 - a0);
    let denom = d1 - d0 + 2.0 * gamma;
    if denom == 0.0 || !denom.is_finite() {
        return 0.5 * (a0 + a1);
    }
    let t = a1 - (a1 - a0) * (d1 + gamma - theta) / denom;
    if t.is_finite() {
        t
    } else {
        0.5 * (a0 + a1)
    }
}

/// Finds a step along `dir` satisfying the strong Wolfe conditions.
///
/// `eval(x, grad)` returns the objective at `x` and writes its gradient.
/// When the bracketing interval collapses before the curvature condition
/// holds, the best point with sufficient decrease is returned with
/// `strong == false`.
#[allow(clippy::too_many_arguments)]
pub fn strong_wolfe<F>(
    eval: &mut F,
    x: &[f64],
    value: f64,
    grad: &[f64],
    dir: &[f64],
    c1: f64,
    c2: f64,
    initial_step: f64,
) -> Result<WolfePoint, LineSearchError>
where
    F: FnMut(&[f64], &mut [f64]) -> f64,
{
    let slope0 = dot(grad, dir);
    if !(slope0 < 0.0) {
        return Err(LineSearchError::NotDescent);
    }
    let mut evaluations = 0;
    let mut sample = |step: f64| {
        let xs: Vec<f64> = x.iter().zip(dir).map(|(xi, di)| xi + step * di).collect();
        let mut gs = vec![0.0; x.len()];
        let fs = eval(&xs, &mut gs);
        evaluations += 1;
        Sample { step, value: fs, slope: dot(&gs, dir), x: xs, grad: gs }
    };
    let armijo = |s: &Sample| s.value <= value + c1 * s.step * slope0;
    let curvature = |s: &Sample| s.slope.abs() <= -c2 * slope0;

    let mut prev = Sample { step: 0.0, value, slope: slope0, x: x.to_vec(), grad: grad.to_vec() };
    let mut step = initial_step;
    let (mut lo, mut hi) = 'bracket: {
        for iter in 0..MAX_BRACKET_STEPS {
            let cur = sample(step);
            if !cur.value.is_finite() || !armijo(&cur) || (iter > 0 && cur.value >= prev.value) {
                break 'bracket (prev, cur);
            }
            if curvature(&cur) {
                return Ok(finish(cur, evaluations, true));
            }
            if cur.slope >= 0.0 {
                break 'bracket (cur, prev);
            }
            step *= 2.0;
            prev = cur;
        }
        // Still descending after all expansions; accept the last point.
        return if prev.step > 0.0 {
            Ok(finish(prev, evaluations, false))
        } else {
            Err(LineSearchError::NoProgress)
        };
    };

    for _ in 0..MAX_ZOOM_STEPS {
        let width = hi.step - lo.step;
        if width.abs() <= f64::EPSILON * lo.step.abs().max(hi.step.abs()) {
            break;
        }
        let mut trial = if hi.value.is_finite() {
            cubic_minimizer((lo.step, lo.value, lo.slope), (hi.step, hi.value, hi.slope))
        } else {
            0.5 * (lo.step + hi.step)
        };
        // Keep the trial well inside the bracket.
        let (left, right) = if width > 0.0 {
            (lo.step + 0.1 * width, hi.step - 0.1 * width)
        } else {
            (hi.step - 0.1 * width, lo.step + 0.1 * width)
        };
        if !(trial >= left.min(right) && trial <= left.max(right)) {
            trial = 0.5 * (lo.step + hi.step);
        }
        let cur = sample(trial);
        if !cur.value.is_finite() || !armijo(&cur) || cur.value >= lo.value {
            hi = cur;
        } else {
            if curvature(&cur) {
                return Ok(finish(cur, evaluations, true));
            }
            if cur.slope * (hi.step - lo.step) >= 0.0 {
                hi = lo;
            }
            lo = cur;
        }
    }
    if lo.step > 0.0 && lo.value < value {
        Ok(finish(lo, evaluations, false))
    } else {
        Err(LineSearchError::NoProgress)
    }
}

fn finish(s: Sample, evaluations: usize, strong: bool) -> WolfePoint {
    WolfePoint { step: s.step, x: s.x, value: s.value, grad: s.grad, evaluations, strong }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_on_quadratic() {
        // f(x) = (x - 3)^2 from 0 along +1: the minimizer is step 3.
        let mut f = |x: &[f64], g: &mut [f64]| {
            g[0] = 2.0 * (x[0] - 3.0);
            (x[0] - 3.0).powi(2)
        };
        let p = strong_wolfe(&mut f, &[0.0], 9.0, &[-6.0], &[1.0], 1e-4, 0.9, 1.0).unwrap();
        assert!(p.strong);
        assert!(p.value < 9.0 + 1e-4 * p.step * -6.0);
        assert!(p.grad[0].abs() <= 0.9 * 6.0);
    }

    #[test]
    fn overshoot_is_zoomed() {
        let mut f = |x: &[f64], g: &mut [f64]| {
            g[0] = 2.0 * (x[0] - 0.01);
            (x[0] - 0.01).powi(2)
        };
        let p = strong_wolfe(&mut f, &[0.0], 1e-4, &[-0.02], &[1.0], 1e-4, 0.9, 1.0).unwrap();
        assert!(p.value < 1e-4);
        assert!(p.step < 0.02);
    }

    #[test]
    fn rejects_ascent_direction() {
        let mut f = |x: &[f64], g: &mut [f64]| {
            g[0] = 2.0 * x[0];
            x[0] * x[0]
        };
        let err = strong_wolfe(&mut f, &[1.0], 1.0, &[2.0], &[1.0], 1e-4, 0.9, 1.0).unwrap_err();
        assert_eq!(err, LineSearchError::NotDescent);
    }

    #[test]
    fn cubic_fallback_is_finite() {
        let t = cubic_minimizer((0.0, 1.0, -1.0), (1.0, 1.0, -1.0));
        assert!(t.is_finite());
    }
}
