//! Two-parameter Nelder-Mead minimizer used to polish grid optima.

use crate::error::Result;

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;
/// Restarts from the incumbent after a convergence claim; guards against
/// a collapsed simplex stopping early.
const MAX_RESTARTS: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexOutcome {
    pub point: [f64; 2],
    pub value: f64,
    pub evaluations: usize,
    /// Largest vertex distance from the best vertex at exit.
    pub final_step: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct SimplexSettings {
    /// Stop when `f_worst - f_best` drops below this.
    pub ftol: f64,
    /// ... and the simplex diameter below this.
    pub xtol: f64,
    pub max_evaluations: usize,
}

fn lerp(a: [f64; 2], b: [f64; 2], t: f64) -> [f64; 2] {
    [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
}

/// Minimizes `f` starting from `start` (whose value is already known).
///
/// The returned value never exceeds `start_value`: the incumbent is kept as
/// a vertex until something strictly better replaces it.
pub fn minimize<F>(
    mut f: F,
    start: [f64; 2],
    start_value: f64,
    step: [f64; 2],
    settings: SimplexSettings,
) -> Result<SimplexOutcome>
where
    F: FnMut([f64; 2]) -> Result<f64>,
{
    let mut evaluations = 0usize;
    let mut eval = |x: [f64; 2], n: &mut usize| -> Result<f64> {
        *n += 1;
        f(x)
    };

    let mut best = (start, start_value);
    let mut restarts = 0;
    loop {
        let mut simplex: Vec<([f64; 2], f64)> = vec![best];
        for k in 0..2 {
            let mut x = best.0;
            x[k] += step[k];
            simplex.push((x, eval(x, &mut evaluations)?));
        }

        let converged = loop {
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            let spread = simplex[2].1 - simplex[0].1;
            let diameter = simplex[1..]
                .iter()
                .map(|v| dist(v.0, simplex[0].0))
                .fold(0.0, f64::max);
            if spread < settings.ftol && diameter < settings.xtol {
                break true;
            }
            if evaluations >= settings.max_evaluations {
                break false;
            }

            let centroid = lerp(simplex[0].0, simplex[1].0, 0.5);
            let worst = simplex[2];
            let xr = lerp(centroid, worst.0, -REFLECT);
            let fr = eval(xr, &mut evaluations)?;
            if fr < simplex[0].1 {
                let xe = lerp(centroid, worst.0, -EXPAND);
                let fe = eval(xe, &mut evaluations)?;
                simplex[2] = if fe < fr { (xe, fe) } else { (xr, fr) };
            } else if fr < simplex[1].1 {
                simplex[2] = (xr, fr);
            } else {
                let (xc, fc) = if fr < worst.1 {
                    let xc = lerp(centroid, xr, CONTRACT);
                    (xc, eval(xc, &mut evaluations)?)
                } else {
                    let xc = lerp(centroid, worst.0, CONTRACT);
                    (xc, eval(xc, &mut evaluations)?)
                };
                if fc < worst.1.min(fr) {
                    simplex[2] = (xc, fc);
                } else {
                    let anchor = simplex[0].0;
                    for v in simplex.iter_mut().skip(1) {
                        let x = lerp(anchor, v.0, SHRINK);
                        *v = (x, eval(x, &mut evaluations)?);
                    }
                }
            }
        };

        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let improved = best.1 - simplex[0].1;
        if simplex[0].1 < best.1 {
            best = simplex[0];
        }
        let final_step = simplex[1..]
            .iter()
            .map(|v| dist(v.0, simplex[0].0))
            .fold(0.0, f64::max);
        if !converged || restarts == MAX_RESTARTS || improved < settings.ftol {
            return Ok(SimplexOutcome {
                point: best.0,
                value: best.1,
                evaluations,
                final_step,
                converged,
            });
        }
        restarts += 1;
    }
}
