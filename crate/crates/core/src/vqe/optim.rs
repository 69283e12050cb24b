//! Small unconstrained minimizers over `R^n`.

use std::collections::VecDeque;

/// Initial simplex edge length.
pub const SIMPLEX_STEP: f64 = 0.5;
/// Finite-difference step of the quasi-Newton gradient.
pub const FD_STEP: f64 = 1e-4;

const LBFGS_MEMORY: usize = 10;
const GRAD_TOL: f64 = 1e-8;
const ARMIJO: f64 = 1e-4;
const MAX_BACKTRACKS: usize = 40;

/// Result of a minimization; `trace` holds the objective at every recorded
/// point and `best` is its minimum.
#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub f: f64,
    pub trace: Vec<f64>,
    pub iterations: usize,
    pub evaluations: usize,
}

/// Central differences `(f(x + h e_i) - f(x - h e_i)) / 2h`.
pub fn central_difference<F: FnMut(&[f64]) -> f64>(f: &mut F, x: &[f64], h: f64) -> Vec<f64> {
    let mut p = x.to_vec();
    (0..x.len())
        .map(|i| {
            p[i] = x[i] + h;
            let up = f(&p);
            p[i] = x[i] - h;
            let down = f(&p);
            p[i] = x[i];
            (up - down) / (2.0 * h)
        })
        .collect()
}

/// Nelder-Mead with dimension-adapted coefficients. Every evaluation is
/// recorded and counts against `max_evals`. Stops once the spread of the
/// simplex values drops to `tol`.
pub fn nelder_mead<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    max_evals: usize,
    tol: f64,
) -> Minimum {
    let n = x0.len();
    let mut trace = Vec::new();
    let mut eval = |x: &[f64], trace: &mut Vec<f64>| -> Option<f64> {
        if trace.len() >= max_evals {
            return None;
        }
        let v = f(x);
        trace.push(v);
        Some(v)
    };

    let f0 = eval(x0, &mut trace).expect("budget of at least one evaluation");
    let mut simplex: Vec<(Vec<f64>, f64)> = vec![(x0.to_vec(), f0)];
    if n == 0 {
        return finish(simplex, trace, 0);
    }

    let nf = n as f64;
    let (reflect, expand, contract, shrink) =
        (1.0, 1.0 + 2.0 / nf, 0.75 - 1.0 / (2.0 * nf), 1.0 - 1.0 / nf);
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += SIMPLEX_STEP;
        match eval(&x, &mut trace) {
            Some(v) => simplex.push((x, v)),
            None => return finish(simplex, trace, 0),
        }
    }

    let mut iterations = 0;
    let along = |c: &[f64], w: &[f64], t: f64| -> Vec<f64> {
        c.iter().zip(w).map(|(c, w)| c + t * (w - c)).collect()
    };
    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        if simplex[n].1 - simplex[0].1 <= tol {
            break;
        }
        iterations += 1;
        let mut centroid = vec![0.0; n];
        for (x, _) in &simplex[..n] {
            centroid.iter_mut().zip(x).for_each(|(c, v)| *c += v / nf);
        }
        let worst = simplex[n].clone();

        let xr = along(&centroid, &worst.0, -reflect);
        let Some(fr) = eval(&xr, &mut trace) else {
            break;
        };
        if fr < simplex[0].1 {
            let xe = along(&centroid, &xr, expand);
            let Some(fe) = eval(&xe, &mut trace) else {
                simplex[n] = (xr, fr);
                break;
            };
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
            continue;
        }
        let (xc, limit) = if fr < worst.1 {
            (along(&centroid, &xr, contract), fr)
        } else {
            (along(&centroid, &worst.0, contract), worst.1)
        };
        let Some(fc) = eval(&xc, &mut trace) else {
            break;
        };
        if fc <= limit {
            simplex[n] = (xc, fc);
            continue;
        }
        let best = simplex[0].0.clone();
        for entry in simplex.iter_mut().skip(1) {
            let x = along(&best, &entry.0, shrink);
            match eval(&x, &mut trace) {
                Some(v) => *entry = (x, v),
                None => return finish(simplex, trace, iterations),
            }
        }
    }
    finish(simplex, trace, iterations)
}

fn finish(simplex: Vec<(Vec<f64>, f64)>, trace: Vec<f64>, iterations: usize) -> Minimum {
    let (x, f) = simplex
        .into_iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("non-empty simplex");
    Minimum {
        x,
        f,
        evaluations: trace.len(),
        trace,
        iterations,
    }
}

/// L-BFGS with central-difference gradients and a backtracking Armijo line
/// search. Records the objective at the start and after each iteration;
/// stops after `max_iters` iterations, when the relative decrease of one
/// iteration is at most `tol`, or when the gradient vanishes.
pub fn lbfgs<F: FnMut(&[f64]) -> f64>(mut f: F, x0: &[f64], max_iters: usize, tol: f64) -> Minimum {
    let mut evaluations = 0usize;
    let mut fx = |x: &[f64]| {
        evaluations += 1;
        f(x)
    };
    let mut x = x0.to_vec();
    let mut fcur = fx(&x);
    let mut trace = vec![fcur];
    let mut iterations = 0;
    if x.is_empty() {
        return Minimum {
            x,
            f: fcur,
            trace,
            iterations,
            evaluations,
        };
    }
    let mut g = central_difference(&mut fx, &x, FD_STEP);
    let mut memory: VecDeque<(Vec<f64>, Vec<f64>, f64)> = VecDeque::new();

    while iterations < max_iters {
        if g.iter().fold(0.0f64, |m, v| m.max(v.abs())) < GRAD_TOL {
            break;
        }
        let mut d = two_loop(&g, &memory);
        let mut slope = dot(&g, &d);
        if slope >= 0.0 {
            memory.clear();
            d = g.iter().map(|v| -v).collect();
            slope = -dot(&g, &g);
        }
        let mut t = if memory.is_empty() {
            (1.0 / norm(&g)).min(1.0)
        } else {
            1.0
        };
        let mut accepted = None;
        for _ in 0..MAX_BACKTRACKS {
            let trial: Vec<f64> = x.iter().zip(&d).map(|(x, d)| x + t * d).collect();
            let ft = fx(&trial);
            if ft <= fcur + ARMIJO * t * slope {
                accepted = Some((trial, ft));
                break;
            }
            t *= 0.5;
        }
        let Some((xn, fnew)) = accepted else { break };
        let gn = central_difference(&mut fx, &xn, FD_STEP);
        let s: Vec<f64> = xn.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = gn.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        if sy > 1e-12 {
            if memory.len() == LBFGS_MEMORY {
                memory.pop_front();
            }
            memory.push_back((s, y, 1.0 / sy));
        }
        let decrease = (fcur - fnew) / fcur.abs().max(fnew.abs()).max(1.0);
        x = xn;
        fcur = fnew;
        g = gn;
        trace.push(fcur);
        iterations += 1;
        if decrease <= tol {
            break;
        }
    }
    Minimum {
        x,
        f: fcur,
        trace,
        iterations,
        evaluations,
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn two_loop(g: &[f64], memory: &VecDeque<(Vec<f64>, Vec<f64>, f64)>) -> Vec<f64> {
    let mut q = g.to_vec();
    let mut alphas = Vec::with_capacity(memory.len());
    for (s, y, rho) in memory.iter().rev() {
        let a = rho * dot(s, &q);
        q.iter_mut().zip(y).for_each(|(q, y)| *q -= a * y);
        alphas.push(a);
    }
    if let Some((s, y, _)) = memory.back() {
        let gamma = dot(s, y) / dot(y, y);
        q.iter_mut().for_each(|v| *v *= gamma);
    }
    for ((s, y, rho), a) in memory.iter().zip(alphas.into_iter().rev()) {
        let b = rho * dot(y, &q);
        q.iter_mut().zip(s).for_each(|(q, s)| *q += (a - b) * s);
    }
    q.iter_mut().for_each(|v| *v = -*v);
    q
}
