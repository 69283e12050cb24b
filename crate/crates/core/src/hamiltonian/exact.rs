use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::PauliSum;
use crate::error::{Error, Result};

/// Up to this many qubits the full matrix is diagonalized.
pub const DENSE_MAX_QUBITS: usize = 10;
/// Largest operator accepted by [`exact_ground_energy`].
pub const EXACT_MAX_QUBITS: usize = 14;

const KRYLOV_DIM: usize = 100;
const MAX_RESTARTS: usize = 200;
const RESIDUAL_TOL: f64 = 1e-10;

/// Smallest eigenvalue of `h`.
///
/// Dense diagonalization up to [`DENSE_MAX_QUBITS`], restarted Lanczos on a
/// matrix-free product above that, and an error past [`EXACT_MAX_QUBITS`].
pub fn exact_ground_energy(h: &PauliSum) -> Result<f64> {
    let n = h.n_qubits();
    if n > EXACT_MAX_QUBITS {
        return Err(Error::TooLarge(format!(
            "exact diagonalization is limited to {EXACT_MAX_QUBITS} qubits, got {n}"
        )));
    }
    if n <= DENSE_MAX_QUBITS {
        Ok(dense_ground(h))
    } else {
        lanczos_ground(h)
    }
}

pub(crate) fn dense_ground(h: &PauliSum) -> f64 {
    let dim = 1usize << h.n_qubits();
    let masks = h.masks();
    let min = |v: &[f64]| v.iter().copied().fold(f64::INFINITY, f64::min);
    if h.is_real() {
        let mut m = DMatrix::<f64>::zeros(dim, dim);
        for (c, p) in &masks {
            for b in 0..dim {
                m[(b ^ p.x as usize, b)] += c * p.factor(b).re;
            }
        }
        min(SymmetricEigen::new(m).eigenvalues.as_slice())
    } else {
        let mut m = DMatrix::<Complex64>::zeros(dim, dim);
        for (c, p) in &masks {
            for b in 0..dim {
                m[(b ^ p.x as usize, b)] += p.factor(b) * *c;
            }
        }
        min(SymmetricEigen::new(m).eigenvalues.as_slice())
    }
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Restarted Lanczos with full reorthogonalization. Each cycle builds a
/// Krylov basis from the current guess and restarts from the lowest Ritz
/// vector until its residual is negligible.
pub(crate) fn lanczos_ground(h: &PauliSum) -> Result<f64> {
    let dim = 1usize << h.n_qubits();
    let m = KRYLOV_DIM.min(dim);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut start: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    let mut w = vec![Complex64::new(0.0, 0.0); dim];
    let mut best = f64::INFINITY;

    for _ in 0..MAX_RESTARTS {
        let s = norm(&start);
        start.iter_mut().for_each(|x| *x /= s);
        let mut basis: Vec<Vec<Complex64>> = vec![start.clone()];
        let mut alpha: Vec<f64> = Vec::with_capacity(m);
        let mut beta: Vec<f64> = Vec::with_capacity(m);
        let mut exhausted = false;

        for j in 0..m {
            h.apply(&basis[j], &mut w)?;
            alpha.push(dot(&basis[j], &w).re);
            for _ in 0..2 {
                for v in &basis {
                    let c = dot(v, &w);
                    w.iter_mut().zip(v).for_each(|(x, y)| *x -= c * y);
                }
            }
            let b = norm(&w);
            beta.push(b);
            if b < 1e-12 {
                exhausted = true;
                break;
            }
            if j + 1 < m {
                basis.push(w.iter().map(|x| x / b).collect());
            }
        }

        let k = alpha.len();
        let mut t = DMatrix::<f64>::zeros(k, k);
        for i in 0..k {
            t[(i, i)] = alpha[i];
            if i + 1 < k {
                t[(i, i + 1)] = beta[i];
                t[(i + 1, i)] = beta[i];
            }
        }
        let eig = SymmetricEigen::new(t);
        let (idx, &theta) = eig
            .eigenvalues
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .expect("non-empty Krylov space");
        best = best.min(theta);
        let y = eig.eigenvectors.column(idx);
        let residual = beta[k - 1] * y[k - 1].abs();
        if exhausted || residual < RESIDUAL_TOL * theta.abs().max(1.0) {
            return Ok(theta);
        }

        start.fill(Complex64::new(0.0, 0.0));
        for (v, &c) in basis.iter().zip(y.iter()) {
            start.iter_mut().zip(v).for_each(|(x, b)| *x += b * c);
        }
    }
    Ok(best)
}
