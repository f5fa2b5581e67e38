use alloc::vec;
use alloc::vec::Vec;

use super::check_problem;
use crate::field::{ChannelField, GradientField};
use crate::{Error, Result};

/// Largest number of unknowns accepted by [`solve_dense`].
pub const DENSE_LIMIT: usize = 4096;

/// Assembles `I + lambda * D^T D` and `F + lambda * D^T g` directly from the
/// forward-difference matrix `D` (so `-D^T D` is the Neumann Laplacian and
/// `-D^T` the divergence), then solves by Cholesky factorisation.
pub fn solve_dense(fidelity: &ChannelField, target: &GradientField, lambda: f64) -> Result<ChannelField> {
    check_problem(fidelity, target, lambda)?;
    let (h, w) = fidelity.dims();
    let n = h * w;
    if n > DENSE_LIMIT {
        return Err(Error::TooLarge {
            limit: DENSE_LIMIT,
            actual: n,
        });
    }

    let mut a = vec![0.0; n * n];
    for p in 0..n {
        a[p * n + p] = 1.0;
    }
    let mut rhs = fidelity.data().to_vec();

    // Each row of D is e_q - e_p for a neighbouring pair (p, q).
    let mut add_difference = |p: usize, q: usize, g: f64| {
        a[p * n + p] += lambda;
        a[q * n + q] += lambda;
        a[p * n + q] -= lambda;
        a[q * n + p] -= lambda;
        rhs[p] -= lambda * g;
        rhs[q] += lambda * g;
    };
    for i in 0..h {
        for j in 0..w - 1 {
            let p = i * w + j;
            add_difference(p, p + 1, target.gx().data()[p]);
        }
    }
    for i in 0..h - 1 {
        for j in 0..w {
            let p = i * w + j;
            add_difference(p, p + w, target.gy().data()[p]);
        }
    }

    cholesky_in_place(&mut a, n)?;
    let x = cholesky_solve(&a, n, rhs);
    ChannelField::new(h, w, x)
}

/// Overwrites the lower triangle of `a` with `L` where `a = L L^T`.
fn cholesky_in_place(a: &mut [f64], n: usize) -> Result<()> {
    for j in 0..n {
        let mut d = a[j * n + j];
        for k in 0..j {
            d -= a[j * n + k] * a[j * n + k];
        }
        if d.is_nan() || d <= 0.0 {
            return Err(Error::NotPositiveDefinite);
        }
        let d = libm::sqrt(d);
        a[j * n + j] = d;
        for i in j + 1..n {
            let (upper, lower) = a.split_at_mut(i * n);
            let row_j = &upper[j * n..j * n + j];
            let row_i = &mut lower[..n];
            let s: f64 = row_i[..j].iter().zip(row_j).map(|(x, y)| x * y).sum();
            row_i[j] = (row_i[j] - s) / d;
        }
    }
    Ok(())
}

fn cholesky_solve(l: &[f64], n: usize, mut b: Vec<f64>) -> Vec<f64> {
    for i in 0..n {
        let s: f64 = (0..i).map(|k| l[i * n + k] * b[k]).sum();
        b[i] = (b[i] - s) / l[i * n + i];
    }
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|k| l[k * n + i] * b[k]).sum();
        b[i] = (b[i] - s) / l[i * n + i];
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::relative_residual;

    #[test]
    fn zero_problem_gives_zero() {
        let f = ChannelField::zeros(2, 2).unwrap();
        let g = GradientField::zeros(2, 2).unwrap();
        assert!(solve_dense(&f, &g, 3.0).unwrap().data().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn small_system_residual() {
        let f = ChannelField::from_fn(3, 3, |i, j| (i * 3 + j) as f64 * 0.7 - 2.0).unwrap();
        let t = ChannelField::from_fn(3, 3, |i, j| ((i + 2 * j) % 5) as f64).unwrap();
        let g = crate::gradient::forward_gradient(&t);
        let o = solve_dense(&f, &g, 1.0).unwrap();
        assert!(relative_residual(&o, &f, &g, 1.0) < 1e-12);
    }

    #[test]
    fn rejects_oversized_grids() {
        let f = ChannelField::zeros(65, 64).unwrap();
        let g = GradientField::zeros(65, 64).unwrap();
        assert_eq!(
            solve_dense(&f, &g, 1.0),
            Err(Error::TooLarge {
                limit: DENSE_LIMIT,
                actual: 65 * 64
            })
        );
    }
}
