use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use super::{check_problem, normal_rhs, ScreenedPoisson};
use crate::dct::{CosineTransform, TransformPlanner};
use crate::field::{ChannelField, GradientField};
use crate::Result;

/// Eigenvalues `2 cos(pi k / n) - 2` of the 1-D Neumann second difference.
fn neumann_eigenvalues(n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| 2.0 * libm::cos(PI * k as f64 / n as f64) - 2.0)
        .collect()
}

fn transpose(src: &[f64], rows: usize, cols: usize, dst: &mut [f64]) {
    for i in 0..rows {
        for j in 0..cols {
            dst[j * rows + i] = src[i * cols + j];
        }
    }
}

fn for_each_row<T: CosineTransform>(
    data: &mut [f64],
    plan: &T,
    scratch: &mut [f64],
    op: fn(&T, &mut [f64], &mut [f64]),
) {
    for row in data.chunks_exact_mut(plan.len()) {
        op(plan, row, scratch);
    }
}

impl<P: TransformPlanner> ScreenedPoisson<P> {
    /// Direct solve by diagonalising `I - lambda * L` with the 2-D DCT-II.
    ///
    /// Each coefficient is divided by `1 - lambda * (lx[j] + ly[i])`, which is
    /// at least 1 because the Neumann eigenvalues are non-positive.
    pub fn solve_spectral(
        &mut self,
        fidelity: &ChannelField,
        target: &GradientField,
        lambda: f64,
    ) -> Result<ChannelField> {
        check_problem(fidelity, target, lambda)?;
        if lambda == 0.0 {
            return Ok(fidelity.clone());
        }
        let (h, w) = fidelity.dims();
        let rows = self.planner.plan(w);
        let cols = self.planner.plan(h);
        let mut scratch = vec![0.0; rows.scratch_len().max(cols.scratch_len())];

        let mut data = normal_rhs(fidelity, target, lambda).into_data();
        let mut tr = vec![0.0; h * w];

        for_each_row(&mut data, &rows, &mut scratch, P::Transform::dct2);
        transpose(&data, h, w, &mut tr);
        for_each_row(&mut tr, &cols, &mut scratch, P::Transform::dct2);

        // `tr` is laid out as w rows of length h.
        let lx = neumann_eigenvalues(w);
        let ly = neumann_eigenvalues(h);
        let scale = 4.0 / (h * w) as f64;
        for (j, col) in tr.chunks_exact_mut(h).enumerate() {
            for (i, v) in col.iter_mut().enumerate() {
                *v *= scale / (1.0 - lambda * (lx[j] + ly[i]));
            }
        }

        for_each_row(&mut tr, &cols, &mut scratch, P::Transform::dct3);
        transpose(&tr, w, h, &mut data);
        for_each_row(&mut data, &rows, &mut scratch, P::Transform::dct3);

        Ok(ChannelField::from_raw(h, w, data))
    }
}
