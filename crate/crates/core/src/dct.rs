//! Pluggable 1-D cosine transforms used by the spectral solver.
//!
//! Conventions (unnormalised, matching common FFT libraries):
//!
//! ```text
//! DCT-II:  X[k] = sum_n x[n] cos(pi k (2n + 1) / 2N)
//! DCT-III: x[n] = X[0] / 2 + sum_{k>=1} X[k] cos(pi k (2n + 1) / 2N)
//! ```
//!
//! so `dct3(dct2(x)) = (N / 2) x`.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::PI;

/// A planned transform of one fixed length.
pub trait CosineTransform {
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Scratch elements required by [`dct2`](Self::dct2) and [`dct3`](Self::dct3).
    fn scratch_len(&self) -> usize;

    fn dct2(&self, buffer: &mut [f64], scratch: &mut [f64]);

    fn dct3(&self, buffer: &mut [f64], scratch: &mut [f64]);
}

/// Produces transforms for arbitrary lengths.
pub trait TransformPlanner {
    type Transform: CosineTransform;

    fn plan(&mut self, len: usize) -> Self::Transform;
}

/// Direct O(N^2) transform over a precomputed cosine table.
///
/// Dependency-free and exact to rounding; the `spe` crate swaps in an
/// FFT-backed planner for large images.
#[derive(Debug, Clone)]
pub struct CosineTable {
    len: usize,
    // cos(pi k (2n + 1) / 2N), row k.
    table: Arc<Vec<f64>>,
}

impl CosineTable {
    pub fn new(len: usize) -> Self {
        let mut table = Vec::with_capacity(len * len);
        for k in 0..len {
            for n in 0..len {
                // Reduce the angle index mod 4N before scaling for accuracy.
                let idx = (k * (2 * n + 1)) % (4 * len);
                table.push(libm::cos(PI * idx as f64 / (2 * len) as f64));
            }
        }
        Self {
            len,
            table: Arc::new(table),
        }
    }
}

impl CosineTransform for CosineTable {
    fn len(&self) -> usize {
        self.len
    }

    fn scratch_len(&self) -> usize {
        self.len
    }

    fn dct2(&self, buffer: &mut [f64], scratch: &mut [f64]) {
        let n = self.len;
        let scratch = &mut scratch[..n];
        scratch.copy_from_slice(buffer);
        for (k, out) in buffer.iter_mut().enumerate() {
            let row = &self.table[k * n..(k + 1) * n];
            *out = row.iter().zip(scratch.iter()).map(|(c, x)| c * x).sum();
        }
    }

    fn dct3(&self, buffer: &mut [f64], scratch: &mut [f64]) {
        let n = self.len;
        let scratch = &mut scratch[..n];
        scratch.copy_from_slice(buffer);
        scratch[0] *= 0.5;
        buffer.iter_mut().for_each(|v| *v = 0.0);
        for (k, &coef) in scratch.iter().enumerate() {
            let row = &self.table[k * n..(k + 1) * n];
            for (out, c) in buffer.iter_mut().zip(row) {
                *out += coef * c;
            }
        }
    }
}

/// Caches one [`CosineTable`] per length.
#[derive(Debug, Clone, Default)]
pub struct CosineTablePlanner {
    cache: BTreeMap<usize, CosineTable>,
}

impl CosineTablePlanner {
    pub fn new() -> Self {
        Self::default()
    }
}

impl TransformPlanner for CosineTablePlanner {
    type Transform = CosineTable;

    fn plan(&mut self, len: usize) -> CosineTable {
        self.cache.entry(len).or_insert_with(|| CosineTable::new(len)).clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn dct3_inverts_dct2_up_to_half_length() {
        let n = 7;
        let t = CosineTable::new(n);
        let x: Vec<f64> = (0..n).map(|i| (i as f64 * 1.3).sin() + 0.2).collect();
        let mut buf = x.clone();
        let mut scratch = vec![0.0; t.scratch_len()];
        t.dct2(&mut buf, &mut scratch);
        t.dct3(&mut buf, &mut scratch);
        for (a, b) in x.iter().zip(&buf) {
            assert!((a * n as f64 / 2.0 - b).abs() < 1e-12);
        }
    }

    #[test]
    fn dct2_of_constant_is_dc_only() {
        let t = CosineTable::new(5);
        let mut buf = vec![2.0; 5];
        let mut scratch = vec![0.0; 5];
        t.dct2(&mut buf, &mut scratch);
        assert!((buf[0] - 10.0).abs() < 1e-12);
        assert!(buf[1..].iter().all(|v| v.abs() < 1e-12));
    }
}
