use std::sync::Arc;

use rustdct::{DctPlanner, TransformType2And3};
use spe_core::dct::{CosineTransform, TransformPlanner};

/// FFT-backed cosine transforms from `rustdct`, O(N log N) per row.
pub struct RustDctPlanner {
    inner: DctPlanner<f64>,
}

impl Default for RustDctPlanner {
    fn default() -> Self {
        Self {
            inner: DctPlanner::new(),
        }
    }
}

impl RustDctPlanner {
    pub fn new() -> Self {
        Self::default()
    }
}

#[derive(Clone)]
pub struct FftCosine(Arc<dyn TransformType2And3<f64>>);

impl CosineTransform for FftCosine {
    fn len(&self) -> usize {
        self.0.len()
    }

    fn scratch_len(&self) -> usize {
        self.0.get_scratch_len()
    }

    fn dct2(&self, buffer: &mut [f64], scratch: &mut [f64]) {
        let n = self.0.get_scratch_len();
        self.0.process_dct2_with_scratch(buffer, &mut scratch[..n]);
    }

    fn dct3(&self, buffer: &mut [f64], scratch: &mut [f64]) {
        let n = self.0.get_scratch_len();
        self.0.process_dct3_with_scratch(buffer, &mut scratch[..n]);
    }
}

impl TransformPlanner for RustDctPlanner {
    type Transform = FftCosine;

    fn plan(&mut self, len: usize) -> FftCosine {
        FftCosine(self.inner.plan_dct2(len))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use spe_core::dct::CosineTable;

    #[test]
    fn matches_cosine_table_conventions() {
        let mut planner = RustDctPlanner::new();
        for n in [2, 3, 5, 8, 17, 40] {
            let fast = planner.plan(n);
            let slow = CosineTable::new(n);
            let x: Vec<f64> = (0..n).map(|i| ((i * 7 + 3) % 11) as f64 - 4.5).collect();
            let mut s1 = vec![0.0; fast.scratch_len().max(1)];
            let mut s2 = vec![0.0; slow.scratch_len()];
            let (mut a, mut b) = (x.clone(), x.clone());
            fast.dct2(&mut a, &mut s1);
            slow.dct2(&mut b, &mut s2);
            assert!(a.iter().zip(&b).all(|(p, q)| (p - q).abs() < 1e-10), "dct2 n={n}");
            let (mut a, mut b) = (x.clone(), x);
            fast.dct3(&mut a, &mut s1);
            slow.dct3(&mut b, &mut s2);
            assert!(a.iter().zip(&b).all(|(p, q)| (p - q).abs() < 1e-10), "dct3 n={n}");
        }
    }
}
