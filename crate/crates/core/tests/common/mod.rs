#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use spe_core::{ChannelField, GradientField};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_field(rng: &mut StdRng, h: usize, w: usize, scale: f64) -> ChannelField {
    ChannelField::from_fn(h, w, |_, _| rng.gen_range(-scale..scale)).unwrap()
}

pub fn random_gradient(rng: &mut StdRng, h: usize, w: usize, scale: f64) -> GradientField {
    GradientField::new(random_field(rng, h, w, scale), random_field(rng, h, w, scale)).unwrap()
}

/// Explicit (HW)x(HW) Neumann Laplacian built from the 5-point stencil,
/// dropping neighbours that fall outside the grid.
pub fn neumann_laplacian_matrix(h: usize, w: usize) -> Vec<Vec<f64>> {
    let n = h * w;
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..h {
        for j in 0..w {
            let p = i * w + j;
            let mut neighbours = Vec::new();
            if i > 0 {
                neighbours.push(p - w);
            }
            if i + 1 < h {
                neighbours.push(p + w);
            }
            if j > 0 {
                neighbours.push(p - 1);
            }
            if j + 1 < w {
                neighbours.push(p + 1);
            }
            m[p][p] = -(neighbours.len() as f64);
            for q in neighbours {
                m[p][q] = 1.0;
            }
        }
    }
    m
}

pub fn matvec(m: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    m.iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn max_abs(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Two-sample Kolmogorov-Smirnov statistic by merging sorted samples.
pub fn ks_statistic(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(|x, y| x.partial_cmp(y).unwrap());
    b.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
    while i < a.len() && j < b.len() {
        let v = a[i].min(b[j]);
        while i < a.len() && a[i] <= v {
            i += 1;
        }
        while j < b.len() && b[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / a.len() as f64 - j as f64 / b.len() as f64).abs());
    }
    d
}
