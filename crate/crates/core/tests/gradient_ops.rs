mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use spe_core::gradient::{build_target_gradient, divergence, forward_gradient, laplacian, GradientTermVariant};
use spe_core::histmatch::{histogram_match_1d, MATCH_BINS};
use spe_core::{ChannelField, GradientField};

#[test]
fn forward_gradient_matches_elementwise_loop() {
    let mut r = rng(1);
    let f = random_field(&mut r, 5, 5, 10.0);
    let g = forward_gradient(&f);
    for i in 0..5 {
        for j in 0..5 {
            let gx = if j + 1 < 5 { f.get(i, j + 1) - f.get(i, j) } else { 0.0 };
            let gy = if i + 1 < 5 { f.get(i + 1, j) - f.get(i, j) } else { 0.0 };
            assert_eq!(g.gx().get(i, j), gx);
            assert_eq!(g.gy().get(i, j), gy);
        }
    }
}

#[test]
fn divergence_is_negative_adjoint() {
    let mut r = rng(2);
    let u = random_field(&mut r, 6, 7, 1.0);
    let g = random_gradient(&mut r, 6, 7, 1.0);
    let lhs = forward_gradient(&u).dot(&g);
    let rhs = u.dot(&divergence(&g));
    assert!((lhs + rhs).abs() <= 1e-10 * lhs.abs().max(rhs.abs()));
}

#[test]
fn div_grad_equals_five_point_stencil() {
    let mut r = rng(3);
    let (h, w) = (7, 9);
    let f = random_field(&mut r, h, w, 5.0);
    let lap = laplacian(&f);
    let composed = divergence(&forward_gradient(&f));
    assert_eq!(lap, composed);
    for i in 0..h {
        for j in 0..w {
            let c = f.get(i, j);
            let mut s = 0.0;
            if j > 0 {
                s += f.get(i, j - 1) - c;
            }
            if j + 1 < w {
                s += f.get(i, j + 1) - c;
            }
            if i > 0 {
                s += f.get(i - 1, j) - c;
            }
            if i + 1 < h {
                s += f.get(i + 1, j) - c;
            }
            assert!((lap.get(i, j) - s).abs() < 1e-12);
        }
    }
}

#[test]
fn laplacian_matches_assembled_matrix() {
    let mut r = rng(4);
    let f = random_field(&mut r, 8, 8, 3.0);
    let expected = matvec(&neumann_laplacian_matrix(8, 8), f.data());
    assert!(max_abs(laplacian(&f).data(), &expected) < 1e-12);
}

#[test]
fn histogram_matching_reproduces_reference_distribution() {
    let mut r = rng(5);
    // Skewed source, bimodal reference.
    let values: Vec<f64> = (0..1000).map(|_| r.gen::<f64>().powi(3) * 4.0).collect();
    let reference: Vec<f64> = (0..1000)
        .map(|k| {
            let centre = if k % 2 == 0 { -1.0 } else { 2.0 };
            centre + r.gen_range(-0.5..0.5) + r.gen_range(-0.5..0.5)
        })
        .collect();
    let out = histogram_match_1d(&values, &reference).unwrap();
    let ks = ks_statistic(&out, &reference);
    assert!(ks < 0.02, "KS = {ks}");
}

#[test]
fn histogram_matched_variant_against_itself_is_identity() {
    let mut r = rng(6);
    let gc = random_gradient(&mut r, 9, 11, 2.0);
    let gs = random_gradient(&mut r, 9, 11, 3.0);
    let t = build_target_gradient(GradientTermVariant::HistogramMatched { reference: &gs }, &gc, &gs).unwrap();
    let bin = 6.0 / MATCH_BINS as f64;
    assert!(t.gx().max_abs_diff(gs.gx()) <= bin);
    assert!(t.gy().max_abs_diff(gs.gy()) <= bin);
    // Boundary stays zero.
    for i in 0..9 {
        assert_eq!(t.gx().get(i, 10), 0.0);
    }
}

#[test]
fn histogram_matched_variant_accepts_reference_of_other_size() {
    let mut r = rng(7);
    let gc = random_gradient(&mut r, 6, 6, 1.0);
    let gs = random_gradient(&mut r, 6, 6, 1.0);
    let style = random_gradient(&mut r, 13, 4, 5.0);
    let t = build_target_gradient(GradientTermVariant::HistogramMatched { reference: &style }, &gc, &gs).unwrap();
    assert!(t.gx().data().iter().all(|v| v.abs() <= 5.0));
}

fn field_strategy(h: usize, w: usize) -> impl Strategy<Value = ChannelField> {
    proptest::collection::vec(-100.0f64..100.0, h * w).prop_map(move |d| ChannelField::new(h, w, d).unwrap())
}

fn problem_strategy() -> impl Strategy<Value = (ChannelField, GradientField)> {
    (2usize..10, 2usize..10).prop_flat_map(|(h, w)| {
        (field_strategy(h, w), field_strategy(h, w), field_strategy(h, w))
            .prop_map(|(u, gx, gy)| (u, GradientField::new(gx, gy).unwrap()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn adjointness_holds((u, g) in problem_strategy()) {
        let lhs = forward_gradient(&u).dot(&g);
        let rhs = u.dot(&divergence(&g));
        let scale = lhs.abs().max(rhs.abs()).max(1e-300);
        prop_assert!((lhs + rhs).abs() <= 1e-10 * scale);
    }

    #[test]
    fn laplacian_sums_to_zero((u, _g) in problem_strategy()) {
        let lap = laplacian(&u);
        let sum: f64 = lap.data().iter().sum();
        let mag: f64 = lap.data().iter().map(|v| v.abs()).sum();
        prop_assert!(sum.abs() <= 1e-8 * mag.max(1e-300));
    }

    #[test]
    fn original_variant_is_identity((u, g) in problem_strategy()) {
        let gc = forward_gradient(&u);
        let t = build_target_gradient(GradientTermVariant::Original, &gc, &g).unwrap();
        prop_assert_eq!(t, gc);
    }

    #[test]
    fn histogram_matching_is_monotone(
        values in proptest::collection::vec(-50.0f64..50.0, 1..300),
        reference in proptest::collection::vec(-5.0f64..80.0, 1..300),
    ) {
        let out = histogram_match_1d(&values, &reference).unwrap();
        for a in 0..values.len() {
            for b in 0..values.len() {
                if values[a] < values[b] {
                    prop_assert!(out[a] <= out[b]);
                }
            }
        }
    }
}
