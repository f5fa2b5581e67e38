use super::{apply_operator, check_problem, normal_rhs, relative_residual, CgOptions, SolveReport};
use crate::field::{ChannelField, GradientField};
use crate::Result;

fn axpy(a: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Matrix-free conjugate gradient on `(I - lambda * L) O = F - lambda * div G`,
/// started from the fidelity field.
///
/// On hitting `max_iterations` the iterate with the smallest residual is
/// returned and the report has `converged == false`.
pub fn solve_cg(
    fidelity: &ChannelField,
    target: &GradientField,
    lambda: f64,
    options: CgOptions,
) -> Result<(ChannelField, SolveReport)> {
    check_problem(fidelity, target, lambda)?;
    options.validate()?;
    let (h, w) = fidelity.dims();
    let b = normal_rhs(fidelity, target, lambda);
    let b_norm = b.norm();

    let mut x = fidelity.data().to_vec();
    let ax = apply_operator(fidelity, lambda);
    let mut r: alloc::vec::Vec<f64> = b.data().iter().zip(ax.data()).map(|(b, a)| b - a).collect();
    let mut rs = dot(&r, &r);
    let threshold = options.tolerance * if b_norm > 0.0 { b_norm } else { 1.0 };

    let mut best = (libm::sqrt(rs), x.clone());
    let mut iterations = 0;
    let mut converged = libm::sqrt(rs) <= threshold;
    let mut p = r.clone();

    while !converged && iterations < options.max_iterations {
        let ap = apply_operator(&ChannelField::from_raw(h, w, p.clone()), lambda);
        let pap = dot(&p, ap.data());
        if pap.is_nan() || pap <= 0.0 {
            break;
        }
        let alpha = rs / pap;
        axpy(alpha, &p, &mut x);
        axpy(-alpha, ap.data(), &mut r);
        let rs_new = dot(&r, &r);
        iterations += 1;

        let rn = libm::sqrt(rs_new);
        if rn < best.0 {
            best = (rn, x.clone());
        }
        if rn <= threshold {
            converged = true;
            break;
        }
        let beta = rs_new / rs;
        for (pi, ri) in p.iter_mut().zip(&r) {
            *pi = ri + beta * *pi;
        }
        rs = rs_new;
    }

    let solution = if converged {
        ChannelField::from_raw(h, w, x)
    } else {
        ChannelField::from_raw(h, w, best.1)
    };
    let report = SolveReport {
        residual_norm: relative_residual(&solution, fidelity, target, lambda),
        iterations,
        wall_time_seconds: 0.0,
        converged,
    };
    Ok((solution, report))
}
