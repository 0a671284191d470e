//! Problem instances shared by the benchmarks.

use stefan_core::StefanProblem;

/// Melting instances at three times the threshold, labelled by exponent.
pub fn melting_instances() -> Vec<(String, StefanProblem)> {
    [0.0, 0.7, 2.0, 3.3]
        .into_iter()
        .map(|alpha| {
            let base = StefanProblem::unit(alpha, 1.0);
            (
                format!("alpha={alpha}"),
                base.with_h0(3.0 * base.h0_threshold()),
            )
        })
        .collect()
}
