//! Convergence of the midpoint rule under different scales.
//!
//! With the scale at a* the mapped integrand has a bounded mixed derivative
//! and the midpoint rule converges at second order; at a = 1 (the plain
//! inverse-CDF transform) the integrand has endpoint singularities and the
//! order drops to one. The observed orders below make the difference
//! concrete.

use uqcov::analysis::{optimal_a, PExponent};
use uqcov::cubature::{convergence_table, integrate_weighted, CubatureRule};
use uqcov::density::Density;
use uqcov::transform::{Transform, TransformedIntegrand};

fn main() {
    let rho = Density::exponential(1.0).unwrap();
    let (astar, _) = optimal_a(&rho, PExponent::INFINITY).unwrap();
    let f = |x: &[f64]| x[0];

    for a in [astar, 1.0] {
        let tr = Transform::scaled_inverse_cdf(rho, a).unwrap();
        let g = TransformedIntegrand::homogeneous(&f, tr, 1).unwrap();
        let results: Vec<(u64, f64)> = (1..=6)
            .map(|k| {
                let n = 10u64.pow(k);
                let rule = CubatureRule::midpoint(n).unwrap();
                (n, integrate_weighted(&g, &rule).unwrap())
            })
            .collect();
        println!("a = {a:.4}");
        println!("{:>9} {:>14} {:>8}", "n", "abs error", "order");
        for row in convergence_table(&results, 1.0) {
            match row.observed_order {
                Some(o) => println!("{:>9} {:>14.6e} {o:>8.3}", row.n, row.abs_error),
                None => println!("{:>9} {:>14.6e} {:>8}", row.n, row.abs_error, "-"),
            }
        }
        println!();
    }
}
