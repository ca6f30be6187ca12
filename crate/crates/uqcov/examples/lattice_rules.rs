//! Rank-1 lattice rules in several dimensions.
//!
//! A rank-1 lattice rule averages g over the points {i·z/n}, i < n, for a
//! generating vector z. The library ships Korobov-type vectors for n = 2^k
//! (see the korobov_search example for how they were picked); external
//! vectors can be loaded from one- or two-column text files.

use uqcov::analysis::{optimal_a, PExponent};
use uqcov::cubature::{builtin_korobov_vector, integrate_weighted, CubatureRule};
use uqcov::density::Density;
use uqcov::transform::{Transform, TransformedIntegrand};

fn main() {
    let rho = Density::exponential(1.0).unwrap();
    let (astar, _) = optimal_a(&rho, PExponent::INFINITY).unwrap();
    let d = 4;
    let f = |x: &[f64]| x.iter().product::<f64>(); // exact integral 1

    println!("d = {d}, f = prod(x_j), Exponential(1), a = a* = {astar:.4}");
    println!("{:>7} {:>22} {:>14} {:>14}", "n", "generating vector", "lattice err", "midpoint err");
    for k in 10..=15 {
        let n = 1u64 << k;
        let z = builtin_korobov_vector(n, d, None).unwrap();

        let tr = Transform::scaled_inverse_cdf(rho, astar).unwrap();
        let g = TransformedIntegrand::homogeneous(&f, tr, d).unwrap();
        let lattice = CubatureRule::lattice(n, z.components.clone(), None).unwrap();
        let lat_err = (integrate_weighted(&g, &lattice).unwrap() - 1.0).abs();

        // a tensor midpoint grid with a comparable budget: per-axis count
        // n^(1/d) rounded down, so the grid never exceeds n points
        let per_axis = (n as f64).powf(1.0 / d as f64).floor() as u64;
        let midpoint = CubatureRule::midpoint(per_axis).unwrap();
        let mid_err = (integrate_weighted(&g, &midpoint).unwrap() - 1.0).abs();

        println!("{n:>7} {:>22} {lat_err:>14.6e} {mid_err:>14.6e}", format!("{:?}", z.components));
    }
    println!("\nthe lattice rule uses all n points in every coordinate; the tensor");
    println!("grid spends its budget on n^(1/d) distinct values per axis");
}
