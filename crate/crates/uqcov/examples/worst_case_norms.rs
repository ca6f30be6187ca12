//! Worst-case constants and the optimal scale.
//!
//! The quality of the cube transform is governed by the norms of three
//! auxiliary functions h₀, h₁, h₂ of the scale a; C₁,ₚ ≤ ‖h₁‖_∞ + ‖h₂‖_{L_p}
//! bounds the worst-case integration-error constant, and a* minimizes it.
//! Too small a scale makes the norms blow up; too large a scale wastes
//! resolution. The sweep below shows the sweet spot.

use uqcov::analysis::{c1p_bound, cdp_bound, optimal_a, PExponent};
use uqcov::density::Density;
use uqcov::transform::Transform;

fn main() {
    let rho = Density::exponential(1.0).unwrap();
    let p = PExponent::INFINITY;
    let (astar, bound) = optimal_a(&rho, p).unwrap();
    println!("Exponential(1), p=inf: a* = {astar:.6}, C_1 bound = {bound:.6}\n");

    println!("{:>6} {:>12} {:>12} {:>12} {:>12}", "a", "h0", "h1", "h2", "C_1p");
    for a in [1.0, 1.5, 2.0, 2.2, astar, 3.0, 4.0, 6.0] {
        let tr = Transform::scaled_inverse_cdf(rho, a).unwrap();
        let r = c1p_bound(&tr, p);
        println!(
            "{a:>6.3} {:>12.5e} {:>12.5e} {:>12.5e} {:>12.5e}",
            r.h0_sup, r.h1_sup, r.h2_lp, r.c1p_bound
        );
    }

    // the multivariate constant is the d-th power of the univariate one
    let tr = Transform::scaled_inverse_cdf(rho, astar).unwrap();
    let r = c1p_bound(&tr, p);
    println!("\nC_d bound at a* for d = 1..5:");
    for d in 1..=5u32 {
        println!("  d = {d}: {:.6e}", cdp_bound(&r, d));
    }

    // optimal scales across densities and exponents
    println!("\noptimal scales:");
    for d in [Density::exponential(1.0).unwrap(), Density::gaussian(1.0).unwrap()] {
        for p in [PExponent::ONE, PExponent::TWO, PExponent::new(3.0).unwrap(), PExponent::INFINITY] {
            let (a, c) = optimal_a(&d, p).unwrap();
            println!("  {d:?} p={:>3}: a* = {a:.6}, bound = {c:.6}", p.p());
        }
    }
}
