//! Randomized invariants over the parameter space.

use proptest::prelude::*;

use uqcov::cubature::{builtin_korobov_vector, CubatureRule};
use uqcov::density::{erfinv, Density};
use uqcov::mdm::anchored_component;
use uqcov::transform::Transform;

fn densities() -> impl Strategy<Value = Density> {
    prop_oneof![
        (0.1f64..10.0).prop_map(|l| Density::exponential(l).unwrap()),
        (0.1f64..10.0).prop_map(|s| Density::gaussian(s).unwrap()),
        (2.1f64..12.0).prop_map(|c| Density::poly_tail(c).unwrap()),
    ]
}

proptest! {
    #[test]
    fn cdf_inverts_inv_cdf(d in densities(), u in 1e-6f64..0.999999) {
        let x = d.inv_cdf(u).unwrap();
        let back = d.cdf(x);
        prop_assert!((back - u).abs() <= 1e-13, "{d:?}: u={u}, x={x}, back={back}");
    }

    #[test]
    fn inv_cdf_is_monotone(d in densities(), u in 1e-6f64..0.999998, step in 1e-7f64..1e-3) {
        let v = (u + step).min(0.999999);
        prop_assert!(d.inv_cdf(u).unwrap() < d.inv_cdf(v).unwrap());
    }

    #[test]
    fn erfinv_odd_and_inverts(y in -0.999999f64..0.999999) {
        let x = erfinv(y).unwrap();
        let neg = erfinv(-y).unwrap();
        prop_assert!((x + neg).abs() <= 1e-15 * (1.0 + x.abs()));
        prop_assert!((libm::erf(x) - y).abs() <= 1e-14);
    }

    #[test]
    fn rules_are_exact_on_constants(c in -10.0f64..10.0, n in 1u64..500, d in 1usize..4) {
        let domains = vec![uqcov::density::Domain::HalfLine; d];
        let g = |_: &[f64]| Ok(c);
        let mid = CubatureRule::midpoint(n).unwrap().apply(g, &domains).unwrap();
        prop_assert!((mid - c).abs() <= 1e-12 * (1.0 + c.abs()));
        let n2 = n.next_power_of_two().max(2);
        let z = builtin_korobov_vector(n2, d, None).unwrap();
        let lat = CubatureRule::lattice(n2, z.components, None).unwrap().apply(g, &domains).unwrap();
        prop_assert!((lat - c).abs() <= 1e-12 * (1.0 + c.abs()));
    }

    #[test]
    fn anchored_decomposition_reconstructs(
        coeffs in prop::array::uniform4(-2.0f64..2.0),
        x in prop::array::uniform4(0.0f64..3.0),
    ) {
        // f mixes a product term, a curved term, and an additive part
        let f = move |v: &[f64]| {
            coeffs[0] * v[0] * v[1] + coeffs[1] * (v[2] * v[3]).sin()
                + coeffs[2] * v[0] * v[2] * v[3] + coeffs[3] + v[1]
        };
        let mut total = 0.0;
        for mask in 0u32..16 {
            let u: Vec<u32> = (0..4).filter(|j| mask >> j & 1 == 1).map(|j| j + 1).collect();
            let x_u: Vec<f64> = u.iter().map(|&j| x[j as usize - 1]).collect();
            total += anchored_component(&f, 4, &u, &x_u).unwrap();
        }
        prop_assert!((total - f(&x)).abs() <= 1e-11 * (1.0 + f(&x).abs()));
    }

    #[test]
    fn weight_integrates_to_one(d in densities(), a in 1.0f64..6.0) {
        // ∫ w(t) dt = 1: the transformed constant function keeps its mass
        let tr = Transform::scaled_inverse_cdf(d, a).unwrap();
        let (lo, hi) = tr.domain().cube_side();
        let r = uqcov::quad::integrate(|t| tr.weight(t).unwrap_or(0.0), lo, hi, 1e-11);
        prop_assert!((r.value - 1.0).abs() <= 1e-8, "{d:?} a={a}: {}", r.value);
    }
}
