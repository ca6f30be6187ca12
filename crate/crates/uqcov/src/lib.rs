//! Weighted integration over unbounded domains via scale-tuned changes of
//! variables.
//!
//! The crate transforms ρ-weighted integrals over `ℝ₊^d` or `ℝ^d` to ordinary
//! Lebesgue integrals over the unit cube using per-coordinate maps
//! `ν_a(t) = a·Φ_ρ⁻¹(t)` (or a polynomial-growth map for heavy-tailed
//! densities), then applies midpoint or rank-1 lattice cubature to the
//! transformed integrand. The scale `a` controls how fast the transformed
//! integrand decays at the cube boundary; [`analysis`] provides the
//! worst-case norm machinery (`h`-function norms, `C₁,ₚ` bounds, optimal
//! scales) that quantifies this, and [`mdm`] builds a multivariate
//! decomposition method for weighted infinite-variate integration on top of
//! the cubature layer.
//!
//! ```
//! use uqcov::density::Density;
//! use uqcov::transform::{Transform, TransformedIntegrand};
//! use uqcov::cubature::{CubatureRule, integrate_weighted};
//!
//! // ∫₀^∞ x e^{-x} dx = 1, computed on the unit cube with scale a = 2.5
//! let rho = Density::exponential(1.0).unwrap();
//! let tr = Transform::scaled_inverse_cdf(rho, 2.5).unwrap();
//! let f = |x: &[f64]| x[0];
//! let g = TransformedIntegrand::homogeneous(&f, tr, 1).unwrap();
//! let rule = CubatureRule::midpoint(10_000).unwrap();
//! let q = integrate_weighted(&g, &rule).unwrap();
//! assert!((q - 1.0).abs() < 1e-6);
//! ```

pub mod analysis;
pub mod cli;
pub mod cubature;
pub mod density;
pub mod mdm;
pub mod quad;
pub mod transform;

mod error;

pub use error::{Error, Result};
