//! Univariate probability densities over `ℝ₊` or `ℝ` with closed-form pdf,
//! CDF and inverse CDF.

use crate::{Error, Result};

/// Support of a density, which also fixes the cube side the transform layer
/// maps from: `[0,1)` for the half line, `(−1/2,1/2)` for the real line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    HalfLine,
    RealLine,
}

impl Domain {
    /// The open interval B ⊂ ℝ serving as the cube side.
    pub fn cube_side(self) -> (f64, f64) {
        match self {
            Domain::HalfLine => (0.0, 1.0),
            Domain::RealLine => (-0.5, 0.5),
        }
    }

    /// Whether `x` lies in the (closed-at-zero for the half line) support.
    pub fn contains(self, x: f64) -> bool {
        match self {
            Domain::HalfLine => x >= 0.0,
            Domain::RealLine => x.is_finite(),
        }
    }
}

/// A univariate probability density ρ. Exponential and PolyTail live on the
/// half line, Gaussian on the real line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Density {
    /// ρ(x) = e^{−x/λ}/λ on ℝ₊.
    Exponential { lambda: f64 },
    /// ρ(x) = e^{−x²/(2σ²)}/(σ√(2π)) on ℝ, centered.
    Gaussian { sigma: f64 },
    /// ρ(x) = (c−1)(1+x)^{−c} on ℝ₊, c > 2 so the mean exists.
    PolyTail { c: f64 },
}

impl Density {
    pub fn exponential(lambda: f64) -> Result<Self> {
        if lambda.is_finite() && lambda > 0.0 {
            Ok(Density::Exponential { lambda })
        } else {
            Err(Error::Config(format!("lambda must be positive, got {lambda}")))
        }
    }

    pub fn gaussian(sigma: f64) -> Result<Self> {
        if sigma.is_finite() && sigma > 0.0 {
            Ok(Density::Gaussian { sigma })
        } else {
            Err(Error::Config(format!("sigma must be positive, got {sigma}")))
        }
    }

    pub fn poly_tail(c: f64) -> Result<Self> {
        if c.is_finite() && c > 2.0 {
            Ok(Density::PolyTail { c })
        } else {
            Err(Error::Config(format!("c must exceed 2, got {c}")))
        }
    }

    pub fn domain(&self) -> Domain {
        match self {
            Density::Gaussian { .. } => Domain::RealLine,
            _ => Domain::HalfLine,
        }
    }

    /// ρ(x); errors when `x` is outside the support.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        if !self.domain().contains(x) {
            return Err(Error::Domain { what: "pdf argument outside support", value: x });
        }
        Ok(self.pdf_unchecked(x))
    }

    /// ρ(x) assuming x is in the support (hot path for the transform layer).
    pub(crate) fn pdf_unchecked(&self, x: f64) -> f64 {
        match *self {
            Density::Exponential { lambda } => (-x / lambda).exp() / lambda,
            Density::Gaussian { sigma } => {
                let z = x / sigma;
                (-0.5 * z * z).exp() / (sigma * SQRT_2PI)
            }
            Density::PolyTail { c } => (c - 1.0) * (1.0 + x).powf(-c),
        }
    }

    /// ρ′(x) on the open support (used for Jacobian-weight derivatives).
    pub(crate) fn pdf_prime_unchecked(&self, x: f64) -> f64 {
        match *self {
            Density::Exponential { lambda } => -self.pdf_unchecked(x) / lambda,
            Density::Gaussian { sigma } => -x / (sigma * sigma) * self.pdf_unchecked(x),
            Density::PolyTail { c } => -c / (1.0 + x) * self.pdf_unchecked(x),
        }
    }

    /// Φ_ρ(x), clamped to 0/1 outside the support.
    pub fn cdf(&self, x: f64) -> f64 {
        match *self {
            Density::Exponential { lambda } => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-x / lambda).exp_m1()
                }
            }
            Density::Gaussian { sigma } => 0.5 * libm::erfc(-x / (sigma * std::f64::consts::SQRT_2)),
            Density::PolyTail { c } => {
                if x <= 0.0 {
                    0.0
                } else {
                    1.0 - (1.0 + x).powf(1.0 - c)
                }
            }
        }
    }

    /// Φ_ρ⁻¹(u). Accepts u ∈ [0,1) on the half line and u ∈ (0,1) on the
    /// real line; excluded endpoints are domain errors.
    pub fn inv_cdf(&self, u: f64) -> Result<f64> {
        let ok = match self.domain() {
            Domain::HalfLine => (0.0..1.0).contains(&u),
            Domain::RealLine => u > 0.0 && u < 1.0,
        };
        if !ok {
            return Err(Error::Domain { what: "inv_cdf argument outside the open cube side", value: u });
        }
        Ok(match *self {
            Density::Exponential { lambda } => -lambda * (-u).ln_1p(),
            Density::Gaussian { sigma } => sigma * std::f64::consts::SQRT_2 * erfinv(2.0 * u - 1.0)?,
            Density::PolyTail { c } => (1.0 - u).powf(-1.0 / (c - 1.0)) - 1.0,
        })
    }
}

pub(crate) const SQRT_2PI: f64 = 2.5066282746310005024;

/// Inverse of the error function on (−1,1).
///
/// Rational initial guess (central and tail branches of the classical
/// inverse-normal approximation) followed by two Newton refinements against
/// `libm::erf`; near |y| = 1 the residual erf(x) − y is formed as
/// (1 − y) − erfc(x) to avoid cancellation. Accurate to ~1e−15 relative.
pub fn erfinv(y: f64) -> Result<f64> {
    if !(y > -1.0 && y < 1.0) {
        return Err(Error::Domain { what: "erfinv argument must lie in (-1,1)", value: y });
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    // Work with |y| and restore the sign at the end (odd function).
    let ay = y.abs();
    let mut x = norminv_half(ay) / std::f64::consts::SQRT_2;
    // Newton on erf: x -= (erf(x) - ay) * sqrt(pi)/2 * exp(x^2)
    const HALF_SQRT_PI: f64 = 0.8862269254527580137;
    for _ in 0..2 {
        let resid = if ay > 0.9 {
            (1.0 - ay) - libm::erfc(x)
        } else {
            libm::erf(x) - ay
        };
        x -= resid * HALF_SQRT_PI * (x * x).exp();
    }
    Ok(if y < 0.0 { -x } else { x })
}

/// Inverse standard-normal CDF at p = (1+y)/2 for y ∈ (0,1), i.e. p ∈ (1/2,1).
/// Rational approximation, ~1e−9 absolute; refined by the caller.
fn norminv_half(y: f64) -> f64 {
    const A: [f64; 6] = [
        -3.969683028665376e+01,
        2.209460984245205e+02,
        -2.759285104469687e+02,
        1.383577518672690e+02,
        -3.066479806614716e+01,
        2.506628277459239e+00,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e+01,
        1.615858368580409e+02,
        -1.556989798598866e+02,
        6.680131188771972e+01,
        -1.328068155288572e+01,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-03,
        -3.223964580411365e-01,
        -2.400758277161838e+00,
        -2.549732539343734e+00,
        4.374664141464968e+00,
        2.938163982698783e+00,
    ];
    const D: [f64; 4] = [
        7.784695709041462e-03,
        3.224671290700398e-01,
        2.445134137142996e+00,
        3.754408661907416e+00,
    ];
    // tail threshold of the approximation, in terms of 1 - p = (1 - y)/2
    const P_LOW: f64 = 0.02425;
    let half_one_minus_y = 0.5 * (1.0 - y);
    if half_one_minus_y < P_LOW {
        // upper tail
        let q = (-2.0 * half_one_minus_y.ln()).sqrt();
        -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else {
        let q = 0.5 * y; // p - 1/2
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad;

    /// Generic bisection inverter, used only as a test oracle.
    fn inv_cdf_bisect(d: &Density, u: f64) -> f64 {
        let (mut lo, mut hi) = match d.domain() {
            Domain::HalfLine => (0.0, 1.0),
            Domain::RealLine => (-1.0, 1.0),
        };
        while d.cdf(hi) < u {
            hi *= 2.0;
        }
        if d.domain() == Domain::RealLine {
            while d.cdf(lo) > u {
                lo *= 2.0;
            }
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if d.cdf(mid) < u {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn pdf_closed_forms() {
        let e = Density::exponential(1.0).unwrap();
        assert_eq!(e.pdf(0.0).unwrap(), 1.0);
        let g = Density::gaussian(1.0).unwrap();
        assert!((g.pdf(0.0).unwrap() - 0.3989422804014327).abs() < 1e-15);
        let p = Density::poly_tail(3.0).unwrap();
        assert!((p.pdf(1.0).unwrap() - 0.25).abs() < 1e-15);
        assert!(e.pdf(-0.5).is_err());
    }

    #[test]
    fn cdf_closed_forms() {
        let e = Density::exponential(1.0).unwrap();
        assert!((e.cdf(std::f64::consts::LN_2) - 0.5).abs() < 1e-15);
        let g = Density::gaussian(1.0).unwrap();
        assert!((g.cdf(0.0) - 0.5).abs() < 1e-15);
        let p = Density::poly_tail(3.0).unwrap();
        assert_eq!(p.cdf(0.0), 0.0);
        assert_eq!(p.cdf(-1.0), 0.0);
    }

    #[test]
    fn inv_cdf_closed_forms() {
        let e = Density::exponential(1.0).unwrap();
        let u = 1.0 - (-1.0f64).exp();
        assert!((e.inv_cdf(u).unwrap() - 1.0).abs() < 1e-14);
        let g = Density::gaussian(1.0).unwrap();
        assert_eq!(g.inv_cdf(0.5).unwrap(), 0.0);
        // standard-normal Φ(1), oracle value from bisection on the cdf
        assert!((g.inv_cdf(0.8413447461).unwrap() - 1.0).abs() < 1e-9);
        assert!(g.inv_cdf(0.0).is_err());
        assert!(e.inv_cdf(1.0).is_err());
        assert_eq!(e.inv_cdf(0.0).unwrap(), 0.0);
    }

    #[test]
    fn inv_cdf_matches_bisection_oracle() {
        let densities = [
            Density::exponential(0.7).unwrap(),
            Density::exponential(2.0).unwrap(),
            Density::gaussian(1.0).unwrap(),
            Density::gaussian(3.0).unwrap(),
            Density::poly_tail(2.5).unwrap(),
            Density::poly_tail(4.0).unwrap(),
        ];
        for d in &densities {
            for k in 1..200 {
                let u = k as f64 / 200.0;
                let x = d.inv_cdf(u).unwrap();
                let oracle = inv_cdf_bisect(d, u);
                assert!(
                    (x - oracle).abs() <= 1e-10 * (1.0 + oracle.abs()),
                    "{d:?} u={u}: {x} vs oracle {oracle}"
                );
                assert!((d.cdf(x) - u).abs() < 1e-13, "{d:?} roundtrip at u={u}");
            }
        }
    }

    #[test]
    fn erfinv_contract() {
        // erf(1) to 16 digits via its Taylor series (oracle, frozen):
        // erf(1) = 0.8427007929497149
        let x = erfinv(0.8427007929497149).unwrap();
        assert!((x - 1.0).abs() < 1e-10);
        assert_eq!(erfinv(0.0).unwrap(), 0.0);
        assert_eq!(erfinv(-0.5).unwrap(), -erfinv(0.5).unwrap());
        assert!(erfinv(1.0).is_err());
        assert!(erfinv(-1.0).is_err());
        // relative accuracy of the roundtrip across the range incl. deep tail
        for k in 1..1000 {
            let y = k as f64 / 1000.0;
            for s in [y, -y, 1.0 - y / 1000.0] {
                let x = erfinv(s).unwrap();
                assert!(
                    (libm::erf(x) - s).abs() <= 1e-14 * s.abs().max(1e-3),
                    "erfinv roundtrip failed at y={s}: x={x}"
                );
            }
        }
    }

    #[test]
    fn erf_one_series_oracle() {
        // Independent check of the frozen constant: erf(1) by Taylor series,
        // erf(x) = 2/√π Σ (−1)^k x^{2k+1}/(k!(2k+1)).
        let mut term = 1.0f64;
        let mut sum = 0.0f64;
        for k in 0..40 {
            sum += term / (2 * k + 1) as f64;
            term *= -1.0 / (k + 1) as f64;
        }
        let erf1 = 2.0 / std::f64::consts::PI.sqrt() * sum;
        assert!((erf1 - 0.8427007929497149).abs() < 1e-15);
        assert!((libm::erf(1.0) - erf1).abs() < 1e-15);
    }

    #[test]
    fn normalization() {
        for d in [
            Density::exponential(1.3).unwrap(),
            Density::gaussian(0.8).unwrap(),
            Density::poly_tail(2.7).unwrap(),
        ] {
            let mass = match d.domain() {
                Domain::HalfLine => quad::integrate_half_line(|x| d.pdf_unchecked(x), 1e-13),
                Domain::RealLine => quad::integrate_real_line(|x| d.pdf_unchecked(x), 1e-13),
            };
            assert!(mass.converged, "{d:?}");
            assert!((mass.value - 1.0).abs() < 1e-12, "{d:?}: mass {}", mass.value);
        }
    }
}
