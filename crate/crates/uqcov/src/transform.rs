//! Change-of-variables maps ν: B → D, their derivatives and Jacobian
//! weights w(t) = ρ(ν(t))ν′(t), and the transformed integrand on the cube.

use crate::density::{Density, Domain};
use crate::{Error, Result};

/// The two supported transform families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TransformKind {
    /// ν_a(t) = a·Φ_ρ⁻¹(t) (argument shifted by 1/2 on the real line); a ≥ 1.
    ScaledInverseCdf { a: f64 },
    /// ν_b(t) = (1−t)^{−b} − 1; only meaningful for PolyTail densities.
    PolyGrowth { b: f64 },
}

/// A transform bundled with the density it is built for, so that Jacobian
/// weights and the h-machinery can be evaluated without re-pairing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transform {
    kind: TransformKind,
    density: Density,
}

impl Transform {
    /// ν_a = a·Φ_ρ⁻¹; requires a ≥ 1 (a = 1 is the classical CDF transform).
    pub fn scaled_inverse_cdf(density: Density, a: f64) -> Result<Self> {
        if !(a.is_finite() && a >= 1.0) {
            return Err(Error::Config(format!("scale a must satisfy a >= 1, got {a}")));
        }
        Ok(Transform { kind: TransformKind::ScaledInverseCdf { a }, density })
    }

    /// ν_b(t) = (1−t)^{−b} − 1 for a PolyTail density; other densities are a
    /// construction error.
    pub fn poly_growth(density: Density, b: f64) -> Result<Self> {
        if !(b.is_finite() && b > 0.0) {
            return Err(Error::Config(format!("exponent b must be positive, got {b}")));
        }
        match density {
            Density::PolyTail { .. } => Ok(Transform { kind: TransformKind::PolyGrowth { b }, density }),
            _ => Err(Error::Config("the polynomial-growth transform is only defined for PolyTail densities".into())),
        }
    }

    pub fn kind(&self) -> TransformKind {
        self.kind
    }

    pub fn density(&self) -> Density {
        self.density
    }

    pub fn domain(&self) -> Domain {
        self.density.domain()
    }

    fn check_t(&self, t: f64) -> Result<()> {
        let ok = match self.domain() {
            Domain::HalfLine => (0.0..1.0).contains(&t),
            Domain::RealLine => t > -0.5 && t < 0.5,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain { what: "transform argument at or beyond a singular endpoint", value: t })
        }
    }

    /// Maps t to the inverse-CDF argument (identity on the half line,
    /// shifted by 1/2 on the real line).
    fn u_of_t(&self, t: f64) -> f64 {
        match self.domain() {
            Domain::HalfLine => t,
            Domain::RealLine => t + 0.5,
        }
    }

    /// ν(t).
    pub fn nu(&self, t: f64) -> Result<f64> {
        self.check_t(t)?;
        match self.kind {
            TransformKind::ScaledInverseCdf { a } => Ok(a * self.density.inv_cdf(self.u_of_t(t))?),
            TransformKind::PolyGrowth { b } => Ok((1.0 - t).powf(-b) - 1.0),
        }
    }

    /// ν′(t) = a/ρ(Φ_ρ⁻¹(·)) for the scaled inverse CDF, b(1−t)^{−(b+1)}
    /// for polynomial growth.
    pub fn nu_prime(&self, t: f64) -> Result<f64> {
        self.check_t(t)?;
        match self.kind {
            TransformKind::ScaledInverseCdf { a } => {
                let y = self.density.inv_cdf(self.u_of_t(t))?;
                Ok(a / self.density.pdf_unchecked(y))
            }
            TransformKind::PolyGrowth { b } => Ok(b * (1.0 - t).powf(-(b + 1.0))),
        }
    }

    /// Jacobian weight w(t) = ρ(ν(t))ν′(t); equals a·ρ(a y)/ρ(y) with
    /// y = Φ_ρ⁻¹(·) for the scaled inverse CDF.
    pub fn weight(&self, t: f64) -> Result<f64> {
        self.check_t(t)?;
        match self.kind {
            TransformKind::ScaledInverseCdf { a } => {
                let y = self.density.inv_cdf(self.u_of_t(t))?;
                Ok(a * self.density.pdf_unchecked(a * y) / self.density.pdf_unchecked(y))
            }
            TransformKind::PolyGrowth { b } => {
                let nu = (1.0 - t).powf(-b) - 1.0;
                Ok(self.density.pdf_unchecked(nu) * b * (1.0 - t).powf(-(b + 1.0)))
            }
        }
    }

    /// w′(t), the derivative of the Jacobian weight (the h₂ ingredient).
    /// This is the true signed derivative; w is decreasing toward the
    /// singular endpoint for a > 1, so values there are negative.
    pub fn weight_prime(&self, t: f64) -> Result<f64> {
        self.check_t(t)?;
        match self.kind {
            TransformKind::ScaledInverseCdf { a } => {
                let d = self.density;
                let y = d.inv_cdf(self.u_of_t(t))?;
                let ry = d.pdf_unchecked(y);
                // w(t) = a ρ(a y)/ρ(y), dy/dt = 1/ρ(y):
                // w′ = a [a ρ′(a y) ρ(y) − ρ(a y) ρ′(y)] / ρ(y)³
                Ok(a * (a * d.pdf_prime_unchecked(a * y) * ry
                    - d.pdf_unchecked(a * y) * d.pdf_prime_unchecked(y))
                    / (ry * ry * ry))
            }
            TransformKind::PolyGrowth { b } => {
                // w(t) = b(c−1)(1−t)^{b(c−1)−1}
                let c = match self.density {
                    Density::PolyTail { c } => c,
                    _ => unreachable!(),
                };
                let e = b * (c - 1.0) - 1.0;
                Ok(-b * (c - 1.0) * e * (1.0 - t).powf(e - 1.0))
            }
        }
    }
}

/// The transformed integrand g(t) = f(ν₁(t₁),…,ν_d(t_d))·∏_j w_j(t_j)
/// on the product of cube sides.
pub struct TransformedIntegrand<'a> {
    f: &'a (dyn Fn(&[f64]) -> f64 + Sync),
    transforms: Vec<Transform>,
}

impl<'a> TransformedIntegrand<'a> {
    pub fn new(f: &'a (dyn Fn(&[f64]) -> f64 + Sync), transforms: Vec<Transform>) -> Result<Self> {
        if transforms.is_empty() {
            return Err(Error::Config("need at least one coordinate transform".into()));
        }
        Ok(TransformedIntegrand { f, transforms })
    }

    /// All coordinates share one transform.
    pub fn homogeneous(f: &'a (dyn Fn(&[f64]) -> f64 + Sync), tr: Transform, d: usize) -> Result<Self> {
        Self::new(f, vec![tr; d])
    }

    pub fn dim(&self) -> usize {
        self.transforms.len()
    }

    pub fn transforms(&self) -> &[Transform] {
        &self.transforms
    }

    /// g(t); t must have one coordinate per transform, each inside the open
    /// cube side of its domain.
    pub fn eval(&self, t: &[f64]) -> Result<f64> {
        if t.len() != self.transforms.len() {
            return Err(Error::Config(format!(
                "point has {} coordinates but the integrand has {}",
                t.len(),
                self.transforms.len()
            )));
        }
        let mut x = vec![0.0; t.len()];
        let mut w = 1.0;
        for (j, (&tj, tr)) in t.iter().zip(&self.transforms).enumerate() {
            x[j] = tr.nu(tj)?;
            w *= tr.weight(tj)?;
        }
        Ok((self.f)(&x) * w)
    }
}
