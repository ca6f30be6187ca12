//! Multivariate Decomposition Method over γ-weighted anchored spaces:
//! product weights, active sets, superposition dimension, the anchored
//! (inclusion–exclusion) decomposition, sample allocation, and the
//! assembled integrator.

use crate::analysis::PExponent;
use crate::cubature::{integrate_weighted, CubatureRule};
use crate::transform::{Transform, TransformedIntegrand};
use crate::{Error, Result};

use std::sync::Arc;

/// Hard caps of the active-set enumeration; exceeding them is an explicit
/// error, never a silent truncation.
const MAX_CARD: usize = 30;
const MAX_INDEX: u32 = 1_000_000;

/// Product weights γ_u = ∏_{j∈u} γ_j with a summability exponent q.
#[derive(Clone)]
pub struct ProductWeights {
    kind: WeightKind,
    q: PExponent,
}

#[derive(Clone)]
enum WeightKind {
    /// γ_j = j^{−β}.
    PowerLaw { beta: f64 },
    Custom(Arc<dyn Fn(u32) -> f64 + Send + Sync>),
}

impl std::fmt::Debug for ProductWeights {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.kind {
            WeightKind::PowerLaw { beta } => write!(f, "ProductWeights::power_law(beta={beta}, q={})", self.q.p()),
            WeightKind::Custom(_) => write!(f, "ProductWeights::custom(q={})", self.q.p()),
        }
    }
}

impl ProductWeights {
    pub fn power_law(beta: f64, q: f64) -> Result<Self> {
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::Config(format!("beta must be positive, got {beta}")));
        }
        Ok(ProductWeights { kind: WeightKind::PowerLaw { beta }, q: PExponent::new(q)? })
    }

    /// Arbitrary non-increasing positive γ_j; monotonicity is the caller's
    /// contract and is spot-checked by `active_set`.
    pub fn custom<G: Fn(u32) -> f64 + Send + Sync + 'static>(gamma: G, q: f64) -> Result<Self> {
        Ok(ProductWeights { kind: WeightKind::Custom(Arc::new(gamma)), q: PExponent::new(q)? })
    }

    pub fn gamma(&self, j: u32) -> f64 {
        match &self.kind {
            WeightKind::PowerLaw { beta } => (j as f64).powf(-beta),
            WeightKind::Custom(g) => g(j),
        }
    }

    /// γ_u, with γ_∅ = 1.
    pub fn gamma_u(&self, u: &[u32]) -> f64 {
        u.iter().map(|&j| self.gamma(j)).product()
    }

    pub fn q(&self) -> PExponent {
        self.q
    }

    /// Σ_j γ_j^{q*} < ∞, required by the MDM error split. Analytic for the
    /// power law (β·q* > 1; always summable at q* = ∞ since γ_j → 0).
    pub fn is_summable(&self) -> bool {
        let qs = self.q.conjugate();
        match &self.kind {
            WeightKind::PowerLaw { beta } => {
                if qs.is_infinite() {
                    true
                } else {
                    beta * qs > 1.0
                }
            }
            // no analytic test for custom weights; accept and let the
            // enumeration caps catch pathological cases
            WeightKind::Custom(_) => true,
        }
    }
}

/// The subsets whose criterion γ_u·‖I₁‖^{|u|} exceeds ε, in lexicographic
/// (|u|, elements) order, ∅ first.
#[derive(Debug, Clone)]
pub struct ActiveSet {
    pub subsets: Vec<Vec<u32>>,
    pub criterion: Vec<f64>,
    pub epsilon: f64,
    pub norm_i1: f64,
}

impl ActiveSet {
    /// max |u| over the active set.
    pub fn superposition_dimension(&self) -> usize {
        self.subsets.iter().map(|u| u.len()).max().unwrap_or(0)
    }
}

/// Enumerates Act(ε) = {u : γ_u·normI1^{|u|} > ε} by depth-first search over
/// ordered indices. A branch dies at index j once both the criterion fails
/// and γ_j·normI1 ≤ 1 (then no extension can recover, γ being
/// non-increasing); branches that could still recover are explored up to
/// the hard caps.
pub fn active_set(w: &ProductWeights, norm_i1: f64, eps: f64) -> Result<ActiveSet> {
    if !(eps > 0.0) {
        return Err(Error::Config(format!("eps must be positive, got {eps}")));
    }
    if !w.is_summable() {
        return Err(Error::Config(
            "weights are not q*-summable (power law needs beta*q* > 1)".to_string(),
        ));
    }
    let mut subsets: Vec<Vec<u32>> = vec![vec![]];
    let mut criterion: Vec<f64> = vec![1.0];
    let mut stack: Vec<u32> = Vec::new();
    dfs(w, norm_i1, eps, &mut stack, 1.0, &mut subsets, &mut criterion)?;
    // deterministic order: by cardinality, then lexicographic
    let mut order: Vec<usize> = (0..subsets.len()).collect();
    order.sort_by(|&i, &j| (subsets[i].len(), &subsets[i]).cmp(&(subsets[j].len(), &subsets[j])));
    let subsets: Vec<Vec<u32>> = order.iter().map(|&i| subsets[i].clone()).collect();
    let criterion: Vec<f64> = order.iter().map(|&i| criterion[i]).collect();
    Ok(ActiveSet { subsets, criterion, epsilon: eps, norm_i1 })
}

fn dfs(
    w: &ProductWeights,
    norm_i1: f64,
    eps: f64,
    u: &mut Vec<u32>,
    crit_u: f64,
    subsets: &mut Vec<Vec<u32>>,
    criterion: &mut Vec<f64>,
) -> Result<()> {
    let start = u.last().map_or(1, |&j| j + 1);
    let mut prev_gamma = f64::INFINITY;
    for j in start.. {
        if j > MAX_INDEX {
            return Err(Error::Config(format!(
                "active-set frontier exceeds the index cap {MAX_INDEX}; weights decay too slowly for eps = {eps}"
            )));
        }
        let gj = w.gamma(j);
        if gj > prev_gamma {
            return Err(Error::Config(format!("weights are not non-increasing at j = {j}")));
        }
        prev_gamma = gj;
        let crit = crit_u * gj * norm_i1;
        let passes = crit > eps;
        let recoverable = gj * norm_i1 > 1.0;
        if !passes && !recoverable {
            break;
        }
        if u.len() + 1 > MAX_CARD {
            return Err(Error::Config(format!(
                "active set requires subsets larger than the cardinality cap {MAX_CARD}"
            )));
        }
        u.push(j);
        if passes {
            subsets.push(u.clone());
            criterion.push(crit);
        }
        dfs(w, norm_i1, eps, u, crit, subsets, criterion)?;
        u.pop();
    }
    Ok(())
}

/// d(ε): the largest subset cardinality in the active set. For power-law
/// weights this is max{k : normI1^k/(k!)^β > ε} (the cheapest subset of
/// cardinality k is {1,…,k}), evaluated in log space.
pub fn superposition_dimension(w: &ProductWeights, norm_i1: f64, eps: f64) -> Result<usize> {
    if let WeightKind::PowerLaw { beta } = w.kind {
        if !(eps > 0.0) {
            return Err(Error::Config(format!("eps must be positive, got {eps}")));
        }
        let ln_eps = eps.ln();
        let mut d = 0usize;
        for k in 1..=MAX_CARD + 1 {
            let logc = k as f64 * norm_i1.ln() - beta * libm::lgamma(k as f64 + 1.0);
            if logc > ln_eps {
                d = k;
            } else if norm_i1 <= 1.0 {
                break;
            }
        }
        if d > MAX_CARD {
            return Err(Error::Config(format!("superposition dimension exceeds the cap {MAX_CARD}")));
        }
        return Ok(d);
    }
    Ok(active_set(w, norm_i1, eps)?.superposition_dimension())
}

/// f_u(x_u) = Σ_{v⊆u} (−1)^{|u|−|v|} f(x_v; 0): the anchored component,
/// by inclusion–exclusion over anchoring the complement at 0. `f` is
/// evaluated at `dim`-variate points; indices in `u` are 1-based and must
/// not exceed `dim`.
pub fn anchored_component<F: Fn(&[f64]) -> f64>(f: &F, dim: usize, u: &[u32], x_u: &[f64]) -> Result<f64> {
    if u.len() != x_u.len() {
        return Err(Error::Config(format!("|u| = {} but the point has {} coordinates", u.len(), x_u.len())));
    }
    if u.len() > MAX_CARD {
        return Err(Error::Config(format!("|u| = {} exceeds the 2^|u| cost guard ({MAX_CARD})", u.len())));
    }
    if let Some(&j) = u.iter().find(|&&j| j == 0 || j as usize > dim) {
        return Err(Error::Config(format!("subset index {j} outside 1..={dim}")));
    }
    let k = u.len();
    let mut x = vec![0.0; dim];
    let mut total = 0.0;
    for mask in 0u64..(1u64 << k) {
        for (i, &j) in u.iter().enumerate() {
            x[j as usize - 1] = if mask >> i & 1 == 1 { x_u[i] } else { 0.0 };
        }
        let sign = if (k as u32 - mask.count_ones()) % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * f(&x);
    }
    Ok(total)
}

/// Per-subset sample counts together with the active set they serve.
#[derive(Debug, Clone)]
pub struct MdmPlan {
    pub active: ActiveSet,
    /// Parallel to `active.subsets`.
    pub n_u: Vec<u64>,
    pub budget_total: u64,
}

fn next_pow2(x: f64) -> u64 {
    let n = x.max(1.0).ceil() as u64;
    n.next_power_of_two()
}

/// Lagrange proportional allocation under the error model
/// error(Q_{|u|,n}) ≤ γ_u·c1p^{|u|}·n^{−α}, targeting total error ε/2^{1/q*}
/// (the other half of ε covers truncation). n_u is rounded up to a power of
/// two; ∅ costs one exact evaluation.
pub fn allocate_samples(active: &ActiveSet, w: &ProductWeights, eps: f64, c1p: f64, alpha: f64) -> MdmPlan {
    let qs = w.q().conjugate();
    let mut n_u = vec![1u64; active.subsets.len()];
    if qs.is_infinite() {
        // max-norm split: every subset must satisfy γ_u c^{|u|} n^{−α} ≤ ε/2
        for (i, u) in active.subsets.iter().enumerate() {
            if u.is_empty() {
                continue;
            }
            let m = w.gamma_u(u) * c1p.powi(u.len() as i32);
            n_u[i] = next_pow2((2.0 * m / eps).powf(1.0 / alpha));
        }
    } else {
        let expo = qs / (alpha * qs + 1.0);
        let s: f64 = active
            .subsets
            .iter()
            .filter(|u| !u.is_empty())
            .map(|u| (w.gamma_u(u) * c1p.powi(u.len() as i32)).powf(expo))
            .sum();
        if s > 0.0 {
            let c = (2.0 * s / eps.powf(qs)).powf(1.0 / (alpha * qs));
            for (i, u) in active.subsets.iter().enumerate() {
                if u.is_empty() {
                    continue;
                }
                let m = w.gamma_u(u) * c1p.powi(u.len() as i32);
                n_u[i] = next_pow2(c * m.powf(expo));
            }
        }
    }
    let budget_total = n_u.iter().sum();
    MdmPlan { active: active.clone(), n_u, budget_total }
}

impl MdmPlan {
    /// Direct evaluation of the allocation inequality
    /// Σ(γ_u c^{|u|} n_u^{−α})^{q*} ≤ (ε/2^{1/q*})^{q*} (max over subsets
    /// vs ε/2 when q* = ∞).
    pub fn satisfies_target(&self, w: &ProductWeights, eps: f64, c1p: f64, alpha: f64) -> bool {
        let qs = w.q().conjugate();
        let terms = self.active.subsets.iter().zip(&self.n_u).filter(|(u, _)| !u.is_empty()).map(|(u, &n)| {
            w.gamma_u(u) * c1p.powi(u.len() as i32) * (n as f64).powf(-alpha)
        });
        if qs.is_infinite() {
            terms.fold(0.0f64, f64::max) <= eps / 2.0 + 1e-15
        } else {
            terms.map(|t| t.powf(qs)).sum::<f64>() <= eps.powf(qs) / 2.0 + 1e-15
        }
    }
}

/// The assembled MDM integrator: Σ_{u∈Act(ε)} Q_{|u|,ρ,n_u}(f_u) with the
/// given per-coordinate transform. `p` is the exponent of the function
/// space: it determines both ‖I₁‖ (truncation criterion) and the C₁,ₚ
/// factor in the cubature error model. `f` must be anchored (vanish when
/// any coordinate is 0) and depend only on its first `dim` coordinates;
/// the cubature for each subset is a tensor midpoint grid realizing the
/// allocated budget.
pub fn mdm_integrate<F>(
    f: &F,
    dim: usize,
    tr: Transform,
    w: &ProductWeights,
    p: PExponent,
    eps: f64,
) -> Result<(f64, MdmPlan)>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let norm_i1 = crate::analysis::operator_norm_i1(&tr.density(), p);
    let c1p = crate::analysis::c1p_bound(&tr, p).c1p_bound;
    if !c1p.is_finite() {
        return Err(Error::Config(
            "the transform's C_{1,p} bound is infinite; increase the scale a".to_string(),
        ));
    }
    let active = active_set(w, norm_i1, eps)?;
    let plan = allocate_samples(&active, w, eps, c1p, 1.0);
    let mut value = 0.0;
    for (u, &n) in plan.active.subsets.iter().zip(&plan.n_u) {
        if u.is_empty() {
            value += f(&vec![0.0; dim]);
            continue;
        }
        // components involving a coordinate f does not depend on vanish
        if u.iter().any(|&j| j as usize > dim) {
            continue;
        }
        let k = u.len();
        let g = |x_u: &[f64]| anchored_component(f, dim, u, x_u).expect("guards checked above");
        let integrand = TransformedIntegrand::homogeneous(&g, tr, k)?;
        let per_axis = (n as f64).powf(1.0 / k as f64).ceil() as u64;
        let rule = CubatureRule::midpoint(per_axis.max(1))?;
        value += integrate_weighted(&integrand, &rule)?;
    }
    Ok((value, plan))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::Density;

    #[test]
    fn active_set_hand_enumeration() {
        // PowerLaw β=2, ‖I₁‖=1, ε=0.3: {1} passes (1 > 0.3), {2} fails (0.25)
        let w = ProductWeights::power_law(2.0, 2.0).unwrap();
        let act = active_set(&w, 1.0, 0.3).unwrap();
        assert_eq!(act.subsets, vec![vec![], vec![1]]);
        // eps ≥ 1 with normI1 ≤ 1 → only ∅
        let act = active_set(&w, 1.0, 1.0).unwrap();
        assert_eq!(act.subsets, vec![Vec::<u32>::new()]);
        assert_eq!(act.superposition_dimension(), 0);
    }

    #[test]
    fn active_set_matches_brute_force() {
        // exhaustive enumeration over subsets of {1..8}, |u| ≤ 5
        for (beta, n1, eps) in [(2.0, 1.0, 1e-3), (1.5, 0.8, 1e-2), (3.0, 1.2, 1e-4)] {
            let w = ProductWeights::power_law(beta, 2.0).unwrap();
            let act = active_set(&w, n1, eps).unwrap();
            let mut expected: Vec<Vec<u32>> = Vec::new();
            for mask in 0u32..256 {
                let u: Vec<u32> = (1..=8).filter(|j| mask >> (j - 1) & 1 == 1).collect();
                if u.len() <= 5 {
                    let crit = w.gamma_u(&u) * n1.powi(u.len() as i32);
                    if u.is_empty() || crit > eps {
                        expected.push(u);
                    }
                }
            }
            expected.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
            let got: Vec<Vec<u32>> = act
                .subsets
                .iter()
                .filter(|u| u.iter().all(|&j| j <= 8) && u.len() <= 5)
                .cloned()
                .collect();
            assert_eq!(got, expected, "beta={beta} n1={n1} eps={eps}");
        }
    }

    #[test]
    fn superposition_dimension_table() {
        // λ=2, p=2 ⇒ ‖I₁‖ = 1; ε = 1e−4 ⇒ d(ε) = 4,3,3,3 for β = 2..5
        let d = Density::exponential(2.0).unwrap();
        let n1 = crate::analysis::operator_norm_i1(&d, PExponent::TWO);
        assert!((n1 - 1.0).abs() < 1e-14);
        for (beta, want) in [(2.0, 4), (3.0, 3), (4.0, 3), (5.0, 3)] {
            let w = ProductWeights::power_law(beta, 2.0).unwrap();
            assert_eq!(superposition_dimension(&w, n1, 1e-4).unwrap(), want, "beta={beta}");
            // and it agrees with the active-set maximum
            assert_eq!(active_set(&w, n1, 1e-4).unwrap().superposition_dimension(), want);
        }
        let w = ProductWeights::power_law(2.0, 2.0).unwrap();
        assert_eq!(superposition_dimension(&w, 1.0, 1.0).unwrap(), 0);
    }

    #[test]
    fn anchored_components() {
        // product: everything collapses to the full subset
        let f = |x: &[f64]| x.iter().product::<f64>();
        let v = anchored_component(&f, 3, &[1, 2, 3], &[2.0, 3.0, 4.0]).unwrap();
        assert!((v - 24.0).abs() < 1e-12);
        assert!(anchored_component(&f, 3, &[1, 2], &[2.0, 3.0]).unwrap().abs() < 1e-12);
        // additive: only singletons survive
        let g = |x: &[f64]| x.iter().map(|v| v.sin()).sum::<f64>();
        let v = anchored_component(&g, 4, &[2], &[0.7]).unwrap();
        assert!((v - 0.7f64.sin()).abs() < 1e-12);
        assert!(anchored_component(&g, 4, &[1, 3], &[0.5, 0.9]).unwrap().abs() < 1e-12);
        // ∅ is f(0)
        let h = |x: &[f64]| 5.0 + x[0];
        assert_eq!(anchored_component(&h, 1, &[], &[]).unwrap(), 5.0);
        // anchoring: zero coordinate kills the component
        let m = |x: &[f64]| x[0] * x[1] + x[0];
        assert!(anchored_component(&m, 2, &[1, 2], &[0.0, 3.0]).unwrap().abs() < 1e-12);
        assert!(anchored_component(&f, 3, &[1, 2, 3, 4], &[1.0; 4]).is_err());
    }

    #[test]
    fn decomposition_identity_brute_force() {
        let fs: Vec<Box<dyn Fn(&[f64]) -> f64>> = vec![
            Box::new(|x| x.iter().product()),
            Box::new(|x| x.iter().sum()),
            Box::new(|x| x[0] * x[1] + x[2].sin() * x[5] + x[3] * x[4] * x[0] + x[2]),
        ];
        let point = [0.3, 1.7, -0.4, 2.2, 0.9, -1.1];
        for f in &fs {
            let mut total = 0.0;
            for mask in 0u32..64 {
                let u: Vec<u32> = (1..=6).filter(|j| mask >> (j - 1) & 1 == 1).collect();
                let x_u: Vec<f64> = u.iter().map(|&j| point[j as usize - 1]).collect();
                total += anchored_component(f, 6, &u, &x_u).unwrap();
            }
            assert!((total - f(&point)).abs() < 1e-12, "got {total}, want {}", f(&point));
        }
    }

    #[test]
    fn allocation_feasibility() {
        for q in [1.0, 2.0, 4.0] {
            let w = ProductWeights::power_law(3.0, q).unwrap();
            let act = active_set(&w, 1.0, 1e-4).unwrap();
            let plan = allocate_samples(&act, &w, 1e-4, 2.5, 1.0);
            assert!(plan.satisfies_target(&w, 1e-4, 2.5, 1.0), "q={q}: {plan:?}");
            assert!(plan.n_u.iter().all(|&n| n >= 1));
            assert_eq!(plan.budget_total, plan.n_u.iter().sum::<u64>());
            // equal criterion values get equal n_u
            for (i, u) in act.subsets.iter().enumerate() {
                for (j, v) in act.subsets.iter().enumerate() {
                    if u.len() == v.len() && w.gamma_u(u) == w.gamma_u(v) {
                        assert_eq!(plan.n_u[i], plan.n_u[j]);
                    }
                }
            }
        }
    }

    #[test]
    fn non_summable_weights_rejected() {
        // β·q* = 0.5·2 = 1 is not summable
        let w = ProductWeights::power_law(0.5, 2.0).unwrap();
        assert!(active_set(&w, 1.0, 1e-3).is_err());
    }

    #[test]
    fn mdm_consistency_with_plain_cubature() {
        // γ_j = 1 up to j=3 and f = ∏x_j: only u = {1,2,3} contributes
        let d = Density::exponential(1.0).unwrap();
        let (astar, _) = crate::analysis::optimal_a(&d, PExponent::TWO).unwrap();
        let tr = Transform::scaled_inverse_cdf(d, astar).unwrap();
        let w = ProductWeights::custom(|j| if j <= 3 { 1.0 } else { 1e-12 }, 2.0).unwrap();
        let f = |x: &[f64]| x[..3].iter().product::<f64>();
        let (value, plan) = mdm_integrate(&f, 3, tr, &w, PExponent::TWO, 1e-3).unwrap();
        assert!((value - 1.0).abs() < 2e-3, "value = {value}");
        assert!(plan.active.subsets.contains(&vec![1, 2, 3]));
    }

    #[test]
    fn mdm_additive_case() {
        // additive anchored f: active singletons each contribute ∫x ρ = 1
        let d = Density::exponential(1.0).unwrap();
        let (astar, _) = crate::analysis::optimal_a(&d, PExponent::TWO).unwrap();
        let tr = Transform::scaled_inverse_cdf(d, astar).unwrap();
        let w = ProductWeights::power_law(2.0, 2.0).unwrap();
        let f = |x: &[f64]| x.iter().sum::<f64>();
        let eps = 1e-3;
        let (value, plan) = mdm_integrate(&f, 4, tr, &w, PExponent::TWO, eps).unwrap();
        let n1 = plan.active.norm_i1;
        let singles = (1..=4u32).filter(|&j| w.gamma(j) * n1 > eps).count() as f64;
        assert!((value - singles).abs() < 1e-2, "value = {value}, want {singles}");
        let zero = |_: &[f64]| 0.0;
        let (v0, _) = mdm_integrate(&zero, 2, tr, &w, PExponent::TWO, 1e-2).unwrap();
        assert_eq!(v0, 0.0);
    }
}
