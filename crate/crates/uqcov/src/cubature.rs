//! Midpoint and rank-1 lattice rules on B^d, their composition with the
//! transform layer, and convergence-table helpers.
//!
//! Node evaluation is parallelized over fixed-size index chunks; each chunk
//! is summed left-to-right with Kahan compensation and the chunk partials
//! are combined in index order, so results are bit-identical regardless of
//! worker count. `UQCOV_THREADS` caps the thread pool.

use crate::density::Domain;
use crate::transform::TransformedIntegrand;
use crate::{Error, Result};

use std::sync::Once;

/// The rule family and its node count.
#[derive(Debug, Clone, PartialEq)]
pub enum RuleKind {
    /// Tensor midpoint grid: n points per axis, (i+1/2)/n, i = 0..n−1.
    Midpoint { n: u64 },
    /// Rank-1 lattice: {i·z/n} (+ optional shift mod 1), i = 0..n−1.
    Lattice { n: u64, z: Vec<u64>, shift: Option<Vec<f64>> },
}

/// A cubature rule on the unit cube (coordinates mapped to (−1/2,1/2) on
/// RealLine axes).
#[derive(Debug, Clone, PartialEq)]
pub struct CubatureRule {
    kind: RuleKind,
    epsilon_clip: bool,
}

impl CubatureRule {
    pub fn midpoint(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Config("midpoint rule needs n >= 1".into()));
        }
        Ok(CubatureRule { kind: RuleKind::Midpoint { n }, epsilon_clip: false })
    }

    pub fn lattice(n: u64, z: Vec<u64>, shift: Option<Vec<f64>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Config("lattice rule needs n >= 1".into()));
        }
        if z.is_empty() {
            return Err(Error::Config("generating vector is empty".into()));
        }
        if let Some(s) = &shift {
            if s.iter().any(|&x| !(0.0..1.0).contains(&x)) {
                return Err(Error::Config("shift coordinates must lie in [0,1)".into()));
            }
        }
        Ok(CubatureRule { kind: RuleKind::Lattice { n, z, shift }, epsilon_clip: false })
    }

    /// Opt in to nudging lattice coordinates that land exactly on the
    /// singular RealLine endpoint −1/2 (by one machine epsilon) instead of
    /// erroring. Off by default: silent clipping would corrupt error tables.
    pub fn with_epsilon_clip(mut self, clip: bool) -> Self {
        self.epsilon_clip = clip;
        self
    }

    pub fn kind(&self) -> &RuleKind {
        &self.kind
    }

    /// Total number of evaluation points for a d-dimensional application.
    pub fn point_count(&self, d: u32) -> u64 {
        match &self.kind {
            RuleKind::Midpoint { n } => n.pow(d),
            RuleKind::Lattice { n, .. } => *n,
        }
    }

    /// Writes node `i` into `out`; coordinates on RealLine axes are shifted
    /// by −1/2.
    fn node_into(&self, i: u64, domains: &[Domain], out: &mut [f64]) -> Result<()> {
        match &self.kind {
            RuleKind::Midpoint { n } => {
                let mut rest = i;
                for (j, dom) in domains.iter().enumerate() {
                    let digit = rest % n;
                    rest /= n;
                    let mut t = (digit as f64 + 0.5) / *n as f64;
                    if *dom == Domain::RealLine {
                        t -= 0.5;
                    }
                    out[j] = t;
                }
            }
            RuleKind::Lattice { n, z, shift } => {
                for (j, dom) in domains.iter().enumerate() {
                    let frac = ((i as u128 * z[j] as u128) % *n as u128) as f64 / *n as f64;
                    let mut t = match shift {
                        Some(s) => {
                            let v = frac + s[j];
                            if v >= 1.0 {
                                v - 1.0
                            } else {
                                v
                            }
                        }
                        None => frac,
                    };
                    if *dom == Domain::RealLine {
                        t -= 0.5;
                        if t == -0.5 {
                            if self.epsilon_clip {
                                t = -0.5 + f64::EPSILON;
                            } else {
                                return Err(Error::NonFiniteNode { index: i as usize, point: vec![-0.5] });
                            }
                        }
                    }
                    out[j] = t;
                }
            }
        }
        Ok(())
    }

    /// All nodes, in deterministic index order.
    pub fn nodes(&self, domains: &[Domain]) -> Result<Vec<Vec<f64>>> {
        let d = domains.len() as u32;
        if let RuleKind::Lattice { z, .. } = &self.kind {
            if z.len() < domains.len() {
                return Err(Error::Config(format!(
                    "generating vector has {} components but d = {}",
                    z.len(),
                    domains.len()
                )));
            }
        }
        let total = self.point_count(d);
        let mut nodes = Vec::with_capacity(total as usize);
        let mut buf = vec![0.0; domains.len()];
        for i in 0..total {
            self.node_into(i, domains, &mut buf)?;
            nodes.push(buf.clone());
        }
        Ok(nodes)
    }

    /// Equal-weight cubature of `g` over the (domain-mapped) unit cube.
    /// Errors if `g` is non-finite at a node.
    pub fn apply<G>(&self, g: G, domains: &[Domain]) -> Result<f64>
    where
        G: Fn(&[f64]) -> Result<f64> + Sync,
    {
        use rayon::prelude::*;
        init_thread_pool();
        if let RuleKind::Lattice { z, .. } = &self.kind {
            if z.len() < domains.len() {
                return Err(Error::Config(format!(
                    "generating vector has {} components but d = {}",
                    z.len(),
                    domains.len()
                )));
            }
        }
        let total = self.point_count(domains.len() as u32);
        const CHUNK: u64 = 8192;
        let n_chunks = total.div_ceil(CHUNK);
        let partials: Result<Vec<(f64, f64)>> = (0..n_chunks)
            .into_par_iter()
            .map(|c| {
                let mut buf = vec![0.0; domains.len()];
                let mut sum = 0.0f64;
                let mut comp = 0.0f64;
                let end = ((c + 1) * CHUNK).min(total);
                for i in c * CHUNK..end {
                    self.node_into(i, domains, &mut buf)?;
                    let v = g(&buf)?;
                    if !v.is_finite() {
                        return Err(Error::NonFiniteNode { index: i as usize, point: buf.clone() });
                    }
                    // Kahan step
                    let y = v - comp;
                    let t = sum + y;
                    comp = (t - sum) - y;
                    sum = t;
                }
                Ok((sum, comp))
            })
            .collect();
        let partials = partials?;
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for (s, c) in partials {
            let y = s - (comp + c);
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        Ok(sum / total as f64)
    }
}

/// Builds the global rayon pool once, honoring `UQCOV_THREADS`.
fn init_thread_pool() {
    static INIT: Once = Once::new();
    INIT.call_once(|| {
        if let Ok(v) = std::env::var("UQCOV_THREADS") {
            if let Ok(n) = v.parse::<usize>() {
                // Ignore failure: the pool may already be in use elsewhere.
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
            }
        }
    });
}

/// Q_{d,ρ,n}(f): apply `rule` to the transformed integrand.
pub fn integrate_weighted(g: &TransformedIntegrand<'_>, rule: &CubatureRule) -> Result<f64> {
    let domains: Vec<Domain> = g.transforms().iter().map(|tr| tr.domain()).collect();
    rule.apply(|t| g.eval(t), &domains)
}

// ----------------------------------------------- generating vectors ----

/// A lattice generating vector together with its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratingVector {
    pub components: Vec<u64>,
    pub declared_n: Option<u64>,
    pub source: String,
}

impl GeneratingVector {
    /// Advisory coprimality check: components sharing a factor with n
    /// degrade the lattice but are not rejected.
    pub fn coprimality_warnings(&self, n: u64) -> Vec<String> {
        fn gcd(mut a: u64, mut b: u64) -> u64 {
            while b != 0 {
                (a, b) = (b, a % b);
            }
            a
        }
        self.components
            .iter()
            .enumerate()
            .filter(|(_, &z)| gcd(z % n, n) != 1)
            .map(|(j, &z)| format!("component {} = {z} is not coprime with n = {n}", j + 1))
            .collect()
    }
}

/// Parses a generating-vector file: one positive integer per line, or two
/// whitespace-separated columns "index component" with contiguous 1-based
/// indices. Blank lines and `#` comments are ignored.
pub fn load_generating_vector(path: &std::path::Path) -> Result<GeneratingVector> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    let mut components = Vec::new();
    let mut two_column: Option<bool> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = lineno + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let is_two = match (two_column, fields.len()) {
            (None, 1) => false,
            (None, 2) => true,
            (Some(t), k) if (k == 2) == t => t,
            _ => {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("expected {} column(s)", if two_column == Some(true) { 2 } else { 1 }),
                })
            }
        };
        two_column = Some(is_two);
        let parse = |s: &str| -> Result<u64> {
            s.parse::<u64>().map_err(|_| Error::Parse { line: lineno, message: format!("not a positive integer: {s:?}") })
        };
        if is_two {
            let idx = parse(fields[0])?;
            if idx as usize != components.len() + 1 {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("index {idx} out of order (expected {})", components.len() + 1),
                });
            }
            components.push(parse(fields[1])?);
        } else {
            components.push(parse(fields[0])?);
        }
    }
    if components.is_empty() {
        return Err(Error::Parse { line: 0, message: "no components found".into() });
    }
    Ok(GeneratingVector { components, declared_n: None, source: path.display().to_string() })
}

/// Korobov multipliers for n = 2^k, k = 1..=20, chosen by minimizing the
/// P₂ lattice criterion in d = 4 over odd candidates (exhaustively for
/// k ≤ 16, by deterministic stride sampling above). Regenerate with the
/// `korobov_search` example.
const KOROBOV_MULTIPLIERS: [u64; 20] = [
    1, 1, 3, 3, 3, 3, 21, 39, 187, 493, 137, 1191, 2613, 3779, 4843, 19303, 4921, 36129, 210657, 288705,
];

/// Builtin Korobov-type generating vector z_j = a^{j−1} mod n for power-of-2
/// n ≤ 2^20; `multiplier` overrides the embedded table.
pub fn builtin_korobov_vector(n: u64, d: usize, multiplier: Option<u64>) -> Result<GeneratingVector> {
    if n == 0 || !n.is_power_of_two() || n > 1 << 20 {
        return Err(Error::Config(format!("builtin vectors require n a power of 2 in [2, 2^20], got {n}")));
    }
    let k = n.trailing_zeros() as usize;
    let a = multiplier.unwrap_or(KOROBOV_MULTIPLIERS[k - 1]);
    let mut components = Vec::with_capacity(d);
    let mut cur: u64 = 1;
    for _ in 0..d {
        components.push(cur);
        cur = ((cur as u128 * a as u128) % n as u128) as u64;
    }
    Ok(GeneratingVector { components, declared_n: Some(n), source: format!("builtin:korobov a={a}") })
}

// ------------------------------------------------ convergence tables ----

/// One row of an error-vs-n table.
#[derive(Debug, Clone, Copy)]
pub struct ConvergenceRow {
    pub n: u64,
    pub abs_error: f64,
    /// log(e_prev/e_this)/log(n_this/n_prev); None on the first row.
    pub observed_order: Option<f64>,
}

/// Absolute errors against a reference value, with per-step observed orders.
pub fn convergence_table(results: &[(u64, f64)], reference: f64) -> Vec<ConvergenceRow> {
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(results.len());
    for &(n, value) in results {
        let abs_error = (value - reference).abs();
        let observed_order = rows.last().map(|prev: &ConvergenceRow| {
            (prev.abs_error / abs_error).ln() / (n as f64 / prev.n as f64).ln()
        });
        rows.push(ConvergenceRow { n, abs_error, observed_order });
    }
    rows
}
