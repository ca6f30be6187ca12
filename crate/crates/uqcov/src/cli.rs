//! Command-line front end: experiment tables, norm/scale reports and ad-hoc
//! integration runs, in aligned-text or CSV form.

use crate::analysis::{self, PExponent};
use crate::cubature::{self, CubatureRule};
use crate::density::Density;
use crate::mdm::{self, ProductWeights};
use crate::transform::{Transform, TransformedIntegrand};
use crate::{Error, Result};

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "uqcov", version, about = "Weighted integration over unbounded domains via scale-tuned changes of variables")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Midpoint-rule error table: ∫x e^{−x}dx on the half line.
    Test1,
    /// Midpoint-rule error table: E|x| for the standard Gaussian.
    Test2,
    /// Lattice-rule error tables (d = 3 and 4) for the product integrand.
    Test3(Test3Args),
    /// Optimal scale a* and the C₁,ₚ bound at a*.
    Astar(AstarArgs),
    /// h-function norms and the C₁,ₚ bound for one (density, transform, p).
    Norms(NormsArgs),
    /// Superposition dimension d(ε) per weight exponent β.
    Dofeps(DofepsArgs),
    /// One weighted integration run.
    Integrate(IntegrateArgs),
    /// Multivariate decomposition method run.
    Mdm(MdmArgs),
}

#[derive(Args, Debug, Clone)]
pub struct DensityArgs {
    /// Density kind.
    #[arg(long, value_enum, default_value_t = DensityKind::Exp)]
    pub density: DensityKind,
    /// Exponential scale λ.
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    /// Gaussian scale σ.
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    /// PolyTail exponent c (> 2).
    #[arg(long, default_value_t = 3.0)]
    pub c: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DensityKind {
    Exp,
    Gauss,
    Polytail,
}

impl DensityArgs {
    pub fn build(&self) -> Result<Density> {
        match self.density {
            DensityKind::Exp => Density::exponential(self.lambda)
                .map_err(|_| Error::Config(format!("--lambda must be positive, got {}", self.lambda))),
            DensityKind::Gauss => Density::gaussian(self.sigma)
                .map_err(|_| Error::Config(format!("--sigma must be positive, got {}", self.sigma))),
            DensityKind::Polytail => {
                Density::poly_tail(self.c).map_err(|_| Error::Config(format!("--c must exceed 2, got {}", self.c)))
            }
        }
    }
}

#[derive(Args, Debug)]
pub struct Test3Args {
    /// Generating-vector file (one component per line, or "index component").
    #[arg(long)]
    pub gen_vector: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct AstarArgs {
    #[command(flatten)]
    pub density: DensityArgs,
    /// Exponent p (a number or "inf").
    #[arg(long, default_value = "inf", value_parser = parse_p)]
    pub p: f64,
}

#[derive(Args, Debug)]
pub struct NormsArgs {
    #[command(flatten)]
    pub density: DensityArgs,
    #[arg(long, default_value = "inf", value_parser = parse_p)]
    pub p: f64,
    /// Scale a ≥ 1, or "auto" for a*.
    #[arg(long, default_value = "auto")]
    pub a: String,
    /// Use the polynomial-growth transform with this exponent b
    /// (PolyTail only) instead of the scaled inverse CDF.
    #[arg(long)]
    pub b: Option<f64>,
}

#[derive(Args, Debug)]
pub struct DofepsArgs {
    /// Exponential scale λ.
    #[arg(long, default_value_t = 2.0)]
    pub lambda: f64,
    #[arg(long, default_value = "2", value_parser = parse_p)]
    pub p: f64,
    /// Truncation target ε.
    #[arg(long, default_value_t = 1e-4)]
    pub eps: f64,
    /// Weight exponents β (repeatable).
    #[arg(long = "beta", num_args = 1.., default_values_t = [2.0, 3.0, 4.0, 5.0])]
    pub betas: Vec<f64>,
}

#[derive(Args, Debug)]
pub struct IntegrateArgs {
    #[command(flatten)]
    pub density: DensityArgs,
    /// Built-in integrand: builtin:linear, builtin:abs or builtin:prod.
    #[arg(long, default_value = "builtin:prod")]
    pub f: String,
    #[arg(long, default_value_t = 1)]
    pub dims: usize,
    #[arg(long, value_enum, default_value_t = RuleChoice::Midpoint)]
    pub rule: RuleChoice,
    /// Nodes: per axis for midpoint, total for lattice.
    #[arg(long, default_value_t = 1024)]
    pub n: u64,
    /// Scale a ≥ 1, or "auto" for a*(p).
    #[arg(long, default_value = "auto")]
    pub a: String,
    #[arg(long, default_value = "inf", value_parser = parse_p)]
    pub p: f64,
    #[arg(long)]
    pub gen_vector: Option<PathBuf>,
    /// Emit (t, g(t)) samples of the transformed integrand (d = 1 only)
    /// instead of the integral value.
    #[arg(long, default_value_t = false)]
    pub dump_integrand: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RuleChoice {
    Midpoint,
    Lattice,
}

#[derive(Args, Debug)]
pub struct MdmArgs {
    #[command(flatten)]
    pub density: DensityArgs,
    #[arg(long, default_value = "2", value_parser = parse_p)]
    pub p: f64,
    /// Product-weight exponent: γ_j = j^{−β}.
    #[arg(long, default_value_t = 2.0)]
    pub beta: f64,
    /// Weight summability exponent q.
    #[arg(long, default_value_t = 2.0, value_parser = parse_p)]
    pub q: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub eps: f64,
    #[arg(long, default_value = "auto")]
    pub a: String,
    #[arg(long, default_value = "builtin:prod")]
    pub f: String,
    #[arg(long, default_value_t = 3)]
    pub dims: usize,
}

fn parse_p(s: &str) -> std::result::Result<f64, String> {
    if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") {
        return Ok(f64::INFINITY);
    }
    let v: f64 = s.parse().map_err(|_| format!("expected a number or \"inf\", got {s:?}"))?;
    if v >= 1.0 {
        Ok(v)
    } else {
        Err(format!("p must lie in [1, inf], got {v}"))
    }
}

fn parse_a(s: &str, d: &Density, p: PExponent) -> Result<f64> {
    if s.eq_ignore_ascii_case("auto") {
        return Ok(analysis::optimal_a(d, p)?.0);
    }
    let a: f64 = s
        .parse()
        .map_err(|_| Error::Config(format!("--a expects a real >= 1 or \"auto\", got {s:?}")))?;
    if a >= 1.0 {
        Ok(a)
    } else {
        Err(Error::Config(format!("--a must be >= 1, got {a}")))
    }
}

// ------------------------------------------------------------ tables ----

/// A titled table: the single payload format both renderers share.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Num(f64),
    Text(String),
}

impl Cell {
    fn render(&self, csv: bool) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            // 17 significant digits in CSV, 6-digit scientific otherwise
            Cell::Num(v) => {
                if csv {
                    format!("{v:.16e}")
                } else {
                    sci6(*v)
                }
            }
            Cell::Text(s) => s.clone(),
        }
    }
}

/// Scientific notation with 6 digits after the point and a two-digit
/// exponent, e.g. 3.424093e-02.
fn sci6(v: f64) -> String {
    if !v.is_finite() {
        return format!("{v}");
    }
    let s = format!("{v:.6e}");
    // pad the exponent to two digits: "1.5e-7" style -> "1.5e-07"
    if let Some(pos) = s.find('e') {
        let (mant, exp) = s.split_at(pos);
        let exp = &exp[1..];
        let (sign, digits) = match exp.strip_prefix('-') {
            Some(d) => ("-", d),
            None => ("+", exp.strip_prefix('+').unwrap_or(exp)),
        };
        return format!("{mant}e{sign}{digits:0>2}");
    }
    s
}

pub fn render(tables: &[Table], format: Format) -> String {
    let mut out = String::new();
    for (ti, t) in tables.iter().enumerate() {
        if ti > 0 {
            out.push('\n');
        }
        match format {
            Format::Csv => {
                out.push_str(&csv_row(std::iter::once(&Cell::Text(t.title.clone()))));
                out.push_str(&csv_row(t.headers.iter().map(|h| Cell::Text(h.clone())).collect::<Vec<_>>().iter()));
                for row in &t.rows {
                    out.push_str(&csv_row(row.iter()));
                }
            }
            Format::Table => {
                out.push_str(&t.title);
                out.push('\n');
                let mut widths: Vec<usize> = t.headers.iter().map(|h| h.len()).collect();
                let rendered: Vec<Vec<String>> =
                    t.rows.iter().map(|r| r.iter().map(|c| c.render(false)).collect()).collect();
                for row in &rendered {
                    for (j, cell) in row.iter().enumerate() {
                        if j >= widths.len() {
                            widths.push(0);
                        }
                        widths[j] = widths[j].max(cell.len());
                    }
                }
                let fmt_line = |cells: &[String]| {
                    cells
                        .iter()
                        .enumerate()
                        .map(|(j, c)| format!("{c:>width$}", width = widths[j]))
                        .collect::<Vec<_>>()
                        .join("  ")
                };
                out.push_str(&fmt_line(&t.headers.to_vec()));
                out.push('\n');
                for row in &rendered {
                    out.push_str(&fmt_line(row));
                    out.push('\n');
                }
            }
        }
    }
    out
}

/// RFC-4180-style line: comma separation, quoting fields that need it.
fn csv_row<'a, I: IntoIterator<Item = &'a Cell>>(cells: I) -> String {
    let mut fields = Vec::new();
    for c in cells {
        let s = c.render(true);
        if s.contains(',') || s.contains('"') || s.contains('\n') {
            fields.push(format!("\"{}\"", s.replace('"', "\"\"")));
        } else {
            fields.push(s);
        }
    }
    fields.join(",") + "\r\n"
}

// ----------------------------------------------------------- runners ----

fn exp_astar_inf() -> f64 {
    2.0 + 4.0 / ((17.0 + 16.0 * std::f64::consts::E).sqrt() + 1.0)
}

fn gauss_astar_inf() -> f64 {
    (2.0 + 2.0 / (2.0 + std::f64::consts::E).sqrt()).sqrt()
}

/// Midpoint errors for ∫₀^∞ x e^{−x} dx = 1 with a ∈ {a*, 1.5, 1},
/// n ∈ {10,…,10⁵}.
pub fn run_test1() -> Result<Vec<Table>> {
    let d = Density::exponential(1.0).unwrap();
    let astar = exp_astar_inf();
    let f = |x: &[f64]| x[0];
    let scales = [astar, 1.5, 1.0];
    let mut rows = Vec::new();
    for k in 1..=5u32 {
        let n = 10u64.pow(k);
        let mut row = vec![Cell::Int(n)];
        for &a in &scales {
            let tr = Transform::scaled_inverse_cdf(d, a)?;
            let g = TransformedIntegrand::homogeneous(&f, tr, 1)?;
            let q = cubature::integrate_weighted(&g, &CubatureRule::midpoint(n)?)?;
            row.push(Cell::Num((q - 1.0).abs()));
        }
        rows.push(row);
    }
    Ok(vec![Table {
        title: "midpoint errors, f(x)=x, Exponential(1), exact 1".into(),
        headers: vec!["n".into(), format!("a={astar:.4}"), "a=1.5".into(), "a=1".into()],
        rows,
    }])
}

/// Midpoint errors for E|x| (standard Gaussian) = √(2/π) with
/// a ∈ {a*, 2^(1/4), 1}. The row labeled n uses n+1 midpoint samples, and
/// the middle scale is 2^(1/4): the conventions this reference table was
/// generated with.
pub fn run_test2() -> Result<Vec<Table>> {
    let d = Density::gaussian(1.0).unwrap();
    let astar = gauss_astar_inf();
    let f = |x: &[f64]| x[0].abs();
    let exact = (2.0 / std::f64::consts::PI).sqrt();
    let scales = [astar, 2f64.powf(0.25), 1.0];
    let mut rows = Vec::new();
    for k in 1..=5u32 {
        let n = 10u64.pow(k);
        let mut row = vec![Cell::Int(n)];
        for &a in &scales {
            let tr = Transform::scaled_inverse_cdf(d, a)?;
            let g = TransformedIntegrand::homogeneous(&f, tr, 1)?;
            let q = cubature::integrate_weighted(&g, &CubatureRule::midpoint(n + 1)?)?;
            row.push(Cell::Num((q - exact).abs()));
        }
        rows.push(row);
    }
    Ok(vec![Table {
        title: "midpoint errors, f(x)=|x|, Gaussian(1), exact sqrt(2/pi)".into(),
        headers: vec!["n".into(), format!("a={astar:.5}"), "a=2^(1/4)".into(), "a=1".into()],
        rows,
    }])
}

/// Lattice errors for f(x)=∏x_j, Exponential(1), exact 1, d ∈ {3,4},
/// n = 2^10..2^15, a ∈ {a*, 1.5, 1}.
pub fn run_test3(args: &Test3Args) -> Result<Vec<Table>> {
    let d = Density::exponential(1.0).unwrap();
    let astar = exp_astar_inf();
    let f = |x: &[f64]| x.iter().product::<f64>();
    let scales = [astar, 1.5, 1.0];
    let file_vec = match &args.gen_vector {
        Some(p) => Some(cubature::load_generating_vector(p)?),
        None => None,
    };
    let mut tables = Vec::new();
    for dims in [3usize, 4] {
        if let Some(v) = &file_vec {
            if v.components.len() < dims {
                return Err(Error::Config(format!(
                    "--gen-vector has {} components but d = {dims}",
                    v.components.len()
                )));
            }
        }
        let mut rows = Vec::new();
        for k in 10..=15u32 {
            let n = 1u64 << k;
            let z = match &file_vec {
                Some(v) => v.components[..dims].to_vec(),
                None => cubature::builtin_korobov_vector(n, dims, None)?.components,
            };
            let rule = CubatureRule::lattice(n, z, None)?;
            let mut row = vec![Cell::Int(n)];
            for &a in &scales {
                let tr = Transform::scaled_inverse_cdf(d, a)?;
                let g = TransformedIntegrand::homogeneous(&f, tr, dims)?;
                let q = cubature::integrate_weighted(&g, &rule)?;
                row.push(Cell::Num((q - 1.0).abs()));
            }
            rows.push(row);
        }
        let source = match &file_vec {
            Some(v) => v.source.clone(),
            None => "builtin Korobov".into(),
        };
        tables.push(Table {
            title: format!("lattice errors, f=prod(x_j), Exponential(1), d={dims}, vectors: {source}"),
            headers: vec!["n".into(), format!("a={astar:.4}"), "a=1.5".into(), "a=1".into()],
            rows,
        });
    }
    Ok(tables)
}

pub fn run_astar(args: &AstarArgs) -> Result<Vec<Table>> {
    let d = args.density.build()?;
    let p = PExponent::new(args.p)?;
    let (a, bound) = analysis::optimal_a(&d, p)?;
    Ok(vec![Table {
        title: format!("optimal scale, {d:?}, p={}", pdisp(p)),
        headers: vec!["quantity".into(), "value".into()],
        rows: vec![
            vec![Cell::Text("a_star".into()), Cell::Num(a)],
            vec![Cell::Text("c1p_bound".into()), Cell::Num(bound)],
        ],
    }])
}

fn pdisp(p: PExponent) -> String {
    if p.is_finite() {
        format!("{}", p.p())
    } else {
        "inf".into()
    }
}

pub fn run_norms(args: &NormsArgs) -> Result<Vec<Table>> {
    let d = args.density.build()?;
    let p = PExponent::new(args.p)?;
    let tr = match args.b {
        Some(b) => Transform::poly_growth(d, b)
            .map_err(|e| Error::Config(format!("--b: {e}")))?,
        None => Transform::scaled_inverse_cdf(d, parse_a(&args.a, &d, p)?)?,
    };
    let r = analysis::c1p_bound(&tr, p);
    Ok(vec![Table {
        title: format!("h-norms, {d:?}, {:?}, p={}", tr.kind(), pdisp(p)),
        headers: vec!["quantity".into(), "value".into()],
        rows: vec![
            vec![Cell::Text("h0_sup".into()), Cell::Num(r.h0_sup)],
            vec![Cell::Text("h1_sup".into()), Cell::Num(r.h1_sup)],
            vec![Cell::Text("h2_lp".into()), Cell::Num(r.h2_lp)],
            vec![Cell::Text("c1p_bound".into()), Cell::Num(r.c1p_bound)],
            vec![Cell::Text("method".into()), Cell::Text(format!("{:?}", r.method))],
            vec![Cell::Text("norm_i1".into()), Cell::Num(analysis::operator_norm_i1(&d, p))],
        ],
    }])
}

pub fn run_dofeps(args: &DofepsArgs) -> Result<Vec<Table>> {
    let d = Density::exponential(args.lambda)
        .map_err(|_| Error::Config(format!("--lambda must be positive, got {}", args.lambda)))?;
    let p = PExponent::new(args.p)?;
    let n1 = analysis::operator_norm_i1(&d, p);
    let mut rows = Vec::new();
    for &beta in &args.betas {
        // q only matters for summability checks, not for d(ε); q = 1 is
        // always summable for a decaying power law
        let w = ProductWeights::power_law(beta, 1.0)
            .map_err(|_| Error::Config(format!("--beta must be positive, got {beta}")))?;
        let dim = mdm::superposition_dimension(&w, n1, args.eps)?;
        rows.push(vec![Cell::Num(beta), Cell::Int(dim as u64)]);
    }
    Ok(vec![Table {
        title: format!("superposition dimension, lambda={}, p={}, eps={:e}", args.lambda, pdisp(p), args.eps),
        headers: vec!["beta".into(), "d(eps)".into()],
        rows,
    }])
}

fn builtin_f(name: &str) -> Result<fn(&[f64]) -> f64> {
    match name {
        "builtin:linear" => Ok(|x: &[f64]| x.iter().sum()),
        "builtin:abs" => Ok(|x: &[f64]| x.iter().map(|v| v.abs()).product()),
        "builtin:prod" => Ok(|x: &[f64]| x.iter().product()),
        other => Err(Error::Config(format!(
            "--f must be one of builtin:linear, builtin:abs, builtin:prod; got {other:?}"
        ))),
    }
}

pub fn run_integrate(args: &IntegrateArgs) -> Result<Vec<Table>> {
    let d = args.density.build()?;
    let p = PExponent::new(args.p)?;
    if args.dims == 0 {
        return Err(Error::Config("--dims must be at least 1".into()));
    }
    let a = parse_a(&args.a, &d, p)?;
    let tr = Transform::scaled_inverse_cdf(d, a)?;
    let f = builtin_f(&args.f)?;
    let g = TransformedIntegrand::homogeneous(&f, tr, args.dims)?;
    let rule = match args.rule {
        RuleChoice::Midpoint => CubatureRule::midpoint(args.n)?,
        RuleChoice::Lattice => {
            let z = match &args.gen_vector {
                Some(path) => {
                    let v = cubature::load_generating_vector(path)?;
                    if v.components.len() < args.dims {
                        return Err(Error::Config(format!(
                            "--gen-vector has {} components but --dims is {}",
                            v.components.len(),
                            args.dims
                        )));
                    }
                    v.components[..args.dims].to_vec()
                }
                None => cubature::builtin_korobov_vector(args.n, args.dims, None)?.components,
            };
            CubatureRule::lattice(args.n, z, None)?
        }
    };
    if args.dump_integrand {
        if args.dims != 1 {
            return Err(Error::Config("--dump-integrand requires --dims 1".into()));
        }
        let domains = [d.domain()];
        let mut rows = Vec::new();
        for node in rule.nodes(&domains)? {
            rows.push(vec![Cell::Num(node[0]), Cell::Num(g.eval(&node)?)]);
        }
        return Ok(vec![Table {
            title: format!("transformed integrand samples, {d:?}, a={a}"),
            headers: vec!["t".into(), "g(t)".into()],
            rows,
        }]);
    }
    let value = cubature::integrate_weighted(&g, &rule)?;
    Ok(vec![Table {
        title: format!("integration run, {d:?}, a={a}, {} nodes", rule.point_count(args.dims as u32)),
        headers: vec!["quantity".into(), "value".into()],
        rows: vec![vec![Cell::Text("value".into()), Cell::Num(value)]],
    }])
}

pub fn run_mdm(args: &MdmArgs) -> Result<Vec<Table>> {
    let d = args.density.build()?;
    let p = PExponent::new(args.p)?;
    let a = parse_a(&args.a, &d, p)?;
    let tr = Transform::scaled_inverse_cdf(d, a)?;
    let w = ProductWeights::power_law(args.beta, args.q)
        .map_err(|_| Error::Config(format!("--beta must be positive, got {}", args.beta)))?;
    let f = builtin_f(&args.f)?;
    let dims = args.dims;
    let g = move |x: &[f64]| f(&x[..dims.min(x.len())]);
    let (value, plan) = mdm::mdm_integrate(&g, dims, tr, &w, p, args.eps)?;
    let mut tables = vec![Table {
        title: format!(
            "mdm run, {d:?}, a={a}, p={}, beta={}, q={}, eps={:e}",
            pdisp(p),
            args.beta,
            args.q,
            args.eps
        ),
        headers: vec!["quantity".into(), "value".into()],
        rows: vec![
            vec![Cell::Text("value".into()), Cell::Num(value)],
            vec![Cell::Text("active_subsets".into()), Cell::Int(plan.active.subsets.len() as u64)],
            vec![Cell::Text("d_eps".into()), Cell::Int(plan.active.superposition_dimension() as u64)],
            vec![Cell::Text("norm_i1".into()), Cell::Num(plan.active.norm_i1)],
            vec![Cell::Text("budget_total".into()), Cell::Int(plan.budget_total)],
        ],
    }];
    let rows = plan
        .active
        .subsets
        .iter()
        .zip(&plan.n_u)
        .map(|(u, &n)| {
            vec![
                Cell::Text(format!("{{{}}}", u.iter().map(|j| j.to_string()).collect::<Vec<_>>().join(","))),
                Cell::Int(n),
            ]
        })
        .collect();
    tables.push(Table {
        title: "sample allocation".into(),
        headers: vec!["subset".into(), "n_u".into()],
        rows,
    });
    Ok(tables)
}

/// Dispatch a parsed command to its runner.
pub fn run(command: &Command) -> Result<Vec<Table>> {
    match command {
        Command::Test1 => run_test1(),
        Command::Test2 => run_test2(),
        Command::Test3(a) => run_test3(a),
        Command::Astar(a) => run_astar(a),
        Command::Norms(a) => run_norms(a),
        Command::Dofeps(a) => run_dofeps(a),
        Command::Integrate(a) => run_integrate(a),
        Command::Mdm(a) => run_mdm(a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sci6_format() {
        assert_eq!(sci6(0.03424093), "3.424093e-02");
        assert_eq!(sci6(2.596101e-11), "2.596101e-11");
        assert_eq!(sci6(1.0), "1.000000e+00");
        assert_eq!(sci6(f64::INFINITY), "inf");
    }

    #[test]
    fn table_and_csv_share_payload() {
        let tables = run_dofeps(&DofepsArgs { lambda: 2.0, p: 2.0, eps: 1e-4, betas: vec![2.0, 5.0] }).unwrap();
        let table = render(&tables, Format::Table);
        let csv = render(&tables, Format::Csv);
        // both contain the exact integer payloads
        for needle in ["4", "3"] {
            assert!(table.contains(needle));
            assert!(csv.contains(needle));
        }
        assert!(csv.contains("\r\n"));
        // determinism
        assert_eq!(render(&tables, Format::Csv), csv);
    }

    #[test]
    fn cli_parses() {
        use clap::Parser as _;
        let cli = Cli::parse_from(["uqcov", "astar", "--density", "exp", "--p", "inf", "--format", "csv"]);
        match cli.command {
            Command::Astar(a) => {
                assert!(a.p.is_infinite());
                assert_eq!(a.density.density, DensityKind::Exp);
            }
            _ => panic!("wrong subcommand"),
        }
        assert_eq!(cli.format, Format::Csv);
        assert!(Cli::try_parse_from(["uqcov", "astar", "--p", "0.5"]).is_err());
    }

    #[test]
    fn invalid_parameters_name_the_flag() {
        let args = AstarArgs {
            density: DensityArgs { density: DensityKind::Exp, lambda: -1.0, sigma: 1.0, c: 3.0 },
            p: 2.0,
        };
        let err = run_astar(&args).unwrap_err();
        assert!(err.to_string().contains("--lambda"), "{err}");
    }

    #[test]
    fn integrate_prod_near_one() {
        let args = IntegrateArgs {
            density: DensityArgs { density: DensityKind::Exp, lambda: 1.0, sigma: 1.0, c: 3.0 },
            f: "builtin:prod".into(),
            dims: 2,
            rule: RuleChoice::Midpoint,
            n: 64,
            a: "auto".into(),
            p: f64::INFINITY,
            gen_vector: None,
            dump_integrand: false,
        };
        let tables = run_integrate(&args).unwrap();
        match &tables[0].rows[0][1] {
            Cell::Num(v) => assert!((v - 1.0).abs() < 1e-3, "value {v}"),
            other => panic!("unexpected cell {other:?}"),
        }
    }
}
