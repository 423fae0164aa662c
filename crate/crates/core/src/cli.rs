//! Command-line front end: every computation as a deterministic report.
//!
//! Each invocation prints one JSON document (or a CSV table of its checks)
//! with the echoed inputs, the structured results and a pass/fail status per
//! check. Rationals are written as `"num/den"` strings. The exit code is 0
//! when every check passes, 1 when a check fails and 2 on usage errors.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::groups::{
    exceptional_by_scan, exceptional_closed_form, exceptional_closed_in_range, is_exceptional,
    rho_h, structural_data, GroupFamily, SpectralParam,
};
use crate::hypergeom::{check_contiguous, seeded_triples, Contiguous};
use crate::ktypes::{
    default_search_bound, enumerate_labels, label_dim, langlands, minimal_ktype,
    socle_min_closed_form, KTypeLabel,
};
use crate::rational::{parse, to_string, Q};
use crate::scalars::{
    growth_order_estimate, growth_product, scalar_pair, stated_growth_exponent, t_root, t_scalar,
    trivial_neighbour, vanishing_table_check,
};
use crate::so_model::{
    check_2rho, exceptional_coupling, inverse_dimension, iwasawa, pythagorean_rotation,
    random_lorentz, random_rotation, reproducing_check_exact, reproducing_defect,
    verify_intertwining, zonal_l2_norm, zonal_poly, IntertwiningConfig,
};
use crate::spherical::{omega_h_expand, verify_omega_identity};
use crate::tensor::{character_oracle, dimension_sum_check, racah_speiser, stated_decomposition};

/// Serialise a rational as an exact `"num/den"` string.
pub fn ser_q<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&to_string(x))
}

/// Serialise an optional rational as a string or `null`.
pub fn ser_opt_q<S: Serializer>(x: &Option<Q>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&to_string(v)),
        None => s.serialize_none(),
    }
}

/// Serialise any value through its `Display` form.
pub fn ser_display<T: Display, S: Serializer>(x: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Outcome of a single check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    /// The check holds.
    #[serde(rename = "pass")]
    Pass,
    /// The check fails.
    #[serde(rename = "fail")]
    Fail,
    /// The check does not apply to these inputs.
    #[serde(rename = "n/a")]
    NotApplicable,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotApplicable => "n/a",
        }
    }
}

/// One verified statement inside a report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    /// What was checked.
    pub name: String,
    /// Tag of the mathematical statement the check verifies.
    pub citation: &'static str,
    /// Outcome.
    pub status: Status,
    /// Short human-readable detail (counts, residuals).
    pub detail: String,
}

fn check(name: impl Into<String>, citation: &'static str, ok: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        citation,
        status: Status::from_bool(ok),
        detail: detail.into(),
    }
}

/// Citation tags for the statements the checks verify.
pub mod tags {
    /// Restricted-root multiplicities and `ρ(H)` of the rank-one families.
    pub const STRUCTURE: &str = "structure:restricted-roots";
    /// Zeros of the Harish-Chandra e-function.
    pub const EXCEPTIONAL: &str = "structure:e-function-zeros";
    /// Socle of the spherical principal series at an exceptional parameter.
    pub const SOCLE: &str = "socle:minimal-k-type";
    /// Langlands parameters of the socle.
    pub const LANGLANDS: &str = "socle:langlands-parameters";
    /// Decomposition of `Y ⊗ p*` into irreducibles.
    pub const TENSOR: &str = "tensor:decomposition-with-p";
    /// Dimension count of `Y ⊗ p*`.
    pub const TENSOR_DIM: &str = "tensor:dimension-count";
    /// Positivity, normalisation and reciprocity of `λ(V,Y)`.
    pub const LAMBDA: &str = "scalars:lambda-invariants";
    /// `ω(H)φ_V = Σ λ(V,W)φ_W` and its hypergeometric ingredients.
    pub const OMEGA: &str = "spherical:omega-recurrence";
    /// Contiguous relations of the Gauss function.
    pub const HYPERGEOMETRIC: &str = "hypergeometric:contiguous-relations";
    /// `T = (μ+ρ)λ + ν` and its vanishing table.
    pub const VANISHING: &str = "scalars:reducibility-table";
    /// Root of `T` towards the trivial K-type at `μ = ρ`.
    pub const TRIVIAL_ROOT: &str = "scalars:composition-series-at-rho";
    /// Growth products of the socle recursions.
    pub const GROWTH: &str = "scalars:growth-products";
    /// `⟨φ_Y, φ_Y⟩ = 1/dim Y` and the reproducing property.
    pub const ZONAL: &str = "so-model:zonal-norm-and-reproducing";
    /// Iwasawa decomposition in the Lorentz model.
    pub const IWASAWA: &str = "so-model:iwasawa";
    /// Generalised gradients intertwine Poisson transforms.
    pub const INTERTWINING: &str = "so-model:gradient-intertwining";
    /// Vanishing gradient at exceptional parameters.
    pub const EXCEPTIONAL_GRADIENT: &str = "so-model:exceptional-gradient-vanishing";
    /// `Σ B([X̃_j,(X_j)_k], H) = 2ρ(H)`.
    pub const TWO_RHO: &str = "so-model:two-rho-bracket";
}

/// A complete report for one invocation.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    /// Subcommand name.
    pub command: String,
    /// Echoed inputs.
    pub inputs: BTreeMap<String, Value>,
    /// Structured results.
    pub results: Value,
    /// Individual checks.
    pub checks: Vec<Check>,
    /// `pass` iff every check passes.
    pub status: Status,
}

impl Report {
    fn new(command: &str, inputs: BTreeMap<String, Value>, results: Value, checks: Vec<Check>) -> Self {
        let status = if checks.iter().all(|c| c.status == Status::Pass) {
            Status::Pass
        } else {
            Status::Fail
        };
        Report {
            command: command.to_string(),
            inputs,
            results,
            checks,
            status,
        }
    }

    /// The process exit code for this report.
    pub fn exit_code(&self) -> i32 {
        if self.status == Status::Pass {
            0
        } else {
            1
        }
    }
}

/// Output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// One JSON document.
    Json,
    /// One CSV row per check.
    Csv,
}

/// Verification suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Every suite below.
    All,
    /// Structural data, exceptional parameters, socles and Langlands data.
    Groups,
    /// Tensor decompositions.
    Tensor,
    /// Recurrences, λ-invariants and contiguous relations.
    Spherical,
    /// Vanishing tables, trivial-type roots and growth products.
    Scalars,
    /// Numerical checks in the Lorentz model.
    SoModel,
}

/// Command-line arguments.
#[derive(Debug, Parser)]
#[command(name = "rankone", version, about = "Exact data for spherical principal series of rank-one groups")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for random sampling in the Lorentz model.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Scale of the coordinate bounds used by `verify`.
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    depth: u32,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Residual tolerance for the Lorentz-model numerics.
    #[arg(long, global = true, default_value_t = 1e-5)]
    tolerance: f64,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Restricted-root data, ρ(H) and the exceptional closed form.
    Structure {
        /// `SO`, `SU`, `Sp` or `F4`, followed by `n` except for `F4`.
        #[arg(num_args = 1..=2, required = true)]
        group: Vec<String>,
    },
    /// Exceptional parameters by closed form and by the e-function predicate.
    Exceptional {
        /// `SO`, `SU`, `Sp` or `F4`, followed by `n` except for `F4`.
        #[arg(num_args = 1..=2, required = true)]
        group: Vec<String>,
        /// Number of parameters to list.
        #[arg(long, default_value_t = 5)]
        count: u32,
    },
    /// Socle membership, minimal K-type and Langlands data at `μ_ℓ`.
    Socle {
        /// `SO`, `SU`, `Sp` or `F4`, followed by `n` except for `F4`.
        #[arg(num_args = 1..=2, required = true)]
        group: Vec<String>,
        /// Index ℓ of the exceptional parameter.
        #[arg(long)]
        ell: u32,
    },
    /// Decomposition of `Y ⊗ p*`.
    Tensor {
        /// Family, `n` (except for `F4`) and a K-type label such as `Y2` or `V3,1`.
        #[arg(num_args = 2..=3, required = true)]
        args: Vec<String>,
    },
    /// `λ`, `ν`, `T` and the root of `T` for a pair of K-types.
    Scalars {
        /// Family, `n` (except for `F4`), then the labels `V` and `Y`.
        #[arg(num_args = 3..=4, required = true)]
        args: Vec<String>,
        /// Spectral parameter `μ(H)` as a rational.
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        mu: String,
    },
    /// Run a verification suite.
    Verify {
        /// Suite to run.
        #[arg(value_enum)]
        suite: Suite,
    },
}

/// Split `[family, n?, rest…]` into the family and the remaining arguments.
fn split_group(args: &[String]) -> Result<(GroupFamily, &[String])> {
    let Some(name) = args.first() else {
        return Err(Error::Parse("missing group family".into()));
    };
    if name.eq_ignore_ascii_case("F4") {
        return Ok((GroupFamily::parse(name, None)?, &args[1..]));
    }
    let n = args
        .get(1)
        .ok_or_else(|| Error::InvalidFamily(format!("{name} requires a parameter n")))?
        .parse::<u32>()
        .map_err(|_| Error::Parse(format!("bad group parameter {:?}", args[1])))?;
    Ok((GroupFamily::parse(name, Some(n))?, &args[2..]))
}

fn exact_group(args: &[String]) -> Result<GroupFamily> {
    let (family, rest) = split_group(args)?;
    if !rest.is_empty() {
        return Err(Error::Parse(format!("unexpected arguments {rest:?}")));
    }
    Ok(family)
}

fn group_inputs(family: GroupFamily) -> BTreeMap<String, Value> {
    let mut m = BTreeMap::new();
    m.insert("family".to_string(), json!(family.name()));
    m.insert("n".to_string(), json!(family.n()));
    m
}

fn strings(v: &[Q]) -> Vec<String> {
    v.iter().map(to_string).collect()
}

fn mus(v: &[SpectralParam]) -> Vec<String> {
    v.iter().map(|m| to_string(&m.mu_h)).collect()
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report values serialise")
}

/// `structure` subcommand.
pub fn cmd_structure(family: GroupFamily) -> Report {
    let data = structural_data(family);
    let first = (0..5).map(|l| exceptional_closed_form(family, l)).collect::<Vec<_>>();
    let closed = match family {
        GroupFamily::SO(_) => "-rho-l",
        GroupFamily::SU(_) => "-rho-2l",
        GroupFamily::Sp(_) => "-rho-(2l-2)",
        GroupFamily::F4 => "-rho-(2l-6)",
    };
    let rho_ok = data.rho_h == Q::new(data.m_alpha.into(), 2.into()) + Q::from_integer(data.m_2alpha.into());
    let predicate_ok = first.iter().all(|m| is_exceptional(family, &SpectralParam::new(m.clone())));
    let checks = vec![
        check("rho(H) = m_alpha/2 + m_2alpha", tags::STRUCTURE, rho_ok, ""),
        check(
            "closed-form exceptional parameters are e-function zeros",
            tags::EXCEPTIONAL,
            predicate_ok,
            format!("{} parameters", first.len()),
        ),
    ];
    let results = json!({
        "structural_data": to_value(&data),
        "exceptional_closed_form": closed,
        "exceptional_first": strings(&first),
    });
    Report::new("structure", group_inputs(family), results, checks)
}

/// `exceptional` subcommand.
pub fn cmd_exceptional(family: GroupFamily, count: u32) -> Report {
    let last = exceptional_closed_form(family, count.saturating_sub(1));
    let bound = (-last).ceil().to_integer().max(0.into());
    let bound = u32::try_from(bound).unwrap_or(u32::MAX);
    let closed: Vec<SpectralParam> = exceptional_closed_in_range(family, bound)
        .into_iter()
        .take(count as usize)
        .collect();
    let scan: Vec<SpectralParam> = exceptional_by_scan(family, bound)
        .into_iter()
        .take(count as usize)
        .collect();
    let checks = vec![check(
        "closed form agrees with the e-function predicate",
        tags::EXCEPTIONAL,
        closed == scan,
        format!("window [-{bound}, 0]"),
    )];
    let mut inputs = group_inputs(family);
    inputs.insert("count".into(), json!(count));
    let results = json!({ "closed_form": mus(&closed), "predicate_scan": mus(&scan) });
    Report::new("exceptional", inputs, results, checks)
}

/// `socle` subcommand.
pub fn cmd_socle(family: GroupFamily, ell: u32) -> Result<Report> {
    let found = minimal_ktype(family, ell, default_search_bound(ell))?;
    let closed = socle_min_closed_form(family, ell);
    let record = langlands(family, ell);
    let dims: Vec<String> = found.iter().map(|l| label_dim(l).to_string()).collect();
    let checks = vec![
        check(
            "minimal K-type search matches the closed form",
            tags::SOCLE,
            found == closed,
            "",
        ),
        check("Langlands record is consistent", tags::LANGLANDS, record.is_consistent(), ""),
    ];
    let mut inputs = group_inputs(family);
    inputs.insert("ell".into(), json!(ell));
    let results = json!({
        "mu": to_string(&exceptional_closed_form(family, ell)),
        "minimal_ktype": to_value(&found),
        "closed_form": to_value(&closed),
        "dimension": dims,
        "langlands": to_value(&record),
    });
    Ok(Report::new("socle", inputs, results, checks))
}

/// `tensor` subcommand.
pub fn cmd_tensor(label: &KTypeLabel) -> Result<Report> {
    let dec = racah_speiser(label)?;
    let dim = dimension_sum_check(label)?;
    let mut stated = stated_decomposition(label)?;
    stated.sort();
    let mut found = dec.weights();
    found.sort();
    let mut checks = vec![
        check("summands match the stated decomposition", tags::TENSOR, found == stated, ""),
        check("multiplicity free", tags::TENSOR, dec.is_multiplicity_free(), ""),
        check("dimension sum", tags::TENSOR_DIM, dim.holds(), format!("{} = {}", dim.summand_total, dim.expected)),
    ];
    if label.coords().iter().all(|c| c.abs() <= 4) {
        let oracle = character_oracle(label)?;
        checks.push(check("agrees with the character oracle", tags::TENSOR, oracle == dec, ""));
    }
    let summands: Vec<Value> = dec
        .summands
        .iter()
        .map(|s| {
            json!({
                "weight": to_value(&s.weight),
                "label": s.label.as_ref().map(ToString::to_string),
                "multiplicity": s.multiplicity,
                "m_spherical": s.m_spherical(),
            })
        })
        .collect();
    let mut inputs = group_inputs(label.family());
    inputs.insert("label".into(), json!(label.to_string()));
    let results = json!({
        "summands": summands,
        "dimension_sum": dim.summand_total.to_string(),
        "expected_dimension": dim.expected.to_string(),
    });
    Ok(Report::new("tensor", inputs, results, checks))
}

/// `scalars` subcommand.
pub fn cmd_scalars(v: &KTypeLabel, y: &KTypeLabel, mu: &SpectralParam) -> Result<Report> {
    let pair = scalar_pair(v, y)?;
    let t = t_scalar(v, y, mu)?;
    let root = t_root(v, y)?;
    let checks = vec![
        check("lambda(V,Y) > 0", tags::LAMBDA, pair.lam.is_positive(), ""),
        check(
            "T vanishes at its root",
            tags::VANISHING,
            t_scalar(v, y, &root)?.is_zero(),
            "",
        ),
    ];
    let mut inputs = group_inputs(v.family());
    inputs.insert("V".into(), json!(v.to_string()));
    inputs.insert("Y".into(), json!(y.to_string()));
    inputs.insert("mu".into(), json!(to_string(&mu.mu_h)));
    let results = json!({
        "lambda": to_string(&pair.lam),
        "nu": to_string(&pair.nu),
        "T": to_string(&t),
        "root_mu": to_string(&root.mu_h),
        "rho": to_string(&rho_h(v.family())),
    });
    Ok(Report::new("scalars", inputs, results, checks))
}

/// Families exercised by the verification suites.
pub fn verify_families() -> Vec<GroupFamily> {
    vec![
        GroupFamily::SO(3),
        GroupFamily::SO(4),
        GroupFamily::SO(5),
        GroupFamily::SO(6),
        GroupFamily::SU(2),
        GroupFamily::SU(3),
        GroupFamily::Sp(2),
        GroupFamily::Sp(3),
        GroupFamily::F4,
    ]
}

/// `λ` positivity, `Σ_W λ(V,W) = 1` and `λ(V,Y)·dim V = λ(Y,V)·dim Y`
/// over labels with coordinates up to `bound`; returns failing descriptions.
pub fn lambda_invariant_failures(family: GroupFamily, bound: i64) -> Result<Vec<String>> {
    let mut failures = Vec::new();
    for v in enumerate_labels(family, bound) {
        let row = omega_h_expand(&v)?;
        if row.total() != Q::from_integer(1.into()) {
            failures.push(format!("{v}: sum {}", to_string(&row.total())));
        }
        for (w, lam) in &row.terms {
            if !lam.is_positive() {
                failures.push(format!("{v}->{w}: lambda {}", to_string(lam)));
            }
            let back = omega_h_expand(w)?.coeff(&v);
            let lhs = lam * Q::from_integer(label_dim(&v));
            let rhs = back * Q::from_integer(label_dim(w));
            if lhs != rhs {
                failures.push(format!("{v}<->{w}: reciprocity"));
            }
        }
    }
    Ok(failures)
}

fn summarise(failures: &[String], total: usize) -> String {
    match failures.first() {
        None => format!("{total} cases"),
        Some(f) => format!("{} of {total} cases fail, first: {f}", failures.len()),
    }
}

fn suite_groups(depth: u32) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let mut families = vec![GroupFamily::SO(2)];
    families.extend(verify_families());
    for family in &families {
        let family = *family;
        let d = structural_data(family);
        let ok = d.dim_p == d.m_alpha + d.m_2alpha + 1
            && d.rho_h == Q::new(d.m_alpha.into(), 2.into()) + Q::from_integer(d.m_2alpha.into());
        checks.push(check(format!("{family}: structural data"), tags::STRUCTURE, ok, ""));
        let bound = 10 * depth;
        let closed = exceptional_closed_in_range(family, bound);
        let scan = exceptional_by_scan(family, bound);
        checks.push(check(
            format!("{family}: exceptional parameters on [-{bound}, 0]"),
            tags::EXCEPTIONAL,
            closed == scan,
            format!("{} parameters", closed.len()),
        ));
        let mut failures = Vec::new();
        for ell in 0..=depth {
            if minimal_ktype(family, ell, default_search_bound(ell))? != socle_min_closed_form(family, ell) {
                failures.push(format!("l = {ell}"));
            }
            if !langlands(family, ell).is_consistent() {
                failures.push(format!("langlands l = {ell}"));
            }
        }
        checks.push(check(
            format!("{family}: minimal K-types and Langlands records"),
            tags::SOCLE,
            failures.is_empty(),
            summarise(&failures, depth as usize + 1),
        ));
    }
    Ok(checks)
}

fn suite_tensor(depth: u32) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let oracle_bound = i64::from(depth.min(3));
    for family in verify_families() {
        let labels = enumerate_labels(family, i64::from(depth));
        let mut failures = Vec::new();
        for label in &labels {
            let dec = racah_speiser(label)?;
            let mut found = dec.weights();
            found.sort();
            let mut stated = stated_decomposition(label)?;
            stated.sort();
            if found != stated {
                failures.push(format!("{label}: stated decomposition"));
            }
            if !dimension_sum_check(label)?.holds() {
                failures.push(format!("{label}: dimension sum"));
            }
            if label.coords().iter().all(|c| c.abs() <= oracle_bound) && character_oracle(label)? != dec {
                failures.push(format!("{label}: character oracle"));
            }
        }
        checks.push(check(
            format!("{family}: tensor decompositions"),
            tags::TENSOR,
            failures.is_empty(),
            summarise(&failures, labels.len()),
        ));
    }
    Ok(checks)
}

fn suite_spherical(depth: u32, seed: u64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for family in verify_families() {
        let labels = enumerate_labels(family, i64::from(depth));
        let mut failures = Vec::new();
        for label in &labels {
            let report = verify_omega_identity(label)?;
            if !report.holds() {
                failures.push(label.to_string());
            }
        }
        checks.push(check(
            format!("{family}: omega recurrences"),
            tags::OMEGA,
            failures.is_empty(),
            summarise(&failures, labels.len()),
        ));
        let lam = lambda_invariant_failures(family, i64::from(depth))?;
        checks.push(check(
            format!("{family}: lambda invariants"),
            tags::LAMBDA,
            lam.is_empty(),
            summarise(&lam, labels.len()),
        ));
    }
    let triples = seeded_triples(seed, 20 * depth as usize);
    let mut failures = Vec::new();
    for (a, b, c) in &triples {
        for rel in Contiguous::ALL {
            if !check_contiguous(rel, a, b, c)? {
                failures.push(format!("{rel:?} at ({}, {}, {})", to_string(a), to_string(b), to_string(c)));
            }
        }
    }
    checks.push(check(
        "contiguous relations on seeded triples",
        tags::HYPERGEOMETRIC,
        failures.is_empty(),
        summarise(&failures, 5 * triples.len()),
    ));
    Ok(checks)
}

fn suite_scalars(depth: u32) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for family in verify_families() {
        let report = vanishing_table_check(family, i64::from(depth))?;
        checks.push(check(
            format!("{family}: vanishing table"),
            tags::VANISHING,
            report.holds(),
            summarise(&report.failures, report.pairs_checked),
        ));
        let v = trivial_neighbour(family)?;
        let trivial = KTypeLabel::new(family, &vec![0; v.coords().len()])?;
        let rho = SpectralParam::new(rho_h(family));
        let ok = t_scalar(&v, &trivial, &rho)?.is_zero() && t_root(&v, &trivial)? == rho;
        checks.push(check(
            format!("{family}: T({v} -> trivial) has its root at rho"),
            tags::TRIVIAL_ROOT,
            ok,
            "",
        ));
        if matches!(family, GroupFamily::SO(_)) {
            continue;
        }
        let mut failures = Vec::new();
        let mut cases = 0;
        for ell in 0..=3u32 {
            for steps in 1..=5 * depth {
                cases += 1;
                let (p, c) = growth_product(family, ell, steps, ell + 1)?;
                if p != c {
                    failures.push(format!("l = {ell}, steps = {steps}"));
                }
            }
            cases += 1;
            let est = growth_order_estimate(family, ell, 2000)?;
            let stated = stated_growth_exponent(family, ell)?;
            if est != stated {
                failures.push(format!("l = {ell}: exponent {est} vs {stated}"));
            }
        }
        checks.push(check(
            format!("{family}: growth products"),
            tags::GROWTH,
            failures.is_empty(),
            summarise(&failures, cases),
        ));
    }
    Ok(checks)
}

fn suite_so_model(depth: u32, seed: u64, tolerance: f64) -> Result<Vec<Check>> {
    use rand::SeedableRng;
    let mut checks = Vec::new();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for n in 3..=5u32 {
        let mut failures = Vec::new();
        for k in 0..=depth + 2 {
            if zonal_l2_norm(n, k)? != inverse_dimension(n, k)? {
                failures.push(format!("k = {k}: norm"));
            }
            if !zonal_poly(n, k)?.is_harmonic() {
                failures.push(format!("k = {k}: harmonic"));
            }
            if !reproducing_check_exact(n, k, &pythagorean_rotation(n))? {
                failures.push(format!("k = {k}: exact reproducing"));
            }
            let r = random_rotation(n, &mut rng);
            if reproducing_defect(n, k, &r)? > 1e-10 {
                failures.push(format!("k = {k}: reproducing"));
            }
        }
        checks.push(check(
            format!("SO({n},1): zonal norms, harmonicity and reproducing property"),
            tags::ZONAL,
            failures.is_empty(),
            summarise(&failures, 4 * (depth as usize + 3)),
        ));
        let mut worst: f64 = 0.0;
        for _ in 0..100 {
            let g = random_lorentz(n as usize, &mut rng);
            worst = worst.max(iwasawa(&g)?.reconstruction_error(&g));
        }
        checks.push(check(
            format!("SO({n},1): Iwasawa round trip"),
            tags::IWASAWA,
            worst <= 1e-9,
            format!("max error {worst:.3e}"),
        ));
    }
    let cfg = IntertwiningConfig {
        seed,
        ..IntertwiningConfig::default()
    };
    let mu_grid = ["-2", "-1", "-1/2", "0", "1/2", "1"];
    for n in 3..=4u32 {
        let mut worst: f64 = 0.0;
        for k in 0..=depth.min(3) {
            for mu in mu_grid {
                let report = verify_intertwining(n, k, &SpectralParam::new(parse(mu)?), &cfg)?;
                worst = worst.max(report.max_residual).max(report.direction_h_residual);
            }
        }
        checks.push(check(
            format!("SO({n},1): gradient intertwining"),
            tags::INTERTWINING,
            worst <= tolerance,
            format!("max residual {worst:.3e}"),
        ));
        let mut worst: f64 = 0.0;
        for ell in 0..=depth.min(3) {
            worst = worst.max(exceptional_coupling(n, ell, &cfg)?.abs());
        }
        checks.push(check(
            format!("SO({n},1): gradient coupling at exceptional parameters"),
            tags::EXCEPTIONAL_GRADIENT,
            worst <= tolerance,
            format!("max coefficient {worst:.3e}"),
        ));
    }
    for n in 2..=depth + 3 {
        let report = check_2rho(n)?;
        checks.push(check(
            format!("SO({n},1): two-rho bracket identity"),
            tags::TWO_RHO,
            report.holds(),
            format!("pairing {}", to_string(&report.pairing)),
        ));
    }
    Ok(checks)
}

/// `verify` subcommand.
pub fn cmd_verify(suite: Suite, depth: u32, seed: u64, tolerance: f64) -> Result<Report> {
    let run = |s: Suite| -> Result<Vec<Check>> {
        match s {
            Suite::Groups => suite_groups(depth),
            Suite::Tensor => suite_tensor(depth),
            Suite::Spherical => suite_spherical(depth, seed),
            Suite::Scalars => suite_scalars(depth),
            Suite::SoModel => suite_so_model(depth, seed, tolerance),
            Suite::All => unreachable!("expanded below"),
        }
    };
    let suites = match suite {
        Suite::All => vec![Suite::Groups, Suite::Tensor, Suite::Spherical, Suite::Scalars, Suite::SoModel],
        s => vec![s],
    };
    let mut checks = Vec::new();
    let mut per_suite = BTreeMap::new();
    for s in suites {
        let found = run(s)?;
        let name = s.to_possible_value().expect("suites have names").get_name().to_string();
        let passed = found.iter().filter(|c| c.status == Status::Pass).count();
        per_suite.insert(name, json!({ "checks": found.len(), "passed": passed }));
        checks.extend(found);
    }
    let mut inputs = BTreeMap::new();
    inputs.insert("suite".into(), json!(suite.to_possible_value().map(|v| v.get_name().to_string())));
    inputs.insert("depth".into(), json!(depth));
    inputs.insert("seed".into(), json!(seed));
    inputs.insert("tolerance".into(), json!(tolerance));
    Ok(Report::new("verify", inputs, json!(per_suite), checks))
}

fn build(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Structure { group } => Ok(cmd_structure(exact_group(group)?)),
        Command::Exceptional { group, count } => Ok(cmd_exceptional(exact_group(group)?, *count)),
        Command::Socle { group, ell } => cmd_socle(exact_group(group)?, *ell),
        Command::Tensor { args } => {
            let (family, rest) = split_group(args)?;
            let [label] = rest else {
                return Err(Error::Parse("tensor expects exactly one label".into()));
            };
            family.require_recurrences()?;
            cmd_tensor(&KTypeLabel::parse(family, label)?)
        }
        Command::Scalars { args, mu } => {
            let (family, rest) = split_group(args)?;
            let [v, y] = rest else {
                return Err(Error::Parse("scalars expects two labels V and Y".into()));
            };
            family.require_recurrences()?;
            let mu = SpectralParam::new(parse(mu)?);
            cmd_scalars(&KTypeLabel::parse(family, v)?, &KTypeLabel::parse(family, y)?, &mu)
        }
        Command::Verify { suite } => cmd_verify(*suite, cli.depth, cli.seed, cli.tolerance),
    }
}

/// Render a report in the requested format.
pub fn render(report: &Report, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report)
                .map_err(|e| Error::Algorithm(format!("serialisation failed: {e}")))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let fail = |e: csv::Error| Error::Algorithm(format!("csv output failed: {e}"));
            w.write_record(["command", "check", "citation", "status", "detail"]).map_err(fail)?;
            for c in &report.checks {
                w.write_record([report.command.as_str(), &c.name, c.citation, c.status.as_str(), &c.detail])
                    .map_err(fail)?;
            }
            let bytes = w
                .into_inner()
                .map_err(|e| Error::Algorithm(format!("csv output failed: {e}")))?;
            String::from_utf8(bytes).map_err(|e| Error::Algorithm(e.to_string()))
        }
    }
}

fn usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidFamily(_)
            | Error::InvalidLabel(_)
            | Error::InvalidWeight(_)
            | Error::Unsupported(_)
            | Error::NotRelated(_)
            | Error::Parse(_)
            | Error::InvalidHypergeometric(_)
    )
}

/// Run the command line given by `args` and return the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let report = match build(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return if usage_error(&e) { 2 } else { 1 };
        }
    };
    let text = match render(&report, cli.format) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return 1;
    }
    report.exit_code()
}

