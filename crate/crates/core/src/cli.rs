//! The `easyq` command line: argument parsing and the JSON output envelope.
//!
//! Every successful command prints one envelope
//! `{command, inputHash, value, provenance, version}`. Exact values are
//! strings like `"p/q"` and floats are strings with 17 significant digits.
//! Exit codes: 0 success, 1 a defect was found, 2 usage or input error.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::category::{category_set, closure, verify_axioms, CategoryId, CategorySpec, GroupId, Regime};
use crate::error::{Error, Result};
use crate::hyperspherical::free_hyperspherical_moment;
use crate::laws::{derangement_probability, hankel_determinants, law_moment, law_moments, poisson_pmf_limit, LawId, LawKind};
use crate::linalg::{format_scalar, parse_scalar, ExactMatrix};
use crate::oracle::exact::{hns_haar_moment, sn_haar_moment, sn_truncated_char_law};
use crate::oracle::montecarlo::{mc_haar_moment, sphere_mc_moment, MCConfig, McEstimate, McGroup};
use crate::oracle::weyl::{random_unitary, stationarity_matrix, weyl_model, UNITARY_TOLERANCE};
use crate::partition::{ColorWord, Partition};
use crate::tensor_map::{mobius_expansion_check, t_map, t_map_twisted, verify_functoriality};
use crate::tl::evaluate;
use crate::verify::{find_check, run_all, run_check, Level, Settings, CHECKS};
use crate::weingarten::{
    asymptotic_char_moments, gram, nonoverlapping_sum_limit, nonoverlapping_sum_moment, partial_isometry_moment,
    sphere_moment, weingarten, HaarIntegrator, MonomialSpec, PartialIsometrySpec, SphereKind,
};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "easyq", version, about = "Categories of partitions and Haar integration over easy quantum groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the partitions of a category between two words.
    Category(CategoryArgs),
    /// Bounded closure of generator partitions read from a file.
    Closure(ClosureArgs),
    /// The matrix of T_π (or the twisted T′_π).
    Tmap(TmapArgs),
    /// Gram matrix of a category on a word.
    Gram(GramArgs),
    /// Weingarten matrix of a category on a word.
    Wg(GramArgs),
    /// Haar integral of a monomial in the coordinates.
    Moment(MomentArgs),
    /// Moments of truncated characters, finite N or the N → ∞ limit.
    Char(CharArgs),
    /// Moments of the limiting laws.
    Laws(LawsArgs),
    /// Sphere coordinate moments, or the free hyperspherical closed formula.
    Sphere(SphereArgs),
    /// Integrals over spaces of partial isometries.
    Pispace(PispaceArgs),
    /// Evaluate an expression in the Temperley-Lieb algebra.
    Tl(TlArgs),
    /// Ground-truth engines: enumeration, Monte Carlo, Weyl models.
    Oracle(OracleArgs),
    /// Run the cross-check suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct CatSel {
    /// Named category, e.g. NC2, P_even, Mcal_P2, P_s3.
    #[arg(long, conflicts_with = "group")]
    category: Option<String>,
    /// Group whose category is used, e.g. O, O+, H*, Hs3, Obar.
    #[arg(long)]
    group: Option<String>,
}

impl CatSel {
    fn spec(&self) -> Result<CategorySpec> {
        match (&self.category, &self.group) {
            (Some(c), _) => Ok(CategorySpec::Named(c.parse::<CategoryId>()?)),
            (None, Some(g)) => Ok(CategorySpec::Named(g.parse::<GroupId>()?.category())),
            (None, None) => Err(Error::InvalidArgument("one of --category or --group is required".into())),
        }
    }
}

#[derive(Args, Debug)]
struct WordSel {
    /// Uncolored word of this length.
    #[arg(long, conflicts_with = "word")]
    legs: Option<usize>,
    /// Color word over o (white) and b (black).
    #[arg(long)]
    word: Option<String>,
}

impl WordSel {
    fn word(&self) -> Result<ColorWord> {
        match (&self.word, self.legs) {
            (Some(w), _) => w.parse(),
            (None, Some(k)) => Ok(ColorWord::white(k)),
            (None, None) => Err(Error::InvalidArgument("one of --legs or --word is required".into())),
        }
    }
}

#[derive(Args, Debug)]
struct CategoryArgs {
    #[command(flatten)]
    cat: CatSel,
    /// Lower word length (the upper word is empty unless --upper is given).
    #[arg(long, conflicts_with = "lower")]
    legs: Option<usize>,
    #[arg(long)]
    lower: Option<String>,
    #[arg(long, default_value = "")]
    upper: String,
    /// Print one partition literal per line instead of the envelope.
    #[arg(long)]
    lines: bool,
}

#[derive(Args, Debug)]
struct ClosureArgs {
    /// File with one partition literal per line; blank lines and lines starting with '#' are skipped.
    #[arg(long)]
    gen: PathBuf,
    #[arg(long, default_value_t = 6)]
    bound: usize,
    /// Let colors take part in the operations.
    #[arg(long)]
    colored: bool,
    #[arg(long)]
    lines: bool,
}

#[derive(Args, Debug)]
struct TmapArgs {
    #[arg(long)]
    partition: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    twisted: bool,
    /// Also check the tensor, composition and adjoint identities against this partition.
    #[arg(long)]
    check: Option<String>,
}

#[derive(Args, Debug)]
struct GramArgs {
    #[command(flatten)]
    cat: CatSel,
    #[command(flatten)]
    word: WordSel,
    #[arg(long)]
    n: usize,
    /// Accept a singular Gram matrix and use a generalized inverse.
    #[arg(long)]
    pseudo: bool,
}

#[derive(Args, Debug)]
struct MomentArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    n: usize,
    /// Monomial such as "u[1,1] u*[2,3]".
    #[arg(long)]
    monomial: String,
    #[arg(long)]
    pseudo: bool,
}

#[derive(Args, Debug)]
struct CharArgs {
    #[command(flatten)]
    cat: CatSel,
    /// Finite N; without it the N → ∞ limit at --t is returned.
    #[arg(long)]
    n: Option<usize>,
    /// Truncation: the character sums the first s diagonal coordinates.
    #[arg(long)]
    s: Option<usize>,
    /// Truncation parameter of the limit (rational).
    #[arg(long)]
    t: Option<String>,
    /// Moment order (uncolored).
    #[arg(long, conflicts_with = "word")]
    k: Option<usize>,
    #[arg(long)]
    word: Option<String>,
    #[arg(long)]
    pseudo: bool,
}

#[derive(Args, Debug)]
struct LawsArgs {
    /// gaussian, semicircle, complexGaussian, circular, poisson, freePoisson, bessel<s>, freeBessel<s>
    #[arg(long, required_unless_present = "derangements")]
    law: Option<String>,
    #[arg(long, default_value = "1")]
    t: String,
    #[arg(long, default_value_t = 8)]
    kmax: usize,
    /// A single moment for this color word.
    #[arg(long)]
    word: Option<String>,
    /// Include Hankel determinants up to this order.
    #[arg(long)]
    hankel: Option<usize>,
    /// Limit of P(χ_t = k) (Poisson laws only).
    #[arg(long)]
    pmf: Option<usize>,
    /// Exact probability that a random permutation of N points has no fixed point.
    #[arg(long)]
    derangements: Option<usize>,
}

#[derive(Args, Debug)]
struct SphereArgs {
    /// real, real_half or real_free.
    #[arg(long, default_value = "real")]
    kind: String,
    #[arg(long)]
    n: usize,
    /// Comma-separated 1-based coordinates, e.g. 1,1,2,2.
    #[arg(long, conflicts_with = "formula")]
    indices: Option<String>,
    /// Evaluate the free hyperspherical closed formula for ∫ x_1^{2l}.
    #[arg(long, requires = "l")]
    formula: bool,
    #[arg(long)]
    l: Option<usize>,
}

#[derive(Args, Debug)]
struct PispaceArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Rank of the partial isometries.
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    monomial: Option<String>,
    /// Moment of the sum of K non-overlapping coordinates.
    #[arg(long)]
    sum: Option<usize>,
    /// Moment order for --sum and the limit.
    #[arg(long)]
    s: Option<usize>,
    /// Limit with K = κN, L = λN, M = μN.
    #[arg(long, requires_all = ["lambda", "mu"])]
    kappa: Option<String>,
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long)]
    mu: Option<String>,
}

#[derive(Args, Debug)]
struct TlArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    delta: String,
    /// e.g. "e1*e2*e1 - 1/9*e1"
    #[arg(long)]
    expr: String,
}

#[derive(Args, Debug)]
struct OracleArgs {
    /// sn, hns, mc, sphere, weyl or stationary.
    #[arg(long)]
    engine: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    monomial: Option<String>,
    /// Order of the roots of unity (hns).
    #[arg(long)]
    s: Option<u32>,
    /// Truncation parameter: with sn, return the law of the truncated character.
    #[arg(long)]
    t: Option<String>,
    /// O, U, B or C (mc).
    #[arg(long)]
    group: Option<String>,
    #[arg(long)]
    indices: Option<String>,
    /// Power p of the stationarity matrix.
    #[arg(long)]
    p: Option<usize>,
    /// Use the identity as the unitary of the Weyl model instead of a random one.
    #[arg(long)]
    identity: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// "all", a check name or a check number.
    #[arg(default_value = "all")]
    target: String,
    /// Smaller sizes and sample counts.
    #[arg(long)]
    quick: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    workers: Option<usize>,
}

/// What the process should print and return.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Provenance {
    Exact,
    MonteCarlo { seed: u64, samples: u64, stderr: Value },
}

struct Reply {
    value: Value,
    provenance: Provenance,
    defect: bool,
    /// Replaces the envelope when set.
    plain: Option<String>,
}

impl Reply {
    fn exact(value: Value) -> Self {
        Reply {
            value,
            provenance: Provenance::Exact,
            defect: false,
            plain: None,
        }
    }

    fn defect_if(mut self, defect: bool) -> Self {
        self.defect = defect;
        self
    }
}

/// A float rendered with 17 significant digits.
pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

fn scalar(x: &crate::ExactScalar) -> Value {
    Value::String(format_scalar(x))
}

fn matrix(m: &ExactMatrix) -> Value {
    json!(m.to_string_rows())
}

fn estimate(e: &McEstimate) -> Value {
    json!({
        "mean": float(e.mean),
        "stderr": float(e.stderr),
        "meanImag": float(e.mean_imag),
        "stderrImag": float(e.stderr_imag),
    })
}

fn parse_indices(s: &str) -> Result<Vec<usize>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad index {t:?}"))))
        .collect()
}

fn required<T: Clone>(x: &Option<T>, flag: &str) -> Result<T> {
    x.clone().ok_or_else(|| Error::InvalidArgument(format!("--{flag} is required here")))
}

fn moment_word(k: Option<usize>, word: &Option<String>) -> Result<ColorWord> {
    match (word, k) {
        (Some(w), _) => w.parse(),
        (None, Some(k)) => Ok(ColorWord::white(k)),
        (None, None) => Err(Error::InvalidArgument("one of --k or --word is required".into())),
    }
}

fn mc_config(samples: u64, seed: u64, workers: Option<usize>) -> Result<MCConfig> {
    let cfg = MCConfig::new(samples, seed)?;
    Ok(match workers {
        Some(w) => cfg.with_workers(w),
        None => cfg,
    })
}

fn category(a: &CategoryArgs) -> Result<Reply> {
    let spec = a.cat.spec()?;
    let upper: ColorWord = a.upper.parse()?;
    let lower = match (&a.lower, a.legs) {
        (Some(w), _) => w.parse()?,
        (None, Some(k)) => ColorWord::white(k),
        (None, None) => return Err(Error::InvalidArgument("one of --legs or --lower is required".into())),
    };
    let set = category_set(&spec, &upper, &lower)?;
    let literals: Vec<String> = set.iter().map(|p| p.to_string()).collect();
    let mut reply = Reply::exact(json!({
        "category": spec.name(),
        "upper": upper.to_string(),
        "lower": lower.to_string(),
        "count": literals.len(),
        "partitions": literals,
    }));
    if a.lines {
        reply.plain = Some(literals.iter().map(|l| format!("{l}\n")).collect());
    }
    Ok(reply)
}

fn closure_cmd(a: &ClosureArgs) -> Result<Reply> {
    let text = std::fs::read_to_string(&a.gen).map_err(|e| Error::InvalidArgument(format!("{}: {e}", a.gen.display())))?;
    let gens: Vec<Partition> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::parse)
        .collect::<Result<_>>()?;
    let regime = if a.colored { Regime::Colored } else { Regime::Uncolored };
    let cat = closure(&gens, a.bound, regime)?;
    let elements: Vec<Partition> = cat.elements().iter().cloned().collect();
    let report = verify_axioms(&elements, a.bound, regime);
    let literals: Vec<String> = elements.iter().map(|p| p.to_string()).collect();
    let mut reply = Reply::exact(json!({
        "generators": gens.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "bound": a.bound,
        "size": literals.len(),
        "partitions": literals,
        "axioms": { "checks": report.checks, "defects": report.defects },
    }))
    .defect_if(!report.passed());
    if a.lines {
        reply.plain = Some(literals.iter().map(|l| format!("{l}\n")).collect());
    }
    Ok(reply)
}

fn tmap(a: &TmapArgs) -> Result<Reply> {
    let p: Partition = a.partition.parse()?;
    let m = if a.twisted { t_map_twisted(&p, a.n)? } else { t_map(&p, a.n)? };
    let mut value = json!({
        "partition": p.to_string(),
        "n": a.n,
        "twisted": a.twisted,
        "rows": m.rows(),
        "cols": m.cols(),
        "matrix": matrix(&m),
    });
    let mut defect = false;
    if let Some(q) = &a.check {
        let q: Partition = q.parse()?;
        let report = verify_functoriality(&p, &q, a.n, a.twisted)?;
        defect |= !report.passed();
        value["identities"] = json!(report.checks);
        if a.twisted {
            let mobius = mobius_expansion_check(&p, a.n)?;
            defect |= !mobius.holds;
            value["mobius"] = json!(mobius);
        }
    }
    Ok(Reply::exact(value).defect_if(defect))
}

fn gram_cmd(a: &GramArgs, with_inverse: bool) -> Result<Reply> {
    let spec = a.cat.spec()?;
    let g = gram(&spec, &a.word.word()?, a.n)?;
    let mut value = json!({
        "category": g.category,
        "word": g.word.to_string(),
        "n": g.n,
        "basis": g.basis.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "basisSize": g.dim(),
        "rank": g.rank,
        "matrix": matrix(&g.matrix),
    });
    if with_inverse {
        let w = weingarten(g, a.pseudo)?;
        value["kind"] = json!(w.kind);
        value["matrix"] = matrix(&w.matrix);
    }
    Ok(Reply::exact(value))
}

fn moment(a: &MomentArgs) -> Result<Reply> {
    let group: GroupId = a.group.parse()?;
    let m: MonomialSpec = a.monomial.parse()?;
    let mut integ = HaarIntegrator::new(group, a.n).with_pseudo(a.pseudo);
    let v = integ.moment(&m)?;
    let w = integ.weingarten(&m.word())?;
    Ok(Reply::exact(json!({
        "group": group.to_string(),
        "n": a.n,
        "monomial": m.to_string(),
        "value": scalar(&v),
        "basisSize": w.gram.dim(),
        "rank": w.gram.rank,
        "weingarten": w.kind,
    })))
}

fn char_cmd(a: &CharArgs) -> Result<Reply> {
    let word = moment_word(a.k, &a.word)?;
    match a.n {
        Some(n) => {
            let group: GroupId = required(&a.cat.group, "group")?.parse()?;
            let s = a.s.unwrap_or(n);
            let mut integ = HaarIntegrator::new(group, n).with_pseudo(a.pseudo);
            let v = integ.truncated_char_moment(s, &word)?;
            let w = integ.weingarten(&word)?;
            Ok(Reply::exact(json!({
                "group": group.to_string(),
                "n": n,
                "s": s,
                "word": word.to_string(),
                "value": scalar(&v),
                "basisSize": w.gram.dim(),
                "rank": w.gram.rank,
            })))
        }
        None => {
            let spec = a.cat.spec()?;
            let t = parse_scalar(&required(&a.t, "t")?)?;
            let v = asymptotic_char_moments(&spec, &t, &word)?;
            Ok(Reply::exact(json!({
                "category": spec.name(),
                "t": format_scalar(&t),
                "word": word.to_string(),
                "value": scalar(&v),
            })))
        }
    }
}

fn laws(a: &LawsArgs) -> Result<Reply> {
    if let Some(n) = a.derangements {
        return Ok(Reply::exact(json!({ "n": n, "value": scalar(&derangement_probability(n)) })));
    }
    let kind: LawKind = required(&a.law, "law")?.parse()?;
    let t = parse_scalar(&a.t)?;
    let law = LawId::new(kind, t.clone())?;
    let mut value = json!({ "law": kind.name(), "t": format_scalar(&t) });
    if let Some(w) = &a.word {
        let word: ColorWord = w.parse()?;
        value["word"] = json!(word.to_string());
        value["value"] = scalar(&law_moment(&law, &word)?);
        return Ok(Reply::exact(value));
    }
    let moments = law_moments(&law, a.kmax)?;
    value["moments"] = json!(moments.iter().map(format_scalar).collect::<Vec<_>>());
    if let Some(order) = a.hankel {
        let dets = hankel_determinants(&moments, order)?;
        value["hankel"] = json!(dets.iter().map(format_scalar).collect::<Vec<_>>());
    }
    if let Some(k) = a.pmf {
        if kind != LawKind::Poisson {
            return Err(Error::InvalidArgument("--pmf applies to the poisson law".into()));
        }
        let pmf = poisson_pmf_limit(&t, k)?;
        value["pmf"] = json!({
            "k": k,
            "prefactor": format_scalar(&pmf.prefactor),
            "exponent": format_scalar(&pmf.exponent),
            "value": float(pmf.value()),
        });
    }
    Ok(Reply::exact(value))
}

fn sphere(a: &SphereArgs) -> Result<Reply> {
    if a.formula {
        let v = free_hyperspherical_moment(a.n, required(&a.l, "l")?)?;
        let agrees = v.agrees;
        return Ok(Reply::exact(json!(v)).defect_if(!agrees));
    }
    let kind: SphereKind = a.kind.parse()?;
    let indices = parse_indices(&required(&a.indices, "indices")?)?;
    let v = sphere_moment(kind, &indices, a.n)?;
    Ok(Reply::exact(json!({
        "kind": a.kind,
        "n": a.n,
        "indices": indices,
        "value": scalar(&v),
    })))
}

fn pispace(a: &PispaceArgs) -> Result<Reply> {
    let group: GroupId = a.group.parse()?;
    if let Some(kappa) = &a.kappa {
        let word = ColorWord::white(required(&a.s, "s")?);
        let (kappa, lambda, mu) = (
            parse_scalar(kappa)?,
            parse_scalar(&required(&a.lambda, "lambda")?)?,
            parse_scalar(&required(&a.mu, "mu")?)?,
        );
        let v = nonoverlapping_sum_limit(group, &kappa, &lambda, &mu, &word)?;
        return Ok(Reply::exact(json!({
            "group": group.to_string(),
            "kappa": format_scalar(&kappa),
            "lambda": format_scalar(&lambda),
            "mu": format_scalar(&mu),
            "s": word.len(),
            "value": scalar(&v),
        })));
    }
    let spec = PartialIsometrySpec::new(
        group,
        required(&a.m, "m")?,
        required(&a.n, "n")?,
        required(&a.l, "l")?,
    )?;
    let mut value = json!({ "group": group.to_string(), "m": spec.m, "n": spec.n, "l": spec.l });
    if let Some(k) = a.sum {
        let word = ColorWord::white(required(&a.s, "s")?);
        value["k"] = json!(k);
        value["s"] = json!(word.len());
        value["value"] = scalar(&nonoverlapping_sum_moment(&spec, k, &word)?);
    } else {
        let m: MonomialSpec = required(&a.monomial, "monomial")?.parse()?;
        value["monomial"] = json!(m.to_string());
        value["value"] = scalar(&partial_isometry_moment(&spec, &m)?);
    }
    Ok(Reply::exact(value))
}

fn tl(a: &TlArgs) -> Result<Reply> {
    let delta = parse_scalar(&a.delta)?;
    let x = evaluate(&a.expr, a.k, &delta)?;
    Ok(Reply::exact(json!({
        "k": a.k,
        "delta": format_scalar(&delta),
        "expr": a.expr,
        "terms": x.term_list(),
        "trace": scalar(&x.markov_trace()),
    })))
}

fn oracle(a: &OracleArgs) -> Result<Reply> {
    let mc = |e: &McEstimate, value: Value| Reply {
        value,
        provenance: Provenance::MonteCarlo {
            seed: a.seed,
            samples: a.samples,
            stderr: json!(float(e.stderr)),
        },
        defect: false,
        plain: None,
    };
    match a.engine.as_str() {
        "sn" => {
            if let Some(t) = &a.t {
                let t = parse_scalar(t)?;
                let law = sn_truncated_char_law(a.n, &t)?;
                return Ok(Reply::exact(json!({
                    "n": a.n,
                    "t": format_scalar(&t),
                    "pmf": law.iter().map(format_scalar).collect::<Vec<_>>(),
                })));
            }
            let m: MonomialSpec = required(&a.monomial, "monomial")?.parse()?;
            let v = sn_haar_moment(a.n, &m)?;
            Ok(Reply::exact(json!({ "n": a.n, "monomial": m.to_string(), "value": scalar(&v) })))
        }
        "hns" => {
            let s = required(&a.s, "s")?;
            let m: MonomialSpec = required(&a.monomial, "monomial")?.parse()?;
            let v = hns_haar_moment(a.n, s, &m)?;
            Ok(Reply::exact(json!({
                "n": a.n,
                "s": s,
                "monomial": m.to_string(),
                "value": v.to_string(),
                "rational": format_scalar(&v.a),
                "zetaCoefficient": format_scalar(&v.b),
            })))
        }
        "mc" => {
            let group: McGroup = required(&a.group, "group")?.parse()?;
            let m: MonomialSpec = required(&a.monomial, "monomial")?.parse()?;
            let e = mc_haar_moment(group, a.n, &m, &mc_config(a.samples, a.seed, a.workers)?)?;
            Ok(mc(&e, json!({ "group": group.to_string(), "n": a.n, "monomial": m.to_string(), "value": estimate(&e) })))
        }
        "sphere" => {
            let indices = parse_indices(&required(&a.indices, "indices")?)?;
            let e = sphere_mc_moment(a.n, &indices, &mc_config(a.samples, a.seed, a.workers)?)?;
            Ok(mc(&e, json!({ "n": a.n, "indices": indices, "value": estimate(&e) })))
        }
        "weyl" => {
            let u = if a.identity {
                nalgebra::DMatrix::identity(a.n, a.n)
            } else {
                random_unitary(a.n, a.seed)
            };
            let (_, _, report) = weyl_model(a.n, &u)?;
            let defect = report.relation_residual > UNITARY_TOLERANCE
                || report.magic_residual > UNITARY_TOLERANCE
                || report.pauli_residual.is_some_and(|r| r > UNITARY_TOLERANCE);
            let value = json!({
                "n": report.n,
                "unitarityResidual": float(report.unitarity_residual),
                "relationResidual": float(report.relation_residual),
                "magicResidual": float(report.magic_residual),
                "pauliResidual": report.pauli_residual.map(float),
            });
            let provenance = if a.identity {
                Provenance::Exact
            } else {
                Provenance::MonteCarlo {
                    seed: a.seed,
                    samples: 1,
                    stderr: Value::Null,
                }
            };
            Ok(Reply {
                value,
                provenance,
                defect,
                plain: None,
            })
        }
        "stationary" => {
            let p = required(&a.p, "p")?;
            let r = stationarity_matrix(a.n, p, &mc_config(a.samples, a.seed, a.workers)?)?;
            let rows: Vec<Vec<String>> = r.matrix.iter().map(|row| row.iter().copied().map(float).collect()).collect();
            Ok(Reply {
                value: json!({ "n": r.n, "p": r.p, "matrix": rows, "residual": float(r.residual) }),
                provenance: Provenance::MonteCarlo {
                    seed: a.seed,
                    samples: a.samples,
                    stderr: json!(float(r.stderr_max)),
                },
                defect: false,
                plain: None,
            })
        }
        other => Err(Error::InvalidArgument(format!(
            "unknown engine {other:?} (use sn, hns, mc, sphere, weyl or stationary)"
        ))),
    }
}

fn verify(a: &VerifyArgs) -> Result<Reply> {
    let settings = Settings {
        level: if a.quick { Level::Quick } else { Level::Full },
        seed: a.seed,
        samples: a.samples,
        workers: a.workers,
    };
    let outcomes = if a.target == "all" {
        run_all(&settings)
    } else {
        let id = find_check(&a.target).ok_or_else(|| {
            let names: Vec<&str> = CHECKS.iter().map(|c| c.0).collect();
            Error::InvalidArgument(format!("unknown check {:?}; known: all, {}", a.target, names.join(", ")))
        })?;
        vec![run_check(id, &settings)]
    };
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let checks: Vec<Value> = outcomes
        .iter()
        .map(|o| json!({ "id": o.id, "name": o.name, "passed": o.passed, "detail": o.detail }))
        .collect();
    Ok(Reply {
        value: json!({ "level": settings.level, "passed": failed == 0, "failed": failed, "checks": checks }),
        provenance: Provenance::MonteCarlo {
            seed: a.seed,
            samples: a.samples.unwrap_or(0),
            stderr: Value::Null,
        },
        defect: failed > 0,
        plain: None,
    })
}

fn dispatch(cmd: &Command) -> Result<Reply> {
    match cmd {
        Command::Category(a) => category(a),
        Command::Closure(a) => closure_cmd(a),
        Command::Tmap(a) => tmap(a),
        Command::Gram(a) => gram_cmd(a, false),
        Command::Wg(a) => gram_cmd(a, true),
        Command::Moment(a) => moment(a),
        Command::Char(a) => char_cmd(a),
        Command::Laws(a) => laws(a),
        Command::Sphere(a) => sphere(a),
        Command::Pispace(a) => pispace(a),
        Command::Tl(a) => tl(a),
        Command::Oracle(a) => oracle(a),
        Command::Verify(a) => verify(a),
    }
}

fn input_hash(args: &[String]) -> String {
    let mut h = Sha256::new();
    for a in args {
        h.update(a.as_bytes());
        h.update([0u8]);
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Runs the command line given as `argv` (including the program name).
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let reply = match dispatch(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            return Outcome {
                code: 2,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    };
    let code = if reply.defect { 1 } else { 0 };
    if let Some(plain) = reply.plain {
        return Outcome {
            code,
            stdout: plain,
            stderr: String::new(),
        };
    }
    let args = &argv[1.min(argv.len())..];
    let provenance = match reply.provenance {
        Provenance::Exact => json!({ "kind": "exact" }),
        Provenance::MonteCarlo { seed, samples, stderr } => {
            json!({ "kind": "monte-carlo", "seed": seed, "samples": samples, "stderr": stderr })
        }
    };
    let envelope = json!({
        "command": args,
        "inputHash": input_hash(args),
        "value": reply.value,
        "provenance": provenance,
        "version": VERSION,
    });
    Outcome {
        code,
        stdout: format!("{}\n", serde_json::to_string_pretty(&envelope).expect("JSON values serialize")),
        stderr: String::new(),
    }
}
