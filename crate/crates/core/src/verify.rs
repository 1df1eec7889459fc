//! The cross-check suite: every engine against an independent computation.
//!
//! Each check returns a verdict plus a one-line summary. `Level::Full` runs at
//! the published sizes; `Level::Quick` shrinks sizes and sample counts.

use std::collections::{BTreeSet, HashMap};
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::category::{closure, named_elements, CategoryId, CategorySpec, GroupId, GroupKind, Regime};
use crate::error::{Error, Result};
use crate::hyperspherical::free_hyperspherical_moment;
use crate::laws::{derangement_probability, law_moment, LawId, LawKind};
use crate::linalg::{integer, pow, rational, to_f64};
use crate::oracle::exact::{moment_table, sn_truncated_char_law, sn_truncated_char_moments};
use crate::oracle::montecarlo::{mc_haar_moments, monomial_classes, sphere_classes, sphere_mc_moments, MCConfig, McGroup};
use crate::oracle::weyl::{random_unitary, stationarity_matrix, weyl_model};
use crate::partition::{enumerate, kernel, ColorWord, Partition, Predicate};
use crate::tensor_map::{functoriality_sparse, mobius_expansion_check};
use crate::tl::{jones_generator, tl_dimension, TLElement};
use crate::weingarten::{
    asymptotic_char_moments, gram, nonoverlapping_sum_limit, nonoverlapping_sum_moment, partial_isometry_moment,
    sphere_moment, truncated_char_moment, weingarten, HaarIntegrator, MonomialSpec, PartialIsometrySpec, SphereKind,
};
use crate::ExactScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Quick,
    Full,
}

#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub level: Level,
    pub seed: u64,
    /// Overrides the Monte Carlo sample count of every check.
    pub samples: Option<u64>,
    pub workers: Option<usize>,
}

impl Settings {
    pub fn new(level: Level) -> Self {
        Settings {
            level,
            seed: 0,
            samples: None,
            workers: None,
        }
    }

    fn full(&self) -> bool {
        self.level == Level::Full
    }

    fn mc(&self, full: u64, quick: u64) -> Result<MCConfig> {
        let n = self.samples.unwrap_or(if self.full() { full } else { quick });
        let cfg = MCConfig::new(n, self.seed)?;
        Ok(match self.workers {
            Some(w) => cfg.with_workers(w),
            None => cfg,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

type CheckFn = fn(&Settings) -> Result<(bool, String)>;

/// All checks, in order; ids are 1-based positions.
pub const CHECKS: [(&str, CheckFn); 14] = [
    ("pairing-categories", pairing_categories),
    ("functoriality", functoriality),
    ("mobius-expansion", mobius_expansion),
    ("exact-oracles", exact_oracles),
    ("monte-carlo", monte_carlo),
    ("derangements", derangements),
    ("truncated-characters", truncated_characters),
    ("free-characters", free_characters),
    ("free-hyperspherical", free_hyperspherical),
    ("sphere-moments", sphere_moments),
    ("temperley-lieb", temperley_lieb),
    ("weyl-models", weyl_models),
    ("stationarity", stationarity),
    ("partial-isometries", partial_isometries),
];

/// Looks a check up by 1-based id or by name.
pub fn find_check(key: &str) -> Option<usize> {
    if let Ok(id) = key.parse::<usize>() {
        return (1..=CHECKS.len()).contains(&id).then_some(id);
    }
    CHECKS.iter().position(|(name, _)| *name == key).map(|i| i + 1)
}

pub fn run_check(id: usize, settings: &Settings) -> CheckOutcome {
    let (name, f) = CHECKS[id - 1];
    let start = Instant::now();
    let (passed, detail) = match f(settings) {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    CheckOutcome {
        id,
        name,
        passed,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

pub fn run_all(settings: &Settings) -> Vec<CheckOutcome> {
    (1..=CHECKS.len()).map(|id| run_check(id, settings)).collect()
}

fn parse(s: &str) -> Result<Partition> {
    s.parse()
}

fn catalan(m: usize) -> BigInt {
    binomial(2 * m, m) / BigInt::from(m + 1)
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// Restricted-growth strings of length `k` with at most `bound` values.
fn growth_strings(k: usize, bound: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|s: Vec<usize>| {
                let next = s.iter().max().map_or(0, |m| m + 1).min(bound.saturating_sub(1));
                (0..=next).map(move |v| {
                    let mut t = s.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

fn pairing_categories(s: &Settings) -> Result<(bool, String)> {
    let bound = if s.full() { 6 } else { 4 };
    let cases = [
        (Vec::new(), CategoryId::NC2),
        (vec![parse("ooo|ooo {u1,d3}{u2,d2}{u3,d1}")?], CategoryId::P2Star),
        (vec![parse("oo|oo {u1,d2}{u2,d1}")?], CategoryId::P2),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (gens, expected) in cases {
        let generated = closure(&gens, bound, Regime::Uncolored)?;
        let pairings: BTreeSet<Partition> = generated.elements().iter().filter(|p| p.is_pairing()).cloned().collect();
        let named: BTreeSet<Partition> = named_elements(expected, bound, Regime::Uncolored)?.into_iter().collect();
        let same = pairings == named;
        ok &= same;
        parts.push(format!("{}: {} pairings{}", expected.name(), pairings.len(), if same { "" } else { " MISMATCH" }));
    }
    Ok((ok, format!("legs ≤ {bound}; {}", parts.join(", "))))
}

fn functoriality(s: &Settings) -> Result<(bool, String)> {
    let (ns, legs): (&[usize], usize) = if s.full() { (&[2, 3], 3) } else { (&[2], 2) };
    let mut parts = Vec::new();
    for u in 0..=legs {
        for l in 0..=legs {
            parts.extend(enumerate(&ColorWord::white(u), &ColorWord::white(l), &[Predicate::All])?);
        }
    }
    let even: Vec<Partition> = parts.iter().filter(|p| p.has_even_blocks()).cloned().collect();
    let (mut checks, mut failures) = (0usize, 0usize);
    let mut first_failure = None;
    for &n in ns {
        for (set, twisted) in [(&parts, false), (&even, true)] {
            for p in set.iter() {
                for q in set.iter() {
                    for (name, r) in ["tensor", "compose", "adjoint"].iter().zip(functoriality_sparse(p, q, n, twisted)?) {
                        if let Some(holds) = r {
                            checks += 1;
                            if !holds {
                                failures += 1;
                                first_failure.get_or_insert_with(|| format!("{name} fails for {p} / {q} at N = {n}"));
                            }
                        }
                    }
                }
            }
        }
    }
    let detail = format!(
        "{} partitions ({} even), N ∈ {:?}: {checks} identities, {failures} failures{}",
        parts.len(),
        even.len(),
        ns,
        first_failure.map(|f| format!("; {f}")).unwrap_or_default()
    );
    Ok((failures == 0, detail))
}

fn mobius_expansion(s: &Settings) -> Result<(bool, String)> {
    let ns: &[usize] = if s.full() { &[2, 3] } else { &[2] };
    let mut count = 0;
    let mut bad = Vec::new();
    for total in 0..=4 {
        for u in 0..=total {
            for p in enumerate(&ColorWord::white(u), &ColorWord::white(total - u), &[Predicate::EvenBlocks])? {
                for &n in ns {
                    count += 1;
                    if !mobius_expansion_check(&p, n)?.holds {
                        bad.push(format!("{p} at N = {n}"));
                    }
                }
            }
        }
    }
    Ok((
        bad.is_empty(),
        format!("even partitions with ≤ 4 legs, N ∈ {ns:?}: {count} expansions, {} failures {bad:?}", bad.len()),
    ))
}

/// Relabels a tuple by first occurrence.
fn growth_of(t: &[usize]) -> Vec<u8> {
    let mut seen: Vec<usize> = Vec::new();
    t.iter()
        .map(|x| match seen.iter().position(|y| y == x) {
            Some(i) => i as u8,
            None => {
                seen.push(*x);
                (seen.len() - 1) as u8
            }
        })
        .collect()
}

fn exact_oracles(s: &Settings) -> Result<(bool, String)> {
    let full = s.full();
    let cases: [(GroupKind, u32, &[usize]); 2] = if full {
        [(GroupKind::S, 1, &[4, 5, 6]), (GroupKind::H, 2, &[3, 4])]
    } else {
        [(GroupKind::S, 1, &[4]), (GroupKind::H, 2, &[3])]
    };
    let kmax = if full { 4 } else { 3 };
    let mut compared = 0u64;
    let mut failures = Vec::new();
    for (kind, order_s, ns) in cases {
        for &n in ns {
            let mut integ = HaarIntegrator::new(GroupId::new(kind), n);
            for k in 0..=kmax {
                let word = ColorWord::white(k);
                let table = moment_table(n, order_s, &word)?;
                let order = table.order.clone();
                let nk = n.pow(k as u32);
                let decode = |mut c: usize| -> Vec<usize> {
                    let mut t = vec![0; k];
                    for r in (0..k).rev() {
                        t[r] = c % n;
                        c /= n;
                    }
                    t
                };
                let tuples: Vec<Vec<usize>> = (0..nk).map(decode).collect();
                let kernels: Vec<Vec<u8>> = tuples.iter().map(|t| growth_of(t)).collect();
                let mut cache: HashMap<(&[u8], &[u8]), i64> = HashMap::new();
                for rc in 0..nk {
                    for cc in 0..nk {
                        let key = (kernels[rc].as_slice(), kernels[cc].as_slice());
                        let expected = match cache.get(&key) {
                            Some(&v) => v,
                            None => {
                                let rows: Vec<usize> = tuples[rc].iter().map(|x| x + 1).collect();
                                let cols: Vec<usize> = tuples[cc].iter().map(|x| x + 1).collect();
                                let v = integ.moment_by_kernels(&kernel(&rows, &word)?, &kernel(&cols, &word)?)?
                                    * ExactScalar::from_integer(order.clone());
                                let v = if v.is_integer() { v.to_integer().to_i64() } else { None };
                                let v = v.unwrap_or(i64::MIN);
                                cache.insert(key, v);
                                v
                            }
                        };
                        compared += 1;
                        if table.raw(rc, cc) != (expected, 0) && failures.len() < 5 {
                            failures.push(format!("{kind:?} N={n} rows {:?} cols {:?}", tuples[rc], tuples[cc]));
                        }
                    }
                }
            }
        }
    }
    Ok((
        failures.is_empty(),
        format!(
            "S_N and H_N, degree ≤ {kmax}: {compared} index pairs compared exactly, {} mismatches {failures:?}",
            failures.len()
        ),
    ))
}

fn mc_group_kind(g: McGroup) -> GroupKind {
    match g {
        McGroup::O => GroupKind::O,
        McGroup::U => GroupKind::U,
        McGroup::B => GroupKind::B,
        McGroup::C => GroupKind::C,
    }
}

fn monte_carlo(s: &Settings) -> Result<(bool, String)> {
    let cfg = s.mc(1_000_000, 20_000)?;
    let ns: &[usize] = if s.full() { &[3, 4, 5] } else { &[3] };
    let (mut total, mut outside, mut worst_z, mut worst_abs) = (0usize, Vec::new(), 0.0f64, 0.0f64);
    for group in McGroup::ALL {
        for &n in ns {
            let classes = monomial_classes(n, 4, group.is_complex());
            let estimates = mc_haar_moments(group, n, &classes, &cfg)?;
            let mut integ = HaarIntegrator::new(GroupId::new(mc_group_kind(group)), n);
            for (m, e) in classes.iter().zip(&estimates) {
                let exact = to_f64(&integ.moment(m)?);
                total += 1;
                worst_z = worst_z.max(e.z_score(exact));
                worst_abs = worst_abs.max((e.mean - exact).abs()).max(e.mean_imag.abs());
                if !e.within(exact, 4.0) {
                    outside.push(format!("{group}_{n} {m}: exact {exact:.6}, mc {:.6} ± {:.1e}", e.mean, e.stderr));
                }
            }
        }
    }
    Ok((
        outside.is_empty(),
        format!(
            "O, U, B, C at N ∈ {ns:?}, {} samples, seed {}: {total} monomial classes, worst {worst_z:.2}σ, worst |Δ| {worst_abs:.1e}, {} outside 4σ {outside:?}",
            cfg.samples,
            cfg.seed,
            outside.len()
        ),
    ))
}

fn derangements(_: &Settings) -> Result<(bool, String)> {
    let mut ok = true;
    for n in 1..=8 {
        ok &= derangement_probability(n) == sn_truncated_char_law(n, &ExactScalar::one())?[0];
    }
    let p8 = derangement_probability(8);
    let gap = (to_f64(&p8) - (-1.0f64).exp()).abs();
    ok &= gap <= 1e-4;
    Ok((ok, format!("enumeration agrees for N ≤ 8; P_8(χ = 0) = {p8}, |P − 1/e| = {gap:.2e}")))
}

fn truncated_characters(s: &Settings) -> Result<(bool, String)> {
    let s_group = GroupId::new(GroupKind::S);
    let mut ok = true;
    for t in [rational(3, 7), ExactScalar::one()] {
        let enumerated = sn_truncated_char_moments(7, &t, 4)?;
        let steps = (&t * integer(7)).to_integer().to_usize().unwrap_or(0);
        for (k, value) in enumerated.iter().enumerate() {
            ok &= *value == truncated_char_moment(s_group, 7, steps, &ColorWord::white(k))?;
        }
    }
    let exact_part = ok;
    let ns: &[usize] = if s.full() { &[8, 16, 24] } else { &[8, 16] };
    let mut lines = Vec::new();
    for t in [rational(3, 8), rational(1, 2), ExactScalar::one()] {
        for k in 1..=4 {
            let word = ColorWord::white(k);
            let limit = asymptotic_char_moments(&CategorySpec::Named(CategoryId::P), &t, &word)?;
            let errors: Vec<ExactScalar> = ns
                .iter()
                .map(|&n| {
                    let steps = (&t * integer(n as i64)).to_integer().to_usize().unwrap_or(0);
                    truncated_char_moment(s_group, n, steps, &word).map(|v| (v - &limit).abs())
                })
                .collect::<Result<_>>()?;
            let all_zero = errors.iter().all(|e| e.is_zero());
            let strict = errors.windows(2).all(|w| w[1] < w[0]);
            ok &= all_zero || strict;
            if !all_zero {
                let e: Vec<String> = errors.iter().map(|e| format!("{:.2e}", to_f64(e))).collect();
                lines.push(format!("t={t} k={k}: {}", e.join(" > ")));
            }
        }
    }
    Ok((
        ok,
        format!(
            "N = 7 enumeration {}; errors along N ∈ {ns:?} (exactly zero where omitted): {}",
            if exact_part { "matches Tr(W G_s)" } else { "MISMATCH" },
            lines.join("; ")
        ),
    ))
}

fn free_characters(s: &Settings) -> Result<(bool, String)> {
    let (ns, kmax) = if s.full() { (4..=8, 6) } else { (4..=5, 4) };
    let counts = |id: CategoryId, k: usize| -> BigInt {
        match id {
            CategoryId::NC2 if k.is_multiple_of(2) => catalan(k / 2),
            CategoryId::NC => catalan(k),
            CategoryId::NCEven if k.is_multiple_of(2) => binomial(3 * k / 2, k / 2) / BigInt::from(k + 1),
            _ => BigInt::zero(),
        }
    };
    let laws = [
        (CategoryId::NC2, LawKind::Semicircle),
        (CategoryId::NC, LawKind::FreePoisson),
        (CategoryId::NCEven, LawKind::FreeBessel(2)),
    ];
    let mut ok = true;
    let mut cases = 0;
    for (id, law) in laws {
        let law = LawId::new(law, ExactScalar::one())?;
        for k in 0..=kmax {
            let word = ColorWord::white(k);
            let expected = ExactScalar::from_integer(counts(id, k));
            ok &= law_moment(&law, &word)? == expected;
            for n in ns.clone() {
                let g = gram(&CategorySpec::Named(id), &word, n)?;
                let rank = g.rank;
                let gm = g.matrix.clone();
                let w = weingarten(g, false)?;
                let trace = w.matrix.checked_mul(&gm)?.trace();
                ok &= trace == expected && ExactScalar::from(BigInt::from(rank)) == expected;
                cases += 1;
            }
        }
    }
    Ok((
        ok,
        format!("NC2, NC, NC_even at N ∈ {ns:?}, k ≤ {kmax}: {cases} traces equal rank and the closed-form counts"),
    ))
}

fn free_hyperspherical(s: &Settings) -> Result<(bool, String)> {
    let ns: &[usize] = if s.full() { &[4, 5, 6] } else { &[4] };
    let mut ok = true;
    let mut worst = String::from("0");
    for &n in ns {
        for l in 0..=3 {
            let v = free_hyperspherical_moment(n, l)?;
            ok &= v.agrees;
            if v.error_bound > worst {
                worst = v.error_bound.clone();
            }
        }
    }
    Ok((ok, format!("l ≤ 3, N ∈ {ns:?}, 50 digits: largest error bound {worst}")))
}

fn sphere_moments(s: &Settings) -> Result<(bool, String)> {
    let cfg = s.mc(1_000_000, 20_000)?;
    let ns: &[usize] = if s.full() { &[3, 4, 5] } else { &[3] };
    let mut ok = true;
    let (mut total, mut worst_z) = (0, 0.0f64);
    for &n in ns {
        let classes = sphere_classes(n, 4);
        let estimates = sphere_mc_moments(n, &classes, &cfg)?;
        for (list, e) in classes.iter().zip(&estimates) {
            let exact = to_f64(&sphere_moment(SphereKind::Real, list, n)?);
            total += 1;
            worst_z = worst_z.max(e.z_score(exact));
            ok &= e.within(exact, 4.0);
        }
    }
    let mut ratios = Vec::new();
    for l in 1..=3usize {
        let v = sphere_moment(SphereKind::RealFree, &vec![1; 2 * l], 64)?;
        let scaled = to_f64(&(v * pow(&integer(64), l))) / catalan(l).to_f64().unwrap_or(f64::NAN);
        ok &= (scaled - 1.0).abs() <= 0.15;
        ratios.push(format!("{scaled:.4}"));
    }
    Ok((
        ok,
        format!(
            "real sphere N ∈ {ns:?}, {} samples: {total} classes, worst {worst_z:.2}σ; free sphere N = 64: N^l ∫x^2l / C_l = {}",
            cfg.samples,
            ratios.join(", ")
        ),
    ))
}

fn temperley_lieb(s: &Settings) -> Result<(bool, String)> {
    let kmax = if s.full() { 6 } else { 4 };
    let mut ok = true;
    let mut relations = 0;
    for delta in [integer(2), integer(3), rational(7, 2)] {
        let index_inv = ExactScalar::one() / (&delta * &delta);
        for k in 1..=kmax {
            let e: Vec<TLElement> = (1..k).map(|i| jones_generator(i, k, &delta)).collect::<Result<_>>()?;
            for i in 0..e.len() {
                ok &= e[i].multiply(&e[i])? == e[i] && e[i].adjoint() == e[i];
                relations += 2;
                for j in 0..e.len() {
                    let gap = i.abs_diff(j);
                    if gap == 1 {
                        ok &= e[i].multiply(&e[j])?.multiply(&e[i])? == e[i].scale(&index_inv);
                        relations += 1;
                    } else if gap >= 2 {
                        ok &= e[i].multiply(&e[j])? == e[j].multiply(&e[i])?;
                        relations += 1;
                    }
                }
            }
            let next = jones_generator(k, k + 1, &delta)?;
            for d in crate::tl::basis(k)? {
                let x = TLElement::diagram(&d, delta.clone())?;
                ok &= x.embed().multiply(&next)?.markov_trace() == x.markov_trace() * &index_inv;
                relations += 1;
            }
        }
    }
    for k in 0..=8 {
        ok &= BigInt::from(tl_dimension(k)?) == catalan(k);
    }
    Ok((
        ok,
        format!("δ ∈ {{2, 3, 7/2}}, k ≤ {kmax}: {relations} relations and Markov identities; dim TL(k) = C_k for k ≤ 8"),
    ))
}

fn weyl_models(s: &Settings) -> Result<(bool, String)> {
    let count = if s.full() { 100 } else { 10 };
    let (mut relation, mut magic, mut pauli) = (0.0f64, 0.0f64, 0.0f64);
    for n in [2, 3] {
        for r in 0..count {
            let seed = s.seed.wrapping_add(1000 * n as u64 + r);
            let (_, _, report) = weyl_model(n, &random_unitary(n, seed))?;
            relation = relation.max(report.relation_residual);
            magic = magic.max(report.magic_residual);
            pauli = pauli.max(report.pauli_residual.unwrap_or(0.0));
        }
    }
    let ok = relation <= 1e-10 && magic <= 1e-10 && pauli <= 1e-10;
    Ok((
        ok,
        format!("n ∈ {{2, 3}}, {count} unitaries each: relations {relation:.1e}, magic {magic:.1e}, Pauli {pauli:.1e}"),
    ))
}

fn stationarity(s: &Settings) -> Result<(bool, String)> {
    let cfg = s.mc(1_000_000, 50_000)?;
    let t1 = stationarity_matrix(2, 1, &cfg)?;
    let constant = t1.matrix.iter().flatten().map(|x| (x - 0.25).abs()).fold(0.0, f64::max);
    let t2 = stationarity_matrix(2, 2, &cfg)?;
    let ok = constant <= 1e-12 && t1.residual <= 1e-12 && t2.residual <= 1e-2;
    Ok((
        ok,
        format!(
            "n = 2, {} samples: |T_1 − 1/4| ≤ {constant:.1e}, ‖T_1² − T_1‖ = {:.1e}, ‖T_2² − T_2‖ = {:.2e}",
            cfg.samples, t1.residual, t2.residual
        ),
    ))
}

fn partial_isometries(s: &Settings) -> Result<(bool, String)> {
    let full = s.full();
    let ns: &[usize] = if full { &[3, 4] } else { &[3] };
    let kmax = if full { 4 } else { 3 };
    let mut ok = true;
    let mut compared = 0;
    for kind in [GroupKind::O, GroupKind::U, GroupKind::H] {
        let group = GroupId::new(kind);
        for &n in ns {
            let spec = PartialIsometrySpec::new(group, n, n, n)?;
            let mut integ = HaarIntegrator::new(group, n);
            for k in 0..=kmax {
                let words = if group.is_complex() {
                    ColorWord::all_of_length(k)
                } else {
                    vec![ColorWord::white(k)]
                };
                for word in words {
                    for a in growth_strings(k, n) {
                        for b in growth_strings(k, n) {
                            let rows: Vec<usize> = a.iter().map(|x| x + 1).collect();
                            let cols: Vec<usize> = b.iter().map(|x| x + 1).collect();
                            let m = MonomialSpec::colored(&rows, &cols, &word)?;
                            ok &= partial_isometry_moment(&spec, &m)? == integ.moment(&m)?;
                            compared += 1;
                        }
                    }
                }
            }
        }
    }
    for (kind, sphere) in [
        (GroupKind::O, SphereKind::Real),
        (GroupKind::OStar, SphereKind::RealHalf),
        (GroupKind::OPlus, SphereKind::RealFree),
    ] {
        for &n in ns {
            let spec = PartialIsometrySpec::new(GroupId::new(kind), 1, n, 1)?;
            for k in 0..=kmax {
                for b in growth_strings(k, n) {
                    let cols: Vec<usize> = b.iter().map(|x| x + 1).collect();
                    let m = MonomialSpec::real(&vec![1; k], &cols)?;
                    ok &= partial_isometry_moment(&spec, &m)? == sphere_moment(sphere, &cols, n)?;
                    compared += 1;
                }
            }
        }
    }
    let group = GroupId::new(GroupKind::O);
    let (half, one) = (rational(1, 2), ExactScalar::one());
    let mut series = Vec::new();
    let mut converging = true;
    for sdeg in [2, 4] {
        let word = ColorWord::white(sdeg);
        let limit = nonoverlapping_sum_limit(group, &half, &half, &one, &word)?;
        let errors: Vec<ExactScalar> = [10usize, 20, 30]
            .iter()
            .map(|&n| {
                let spec = PartialIsometrySpec::new(group, n, n, n / 2)?;
                nonoverlapping_sum_moment(&spec, n / 2, &word).map(|v| (v - &limit).abs())
            })
            .collect::<Result<_>>()?;
        let monotone = errors.windows(2).all(|w| w[1] <= w[0]);
        let strict = errors.windows(2).all(|w| w[1] < w[0]);
        converging &= monotone && (sdeg == 2 || strict);
        let e: Vec<String> = errors.iter().map(|e| format!("{:.2e}", to_f64(e))).collect();
        series.push(format!("s={sdeg} → {limit}: errors {}", e.join(", ")));
    }
    ok &= converging;
    if compared == 0 {
        return Err(Error::InvalidArgument("nothing compared".into()));
    }
    Ok((
        ok,
        format!(
            "{compared} exact reductions (L=M=N to O/U/H, L=M=1 to spheres); O-type sums at κ=λ=1/2, μ=1 along N ∈ {{10, 20, 30}}: {}",
            series.join("; ")
        ),
    ))
}
