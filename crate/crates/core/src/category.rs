//! Categories of partitions: the three categorical operations, the dictionary of
//! named categories, generator closure and axiom checks.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::partition::{enumerate_bounded, Color, ColorWord, Partition, Predicate};
use crate::union_find::UnionFind;

impl Partition {
    /// Horizontal concatenation `[pq]`.
    pub fn tensor(&self, other: &Partition) -> Partition {
        let (k1, l1) = self.shape();
        let (k2, l2) = other.shape();
        let off = self.num_blocks();
        let a = self.labels();
        let b = other.labels();
        let mut labels = Vec::with_capacity(a.len() + b.len());
        labels.extend(a[..k1].iter().map(|&x| x as usize));
        labels.extend(b[..k2].iter().map(|&x| x as usize + off));
        labels.extend(a[k1..k1 + l1].iter().map(|&x| x as usize));
        labels.extend(b[k2..k2 + l2].iter().map(|&x| x as usize + off));
        Partition::from_labels(
            self.upper().concat(other.upper()),
            self.lower().concat(other.lower()),
            &labels,
        )
        .expect("tensor keeps leg counts consistent")
    }

    /// Vertical concatenation with `self` on top: the lower row of `self` is glued
    /// to the upper row of `bottom`. Returns the composite and the number of closed
    /// components left in the middle row.
    pub fn compose(&self, bottom: &Partition) -> Result<(Partition, usize)> {
        if self.lower() != bottom.upper() {
            return Err(Error::ColorMismatch {
                top: self.to_string(),
                bottom: bottom.to_string(),
            });
        }
        let (k, m) = self.shape();
        let l = bottom.lower_len();
        let top_n = k + m;
        let total = top_n + m + l;
        let mut uf = UnionFind::new(total);
        let mut first_top: Vec<Option<usize>> = vec![None; self.num_blocks()];
        for (leg, &b) in self.labels().iter().enumerate() {
            match first_top[b as usize] {
                None => first_top[b as usize] = Some(leg),
                Some(f) => {
                    uf.union(f, leg);
                }
            }
        }
        let mut first_bot: Vec<Option<usize>> = vec![None; bottom.num_blocks()];
        for (leg, &b) in bottom.labels().iter().enumerate() {
            let node = top_n + leg;
            match first_bot[b as usize] {
                None => first_bot[b as usize] = Some(node),
                Some(f) => {
                    uf.union(f, node);
                }
            }
        }
        for i in 0..m {
            uf.union(k + i, top_n + i);
        }
        let outer: Vec<usize> = (0..k).chain(top_n + m..total).collect();
        let roots: Vec<usize> = outer.iter().map(|&v| uf.find(v)).collect();
        let outer_roots: HashSet<usize> = roots.iter().copied().collect();
        let loops: HashSet<usize> = (k..k + m)
            .map(|v| uf.find(v))
            .filter(|r| !outer_roots.contains(r))
            .collect();
        let composite = Partition::from_labels(self.upper().clone(), bottom.lower().clone(), &roots)?;
        Ok((composite, loops.len()))
    }

    /// Every partition obtained by rotating legs around the diagram. Rotation keeps
    /// the cyclic clockwise word (with upper colors inverted), so it is a
    /// consequence of the axioms and never changes the leg count.
    pub fn rotations(&self) -> Vec<Partition> {
        let labels = self.clockwise_labels();
        let colors = self.clockwise_colors();
        let n = labels.len();
        let mut out = Vec::with_capacity(n.max(1) * (n + 1));
        for shift in 0..n.max(1) {
            let lab: Vec<u8> = (0..n).map(|i| labels[(i + shift) % n]).collect();
            let col: Vec<Color> = (0..n).map(|i| colors[(i + shift) % n]).collect();
            for k in 0..=n {
                let upper = ColorWord::new(col[..k].iter().map(|c| c.inverse()).collect());
                let lower = ColorWord::new(col[k..].iter().rev().copied().collect());
                let mut leg_labels = lab[..k].to_vec();
                leg_labels.extend(lab[k..].iter().rev());
                out.push(
                    Partition::from_labels(upper, lower, &leg_labels).expect("rotation keeps leg counts"),
                );
            }
        }
        out
    }

    /// Upside-down turning with color inversion.
    pub fn adjoint(&self) -> Partition {
        let (k, l) = self.shape();
        let labels = self.labels();
        let flipped: Vec<u8> = labels[k..k + l].iter().chain(&labels[..k]).copied().collect();
        Partition::from_labels(self.lower().inverted(), self.upper().inverted(), &flipped)
            .expect("adjoint keeps leg counts consistent")
    }
}

pub fn tensor(p: &Partition, q: &Partition) -> Partition {
    p.tensor(q)
}

pub fn compose(top: &Partition, bottom: &Partition) -> Result<(Partition, usize)> {
    top.compose(bottom)
}

pub fn adjoint(p: &Partition) -> Partition {
    p.adjoint()
}

/// Named categories. `Mcal*` variants add the matching (color balance) rule to
/// every non-singleton block; `Ps`/`NCs` keep blocks with `#white − #black ≡ 0
/// (mod s)` (`s = 0` meaning equality), so that `Ps(2)` is `P_even` and `Ps(0)`
/// is `Mcal_P_even`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CategoryId {
    P,
    NC,
    P2,
    NC2,
    PEven,
    NCEven,
    P2Star,
    PEvenStar,
    P12,
    NC12,
    McalP2,
    McalNC2,
    McalPEven,
    McalNCEven,
    McalP2Star,
    McalPEvenStar,
    McalP12,
    McalNC12,
    Ps(u32),
    NCs(u32),
}

impl CategoryId {
    pub const ALL_NAMED: [CategoryId; 18] = [
        CategoryId::P,
        CategoryId::NC,
        CategoryId::P2,
        CategoryId::NC2,
        CategoryId::PEven,
        CategoryId::NCEven,
        CategoryId::P2Star,
        CategoryId::PEvenStar,
        CategoryId::P12,
        CategoryId::NC12,
        CategoryId::McalP2,
        CategoryId::McalNC2,
        CategoryId::McalPEven,
        CategoryId::McalNCEven,
        CategoryId::McalP2Star,
        CategoryId::McalPEvenStar,
        CategoryId::McalP12,
        CategoryId::McalNC12,
    ];

    /// Partition predicates whose conjunction defines the category.
    pub fn predicates(self) -> Vec<Predicate> {
        use CategoryId::*;
        use Predicate as Pr;
        let mut v = match self {
            P => vec![Pr::All],
            NC => vec![Pr::Noncrossing],
            P2 | McalP2 => vec![Pr::Pairing],
            NC2 | McalNC2 => vec![Pr::Pairing, Pr::Noncrossing],
            PEven | McalPEven => vec![Pr::EvenBlocks],
            NCEven | McalNCEven => vec![Pr::EvenBlocks, Pr::Noncrossing],
            P2Star | McalP2Star => vec![Pr::Pairing, Pr::HalfClassical],
            PEvenStar | McalPEvenStar => vec![Pr::EvenBlocks, Pr::HalfClassical],
            P12 | McalP12 => vec![Pr::SingletonsAndPairings],
            NC12 | McalNC12 => vec![Pr::SingletonsAndPairings, Pr::Noncrossing],
            Ps(s) => vec![Pr::ColorBalancedMod(s)],
            NCs(s) => vec![Pr::ColorBalancedMod(s), Pr::Noncrossing],
        };
        if self.is_matching_type() {
            v.push(Pr::Matching);
        }
        v
    }

    pub fn is_matching_type(self) -> bool {
        use CategoryId::*;
        matches!(
            self,
            McalP2 | McalNC2 | McalPEven | McalNCEven | McalP2Star | McalPEvenStar | McalP12 | McalNC12
        )
    }

    pub fn member(self, p: &Partition) -> bool {
        self.predicates().iter().all(|pred| pred.matches(p))
    }

    /// Whether every partition of the category has even blocks.
    pub fn is_even(self) -> bool {
        use CategoryId::*;
        match self {
            P | NC | P12 | NC12 | McalP12 | McalNC12 => false,
            Ps(s) | NCs(s) => s % 2 == 0,
            _ => true,
        }
    }

    pub fn name(self) -> String {
        use CategoryId::*;
        match self {
            P => "P".into(),
            NC => "NC".into(),
            P2 => "P2".into(),
            NC2 => "NC2".into(),
            PEven => "P_even".into(),
            NCEven => "NC_even".into(),
            P2Star => "P2_star".into(),
            PEvenStar => "P_even_star".into(),
            P12 => "P12".into(),
            NC12 => "NC12".into(),
            McalP2 => "Mcal_P2".into(),
            McalNC2 => "Mcal_NC2".into(),
            McalPEven => "Mcal_P_even".into(),
            McalNCEven => "Mcal_NC_even".into(),
            McalP2Star => "Mcal_P2_star".into(),
            McalPEvenStar => "Mcal_P_even_star".into(),
            McalP12 => "Mcal_P12".into(),
            McalNC12 => "Mcal_NC12".into(),
            Ps(s) => format!("P_s{}", s_name(s)),
            NCs(s) => format!("NC_s{}", s_name(s)),
        }
    }
}

fn s_name(s: u32) -> String {
    if s == 0 {
        "inf".into()
    } else {
        s.to_string()
    }
}

fn parse_s(t: &str) -> Result<u32> {
    if t == "inf" {
        return Ok(0);
    }
    t.parse()
        .map_err(|_| Error::Parse(format!("bad reflection order {t:?}")))
}

impl fmt::Display for CategoryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for CategoryId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(rest) = s.strip_prefix("P_s") {
            return Ok(CategoryId::Ps(parse_s(rest)?));
        }
        if let Some(rest) = s.strip_prefix("NC_s") {
            return Ok(CategoryId::NCs(parse_s(rest)?));
        }
        CategoryId::ALL_NAMED
            .iter()
            .copied()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown category {s:?}")))
    }
}

/// Whether colors take part in the categorical operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    /// All legs white; the adjoint does not invert colors.
    Uncolored,
    Colored,
}

/// A category obtained as the bounded closure of a set of generators.
#[derive(Clone, Debug)]
pub struct GeneratedCategory {
    pub generators: Vec<Partition>,
    pub leg_bound: usize,
    pub regime: Regime,
    elements: BTreeSet<Partition>,
}

impl GeneratedCategory {
    pub fn elements(&self) -> &BTreeSet<Partition> {
        &self.elements
    }

    pub fn contains(&self, p: &Partition) -> Result<bool> {
        if p.num_legs() > self.leg_bound {
            return Err(Error::LegBoundExceeded {
                legs: p.num_legs(),
                bound: self.leg_bound,
            });
        }
        let p = match self.regime {
            Regime::Uncolored => p.uncolored(),
            Regime::Colored => p.clone(),
        };
        Ok(self.elements.contains(&p))
    }
}

#[derive(Clone, Debug)]
pub enum CategorySpec {
    Named(CategoryId),
    Generated(GeneratedCategory),
}

impl CategorySpec {
    pub fn member(&self, p: &Partition) -> Result<bool> {
        match self {
            CategorySpec::Named(id) => Ok(id.member(p)),
            CategorySpec::Generated(g) => g.contains(p),
        }
    }

    pub fn name(&self) -> String {
        match self {
            CategorySpec::Named(id) => id.name(),
            CategorySpec::Generated(g) => format!("<{} generators, bound {}>", g.generators.len(), g.leg_bound),
        }
    }

    /// `D(upper, lower)` in canonical order.
    pub fn set(&self, upper: &ColorWord, lower: &ColorWord) -> Result<Vec<Partition>> {
        category_set(self, upper, lower)
    }
}

impl From<CategoryId> for CategorySpec {
    fn from(id: CategoryId) -> Self {
        CategorySpec::Named(id)
    }
}

pub fn member(cat: &CategorySpec, p: &Partition) -> Result<bool> {
    cat.member(p)
}

pub fn category_set(cat: &CategorySpec, upper: &ColorWord, lower: &ColorWord) -> Result<Vec<Partition>> {
    match cat {
        CategorySpec::Named(id) => enumerate_bounded(
            upper,
            lower,
            &id.predicates(),
            crate::partition::DEFAULT_LEG_BOUND,
        ),
        CategorySpec::Generated(g) => {
            let n = upper.len() + lower.len();
            if n > g.leg_bound {
                return Err(Error::LegBoundExceeded {
                    legs: n,
                    bound: g.leg_bound,
                });
            }
            let mut out = Vec::new();
            for p in enumerate_bounded(upper, lower, &[Predicate::All], crate::partition::DEFAULT_LEG_BOUND)? {
                if g.contains(&p)? {
                    out.push(p);
                }
            }
            Ok(out)
        }
    }
}

/// Largest leg bound accepted by [`closure`].
pub const MAX_CLOSURE_BOUND: usize = 10;

/// Least family containing the generators, identities and semicircles, closed
/// under tensor, compose and adjoint, among partitions with at most `leg_bound`
/// legs.
pub fn closure(generators: &[Partition], leg_bound: usize, regime: Regime) -> Result<GeneratedCategory> {
    if leg_bound > MAX_CLOSURE_BOUND {
        return Err(Error::LegBoundExceeded {
            legs: leg_bound,
            bound: MAX_CLOSURE_BOUND,
        });
    }
    let normalize = |p: Partition| match regime {
        Regime::Uncolored => p.uncolored(),
        Regime::Colored => p,
    };

    let mut seeds: Vec<Partition> = generators.iter().cloned().map(normalize).collect();
    for len in 0..=leg_bound / 2 {
        match regime {
            Regime::Uncolored => seeds.push(Partition::identity(&ColorWord::white(len))),
            Regime::Colored => {
                for w in ColorWord::all_of_length(len) {
                    seeds.push(Partition::identity(&w));
                }
            }
        }
    }
    if leg_bound >= 2 {
        match regime {
            Regime::Uncolored => seeds.push(Partition::cap(Color::White, Color::White)),
            Regime::Colored => {
                seeds.push(Partition::cap(Color::White, Color::Black));
                seeds.push(Partition::cap(Color::Black, Color::White));
            }
        }
    }

    let mut list: Vec<Partition> = Vec::new();
    let mut seen: HashSet<Partition> = HashSet::new();
    let mut by_upper: HashMap<ColorWord, Vec<usize>> = HashMap::new();
    let mut by_lower: HashMap<ColorWord, Vec<usize>> = HashMap::new();
    let mut by_legs: Vec<Vec<usize>> = vec![Vec::new(); leg_bound + 1];

    let push = |p: Partition,
                    list: &mut Vec<Partition>,
                    seen: &mut HashSet<Partition>,
                    by_upper: &mut HashMap<ColorWord, Vec<usize>>,
                    by_lower: &mut HashMap<ColorWord, Vec<usize>>,
                    by_legs: &mut Vec<Vec<usize>>| {
        if p.num_legs() > leg_bound || seen.contains(&p) {
            return;
        }
        let idx = list.len();
        by_upper.entry(p.upper().clone()).or_default().push(idx);
        by_lower.entry(p.lower().clone()).or_default().push(idx);
        by_legs[p.num_legs()].push(idx);
        seen.insert(p.clone());
        list.push(p);
    };

    for s in seeds {
        push(s, &mut list, &mut seen, &mut by_upper, &mut by_lower, &mut by_legs);
    }

    let mut cursor = 0;
    while cursor < list.len() {
        let x = list[cursor].clone();
        let mut fresh: Vec<Partition> = vec![normalize(x.adjoint())];
        fresh.extend(x.rotations().into_iter().map(normalize));

        let room = leg_bound - x.num_legs();
        for legs in 0..=room {
            for &j in &by_legs[legs] {
                if j > cursor {
                    break;
                }
                let y = &list[j];
                fresh.push(x.tensor(y));
                fresh.push(y.tensor(&x));
            }
        }
        if let Some(ids) = by_upper.get(x.lower()) {
            for &j in ids {
                if j > cursor {
                    break;
                }
                let y = &list[j];
                if x.upper_len() + y.lower_len() <= leg_bound {
                    fresh.push(normalize(x.compose(y)?.0));
                }
            }
        }
        if let Some(ids) = by_lower.get(x.upper()) {
            for &j in ids {
                if j > cursor {
                    break;
                }
                let y = &list[j];
                if y.upper_len() + x.lower_len() <= leg_bound {
                    fresh.push(normalize(y.compose(&x)?.0));
                }
            }
        }
        for p in fresh {
            push(p, &mut list, &mut seen, &mut by_upper, &mut by_lower, &mut by_legs);
        }
        cursor += 1;
    }

    Ok(GeneratedCategory {
        generators: generators.to_vec(),
        leg_bound,
        regime,
        elements: list.into_iter().collect(),
    })
}

/// Outcome of an exhaustive axiom check.
#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub elements: usize,
    pub checks: usize,
    pub defects: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.defects.is_empty()
    }
}

/// All colored partitions of a named category with at most `leg_bound` legs.
pub fn named_elements(id: CategoryId, leg_bound: usize, regime: Regime) -> Result<Vec<Partition>> {
    let mut out = Vec::new();
    for n in 0..=leg_bound {
        for k in 0..=n {
            let words: Vec<(ColorWord, ColorWord)> = match regime {
                Regime::Uncolored => vec![(ColorWord::white(k), ColorWord::white(n - k))],
                Regime::Colored => {
                    let mut v = Vec::new();
                    for u in ColorWord::all_of_length(k) {
                        for l in ColorWord::all_of_length(n - k) {
                            v.push((u.clone(), l));
                        }
                    }
                    v
                }
            };
            for (u, l) in words {
                out.extend(category_set(&CategorySpec::Named(id), &u, &l)?);
            }
        }
    }
    Ok(out)
}

/// Checks that a family of partitions is closed under the categorical operations
/// (within the leg bound) and contains the identities and semicircles.
pub fn verify_axioms(elements: &[Partition], leg_bound: usize, regime: Regime) -> AxiomReport {
    let set: HashSet<&Partition> = elements.iter().collect();
    let normalize = |p: Partition| match regime {
        Regime::Uncolored => p.uncolored(),
        Regime::Colored => p,
    };
    let mut report = AxiomReport {
        elements: elements.len(),
        ..Default::default()
    };
    let check = |p: Partition, what: &str, report: &mut AxiomReport| {
        report.checks += 1;
        if p.num_legs() <= leg_bound && !set.contains(&p) {
            report.defects.push(format!("{what}: {p} missing"));
        }
    };
    for len in 0..=leg_bound / 2 {
        let words = match regime {
            Regime::Uncolored => vec![ColorWord::white(len)],
            Regime::Colored => ColorWord::all_of_length(len),
        };
        for w in words {
            check(Partition::identity(&w), "identity", &mut report);
        }
    }
    if leg_bound >= 2 {
        match regime {
            Regime::Uncolored => check(Partition::cap(Color::White, Color::White), "semicircle", &mut report),
            Regime::Colored => {
                check(Partition::cap(Color::White, Color::Black), "semicircle", &mut report);
                check(Partition::cap(Color::Black, Color::White), "semicircle", &mut report);
            }
        }
    }
    let mut by_upper: HashMap<&ColorWord, Vec<&Partition>> = HashMap::new();
    for p in elements {
        by_upper.entry(p.upper()).or_default().push(p);
    }
    for x in elements {
        check(normalize(x.adjoint()), "adjoint", &mut report);
        for y in elements {
            if x.num_legs() + y.num_legs() <= leg_bound {
                check(x.tensor(y), "tensor", &mut report);
            }
        }
        if let Some(ys) = by_upper.get(x.lower()) {
            for y in ys {
                if x.upper_len() + y.lower_len() <= leg_bound {
                    let (c, _) = x.compose(y).expect("words match by construction");
                    check(normalize(c), "compose", &mut report);
                }
            }
        }
    }
    report
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    S,
    SPlus,
    O,
    OPlus,
    OStar,
    U,
    UPlus,
    UStar,
    H,
    HPlus,
    HStar,
    K,
    KPlus,
    KStar,
    B,
    BPlus,
    C,
    CPlus,
    /// `H_N^s = Z_s ≀ S_N`, `s = 0` standing for `s = ∞`.
    Hs(u32),
    HsPlus(u32),
}

/// An easy (quantum) group, optionally Schur-Weyl twisted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupId {
    pub kind: GroupKind,
    pub twisted: bool,
}

impl GroupId {
    pub fn new(kind: GroupKind) -> Self {
        GroupId { kind, twisted: false }
    }

    pub fn twisted(kind: GroupKind) -> Result<Self> {
        let g = GroupId { kind, twisted: true };
        if !group_category(GroupId::new(kind)).is_even() {
            return Err(Error::InvalidArgument(format!(
                "{} has a category outside P_even and cannot be twisted",
                GroupId::new(kind)
            )));
        }
        Ok(g)
    }

    pub fn category(self) -> CategoryId {
        group_category(self)
    }

    /// Whether Haar moments depend on the colors of the monomial.
    pub fn is_complex(self) -> bool {
        self.category().is_matching_type() || matches!(self.kind, GroupKind::Hs(s) | GroupKind::HsPlus(s) if s != 1 && s != 2)
    }
}

pub fn group_category(g: GroupId) -> CategoryId {
    use GroupKind::*;
    match g.kind {
        S => CategoryId::P,
        SPlus => CategoryId::NC,
        O => CategoryId::P2,
        OPlus => CategoryId::NC2,
        OStar => CategoryId::P2Star,
        U => CategoryId::McalP2,
        UPlus => CategoryId::McalNC2,
        UStar => CategoryId::McalP2Star,
        H => CategoryId::PEven,
        HPlus => CategoryId::NCEven,
        HStar => CategoryId::PEvenStar,
        K => CategoryId::McalPEven,
        KPlus => CategoryId::McalNCEven,
        KStar => CategoryId::McalPEvenStar,
        B => CategoryId::P12,
        BPlus => CategoryId::NC12,
        C => CategoryId::McalP12,
        CPlus => CategoryId::McalNC12,
        Hs(1) => CategoryId::P,
        HsPlus(1) => CategoryId::NC,
        Hs(2) => CategoryId::PEven,
        HsPlus(2) => CategoryId::NCEven,
        Hs(s) => CategoryId::Ps(s),
        HsPlus(s) => CategoryId::NCs(s),
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GroupKind::*;
        let base = match self.kind {
            S => "S".to_string(),
            SPlus => "S+".into(),
            O => "O".into(),
            OPlus => "O+".into(),
            OStar => "O*".into(),
            U => "U".into(),
            UPlus => "U+".into(),
            UStar => "U*".into(),
            H => "H".into(),
            HPlus => "H+".into(),
            HStar => "H*".into(),
            K => "K".into(),
            KPlus => "K+".into(),
            KStar => "K*".into(),
            B => "B".into(),
            BPlus => "B+".into(),
            C => "C".into(),
            CPlus => "C+".into(),
            Hs(s) => format!("Hs{}", s_name(s)),
            HsPlus(s) => format!("Hs{}+", s_name(s)),
        };
        if self.twisted {
            write!(f, "{base}bar")
        } else {
            f.write_str(&base)
        }
    }
}

impl FromStr for GroupId {
    type Err = Error;

    /// Accepts `O+`, `O_plus`, `O*`, `O_star`, `Hs3`, `Hsinf+`, with an optional
    /// `bar` suffix for the twisted version.
    fn from_str(s: &str) -> Result<Self> {
        use GroupKind::*;
        let (base, twisted) = match s.strip_suffix("bar") {
            Some(b) => (b.trim_end_matches(['_', '-']), true),
            None => (s, false),
        };
        let base = base.replace("_plus", "+").replace("_star", "*");
        let kind = if let Some(rest) = base.strip_prefix("Hs") {
            match rest.strip_suffix('+') {
                Some(r) => HsPlus(parse_s(r)?),
                None => Hs(parse_s(rest)?),
            }
        } else {
            match base.as_str() {
                "S" => S,
                "S+" => SPlus,
                "O" => O,
                "O+" => OPlus,
                "O*" => OStar,
                "U" => U,
                "U+" => UPlus,
                "U*" => UStar,
                "H" => H,
                "H+" => HPlus,
                "H*" => HStar,
                "K" => K,
                "K+" => KPlus,
                "K*" => KStar,
                "B" => B,
                "B+" => BPlus,
                "C" => C,
                "C+" => CPlus,
                other => return Err(Error::Parse(format!("unknown group {other:?}"))),
            }
        };
        if twisted {
            GroupId::twisted(kind)
        } else {
            Ok(GroupId::new(kind))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn tensor_examples() {
        let id = p("o|o {u1,d1}");
        assert_eq!(id.tensor(&id), p("oo|oo {u1,d1}{u2,d2}"));
        let q = p("ob|o {u1,d1}{u2}");
        assert_eq!(Partition::empty().tensor(&q), q);
        assert_eq!(q.tensor(&Partition::empty()), q);
        let cap = p("-|oo {d1,d2}");
        assert_eq!(cap.tensor(&cap), p("-|oooo {d1,d2}{d3,d4}"));
    }

    #[test]
    fn compose_examples() {
        let cap = p("-|oo {d1,d2}");
        let cup = p("oo|- {u1,u2}");
        assert_eq!(cap.compose(&cup).unwrap(), (Partition::empty(), 1));
        let id = p("o|o {u1,d1}");
        assert_eq!(id.compose(&id).unwrap(), (id.clone(), 0));
        let cross = p("oo|oo {u1,d2}{u2,d1}");
        assert_eq!(
            cross.compose(&cross).unwrap(),
            (p("oo|oo {u1,d1}{u2,d2}"), 0)
        );
        assert!(matches!(
            p("-|ob {d1,d2}").compose(&cup),
            Err(Error::ColorMismatch { .. })
        ));
        // singleton legs in the middle row close into loops too
        let fork_down = p("-|o {d1}");
        let fork_up = p("o|- {u1}");
        assert_eq!(fork_down.compose(&fork_up).unwrap().1, 1);
    }

    #[test]
    fn adjoint_examples() {
        let cap = p("-|ob {d1,d2}");
        assert_eq!(cap.adjoint(), p("bo|- {u1,u2}"));
        let q = p("obo|bb {u1,d2}{u2,u3}{d1}");
        assert_eq!(q.adjoint().adjoint(), q);
        let id2 = p("oo|oo {u1,d1}{u2,d2}");
        assert_eq!(id2.adjoint(), p("bb|bb {u1,d1}{u2,d2}"));
        assert_eq!(id2.adjoint().uncolored(), id2);
    }

    #[test]
    fn membership_examples() {
        let star = CategorySpec::Named(CategoryId::P2Star);
        assert!(!star.member(&p("-|oooo {d1,d3}{d2,d4}")).unwrap());
        assert!(star.member(&p("-|oooo {d1,d4}{d2,d3}")).unwrap());
        assert!(CategoryId::NC.member(&p("-|oooo {d1,d3}{d2}{d4}")));
        assert!(!CategoryId::NC.member(&p("-|oooo {d1,d3}{d2,d4}")));
        assert!(CategoryId::McalNC2.member(&p("-|ob {d1,d2}")));
        assert!(!CategoryId::McalNC2.member(&p("-|oo {d1,d2}")));
        assert!(CategoryId::McalP12.member(&p("-|ob {d1}{d2}")));
    }

    #[test]
    fn category_set_examples() {
        let e = ColorWord::empty();
        let nc2 = CategorySpec::Named(CategoryId::NC2);
        assert_eq!(nc2.set(&e, &ColorWord::white(4)).unwrap().len(), 2);
        let all = CategorySpec::Named(CategoryId::P);
        assert_eq!(all.set(&e, &ColorWord::white(3)).unwrap().len(), 5);
        let p12 = CategorySpec::Named(CategoryId::P12);
        assert_eq!(
            p12.set(&e, &ColorWord::white(2)).unwrap(),
            vec![p("-|oo {d1,d2}"), p("-|oo {d1}{d2}")]
        );
    }

    #[test]
    fn group_dictionary() {
        let g = |s: &str| s.parse::<GroupId>().unwrap().category();
        assert_eq!(g("S"), CategoryId::P);
        assert_eq!(g("O+"), CategoryId::NC2);
        assert_eq!(g("O_plus"), CategoryId::NC2);
        assert_eq!(g("H"), CategoryId::PEven);
        assert_eq!(g("U*"), CategoryId::McalP2Star);
        assert_eq!(g("C+"), CategoryId::McalNC12);
        assert_eq!(g("Hs3"), CategoryId::Ps(3));
        assert_eq!(g("Hsinf"), CategoryId::Ps(0));
        assert!("Hbar".parse::<GroupId>().unwrap().twisted);
        assert!("Sbar".parse::<GroupId>().is_err());
        assert!("Bbar".parse::<GroupId>().is_err());
        for id in CategoryId::ALL_NAMED {
            assert_eq!(id.name().parse::<CategoryId>().unwrap(), id);
        }
    }

    #[test]
    fn rotation_examples() {
        let id = p("o|o {u1,d1}");
        let rots = id.rotations();
        assert!(rots.contains(&p("-|bo {d1,d2}")));
        assert!(rots.contains(&p("ob|- {u1,u2}")));
        let nested = p("-|oooooo {d1,d6}{d2,d5}{d3,d4}");
        assert!(Partition::identity(&ColorWord::white(3)).rotations().contains(&nested.recolored(ColorWord::empty(), "ooobbb".parse().unwrap()).unwrap()));
    }

    #[test]
    fn small_closures() {
        let free = closure(&[], 4, Regime::Uncolored).unwrap();
        let pairings: Vec<_> = free.elements().iter().filter(|p| p.is_pairing()).cloned().collect();
        let expected = named_elements(CategoryId::NC2, 4, Regime::Uncolored).unwrap();
        assert_eq!(pairings.len(), expected.len());
        assert!(expected.iter().all(|p| free.contains(p).unwrap()));
        assert!(closure(&[], 11, Regime::Uncolored).is_err());
    }

    #[test]
    fn named_categories_satisfy_axioms() {
        for id in CategoryId::ALL_NAMED {
            let regime = if id.is_matching_type() {
                Regime::Colored
            } else {
                Regime::Uncolored
            };
            let elements = named_elements(id, 5, regime).unwrap();
            let report = verify_axioms(&elements, 5, regime);
            assert!(report.passed(), "{id}: {:?}", &report.defects[..report.defects.len().min(3)]);
        }
    }
}
