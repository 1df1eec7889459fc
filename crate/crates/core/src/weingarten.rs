//! Gram and Weingarten matrices and the exact Haar integrals built from them.

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::category::{CategoryId, CategorySpec, GroupId};
use crate::error::{Error, Result};
use crate::linalg::{integer, pow, ExactMatrix};
use crate::partition::{enumerate, kernel, Color, ColorWord, Partition, Predicate};
use crate::ExactScalar;

/// Largest word length accepted for Gram bases.
pub const GRAM_LEG_BOUND: usize = 8;

/// `G(π, σ) = N^{|π ∨ σ|}` on the basis `D(0, word)`.
#[derive(Clone, Debug)]
pub struct GramData {
    pub category: String,
    pub word: ColorWord,
    pub n: usize,
    pub basis: Vec<Partition>,
    pub matrix: ExactMatrix,
    pub rank: usize,
}

/// `|π ∨ σ|` for all basis pairs.
pub fn join_table(basis: &[Partition]) -> Result<Vec<Vec<usize>>> {
    let d = basis.len();
    let mut t = vec![vec![0usize; d]; d];
    for a in 0..d {
        for b in a..d {
            let j = basis[a].join_blocks(&basis[b])?;
            t[a][b] = j;
            t[b][a] = j;
        }
    }
    Ok(t)
}

fn power_matrix(joins: &[Vec<usize>], n: usize) -> ExactMatrix {
    let d = joins.len();
    let max = joins.iter().flatten().copied().max().unwrap_or(0);
    let base = integer(n as i64);
    let powers: Vec<ExactScalar> = (0..=max).map(|e| pow(&base, e)).collect();
    ExactMatrix::from_fn(d, d, |a, b| powers[joins[a][b]].clone())
}

pub fn gram(cat: &CategorySpec, word: &ColorWord, n: usize) -> Result<GramData> {
    if word.len() > GRAM_LEG_BOUND {
        return Err(Error::LegBoundExceeded {
            legs: word.len(),
            bound: GRAM_LEG_BOUND,
        });
    }
    if n == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    let basis = cat.set(&ColorWord::empty(), word)?;
    let joins = join_table(&basis)?;
    let matrix = power_matrix(&joins, n);
    let rank = matrix.rank();
    Ok(GramData {
        category: cat.name(),
        word: word.clone(),
        n,
        basis,
        matrix,
        rank,
    })
}

impl GramData {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.rank == self.dim()
    }

    /// The Gram matrix on the same basis at another value of `N`.
    pub fn at(&self, n: usize) -> Result<ExactMatrix> {
        Ok(power_matrix(&join_table(&self.basis)?, n))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum WeingartenKind {
    ExactInverse,
    ReflexivePseudoInverse,
}

#[derive(Clone, Debug)]
pub struct WeingartenData {
    pub gram: GramData,
    pub matrix: ExactMatrix,
    pub kind: WeingartenKind,
}

/// `W = G^{-1}`; a singular Gram is an error unless `allow_pseudo`, in which
/// case a symmetric reflexive generalized inverse is returned. The projection
/// `Σ T_π W(π,σ) T_σ*` does not depend on the choice of generalized inverse, so
/// Haar integrals stay correct.
pub fn weingarten(g: GramData, allow_pseudo: bool) -> Result<WeingartenData> {
    if g.is_invertible() {
        let matrix = g.matrix.inverse().ok_or(Error::GramSingular {
            rank: g.rank,
            dim: g.dim(),
        })?;
        return Ok(WeingartenData {
            gram: g,
            matrix,
            kind: WeingartenKind::ExactInverse,
        });
    }
    if !allow_pseudo {
        return Err(Error::GramSingular {
            rank: g.rank,
            dim: g.dim(),
        });
    }
    let matrix = g.matrix.symmetric_pseudo_inverse()?;
    Ok(WeingartenData {
        gram: g,
        matrix,
        kind: WeingartenKind::ReflexivePseudoInverse,
    })
}

/// One factor `u_{ij}` (white) or `ū_{ij}` (black) of a monomial; 1-based indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub i: usize,
    pub j: usize,
    pub color: Color,
}

/// The word `u^{e_1}_{i_1 j_1} … u^{e_k}_{i_k j_k}`. Textual form:
/// `u[1,1] u*[2,3]`, where `u*` (or `ubar`) denotes the conjugate entry.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MonomialSpec {
    pub factors: Vec<Factor>,
}

impl MonomialSpec {
    pub fn new(factors: Vec<Factor>) -> Self {
        MonomialSpec { factors }
    }

    /// All-white monomial from row and column index tuples.
    pub fn real(rows: &[usize], cols: &[usize]) -> Result<Self> {
        Self::colored(rows, cols, &ColorWord::white(rows.len()))
    }

    pub fn colored(rows: &[usize], cols: &[usize], word: &ColorWord) -> Result<Self> {
        if rows.len() != cols.len() || rows.len() != word.len() {
            return Err(Error::LengthMismatch {
                expected: word.len(),
                found: rows.len().max(cols.len()),
            });
        }
        Ok(MonomialSpec {
            factors: (0..rows.len())
                .map(|r| Factor {
                    i: rows[r],
                    j: cols[r],
                    color: word.get(r),
                })
                .collect(),
        })
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    pub fn word(&self) -> ColorWord {
        ColorWord::new(self.factors.iter().map(|f| f.color).collect())
    }

    pub fn rows(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.i).collect()
    }

    pub fn cols(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.j).collect()
    }

    pub fn check_range(&self, m: usize, n: usize) -> Result<()> {
        for f in &self.factors {
            if f.i == 0 || f.i > m {
                return Err(Error::IndexOutOfRange { index: f.i, n: m });
            }
            if f.j == 0 || f.j > n {
                return Err(Error::IndexOutOfRange { index: f.j, n });
            }
        }
        Ok(())
    }
}

impl fmt::Display for MonomialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|x| {
                let star = if x.color == Color::Black { "*" } else { "" };
                format!("u{star}[{},{}]", x.i, x.j)
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for MonomialSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(MonomialSpec::default());
        }
        let mut factors = Vec::new();
        let mut rest = s;
        while !rest.trim_start().is_empty() {
            rest = rest.trim_start().trim_start_matches('*').trim_start();
            let open = rest
                .find('[')
                .ok_or_else(|| Error::Parse(format!("expected '[' in {rest:?}")))?;
            let color = match rest[..open].trim() {
                "u" => Color::White,
                "u*" | "ubar" | "conj(u)" => Color::Black,
                other => return Err(Error::Parse(format!("unknown factor {other:?}"))),
            };
            let close = rest
                .find(']')
                .ok_or_else(|| Error::Parse("missing ']'".into()))?;
            let (a, b) = rest[open + 1..close]
                .split_once(',')
                .ok_or_else(|| Error::Parse("expected 'i,j'".into()))?;
            let parse = |t: &str| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad index {t:?}")))
            };
            let (i, j) = (parse(a)?, parse(b)?);
            if i == 0 || j == 0 {
                return Err(Error::Parse("indices start at 1".into()));
            }
            factors.push(Factor { i, j, color });
            rest = &rest[close + 1..];
        }
        Ok(MonomialSpec { factors })
    }
}

/// Sums `Σ_{π ≤ a, σ ≤ b} W(π, σ)` over basis elements refining the kernels.
fn kernel_sum(w: &WeingartenData, ker_a: &Partition, ker_b: &Partition) -> Result<ExactScalar> {
    let basis = &w.gram.basis;
    let left: Vec<usize> = (0..basis.len())
        .filter(|&x| basis[x].refines(ker_a).unwrap_or(false))
        .collect();
    let right: Vec<usize> = (0..basis.len())
        .filter(|&x| basis[x].refines(ker_b).unwrap_or(false))
        .collect();
    let mut acc = ExactScalar::zero();
    for &a in &left {
        for &b in &right {
            acc += w.matrix.get(a, b);
        }
    }
    Ok(acc)
}

/// Signature of a kernel, or `None` when it has odd blocks.
fn kernel_sign(k: &Partition) -> Option<i64> {
    k.signature().ok().map(|s| s as i64)
}

/// Caches Weingarten matrices per word for one group at one `N`.
pub struct HaarIntegrator {
    pub group: GroupId,
    pub n: usize,
    pub allow_pseudo: bool,
    cache: HashMap<ColorWord, Rc<WeingartenData>>,
}

impl HaarIntegrator {
    pub fn new(group: GroupId, n: usize) -> Self {
        HaarIntegrator {
            group,
            n,
            allow_pseudo: false,
            cache: HashMap::new(),
        }
    }

    pub fn with_pseudo(mut self, allow: bool) -> Self {
        self.allow_pseudo = allow;
        self
    }

    pub fn category(&self) -> CategorySpec {
        CategorySpec::Named(self.group.category())
    }

    pub fn weingarten(&mut self, word: &ColorWord) -> Result<Rc<WeingartenData>> {
        if let Some(w) = self.cache.get(word) {
            return Ok(w.clone());
        }
        let g = gram(&self.category(), word, self.n)?;
        let w = Rc::new(weingarten(g, self.allow_pseudo)?);
        self.cache.insert(word.clone(), w.clone());
        Ok(w)
    }

    /// The integral of a monomial whose row and column kernels are given.
    pub fn moment_by_kernels(&mut self, ker_i: &Partition, ker_j: &Partition) -> Result<ExactScalar> {
        let w = self.weingarten(ker_i.lower())?;
        let value = kernel_sum(&w, ker_i, ker_j)?;
        if !self.group.twisted || value.is_zero() {
            return Ok(value);
        }
        match (kernel_sign(ker_i), kernel_sign(ker_j)) {
            (Some(a), Some(b)) => Ok(value * integer(a * b)),
            _ => Ok(ExactScalar::zero()),
        }
    }

    pub fn moment(&mut self, m: &MonomialSpec) -> Result<ExactScalar> {
        m.check_range(self.n, self.n)?;
        let word = m.word();
        let ker_i = kernel(&m.rows(), &word)?;
        let ker_j = kernel(&m.cols(), &word)?;
        self.moment_by_kernels(&ker_i, &ker_j)
    }

    /// `Tr(W_{kN} G_{ks})`.
    pub fn truncated_char_moment(&mut self, s: usize, word: &ColorWord) -> Result<ExactScalar> {
        if s > self.n {
            return Err(Error::InvalidArgument(format!("s = {s} exceeds N = {}", self.n)));
        }
        let w = self.weingarten(word)?;
        let gs = w.gram.at(s)?;
        let d = w.gram.dim();
        let mut acc = ExactScalar::zero();
        for a in 0..d {
            for b in 0..d {
                acc += w.matrix.get(a, b) * gs.get(b, a);
            }
        }
        Ok(acc)
    }

    /// `Σ_{i ∈ [s]^k} ∫ u_{i_1 i_1} … u_{i_k i_k}`, grouped by the kernel of `i`.
    /// Uses the (possibly twisted) coordinate integrals directly.
    pub fn truncated_char_moment_by_kernels(&mut self, s: usize, word: &ColorWord) -> Result<ExactScalar> {
        let mut acc = ExactScalar::zero();
        for tau in enumerate(&ColorWord::empty(), word, &[Predicate::All])? {
            let count = falling_factorial(s, tau.num_blocks());
            if count.is_zero() {
                continue;
            }
            acc += self.moment_by_kernels(&tau, &tau)? * ExactScalar::from_integer(count);
        }
        Ok(acc)
    }
}

/// `s (s−1) … (s−b+1)`.
pub fn falling_factorial(s: usize, b: usize) -> BigInt {
    if b > s {
        return BigInt::zero();
    }
    (0..b).fold(BigInt::one(), |acc, r| acc * BigInt::from(s - r))
}

pub fn haar_moment(group: GroupId, m: &MonomialSpec, n: usize) -> Result<ExactScalar> {
    HaarIntegrator::new(group, n).moment(m)
}

pub fn truncated_char_moment(group: GroupId, n: usize, s: usize, word: &ColorWord) -> Result<ExactScalar> {
    HaarIntegrator::new(group, n).truncated_char_moment(s, word)
}

/// `Σ_{π ∈ D(word)} t^{|π|}`.
pub fn asymptotic_char_moments(cat: &CategorySpec, t: &ExactScalar, word: &ColorWord) -> Result<ExactScalar> {
    let mut acc = ExactScalar::zero();
    for p in cat.set(&ColorWord::empty(), word)? {
        acc += pow(t, p.num_blocks());
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SphereKind {
    Real,
    RealHalf,
    RealFree,
}

impl SphereKind {
    pub fn category(self) -> CategoryId {
        match self {
            SphereKind::Real => CategoryId::P2,
            SphereKind::RealHalf => CategoryId::P2Star,
            SphereKind::RealFree => CategoryId::NC2,
        }
    }
}

impl FromStr for SphereKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "real" => Ok(SphereKind::Real),
            "real_half" | "half" => Ok(SphereKind::RealHalf),
            "real_free" | "free" => Ok(SphereKind::RealFree),
            other => Err(Error::Parse(format!("unknown sphere {other:?}"))),
        }
    }
}

/// `∫ x_{i_1} … x_{i_k} = Σ_π Σ_{σ ≤ ker i} W(π, σ)`.
pub fn sphere_moment(kind: SphereKind, indices: &[usize], n: usize) -> Result<ExactScalar> {
    for &i in indices {
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
    }
    let word = ColorWord::white(indices.len());
    let g = gram(&CategorySpec::Named(kind.category()), &word, n)?;
    let w = weingarten(g, false)?;
    let ker = kernel(indices, &word)?;
    let top = Partition::one_block(ColorWord::empty(), word);
    kernel_sum(&w, &top, &ker)
}

/// Parameters of the space of `M × N` partial isometries of rank `L`, for the
/// easy family attached to `group`. Weingarten matrices at `M` or `N` fall back
/// to generalized inverses when singular (as at `M = 1`); the integrals over
/// `G_M`, `G_N` entering the formula do not depend on that choice.
#[derive(Clone, Copy, Debug)]
pub struct PartialIsometrySpec {
    pub group: GroupId,
    pub m: usize,
    pub n: usize,
    pub l: usize,
}

impl PartialIsometrySpec {
    pub fn new(group: GroupId, m: usize, n: usize, l: usize) -> Result<Self> {
        if l == 0 || l > m.min(n) {
            return Err(Error::InvalidArgument(format!("need 1 ≤ L ≤ min(M, N), got L = {l}")));
        }
        Ok(PartialIsometrySpec { group, m, n, l })
    }

    fn weingartens(&self, word: &ColorWord) -> Result<(WeingartenData, WeingartenData)> {
        let cat = CategorySpec::Named(self.group.category());
        let wm = weingarten(gram(&cat, word, self.m)?, true)?;
        let wn = weingarten(gram(&cat, word, self.n)?, true)?;
        Ok((wm, wn))
    }
}

/// `Σ L^{|π∨τ|} δ_σ(i) δ_ν(j) W_{kM}(π,σ) W_{kN}(τ,ν)`.
pub fn partial_isometry_moment(spec: &PartialIsometrySpec, m: &MonomialSpec) -> Result<ExactScalar> {
    m.check_range(spec.m, spec.n)?;
    let word = m.word();
    let (wm, wn) = spec.weingartens(&word)?;
    let ker_i = kernel(&m.rows(), &word)?;
    let ker_j = kernel(&m.cols(), &word)?;
    let basis = &wm.gram.basis;
    let d = basis.len();
    let fit_i: Vec<bool> = basis.iter().map(|p| p.refines(&ker_i).unwrap_or(false)).collect();
    let fit_j: Vec<bool> = basis.iter().map(|p| p.refines(&ker_j).unwrap_or(false)).collect();
    let a: Vec<ExactScalar> = (0..d)
        .map(|pi| (0..d).filter(|&s| fit_i[s]).map(|s| wm.matrix.get(pi, s).clone()).sum())
        .collect();
    let b: Vec<ExactScalar> = (0..d)
        .map(|tau| (0..d).filter(|&v| fit_j[v]).map(|v| wn.matrix.get(tau, v).clone()).sum())
        .collect();
    let gl = wm.gram.at(spec.l)?;
    let mut acc = ExactScalar::zero();
    for pi in 0..d {
        if a[pi].is_zero() {
            continue;
        }
        for tau in 0..d {
            acc += gl.get(pi, tau) * &a[pi] * &b[tau];
        }
    }
    let sign = if spec.group.twisted {
        match (kernel_sign(&ker_i), kernel_sign(&ker_j)) {
            (Some(x), Some(y)) => x * y,
            _ => 0,
        }
    } else {
        1
    };
    Ok(acc * integer(sign))
}

/// Moment of a sum of `k` non-overlapping coordinates:
/// `Σ K^{|π∨τ|} L^{|σ∨ν|} W_{sM}(π,σ) W_{sN}(τ,ν) = Tr(G_K W_M G_L W_N)`.
pub fn nonoverlapping_sum_moment(spec: &PartialIsometrySpec, k: usize, word: &ColorWord) -> Result<ExactScalar> {
    if k > spec.m.min(spec.n) {
        return Err(Error::InvalidArgument(format!("K = {k} exceeds min(M, N)")));
    }
    let (wm, wn) = spec.weingartens(word)?;
    let gk = wm.gram.at(k)?;
    let gl = wm.gram.at(spec.l)?;
    let prod = gk
        .checked_mul(&wm.matrix)?
        .checked_mul(&gl)?
        .checked_mul(&wn.matrix)?;
    Ok(prod.trace())
}

/// The `K = κN, L = λN, M = μN` limit: `Σ_{π ∈ D(word)} (κλ/μ)^{|π|}`.
pub fn nonoverlapping_sum_limit(
    group: GroupId,
    kappa: &ExactScalar,
    lambda: &ExactScalar,
    mu: &ExactScalar,
    word: &ColorWord,
) -> Result<ExactScalar> {
    if mu.is_zero() {
        return Err(Error::InvalidArgument("μ must be positive".into()));
    }
    asymptotic_char_moments(&CategorySpec::Named(group.category()), &(kappa * lambda / mu), word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::GroupKind;
    use crate::linalg::rational;

    fn g(s: &str) -> GroupId {
        s.parse().unwrap()
    }

    fn mono(s: &str) -> MonomialSpec {
        s.parse().unwrap()
    }

    #[test]
    fn gram_examples() {
        let p2 = CategorySpec::Named(CategoryId::P2);
        assert_eq!(gram(&p2, &ColorWord::white(2), 5).unwrap().matrix, ExactMatrix::identity(1).scale(&integer(5)));
        let all = CategorySpec::Named(CategoryId::P);
        let n = 4;
        let gm = gram(&all, &ColorWord::white(2), n).unwrap();
        let expected = ExactMatrix::from_rows(vec![vec![integer(4), integer(4)], vec![integer(4), integer(16)]]).unwrap();
        assert_eq!(gm.matrix, expected);
        let nc2 = CategorySpec::Named(CategoryId::NC2);
        let gm = gram(&nc2, &ColorWord::white(4), 3).unwrap();
        assert_eq!(gm.matrix.get(0, 0), &integer(9));
        assert_eq!(gm.matrix.get(0, 1), &integer(3));
    }

    #[test]
    fn weingarten_examples() {
        let all = CategorySpec::Named(CategoryId::P);
        for n in 2..6i64 {
            let w = weingarten(gram(&all, &ColorWord::white(2), n as usize).unwrap(), false).unwrap();
            let c = rational(1, n * n * (n - 1));
            let expected = ExactMatrix::from_rows(vec![
                vec![integer(n * n) * &c, integer(-n) * &c],
                vec![integer(-n) * &c, integer(n) * &c],
            ])
            .unwrap();
            assert_eq!(w.matrix, expected);
        }
        let err = weingarten(gram(&all, &ColorWord::white(3), 2).unwrap(), false).unwrap_err();
        assert!(matches!(err, Error::GramSingular { dim: 5, .. }));
        let pseudo = weingarten(gram(&all, &ColorWord::white(3), 2).unwrap(), true).unwrap();
        let gm = &pseudo.gram.matrix;
        let w = &pseudo.matrix;
        assert_eq!(&(&(gm * w) * gm), gm);
        assert_eq!(&(&(w * gm) * w), w);
    }

    #[test]
    fn monomial_grammar() {
        let m = mono("u[1,1] u*[2,3]");
        assert_eq!(m.degree(), 2);
        assert_eq!(m.word().to_string(), "ob");
        assert_eq!(m.to_string(), "u[1,1] u*[2,3]");
        assert_eq!(mono("u[1,2]*ubar[3,4]").to_string(), "u[1,2] u*[3,4]");
        assert!("u[0,1]".parse::<MonomialSpec>().is_err());
        assert!("v[1,1]".parse::<MonomialSpec>().is_err());
        assert_eq!(mono("").degree(), 0);
    }

    #[test]
    fn haar_examples() {
        assert_eq!(haar_moment(g("S"), &mono("u[1,1]"), 3).unwrap(), rational(1, 3));
        assert_eq!(haar_moment(g("S"), &mono("u[1,1] u[2,2]"), 4).unwrap(), rational(1, 12));
        assert_eq!(haar_moment(g("S"), &mono("u[1,1] u[1,2]"), 4).unwrap(), rational(0, 1));
        assert_eq!(haar_moment(g("O"), &mono("u[1,1] u[1,1]"), 7).unwrap(), rational(1, 7));
        assert_eq!(haar_moment(g("U"), &mono("u[1,1] u*[1,1]"), 5).unwrap(), rational(1, 5));
        assert_eq!(haar_moment(g("U"), &mono("u[1,1] u[1,1]"), 5).unwrap(), rational(0, 1));
        assert_eq!(haar_moment(g("O"), &mono(""), 3).unwrap(), rational(1, 1));
        // ∫_{O_N} u_11^4 = 3/(N(N+2))
        assert_eq!(haar_moment(g("O"), &mono("u[1,1] u[1,1] u[1,1] u[1,1]"), 4).unwrap(), rational(3, 24));
        assert!(matches!(
            haar_moment(g("O"), &mono("u[5,1]"), 4),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn twisting_flips_crossing_signs() {
        // ∫ u11 u22 u12 u21 picks up the sign of the crossing kernel pair.
        let m = mono("u[1,1] u[2,2] u[1,2] u[2,1]");
        let plain = haar_moment(g("O"), &m, 3).unwrap();
        let twisted = haar_moment(g("Obar"), &m, 3).unwrap();
        assert_eq!(plain, -twisted.clone());
        assert!(!plain.is_zero());
        let diag = mono("u[1,1] u[1,1] u[2,2] u[2,2]");
        assert_eq!(haar_moment(g("H"), &diag, 3).unwrap(), haar_moment(g("Hbar"), &diag, 3).unwrap());
    }

    #[test]
    fn character_examples() {
        assert_eq!(truncated_char_moment(g("S"), 4, 4, &ColorWord::white(1)).unwrap(), integer(1));
        for (k, c) in [(2, 1), (4, 2), (6, 5)] {
            assert_eq!(truncated_char_moment(g("O+"), 4, 4, &ColorWord::white(k)).unwrap(), integer(c));
        }
        assert_eq!(truncated_char_moment(g("U"), 3, 2, &ColorWord::empty()).unwrap(), integer(1));
        let one = integer(1);
        let nc = CategorySpec::Named(CategoryId::NC);
        assert_eq!(asymptotic_char_moments(&nc, &one, &ColorWord::white(3)).unwrap(), integer(5));
        let p2 = CategorySpec::Named(CategoryId::P2);
        assert_eq!(asymptotic_char_moments(&p2, &one, &ColorWord::white(4)).unwrap(), integer(3));
        assert_eq!(asymptotic_char_moments(&p2, &one, &ColorWord::empty()).unwrap(), integer(1));
    }

    #[test]
    fn character_paths_agree() {
        for grp in ["H", "Hbar", "O", "S"] {
            let mut h = HaarIntegrator::new(g(grp), 4);
            for k in 0..=4 {
                let w = ColorWord::white(k);
                assert_eq!(
                    h.truncated_char_moment(3, &w).unwrap(),
                    h.truncated_char_moment_by_kernels(3, &w).unwrap(),
                    "{grp} k={k}"
                );
            }
        }
    }

    #[test]
    fn sphere_examples() {
        for kind in [SphereKind::Real, SphereKind::RealHalf, SphereKind::RealFree] {
            assert_eq!(sphere_moment(kind, &[1, 1], 5).unwrap(), rational(1, 5));
        }
        assert_eq!(sphere_moment(SphereKind::Real, &[1, 1, 1, 1], 5).unwrap(), rational(3, 35));
        assert_eq!(sphere_moment(SphereKind::Real, &[1, 2], 5).unwrap(), rational(0, 1));
        assert_eq!(sphere_moment(SphereKind::RealFree, &[1, 1, 1, 1], 4).unwrap(), rational(1, 10));
    }

    #[test]
    fn partial_isometry_examples() {
        let o = GroupId::new(GroupKind::O);
        let m = mono("u[1,1] u[1,1] u[2,1] u[2,1]");
        let full = PartialIsometrySpec::new(o, 3, 3, 3).unwrap();
        assert_eq!(partial_isometry_moment(&full, &m).unwrap(), haar_moment(o, &m, 3).unwrap());
        let sphere = PartialIsometrySpec::new(o, 1, 4, 1).unwrap();
        assert_eq!(
            partial_isometry_moment(&sphere, &mono("u[1,1] u[1,1] u[1,2] u[1,2]")).unwrap(),
            sphere_moment(SphereKind::Real, &[1, 1, 2, 2], 4).unwrap()
        );
        assert_eq!(partial_isometry_moment(&full, &mono("")).unwrap(), integer(1));
        assert!(PartialIsometrySpec::new(o, 3, 3, 4).is_err());
    }

    #[test]
    fn nonoverlapping_examples() {
        let o = GroupId::new(GroupKind::O);
        let spec = PartialIsometrySpec::new(o, 10, 10, 5).unwrap();
        assert_eq!(nonoverlapping_sum_moment(&spec, 5, &ColorWord::empty()).unwrap(), integer(1));
        assert_eq!(nonoverlapping_sum_moment(&spec, 5, &ColorWord::white(1)).unwrap(), integer(0));
        assert_eq!(nonoverlapping_sum_moment(&spec, 5, &ColorWord::white(2)).unwrap(), rational(1, 4));
        let half = rational(1, 2);
        assert_eq!(
            nonoverlapping_sum_limit(o, &half, &half, &integer(1), &ColorWord::white(2)).unwrap(),
            rational(1, 4)
        );
    }
}
