//! Colored two-row set partitions.
//!
//! A partition in `P(k,l)` has `k` upper legs and `l` lower legs, each carrying a
//! [`Color`]. Legs are indexed `0..k` for the upper row (left to right) followed by
//! `k..k+l` for the lower row (left to right). Blocks are stored as a restricted
//! growth string over that leg order, which makes the representation canonical:
//! block `b` is the `b`-th block met when scanning the legs in order.
//!
//! Crossing statistics (noncrossing test, signature, half-classical parity) use the
//! clockwise order instead: upper legs left to right, then lower legs right to left.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::union_find::UnionFind;
use crate::ExactScalar;

/// Default bound on the total number of legs accepted by [`enumerate`].
pub const DEFAULT_LEG_BOUND: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    /// Exponent 1, written `o`.
    White,
    /// Exponent `*`, written `b`.
    Black,
}

impl Color {
    pub fn inverse(self) -> Self {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Color::White => 'o',
            Color::Black => 'b',
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorWord(Vec<Color>);

impl ColorWord {
    pub fn new(colors: Vec<Color>) -> Self {
        ColorWord(colors)
    }

    pub fn empty() -> Self {
        ColorWord(Vec::new())
    }

    /// The uncolored word of length `n`.
    pub fn white(n: usize) -> Self {
        ColorWord(vec![Color::White; n])
    }

    /// Alternating word `o b o b ...` of length `n`.
    pub fn alternating(n: usize) -> Self {
        ColorWord(
            (0..n)
                .map(|i| if i % 2 == 0 { Color::White } else { Color::Black })
                .collect(),
        )
    }

    /// All `2^n` words of length `n`, in lexicographic order (white first).
    pub fn all_of_length(n: usize) -> Vec<ColorWord> {
        (0..1usize << n)
            .map(|mask| {
                ColorWord(
                    (0..n)
                        .map(|i| {
                            if mask >> (n - 1 - i) & 1 == 1 {
                                Color::Black
                            } else {
                                Color::White
                            }
                        })
                        .collect(),
                )
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn colors(&self) -> &[Color] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Color {
        self.0[i]
    }

    pub fn reversed(&self) -> Self {
        ColorWord(self.0.iter().rev().copied().collect())
    }

    pub fn inverted(&self) -> Self {
        ColorWord(self.0.iter().map(|c| c.inverse()).collect())
    }

    pub fn concat(&self, other: &ColorWord) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        ColorWord(v)
    }

    pub fn is_uncolored(&self) -> bool {
        self.0.iter().all(|&c| c == Color::White)
    }

    pub fn count(&self, color: Color) -> usize {
        self.0.iter().filter(|&&c| c == color).count()
    }
}

impl fmt::Display for ColorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        for c in &self.0 {
            write!(f, "{}", c.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for ColorWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-" || s.is_empty() {
            return Ok(ColorWord::empty());
        }
        s.chars()
            .map(|ch| match ch {
                'o' => Ok(Color::White),
                'b' => Ok(Color::Black),
                other => Err(Error::Parse(format!("unknown color symbol {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(ColorWord)
    }
}

impl From<Vec<Color>> for ColorWord {
    fn from(v: Vec<Color>) -> Self {
        ColorWord(v)
    }
}

/// A colored partition of `k` upper and `l` lower legs.
///
/// The derived ordering (upper word, lower word, then restricted growth string) is
/// the canonical order used for every basis in the crate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    upper: ColorWord,
    lower: ColorWord,
    labels: Vec<u8>,
}

/// Relabels an arbitrary block labelling into a restricted growth string.
fn canonical_labels<T: Eq + std::hash::Hash + Copy>(raw: &[T]) -> Vec<u8> {
    let mut seen: HashMap<T, u8> = HashMap::new();
    raw.iter()
        .map(|x| {
            let next = seen.len() as u8;
            *seen.entry(*x).or_insert(next)
        })
        .collect()
}

impl Partition {
    /// Builds a partition from any labelling of the legs; legs with equal labels share
    /// a block.
    pub fn from_labels<T>(upper: ColorWord, lower: ColorWord, labels: &[T]) -> Result<Self>
    where
        T: Eq + std::hash::Hash + Copy,
    {
        let n = upper.len() + lower.len();
        if labels.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: labels.len(),
            });
        }
        if n > u8::MAX as usize {
            return Err(Error::LegBoundExceeded {
                legs: n,
                bound: u8::MAX as usize,
            });
        }
        Ok(Partition {
            upper,
            lower,
            labels: canonical_labels(labels),
        })
    }

    /// Builds a partition from explicit blocks of leg indices.
    pub fn from_blocks(upper: ColorWord, lower: ColorWord, blocks: &[Vec<usize>]) -> Result<Self> {
        let n = upper.len() + lower.len();
        let mut labels = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidArgument("empty block".into()));
            }
            for &leg in block {
                if leg >= n {
                    return Err(Error::IndexOutOfRange { index: leg, n });
                }
                if labels[leg] != usize::MAX {
                    return Err(Error::InvalidArgument(format!("leg {leg} used twice")));
                }
                labels[leg] = b;
            }
        }
        if labels.contains(&usize::MAX) {
            return Err(Error::InvalidArgument("blocks do not cover every leg".into()));
        }
        Self::from_labels(upper, lower, &labels)
    }

    /// A partition with an empty upper row.
    pub fn one_line<T>(lower: ColorWord, labels: &[T]) -> Result<Self>
    where
        T: Eq + std::hash::Hash + Copy,
    {
        Self::from_labels(ColorWord::empty(), lower, labels)
    }

    pub fn empty() -> Self {
        Partition {
            upper: ColorWord::empty(),
            lower: ColorWord::empty(),
            labels: Vec::new(),
        }
    }

    /// `|...|` on the given word.
    pub fn identity(word: &ColorWord) -> Self {
        let k = word.len();
        let labels: Vec<usize> = (0..k).chain(0..k).collect();
        Self::from_labels(word.clone(), word.clone(), &labels).expect("identity is well formed")
    }

    /// The semicircle in `P(0,2)` with the given lower colors.
    pub fn cap(a: Color, b: Color) -> Self {
        Self::one_line(ColorWord::new(vec![a, b]), &[0, 0]).expect("cap is well formed")
    }

    /// All legs in one block.
    pub fn one_block(upper: ColorWord, lower: ColorWord) -> Self {
        let n = upper.len() + lower.len();
        Self::from_labels(upper, lower, &vec![0u8; n]).expect("one block is well formed")
    }

    /// Every leg its own block.
    pub fn singletons(upper: ColorWord, lower: ColorWord) -> Self {
        let n = upper.len() + lower.len();
        let labels: Vec<usize> = (0..n).collect();
        Self::from_labels(upper, lower, &labels).expect("singletons are well formed")
    }

    pub fn upper(&self) -> &ColorWord {
        &self.upper
    }

    pub fn lower(&self) -> &ColorWord {
        &self.lower
    }

    pub fn upper_len(&self) -> usize {
        self.upper.len()
    }

    pub fn lower_len(&self) -> usize {
        self.lower.len()
    }

    pub fn num_legs(&self) -> usize {
        self.labels.len()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.upper.len(), self.lower.len())
    }

    pub fn is_one_line(&self) -> bool {
        self.upper.is_empty()
    }

    /// Restricted growth string over the leg order.
    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn leg_color(&self, leg: usize) -> Color {
        let k = self.upper.len();
        if leg < k {
            self.upper.get(leg)
        } else {
            self.lower.get(leg - k)
        }
    }

    pub fn num_blocks(&self) -> usize {
        self.labels.iter().map(|&b| b as usize + 1).max().unwrap_or(0)
    }

    /// Blocks as sorted lists of leg indices, in canonical block order.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (leg, &b) in self.labels.iter().enumerate() {
            out[b as usize].push(leg);
        }
        out
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.num_blocks()];
        for &b in &self.labels {
            sizes[b as usize] += 1;
        }
        sizes
    }

    /// Leg indices listed clockwise: upper left to right, then lower right to left.
    pub fn clockwise_legs(&self) -> Vec<usize> {
        let k = self.upper.len();
        let n = self.labels.len();
        (0..k).chain((k..n).rev()).collect()
    }

    /// Block labels read in clockwise order.
    pub fn clockwise_labels(&self) -> Vec<u8> {
        self.clockwise_legs()
            .into_iter()
            .map(|leg| self.labels[leg])
            .collect()
    }

    /// Leg colors read clockwise, with the upper row inverted. After this
    /// flattening a vertical string between equal colors, or a horizontal string
    /// between opposite colors, joins one white and one black leg.
    pub fn clockwise_colors(&self) -> Vec<Color> {
        let k = self.upper.len();
        self.clockwise_legs()
            .into_iter()
            .map(|leg| {
                let c = self.leg_color(leg);
                if leg < k {
                    c.inverse()
                } else {
                    c
                }
            })
            .collect()
    }

    fn check_same_shape(&self, other: &Partition) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::LegCountMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(())
    }

    /// The finest partition coarser than both `self` and `other`.
    pub fn join(&self, other: &Partition) -> Result<Partition> {
        self.check_same_shape(other)?;
        let n = self.num_legs();
        // nodes: legs, then the blocks of self, then the blocks of other
        let off_a = n;
        let off_b = n + self.num_blocks();
        let mut uf = UnionFind::new(off_b + other.num_blocks());
        for leg in 0..n {
            uf.union(leg, off_a + self.labels[leg] as usize);
            uf.union(leg, off_b + other.labels[leg] as usize);
        }
        let roots: Vec<usize> = (0..n).map(|leg| uf.find(leg)).collect();
        Partition::from_labels(self.upper.clone(), self.lower.clone(), &roots)
    }

    /// Number of blocks of `self ∨ other`.
    pub fn join_blocks(&self, other: &Partition) -> Result<usize> {
        Ok(self.join(other)?.num_blocks())
    }

    /// `self ≤ other` in the refinement order: every block of `self` lies inside a
    /// block of `other`.
    pub fn refines(&self, other: &Partition) -> Result<bool> {
        self.check_same_shape(other)?;
        let mut image: Vec<Option<u8>> = vec![None; self.num_blocks()];
        for (a, b) in self.labels.iter().zip(&other.labels) {
            match image[*a as usize] {
                None => image[*a as usize] = Some(*b),
                Some(prev) if prev != *b => return Ok(false),
                _ => {}
            }
        }
        Ok(true)
    }

    pub fn is_pairing(&self) -> bool {
        self.block_sizes().iter().all(|&s| s == 2)
    }

    pub fn has_even_blocks(&self) -> bool {
        self.block_sizes().iter().all(|&s| s % 2 == 0)
    }

    /// Number of interleaving quadruples `a<b<c<d` (clockwise) with `a,c` in one
    /// block and `b,d` in another, summed over unordered pairs of distinct blocks.
    pub fn interleavings(&self) -> u64 {
        let seq = self.clockwise_labels();
        let nb = self.num_blocks();
        let mut total = 0u64;
        for x in 0..nb as u8 {
            for y in 0..nb as u8 {
                if x == y {
                    continue;
                }
                // counts of the prefixes "", x, xy, xyx, xyxy as subsequences
                let mut c = [1u64, 0, 0, 0, 0];
                for &v in &seq {
                    if v == y {
                        c[4] += c[3];
                        c[2] += c[1];
                    } else if v == x {
                        c[3] += c[2];
                        c[1] += c[0];
                    }
                }
                total += c[4];
            }
        }
        total
    }

    pub fn is_noncrossing(&self) -> bool {
        let seq = self.clockwise_labels();
        // crossing iff two consecutive-occurrence intervals of distinct blocks
        // interleave
        let mut last: Vec<Option<usize>> = vec![None; self.num_blocks()];
        let mut intervals: Vec<(usize, usize, u8)> = Vec::new();
        for (pos, &b) in seq.iter().enumerate() {
            if let Some(p) = last[b as usize] {
                intervals.push((p, pos, b));
            }
            last[b as usize] = Some(pos);
        }
        for &(a, c, x) in &intervals {
            for &(b, d, y) in &intervals {
                if x != y && a < b && b < c && c < d {
                    return false;
                }
            }
        }
        true
    }

    /// Number of crossing pairs of strings for a pairing (clockwise order).
    pub fn crossings(&self) -> usize {
        let blocks: Vec<Vec<usize>> = {
            let seq = self.clockwise_labels();
            let mut b = vec![Vec::new(); self.num_blocks()];
            for (pos, &x) in seq.iter().enumerate() {
                b[x as usize].push(pos);
            }
            b
        };
        let mut count = 0;
        for i in 0..blocks.len() {
            for j in i + 1..blocks.len() {
                if blocks[i].len() == 2 && blocks[j].len() == 2 {
                    let (a, c) = (blocks[i][0], blocks[i][1]);
                    let (b, d) = (blocks[j][0], blocks[j][1]);
                    if (a < b && b < c && c < d) || (b < a && a < d && d < c) {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    /// The signature `ε ∈ {±1}` of a partition with even blocks.
    pub fn signature(&self) -> Result<i8> {
        if !self.has_even_blocks() {
            return Err(Error::OddBlock);
        }
        Ok(if self.interleavings().is_multiple_of(2) { 1 } else { -1 })
    }

    /// Every non-singleton block joins as many white as black legs after the
    /// clockwise flattening of [`Partition::clockwise_colors`].
    pub fn is_matching(&self) -> bool {
        self.block_color_excess()
            .iter()
            .zip(self.block_sizes())
            .all(|(&e, size)| size == 1 || e == 0)
    }

    /// `#white − #black` per block, after clockwise flattening.
    pub fn block_color_excess(&self) -> Vec<i64> {
        let seq = self.clockwise_labels();
        let colors = self.clockwise_colors();
        let mut excess = vec![0i64; self.num_blocks()];
        for (b, c) in seq.iter().zip(colors) {
            excess[*b as usize] += if c == Color::White { 1 } else { -1 };
        }
        excess
    }

    /// Every block has as many legs at odd clockwise positions as at even ones.
    pub fn is_half_classical(&self) -> bool {
        let seq = self.clockwise_labels();
        let mut balance = vec![0i64; self.num_blocks()];
        for (pos, b) in seq.iter().enumerate() {
            balance[*b as usize] += if pos % 2 == 0 { 1 } else { -1 };
        }
        balance.iter().all(|&x| x == 0)
    }

    /// Every block has `#white − #black ≡ 0 (mod s)`; `s = 0` demands equality.
    pub fn is_color_balanced_mod(&self, s: u32) -> bool {
        self.block_color_excess().iter().all(|&e| {
            if s == 0 {
                e == 0
            } else {
                e.rem_euclid(s as i64) == 0
            }
        })
    }

    /// Replaces every color by white.
    pub fn uncolored(&self) -> Partition {
        Partition {
            upper: ColorWord::white(self.upper.len()),
            lower: ColorWord::white(self.lower.len()),
            labels: self.labels.clone(),
        }
    }

    /// Same blocks, new colors.
    pub fn recolored(&self, upper: ColorWord, lower: ColorWord) -> Result<Partition> {
        if upper.len() != self.upper.len() || lower.len() != self.lower.len() {
            return Err(Error::LegCountMismatch {
                left: self.shape(),
                right: (upper.len(), lower.len()),
            });
        }
        Ok(Partition {
            upper,
            lower,
            labels: self.labels.clone(),
        })
    }

    /// Whether the index assignment (upper indices, lower indices) is constant on
    /// every block.
    pub fn fits(&self, upper_idx: &[usize], lower_idx: &[usize]) -> bool {
        let k = self.upper.len();
        let mut value: Vec<Option<usize>> = vec![None; self.num_blocks()];
        for (leg, &b) in self.labels.iter().enumerate() {
            let idx = if leg < k {
                upper_idx[leg]
            } else {
                lower_idx[leg - k]
            };
            match value[b as usize] {
                None => value[b as usize] = Some(idx),
                Some(v) if v != idx => return false,
                _ => {}
            }
        }
        true
    }

    fn leg_name(&self, leg: usize) -> String {
        let k = self.upper.len();
        if leg < k {
            format!("u{}", leg + 1)
        } else {
            format!("d{}", leg - k + 1)
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.upper, self.lower)?;
        let blocks = self.blocks();
        if !blocks.is_empty() {
            f.write_str(" ")?;
        }
        for block in blocks {
            let legs: Vec<String> = block.iter().map(|&l| self.leg_name(l)).collect();
            write!(f, "{{{}}}", legs.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (words, rest) = match s.find(char::is_whitespace) {
            Some(pos) => (&s[..pos], s[pos..].trim()),
            None => (s, ""),
        };
        let (up, down) = words
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("missing '|' in {words:?}")))?;
        let upper: ColorWord = up.parse()?;
        let lower: ColorWord = down.parse()?;
        let k = upper.len();
        let l = lower.len();

        let mut blocks = Vec::new();
        let mut chars = rest.chars().filter(|c| !c.is_whitespace()).peekable();
        while let Some(c) = chars.next() {
            if c != '{' {
                return Err(Error::Parse(format!("expected '{{', found {c:?}")));
            }
            let mut body = String::new();
            loop {
                match chars.next() {
                    Some('}') => break,
                    Some(ch) => body.push(ch),
                    None => return Err(Error::Parse("unterminated block".into())),
                }
            }
            let mut block = Vec::new();
            for leg in body.split(',').filter(|t| !t.is_empty()) {
                let (row, num) = leg.split_at(1);
                let idx: usize = num
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad leg {leg:?}")))?;
                let leg_index = match row {
                    "u" if idx >= 1 && idx <= k => idx - 1,
                    "d" if idx >= 1 && idx <= l => k + idx - 1,
                    _ => return Err(Error::Parse(format!("leg {leg:?} out of range"))),
                };
                block.push(leg_index);
            }
            blocks.push(block);
        }
        Partition::from_blocks(upper, lower, &blocks).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// The one-line partition of legs sharing equal indices.
pub fn kernel(indices: &[usize], colors: &ColorWord) -> Result<Partition> {
    if indices.len() != colors.len() {
        return Err(Error::LengthMismatch {
            expected: colors.len(),
            found: indices.len(),
        });
    }
    Partition::one_line(colors.clone(), indices)
}

/// Kernel of a two-row index assignment.
pub fn kernel_two_row(
    upper_idx: &[usize],
    lower_idx: &[usize],
    upper: &ColorWord,
    lower: &ColorWord,
) -> Result<Partition> {
    if upper_idx.len() != upper.len() {
        return Err(Error::LengthMismatch {
            expected: upper.len(),
            found: upper_idx.len(),
        });
    }
    if lower_idx.len() != lower.len() {
        return Err(Error::LengthMismatch {
            expected: lower.len(),
            found: lower_idx.len(),
        });
    }
    let all: Vec<usize> = upper_idx.iter().chain(lower_idx).copied().collect();
    Partition::from_labels(upper.clone(), lower.clone(), &all)
}

pub fn num_blocks(p: &Partition) -> usize {
    p.num_blocks()
}

/// Memo table for the Möbius function of the refinement order.
#[derive(Default)]
pub struct MobiusTable {
    memo: HashMap<(Partition, Partition), BigInt>,
}

impl MobiusTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// `μ(s, p)`; zero when `s ≰ p`.
    pub fn mobius(&mut self, s: &Partition, p: &Partition) -> Result<BigInt> {
        if !s.refines(p)? {
            return Ok(BigInt::zero());
        }
        Ok(self.mobius_le(s, p))
    }

    fn mobius_le(&mut self, s: &Partition, p: &Partition) -> BigInt {
        if s == p {
            return BigInt::one();
        }
        let key = (s.clone(), p.clone());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let mut acc = BigInt::zero();
        for t in interval(s, p) {
            if &t != p {
                acc += self.mobius_le(s, &t);
            }
        }
        let value = -acc;
        self.memo.insert(key, value.clone());
        value
    }
}

/// `μ(s, p)` in the partition lattice, by the defining recursion.
pub fn mobius(s: &Partition, p: &Partition) -> Result<ExactScalar> {
    let mut table = MobiusTable::new();
    Ok(ExactScalar::from_integer(table.mobius(s, p)?))
}

/// All partitions `t` with `s ≤ t ≤ p`, assuming `s ≤ p`. Each `t` is obtained by
/// merging blocks of `s` that lie in a common block of `p`.
pub fn interval(s: &Partition, p: &Partition) -> Vec<Partition> {
    let m = s.num_blocks();
    let s_blocks = s.blocks();
    let host: Vec<u8> = s_blocks.iter().map(|b| p.labels[b[0]]).collect();
    let mut out = Vec::new();
    let mut rgs = vec![0usize; m];
    let mut host_of_group: Vec<u8> = Vec::new();
    fn rec(
        i: usize,
        rgs: &mut Vec<usize>,
        host_of_group: &mut Vec<u8>,
        host: &[u8],
        s: &Partition,
        out: &mut Vec<Partition>,
    ) {
        if i == rgs.len() {
            let labels: Vec<usize> = s.labels.iter().map(|&b| rgs[b as usize]).collect();
            out.push(
                Partition::from_labels(s.upper.clone(), s.lower.clone(), &labels)
                    .expect("relabelling keeps the shape"),
            );
            return;
        }
        for g in 0..host_of_group.len() {
            if host_of_group[g] == host[i] {
                rgs[i] = g;
                rec(i + 1, rgs, host_of_group, host, s, out);
            }
        }
        rgs[i] = host_of_group.len();
        host_of_group.push(host[i]);
        rec(i + 1, rgs, host_of_group, host, s, out);
        host_of_group.pop();
    }
    if m == 0 {
        return vec![s.clone()];
    }
    rec(0, &mut rgs, &mut host_of_group, &host, s, &mut out);
    out.sort();
    out
}

/// Named predicates available to [`enumerate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Predicate {
    All,
    Pairing,
    Noncrossing,
    EvenBlocks,
    SingletonsAndPairings,
    Matching,
    HalfClassical,
    /// `#white − #black ≡ 0 (mod s)` on every block, `s = 0` meaning equality.
    ColorBalancedMod(u32),
}

impl Predicate {
    pub fn matches(self, p: &Partition) -> bool {
        match self {
            Predicate::All => true,
            Predicate::Pairing => p.is_pairing(),
            Predicate::Noncrossing => p.is_noncrossing(),
            Predicate::EvenBlocks => p.has_even_blocks(),
            Predicate::SingletonsAndPairings => p.block_sizes().iter().all(|&s| s <= 2),
            Predicate::Matching => p.is_matching(),
            Predicate::HalfClassical => p.is_half_classical(),
            Predicate::ColorBalancedMod(s) => p.is_color_balanced_mod(s),
        }
    }

    fn max_block_size(self) -> Option<usize> {
        match self {
            Predicate::Pairing | Predicate::SingletonsAndPairings => Some(2),
            _ => None,
        }
    }

    fn min_block_size(self) -> usize {
        match self {
            Predicate::Pairing | Predicate::EvenBlocks => 2,
            _ => 1,
        }
    }
}

impl FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Predicate::All,
            "pairing" => Predicate::Pairing,
            "noncrossing" => Predicate::Noncrossing,
            "even-blocks" => Predicate::EvenBlocks,
            "singletons-and-pairings" => Predicate::SingletonsAndPairings,
            "matching" => Predicate::Matching,
            "half-classical" => Predicate::HalfClassical,
            other => return Err(Error::Parse(format!("unknown predicate {other:?}"))),
        })
    }
}

/// All partitions of the given legs satisfying every predicate, in canonical order.
pub fn enumerate(
    upper: &ColorWord,
    lower: &ColorWord,
    predicates: &[Predicate],
) -> Result<Vec<Partition>> {
    enumerate_bounded(upper, lower, predicates, DEFAULT_LEG_BOUND)
}

pub fn enumerate_bounded(
    upper: &ColorWord,
    lower: &ColorWord,
    predicates: &[Predicate],
    bound: usize,
) -> Result<Vec<Partition>> {
    let n = upper.len() + lower.len();
    if n > bound {
        return Err(Error::LegBoundExceeded { legs: n, bound });
    }
    let max_size = predicates
        .iter()
        .filter_map(|p| p.max_block_size())
        .min()
        .unwrap_or(usize::MAX);
    let min_size = predicates
        .iter()
        .map(|p| p.min_block_size())
        .max()
        .unwrap_or(1);
    let mut out = Vec::new();
    let mut labels = vec![0u8; n];
    let mut sizes: Vec<usize> = Vec::new();
    let mut emit = |labels: &[u8]| {
        let p = Partition {
            upper: upper.clone(),
            lower: lower.clone(),
            labels: labels.to_vec(),
        };
        if predicates.iter().all(|pred| pred.matches(&p)) {
            out.push(p);
        }
    };
    rgs_rec(0, n, &mut labels, &mut sizes, max_size, min_size, &mut emit);
    Ok(out)
}

fn rgs_rec(
    i: usize,
    n: usize,
    labels: &mut Vec<u8>,
    sizes: &mut Vec<usize>,
    max_size: usize,
    min_size: usize,
    emit: &mut dyn FnMut(&[u8]),
) {
    // blocks still below the minimum size need at least this many more legs
    let deficit: usize = sizes.iter().map(|&s| min_size.saturating_sub(s)).sum();
    if deficit > n - i {
        return;
    }
    if i == n {
        emit(labels);
        return;
    }
    for b in 0..sizes.len() {
        if sizes[b] < max_size {
            labels[i] = b as u8;
            sizes[b] += 1;
            rgs_rec(i + 1, n, labels, sizes, max_size, min_size, emit);
            sizes[b] -= 1;
        }
    }
    labels[i] = sizes.len() as u8;
    sizes.push(1);
    rgs_rec(i + 1, n, labels, sizes, max_size, min_size, emit);
    sizes.pop();
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn bell(n: usize) -> usize {
        // Bell triangle
        let mut row = vec![1usize];
        for _ in 0..n {
            let mut next = vec![*row.last().unwrap()];
            for x in &row {
                let v = next.last().unwrap() + x;
                next.push(v);
            }
            row = next;
        }
        row[0]
    }

    fn catalan(n: usize) -> usize {
        let mut c = 1usize;
        for i in 0..n {
            c = c * 2 * (2 * i + 1) / (i + 2);
        }
        c
    }

    #[test]
    fn kernel_examples() {
        let w = ColorWord::white(3);
        assert_eq!(kernel(&[1, 1, 2], &w).unwrap(), p("-|ooo {d1,d2}{d3}"));
        assert_eq!(kernel(&[5, 5, 5], &w).unwrap().num_blocks(), 1);
        assert_eq!(
            kernel(&[1, 2, 1, 2], &ColorWord::white(4)).unwrap(),
            p("-|oooo {d1,d3}{d2,d4}")
        );
        assert!(matches!(
            kernel(&[1, 2], &w),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn block_counts() {
        assert_eq!(p("-|ooo {d1,d2}{d3}").num_blocks(), 2);
        assert_eq!(Partition::one_block(ColorWord::empty(), ColorWord::white(4)).num_blocks(), 1);
        assert_eq!(Partition::singletons(ColorWord::empty(), ColorWord::white(5)).num_blocks(), 5);
        assert_eq!(Partition::empty().num_blocks(), 0);
    }

    #[test]
    fn join_examples() {
        assert_eq!(p("-|oo {d1}{d2}").join(&p("-|oo {d1,d2}")).unwrap(), p("-|oo {d1,d2}"));
        assert_eq!(
            p("-|oooo {d1,d2}{d3,d4}")
                .join(&p("-|oooo {d2,d3}{d1}{d4}"))
                .unwrap(),
            p("-|oooo {d1,d2,d3,d4}")
        );
        let q = p("-|oooo {d1,d3}{d2}{d4}");
        assert_eq!(q.join(&q).unwrap(), q);
        assert!(q.join(&p("-|ooo {d1,d2,d3}")).is_err());
        assert_eq!(Partition::empty().join(&Partition::empty()).unwrap().num_blocks(), 0);
    }

    #[test]
    fn refinement_examples() {
        let w = ColorWord::white(3);
        let s = Partition::singletons(ColorWord::empty(), w.clone());
        for q in enumerate(&ColorWord::empty(), &w, &[Predicate::All]).unwrap() {
            assert!(s.refines(&q).unwrap());
        }
        let two = ColorWord::white(2);
        assert!(!Partition::one_block(ColorWord::empty(), two.clone())
            .refines(&Partition::singletons(ColorWord::empty(), two))
            .unwrap());
        assert!(p("-|ooo {d1,d2}{d3}").refines(&p("-|ooo {d1,d2,d3}")).unwrap());
    }

    #[test]
    fn signature_examples() {
        assert_eq!(p("-|oooo {d1,d3}{d2,d4}").signature().unwrap(), -1);
        assert_eq!(p("-|oooo {d1,d4}{d2,d3}").signature().unwrap(), 1);
        assert_eq!(p("-|oooo {d1,d2,d3,d4}").signature().unwrap(), 1);
        assert_eq!(Partition::empty().signature().unwrap(), 1);
        assert_eq!(p("-|ooo {d1,d2}{d3}").signature(), Err(Error::OddBlock));
        // basic crossing, read clockwise u1 u2 d2 d1
        assert_eq!(p("oo|oo {u1,d2}{u2,d1}").signature().unwrap(), -1);
        assert_eq!(p("oo|oo {u1,d1}{u2,d2}").signature().unwrap(), 1);
    }

    #[test]
    fn mobius_examples() {
        let w = ColorWord::white(3);
        let s = p("-|ooo {d1}{d2}{d3}");
        assert_eq!(mobius(&s, &s).unwrap(), ExactScalar::from_integer(1.into()));
        assert_eq!(
            mobius(&s, &p("-|ooo {d1,d2}{d3}")).unwrap(),
            ExactScalar::from_integer((-1).into())
        );
        assert_eq!(
            mobius(&s, &Partition::one_block(ColorWord::empty(), w)).unwrap(),
            ExactScalar::from_integer(2.into())
        );
        assert_eq!(
            mobius(&p("-|ooo {d1,d2}{d3}"), &s).unwrap(),
            ExactScalar::from_integer(0.into())
        );
    }

    #[test]
    fn enumerate_examples() {
        let e = ColorWord::empty();
        let nc2 = enumerate(&e, &ColorWord::white(4), &[Predicate::Noncrossing, Predicate::Pairing]).unwrap();
        assert_eq!(nc2, vec![p("-|oooo {d1,d2}{d3,d4}"), p("-|oooo {d1,d4}{d2,d3}")]);
        assert_eq!(enumerate(&e, &ColorWord::white(6), &[Predicate::Pairing]).unwrap().len(), 15);
        assert_eq!(enumerate(&e, &ColorWord::white(4), &[Predicate::Noncrossing]).unwrap().len(), 14);
        assert!(matches!(
            enumerate(&e, &ColorWord::white(17), &[Predicate::Pairing]),
            Err(Error::LegBoundExceeded { .. })
        ));
    }

    #[test]
    fn enumeration_counts_match_closed_forms() {
        let e = ColorWord::empty();
        for k in 0..=8 {
            let w = ColorWord::white(k);
            assert_eq!(enumerate(&e, &w, &[Predicate::All]).unwrap().len(), bell(k));
            assert_eq!(enumerate(&e, &w, &[Predicate::Noncrossing]).unwrap().len(), catalan(k));
            let pairs = enumerate(&e, &w, &[Predicate::Pairing]).unwrap().len();
            let nc_pairs = enumerate(&e, &w, &[Predicate::Pairing, Predicate::Noncrossing])
                .unwrap()
                .len();
            if k % 2 == 0 {
                let dfact: usize = (1..k).step_by(2).product();
                assert_eq!(pairs, dfact);
                assert_eq!(nc_pairs, catalan(k / 2));
            } else {
                assert_eq!(pairs, 0);
                assert_eq!(nc_pairs, 0);
            }
        }
        // 16 legs is within the default bound when the predicate prunes
        assert_eq!(
            enumerate(&e, &ColorWord::white(16), &[Predicate::Pairing, Predicate::Noncrossing])
                .unwrap()
                .len(),
            catalan(8)
        );
    }

    #[test]
    fn literal_round_trip() {
        for s in ["oo|oo {u1,d2}{u2,d1}", "-|ob {d1,d2}", "-|-", "bo|- {u1}{u2}"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert_eq!(p("-|- ").num_legs(), 0);
        assert!("oo|o {u1}{u2}".parse::<Partition>().is_err());
        assert!("oo|o {u1,u3}{u2}{d1}".parse::<Partition>().is_err());
        assert!("ox|o {u1,u2,d1}".parse::<Partition>().is_err());
    }

    #[test]
    fn predicates() {
        assert!(p("-|ob {d1,d2}").is_matching());
        assert!(!p("-|oo {d1,d2}").is_matching());
        assert!(p("o|o {u1,d1}").is_matching());
        assert!(!p("o|b {u1,d1}").is_matching());
        assert!(!p("-|oooo {d1,d3}{d2,d4}").is_half_classical());
        assert!(p("-|oooo {d1,d4}{d2,d3}").is_half_classical());
        assert!(p("ooo|ooo {u1,d3}{u2,d2}{u3,d1}").is_half_classical());
        assert!(!p("oo|oo {u1,d2}{u2,d1}").is_half_classical());
        assert!(p("oo|oo {u1,d2}{u2,d1}").is_pairing());
        assert!(!p("oo|oo {u1,d2}{u2,d1}").is_noncrossing());
        assert_eq!(p("-|oooo {d1,d3}{d2,d4}").crossings(), 1);
    }
}
