//! The linear maps `T_π : (C^N)^{⊗k} → (C^N)^{⊗l}` and their twisted versions.
//!
//! Matrices are `N^l × N^k` (rows indexed by lower legs) in the big-endian tensor
//! basis: the first tensor factor is the most significant digit.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{integer, ExactMatrix};
use crate::partition::{interval, MobiusTable, Partition};
use crate::ExactScalar;

/// Largest `N^k` accepted per matrix dimension unless overridden.
pub const DEFAULT_DIM_BOUND: u128 = 1_000_000;
/// Memory guard on the number of dense entries.
pub const MAX_ENTRIES: u128 = 16_000_000;

/// Kronecker symbol `δ_π(i, j)` with 1-based indices; `row` holds the lower
/// indices and `col` the upper ones.
pub fn delta(p: &Partition, row: &[usize], col: &[usize], n: usize) -> Result<u8> {
    check_indices(p, row, col, n)?;
    Ok(p.fits(col, row) as u8)
}

/// Twisted Kronecker symbol: `ε(ker(i, j))` when `ker(i, j) ≥ π`, else 0.
pub fn delta_twisted(p: &Partition, row: &[usize], col: &[usize], n: usize) -> Result<i8> {
    check_indices(p, row, col, n)?;
    if !p.has_even_blocks() {
        return Err(Error::OddBlock);
    }
    if !p.fits(col, row) {
        return Ok(0);
    }
    let all: Vec<usize> = col.iter().chain(row).copied().collect();
    Partition::from_labels(p.upper().clone(), p.lower().clone(), &all)?.signature()
}

fn check_indices(p: &Partition, row: &[usize], col: &[usize], n: usize) -> Result<()> {
    if row.len() != p.lower_len() {
        return Err(Error::LengthMismatch {
            expected: p.lower_len(),
            found: row.len(),
        });
    }
    if col.len() != p.upper_len() {
        return Err(Error::LengthMismatch {
            expected: p.upper_len(),
            found: col.len(),
        });
    }
    for &i in row.iter().chain(col) {
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
    }
    Ok(())
}

fn checked_pow(n: usize, k: usize) -> Option<u128> {
    (n as u128).checked_pow(k as u32)
}

fn dims(p: &Partition, n: usize, dim_bound: u128) -> Result<(usize, usize)> {
    let rows = checked_pow(n, p.lower_len()).unwrap_or(u128::MAX);
    let cols = checked_pow(n, p.upper_len()).unwrap_or(u128::MAX);
    for d in [rows, cols] {
        if d > dim_bound {
            return Err(Error::SizeBoundExceeded { dim: d, bound: dim_bound });
        }
    }
    let entries = rows.saturating_mul(cols);
    if entries > MAX_ENTRIES {
        return Err(Error::SizeBoundExceeded {
            dim: entries,
            bound: MAX_ENTRIES,
        });
    }
    Ok((rows as usize, cols as usize))
}

/// Calls `f(row, col, values)` for every index assignment fitting `p`, where
/// `values[b]` is the 0-based index carried by block `b`.
fn for_each_fit(p: &Partition, n: usize, mut f: impl FnMut(usize, usize, &[usize])) {
    let k = p.upper_len();
    let labels = p.labels();
    let b = p.num_blocks();
    let mut values = vec![0usize; b];
    loop {
        let mut row = 0usize;
        let mut col = 0usize;
        for (leg, &lab) in labels.iter().enumerate() {
            let v = values[lab as usize];
            if leg < k {
                col = col * n + v;
            } else {
                row = row * n + v;
            }
        }
        f(row, col, &values);
        let mut pos = b;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            values[pos] += 1;
            if values[pos] < n {
                break;
            }
            values[pos] = 0;
        }
    }
}

pub fn t_map(p: &Partition, n: usize) -> Result<ExactMatrix> {
    t_map_bounded(p, n, DEFAULT_DIM_BOUND)
}

pub fn t_map_bounded(p: &Partition, n: usize, dim_bound: u128) -> Result<ExactMatrix> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    let (rows, cols) = dims(p, n, dim_bound)?;
    let mut m = ExactMatrix::zeros(rows, cols);
    for_each_fit(p, n, |r, c, _| m.set(r, c, ExactScalar::one()));
    Ok(m)
}

pub fn t_map_twisted(p: &Partition, n: usize) -> Result<ExactMatrix> {
    t_map_twisted_bounded(p, n, DEFAULT_DIM_BOUND)
}

pub fn t_map_twisted_bounded(p: &Partition, n: usize, dim_bound: u128) -> Result<ExactMatrix> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    if !p.has_even_blocks() {
        return Err(Error::OddBlock);
    }
    let (rows, cols) = dims(p, n, dim_bound)?;
    let mut m = ExactMatrix::zeros(rows, cols);
    // ε(ker) only depends on which blocks of p share a value.
    let mut cache: HashMap<Vec<u8>, i8> = HashMap::new();
    let mut err = None;
    for_each_fit(p, n, |r, c, values| {
        let mut seen: Vec<usize> = Vec::new();
        let pattern: Vec<u8> = values
            .iter()
            .map(|v| match seen.iter().position(|x| x == v) {
                Some(i) => i as u8,
                None => {
                    seen.push(*v);
                    (seen.len() - 1) as u8
                }
            })
            .collect();
        let sign = *cache.entry(pattern.clone()).or_insert_with(|| {
            let legs: Vec<u8> = p.labels().iter().map(|&b| pattern[b as usize]).collect();
            match Partition::from_labels(p.upper().clone(), p.lower().clone(), &legs).and_then(|q| q.signature()) {
                Ok(s) => s,
                Err(e) => {
                    err = Some(e);
                    0
                }
            }
        });
        m.set(r, c, integer(sign as i64));
    });
    match err {
        Some(e) => Err(e),
        None => Ok(m),
    }
}

fn map_for(p: &Partition, n: usize, twisted: bool) -> Result<ExactMatrix> {
    if twisted {
        t_map_twisted(p, n)
    } else {
        t_map(p, n)
    }
}

/// One identity checked by [`verify_functoriality`].
#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct FunctorialityReport {
    pub checks: Vec<IdentityCheck>,
}

impl FunctorialityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    fn record(&mut self, identity: impl Into<String>, holds: bool) {
        self.checks.push(IdentityCheck {
            identity: identity.into(),
            holds,
        });
    }
}

/// Checks `T_p ⊗ T_q = T_{pq}`, `T_p T_q = N^c T_{compose(q, p)}` (when the
/// words match) and `T_p^t = T_{p*}`, exactly; failures are recorded, not raised.
pub fn verify_functoriality(p: &Partition, q: &Partition, n: usize, twisted: bool) -> Result<FunctorialityReport> {
    let mut report = FunctorialityReport::default();
    let tp = map_for(p, n, twisted)?;
    let tq = map_for(q, n, twisted)?;

    let tensor = map_for(&p.tensor(q), n, twisted)?;
    report.record("tensor", tp.kron(&tq) == tensor);

    if q.lower() == p.upper() {
        let (c, loops) = q.compose(p)?;
        let lhs = tp.checked_mul(&tq)?;
        let rhs = map_for(&c, n, twisted)?.scale(&integer(n as i64).pow(loops as i32));
        report.record(format!("compose (loops = {loops})"), lhs == rhs);
    }

    report.record("adjoint", tp.transpose() == map_for(&p.adjoint(), n, twisted)?);
    Ok(report)
}

/// Integer form of `T_π` or `T′_π` in compressed-row layout, for exact checks
/// on matrices too large to hold densely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMap {
    pub rows: usize,
    pub cols: usize,
    offsets: Vec<usize>,
    indices: Vec<u32>,
    values: Vec<i64>,
}

impl SparseMap {
    /// Entries are produced in row-major order by enumerating block values with
    /// blocks ordered by their first leg in the sequence (lower legs, upper legs).
    pub fn new(p: &Partition, n: usize, twisted: bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("N must be positive".into()));
        }
        if twisted && !p.has_even_blocks() {
            return Err(Error::OddBlock);
        }
        let (k, l) = p.shape();
        let rows = checked_pow(n, l).filter(|&r| r <= u32::MAX as u128);
        let cols = checked_pow(n, k).filter(|&c| c <= u32::MAX as u128);
        let (Some(rows), Some(cols)) = (rows, cols) else {
            return Err(Error::SizeBoundExceeded {
                dim: u128::MAX,
                bound: u32::MAX as u128,
            });
        };
        let (rows, cols) = (rows as usize, cols as usize);
        let labels = p.labels();
        let order: Vec<usize> = (k..k + l).chain(0..k).collect();
        let mut rank = vec![usize::MAX; p.num_blocks()];
        let mut next = 0;
        for &leg in &order {
            let b = labels[leg] as usize;
            if rank[b] == usize::MAX {
                rank[b] = next;
                next += 1;
            }
        }
        let b = next;
        let mut values = vec![0usize; b];
        let mut out = SparseMap {
            rows,
            cols,
            offsets: vec![0],
            indices: Vec::new(),
            values: Vec::new(),
        };
        let mut signs: HashMap<u64, i64> = HashMap::new();
        let mut current_row = 0usize;
        loop {
            let (mut row, mut col) = (0usize, 0usize);
            for leg in 0..k + l {
                let v = values[rank[labels[leg] as usize]];
                if leg < k {
                    col = col * n + v;
                } else {
                    row = row * n + v;
                }
            }
            while current_row < row {
                out.offsets.push(out.indices.len());
                current_row += 1;
            }
            let value = if twisted {
                let key = pattern_key(&values);
                match signs.get(&key) {
                    Some(&s) => s,
                    None => {
                        let legs: Vec<u64> = (0..k + l)
                            .map(|leg| (key >> (4 * rank[labels[leg] as usize])) & 0xf)
                            .collect();
                        let s = Partition::from_labels(p.upper().clone(), p.lower().clone(), &legs)?.signature()? as i64;
                        signs.insert(key, s);
                        s
                    }
                }
            } else {
                1
            };
            out.indices.push(col as u32);
            out.values.push(value);
            let mut pos = b;
            loop {
                if pos == 0 {
                    while out.offsets.len() <= rows {
                        out.offsets.push(out.indices.len());
                    }
                    return Ok(out);
                }
                pos -= 1;
                values[pos] += 1;
                if values[pos] < n {
                    break;
                }
                values[pos] = 0;
            }
        }
    }

    pub fn nnz(&self) -> usize {
        self.indices.len()
    }

    fn row(&self, r: usize) -> impl Iterator<Item = (u32, i64)> + '_ {
        let range = self.offsets[r]..self.offsets[r + 1];
        self.indices[range.clone()].iter().copied().zip(self.values[range].iter().copied())
    }

    /// Whether `self ⊗ other == target`, compared row by row without forming the product.
    pub fn tensor_equals(&self, other: &SparseMap, target: &SparseMap) -> bool {
        if target.rows != self.rows * other.rows || target.cols != self.cols * other.cols {
            return false;
        }
        if target.nnz() != self.nnz() * other.nnz() {
            return false;
        }
        let oc = other.cols as u32;
        for r1 in 0..self.rows {
            for r2 in 0..other.rows {
                let expected = self
                    .row(r1)
                    .flat_map(|(c1, v1)| other.row(r2).map(move |(c2, v2)| (c1 * oc + c2, v1 * v2)));
                if !expected.eq(target.row(r1 * other.rows + r2)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn mul(&self, other: &SparseMap) -> Result<SparseMap> {
        if self.cols != other.rows {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = SparseMap {
            rows: self.rows,
            cols: other.cols,
            offsets: vec![0],
            indices: Vec::new(),
            values: Vec::new(),
        };
        let mut acc = vec![0i64; other.cols];
        for r in 0..self.rows {
            for (m, v) in self.row(r) {
                for (c, w) in other.row(m as usize) {
                    acc[c as usize] += v * w;
                }
            }
            for (c, x) in acc.iter_mut().enumerate() {
                if *x != 0 {
                    out.indices.push(c as u32);
                    out.values.push(*x);
                    *x = 0;
                }
            }
            out.offsets.push(out.indices.len());
        }
        Ok(out)
    }

    pub fn transpose(&self) -> SparseMap {
        let mut counts = vec![0usize; self.cols + 1];
        for &c in &self.indices {
            counts[c as usize + 1] += 1;
        }
        for c in 0..self.cols {
            counts[c + 1] += counts[c];
        }
        let offsets = counts.clone();
        let mut indices = vec![0u32; self.nnz()];
        let mut values = vec![0i64; self.nnz()];
        for r in 0..self.rows {
            for (c, v) in self.row(r) {
                let slot = &mut counts[c as usize];
                indices[*slot] = r as u32;
                values[*slot] = v;
                *slot += 1;
            }
        }
        SparseMap {
            rows: self.cols,
            cols: self.rows,
            offsets,
            indices,
            values,
        }
    }

    pub fn scaled(mut self, c: i64) -> SparseMap {
        self.values.iter_mut().for_each(|v| *v *= c);
        self
    }

    pub fn to_exact(&self) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for (c, v) in self.row(r) {
                m.set(r, c as usize, integer(v));
            }
        }
        m
    }
}

/// Block values relabelled by first occurrence, packed four bits each.
fn pattern_key(values: &[usize]) -> u64 {
    let mut seen: Vec<usize> = Vec::with_capacity(values.len());
    let mut key = 0u64;
    for (i, v) in values.iter().enumerate() {
        let id = match seen.iter().position(|x| x == v) {
            Some(j) => j,
            None => {
                seen.push(*v);
                seen.len() - 1
            }
        };
        key |= (id as u64) << (4 * i);
    }
    key
}

/// The three identities of [`verify_functoriality`] on the integer forms;
/// `None` for the composition when the words do not match.
pub fn functoriality_sparse(p: &Partition, q: &Partition, n: usize, twisted: bool) -> Result<[Option<bool>; 3]> {
    let tp = SparseMap::new(p, n, twisted)?;
    let tq = SparseMap::new(q, n, twisted)?;
    let tensor = tp.tensor_equals(&tq, &SparseMap::new(&p.tensor(q), n, twisted)?);
    let compose = if q.lower() == p.upper() {
        let (c, loops) = q.compose(p)?;
        let rhs = SparseMap::new(&c, n, twisted)?.scaled((n as i64).pow(loops as u32));
        Some(tp.mul(&tq)? == rhs)
    } else {
        None
    };
    let adjoint = tp.transpose() == SparseMap::new(&p.adjoint(), n, twisted)?;
    Ok([Some(tensor), compose, Some(adjoint)])
}

#[derive(Clone, Debug, Serialize)]
pub struct MobiusReport {
    /// Nonzero coefficients `α_σ` over the coarsenings `σ ≥ p`.
    pub coefficients: Vec<(String, String)>,
    pub holds: bool,
}

/// Checks `T′_p = Σ_{σ ≥ p} α_σ T_σ` with `α_σ = Σ_{p ≤ τ ≤ σ} ε(τ) μ(τ, σ)`.
pub fn mobius_expansion_check(p: &Partition, n: usize) -> Result<MobiusReport> {
    let twisted = t_map_twisted(p, n)?;
    let top = Partition::one_block(p.upper().clone(), p.lower().clone());
    let mut table = MobiusTable::new();
    let mut sum = ExactMatrix::zeros(twisted.rows(), twisted.cols());
    let mut coefficients = Vec::new();
    for sigma in interval(p, &top) {
        let mut alpha = ExactScalar::zero();
        for tau in interval(p, &sigma) {
            let eps = tau.signature()? as i64;
            alpha += ExactScalar::from_integer(table.mobius(&tau, &sigma)? * eps);
        }
        if !alpha.is_zero() {
            sum = &sum + &t_map(&sigma, n)?.scale(&alpha);
            coefficients.push((sigma.to_string(), crate::linalg::format_scalar(&alpha)));
        }
    }
    Ok(MobiusReport {
        coefficients,
        holds: sum == twisted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::ColorWord;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn m(rows: Vec<Vec<i64>>) -> ExactMatrix {
        ExactMatrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(integer).collect()).collect()).unwrap()
    }

    #[test]
    fn delta_examples() {
        let cap = p("-|oo {d1,d2}");
        assert_eq!(delta(&cap, &[1, 1], &[], 3).unwrap(), 1);
        assert_eq!(delta(&cap, &[1, 2], &[], 3).unwrap(), 0);
        let cross = p("oo|oo {u1,d2}{u2,d1}");
        assert_eq!(delta(&cross, &[2, 1], &[1, 2], 2).unwrap(), 1);
        assert_eq!(delta(&cross, &[1, 2], &[1, 2], 2).unwrap(), 0);
        assert!(matches!(delta(&cap, &[0, 1], &[], 2), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(delta(&cap, &[1], &[], 2), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn basic_maps() {
        assert_eq!(t_map(&p("-|oo {d1,d2}"), 2).unwrap(), m(vec![vec![1], vec![0], vec![0], vec![1]]));
        assert_eq!(t_map(&p("oo|oo {u1,d1}{u2,d2}"), 3).unwrap(), ExactMatrix::identity(9));
        let flip = t_map(&p("oo|oo {u1,d2}{u2,d1}"), 2).unwrap();
        assert_eq!(
            flip,
            m(vec![vec![1, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 1, 0, 0], vec![0, 0, 0, 1]])
        );
        assert_eq!(t_map(&Partition::empty(), 4).unwrap(), ExactMatrix::identity(1));
        assert!(matches!(
            t_map(&Partition::singletons(ColorWord::empty(), ColorWord::white(22)), 2),
            Err(Error::SizeBoundExceeded { .. })
        ));
    }

    #[test]
    fn twisted_maps() {
        let flip = t_map_twisted(&p("oo|oo {u1,d2}{u2,d1}"), 2).unwrap();
        assert_eq!(
            flip,
            m(vec![vec![1, 0, 0, 0], vec![0, 0, -1, 0], vec![0, -1, 0, 0], vec![0, 0, 0, 1]])
        );
        let nc = p("oo|oo {u1,u2}{d1,d2}");
        assert_eq!(t_map_twisted(&nc, 3).unwrap(), t_map(&nc, 3).unwrap());
        assert_eq!(t_map_twisted(&p("o|o {u1,d1}"), 3).unwrap(), ExactMatrix::identity(3));
        assert_eq!(t_map_twisted(&p("-|o {d1}"), 3), Err(Error::OddBlock));
    }

    #[test]
    fn functoriality_examples() {
        let cap = p("-|oo {d1,d2}");
        let cup = p("oo|- {u1,u2}");
        assert!(verify_functoriality(&cap, &cap, 2, false).unwrap().passed());
        // T_∪ T_∩ = 3 T_∅ at N = 3
        let lhs = t_map(&cup, 3).unwrap().checked_mul(&t_map(&cap, 3).unwrap()).unwrap();
        assert_eq!(lhs, ExactMatrix::identity(1).scale(&integer(3)));
        assert!(verify_functoriality(&cup, &cap, 3, false).unwrap().passed());
        assert_eq!(t_map(&cap, 2).unwrap().transpose(), t_map(&cup, 2).unwrap());
    }

    #[test]
    fn mobius_examples() {
        let nc = p("-|oooo {d1,d4}{d2,d3}");
        let report = mobius_expansion_check(&nc, 2).unwrap();
        assert!(report.holds);
        assert_eq!(report.coefficients, vec![(nc.to_string(), "1".to_string())]);
        assert!(mobius_expansion_check(&p("-|oooo {d1,d3}{d2,d4}"), 2).unwrap().holds);
        assert!(mobius_expansion_check(&p("-|oooo {d1,d2,d3,d4}"), 2).unwrap().holds);
        assert!(mobius_expansion_check(&p("oo|oo {u1,d2}{u2,d1}"), 3).unwrap().holds);
    }

    #[test]
    fn sparse_form_matches_dense() {
        let cases = [
            "oo|oo {u1,d2}{u2,d1}",
            "ooo|o {u1,u3}{u2,d1}",
            "o|ooo {u1,d1,d2,d3}",
            "oo|oo {u1,d2}{u2}{d1}",
            "-|oooo {d1,d3}{d2,d4}",
            "-|- ",
        ];
        for s in cases {
            let q: Partition = s.trim().parse().unwrap();
            for n in [1, 2, 3] {
                assert_eq!(SparseMap::new(&q, n, false).unwrap().to_exact(), t_map(&q, n).unwrap(), "{s}");
                if q.has_even_blocks() {
                    assert_eq!(SparseMap::new(&q, n, true).unwrap().to_exact(), t_map_twisted(&q, n).unwrap(), "{s}");
                }
            }
        }
        let a = p("oo|oo {u1,d2}{u2,d1}");
        let b = p("oo|- {u1,u2}");
        for twisted in [false, true] {
            let r = functoriality_sparse(&a, &b, 3, twisted).unwrap();
            assert_eq!(r, [Some(true), None, Some(true)]);
            let r = functoriality_sparse(&a, &a, 3, twisted).unwrap();
            assert_eq!(r, [Some(true), Some(true), Some(true)]);
        }
    }
}
