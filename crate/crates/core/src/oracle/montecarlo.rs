//! Seeded Monte Carlo Haar integration over `O_N`, `U_N`, `B_N`, `C_N` and the real sphere.
//!
//! Sample `r` draws from its own stream seeded with `seed ^ r`. Samples are grouped
//! into fixed chunks, each summed sequentially, and chunk totals are merged by a
//! fixed pairwise tree, so results do not depend on the worker count.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::Color;
use crate::weingarten::{Factor, MonomialSpec};

/// Samples per chunk; part of the reproducibility contract.
pub const CHUNK: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MCConfig {
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
}

impl MCConfig {
    pub fn new(samples: u64, seed: u64) -> Result<Self> {
        if samples == 0 {
            return Err(Error::InvalidArgument("samples must be at least 1".into()));
        }
        Ok(MCConfig {
            samples,
            seed,
            workers: default_workers(),
        })
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }
}

impl Default for MCConfig {
    fn default() -> Self {
        MCConfig {
            samples: 100_000,
            seed: 0,
            workers: default_workers(),
        }
    }
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub mean_imag: f64,
    pub stderr_imag: f64,
}

impl McEstimate {
    /// Whether `exact` (real) lies within `sigmas` standard errors, on both parts.
    /// A zero standard error means the sampled quantity was constant.
    pub fn within(&self, exact: f64, sigmas: f64) -> bool {
        let ok = |d: f64, se: f64| d.abs() <= sigmas * se + 1e-12;
        ok(self.mean - exact, self.stderr) && ok(self.mean_imag, self.stderr_imag)
    }

    /// Distance from `exact` in standard errors (real part).
    pub fn z_score(&self, exact: f64) -> f64 {
        let d = (self.mean - exact).abs();
        if self.stderr > 0.0 {
            d / self.stderr
        } else if d <= 1e-12 {
            0.0
        } else {
            f64::INFINITY
        }
    }
}

#[derive(Clone)]
struct Accumulator {
    sum: Vec<f64>,
    sq: Vec<f64>,
}

impl Accumulator {
    fn new(outputs: usize) -> Self {
        Accumulator {
            sum: vec![0.0; outputs],
            sq: vec![0.0; outputs],
        }
    }

    fn merge(mut self, other: &Accumulator) -> Self {
        for (a, b) in self.sum.iter_mut().zip(&other.sum) {
            *a += b;
        }
        for (a, b) in self.sq.iter_mut().zip(&other.sq) {
            *a += b;
        }
        self
    }
}

fn pairwise(chunks: &[Accumulator]) -> Accumulator {
    match chunks {
        [one] => one.clone(),
        _ => {
            let (l, r) = chunks.split_at(chunks.len() / 2);
            pairwise(l).merge(&pairwise(r))
        }
    }
}

/// Means and standard errors of `outputs` real statistics, each sample filled by `sample`.
pub fn estimate<F>(cfg: &MCConfig, outputs: usize, sample: F) -> Result<Vec<(f64, f64)>>
where
    F: Fn(&mut ChaCha8Rng, &mut [f64]) + Sync,
{
    if cfg.samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let chunks = cfg.samples.div_ceil(CHUNK);
    let run_chunk = |c: u64| {
        let mut acc = Accumulator::new(outputs);
        let mut buf = vec![0.0; outputs];
        for r in c * CHUNK..((c + 1) * CHUNK).min(cfg.samples) {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ r);
            sample(&mut rng, &mut buf);
            for (k, &x) in buf.iter().enumerate() {
                acc.sum[k] += x;
                acc.sq[k] += x * x;
            }
        }
        acc
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let parts: Vec<Accumulator> = pool.install(|| (0..chunks).into_par_iter().map(run_chunk).collect());
    let total = pairwise(&parts);
    let n = cfg.samples as f64;
    Ok(total
        .sum
        .iter()
        .zip(&total.sq)
        .map(|(&s, &q)| {
            let mean = s / n;
            let var = if cfg.samples > 1 {
                ((q - n * mean * mean) / (n - 1.0)).max(0.0)
            } else {
                0.0
            };
            (mean, (var / n).sqrt())
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum McGroup {
    O,
    U,
    B,
    C,
}

impl McGroup {
    pub const ALL: [McGroup; 4] = [McGroup::O, McGroup::U, McGroup::B, McGroup::C];

    pub fn is_complex(self) -> bool {
        matches!(self, McGroup::U | McGroup::C)
    }

    /// One Haar-distributed element.
    pub fn sample(self, rng: &mut ChaCha8Rng, n: usize) -> DMatrix<Complex64> {
        match self {
            McGroup::O => haar_orthogonal(rng, n).map(|x| Complex64::new(x, 0.0)),
            McGroup::U => haar_unitary(rng, n),
            McGroup::B => {
                let inner = haar_orthogonal(rng, n.saturating_sub(1)).map(|x| Complex64::new(x, 0.0));
                conjugate_by_fourier(&inner, n)
            }
            McGroup::C => conjugate_by_fourier(&haar_unitary(rng, n.saturating_sub(1)), n),
        }
    }
}

impl fmt::Display for McGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            McGroup::O => "O",
            McGroup::U => "U",
            McGroup::B => "B",
            McGroup::C => "C",
        };
        f.write_str(s)
    }
}

impl FromStr for McGroup {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "O" => Ok(McGroup::O),
            "U" => Ok(McGroup::U),
            "B" => Ok(McGroup::B),
            "C" => Ok(McGroup::C),
            other => Err(Error::Parse(format!("no sampler for group '{other}' (use O, U, B or C)"))),
        }
    }
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    StandardNormal.sample(rng)
}

/// Gaussian matrix, QR, then columns rescaled by the signs of `diag(R)`.
pub fn haar_orthogonal(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<f64> {
    if n == 0 {
        return DMatrix::zeros(0, 0);
    }
    let g = DMatrix::from_fn(n, n, |_, _| gaussian(rng));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for c in 0..n {
        if r[(c, c)] < 0.0 {
            q.column_mut(c).neg_mut();
        }
    }
    q
}

/// Complex Gaussian matrix, QR, then columns rescaled by the phases of `diag(R)`.
pub fn haar_unitary(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<Complex64> {
    if n == 0 {
        return DMatrix::zeros(0, 0);
    }
    let g = DMatrix::from_fn(n, n, |_, _| Complex64::new(gaussian(rng), gaussian(rng)));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for c in 0..n {
        let d = r[(c, c)];
        let norm = d.norm();
        if norm > 0.0 {
            let phase = d / norm;
            for x in q.column_mut(c).iter_mut() {
                *x *= phase;
            }
        }
    }
    q
}

/// The Householder reflection `F` with `F e_1 = ξ/√N`, `ξ` the all-ones vector.
pub fn fourier_reflection(n: usize) -> DMatrix<f64> {
    let mut v = nalgebra::DVector::from_element(n, -1.0 / (n as f64).sqrt());
    v[0] += 1.0;
    let vv = v.dot(&v);
    let mut f = DMatrix::identity(n, n);
    if vv > 1e-15 {
        f -= (&v * v.transpose()) * (2.0 / vv);
    }
    f
}

/// `F · diag(1, V) · F`, which fixes `ξ` and is Haar on the stabilizer when `V` is.
fn conjugate_by_fourier(inner: &DMatrix<Complex64>, n: usize) -> DMatrix<Complex64> {
    if n == 0 {
        return DMatrix::zeros(0, 0);
    }
    let f = fourier_reflection(n).map(|x| Complex64::new(x, 0.0));
    let mut block = DMatrix::zeros(n, n);
    block[(0, 0)] = Complex64::new(1.0, 0.0);
    block.view_mut((1, 1), (n - 1, n - 1)).copy_from(inner);
    &f * block * &f
}

fn evaluate(u: &DMatrix<Complex64>, m: &MonomialSpec) -> Complex64 {
    m.factors.iter().fold(Complex64::new(1.0, 0.0), |acc, f| {
        let x = u[(f.i - 1, f.j - 1)];
        acc * if f.color == Color::White { x } else { x.conj() }
    })
}

/// Estimates for several monomials from one shared sample stream.
pub fn mc_haar_moments(group: McGroup, n: usize, monomials: &[MonomialSpec], cfg: &MCConfig) -> Result<Vec<McEstimate>> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    for m in monomials {
        m.check_range(n, n)?;
    }
    let stats = estimate(cfg, 2 * monomials.len(), |rng, out| {
        let u = group.sample(rng, n);
        for (k, m) in monomials.iter().enumerate() {
            let v = evaluate(&u, m);
            out[2 * k] = v.re;
            out[2 * k + 1] = v.im;
        }
    })?;
    Ok(stats
        .chunks(2)
        .map(|p| McEstimate {
            mean: p[0].0,
            stderr: p[0].1,
            mean_imag: p[1].0,
            stderr_imag: p[1].1,
        })
        .collect())
}

pub fn mc_haar_moment(group: McGroup, n: usize, m: &MonomialSpec, cfg: &MCConfig) -> Result<McEstimate> {
    Ok(mc_haar_moments(group, n, std::slice::from_ref(m), cfg)?[0])
}

/// Uniform point on `S^{N−1}_R`: a normalized Gaussian vector.
pub fn sphere_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let mut x: Vec<f64> = (0..n).map(|_| gaussian(rng)).collect();
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    x.iter_mut().for_each(|v| *v /= norm);
    x
}

/// Estimates of `∫ x_{i_1} ⋯ x_{i_k}` for several 1-based index lists.
pub fn sphere_mc_moments(n: usize, indices: &[Vec<usize>], cfg: &MCConfig) -> Result<Vec<McEstimate>> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    for list in indices {
        if let Some(&bad) = list.iter().find(|&&i| i == 0 || i > n) {
            return Err(Error::IndexOutOfRange { index: bad, n });
        }
    }
    let stats = estimate(cfg, indices.len(), |rng, out| {
        let x = sphere_point(rng, n);
        for (k, list) in indices.iter().enumerate() {
            out[k] = list.iter().map(|&i| x[i - 1]).product();
        }
    })?;
    Ok(stats
        .into_iter()
        .map(|(mean, stderr)| McEstimate {
            mean,
            stderr,
            mean_imag: 0.0,
            stderr_imag: 0.0,
        })
        .collect())
}

pub fn sphere_mc_moment(n: usize, indices: &[usize], cfg: &MCConfig) -> Result<McEstimate> {
    Ok(sphere_mc_moments(n, &[indices.to_vec()], cfg)?[0])
}

/// Restricted-growth strings of length `k` with at most `max_blocks` values.
fn growth_strings(k: usize, max_blocks: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, k: usize, bound: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let next = cur.iter().max().map_or(0, |m| m + 1);
        for v in 0..=next.min(bound - 1) {
            cur.push(v);
            go(cur, k, bound, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if max_blocks > 0 || k == 0 {
        go(&mut Vec::new(), k, max_blocks.max(1), &mut out);
    }
    out
}

fn normalize(labels: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut map = Vec::<(usize, usize)>::new();
    labels
        .map(|x| match map.iter().find(|(k, _)| *k == x) {
            Some(&(_, v)) => v,
            None => {
                map.push((x, map.len()));
                map.len() - 1
            }
        })
        .collect()
}

fn permutations_within(groups: &[usize]) -> Vec<Vec<usize>> {
    // permutations of 0..k that preserve each consecutive group of the given sizes
    let mut out = vec![Vec::new()];
    let mut offset = 0;
    for &size in groups {
        let local = super::exact::permutations(size);
        out = out
            .into_iter()
            .flat_map(|p| {
                local.iter().map(move |q| {
                    let mut p = p.clone();
                    p.extend(q.iter().map(|x| x + offset));
                    p
                })
            })
            .collect();
        offset += size;
    }
    out
}

/// One representative per class of monomials of degree `1..=kmax`, where two
/// monomials are equivalent if they differ by reordering factors and relabelling
/// row and column indices. Haar moments over any group containing the
/// permutation matrices are constant on classes. Colored classes put the
/// white factors first.
pub fn monomial_classes(n: usize, kmax: usize, colored: bool) -> Vec<MonomialSpec> {
    let mut out = Vec::new();
    for k in 1..=kmax {
        let whites: Vec<usize> = if colored { (0..=k).rev().collect() } else { vec![k] };
        let kernels = growth_strings(k, n);
        for w in whites {
            let perms = permutations_within(&[w, k - w]);
            let mut seen = BTreeSet::new();
            for a in &kernels {
                for b in &kernels {
                    let canon = perms
                        .iter()
                        .map(|p| (normalize(p.iter().map(|&x| a[x])), normalize(p.iter().map(|&x| b[x]))))
                        .min()
                        .expect("nonempty");
                    if seen.insert(canon.clone()) {
                        let factors = (0..k)
                            .map(|r| Factor {
                                i: canon.0[r] + 1,
                                j: canon.1[r] + 1,
                                color: if r < w { Color::White } else { Color::Black },
                            })
                            .collect();
                        out.push(MonomialSpec::new(factors));
                    }
                }
            }
        }
    }
    out
}

/// One index list per class of sphere monomials of degree `1..=kmax`: sorted
/// exponent patterns like `[1, 1, 2]` for `x_1² x_2`.
pub fn sphere_classes(n: usize, kmax: usize) -> Vec<Vec<usize>> {
    let mut out = BTreeSet::new();
    for k in 1..=kmax {
        for g in growth_strings(k, n) {
            let mut sizes = vec![0usize; g.iter().max().map_or(0, |m| m + 1)];
            g.iter().for_each(|&b| sizes[b] += 1);
            sizes.sort_unstable_by(|a, b| b.cmp(a));
            let list: Vec<usize> = sizes
                .iter()
                .enumerate()
                .flat_map(|(i, &s)| std::iter::repeat_n(i + 1, s))
                .collect();
            out.insert((k, list));
        }
    }
    out.into_iter().map(|(_, l)| l).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(samples: u64) -> MCConfig {
        MCConfig::new(samples, 7).unwrap()
    }

    #[test]
    fn samples_are_orthogonal_and_fix_xi() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for group in McGroup::ALL {
            let u = group.sample(&mut rng, 4);
            let id = u.adjoint() * &u;
            assert!((id - DMatrix::identity(4, 4)).norm() < 1e-12, "{group}");
            if matches!(group, McGroup::B | McGroup::C) {
                let xi = nalgebra::DVector::from_element(4, Complex64::new(1.0, 0.0));
                assert!((&u * &xi - &xi).norm() < 1e-12);
            }
            if !group.is_complex() {
                assert!(u.iter().all(|x| x.im == 0.0));
            }
        }
    }

    #[test]
    fn worker_count_does_not_matter() {
        let m: MonomialSpec = "u[1,1] u[2,2]".parse().unwrap();
        let a = mc_haar_moment(McGroup::O, 3, &m, &cfg(10_000).with_workers(1)).unwrap();
        let b = mc_haar_moment(McGroup::O, 3, &m, &cfg(10_000).with_workers(3)).unwrap();
        assert_eq!(a.mean.to_bits(), b.mean.to_bits());
        assert_eq!(a.stderr.to_bits(), b.stderr.to_bits());
    }

    #[test]
    fn basic_moments() {
        let c = cfg(40_000);
        let m: MonomialSpec = "u[1,1] u[1,1]".parse().unwrap();
        assert!(mc_haar_moment(McGroup::O, 3, &m, &c).unwrap().within(1.0 / 3.0, 4.0));
        let m: MonomialSpec = "u[1,1] u*[1,1]".parse().unwrap();
        assert!(mc_haar_moment(McGroup::U, 4, &m, &c).unwrap().within(0.25, 4.0));
        let m: MonomialSpec = "u[1,1]".parse().unwrap();
        assert!(mc_haar_moment(McGroup::O, 4, &m, &c).unwrap().within(0.0, 4.0));
        assert!(sphere_mc_moment(3, &[1, 1, 1, 1], &c).unwrap().within(3.0 / 15.0, 4.0));
        let e = sphere_mc_moment(5, &[1, 1], &c).unwrap();
        assert!(e.within(0.2, 4.0));
    }

    #[test]
    fn class_counts() {
        // degree 1: u11; degree 2: u11u11, u11u12, u11u21, u11u22
        assert_eq!(monomial_classes(4, 2, false).len(), 5);
        assert_eq!(sphere_classes(4, 4), vec![
            vec![1], vec![1, 1], vec![1, 2], vec![1, 1, 1], vec![1, 1, 2], vec![1, 2, 3],
            vec![1, 1, 1, 1], vec![1, 1, 1, 2], vec![1, 1, 2, 2], vec![1, 1, 2, 3], vec![1, 2, 3, 4],
        ]);
        assert_eq!(sphere_classes(2, 3).len(), 5);
        assert!(monomial_classes(3, 4, true).iter().all(|m| m.rows().iter().all(|&i| i <= 3)));
    }
}
