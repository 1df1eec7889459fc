//! Exact Haar integration over `S_N` and `H_N^s = Z_s ≀ S_N` by enumeration.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partition::{Color, ColorWord};
use crate::weingarten::MonomialSpec;
use crate::ExactScalar;

use super::cyclotomic::Cyclotomic;

pub const SN_MAX: usize = 8;
pub const HNS_MAX_ORDER: u128 = 10_000_000;

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, r| a * BigInt::from(r))
}

fn check_sn(n: usize) -> Result<()> {
    if n == 0 || n > SN_MAX {
        return Err(Error::InvalidArgument(format!("S_N enumeration needs 1 ≤ N ≤ {SN_MAX}")));
    }
    Ok(())
}

/// `(1/N!) Σ_σ Π_r [σ(j_r) = i_r]`, with `u_{ij}(σ) = [σ(j) = i]`.
pub fn sn_haar_moment(n: usize, m: &MonomialSpec) -> Result<ExactScalar> {
    check_sn(n)?;
    m.check_range(n, n)?;
    let count = permutations(n)
        .iter()
        .filter(|s| m.factors.iter().all(|f| s[f.j - 1] == f.i - 1))
        .count();
    Ok(ExactScalar::new(BigInt::from(count), factorial(n)))
}

fn check_hns(n: usize, s: u32) -> Result<()> {
    Cyclotomic::check_order(s)?;
    if n == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    let order = (s as u128).pow(n as u32) * (1..=n as u128).product::<u128>();
    if order > HNS_MAX_ORDER {
        return Err(Error::SizeBoundExceeded {
            dim: order,
            bound: HNS_MAX_ORDER,
        });
    }
    Ok(())
}

/// Average over `Z_s ≀ S_N` of `Π_r u^{e_r}_{i_r j_r}`, where the group element
/// `(σ, a)` has entries `u_{σ(j), j} = ζ^{a_j}` and the black color conjugates.
pub fn hns_haar_moment(n: usize, s: u32, m: &MonomialSpec) -> Result<Cyclotomic> {
    check_hns(n, s)?;
    m.check_range(n, n)?;
    let mut acc = vec![0i64; s as usize];
    let mut signs = vec![0u32; n];
    for sigma in permutations(n) {
        if !m.factors.iter().all(|f| sigma[f.j - 1] == f.i - 1) {
            continue;
        }
        signs.iter_mut().for_each(|x| *x = 0);
        loop {
            let mut e: i64 = 0;
            for f in &m.factors {
                let a = signs[f.j - 1] as i64;
                e += if f.color == Color::White { a } else { -a };
            }
            acc[e.rem_euclid(s as i64) as usize] += 1;
            let mut pos = 0;
            loop {
                if pos == n {
                    break;
                }
                signs[pos] += 1;
                if signs[pos] < s {
                    break;
                }
                signs[pos] = 0;
                pos += 1;
            }
            if pos == n {
                break;
            }
        }
    }
    let order = ExactScalar::from_integer(factorial(n) * BigInt::from(s).pow(n as u32));
    let mut total = Cyclotomic::zero(s);
    for (e, &c) in acc.iter().enumerate() {
        if c != 0 {
            total = &total + &Cyclotomic::root_power(s, e as i64).scale(&ExactScalar::from_integer(c.into()));
        }
    }
    Ok(total.scale(&(ExactScalar::one() / order)))
}

/// Integer sums `Σ_g Π_r u^{e_r}_{i_r j_r}(g)` for every pair of index tuples,
/// written `a + b ζ_s`; the moment is the sum divided by `order`.
pub struct MomentTable {
    pub n: usize,
    pub s: u32,
    pub word: ColorWord,
    pub order: BigInt,
    sums: Vec<(i64, i64)>,
}

impl MomentTable {
    fn index(&self, rows: &[usize], cols: &[usize]) -> usize {
        let enc = |t: &[usize]| t.iter().fold(0usize, |a, &x| a * self.n + (x - 1));
        enc(rows) * self.n.pow(self.word.len() as u32) + enc(cols)
    }

    /// Exact moment for 1-based index tuples.
    pub fn moment(&self, rows: &[usize], cols: &[usize]) -> Cyclotomic {
        let (a, b) = self.sums[self.index(rows, cols)];
        let inv = ExactScalar::new(BigInt::one(), self.order.clone());
        let base = Cyclotomic::root_power(self.s, 1);
        let value = &Cyclotomic::from_rational(self.s, ExactScalar::from_integer(a.into()))
            + &base.scale(&ExactScalar::from_integer(b.into()));
        value.scale(&inv)
    }

    /// The integer sum `(a, b)` at 0-based big-endian tuple codes.
    pub fn raw(&self, row_code: usize, col_code: usize) -> (i64, i64) {
        self.sums[row_code * self.n.pow(self.word.len() as u32) + col_code]
    }

    pub fn len(&self) -> usize {
        self.sums.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sums.is_empty()
    }
}

/// Tabulates all monomials of the given word over `Z_s ≀ S_N` (`s = 1` is `S_N`).
pub fn moment_table(n: usize, s: u32, word: &ColorWord) -> Result<MomentTable> {
    check_hns(n, s)?;
    let k = word.len();
    let nk = n.pow(k as u32);
    if nk.saturating_mul(nk) > 50_000_000 {
        return Err(Error::SizeBoundExceeded {
            dim: (nk * nk) as u128,
            bound: 50_000_000,
        });
    }
    // ζ^e as integer pairs (a, b) meaning a + b ζ
    let root: Vec<(i64, i64)> = (0..s as i64)
        .map(|e| {
            let c = Cyclotomic::root_power(s, e);
            let to_i = |x: &ExactScalar| x.to_integer().try_into().expect("small");
            (to_i(&c.a), to_i(&c.b))
        })
        .collect();
    let mut sums = vec![(0i64, 0i64); nk * nk];
    let mut signs = vec![0u32; n];
    let mut cols = vec![0usize; k];
    for sigma in permutations(n) {
        signs.iter_mut().for_each(|x| *x = 0);
        loop {
            for code in 0..nk {
                let mut c = code;
                for r in (0..k).rev() {
                    cols[r] = c % n;
                    c /= n;
                }
                let mut row_code = 0usize;
                let mut e: i64 = 0;
                for r in 0..k {
                    row_code = row_code * n + sigma[cols[r]];
                    let a = signs[cols[r]] as i64;
                    e += if word.get(r) == Color::White { a } else { -a };
                }
                let (x, y) = root[e.rem_euclid(s as i64) as usize];
                let slot = &mut sums[row_code * nk + code];
                slot.0 += x;
                slot.1 += y;
            }
            let mut pos = 0;
            while pos < n {
                signs[pos] += 1;
                if signs[pos] < s {
                    break;
                }
                signs[pos] = 0;
                pos += 1;
            }
            if pos == n {
                break;
            }
        }
    }
    Ok(MomentTable {
        n,
        s,
        word: word.clone(),
        order: factorial(n) * BigInt::from(s).pow(n as u32),
        sums,
    })
}

/// Exact law of the number of fixed points of a uniform permutation among the
/// first `⌊tN⌋` points; entry `r` is `P(χ_t = r)`.
pub fn sn_truncated_char_law(n: usize, t: &ExactScalar) -> Result<Vec<ExactScalar>> {
    check_sn(n)?;
    if *t <= ExactScalar::zero() || *t > ExactScalar::one() {
        return Err(Error::InvalidArgument("t must lie in (0, 1]".into()));
    }
    let s: usize = (t * ExactScalar::from_integer(BigInt::from(n)))
        .floor()
        .to_integer()
        .try_into()
        .expect("at most N");
    let mut counts = vec![0u64; s + 1];
    for sigma in permutations(n) {
        counts[(0..s).filter(|&i| sigma[i] == i).count()] += 1;
    }
    let total = factorial(n);
    Ok(counts
        .into_iter()
        .map(|c| ExactScalar::new(BigInt::from(c), total.clone()))
        .collect())
}

/// `∫ χ_t^k` for `k = 0..=kmax`, from the enumerated law.
pub fn sn_truncated_char_moments(n: usize, t: &ExactScalar, kmax: usize) -> Result<Vec<ExactScalar>> {
    let law = sn_truncated_char_law(n, t)?;
    Ok((0..=kmax)
        .map(|k| {
            law.iter()
                .enumerate()
                .map(|(r, p)| p * ExactScalar::from_integer(BigInt::from(r).pow(k as u32)))
                .sum()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laws::derangement_probability;
    use crate::linalg::rational;

    fn mono(s: &str) -> MonomialSpec {
        s.parse().unwrap()
    }

    #[test]
    fn permutations_count() {
        assert_eq!(permutations(0).len(), 1);
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(5).last().unwrap(), &vec![4, 3, 2, 1, 0]);
    }

    #[test]
    fn sn_examples() {
        assert_eq!(sn_haar_moment(3, &mono("u[1,1]")).unwrap(), rational(1, 3));
        assert_eq!(sn_haar_moment(4, &mono("u[1,1] u[2,2]")).unwrap(), rational(1, 12));
        assert_eq!(sn_haar_moment(5, &mono("u[1,1] u[1,2]")).unwrap(), rational(0, 1));
        assert!(sn_haar_moment(9, &mono("u[1,1]")).is_err());
    }

    #[test]
    fn hns_examples() {
        let v = hns_haar_moment(3, 2, &mono("u[1,1] u[1,1]")).unwrap();
        assert_eq!(v, Cyclotomic::from_rational(2, rational(1, 3)));
        assert_eq!(hns_haar_moment(4, 2, &mono("u[1,1]")).unwrap(), Cyclotomic::zero(2));
        let m = mono("u[1,2] u[2,1]");
        assert_eq!(
            hns_haar_moment(4, 1, &m).unwrap(),
            Cyclotomic::from_rational(1, sn_haar_moment(4, &m).unwrap())
        );
        let v = hns_haar_moment(3, 3, &mono("u[1,1] u[1,1] u[1,1]")).unwrap();
        assert_eq!(v, Cyclotomic::from_rational(3, rational(1, 3)));
        assert_eq!(hns_haar_moment(3, 4, &mono("u[1,1] u*[1,1]")).unwrap(), Cyclotomic::from_rational(4, rational(1, 3)));
        assert_eq!(hns_haar_moment(3, 4, &mono("u[1,1] u[1,1]")).unwrap(), Cyclotomic::zero(4));
    }

    #[test]
    fn tables_match_single_moments() {
        let word: ColorWord = "obo".parse().unwrap();
        let table = moment_table(3, 3, &word).unwrap();
        let m = MonomialSpec::colored(&[1, 2, 1], &[2, 2, 2], &word).unwrap();
        assert_eq!(table.moment(&[1, 2, 1], &[2, 2, 2]), hns_haar_moment(3, 3, &m).unwrap());
        let table = moment_table(4, 1, &ColorWord::white(2)).unwrap();
        assert_eq!(table.moment(&[1, 2], &[1, 2]).a, rational(1, 12));
    }

    #[test]
    fn fixed_point_laws() {
        let one = rational(1, 1);
        assert_eq!(sn_truncated_char_law(4, &one).unwrap()[0], rational(3, 8));
        assert_eq!(sn_truncated_char_law(7, &one).unwrap()[0], derangement_probability(7));
        let law = sn_truncated_char_law(6, &rational(1, 2)).unwrap();
        assert_eq!(law.iter().cloned().sum::<ExactScalar>(), one);
        assert_eq!(law.len(), 4);
    }
}
