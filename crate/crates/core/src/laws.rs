//! Moments of the classical and free limiting laws, by partition counting.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::category::{CategoryId, CategorySpec};
use crate::error::{Error, Result};
use crate::linalg::{pow, ExactMatrix};
use crate::partition::ColorWord;
use crate::weingarten::asymptotic_char_moments;
use crate::ExactScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LawKind {
    Gaussian,
    Semicircle,
    ComplexGaussian,
    Circular,
    Poisson,
    FreePoisson,
    /// Bessel law attached to `H^s`; `s = 0` stands for `s = ∞`.
    Bessel(u32),
    FreeBessel(u32),
}

/// A law together with its parameter `t > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawId {
    pub kind: LawKind,
    pub t: ExactScalar,
}

impl LawKind {
    /// The category whose partitions count the moments.
    pub fn category(self) -> CategoryId {
        match self {
            LawKind::Gaussian => CategoryId::P2,
            LawKind::Semicircle => CategoryId::NC2,
            LawKind::ComplexGaussian => CategoryId::McalP2,
            LawKind::Circular => CategoryId::McalNC2,
            LawKind::Poisson => CategoryId::P,
            LawKind::FreePoisson => CategoryId::NC,
            LawKind::Bessel(s) => CategoryId::Ps(s),
            LawKind::FreeBessel(s) => CategoryId::NCs(s),
        }
    }

    /// Whether the moments depend on a color word rather than a degree.
    pub fn is_complex(self) -> bool {
        match self {
            LawKind::ComplexGaussian | LawKind::Circular => true,
            LawKind::Bessel(s) | LawKind::FreeBessel(s) => s != 1 && s != 2,
            _ => false,
        }
    }

    pub fn name(self) -> String {
        match self {
            LawKind::Gaussian => "gaussian".into(),
            LawKind::Semicircle => "semicircle".into(),
            LawKind::ComplexGaussian => "complexGaussian".into(),
            LawKind::Circular => "circular".into(),
            LawKind::Poisson => "poisson".into(),
            LawKind::FreePoisson => "freePoisson".into(),
            LawKind::Bessel(s) => format!("bessel{}", s_name(s)),
            LawKind::FreeBessel(s) => format!("freeBessel{}", s_name(s)),
        }
    }
}

fn s_name(s: u32) -> String {
    match s {
        0 => "inf".into(),
        s => s.to_string(),
    }
}

impl fmt::Display for LawKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for LawKind {
    type Err = Error;

    /// Names as in [`LawKind::name`]; Bessel laws take their order as a suffix
    /// (`bessel2`, `freeBesselinf`), defaulting to `s = 2`.
    fn from_str(s: &str) -> Result<Self> {
        let order = |rest: &str| -> Result<u32> {
            match rest {
                "" => Ok(2),
                "inf" => Ok(0),
                r => r.parse().map_err(|_| Error::Parse(format!("bad Bessel order {r:?}"))),
            }
        };
        Ok(match s {
            "gaussian" => LawKind::Gaussian,
            "semicircle" => LawKind::Semicircle,
            "complexGaussian" => LawKind::ComplexGaussian,
            "circular" => LawKind::Circular,
            "poisson" => LawKind::Poisson,
            "freePoisson" => LawKind::FreePoisson,
            _ => {
                if let Some(rest) = s.strip_prefix("freeBessel") {
                    LawKind::FreeBessel(order(rest)?)
                } else if let Some(rest) = s.strip_prefix("bessel") {
                    LawKind::Bessel(order(rest)?)
                } else {
                    return Err(Error::Parse(format!("unknown law {s:?}")));
                }
            }
        })
    }
}

impl LawId {
    pub fn new(kind: LawKind, t: ExactScalar) -> Result<Self> {
        if !t.is_positive() {
            return Err(Error::InvalidArgument("t must be positive".into()));
        }
        Ok(LawId { kind, t })
    }
}

/// `Σ_{π ∈ D(word)} t^{|π|}`.
pub fn law_moment(law: &LawId, word: &ColorWord) -> Result<ExactScalar> {
    asymptotic_char_moments(&CategorySpec::Named(law.kind.category()), &law.t, word)
}

/// Moments of degree `0..=kmax` on all-white words.
pub fn law_moments(law: &LawId, kmax: usize) -> Result<Vec<ExactScalar>> {
    (0..=kmax).map(|k| law_moment(law, &ColorWord::white(k))).collect()
}

/// `P(no fixed point) = Σ_{r=0}^{N} (−1)^r / r!` for a uniform permutation.
pub fn derangement_probability(n: usize) -> ExactScalar {
    let mut acc = ExactScalar::zero();
    let mut fact = BigInt::one();
    for r in 0..=n {
        if r > 0 {
            fact *= BigInt::from(r);
        }
        let term = ExactScalar::new(BigInt::one(), fact.clone());
        if r % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// `t^k / k! · e^{−t}`, with the rational prefactor kept exact.
#[derive(Clone, Debug, PartialEq)]
pub struct PoissonPmf {
    pub prefactor: ExactScalar,
    pub exponent: ExactScalar,
}

impl PoissonPmf {
    pub fn value(&self) -> f64 {
        self.prefactor.to_f64().unwrap_or(f64::NAN) * (-self.exponent.to_f64().unwrap_or(f64::NAN)).exp()
    }
}

pub fn poisson_pmf_limit(t: &ExactScalar, k: usize) -> Result<PoissonPmf> {
    if !t.is_positive() {
        return Err(Error::InvalidArgument("t must be positive".into()));
    }
    let fact: BigInt = (1..=k).fold(BigInt::one(), |a, r| a * BigInt::from(r));
    Ok(PoissonPmf {
        prefactor: pow(t, k) / ExactScalar::from_integer(fact),
        exponent: t.clone(),
    })
}

/// Determinants of the Hankel matrices `(m_{i+j})_{0 ≤ i,j < n}` for `n = 1..=order`.
pub fn hankel_determinants(moments: &[ExactScalar], order: usize) -> Result<Vec<ExactScalar>> {
    if moments.len() < 2 * order - 1 {
        return Err(Error::LengthMismatch {
            expected: 2 * order - 1,
            found: moments.len(),
        });
    }
    Ok((1..=order)
        .map(|n| ExactMatrix::from_fn(n, n, |i, j| moments[i + j].clone()).determinant())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{integer, rational};

    fn law(kind: LawKind) -> LawId {
        LawId::new(kind, integer(1)).unwrap()
    }

    #[test]
    fn moment_examples() {
        let w = ColorWord::white;
        assert_eq!(law_moment(&law(LawKind::Semicircle), &w(4)).unwrap(), integer(2));
        assert_eq!(law_moment(&law(LawKind::Poisson), &w(3)).unwrap(), integer(5));
        assert_eq!(law_moment(&law(LawKind::FreePoisson), &w(3)).unwrap(), integer(5));
        assert_eq!(law_moment(&law(LawKind::Gaussian), &w(4)).unwrap(), integer(3));
        let circ = law(LawKind::Circular);
        assert_eq!(law_moment(&circ, &"obob".parse().unwrap()).unwrap(), integer(2));
        assert_eq!(law_moment(&circ, &"oobb".parse().unwrap()).unwrap(), integer(1));
        assert_eq!(law_moment(&circ, &w(2)).unwrap(), integer(0));
        // Poisson with t = 2: m_2 = t + t²
        let p2 = LawId::new(LawKind::Poisson, integer(2)).unwrap();
        assert_eq!(law_moment(&p2, &w(2)).unwrap(), integer(6));
        assert!(LawId::new(LawKind::Poisson, integer(0)).is_err());
    }

    #[test]
    fn names_round_trip() {
        for kind in [
            LawKind::Gaussian,
            LawKind::Semicircle,
            LawKind::ComplexGaussian,
            LawKind::Circular,
            LawKind::Poisson,
            LawKind::FreePoisson,
            LawKind::Bessel(3),
            LawKind::FreeBessel(0),
        ] {
            assert_eq!(kind.name().parse::<LawKind>().unwrap(), kind);
        }
        assert_eq!("bessel".parse::<LawKind>().unwrap(), LawKind::Bessel(2));
    }

    #[test]
    fn derangements() {
        assert_eq!(derangement_probability(0), integer(1));
        assert_eq!(derangement_probability(1), integer(0));
        assert_eq!(derangement_probability(4), rational(3, 8));
    }

    #[test]
    fn poisson_pmf() {
        let one = integer(1);
        assert_eq!(poisson_pmf_limit(&one, 0).unwrap().prefactor, integer(1));
        assert_eq!(poisson_pmf_limit(&one, 1).unwrap().prefactor, integer(1));
        for t in [rational(1, 2), integer(1), integer(3)] {
            let total: f64 = (0..=60).map(|k| poisson_pmf_limit(&t, k).unwrap().value()).sum();
            assert!((total - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn hankel_positivity() {
        let m = law_moments(&law(LawKind::Semicircle), 6).unwrap();
        let dets = hankel_determinants(&m, 4).unwrap();
        assert!(dets.iter().all(|d| !d.is_negative()), "{dets:?}");
        assert!(hankel_determinants(&m, 5).is_err());
    }
}
