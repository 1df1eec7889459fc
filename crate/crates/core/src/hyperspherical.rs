//! Closed formula for the moments of a coordinate on the free real sphere,
//! evaluated exactly in the quadratic field `Q(√(N²−4))`.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::category::{GroupId, GroupKind};
use crate::error::{Error, Result};
use crate::weingarten::{haar_moment, Factor, MonomialSpec};
use crate::partition::Color;
use crate::ExactScalar;

/// Decimal digits reported after the point.
pub const DIGITS: u32 = 50;
/// Agreement required against the exact Weingarten value.
pub const TOLERANCE_EXPONENT: i32 = -30;

/// `a + b√d` with rational `a`, `b` and a fixed non-square `d > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quadratic {
    pub a: ExactScalar,
    pub b: ExactScalar,
    pub d: BigInt,
}

impl Quadratic {
    pub fn rational(a: ExactScalar, d: &BigInt) -> Self {
        Quadratic {
            a,
            b: ExactScalar::zero(),
            d: d.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Rational value, when the irrational part vanishes.
    pub fn as_rational(&self) -> Option<ExactScalar> {
        self.b.is_zero().then(|| self.a.clone())
    }

    fn norm(&self) -> ExactScalar {
        &self.a * &self.a - &self.b * &self.b * ExactScalar::from_integer(self.d.clone())
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::InvalidArgument("division by zero in Q(√d)".into()));
        }
        Ok(Quadratic {
            a: &self.a / &n,
            b: -(&self.b / &n),
            d: self.d.clone(),
        })
    }

    pub fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Quadratic::rational(ExactScalar::one(), &self.d);
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// `floor`-style integer approximation of `self · 10^digits`, within 2 units.
    pub fn scaled(&self, digits: u32) -> BigInt {
        let scale = BigInt::from(10u32).pow(digits);
        let a_part = (&self.a * ExactScalar::from_integer(scale.clone())).floor().to_integer();
        if self.b.is_zero() {
            return a_part;
        }
        let num = self.b.numer();
        let den = self.b.denom();
        let radicand = num * num * &self.d * &scale * &scale;
        let root = radicand.sqrt() / den;
        match num.sign() {
            Sign::Minus => a_part - root,
            _ => a_part + root,
        }
    }
}

impl Add for &Quadratic {
    type Output = Quadratic;
    fn add(self, o: &Quadratic) -> Quadratic {
        Quadratic {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
            d: self.d.clone(),
        }
    }
}

impl Sub for &Quadratic {
    type Output = Quadratic;
    fn sub(self, o: &Quadratic) -> Quadratic {
        Quadratic {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
            d: self.d.clone(),
        }
    }
}

impl Mul for &Quadratic {
    type Output = Quadratic;
    fn mul(self, o: &Quadratic) -> Quadratic {
        let d = ExactScalar::from_integer(self.d.clone());
        Quadratic {
            a: &self.a * &o.a + &self.b * &o.b * d,
            b: &self.a * &o.b + &self.b * &o.a,
            d: self.d.clone(),
        }
    }
}

impl Neg for &Quadratic {
    type Output = Quadratic;
    fn neg(self) -> Quadratic {
        Quadratic {
            a: -self.a.clone(),
            b: -self.b.clone(),
            d: self.d.clone(),
        }
    }
}

/// Signed decimal rendering of `x / 10^digits`.
pub fn format_fixed(x: &BigInt, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let sign = if x.is_negative() { "-" } else { "" };
    let abs = x.abs();
    let int = &abs / &scale;
    let frac = (&abs % &scale).to_string();
    format!("{sign}{int}.{frac:0>width$}", width = digits as usize)
}

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// The root `q ∈ (−1, 0)` of `q + 1/q = −N`, i.e. `q = (−N + √(N²−4))/2`.
pub fn q_parameter(n: usize) -> Result<Quadratic> {
    if n < 3 {
        return Err(Error::InvalidArgument(
            "the closed formula needs N ≥ 3 (at N = 2, q = −1 makes 1 + q^r vanish)".into(),
        ));
    }
    let n = n as i64;
    let d = BigInt::from(n * n - 4);
    Ok(Quadratic {
        a: ExactScalar::new(BigInt::from(-n), BigInt::from(2)),
        b: ExactScalar::new(BigInt::one(), BigInt::from(2)),
        d,
    })
}

/// `1/(N+2)^l · (q+1)/(q−1) · 1/(l+1) · Σ_{r=−l−1}^{l+1} (−1)^r C(2l+2, l+r+1) r/(1+q^r)`.
pub fn closed_formula(n: usize, l: usize) -> Result<Quadratic> {
    let q = q_parameter(n)?;
    let d = q.d.clone();
    let one = Quadratic::rational(ExactScalar::one(), &d);
    let l_i = l as i64;
    let mut sum = Quadratic::rational(ExactScalar::zero(), &d);
    for r in -(l_i + 1)..=(l_i + 1) {
        if r == 0 {
            continue;
        }
        let sign = if r % 2 == 0 { 1 } else { -1 };
        let c = binomial(2 * l as u64 + 2, (l_i + r + 1) as u64) * BigInt::from(sign * r);
        let denom = (&one + &q.powi(r)?).inverse()?;
        let coef = Quadratic::rational(ExactScalar::from_integer(c), &d);
        sum = &sum + &(&coef * &denom);
    }
    let ratio = &(&q + &one) * &(&q - &one).inverse()?;
    let prefactor = ExactScalar::new(
        BigInt::one(),
        BigInt::from(n as u64 + 2).pow(l as u32) * BigInt::from(l as u64 + 1),
    );
    Ok(&(&ratio * &sum) * &Quadratic::rational(prefactor, &d))
}

#[derive(Clone, Debug, Serialize)]
pub struct FreeHypersphericalValue {
    pub n: usize,
    pub l: usize,
    /// The formula value to `DIGITS` decimals.
    pub decimal: String,
    /// Exact value when it lies in `Q`.
    pub rational: Option<String>,
    /// `∫_{O_N^+} u_{11}^{2l}` from the Weingarten formula.
    pub weingarten: String,
    /// Upper bound on `|formula − weingarten|`, as a decimal string.
    pub error_bound: String,
    pub agrees: bool,
}

pub fn free_hyperspherical_moment(n: usize, l: usize) -> Result<FreeHypersphericalValue> {
    let value = closed_formula(n, l)?;
    let factor = Factor {
        i: 1,
        j: 1,
        color: Color::White,
    };
    let mono = MonomialSpec::new(vec![factor; 2 * l]);
    let exact = haar_moment(GroupId::new(GroupKind::OPlus), &mono, n)?;
    let diff = &value - &Quadratic::rational(exact.clone(), &value.d);
    let (bound, agrees) = if diff.is_zero() {
        (BigInt::zero(), true)
    } else {
        let b = diff.scaled(DIGITS).abs() + BigInt::from(2);
        let limit = BigInt::from(10u32).pow((DIGITS as i32 + TOLERANCE_EXPONENT) as u32);
        let ok = b <= limit;
        (b, ok)
    };
    Ok(FreeHypersphericalValue {
        n,
        l,
        decimal: format_fixed(&value.scaled(DIGITS), DIGITS),
        rational: value.as_rational().map(|x| x.to_string()),
        weingarten: exact.to_string(),
        error_bound: format_fixed(&bound, DIGITS),
        agrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{integer, rational};

    #[test]
    fn q_satisfies_its_equation() {
        for n in 3..9 {
            let q = q_parameter(n).unwrap();
            let s = &q + &q.powi(-1).unwrap();
            assert_eq!(s.as_rational(), Some(integer(-(n as i64))));
        }
        assert!(q_parameter(2).is_err());
    }

    #[test]
    fn small_values() {
        for n in 3..8 {
            assert_eq!(closed_formula(n, 0).unwrap().as_rational(), Some(integer(1)));
            assert_eq!(closed_formula(n, 1).unwrap().as_rational(), Some(rational(1, n as i64)));
        }
        assert_eq!(closed_formula(4, 2).unwrap().as_rational(), Some(rational(1, 10)));
        assert_eq!(closed_formula(4, 3).unwrap().as_rational(), Some(rational(13, 280)));
    }

    #[test]
    fn agrees_with_weingarten() {
        let v = free_hyperspherical_moment(5, 3).unwrap();
        assert!(v.agrees, "{v:?}");
        assert_eq!(v.rational.as_deref(), Some(v.weingarten.as_str()));
    }

    #[test]
    fn fixed_point_rendering() {
        assert_eq!(format_fixed(&BigInt::from(12345), 3), "12.345");
        assert_eq!(format_fixed(&BigInt::from(-5), 3), "-0.005");
        let half = Quadratic::rational(rational(1, 3), &BigInt::from(5));
        assert_eq!(format_fixed(&half.scaled(6), 6), "0.333333");
        let root = Quadratic {
            a: ExactScalar::zero(),
            b: integer(1),
            d: BigInt::from(2),
        };
        assert_eq!(format_fixed(&root.scaled(10), 10), "1.4142135623");
    }
}
