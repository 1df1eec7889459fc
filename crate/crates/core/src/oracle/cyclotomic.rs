//! Exact arithmetic in `Q(ζ_s)` for `s ≤ 4`, where the field has degree at most 2.

use std::fmt;
use std::ops::{Add, Mul};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ExactScalar;

/// `a + b ζ_s` with `ζ_s = e^{2πi/s}`; `b = 0` whenever `s ≤ 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cyclotomic {
    pub s: u32,
    pub a: ExactScalar,
    pub b: ExactScalar,
}

impl Cyclotomic {
    pub fn check_order(s: u32) -> Result<()> {
        if (1..=4).contains(&s) {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("exact cyclotomic arithmetic needs 1 ≤ s ≤ 4, got {s}")))
        }
    }

    pub fn from_rational(s: u32, a: ExactScalar) -> Self {
        Cyclotomic {
            s,
            a,
            b: ExactScalar::zero(),
        }
    }

    pub fn zero(s: u32) -> Self {
        Self::from_rational(s, ExactScalar::zero())
    }

    pub fn one(s: u32) -> Self {
        Self::from_rational(s, ExactScalar::one())
    }

    /// `ζ^m` for any integer `m`.
    pub fn root_power(s: u32, m: i64) -> Self {
        let r = m.rem_euclid(s as i64);
        match (s, r) {
            (_, 0) => Self::one(s),
            (2, 1) => Self::from_rational(s, -ExactScalar::one()),
            (3, 1) | (4, 1) => Cyclotomic {
                s,
                a: ExactScalar::zero(),
                b: ExactScalar::one(),
            },
            // ζ_3² = −1 − ζ_3
            (3, 2) => Cyclotomic {
                s,
                a: -ExactScalar::one(),
                b: -ExactScalar::one(),
            },
            (4, 2) => Self::from_rational(s, -ExactScalar::one()),
            (4, 3) => Cyclotomic {
                s,
                a: ExactScalar::zero(),
                b: -ExactScalar::one(),
            },
            _ => unreachable!("order checked by callers"),
        }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        Cyclotomic {
            s: self.s,
            a: &self.a * c,
            b: &self.b * c,
        }
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, o: &Cyclotomic) -> Cyclotomic {
        Cyclotomic {
            s: self.s,
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, o: &Cyclotomic) -> Cyclotomic {
        let bd = &self.b * &o.b;
        let (c0, c1) = match self.s {
            3 => (-ExactScalar::one(), -ExactScalar::one()),
            4 => (-ExactScalar::one(), ExactScalar::zero()),
            _ => (ExactScalar::zero(), ExactScalar::zero()),
        };
        Cyclotomic {
            s: self.s,
            a: &self.a * &o.a + &bd * c0,
            b: &self.a * &o.b + &self.b * &o.a + bd * c1,
        }
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + ({})·ζ{}", self.a, self.b, self.s)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_multiply_correctly() {
        for s in 1..=4u32 {
            for m in 0..(2 * s as i64) {
                for n in 0..(2 * s as i64) {
                    let lhs = &Cyclotomic::root_power(s, m) * &Cyclotomic::root_power(s, n);
                    assert_eq!(lhs, Cyclotomic::root_power(s, m + n), "s={s} m={m} n={n}");
                }
            }
        }
        let sum = (0..3).fold(Cyclotomic::zero(3), |acc, m| &acc + &Cyclotomic::root_power(3, m));
        assert_eq!(sum, Cyclotomic::zero(3));
        assert!(Cyclotomic::check_order(5).is_err());
    }
}
