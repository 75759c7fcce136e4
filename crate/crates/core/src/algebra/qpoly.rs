use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::fp_poly::FpPoly;
use super::rational::{reduce_rational_mod_p, Rational};
use crate::{Error, Result};

/// Dense polynomial over `Q`, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut out = Self { coeffs };
        while out.coeffs.last().is_some_and(Zero::is_zero) {
            out.coeffs.pop();
        }
        out
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(vec![Rational::one()])
    }

    /// `1 - t`.
    pub fn one_minus_t() -> Self {
        Self::new(vec![Rational::one(), -Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `self(1 - t)`.
    pub fn at_one_minus_t(&self) -> Self {
        let u = Self::one_minus_t();
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * &u) + &Self::new(vec![c.clone()])
        })
    }

    /// Coefficient-wise reduction; fails on the first coefficient whose
    /// denominator is divisible by `p`.
    pub fn reduce_mod_p(&self, p: u64) -> Result<FpPoly> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                reduce_rational_mod_p(c, p).ok_or_else(|| Error::IntegralityViolation {
                    p,
                    exponent: i,
                    coefficient: c.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FpPoly::new(coeffs, p))
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*t"),
                _ => format!("{c}*t^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        self + &(-rhs)
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn substitution_and_reduction() {
        // 1 + 2u at u = 1 - t is 3 - 2t
        let f = QPoly::new(vec![rat(1, 1), rat(2, 1)]);
        assert_eq!(f.at_one_minus_t(), QPoly::new(vec![rat(3, 1), rat(-2, 1)]));
        let g = QPoly::new(vec![rat(800625, 256), rat(5, 2)]).at_one_minus_t();
        // roots mod 11: 1 + 3t vanishes at t = 7
        assert_eq!(g.reduce_mod_p(11).unwrap().monic().roots_in_prime_field(), vec![7]);
        assert!(matches!(
            QPoly::new(vec![rat(1, 1), rat(1, 11)]).reduce_mod_p(11),
            Err(Error::IntegralityViolation { exponent: 1, .. })
        ));
    }
}
