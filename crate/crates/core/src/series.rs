//! Truncated power series in `t` over `Q`, and their images over `F_p`.
//!
//! A [`Series`] of order `T` knows the coefficients of `t^0 .. t^(T-1)`.
//! Binary operations truncate to the smaller order of their operands.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{mod_inv, reduce_rational_mod_p, FpPoly, QPoly, Rational};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    /// Pads with zeros or truncates so exactly `order` coefficients are kept.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order, Rational::zero());
        Self { coeffs }
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn from_qpoly(f: &QPoly, order: usize) -> Self {
        Self::new(f.coeffs().to_vec(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        Self::new(self.coeffs[..order].to_vec(), order)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    fn require_unit(&self, what: &str) -> Result<()> {
        if self.order() == 0 || !self.coeffs[0].is_one() {
            return Err(Error::Domain(format!(
                "{what} needs constant term 1, got {}",
                self.coeffs.first().cloned().unwrap_or_else(Rational::zero)
            )));
        }
        Ok(())
    }

    /// Multiplicative inverse of a series with constant term 1.
    pub fn inverse(&self) -> Result<Self> {
        self.require_unit("inverse")?;
        let n = self.order();
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        out.push(Rational::one());
        for k in 1..n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc -= &self.coeffs[j] * &out[k - j];
                }
            }
            out.push(acc);
        }
        Ok(Self { coeffs: out })
    }

    /// The unique `n`-th root with constant term 1.
    ///
    /// Uses the recurrence coming from `x r' = (1/n) x' r`:
    /// `r_k = (1/k) sum_{j=1..k} (j/n - (k - j)) x_j r_{k-j}`.
    pub fn nth_root(&self, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("zeroth root".into()));
        }
        self.require_unit("nth_root")?;
        let order = self.order();
        let inv_n = Rational::new(BigInt::one(), BigInt::from(n));
        let mut out: Vec<Rational> = Vec::with_capacity(order);
        out.push(Rational::one());
        for k in 1..order {
            let mut acc = Rational::zero();
            for j in 1..=k {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                let weight = &inv_n * BigInt::from(j) - Rational::from_integer(BigInt::from(k - j));
                acc += weight * &self.coeffs[j] * &out[k - j];
            }
            out.push(acc / BigInt::from(k));
        }
        Ok(Self { coeffs: out })
    }

    /// Integer power; negative exponents require a unit constant term.
    pub fn pow(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one(self.order());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Substitution `t -> t^p`; the order becomes `p * order`.
    pub fn compose_tp(&self, p: usize) -> Self {
        assert!(p >= 1);
        let order = self.order() * p;
        let mut out = vec![Rational::zero(); order];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * p] = c.clone();
        }
        Self { coeffs: out }
    }

    /// Coefficient-wise image in `F_p`.
    pub fn reduce_mod_p(&self, p: u64) -> Result<FpSeries> {
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
        Ok(FpSeries { coeffs, p })
    }

    /// True iff every coefficient of `t^1 .. t^(T-1)` vanishes mod `p`.
    pub fn is_constant_mod_p(&self, p: u64) -> Result<bool> {
        Ok(self.reduce_mod_p(p)?.is_constant())
    }

    /// Formal derivative; the order drops by one.
    pub fn derivative(&self) -> Self {
        let coeffs: Vec<Rational> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        let order = coeffs.len();
        Self::new(coeffs, order)
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                write!(f, "{c}*t^{i} + ")?;
            }
        }
        write!(f, "O(t^{})", self.order())
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let n = self.order().min(rhs.order());
        Series {
            coeffs: (0..n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect(),
        }
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        self + &(-rhs)
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let n = self.order().min(rhs.order());
        let mut out = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Series { coeffs: out }
    }
}

/// Parameters `(a, b)` of `2F1(a, b; 1; t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypergeometricParams {
    pub a: Rational,
    pub b: Rational,
}

impl HypergeometricParams {
    pub fn new(a: Rational, b: Rational) -> Self {
        Self { a, b }
    }
}

/// `sum (a)_n (b)_n / (n!)^2 t^n` to the given order.
pub fn hypergeometric_2f1(params: &HypergeometricParams, order: usize) -> Series {
    let mut coeffs = Vec::with_capacity(order);
    let mut c = Rational::one();
    for n in 0..order {
        coeffs.push(c.clone());
        let n_big = BigInt::from(n);
        let step = (&params.a + &n_big) * (&params.b + &n_big) / BigInt::from((n + 1) * (n + 1));
        c *= step;
    }
    Series::new(coeffs, order)
}

/// Truncated power series over `F_p`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FpSeries {
    coeffs: Vec<u64>,
    p: u64,
}

impl FpSeries {
    pub fn new(mut coeffs: Vec<u64>, order: usize, p: u64) -> Self {
        coeffs.resize(order, 0);
        coeffs.iter_mut().for_each(|c| *c %= p);
        Self { coeffs, p }
    }

    pub fn one(order: usize, p: u64) -> Self {
        Self::new(vec![1], order, p)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().skip(1).all(|&c| c == 0)
    }

    /// Largest exponent with a nonzero coefficient.
    pub fn last_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0)
    }

    /// The stored coefficients viewed as a polynomial.
    pub fn to_poly(&self) -> FpPoly {
        FpPoly::new(self.coeffs.clone(), self.p)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.p, rhs.p);
        let n = self.order().min(rhs.order());
        let p = self.p;
        let mut out = vec![0u128; n];
        for (i, &a) in self.coeffs.iter().take(n).enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().take(n - i).enumerate() {
                out[i + j] += a as u128 * b as u128;
            }
        }
        Self {
            coeffs: out.into_iter().map(|c| (c % p as u128) as u64).collect(),
            p,
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        let p = self.p;
        let c0 = self.coeffs.first().copied().unwrap_or(0);
        if c0 == 0 {
            return Err(Error::Domain("inverse of a non-unit series over F_p".into()));
        }
        let inv0 = mod_inv(c0, p);
        let mut out = vec![0u64; self.order()];
        out[0] = inv0;
        for k in 1..self.order() {
            let mut acc: u128 = 0;
            for j in 1..=k {
                acc += self.coeffs[j] as u128 * out[k - j] as u128;
            }
            let acc = (acc % p as u128) as u64;
            out[k] = ((p - acc) % p) * inv0 % p;
        }
        Ok(Self { coeffs: out, p })
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut acc = Self::one(self.order(), self.p);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `t -> t^k`, keeping the current order.
    pub fn compose_power(&self, k: usize) -> Self {
        let mut out = vec![0; self.order()];
        for (i, &c) in self.coeffs.iter().enumerate() {
            if i * k >= out.len() {
                break;
            }
            out[i * k] = c;
        }
        Self { coeffs: out, p: self.p }
    }
}
