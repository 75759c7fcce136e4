use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::fp::{mod_inv, mul_mod, FpElem};
use crate::{Error, Result};

/// Dense univariate polynomial over `F_p`, lowest degree first.
///
/// Trailing zero coefficients are never stored, so the zero polynomial has an
/// empty coefficient vector and `degree() == None`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    coeffs: Vec<u64>,
    p: u64,
}

impl FpPoly {
    pub fn new(coeffs: Vec<u64>, p: u64) -> Self {
        let mut out = Self {
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
            p,
        };
        out.normalize();
        out
    }

    pub fn from_i64(coeffs: &[i64], p: u64) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| c.rem_euclid(p as i64) as u64)
                .collect(),
            p,
        )
    }

    pub fn zero(p: u64) -> Self {
        Self { coeffs: Vec::new(), p }
    }

    pub fn one(p: u64) -> Self {
        Self::constant(1, p)
    }

    pub fn constant(c: u64, p: u64) -> Self {
        Self::new(vec![c], p)
    }

    /// The monomial `t`.
    pub fn t(p: u64) -> Self {
        Self::new(vec![0, 1], p)
    }

    /// `prod (t - r)` over the given roots.
    pub fn from_roots(roots: &[u64], p: u64) -> Self {
        roots.iter().fold(Self::one(p), |acc, &r| {
            &acc * &Self::new(vec![(p - r % p) % p, 1], p)
        })
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn coeff_elem(&self, i: usize) -> FpElem {
        FpElem::from_u64(self.coeff(i), self.p)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn scale(&self, c: u64) -> Self {
        Self::new(
            self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect(),
            self.p,
        )
    }

    /// Scales so the leading coefficient is one. Zero stays zero.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(mod_inv(self.leading(), self.p))
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mul_mod(acc, x, self.p) + c) % self.p)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, i as u64 % self.p, self.p))
                .collect(),
            self.p,
        )
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut acc = Self::one(self.p);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        self.check(divisor);
        let d = divisor.degree().expect("division by the zero polynomial");
        let p = self.p;
        let inv_lead = mod_inv(divisor.leading(), p);
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Self::zero(p), self.clone());
        }
        let mut quot = vec![0; rem.len() - d];
        for i in (d..rem.len()).rev() {
            let c = mul_mod(rem[i], inv_lead, p);
            if c == 0 {
                continue;
            }
            quot[i - d] = c;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                let sub = mul_mod(c, b, p);
                rem[i - d + j] = (rem[i - d + j] + p - sub) % p;
            }
        }
        rem.truncate(d);
        (Self::new(quot, p), Self::new(rem, p))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Exact quotient; panics if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_zero()
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Roots lying in the prime field, by exhaustive evaluation.
    pub fn roots_in_prime_field(&self) -> Vec<u64> {
        (0..self.p).filter(|&x| self.eval(x) == 0).collect()
    }

    /// `g` with `g(t^p) = self`, provided every exponent is a multiple of `p`.
    fn pth_root(&self) -> Option<Self> {
        let p = self.p as usize;
        if self
            .coeffs
            .iter()
            .enumerate()
            .any(|(i, &c)| c != 0 && i % p != 0)
        {
            return None;
        }
        // Frobenius is the identity on F_p, so coefficients are unchanged.
        Some(Self::new(self.coeffs.iter().step_by(p).copied().collect(), self.p))
    }

    fn check(&self, other: &Self) {
        assert_eq!(
            self.p, other.p,
            "mixing polynomials over F_{} and F_{}",
            self.p, other.p
        );
    }
}

fn squarefree_nonzero(f: &FpPoly) -> FpPoly {
    let f = f.monic();
    if f.degree() == Some(0) {
        return f;
    }
    let df = f.derivative();
    if df.is_zero() {
        let root = f.pth_root().expect("zero derivative implies f in F_p[t^p]");
        return squarefree_nonzero(&root);
    }
    let g = f.gcd(&df);
    // w collects the irreducible factors whose multiplicity is prime to p.
    let w = f.exact_div(&g);
    let mut rest = g;
    loop {
        let common = rest.gcd(&w);
        if common.degree() == Some(0) {
            break;
        }
        rest = rest.exact_div(&common);
    }
    if rest.degree() == Some(0) {
        return w;
    }
    // Everything left has multiplicity divisible by p.
    let root = rest
        .pth_root()
        .expect("remaining cofactor is a p-th power");
    (&w * &squarefree_nonzero(&root)).monic()
}

/// Monic polynomial with the same roots in the algebraic closure as `f`,
/// each with multiplicity one.
pub fn fp_poly_squarefree_part(f: &FpPoly) -> Result<FpPoly> {
    if f.is_zero() {
        return Err(Error::Domain("squarefree part of the zero polynomial".into()));
    }
    Ok(squarefree_nonzero(f))
}

/// Monic gcd and lcm.
pub fn fp_poly_gcd_lcm(f: &FpPoly, g: &FpPoly) -> Result<(FpPoly, FpPoly)> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::Domain("gcd/lcm of two zero polynomials".into()));
    }
    let gcd = f.gcd(g);
    let lcm = if f.is_zero() || g.is_zero() {
        FpPoly::zero(f.p)
    } else {
        (f * g).exact_div(&gcd).monic()
    };
    Ok((gcd, lcm))
}

/// Distinct affine roots of `f`, plus one root at infinity when the degree
/// of `f` falls short of `expected_degree`.
pub fn count_distinct_roots_projective(f: &FpPoly, expected_degree: usize) -> Result<(usize, u8)> {
    let deg = f
        .degree()
        .ok_or_else(|| Error::Domain("root count of the zero polynomial".into()))?;
    if expected_degree < deg {
        return Err(Error::Contract(format!(
            "expected degree {expected_degree} below actual degree {deg}"
        )));
    }
    let affine = squarefree_nonzero(f).degree().unwrap_or(0);
    Ok((affine, u8::from(deg < expected_degree)))
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (mod {})", self.p)
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}*t")?,
                (i, 1) => write!(f, "t^{i}")?,
                (i, c) => write!(f, "{c}*t^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &FpPoly {
    type Output = FpPoly;
    fn add(self, rhs: &FpPoly) -> FpPoly {
        self.check(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        FpPoly::new(
            (0..n).map(|i| (self.coeff(i) + rhs.coeff(i)) % self.p).collect(),
            self.p,
        )
    }
}

impl Sub for &FpPoly {
    type Output = FpPoly;
    fn sub(self, rhs: &FpPoly) -> FpPoly {
        self + &(-rhs)
    }
}

impl Neg for &FpPoly {
    type Output = FpPoly;
    fn neg(self) -> FpPoly {
        FpPoly::new(
            self.coeffs.iter().map(|&c| (self.p - c) % self.p).collect(),
            self.p,
        )
    }
}

impl Mul for &FpPoly {
    type Output = FpPoly;
    fn mul(self, rhs: &FpPoly) -> FpPoly {
        self.check(rhs);
        if self.is_zero() || rhs.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u128; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a as u128 * b as u128;
            }
        }
        FpPoly::new(out.into_iter().map(|c| (c % p as u128) as u64).collect(), p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64], p: u64) -> FpPoly {
        FpPoly::from_i64(c, p)
    }

    #[test]
    fn squarefree_collapses_repeated_root() {
        let f = poly(&[1, -2, 1], 5); // (t-1)^2
        assert_eq!(fp_poly_squarefree_part(&f).unwrap(), poly(&[-1, 1], 5));
    }

    #[test]
    fn squarefree_of_separable_artin_schreier() {
        let f = poly(&[0, -1, 0, 0, 0, 1], 5); // t^5 - t
        assert_eq!(f.derivative(), poly(&[-1], 5));
        assert_eq!(fp_poly_squarefree_part(&f).unwrap(), f);
    }

    #[test]
    fn squarefree_inseparable_descent() {
        // (t - 2)^7 * (t + 1)^2 over F_7: the first factor is t^7 - 2.
        let a = poly(&[-2, 1], 7).pow(7);
        let b = poly(&[1, 1], 7).pow(2);
        let f = &a * &b;
        let expect = &poly(&[-2, 1], 7) * &poly(&[1, 1], 7);
        assert_eq!(fp_poly_squarefree_part(&f).unwrap(), expect);
        // pure p-th power
        assert_eq!(fp_poly_squarefree_part(&a).unwrap(), poly(&[-2, 1], 7));
        // multiplicity p + 1
        let c = poly(&[3, 1], 7).pow(8);
        assert_eq!(fp_poly_squarefree_part(&c).unwrap(), poly(&[3, 1], 7));
    }

    #[test]
    fn squarefree_rejects_zero() {
        assert!(matches!(
            fp_poly_squarefree_part(&FpPoly::zero(5)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn gcd_lcm_examples() {
        let f = poly(&[0, -1, 1], 7); // t(t-1)
        let g = poly(&[0, 1], 7);
        let (gcd, lcm) = fp_poly_gcd_lcm(&f, &g).unwrap();
        assert_eq!(gcd, g);
        assert_eq!(lcm, f);
        let h = poly(&[3, 0, 2], 7);
        let (gcd, lcm) = fp_poly_gcd_lcm(&h, &h).unwrap();
        assert_eq!(gcd, h.monic());
        assert_eq!(lcm, h.monic());
        assert!(fp_poly_gcd_lcm(&FpPoly::zero(7), &FpPoly::zero(7)).is_err());
    }

    #[test]
    fn projective_counts() {
        assert_eq!(count_distinct_roots_projective(&poly(&[-1, 0, 1], 7), 2).unwrap(), (2, 0));
        assert_eq!(count_distinct_roots_projective(&poly(&[0, 1], 5), 2).unwrap(), (1, 1));
        let f = &poly(&[-1, 1], 11).pow(2) * &poly(&[-2, 1], 11);
        assert_eq!(count_distinct_roots_projective(&f, 3).unwrap(), (2, 0));
        assert!(matches!(
            count_distinct_roots_projective(&f, 2),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn division_identity() {
        let a = poly(&[3, 1, 4, 1, 5, 9, 2, 6], 11);
        let b = poly(&[5, 3, 5], 11);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap_or(0) < 2);
    }
}
