use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::fp::{legendre, FpElem};
use super::fp_poly::FpPoly;
use crate::{Error, Result};

/// Largest characteristic for which exhaustive scans over `F_{p^2}` are allowed.
pub const MAX_SCAN_PRIME: u64 = 500;

/// The quadratic extension `F_p(w)`, `w^2 = d` with `d` the smallest
/// positive quadratic non-residue.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp2 {
    p: u64,
    d: u64,
}

impl Fp2 {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || !super::fp::is_prime(p) {
            return Err(Error::Domain(format!("F_{{p^2}} needs an odd prime, got {p}")));
        }
        let d = (2..p)
            .find(|&d| legendre(d as i64, p) == -1)
            .expect("odd primes have non-residues");
        Ok(Self { p, d })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn non_residue(&self) -> u64 {
        self.d
    }

    pub fn elem(&self, a: u64, b: u64) -> Fp2Elem {
        Fp2Elem {
            a: FpElem::from_u64(a, self.p),
            b: FpElem::from_u64(b, self.p),
            d: self.d,
        }
    }

    pub fn from_base(&self, a: u64) -> Fp2Elem {
        self.elem(a, 0)
    }

    /// All `p^2` elements, `a + b w` in lexicographic `(b, a)` order.
    pub fn elements(&self) -> impl Iterator<Item = Fp2Elem> + '_ {
        (0..self.p).flat_map(move |b| (0..self.p).map(move |a| self.elem(a, b)))
    }

    pub fn eval(&self, f: &FpPoly, x: Fp2Elem) -> Fp2Elem {
        f.coeffs()
            .iter()
            .rev()
            .fold(self.from_base(0), |acc, &c| acc * x + self.from_base(c))
    }

    /// Square roots of `x`, found by exhaustive search.
    pub fn sqrt(&self, x: Fp2Elem) -> Result<Vec<Fp2Elem>> {
        self.check_scan()?;
        let mut roots: Vec<_> = self.elements().filter(|&y| y * y == x).collect();
        roots.dedup();
        Ok(roots)
    }

    fn check_scan(&self) -> Result<()> {
        if self.p > MAX_SCAN_PRIME {
            return Err(Error::Domain(format!(
                "exhaustive F_{{p^2}} scan limited to p <= {MAX_SCAN_PRIME}"
            )));
        }
        Ok(())
    }
}

/// `a + b w` in `F_{p^2}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp2Elem {
    a: FpElem,
    b: FpElem,
    d: u64,
}

impl Fp2Elem {
    pub fn parts(self) -> (u64, u64) {
        (self.a.value(), self.b.value())
    }

    pub fn is_zero(self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn in_base_field(self) -> bool {
        self.b.is_zero()
    }

    fn p(self) -> u64 {
        self.a.modulus()
    }

    fn with(self, a: FpElem, b: FpElem) -> Self {
        Self { a, b, d: self.d }
    }

    pub fn norm(self) -> FpElem {
        let d = FpElem::from_u64(self.d, self.p());
        self.a * self.a - d * self.b * self.b
    }

    /// `(a + b w)^p = a - b w`, since `w^(p-1) = d^((p-1)/2) = -1`.
    pub fn frobenius(self) -> Self {
        self.with(self.a, -self.b)
    }

    pub fn inv(self) -> Self {
        let n = self.norm().inv();
        self.with(self.a * n, -self.b * n)
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let mut acc = self.with(FpElem::from_u64(1, self.p()), FpElem::from_u64(0, self.p()));
        let mut base = self;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }
}

impl fmt::Debug for Fp2Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}w", self.a.value(), self.b.value())
    }
}

impl Add for Fp2Elem {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.with(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for Fp2Elem {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.with(self.a - rhs.a, self.b - rhs.b)
    }
}

impl Neg for Fp2Elem {
    type Output = Self;
    fn neg(self) -> Self {
        self.with(-self.a, -self.b)
    }
}

impl Mul for Fp2Elem {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.d, rhs.d, "mixing quadratic extensions");
        let d = FpElem::from_u64(self.d, self.p());
        self.with(
            self.a * rhs.a + d * self.b * rhs.b,
            self.a * rhs.b + self.b * rhs.a,
        )
    }
}

/// All distinct roots of `f` in `F_{p^2}`, by evaluating at every element.
pub fn fp2_enumerate_roots(f: &FpPoly) -> Result<Vec<Fp2Elem>> {
    if f.degree().unwrap_or(0) < 1 {
        return Err(Error::Domain("root enumeration needs degree >= 1".into()));
    }
    let field = Fp2::new(f.modulus())?;
    field.check_scan()?;
    Ok(field.elements().filter(|&x| field.eval(f, x).is_zero()).collect())
}
