use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse modulo a prime. Panics on zero.
pub fn mod_inv(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverse of zero mod {p}");
    mod_pow(a, p - 2, p)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Legendre symbol `(a / p)` for an odd prime `p`: one of -1, 0, 1.
pub fn legendre(a: i64, p: u64) -> i8 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    if mod_pow(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Element of the prime field `F_p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpElem {
    value: u64,
    modulus: u64,
}

impl FpElem {
    pub fn new(value: i64, modulus: u64) -> Self {
        Self {
            value: value.rem_euclid(modulus as i64) as u64,
            modulus,
        }
    }

    pub fn from_u64(value: u64, modulus: u64) -> Self {
        Self {
            value: value % modulus,
            modulus,
        }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Self {
        Self::from_u64(mod_inv(self.value, self.modulus), self.modulus)
    }

    pub fn pow(self, exp: u64) -> Self {
        Self::from_u64(mod_pow(self.value, exp, self.modulus), self.modulus)
    }

    fn check(self, other: Self) {
        assert_eq!(
            self.modulus, other.modulus,
            "mixing elements of F_{} and F_{}",
            self.modulus, other.modulus
        );
    }
}

impl fmt::Debug for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Display for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FpElem {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.check(rhs);
        Self::from_u64(self.value + rhs.value, self.modulus)
    }
}

impl Sub for FpElem {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.check(rhs);
        Self::from_u64(self.value + self.modulus - rhs.value, self.modulus)
    }
}

impl Mul for FpElem {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.check(rhs);
        Self::from_u64(mul_mod(self.value, rhs.value, self.modulus), self.modulus)
    }
}

impl Neg for FpElem {
    type Output = Self;
    fn neg(self) -> Self {
        Self::from_u64(self.modulus - self.value, self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        let a = FpElem::new(-2, 7);
        assert_eq!(a.value(), 5);
        assert_eq!((a * a.inv()).value(), 1);
        assert_eq!((a + FpElem::new(2, 7)).value(), 0);
        assert_eq!((-a).value(), 2);
        assert_eq!(a.pow(6).value(), 1);
    }

    #[test]
    #[should_panic(expected = "mixing")]
    fn mixed_moduli_panic() {
        let _ = FpElem::new(1, 5) + FpElem::new(1, 7);
    }

    #[test]
    fn legendre_symbols() {
        assert_eq!(legendre(13, 17), 1);
        assert_eq!(legendre(5, 13), -1);
        assert_eq!(legendre(13, 13), 0);
        assert!(is_prime(97) && !is_prime(91) && !is_prime(1));
    }
}
