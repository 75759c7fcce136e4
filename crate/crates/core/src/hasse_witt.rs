//! Characteristic-`p` side: Hasse–Witt matrices of the genus-two family
//! `y^2 = x^5 - 5x^3 + 5x - 2 eta` and the Legendre elliptic family.
//!
//! Manin's convention is used throughout: the Hasse–Witt matrix of
//! `y^2 = f(x)` has entries `c_{ip - j}` where `f^((p-1)/2) = sum c_l x^l`.
//! Root sets do not depend on which of the two transposed conventions is
//! chosen.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::algebra::{
    count_distinct_roots_projective, fp2_enumerate_roots, fp_poly_gcd_lcm, is_prime, mod_inv,
    pushforward_eta_to_t, Fp2, Fp2Elem, FpBivarPoly, FpPoly, Rational,
};
use crate::formulas::{split_type, SplitType};
use crate::{Error, Result};

/// Projective root count of a locus polynomial: distinct affine roots in `t`
/// and whether the fiber at `t = oo` belongs to the locus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct RootCount {
    pub affine: usize,
    pub at_infinity: u8,
}

impl RootCount {
    pub fn total(self) -> usize {
        self.affine + self.at_infinity as usize
    }
}

fn check_good_prime(p: u64) -> Result<()> {
    if p < 7 || !is_prime(p) {
        return Err(Error::BadPrime(p));
    }
    Ok(())
}

/// `(x^5 - 5x^3 + 5x - 2 eta)^((p-1)/2)` over `F_p`, by binary powering.
pub fn expand_half_power(p: u64) -> Result<FpBivarPoly> {
    check_good_prime(p)?;
    Ok(base_polynomial(p).pow((p - 1) / 2))
}

pub(crate) fn base_polynomial(p: u64) -> FpBivarPoly {
    FpBivarPoly::from_terms(&[(5, 0, 1), (3, 0, -5), (1, 0, 5), (0, 1, -2)], p)
}

/// Weighted degree bound of `c_l` in `eta`: `(5m - l) / 5` with `m = (p-1)/2`.
///
/// Giving `x` weight 1 and `eta` weight 5, the top-weight part of the base
/// polynomial is `x^5 - 2 eta`, so `c_l` has eta-degree at most this bound
/// and attains it only when `5 | l`. A strict shortfall means the fiber
/// `eta = oo` (the curve `y^2 = x^5 - 1`) lies on the corresponding divisor.
pub fn weighted_eta_bound(p: u64, l: usize) -> Rational {
    let m = ((p - 1) / 2) as i64;
    Rational::new(BigInt::from(5 * m - l as i64), BigInt::from(5))
}

/// Smallest eta-degree at which the fiber at infinity is ordinary for `c_l`.
pub fn expected_eta_degree(p: u64, l: usize) -> usize {
    let m = ((p - 1) / 2) as i64;
    let top = 5 * m - l as i64;
    assert!(top >= 0, "c_{l} is beyond the x-degree of the expansion");
    Integer::div_ceil(&top, &5) as usize
}

/// Hasse–Witt data of the genus-two family at one good prime.
#[derive(Clone, Debug)]
pub struct HasseWittProfile {
    pub p: u64,
    pub split_type: SplitType,
    /// `c_{p-1}`, `c_{p-2}`, `c_{2p-1}`, `c_{2p-2}` as polynomials in `eta`.
    pub c_p_minus_1: FpPoly,
    pub c_p_minus_2: FpPoly,
    pub c_2p_minus_1: FpPoly,
    pub c_2p_minus_2: FpPoly,
    /// x-indices of the entries carrying component `D_1` and `D_2`.
    pub component_index: [usize; 2],
    pub ph1_t: FpPoly,
    pub ph2_t: FpPoly,
    pub ph1_count: RootCount,
    pub ph2_count: RootCount,
}

impl HasseWittProfile {
    pub fn entry(&self, l: usize) -> &FpPoly {
        let p = self.p as usize;
        match l {
            _ if l == p - 1 => &self.c_p_minus_1,
            _ if l == p - 2 => &self.c_p_minus_2,
            _ if l == 2 * p - 1 => &self.c_2p_minus_1,
            _ if l == 2 * p - 2 => &self.c_2p_minus_2,
            _ => panic!("c_{l} is not a Hasse-Witt entry at p={p}"),
        }
    }

    /// The eta-polynomial whose zeros give component `D_j`.
    pub fn component_entry(&self, j: u8) -> &FpPoly {
        self.entry(self.component_index[component_slot(j)])
    }

    pub fn ph_t(&self, j: u8) -> &FpPoly {
        match j {
            1 => &self.ph1_t,
            2 => &self.ph2_t,
            _ => panic!("component index must be 1 or 2"),
        }
    }

    pub fn ph_count(&self, j: u8) -> RootCount {
        match j {
            1 => self.ph1_count,
            2 => self.ph2_count,
            _ => panic!("component index must be 1 or 2"),
        }
    }

    /// The 2x2 matrix `[[c_{p-1}, c_{p-2}], [c_{2p-1}, c_{2p-2}]]` at `eta0`.
    pub fn matrix_at(&self, eta0: Fp2Elem) -> Result<[[Fp2Elem; 2]; 2]> {
        let field = Fp2::new(self.p)?;
        let ev = |f: &FpPoly| field.eval(f, eta0);
        Ok([
            [ev(&self.c_p_minus_1), ev(&self.c_p_minus_2)],
            [ev(&self.c_2p_minus_1), ev(&self.c_2p_minus_2)],
        ])
    }
}

fn component_slot(j: u8) -> usize {
    match j {
        1 => 0,
        2 => 1,
        _ => panic!("component index must be 1 or 2"),
    }
}

/// Entry indices `(D_1, D_2)` for the given split type.
pub fn component_indices(p: u64, st: SplitType) -> Result<[usize; 2]> {
    let p = p as usize;
    match st {
        SplitType::Split => Ok([p - 1, 2 * p - 2]),
        SplitType::Inert => Ok([2 * p - 1, p - 2]),
        SplitType::Ramified => Err(Error::BadPrime(p as u64)),
    }
}

/// Indices of the two entries that real multiplication forces to vanish.
pub fn vanishing_indices(p: u64, st: SplitType) -> Result<[usize; 2]> {
    let p = p as usize;
    match st {
        SplitType::Split => Ok([p - 2, 2 * p - 1]),
        SplitType::Inert => Ok([p - 1, 2 * p - 2]),
        SplitType::Ramified => Err(Error::BadPrime(p as u64)),
    }
}

pub fn hasse_witt_profile(p: u64) -> Result<HasseWittProfile> {
    let expansion = expand_half_power(p)?;
    hasse_witt_profile_from_expansion(p, &expansion)
}

/// Builds the profile from a precomputed expansion (e.g. loaded from cache).
pub fn hasse_witt_profile_from_expansion(p: u64, expansion: &FpBivarPoly) -> Result<HasseWittProfile> {
    check_good_prime(p)?;
    if expansion.modulus() != p {
        return Err(Error::Domain(format!(
            "expansion is over F_{}, not F_{p}",
            expansion.modulus()
        )));
    }
    let st = split_type(p, 5);
    let pu = p as usize;
    for l in vanishing_indices(p, st)? {
        if !expansion.x_coefficient(l).is_zero() {
            return Err(Error::RmActionViolation { p, index: l });
        }
    }
    let [l1, l2] = component_indices(p, st)?;
    let locus = |l: usize| -> Result<(FpPoly, RootCount)> {
        let entry = expansion.x_coefficient(l);
        let ph = pushforward_eta_to_t(&entry)?;
        let (_, at_infinity) = count_distinct_roots_projective(&entry, expected_eta_degree(p, l))?;
        let affine = ph.degree().unwrap_or(0);
        Ok((ph, RootCount { affine, at_infinity }))
    };
    let (ph1_t, ph1_count) = locus(l1)?;
    let (ph2_t, ph2_count) = locus(l2)?;
    Ok(HasseWittProfile {
        p,
        split_type: st,
        c_p_minus_1: expansion.x_coefficient(pu - 1),
        c_p_minus_2: expansion.x_coefficient(pu - 2),
        c_2p_minus_1: expansion.x_coefficient(2 * pu - 1),
        c_2p_minus_2: expansion.x_coefficient(2 * pu - 2),
        component_index: [l1, l2],
        ph1_t,
        ph2_t,
        ph1_count,
        ph2_count,
    })
}

/// Non-ordinary, supersingular and superspecial loci in `t`, with the fiber
/// at infinity tracked separately.
#[derive(Clone, Debug)]
pub struct LocusPolynomials {
    pub no_t: FpPoly,
    pub ss_t: FpPoly,
    pub sp_t: FpPoly,
    pub no_at_infinity: bool,
    pub ss_at_infinity: bool,
    pub sp_at_infinity: bool,
}

impl LocusPolynomials {
    pub fn no_degree(&self) -> usize {
        self.no_t.degree().unwrap_or(0) + usize::from(self.no_at_infinity)
    }

    pub fn ss_degree(&self) -> usize {
        self.ss_t.degree().unwrap_or(0) + usize::from(self.ss_at_infinity)
    }

    pub fn sp_degree(&self) -> usize {
        self.sp_t.degree().unwrap_or(0) + usize::from(self.sp_at_infinity)
    }
}

pub fn locus_polynomials(profile: &HasseWittProfile) -> Result<LocusPolynomials> {
    let (sp_t, no_t) = fp_poly_gcd_lcm(&profile.ph1_t, &profile.ph2_t)?;
    let inf1 = profile.ph1_count.at_infinity == 1;
    let inf2 = profile.ph2_count.at_infinity == 1;
    let (ss_t, ss_at_infinity) = match profile.split_type {
        SplitType::Inert => (no_t.clone(), inf1 || inf2),
        SplitType::Split => (sp_t.clone(), inf1 && inf2),
        SplitType::Ramified => return Err(Error::BadPrime(profile.p)),
    };
    Ok(LocusPolynomials {
        no_t,
        ss_t,
        sp_t,
        no_at_infinity: inf1 || inf2,
        ss_at_infinity,
        sp_at_infinity: inf1 && inf2,
    })
}

/// Legendre–Hasse polynomial `sum_{k=0}^m C(m,k)^2 lambda^k`, `m = (p-1)/2`.
pub fn legendre_hasse_polynomial(p: u64) -> FpPoly {
    let m = (p - 1) / 2;
    let mut binom = 1u64;
    let mut coeffs = Vec::with_capacity(m as usize + 1);
    for k in 0..=m {
        coeffs.push(binom * binom % p);
        // C(m, k+1) = C(m, k) (m - k) / (k + 1); k + 1 <= m < p is invertible.
        binom = binom * ((m - k) % p) % p * mod_inv((k + 1) % p, p) % p;
    }
    FpPoly::new(coeffs, p)
}

/// Number of supersingular j-invariants in characteristic `p`, counted by
/// brute force through the Legendre family.
pub fn deuring_oracle(p: u64) -> Result<usize> {
    if p < 5 || !is_prime(p) {
        return Err(Error::BadPrime(p));
    }
    let h = legendre_hasse_polynomial(p);
    let field = Fp2::new(p)?;
    let one = field.from_base(1);
    let c256 = field.from_base(256 % p);
    let mut js = HashSet::new();
    for lam in fp2_enumerate_roots(&h)? {
        let num = lam * lam - lam + one;
        let den = lam * lam * (lam - one) * (lam - one);
        let j = c256 * num * num * num * den.inv();
        js.insert(j);
    }
    Ok(js.len())
}
