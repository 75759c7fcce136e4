//! Characteristic-zero lifts of the partial Hasse invariants on the
//! triangle curve `W_5 = H / Delta(2,5,oo)`.
//!
//! With `t` the Hauptmodul, `Q^3 = F1^4`, `R^2 = (1-t) Q^5`,
//! `phi2' = F1^2 / F2^2` and `B^2 = Q / phi2'`, where
//! `F1 = 2F1(7/20, 3/20; 1; t)` and `F2 = 2F1(9/20, 1/20; 1; t)`.
//! The polynomials `d_n(Q, R)` are the coefficients of
//! `(1 - 5Q x^4 + 5Q^2 x^8 - 2R x^10)^(-1/2)`.
//!
//! Everything is carried as squares `h^2`, which removes the sign choices in
//! `R` and `B`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{fp_poly_squarefree_part, rat, FpPoly, QPoly, Rational};
use crate::formulas::{lift_weight, split_type, SplitType, WeightVector};
use crate::hasse_witt::HasseWittProfile;
use crate::series::{hypergeometric_2f1, FpSeries, HypergeometricParams, Series};
use crate::{Error, Result};

pub fn f1_params() -> HypergeometricParams {
    HypergeometricParams::new(rat(7, 20), rat(3, 20))
}

pub fn f2_params() -> HypergeometricParams {
    HypergeometricParams::new(rat(9, 20), rat(1, 20))
}

#[derive(Clone, Debug)]
pub struct BaseSeries {
    pub f1: Series,
    pub f2: Series,
    pub q: Series,
    pub r: Series,
    pub phi2p: Series,
    /// `B^2 = Q / phi2'`.
    pub b_squared: Series,
    pub b: Series,
}

pub fn build_base_series(order: usize) -> Result<BaseSeries> {
    if order < 4 {
        return Err(Error::Domain(format!("base series need order >= 4, got {order}")));
    }
    let f1 = hypergeometric_2f1(&f1_params(), order);
    let f2 = hypergeometric_2f1(&f2_params(), order);
    let q = f1.pow(4)?.nth_root(3)?;
    let one_minus_t = Series::from_qpoly(&QPoly::one_minus_t(), order);
    let r = (&one_minus_t * &q.pow(5)?).nth_root(2)?;
    let phi2p = &f1.pow(2)? * &f2.pow(-2)?;
    let b_squared = &q * &phi2p.inverse()?;
    let b = b_squared.nth_root(2)?;
    Ok(BaseSeries { f1, f2, q, r, phi2p, b_squared, b })
}

/// A polynomial in `Q` and `R` with rational coefficients, keyed by the
/// exponent pair `(a, b)` of `Q^a R^b`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightedPoly {
    pub monomials: BTreeMap<(u32, u32), Rational>,
}

impl WeightedPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, Rational::one())
    }

    pub fn monomial(a: u32, b: u32, c: Rational) -> Self {
        let mut w = Self::zero();
        w.add_term(a, b, c);
        w
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn coeff(&self, a: u32, b: u32) -> Rational {
        self.monomials.get(&(a, b)).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, a: u32, b: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.monomials.entry((a, b)).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.monomials.remove(&(a, b));
        }
    }

    /// True iff every monomial has weight `4a + 10b = n`.
    pub fn is_homogeneous(&self, n: u32) -> bool {
        self.monomials.keys().all(|&(a, b)| 4 * a + 10 * b == n)
    }

    /// Parity shared by all R-exponents, if any.
    pub fn r_parity(&self) -> Option<u32> {
        let mut it = self.monomials.keys().map(|&(_, b)| b % 2);
        let first = it.next()?;
        it.all(|x| x == first).then_some(first)
    }
}

/// `d_0, ..., d_{n_max}`.
///
/// Writing `u = 1 + P4 x^4 + P8 x^8 + P10 x^10`, the series `y = u^(-1/2)`
/// satisfies `2u y' + u' y = 0`, which gives
/// `d_n = -(1/(2n)) sum_k (2n - k) P_k d_{n-k}`.
pub fn d_n_table(n_max: usize) -> Vec<WeightedPoly> {
    let p_terms: [(usize, (u32, u32), Rational); 3] = [
        (4, (1, 0), rat(-5, 1)),
        (8, (2, 0), rat(5, 1)),
        (10, (0, 1), rat(-2, 1)),
    ];
    let mut d = vec![WeightedPoly::one()];
    for n in 1..=n_max {
        let mut acc = WeightedPoly::zero();
        for (k, (pa, pb), pc) in &p_terms {
            if *k > n {
                continue;
            }
            let scale = pc * BigInt::from(2 * n - k) / BigInt::from(2 * n);
            for (&(a, b), c) in &d[n - k].monomials {
                acc.add_term(a + pa, b + pb, -(&scale * c));
            }
        }
        d.push(acc);
    }
    d
}

pub fn d_n_polynomial(n: usize) -> WeightedPoly {
    d_n_table(n).pop().expect("table is never empty")
}

/// `d_n = R^b0 Q^alpha G(1 - t)` after eliminating `R^2 = (1-t) Q^5`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Specialized {
    pub b0: u32,
    /// `G(s)`, a polynomial in `s = 1 - t`.
    pub g: QPoly,
}

pub fn specialize(d: &WeightedPoly, n: u32) -> Result<Specialized> {
    if !d.is_homogeneous(n) {
        return Err(Error::Contract(format!("d_{n} is not weighted homogeneous")));
    }
    let b0 = d
        .r_parity()
        .ok_or_else(|| Error::Contract(format!("d_{n} is zero or has mixed R-parity")))?;
    let mut g: Vec<Rational> = Vec::new();
    for (&(_, b), c) in &d.monomials {
        let i = ((b - b0) / 2) as usize;
        if g.len() <= i {
            g.resize(i + 1, Rational::zero());
        }
        g[i] += c;
    }
    Ok(Specialized { b0, g: QPoly::new(g) })
}

/// Which `d_n` and which power of `B` make up `h_{p,j}`.
pub fn lift_recipe(p: u64, j: u8) -> Result<(SplitType, usize, i64)> {
    let st = split_type(p, 5);
    let pi = p as usize;
    let recipe = match (st, j) {
        (SplitType::Inert, 1) => (pi - 3, p as i64),
        (SplitType::Inert, 2) => (3 * pi - 1, -1),
        (SplitType::Split, 1) => (3 * pi - 3, 0),
        (SplitType::Split, 2) => (pi - 1, p as i64 - 1),
        (SplitType::Ramified, _) => return Err(Error::BadPrime(p)),
        _ => return Err(Error::Domain(format!("component index must be 1 or 2, got {j}"))),
    };
    Ok((st, recipe.0, recipe.1))
}

pub fn default_order(p: u64) -> usize {
    (3 * p as usize + 1).max(60)
}

#[derive(Clone, Debug)]
pub struct LiftSeries {
    pub p: u64,
    pub j: u8,
    pub weight: WeightVector,
    pub truncation: usize,
    /// Index `n` of `d_n`.
    pub n: usize,
    /// Exponent `k` of `B` in `h = B^k d_n`.
    pub b_power: i64,
    pub specialized: Specialized,
    /// `h_{p,j}^2`.
    pub square_series: Series,
}

impl Specialized {
    /// `(1-t)^b0 G(1-t)`.
    pub fn finite_zero_polynomial(&self) -> QPoly {
        let mut f = self.g.at_one_minus_t();
        if self.b0 == 1 {
            f = &f * &QPoly::one_minus_t();
        }
        f
    }
}

impl LiftSeries {
    /// The finite-zero polynomial `(1-t)^b0 G(1-t)` of the lift.
    pub fn finite_zero_polynomial(&self) -> QPoly {
        self.specialized.finite_zero_polynomial()
    }

    /// `(1-t)^b0 G(1-t)^2`: the rational prefactor of `h^2` in front of
    /// the hypergeometric powers.
    pub fn prefactor(&self) -> QPoly {
        let g = self.specialized.g.at_one_minus_t();
        let mut f = &g * &g;
        if self.specialized.b0 == 1 {
            f = &f * &QPoly::one_minus_t();
        }
        f
    }
}

pub fn build_lift(p: u64, order: usize, j: u8) -> Result<LiftSeries> {
    if p < 7 || !crate::algebra::is_prime(p) {
        return Err(Error::BadPrime(p));
    }
    if order < 3 * p as usize {
        return Err(Error::Domain(format!("order {order} < 3p = {}", 3 * p)));
    }
    let base = build_base_series(order)?;
    let d = d_n_table(3 * p as usize);
    build_lift_with(p, j, &base, &d)
}

/// As [`build_lift`], reusing base series and a `d_n` table.
pub fn build_lift_with(p: u64, j: u8, base: &BaseSeries, d: &[WeightedPoly]) -> Result<LiftSeries> {
    let (st, n, b_power) = lift_recipe(p, j)?;
    let dn = d
        .get(n)
        .ok_or_else(|| Error::Domain(format!("d_n table too short for n = {n}")))?;
    let specialized = specialize(dn, n as u32)?;
    let order = base.q.order();
    let mut h2 = base.q.pow(n as i64 / 2)?;
    if b_power != 0 {
        h2 = &h2 * &base.b_squared.pow(b_power)?;
    }
    let mut ls = LiftSeries {
        p,
        j,
        weight: lift_weight(p, j, st)?,
        truncation: order,
        n,
        b_power,
        specialized,
        square_series: Series::one(order),
    };
    ls.square_series = &h2 * &Series::from_qpoly(&ls.prefactor(), order);
    ls.square_series.reduce_mod_p(p)?;
    Ok(ls)
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftReport {
    pub p: u64,
    pub j: u8,
    pub weight: WeightVector,
    pub order: usize,
    pub constant_mod_p: bool,
    pub constant_residue: u64,
    pub lift_polynomial: String,
    pub brute_polynomial: String,
    pub lift_roots: Vec<u64>,
    pub brute_roots: Vec<u64>,
    pub roots_match: bool,
}

/// Squarefree image mod `p` of the finite-zero polynomial.
pub fn lift_zero_locus(ls: &LiftSeries) -> Result<FpPoly> {
    squarefree_zero_locus(ls.p, ls.j, &ls.specialized)
}

fn squarefree_zero_locus(p: u64, j: u8, s: &Specialized) -> Result<FpPoly> {
    let f = s.finite_zero_polynomial().reduce_mod_p(p)?;
    if f.is_zero() {
        return Err(Error::Contract(format!("finite-zero polynomial of h_{{{p},{j}}} vanishes mod p")));
    }
    fp_poly_squarefree_part(&f)
}

/// Zero locus mod `p` of `h_{p,j}` straight from `d_n`, without building
/// any series. `d` must reach index `3p`.
pub fn zero_locus_from_table(p: u64, j: u8, d: &[WeightedPoly]) -> Result<FpPoly> {
    let (_, n, _) = lift_recipe(p, j)?;
    let dn = d
        .get(n)
        .ok_or_else(|| Error::Domain(format!("d_n table too short for n = {n}")))?;
    squarefree_zero_locus(p, j, &specialize(dn, n as u32)?)
}

/// Checks integrality and constancy mod `p`, and compares the lift's zero
/// locus with the brute-force `ph_{p,j}`.
pub fn verify_lift(ls: &LiftSeries, profile: &HasseWittProfile) -> Result<LiftReport> {
    if profile.p != ls.p {
        return Err(Error::Domain("profile and lift are for different primes".into()));
    }
    let reduced = ls.square_series.reduce_mod_p(ls.p)?;
    let lift_poly = lift_zero_locus(ls)?;
    let brute = profile.ph_t(ls.j);
    let report = LiftReport {
        p: ls.p,
        j: ls.j,
        weight: ls.weight,
        order: ls.truncation,
        constant_mod_p: reduced.is_constant(),
        constant_residue: reduced.coeffs()[0],
        lift_polynomial: lift_poly.to_string(),
        brute_polynomial: brute.to_string(),
        lift_roots: lift_poly.roots_in_prime_field(),
        brute_roots: brute.roots_in_prime_field(),
        roots_match: &lift_poly == brute,
    };
    if !report.constant_mod_p || report.constant_residue == 0 {
        return Err(Error::LiftVerification {
            p: ls.p,
            j: ls.j,
            lift: format!("h^2 is not a nonzero constant mod {}", ls.p),
            brute: "constant".into(),
        });
    }
    if !report.roots_match {
        return Err(Error::LiftVerification {
            p: ls.p,
            j: ls.j,
            lift: report.lift_polynomial,
            brute: report.brute_polynomial,
        });
    }
    Ok(report)
}

pub const DWORK_N: u64 = 10;

#[derive(Clone, Debug, Serialize)]
pub struct DworkComponent {
    pub j: u8,
    pub j_prime: u8,
    pub degree: Option<usize>,
    pub bound: usize,
    pub polynomial: String,
    /// Squarefree ratio polynomial equals `ph_{p,j}` away from `t = 1`.
    pub roots_match: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DworkReport {
    pub p: u64,
    pub order: usize,
    pub reduced_confidence: bool,
    pub components: Vec<DworkComponent>,
}

/// Truncated `2F1` mod `p`.
fn hypergeometric_mod_p(params: &HypergeometricParams, order: usize, p: u64) -> Result<FpSeries> {
    hypergeometric_2f1(params, order).reduce_mod_p(p)
}

fn strip_t_minus_one(f: &FpPoly) -> Result<FpPoly> {
    let t1 = FpPoly::from_i64(&[-1, 1], f.modulus());
    if t1.divides(f) {
        Ok(f.exact_div(&t1))
    } else {
        Ok(f.clone())
    }
}

/// Orders above this are capped and the report is flagged.
pub const DWORK_MAX_ORDER: usize = 4000;

/// Checks that `y_j(t)^N / y_{j'}(t^p)^N mod p` is a polynomial of degree at
/// most `-chi/2 N (p lambda_{j'} - lambda_j)` whose zero locus is the
/// brute-force `ph_{p,j}` up to the elliptic point `t = 1`.
pub fn dwork_congruence_check(profile: &HasseWittProfile, order: Option<usize>) -> Result<DworkReport> {
    let p = profile.p;
    let wanted = order.unwrap_or((p * (p + 1)) as usize);
    let order = wanted.min(DWORK_MAX_ORDER);
    let y = [
        hypergeometric_mod_p(&f1_params(), order, p)?,
        hypergeometric_mod_p(&f2_params(), order, p)?,
    ];
    let lambda = [rat(1, 1), rat(1, 3)];
    let chi = rat(-3, 10);
    let mut components = Vec::new();
    for j in [1u8, 2] {
        let jp = match profile.split_type {
            SplitType::Inert => 3 - j,
            _ => j,
        };
        let num = y[(j - 1) as usize].pow(DWORK_N);
        let den = y[(jp - 1) as usize].compose_power(p as usize).pow(DWORK_N);
        let ratio = num.mul(&den.inverse()?);
        let bound_q = -&chi / rat(2, 1)
            * rat(DWORK_N as i64, 1)
            * (rat(p as i64, 1) * &lambda[(jp - 1) as usize] - &lambda[(j - 1) as usize]);
        let bound = bound_q.floor().to_integer().try_into().unwrap_or(0usize);
        let degree = ratio.last_nonzero();
        if degree.is_some_and(|d| d > bound) {
            return Err(Error::DworkViolation {
                p,
                j,
                reason: format!("coefficient of t^{} is nonzero, bound is {bound}", degree.unwrap()),
            });
        }
        let poly = ratio.to_poly();
        let sq = fp_poly_squarefree_part(&poly)?;
        let roots_match = strip_t_minus_one(&sq)? == strip_t_minus_one(profile.ph_t(j))?;
        if !roots_match {
            return Err(Error::DworkViolation {
                p,
                j,
                reason: format!("zero locus {sq} differs from ph_{j} = {}", profile.ph_t(j)),
            });
        }
        components.push(DworkComponent {
            j,
            j_prime: jp,
            degree,
            bound,
            polynomial: poly.to_string(),
            roots_match,
        });
    }
    Ok(DworkReport { p, order, reduced_confidence: order < wanted, components })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_rational;
    use crate::hasse_witt::hasse_witt_profile;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn d_n_anchors() {
        let d = d_n_table(30);
        assert_eq!(d[0], WeightedPoly::one());
        assert_eq!(d[4], WeightedPoly::monomial(1, 0, rat(5, 2)));
        assert_eq!(d[10], WeightedPoly::monomial(0, 1, rat(1, 1)));
        assert!(d[1].is_zero() && d[2].is_zero() && d[6].is_zero());
        assert_eq!(d[30].coeff(5, 1), q("800625/256"));
        assert_eq!(d[30].coeff(0, 3), rat(5, 2));
        assert_eq!(d[30].monomials.len(), 2);
    }

    #[test]
    fn base_series_leading_terms() {
        let b = build_base_series(8).unwrap();
        let q3 = b.q.pow(3).unwrap();
        assert_eq!(q3.coeffs()[..3], [rat(1, 1), rat(21, 100), q("15687/160000")]);
        assert_eq!(b.phi2p.coeffs()[..3], [rat(1, 1), rat(3, 50), q("927/40000")]);
        assert_eq!(&b.b * &b.b, b.b_squared);
        assert_eq!(b.b_squared.coeff(1), &rat(1, 100));
        assert_eq!(b.b.coeff(1), &rat(1, 200));
    }

    #[test]
    fn h11_2_closed_form() {
        let ls = build_lift(11, 33, 2).unwrap();
        let c = ls.square_series.coeffs();
        assert_eq!(c[..3], [rat(1, 1), rat(-11, 20), q("-5841/32000")]);
        let f2 = hypergeometric_2f1(&f2_params(), 33).pow(20).unwrap();
        let one_minus_t = Series::from_qpoly(&QPoly::one_minus_t(), 33);
        assert_eq!(ls.square_series, &one_minus_t * &f2);
    }

    #[test]
    fn lift_p11_roots() {
        let prof = hasse_witt_profile(11).unwrap();
        for j in [1, 2] {
            let ls = build_lift(11, 34, j).unwrap();
            let rep = verify_lift(&ls, &prof).unwrap();
            assert!(rep.constant_mod_p);
        }
        let ls = build_lift(11, 34, 1).unwrap();
        assert_eq!(verify_lift(&ls, &prof).unwrap().lift_roots, vec![1, 7]);
    }

    #[test]
    fn specialize_rejects_inhomogeneous() {
        let mut w = WeightedPoly::monomial(1, 0, rat(1, 1));
        w.add_term(0, 1, rat(1, 1));
        assert!(specialize(&w, 4).is_err());
    }

    #[test]
    fn dwork_small_primes() {
        for p in [7, 11, 13] {
            let prof = hasse_witt_profile(p).unwrap();
            let rep = dwork_congruence_check(&prof, None).unwrap();
            assert!(!rep.reduced_confidence);
            assert!(rep.components.iter().all(|c| c.roots_match));
        }
    }

    #[test]
    fn dwork_ratio_with_identity_composition_is_one() {
        let y = hypergeometric_2f1(&f1_params(), 40).reduce_mod_p(11).unwrap();
        let r = y.pow(10).mul(&y.compose_power(1).pow(10).inverse().unwrap());
        assert!(r.is_constant() && r.coeffs()[0] == 1);
    }
}
