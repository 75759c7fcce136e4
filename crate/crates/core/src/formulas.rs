//! Closed-form predictions: splitting types, lift weights, Deuring-type
//! degree formulas, dimensions of twisted modular forms and locus bounds.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::{fract, is_nonneg_integer, is_prime, legendre, parse_rational, rat, Rational};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SplitType {
    Inert,
    Split,
    Ramified,
}

impl fmt::Display for SplitType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplitType::Inert => "inert",
            SplitType::Split => "split",
            SplitType::Ramified => "ramified",
        })
    }
}

/// Behaviour of the odd prime `p` in `Q(sqrt(d))`.
pub fn split_type(p: u64, d: i64) -> SplitType {
    match legendre(d, p) {
        0 => SplitType::Ramified,
        1 => SplitType::Split,
        _ => SplitType::Inert,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WeightVector {
    pub k1: i64,
    pub k2: i64,
}

impl WeightVector {
    pub fn new(k1: i64, k2: i64) -> Self {
        WeightVector { k1, k2 }
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k1, self.k2)
    }
}

fn check_component(j: u8) -> Result<()> {
    if j == 1 || j == 2 {
        Ok(())
    } else {
        Err(Error::Domain(format!("component index must be 1 or 2, got {j}")))
    }
}

/// Weight of the lift `h_{p,j}` of the j-th partial Hasse invariant.
pub fn lift_weight(p: u64, j: u8, st: SplitType) -> Result<WeightVector> {
    check_component(j)?;
    let p = p as i64;
    match (st, j) {
        (SplitType::Split, 1) => Ok(WeightVector::new(p - 1, 0)),
        (SplitType::Split, _) => Ok(WeightVector::new(0, p - 1)),
        (SplitType::Inert, 1) => Ok(WeightVector::new(-1, p)),
        (SplitType::Inert, _) => Ok(WeightVector::new(p, -1)),
        (SplitType::Ramified, _) => Err(Error::BadPrime(p as u64)),
    }
}

/// `floor(p/12) + delta + eps`: the number of supersingular j-invariants.
pub fn deuring_formula(p: u64) -> Result<u64> {
    if p < 5 || !is_prime(p) {
        return Err(Error::BadPrime(p));
    }
    let delta = u64::from(p % 3 == 2);
    let eps = u64::from(p % 4 == 3);
    Ok(p / 12 + delta + eps)
}

/// A Kobayashi curve together with the invariants the formulas need.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurveDescriptor {
    pub name: String,
    pub d: i64,
    #[serde(serialize_with = "ser_rational")]
    pub chi: Rational,
    pub e2: u32,
    pub elliptic_orders: Vec<u32>,
    #[serde(serialize_with = "ser_rational_pair")]
    pub lyapunov: (Rational, Rational),
}

fn ser_rational<S: serde::Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ser_rational_pair<S: serde::Serializer>(
    x: &(Rational, Rational),
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{},{}", x.0, x.1))
}

impl CurveDescriptor {
    /// The triangle curve `H / Delta(2,5,oo)`, i.e. `W_5`.
    pub fn w5() -> Self {
        CurveDescriptor {
            name: "w5".into(),
            d: 5,
            chi: rat(-3, 10),
            e2: 1,
            elliptic_orders: vec![2, 5],
            lyapunov: (rat(1, 1), rat(1, 3)),
        }
    }

    pub fn w13() -> Self {
        CurveDescriptor {
            name: "w13".into(),
            d: 13,
            chi: rat(-3, 2),
            e2: 1,
            elliptic_orders: vec![2],
            lyapunov: (rat(1, 1), rat(1, 3)),
        }
    }

    pub fn builtin(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "w5" => Some(Self::w5()),
            "w13" => Some(Self::w13()),
            _ => None,
        }
    }

    pub fn is_triangle_w5(&self) -> bool {
        self.d == 5
    }

    pub fn validate(&self) -> Result<()> {
        if !self.chi.is_negative() {
            return Err(Error::Domain(format!("{}: chi must be negative", self.name)));
        }
        if self.lyapunov.0 != rat(1, 1) {
            return Err(Error::Domain(format!("{}: lambda_1 must be 1", self.name)));
        }
        if self.d <= 0 {
            return Err(Error::Domain(format!("{}: D must be positive", self.name)));
        }
        Ok(())
    }

    pub fn lambda(&self, j: u8) -> &Rational {
        if j == 1 {
            &self.lyapunov.0
        } else {
            &self.lyapunov.1
        }
    }
}

/// Parses a `key = value` curve description. Lines starting with `#` are
/// ignored. Keys: `name`, `D`, `chi`, `e2`, `elliptic_orders`, `lyapunov`.
impl FromStr for CurveDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut name = None;
        let mut d = None;
        let mut chi = None;
        let mut e2 = None;
        let mut orders = Vec::new();
        let mut lyapunov = (rat(1, 1), rat(1, 3));
        for (lineno, raw) in s.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", lineno + 1)))?;
            let value = value.trim();
            let bad = |what: &str| Error::Parse(format!("line {}: bad {what} '{value}'", lineno + 1));
            match key.trim() {
                "name" => name = Some(value.to_string()),
                "D" | "d" => d = Some(value.parse::<i64>().map_err(|_| bad("D"))?),
                "chi" => chi = Some(parse_rational(value)?),
                "e2" => e2 = Some(value.parse::<u32>().map_err(|_| bad("e2"))?),
                "elliptic_orders" => {
                    orders = value
                        .split(',')
                        .filter(|x| !x.trim().is_empty())
                        .map(|x| x.trim().parse::<u32>().map_err(|_| bad("elliptic order")))
                        .collect::<Result<_>>()?;
                }
                "lyapunov" => {
                    let (a, b) = value.split_once(',').ok_or_else(|| bad("lyapunov pair"))?;
                    lyapunov = (parse_rational(a.trim())?, parse_rational(b.trim())?);
                }
                other => return Err(Error::Parse(format!("line {}: unknown key '{other}'", lineno + 1))),
            }
        }
        let missing = |k: &str| Error::Parse(format!("missing key '{k}'"));
        let c = CurveDescriptor {
            name: name.ok_or_else(|| missing("name"))?,
            d: d.ok_or_else(|| missing("D"))?,
            chi: chi.ok_or_else(|| missing("chi"))?,
            e2: e2.ok_or_else(|| missing("e2"))?,
            elliptic_orders: orders,
            lyapunov,
        };
        c.validate()?;
        Ok(c)
    }
}

fn integral(what: &str, p: u64, value: Rational) -> Result<Rational> {
    if is_nonneg_integer(&value) {
        Ok(value)
    } else {
        Err(Error::FormulaConsistency { what: what.into(), p, value })
    }
}

fn half(x: u32) -> Rational {
    Rational::new(BigInt::from(x), BigInt::from(2))
}

fn good_odd_prime(p: u64, d: i64) -> Result<SplitType> {
    if p < 5 || !is_prime(p) {
        return Err(Error::BadPrime(p));
    }
    match split_type(p, d) {
        SplitType::Ramified => Err(Error::BadPrime(p)),
        st => Ok(st),
    }
}

/// Degree of the partial Hasse polynomial `ph_{p,j}` on `W_D`, `D > 5`,
/// `D != 1 mod 8`.
pub fn deg_ph_wd(c: &CurveDescriptor, p: u64, j: u8) -> Result<Rational> {
    check_component(j)?;
    if c.d <= 5 || c.d.rem_euclid(8) == 1 {
        return Err(Error::Unsupported(format!(
            "degree formula needs D > 5 and D != 1 mod 8, got D = {}",
            c.d
        )));
    }
    let st = good_odd_prime(p, c.d)?;
    let pr = rat(p as i64, 1);
    let chi_half = &c.chi / rat(2, 1);
    let e2 = half(c.e2);
    let value = match st {
        SplitType::Inert => {
            let base = if j == 1 {
                -(&pr / rat(3, 1) - rat(1, 1)) * &chi_half
            } else {
                -(&pr - rat(1, 3)) * &chi_half
            };
            if p % 4 == 1 {
                base + e2
            } else {
                base
            }
        }
        SplitType::Split => {
            let base = if j == 1 {
                -(&pr - rat(1, 1)) * &chi_half
            } else {
                -(&pr - rat(1, 1)) * &c.chi / rat(6, 1)
            };
            if p % 4 == 3 {
                base + e2
            } else {
                base
            }
        }
        SplitType::Ramified => unreachable!(),
    };
    integral(&format!("deg ph_{j} on {}", c.name), p, value)
}

/// Degree of `ph_{p,j}` on the triangle curve `W_5`, counting the order-5
/// elliptic point (which sits at `t = oo`).
pub fn deg_ph_w5(p: u64, j: u8) -> Result<Rational> {
    check_component(j)?;
    if p < 7 {
        return Err(Error::BadPrime(p));
    }
    let st = good_odd_prime(p, 5)?;
    let pi = p as i64;
    let (main, eps, delta) = match st {
        SplitType::Inert => {
            let eps = i64::from(p % 4 == 1);
            let deltas = if p % 5 == 2 { (1, 5) } else { (5, 2) };
            let main = if j == 1 { rat(pi - 3, 20) } else { rat(3 * pi - 1, 20) };
            (main, eps, if j == 1 { deltas.0 } else { deltas.1 })
        }
        SplitType::Split => {
            let eps = i64::from(p % 4 != 1);
            let deltas = if p % 5 == 1 { (5, 5) } else { (1, 2) };
            let main = if j == 1 { rat(3 * (pi - 1), 20) } else { rat(pi - 1, 20) };
            (main, eps, if j == 1 { deltas.0 } else { deltas.1 })
        }
        SplitType::Ramified => unreachable!(),
    };
    let value = main + rat(eps, 2) + rat(5 - delta, 5);
    integral(&format!("deg ph_{j} on w5"), p, value)
}

/// The floor form of the `W_13` inert-prime degrees:
/// `(floor((p-3)/4) + eps, floor((3p-1)/4) + eps)`, `eps = [p = 1 mod 4]`.
pub fn w13_eq4(p: u64) -> Result<(u64, u64)> {
    let st = good_odd_prime(p, 13)?;
    if st != SplitType::Inert {
        return Err(Error::Unsupported(format!("p={p} is not inert in Q(sqrt(13))")));
    }
    let eps = u64::from(p % 4 == 1);
    Ok(((p - 3) / 4 + eps, (3 * p - 1) / 4 + eps))
}

/// Degrees `(ph_1, ph_2)` printed in the `W_13` table of small primes.
pub const W13_TABLE: [(u64, u64, u64); 12] = [
    (5, 1, 4),
    (7, 1, 5),
    (11, 2, 8),
    (17, 12, 4),
    (19, 4, 14),
    (23, 17, 6),
    (29, 21, 22),
    (31, 7, 23),
    (37, 9, 28),
    (41, 10, 31),
    (43, 32, 32),
    (47, 11, 35),
];

/// Table rows known to disagree with the split-prime formula.
pub const W13_DISCREPANT_ROWS: [u64; 2] = [29, 43];

pub fn w13_table_entry(p: u64) -> Option<(u64, u64)> {
    W13_TABLE.iter().find(|r| r.0 == p).map(|r| (r.1, r.2))
}

/// `dim M_{(k1,k2)}(Gamma, phi)`, or 0 when the formula gives a negative or
/// non-integral value.
///
/// For `W_5` the triangle-group formula is used. For other curves the `W_D`
/// formula is evaluated for any pair with `k1 + k2` even.
pub fn dim_twisted(c: &CurveDescriptor, w: WeightVector) -> i64 {
    let (k1, k2) = (w.k1, w.k2);
    let value = if c.is_triangle_w5() {
        rat(3 * k1 + k2, 20) - fract(&rat(k2 - k1, 4)) - fract(&rat(3 * k2 - k1, 10))
    } else {
        if (k1 + k2).rem_euclid(2) != 0 {
            return 0;
        }
        let main = -(&c.chi / rat(2, 1)) * (rat(k1, 1) + rat(k2, 3));
        main - rat(i64::from(c.e2), 1) * fract(&rat(k2 - k1, 4))
    };
    if is_nonneg_integer(&value) {
        value.to_integer().to_i64().expect("dimension fits in i64") + 1
    } else {
        0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocusBounds {
    #[serde(serialize_with = "ser_rational")]
    pub ss_lo: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub ss_hi: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub sp_lo: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub sp_hi: Rational,
}

impl LocusBounds {
    pub fn contains_ss(&self, deg: usize) -> bool {
        let d = rat(deg as i64, 1);
        self.ss_lo <= d && d <= self.ss_hi
    }

    pub fn contains_sp(&self, deg: usize) -> bool {
        let d = rat(deg as i64, 1);
        self.sp_lo <= d && d <= self.sp_hi
    }
}

/// Bounds on `deg ss_p` and `deg sp_p` at an inert prime.
///
/// For `W_D` (`D > 5`) the chain is
/// `-(p - 1/3) chi/2 [+ e2/2] <= deg ss <= -4(p-1) chi/3 [+ e2]` and
/// `e2 <= deg sp <= -(p - 1/3) chi/2 + e2/2` for `p = 1 mod 4`,
/// `0 <= deg sp <= -(p - 1/3) chi/2` for `p = 3 mod 4`.
/// For `W_5` the lattice bounds `max deg ph_j <= deg ss <= sum` and
/// `0 <= deg sp <= min deg ph_j` are returned.
pub fn ss_sp_bounds(c: &CurveDescriptor, p: u64) -> Result<LocusBounds> {
    if c.is_triangle_w5() {
        if good_odd_prime(p, 5)? != SplitType::Inert {
            return Err(Error::Unsupported(format!("bounds are stated for inert primes only (p={p})")));
        }
        let a = deg_ph_w5(p, 1)?;
        let b = deg_ph_w5(p, 2)?;
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        return Ok(LocusBounds {
            ss_lo: hi.clone(),
            ss_hi: &lo + &hi,
            sp_lo: Rational::zero(),
            sp_hi: lo,
        });
    }
    if good_odd_prime(p, c.d)? != SplitType::Inert {
        return Err(Error::Unsupported(format!("bounds are stated for inert primes only (p={p})")));
    }
    let pr = rat(p as i64, 1);
    let e2 = rat(i64::from(c.e2), 1);
    let lower = -(&pr - rat(1, 3)) * &c.chi / rat(2, 1);
    let upper = -rat(4, 3) * (&pr - rat(1, 1)) * &c.chi;
    Ok(if p % 4 == 1 {
        LocusBounds {
            ss_lo: &lower + &e2 / rat(2, 1),
            ss_hi: upper + &e2,
            sp_lo: e2.clone(),
            sp_hi: lower + e2 / rat(2, 1),
        }
    } else {
        LocusBounds {
            ss_lo: lower.clone(),
            ss_hi: upper,
            sp_lo: Rational::zero(),
            sp_hi: lower,
        }
    })
}

/// `dim M_{lift weight} - 1`: the predicted number of non-ordinary points
/// of `D_j` away from the elliptic points.
pub fn cor_degree_identity(c: &CurveDescriptor, p: u64, j: u8) -> Result<i64> {
    check_component(j)?;
    let st = good_odd_prime(p, c.d)?;
    Ok(dim_twisted(c, lift_weight(p, j, st)?) - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        rat(n, 1)
    }

    #[test]
    fn split_types() {
        assert_eq!(split_type(11, 5), SplitType::Split);
        assert_eq!(split_type(13, 5), SplitType::Inert);
        assert_eq!(split_type(17, 13), SplitType::Split);
        assert_eq!(split_type(13, 13), SplitType::Ramified);
    }

    #[test]
    fn lift_weights() {
        assert_eq!(lift_weight(13, 1, SplitType::Inert).unwrap(), WeightVector::new(-1, 13));
        assert_eq!(lift_weight(11, 2, SplitType::Split).unwrap(), WeightVector::new(0, 10));
        for p in [7, 11, 31] {
            assert_eq!(lift_weight(p, 1, SplitType::Split).unwrap(), WeightVector::new(p as i64 - 1, 0));
        }
        assert!(lift_weight(5, 1, SplitType::Ramified).is_err());
    }

    #[test]
    fn deuring_values() {
        assert_eq!(deuring_formula(11).unwrap(), 2);
        assert_eq!(deuring_formula(13).unwrap(), 1);
        assert_eq!(deuring_formula(37).unwrap(), 3);
        assert!(deuring_formula(3).is_err());
    }

    #[test]
    fn w13_degrees() {
        let c = CurveDescriptor::w13();
        assert_eq!(deg_ph_wd(&c, 5, 1).unwrap(), r(1));
        assert_eq!(deg_ph_wd(&c, 5, 2).unwrap(), r(4));
        assert_eq!(deg_ph_wd(&c, 17, 1).unwrap(), r(12));
        assert_eq!(deg_ph_wd(&c, 17, 2).unwrap(), r(4));
        assert_eq!(deg_ph_wd(&c, 11, 1).unwrap(), r(2));
        assert_eq!(deg_ph_wd(&c, 11, 2).unwrap(), r(8));
        assert_eq!(w13_eq4(11).unwrap(), (2, 8));
        assert!(w13_eq4(17).is_err());
    }

    #[test]
    fn bad_curve_data_is_detected() {
        let mut c = CurveDescriptor::w13();
        c.chi = rat(-1, 7);
        assert!(matches!(deg_ph_wd(&c, 5, 1), Err(Error::FormulaConsistency { .. })));
    }

    #[test]
    fn w5_degrees() {
        assert_eq!((deg_ph_w5(13, 1).unwrap(), deg_ph_w5(13, 2).unwrap()), (r(1), r(3)));
        assert_eq!((deg_ph_w5(11, 1).unwrap(), deg_ph_w5(11, 2).unwrap()), (r(2), r(1)));
        assert_eq!((deg_ph_w5(7, 1).unwrap(), deg_ph_w5(7, 2).unwrap()), (r(1), r(1)));
        assert!(deg_ph_w5(5, 1).is_err());
    }

    #[test]
    fn w5_degrees_are_integral_up_to_500() {
        for p in (7..500).filter(|&p| is_prime(p)) {
            for j in [1, 2] {
                deg_ph_w5(p, j).unwrap();
            }
        }
    }

    #[test]
    fn twisted_dimensions_w5() {
        let c = CurveDescriptor::w5();
        assert_eq!(dim_twisted(&c, WeightVector::new(13, -1)), 2);
        assert_eq!(dim_twisted(&c, WeightVector::new(0, 0)), 1);
        assert_eq!(dim_twisted(&c, WeightVector::new(11, -1)), 2);
    }

    #[test]
    fn w5_chi_matches_w_d_shape_for_k2_zero() {
        // With k2 = 0 the two formulas share the leading term and the
        // order-2 fractional correction; only the order-5 term remains.
        let w5 = CurveDescriptor::w5();
        for k1 in -20i64..=40 {
            let tri = rat(3 * k1, 20) - fract(&rat(-k1, 4));
            let wd = -(&w5.chi / rat(2, 1)) * rat(k1, 1) - fract(&rat(-k1, 4));
            assert_eq!(tri, wd);
        }
    }

    #[test]
    fn corollary_identity_w5() {
        let c = CurveDescriptor::w5();
        assert_eq!(cor_degree_identity(&c, 13, 2).unwrap(), 1);
        assert_eq!(cor_degree_identity(&c, 11, 2).unwrap(), 0);
        assert!(cor_degree_identity(&c, 7, 1).unwrap() >= 0);
    }

    #[test]
    fn w13_bounds() {
        let c = CurveDescriptor::w13();
        let b = ss_sp_bounds(&c, 11).unwrap();
        assert_eq!(b.ss_lo, (r(11) - rat(1, 3)) * rat(3, 4));
        assert_eq!(b.ss_hi, r(20));
        assert!(b.ss_lo <= b.ss_hi && b.sp_lo <= b.sp_hi);
        assert!(ss_sp_bounds(&c, 17).is_err());
    }

    #[test]
    fn config_round_trip() {
        let text = "# curve\nname = w13\nD = 13\nchi = -3/2\ne2 = 1\nelliptic_orders = 2\nlyapunov = 1,1/3\n";
        let c: CurveDescriptor = text.parse().unwrap();
        assert_eq!(c, CurveDescriptor::w13());
        assert!("name = x\nD = 8\nchi = 1/2\ne2 = 0\n".parse::<CurveDescriptor>().is_err());
        assert!("name = x\n".parse::<CurveDescriptor>().is_err());
    }
}
