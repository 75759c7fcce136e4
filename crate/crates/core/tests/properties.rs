use num_bigint::BigInt;
use partial_hasse::algebra::{
    fp_poly_gcd_lcm, fp_poly_squarefree_part, parse_rational, rat, reduce_rational_mod_p, FpPoly, Rational,
};
use partial_hasse::lifts::d_n_table;
use partial_hasse::series::Series;
use proptest::collection::vec;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn nonzero_poly(p: u64) -> impl Strategy<Value = FpPoly> {
    vec(0..p, 1..14)
        .prop_map(move |c| FpPoly::new(c, p))
        .prop_filter("nonzero", |f| !f.is_zero())
}

fn any_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![5u64, 7, 11, 13])
}

fn big_int() -> impl Strategy<Value = BigInt> {
    (any::<bool>(), vec(any::<u32>(), 1..=8)).prop_map(|(neg, digits)| {
        let sign = if neg { num_bigint::Sign::Minus } else { num_bigint::Sign::Plus };
        BigInt::from_slice(sign, &digits)
    })
}

fn big_rational() -> impl Strategy<Value = Rational> {
    (big_int(), big_int().prop_filter("nonzero", |d| *d != BigInt::from(0)))
        .prop_map(|(n, d)| Rational::new(n, d))
}

fn unit_series() -> impl Strategy<Value = Series> {
    vec((-9i64..=9, 1i64..=9), 1..10).prop_map(|terms| {
        let mut c = vec![rat(1, 1)];
        c.extend(terms.into_iter().map(|(n, d)| rat(n, d)));
        Series::new(c, 10)
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn squarefree_is_idempotent(f in any_prime().prop_flat_map(nonzero_poly)) {
        let s = fp_poly_squarefree_part(&f).unwrap();
        prop_assert_eq!(fp_poly_squarefree_part(&s).unwrap(), s.clone());
        prop_assert!(s.is_monic() && s.divides(&f));
    }

    #[test]
    fn gcd_times_lcm_is_product(
        (a, b) in any_prime().prop_flat_map(|p| (nonzero_poly(p), nonzero_poly(p)))
    ) {
        let (g, l) = fp_poly_gcd_lcm(&a, &b).unwrap();
        prop_assert_eq!(&g * &l, (&a * &b).monic());
        prop_assert!(g.divides(&a) && g.divides(&b) && a.divides(&l) && b.divides(&l));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn rational_text_round_trip(x in big_rational()) {
        let text = format!("{}/{}", x.numer(), x.denom());
        prop_assert_eq!(parse_rational(&text).unwrap(), x);
    }

    #[test]
    fn reduction_is_a_ring_morphism(x in big_rational(), y in big_rational(), p in any_prime()) {
        if let (Some(a), Some(b)) = (reduce_rational_mod_p(&x, p), reduce_rational_mod_p(&y, p)) {
            prop_assert_eq!(reduce_rational_mod_p(&(&x * &y), p), Some(a * b % p));
            prop_assert_eq!(reduce_rational_mod_p(&(&x + &y), p), Some((a + b) % p));
        }
    }

    #[test]
    fn nth_root_inverts_power(s in unit_series(), n in 1u32..5) {
        let r = s.nth_root(n).unwrap();
        prop_assert_eq!(r.pow(n as i64).unwrap(), s.clone());
        prop_assert_eq!(&s * &s.pow(-1).unwrap(), Series::one(10));
    }
}

#[test]
fn d_n_weighted_homogeneous_to_200() {
    for (n, d) in d_n_table(200).iter().enumerate() {
        assert!(d.is_homogeneous(n as u32), "d_{n}");
        assert!(d.is_zero() || d.r_parity().is_some(), "d_{n}");
        assert_eq!(d.is_zero(), n % 2 == 1 || n == 2 || n == 6, "d_{n}");
    }
}

/// Every monic polynomial over F_7 of degree 1..=4.
fn monics_up_to_4() -> Vec<FpPoly> {
    let mut out = Vec::new();
    for deg in 1..=4u32 {
        for code in 0..7u64.pow(deg) {
            let mut c = Vec::new();
            let mut x = code;
            for _ in 0..deg {
                c.push(x % 7);
                x /= 7;
            }
            c.push(1);
            out.push(FpPoly::new(c, 7));
        }
    }
    out
}

#[test]
fn squarefree_part_against_trial_division() {
    let monics = monics_up_to_4();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..60 {
        let mut c: Vec<u64> = (0..8).map(|_| rng.gen_range(0..7)).collect();
        c.push(rng.gen_range(1..7));
        let f = FpPoly::new(c, 7);
        let s = fp_poly_squarefree_part(&f).unwrap();
        // no square of a positive-degree polynomial divides s
        assert!(monics.iter().all(|g| !(g * g).divides(&s)), "{f} -> {s}");
        // same radical: s | f and f | s^deg f
        assert!(s.divides(&f));
        assert!(f.divides(&s.pow(8)));
    }
}
