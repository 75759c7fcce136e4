use partial_hasse::algebra::{parse_rational, rat, QPoly, Rational};
use partial_hasse::lifts::{build_base_series, build_lift_with, d_n_table, specialize};
use partial_hasse::series::Series;

fn q(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

#[test]
fn r_squared_is_one_minus_t_q5() {
    let b = build_base_series(120).unwrap();
    let one_minus_t = Series::from_qpoly(&QPoly::one_minus_t(), 120);
    assert_eq!(&b.r * &b.r, &one_minus_t * &b.q.pow(5).unwrap());
}

#[test]
fn p13_factored_form() {
    // (1-t)(alpha + beta (1-t))^2 with alpha = 100321875/2048, beta = 7175/16
    let d = d_n_table(38);
    let s = specialize(&d[38], 38).unwrap();
    assert_eq!(s.b0, 1);
    assert_eq!(s.g, QPoly::new(vec![q("100321875/2048"), q("7175/16")]));
    let alpha = q("100321875/2048");
    let beta = q("7175/16");
    let u = QPoly::one_minus_t();
    let factored = &(&(&u * &QPoly::new(vec![&alpha * &alpha]))
        + &(&u.pow(2) * &QPoly::new(vec![rat(2, 1) * &alpha * &beta])))
        + &(&u.pow(3) * &QPoly::new(vec![&beta * &beta]));
    let expanded = QPoly::new(vec![
        q("10249593282075625/4194304"),
        q("-10435551419195625/4194304"),
        q("729693733125/16384"),
        q("-51480625/256"),
    ]);
    assert_eq!(factored, expanded);
    assert_eq!(rat(2, 1) * &alpha * &beta, q("719809453125/16384"));
}

#[test]
fn lifts_for_11_and_13_are_nonzero_constants() {
    for p in [11u64, 13] {
        let order = 3 * p as usize + 1;
        let base = build_base_series(order).unwrap();
        let d = d_n_table(3 * p as usize);
        for j in [1u8, 2] {
            let ls = build_lift_with(p, j, &base, &d).unwrap();
            let red = ls.square_series.reduce_mod_p(p).unwrap();
            assert!(red.is_constant() && red.coeffs()[0] != 0, "p={p} j={j}");
        }
    }
}

#[test]
fn h13_1_matches_hypergeometric_form() {
    use partial_hasse::lifts::{f1_params, f2_params};
    use partial_hasse::series::hypergeometric_2f1;
    // h_{13,1}^2 = (1-t) F2^26 / F1^2 up to the constant of d_10
    let order = 40;
    let base = build_base_series(order).unwrap();
    let ls = build_lift_with(13, 1, &base, &d_n_table(39)).unwrap();
    let f1 = hypergeometric_2f1(&f1_params(), order);
    let f2 = hypergeometric_2f1(&f2_params(), order);
    let one_minus_t = Series::from_qpoly(&QPoly::one_minus_t(), order);
    let want = &(&one_minus_t * &f2.pow(26).unwrap()) * &f1.pow(-2).unwrap();
    assert_eq!(ls.square_series, want);
}
