use partial_hasse::algebra::{fp2_enumerate_roots, is_prime, FpBivarPoly};
use partial_hasse::formulas::{deg_ph_wd, deuring_formula, CurveDescriptor, SplitType};
use partial_hasse::hasse_witt::{deuring_oracle, expand_half_power, hasse_witt_profile};
use partial_hasse::lifts::{d_n_table, dwork_congruence_check, zero_locus_from_table};

#[test]
fn binary_powering_matches_naive_multiplication() {
    let base = FpBivarPoly::from_terms(&[(5, 0, 1), (3, 0, -5), (1, 0, 5), (0, 1, -2)], 11);
    assert_eq!(expand_half_power(11).unwrap(), base.pow_naive(5));
}

#[test]
fn deuring_formula_matches_legendre_count() {
    for p in (5..200).filter(|&p| is_prime(p)) {
        assert_eq!(deuring_formula(p).unwrap(), deuring_oracle(p).unwrap() as u64, "p={p}");
    }
}

#[test]
fn entries_vanish_at_non_ordinary_fibers() {
    let mut checked = 0;
    for p in (7..=31).filter(|&p| is_prime(p)) {
        let prof = hasse_witt_profile(p).unwrap();
        for j in [1u8, 2] {
            let entry = prof.component_entry(j);
            if entry.degree().unwrap_or(0) == 0 {
                continue;
            }
            for eta in fp2_enumerate_roots(entry).unwrap().into_iter().take(5) {
                let m = prof.matrix_at(eta).unwrap();
                let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
                assert!(det.is_zero(), "p={p} j={j}");
                checked += 1;
            }
        }
    }
    assert!(checked > 20);
}

#[test]
fn rm_pattern_and_split_types() {
    for p in (7..=97).filter(|&p| is_prime(p)) {
        let prof = hasse_witt_profile(p).unwrap();
        let inert = p % 5 == 2 || p % 5 == 3;
        assert_eq!(prof.split_type == SplitType::Inert, inert, "p={p}");
    }
}

#[test]
fn lift_root_counts_match_affine_counts() {
    let d = d_n_table(3 * 53);
    for p in (7..=53).filter(|&p| is_prime(p)) {
        let prof = hasse_witt_profile(p).unwrap();
        for j in [1u8, 2] {
            let z = zero_locus_from_table(p, j, &d).unwrap();
            assert_eq!(z.degree().unwrap_or(0), prof.ph_count(j).affine, "p={p} j={j}");
        }
    }
}

#[test]
fn dwork_ratios_truncate_at_full_order() {
    for p in [7u64, 11, 13, 17, 19, 23] {
        let prof = hasse_witt_profile(p).unwrap();
        let rep = dwork_congruence_check(&prof, None).unwrap();
        assert!(!rep.reduced_confidence);
        for c in &rep.components {
            assert!(c.degree.unwrap_or(0) <= c.bound, "p={p}");
        }
    }
}

#[test]
fn w_d_formulas_integral_to_500() {
    let c = CurveDescriptor::w13();
    for p in (5..500).filter(|&p| is_prime(p) && p != 13) {
        for j in [1u8, 2] {
            deg_ph_wd(&c, p, j).unwrap();
        }
    }
}
