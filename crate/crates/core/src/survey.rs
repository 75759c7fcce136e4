//! Per-prime comparisons between brute force and the closed formulas.

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::algebra::{is_prime, FpBivarPoly};
use crate::formulas::{
    deg_ph_w5, deg_ph_wd, deuring_formula, split_type, ss_sp_bounds, w13_eq4, w13_table_entry,
    CurveDescriptor, SplitType, W13_DISCREPANT_ROWS,
};
use crate::hasse_witt::{deuring_oracle, hasse_witt_profile_from_expansion, locus_polynomials, HasseWittProfile};
use crate::Result;

/// How the fiber at `t = oo` enters a brute-force degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Convention {
    /// Degree = affine roots + 1 if the fiber at infinity lies on the divisor.
    CountInfinity,
    AffineOnly,
}

impl Convention {
    pub fn total(self, affine: usize, at_infinity: u8) -> usize {
        match self {
            Convention::CountInfinity => affine + at_infinity as usize,
            Convention::AffineOnly => affine,
        }
    }
}

/// The convention under which the W_5 formulas are compared.
pub const W5_CONVENTION: Convention = Convention::CountInfinity;

#[derive(Clone, Debug, Serialize)]
pub struct LocusReport {
    pub p: u64,
    pub split_type: SplitType,
    pub ph1_deg_formula: Option<u64>,
    pub ph2_deg_formula: Option<u64>,
    pub ph1_affine: usize,
    pub ph1_inf: u8,
    pub ph2_affine: usize,
    pub ph2_inf: u8,
    pub no_deg: usize,
    pub ss_deg: usize,
    pub sp_deg: usize,
    pub convention: Convention,
    /// Divisibility chain `sp | ph_j | no` and the ss selection rule.
    pub lattice_ok: bool,
    /// `None` where no bounds are available (split primes).
    pub bounds_ok: Option<bool>,
    #[serde(rename = "match")]
    pub matches: bool,
    /// Truncation order of the Dwork check, when it was run.
    pub dwork_order: Option<usize>,
    pub dwork_ok: Option<bool>,
    pub error: Option<String>,
}

impl LocusReport {
    pub fn passed(&self) -> bool {
        self.error.is_none()
            && self.matches
            && self.lattice_ok
            && self.bounds_ok != Some(false)
            && self.dwork_ok != Some(false)
    }

    fn failed(p: u64, st: SplitType, err: String) -> Self {
        LocusReport {
            p,
            split_type: st,
            ph1_deg_formula: None,
            ph2_deg_formula: None,
            ph1_affine: 0,
            ph1_inf: 0,
            ph2_affine: 0,
            ph2_inf: 0,
            no_deg: 0,
            ss_deg: 0,
            sp_deg: 0,
            convention: W5_CONVENTION,
            lattice_ok: false,
            bounds_ok: None,
            matches: false,
            dwork_order: None,
            dwork_ok: None,
            error: Some(err),
        }
    }
}

fn as_u64(x: crate::algebra::Rational) -> u64 {
    x.to_integer().to_u64().expect("formula value fits in u64")
}

/// Checks `sp | ph_1, ph_2 | no` and the ss selection rule.
pub fn lattice_holds(profile: &HasseWittProfile) -> Result<bool> {
    let loci = locus_polynomials(profile)?;
    let chain = [&profile.ph1_t, &profile.ph2_t]
        .iter()
        .all(|ph| loci.sp_t.divides(ph) && ph.divides(&loci.no_t));
    let selected = match profile.split_type {
        SplitType::Inert => loci.ss_t == loci.no_t,
        _ => loci.ss_t == loci.sp_t,
    };
    let squarefree_monic = [&profile.ph1_t, &profile.ph2_t]
        .iter()
        .all(|ph| ph.is_monic() && crate::algebra::fp_poly_squarefree_part(ph).ok().as_ref() == Some(*ph));
    Ok(chain && selected && squarefree_monic)
}

/// Survey row for one prime, given its expansion.
pub fn survey_w5_row(p: u64, expansion: &FpBivarPoly) -> LocusReport {
    let st = split_type(p, 5);
    match try_survey_w5_row(p, expansion) {
        Ok(r) => r,
        Err(e) => LocusReport::failed(p, st, e.to_string()),
    }
}

fn try_survey_w5_row(p: u64, expansion: &FpBivarPoly) -> Result<LocusReport> {
    let profile = hasse_witt_profile_from_expansion(p, expansion)?;
    let loci = locus_polynomials(&profile)?;
    let f1 = as_u64(deg_ph_w5(p, 1)?);
    let f2 = as_u64(deg_ph_w5(p, 2)?);
    let c1 = profile.ph1_count;
    let c2 = profile.ph2_count;
    let conv = W5_CONVENTION;
    let matches = conv.total(c1.affine, c1.at_infinity) as u64 == f1
        && conv.total(c2.affine, c2.at_infinity) as u64 == f2;
    let (ss_deg, sp_deg) = (loci.ss_degree(), loci.sp_degree());
    let bounds_ok = if profile.split_type == SplitType::Inert {
        let b = ss_sp_bounds(&CurveDescriptor::w5(), p)?;
        Some(b.contains_ss(ss_deg) && b.contains_sp(sp_deg))
    } else {
        None
    };
    Ok(LocusReport {
        p,
        split_type: profile.split_type,
        ph1_deg_formula: Some(f1),
        ph2_deg_formula: Some(f2),
        ph1_affine: c1.affine,
        ph1_inf: c1.at_infinity,
        ph2_affine: c2.affine,
        ph2_inf: c2.at_infinity,
        no_deg: loci.no_degree(),
        ss_deg,
        sp_deg,
        convention: conv,
        lattice_ok: lattice_holds(&profile)?,
        bounds_ok,
        matches,
        dwork_order: None,
        dwork_ok: None,
        error: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeuringRow {
    pub p: u64,
    pub formula: u64,
    pub oracle: usize,
    #[serde(rename = "match")]
    pub matches: bool,
}

pub fn deuring_row(p: u64) -> Result<DeuringRow> {
    let formula = deuring_formula(p)?;
    let oracle = deuring_oracle(p)?;
    Ok(DeuringRow { p, formula, oracle, matches: formula == oracle as u64 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct W13Row {
    pub p: u64,
    pub split_type: SplitType,
    pub ph1_formula: u64,
    pub ph2_formula: u64,
    pub table_ph1: Option<u64>,
    pub table_ph2: Option<u64>,
    pub table_match: Option<bool>,
    /// Known disagreement between the printed table and the formula.
    pub discrepancy: bool,
}

impl W13Row {
    /// A row fails only on an undocumented disagreement with the table.
    pub fn passed(&self) -> bool {
        self.table_match != Some(false) || self.discrepancy
    }
}

pub fn w13_row(p: u64) -> Result<W13Row> {
    let c = CurveDescriptor::w13();
    let st = split_type(p, c.d);
    let (ph1, ph2) = match st {
        SplitType::Inert => w13_eq4(p)?,
        _ => (as_u64(deg_ph_wd(&c, p, 1)?), as_u64(deg_ph_wd(&c, p, 2)?)),
    };
    let table = w13_table_entry(p);
    let table_match = table.map(|t| t == (ph1, ph2));
    Ok(W13Row {
        p,
        split_type: st,
        ph1_formula: ph1,
        ph2_formula: ph2,
        table_ph1: table.map(|t| t.0),
        table_ph2: table.map(|t| t.1),
        table_match,
        discrepancy: table_match == Some(false) && W13_DISCREPANT_ROWS.contains(&p),
    })
}

pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hasse_witt::expand_half_power;

    #[test]
    fn w5_rows_small() {
        for (p, f) in [(7, (1, 1)), (11, (2, 1)), (13, (1, 3))] {
            let r = survey_w5_row(p, &expand_half_power(p).unwrap());
            assert!(r.passed(), "{r:?}");
            assert_eq!((r.ph1_deg_formula, r.ph2_deg_formula), (Some(f.0), Some(f.1)));
        }
    }

    #[test]
    fn corrupted_expansion_gives_failing_row() {
        let mut e = expand_half_power(11).unwrap();
        e = e.mul(&FpBivarPoly::from_terms(&[(1, 0, 1)], 11));
        let r = survey_w5_row(11, &e);
        assert!(!r.passed());
        assert!(r.error.is_some());
    }

    #[test]
    fn deuring_rows() {
        let rows: Vec<_> = primes_in(5, 13).into_iter().map(|p| deuring_row(p).unwrap()).collect();
        let got: Vec<_> = rows.iter().map(|r| (r.p, r.formula, r.oracle, r.matches)).collect();
        assert_eq!(got, vec![(5, 1, 1, true), (7, 1, 1, true), (11, 2, 2, true), (13, 1, 1, true)]);
    }

    #[test]
    fn w13_rows() {
        let r = w13_row(5).unwrap();
        assert_eq!((r.ph1_formula, r.ph2_formula, r.table_match), (1, 4, Some(true)));
        let r = w13_row(37).unwrap();
        assert_eq!((r.ph1_formula, r.ph2_formula, r.table_match), (9, 28, Some(true)));
        let r = w13_row(29).unwrap();
        assert_eq!((r.ph1_formula, r.ph2_formula), (21, 7));
        assert!(r.discrepancy && r.passed());
        assert!(w13_row(13).is_err());
    }
}
