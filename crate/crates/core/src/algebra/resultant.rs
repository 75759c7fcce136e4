use super::fp_poly::{fp_poly_squarefree_part, FpPoly};
use crate::{Error, Result};

/// Determinant of a square matrix over `F_p[t]` by fraction-free (Bareiss)
/// elimination. Every intermediate division is exact.
pub fn sylvester_determinant(mut m: Vec<Vec<FpPoly>>, p: u64) -> FpPoly {
    let n = m.len();
    if n == 0 {
        return FpPoly::one(p);
    }
    let mut negate = false;
    let mut prev = FpPoly::one(p);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return FpPoly::zero(p),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev);
            }
            m[i][k] = FpPoly::zero(p);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

/// Resultant with respect to the main variable of two polynomials whose
/// coefficients (lowest degree first) lie in `F_p[t]`.
pub fn resultant(f: &[FpPoly], g: &[FpPoly], p: u64) -> Result<FpPoly> {
    let trim = |v: &[FpPoly]| -> Vec<FpPoly> {
        let mut v = v.to_vec();
        while v.last().is_some_and(FpPoly::is_zero) {
            v.pop();
        }
        v
    };
    let (f, g) = (trim(f), trim(g));
    if f.is_empty() || g.is_empty() {
        return Err(Error::Domain("resultant with the zero polynomial".into()));
    }
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    // n shifted copies of f, then m shifted copies of g, leading coefficient first.
    for shift in 0..n {
        let mut row = vec![FpPoly::zero(p); size];
        for (i, c) in f.iter().rev().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![FpPoly::zero(p); size];
        for (i, c) in g.iter().rev().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    Ok(sylvester_determinant(rows, p))
}

/// Image of the roots of `f(eta)` under `eta -> t = 1 - eta^2`, returned as a
/// monic squarefree polynomial in `t`.
pub fn pushforward_eta_to_t(f: &FpPoly) -> Result<FpPoly> {
    let p = f.modulus();
    let sf = fp_poly_squarefree_part(f)?;
    if sf.degree() == Some(0) {
        return Ok(FpPoly::one(p));
    }
    let f_coeffs: Vec<FpPoly> = sf.coeffs().iter().map(|&c| FpPoly::constant(c, p)).collect();
    // (1 - t) - eta^2
    let g = vec![
        FpPoly::from_i64(&[1, -1], p),
        FpPoly::zero(p),
        FpPoly::from_i64(&[-1], p),
    ];
    let res = resultant(&f_coeffs, &g, p)?;
    fp_poly_squarefree_part(&res)
}
