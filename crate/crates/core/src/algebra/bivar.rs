use super::fp_poly::FpPoly;

/// Dense polynomial in `(x, eta)` over `F_p`, stored row-major by x-degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpBivarPoly {
    p: u64,
    x_len: usize,
    eta_len: usize,
    grid: Vec<u64>,
}

impl FpBivarPoly {
    /// Zero polynomial with room for degrees `x_deg` in `x` and `eta_deg` in `eta`.
    pub fn zeros(x_deg: usize, eta_deg: usize, p: u64) -> Self {
        assert!(p < 1 << 16, "dense accumulation assumes p < 2^16");
        Self {
            p,
            x_len: x_deg + 1,
            eta_len: eta_deg + 1,
            grid: vec![0; (x_deg + 1) * (eta_deg + 1)],
        }
    }

    /// Builds from `(x_exp, eta_exp, coefficient)` terms.
    pub fn from_terms(terms: &[(usize, usize, i64)], p: u64) -> Self {
        let x_deg = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let eta_deg = terms.iter().map(|t| t.1).max().unwrap_or(0);
        let mut out = Self::zeros(x_deg, eta_deg, p);
        for &(i, k, c) in terms {
            let idx = out.index(i, k);
            out.grid[idx] = (out.grid[idx] + c.rem_euclid(p as i64) as u64) % p;
        }
        out
    }

    pub(crate) fn from_raw(x_len: usize, eta_len: usize, grid: Vec<u64>, p: u64) -> Self {
        assert_eq!(grid.len(), x_len * eta_len);
        Self {
            p,
            x_len,
            eta_len,
            grid,
        }
    }

    pub(crate) fn raw(&self) -> (usize, usize, &[u64]) {
        (self.x_len, self.eta_len, &self.grid)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    fn index(&self, i: usize, k: usize) -> usize {
        i * self.eta_len + k
    }

    pub fn coeff(&self, x_exp: usize, eta_exp: usize) -> u64 {
        if x_exp >= self.x_len || eta_exp >= self.eta_len {
            return 0;
        }
        self.grid[self.index(x_exp, eta_exp)]
    }

    /// Actual degree in `x`, `None` for zero.
    pub fn x_degree(&self) -> Option<usize> {
        (0..self.x_len)
            .rev()
            .find(|&i| (0..self.eta_len).any(|k| self.coeff(i, k) != 0))
    }

    pub fn eta_degree(&self) -> Option<usize> {
        (0..self.eta_len)
            .rev()
            .find(|&k| (0..self.x_len).any(|i| self.coeff(i, k) != 0))
    }

    /// Coefficient of `x^l`, as a polynomial in `eta`.
    pub fn x_coefficient(&self, l: usize) -> FpPoly {
        if l >= self.x_len {
            return FpPoly::zero(self.p);
        }
        let start = self.index(l, 0);
        FpPoly::new(self.grid[start..start + self.eta_len].to_vec(), self.p)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.p, rhs.p, "mixing moduli");
        let p = self.p;
        let x_len = self.x_len + rhs.x_len - 1;
        let eta_len = self.eta_len + rhs.eta_len - 1;
        let mut acc = vec![0u64; x_len * eta_len];
        // Products are below 2^32; reducing every 1024 rows of `self` keeps
        // each accumulator below 2^64 for eta-degrees up to 2^20.
        for i in 0..self.x_len {
            for k in 0..self.eta_len {
                let a = self.grid[self.index(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.x_len {
                    let row = (i + j) * eta_len + k;
                    let src = &rhs.grid[j * rhs.eta_len..(j + 1) * rhs.eta_len];
                    for (dst, &b) in acc[row..row + rhs.eta_len].iter_mut().zip(src) {
                        *dst += a * b;
                    }
                }
            }
            if i % 1024 == 1023 {
                acc.iter_mut().for_each(|c| *c %= p);
            }
        }
        acc.iter_mut().for_each(|c| *c %= p);
        Self::from_raw(x_len, eta_len, acc, p)
    }

    fn one_like(&self) -> Self {
        Self::from_terms(&[(0, 0, 1)], self.p)
    }

    /// Binary exponentiation.
    pub fn pow(&self, mut exp: u64) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Repeated multiplication; slower reference path for [`Self::pow`].
    pub fn pow_naive(&self, exp: u64) -> Self {
        (0..exp).fold(self.one_like(), |acc, _| acc.mul(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_of_binomial() {
        // (x + eta)^2 = x^2 + 2 x eta + eta^2
        let f = FpBivarPoly::from_terms(&[(1, 0, 1), (0, 1, 1)], 7);
        let sq = f.pow(2);
        assert_eq!(sq.coeff(2, 0), 1);
        assert_eq!(sq.coeff(1, 1), 2);
        assert_eq!(sq.coeff(0, 2), 1);
        assert_eq!(sq.x_degree(), Some(2));
        assert_eq!(sq.eta_degree(), Some(2));
        assert_eq!(sq.x_coefficient(1), FpPoly::from_i64(&[0, 2], 7));
    }

    #[test]
    fn pow_matches_naive() {
        let f = FpBivarPoly::from_terms(&[(3, 0, 1), (1, 0, -3), (0, 1, 2), (0, 0, 5)], 13);
        for e in 0..7 {
            assert_eq!(f.pow(e), f.pow_naive(e));
        }
    }
}
