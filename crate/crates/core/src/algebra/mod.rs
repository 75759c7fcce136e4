//! Exact arithmetic foundation.

mod bivar;
mod fp;
mod fp2;
mod fp_poly;
mod qpoly;
mod rational;
mod resultant;

pub use bivar::FpBivarPoly;
pub use fp::{is_prime, legendre, mod_inv, mod_pow, FpElem};
pub use fp2::{fp2_enumerate_roots, Fp2, Fp2Elem};
pub use fp_poly::{count_distinct_roots_projective, fp_poly_gcd_lcm, fp_poly_squarefree_part, FpPoly};
pub use qpoly::QPoly;
pub(crate) use rational::is_nonneg_integer;
pub use rational::{fract, parse_rational, rat, reduce_rational_mod_p, Rational};
pub use resultant::{pushforward_eta_to_t, resultant, sylvester_determinant};
