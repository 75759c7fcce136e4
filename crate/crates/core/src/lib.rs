//! Exact computation of non-ordinary loci on curves in Hilbert modular
//! surfaces, and characteristic-zero lifts of partial Hasse invariants on the
//! triangle curve `W_5 = H / Delta(2,5,oo)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: big rationals, `F_p`, `F_{p^2}`, polynomials over `F_p`
//!   (gcd, squarefree parts, resultants) and over `Q`.
//! * [`series`]: truncated power series in `t` over `Q`, Gauss
//!   hypergeometric series, reduction mod `p`.
//! * [`hasse_witt`]: brute-force characteristic-`p` side (Hasse–Witt
//!   matrices of the genus-two family, Legendre/Deuring oracle).
//! * [`formulas`]: closed-form degree and dimension formulas.
//! * [`lifts`]: exact `t`-expansions of the lifts and their verification.
//! * [`survey`], [`cache`], [`cli`]: batch front end.

pub mod algebra;
pub mod cache;
pub mod cli;
mod error;
pub mod formulas;
pub mod hasse_witt;
pub mod lifts;
pub mod series;
pub mod survey;

pub use error::{Error, Result};
