//! Exact, reproducible constructions of supersingular elliptic curves over
//! `F_{p^2}` at desk scale.
//!
//! The crate is organised around a handful of classical routes to
//! supersingular curves and the statistics they generate:
//!
//! * [`algebra`] — arithmetic in `F_p`, `F_{p^2}` and their extensions, and
//!   dense uni/bivariate polynomial algebra (gcd, resultants, root-finding,
//!   interpolation).
//! * [`hasse`] — the Hasse/supersingular polynomial `H_p`, iterative
//!   root-finding schemes and their full-domain orbit statistics.
//! * [`curves`] — Legendre and short Weierstrass models, exact point
//!   counting, division polynomials, Vélu isogenies and the deterministic
//!   2-isogeny walk.
//! * [`mappings`] — exact analytic combinatorics of random mappings with a
//!   prescribed number of fixed points.
//! * [`modpoly`] — classical modular polynomials mod `p`: database
//!   ingestion, interpolation from isogeny data, composite-level
//!   construction, q-expansion generation and a disk cache.
//! * [`conjgcd`] — roots of `gcd(Phi_n(x, x^p), Phi_m(x, x^p))` via bivariate
//!   resultant elimination, with brute-force oracles and experiment grids.
//! * [`torsion`] — division-polynomial systems that force rational torsion,
//!   eliminated by products over the field.
//! * [`qwalk`] — Brandt matrices of supersingular isogeny graphs, their
//!   spectra, and classical simulation of quantum-walk measurement
//!   distributions.
//!
//! All core arithmetic is exact (integers mod p, exact rationals); floating
//! point appears only in the spectral layer and in final ratio reporting.
//! Every operation is deterministic: randomized subroutines draw from
//! seedable counter-based streams and all returned sets are canonically
//! ordered.

pub mod algebra;
pub mod conjgcd;
pub mod curves;
pub mod hasse;
pub mod mappings;
pub mod modpoly;
pub mod nt;
pub mod qwalk;
pub mod rng;
pub mod torsion;

pub use algebra::field::{Fp2, FieldCtx};
pub use algebra::poly::UniPoly;
pub use algebra::bipoly::BiPoly;
