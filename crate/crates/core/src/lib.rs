//! Exact computation of level-p Zhu algebras of universal enveloping
//! vertex algebras, with full verification of the structural identities
//! of the twisted level-p theory at desk scale.
//!
//! The crate is organized bottom-up:
//!
//! * [`scalar`] — big rationals, multivariate polynomials in the closed
//!   symbol set `{c, k, gamma, lambda}` with a Laurent variable `h`,
//!   generalized binomial coefficients, and truncated series.
//! * [`identities`] — stand-alone combinatorial identity checks
//!   (the H/D summation lemma, geometric-series sums, star-delta).
//! * [`twist`] — cosets mod Z and the level-P bookkeeping quantities
//!   (eps, chi, P_a, N_a, R_a, xi_a, sigma).
//! * [`lca`] — Lie conformal algebra presentations, lambda-brackets,
//!   axiom checking, and the Virasoro / current-sl2 presets.
//! * [`envelope`] — the mode algebra Lie(R), PBW normal ordering in
//!   U(Lie R), and the level-p Zhu algebra Z_p = U_0/(U U_{>p})_0 with
//!   basis enumeration, relation discovery and a linear-algebra oracle.
//! * [`vertex`] — the enveloping vertex algebra V(R) as a weight-graded
//!   state space: n-th products, the modified products a_[n]b, the Zhu
//!   product *_p, the ideal J_p, and the identity suites.
//! * [`modules`] — induced positive-energy modules (Verma-type) and the
//!   module-side checks (Borcherds defect, zhu-action, A.1, T-H).
//!
//! All arithmetic is exact; no floating point appears anywhere.

pub mod error;
pub mod par;
pub mod report;
pub mod scalar;

pub mod identities;
pub mod twist;

pub mod lca;

pub mod envelope;
pub mod modules;
pub mod vertex;

pub use error::{Error, Result};
pub use scalar::{binom, ExponentValue, PolyScalar, Rat, Symbol};
