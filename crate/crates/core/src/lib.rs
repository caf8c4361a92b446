//! Exact computational core of conical Novikov homology.
//!
//! The crate is organized bottom-up:
//!
//! * [`arith`]: big integers, rationals, dense matrices, polynomials over Q,
//!   Bareiss determinants and Smith normal forms.
//! * [`cone`]: cones cut out by families of integer linear forms,
//!   admissibility, and the unimodular subdivision that produces regular
//!   families around a target direction.
//! * [`ring`]: group-ring elements, truncated (twisted) special power series
//!   and the coordinate projections used to detect injectivity.
//! * [`complex`]: finite free chain complexes over Q, Q[t] and Q[t]/(t^n),
//!   with the collapsible-summand and lifting constructions.
//! * [`pitcher`]: Pitcher numbers, Novikov Betti numbers and the associated
//!   inequalities.
//! * [`incidence`]: incidence-coefficient series from a descent matrix,
//!   rationality detection and convergence radii.

pub mod arith;
pub mod complex;
pub mod cone;
pub mod incidence;
pub mod pitcher;
pub mod ring;
