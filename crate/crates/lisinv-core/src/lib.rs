//! Exact combinatorics of longest increasing subsequences in 3412-avoiding
//! involutions.
//!
//! The crate has five layers:
//!
//! * [`perm`] — permutations in one-line notation: involution testing, pattern
//!   containment, LIS, direct/skew sums, and the bar operator.
//! * [`oracle`] — exhaustive enumeration of pattern-restricted involutions and
//!   their exact LIS distributions, the ground truth everything else is
//!   measured against.
//! * [`series`] — truncated bivariate formal power series over
//!   arbitrary-precision rationals, generic over the coefficient ring (dense
//!   polynomials in the LIS marker `q`, or Taylor jets at `q = 1` for
//!   large-order moment runs).
//! * [`gf`] — the catalog of generating functions `H_T(x, q)` for involutions
//!   avoiding 3412 and a second pattern, with exact moment extraction,
//!   asymptotic slope estimation, and real-root isolation for the algebraic
//!   growth constants.
//! * [`sampler`] — exact uniform random generation of 3412-avoiding
//!   involutions via the Motzkin-style block decomposition, plus Monte Carlo
//!   LIS statistics.
//!
//! Everything is exact rational or big-integer arithmetic; decimal output is
//! rendered from exact values at the last step, and floating point appears
//! only in the chi-square helpers of test code.
//!
//! The crate is `no_std` + `alloc`; IO, JSON, and the command-line front end
//! live in the companion `lisinv-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod decimal;
pub mod gf;
pub mod oracle;
pub mod perm;
pub mod sampler;
pub mod series;
pub mod verify;
