//! Borcherds products for the unitary group U(1,1).
//!
//! The lift takes weakly holomorphic modular forms of weight 0 for SL_2(Z)
//! (spanned by the Faber basis j_n = q^{-n} + O(q) and the constants) to
//! meromorphic modular forms on the upper half-plane with zeros and poles at
//! CM points. This crate implements the full computational chain:
//!
//! - [`qfield`]: exact arithmetic in the imaginary quadratic field
//!   F = Q(sqrt(d)), its ring of integers and inverse different;
//! - [`hermlattice`]: the even unimodular hermitian lattice
//!   L = O_F + D_F^{-1}, its Z-quadratic structure, hyperbolic e-basis, and
//!   the maps into the tube domain of SO(2,2);
//! - [`qexp`]: exact integer q-expansions, Delta, E_4, j, the basis j_n, and
//!   divisor sums;
//! - [`weyl`]: Weyl chambers indexed by the divisors of |m|, the
//!   wall-crossing function Phi_m^K, and Weyl vectors for F_m, j_n, and
//!   arbitrary input;
//! - [`heegner`]: Heegner points tau_lambda with exact minimal polynomials,
//!   CM orders and conductors, enumeration, and SL_2(Z) reduction;
//! - [`borcherds`]: high-precision evaluation of the infinite products
//!   Xi(tau; j_n, W) and Xi(tau; f, W) with truncation-error bounds, the
//!   eta-product lifts of constants, and argument-principle zero counting;
//! - [`cli`]: the batch command-line frontend with JSON output.
//!
//! Runnable walkthroughs for each capability live in `examples/`.

pub mod error;
pub mod numeric;
pub mod qfield;
pub mod hermlattice;
pub mod qexp;
pub mod weyl;
pub mod heegner;
pub mod borcherds;
pub mod cli;

pub use borcherds::{eta, eta_auto, psi_const, xi_const, xi_f, xi_jn, zero_order, EvalResult, ProductParams, Region, XiProduct};
pub use error::{Error, Result};
pub use heegner::{cm_order, enumerate_heegner, heegner_point, reduce_point, HeegnerPoint};
pub use hermlattice::{bilinear, ebasis, embed_tau, herm, qform, z_of_tau, LatticeVector, TubePoint};
pub use qexp::{delta_series, e4_series, e6_series, faber_jn, j_series, sigma, sigma3, QSeries};
pub use qfield::{FieldElem, FieldSpec, Rat};
pub use weyl::{chamber_of_tau, chamber_of_y, chambers, divisors, phi_k, phi_k_chamber, weyl_vector_f, weyl_vector_fm, weyl_vector_jn, Chamber, ChamberLocation, WeylVector};
