//! The lift of the constant 1: on the tube domain it is the eta product
//! Psi(z1, z2; 1) = eta(z1) eta(z2), and its pullback along
//! tau -> (tau, -conj zeta) gives Xi(tau; 1) = eta(tau) eta(-conj zeta),
//! a form of weight 1/2 with Weyl vector (1/24, 1/24).
//!
//! Run with: cargo run --example eta_lift

use borcherds_u11::numeric::{self, Real};
use borcherds_u11::qexp::QSeries;
use borcherds_u11::qfield::{rat, FieldSpec};
use borcherds_u11::{eta_auto, psi_const, xi_const, xi_f, ProductParams};

fn main() {
    let prec = 128u32;
    let tau_i = numeric::cplx_f64(prec, 0.0, 1.0);

    // eta(i) = Gamma(1/4) / (2 pi^{3/4})
    let eta_i = eta_auto(&tau_i, prec).unwrap();
    let gamma_quarter = Real::with_val(prec, 0.25f64).gamma();
    let closed = gamma_quarter / (numeric::pi(prec).ln() * Real::with_val(prec, 0.75)).exp() / 2u32;
    println!("eta(i)            = {:.20}", eta_i.real().to_f64());
    println!("Gamma(1/4)/(2 pi^(3/4)) = {:.20}", closed.to_f64());

    let params = ProductParams::default();
    for d in [-1i64, -2, -3, -7] {
        let k = FieldSpec::new(d).unwrap();
        let tau = numeric::cplx_f64(prec, 1.0 / 3.0, 2.0);
        let xi = xi_const(&tau, &k, &params).unwrap();
        let psi = psi_const(&tau, &k.minus_zeta_bar(prec), &params).unwrap();
        // the product expansion route: f = 1 through the general machinery
        let via_f = xi_f(&tau, &k, &QSeries::one(params.max_kl + 1), &rat(1), &rat(1), &params).unwrap();
        let rel = ((via_f.value.clone() - &xi.value).abs() / xi.value.clone().abs())
            .real()
            .to_f64();
        println!(
            "d = {d:>3}: |Xi(tau; 1)| = {:.12e}, weight = {}, pullback |Psi - Xi| = {:.1e}, product route rel. dev. = {:.1e}",
            xi.value.clone().abs().real().to_f64(),
            xi.weight,
            (psi - &xi.value).abs().real().to_f64(),
            rel,
        );
    }
}
