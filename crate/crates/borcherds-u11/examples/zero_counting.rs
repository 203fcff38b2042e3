//! Zeros of Xi(j_1) lie at Heegner points: the argument principle counts a
//! simple zero at tau = i sqrt2 for d = -2 (the conductor-1 CM point of
//! index -1), none at the half-integer translate, and evaluation exactly at
//! the point reports the vanishing factor.
//!
//! Run with: cargo run --example zero_counting

use borcherds_u11::heegner::heegner_point;
use borcherds_u11::numeric::{Cplx, Real};
use borcherds_u11::qfield::{FieldElem, FieldSpec};
use borcherds_u11::weyl::Chamber;
use borcherds_u11::{xi_jn, zero_order, Error, ProductParams, Region};

fn main() {
    let k = FieldSpec::new(-2).unwrap();
    let params = ProductParams { max_kl: 12, region: Region::Theorem, ..Default::default() };
    let w = Chamber::new(-1, 1, None).unwrap();
    let prec = params.prec_bits;
    let sqrt2 = Real::with_val(prec, 2).sqrt();

    // the Heegner point of lambda = (-zeta, 1)
    let h = heegner_point(&k, &FieldElem::from_ints(0, -1), &FieldElem::from_ints(1, 0)).unwrap();
    let tau_h = h.tau(&k, prec);
    println!(
        "Heegner point of lambda = (-zeta, 1): tau = {:.6} + {:.6} i, conductor {}",
        tau_h.real().to_f64(),
        tau_h.imag().to_f64(),
        h.conductor()
    );

    // winding number around it
    let center = Cplx::with_val(prec, (Real::new(prec), sqrt2.clone()));
    let order = zero_order(&k, &center, 1, &w, 0.05, 64, &params).unwrap();
    println!("winding number of Xi(j_1) around i sqrt2 (radius 0.05): {order}");

    let off = Cplx::with_val(prec, (Real::with_val(prec, 0.5), sqrt2));
    let order_off = zero_order(&k, &off, 1, &w, 0.05, 64, &params).unwrap();
    println!("winding number around 1/2 + i sqrt2:                    {order_off}");

    // evaluating exactly on the divisor names the vanishing factor
    match xi_jn(&center, &k, 1, &w, &params) {
        Err(Error::DivisorHit { l, k: kk, a }) => {
            println!("at tau = i sqrt2 the factor (l, k) = ({l}, {kk}) with translate a = {a} vanishes")
        }
        other => println!("unexpected: {other:?}"),
    }
}
