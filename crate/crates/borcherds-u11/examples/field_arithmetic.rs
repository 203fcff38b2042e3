//! Exact arithmetic in F = Q(sqrt(d)): discriminants, the zeta generator,
//! norms and traces, membership in O_F and the inverse different, and
//! high-precision embeddings.
//!
//! Run with: cargo run --example field_arithmetic

use borcherds_u11::qfield::{FieldElem, FieldSpec};

fn main() {
    for d in [-1i64, -2, -3, -7, -11] {
        let k = FieldSpec::new(d).unwrap();
        let zeta = k.zeta_c(96);
        println!(
            "d = {:>3}: D_F = {:>3}, zeta = {:.6} + {:.6} i, |delta| = {:.6}",
            d,
            k.disc(),
            zeta.real().to_f64(),
            zeta.imag().to_f64(),
            k.abs_delta_f64(),
        );
    }

    // Gaussian integers: norm and trace of 1 + zeta = 1 + i
    let gauss = FieldSpec::new(-1).unwrap();
    let e = &FieldElem::one() + &FieldElem::zeta();
    println!("\nd = -1: norm(1 + zeta) = {}, trace(1 + zeta) = {}", gauss.norm(&e), gauss.trace(&e));

    // delta is symbolic in the exact layer: delta^2 = D_F
    let delta_sq = gauss.mul(&gauss.delta(), &gauss.delta());
    println!("delta^2 = {:?} (= D_F)", delta_sq);

    // the inverse different D_F^{-1} = delta^{-1} O_F
    let half_zeta = FieldElem::new(
        borcherds_u11::qfield::rat(0),
        borcherds_u11::Rat::new(1.into(), 2.into()),
    );
    println!(
        "zeta/2 in O_F: {}, in D_F^{{-1}}: {} (delta * zeta/2 = {:?})",
        gauss.in_of(&half_zeta),
        gauss.in_inv_different(&half_zeta),
        gauss.mul(&gauss.delta(), &half_zeta),
    );

    // division is exact
    let x = FieldElem::from_ints(2, 5);
    let y = FieldElem::from_ints(-1, 3);
    let q = gauss.div(&x, &y).unwrap();
    println!("(2 + 5 zeta)/(-1 + 3 zeta) = {q:?}, check: {:?}", gauss.mul(&q, &y));
}
