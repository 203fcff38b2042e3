//! Evaluating the infinite product Xi(tau; j_n, W): the expansions adapted
//! to different chambers agree in modulus, the value is 1-periodic, and the
//! truncation tail is controlled by the coefficient-growth bound.
//!
//! Run with: cargo run --release --example jn_product

use borcherds_u11::numeric;
use borcherds_u11::qfield::FieldSpec;
use borcherds_u11::weyl::chambers;
use borcherds_u11::{ProductParams, Region, XiProduct};

fn main() {
    let k = FieldSpec::new(-1).unwrap();
    let n = 2i64;
    let params = ProductParams { max_kl: 60, region: Region::Theorem, ..Default::default() };
    let tau = numeric::cplx_f64(params.prec_bits, 0.3, 4.0);

    println!("Xi(tau; j_2, W) at tau = 0.3 + 4i, d = -1, all chambers of index -2:");
    for w in chambers(-n).unwrap() {
        let product = XiProduct::for_jn(&k, n, &w, &params).unwrap();
        let r = product.eval(&tau).unwrap();
        println!(
            "  {w}: rho = ({}, {}), log|Xi| = {:.30}, {} factors, tail bound {:.1e}",
            product.weyl_vector().rho1,
            product.weyl_vector().rho2,
            r.log_abs.to_f64(),
            r.factor_count,
            r.tail_bound,
        );
    }

    // periodicity: the Weyl part has integer rho_2 and every factor couples
    // tau to an integer
    let w = chambers(-n).unwrap().pop().unwrap();
    let product = XiProduct::for_jn(&k, n, &w, &params).unwrap();
    let a = product.eval(&tau).unwrap().value;
    let b = product.eval(&(tau.clone() + 1u32)).unwrap().value;
    println!(
        "\n|Xi(tau + 1) - Xi(tau)| / |Xi(tau)| = {:.2e}",
        ((a.clone() - &b).abs() / a.abs()).real().to_f64()
    );

    // truncation: doubling max_kl moves the value by less than the tail bound
    let coarse = ProductParams { max_kl: 30, ..params.clone() };
    let fine = ProductParams { max_kl: 60, ..params.clone() };
    let rc = XiProduct::for_jn(&k, n, &w, &coarse).unwrap().eval(&tau).unwrap();
    let rf = XiProduct::for_jn(&k, n, &w, &fine).unwrap().eval(&tau).unwrap();
    println!(
        "log|Xi| moves by {:.2e} from max_kl 30 -> 60; tail bound at 30 was {:.2e}",
        (rc.log_abs.clone() - &rf.log_abs).abs().to_f64(),
        rc.tail_bound,
    );
}
