//! The hermitian lattice L = O_F + D_F^{-1} as a quadratic Z-module: the
//! isotropic basis (l, l'), the hyperbolic e-basis, the map tau -> z(tau),
//! and the tube-domain normalization Z -> Z_L.
//!
//! Run with: cargo run --example lattice_and_tube

use borcherds_u11::hermlattice::{
    bilinear, ebasis, embed_tau, epsilon, gram_bilinear, herm, qform, z_of_tau, zl_of_z,
};
use borcherds_u11::numeric;
use borcherds_u11::qfield::FieldSpec;
use borcherds_u11::LatticeVector;
use borcherds_u11::qfield::FieldElem;

fn main() {
    let k = FieldSpec::new(-3).unwrap();

    // the fixed basis has <l, l'> = delta^{-1} and epsilon = 1
    let l = borcherds_u11::hermlattice::ell();
    let lp = borcherds_u11::hermlattice::ell_prime(&k);
    println!("<l, l'> = {:?} (should be delta^{{-1}} = {:?})", herm(&k, &l, &lp), k.inv_delta());
    println!("epsilon = -delta <l', l> = {:?}", epsilon(&k));

    // Gram matrix of the e-basis: two hyperbolic planes over Z
    let e = ebasis(&k);
    println!("\nbilinear Gram matrix of (e1, e2, e3, e4):");
    for row in &e {
        let entries: Vec<String> = e.iter().map(|col| bilinear(&k, row, col).to_string()).collect();
        println!("  [{}]", entries.join(", "));
    }

    // Q(l e3 + k e4) = l k
    let v = LatticeVector::from_ll(&k, &FieldElem::from_ints(3, -1), &FieldElem::from_ints(2, 2));
    println!("\nQ(lambda) = {} for lambda_1 = 3 - zeta, lambda_2 = 2 + 2 zeta", qform(&k, &v));

    // z(tau) and its norm <z, z> = 2 Im tau / |delta|
    let tau = numeric::cplx_f64(128, 0.4, 1.9);
    let z = z_of_tau(&k, &tau).unwrap();
    let zz = borcherds_u11::hermlattice::herm_c(&z, &z);
    println!(
        "\n<z(tau), z(tau)> = {:.12} vs 2 Im tau / |delta| = {:.12}",
        zz.real().to_f64(),
        2.0 * 1.9 / k.abs_delta_f64()
    );

    // the embedded point Z = (tau, -conj zeta) and its isotropic lift Z_L
    let zp = embed_tau(&k, &tau).unwrap();
    let zl = zl_of_z(&zp);
    let iso = gram_bilinear(&zl, &zl);
    println!(
        "Z = (tau, -conj zeta), Z_L = (-Q(Z), 1, z1, z2); |B(Z_L, Z_L)| = {:.2e}",
        iso.abs().real().to_f64()
    );
}
