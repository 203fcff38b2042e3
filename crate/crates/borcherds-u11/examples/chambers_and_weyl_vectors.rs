//! Weyl chambers of index m: the d(|m|)+1 chambers cut out by the walls
//! through (t, |m|/t), their strips in the upper half-plane, and the Weyl
//! vectors of F_m and j_n per chamber.
//!
//! Run with: cargo run --example chambers_and_weyl_vectors

use borcherds_u11::qfield::{rat, FieldSpec};
use borcherds_u11::weyl::{chamber_of_tau, chamber_of_y, chambers, weyl_vector_fm, weyl_vector_jn};

fn main() {
    let m = -6i64;
    let k = FieldSpec::new(-1).unwrap();
    println!("chambers of index {m} (d(6) + 1 = 5), clockwise:");
    for w in chambers(m).unwrap() {
        let fm = weyl_vector_fm(m, &w).unwrap();
        let jn = weyl_vector_jn(-m, &w).unwrap();
        let (lo, hi) = w.strip_bounds(&k);
        let hi_str = hi.map_or("inf".to_string(), |x| format!("{x:.4}"));
        println!(
            "  {w}: strip {lo:.4} < Im tau < {hi_str},  rho_F = ({}, {}),  rho_j = ({}, {})",
            fm.rho1, fm.rho2, jn.rho1, jn.rho2
        );
    }

    // locating points, exactly on rationals
    println!("\nY = (1, 1) of index -6 lies in {:?}", chamber_of_y(-6, &rat(1), &rat(1)).unwrap());
    println!("Y = (1, 6) of index -6 lies on {:?}", chamber_of_y(-6, &rat(1), &rat(6)).unwrap());

    // and through the embedding Y = (Im tau, |delta|/2)
    println!(
        "tau = 2i of index -1 (d = -1) lies in {:?}",
        chamber_of_tau(-1, (0.0, 2.0), &k).unwrap()
    );
    println!(
        "tau = i of index -1 (d = -1) lies on {:?}",
        chamber_of_tau(-1, (0.0, 1.0), &k).unwrap()
    );

    // mirror symmetry swaps the components of the Weyl vector
    let w = chambers(-6).unwrap()[1].clone();
    let v = weyl_vector_fm(-6, &w).unwrap();
    let vm = weyl_vector_fm(-6, &w.mirror()).unwrap();
    println!(
        "\nmirror of {w} is {}: rho ({}, {}) <-> ({}, {})",
        w.mirror(),
        v.rho1,
        v.rho2,
        vm.rho1,
        vm.rho2
    );
}
