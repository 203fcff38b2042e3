//! Heegner points: CM points tau_lambda attached to negative-norm lattice
//! vectors, with exact minimal polynomials, contents, CM conductors, and
//! SL_2(Z) reduction to the fundamental domain.
//!
//! Run with: cargo run --example heegner_scan

use borcherds_u11::heegner::{cm_order, enumerate_heegner, heegner_point, reduce_point};
use borcherds_u11::qfield::{FieldElem, FieldSpec};

fn main() {
    let k = FieldSpec::new(-1).unwrap();

    // worked examples over the Gaussian integers
    for (l1, l2) in [
        (FieldElem::from_ints(0, -1), FieldElem::from_ints(1, 0)),
        (FieldElem::from_ints(0, -2), FieldElem::from_ints(1, 0)),
        (FieldElem::from_ints(0, -2), FieldElem::from_ints(2, 0)),
    ] {
        let h = heegner_point(&k, &l1, &l2).unwrap();
        let (a, b, c) = h.minpoly();
        let tau = h.tau(&k, 96);
        let (conductor, order) = cm_order(&h);
        println!(
            "lambda = ({:?}, {:?}): m = {}, {a} t^2 + {b} t + {c} = 0, tau = {:.4} + {:.4} i, q = {}, conductor {} ({})",
            l1, l2, h.index(), tau.real().to_f64(), tau.imag().to_f64(), h.content(), conductor, order,
        );
    }

    // enumerate index -1 vectors in a small box and reduce
    println!("\nindex -1 points with coordinates bounded by 2 (one of each +-lambda):");
    let points = enumerate_heegner(&k, -1, 2).unwrap();
    println!("  {} points; reduced representatives:", points.len());
    let mut reduced: Vec<String> = points
        .iter()
        .map(|p| {
            let r = reduce_point(&k, p);
            let (a, b, c) = r.minpoly();
            format!("({a}, {b}, {c})")
        })
        .collect();
    reduced.sort();
    reduced.dedup();
    println!("  distinct reduced forms: {}", reduced.join(" "));

    // a translated point reduces back into the fundamental domain
    let far = heegner_point(&k, &FieldElem::from_ints(5, -1), &FieldElem::one()).unwrap();
    let near = reduce_point(&k, &far);
    println!(
        "\ntau = {:.1} + {:.1} i reduces to tau = {:.1} + {:.1} i, conductor {} either way",
        far.tau(&k, 64).real().to_f64(),
        far.tau(&k, 64).imag().to_f64(),
        near.tau(&k, 64).real().to_f64(),
        near.tau(&k, 64).imag().to_f64(),
        near.conductor(),
    );
}
