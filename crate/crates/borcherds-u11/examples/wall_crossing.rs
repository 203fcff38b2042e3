//! The wall-crossing function Phi_m^K: the raw divisor sum against the
//! chamber-adapted linear formula 8 sqrt2 pi B(Y/|Y|, rho_m(W)), continuity
//! across walls, and the Whittaker-integral identity behind the expansion.
//!
//! Run with: cargo run --example wall_crossing

use borcherds_u11::qfield::rat;
use borcherds_u11::weyl::{
    chambers, phi_k, phi_k_chamber, phi_k_chamber_sum, phi_k_sum, whittaker_check,
};

fn main() {
    // hand values for m = -1
    println!("Phi_-1(1, 4)  = {:.12} (= 4 pi)", phi_k(-1, 1.0, 4.0).unwrap());
    println!("Phi_-1(4, 1)  = {:.12} (mirror)", phi_k(-1, 4.0, 1.0).unwrap());
    println!("Phi_-1(1, 1)  = {:.12} (= 8 pi, on the wall)", phi_k(-1, 1.0, 1.0).unwrap());

    // raw sum vs chamber formula inside each chamber of index -6
    println!("\nindex -6, at each chamber's interior point:");
    for w in chambers(-6).unwrap() {
        let (y1, y2) = w.interior_point();
        let y1f = borcherds_u11::numeric::rat_to_f64(&y1);
        let y2f = borcherds_u11::numeric::rat_to_f64(&y2);
        let raw = phi_k(-6, y1f, y2f).unwrap();
        let lin = phi_k_chamber(-6, &w, y1f, y2f).unwrap();
        println!("  {w}: raw {raw:.10} vs linear {lin:.10} (diff {:.1e})", (raw - lin).abs());
    }

    // exact continuity across the wall t = 2 of index -6: both adjacent
    // chamber formulas give the same rational sum at the wall point
    let cs = chambers(-6).unwrap();
    let y1 = rat(4); // wall: |m| y1 = t^2 y2 with t = 2, y2 = 6
    let y2 = rat(6);
    let left = phi_k_chamber_sum(-6, &cs[1], &y1, &y2).unwrap();
    let right = phi_k_chamber_sum(-6, &cs[2], &y1, &y2).unwrap();
    println!("\nwall t=2: adjacent chamber sums {left} = {right}, raw sum {}", phi_k_sum(-6, &y1, &y2).unwrap());

    // the closed form of the Whittaker integral under the expansion
    println!("\nWhittaker integral vs 4 pi (sqrt(Q + |m|) - sqrt Q):");
    for (m, q) in [(-1i64, 1.0f64), (-2, 0.5), (-6, 10.0)] {
        let (num, closed) = whittaker_check(m, q, 64).unwrap();
        println!("  m = {m}, Q = {q}: quadrature {num:.10}, closed {closed:.10}");
    }
}
