//! The weight-0 Faber basis j_n = q^{-n} + O(q): exact integer coefficients
//! from the reduction algorithm, cross-checked against E_4^3/Delta.
//!
//! Run with: cargo run --release --example faber_coefficients

use borcherds_u11::qexp::{delta_series, faber_basis, j_series, sigma};

fn main() {
    let j = j_series(6);
    println!("j = E4^3 / Delta:");
    for m in -1..=4 {
        println!("  c({m}) = {}", j.coeff(m).unwrap());
    }

    println!("\nDelta = q prod (1-q^m)^24, first coefficients (Ramanujan tau):");
    let delta = delta_series(8);
    for m in 1..=7 {
        println!("  tau({m}) = {}", delta.coeff(m).unwrap());
    }

    let basis = faber_basis(5, 6).unwrap();
    println!("\nFaber basis j_n = q^(-n) + O(q), coefficients c(1)..c(4):");
    for (i, jn) in basis.iter().enumerate() {
        let n = i as i64 + 1;
        let row: Vec<String> = (1..=4).map(|m| jn.coeff(m).unwrap().to_string()).collect();
        println!("  j_{n}: {}", row.join(", "));
    }

    // the q^0 correction constant b_m(0,1) = 24 sigma(|m|) relating the
    // Poincare series F_m to j_{|m|}
    println!("\n24 sigma(|m|) for |m| = 1..8:");
    let sums: Vec<String> = (1..=8).map(|n| (24 * sigma(n).unwrap()).to_string()).collect();
    println!("  {}", sums.join(", "));
}
