//! Cross-module consistency: the exact q-expansion layer against the
//! high-precision evaluation layer, and factor decay inside chambers.

use borcherds_u11::numeric::{self, Cplx};
use borcherds_u11::qexp::delta_series;
use borcherds_u11::qfield::FieldSpec;
use borcherds_u11::weyl::chambers;
use borcherds_u11::{eta_auto, xi_const, ProductParams, Region, XiProduct};

/// Evaluate a truncated integer q-series at q = e(tau).
fn eval_series(series: &borcherds_u11::QSeries, tau: &Cplx) -> Cplx {
    let prec = tau.prec().0;
    let q = numeric::e_of(tau);
    let mut acc = Cplx::new(prec);
    // Horner over the stored coefficient run
    let val = series.valuation().expect("nonzero series");
    for m in (val..series.prec()).rev() {
        let c = series.coeff(m).expect("within precision");
        acc = acc * &q + numeric::bigint_to_real(prec, &c);
    }
    // multiply by q^val (val >= 0 here)
    for _ in 0..val {
        acc = acc * &q;
    }
    acc
}

#[test]
fn delta_series_matches_eta_power_24() {
    // Delta(tau) from the exact product expansion against eta(tau)^24,
    // relative error below 1e-20 at 128 bits for Im tau >= 1
    let prec = 128u32;
    let delta = delta_series(40);
    for (re, im) in [(0.0, 1.0), (0.3, 1.2), (-0.45, 2.0)] {
        let tau = numeric::cplx_f64(prec, re, im);
        let lhs = eval_series(&delta, &tau);
        let eta = eta_auto(&tau, prec).unwrap();
        let mut rhs = Cplx::with_val(prec, (1, 0));
        for _ in 0..24 {
            rhs *= &eta;
        }
        let rel = ((lhs.clone() - &rhs).abs() / rhs.abs()).real().to_f64();
        assert!(rel < 1e-20, "tau = {re} + {im}i: rel = {rel:e}");
    }
}

#[test]
fn retained_factors_decay_on_chamber_strips() {
    // inside W's strip intersected with the convergence region, every
    // retained factor has l Im tau + k |delta|/2 > 0
    for (d, n) in [(-1i64, 1i64), (-1, 2), (-3, 1), (-7, 2)] {
        let k = FieldSpec::new(d).unwrap();
        let params = ProductParams { max_kl: 25, region: Region::Theorem, ..Default::default() };
        let h = k.abs_delta_f64() / 2.0;
        let region_lo = 2.0 * n as f64 / k.abs_delta_f64();
        for w in chambers(-n).unwrap() {
            let (strip_lo, strip_hi) = w.strip_bounds(&k);
            let lo = strip_lo.max(region_lo);
            let hi = strip_hi.unwrap_or(lo + 10.0);
            if hi <= lo {
                continue; // strip lies below the convergence region
            }
            let im = 0.5 * (lo + hi);
            let product = XiProduct::for_jn(&k, n, &w, &params).unwrap();
            for (l, kk, _) in product.factors() {
                let exponent = *l as f64 * im + *kk as f64 * h;
                assert!(
                    exponent > 0.0,
                    "factor ({l},{kk}) of {w} (d={d}, n={n}) at Im tau = {im}"
                );
            }
        }
    }
}

#[test]
fn xi_j1_matches_j_difference() {
    // For d = -2 the lift of j_1 is j(tau) - j(-conj zeta) up to a constant
    // of modulus 1: compare the product route against direct numerical
    // evaluation of the exact q-expansion of j. Also j(i sqrt2) = 8000.
    let prec = 128u32;
    let k = FieldSpec::new(-2).unwrap();
    let params = ProductParams { max_kl: 40, region: Region::Theorem, ..Default::default() };
    let j = borcherds_u11::qexp::j_series(40);
    let mzb = k.minus_zeta_bar(prec);
    let j_at_cm = eval_series(&j, &mzb);
    assert!((j_at_cm.real().to_f64() - 8000.0).abs() < 1e-20);
    assert!(j_at_cm.imag().to_f64().abs() < 1e-20);

    let w = chambers(-1).unwrap().pop().unwrap();
    let product = XiProduct::for_jn(&k, 1, &w, &params).unwrap();
    for (re, im) in [(0.25, 2.5), (0.0, 3.0), (-0.4, 2.2)] {
        let tau = numeric::cplx_f64(prec, re, im);
        let xi = product.eval(&tau).unwrap().value;
        let expect = eval_series(&j, &tau) - &j_at_cm;
        let rel = ((xi.clone() - &expect).abs() / expect.abs()).real().to_f64();
        assert!(rel < 1e-12, "tau = {re}+{im}i: rel = {rel:e}");
    }
}

#[test]
fn xi_const_inversion_modulus() {
    // |eta(-1/tau) eta(-conj zeta)| = sqrt|tau| |eta(tau) eta(-conj zeta)|
    let prec = 128u32;
    let params = ProductParams::default();
    let k = FieldSpec::new(-7).unwrap();
    for (re, im) in [(0.0, 1.3), (0.4, 0.8)] {
        let tau = numeric::cplx_f64(prec, re, im);
        let inv = -tau.clone().recip();
        let lhs = xi_const(&inv, &k, &params).unwrap().value.abs().real().to_f64();
        let base = xi_const(&tau, &k, &params).unwrap().value.abs().real().to_f64();
        let rhs = tau.clone().abs().real().to_f64().sqrt() * base;
        assert!((lhs - rhs).abs() < 1e-12 * rhs, "tau = {re}+{im}i: {lhs} vs {rhs}");
    }
}
