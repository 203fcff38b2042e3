//! High-precision numeric helpers shared by the embedding and product layers.
//!
//! Exact data (rationals, big integers) lives in the `num-*` types; this
//! module converts them into MPFR floats / MPC complexes at an explicit bit
//! precision and provides `e(w) = exp(2*pi*i*w)`.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use rug::ops::CompleteRound;
use rug::{Complex, Float, Integer};

pub type Real = Float;
pub type Cplx = Complex;

/// num-bigint -> rug integer, via little-endian magnitude bytes.
pub fn bigint_to_rug(v: &BigInt) -> Integer {
    let (sign, bytes) = v.to_bytes_le();
    let mut out = Integer::from_digits(&bytes, rug::integer::Order::Lsf);
    if sign == Sign::Minus {
        out = -out;
    }
    out
}

/// Exact rational -> float at `prec` bits (one rounding).
pub fn rat_to_real(prec: u32, r: &BigRational) -> Real {
    let num = bigint_to_rug(r.numer());
    let den = bigint_to_rug(r.denom());
    Real::with_val(prec, rug::Rational::from((num, den)))
}

pub fn rat_to_f64(r: &BigRational) -> f64 {
    rat_to_real(64, r).to_f64()
}

pub fn bigint_to_real(prec: u32, v: &BigInt) -> Real {
    Real::with_val(prec, bigint_to_rug(v))
}

pub fn pi(prec: u32) -> Real {
    Real::with_val(prec, rug::float::Constant::Pi)
}

pub fn cplx_f64(prec: u32, re: f64, im: f64) -> Cplx {
    Cplx::with_val(prec, (re, im))
}

/// Parse a decimal string into a float at `prec` bits.
pub fn real_from_str(prec: u32, s: &str) -> Option<Real> {
    Float::parse(s).ok().map(|p| p.complete(prec))
}

/// e(w) = exp(2*pi*i*w) for complex w, at the precision of `w`.
///
/// The real part is reduced modulo 1 before scaling by 2*pi (e is exactly
/// 1-periodic and the reduction is exact float arithmetic), so integer
/// shifts of Re(w) are honored exactly.
pub fn e_of(w: &Cplx) -> Cplx {
    let prec = w.prec().0;
    let two_pi = pi(prec) * 2u32;
    let modulus = (-(two_pi.clone() * w.imag())).exp();
    let mut frac = w.real().clone();
    let nearest = frac.clone().round();
    frac -= &nearest;
    let angle = two_pi * frac;
    let (sin, cos) = angle.sin_cos(Real::new(prec));
    Cplx::with_val(prec, (modulus.clone() * cos, modulus * sin))
}

/// Principal-branch argument of a nonzero complex number, in (-pi, pi].
pub fn arg(z: &Cplx) -> Real {
    z.imag().clone().atan2(z.real())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn e_of_basic_values() {
        // e(1/4) = i
        let w = cplx_f64(96, 0.25, 0.0);
        let v = e_of(&w);
        assert!(v.real().to_f64().abs() < 1e-25);
        assert!((v.imag().to_f64() - 1.0).abs() < 1e-25);
        // e(i) = exp(-2*pi)
        let wi = cplx_f64(96, 0.0, 1.0);
        let vi = e_of(&wi);
        assert!((vi.real().to_f64() - (-2.0 * std::f64::consts::PI).exp()).abs() < 1e-18);
        assert!(vi.imag().to_f64().abs() < 1e-25);
    }

    #[test]
    fn rational_conversion_is_exact_for_dyadics() {
        let r = BigRational::new(BigInt::from(3), BigInt::from(8));
        let x = rat_to_real(64, &r);
        assert_eq!(x.to_f64(), 0.375);
        let one = BigRational::one();
        assert_eq!(rat_to_real(64, &one).to_f64(), 1.0);
    }
}
