//! Exact arithmetic in the imaginary quadratic field F = Q(sqrt(d)).
//!
//! Elements are stored in the zeta-basis a + b*zeta with exact rational
//! coordinates, where O_F = Z + zeta*Z and
//!
//! ```text
//! zeta = delta/2        if D_F is even,
//! zeta = (1 + delta)/2  if D_F is odd,       delta = sqrt(D_F), Im(delta) > 0.
//! ```
//!
//! With this basis, membership in O_F is integrality of the coordinates, and
//! membership in the inverse different D_F^{-1} = delta^{-1} O_F is decided by
//! one exact multiplication. The symbol delta is never stored as a float in
//! the exact layer; it only becomes a number in [`FieldSpec::embed`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::numeric::{self, Cplx, Real};

/// Exact rational scalar used throughout the exact layer.
pub type Rat = BigRational;

/// Convenience constructor for a rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// An element a + b*zeta of F with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    a: Rat,
    b: Rat,
}

impl FieldElem {
    pub fn new(a: Rat, b: Rat) -> Self {
        FieldElem { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        FieldElem::new(rat(a), rat(b))
    }

    pub fn zero() -> Self {
        FieldElem::from_ints(0, 0)
    }

    pub fn one() -> Self {
        FieldElem::from_ints(1, 0)
    }

    /// The generator zeta itself.
    pub fn zeta() -> Self {
        FieldElem::from_ints(0, 1)
    }

    /// Rational part in the zeta-basis.
    pub fn a(&self) -> &Rat {
        &self.a
    }

    /// zeta-coefficient.
    pub fn b(&self) -> &Rat {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Scale by an exact rational.
    pub fn scale(&self, r: &Rat) -> Self {
        FieldElem::new(&self.a * r, &self.b * r)
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}*zeta)", self.a, self.b)
    }
}

impl Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        FieldElem::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        FieldElem::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem::new(-&self.a, -&self.b)
    }
}

/// The field F = Q(sqrt(d)) together with its discriminant and the shape of
/// zeta. All multiplicative operations on [`FieldElem`] go through the spec,
/// since the reduction zeta^2 = tr(zeta)*zeta - N(zeta) depends on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    d: i64,
    disc: i64,
}

fn is_square_free(n: i64) -> bool {
    let mut n = n.abs();
    if n == 0 {
        return false;
    }
    let mut p = 2i64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

impl FieldSpec {
    /// Build the field data for a square-free negative integer d.
    ///
    /// D_F = d if d = 1 (mod 4), otherwise D_F = 4d.
    pub fn new(d: i64) -> Result<FieldSpec> {
        if d >= 0 {
            return Err(Error::InvalidInput(format!("d must be negative, got {d}")));
        }
        if !is_square_free(d) {
            return Err(Error::InvalidInput(format!("d must be square-free, got {d}")));
        }
        let disc = if d.rem_euclid(4) == 1 { d } else { 4 * d };
        Ok(FieldSpec { d, disc })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// Field discriminant D_F.
    pub fn disc(&self) -> i64 {
        self.disc
    }

    /// True when D_F is even (zeta = delta/2).
    pub fn disc_even(&self) -> bool {
        self.disc % 2 == 0
    }

    /// tr(zeta): 0 for even discriminant, 1 for odd.
    pub fn zeta_trace(&self) -> i64 {
        if self.disc_even() {
            0
        } else {
            1
        }
    }

    /// N(zeta) = |D_F|/4 (even) or (1 + |D_F|)/4 (odd); always a positive integer.
    pub fn zeta_norm(&self) -> i64 {
        if self.disc_even() {
            -self.disc / 4
        } else {
            (1 - self.disc) / 4
        }
    }

    /// delta = sqrt(D_F) as a field element: 2*zeta - tr(zeta).
    pub fn delta(&self) -> FieldElem {
        FieldElem::from_ints(-self.zeta_trace(), 2)
    }

    /// delta^{-1} = delta / D_F, the generator of the inverse different.
    pub fn inv_delta(&self) -> FieldElem {
        self.delta().scale(&Rat::new(BigInt::one(), BigInt::from(self.disc)))
    }

    // ---- ring operations -------------------------------------------------

    /// Product in F, reducing zeta^2 = tr(zeta)*zeta - N(zeta).
    pub fn mul(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        let t = rat(self.zeta_trace());
        let n = rat(self.zeta_norm());
        let cross = &(&x.a * &y.b) + &(&x.b * &y.a);
        FieldElem::new(
            &(&x.a * &y.a) - &(&(&x.b * &y.b) * &n),
            &cross + &(&(&x.b * &y.b) * &t),
        )
    }

    /// Complex conjugate: a + b*conj(zeta) with conj(zeta) = tr(zeta) - zeta.
    pub fn conj(&self, x: &FieldElem) -> FieldElem {
        let t = rat(self.zeta_trace());
        FieldElem::new(&x.a + &(&x.b * &t), -&x.b)
    }

    /// trace(x) = x + conj(x) = 2a + b*tr(zeta).
    pub fn trace(&self, x: &FieldElem) -> Rat {
        &(&x.a + &x.a) + &(&x.b * &rat(self.zeta_trace()))
    }

    /// norm(x) = x * conj(x) = a^2 + tr(zeta)*a*b + N(zeta)*b^2.
    pub fn norm(&self, x: &FieldElem) -> Rat {
        let t = rat(self.zeta_trace());
        let n = rat(self.zeta_norm());
        &(&(&x.a * &x.a) + &(&(&x.a * &x.b) * &t)) + &(&(&x.b * &x.b) * &n)
    }

    /// Multiplicative inverse, conj(x)/norm(x).
    pub fn inv(&self, x: &FieldElem) -> Result<FieldElem> {
        if x.is_zero() {
            return Err(Error::Arithmetic("division by zero in F".into()));
        }
        let n = self.norm(x);
        Ok(self.conj(x).scale(&n.recip()))
    }

    pub fn div(&self, x: &FieldElem, y: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    // ---- lattice membership ----------------------------------------------

    /// x in O_F: integral coordinates in the zeta-basis.
    pub fn in_of(&self, x: &FieldElem) -> bool {
        x.a.is_integer() && x.b.is_integer()
    }

    /// x in D_F^{-1}: delta * x in O_F.
    pub fn in_inv_different(&self, x: &FieldElem) -> bool {
        self.in_of(&self.mul(&self.delta(), x))
    }

    // ---- numeric realization ----------------------------------------------

    /// |delta| = sqrt(|D_F|) at `prec` bits.
    pub fn abs_delta(&self, prec: u32) -> Real {
        Real::with_val(prec, -self.disc).sqrt()
    }

    pub fn abs_delta_f64(&self) -> f64 {
        ((-self.disc) as f64).sqrt()
    }

    /// Complex approximation of a + b*zeta with Im(delta) > 0 (principal
    /// branch). Relative error within 2^(1-prec).
    pub fn embed(&self, x: &FieldElem, prec: u32) -> Cplx {
        let re = numeric::rat_to_real(prec, &(&x.a + &(&x.b * &Rat::new(BigInt::from(self.zeta_trace()), BigInt::from(2)))));
        let im = numeric::rat_to_real(prec, &x.b) * self.abs_delta(prec) / 2u32;
        Cplx::with_val(prec, (re, im))
    }

    pub fn embed_f64(&self, x: &FieldElem) -> (f64, f64) {
        let a = numeric::rat_to_f64(&x.a);
        let b = numeric::rat_to_f64(&x.b);
        let t = self.zeta_trace() as f64;
        (a + b * t / 2.0, b * self.abs_delta_f64() / 2.0)
    }

    /// zeta as a complex number at `prec` bits.
    pub fn zeta_c(&self, prec: u32) -> Cplx {
        self.embed(&FieldElem::zeta(), prec)
    }

    /// -conj(zeta), the second coordinate of the embedding of the upper
    /// half-plane into the tube domain; lies in the upper half-plane since
    /// Im(-conj(zeta)) = |delta|/2.
    pub fn minus_zeta_bar(&self, prec: u32) -> Cplx {
        self.embed(&-&self.conj(&FieldElem::zeta()), prec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(d: i64) -> FieldSpec {
        FieldSpec::new(d).unwrap()
    }

    #[test]
    fn make_field_examples() {
        let k = f(-1);
        assert_eq!(k.disc(), -4);
        assert!(k.disc_even());
        // zeta -> i
        let z = k.embed(&FieldElem::zeta(), 64);
        assert!((z.real().to_f64()).abs() < 1e-18);
        assert!((z.imag().to_f64() - 1.0).abs() < 1e-15);

        let k3 = f(-3);
        assert_eq!(k3.disc(), -3);
        assert_eq!(k3.zeta_trace(), 1);
        let z3 = k3.embed(&FieldElem::zeta(), 64);
        assert!((z3.real().to_f64() - 0.5).abs() < 1e-15);
        assert!((z3.imag().to_f64() - 0.8660254037844386).abs() < 1e-15);
    }

    #[test]
    fn make_field_rejects_bad_d() {
        assert!(matches!(FieldSpec::new(-4), Err(Error::InvalidInput(_))));
        assert!(matches!(FieldSpec::new(-12), Err(Error::InvalidInput(_))));
        assert!(matches!(FieldSpec::new(0), Err(Error::InvalidInput(_))));
        assert!(matches!(FieldSpec::new(5), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn norm_trace_examples() {
        let k = f(-1);
        let e = &FieldElem::one() + &FieldElem::zeta();
        assert_eq!(k.norm(&e), rat(2)); // |1+i|^2 = 2

        let k3 = f(-3);
        assert_eq!(k3.trace(&FieldElem::zeta()), rat(1));
    }

    #[test]
    fn conj_is_involution() {
        for d in [-1, -2, -3, -7, -11] {
            let k = f(d);
            let e = FieldElem::new(Rat::new(BigInt::from(3), BigInt::from(7)), rat(-5));
            assert_eq!(k.conj(&k.conj(&e)), e);
        }
    }

    #[test]
    fn division() {
        let k = f(-3);
        let x = FieldElem::from_ints(2, 5);
        let y = FieldElem::from_ints(-1, 3);
        let q = k.div(&x, &y).unwrap();
        assert_eq!(k.mul(&q, &y), x);
        assert!(matches!(
            k.div(&x, &FieldElem::zero()),
            Err(Error::Arithmetic(_))
        ));
    }

    #[test]
    fn embed_sqrt2_against_integer_sqrt_oracle() {
        // d = -2: 1 + zeta = 1 + i*sqrt(2). Oracle: isqrt(2 * 4^k) / 2^k.
        let k = f(-2);
        let e = &FieldElem::one() + &FieldElem::zeta();
        let z = k.embed(&e, 160);
        let shift = 140u32;
        let oracle = BigInt::from(2u32) << (2 * shift);
        let root = oracle.sqrt(); // floor sqrt of 2 * 4^shift
        let approx = Rat::new(root, BigInt::one() << shift);
        let im = numeric::rat_to_real(160, &approx);
        let diff = (z.imag().clone() - im).abs();
        assert!(diff.to_f64() < 1e-40, "diff = {}", diff.to_f64());
        assert!((z.real().to_f64() - 1.0).abs() < 1e-30);
    }

    #[test]
    fn membership_examples() {
        let k = f(-1);
        let half_plus_zeta = FieldElem::new(Rat::new(BigInt::one(), BigInt::from(2)), rat(1));
        assert!(!k.in_of(&half_plus_zeta));
        assert!(k.in_of(&FieldElem::zero()));
        // delta = 2i; delta * zeta/2 = i*i = -1 in O_F
        let half_zeta = FieldElem::new(rat(0), Rat::new(BigInt::one(), BigInt::from(2)));
        assert!(k.in_inv_different(&half_zeta));
        assert_eq!(
            k.mul(&k.delta(), &half_zeta),
            FieldElem::from_ints(-1, 0)
        );
    }

    #[test]
    fn delta_squares_to_discriminant() {
        for d in [-1, -2, -3, -7, -11, -15] {
            let k = f(d);
            let dd = k.mul(&k.delta(), &k.delta());
            assert_eq!(dd, FieldElem::new(rat(k.disc()), rat(0)));
            let one = k.mul(&k.delta(), &k.inv_delta());
            assert_eq!(one, FieldElem::one());
        }
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(
            d in prop::sample::select(vec![-1i64, -2, -3, -7, -11]),
            a1 in -20i64..20, b1 in -20i64..20,
            a2 in -20i64..20, b2 in -20i64..20,
        ) {
            let k = f(d);
            let x = FieldElem::from_ints(a1, b1);
            let y = FieldElem::from_ints(a2, b2);
            prop_assert_eq!(k.norm(&k.mul(&x, &y)), &k.norm(&x) * &k.norm(&y));
        }

        #[test]
        fn trace_is_linear(
            d in prop::sample::select(vec![-1i64, -2, -3, -7]),
            a1 in -20i64..20, b1 in -20i64..20,
            a2 in -20i64..20, b2 in -20i64..20,
        ) {
            let k = f(d);
            let x = FieldElem::from_ints(a1, b1);
            let y = FieldElem::from_ints(a2, b2);
            prop_assert_eq!(k.trace(&(&x + &y)), &k.trace(&x) + &k.trace(&y));
        }

        #[test]
        fn inv_different_dual_characterization(
            d in prop::sample::select(vec![-1i64, -2, -3, -7, -11]),
            num_a in -12i64..12, num_b in -12i64..12,
            den in 1i64..6,
        ) {
            // x in D_F^{-1}  <=>  trace(x * y) in Z for y in {1, zeta}
            let k = f(d);
            let x = FieldElem::new(Rat::new(BigInt::from(num_a), BigInt::from(den)),
                                   Rat::new(BigInt::from(num_b), BigInt::from(den)));
            let dual = k.trace(&x).is_integer()
                && k.trace(&k.mul(&x, &FieldElem::zeta())).is_integer();
            prop_assert_eq!(k.in_inv_different(&x), dual);
        }

        #[test]
        fn embed_respects_multiplication(
            d in prop::sample::select(vec![-1i64, -2, -3, -7]),
            a1 in -9i64..9, b1 in -9i64..9,
            a2 in -9i64..9, b2 in -9i64..9,
        ) {
            let k = f(d);
            let x = FieldElem::from_ints(a1, b1);
            let y = FieldElem::from_ints(a2, b2);
            let lhs = k.embed(&k.mul(&x, &y), 96);
            let rhs = k.embed(&x, 96) * k.embed(&y, 96);
            let diff = (lhs - rhs).abs().real().to_f64();
            prop_assert!(diff < 1e-20);
        }
    }
}
