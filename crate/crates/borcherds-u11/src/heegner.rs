//! Heegner points: CM points tau_lambda attached to negative-norm lattice
//! vectors, their exact minimal polynomials, CM orders and conductors, box
//! enumeration, and SL_2(Z) reduction to the fundamental domain.
//!
//! A vector lambda = lambda_1 l + lambda_2 l' with lambda_1, lambda_2 in O_F,
//! lambda_2 != 0 and m = <lambda, lambda> < 0 determines
//!
//! ```text
//! tau_lambda = conj(lambda_1 / lambda_2),
//! N(lambda_2) tau^2 - tr(lambda_1 conj(lambda_2)) tau + N(lambda_1) = 0,
//! ```
//!
//! an integral equation with discriminant m^2 D_F. Dividing by the content q
//! of its coefficients gives the primitive equation of discriminant
//! (m/q)^2 D_F, so the CM order of tau_lambda is Z + (|m|/q) O_F with
//! conductor |m|/q.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::hermlattice::{self, LatticeVector};
use crate::numeric::Cplx;
use crate::qfield::{FieldElem, FieldSpec, Rat};

/// A Heegner point with its exact arithmetic data.
///
/// `a`, `b`, `c` are the integral minimal-polynomial coefficients (before
/// content division) with `a` positive, `q` their gcd, and
/// `conductor = |m| / q`. The point itself is the root of the equation in the
/// upper half-plane: tau = (-b + i |m| |delta|) / (2a), exactly
/// conj(lambda_1 / lambda_2) in F.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeegnerPoint {
    l1: FieldElem,
    l2: FieldElem,
    m: i64,
    a: BigInt,
    b: BigInt,
    c: BigInt,
    q: BigInt,
    conductor: BigInt,
}

impl HeegnerPoint {
    pub fn lambda(&self) -> (&FieldElem, &FieldElem) {
        (&self.l1, &self.l2)
    }

    /// Norm <lambda, lambda> = m < 0.
    pub fn index(&self) -> i64 {
        self.m
    }

    /// Minimal-polynomial coefficients (A, B, C) before content division.
    pub fn minpoly(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.a, &self.b, &self.c)
    }

    /// Primitive coefficients (A/q, B/q, C/q).
    pub fn primitive_minpoly(&self) -> (BigInt, BigInt, BigInt) {
        (&self.a / &self.q, &self.b / &self.q, &self.c / &self.q)
    }

    /// Content q = gcd(A, B, C) > 0.
    pub fn content(&self) -> &BigInt {
        &self.q
    }

    /// CM conductor |m| / q.
    pub fn conductor(&self) -> &BigInt {
        &self.conductor
    }

    /// tau_lambda as an exact element of F.
    pub fn tau_elem(&self, spec: &FieldSpec) -> FieldElem {
        spec.conj(&spec.div(&self.l1, &self.l2).expect("lambda_2 nonzero"))
    }

    /// Re(tau) = -B / (2A), exact.
    pub fn tau_re(&self) -> Rat {
        Rat::new(-self.b.clone(), 2 * self.a.clone())
    }

    /// Im(tau) = coeff * |delta| with coeff = |m| / (2A), exact and positive.
    pub fn tau_im_delta_coeff(&self) -> Rat {
        Rat::new(BigInt::from(-self.m), 2 * self.a.clone())
    }

    /// Numeric tau at `prec` bits.
    pub fn tau(&self, spec: &FieldSpec, prec: u32) -> Cplx {
        spec.embed(&self.tau_elem(spec), prec)
    }

    /// Whether the reduced-form conditions |B| <= A <= C hold, with B >= 0 on
    /// the boundary cases |B| = A or A = C (fundamental-domain normal form of
    /// the primitive form, equivalently of the full form).
    pub fn is_reduced(&self) -> bool {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let babs = b.abs();
        if !(babs <= *a && a <= c) {
            return false;
        }
        if (babs == *a || a == c) && b.is_negative() {
            return false;
        }
        true
    }
}

/// Build the Heegner point of lambda = lambda_1 l + lambda_2 l'.
///
/// Errors: coordinates outside O_F, lambda_2 = 0 (the cusp direction cannot
/// have negative norm), or <lambda, lambda> >= 0.
pub fn heegner_point(spec: &FieldSpec, l1: &FieldElem, l2: &FieldElem) -> Result<HeegnerPoint> {
    if !(spec.in_of(l1) && spec.in_of(l2)) {
        return Err(Error::InvalidInput(
            "heegner_point needs lambda_1, lambda_2 in O_F".into(),
        ));
    }
    if l2.is_zero() {
        return Err(Error::InvalidInput(
            "lambda_2 = 0: lambda is proportional to the cusp l and has norm 0".into(),
        ));
    }
    // h = lambda_1 * conj(lambda_2); the norm is its zeta-coefficient:
    // m = 2 Im(h)/|delta| and Im(a + b zeta) = b |delta|/2.
    let h = spec.mul(l1, &spec.conj(l2));
    let m_rat = h.b().clone();
    debug_assert!(m_rat.is_integer());
    let m = m_rat
        .to_integer()
        .to_i64()
        .ok_or_else(|| Error::InvalidInput("norm exceeds i64 range".into()))?;
    if m >= 0 {
        return Err(Error::InvalidInput(format!(
            "not a Heegner vector: <lambda, lambda> = {m} >= 0"
        )));
    }
    debug_assert_eq!(
        hermlattice::qform(spec, &LatticeVector::from_ll(spec, l1, l2)),
        Rat::from_integer(BigInt::from(m))
    );

    let a_rat = spec.norm(l2);
    let b_rat = -spec.trace(&h);
    let c_rat = spec.norm(l1);
    if !(a_rat.is_integer() && b_rat.is_integer() && c_rat.is_integer()) {
        return Err(Error::InvalidInput(
            "minimal-polynomial coefficients are not integral; input was not a lattice vector"
                .into(),
        ));
    }
    let (a, b, c) = (a_rat.to_integer(), b_rat.to_integer(), c_rat.to_integer());
    debug_assert!(a.is_positive());
    // discriminant identity B^2 - 4AC = m^2 D_F
    debug_assert_eq!(
        &b * &b - 4 * &a * &c,
        BigInt::from(m) * BigInt::from(m) * BigInt::from(spec.disc())
    );

    let q = a.gcd(&b).gcd(&c);
    let am = BigInt::from(-m);
    let (conductor, rem) = am.div_rem(&q);
    debug_assert!(rem.is_zero(), "content must divide |m|");

    let point = HeegnerPoint { l1: l1.clone(), l2: l2.clone(), m, a, b, c, q, conductor };
    debug_assert!(residual_vanishes(spec, &point));
    Ok(point)
}

/// Exact residual <z(tau_lambda), lambda> = 0.
fn residual_vanishes(spec: &FieldSpec, h: &HeegnerPoint) -> bool {
    let tau = h.tau_elem(spec);
    let z = hermlattice::z_of_tau_exact(spec, &tau);
    let lam = LatticeVector::from_ll(spec, &h.l1, &h.l2);
    hermlattice::herm(spec, &z, &lam).is_zero()
}

/// CM order of the point: conductor f = |m|/q and the order Z + f O_F.
pub fn cm_order(h: &HeegnerPoint) -> (BigInt, String) {
    (h.conductor.clone(), format!("Z + {}*O_F", h.conductor))
}

/// All Heegner points of index m with coordinates lambda_1 = a + b zeta,
/// lambda_2 = c + e zeta, max(|a|,|b|,|c|,|e|) <= bound, keeping one of each
/// pair lambda, -lambda. Sorted by (A', B', C', a, b).
pub fn enumerate_heegner(spec: &FieldSpec, m: i64, bound: i64) -> Result<Vec<HeegnerPoint>> {
    if m >= 0 {
        return Err(Error::InvalidInput(format!(
            "enumerate_heegner needs m < 0, got {m}"
        )));
    }
    if bound < 1 {
        return Err(Error::InvalidInput(format!(
            "enumerate_heegner needs bound >= 1, got {bound}"
        )));
    }
    let mut out = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            for c in -bound..=bound {
                for e in -bound..=bound {
                    // keep the sign-canonical representative of {lambda, -lambda}
                    if !first_nonzero_positive(&[a, b, c, e]) {
                        continue;
                    }
                    if c == 0 && e == 0 {
                        continue;
                    }
                    let l1 = FieldElem::from_ints(a, b);
                    let l2 = FieldElem::from_ints(c, e);
                    let h = spec.mul(&l1, &spec.conj(&l2));
                    if h.b() != &Rat::from_integer(BigInt::from(m)) {
                        continue;
                    }
                    out.push(heegner_point(spec, &l1, &l2)?);
                }
            }
        }
    }
    out.sort_by(|x, y| sort_key(x).cmp(&sort_key(y)));
    Ok(out)
}

/// Number of lattice vectors of norm m in the same box without the
/// lambda ~ -lambda identification.
pub fn count_norm_vectors(spec: &FieldSpec, m: i64, bound: i64) -> Result<usize> {
    Ok(2 * enumerate_heegner(spec, m, bound)?.len())
}

fn first_nonzero_positive(v: &[i64]) -> bool {
    for &x in v {
        if x != 0 {
            return x > 0;
        }
    }
    false
}

fn sort_key(h: &HeegnerPoint) -> (BigInt, BigInt, BigInt, BigInt, BigInt) {
    let (pa, pb, pc) = h.primitive_minpoly();
    let a = h.l1.a().to_integer();
    let b = h.l1.b().to_integer();
    (pa, pb, pc, a, b)
}

/// Reduce the point into the standard fundamental domain by binary
/// quadratic form reduction of (A, B, C), applying the same SL_2(Z) word to
/// lambda. The content, conductor and index are unchanged; the returned
/// point satisfies |B| <= A <= C with the usual boundary conventions.
pub fn reduce_point(spec: &FieldSpec, h: &HeegnerPoint) -> HeegnerPoint {
    let mut l1 = h.l1.clone();
    let mut l2 = h.l2.clone();
    let (mut a, mut b, mut c) = (h.a.clone(), h.b.clone(), h.c.clone());

    loop {
        // translate tau -> tau + k so that the new B lies in (-A, A]:
        // B' = B - 2Ak with k = ceil((B - A) / (2A)); lambda_1 += k lambda_2
        let two_a = 2 * &a;
        let k = (&b - &a).div_ceil(&two_a);
        if !k.is_zero() {
            c = &a * &k * &k - &b * &k + &c;
            b = &b - &two_a * &k;
            let k_elem = FieldElem::new(Rat::from_integer(k), Rat::zero());
            l1 = &l1 + &spec.mul(&k_elem, &l2);
        }
        if a > c {
            // invert tau -> -1/tau: (A, B, C) -> (C, -B, A), (l1, l2) -> (-l2, l1)
            std::mem::swap(&mut a, &mut c);
            b = -b;
            let new_l1 = -&l2;
            l2 = l1;
            l1 = new_l1;
            continue;
        }
        if a == c && b.is_negative() {
            b = -b;
            let new_l1 = -&l2;
            l2 = l1;
            l1 = new_l1;
        }
        break;
    }

    let out = HeegnerPoint {
        l1,
        l2,
        m: h.m,
        a,
        b,
        c,
        q: h.q.clone(),
        conductor: h.conductor.clone(),
    };
    debug_assert!(out.is_reduced());
    debug_assert!(residual_vanishes(spec, &out));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::rat;
    use num_traits::One;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f(d: i64) -> FieldSpec {
        FieldSpec::new(d).unwrap()
    }

    #[test]
    fn worked_example_conductor_one() {
        // d=-1, lambda = (-zeta, 1): m=-1, tau^2 + 1 = 0, tau = i, conductor 1
        let k = f(-1);
        let h = heegner_point(&k, &FieldElem::from_ints(0, -1), &FieldElem::one()).unwrap();
        assert_eq!(h.index(), -1);
        assert_eq!(h.minpoly(), (&BigInt::one(), &BigInt::zero(), &BigInt::one()));
        assert_eq!(h.content(), &BigInt::one());
        assert_eq!(h.conductor(), &BigInt::one());
        let tau = h.tau(&k, 96);
        assert!(tau.real().to_f64().abs() < 1e-25);
        assert!((tau.imag().to_f64() - 1.0).abs() < 1e-25);
        let (cond, desc) = cm_order(&h);
        assert_eq!(cond, BigInt::one());
        assert_eq!(desc, "Z + 1*O_F");
    }

    #[test]
    fn worked_example_conductor_two() {
        // d=-1, lambda = (-2 zeta, 1): m=-2, tau^2 + 4 = 0, tau = 2i, conductor 2
        let k = f(-1);
        let h = heegner_point(&k, &FieldElem::from_ints(0, -2), &FieldElem::one()).unwrap();
        assert_eq!(h.index(), -2);
        assert_eq!(
            h.minpoly(),
            (&BigInt::one(), &BigInt::zero(), &BigInt::from(4))
        );
        assert_eq!(h.conductor(), &BigInt::from(2));
        let tau = h.tau(&k, 96);
        assert!((tau.imag().to_f64() - 2.0).abs() < 1e-25);
    }

    #[test]
    fn worked_example_content_four() {
        // d=-1, lambda = (-2 zeta, 2): m=-4, 4 tau^2 + 4 = 0, q=4, conductor 1
        let k = f(-1);
        let h = heegner_point(&k, &FieldElem::from_ints(0, -2), &FieldElem::from_ints(2, 0)).unwrap();
        assert_eq!(h.index(), -4);
        assert_eq!(
            h.minpoly(),
            (&BigInt::from(4), &BigInt::zero(), &BigInt::from(4))
        );
        assert_eq!(h.content(), &BigInt::from(4));
        assert_eq!(h.conductor(), &BigInt::one());
        let tau = h.tau(&k, 96);
        assert!((tau.imag().to_f64() - 1.0).abs() < 1e-25);
    }

    #[test]
    fn worked_example_eisenstein() {
        // d=-3, lambda = (-zeta, 1): m = -1, tau = conj(-zeta) = zeta - 1,
        // equation tau^2 + tau + 1 = 0; same CM order as zeta, conductor 1
        let k = f(-3);
        let h = heegner_point(&k, &FieldElem::from_ints(0, -1), &FieldElem::one()).unwrap();
        assert_eq!(h.index(), -1);
        let (a, b, c) = h.minpoly();
        assert_eq!((a, b, c), (&BigInt::one(), &BigInt::one(), &BigInt::one()));
        assert_eq!(h.conductor(), &BigInt::one());
        assert_eq!(h.tau_elem(&k), FieldElem::from_ints(-1, 1));
        // the root is on the Re = -1/2 boundary; it is already reduced and
        // SL_2(Z)-equivalent to zeta itself
        assert!(h.is_reduced());
        assert_eq!(reduce_point(&k, &h), h);
    }

    #[test]
    fn rejects_bad_inputs() {
        let k = f(-1);
        // positive norm
        assert!(matches!(
            heegner_point(&k, &FieldElem::from_ints(0, 1), &FieldElem::one()),
            Err(Error::InvalidInput(_))
        ));
        // cusp direction
        assert!(matches!(
            heegner_point(&k, &FieldElem::zeta(), &FieldElem::zero()),
            Err(Error::InvalidInput(_))
        ));
        // not in O_F
        let half = FieldElem::new(Rat::new(BigInt::one(), BigInt::from(2)), rat(0));
        assert!(matches!(
            heegner_point(&k, &half, &FieldElem::one()),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn scaling_lambda_scales_index_not_tau() {
        let k = f(-2);
        let l1 = FieldElem::from_ints(1, -2);
        let l2 = FieldElem::from_ints(1, 1);
        let base = heegner_point(&k, &l1, &l2).unwrap();
        for r in [
            FieldElem::from_ints(2, 0),
            FieldElem::from_ints(0, 1),
            FieldElem::from_ints(1, 1),
        ] {
            let scaled = heegner_point(&k, &k.mul(&r, &l1), &k.mul(&r, &l2)).unwrap();
            assert_eq!(scaled.tau_elem(&k), base.tau_elem(&k));
            let nr = k.norm(&r).to_integer().to_i64().unwrap();
            assert_eq!(scaled.index(), base.index() * nr);
        }
    }

    #[test]
    fn factor_heegner_correspondence() {
        // tau = (a + k conj(zeta))/l is tau_lambda for lambda = (a + k zeta, l),
        // of norm k*l: ties Borcherds factor zeros to Heegner points.
        let k = f(-2);
        for (a, kk, l) in [(0i64, -1i64, 1i64), (3, -2, 1), (-1, -1, 2), (5, -6, 3)] {
            let l1 = FieldElem::from_ints(a, kk);
            let l2 = FieldElem::from_ints(l, 0);
            let h = spec_norm(&k, &l1, &l2);
            assert_eq!(h, kk * l);
            if h < 0 {
                let point = heegner_point(&k, &l1, &l2).unwrap();
                let expect = k
                    .div(
                        &(&FieldElem::from_ints(a, 0) + &k.mul(&FieldElem::from_ints(kk, 0), &k.conj(&FieldElem::zeta()))),
                        &FieldElem::from_ints(l, 0),
                    )
                    .unwrap();
                assert_eq!(point.tau_elem(&k), expect);
            }
        }
    }

    fn spec_norm(k: &FieldSpec, l1: &FieldElem, l2: &FieldElem) -> i64 {
        k.mul(l1, &k.conj(l2)).b().to_integer().to_i64().unwrap()
    }

    #[test]
    fn discriminant_identity_on_enumeration() {
        for d in [-1i64, -3, -7] {
            let k = f(d);
            for m in [-1i64, -2, -4] {
                for h in enumerate_heegner(&k, m, 2).unwrap() {
                    let (a, b, c) = h.minpoly();
                    assert_eq!(
                        b * b - 4 * a * c,
                        BigInt::from(m) * BigInt::from(m) * BigInt::from(k.disc())
                    );
                    // Im tau = |m| |delta| / (2 N(lambda_2))
                    let n_l2 = k.norm(h.lambda().1).to_integer();
                    assert_eq!(
                        h.tau_im_delta_coeff(),
                        Rat::new(BigInt::from(-m), 2 * n_l2)
                    );
                }
            }
        }
    }

    #[test]
    fn enumeration_contains_worked_point() {
        let k = f(-1);
        let points = enumerate_heegner(&k, -1, 1).unwrap();
        assert!(!points.is_empty());
        assert!(points
            .iter()
            .any(|h| h.tau_elem(&k) == k.conj(&-&FieldElem::zeta())));
        assert!(enumerate_heegner(&k, 1, 1).is_err());
        // counting bound: at most (2B+1)^4 / 2 candidates
        let n = points.len();
        assert!(n as i64 <= 81 / 2 + 1);
    }

    #[test]
    fn reduction_examples() {
        let k = f(-1);
        // tau = 5 + i: lambda = (5 - zeta, 1); reduces to tau = i
        let h = heegner_point(&k, &FieldElem::from_ints(5, -1), &FieldElem::one()).unwrap();
        let tau = h.tau(&k, 96);
        assert!((tau.real().to_f64() - 5.0).abs() < 1e-25);
        let r = reduce_point(&k, &h);
        assert!(r.is_reduced());
        let tau_r = r.tau(&k, 96);
        assert!(tau_r.real().to_f64().abs() < 1e-25);
        assert!((tau_r.imag().to_f64() - 1.0).abs() < 1e-25);
        // idempotent
        assert_eq!(reduce_point(&k, &r), r);
        assert_eq!(r.conductor(), h.conductor());
    }

    #[test]
    fn conductor_invariant_under_reduction_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut tested = 0;
        while tested < 300 {
            let d = [-1, -2, -3, -7, -11][rng.gen_range(0..5)];
            let k = f(d);
            let l1 = FieldElem::from_ints(rng.gen_range(-8..9), rng.gen_range(-8..9));
            let l2 = FieldElem::from_ints(rng.gen_range(-8..9), rng.gen_range(-8..9));
            if l2.is_zero() {
                continue;
            }
            let Ok(h) = heegner_point(&k, &l1, &l2) else { continue };
            let r = reduce_point(&k, &h);
            assert_eq!(r.conductor(), h.conductor());
            assert_eq!(r.content(), h.content());
            assert_eq!(r.index(), h.index());
            assert!(r.is_reduced());
            // reduced tau lies in the fundamental domain
            let re = numeric_re(&r);
            assert!((-0.5 - 1e-12..=0.5 + 1e-12).contains(&re));
            tested += 1;
        }
    }

    fn numeric_re(h: &HeegnerPoint) -> f64 {
        crate::numeric::rat_to_f64(&h.tau_re())
    }

    #[test]
    fn reduced_orbit_set_stabilizes_with_bound() {
        let k = f(-1);
        let orbits = |bound: i64| {
            let mut forms: Vec<_> = enumerate_heegner(&k, -2, bound)
                .unwrap()
                .iter()
                .map(|h| {
                    let r = reduce_point(&k, h);
                    (r.a.clone(), r.b.clone(), r.c.clone())
                })
                .collect();
            forms.sort();
            forms.dedup();
            forms
        };
        assert_eq!(orbits(3), orbits(5));
    }
}
