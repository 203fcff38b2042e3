//! The hermitian lattice L = O_F + D_F^{-1} and its quadratic-module view.
//!
//! Ambient coordinates (x1, x2) with x1 in O_F, x2 in D_F^{-1} are the source
//! of truth. The fixed isotropic basis is
//!
//! ```text
//! l  = (1, 0),          l' = (0, -delta^{-1}),
//! ```
//!
//! so that <l, l'> = delta^{-1} and epsilon = -delta <l', l> = 1. The
//! (l, l')-coordinates lambda_1, lambda_2 (both in O_F for lattice vectors)
//! are derived views. The hermitian form is
//!
//! ```text
//! <x, y> = x1 * conj(y2) + x2 * conj(y1),
//! ```
//!
//! the Z-bilinear form is its trace, and Q(x) = <x, x>. The module also
//! realizes the e_1..e_4 basis splitting L into two hyperbolic planes over Z,
//! the map tau -> z(tau) = l' + tau l, the embedding tau -> Z = (tau,
//! -conj(zeta)) of the upper half-plane into the tube domain, and the
//! projective normalization Z -> Z_L.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numeric::{Cplx, Real};
use crate::qfield::{FieldElem, FieldSpec, Rat};

/// A vector of the hermitian space in ambient coordinates. Lattice membership
/// (x1 in O_F, x2 in D_F^{-1}) is a queryable property, not enforced at
/// construction: derived vectors such as z(tau) for tau in F live in the same
/// type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeVector {
    pub x1: FieldElem,
    pub x2: FieldElem,
}

impl LatticeVector {
    pub fn new(x1: FieldElem, x2: FieldElem) -> Self {
        LatticeVector { x1, x2 }
    }

    /// lambda_1 l + lambda_2 l' with l = (1,0), l' = (0, -delta^{-1}).
    pub fn from_ll(spec: &FieldSpec, l1: &FieldElem, l2: &FieldElem) -> Self {
        let x2 = spec.mul(&-&spec.inv_delta(), l2);
        LatticeVector::new(l1.clone(), x2)
    }

    /// First (l, l')-coordinate; equals x1 for the fixed basis.
    pub fn l1(&self) -> FieldElem {
        self.x1.clone()
    }

    /// Second (l, l')-coordinate, -delta * x2.
    pub fn l2(&self, spec: &FieldSpec) -> FieldElem {
        spec.mul(&-&spec.delta(), &self.x2)
    }

    pub fn in_lattice(&self, spec: &FieldSpec) -> bool {
        spec.in_of(&self.x1) && spec.in_inv_different(&self.x2)
    }

    pub fn add(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector::new(&self.x1 + &other.x1, &self.x2 + &other.x2)
    }

    pub fn neg(&self) -> LatticeVector {
        LatticeVector::new(-&self.x1, -&self.x2)
    }

    /// The mu-hat action: complex scalar multiplication on ambient
    /// coordinates, here with an exact scalar mu in F.
    pub fn scale(&self, spec: &FieldSpec, mu: &FieldElem) -> LatticeVector {
        LatticeVector::new(spec.mul(mu, &self.x1), spec.mul(mu, &self.x2))
    }
}

/// The isotropic basis vector l = (1, 0).
pub fn ell() -> LatticeVector {
    LatticeVector::new(FieldElem::one(), FieldElem::zero())
}

/// The second isotropic basis vector l' = (0, -delta^{-1}).
pub fn ell_prime(spec: &FieldSpec) -> LatticeVector {
    LatticeVector::new(FieldElem::zero(), -&spec.inv_delta())
}

/// epsilon = -delta <l', l>; equals 1 for the fixed basis, which is what
/// collapses the SU(L) = SL_2(Z) isomorphism to the identity.
pub fn epsilon(spec: &FieldSpec) -> FieldElem {
    let e = herm(spec, &ell_prime(spec), &ell());
    spec.mul(&-&spec.delta(), &e)
}

/// Hermitian form <x, y> = x1 conj(y2) + x2 conj(y1); lies in D_F^{-1} for
/// lattice vectors.
pub fn herm(spec: &FieldSpec, x: &LatticeVector, y: &LatticeVector) -> FieldElem {
    &spec.mul(&x.x1, &spec.conj(&y.x2)) + &spec.mul(&x.x2, &spec.conj(&y.x1))
}

/// Z-bilinear form (x, y) = tr <x, y>.
pub fn bilinear(spec: &FieldSpec, x: &LatticeVector, y: &LatticeVector) -> Rat {
    spec.trace(&herm(spec, x, y))
}

/// Quadratic form Q(x) = <x, x>, always rational; an integer on L.
pub fn qform(spec: &FieldSpec, x: &LatticeVector) -> Rat {
    // <x,x> = w + conj(w) for w = x1 conj(x2), so its zeta-part cancels
    let h = herm(spec, x, x);
    debug_assert!(h.b().is_zero(), "<x,x> must be rational");
    h.a().clone()
}

/// The basis (e_1, e_2, e_3, e_4) with e_1 = l, e_3 = -zeta-hat l,
/// e_2 = (zeta / (delta <l',l>))-hat l', e_4 = (1 / (delta <l',l>))-hat l'.
/// With epsilon = 1 this is (l, -zeta-hat l', -zeta-hat l, -l'), and its
/// bilinear Gram matrix consists of two hyperbolic planes over Z.
pub fn ebasis(spec: &FieldSpec) -> [LatticeVector; 4] {
    let l = ell();
    let lp = ell_prime(spec);
    let zeta = FieldElem::zeta();
    let denom = spec.mul(&spec.delta(), &herm(spec, &lp, &l));
    let e1 = l.clone();
    let e3 = l.scale(spec, &-&zeta);
    let e2 = lp.scale(spec, &spec.div(&zeta, &denom).expect("denominator nonzero"));
    let e4 = lp.scale(spec, &spec.inv(&denom).expect("denominator nonzero"));
    [e1, e2, e3, e4]
}

// ---- numeric layer -----------------------------------------------------------

/// Embed an exact vector into C^2 at `prec` bits.
pub fn embed_vector(spec: &FieldSpec, v: &LatticeVector, prec: u32) -> [Cplx; 2] {
    [spec.embed(&v.x1, prec), spec.embed(&v.x2, prec)]
}

/// Hermitian form on complex ambient pairs.
pub fn herm_c(v: &[Cplx; 2], w: &[Cplx; 2]) -> Cplx {
    v[0].clone() * w[1].clone().conj() + v[1].clone() * w[0].clone().conj()
}

/// Real bilinear form (v, w) = 2 Re <v, w> on ambient pairs viewed as real
/// 4-vectors.
pub fn real_bilinear(v: &[Cplx; 2], w: &[Cplx; 2]) -> Real {
    let h = herm_c(v, w);
    h.real().clone() * 2u32
}

/// mu-hat on complex ambient pairs: componentwise scalar multiplication.
pub fn mu_hat(mu: &Cplx, v: &[Cplx; 2]) -> [Cplx; 2] {
    [mu.clone() * &v[0], mu.clone() * &v[1]]
}

/// z(tau) = l' - tau delta <l', l> l = l' + tau l = (tau, -delta^{-1}),
/// the normalized representative of the positive line attached to tau.
pub fn z_of_tau(spec: &FieldSpec, tau: &Cplx) -> Result<[Cplx; 2]> {
    if !(tau.imag().is_sign_positive() && !tau.imag().is_zero()) {
        return Err(Error::Domain(format!("z_of_tau needs Im tau > 0, got {}", tau.imag())));
    }
    let prec = tau.prec().0;
    let minus_inv_delta = spec.embed(&-&spec.inv_delta(), prec);
    Ok([tau.clone(), minus_inv_delta])
}

/// Exact version of [`z_of_tau`] for F-rational tau (used at Heegner points).
pub fn z_of_tau_exact(spec: &FieldSpec, tau: &FieldElem) -> LatticeVector {
    LatticeVector::new(tau.clone(), -&spec.inv_delta())
}

/// A point Z = z1 e_3 + z2 e_4 of the tube domain H_O, with Im z1, Im z2 > 0.
#[derive(Clone, Debug)]
pub struct TubePoint {
    pub z1: Cplx,
    pub z2: Cplx,
}

impl TubePoint {
    pub fn new(z1: Cplx, z2: Cplx) -> Result<TubePoint> {
        for (name, z) in [("z1", &z1), ("z2", &z2)] {
            if !(z.imag().is_sign_positive() && !z.imag().is_zero()) {
                return Err(Error::Domain(format!("tube point needs Im {name} > 0")));
            }
        }
        Ok(TubePoint { z1, z2 })
    }
}

/// The embedding of the upper half-plane into the tube domain,
/// tau -> Z = (tau, -conj(zeta)).
pub fn embed_tau(spec: &FieldSpec, tau: &Cplx) -> Result<TubePoint> {
    let prec = tau.prec().0;
    TubePoint::new(tau.clone(), spec.minus_zeta_bar(prec))
}

/// Imaginary part of the embedded point: Y = (Im tau, |delta|/2).
pub fn y_of_tau(spec: &FieldSpec, tau: &Cplx) -> Result<(Real, Real)> {
    let prec = tau.prec().0;
    if !(tau.imag().is_sign_positive() && !tau.imag().is_zero()) {
        return Err(Error::Domain("Y_of_tau needs Im tau > 0".into()));
    }
    Ok((tau.imag().clone(), spec.abs_delta(prec) / 2u32))
}

/// Normalized representative Z_L = -Q(Z) e_1 + e_2 + Z, returned as e-basis
/// coordinates (-z1 z2, 1, z1, z2); Q(z1 e_3 + z2 e_4) = z1 z2.
pub fn zl_of_z(z: &TubePoint) -> [Cplx; 4] {
    let prec = z.z1.prec().0;
    let q = z.z1.clone() * &z.z2;
    [-q, Cplx::with_val(prec, (1, 0)), z.z1.clone(), z.z2.clone()]
}

/// C-bilinear extension of the two-hyperbolic-planes Gram form on e-basis
/// coordinates: x1 y2 + x2 y1 + x3 y4 + x4 y3 (no conjugation).
pub fn gram_bilinear(x: &[Cplx; 4], y: &[Cplx; 4]) -> Cplx {
    x[0].clone() * &y[1] + x[1].clone() * &y[0] + x[2].clone() * &y[3] + x[3].clone() * &y[2]
}

/// Realize real e-basis coordinates as an ambient pair.
pub fn ecoords_to_ambient(spec: &FieldSpec, coords: &[Real; 4], prec: u32) -> [Cplx; 2] {
    let basis = ebasis(spec);
    let mut out = [Cplx::new(prec), Cplx::new(prec)];
    for (c, e) in coords.iter().zip(basis.iter()) {
        let amb = embed_vector(spec, e, prec);
        out[0] += amb[0].clone() * c;
        out[1] += amb[1].clone() * c;
    }
    out
}
