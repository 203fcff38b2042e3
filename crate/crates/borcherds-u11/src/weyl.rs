//! Weyl chambers of the Lorentzian sublattice K = Z^2 with Q(l, k) = l*k,
//! the wall-crossing function Phi_m^K, and Weyl vectors.
//!
//! For a negative index m the walls in the positive quadrant C_+ are the rays
//! through (t, |m|/t) for positive divisors t of |m|; the chambers
//!
//! ```text
//! W(t_i, t_{i+1}) = { (y1, y2) : t_i^2 y2 < |m| y1 < t_{i+1}^2 y2 }
//! ```
//!
//! are indexed by adjacent elements of {0} u Div(|m|) u {inf}, giving
//! d(|m|) + 1 chambers. The wall-crossing function evaluates as
//!
//! ```text
//! Phi_m^K(Y) = (4 sqrt2 pi / |Y|) sum_{t>0, t | m} ( |-t y2 + (m/t) y1| - |t y2 + (m/t) y1| )
//! ```
//!
//! with |Y| = sqrt(2 y1 y2), and per chamber it is linear with gradient
//! 8 sqrt2 pi rho_m(W), which defines the Weyl vector.
//!
//! Chamber membership on rational input is decided exactly; the
//! floating-point entry point uses a configurable relative wall tolerance.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::numeric;
use crate::qfield::{rat, FieldSpec, Rat};

/// Default relative tolerance for wall detection on floating-point input.
pub const DEFAULT_WALL_TOL: f64 = 1e-12;

/// Ascending positive divisors of n >= 1.
pub fn divisors(n: i64) -> Result<Vec<i64>> {
    if n < 1 {
        return Err(Error::InvalidInput(format!("divisors needs n >= 1, got {n}")));
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    Ok(small)
}

/// A Weyl chamber W(t_lo, t_hi) of index m < 0. `t_lo = 0` marks the chamber
/// at the y2-axis, `t_hi = None` stands for infinity (the chamber at the
/// y1-axis).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chamber {
    m: i64,
    t_lo: i64,
    t_hi: Option<i64>,
}

impl fmt::Display for Chamber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.t_hi {
            Some(hi) => write!(f, "W({}, {})", self.t_lo, hi),
            None => write!(f, "W({}, inf)", self.t_lo),
        }
    }
}

impl Chamber {
    /// Assemble a chamber of index m from adjacent wall parameters, checking
    /// that they are indeed adjacent in {0} u Div(|m|) u {inf}.
    pub fn new(m: i64, t_lo: i64, t_hi: Option<i64>) -> Result<Chamber> {
        let all = chambers(m)?;
        all.into_iter()
            .find(|c| c.t_lo == t_lo && c.t_hi == t_hi)
            .ok_or_else(|| {
                Error::InvalidInput(format!(
                    "({t_lo}, {t_hi:?}) are not adjacent walls of index {m}"
                ))
            })
    }

    pub fn index(&self) -> i64 {
        self.m
    }

    pub fn t_lo(&self) -> i64 {
        self.t_lo
    }

    pub fn t_hi(&self) -> Option<i64> {
        self.t_hi
    }

    /// Strict interior test, exact on rationals.
    pub fn contains(&self, y1: &Rat, y2: &Rat) -> bool {
        if !(y1.is_positive() && y2.is_positive()) {
            return false;
        }
        let am = rat(-self.m);
        let lhs = rat(self.t_lo * self.t_lo) * y2;
        if lhs >= &am * y1 {
            return false;
        }
        match self.t_hi {
            Some(hi) => &am * y1 < rat(hi * hi) * y2,
            None => true,
        }
    }

    /// A rational point strictly inside the chamber.
    pub fn interior_point(&self) -> (Rat, Rat) {
        let n = -self.m;
        match self.t_hi {
            Some(hi) => (rat(self.t_lo * self.t_lo + hi * hi), rat(2 * n)),
            None => (rat(2 * self.t_lo * self.t_lo + 2), rat(n)),
        }
    }

    /// Mirror chamber under (y1, y2) -> (y2, y1):
    /// W(t_i, t_{i+1}) -> W(|m|/t_{i+1}, |m|/t_i).
    pub fn mirror(&self) -> Chamber {
        let am = -self.m;
        let t_lo = match self.t_hi {
            Some(hi) => am / hi,
            None => 0,
        };
        let t_hi = if self.t_lo == 0 { None } else { Some(am / self.t_lo) };
        Chamber { m: self.m, t_lo, t_hi }
    }

    /// The strip bounds of the chamber inside the upper half-plane under the
    /// embedding: |delta| t^2 / (2|m|) < Im tau < |delta| t'^2 / (2|m|).
    pub fn strip_bounds(&self, spec: &FieldSpec) -> (f64, Option<f64>) {
        let am = (-self.m) as f64;
        let h = spec.abs_delta_f64() / 2.0;
        let lo = h * (self.t_lo * self.t_lo) as f64 / am;
        let hi = self.t_hi.map(|t| h * (t * t) as f64 / am);
        (lo, hi)
    }
}

/// All chambers of index m < 0 in clockwise order
/// [W(0,1), W(1,t_2), ..., W(|m|, inf)]; there are d(|m|) + 1 of them.
pub fn chambers(m: i64) -> Result<Vec<Chamber>> {
    if m >= 0 {
        return Err(Error::InvalidInput(format!("chamber index must be negative, got {m}")));
    }
    let divs = divisors(-m)?;
    let mut walls = vec![0i64];
    walls.extend(&divs);
    let mut out = Vec::with_capacity(walls.len());
    for w in walls.windows(2) {
        out.push(Chamber { m, t_lo: w[0], t_hi: Some(w[1]) });
    }
    out.push(Chamber { m, t_lo: -m, t_hi: None });
    Ok(out)
}

/// Result of locating a point among the chambers of one index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChamberLocation {
    Interior(Chamber),
    OnWall { m: i64, t: i64 },
}

impl ChamberLocation {
    pub fn chamber(self) -> Result<Chamber> {
        match self {
            ChamberLocation::Interior(c) => Ok(c),
            ChamberLocation::OnWall { m, t } => Err(Error::Wall { m, t }),
        }
    }
}

/// Locate Y = (y1, y2) in the chamber decomposition of index m, exactly.
pub fn chamber_of_y(m: i64, y1: &Rat, y2: &Rat) -> Result<ChamberLocation> {
    if m >= 0 {
        return Err(Error::InvalidInput(format!("chamber index must be negative, got {m}")));
    }
    if !(y1.is_positive() && y2.is_positive()) {
        return Err(Error::Domain("Y must lie in the positive quadrant".into()));
    }
    let am = rat(-m);
    let lhs = &am * y1; // compare |m| y1 against t^2 y2
    let mut t_lo = 0i64;
    for t in divisors(-m)? {
        let wall = rat(t * t) * y2;
        if lhs == wall {
            return Ok(ChamberLocation::OnWall { m, t });
        }
        if lhs < wall {
            return Ok(ChamberLocation::Interior(Chamber { m, t_lo, t_hi: Some(t) }));
        }
        t_lo = t;
    }
    Ok(ChamberLocation::Interior(Chamber { m, t_lo: -m, t_hi: None }))
}

/// Locate tau in the half-plane chamber decomposition: the embedded point has
/// Y = (Im tau, |delta|/2). Walls are detected within `rel_tol`.
pub fn chamber_of_tau_with_tol(
    m: i64,
    tau: (f64, f64),
    spec: &FieldSpec,
    rel_tol: f64,
) -> Result<ChamberLocation> {
    if tau.1 <= 0.0 {
        return Err(Error::Domain("chamber_of_tau needs Im tau > 0".into()));
    }
    if m >= 0 {
        return Err(Error::InvalidInput(format!("chamber index must be negative, got {m}")));
    }
    let y1 = tau.1;
    let y2 = spec.abs_delta_f64() / 2.0;
    let lhs = (-m) as f64 * y1;
    let mut t_lo = 0i64;
    for t in divisors(-m)? {
        let wall = (t * t) as f64 * y2;
        if (lhs / wall - 1.0).abs() <= rel_tol {
            return Ok(ChamberLocation::OnWall { m, t });
        }
        if lhs < wall {
            return Ok(ChamberLocation::Interior(Chamber { m, t_lo, t_hi: Some(t) }));
        }
        t_lo = t;
    }
    Ok(ChamberLocation::Interior(Chamber { m, t_lo: -m, t_hi: None }))
}

pub fn chamber_of_tau(m: i64, tau: (f64, f64), spec: &FieldSpec) -> Result<ChamberLocation> {
    chamber_of_tau_with_tol(m, tau, spec, DEFAULT_WALL_TOL)
}

// ---- the wall-crossing function ------------------------------------------------

/// Exact divisor sum of Phi_m^K:
/// sum_{t>0, t | m} ( |-t y2 + (m/t) y1| - |t y2 + (m/t) y1| );
/// Phi_m^K(Y) = (4 sqrt2 pi / |Y|) times this.
pub fn phi_k_sum(m: i64, y1: &Rat, y2: &Rat) -> Result<Rat> {
    if m >= 0 {
        return Err(Error::InvalidInput(format!("phi_k needs m < 0, got {m}")));
    }
    let mut acc = Rat::zero();
    for t in divisors(-m)? {
        let m_over_t = rat(m / t);
        let a = rat(-t) * y2 + &m_over_t * y1;
        let b = rat(t) * y2 + &m_over_t * y1;
        acc = acc + a.abs() - b.abs();
    }
    Ok(acc)
}

/// Exact chamber-formula sum: sum_{t | m, t >= t_hi} (|m|/t) y1
/// + sum_{t | m, 0 < t <= t_lo} t y2; Phi_m^K(Y; W) = (8 sqrt2 pi / |Y|) times
/// this, valid on the closure of W.
pub fn phi_k_chamber_sum(m: i64, w: &Chamber, y1: &Rat, y2: &Rat) -> Result<Rat> {
    if w.index() != m {
        return Err(Error::ChamberMismatch(format!(
            "chamber {w} has index {}, wanted {m}",
            w.index()
        )));
    }
    let am = -m;
    let mut acc = Rat::zero();
    for t in divisors(am)? {
        if let Some(hi) = w.t_hi {
            if t >= hi {
                acc = acc + rat(am / t) * y1;
            }
        }
        if t <= w.t_lo {
            acc = acc + rat(t) * y2;
        }
    }
    Ok(acc)
}

/// Phi_m^K(Y), evaluated in floating point from the divisor sum.
pub fn phi_k(m: i64, y1: f64, y2: f64) -> Result<f64> {
    if !(y1 > 0.0 && y2 > 0.0) {
        return Err(Error::Domain("phi_k needs Y in the positive quadrant".into()));
    }
    let norm_y = (2.0 * y1 * y2).sqrt();
    let mut acc = 0.0;
    for t in divisors(-m)? {
        let m_over_t = (m / t) as f64;
        acc += (-(t as f64) * y2 + m_over_t * y1).abs() - ((t as f64) * y2 + m_over_t * y1).abs();
    }
    Ok(4.0 * 2.0_f64.sqrt() * PI / norm_y * acc)
}

/// Phi_m^K(Y; W): the chamber-adapted linear formula. Y must lie in W.
pub fn phi_k_chamber(m: i64, w: &Chamber, y1: f64, y2: f64) -> Result<f64> {
    if !(y1 > 0.0 && y2 > 0.0) {
        return Err(Error::Domain("phi_k_chamber needs Y in the positive quadrant".into()));
    }
    let ry1 = float_to_rat(y1);
    let ry2 = float_to_rat(y2);
    if !w.contains(&ry1, &ry2) {
        return Err(Error::Domain(format!("Y = ({y1}, {y2}) does not lie in {w}")));
    }
    let sum = phi_k_chamber_sum(m, w, &ry1, &ry2)?;
    let norm_y = (2.0 * y1 * y2).sqrt();
    Ok(8.0 * 2.0_f64.sqrt() * PI / norm_y * numeric::rat_to_f64(&sum))
}

/// Exact rational from a finite f64 (dyadic).
pub fn float_to_rat(x: f64) -> Rat {
    BigRational::from_float(x).expect("finite float")
}

/// Phi_m^K(Y) at `prec` bits: the divisor sum is exact, only the prefactor
/// 4 sqrt2 pi / |Y| rounds.
pub fn phi_k_real(m: i64, y1: &Rat, y2: &Rat, prec: u32) -> Result<crate::numeric::Real> {
    if !(y1.is_positive() && y2.is_positive()) {
        return Err(Error::Domain("phi_k needs Y in the positive quadrant".into()));
    }
    let sum = phi_k_sum(m, y1, y2)?;
    Ok(phi_prefactor(y1, y2, prec, 4) * numeric::rat_to_real(prec, &sum))
}

/// 8 sqrt2 pi B(Y/|Y|, rho_m(W)) at `prec` bits, the linear side of the
/// defining identity of the Weyl vector.
pub fn phi_k_pairing_real(
    m: i64,
    w: &Chamber,
    y1: &Rat,
    y2: &Rat,
    prec: u32,
) -> Result<crate::numeric::Real> {
    let rho = weyl_vector_fm(m, w)?;
    let pairing = y1 * &rho.rho2 + y2 * &rho.rho1;
    Ok(phi_prefactor(y1, y2, prec, 8) * numeric::rat_to_real(prec, &pairing))
}

/// c sqrt2 pi / sqrt(2 y1 y2) at `prec` bits.
fn phi_prefactor(y1: &Rat, y2: &Rat, prec: u32, c: u32) -> crate::numeric::Real {
    let norm_sq = numeric::rat_to_real(prec, &(rat(2) * y1 * y2));
    let two = crate::numeric::Real::with_val(prec, 2);
    numeric::pi(prec) * c * two.sqrt() / norm_sq.sqrt()
}

// ---- Weyl vectors -----------------------------------------------------------

/// A Weyl vector (rho_1, rho_2) in the (e_3, e_4) basis. Integral for F_m and
/// j_n; in (1/24)Z for general input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylVector {
    pub rho1: Rat,
    pub rho2: Rat,
}

impl WeylVector {
    pub fn new(rho1: Rat, rho2: Rat) -> Self {
        WeylVector { rho1, rho2 }
    }

    pub fn from_ints(r1: i64, r2: i64) -> Self {
        WeylVector::new(rat(r1), rat(r2))
    }

    pub fn add(&self, other: &WeylVector) -> WeylVector {
        WeylVector::new(&self.rho1 + &other.rho1, &self.rho2 + &other.rho2)
    }

    pub fn scale_int(&self, c: &BigInt) -> WeylVector {
        let cr = Rat::from_integer(c.clone());
        WeylVector::new(&self.rho1 * &cr, &self.rho2 * &cr)
    }
}

/// Weyl vector of the Poincare-series lift:
/// rho_1 = sum_{t | m, 0 < t <= t_lo} t, rho_2 = sum_{t | m, t >= t_hi} |m|/t.
pub fn weyl_vector_fm(m: i64, w: &Chamber) -> Result<WeylVector> {
    if w.index() != m {
        return Err(Error::ChamberMismatch(format!(
            "chamber {w} has index {}, wanted {m}",
            w.index()
        )));
    }
    let am = -m;
    let mut r1 = 0i64;
    let mut r2 = 0i64;
    for t in divisors(am)? {
        if t <= w.t_lo {
            r1 += t;
        }
        if let Some(hi) = w.t_hi {
            if t >= hi {
                r2 += am / t;
            }
        }
    }
    Ok(WeylVector::from_ints(r1, r2))
}

/// Weyl vector of the basis form j_n:
/// rho_1 = -sum_{t | n, t >= t_hi} t, rho_2 = -sum_{t | n, 0 < t <= t_lo} n/t.
/// Equals weyl_vector_fm(-n, W) - sigma(n) (1, 1).
pub fn weyl_vector_jn(n: i64, w: &Chamber) -> Result<WeylVector> {
    if n < 1 {
        return Err(Error::InvalidInput(format!("weyl_vector_jn needs n >= 1, got {n}")));
    }
    if w.index() != -n {
        return Err(Error::ChamberMismatch(format!(
            "chamber {w} has index {}, wanted {}",
            w.index(),
            -n
        )));
    }
    let mut r1 = 0i64;
    let mut r2 = 0i64;
    for t in divisors(n)? {
        if let Some(hi) = w.t_hi {
            if t >= hi {
                r1 -= t;
            }
        }
        if t <= w.t_lo {
            r2 -= n / t;
        }
    }
    Ok(WeylVector::from_ints(r1, r2))
}

/// Weyl vector of a general weight-0 input with principal part
/// `principal` (m -> c(m), all m < 0) and constant term c0, at the chamber
/// cut out by the base point Y:
///
/// rho(f; W) = sum_m c(m) rho(j_{|m|}; W_m(Y)) + c0 * (1/24, 1/24).
///
/// Y on a wall of any contributing index is an error naming (m, t).
pub fn weyl_vector_f(
    principal: &BTreeMap<i64, BigInt>,
    c0: &BigInt,
    y1: &Rat,
    y2: &Rat,
) -> Result<WeylVector> {
    let mut acc = WeylVector::new(Rat::zero(), Rat::zero());
    for (&m, c) in principal {
        if m >= 0 {
            return Err(Error::InvalidInput(format!(
                "principal part must have negative exponents, got {m}"
            )));
        }
        if c.is_zero() {
            continue;
        }
        let w = chamber_of_y(m, y1, y2)?.chamber()?;
        acc = acc.add(&weyl_vector_jn(-m, &w)?.scale_int(c));
    }
    let twenty_fourth = Rat::new(BigInt::one(), BigInt::from(24));
    let c0r = Rat::from_integer(c0.clone());
    acc = acc.add(&WeylVector::new(&c0r * &twenty_fourth, &c0r * &twenty_fourth));
    Ok(acc)
}

// ---- the Whittaker integral ---------------------------------------------------

/// Compare the integral
///
/// ```text
/// int_0^inf M_{0,1/2}(4 pi |m| y) y^{-3/2} exp(-4 pi y Q - 2 pi y |m|) dy
/// ```
///
/// (with M_{0,1/2}(z) = 2 sinh(z/2), verified in the tests against the
/// confluent-hypergeometric series) against the closed form
/// 4 pi (sqrt(Q + |m|) - sqrt(Q)). Returns (numeric, closed_form).
///
/// Substituting y = u^2 gives the smooth integrand
/// 2 (1 - exp(-4 pi |m| u^2)) u^{-2} exp(-4 pi Q u^2).
pub fn whittaker_check(m: i64, qlv: f64, quad_points: usize) -> Result<(f64, f64)> {
    if m >= 0 {
        return Err(Error::InvalidInput(format!("whittaker_check needs m < 0, got {m}")));
    }
    if qlv <= 0.0 {
        return Err(Error::Domain(
            "whittaker_check needs Q(lambda_v) > 0; the integral diverges at 0".into(),
        ));
    }
    let am = (-m) as f64;
    let closed = 4.0 * PI * ((qlv + am).sqrt() - qlv.sqrt());

    let g = |u: f64| -> f64 {
        if u == 0.0 {
            return 8.0 * PI * am;
        }
        let u2 = u * u;
        2.0 * (-(-4.0 * PI * am * u2).exp_m1()) / u2 * (-4.0 * PI * qlv * u2).exp()
    };
    // cutoff where exp(-4 pi Q u^2) < 1e-19
    let u_max = (44.0 / (4.0 * PI * qlv)).sqrt();
    let panels = quad_points.max(8);
    let mut total = 0.0;
    let step = u_max / panels as f64;
    for i in 0..panels {
        let a = i as f64 * step;
        total += adaptive_simpson(&g, a, a + step, 1e-11 / panels as f64, 24);
    }
    Ok((total, closed))
}

fn simpson(a: f64, fa: f64, b: f64, fb: f64, fm: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (fa, fb, fm) = (f(a), f(b), f(m));
    adaptive_simpson_rec(f, a, b, fa, fb, fm, simpson(a, fa, b, fb, fm), tol, depth)
}

#[allow(clippy::too_many_arguments)]
fn adaptive_simpson_rec(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fb: f64,
    fm: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, fa, m, fm, flm);
    let right = simpson(m, fm, b, fb, frm);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        adaptive_simpson_rec(f, a, m, fa, fm, flm, left, tol / 2.0, depth - 1)
            + adaptive_simpson_rec(f, m, b, fm, fb, frm, right, tol / 2.0, depth - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(6).unwrap(), vec![1, 2, 3, 6]);
        assert_eq!(divisors(1).unwrap(), vec![1]);
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        assert!(divisors(0).is_err());
    }

    #[test]
    fn chamber_lists() {
        let c1 = chambers(-1).unwrap();
        assert_eq!(c1.len(), 2);
        assert_eq!(c1[0], Chamber { m: -1, t_lo: 0, t_hi: Some(1) });
        assert_eq!(c1[1], Chamber { m: -1, t_lo: 1, t_hi: None });

        assert_eq!(chambers(-6).unwrap().len(), 5);

        // |m| = 4 is a square: the diagonal y1 = y2 is the wall t = 2
        let c4 = chambers(-4).unwrap();
        let walls: Vec<_> = c4.iter().map(|c| (c.t_lo, c.t_hi)).collect();
        assert_eq!(
            walls,
            vec![(0, Some(1)), (1, Some(2)), (2, Some(4)), (4, None)]
        );
        let on_diag = chamber_of_y(-4, &rat(1), &rat(1)).unwrap();
        assert_eq!(on_diag, ChamberLocation::OnWall { m: -4, t: 2 });

        assert!(chambers(3).is_err());
    }

    #[test]
    fn chamber_lookup_examples() {
        // m=-1, Y=(1,4) -> W(0,1)
        let loc = chamber_of_y(-1, &rat(1), &rat(4)).unwrap();
        assert_eq!(loc, ChamberLocation::Interior(Chamber { m: -1, t_lo: 0, t_hi: Some(1) }));
        // m=-1, Y=(1,1) -> wall t=1
        let loc = chamber_of_y(-1, &rat(1), &rat(1)).unwrap();
        assert_eq!(loc, ChamberLocation::OnWall { m: -1, t: 1 });
        // m=-6, Y=(1,1) -> W(2,3) since 4/6 < 1 < 9/6
        let loc = chamber_of_y(-6, &rat(1), &rat(1)).unwrap();
        assert_eq!(loc, ChamberLocation::Interior(Chamber { m: -6, t_lo: 2, t_hi: Some(3) }));
    }

    #[test]
    fn chamber_interior_points_are_interior() {
        for m in -12..=-1 {
            for c in chambers(m).unwrap() {
                let (y1, y2) = c.interior_point();
                assert!(c.contains(&y1, &y2), "{c} of index {m}");
                assert_eq!(
                    chamber_of_y(m, &y1, &y2).unwrap(),
                    ChamberLocation::Interior(c.clone())
                );
            }
        }
    }

    #[test]
    fn chamber_of_tau_examples() {
        let k1 = FieldSpec::new(-1).unwrap();
        // d=-1, m=-1, tau = 2i -> W(1, inf) since Im tau = 2 > |delta|/2 = 1
        let loc = chamber_of_tau(-1, (0.0, 2.0), &k1).unwrap();
        assert_eq!(loc, ChamberLocation::Interior(Chamber { m: -1, t_lo: 1, t_hi: None }));
        // tau = i sits on the wall t = 1
        let loc = chamber_of_tau(-1, (0.0, 1.0), &k1).unwrap();
        assert_eq!(loc, ChamberLocation::OnWall { m: -1, t: 1 });
        // d=-3, m=-2, tau = 0.1i -> W(0,1): 0.1 < (sqrt3/2)/2
        let k3 = FieldSpec::new(-3).unwrap();
        let loc = chamber_of_tau(-2, (0.0, 0.1), &k3).unwrap();
        assert_eq!(loc, ChamberLocation::Interior(Chamber { m: -2, t_lo: 0, t_hi: Some(1) }));
    }

    #[test]
    fn phi_k_hand_values() {
        // m=-1, Y=(1,4): (4 sqrt2 pi / sqrt8) * (5 - 3) = 4 pi
        let v = phi_k(-1, 1.0, 4.0).unwrap();
        assert!((v - 4.0 * PI).abs() < 1e-12);
        // mirror
        let v = phi_k(-1, 4.0, 1.0).unwrap();
        assert!((v - 4.0 * PI).abs() < 1e-12);
        // on-wall continuity anchor: Y=(1,1) gives 8 pi
        let v = phi_k(-1, 1.0, 1.0).unwrap();
        assert!((v - 8.0 * PI).abs() < 1e-12);
        assert!(phi_k(-1, 0.0, 1.0).is_err());
    }

    #[test]
    fn phi_k_chamber_hand_values() {
        // m=-1, W(0,1), Y=(1,4): 8 sqrt2 pi * 1 / sqrt8 = 4 pi
        let w = Chamber::new(-1, 0, Some(1)).unwrap();
        let v = phi_k_chamber(-1, &w, 1.0, 4.0).unwrap();
        assert!((v - 4.0 * PI).abs() < 1e-12);
        // m=-6, W(6,inf), Y=(100,1): 8 sqrt2 pi * 12 / sqrt200
        let w = Chamber::new(-6, 6, None).unwrap();
        let v = phi_k_chamber(-6, &w, 100.0, 1.0).unwrap();
        let expect = 8.0 * 2.0_f64.sqrt() * PI * 12.0 / 200.0_f64.sqrt();
        assert!((v - expect).abs() < 1e-12);
        // Y outside the chamber is a domain error
        assert!(phi_k_chamber(-6, &w, 1.0, 100.0).is_err());
    }

    #[test]
    fn phi_k_agrees_with_chamber_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for m in -12..=-1 {
            for w in chambers(m).unwrap() {
                for _ in 0..40 {
                    let (y1, y2) = random_point_in(&w, &mut rng);
                    let raw = phi_k(m, numeric::rat_to_f64(&y1), numeric::rat_to_f64(&y2)).unwrap();
                    let lin =
                        phi_k_chamber(m, &w, numeric::rat_to_f64(&y1), numeric::rat_to_f64(&y2))
                            .unwrap();
                    assert!(
                        (raw - lin).abs() <= 1e-12 * raw.abs().max(1.0),
                        "m={m} {w}: {raw} vs {lin}"
                    );
                    // exact identity between the two divisor sums
                    let s1 = phi_k_sum(m, &y1, &y2).unwrap();
                    let s2 = phi_k_chamber_sum(m, &w, &y1, &y2).unwrap();
                    assert_eq!(s1, rat(2) * s2);
                }
            }
        }
    }

    pub(super) fn random_point_in(w: &Chamber, rng: &mut ChaCha8Rng) -> (Rat, Rat) {
        // y2 = 1, y1 rational strictly inside the strip, denominator 1009
        let am = -w.index();
        let den = 1009i64;
        let lo = w.t_lo * w.t_lo * den;
        let hi = match w.t_hi {
            Some(t) => t * t * den,
            None => (w.t_lo * w.t_lo + am * am + 4) * den * 2,
        };
        // strictly between lo/|m| and hi/|m| in units of 1/den
        let num = rng.gen_range(lo + 1..hi);
        (
            Rat::new(BigInt::from(num), BigInt::from(den * am)),
            rat(1),
        )
    }

    #[test]
    fn phi_k_continuous_across_walls_exact() {
        // adjacent chamber formulas agree on the wall, in exact arithmetic
        for m in [-1i64, -4, -6, -12] {
            let cs = chambers(m).unwrap();
            for pair in cs.windows(2) {
                let t = pair[0].t_hi.unwrap();
                // wall point: |m| y1 = t^2 y2 with y2 = |m|, y1 = t^2
                let y1 = rat(t * t);
                let y2 = rat(-m);
                let a = phi_k_chamber_sum(m, &pair[0], &y1, &y2).unwrap();
                let b = phi_k_chamber_sum(m, &pair[1], &y1, &y2).unwrap();
                assert_eq!(a, b, "wall t={t} of index {m}");
                // and both equal the raw sum halved
                assert_eq!(phi_k_sum(m, &y1, &y2).unwrap(), rat(2) * a);
            }
        }
    }

    #[test]
    fn weyl_vector_fm_examples() {
        let w01 = Chamber::new(-1, 0, Some(1)).unwrap();
        assert_eq!(weyl_vector_fm(-1, &w01).unwrap(), WeylVector::from_ints(0, 1));
        let w12 = Chamber::new(-6, 1, Some(2)).unwrap();
        assert_eq!(weyl_vector_fm(-6, &w12).unwrap(), WeylVector::from_ints(1, 6));
        let w6inf = Chamber::new(-6, 6, None).unwrap();
        assert_eq!(weyl_vector_fm(-6, &w6inf).unwrap(), WeylVector::from_ints(12, 0));
    }

    #[test]
    fn weyl_vector_jn_examples() {
        let w01 = Chamber::new(-1, 0, Some(1)).unwrap();
        assert_eq!(weyl_vector_jn(1, &w01).unwrap(), WeylVector::from_ints(-1, 0));
        let w12 = Chamber::new(-6, 1, Some(2)).unwrap();
        assert_eq!(weyl_vector_jn(6, &w12).unwrap(), WeylVector::from_ints(-11, -6));
        let w6inf = Chamber::new(-6, 6, None).unwrap();
        assert_eq!(weyl_vector_jn(6, &w6inf).unwrap(), WeylVector::from_ints(0, -12));
        // index mismatch is rejected
        assert!(weyl_vector_jn(5, &w6inf).is_err());
    }

    #[test]
    fn weyl_vectors_differ_by_sigma_in_both_components() {
        for n in 1..=12 {
            let sigma_n = crate::qexp::sigma(n).unwrap();
            for w in chambers(-n).unwrap() {
                let fm = weyl_vector_fm(-n, &w).unwrap();
                let jn = weyl_vector_jn(n, &w).unwrap();
                assert_eq!(&fm.rho1 - &jn.rho1, rat(sigma_n));
                assert_eq!(&fm.rho2 - &jn.rho2, rat(sigma_n));
            }
        }
    }

    #[test]
    fn weyl_vector_jn_outermost_chambers() {
        for n in 1..=50 {
            let sigma_n = crate::qexp::sigma(n).unwrap();
            let cs = chambers(-n).unwrap();
            let first = weyl_vector_jn(n, &cs[0]).unwrap();
            assert_eq!(first, WeylVector::from_ints(-sigma_n, 0));
            let last = weyl_vector_jn(n, cs.last().unwrap()).unwrap();
            assert_eq!(last, WeylVector::from_ints(0, -sigma_n));
        }
    }

    #[test]
    fn mirror_symmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for m in [-2i64, -4, -6, -9, -12] {
            for w in chambers(m).unwrap() {
                let (y1, y2) = random_point_in(&w, &mut rng);
                let mirrored = w.mirror();
                assert_eq!(
                    chamber_of_y(m, &y2, &y1).unwrap(),
                    ChamberLocation::Interior(mirrored.clone()),
                    "m={m} {w}"
                );
                // Weyl vector components swap
                let v = weyl_vector_fm(m, &w).unwrap();
                let vm = weyl_vector_fm(m, &mirrored).unwrap();
                assert_eq!(v.rho1, vm.rho2);
                assert_eq!(v.rho2, vm.rho1);
            }
        }
    }

    #[test]
    fn weyl_vector_f_examples() {
        // f = 1: no principal part, c0 = 1 -> (1/24, 1/24)
        let empty = BTreeMap::new();
        let v = weyl_vector_f(&empty, &BigInt::one(), &rat(1), &rat(4)).unwrap();
        let tf = Rat::new(BigInt::one(), BigInt::from(24));
        assert_eq!(v, WeylVector::new(tf.clone(), tf.clone()));

        // f = j_1 at Y=(1,4): chamber W(0,1) of index -1 -> (-1, 0)
        let mut principal = BTreeMap::new();
        principal.insert(-1i64, BigInt::one());
        let v = weyl_vector_f(&principal, &BigInt::zero(), &rat(1), &rat(4)).unwrap();
        assert_eq!(v, WeylVector::from_ints(-1, 0));

        // f = j_1 + 24 -> (-1, 0) + (1, 1) = (0, 1)
        let v = weyl_vector_f(&principal, &BigInt::from(24), &rat(1), &rat(4)).unwrap();
        assert_eq!(v, WeylVector::from_ints(0, 1));

        // wall error carries (m, t)
        let err = weyl_vector_f(&principal, &BigInt::zero(), &rat(1), &rat(1)).unwrap_err();
        assert_eq!(err, Error::Wall { m: -1, t: 1 });
    }

    #[test]
    fn whittaker_m_closed_form_matches_series_definition() {
        // M_{0,1/2}(z) = e^{-z/2} z 1F1(1; 2; z) = 2 sinh(z/2);
        // 1F1(1; 2; z) = sum_k z^k / (k+1)!
        for z in [0.5f64, 1.0, 3.0] {
            let mut term = 1.0;
            let mut kummer = 1.0;
            for k in 1..60 {
                term *= z / (k as f64 + 1.0);
                kummer += term;
            }
            let series = (-z / 2.0).exp() * z * kummer;
            let closed = 2.0 * (z / 2.0).sinh();
            assert!((series - closed).abs() < 1e-12 * closed.abs());
        }
    }

    #[test]
    fn whittaker_integral_examples() {
        let (num, closed) = whittaker_check(-1, 1.0, 64).unwrap();
        assert!((closed - 4.0 * PI * (2.0_f64.sqrt() - 1.0)).abs() < 1e-12);
        assert!((num - closed).abs() < 1e-8, "{num} vs {closed}");

        // large Q asymptotics: closed -> 2 pi |m| / sqrt(Q)
        let (_, c_big) = whittaker_check(-1, 1e8, 16).unwrap();
        assert!((c_big - 2.0 * PI * 1e-4).abs() < 1e-10);

        assert!(whittaker_check(-1, 0.0, 16).is_err());
        assert!(whittaker_check(1, 1.0, 16).is_err());
    }

    #[test]
    fn whittaker_grid_agreement() {
        for am in [1i64, 2, 6] {
            for qlv in [0.5, 1.0, 10.0] {
                let (num, closed) = whittaker_check(-am, qlv, 64).unwrap();
                assert!(
                    (num - closed).abs() < 1e-8,
                    "m={am} Q={qlv}: {num} vs {closed}"
                );
            }
        }
    }
}
