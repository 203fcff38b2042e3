//! Numerical evaluation of the Borcherds products on the upper half-plane:
//! the eta-products Xi(tau; 1) = eta(tau) eta(-conj(zeta)) and
//! Psi(z1, z2; 1) = eta(z1) eta(z2), the chamber-adapted expansions
//! Xi(tau; j_n, W), products for general weight-0 input, truncation-error
//! control, and zero-order counting via the argument principle.
//!
//! A chamber-adapted expansion is
//!
//! ```text
//! Xi(tau; j_n, W) = C e(rho_2 tau - conj(zeta) rho_1)
//!                   prod (1 - e(l tau - k conj(zeta)))^{c(kl)},
//! ```
//!
//! C = 1 here, with the product over pairs (l, k) whose factor argument has
//! positive imaginary part throughout the open chamber W: writing
//! kappa = k e_3 + l e_4, that is B(Y, kappa) = l y_1 + k y_2 > 0 at an
//! interior point Y of W. For kl > 0 this keeps exactly the pairs with
//! l, k >= 1; for kl < 0 it keeps the finitely many divisor pairs on the
//! positive side of the chamber. Factors are accumulated as
//! c * ln(1 - e(...)), which keeps huge exponents exact and makes the tail
//! bound additive.
//!
//! Each expansion converges absolutely for |delta| Im tau > 2n; by default
//! evaluation is restricted to the conservative region Im tau > 2n and
//! [`Region::Theorem`] opts into the full stated region.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};
use crate::numeric::{self, Cplx, Real};
use crate::qexp::{faber_jn, QSeries};
use crate::qfield::{rat, FieldSpec, Rat};
use crate::weyl::{chamber_of_y, Chamber, WeylVector};

/// Convergence region policy for product evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    /// Im tau > 2 |m_0|: the intersection of both readings of the norm
    /// computation behind the convergence bound.
    Conservative,
    /// |delta| Im tau > 2 |m_0|, the bound stated with the product expansion.
    Theorem,
}

/// Truncation and precision parameters for product evaluation.
#[derive(Clone, Debug)]
pub struct ProductParams {
    /// Include factor families with |kl| <= max_kl.
    pub max_kl: i64,
    /// Working precision in bits (>= 64).
    pub prec_bits: u32,
    /// Required decay margin: the growth/decay ratio theta must satisfy
    /// theta <= 1 - tail_margin, else evaluation refuses.
    pub tail_margin: f64,
    pub region: Region,
}

impl Default for ProductParams {
    fn default() -> Self {
        ProductParams { max_kl: 60, prec_bits: 128, tail_margin: 0.05, region: Region::Conservative }
    }
}

impl ProductParams {
    fn validate(&self) -> Result<()> {
        if self.prec_bits < 64 {
            return Err(Error::InvalidInput(format!(
                "prec_bits must be >= 64, got {}",
                self.prec_bits
            )));
        }
        if self.max_kl < 1 {
            return Err(Error::InvalidInput("max_kl must be >= 1".into()));
        }
        if !(0.0..1.0).contains(&self.tail_margin) {
            return Err(Error::InvalidInput("tail_margin must lie in [0, 1)".into()));
        }
        Ok(())
    }
}

/// Value of a truncated product evaluation.
#[derive(Clone, Debug)]
pub struct EvalResult {
    pub value: Cplx,
    /// log |value|, the accumulated real part of the log-sum.
    pub log_abs: Real,
    /// Number of product factors actually evaluated.
    pub factor_count: usize,
    /// Bound on |log Xi_true - log Xi_computed| from the coefficient-growth
    /// estimate, summed against the factor decay; finite inside the
    /// convergence region.
    pub tail_bound: f64,
    /// Weight c(0)/2 of the lift.
    pub weight: Rat,
}

// ---- Dedekind eta -------------------------------------------------------------

/// Number of eta factors so the first omitted one differs from 1 by less
/// than 2^-prec: |e(m tau)| = exp(-2 pi m Im tau).
pub fn eta_terms(im_tau: f64, prec_bits: u32) -> usize {
    ((prec_bits as f64 * LN_2) / (2.0 * PI * im_tau)).ceil() as usize + 1
}

/// eta(tau) = e(tau/24) prod_{m=1}^{terms} (1 - e(m tau)).
pub fn eta(tau: &Cplx, terms: usize) -> Result<Cplx> {
    if !(tau.imag().is_sign_positive() && !tau.imag().is_zero()) {
        return Err(Error::Domain("eta needs Im tau > 0".into()));
    }
    let prec = tau.prec().0;
    let q = numeric::e_of(tau);
    let one = Cplx::with_val(prec, (1, 0));
    let mut qm = Cplx::with_val(prec, (1, 0));
    let mut prod = Cplx::with_val(prec, (1, 0));
    for _ in 0..terms {
        qm *= &q;
        prod *= one.clone() - &qm;
    }
    let prefactor = numeric::e_of(&(tau.clone() / 24u32));
    Ok(prefactor * prod)
}

/// eta with the factor count chosen for `prec_bits` of accuracy at this tau.
pub fn eta_auto(tau: &Cplx, prec_bits: u32) -> Result<Cplx> {
    eta(tau, eta_terms(tau.imag().to_f64(), prec_bits))
}

/// Xi(tau; 1) = eta(tau) * eta(-conj(zeta)), the lift of the constant 1;
/// weight 1/2.
pub fn xi_const(tau: &Cplx, spec: &FieldSpec, params: &ProductParams) -> Result<EvalResult> {
    params.validate()?;
    let prec = params.prec_bits;
    let tau = Cplx::with_val(prec, tau);
    let mzb = spec.minus_zeta_bar(prec);
    let t1 = eta_terms(tau.imag().to_f64(), prec);
    let t2 = eta_terms(mzb.imag().to_f64(), prec);
    let value = eta(&tau, t1)? * eta(&mzb, t2)?;
    let log_abs = value.clone().abs().real().clone().ln();
    let tail = eta_tail(tau.imag().to_f64(), t1) + eta_tail(mzb.imag().to_f64(), t2);
    Ok(EvalResult {
        value,
        log_abs,
        factor_count: t1 + t2,
        tail_bound: tail,
        weight: Rat::new(BigInt::from(1), BigInt::from(2)),
    })
}

/// |log| error of the truncated eta product: sum_{m > T} |q|^m / (1 - |q|).
fn eta_tail(im: f64, terms: usize) -> f64 {
    let r = (-2.0 * PI * im).exp();
    2.0 * r.powi(terms as i32 + 1) / (1.0 - r).powi(2)
}

/// Psi(z1, z2; 1) = eta(z1) * eta(z2): the lift of 1 on the full tube
/// domain. Pulling back along tau -> (tau, -conj(zeta)) recovers
/// [`xi_const`].
pub fn psi_const(z1: &Cplx, z2: &Cplx, params: &ProductParams) -> Result<Cplx> {
    params.validate()?;
    let prec = params.prec_bits;
    let z1 = Cplx::with_val(prec, z1);
    let z2 = Cplx::with_val(prec, z2);
    let a = eta_auto(&z1, prec)?;
    let b = eta_auto(&z2, prec)?;
    Ok(a * b)
}

// ---- chamber-adapted products ---------------------------------------------------

/// A precomputed chamber-adapted product: coefficient table, retained factor
/// families, Weyl vector. Build once, evaluate at many points.
#[derive(Clone, Debug)]
pub struct XiProduct {
    spec: FieldSpec,
    weyl: WeylVector,
    /// Finite factor families (l, k, c(kl)) with kl != 0, |kl| <= max_kl.
    factors: Vec<(i64, i64, BigInt)>,
    /// Exponent c(0) of the two geometric families (l, 0), l >= 1 and
    /// (0, k), k >= 1.
    const_exponent: BigInt,
    /// Smallest exponent with nonzero coefficient (<= 0).
    m0: i64,
    /// Fitted constant with |c(N)| <= kappa * exp(4 pi sqrt(|m0| N)).
    kappa: f64,
    params: ProductParams,
    weight: Rat,
}

/// B(Y, kappa) > 0 for kappa = k e_3 + l e_4 at the interior point Y:
/// the factor (1 - e(l tau - k conj(zeta))) belongs to the chamber with
/// interior point (y1, y2) iff l y1 + k y2 > 0.
fn retained(y1: &Rat, y2: &Rat, l: i64, k: i64) -> bool {
    (rat(l) * y1 + rat(k) * y2).is_positive()
}

/// Append both orientations of the divisor pairs with l*k = m_neg < 0 that
/// lie on the positive side of the chamber with interior point (y1, y2).
fn push_negative_family(
    factors: &mut Vec<(i64, i64, BigInt)>,
    m_neg: i64,
    c: &BigInt,
    y1: &Rat,
    y2: &Rat,
) -> Result<()> {
    let am = -m_neg;
    for l in crate::weyl::divisors(am)? {
        let k = -(am / l);
        if retained(y1, y2, l, k) {
            factors.push((l, k, c.clone()));
        }
        if retained(y1, y2, -l, am / l) {
            factors.push((-l, am / l, c.clone()));
        }
    }
    Ok(())
}

/// ln |c| for a big integer, computed from the top bits (safe for values far
/// beyond f64 range).
fn ln_abs_bigint(c: &BigInt) -> f64 {
    if c.is_zero() {
        return f64::NEG_INFINITY;
    }
    let mag = c.abs();
    let bits = mag.bits();
    if bits <= 52 {
        mag.to_f64().unwrap().ln()
    } else {
        let top: BigInt = mag >> (bits - 53);
        top.to_f64().unwrap().ln() + (bits - 53) as f64 * LN_2
    }
}

impl XiProduct {
    /// Product data for Xi(.; j_n, W). Requires max_kl >= n so the
    /// divisor-carrying factors with kl = -n are present.
    pub fn for_jn(spec: &FieldSpec, n: i64, w: &Chamber, params: &ProductParams) -> Result<XiProduct> {
        params.validate()?;
        if n < 1 {
            return Err(Error::InvalidInput(format!("xi_jn needs n >= 1, got {n}")));
        }
        if w.index() != -n {
            return Err(Error::ChamberMismatch(format!(
                "chamber {w} has index {}, wanted {}",
                w.index(),
                -n
            )));
        }
        if params.max_kl < n {
            return Err(Error::InvalidInput(format!(
                "max_kl = {} < n = {n}: the factors with kl = -n would be missing",
                params.max_kl
            )));
        }
        let jn = faber_jn(n, params.max_kl + 1)?;
        let weyl = crate::weyl::weyl_vector_jn(n, w)?;
        let (y1, y2) = w.interior_point();

        let mut factors = Vec::new();
        push_negative_family(&mut factors, -n, &BigInt::from(1), &y1, &y2)?;
        let mut ln_kappa = f64::NEG_INFINITY;
        for np in 1..=params.max_kl {
            let c = jn.coeff(np)?;
            if c.is_zero() {
                continue;
            }
            ln_kappa = ln_kappa.max(ln_abs_bigint(&c) - 4.0 * PI * ((n * np) as f64).sqrt());
            for l in crate::weyl::divisors(np)? {
                factors.push((l, np / l, c.clone()));
            }
        }
        Ok(XiProduct {
            spec: spec.clone(),
            weyl,
            factors,
            const_exponent: BigInt::zero(),
            m0: -n,
            kappa: 2.0 * ln_kappa.exp(),
            params: params.clone(),
            weight: Rat::zero(),
        })
    }

    /// Product data for a general weight-0 input given by its q-expansion
    /// (coefficients used up to max_kl) at the chamber cut out by the base
    /// point Y = (y1, y2). Y must avoid every wall of an index carrying a
    /// nonzero coefficient.
    pub fn for_f(
        spec: &FieldSpec,
        f: &QSeries,
        y1: &Rat,
        y2: &Rat,
        params: &ProductParams,
    ) -> Result<XiProduct> {
        params.validate()?;
        let Some(val) = f.valuation() else {
            return Err(Error::InvalidInput("cannot lift the zero input".into()));
        };
        if !(y1.is_positive() && y2.is_positive()) {
            return Err(Error::Domain("base point must lie in the positive quadrant".into()));
        }
        let m0 = val.min(0);

        // principal part and Weyl vector via the per-index chambers of Y
        let mut principal = std::collections::BTreeMap::new();
        for m in val..0 {
            let c = f.coeff(m)?;
            if !c.is_zero() {
                // reject walls before anything else
                chamber_of_y(m, y1, y2)?.chamber()?;
                principal.insert(m, c);
            }
        }
        let c0 = if f.prec() > 0 { f.coeff(0)? } else { BigInt::zero() };
        let weyl = crate::weyl::weyl_vector_f(&principal, &c0, y1, y2)?;

        let mut factors = Vec::new();
        for (&m, c) in &principal {
            push_negative_family(&mut factors, m, c, y1, y2)?;
        }
        let mut ln_kappa = f64::NEG_INFINITY;
        let growth = (-m0).max(1) as f64;
        for np in 1..=params.max_kl {
            let c = f.coeff(np)?;
            if c.is_zero() {
                continue;
            }
            ln_kappa = ln_kappa.max(ln_abs_bigint(&c) - 4.0 * PI * (growth * np as f64).sqrt());
            for l in crate::weyl::divisors(np)? {
                factors.push((l, np / l, c.clone()));
            }
        }
        let weight = Rat::from_integer(c0.clone()) / rat(2);
        Ok(XiProduct {
            spec: spec.clone(),
            weyl,
            factors,
            const_exponent: c0,
            m0,
            kappa: 2.0 * ln_kappa.exp(),
            params: params.clone(),
            weight,
        })
    }

    pub fn weyl_vector(&self) -> &WeylVector {
        &self.weyl
    }

    /// The retained finite factor families (l, k, c(kl)).
    pub fn factors(&self) -> &[(i64, i64, BigInt)] {
        &self.factors
    }

    fn check_region(&self, im: f64) -> Result<()> {
        let n = (-self.m0) as f64;
        if n == 0.0 {
            return Ok(());
        }
        let delta = self.spec.abs_delta_f64();
        let bound = match self.params.region {
            Region::Conservative => 2.0 * n,
            Region::Theorem => 2.0 * n / delta,
        };
        if im <= bound {
            return Err(Error::Convergence(format!(
                "Im tau = {im} is not above the {:?} bound {bound}",
                self.params.region
            )));
        }
        // decay margin of the positive-family tail
        let theta = (n / (im * delta / 2.0)).sqrt();
        if theta > 1.0 - self.params.tail_margin {
            return Err(Error::Convergence(format!(
                "decay ratio theta = {theta:.4} exceeds 1 - tail_margin = {:.4}",
                1.0 - self.params.tail_margin
            )));
        }
        Ok(())
    }

    /// Evaluate the product at tau. Errors on points outside the convergence
    /// region and on exact zeros of a retained factor (divisor hits).
    pub fn eval(&self, tau: &Cplx) -> Result<EvalResult> {
        let prec = self.params.prec_bits;
        let tau = Cplx::with_val(prec, tau);
        if !(tau.imag().is_sign_positive() && !tau.imag().is_zero()) {
            return Err(Error::Domain("xi product needs Im tau > 0".into()));
        }
        let im = tau.imag().to_f64();
        self.check_region(im)?;

        let mzb = self.spec.minus_zeta_bar(prec); // -conj(zeta)
        let one = Cplx::with_val(prec, (1, 0));

        // Weyl term: e(rho_2 tau - conj(zeta) rho_1)
        let rho1 = numeric::rat_to_real(prec, &self.weyl.rho1);
        let rho2 = numeric::rat_to_real(prec, &self.weyl.rho2);
        let weyl_arg = tau.clone() * &rho2 + mzb.clone() * &rho1;
        let two_pi_i = Cplx::with_val(prec, (Real::new(prec), 2 * numeric::pi(prec)));
        let mut acc = two_pi_i.clone() * weyl_arg;

        let mut factor_count = 0usize;
        for (l, k, c) in &self.factors {
            let arg = tau.clone() * *l + mzb.clone() * *k;
            let w = numeric::e_of(&arg);
            let one_minus = one.clone() - w;
            if one_minus.is_zero() {
                let a = (-arg.real().to_f64()).round() as i64;
                return Err(Error::DivisorHit { l: *l, k: *k, a });
            }
            acc += numeric::bigint_to_real(prec, c) * one_minus.ln();
            factor_count += 1;
        }

        // geometric families for c(0) != 0
        let mut geo_tail = 0.0;
        if !self.const_exponent.is_zero() {
            let c0 = numeric::bigint_to_real(prec, &self.const_exponent);
            let c0_abs = ln_abs_bigint(&self.const_exponent).exp();
            for base in [&tau, &mzb] {
                let terms = eta_terms(base.imag().to_f64(), prec);
                let q = numeric::e_of(base);
                let mut qm = Cplx::with_val(prec, (1, 0));
                for _ in 0..terms {
                    qm *= &q;
                    acc += c0.clone() * (one.clone() - &qm).ln();
                    factor_count += 1;
                }
                geo_tail += c0_abs * eta_tail(base.imag().to_f64(), terms);
            }
        }

        let value = acc.clone().exp();
        let log_abs = acc.real().clone();
        let tail_bound = self.tail_bound(im) + geo_tail;
        Ok(EvalResult { value, log_abs, factor_count, tail_bound, weight: self.weight.clone() })
    }

    /// Tail of the omitted families kl > max_kl: with theta < 1 from the
    /// region check,
    ///
    /// ```text
    /// |c(lk)| |e(l tau - k conj(zeta))| <= kappa exp(-2 pi (1-theta)(l v + k h)),
    /// ```
    ///
    /// and l + k > 2 sqrt(max_kl) on the omitted range, so the tail is
    /// dominated by 2 kappa sum_{j >= J} j x^j with x = exp(-2 pi (1-theta)
    /// min(v, h)).
    pub fn tail_bound(&self, im: f64) -> f64 {
        if self.kappa == 0.0 || !self.kappa.is_finite() {
            return if self.kappa == 0.0 { 0.0 } else { f64::INFINITY };
        }
        let h = self.spec.abs_delta_f64() / 2.0;
        let n = (-self.m0).max(0) as f64;
        let theta = if n > 0.0 { (n / (im * h)).sqrt() } else { 0.0 };
        let a = 2.0 * PI * (1.0 - theta) * im.min(h);
        let x = (-a).exp();
        let j = (2.0 * (self.params.max_kl as f64).sqrt()).floor() + 1.0;
        // sum_{j >= J} j x^j = x^J (J - (J-1) x) / (1-x)^2
        2.0 * self.kappa * x.powf(j) * (j - (j - 1.0) * x) / (1.0 - x).powi(2)
    }
}

/// One-shot evaluation of Xi(tau; j_n, W).
pub fn xi_jn(
    tau: &Cplx,
    spec: &FieldSpec,
    n: i64,
    w: &Chamber,
    params: &ProductParams,
) -> Result<EvalResult> {
    XiProduct::for_jn(spec, n, w, params)?.eval(tau)
}

/// One-shot evaluation of Xi(tau; f, W(Y)) for a general q-expansion f.
pub fn xi_f(
    tau: &Cplx,
    spec: &FieldSpec,
    f: &QSeries,
    y1: &Rat,
    y2: &Rat,
    params: &ProductParams,
) -> Result<EvalResult> {
    XiProduct::for_f(spec, f, y1, y2, params)?.eval(tau)
}

/// Winding number of Xi(.; j_n, W) along the circle |tau - tau0| = radius,
/// which equals the number of zeros minus poles inside. Argument increments
/// are accumulated over `samples` points; any increment of at least pi/2
/// triggers refinement (doubling), up to a refinement cap.
pub fn zero_order(
    spec: &FieldSpec,
    tau0: &Cplx,
    n: i64,
    w: &Chamber,
    radius: f64,
    samples: usize,
    params: &ProductParams,
) -> Result<i64> {
    if radius <= 0.0 {
        return Err(Error::InvalidInput("radius must be positive".into()));
    }
    let product = XiProduct::for_jn(spec, n, w, params)?;
    let prec = params.prec_bits;
    let mut count = samples.max(8);
    const MAX_SAMPLES: usize = 1 << 14;
    loop {
        let mut values = Vec::with_capacity(count);
        for j in 0..count {
            let angle = 2.0 * PI * j as f64 / count as f64;
            let offset = numeric::cplx_f64(prec, radius * angle.cos(), radius * angle.sin());
            let point = tau0.clone() + offset;
            values.push(product.eval(&point)?.value);
        }
        let mut total = 0.0f64;
        let mut ok = true;
        for j in 0..count {
            let ratio = values[(j + 1) % count].clone() / &values[j];
            let inc = numeric::arg(&ratio).to_f64();
            if inc.abs() >= PI / 2.0 {
                ok = false;
                break;
            }
            total += inc;
        }
        if ok {
            let winding = total / (2.0 * PI);
            let rounded = winding.round();
            if (winding - rounded).abs() > 0.25 {
                return Err(Error::Inconclusive(format!(
                    "winding number {winding} is not close to an integer"
                )));
            }
            return Ok(rounded as i64);
        }
        count *= 2;
        if count > MAX_SAMPLES {
            return Err(Error::Inconclusive(
                "argument increments stayed >= pi/2 at the refinement cap".into(),
            ));
        }
    }
}
