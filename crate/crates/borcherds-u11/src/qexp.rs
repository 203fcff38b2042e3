//! Exact Laurent q-series arithmetic and the weight-0 Faber basis.
//!
//! - [`QSeries`]: Laurent series in q with arbitrary-precision integer
//!   coefficients and finite precision (coefficients known below `prec`).
//! - [`delta_series`], [`e4_series`], [`e6_series`], [`j_series`]: the
//!   classical building blocks Delta = q prod (1-q^m)^24,
//!   E4 = 1 + 240 sum sigma_3(n) q^n, E6 = 1 - 504 sum sigma_5(n) q^n,
//!   j = E4^3 / Delta.
//! - [`faber_jn`]: the unique weakly holomorphic j_n = q^{-n} + O(q) with
//!   vanishing constant term, built by Faber-style reduction from powers of
//!   j_1 = j - 744.
//!
//! Coefficients grow like exp(4*pi*sqrt(m)), so everything is `BigInt`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;

use crate::error::{Error, Result};

/// Laurent series sum_{m >= val} c_m q^m with coefficients known for all
/// exponents below `prec`.
///
/// Invariants: the leading stored coefficient is nonzero unless the series is
/// identically zero to its precision (then `val == prec` and `coeffs` is
/// empty). Exponents in `val..val+coeffs.len()` are stored; exponents from
/// there up to `prec` are implicitly zero.
#[derive(Clone, PartialEq, Eq)]
pub struct QSeries {
    val: i64,
    coeffs: Vec<BigInt>,
    prec: i64,
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSeries(val={}, prec={}, ", self.val, self.prec)?;
        let shown: Vec<String> = self
            .coeffs
            .iter()
            .take(6)
            .enumerate()
            .map(|(i, c)| format!("{}*q^{}", c, self.val + i as i64))
            .collect();
        write!(f, "{}{})", shown.join(" + "), if self.coeffs.len() > 6 { " + ..." } else { "" })
    }
}

impl QSeries {
    /// Build from an explicit coefficient run starting at exponent `val`.
    pub fn from_coeffs(val: i64, coeffs: Vec<BigInt>, prec: i64) -> QSeries {
        let mut s = QSeries { val, coeffs, prec };
        s.normalize();
        s
    }

    pub fn zero(prec: i64) -> QSeries {
        QSeries { val: prec, coeffs: vec![], prec }
    }

    pub fn one(prec: i64) -> QSeries {
        QSeries::monomial(BigInt::one(), 0, prec)
    }

    pub fn constant(c: BigInt, prec: i64) -> QSeries {
        QSeries::monomial(c, 0, prec)
    }

    pub fn monomial(c: BigInt, exp: i64, prec: i64) -> QSeries {
        QSeries::from_coeffs(exp, vec![c], prec)
    }

    fn normalize(&mut self) {
        // drop stored coefficients at or beyond prec
        if self.val < self.prec {
            let keep = (self.prec - self.val).min(self.coeffs.len() as i64).max(0) as usize;
            self.coeffs.truncate(keep);
        } else {
            self.coeffs.clear();
        }
        // advance valuation past leading zeros
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.val += lead as i64;
        }
        // trim trailing zeros (they are implicit)
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.val = self.prec;
        }
    }

    /// Lowest exponent with a nonzero coefficient; `None` for the zero series.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.val)
        }
    }

    /// Coefficients are known for all exponents strictly below this bound.
    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of q^m. Exponents below the valuation give 0; asking at or
    /// beyond the precision is an error, never a silent 0.
    pub fn coeff(&self, m: i64) -> Result<BigInt> {
        if m >= self.prec {
            return Err(Error::InsufficientPrecision { needed: m, prec: self.prec });
        }
        if m < self.val || m >= self.val + self.coeffs.len() as i64 {
            return Ok(BigInt::zero());
        }
        Ok(self.coeffs[(m - self.val) as usize].clone())
    }

    /// All nonzero (exponent, coefficient) pairs in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.val + i as i64, c))
    }

    pub fn truncate(&self, new_prec: i64) -> QSeries {
        let mut s = self.clone();
        s.prec = s.prec.min(new_prec);
        s.normalize();
        s
    }

    /// Multiply by q^e.
    pub fn shift(&self, e: i64) -> QSeries {
        QSeries { val: self.val + e, coeffs: self.coeffs.clone(), prec: self.prec + e }
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let prec = self.prec.min(other.prec);
        if self.is_zero() {
            return other.truncate(prec);
        }
        if other.is_zero() {
            return self.truncate(prec);
        }
        let val = self.val.min(other.val);
        let hi = (self.val + self.coeffs.len() as i64)
            .max(other.val + other.coeffs.len() as i64)
            .min(prec);
        let mut coeffs = vec![BigInt::zero(); (hi - val).max(0) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = self.val + i as i64;
            if e < prec {
                coeffs[(e - val) as usize] += c;
            }
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            let e = other.val + i as i64;
            if e < prec {
                coeffs[(e - val) as usize] += c;
            }
        }
        QSeries::from_coeffs(val, coeffs, prec)
    }

    pub fn neg(&self) -> QSeries {
        QSeries {
            val: self.val,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            prec: self.prec,
        }
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigInt) -> QSeries {
        if c.is_zero() {
            return QSeries::zero(self.prec);
        }
        QSeries {
            val: self.val,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            prec: self.prec,
        }
    }

    pub fn add_scalar(&self, c: &BigInt) -> QSeries {
        self.add(&QSeries::constant(c.clone(), self.prec))
    }

    /// Product, with precision min(p1 + v2, p2 + v1) as dictated by the
    /// unknown tails of both factors.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let v1 = self.valuation().unwrap_or(self.prec);
        let v2 = other.valuation().unwrap_or(other.prec);
        let prec = (self.prec + v2).min(other.prec + v1);
        if self.is_zero() || other.is_zero() {
            return QSeries::zero(prec);
        }
        let val = v1 + v2;
        let len = ((prec - val).max(0) as usize).min(self.coeffs.len() + other.coeffs.len());
        let mut coeffs = vec![BigInt::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let e = i + j;
                if e >= len {
                    break;
                }
                coeffs[e] += a * b;
            }
        }
        QSeries::from_coeffs(val, coeffs, prec)
    }

    /// Integer power by repeated squaring; `pow(0)` is 1 at this precision.
    pub fn pow(&self, n: u32) -> QSeries {
        if n == 0 {
            return QSeries::one(self.prec);
        }
        let mut result: Option<QSeries> = None;
        let mut base = self.clone();
        let mut e = n;
        loop {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.mul(&base),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base);
        }
        result.unwrap()
    }

    /// Multiplicative inverse. The leading coefficient must be a unit of Z,
    /// i.e. +-1. The result has valuation -v and precision p - 2v.
    pub fn invert(&self) -> Result<QSeries> {
        let v = self.valuation().ok_or_else(|| {
            Error::Arithmetic("cannot invert the zero series".into())
        })?;
        let lead = &self.coeffs[0];
        if !(lead.is_one() || (-lead).is_one()) {
            return Err(Error::Arithmetic(format!(
                "series inversion needs leading coefficient +-1, got {lead}"
            )));
        }
        let rel = (self.prec - v).max(0) as usize; // known unit-part length
        let mut unit = vec![BigInt::zero(); rel];
        for (i, c) in self.coeffs.iter().enumerate().take(rel) {
            unit[i] = c.clone();
        }
        let mut inv = vec![BigInt::zero(); rel];
        if rel > 0 {
            inv[0] = lead.clone(); // lead^{-1} = lead for lead = +-1
            for k in 1..rel {
                let mut acc = BigInt::zero();
                for j in 1..=k {
                    if !unit[j].is_zero() && !inv[k - j].is_zero() {
                        acc += &unit[j] * &inv[k - j];
                    }
                }
                inv[k] = -(lead * acc);
            }
        }
        Ok(QSeries::from_coeffs(-v, inv, self.prec - 2 * v))
    }
}

// ---- divisor sums ----------------------------------------------------------

/// sigma(n) = sum of the positive divisors of n.
pub fn sigma(n: i64) -> Result<i64> {
    divisor_power_sum(n, 1)
}

/// sigma_3(n) = sum of d^3 over the divisors of n.
pub fn sigma3(n: i64) -> Result<i64> {
    divisor_power_sum(n, 3)
}

/// sigma_5(n) = sum of d^5 over the divisors of n.
pub fn sigma5(n: i64) -> Result<i64> {
    divisor_power_sum(n, 5)
}

fn divisor_power_sum(n: i64, k: u32) -> Result<i64> {
    if n < 1 {
        return Err(Error::InvalidInput(format!("divisor sum needs n >= 1, got {n}")));
    }
    let mut acc: u128 = 0;
    let mut d = 1i64;
    while d * d <= n {
        if n % d == 0 {
            acc += (d as u128).pow(k);
            let e = n / d;
            if e != d {
                acc += (e as u128).pow(k);
            }
        }
        d += 1;
    }
    i64::try_from(acc).map_err(|_| Error::Arithmetic(format!("sigma_{k}({n}) overflows i64")))
}

// ---- classical series --------------------------------------------------------

/// prod_{m=1}^{N-1} (1 - q^m), exact to precision N.
pub fn euler_product(prec: i64) -> QSeries {
    let mut f = QSeries::one(prec);
    for m in 1..prec {
        let factor = QSeries::from_coeffs(0, vec![BigInt::one(); 1], prec)
            .add(&QSeries::monomial(-BigInt::one(), m, prec));
        f = f.mul(&factor);
    }
    f
}

/// Delta = q * prod_{m>=1} (1 - q^m)^24, to precision N.
pub fn delta_series(prec: i64) -> QSeries {
    assert!(prec >= 2, "delta_series needs prec >= 2");
    euler_product(prec).pow(24).shift(1).truncate(prec)
}

/// E4 = 1 + 240 sum_{n>=1} sigma_3(n) q^n.
pub fn e4_series(prec: i64) -> QSeries {
    assert!(prec >= 2, "e4_series needs prec >= 2");
    let mut coeffs = vec![BigInt::zero(); prec.max(1) as usize];
    coeffs[0] = BigInt::one();
    for n in 1..prec {
        coeffs[n as usize] = BigInt::from(240) * BigInt::from(sigma3(n).expect("sigma3"));
    }
    QSeries::from_coeffs(0, coeffs, prec)
}

/// E6 = 1 - 504 sum_{n>=1} sigma_5(n) q^n.
pub fn e6_series(prec: i64) -> QSeries {
    assert!(prec >= 2, "e6_series needs prec >= 2");
    let mut coeffs = vec![BigInt::zero(); prec.max(1) as usize];
    coeffs[0] = BigInt::one();
    for n in 1..prec {
        coeffs[n as usize] = BigInt::from(-504) * BigInt::from(sigma5(n).expect("sigma5"));
    }
    QSeries::from_coeffs(0, coeffs, prec)
}

/// j = E4^3 / Delta = q^{-1} + 744 + 196884 q + ...
pub fn j_series(prec: i64) -> QSeries {
    assert!(prec >= 2, "j_series needs prec >= 2");
    let work = prec + 2;
    let e4 = e4_series(work);
    let delta = delta_series(work);
    let inv = delta.invert().expect("Delta has leading coefficient 1");
    e4.pow(3).mul(&inv).truncate(prec)
}

/// The Faber basis form j_n = q^{-n} + O(q), constant term 0, to precision N.
///
/// Built by reduction: j_1 = j - 744; for n > 1, multiply j_1 * j_{n-1}
/// (principal part q^{-n} + lower terms) and clear the coefficients of
/// q^{-n+1}, ..., q^{-1} with earlier basis forms, then subtract the constant
/// term. All arithmetic is exact; every cleared coefficient is an integer.
pub fn faber_jn(n: i64, prec: i64) -> Result<QSeries> {
    if n < 1 {
        return Err(Error::InvalidInput(format!("faber_jn needs n >= 1, got {n}")));
    }
    if prec < 1 {
        return Err(Error::InvalidInput(format!("faber_jn needs prec >= 1, got {prec}")));
    }
    Ok(faber_basis(n, prec)?.pop().expect("nonempty basis"))
}

/// The basis j_1, ..., j_n, each to precision at least N.
pub fn faber_basis(n: i64, prec: i64) -> Result<Vec<QSeries>> {
    if n < 1 || prec < 1 {
        return Err(Error::InvalidInput("faber_basis needs n >= 1, prec >= 1".into()));
    }
    let work = prec + n + 1;
    let j1 = j_series(work).add_scalar(&BigInt::from(-744));
    let mut basis = vec![j1.clone()];
    for m in 2..=n {
        let mut g = j1.mul(&basis[(m - 2) as usize]);
        for k in (1..m).rev() {
            let c = g.coeff(-k)?;
            if !c.is_zero() {
                g = g.sub(&basis[(k - 1) as usize].scale(&c));
            }
        }
        let c0 = g.coeff(0)?;
        g = g.add_scalar(&(-c0));
        basis.push(g);
    }
    Ok(basis.into_iter().map(|f| f.truncate(prec)).collect())
}
