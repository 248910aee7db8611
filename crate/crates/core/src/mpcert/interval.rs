use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::bigfloat::{BigFloat, Round};
use super::MpError;

/// Closed interval `[lo, hi]` with outward-rounded endpoints.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RealInterval {
    lo: BigFloat,
    hi: BigFloat,
}

/// Outcome of a certified comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmpResult {
    CertLess,
    CertGreater,
    Overlap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl RealInterval {
    /// Panics if `lo > hi`.
    pub fn new(lo: BigFloat, hi: BigFloat) -> Self {
        assert!(lo <= hi, "interval endpoints out of order: {lo:?} > {hi:?}");
        RealInterval { lo, hi }
    }

    pub fn point(v: BigFloat) -> Self {
        RealInterval { lo: v.clone(), hi: v }
    }

    pub fn from_int(v: i64, prec: u32) -> Self {
        let p = prec.max(64);
        Self::point(BigFloat::from_int(v, p)).with_prec(prec)
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        RealInterval {
            lo: BigFloat::from_bigint(v, prec, Round::Down),
            hi: BigFloat::from_bigint(v, prec, Round::Up),
        }
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        RealInterval {
            lo: BigFloat::from_rational(r, prec, Round::Down),
            hi: BigFloat::from_rational(r, prec, Round::Up),
        }
    }

    pub fn from_rationals(lo: &BigRational, hi: &BigRational, prec: u32) -> Self {
        Self::new(
            BigFloat::from_rational(lo, prec, Round::Down),
            BigFloat::from_rational(hi, prec, Round::Up),
        )
    }

    pub fn zero(prec: u32) -> Self {
        Self::point(BigFloat::zero(prec))
    }

    pub fn lo(&self) -> &BigFloat {
        &self.lo
    }

    pub fn hi(&self) -> &BigFloat {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.lo.prec().max(self.hi.prec())
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        RealInterval { lo: self.lo.with_prec(prec, Round::Down), hi: self.hi.with_prec(prec, Round::Up) }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains(&self, v: &BigFloat) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_interval(&self, other: &RealInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn contains_rational(&self, r: &BigRational) -> bool {
        self.lo.to_rational() <= *r && *r <= self.hi.to_rational()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn width(&self) -> BigFloat {
        self.hi.sub(&self.lo, self.prec().max(64), Round::Up)
    }

    pub fn mid(&self) -> BigFloat {
        let p = self.prec() + 2;
        self.lo.add(&self.hi, p, Round::Down).mul_pow2(-1)
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64()
    }

    pub fn neg(&self) -> Self {
        RealInterval { lo: self.hi.neg(), hi: self.lo.neg() }
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        RealInterval { lo: self.lo.mul_pow2(k), hi: self.hi.mul_pow2(k) }
    }

    pub fn hull(&self, other: &Self) -> Self {
        RealInterval { lo: BigFloat::min(&self.lo, &other.lo), hi: BigFloat::max(&self.hi, &other.hi) }
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let lo = BigFloat::max(&self.lo, &other.lo);
        let hi = BigFloat::min(&self.hi, &other.hi);
        if lo <= hi { Some(RealInterval { lo, hi }) } else { None }
    }

    /// Widen symmetrically by `r >= 0`.
    pub fn widen(&self, r: &BigFloat) -> Self {
        let p = self.prec();
        RealInterval { lo: self.lo.sub(r, p, Round::Down), hi: self.hi.add(r, p, Round::Up) }
    }

    fn wider_prec(&self, other: &Self) -> u32 {
        self.prec().max(other.prec())
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.wider_prec(other);
        RealInterval { lo: self.lo.add(&other.lo, p, Round::Down), hi: self.hi.add(&other.hi, p, Round::Up) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p = self.wider_prec(other);
        RealInterval { lo: self.lo.sub(&other.hi, p, Round::Down), hi: self.hi.sub(&other.lo, p, Round::Up) }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p = self.wider_prec(other);
        let (a, b) = (&self.lo, &self.hi);
        let (c, d) = (&other.lo, &other.hi);
        if !a.is_negative() && !c.is_negative() {
            return RealInterval { lo: a.mul(c, p, Round::Down), hi: b.mul(d, p, Round::Up) };
        }
        let cands = [(a, c), (a, d), (b, c), (b, d)];
        let lo = cands.iter().map(|(x, y)| x.mul(y, p, Round::Down)).min().unwrap();
        let hi = cands.iter().map(|(x, y)| x.mul(y, p, Round::Up)).max().unwrap();
        RealInterval { lo, hi }
    }

    pub fn div(&self, other: &Self) -> Result<Self, MpError> {
        if other.contains_zero() {
            return Err(MpError::DivisionByZeroInterval);
        }
        let p = self.wider_prec(other);
        let (a, b) = (&self.lo, &self.hi);
        let (c, d) = (&other.lo, &other.hi);
        let cands = [(a, c), (a, d), (b, c), (b, d)];
        let lo = cands.iter().map(|(x, y)| x.div(y, p, Round::Down)).min().unwrap();
        let hi = cands.iter().map(|(x, y)| x.div(y, p, Round::Up)).max().unwrap();
        Ok(RealInterval { lo, hi })
    }

    pub fn arith(&self, other: &Self, op: ArithOp) -> Result<Self, MpError> {
        Ok(match op {
            ArithOp::Add => self.add(other),
            ArithOp::Sub => self.sub(other),
            ArithOp::Mul => self.mul(other),
            ArithOp::Div => self.div(other)?,
        })
    }

    pub fn recip(&self) -> Result<Self, MpError> {
        Self::from_int(1, self.prec()).div(self)
    }

    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            RealInterval { lo: BigFloat::zero(self.prec()), hi: BigFloat::max(&self.lo.abs(), &self.hi) }
        }
    }

    pub fn sqr(&self) -> Self {
        self.pow_int(2).expect("even power is total")
    }

    /// Integer power; negative exponents require `0 ∉ self`.
    pub fn pow_int(&self, k: i64) -> Result<Self, MpError> {
        if k < 0 {
            if self.contains_zero() {
                return Err(MpError::DivisionByZeroInterval);
            }
            return self.pow_int(-k)?.recip();
        }
        let p = self.prec();
        let k = k as u64;
        if k == 0 {
            return Ok(Self::from_int(1, p));
        }
        let pw = |v: &BigFloat, dir: Round| -> BigFloat {
            if v.is_negative() {
                let m = v.abs().pow_nonneg(k, p, if k % 2 == 0 { dir } else { dir.flip() });
                if k % 2 == 0 { m } else { m.neg() }
            } else {
                v.pow_nonneg(k, p, dir)
            }
        };
        if k % 2 == 1 {
            return Ok(RealInterval { lo: pw(&self.lo, Round::Down), hi: pw(&self.hi, Round::Up) });
        }
        let a = self.abs();
        Ok(RealInterval { lo: pw(&a.lo, Round::Down), hi: pw(&a.hi, Round::Up) })
    }

    pub fn sqrt(&self) -> Result<Self, MpError> {
        if self.lo.is_negative() {
            return Err(MpError::DomainError(format!("sqrt of interval with negative part [{}, {}]", self.lo, self.hi)));
        }
        let p = self.prec();
        Ok(RealInterval { lo: self.lo.sqrt(p, Round::Down), hi: self.hi.sqrt(p, Round::Up) })
    }

    pub fn max_with(&self, other: &Self) -> Self {
        RealInterval { lo: BigFloat::max(&self.lo, &other.lo), hi: BigFloat::max(&self.hi, &other.hi) }
    }

    pub fn min_with(&self, other: &Self) -> Self {
        RealInterval { lo: BigFloat::min(&self.lo, &other.lo), hi: BigFloat::min(&self.hi, &other.hi) }
    }

    pub fn cmp_cert(&self, other: &Self) -> CmpResult {
        if self.hi < other.lo {
            CmpResult::CertLess
        } else if self.lo > other.hi {
            CmpResult::CertGreater
        } else {
            CmpResult::Overlap
        }
    }

    /// Certified `self <= other` (holds for every pair of members).
    pub fn cert_le(&self, other: &Self) -> bool {
        self.hi <= other.lo
    }

    pub fn cert_lt(&self, other: &Self) -> bool {
        self.hi < other.lo
    }

    /// Largest integer certainly `<=` every member.
    pub fn floor_lo(&self) -> BigInt {
        self.lo.floor()
    }

    /// Smallest integer certainly `>=` every member.
    pub fn ceil_hi(&self) -> BigInt {
        self.hi.ceil()
    }

    /// The common floor of every member, if there is one.
    pub fn certain_floor(&self) -> Option<BigInt> {
        let a = self.lo.floor();
        let b = self.hi.floor();
        if a == b { Some(a) } else { None }
    }

    pub fn is_exact_integer(&self) -> Option<BigInt> {
        if self.is_point() && self.lo.is_integer() {
            Some(self.lo.floor())
        } else {
            None
        }
    }

    pub fn mag_is_zero(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }

    pub fn signum_cert(&self) -> Option<i32> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.mag_is_zero() {
            Some(0)
        } else {
            None
        }
    }
}

/// Free-function form of the four basic operations.
pub fn iv_arith(a: &RealInterval, b: &RealInterval, op: ArithOp) -> Result<RealInterval, MpError> {
    a.arith(b, op)
}

pub fn iv_cmp(a: &RealInterval, b: &RealInterval) -> CmpResult {
    a.cmp_cert(b)
}

impl fmt::Debug for RealInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}]", self.lo, self.hi)
    }
}

impl fmt::Display for RealInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: i64, b: i64) -> RealInterval {
        RealInterval::new(BigFloat::from_int(a, 64), BigFloat::from_int(b, 64))
    }

    #[test]
    fn add_endpoints() {
        assert_eq!(iv_arith(&iv(1, 2), &iv(3, 4), ArithOp::Add).unwrap(), iv(4, 6));
    }

    #[test]
    fn mul_sign_cases() {
        assert_eq!(iv_arith(&iv(-1, 2), &iv(3, 3), ArithOp::Mul).unwrap(), iv(-3, 6));
        assert_eq!(iv(-2, -1).mul(&iv(-3, 4)), iv(-8, 6));
    }

    #[test]
    fn div_by_zero_interval() {
        assert_eq!(iv_arith(&iv(1, 1), &iv(0, 1), ArithOp::Div), Err(MpError::DivisionByZeroInterval));
    }

    #[test]
    fn comparisons() {
        assert_eq!(iv_cmp(&iv(1, 2), &iv(3, 4)), CmpResult::CertLess);
        assert_eq!(iv_cmp(&iv(3, 4), &iv(1, 2)), CmpResult::CertGreater);
        assert_eq!(iv_cmp(&iv(1, 3), &iv(2, 4)), CmpResult::Overlap);
    }

    #[test]
    fn powers() {
        assert_eq!(iv(2, 2).pow_int(10).unwrap(), iv(1024, 1024));
        assert_eq!(iv(-2, 3).pow_int(2).unwrap(), iv(0, 9));
        assert_eq!(iv(-2, 3).pow_int(3).unwrap(), iv(-8, 27));
        assert!(iv(-1, 1).pow_int(-1).is_err());
        let h = iv(2, 2).pow_int(-1).unwrap();
        assert_eq!(h.lo().to_f64(), 0.5);
    }

    #[test]
    fn sqrt_domain() {
        assert!(iv(-1, 1).sqrt().is_err());
        assert_eq!(iv(4, 9).sqrt().unwrap(), iv(2, 3));
    }
}
