use std::fmt;

use super::elementary;
use super::interval::RealInterval;
use super::MpError;

/// Rectangular enclosure `re + i·im` of a complex value.
#[derive(Clone, PartialEq, Eq)]
pub struct ComplexBox {
    pub re: RealInterval,
    pub im: RealInterval,
}

impl ComplexBox {
    pub fn new(re: RealInterval, im: RealInterval) -> Self {
        ComplexBox { re, im }
    }

    pub fn real(re: RealInterval) -> Self {
        let p = re.prec();
        ComplexBox { re, im: RealInterval::zero(p) }
    }

    pub fn from_int(v: i64, prec: u32) -> Self {
        Self::real(RealInterval::from_int(v, prec))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn is_real(&self) -> bool {
        self.im.mag_is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        ComplexBox { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        ComplexBox { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn neg(&self) -> Self {
        ComplexBox { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_real() && o.is_real() {
            return Self::real(self.re.mul(&o.re));
        }
        ComplexBox {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn scale(&self, k: &RealInterval) -> Self {
        ComplexBox { re: self.re.mul(k), im: self.im.mul(k) }
    }

    pub fn norm_sqr(&self) -> RealInterval {
        self.re.sqr().add(&self.im.sqr())
    }

    pub fn div(&self, o: &Self) -> Result<Self, MpError> {
        let d = o.norm_sqr();
        let num = self.mul(&ComplexBox { re: o.re.clone(), im: o.im.neg() });
        Ok(ComplexBox { re: num.re.div(&d)?, im: num.im.div(&d)? })
    }

    /// Non-negative integer power by repeated squaring.
    pub fn pow_u64(&self, k: u64) -> Self {
        if self.is_real() {
            return Self::real(self.re.pow_int(k as i64).expect("nonnegative power"));
        }
        let mut result = Self::from_int(1, self.prec());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// `e^(re + i im) = e^re (cos im + i sin im)`.
    pub fn exp(&self) -> Result<Self, MpError> {
        let m = elementary::exp(&self.re)?;
        if self.is_real() {
            return Ok(Self::real(m));
        }
        Ok(ComplexBox { re: m.mul(&elementary::cos(&self.im)), im: m.mul(&elementary::sin(&self.im)) })
    }

    pub fn abs(&self) -> RealInterval {
        cbox_abs(self)
    }
}

/// Enclosure of `|z|` over the box, via `sqrt(re² + im²)`.
pub fn cbox_abs(z: &ComplexBox) -> RealInterval {
    if z.is_real() {
        return z.re.abs();
    }
    if z.re.mag_is_zero() {
        return z.im.abs();
    }
    z.norm_sqr().sqrt().expect("sum of squares is nonnegative")
}

impl fmt::Debug for ComplexBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + i{:?}", self.re, self.im)
    }
}
