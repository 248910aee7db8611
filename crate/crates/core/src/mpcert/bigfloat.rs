//! Binary floating point numbers with arbitrary mantissa and directed rounding.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Rounding direction for a single operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

impl Round {
    pub fn flip(self) -> Round {
        match self {
            Round::Down => Round::Up,
            Round::Up => Round::Down,
        }
    }
}

/// `mant * 2^exp`, with `mant` odd (or zero) and at most `prec` bits long.
///
/// The canonical odd mantissa makes equality of `(mant, exp)` coincide with
/// value equality; the precision tag is ignored by `==` and `Hash`.
#[derive(Clone)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

pub const MIN_PREC: u32 = 2;

fn bit_len(m: &BigInt) -> u64 {
    m.magnitude().bits()
}

/// Divide by `2^shift`, rounding in the given direction.
fn shr_round(m: &BigInt, shift: u64, dir: Round) -> BigInt {
    if shift == 0 {
        return m.clone();
    }
    // BigInt >> rounds toward negative infinity
    let floor = m >> shift;
    match dir {
        Round::Down => floor,
        Round::Up => {
            if (&floor << shift) == *m {
                floor
            } else {
                floor + 1
            }
        }
    }
}

impl BigFloat {
    pub fn zero(prec: u32) -> Self {
        BigFloat { mant: BigInt::zero(), exp: 0, prec: prec.max(MIN_PREC) }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_int(1, prec)
    }

    /// Build `mant * 2^exp` rounded to `prec` bits.
    pub fn from_parts(mant: BigInt, exp: i64, prec: u32, dir: Round) -> Self {
        let prec = prec.max(MIN_PREC);
        let len = bit_len(&mant);
        let (mant, exp) = if len > prec as u64 {
            let shift = len - prec as u64;
            (shr_round(&mant, shift, dir), exp + shift as i64)
        } else {
            (mant, exp)
        };
        Self::normalized(mant, exp, prec)
    }

    fn normalized(mut mant: BigInt, mut exp: i64, prec: u32) -> Self {
        if mant.is_zero() {
            return Self::zero(prec);
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            mant >>= tz;
            exp += tz as i64;
        }
        // rounding up can carry into one extra bit
        if bit_len(&mant) > prec as u64 {
            return Self::from_parts(mant, exp, prec, Round::Down);
        }
        BigFloat { mant, exp, prec }
    }

    pub fn from_int(v: i64, prec: u32) -> Self {
        Self::from_parts(BigInt::from(v), 0, prec, Round::Down)
    }

    pub fn from_bigint(v: &BigInt, prec: u32, dir: Round) -> Self {
        Self::from_parts(v.clone(), 0, prec, dir)
    }

    /// `2^e` exactly.
    pub fn pow2(e: i64, prec: u32) -> Self {
        Self::normalized(BigInt::one(), e, prec.max(MIN_PREC))
    }

    pub fn from_f64_exact(v: f64, prec: u32) -> Self {
        assert!(v.is_finite());
        if v == 0.0 {
            return Self::zero(prec);
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let e = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, ex) = if e == 0 { (frac, -1074) } else { (frac | (1u64 << 52), e - 1075) };
        Self::from_parts(BigInt::from(m) * sign, ex, prec.max(53), Round::Down)
    }

    /// Round a rational to `prec` bits.
    pub fn from_rational(r: &BigRational, prec: u32, dir: Round) -> Self {
        let num = r.numer();
        let den = r.denom();
        if num.is_zero() {
            return Self::zero(prec);
        }
        let prec = prec.max(MIN_PREC);
        // scale so the integer quotient carries prec + 2 bits
        let shift = prec as i64 + 2 - (bit_len(num) as i64 - bit_len(den) as i64);
        let (n, d) = if shift >= 0 {
            (num << shift as u64, den.clone())
        } else {
            (num.clone(), den << (-shift) as u64)
        };
        let (q, rem) = n.div_mod_floor(&d);
        if rem.is_zero() {
            return Self::from_parts(q, -shift, prec, dir);
        }
        // true quotient lies strictly inside (q, q+1); its midpoint rounds identically
        Self::from_parts(q * 2 + 1, -shift - 1, prec, dir)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32, dir: Round) -> Self {
        Self::from_parts(self.mant.clone(), self.exp, prec, dir)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    /// Position of the highest set bit: the value lies in `[2^t, 2^(t+1))`.
    pub fn top_bit(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + bit_len(&self.mant) as i64 - 1)
        }
    }

    pub fn is_integer(&self) -> bool {
        self.exp >= 0 || self.is_zero()
    }

    pub fn neg(&self) -> Self {
        BigFloat { mant: -&self.mant, exp: self.exp, prec: self.prec }
    }

    pub fn abs(&self) -> Self {
        BigFloat { mant: self.mant.abs(), exp: self.exp, prec: self.prec }
    }

    /// Multiply by `2^k` exactly.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        BigFloat { mant: self.mant.clone(), exp: self.exp + k, prec: self.prec }
    }

    pub fn add(&self, other: &Self, prec: u32, dir: Round) -> Self {
        if self.is_zero() {
            return other.with_prec(prec, dir);
        }
        if other.is_zero() {
            return self.with_prec(prec, dir);
        }
        let prec = prec.max(MIN_PREC);
        let (big, small) = if self.top_bit() >= other.top_bit() { (self, other) } else { (other, self) };
        let top = big.top_bit().unwrap_or(0);
        let lim = (top - prec as i64 - 4).min(big.exp);
        let small_top = small.top_bit().unwrap_or(0);
        if small_top < lim {
            // small only influences the rounding direction; replace it by a sticky
            // bit strictly below every representable neighbour of big
            let sticky = BigFloat::normalized(BigInt::from(small.signum()), lim - 1, 2);
            return Self::add_exact(big, &sticky, prec, dir);
        }
        Self::add_exact(self, other, prec, dir)
    }

    fn add_exact(a: &Self, b: &Self, prec: u32, dir: Round) -> Self {
        let e = a.exp.min(b.exp);
        let ma = &a.mant << (a.exp - e) as u64;
        let mb = &b.mant << (b.exp - e) as u64;
        Self::from_parts(ma + mb, e, prec, dir)
    }

    pub fn sub(&self, other: &Self, prec: u32, dir: Round) -> Self {
        self.add(&other.neg(), prec, dir)
    }

    pub fn mul(&self, other: &Self, prec: u32, dir: Round) -> Self {
        Self::from_parts(&self.mant * &other.mant, self.exp + other.exp, prec, dir)
    }

    /// Quotient rounded in direction `dir`. Panics on a zero divisor.
    pub fn div(&self, other: &Self, prec: u32, dir: Round) -> Self {
        assert!(!other.is_zero(), "division by zero");
        if self.is_zero() {
            return Self::zero(prec);
        }
        let prec = prec.max(MIN_PREC);
        let shift = prec as i64 + 3 - (bit_len(&self.mant) as i64 - bit_len(&other.mant) as i64);
        let shift = shift.max(0);
        let n = &self.mant << shift as u64;
        let (q, r) = n.div_mod_floor(&other.mant);
        let exp = self.exp - other.exp - shift;
        if r.is_zero() {
            return Self::from_parts(q, exp, prec, dir);
        }
        // floor quotient q < true < q+1; append a half bit to keep the inexact side
        let q2 = q * 2 + 1;
        Self::from_parts(q2, exp - 1, prec, dir)
    }

    /// Square root rounded in direction `dir`. Panics on negative input.
    pub fn sqrt(&self, prec: u32, dir: Round) -> Self {
        assert!(!self.is_negative(), "sqrt of negative number");
        if self.is_zero() {
            return Self::zero(prec);
        }
        let prec = prec.max(MIN_PREC);
        let len = bit_len(&self.mant) as i64;
        let mut shift = 2 * (prec as i64 + 2) - len;
        if shift < 0 {
            shift = 0;
        }
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let n: BigUint = self.mant.magnitude() << shift as u64;
        let root = n.sqrt();
        let exact = &root * &root == n;
        let exp = (self.exp - shift) / 2;
        let root = BigInt::from(root);
        if exact {
            return Self::from_parts(root, exp, prec, dir);
        }
        Self::from_parts(root * 2 + 1, exp - 1, prec, dir)
    }

    /// `self^k` for `self >= 0`, rounded in direction `dir` (repeated squaring with
    /// every intermediate rounded the same way).
    pub fn pow_nonneg(&self, k: u64, prec: u32, dir: Round) -> Self {
        assert!(!self.is_negative());
        let wp = prec + 2 * (64 - k.leading_zeros()) + 8;
        let mut result = Self::one(wp);
        let mut base = self.with_prec(wp, dir);
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base, wp, dir);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, wp, dir);
            }
        }
        result.with_prec(prec, dir)
    }

    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as u64
        } else {
            &self.mant >> (-self.exp) as u64
        }
    }

    pub fn ceil(&self) -> BigInt {
        -(self.neg().floor())
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as u64)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Nearest-ish f64 (truncated mantissa). Saturates to infinities.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let len = bit_len(&self.mant) as i64;
        let drop = (len - 60).max(0);
        let m = (&self.mant >> drop as u64).to_f64().unwrap_or(0.0);
        let e = self.exp + drop;
        if e > 2000 {
            return if m > 0.0 { f64::INFINITY } else { f64::NEG_INFINITY };
        }
        if e < -2200 {
            return 0.0;
        }
        m * 2f64.powi(e as i32)
    }

    /// `(m, e)` with value ≈ `m * 2^e` and `|m| in [0.5, 1)`; for values outside f64 range.
    pub fn to_f64_exp(&self) -> (f64, i64) {
        match self.top_bit() {
            None => (0.0, 0),
            Some(t) => (self.mul_pow2(-(t + 1)).to_f64(), t + 1),
        }
    }

    pub fn min(a: &Self, b: &Self) -> Self {
        if a <= b { a.clone() } else { b.clone() }
    }

    pub fn max(a: &Self, b: &Self) -> Self {
        if a >= b { a.clone() } else { b.clone() }
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.mant == other.mant && (self.mant.is_zero() || self.exp == other.exp)
    }
}

impl Eq for BigFloat {}

impl std::hash::Hash for BigFloat {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.mant.hash(state);
        if !self.mant.is_zero() {
            self.exp.hash(state);
        }
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigFloat {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let ta = self.top_bit().unwrap_or(0);
        let tb = other.top_bit().unwrap_or(0);
        let mag = if ta != tb {
            ta.cmp(&tb)
        } else {
            let e = self.exp.min(other.exp);
            let ma = self.mant.magnitude() << (self.exp - e) as u64;
            let mb = other.mant.magnitude() << (other.exp - e) as u64;
            ma.cmp(&mb)
        };
        if sa > 0 { mag } else { mag.reverse() }
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mant, self.exp)
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (m, e) = self.to_f64_exp();
        if (-1000..1000).contains(&e) {
            write!(f, "{:e}", self.to_f64())
        } else {
            write!(f, "{}*2^{}", m, e)
        }
    }
}
