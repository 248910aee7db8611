//! Test-only fixed-point interval arithmetic at scale `2^BITS`, built from
//! integer series with explicit error terms. Shares no code with the
//! library's number types so it can serve as an oracle.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub const BITS: u64 = 640;

fn scale() -> BigInt {
    BigInt::one() << BITS
}

/// `[lo, hi] / 2^BITS`, always `lo <= hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fx {
    pub lo: BigInt,
    pub hi: BigInt,
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = (a / b, a % b);
    if !r.is_zero() && (r.is_negative() != b.is_negative()) {
        q - 1
    } else {
        q
    }
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -floor_div(&-a, b)
}

impl Fx {
    pub fn int(k: i64) -> Fx {
        let v = BigInt::from(k) << BITS;
        Fx { lo: v.clone(), hi: v }
    }

    pub fn ratio(p: i64, q: i64) -> Fx {
        let n = BigInt::from(p) << BITS;
        let d = BigInt::from(q);
        Fx { lo: floor_div(&n, &d), hi: ceil_div(&n, &d) }
    }

    fn widen(self, ulps: i64) -> Fx {
        Fx { lo: self.lo - ulps, hi: self.hi + ulps }
    }

    pub fn add(&self, o: &Fx) -> Fx {
        Fx { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &Fx) -> Fx {
        Fx { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn mul(&self, o: &Fx) -> Fx {
        let s = scale();
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap();
        let hi = c.iter().max().unwrap();
        Fx { lo: floor_div(lo, &s), hi: ceil_div(hi, &s) }
    }

    pub fn pow(&self, k: u64) -> Fx {
        let mut acc = Fx::int(1);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn abs(&self) -> Fx {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            Fx { lo: -&self.hi, hi: -&self.lo }
        } else {
            Fx { lo: BigInt::zero(), hi: self.hi.clone().max(-&self.lo) }
        }
    }

    /// `self <= x` for every member.
    pub fn all_le(&self, x: &Fx) -> bool {
        self.hi <= x.lo
    }

    /// `self > x` for every member.
    pub fn all_gt(&self, x: &Fx) -> bool {
        self.lo > x.hi
    }

    pub fn to_f64(&self) -> f64 {
        let mid: BigInt = (&self.lo + &self.hi) >> 1;
        let shift = (mid.bits() as i64 - 60).max(0) as u64;
        let top: i64 = (&mid >> shift).try_into().unwrap();
        top as f64 * 2f64.powi(shift as i32 - BITS as i32)
    }
}

/// `sqrt(k)` for a nonnegative integer.
pub fn sqrt_int(k: u64) -> Fx {
    let v = BigInt::from(k) << (2 * BITS);
    let r = v.sqrt();
    let hi = if &r * &r == v { r.clone() } else { &r + 1 };
    Fx { lo: r, hi }
}

/// `e = sum 1/j!`. Each computed term is at most two ulps below the true
/// one, and the omitted tail is below one ulp.
pub fn e() -> Fx {
    let s = scale();
    let mut sum = BigInt::zero();
    let mut term = s.clone();
    let mut j = 0u32;
    while !term.is_zero() {
        sum += &term;
        j += 1;
        term = &term / j;
    }
    Fx { lo: sum.clone(), hi: sum + 2 * j as i64 + 2 }
}

/// `atan(1/x)` by its alternating series.
fn atan_inv(x: i64) -> Fx {
    let s = scale();
    let x2 = BigInt::from(x * x);
    let mut pow = &s / x;
    let mut sum = BigInt::zero();
    let mut k = 0i64;
    while !pow.is_zero() {
        let t = &pow / (2 * k + 1);
        if k % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
        pow = &pow / &x2;
        k += 1;
    }
    Fx { lo: sum.clone(), hi: sum }.widen(2 * k + 4)
}

/// `pi = 16 atan(1/5) - 4 atan(1/239)`.
pub fn pi() -> Fx {
    atan_inv(5).mul(&Fx::int(16)).sub(&atan_inv(239).mul(&Fx::int(4)))
}

/// `exp(y)` for `0 <= y <= 64` via the Taylor series at both endpoints.
pub fn exp(y: &Fx) -> Fx {
    assert!(!y.lo.is_negative() && y.hi <= (BigInt::from(64) << BITS));
    let series = |v: &BigInt, up: bool| -> BigInt {
        let s = scale();
        let mut sum = BigInt::zero();
        let mut term = s.clone();
        let mut j = 0i64;
        loop {
            sum += &term;
            j += 1;
            let num = &term * v;
            let den = &s * j;
            term = if up { ceil_div(&num, &den) } else { floor_div(&num, &den) };
            if term.is_zero() || (j > 200 && term < BigInt::from(1u32) << 8) {
                break;
            }
        }
        if up {
            // remaining terms: each ratio is below 1/2 once j > 2v
            sum + 2 * term + j
        } else {
            sum
        }
    };
    Fx { lo: series(&y.lo, false), hi: series(&y.hi, true) }
}

/// `log(x)` for `x >= 1` via `2 atanh((x - 1)/(x + 1))` on a rational `x = p/q`.
pub fn log_ratio(p: i64, q: i64) -> Fx {
    assert!(p >= q && q > 0);
    let s = scale();
    let (a, b) = (BigInt::from(p - q), BigInt::from(p + q));
    let b2 = &b * &b;
    let a2 = &a * &a;
    // t_k = (a/b)^(2k+1)/(2k+1)
    let mut num = &s * &a;
    let mut den = b.clone();
    let mut sum = BigInt::zero();
    let mut k = 0i64;
    loop {
        let t = &num / (&den * (2 * k + 1));
        if t.is_zero() {
            break;
        }
        sum += t;
        num *= &a2;
        den *= &b2;
        k += 1;
    }
    // each floor loses under one ulp; the omitted tail is below the first
    // omitted term (< 1 ulp) over 1 - (a/b)^2, i.e. below (p+q)^2/(4pq) ulps
    let tail = ceil_div(&BigInt::from((p + q) * (p + q)), &BigInt::from(4 * p * q));
    let upper = sum.clone() + k + tail;
    Fx { lo: sum * 2, hi: upper * 2 }
}
