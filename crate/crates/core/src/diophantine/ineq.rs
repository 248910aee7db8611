use num_bigint::BigInt;
use num_traits::One;

use super::DiophantineError;
use crate::mpcert::{elementary, CmpResult, RealInterval};
use crate::rexpr::schedule;

/// Inputs of the absorption lemma `n <= kz + c log n + d  =>  n <= kz + 2c log z`,
/// each given as an enclosure builder at a requested precision.
pub trait Param: Sync {
    fn at(&self, prec: u32) -> RealInterval;
}

impl<F: Fn(u32) -> RealInterval + Sync> Param for F {
    fn at(&self, prec: u32) -> RealInterval {
        self(prec)
    }
}

/// Precision ladder used for the threshold comparisons.
const THRESH_START: u32 = 128;
const THRESH_CAP: u32 = 4096;

/// Certified truth value of `c log n >= 2  and  n >= k^2 c^2 (d+2)^2 e^(d/c) (log n)^2`.
fn predicate(k: &dyn Param, c: &dyn Param, d: &dyn Param, n: &BigInt) -> Result<bool, DiophantineError> {
    for p in schedule(THRESH_START, THRESH_CAP) {
        let (k, c, d) = (k.at(p), c.at(p), d.at(p));
        let nn = RealInterval::from_bigint(n, p);
        let ln = elementary::log(&nn).expect("n >= 3");
        let two = RealInterval::from_int(2, p);
        let first = c.mul(&ln).cmp_cert(&two);
        let ecd = elementary::exp(&d.div(&c).expect("c > 0")).map_err(|_| DiophantineError::PrecisionExhausted)?;
        let rhs = k.sqr().mul(&c.sqr()).mul(&d.add(&two).sqr()).mul(&ecd).mul(&ln.sqr());
        let second = nn.cmp_cert(&rhs);
        if first == CmpResult::CertLess || second == CmpResult::CertLess {
            return Ok(false);
        }
        if first == CmpResult::CertGreater && second == CmpResult::CertGreater {
            return Ok(true);
        }
    }
    Err(DiophantineError::PrecisionExhausted)
}

/// Smallest `N >= 3` such that the lemma's two conditions hold for every
/// `n >= N`. Values 3..7 are checked one by one; from 8 on `n/(log n)^2` and
/// `c log n` both increase, so the set of good `n >= 8` is a ray found by
/// doubling and bisection. The result is extended downward while the
/// predicate keeps holding, and failure at `N - 1` is certified.
pub fn lemma_ineq_threshold(k: &dyn Param, c: &dyn Param, d: &dyn Param) -> Result<BigInt, DiophantineError> {
    let eight = BigInt::from(8);
    let mut hi = eight.clone();
    while !predicate(k, c, d, &hi)? {
        hi *= 2;
    }
    // smallest good value in [8, hi]
    let mut lo = eight.clone();
    if !predicate(k, c, d, &lo)? {
        // invariant: lo bad, hi good
        while &hi - &lo > BigInt::one() {
            let mid: BigInt = (&lo + &hi) >> 1;
            if predicate(k, c, d, &mid)? {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        lo = hi;
    }
    let mut n = lo;
    while n > BigInt::from(3) && predicate(k, c, d, &(&n - 1))? {
        n -= 1;
    }
    Ok(n)
}

/// `kz + 2c log z`, the lemma's conclusion; requires `z >= 2/k`.
pub fn lemma_ineq_bound(k: &RealInterval, c: &RealInterval, z: &RealInterval) -> Result<RealInterval, DiophantineError> {
    let two = RealInterval::from_int(2, z.prec());
    let kz = k.mul(z);
    if !two.cert_le(&kz) && !(kz == two) {
        return Err(DiophantineError::InvalidInput("z must satisfy z >= 2/k".into()));
    }
    let lz = elementary::log(z).map_err(|e| DiophantineError::InvalidInput(e.to_string()))?;
    Ok(kz.add(&c.mul(&lz).mul_pow2(1)))
}

/// Exact rational parameter as a closure, for convenience.
pub fn rational_param(p: i64, q: i64) -> impl Fn(u32) -> RealInterval + Sync {
    move |prec| RealInterval::from_rational(&num_rational::BigRational::new(p.into(), q.into()), prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scan(k: f64, c: f64, d: f64) -> u64 {
        let k2 = k * k * c * c * (d + 2.0) * (d + 2.0) * (d / c).exp();
        let ok = |n: u64| {
            let l = (n as f64).ln();
            c * l >= 2.0 && n as f64 >= k2 * l * l
        };
        // smallest N such that all n in [N, 10^6] are good
        let mut n = 1_000_000u64;
        while n > 3 && ok(n - 1) {
            n -= 1;
        }
        n
    }

    #[test]
    fn reproduces_seventy_five() {
        let one = rational_param(1, 1);
        let zero = rational_param(0, 1);
        assert_eq!(lemma_ineq_threshold(&one, &one, &zero).unwrap(), BigInt::from(75));
    }

    #[test]
    fn matches_linear_scan() {
        for (k, c, d) in [(1, 2, 0), (1, 1, 2), (2, 1, 1), (1, 2, 1)] {
            let got = lemma_ineq_threshold(&rational_param(k, 1), &rational_param(c, 1), &rational_param(d, 1)).unwrap();
            assert_eq!(got, BigInt::from(scan(k as f64, c as f64, d as f64)), "k={k} c={c} d={d}");
        }
    }

    #[test]
    fn bound_examples() {
        let p = 128;
        let one = RealInterval::from_int(1, p);
        let b = lemma_ineq_bound(&one, &one, &RealInterval::from_int(1000, p)).unwrap();
        assert!(b.to_f64() > 1013.8 && b.to_f64() < 1013.9);
        let two = RealInterval::from_int(2, p);
        let b = lemma_ineq_bound(&two, &one, &one).unwrap();
        assert!(b.contains(&crate::mpcert::BigFloat::from_int(2, 8)));
        assert!(lemma_ineq_bound(&one, &one, &one).is_err());
    }

    #[test]
    fn huge_thresholds_are_found() {
        let c = rational_param(1_000_000_000, 1);
        let k = rational_param(1, 1);
        let d = rational_param(1, 1);
        let n = lemma_ineq_threshold(&k, &c, &d).unwrap();
        assert!(n > BigInt::from(10u64.pow(18)));
    }
}
