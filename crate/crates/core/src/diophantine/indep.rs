use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::DiophantineError;

const TRIAL_LIMIT: u32 = 1_000_000;
/// Total Pollard rho steps allowed per call.
pub const DEFAULT_RHO_BUDGET: u64 = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Independence {
    Independent,
    /// `a^r = b^s` with `r, s >= 1` minimal.
    Dependent { r: u64, s: u64 },
}

fn small_primes(limit: u32) -> Vec<u32> {
    let n = limit as usize + 1;
    let mut sieve = vec![true; n];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i < n {
        if sieve[i] {
            let mut j = i * i;
            while j < n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (0..n).filter(|&i| sieve[i]).map(|i| i as u32).collect()
}

fn primes() -> &'static [u32] {
    static P: std::sync::OnceLock<Vec<u32>> = std::sync::OnceLock::new();
    P.get_or_init(|| small_primes(TRIAL_LIMIT))
}

/// Miller-Rabin with the first twenty prime bases; deterministic below
/// 3.3e24 and a probable-prime test beyond that.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for &p in &primes()[..20] {
        let p = BigUint::from(p);
        if n == &p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'bases: for &a in &primes()[..20] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == nm1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// One nontrivial factor of an odd composite, Brent's variant of rho.
fn rho(n: &BigUint, budget: &mut u64) -> Option<BigUint> {
    let one = BigUint::one();
    for c in 1u32.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let (mut y, mut r, mut q) = (BigUint::from(2u32), 1u64, BigUint::one());
        let (mut x, mut ys);
        let m = 64u64;
        loop {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            *budget = budget.checked_sub(r)?;
            let mut k = 0;
            let mut g = one.clone();
            ys = y.clone();
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = q * diff % n;
                }
                g = q.gcd(n);
                k += m;
                *budget = budget.checked_sub(m.min(r))?;
            }
            if g != one {
                if &g == n {
                    // backtrack one step at a time
                    loop {
                        ys = f(&ys);
                        let diff = if x > ys { &x - &ys } else { &ys - &x };
                        g = diff.gcd(n);
                        if g != one {
                            break;
                        }
                    }
                }
                if &g != n {
                    return Some(g);
                }
                break;
            }
            r *= 2;
        }
    }
    None
}

/// Prime factorisation of a positive integer with a rho step budget.
pub fn factor(n: &BigUint, budget: &mut u64) -> Result<BTreeMap<BigUint, u64>, DiophantineError> {
    let mut out = BTreeMap::new();
    let mut n = n.clone();
    for &p in primes() {
        if n.is_one() {
            return Ok(out);
        }
        let pb = BigUint::from(p);
        if &pb * &pb > n {
            break;
        }
        while (&n % &pb).is_zero() {
            n /= &pb;
            *out.entry(pb.clone()).or_insert(0) += 1;
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            *out.entry(m).or_insert(0) += 1;
            continue;
        }
        let g = rho(&m, budget).ok_or_else(|| DiophantineError::FactorizationTooLarge(m.to_string()))?;
        stack.push(&m / &g);
        stack.push(g);
    }
    Ok(out)
}

/// Exponent vector of a positive rational over the primes.
fn exponents(r: &BigRational, budget: &mut u64) -> Result<BTreeMap<BigUint, i64>, DiophantineError> {
    let mut out = BTreeMap::new();
    for (p, e) in factor(r.numer().magnitude(), budget)? {
        out.insert(p, e as i64);
    }
    for (p, e) in factor(r.denom().magnitude(), budget)? {
        *out.entry(p).or_insert(0) -= e as i64;
    }
    Ok(out)
}

/// Decide whether `a^r = b^s` for some positive integers, for rationals `a, b > 1`.
/// Both are written as powers of a common primitive rational when dependent.
pub fn mult_indep_rational(a: &BigRational, b: &BigRational) -> Result<Independence, DiophantineError> {
    mult_indep_rational_with_budget(a, b, DEFAULT_RHO_BUDGET)
}

pub fn mult_indep_rational_with_budget(
    a: &BigRational,
    b: &BigRational,
    mut budget: u64,
) -> Result<Independence, DiophantineError> {
    let one = BigRational::one();
    if a <= &one || b <= &one {
        return Err(DiophantineError::InvalidInput("both arguments must exceed 1".into()));
    }
    if a == b {
        return Ok(Independence::Dependent { r: 1, s: 1 });
    }
    let ea = exponents(a, &mut budget)?;
    let eb = exponents(b, &mut budget)?;
    if ea.keys().ne(eb.keys()) {
        return Ok(Independence::Independent);
    }
    let ga = ea.values().fold(0i64, |g, &e| g.gcd(&e));
    let gb = eb.values().fold(0i64, |g, &e| g.gcd(&e));
    // a and b exceed 1, so a common base would appear with the same sign in both
    let same_base = ea.iter().zip(&eb).all(|((_, x), (_, y))| x / ga == y / gb);
    if !same_base {
        return Ok(Independence::Independent);
    }
    let g = ga.gcd(&gb);
    let r = (gb / g).to_u64().expect("small exponent");
    let s = (ga / g).to_u64().expect("small exponent");
    Ok(Independence::Dependent { r, s })
}

/// Convenience for integers.
pub fn mult_indep_int(a: i64, b: i64) -> Result<Independence, DiophantineError> {
    mult_indep_rational(&BigRational::from_integer(BigInt::from(a)), &BigRational::from_integer(BigInt::from(b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn small_integer_pairs() {
        assert_eq!(mult_indep_int(2, 8).unwrap(), Independence::Dependent { r: 3, s: 1 });
        assert_eq!(mult_indep_int(4, 8).unwrap(), Independence::Dependent { r: 3, s: 2 });
        assert_eq!(mult_indep_int(2, 3).unwrap(), Independence::Independent);
        assert_eq!(mult_indep_int(6, 36).unwrap(), Independence::Dependent { r: 2, s: 1 });
        assert_eq!(mult_indep_int(6, 12).unwrap(), Independence::Independent);
    }

    #[test]
    fn rationals() {
        assert_eq!(mult_indep_rational(&q(9, 4), &q(27, 8)).unwrap(), Independence::Dependent { r: 3, s: 2 });
        assert_eq!(mult_indep_rational(&q(5, 2), &q(2, 1)).unwrap(), Independence::Independent);
        assert!(mult_indep_rational(&q(1, 2), &q(2, 1)).is_err());
    }

    #[test]
    fn large_semiprime_powers() {
        // (1000003 * 1000033)^2 and its cube share a base beyond trial division
        let p = BigInt::from(1_000_003i64) * BigInt::from(1_000_033i64);
        let a = BigRational::from_integer(p.pow(2));
        let b = BigRational::from_integer(p.pow(3));
        assert_eq!(mult_indep_rational(&a, &b).unwrap(), Independence::Dependent { r: 3, s: 2 });
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        // product of two 30-bit primes needs more than a handful of rho steps
        let p = BigInt::from(1_000_000_007i64) * BigInt::from(998_244_353i64);
        let a = BigRational::from_integer(p);
        let b = BigRational::from_integer(BigInt::from(3));
        let r = mult_indep_rational_with_budget(&a, &b, 10);
        assert!(matches!(r, Err(DiophantineError::FactorizationTooLarge(_))));
    }

    #[test]
    fn primality() {
        assert!(is_probable_prime(&BigUint::from(1_000_000_007u64)));
        assert!(!is_probable_prime(&BigUint::from(561u32)));
        assert!(!is_probable_prime(&(BigUint::from(1_000_003u64) * BigUint::from(1_000_033u64))));
    }
}
