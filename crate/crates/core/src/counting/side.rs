use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::CountError;
use crate::mpcert::{cbox_abs, ComplexBox, RealInterval, Round};
use crate::rexpr::{eval_complex, parse_complex, schedule, ComplexExpr, DEFAULT_PREC_CAP, DEFAULT_PREC_START};

pub(crate) type Gaussian = (BigRational, BigRational);

/// `b_1^k + b_2^k + ...` with `|b_1| > 1` and `|b_1| > |b_j|` certified.
pub struct PowerSumSide {
    terms: Vec<ComplexExpr>,
    dominant_modulus: RealInterval,
    exact: Option<Vec<Gaussian>>,
    cache: Mutex<HashMap<u32, Vec<ComplexBox>>>,
}

impl Clone for PowerSumSide {
    fn clone(&self) -> Self {
        PowerSumSide {
            terms: self.terms.clone(),
            dominant_modulus: self.dominant_modulus.clone(),
            exact: self.exact.clone(),
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl fmt::Debug for PowerSumSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PowerSumSide").field("terms", &self.terms).finish()
    }
}

impl fmt::Display for PowerSumSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({t})^k")?;
        }
        Ok(())
    }
}

pub(crate) fn gauss_mul(a: &Gaussian, b: &Gaussian) -> Gaussian {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

fn gauss_pow(b: &Gaussian, mut k: u64) -> Gaussian {
    let mut acc = (BigRational::one(), BigRational::zero());
    let mut base = b.clone();
    while k > 0 {
        if k & 1 == 1 {
            acc = gauss_mul(&acc, &base);
        }
        k >>= 1;
        if k > 0 {
            base = gauss_mul(&base, &base);
        }
    }
    acc
}

impl PowerSumSide {
    /// The first term is the dominant one; dominance is certified here.
    pub fn new(terms: Vec<ComplexExpr>) -> Result<Self, CountError> {
        Self::with_cap(terms, DEFAULT_PREC_CAP)
    }

    pub fn with_cap(terms: Vec<ComplexExpr>, prec_cap: u32) -> Result<Self, CountError> {
        if terms.is_empty() {
            return Err(CountError::InvalidSide("a side needs at least one term".into()));
        }
        let exact: Option<Vec<Gaussian>> = terms.iter().map(|t| t.exact_gaussian()).collect();
        let mut side = PowerSumSide {
            terms,
            dominant_modulus: RealInterval::zero(64),
            exact,
            cache: Mutex::new(HashMap::new()),
        };
        for p in schedule(DEFAULT_PREC_START, prec_cap) {
            let Ok(mods) = side.moduli(p) else { continue };
            let one = RealInterval::from_int(1, p);
            if mods[0].cert_le(&one) {
                return Err(CountError::InvalidSide("dominant modulus must exceed 1".into()));
            }
            if mods[1..].iter().any(|m| mods[0].cert_le(m)) {
                return Err(CountError::InvalidSide("first term is not strictly dominant".into()));
            }
            if one.cert_lt(&mods[0]) && mods[1..].iter().all(|m| m.cert_lt(&mods[0])) {
                side.dominant_modulus = mods[0].clone();
                return Ok(side);
            }
        }
        Err(CountError::DominanceUndecided)
    }

    /// Parse each term with the complex grammar.
    pub fn parse(terms: &[&str]) -> Result<Self, CountError> {
        let t = terms.iter().map(|s| parse_complex(s)).collect::<Result<Vec<_>, _>>()?;
        Self::new(t)
    }

    pub fn terms(&self) -> &[ComplexExpr] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn dominant_modulus(&self) -> &RealInterval {
        &self.dominant_modulus
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub(crate) fn bases(&self, prec: u32) -> Result<Vec<ComplexBox>, CountError> {
        if let Some(v) = self.cache.lock().unwrap().get(&prec) {
            return Ok(v.clone());
        }
        let v = self.terms.iter().map(|t| eval_complex(t, prec)).collect::<Result<Vec<_>, _>>()?;
        self.cache.lock().unwrap().insert(prec, v.clone());
        Ok(v)
    }

    /// Enclosures of `|b_j|`.
    pub fn moduli(&self, prec: u32) -> Result<Vec<RealInterval>, CountError> {
        Ok(self.bases(prec)?.iter().map(cbox_abs).collect())
    }

    /// Enclosure of the side's value at exponent `k`, at working precision `prec`.
    pub fn value(&self, k: u64, prec: u32) -> Result<ComplexBox, CountError> {
        let guard = 64 - k.leading_zeros() + 8;
        let bases = self.bases(prec + guard)?;
        let mut acc: Option<ComplexBox> = None;
        for b in &bases {
            let t = b.pow_u64(k);
            acc = Some(match acc {
                None => t,
                Some(a) => a.add(&t),
            });
        }
        let v = acc.expect("nonempty");
        Ok(ComplexBox::new(v.re.with_prec(prec), v.im.with_prec(prec)))
    }

    pub(crate) fn exact_value(&self, k: u64) -> Option<Gaussian> {
        let terms = self.exact.as_ref()?;
        let mut acc = (BigRational::zero(), BigRational::zero());
        for b in terms {
            let t = gauss_pow(b, k);
            acc = (acc.0 + t.0, acc.1 + t.1);
        }
        Some(acc)
    }

    /// Certified `(lower, upper)` bounds on `|value(k)|` from the triangle
    /// inequality: `|b_1|^k - sum |b_j|^k` (clamped at 0) and `sum |b_j|^k`.
    pub fn modulus_bounds(&self, k: u64, prec: u32) -> Result<(crate::mpcert::BigFloat, crate::mpcert::BigFloat), CountError> {
        let mods = self.moduli(prec)?;
        let pows: Vec<RealInterval> = mods.iter().map(|m| m.pow_int(k as i64).expect("nonnegative base")).collect();
        let mut up = pows[0].clone();
        let mut rest = RealInterval::zero(prec);
        for p in &pows[1..] {
            up = up.add(p);
            rest = rest.add(p);
        }
        let low = pows[0].sub(&rest);
        let zero = crate::mpcert::BigFloat::zero(prec);
        let lo = if low.lo().is_negative() { zero } else { low.lo().clone() };
        Ok((lo, up.hi().clone()))
    }

    /// Rounded-up f64 estimate of `log2 |b_1|`.
    pub(crate) fn log2_dominant(&self) -> f64 {
        let h = self.dominant_modulus.hi().to_f64();
        if h.is_finite() {
            h.log2().max(0.0)
        } else {
            let (m, e) = self.dominant_modulus.hi().to_f64_exp();
            m.log2() + e as f64
        }
    }
}

/// `a + b` rounded up.
pub(crate) fn add_up(a: &crate::mpcert::BigFloat, b: &crate::mpcert::BigFloat) -> crate::mpcert::BigFloat {
    a.add(b, a.prec().max(b.prec()), Round::Up)
}
