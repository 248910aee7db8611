use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::poly::{winding_count, IntPoly, Sturm};
use super::RexprError;
use crate::mpcert::{ComplexBox, RealInterval};

/// Rational box isolating one root.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Selector {
    Real { lo: BigRational, hi: BigRational },
    Complex { re_lo: BigRational, re_hi: BigRational, im_lo: BigRational, im_hi: BigRational },
}

/// A root of an integer polynomial pinned down by an isolating box.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraicNumber {
    minpoly: IntPoly,
    selector: Selector,
    isolation_only: bool,
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

impl AlgebraicNumber {
    /// Certify that `selector` isolates exactly one root of `poly`.
    pub fn alg_root(poly: &IntPoly, selector: Selector) -> Result<Self, RexprError> {
        if poly.is_zero() || poly.degree() == 0 {
            return Err(RexprError::Isolation("polynomial has no roots".into()));
        }
        let minpoly = poly.primitive();
        match &selector {
            Selector::Real { lo, hi } => {
                if lo > hi {
                    return Err(RexprError::Isolation(format!("empty interval [{lo}, {hi}]")));
                }
                let n = Sturm::new(&minpoly).count(lo, hi);
                if n != 1 {
                    return Err(RexprError::Isolation(format!("{n} roots of {minpoly} in [{lo}, {hi}]")));
                }
            }
            Selector::Complex { re_lo, re_hi, im_lo, im_hi } => {
                if re_lo >= re_hi || im_lo >= im_hi {
                    return Err(RexprError::Isolation("degenerate rectangle".into()));
                }
                match winding_count(&minpoly, re_lo, re_hi, im_lo, im_hi) {
                    Some(1) => {}
                    Some(n) => {
                        return Err(RexprError::Isolation(format!("{n} roots of {minpoly} in rectangle")));
                    }
                    None => {
                        return Err(RexprError::Isolation(format!(
                            "cannot certify the rectangle boundary is root free for {minpoly}"
                        )))
                    }
                }
            }
        }
        let isolation_only = !minpoly.is_certainly_irreducible();
        Ok(AlgebraicNumber { minpoly, selector, isolation_only })
    }

    pub fn real(poly: &IntPoly, lo: BigRational, hi: BigRational) -> Result<Self, RexprError> {
        Self::alg_root(poly, Selector::Real { lo, hi })
    }

    pub fn complex(
        poly: &IntPoly,
        re: (BigRational, BigRational),
        im: (BigRational, BigRational),
    ) -> Result<Self, RexprError> {
        Self::alg_root(poly, Selector::Complex { re_lo: re.0, re_hi: re.1, im_lo: im.0, im_hi: im.1 })
    }

    pub fn from_rational(r: &BigRational) -> Self {
        let poly = IntPoly::new(vec![-r.numer().clone(), r.denom().clone()]);
        Self::real(&poly, r.clone(), r.clone()).expect("linear polynomial isolates its root")
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(k.into()))
    }

    /// The caller vouches that the polynomial is irreducible over the rationals.
    pub fn assume_irreducible(mut self) -> Self {
        self.isolation_only = false;
        self
    }

    pub fn minpoly(&self) -> &IntPoly {
        &self.minpoly
    }

    pub fn selector(&self) -> &Selector {
        &self.selector
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree()
    }

    pub fn isolation_only(&self) -> bool {
        self.isolation_only
    }

    pub fn has_real_selector(&self) -> bool {
        matches!(self.selector, Selector::Real { .. })
    }

    /// Exact value for rational roots.
    pub fn exact_rational(&self) -> Option<BigRational> {
        if self.minpoly.degree() == 1 {
            let c = self.minpoly.coeffs();
            return Some(BigRational::new(-c[0].clone(), c[1].clone()));
        }
        if let Selector::Real { lo, hi } = &self.selector {
            if lo == hi {
                return Some(lo.clone());
            }
        }
        None
    }

    /// Real isolating interval of width at most `2^-bits` times `max(1, |root|)`.
    fn refine_real(&self, bits: u32) -> (BigRational, BigRational) {
        let Selector::Real { lo, hi } = &self.selector else { unreachable!() };
        let f = self.minpoly.squarefree();
        let (mut lo, mut hi) = (lo.clone(), hi.clone());
        if f.sign_at(&lo) == 0 {
            return (lo.clone(), lo);
        }
        if f.sign_at(&hi) == 0 {
            return (hi.clone(), hi);
        }
        let slo = f.sign_at(&lo);
        let scale = BigRational::from_integer(BigInt::from(1) << bits);
        loop {
            let mag = lo.abs().max(hi.abs()).max(BigRational::from_integer(1.into()));
            if (&hi - &lo) * &scale <= mag {
                return (lo, hi);
            }
            let mid = (&lo + &hi) * half();
            let s = f.sign_at(&mid);
            if s == 0 {
                return (mid.clone(), mid);
            }
            if s == slo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }

    /// Complex isolating rectangle with sides at most `2^-bits` times
    /// `max(1, |corner|)`, kept certified by winding numbers.
    fn refine_complex(&self, bits: u32) -> [BigRational; 4] {
        let Selector::Complex { re_lo, re_hi, im_lo, im_hi } = &self.selector else { unreachable!() };
        let rect = [re_lo.clone(), re_hi.clone(), im_lo.clone(), im_hi.clone()];
        if let Some(r) = newton_rect(&self.minpoly, &rect, bits) {
            return r;
        }
        refine_rect(&self.minpoly, rect, bits).expect("an isolating rectangle can always be split along an offset line")
    }

    pub fn enclose(&self, prec: u32) -> ComplexBox {
        match &self.selector {
            Selector::Real { .. } => ComplexBox::real(self.enclose_real(prec).expect("real selector")),
            Selector::Complex { .. } => {
                if let Some(r) = self.exact_rational() {
                    return ComplexBox::real(RealInterval::from_rational(&r, prec));
                }
                let [a, b, c, d] = self.refine_complex(prec + 2);
                ComplexBox::new(RealInterval::from_rationals(&a, &b, prec), RealInterval::from_rationals(&c, &d, prec))
            }
        }
    }

    /// Enclosure of a root with a real selector; `None` for a complex selector.
    pub fn enclose_real(&self, prec: u32) -> Option<RealInterval> {
        match &self.selector {
            Selector::Real { .. } => {
                if let Some(r) = self.exact_rational() {
                    return Some(RealInterval::from_rational(&r, prec));
                }
                let (lo, hi) = self.refine_real(prec + 2);
                Some(RealInterval::from_rationals(&lo, &hi, prec))
            }
            Selector::Complex { .. } => None,
        }
    }
}

/// Polish a root inside `rect` by Newton steps from an Aberth seed, then
/// certify a tiny square around it by its winding number. The square must sit
/// inside `rect`, which already isolates a single root, so it captures the
/// same root.
fn newton_rect(f: &IntPoly, rect: &[BigRational; 4], bits: u32) -> Option<[BigRational; 4]> {
    let inside = |re: f64, im: f64| {
        let q = |v: f64| BigRational::from_float(v);
        match (q(re), q(im)) {
            (Some(a), Some(b)) => rect[0] <= a && a <= rect[1] && rect[2] <= b && b <= rect[3],
            _ => false,
        }
    };
    let seed = f.approx_roots().into_iter().find(|z| inside(z.re, z.im))?;
    let w = bits + 64;
    let df = f.derivative();
    let mut z = ComplexBox::new(
        RealInterval::from_rational(&BigRational::from_float(seed.re)?, w),
        RealInterval::from_rational(&BigRational::from_float(seed.im)?, w),
    );
    let mut steps = 8;
    let mut acc = 40u32;
    while acc < 2 * w {
        acc *= 2;
        steps += 1;
    }
    for _ in 0..steps {
        let fz = f.eval_cbox(&z);
        let dz = df.eval_cbox(&z);
        let step = fz.div(&dz).ok()?;
        let next = z.sub(&step);
        z = ComplexBox::new(RealInterval::point(next.re.mid()), RealInterval::point(next.im.mid()));
    }
    let (cr, ci) = (z.re.lo().to_rational(), z.im.lo().to_rational());
    let mag = cr.abs().max(ci.abs()).max(BigRational::from_integer(1.into()));
    let half_side = mag / BigRational::from_integer(BigInt::from(1) << (bits + 2));
    let cand = [&cr - &half_side, &cr + &half_side, &ci - &half_side, &ci + &half_side];
    let contained = rect[0] <= cand[0] && cand[1] <= rect[1] && rect[2] <= cand[2] && cand[3] <= rect[3];
    if contained && winding_count(f, &cand[0], &cand[1], &cand[2], &cand[3]) == Some(1) {
        Some(cand)
    } else {
        None
    }
}

/// Shrink an isolating rectangle by repeated halving of its longer side. When a
/// cut line passes through the root the cut is moved off-centre.
pub(crate) fn refine_rect(f: &IntPoly, rect: [BigRational; 4], bits: u32) -> Option<[BigRational; 4]> {
    let [mut a, mut b, mut c, mut d] = rect;
    let scale = BigRational::from_integer(BigInt::from(1) << bits);
    let one = BigRational::from_integer(1.into());
    let fractions = [(1, 2), (3, 7), (4, 7), (2, 5), (3, 5), (5, 11), (6, 11)];
    loop {
        let mag = [&a, &b, &c, &d].iter().map(|x| x.abs()).max().unwrap().max(one.clone());
        let (wr, wi) = (&b - &a, &d - &c);
        if wr.clone().max(wi.clone()) * &scale <= mag {
            return Some([a, b, c, d]);
        }
        let split_re = wr >= wi;
        let mut done = false;
        for &(num, den) in &fractions {
            let t = BigRational::new(num.into(), den.into());
            let (first, second) = if split_re {
                let m = &a + &wr * &t;
                ([a.clone(), m.clone(), c.clone(), d.clone()], [m, b.clone(), c.clone(), d.clone()])
            } else {
                let m = &c + &wi * &t;
                ([a.clone(), b.clone(), c.clone(), m.clone()], [a.clone(), b.clone(), m, d.clone()])
            };
            match winding_count(f, &first[0], &first[1], &first[2], &first[3]) {
                Some(1) => {
                    [a, b, c, d] = first;
                    done = true;
                }
                Some(0) => {
                    [a, b, c, d] = second;
                    done = true;
                }
                _ => continue,
            }
            break;
        }
        if !done {
            return None;
        }
    }
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.selector {
            Selector::Real { lo, hi } => write!(f, "algebraic({}; {}, {})", self.minpoly, lo, hi),
            Selector::Complex { re_lo, re_hi, im_lo, im_hi } => {
                write!(f, "calgebraic({}; {}, {}, {}, {})", self.minpoly, re_lo, re_hi, im_lo, im_hi)
            }
        }
    }
}
