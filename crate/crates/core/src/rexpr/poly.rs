//! Integer polynomials in one variable and the exact root-counting tools the
//! algebraic layer needs.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::mpcert::{ComplexBox, RealInterval};

/// Coefficients from the constant term upward; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("nonzero polynomial")
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let g = self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        let sign = if self.leading().is_negative() { -BigInt::one() } else { BigInt::one() };
        Self::new(self.coeffs.iter().map(|c| c / &g * &sign).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn sign_at(&self, x: &BigRational) -> i32 {
        let v = self.eval_rational(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Exact value at the Gaussian rational `re + i im`.
    pub fn eval_gaussian(&self, re: &BigRational, im: &BigRational) -> (BigRational, BigRational) {
        let (mut ar, mut ai) = (BigRational::zero(), BigRational::zero());
        for c in self.coeffs.iter().rev() {
            let nr = &ar * re - &ai * im + BigRational::from_integer(c.clone());
            let ni = &ar * im + &ai * re;
            ar = nr;
            ai = ni;
        }
        (ar, ai)
    }

    pub fn eval_interval(&self, x: &RealInterval) -> RealInterval {
        let p = x.prec();
        let mut acc = RealInterval::zero(p);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&RealInterval::from_bigint(c, p));
        }
        acc
    }

    pub fn eval_cbox(&self, z: &ComplexBox) -> ComplexBox {
        let p = z.prec();
        let mut acc = ComplexBox::from_int(0, p);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z).add(&ComplexBox::real(RealInterval::from_bigint(c, p)));
        }
        acc
    }

    pub fn eval_f64(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
        }
        acc
    }

    /// Integer bound `B` with every complex root of modulus `< B` (Cauchy).
    pub fn root_bound(&self) -> BigInt {
        let lead = self.leading().abs();
        let mut best = BigInt::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let q = c.abs().div_ceil(&lead);
            if q > best {
                best = q;
            }
        }
        best + 1
    }

    /// Squarefree part over the rationals, made primitive.
    pub fn squarefree(&self) -> Self {
        let f = RatPoly::from_int(self);
        let g = f.gcd(&RatPoly::from_int(&self.derivative()));
        if g.degree() == 0 {
            return self.primitive();
        }
        f.div_exact(&g).to_int_primitive()
    }

    /// Rational roots, found by the rational root test. Returns `None` when the
    /// constant or leading coefficient is too large to enumerate divisors.
    pub fn rational_roots(&self) -> Option<Vec<BigRational>> {
        let mut out = Vec::new();
        let mut f = self.primitive();
        if f.degree() == 0 {
            return Some(out);
        }
        // strip x factors
        if f.coeffs[0].is_zero() {
            out.push(BigRational::zero());
            let k = f.coeffs.iter().position(|c| !c.is_zero()).unwrap();
            f = IntPoly::new(f.coeffs[k..].to_vec());
        }
        let a0 = f.coeffs[0].abs().to_u64()?;
        let ad = f.leading().abs().to_u64()?;
        const LIMIT: u64 = 1 << 40;
        if a0 > LIMIT || ad > LIMIT {
            return None;
        }
        for p in divisors(a0) {
            for q in divisors(ad) {
                if p.gcd(&q) != 1 {
                    continue;
                }
                for s in [1i64, -1] {
                    let r = BigRational::new(BigInt::from(p) * s, BigInt::from(q));
                    if f.sign_at(&r) == 0 && !out.contains(&r) {
                        out.push(r);
                    }
                }
            }
        }
        out.sort();
        Some(out)
    }

    /// Certified irreducibility over the rationals where it is cheap to decide:
    /// degree 1 always, degree 2 and 3 by absence of rational roots.
    pub fn is_certainly_irreducible(&self) -> bool {
        match self.degree() {
            0 => false,
            1 => true,
            2 | 3 => matches!(self.rational_roots(), Some(r) if r.is_empty()),
            _ => false,
        }
    }

    /// Approximate roots by the Aberth iteration. No claim is attached; callers
    /// certify boxes around these points.
    pub fn approx_roots(&self) -> Vec<Complex64> {
        let d = self.degree();
        if d == 0 {
            return Vec::new();
        }
        let lead = self.leading().to_f64().unwrap_or(1.0);
        let monic: Vec<Complex64> =
            self.coeffs.iter().map(|c| Complex64::new(c.to_f64().unwrap_or(0.0) / lead, 0.0)).collect();
        let eval = |z: Complex64| {
            let (mut p, mut dp) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
            for c in monic.iter().rev() {
                dp = dp * z + p;
                p = p * z + c;
            }
            (p, dp)
        };
        let radius = self.root_bound().to_f64().unwrap_or(1.0).min(1e150) * 0.5;
        let mut z: Vec<Complex64> = (0..d)
            .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / d as f64))
            .collect();
        for _ in 0..500 {
            let mut moved = 0.0f64;
            for k in 0..d {
                let (p, dp) = eval(z[k]);
                if p == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let ratio = p / dp;
                let mut s = Complex64::new(0.0, 0.0);
                for j in 0..d {
                    if j != k {
                        s += Complex64::new(1.0, 0.0) / (z[k] - z[j]);
                    }
                }
                let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
                if w.is_finite() {
                    z[k] -= w;
                    moved = moved.max(w.norm() / (1.0 + z[k].norm()));
                }
            }
            if moved < 1e-15 {
                break;
            }
        }
        z
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        super::parser::parse_poly(text).map_err(|e| e.to_string())
    }
}

fn divisors(n: u64) -> Vec<u64> {
    if n == 0 {
        return vec![];
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n % i == 0 {
            small.push(i);
            if i * i != n {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{a}")?;
                if i > 0 {
                    write!(f, "*")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Rational-coefficient polynomial used for exact Euclidean remainders.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct RatPoly {
    c: Vec<BigRational>,
}

impl RatPoly {
    fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        RatPoly { c }
    }

    fn from_int(p: &IntPoly) -> Self {
        Self::new(p.coeffs.iter().map(|x| BigRational::from_integer(x.clone())).collect())
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn div_rem(&self, d: &Self) -> (Self, Self) {
        let mut r = self.c.clone();
        let dd = d.degree();
        let lead = d.c.last().expect("nonzero divisor").clone();
        if r.len() < d.c.len() {
            return (RatPoly::new(vec![]), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = &r[k + dd] / &lead;
            if !coef.is_zero() {
                for (j, dc) in d.c.iter().enumerate() {
                    r[k + j] -= &coef * dc;
                }
            }
            q[k] = coef;
        }
        r.truncate(dd);
        (RatPoly::new(q), RatPoly::new(r))
    }

    fn div_exact(&self, d: &Self) -> Self {
        self.div_rem(d).0
    }

    fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a
    }

    fn to_int_primitive(&self) -> IntPoly {
        let l = self.c.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        IntPoly::new(self.c.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect())
            .primitive()
    }

    fn sign_at(&self, x: &BigRational) -> i32 {
        let mut acc = BigRational::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + c;
        }
        if acc.is_zero() {
            0
        } else if acc.is_positive() {
            1
        } else {
            -1
        }
    }
}

/// Sturm sequence of a squarefree polynomial.
#[derive(Clone, Debug)]
pub struct Sturm {
    seq: Vec<RatPoly>,
}

impl Sturm {
    pub fn new(p: &IntPoly) -> Self {
        let f0 = RatPoly::from_int(&p.squarefree());
        let f1 = RatPoly::from_int(&p.squarefree().derivative());
        let mut seq = vec![f0, f1];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].div_rem(&seq[n - 1]).1;
            if r.is_zero() {
                break;
            }
            seq.push(RatPoly::new(r.c.into_iter().map(|x| -x).collect()));
        }
        Sturm { seq }
    }

    fn variations(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut last = 0;
        for f in &self.seq {
            let s = f.sign_at(x);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct real roots in the closed interval `[lo, hi]`.
    pub fn count(&self, lo: &BigRational, hi: &BigRational) -> usize {
        let mut n = self.variations(lo) - self.variations(hi);
        if self.seq[0].sign_at(lo) == 0 {
            n += 1;
        }
        n
    }
}

/// Winding number of `f` along the boundary of the closed rectangle
/// `[re_lo, re_hi] x [im_lo, im_hi]`, counting roots inside. `None` when a
/// boundary piece cannot be certified root free within the subdivision budget.
pub fn winding_count(
    f: &IntPoly,
    re_lo: &BigRational,
    re_hi: &BigRational,
    im_lo: &BigRational,
    im_hi: &BigRational,
) -> Option<usize> {
    let corners = [
        (re_lo.clone(), im_lo.clone()),
        (re_hi.clone(), im_lo.clone()),
        (re_hi.clone(), im_hi.clone()),
        (re_lo.clone(), im_hi.clone()),
    ];
    // working precision grows with the resolution of the rectangle so that
    // image boxes of short edges near a root stay meaningful
    let lg = |r: &BigRational| r.numer().bits() as i64 - r.denom().bits() as i64;
    let side = lg(&(re_hi - re_lo)).min(lg(&(im_hi - im_lo)));
    let mag = [re_lo, re_hi, im_lo, im_hi].iter().map(|r| lg(r)).max().unwrap().max(0);
    let prec = (64 + (-side).max(0) + (f.degree() as i64 + 1) * (mag + 1)).clamp(64, 1 << 20) as u32;
    let mut total = 0.0f64;
    for k in 0..4 {
        let a = &corners[k];
        let b = &corners[(k + 1) % 4];
        total += edge_angle(f, a, b, prec, 0)?;
    }
    let turns = total / (2.0 * std::f64::consts::PI);
    let r = turns.round();
    if (turns - r).abs() > 0.25 || r < 0.0 {
        return None;
    }
    Some(r as usize)
}

const MAX_EDGE_DEPTH: u32 = 40;

type GPoint = (BigRational, BigRational);

fn direction(v: &(BigRational, BigRational)) -> f64 {
    // scale both parts by a common power of two before going to f64
    let bits = |r: &BigRational| r.numer().bits() as i64 - r.denom().bits() as i64;
    let s = bits(&v.0).max(bits(&v.1));
    let to = |r: &BigRational| {
        let x = crate::mpcert::BigFloat::from_rational(r, 64, crate::mpcert::Round::Down);
        x.mul_pow2(-s).to_f64()
    };
    to(&v.1).atan2(to(&v.0))
}

fn edge_angle(f: &IntPoly, a: &GPoint, b: &GPoint, prec: u32, depth: u32) -> Option<f64> {
    let fa = f.eval_gaussian(&a.0, &a.1);
    let fb = f.eval_gaussian(&b.0, &b.1);
    if fa.0.is_zero() && fa.1.is_zero() || fb.0.is_zero() && fb.1.is_zero() {
        return None;
    }
    let seg = ComplexBox::new(
        RealInterval::from_rationals(&a.0.clone().min(b.0.clone()), &a.0.clone().max(b.0.clone()), prec),
        RealInterval::from_rationals(&a.1.clone().min(b.1.clone()), &a.1.clone().max(b.1.clone()), prec),
    );
    let img = f.eval_cbox(&seg);
    let excludes_zero = !img.re.contains_zero() || !img.im.contains_zero();
    if excludes_zero {
        let mut d = direction(&fb) - direction(&fa);
        let pi = std::f64::consts::PI;
        while d > pi {
            d -= 2.0 * pi;
        }
        while d < -pi {
            d += 2.0 * pi;
        }
        return Some(d);
    }
    if depth >= MAX_EDGE_DEPTH {
        return None;
    }
    let two = BigRational::from_integer(2.into());
    let mid = ((&a.0 + &b.0) / &two, (&a.1 + &b.1) / &two);
    Some(edge_angle(f, a, &mid, prec, depth + 1)? + edge_angle(f, &mid, b, prec, depth + 1)?)
}
