use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::algebraic::AlgebraicNumber;

/// Which real quantity of an algebraic root a `Root` node denotes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Part {
    Re,
    Im,
    Modulus,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum RealExpr {
    Int(BigInt),
    Rat(BigRational),
    Pi,
    Exp(Arc<RealExpr>),
    Log(Arc<RealExpr>),
    Sqrt(Arc<RealExpr>),
    Root(Arc<AlgebraicNumber>, Part),
    PowInt(Arc<RealExpr>, i64),
    Neg(Arc<RealExpr>),
    Add(Arc<RealExpr>, Arc<RealExpr>),
    Sub(Arc<RealExpr>, Arc<RealExpr>),
    Mul(Arc<RealExpr>, Arc<RealExpr>),
    Div(Arc<RealExpr>, Arc<RealExpr>),
    /// The constant `sum 10^-a(i)` with `a(0) = 1`, `a(i+1) = 10^a(i)`.
    LiouvilleC,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ComplexExpr {
    pub re: RealExpr,
    pub im: RealExpr,
}

/// Result of parsing: the grammar admits real and complex top-level values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Real(RealExpr),
    Complex(ComplexExpr),
}

impl RealExpr {
    pub fn int(k: i64) -> Self {
        RealExpr::Int(BigInt::from(k))
    }

    pub fn rat(p: i64, q: i64) -> Self {
        RealExpr::from_rational(BigRational::new(p.into(), q.into()))
    }

    pub fn from_rational(r: BigRational) -> Self {
        if r.is_integer() {
            RealExpr::Int(r.to_integer())
        } else {
            RealExpr::Rat(r)
        }
    }

    pub fn root(a: AlgebraicNumber) -> Self {
        RealExpr::Root(Arc::new(a), Part::Re)
    }

    pub fn exp(self) -> Self {
        RealExpr::Exp(Arc::new(self))
    }

    pub fn log(self) -> Self {
        RealExpr::Log(Arc::new(self))
    }

    pub fn sqrt(self) -> Self {
        RealExpr::Sqrt(Arc::new(self))
    }

    pub fn powi(self, k: i64) -> Self {
        RealExpr::PowInt(Arc::new(self), k)
    }

    pub fn neg(self) -> Self {
        RealExpr::Neg(Arc::new(self))
    }

    pub fn add(self, o: Self) -> Self {
        RealExpr::Add(Arc::new(self), Arc::new(o))
    }

    pub fn sub(self, o: Self) -> Self {
        RealExpr::Sub(Arc::new(self), Arc::new(o))
    }

    pub fn mul(self, o: Self) -> Self {
        RealExpr::Mul(Arc::new(self), Arc::new(o))
    }

    pub fn div(self, o: Self) -> Self {
        RealExpr::Div(Arc::new(self), Arc::new(o))
    }

    /// Exact rational value when the tree only uses rational operations on
    /// rational leaves (and rational algebraic roots).
    pub fn exact_rational(&self) -> Option<BigRational> {
        use RealExpr::*;
        Some(match self {
            Int(k) => BigRational::from_integer(k.clone()),
            Rat(r) => r.clone(),
            Root(a, part) => {
                let r = a.exact_rational()?;
                match part {
                    Part::Re => r,
                    Part::Im => BigRational::zero(),
                    Part::Modulus => r.abs(),
                }
            }
            Neg(a) => -a.exact_rational()?,
            Add(a, b) => a.exact_rational()? + b.exact_rational()?,
            Sub(a, b) => a.exact_rational()? - b.exact_rational()?,
            Mul(a, b) => a.exact_rational()? * b.exact_rational()?,
            Div(a, b) => {
                let d = b.exact_rational()?;
                if d.is_zero() {
                    return None;
                }
                a.exact_rational()? / d
            }
            PowInt(a, k) => {
                let v = a.exact_rational()?;
                if *k < 0 && v.is_zero() {
                    return None;
                }
                // keep exact powers to a sane size
                let bits = v.numer().bits().max(v.denom().bits()) as u128 * k.unsigned_abs() as u128;
                if bits > 1 << 20 {
                    return None;
                }
                let p = num_traits::pow(v, k.unsigned_abs() as usize);
                if *k < 0 {
                    BigRational::one() / p
                } else {
                    p
                }
            }
            Exp(a) if a.exact_rational()?.is_zero() => BigRational::one(),
            Log(a) if a.exact_rational()?.is_one() => BigRational::zero(),
            _ => return None,
        })
    }

    /// The real algebraic number this expression denotes, when it is a real
    /// root node or an exact rational.
    pub fn as_algebraic(&self) -> Option<AlgebraicNumber> {
        match self {
            RealExpr::Root(a, Part::Re) if a.has_real_selector() => Some((**a).clone()),
            other => other.exact_rational().map(|r| AlgebraicNumber::from_rational(&r)),
        }
    }

    /// Number of nodes, used to bound random corpora in tests.
    pub fn size(&self) -> usize {
        use RealExpr::*;
        match self {
            Int(_) | Rat(_) | Pi | Root(..) | LiouvilleC => 1,
            Exp(a) | Log(a) | Sqrt(a) | PowInt(a, _) | Neg(a) => 1 + a.size(),
            Add(a, b) | Sub(a, b) | Mul(a, b) | Div(a, b) => 1 + a.size() + b.size(),
        }
    }
}

impl ComplexExpr {
    pub fn new(re: RealExpr, im: RealExpr) -> Self {
        ComplexExpr { re, im }
    }

    pub fn real(re: RealExpr) -> Self {
        ComplexExpr { re, im: RealExpr::int(0) }
    }

    pub fn from_root(a: AlgebraicNumber) -> Self {
        let a = Arc::new(a);
        ComplexExpr { re: RealExpr::Root(a.clone(), Part::Re), im: RealExpr::Root(a, Part::Im) }
    }

    /// Exact Gaussian rational value, if any.
    pub fn exact_gaussian(&self) -> Option<(BigRational, BigRational)> {
        Some((self.re.exact_rational()?, self.im.exact_rational()?))
    }

    pub fn is_real_syntactically(&self) -> bool {
        matches!(self.im.exact_rational(), Some(z) if z.is_zero())
    }

    /// The modulus as a real expression (`sqrt(re^2 + im^2)` unless real or a
    /// single algebraic root).
    pub fn modulus(&self) -> RealExpr {
        if let (RealExpr::Root(a, Part::Re), RealExpr::Root(b, Part::Im)) = (&self.re, &self.im) {
            if Arc::ptr_eq(a, b) || a == b {
                return RealExpr::Root(a.clone(), Part::Modulus);
            }
        }
        if self.is_real_syntactically() {
            if let Some(r) = self.re.exact_rational() {
                return RealExpr::from_rational(r.abs());
            }
            return RealExpr::Sqrt(Arc::new(self.re.clone().powi(2)));
        }
        self.re.clone().powi(2).add(self.im.clone().powi(2)).sqrt()
    }
}

impl From<RealExpr> for ComplexExpr {
    fn from(re: RealExpr) -> Self {
        ComplexExpr::real(re)
    }
}

impl fmt::Display for RealExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use RealExpr::*;
        match self {
            Int(k) => {
                if k.is_negative() {
                    write!(f, "({k})")
                } else {
                    write!(f, "{k}")
                }
            }
            Rat(r) => write!(f, "({r})"),
            Pi => write!(f, "pi"),
            Exp(a) => write!(f, "exp({a})"),
            Log(a) => write!(f, "log({a})"),
            Sqrt(a) => write!(f, "sqrt({a})"),
            Root(a, Part::Re) if a.has_real_selector() => write!(f, "{a}"),
            Root(a, Part::Re) => write!(f, "re({a})"),
            Root(a, Part::Im) => write!(f, "im({a})"),
            Root(a, Part::Modulus) => write!(f, "abs({a})"),
            PowInt(a, k) => match a.as_ref() {
                Int(b) if !b.is_negative() => write!(f, "{b}^{k}"),
                Pi | LiouvilleC => write!(f, "{a}^{k}"),
                _ => write!(f, "({a})^{k}"),
            },
            Neg(a) => write!(f, "(-{a})"),
            Add(a, b) => write!(f, "({a} + {b})"),
            Sub(a, b) => write!(f, "({a} - {b})"),
            Mul(a, b) => write!(f, "({a} * {b})"),
            Div(a, b) => write!(f, "({a} / {b})"),
            LiouvilleC => write!(f, "liouville"),
        }
    }
}

impl fmt::Debug for RealExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ComplexExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let (RealExpr::Root(a, Part::Re), RealExpr::Root(b, Part::Im)) = (&self.re, &self.im) {
            if a == b {
                return write!(f, "{a}");
            }
        }
        write!(f, "complex({}, {})", self.re, self.im)
    }
}

impl fmt::Debug for ComplexExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
