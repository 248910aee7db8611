//! Recursive-descent parser for the expression grammar.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := unary (('*'|'/') unary)*
//! unary  := '-' unary | factor
//! factor := base ('^' ['-'|'+'] int)?
//! base   := number | 'pi' | 'e' | 'liouville' | func '(' expr ')' | algref | '(' expr ')'
//! ```
//! Top level additionally accepts `complex(expr, expr)` and `calgebraic(...)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::algebraic::AlgebraicNumber;
use super::ast::{ComplexExpr, Expr, RealExpr};
use super::poly::IntPoly;
use super::RexprError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn next(&mut self) -> Result<(usize, Tok), RexprError> {
        self.skip_ws();
        let start = self.pos;
        let Some(&c) = self.src.get(self.pos) else {
            return Ok((start, Tok::End));
        };
        if c.is_ascii_digit() || (c == b'.' && self.src.get(self.pos + 1).is_some_and(|d| d.is_ascii_digit())) {
            return self.number(start);
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
            {
                self.pos += 1;
            }
            let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string();
            return Ok((start, Tok::Ident(s)));
        }
        if b"+-*/^();,".contains(&c) {
            self.pos += 1;
            return Ok((start, Tok::Sym(c as char)));
        }
        Err(RexprError::Syntax { pos: start, msg: format!("unexpected character '{}'", c as char) })
    }

    /// Integer or exact decimal literal, optionally with a power-of-ten suffix.
    fn number(&mut self, start: usize) -> Result<(usize, Tok), RexprError> {
        let digits = |lx: &mut Self| {
            let s = lx.pos;
            while lx.pos < lx.src.len() && lx.src[lx.pos].is_ascii_digit() {
                lx.pos += 1;
            }
            std::str::from_utf8(&lx.src[s..lx.pos]).unwrap().to_string()
        };
        let int_part = digits(self);
        let mut frac = String::new();
        let mut is_decimal = false;
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            frac = digits(self);
            is_decimal = true;
        }
        let mut exp10: i64 = 0;
        if matches!(self.src.get(self.pos), Some(b'e') | Some(b'E')) {
            // only a decimal exponent if digits follow; otherwise leave `e` alone
            let save = self.pos;
            self.pos += 1;
            let mut neg = false;
            if matches!(self.src.get(self.pos), Some(b'+') | Some(b'-')) {
                neg = self.src[self.pos] == b'-';
                self.pos += 1;
            }
            let ed = digits(self);
            if ed.is_empty() {
                self.pos = save;
            } else {
                is_decimal = true;
                exp10 = ed
                    .parse::<i64>()
                    .map_err(|_| RexprError::Syntax { pos: save, msg: "exponent too large".into() })?;
                if neg {
                    exp10 = -exp10;
                }
            }
        }
        let mant: BigInt = format!("{int_part}{frac}").parse().unwrap_or_default();
        if !is_decimal {
            return Ok((start, Tok::Int(mant)));
        }
        let e = exp10 - frac.len() as i64;
        if e.unsigned_abs() > 100_000 {
            return Err(RexprError::Syntax { pos: start, msg: "decimal exponent out of range".into() });
        }
        let ten = BigInt::from(10);
        let scale = num_traits::pow(ten, e.unsigned_abs() as usize);
        let value = if e >= 0 {
            BigRational::from_integer(mant * scale)
        } else {
            BigRational::new(mant, scale)
        };
        Ok((start, Tok::Num(value)))
    }
}

pub(crate) struct Parser<'a> {
    lex: Lexer<'a>,
    tok: Tok,
    tok_pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Result<Self, RexprError> {
        let mut lex = Lexer { src: text.as_bytes(), pos: 0 };
        let (tok_pos, tok) = lex.next()?;
        Ok(Parser { lex, tok, tok_pos })
    }

    fn bump(&mut self) -> Result<Tok, RexprError> {
        let (p, t) = self.lex.next()?;
        self.tok_pos = p;
        Ok(std::mem::replace(&mut self.tok, t))
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, RexprError> {
        Err(RexprError::Syntax { pos: self.tok_pos, msg: msg.into() })
    }

    fn expect(&mut self, c: char) -> Result<(), RexprError> {
        if self.tok == Tok::Sym(c) {
            self.bump()?;
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn is_sym(&self, c: char) -> bool {
        self.tok == Tok::Sym(c)
    }

    fn top(&mut self) -> Result<Expr, RexprError> {
        let out = match &self.tok {
            Tok::Ident(s) if s == "complex" => {
                self.bump()?;
                self.expect('(')?;
                let re = self.expr()?;
                self.expect(',')?;
                let im = self.expr()?;
                self.expect(')')?;
                Expr::Complex(ComplexExpr::new(re, im))
            }
            Tok::Ident(s) if s == "calgebraic" => {
                self.bump()?;
                Expr::Complex(ComplexExpr::from_root(self.algref(true)?))
            }
            _ => Expr::Real(self.expr()?),
        };
        if self.tok != Tok::End {
            return self.err("trailing input");
        }
        Ok(out)
    }

    fn expr(&mut self) -> Result<RealExpr, RexprError> {
        let mut lhs = self.term()?;
        loop {
            if self.is_sym('+') {
                self.bump()?;
                lhs = lhs.add(self.term()?);
            } else if self.is_sym('-') {
                self.bump()?;
                lhs = lhs.sub(self.term()?);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<RealExpr, RexprError> {
        let mut lhs = self.unary()?;
        loop {
            if self.is_sym('*') {
                self.bump()?;
                lhs = lhs.mul(self.unary()?);
            } else if self.is_sym('/') {
                self.bump()?;
                let rhs = self.unary()?;
                lhs = fold_ratio(lhs, rhs);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<RealExpr, RexprError> {
        if self.is_sym('-') {
            self.bump()?;
            let v = self.unary()?;
            return Ok(match v {
                RealExpr::Int(k) => RealExpr::Int(-k),
                RealExpr::Rat(r) => RealExpr::Rat(-r),
                other => other.neg(),
            });
        }
        if self.is_sym('+') {
            self.bump()?;
            return self.unary();
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<RealExpr, RexprError> {
        let base = self.base()?;
        if !self.is_sym('^') {
            return Ok(base);
        }
        self.bump()?;
        let k = self.signed_int()?;
        Ok(base.powi(k))
    }

    fn signed_int(&mut self) -> Result<i64, RexprError> {
        let paren = self.is_sym('(');
        if paren {
            self.bump()?;
        }
        let mut neg = false;
        if self.is_sym('-') || self.is_sym('+') {
            neg = self.is_sym('-');
            self.bump()?;
        }
        let k = match &self.tok {
            Tok::Int(k) => i64::try_from(k.clone()).or_else(|_| self.err("exponent too large"))?,
            _ => return self.err("expected integer exponent"),
        };
        self.bump()?;
        if paren {
            self.expect(')')?;
        }
        Ok(if neg { -k } else { k })
    }

    fn base(&mut self) -> Result<RealExpr, RexprError> {
        match self.tok.clone() {
            Tok::Int(k) => {
                self.bump()?;
                Ok(RealExpr::Int(k))
            }
            Tok::Num(r) => {
                self.bump()?;
                Ok(RealExpr::from_rational(r))
            }
            Tok::Sym('(') => {
                self.bump()?;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                let at = self.tok_pos;
                self.bump()?;
                match name.as_str() {
                    "pi" => Ok(RealExpr::Pi),
                    "e" => Ok(RealExpr::int(1).exp()),
                    "liouville" => Ok(RealExpr::LiouvilleC),
                    "exp" | "log" | "sqrt" => {
                        self.expect('(')?;
                        let a = self.expr()?;
                        self.expect(')')?;
                        Ok(match name.as_str() {
                            "exp" => a.exp(),
                            "log" => a.log(),
                            _ => a.sqrt(),
                        })
                    }
                    "algebraic" => Ok(RealExpr::root(self.algref(false)?)),
                    "calgebraic" | "complex" => Err(RexprError::Syntax {
                        pos: at,
                        msg: format!("{name}(...) is only allowed as a top-level value"),
                    }),
                    _ => Err(RexprError::Syntax { pos: at, msg: format!("unknown identifier '{name}'") }),
                }
            }
            Tok::End => self.err("unexpected end of input"),
            Tok::Sym(c) => self.err(format!("unexpected '{c}'")),
        }
    }

    fn rational(&mut self) -> Result<BigRational, RexprError> {
        let mut neg = false;
        if self.is_sym('-') || self.is_sym('+') {
            neg = self.is_sym('-');
            self.bump()?;
        }
        let mut v = match self.tok.clone() {
            Tok::Int(k) => BigRational::from_integer(k),
            Tok::Num(r) => r,
            _ => return self.err("expected rational number"),
        };
        self.bump()?;
        if self.is_sym('/') {
            self.bump()?;
            let d = match self.tok.clone() {
                Tok::Int(k) => BigRational::from_integer(k),
                Tok::Num(r) => r,
                _ => return self.err("expected denominator"),
            };
            if d.is_zero() {
                return self.err("zero denominator");
            }
            self.bump()?;
            v /= d;
        }
        Ok(if neg { -v } else { v })
    }

    fn algref(&mut self, complex: bool) -> Result<AlgebraicNumber, RexprError> {
        self.expect('(')?;
        let poly = self.poly()?;
        self.expect(';')?;
        let mut vals = vec![self.rational()?];
        let want = if complex { 4 } else { 2 };
        while vals.len() < want {
            self.expect(',')?;
            vals.push(self.rational()?);
        }
        self.expect(')')?;
        if complex {
            let [a, b, c, d]: [BigRational; 4] = vals.try_into().unwrap();
            AlgebraicNumber::complex(&poly, (a, b), (c, d))
        } else {
            let [a, b]: [BigRational; 2] = vals.try_into().unwrap();
            AlgebraicNumber::real(&poly, a, b)
        }
    }

    /// Integer polynomial in `x`, e.g. `2*x^3 - 3x + 1`.
    fn poly(&mut self) -> Result<IntPoly, RexprError> {
        let mut coeffs: Vec<BigInt> = Vec::new();
        let mut first = true;
        loop {
            let mut sign = BigInt::one();
            if self.is_sym('-') || self.is_sym('+') {
                if self.is_sym('-') {
                    sign = -sign;
                }
                self.bump()?;
            } else if !first {
                break;
            }
            first = false;
            let mut coef: Option<BigInt> = None;
            if let Tok::Int(k) = &self.tok {
                coef = Some(k.clone());
                self.bump()?;
                if self.is_sym('*') {
                    self.bump()?;
                }
            }
            let mut deg = 0usize;
            if self.tok == Tok::Ident("x".into()) {
                self.bump()?;
                deg = 1;
                if self.is_sym('^') {
                    self.bump()?;
                    match &self.tok {
                        Tok::Int(k) => {
                            deg = usize::try_from(k.clone()).or_else(|_| self.err("degree too large"))?;
                            if deg > 10_000 {
                                return self.err("degree too large");
                            }
                        }
                        _ => return self.err("expected degree"),
                    }
                    self.bump()?;
                }
            } else if coef.is_none() {
                return self.err("expected polynomial term");
            }
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, BigInt::zero());
            }
            coeffs[deg] += sign * coef.unwrap_or_else(BigInt::one);
        }
        let p = IntPoly::new(coeffs);
        if p.is_zero() {
            return self.err("zero polynomial");
        }
        Ok(p)
    }
}

fn fold_ratio(a: RealExpr, b: RealExpr) -> RealExpr {
    let lit = |e: &RealExpr| match e {
        RealExpr::Int(k) => Some(BigRational::from_integer(k.clone())),
        RealExpr::Rat(r) => Some(r.clone()),
        _ => None,
    };
    match (lit(&a), lit(&b)) {
        (Some(x), Some(y)) if !y.is_zero() => RealExpr::from_rational(x / y),
        _ => a.div(b),
    }
}

/// Parse a real or complex expression.
pub fn parse(text: &str) -> Result<Expr, RexprError> {
    Parser::new(text)?.top()
}

/// Parse an expression that must be real.
pub fn parse_real(text: &str) -> Result<RealExpr, RexprError> {
    match parse(text)? {
        Expr::Real(e) => Ok(e),
        Expr::Complex(c) if c.is_real_syntactically() => Ok(c.re),
        Expr::Complex(_) => Err(RexprError::Syntax { pos: 0, msg: "expected a real expression".into() }),
    }
}

/// Parse a real or complex expression as a complex value.
pub fn parse_complex(text: &str) -> Result<ComplexExpr, RexprError> {
    Ok(match parse(text)? {
        Expr::Real(e) => ComplexExpr::real(e),
        Expr::Complex(c) => c,
    })
}

pub fn parse_poly(text: &str) -> Result<IntPoly, RexprError> {
    let mut p = Parser::new(text)?;
    let poly = p.poly()?;
    if p.tok != Tok::End {
        return p.err("trailing input");
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        assert_eq!(parse_real("2").unwrap(), RealExpr::int(2));
        assert_eq!(parse_real("exp(1)").unwrap(), RealExpr::int(1).exp());
        assert_eq!(parse_real("e").unwrap(), RealExpr::int(1).exp());
        assert_eq!(parse_real("5/2").unwrap(), RealExpr::rat(5, 2));
        assert_eq!(parse_real("0.125").unwrap(), RealExpr::rat(1, 8));
        assert_eq!(parse_real("1.5e3").unwrap(), RealExpr::int(1500));
        assert_eq!(parse_real("-3").unwrap(), RealExpr::int(-3));
        assert_eq!(parse_real("10^6").unwrap(), RealExpr::int(10).powi(6));
        assert_eq!(parse_real("2^-3").unwrap(), RealExpr::int(2).powi(-3));
    }

    #[test]
    fn precedence() {
        let e = parse_real("1 + 2 * 3 ^ 2").unwrap();
        assert_eq!(e.exact_rational().unwrap(), BigRational::from_integer(19.into()));
        let e = parse_real("(1 + 2) * 3 - 4 / 8").unwrap();
        assert_eq!(e.exact_rational().unwrap(), BigRational::new(17.into(), 2.into()));
        let e = parse_real("-2^2").unwrap();
        assert_eq!(e.exact_rational().unwrap(), BigRational::from_integer((-4).into()));
    }

    #[test]
    fn algebraic_forms() {
        let e = parse_real("algebraic(x^2-5; 2, 3)").unwrap();
        assert!(matches!(e, RealExpr::Root(..)));
        assert!(matches!(parse_real("algebraic(x^2-5; -3, 3)"), Err(RexprError::Isolation(_))));
        let c = parse("calgebraic(x^2+1; -1/2, 1/2, 1/2, 3/2)").unwrap();
        assert!(matches!(c, Expr::Complex(_)));
        assert!(parse_real("calgebraic(x^2+1; -1/2, 1/2, 1/2, 3/2)").is_err());
        let p = parse_poly("2*x^3 - 3x + 1").unwrap();
        assert_eq!(p, IntPoly::from_i64(&[1, -3, 0, 2]));
        assert_eq!(parse_poly("-x^2+x+1").unwrap(), IntPoly::from_i64(&[1, 1, -1]));
    }

    #[test]
    fn complex_top_level() {
        let c = parse_complex("complex(0, 2)").unwrap();
        assert_eq!(c.exact_gaussian().unwrap().1, BigRational::from_integer(2.into()));
        assert!(parse("1 + complex(0, 2)").is_err());
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse("1 + * 2") {
            Err(RexprError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("foo(1)"), Err(RexprError::Syntax { pos: 0, .. })));
        assert!(matches!(parse("2 $"), Err(RexprError::Syntax { pos: 2, .. })));
        assert!(parse("(1 + 2").is_err());
        assert!(parse("2^x").is_err());
    }
}
