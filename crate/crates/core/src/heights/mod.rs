//! Logarithmic heights of algebraic numbers and the lower bound for linear
//! forms in logarithms.

mod waldschmidt;

pub use waldschmidt::{make_params, waldschmidt_bound, BoundFactors, LogTerm, ParamProvenance, WaldschmidtParams};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::mpcert::{cbox_abs, elementary, RealInterval};
use crate::rexpr::poly::{winding_count, Sturm};
use crate::rexpr::{AlgebraicNumber, IntPoly};

/// Precision used by `log_height` when callers do not ask for more.
pub const DEFAULT_HEIGHT_PREC: u32 = 96;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum HeightError {
    #[error("input carries an isolation-only polynomial; the true minimal polynomial is required")]
    IsolationOnlyInput,
    #[error("root isolation failed: {0}")]
    RootIsolationFailure(String),
}

/// `log max(|p|, |q|)` for a rational in lowest terms.
pub fn rational_height(r: &BigRational, prec: u32) -> RealInterval {
    let m = r.numer().abs().max(r.denom().abs());
    if m <= BigInt::from(1) {
        return RealInterval::zero(prec);
    }
    elementary::log(&RealInterval::from_bigint(&m, prec)).expect("positive argument")
}

/// Enclosure of the absolute logarithmic height.
pub fn log_height(a: &AlgebraicNumber, prec: u32) -> Result<RealInterval, HeightError> {
    if a.isolation_only() {
        return Err(HeightError::IsolationOnlyInput);
    }
    if let Some(r) = a.exact_rational() {
        return Ok(rational_height(&r, prec));
    }
    height_of_poly(a.minpoly(), prec)
}

/// `(1/d)(log|a_d| + sum log max(1, |root|))` over all roots of an irreducible
/// primitive polynomial.
pub fn height_of_poly(f: &IntPoly, prec: u32) -> Result<RealInterval, HeightError> {
    let w = prec + 16;
    let moduli = conjugate_moduli(f, w)?;
    let one = RealInterval::from_int(1, w);
    let mut sum = elementary::log(&RealInterval::from_bigint(&f.leading().abs(), w)).expect("nonzero leading");
    for m in &moduli {
        let clipped = m.max_with(&one);
        sum = sum.add(&elementary::log(&clipped).expect("at least one"));
    }
    Ok(sum.div(&RealInterval::from_int(f.degree() as i64, w)).expect("positive degree").with_prec(prec))
}

/// Certified enclosures of `|root|` for every root of a squarefree polynomial.
/// Fails unless the certified real and nonreal roots account for the degree.
pub fn conjugate_moduli(f: &IntPoly, prec: u32) -> Result<Vec<RealInterval>, HeightError> {
    let real = isolate_real_roots(f);
    let nonreal = isolate_nonreal_roots(f, real.len())?;
    if real.len() + nonreal.len() != f.degree() {
        return Err(HeightError::RootIsolationFailure(format!(
            "found {} real and {} nonreal roots for degree {}",
            real.len(),
            nonreal.len(),
            f.degree()
        )));
    }
    let mut out = Vec::with_capacity(f.degree());
    for (lo, hi) in real {
        let a = AlgebraicNumber::real(f, lo, hi).map_err(|e| HeightError::RootIsolationFailure(e.to_string()))?;
        out.push(a.enclose_real(prec).expect("real selector").abs());
    }
    for rect in nonreal {
        let [a, b, c, d] = rect;
        let z = AlgebraicNumber::complex(f, (a, b), (c, d))
            .map_err(|e| HeightError::RootIsolationFailure(e.to_string()))?
            .enclose(prec);
        out.push(cbox_abs(&z));
    }
    Ok(out)
}

/// Disjoint closed intervals, each holding exactly one real root.
pub fn isolate_real_roots(f: &IntPoly) -> Vec<(BigRational, BigRational)> {
    let sturm = Sturm::new(f);
    let b = BigRational::from_integer(f.root_bound());
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        match sturm.count(&lo, &hi) {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                // split at a point that is not itself a root
                let width = &hi - &lo;
                let cut = [(1, 2), (3, 7), (4, 7), (2, 5), (3, 5), (5, 11), (6, 11), (7, 13)]
                    .iter()
                    .map(|&(p, q)| &lo + &width * BigRational::new(p.into(), q.into()))
                    .find(|m| f.sign_at(m) != 0)
                    .expect("finitely many roots");
                stack.push((cut.clone(), hi));
                stack.push((lo, cut));
            }
        }
    }
    out.sort();
    out
}

/// Certified rectangles around the nonreal roots, seeded by Aberth
/// approximations. Each rectangle lies strictly off the real axis, has winding
/// number one, and the rectangles are pairwise disjoint.
fn isolate_nonreal_roots(f: &IntPoly, real_count: usize) -> Result<Vec<[BigRational; 4]>, HeightError> {
    let expected = f.degree() - real_count;
    if expected == 0 {
        return Ok(Vec::new());
    }
    let approx = f.approx_roots();
    let mut upper: Vec<_> = approx.iter().copied().filter(|z| z.im > 0.0).collect();
    // pick the expected/2 approximations with the largest imaginary parts
    upper.sort_by(|a, b| b.im.partial_cmp(&a.im).unwrap());
    upper.truncate(expected / 2);
    if upper.len() * 2 != expected {
        return Err(HeightError::RootIsolationFailure("Aberth iteration did not separate nonreal roots".into()));
    }
    let mut out = Vec::new();
    for z in &upper {
        let sep = approx
            .iter()
            .filter(|w| (*w - z).norm() > 0.0)
            .map(|w| (w - z).norm())
            .fold(f64::INFINITY, f64::min)
            .min(2.0 * z.im);
        let mut r = sep / 3.0;
        let mut found = None;
        for _ in 0..8 {
            let rect = rect_around(z.re, z.im, r);
            if rect[2] > BigRational::zero() {
                if let Some(1) = winding_count(f, &rect[0], &rect[1], &rect[2], &rect[3]) {
                    found = Some(rect);
                    break;
                }
            }
            r *= 0.5;
        }
        let rect =
            found.ok_or_else(|| HeightError::RootIsolationFailure(format!("cannot certify a box around {z}")))?;
        let conj = [rect[0].clone(), rect[1].clone(), -rect[3].clone(), -rect[2].clone()];
        out.push(rect);
        out.push(conj);
    }
    // pairwise disjointness of the upper-half rectangles
    for i in 0..out.len() {
        for j in i + 1..out.len() {
            let (a, b) = (&out[i], &out[j]);
            let disjoint = a[1] < b[0] || b[1] < a[0] || a[3] < b[2] || b[3] < a[2];
            if !disjoint {
                return Err(HeightError::RootIsolationFailure("overlapping root boxes".into()));
            }
        }
    }
    Ok(out)
}

fn rect_around(re: f64, im: f64, r: f64) -> [BigRational; 4] {
    let q = |v: f64| BigRational::from_float(v).unwrap_or_else(BigRational::zero);
    [q(re - r), q(re + r), q(im - r), q(im + r)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rexpr::parse_real;
    use crate::mpcert::BigFloat;
    use crate::rexpr::RealExpr;

    fn alg(text: &str) -> AlgebraicNumber {
        match parse_real(text).unwrap() {
            RealExpr::Root(a, _) => (*a).clone(),
            other => panic!("not a root: {other}"),
        }
    }

    fn close(v: &RealInterval, x: f64, tol: f64) -> bool {
        (v.to_f64() - x).abs() < tol
    }

    #[test]
    fn integer_and_rational_heights() {
        let two = AlgebraicNumber::from_int(2);
        assert!(close(&log_height(&two, 64).unwrap(), std::f64::consts::LN_2, 1e-15));
        let half = AlgebraicNumber::real(&IntPoly::from_i64(&[-1, 2]), BigRational::zero(), BigRational::from_integer(1.into())).unwrap();
        assert!(close(&log_height(&half, 64).unwrap(), std::f64::consts::LN_2, 1e-15));
        // same value through the generic root machinery
        let generic = height_of_poly(&IntPoly::from_i64(&[-1, 2]), 64).unwrap();
        assert!(close(&generic, std::f64::consts::LN_2, 1e-15));
    }

    #[test]
    fn quadratic_surd() {
        let h = log_height(&alg("algebraic(x^2-5; 2, 3)"), DEFAULT_HEIGHT_PREC).unwrap();
        assert!(close(&h, 0.5 * 5f64.ln(), 1e-14));
        assert!(h.width() <= BigFloat::pow2(-32, 8));
    }

    #[test]
    fn complex_conjugates_are_found() {
        // x^2 + x + 1: both roots on the unit circle, height 0
        let h = height_of_poly(&IntPoly::from_i64(&[1, 1, 1]), 64).unwrap();
        assert!(h.contains(&BigFloat::zero(8)));
        // x^3 - 2: one real root and a conjugate pair of modulus 2^(1/3)
        let m = conjugate_moduli(&IntPoly::from_i64(&[-2, 0, 0, 1]), 64).unwrap();
        assert_eq!(m.len(), 3);
        for v in &m {
            assert!(close(v, 2f64.powf(1.0 / 3.0), 1e-12));
        }
        // 2x^2 + 3x + 5 has roots of modulus sqrt(5/2)
        let h = height_of_poly(&IntPoly::from_i64(&[5, 3, 2]), 64).unwrap();
        assert!(close(&h, 0.5 * (2f64.ln() + 2.0 * 2.5f64.sqrt().ln()), 1e-12));
    }

    #[test]
    fn isolation_only_is_refused() {
        let a = alg("algebraic(x^4-5*x^2+4; 0, 3/2)");
        assert_eq!(log_height(&a, 64), Err(HeightError::IsolationOnlyInput));
    }
}
