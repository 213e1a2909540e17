//! Rational functions in q over ℚ or ℚ(ζₘ), kept in a canonical form.

use super::cyclotomic::Cyclotomic;
use super::laurent::LaurentPoly;
use super::poly;
use crate::error::{Error, Result};

/// A quotient num/den in canonical form.
///
/// The denominator is an ordinary monic polynomial with nonzero constant
/// term, q-power content lives in the numerator, and num and den are coprime.
/// Canonical forms compare equal exactly when the functions are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    /// Canonicalizes num/den.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let order = num.order();
        if num.is_zero() {
            return Ok(RatFunc {
                num,
                den: LaurentPoly::one(order),
            });
        }
        if let Some((e, c)) = den.as_monomial() {
            let inv = c.inv().expect("nonzero");
            return Ok(RatFunc {
                num: num.scale(&inv).shift(-e),
                den: LaurentPoly::one(order),
            });
        }
        let (nlo, n0) = num.to_dense();
        let (dlo, d0) = den.to_dense();
        let g = poly::gcd(&n0, &d0);
        let (n1, d1) = if g.len() > 1 {
            let (qn, rn) = poly::div_rem(&n0, &g);
            let (qd, rd) = poly::div_rem(&d0, &g);
            debug_assert!(rn.is_empty() && rd.is_empty());
            (qn, qd)
        } else {
            (n0, d0)
        };
        let lead_inv = d1.last().expect("nonzero").inv().expect("nonzero");
        let n2 = poly::scale(&n1, &lead_inv);
        let d2 = poly::scale(&d1, &lead_inv);
        Ok(RatFunc {
            num: LaurentPoly::from_dense(order, nlo - dlo, &n2),
            den: LaurentPoly::from_dense(order, 0, &d2),
        })
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        let order = p.order();
        RatFunc {
            num: p,
            den: LaurentPoly::one(order),
        }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn order(&self) -> u32 {
        self.num.order()
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::new(self.num.add(&other.num), self.den.clone()).expect("nonzero den");
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::new(num, self.den.mul(&other.den)).expect("nonzero den")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_laurent() && other.is_laurent() {
            return Self::from_laurent(self.num.mul(&other.num));
        }
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den)).expect("nonzero den")
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Equality by cross-multiplication, independent of canonical form.
    pub fn cross_eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    /// The image under q ↦ q^{-1}.
    pub fn invert_variable(&self) -> Self {
        Self::new(self.num.invert_variable(), self.den.invert_variable()).expect("nonzero den")
    }

    pub fn embed(&self, target: u32) -> Self {
        RatFunc {
            num: self.num.embed(target),
            den: self.den.embed(target),
        }
    }

    /// Evaluates at a nonzero point; fails at poles.
    pub fn evaluate(&self, q0: &Cyclotomic) -> Result<Cyclotomic> {
        let d = self.den.evaluate(q0)?;
        if d.is_zero() {
            return Err(Error::PoleAtPoint);
        }
        Ok(self.num.evaluate(q0)?.mul(&d.inv().expect("nonzero")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(1, terms.iter().map(|&(e, c)| (e, Cyclotomic::from_int(1, c))))
    }

    #[test]
    fn quotient_reduces_to_polynomial() {
        // (q²−1)/(q−1) = q+1
        let f = RatFunc::new(lp(&[(0, -1), (2, 1)]), lp(&[(0, -1), (1, 1)])).unwrap();
        assert!(f.is_laurent());
        assert_eq!(f.num(), &lp(&[(0, 1), (1, 1)]));
    }

    #[test]
    fn q_content_moves_to_numerator() {
        // q/(q²+2q) = 1/(q+2)
        let f = RatFunc::new(lp(&[(1, 1)]), lp(&[(1, 2), (2, 1)])).unwrap();
        assert_eq!(f.num(), &lp(&[(0, 1)]));
        assert_eq!(f.den(), &lp(&[(0, 2), (1, 1)]));
        // q^-2/(2+2q) = (1/2)q^-2/(1+q)
        let g = RatFunc::new(lp(&[(-2, 1)]), lp(&[(0, 2), (1, 2)])).unwrap();
        assert_eq!(g.den(), &lp(&[(0, 1), (1, 1)]));
        assert_eq!(g.num().min_exp(), Some(-2));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(RatFunc::new(lp(&[(0, 1)]), lp(&[])), Err(Error::DivisionByZero));
    }
}
