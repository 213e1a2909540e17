//! Laurent polynomials in q over ℚ or ℚ(ζₘ).

use super::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// A sparse Laurent polynomial Σ c_e q^e; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    order: u32,
    terms: BTreeMap<i64, Cyclotomic>,
}

impl LaurentPoly {
    pub fn zero(order: u32) -> Self {
        LaurentPoly {
            order: super::cyclotomic::normalize_order(order),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(order: u32) -> Self {
        Self::constant(Cyclotomic::one(order))
    }

    pub fn constant(c: Cyclotomic) -> Self {
        Self::monomial(c, 0)
    }

    /// c·q^e.
    pub fn monomial(c: Cyclotomic, e: i64) -> Self {
        let mut p = Self::zero(c.order());
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    /// The indeterminate q.
    pub fn q(order: u32) -> Self {
        Self::monomial(Cyclotomic::one(order), 1)
    }

    /// Builds from (exponent, coefficient) pairs, summing repeats.
    pub fn from_terms(order: u32, terms: impl IntoIterator<Item = (i64, Cyclotomic)>) -> Self {
        let mut p = Self::zero(order);
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    /// Coefficient field order m (1 for ℚ).
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<i64, Cyclotomic> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(Cyclotomic::is_one)
    }

    /// The single term (e, c) when the polynomial is a monomial.
    pub fn as_monomial(&self) -> Option<(i64, &Cyclotomic)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    /// The constant value when no q-power other than q^0 occurs.
    pub fn as_constant(&self) -> Option<Cyclotomic> {
        match self.terms.len() {
            0 => Some(Cyclotomic::zero(self.order)),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, e: i64) -> Cyclotomic {
        self.terms
            .get(&e)
            .cloned()
            .unwrap_or_else(|| Cyclotomic::zero(self.order))
    }

    fn add_term(&mut self, e: i64, c: &Cyclotomic) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(x) => {
                *x = x.add(c);
                if x.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, &c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            order: self.order,
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.order);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, &c1.mul(c2));
            }
        }
        out
    }

    /// Multiplies every coefficient by a base-field scalar.
    pub fn scale(&self, c: &Cyclotomic) -> Self {
        if c.is_zero() {
            return Self::zero(self.order);
        }
        LaurentPoly {
            order: self.order,
            terms: self.terms.iter().map(|(e, x)| (*e, x.mul(c))).collect(),
        }
    }

    /// Multiplies by q^k.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            order: self.order,
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// The image under q ↦ q^{-1}.
    pub fn invert_variable(&self) -> Self {
        LaurentPoly {
            order: self.order,
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Coefficients of q^{-min}·p, low degree first, and min; the zero
    /// polynomial yields `(0, [])`.
    pub fn to_dense(&self) -> (i64, Vec<Cyclotomic>) {
        let Some(lo) = self.min_exp() else {
            return (0, Vec::new());
        };
        let hi = self.max_exp().expect("nonempty");
        let mut v = vec![Cyclotomic::zero(self.order); (hi - lo) as usize + 1];
        for (e, c) in &self.terms {
            v[(e - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    /// Inverse of [`to_dense`](Self::to_dense).
    pub fn from_dense(order: u32, lo: i64, coeffs: &[Cyclotomic]) -> Self {
        let mut p = Self::zero(order);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                p.terms.insert(lo + i as i64, c.clone());
            }
        }
        p
    }

    /// Image of the coefficients under ℚ(ζₘ) ↪ ℚ(ζ_target).
    pub fn embed(&self, target: u32) -> Self {
        let target = super::cyclotomic::normalize_order(target);
        LaurentPoly {
            order: target,
            terms: self.terms.iter().map(|(e, c)| (*e, c.embed(target))).collect(),
        }
    }

    /// Evaluates at a nonzero point of the coefficient field.
    pub fn evaluate(&self, q0: &Cyclotomic) -> Result<Cyclotomic> {
        if q0.is_zero() {
            return Err(Error::ZeroSubstitution);
        }
        let mut acc = Cyclotomic::zero(q0.order());
        if self.is_zero() {
            return Ok(acc);
        }
        let inv = q0.inv().expect("nonzero");
        let lo = self.min_exp().expect("nonempty");
        let mut pw = if lo < 0 {
            inv.pow(lo.unsigned_abs())
        } else {
            q0.pow(lo as u64)
        };
        let mut cur = lo;
        for (e, c) in &self.terms {
            if *e > cur {
                pw = pw.mul(&q0.pow((*e - cur) as u64));
                cur = *e;
            }
            acc = acc.add(&c.embed(q0.order()).mul(&pw));
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(1, terms.iter().map(|&(e, c)| (e, Cyclotomic::from_int(1, c))))
    }

    #[test]
    fn degree_additivity() {
        let a = lp(&[(-2, 1), (3, 5)]);
        let b = lp(&[(-1, 2), (4, -1)]);
        let c = a.mul(&b);
        assert_eq!(c.min_exp(), Some(-3));
        assert_eq!(c.max_exp(), Some(7));
    }

    #[test]
    fn evaluate_one_plus_q() {
        let p = lp(&[(0, 1), (1, 1)]);
        assert_eq!(
            p.evaluate(&Cyclotomic::from_int(1, 1)).unwrap(),
            Cyclotomic::from_int(1, 2)
        );
        assert!(p.evaluate(&Cyclotomic::from_int(1, -1)).unwrap().is_zero());
        assert_eq!(p.evaluate(&Cyclotomic::zero(1)), Err(Error::ZeroSubstitution));
    }

    #[test]
    fn cancellation_removes_terms() {
        let a = lp(&[(1, 2), (2, 1)]);
        assert!(a.sub(&a).is_zero());
    }
}
