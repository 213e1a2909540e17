//! Dense univariate polynomial helpers over an exact coefficient field.
//!
//! Polynomials are stored low degree first with no trailing zeros; the zero
//! polynomial is the empty vector.

use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt::Debug;

/// Minimal field interface shared by `BigRational` and `Cyclotomic`.
pub trait Coeff: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_c(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inverse(&self) -> Option<Self>;
}

impl Coeff for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero_c(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Drops trailing zero coefficients.
pub fn trim<T: Coeff>(p: &mut Vec<T>) {
    while p.last().is_some_and(|c| c.is_zero_c()) {
        p.pop();
    }
}

/// Degree of a nonzero polynomial; `None` for zero.
pub fn degree<T: Coeff>(p: &[T]) -> Option<usize> {
    p.len().checked_sub(1)
}

pub fn add<T: Coeff>(a: &[T], b: &[T]) -> Vec<T> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (i, c) in short.iter().enumerate() {
        out[i] = out[i].plus(c);
    }
    trim(&mut out);
    out
}

pub fn sub<T: Coeff>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out = a.to_vec();
    for (i, c) in b.iter().enumerate() {
        if i < out.len() {
            out[i] = out[i].minus(c);
        } else {
            out.push(c.negated());
        }
    }
    trim(&mut out);
    out
}

pub fn mul<T: Coeff>(a: &[T], b: &[T]) -> Vec<T> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let zero = a[0].zero_like();
    let mut out = vec![zero; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero_c() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero_c() {
                out[i + j] = out[i + j].plus(&x.times(y));
            }
        }
    }
    trim(&mut out);
    out
}

pub fn scale<T: Coeff>(a: &[T], c: &T) -> Vec<T> {
    let mut out: Vec<T> = a.iter().map(|x| x.times(c)).collect();
    trim(&mut out);
    out
}

/// Euclidean division `a = q*b + r` with `deg r < deg b`.
///
/// Panics if `b` is zero.
pub fn div_rem<T: Coeff>(a: &[T], b: &[T]) -> (Vec<T>, Vec<T>) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = b[db].inverse().expect("trimmed polynomial has nonzero lead");
    let mut rem = a.to_vec();
    trim(&mut rem);
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let zero = b[0].zero_like();
    let mut quo = vec![zero; rem.len() - db];
    while rem.len() > db {
        let shift = rem.len() - 1 - db;
        let c = rem[rem.len() - 1].times(&lead_inv);
        for (j, bj) in b.iter().enumerate() {
            rem[shift + j] = rem[shift + j].minus(&c.times(bj));
        }
        quo[shift] = c;
        // The leading slot is zero by construction.
        rem.pop();
        trim(&mut rem);
    }
    trim(&mut quo);
    (quo, rem)
}

/// Rescales a nonzero polynomial to leading coefficient one.
pub fn monic<T: Coeff>(a: &[T]) -> Vec<T> {
    match a.last() {
        None => Vec::new(),
        Some(lead) => scale(a, &lead.inverse().expect("nonzero lead")),
    }
}

/// Monic greatest common divisor (zero only when both inputs are zero).
pub fn gcd<T: Coeff>(a: &[T], b: &[T]) -> Vec<T> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = div_rem(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

/// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
pub fn ext_gcd<T: Coeff>(a: &[T], b: &[T], one: &T) -> (Vec<T>, Vec<T>, Vec<T>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0 = vec![one.clone()];
    let mut s1: Vec<T> = Vec::new();
    let mut t0: Vec<T> = Vec::new();
    let mut t1 = vec![one.clone()];
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        let t2 = sub(&t0, &mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    match r0.last() {
        None => (r0, s0, t0),
        Some(lead) => {
            let inv = lead.inverse().expect("nonzero lead");
            (scale(&r0, &inv), scale(&s0, &inv), scale(&t0, &inv))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p(v: &[i64]) -> Vec<BigRational> {
        let mut out: Vec<BigRational> = v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
        trim(&mut out);
        out
    }

    #[test]
    fn division_recovers_dividend() {
        let a = p(&[-1, 0, 0, 0, 1]);
        let b = p(&[1, 1]);
        let (q, r) = div_rem(&a, &b);
        assert_eq!(add(&mul(&q, &b), &r), a);
        assert!(r.is_empty());
        assert_eq!(q, p(&[-1, 1, -1, 1]));
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (x-1)(x+2) and (x-1)(x+3)
        let a = p(&[-2, 1, 1]);
        let b = p(&[-3, 2, 1]);
        assert_eq!(gcd(&a, &b), p(&[-1, 1]));
    }

    #[test]
    fn bezout_identity() {
        let a = p(&[1, 0, 1]);
        let b = p(&[1, -1, 1]);
        let one = BigRational::one();
        let (g, s, t) = ext_gcd(&a, &b, &one);
        assert_eq!(g, p(&[1]));
        assert_eq!(add(&mul(&s, &a), &mul(&t, &b)), g);
    }
}
