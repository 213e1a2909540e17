//! Cyclotomic fields ℚ(ζₘ) with elements reduced modulo Φₘ.

use super::poly::{self, Coeff};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

/// Integer coefficients of the m-th cyclotomic polynomial, low degree first.
///
/// Computed by exact division of x^m − 1 by Φ_d for every proper divisor d.
pub fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    assert!(m >= 1, "cyclotomic order must be positive");
    cached_phi(m).as_ref().clone()
}

fn compute_phi(m: u32) -> Vec<BigInt> {
    let mut num: Vec<BigRational> = vec![BigRational::zero(); m as usize + 1];
    num[0] = -BigRational::one();
    num[m as usize] = BigRational::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            let div: Vec<BigRational> = cached_phi(d)
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect();
            let (q, r) = poly::div_rem(&num, &div);
            debug_assert!(r.is_empty());
            num = q;
        }
    }
    num.into_iter().map(|c| c.to_integer()).collect()
}

fn cached_phi(m: u32) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(p) = cache.read().expect("phi cache poisoned").get(&m) {
        return p.clone();
    }
    let p = Arc::new(compute_phi(m));
    cache.write().expect("phi cache poisoned").entry(m).or_insert(p).clone()
}

/// Euler's totient, the degree of Φₘ.
pub fn euler_phi(m: u32) -> usize {
    (1..=m).filter(|k| k.gcd(&m) == 1).count()
}

/// Collapses orders whose field is ℚ (m = 1, 2) to 1.
pub fn normalize_order(m: u32) -> u32 {
    if m <= 2 {
        1
    } else {
        m
    }
}

/// An element of ℚ(ζₘ) in the power basis 1, ζ, …, ζ^{φ(m)−1}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    /// Builds an element from an arbitrary-length coefficient vector, reducing mod Φₘ.
    pub fn from_coeffs(order: u32, coeffs: Vec<BigRational>) -> Self {
        let phi = cached_phi(order.max(1));
        let mut v = coeffs;
        reduce_in_place(&mut v, &phi);
        v.resize(phi.len() - 1, BigRational::zero());
        Cyclotomic {
            order: normalize_order(order),
            coeffs: v,
        }
    }

    pub fn from_rational(order: u32, r: BigRational) -> Self {
        Self::from_coeffs(order, vec![r])
    }

    pub fn from_int(order: u32, n: i64) -> Self {
        Self::from_rational(order, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero(order: u32) -> Self {
        Self::from_coeffs(order, Vec::new())
    }

    pub fn one(order: u32) -> Self {
        Self::from_int(order, 1)
    }

    /// ζₘ^k, reduced.
    pub fn zeta_pow(order: u32, k: i64) -> Self {
        let m = i64::from(order.max(1));
        let e = k.rem_euclid(m) as usize;
        let mut v = vec![BigRational::zero(); e + 1];
        v[e] = BigRational::one();
        Self::from_coeffs(order, v)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value if the element lies in ℚ.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Nonzero (power, coefficient) pairs, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// Image under ℚ(ζₘ) ↪ ℚ(ζ_target) sending ζₘ to ζ_target^{target/m}.
    ///
    /// Panics unless m divides target.
    pub fn embed(&self, target: u32) -> Self {
        let target = normalize_order(target);
        if target == self.order {
            return self.clone();
        }
        assert!(
            target.is_multiple_of(self.order),
            "cannot embed Q(zeta{}) into Q(zeta{})",
            self.order,
            target
        );
        let step = (target / self.order) as usize;
        let mut v = vec![BigRational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * step] = c.clone();
        }
        Self::from_coeffs(target, v)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Cyclotomic {
            order: self.order,
            coeffs,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Cyclotomic {
            order: self.order,
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        if self.coeffs.len() == 1 {
            return Cyclotomic {
                order: self.order,
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            };
        }
        let n = self.coeffs.len();
        let mut prod = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Self::from_coeffs(self.order, prod)
    }

    /// Inverse via extended Euclid against Φₘ; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.coeffs.len() == 1 {
            return Some(Cyclotomic {
                order: self.order,
                coeffs: vec![self.coeffs[0].recip()],
            });
        }
        let mut a = self.coeffs.clone();
        poly::trim(&mut a);
        let phi: Vec<BigRational> = cached_phi(self.order)
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let (g, s, _) = poly::ext_gcd(&a, &phi, &BigRational::one());
        debug_assert_eq!(g.len(), 1);
        Some(Self::from_coeffs(self.order, s))
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.order, other.order, "cyclotomic order mismatch");
    }

    /// The unique nonzero (power, coefficient) pair, if there is exactly one.
    pub fn single_term(&self) -> Option<(usize, &BigRational)> {
        let mut it = self.terms();
        let first = it.next()?;
        if it.next().is_some() {
            None
        } else {
            Some(first)
        }
    }

    /// Sign of the first nonzero coefficient, used when formatting.
    pub fn leading_negative(&self) -> bool {
        self.terms().next().is_some_and(|(_, c)| c.is_negative())
    }
}

fn reduce_in_place(v: &mut Vec<BigRational>, phi: &[BigInt]) {
    let d = phi.len() - 1;
    while v.len() > d {
        let top = v.pop().expect("nonempty");
        if top.is_zero() {
            continue;
        }
        let shift = v.len() - d;
        // Φ is monic: x^d = −Σ_{i<d} φ_i x^i.
        for (i, p) in phi[..d].iter().enumerate() {
            if !p.is_zero() {
                v[shift + i] -= &top * BigRational::from_integer(p.clone());
            }
        }
    }
}

impl Coeff for Cyclotomic {
    fn zero_like(&self) -> Self {
        Self::zero(self.order)
    }
    fn one_like(&self) -> Self {
        Self::one(self.order)
    }
    fn is_zero_c(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn inverse(&self) -> Option<Self> {
        self.inv()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn phi_twelve_by_division_oracle() {
        // x^12 − 1 = Φ1 Φ2 Φ3 Φ4 Φ6 Φ12, multiplied out independently.
        let to_q = |v: Vec<BigInt>| -> Vec<BigRational> { v.into_iter().map(BigRational::from_integer).collect() };
        let mut prod = to_q(ints(&[1]));
        for d in [1, 2, 3, 4, 6, 12] {
            prod = poly::mul(&prod, &to_q(cyclotomic_polynomial(d)));
        }
        let mut expect = to_q(ints(&[-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]));
        poly::trim(&mut expect);
        assert_eq!(prod, expect);
    }

    #[test]
    fn zeta6_squared() {
        let z = Cyclotomic::zeta_pow(6, 1);
        let expect = z.sub(&Cyclotomic::one(6));
        assert_eq!(z.mul(&z), expect);
    }

    #[test]
    fn inverse_round_trip() {
        let a = Cyclotomic::from_coeffs(
            12,
            vec![
                BigRational::from_integer(3.into()),
                BigRational::from_integer((-1).into()),
                BigRational::new(1.into(), 2.into()),
            ],
        );
        let inv = a.inv().unwrap();
        assert!(a.mul(&inv).is_one());
    }

    #[test]
    fn embedding_preserves_products() {
        let a = Cyclotomic::zeta_pow(3, 1);
        let b = Cyclotomic::from_coeffs(3, vec![BigRational::one(), BigRational::one()]);
        assert_eq!(a.mul(&b).embed(6), a.embed(6).mul(&b.embed(6)));
        assert_eq!(a.embed(6), Cyclotomic::zeta_pow(6, 2));
    }
}
