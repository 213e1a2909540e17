//! Exact scalars: ℚ, ℚ(ζₘ), and rational functions in q over either.

pub mod cyclotomic;
mod format;
pub mod laurent;
pub mod poly;
pub mod ratfunc;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, Cyclotomic};
pub use laurent::LaurentPoly;
pub use ratfunc::RatFunc;

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Arbitrary-precision rational numbers.
pub type Rational = BigRational;

/// The ambient field of a scalar: ℚ(ζₘ), optionally extended by q.
///
/// `order == 1` means the base field is ℚ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldContext {
    pub order: u32,
    pub symbolic: bool,
}

impl FieldContext {
    pub const RATIONAL: FieldContext = FieldContext {
        order: 1,
        symbolic: false,
    };
    pub const RATIONAL_FUNCTIONS: FieldContext = FieldContext {
        order: 1,
        symbolic: true,
    };

    pub fn cyclotomic(m: u32) -> Self {
        FieldContext {
            order: cyclotomic::normalize_order(m),
            symbolic: false,
        }
    }

    pub fn rational_functions(m: u32) -> Self {
        FieldContext {
            order: cyclotomic::normalize_order(m),
            symbolic: true,
        }
    }

    /// Smallest context containing both.
    pub fn join(self, other: Self) -> Self {
        let order = cyclotomic::normalize_order(self.order.lcm(&other.order));
        FieldContext {
            order,
            symbolic: self.symbolic || other.symbolic,
        }
    }

    /// True when `self` embeds into `other`.
    pub fn embeds_into(self, other: Self) -> bool {
        other.order.is_multiple_of(self.order) && (!self.symbolic || other.symbolic)
    }

    /// The same context without the indeterminate.
    pub fn base(self) -> Self {
        FieldContext {
            order: self.order,
            symbolic: false,
        }
    }
}

impl fmt::Display for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order == 1 {
            write!(f, "Q")?;
        } else {
            write!(f, "Q(zeta{})", self.order)?;
        }
        if self.symbolic {
            write!(f, "(q)")?;
        }
        Ok(())
    }
}

/// An element of one of the supported exact fields.
///
/// The variant is determined by the value: `Rat` for ℚ, `Cyc` for ℚ(ζₘ) with
/// m > 2, `Poly` for symbolic values with trivial denominator and `Func`
/// otherwise. Structural equality is therefore field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(Rational),
    Cyc(Cyclotomic),
    Poly(LaurentPoly),
    Func(RatFunc),
}

impl Scalar {
    pub fn zero(ctx: FieldContext) -> Self {
        Self::from_int(0, ctx)
    }

    pub fn one(ctx: FieldContext) -> Self {
        Self::from_int(1, ctx)
    }

    pub fn from_int(n: i64, ctx: FieldContext) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)), ctx)
    }

    pub fn from_ratio(n: i64, d: i64, ctx: FieldContext) -> Self {
        Self::from_rational(Rational::new(BigInt::from(n), BigInt::from(d)), ctx)
    }

    pub fn from_rational(r: Rational, ctx: FieldContext) -> Self {
        Self::from_base(Cyclotomic::from_rational(ctx.order, r), ctx.symbolic)
    }

    /// Wraps a base-field element, as a constant function when `symbolic`.
    pub fn from_base(c: Cyclotomic, symbolic: bool) -> Self {
        if symbolic {
            Scalar::Poly(LaurentPoly::constant(c))
        } else if c.order() == 1 {
            Scalar::Rat(c.coeffs()[0].clone())
        } else {
            Scalar::Cyc(c)
        }
    }

    /// The indeterminate q in ℚ(ζₘ)(q).
    pub fn q(order: u32) -> Self {
        Scalar::Poly(LaurentPoly::q(order))
    }

    /// ζ_k^e inside `ctx`; requires k to divide the context order (or ζ_k ∈ ℚ).
    pub fn zeta(k: u32, e: i64, ctx: FieldContext) -> Result<Self> {
        let native = FieldContext::cyclotomic(k);
        if !native.embeds_into(ctx) {
            return Err(Error::Coercion { from: native, to: ctx });
        }
        let z = Cyclotomic::zeta_pow(k, e).embed(ctx.order);
        Ok(Self::from_base(z, ctx.symbolic))
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        Scalar::Poly(p)
    }

    pub fn from_ratfunc(f: RatFunc) -> Self {
        if f.is_laurent() {
            Scalar::Poly(f.num().clone())
        } else {
            Scalar::Func(f)
        }
    }

    pub fn ctx(&self) -> FieldContext {
        match self {
            Scalar::Rat(_) => FieldContext::RATIONAL,
            Scalar::Cyc(c) => FieldContext::cyclotomic(c.order()),
            Scalar::Poly(p) => FieldContext::rational_functions(p.order()),
            Scalar::Func(f) => FieldContext::rational_functions(f.order()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Cyc(c) => c.is_zero(),
            Scalar::Poly(p) => p.is_zero(),
            Scalar::Func(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Cyc(c) => c.is_one(),
            Scalar::Poly(p) => p.is_one(),
            Scalar::Func(_) => false,
        }
    }

    /// The value as a base-field element when it does not depend on q.
    pub fn as_base(&self) -> Option<Cyclotomic> {
        match self {
            Scalar::Rat(r) => Some(Cyclotomic::from_rational(1, r.clone())),
            Scalar::Cyc(c) => Some(c.clone()),
            Scalar::Poly(p) => p.as_constant(),
            Scalar::Func(_) => None,
        }
    }

    /// The value as a rational number when it lies in ℚ.
    pub fn as_rational(&self) -> Option<Rational> {
        self.as_base().and_then(|c| c.as_rational().cloned())
    }

    fn to_ratfunc(&self) -> RatFunc {
        match self {
            Scalar::Poly(p) => RatFunc::from_laurent(p.clone()),
            Scalar::Func(f) => f.clone(),
            _ => unreachable!("non-symbolic scalar in symbolic arithmetic"),
        }
    }

    fn to_cyclotomic(&self) -> Cyclotomic {
        match self {
            Scalar::Rat(r) => Cyclotomic::from_rational(1, r.clone()),
            Scalar::Cyc(c) => c.clone(),
            _ => unreachable!("symbolic scalar in base arithmetic"),
        }
    }

    fn same_ctx(&self, other: &Self) -> Result<()> {
        let (a, b) = (self.ctx(), other.ctx());
        if a == b {
            Ok(())
        } else {
            Err(Error::FieldMismatch(a, b))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_ctx(other)?;
        Ok(match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Cyc(a), Scalar::Cyc(b)) => Scalar::Cyc(a.add(b)),
            (Scalar::Poly(a), Scalar::Poly(b)) => Scalar::Poly(a.add(b)),
            _ => Self::from_ratfunc(self.to_ratfunc().add(&other.to_ratfunc())),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_ctx(other)?;
        Ok(match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Cyc(a), Scalar::Cyc(b)) => Scalar::Cyc(a.sub(b)),
            (Scalar::Poly(a), Scalar::Poly(b)) => Scalar::Poly(a.sub(b)),
            _ => Self::from_ratfunc(self.to_ratfunc().sub(&other.to_ratfunc())),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_ctx(other)?;
        Ok(match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Cyc(a), Scalar::Cyc(b)) => Scalar::Cyc(a.mul(b)),
            (Scalar::Poly(a), Scalar::Poly(b)) => Scalar::Poly(a.mul(b)),
            _ => Self::from_ratfunc(self.to_ratfunc().mul(&other.to_ratfunc())),
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.same_ctx(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::Cyc(c) => Scalar::Cyc(c.inv().expect("nonzero")),
            Scalar::Poly(p) => match p.as_monomial() {
                Some((e, c)) => Scalar::Poly(LaurentPoly::monomial(c.inv().expect("nonzero"), -e)),
                None => Self::from_ratfunc(RatFunc::from_laurent(p.clone()).inv()?),
            },
            Scalar::Func(f) => Self::from_ratfunc(f.inv()?),
        })
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Scalar::one(self.ctx());
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Explicit injective coercion into a larger field.
    pub fn coerce(&self, ctx: FieldContext) -> Result<Self> {
        let from = self.ctx();
        if from == ctx {
            return Ok(self.clone());
        }
        if !from.embeds_into(ctx) {
            return Err(Error::Coercion { from, to: ctx });
        }
        Ok(match self {
            Scalar::Rat(_) | Scalar::Cyc(_) => Self::from_base(self.to_cyclotomic().embed(ctx.order), ctx.symbolic),
            Scalar::Poly(p) => Scalar::Poly(p.embed(ctx.order)),
            Scalar::Func(f) => Scalar::Func(f.embed(ctx.order)),
        })
    }

    /// Specializes q to a nonzero base-field value.
    ///
    /// The result lives in the smallest base field containing both the
    /// coefficients and `q0`. Non-symbolic scalars are coerced unchanged.
    pub fn evaluate(&self, q0: &Scalar) -> Result<Scalar> {
        let qctx = q0.ctx();
        if qctx.symbolic {
            return Err(Error::ConstraintViolated("evaluation point must be a constant".into()));
        }
        let target = self.ctx().base().join(qctx);
        let point = q0.coerce(target)?.to_cyclotomic();
        if point.is_zero() {
            return Err(Error::ZeroSubstitution);
        }
        let value = match self {
            Scalar::Rat(_) | Scalar::Cyc(_) => return self.coerce(target),
            Scalar::Poly(p) => p.embed(target.order).evaluate(&point)?,
            Scalar::Func(f) => f.embed(target.order).evaluate(&point)?,
        };
        Ok(Self::from_base(value, false))
    }

    /// Substitutes q ↦ q^{-1}; identity on constants.
    pub fn invert_variable(&self) -> Scalar {
        match self {
            Scalar::Poly(p) => Scalar::Poly(p.invert_variable()),
            Scalar::Func(f) => Self::from_ratfunc(f.invert_variable()),
            _ => self.clone(),
        }
    }

    /// Largest absolute q-exponent in numerator or denominator (0 for constants).
    pub fn degree_span(&self) -> u64 {
        let span = |p: &LaurentPoly| {
            p.min_exp()
                .into_iter()
                .chain(p.max_exp())
                .map(i64::unsigned_abs)
                .max()
                .unwrap_or(0)
        };
        match self {
            Scalar::Poly(p) => span(p),
            Scalar::Func(f) => span(f.num()).max(span(f.den())),
            _ => 0,
        }
    }

    /// Canonical string form, identical to `Display`.
    pub fn canonical(&self) -> String {
        self.to_string()
    }

    /// Parses the canonical grammar into the smallest field containing every atom.
    pub fn parse(text: &str) -> Result<Scalar> {
        format::parse(text, None)
    }

    /// Parses into a prescribed context (which must contain every atom).
    pub fn parse_in(text: &str, ctx: FieldContext) -> Result<Scalar> {
        format::parse(text, Some(ctx))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format::render(self))
    }
}

impl std::str::FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Scalar::parse(s)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            /// Panics on field mismatch; use the `checked_` form to recover.
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Cyc(c) => Scalar::Cyc(c.neg()),
            Scalar::Poly(p) => Scalar::Poly(p.neg()),
            Scalar::Func(f) => Scalar::Func(f.neg()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
