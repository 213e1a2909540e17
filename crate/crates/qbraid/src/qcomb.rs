//! q-integers, q-factorials, Gaussian polynomials and their identities.

use crate::error::{Error, Result};
use crate::scalar::{Cyclotomic, FieldContext, LaurentPoly, Rational, Scalar};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

/// The deformation parameter: the indeterminate q or a nonzero field element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QContext {
    q: Scalar,
}

impl QContext {
    pub fn new(q: Scalar) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::ZeroQ);
        }
        Ok(QContext { q })
    }

    /// Symbolic q over ℚ.
    pub fn symbolic() -> Self {
        QContext { q: Scalar::q(1) }
    }

    /// Symbolic q over ℚ(ζₘ).
    pub fn symbolic_over(order: u32) -> Self {
        QContext { q: Scalar::q(order) }
    }

    /// Concrete rational q = n/d.
    pub fn rational(n: i64, d: i64) -> Result<Self> {
        Self::new(Scalar::from_ratio(n, d, FieldContext::RATIONAL))
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn ctx(&self) -> FieldContext {
        self.q.ctx()
    }

    pub fn is_symbolic(&self) -> bool {
        self.ctx().symbolic
    }

    /// The context with q replaced by q^{-1}.
    pub fn inverted(&self) -> Self {
        QContext {
            q: self.q.inv().expect("q is nonzero"),
        }
    }

    /// q^e.
    pub fn q_pow(&self, e: i64) -> Scalar {
        self.q.pow(e).expect("q is nonzero")
    }

    pub fn int(&self, n: i64) -> Scalar {
        Scalar::from_int(n, self.ctx())
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero(self.ctx())
    }

    pub fn one(&self) -> Scalar {
        Scalar::one(self.ctx())
    }

    /// Evaluates an integer polynomial (low degree first) at q.
    pub fn eval_int_poly(&self, coeffs: &[BigInt]) -> Scalar {
        if let Scalar::Poly(p) = &self.q {
            if let Some((e, c)) = p.as_monomial() {
                if c.is_one() {
                    let order = p.order();
                    let terms = coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()).map(|(i, a)| {
                        (
                            i as i64 * e,
                            Cyclotomic::from_rational(order, Rational::from_integer(a.clone())),
                        )
                    });
                    return Scalar::from_laurent(LaurentPoly::from_terms(order, terms));
                }
            }
        }
        let ctx = self.ctx();
        coeffs.iter().rev().fold(Scalar::zero(ctx), |acc, a| {
            &(&acc * &self.q) + &Scalar::from_rational(Rational::from_integer(a.clone()), ctx)
        })
    }
}

/// (n)_q = 1 + q + … + q^{n−1}; (0)_q = 0.
pub fn q_int(n: usize, ctx: &QContext) -> Scalar {
    let ones = vec![BigInt::one(); n];
    ctx.eval_int_poly(&ones)
}

/// (n)!_q = (1)_q (2)_q … (n)_q; (0)!_q = 1.
pub fn q_factorial(n: usize, ctx: &QContext) -> Scalar {
    (1..=n).fold(ctx.one(), |acc, k| &acc * &q_int(k, ctx))
}

/// (a;q)_n = (1−a)(1−aq)…(1−aq^{n−1}); (a;q)_0 = 1.
pub fn q_pochhammer(a: &Scalar, n: usize, ctx: &QContext) -> Result<Scalar> {
    let mut acc = ctx.one();
    let mut term = a.clone();
    for _ in 0..n {
        acc = acc.checked_mul(&ctx.one().checked_sub(&term)?)?;
        term = term.checked_mul(ctx.q())?;
    }
    Ok(acc)
}

/// q_n = q^{n(n−1)/2}, defined for every integer n.
pub fn q_triangular_power(n: i64, ctx: &QContext) -> Scalar {
    ctx.q_pow(n * (n - 1) / 2)
}

/// q_{rn} = q_r q_{n−r} / q_n, checked against its closed form q^{−(n−r)r}.
pub fn q_power_ratio(r: i64, n: i64, ctx: &QContext) -> Result<Scalar> {
    let lhs = &(&q_triangular_power(r, ctx) * &q_triangular_power(n - r, ctx)) / &q_triangular_power(n, ctx);
    let rhs = ctx.q_pow(-(n - r) * r);
    if lhs != rhs {
        return Err(Error::ConstraintViolated(format!(
            "q_({r},{n}) = {lhs} but expected {rhs}"
        )));
    }
    Ok(lhs)
}

fn int_poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a monic integer polynomial; `None` when a remainder is left.
fn int_poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = b.len() - 1;
    debug_assert!(b[db].is_one());
    if a.len() < b.len() {
        return if a.iter().all(Zero::is_zero) {
            Some(vec![BigInt::zero()])
        } else {
            None
        };
    }
    let mut rem = a.to_vec();
    let mut quo = vec![BigInt::zero(); a.len() - db];
    for s in (0..quo.len()).rev() {
        let c = rem[s + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[s + j] -= &c * bj;
        }
        quo[s] = c;
    }
    if rem.iter().all(Zero::is_zero) {
        Some(quo)
    } else {
        None
    }
}

fn int_q_factorial(n: usize) -> Vec<BigInt> {
    (1..=n).fold(vec![BigInt::one()], |acc, k| {
        int_poly_mul(&acc, &vec![BigInt::one(); k])
    })
}

/// Integer coefficients of C_n^k(q) from the factorial quotient
/// (n)!_q / ((k)!_q (n−k)!_q); empty for k outside 0..=n.
pub fn gaussian_polynomial(n: usize, k: i64) -> Result<Vec<BigInt>> {
    if k < 0 || k as usize > n {
        return Ok(Vec::new());
    }
    let k = k as usize;
    let den = int_poly_mul(&int_q_factorial(k), &int_q_factorial(n - k));
    int_poly_div_exact(&int_q_factorial(n), &den).ok_or(Error::NonPolynomialQuotient)
}

/// C_n^k(q); zero for k < 0 or k > n. Concrete q always evaluates the
/// symbolic polynomial, so roots of unity never meet a 0/0 quotient.
pub fn q_binomial(n: usize, k: i64, ctx: &QContext) -> Result<Scalar> {
    Ok(ctx.eval_int_poly(&gaussian_polynomial(n, k)?))
}

/// Which recursion of the q-Pascal triangle to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Recursion {
    /// C_{n+1}^k = C_n^{k−1} + q^k C_n^k.
    First,
    /// C_{n+1}^k = q^{n+1−k} C_n^{k−1} + C_n^k.
    Second,
}

/// C_n^k(q) built purely by the chosen recursion from C_n^0 = C_n^n = 1.
pub fn q_binomial_recursive(n: usize, k: i64, ctx: &QContext, variant: Recursion) -> Scalar {
    if k < 0 || k as usize > n {
        return ctx.zero();
    }
    let mut row = vec![ctx.one()];
    for m in 0..n {
        // Build row m+1 from row m.
        let mut next = Vec::with_capacity(m + 2);
        for j in 0..=m + 1 {
            let v = if j == 0 || j == m + 1 {
                ctx.one()
            } else {
                let (a, b) = (&row[j - 1], &row[j]);
                match variant {
                    Recursion::First => a + &(&ctx.q_pow(j as i64) * b),
                    Recursion::Second => &(&ctx.q_pow((m + 1 - j) as i64) * a) + b,
                }
            };
            next.push(v);
        }
        row = next;
    }
    row.swap_remove(k as usize)
}

/// Coefficients in x of (1+x)(1+xq)…(1+xq^{k−1}) by direct expansion.
pub fn gauss_expand(k: usize, ctx: &QContext) -> Vec<Scalar> {
    let mut coeffs = vec![ctx.one()];
    for j in 0..k {
        let qj = ctx.q_pow(j as i64);
        let mut next = vec![ctx.zero(); coeffs.len() + 1];
        for (r, c) in coeffs.iter().enumerate() {
            next[r] = &next[r] + c;
            next[r + 1] = &next[r + 1] + &(c * &qj);
        }
        coeffs = next;
    }
    coeffs
}

/// A row of the q-Pascal triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QTriangleRow {
    pub n: usize,
    pub entries: Vec<Scalar>,
}

/// Row n of the q-Pascal triangle, checked against both recursions.
pub fn triangle_row(n: usize, ctx: &QContext) -> Result<QTriangleRow> {
    let entries = (0..=n as i64)
        .map(|k| q_binomial(n, k, ctx))
        .collect::<Result<Vec<_>>>()?;
    for (k, e) in entries.iter().enumerate() {
        for variant in [Recursion::First, Recursion::Second] {
            if q_binomial_recursive(n, k as i64, ctx, variant) != *e {
                return Err(Error::ConstraintViolated(format!(
                    "row {n} entry {k} breaks {variant:?}"
                )));
            }
        }
    }
    Ok(QTriangleRow { n, entries })
}

/// Identities that [`verify_identity`] can check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    Bin1q,
    Bin2q,
    QSymmetry,
    ClassicalBin1,
    ClassicalBin2,
}

impl Identity {
    pub const ALL: [Identity; 5] = [
        Identity::Bin1q,
        Identity::Bin2q,
        Identity::QSymmetry,
        Identity::ClassicalBin1,
        Identity::ClassicalBin2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Bin1q => "bin1q",
            Identity::Bin2q => "bin2q",
            Identity::QSymmetry => "qsymmetry",
            Identity::ClassicalBin1 => "bin1",
            Identity::ClassicalBin2 => "bin2",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|i| i.name() == s)
    }
}

impl Serialize for Identity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Outcome of checking every index instance of one identity at one n.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub id: Identity,
    pub n: usize,
    pub instances: usize,
    pub pass: bool,
    /// Indices and both sides of the first failing instance.
    pub first_failure: Option<String>,
}

/// Table of C_a^b for 0 ≤ a ≤ n, with out-of-range b mapping to zero.
struct BinomTable {
    rows: Vec<Vec<Scalar>>,
    zero: Scalar,
}

impl BinomTable {
    fn new(n: usize, ctx: &QContext) -> Result<Self> {
        let rows = (0..=n)
            .map(|a| {
                (0..=a as i64)
                    .map(|b| q_binomial(a, b, ctx))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BinomTable { rows, zero: ctx.zero() })
    }

    fn get(&self, a: i64, b: i64) -> &Scalar {
        if a < 0 || b < 0 || b > a {
            &self.zero
        } else {
            &self.rows[a as usize][b as usize]
        }
    }
}

fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        BigInt::zero()
    } else {
        num_integer::binomial(BigInt::from(n), BigInt::from(k))
    }
}

/// Checks every index instance of `id` at size n; the q-identities are
/// evaluated in the field of `ctx`.
pub fn verify_identity(id: Identity, n: usize, ctx: &QContext) -> Result<IdentityReport> {
    let ni = n as i64;
    let mut instances = 0;
    let mut failure: Option<String> = None;
    let mut record = |label: String, lhs: String, rhs: String, ok: bool| {
        instances += 1;
        if !ok && failure.is_none() {
            failure = Some(format!("{label}: {lhs} != {rhs}"));
        }
    };
    match id {
        Identity::Bin1q => {
            let c = BinomTable::new(n, ctx)?;
            for m in 0..=ni {
                for j in 0..=ni {
                    let delta = if m == j { ctx.one() } else { ctx.zero() };
                    let mut first = ctx.zero();
                    let mut second = ctx.zero();
                    for i in 0..=ni {
                        let w1 = ctx.int(sign(i + j));
                        let t1 = &(&(c.get(m, i) * &w1) * &q_triangular_power(i - j, ctx)) * c.get(i, j);
                        first = &first + &t1;
                        let w2 = ctx.int(sign(i + m));
                        let t2 = &(&(&w2 * &q_triangular_power(m - i, ctx)) * c.get(m, i)) * c.get(i, j);
                        second = &second + &t2;
                    }
                    record(
                        format!("m={m} j={j} (first sum)"),
                        first.to_string(),
                        delta.to_string(),
                        first == delta,
                    );
                    record(
                        format!("m={m} j={j} (second sum)"),
                        second.to_string(),
                        delta.to_string(),
                        second == delta,
                    );
                }
            }
        }
        Identity::Bin2q => {
            let c = BinomTable::new(n, ctx)?;
            let inv = ctx.inverted();
            let ci = BinomTable::new(n, &inv)?;
            for k in 0..=ni {
                for m in 0..=ni {
                    let mut lhs = ctx.zero();
                    for r in 0..=ni {
                        let ratio = &(&q_triangular_power(r, ctx) * &q_triangular_power(ni - r, ctx))
                            / &q_triangular_power(ni, ctx);
                        let qinv = q_triangular_power(r - m, ctx).inv()?;
                        let t = &(&(&(c.get(ni - k, ni - r) * &ratio) * &ctx.int(sign(ni - r))) * &qinv) * ci.get(r, m);
                        lhs = &lhs + &t;
                    }
                    let rhs =
                        &(&q_triangular_power(k - (ni - m), ctx) / &q_triangular_power(k, ctx)) * c.get(k, ni - m);
                    record(format!("k={k} m={m}"), lhs.to_string(), rhs.to_string(), lhs == rhs);
                }
            }
        }
        Identity::QSymmetry => {
            let inv = ctx.inverted();
            for k in 0..=ni {
                let lhs = q_binomial(n, k, ctx)?;
                let factor =
                    &q_triangular_power(ni, ctx) / &(&q_triangular_power(k, ctx) * &q_triangular_power(ni - k, ctx));
                let rhs = &factor * &q_binomial(n, k, &inv)?;
                record(format!("k={k}"), lhs.to_string(), rhs.to_string(), lhs == rhs);
            }
        }
        Identity::ClassicalBin1 => {
            for m in 0..=ni {
                for j in 0..=ni {
                    let delta = BigInt::from(i64::from(m == j));
                    let first: BigInt = (0..=ni).map(|i| sign(i + m) * binom(m, i) * binom(i, j)).sum();
                    let second: BigInt = (0..=ni).map(|i| sign(i + j) * binom(m, i) * binom(i, j)).sum();
                    record(
                        format!("m={m} j={j} (first sum)"),
                        first.to_string(),
                        delta.to_string(),
                        first == delta,
                    );
                    record(
                        format!("m={m} j={j} (second sum)"),
                        second.to_string(),
                        delta.to_string(),
                        second == delta,
                    );
                }
            }
        }
        Identity::ClassicalBin2 => {
            for m in 0..=ni {
                for j in 0..=ni {
                    let rhs = binom(ni - m, j);
                    let first: BigInt = (0..=ni).map(|i| sign(i) * binom(m, i) * binom(ni - i, ni - j)).sum();
                    let second: BigInt = (0..=ni).map(|i| sign(i) * binom(m, i) * binom(ni - i, j - i)).sum();
                    record(
                        format!("m={m} j={j} (first sum)"),
                        first.to_string(),
                        rhs.to_string(),
                        first == rhs,
                    );
                    record(
                        format!("m={m} j={j} (second sum)"),
                        second.to_string(),
                        rhs.to_string(),
                        second == rhs,
                    );
                }
            }
        }
    }
    Ok(IdentityReport {
        id,
        n,
        instances,
        pass: failure.is_none(),
        first_failure: failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(s: &str) -> Scalar {
        Scalar::parse_in(s, FieldContext::RATIONAL_FUNCTIONS).unwrap()
    }

    #[test]
    fn small_q_numbers() {
        let c = QContext::symbolic();
        assert_eq!(q_int(3, &c), sym("1+q+q^2"));
        assert!(q_int(0, &c).is_zero());
        assert_eq!(q_factorial(2, &c), sym("1+q"));
        assert!(q_factorial(0, &c).is_one());
        assert_eq!(q_pochhammer(c.q(), 2, &c).unwrap(), sym("(1-q)*(1-q^2)"));
        assert_eq!(q_triangular_power(3, &c), sym("q^3"));
        assert_eq!(q_power_ratio(1, 3, &c).unwrap(), sym("q^-2"));
    }

    #[test]
    fn triangle_entries() {
        let c = QContext::symbolic();
        assert_eq!(q_binomial(2, 1, &c).unwrap(), sym("1+q"));
        assert_eq!(q_binomial(4, 2, &c).unwrap(), sym("(1+q^2)*(1+q+q^2)"));
        assert_eq!(q_binomial(5, 1, &c).unwrap(), sym("1+q+q^2+q^3+q^4"));
        assert!(q_binomial(3, 4, &c).unwrap().is_zero());
        assert!(q_binomial(3, -1, &c).unwrap().is_zero());
    }

    #[test]
    fn recursions_agree() {
        let c = QContext::symbolic();
        assert_eq!(q_binomial_recursive(3, 2, &c, Recursion::First), sym("1+q+q^2"));
        assert_eq!(
            q_binomial_recursive(4, 2, &c, Recursion::First),
            q_binomial_recursive(4, 2, &c, Recursion::Second)
        );
        assert!(q_binomial_recursive(7, 0, &c, Recursion::Second).is_one());
    }

    #[test]
    fn gauss_expansion_small() {
        let c = QContext::symbolic();
        assert_eq!(gauss_expand(0, &c), vec![sym("1")]);
        assert_eq!(gauss_expand(2, &c), vec![sym("1"), sym("1+q"), sym("q")]);
        assert_eq!(gauss_expand(3, &c)[2], sym("q*(1+q+q^2)"));
    }

    #[test]
    fn roots_of_unity_evaluate_the_polynomial() {
        let c = QContext::new(Scalar::from_int(-1, FieldContext::RATIONAL)).unwrap();
        // C_2^1(−1) = 0 although (2)!_q vanishes there.
        assert!(q_binomial(2, 1, &c).unwrap().is_zero());
        assert_eq!(
            q_binomial(4, 2, &c).unwrap(),
            Scalar::from_int(2, FieldContext::RATIONAL)
        );
    }

    #[test]
    fn small_identity_instances() {
        let c = QContext::symbolic();
        for id in Identity::ALL {
            let r = verify_identity(id, 3, &c).unwrap();
            assert!(r.pass, "{:?}: {:?}", id, r.first_failure);
        }
    }
}
