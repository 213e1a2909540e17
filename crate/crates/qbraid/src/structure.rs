//! Constructions around the representation: the q-exponential of the
//! q-Pascal triangle, symmetric powers, the operators Φ and Ψ on polynomials
//! of degree at most n, the Tuba–Wenzl normal forms and the SL(2,ℤ) image.

use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::qcomb::{q_factorial, q_int, q_triangular_power, QContext};
use crate::rep::{d_matrix, first_mismatch, sigma1_matrix, sigma2_matrix, Mismatch, RepSpec};
use crate::scalar::{FieldContext, Rational, Scalar};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

/// Outcome of an exact matrix identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub n: usize,
    pub pass: bool,
    pub first_failure: Option<Mismatch>,
}

impl CheckReport {
    fn compare(check: &str, n: usize, a: &ExactMatrix, b: &ExactMatrix) -> Self {
        let first_failure = first_mismatch(check, a, b);
        CheckReport {
            check: check.to_string(),
            n,
            pass: first_failure.is_none(),
            first_failure,
        }
    }

    /// Folds several reports into one that passes only if all of them do.
    pub fn all(check: &str, n: usize, parts: Vec<CheckReport>) -> Self {
        let first_failure = parts.into_iter().find_map(|r| r.first_failure);
        CheckReport {
            check: check.to_string(),
            n,
            pass: first_failure.is_none(),
            first_failure,
        }
    }
}

fn integer(n: &BigInt, ctx: FieldContext) -> Scalar {
    Scalar::from_rational(Rational::from_integer(n.clone()), ctx)
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

fn is_strictly_upper(t: &ExactMatrix) -> bool {
    t.is_square() && (0..t.rows()).all(|i| (0..=i).all(|j| t.get(i, j).is_zero()))
}

/// T_(q) = Σ_{k<n} (k+1)_q E_{k,k+1}, truncated to size n+1.
pub fn t_matrix(n: usize, ctx: &QContext) -> ExactMatrix {
    let mut t = ExactMatrix::zeros(n + 1, n + 1, ctx.ctx());
    for k in 0..n {
        t.set(k, k + 1, q_int(k + 1, ctx));
    }
    t
}

/// Σ_m T^m/(m)!_q for strictly upper-triangular T.
pub fn q_exp_nilpotent(t: &ExactMatrix, ctx: &QContext) -> Result<ExactMatrix> {
    let field = t.ctx().join(ctx.ctx());
    let t = t.coerce(field)?;
    nilpotent_series(&t, |m| q_factorial(m, ctx).coerce(field))
}

/// Σ_m T^m/m! for strictly upper-triangular T.
pub fn exp_nilpotent(t: &ExactMatrix) -> Result<ExactMatrix> {
    let field = t.ctx();
    nilpotent_series(t, |m| {
        let f: BigInt = (1..=m).map(BigInt::from).product();
        Ok(integer(&f, field))
    })
}

fn nilpotent_series(t: &ExactMatrix, factorial: impl Fn(usize) -> Result<Scalar>) -> Result<ExactMatrix> {
    if !is_strictly_upper(t) {
        return Err(Error::ConstraintViolated(
            "series argument is not strictly upper triangular".into(),
        ));
    }
    let size = t.rows();
    let mut sum = ExactMatrix::identity(size, t.ctx());
    let mut power = ExactMatrix::identity(size, t.ctx());
    for m in 1..size.max(1) {
        power = &power * t;
        if power.is_zero() {
            break;
        }
        let f = factorial(m)?;
        if f.is_zero() {
            return Err(Error::QFactorialZero { m });
        }
        sum = &sum + &power.scale(&f.inv()?)?;
    }
    Ok(sum)
}

/// log U = Σ_{r≥1} (−1)^{r+1}/r · (U − I)^r for unit upper-triangular U.
pub fn unipotent_log(u: &ExactMatrix) -> Result<ExactMatrix> {
    if !u.is_unit_upper_triangular() {
        return Err(Error::NotUnitUpperTriangular);
    }
    let field = u.ctx();
    let size = u.rows();
    let n = u - &ExactMatrix::identity(size, field);
    let mut sum = ExactMatrix::zeros(size, size, field);
    let mut power = ExactMatrix::identity(size, field);
    for r in 1..size.max(1) {
        power = &power * &n;
        let sign = if r % 2 == 1 { 1 } else { -1 };
        sum = &sum + &power.scale(&Scalar::from_ratio(sign, r as i64, field))?;
    }
    Ok(sum)
}

/// Checks P_n exp_(q)T_(q) P_n = σ₁(q,n)^s and, at q = 1, P_n exp T₁ P_n = σ₁(1,n)^s.
pub fn exp_check(n: usize, ctx: &QContext) -> Result<CheckReport> {
    let lhs = q_exp_nilpotent(&t_matrix(n, ctx), ctx)?;
    let rhs = sigma1_matrix(n, ctx)?.transpose_s()?;
    let q_part = CheckReport::compare("exp_(q) T_(q) = sigma1(q)^s", n, &lhs, &rhs);
    let one = QContext::rational(1, 1)?;
    let lhs1 = exp_nilpotent(&t_matrix(n, &one))?;
    let rhs1 = sigma1_matrix(n, &one)?.transpose_s()?;
    let classical = CheckReport::compare("exp T_1 = sigma1(1)^s", n, &lhs1, &rhs1);
    Ok(CheckReport::all("exp", n, vec![q_part, classical]))
}

/// Multiplies a polynomial (coefficients in increasing degree) by c0 + c1·t.
fn mul_linear(p: &[Scalar], c0: &Scalar, c1: &Scalar) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(c0.ctx()); p.len() + 1];
    for (i, a) in p.iter().enumerate() {
        out[i] = &out[i] + &(a * c0);
        out[i + 1] = &out[i + 1] + &(a * c1);
    }
    out
}

/// Action of a 2×2 matrix on the symmetric basis e_k^s (sum of all tensor
/// words with k factors e₁) of Sym^n; entry (r,k) = [t^r](a+ct)^{n−k}(b+dt)^k·C(n,k)/C(n,r).
pub fn symmetric_power(m: &ExactMatrix, n: usize) -> Result<ExactMatrix> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(Error::ShapeMismatch(format!(
            "symmetric power needs a 2x2 matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let field = m.ctx();
    let (a, b, c, d) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
    let mut out = ExactMatrix::zeros(n + 1, n + 1, field);
    for k in 0..=n {
        let mut poly = vec![Scalar::one(field)];
        for _ in 0..n - k {
            poly = mul_linear(&poly, a, c);
        }
        for _ in 0..k {
            poly = mul_linear(&poly, b, d);
        }
        let ck = integer(&binomial(n, k), field);
        for (r, coef) in poly.iter().enumerate() {
            let cr = integer(&binomial(n, r), field);
            out.set(r, k, &(coef * &ck) / &cr);
        }
    }
    Ok(out)
}

/// Checks Sym^n(σ_i(1,1)) = σ_i(1,n) for i = 1, 2.
pub fn sym_check(n: usize) -> Result<CheckReport> {
    let one = QContext::rational(1, 1)?;
    let s1 = CheckReport::compare(
        "Sym^n(sigma1(1,1)) = sigma1(1,n)",
        n,
        &symmetric_power(&sigma1_matrix(1, &one)?, n)?,
        &sigma1_matrix(n, &one)?,
    );
    let s2 = CheckReport::compare(
        "Sym^n(sigma2(1,1)) = sigma2(1,n)",
        n,
        &symmetric_power(&sigma2_matrix(1, &one)?, n)?,
        &sigma2_matrix(n, &one)?,
    );
    Ok(CheckReport::all("sym", n, vec![s1, s2]))
}

/// Matrix whose column k holds the coefficients of the image of X^k.
fn from_columns(n: usize, field: FieldContext, image: impl Fn(usize) -> Vec<Scalar>) -> ExactMatrix {
    let mut out = ExactMatrix::zeros(n + 1, n + 1, field);
    for k in 0..=n {
        for (r, v) in image(k).into_iter().enumerate().take(n + 1) {
            out.set(r, k, v);
        }
    }
    out
}

/// Φ(q) = Dₙ(q)σ₁^s(q), checked against X^k ↦ (1+X)^k_q = Π_{i<k}(1+q^iX).
pub fn ferrand_phi(n: usize, ctx: &QContext) -> Result<ExactMatrix> {
    let product = &d_matrix(n, ctx) * &sigma1_matrix(n, ctx)?.transpose_s()?;
    let direct = from_columns(n, ctx.ctx(), |k| {
        (0..k as i64).fold(vec![ctx.one()], |p, i| mul_linear(&p, &ctx.one(), &ctx.q_pow(i)))
    });
    if product != direct {
        return Err(Error::ConstraintViolated(
            "Phi product form differs from its action on monomials".into(),
        ));
    }
    Ok(product)
}

/// Ψ(q) = σ₂^s(q)Dₙ^s(q), checked against X^k ↦ q_{n−k}(1−X)^{n−k}_{q^{-1}}X^k.
pub fn ferrand_psi(n: usize, ctx: &QContext) -> Result<ExactMatrix> {
    let product = &sigma2_matrix(n, ctx)?.transpose_s()? * &d_matrix(n, ctx).transpose_s()?;
    let direct = from_columns(n, ctx.ctx(), |k| {
        let mut p = vec![ctx.zero(); k];
        p.push(q_triangular_power((n - k) as i64, ctx));
        (0..(n - k) as i64).fold(p, |p, i| mul_linear(&p, &ctx.one(), &-ctx.q_pow(-i)))
    });
    if product != direct {
        return Err(Error::ConstraintViolated(
            "Psi product form differs from its action on monomials".into(),
        ));
    }
    Ok(product)
}

/// Checks ABA = BAB.
pub fn verify_braid_like(a: &ExactMatrix, b: &ExactMatrix) -> Result<CheckReport> {
    if a.rows() != b.rows() || a.cols() != b.cols() || !a.is_square() {
        return Err(Error::ShapeMismatch(
            "braid-like check needs two square matrices of equal size".into(),
        ));
    }
    let aba = &(a * b) * a;
    let bab = &(b * a) * b;
    Ok(CheckReport::compare(
        "ABA = BAB",
        a.rows().saturating_sub(1),
        &aba,
        &bab,
    ))
}

/// Checks ΦΨΦ = ΨΦΨ together with Φ = (σ₁Dₙ^♯)^s and Ψ = (Dₙσ₂)^s.
pub fn ferrand_check(n: usize, ctx: &QContext) -> Result<CheckReport> {
    let phi = ferrand_phi(n, ctx)?;
    let psi = ferrand_psi(n, ctx)?;
    let d = d_matrix(n, ctx);
    let phi_s = (&sigma1_matrix(n, ctx)? * &d.sharp()?).transpose_s()?;
    let psi_s = (&d * &sigma2_matrix(n, ctx)?).transpose_s()?;
    let mut braid = verify_braid_like(&phi, &psi)?;
    braid.check = "Phi Psi Phi = Psi Phi Psi".into();
    Ok(CheckReport::all(
        "ferrand",
        n,
        vec![
            braid,
            CheckReport::compare("Phi = (sigma1 D^sharp)^s", n, &phi, &phi_s),
            CheckReport::compare("Psi = (D sigma2)^s", n, &psi, &psi_s),
        ],
    ))
}

/// Parameters of a Tuba–Wenzl normal form of dimension 2..5.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TWParams {
    /// Dimension of the module (the matrices are n×n).
    pub n: usize,
    /// Eigenvalues λ₁..λₙ, stored 0-based.
    pub lambda: Vec<Scalar>,
    /// For n = 4: D with D² = λ₂λ₃/(λ₁λ₄).
    pub d: Option<Scalar>,
    /// For n = 5: γ with γ⁵ = λ₁λ₂λ₃λ₄λ₅.
    pub gamma: Option<Scalar>,
}

impl TWParams {
    /// Parameters for n = 2 or 3; all entries coerced to a common field.
    pub fn new(lambda: &[Scalar]) -> Result<Self> {
        let n = lambda.len();
        if !(2..=5).contains(&n) {
            return Err(Error::UnsupportedDimension(n));
        }
        if let Some(index) = lambda.iter().position(Scalar::is_zero) {
            return Err(Error::ZeroLambda { index });
        }
        let field = lambda.iter().fold(FieldContext::RATIONAL, |f, l| f.join(l.ctx()));
        let lambda = lambda.iter().map(|l| l.coerce(field)).collect::<Result<_>>()?;
        Ok(TWParams {
            n,
            lambda,
            d: None,
            gamma: None,
        })
    }

    /// n = 4 parameters; checks D² = λ₂λ₃/(λ₁λ₄).
    pub fn with_d(lambda: &[Scalar], d: Scalar) -> Result<Self> {
        let mut p = Self::new(lambda)?;
        let d = p.unify(d)?;
        let l = &p.lambda;
        if &d * &d != &(&l[1] * &l[2]) / &(&l[0] * &l[3]) {
            return Err(Error::ConstraintViolated("D^2 != l2 l3/(l1 l4)".into()));
        }
        p.d = Some(d);
        Ok(p)
    }

    /// n = 5 parameters; checks γ⁵ = λ₁λ₂λ₃λ₄λ₅.
    pub fn with_gamma(lambda: &[Scalar], gamma: Scalar) -> Result<Self> {
        let mut p = Self::new(lambda)?;
        let gamma = p.unify(gamma)?;
        let prod = p.lambda.iter().skip(1).fold(p.lambda[0].clone(), |acc, l| &acc * l);
        if gamma.pow(5)? != prod {
            return Err(Error::ConstraintViolated("gamma^5 != l1 l2 l3 l4 l5".into()));
        }
        p.gamma = Some(gamma);
        Ok(p)
    }

    /// The family λ = (1, q^{-1}, q^{-2}, q^{-2}, 1) with γ = q^{-1}.
    pub fn default_n5(ctx: &QContext) -> Result<Self> {
        let l = [ctx.one(), ctx.q_pow(-1), ctx.q_pow(-2), ctx.q_pow(-2), ctx.one()];
        Self::with_gamma(&l, ctx.q_pow(-1))
    }

    fn unify(&mut self, x: Scalar) -> Result<Scalar> {
        let field = self.field().join(x.ctx());
        self.lambda = self.lambda.iter().map(|l| l.coerce(field)).collect::<Result<_>>()?;
        x.coerce(field)
    }

    pub fn field(&self) -> FieldContext {
        self.lambda[0].ctx()
    }
}

fn rows(field: FieldContext, rows: Vec<Vec<Scalar>>) -> ExactMatrix {
    ExactMatrix::from_rows(field, rows).expect("rectangular literal")
}

/// The literal Tuba–Wenzl matrices; for n = 5 only σ₁ is returned.
pub fn tw_matrices(p: &TWParams) -> Result<(ExactMatrix, Option<ExactMatrix>)> {
    let f = p.field();
    let z = || Scalar::zero(f);
    let one = Scalar::one(f);
    let l = &p.lambda;
    match p.n {
        2 => Ok((
            rows(f, vec![vec![l[0].clone(), l[0].clone()], vec![z(), l[1].clone()]]),
            Some(rows(
                f,
                vec![vec![l[1].clone(), z()], vec![-l[1].clone(), l[0].clone()]],
            )),
        )),
        3 => {
            let x = &(&(&l[0] * &l[2]) / &l[1]) + &l[1];
            Ok((
                rows(
                    f,
                    vec![
                        vec![l[0].clone(), x.clone(), l[1].clone()],
                        vec![z(), l[1].clone(), l[1].clone()],
                        vec![z(), z(), l[2].clone()],
                    ],
                ),
                Some(rows(
                    f,
                    vec![
                        vec![l[2].clone(), z(), z()],
                        vec![-l[1].clone(), l[1].clone(), z()],
                        vec![l[1].clone(), -x, l[0].clone()],
                    ],
                )),
            ))
        }
        4 => {
            let d =
                p.d.clone()
                    .ok_or_else(|| Error::ConstraintViolated("n = 4 needs D".into()))?;
            let di = d.inv()?;
            let a = &(&one + &di) + &(&di * &di);
            let b = &one + &di;
            let d2 = &d * &d;
            let d3 = &d2 * &d;
            let s1 = rows(
                f,
                vec![
                    vec![l[0].clone(), &a * &l[1], &a * &l[2], l[3].clone()],
                    vec![z(), l[1].clone(), &b * &l[2], l[3].clone()],
                    vec![z(), z(), l[2].clone(), l[3].clone()],
                    vec![z(), z(), z(), l[3].clone()],
                ],
            );
            let s2 = rows(
                f,
                vec![
                    vec![l[3].clone(), z(), z(), z()],
                    vec![-l[2].clone(), l[2].clone(), z(), z()],
                    vec![&d * &l[1], -(&(&d + &one) * &l[1]), l[1].clone(), z()],
                    vec![
                        -(&d3 * &l[0]),
                        &(&(&d3 + &d2) + &d) * &l[0],
                        -(&(&(&d2 + &d) + &one) * &l[0]),
                        l[0].clone(),
                    ],
                ],
            );
            Ok((s1, Some(s2)))
        }
        5 => {
            let g = p
                .gamma
                .clone()
                .ok_or_else(|| Error::ConstraintViolated("n = 5 needs gamma".into()))?;
            let g2 = &g * &g;
            let g3 = &g2 * &g;
            let (l1, l2, l3, l4, l5) = (&l[0], &l[1], &l[2], &l[3], &l[4]);
            let l15 = l1 * l5;
            let l24 = l2 * l4;
            let e = &g3 / &l15;
            let mid = &(&(&g2 / l3) + l3) + &g;
            let r0 = vec![
                l1.clone(),
                &(&one + &(&g2 / &l24)) * &(l2 + &(&g3 / &(l3 * l4))),
                &mid * &(&one + &(&l15 / &g2)),
                &(&one + &(&l24 / &g2)) * &(l3 + &(&g3 / &l24)),
                e.clone(),
            ];
            let r1 = vec![z(), l2.clone(), mid.clone(), &(&e + l3) + &g, e.clone()];
            let r2 = vec![z(), z(), l3.clone(), &e + l3, e.clone()];
            let r3 = vec![z(), z(), z(), l4.clone(), l4.clone()];
            let r4 = vec![z(), z(), z(), z(), l5.clone()];
            Ok((rows(f, vec![r0, r1, r2, r3, r4]), None))
        }
        n => Err(Error::UnsupportedDimension(n)),
    }
}

/// Result of [`tw_equivalence_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub n: usize,
    /// The q of the matching q-Pascal representation.
    pub q: Scalar,
    /// C with σ^λ = C^{-1}σ^ΛC.
    pub conjugator: ExactMatrix,
    pub sigma1: CheckReport,
    /// Absent for n = 5.
    pub sigma2: Option<CheckReport>,
    pub pass: bool,
}

/// Builds the matching q-Pascal representation σ^Λ and checks σ^λ = C^{-1}σ^ΛC.
pub fn tw_equivalence_check(p: &TWParams) -> Result<EquivalenceReport> {
    let f = p.field();
    let l = &p.lambda;
    let one = Scalar::one(f);
    let (q, c) = match p.n {
        2 => {
            // Λ^{-1}σ^λΛ = σ^Λ, i.e. conjugator Λ^{-1}.
            let inv = l.iter().map(Scalar::inv).collect::<Result<Vec<_>>>()?;
            (one.clone(), ExactMatrix::diag(f, &inv))
        }
        3 => {
            let q = &(&l[0] * &l[2]) / &(&l[1] * &l[1]);
            // σ^λ = Cσ^ΛC^{-1} with C = diag(1,1,λ₃/λ₂), i.e. conjugator C^{-1}.
            let c = ExactMatrix::diag(f, &[one.clone(), one.clone(), &l[1] / &l[2]]);
            (q, c)
        }
        4 => {
            let d =
                p.d.clone()
                    .ok_or_else(|| Error::ConstraintViolated("n = 4 needs D".into()))?;
            (d.inv()?, ExactMatrix::identity(4, f))
        }
        5 => {
            let q = &(&l[1] * &l[3]) / &(&l[2] * &l[2]);
            let l15 = &l[0] * &l[4];
            if (&l[1] * &l[3]) / l15.clone() != q.pow(-3)? {
                return Err(Error::ConstraintViolated("q^-3 != l2 l4/(l1 l5)".into()));
            }
            if (&l[2] * &l[2]) / l15 != q.pow(-4)? {
                return Err(Error::ConstraintViolated("q^-4 != l3^2/(l1 l5)".into()));
            }
            let qi = q.inv()?;
            let c = ExactMatrix::diag(
                f,
                &[
                    one.clone(),
                    one.clone(),
                    one.clone(),
                    &qi * &(&l[2] / &l[3]),
                    &qi * &(&l[2] / &l[4]),
                ],
            );
            (q, c)
        }
        n => return Err(Error::UnsupportedDimension(n)),
    };
    let ctx = QContext::new(q.clone())?;
    let spec = RepSpec::raw(p.n - 1, &ctx, l).map_err(|e| match e {
        Error::CondQViolated { r } => Error::ConstraintViolated(format!("derived q violates cond_q at r = {r}")),
        other => other,
    })?;
    let rep = crate::rep::build_representation(&spec)?;
    let (tw1, tw2) = tw_matrices(p)?;
    let ci = c.inverse()?;
    let n = p.n - 1;
    let sigma1 = CheckReport::compare(
        "sigma1^lambda = C^-1 sigma1^Lambda C",
        n,
        &tw1,
        &(&(&ci * &rep.sigma1) * &c),
    );
    let sigma2 = tw2.map(|t| {
        CheckReport::compare(
            "sigma2^lambda = C^-1 sigma2^Lambda C",
            n,
            &t,
            &(&(&ci * &rep.sigma2) * &c),
        )
    });
    let pass = sigma1.pass && sigma2.as_ref().is_none_or(|r| r.pass);
    Ok(EquivalenceReport {
        n: p.n,
        q,
        conjugator: c,
        sigma1,
        sigma2,
        pass,
    })
}

/// Generators of B₃ and their inverses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    S1,
    S2,
    S1Inv,
    S2Inv,
}

impl Generator {
    /// Parses `s1`, `s2`, `s1^-1`, `s2^-1` (also `S1`, `sigma1`, …).
    pub fn parse(token: &str) -> Result<Self> {
        let t = token.trim().to_ascii_lowercase();
        let t = t.strip_prefix("sigma").or_else(|| t.strip_prefix('s')).unwrap_or(&t);
        match t {
            "1" => Ok(Generator::S1),
            "2" => Ok(Generator::S2),
            "1^-1" | "1'" | "1i" => Ok(Generator::S1Inv),
            "2^-1" | "2'" | "2i" => Ok(Generator::S2Inv),
            _ => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown generator '{token}'"),
            }),
        }
    }

    /// Parses a word of whitespace- or comma-separated generators.
    pub fn parse_word(text: &str) -> Result<Vec<Self>> {
        text.split(|c: char| c.is_whitespace() || c == ',' || c == '*')
            .filter(|s| !s.is_empty())
            .map(Self::parse)
            .collect()
    }
}

/// A 2×2 integer matrix.
pub type IntMatrix2 = [[BigInt; 2]; 2];

fn int2(a: [[i64; 2]; 2]) -> IntMatrix2 {
    a.map(|r| r.map(BigInt::from))
}

fn mul2(a: &IntMatrix2, b: &IntMatrix2) -> IntMatrix2 {
    let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// Image of a braid word under σ₁ ↦ [[1,1],[0,1]], σ₂ ↦ [[1,0],[−1,1]].
pub fn sl2_projection(word: &[Generator]) -> IntMatrix2 {
    word.iter().fold(int2([[1, 0], [0, 1]]), |acc, g| {
        let m = match g {
            Generator::S1 => int2([[1, 1], [0, 1]]),
            Generator::S2 => int2([[1, 0], [-1, 1]]),
            Generator::S1Inv => int2([[1, -1], [0, 1]]),
            Generator::S2Inv => int2([[1, 0], [1, 1]]),
        };
        mul2(&acc, &m)
    })
}

/// Determinant of a 2×2 integer matrix.
pub fn det2(m: &IntMatrix2) -> BigInt {
    &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
}

/// True when the matrix is the identity.
pub fn is_identity2(m: &IntMatrix2) -> bool {
    m[0][0].is_one() && m[1][1].is_one() && m[0][1].is_zero() && m[1][0].is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    const QQ: FieldContext = FieldContext::RATIONAL_FUNCTIONS;
    const Q: FieldContext = FieldContext::RATIONAL;

    fn sym(r: &[&[&str]]) -> ExactMatrix {
        ExactMatrix::parse_rows(QQ, r).unwrap()
    }

    #[test]
    fn exp_realizes_transposed_triangle() {
        for n in 0..=5 {
            assert!(exp_check(n, &QContext::symbolic()).unwrap().pass, "n = {n}");
        }
        let zero = ExactMatrix::zeros(3, 3, Q);
        assert_eq!(exp_nilpotent(&zero).unwrap(), ExactMatrix::identity(3, Q));
    }

    #[test]
    fn q_factorial_zero_at_root_of_unity() {
        let ctx = QContext::new(Scalar::from_int(-1, Q)).unwrap();
        let t = ExactMatrix::from_ints(Q, &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(q_exp_nilpotent(&t, &ctx), Err(Error::QFactorialZero { m: 2 }));
    }

    #[test]
    fn log_of_pascal() {
        let one = QContext::rational(1, 1).unwrap();
        let l = unipotent_log(&sigma1_matrix(2, &one).unwrap()).unwrap();
        assert_eq!(l, ExactMatrix::from_ints(Q, &[&[0, 2, 0], &[0, 0, 1], &[0, 0, 0]]));
        let u = sigma1_matrix(4, &one).unwrap();
        assert_eq!(exp_nilpotent(&unipotent_log(&u).unwrap()).unwrap(), u);
    }

    #[test]
    fn symmetric_power_examples() {
        let m = ExactMatrix::from_ints(Q, &[&[1, 1], &[0, 1]]);
        assert_eq!(
            symmetric_power(&m, 2).unwrap(),
            ExactMatrix::from_ints(Q, &[&[1, 2, 1], &[0, 1, 1], &[0, 0, 1]])
        );
        assert_eq!(symmetric_power(&m, 1).unwrap(), m);
        for n in 0..=6 {
            assert!(sym_check(n).unwrap().pass);
        }
    }

    #[test]
    fn ferrand_literals() {
        let c = QContext::symbolic();
        assert_eq!(
            ferrand_phi(2, &c).unwrap(),
            sym(&[&["1", "1", "1"], &["0", "1", "1+q"], &["0", "0", "q"]])
        );
        assert_eq!(
            ferrand_psi(2, &c).unwrap(),
            sym(&[&["q", "0", "0"], &["-(1+q)", "1", "0"], &["1", "-1", "1"]])
        );
        assert_eq!(
            ferrand_phi(3, &c).unwrap(),
            sym(&[
                &["1", "1", "1", "1"],
                &["0", "1", "1+q", "1+q+q^2"],
                &["0", "0", "q", "q*(1+q+q^2)"],
                &["0", "0", "0", "q^3"],
            ])
        );
        assert_eq!(
            ferrand_psi(3, &c).unwrap(),
            sym(&[
                &["q^3", "0", "0", "0"],
                &["-q*(1+q+q^2)", "q", "0", "0"],
                &["1+q+q^2", "-(1+q)", "1", "0"],
                &["-1", "1", "-1", "1"],
            ])
        );
        for n in 0..=4 {
            assert!(ferrand_check(n, &c).unwrap().pass);
        }
    }

    #[test]
    fn tuba_wenzl_equivalences() {
        let r = |n| Scalar::from_int(n, Q);
        let p2 = TWParams::new(&[r(2), r(3)]).unwrap();
        assert!(tw_equivalence_check(&p2).unwrap().pass);
        let p3 = TWParams::new(&[r(1), r(2), r(4)]).unwrap();
        let rep3 = tw_equivalence_check(&p3).unwrap();
        assert!(
            rep3.pass,
            "{:?}",
            rep3.sigma1.first_failure.or(rep3.sigma2.unwrap().first_failure)
        );
        let p4 = TWParams::with_d(&[r(1), r(2), r(3), r(6)], r(1)).unwrap();
        assert!(tw_equivalence_check(&p4).unwrap().pass);
        let p4b = TWParams::with_d(&[r(1), r(8), r(2), r(4)], r(2)).unwrap();
        assert!(tw_equivalence_check(&p4b).unwrap().pass);
        let p5 = TWParams::default_n5(&QContext::symbolic()).unwrap();
        let rep5 = tw_equivalence_check(&p5).unwrap();
        assert!(rep5.pass, "{:?}", rep5.sigma1.first_failure);
        assert_eq!(rep5.q, Scalar::q(1));
    }

    #[test]
    fn sl2_images() {
        let w = |s| sl2_projection(&Generator::parse_word(s).unwrap());
        assert_eq!(w("s1 s2 s1"), int2([[0, 1], [-1, 0]]));
        assert_eq!(w("s2 s1"), int2([[1, 1], [-1, 0]]));
        assert!(is_identity2(&w("")));
        assert_eq!(w("s1 s2 s1"), w("s2 s1 s2"));
        assert!(is_identity2(&w("s1 s1^-1 s2^-1 s2")));
    }
}
