//! The q-Pascal representations of B₃ and their defining identities.

use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::qcomb::{q_binomial, q_triangular_power, QContext};
use crate::scalar::{FieldContext, Scalar};
use serde::Serialize;

fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// σ₁(q,n)_{km} = C_{n−k}^{n−m}(q).
pub fn sigma1_matrix(n: usize, ctx: &QContext) -> Result<ExactMatrix> {
    let ni = n as i64;
    let mut m = ExactMatrix::zeros(n + 1, n + 1, ctx.ctx());
    for k in 0..=n {
        for j in k..=n {
            m.set(k, j, q_binomial(n - k, ni - j as i64, ctx)?);
        }
    }
    Ok(m)
}

/// σ₁^{-1}(q)_{km} = (−1)^{k+m} q_{m−k} C_{n−k}^{n−m}(q).
pub fn sigma1_inverse_closed(n: usize, ctx: &QContext) -> Result<ExactMatrix> {
    let ni = n as i64;
    let mut m = ExactMatrix::zeros(n + 1, n + 1, ctx.ctx());
    for k in 0..=n {
        for j in k..=n {
            let (ki, ji) = (k as i64, j as i64);
            let c = q_binomial(n - k, ni - ji, ctx)?;
            let v = &(&ctx.int(sign(ki + ji)) * &q_triangular_power(ji - ki, ctx)) * &c;
            m.set(k, j, v);
        }
    }
    Ok(m)
}

/// σ₂(q)_{km} = (−1)^{k+m} q_{k−m}^{-1} C_k^m(q^{-1}), cross-checked against
/// the involution route (σ₁^{-1}(q^{-1}))^♯.
pub fn sigma2_matrix(n: usize, ctx: &QContext) -> Result<ExactMatrix> {
    let closed = sigma2_closed(n, ctx)?;
    let via_sharp = sigma1_inverse_closed(n, &ctx.inverted())?.sharp()?;
    if closed != via_sharp {
        return Err(Error::ConstraintViolated(
            "sigma2 closed form differs from (sigma1^-1(q^-1))^sharp".into(),
        ));
    }
    Ok(closed)
}

fn sigma2_closed(n: usize, ctx: &QContext) -> Result<ExactMatrix> {
    let inv = ctx.inverted();
    let mut m = ExactMatrix::zeros(n + 1, n + 1, ctx.ctx());
    for k in 0..=n {
        for j in 0..=k {
            let (ki, ji) = (k as i64, j as i64);
            let c = q_binomial(k, ji, &inv)?;
            let w = q_triangular_power(ki - ji, ctx).inv()?;
            m.set(k, j, &(&ctx.int(sign(ki + ji)) * &w) * &c);
        }
    }
    Ok(m)
}

/// σ₂^{-1}(q)_{km} = C_k^m(q^{-1}).
pub fn sigma2_inverse_closed(n: usize, ctx: &QContext) -> Result<ExactMatrix> {
    let inv = ctx.inverted();
    let mut m = ExactMatrix::zeros(n + 1, n + 1, ctx.ctx());
    for k in 0..=n {
        for j in 0..=k {
            m.set(k, j, q_binomial(k, j as i64, &inv)?);
        }
    }
    Ok(m)
}

/// S(q)_{km} = q_k^{-1}(−1)^k δ_{k+m,n}.
pub fn s_matrix(n: usize, ctx: &QContext) -> Result<ExactMatrix> {
    let mut m = ExactMatrix::zeros(n + 1, n + 1, ctx.ctx());
    for k in 0..=n {
        let v = &ctx.int(sign(k as i64)) * &q_triangular_power(k as i64, ctx).inv()?;
        m.set(k, n - k, v);
    }
    Ok(m)
}

/// Dₙ(q) = diag(q_r).
pub fn d_matrix(n: usize, ctx: &QContext) -> ExactMatrix {
    let d: Vec<Scalar> = (0..=n as i64).map(|r| q_triangular_power(r, ctx)).collect();
    ExactMatrix::diag(ctx.ctx(), &d)
}

/// Λₙ(q) = diag(q_{rn}) with q_{rn} = q^{−(n−r)r}.
pub fn lambda_canonical(n: usize, ctx: &QContext) -> ExactMatrix {
    let ni = n as i64;
    let d: Vec<Scalar> = (0..=ni).map(|r| ctx.q_pow(-(ni - r) * r)).collect();
    ExactMatrix::diag(ctx.ctx(), &d)
}

/// Checks Λ(q) = q_n^{-1} DₙDₙ^♯ and S(q) = Dₙ^{-1}S(1).
pub fn check_structure_matrices(n: usize, ctx: &QContext) -> Result<()> {
    let d = d_matrix(n, ctx);
    let qn_inv = q_triangular_power(n as i64, ctx).inv()?;
    let lam = (&d * &d.sharp()?).scale(&qn_inv)?;
    if lam != lambda_canonical(n, ctx) {
        return Err(Error::ConstraintViolated("Lambda(q) != q_n^-1 D D^sharp".into()));
    }
    let one = QContext::new(ctx.one())?;
    let s = &d.inverse()? * &s_matrix(n, &one)?;
    if s != s_matrix(n, ctx)? {
        return Err(Error::ConstraintViolated("S(q) != D^-1 S".into()));
    }
    Ok(())
}

/// How the diagonal parameters are supplied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LambdaForm {
    /// Λ itself, subject to λ₀λₙ q_r q_{n−r}/q_n = λ_r λ_{n−r}.
    Raw(Vec<Scalar>),
    /// Λ′ with Λ′Λ′^♯ = cI; the equivalent raw parameter is Dₙ^♯(q)Λ′.
    Factored { lambda_prime: Vec<Scalar>, c: Scalar },
}

/// Validated parameters (n, q, Λ) of one representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepSpec {
    pub n: usize,
    pub ctx: QContext,
    pub form: LambdaForm,
}

/// Moves q and every λ into the smallest common field.
fn unify(ctx: &QContext, lambda: &[Scalar]) -> Result<(QContext, Vec<Scalar>, FieldContext)> {
    let field = lambda.iter().fold(ctx.ctx(), |f, l| f.join(l.ctx()));
    let q = QContext::new(ctx.q().coerce(field)?)?;
    let lambda = lambda.iter().map(|l| l.coerce(field)).collect::<Result<Vec<_>>>()?;
    Ok((q, lambda, field))
}

fn check_lambda(n: usize, lambda: &[Scalar]) -> Result<()> {
    if lambda.len() != n + 1 {
        return Err(Error::LambdaLength {
            expected: n + 1,
            got: lambda.len(),
        });
    }
    if let Some(index) = lambda.iter().position(Scalar::is_zero) {
        return Err(Error::ZeroLambda { index });
    }
    Ok(())
}

impl RepSpec {
    /// Raw form; rejects zero entries and checks cond_q componentwise.
    pub fn raw(n: usize, ctx: &QContext, lambda: &[Scalar]) -> Result<Self> {
        check_lambda(n, lambda)?;
        let (ctx, lambda, _) = unify(ctx, lambda)?;
        check_cond_q(n, &ctx, &lambda)?;
        Ok(RepSpec {
            n,
            ctx,
            form: LambdaForm::Raw(lambda),
        })
    }

    /// Factored form; derives c = λ′₀λ′ₙ and checks λ′_r λ′_{n−r} = c.
    pub fn factored(n: usize, ctx: &QContext, lambda_prime: &[Scalar]) -> Result<Self> {
        check_lambda(n, lambda_prime)?;
        let (ctx, lambda_prime, _) = unify(ctx, lambda_prime)?;
        let c = &lambda_prime[0] * &lambda_prime[n];
        for r in 0..=n {
            if &lambda_prime[r] * &lambda_prime[n - r] != c {
                return Err(Error::CondQViolated { r });
            }
        }
        let spec = RepSpec {
            n,
            ctx,
            form: LambdaForm::Factored { lambda_prime, c },
        };
        // The expanded raw parameter must satisfy cond_q as well.
        check_cond_q(n, &spec.ctx, &spec.effective_lambda())?;
        Ok(spec)
    }

    /// Factored form with Λ′ = I.
    pub fn unit(n: usize, ctx: &QContext) -> Self {
        let ones = vec![ctx.one(); n + 1];
        Self::factored(n, ctx, &ones).expect("identity satisfies the constraint")
    }

    pub fn field(&self) -> FieldContext {
        self.ctx.ctx()
    }

    /// The raw diagonal Λ (for factored specs, the diagonal of Dₙ^♯(q)Λ′).
    pub fn effective_lambda(&self) -> Vec<Scalar> {
        match &self.form {
            LambdaForm::Raw(l) => l.clone(),
            LambdaForm::Factored { lambda_prime, .. } => {
                let n = self.n as i64;
                lambda_prime
                    .iter()
                    .enumerate()
                    .map(|(k, l)| &q_triangular_power(n - k as i64, &self.ctx) * l)
                    .collect()
            }
        }
    }
}

/// Componentwise cond_q: λ₀λₙ q_r q_{n−r}/q_n = λ_r λ_{n−r}.
pub fn check_cond_q(n: usize, ctx: &QContext, lambda: &[Scalar]) -> Result<()> {
    let ni = n as i64;
    let l0ln = &lambda[0] * &lambda[n];
    for r in 0..=n {
        let ri = r as i64;
        let ratio = &(&q_triangular_power(ri, ctx) * &q_triangular_power(ni - ri, ctx)) / &q_triangular_power(ni, ctx);
        if &l0ln * &ratio != &lambda[r] * &lambda[n - r] {
            return Err(Error::CondQViolated { r });
        }
    }
    Ok(())
}

/// A realized representation σ₁^Λ, σ₂^Λ with its structure matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub spec: RepSpec,
    pub sigma1: ExactMatrix,
    pub sigma2: ExactMatrix,
    pub s_matrix: ExactMatrix,
    pub lambda_canonical: ExactMatrix,
    pub d_matrix: ExactMatrix,
}

/// σ₁^Λ = σ₁ Dₙ^♯ Λ′, σ₂^Λ = Λ′^♯ Dₙ σ₂ (factored) or σ₁Λ, Λ^♯σ₂ (raw).
pub fn build_representation(spec: &RepSpec) -> Result<Representation> {
    let (n, ctx) = (spec.n, &spec.ctx);
    let field = spec.field();
    let s1 = sigma1_matrix(n, ctx)?;
    let s2 = sigma2_matrix(n, ctx)?;
    let d = d_matrix(n, ctx);
    let (sigma1, sigma2) = match &spec.form {
        LambdaForm::Raw(l) => {
            let lam = ExactMatrix::diag(field, l);
            (&s1 * &lam, &lam.sharp()? * &s2)
        }
        LambdaForm::Factored { lambda_prime, .. } => {
            let lp = ExactMatrix::diag(field, lambda_prime);
            (&(&s1 * &d.sharp()?) * &lp, &(&lp.sharp()? * &d) * &s2)
        }
    };
    Ok(Representation {
        spec: spec.clone(),
        sigma1,
        sigma2,
        s_matrix: s_matrix(n, ctx)?,
        lambda_canonical: lambda_canonical(n, ctx),
        d_matrix: d,
    })
}

/// Location and values of the first differing entry between two matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub check: String,
    pub row: usize,
    pub col: usize,
    pub left: String,
    pub right: String,
}

/// First differing entry of two equally shaped matrices, if any.
pub fn first_mismatch(check: &str, a: &ExactMatrix, b: &ExactMatrix) -> Option<Mismatch> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Some(Mismatch {
            check: check.to_string(),
            row: a.rows(),
            col: a.cols(),
            left: format!("{}x{}", a.rows(), a.cols()),
            right: format!("{}x{}", b.rows(), b.cols()),
        });
    }
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if a.get(i, j) != b.get(i, j) {
                return Some(Mismatch {
                    check: check.to_string(),
                    row: i,
                    col: j,
                    left: a.get(i, j).to_string(),
                    right: b.get(i, j).to_string(),
                });
            }
        }
    }
    None
}

/// Result of [`verify_braid`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidReport {
    pub pass: bool,
    /// σ₁σ₂σ₁.
    pub product: ExactMatrix,
    /// λ₀λₙS(q)Λ.
    pub expected: ExactMatrix,
    pub first_failure: Option<Mismatch>,
}

/// Checks σ₁σ₂σ₁ = σ₂σ₁σ₂ = λ₀λₙS(q)Λ and σ₁(q)Λ(q)σ₂(q) = S(q)σ₁^{-1}(q) = σ₂^{-1}(q)S(q).
pub fn verify_braid(rep: &Representation) -> Result<BraidReport> {
    let (n, ctx) = (rep.spec.n, &rep.spec.ctx);
    let field = rep.spec.field();
    let (a, b) = (&rep.sigma1, &rep.sigma2);
    let aba = &(a * b) * a;
    let bab = &(b * a) * b;
    let lam = rep.spec.effective_lambda();
    let expected = (&rep.s_matrix * &ExactMatrix::diag(field, &lam)).scale(&(&lam[0] * &lam[n]))?;
    let base = &(&sigma1_matrix(n, ctx)? * &rep.lambda_canonical) * &sigma2_matrix(n, ctx)?;
    let via_s1 = &rep.s_matrix * &sigma1_inverse_closed(n, ctx)?;
    let via_s2 = &sigma2_inverse_closed(n, ctx)? * &rep.s_matrix;
    let failure = first_mismatch("s1 s2 s1 = s2 s1 s2", &aba, &bab)
        .or_else(|| first_mismatch("s1 s2 s1 = l0 ln S(q) Lambda", &aba, &expected))
        .or_else(|| first_mismatch("s1(q) L(q) s2(q) = S(q) s1^-1(q)", &base, &via_s1))
        .or_else(|| first_mismatch("S(q) s1^-1(q) = s2^-1(q) S(q)", &via_s1, &via_s2));
    Ok(BraidReport {
        pass: failure.is_none(),
        product: aba,
        expected,
        first_failure: failure,
    })
}

/// Inverse of a unit upper-triangular matrix by the alternating chain sum
/// x^{-1}_{kn} = Σ over chains k = i₀ < i₁ < … < i_L = n of (−1)^L Π x_{i_j i_{j+1}}.
pub fn unipotent_inverse(x: &ExactMatrix) -> Result<ExactMatrix> {
    if !x.is_unit_upper_triangular() {
        return Err(Error::NotUnitUpperTriangular);
    }
    let size = x.rows();
    let ctx = x.ctx();
    let mut out = ExactMatrix::identity(size, ctx);
    for k in 0..size {
        for end in k + 1..size {
            let mut total = Scalar::zero(ctx);
            chain_sum(x, k, end, &Scalar::one(ctx), 0, &mut total);
            out.set(k, end, total);
        }
    }
    Ok(out)
}

fn chain_sum(x: &ExactMatrix, from: usize, end: usize, acc: &Scalar, len: usize, total: &mut Scalar) {
    for next in from + 1..=end {
        let e = x.get(from, next);
        if e.is_zero() {
            continue;
        }
        let prod = acc * e;
        if next == end {
            let term = if (len + 1).is_multiple_of(2) { prod } else { -prod };
            *total = &*total + &term;
        } else {
            chain_sum(x, next, end, &prod, len + 1, total);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const QQ: FieldContext = FieldContext::RATIONAL_FUNCTIONS;

    fn sym(rows: &[&[&str]]) -> ExactMatrix {
        ExactMatrix::parse_rows(QQ, rows).unwrap()
    }

    #[test]
    fn sigma_matrices_n2() {
        let c = QContext::symbolic();
        assert_eq!(
            sigma1_matrix(2, &c).unwrap(),
            sym(&[&["1", "1+q", "1"], &["0", "1", "1"], &["0", "0", "1"]])
        );
        assert_eq!(
            sigma1_inverse_closed(2, &c).unwrap(),
            sym(&[&["1", "-1-q", "q"], &["0", "1", "-1"], &["0", "0", "1"]])
        );
        assert_eq!(
            sigma2_matrix(2, &c).unwrap(),
            sym(&[&["1", "0", "0"], &["-1", "1", "0"], &["q^-1", "-(1+q^-1)", "1"]])
        );
        assert_eq!(
            sigma2_inverse_closed(2, &c).unwrap(),
            sym(&[&["1", "0", "0"], &["1", "1", "0"], &["1", "1+q^-1", "1"]])
        );
        assert_eq!(
            s_matrix(2, &c).unwrap(),
            sym(&[&["0", "0", "1"], &["0", "-1", "0"], &["q^-1", "0", "0"]])
        );
        assert_eq!(
            lambda_canonical(2, &c),
            sym(&[&["1", "0", "0"], &["0", "q^-1", "0"], &["0", "0", "1"]])
        );
        check_structure_matrices(4, &c).unwrap();
    }

    #[test]
    fn n1_raw_representation() {
        let c = QContext::symbolic();
        let l = [Scalar::from_int(2, QQ), Scalar::from_int(5, QQ)];
        let rep = build_representation(&RepSpec::raw(1, &c, &l).unwrap()).unwrap();
        assert_eq!(rep.sigma1, sym(&[&["2", "5"], &["0", "5"]]));
        assert_eq!(rep.sigma2, sym(&[&["5", "0"], &["-2", "2"]]));
        let report = verify_braid(&rep).unwrap();
        assert!(report.pass, "{:?}", report.first_failure);
        assert_eq!(report.product, sym(&[&["0", "50"], &["-20", "0"]]));
    }

    #[test]
    fn factored_unit_n2() {
        let c = QContext::symbolic();
        let rep = build_representation(&RepSpec::unit(2, &c)).unwrap();
        assert_eq!(
            rep.sigma1,
            sym(&[&["q", "1+q", "1"], &["0", "1", "1"], &["0", "0", "1"]])
        );
        assert!(verify_braid(&rep).unwrap().pass);
    }

    #[test]
    fn cond_q_violation() {
        let c = QContext::rational(1, 1).unwrap();
        let q = FieldContext::RATIONAL;
        let l = [Scalar::from_int(1, q), Scalar::from_int(1, q), Scalar::from_int(2, q)];
        assert_eq!(RepSpec::raw(2, &c, &l), Err(Error::CondQViolated { r: 1 }));
    }

    #[test]
    fn chain_sum_inverse() {
        let c = QContext::symbolic();
        let s1 = sigma1_matrix(3, &c).unwrap();
        assert_eq!(unipotent_inverse(&s1).unwrap(), sigma1_inverse_closed(3, &c).unwrap());
        let not_unit = ExactMatrix::from_ints(QQ, &[&[2, 0], &[0, 1]]);
        assert_eq!(unipotent_inverse(&not_unit), Err(Error::NotUnitUpperTriangular));
    }
}
