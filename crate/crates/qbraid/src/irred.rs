//! Irreducibility and equivalence analysis: the F_{r,n} minor criterion,
//! commutant and Burnside algebra dimensions, suspected parameter catalogs,
//! explicit reducibility witnesses and the intertwiner solver.

use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, IndexSubset};
use crate::qcomb::{q_int, QContext};
use crate::rep::{build_representation, d_matrix, sigma1_matrix, sigma2_matrix, RepSpec, Representation};
use crate::scalar::{FieldContext, Scalar};
use crate::structure::{q_exp_nilpotent, t_matrix};
use num_bigint::BigInt;
use serde::Serialize;
use std::collections::BTreeMap;

/// Parameters of F_{r,n}(q,λ): the shift index r and the representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FMatrixSpec {
    pub r: usize,
    pub rep: RepSpec,
}

/// F_{r,n} = exp_(q)T_(q) − μ_r(Λ^♯)^{-1}, with Λ the raw diagonal and
/// μ_r = Λ_{rr} (= q_{n−r}λ′_r for factored specs). Cross-checked against
/// (σ₁(q,n) − μ_rΛ^{-1})^s.
pub fn f_matrix(spec: &FMatrixSpec) -> Result<ExactMatrix> {
    let rep = &spec.rep;
    let (n, r) = (rep.n, spec.r);
    if r > n / 2 {
        return Err(Error::ShapeMismatch(format!("r = {r} exceeds floor(n/2) = {}", n / 2)));
    }
    let field = rep.field();
    let lam = rep.effective_lambda();
    if let Some(k) = lam.iter().position(Scalar::is_zero) {
        return Err(Error::SingularDiagonal(k));
    }
    let mu = lam[r].clone();
    let inv: Vec<Scalar> = lam.iter().map(|l| &mu / l).collect();
    let shift = ExactMatrix::diag(field, &inv);
    let exp = q_exp_nilpotent(&t_matrix(n, &rep.ctx), &rep.ctx)?;
    let f = &exp - &shift.sharp()?;
    let via_sigma = (&sigma1_matrix(n, &rep.ctx)? - &shift).transpose_s()?;
    if f != via_sigma {
        return Err(Error::ConstraintViolated(
            "F_{r,n} differs from (sigma1 - mu Lambda^-1)^s".into(),
        ));
    }
    Ok(f)
}

/// Outcome of the minor search at one r.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum MinorOutcome {
    /// A row subset whose minor against columns {r+1..n} is nonzero.
    Witness { rows: Vec<usize>, value: String },
    /// Every minor vanishes: a suspected point at this r.
    Exhausted,
}

impl MinorOutcome {
    pub fn is_witness(&self) -> bool {
        matches!(self, MinorOutcome::Witness { .. })
    }
}

/// All k-subsets of 0..n in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Searches row subsets of size n−r for a nonzero minor of F^s_{r,n}
/// against columns {r+1..n}; the top rows {0..n−r−1} are tried first.
pub fn minor_criterion(rep: &RepSpec, r: usize) -> Result<MinorOutcome> {
    let n = rep.n;
    let fs = f_matrix(&FMatrixSpec { r, rep: rep.clone() })?.transpose_s()?;
    let cols = IndexSubset::range(r + 1, n + 1);
    let size = n - r;
    let top: Vec<usize> = (0..size).collect();
    let mut candidates = vec![top.clone()];
    candidates.extend(subsets(n + 1, size).into_iter().filter(|s| *s != top));
    for rows in candidates {
        let value = fs.minor(&IndexSubset::new(rows.clone(), n + 1)?, &cols)?;
        if !value.is_zero() {
            return Ok(MinorOutcome::Witness {
                rows,
                value: value.to_string(),
            });
        }
    }
    Ok(MinorOutcome::Exhausted)
}

/// Basis of the space of matrices commuting with both generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Commutant {
    pub dimension: usize,
    pub basis: Vec<ExactMatrix>,
}

/// Solves A_i X = X B_i for all pairs (A_i, B_i); returns a basis of X.
fn solve_intertwining(pairs: &[(&ExactMatrix, &ExactMatrix)], field: FieldContext) -> Result<Vec<ExactMatrix>> {
    let (rows, cols) = (pairs[0].0.rows(), pairs[0].1.rows());
    let unknowns = rows * cols;
    let mut system = Vec::new();
    for (a, b) in pairs {
        let a = a.coerce(field)?;
        let b = b.coerce(field)?;
        for i in 0..rows {
            for j in 0..cols {
                let mut eq = vec![Scalar::zero(field); unknowns];
                for k in 0..rows {
                    let v = &eq[k * cols + j] + a.get(i, k);
                    eq[k * cols + j] = v;
                }
                for k in 0..cols {
                    let v = &eq[i * cols + k] - b.get(k, j);
                    eq[i * cols + k] = v;
                }
                system.push(eq);
            }
        }
    }
    let m = ExactMatrix::from_rows(field, system)?;
    m.nullspace()
        .into_iter()
        .map(|v| ExactMatrix::new(rows, cols, field, v))
        .collect()
}

/// Rational points tried when specializing a symbolic q.
const PROBE_POINTS: [(i64, i64); 4] = [(2, 1), (3, 1), (5, 2), (7, 3)];

/// The matrices evaluated at the first probe point where every entry is defined.
/// Rank over ℚ(q) is bounded below by the rank at any such point, which
/// turns a full-rank result there into an exact statement over ℚ(q).
fn specialize(ms: &[&ExactMatrix]) -> Option<Vec<ExactMatrix>> {
    if !ms.iter().any(|m| m.ctx().symbolic) {
        return None;
    }
    PROBE_POINTS.iter().find_map(|&(a, b)| {
        let q0 = Scalar::from_ratio(a, b, FieldContext::RATIONAL);
        ms.iter().map(|m| m.evaluate(&q0)).collect::<Result<Vec<_>>>().ok()
    })
}

/// Exact commutant of ⟨σ₁^Λ, σ₂^Λ⟩; dimension 1 means operator irreducible.
pub fn commutant(rep: &Representation) -> Result<Commutant> {
    let field = rep.spec.field();
    if let Some(v) = specialize(&[&rep.sigma1, &rep.sigma2]) {
        let f0 = v[0].ctx().join(v[1].ctx());
        if solve_intertwining(&[(&v[0], &v[0]), (&v[1], &v[1])], f0)?.len() == 1 {
            let id = ExactMatrix::identity(rep.sigma1.rows(), field);
            return Ok(Commutant {
                dimension: 1,
                basis: vec![id],
            });
        }
    }
    commutant_by_elimination(rep)
}

/// Commutant by elimination over the working field, without specialization.
pub fn commutant_by_elimination(rep: &Representation) -> Result<Commutant> {
    let field = rep.spec.field();
    let basis = solve_intertwining(&[(&rep.sigma1, &rep.sigma1), (&rep.sigma2, &rep.sigma2)], field)?;
    Ok(Commutant {
        dimension: basis.len(),
        basis,
    })
}

pub fn commutant_dimension(rep: &Representation) -> Result<usize> {
    Ok(commutant(rep)?.dimension)
}

/// Echelon basis of a growing span of vectors, kept fully reduced.
struct SpanBasis {
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl SpanBasis {
    fn new() -> Self {
        SpanBasis { rows: Vec::new() }
    }

    fn len(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` if it is independent of the current span; returns whether it was.
    fn insert(&mut self, mut v: Vec<Scalar>) -> Result<bool> {
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let c = v[*p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x = &*x - &(&c * y);
                    }
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let inv = v[p].inv()?;
        let v: Vec<Scalar> = v.iter().map(|x| x * &inv).collect();
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    if !y.is_zero() {
                        *x = &*x - &(&c * y);
                    }
                }
            }
        }
        self.rows.push((p, v));
        Ok(true)
    }
}

/// Dimension of the unital algebra generated by σ₁^Λ and σ₂^Λ, by
/// breadth-first closure of span{I} under left multiplication by σ₁, σ₂.
pub fn burnside_dimension(rep: &Representation) -> Result<usize> {
    let full = rep.sigma1.rows() * rep.sigma1.rows();
    if let Some(v) = specialize(&[&rep.sigma1, &rep.sigma2]) {
        if algebra_dimension(&[&v[0], &v[1]])? == full {
            return Ok(full);
        }
    }
    algebra_dimension(&[&rep.sigma1, &rep.sigma2])
}

/// Dimension of the unital algebra generated by the given square matrices.
pub fn algebra_dimension(generators: &[&ExactMatrix]) -> Result<usize> {
    let size = generators[0].rows();
    let field = generators[0].ctx();
    let mut span = SpanBasis::new();
    let id = ExactMatrix::identity(size, field);
    span.insert(id.entries().to_vec())?;
    let mut queue = std::collections::VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        if span.len() == size * size {
            break;
        }
        for g in generators {
            let next = *g * &m;
            if span.insert(next.entries().to_vec())? {
                queue.push_back(next);
            }
        }
    }
    Ok(span.len())
}

/// Classification of a representation point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Every r has a witness minor and the commutant is scalar.
    OperatorIrreducible,
    /// A non-scalar operator commutes with both generators.
    OperatorReducible,
    /// Scalar commutant, but the generated algebra is a proper subalgebra.
    SubspaceReducibleWitnessed,
    /// Minors exhausted without a commutant or subspace witness.
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::OperatorIrreducible => "operator-irreducible",
            Verdict::OperatorReducible => "operator-reducible",
            Verdict::SubspaceReducibleWitnessed => "subspace-reducible-witnessed",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Minor outcome for one r.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PerR {
    pub r: usize,
    #[serde(flatten)]
    pub outcome: MinorOutcome,
}

/// Combined irreducibility analysis of one representation point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IrreducibilityReport {
    pub n: usize,
    pub q: String,
    pub lambda: Vec<String>,
    pub per_r: Vec<PerR>,
    pub commutant_dim: usize,
    pub burnside_dim: usize,
    pub verdict: Verdict,
}

/// Runs the minor search for every r ≤ ⌊n/2⌋ and both oracles.
pub fn analyze(rep: &Representation) -> Result<IrreducibilityReport> {
    let spec = &rep.spec;
    let n = spec.n;
    let per_r = (0..=n / 2)
        .map(|r| {
            Ok(PerR {
                r,
                outcome: minor_criterion(spec, r)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let commutant_dim = commutant_dimension(rep)?;
    let burnside_dim = burnside_dimension(rep)?;
    let all_witnessed = per_r.iter().all(|p| p.outcome.is_witness());
    let verdict = if commutant_dim >= 2 {
        Verdict::OperatorReducible
    } else if burnside_dim < (n + 1) * (n + 1) {
        Verdict::SubspaceReducibleWitnessed
    } else if all_witnessed {
        Verdict::OperatorIrreducible
    } else {
        Verdict::Inconclusive
    };
    Ok(IrreducibilityReport {
        n,
        q: spec.ctx.q().to_string(),
        lambda: spec.effective_lambda().iter().map(Scalar::to_string).collect(),
        per_r,
        commutant_dim,
        burnside_dim,
        verdict,
    })
}

/// A suspected point Λ = λ₀·diag(ζ_s^{ek})_{k=0}^n with e = ±1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuspectedCatalogEntry {
    pub n: usize,
    pub s: u32,
    /// Exponent sign e of ζ_s^{ek}.
    pub sign: i64,
    pub lambda: Vec<Scalar>,
}

impl SuspectedCatalogEntry {
    /// The raw spec at q = 1 for this point.
    pub fn spec(&self) -> Result<RepSpec> {
        let ctx = QContext::new(Scalar::one(self.lambda[0].ctx()))?;
        RepSpec::raw(self.n, &ctx, &self.lambda)
    }
}

/// Λ^{(s)} = diag(ζ_s^{±k}) for 2 ≤ s ≤ n (λ₀ = 1), both signs when s > 2.
pub fn suspected_catalog(n: usize) -> Result<Vec<SuspectedCatalogEntry>> {
    let mut out = Vec::new();
    for s in 2..=n as u32 {
        let field = FieldContext::cyclotomic(s);
        let signs: &[i64] = if s == 2 { &[1] } else { &[1, -1] };
        for &sign in signs {
            let lambda = (0..=n as i64)
                .map(|k| Scalar::zeta(s, sign * k, field))
                .collect::<Result<Vec<_>>>()?;
            out.push(SuspectedCatalogEntry { n, s, sign, lambda });
        }
    }
    Ok(out)
}

/// D_n^{(0)} = M^{01…n−1}_{12…n}[σ₁(1,n) − diag(ν)] with ν₀ = 1 and the given ν₁..ν_n.
pub fn d0_minor_nu(n: usize, nu: &[Scalar]) -> Result<Scalar> {
    if n < 2 || nu.len() != n {
        return Err(Error::LambdaLength {
            expected: n,
            got: nu.len(),
        });
    }
    let field = nu.iter().fold(FieldContext::RATIONAL, |f, x| f.join(x.ctx()));
    let one = QContext::new(Scalar::one(field))?;
    let mut diag = vec![Scalar::one(field)];
    diag.extend(nu.iter().map(|x| x.coerce(field)).collect::<Result<Vec<_>>>()?);
    let m = &sigma1_matrix(n, &one)? - &ExactMatrix::diag(field, &diag);
    m.minor(&IndexSubset::range(0, n), &IndexSubset::range(1, n + 1))
}

/// D_n^{(0)} for Λ = diag(λ₀..λ_n), i.e. ν_k = λ₀/λ_k.
pub fn d0_determinant(n: usize, lambda: &[Scalar]) -> Result<Scalar> {
    if lambda.len() != n + 1 {
        return Err(Error::LambdaLength {
            expected: n + 1,
            got: lambda.len(),
        });
    }
    if let Some(index) = lambda.iter().position(Scalar::is_zero) {
        return Err(Error::ZeroLambda { index });
    }
    let nu: Vec<Scalar> = lambda[1..].iter().map(|l| &lambda[0] / l).collect();
    d0_minor_nu(n, &nu)
}

/// Coefficients a_S of the multilinear polynomial D_n^{(0)}(ν₁..ν_{n−1}),
/// keyed by the sorted index set S, recovered from its values on {0,1}^{n−1}.
pub fn d0_nu_coefficients(n: usize) -> Result<BTreeMap<Vec<usize>, BigInt>> {
    let m = n - 1;
    let q = FieldContext::RATIONAL;
    let mut values = Vec::with_capacity(1 << m);
    for mask in 0u32..(1 << m) {
        let mut nu: Vec<Scalar> = (0..m).map(|i| Scalar::from_int(((mask >> i) & 1) as i64, q)).collect();
        nu.push(Scalar::zero(q));
        let v = d0_minor_nu(n, &nu)?.as_rational().expect("rational minor");
        values.push(v.to_integer());
    }
    let mut out = BTreeMap::new();
    for mask in 0u32..(1 << m) {
        // Möbius inversion over subsets of `mask`.
        let mut total = BigInt::from(0);
        let mut sub = mask;
        loop {
            let sign = if (mask.count_ones() - sub.count_ones()) % 2 == 0 {
                1
            } else {
                -1
            };
            total += BigInt::from(sign) * &values[sub as usize];
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & mask;
        }
        if total != BigInt::from(0) {
            let set: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
            out.insert(set, total);
        }
    }
    Ok(out)
}

/// The starred closed form (n−1)!·λ₀^{n−2}·Σ_{k<n}λ_k / Π_{k=1}^{n−1}λ_k, valid
/// when λ_rλ_{n−r} = λ₀² for all r; for n = 4 with λ₂ = −λ₀ the factor
/// Σ_{k<n}λ_k is replaced by λ₀ + λ₂.
pub fn d0_starred(n: usize, lambda: &[Scalar]) -> Result<Scalar> {
    if lambda.len() != n + 1 {
        return Err(Error::LambdaLength {
            expected: n + 1,
            got: lambda.len(),
        });
    }
    let l0 = &lambda[0];
    let c = l0 * l0;
    for r in 0..=n {
        if &lambda[r] * &lambda[n - r] != c {
            return Err(Error::ConstraintViolated(format!(
                "(*) fails at r = {r}: l_r l_(n-r) != l_0^2"
            )));
        }
    }
    let field = l0.ctx();
    let fact: i64 = (1..n as i64).product();
    let prod = lambda[1..n].iter().fold(Scalar::one(field), |acc, l| &acc * l);
    let sum = if n == 4 && lambda[2] == -l0.clone() {
        l0 + &lambda[2]
    } else {
        lambda[..n].iter().fold(Scalar::zero(field), |acc, l| &acc + l)
    };
    let lead = &Scalar::from_int(fact, field) * &l0.pow(n as i64 - 2)?;
    Ok(&(&lead * &sum) / &prod)
}

/// Direct minor against the starred closed form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarredCheck {
    pub n: usize,
    pub direct: String,
    pub closed_form: String,
    pub pass: bool,
}

pub fn d0_starred_check(n: usize, lambda: &[Scalar]) -> Result<StarredCheck> {
    let direct = d0_determinant(n, lambda)?;
    let closed = d0_starred(n, lambda)?;
    Ok(StarredCheck {
        n,
        pass: direct == closed,
        direct: direct.to_string(),
        closed_form: closed.to_string(),
    })
}

/// e₀ = ((1−α)^{−(n−k)})_k, fixed by σ₁(1,n)diag(α^{n−k}), and
/// f₀ = ((1−α^{-1})^{n−k})_k, fixed by diag(α^k)σ₂(1,n); both verified.
pub fn eigenvector_closed_forms(alpha: &Scalar, n: usize) -> Result<(Vec<Scalar>, Vec<Scalar>)> {
    let field = alpha.ctx();
    let one = Scalar::one(field);
    if alpha.is_zero() || alpha.is_one() {
        return Err(Error::AlphaDegenerate);
    }
    let ni = n as i64;
    let a = &one - alpha;
    let b = &one - &alpha.inv()?;
    let e0 = (0..=ni).map(|k| a.pow(-(ni - k))).collect::<Result<Vec<_>>>()?;
    let f0 = (0..=ni).map(|k| b.pow(ni - k)).collect::<Result<Vec<_>>>()?;
    let unit = QContext::new(one)?;
    let lam = (0..=ni).map(|k| alpha.pow(ni - k)).collect::<Result<Vec<_>>>()?;
    let lam = ExactMatrix::diag(field, &lam);
    let s1 = &sigma1_matrix(n, &unit)? * &lam;
    let s2 = &lam.sharp()? * &sigma2_matrix(n, &unit)?;
    if s1.mul_vec(&e0)? != e0 || s2.mul_vec(&f0)? != f0 {
        return Err(Error::ConstraintViolated("eigenvector closed form is not fixed".into()));
    }
    Ok((e0, f0))
}

/// Whether v is fixed by both generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedVectorReport {
    pub sigma1_fixed: bool,
    pub sigma2_fixed: bool,
    pub pass: bool,
}

pub fn fixed_vector_check(rep: &Representation, v: &[Scalar]) -> Result<FixedVectorReport> {
    let field = rep.spec.field();
    let v = v.iter().map(|x| x.coerce(field)).collect::<Result<Vec<_>>>()?;
    let sigma1_fixed = rep.sigma1.mul_vec(&v)? == v;
    let sigma2_fixed = rep.sigma2.mul_vec(&v)? == v;
    Ok(FixedVectorReport {
        sigma1_fixed,
        sigma2_fixed,
        pass: sigma1_fixed && sigma2_fixed,
    })
}

/// An invariant subspace found at a root of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceWitness {
    pub n: usize,
    pub q: Scalar,
    pub basis: Vec<Vec<Scalar>>,
    pub invariant: bool,
}

/// For q = ζ_s with (n)_q = 0, checks that {(0,t₁,…,t_{n−1},0)} is invariant
/// under σ₁D^♯ and Dσ₂.
pub fn root_of_unity_reducibility(n: usize, s: u32) -> Result<SubspaceWitness> {
    let field = FieldContext::cyclotomic(s);
    let q = Scalar::zeta(s, 1, field)?;
    let ctx = QContext::new(q.clone())?;
    if n < 2 || !q_int(n, &ctx).is_zero() {
        return Err(Error::NotAReduciblePoint);
    }
    let d = d_matrix(n, &ctx);
    let s1 = &sigma1_matrix(n, &ctx)? * &d.sharp()?;
    let s2 = &d * &sigma2_matrix(n, &ctx)?;
    let basis: Vec<Vec<Scalar>> = (1..n)
        .map(|i| (0..=n).map(|k| Scalar::from_int((k == i) as i64, field)).collect())
        .collect();
    let mut invariant = true;
    for v in &basis {
        for g in [&s1, &s2] {
            let w = g.mul_vec(v)?;
            invariant &= w[0].is_zero() && w[n].is_zero();
        }
    }
    Ok(SubspaceWitness { n, q, basis, invariant })
}

/// n = 1 subspace criterion and its Burnside cross-check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct N1Report {
    /// α² − α + 1 = 0 with α = λ₁/λ₀.
    pub reducible: bool,
    pub burnside_dim: usize,
    pub consistent: bool,
}

pub fn n1_subspace_test(lambda0: &Scalar, lambda1: &Scalar) -> Result<N1Report> {
    let field = lambda0.ctx().join(lambda1.ctx());
    let ctx = QContext::new(Scalar::one(field))?;
    let spec = RepSpec::raw(1, &ctx, &[lambda0.clone(), lambda1.clone()])?;
    let alpha = lambda1 / lambda0;
    let one = Scalar::one(alpha.ctx());
    let reducible = (&(&(&alpha * &alpha) - &alpha) + &one).is_zero();
    let burnside_dim = burnside_dimension(&build_representation(&spec)?)?;
    Ok(N1Report {
        reducible,
        burnside_dim,
        consistent: reducible == (burnside_dim < 4),
    })
}

/// Basis of {C : σᵢ^A C = C σᵢ^B} and whether an invertible element was found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intertwiners {
    pub dimension: usize,
    pub basis: Vec<ExactMatrix>,
    /// An invertible element, if one was found among the tested combinations.
    pub invertible: Option<ExactMatrix>,
}

pub fn intertwiner_space(a: &Representation, b: &Representation) -> Result<Intertwiners> {
    if a.spec.n != b.spec.n {
        return Err(Error::ShapeMismatch(
            "intertwiner needs representations of equal dimension".into(),
        ));
    }
    let field = a.spec.field().join(b.spec.field());
    if let Some(v) = specialize(&[&a.sigma1, &a.sigma2, &b.sigma1, &b.sigma2]) {
        let f0 = v.iter().fold(FieldContext::RATIONAL, |f, m| f.join(m.ctx()));
        if solve_intertwining(&[(&v[0], &v[2]), (&v[1], &v[3])], f0)?.is_empty() {
            return Ok(Intertwiners {
                dimension: 0,
                basis: Vec::new(),
                invertible: None,
            });
        }
    }
    let basis = solve_intertwining(&[(&a.sigma1, &b.sigma1), (&a.sigma2, &b.sigma2)], field)?;
    let invertible = find_invertible(&basis, field)?;
    Ok(Intertwiners {
        dimension: basis.len(),
        basis,
        invertible,
    })
}

/// Tries each basis element, then a fixed set of integer combinations.
fn find_invertible(basis: &[ExactMatrix], field: FieldContext) -> Result<Option<ExactMatrix>> {
    for b in basis {
        if !b.determinant()?.is_zero() {
            return Ok(Some(b.clone()));
        }
    }
    if basis.len() < 2 {
        return Ok(None);
    }
    let tuples: [fn(usize) -> i64; 4] = [
        |_| 1,
        |i| i as i64 + 1,
        |i| if i % 2 == 0 { 1 } else { -1 },
        |i| (i * i) as i64 + 2,
    ];
    for coef in tuples {
        let mut c = ExactMatrix::zeros(basis[0].rows(), basis[0].cols(), field);
        for (i, b) in basis.iter().enumerate() {
            c = &c + &b.scale(&Scalar::from_int(coef(i), field))?;
        }
        if !c.determinant()?.is_zero() {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldContext = FieldContext::RATIONAL;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_int(x, Q)).collect()
    }

    fn raw_q1(lambda: &[i64]) -> RepSpec {
        RepSpec::raw(lambda.len() - 1, &QContext::rational(1, 1).unwrap(), &ints(lambda)).unwrap()
    }

    #[test]
    fn minors_at_q1() {
        let id2 = raw_q1(&[1, 1, 1]);
        assert_eq!(
            minor_criterion(&id2, 0).unwrap(),
            MinorOutcome::Witness {
                rows: vec![0, 1],
                value: "2".into()
            }
        );
        let red = raw_q1(&[1, -1, 1]);
        assert_eq!(minor_criterion(&red, 0).unwrap(), MinorOutcome::Exhausted);
        let id3 = raw_q1(&[1, 1, 1, 1]);
        assert_eq!(
            minor_criterion(&id3, 1).unwrap(),
            MinorOutcome::Witness {
                rows: vec![0, 1],
                value: "1".into()
            }
        );
    }

    #[test]
    fn symbolic_minor() {
        let spec = RepSpec::unit(2, &QContext::symbolic());
        let fs = f_matrix(&FMatrixSpec { r: 0, rep: spec })
            .unwrap()
            .transpose_s()
            .unwrap();
        let m = fs.minor(&IndexSubset::range(0, 2), &IndexSubset::range(1, 3)).unwrap();
        assert_eq!(m.to_string(), "2*q");
    }

    #[test]
    fn commutant_and_burnside() {
        let rep = build_representation(&raw_q1(&[1, 1, 1])).unwrap();
        assert_eq!(commutant_dimension(&rep).unwrap(), 1);
        assert_eq!(burnside_dimension(&rep).unwrap(), 9);
        let red = build_representation(&raw_q1(&[1, -1, 1])).unwrap();
        let c = commutant(&red).unwrap();
        assert!(c.dimension >= 2);
        for b in &c.basis {
            assert_eq!(b * &red.sigma1, &red.sigma1 * b);
            assert_eq!(b * &red.sigma2, &red.sigma2 * b);
        }
        assert_eq!(analyze(&red).unwrap().verdict, Verdict::OperatorReducible);
    }

    #[test]
    fn specialization_matches_elimination() {
        for n in 1..=2 {
            let rep = build_representation(&RepSpec::unit(n, &QContext::symbolic())).unwrap();
            assert_eq!(commutant(&rep).unwrap(), commutant_by_elimination(&rep).unwrap());
            assert_eq!(
                burnside_dimension(&rep).unwrap(),
                algebra_dimension(&[&rep.sigma1, &rep.sigma2]).unwrap()
            );
        }
    }

    #[test]
    fn d0_expansions() {
        let d3 = d0_nu_coefficients(3).unwrap();
        let expect: BTreeMap<Vec<usize>, BigInt> = [(vec![], 1), (vec![1], 2), (vec![2], 2), (vec![1, 2], 1)]
            .into_iter()
            .map(|(k, v)| (k, v.into()))
            .collect();
        assert_eq!(d3, expect);
        let l = ints(&[1, 2, 2, 1]);
        assert!(matches!(d0_starred(3, &l), Err(Error::ConstraintViolated(_))));
        let l = vec![
            Scalar::from_int(1, Q),
            Scalar::from_int(2, Q),
            Scalar::from_ratio(1, 2, Q),
            Scalar::from_int(1, Q),
        ];
        assert!(d0_starred_check(3, &l).unwrap().pass);
    }

    #[test]
    fn eigenvectors_and_fixed_vectors() {
        let (e0, _) = eigenvector_closed_forms(&Scalar::from_int(2, Q), 3).unwrap();
        assert_eq!(e0, ints(&[-1, 1, -1, 1]));
        assert_eq!(
            eigenvector_closed_forms(&Scalar::one(Q), 2),
            Err(Error::AlphaDegenerate)
        );
        let rep = build_representation(&raw_q1(&[1, -1, 1])).unwrap();
        assert!(fixed_vector_check(&rep, &ints(&[2, 1, 2])).unwrap().pass);
    }

    #[test]
    fn roots_of_unity() {
        for (n, s) in [(2, 2), (3, 3), (4, 4)] {
            assert!(root_of_unity_reducibility(n, s).unwrap().invariant);
        }
        assert_eq!(
            root_of_unity_reducibility(3, 2).map(|w| w.invariant),
            Err(Error::NotAReduciblePoint)
        );
    }

    #[test]
    fn n1_counterexample() {
        let z6 = FieldContext::cyclotomic(6);
        let r = n1_subspace_test(&Scalar::one(z6), &Scalar::zeta(6, 1, z6).unwrap()).unwrap();
        assert!(r.reducible && r.consistent && r.burnside_dim < 4);
        let r = n1_subspace_test(&Scalar::one(Q), &Scalar::from_int(2, Q)).unwrap();
        assert!(!r.reducible && r.consistent);
    }

    #[test]
    fn intertwiners() {
        let a = build_representation(&RepSpec::unit(2, &QContext::rational(1, 1).unwrap())).unwrap();
        let b = build_representation(&RepSpec::unit(2, &QContext::rational(2, 1).unwrap())).unwrap();
        assert_eq!(intertwiner_space(&a, &b).unwrap().dimension, 0);
        let same = intertwiner_space(&a, &a).unwrap();
        assert!(same.dimension >= 1 && same.invertible.is_some());
    }
}
