//! Property tests for exact matrices.

use proptest::prelude::*;
use qbraid::linalg::{generalized_charpoly, generalized_charpoly_expansion};
use qbraid::{ExactMatrix, FieldContext, IndexSubset, Scalar};

const Q: FieldContext = FieldContext::RATIONAL;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = ExactMatrix> {
    prop::collection::vec((-6i64..=6, 1i64..=3), rows * cols).prop_map(move |v| {
        let data = v.into_iter().map(|(n, d)| Scalar::from_ratio(n, d, Q)).collect();
        ExactMatrix::new(rows, cols, Q, data).unwrap()
    })
}

fn invertible(n: usize) -> impl Strategy<Value = ExactMatrix> {
    matrix(n, n).prop_filter("invertible", |m| !m.determinant().unwrap().is_zero())
}

/// Leibniz determinant over all permutations.
fn leibniz(m: &ExactMatrix) -> Scalar {
    fn perms(k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(k - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, k - 1);
                out.push(q);
            }
        }
        out
    }
    let n = m.rows();
    let mut total = Scalar::zero(Q);
    for p in perms(n) {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        let mut term = Scalar::from_int(if inversions % 2 == 0 { 1 } else { -1 }, Q);
        for (i, &j) in p.iter().enumerate() {
            term = &term * m.get(i, j);
        }
        total = &total + &term;
    }
    total
}

proptest! {
    #[test]
    fn inverse_laws(a in invertible(3), b in invertible(3)) {
        let id = ExactMatrix::identity(3, Q);
        prop_assert_eq!(&a * &a.inverse().unwrap(), id.clone());
        prop_assert_eq!(a.inverse().unwrap().inverse().unwrap(), a.clone());
        prop_assert_eq!((&a * &b).inverse().unwrap(), &b.inverse().unwrap() * &a.inverse().unwrap());
    }

    #[test]
    fn singular_matrix_has_no_inverse(a in matrix(3, 2)) {
        let sq = &a * &a.transpose_t().submatrix(&[0, 1], &[0, 1, 2]);
        prop_assert_eq!(sq.inverse(), Err(qbraid::Error::Singular));
    }

    #[test]
    fn involutions(a in matrix(4, 4)) {
        prop_assert_eq!(a.transpose_t().transpose_s().unwrap(), a.sharp().unwrap());
        prop_assert_eq!(a.transpose_s().unwrap().transpose_t(), a.sharp().unwrap());
        prop_assert_eq!(a.sharp().unwrap().sharp().unwrap(), a.clone());
        prop_assert_eq!(a.transpose_s().unwrap().transpose_s().unwrap(), a.clone());
        let n = a.rows() - 1;
        let (sharp, s) = (a.sharp().unwrap(), a.transpose_s().unwrap());
        for i in 0..=n {
            for j in 0..=n {
                prop_assert_eq!(sharp.get(i, j), a.get(n - i, n - j));
                prop_assert_eq!(s.get(i, j), a.get(n - j, n - i));
            }
        }
    }

    #[test]
    fn determinant_matches_leibniz_and_laplace(a in matrix(4, 4), b in matrix(4, 4)) {
        let det = a.determinant().unwrap();
        prop_assert_eq!(&det, &leibniz(&a));
        let row0 = IndexSubset::new(vec![0], 4).unwrap();
        let laplace = (0..4).fold(Scalar::zero(Q), |acc, j| {
            let cof = a.cofactor(&row0, &IndexSubset::new(vec![j], 4).unwrap()).unwrap();
            &acc + &(a.get(0, j) * &cof)
        });
        prop_assert_eq!(&det, &laplace);
        prop_assert_eq!((&a * &b).determinant().unwrap(), &det * &b.determinant().unwrap());
    }

    #[test]
    fn nullspace_and_rank(a in matrix(3, 5)) {
        let null = a.nullspace();
        for v in &null {
            prop_assert!(a.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
        }
        prop_assert_eq!(a.rank() + null.len(), a.cols());
        if !null.is_empty() {
            prop_assert_eq!(ExactMatrix::from_rows(Q, null.clone()).unwrap().rank(), null.len());
        }
    }

    #[test]
    fn generalized_charpoly_agrees(c in matrix(4, 4), l in prop::collection::vec(-5i64..=5, 4)) {
        let lambda: Vec<Scalar> = l.iter().map(|&x| Scalar::from_int(x, Q)).collect();
        let direct = generalized_charpoly(&c, &lambda).unwrap();
        prop_assert_eq!(&direct, &generalized_charpoly_expansion(&c, &lambda).unwrap());
        let shifted = &c + &ExactMatrix::diag(Q, &lambda);
        prop_assert_eq!(direct, leibniz(&shifted));
    }
}

#[test]
fn formatting_modes() {
    let m = ExactMatrix::parse_rows(Q, &[&["1", "-1/2"], &["10", "0"]]).unwrap();
    assert_eq!(m.pretty(), " 1 -1/2\n10    0");
    assert_eq!(m.latex(), "1 & -1/2 \\\\\n10 & 0");
}
