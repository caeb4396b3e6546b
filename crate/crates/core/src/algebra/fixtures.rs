//! Reproducible fixtures: `gl(n)`, `sl(n)` with their triangular-splitting
//! r-matrices, and a small pre-Lie algebra of polynomial vector fields.

use std::sync::Arc;

use num_traits::Zero;

use super::{GVector, LieAlgebra, LinearEndo, PostLieAlgebra, PostLieProduct, Provenance};
use crate::scalar::{self, Scalar};

fn unit(n: usize, i: usize, j: usize) -> Vec<Vec<Scalar>> {
    let mut m = vec![vec![Scalar::zero(); n]; n];
    m[i][j] = scalar::one();
    m
}

fn entry_label(i: usize, j: usize, n: usize) -> String {
    if n <= 9 {
        format!("E{}{}", i + 1, j + 1)
    } else {
        format!("E{},{}", i + 1, j + 1)
    }
}

/// `gl(n)` in the row-major basis `E11, E12, …, Enn`.
pub fn gl(n: usize) -> LieAlgebra {
    assert!(n >= 1, "gl(n) needs n >= 1");
    let d = n * n;
    let mut rows = vec![vec![GVector::zero(d); d]; d];
    // [E_ij, E_kl] = δ_jk E_il − δ_li E_kj
    for (a, row) in rows.iter_mut().enumerate() {
        let (i, j) = (a / n, a % n);
        for (b, v) in row.iter_mut().enumerate() {
            let (k, l) = (b / n, b % n);
            if j == k {
                v.0[i * n + l] += scalar::one();
            }
            if l == i {
                v.0[k * n + j] -= scalar::one();
            }
        }
    }
    let labels = (0..d).map(|a| entry_label(a / n, a % n, n)).collect();
    LieAlgebra::new_unchecked(labels, rows).expect("gl(n) shapes")
}

/// `R = π₊ − π₋` on `gl(n)`: `+1` on the upper triangle including the
/// diagonal, `−1` on the strictly lower triangle.
pub fn gl_triangular(n: usize) -> LinearEndo {
    let diag: Vec<Scalar> = (0..n * n)
        .map(|a| {
            if a / n <= a % n {
                scalar::one()
            } else {
                -scalar::one()
            }
        })
        .collect();
    LinearEndo::diagonal(&diag)
}

/// Basis of `sl(n)`: Cartan elements `H_i = E_ii − E_{i+1,i+1}`, then the
/// strictly upper `E_ij`, then the strictly lower ones (row-major within each
/// group). For `n = 2` the labels are `h, e, f`.
fn sl_basis(n: usize) -> (Vec<String>, Vec<Vec<Vec<Scalar>>>, Vec<bool>) {
    let mut labels = Vec::new();
    let mut mats = Vec::new();
    let mut upper = Vec::new();
    for i in 0..n - 1 {
        let mut m = unit(n, i, i);
        m[i + 1][i + 1] = -scalar::one();
        labels.push(format!("H{}", i + 1));
        mats.push(m);
        upper.push(true);
    }
    for (is_upper, pred) in [(true, true), (false, false)] {
        for i in 0..n {
            for j in 0..n {
                if i != j && (i < j) == pred {
                    labels.push(entry_label(i, j, n));
                    mats.push(unit(n, i, j));
                    upper.push(is_upper);
                }
            }
        }
    }
    if n == 2 {
        labels = vec!["h".into(), "e".into(), "f".into()];
    }
    (labels, mats, upper)
}

pub fn sl(n: usize) -> LieAlgebra {
    assert!(n >= 2, "sl(n) needs n >= 2");
    let (labels, mats, _) = sl_basis(n);
    LieAlgebra::from_matrix_basis(labels, &mats).expect("sl(n) is a Lie algebra")
}

/// Triangular-splitting r-matrix on [`sl`]`(n)`.
pub fn sl_triangular(n: usize) -> LinearEndo {
    let (_, _, upper) = sl_basis(n);
    let diag: Vec<Scalar> = upper
        .into_iter()
        .map(|u| if u { scalar::one() } else { -scalar::one() })
        .collect();
    LinearEndo::diagonal(&diag)
}

/// Abelian Lie algebra on `a1 … an` (think `x^i ∂`) with the left pre-Lie
/// product `a_i ▷ a_j = j a_{i+j−1}`, truncated above degree `n`.
pub fn pre_lie_vector_fields(n: usize) -> PostLieAlgebra {
    let labels: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
    let lie = Arc::new(LieAlgebra::abelian(labels));
    let mut table = vec![GVector::zero(n); n * n];
    for i in 1..=n {
        for j in 1..=n {
            let k = i + j - 1;
            if k <= n {
                table[(i - 1) * n + (j - 1)].0[k - 1] = scalar::int(j as i64);
            }
        }
    }
    let product = PostLieProduct::new(n, table, Provenance::Explicit).expect("shapes");
    PostLieAlgebra::new(lie, product).expect("vector-field product is pre-Lie")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_satisfy_lie_axioms() {
        for g in [gl(1), gl(2), gl(3), sl(2), sl(3)] {
            assert!(g.axiom_report().passed(), "{:?}", g.labels());
        }
    }

    #[test]
    fn sl3_layout() {
        let g = sl(3);
        assert_eq!(g.dim(), 8);
        assert_eq!(&g.labels()[..3], ["H1", "H2", "E12"]);
        let r = sl_triangular(3);
        assert!(r.is_involutive());
        // H1, H2, E12, E13, E23 upper; E21, E31, E32 lower
        let signs: Vec<i64> = (0..8)
            .map(|i| {
                if r.rows()[i][i] == scalar::one() {
                    1
                } else {
                    -1
                }
            })
            .collect();
        assert_eq!(signs, [1, 1, 1, 1, 1, -1, -1, -1]);
    }
}
