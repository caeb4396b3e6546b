//! Finite-dimensional Lie algebras, linear endomorphisms and post-Lie products.
//!
//! Every structure here is given by exact structure constants with respect to a
//! fixed ordered basis. Axioms are validated exhaustively over basis tuples.

mod file;
mod fixtures;
mod postlie;
mod rmatrix;

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

pub use file::{AlgebraConfig, AlgebraFile};
pub use fixtures::{gl, gl_triangular, pre_lie_vector_fields, sl, sl_triangular};
pub use postlie::{validate_post_lie, PostLieAlgebra, PostLieProduct, Provenance};
pub use rmatrix::{
    check_mcybe, double_bracket, post_lie_from_r, r_plus_minus, right_product, McybeReport,
};

/// An element of the Lie algebra in coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GVector(Vec<Scalar>);

impl GVector {
    pub fn new(coords: Vec<Scalar>) -> Self {
        GVector(coords)
    }

    pub fn zero(dim: usize) -> Self {
        GVector(vec![Scalar::zero(); dim])
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = scalar::one();
        v
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        GVector(coords.iter().map(|&c| scalar::int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> GVector {
        GVector(self.0.iter().map(|x| x * c).collect())
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &GVector, c: &Scalar) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if !b.is_zero() {
                *a += b * c;
            }
        }
    }

    /// Nonzero coordinates as `(index, coefficient)`.
    pub fn support(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.0.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(scalar::to_f64).collect()
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: self.dim(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for GVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(scalar::format).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl Add for &GVector {
    type Output = GVector;
    fn add(self, rhs: &GVector) -> GVector {
        GVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &GVector {
    type Output = GVector;
    fn sub(self, rhs: &GVector) -> GVector {
        GVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Add for GVector {
    type Output = GVector;
    fn add(self, rhs: GVector) -> GVector {
        &self + &rhs
    }
}

impl Sub for GVector {
    type Output = GVector;
    fn sub(self, rhs: GVector) -> GVector {
        &self - &rhs
    }
}

impl Neg for &GVector {
    type Output = GVector;
    fn neg(self) -> GVector {
        GVector(self.0.iter().map(|a| -a).collect())
    }
}

impl Neg for GVector {
    type Output = GVector;
    fn neg(self) -> GVector {
        -&self
    }
}

impl AddAssign<&GVector> for GVector {
    fn add_assign(&mut self, rhs: &GVector) {
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }
}

impl SubAssign<&GVector> for GVector {
    fn sub_assign(&mut self, rhs: &GVector) {
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a -= b;
        }
    }
}

/// One violated identity together with the basis tuple that exhibits it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub identity: String,
    pub basis: Vec<usize>,
}

/// Outcome of an exhaustive axiom check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checked: usize,
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn record(&mut self, identity: &str, basis: &[usize], ok: bool) {
        self.checked += 1;
        if !ok {
            self.failures.push(Failure {
                identity: identity.to_string(),
                basis: basis.to_vec(),
            });
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}

/// A Lie algebra given by structure constants: `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    labels: Vec<String>,
    brackets: Vec<GVector>,
    sparse: Vec<Vec<(u16, Scalar)>>,
}

impl LieAlgebra {
    /// Builds and validates (antisymmetry and Jacobi on all basis triples).
    pub fn new(labels: Vec<String>, brackets: Vec<Vec<GVector>>) -> Result<Self> {
        let lie = Self::new_unchecked(labels, brackets)?;
        let report = lie.axiom_report();
        if let Some(f) = report.failures.first() {
            return Err(Error::InvalidLieAlgebra(format!(
                "{} fails on basis {:?}",
                f.identity, f.basis
            )));
        }
        Ok(lie)
    }

    /// Builds without checking the axioms; shapes are still checked.
    pub fn new_unchecked(labels: Vec<String>, brackets: Vec<Vec<GVector>>) -> Result<Self> {
        let dim = labels.len();
        if dim == 0 {
            return Err(Error::InvalidLieAlgebra(
                "dimension must be positive".into(),
            ));
        }
        if dim > u16::MAX as usize {
            return Err(Error::OutOfRange {
                what: "dimension",
                value: dim,
                min: 1,
                max: u16::MAX as usize,
            });
        }
        if brackets.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: brackets.len(),
            });
        }
        let mut flat = Vec::with_capacity(dim * dim);
        for row in brackets {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
            for v in row {
                v.check_dim(dim)?;
                flat.push(v);
            }
        }
        let sparse = flat
            .iter()
            .map(|v| v.support().map(|(k, c)| (k as u16, c.clone())).collect())
            .collect();
        Ok(LieAlgebra {
            labels,
            brackets: flat,
            sparse,
        })
    }

    /// Abelian Lie algebra on the given labels.
    pub fn abelian(labels: Vec<String>) -> Self {
        let d = labels.len();
        let rows = vec![vec![GVector::zero(d); d]; d];
        Self::new_unchecked(labels, rows).expect("shapes are consistent")
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis(&self, i: usize) -> GVector {
        GVector::basis(self.dim(), i)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `[e_i, e_j]`
    pub fn bracket_basis(&self, i: usize, j: usize) -> &GVector {
        &self.brackets[i * self.dim() + j]
    }

    pub(crate) fn bracket_sparse(&self, i: usize, j: usize) -> &[(u16, Scalar)] {
        &self.sparse[i * self.dim() + j]
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.iter().all(GVector::is_zero)
    }

    pub fn bracket(&self, x: &GVector, y: &GVector) -> Result<GVector> {
        x.check_dim(self.dim())?;
        y.check_dim(self.dim())?;
        Ok(self.bracket_raw(x, y))
    }

    pub(crate) fn bracket_raw(&self, x: &GVector, y: &GVector) -> GVector {
        let d = self.dim();
        let mut out = GVector::zero(d);
        for (i, xi) in x.support() {
            for (j, yj) in y.support() {
                let c = xi * yj;
                for (k, ck) in self.bracket_sparse(i, j) {
                    out.0[*k as usize] += ck * &c;
                }
            }
        }
        out
    }

    /// Antisymmetry on all basis pairs, Jacobi on all basis triples.
    pub fn axiom_report(&self) -> Report {
        let d = self.dim();
        let mut report = Report::default();
        for i in 0..d {
            for j in 0..d {
                let ok = (self.bracket_basis(i, j) + self.bracket_basis(j, i)).is_zero();
                report.record("antisymmetry", &[i, j], ok);
            }
        }
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let (x, y, z) = (self.basis(i), self.basis(j), self.basis(k));
                    let mut s = self.bracket_raw(&self.bracket_raw(&x, &y), &z);
                    s += &self.bracket_raw(&self.bracket_raw(&y, &z), &x);
                    s += &self.bracket_raw(&self.bracket_raw(&z, &x), &y);
                    report.record("jacobi", &[i, j, k], s.is_zero());
                }
            }
        }
        report
    }

    /// Lie algebra spanned by the given matrices, with brackets computed as
    /// matrix commutators and re-expanded in the basis.
    pub fn from_matrix_basis(labels: Vec<String>, basis: &[Vec<Vec<Scalar>>]) -> Result<Self> {
        let d = basis.len();
        if labels.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: labels.len(),
            });
        }
        let solver = MatrixCoordinates::new(basis)?;
        let mut rows = Vec::with_capacity(d);
        for a in basis {
            let mut row = Vec::with_capacity(d);
            for b in basis {
                let c = matrix_commutator(a, b);
                row.push(solver.coordinates(&c).ok_or_else(|| {
                    Error::InvalidLieAlgebra("matrix span is not closed under commutators".into())
                })?);
            }
            rows.push(row);
        }
        Self::new(labels, rows)
    }
}

pub(crate) fn matrix_commutator(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let n = a.len();
    let mut out = vec![vec![Scalar::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut s = Scalar::zero();
            for k in 0..n {
                s += &a[i][k] * &b[k][j] - &b[i][k] * &a[k][j];
            }
            out[i][j] = s;
        }
    }
    out
}

/// Exact coordinates of matrices with respect to a linearly independent family.
struct MatrixCoordinates {
    basis: Vec<Vec<Vec<Scalar>>>,
    // flattened entries forming an invertible minor, and the minor's inverse
    entries: Vec<usize>,
    inverse: Vec<Vec<Scalar>>,
}

impl MatrixCoordinates {
    fn new(basis: &[Vec<Vec<Scalar>>]) -> Result<Self> {
        let d = basis.len();
        let n = basis.first().map_or(0, Vec::len);
        let dependent = || Error::InvalidLieAlgebra("matrix basis is linearly dependent".into());
        // Row-reduce the (n*n)×d system column by column; the chosen rows give
        // an invertible d×d minor.
        let mut a: Vec<Vec<Scalar>> = (0..n * n)
            .map(|e| (0..d).map(|k| basis[k][e / n][e % n].clone()).collect())
            .collect();
        let mut used = vec![false; n * n];
        let mut entries = Vec::with_capacity(d);
        for col in 0..d {
            let r = (0..n * n)
                .find(|&r| !used[r] && !a[r][col].is_zero())
                .ok_or_else(dependent)?;
            used[r] = true;
            entries.push(r);
            let pivot = a[r].clone();
            for (rr, row) in a.iter_mut().enumerate() {
                if rr != r && !row[col].is_zero() {
                    let f = &row[col] / &pivot[col];
                    for (x, y) in row.iter_mut().zip(&pivot) {
                        *x -= y * &f;
                    }
                }
            }
        }
        let minor = entries
            .iter()
            .map(|&e| (0..d).map(|k| basis[k][e / n][e % n].clone()).collect())
            .collect();
        let inverse = invert(minor).ok_or_else(dependent)?;
        Ok(MatrixCoordinates {
            basis: basis.to_vec(),
            entries,
            inverse,
        })
    }

    fn coordinates(&self, m: &[Vec<Scalar>]) -> Option<GVector> {
        let n = m.len();
        let d = self.entries.len();
        let rhs: Vec<&Scalar> = self.entries.iter().map(|&e| &m[e / n][e % n]).collect();
        let c = GVector(
            (0..d)
                .map(|i| (0..d).map(|j| &self.inverse[i][j] * rhs[j]).sum())
                .collect(),
        );
        // the remaining entries must agree as well
        for i in 0..n {
            for j in 0..n {
                let v: Scalar = (0..d).map(|k| &c.0[k] * &self.basis[k][i][j]).sum();
                if v != m[i][j] {
                    return None;
                }
            }
        }
        Some(c)
    }
}

fn invert(mut a: Vec<Vec<Scalar>>) -> Option<Vec<Vec<Scalar>>> {
    let n = a.len();
    let mut inv: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        scalar::one()
                    } else {
                        Scalar::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let r = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, r);
        inv.swap(col, r);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &p;
        }
        for x in inv[col].iter_mut() {
            *x /= &p;
        }
        for rr in 0..n {
            if rr != col && !a[rr][col].is_zero() {
                let f = a[rr][col].clone();
                for k in 0..n {
                    let (t, ti) = (a[col][k].clone(), inv[col][k].clone());
                    a[rr][k] -= t * &f;
                    inv[rr][k] -= ti * &f;
                }
            }
        }
    }
    Some(inv)
}

/// A linear self-map of the Lie algebra, acting on coordinate vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearEndo {
    m: Vec<Vec<Scalar>>,
}

impl LinearEndo {
    pub fn new(m: Vec<Vec<Scalar>>) -> Result<Self> {
        let d = m.len();
        if let Some(row) = m.iter().find(|r| r.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: row.len(),
            });
        }
        Ok(LinearEndo { m })
    }

    pub fn identity(d: usize) -> Self {
        Self::diagonal(&vec![scalar::one(); d])
    }

    pub fn zero(d: usize) -> Self {
        LinearEndo {
            m: vec![vec![Scalar::zero(); d]; d],
        }
    }

    pub fn diagonal(diag: &[Scalar]) -> Self {
        let d = diag.len();
        let mut e = Self::zero(d);
        for (i, v) in diag.iter().enumerate() {
            e.m[i][i] = v.clone();
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.m.len()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.m
    }

    pub fn apply(&self, x: &GVector) -> Result<GVector> {
        x.check_dim(self.dim())?;
        Ok(self.apply_raw(x))
    }

    pub(crate) fn apply_raw(&self, x: &GVector) -> GVector {
        GVector(
            self.m
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(&x.0)
                        .filter(|(_, b)| !b.is_zero())
                        .map(|(a, b)| a * b)
                        .sum()
                })
                .collect(),
        )
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &LinearEndo) -> LinearEndo {
        let d = self.dim();
        let mut out = Self::zero(d);
        for i in 0..d {
            for j in 0..d {
                out.m[i][j] = (0..d).map(|k| &self.m[i][k] * &other.m[k][j]).sum();
            }
        }
        out
    }

    pub fn add(&self, other: &LinearEndo) -> LinearEndo {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &LinearEndo) -> LinearEndo {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Scalar) -> LinearEndo {
        LinearEndo {
            m: self
                .m
                .iter()
                .map(|r| r.iter().map(|a| a * c).collect())
                .collect(),
        }
    }

    pub fn is_involutive(&self) -> bool {
        self.compose(self) == Self::identity(self.dim())
    }

    pub fn is_idempotent(&self) -> bool {
        &self.compose(self) == self
    }

    fn zip(&self, other: &LinearEndo, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> LinearEndo {
        LinearEndo {
            m: self
                .m
                .iter()
                .zip(&other.m)
                .map(|(r, s)| r.iter().zip(s).map(|(a, b)| f(a, b)).collect())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    #[test]
    fn gl2_commutator_by_hand() {
        // [E11, E12] = E11 E12 - E12 E11 = E12
        let g = gl(2);
        let e11 = g.basis(g.index_of("E11").unwrap());
        let e12 = g.basis(g.index_of("E12").unwrap());
        assert_eq!(g.bracket(&e11, &e12).unwrap(), e12);
    }

    #[test]
    fn sl2_standard_relations() {
        let g = sl(2);
        let (h, e, f) = (g.basis(0), g.basis(1), g.basis(2));
        assert_eq!(g.labels(), ["h", "e", "f"]);
        assert_eq!(g.bracket(&h, &e).unwrap(), e.scale(&int(2)));
        assert_eq!(g.bracket(&h, &f).unwrap(), f.scale(&int(-2)));
        assert_eq!(g.bracket(&e, &f).unwrap(), h);
    }

    #[test]
    fn bracket_of_a_vector_with_itself_vanishes() {
        let g = gl(3);
        let x = GVector::new((0..9).map(|i| frac(i * i - 3, i + 1)).collect());
        assert!(g.bracket(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn bracket_dimension_mismatch() {
        let g = sl(2);
        let err = g.bracket(&GVector::zero(2), &GVector::zero(3)).unwrap_err();
        assert_eq!(
            err,
            Error::DimensionMismatch {
                expected: 3,
                got: 2
            }
        );
    }

    #[test]
    fn rejects_non_jacobi_brackets() {
        // [a,b] = a, [b,c] = b, [c,a] = c fails Jacobi.
        let labels: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let mut rows = vec![vec![GVector::zero(3); 3]; 3];
        let set = |rows: &mut Vec<Vec<GVector>>, i: usize, j: usize, k: usize| {
            rows[i][j] = GVector::basis(3, k);
            rows[j][i] = -GVector::basis(3, k);
        };
        set(&mut rows, 0, 1, 0);
        set(&mut rows, 1, 2, 1);
        set(&mut rows, 2, 0, 2);
        assert!(matches!(
            LieAlgebra::new(labels, rows),
            Err(Error::InvalidLieAlgebra(_))
        ));
    }

    #[test]
    fn endo_algebra() {
        let r = gl_triangular(2);
        assert!(r.is_involutive());
        let id = LinearEndo::identity(4);
        assert_eq!(r.compose(&id), r);
        assert_eq!(r.add(&id).sub(&id), r);
        assert_eq!(r.scale(&int(0)), LinearEndo::zero(4));
    }
}
