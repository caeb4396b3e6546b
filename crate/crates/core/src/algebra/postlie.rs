use std::sync::Arc;

use super::{GVector, LieAlgebra, Report};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Explicit,
    DerivedFromR,
}

/// A bilinear product `e_i ▷ e_j = Σ_k t[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PostLieProduct {
    dim: usize,
    table: Vec<GVector>,
    sparse: Vec<Vec<(u16, Scalar)>>,
    provenance: Provenance,
}

impl PostLieProduct {
    /// `table[i * dim + j]` holds `e_i ▷ e_j`.
    pub fn new(dim: usize, table: Vec<GVector>, provenance: Provenance) -> Result<Self> {
        if table.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: table.len(),
            });
        }
        for v in &table {
            v.check_dim(dim)?;
        }
        let sparse = table
            .iter()
            .map(|v| v.support().map(|(k, c)| (k as u16, c.clone())).collect())
            .collect();
        Ok(PostLieProduct {
            dim,
            table,
            sparse,
            provenance,
        })
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(
            dim,
            vec![GVector::zero(dim); dim * dim],
            Provenance::Explicit,
        )
        .expect("shapes")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn basis(&self, i: usize, j: usize) -> &GVector {
        &self.table[i * self.dim + j]
    }

    pub(crate) fn basis_sparse(&self, i: usize, j: usize) -> &[(u16, Scalar)] {
        &self.sparse[i * self.dim + j]
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(GVector::is_zero)
    }

    pub fn apply(&self, x: &GVector, y: &GVector) -> Result<GVector> {
        x.check_dim(self.dim)?;
        y.check_dim(self.dim)?;
        Ok(self.apply_raw(x, y))
    }

    pub(crate) fn apply_raw(&self, x: &GVector, y: &GVector) -> GVector {
        let mut out = GVector::zero(self.dim);
        for (i, xi) in x.support() {
            for (j, yj) in y.support() {
                let c = xi * yj;
                for (k, ck) in self.basis_sparse(i, j) {
                    out.0[*k as usize] += ck * &c;
                }
            }
        }
        out
    }
}

fn associator(p: &PostLieProduct, x: &GVector, y: &GVector, z: &GVector) -> GVector {
    p.apply_raw(x, &p.apply_raw(y, z)) - p.apply_raw(&p.apply_raw(x, y), z)
}

/// Exhaustive check of both post-Lie axioms on all basis triples, and of the
/// Jacobi identity for `⟦x,y⟧ = x▷y − y▷x + [x,y]`.
pub fn validate_post_lie(lie: &LieAlgebra, p: &PostLieProduct) -> Report {
    let d = lie.dim();
    let mut report = Report::default();
    if p.dim() != d {
        report.record("dimension", &[d, p.dim()], false);
        return report;
    }
    let e: Vec<GVector> = (0..d).map(|i| lie.basis(i)).collect();
    let bar = |x: &GVector, y: &GVector| -> GVector {
        &(&p.apply_raw(x, y) - &p.apply_raw(y, x)) + &lie.bracket_raw(x, y)
    };
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let (x, y, z) = (&e[i], &e[j], &e[k]);
                // x ▷ [y,z] = [x▷y, z] + [y, x▷z]
                let lhs = p.apply_raw(x, &lie.bracket_raw(y, z));
                let rhs = &lie.bracket_raw(&p.apply_raw(x, y), z)
                    + &lie.bracket_raw(y, &p.apply_raw(x, z));
                report.record("postLie1", &[i, j, k], lhs == rhs);
                // [x,y] ▷ z = a(x,y,z) − a(y,x,z)
                let lhs = p.apply_raw(&lie.bracket_raw(x, y), z);
                let rhs = &associator(p, x, y, z) - &associator(p, y, x, z);
                report.record("postLie2", &[i, j, k], lhs == rhs);
                let mut jac = bar(&bar(x, y), z);
                jac += &bar(&bar(y, z), x);
                jac += &bar(&bar(z, x), y);
                report.record("jacobi(⟦·,·⟧)", &[i, j, k], jac.is_zero());
            }
        }
    }
    report
}

/// A Lie algebra together with a validated post-Lie product.
#[derive(Clone, Debug)]
pub struct PostLieAlgebra {
    lie: Arc<LieAlgebra>,
    product: PostLieProduct,
}

impl PostLieAlgebra {
    pub fn new(lie: Arc<LieAlgebra>, product: PostLieProduct) -> Result<Self> {
        if let Some(f) = lie.axiom_report().failures.first() {
            return Err(Error::InvalidLieAlgebra(format!(
                "{} fails on basis {:?}",
                f.identity, f.basis
            )));
        }
        if let Some(f) = validate_post_lie(&lie, &product).failures.first() {
            return Err(Error::Precondition(format!(
                "post-Lie axiom {} fails on basis {:?}",
                f.identity, f.basis
            )));
        }
        Ok(PostLieAlgebra { lie, product })
    }

    /// The trivial post-Lie structure `▷ = 0`.
    pub fn trivial(lie: Arc<LieAlgebra>) -> Result<Self> {
        let p = PostLieProduct::zero(lie.dim());
        Self::new(lie, p)
    }

    pub fn lie(&self) -> &Arc<LieAlgebra> {
        &self.lie
    }

    pub fn product(&self) -> &PostLieProduct {
        &self.product
    }

    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    pub fn triangle(&self, x: &GVector, y: &GVector) -> Result<GVector> {
        self.product.apply(x, y)
    }

    /// `⟦x,y⟧ = x▷y − y▷x + [x,y]`
    pub fn bar_bracket(&self, x: &GVector, y: &GVector) -> Result<GVector> {
        let p = &self.product;
        Ok(&(&p.apply(x, y)? - &p.apply_raw(y, x)) + &self.lie.bracket_raw(x, y))
    }

    /// The Lie algebra `ḡ = (V, ⟦·,·⟧)` on the same basis.
    pub fn bar_algebra(&self) -> LieAlgebra {
        let d = self.dim();
        let rows = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        &(self.product.basis(i, j) - self.product.basis(j, i))
                            + self.lie.bracket_basis(i, j)
                    })
                    .collect()
            })
            .collect();
        LieAlgebra::new_unchecked(self.lie.labels().to_vec(), rows)
            .expect("same shapes as the underlying algebra")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{gl, pre_lie_vector_fields, sl};

    #[test]
    fn zero_product_is_post_lie() {
        for g in [gl(2), sl(2), sl(3)] {
            let p = PostLieProduct::zero(g.dim());
            assert!(validate_post_lie(&g, &p).passed());
        }
    }

    #[test]
    fn pre_lie_on_abelian_algebra() {
        let pl = pre_lie_vector_fields(4);
        assert!(pl.lie().is_abelian());
        // with [.,.] = 0 the second axiom is the left pre-Lie identity
        let p = pl.product();
        let e: Vec<GVector> = (0..4).map(|i| pl.lie().basis(i)).collect();
        for x in &e {
            for y in &e {
                for z in &e {
                    assert_eq!(associator(p, x, y, z), associator(p, y, x, z));
                }
            }
        }
        assert!(pl.bar_algebra().axiom_report().passed());
    }

    #[test]
    fn non_derivation_product_is_rejected() {
        // e_i ▷ e_j = e_j on sl(2) is not a derivation of the bracket
        let g = sl(2);
        let table = (0..9).map(|a| GVector::basis(3, a % 3)).collect();
        let p = PostLieProduct::new(3, table, Provenance::Explicit).unwrap();
        let report = validate_post_lie(&g, &p);
        assert!(!report.passed());
        assert!(report.failures.iter().any(|f| f.identity == "postLie1"));
    }
}
