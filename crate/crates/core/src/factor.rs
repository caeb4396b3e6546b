//! The linear isomorphism `F: U(g_R) → U(g)` of an r-matrix post-Lie algebra,
//! the `*`-product expressed through it, and the two exponential
//! factorizations for involutive `R`.
//!
//! Elements of `U(g_R)` are words of Lie elements, or PBW elements of the
//! bar engine of [`PhiMap`], whose bracket is `[x,y]_R = ⟦x,y⟧`.

use std::sync::Arc;

use crate::algebra::{
    check_mcybe, post_lie_from_r, r_plus_minus, GVector, LieAlgebra, LinearEndo, PostLieAlgebra,
    Report,
};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::lift::Lifted;
use crate::magnus::{chi_series_with, MagnusSeries, VectorSeries};
use crate::partition::PhiMap;
use crate::scalar;
use crate::uea::{Enveloping, Monomial, Series, TensorElement, UeaElement};

/// A Lie algebra with an r-matrix solving the modified Yang–Baxter equation
/// at `θ = 1`, and everything derived from it.
pub struct RMatrixSetting {
    r: LinearEndo,
    r_plus: LinearEndo,
    r_minus: LinearEndo,
    phi: PhiMap,
}

impl RMatrixSetting {
    pub fn new(lie: Arc<LieAlgebra>, r: LinearEndo, trunc: usize) -> Result<Self> {
        Self::with_exec(lie, r, trunc, Exec::default())
    }

    pub fn with_exec(
        lie: Arc<LieAlgebra>,
        r: LinearEndo,
        trunc: usize,
        exec: Exec,
    ) -> Result<Self> {
        let report = check_mcybe(&lie, &r, &scalar::one());
        if let Some(f) = report.failures.first() {
            return Err(Error::Precondition(format!(
                "R fails {} at basis {:?}",
                f.identity, f.basis
            )));
        }
        let product = post_lie_from_r(&lie, &r)?;
        let lifted = Lifted::new(PostLieAlgebra::new(lie, product)?, trunc);
        let (r_plus, r_minus) = r_plus_minus(&r);
        Ok(RMatrixSetting {
            r,
            r_plus,
            r_minus,
            phi: PhiMap::with_exec(Arc::new(lifted), exec),
        })
    }

    pub fn lie(&self) -> &Arc<LieAlgebra> {
        self.lifted().algebra().lie()
    }

    pub fn r(&self) -> &LinearEndo {
        &self.r
    }

    pub fn r_plus(&self) -> &LinearEndo {
        &self.r_plus
    }

    pub fn r_minus(&self) -> &LinearEndo {
        &self.r_minus
    }

    pub fn lifted(&self) -> &Lifted {
        self.phi.lifted()
    }

    pub fn env(&self) -> &Enveloping {
        self.lifted().env()
    }

    /// The PBW engine of `U(g_R)`.
    pub fn bar(&self) -> &Enveloping {
        self.phi.bar()
    }

    pub fn phi(&self) -> &PhiMap {
        &self.phi
    }

    pub fn exec(&self) -> Exec {
        self.phi.exec()
    }

    fn require_involutive(&self) -> Result<()> {
        if self.r.is_involutive() {
            Ok(())
        } else {
            Err(Error::NotInvolutive)
        }
    }

    /// `F(x₁.⋯.x_k) = Σ_{I⊔J} R₊(x_I) S(R₋(x_J))`, summed over the unshuffles
    /// of the word.
    pub fn f_word(&self, word: &[GVector]) -> Result<UeaElement> {
        let env = self.env();
        let k = word.len();
        if k > env.trunc() {
            return Err(Error::TruncationExceeded {
                trunc: env.trunc(),
                needed: k,
            });
        }
        let plus: Vec<GVector> = word
            .iter()
            .map(|x| self.r_plus.apply(x))
            .collect::<Result<_>>()?;
        let minus: Vec<GVector> = word
            .iter()
            .map(|x| self.r_minus.apply(x))
            .collect::<Result<_>>()?;
        let mut out = env.zero();
        for mask in 0u32..1 << k {
            let mut factors: Vec<GVector> = (0..k)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| plus[i].clone())
                .collect();
            let rest: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 0).collect();
            factors.extend(rest.iter().rev().map(|&j| minus[j].clone()));
            let sign = if rest.len().is_multiple_of(2) {
                scalar::one()
            } else {
                -scalar::one()
            };
            out.add_scaled(&env.product_of_vectors(&factors)?, &sign);
        }
        Ok(out)
    }

    /// `F` on a PBW element of `U(g_R)`.
    pub fn f_element(&self, a: &UeaElement) -> Result<UeaElement> {
        let d = self.lie().dim();
        let mut out = self.env().zero();
        for (m, c) in a.terms() {
            let word: Vec<GVector> = m.indices().map(|i| GVector::basis(d, i)).collect();
            out.add_scaled(&self.f_word(&word)?, c);
        }
        Ok(out)
    }

    /// `F⁻¹`, which coincides with `φ⁻¹`.
    pub fn f_inverse(&self, a: &UeaElement) -> Result<UeaElement> {
        self.phi.phi_inverse(a)
    }

    /// The algebra morphism `U(g_R) → U(g)` induced by `R₊` or `R₋` on a
    /// monomial.
    fn morph(&self, endo: &LinearEndo, m: &Monomial) -> Result<UeaElement> {
        let d = self.lie().dim();
        let letters: Vec<GVector> = m
            .indices()
            .map(|i| endo.apply(&GVector::basis(d, i)))
            .collect::<Result<_>>()?;
        self.env().product_of_vectors(&letters)
    }

    /// `A = R₊(A′₍₁₎) S(R₋(A′₍₂₎))` with `A′ = F⁻¹(A)`, as a sum of
    /// `left ⊗ right` pairs.
    pub fn decompose(&self, a: &UeaElement) -> Result<TensorElement> {
        let a_bar = self.f_inverse(a)?;
        let coproduct = self.bar().coproduct(&a_bar);
        let mut out = TensorElement::zero(a.trunc());
        for ((l, r), c) in coproduct.terms() {
            let left = self.morph(&self.r_plus, l)?;
            let right = self.env().antipode(&self.morph(&self.r_minus, r)?);
            out.add_scaled(&TensorElement::outer(&left, &right), c);
        }
        Ok(out)
    }

    /// `Σ left · right` of a decomposition.
    pub fn recompose(&self, t: &TensorElement) -> UeaElement {
        self.env().multiply_tensor(t)
    }

    /// `A * B = R₊(A′₍₁₎) B S(R₋(A′₍₂₎))`.
    pub fn star_via_f(&self, a: &UeaElement, b: &UeaElement) -> Result<UeaElement> {
        let env = self.env();
        let mut out = env.zero();
        for ((l, r), c) in self.decompose(a)?.terms() {
            let left = UeaElement::monomial(l.clone(), c.clone(), env.trunc());
            let right = UeaElement::monomial(r.clone(), scalar::one(), env.trunc());
            out = &out + &env.mul_all([&left, b, &right])?;
        }
        Ok(out)
    }

    /// `A * B = F(F⁻¹A · F⁻¹B)` with the product of `U(g_R)`.
    pub fn star_push(&self, a: &UeaElement, b: &UeaElement) -> Result<UeaElement> {
        let p = self.bar().mul(&self.f_inverse(a)?, &self.f_inverse(b)?)?;
        self.f_element(&p)
    }

    /// `(F⊗F)Δ_R(w)` and `Δ(F(w))` for a word `w`.
    pub fn coproduct_sides(&self, word: &[GVector]) -> Result<(TensorElement, TensorElement)> {
        let k = word.len();
        let trunc = self.env().trunc();
        let mut lhs = TensorElement::zero(trunc);
        for mask in 0u32..1 << k {
            let l: Vec<GVector> = (0..k)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| word[i].clone())
                .collect();
            let r: Vec<GVector> = (0..k)
                .filter(|i| mask >> i & 1 == 0)
                .map(|i| word[i].clone())
                .collect();
            lhs.add_scaled(
                &TensorElement::outer(&self.f_word(&l)?, &self.f_word(&r)?),
                &scalar::one(),
            );
        }
        let rhs = self.env().coproduct(&self.f_word(word)?);
        Ok((lhs, rhs))
    }

    /// `F(S_R(w))` and `S*(F(w))` for a word `w`.
    pub fn antipode_sides(&self, word: &[GVector]) -> Result<(UeaElement, UeaElement)> {
        let rev: Vec<GVector> = word.iter().rev().cloned().collect();
        let sign = if word.len().is_multiple_of(2) {
            scalar::one()
        } else {
            -scalar::one()
        };
        let lhs = self.f_word(&rev)?.scale(&sign);
        let rhs = self.lifted().star_antipode(&self.f_word(word)?);
        Ok((lhs, rhs))
    }

    /// `F(w) − x₁⋯x_k`, which has degree below `k`.
    pub fn f_lower_part(&self, word: &[GVector]) -> Result<UeaElement> {
        Ok(&self.f_word(word)? - &self.env().product_of_vectors(word)?)
    }

    /// `(exp(t x₊), exp(−t x₋))` with `x± = R± x`, whose product is `exp*(t x)`.
    pub fn grouplike_factorize_star(&self, x: &GVector, order: usize) -> Result<(Series, Series)> {
        self.require_involutive()?;
        let env = self.env();
        let plus = env.vector(&self.r_plus.apply(x)?)?;
        let minus = env.vector(&self.r_minus.apply(x)?)?.scale(&-scalar::one());
        Ok((
            env.exp_series(&Series::monomial(plus, 1, order))?,
            env.exp_series(&Series::monomial(minus, 1, order))?,
        ))
    }

    /// `exp*(t x)` as a series.
    pub fn exp_star(&self, x: &GVector, order: usize) -> Result<Series> {
        let lifted = self.lifted();
        Series::monomial(self.env().vector(x)?, 1, order).exp_with(|a, b| lifted.star(a, b))
    }

    /// `exp(t x)` as a series.
    pub fn exp(&self, x: &GVector, order: usize) -> Result<Series> {
        let env = self.env();
        env.exp_series(&Series::monomial(env.vector(x)?, 1, order))
    }

    /// Product of two series in `U(g)`.
    pub fn series_mul(&self, a: &Series, b: &Series) -> Result<Series> {
        let env = self.env();
        a.mul_with(b, |u, v| env.mul(u, v))
    }

    pub fn chi(&self, x: &GVector, order: usize) -> Result<MagnusSeries> {
        chi_series_with(self.lifted(), x, order, self.exec())
    }

    /// `(χ₊, χ₋) = (R₊χ, R₋χ)` as graded vector series, so that
    /// `exp(tx) = exp(χ₊) exp(−χ₋)`.
    pub fn exp_factorize(&self, x: &GVector, order: usize) -> Result<(VectorSeries, VectorSeries)> {
        self.require_involutive()?;
        let chi = self.chi(x, order)?.to_vector_series();
        let plus = chi.iter().map(|c| self.r_plus.apply_raw(c)).collect();
        let minus = chi.iter().map(|c| self.r_minus.apply_raw(c)).collect();
        Ok((plus, minus))
    }

    /// `exp(Σ vₙ tⁿ)` in `U(g)`.
    pub fn exp_vector_series(&self, v: &[GVector], order: usize) -> Result<Series> {
        let env = self.env();
        let mut s = Series::zero(order, env.trunc());
        for (n, c) in v.iter().enumerate().take(order + 1) {
            s.set_coeff(n, env.vector(c)?);
        }
        env.exp_series(&s)
    }

    /// Recovers `(χ₊, χ₋)` from the factors alone: with `L± = ±log(g±)`,
    /// the projections `R±(L₊ − L₋)` must return `L±`.
    pub fn uniqueness_check(&self, g_plus: &Series, g_minus: &Series) -> Result<Report> {
        self.require_involutive()?;
        let env = self.env();
        let d = self.lie().dim();
        let l_plus = env.log_trunc(g_plus)?;
        let l_minus = env.log_trunc(g_minus)?.scale(&-scalar::one());
        let mut report = Report::default();
        for n in 0..=l_plus.order().min(l_minus.order()) {
            let (p, m) = match (l_plus.coeff(n).to_vector(d), l_minus.coeff(n).to_vector(d)) {
                (Some(p), Some(m)) => (p, m),
                _ if l_plus.coeff(n).is_zero() && l_minus.coeff(n).is_zero() => continue,
                _ => {
                    report.record("log-primitive", &[n], false);
                    continue;
                }
            };
            let chi = &p - &m;
            report.record("plus-projection", &[n], self.r_plus.apply_raw(&chi) == p);
            report.record("minus-projection", &[n], self.r_minus.apply_raw(&chi) == m);
        }
        Ok(report)
    }
}

/// Equal up to the smaller order.
pub fn series_agree(a: &Series, b: &Series) -> bool {
    let n = a.order().min(b.order());
    (0..=n).all(|k| a.coeff(k) == b.coeff(k))
}
