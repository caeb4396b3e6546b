//! The post-Lie product lifted to `U(g)`, and the associative `*`-product
//! `A * B = A₍₁₎ (A₍₂₎ ▷ B)` with its antipode.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};

use crate::algebra::{GVector, PostLieAlgebra};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::uea::{accumulate, cached, collect, Enveloping, Linear, Monomial, UeaElement};

/// `U(g)` with the lifted post-Lie product.
///
/// All operations reduce to memoized computations on PBW monomials.
#[derive(Debug)]
pub struct Lifted {
    algebra: PostLieAlgebra,
    env: Arc<Enveloping>,
    deriv_cache: RwLock<HashMap<(u16, Monomial), Linear>>,
    tri_cache: RwLock<HashMap<(Monomial, Monomial), Linear>>,
    star_cache: RwLock<HashMap<(Monomial, Monomial), Linear>>,
    antipode_cache: RwLock<HashMap<Monomial, Linear>>,
}

impl Lifted {
    pub fn new(algebra: PostLieAlgebra, trunc: usize) -> Self {
        let env = Arc::new(Enveloping::with_trunc(algebra.lie().clone(), trunc));
        Self::with_engine(algebra, env)
    }

    /// Shares an existing engine for the underlying Lie algebra.
    pub fn with_engine(algebra: PostLieAlgebra, env: Arc<Enveloping>) -> Self {
        assert!(
            Arc::ptr_eq(algebra.lie(), env.lie()) || **algebra.lie() == **env.lie(),
            "engine built for a different Lie algebra"
        );
        Lifted {
            algebra,
            env,
            deriv_cache: RwLock::default(),
            tri_cache: RwLock::default(),
            star_cache: RwLock::default(),
            antipode_cache: RwLock::default(),
        }
    }

    pub fn algebra(&self) -> &PostLieAlgebra {
        &self.algebra
    }

    pub fn env(&self) -> &Enveloping {
        &self.env
    }

    pub fn env_arc(&self) -> &Arc<Enveloping> {
        &self.env
    }

    pub fn trunc(&self) -> usize {
        self.env.trunc()
    }

    fn check_trunc(a: &UeaElement, b: &UeaElement) -> Result<()> {
        if a.trunc() != b.trunc() {
            return Err(Error::TruncMismatch {
                left: a.trunc(),
                right: b.trunc(),
            });
        }
        Ok(())
    }

    fn bilinear(
        a: &UeaElement,
        b: &UeaElement,
        f: impl Fn(&Monomial, &Monomial) -> Linear,
    ) -> Result<UeaElement> {
        Self::check_trunc(a, b)?;
        let mut out = UeaElement::zero(a.trunc());
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let c = ca * cb;
                for (p, d) in f(ma, mb).iter() {
                    out.add_term(p.clone(), &c * d);
                }
            }
        }
        Ok(out)
    }

    /// `A ▷ B`, the unique extension with `𝟏▷B = B`, `A▷𝟏 = ε(A)𝟏`,
    /// `xA ▷ B = x▷(A▷B) − (x▷A)▷B` and `A ▷ BC = (A₍₁₎▷B)(A₍₂₎▷C)`.
    pub fn triangle(&self, a: &UeaElement, b: &UeaElement) -> Result<UeaElement> {
        Self::bilinear(a, b, |ma, mb| self.tri_mono(ma, mb))
    }

    /// `d(x)(w) = Σᵢ w₁⋯(x▷wᵢ)⋯wₙ`
    pub fn derivation(&self, x: &GVector, w: &Monomial) -> Result<UeaElement> {
        if x.dim() != self.env.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.env.dim(),
                got: x.dim(),
            });
        }
        if let Some(i) = w.indices().find(|&i| i >= self.env.dim()) {
            return Err(Error::IndexOutOfRange {
                index: i,
                dim: self.env.dim(),
            });
        }
        let mut out = UeaElement::zero(self.trunc());
        for (i, c) in x.support() {
            for (p, d) in self.deriv_letter(i as u16, w).iter() {
                out.add_term(p.clone(), c * d);
            }
        }
        Ok(out)
    }

    fn deriv_letter(&self, a: u16, w: &Monomial) -> Linear {
        if w.is_unit() {
            return Arc::new(Vec::new());
        }
        cached(&self.deriv_cache, &(a, w.clone()), || {
            let p = self.algebra.product();
            let letters = w.raw();
            let mut acc = HashMap::new();
            for pos in 0..letters.len() {
                let prefix = Monomial::from_indices(
                    &letters[..pos]
                        .iter()
                        .map(|&i| i as usize)
                        .collect::<Vec<_>>(),
                );
                let suffix = Monomial::from_indices(
                    &letters[pos + 1..]
                        .iter()
                        .map(|&i| i as usize)
                        .collect::<Vec<_>>(),
                );
                for (k, ck) in p.basis_sparse(a as usize, letters[pos] as usize) {
                    for (q, d) in self.env.lmul_letter(*k, &suffix).iter() {
                        let cd = ck * d;
                        for (r, e) in self.env.mono_mul(&prefix, q).iter() {
                            accumulate(&mut acc, r, &cd * e);
                        }
                    }
                }
            }
            collect(acc)
        })
    }

    fn tri_mono(&self, a: &Monomial, b: &Monomial) -> Linear {
        if a.is_unit() {
            return Arc::new(vec![(b.clone(), Scalar::one())]);
        }
        if b.is_unit() {
            return Arc::new(Vec::new());
        }
        if a.degree() == 1 {
            return self.deriv_letter(a.raw()[0], b);
        }
        cached(&self.tri_cache, &(a.clone(), b.clone()), || {
            let (x, rest) = a.split_first().expect("degree ≥ 2");
            let mut acc = HashMap::new();
            // x ▷ (A' ▷ B)
            for (p, c) in self.tri_mono(&rest, b).iter() {
                for (q, d) in self.deriv_letter(x, p).iter() {
                    accumulate(&mut acc, q, c * d);
                }
            }
            // − (x ▷ A') ▷ B
            for (p, c) in self.deriv_letter(x, &rest).iter() {
                for (q, d) in self.tri_mono(p, b).iter() {
                    accumulate(&mut acc, q, -(c * d));
                }
            }
            collect(acc)
        })
    }

    /// `A * B = A₍₁₎ (A₍₂₎ ▷ B)`
    pub fn star(&self, a: &UeaElement, b: &UeaElement) -> Result<UeaElement> {
        Self::bilinear(a, b, |ma, mb| self.star_mono(ma, mb))
    }

    fn star_mono(&self, a: &Monomial, b: &Monomial) -> Linear {
        if a.is_unit() {
            return Arc::new(vec![(b.clone(), Scalar::one())]);
        }
        if b.is_unit() {
            return Arc::new(vec![(a.clone(), Scalar::one())]);
        }
        cached(&self.star_cache, &(a.clone(), b.clone()), || {
            let mut acc = HashMap::new();
            for (l, r) in a.unshuffles() {
                for (p, c) in self.tri_mono(&r, b).iter() {
                    for (q, d) in self.env.mono_mul(&l, p).iter() {
                        accumulate(&mut acc, q, c * d);
                    }
                }
            }
            collect(acc)
        })
    }

    /// `A₁ * A₂ * ⋯` (the unit for an empty list).
    pub fn star_all<'a>(
        &self,
        factors: impl IntoIterator<Item = &'a UeaElement>,
    ) -> Result<UeaElement> {
        factors
            .into_iter()
            .try_fold(self.env.unit(), |acc, f| self.star(&acc, f))
    }

    /// `x₁ * ⋯ * xₙ` for Lie algebra elements.
    pub fn star_of_vectors(&self, xs: &[GVector]) -> Result<UeaElement> {
        let elems = xs
            .iter()
            .map(|x| self.env.vector(x))
            .collect::<Result<Vec<_>>>()?;
        self.star_all(&elems)
    }

    /// `[A, B]_* = A*B − B*A`
    pub fn star_commutator(&self, a: &UeaElement, b: &UeaElement) -> Result<UeaElement> {
        Ok(&self.star(a, b)? - &self.star(b, a)?)
    }

    /// The antipode of `(U(g), *)`, from `m_*(id ⊗ S_*)Δ = 𝟏ε`:
    /// `S_*(A) = −A − Σ' A'₍₁₎ * S_*(A'₍₂₎)` over the proper part of `ΔA`.
    pub fn star_antipode(&self, a: &UeaElement) -> UeaElement {
        let mut out = UeaElement::zero(a.trunc());
        for (m, c) in a.terms() {
            for (p, d) in self.antipode_mono(m).iter() {
                out.add_term(p.clone(), c * d);
            }
        }
        out
    }

    fn antipode_mono(&self, m: &Monomial) -> Linear {
        if m.is_unit() {
            return Arc::new(vec![(Monomial::unit(), Scalar::one())]);
        }
        cached(&self.antipode_cache, m, || {
            let mut acc = HashMap::new();
            accumulate(&mut acc, m, -Scalar::one());
            for (l, r) in m.unshuffles() {
                if l.is_unit() || r.is_unit() {
                    continue;
                }
                for (p, c) in self.antipode_mono(&r).iter() {
                    for (q, d) in self.star_mono(&l, p).iter() {
                        accumulate(&mut acc, q, -(c * d));
                    }
                }
            }
            collect(acc)
        })
    }

    /// The shuffle formula with the ordinary antipode in the inner factor:
    /// `−x₁⋯xₙ − Σ_{k<n} Σ_σ x_{σ(1)}⋯x_{σ(k)} * S(x_{σ(k+1)}⋯x_{σ(n)})`.
    ///
    /// This agrees with [`Lifted::star_antipode`] for words of length ≤ 2 only;
    /// it is kept to exhibit the discrepancy.
    pub fn star_antipode_shuffle_formula(&self, word: &[GVector]) -> Result<UeaElement> {
        let n = word.len();
        let mut out = -&self.env.product_of_vectors(word)?;
        for mask in 1u32..(1 << n) - 1 {
            let (left, right): (Vec<_>, Vec<_>) = (0..n).partition(|&p| mask >> p & 1 == 1);
            let pick = |ix: &[usize]| ix.iter().map(|&p| word[p].clone()).collect::<Vec<_>>();
            let l = self.env.product_of_vectors(&pick(&left))?;
            let r = self
                .env
                .antipode(&self.env.product_of_vectors(&pick(&right))?);
            out = &out - &self.star(&l, &r)?;
        }
        Ok(out)
    }

    /// `m_*(id ⊗ S_*)ΔA` and `m_*(S_* ⊗ id)ΔA`.
    pub fn antipode_sides(&self, a: &UeaElement) -> Result<(UeaElement, UeaElement)> {
        let delta = self.env.coproduct(a);
        let unit = |m: &Monomial| UeaElement::monomial(m.clone(), Scalar::one(), a.trunc());
        let left = delta.contract(|l, r| self.star(&unit(l), &self.star_antipode(&unit(r))))?;
        let right = delta.contract(|l, r| self.star(&self.star_antipode(&unit(l)), &unit(r)))?;
        Ok((left, right))
    }

    /// `x ▷ A` for a Lie element, as an element.
    pub fn act(&self, x: &GVector, a: &UeaElement) -> Result<UeaElement> {
        let mut out = UeaElement::zero(a.trunc());
        for (m, c) in a.terms() {
            out.add_scaled(&self.derivation(x, m)?, c);
        }
        Ok(out)
    }

    /// True when the element is zero in every degree except 1.
    pub fn is_lie_element(a: &UeaElement) -> bool {
        a.terms().all(|(m, c)| m.degree() == 1 || c.is_zero())
    }
}
