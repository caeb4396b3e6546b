use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};

use super::element::{add_term, Monomial, TensorElement, Terms, UeaElement};
use super::series::Series;
use crate::algebra::{GVector, LieAlgebra};
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

pub const DEFAULT_TRUNC: usize = 6;

pub(crate) type Linear = Arc<Vec<(Monomial, Scalar)>>;

/// PBW rewriting engine and Hopf structure of `U(g)`.
///
/// Products of monomials are memoized; the caches only ever receive values
/// that are fully determined by their keys, so sharing an engine between
/// threads is safe.
#[derive(Debug)]
pub struct Enveloping {
    lie: Arc<LieAlgebra>,
    trunc: usize,
    letter_cache: RwLock<HashMap<(u16, Monomial), Linear>>,
    mono_cache: RwLock<HashMap<(Monomial, Monomial), Linear>>,
}

pub(crate) fn cached<K: std::hash::Hash + Eq + Clone>(
    cache: &RwLock<HashMap<K, Linear>>,
    key: &K,
    compute: impl FnOnce() -> Vec<(Monomial, Scalar)>,
) -> Linear {
    if let Some(v) = cache.read().expect("cache lock").get(key) {
        return v.clone();
    }
    let v = Arc::new(compute());
    cache
        .write()
        .expect("cache lock")
        .entry(key.clone())
        .or_insert(v)
        .clone()
}

pub(crate) fn collect(terms: HashMap<Monomial, Scalar>) -> Vec<(Monomial, Scalar)> {
    let mut v: Vec<_> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    v.sort_by(|a, b| a.0.cmp(&b.0));
    v
}

pub(crate) fn accumulate(acc: &mut HashMap<Monomial, Scalar>, m: &Monomial, c: Scalar) {
    *acc.entry(m.clone()).or_insert_with(Scalar::zero) += c;
}

impl Enveloping {
    pub fn new(lie: Arc<LieAlgebra>) -> Self {
        Self::with_trunc(lie, DEFAULT_TRUNC)
    }

    pub fn with_trunc(lie: Arc<LieAlgebra>, trunc: usize) -> Self {
        Enveloping {
            lie,
            trunc,
            letter_cache: RwLock::default(),
            mono_cache: RwLock::default(),
        }
    }

    pub fn lie(&self) -> &Arc<LieAlgebra> {
        &self.lie
    }

    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn zero(&self) -> UeaElement {
        UeaElement::zero(self.trunc)
    }

    pub fn unit(&self) -> UeaElement {
        UeaElement::unit(self.trunc)
    }

    pub fn letter(&self, i: usize) -> Result<UeaElement> {
        self.check_index(i)?;
        Ok(UeaElement::monomial(
            Monomial::letter(i),
            Scalar::one(),
            self.trunc,
        ))
    }

    pub fn vector(&self, v: &GVector) -> Result<UeaElement> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: v.dim(),
            });
        }
        Ok(UeaElement::vector(v, self.trunc))
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.dim() {
            return Err(Error::IndexOutOfRange {
                index: i,
                dim: self.dim(),
            });
        }
        Ok(())
    }

    fn check_trunc(&self, a: &UeaElement, b: &UeaElement) -> Result<()> {
        if a.trunc() != b.trunc() {
            return Err(Error::TruncMismatch {
                left: a.trunc(),
                right: b.trunc(),
            });
        }
        Ok(())
    }

    /// PBW normal form of the word `e_{i1} e_{i2} ⋯`.
    pub fn normalize(&self, word: &[usize]) -> Result<UeaElement> {
        for &i in word {
            self.check_index(i)?;
        }
        let mut cur: Terms = Terms::new();
        cur.insert(Monomial::unit(), Scalar::one());
        for &a in word.iter().rev() {
            let mut next = Terms::new();
            for (m, c) in &cur {
                for (p, d) in self.lmul_letter(a as u16, m).iter() {
                    add_term(&mut next, p.clone(), c * d);
                }
            }
            cur = next;
        }
        Ok(UeaElement::from_terms(cur, self.trunc))
    }

    /// `e_a · m` in normal form:
    /// `a·m0·rest = m0·(a·rest) + [a, m0]·rest` whenever `a > m0`.
    pub(crate) fn lmul_letter(&self, a: u16, m: &Monomial) -> Linear {
        match m.raw().first() {
            None => return Arc::new(vec![(Monomial::letter(a as usize), Scalar::one())]),
            Some(&m0) if a <= m0 => return Arc::new(vec![(m.prepend(a), Scalar::one())]),
            _ => {}
        }
        cached(&self.letter_cache, &(a, m.clone()), || {
            let (m0, rest) = m.split_first().expect("non-empty");
            let mut acc = HashMap::new();
            for (n, c) in self.lmul_letter(a, &rest).iter() {
                for (p, d) in self.lmul_letter(m0, n).iter() {
                    accumulate(&mut acc, p, c * d);
                }
            }
            for (k, ck) in self.lie.bracket_sparse(a as usize, m0 as usize) {
                for (p, d) in self.lmul_letter(*k, &rest).iter() {
                    accumulate(&mut acc, p, ck * d);
                }
            }
            collect(acc)
        })
    }

    /// Exact normal form of the product of two monomials.
    pub(crate) fn mono_mul(&self, a: &Monomial, b: &Monomial) -> Linear {
        if a.is_unit() {
            return Arc::new(vec![(b.clone(), Scalar::one())]);
        }
        if b.is_unit() {
            return Arc::new(vec![(a.clone(), Scalar::one())]);
        }
        cached(&self.mono_cache, &(a.clone(), b.clone()), || {
            let (first, rest) = a.split_first().expect("non-empty");
            let mut acc = HashMap::new();
            for (n, c) in self.mono_mul(&rest, b).iter() {
                for (p, d) in self.lmul_letter(first, n).iter() {
                    accumulate(&mut acc, p, c * d);
                }
            }
            collect(acc)
        })
    }

    /// The product in `U(g)`. Terms above the truncation degree are dropped
    /// after exact normalization.
    pub fn mul(&self, a: &UeaElement, b: &UeaElement) -> Result<UeaElement> {
        self.check_trunc(a, b)?;
        let trunc = a.trunc();
        let mut out = Terms::new();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let c = ca * cb;
                for (p, d) in self.mono_mul(ma, mb).iter() {
                    if p.degree() <= trunc {
                        add_term(&mut out, p.clone(), &c * d);
                    }
                }
            }
        }
        Ok(UeaElement::from_terms(out, trunc))
    }

    /// Product of several elements, left to right.
    pub fn mul_all<'a>(
        &self,
        factors: impl IntoIterator<Item = &'a UeaElement>,
    ) -> Result<UeaElement> {
        factors
            .into_iter()
            .try_fold(self.unit(), |acc, f| self.mul(&acc, f))
    }

    /// `v1 · v2 ⋯ vk` for Lie algebra elements.
    pub fn product_of_vectors(&self, vs: &[GVector]) -> Result<UeaElement> {
        let elems = vs
            .iter()
            .map(|v| self.vector(v))
            .collect::<Result<Vec<_>>>()?;
        self.mul_all(&elems)
    }

    pub fn pow(&self, a: &UeaElement, k: usize) -> Result<UeaElement> {
        (0..k).try_fold(UeaElement::unit(a.trunc()), |acc, _| self.mul(&acc, a))
    }

    /// `AB − BA`
    pub fn commutator(&self, a: &UeaElement, b: &UeaElement) -> Result<UeaElement> {
        Ok(&self.mul(a, b)? - &self.mul(b, a)?)
    }

    /// The unshuffle coproduct; basis elements are primitive.
    pub fn coproduct(&self, a: &UeaElement) -> TensorElement {
        let mut t = TensorElement::zero(a.trunc());
        for (m, c) in a.terms() {
            for (l, r) in m.unshuffles() {
                t.add_term(l, r, c.clone());
            }
        }
        t
    }

    pub fn counit(&self, a: &UeaElement) -> Scalar {
        a.counit()
    }

    /// `S(x1⋯xn) = (−1)^n xn⋯x1`, renormalized.
    pub fn antipode(&self, a: &UeaElement) -> UeaElement {
        let mut out = UeaElement::zero(a.trunc());
        for (m, c) in a.terms() {
            out.add_scaled(&self.antipode_monomial(m, a.trunc()), c);
        }
        out
    }

    fn antipode_monomial(&self, m: &Monomial, trunc: usize) -> UeaElement {
        let rev: Vec<usize> = m.indices().rev().collect();
        let sign = if m.degree().is_multiple_of(2) {
            Scalar::one()
        } else {
            -Scalar::one()
        };
        self.normalize(&rev)
            .expect("indices come from a valid monomial")
            .with_trunc(trunc)
            .scale(&sign)
    }

    /// `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`
    pub fn tensor_mul(&self, s: &TensorElement, t: &TensorElement) -> Result<TensorElement> {
        let trunc = s.trunc().min(t.trunc());
        let mut out = TensorElement::zero(trunc);
        for ((a, b), x) in s.terms() {
            for ((c, d), y) in t.terms() {
                let left = self.mono_mul(a, c);
                let right = self.mono_mul(b, d);
                let xy = x * y;
                for (p, u) in left.iter().filter(|(p, _)| p.degree() <= trunc) {
                    for (q, v) in right.iter().filter(|(q, _)| q.degree() <= trunc) {
                        out.add_term(p.clone(), q.clone(), &xy * u * v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `m(T)`: multiplies the two tensor factors.
    pub fn multiply_tensor(&self, t: &TensorElement) -> UeaElement {
        let mut out = UeaElement::zero(t.trunc());
        for ((a, b), c) in t.terms() {
            for (p, d) in self.mono_mul(a, b).iter() {
                out.add_term(p.clone(), c * d);
            }
        }
        out
    }

    /// `Σ x^k / k!` in `t`-graded form, with `x` placed at order 1. The order
    /// is the largest `n` with `n · deg(x) ≤ trunc`.
    pub fn exp_trunc(&self, x: &UeaElement) -> Result<Series> {
        if !x.counit().is_zero() {
            return Err(Error::Precondition(
                "exp needs an argument with zero counit".into(),
            ));
        }
        let order = match x.degree() {
            None => x.trunc(),
            Some(d) => x.trunc() / d,
        };
        let s = Series::monomial(x.clone(), 1, order);
        self.exp_series(&s)
    }

    /// `exp` of a series without constant term.
    pub fn exp_series(&self, x: &Series) -> Result<Series> {
        x.exp_with(|a, b| self.mul(a, b))
    }

    /// `log` of a series whose constant term is the unit.
    pub fn log_trunc(&self, g: &Series) -> Result<Series> {
        g.log_with(|a, b| self.mul(a, b))
    }

    /// Text form `c·L1 L2 + …` in monomial order; the unit prints as `1`.
    pub fn format(&self, a: &UeaElement) -> String {
        format_element(self.lie.labels(), a)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        format_monomial(self.lie.labels(), m)
    }
}

pub(crate) fn format_monomial(labels: &[String], m: &Monomial) -> String {
    if m.is_unit() {
        return "1".into();
    }
    m.indices()
        .map(|i| labels[i].as_str())
        .collect::<Vec<_>>()
        .join(" ")
}

pub(crate) fn format_element(labels: &[String], a: &UeaElement) -> String {
    if a.is_zero() {
        return "0".into();
    }
    a.terms()
        .map(|(m, c)| format!("{}·{}", scalar::format(c), format_monomial(labels, m)))
        .collect::<Vec<_>>()
        .join(" + ")
}
