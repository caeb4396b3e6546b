use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::algebra::GVector;
use crate::scalar::Scalar;

/// A PBW monomial: a nondecreasing sequence of basis indices. The empty
/// monomial is the unit.
///
/// Monomials are ordered by degree first, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn letter(i: usize) -> Self {
        Monomial(vec![i as u16])
    }

    /// Sorts the given indices.
    pub fn from_indices(indices: &[usize]) -> Self {
        let mut v: Vec<u16> = indices.iter().map(|&i| i as u16).collect();
        v.sort_unstable();
        Monomial(v)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn indices(&self) -> impl DoubleEndedIterator<Item = usize> + ExactSizeIterator + '_ {
        self.0.iter().map(|&i| i as usize)
    }

    pub(crate) fn raw(&self) -> &[u16] {
        &self.0
    }

    /// First letter and the remaining monomial.
    pub(crate) fn split_first(&self) -> Option<(u16, Monomial)> {
        self.0
            .split_first()
            .map(|(&a, rest)| (a, Monomial(rest.to_vec())))
    }

    pub(crate) fn prepend(&self, a: u16) -> Monomial {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(a);
        v.extend_from_slice(&self.0);
        Monomial(v)
    }

    /// All splittings into (selected positions, remaining positions); both
    /// halves stay sorted. Returns `2^degree` pairs.
    pub fn unshuffles(&self) -> Vec<(Monomial, Monomial)> {
        let n = self.0.len();
        (0u32..1 << n)
            .map(|mask| {
                let (mut l, mut r) = (Vec::new(), Vec::new());
                for (p, &a) in self.0.iter().enumerate() {
                    if mask >> p & 1 == 1 {
                        l.push(a);
                    } else {
                        r.push(a);
                    }
                }
                (Monomial(l), Monomial(r))
            })
            .collect()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) type Terms = BTreeMap<Monomial, Scalar>;

pub(crate) fn add_term(terms: &mut Terms, m: Monomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// A truncated element of `U(g)`: PBW terms of degree at most `trunc`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UeaElement {
    terms: Terms,
    trunc: usize,
}

impl UeaElement {
    pub fn zero(trunc: usize) -> Self {
        UeaElement {
            terms: Terms::new(),
            trunc,
        }
    }

    pub fn unit(trunc: usize) -> Self {
        Self::monomial(Monomial::unit(), Scalar::one(), trunc)
    }

    pub fn monomial(m: Monomial, c: Scalar, trunc: usize) -> Self {
        Self::from_terms([(m, c)], trunc)
    }

    /// Sums the given terms, dropping zeros and degrees above `trunc`.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Scalar)>, trunc: usize) -> Self {
        let mut out = Terms::new();
        for (m, c) in terms {
            if m.degree() <= trunc {
                add_term(&mut out, m, c);
            }
        }
        UeaElement { terms: out, trunc }
    }

    /// The degree-1 element with the given coordinates.
    pub fn vector(v: &GVector, trunc: usize) -> Self {
        Self::from_terms(
            v.support().map(|(i, c)| (Monomial::letter(i), c.clone())),
            trunc,
        )
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Highest degree present; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// The counit: coefficient of the unit monomial.
    pub fn counit(&self) -> Scalar {
        self.coeff(&Monomial::unit())
    }

    /// Degree-`k` part.
    pub fn homogeneous(&self, k: usize) -> UeaElement {
        UeaElement {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
            trunc: self.trunc,
        }
    }

    /// Same terms under a different cap; terms above it are dropped.
    pub fn with_trunc(&self, trunc: usize) -> UeaElement {
        Self::from_terms(self.terms.clone(), trunc)
    }

    /// Coordinates if the element is a pure degree-1 element (or zero).
    pub fn to_vector(&self, dim: usize) -> Option<GVector> {
        let mut v = vec![Scalar::zero(); dim];
        for (m, c) in &self.terms {
            if m.degree() != 1 {
                return None;
            }
            v[m.raw()[0] as usize] = c.clone();
        }
        Some(GVector::new(v))
    }

    pub fn scale(&self, c: &Scalar) -> UeaElement {
        if c.is_zero() {
            return Self::zero(self.trunc);
        }
        UeaElement {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
            trunc: self.trunc,
        }
    }

    pub fn add_scaled(&mut self, other: &UeaElement, c: &Scalar) {
        for (m, a) in &other.terms {
            if m.degree() <= self.trunc {
                add_term(&mut self.terms, m.clone(), a * c);
            }
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Scalar) {
        if m.degree() <= self.trunc {
            add_term(&mut self.terms, m, c);
        }
    }
}

/// Sums keep the smaller of the two truncation caps.
impl Add for &UeaElement {
    type Output = UeaElement;
    fn add(self, rhs: &UeaElement) -> UeaElement {
        let mut out = self.with_trunc(self.trunc.min(rhs.trunc));
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl Sub for &UeaElement {
    type Output = UeaElement;
    fn sub(self, rhs: &UeaElement) -> UeaElement {
        let mut out = self.with_trunc(self.trunc.min(rhs.trunc));
        out.add_scaled(rhs, &-Scalar::one());
        out
    }
}

impl Add for UeaElement {
    type Output = UeaElement;
    fn add(self, rhs: UeaElement) -> UeaElement {
        &self + &rhs
    }
}

impl Sub for UeaElement {
    type Output = UeaElement;
    fn sub(self, rhs: UeaElement) -> UeaElement {
        &self - &rhs
    }
}

impl Neg for &UeaElement {
    type Output = UeaElement;
    fn neg(self) -> UeaElement {
        self.scale(&-Scalar::one())
    }
}

impl Neg for UeaElement {
    type Output = UeaElement;
    fn neg(self) -> UeaElement {
        -&self
    }
}

/// An element of `U(g) ⊗ U(g)` as a flat sum of monomial pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    terms: BTreeMap<(Monomial, Monomial), Scalar>,
    trunc: usize,
}

impl TensorElement {
    pub fn zero(trunc: usize) -> Self {
        TensorElement {
            terms: BTreeMap::new(),
            trunc,
        }
    }

    /// `A ⊗ B`
    pub fn outer(a: &UeaElement, b: &UeaElement) -> Self {
        let mut t = Self::zero(a.trunc.min(b.trunc));
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                t.add_term(ma.clone(), mb.clone(), ca * cb);
            }
        }
        t
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, Monomial), &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: &Monomial, b: &Monomial) -> Scalar {
        self.terms
            .get(&(a.clone(), b.clone()))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, a: Monomial, b: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (a, b);
        let v = self.terms.entry(key.clone()).or_insert_with(Scalar::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &TensorElement, c: &Scalar) {
        for ((a, b), x) in &other.terms {
            self.add_term(a.clone(), b.clone(), x * c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> TensorElement {
        let mut t = Self::zero(self.trunc);
        t.add_scaled(self, c);
        t
    }

    /// The flip `a ⊗ b ↦ b ⊗ a`.
    pub fn flip(&self) -> TensorElement {
        TensorElement {
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| ((b.clone(), a.clone()), c.clone()))
                .collect(),
            trunc: self.trunc,
        }
    }

    /// `Σ c · f(a) ⊗ g(b)` for linear maps given on monomials.
    pub fn map<E>(
        &self,
        mut f: impl FnMut(&Monomial) -> Result<UeaElement, E>,
        mut g: impl FnMut(&Monomial) -> Result<UeaElement, E>,
    ) -> Result<TensorElement, E> {
        let mut out = Self::zero(self.trunc);
        for ((a, b), c) in &self.terms {
            out.add_scaled(&TensorElement::outer(&f(a)?, &g(b)?), c);
        }
        Ok(out)
    }

    /// `Σ c · h(a, b)` for a bilinear map given on monomial pairs.
    pub fn contract<E>(
        &self,
        mut h: impl FnMut(&Monomial, &Monomial) -> Result<UeaElement, E>,
    ) -> Result<UeaElement, E> {
        let mut out = UeaElement::zero(self.trunc);
        for ((a, b), c) in &self.terms {
            out.add_scaled(&h(a, b)?, c);
        }
        Ok(out)
    }
}

impl Add for &TensorElement {
    type Output = TensorElement;
    fn add(self, rhs: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out.trunc = self.trunc.min(rhs.trunc);
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl Sub for &TensorElement {
    type Output = TensorElement;
    fn sub(self, rhs: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out.trunc = self.trunc.min(rhs.trunc);
        out.add_scaled(rhs, &-Scalar::one());
        out
    }
}
