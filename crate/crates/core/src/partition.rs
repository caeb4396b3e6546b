//! Set partitions and the Hopf isomorphism `φ: U(ḡ) → (U(g), *)` given by
//! `φ(x₁.⋯.xₙ) = Σ_π X_π`, with its inverse.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};

use crate::algebra::{GVector, PostLieAlgebra};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::lift::Lifted;
use crate::scalar::Scalar;
use crate::uea::{Enveloping, Monomial, UeaElement};

pub const MAX_PARTITION_SIZE: usize = 12;

/// A partition of `{1..n}` in canonical order: elements increase within each
/// block and blocks are ordered by their maxima.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Validates and canonicalizes.
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut seen = vec![false; n + 1];
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::Precondition("empty block".into()));
            }
            for &k in b {
                if k == 0 || k > n || seen[k] {
                    return Err(Error::Precondition(format!(
                        "blocks do not partition 1..={n}"
                    )));
                }
                seen[k] = true;
            }
        }
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_by_key(|b| *b.last().expect("non-empty"));
        Ok(SetPartition { blocks })
    }

    fn from_growth(rgs: &[usize]) -> Self {
        let nblocks = rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); nblocks];
        for (pos, &b) in rgs.iter().enumerate() {
            blocks[b].push(pos + 1);
        }
        blocks.sort_by_key(|b: &Vec<usize>| *b.last().expect("non-empty"));
        SetPartition { blocks }
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// All singletons (`0̂`).
    pub fn is_finest(&self) -> bool {
        self.blocks.len() == self.n()
    }

    /// One block (`1̂`).
    pub fn is_coarsest(&self) -> bool {
        self.blocks.len() == 1
    }

    /// The `X_π` factors: for each block `{k₁<⋯<k_l}` the chain
    /// `x_{k₁} ▷ (x_{k₂} ▷ (⋯ ▷ x_{k_l}))`.
    pub fn factors(
        &self,
        product: &crate::algebra::PostLieProduct,
        letters: &[GVector],
    ) -> Result<Vec<GVector>> {
        if letters.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: letters.len(),
            });
        }
        Ok(self
            .blocks
            .iter()
            .map(|b| {
                let (&last, init) = b.split_last().expect("non-empty");
                init.iter()
                    .rev()
                    .fold(letters[last - 1].clone(), |acc, &k| {
                        product.apply_raw(&letters[k - 1], &acc)
                    })
            })
            .collect())
    }

    /// The symbolic form of `X_π`, e.g. `x1(x2▷x3)`.
    pub fn term_string(&self) -> String {
        let several = self.blocks.len() > 1;
        self.blocks
            .iter()
            .map(|b| {
                let (last, init) = b.split_last().expect("non-empty");
                let mut s = format!("x{last}");
                for k in init.iter().rev() {
                    s = if s.contains('▷') {
                        format!("x{k}▷({s})")
                    } else {
                        format!("x{k}▷{s}")
                    };
                }
                if several && b.len() > 1 {
                    format!("({s})")
                } else {
                    s
                }
            })
            .collect()
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let inner: Vec<String> = b.iter().map(usize::to_string).collect();
                format!("{{{}}}", inner.join(","))
            })
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

fn check_size(n: usize) -> Result<()> {
    if !(1..=MAX_PARTITION_SIZE).contains(&n) {
        return Err(Error::OutOfRange {
            what: "partition size",
            value: n,
            min: 1,
            max: MAX_PARTITION_SIZE,
        });
    }
    Ok(())
}

/// All partitions of `{1..n}`, canonical, sorted lexicographically by their
/// canonical block lists.
pub fn enumerate_partitions(n: usize) -> Result<Vec<SetPartition>> {
    check_size(n)?;
    Ok(partitions_unchecked(n))
}

fn partitions_unchecked(n: usize) -> Vec<SetPartition> {
    if n == 0 {
        return vec![SetPartition { blocks: Vec::new() }];
    }
    // restricted growth strings: a[0] = 0, a[i] ≤ 1 + max(a[..i])
    let mut out = Vec::new();
    let mut a = vec![0usize; n];
    let mut m = vec![0usize; n];
    loop {
        out.push(SetPartition::from_growth(&a));
        let Some(i) = (1..n).rev().find(|&i| a[i] <= m[i - 1]) else {
            break;
        };
        a[i] += 1;
        m[i] = m[i - 1].max(a[i]);
        for j in i + 1..n {
            a[j] = 0;
            m[j] = m[i];
        }
    }
    out.sort();
    out
}

/// Bell numbers via `B_{n+1} = Σ C(n,i) B_i`.
pub fn bell_number(n: usize) -> u128 {
    let mut bell = vec![1u128];
    for k in 0..n {
        let mut binom = 1u128;
        let mut s = 0u128;
        for (i, b) in bell.iter().enumerate() {
            s += binom * b;
            binom = binom * (k - i) as u128 / (i + 1) as u128;
        }
        bell.push(s);
    }
    bell[n]
}

/// `φ` and `φ⁻¹` between `U(ḡ)` and `(U(g), *)`.
///
/// Elements of `U(ḡ)` are PBW elements of the bracket
/// `⟦x,y⟧ = x▷y − y▷x + [x,y]` in the same basis.
#[derive(Debug)]
pub struct PhiMap {
    lifted: Arc<Lifted>,
    bar: Arc<Enveloping>,
    exec: Exec,
    inverse_cache: RwLock<HashMap<Vec<u16>, Arc<UeaElement>>>,
}

impl PhiMap {
    pub fn new(lifted: Arc<Lifted>) -> Self {
        Self::with_exec(lifted, Exec::default())
    }

    pub fn with_exec(lifted: Arc<Lifted>, exec: Exec) -> Self {
        let bar_lie = Arc::new(lifted.algebra().bar_algebra());
        let bar = Arc::new(Enveloping::with_trunc(bar_lie, lifted.trunc()));
        PhiMap {
            lifted,
            bar,
            exec,
            inverse_cache: RwLock::default(),
        }
    }

    pub fn lifted(&self) -> &Lifted {
        &self.lifted
    }

    pub fn algebra(&self) -> &PostLieAlgebra {
        self.lifted.algebra()
    }

    /// The enveloping algebra of `ḡ`.
    pub fn bar(&self) -> &Enveloping {
        &self.bar
    }

    pub fn bar_arc(&self) -> &Arc<Enveloping> {
        &self.bar
    }

    pub fn exec(&self) -> Exec {
        self.exec
    }

    /// `X_π` for the given letters.
    pub fn x_pi(&self, pi: &SetPartition, letters: &[GVector]) -> Result<UeaElement> {
        let factors = pi.factors(self.algebra().product(), letters)?;
        self.lifted.env().product_of_vectors(&factors)
    }

    fn check_word(&self, word: &[GVector]) -> Result<()> {
        check_size(word.len().max(1))?;
        let d = self.algebra().dim();
        if let Some(v) = word.iter().find(|v| v.dim() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: v.dim(),
            });
        }
        Ok(())
    }

    /// `φ(x₁.⋯.xₙ) = Σ_{π ∈ Pₙ} X_π`, summed in list order.
    pub fn phi(&self, word: &[GVector]) -> Result<UeaElement> {
        self.check_word(word)?;
        if word.is_empty() {
            return Ok(self.lifted.env().unit());
        }
        let parts = partitions_unchecked(word.len());
        let terms = self.exec.map(&parts, |pi| self.x_pi(pi, word));
        let mut out = self.lifted.env().zero();
        for t in terms {
            out = &out + &t?;
        }
        Ok(out)
    }

    /// `φ(x₁.rest) = x₁ φ(rest) + x₁ ▷ φ(rest)`
    pub fn phi_recursive(&self, word: &[GVector]) -> Result<UeaElement> {
        self.check_word(word)?;
        let env = self.lifted.env();
        let mut acc = env.unit();
        for x in word.iter().rev() {
            let xa = env.mul(&env.vector(x)?, &acc)?;
            acc = &xa + &self.lifted.act(x, &acc)?;
        }
        Ok(acc)
    }

    /// `x₁ * ⋯ * xₙ`
    pub fn phi_star(&self, word: &[GVector]) -> Result<UeaElement> {
        self.check_word(word)?;
        self.lifted.star_of_vectors(word)
    }

    /// `φ` on an element of `U(ḡ)`: each PBW monomial is read as a word.
    pub fn phi_element(&self, a: &UeaElement) -> Result<UeaElement> {
        let d = self.algebra().dim();
        let mut out = UeaElement::zero(a.trunc());
        for (m, c) in a.terms() {
            let word: Vec<GVector> = m.indices().map(|i| GVector::basis(d, i)).collect();
            out.add_scaled(&self.phi_star(&word)?, c);
        }
        Ok(out)
    }

    /// `φ⁻¹(x₁⋯xₙ) = x₁.⋯.xₙ − Σ_{0̂ < π} φ⁻¹(X_π)`, extended linearly, with
    /// the result in PBW form of `U(ḡ)`.
    pub fn phi_inverse(&self, a: &UeaElement) -> Result<UeaElement> {
        let mut out = UeaElement::zero(a.trunc());
        for (m, c) in a.terms() {
            check_size(m.degree().max(1))?;
            let word: Vec<u16> = m.indices().map(|i| i as u16).collect();
            out.add_scaled(&*self.inverse_word(&word)?, c);
        }
        Ok(out)
    }

    /// `φ⁻¹` of a word of Lie elements.
    pub fn phi_inverse_word(&self, word: &[GVector]) -> Result<UeaElement> {
        self.check_word(word)?;
        let mut out = self.bar.zero();
        for (w, c) in expand_word(word) {
            out.add_scaled(&*self.inverse_word(&w)?, &c);
        }
        Ok(out)
    }

    fn inverse_word(&self, w: &[u16]) -> Result<Arc<UeaElement>> {
        if let Some(v) = self.inverse_cache.read().expect("cache lock").get(w) {
            return Ok(v.clone());
        }
        let d = self.algebra().dim();
        let letters: Vec<GVector> = w.iter().map(|&i| GVector::basis(d, i as usize)).collect();
        let idx: Vec<usize> = w.iter().map(|&i| i as usize).collect();
        let mut out = self.bar.normalize(&idx)?;
        if w.len() >= 2 {
            let product = self.algebra().product();
            for pi in partitions_unchecked(w.len())
                .iter()
                .filter(|p| !p.is_finest())
            {
                let factors = pi.factors(product, &letters)?;
                for (u, c) in expand_word(&factors) {
                    out.add_scaled(&*self.inverse_word(&u)?, &-c);
                }
            }
        }
        let out = Arc::new(out);
        self.inverse_cache
            .write()
            .expect("cache lock")
            .insert(w.to_vec(), out.clone());
        Ok(out)
    }

    /// `m_i = φ(x^{.i})`, the non-commutative Bell polynomial in the chains
    /// `x, x▷x, x▷(x▷x), …`.
    pub fn nc_bell(&self, x: &GVector, i: usize) -> Result<UeaElement> {
        if i > 8 {
            return Err(Error::OutOfRange {
                what: "Bell polynomial order",
                value: i,
                min: 0,
                max: 8,
            });
        }
        self.phi(&vec![x.clone(); i])
    }
}

/// Multilinear expansion of a word of vectors into basis words.
fn expand_word(word: &[GVector]) -> Vec<(Vec<u16>, Scalar)> {
    let mut acc: Vec<(Vec<u16>, Scalar)> = vec![(Vec::new(), Scalar::one())];
    for v in word {
        let mut next = Vec::with_capacity(acc.len() * 2);
        for (w, c) in &acc {
            for (i, vi) in v.support() {
                let mut w2 = w.clone();
                w2.push(i as u16);
                next.push((w2, c * vi));
            }
        }
        acc = next;
    }
    acc.retain(|(_, c)| !c.is_zero());
    acc
}

/// The monomials of `U(g)` of exactly degree `k` in `d` letters.
pub fn monomials_of_degree(d: usize, k: usize) -> Vec<Monomial> {
    fn rec(d: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Monomial>) {
        if cur.len() == k {
            out.push(Monomial::from_indices(cur));
            return;
        }
        for i in start..d {
            cur.push(i);
            rec(d, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, k, 0, &mut Vec::new(), &mut out);
    out
}
