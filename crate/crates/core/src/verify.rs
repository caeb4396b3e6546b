//! The full identity suite, grouped into sections. Every check is exact and
//! exhaustive over the stated range of basis monomials or words, except the
//! Magnus and factorization sections, which use seeded sample vectors.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    check_mcybe, double_bracket, right_product, validate_post_lie, AlgebraConfig, GVector,
    LieAlgebra, LinearEndo, PostLieAlgebra, Report,
};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::factor::{series_agree, RMatrixSetting};
use crate::lift::Lifted;
use crate::magnus::{self, chi_series_with, chi_via_partitions};
use crate::partition::{bell_number, enumerate_partitions, monomials_of_degree, PhiMap};
use crate::scalar;
use crate::uea::{Enveloping, Monomial, Series, TensorElement, UeaElement};

/// Ranges of the exhaustive checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Hopf axioms of `U(g)` on monomials up to this degree.
    pub hopf_degree: usize,
    /// Lifted-product identities on monomial tuples up to this total degree.
    pub lifted_degree: usize,
    /// `φ` comparisons on basis words up to this length.
    pub word_length: usize,
    /// `φ∘φ⁻¹` and `φ⁻¹∘φ` up to this degree.
    pub inverse_degree: usize,
    /// `F` checks on basis words up to this length.
    pub f_length: usize,
    pub magnus_order: usize,
    pub samples: usize,
    pub seed: u64,
    pub exec: Exec,
}

impl SuiteOptions {
    pub fn for_trunc(trunc: usize) -> Self {
        SuiteOptions {
            hopf_degree: trunc.min(4),
            lifted_degree: trunc.min(5),
            word_length: trunc.min(5),
            inverse_degree: trunc.min(4),
            f_length: trunc.min(4),
            magnus_order: trunc,
            samples: 2,
            seed: 0,
            exec: Exec::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub name: String,
    pub report: Report,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteResult {
    pub sections: Vec<Section>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.sections.iter().all(|s| s.report.passed())
    }

    pub fn checked(&self) -> usize {
        self.sections.iter().map(|s| s.report.checked).sum()
    }

    /// `(section, identity)` of the first failure.
    pub fn first_failure(&self) -> Option<(&str, &crate::algebra::Failure)> {
        self.sections
            .iter()
            .find_map(|s| s.report.failures.first().map(|f| (s.name.as_str(), f)))
    }

    fn push(&mut self, name: &str, report: Report) {
        self.sections.push(Section {
            name: name.to_string(),
            report,
        });
    }
}

/// Runs `check` on every item and records one line per item. A check returns
/// `Ok(true)` on success; the label is only rendered for failures.
fn run<T, F, L>(
    report: &mut Report,
    exec: Exec,
    name: &str,
    items: &[T],
    check: F,
    label: L,
) -> Result<()>
where
    T: Sync,
    F: Fn(&T) -> Result<bool> + Sync + Send,
    L: Fn(&T) -> String,
{
    for (item, ok) in items.iter().zip(exec.map(items, &check)) {
        if ok? {
            report.record(name, &[], true);
        } else {
            report.record(&format!("{name} at {}", label(item)), &[], false);
        }
    }
    Ok(())
}

fn monomials_up_to(d: usize, k: usize) -> Vec<Monomial> {
    (0..=k).flat_map(|j| monomials_of_degree(d, j)).collect()
}

fn basis_words(d: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &layer {
            for i in 0..d {
                let mut w2: Vec<usize> = w.clone();
                w2.push(i);
                next.push(w2);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn letters(d: usize, w: &[usize]) -> Vec<GVector> {
    w.iter().map(|&i| GVector::basis(d, i)).collect()
}

fn word_label(labels: &[String], w: &[usize]) -> String {
    if w.is_empty() {
        "()".into()
    } else {
        w.iter()
            .map(|&i| labels[i].as_str())
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// Lie axioms and, for an r-matrix, modified Yang–Baxter and the derived
/// post-Lie structure.
pub fn rmatrix_suite(lie: &LieAlgebra, r: &LinearEndo, theta: &scalar::Scalar) -> Result<Report> {
    let mut report = lie.axiom_report();
    report.merge(check_mcybe(lie, r, theta));
    let d = lie.dim();
    if r.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: r.dim(),
        });
    }
    let lie_r = LieAlgebra::new_unchecked(
        lie.labels().to_vec(),
        (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| double_bracket(lie, r, &lie.basis(i), &lie.basis(j)))
                    .collect()
            })
            .collect::<Result<_>>()?,
    )?;
    for f in lie_r.axiom_report().failures {
        report.record(&format!("[·,·]_R {}", f.identity), &f.basis, false);
    }
    report.checked += 1;
    let product = crate::algebra::post_lie_from_r(lie, r)?;
    report.merge(validate_post_lie(lie, &product));
    for i in 0..d {
        for j in 0..d {
            let (x, y) = (lie.basis(i), lie.basis(j));
            let xy = product.apply(&x, &y)?;
            let bar = &(&xy - &product.apply(&y, &x)?) + &lie.bracket(&x, &y)?;
            report.record("⟦x,y⟧ = [x,y]_R", &[i, j], bar == lie_r.bracket(&x, &y)?);
            let rhs = &xy + &lie.bracket(&x, &y)?;
            report.record(
                "x◁y = x▷y + [x,y]",
                &[i, j],
                right_product(lie, r, &x, &y)? == rhs,
            );
        }
    }
    Ok(report)
}

/// Normal form, coassociativity, cocommutativity, antipode and filtration on
/// `U(g)`.
pub fn hopf_suite(env: &Enveloping, max_degree: usize, exec: Exec) -> Result<Report> {
    let d = env.dim();
    let labels = env.lie().labels().to_vec();
    let trunc = env.trunc();
    let monos = monomials_up_to(d, max_degree);
    let el = |m: &Monomial| UeaElement::monomial(m.clone(), scalar::one(), trunc);
    let label = |m: &Monomial| env.format_monomial(m);
    let mut report = Report::default();

    let words = basis_words(d, max_degree.min(3));
    run(
        &mut report,
        exec,
        "normalize idempotent",
        &words,
        |w| {
            let n = env.normalize(w)?;
            let mut again = env.zero();
            for (m, c) in n.terms() {
                again.add_scaled(&env.normalize(&m.indices().collect::<Vec<_>>())?, c);
            }
            Ok(again == n)
        },
        |w| word_label(&labels, w),
    )?;
    let splits: Vec<(Vec<usize>, usize)> = words
        .iter()
        .flat_map(|w| (0..=w.len()).map(move |k| (w.clone(), k)))
        .collect();
    run(
        &mut report,
        exec,
        "normalize multiplicative",
        &splits,
        |(w, k)| {
            Ok(
                env.mul(&env.normalize(&w[..*k])?, &env.normalize(&w[*k..])?)?
                    == env.normalize(w)?,
            )
        },
        |(w, k)| {
            format!(
                "{} | {}",
                word_label(&labels, &w[..*k]),
                word_label(&labels, &w[*k..])
            )
        },
    )?;

    run(
        &mut report,
        exec,
        "coassociativity",
        &monos,
        |m| {
            let delta = env.coproduct(&el(m));
            let mut left = Vec::new();
            let mut right = Vec::new();
            for ((a, b), c) in delta.terms() {
                for ((a1, a2), c1) in env.coproduct(&el(a)).terms() {
                    left.push(((a1.clone(), a2.clone(), b.clone()), c * c1));
                }
                for ((b1, b2), c2) in env.coproduct(&el(b)).terms() {
                    right.push(((a.clone(), b1.clone(), b2.clone()), c * c2));
                }
            }
            Ok(triple_sum(left) == triple_sum(right))
        },
        label,
    )?;
    run(
        &mut report,
        exec,
        "cocommutativity",
        &monos,
        |m| {
            let delta = env.coproduct(&el(m));
            Ok(delta.flip() == delta)
        },
        label,
    )?;
    run(
        &mut report,
        exec,
        "antipode",
        &monos,
        |m| {
            let delta = env.coproduct(&el(m));
            let unit = env.unit().scale(&env.counit(&el(m)));
            let left = delta.contract(|a, b| env.mul(&el(a), &env.antipode(&el(b))))?;
            let right = delta.contract(|a, b| env.mul(&env.antipode(&el(a)), &el(b)))?;
            Ok(left == unit && right == unit)
        },
        label,
    )?;
    run(
        &mut report,
        exec,
        "coproduct grading",
        &monos,
        |m| {
            Ok(env
                .coproduct(&el(m))
                .terms()
                .all(|((a, b), _)| a.degree() + b.degree() == m.degree()))
        },
        label,
    )?;
    let pairs: Vec<(Monomial, Monomial)> = pairs_up_to(&monos, max_degree);
    run(
        &mut report,
        exec,
        "filtration",
        &pairs,
        |(a, b)| Ok(env.mul(&el(a), &el(b))?.degree().unwrap_or(0) <= a.degree() + b.degree()),
        |(a, b)| format!("{} | {}", label(a), label(b)),
    )?;
    Ok(report)
}

fn triple_sum(
    terms: Vec<((Monomial, Monomial, Monomial), scalar::Scalar)>,
) -> std::collections::BTreeMap<(Monomial, Monomial, Monomial), scalar::Scalar> {
    use num_traits::Zero;
    let mut out = std::collections::BTreeMap::new();
    for (k, c) in terms {
        *out.entry(k).or_insert_with(scalar::zero) += c;
    }
    out.retain(|_, c: &mut scalar::Scalar| !c.is_zero());
    out
}

fn pairs_up_to(monos: &[Monomial], total: usize) -> Vec<(Monomial, Monomial)> {
    let mut out = Vec::new();
    for a in monos {
        for b in monos {
            if a.degree() + b.degree() <= total {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

fn triples_up_to(monos: &[Monomial], total: usize) -> Vec<(Monomial, Monomial, Monomial)> {
    let mut out = Vec::new();
    for (a, b) in pairs_up_to(monos, total) {
        for c in monos {
            if a.degree() + b.degree() + c.degree() <= total {
                out.push((a.clone(), b.clone(), c.clone()));
            }
        }
    }
    out
}

/// `(A₍₁₎ ∘ B₍₁₎) ⊗ (A₍₂₎ ∘ B₍₂₎)` for a bilinear operation `∘`.
fn tensor_product<F>(
    env: &Enveloping,
    a: &UeaElement,
    b: &UeaElement,
    op: F,
) -> Result<TensorElement>
where
    F: Fn(&UeaElement, &UeaElement) -> Result<UeaElement>,
{
    let t = env.trunc();
    let el = |m: &Monomial| UeaElement::monomial(m.clone(), scalar::one(), t);
    let mut out = TensorElement::zero(t);
    let db = env.coproduct(b);
    for ((a1, a2), c) in env.coproduct(a).terms() {
        for ((b1, b2), e) in db.terms() {
            let left = op(&el(a1), &el(b1))?;
            let right = op(&el(a2), &el(b2))?;
            out.add_scaled(&TensorElement::outer(&left, &right), &(c * e));
        }
    }
    Ok(out)
}

/// The lifted product `▷` and the `*`-Hopf algebra on `U(g)`.
pub fn lifted_suite(lifted: &Lifted, max_degree: usize, exec: Exec) -> Result<Report> {
    let env = lifted.env();
    let d = env.dim();
    let t = env.trunc();
    let labels = env.lie().labels().to_vec();
    let el = |m: &Monomial| UeaElement::monomial(m.clone(), scalar::one(), t);
    let label = |m: &Monomial| env.format_monomial(m);
    let label2 = |(a, b): &(Monomial, Monomial)| format!("{} | {}", label(a), label(b));
    let label3 = |(a, b, c): &(Monomial, Monomial, Monomial)| {
        format!("{} | {} | {}", label(a), label(b), label(c))
    };
    let monos = monomials_up_to(d, max_degree);
    let pairs = pairs_up_to(&monos, max_degree);
    let triples = triples_up_to(&monos, max_degree);
    let unit = env.unit();
    let mut report = Report::default();

    run(
        &mut report,
        exec,
        "1▷A = A",
        &monos,
        |m| Ok(lifted.triangle(&unit, &el(m))? == el(m)),
        label,
    )?;
    run(
        &mut report,
        exec,
        "A▷1 = ε(A)1",
        &monos,
        |m| Ok(lifted.triangle(&el(m), &unit)? == unit.scale(&el(m).counit())),
        label,
    )?;
    run(
        &mut report,
        exec,
        "ε(A▷B) = ε(A)ε(B)",
        &pairs,
        |(a, b)| Ok(lifted.triangle(&el(a), &el(b))?.counit() == el(a).counit() * el(b).counit()),
        label2,
    )?;
    run(
        &mut report,
        exec,
        "Δ(A▷B) = (A₁▷B₁)⊗(A₂▷B₂)",
        &pairs,
        |(a, b)| {
            let lhs = env.coproduct(&lifted.triangle(&el(a), &el(b))?);
            Ok(lhs == tensor_product(env, &el(a), &el(b), |u, v| lifted.triangle(u, v))?)
        },
        label2,
    )?;
    let letter_pairs: Vec<(usize, Monomial, Monomial)> = (0..d)
        .flat_map(|x| {
            pairs
                .iter()
                .filter(|(a, b)| a.degree() + b.degree() < max_degree)
                .map(move |(a, b)| (x, a.clone(), b.clone()))
        })
        .collect();
    run(
        &mut report,
        exec,
        "xA▷B = x▷(A▷B) − (x▷A)▷B",
        &letter_pairs,
        |(x, a, b)| {
            let xe = env.letter(*x)?;
            let lhs = lifted.triangle(&env.mul(&xe, &el(a))?, &el(b))?;
            let rhs = &lifted.triangle(&xe, &lifted.triangle(&el(a), &el(b))?)?
                - &lifted.triangle(&lifted.triangle(&xe, &el(a))?, &el(b))?;
            Ok(lhs == rhs)
        },
        |(x, a, b)| format!("{} | {} | {}", labels[*x], label(a), label(b)),
    )?;
    run(
        &mut report,
        exec,
        "A▷BC = (A₁▷B)(A₂▷C)",
        &triples,
        |(a, b, c)| {
            let lhs = lifted.triangle(&el(a), &env.mul(&el(b), &el(c))?)?;
            let rhs = env.coproduct(&el(a)).contract(|a1, a2| {
                env.mul(
                    &lifted.triangle(&el(a1), &el(b))?,
                    &lifted.triangle(&el(a2), &el(c))?,
                )
            })?;
            Ok(lhs == rhs)
        },
        label3,
    )?;
    run(
        &mut report,
        exec,
        "A▷(B▷C) = (A*B)▷C",
        &triples,
        |(a, b, c)| {
            let lhs = lifted.triangle(&el(a), &lifted.triangle(&el(b), &el(c))?)?;
            Ok(lhs == lifted.triangle(&lifted.star(&el(a), &el(b))?, &el(c))?)
        },
        label3,
    )?;
    run(
        &mut report,
        exec,
        "* associative",
        &triples,
        |(a, b, c)| {
            let lhs = lifted.star(&lifted.star(&el(a), &el(b))?, &el(c))?;
            Ok(lhs == lifted.star(&el(a), &lifted.star(&el(b), &el(c))?)?)
        },
        label3,
    )?;
    run(
        &mut report,
        exec,
        "1*A = A*1 = A",
        &monos,
        |m| Ok(lifted.star(&unit, &el(m))? == el(m) && lifted.star(&el(m), &unit)? == el(m)),
        label,
    )?;
    run(
        &mut report,
        exec,
        "Δ(A*B) = ΔA * ΔB",
        &pairs,
        |(a, b)| {
            let lhs = env.coproduct(&lifted.star(&el(a), &el(b))?);
            Ok(lhs == tensor_product(env, &el(a), &el(b), |u, v| lifted.star(u, v))?)
        },
        label2,
    )?;
    let derivation_pairs: Vec<(usize, Monomial, Monomial)> = letter_pairs.clone();
    run(
        &mut report,
        exec,
        "d(x) Leibniz and = x▷",
        &derivation_pairs,
        |(x, a, b)| {
            let xv = GVector::basis(d, *x);
            let ab = env.mul(&el(a), &el(b))?;
            let lhs = lifted.act(&xv, &ab)?;
            let rhs = &env.mul(&lifted.act(&xv, &el(a))?, &el(b))?
                + &env.mul(&el(a), &lifted.act(&xv, &el(b))?)?;
            Ok(lhs == rhs && lhs == lifted.triangle(&env.letter(*x)?, &ab)?)
        },
        |(x, a, b)| format!("{} | {} | {}", labels[*x], label(a), label(b)),
    )?;

    let words: Vec<Vec<usize>> = basis_words(d, max_degree.min(4));
    run(
        &mut report,
        exec,
        "Δ of *-words is the unshuffle sum",
        &words,
        |w| {
            let xs = letters(d, w);
            let lhs = env.coproduct(&lifted.star_of_vectors(&xs)?);
            let k = w.len();
            let mut rhs = TensorElement::zero(t);
            for mask in 0u32..1 << k {
                let (l, r): (Vec<usize>, Vec<usize>) = (0..k).partition(|p| mask >> p & 1 == 1);
                let pick = |ix: &[usize]| ix.iter().map(|&p| xs[p].clone()).collect::<Vec<_>>();
                rhs.add_scaled(
                    &TensorElement::outer(
                        &lifted.star_of_vectors(&pick(&l))?,
                        &lifted.star_of_vectors(&pick(&r))?,
                    ),
                    &scalar::one(),
                );
            }
            Ok(lhs == rhs)
        },
        |w| word_label(&labels, w),
    )?;
    let short: Vec<Vec<usize>> = basis_words(d, max_degree.min(3));
    run(
        &mut report,
        exec,
        "S*(x₁*⋯*xₙ) = (−1)ⁿ xₙ*⋯*x₁",
        &short,
        |w| {
            let xs = letters(d, w);
            let rev: Vec<GVector> = xs.iter().rev().cloned().collect();
            let sign = if w.len() % 2 == 0 {
                scalar::one()
            } else {
                -scalar::one()
            };
            let lhs = lifted.star_antipode(&lifted.star_of_vectors(&xs)?);
            Ok(lhs == lifted.star_of_vectors(&rev)?.scale(&sign))
        },
        |w| word_label(&labels, w),
    )?;
    let low = monomials_up_to(d, max_degree.min(3));
    run(
        &mut report,
        exec,
        "m*(S*⊗id)Δ = m*(id⊗S*)Δ = ε",
        &low,
        |m| {
            let (l, r) = lifted.antipode_sides(&el(m))?;
            let e = unit.scale(&el(m).counit());
            Ok(l == e && r == e)
        },
        label,
    )?;
    if lifted.algebra().lie().is_abelian() {
        let sym: Vec<Vec<usize>> = basis_words(d, max_degree.min(3));
        run(
            &mut report,
            exec,
            "* well defined on symmetric words",
            &sym,
            |w| {
                let xs = letters(d, w);
                let mut perm = xs.clone();
                perm.reverse();
                let a = lifted.star_of_vectors(&xs)?;
                let b = lifted.star_of_vectors(&perm)?;
                // both are the image of the same symmetric word, so their
                // difference must come from the commutator x*y − y*x = x▷y − y▷x
                let mut sym_a = env.zero();
                let mut sym_b = env.zero();
                for p in permutations(w.len()) {
                    let q: Vec<GVector> = p.iter().map(|&i| xs[i].clone()).collect();
                    sym_a = &sym_a + &lifted.star_of_vectors(&q)?;
                    let q: Vec<GVector> = p.iter().map(|&i| perm[i].clone()).collect();
                    sym_b = &sym_b + &lifted.star_of_vectors(&q)?;
                }
                Ok(sym_a == sym_b && (w.len() > 1 || a == b))
            },
            |w| word_label(&labels, w),
        )?;
    }
    Ok(report)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Set partitions and the isomorphism `φ`.
pub fn partition_suite(phi: &PhiMap, word_length: usize, inverse_degree: usize) -> Result<Report> {
    let exec = phi.exec();
    let lifted = phi.lifted();
    let env = lifted.env();
    let d = env.dim();
    let t = env.trunc();
    let labels = env.lie().labels().to_vec();
    let mut report = Report::default();
    for n in 1..=8 {
        report.record(
            "|P(n)| = Bell(n)",
            &[n],
            enumerate_partitions(n)?.len() as u128 == bell_number(n),
        );
    }
    let words: Vec<Vec<usize>> = basis_words(d, word_length);
    run(
        &mut report,
        exec,
        "φ partition sum = recursion = *-fold",
        &words,
        |w| {
            let xs = letters(d, w);
            let a = phi.phi(&xs)?;
            Ok(a == phi.phi_recursive(&xs)? && a == phi.phi_star(&xs)?)
        },
        |w| word_label(&labels, w),
    )?;
    let splits: Vec<(Vec<usize>, usize)> = words
        .iter()
        .flat_map(|w| (1..w.len()).map(move |k| (w.clone(), k)))
        .collect();
    run(
        &mut report,
        exec,
        "φ(u.v) = φ(u)*φ(v)",
        &splits,
        |(w, k)| {
            let xs = letters(d, w);
            let lhs = phi.phi(&xs)?;
            Ok(lhs == lifted.star(&phi.phi(&xs[..*k])?, &phi.phi(&xs[*k..])?)?)
        },
        |(w, k)| {
            format!(
                "{} | {}",
                word_label(&labels, &w[..*k]),
                word_label(&labels, &w[*k..])
            )
        },
    )?;
    run(
        &mut report,
        exec,
        "φ preserves augmentation",
        &words,
        |w| Ok(w.is_empty() || phi.phi(&letters(d, w))?.counit().is_zero_scalar()),
        |w| word_label(&labels, w),
    )?;
    let monos = monomials_up_to(d, inverse_degree);
    let el = |m: &Monomial| UeaElement::monomial(m.clone(), scalar::one(), t);
    run(
        &mut report,
        exec,
        "φ∘φ⁻¹ = id",
        &monos,
        |m| Ok(phi.phi_element(&phi.phi_inverse(&el(m))?)? == el(m)),
        |m| env.format_monomial(m),
    )?;
    run(
        &mut report,
        exec,
        "φ⁻¹∘φ = id",
        &monos,
        |m| {
            let bar = UeaElement::monomial(m.clone(), scalar::one(), phi.bar().trunc());
            Ok(phi.phi_inverse(&phi.phi_element(&bar)?)? == bar)
        },
        |m| phi.bar().format_monomial(m),
    )?;
    Ok(report)
}

trait ZeroCheck {
    fn is_zero_scalar(&self) -> bool;
}

impl ZeroCheck for scalar::Scalar {
    fn is_zero_scalar(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

/// Seeded sample vectors with coordinates in `{−2, …, 2}`, never zero.
pub fn sample_vectors(dim: usize, count: usize, seed: u64) -> Vec<GVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| loop {
            let v: Vec<i64> = (0..dim).map(|_| rng.gen_range(-2..=2)).collect();
            if v.iter().any(|&c| c != 0) {
                break GVector::from_ints(&v);
            }
        })
        .collect()
}

/// Identities of the Magnus expansion for each sample `x`. `r` enables the
/// BCH-recursion and r-matrix checks.
pub fn magnus_suite(
    phi: &PhiMap,
    r: Option<&LinearEndo>,
    xs: &[GVector],
    order: usize,
) -> Result<Report> {
    let lifted = phi.lifted();
    let env = lifted.env();
    let mut report = Report::default();
    for (k, x) in xs.iter().enumerate() {
        let chi = match chi_series_with(lifted, x, order, phi.exec()) {
            Ok(c) => c,
            Err(Error::NonPrimitive { order }) => {
                report.record("χₙ primitive", &[k, order], false);
                continue;
            }
            Err(e) => return Err(e),
        };
        report.record("χₙ primitive", &[k], true);
        report.record("χ₁ = x", &[k], chi.chi(1) == x);
        let (lhs, rhs) = magnus::exp_sides(lifted, &chi)?;
        report.record("exp(x) = exp*(χ(x))", &[k], lhs == rhs);
        let mut grouplike = true;
        for n in 0..=order {
            let mut expect = TensorElement::zero(env.trunc());
            for i in 0..=n {
                expect.add_scaled(
                    &TensorElement::outer(rhs.coeff(i), rhs.coeff(n - i)),
                    &scalar::one(),
                );
            }
            grouplike &= env.coproduct(rhs.coeff(n)) == expect;
        }
        report.record("exp*(χ) group-like", &[k], grouplike);
        if order <= 8 {
            report.record(
                "chi_series = chi_via_partitions",
                &[k],
                chi_via_partitions(phi, x, order)? == chi,
            );
        }
        if order >= 2 {
            report.record(
                "χ₂ closed form",
                &[k],
                chi.chi(2) == &magnus::chi2_closed(lifted, x)?,
            );
        }
        if order >= 3 {
            report.record(
                "χ₃ closed form",
                &[k],
                chi.chi(3) == &magnus::chi3_closed(lifted, x)?,
            );
        }
        let beta = chi.to_series(env.trunc());
        let y = Series::monomial(env.vector(x)?, 0, order);
        let round = magnus::dexp_star(lifted, &beta, &magnus::dexpinv_star(lifted, &beta, &y)?)?;
        report.record("dexp*∘dexp*⁻¹ = id", &[k], round == y);
        let round = magnus::dexpinv_star(lifted, &beta, &magnus::dexp_star(lifted, &beta, &y)?)?;
        report.record("dexp*⁻¹∘dexp* = id", &[k], round == y);
        report.record(
            "ODE residual",
            &[k],
            magnus::ode_residual(lifted, &chi)?.is_zero(),
        );
        if let Some(r) = r {
            let sub = magnus::bch_recursion_check(lifted.algebra().lie(), r, &chi)?;
            for f in &sub.failures {
                report.record(&f.identity, &[k], false);
            }
            report.checked += sub.checked - sub.failures.len();
        }
        if lifted.algebra().lie().is_abelian() {
            let omega = magnus::pre_lie_magnus(lifted, x, order)?;
            report.record(
                "pre-Lie Magnus",
                &[k],
                (1..=order).all(|n| &omega[n] == chi.chi(n)),
            );
        }
    }
    Ok(report)
}

/// `F`, the decomposition, and both factorizations.
pub fn factor_suite(
    setting: &RMatrixSetting,
    xs: &[GVector],
    f_length: usize,
    order: usize,
) -> Result<Report> {
    let exec = setting.exec();
    let env = setting.env();
    let d = env.dim();
    let t = env.trunc();
    let labels = env.lie().labels().to_vec();
    let mut report = Report::default();
    let words = basis_words(d, f_length);
    let wl = |w: &Vec<usize>| word_label(&labels, w);
    run(
        &mut report,
        exec,
        "F = φ",
        &words,
        |w| {
            let xs = letters(d, w);
            Ok(setting.f_word(&xs)? == setting.phi().phi(&xs)?)
        },
        wl,
    )?;
    run(
        &mut report,
        exec,
        "F(w) = w + lower degree",
        &words,
        |w| {
            let low = setting.f_lower_part(&letters(d, w))?;
            Ok(low.is_zero() || low.degree().unwrap_or(0) < w.len())
        },
        wl,
    )?;
    run(
        &mut report,
        exec,
        "(F⊗F)Δ_R = ΔF",
        &words,
        |w| {
            let (l, r) = setting.coproduct_sides(&letters(d, w))?;
            Ok(l == r)
        },
        wl,
    )?;
    run(
        &mut report,
        exec,
        "F∘S_R = S*∘F",
        &words,
        |w| {
            let (l, r) = setting.antipode_sides(&letters(d, w))?;
            Ok(l == r)
        },
        wl,
    )?;
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).collect();
    run(
        &mut report,
        exec,
        "F(x.y) = xy + [R₋x, y]",
        &pairs,
        |&(i, j)| {
            let (x, y) = (GVector::basis(d, i), GVector::basis(d, j));
            let b = setting.lie().bracket(&setting.r_minus().apply(&x)?, &y)?;
            let rhs = &env.product_of_vectors(&[x.clone(), y.clone()])? + &env.vector(&b)?;
            Ok(setting.f_word(&[x, y])? == rhs)
        },
        |&(i, j)| format!("{}.{}", labels[i], labels[j]),
    )?;
    let monos = monomials_up_to(d, f_length);
    let el = |m: &Monomial| UeaElement::monomial(m.clone(), scalar::one(), t);
    run(
        &mut report,
        exec,
        "decomposition reconstructs",
        &monos,
        |m| Ok(setting.recompose(&setting.decompose(&el(m))?) == el(m)),
        |m| env.format_monomial(m),
    )?;
    let small = monomials_up_to(d, 2);
    let star_pairs: Vec<(Monomial, Monomial)> = pairs_up_to(&small, f_length);
    run(
        &mut report,
        exec,
        "R₊(A₁) B S(R₋(A₂)) = A*B = F(F⁻¹A F⁻¹B)",
        &star_pairs,
        |(a, b)| {
            let star = setting.lifted().star(&el(a), &el(b))?;
            Ok(setting.star_via_f(&el(a), &el(b))? == star
                && setting.star_push(&el(a), &el(b))? == star)
        },
        |(a, b)| format!("{} | {}", env.format_monomial(a), env.format_monomial(b)),
    )?;

    if setting.r().is_involutive() {
        for (k, x) in xs.iter().enumerate() {
            let (gp, gm) = setting.grouplike_factorize_star(x, order)?;
            let lhs = setting.series_mul(&gp, &gm)?;
            report.record(
                "exp*(x) = exp(x₊)exp(−x₋)",
                &[k],
                series_agree(&lhs, &setting.exp_star(x, order)?),
            );
            let (cp, cm) = setting.exp_factorize(x, order)?;
            let neg: Vec<GVector> = cm.iter().map(|v| -v.clone()).collect();
            let gp = setting.exp_vector_series(&cp, order)?;
            let gm = setting.exp_vector_series(&neg, order)?;
            let lhs = setting.series_mul(&gp, &gm)?;
            report.record(
                "exp(x) = exp(χ₊)exp(−χ₋)",
                &[k],
                series_agree(&lhs, &setting.exp(x, order)?),
            );
            let chi = setting.chi(x, order)?.to_vector_series();
            let chi_ok = (0..=order).all(|n| &cp[n] - &cm[n] == chi[n]);
            report.record("χ₊ − χ₋ = χ", &[k], chi_ok);
            let uniq = setting.uniqueness_check(&gp, &gm)?;
            for f in &uniq.failures {
                report.record(&format!("factor uniqueness {}", f.identity), &[k], false);
            }
            report.checked += uniq.checked - uniq.failures.len();
        }
    }
    Ok(report)
}

/// Every section applicable to the configured algebra.
pub fn run_identities(
    config: &AlgebraConfig,
    trunc: usize,
    opts: &SuiteOptions,
) -> Result<SuiteResult> {
    let lie = Arc::new(config.lie.clone());
    let mut out = SuiteResult::default();
    let r_driven = config.explicit_product.is_none();
    if r_driven {
        out.push("r-matrix", rmatrix_suite(&lie, &config.r, &config.theta)?);
    } else {
        let mut rep = lie.axiom_report();
        rep.merge(validate_post_lie(
            &lie,
            config.explicit_product.as_ref().expect("explicit"),
        ));
        out.push("post-Lie", rep);
    }
    if !out.passed() {
        return Ok(out);
    }
    let env = Arc::new(Enveloping::with_trunc(lie.clone(), trunc));
    out.push("hopf", hopf_suite(&env, opts.hopf_degree, opts.exec)?);
    let pla = PostLieAlgebra::new(lie.clone(), config.product()?)?;
    let lifted = Arc::new(Lifted::with_engine(pla, env));
    out.push(
        "lifted",
        lifted_suite(&lifted, opts.lifted_degree, opts.exec)?,
    );
    let phi = PhiMap::with_exec(lifted.clone(), opts.exec);
    out.push(
        "partitions",
        partition_suite(&phi, opts.word_length, opts.inverse_degree)?,
    );
    let xs = sample_vectors(lie.dim(), opts.samples, opts.seed);
    let r = r_driven.then_some(&config.r);
    out.push("magnus", magnus_suite(&phi, r, &xs, opts.magnus_order)?);
    if r_driven && check_mcybe(&lie, &config.r, &scalar::one()).passed() {
        let setting = RMatrixSetting::with_exec(lie, config.r.clone(), trunc, opts.exec)?;
        out.push(
            "factorization",
            factor_suite(&setting, &xs, opts.f_length, opts.magnus_order)?,
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{gl, gl_triangular, sl, sl_triangular, AlgebraFile};

    fn quick(trunc: usize) -> SuiteOptions {
        SuiteOptions {
            hopf_degree: 3,
            lifted_degree: 3,
            word_length: 3,
            inverse_degree: 3,
            f_length: 3,
            magnus_order: trunc,
            samples: 1,
            seed: 1,
            exec: Exec::default(),
        }
    }

    #[test]
    fn gl2_suite_passes() {
        let lie = gl(2);
        let cfg = AlgebraFile::from_parts(&lie, Some(&gl_triangular(2)), None)
            .into_config()
            .unwrap();
        let res = run_identities(&cfg, 4, &quick(4)).unwrap();
        assert!(res.passed(), "{:?}", res.first_failure());
        assert_eq!(res.sections.len(), 6);
    }

    #[test]
    fn broken_r_stops_early() {
        let lie = sl(2);
        let cfg = AlgebraFile::from_parts(&lie, Some(&LinearEndo::zero(3)), None)
            .into_config()
            .unwrap();
        let res = run_identities(&cfg, 3, &quick(3)).unwrap();
        assert!(!res.passed());
        assert_eq!(res.sections.len(), 1);
        assert!(res.first_failure().unwrap().1.identity.contains("MCYBE"));
    }

    #[test]
    fn sl2_sections_pass() {
        let lie = Arc::new(sl(2));
        let r = sl_triangular(2);
        assert!(rmatrix_suite(&lie, &r, &scalar::one()).unwrap().passed());
        let env = Enveloping::with_trunc(lie.clone(), 4);
        assert!(hopf_suite(&env, 4, Exec::Sequential).unwrap().passed());
    }

    #[test]
    fn suite_detects_a_bad_product() {
        let lie = Arc::new(gl(2));
        let mut table = vec![GVector::zero(4); 16];
        table[0] = GVector::basis(4, 1);
        let p = crate::algebra::PostLieProduct::new(4, table, crate::algebra::Provenance::Explicit)
            .unwrap();
        let cfg = AlgebraFile::from_parts(&lie, None, None)
            .with_product(&p)
            .into_config()
            .unwrap();
        let res = run_identities(&cfg, 3, &quick(3)).unwrap();
        assert!(!res.passed());
    }

    #[test]
    fn samples_are_seeded() {
        assert_eq!(sample_vectors(4, 3, 9), sample_vectors(4, 3, 9));
        assert_ne!(sample_vectors(4, 3, 9), sample_vectors(4, 3, 10));
    }
}
