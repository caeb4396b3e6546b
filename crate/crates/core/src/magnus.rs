//! The post-Lie Magnus expansion `χ`, defined by `exp(x) = exp*(χ(x))`, and
//! the identities around it: the dexp ODE, the BCH recursion for r-matrix
//! post-Lie algebras and the pre-Lie specialisation.

use crate::algebra::{r_plus_minus, GVector, LieAlgebra, LinearEndo, Report};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::lift::Lifted;
use crate::partition::{PhiMap, SetPartition};
use crate::scalar::{self, Scalar};
use crate::uea::{Series, UeaElement};

/// `χ₁, …, χ_N` for a fixed `x`; `χ(xt) = Σ χₙ tⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MagnusSeries {
    x: GVector,
    chi: Vec<GVector>,
}

impl MagnusSeries {
    pub fn x(&self) -> &GVector {
        &self.x
    }

    pub fn order(&self) -> usize {
        self.chi.len()
    }

    /// `χₙ` for `1 ≤ n ≤ order`.
    pub fn chi(&self, n: usize) -> &GVector {
        &self.chi[n - 1]
    }

    pub fn terms(&self) -> &[GVector] {
        &self.chi
    }

    /// `Σ χₙ tⁿ` as a series in `U(g)` (constant term zero).
    pub fn to_series(&self, trunc: usize) -> Series {
        let mut s = Series::zero(self.order(), trunc);
        for (n, c) in self.chi.iter().enumerate() {
            s.set_coeff(n + 1, UeaElement::vector(c, trunc));
        }
        s
    }

    /// `Σ χₙ tⁿ` as coordinate vectors, index = power of `t`.
    pub fn to_vector_series(&self) -> Vec<GVector> {
        let mut v = vec![GVector::zero(self.x.dim())];
        v.extend(self.chi.iter().cloned());
        v
    }

    /// `Σ χₙ` (the value at `t = 1`, truncated).
    pub fn sum(&self) -> GVector {
        self.chi
            .iter()
            .fold(GVector::zero(self.x.dim()), |acc, c| acc + c.clone())
    }
}

/// Bernoulli numbers with `b₁ = −½`: `Σ_{k<m+1} C(m+1,k) b_k = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernoulliTable {
    b: Vec<Scalar>,
}

impl BernoulliTable {
    pub fn new(n: usize) -> Self {
        let mut b = vec![scalar::one()];
        for m in 1..=n {
            let s: Scalar = (0..m).map(|k| scalar::binomial(m + 1, k) * &b[k]).sum();
            b.push(-s / scalar::int(m as i64 + 1));
        }
        BernoulliTable { b }
    }

    pub fn get(&self, n: usize) -> &Scalar {
        &self.b[n]
    }

    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }
}

fn check_order(lifted: &Lifted, n: usize, max: usize) -> Result<()> {
    let max = max.min(lifted.trunc());
    if n == 0 || n > max {
        return Err(Error::OutOfRange {
            what: "Magnus order",
            value: n,
            min: 1,
            max,
        });
    }
    Ok(())
}

fn primitive(a: &UeaElement, order: usize, dim: usize) -> Result<GVector> {
    a.to_vector(dim).ok_or(Error::NonPrimitive { order })
}

/// `χₙ = xⁿ/n! − Σ_{k=2}^{n} (1/k!) Σ_{p₁+⋯+p_k=n} χ_{p₁} * ⋯ * χ_{p_k}`.
///
/// The inner composition sums are accumulated as `*`-powers:
/// `P_k[m] = Σ_p χ_p * P_{k−1}[m−p]`.
pub fn chi_series(lifted: &Lifted, x: &GVector, order: usize) -> Result<MagnusSeries> {
    chi_series_with(lifted, x, order, Exec::default())
}

pub fn chi_series_with(
    lifted: &Lifted,
    x: &GVector,
    order: usize,
    exec: Exec,
) -> Result<MagnusSeries> {
    check_order(lifted, order, usize::MAX)?;
    let env = lifted.env();
    let d = env.dim();
    let xe = env.vector(x)?;
    // chi_el[p] and powers[k][m], 1-based
    let mut chi_el = vec![env.zero(), xe.clone()];
    let mut powers: Vec<Vec<UeaElement>> = vec![Vec::new(), vec![env.zero(), xe.clone()]];
    let mut x_pow = xe.clone();
    let mut chi = vec![x.clone()];
    for n in 2..=order {
        x_pow = env.mul(&x_pow, &xe)?;
        let ks: Vec<usize> = (2..=n).collect();
        let new: Vec<Result<UeaElement>> = exec.map(&ks, |&k| {
            let mut s = env.zero();
            for p in 1..=n - k + 1 {
                let tail = &powers[k - 1][n - p];
                if !tail.is_zero() && !chi_el[p].is_zero() {
                    s = &s + &lifted.star(&chi_el[p], tail)?;
                }
            }
            Ok(s)
        });
        powers.push(vec![env.zero(); n + 1]);
        let mut c = x_pow.scale(&(scalar::one() / scalar::factorial(n)));
        for (k, pk) in ks.into_iter().zip(new) {
            let pk = pk?;
            c = &c - &pk.scale(&(scalar::one() / scalar::factorial(k)));
            if powers[k].len() <= n {
                powers[k].resize(n + 1, env.zero());
            }
            powers[k][n] = pk;
        }
        for row in powers.iter_mut().skip(1) {
            if row.len() <= n {
                row.resize(n + 1, env.zero());
            }
        }
        let v = primitive(&c, n, d)?;
        powers[1][n] = c.clone();
        chi_el.push(c);
        chi.push(v);
    }
    Ok(MagnusSeries { x: x.clone(), chi })
}

/// All compositions of `n` into `k` positive parts.
pub fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..=n.saturating_sub(k - 1) {
        for mut rest in compositions(n - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `χₙ = −(1/n!) Σ_{0̂<π} X_π − Σ_{k=2}^{n−1} (1/k!) Σ_{p₁+⋯+p_k=n} χ_{p₁} * ⋯ * χ_{p_k}`,
/// with the compositions enumerated literally.
pub fn chi_via_partitions(phi: &PhiMap, x: &GVector, order: usize) -> Result<MagnusSeries> {
    let lifted = phi.lifted();
    check_order(lifted, order, 8)?;
    let env = lifted.env();
    let d = env.dim();
    let mut chi_el = vec![env.zero(), env.vector(x)?];
    let mut chi = vec![x.clone()];
    for n in 2..=order {
        let letters = vec![x.clone(); n];
        let parts = crate::partition::enumerate_partitions(n)?;
        let coarse: Vec<&SetPartition> = parts.iter().filter(|p| !p.is_finest()).collect();
        let xs = phi.exec().map(&coarse, |pi| phi.x_pi(pi, &letters));
        let mut c = env.zero();
        for t in xs {
            c = &c + &t?;
        }
        c = c.scale(&(-scalar::one() / scalar::factorial(n)));
        for k in 2..n {
            let w = scalar::one() / scalar::factorial(k);
            for comp in compositions(n, k) {
                let factors: Vec<&UeaElement> = comp.iter().map(|&p| &chi_el[p]).collect();
                c = &c - &lifted.star_all(factors)?.scale(&w);
            }
        }
        chi.push(primitive(&c, n, d)?);
        chi_el.push(c);
    }
    Ok(MagnusSeries { x: x.clone(), chi })
}

/// `exp(tx)` and `exp*(χ(xt))` to the order of `chi`.
pub fn exp_sides(lifted: &Lifted, chi: &MagnusSeries) -> Result<(Series, Series)> {
    let env = lifted.env();
    let order = chi.order();
    let lhs = env.exp_series(&Series::monomial(env.vector(chi.x())?, 1, order))?;
    let rhs = chi
        .to_series(env.trunc())
        .exp_with(|a, b| lifted.star(a, b))?;
    Ok((lhs, rhs))
}

/// `χ₂ = −½ x▷x`
pub fn chi2_closed(lifted: &Lifted, x: &GVector) -> Result<GVector> {
    let p = lifted.algebra();
    Ok(p.triangle(x, x)?.scale(&scalar::frac(-1, 2)))
}

/// `χ₃ = (1/12)[x▷x, x] + ¼ (x▷x)▷x + (1/12) x▷(x▷x)`
pub fn chi3_closed(lifted: &Lifted, x: &GVector) -> Result<GVector> {
    let p = lifted.algebra();
    let xx = p.triangle(x, x)?;
    let a = p.lie().bracket(&xx, x)?.scale(&scalar::frac(1, 12));
    let b = p.triangle(&xx, x)?.scale(&scalar::frac(1, 4));
    let c = p.triangle(x, &xx)?.scale(&scalar::frac(1, 12));
    Ok(a + b + c)
}

/// `χ₂ = −½ [R₋x, x]`
pub fn chi2_r(lie: &LieAlgebra, r: &LinearEndo, x: &GVector) -> Result<GVector> {
    let (_, rm) = r_plus_minus(r);
    Ok(lie.bracket(&rm.apply(x)?, x)?.scale(&scalar::frac(-1, 2)))
}

/// `χ₃ = ¼ [R₋[R₋x,x], x] + (1/12)([[R₋x,x],x] + [R₋x,[R₋x,x]])`
pub fn chi3_r(lie: &LieAlgebra, r: &LinearEndo, x: &GVector) -> Result<GVector> {
    let (_, rm) = r_plus_minus(r);
    let rx = rm.apply(x)?;
    let a = lie.bracket(&rx, x)?;
    let t1 = lie.bracket(&rm.apply(&a)?, x)?.scale(&scalar::frac(1, 4));
    let t2 = (lie.bracket(&a, x)? + lie.bracket(&rx, &a)?).scale(&scalar::frac(1, 12));
    Ok(t1 + t2)
}

/// Symbolic forms of the low-order terms.
pub fn closed_form_string(n: usize) -> Option<&'static str> {
    match n {
        1 => Some("x"),
        2 => Some("-1/2 x▷x"),
        3 => Some("1/12 [x▷x,x] + 1/4 (x▷x)▷x + 1/12 x▷(x▷x)"),
        _ => None,
    }
}

/// `ad_β^{(*n)}(y)` for `n = 0..=order`, with `[a,b]_* = a*b − b*a`.
fn star_ads(lifted: &Lifted, beta: &Series, y: &Series) -> Result<Vec<Series>> {
    if !beta.coeff(0).is_zero() {
        return Err(Error::Precondition("β must have no order-0 term".into()));
    }
    let order = beta.order().min(y.order());
    let star = |a: &UeaElement, b: &UeaElement| lifted.star(a, b);
    let mut out = vec![y.truncate(order)];
    for _ in 0..order {
        let prev = out.last().expect("non-empty");
        let next = beta.mul_with(prev, star)?.sub(&prev.mul_with(beta, star)?);
        out.push(next);
    }
    Ok(out)
}

/// `dexp*_β(y) = Σ 1/(n+1)! ad_β^{(*n)}(y)`
pub fn dexp_star(lifted: &Lifted, beta: &Series, y: &Series) -> Result<Series> {
    let ads = star_ads(lifted, beta, y)?;
    let mut out = ads[0].scale(&scalar::zero());
    for (n, a) in ads.iter().enumerate() {
        out = out.add(&a.scale(&(scalar::one() / scalar::factorial(n + 1))));
    }
    Ok(out)
}

/// `dexp*⁻¹_β(y) = Σ bₙ/n! ad_β^{(*n)}(y)` with `b₁ = −½`.
pub fn dexpinv_star(lifted: &Lifted, beta: &Series, y: &Series) -> Result<Series> {
    let ads = star_ads(lifted, beta, y)?;
    let b = BernoulliTable::new(ads.len());
    let mut out = ads[0].scale(&scalar::zero());
    for (n, a) in ads.iter().enumerate() {
        out = out.add(&a.scale(&(b.get(n) / scalar::factorial(n))));
    }
    Ok(out)
}

/// `χ̇ − dexp*⁻¹_{−χ}(exp*(−χ) ▷ x)` to order `N − 1`.
pub fn ode_residual(lifted: &Lifted, chi: &MagnusSeries) -> Result<Series> {
    let env = lifted.env();
    let trunc = env.trunc();
    let order = chi.order();
    let chi_s = chi.to_series(trunc);
    let neg = chi_s.scale(&-scalar::one());
    let e = neg.exp_with(|a, b| lifted.star(a, b))?;
    let xe = env.vector(chi.x())?;
    let mut acted = Series::zero(order, trunc);
    for n in 0..=order {
        acted.set_coeff(n, lifted.triangle(e.coeff(n), &xe)?);
    }
    let rhs = dexpinv_star(lifted, &neg.truncate(order - 1), &acted.truncate(order - 1))?;
    Ok(chi_s.derivative().sub(&rhs))
}

/// Graded vector series: index = power of `t`.
pub type VectorSeries = Vec<GVector>;

fn vbracket(lie: &LieAlgebra, a: &[GVector], b: &[GVector], order: usize) -> VectorSeries {
    let d = lie.dim();
    let mut out = vec![GVector::zero(d); order + 1];
    for (i, ai) in a.iter().enumerate().take(order + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(order + 1 - i) {
            if !bj.is_zero() {
                out[i + j] += &lie.bracket_raw(ai, bj);
            }
        }
    }
    out
}

fn vadd(a: &[GVector], b: &[GVector], c: &Scalar) -> VectorSeries {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let mut z = x.clone();
            z.add_scaled(y, c);
            z
        })
        .collect()
}

/// `BCH(a,b) − a − b` through degree 4:
/// `½[a,b] + (1/12)[a,[a,b]] + (1/12)[b,[b,a]] − (1/24)[b,[a,[a,b]]]`,
/// on graded series without constant term. Exact to `t`-order 4.
pub fn bch_bar_series(
    lie: &LieAlgebra,
    a: &[GVector],
    b: &[GVector],
    order: usize,
) -> VectorSeries {
    let ab = vbracket(lie, a, b, order);
    let ba = vbracket(lie, b, a, order);
    let a_ab = vbracket(lie, a, &ab, order);
    let b_ba = vbracket(lie, b, &ba, order);
    let b_a_ab = vbracket(lie, b, &a_ab, order);
    let zero = vec![GVector::zero(lie.dim()); order + 1];
    let mut out = vadd(&zero, &ab, &scalar::frac(1, 2));
    out = vadd(&out, &a_ab, &scalar::frac(1, 12));
    out = vadd(&out, &b_ba, &scalar::frac(1, 12));
    vadd(&out, &b_a_ab, &scalar::frac(-1, 24))
}

/// `BCH̄(ta, tb)` by powers of `t` up to `order ≤ 4`.
pub fn bch_bar(lie: &LieAlgebra, a: &GVector, b: &GVector, order: usize) -> Result<VectorSeries> {
    check_bch_order(order)?;
    let lift = |v: &GVector| {
        let mut s = vec![GVector::zero(lie.dim()); order + 1];
        if order >= 1 {
            s[1] = v.clone();
        }
        s
    };
    Ok(bch_bar_series(lie, &lift(a), &lift(b), order))
}

fn check_bch_order(order: usize) -> Result<()> {
    if order > 4 {
        return Err(Error::OutOfRange {
            what: "BCH order",
            value: order,
            min: 0,
            max: 4,
        });
    }
    Ok(())
}

/// Which projection enters the BCH recursion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BchForm {
    /// `χ = x + BCH̄(−R₊χ, x)`, from `exp(−χ₊) exp(x) = exp(−χ₋)`.
    Plus,
    /// `χ = x + BCH̄(−R₋χ, x)`.
    Minus,
}

/// Graded fixed point of the BCH recursion, to `t`-order `order ≤ 4`.
pub fn bch_fixed_point(
    lie: &LieAlgebra,
    r: &LinearEndo,
    x: &GVector,
    order: usize,
    form: BchForm,
) -> Result<VectorSeries> {
    check_bch_order(order)?;
    let (rp, rm) = r_plus_minus(r);
    let proj = match form {
        BchForm::Plus => rp,
        BchForm::Minus => rm,
    };
    let d = lie.dim();
    let mut xt = vec![GVector::zero(d); order + 1];
    if order >= 1 {
        xt[1] = x.clone();
    }
    let mut chi = xt.clone();
    for _ in 0..order {
        let a: VectorSeries = chi.iter().map(|c| -proj.apply_raw(c)).collect();
        chi = vadd(&xt, &bch_bar_series(lie, &a, &xt, order), &scalar::one());
    }
    Ok(chi)
}

/// Checks the BCH recursion (corrected form) against `chi`, and the r-matrix
/// forms of `χ₂`, `χ₃`.
pub fn bch_recursion_check(lie: &LieAlgebra, r: &LinearEndo, chi: &MagnusSeries) -> Result<Report> {
    let order = chi.order().min(4);
    let fixed = bch_fixed_point(lie, r, chi.x(), order, BchForm::Plus)?;
    let mut report = Report::default();
    for n in 1..=order {
        report.record("bch-recursion", &[n], &fixed[n] == chi.chi(n));
    }
    if order >= 2 {
        report.record("chi2-r-form", &[2], &chi2_r(lie, r, chi.x())? == chi.chi(2));
    }
    if order >= 3 {
        report.record("chi3-r-form", &[3], &chi3_r(lie, r, chi.x())? == chi.chi(3));
    }
    Ok(report)
}

/// Pre-Lie Magnus expansion `Ω = Σ (b_m/m!) L_{Ω▷}^m(x)` by graded fixed-point
/// iteration; `L_{a▷}(b) = a ▷ b`.
pub fn pre_lie_magnus(lifted: &Lifted, x: &GVector, order: usize) -> Result<VectorSeries> {
    let p = lifted.algebra();
    if !p.lie().is_abelian() {
        return Err(Error::Precondition(
            "pre-Lie Magnus needs an abelian bracket".into(),
        ));
    }
    let d = p.dim();
    let b = BernoulliTable::new(order);
    let mut xt = vec![GVector::zero(d); order + 1];
    xt[1.min(order)] = if order >= 1 {
        x.clone()
    } else {
        GVector::zero(d)
    };
    let mut omega = xt.clone();
    for _ in 0..order {
        let mut next = vec![GVector::zero(d); order + 1];
        let mut term = xt.clone();
        for m in 0..=order {
            let w = b.get(m) / scalar::factorial(m);
            next = vadd(&next, &term, &w);
            // term ← Ω ▷ term
            let mut t2 = vec![GVector::zero(d); order + 1];
            for (i, oi) in omega.iter().enumerate() {
                for (j, tj) in term.iter().enumerate().take(order + 1 - i) {
                    if !oi.is_zero() && !tj.is_zero() {
                        t2[i + j] += &p.product().apply_raw(oi, tj);
                    }
                }
            }
            term = t2;
        }
        omega = next;
    }
    Ok(omega)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{
        gl, gl_triangular, post_lie_from_r, pre_lie_vector_fields, PostLieAlgebra,
    };
    use std::sync::Arc;

    fn gl2() -> (Arc<LieAlgebra>, LinearEndo, Lifted) {
        let g = Arc::new(gl(2));
        let r = gl_triangular(2);
        let p = post_lie_from_r(&g, &r).unwrap();
        let l = Lifted::new(PostLieAlgebra::new(g.clone(), p).unwrap(), 6);
        (g, r, l)
    }

    #[test]
    fn bernoulli_convention() {
        let b = BernoulliTable::new(6);
        let want = [
            scalar::one(),
            scalar::frac(-1, 2),
            scalar::frac(1, 6),
            scalar::zero(),
            scalar::frac(-1, 30),
            scalar::zero(),
            scalar::frac(1, 42),
        ];
        for (n, w) in want.iter().enumerate() {
            assert_eq!(b.get(n), w);
        }
    }

    #[test]
    fn compositions_are_ordered_tuples() {
        assert_eq!(compositions(3, 2), vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(compositions(4, 4), vec![vec![1, 1, 1, 1]]);
        assert!(compositions(2, 3).is_empty());
        assert_eq!((1..=5).map(|k| compositions(5, k).len()).sum::<usize>(), 16);
    }

    #[test]
    fn low_orders_match_closed_forms() {
        let (g, r, l) = gl2();
        let x = GVector::from_ints(&[1, 2, -1, 3]);
        let chi = chi_series(&l, &x, 4).unwrap();
        assert_eq!(chi.chi(1), &x);
        assert_eq!(chi.chi(2), &chi2_closed(&l, &x).unwrap());
        assert_eq!(chi.chi(3), &chi3_closed(&l, &x).unwrap());
        assert_eq!(chi.chi(2), &chi2_r(&g, &r, &x).unwrap());
        assert_eq!(chi.chi(3), &chi3_r(&g, &r, &x).unwrap());
    }

    #[test]
    fn trivial_product_gives_x_only() {
        let g = Arc::new(gl(2));
        let l = Lifted::new(PostLieAlgebra::trivial(g).unwrap(), 6);
        let x = GVector::from_ints(&[1, 1, 2, 0]);
        let chi = chi_series(&l, &x, 5).unwrap();
        for n in 2..=5 {
            assert!(chi.chi(n).is_zero());
        }
    }

    #[test]
    fn order_guard() {
        let (_, _, l) = gl2();
        let x = GVector::from_ints(&[1, 0, 0, 0]);
        assert!(matches!(
            chi_series(&l, &x, 7),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            chi_series(&l, &x, 0),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn bch_bar_basics() {
        let g = gl(2);
        let a = GVector::from_ints(&[1, 2, 0, 1]);
        let zero = GVector::zero(4);
        assert!(bch_bar(&g, &a, &zero, 4)
            .unwrap()
            .iter()
            .all(GVector::is_zero));
        let b = GVector::from_ints(&[0, 1, 1, 0]);
        let s = bch_bar(&g, &a, &b, 4).unwrap();
        assert_eq!(s[2], g.bracket(&a, &b).unwrap().scale(&scalar::frac(1, 2)));
        assert!(bch_bar(&g, &a, &b, 5).is_err());
    }

    #[test]
    fn corrected_bch_recursion_matches_and_literal_form_fails_at_order_three() {
        let (g, r, l) = gl2();
        let x = GVector::from_ints(&[1, 2, -1, 3]);
        let chi = chi_series(&l, &x, 4).unwrap();
        assert!(bch_recursion_check(&g, &r, &chi).unwrap().passed());
        let literal = bch_fixed_point(&g, &r, &x, 4, BchForm::Minus).unwrap();
        assert_eq!(&literal[2], chi.chi(2));
        assert_ne!(&literal[3], chi.chi(3));
    }

    #[test]
    fn pre_lie_specialisation() {
        let pl = pre_lie_vector_fields(5);
        let l = Lifted::new(pl, 6);
        let x = GVector::from_ints(&[1, 1, 0, 2, 1]);
        let chi = chi_series(&l, &x, 5).unwrap();
        let omega = pre_lie_magnus(&l, &x, 5).unwrap();
        for n in 1..=5 {
            assert_eq!(&omega[n], chi.chi(n), "order {n}");
        }
    }

    #[test]
    fn partition_route_and_exp_identity() {
        let (_, _, l) = gl2();
        let l = Arc::new(l);
        let phi = PhiMap::new(l.clone());
        let x = GVector::from_ints(&[2, -1, 1, 0]);
        let a = chi_series(&l, &x, 5).unwrap();
        let b = chi_via_partitions(&phi, &x, 5).unwrap();
        assert_eq!(a, b);
        let (lhs, rhs) = exp_sides(&l, &a).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn ode_residual_vanishes() {
        let (_, _, l) = gl2();
        let x = GVector::from_ints(&[1, 3, -2, 1]);
        let chi = chi_series(&l, &x, 5).unwrap();
        assert!(ode_residual(&l, &chi).unwrap().is_zero());
        let mut bad = chi.clone();
        bad.chi[2] = bad.chi[2].scale(&scalar::int(2));
        assert!(!ode_residual(&l, &bad).unwrap().is_zero());
    }

    #[test]
    fn dexp_inverts_dexpinv() {
        let (_, _, l) = gl2();
        let env = l.env();
        let beta = Series::monomial(
            env.vector(&GVector::from_ints(&[0, 1, 1, 2])).unwrap(),
            1,
            4,
        );
        let y = Series::monomial(
            env.vector(&GVector::from_ints(&[1, 0, -1, 0])).unwrap(),
            0,
            4,
        );
        let back = dexp_star(&l, &beta, &dexpinv_star(&l, &beta, &y).unwrap()).unwrap();
        assert_eq!(back, y);
    }
}
