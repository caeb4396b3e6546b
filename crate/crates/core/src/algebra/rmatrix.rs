//! Classical r-matrices: the modified classical Yang–Baxter equation, the maps
//! `R±`, the double bracket and the induced post-Lie product `x ▷ y = [R₋x, y]`.

use super::{GVector, LieAlgebra, LinearEndo, PostLieProduct, Provenance, Report};
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

/// Failures are tagged `MCYBE` (per basis pair) and `modYB` (per basis triple).
pub type McybeReport = Report;

fn check_endo(lie: &LieAlgebra, r: &LinearEndo) -> Result<()> {
    if r.dim() != lie.dim() {
        return Err(Error::DimensionMismatch {
            expected: lie.dim(),
            got: r.dim(),
        });
    }
    Ok(())
}

/// `B_R(x,y) = R([Rx,y] + [x,Ry]) − [Rx,Ry]`
fn b_r(lie: &LieAlgebra, r: &LinearEndo, x: &GVector, y: &GVector) -> GVector {
    let (rx, ry) = (r.apply_raw(x), r.apply_raw(y));
    let inner = &lie.bracket_raw(&rx, y) + &lie.bracket_raw(x, &ry);
    &r.apply_raw(&inner) - &lie.bracket_raw(&rx, &ry)
}

/// Checks `B_R(x,y) = θ[x,y]` on all basis pairs and the weaker condition
/// `[B_R(x,y),z] + [B_R(z,x),y] + [B_R(y,z),x] = 0` on all basis triples.
pub fn check_mcybe(lie: &LieAlgebra, r: &LinearEndo, theta: &Scalar) -> McybeReport {
    let d = lie.dim();
    let mut report = Report::default();
    if r.dim() != d {
        report.record("dimension", &[d, r.dim()], false);
        return report;
    }
    let e: Vec<GVector> = (0..d).map(|i| lie.basis(i)).collect();
    let b: Vec<Vec<GVector>> = e
        .iter()
        .map(|x| e.iter().map(|y| b_r(lie, r, x, y)).collect())
        .collect();
    for i in 0..d {
        for j in 0..d {
            let ok = b[i][j] == lie.bracket_basis(i, j).scale(theta);
            report.record("MCYBE", &[i, j], ok);
        }
    }
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let mut s = lie.bracket_raw(&b[i][j], &e[k]);
                s += &lie.bracket_raw(&b[k][i], &e[j]);
                s += &lie.bracket_raw(&b[j][k], &e[i]);
                report.record("modYB", &[i, j, k], s.is_zero());
            }
        }
    }
    report
}

/// `R± = ½(R ± id)`
pub fn r_plus_minus(r: &LinearEndo) -> (LinearEndo, LinearEndo) {
    let id = LinearEndo::identity(r.dim());
    let half = scalar::frac(1, 2);
    (r.add(&id).scale(&half), r.sub(&id).scale(&half))
}

/// `[x,y]_R = ½([Rx,y] + [x,Ry])`
pub fn double_bracket(
    lie: &LieAlgebra,
    r: &LinearEndo,
    x: &GVector,
    y: &GVector,
) -> Result<GVector> {
    check_endo(lie, r)?;
    let s = &lie.bracket(&r.apply(x)?, y)? + &lie.bracket_raw(x, &r.apply_raw(y));
    Ok(s.scale(&scalar::frac(1, 2)))
}

/// `x ▷ y = [R₋x, y]`
pub fn post_lie_from_r(lie: &LieAlgebra, r: &LinearEndo) -> Result<PostLieProduct> {
    check_endo(lie, r)?;
    let (_, r_minus) = r_plus_minus(r);
    let d = lie.dim();
    let mut table = Vec::with_capacity(d * d);
    for i in 0..d {
        let rx = r_minus.apply_raw(&lie.basis(i));
        for j in 0..d {
            table.push(lie.bracket_raw(&rx, &lie.basis(j)));
        }
    }
    PostLieProduct::new(d, table, Provenance::DerivedFromR)
}

/// The right post-Lie product `x ◁ y = [R₊x, y]`.
pub fn right_product(
    lie: &LieAlgebra,
    r: &LinearEndo,
    x: &GVector,
    y: &GVector,
) -> Result<GVector> {
    check_endo(lie, r)?;
    let (r_plus, _) = r_plus_minus(r);
    lie.bracket(&r_plus.apply(x)?, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{gl, gl_triangular, sl, sl_triangular, validate_post_lie};
    use crate::scalar::{int, one};

    fn label(g: &LieAlgebra, s: &str) -> GVector {
        g.basis(g.index_of(s).unwrap())
    }

    #[test]
    fn triangular_splitting_solves_mcybe() {
        let g = gl(2);
        let report = check_mcybe(&g, &gl_triangular(2), &one());
        assert!(report.passed(), "{:?}", report.failures);
        assert_eq!(report.checked, 16 + 64);
    }

    #[test]
    fn identity_solves_mcybe_only_for_theta_one() {
        let g = sl(2);
        let id = LinearEndo::identity(3);
        assert!(check_mcybe(&g, &id, &one()).passed());
        let report = check_mcybe(&g, &id, &int(2));
        assert!(report.failures.iter().any(|f| f.identity == "MCYBE"));
    }

    #[test]
    fn zero_map_fails_on_noncommuting_pairs() {
        let g = sl(2);
        let report = check_mcybe(&g, &LinearEndo::zero(3), &one());
        let pairs: Vec<&[usize]> = report
            .failures
            .iter()
            .filter(|f| f.identity == "MCYBE")
            .map(|f| f.basis.as_slice())
            .collect();
        // exactly the ordered pairs with nonzero bracket
        assert_eq!(pairs.len(), 6);
        assert!(!pairs.contains(&[0usize, 0].as_slice()));
    }

    #[test]
    fn r_plus_minus_relations() {
        let r = gl_triangular(2);
        let (rp, rm) = r_plus_minus(&r);
        assert_eq!(rp.sub(&rm), LinearEndo::identity(4));
        assert_eq!(rp.add(&rm), r);
        // R₋ = −π₋: only E21 survives, with sign −1
        let g = gl(2);
        assert_eq!(rm.apply(&label(&g, "E21")).unwrap(), -label(&g, "E21"));
        assert!(rm.apply(&label(&g, "E12")).unwrap().is_zero());
        assert!(rm.apply(&label(&g, "E11")).unwrap().is_zero());
        // involutive R: R₊ and −R₋ are idempotent, so R₋∘R₋ = −R₋
        assert!(rp.is_idempotent());
        assert_eq!(rm.compose(&rm), rm.scale(&int(-1)));

        let (ip, im) = r_plus_minus(&LinearEndo::identity(3));
        assert_eq!(ip, LinearEndo::identity(3));
        assert_eq!(im, LinearEndo::zero(3));
    }

    #[test]
    fn gl2_triangular_post_lie_values() {
        let g = gl(2);
        let p = post_lie_from_r(&g, &gl_triangular(2)).unwrap();
        let e12 = label(&g, "E12");
        for j in 0..4 {
            assert!(p.apply(&e12, &g.basis(j)).unwrap().is_zero());
        }
        // E21 ▷ E12 = −[E21, E12] = E11 − E22
        let got = p.apply(&label(&g, "E21"), &e12).unwrap();
        assert_eq!(got, &label(&g, "E11") - &label(&g, "E22"));
    }

    #[test]
    fn identity_r_gives_trivial_product() {
        let g = sl(3);
        let p = post_lie_from_r(&g, &LinearEndo::identity(8)).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn double_bracket_matches_post_lie_bracket() {
        let g = sl(3);
        let r = sl_triangular(3);
        let p = post_lie_from_r(&g, &r).unwrap();
        assert!(validate_post_lie(&g, &p).passed());
        for i in 0..8 {
            for j in 0..8 {
                let (x, y) = (g.basis(i), g.basis(j));
                let bar = &(&p.apply(&x, &y).unwrap() - &p.apply(&y, &x).unwrap())
                    + &g.bracket(&x, &y).unwrap();
                assert_eq!(double_bracket(&g, &r, &x, &y).unwrap(), bar);
                let lhs = right_product(&g, &r, &x, &y).unwrap();
                assert_eq!(lhs, &p.apply(&x, &y).unwrap() + &g.bracket(&x, &y).unwrap());
            }
        }
    }

    #[test]
    fn double_bracket_of_identity_is_the_bracket() {
        let g = gl(2);
        let id = LinearEndo::identity(4);
        for i in 0..4 {
            for j in 0..4 {
                let (x, y) = (g.basis(i), g.basis(j));
                assert_eq!(
                    double_bracket(&g, &id, &x, &y).unwrap(),
                    g.bracket(&x, &y).unwrap()
                );
            }
            let x = g.basis(i);
            assert!(double_bracket(&g, &gl_triangular(2), &x, &x)
                .unwrap()
                .is_zero());
        }
    }
}
