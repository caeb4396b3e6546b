//! JSON description of a Lie algebra with an optional r-matrix or explicit
//! post-Lie table.
//!
//! ```json
//! { "dim": 3, "labels": ["h", "e", "f"],
//!   "bracket": [[0, 1, [[1, "2"]]], [0, 2, [[2, "-2"]]], [1, 2, [[0, "1"]]]],
//!   "R": [["1","0","0"], ["0","1","0"], ["0","0","-1"]],
//!   "theta": "1" }
//! ```
//!
//! Omitted bracket entries are zero and `[j,i] = −[i,j]` is filled in when only
//! one of the pair is listed. `R` defaults to the identity, `theta` to 1.
//! Scalars are strings `"p/q"` or JSON integers. An optional `"post_lie"` list
//! in the same sparse format as `"bracket"` gives `e_i ▷ e_j` directly.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{post_lie_from_r, GVector, LieAlgebra, LinearEndo, PostLieProduct, Provenance};
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Int(i64),
    Text(String),
}

impl ScalarText {
    fn value(&self) -> Result<Scalar> {
        match self {
            ScalarText::Int(n) => Ok(scalar::int(*n)),
            ScalarText::Text(s) => scalar::parse(s),
        }
    }

    fn from_scalar(q: &Scalar) -> Self {
        ScalarText::Text(scalar::format(q))
    }
}

pub type SparseEntry = (usize, usize, Vec<(usize, ScalarText)>);

/// The on-disk form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default)]
    pub bracket: Vec<SparseEntry>,
    #[serde(rename = "R", default, skip_serializing_if = "Option::is_none")]
    pub r: Option<Vec<Vec<ScalarText>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<ScalarText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub post_lie: Option<Vec<SparseEntry>>,
}

/// A parsed algebra file. The Lie algebra is shape-checked but its axioms are
/// not enforced, so that validation can report failures instead of aborting.
#[derive(Clone, Debug)]
pub struct AlgebraConfig {
    pub lie: LieAlgebra,
    pub r: LinearEndo,
    pub theta: Scalar,
    /// Explicit `▷` table, if the file provides one.
    pub explicit_product: Option<PostLieProduct>,
}

fn sparse_table(
    dim: usize,
    entries: &[SparseEntry],
    what: &str,
) -> Result<BTreeMap<(usize, usize), GVector>> {
    let mut map = BTreeMap::new();
    for (i, j, terms) in entries {
        for &idx in [i, j].into_iter().chain(terms.iter().map(|(k, _)| k)) {
            if idx >= dim {
                return Err(Error::IndexOutOfRange { index: idx, dim });
            }
        }
        let mut v = GVector::zero(dim);
        for (k, c) in terms {
            v.0[*k] += c.value()?;
        }
        if map.insert((*i, *j), v).is_some() {
            return Err(Error::Parse(format!("duplicate {what} entry ({i}, {j})")));
        }
    }
    Ok(map)
}

fn sparse_entries(
    rows: impl Fn(usize, usize) -> GVector,
    dim: usize,
    upper_only: bool,
) -> Vec<SparseEntry> {
    let mut out = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            if upper_only && j <= i {
                continue;
            }
            let v = rows(i, j);
            if !v.is_zero() {
                let terms = v
                    .support()
                    .map(|(k, c)| (k, ScalarText::from_scalar(c)))
                    .collect();
                out.push((i, j, terms));
            }
        }
    }
    out
}

impl AlgebraFile {
    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Serializes a Lie algebra with an r-matrix (listing `[i,j]` for `i < j`).
    pub fn from_parts(lie: &LieAlgebra, r: Option<&LinearEndo>, theta: Option<&Scalar>) -> Self {
        let d = lie.dim();
        AlgebraFile {
            dim: d,
            labels: Some(lie.labels().to_vec()),
            bracket: sparse_entries(|i, j| lie.bracket_basis(i, j).clone(), d, true),
            r: r.map(|r| {
                r.rows()
                    .iter()
                    .map(|row| row.iter().map(ScalarText::from_scalar).collect())
                    .collect()
            }),
            theta: theta.map(ScalarText::from_scalar),
            post_lie: None,
        }
    }

    pub fn with_product(mut self, p: &PostLieProduct) -> Self {
        self.post_lie = Some(sparse_entries(
            |i, j| p.basis(i, j).clone(),
            self.dim,
            false,
        ));
        self
    }

    pub fn into_config(self) -> Result<AlgebraConfig> {
        let d = self.dim;
        if d == 0 {
            return Err(Error::Parse("dim must be positive".into()));
        }
        let labels = match self.labels {
            Some(l) if l.len() != d => {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: l.len(),
                })
            }
            Some(l) => l,
            None => (0..d).map(|i| format!("e{i}")).collect(),
        };
        let given = sparse_table(d, &self.bracket, "bracket")?;
        let mut rows = vec![vec![GVector::zero(d); d]; d];
        for (&(i, j), v) in &given {
            rows[i][j] = v.clone();
            if !given.contains_key(&(j, i)) {
                rows[j][i] = -v;
            }
        }
        let lie = LieAlgebra::new_unchecked(labels, rows)?;
        let r = match self.r {
            None => LinearEndo::identity(d),
            Some(rows) => {
                if rows.len() != d {
                    return Err(Error::DimensionMismatch {
                        expected: d,
                        got: rows.len(),
                    });
                }
                let m = rows
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(ScalarText::value)
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                LinearEndo::new(m)?
            }
        };
        let theta = match self.theta {
            None => scalar::one(),
            Some(t) => t.value()?,
        };
        let explicit_product = match self.post_lie {
            None => None,
            Some(entries) => {
                let map = sparse_table(d, &entries, "post_lie")?;
                let mut table = vec![GVector::zero(d); d * d];
                for ((i, j), v) in map {
                    table[i * d + j] = v;
                }
                Some(PostLieProduct::new(d, table, Provenance::Explicit)?)
            }
        };
        Ok(AlgebraConfig {
            lie,
            r,
            theta,
            explicit_product,
        })
    }
}

impl AlgebraConfig {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        AlgebraFile::load(path)?.into_config()
    }

    pub fn parse(json: &str) -> Result<Self> {
        AlgebraFile::parse(json)?.into_config()
    }

    /// The explicit table if present, otherwise `x ▷ y = [R₋x, y]`.
    pub fn product(&self) -> Result<PostLieProduct> {
        match &self.explicit_product {
            Some(p) => Ok(p.clone()),
            None => post_lie_from_r(&self.lie, &self.r),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{gl, gl_triangular, sl};

    const SL2: &str = r#"{ "dim": 3, "labels": ["h", "e", "f"],
        "bracket": [[0, 1, [[1, "2"]]], [0, 2, [[2, "-2"]]], [1, 2, [[0, 1]]]] }"#;

    #[test]
    fn parses_sparse_brackets_and_fills_antisymmetry() {
        let cfg = AlgebraConfig::parse(SL2).unwrap();
        assert_eq!(cfg.lie, sl(2));
        assert_eq!(cfg.r, LinearEndo::identity(3));
        assert_eq!(cfg.theta, scalar::one());
        assert!(cfg.product().unwrap().is_zero());
    }

    #[test]
    fn round_trips_through_json() {
        let g = gl(2);
        let r = gl_triangular(2);
        let file = AlgebraFile::from_parts(&g, Some(&r), Some(&scalar::one()));
        let cfg = AlgebraConfig::parse(&file.to_json()).unwrap();
        assert_eq!(cfg.lie, g);
        assert_eq!(cfg.r, r);

        let p = post_lie_from_r(&g, &r).unwrap();
        let cfg = AlgebraFile::parse(&file.with_product(&p).to_json())
            .unwrap()
            .into_config()
            .unwrap();
        assert_eq!(
            cfg.explicit_product.as_ref().map(|q| q.basis(2, 1)),
            Some(p.basis(2, 1))
        );
    }

    #[test]
    fn input_errors() {
        assert!(matches!(
            AlgebraConfig::parse("{ not json"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            AlgebraConfig::parse(r#"{"dim": 2, "bracket": [[0, 5, []]]}"#),
            Err(Error::IndexOutOfRange { index: 5, dim: 2 })
        ));
        assert!(matches!(
            AlgebraConfig::parse(r#"{"dim": 1, "theta": "1/0"}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            AlgebraConfig::parse(r#"{"dim": 2, "R": [["1"]]}"#),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            AlgebraConfig::parse(r#"{"dim": 2, "bracket": [[0, 1, []], [0, 1, []]]}"#),
            Err(Error::Parse(_))
        ));
    }
}
