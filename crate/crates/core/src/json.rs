//! File formats: algebras (by brackets or by 3-form) and skew maps.
//!
//! ```json
//! { "dim": 4,
//!   "gram": [["0","0","0","1"], …],
//!   "brackets": [ {"i": 1, "j": 2, "c": ["-1","0","0","0"]}, … ] }
//! ```
//!
//! The body may be `"threeform": [ {"ijk": [i,j,k], "c": "…"}, … ]` instead
//! of `"brackets"`. Skew maps are `{ "dim": n, "gram": […], "mat": […] }`.
//! Indices are zero-based; scalars are strings.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{brackets_from_threeform, AltForm};
use crate::linalg::{Mat, QuadSpace, SkewMap};
use crate::qla::Qla;
use crate::scalar::GaussScalar;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BracketEntry {
    i: usize,
    j: usize,
    c: Vec<GaussScalar>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ThreeformEntry {
    ijk: [usize; 3],
    c: GaussScalar,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QlaFile {
    dim: usize,
    gram: Vec<Vec<GaussScalar>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    brackets: Option<Vec<BracketEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    threeform: Option<Vec<ThreeformEntry>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SkewFile {
    dim: usize,
    gram: Vec<Vec<GaussScalar>>,
    mat: Vec<Vec<GaussScalar>>,
}

fn format_err(e: serde_json::Error) -> Error {
    Error::Format(e.to_string())
}

fn square(name: &str, dim: usize, rows: Vec<Vec<GaussScalar>>) -> Result<Mat> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(Error::Format(format!("{name} must be {dim}x{dim}")));
    }
    if dim == 0 {
        return Ok(Mat::zeros(0, 0));
    }
    Ok(Mat::from_rows(rows))
}

fn rows(m: &Mat) -> Vec<Vec<GaussScalar>> {
    m.row_vecs()
}

fn space_from(dim: usize, gram: Vec<Vec<GaussScalar>>) -> Result<QuadSpace> {
    QuadSpace::new(square("gram", dim, gram)?).map_err(|e| Error::Format(e.to_string()))
}

pub fn qla_from_json(text: &str) -> Result<Qla> {
    let f: QlaFile = serde_json::from_str(text).map_err(format_err)?;
    let space = space_from(f.dim, f.gram)?;
    let n = f.dim;
    let g = match (f.brackets, f.threeform) {
        (Some(b), None) => {
            for e in &b {
                if e.i >= e.j || e.j >= n {
                    return Err(Error::Format(format!(
                        "bracket entry needs i < j < {n}, got ({}, {})",
                        e.i, e.j
                    )));
                }
            }
            Qla::from_brackets(space, b.into_iter().map(|e| (e.i, e.j, e.c)))
        }
        (None, Some(t)) => {
            for e in &t {
                let [i, j, k] = e.ijk;
                if !(i < j && j < k && k < n) {
                    return Err(Error::Format(format!(
                        "threeform entry needs i < j < k < {n}, got {:?}",
                        e.ijk
                    )));
                }
            }
            let form = AltForm::from_terms(n, 3, t.into_iter().map(|e| (e.ijk.to_vec(), e.c)))?;
            brackets_from_threeform(&space, &form)
        }
        (None, None) => Ok(Qla::abelian(space)),
        (Some(_), Some(_)) => Err(Error::Format(
            "give either \"brackets\" or \"threeform\", not both".into(),
        )),
    };
    g.map_err(|e| match e {
        Error::DimensionMismatch(m) | Error::Domain(m) => Error::Format(m),
        other => other,
    })
}

/// Bracket form of the algebra, pretty-printed.
pub fn qla_to_json(g: &Qla) -> String {
    let f = QlaFile {
        dim: g.dim(),
        gram: rows(g.space().gram()),
        brackets: Some(
            g.brackets()
                .into_iter()
                .map(|(i, j, c)| BracketEntry { i, j, c })
                .collect(),
        ),
        threeform: None,
    };
    serde_json::to_string_pretty(&f).expect("serializable")
}

/// 3-form body of the algebra, pretty-printed.
pub fn qla_to_json_threeform(g: &Qla) -> Result<String> {
    let form = g.threeform()?;
    let f = QlaFile {
        dim: g.dim(),
        gram: rows(g.space().gram()),
        brackets: None,
        threeform: Some(
            form.terms()
                .map(|(k, c)| ThreeformEntry {
                    ijk: [k[0], k[1], k[2]],
                    c: c.clone(),
                })
                .collect(),
        ),
    };
    Ok(serde_json::to_string_pretty(&f).expect("serializable"))
}

pub fn skew_from_json(text: &str) -> Result<SkewMap> {
    let f: SkewFile = serde_json::from_str(text).map_err(format_err)?;
    let space = space_from(f.dim, f.gram)?;
    let mat = square("mat", f.dim, f.mat)?;
    SkewMap::new(space, mat)
}

pub fn skew_to_json(c: &SkewMap) -> String {
    let f = SkewFile {
        dim: c.dim(),
        gram: rows(c.space().gram()),
        mat: rows(c.mat()),
    };
    serde_json::to_string_pretty(&f).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_file_roundtrip() {
        let text = r#"{"dim":3,"gram":[["-2","0","0"],["0","-2","0"],["0","0","-2"]],
            "brackets":[{"i":0,"j":1,"c":["0","0","1"]},{"i":1,"j":2,"c":["1","0","0"]},
                        {"i":0,"j":2,"c":["0","-1","0"]}]}"#;
        let g = qla_from_json(text).unwrap();
        assert!(g.check_jacobi());
        assert_eq!(qla_from_json(&qla_to_json(&g)).unwrap(), g);
        assert_eq!(
            qla_from_json(&qla_to_json_threeform(&g).unwrap()).unwrap(),
            g
        );
    }

    #[test]
    fn malformed_files() {
        assert!(qla_from_json("{").unwrap_err().is_parse());
        let bad_scalar = r#"{"dim":1,"gram":[["1/0"]]}"#;
        assert!(qla_from_json(bad_scalar).unwrap_err().is_parse());
        let bad_order =
            r#"{"dim":2,"gram":[["1","0"],["0","1"]],"brackets":[{"i":1,"j":0,"c":["0","0"]}]}"#;
        assert!(qla_from_json(bad_order).unwrap_err().is_parse());
        let singular = r#"{"dim":1,"gram":[["0"]]}"#;
        assert!(qla_from_json(singular).unwrap_err().is_parse());
    }

    #[test]
    fn skew_file() {
        let text = r#"{"dim":2,"gram":[["0","1"],["1","0"]],"mat":[["1","0"],["0","-1"]]}"#;
        let c = skew_from_json(text).unwrap();
        assert_eq!(skew_from_json(&skew_to_json(&c)).unwrap(), c);
        let bad = r#"{"dim":2,"gram":[["0","1"],["1","0"]],"mat":[["1","0"],["0","1"]]}"#;
        assert!(matches!(skew_from_json(bad), Err(Error::NotSkew)));
    }
}
