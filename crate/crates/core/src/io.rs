//! JSON group and character files, tree reports and Graphviz output.
//!
//! A group file looks like
//!
//! ```json
//! {
//!   "ring": {"kind": "unramified-p-adic", "p": 5, "f": 1, "precision": 12},
//!   "generators": [
//!     {"entries": [[[1], [1]], [[0], [1]]]},
//!     {"entries": [[1, 0], [625, 1]], "denom_shift": 0}
//!   ],
//!   "label": "example"
//! }
//! ```
//!
//! Ring elements are little-endian base-`p` digit arrays (index `i*f + j`
//! holds digit `i` of the coefficient of `u^j`); plain integers are accepted
//! as a shorthand. A generator may also be given as the bare 2x2 array.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::characters::{Certificate, CharacterMod, CharacterPair};
use crate::coeffring::{Elem, Ring, RingSpec};
use crate::error::{Error, Result};
use crate::matlat::{LatticeClass, Mat2};
use crate::subtree::{GroupInput, Shape, ShapeReport, StableSubtree};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemJson {
    Int(i64),
    Digits(Vec<u64>),
}

impl ElemJson {
    pub fn to_elem(&self, ring: &Ring) -> Result<Elem> {
        match self {
            ElemJson::Int(v) => Ok(ring.from_int(*v)),
            ElemJson::Digits(d) => ring.from_digits(d),
        }
    }

    pub fn from_elem(x: &Elem) -> ElemJson {
        let mut d = x.digits();
        while d.last() == Some(&0) {
            d.pop();
        }
        ElemJson::Digits(d)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixJson {
    Full {
        entries: [[ElemJson; 2]; 2],
        #[serde(default)]
        denom_shift: u32,
    },
    Bare([[ElemJson; 2]; 2]),
}

impl MatrixJson {
    pub fn to_mat(&self, ring: &Ring) -> Result<Mat2> {
        let (e, shift) = match self {
            MatrixJson::Full {
                entries,
                denom_shift,
            } => (entries, *denom_shift),
            MatrixJson::Bare(entries) => (entries, 0),
        };
        Ok(Mat2::new(
            e[0][0].to_elem(ring)?,
            e[0][1].to_elem(ring)?,
            e[1][0].to_elem(ring)?,
            e[1][1].to_elem(ring)?,
        )
        .with_shift(shift))
    }

    pub fn from_mat(m: &Mat2) -> MatrixJson {
        let f = ElemJson::from_elem;
        MatrixJson::Full {
            entries: [[f(&m.a), f(&m.b)], [f(&m.c), f(&m.d)]],
            denom_shift: m.denom_shift,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupFile {
    pub ring: RingSpec,
    pub generators: Vec<MatrixJson>,
    #[serde(default)]
    pub label: String,
}

impl GroupFile {
    pub fn to_group(&self) -> Result<GroupInput> {
        let ring = Ring::new(self.ring.clone())?;
        let gens = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, m)| {
                m.to_mat(&ring)
                    .map_err(|e| Error::InvalidInput(format!("generators[{}]: {}", i, e)))
            })
            .collect::<Result<Vec<_>>>()?;
        GroupInput::new(&ring, gens, &self.label)
    }

    pub fn from_group(g: &GroupInput) -> GroupFile {
        GroupFile {
            ring: g.ring.spec().clone(),
            generators: g.generators.iter().map(MatrixJson::from_mat).collect(),
            label: g.label.clone(),
        }
    }
}

/// Parse error with the line and column reported by serde.
#[derive(Debug, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        ParseError {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

pub fn parse_group_file(text: &str) -> std::result::Result<GroupFile, ParseError> {
    Ok(serde_json::from_str(text)?)
}

pub fn group_to_json(g: &GroupInput) -> String {
    serde_json::to_string_pretty(&GroupFile::from_group(g)).expect("serializable")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CharacterJson {
    pub n: u32,
    pub values: Vec<ElemJson>,
    #[serde(default)]
    pub certificate: Option<CertificateJson>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct CertificateJson {
    #[serde(rename = "L", default)]
    pub word_depth: usize,
    #[serde(rename = "W", default)]
    pub word_count: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub pass: Option<bool>,
}

/// A character pair file: `{"chi1": {n, values, certificate?}, "chi2": ...}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairFile {
    pub chi1: CharacterJson,
    pub chi2: CharacterJson,
}

impl CharacterJson {
    pub fn to_character(&self, ring: &Ring) -> Result<CharacterMod> {
        let rn = ring.with_precision(self.n)?;
        let vals = self
            .values
            .iter()
            .map(|v| v.to_elem(&rn))
            .collect::<Result<Vec<_>>>()?;
        let mut c = CharacterMod::new(self.n, &vals)?;
        if let Some(cert) = &self.certificate {
            c.certificate = Certificate {
                word_depth: cert.word_depth,
                word_count: cert.word_count,
                seed: cert.seed,
                pass: cert.pass,
                harvested: false,
            };
        }
        Ok(c)
    }

    pub fn from_character(c: &CharacterMod) -> CharacterJson {
        CharacterJson {
            n: c.n,
            values: c.values.iter().map(ElemJson::from_elem).collect(),
            certificate: Some(CertificateJson {
                word_depth: c.certificate.word_depth,
                word_count: c.certificate.word_count,
                seed: c.certificate.seed,
                pass: c.certificate.pass,
            }),
        }
    }
}

impl PairFile {
    pub fn to_pair(&self, group: &GroupInput) -> Result<CharacterPair> {
        let (a, b) = (
            self.chi1.to_character(&group.ring)?,
            self.chi2.to_character(&group.ring)?,
        );
        if a.values.len() != group.len() {
            return Err(Error::InvalidInput(format!(
                "{} character values for {} generators",
                a.values.len(),
                group.len()
            )));
        }
        CharacterPair::new(a, b)
    }

    pub fn from_pair(p: &CharacterPair) -> PairFile {
        PairFile {
            chi1: CharacterJson::from_character(&p.chi1),
            chi2: CharacterJson::from_character(&p.chi2),
        }
    }
}

pub fn parse_pair_file(text: &str) -> std::result::Result<PairFile, ParseError> {
    Ok(serde_json::from_str(text)?)
}

/// `{vertices, edges, shape, d, r, nerve}` for a computed subtree.
#[derive(Debug, Clone, Serialize)]
pub struct TreeReport {
    pub vertices: Vec<String>,
    pub edges: Vec<(usize, usize)>,
    pub shape: Shape,
    pub d: Option<u32>,
    pub r: u32,
    pub nerve: Vec<String>,
    pub truncated: bool,
    pub cap: u32,
}

/// Labels are taken after mapping through `relabel`, e.g. from model to
/// original coordinates.
pub fn tree_report(
    t: &StableSubtree,
    shape: &ShapeReport,
    relabel: &dyn Fn(&LatticeClass) -> Result<LatticeClass>,
) -> Result<TreeReport> {
    let label = |x: &LatticeClass| relabel(x).map(|y| y.label());
    Ok(TreeReport {
        vertices: t.vertices.iter().map(label).collect::<Result<_>>()?,
        edges: t.edges(),
        shape: shape.shape,
        d: shape.d,
        r: shape.r,
        nerve: shape.nerve.iter().map(label).collect::<Result<_>>()?,
        truncated: t.truncated,
        cap: t.cap,
    })
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz text: nerve vertices are filled boxes, leaves are double circles.
pub fn to_dot(report: &TreeReport, name: &str) -> String {
    let mut degree = vec![0usize; report.vertices.len()];
    for &(a, b) in &report.edges {
        degree[a] += 1;
        degree[b] += 1;
    }
    let mut out = String::new();
    writeln!(out, "graph \"{}\" {{", escape(name)).unwrap();
    writeln!(out, "  node [shape=ellipse, fontsize=10];").unwrap();
    for (i, v) in report.vertices.iter().enumerate() {
        let mut attrs = vec![format!("label=\"{}\"", escape(v))];
        if report.nerve.contains(v) {
            attrs.push("shape=box".into());
            attrs.push("style=filled".into());
            attrs.push("fillcolor=lightblue".into());
        } else if degree[i] <= 1 {
            attrs.push("shape=doublecircle".into());
        }
        writeln!(out, "  v{} [{}];", i, attrs.join(", ")).unwrap();
    }
    for &(a, b) in &report.edges {
        writeln!(out, "  v{} -- v{};", a, b).unwrap();
    }
    out.push_str("}\n");
    out
}
