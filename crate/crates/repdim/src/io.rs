//! JSON files for algebras, modules and lattices. Scalars are decimal
//! strings ("3", "-7/2"); integers are accepted on input.

use crate::algebra::{tensor, Algebra, AlgebraError, Arrow, Quiver, Relation, DEFAULT_MAX_LEN};
use crate::exactlin::{FieldError, FieldSpec, Matrix, Scalar};
use crate::modcat::{ModError, Module};
use crate::odim::{LPoly, Lattice, OdimError, PolyMatrix};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::Path;

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("cannot read {0}: {1}")]
    Read(String, std::io::Error),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Module(#[from] ModError),
    #[error(transparent)]
    Lattice(#[from] OdimError),
}

/// A scalar written as a string or an integer.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum ScalarText {
    Text(String),
    Int(i64),
}

impl ScalarText {
    fn parse(&self, field: FieldSpec) -> Result<Scalar, IoError> {
        Ok(match self {
            ScalarText::Text(s) => field.parse_scalar(s)?,
            ScalarText::Int(n) => field.from_i64(*n),
        })
    }

    fn of(s: &Scalar) -> ScalarText {
        ScalarText::Text(s.to_string())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ArrowFile {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermFile {
    pub coeff: ScalarText,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub field: String,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowFile>,
    #[serde(default)]
    pub relations: Vec<Vec<TermFile>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_path_length: Option<usize>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub special_biserial: bool,
    /// When present, the algebra is rebuilt as the tensor product of these.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub factors: Vec<AlgebraFile>,
}

fn parse_field(s: &str) -> Result<FieldSpec, IoError> {
    Ok(s.parse::<FieldSpec>()?)
}

impl AlgebraFile {
    pub fn from_algebra(a: &Algebra) -> AlgebraFile {
        let q = &a.quiver;
        let arrows = q
            .arrows
            .iter()
            .map(|ar| ArrowFile { name: ar.name.clone(), source: q.vertices[ar.source].clone(), target: q.vertices[ar.target].clone() })
            .collect();
        let relations = a
            .relations
            .iter()
            .map(|r| {
                r.terms
                    .iter()
                    .map(|(c, p)| TermFile { coeff: ScalarText::of(c), path: p.iter().map(|&i| q.arrows[i].name.clone()).collect() })
                    .collect()
            })
            .collect();
        let factors = match a.tensor_info() {
            Some(t) => t.factors.iter().map(AlgebraFile::from_algebra).collect(),
            None => vec![],
        };
        AlgebraFile {
            field: a.field.to_string(),
            vertices: q.vertices.clone(),
            arrows,
            relations,
            max_path_length: (a.max_len != DEFAULT_MAX_LEN).then_some(a.max_len),
            special_biserial: a.special_biserial_flag,
            factors,
        }
    }

    /// Builds the algebra, over `field` when given instead of the file's own.
    pub fn to_algebra(&self, field: Option<FieldSpec>) -> Result<Algebra, IoError> {
        let field = match field {
            Some(f) => f,
            None => parse_field(&self.field)?,
        };
        let built = if self.factors.is_empty() {
            self.presentation(field)?
        } else {
            let mut it = self.factors.iter();
            let first = it.next().expect("nonempty").to_algebra(Some(field))?;
            let t = it.try_fold(first, |acc, f| Ok::<_, IoError>(tensor(&acc, &f.to_algebra(Some(field))?)?))?;
            let names: Vec<&str> = t.quiver.arrows.iter().map(|a| a.name.as_str()).collect();
            let listed: Vec<&str> = self.arrows.iter().map(|a| a.name.as_str()).collect();
            if t.quiver.vertices != self.vertices || names != listed {
                return Err(IoError::Malformed("quiver does not match the tensor product of the factors".into()));
            }
            t
        };
        Ok(built.with_special_biserial_flag(self.special_biserial))
    }

    fn presentation(&self, field: FieldSpec) -> Result<Algebra, IoError> {
        let vertex = |n: &str| {
            self.vertices.iter().position(|v| v == n).ok_or_else(|| IoError::Malformed(format!("unknown vertex `{n}`")))
        };
        let arrows = self
            .arrows
            .iter()
            .map(|a| Ok(Arrow { name: a.name.clone(), source: vertex(&a.source)?, target: vertex(&a.target)? }))
            .collect::<Result<Vec<_>, IoError>>()?;
        let quiver = Quiver::new(self.vertices.clone(), arrows)?;
        let mut relations = Vec::new();
        for r in &self.relations {
            let mut terms = Vec::new();
            for t in r {
                let path = t
                    .path
                    .iter()
                    .map(|n| quiver.arrow_index(n).ok_or_else(|| IoError::Malformed(format!("unknown arrow `{n}`"))))
                    .collect::<Result<Vec<_>, _>>()?;
                let c = t.coeff.parse(field)?;
                if !c.is_zero() {
                    terms.push((c, path));
                }
            }
            relations.push(Relation::new(terms));
        }
        Ok(Algebra::build(quiver, field, relations, self.max_path_length.unwrap_or(DEFAULT_MAX_LEN))?)
    }
}

fn read(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|e| IoError::Read(path.display().to_string(), e))
}

pub fn load_algebra(path: &Path, field: Option<FieldSpec>) -> Result<Algebra, IoError> {
    let f: AlgebraFile = serde_json::from_str(&read(path)?)?;
    f.to_algebra(field)
}

pub fn algebra_json(a: &Algebra) -> String {
    serde_json::to_string_pretty(&AlgebraFile::from_algebra(a)).expect("serializable") + "\n"
}

/// SHA-256 of the canonical JSON form.
pub fn algebra_hash(a: &Algebra) -> String {
    hex::encode(Sha256::digest(algebra_json(a).as_bytes()))
}

fn matrix_text(m: &Matrix) -> Vec<Vec<ScalarText>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(ScalarText::of).collect()).collect()
}

fn matrix_of(field: FieldSpec, rows: usize, cols: usize, text: &[Vec<ScalarText>], what: &str) -> Result<Matrix, IoError> {
    if text.len() != rows || text.iter().any(|r| r.len() != cols) {
        return Err(IoError::Malformed(format!("{what} must be {rows}×{cols}")));
    }
    let data = text.iter().flatten().map(|s| s.parse(field)).collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_vec(field, rows, cols, data))
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    /// Dimension per vertex name.
    pub dims: BTreeMap<String, usize>,
    /// Row-major matrix per arrow name; missing arrows act as zero.
    #[serde(default)]
    pub action: BTreeMap<String, Vec<Vec<ScalarText>>>,
}

impl ModuleFile {
    pub fn from_module(m: &Module) -> ModuleFile {
        let q = &m.algebra().quiver;
        ModuleFile {
            dims: q.vertices.iter().cloned().zip(m.dims().iter().copied()).collect(),
            action: q.arrows.iter().enumerate().map(|(i, a)| (a.name.clone(), matrix_text(m.action(i)))).collect(),
        }
    }

    pub fn to_module(&self, alg: &Algebra) -> Result<Module, IoError> {
        let q = &alg.quiver;
        for k in self.dims.keys() {
            if q.vertex_index(k).is_none() {
                return Err(IoError::Malformed(format!("unknown vertex `{k}`")));
            }
        }
        for k in self.action.keys() {
            if q.arrow_index(k).is_none() {
                return Err(IoError::Malformed(format!("unknown arrow `{k}`")));
            }
        }
        let dims: Vec<usize> = q.vertices.iter().map(|v| self.dims.get(v).copied().unwrap_or(0)).collect();
        let action = q
            .arrows
            .iter()
            .map(|a| match self.action.get(&a.name) {
                Some(t) => matrix_of(alg.field, dims[a.target], dims[a.source], t, &format!("arrow {}", a.name)),
                None => Ok(Matrix::zeros(alg.field, dims[a.target], dims[a.source])),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Module::new(alg, dims, action)?)
    }
}

pub fn load_module(path: &Path, alg: &Algebra) -> Result<Module, IoError> {
    let f: ModuleFile = serde_json::from_str(&read(path)?)?;
    f.to_module(alg)
}

pub fn module_json(m: &Module) -> String {
    serde_json::to_string_pretty(&ModuleFile::from_module(m)).expect("serializable") + "\n"
}

/// A polynomial as coefficients of T^0, T^1, ... or, in two variables, as
/// rows c[i][j] of T₁^i T₂^j.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum PolyText {
    Constant(ScalarText),
    One(Vec<ScalarText>),
    Two(Vec<Vec<ScalarText>>),
}

impl PolyText {
    fn parse(&self, field: FieldSpec) -> Result<LPoly, IoError> {
        let grid: Vec<Vec<Scalar>> = match self {
            PolyText::Constant(c) => vec![vec![c.parse(field)?]],
            PolyText::One(cs) => cs.iter().map(|c| Ok(vec![c.parse(field)?])).collect::<Result<_, IoError>>()?,
            PolyText::Two(rows) => rows.iter().map(|r| r.iter().map(|c| c.parse(field)).collect()).collect::<Result<_, _>>()?,
        };
        Ok(LPoly::from_grid(field, &grid))
    }

    fn of(p: &LPoly, vars: usize) -> PolyText {
        let g = p.to_grid();
        let text = |g: &[Scalar]| g.iter().map(ScalarText::of).collect::<Vec<_>>();
        if vars >= 2 {
            PolyText::Two(g.iter().map(|r| text(r)).collect())
        } else {
            PolyText::One(g.iter().map(|r| r.first().map_or(ScalarText::Int(0), ScalarText::of)).collect())
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct LatticeFile {
    pub algebra: AlgebraFile,
    pub vars: usize,
    pub rank: BTreeMap<String, usize>,
    #[serde(default)]
    pub action: BTreeMap<String, Vec<Vec<PolyText>>>,
}

impl LatticeFile {
    pub fn from_lattice(l: &Lattice) -> LatticeFile {
        let q = &l.algebra.quiver;
        LatticeFile {
            algebra: AlgebraFile::from_algebra(&l.algebra),
            vars: l.vars,
            rank: q.vertices.iter().cloned().zip(l.rank.iter().copied()).collect(),
            action: q
                .arrows
                .iter()
                .zip(&l.action)
                .map(|(a, m)| {
                    let rows = (0..m.rows).map(|r| (0..m.cols).map(|c| PolyText::of(m.get(r, c), l.vars)).collect()).collect();
                    (a.name.clone(), rows)
                })
                .collect(),
        }
    }

    pub fn to_lattice(&self, field: Option<FieldSpec>) -> Result<Lattice, IoError> {
        let alg = self.algebra.to_algebra(field)?;
        let q = &alg.quiver;
        let rank: Vec<usize> = q.vertices.iter().map(|v| self.rank.get(v).copied().unwrap_or(0)).collect();
        let mut action = Vec::new();
        for a in &q.arrows {
            let (rows, cols) = (rank[a.target], rank[a.source]);
            let entries = match self.action.get(&a.name) {
                Some(t) => {
                    if t.len() != rows || t.iter().any(|r| r.len() != cols) {
                        return Err(IoError::Malformed(format!("arrow {} must be {rows}×{cols}", a.name)));
                    }
                    t.iter().flatten().map(|p| p.parse(alg.field)).collect::<Result<Vec<_>, _>>()?
                }
                None => vec![LPoly::zero(alg.field); rows * cols],
            };
            action.push(PolyMatrix { rows, cols, entries });
        }
        Ok(Lattice::new(&alg, self.vars, rank, action)?)
    }
}

pub fn load_lattice(path: &Path, field: Option<FieldSpec>) -> Result<Lattice, IoError> {
    let f: LatticeFile = serde_json::from_str(&read(path)?)?;
    f.to_lattice(field)
}

pub fn lattice_json(l: &Lattice) -> String {
    serde_json::to_string_pretty(&LatticeFile::from_lattice(l)).expect("serializable") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::odim::kronecker_family;

    #[test]
    fn algebra_round_trip() {
        for name in fixtures::NAMES {
            let a = fixtures::by_name(name, FieldSpec::Prime(3)).unwrap();
            let f: AlgebraFile = serde_json::from_str(&algebra_json(&a)).unwrap();
            let b = f.to_algebra(None).unwrap();
            assert!(a == b, "{name}");
            assert_eq!(a.tensor_info().is_some(), b.tensor_info().is_some());
            assert_eq!(algebra_hash(&a), algebra_hash(&b));
        }
    }

    #[test]
    fn module_and_lattice_round_trip() {
        let k = fixtures::kronecker(FieldSpec::Rational);
        let m = fixtures::kron_preprojective(&k, 2);
        let f: ModuleFile = serde_json::from_str(&module_json(&m)).unwrap();
        let n = f.to_module(&k).unwrap();
        assert_eq!(m.actions(), n.actions());
        let l = kronecker_family(&k).unwrap();
        let g: LatticeFile = serde_json::from_str(&lattice_json(&l)).unwrap();
        let l2 = g.to_lattice(None).unwrap();
        assert_eq!(l.action, l2.action);
    }

    #[test]
    fn malformed_inputs() {
        let bad = r#"{"field":"F2","vertices":["a"],"arrows":[{"name":"x","source":"a","target":"b"}]}"#;
        let f: AlgebraFile = serde_json::from_str(bad).unwrap();
        assert!(matches!(f.to_algebra(None), Err(IoError::Malformed(_))));
        let cyc = r#"{"field":"F2","vertices":["a"],"arrows":[{"name":"x","source":"a","target":"a"}]}"#;
        let f: AlgebraFile = serde_json::from_str(cyc).unwrap();
        assert!(matches!(f.to_algebra(None), Err(IoError::Algebra(AlgebraError::NotAdmissible { .. }))));
        let lat = r#"{"algebra":{"field":"F5","vertices":["s","t"],"arrows":[{"name":"b","source":"s","target":"t"}]},
            "vars":1,"rank":{"s":1,"t":1},"action":{"b":[[["0","1","2"]]]}}"#;
        let l: LatticeFile = serde_json::from_str(lat).unwrap();
        let l = l.to_lattice(None).unwrap();
        assert_eq!(l.action[0].get(0, 0).degrees(), (2, 0));
    }
}
