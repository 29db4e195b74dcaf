//! Quivers, admissible quotients of path algebras, opposite algebras, tensor
//! products and tier functions.
//!
//! Paths compose left to right: a path `p: x -> y` followed by `q: y -> z` is
//! the path `pq: x -> z`. The path basis is extracted degree by degree; the
//! normal words of each degree are the lexicographically smallest paths that
//! survive modulo the relation ideal.

use crate::exactlin::{FieldSpec, Matrix, Scalar};
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;
use std::ops::Deref;
use std::sync::Arc;

/// Default bound on path length used to certify admissibility.
pub const DEFAULT_MAX_LEN: usize = 30;
const MAX_BASIS: usize = 50_000;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("malformed quiver: {0}")]
    BadQuiver(String),
    #[error("malformed relation {index}: {reason}")]
    MalformedRelation { index: usize, reason: String },
    #[error("ideal is not admissible: paths of length {max_len} survive")]
    NotAdmissible { max_len: usize },
    #[error("algebras are over different fields ({0} and {1})")]
    FieldMismatch(FieldSpec, FieldSpec),
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum TierError {
    #[error("quiver admits no tier function (conflict at vertex {vertex})")]
    NotTiered { vertex: String },
    #[error("quiver is not connected")]
    Disconnected,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self, AlgebraError> {
        let q = Quiver { vertices, arrows };
        q.validate()?;
        Ok(q)
    }

    /// Build from names; arrows given as (name, source name, target name).
    pub fn from_names(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self, AlgebraError> {
        let vs: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let find = |n: &str| {
            vs.iter()
                .position(|v| v == n)
                .ok_or_else(|| AlgebraError::BadQuiver(format!("unknown vertex `{n}`")))
        };
        let mut arr = Vec::new();
        for (name, s, t) in arrows {
            arr.push(Arrow { name: name.to_string(), source: find(s)?, target: find(t)? });
        }
        Quiver::new(vs, arr)
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        let mut seen = BTreeSet::new();
        for v in &self.vertices {
            if !seen.insert(v.as_str()) {
                return Err(AlgebraError::BadQuiver(format!("duplicate vertex `{v}`")));
            }
        }
        let mut seen = BTreeSet::new();
        for a in &self.arrows {
            if !seen.insert(a.name.as_str()) {
                return Err(AlgebraError::BadQuiver(format!("duplicate arrow `{}`", a.name)));
            }
            if a.source >= self.vertices.len() || a.target >= self.vertices.len() {
                return Err(AlgebraError::BadQuiver(format!("arrow `{}` has a bad endpoint", a.name)));
            }
        }
        Ok(())
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrows_from(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.source == x).map(|(i, _)| i)
    }

    pub fn arrows_into(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.target == x).map(|(i, _)| i)
    }

    pub fn is_sink(&self, x: usize) -> bool {
        self.arrows_from(x).next().is_none()
    }

    pub fn is_source(&self, x: usize) -> bool {
        self.arrows_into(x).next().is_none()
    }

    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source })
                .collect(),
        }
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(x) = queue.pop_front() {
            for a in &self.arrows {
                for (u, v) in [(a.source, a.target), (a.target, a.source)] {
                    if u == x && !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// The unique function with l(source) = l(target) + 1 along every arrow,
    /// normalized so that its minimum is 0.
    pub fn tier_function(&self) -> Result<Vec<usize>, TierError> {
        let n = self.vertices.len();
        if !self.is_connected() {
            return Err(TierError::Disconnected);
        }
        let mut l: Vec<Option<i64>> = vec![None; n];
        if n == 0 {
            return Ok(vec![]);
        }
        l[0] = Some(0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let lx = l[x].unwrap();
            for a in &self.arrows {
                let nbr = if a.source == x {
                    Some((a.target, lx - 1))
                } else if a.target == x {
                    Some((a.source, lx + 1))
                } else {
                    None
                };
                if let Some((y, want)) = nbr {
                    match l[y] {
                        None => {
                            l[y] = Some(want);
                            queue.push_back(y);
                        }
                        Some(v) if v != want => {
                            return Err(TierError::NotTiered { vertex: self.vertices[y].clone() })
                        }
                        _ => {}
                    }
                }
            }
        }
        let min = l.iter().map(|v| v.unwrap()).min().unwrap();
        Ok(l.into_iter().map(|v| (v.unwrap() - min) as usize).collect())
    }

    /// Lengths (shortest, longest) of maximal paths starting at each vertex,
    /// or None when the quiver has an oriented cycle.
    pub fn maximal_path_lengths(&self) -> Option<Vec<(usize, usize)>> {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut order = Vec::new();
        let mut queue: VecDeque<usize> = (0..n).filter(|&x| indeg[x] == 0).collect();
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for a in self.arrows.iter().filter(|a| a.source == x) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    queue.push_back(a.target);
                }
            }
        }
        if order.len() < n {
            return None;
        }
        let mut res = vec![(0usize, 0usize); n];
        for &x in order.iter().rev() {
            let succ: Vec<usize> = self.arrows.iter().filter(|a| a.source == x).map(|a| a.target).collect();
            if !succ.is_empty() {
                let lo = succ.iter().map(|&y| res[y].0).min().unwrap() + 1;
                let hi = succ.iter().map(|&y| res[y].1).max().unwrap() + 1;
                res[x] = (lo, hi);
            }
        }
        Some(res)
    }

    pub fn nicely_tiered_check(&self) -> Result<NicelyTiered, TierError> {
        let tiers = self.tier_function()?;
        let n = tiers.iter().copied().max().unwrap_or(0);
        let witness = (0..self.vertices.len()).find(|&x| {
            (self.is_sink(x) && tiers[x] != 0) || (self.is_source(x) && tiers[x] != n)
        });
        Ok(NicelyTiered {
            nicely: witness.is_none(),
            tiers,
            num_tiers: n + 1,
            witness: witness.map(|x| self.vertices[x].clone()),
        })
    }

    pub fn to_dot(&self, name: &str, relations: &[Relation]) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{}\" {{", escape(name));
        for (i, rel) in relations.iter().enumerate() {
            let terms: Vec<String> = rel
                .terms
                .iter()
                .map(|(c, p)| {
                    let w: Vec<&str> = p.iter().map(|&a| self.arrows[a].name.as_str()).collect();
                    format!("({}) {}", c, w.join("."))
                })
                .collect();
            let _ = writeln!(s, "  // relation {}: {} = 0", i, terms.join(" + "));
        }
        for v in &self.vertices {
            let _ = writeln!(s, "  \"{}\";", escape(v));
        }
        for a in &self.arrows {
            let _ = writeln!(
                s,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                escape(&self.vertices[a.source]),
                escape(&self.vertices[a.target]),
                escape(&a.name)
            );
        }
        s.push_str("}\n");
        s
    }
}

pub(crate) fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Result of the nicely-tiered test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NicelyTiered {
    pub nicely: bool,
    pub tiers: Vec<usize>,
    pub num_tiers: usize,
    pub witness: Option<String>,
}

/// A linear combination of parallel paths, each given as a sequence of
/// arrow indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub terms: Vec<(Scalar, Vec<usize>)>,
}

impl Relation {
    pub fn new(terms: Vec<(Scalar, Vec<usize>)>) -> Self {
        Relation { terms }
    }

    /// Zero relation on a single path.
    pub fn monomial(field: FieldSpec, path: Vec<usize>) -> Self {
        Relation { terms: vec![(field.one(), path)] }
    }

    /// p - q
    pub fn commutativity(field: FieldSpec, p: Vec<usize>, q: Vec<usize>) -> Self {
        Relation { terms: vec![(field.one(), p), (field.from_i64(-1), q)] }
    }

    fn reversed(&self) -> Relation {
        Relation {
            terms: self
                .terms
                .iter()
                .map(|(c, p)| (c.clone(), p.iter().rev().copied().collect()))
                .collect(),
        }
    }

    fn relabel(&self, map: impl Fn(usize) -> usize) -> Relation {
        Relation {
            terms: self.terms.iter().map(|(c, p)| (c.clone(), p.iter().map(|&a| map(a)).collect())).collect(),
        }
    }
}

/// A path: its endpoints and its arrows in composition order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Sparse vector in basis coordinates, sorted by index.
pub type Sparse = Vec<(usize, Scalar)>;

/// How an algebra arises as a tensor product of factors.
#[derive(Clone, Debug)]
pub struct TensorInfo {
    pub factors: Vec<Algebra>,
    /// Per vertex, its vertex index in each factor.
    pub vertex_coords: Vec<Vec<usize>>,
    /// Per arrow, the factor it moves in and the arrow index inside it.
    pub arrow_factor: Vec<(usize, usize)>,
}

/// A basic algebra kQ/I with explicit path basis and structure constants.
#[derive(Clone, Debug)]
pub struct BasicAlgebra {
    pub quiver: Quiver,
    pub field: FieldSpec,
    pub relations: Vec<Relation>,
    pub max_len: usize,
    basis: Vec<Path>,
    degree_start: Vec<usize>,
    steps: HashMap<(usize, usize), Sparse>,
    mult: Vec<Vec<Sparse>>,
    loewy_length: usize,
    tensor: Option<TensorInfo>,
    pub special_biserial_flag: bool,
}

impl PartialEq for BasicAlgebra {
    fn eq(&self, o: &Self) -> bool {
        self.quiver == o.quiver && self.field == o.field && self.relations == o.relations
    }
}

impl BasicAlgebra {
    fn build(
        quiver: Quiver,
        field: FieldSpec,
        relations: Vec<Relation>,
        max_len: usize,
    ) -> Result<Self, AlgebraError> {
        quiver.validate()?;
        validate_relations(&quiver, field, &relations)?;
        let n = quiver.num_vertices();
        let mut basis: Vec<Path> = (0..n).map(|x| Path { source: x, target: x, arrows: vec![] }).collect();
        let mut degree_start = vec![0, n];
        let mut steps: HashMap<(usize, usize), Sparse> = HashMap::new();
        let mut loewy = None;
        for deg in 1..=max_len.max(1) {
            let prev = degree_start[deg - 1]..degree_start[deg];
            let mut cands: Vec<(Vec<usize>, usize, usize)> = Vec::new();
            for b in prev.clone() {
                for a in quiver.arrows_from(basis[b].target) {
                    let mut w = basis[b].arrows.clone();
                    w.push(a);
                    cands.push((w, b, a));
                }
            }
            cands.sort();
            let nc = cands.len();
            let cand_index: HashMap<(usize, usize), usize> =
                cands.iter().enumerate().map(|(i, (_, b, a))| ((*b, *a), i)).collect();
            let mut rows: Vec<Vec<Scalar>> = Vec::new();
            for rel in &relations {
                let m = rel.terms[0].1.len();
                if m > deg {
                    continue;
                }
                let s = quiver.arrows[rel.terms[0].1[0]].source;
                for u in degree_start[deg - m]..degree_start[deg - m + 1] {
                    if basis[u].target != s {
                        continue;
                    }
                    let mut row = vec![field.zero(); nc];
                    for (c, p) in &rel.terms {
                        let mut v: Sparse = vec![(u, field.one())];
                        for &a in &p[..p.len() - 1] {
                            v = apply_step(&steps, &v, a, field);
                        }
                        let last = p[p.len() - 1];
                        for (b, coef) in v {
                            let ci = cand_index[&(b, last)];
                            row[nc - 1 - ci] = row[nc - 1 - ci].add_ref(&coef.mul_ref(c));
                        }
                    }
                    rows.push(row);
                }
            }
            // Columns are in descending word order so that pivots pick out the
            // largest words and the normal words are the smallest survivors.
            let k = if rows.is_empty() { Matrix::zeros(field, 0, nc) } else { Matrix::from_rows(field, rows) };
            let r = k.rref();
            let mut pivot_row = vec![None; nc];
            for (i, &p) in r.pivots.iter().enumerate() {
                pivot_row[nc - 1 - p] = Some(i);
            }
            let start = basis.len();
            let mut new_index = vec![usize::MAX; nc];
            for (ci, (w, b, _)) in cands.iter().enumerate() {
                if pivot_row[ci].is_none() {
                    new_index[ci] = basis.len();
                    basis.push(Path { source: basis[*b].source, target: quiver.arrows[*w.last().unwrap()].target, arrows: w.clone() });
                }
            }
            for (ci, (_, b, a)) in cands.iter().enumerate() {
                let expr: Sparse = match pivot_row[ci] {
                    None => vec![(new_index[ci], field.one())],
                    Some(row) => {
                        let mut e: Sparse = Vec::new();
                        for (cj, &ni) in new_index.iter().enumerate() {
                            if ni == usize::MAX {
                                continue;
                            }
                            let v = r.matrix.get(row, nc - 1 - cj);
                            if !v.is_zero() {
                                e.push((ni, v.neg_ref()));
                            }
                        }
                        e.sort_by_key(|t| t.0);
                        e
                    }
                };
                steps.insert((*b, *a), expr);
            }
            degree_start.push(basis.len());
            if basis.len() == start {
                loewy = Some(deg);
                break;
            }
            if basis.len() > MAX_BASIS {
                return Err(AlgebraError::NotAdmissible { max_len: deg });
            }
        }
        let loewy_length = loewy.ok_or(AlgebraError::NotAdmissible { max_len })?;
        let mut alg = BasicAlgebra {
            quiver,
            field,
            relations,
            max_len,
            basis,
            degree_start,
            steps,
            mult: vec![],
            loewy_length,
            tensor: None,
            special_biserial_flag: false,
        };
        alg.mult = (0..alg.dim()).map(|i| (0..alg.dim()).map(|j| alg.compute_product(i, j)).collect()).collect();
        Ok(alg)
    }

    fn compute_product(&self, i: usize, j: usize) -> Sparse {
        let (bi, bj) = (&self.basis[i], &self.basis[j]);
        if bi.target != bj.source {
            return vec![];
        }
        let mut v: Sparse = vec![(i, self.field.one())];
        for &a in &bj.arrows {
            v = apply_step(&self.steps, &v, a, self.field);
        }
        v
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn loewy_length(&self) -> usize {
        self.loewy_length
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver.num_vertices()
    }

    pub fn num_arrows(&self) -> usize {
        self.quiver.num_arrows()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    /// Indices of basis paths starting at x and ending at y.
    pub fn basis_between(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.basis.len()).filter(|&i| self.basis[i].source == x && self.basis[i].target == y).collect()
    }

    /// Index of the idempotent e_x in the basis.
    pub fn idempotent(&self, x: usize) -> usize {
        x
    }

    /// Basis indices of a given path degree.
    pub fn degree_range(&self, d: usize) -> std::ops::Range<usize> {
        if d + 1 >= self.degree_start.len() {
            return self.basis.len()..self.basis.len();
        }
        self.degree_start[d]..self.degree_start[d + 1]
    }

    /// Structure constants of b_i · b_j.
    pub fn product(&self, i: usize, j: usize) -> &Sparse {
        &self.mult[i][j]
    }

    /// Multiply a basis element on the right by an arrow.
    pub fn times_arrow(&self, i: usize, a: usize) -> Sparse {
        apply_step(&self.steps, &[(i, self.field.one())], a, self.field)
    }

    /// Multiply general elements given in basis coordinates.
    pub fn multiply(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim()];
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a.mul_ref(b);
                for (k, c) in &self.mult[i][j] {
                    out[*k] = out[*k].add_ref(&ab.mul_ref(c));
                }
            }
        }
        out
    }

    /// Reduce an arbitrary path (arrow sequence starting at `source`) to
    /// basis coordinates.
    pub fn reduce_path(&self, source: usize, arrows: &[usize]) -> Sparse {
        let mut v: Sparse = vec![(source, self.field.one())];
        for &a in arrows {
            v = apply_step(&self.steps, &v, a, self.field);
        }
        v
    }

    pub fn tensor_info(&self) -> Option<&TensorInfo> {
        self.tensor.as_ref()
    }

    /// Opposite presentation: arrows and relation paths reversed.
    pub fn opposite_presentation(&self) -> (Quiver, Vec<Relation>) {
        (self.quiver.opposite(), self.relations.iter().map(|r| r.reversed()).collect())
    }

    pub fn is_associative(&self) -> bool {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = self.mul_sparse_basis(&self.mult[i][j], k, true);
                    let right = self.mul_sparse_basis(&self.mult[j][k], i, false);
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn mul_sparse_basis(&self, v: &Sparse, k: usize, on_right: bool) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim()];
        for (i, c) in v {
            let prod = if on_right { &self.mult[*i][k] } else { &self.mult[k][*i] };
            for (t, d) in prod {
                out[*t] = out[*t].add_ref(&c.mul_ref(d));
            }
        }
        out
    }

    pub fn path_name(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            format!("e_{}", self.quiver.vertices[p.source])
        } else {
            p.arrows.iter().map(|&a| self.quiver.arrows[a].name.as_str()).collect::<Vec<_>>().join(".")
        }
    }

    pub fn to_dot(&self, name: &str) -> String {
        self.quiver.to_dot(name, &self.relations)
    }
}

fn apply_step(steps: &HashMap<(usize, usize), Sparse>, v: &[(usize, Scalar)], a: usize, field: FieldSpec) -> Sparse {
    let mut acc: std::collections::BTreeMap<usize, Scalar> = std::collections::BTreeMap::new();
    for (b, c) in v {
        if let Some(expr) = steps.get(&(*b, a)) {
            for (t, d) in expr {
                let e = acc.entry(*t).or_insert_with(|| field.zero());
                *e = e.add_ref(&c.mul_ref(d));
            }
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn validate_relations(q: &Quiver, field: FieldSpec, rels: &[Relation]) -> Result<(), AlgebraError> {
    for (index, r) in rels.iter().enumerate() {
        let bad = |reason: &str| AlgebraError::MalformedRelation { index, reason: reason.to_string() };
        if r.terms.is_empty() {
            return Err(bad("no terms"));
        }
        let mut ends = None;
        let len = r.terms[0].1.len();
        for (c, p) in &r.terms {
            if c.field() != field {
                return Err(bad("coefficient from another field"));
            }
            if c.is_zero() {
                return Err(bad("zero coefficient"));
            }
            if p.len() < 2 {
                return Err(bad("paths must have length at least 2"));
            }
            if p.iter().any(|&a| a >= q.arrows.len()) {
                return Err(bad("unknown arrow"));
            }
            for w in p.windows(2) {
                if q.arrows[w[0]].target != q.arrows[w[1]].source {
                    return Err(bad("arrows do not compose"));
                }
            }
            let e = (q.arrows[p[0]].source, q.arrows[*p.last().unwrap()].target);
            match ends {
                None => ends = Some(e),
                Some(e0) if e0 != e => return Err(bad("terms are not parallel")),
                _ => {}
            }
            if p.len() != len {
                return Err(bad("terms have different lengths (only homogeneous relations are supported)"));
            }
        }
    }
    Ok(())
}

/// Handle to a basic algebra that knows its opposite. Both orientations are
/// built once and shared.
#[derive(Clone, Debug)]
pub struct Algebra {
    pair: Arc<[BasicAlgebra; 2]>,
    side: usize,
}

impl Deref for Algebra {
    type Target = BasicAlgebra;
    fn deref(&self) -> &BasicAlgebra {
        &self.pair[self.side]
    }
}

impl PartialEq for Algebra {
    fn eq(&self, o: &Self) -> bool {
        self.same(o) || **self == **o
    }
}

impl Algebra {
    pub fn build(quiver: Quiver, field: FieldSpec, relations: Vec<Relation>, max_len: usize) -> Result<Self, AlgebraError> {
        let (oq, orel) = (quiver.opposite(), relations.iter().map(|r| r.reversed()).collect());
        let a = BasicAlgebra::build(quiver, field, relations, max_len)?;
        let b = BasicAlgebra::build(oq, field, orel, max_len)?;
        debug_assert_eq!(a.dim(), b.dim());
        Ok(Algebra { pair: Arc::new([a, b]), side: 0 })
    }

    /// Path algebra without relations.
    pub fn path_algebra(quiver: Quiver, field: FieldSpec) -> Result<Self, AlgebraError> {
        Self::build(quiver, field, vec![], DEFAULT_MAX_LEN)
    }

    pub fn opposite(&self) -> Algebra {
        Algebra { pair: self.pair.clone(), side: 1 - self.side }
    }

    /// True when both handles point at the same orientation of the same
    /// algebra object.
    pub fn same(&self, o: &Algebra) -> bool {
        Arc::ptr_eq(&self.pair, &o.pair) && self.side == o.side
    }

    pub fn with_special_biserial_flag(&self, flag: bool) -> Algebra {
        let mut pair = (*self.pair).clone();
        pair[0].special_biserial_flag = flag;
        pair[1].special_biserial_flag = flag;
        Algebra { pair: Arc::new(pair), side: self.side }
    }

    fn with_tensor_info(self, info: TensorInfo) -> Algebra {
        let mut pair = (*self.pair).clone();
        let op_info = TensorInfo {
            factors: info.factors.iter().map(|f| f.opposite()).collect(),
            vertex_coords: info.vertex_coords.clone(),
            arrow_factor: info.arrow_factor.clone(),
        };
        pair[self.side].tensor = Some(info);
        pair[1 - self.side].tensor = Some(op_info);
        Algebra { pair: Arc::new(pair), side: self.side }
    }

    /// Same algebra over a different prime field, rebuilt from the
    /// presentation with coefficients reduced (integer coefficients only).
    pub fn change_field(&self, field: FieldSpec) -> Result<Algebra, AlgebraError> {
        if field == self.field {
            return Ok(self.clone());
        }
        let conv = |s: &Scalar| field.parse_scalar(&s.to_string()).map_err(|e| AlgebraError::MalformedRelation { index: 0, reason: e.to_string() });
        let mut rels = Vec::new();
        for r in &self.relations {
            let mut terms = Vec::new();
            for (c, p) in &r.terms {
                let c2 = conv(c)?;
                if !c2.is_zero() {
                    terms.push((c2, p.clone()));
                }
            }
            rels.push(Relation { terms });
        }
        let rebuilt = Algebra::build(self.quiver.clone(), field, rels, self.max_len)?;
        let out = match self.tensor_info() {
            Some(t) => {
                let factors = t.factors.iter().map(|f| f.change_field(field)).collect::<Result<Vec<_>, _>>()?;
                rebuilt.with_tensor_info(TensorInfo { factors, ..t.clone() })
            }
            None => rebuilt,
        };
        Ok(out.with_special_biserial_flag(self.special_biserial_flag))
    }

    /// Factors of a tensor decomposition, or the algebra itself.
    pub fn factors(&self) -> Vec<Algebra> {
        match self.tensor_info() {
            Some(t) => t.factors.clone(),
            None => vec![self.clone()],
        }
    }

    fn coords(&self, x: usize) -> Vec<usize> {
        match self.tensor_info() {
            Some(t) => t.vertex_coords[x].clone(),
            None => vec![x],
        }
    }

    fn arrow_coord(&self, a: usize) -> (usize, usize) {
        match self.tensor_info() {
            Some(t) => t.arrow_factor[a],
            None => (0, a),
        }
    }
}

/// Tensor product over the common field. Vertices are pairs, arrows are
/// (arrow, vertex) followed by (vertex, arrow); relations are the lifted
/// relations of each factor followed by one commutativity relation per pair
/// of arrows.
pub fn tensor(a: &Algebra, b: &Algebra) -> Result<Algebra, AlgebraError> {
    if a.field != b.field {
        return Err(AlgebraError::FieldMismatch(a.field, b.field));
    }
    let field = a.field;
    let (qa, qb) = (&a.quiver, &b.quiver);
    let (na, nb) = (qa.num_vertices(), qb.num_vertices());
    let v = |x: usize, y: usize| x * nb + y;
    let vertices: Vec<String> =
        (0..na).flat_map(|x| (0..nb).map(move |y| (x, y))).map(|(x, y)| format!("{}|{}", qa.vertices[x], qb.vertices[y])).collect();
    let mut arrows = Vec::new();
    for al in &qa.arrows {
        for y in 0..nb {
            arrows.push(Arrow { name: format!("{}|{}", al.name, qb.vertices[y]), source: v(al.source, y), target: v(al.target, y) });
        }
    }
    let off = arrows.len();
    for x in 0..na {
        for be in &qb.arrows {
            arrows.push(Arrow { name: format!("{}|{}", qa.vertices[x], be.name), source: v(x, be.source), target: v(x, be.target) });
        }
    }
    let arr_a = |al: usize, y: usize| al * nb + y;
    let arr_b = |x: usize, be: usize| off + x * qb.num_arrows() + be;
    let mut relations = Vec::new();
    for r in &a.relations {
        for y in 0..nb {
            relations.push(r.relabel(|al| arr_a(al, y)));
        }
    }
    for r in &b.relations {
        for x in 0..na {
            relations.push(r.relabel(|be| arr_b(x, be)));
        }
    }
    for (ai, al) in qa.arrows.iter().enumerate() {
        for (bi, be) in qb.arrows.iter().enumerate() {
            relations.push(Relation::commutativity(
                field,
                vec![arr_a(ai, be.source), arr_b(al.target, bi)],
                vec![arr_b(al.source, bi), arr_a(ai, be.target)],
            ));
        }
    }
    let quiver = Quiver::new(vertices, arrows)?;
    let max_len = a.max_len.max(b.max_len).max(a.loewy_length() + b.loewy_length());
    let built = Algebra::build(quiver, field, relations, max_len)?;
    let fa = a.factors();
    let fb = b.factors();
    let ka = fa.len();
    let mut vertex_coords = Vec::new();
    for x in 0..na {
        for y in 0..nb {
            let mut c = a.coords(x);
            c.extend(b.coords(y));
            vertex_coords.push(c);
        }
    }
    let mut arrow_factor = Vec::new();
    for al in 0..qa.num_arrows() {
        for _ in 0..nb {
            arrow_factor.push(a.arrow_coord(al));
        }
    }
    for _ in 0..na {
        for be in 0..qb.num_arrows() {
            let (f, i) = b.arrow_coord(be);
            arrow_factor.push((ka + f, i));
        }
    }
    let mut factors = fa;
    factors.extend(fb);
    Ok(built.with_tensor_info(TensorInfo { factors, vertex_coords, arrow_factor }))
}

/// The one-vertex algebra k.
pub fn ground_field_algebra(field: FieldSpec) -> Algebra {
    Algebra::path_algebra(Quiver { vertices: vec!["*".into()], arrows: vec![] }, field).expect("trivial algebra")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3_rad2(field: FieldSpec) -> Algebra {
        let q = Quiver::from_names(&["1", "2", "3"], &[("b", "3", "2"), ("a", "2", "1")]).unwrap();
        Algebra::build(q, field, vec![Relation::monomial(field, vec![0, 1])], 30).unwrap()
    }

    fn kronecker(field: FieldSpec) -> Algebra {
        let q = Quiver::from_names(&["s", "t"], &[("b", "s", "t"), ("c", "s", "t")]).unwrap();
        Algebra::path_algebra(q, field).unwrap()
    }

    #[test]
    fn a3_mod_radical_square() {
        let a = a3_rad2(FieldSpec::Prime(3));
        assert_eq!(a.dim(), 5);
        assert_eq!(a.loewy_length(), 2);
        assert!(a.is_associative());
    }

    #[test]
    fn kronecker_dimension() {
        let k = kronecker(FieldSpec::Rational);
        assert_eq!(k.dim(), 4);
        assert_eq!(k.loewy_length(), 2);
    }

    #[test]
    fn loop_without_relations_is_not_admissible() {
        let q = Quiver::from_names(&["x"], &[("t", "x", "x")]).unwrap();
        let err = Algebra::build(q, FieldSpec::Prime(2), vec![], 10).unwrap_err();
        assert_eq!(err, AlgebraError::NotAdmissible { max_len: 10 });
    }

    #[test]
    fn non_parallel_terms_rejected() {
        let f = FieldSpec::Prime(5);
        let q = Quiver::from_names(&["1", "2", "3", "4"], &[("a", "1", "2"), ("b", "2", "3"), ("c", "2", "4")]).unwrap();
        let bad = Relation::commutativity(f, vec![0, 1], vec![0, 2]);
        assert!(matches!(Algebra::build(q, f, vec![bad], 30), Err(AlgebraError::MalformedRelation { .. })));
    }

    #[test]
    fn opposite_is_an_involution() {
        let a = a3_rad2(FieldSpec::Prime(2));
        let oo = a.opposite().opposite();
        assert!(oo.same(&a));
        let (q, r) = a.opposite_presentation();
        let rebuilt = Algebra::build(q, a.field, r, 30).unwrap();
        let (q2, r2) = rebuilt.opposite_presentation();
        assert_eq!(q2, a.quiver);
        assert_eq!(r2, a.relations);
    }

    #[test]
    fn kronecker_tensor_kronecker() {
        let k = kronecker(FieldSpec::Prime(2));
        let kk = tensor(&k, &k).unwrap();
        assert_eq!(kk.num_vertices(), 4);
        assert_eq!(kk.num_arrows(), 8);
        assert_eq!(kk.relations.len(), 4);
        assert_eq!(kk.dim(), 16);
        assert_eq!(kk.loewy_length(), 3);
        let nt = kk.quiver.nicely_tiered_check().unwrap();
        assert!(nt.nicely);
        assert_eq!(nt.num_tiers, 3);
        let mut t = nt.tiers.clone();
        t.sort();
        assert_eq!(t, vec![0, 1, 1, 2]);
    }

    #[test]
    fn tensor_with_ground_field_is_unchanged() {
        let a = a3_rad2(FieldSpec::Prime(3));
        let t = tensor(&a, &ground_field_algebra(a.field)).unwrap();
        assert_eq!(t.dim(), a.dim());
        assert_eq!(t.loewy_length(), a.loewy_length());
    }

    #[test]
    fn tiers_and_nicely_tiered() {
        let q = Quiver::from_names(&["1", "2"], &[("a", "1", "2")]).unwrap();
        assert_eq!(q.tier_function().unwrap(), vec![1, 0]);
        let cyc = Quiver::from_names(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")]).unwrap();
        assert!(matches!(cyc.tier_function(), Err(TierError::NotTiered { .. })));
        let mixed = Quiver::from_names(&["a", "b", "c", "d"], &[("x", "a", "b"), ("y", "a", "c"), ("z", "c", "d")]).unwrap();
        let nt = mixed.nicely_tiered_check().unwrap();
        assert!(!nt.nicely);
        assert_eq!(nt.witness.as_deref(), Some("b"));
    }

    #[test]
    fn dot_export_mentions_relations() {
        let a = a3_rad2(FieldSpec::Prime(2));
        let dot = a.to_dot("a3");
        assert!(dot.contains("// relation 0"));
        assert!(dot.contains("\"3\" -> \"2\" [label=\"b\"]"));
    }
}
