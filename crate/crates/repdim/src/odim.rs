//! Lattices over Λ ⊗ k[T₁, ..., T_d], the sequences ε_α, specialization,
//! Ext non-vanishing tests, external products and Odim witnesses.

use crate::algebra::{tensor, Algebra};
use crate::exactlin::{FieldSpec, Matrix, Scalar};
use crate::modcat::{
    coordinates_in, hom_basis, map_from_projective, map_from_sum, projective_cover, tensor_maps, tensor_modules,
    ModError, Module, ModuleMap, ProjectiveCover,
};
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;

/// Maximal number of polynomial variables.
pub const MAX_VARS: usize = 2;
/// Maximal degree of a polynomial entry in each variable.
pub const MAX_DEGREE: u32 = 8;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum OdimError {
    #[error("at most {MAX_VARS} variables are supported, got {0}")]
    TooManyVariables(usize),
    #[error("polynomial degree {0} exceeds {MAX_DEGREE}")]
    DegreeTooLarge(u32),
    #[error("lattice shape: {0}")]
    Shape(String),
    #[error("relation {0} does not vanish on the lattice")]
    RelationFails(usize),
    #[error("point has {got} coordinates, expected {expected}")]
    PointArity { expected: usize, got: usize },
    #[error("sequence is not exact: {0}")]
    NotExact(String),
    #[error(transparent)]
    Module(#[from] ModError),
}

/// Polynomial in at most two variables; keys are exponents (T₁, T₂).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPoly {
    field: FieldSpec,
    terms: BTreeMap<(u32, u32), Scalar>,
}

impl LPoly {
    pub fn zero(field: FieldSpec) -> Self {
        LPoly { field, terms: BTreeMap::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        let field = c.field();
        LPoly::zero(field).with_term((0, 0), c)
    }

    /// T_{var+1}.
    pub fn var(field: FieldSpec, var: usize) -> Self {
        let e = if var == 0 { (1, 0) } else { (0, 1) };
        LPoly::zero(field).with_term(e, field.one())
    }

    pub fn with_term(mut self, e: (u32, u32), c: Scalar) -> Self {
        let s = self.terms.remove(&e).map_or(c.clone(), |o| o.add_ref(&c));
        if !s.is_zero() {
            self.terms.insert(e, s);
        }
        self
    }

    /// Coefficients c[i][j] of T₁^i T₂^j.
    pub fn from_grid(field: FieldSpec, grid: &[Vec<Scalar>]) -> Self {
        let mut p = LPoly::zero(field);
        for (i, row) in grid.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                p = p.with_term((i as u32, j as u32), c.clone());
            }
        }
        p
    }

    pub fn to_grid(&self) -> Vec<Vec<Scalar>> {
        let (di, dj) = (self.degrees().0 as usize, self.degrees().1 as usize);
        if self.is_zero() {
            return vec![];
        }
        let mut g = vec![vec![self.field.zero(); dj + 1]; di + 1];
        for (&(i, j), c) in &self.terms {
            g[i as usize][j as usize] = c.clone();
        }
        g
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest exponent of each variable.
    pub fn degrees(&self) -> (u32, u32) {
        self.terms.keys().fold((0, 0), |(a, b), &(i, j)| (a.max(i), b.max(j)))
    }

    pub fn add(&self, o: &LPoly) -> LPoly {
        o.terms.iter().fold(self.clone(), |p, (&e, c)| p.with_term(e, c.clone()))
    }

    pub fn mul(&self, o: &LPoly) -> LPoly {
        let mut p = LPoly::zero(self.field);
        for (&(i, j), c) in &self.terms {
            for (&(k, l), d) in &o.terms {
                p = p.with_term((i + k, j + l), c.mul_ref(d));
            }
        }
        p
    }

    pub fn scale(&self, s: &Scalar) -> LPoly {
        self.terms.iter().fold(LPoly::zero(self.field), |p, (&e, c)| p.with_term(e, c.mul_ref(s)))
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        let at = |v: usize| point.get(v).cloned().unwrap_or_else(|| self.field.zero());
        self.terms.iter().fold(self.field.zero(), |acc, (&(i, j), c)| {
            acc.add_ref(&c.mul_ref(&at(0).pow(i as u64)).mul_ref(&at(1).pow(j as u64)))
        })
    }

    /// Σ c_ij A₁^i A₂^j for commuting n×n matrices.
    pub fn eval_matrices(&self, ops: &[Matrix], n: usize) -> Matrix {
        let id = Matrix::identity(self.field, n);
        let op = |v: usize| ops.get(v).cloned().unwrap_or_else(|| Matrix::zeros(self.field, n, n));
        self.terms.iter().fold(Matrix::zeros(self.field, n, n), |acc, (&(i, j), c)| {
            let m = if i == 0 { id.clone() } else { op(0).pow(i as u64) };
            let m = if j == 0 { m } else { m.mul(&op(1).pow(j as u64)) };
            acc.add(&m.scale(c))
        })
    }

    /// The same polynomial with T₁ renamed to T₂.
    fn shift(&self) -> LPoly {
        self.terms.iter().fold(LPoly::zero(self.field), |p, (&(i, j), c)| p.with_term((j, i), c.clone()))
    }
}

/// Matrix with polynomial entries, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<LPoly>,
}

impl PolyMatrix {
    pub fn constant(m: &Matrix) -> Self {
        PolyMatrix { rows: m.rows(), cols: m.cols(), entries: m.entries().iter().map(|c| LPoly::constant(c.clone())).collect() }
    }

    pub fn get(&self, r: usize, c: usize) -> &LPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn mul(&self, o: &PolyMatrix, field: FieldSpec) -> PolyMatrix {
        let mut entries = Vec::with_capacity(self.rows * o.cols);
        for r in 0..self.rows {
            for c in 0..o.cols {
                entries.push((0..self.cols).fold(LPoly::zero(field), |acc, k| acc.add(&self.get(r, k).mul(o.get(k, c)))));
            }
        }
        PolyMatrix { rows: self.rows, cols: o.cols, entries }
    }

    pub fn identity(field: FieldSpec, n: usize) -> PolyMatrix {
        PolyMatrix::constant(&Matrix::identity(field, n))
    }

    pub fn eval(&self, point: &[Scalar], field: FieldSpec) -> Matrix {
        Matrix::from_vec(field, self.rows, self.cols, self.entries.iter().map(|p| p.eval(point)).collect())
    }

    /// Block matrix with blocks p_ij(ops), each n×n.
    pub fn eval_blocks(&self, ops: &[Matrix], n: usize, field: FieldSpec) -> Matrix {
        let mut m = Matrix::zeros(field, self.rows * n, self.cols * n);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.paste(r * n, c * n, &self.get(r, c).eval_matrices(ops, n));
            }
        }
        m
    }

    /// Kronecker product of polynomial matrices.
    pub fn kron(&self, o: &PolyMatrix, field: FieldSpec) -> PolyMatrix {
        let (rows, cols) = (self.rows * o.rows, self.cols * o.cols);
        let mut entries = vec![LPoly::zero(field); rows * cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        entries[(i * o.rows + k) * cols + j * o.cols + l] = self.get(i, j).mul(o.get(k, l));
                    }
                }
            }
        }
        PolyMatrix { rows, cols, entries }
    }

    fn is_zero(&self) -> bool {
        self.entries.iter().all(LPoly::is_zero)
    }
}

/// A Λ ⊗ k[T₁..T_d]-lattice: free of rank `rank[x]` over the polynomial ring
/// at each vertex, with polynomial action matrices.
#[derive(Clone, Debug)]
pub struct Lattice {
    pub algebra: Algebra,
    pub vars: usize,
    pub rank: Vec<usize>,
    pub action: Vec<PolyMatrix>,
}

impl Lattice {
    pub fn new(algebra: &Algebra, vars: usize, rank: Vec<usize>, action: Vec<PolyMatrix>) -> Result<Lattice, OdimError> {
        if vars > MAX_VARS {
            return Err(OdimError::TooManyVariables(vars));
        }
        let q = &algebra.quiver;
        if rank.len() != q.num_vertices() || action.len() != q.num_arrows() {
            return Err(OdimError::Shape("rank or action count".into()));
        }
        for (i, (a, m)) in q.arrows.iter().zip(&action).enumerate() {
            if (m.rows, m.cols) != (rank[a.target], rank[a.source]) || m.entries.len() != m.rows * m.cols {
                return Err(OdimError::Shape(format!("arrow {i}")));
            }
            for p in &m.entries {
                let (di, dj) = p.degrees();
                if di.max(dj) > MAX_DEGREE {
                    return Err(OdimError::DegreeTooLarge(di.max(dj)));
                }
                if (vars < 2 && dj > 0) || (vars == 0 && di > 0) {
                    return Err(OdimError::Shape(format!("arrow {i} uses an undeclared variable")));
                }
            }
        }
        let field = algebra.field;
        for (ri, r) in algebra.relations.iter().enumerate() {
            let Some((_, first)) = r.terms.first() else { continue };
            let (s, t) = (q.arrows[first[0]].source, q.arrows[*first.last().expect("path")].target);
            let mut acc = PolyMatrix { rows: rank[t], cols: rank[s], entries: vec![LPoly::zero(field); rank[t] * rank[s]] };
            for (c, path) in &r.terms {
                let mut m = PolyMatrix::identity(field, rank[s]);
                for &a in path {
                    m = action[a].mul(&m, field);
                }
                for (e, p) in acc.entries.iter_mut().zip(&m.entries) {
                    *e = e.add(&p.scale(c));
                }
            }
            if !acc.is_zero() {
                return Err(OdimError::RelationFails(ri));
            }
        }
        Ok(Lattice { algebra: algebra.clone(), vars, rank, action })
    }

    /// P ⊗ k[T₁..T_d] for a module P, with constant action.
    pub fn constant(m: &Module, vars: usize) -> Result<Lattice, OdimError> {
        Lattice::new(m.algebra(), vars, m.dims().to_vec(), m.actions().iter().map(PolyMatrix::constant).collect())
    }
}

/// L ⊗_R S_α: substitute Tᵢ = αᵢ.
pub fn specialize(l: &Lattice, alpha: &[Scalar]) -> Result<Module, OdimError> {
    if alpha.len() != l.vars {
        return Err(OdimError::PointArity { expected: l.vars, got: alpha.len() });
    }
    let field = l.algebra.field;
    let action = l.action.iter().map(|m| m.eval(alpha, field)).collect();
    Ok(Module::new(&l.algebra, l.rank.clone(), action)?)
}

/// Lattice over the tensor algebra `tensor(L.algebra, L'.algebra)` whose
/// variables are those of L followed by those of L'.
pub fn tensor_lattices(c: &Algebra, l: &Lattice, l2: &Lattice) -> Result<Lattice, OdimError> {
    let vars = l.vars + l2.vars;
    if vars > MAX_VARS {
        return Err(OdimError::TooManyVariables(vars));
    }
    let field = c.field;
    let (a, b) = (&l.algebra, &l2.algebra);
    let (na, nb) = (a.num_vertices(), b.num_vertices());
    let shifted: Vec<PolyMatrix> = l2
        .action
        .iter()
        .map(|m| PolyMatrix {
            rows: m.rows,
            cols: m.cols,
            entries: m.entries.iter().map(|p| if l.vars == 1 { p.shift() } else { p.clone() }).collect(),
        })
        .collect();
    let rank = (0..na).flat_map(|x| (0..nb).map(move |y| (x, y))).map(|(x, y)| l.rank[x] * l2.rank[y]).collect();
    let mut action = Vec::new();
    for al in 0..a.num_arrows() {
        for y in 0..nb {
            action.push(l.action[al].kron(&PolyMatrix::identity(field, l2.rank[y]), field));
        }
    }
    for x in 0..na {
        for be in shifted.iter() {
            action.push(PolyMatrix::identity(field, l.rank[x]).kron(be, field));
        }
    }
    Lattice::new(c, vars, rank, action)
}

/// A finite-dimensional module over k[T₁..T_d], given by commuting matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RModule {
    pub dim: usize,
    pub ops: Vec<Matrix>,
}

impl RModule {
    /// S_α = R/m_α.
    pub fn simple(field: FieldSpec, alpha: &[Scalar]) -> RModule {
        RModule { dim: 1, ops: alpha.iter().map(|a| Matrix::from_vec(field, 1, 1, vec![a.clone()])).collect() }
    }

    pub fn tensor(&self, o: &RModule, field: FieldSpec) -> RModule {
        let (i, j) = (Matrix::identity(field, self.dim), Matrix::identity(field, o.dim));
        let mut ops: Vec<Matrix> = self.ops.iter().map(|a| a.kron(&j)).collect();
        ops.extend(o.ops.iter().map(|b| i.kron(b)));
        RModule { dim: self.dim * o.dim, ops }
    }
}

/// An exact sequence 0 → N → E₁ → ... → E_d → M → 0 of k[T₁..T_d]-modules.
#[derive(Clone, Debug)]
pub struct RSequence {
    pub field: FieldSpec,
    pub terms: Vec<RModule>,
    pub maps: Vec<Matrix>,
}

impl RSequence {
    pub fn degree(&self) -> usize {
        self.maps.len() - 1
    }

    pub fn is_exact(&self) -> bool {
        let n = self.maps.len();
        let linear = self.maps.iter().enumerate().all(|(i, f)| {
            let (s, t) = (&self.terms[i], &self.terms[i + 1]);
            s.ops.iter().zip(&t.ops).all(|(a, b)| f.mul(a) == b.mul(f))
        });
        linear && exact_ranks(&self.maps.iter().map(|f| (f.rank(), f.cols(), f.rows())).collect::<Vec<_>>(), n)
            && self.maps.windows(2).all(|w| w[1].mul(&w[0]).is_zero())
    }
}

/// Exactness from ranks of consecutive maps (rank, source dim, target dim).
fn exact_ranks(maps: &[(usize, usize, usize)], n: usize) -> bool {
    if n == 0 {
        return true;
    }
    let first = maps[0].0 == maps[0].1;
    let last = maps[n - 1].0 == maps[n - 1].2;
    let middle = maps.windows(2).all(|w| w[0].0 + w[1].0 == w[1].1);
    first && last && middle
}

/// ε_α: 0 → S_α → R/m_α² → S_α → 0 over k[T].
pub fn eps_alpha(field: FieldSpec, alpha: &Scalar) -> RSequence {
    let s = RModule::simple(field, std::slice::from_ref(alpha));
    let j = Matrix::from_vec(field, 2, 2, vec![alpha.clone(), field.one(), field.zero(), alpha.clone()]);
    let e = RModule { dim: 2, ops: vec![j] };
    let left = Matrix::from_vec(field, 2, 1, vec![field.one(), field.zero()]);
    let right = Matrix::from_vec(field, 1, 2, vec![field.zero(), field.one()]);
    RSequence { field, terms: vec![s.clone(), e, s], maps: vec![left, right] }
}

/// Splice of N ⊗ ε' with ε ⊗ M': the external product of two sequences.
pub fn r_external(e: &RSequence, e2: &RSequence) -> RSequence {
    let field = e.field;
    let n = &e.terms[0];
    let m2 = e2.terms.last().expect("terms");
    let id = |m: &RModule| Matrix::identity(field, m.dim);
    let mut terms: Vec<RModule> = e2.terms[..e2.terms.len() - 1].iter().map(|t| n.tensor(t, field)).collect();
    terms.extend(e.terms[1..].iter().map(|t| t.tensor(m2, field)));
    let mut maps: Vec<Matrix> = e2.maps[..e2.maps.len() - 1].iter().map(|g| id(n).kron(g)).collect();
    let join = e.maps[0].kron(&id(m2)).mul(&id(n).kron(e2.maps.last().expect("maps")));
    maps.push(join);
    maps.extend(e.maps[1..].iter().map(|g| g.kron(&id(m2))));
    RSequence { field, terms, maps }
}

/// ε_α for a point α ∈ k^d, as ε_{α₁} ∨ ... ∨ ε_{α_d}.
pub fn eps_point(field: FieldSpec, alpha: &[Scalar]) -> RSequence {
    let mut it = alpha.iter();
    let first = eps_alpha(field, it.next().expect("at least one coordinate"));
    it.fold(first, |acc, a| r_external(&acc, &eps_alpha(field, a)))
}

/// Unknown k-linear maps of shape rows×cols: the images of the elementary
/// matrices under `f`, as columns of one matrix.
fn linear_system(field: FieldSpec, rows: usize, cols: usize, f: impl Fn(&Matrix) -> Vec<Scalar>) -> Matrix {
    let mut out = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let mut x = Matrix::zeros(field, rows, cols);
            x.set(r, c, field.one());
            out.push(f(&x));
        }
    }
    let len = out.first().map_or(0, Vec::len);
    Matrix::from_columns(field, len, &out)
}

/// Whether a degree-1 sequence of R-modules splits: an R-linear retraction
/// of the left map exists.
pub fn r_splits(e: &RSequence) -> bool {
    assert_eq!(e.degree(), 1, "degree one sequence");
    let field = e.field;
    let (n, m) = (&e.terms[0], &e.terms[1]);
    let iota = &e.maps[0];
    let sys = linear_system(field, n.dim, m.dim, |x| {
        let mut v = x.mul(iota).entries().to_vec();
        for (a, b) in n.ops.iter().zip(&m.ops) {
            v.extend(a.mul(x).sub(&x.mul(b)).entries().iter().cloned());
        }
        v
    });
    let mut rhs = Matrix::identity(field, n.dim).entries().to_vec();
    rhs.extend(std::iter::repeat_n(field.zero(), n.ops.len() * n.dim * m.dim));
    sys.solve(&rhs).is_some()
}

/// dim Ext¹_R(M, N) from cocycles (c₁..c_d) making the block upper
/// triangular operators commute, modulo coboundaries cᵢ = Aᵢh - hBᵢ.
pub fn r_ext1_dim(field: FieldSpec, m: &RModule, n: &RModule) -> usize {
    let d = n.ops.len();
    let (a, b) = (&n.ops, &m.ops);
    let block = n.dim * m.dim;
    let unknowns = d * block;
    if unknowns == 0 {
        return 0;
    }
    let split = |v: &[Scalar]| -> Vec<Matrix> {
        (0..d).map(|i| Matrix::from_vec(field, n.dim, m.dim, v[i * block..(i + 1) * block].to_vec())).collect()
    };
    let mut cols = Vec::new();
    for k in 0..unknowns {
        let mut v = vec![field.zero(); unknowns];
        v[k] = field.one();
        let c = split(&v);
        let mut eq = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                let lhs = a[i].mul(&c[j]).add(&c[i].mul(&b[j]));
                let rhs = a[j].mul(&c[i]).add(&c[j].mul(&b[i]));
                eq.extend(lhs.sub(&rhs).entries().iter().cloned());
            }
        }
        cols.push(eq);
    }
    let z = if cols[0].is_empty() { unknowns } else { unknowns - Matrix::from_columns(field, cols[0].len(), &cols).rank() };
    let bnd = linear_system(field, n.dim, m.dim, |h| (0..d).flat_map(|i| a[i].mul(h).sub(&h.mul(&b[i])).entries().to_vec()).collect());
    z - bnd.rank()
}

/// An exact sequence 0 → N → E₁ → ... → E_d → M → 0 of Λ-modules.
#[derive(Clone, Debug)]
pub struct ExtensionClass {
    pub maps: Vec<ModuleMap>,
}

impl ExtensionClass {
    pub fn new(maps: Vec<ModuleMap>) -> Result<ExtensionClass, OdimError> {
        let e = ExtensionClass { maps };
        if let Some(w) = e.exactness_failure() {
            return Err(OdimError::NotExact(w));
        }
        Ok(e)
    }

    pub fn degree(&self) -> usize {
        self.maps.len() - 1
    }

    pub fn left_end(&self) -> &Module {
        self.maps[0].source()
    }

    pub fn right_end(&self) -> &Module {
        self.maps.last().expect("maps").target()
    }

    /// Middle terms E₁..E_d.
    pub fn middle(&self) -> Vec<Module> {
        self.maps[1..].iter().map(|f| f.source().clone()).collect()
    }

    fn exactness_failure(&self) -> Option<String> {
        if self.maps.windows(2).any(|w| !w[0].then(&w[1]).is_zero()) {
            return Some("consecutive maps do not compose to zero".into());
        }
        let nv = self.left_end().dims().len();
        for x in 0..nv {
            let r: Vec<(usize, usize, usize)> =
                self.maps.iter().map(|f| (f.comp(x).rank(), f.source().dim(x), f.target().dim(x))).collect();
            if !exact_ranks(&r, r.len()) {
                return Some(format!("rank condition fails at vertex {x}"));
            }
        }
        None
    }

    /// Digest of the matrices of the sequence.
    pub fn content_hash(&self) -> String {
        let mut h = Sha256::new();
        for f in &self.maps {
            h.update(f.source().content_hash().as_bytes());
            for c in f.comps() {
                for s in c.entries() {
                    h.update(s.to_string().as_bytes());
                    h.update(b",");
                }
                h.update(b";");
            }
        }
        h.update(self.right_end().content_hash().as_bytes());
        hex::encode(h.finalize())
    }
}

/// L ⊗_R M for a finite-dimensional R-module M: at vertex x the space
/// M^{rank x}, with arrow blocks p_ij(ops).
pub fn lattice_tensor(l: &Lattice, m: &RModule) -> Result<Module, OdimError> {
    let field = l.algebra.field;
    let dims = l.rank.iter().map(|r| r * m.dim).collect();
    let action = l.action.iter().map(|p| p.eval_blocks(&m.ops, m.dim, field)).collect();
    Ok(Module::new(&l.algebra, dims, action)?)
}

/// L ⊗_R ε, termwise.
pub fn tensor_sequence(l: &Lattice, e: &RSequence) -> Result<ExtensionClass, OdimError> {
    if e.terms.iter().any(|t| t.ops.len() != l.vars) {
        return Err(OdimError::PointArity { expected: l.vars, got: e.terms[0].ops.len() });
    }
    let field = l.algebra.field;
    let mods = e.terms.iter().map(|t| lattice_tensor(l, t)).collect::<Result<Vec<_>, _>>()?;
    let maps = e
        .maps
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let comps = l.rank.iter().map(|&r| Matrix::identity(field, r).kron(f)).collect();
            ModuleMap::new(&mods[i], &mods[i + 1], comps)
        })
        .collect::<Result<Vec<_>, _>>()?;
    ExtensionClass::new(maps)
}

/// A lift `P -> E` of `t: P -> T` along `g: E -> T` for a projective cover
/// P, when the image of `t` lies in the image of `g`.
fn lift(cover: &ProjectiveCover, t: &ModuleMap, g: &ModuleMap) -> Option<ModuleMap> {
    let alg = t.source().algebra();
    let mut maps = Vec::new();
    for (i, &x) in cover.vertices.iter().enumerate() {
        let pos = alg.basis_between(x, x).iter().position(|&b| b == alg.idempotent(x)).expect("idempotent");
        let v = cover.sum.injections[i].then(t).comp(x).col(pos);
        let u = g.comp(x).solve(&v)?;
        maps.push(map_from_projective(alg, x, g.source(), &u));
    }
    Some(map_from_sum(&cover.sum, &maps, g.source()))
}

/// Cocycle of the class on a projective resolution: a map Ω^d M → N and the
/// coboundaries, the restrictions of Hom(P_{d-1}, N) to Ω^d M.
pub struct Cocycle {
    pub theta: ModuleMap,
    pub coboundaries: Vec<ModuleMap>,
}

impl Cocycle {
    pub fn is_coboundary(&self) -> bool {
        self.theta.is_zero() || coordinates_in(&self.coboundaries, &self.theta).is_some()
    }
}

/// Comparison maps from a projective resolution of M into the sequence,
/// restricted to the d-th syzygy.
pub fn cocycle(e: &ExtensionClass) -> Cocycle {
    let d = e.degree();
    assert!(d >= 1, "positive degree");
    let g = &e.maps;
    let mut cover = projective_cover(e.right_end());
    let mut f = lift(&cover, &cover.map, &g[d]).expect("lift along a surjection");
    let mut iota = cover.map.kernel();
    for k in 1..d {
        let next = projective_cover(iota.source());
        let t = next.map.then(&iota).then(&f);
        f = lift(&next, &t, &g[d - k]).expect("exactness gives a lift");
        cover = next;
        iota = cover.map.kernel();
    }
    let theta = iota.then(&f).factor_through_mono(&g[0]).expect("lands in the left end");
    let coboundaries = hom_basis(&cover.sum.module, e.left_end()).iter().map(|h| iota.then(h)).collect();
    Cocycle { theta, coboundaries }
}

/// Whether the class is nonzero: degree 0 compares with the zero map,
/// degree 1 looks for a retraction, higher degrees use the cocycle.
pub fn ext_nonzero(e: &ExtensionClass) -> bool {
    match e.degree() {
        0 => !e.maps[0].is_zero(),
        1 => !has_retraction(&e.maps[0]),
        _ => !cocycle(e).is_coboundary(),
    }
}

/// The cocycle test in every positive degree.
pub fn ext_nonzero_cocycle(e: &ExtensionClass) -> bool {
    !cocycle(e).is_coboundary()
}

fn has_retraction(iota: &ModuleMap) -> bool {
    let hs = hom_basis(iota.target(), iota.source());
    let comps: Vec<ModuleMap> = hs.iter().map(|h| iota.then(h)).collect();
    coordinates_in(&comps, &iota.source().identity()).is_some()
}

/// Splice of N ⊗ ε' with ε ⊗ M' over `c = tensor(Λ, Λ')`.
pub fn external_product(c: &Algebra, e: &ExtensionClass, e2: &ExtensionClass) -> Result<ExtensionClass, OdimError> {
    let n = e.left_end().identity();
    let m2 = e2.right_end().identity();
    let mut maps = Vec::new();
    for g in &e2.maps[..e2.maps.len() - 1] {
        maps.push(tensor_maps(c, &n, g)?);
    }
    let tail = tensor_maps(c, &n, e2.maps.last().expect("maps"))?;
    let head = tensor_maps(c, &e.maps[0], &m2)?;
    maps.push(tail.then(&head));
    for g in &e.maps[1..] {
        maps.push(tensor_maps(c, g, &m2)?);
    }
    ExtensionClass::new(maps)
}

/// The degree-0 class of the identity on M.
pub fn identity_class(m: &Module) -> ExtensionClass {
    ExtensionClass { maps: vec![m.identity()] }
}

/// The same sequence with its first map scaled.
pub fn scale_class(e: &ExtensionClass, s: &Scalar) -> Result<ExtensionClass, OdimError> {
    let mut maps = e.maps.clone();
    let first = maps[0].scale(s);
    let m = first.source().clone();
    maps[0] = first;
    if s.is_zero() {
        return Err(OdimError::NotExact(format!("zero scaling of {}", m.dim_vector_string())));
    }
    ExtensionClass::new(maps)
}

/// The split sequence 0 → N → N ⊕ M → M → 0.
pub fn split_class(n: &Module, m: &Module) -> Result<ExtensionClass, OdimError> {
    let sum = crate::modcat::direct_sum(n.algebra(), &[n.clone(), m.clone()]);
    ExtensionClass::new(vec![sum.injections[0].clone(), sum.projections[1].clone()])
}

#[derive(Clone, Debug, Serialize)]
pub struct PointRow {
    pub point: Vec<String>,
    pub nonzero: bool,
    pub degree: usize,
    pub middle: Vec<Vec<usize>>,
    pub hash: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct OdimCertificate {
    pub vars: usize,
    pub passed: usize,
    pub total: usize,
    pub rows: Vec<PointRow>,
    /// Set when every sampled point carries a nonzero class.
    pub witness_for: Option<usize>,
    pub caveat: String,
}

/// All k-rational points of k^d over a finite field.
pub fn all_points(field: FieldSpec, d: usize) -> Option<Vec<Vec<Scalar>>> {
    let elems = field.elements()?;
    let mut pts = vec![vec![]];
    for _ in 0..d {
        pts = pts.into_iter().flat_map(|p: Vec<Scalar>| elems.iter().map(move |e| [p.clone(), vec![e.clone()]].concat())).collect();
    }
    Some(pts)
}

/// Tests [L ⊗ ε_α] ≠ 0 at each point α.
pub fn odim_witness(l: &Lattice, points: &[Vec<Scalar>]) -> Result<OdimCertificate, OdimError> {
    let field = l.algebra.field;
    let rows = points
        .par_iter()
        .map(|p| {
            if p.len() != l.vars {
                return Err(OdimError::PointArity { expected: l.vars, got: p.len() });
            }
            let e = tensor_sequence(l, &eps_point(field, p))?;
            Ok(PointRow {
                point: p.iter().map(|s| s.to_string()).collect(),
                nonzero: ext_nonzero(&e),
                degree: e.degree(),
                middle: e.middle().iter().map(|m| m.dims().to_vec()).collect(),
                hash: e.content_hash(),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let passed = rows.iter().filter(|r| r.nonzero).count();
    let total = rows.len();
    Ok(OdimCertificate {
        vars: l.vars,
        passed,
        total,
        witness_for: (total > 0 && passed == total).then_some(l.vars),
        caveat: "density in Max R is sampled at k-rational points only".into(),
        rows,
    })
}

/// The Kronecker family (R, R; 1, T).
pub fn kronecker_family(kron: &Algebra) -> Result<Lattice, OdimError> {
    let f = kron.field;
    let one = PolyMatrix::constant(&Matrix::identity(f, 1));
    let t = PolyMatrix { rows: 1, cols: 1, entries: vec![LPoly::var(f, 0)] };
    Lattice::new(kron, 1, vec![1, 1], vec![one, t])
}

/// Product of the Kronecker family with itself over K ⊗ K.
pub fn kronecker_square_family(field: FieldSpec) -> Result<(Algebra, Lattice), OdimError> {
    let k = crate::fixtures::kronecker(field);
    let l = kronecker_family(&k)?;
    let c = tensor(&k, &k).expect("one field");
    let p = tensor_lattices(&c, &l, &l)?;
    Ok((c, p))
}

/// External product of L ⊗ ε_α and L' ⊗ ε_α' over the tensor algebra.
pub fn kunneth_class(c: &Algebra, l: &Lattice, l2: &Lattice, a: &[Scalar], a2: &[Scalar]) -> Result<ExtensionClass, OdimError> {
    let field = c.field;
    let e = tensor_sequence(l, &eps_point(field, a))?;
    let e2 = tensor_sequence(l2, &eps_point(field, a2))?;
    external_product(c, &e, &e2)
}

/// Specialization of a tensor lattice against the tensor of specializations.
pub fn specialization_matches_tensor(c: &Algebra, l: &Lattice, l2: &Lattice, a: &[Scalar], a2: &[Scalar]) -> Result<bool, OdimError> {
    let p = tensor_lattices(c, l, l2)?;
    let lhs = specialize(&p, &[a, a2].concat())?;
    let rhs = tensor_modules(c, &specialize(l, a)?, &specialize(l2, a2)?)?;
    Ok(lhs.dims() == rhs.dims() && lhs.actions() == rhs.actions())
}
