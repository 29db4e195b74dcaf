//! Finite-dimensional representations, morphisms, Hom spaces, standard
//! modules, duality and the radical and socle filtrations.
//!
//! An arrow `a: x -> y` acts by a `dim(y) x dim(x)` matrix; a path
//! `a1 a2 ... ak` acts by `M_ak ... M_a2 M_a1`.

mod ar;
mod decomp;
mod functors;

pub use ar::{almost_split_sequence, source_map, tau_inverse, AlmostSplit};
pub use decomp::{
    decompose, end_radical, is_indecomposable, is_isomorphic, iso_indecomposable, radical_of_matrix_algebra,
    Decomposition, EndAlgebra,
};
pub use functors::{
    eta, gamma, gamma_via_sigma, hom_to_lambda, hom_to_lambda_map, injective_envelope,
    left_mult, map_from_projective, min_projective_presentation, nu, nu_map, projective_cover, sigma, tau,
    HomLambda, Presentation, ProjectiveCover,
};

use crate::algebra::{Algebra, AlgebraError};
use crate::exactlin::{FieldSpec, Matrix, Scalar};
use rand::Rng;
use sha2::{Digest, Sha256};
use std::fmt;
use std::sync::Arc;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ModError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("relation {0} does not act as zero")]
    RelationViolated(usize),
    #[error("not a module homomorphism at arrow {0}")]
    NotHomomorphism(String),
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("module is not projective")]
    NotProjective,
    #[error("module is not torsionless")]
    NotTorsionless,
    #[error("decomposition undecided after {0} trials")]
    Undecided(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

struct Inner {
    alg: Algebra,
    dims: Vec<usize>,
    action: Vec<Matrix>,
}

/// A representation of the quiver of an algebra satisfying its relations.
#[derive(Clone)]
pub struct Module(Arc<Inner>);

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module{:?}", self.dims())
    }
}

impl Module {
    pub fn new(alg: &Algebra, dims: Vec<usize>, action: Vec<Matrix>) -> Result<Module, ModError> {
        if dims.len() != alg.num_vertices() || action.len() != alg.num_arrows() {
            return Err(ModError::Shape("vertex or arrow count".into()));
        }
        for (i, a) in alg.quiver.arrows.iter().enumerate() {
            if action[i].shape() != (dims[a.target], dims[a.source]) {
                return Err(ModError::Shape(format!("matrix for arrow `{}`", a.name)));
            }
            if action[i].field() != alg.field {
                return Err(ModError::Shape(format!("field of arrow `{}`", a.name)));
            }
        }
        let m = Module(Arc::new(Inner { alg: alg.clone(), dims, action }));
        if let Some(r) = m.violated_relation() {
            return Err(ModError::RelationViolated(r));
        }
        Ok(m)
    }

    /// Construct without checking relations (checked in debug builds).
    pub(crate) fn from_parts(alg: &Algebra, dims: Vec<usize>, action: Vec<Matrix>) -> Module {
        let m = Module(Arc::new(Inner { alg: alg.clone(), dims, action }));
        debug_assert!(m.violated_relation().is_none(), "constructed module violates a relation");
        m
    }

    pub fn zero(alg: &Algebra) -> Module {
        let dims = vec![0; alg.num_vertices()];
        let action = alg.quiver.arrows.iter().map(|_| Matrix::zeros(alg.field, 0, 0)).collect();
        Module::from_parts(alg, dims, action)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.0.alg
    }

    pub fn field(&self) -> FieldSpec {
        self.0.alg.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.0.dims
    }

    pub fn dim(&self, x: usize) -> usize {
        self.0.dims[x]
    }

    pub fn total_dim(&self) -> usize {
        self.0.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn action(&self, a: usize) -> &Matrix {
        &self.0.action[a]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.0.action
    }

    /// Start of each vertex block in the total space.
    pub fn offsets(&self) -> Vec<usize> {
        let mut o = Vec::with_capacity(self.dims().len() + 1);
        let mut s = 0;
        for &d in self.dims() {
            o.push(s);
            s += d;
        }
        o.push(s);
        o
    }

    /// Matrix by which a path (arrows in composition order) acts, starting
    /// at vertex `x`.
    pub fn path_matrix(&self, x: usize, arrows: &[usize]) -> Matrix {
        let mut m = Matrix::identity(self.field(), self.dim(x));
        for &a in arrows {
            m = self.action(a).mul(&m);
        }
        m
    }

    fn violated_relation(&self) -> Option<usize> {
        let alg = self.algebra();
        for (i, rel) in alg.relations.iter().enumerate() {
            let s = alg.quiver.arrows[rel.terms[0].1[0]].source;
            let t = alg.quiver.arrows[*rel.terms[0].1.last().unwrap()].target;
            let mut acc = Matrix::zeros(self.field(), self.dim(t), self.dim(s));
            for (c, p) in &rel.terms {
                acc = acc.add(&self.path_matrix(s, p).scale(c));
            }
            if !acc.is_zero() {
                return Some(i);
            }
        }
        None
    }

    pub fn same_algebra(&self, o: &Module) -> bool {
        self.algebra() == o.algebra()
    }

    /// SHA-256 of a canonical text rendering of the data.
    pub fn content_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.field().name().as_bytes());
        for d in self.dims() {
            h.update(format!(";{d}").as_bytes());
        }
        for m in self.actions() {
            h.update(b"|");
            for s in m.entries() {
                h.update(s.to_string().as_bytes());
                h.update(b",");
            }
        }
        hex::encode(h.finalize())
    }

    /// Matrices of all arrows out of `x`, stacked vertically.
    pub fn out_matrix(&self, x: usize) -> Matrix {
        let alg = self.algebra();
        let blocks: Vec<&Matrix> = alg.quiver.arrows_from(x).map(|a| self.action(a)).collect();
        Matrix::vstack(self.field(), self.dim(x), &blocks)
    }

    /// Subspaces spanned by the images of the arrows into each vertex.
    pub fn in_images(&self, y: usize) -> Matrix {
        let alg = self.algebra();
        let blocks: Vec<&Matrix> = alg.quiver.arrows_into(y).map(|a| self.action(a)).collect();
        Matrix::hstack(self.field(), self.dim(y), &blocks).column_space()
    }

    /// Submodule with the given per-vertex column bases (full column rank,
    /// closed under the action); returns the inclusion.
    pub fn submodule(&self, bases: Vec<Matrix>) -> ModuleMap {
        let alg = self.algebra().clone();
        let dims: Vec<usize> = bases.iter().map(|b| b.cols()).collect();
        let action = alg
            .quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let img = self.action(i).mul(&bases[a.source]);
                bases[a.target].solve_matrix(&img).expect("subspace family is closed under the action")
            })
            .collect();
        let sub = Module::from_parts(&alg, dims, action);
        ModuleMap::from_parts(sub, self.clone(), bases)
    }

    /// Submodule generated by the columns of `gens[x]` at each vertex.
    pub fn generated_submodule(&self, gens: &[Matrix]) -> ModuleMap {
        let alg = self.algebra();
        let mut spans: Vec<Matrix> = gens.iter().map(|g| g.column_space()).collect();
        loop {
            let mut changed = false;
            for (i, a) in alg.quiver.arrows.iter().enumerate() {
                let img = self.action(i).mul(&spans[a.source]);
                let joined = Matrix::hstack(self.field(), self.dim(a.target), &[&spans[a.target], &img]).column_space();
                if joined.cols() > spans[a.target].cols() {
                    spans[a.target] = joined;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        self.submodule(spans)
    }

    /// Submodule generated by a single element given in the total space.
    pub fn element_submodule(&self, v: &[Scalar]) -> ModuleMap {
        let off = self.offsets();
        let gens: Vec<Matrix> = (0..self.dims().len())
            .map(|x| Matrix::from_columns(self.field(), self.dim(x), &[v[off[x]..off[x + 1]].to_vec()]))
            .collect();
        self.generated_submodule(&gens)
    }

    pub fn identity(&self) -> ModuleMap {
        let comps = self.dims().iter().map(|&d| Matrix::identity(self.field(), d)).collect();
        ModuleMap::from_parts(self.clone(), self.clone(), comps)
    }

    /// Loewy length: least t with rad^t M = 0.
    pub fn loewy_length(&self) -> usize {
        let mut m = self.clone();
        let mut t = 0;
        while !m.is_zero() {
            m = radical(&m).source().clone();
            t += 1;
        }
        t
    }

    pub fn is_projective(&self) -> bool {
        let top = top(self);
        let cover_dim: usize = (0..self.dims().len())
            .map(|x| top.target().dim(x) * projective(self.algebra(), x).total_dim())
            .sum();
        cover_dim == self.total_dim()
    }

    pub fn is_injective(&self) -> bool {
        dual(self).is_projective()
    }

    pub fn dim_vector_string(&self) -> String {
        let s: Vec<String> = self.dims().iter().map(|d| d.to_string()).collect();
        format!("({})", s.join(","))
    }
}

/// A morphism of modules: one matrix per vertex.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    source: Module,
    target: Module,
    comps: Vec<Matrix>,
}

impl ModuleMap {
    pub fn new(source: &Module, target: &Module, comps: Vec<Matrix>) -> Result<ModuleMap, ModError> {
        if !source.same_algebra(target) {
            return Err(ModError::AlgebraMismatch);
        }
        if comps.len() != source.dims().len() {
            return Err(ModError::Shape("component count".into()));
        }
        for (x, c) in comps.iter().enumerate() {
            if c.shape() != (target.dim(x), source.dim(x)) {
                return Err(ModError::Shape(format!("component at vertex {x}")));
            }
        }
        let f = ModuleMap { source: source.clone(), target: target.clone(), comps };
        if let Some(a) = f.failing_arrow() {
            return Err(ModError::NotHomomorphism(source.algebra().quiver.arrows[a].name.clone()));
        }
        Ok(f)
    }

    pub(crate) fn from_parts(source: Module, target: Module, comps: Vec<Matrix>) -> ModuleMap {
        let f = ModuleMap { source, target, comps };
        debug_assert!(f.failing_arrow().is_none(), "constructed map does not intertwine");
        f
    }

    fn failing_arrow(&self) -> Option<usize> {
        let q = &self.source.algebra().quiver;
        q.arrows.iter().enumerate().position(|(i, a)| {
            self.target.action(i).mul(&self.comps[a.source]) != self.comps[a.target].mul(self.source.action(i))
        })
    }

    pub fn zero(source: &Module, target: &Module) -> ModuleMap {
        let f = source.field();
        let comps = (0..source.dims().len()).map(|x| Matrix::zeros(f, target.dim(x), source.dim(x))).collect();
        ModuleMap { source: source.clone(), target: target.clone(), comps }
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn comp(&self, x: usize) -> &Matrix {
        &self.comps[x]
    }

    pub fn comps(&self) -> &[Matrix] {
        &self.comps
    }

    pub fn field(&self) -> FieldSpec {
        self.source.field()
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &ModuleMap) -> ModuleMap {
        assert_eq!(self.target.dims(), g.source.dims(), "composable maps");
        let comps = self.comps.iter().zip(&g.comps).map(|(f, g)| g.mul(f)).collect();
        ModuleMap { source: self.source.clone(), target: g.target.clone(), comps }
    }

    pub fn add(&self, o: &ModuleMap) -> ModuleMap {
        let comps = self.comps.iter().zip(&o.comps).map(|(a, b)| a.add(b)).collect();
        ModuleMap { source: self.source.clone(), target: self.target.clone(), comps }
    }

    pub fn sub(&self, o: &ModuleMap) -> ModuleMap {
        let comps = self.comps.iter().zip(&o.comps).map(|(a, b)| a.sub(b)).collect();
        ModuleMap { source: self.source.clone(), target: self.target.clone(), comps }
    }

    pub fn scale(&self, s: &Scalar) -> ModuleMap {
        let comps = self.comps.iter().map(|a| a.scale(s)).collect();
        ModuleMap { source: self.source.clone(), target: self.target.clone(), comps }
    }

    /// Σ c_i f_i for maps with common source and target.
    pub fn combination(source: &Module, target: &Module, maps: &[ModuleMap], coeffs: &[Scalar]) -> ModuleMap {
        let mut acc = ModuleMap::zero(source, target);
        for (f, c) in maps.iter().zip(coeffs) {
            if !c.is_zero() {
                acc = acc.add(&f.scale(c));
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn rank(&self) -> Vec<usize> {
        self.comps.iter().map(|c| c.rank()).collect()
    }

    pub fn is_injective(&self) -> bool {
        self.comps.iter().zip(self.source.dims()).all(|(c, &d)| c.rank() == d)
    }

    pub fn is_surjective(&self) -> bool {
        self.comps.iter().zip(self.target.dims()).all(|(c, &d)| c.rank() == d)
    }

    pub fn is_iso(&self) -> bool {
        self.source.dims() == self.target.dims() && self.comps.iter().all(|c| c.is_invertible())
    }

    pub fn inverse(&self) -> Option<ModuleMap> {
        let comps = self.comps.iter().map(|c| c.inverse()).collect::<Option<Vec<_>>>()?;
        Some(ModuleMap { source: self.target.clone(), target: self.source.clone(), comps })
    }

    /// Inclusion of the kernel.
    pub fn kernel(&self) -> ModuleMap {
        self.source.submodule(self.comps.iter().map(|c| c.kernel_basis()).collect())
    }

    /// Factorization `source -> image -> target`.
    pub fn image(&self) -> (ModuleMap, ModuleMap) {
        let inc = self.target.submodule(self.comps.iter().map(|c| c.column_space()).collect());
        let onto = self.factor_through_mono(&inc).expect("map factors through its image");
        (onto, inc)
    }

    /// Projection onto the cokernel.
    pub fn cokernel(&self) -> ModuleMap {
        let field = self.field();
        let n = &self.target;
        let mut projs = Vec::new();
        let mut comps = Vec::new();
        for x in 0..n.dims().len() {
            let img = self.comps[x].column_space();
            let comp = Matrix::identity(field, n.dim(x)).complement_columns(&img);
            let full = Matrix::hstack(field, n.dim(x), &[&img, &comp]);
            let inv = full.inverse().expect("image plus complement is a basis");
            let p = inv.submatrix(img.cols()..n.dim(x), 0..n.dim(x));
            comps.push(comp);
            projs.push(p);
        }
        let alg = n.algebra();
        let action = alg
            .quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(i, a)| projs[a.target].mul(&n.action(i).mul(&comps[a.source])))
            .collect();
        let dims = comps.iter().map(|c| c.cols()).collect();
        let q = Module::from_parts(alg, dims, action);
        ModuleMap::from_parts(n.clone(), q, projs)
    }

    /// For an injective `u: U -> T` with the same target, the unique `psi`
    /// with `u ∘ psi = self`, if it exists.
    pub fn factor_through_mono(&self, u: &ModuleMap) -> Option<ModuleMap> {
        let comps = self
            .comps
            .iter()
            .zip(&u.comps)
            .map(|(f, u)| u.solve_matrix(f))
            .collect::<Option<Vec<_>>>()?;
        Some(ModuleMap { source: self.source.clone(), target: u.source.clone(), comps })
    }

    /// For a surjective `p: S -> X` with the same source, the unique `psi`
    /// with `psi ∘ p = self`, if it exists.
    pub fn factor_through_epi(&self, p: &ModuleMap) -> Option<ModuleMap> {
        let comps = self
            .comps
            .iter()
            .zip(&p.comps)
            .map(|(f, p)| p.transpose().solve_matrix(&f.transpose()).map(|x| x.transpose()))
            .collect::<Option<Vec<_>>>()?;
        Some(ModuleMap { source: p.target.clone(), target: self.target.clone(), comps })
    }

    /// Entries of all components concatenated (vertex order, row-major).
    pub fn to_flat(&self) -> Vec<Scalar> {
        self.comps.iter().flat_map(|c| c.entries().iter().cloned()).collect()
    }

    /// Block-diagonal matrix on the total spaces.
    pub fn total_matrix(&self) -> Matrix {
        let blocks: Vec<&Matrix> = self.comps.iter().collect();
        block_diag_rect(self.field(), &blocks)
    }

    /// Same matrices with the source or target replaced by an identical
    /// module object.
    pub(crate) fn with_ends(&self, source: &Module, target: &Module) -> ModuleMap {
        ModuleMap { source: source.clone(), target: target.clone(), comps: self.comps.clone() }
    }

    pub fn transpose_dual(&self) -> ModuleMap {
        ModuleMap {
            source: dual(&self.target),
            target: dual(&self.source),
            comps: self.comps.iter().map(|c| c.transpose()).collect(),
        }
    }
}

fn block_diag_rect(field: FieldSpec, blocks: &[&Matrix]) -> Matrix {
    let r: usize = blocks.iter().map(|b| b.rows()).sum();
    let c: usize = blocks.iter().map(|b| b.cols()).sum();
    let mut m = Matrix::zeros(field, r, c);
    let (mut r0, mut c0) = (0, 0);
    for b in blocks {
        m.paste(r0, c0, b);
        r0 += b.rows();
        c0 += b.cols();
    }
    m
}

/// Coordinates of a map in a list of maps (as flat vectors); None when it is
/// not in their span.
pub fn coordinates_in(maps: &[ModuleMap], f: &ModuleMap) -> Option<Vec<Scalar>> {
    let field = f.field();
    let n = f.to_flat().len();
    let cols: Vec<Vec<Scalar>> = maps.iter().map(|m| m.to_flat()).collect();
    let a = Matrix::from_columns(field, n, &cols);
    a.solve(&f.to_flat())
}

/// A direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: Module,
    pub injections: Vec<ModuleMap>,
    pub projections: Vec<ModuleMap>,
}

pub fn direct_sum(alg: &Algebra, mods: &[Module]) -> DirectSum {
    let field = alg.field;
    let nv = alg.num_vertices();
    let dims: Vec<usize> = (0..nv).map(|x| mods.iter().map(|m| m.dim(x)).sum()).collect();
    let action = (0..alg.num_arrows())
        .map(|a| {
            let blocks: Vec<&Matrix> = mods.iter().map(|m| m.action(a)).collect();
            block_diag_rect(field, &blocks)
        })
        .collect();
    let sum = Module::from_parts(alg, dims.clone(), action);
    let mut start = vec![0usize; nv];
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    for m in mods {
        let mut inj = Vec::new();
        let mut proj = Vec::new();
        for x in 0..nv {
            let mut i = Matrix::zeros(field, dims[x], m.dim(x));
            let mut p = Matrix::zeros(field, m.dim(x), dims[x]);
            for k in 0..m.dim(x) {
                i.set(start[x] + k, k, field.one());
                p.set(k, start[x] + k, field.one());
            }
            inj.push(i);
            proj.push(p);
            start[x] += m.dim(x);
        }
        injections.push(ModuleMap::from_parts(m.clone(), sum.clone(), inj));
        projections.push(ModuleMap::from_parts(sum.clone(), m.clone(), proj));
    }
    DirectSum { module: sum, injections, projections }
}

/// The map `⊕ S_i -> T` with components `maps[i]`.
pub fn map_from_sum(sum: &DirectSum, maps: &[ModuleMap], target: &Module) -> ModuleMap {
    let mut acc = ModuleMap::zero(&sum.module, target);
    for (p, f) in sum.projections.iter().zip(maps) {
        acc = acc.add(&p.then(f));
    }
    acc
}

/// The map `S -> ⊕ T_i` with components `maps[i]`.
pub fn map_into_sum(source: &Module, maps: &[ModuleMap], sum: &DirectSum) -> ModuleMap {
    let mut acc = ModuleMap::zero(source, &sum.module);
    for (i, f) in sum.injections.iter().zip(maps) {
        acc = acc.add(&f.then(i));
    }
    acc
}

/// Basis of Hom(M, N) from one kernel computation on the stacked
/// intertwining equations.
pub fn hom_basis(m: &Module, n: &Module) -> Vec<ModuleMap> {
    assert!(m.same_algebra(n), "hom_basis needs modules over one algebra");
    let alg = m.algebra();
    let field = m.field();
    let nv = alg.num_vertices();
    let mut var_off = Vec::with_capacity(nv + 1);
    let mut nvars = 0;
    for x in 0..nv {
        var_off.push(nvars);
        nvars += n.dim(x) * m.dim(x);
    }
    var_off.push(nvars);
    if nvars == 0 {
        return vec![];
    }
    let neq: usize = alg.quiver.arrows.iter().map(|a| n.dim(a.target) * m.dim(a.source)).sum();
    let mut sys = Matrix::zeros(field, neq, nvars);
    let mut row = 0;
    for (ai, a) in alg.quiver.arrows.iter().enumerate() {
        let (x, y) = (a.source, a.target);
        let (na, ma) = (n.action(ai), m.action(ai));
        // N_a F_x - F_y M_a = 0
        for i in 0..n.dim(y) {
            for j in 0..m.dim(x) {
                for k in 0..n.dim(x) {
                    let c = na.get(i, k);
                    if !c.is_zero() {
                        let v = var_off[x] + k * m.dim(x) + j;
                        let cur = sys.get(row, v).add_ref(c);
                        sys.set(row, v, cur);
                    }
                }
                for k in 0..m.dim(y) {
                    let c = ma.get(k, j);
                    if !c.is_zero() {
                        let v = var_off[y] + i * m.dim(y) + k;
                        let cur = sys.get(row, v).sub_ref(c);
                        sys.set(row, v, cur);
                    }
                }
                row += 1;
            }
        }
    }
    let k = sys.kernel_basis();
    (0..k.cols())
        .map(|c| {
            let col = k.col(c);
            let comps = (0..nv)
                .map(|x| Matrix::from_vec(field, n.dim(x), m.dim(x), col[var_off[x]..var_off[x + 1]].to_vec()))
                .collect();
            ModuleMap::from_parts(m.clone(), n.clone(), comps)
        })
        .collect()
}

pub fn hom_dim(m: &Module, n: &Module) -> usize {
    hom_basis(m, n).len()
}

/// Indecomposable projective P(x): the fiber at y has the paths x -> y as
/// basis, and arrows act by concatenation on the right.
pub fn projective(alg: &Algebra, x: usize) -> Module {
    let labels = projective_labels(alg, x);
    let dims = labels.iter().map(|l| l.len()).collect();
    let field = alg.field;
    let action = alg
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let (src, tgt) = (&labels[a.source], &labels[a.target]);
            let mut m = Matrix::zeros(field, tgt.len(), src.len());
            for (c, &b) in src.iter().enumerate() {
                for (idx, coef) in alg.times_arrow(b, ai) {
                    let r = tgt.binary_search(&idx).expect("product lands in the target fiber");
                    m.set(r, c, coef);
                }
            }
            m
        })
        .collect();
    Module::from_parts(alg, dims, action)
}

/// Path-basis indices spanning each fiber of P(x).
pub fn projective_labels(alg: &Algebra, x: usize) -> Vec<Vec<usize>> {
    (0..alg.num_vertices()).map(|y| alg.basis_between(x, y)).collect()
}

/// Q(x) = D(P(x)) for the projective of the opposite algebra.
pub fn injective(alg: &Algebra, x: usize) -> Module {
    dual(&projective(&alg.opposite(), x))
}

pub fn simple(alg: &Algebra, x: usize) -> Module {
    let dims = (0..alg.num_vertices()).map(|y| usize::from(x == y)).collect::<Vec<_>>();
    let action = alg.quiver.arrows.iter().map(|a| Matrix::zeros(alg.field, dims[a.target], dims[a.source])).collect();
    Module::from_parts(alg, dims, action)
}

/// The regular module as the direct sum of all P(x).
pub fn regular(alg: &Algebra) -> DirectSum {
    let ps: Vec<Module> = (0..alg.num_vertices()).map(|x| projective(alg, x)).collect();
    direct_sum(alg, &ps)
}

/// k-dual, a module over the opposite algebra.
pub fn dual(m: &Module) -> Module {
    let op = m.algebra().opposite();
    let action = m.actions().iter().map(|a| a.transpose()).collect();
    Module::from_parts(&op, m.dims().to_vec(), action)
}

/// Inclusion of rad M = J M.
pub fn radical(m: &Module) -> ModuleMap {
    m.submodule((0..m.dims().len()).map(|y| m.in_images(y)).collect())
}

/// Inclusion of soc M, the joint kernel of all arrows.
pub fn socle(m: &Module) -> ModuleMap {
    m.submodule((0..m.dims().len()).map(|x| m.out_matrix(x).kernel_basis()).collect())
}

/// Projection M -> top M.
pub fn top(m: &Module) -> ModuleMap {
    radical(m).cokernel()
}

/// Inclusion of the t-th socle ₜM = { m : J^t m = 0 }.
pub fn socle_series(m: &Module, t: usize) -> ModuleMap {
    let field = m.field();
    let alg = m.algebra();
    let nv = m.dims().len();
    let mut bases: Vec<Matrix> = (0..nv).map(|x| Matrix::zeros(field, m.dim(x), 0)).collect();
    for _ in 0..t {
        // Annihilators of the current layer: W_y with kernel = span(bases[y]).
        let ann: Vec<Matrix> = bases.iter().map(|b| b.transpose().kernel_basis().transpose()).collect();
        let next: Vec<Matrix> = (0..nv)
            .map(|x| {
                let blocks: Vec<Matrix> = alg.quiver.arrows_from(x).map(|a| {
                    let y = alg.quiver.arrows[a].target;
                    ann[y].mul(m.action(a))
                }).collect();
                let refs: Vec<&Matrix> = blocks.iter().collect();
                Matrix::vstack(field, m.dim(x), &refs).kernel_basis()
            })
            .collect();
        let done = next.iter().zip(&bases).all(|(a, b)| a.cols() == b.cols());
        bases = next;
        if done {
            break;
        }
    }
    m.submodule(bases)
}

/// Inclusion of rad^t M.
pub fn radical_power(m: &Module, t: usize) -> ModuleMap {
    let mut inc = m.identity();
    for _ in 0..t {
        let r = radical(inc.source());
        inc = r.then(&inc);
    }
    inc
}

/// Tensor product of modules over the tensor product algebra `c`, which must
/// have been built as `tensor(m.algebra(), n.algebra())`.
pub fn tensor_modules(c: &Algebra, m: &Module, n: &Module) -> Result<Module, ModError> {
    let (a, b) = (m.algebra(), n.algebra());
    let (na, nb) = (a.num_vertices(), b.num_vertices());
    if c.num_vertices() != na * nb || c.num_arrows() != a.num_arrows() * nb + na * b.num_arrows() {
        return Err(ModError::AlgebraMismatch);
    }
    let field = c.field;
    let dims = (0..na).flat_map(|x| (0..nb).map(move |y| (x, y))).map(|(x, y)| m.dim(x) * n.dim(y)).collect();
    let mut action = Vec::new();
    for al in 0..a.num_arrows() {
        for y in 0..nb {
            action.push(m.action(al).kron(&Matrix::identity(field, n.dim(y))));
        }
    }
    for x in 0..na {
        for be in 0..b.num_arrows() {
            action.push(Matrix::identity(field, m.dim(x)).kron(n.action(be)));
        }
    }
    Module::new(c, dims, action)
}

/// Tensor product of maps, matching `tensor_modules`.
pub fn tensor_maps(c: &Algebra, f: &ModuleMap, g: &ModuleMap) -> Result<ModuleMap, ModError> {
    let s = tensor_modules(c, f.source(), g.source())?;
    let t = tensor_modules(c, f.target(), g.target())?;
    let nb = g.source().dims().len();
    let comps = (0..f.source().dims().len())
        .flat_map(|x| (0..nb).map(move |y| (x, y)))
        .map(|(x, y)| f.comp(x).kron(g.comp(y)))
        .collect();
    ModuleMap::new(&s, &t, comps)
}

/// Random module: a quotient or submodule of a small sum of indecomposable
/// projectives, cut by the submodule generated by random elements.
pub fn random_module<R: Rng + ?Sized>(alg: &Algebra, rng: &mut R, max_summands: usize) -> Module {
    let field = alg.field;
    let nv = alg.num_vertices();
    let k = rng.gen_range(1..=max_summands.max(1));
    let ps: Vec<Module> = (0..k).map(|_| projective(alg, rng.gen_range(0..nv))).collect();
    let sum = direct_sum(alg, &ps).module;
    let gens = rng.gen_range(0..=2usize);
    let mut mats: Vec<Matrix> = (0..nv).map(|x| Matrix::zeros(field, sum.dim(x), 0)).collect();
    for _ in 0..gens {
        let x = rng.gen_range(0..nv);
        if sum.dim(x) == 0 {
            continue;
        }
        let v: Vec<Scalar> = (0..sum.dim(x)).map(|_| field.random(rng)).collect();
        let col = Matrix::from_columns(field, sum.dim(x), &[v]);
        mats[x] = Matrix::hstack(field, sum.dim(x), &[&mats[x], &col]);
    }
    let sub = sum.generated_submodule(&mats);
    if rng.gen_bool(0.5) {
        sub.cokernel().target().clone()
    } else if sub.source().is_zero() {
        sum
    } else {
        sub.source().clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Quiver, Relation};

    fn a3(field: FieldSpec) -> Algebra {
        let q = Quiver::from_names(&["1", "2", "3"], &[("b", "3", "2"), ("a", "2", "1")]).unwrap();
        Algebra::build(q, field, vec![Relation::monomial(field, vec![0, 1])], 30).unwrap()
    }

    fn kron_module(field: FieldSpec, alpha: i64) -> Module {
        let q = Quiver::from_names(&["s", "t"], &[("b", "s", "t"), ("c", "s", "t")]).unwrap();
        let k = Algebra::path_algebra(q, field).unwrap();
        Module::new(&k, vec![1, 1], vec![Matrix::from_i64(field, &[&[1]]), Matrix::from_i64(field, &[&[alpha]])]).unwrap()
    }

    #[test]
    fn standard_modules_of_a3() {
        let a = a3(FieldSpec::Prime(3));
        assert_eq!(projective(&a, 2).dims(), &[0, 1, 1]);
        assert_eq!(projective(&a, 0).dims(), &[1, 0, 0]);
        assert_eq!(injective(&a, 0).dims(), &[1, 1, 0]);
        assert_eq!(regular(&a).module.total_dim(), a.dim());
        assert_eq!(hom_dim(&simple(&a, 0), &simple(&a, 1)), 0);
    }

    #[test]
    fn yoneda_dimension() {
        let a = a3(FieldSpec::Prime(2));
        let n = injective(&a, 0);
        for x in 0..3 {
            assert_eq!(hom_dim(&projective(&a, x), &n), n.dim(x));
        }
    }

    #[test]
    fn kronecker_brick() {
        for alpha in 0..3 {
            assert_eq!(hom_dim(&kron_module(FieldSpec::Prime(3), alpha), &kron_module(FieldSpec::Prime(3), alpha)), 1);
        }
    }

    #[test]
    fn radical_socle_top() {
        let a = a3(FieldSpec::Prime(5));
        let p = projective(&a, 2);
        assert_eq!(radical(&p).source().dims(), &[0, 1, 0]);
        assert_eq!(socle(&p).source().dims(), &[0, 1, 0]);
        assert_eq!(top(&p).target().dims(), &[0, 0, 1]);
        assert_eq!(socle_series(&p, 2).source().dims(), p.dims());
        assert_eq!(p.loewy_length(), 2);
    }

    #[test]
    fn kernel_image_cokernel_rank_nullity() {
        let a = a3(FieldSpec::Prime(5));
        let p = projective(&a, 2);
        let t = top(&p);
        let k = t.kernel();
        for x in 0..3 {
            assert_eq!(p.dim(x), k.source().dim(x) + t.image().1.source().dim(x));
        }
        let c = k.cokernel();
        assert_eq!(c.target().dims(), t.target().dims());
    }

    #[test]
    fn dual_is_involutive_on_data() {
        let a = a3(FieldSpec::Prime(2));
        let p = projective(&a, 2);
        let dd = dual(&dual(&p));
        assert!(dd.algebra().same(p.algebra()));
        assert_eq!(dd.actions(), p.actions());
    }

    #[test]
    fn bad_module_rejected() {
        let f = FieldSpec::Prime(2);
        let a = a3(f);
        let one = Matrix::from_i64(f, &[&[1]]);
        let err = Module::new(&a, vec![1, 1, 1], vec![one.clone(), one]).unwrap_err();
        assert_eq!(err, ModError::RelationViolated(0));
    }
}
