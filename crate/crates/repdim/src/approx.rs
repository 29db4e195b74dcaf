//! Torsionless and divisible modules, approximations, M-dimension, traces,
//! pullbacks and strongly exact sequences.

use crate::exactlin::{Matrix, Scalar};
use crate::modcat::{
    decompose, direct_sum, dual, end_radical, hom_basis, hom_to_lambda, hom_to_lambda_map, is_isomorphic,
    iso_indecomposable, map_from_sum, map_into_sum, projective, radical, socle, DirectSum, ModError, Module,
    ModuleMap,
};

/// M is torsionless iff the maps M -> Λ have zero joint kernel.
pub fn is_torsionless(m: &Module) -> bool {
    let h = hom_to_lambda(m);
    joint_kernel_is_zero(m, h.bases.iter().flatten())
}

fn joint_kernel_is_zero<'a>(m: &Module, maps: impl Iterator<Item = &'a ModuleMap> + Clone) -> bool {
    (0..m.dims().len()).all(|x| {
        if m.dim(x) == 0 {
            return true;
        }
        let blocks: Vec<&Matrix> = maps.clone().map(|g| g.comp(x)).collect();
        Matrix::vstack(m.field(), m.dim(x), &blocks).rank() == m.dim(x)
    })
}

/// M is divisible iff its dual is torsionless over the opposite algebra.
pub fn is_divisible(m: &Module) -> bool {
    is_torsionless(&dual(m))
}

/// M embeds into a direct sum of copies of rad Λ.
pub fn is_cogenerated_by_radical(m: &Module) -> bool {
    let alg = m.algebra();
    let homs: Vec<ModuleMap> = (0..alg.num_vertices())
        .flat_map(|y| {
            let r = radical(&projective(alg, y));
            hom_basis(m, r.source())
        })
        .collect();
    joint_kernel_is_zero(m, homs.iter())
}

/// An embedding of a torsionless module into a sum of dim soc M
/// indecomposable projectives: one map per socle basis vector.
pub fn torsionless_embedding(m: &Module) -> Option<ModuleMap> {
    let h = hom_to_lambda(m);
    let soc = socle(m);
    let mut maps = Vec::new();
    for x in 0..m.dims().len() {
        for c in 0..soc.comp(x).cols() {
            let v = soc.comp(x).col(c);
            let g = h.bases.iter().flatten().find(|g| g.comp(x).mul_vec(&v).iter().any(|s| !s.is_zero()))?;
            maps.push(g.clone());
        }
    }
    let targets: Vec<Module> = maps.iter().map(|g| g.target().clone()).collect();
    let sum = direct_sum(m.algebra(), &targets);
    let e = map_into_sum(m, &maps, &sum);
    debug_assert!(e.is_injective());
    Some(e)
}

/// Minimal left approximation U -> P by projectives: generators of
/// Hom(U, Λ) modulo maps factoring through radical maps between
/// projectives.
pub fn left_proj_approximation(u: &Module) -> ModuleMap {
    let alg = u.algebra();
    let h = hom_to_lambda(u);
    let mut maps = Vec::new();
    for y in 0..alg.num_vertices() {
        let rad = h.module.in_images(y);
        let comp = Matrix::identity(u.field(), h.module.dim(y)).complement_columns(&rad);
        for c in 0..comp.cols() {
            let coeffs = comp.col(c);
            let p = projective(alg, y);
            let g = ModuleMap::combination(u, &p, &h.bases[y], &coeffs);
            maps.push(g);
        }
    }
    let targets: Vec<Module> = maps.iter().map(|g| g.target().clone()).collect();
    let sum = direct_sum(alg, &targets);
    map_into_sum(u, &maps, &sum)
}

/// Exactness of `P1 -f-> P0 -g-> P-1` at P0, both as given and after
/// applying Hom(-, Λ).
pub fn strongly_exact_check(f: &ModuleMap, g: &ModuleMap) -> Result<bool, ModError> {
    for m in [f.source(), f.target(), g.target()] {
        if !m.is_projective() {
            return Err(ModError::NotProjective);
        }
    }
    let g = g.with_ends(f.target(), g.target());
    if !f.then(&g).is_zero() {
        return Ok(false);
    }
    if !exact_at_middle(f, &g) {
        return Ok(false);
    }
    let (h1, h0, hm1) = (hom_to_lambda(f.source()), hom_to_lambda(f.target()), hom_to_lambda(g.target()));
    let hg = hom_to_lambda_map(&g, &h0, &hm1);
    let hf = hom_to_lambda_map(f, &h1, &h0);
    Ok(exact_at_middle(&hg, &hf.with_ends(hg.target(), hf.target())))
}

/// ker(second) = im(first), checked vertexwise by ranks.
pub fn exact_at_middle(first: &ModuleMap, second: &ModuleMap) -> bool {
    (0..first.target().dims().len()).all(|x| {
        let im = first.comp(x).rank();
        let ker = second.source().dim(x) - second.comp(x).rank();
        im == ker && second.comp(x).mul(first.comp(x)).is_zero()
    })
}

/// The additive closure of a finite list of indecomposable, pairwise
/// non-isomorphic modules, with Hom spaces and radical maps precomputed.
#[derive(Clone, Debug)]
pub struct AddCategory {
    pub objects: Vec<Module>,
    homs: Vec<Vec<Vec<ModuleMap>>>,
    rad: Vec<Vec<Vec<ModuleMap>>>,
}

impl AddCategory {
    /// Objects must be indecomposable and pairwise non-isomorphic.
    pub fn new(objects: Vec<Module>) -> AddCategory {
        let n = objects.len();
        let mut homs = vec![vec![vec![]; n]; n];
        let mut rad = vec![vec![vec![]; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    let e = end_radical(&objects[i]);
                    rad[i][i] = (0..e.radical.cols())
                        .map(|c| ModuleMap::combination(&objects[i], &objects[i], &e.basis, &e.radical.col(c)))
                        .collect();
                    homs[i][i] = e.basis;
                } else {
                    homs[i][j] = hom_basis(&objects[i], &objects[j]);
                    rad[i][j] = homs[i][j].clone();
                }
            }
        }
        AddCategory { objects, homs, rad }
    }

    /// Build from arbitrary modules: decompose and keep one object per
    /// isomorphism class, in order of first appearance.
    pub fn from_modules(mods: &[Module], seed: u64) -> Result<AddCategory, ModError> {
        Ok(AddCategory::new(basic_set(mods, seed)?))
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn hom(&self, i: usize, j: usize) -> &[ModuleMap] {
        &self.homs[i][j]
    }

    pub fn rad(&self, i: usize, j: usize) -> &[ModuleMap] {
        &self.rad[i][j]
    }

    /// Index of the object isomorphic to an indecomposable X.
    pub fn find(&self, x: &Module) -> Option<usize> {
        self.objects.iter().position(|o| o.dims() == x.dims() && iso_indecomposable(o, x).is_some())
    }

    /// X ∈ add M, decided by decomposing X and matching summands.
    pub fn contains(&self, x: &Module, seed: u64) -> Result<bool, ModError> {
        if x.is_zero() {
            return Ok(true);
        }
        let d = decompose(x, seed)?;
        Ok(d.summands.iter().all(|(s, _)| self.find(s).is_some()))
    }
}

/// Indecomposable summands of the given modules, one per isomorphism class.
pub fn basic_set(mods: &[Module], seed: u64) -> Result<Vec<Module>, ModError> {
    let mut out: Vec<Module> = Vec::new();
    for m in mods {
        for (s, _) in decompose(m, seed)?.summands {
            if !out.iter().any(|o| o.dims() == s.dims() && iso_indecomposable(o, &s).is_some()) {
                out.push(s);
            }
        }
    }
    Ok(out)
}

/// A right approximation with its kernel.
#[derive(Clone, Debug)]
pub struct ApproxResult {
    pub approximation: ModuleMap,
    pub kernel: ModuleMap,
    pub minimal: bool,
    /// Multiplicity of each object of the category in the source.
    pub multiplicities: Vec<usize>,
    pub source_sum: DirectSum,
}

/// Minimal right add(M)-approximation: for each object take generators of
/// Hom(M_i, X) modulo maps factoring through radical maps M_i -> M_j.
pub fn right_add_approximation(cat: &AddCategory, x: &Module) -> ApproxResult {
    let field = x.field();
    let h: Vec<Vec<ModuleMap>> = cat.objects.iter().map(|m| hom_basis(m, x)).collect();
    let mut gens = Vec::new();
    let mut multiplicities = Vec::new();
    for (i, mi) in cat.objects.iter().enumerate() {
        if h[i].is_empty() {
            multiplicities.push(0);
            continue;
        }
        let flat_len = h[i][0].to_flat().len();
        let mut factoring: Vec<Vec<Scalar>> = Vec::new();
        for j in 0..cat.len() {
            for r in cat.rad(i, j) {
                for g in &h[j] {
                    factoring.push(r.then(g).to_flat());
                }
            }
        }
        let hm = Matrix::from_columns(field, flat_len, &h[i].iter().map(|f| f.to_flat()).collect::<Vec<_>>());
        let rm = Matrix::from_columns(field, flat_len, &factoring);
        let chosen = hm.complement_columns(&rm);
        let idx = select_matching_columns(&hm, &chosen);
        multiplicities.push(idx.len());
        for k in idx {
            gens.push(h[i][k].with_ends(mi, x));
        }
    }
    let mods: Vec<Module> = gens.iter().map(|g| g.source().clone()).collect();
    let sum = direct_sum(x.algebra(), &mods);
    let approximation = map_from_sum(&sum, &gens, x);
    let kernel = approximation.kernel();
    ApproxResult { approximation, kernel, minimal: true, multiplicities, source_sum: sum }
}

fn select_matching_columns(all: &Matrix, chosen: &Matrix) -> Vec<usize> {
    let cols = all.columns();
    let mut used = vec![false; cols.len()];
    let mut out = Vec::new();
    for c in chosen.columns() {
        if let Some(k) = (0..cols.len()).find(|&k| !used[k] && cols[k] == c) {
            used[k] = true;
            out.push(k);
        }
    }
    out
}

/// Ω_M(X), the kernel of the minimal right approximation.
pub fn omega_m(cat: &AddCategory, x: &Module) -> Module {
    right_add_approximation(cat, x).kernel.source().clone()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MDim {
    Exact(usize),
    AboveBound(usize),
}

pub const DEFAULT_MDIM_BOUND: usize = 6;

/// Least i with Ω_M^i(X) in add M, or AboveBound.
pub fn m_dimension(cat: &AddCategory, x: &Module, bound: usize, seed: u64) -> Result<MDim, ModError> {
    let mut cur = x.clone();
    for i in 0..=bound {
        if cat.contains(&cur, seed)? {
            return Ok(MDim::Exact(i));
        }
        cur = omega_m(cat, &cur);
    }
    Ok(MDim::AboveBound(bound))
}

/// Sum of the images of all maps from the listed modules into X.
pub fn trace_of_class(ks: &[Module], x: &Module) -> ModuleMap {
    let field = x.field();
    let maps: Vec<ModuleMap> = ks.iter().flat_map(|k| hom_basis(k, x)).collect();
    let bases = (0..x.dims().len())
        .map(|v| {
            let blocks: Vec<&Matrix> = maps.iter().map(|f| f.comp(v)).collect();
            Matrix::hstack(field, x.dim(v), &blocks).column_space()
        })
        .collect();
    x.submodule(bases)
}

/// Pullback of `p: V -> X` and `u: U -> X`.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub w: Module,
    pub to_v: ModuleMap,
    pub to_u: ModuleMap,
    /// 0 -> W -> U ⊕ V -> X -> 0 is exact.
    pub exact: bool,
}

pub fn pullback(p: &ModuleMap, u: &ModuleMap) -> Pullback {
    let alg = p.source().algebra();
    let x = p.target();
    let sum = direct_sum(alg, &[u.source().clone(), p.source().clone()]);
    let diff = map_from_sum(&sum, &[u.clone(), p.scale(&x.field().from_i64(-1))], x);
    let inc = diff.kernel();
    let w = inc.source().clone();
    let to_u = inc.then(&sum.projections[0]);
    let to_v = inc.then(&sum.projections[1]);
    let exact = diff.is_surjective();
    Pullback { w, to_v, to_u, exact }
}

/// Trace construction: trace U of the divisible class in X, a right
/// approximation p: V -> X by the torsionless class, and their pullback W.
pub fn trace_pullback(
    torsionless: &AddCategory,
    divisible: &[Module],
    x: &Module,
) -> (ModuleMap, ApproxResult, Pullback) {
    let u = trace_of_class(divisible, x);
    let p = right_add_approximation(torsionless, x);
    let pb = pullback(&p.approximation, &u);
    (u, p, pb)
}

/// Check that `small` is isomorphic to a direct summand of `big`.
pub fn is_summand_of(small: &Module, big: &Module, seed: u64) -> Result<bool, ModError> {
    if small.is_zero() {
        return Ok(true);
    }
    let ds = decompose(small, seed)?;
    let db = decompose(big, seed)?;
    let mut avail: Vec<(Module, usize)> = db.summands.clone();
    for (s, k) in ds.summands {
        match avail.iter_mut().find(|(b, _)| b.dims() == s.dims() && is_isomorphic(b, &s, seed).ok().flatten().is_some()) {
            Some(entry) if entry.1 >= k => entry.1 -= k,
            _ => return Ok(false),
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, Quiver, Relation};
    use crate::exactlin::FieldSpec;
    use crate::modcat::{injective, min_projective_presentation, simple};

    fn a3(field: FieldSpec) -> Algebra {
        let q = Quiver::from_names(&["1", "2", "3"], &[("b", "3", "2"), ("a", "2", "1")]).unwrap();
        Algebra::build(q, field, vec![Relation::monomial(field, vec![0, 1])], 30).unwrap()
    }

    #[test]
    fn torsionless_simples_of_a3() {
        let a = a3(FieldSpec::Prime(3));
        assert!(is_torsionless(&simple(&a, 0)));
        assert!(is_torsionless(&simple(&a, 1)));
        assert!(!is_torsionless(&simple(&a, 2)));
        assert!(is_divisible(&simple(&a, 1)));
        for x in 0..3 {
            assert!(is_torsionless(&projective(&a, x)));
            assert!(is_divisible(&injective(&a, x)));
        }
    }

    #[test]
    fn embedding_uses_socle_many_projectives() {
        let a = a3(FieldSpec::Prime(2));
        let m = direct_sum(&a, &[projective(&a, 2), simple(&a, 1)]).module;
        let e = torsionless_embedding(&m).unwrap();
        assert!(e.is_injective());
        assert!(torsionless_embedding(&simple(&a, 2)).is_none());
    }

    #[test]
    fn left_approximation_of_s2() {
        let a = a3(FieldSpec::Prime(5));
        let s2 = simple(&a, 1);
        let u = left_proj_approximation(&s2);
        assert_eq!(u.target().dims(), projective(&a, 2).dims());
        let pres = min_projective_presentation(&s2);
        let f = pres.f.with_ends(&pres.p1.sum.module, &pres.p0.sum.module);
        let g = pres.p0.map.then(&u);
        assert!(strongly_exact_check(&f, &g).unwrap());
        let bad = ModuleMap::zero(&pres.p0.sum.module, u.target());
        assert!(!strongly_exact_check(&f, &bad).unwrap());
    }

    #[test]
    fn approximation_by_projectives_is_cover() {
        let a = a3(FieldSpec::Prime(3));
        let cat = AddCategory::new((0..3).map(|x| projective(&a, x)).collect());
        let r = right_add_approximation(&cat, &simple(&a, 2));
        assert!(r.approximation.is_surjective());
        assert_eq!(r.multiplicities, vec![0, 0, 1]);
        assert_eq!(r.kernel.source().dims(), &[0, 1, 0]);
    }

    #[test]
    fn trace_of_injectives_in_p3() {
        let a = a3(FieldSpec::Prime(2));
        let inj: Vec<Module> = (0..3).map(|x| injective(&a, x)).collect();
        // P(3) = Q(2) is projective-injective, so the trace is everything.
        let t = trace_of_class(&inj, &projective(&a, 2));
        assert_eq!(t.source().dims(), &[0, 1, 1]);
        let x = direct_sum(&a, &[simple(&a, 0), simple(&a, 1)]).module;
        assert_eq!(trace_of_class(&inj, &x).source().dims(), &[0, 1, 0]);
        assert!(trace_of_class(&[], &projective(&a, 2)).source().is_zero());
    }
}
