//! Projective covers, injective envelopes, minimal presentations, the functor
//! Hom(-, Λ) and the operations ν, τ, Σ, γ and η built from it.

use super::{
    coordinates_in, direct_sum, dual, hom_basis, projective, radical, DirectSum, ModError, Module, ModuleMap,
};
use crate::algebra::Algebra;
use crate::exactlin::{Matrix, Scalar};

/// A projective cover `⊕ P(vertices[i]) -> M`.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub vertices: Vec<usize>,
    pub sum: DirectSum,
    pub map: ModuleMap,
}

/// The homomorphism P(x) -> M sending e_x to `v` in the fiber of M at x.
pub fn map_from_projective(alg: &Algebra, x: usize, m: &Module, v: &[Scalar]) -> ModuleMap {
    let p = projective(alg, x);
    let field = alg.field;
    let vcol = Matrix::from_columns(field, m.dim(x), &[v.to_vec()]);
    let comps = (0..alg.num_vertices())
        .map(|y| {
            let labels = alg.basis_between(x, y);
            let cols: Vec<Vec<Scalar>> =
                labels.iter().map(|&b| m.path_matrix(x, &alg.basis()[b].arrows).mul(&vcol).col(0)).collect();
            Matrix::from_columns(field, m.dim(y), &cols)
        })
        .collect();
    ModuleMap::from_parts(p, m.clone(), comps)
}

/// Minimal projective cover, built from a basis of a complement of the
/// radical at each vertex.
pub fn projective_cover(m: &Module) -> ProjectiveCover {
    let alg = m.algebra();
    let field = m.field();
    let rad = radical(m);
    let mut vertices = Vec::new();
    let mut maps = Vec::new();
    for x in 0..alg.num_vertices() {
        let comp = Matrix::identity(field, m.dim(x)).complement_columns(rad.comp(x));
        for c in 0..comp.cols() {
            vertices.push(x);
            maps.push(map_from_projective(alg, x, m, &comp.col(c)));
        }
    }
    let mods: Vec<Module> = maps.iter().map(|f| f.source().clone()).collect();
    let sum = direct_sum(alg, &mods);
    let map = super::map_from_sum(&sum, &maps, m);
    debug_assert!(map.is_surjective());
    ProjectiveCover { vertices, sum, map }
}

/// Injective envelope `M -> ⊕ Q(x)`, the dual of the projective cover of
/// the dual module.
pub fn injective_envelope(m: &Module) -> ModuleMap {
    let cover = projective_cover(&dual(m));
    let d = cover.map.transpose_dual();
    let env = d.with_ends(m, d.target());
    debug_assert!(env.is_injective());
    env
}

/// Minimal projective presentation `P1 -> P0 -> M -> 0`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub p0: ProjectiveCover,
    pub syzygy: ModuleMap,
    pub p1: ProjectiveCover,
    /// The map P1 -> P0.
    pub f: ModuleMap,
}

pub fn min_projective_presentation(m: &Module) -> Presentation {
    let p0 = projective_cover(m);
    let syzygy = p0.map.kernel();
    let p1 = projective_cover(syzygy.source());
    let f = p1.map.then(&syzygy);
    Presentation { p0, syzygy, p1, f }
}

/// Hom(M, Λ) as a module over Λ^op: the fiber at y is Hom(M, P(y)), and the
/// reversed arrow `a` acts by composing with left multiplication
/// P(target a) -> P(source a).
#[derive(Clone, Debug)]
pub struct HomLambda {
    pub module: Module,
    pub bases: Vec<Vec<ModuleMap>>,
}

/// Left multiplication by the arrow a: P(target a) -> P(source a).
pub fn left_mult(alg: &Algebra, a: usize) -> ModuleMap {
    let (y, z) = (alg.quiver.arrows[a].source, alg.quiver.arrows[a].target);
    let (pz, py) = (projective(alg, z), projective(alg, y));
    let field = alg.field;
    let comps = (0..alg.num_vertices())
        .map(|v| {
            let rows = alg.basis_between(y, v);
            let cols = alg.basis_between(z, v);
            let mut m = Matrix::zeros(field, rows.len(), cols.len());
            for (c, &b) in cols.iter().enumerate() {
                let mut word = vec![a];
                word.extend_from_slice(&alg.basis()[b].arrows);
                for (idx, coef) in alg.reduce_path(y, &word) {
                    let r = rows.binary_search(&idx).expect("left product lands in P(source)");
                    m.set(r, c, coef);
                }
            }
            m
        })
        .collect();
    ModuleMap::from_parts(pz, py, comps)
}

pub fn hom_to_lambda(m: &Module) -> HomLambda {
    let alg = m.algebra();
    let field = m.field();
    let ps: Vec<Module> = (0..alg.num_vertices()).map(|y| projective(alg, y)).collect();
    let bases: Vec<Vec<ModuleMap>> = ps.iter().map(|p| hom_basis(m, p)).collect();
    let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
    let action = alg
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let (y, z) = (a.source, a.target);
            let la = left_mult(alg, ai).with_ends(&ps[z], &ps[y]);
            let cols: Vec<Vec<Scalar>> = bases[z]
                .iter()
                .map(|g| coordinates_in(&bases[y], &g.then(&la)).expect("composite lies in Hom(M, P(y))"))
                .collect();
            Matrix::from_columns(field, dims[y], &cols)
        })
        .collect();
    let module = Module::from_parts(&alg.opposite(), dims, action);
    HomLambda { module, bases }
}

/// Hom(f, Λ): Hom(N, Λ) -> Hom(M, Λ) for f: M -> N.
pub fn hom_to_lambda_map(f: &ModuleMap, hm: &HomLambda, hn: &HomLambda) -> ModuleMap {
    let field = f.field();
    let comps = (0..hm.bases.len())
        .map(|y| {
            let cols: Vec<Vec<Scalar>> = hn.bases[y]
                .iter()
                .map(|g| coordinates_in(&hm.bases[y], &f.then(g)).expect("precomposite lies in Hom(M, P(y))"))
                .collect();
            Matrix::from_columns(field, hm.bases[y].len(), &cols)
        })
        .collect();
    ModuleMap::from_parts(hn.module.clone(), hm.module.clone(), comps)
}

/// Nakayama functor ν = D Hom(-, Λ) on a projective module.
pub fn nu(p: &Module) -> Result<Module, ModError> {
    if !p.is_projective() {
        return Err(ModError::NotProjective);
    }
    Ok(dual(&hom_to_lambda(p).module))
}

/// ν on a map between projectives: ν(P) -> ν(Q).
pub fn nu_map(f: &ModuleMap) -> Result<ModuleMap, ModError> {
    if !f.source().is_projective() || !f.target().is_projective() {
        return Err(ModError::NotProjective);
    }
    let (hs, ht) = (hom_to_lambda(f.source()), hom_to_lambda(f.target()));
    Ok(hom_to_lambda_map(f, &hs, &ht).transpose_dual())
}

struct NuData {
    hom_f: ModuleMap,
    nu_f: ModuleMap,
}

fn nu_presentation(m: &Module) -> NuData {
    let pres = min_projective_presentation(m);
    let (h1, h0) = (hom_to_lambda(&pres.p1.sum.module), hom_to_lambda(&pres.p0.sum.module));
    let f = pres.f.with_ends(&pres.p1.sum.module, &pres.p0.sum.module);
    let hom_f = hom_to_lambda_map(&f, &h1, &h0);
    let nu_f = hom_f.transpose_dual();
    NuData { hom_f, nu_f }
}

/// τM = ker ν(f) for the minimal presentation f of M.
pub fn tau(m: &Module) -> Module {
    nu_presentation(m).nu_f.kernel().source().clone()
}

/// γM = im ν(f).
pub fn gamma(m: &Module) -> Module {
    nu_presentation(m).nu_f.image().1.source().clone()
}

/// ΣM = I(M)/M.
pub fn sigma(m: &Module) -> Module {
    injective_envelope(m).cokernel().target().clone()
}

/// γ computed as Σ∘τ.
pub fn gamma_via_sigma(m: &Module) -> Module {
    sigma(&tau(m))
}

/// η(U) = image of Hom(f, Λ) for the minimal presentation f of a torsionless
/// module U; a module over Λ^op.
pub fn eta(u: &Module) -> Result<Module, ModError> {
    if !crate::approx::is_torsionless(u) {
        return Err(ModError::NotTorsionless);
    }
    Ok(nu_presentation(u).hom_f.image().1.source().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Quiver, Relation};
    use crate::exactlin::FieldSpec;
    use crate::modcat::{injective, is_isomorphic, simple};

    fn a3(field: FieldSpec) -> Algebra {
        let q = Quiver::from_names(&["1", "2", "3"], &[("b", "3", "2"), ("a", "2", "1")]).unwrap();
        Algebra::build(q, field, vec![Relation::monomial(field, vec![0, 1])], 30).unwrap()
    }

    #[test]
    fn cover_and_presentation_of_simple() {
        let a = a3(FieldSpec::Prime(3));
        let s2 = simple(&a, 1);
        let pres = min_projective_presentation(&s2);
        assert_eq!(pres.p0.vertices, vec![1]);
        assert_eq!(pres.p1.vertices, vec![0]);
        let p = projective(&a, 2);
        let c = projective_cover(&p);
        assert!(c.map.is_iso());
    }

    #[test]
    fn nakayama_sends_projectives_to_injectives() {
        let a = a3(FieldSpec::Prime(5));
        for x in 0..3 {
            let v = nu(&projective(&a, x)).unwrap();
            assert!(is_isomorphic(&v, &injective(&a, x), 0).unwrap().is_some());
        }
        assert_eq!(nu(&simple(&a, 2)).unwrap_err(), ModError::NotProjective);
    }

    #[test]
    fn tau_and_gamma_on_a3() {
        let a = a3(FieldSpec::Prime(2));
        let s2 = simple(&a, 1);
        let s3 = simple(&a, 2);
        assert!(is_isomorphic(&tau(&s3), &s2, 0).unwrap().is_some());
        assert!(is_isomorphic(&gamma(&s2), &s2, 0).unwrap().is_some());
        assert!(is_isomorphic(&gamma_via_sigma(&s2), &s2, 0).unwrap().is_some());
        assert!(sigma(&injective(&a, 1)).is_zero());
    }

    #[test]
    fn envelope_of_simple() {
        let a = a3(FieldSpec::Prime(3));
        let e = injective_envelope(&simple(&a, 1));
        assert_eq!(e.target().dims(), injective(&a, 1).dims());
    }
}
