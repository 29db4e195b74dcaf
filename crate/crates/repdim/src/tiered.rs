//! Socle-series truncations of projectives and injectives over nicely tiered
//! algebras, the conditions (P1) and (P2), the layered generator and the
//! coefficient quivers of projectives over tensor products of bipartite
//! path algebras.

use crate::algebra::{escape, Algebra, TierError};
use crate::endgldim::CatAlgebra;
use crate::exactlin::{Matrix, Scalar};
use crate::modcat::{decompose, hom_basis, hom_dim, injective, iso_indecomposable, projective, radical, socle_series, ModError, Module, ModuleMap};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::VecDeque;
use std::fmt::Write;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum TieredError {
    #[error("not nicely tiered: {0}")]
    NotNicelyTiered(String),
    #[error("the algebra is not a tensor product of bipartite path algebras")]
    NotTensorOfBipartite,
    #[error("layering violation: {0}")]
    LayeringViolation(String),
    #[error("embedding search undecided for {0}")]
    Undecided(String),
    #[error(transparent)]
    Tier(#[from] TierError),
    #[error(transparent)]
    Module(#[from] ModError),
}

/// Tier data of a nicely tiered algebra: quiver condition plus
/// commutativity relations only.
pub fn nicely_tiered(alg: &Algebra) -> Result<(Vec<usize>, usize), TieredError> {
    let t = alg.quiver.nicely_tiered_check()?;
    if let Some(v) = t.witness {
        return Err(TieredError::NotNicelyTiered(format!("vertex {v} has the wrong tier")));
    }
    for (i, r) in alg.relations.iter().enumerate() {
        let ok = r.terms.len() == 2 && r.terms[0].0.add_ref(&r.terms[1].0).is_zero() && !r.terms[0].0.is_zero();
        if !ok {
            return Err(TieredError::NotNicelyTiered(format!("relation {i} is not a commutativity relation")));
        }
    }
    Ok((t.tiers, t.num_tiers))
}

/// Membership of a truncation in the families: `P(vertex, t)` lies in 𝓟^i
/// with i = LL(P) - t, and `Q(vertex, t)` lies in 𝓠_t.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family")]
pub enum Family {
    P { vertex: usize, t: usize, index: usize },
    Q { vertex: usize, t: usize },
}

#[derive(Clone, Debug)]
pub struct Truncation {
    pub module: Module,
    pub families: Vec<Family>,
}

fn projective_truncations(alg: &Algebra) -> Vec<(Module, Family)> {
    let mut out = Vec::new();
    for x in 0..alg.num_vertices() {
        let p = projective(alg, x);
        let l = p.loewy_length();
        for t in 2..=l {
            out.push((socle_series(&p, t).source().clone(), Family::P { vertex: x, t, index: l - t }));
        }
    }
    out
}

/// All ₜP (t ≥ 2) and ₜQ (t ≥ 1) up to isomorphism, with their families.
pub fn truncations(alg: &Algebra) -> Result<Vec<Truncation>, TieredError> {
    nicely_tiered(alg)?;
    let mut all = projective_truncations(alg);
    for x in 0..alg.num_vertices() {
        let q = injective(alg, x);
        for t in 1..=q.loewy_length() {
            all.push((socle_series(&q, t).source().clone(), Family::Q { vertex: x, t }));
        }
    }
    let mut out: Vec<Truncation> = Vec::new();
    for (m, f) in all {
        match out.iter_mut().find(|o| o.module.dims() == m.dims() && iso_indecomposable(&o.module, &m).is_some()) {
            Some(o) => o.families.push(f),
            None => out.push(Truncation { module: m, families: vec![f] }),
        }
    }
    Ok(out)
}

fn vertex_name(alg: &Algebra, x: usize) -> String {
    alg.quiver.vertices[x].clone()
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionReport {
    pub pass: bool,
    pub checked: usize,
    pub failures: Vec<String>,
}

fn long_projectives(alg: &Algebra) -> Vec<(usize, Module, Module)> {
    (0..alg.num_vertices())
        .filter_map(|x| {
            let p = projective(alg, x);
            (p.loewy_length() >= 3).then(|| {
                let two = socle_series(&p, 2).source().clone();
                (x, p, two)
            })
        })
        .collect()
}

/// (P1): ₂P is a brick (one-dimensional endomorphism ring) for every
/// indecomposable projective P of Loewy length at least 3.
pub fn p1_check(alg: &Algebra) -> ConditionReport {
    let mut failures = Vec::new();
    let ps = long_projectives(alg);
    for (x, _, two) in &ps {
        let e = hom_dim(two, two);
        if e != 1 {
            failures.push(format!("End(₂P({})) has dimension {e}", vertex_name(alg, *x)));
        }
    }
    ConditionReport { pass: failures.is_empty(), checked: ps.len(), failures }
}

/// Random combinations tried before exhaustive enumeration.
const EMBED_TRIALS: usize = 64;
/// Hom(P, P') is enumerated exhaustively when it has at most this many
/// elements.
const EMBED_ENUM_LIMIT: u64 = 1 << 16;

/// Some injective map in the span of `basis`: basis maps first, then seeded
/// random combinations, then all elements over a small enough field.
/// `Ok(None)` is a certified non-existence.
fn find_embedding(basis: &[ModuleMap], source: &Module, target: &Module, seed: u64) -> Result<Option<ModuleMap>, ()> {
    if let Some(f) = basis.iter().find(|f| f.is_injective()) {
        return Ok(Some(f.clone()));
    }
    if basis.is_empty() {
        return Ok(None);
    }
    let field = source.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..EMBED_TRIALS {
        let c: Vec<Scalar> = (0..basis.len()).map(|_| field.random(&mut rng)).collect();
        let f = ModuleMap::combination(source, target, basis, &c);
        if f.is_injective() {
            return Ok(Some(f));
        }
    }
    let Some(q) = field.order() else { return Err(()) };
    let total = (q as u128).checked_pow(basis.len() as u32).unwrap_or(u128::MAX);
    if total > EMBED_ENUM_LIMIT as u128 {
        return Err(());
    }
    let elems = field.elements().expect("finite field");
    let mut idx = vec![0usize; basis.len()];
    loop {
        let c: Vec<Scalar> = idx.iter().map(|&i| elems[i].clone()).collect();
        let f = ModuleMap::combination(source, target, basis, &c);
        if f.is_injective() {
            return Ok(Some(f));
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(None);
            }
            idx[k] += 1;
            if idx[k] < elems.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// (P2): whenever Hom(₂P, ₂P') ≠ 0, P embeds into P'.
pub fn p2_check(alg: &Algebra, seed: u64) -> Result<ConditionReport, TieredError> {
    let ps = long_projectives(alg);
    let mut failures = Vec::new();
    let mut checked = 0;
    for (x, p, two) in &ps {
        for (y, q, two_q) in &ps {
            if hom_dim(two, two_q) == 0 {
                continue;
            }
            checked += 1;
            let pair = format!("(P({}), P({}))", vertex_name(alg, *x), vertex_name(alg, *y));
            match find_embedding(&hom_basis(p, q), p, q, seed) {
                Ok(Some(_)) => {}
                Ok(None) => failures.push(format!("{pair}: Hom(₂P, ₂P') ≠ 0 but P does not embed into P'")),
                Err(()) => return Err(TieredError::Undecided(pair)),
            }
        }
    }
    Ok(ConditionReport { pass: failures.is_empty(), checked, failures })
}

/// The generator ordered by layers 𝓜₁ ⊂ ... ⊂ 𝓜_{n+2}, with α N = rad N.
#[derive(Clone, Debug)]
pub struct Layering {
    pub objects: Vec<Truncation>,
    /// 0-based first layer of each object.
    pub layer: Vec<usize>,
    pub alpha: Vec<ModuleMap>,
    pub layers: usize,
}

impl Layering {
    pub fn modules(&self) -> Vec<Module> {
        self.objects.iter().map(|t| t.module.clone()).collect()
    }

    pub fn category(&self) -> CatAlgebra {
        CatAlgebra::new(self.modules())
    }
}

/// 𝓜_i collects 𝓟^j for j ≥ n+2-i and 𝓠_j for j ≤ i; each object is placed
/// at the first layer that contains it, and rad N is checked to lie in the
/// add closure of the earlier layers.
pub fn build_layering(alg: &Algebra, seed: u64) -> Result<Layering, TieredError> {
    let (_, tiers) = nicely_tiered(alg)?;
    let n = tiers - 1;
    let mut objects = truncations(alg)?;
    let first = |t: &Truncation| {
        t.families
            .iter()
            .map(|f| match f {
                Family::P { index, .. } => n + 2 - index,
                Family::Q { t, .. } => *t,
            })
            .min()
            .expect("at least one family")
    };
    objects.sort_by_key(|t| (first(t), t.module.total_dim(), t.module.dims().to_vec()));
    let layer: Vec<usize> = objects.iter().map(|t| first(t) - 1).collect();
    let alpha: Vec<ModuleMap> = objects.iter().map(|t| radical(&t.module)).collect();
    for (o, u) in alpha.iter().enumerate() {
        if u.source().is_zero() {
            continue;
        }
        for (s, _) in decompose(u.source(), seed)?.summands {
            let ok = (0..objects.len()).any(|p| {
                layer[p] < layer[o] && objects[p].module.dims() == s.dims() && iso_indecomposable(&objects[p].module, &s).is_some()
            });
            if !ok {
                return Err(TieredError::LayeringViolation(format!(
                    "rad of object {o} {} has summand {} outside the earlier layers",
                    objects[o].module.dim_vector_string(),
                    s.dim_vector_string()
                )));
            }
        }
    }
    Ok(Layering { objects, layer, alpha, layers: n + 2 })
}

#[derive(Clone, Debug, Serialize)]
pub struct CoefficientNode {
    pub label: String,
    pub vertex: usize,
    pub degree: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoefficientEdge {
    pub from: usize,
    pub to: usize,
    pub arrow: usize,
    /// Tensor factor the arrow comes from.
    pub factor: usize,
}

/// Coefficient quiver Θ(x) of P(x) with respect to its path basis.
#[derive(Clone, Debug, Serialize)]
pub struct CoefficientQuiver {
    pub nodes: Vec<CoefficientNode>,
    pub edges: Vec<CoefficientEdge>,
    /// Nodes spanning ₂P(x).
    pub two_nodes: Vec<usize>,
    pub connected: bool,
    pub two_connected: bool,
    /// Every socle line of ₂P(x) is the intersection of the images of the
    /// arrows ending at it in ₂Θ(x).
    pub socle_intersection: bool,
}

fn is_bipartite_path_algebra(a: &Algebra) -> bool {
    a.relations.is_empty() && a.loewy_length() <= 2
}

fn connected(n: usize, nodes: &[usize], edges: &[CoefficientEdge]) -> bool {
    if nodes.is_empty() {
        return true;
    }
    let mut inside = vec![false; n];
    for &v in nodes {
        inside[v] = true;
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([nodes[0]]);
    seen[nodes[0]] = true;
    while let Some(v) = queue.pop_front() {
        for e in edges {
            for (a, b) in [(e.from, e.to), (e.to, e.from)] {
                if a == v && inside[b] && !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
    }
    nodes.iter().all(|&v| seen[v])
}

pub fn coefficient_quiver(alg: &Algebra, x: usize) -> Result<CoefficientQuiver, TieredError> {
    let info = alg.tensor_info();
    let tensor_ok = match info {
        Some(i) => i.factors.iter().all(is_bipartite_path_algebra),
        None => is_bipartite_path_algebra(alg),
    };
    if !tensor_ok {
        return Err(TieredError::NotTensorOfBipartite);
    }
    let field = alg.field;
    let p = projective(alg, x);
    let ll = p.loewy_length();
    let basis = alg.basis();
    let mut nodes = Vec::new();
    let mut index = vec![Vec::new(); alg.num_vertices()];
    for y in 0..alg.num_vertices() {
        for b in alg.basis_between(x, y) {
            let path = &basis[b];
            let label = match info {
                Some(i) => (0..i.factors.len())
                    .map(|j| {
                        let arrows: Vec<&str> = path
                            .arrows
                            .iter()
                            .filter(|&&a| i.arrow_factor[a].0 == j)
                            .map(|&a| i.factors[j].quiver.arrows[i.arrow_factor[a].1].name.as_str())
                            .collect();
                        if arrows.is_empty() {
                            i.factors[j].quiver.vertices[i.vertex_coords[x][j]].clone()
                        } else {
                            arrows.join(".")
                        }
                    })
                    .collect::<Vec<_>>()
                    .join("⊗"),
                None => alg.path_name(path),
            };
            index[y].push(nodes.len());
            nodes.push(CoefficientNode { label, vertex: y, degree: path.arrows.len() });
        }
    }
    let mut edges = Vec::new();
    for (ai, a) in alg.quiver.arrows.iter().enumerate() {
        let m = p.action(ai);
        for c in 0..m.cols() {
            for r in 0..m.rows() {
                if !m.get(r, c).is_zero() {
                    let factor = info.map_or(0, |i| i.arrow_factor[ai].0);
                    edges.push(CoefficientEdge { from: index[a.source][c], to: index[a.target][r], arrow: ai, factor });
                }
            }
        }
    }
    let cut = ll.saturating_sub(2);
    let two_nodes: Vec<usize> = (0..nodes.len()).filter(|&v| nodes[v].degree >= cut).collect();
    let two_dims = socle_series(&p, 2).source().total_dim();
    if two_dims != two_nodes.len() {
        return Err(TieredError::NotNicelyTiered("₂P(x) is not spanned by path basis elements".into()));
    }
    let all: Vec<usize> = (0..nodes.len()).collect();
    let two_edges: Vec<CoefficientEdge> =
        edges.iter().filter(|e| nodes[e.from].degree >= cut).cloned().collect();
    let mut socle_intersection = true;
    for v in two_nodes.iter().copied().filter(|&v| nodes[v].degree + 1 == ll) {
        let z = nodes[v].vertex;
        let pos = index[z].iter().position(|&w| w == v).expect("node in its fiber");
        let incoming: Vec<&CoefficientEdge> = two_edges.iter().filter(|e| e.to == v).collect();
        if incoming.is_empty() {
            continue;
        }
        let mut meet = Matrix::identity(field, p.dim(z));
        for e in incoming {
            meet = meet.intersect_columns(&p.action(e.arrow).column_space());
        }
        let line = Matrix::from_columns(
            field,
            p.dim(z),
            &[(0..p.dim(z)).map(|r| if r == pos { field.one() } else { field.zero() }).collect()],
        );
        let joined = Matrix::hstack(field, p.dim(z), &[&meet, &line]).rank();
        if meet.cols() != 1 || joined != 1 {
            socle_intersection = false;
        }
    }
    Ok(CoefficientQuiver {
        connected: connected(nodes.len(), &all, &edges),
        two_connected: connected(nodes.len(), &two_nodes, &two_edges),
        nodes,
        edges,
        two_nodes,
        socle_intersection,
    })
}

impl CoefficientQuiver {
    /// DOT rendering; arrows of the first tensor factor are solid, of the
    /// second dashed, of further factors dotted. Nodes of ₂Θ are boxed.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{}\" {{", escape(name));
        for (i, n) in self.nodes.iter().enumerate() {
            let shape = if self.two_nodes.contains(&i) { "box" } else { "ellipse" };
            let _ = writeln!(s, "  n{i} [label=\"{}\", shape={shape}];", escape(&n.label));
        }
        for e in &self.edges {
            let style = ["solid", "dashed"].get(e.factor).copied().unwrap_or("dotted");
            let _ = writeln!(s, "  n{} -> n{} [style={style}];", e.from, e.to);
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tensor;
    use crate::exactlin::FieldSpec;
    use crate::fixtures;
    use crate::modcat::radical_power;

    const F: FieldSpec = FieldSpec::Prime(2);

    #[test]
    fn a2_truncations_and_layers() {
        let a = fixtures::a2(F);
        let ts = truncations(&a).unwrap();
        // ₂P(u) = P(u) = Q(v), the two simples.
        assert_eq!(ts.len(), 3);
        let l = build_layering(&a, 0).unwrap();
        assert_eq!(l.layers, 3);
        let simples: Vec<usize> = (0..l.objects.len()).filter(|&o| l.objects[o].module.total_dim() == 1).collect();
        assert!(simples.iter().all(|&o| l.layer[o] == 0));
    }

    #[test]
    fn q1_is_all_simples() {
        let a = fixtures::kk(F);
        let ts = truncations(&a).unwrap();
        let q1 = ts.iter().filter(|t| t.families.iter().any(|f| matches!(f, Family::Q { t: 1, .. }))).count();
        assert_eq!(q1, 4);
        let two = ts.iter().find(|t| t.families.contains(&Family::P { vertex: 0, t: 2, index: 1 })).unwrap();
        assert_eq!(two.module.dims(), &[0, 2, 2, 4]);
    }

    #[test]
    fn projectives_are_solid() {
        for a in [fixtures::kk(F), fixtures::ex84_mid(F), fixtures::fully_commutative_square(F)] {
            for x in 0..a.num_vertices() {
                let p = projective(&a, x);
                let l = p.loewy_length();
                for t in 0..=l {
                    let soc = socle_series(&p, t).source().dims().to_vec();
                    let rad = radical_power(&p, l - t).source().dims().to_vec();
                    assert_eq!(soc, rad);
                }
            }
        }
    }

    #[test]
    fn conditions_on_fixtures() {
        assert!(!p1_check(&fixtures::ex84_left(F)).pass);
        let mid = fixtures::ex84_mid(F);
        assert!(p1_check(&mid).pass);
        let r = p2_check(&mid, 0).unwrap();
        assert!(!r.pass);
        assert!(r.failures[0].contains("(P(a), P(a'))"));
        assert!(p1_check(&fixtures::ex84_right(F)).pass);
        assert!(!p2_check(&fixtures::ex84_right(F), 0).unwrap().pass);
        assert!(p2_check(&fixtures::a3_linear(F), 0).unwrap().pass);
        let kk = fixtures::kk(F);
        assert!(p1_check(&kk).pass);
        assert!(p2_check(&kk, 0).unwrap().pass);
    }

    #[test]
    fn fully_commutative_square_dedup() {
        let a = fixtures::fully_commutative_square(F);
        let ts = truncations(&a).unwrap();
        let pi = ts.iter().find(|t| t.families.len() > 1 && t.module.total_dim() == 4).unwrap();
        assert!(pi.families.iter().any(|f| matches!(f, Family::P { index: 0, .. })));
        assert!(pi.families.iter().any(|f| matches!(f, Family::Q { t: 3, .. })));
    }

    #[test]
    fn coefficient_quivers() {
        let kk = fixtures::kk(F);
        let cq = coefficient_quiver(&kk, 0).unwrap();
        assert_eq!(cq.nodes.len(), 9);
        assert_eq!(cq.two_nodes.len(), 8);
        assert_eq!(cq.edges.len(), 12);
        assert!(cq.connected && cq.two_connected && cq.socle_intersection);
        let ka = tensor(&fixtures::kronecker(F), &fixtures::a2(F)).unwrap();
        assert!(coefficient_quiver(&ka, 0).unwrap().two_connected);
        let a2 = fixtures::a2(F);
        let c = coefficient_quiver(&a2, 0).unwrap();
        assert_eq!((c.nodes.len(), c.edges.len()), (2, 1));
        assert!(c.connected);
        assert_eq!(coefficient_quiver(&fixtures::ex84_mid(F), 0).unwrap_err(), TieredError::NotTensorOfBipartite);
    }
}
