//! Inventories of indecomposable torsionless and divisible modules, class
//! detection, the γ-bijection check, the biserial intersection condition
//! and the reduction by a projective-injective module.

use crate::algebra::{Algebra, AlgebraError, Quiver, Relation};
use crate::approx::{is_divisible, is_torsionless, left_proj_approximation};
use crate::exactlin::Matrix;
use crate::modcat::{
    decompose, dual, gamma, gamma_via_sigma, is_indecomposable, is_isomorphic, iso_indecomposable,
    projective, radical, simple, socle, source_map, tau_inverse, top, ModError, Module,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum TorsError {
    #[error("unknown strategy `{0}`")]
    UnknownStrategy(String),
    #[error("strategy {0} does not apply to this algebra")]
    NotApplicable(Strategy),
    #[error("inventory is not complete")]
    IncompleteInventory,
    #[error("no indecomposable projective module is injective")]
    NoProjInj,
    #[error(transparent)]
    Module(#[from] ModError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Auto,
    RadSquareZero,
    Hereditary,
    ArClosure,
    BoundedSearch,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Auto => "auto",
            Strategy::RadSquareZero => "rad_square_zero",
            Strategy::Hereditary => "hereditary",
            Strategy::ArClosure => "ar_closure",
            Strategy::BoundedSearch => "bounded_search",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = TorsError;

    fn from_str(s: &str) -> Result<Self, TorsError> {
        Ok(match s {
            "auto" => Strategy::Auto,
            "rad_square_zero" | "rad2" => Strategy::RadSquareZero,
            "hereditary" => Strategy::Hereditary,
            "ar_closure" | "closure" => Strategy::ArClosure,
            "bounded_search" | "bounded" => Strategy::BoundedSearch,
            _ => return Err(TorsError::UnknownStrategy(s.to_string())),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum Status {
    Complete(Strategy),
    Bounded(usize),
}

impl Status {
    pub fn is_complete(&self) -> bool {
        matches!(self, Status::Complete(_))
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Complete(s) => write!(f, "complete({s})"),
            Status::Bounded(b) => write!(f, "bounded({b})"),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClassTags {
    pub rad_square_zero: bool,
    pub hereditary: bool,
    pub special_biserial_input: bool,
}

impl ClassTags {
    pub fn names(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        if self.rad_square_zero {
            v.push("rad_square_zero");
        }
        if self.hereditary {
            v.push("hereditary");
        }
        if self.special_biserial_input {
            v.push("special_biserial_input");
        }
        v
    }
}

pub fn detect_class(alg: &Algebra) -> ClassTags {
    ClassTags {
        rad_square_zero: alg.loewy_length() <= 2,
        hereditary: (0..alg.num_vertices()).all(|x| radical(&projective(alg, x)).source().is_projective()),
        special_biserial_input: alg.special_biserial_flag,
    }
}

/// Default power bound for the bounded search.
pub const DEFAULT_BOUND: usize = 3;
/// The closure strategy gives up once a new class exceeds this total
/// dimension.
pub const CLOSURE_DIM_CAP: usize = 40;

#[derive(Clone, Debug)]
pub struct TorsionlessInventory {
    pub torsionless: Vec<Module>,
    pub divisible: Vec<Module>,
    pub status: Status,
}

impl TorsionlessInventory {
    pub fn non_projective(&self) -> Vec<&Module> {
        self.torsionless.iter().filter(|m| !m.is_projective()).collect()
    }

    pub fn non_injective(&self) -> Vec<&Module> {
        self.divisible.iter().filter(|m| !m.is_injective()).collect()
    }
}

/// Isomorphism classes of indecomposables, keyed by dimension vector and
/// content hash before falling back to an isomorphism test.
#[derive(Default, Clone, Debug)]
pub(crate) struct ClassList {
    pub mods: Vec<Module>,
    hashes: Vec<String>,
}

impl ClassList {
    pub fn find(&self, m: &Module) -> Option<usize> {
        let h = m.content_hash();
        if let Some(i) = self.hashes.iter().position(|x| *x == h) {
            return Some(i);
        }
        self.mods.iter().position(|o| o.dims() == m.dims() && iso_indecomposable(o, m).is_some())
    }

    pub fn insert(&mut self, m: Module) -> bool {
        if self.find(&m).is_some() {
            return false;
        }
        self.hashes.push(m.content_hash());
        self.mods.push(m);
        true
    }
}

fn resolve(alg: &Algebra, strategy: Strategy) -> Strategy {
    if strategy != Strategy::Auto {
        return strategy;
    }
    let tags = detect_class(alg);
    if tags.rad_square_zero {
        Strategy::RadSquareZero
    } else if tags.hereditary {
        Strategy::Hereditary
    } else {
        Strategy::ArClosure
    }
}

pub fn enumerate_torsionless(
    alg: &Algebra,
    strategy: Strategy,
    bound: usize,
    seed: u64,
) -> Result<TorsionlessInventory, TorsError> {
    let s = resolve(alg, strategy);
    let tags = detect_class(alg);
    match s {
        Strategy::RadSquareZero if !tags.rad_square_zero => return Err(TorsError::NotApplicable(s)),
        Strategy::Hereditary if !tags.hereditary => return Err(TorsError::NotApplicable(s)),
        _ => {}
    }
    let (tors, c1) = torsionless_list(alg, s, bound, seed)?;
    let (op_tors, c2) = torsionless_list(&alg.opposite(), s, bound, seed)?;
    let divisible = op_tors.iter().map(dual).collect();
    let status = if c1 && c2 { Status::Complete(s) } else { Status::Bounded(bound) };
    Ok(TorsionlessInventory { torsionless: tors, divisible, status })
}

fn canonical(mut v: Vec<Module>) -> Vec<Module> {
    v.sort_by(|a, b| (a.total_dim(), a.dims()).cmp(&(b.total_dim(), b.dims())));
    v
}

fn projectives(alg: &Algebra) -> Vec<Module> {
    (0..alg.num_vertices()).map(|x| projective(alg, x)).collect()
}

fn torsionless_list(alg: &Algebra, s: Strategy, bound: usize, seed: u64) -> Result<(Vec<Module>, bool), TorsError> {
    Ok(match s {
        Strategy::RadSquareZero => {
            let mut v = projectives(alg);
            for x in 0..alg.num_vertices() {
                let sx = simple(alg, x);
                if !sx.is_projective() && is_torsionless(&sx) {
                    v.push(sx);
                }
            }
            (canonical(v), true)
        }
        Strategy::Hereditary => (canonical(projectives(alg)), true),
        Strategy::ArClosure => {
            let (v, done) = closure(alg, true, CLOSURE_DIM_CAP, seed)?;
            (canonical(v), done)
        }
        Strategy::BoundedSearch => (canonical(bounded_search(alg, bound, seed)?), false),
        Strategy::Auto => unreachable!("resolved above"),
    })
}

/// Closure of the indecomposable projectives under source maps. With
/// `torsionless_only`, each source map X -> E is followed by the quotient of
/// E by the joint kernel of its maps to Λ, which yields left almost split
/// maps inside the torsionless modules; otherwise τ⁻¹X is added as well.
/// If the closure stabilizes, the Harada-Sai lemma shows that every
/// indecomposable of the class has been reached.
fn closure(alg: &Algebra, torsionless_only: bool, cap: usize, seed: u64) -> Result<(Vec<Module>, bool), TorsError> {
    let mut list = ClassList::default();
    for p in projectives(alg) {
        list.insert(p);
    }
    let mut i = 0;
    while i < list.mods.len() {
        let x = list.mods[i].clone();
        let e = source_map(&x).target().clone();
        let mut news = Vec::new();
        if torsionless_only {
            news.push(left_proj_approximation(&e).image().1.source().clone());
        } else {
            news.push(e);
            if !x.is_injective() {
                news.push(tau_inverse(&x));
            }
        }
        for n in news {
            if n.is_zero() {
                continue;
            }
            for (s, _) in decompose(&n, seed)?.summands {
                if list.find(&s).is_none() {
                    if s.total_dim() > cap {
                        return Ok((list.mods, false));
                    }
                    list.insert(s);
                }
            }
        }
        i += 1;
    }
    Ok((list.mods, true))
}

/// All indecomposable modules, when the closure under source maps and τ⁻¹
/// stabilizes below the dimension cap; `None` otherwise.
pub fn all_indecomposables(alg: &Algebra, cap: usize, seed: u64) -> Result<Option<Vec<Module>>, TorsError> {
    let (v, done) = closure(alg, false, cap, seed)?;
    Ok(done.then(|| canonical(v)))
}

/// A random submodule of a sum of `t` listed nonzero modules, generated by
/// up to `t + 2` homogeneous random elements.
fn random_submodule<R: Rng>(alg: &Algebra, members: &[Module], t: usize, rng: &mut R) -> Module {
    let field = alg.field;
    let parts: Vec<Module> = (0..t).map(|_| members[rng.gen_range(0..members.len())].clone()).collect();
    let sum = crate::modcat::direct_sum(alg, &parts).module;
    let nv = alg.num_vertices();
    let mut gens: Vec<Vec<Vec<crate::exactlin::Scalar>>> = vec![vec![]; nv];
    let support: Vec<usize> = (0..nv).filter(|&x| sum.dim(x) > 0).collect();
    for _ in 0..rng.gen_range(1..=t + 2) {
        let x = support[rng.gen_range(0..support.len())];
        gens[x].push((0..sum.dim(x)).map(|_| field.random(rng)).collect());
    }
    let mats: Vec<Matrix> = (0..nv).map(|x| Matrix::from_columns(field, sum.dim(x), &gens[x])).collect();
    sum.generated_submodule(&mats).source().clone()
}

/// Seeded closure search: radicals and random submodules of sums of at most
/// `bound` current members, for `bound + 1` rounds.
fn bounded_search(alg: &Algebra, bound: usize, seed: u64) -> Result<Vec<Module>, TorsError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut list = ClassList::default();
    for p in projectives(alg) {
        list.insert(p);
    }
    let t_max = bound.max(1);
    for _ in 0..=bound {
        let mut cands: Vec<Module> = list.mods.iter().map(|m| radical(m).source().clone()).collect();
        for _ in 0..16 * t_max {
            let t = rng.gen_range(1..=t_max);
            cands.push(random_submodule(alg, &list.mods, t, &mut rng));
        }
        let pieces: Vec<Vec<Module>> = cands
            .par_iter()
            .map(|c| -> Result<Vec<Module>, ModError> {
                if c.is_zero() {
                    return Ok(vec![]);
                }
                Ok(decompose(c, seed)?.summands.into_iter().map(|(s, _)| s).collect())
            })
            .collect::<Result<_, _>>()?;
        for s in pieces.into_iter().flatten() {
            if list.find(&s).is_none() && is_torsionless(&s) {
                list.insert(s);
            }
        }
    }
    Ok(list.mods)
}

fn tag(m: &Module) -> String {
    format!("{} #{}", m.dim_vector_string(), &m.content_hash()[..12])
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyCertificate {
    pub pass: bool,
    pub torsionless: usize,
    pub divisible: usize,
    pub samples: usize,
    pub seed: u64,
    pub witness: Option<String>,
}

/// Checks the listed modules and confirms that indecomposable summands of
/// seeded random torsionless (and divisible) modules appear in the lists.
pub fn verify_inventory(
    alg: &Algebra,
    inv: &TorsionlessInventory,
    samples: usize,
    seed: u64,
) -> Result<VerifyCertificate, TorsError> {
    let mut cert = VerifyCertificate {
        pass: false,
        torsionless: inv.torsionless.len(),
        divisible: inv.divisible.len(),
        samples,
        seed,
        witness: None,
    };
    let fail = |mut c: VerifyCertificate, w: String| {
        c.witness = Some(w);
        Ok(c)
    };
    let op = alg.opposite();
    let duals: Vec<Module> = inv.divisible.iter().map(dual).collect();
    let mut tl = ClassList::default();
    for m in &inv.torsionless {
        if !is_torsionless(m) || !is_indecomposable(m, seed)? || !tl.insert(m.clone()) {
            return fail(cert, format!("listed torsionless module {} fails", tag(m)));
        }
    }
    let mut dl = ClassList::default();
    for (m, d) in inv.divisible.iter().zip(&duals) {
        if !is_divisible(m) || !is_indecomposable(m, seed)? || !dl.insert(d.clone()) {
            return fail(cert, format!("listed divisible module {} fails", tag(m)));
        }
    }
    for x in 0..alg.num_vertices() {
        if tl.find(&projective(alg, x)).is_none() {
            return fail(cert, format!("projective P({}) missing", alg.quiver.vertices[x]));
        }
        if dl.find(&projective(&op, x)).is_none() {
            return fail(cert, format!("injective Q({}) missing", alg.quiver.vertices[x]));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (ps, qs) = (projectives(alg), projectives(&op));
    let mut cands = Vec::new();
    for i in 0..samples {
        let t = rng.gen_range(1..=DEFAULT_BOUND);
        if i % 2 == 0 {
            cands.push((true, random_submodule(alg, &ps, t, &mut rng)));
        } else {
            cands.push((false, random_submodule(&op, &qs, t, &mut rng)));
        }
    }
    let found: Vec<Option<String>> = cands
        .par_iter()
        .map(|(tors, c)| -> Result<Option<String>, ModError> {
            if c.is_zero() {
                return Ok(None);
            }
            let list = if *tors { &tl } else { &dl };
            for (s, _) in decompose(c, seed)?.summands {
                if list.find(&s).is_none() {
                    let (kind, m) = if *tors { ("torsionless", s) } else { ("divisible", dual(&s)) };
                    return Ok(Some(format!("unlisted {kind} module {}", tag(&m))));
                }
            }
            Ok(None)
        })
        .collect::<Result<_, _>>()?;
    if let Some(w) = found.into_iter().flatten().next() {
        return fail(cert, w);
    }
    cert.pass = true;
    Ok(cert)
}

#[derive(Clone, Debug, Serialize)]
pub struct GammaPair {
    pub torsionless: usize,
    pub divisible: usize,
    pub top_equals_socle: bool,
    pub two_way_agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GammaCertificate {
    pub pass: bool,
    pub non_projective_torsionless: usize,
    pub non_injective_divisible: usize,
    pub pairs: Vec<GammaPair>,
    pub witness: Option<String>,
}

/// γ on each non-projective torsionless U: indecomposable, divisible,
/// non-injective, with top U ≅ soc γU, inducing a bijection onto the
/// non-injective divisibles.
pub fn gamma_bijection_check(inv: &TorsionlessInventory, seed: u64) -> Result<GammaCertificate, TorsError> {
    if !inv.status.is_complete() {
        return Err(TorsError::IncompleteInventory);
    }
    let us = inv.non_projective();
    let ds = inv.non_injective();
    let mut cert = GammaCertificate {
        pass: false,
        non_projective_torsionless: us.len(),
        non_injective_divisible: ds.len(),
        pairs: vec![],
        witness: None,
    };
    let mut hit = vec![false; ds.len()];
    for (i, u) in us.iter().enumerate() {
        let g = gamma(u);
        let ok = !g.is_zero() && is_indecomposable(&g, seed)? && is_divisible(&g) && !g.is_injective();
        let j = ds.iter().position(|d| d.dims() == g.dims() && iso_indecomposable(d, &g).is_some());
        let Some(j) = j.filter(|_| ok) else {
            cert.witness = Some(format!("γ of {} is {}", tag(u), tag(&g)));
            return Ok(cert);
        };
        if hit[j] {
            cert.witness = Some(format!("γ is not injective on classes at {}", tag(u)));
            return Ok(cert);
        }
        hit[j] = true;
        let top_u = top(u).target().dims().to_vec();
        let soc_g = socle(&g).source().dims().to_vec();
        let two_way = is_isomorphic(&g, &gamma_via_sigma(u), seed)?.is_some();
        cert.pairs.push(GammaPair { torsionless: i, divisible: j, top_equals_socle: top_u == soc_g, two_way_agree: two_way });
    }
    if let Some(j) = hit.iter().position(|h| !h) {
        cert.witness = Some(format!("divisible {} is not hit", tag(ds[j])));
        return Ok(cert);
    }
    cert.pass = cert.pairs.iter().all(|p| p.top_equals_socle && p.two_way_agree);
    if !cert.pass {
        cert.witness = Some("top/socle or two-way γ mismatch".into());
    }
    Ok(cert)
}

#[derive(Clone, Debug, Serialize)]
pub struct BiserialWitness {
    pub vertex: usize,
    pub arrows: (usize, usize),
    pub intersection: usize,
}

/// αM ∩ βM = 0 for distinct arrows α, β with a common target.
pub fn biserial_condition(m: &Module) -> (bool, Option<BiserialWitness>) {
    let q = &m.algebra().quiver;
    for y in 0..q.num_vertices() {
        let into: Vec<usize> = q.arrows_into(y).collect();
        for (i, &a) in into.iter().enumerate() {
            for &b in &into[i + 1..] {
                let (ia, ib) = (m.action(a).column_space(), m.action(b).column_space());
                let meet = ia.intersect_columns(&ib);
                if meet.cols() > 0 {
                    return (false, Some(BiserialWitness { vertex: y, arrows: (a, b), intersection: meet.cols() }));
                }
            }
        }
    }
    (true, None)
}

#[derive(Clone, Debug)]
pub struct ProjInjReduction {
    /// Vertex x with P(x) projective-injective.
    pub vertex: usize,
    /// Generator of the minimal ideal I, as a combination of paths (empty
    /// when I is spanned by the idempotent of an isolated simple vertex).
    pub ideal: Relation,
    pub quotient: Algebra,
    pub quotient_semisimple: bool,
    pub lifting: String,
}

/// Finds an indecomposable projective-injective P(x) and the minimal
/// two-sided ideal spanned by its socle element, and returns Λ/I.
pub fn projinj_reduce(alg: &Algebra) -> Result<ProjInjReduction, TorsError> {
    let field = alg.field;
    for x in 0..alg.num_vertices() {
        let p = projective(alg, x);
        if !p.is_injective() {
            continue;
        }
        let name = &alg.quiver.vertices[x];
        let lifting = format!("M = M' ⊕ P({name})");
        if p.total_dim() == 1 {
            let keep: Vec<usize> = (0..alg.num_vertices()).filter(|&v| v != x).collect();
            let vertices = keep.iter().map(|&v| alg.quiver.vertices[v].clone()).collect();
            let quiver = Quiver::new(vertices, vec![])?;
            let quotient = Algebra::path_algebra(quiver, field)?;
            return Ok(ProjInjReduction {
                vertex: x,
                ideal: Relation::new(vec![]),
                quotient_semisimple: true,
                quotient,
                lifting,
            });
        }
        let soc = socle(&p);
        let y = (0..alg.num_vertices()).find(|&v| soc.comp(v).cols() > 0).expect("nonzero socle");
        let labels = alg.basis_between(x, y);
        let v = soc.comp(y).col(0);
        let s: Vec<(crate::exactlin::Scalar, Vec<usize>)> = labels
            .iter()
            .zip(&v)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&b, c)| (c.clone(), alg.basis()[b].arrows.clone()))
            .collect();
        let two_sided = alg.quiver.arrows_into(x).all(|a| {
            let mut total = vec![field.zero(); alg.dim()];
            for (c, path) in &s {
                let mut w = vec![a];
                w.extend_from_slice(path);
                for (i, d) in alg.reduce_path(alg.quiver.arrows[a].source, &w) {
                    total[i] = total[i].add_ref(&c.mul_ref(&d));
                }
            }
            total.iter().all(|t| t.is_zero())
        });
        if !two_sided {
            continue;
        }
        let ideal = Relation::new(s);
        let quotient = if ideal.terms.iter().all(|(_, p)| p.len() >= 2) {
            let mut rels = alg.relations.clone();
            rels.push(ideal.clone());
            Algebra::build(alg.quiver.clone(), field, rels, alg.max_len)?
        } else if let [(_, p)] = ideal.terms.as_slice() {
            delete_arrow(alg, p[0])?
        } else {
            continue;
        };
        let quotient_semisimple = quotient.loewy_length() <= 1;
        return Ok(ProjInjReduction { vertex: x, ideal, quotient, quotient_semisimple, lifting });
    }
    Err(TorsError::NoProjInj)
}

/// Λ/(a) for an arrow a spanning a two-sided ideal: remove the arrow and
/// every relation term through it.
fn delete_arrow(alg: &Algebra, a: usize) -> Result<Algebra, TorsError> {
    let q = &alg.quiver;
    let arrows = q.arrows.iter().enumerate().filter(|(i, _)| *i != a).map(|(_, x)| x.clone()).collect();
    let quiver = Quiver::new(q.vertices.clone(), arrows)?;
    let shift = |i: usize| if i > a { i - 1 } else { i };
    let rels = alg
        .relations
        .iter()
        .map(|r| {
            Relation::new(
                r.terms
                    .iter()
                    .filter(|(_, p)| !p.contains(&a))
                    .map(|(c, p)| (c.clone(), p.iter().map(|&i| shift(i)).collect()))
                    .collect(),
            )
        })
        .filter(|r| !r.terms.is_empty())
        .collect();
    Ok(Algebra::build(quiver, alg.field, rels, alg.max_len)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::FieldSpec;
    use crate::fixtures;

    const F: FieldSpec = FieldSpec::Prime(3);

    #[test]
    fn detect_classes() {
        assert_eq!(detect_class(&fixtures::a3_rad2(F)).names(), vec!["rad_square_zero"]);
        assert_eq!(detect_class(&fixtures::kronecker(F)).names(), vec!["rad_square_zero", "hereditary"]);
        assert!(detect_class(&fixtures::commutative_square(F)).names().is_empty());
    }

    #[test]
    fn a3_rad2_inventory() {
        let a = fixtures::a3_rad2(F);
        let inv = enumerate_torsionless(&a, Strategy::Auto, 3, 0).unwrap();
        assert_eq!(inv.status, Status::Complete(Strategy::RadSquareZero));
        assert_eq!((inv.torsionless.len(), inv.divisible.len()), (4, 4));
        assert_eq!((inv.non_projective().len(), inv.non_injective().len()), (1, 1));
        let closure = enumerate_torsionless(&a, Strategy::ArClosure, 3, 0).unwrap();
        assert_eq!(closure.torsionless.len(), 4);
        assert!(gamma_bijection_check(&inv, 0).unwrap().pass);
    }

    #[test]
    fn hereditary_lists_projectives() {
        let a = fixtures::a3_linear(F);
        let inv = enumerate_torsionless(&a, Strategy::Auto, 3, 0).unwrap();
        assert_eq!(inv.status, Status::Complete(Strategy::Hereditary));
        assert!(inv.torsionless.iter().all(|m| m.is_projective()));
        assert_eq!(inv.torsionless.len(), 3);
    }

    #[test]
    fn strategy_names() {
        assert_eq!("bounded".parse::<Strategy>().unwrap(), Strategy::BoundedSearch);
        assert!(matches!("magic".parse::<Strategy>(), Err(TorsError::UnknownStrategy(_))));
        assert!(matches!(
            enumerate_torsionless(&fixtures::commutative_square(F), Strategy::Hereditary, 3, 0),
            Err(TorsError::NotApplicable(_))
        ));
    }

    #[test]
    fn biserial() {
        let k = fixtures::kronecker(F);
        let e = Matrix::from_i64(F, &[&[1], &[0]]);
        let m = fixtures::kronecker_module(&k, e.clone(), e);
        assert!(!biserial_condition(&m).0);
        let a = fixtures::a3_rad2(F);
        assert!((0..3).all(|x| biserial_condition(&projective(&a, x)).0));
    }

    #[test]
    fn projinj() {
        let sq = fixtures::fully_commutative_square(F);
        let r = projinj_reduce(&sq).unwrap();
        assert_eq!(r.vertex, 0);
        assert_eq!(r.quotient.dim(), sq.dim() - 1);
        assert!(!r.quotient_semisimple);
        assert_eq!(projinj_reduce(&fixtures::a3_linear(F)).unwrap().vertex, 2);
        let r = projinj_reduce(&fixtures::a3_rad2(F)).unwrap();
        assert_eq!((r.vertex, r.quotient.dim()), (1, 4));
        let q = Quiver::from_names(&["a", "b"], &[]).unwrap();
        let ss = Algebra::path_algebra(q, F).unwrap();
        assert!(projinj_reduce(&ss).unwrap().quotient_semisimple);
        assert!(all_indecomposables(&fixtures::a3_linear(F), 20, 0).unwrap().unwrap().len() == 6);
    }
}
