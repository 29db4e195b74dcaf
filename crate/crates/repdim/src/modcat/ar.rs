//! Almost split sequences and source maps.

use super::{direct_sum, dual, end_radical, hom_basis, map_from_sum, map_into_sum, socle, tau, Module, ModuleMap};
use super::{coordinates_in, min_projective_presentation};
use crate::exactlin::{Matrix, Scalar};

/// τ⁻¹M = D τ D M.
pub fn tau_inverse(m: &Module) -> Module {
    dual(&tau(&dual(m)))
}

/// An almost split sequence `0 -> X -> E -> Z -> 0`.
#[derive(Clone, Debug)]
pub struct AlmostSplit {
    pub left: ModuleMap,
    pub right: ModuleMap,
}

/// The almost split sequence starting at an indecomposable non-injective X.
/// Its class is a nonzero element of Ext¹(τ⁻¹X, X) killed by rad End(X),
/// realized as a pushout of the syzygy sequence of τ⁻¹X.
pub fn almost_split_sequence(x: &Module) -> Option<AlmostSplit> {
    if x.is_zero() || x.is_injective() {
        return None;
    }
    let field = x.field();
    let z = tau_inverse(x);
    let pres = min_projective_presentation(&z);
    let p0 = pres.p0.sum.module.clone();
    let iota = pres.syzygy.clone();
    let omega = iota.source().clone();
    let h = hom_basis(&omega, x);
    if h.is_empty() {
        return None;
    }
    let n = h.len();
    let coords = |f: &ModuleMap| coordinates_in(&h, f).expect("map lies in Hom(ΩZ, X)");
    let b_cols: Vec<Vec<Scalar>> = hom_basis(&p0, x).iter().map(|g| coords(&iota.then(g))).collect();
    let b = Matrix::from_columns(field, n, &b_cols);
    // Rows of `ann` cut out the coboundaries.
    let ann = b.transpose().kernel_basis().transpose();
    let e = end_radical(x);
    let mut blocks = Vec::new();
    for c in 0..e.radical.cols() {
        let r = ModuleMap::combination(x, x, &e.basis, &e.radical.col(c));
        let cols: Vec<Vec<Scalar>> = h.iter().map(|t| coords(&t.then(&r))).collect();
        blocks.push(ann.mul(&Matrix::from_columns(field, n, &cols)));
    }
    let refs: Vec<&Matrix> = blocks.iter().collect();
    let cond = Matrix::vstack(field, n, &refs);
    let sol = cond.kernel_basis();
    let base_rank = b.rank();
    let theta = (0..sol.cols()).map(|c| sol.col(c)).find(|v| {
        Matrix::hstack(field, n, &[&b, &Matrix::from_columns(field, n, std::slice::from_ref(v))]).rank() > base_rank
    })?;
    let theta = ModuleMap::combination(&omega, x, &h, &theta);
    let sum = direct_sum(x.algebra(), &[x.clone(), p0.clone()]);
    let glue = map_into_sum(&omega, &[theta, iota.scale(&field.from_i64(-1))], &sum);
    let q = glue.cokernel();
    let left = sum.injections[0].then(&q);
    let down = map_from_sum(&sum, &[ModuleMap::zero(x, &z), pres.p0.map.clone()], &z);
    let right = down.factor_through_epi(&q).expect("pushout map to τ⁻¹X");
    Some(AlmostSplit { left, right })
}

/// A left almost split map out of an indecomposable X: the left map of the
/// almost split sequence, or X -> X/soc X when X is injective.
pub fn source_map(x: &Module) -> ModuleMap {
    match almost_split_sequence(x) {
        Some(s) => s.left,
        None => socle(x).cokernel(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::FieldSpec;
    use crate::fixtures;
    use crate::modcat::{decompose, is_isomorphic, projective, simple};

    #[test]
    fn ar_sequence_on_a3() {
        let a = fixtures::a3_linear(FieldSpec::Prime(2));
        // P(1) = S(1) -> P(2) -> S(2).
        let s = almost_split_sequence(&simple(&a, 0)).unwrap();
        assert!(s.left.is_injective() && s.right.is_surjective());
        assert!(is_isomorphic(s.left.target(), &projective(&a, 1), 0).unwrap().is_some());
        assert!(is_isomorphic(s.right.target(), &simple(&a, 1), 0).unwrap().is_some());
        assert!(s.left.then(&s.right).is_zero());
    }

    #[test]
    fn ar_sequence_middle_terms_kronecker() {
        let k = fixtures::kronecker(FieldSpec::Prime(3));
        let p = projective(&k, 1);
        let s = almost_split_sequence(&p).unwrap();
        let d = decompose(s.left.target(), 0).unwrap();
        assert_eq!(d.count(), 2);
        assert_eq!(s.right.target().dims(), &[2, 3]);
    }
}
