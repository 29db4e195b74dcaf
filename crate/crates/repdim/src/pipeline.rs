//! End-to-end bounds for the representation dimension.

use crate::algebra::Algebra;
use crate::cert::ModuleRef;
use crate::endgldim::{
    auslander_generator, bound_report, build_end_category, default_cutoff, global_dimension, layering_check,
    BoundReport, EndError, GldimCertificate, LayeringCertificate, Pd,
};
use crate::exactlin::{FieldSpec, Matrix, Scalar};
use crate::odim::{all_points, odim_witness, tensor_lattices, LPoly, Lattice, OdimCertificate, OdimError, PolyMatrix};
use crate::tiered::{build_layering, p1_check, p2_check, ConditionReport, TieredError};
use crate::torsfin::{all_indecomposables, enumerate_torsionless, Status, Strategy, TorsError, CLOSURE_DIM_CAP};
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("inventory is not complete ({0})")]
    Incomplete(Status),
    #[error("prerequisite failed: {0}")]
    Prerequisite(String),
    #[error(transparent)]
    Tors(#[from] TorsError),
    #[error(transparent)]
    Tiered(#[from] TieredError),
    #[error(transparent)]
    End(#[from] EndError),
    #[error(transparent)]
    Odim(#[from] OdimError),
}

#[derive(Clone, Debug)]
pub struct CertifyOptions {
    pub tiered: bool,
    pub strategy: Strategy,
    pub bound: usize,
    pub cutoff: Option<usize>,
    pub seed: u64,
    /// Bounds for the tensor factors are added by subadditivity.
    pub factor_bounds: bool,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { tiered: false, strategy: Strategy::Auto, bound: crate::torsfin::DEFAULT_BOUND, cutoff: None, seed: 0, factor_bounds: true }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorBound {
    pub factor: usize,
    pub upper: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertifyReport {
    pub route: &'static str,
    pub generator: Vec<ModuleRef>,
    pub gldim: Option<GldimCertificate>,
    pub p1: Option<ConditionReport>,
    pub p2: Option<ConditionReport>,
    pub layering: Option<LayeringCertificate>,
    pub representation_finite: Option<usize>,
    pub odim: Option<OdimCertificate>,
    pub factors: Vec<FactorBound>,
    pub bounds: BoundReport,
}

/// Two vertices, at least two parallel arrows, no relations.
pub fn is_kronecker_type(alg: &Algebra) -> bool {
    let q = &alg.quiver;
    q.num_vertices() == 2
        && q.num_arrows() >= 2
        && alg.relations.is_empty()
        && q.arrows.iter().all(|a| a.source == q.arrows[0].source && a.target == q.arrows[0].target && a.source != a.target)
}

/// (R, R; 1, T, 0, ..., 0) on a Kronecker-type quiver.
pub fn kronecker_type_family(alg: &Algebra) -> Result<Lattice, OdimError> {
    let f = alg.field;
    let action = (0..alg.num_arrows())
        .map(|i| match i {
            0 => PolyMatrix::constant(&Matrix::identity(f, 1)),
            1 => PolyMatrix { rows: 1, cols: 1, entries: vec![LPoly::var(f, 0)] },
            _ => PolyMatrix::constant(&Matrix::zeros(f, 1, 1)),
        })
        .collect();
    let mut rank = vec![1, 1];
    rank.truncate(alg.num_vertices());
    Lattice::new(alg, 1, rank, action)
}

/// A lattice from Kronecker-type tensor factors, when every factor is one
/// and there are at most two of them.
pub fn automatic_lattice(alg: &Algebra) -> Result<Option<Lattice>, OdimError> {
    let factors = alg.factors();
    if factors.len() > crate::odim::MAX_VARS || !factors.iter().all(is_kronecker_type) {
        return Ok(None);
    }
    let ls = factors.iter().map(kronecker_type_family).collect::<Result<Vec<_>, _>>()?;
    Ok(Some(match ls.len() {
        1 => ls[0].clone(),
        _ => tensor_lattices(alg, &ls[0], &ls[1])?,
    }))
}

/// Points used for the density test: every point over a prime field, the
/// integers 0..5 per coordinate over Q.
pub fn sample_points(field: FieldSpec, vars: usize) -> Vec<Vec<Scalar>> {
    all_points(field, vars).unwrap_or_else(|| {
        let ints: Vec<Scalar> = (0..5).map(|i| field.from_i64(i)).collect();
        let mut pts = vec![vec![]];
        for _ in 0..vars {
            pts = pts.into_iter().flat_map(|p: Vec<Scalar>| ints.iter().map(move |e| [p.clone(), vec![e.clone()]].concat())).collect();
        }
        pts
    })
}

fn gldim_upper(g: &GldimCertificate) -> Option<usize> {
    match g.gldim {
        Pd::Exact(v) => Some(v.max(2)),
        Pd::AtLeast(_) => None,
    }
}

/// Chains inventory → generator → gldim (or the tiered layering) with the
/// lower bounds from Odim witnesses and reports the resulting interval.
pub fn certify(alg: &Algebra, opts: &CertifyOptions) -> Result<CertifyReport, PipelineError> {
    let seed = opts.seed;
    let mut lower: Vec<(usize, String)> = Vec::new();
    let mut upper: Vec<(usize, String)> = Vec::new();
    let semisimple = alg.num_arrows() == 0;
    if semisimple {
        lower.push((0, "semisimple".into()));
        upper.push((0, "semisimple".into()));
    } else {
        lower.push((2, "not semisimple (cited)".into()));
    }
    let mut report = CertifyReport {
        route: if opts.tiered { "tiered" } else { "torsionless-divisible" },
        generator: vec![],
        gldim: None,
        p1: None,
        p2: None,
        layering: None,
        representation_finite: None,
        odim: None,
        factors: vec![],
        bounds: bound_report(&[], &[]),
    };
    if let Some(l) = automatic_lattice(alg)? {
        let cert = odim_witness(&l, &sample_points(alg.field, l.vars))?;
        if let Some(d) = cert.witness_for {
            lower.push((d + 2, format!("Odim ≥ {d} witness (cited, not re-proven)")));
        }
        report.odim = Some(cert);
    }
    // An Odim witness already rules out representation-finiteness.
    let infinite = lower.iter().any(|(v, _)| *v >= 3);
    if opts.tiered {
        let p1 = p1_check(alg);
        let p2 = p2_check(alg, seed)?;
        let fail = p1.failures.first().or(p2.failures.first()).cloned();
        report.p1 = Some(p1);
        report.p2 = Some(p2);
        if let Some(w) = fail {
            return Err(PipelineError::Prerequisite(w));
        }
        let l = build_layering(alg, seed)?;
        let c = l.category();
        let cert = layering_check(&c, &l.layer, &l.alpha, seed)?;
        if let Some(b) = cert.bound {
            upper.push((b, format!("layered generator with {b} layers")));
        }
        let g = global_dimension(&c, opts.cutoff.unwrap_or(l.layers + 1));
        if let Some(v) = gldim_upper(&g) {
            upper.push((v, "gldim End(truncation generator)".into()));
        }
        report.generator = l.objects.iter().map(|t| ModuleRef::of(&t.module)).collect();
        report.layering = Some(cert);
        report.gldim = Some(g);
    } else {
        let inv = enumerate_torsionless(alg, opts.strategy, opts.bound, seed)?;
        if !inv.status.is_complete() {
            return Err(PipelineError::Incomplete(inv.status));
        }
        let gen = auslander_generator(alg, &inv)?;
        let c = build_end_category(&gen, seed)?;
        let g = global_dimension(&c, opts.cutoff.unwrap_or_else(|| default_cutoff(c.len())));
        if let Some(v) = gldim_upper(&g) {
            upper.push((v, "gldim End(torsionless ⊕ divisible)".into()));
        }
        report.generator = gen.iter().map(ModuleRef::of).collect();
        report.gldim = Some(g);
        if !infinite {
            if let Some(all) = all_indecomposables(alg, CLOSURE_DIM_CAP, seed)? {
                report.representation_finite = Some(all.len());
                upper.push((2, format!("representation-finite with {} indecomposables", all.len())));
            }
        }
    }
    let factors = alg.factors();
    if opts.factor_bounds && factors.len() > 1 {
        let sub = CertifyOptions { tiered: false, factor_bounds: false, cutoff: None, ..opts.clone() };
        for (i, f) in factors.iter().enumerate() {
            let up = certify(f, &sub).ok().and_then(|r| r.bounds.upper);
            report.factors.push(FactorBound { factor: i, upper: up });
        }
        if let Some(sum) = report.factors.iter().map(|f| f.upper).sum::<Option<usize>>() {
            upper.push((sum, "sum of factor bounds over a perfect field (cited)".into()));
        }
    }
    report.bounds = bound_report(&lower, &upper);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn kronecker_closes_at_three() {
        let k = fixtures::kronecker(FieldSpec::Prime(3));
        let r = certify(&k, &CertifyOptions::default()).unwrap();
        assert_eq!((r.bounds.lower, r.bounds.upper), (Some(3), Some(3)));
        assert!(r.representation_finite.is_none());
    }

    #[test]
    fn a3_rad2_is_representation_finite() {
        let a = fixtures::a3_rad2(FieldSpec::Prime(2));
        let r = certify(&a, &CertifyOptions::default()).unwrap();
        assert_eq!(r.gldim.as_ref().unwrap().gldim, Pd::Exact(2));
        assert_eq!(r.representation_finite, Some(5));
        assert_eq!((r.bounds.lower, r.bounds.upper), (Some(2), Some(2)));
    }

    #[test]
    fn tiered_prerequisites() {
        let a = fixtures::ex84_mid(FieldSpec::Prime(2));
        let opts = CertifyOptions { tiered: true, ..Default::default() };
        assert!(matches!(certify(&a, &opts), Err(PipelineError::Prerequisite(_))));
    }
}
