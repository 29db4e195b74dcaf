//! Endomorphism radicals, Krull-Schmidt decomposition and isomorphism tests.

use super::{direct_sum, hom_basis, map_from_sum, ModError, Module, ModuleMap};
use crate::exactlin::{FieldSpec, Matrix, Poly, Scalar, Split};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Enumeration fallback is used when |End(M)| is at most this.
const ENUM_LIMIT: u64 = 1 << 20;

/// End(M) with a basis and the coordinates of a basis of its radical.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    pub basis: Vec<ModuleMap>,
    /// Block-diagonal total matrices of the basis maps.
    pub mats: Vec<Matrix>,
    /// Columns: coordinates (in `basis`) of a basis of rad End(M).
    pub radical: Matrix,
}

impl EndAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn radical_dim(&self) -> usize {
        self.radical.cols()
    }

    pub fn semisimple_dim(&self) -> usize {
        self.dim() - self.radical_dim()
    }
}

/// Compute End(M) and its Jacobson radical. Over Q the radical is the kernel
/// of the trace form; over F_p it is the last term of the chain of p-adic
/// trace-form kernels.
pub fn end_radical(m: &Module) -> EndAlgebra {
    let basis = hom_basis(m, m);
    let mats: Vec<Matrix> = basis.iter().map(|f| f.total_matrix()).collect();
    let radical = radical_of_matrix_algebra(m.field(), &mats, m.total_dim());
    EndAlgebra { basis, mats, radical }
}

/// Radical of the matrix algebra spanned by `mats` (n x n), as coordinate
/// columns with respect to `mats`.
pub fn radical_of_matrix_algebra(field: FieldSpec, mats: &[Matrix], n: usize) -> Matrix {
    let d = mats.len();
    let mut cur = Matrix::identity(field, d);
    if d == 0 {
        return cur;
    }
    let products = |cur: &Matrix| -> Vec<Matrix> {
        (0..cur.cols())
            .map(|k| {
                let mut a = Matrix::zeros(field, n, n);
                for (i, m) in mats.iter().enumerate() {
                    let c = cur.get(i, k);
                    if !c.is_zero() {
                        a = a.add(&m.scale(c));
                    }
                }
                a
            })
            .collect()
    };
    match field {
        FieldSpec::Rational => {
            let elems = products(&cur);
            let g = trace_form(field, &elems, mats, |a| a.trace());
            cur.mul(&g.kernel_basis())
        }
        FieldSpec::Prime(p) => {
            let p = p as u128;
            let mut l = 0u32;
            while p.pow(l + 1) <= n as u128 {
                l += 1;
            }
            for i in 0..=l {
                if cur.cols() == 0 {
                    break;
                }
                let elems = products(&cur);
                let g = trace_form(field, &elems, mats, |a| padic_trace(a, p, i));
                cur = cur.mul(&g.kernel_basis());
            }
            cur
        }
    }
}

/// Matrix G with G[j][k] = g(a_k b_j).
fn trace_form(field: FieldSpec, elems: &[Matrix], mats: &[Matrix], g: impl Fn(&Matrix) -> Scalar) -> Matrix {
    let mut out = Matrix::zeros(field, mats.len(), elems.len());
    for (j, b) in mats.iter().enumerate() {
        for (k, a) in elems.iter().enumerate() {
            out.set(j, k, g(&a.mul(b)));
        }
    }
    out
}

/// (tr(ã^(p^i)) mod p^(i+1)) / p^i for the lift ã of `a` with entries in
/// [0, p).
fn padic_trace(a: &Matrix, p: u128, i: u32) -> Scalar {
    let field = a.field();
    if i == 0 {
        return a.trace();
    }
    let modulus = p.pow(i + 1);
    let n = a.rows();
    let lift: Vec<u128> = a.entries().iter().map(|s| s.residue().unwrap() as u128).collect();
    let mul = |x: &[u128], y: &[u128]| -> Vec<u128> {
        let mut out = vec![0u128; n * n];
        for r in 0..n {
            for k in 0..n {
                let xv = x[r * n + k];
                if xv == 0 {
                    continue;
                }
                for c in 0..n {
                    out[r * n + c] = (out[r * n + c] + xv * y[k * n + c]) % modulus;
                }
            }
        }
        out
    };
    let mut e = p.pow(i);
    let mut base = lift;
    let mut acc: Vec<u128> = (0..n * n).map(|k| u128::from(k / n == k % n)).collect();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base);
        }
        base = mul(&base, &base);
        e >>= 1;
    }
    let tr = (0..n).map(|k| acc[k * n + k]).sum::<u128>() % modulus;
    let pi = p.pow(i);
    debug_assert_eq!(tr % pi, 0, "p-adic trace must be divisible on the previous ideal");
    field.from_i64(((tr / pi) % p) as i64)
}

/// Kernel of b^k for k large, found by squaring until the rank is stable.
fn generalized_kernel(b: &Matrix) -> Matrix {
    let mut p = b.clone();
    let mut r = p.rank();
    loop {
        if r == 0 {
            return p.kernel_basis();
        }
        let q = p.mul(&p);
        let rq = q.rank();
        if rq == r {
            return p.kernel_basis();
        }
        p = q;
        r = rq;
    }
}

/// Fitting decomposition M = ker φ^N ⊕ im φ^N, when φ is neither
/// nilpotent nor invertible.
fn fitting_split(m: &Module, phi: &ModuleMap) -> Option<(ModuleMap, ModuleMap)> {
    let n = m.total_dim();
    let mut p = phi.clone();
    let mut r = p.total_matrix().rank();
    loop {
        if r == 0 || r == n {
            return None;
        }
        let q = p.then(&p);
        let rq = q.total_matrix().rank();
        if rq == r {
            return Some((p.kernel(), p.image().1));
        }
        p = q;
        r = rq;
    }
}

enum Attempt {
    Split(ModuleMap, ModuleMap),
    Local,
    Nothing,
}

fn try_split<R: Rng + ?Sized>(m: &Module, phi: &ModuleMap, ss_dim: usize, rng: &mut R) -> Attempt {
    let f = Poly::minimal_polynomial(&phi.total_matrix());
    let r = f.radical();
    match r.split(rng) {
        Split::Factor(g) => {
            let h = r.div_exact(&g);
            let gen_kernel = |u: &Poly| -> ModuleMap {
                let bases = phi.comps().iter().map(|c| generalized_kernel(&u.eval_matrix(c))).collect();
                m.submodule(bases)
            };
            let (a, b) = (gen_kernel(&g), gen_kernel(&h));
            debug_assert_eq!(a.source().total_dim() + b.source().total_dim(), m.total_dim());
            if a.source().is_zero() || b.source().is_zero() {
                Attempt::Nothing
            } else {
                Attempt::Split(a, b)
            }
        }
        Split::Irreducible if r.degree() == ss_dim => Attempt::Local,
        _ => Attempt::Nothing,
    }
}

/// Try to split M into two nonzero summands. `Ok(None)` certifies M is
/// indecomposable.
fn split_once<R: Rng + ?Sized>(m: &Module, rng: &mut R) -> Result<Option<(ModuleMap, ModuleMap)>, ModError> {
    if m.is_zero() {
        return Ok(None);
    }
    let e = end_radical(m);
    let q = e.semisimple_dim();
    if q == 1 {
        return Ok(None);
    }
    let field = m.field();
    let d = e.dim();
    if field.order().is_none() {
        // Over Q random endomorphisms rarely have rational eigenvalues, so
        // sparse endomorphisms are tried with the Fitting decomposition first.
        for (i, b) in e.basis.iter().enumerate() {
            if let Some(split) = fitting_split(m, b) {
                return Ok(Some(split));
            }
            for c in e.basis.iter().skip(i + 1) {
                let coeffs = [field.one(), field.random_nonzero(rng)];
                let phi = ModuleMap::combination(m, m, &[b.clone(), c.clone()], &coeffs);
                if let Some(split) = fitting_split(m, &phi) {
                    return Ok(Some(split));
                }
            }
        }
    }
    let trials = 20 * d;
    for _ in 0..trials {
        let coeffs: Vec<Scalar> = (0..d).map(|_| field.random(rng)).collect();
        let phi = ModuleMap::combination(m, m, &e.basis, &coeffs);
        match try_split(m, &phi, q, rng) {
            Attempt::Split(a, b) => return Ok(Some((a, b))),
            Attempt::Local => return Ok(None),
            Attempt::Nothing => {}
        }
    }
    if let Some(order) = field.order() {
        if (d as f64) * (order as f64).log2() <= (ENUM_LIMIT as f64).log2() {
            let elems = field.elements().unwrap();
            let total = order.pow(d as u32);
            for code in 0..total {
                let mut c = code;
                let coeffs: Vec<Scalar> = (0..d)
                    .map(|_| {
                        let s = elems[(c % order) as usize].clone();
                        c /= order;
                        s
                    })
                    .collect();
                let phi = ModuleMap::combination(m, m, &e.basis, &coeffs);
                match try_split(m, &phi, q, rng) {
                    Attempt::Split(a, b) => return Ok(Some((a, b))),
                    Attempt::Local => return Ok(None),
                    Attempt::Nothing => {}
                }
            }
            // No element of End(M) has a minimal polynomial with coprime
            // factors, so End(M) has no nontrivial idempotent.
            return Ok(None);
        }
    }
    Err(ModError::Undecided(trials))
}

/// Krull-Schmidt decomposition with a verified isomorphism witness.
#[derive(Clone, Debug)]
pub struct Decomposition {
    /// Inclusions of the indecomposable summands.
    pub parts: Vec<ModuleMap>,
    /// Isomorphism class index of each part.
    pub class_of: Vec<usize>,
    /// One representative per class with its multiplicity.
    pub summands: Vec<(Module, usize)>,
    /// Isomorphism from the direct sum of the parts to the module.
    pub witness: ModuleMap,
}

impl Decomposition {
    pub fn count(&self) -> usize {
        self.parts.len()
    }

    pub fn modules(&self) -> Vec<Module> {
        self.parts.iter().map(|p| p.source().clone()).collect()
    }
}

pub fn decompose(m: &Module, seed: u64) -> Result<Decomposition, ModError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    decompose_with(m, &mut rng)
}

pub(crate) fn decompose_with<R: Rng + ?Sized>(m: &Module, rng: &mut R) -> Result<Decomposition, ModError> {
    let mut stack = vec![m.identity()];
    let mut parts = Vec::new();
    while let Some(inc) = stack.pop() {
        if inc.source().is_zero() {
            continue;
        }
        match split_once(inc.source(), rng)? {
            Some((a, b)) => {
                stack.push(b.then(&inc));
                stack.push(a.then(&inc));
            }
            None => parts.push(inc),
        }
    }
    parts.sort_by(|a, b| {
        (a.source().total_dim(), a.source().dims()).cmp(&(b.source().total_dim(), b.source().dims()))
    });
    let mut class_of = Vec::new();
    let mut summands: Vec<(Module, usize)> = Vec::new();
    for p in &parts {
        let x = p.source();
        match summands.iter().position(|(s, _)| iso_indecomposable(s, x).is_some()) {
            Some(c) => {
                summands[c].1 += 1;
                class_of.push(c);
            }
            None => {
                class_of.push(summands.len());
                summands.push((x.clone(), 1));
            }
        }
    }
    let mods: Vec<Module> = parts.iter().map(|p| p.source().clone()).collect();
    let ds = direct_sum(m.algebra(), &mods);
    let witness = map_from_sum(&ds, &parts, m);
    assert!(witness.is_iso(), "decomposition witness must be invertible");
    Ok(Decomposition { parts, class_of, summands, witness })
}

pub fn is_indecomposable(m: &Module, seed: u64) -> Result<bool, ModError> {
    if m.is_zero() {
        return Ok(false);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(split_once(m, &mut rng)?.is_none())
}

/// Isomorphism test for indecomposables: X ≅ Y iff some composite
/// Y -> X after X -> Y of basis maps is invertible, since the non-units of
/// the local ring End(X) form its radical.
pub fn iso_indecomposable(x: &Module, y: &Module) -> Option<ModuleMap> {
    if x.dims() != y.dims() {
        return None;
    }
    let f = hom_basis(x, y);
    if f.is_empty() {
        return None;
    }
    if let Some(h) = f.iter().find(|h| h.is_iso()) {
        return Some(h.clone());
    }
    let g = hom_basis(y, x);
    for h in &f {
        for k in &g {
            if h.then(k).is_iso() {
                return Some(h.clone());
            }
        }
    }
    None
}

/// Isomorphism test with witness. Random elements of Hom(M, N) are tried
/// first; the exact fallback matches indecomposable summands.
pub fn is_isomorphic(m: &Module, n: &Module, seed: u64) -> Result<Option<ModuleMap>, ModError> {
    if !m.same_algebra(n) {
        return Err(ModError::AlgebraMismatch);
    }
    if m.dims() != n.dims() {
        return Ok(None);
    }
    if m.is_zero() {
        return Ok(Some(ModuleMap::zero(m, n)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = hom_basis(m, n);
    if h.is_empty() {
        return Ok(None);
    }
    let field = m.field();
    for _ in 0..12 {
        let c: Vec<Scalar> = (0..h.len()).map(|_| field.random(&mut rng)).collect();
        let f = ModuleMap::combination(m, n, &h, &c);
        if f.is_iso() {
            return Ok(Some(f));
        }
    }
    let dm = decompose_with(m, &mut rng)?;
    let dn = decompose_with(n, &mut rng)?;
    if dm.count() != dn.count() {
        return Ok(None);
    }
    let mut used = vec![false; dn.count()];
    let mut isos = Vec::new();
    for p in &dm.parts {
        let found = dn.parts.iter().enumerate().find_map(|(j, q)| {
            if used[j] {
                return None;
            }
            iso_indecomposable(p.source(), q.source()).map(|f| (j, f))
        });
        match found {
            Some((j, f)) => {
                used[j] = true;
                isos.push((j, f));
            }
            None => return Ok(None),
        }
    }
    // m <- ⊕ X_i (witness) ; X_i -> Y_j(i) -> n.
    let maps: Vec<ModuleMap> = isos.iter().map(|(j, f)| f.then(&dn.parts[*j])).collect();
    let ds = direct_sum(m.algebra(), &dm.modules());
    let from_parts = map_from_sum(&ds, &maps, n);
    let inv = dm.witness.inverse().expect("witness is invertible");
    let iso = inv.with_ends(m, &ds.module).then(&from_parts);
    debug_assert!(iso.is_iso());
    Ok(Some(iso))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, Quiver, Relation};
    use crate::modcat::{projective, simple};

    fn a3(field: FieldSpec) -> Algebra {
        let q = Quiver::from_names(&["1", "2", "3"], &[("b", "3", "2"), ("a", "2", "1")]).unwrap();
        Algebra::build(q, field, vec![Relation::monomial(field, vec![0, 1])], 30).unwrap()
    }

    fn kronecker(field: FieldSpec) -> Algebra {
        let q = Quiver::from_names(&["s", "t"], &[("b", "s", "t"), ("c", "s", "t")]).unwrap();
        Algebra::path_algebra(q, field).unwrap()
    }

    fn kron_module(k: &Algebra, alpha: i64) -> Module {
        let f = k.field;
        Module::new(k, vec![1, 1], vec![Matrix::from_i64(f, &[&[1]]), Matrix::from_i64(f, &[&[alpha]])]).unwrap()
    }

    #[test]
    fn regular_module_of_a3_splits_into_projectives() {
        for field in [FieldSpec::Prime(2), FieldSpec::Prime(3), FieldSpec::Rational] {
            let a = a3(field);
            let reg = crate::modcat::regular(&a).module;
            let d = decompose(&reg, 7).unwrap();
            assert_eq!(d.count(), 3);
            assert_eq!(d.summands.len(), 3);
            assert!(d.witness.is_iso());
        }
    }

    #[test]
    fn projective_plus_simple() {
        let a = a3(FieldSpec::Prime(5));
        let m = direct_sum(&a, &[projective(&a, 2), simple(&a, 1)]).module;
        assert_eq!(decompose(&m, 1).unwrap().count(), 2);
    }

    #[test]
    fn repeated_summands_have_multiplicity() {
        let a = a3(FieldSpec::Prime(2));
        let s = simple(&a, 1);
        let m = direct_sum(&a, &[s.clone(), s.clone(), projective(&a, 2)]).module;
        let d = decompose(&m, 3).unwrap();
        assert_eq!(d.count(), 3);
        let mut mult: Vec<usize> = d.summands.iter().map(|s| s.1).collect();
        mult.sort();
        assert_eq!(mult, vec![1, 2]);
    }

    #[test]
    fn kronecker_modules_distinguished() {
        let k = kronecker(FieldSpec::Prime(5));
        for a in 0..5 {
            for b in 0..5 {
                let iso = is_isomorphic(&kron_module(&k, a), &kron_module(&k, b), 0).unwrap();
                assert_eq!(iso.is_some(), a == b);
            }
        }
    }

    #[test]
    fn radical_of_kronecker_regular_module() {
        // End(Λ) ≅ Λ^op, whose radical is spanned by the two arrows.
        let k = kronecker(FieldSpec::Prime(2));
        let reg = crate::modcat::regular(&k).module;
        let e = end_radical(&reg);
        assert_eq!(e.dim(), 4);
        assert_eq!(e.radical_dim(), 2);
    }

    #[test]
    fn padic_chain_handles_small_characteristic() {
        // S ⊕ S ⊕ S over F_2: End = M_3(F_2), trace form degenerate but the
        // radical is zero.
        let a = a3(FieldSpec::Prime(2));
        let s = simple(&a, 0);
        let m = direct_sum(&a, &[s.clone(), s.clone(), s]).module;
        let e = end_radical(&m);
        assert_eq!(e.dim(), 9);
        assert_eq!(e.radical_dim(), 0);
        assert_eq!(decompose(&m, 0).unwrap().count(), 3);
    }
}
