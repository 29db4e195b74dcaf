use super::{FieldSpec, Matrix, Scalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

/// Univariate polynomial, coefficients from low to high degree, with no
/// trailing zeros (the zero polynomial has no coefficients).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

/// Outcome of looking for a proper factor of a squarefree polynomial.
#[derive(Clone, Debug)]
pub enum Split {
    Factor(Poly),
    Irreducible,
    Unknown,
}

impl Poly {
    pub fn new(field: FieldSpec, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: FieldSpec) -> Self {
        Poly { field, coeffs: vec![] }
    }

    pub fn one(field: FieldSpec) -> Self {
        Poly { field, coeffs: vec![field.one()] }
    }

    pub fn x(field: FieldSpec) -> Self {
        Poly { field, coeffs: vec![field.zero(), field.one()] }
    }

    /// x - a
    pub fn linear(field: FieldSpec, a: &Scalar) -> Self {
        Poly::new(field, vec![a.neg_ref(), field.one()])
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0 as well, check `is_zero`.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().inv();
        Poly::new(self.field, self.coeffs.iter().map(|c| c.mul_ref(&inv)).collect())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = self.field.zero();
        Poly::new(
            self.field,
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z).add_ref(o.coeffs.get(i).unwrap_or(&z)))
                .collect(),
        )
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = self.field.zero();
        Poly::new(
            self.field,
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z).sub_ref(o.coeffs.get(i).unwrap_or(&z)))
                .collect(),
        )
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Poly::new(self.field, out)
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|c| c.mul_ref(s)).collect())
    }

    /// Quotient and remainder. Panics when dividing by zero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.coeffs.clone();
        let dl = d.coeffs.len();
        if r.len() < dl {
            return (Poly::zero(self.field), self.clone());
        }
        let inv = d.lead().inv();
        let mut q = vec![self.field.zero(); r.len() - dl + 1];
        for k in (0..q.len()).rev() {
            let c = r[k + dl - 1].mul_ref(&inv);
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[k + j] = r[k + j].sub_ref(&c.mul_ref(dj));
            }
            q[k] = c;
        }
        (Poly::new(self.field, q), Poly::new(self.field, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.divrem(d);
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.field,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul_ref(&self.field.from_i64(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(x).add_ref(c);
        }
        acc
    }

    /// Evaluate at a square matrix.
    pub fn eval_matrix(&self, a: &Matrix) -> Matrix {
        let n = a.rows();
        let mut acc = Matrix::zeros(self.field, n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a);
            if !c.is_zero() {
                for i in 0..n {
                    let v = acc.get(i, i).add_ref(c);
                    acc.set(i, i, v);
                }
            }
        }
        acc
    }

    pub fn powmod(&self, mut e: u128, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Minimal polynomial of a square matrix (monic): the lcm of the
    /// minimal polynomials of the vectors e_i, skipping those already in
    /// the invariant subspace spanned so far.
    pub fn minimal_polynomial(a: &Matrix) -> Poly {
        let field = a.field();
        let n = a.rows();
        let mut acc = Poly::one(field);
        let mut span: Vec<(usize, Vec<Scalar>)> = Vec::new();
        for i in 0..n {
            if span.len() == n {
                break;
            }
            let mut e = vec![field.zero(); n];
            e[i] = field.one();
            if reduce(&mut e, &span).is_none() {
                continue;
            }
            let (q, krylov) = vector_minimal_polynomial(a, e);
            for mut v in krylov {
                if let Some(piv) = reduce(&mut v, &span) {
                    normalize(&mut v, piv);
                    span.push((piv, v));
                }
            }
            acc = acc.mul(&q).div_exact(&acc.gcd(&q)).monic();
        }
        acc
    }

    /// Product of the distinct monic irreducible factors.
    pub fn radical(&self) -> Poly {
        if self.is_constant() {
            return Poly::one(self.field);
        }
        let f = self.monic();
        let d = f.derivative();
        match self.field {
            FieldSpec::Rational => f.div_exact(&f.gcd(&d)),
            FieldSpec::Prime(p) => {
                if d.is_zero() {
                    return f.pth_root(p as usize).radical();
                }
                let g = f.gcd(&d);
                let r1 = f.div_exact(&g);
                let mut rest = g;
                loop {
                    let c = rest.gcd(&r1);
                    if c.is_constant() {
                        break;
                    }
                    rest = rest.div_exact(&c);
                }
                if rest.is_constant() {
                    r1
                } else {
                    r1.mul(&rest.radical())
                }
            }
        }
    }

    /// For f(x) = g(x^p) over F_p return g, which equals the p-th root of f
    /// because Frobenius fixes prime-field coefficients.
    fn pth_root(&self, p: usize) -> Poly {
        Poly::new(self.field, self.coeffs.iter().step_by(p).cloned().collect())
    }

    /// Look for a proper monic factor of a squarefree monic polynomial.
    pub fn split<R: Rng + ?Sized>(&self, rng: &mut R) -> Split {
        if self.degree() <= 1 {
            return Split::Irreducible;
        }
        match self.field {
            FieldSpec::Prime(p) => self.split_prime(p as u128, rng),
            FieldSpec::Rational => self.split_rational(),
        }
    }

    fn split_prime<R: Rng + ?Sized>(&self, p: u128, rng: &mut R) -> Split {
        let r = self.monic();
        let x = Poly::x(self.field);
        let mut h = x.clone();
        let mut rem = r.clone();
        let mut i = 0usize;
        while 2 * (i + 1) <= rem.degree() {
            i += 1;
            h = h.powmod(p, &r);
            let g = h.sub(&x).gcd(&rem);
            if !g.is_constant() {
                if g.degree() < r.degree() {
                    return Split::Factor(g);
                }
                if g.degree() == i {
                    return Split::Irreducible;
                }
                return Split::Factor(g.equal_degree_split(i, p, rng));
            }
            rem = rem.div_exact(&g);
        }
        Split::Irreducible
    }

    /// Cantor-Zassenhaus splitting of a product of distinct irreducibles all
    /// of degree `d`.
    fn equal_degree_split<R: Rng + ?Sized>(&self, d: usize, p: u128, rng: &mut R) -> Poly {
        let n = self.degree();
        loop {
            let a = Poly::new(self.field, (0..n).map(|_| self.field.random(rng)).collect());
            if a.is_constant() {
                continue;
            }
            let g0 = a.gcd(self);
            if !g0.is_constant() && g0.degree() < n {
                return g0;
            }
            let b = if p == 2 {
                let mut t = a.rem(self);
                let mut acc = t.clone();
                for _ in 1..d {
                    t = t.mul(&t).rem(self);
                    acc = acc.add(&t);
                }
                acc
            } else {
                let e = (p.pow(d as u32) - 1) / 2;
                a.powmod(e, self).sub(&Poly::one(self.field))
            };
            let g = b.gcd(self);
            if !g.is_constant() && g.degree() < n {
                return g;
            }
        }
    }

    fn split_rational(&self) -> Split {
        match self.rational_root() {
            Some(root) => Split::Factor(Poly::linear(self.field, &root)),
            None if self.degree() <= 3 => Split::Irreducible,
            None => Split::Unknown,
        }
    }

    /// A rational root found by the rational root test, when the integer
    /// coefficients are small enough to enumerate divisors.
    fn rational_root(&self) -> Option<Scalar> {
        let qs: Vec<_> = self.coeffs.iter().map(|c| c.as_rational().expect("rational").clone()).collect();
        let mut l = BigInt::one();
        for q in &qs {
            l = l.lcm(q.denom());
        }
        let ints: Vec<BigInt> = qs.iter().map(|q| (q * num_rational::BigRational::from_integer(l.clone())).to_integer()).collect();
        if ints[0].is_zero() {
            return Some(self.field.zero());
        }
        let a0 = ints[0].abs().to_u64()?;
        let an = ints.last().unwrap().abs().to_u64()?;
        const LIMIT: u64 = 1_000_000_000_000;
        if a0 > LIMIT || an > LIMIT {
            return None;
        }
        for num in divisors(a0) {
            for den in divisors(an) {
                if num.gcd(&den) != 1 {
                    continue;
                }
                for sign in [1i64, -1] {
                    let cand = self
                        .field
                        .parse_scalar(&format!("{}/{}", sign * num as i64, den))
                        .expect("well-formed fraction");
                    if self.eval(&cand).is_zero() {
                        return Some(cand);
                    }
                }
            }
        }
        None
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Reduces v by the echelon vectors; returns the first nonzero position.
fn reduce(v: &mut [Scalar], span: &[(usize, Vec<Scalar>)]) -> Option<usize> {
    for (piv, b) in span {
        if !v[*piv].is_zero() {
            let c = v[*piv].clone();
            for (x, y) in v.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = x.sub_ref(&c.mul_ref(y));
                }
            }
        }
    }
    v.iter().position(|x| !x.is_zero())
}

fn normalize(v: &mut [Scalar], piv: usize) -> Scalar {
    let inv = v[piv].inv();
    for x in v.iter_mut() {
        *x = x.mul_ref(&inv);
    }
    inv
}

/// Minimal polynomial of v under a, with the reduced Krylov vectors.
fn vector_minimal_polynomial(a: &Matrix, v: Vec<Scalar>) -> (Poly, Vec<Vec<Scalar>>) {
    let field = a.field();
    let mut basis: Vec<(usize, Vec<Scalar>)> = Vec::new();
    let mut polys: Vec<Poly> = Vec::new();
    let (mut w, mut p) = (v, Poly::one(field));
    loop {
        // w = p(a) v; reduce against the earlier Krylov vectors.
        for ((piv, b), q) in basis.iter().zip(&polys) {
            if !w[*piv].is_zero() {
                let c = w[*piv].clone();
                for (x, y) in w.iter_mut().zip(b) {
                    if !y.is_zero() {
                        *x = x.sub_ref(&c.mul_ref(y));
                    }
                }
                p = p.sub(&q.scale(&c));
            }
        }
        match w.iter().position(|x| !x.is_zero()) {
            None => return (p.monic(), basis.into_iter().map(|(_, b)| b).collect()),
            Some(piv) => {
                let inv = normalize(&mut w, piv);
                p = p.scale(&inv);
                let next = a.mul_vec(&w);
                basis.push((piv, w));
                polys.push(p.clone());
                w = next;
                p = p.mul(&Poly::x(field));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn poly(f: FieldSpec, c: &[i64]) -> Poly {
        Poly::new(f, c.iter().map(|&v| f.from_i64(v)).collect())
    }

    #[test]
    fn minimal_polynomial_of_jordan_block() {
        let f = FieldSpec::Prime(5);
        let a = Matrix::from_i64(f, &[&[2, 1, 0], &[0, 2, 0], &[0, 0, 2]]);
        let m = Poly::minimal_polynomial(&a);
        assert_eq!(m, poly(f, &[4, 1, 1]));
        assert!(m.eval_matrix(&a).is_zero());
    }

    #[test]
    fn minimal_polynomial_matches_cayley_hamilton_oracle() {
        let f = FieldSpec::Rational;
        let a = Matrix::from_i64(f, &[&[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 3, 0], &[0, 0, 0, 3]]);
        let m = Poly::minimal_polynomial(&a);
        assert_eq!(m, poly(f, &[0, 0, -3, 1]));
        assert!(m.eval_matrix(&a).is_zero());
        let d = Matrix::from_i64(f, &[&[1, 0], &[0, 1]]);
        assert_eq!(Poly::minimal_polynomial(&d), poly(f, &[-1, 1]));
        assert_eq!(Poly::minimal_polynomial(&Matrix::zeros(f, 0, 0)), Poly::one(f));
    }

    #[test]
    fn radical_strips_powers() {
        let f = FieldSpec::Prime(2);
        let x = Poly::x(f);
        let x1 = x.add(&Poly::one(f));
        let sq = x1.mul(&x1).mul(&x);
        assert_eq!(sq.radical(), x.mul(&x1));
        let q = FieldSpec::Rational;
        let xq = Poly::x(q);
        let cube = xq.mul(&xq).mul(&xq);
        assert_eq!(cube.radical(), xq);
    }

    #[test]
    fn splits_products_over_prime_fields() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        for p in [2u32, 3, 5] {
            let f = FieldSpec::Prime(p);
            let r = if p == 2 { poly(f, &[1, 1, 1]) } else { poly(f, &[1, 0, 1]) };
            let g = poly(f, &[1, 1, 0, 1]);
            let prod = r.mul(&g).radical();
            match prod.split(&mut rng) {
                Split::Factor(h) => {
                    assert!(h.degree() > 0 && h.degree() < prod.degree());
                    assert!(prod.rem(&h).is_zero());
                }
                other => panic!("expected factor, got {other:?}"),
            }
        }
    }

    #[test]
    fn irreducible_quadratic_over_f2() {
        let f = FieldSpec::Prime(2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        assert!(matches!(poly(f, &[1, 1, 1]).split(&mut rng), Split::Irreducible));
    }

    #[test]
    fn equal_degree_factors_are_separated() {
        let f = FieldSpec::Prime(3);
        let a = poly(f, &[1, 0, 1]);
        let b = poly(f, &[2, 1, 1]);
        let prod = a.mul(&b);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        match prod.split(&mut rng) {
            Split::Factor(h) => assert_eq!(h.degree(), 2),
            other => panic!("expected factor, got {other:?}"),
        }
    }

    #[test]
    fn rational_roots() {
        let q = FieldSpec::Rational;
        let p = poly(q, &[-3, 2]).mul(&poly(q, &[1, 0, 1]));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        match p.split(&mut rng) {
            Split::Factor(h) => assert_eq!(h.degree(), 1),
            other => panic!("{other:?}"),
        }
    }
}
