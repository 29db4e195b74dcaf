use super::{FieldSpec, Scalar};
use std::fmt;

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Result of row reduction.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}x{} over {}](", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            write!(f, "]")?;
        }
        write!(f, ")")
    }
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_vec(field: FieldSpec, rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows*cols");
        Matrix { field, rows, cols, data }
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix { field, rows: r, cols: c, data }
    }

    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        Self::from_rows(
            field,
            rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect(),
        )
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(field: FieldSpec, rows: usize, cols: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vec<Scalar> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|c| self.col(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut out = Matrix::zeros(self.field, self.rows, o.cols);
        if let FieldSpec::Prime(p) = self.field {
            let p = p as u64;
            let a = self.residues();
            let b = o.residues();
            let mut acc = vec![0u64; o.cols];
            for i in 0..self.rows {
                acc.iter_mut().for_each(|x| *x = 0);
                for k in 0..self.cols {
                    let aik = a[i * self.cols + k];
                    if aik == 0 {
                        continue;
                    }
                    let brow = &b[k * o.cols..(k + 1) * o.cols];
                    for (x, &bkj) in acc.iter_mut().zip(brow) {
                        *x = (*x + aik * bkj) % p;
                    }
                }
                for j in 0..o.cols {
                    out.data[i * o.cols + j] = Scalar::Fp(acc[j] as u32, p as u32);
                }
            }
            return out;
        }
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add_ref(&aik.mul_ref(b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for c in 0..self.cols {
                    let a = self.get(r, c);
                    if !a.is_zero() && !v[c].is_zero() {
                        acc = acc.add_ref(&a.mul_ref(&v[c]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.shape(), o.shape(), "shape mismatch in sum");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.add_ref(b)).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.shape(), o.shape(), "shape mismatch in difference");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.sub_ref(b)).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a.mul_ref(s)).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix {
        let data = self.data.iter().map(|a| a.neg_ref()).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    /// Place blocks side by side. All blocks need the same row count; `rows`
    /// is used when the list is empty.
    pub fn hstack(field: FieldSpec, rows: usize, blocks: &[&Matrix]) -> Matrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            out.paste(0, off, b);
            off += b.cols;
        }
        out
    }

    pub fn vstack(field: FieldSpec, cols: usize, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            out.paste(off, 0, b);
            off += b.rows;
        }
        out
    }

    pub fn block_diag(field: FieldSpec, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.paste(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    /// Copy `b` into self with its top-left corner at (r0, c0).
    pub fn paste(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows.len(), cols.len());
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            for c in 0..self.cols {
                out.set(i, c, self.get(r, c).clone());
            }
        }
        out
    }

    fn residues(&self) -> Vec<u64> {
        self.data.iter().map(|s| s.residue().expect("prime field entry") as u64).collect()
    }

    /// Reduced row echelon form. Pivot choice: in each column the first row
    /// (from the current position down) holding a nonzero entry.
    pub fn rref(&self) -> Rref {
        if let FieldSpec::Prime(p) = self.field {
            return self.rref_prime(p);
        }
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, pr);
            let inv = m.get(row, col).inv();
            for c in col..m.cols {
                let v = m.get(row, c).mul_ref(&inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let f = m.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let pv = m.get(row, c);
                    if pv.is_zero() {
                        continue;
                    }
                    let v = m.get(r, c).sub_ref(&f.mul_ref(pv));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        let rank = pivots.len();
        Rref { matrix: m, pivots, rank }
    }

    fn rref_prime(&self, p: u32) -> Rref {
        let pm = p as u64;
        let (rows, cols) = (self.rows, self.cols);
        let mut a = self.residues();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            if row == rows {
                break;
            }
            let Some(pr) = (row..rows).find(|&r| a[r * cols + col] != 0) else {
                continue;
            };
            if pr != row {
                for c in 0..cols {
                    a.swap(row * cols + c, pr * cols + c);
                }
            }
            let inv = super::pow_mod(a[row * cols + col], pm - 2, pm);
            for c in col..cols {
                a[row * cols + c] = a[row * cols + c] * inv % pm;
            }
            let (before, rest) = a.split_at_mut(row * cols);
            let (prow, after) = rest.split_at_mut(cols);
            let eliminate = |target: &mut [u64]| {
                let f = target[col];
                if f == 0 {
                    return;
                }
                let nf = pm - f;
                for c in col..cols {
                    if prow[c] != 0 {
                        target[c] = (target[c] + nf * prow[c]) % pm;
                    }
                }
            };
            for chunk in before.chunks_mut(cols) {
                eliminate(chunk);
            }
            for chunk in after.chunks_mut(cols) {
                eliminate(chunk);
            }
            pivots.push(col);
            row += 1;
        }
        let data = a.into_iter().map(|v| Scalar::Fp(v as u32, p)).collect();
        let rank = pivots.len();
        Rref { matrix: Matrix { field: self.field, rows, cols, data }, pivots, rank }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Columns form a basis of the null space, one column per free variable
    /// in increasing order.
    pub fn kernel_basis(&self) -> Matrix {
        let Rref { matrix: r, pivots, rank } = self.rref();
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let mut k = Matrix::zeros(self.field, n, free.len());
        for (j, &f) in free.iter().enumerate() {
            k.set(f, j, self.field.one());
            for (i, &p) in pivots.iter().enumerate().take(rank) {
                let v = r.get(i, f);
                if !v.is_zero() {
                    k.set(p, j, v.neg_ref());
                }
            }
        }
        k
    }

    /// Some x with A·x = b, or None when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let rhs = Matrix::from_columns(self.field, self.rows, &[b.to_vec()]);
        self.solve_matrix(&rhs).map(|x| x.col(0))
    }

    /// Some X with A·X = B, or None.
    pub fn solve_matrix(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(b.rows, self.rows);
        let aug = Matrix::hstack(self.field, self.rows, &[self, b]);
        let Rref { matrix: r, pivots, .. } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.field, self.cols, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, r.get(i, self.cols + j).clone());
            }
        }
        Some(x)
    }

    /// Basis of the column space, taken from the original pivot columns.
    pub fn column_space(&self) -> Matrix {
        let piv = self.rref().pivots;
        self.select_cols(&piv)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        self.solve_matrix(&Matrix::identity(self.field, self.rows)).filter(|_| self.rank() == self.rows)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// For a matrix of full column rank, coordinates of the columns of `b`
    /// in terms of the columns of self (None if some column is outside the
    /// span).
    pub fn coordinates(&self, b: &Matrix) -> Option<Matrix> {
        self.solve_matrix(b)
    }

    /// Intersection of two column spaces (same ambient dimension), returned
    /// as a basis matrix.
    pub fn intersect_columns(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.rows, o.rows);
        let stacked = Matrix::hstack(self.field, self.rows, &[self, o]);
        let k = stacked.kernel_basis();
        let top = k.submatrix(0..self.cols, 0..k.cols);
        self.mul(&top).column_space()
    }

    /// Basis for a complement of the column space of `sub` inside the column
    /// space of self, chosen among the columns of self.
    pub fn complement_columns(&self, sub: &Matrix) -> Matrix {
        let stacked = Matrix::hstack(self.field, self.rows, &[sub, self]);
        let piv = stacked.rref().pivots;
        let chosen: Vec<usize> = piv.into_iter().filter(|&p| p >= sub.cols).map(|p| p - sub.cols).collect();
        self.select_cols(&chosen)
    }

    /// Matrix power.
    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Kronecker product: block (i, j) equals self[i][j] * o.
    pub fn kron(&self, o: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        let b = o.get(k, l);
                        if !b.is_zero() {
                            out.set(i * o.rows + k, j * o.cols + l, a.mul_ref(b));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Scalar {
        let mut t = self.field.zero();
        for i in 0..self.rows.min(self.cols) {
            t = t.add_ref(self.get(i, i));
        }
        t
    }

    /// Flatten column vectors into a single long vector (row-major order).
    pub fn to_vec(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|r| (0..self.cols).map(|c| self.get(r, c).to_string()).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> FieldSpec {
        FieldSpec::Prime(p)
    }

    #[test]
    fn empty_matrix_has_rank_zero() {
        let m = Matrix::zeros(f(3), 0, 0);
        assert_eq!(m.rref().rank, 0);
    }

    #[test]
    fn identical_rows_over_f2() {
        let m = Matrix::from_i64(f(2), &[&[1, 1], &[1, 1]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let k = Matrix::identity(f(5), 4).kernel_basis();
        assert_eq!(k.cols(), 0);
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let k = Matrix::zeros(FieldSpec::Rational, 3, 3).kernel_basis();
        assert_eq!(k.cols(), 3);
        assert!(k.is_invertible());
    }

    #[test]
    fn solve_identity_and_inconsistent() {
        let fld = f(7);
        let b = vec![fld.from_i64(3), fld.from_i64(5)];
        assert_eq!(Matrix::identity(fld, 2).solve(&b).unwrap(), b);
        assert!(Matrix::zeros(fld, 2, 2).solve(&b).is_none());
    }

    #[test]
    fn rational_rref_is_reduced() {
        let q = FieldSpec::Rational;
        let m = Matrix::from_i64(q, &[&[2, 4, 1], &[1, 2, 3], &[3, 6, 4]]);
        let r = m.rref();
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 2]);
        assert_eq!(r.matrix.row(0).iter().map(|s| s.to_string()).collect::<Vec<_>>(), ["1", "2", "0"]);
    }

    #[test]
    fn intersection_and_complement() {
        let fld = f(5);
        let a = Matrix::from_i64(fld, &[&[1, 0], &[0, 1], &[0, 0]]);
        let b = Matrix::from_i64(fld, &[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(a.intersect_columns(&b).cols(), 1);
        let id = Matrix::identity(fld, 3);
        assert_eq!(id.complement_columns(&a).cols(), 1);
    }
}
