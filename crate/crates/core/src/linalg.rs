//! Dense exact linear algebra over a [`Field`].
//!
//! All eliminations pivot on the first nonzero entry of the leftmost
//! remaining column, so echelon forms, kernel bases and particular solutions
//! are reproducible given the same input matrix.

use crate::field::Field;

pub type Vector<F> = Vec<<F as Field>::Elem>;

pub fn zero_vec<F: Field>(field: &F, n: usize) -> Vector<F> {
    vec![field.zero(); n]
}

pub fn unit_vec<F: Field>(field: &F, n: usize, i: usize) -> Vector<F> {
    let mut v = zero_vec(field, n);
    v[i] = field.one();
    v
}

pub fn is_zero_vec<F: Field>(field: &F, v: &[F::Elem]) -> bool {
    v.iter().all(|a| field.is_zero(a))
}

/// `dst += c * src`.
pub fn axpy<F: Field>(field: &F, dst: &mut [F::Elem], c: &F::Elem, src: &[F::Elem]) {
    if field.is_zero(c) {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        if !field.is_zero(s) {
            field.mul_add_assign(d, c, s);
        }
    }
}

pub fn add_vec<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vector<F> {
    a.iter().zip(b).map(|(x, y)| field.add(x, y)).collect()
}

pub fn sub_vec<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vector<F> {
    a.iter().zip(b).map(|(x, y)| field.sub(x, y)).collect()
}

pub fn scale_vec<F: Field>(field: &F, c: &F::Elem, a: &[F::Elem]) -> Vector<F> {
    a.iter().map(|x| field.mul(c, x)).collect()
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn zero(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &F, cols: usize, rows: Vec<Vector<F>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend(r);
        }
        Matrix {
            field: field.clone(),
            rows: n,
            cols,
            data,
        }
    }

    pub fn from_columns(field: &F, rows: usize, columns: &[Vector<F>]) -> Self {
        let mut m = Self::zero(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, a) in c.iter().enumerate() {
                m.set(i, j, a.clone());
            }
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [F::Elem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.field, &self.data)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zero(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            let (lo, hi) = (i * other.cols, (i + 1) * other.cols);
            for k in 0..self.cols {
                let a = self.get(i, k);
                if self.field.is_zero(a) {
                    continue;
                }
                axpy(&self.field, &mut out.data[lo..hi], a, other.row(k));
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vector<F> {
        assert_eq!(
            self.cols,
            v.len(),
            "dimension mismatch in matrix-vector product"
        );
        let mut out = zero_vec(&self.field, self.rows);
        for (j, x) in v.iter().enumerate() {
            if self.field.is_zero(x) {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !self.field.is_zero(a) {
                    self.field.mul_add_assign(o, a, x);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: add_vec(&self.field, &self.data, &other.data),
        }
    }

    pub fn sub(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: sub_vec(&self.field, &self.data, &other.data),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Matrix<F> {
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: scale_vec(&self.field, c, &self.data),
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &F::Elem, other: &Matrix<F>) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        axpy(&self.field, &mut self.data, c, &other.data);
    }

    pub fn hstack(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zero(&self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            out.row_mut(i)[..self.cols].clone_from_slice(self.row(i));
            out.row_mut(i)[self.cols..].clone_from_slice(other.row(i));
        }
        out
    }

    pub fn vstack(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Copies `block` into `self` with its top-left corner at `(r, c)`.
    pub fn set_block(&mut self, r: usize, c: usize, block: &Matrix<F>) {
        for i in 0..block.rows {
            self.row_mut(r + i)[c..c + block.cols].clone_from_slice(block.row(i));
        }
    }

    pub fn block(&self, r: usize, c: usize, rows: usize, cols: usize) -> Matrix<F> {
        let mut out = Self::zero(&self.field, rows, cols);
        for i in 0..rows {
            out.row_mut(i)
                .clone_from_slice(&self.row(r + i)[c..c + cols]);
        }
        out
    }

    pub fn block_diag(field: &F, blocks: &[&Matrix<F>]) -> Matrix<F> {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zero(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    /// Reduces in place to reduced row echelon form and returns the pivot
    /// columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in c..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            for j in c..self.cols {
                let v = f.mul(self.get(r, j), &inv);
                self.set(r, j, v);
            }
            let pivot_row: Vec<F::Elem> = self.row(r)[c..].to_vec();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                let neg = f.neg(&factor);
                let cols = self.cols;
                axpy(
                    &f,
                    &mut self.data[i * cols + c..(i + 1) * cols],
                    &neg,
                    &pivot_row,
                );
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{v : self * v = 0}`, one vector per free column in
    /// increasing order.
    pub fn kernel(&self) -> Vec<Vector<F>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let f = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = zero_vec(f, self.cols);
            v[free] = f.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(m.get(i, free));
            }
            out.push(v);
        }
        out
    }

    /// A solution of `self * v = b` with every free variable set to zero, or
    /// `None` when the system is inconsistent.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vector<F>> {
        assert_eq!(b.len(), self.rows);
        let f = &self.field;
        let aug = self.hstack(&Matrix::from_columns(f, self.rows, &[b.to_vec()]));
        let mut m = aug;
        let pivots = m.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut v = zero_vec(f, self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = m.get(i, self.cols).clone();
        }
        Some(v)
    }
}

/// A subspace of `F^n` stored as the nonzero rows of its reduced row echelon
/// form. The representation is canonical, so equality of subspaces is
/// structural equality.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    rows: Vec<Vector<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: &F, ambient: usize) -> Self {
        Subspace {
            field: field.clone(),
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        Subspace {
            field: field.clone(),
            ambient,
            rows: (0..ambient).map(|i| unit_vec(field, ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span<I>(field: &F, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vector<F>>,
    {
        let vecs: Vec<Vector<F>> = vectors
            .into_iter()
            .filter(|v| !is_zero_vec(field, v))
            .collect();
        if vecs.is_empty() {
            return Self::zero(field, ambient);
        }
        let mut m = Matrix::from_rows(field, ambient, vecs);
        let pivots = m.rref();
        let rows = (0..pivots.len()).map(|i| m.row(i).to_vec()).collect();
        Subspace {
            field: field.clone(),
            ambient,
            rows,
            pivots,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }
    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }
    pub fn basis(&self) -> &[Vector<F>] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates not used as pivots; their unit vectors span a complement.
    pub fn complement_coords(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// Normal form of `v` modulo the subspace: zero on every pivot coordinate.
    pub fn reduce(&self, v: &[F::Elem]) -> Vector<F> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if self.field.is_zero(&out[p]) {
                continue;
            }
            let c = self.field.neg(&out[p]);
            axpy(&self.field, &mut out, &c, row);
        }
        out
    }

    /// Coordinates of the class of `v` in the quotient, on the complement
    /// coordinates.
    pub fn quotient_coords(&self, v: &[F::Elem]) -> Vector<F> {
        let r = self.reduce(v);
        self.complement_coords()
            .into_iter()
            .map(|c| r[c].clone())
            .collect()
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        is_zero_vec(&self.field, &self.reduce(v))
    }

    pub fn is_subspace_of(&self, other: &Subspace<F>) -> bool {
        assert_eq!(self.ambient, other.ambient);
        self.dim() <= other.dim() && self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace<F>) -> Subspace<F> {
        assert_eq!(self.ambient, other.ambient);
        Subspace::span(
            &self.field,
            self.ambient,
            self.rows.iter().chain(other.rows.iter()).cloned(),
        )
    }

    pub fn intersection(&self, other: &Subspace<F>) -> Subspace<F> {
        assert_eq!(self.ambient, other.ambient);
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(&self.field, self.ambient);
        }
        let codim = other.complement_coords();
        let cols: Vec<Vector<F>> = self
            .rows
            .iter()
            .map(|r| {
                let red = other.reduce(r);
                codim.iter().map(|&c| red[c].clone()).collect()
            })
            .collect();
        let m = Matrix::from_columns(&self.field, codim.len(), &cols);
        let combos = m.kernel();
        Subspace::span(
            &self.field,
            self.ambient,
            combos.into_iter().map(|c| self.combine(&c)),
        )
    }

    /// `sum_i c_i * basis_i`.
    pub fn combine(&self, coeffs: &[F::Elem]) -> Vector<F> {
        let mut v = zero_vec(&self.field, self.ambient);
        for (c, r) in coeffs.iter().zip(&self.rows) {
            axpy(&self.field, &mut v, c, r);
        }
        v
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vector<F>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// `{v : map * v in target}`.
    pub fn preimage(map: &Matrix<F>, target: &Subspace<F>) -> Subspace<F> {
        assert_eq!(map.rows(), target.ambient);
        let field = map.field();
        let codim = target.complement_coords();
        if codim.is_empty() {
            return Subspace::full(field, map.cols());
        }
        let mut q = Matrix::zero(field, codim.len(), map.cols());
        for j in 0..map.cols() {
            let red = target.reduce(&map.column(j));
            for (i, &c) in codim.iter().enumerate() {
                q.set(i, j, red[c].clone());
            }
        }
        Subspace::span(field, map.cols(), q.kernel())
    }

    pub fn kernel_of(map: &Matrix<F>) -> Subspace<F> {
        Subspace::span(map.field(), map.cols(), map.kernel())
    }

    pub fn image_of(map: &Matrix<F>) -> Subspace<F> {
        Subspace::span(
            map.field(),
            map.rows(),
            (0..map.cols()).map(|j| map.column(j)),
        )
    }

    /// Image of this subspace under `map`.
    pub fn image(&self, map: &Matrix<F>) -> Subspace<F> {
        assert_eq!(map.cols(), self.ambient);
        Subspace::span(
            &self.field,
            map.rows(),
            self.rows.iter().map(|r| map.mul_vec(r)),
        )
    }
}

/// Semi-echelon basis grown one vector at a time. Each stored row has
/// zeros at the pivots of the rows before it, so a single forward pass
/// reduces a new vector.
#[derive(Clone, Debug)]
pub struct EchelonBuilder<F: Field> {
    field: F,
    ambient: usize,
    rows: Vec<Vector<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> EchelonBuilder<F> {
    pub fn new(field: &F, ambient: usize) -> Self {
        EchelonBuilder {
            field: field.clone(),
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_subspace(s: &Subspace<F>) -> Self {
        EchelonBuilder {
            field: s.field.clone(),
            ambient: s.ambient,
            rows: s.rows.clone(),
            pivots: s.pivots.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &[F::Elem]) -> Vector<F> {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !self.field.is_zero(&out[p]) {
                let c = self.field.neg(&out[p]);
                axpy(&self.field, &mut out, &c, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        is_zero_vec(&self.field, &self.reduce(v))
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|a| !self.field.is_zero(a)) else {
            return false;
        };
        let inv = self.field.inv(&r[p]).expect("nonzero pivot");
        r = scale_vec(&self.field, &inv, &r);
        self.rows.push(r);
        self.pivots.push(p);
        true
    }

    pub fn finish(self) -> Subspace<F> {
        Subspace::span(&self.field, self.ambient, self.rows)
    }
}
