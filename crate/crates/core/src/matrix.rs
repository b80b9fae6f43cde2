//! Dense exact matrices and subspaces.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

/// Row-major dense matrix over a field context.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

/// Output of [`Matrix::rref`]: `transform · m = reduced`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref<F: Field> {
    pub reduced: Matrix<F>,
    /// Pivot columns, 0-based and increasing.
    pub pivots: Vec<usize>,
    pub transform: Matrix<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        Self::scalar(field, n, field.one())
    }

    pub fn scalar(field: &F, n: usize, c: F::Elem) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn from_fn(field: &F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Builds from a row-major entry list.
    pub fn from_vec(field: &F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries cannot fill a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(field: &F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::from_vec(field, r, c, rows.into_iter().flatten().collect())
    }

    /// Integer entries, row-major. Panics on a length mismatch.
    pub fn from_i64(field: &F, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count");
        Self::from_fn(field, rows, cols, |i, j| field.from_i64(entries[i * cols + j]))
    }

    /// Column vector.
    pub fn column(field: &F, entries: Vec<F::Elem>) -> Self {
        let n = entries.len();
        Matrix {
            field: field.clone(),
            rows: n,
            cols: 1,
            data: entries,
        }
    }

    /// `E_{i,j}` of the given shape, 0-based indices.
    pub fn unit(field: &F, rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        m.data[i * cols + j] = field.one();
        m
    }

    /// Nilpotent Jordan block `J_n`: ones on the superdiagonal.
    pub fn jordan(field: &F, n: usize) -> Self {
        Self::from_fn(field, n, n, |i, j| if j == i + 1 { field.one() } else { field.zero() })
    }

    /// `C_p = [I_p 0]` in `M_{p,p+1}`.
    pub fn c_block(field: &F, p: usize) -> Self {
        Self::from_fn(field, p, p + 1, |i, j| if i == j { field.one() } else { field.zero() })
    }

    /// `D_p = [0 I_p]` in `M_{p,p+1}`.
    pub fn d_block(field: &F, p: usize) -> Self {
        Self::from_fn(
            field,
            p,
            p + 1,
            |i, j| {
                if j == i + 1 {
                    field.one()
                } else {
                    field.zero()
                }
            },
        )
    }

    /// Entries drawn independently with [`Field::random_elem`].
    pub fn random<R: Rng + ?Sized>(field: &F, rows: usize, cols: usize, rng: &mut R) -> Self {
        Matrix::from_fn(field, rows, cols, |_, _| field.random_elem(rng))
    }

    /// Rejection-samples [`Matrix::random`] until the result is invertible.
    pub fn random_invertible<R: Rng + ?Sized>(field: &F, n: usize, rng: &mut R) -> Self {
        loop {
            let m = Matrix::random(field, n, n, rng);
            if m.rank() == n {
                return m;
            }
        }
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

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    /// `Some(c)` when the matrix equals `c·I`.
    pub fn as_scalar(&self) -> Option<F::Elem> {
        if !self.is_square() {
            return None;
        }
        let c = if self.rows == 0 {
            self.field.zero()
        } else {
            self.get(0, 0).clone()
        };
        for i in 0..self.rows {
            for j in 0..self.cols {
                let expect = if i == j { &c } else { &self.field.zero() };
                if self.get(i, j) != expect {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn is_scalar(&self) -> bool {
        self.as_scalar().is_some()
    }

    pub fn is_identity(&self) -> bool {
        self.as_scalar().is_some_and(|c| self.field.is_one(&c)) || (self.is_square() && self.rows == 0)
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self.field.is_zero(self.get(i, j))))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| self.field.mul(x, c)).collect(),
        }
    }

    /// Maps every entry into another field.
    pub fn map<G: Field>(&self, target: &G, f: impl Fn(&F::Elem) -> G::Elem) -> Matrix<G> {
        Matrix {
            field: target.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// `self + c·I`.
    pub fn add_scalar(&self, c: &F::Elem) -> Self {
        assert!(self.is_square());
        let mut m = self.clone();
        for i in 0..self.rows {
            let v = self.field.add(m.get(i, i), c);
            m.set(i, i, v);
        }
        m
    }

    /// `self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.commutator(other).is_zero()
    }

    pub fn trace(&self) -> F::Elem {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).fold(self.field.zero(), |acc, i| self.field.add(&acc, self.get(i, i)))
    }

    pub fn pow(&self, mut k: usize) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(&self.field, self.rows);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.rows).is_zero()
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(&self.field, rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    /// `[[a, b], [c, d]]` assembled from four blocks with compatible shapes.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        assert!(a.rows == b.rows && c.rows == d.rows && a.cols == c.cols && b.cols == d.cols);
        let mut m = Self::zeros(&a.field, a.rows + c.rows, a.cols + b.cols);
        m.set_block(0, 0, a);
        m.set_block(0, a.cols, b);
        m.set_block(a.rows, 0, c);
        m.set_block(a.rows, a.cols, d);
        m
    }

    pub fn block_diag(blocks: &[&Self]) -> Self {
        let field = &blocks[0].field;
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            m.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        m
    }

    pub fn hstack(parts: &[&Self]) -> Self {
        let field = &parts[0].field;
        let rows = parts[0].rows;
        assert!(parts.iter().all(|p| p.rows == rows));
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut m = Self::zeros(field, rows, cols);
        let mut c = 0;
        for p in parts {
            m.set_block(0, c, p);
            c += p.cols;
        }
        m
    }

    pub fn vstack(parts: &[&Self]) -> Self {
        let field = &parts[0].field;
        let cols = parts[0].cols;
        assert!(parts.iter().all(|p| p.cols == cols));
        let data = parts.iter().flat_map(|p| p.data.iter().cloned()).collect();
        Matrix {
            field: field.clone(),
            rows: parts.iter().map(|p| p.rows).sum(),
            cols,
            data,
        }
    }

    /// Row-major flattening into a column vector.
    pub fn vectorize(&self) -> Self {
        Self::column(&self.field, self.data.clone())
    }

    /// Inverse of [`Matrix::vectorize`]; accepts a row or column vector.
    pub fn devectorize(v: &Self, rows: usize, cols: usize) -> Result<Self> {
        if (v.rows != 1 && v.cols != 1) || v.data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "a {}x{} vector does not reshape to {rows}x{cols}",
                v.rows, v.cols
            )));
        }
        Self::from_vec(&v.field, rows, cols, v.data.clone())
    }

    /// Reduced row-echelon form with first-nonzero pivoting.
    pub fn rref(&self) -> Rref<F> {
        let f = &self.field;
        let mut m = self.clone();
        let mut t = Self::identity(f, self.rows);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(r, pr);
            t.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c)).unwrap();
            m.scale_row(r, &inv);
            t.scale_row(r, &inv);
            for i in 0..self.rows {
                if i != r && !f.is_zero(m.get(i, c)) {
                    let factor = m.get(i, c).clone();
                    m.axpy_row(i, r, &factor);
                    t.axpy_row(i, r, &factor);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            reduced: m,
            pivots,
            transform: t,
        }
    }

    /// Row echelon reduction without the transform, returning the reduced
    /// matrix and pivots.
    fn rref_only(&self) -> (Self, Vec<usize>) {
        let f = &self.field;
        if let Some((data, pivots)) = F::fast_rref(self.rows, self.cols, &self.data) {
            return (Matrix { data, ..self.clone() }, pivots);
        }
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c)).unwrap();
            m.scale_row(r, &inv);
            for i in 0..self.rows {
                if i != r && !f.is_zero(m.get(i, c)) {
                    let factor = m.get(i, c).clone();
                    m.axpy_row(i, r, &factor);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, c: &F::Elem) {
        for j in 0..self.cols {
            let idx = r * self.cols + j;
            self.data[idx] = self.field.mul(&self.data[idx], c);
        }
    }

    /// `row[target] -= factor · row[source]`.
    fn axpy_row(&mut self, target: usize, source: usize, factor: &F::Elem) {
        for j in 0..self.cols {
            let s = &self.data[source * self.cols + j];
            if self.field.is_zero(s) {
                continue;
            }
            let prod = self.field.mul(factor, s);
            let idx = target * self.cols + j;
            self.data[idx] = self.field.sub(&self.data[idx], &prod);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref_only().1.len()
    }

    /// Basis of the right null space as column vectors, one per free column
    /// in increasing order.
    pub fn kernel_basis(&self) -> Vec<Self> {
        let f = &self.field;
        let (red, pivots) = self.rref_only();
        let mut out = Vec::new();
        let mut pi = 0;
        for free in 0..self.cols {
            if pi < pivots.len() && pivots[pi] == free {
                pi += 1;
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(red.get(r, free));
            }
            out.push(Self::column(f, v));
        }
        out
    }

    /// A particular solution of `self · x = b` with free variables zero.
    pub fn solve_right(&self, b: &Self) -> Option<Self> {
        assert_eq!(self.rows, b.rows, "row counts must agree");
        let f = &self.field;
        let aug = Self::hstack(&[self, b]);
        let (red, pivots) = aug.rref_only();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Self::zeros(f, self.cols, b.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, red.get(r, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let (red, pivots) = Self::hstack(&[self, &Self::identity(&self.field, n)]).rref_only();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Self::from_fn(&self.field, n, n, |i, j| red.get(i, n + j).clone()))
    }

    pub fn try_inverse(&self) -> Result<Self> {
        self.inverse().ok_or(Error::Singular)
    }

    /// `p · self · p⁻¹`.
    pub fn conjugate_by(&self, p: &Self, p_inv: &Self) -> Self {
        &(p * self) * p_inv
    }

    /// Least-degree monic annihilating polynomial, found from the first
    /// linear dependence among `I, M, M², ...`.
    pub fn minimal_polynomial(&self) -> Poly<F> {
        assert!(self.is_square(), "minimal polynomial of a non-square matrix");
        let f = &self.field;
        let n = self.rows;
        let mut powers: Vec<Self> = vec![Self::identity(f, n).vectorize()];
        let mut current = Self::identity(f, n);
        loop {
            current = &current * self;
            let target = current.vectorize();
            let basis = Self::hstack(&powers.iter().collect::<Vec<_>>());
            if let Some(sol) = basis.solve_right(&target) {
                let mut coeffs: Vec<F::Elem> = sol.data.iter().map(|c| f.neg(c)).collect();
                coeffs.push(f.one());
                return Poly::new(f, coeffs);
            }
            powers.push(target);
        }
    }

    pub fn ensure_field(&self, other: &Self) -> Result<()> {
        self.field.ensure_same(&other.field)
    }
}

impl<F: Field> Add for &Matrix<F> {
    type Output = Matrix<F>;

    fn add(self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in addition");
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f.add(a, b)).collect(),
        }
    }
}

impl<F: Field> Sub for &Matrix<F> {
    type Output = Matrix<F>;

    fn sub(self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in subtraction");
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f.sub(a, b)).collect(),
        }
    }
}

impl<F: Field> Neg for &Matrix<F> {
    type Output = Matrix<F>;

    fn neg(self) -> Matrix<F> {
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| f.neg(a)).collect(),
        }
    }
}

impl<F: Field> Mul for &Matrix<F> {
    type Output = Matrix<F>;

    fn mul(self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, rhs.get(k, j)));
                }
            }
        }
        out
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    /// One line per row, entries separated by single spaces.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| self.field.format_elem(x)).collect();
            writeln!(out, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(out, "Matrix {}x{} over {}", self.rows, self.cols, self.field.spec())?;
        write!(out, "{self}")
    }
}

/// A linear subspace of `K^dim`, stored as the nonzero rows of a reduced
/// row-echelon matrix. Two subspaces are equal iff their stored rows are.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    rows: Vec<Vec<F::Elem>>,
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

    pub fn spanned_by<'a>(field: &F, ambient: usize, vectors: impl IntoIterator<Item = &'a [F::Elem]>) -> Self
    where
        F::Elem: 'a,
    {
        let mut s = Self::zero(field, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
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

    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after elimination against the basis; zero iff
    /// `v` lies in the subspace.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.ambient, "vector length");
        let f = &self.field;
        let mut out = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = out[pc].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row) {
                if !f.is_zero(r) {
                    *o = f.sub(o, &f.mul(&c, r));
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        let f = self.field.clone();
        let mut r = self.reduce(v);
        let Some(pc) = r.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&r[pc]).unwrap();
        for x in r.iter_mut() {
            *x = f.mul(x, &inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[pc].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&r) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        let pos = self.pivots.partition_point(|&p| p < pc);
        self.pivots.insert(pos, pc);
        self.rows.insert(pos, r);
        true
    }

    /// Coordinates of `v` in the stored basis, when `v` lies in the span.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc].clone()).collect())
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let f = &self.field;
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Self::zero(f, self.ambient);
        }
        // Solve Σ x_i s_i − Σ y_j o_j = 0 and map the x part back.
        let m = Matrix::from_fn(f, self.ambient, a + b, |i, j| {
            if j < a {
                self.rows[j][i].clone()
            } else {
                f.neg(&other.rows[j - a][i])
            }
        });
        let mut out = Self::zero(f, self.ambient);
        for k in m.kernel_basis() {
            let mut v = vec![f.zero(); self.ambient];
            for (j, row) in self.rows.iter().enumerate() {
                let c = k.get(j, 0);
                if f.is_zero(c) {
                    continue;
                }
                for (x, y) in v.iter_mut().zip(row) {
                    *x = f.add(x, &f.mul(c, y));
                }
            }
            out.insert(&v);
        }
        out
    }
}

impl<F: Field> fmt::Debug for Subspace<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            out,
            "Subspace(dim {} in {}, pivots {:?})",
            self.dim(),
            self.ambient,
            self.pivots
        )
    }
}
