//! Unital subalgebras of `M_n(K)` stored as canonical subspaces of `K^{n²}`.

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::matrix::{Matrix, Subspace};

/// A unital subalgebra of `M_n(K)`. The basis is the reduced row-echelon
/// basis of the vectorized span, so equality of values is equality of
/// algebras.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixAlgebra<F: Field> {
    n: usize,
    space: Subspace<F>,
}

/// Peirce decomposition of an algebra with respect to an idempotent `e`.
///
/// Coordinates: `conjugator · e · conjugator⁻¹ = diag(I_p, 0)`, and the
/// blocks are those of the conjugated algebra.
#[derive(Debug, Clone)]
pub struct PeirceDecomposition<F: Field> {
    pub p: usize,
    pub q: usize,
    pub idempotent: Matrix<F>,
    pub conjugator: Matrix<F>,
    pub conjugator_inv: Matrix<F>,
    /// The algebra in Peirce coordinates.
    pub conjugated: MatrixAlgebra<F>,
    pub a11: Vec<Matrix<F>>,
    pub a12: Vec<Matrix<F>>,
    pub a21: Vec<Matrix<F>>,
    pub a22: Vec<Matrix<F>>,
}

impl<F: Field> PeirceDecomposition<F> {
    pub fn nu(&self) -> [usize; 4] {
        [self.a11.len(), self.a12.len(), self.a21.len(), self.a22.len()]
    }
}

fn check_square_family<F: Field>(field: &F, n: usize, mats: &[Matrix<F>]) -> Result<()> {
    for m in mats {
        field.ensure_same(m.field())?;
        if m.shape() != (n, n) {
            return Err(Error::Shape(format!(
                "expected {n}x{n} matrices, found {}x{}",
                m.rows(),
                m.cols()
            )));
        }
    }
    Ok(())
}

/// Linear system in the entries of `X` expressing `XM = MX` for each `M`.
fn commutation_system<F: Field>(field: &F, n: usize, v: &[Matrix<F>]) -> Matrix<F> {
    let nn = n * n;
    let mut system = Matrix::zeros(field, v.len() * nn, nn);
    for (s, m) in v.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                let row = s * nn + i * n + j;
                for k in 0..n {
                    // (XM)_{ij} ∋ x_{ik} m_{kj};  (MX)_{ij} ∋ m_{ik} x_{kj}
                    let a = system.get(row, i * n + k).clone();
                    system.set(row, i * n + k, field.add(&a, m.get(k, j)));
                    let b = system.get(row, k * n + j).clone();
                    system.set(row, k * n + j, field.sub(&b, m.get(i, k)));
                }
            }
        }
    }
    system
}

const RESIDUE_PRIME: u64 = 2_147_483_647;

/// One-sided test: reducing the commutation system modulo a prime can only
/// lower its rank, and the identity always lies in its kernel, so rank
/// `n² − 1` modulo the prime already forces a scalar centralizer.
fn modular_trivial_centralizer<F: Field>(field: &F, n: usize, v: &[Matrix<F>]) -> bool {
    let fp = PrimeField::new(RESIDUE_PRIME).expect("prime below 2^32");
    let mut reduced = Vec::with_capacity(v.len());
    for m in v {
        let Some(r) = m
            .entries()
            .iter()
            .map(|a| field.residue(a, RESIDUE_PRIME))
            .collect::<Option<Vec<u64>>>()
        else {
            return false;
        };
        reduced.push(Matrix::from_fn(&fp, n, n, |i, j| r[i * n + j]));
    }
    commutation_system(&fp, n, &reduced).rank() + 1 == n * n
}

impl<F: Field> MatrixAlgebra<F> {
    /// Builds an algebra from a spanning set that is already known to be a
    /// unital subalgebra.
    fn from_span_unchecked(field: &F, n: usize, mats: &[Matrix<F>]) -> Self {
        let space = Subspace::spanned_by(field, n * n, mats.iter().map(|m| m.entries()));
        MatrixAlgebra { n, space }
    }

    /// Builds an algebra from a spanning set, checking that the span
    /// contains `I_n` and is closed under products.
    pub fn from_span(field: &F, n: usize, mats: &[Matrix<F>]) -> Result<Self> {
        check_square_family(field, n, mats)?;
        let a = Self::from_span_unchecked(field, n, mats);
        if !a.contains(&Matrix::identity(field, n)) {
            return Err(Error::NotConforming("span does not contain the identity".into()));
        }
        if !a.is_closed() {
            return Err(Error::NotConforming("span is not closed under products".into()));
        }
        Ok(a)
    }

    /// The trivial algebra `K·I_n`.
    pub fn trivial(field: &F, n: usize) -> Self {
        Self::from_span_unchecked(field, n, &[Matrix::identity(field, n)])
    }

    /// Smallest unital subalgebra containing the generators.
    pub fn closure(field: &F, n: usize, generators: &[Matrix<F>]) -> Result<Self> {
        Ok(Self::closure_capped(field, n, generators, n * n)?.expect("dimension never exceeds n²"))
    }

    /// Like [`closure`](Self::closure), but gives up with `None` as soon as
    /// the dimension exceeds `cap`.
    pub fn closure_capped(field: &F, n: usize, generators: &[Matrix<F>], cap: usize) -> Result<Option<Self>> {
        check_square_family(field, n, generators)?;
        let mut space = Subspace::zero(field, n * n);
        let mut elems: Vec<Matrix<F>> = Vec::new();
        let mut queue: Vec<usize> = Vec::new();
        for g in std::iter::once(Matrix::identity(field, n)).chain(generators.iter().cloned()) {
            if space.insert(g.entries()) {
                queue.push(elems.len());
                elems.push(g);
            }
        }
        while let Some(idx) = queue.pop() {
            if space.dim() > cap {
                return Ok(None);
            }
            let x = elems[idx].clone();
            let mut k = 0;
            while k < elems.len() {
                for prod in [&x * &elems[k], &elems[k] * &x] {
                    if space.insert(prod.entries()) {
                        queue.push(elems.len());
                        elems.push(prod);
                    }
                }
                k += 1;
            }
        }
        Ok((space.dim() <= cap).then_some(MatrixAlgebra { n, space }))
    }

    /// `C(V) = {X : XM = MX for all M ∈ V}`.
    pub fn centralizer_of(field: &F, n: usize, v: &[Matrix<F>]) -> Result<Self> {
        check_square_family(field, n, v)?;
        let nn = n * n;
        let system = commutation_system(field, n, v);
        let space = Subspace::spanned_by(
            field,
            nn,
            system.kernel_basis().iter().map(|v| v.entries()).collect::<Vec<_>>(),
        );
        let c = MatrixAlgebra { n, space };
        debug_assert!(c.contains(&Matrix::identity(field, n)));
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn field(&self) -> &F {
        self.space.field()
    }

    pub fn subspace(&self) -> &Subspace<F> {
        &self.space
    }

    /// Canonical basis matrices.
    pub fn basis(&self) -> Vec<Matrix<F>> {
        self.space
            .basis()
            .iter()
            .map(|row| Matrix::from_vec(self.field(), self.n, self.n, row.clone()).unwrap())
            .collect()
    }

    pub fn contains(&self, m: &Matrix<F>) -> bool {
        m.shape() == (self.n, self.n) && self.space.contains(m.entries())
    }

    /// Coordinates of `m` in the canonical basis.
    pub fn coordinates(&self, m: &Matrix<F>) -> Option<Vec<F::Elem>> {
        self.space.coordinates(m.entries())
    }

    /// Linear combination of the canonical basis.
    pub fn combination(&self, coeffs: &[F::Elem]) -> Matrix<F> {
        let f = self.field();
        let mut out = Matrix::zeros(f, self.n, self.n);
        for (c, b) in coeffs.iter().zip(self.basis()) {
            if !f.is_zero(c) {
                out = &out + &b.scale(c);
            }
        }
        out
    }

    pub fn is_closed(&self) -> bool {
        let basis = self.basis();
        basis.iter().all(|x| basis.iter().all(|y| self.contains(&(x * y))))
    }

    pub fn centralizer(&self) -> MatrixAlgebra<F> {
        Self::centralizer_of(self.field(), self.n, &self.basis()).expect("basis has consistent shape")
    }

    pub fn is_trivial_centralizer(&self) -> bool {
        modular_trivial_centralizer(self.field(), self.n, &self.basis()) || self.centralizer().dim() == 1
    }

    /// `{p·M·p⁻¹ : M ∈ self}`.
    pub fn conjugate(&self, p: &Matrix<F>) -> Result<Self> {
        self.field().ensure_same(p.field())?;
        if p.shape() != (self.n, self.n) {
            return Err(Error::Shape(format!("conjugator must be {0}x{0}", self.n)));
        }
        let pi = p.try_inverse()?;
        Ok(self.conjugate_with_inverse(p, &pi))
    }

    pub fn conjugate_with_inverse(&self, p: &Matrix<F>, p_inv: &Matrix<F>) -> Self {
        let mats: Vec<Matrix<F>> = self.basis().iter().map(|m| m.conjugate_by(p, p_inv)).collect();
        Self::from_span_unchecked(self.field(), self.n, &mats)
    }

    /// `{Mᵗ : M ∈ self}`.
    pub fn transpose(&self) -> Self {
        let mats: Vec<Matrix<F>> = self.basis().iter().map(Matrix::transpose).collect();
        Self::from_span_unchecked(self.field(), self.n, &mats)
    }

    /// Splits the algebra along a nontrivial idempotent `e ∈ self`.
    pub fn peirce_split(&self, e: &Matrix<F>) -> Result<PeirceDecomposition<F>> {
        let f = self.field().clone();
        let n = self.n;
        f.ensure_same(e.field())?;
        if e.shape() != (n, n) {
            return Err(Error::Shape(format!("idempotent must be {n}x{n}")));
        }
        if &(e * e) != e {
            return Err(Error::NotIdempotent);
        }
        if e.is_zero() || e.is_identity() {
            return Err(Error::TrivialIdempotent);
        }
        if !self.contains(e) {
            return Err(Error::NotInAlgebra);
        }
        let pivots = e.rref().pivots;
        let image: Vec<Matrix<F>> = pivots.iter().map(|&c| Matrix::column(&f, e.col(c))).collect();
        let kernel = e.kernel_basis();
        let p = image.len();
        let q = n - p;
        let cols: Vec<&Matrix<F>> = image.iter().chain(kernel.iter()).collect();
        let t = Matrix::hstack(&cols);
        let s = t.try_inverse()?;
        let conjugated = self.conjugate_with_inverse(&s, &t);

        let block = |r0: usize, rows: usize, c0: usize, cols: usize| -> Vec<Matrix<F>> {
            let mut support = Subspace::zero(&f, n * n);
            for i in r0..r0 + rows {
                for j in c0..c0 + cols {
                    support.insert(Matrix::unit(&f, n, n, i, j).entries());
                }
            }
            conjugated
                .space
                .intersection(&support)
                .basis()
                .iter()
                .map(|v| {
                    Matrix::from_vec(&f, n, n, v.clone())
                        .unwrap()
                        .submatrix(r0, c0, rows, cols)
                })
                .collect()
        };
        let dec = PeirceDecomposition {
            p,
            q,
            idempotent: e.clone(),
            a11: block(0, p, 0, p),
            a12: block(0, p, p, q),
            a21: block(p, q, 0, p),
            a22: block(p, q, p, q),
            conjugator: s,
            conjugator_inv: t,
            conjugated,
        };
        let nu = dec.nu();
        if nu.iter().sum::<usize>() != self.dim() {
            return Err(Error::Internal(format!(
                "Peirce dimensions {nu:?} do not sum to {}",
                self.dim()
            )));
        }
        if nu[1] == 0 && nu[2] == 0 && !self.basis().iter().all(|m| m.commutes_with(e)) {
            return Err(Error::Internal(
                "block-diagonal algebra does not commute with its idempotent".into(),
            ));
        }
        Ok(dec)
    }
}

impl<F: Field> std::fmt::Debug for MatrixAlgebra<F> {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(out, "MatrixAlgebra(n = {}, dim = {})", self.n, self.dim())?;
        for b in self.basis() {
            writeln!(out, "{b}")?;
        }
        Ok(())
    }
}
