//! Full-rank `n × (n+1)` pencils `A + x·B` and their reduction to the
//! single Kronecker block `L_n = C_n + x·D_n`.

use crate::error::{Error, Result};
use crate::factor::roots_in_field;
use crate::field::Field;
use crate::matrix::Matrix;
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pencil<F: Field> {
    a: Matrix<F>,
    b: Matrix<F>,
}

/// `a = p_left·C_n·q_right⁻¹` and `b = p_left·D_n·q_right⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PencilReduction<F: Field> {
    pub p_left: Matrix<F>,
    pub q_right: Matrix<F>,
}

/// Why a pencil fails the full-rank property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Defect<F: Field> {
    /// All maximal minors of `A + x·B` vanish at `x = λ`.
    CommonRoot(F::Elem),
    /// The maximal minors share a factor with no root in the field (or all
    /// vanish identically, in which case the factor is zero).
    CommonFactor(Poly<F>),
    /// `rank B < n`: a block at infinity.
    Infinity { rank_b: usize },
    /// A polynomial kernel vector of degree `< n`: an `L_degree` block next
    /// to a part of size `regular_size`.
    ShortMinimalIndex { degree: usize, regular_size: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PencilDiagnostics<F: Field> {
    /// Monic gcd of the `n × n` minors of `A + x·B` (zero if they all vanish).
    pub minor_gcd: Poly<F>,
    pub rank_b: usize,
    pub minimal_index: usize,
    pub defects: Vec<Defect<F>>,
}

impl<F: Field> Pencil<F> {
    pub fn new(a: Matrix<F>, b: Matrix<F>) -> Result<Self> {
        a.ensure_field(&b)?;
        let (n, m) = a.shape();
        if b.shape() != (n, m) || m != n + 1 || n == 0 {
            return Err(Error::Shape(format!(
                "a pencil needs two n x (n+1) matrices, got {}x{} and {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        Ok(Pencil { a, b })
    }

    /// The canonical pair `(C_n, D_n)`.
    pub fn canonical(field: &F, n: usize) -> Self {
        Pencil {
            a: Matrix::c_block(field, n),
            b: Matrix::d_block(field, n),
        }
    }

    pub fn a(&self) -> &Matrix<F> {
        &self.a
    }

    pub fn b(&self) -> &Matrix<F> {
        &self.b
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn field(&self) -> &F {
        self.a.field()
    }

    /// `(P·A·Q, P·B·Q)`.
    pub fn transform(&self, p: &Matrix<F>, q: &Matrix<F>) -> Self {
        Pencil {
            a: &(p * &self.a) * q,
            b: &(p * &self.b) * q,
        }
    }

    /// `(B, A)`, i.e. the pencil seen through `x ↦ 1/x`.
    pub fn swapped(&self) -> Self {
        Pencil {
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }

    /// Monic gcd of the maximal minors of `A + x·B`.
    pub fn minor_gcd(&self) -> Poly<F> {
        let f = self.field();
        let n = self.n();
        let mut g = Poly::zero(f);
        for skip in 0..=n {
            let cols: Vec<usize> = (0..=n).filter(|&c| c != skip).collect();
            let entries: Vec<Vec<Poly<F>>> = (0..n)
                .map(|i| {
                    cols.iter()
                        .map(|&j| Poly::new(f, vec![self.a.get(i, j).clone(), self.b.get(i, j).clone()]))
                        .collect()
                })
                .collect();
            g = g.gcd(&poly_det(f, entries));
            if g.is_unit() {
                break;
            }
        }
        g
    }

    /// Least-degree nonzero polynomial vector `v(x) = Σ v_k x^k` with
    /// `(A + x·B)·v(x) = 0`, as its coefficient columns `v_0..v_d`.
    pub fn minimal_kernel_vector(&self) -> Vec<Matrix<F>> {
        let f = self.field();
        let n = self.n();
        let m = n + 1;
        for d in 0..=n {
            // rows: coefficient of x^k, k = 0..=d+1; columns: v_0..v_d
            let mut sys = Matrix::zeros(f, (d + 2) * n, (d + 1) * m);
            for k in 0..=d {
                sys.set_block(k * n, k * m, &self.a);
                sys.set_block((k + 1) * n, k * m, &self.b);
            }
            if let Some(v) = sys.kernel_basis().into_iter().next() {
                return (0..=d)
                    .map(|k| Matrix::column(f, v.entries()[k * m..(k + 1) * m].to_vec()))
                    .collect();
            }
        }
        unreachable!("an n x (n+1) pencil has a kernel vector of degree at most n")
    }
}

/// Determinant of a square matrix over `K[x]` by fraction-free (Bareiss)
/// elimination.
fn poly_det<F: Field>(f: &F, mut m: Vec<Vec<Poly<F>>>) -> Poly<F> {
    let n = m.len();
    if n == 0 {
        return Poly::one(f);
    }
    let mut prev = Poly::one(f);
    let mut negate = false;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Poly::zero(f);
            };
            m.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

/// Every nontrivial combination `μA + νB` over the algebraic closure has
/// rank `n`: the minors have a constant gcd and `rank B = n`.
pub fn is_fullrank_pencil<F: Field>(pc: &Pencil<F>) -> bool {
    pc.b.rank() == pc.n() && pc.minor_gcd().is_unit()
}

/// Equivalence bringing a full-rank pencil to `(C_n, D_n)`.
///
/// With `v(x) = v_0 + ... + v_n x^n` the minimal kernel vector, the
/// columns of `Q` are `q_j = (−1)^{n−j} v_{n−j}` (0-based `j`), scaled so
/// that the first nonzero entry of `q_0` is 1, and `p_j = A·q_j`. Then
/// `A·q_j = p_j` and `B·q_{j+1} = p_j`, which are the two identities.
pub fn kronecker_reduce<F: Field>(pc: &Pencil<F>) -> Result<PencilReduction<F>> {
    if !is_fullrank_pencil(pc) {
        return Err(Error::NotFullRankPencil);
    }
    let f = pc.field();
    let n = pc.n();
    let v = pc.minimal_kernel_vector();
    if v.len() != n + 1 {
        return Err(Error::NotFullRankPencil);
    }
    let mut cols: Vec<Matrix<F>> = (0..=n)
        .map(|j| {
            let c = &v[n - j];
            if (n - j) % 2 == 1 {
                -c
            } else {
                c.clone()
            }
        })
        .collect();
    let lead = cols[0]
        .entries()
        .iter()
        .find(|x| !f.is_zero(x))
        .cloned()
        .ok_or(Error::NotFullRankPencil)?;
    let scale = f.inv(&lead).unwrap();
    for c in cols.iter_mut() {
        *c = c.scale(&scale);
    }
    let q = Matrix::hstack(&cols.iter().collect::<Vec<_>>());
    let p_cols: Vec<Matrix<F>> = cols[..n].iter().map(|c| pc.a() * c).collect();
    let p = Matrix::hstack(&p_cols.iter().collect::<Vec<_>>());
    let red = PencilReduction { p_left: p, q_right: q };
    if !red.reconstructs(pc) {
        return Err(Error::NotFullRankPencil);
    }
    Ok(red)
}

impl<F: Field> PencilReduction<F> {
    /// Checks `A·Q = P·C_n` and `B·Q = P·D_n` with `P`, `Q` invertible.
    pub fn reconstructs(&self, pc: &Pencil<F>) -> bool {
        let f = pc.field();
        let n = pc.n();
        self.p_left.shape() == (n, n)
            && self.q_right.shape() == (n + 1, n + 1)
            && self.p_left.rank() == n
            && self.q_right.rank() == n + 1
            && (pc.a() * &self.q_right) == (&self.p_left * &Matrix::c_block(f, n))
            && (pc.b() * &self.q_right) == (&self.p_left * &Matrix::d_block(f, n))
    }
}

/// Explains why a pencil is not full-rank.
pub fn forbidden_block_detect<F: Field>(pc: &Pencil<F>) -> Result<PencilDiagnostics<F>> {
    if is_fullrank_pencil(pc) {
        return Err(Error::Precondition("the pencil is full-rank".into()));
    }
    let n = pc.n();
    let minor_gcd = pc.minor_gcd();
    let rank_b = pc.b().rank();
    let minimal_index = pc.minimal_kernel_vector().len() - 1;
    let mut defects = Vec::new();
    if !minor_gcd.is_unit() {
        let roots = if minor_gcd.is_zero() {
            Vec::new()
        } else {
            roots_in_field(&minor_gcd)
        };
        if roots.is_empty() {
            defects.push(Defect::CommonFactor(minor_gcd.clone()));
        }
        defects.extend(roots.into_iter().map(Defect::CommonRoot));
    }
    if rank_b < n {
        defects.push(Defect::Infinity { rank_b });
    }
    if minimal_index < n {
        defects.push(Defect::ShortMinimalIndex {
            degree: minimal_index,
            regular_size: n - minimal_index,
        });
    }
    Ok(PencilDiagnostics {
        minor_gcd,
        rank_b,
        minimal_index,
        defects,
    })
}
