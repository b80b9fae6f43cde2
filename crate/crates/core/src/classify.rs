//! Canonical trivial-centralizer algebras and the conjugacy classification
//! of 4-dimensional ones in odd size.

use std::fmt;

use crate::algebra::MatrixAlgebra;
use crate::error::{Error, Result};
use crate::factor::roots_in_field;
use crate::field::Field;
use crate::matrix::Matrix;
use crate::pencil::{is_fullrank_pencil, kronecker_reduce, Pencil};
use crate::poly::Poly;
use crate::structure::SpectralSplit;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    H,
    HTranspose,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::H => "H",
            Orientation::HTranspose => "H-transpose",
        })
    }
}

impl std::str::FromStr for Orientation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "H" => Ok(Orientation::H),
            "H-transpose" => Ok(Orientation::HTranspose),
            other => Err(Error::Parse {
                line: 0,
                message: format!("unknown orientation `{other}`"),
            }),
        }
    }
}

/// `conjugator · H · conjugator⁻¹` (or with `Hᵗ`) is the classified algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationResult<F: Field> {
    pub orientation: Orientation,
    pub conjugator: Matrix<F>,
    /// Half-size: the ambient dimension is `2p + 1`.
    pub p: usize,
}

impl<F: Field> ClassificationResult<F> {
    /// The canonical algebra `H_{2p+1}` or its transpose.
    pub fn model(&self) -> MatrixAlgebra<F> {
        let h = gen_h(self.conjugator.field(), self.p).expect("p >= 1");
        match self.orientation {
            Orientation::H => h,
            Orientation::HTranspose => h.transpose(),
        }
    }

    /// Exact check of `conjugator · model · conjugator⁻¹ = a`: both have
    /// dimension 4, so containment of the conjugated basis suffices.
    pub fn verify(&self, a: &MatrixAlgebra<F>) -> bool {
        let model = self.model();
        if self.conjugator.shape() != (a.n(), a.n()) || model.dim() != a.dim() {
            return false;
        }
        let Some(inv) = self.conjugator.inverse() else {
            return false;
        };
        model
            .basis()
            .iter()
            .all(|m| a.contains(&m.conjugate_by(&self.conjugator, &inv)))
    }
}

fn block_matrix<F: Field>(f: &F, n: usize, r0: usize, c0: usize, block: &Matrix<F>) -> Matrix<F> {
    let mut m = Matrix::zeros(f, n, n);
    m.set_block(r0, c0, block);
    m
}

fn diag_idempotent<F: Field>(f: &F, n: usize, from: usize, to: usize) -> Matrix<F> {
    block_matrix(f, n, from, from, &Matrix::identity(f, to - from))
}

/// Upper triangular matrices of size `n`.
pub fn gen_t<F: Field>(field: &F, n: usize) -> Result<MatrixAlgebra<F>> {
    if n == 0 {
        return Err(Error::Precondition("T_n needs n >= 1".into()));
    }
    let basis: Vec<Matrix<F>> = (0..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .map(|(i, j)| Matrix::unit(field, n, n, i, j))
        .collect();
    MatrixAlgebra::from_span(field, n, &basis)
}

/// The 5-dimensional algebra `F_{2p}` of `M_{2p}(K)`, `p >= 2`.
pub fn gen_f<F: Field>(field: &F, p: usize) -> Result<MatrixAlgebra<F>> {
    if p < 2 {
        return Err(Error::Precondition("F_{2p} needs p >= 2".into()));
    }
    let n = 2 * p;
    let j = Matrix::jordan(field, p);
    let span = [
        diag_idempotent(field, n, 0, p),
        diag_idempotent(field, n, p, n),
        block_matrix(field, n, 0, p, &Matrix::identity(field, p)),
        block_matrix(field, n, 0, p, &j),
        block_matrix(field, n, 0, p, &j.transpose()),
    ];
    MatrixAlgebra::from_span(field, n, &span)
}

/// The 4-dimensional algebra `H_{2p+1}` of `M_{2p+1}(K)`, `p >= 1`.
pub fn gen_h<F: Field>(field: &F, p: usize) -> Result<MatrixAlgebra<F>> {
    if p < 1 {
        return Err(Error::Precondition("H_{2p+1} needs p >= 1".into()));
    }
    let n = 2 * p + 1;
    let span = [
        diag_idempotent(field, n, 0, p),
        diag_idempotent(field, n, p, n),
        block_matrix(field, n, 0, p, &Matrix::c_block(field, p)),
        block_matrix(field, n, 0, p, &Matrix::d_block(field, p)),
    ];
    MatrixAlgebra::from_span(field, n, &span)
}

fn check_dim4_odd<F: Field>(a: &MatrixAlgebra<F>) -> Result<usize> {
    let n = a.n();
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "ambient size {n} is not odd and at least 3"
        )));
    }
    if a.dim() != 4 {
        return Err(Error::Precondition(format!(
            "algebra has dimension {}, expected 4",
            a.dim()
        )));
    }
    if !a.is_trivial_centralizer() {
        return Err(Error::Precondition("algebra has a nontrivial centralizer".into()));
    }
    Ok((n - 1) / 2)
}

/// Rank-`p` idempotent of a 4-dimensional trivial-centralizer subalgebra
/// of `M_{2p+1}(K)`, read off the first basis element whose minimal
/// polynomial is `(x − λ)(x − μ)` with `λ ≠ μ` in `K`.
pub fn find_half_rank_idempotent<F: Field>(a: &MatrixAlgebra<F>) -> Result<SpectralSplit<F>> {
    check_dim4_odd(a)?;
    half_rank_idempotent(a)
}

fn half_rank_idempotent<F: Field>(a: &MatrixAlgebra<F>) -> Result<SpectralSplit<F>> {
    let p = a.n() / 2;
    let f = a.field();
    let n = a.n();
    for m in a.basis() {
        let minpoly = m.minimal_polynomial();
        if minpoly.degree() != Some(2) {
            continue;
        }
        let roots = roots_in_field(&minpoly);
        let [r0, r1] = roots.as_slice() else {
            continue;
        };
        // the eigenvalue of multiplicity p has an eigenspace of dimension p
        let (lambda, mu) = if m.add_scalar(&f.neg(r0)).rank() == p + 1 {
            (r0.clone(), r1.clone())
        } else if m.add_scalar(&f.neg(r1)).rank() == p + 1 {
            (r1.clone(), r0.clone())
        } else {
            continue;
        };
        let scale = f.inv(&f.sub(&lambda, &mu)).expect("distinct roots");
        let idempotent = m.add_scalar(&f.neg(&mu)).scale(&scale);
        let witness_poly = Poly::new(f, vec![f.neg(&f.mul(&mu, &scale)), scale]);
        if (&idempotent * &idempotent) != idempotent || idempotent.rank() != p {
            continue;
        }
        debug_assert_eq!(idempotent.rows(), n);
        return Ok(SpectralSplit {
            source: m,
            idempotent,
            rank: p,
            witness_poly,
            eigen_data: Some((lambda, mu)),
        });
    }
    Err(Error::NotConforming(
        "no basis element splits with a rank-p eigenspace".into(),
    ))
}

/// Decides whether `a` is conjugate to `H_{2p+1}` or to its transpose and
/// returns an explicit conjugator.
pub fn classify_dim4<F: Field>(a: &MatrixAlgebra<F>) -> Result<ClassificationResult<F>> {
    check_dim4_odd(a)?;
    let split = half_rank_idempotent(a)?;
    let dec = a.peirce_split(&split.idempotent)?;
    let out = match dec.nu() {
        [1, 2, 0, 1] => classify_upper(&dec)?,
        [1, 0, 2, 1] => {
            // eᵗ splits aᵗ with the two off-diagonal spaces exchanged
            let at = a.transpose();
            let dec_t = at.peirce_split(&split.idempotent.transpose())?;
            if dec_t.nu() != [1, 2, 0, 1] {
                return Err(Error::NotConforming(format!(
                    "transposed Peirce signature {:?}",
                    dec_t.nu()
                )));
            }
            let r = classify_upper(&dec_t)?;
            ClassificationResult {
                orientation: Orientation::HTranspose,
                conjugator: r.conjugator.try_inverse()?.transpose(),
                p: r.p,
            }
        }
        nu => return Err(Error::NotConforming(format!("Peirce signature {nu:?}"))),
    };
    if !out.verify(a) {
        return Err(Error::Internal("reconstruction R·H·R⁻¹ = A failed".into()));
    }
    Ok(out)
}

fn classify_upper<F: Field>(dec: &crate::algebra::PeirceDecomposition<F>) -> Result<ClassificationResult<F>> {
    let pencil = Pencil::new(dec.a12[0].clone(), dec.a12[1].clone())?;
    if !is_fullrank_pencil(&pencil) {
        return Err(Error::NotConforming(
            "off-diagonal block is not a full-rank pencil".into(),
        ));
    }
    let red = kronecker_reduce(&pencil)?;
    let blocks = Matrix::block_diag(&[&red.p_left, &red.q_right]);
    Ok(ClassificationResult {
        orientation: Orientation::H,
        conjugator: &dec.conjugator_inv * &blocks,
        p: dec.p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn canonical_dimensions() {
        let q = Rationals;
        let t2 = gen_t(&q, 2).unwrap();
        assert_eq!(t2.dim(), 3);
        assert!(t2.is_trivial_centralizer());
        assert_eq!(gen_t(&q, 4).unwrap().dim(), 10);
        let f4 = gen_f(&q, 2).unwrap();
        assert_eq!(f4.dim(), 5);
        assert!(f4.is_trivial_centralizer());
        let h3 = gen_h(&q, 1).unwrap();
        assert_eq!(h3.dim(), 4);
        assert!(h3.is_trivial_centralizer());
        assert!(gen_f(&q, 1).is_err());
        assert!(gen_h(&q, 0).is_err());
        assert!(gen_t(&q, 0).is_err());
    }

    #[test]
    fn half_rank_idempotent_of_h3() {
        let q = Rationals;
        let s = find_half_rank_idempotent(&gen_h(&q, 1).unwrap()).unwrap();
        assert_eq!(s.rank, 1);
        assert_eq!(s.idempotent, Matrix::from_i64(&q, 3, 3, &[1, 0, 0, 0, 0, 0, 0, 0, 0]));
        let f7 = PrimeField::new(7).unwrap();
        assert!(matches!(
            find_half_rank_idempotent(&gen_f(&f7, 2).unwrap()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn canonical_orientations() {
        let f7 = PrimeField::new(7).unwrap();
        for p in 1..=3 {
            let h = gen_h(&f7, p).unwrap();
            let r = classify_dim4(&h).unwrap();
            assert_eq!(r.orientation, Orientation::H);
            assert!(r.verify(&h));
            let ht = h.transpose();
            let r = classify_dim4(&ht).unwrap();
            assert_eq!(r.orientation, Orientation::HTranspose);
            assert!(r.verify(&ht));
        }
    }

    #[test]
    fn orientation_round_trips_through_text() {
        for o in [Orientation::H, Orientation::HTranspose] {
            assert_eq!(o.to_string().parse::<Orientation>().unwrap(), o);
        }
    }
}
