//! Concrete scalar extension `K ⊂ L` for finite fields, with the trace
//! map used to bring commuting matrices back down to `K`.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::{ExtElem, ExtensionField, Field, PrimeField};
use crate::matrix::Matrix;
use crate::poly::Poly;

/// `L = F_{p^{k·d}}` together with an embedding of `K = F_{p^k}`.
#[derive(Debug, Clone)]
pub struct ScalarExtension<F: Field> {
    base: F,
    ext: ExtensionField,
    degree: usize,
    /// Image in `L` of the class of `x` in `K` (0 when `K` is prime).
    alpha_powers: Vec<ExtElem>,
    /// `F_p`-coordinates of `alpha_powers`, as columns.
    descent: Matrix<PrimeField>,
    base_order: BigUint,
}

impl<F: Field> ScalarExtension<F> {
    /// Builds the degree-`d` extension of the finite field `base`.
    pub fn new(base: &F, degree: usize) -> Result<Self> {
        let (Some(modulus), Some(base_order)) = (base.prime_modulus(), base.order()) else {
            return Err(Error::ExtensionRequired(format!(
                "no concrete extension of {} is available",
                base.spec()
            )));
        };
        if degree < 2 {
            return Err(Error::Precondition("extension degree must be at least 2".into()));
        }
        let p = base.characteristic();
        let k = modulus.len() - 1;
        let fp = PrimeField::new(p)?;
        let ext = ExtensionField::with_degree(p, k * degree)?;
        let alpha = if k == 1 {
            ext.constant((p - modulus[0] % p) % p)
        } else {
            let lifted = Poly::new(&ext, modulus.iter().map(|c| ext.constant(*c)).collect());
            let factors = ExtensionField::factor_poly(&lifted)?;
            let (root_factor, _) = factors
                .iter()
                .find(|(g, _)| g.degree() == Some(1))
                .ok_or_else(|| Error::Internal("base modulus has no root in the extension".into()))?;
            ext.neg(&root_factor.coeff(0))
        };
        let mut alpha_powers = vec![ext.one()];
        for i in 1..k {
            let next = ext.mul(&alpha_powers[i - 1], &alpha);
            alpha_powers.push(next);
        }
        let descent = Matrix::from_fn(&fp, k * degree, k, |i, j| alpha_powers[j][i]);
        Ok(ScalarExtension {
            base: base.clone(),
            ext,
            degree,
            alpha_powers,
            descent,
            base_order,
        })
    }

    pub fn field(&self) -> &ExtensionField {
        &self.ext
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    /// `[L : K]`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn embed(&self, z: &F::Elem) -> ExtElem {
        let coords = self.base.prime_coords(z).expect("finite base field");
        let e = &self.ext;
        coords
            .iter()
            .zip(&self.alpha_powers)
            .fold(e.zero(), |acc, (c, a)| e.add(&acc, &e.mul(&e.constant(*c), a)))
    }

    pub fn embed_matrix(&self, m: &Matrix<F>) -> Matrix<ExtensionField> {
        m.map(&self.ext, |z| self.embed(z))
    }

    /// Preimage of an element of the embedded copy of `K`.
    pub fn descend(&self, z: &ExtElem) -> Option<F::Elem> {
        let fp = *self.descent.field();
        let rhs = Matrix::column(&fp, z.clone());
        let c = self.descent.solve_right(&rhs)?;
        self.base.from_prime_coords(&c.col(0))
    }

    /// `Tr_{L/K}(z) = Σ_{i<d} z^{|K|^i}`.
    pub fn trace(&self, z: &ExtElem) -> ExtElem {
        let e = &self.ext;
        let mut acc = e.zero();
        let mut t = z.clone();
        for _ in 0..self.degree {
            acc = e.add(&acc, &t);
            t = e.pow(&t, &self.base_order);
        }
        acc
    }

    /// Entrywise `Tr_{L/K}(c · w)` mapped back to `K`.
    pub fn trace_matrix(&self, w: &Matrix<ExtensionField>, c: &ExtElem) -> Option<Matrix<F>> {
        let e = &self.ext;
        let entries: Option<Vec<F::Elem>> = w
            .entries()
            .iter()
            .map(|z| self.descend(&self.trace(&e.mul(c, z))))
            .collect();
        Matrix::from_vec(&self.base, w.rows(), w.cols(), entries?).ok()
    }

    /// A `K`-basis of `L`: powers of the generator of `L` over `F_p`.
    pub fn k_basis(&self) -> Vec<ExtElem> {
        let e = &self.ext;
        let g = e.generator();
        let mut out = vec![e.one()];
        for i in 1..self.degree {
            out.push(e.mul(&out[i - 1], &g));
        }
        out
    }
}
