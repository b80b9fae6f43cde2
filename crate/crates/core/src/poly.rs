//! Dense univariate polynomials over a [`Field`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

/// Coefficients are stored constant term first with no trailing zeros, so
/// the zero polynomial has an empty coefficient list.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

/// Result of the extended Euclidean algorithm: `u·f + v·g = gcd`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bezout<F: Field> {
    pub gcd: Poly<F>,
    pub u: Poly<F>,
    pub v: Poly<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(field: &F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_i64(field: &F, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|c| field.from_i64(*c)).collect())
    }

    pub fn zero(field: &F) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &F) -> Self {
        Self::constant(field, field.one())
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// The monomial `c·x^k`.
    pub fn monomial(field: &F, c: F::Elem, k: usize) -> Self {
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        Self::new(field, coeffs)
    }

    pub fn x(field: &F) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    /// `x - r`.
    pub fn linear(field: &F, r: &F::Elem) -> Self {
        Self::new(field, vec![field.neg(r), field.one()])
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True for nonzero constants.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| self.field.is_one(c))
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|a| self.field.mul(a, c)).collect())
    }

    /// Euclidean division. Panics when `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let f = &self.field;
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc_inv = f.inv(divisor.leading().unwrap()).unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(f), self.clone());
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = f.mul(&rem[k], &lc_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, dj) in divisor.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                rem[idx] = f.sub(&rem[idx], &f.mul(&c, dj));
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        (Self::new(f, quot), Self::new(f, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Quotient of an exact division; `None` if the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &Matrix<F>) -> Matrix<F> {
        assert!(m.is_square(), "polynomials are evaluated at square matrices");
        let n = m.rows();
        let mut acc = Matrix::zeros(&self.field, n, n);
        for c in self.coeffs.iter().rev() {
            acc = &acc * m;
            for i in 0..n {
                let v = self.field.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
            .collect();
        Self::new(f, coeffs)
    }

    pub fn pow(&self, mut k: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, e: &BigUint, modulus: &Self) -> Self {
        let base = self.rem(modulus);
        let mut acc = Self::one(&self.field).rem(modulus);
        for i in (0..e.bits()).rev() {
            acc = (&acc * &acc).rem(modulus);
            if e.bit(i) {
                acc = (&acc * &base).rem(modulus);
            }
        }
        acc
    }

    /// Monic gcd; zero when both inputs are zero.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Applies `map` to every coefficient, moving into another field.
    pub fn map_coeffs<G: Field>(&self, target: &G, map: impl Fn(&F::Elem) -> G::Elem) -> Poly<G> {
        Poly::new(target, self.coeffs.iter().map(map).collect())
    }
}

/// Extended Euclid with a monic gcd; `u` and `v` have the minimal degrees
/// produced by the standard remainder sequence.
pub fn poly_gcd_bezout<F: Field>(f: &Poly<F>, g: &Poly<F>) -> Result<Bezout<F>> {
    f.field.ensure_same(&g.field)?;
    if f.is_zero() && g.is_zero() {
        return Err(Error::ZeroGcd);
    }
    let field = &f.field;
    let (mut r0, mut r1) = (f.clone(), g.clone());
    let (mut s0, mut s1) = (Poly::one(field), Poly::zero(field));
    let (mut t0, mut t1) = (Poly::zero(field), Poly::one(field));
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let s = &s0 - &(&q * &s1);
        let t = &t0 - &(&q * &t1);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    let lc_inv = field.inv(r0.leading().unwrap()).unwrap();
    Ok(Bezout {
        gcd: r0.scale(&lc_inv),
        u: s0.scale(&lc_inv),
        v: t0.scale(&lc_inv),
    })
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;

    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(&self.coeff(i), &rhs.coeff(i))).collect();
        Poly::new(f, coeffs)
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;

    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(&self.coeff(i), &rhs.coeff(i))).collect();
        Poly::new(f, coeffs)
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;

    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![f.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;

    fn neg(self) -> Poly<F> {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|c| f.neg(c)).collect())
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let f = &self.field;
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let c_txt = f.format_elem(c);
            let term = match (i, f.is_one(c)) {
                (0, _) => c_txt,
                (1, true) => "x".to_string(),
                (_, true) => format!("x^{i}"),
                (1, false) => format!("({c_txt})x"),
                (_, false) => format!("({c_txt})x^{i}"),
            };
            terms.push(term);
        }
        write!(out, "{}", terms.join(" + "))
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "Poly[{}]({})", self.field.spec(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    #[test]
    fn bezout_coprime_linear_factors() {
        let q = Rationals;
        let f = Poly::from_i64(&q, &[-1, 1]);
        let g = Poly::x(&q);
        let b = poly_gcd_bezout(&f, &g).unwrap();
        assert_eq!(b.gcd, Poly::one(&q));
        assert_eq!(b.u, Poly::from_i64(&q, &[-1]));
        assert_eq!(b.v, Poly::from_i64(&q, &[1]));
    }

    #[test]
    fn bezout_divisibility_case() {
        let q = Rationals;
        let f = Poly::from_i64(&q, &[0, 0, 1]);
        let g = Poly::x(&q);
        let b = poly_gcd_bezout(&f, &g).unwrap();
        assert_eq!(b.gcd, Poly::x(&q));
        assert!(b.u.is_zero());
        assert_eq!(b.v, Poly::one(&q));
    }

    #[test]
    fn bezout_rejects_double_zero() {
        let q = Rationals;
        assert_eq!(poly_gcd_bezout(&Poly::zero(&q), &Poly::zero(&q)), Err(Error::ZeroGcd));
    }

    #[test]
    fn zero_degree_is_sentinel() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(Poly::<PrimeField>::zero(&f).degree(), None);
        assert_eq!(Poly::from_i64(&f, &[5, 10]).degree(), None);
        assert_eq!(Poly::from_i64(&f, &[3]).degree(), Some(0));
    }

    fn poly_strategy(max_deg: usize) -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(0i64..7, 1..=max_deg + 1)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn bezout_identity_over_f7(a in poly_strategy(6), b in poly_strategy(6)) {
            let f7 = PrimeField::new(7).unwrap();
            let f = Poly::from_i64(&f7, &a);
            let g = Poly::from_i64(&f7, &b);
            prop_assume!(!(f.is_zero() && g.is_zero()));
            let bz = poly_gcd_bezout(&f, &g).unwrap();
            let lhs = &(&bz.u * &f) + &(&bz.v * &g);
            prop_assert!((&lhs - &bz.gcd).is_zero());
            prop_assert!(bz.gcd.is_monic());
            prop_assert!(bz.gcd.divides(&f) && bz.gcd.divides(&g));
            if let (Some(dg), Some(dgcd)) = (g.degree(), bz.gcd.degree()) {
                if !g.divides(&f) {
                    prop_assert!(bz.u.degree().unwrap_or(0) < dg - dgcd);
                }
            }
        }

        #[test]
        fn bezout_identity_over_q(a in proptest::collection::vec(-5i64..5, 1..6),
                                  b in proptest::collection::vec(-5i64..5, 1..6)) {
            let q = Rationals;
            let f = Poly::from_i64(&q, &a);
            let g = Poly::from_i64(&q, &b);
            prop_assume!(!(f.is_zero() && g.is_zero()));
            let bz = poly_gcd_bezout(&f, &g).unwrap();
            let lhs = &(&bz.u * &f) + &(&bz.v * &g);
            prop_assert_eq!(lhs, bz.gcd);
        }

        #[test]
        fn division_identity(a in poly_strategy(8), b in poly_strategy(4)) {
            let f7 = PrimeField::new(7).unwrap();
            let f = Poly::from_i64(&f7, &a);
            let g = Poly::from_i64(&f7, &b);
            prop_assume!(!g.is_zero());
            let (q, r) = f.div_rem(&g);
            prop_assert_eq!(&(&q * &g) + &r, f);
            prop_assert!(r.degree().is_none_or(|d| d < g.degree().unwrap()));
        }
    }
}
