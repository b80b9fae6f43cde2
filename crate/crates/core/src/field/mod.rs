//! Exactly represented fields.
//!
//! A [`Field`] value is a lightweight context (a unit struct for the
//! rationals, a modulus for prime fields, a shared modulus polynomial for
//! extensions) that performs arithmetic on its plain element type. Generic
//! code in the rest of the crate is written against this trait; field
//! parameters are runtime values so that matrix files can declare them.

mod extension;
mod prime;
mod rational;

use std::fmt;
use std::hash::Hash;

use num_bigint::BigUint;
use rand::Rng;

use crate::error::{Error, Result};
use crate::poly::Poly;

pub use extension::{ExtElem, ExtensionField};
pub use prime::PrimeField;
pub use rational::Rationals;

pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Ord + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    /// Number of elements, `None` when infinite.
    fn order(&self) -> Option<BigUint>;
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    fn parse_elem(&self, s: &str) -> std::result::Result<Self::Elem, String>;
    fn format_elem(&self, a: &Self::Elem) -> String;
    fn spec(&self) -> FieldSpec;

    /// Coordinates over the prime subfield (finite fields only).
    fn prime_coords(&self, _a: &Self::Elem) -> Option<Vec<u64>> {
        None
    }
    #[allow(clippy::wrong_self_convention)]
    fn from_prime_coords(&self, _c: &[u64]) -> Option<Self::Elem> {
        None
    }
    /// Monic modulus over F_p defining the field, low degree first.
    /// A prime field reports `x`.
    fn prime_modulus(&self) -> Option<Vec<u64>> {
        None
    }
    /// Every element, for finite fields.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    /// Reduced row-echelon form of a row-major `rows × cols` matrix and its
    /// pivot columns, for fields with a faster elimination than the generic
    /// one. `None` selects the generic elimination.
    fn fast_rref(_rows: usize, _cols: usize, _data: &[Self::Elem]) -> Option<(Vec<Self::Elem>, Vec<usize>)> {
        None
    }

    /// Image of `a` in `F_p` when `a` lies in a subring that reduces onto
    /// `F_p`, such as `Z_(p)` inside `Q`.
    fn residue(&self, _a: &Self::Elem, _p: u64) -> Option<u64> {
        None
    }

    /// Factorization of a nonzero monic polynomial into monic irreducibles.
    fn factor_poly(f: &Poly<Self>) -> Result<Vec<(Poly<Self>, usize)>>;
    /// Splits a monic `f` as `g·h` with `g`, `h` monic, coprime and
    /// nonconstant, when such a split can be found over this field.
    fn coprime_split(f: &Poly<Self>) -> Option<(Poly<Self>, Poly<Self>)>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    fn pow_u64(&self, a: &Self::Elem, e: u64) -> Self::Elem {
        self.pow(a, &BigUint::from(e))
    }

    /// Checks that two field contexts agree.
    fn ensure_same(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.spec().to_string(), other.spec().to_string()))
        }
    }
}

/// Runtime description of a field, as written in matrix files.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
    /// `modulus` is `None` for the canonical (lexicographically first)
    /// monic irreducible of the given degree.
    Extension {
        p: u64,
        degree: usize,
        modulus: Option<Vec<u64>>,
    },
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
            FieldSpec::Extension {
                p,
                degree,
                modulus: None,
            } => write!(f, "GF({p}^{degree})"),
            FieldSpec::Extension {
                p,
                degree,
                modulus: Some(m),
            } => {
                let coeffs: Vec<String> = m.iter().map(|c| c.to_string()).collect();
                write!(f, "GF({p}^{degree};{})", coeffs.join(","))
            }
        }
    }
}

impl std::str::FromStr for FieldSpec {
    type Err = String;

    /// Accepts `Q`, `GF(p)`, `GF(p^d)` and `GF(p^d;c0,...,cd)`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        let inner = s
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| format!("unknown field literal `{s}`"))?;
        let (body, modulus) = match inner.split_once(';') {
            Some((b, m)) => {
                let coeffs = m
                    .split(',')
                    .map(|c| c.trim().parse::<u64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|e| format!("bad modulus in `{s}`: {e}"))?;
                (b, Some(coeffs))
            }
            None => (inner, None),
        };
        let bad = |e: std::num::ParseIntError| format!("bad field literal `{s}`: {e}");
        match body.split_once('^') {
            None => {
                if modulus.is_some() {
                    return Err(format!("prime field `{s}` takes no modulus"));
                }
                Ok(FieldSpec::Prime(body.trim().parse().map_err(bad)?))
            }
            Some((p, d)) => {
                let p: u64 = p.trim().parse().map_err(bad)?;
                let degree: usize = d.trim().parse().map_err(bad)?;
                if degree == 1 && modulus.is_none() {
                    return Ok(FieldSpec::Prime(p));
                }
                Ok(FieldSpec::Extension { p, degree, modulus })
            }
        }
    }
}

impl FieldSpec {
    pub fn build(&self) -> Result<AnyField> {
        Ok(match self {
            FieldSpec::Rationals => AnyField::Rationals(Rationals),
            FieldSpec::Prime(p) => AnyField::Prime(PrimeField::new(*p)?),
            FieldSpec::Extension {
                p,
                degree,
                modulus: None,
            } => AnyField::Extension(ExtensionField::with_degree(*p, *degree)?),
            FieldSpec::Extension {
                p,
                degree,
                modulus: Some(m),
            } => {
                if m.len() != degree + 1 {
                    return Err(Error::Precondition(format!(
                        "modulus of GF({p}^{degree}) needs {} coefficients",
                        degree + 1
                    )));
                }
                AnyField::Extension(ExtensionField::new(*p, m.clone())?)
            }
        })
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, FieldSpec::Rationals)
    }
}

/// A field chosen at runtime. Use [`with_field!`](crate::with_field) to run
/// generic code on the concrete field inside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyField {
    Rationals(Rationals),
    Prime(PrimeField),
    Extension(ExtensionField),
}

impl AnyField {
    pub fn spec(&self) -> FieldSpec {
        match self {
            AnyField::Rationals(f) => f.spec(),
            AnyField::Prime(f) => f.spec(),
            AnyField::Extension(f) => f.spec(),
        }
    }
}

/// Dispatches on an [`AnyField`], binding the concrete field to `$f`.
#[macro_export]
macro_rules! with_field {
    ($any:expr, $f:ident => $body:expr) => {
        match $any {
            $crate::field::AnyField::Rationals($f) => $body,
            $crate::field::AnyField::Prime($f) => $body,
            $crate::field::AnyField::Extension($f) => $body,
        }
    };
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn axioms<F: Field>(field: &F, trials: usize) {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..trials {
            let a = field.random_elem(&mut rng);
            let b = field.random_elem(&mut rng);
            let c = field.random_elem(&mut rng);
            assert_eq!(field.mul(&field.mul(&a, &b), &c), field.mul(&a, &field.mul(&b, &c)));
            assert_eq!(field.add(&field.add(&a, &b), &c), field.add(&a, &field.add(&b, &c)));
            assert_eq!(
                field.mul(&a, &field.add(&b, &c)),
                field.add(&field.mul(&a, &b), &field.mul(&a, &c))
            );
            assert_eq!(field.mul(&a, &b), field.mul(&b, &a));
            assert!(field.is_zero(&field.add(&a, &field.neg(&a))));
            assert_eq!(field.sub(&a, &b), field.add(&a, &field.neg(&b)));
            if !field.is_zero(&a) {
                let ai = field.inv(&a).unwrap();
                assert!(field.is_one(&field.mul(&a, &ai)));
            } else {
                assert!(field.inv(&a).is_none());
            }
            let s = field.format_elem(&a);
            assert_eq!(field.parse_elem(&s).unwrap(), a);
        }
    }

    #[test]
    fn field_axioms_hold_on_random_triples() {
        axioms(&Rationals, 1000);
        axioms(&PrimeField::new(2).unwrap(), 1000);
        axioms(&PrimeField::new(7).unwrap(), 1000);
        axioms(&PrimeField::new(65521).unwrap(), 1000);
        axioms(&ExtensionField::with_degree(2, 3).unwrap(), 1000);
        axioms(&ExtensionField::with_degree(5, 2).unwrap(), 1000);
        axioms(&ExtensionField::with_degree(3, 4).unwrap(), 1000);
    }

    #[test]
    fn spec_literals_round_trip() {
        for s in ["Q", "GF(5)", "GF(3^2)", "GF(2^3;1,1,0,1)"] {
            let spec: FieldSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert_eq!("GF(7^1)".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(7));
        assert!("GF(x)".parse::<FieldSpec>().is_err());
        assert!("R".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn build_rejects_bad_parameters() {
        assert_eq!(FieldSpec::Prime(9).build(), Err(Error::NotPrime(9)));
        let reducible = FieldSpec::Extension {
            p: 5,
            degree: 2,
            modulus: Some(vec![1, 0, 1]),
        };
        assert!(matches!(reducible.build(), Err(Error::ReducibleModulus(_))));
    }

    #[test]
    fn canonical_extension_spec_prints_short_form() {
        let f = ExtensionField::with_degree(3, 2).unwrap();
        assert_eq!(f.spec().to_string(), "GF(3^2)");
        let g = ExtensionField::new(3, vec![2, 1, 1]).unwrap();
        assert_eq!(g.spec().to_string(), "GF(3^2;2,1,1)");
    }
}
