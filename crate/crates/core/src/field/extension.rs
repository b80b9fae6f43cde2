use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

use super::{Field, FieldSpec, PrimeField};
use crate::error::{Error, Result};
use crate::factor;
use crate::poly::Poly;

/// Element of F_{p^d}: the `d` coefficients of its residue modulo the
/// defining polynomial, constant term first.
pub type ExtElem = Vec<u64>;

/// F_{p^d} represented as F_p[x] modulo a monic irreducible of degree d ≥ 2.
#[derive(Debug, Clone)]
pub struct ExtensionField {
    inner: Arc<Inner>,
}

#[derive(Debug)]
struct Inner {
    base: PrimeField,
    degree: usize,
    /// Monic, `degree + 1` coefficients, constant term first.
    modulus: Vec<u64>,
    canonical: bool,
    order: BigUint,
}

impl PartialEq for ExtensionField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.base == other.inner.base && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for ExtensionField {}

impl ExtensionField {
    /// Builds F_p[x]/(modulus). The modulus is given constant term first
    /// and must be monic and irreducible of degree ≥ 2.
    pub fn new(p: u64, modulus: Vec<u64>) -> Result<Self> {
        let base = PrimeField::new(p)?;
        let modulus: Vec<u64> = modulus.into_iter().map(|c| c % p).collect();
        let degree = modulus.len().saturating_sub(1);
        let text = format!("{modulus:?}");
        if degree < 2 || modulus[degree] != 1 {
            return Err(Error::ReducibleModulus(format!(
                "{text} (need a monic polynomial of degree >= 2)"
            )));
        }
        if !factor::is_irreducible(&Poly::new(&base, modulus.clone())) {
            return Err(Error::ReducibleModulus(text));
        }
        let canonical = canonical_modulus(base, degree) == modulus;
        Ok(Self::from_parts(base, modulus, canonical))
    }

    /// F_{p^d} defined by the first monic irreducible of degree `d` in
    /// increasing lexicographic order of `(c_{d-1}, ..., c_0)`.
    pub fn with_degree(p: u64, degree: usize) -> Result<Self> {
        let base = PrimeField::new(p)?;
        if degree < 2 {
            return Err(Error::Precondition(format!(
                "extension degree must be at least 2, got {degree}"
            )));
        }
        let modulus = canonical_modulus(base, degree);
        Ok(Self::from_parts(base, modulus, true))
    }

    fn from_parts(base: PrimeField, modulus: Vec<u64>, canonical: bool) -> Self {
        let degree = modulus.len() - 1;
        let order = BigUint::from(base.p()).pow(degree as u32);
        ExtensionField {
            inner: Arc::new(Inner {
                base,
                degree,
                modulus,
                canonical,
                order,
            }),
        }
    }

    pub fn base(&self) -> PrimeField {
        self.inner.base
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    /// The class of `x`.
    pub fn generator(&self) -> ExtElem {
        let mut g = vec![0; self.degree()];
        g[1] = 1;
        g
    }

    /// Embeds a prime-field residue as a constant.
    pub fn constant(&self, c: u64) -> ExtElem {
        let mut v = vec![0; self.degree()];
        v[0] = c % self.inner.base.p();
        v
    }
}

fn canonical_modulus(base: PrimeField, degree: usize) -> Vec<u64> {
    let p = base.p();
    let mut digits = vec![0u64; degree];
    loop {
        let mut modulus = digits.clone();
        modulus.push(1);
        if factor::is_irreducible(&Poly::new(&base, modulus.clone())) {
            return modulus;
        }
        // increment little-endian counter
        let mut i = 0;
        loop {
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
            assert!(i < degree, "irreducible polynomials exist in every degree");
        }
    }
}

impl Field for ExtensionField {
    type Elem = ExtElem;

    fn zero(&self) -> ExtElem {
        vec![0; self.degree()]
    }

    fn one(&self) -> ExtElem {
        self.constant(1)
    }

    fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let f = self.inner.base;
        a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
    }

    fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let f = self.inner.base;
        a.iter().zip(b).map(|(x, y)| f.sub(x, y)).collect()
    }

    fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let f = self.inner.base;
        let d = self.degree();
        let mut prod = vec![0u64; 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = f.add(&prod[i + j], &f.mul(x, y));
            }
        }
        let m = &self.inner.modulus;
        for top in (d..2 * d - 1).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for (j, mj) in m[..d].iter().enumerate() {
                let idx = top - d + j;
                prod[idx] = f.sub(&prod[idx], &f.mul(&c, mj));
            }
            prod[top] = 0;
        }
        prod.truncate(d);
        prod
    }

    fn neg(&self, a: &ExtElem) -> ExtElem {
        let f = self.inner.base;
        a.iter().map(|x| f.neg(x)).collect()
    }

    fn inv(&self, a: &ExtElem) -> Option<ExtElem> {
        if self.is_zero(a) {
            return None;
        }
        let e = &self.inner.order - BigUint::from(2u32);
        Some(self.pow(a, &e))
    }

    fn is_zero(&self, a: &ExtElem) -> bool {
        a.iter().all(|c| *c == 0)
    }

    fn from_i64(&self, v: i64) -> ExtElem {
        self.constant(self.inner.base.from_i64(v))
    }

    fn characteristic(&self) -> u64 {
        self.inner.base.p()
    }

    fn order(&self) -> Option<BigUint> {
        Some(self.inner.order.clone())
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> ExtElem {
        let p = self.inner.base.p();
        (0..self.degree()).map(|_| rng.gen_range(0..p)).collect()
    }

    /// `[c0,c1,...]` with at most `d` coefficients, or a bare integer.
    fn parse_elem(&self, s: &str) -> std::result::Result<ExtElem, String> {
        let p = BigInt::from(self.inner.base.p());
        let coeff = |t: &str| -> std::result::Result<u64, String> {
            let v: BigInt = t
                .trim()
                .parse()
                .map_err(|_| format!("`{t}` is not an integer coefficient"))?;
            Ok(v.mod_floor(&p).to_u64().expect("residue fits"))
        };
        let mut out = self.zero();
        match s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            Some(body) => {
                let parts: Vec<&str> = if body.trim().is_empty() {
                    Vec::new()
                } else {
                    body.split(',').collect()
                };
                if parts.len() > self.degree() {
                    return Err(format!("`{s}` has more than {} coefficients", self.degree()));
                }
                for (slot, part) in out.iter_mut().zip(parts) {
                    *slot = coeff(part)?;
                }
            }
            None => out[0] = coeff(s)?,
        }
        Ok(out)
    }

    fn format_elem(&self, a: &ExtElem) -> String {
        let parts: Vec<String> = a.iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::Extension {
            p: self.inner.base.p(),
            degree: self.degree(),
            modulus: if self.inner.canonical {
                None
            } else {
                Some(self.inner.modulus.clone())
            },
        }
    }

    fn prime_coords(&self, a: &ExtElem) -> Option<Vec<u64>> {
        Some(a.clone())
    }

    fn from_prime_coords(&self, c: &[u64]) -> Option<ExtElem> {
        (c.len() == self.degree()).then(|| c.iter().map(|x| x % self.inner.base.p()).collect())
    }

    fn prime_modulus(&self) -> Option<Vec<u64>> {
        Some(self.inner.modulus.clone())
    }

    fn elements(&self) -> Option<Vec<ExtElem>> {
        let total = self.inner.order.to_usize().filter(|n| *n <= 1 << 20)?;
        let p = self.inner.base.p();
        let d = self.degree();
        Some(
            (0..total)
                .map(|mut k| {
                    (0..d)
                        .map(|_| {
                            let c = (k as u64) % p;
                            k /= p as usize;
                            c
                        })
                        .collect()
                })
                .collect(),
        )
    }

    fn factor_poly(f: &Poly<Self>) -> Result<Vec<(Poly<Self>, usize)>> {
        factor::factor_finite_field(f)
    }

    fn coprime_split(f: &Poly<Self>) -> Option<(Poly<Self>, Poly<Self>)> {
        factor::finite_coprime_split(f)
    }
}
