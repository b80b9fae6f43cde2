use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

use super::{Field, FieldSpec};
use crate::error::{Error, Result};
use crate::factor;
use crate::poly::Poly;

/// The prime field F_p, elements stored as residues in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Primes up to 2^32 are supported so that products fit in a `u64`.
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        let g = (*a as i64).extended_gcd(&(self.p as i64));
        debug_assert_eq!(g.gcd, 1);
        Some(g.x.rem_euclid(self.p as i64) as u64)
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn order(&self) -> Option<BigUint> {
        Some(BigUint::from(self.p))
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }

    fn parse_elem(&self, s: &str) -> std::result::Result<u64, String> {
        let v: BigInt = s.parse().map_err(|_| format!("`{s}` is not an integer literal"))?;
        let r = v.mod_floor(&BigInt::from(self.p));
        Ok(r.to_u64().expect("residue fits"))
    }

    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }

    fn prime_coords(&self, a: &u64) -> Option<Vec<u64>> {
        Some(vec![*a])
    }

    fn from_prime_coords(&self, c: &[u64]) -> Option<u64> {
        match c {
            [v] => Some(v % self.p),
            _ => None,
        }
    }

    fn prime_modulus(&self) -> Option<Vec<u64>> {
        Some(vec![0, 1])
    }

    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.p).collect())
    }

    fn factor_poly(f: &Poly<Self>) -> Result<Vec<(Poly<Self>, usize)>> {
        factor::factor_finite_field(f)
    }

    fn coprime_split(f: &Poly<Self>) -> Option<(Poly<Self>, Poly<Self>)> {
        factor::finite_coprime_split(f)
    }
}
