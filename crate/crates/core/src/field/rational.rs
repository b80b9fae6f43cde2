use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::{Field, FieldSpec};
use crate::error::{Error, Result};
use crate::factor;
use crate::poly::Poly;

/// Matrices with fewer entries use the generic elimination.
const BAREISS_THRESHOLD: usize = 64;

/// The rational numbers with arbitrary-precision numerators and denominators.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn order(&self) -> Option<BigUint> {
        None
    }

    /// Small rationals: numerator in [-4, 4], denominator in [1, 3].
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        let num: i64 = rng.gen_range(-4..=4);
        let den: i64 = rng.gen_range(1..=3);
        BigRational::new(num.into(), den.into())
    }

    fn parse_elem(&self, s: &str) -> std::result::Result<BigRational, String> {
        let bad = || format!("`{s}` is not a rational literal");
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.parse().map_err(|_| bad())?;
                let d: BigInt = d.parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(format!("zero denominator in `{s}`"));
                }
                Ok(BigRational::new(n, d))
            }
            None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
        }
    }

    fn format_elem(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }

    /// Fraction-free (Bareiss) forward elimination on rows scaled to
    /// integers, then back-substitution on the nonzero rows only.
    fn residue(&self, a: &BigRational, p: u64) -> Option<u64> {
        let m = BigInt::from(p);
        let reduce = |x: &BigInt| -> u64 {
            let r = x.mod_floor(&m);
            r.try_into().expect("residue below modulus")
        };
        let den = reduce(a.denom());
        if den == 0 {
            return None;
        }
        // Fermat inverse of the denominator
        let inv = BigUint::from(den).modpow(&BigUint::from(p - 2), &BigUint::from(p));
        let inv: u64 = inv.try_into().expect("residue below modulus");
        Some(((reduce(a.numer()) as u128 * inv as u128) % p as u128) as u64)
    }

    fn fast_rref(rows: usize, cols: usize, data: &[BigRational]) -> Option<(Vec<BigRational>, Vec<usize>)> {
        if rows * cols < BAREISS_THRESHOLD {
            return None;
        }
        let mut a: Vec<Vec<BigInt>> = data
            .chunks(cols)
            .map(|row| {
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
            })
            .collect();
        let mut prev = BigInt::one();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, pr);
            let (top, below) = a.split_at_mut(r + 1);
            let pivot_row = &top[r];
            for row in below.iter_mut() {
                let m = std::mem::take(&mut row[c]);
                for j in c + 1..cols {
                    let num = &pivot_row[c] * &row[j] - &m * &pivot_row[j];
                    let (q, rem) = num.div_rem(&prev);
                    if !rem.is_zero() {
                        return None;
                    }
                    row[j] = q;
                }
            }
            prev = a[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        let mut echelon: Vec<Vec<BigRational>> = a[..r]
            .iter()
            .zip(&pivots)
            .map(|(row, &c)| {
                let lead = row[c].clone();
                row.iter().map(|x| BigRational::new(x.clone(), lead.clone())).collect()
            })
            .collect();
        for k in (0..r).rev() {
            let c = pivots[k];
            let (above, rest) = echelon.split_at_mut(k);
            let pivot_row = &rest[0];
            for row in above.iter_mut() {
                if row[c].is_zero() {
                    continue;
                }
                let factor = row[c].clone();
                for j in c..cols {
                    if !pivot_row[j].is_zero() {
                        row[j] -= &factor * &pivot_row[j];
                    }
                }
            }
        }
        let mut out: Vec<BigRational> = echelon.into_iter().flatten().collect();
        out.resize(rows * cols, BigRational::zero());
        Some((out, pivots))
    }

    fn factor_poly(_f: &Poly<Self>) -> Result<Vec<(Poly<Self>, usize)>> {
        Err(Error::Unsupported("Q (factorization)".into()))
    }

    fn coprime_split(f: &Poly<Self>) -> Option<(Poly<Self>, Poly<Self>)> {
        factor::rational_coprime_split(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residues_respect_denominators() {
        let q = Rationals;
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(q.residue(&half, 7), Some(4));
        assert_eq!(q.residue(&BigRational::from_integer(BigInt::from(-3)), 7), Some(4));
        assert_eq!(q.residue(&BigRational::new(BigInt::from(1), BigInt::from(14)), 7), None);
    }

    #[test]
    fn literals() {
        let q = Rationals;
        assert_eq!(q.parse_elem("6/4").unwrap(), BigRational::new(3.into(), 2.into()));
        assert_eq!(q.format_elem(&q.parse_elem("-6/3").unwrap()), "-2");
        assert!(q.parse_elem("1/0").is_err());
        assert!(q.parse_elem("[1,2]").is_err());
    }
}
