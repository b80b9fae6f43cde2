//! Factorization over finite fields and the restricted splittings
//! available over Q.
//!
//! Finite fields use the classical pipeline: square-free decomposition,
//! distinct-degree splitting, then Cantor–Zassenhaus equal-degree splitting
//! driven by a fixed-seed generator so that output is reproducible. Over the
//! rationals only rational roots and square-free multiplicity grouping are
//! attempted.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::poly::Poly;

const EQUAL_DEGREE_SEED: u64 = 0x5eed_f00d;

fn field_order<F: Field>(field: &F) -> Result<BigUint> {
    field
        .order()
        .ok_or_else(|| Error::Unsupported(field.spec().to_string()))
}

/// `x^(q^k) mod f` obtained by `k` successive q-th powers of `h`.
fn frobenius_iter<F: Field>(h: &Poly<F>, q: &BigUint, k: usize, f: &Poly<F>) -> Poly<F> {
    let mut acc = h.rem(f);
    for _ in 0..k {
        acc = acc.pow_mod(q, f);
    }
    acc
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test over a finite field.
pub fn is_irreducible<F: Field>(f: &Poly<F>) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let field = f.field();
    let Some(q) = field.order() else {
        return false;
    };
    let f = f.monic();
    let x = Poly::x(field);
    if !(&frobenius_iter(&x, &q, n, &f) - &x).rem(&f).is_zero() {
        return false;
    }
    prime_divisors(n).into_iter().all(|r| {
        let h = &frobenius_iter(&x, &q, n / r, &f) - &x;
        h.gcd(&f).is_unit()
    })
}

/// p-th root of a polynomial whose exponents are all multiples of p.
fn pth_root<F: Field>(f: &Poly<F>, p: u64, q: &BigUint) -> Poly<F> {
    let field = f.field();
    let e = q / BigUint::from(p);
    let coeffs = f
        .coeffs()
        .iter()
        .step_by(p as usize)
        .map(|c| field.pow(c, &e))
        .collect();
    Poly::new(field, coeffs)
}

/// Square-free decomposition over a finite field: pairs of pairwise coprime
/// square-free monic factors and their multiplicities.
fn squarefree_finite<F: Field>(f: &Poly<F>, q: &BigUint) -> Vec<(Poly<F>, usize)> {
    let field = f.field();
    let p = field.characteristic();
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let d = f.derivative();
    if d.is_zero() {
        for (g, m) in squarefree_finite(&pth_root(f, p, q), q) {
            out.push((g, m * p as usize));
        }
        return out;
    }
    let mut c = f.gcd(&d);
    let mut w = f.exact_div(&c).unwrap().monic();
    let mut i = 1;
    while !w.is_unit() {
        let y = w.gcd(&c);
        let fac = w.exact_div(&y).unwrap().monic();
        if !fac.is_unit() {
            out.push((fac, i));
        }
        w = y;
        c = c.exact_div(&w).unwrap().monic();
        i += 1;
    }
    if !c.is_unit() {
        for (g, m) in squarefree_finite(&pth_root(&c, p, q), q) {
            out.push((g, m * p as usize));
        }
    }
    out
}

/// Splits a square-free monic polynomial into products of irreducibles of
/// equal degree.
fn distinct_degree<F: Field>(f: &Poly<F>, q: &BigUint) -> Vec<(Poly<F>, usize)> {
    let field = f.field();
    let x = Poly::x(field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut i = 1;
    while rest.degree().unwrap() >= 2 * i {
        h = h.pow_mod(q, &rest);
        let g = (&h - &x).gcd(&rest);
        if !g.is_unit() {
            rest = rest.exact_div(&g).unwrap().monic();
            h = h.rem(&rest);
            out.push((g, i));
        }
        i += 1;
    }
    if let Some(d) = rest.degree().filter(|d| *d > 0) {
        out.push((rest, d));
    }
    out
}

/// Cantor–Zassenhaus: splits a product of distinct irreducibles of degree
/// `d` into its factors.
fn equal_degree<F: Field>(f: &Poly<F>, d: usize, q: &BigUint, rng: &mut ChaCha8Rng) -> Vec<Poly<F>> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field();
    let p = field.characteristic();
    let qd = q.pow(d as u32);
    loop {
        let a = Poly::new(field, (0..n).map(|_| field.random_elem(rng)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut g = a.gcd(f);
        if g.is_unit() {
            let b = if p == 2 {
                // absolute trace a + a^2 + ... + a^(2^(k·d - 1)), q = 2^k
                let k = (qd.bits() - 1) as usize;
                let mut t = a.rem(f);
                let mut acc = t.clone();
                for _ in 1..k {
                    t = (&t * &t).rem(f);
                    acc = &acc + &t;
                }
                acc
            } else {
                let e = (&qd - BigUint::one()) / BigUint::from(2u32);
                &a.pow_mod(&e, f) - &Poly::one(field)
            };
            g = b.gcd(f);
        }
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let h = f.exact_div(&g).unwrap().monic();
            let mut out = equal_degree(&g, d, q, rng);
            out.extend(equal_degree(&h, d, q, rng));
            return out;
        }
    }
}

fn poly_order<F: Field>(a: &Poly<F>, b: &Poly<F>) -> std::cmp::Ordering {
    a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs()))
}

/// Factors a nonzero monic polynomial over F_p or F_{p^d} into monic
/// irreducibles with multiplicities, sorted by degree then by coefficient
/// sequence (constant term first).
pub fn factor_finite_field<F: Field>(f: &Poly<F>) -> Result<Vec<(Poly<F>, usize)>> {
    let field = f.field();
    let q = field_order(field)?;
    if f.is_zero() || !f.is_monic() {
        return Err(Error::Precondition(
            "factorization needs a nonzero monic polynomial".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(EQUAL_DEGREE_SEED);
    let mut out = Vec::new();
    for (part, mult) in squarefree_finite(f, &q) {
        for (block, d) in distinct_degree(&part, &q) {
            for irr in equal_degree(&block, d, &q, &mut rng) {
                out.push((irr.monic(), mult));
            }
        }
    }
    out.sort_by(|a, b| poly_order(&a.0, &b.0));
    Ok(out)
}

/// Product of the distinct monic irreducible factors of a nonzero `f`.
pub fn squarefree_radical<F: Field>(f: &Poly<F>) -> Result<Poly<F>> {
    if f.is_zero() {
        return Err(Error::Precondition("radical of the zero polynomial".into()));
    }
    let field = f.field();
    let f = f.monic();
    if field.characteristic() == 0 {
        let g = f.gcd(&f.derivative());
        return Ok(f.exact_div(&g).unwrap().monic());
    }
    let mut out = Poly::one(field);
    for (g, _) in F::factor_poly(&f)? {
        out = &out * &g;
    }
    Ok(out)
}

pub(crate) fn finite_coprime_split<F: Field>(f: &Poly<F>) -> Option<(Poly<F>, Poly<F>)> {
    let factors = factor_finite_field(&f.monic()).ok()?;
    if factors.len() < 2 {
        return None;
    }
    let (g0, m0) = &factors[0];
    let g = g0.pow(*m0);
    let h = f.monic().exact_div(&g)?;
    Some((g, h))
}

/// Yun's square-free decomposition in characteristic 0: `(a_i, i)` with
/// `f = lc · Π a_i^i`, each `a_i` monic and nonconstant.
pub fn squarefree_decomposition_char0<F: Field>(f: &Poly<F>) -> Vec<(Poly<F>, usize)> {
    assert_eq!(f.field().characteristic(), 0);
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let fp = f.derivative();
    let a0 = f.gcd(&fp);
    let mut b = f.exact_div(&a0).unwrap();
    let c = fp.exact_div(&a0).unwrap();
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        b = b.exact_div(&a).unwrap();
        let c_next = d.exact_div(&a).unwrap();
        d = &c_next - &b.derivative();
        if a.degree().unwrap_or(0) > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

fn integer_coefficients(f: &Poly<Rationals>) -> Vec<BigInt> {
    let lcm = f.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    f.coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect()
}

const DIVISOR_SEARCH_LIMIT: u64 = 1_000_000;

/// Positive divisors of `n`, when `n` factors by trial division below
/// [`DIVISOR_SEARCH_LIMIT`].
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let mut n = n.abs();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut d = 2u64;
    while BigInt::from(d) * BigInt::from(d) <= n {
        if d > DIVISOR_SEARCH_LIMIT {
            return None;
        }
        let bd = BigInt::from(d);
        let mut e = 0;
        while (&n % &bd).is_zero() {
            n /= &bd;
            e += 1;
        }
        if e > 0 {
            primes.push((bd, e));
        }
        d += 1;
    }
    if n > BigInt::one() {
        primes.push((n, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for dv in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(dv * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    Some(divs)
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| BigRational::new(sn, sd))
}

/// Distinct rational roots of a nonzero polynomial, ascending. Roots of
/// factors of degree ≤ 2 are found by exact square-root extraction; beyond
/// that, by the rational root test when the extreme coefficients factor by
/// trial division.
pub fn rational_roots(f: &Poly<Rationals>) -> Vec<BigRational> {
    let q = Rationals;
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let g = f.gcd(&f.derivative());
    let mut sf = f.exact_div(&g).unwrap().monic();
    let mut roots = Vec::new();
    if sf.coeff(0).is_zero() {
        roots.push(BigRational::zero());
        sf = sf.exact_div(&Poly::x(&q)).unwrap();
    }
    match sf.degree().unwrap() {
        0 => {}
        1 => roots.push(-sf.coeff(0)),
        2 => {
            let (b, c) = (sf.coeff(1), sf.coeff(0));
            let disc = &b * &b - BigRational::from_integer(4.into()) * &c;
            if let Some(s) = rational_sqrt(&disc) {
                let two = BigRational::from_integer(2.into());
                roots.push((-&b + &s) / &two);
                roots.push((-&b - &s) / &two);
            }
        }
        _ => {
            let ints = integer_coefficients(&sf);
            let (a0, an) = (&ints[0], ints.last().unwrap());
            if let (Some(num), Some(den)) = (divisors(a0), divisors(an)) {
                for p in &num {
                    for d in &den {
                        for sign in [1, -1] {
                            let r = BigRational::new(p * BigInt::from(sign), d.clone());
                            if sf.eval(&r).is_zero() && !roots.contains(&r) {
                                roots.push(r);
                            }
                        }
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

fn multiplicity_of_root(f: &Poly<Rationals>, r: &BigRational) -> usize {
    let lin = Poly::linear(&Rationals, r);
    let mut k = 0;
    let mut g = f.clone();
    while let Some(next) = g.exact_div(&lin) {
        g = next;
        k += 1;
    }
    k
}

/// For monic `f` of degree ≥ 2 over Q: a coprime monic pair `(g, h)` with
/// `g·h = f`, both nonconstant, built from a rational root. `None` when no
/// rational root yields such a split.
pub fn rational_linear_quadratic_split(f: &Poly<Rationals>) -> Option<(Poly<Rationals>, Poly<Rationals>)> {
    let f = f.monic();
    if f.degree()? < 2 {
        return None;
    }
    for r in rational_roots(&f) {
        let k = multiplicity_of_root(&f, &r);
        let g = Poly::linear(&Rationals, &r).pow(k);
        let h = f.exact_div(&g).unwrap();
        if h.degree().unwrap_or(0) > 0 {
            return Some((g, h));
        }
    }
    None
}

pub(crate) fn rational_coprime_split(f: &Poly<Rationals>) -> Option<(Poly<Rationals>, Poly<Rationals>)> {
    if let Some(split) = rational_linear_quadratic_split(f) {
        return Some(split);
    }
    let f = f.monic();
    let parts = squarefree_decomposition_char0(&f);
    if parts.len() >= 2 {
        let (a, i) = &parts[0];
        let g = a.pow(*i);
        let h = f.exact_div(&g).unwrap();
        return Some((g, h));
    }
    None
}

/// Degree of the smallest field extension in which `f` splits completely
/// (finite fields: lcm of the irreducible factor degrees).
pub fn splitting_degree<F: Field>(f: &Poly<F>) -> Result<usize> {
    let factors = F::factor_poly(&f.monic())?;
    Ok(factors
        .iter()
        .map(|(g, _)| g.degree().unwrap())
        .fold(1, |acc, d| acc.lcm(&d)))
}

/// Roots in the field itself, ascending, without multiplicity. Uses
/// factorization over finite fields and [`rational_roots`] over Q.
pub fn roots_in_field<F: Field>(f: &Poly<F>) -> Vec<F::Elem> {
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let field = f.field();
    match F::factor_poly(&f.monic()) {
        Ok(factors) => {
            let mut out: Vec<F::Elem> = factors
                .into_iter()
                .filter(|(g, _)| g.degree() == Some(1))
                .map(|(g, _)| field.neg(&g.coeff(0)))
                .collect();
            out.sort();
            out
        }
        Err(_) => {
            // Over Q the only supported route is via rational roots; test
            // each candidate back in the generic field.
            let mut out = Vec::new();
            if field.characteristic() == 0 {
                let as_q = f.map_coeffs(&Rationals, |c| {
                    Rationals
                        .parse_elem(&field.format_elem(c))
                        .expect("characteristic-0 fields here are Q")
                });
                for r in rational_roots(&as_q) {
                    let back = field.parse_elem(&Rationals.format_elem(&r)).expect("rational literal");
                    out.push(back);
                }
            }
            out.sort();
            out
        }
    }
}

/// Small helper used by tests and diagnostics.
pub fn multiply_out<F: Field>(field: &F, factors: &[(Poly<F>, usize)]) -> Poly<F> {
    factors.iter().fold(Poly::one(field), |acc, (g, m)| &acc * &g.pow(*m))
}
