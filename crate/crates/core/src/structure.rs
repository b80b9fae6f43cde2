//! Unispectrality, triangularization, spectral idempotents and the
//! certifier that exhibits a non-scalar matrix commuting with a small
//! algebra.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{MatrixAlgebra, PeirceDecomposition};
use crate::error::{Error, Result};
use crate::factor::{self, roots_in_field, splitting_degree};
use crate::field::{ExtensionField, Field};
use crate::lift::ScalarExtension;
use crate::matrix::{Matrix, Subspace};
use crate::poly::{poly_gcd_bezout, Poly};

/// Seed of the bounded random search for a non-unispectral element.
pub const CERTIFY_SEED: u64 = 0x00c0_ffee;

/// Number of random combinations tried after the structured candidates.
pub const RANDOM_CANDIDATES: usize = 64;

/// Spectral shape of a square matrix, read off its minimal polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Spectrum<F: Field> {
    /// The only eigenvalue, which lies in the field.
    Unispectral(F::Elem),
    /// The minimal polynomial has a coprime factorization over the field.
    Split,
    /// Not unispectral, yet no coprime factorization over the field was
    /// found. Carries the square-free radical of the minimal polynomial:
    /// over a finite field it is irreducible of degree ≥ 2 (the split only
    /// exists after extending scalars); over Q it is irreducible whenever
    /// its degree is 2.
    Unsplit(Poly<F>),
}

impl<F: Field> Spectrum<F> {
    pub fn eigenvalue(&self) -> Option<&F::Elem> {
        match self {
            Spectrum::Unispectral(l) => Some(l),
            _ => None,
        }
    }
}

pub fn is_unispectral<F: Field>(m: &Matrix<F>) -> Result<Spectrum<F>> {
    if !m.is_square() {
        return Err(Error::Shape("unispectrality needs a square matrix".into()));
    }
    let mu = m.minimal_polynomial();
    let radical = factor::squarefree_radical(&mu)?;
    if radical.degree() == Some(1) {
        return Ok(Spectrum::Unispectral(m.field().neg(&radical.coeff(0))));
    }
    if F::coprime_split(&mu).is_some() {
        Ok(Spectrum::Split)
    } else {
        Ok(Spectrum::Unsplit(radical))
    }
}

/// Outcome of the flag construction on a unispectral basis.
#[derive(Debug, Clone)]
pub enum Triangularization<F: Field> {
    /// `conjugator · a · conjugator⁻¹` is upper triangular.
    Triangular { conjugator: Matrix<F> },
    /// The shifted basis does not generate a nilpotent algebra; `witness`
    /// is a non-nilpotent element of the algebra they generate, when one
    /// turned up in the bounded search.
    NotUnispectral { witness: Option<Matrix<F>> },
}

/// Triangularizes an algebra whose basis elements are unispectral with
/// eigenvalues in the field, by the common-kernel flag of the shifted
/// basis `N_i = M_i − λ_i·I`.
pub fn triangularize_unispectral<F: Field>(a: &MatrixAlgebra<F>) -> Result<Triangularization<F>> {
    let f = a.field().clone();
    let n = a.n();
    let mut shifted = Vec::new();
    for m in a.basis() {
        let l = match is_unispectral(&m)? {
            Spectrum::Unispectral(l) => l,
            Spectrum::Split => {
                return Ok(Triangularization::NotUnispectral { witness: Some(m) });
            }
            Spectrum::Unsplit(_) => {
                return Err(Error::Precondition(
                    "every basis element must have its eigenvalues in the field".into(),
                ));
            }
        };
        let s = m.add_scalar(&f.neg(&l));
        if !s.is_zero() {
            shifted.push(s);
        }
    }
    // annihilator rows of V_k; V_0 = 0
    let mut annihilator = Matrix::identity(&f, n);
    let mut flag = Subspace::zero(&f, n);
    let mut order: Vec<Vec<F::Elem>> = Vec::new();
    while flag.dim() < n {
        let next = if shifted.is_empty() {
            Matrix::zeros(&f, 0, n)
        } else {
            let parts: Vec<Matrix<F>> = shifted.iter().map(|s| &annihilator * s).collect();
            Matrix::vstack(&parts.iter().collect::<Vec<_>>())
        };
        let mut grew = false;
        for v in next.kernel_basis() {
            if flag.insert(v.entries()) {
                order.push(v.entries().to_vec());
                grew = true;
            }
        }
        if !grew {
            return Ok(Triangularization::NotUnispectral {
                witness: find_non_nilpotent(&f, n, &shifted),
            });
        }
        let rows = Matrix::from_rows(&f, flag.basis().to_vec())?;
        let ann: Vec<Matrix<F>> = rows.kernel_basis().iter().map(Matrix::transpose).collect();
        annihilator = if ann.is_empty() {
            Matrix::zeros(&f, 0, n)
        } else {
            Matrix::vstack(&ann.iter().collect::<Vec<_>>())
        };
    }
    let cols: Vec<Matrix<F>> = order.into_iter().map(|v| Matrix::column(&f, v)).collect();
    let t = Matrix::hstack(&cols.iter().collect::<Vec<_>>());
    let conjugator = t.try_inverse()?;
    Ok(Triangularization::Triangular { conjugator })
}

/// Searches the non-unital algebra generated by `gens` for a
/// non-nilpotent element.
fn find_non_nilpotent<F: Field>(f: &F, n: usize, gens: &[Matrix<F>]) -> Option<Matrix<F>> {
    let mut space = Subspace::zero(f, n * n);
    let mut elems: Vec<Matrix<F>> = Vec::new();
    for g in gens {
        if !g.is_nilpotent() {
            return Some(g.clone());
        }
        if space.insert(g.entries()) {
            elems.push(g.clone());
        }
    }
    let mut i = 0;
    while i < elems.len() {
        for j in 0..elems.len() {
            let prod = &elems[i] * &elems[j];
            if !prod.is_nilpotent() {
                return Some(prod);
            }
            if space.insert(prod.entries()) {
                elems.push(prod);
            }
        }
        i += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(CERTIFY_SEED);
    for _ in 0..RANDOM_CANDIDATES {
        let mut m = Matrix::zeros(f, n, n);
        for e in &elems {
            m = &m + &e.scale(&f.random_elem(&mut rng));
        }
        if !m.is_nilpotent() {
            return Some(m);
        }
    }
    None
}

/// A nontrivial idempotent polynomial in a matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralSplit<F: Field> {
    pub source: Matrix<F>,
    pub idempotent: Matrix<F>,
    pub rank: usize,
    /// `idempotent = witness_poly(source)`.
    pub witness_poly: Poly<F>,
    /// `(λ, μ)` when the minimal polynomial is `(x − λ)(x − μ)`; the
    /// idempotent projects onto the λ-eigenspace.
    pub eigen_data: Option<(F::Elem, F::Elem)>,
}

/// Spectral projection from a coprime factorization `minpoly = g·h`:
/// `P = (u·g)(m)` where `u·g + v·h = 1`.
pub fn spectral_idempotent<F: Field>(m: &Matrix<F>) -> Option<SpectralSplit<F>> {
    let f = m.field();
    let mu = m.minimal_polynomial();
    let (g, h) = F::coprime_split(&mu)?;
    let bz = poly_gcd_bezout(&g, &h).ok()?;
    if !bz.gcd.is_unit() {
        return None;
    }
    let w = (&bz.u * &g).rem(&mu);
    let idempotent = w.eval_matrix(m);
    let eigen_data = (mu.degree() == Some(2) && g.degree() == Some(1) && h.degree() == Some(1))
        .then(|| (f.neg(&h.coeff(0)), f.neg(&g.coeff(0))));
    Some(SpectralSplit {
        source: m.clone(),
        rank: idempotent.rank(),
        idempotent,
        witness_poly: w,
        eigen_data,
    })
}

/// Which branch of the case analysis produced a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Route {
    DimAtMostTwo,
    UnispectralE1n,
    PeirceDiagonal,
    Dim3Kernel,
    Nu2101,
    Nu1111Product,
    Nu1111Invertible,
    Nu1111Rank1,
    Nu1201Even,
    Nu1201Kernel,
}

impl Route {
    pub const ALL: [Route; 10] = [
        Route::DimAtMostTwo,
        Route::UnispectralE1n,
        Route::PeirceDiagonal,
        Route::Dim3Kernel,
        Route::Nu2101,
        Route::Nu1111Product,
        Route::Nu1111Invertible,
        Route::Nu1111Rank1,
        Route::Nu1201Even,
        Route::Nu1201Kernel,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Route::DimAtMostTwo => "dim<=2",
            Route::UnispectralE1n => "unispectral-E1n",
            Route::PeirceDiagonal => "peirce-(0,0)",
            Route::Dim3Kernel => "dim3-kernel",
            Route::Nu2101 => "nu-(2,1,0,1)",
            Route::Nu1111Product => "nu-(1,1,1,1)-product",
            Route::Nu1111Invertible => "nu-(1,1,1,1)-invertible",
            Route::Nu1111Rank1 => "nu-(1,1,1,1)-rank1",
            Route::Nu1201Even => "nu-(1,2,0,1)-even",
            Route::Nu1201Kernel => "nu-(1,2,0,1)-kernel",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Route> {
        Route::ALL.into_iter().find(|r| r.tag() == tag)
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A non-scalar matrix commuting with an algebra, with its provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate<F: Field> {
    pub witness: Matrix<F>,
    pub route: Route,
    /// Degree of the scalar extension the argument ran in (1 when none).
    pub extension_degree: usize,
}

impl<F: Field> Certificate<F> {
    /// Re-checks commutation with every basis element and non-scalarity.
    pub fn verify(&self, a: &MatrixAlgebra<F>) -> bool {
        self.witness.shape() == (a.n(), a.n())
            && !self.witness.is_scalar()
            && a.basis().iter().all(|m| m.commutes_with(&self.witness))
    }
}

/// Witness `P⁻¹·E_{1,n}·P` for an algebra triangularized by `P`.
pub fn unispectral_centralizer_witness<F: Field>(a: &MatrixAlgebra<F>) -> Result<Certificate<F>> {
    match triangularize_unispectral(a)? {
        Triangularization::Triangular { conjugator } => {
            let cert = e1n_certificate(a, &conjugator)?;
            Ok(cert)
        }
        Triangularization::NotUnispectral { .. } => Err(Error::Precondition("the algebra is not unispectral".into())),
    }
}

fn e1n_certificate<F: Field>(a: &MatrixAlgebra<F>, p: &Matrix<F>) -> Result<Certificate<F>> {
    let f = a.field();
    let n = a.n();
    let p_inv = p.try_inverse()?;
    let witness = &(&p_inv * &Matrix::unit(f, n, n, 0, n - 1)) * p;
    finish(a, witness, Route::UnispectralE1n, 1)
}

fn finish<F: Field>(a: &MatrixAlgebra<F>, witness: Matrix<F>, route: Route, ext: usize) -> Result<Certificate<F>> {
    let cert = Certificate {
        witness,
        route,
        extension_degree: ext,
    };
    if cert.verify(a) {
        Ok(cert)
    } else {
        Err(Error::Internal(format!("witness from route {route} does not verify")))
    }
}

/// Candidate elements for the non-unispectral search, in the fixed order:
/// basis, pairwise sums, products, then seeded random combinations.
fn candidates<F: Field>(a: &MatrixAlgebra<F>, seed: u64) -> Vec<Matrix<F>> {
    let f = a.field();
    let basis = a.basis();
    let mut out = basis.clone();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            out.push(&basis[i] + &basis[j]);
        }
    }
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if i != j {
                out.push(&basis[i] * &basis[j]);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_CANDIDATES {
        let coeffs: Vec<F::Elem> = (0..basis.len()).map(|_| f.random_elem(&mut rng)).collect();
        out.push(a.combination(&coeffs));
    }
    out
}

/// Exhibits a non-scalar matrix commuting with `a`, following the case
/// analysis on the dimension and the Peirce signature.
///
/// Returns [`Error::GenuinelyTrivial`] when the algebra has the exceptional
/// odd-dimensional shape (or is `T_2`/`M_2` in size 2), and
/// [`Error::ExtensionRequired`] over Q when no rational splitting is found.
pub fn certify_nonscalar_commutant<F: Field>(a: &MatrixAlgebra<F>, seed: u64) -> Result<Certificate<F>> {
    let f = a.field().clone();
    let n = a.n();
    if n < 2 {
        return Err(Error::Precondition("ambient size must be at least 2".into()));
    }
    let basis = a.basis();
    if a.dim() <= 2 {
        let witness = basis
            .iter()
            .find(|m| !m.is_scalar())
            .cloned()
            .unwrap_or_else(|| Matrix::unit(&f, n, n, 0, 0));
        return finish(a, witness, Route::DimAtMostTwo, 1);
    }

    let mut unsplit: Option<Poly<F>> = None;
    let mut all_unispectral = true;
    let mut found: Option<SpectralSplit<F>> = None;
    for c in candidates(a, seed) {
        match is_unispectral(&c)? {
            Spectrum::Unispectral(_) => {}
            Spectrum::Split => {
                found = spectral_idempotent(&c);
                if found.is_some() {
                    break;
                }
            }
            Spectrum::Unsplit(r) => {
                all_unispectral = false;
                unsplit.get_or_insert(r);
            }
        }
    }
    if found.is_none() && unsplit.is_none() {
        // All candidates unispectral: the basis satisfies the triangularization precondition.
        debug_assert!(all_unispectral);
        match triangularize_unispectral(a)? {
            Triangularization::Triangular { conjugator } => return e1n_certificate(a, &conjugator),
            Triangularization::NotUnispectral { witness } => {
                if let Some(w) = witness {
                    match is_unispectral(&w)? {
                        Spectrum::Split => found = spectral_idempotent(&w),
                        Spectrum::Unsplit(r) => unsplit = Some(r),
                        Spectrum::Unispectral(_) => {}
                    }
                }
            }
        }
    }
    match found {
        Some(split) => certify_with_idempotent(a, &split.idempotent),
        None => {
            let degree = match &unsplit {
                Some(r) => splitting_degree(r)
                    .map_err(|_| Error::ExtensionRequired(format!("no splitting of {r} over {}", f.spec())))?,
                // non-nilpotent generated algebra but no element found: widen the field
                None => 2,
            };
            lift_and_certify(a, degree.max(2), seed)
        }
    }
}

fn lift_and_certify<F: Field>(a: &MatrixAlgebra<F>, degree: usize, seed: u64) -> Result<Certificate<F>> {
    let ext = ScalarExtension::new(a.field(), degree)?;
    let l = ext.field().clone();
    let lifted: Vec<Matrix<ExtensionField>> = a.basis().iter().map(|m| ext.embed_matrix(m)).collect();
    let a_l = MatrixAlgebra::from_span(&l, a.n(), &lifted)?;
    let inner = certify_nonscalar_commutant(&a_l, seed)?;
    for c in ext.k_basis() {
        if let Some(w) = ext.trace_matrix(&inner.witness, &c) {
            let cert = Certificate {
                witness: w,
                route: inner.route,
                extension_degree: inner.extension_degree * degree,
            };
            if cert.verify(a) {
                return Ok(cert);
            }
        }
    }
    Err(Error::Internal("trace descent produced only scalars".into()))
}

/// Blocks of an algebra in Peirce coordinates, normalized by transposition
/// and by swapping the two coordinate groups.
#[derive(Clone)]
struct Blocks<F: Field> {
    p: usize,
    q: usize,
    a11: Vec<Matrix<F>>,
    a12: Vec<Matrix<F>>,
    a21: Vec<Matrix<F>>,
    a22: Vec<Matrix<F>>,
}

#[derive(Clone, Copy)]
enum Move {
    Transpose,
    Swap,
}

impl<F: Field> Blocks<F> {
    fn nu(&self) -> [usize; 4] {
        [self.a11.len(), self.a12.len(), self.a21.len(), self.a22.len()]
    }

    fn apply(&self, mv: Move) -> Self {
        let t = |v: &[Matrix<F>]| v.iter().map(Matrix::transpose).collect::<Vec<_>>();
        match mv {
            Move::Transpose => Blocks {
                p: self.p,
                q: self.q,
                a11: t(&self.a11),
                a12: t(&self.a21),
                a21: t(&self.a12),
                a22: t(&self.a22),
            },
            Move::Swap => Blocks {
                p: self.q,
                q: self.p,
                a11: self.a22.clone(),
                a12: self.a21.clone(),
                a21: self.a12.clone(),
                a22: self.a11.clone(),
            },
        }
    }
}

/// Matrix of `(X, Y) ↦ X·W − W·Y` on `vec(X) ⊕ vec(Y)` (row-major), for
/// `W ∈ M_{p,q}`.
pub fn sylvester_map<F: Field>(w: &Matrix<F>) -> Matrix<F> {
    let f = w.field();
    let (p, q) = w.shape();
    let mut m = Matrix::zeros(f, p * q, p * p + q * q);
    for i in 0..p {
        for j in 0..q {
            let row = i * q + j;
            for k in 0..p {
                let c = f.add(m.get(row, i * p + k), w.get(k, j));
                m.set(row, i * p + k, c);
            }
            for k in 0..q {
                let col = p * p + k * q + j;
                let c = f.sub(m.get(row, col), w.get(i, k));
                m.set(row, col, c);
            }
        }
    }
    m
}

/// Matrix of `(X, Y) ↦ U·X − Y·U` for `U ∈ M_{q,p}`, same coordinates.
pub fn left_sylvester_map<F: Field>(u: &Matrix<F>, p: usize) -> Matrix<F> {
    let f = u.field();
    let q = u.rows();
    let mut m = Matrix::zeros(f, q * p, p * p + q * q);
    for i in 0..q {
        for j in 0..p {
            let row = i * p + j;
            for k in 0..p {
                let col = k * p + j;
                let c = f.add(m.get(row, col), u.get(i, k));
                m.set(row, col, c);
            }
            for k in 0..q {
                let col = p * p + i * q + k;
                let c = f.sub(m.get(row, col), u.get(k, j));
                m.set(row, col, c);
            }
        }
    }
    m
}

fn split_xy<F: Field>(f: &F, v: &Matrix<F>, p: usize, q: usize) -> (Matrix<F>, Matrix<F>) {
    let e = v.entries();
    (
        Matrix::from_vec(f, p, p, e[..p * p].to_vec()).unwrap(),
        Matrix::from_vec(f, q, q, e[p * p..].to_vec()).unwrap(),
    )
}

type BlockPair<F> = (Matrix<F>, Matrix<F>);

/// First kernel basis vector of `map` independent of `(I_p, I_q)`, along
/// with the kernel dimension.
fn kernel_pick<F: Field>(f: &F, map: &Matrix<F>, p: usize, q: usize) -> (usize, Option<BlockPair<F>>) {
    let ker = map.kernel_basis();
    let mut id_vec = Matrix::identity(f, p).entries().to_vec();
    id_vec.extend_from_slice(Matrix::identity(f, q).entries());
    let id_space = Subspace::spanned_by(f, p * p + q * q, [&id_vec[..]]);
    let pick = ker
        .iter()
        .find(|v| !id_space.contains(v.entries()))
        .map(|v| split_xy(f, v, p, q));
    (ker.len(), pick)
}

fn certify_with_idempotent<F: Field>(a: &MatrixAlgebra<F>, e: &Matrix<F>) -> Result<Certificate<F>> {
    let dec = a.peirce_split(e)?;
    let nu = dec.nu();
    if nu[1] == 0 && nu[2] == 0 {
        return finish(a, e.clone(), Route::PeirceDiagonal, 1);
    }
    let (x, y, route) = block_witness(a, &dec)?;
    let f = a.field();
    let w_peirce = Matrix::block_diag(&[&x, &y]);
    let witness = &(&dec.conjugator_inv * &w_peirce) * &dec.conjugator;
    finish(a, witness, route, 1).map_err(|err| match err {
        Error::Internal(msg) => Error::Internal(format!("{msg} (nu = {nu:?}, field {})", f.spec())),
        other => other,
    })
}

type BlockWitness<F> = (Matrix<F>, Matrix<F>, Route);

fn block_witness<F: Field>(a: &MatrixAlgebra<F>, dec: &PeirceDecomposition<F>) -> Result<BlockWitness<F>> {
    let f = a.field().clone();
    let n = a.n();
    let blocks = Blocks {
        p: dec.p,
        q: dec.q,
        a11: dec.a11.clone(),
        a12: dec.a12.clone(),
        a21: dec.a21.clone(),
        a22: dec.a22.clone(),
    };
    let nu = blocks.nu();
    let moves: Vec<Move> = match (a.dim(), nu) {
        (3, [1, 1, 0, 1]) => vec![],
        (3, [1, 0, 1, 1]) => vec![Move::Transpose],
        (4, [2, 1, 0, 1]) | (4, [1, 1, 1, 1]) => vec![],
        (4, [2, 0, 1, 1]) => vec![Move::Transpose],
        (4, [1, 0, 1, 2]) => vec![Move::Swap],
        (4, [1, 1, 0, 2]) => vec![Move::Swap, Move::Transpose],
        (4, [1, 2, 0, 1]) if dec.p <= dec.q => vec![],
        (4, [1, 2, 0, 1]) => vec![Move::Transpose, Move::Swap],
        (4, [1, 0, 2, 1]) if dec.q <= dec.p => vec![Move::Swap],
        (4, [1, 0, 2, 1]) => vec![Move::Transpose],
        (d, _) if d > 4 => {
            return Err(Error::Precondition(format!(
                "dimension {d} with Peirce signature {nu:?} is outside the dim ≤ 4 case analysis"
            )))
        }
        _ => return Err(Error::Internal(format!("unexpected Peirce signature {nu:?}"))),
    };
    let mut b = blocks;
    for mv in &moves {
        b = b.apply(*mv);
    }
    let (x, y, route) = match b.nu() {
        [1, 1, 0, 1] => {
            let (p, q) = (b.p, b.q);
            let map = sylvester_map(&b.a12[0]);
            let (dim, pick) = kernel_pick(&f, &map, p, q);
            let bound = (p as i64 - q as i64).pow(2) as usize + p * q;
            if dim < bound {
                return Err(Error::Internal(format!("kernel dimension {dim} below bound {bound}")));
            }
            match pick {
                Some((x, y)) => (x, y, Route::Dim3Kernel),
                None => {
                    return Err(Error::GenuinelyTrivial(format!(
                        "T_2-type algebra in M_{n}: XC = CY forces scalars"
                    )))
                }
            }
        }
        [2, 1, 0, 1] => {
            let p = b.p;
            let c = b
                .a11
                .iter()
                .find(|m| !m.is_scalar())
                .ok_or_else(|| Error::Internal("A11 has no non-scalar element".into()))?
                .clone();
            let v = &b.a12[0];
            let cv = &c * v;
            let (i, j) = (0..p)
                .flat_map(|i| (0..b.q).map(move |j| (i, j)))
                .find(|&(i, j)| !f.is_zero(v.get(i, j)))
                .unwrap();
            let lambda = f.div(cv.get(i, j), v.get(i, j)).unwrap();
            if cv != v.scale(&lambda) {
                return Err(Error::Internal("C·V is not a multiple of V".into()));
            }
            let x = c.add_scalar(&f.neg(&lambda));
            (x, Matrix::zeros(&f, b.q, b.q), Route::Nu2101)
        }
        [1, 1, 1, 1] => nu_1111(&f, &b)?,
        [1, 2, 0, 1] => nu_1201(&f, &b, n)?,
        other => return Err(Error::Internal(format!("normalization produced {other:?}"))),
    };
    let (x, y) = undo_pair(&moves, x, y);
    Ok((x, y, route))
}

fn undo_pair<F: Field>(moves: &[Move], x: Matrix<F>, y: Matrix<F>) -> (Matrix<F>, Matrix<F>) {
    let mut xy = (x, y);
    for mv in moves.iter().rev() {
        xy = match mv {
            Move::Transpose => (xy.0.transpose(), xy.1.transpose()),
            Move::Swap => (xy.1, xy.0),
        };
    }
    xy
}

fn nu_1111<F: Field>(f: &F, b: &Blocks<F>) -> Result<BlockWitness<F>> {
    let (p, q) = (b.p, b.q);
    let v = &b.a12[0];
    let u = &b.a21[0];
    let vu = v * u;
    let uv = u * v;
    let diag = Matrix::block_diag(&[&vu, &uv]);
    if !diag.is_scalar() {
        return Ok((vu, uv, Route::Nu1111Product));
    }
    let lambda = diag.as_scalar().unwrap();
    if !f.is_zero(&lambda) {
        // With VU = UV = λ·I and λ ≠ 0, XV = VY already implies UX = YU.
        let map = Matrix::vstack(&[&sylvester_map(v), &left_sylvester_map(u, p)]);
        let (_, pick) = kernel_pick(f, &map, p, q);
        return match pick {
            Some((x, y)) => Ok((x, y, Route::Nu1111Invertible)),
            None => Err(Error::GenuinelyTrivial("the algebra is all of M_2".into())),
        };
    }
    let first = |m: &Matrix<F>| -> Result<Matrix<F>> {
        m.kernel_basis()
            .into_iter()
            .next()
            .ok_or_else(|| Error::Internal("expected a nonzero kernel".into()))
    };
    let a_vec = first(u)?; // U a = 0
    let b_vec = first(&v.transpose())?; // bᵗ V = 0
    let c_vec = first(v)?; // V c = 0
    let d_vec = first(&u.transpose())?; // dᵗ U = 0
    let x = &a_vec * &b_vec.transpose();
    let y = &c_vec * &d_vec.transpose();
    Ok((x, y, Route::Nu1111Rank1))
}

fn nu_1201<F: Field>(f: &F, b: &Blocks<F>, n: usize) -> Result<BlockWitness<F>> {
    let (p, q) = (b.p, b.q);
    let (u, v) = (&b.a12[0], &b.a12[1]);
    if p == q {
        let mut tries: Vec<(Matrix<F>, Matrix<F>)> = vec![(u.clone(), v.clone()), (v.clone(), u.clone())];
        let scalars: Vec<F::Elem> = match f.elements() {
            Some(all) => all.into_iter().filter(|t| !f.is_zero(t)).collect(),
            None => (1..=(p as i64 + 1)).map(|t| f.from_i64(t)).collect(),
        };
        for t in scalars {
            tries.push((u + &v.scale(&t), v.clone()));
        }
        for (w0, w1) in tries {
            if let Some(w0_inv) = w0.inverse() {
                let x = &w1 * &w0_inv;
                let y = &w0_inv * &w1;
                return Ok((x, y, Route::Nu1201Even));
            }
        }
    }
    let map = Matrix::vstack(&[&sylvester_map(u), &sylvester_map(v)]);
    let (dim, pick) = kernel_pick(f, &map, p, q);
    let m = [u, v].iter().filter(|w| w.rank() < p).count();
    let bound = (q - p).pow(2) + m;
    if dim < bound {
        return Err(Error::Internal(format!("kernel dimension {dim} below bound {bound}")));
    }
    match pick {
        Some((x, y)) => Ok((x, y, Route::Nu1201Kernel)),
        None => Err(Error::GenuinelyTrivial(format!(
            "Peirce signature (1,2,0,1) with p = {p}, q = {q} in M_{n}: the off-diagonal pencil forces scalars"
        ))),
    }
}

/// Roots of the minimal polynomial lying in the field, ascending.
pub fn eigenvalues_in_field<F: Field>(m: &Matrix<F>) -> Vec<F::Elem> {
    roots_in_field(&m.minimal_polynomial())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn unispectral_examples() {
        let q = Rationals;
        assert_eq!(
            is_unispectral(&Matrix::jordan(&q, 4)).unwrap(),
            Spectrum::Unispectral(q.zero())
        );
        let d = Matrix::from_i64(&q, 2, 2, &[1, 0, 0, 2]);
        assert_eq!(is_unispectral(&d).unwrap(), Spectrum::Split);
        let f3 = PrimeField::new(3).unwrap();
        // companion of x^2 + 1
        let c = Matrix::from_i64(&f3, 2, 2, &[0, -1, 1, 0]);
        assert_eq!(
            is_unispectral(&c).unwrap(),
            Spectrum::Unsplit(Poly::from_i64(&f3, &[1, 0, 1]))
        );
    }

    #[test]
    fn spectral_idempotent_examples() {
        let q = Rationals;
        let d = Matrix::from_i64(&q, 3, 3, &[1, 0, 0, 0, 1, 0, 0, 0, 0]);
        let s = spectral_idempotent(&d).unwrap();
        assert_eq!(s.idempotent, d);
        assert_eq!(s.rank, 2);

        let m = Matrix::from_i64(&q, 2, 2, &[1, 1, 0, 2]);
        let s = spectral_idempotent(&m).unwrap();
        let id = Matrix::identity(&q, 2);
        assert_eq!(&s.idempotent * &s.idempotent, s.idempotent);
        assert!(s.idempotent == &m - &id || s.idempotent == &id.scale(&q.from_i64(2)) - &m);
        assert_eq!(s.witness_poly.eval_matrix(&m), s.idempotent);

        // companion of (x^2 + 1)^2 = x^4 + 2x^2 + 1
        let comp = Matrix::from_i64(&q, 4, 4, &[0, 0, 0, -1, 1, 0, 0, 0, 0, 1, 0, -2, 0, 0, 1, 0]);
        assert_eq!(comp.minimal_polynomial(), Poly::from_i64(&q, &[1, 0, 2, 0, 1]));
        assert!(spectral_idempotent(&comp).is_none());
    }

    #[test]
    fn triangularize_examples() {
        let f3 = PrimeField::new(3).unwrap();
        let jt = Matrix::jordan(&f3, 4).transpose();
        let a = MatrixAlgebra::closure(&f3, 4, &[jt]).unwrap();
        let Triangularization::Triangular { conjugator } = triangularize_unispectral(&a).unwrap() else {
            panic!("closure of a nilpotent is unispectral");
        };
        let inv = conjugator.inverse().unwrap();
        for m in a.basis() {
            assert!(m.conjugate_by(&conjugator, &inv).is_upper_triangular());
        }

        let s = Matrix::from_i64(&f3, 2, 2, &[0, 1, 1, 0]);
        // s^2 = I, so span(I, s) is closed, but s has eigenvalues ±1
        let a = MatrixAlgebra::from_span(&f3, 2, &[Matrix::identity(&f3, 2), s.clone()]).unwrap();
        let Triangularization::NotUnispectral { witness: Some(w) } = triangularize_unispectral(&a).unwrap() else {
            panic!("span(I, s) is not unispectral");
        };
        assert!(!w.is_nilpotent());

        // companion of x^2 + 1 has its eigenvalues outside F_3
        let c = Matrix::from_i64(&f3, 2, 2, &[0, -1, 1, 0]);
        let a = MatrixAlgebra::closure(&f3, 2, &[c]).unwrap();
        assert!(matches!(triangularize_unispectral(&a), Err(Error::Precondition(_))));
    }

    #[test]
    fn unispectral_witness_small() {
        let f5 = PrimeField::new(5).unwrap();
        let e12 = Matrix::unit(&f5, 2, 2, 0, 1);
        let a = MatrixAlgebra::closure(&f5, 2, std::slice::from_ref(&e12)).unwrap();
        let cert = unispectral_centralizer_witness(&a).unwrap();
        assert!(cert.verify(&a));
        assert!(cert.witness == e12 || cert.witness.rank() == 1);
    }

    #[test]
    fn certify_jordan_closure() {
        let q = Rationals;
        let j = Matrix::jordan(&q, 3);
        let a = MatrixAlgebra::closure(&q, 3, std::slice::from_ref(&j)).unwrap();
        let cert = certify_nonscalar_commutant(&a, CERTIFY_SEED).unwrap();
        assert!(cert.verify(&a));
        assert!(a.centralizer().contains(&j));
    }

    #[test]
    fn sylvester_maps_match_direct_products() {
        let f7 = PrimeField::new(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let (p, q) = (2, 3);
        let w = Matrix::from_fn(&f7, p, q, |_, _| f7.random_elem(&mut rng));
        let u = Matrix::from_fn(&f7, q, p, |_, _| f7.random_elem(&mut rng));
        let x = Matrix::from_fn(&f7, p, p, |_, _| f7.random_elem(&mut rng));
        let y = Matrix::from_fn(&f7, q, q, |_, _| f7.random_elem(&mut rng));
        let mut v = x.entries().to_vec();
        v.extend_from_slice(y.entries());
        let v = Matrix::column(&f7, v);
        let direct = &(&x * &w) - &(&w * &y);
        assert_eq!((&sylvester_map(&w) * &v).entries(), direct.entries());
        let direct = &(&u * &x) - &(&y * &u);
        assert_eq!((&left_sylvester_map(&u, p) * &v).entries(), direct.entries());
    }
}
