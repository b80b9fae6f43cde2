//! Exact linear algebra over `Q`, `F_p` and `F_{p^d}` for studying matrix
//! subalgebras with a trivial centralizer.
//!
//! Everything is generic over a [`Field`] context value, so prime and
//! extension fields can be chosen at runtime. The main entry points:
//!
//! - [`MatrixAlgebra`]: closure, centralizer, Peirce decomposition;
//! - [`certify_nonscalar_commutant`]: a non-scalar commuting matrix for
//!   algebras of dimension at most 4 (except the odd-size exceptional shape);
//! - [`classify_dim4`]: conjugacy to `H_{2p+1}` or its transpose;
//! - [`kronecker_reduce`]: reduction of a full-rank `n × (n+1)` pencil;
//! - [`run_tn_campaign`] and [`check_rank_bounds`]: randomized experiments.
//!
//! ```
//! use commutant::{gen_h, Rationals};
//!
//! let h5 = gen_h(&Rationals, 2).unwrap();
//! assert_eq!(h5.dim(), 4);
//! assert!(h5.is_trivial_centralizer());
//! ```

pub mod algebra;
pub mod classify;
pub mod error;
pub mod factor;
pub mod field;
pub mod lift;
pub mod matrix;
pub mod pencil;
pub mod poly;
pub mod structure;
pub mod text;
pub mod verify;

pub use algebra::{MatrixAlgebra, PeirceDecomposition};
pub use classify::{classify_dim4, find_half_rank_idempotent, gen_f, gen_h, gen_t, ClassificationResult, Orientation};
pub use error::{Error, Result};
pub use field::{AnyField, ExtensionField, Field, FieldSpec, PrimeField, Rationals};
pub use matrix::{Matrix, Subspace};
pub use pencil::{forbidden_block_detect, is_fullrank_pencil, kronecker_reduce, Pencil, PencilReduction};
pub use poly::Poly;
pub use structure::{
    certify_nonscalar_commutant, is_unispectral, spectral_idempotent, triangularize_unispectral, Certificate, Route,
    Spectrum,
};
pub use verify::{check_rank_bounds, run_tn_campaign, sample_algebra, CampaignConfig, CampaignReport};

pub type QMatrix = Matrix<Rationals>;
pub type FpMatrix = Matrix<PrimeField>;
pub type FqMatrix = Matrix<ExtensionField>;
pub type QAlgebra = MatrixAlgebra<Rationals>;
pub type FpAlgebra = MatrixAlgebra<PrimeField>;
pub type FqAlgebra = MatrixAlgebra<ExtensionField>;
pub type QPoly = Poly<Rationals>;
pub type FpPoly = Poly<PrimeField>;
