//! Exact combinatorial and algebraic tools for curves on closed oriented
//! surfaces and for 3-manifolds given by genus-k handle data.
//!
//! - [`words`]: cyclic words in the canonical generators and their
//!   abelianization.
//! - [`intersection`]: the intersection pairing, the intersection degree
//!   bound and change-of-basis matrices.
//! - [`diagram`]: signed crossing diagrams of two curves and bigon removal.
//! - [`heegaard`]: fundamental-group presentations and block classification
//!   of attaching data.
//! - [`cobordism`]: bookkeeping rewrites of elementary cobordism chains.

pub mod cobordism;
pub mod diagram;
pub mod heegaard;
pub mod intersection;
pub mod linalg;
pub mod words;

pub use intersection::{
    basis_matrix, degree_lower_bound, inverse_block_matrix, linear_expression, mu_coords, pairing,
    verify_basis, BasisCandidate, BasisMatrix, BasisVerdict, IntersectionError, MuCoords,
};
pub use words::{
    abelianize, concat, cyclic_reduce, free_reduce, invert, parse_word, parse_word_with,
    AbelianCoords, CurveWord, Kind, Letter, ParseOptions, Syllable, WordError,
};
