//! Exact congruence-orbit toolkit for tuples of symmetric and
//! alternating matrices.
//!
//! Everything is generic over the scalar backend: exact rationals or an
//! iterated quadratic extension tower over a small odd prime (default 5),
//! which has effective square roots and exhaustive enumeration. On top of
//! the scalar layer sit Laurent polynomials in one variable (orbit-closure
//! curves), dense exact matrices, tuple-rank search with certificates,
//! free-subspace search, congruence normal forms, and the limit-curve
//! witness pipeline with its independent verifier.

pub mod codec;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod free;
pub mod laurent;
pub mod matrix;
pub mod normal_form;
pub mod tower;
pub mod tuple;
pub mod witness;

pub use codec::{
    certificate_to_json, field_from_json, laurent_from_json, laurent_matrix_from_json,
    laurent_matrix_to_json, laurent_to_json, matrix_from_json, matrix_to_json, point_from_json,
    point_to_json, target_from_json, target_to_json, verify_outcome_to_json,
    witness_bundle_from_json, witness_bundle_to_json, witness_from_json, witness_to_json,
    AnyField, JsonField,
};
pub use error::{Error, Result};
pub use field::{Field, Rationals, Ring};
pub use free::{
    find_free_subspace, find_free_vector, images_matrix, quotient_tuple, verify_free,
    FreeSubspace, QuotientData, DEFAULT_RETRIES,
};
pub use laurent::{LaurentPoly, LaurentRing};
pub use matrix::{basis_completion, congruence_apply, sym_skew_decompose, GivenPosition, Matrix};
pub use normal_form::{
    block_normal_form, canonical_form, closure_scaling_curve, rank_r_zero_corner_witness,
    skew_canonical, symmetric_canonical, BlockPattern, Canonicalized, Expected, MatKind,
};
pub use tower::{Tower, TowerElem};
pub use tuple::{
    minimal_truncation, rank_at, tuple_rank_exhaustive, tuple_rank_heuristic_mod_primes,
    MatrixTuple, RankCertificate, RankValue,
};
pub use witness::{
    eval_matrix_at, eval_matrix_at_zero, phi_parametrize, required_rank, to_laurent,
    verify_witness, witness_full, witness_sym, TargetCorner, TuplePoint, VerifyOutcome,
    WitnessCurve,
};

/// Exact rational scalar.
pub type Rat = num::BigRational;

/// Dense matrix over the rationals.
pub type QMatrix = Matrix<Rationals>;

/// Dense matrix over the extension tower.
pub type TMatrix = Matrix<Tower>;

/// Dense matrix of Laurent polynomials over scalar backend `F`.
pub type LMatrix<F> = Matrix<LaurentRing<F>>;
