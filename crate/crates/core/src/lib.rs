//! Hilbert functions, plane fat-point linear systems and maximal-rank
//! verdicts for artinian quotients of `K[x,y,z]` by powers of general
//! linear forms.
//!
//! Two independent engines compute every graded dimension:
//!
//! * the combinatorial engine translates quotients into fat-point linear
//!   systems ([`inverse_systems`]) and measures those by Cremona and Bezout
//!   reductions with a certificate trace ([`reduction`]);
//! * the modular [`oracle`] builds Macaulay and derivative-conditions
//!   matrices from seeded random specializations over a large prime field
//!   and takes exact ranks.
//!
//! [`lefschetz`] sits on top: it classifies exponent sequences, evaluates the
//! closed form for the critical quotient dimension, and checks that
//! multiplication by the square of a general linear form has maximal rank in
//! every degree.
//!
//! Everything is a pure function over immutable values; all types are
//! `Send + Sync` and results are deterministic given the inputs (and the
//! seed, for the oracle).

pub mod combinatorics;
mod error;
pub mod inverse_systems;
pub mod lefschetz;
pub mod oracle;
pub mod reduction;

pub use combinatorics::{
    binom_safe, expected_dimension, pos_part, virtual_dimension, LinearSystem, PowerSequence,
};
pub use error::Error;
pub use inverse_systems::{
    apply_duality, ci_hilbert_function, hilbert_function, quotient_dim, QuotientQuery,
};
pub use lefschetz::{
    case_i_proof_ledger, case_ii_analysis, compute_case_data, line_base_multiplicities,
    predicted_critical_dim, rank_profile, verify_theorem, CaseData, CaseKind, Engine, RankReport,
    RankRow, Verdict,
};
pub use oracle::{
    monomial_basis, oracle_linsys_dim, oracle_map_rank, oracle_quotient_dim, DenseMatrixModP,
    PrimeFieldConfig,
};
pub use reduction::{
    bezout_five_step, bezout_two_step, cremona_step, dim_linear_system, is_standard, normalize,
    DimResult, DimValue, ReductionStep, ReductionTrace, StepKind,
};
