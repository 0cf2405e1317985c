//! Exact-arithmetic spectral characterization of oriented graphs.
//!
//! An oriented graph is an orientation of a simple graph; its skew adjacency
//! matrix S has `S[i][j] = 1` for an arc i->j, -1 for the reverse, 0 otherwise.
//! The generalized skew spectrum of a graph is the pair of spectra of S and
//! J - S, and a graph is DGSS (determined by its generalized skew spectrum)
//! when every generalized-cospectral oriented graph is isomorphic to it.
//!
//! The crate decides, in exact arbitrary-precision arithmetic, whether a
//! self-converse oriented graph is certified DGSS by an arithmetic condition
//! on its walk matrix W = [e, Se, ..., S^(n-1)e]: the Smith normal form of W
//! must equal diag(1, ..., 1, 2, ..., 2, 2d) with ceil(n/2) ones and d odd.
//! Around that decision procedure it provides:
//!
//! - [`graph`]: oriented graphs, converses, isomorphism and
//!   anti-automorphism search;
//! - [`linalg`]: fraction-free determinants, Smith normal forms with
//!   unimodular witnesses, characteristic polynomials, rank and kernels over
//!   prime fields, exact rational solves, trial-division factorization;
//! - [`spectral`]: walk matrices, generalized skew spectra, and recovery of
//!   the rational orthogonal matrix linking cospectral graphs;
//! - [`criterion`]: the certification pipeline and the per-prime anisotropy
//!   audit of the kernel of W^T;
//! - [`search`]: exhaustive enumeration, cospectral-mate search, level-law
//!   verification, and a seeded random generator of self-converse graphs.
//!
//! No floating point is used anywhere.
//!
//! ```
//! use skewspec_core::{dgss_check, parse_oriented_graph, Verdict};
//!
//! // cyclically oriented triangle: self-converse, but Se = 0
//! let triangle = parse_oriented_graph("3\n0 1\n1 2\n2 0\n").unwrap();
//! assert_eq!(dgss_check(&triangle, false).verdict, Verdict::SingularWalkMatrix);
//!
//! // a graph whose walk matrix has the certifying invariant factors
//! let report = dgss_check(&skewspec_core::samples::sample_7a(), false);
//! assert_eq!(report.verdict, Verdict::Certified);
//! assert_eq!(report.snf.last().unwrap().to_string(), "18");
//! ```

pub mod criterion;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod samples;
pub mod search;
pub mod spectral;

pub use criterion::{
    anisotropy_audit, dgss_check, dgss_check_with_bound, snf_pattern_check,
    totally_isotropic_check, AnisotropyAudit, AuditVerdict, CriterionReport, SnfPatternResult,
    Verdict,
};
pub use error::{Error, Result};
pub use graph::{
    anti_automorphism, find_isomorphism, parse_oriented_graph, OrientedGraph, Permutation,
    SkewMatrix,
};
pub use linalg::{
    char_poly, determinant, factorize, is_prime, kernel_mod_p, rank, rank_mod_p, smith_normal_form,
    solve_rational, IntegerMatrix, PrimeFactorization, RationalMatrix, SmithDecomposition,
    DEFAULT_FACTOR_BOUND,
};
pub use search::{
    dgss_pattern_sweep, enumerate_oriented_graphs, enumerate_self_converse, find_mates,
    graph_from_index, orientation_count, random_self_converse, verify_level_laws, LevelLawCheck,
    MateSearchResult, PatternSweep, SweepBase, DEFAULT_MAX_EXHAUSTIVE,
};
pub use spectral::{
    generalized_skew_spectrum, is_generalized_cospectral, level_of, recover_q, walk_matrix,
    GeneralizedSkewSpectrum, RationalOrthogonal, WalkMatrix,
};
