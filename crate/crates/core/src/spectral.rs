//! Walk matrices, generalized skew spectra, and recovery of the rational
//! orthogonal matrix linking cospectral graphs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{OrientedGraph, SkewMatrix};
use crate::linalg::{char_poly, determinant, solve_rational, IntegerMatrix, RationalMatrix};

/// The walk matrix [e, Se, S^2 e, ..., S^(n-1) e], e the all-one vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkMatrix {
    matrix: IntegerMatrix,
}

impl WalkMatrix {
    pub fn matrix(&self) -> &IntegerMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> IntegerMatrix {
        self.matrix
    }

    /// Column k, which equals S^k e.
    pub fn column(&self, k: usize) -> Vec<BigInt> {
        (0..self.matrix.rows())
            .map(|i| self.matrix[(i, k)].clone())
            .collect()
    }
}

pub fn walk_matrix(s: &SkewMatrix) -> WalkMatrix {
    let n = s.n();
    let mut matrix = IntegerMatrix::zeros(n, n);
    let mut col = vec![BigInt::one(); n];
    for k in 0..n {
        for i in 0..n {
            matrix[(i, k)] = col[i].clone();
        }
        if k + 1 < n {
            col = s.apply(&col);
        }
    }
    WalkMatrix { matrix }
}

/// The exact coefficient pair (char poly of S, char poly of J - S), both
/// monic of degree n, listed degree-descending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedSkewSpectrum {
    pub p_s: Vec<BigInt>,
    pub p_js: Vec<BigInt>,
}

pub fn generalized_skew_spectrum(g: &OrientedGraph) -> GeneralizedSkewSpectrum {
    let n = g.n();
    let s = g.skew_adjacency().to_integer_matrix();
    let j_minus_s = {
        let mut m = IntegerMatrix::all_ones(n);
        for i in 0..n {
            for j in 0..n {
                let x = &m[(i, j)] - &s[(i, j)];
                m[(i, j)] = x;
            }
        }
        m
    };
    GeneralizedSkewSpectrum {
        p_s: char_poly(&s).expect("square"),
        p_js: char_poly(&j_minus_s).expect("square"),
    }
}

/// Exact equality of both characteristic-polynomial coefficient lists.
pub fn is_generalized_cospectral(g: &OrientedGraph, h: &OrientedGraph) -> bool {
    if g.n() != h.n() {
        return false;
    }
    generalized_skew_spectrum(g) == generalized_skew_spectrum(h)
}

/// A rational orthogonal matrix together with its level: the least positive
/// integer k such that kQ is integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalOrthogonal {
    q: RationalMatrix,
    level: BigInt,
}

impl RationalOrthogonal {
    /// Verifies Q^T Q = I and Qe = e, then computes the level.
    pub fn new(q: RationalMatrix) -> Result<Self> {
        if !q.is_square() {
            return Err(Error::NonSquare {
                rows: q.rows(),
                cols: q.cols(),
            });
        }
        if !q.transpose().mul(&q).is_identity() {
            return Err(Error::DimensionMismatch(
                "matrix is not orthogonal".to_string(),
            ));
        }
        let n = q.rows();
        for i in 0..n {
            let row_sum: num_rational::BigRational = (0..n).map(|j| q[(i, j)].clone()).sum();
            if !row_sum.is_one() {
                return Err(Error::DimensionMismatch(
                    "matrix does not fix the all-one vector".to_string(),
                ));
            }
        }
        let level = level_of(&q);
        Ok(Self { q, level })
    }

    pub fn q(&self) -> &RationalMatrix {
        &self.q
    }

    pub fn level(&self) -> &BigInt {
        &self.level
    }

    /// The integral matrix level * Q.
    pub fn scaled(&self) -> IntegerMatrix {
        self.q
            .scale_to_integer(&self.level)
            .expect("level clears all denominators")
    }

    /// A level-1 regular orthogonal matrix is a permutation matrix; returns
    /// its image vector when that is the case.
    pub fn as_permutation_images(&self) -> Option<Vec<usize>> {
        self.q.as_permutation_images()
    }
}

/// The least common multiple of all entry denominators.
pub fn level_of(q: &RationalMatrix) -> BigInt {
    let mut level = BigInt::one();
    for i in 0..q.rows() {
        for j in 0..q.cols() {
            level = level.lcm(q[(i, j)].denom());
        }
    }
    level
}

/// Recovers the unique rational orthogonal matrix Q with Q^T S(g) Q = S(h)
/// and Qe = e, when g and h are generalized cospectral and g has a
/// nonsingular walk matrix.
///
/// Returns Ok(None) when the verification fails (the graphs are not
/// generalized cospectral), and an error when W(g) is singular, where this
/// route defines no unique Q.
pub fn recover_q(g: &OrientedGraph, h: &OrientedGraph) -> Result<Option<RationalOrthogonal>> {
    let n = g.n();
    if n != h.n() {
        return Ok(None);
    }
    let sg = g.skew_adjacency();
    let wg = walk_matrix(&sg);
    if determinant(wg.matrix())?.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let wh = walk_matrix(&h.skew_adjacency());

    // Q^T W(g) = W(h), so Q solves W(g)^T Q = W(h)^T.
    let q = solve_rational(&wg.matrix().transpose(), &wh.matrix().transpose())?;

    let Ok(ortho) = RationalOrthogonal::new(q) else {
        return Ok(None);
    };

    // Conjugation check in integer arithmetic: (lQ)^T S(g) (lQ) = l^2 S(h).
    let scaled = ortho.scaled();
    let lhs = scaled.transpose().mul(&sg.to_integer_matrix()).mul(&scaled);
    let level_sq = ortho.level() * ortho.level();
    let sh = h.skew_adjacency();
    for i in 0..n {
        for j in 0..n {
            if lhs[(i, j)] != &level_sq * BigInt::from(sh.get(i, j)) {
                return Ok(None);
            }
        }
    }
    Ok(Some(ortho))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{anti_automorphism, Permutation};
    use crate::linalg::{rank, rank_mod_p};
    use crate::samples;

    fn graph(n: usize, arcs: &[(usize, usize)]) -> OrientedGraph {
        OrientedGraph::new(n, arcs.iter().copied()).unwrap()
    }

    fn coeffs(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn walk_matrix_of_single_arc() {
        let w = walk_matrix(&graph(2, &[(0, 1)]).skew_adjacency());
        assert_eq!(
            w.matrix(),
            &IntegerMatrix::from_rows(&[vec![1, 1], vec![1, -1]])
        );
    }

    #[test]
    fn walk_matrix_second_column_is_row_sums() {
        let w = walk_matrix(&samples::sample_5a().skew_adjacency());
        let se: Vec<i64> = w
            .column(1)
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect();
        assert_eq!(se, vec![-2, 1, -1, 0, 2]);
    }

    #[test]
    fn walk_matrix_of_empty_graph() {
        let w = walk_matrix(&OrientedGraph::empty(3).skew_adjacency());
        let mut expect = IntegerMatrix::zeros(3, 3);
        for i in 0..3 {
            expect[(i, 0)] = BigInt::one();
        }
        assert_eq!(w.matrix(), &expect);
    }

    #[test]
    fn spectrum_of_single_arc() {
        let spec = generalized_skew_spectrum(&graph(2, &[(0, 1)]));
        assert_eq!(spec.p_s, coeffs(&[1, 0, 1])); // x^2 + 1
        assert_eq!(spec.p_js, coeffs(&[1, -2, 1])); // (x - 1)^2
    }

    #[test]
    fn spectrum_of_empty_two_vertex_graph() {
        let spec = generalized_skew_spectrum(&OrientedGraph::empty(2));
        assert_eq!(spec.p_s, coeffs(&[1, 0, 0])); // x^2
        assert_eq!(spec.p_js, coeffs(&[1, -2, 0])); // x(x - 2)
    }

    #[test]
    fn sample_5a_spectrum_matches_fixture() {
        let spec = generalized_skew_spectrum(&samples::sample_5a());
        assert_eq!(spec.p_s, coeffs(&[1, 0, 7, 0, 11, 0]));
        assert_eq!(spec.p_js, coeffs(&[1, -5, 7, -25, 11, -25]));
    }

    #[test]
    fn cospectrality_basic_cases() {
        let g = graph(2, &[(0, 1)]);
        assert!(is_generalized_cospectral(&g, &g));
        assert!(!is_generalized_cospectral(&g, &OrientedGraph::empty(2)));
        assert!(!is_generalized_cospectral(&g, &OrientedGraph::empty(3)));
    }

    #[test]
    fn converse_is_always_cospectral() {
        for g in [
            samples::sample_5a(),
            samples::sample_7a(),
            graph(4, &[(0, 1), (1, 2), (2, 0), (0, 3)]),
        ] {
            assert!(is_generalized_cospectral(&g, &g.converse()));
        }
    }

    #[test]
    fn recover_q_of_graph_with_itself_is_identity() {
        let g = samples::sample_5a();
        let q = recover_q(&g, &g).unwrap().unwrap();
        assert!(q.q().is_identity());
        assert!(q.level().is_one());
    }

    #[test]
    fn recover_q_of_relabeling_is_the_permutation() {
        let g = samples::sample_5a(); // controllable: det W = 500
        let p = Permutation::new(vec![2, 0, 4, 1, 3]).unwrap();
        let h = g.relabel(&p);
        let q = recover_q(&g, &h).unwrap().unwrap();
        assert!(q.level().is_one());
        assert_eq!(q.as_permutation_images().unwrap(), p.images());
    }

    #[test]
    fn recover_q_absent_for_non_cospectral() {
        let g = graph(2, &[(0, 1)]);
        let h = OrientedGraph::empty(2);
        assert_eq!(recover_q(&g, &h).unwrap(), None);
    }

    #[test]
    fn recover_q_rejects_singular_walk_matrix() {
        let g = graph(3, &[(0, 1), (1, 2), (2, 0)]);
        assert!(matches!(recover_q(&g, &g), Err(Error::SingularMatrix)));
    }

    #[test]
    fn walk_transfer_solve_recovers_the_witness() {
        // the anti-automorphism P satisfies P W(g) = W(converse), so the
        // transposed solve reproduces it entry for entry
        let g = samples::sample_5b();
        let w = walk_matrix(&g.skew_adjacency());
        let wc = walk_matrix(&g.converse().skew_adjacency());
        let x = crate::linalg::solve_rational(&w.matrix().transpose(), &wc.matrix().transpose())
            .unwrap()
            .transpose();
        let p = samples::sample_5b_witness().matrix();
        assert_eq!(x, RationalMatrix::from_integer(&p));
    }

    #[test]
    fn recovered_q_transfers_walk_columns() {
        let g = samples::sample_5a();
        let p = Permutation::new(vec![4, 0, 3, 1, 2]).unwrap();
        let h = g.relabel(&p);
        let q = recover_q(&g, &h).unwrap().unwrap();
        let qt = q.q().transpose();
        let wg = RationalMatrix::from_integer(walk_matrix(&g.skew_adjacency()).matrix());
        let wh = RationalMatrix::from_integer(walk_matrix(&h.skew_adjacency()).matrix());
        assert_eq!(qt.mul(&wg), wh);
    }

    #[test]
    fn level_of_known_matrices() {
        use num_rational::BigRational;
        let perm = RationalMatrix::identity(4);
        assert!(level_of(&perm).is_one());

        let rat = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        let rows = [[1, 1], [1, -1]];
        let half = RationalMatrix::from_fn(2, 2, |i, j| rat(rows[i][j], 2));
        assert_eq!(level_of(&half), BigInt::from(2));

        let thirds = [[2, 2, -1], [-1, 2, 2], [2, -1, 2]];
        let q = RationalMatrix::from_fn(3, 3, |i, j| rat(thirds[i][j], 3));
        assert_eq!(level_of(&q), BigInt::from(3));
        // this one is also regular orthogonal, so the constructor accepts it
        let ortho = RationalOrthogonal::new(q).unwrap();
        assert_eq!(ortho.level(), &BigInt::from(3));
        assert!(ortho.as_permutation_images().is_none());
    }

    #[test]
    fn alternating_walk_identity_for_witnesses() {
        // P S^k e = (-1)^k S^k e for every anti-automorphism witness P
        for g in [
            samples::sample_5b(),
            samples::sample_7a(),
            samples::sample_7b(),
        ] {
            let p = anti_automorphism(&g).unwrap();
            let w = walk_matrix(&g.skew_adjacency());
            for k in 0..g.n() {
                let col = w.column(k);
                let permuted: Vec<BigInt> = (0..g.n()).map(|i| col[p.image(i)].clone()).collect();
                let expect: Vec<BigInt> = col
                    .iter()
                    .map(|x| if k % 2 == 0 { x.clone() } else { -x.clone() })
                    .collect();
                assert_eq!(permuted, expect, "k = {k}");
            }
        }
    }

    #[test]
    fn involution_rank_split_for_controllable_witnesses() {
        // rank(I - P) and rank(I + P) follow the parity formulas, over the
        // rationals and modulo odd primes
        for g in [
            samples::sample_5a(),
            samples::sample_5b(),
            samples::sample_7a(),
        ] {
            let n = g.n();
            let p = anti_automorphism(&g).unwrap().matrix();
            let id = IntegerMatrix::identity(n);
            let minus = IntegerMatrix::from_fn(n, n, |i, j| &id[(i, j)] - &p[(i, j)]);
            let plus = IntegerMatrix::from_fn(n, n, |i, j| &id[(i, j)] + &p[(i, j)]);
            // n/2 twice for even n, (n-1)/2 and (n+1)/2 for odd n
            let (want_minus, want_plus) = (n / 2, n.div_ceil(2));
            assert_eq!(rank(&minus), want_minus);
            assert_eq!(rank(&plus), want_plus);
            for prime in [3u64, 5, 7, 11] {
                assert_eq!(rank_mod_p(&minus, prime).unwrap(), want_minus);
                assert_eq!(rank_mod_p(&plus, prime).unwrap(), want_plus);
            }
        }
    }
}
