//! Built-in sample graphs used by the test suites, the documentation, and
//! the bundled fixture files. Each graph is encoded through its skew
//! adjacency matrix verbatim, so tests can compare against the matrices
//! rather than re-deriving arc lists.

use crate::graph::{OrientedGraph, Permutation, SkewMatrix};

fn from_skew_rows(rows: &[[i64; 5]; 5]) -> OrientedGraph {
    let entries = rows
        .iter()
        .flat_map(|row| row.iter().map(|&x| x as i8))
        .collect();
    SkewMatrix::from_entries(5, entries)
        .expect("fixture is skew")
        .to_graph()
}

fn from_skew_rows7(rows: &[[i64; 7]; 7]) -> OrientedGraph {
    let entries = rows
        .iter()
        .flat_map(|row| row.iter().map(|&x| x as i8))
        .collect();
    SkewMatrix::from_entries(7, entries)
        .expect("fixture is skew")
        .to_graph()
}

/// Skew adjacency matrix of `sample_5a`, row by row.
pub fn sample_5a_skew_rows() -> [[i64; 5]; 5] {
    [
        [0, -1, 0, -1, 0],
        [1, 0, -1, 1, 0],
        [0, 1, 0, -1, -1],
        [1, -1, 1, 0, -1],
        [0, 0, 1, 1, 0],
    ]
}

/// A 5-vertex oriented graph with det W = 500 and invariant factors
/// (1, 1, 5, 10, 10): self-converse and controllable, but outside the
/// certification pattern.
pub fn sample_5a() -> OrientedGraph {
    from_skew_rows(&sample_5a_skew_rows())
}

/// A self-converse 5-vertex oriented graph whose anti-automorphism is the
/// vertex reversal; det W = 64, invariant factors (1, 1, 1, 4, 16).
pub fn sample_5b() -> OrientedGraph {
    from_skew_rows(&[
        [0, 1, -1, 0, -1],
        [-1, 0, 0, 1, 0],
        [1, 0, 0, 0, -1],
        [0, -1, 0, 0, 1],
        [1, 0, 1, -1, 0],
    ])
}

/// The reversal witness of `sample_5b`.
pub fn sample_5b_witness() -> Permutation {
    Permutation::new(vec![4, 3, 2, 1, 0]).unwrap()
}

/// A 7-vertex self-converse oriented graph with walk-matrix invariant
/// factors (1, 1, 1, 1, 2, 2, 18): certified by `dgss_check`.
pub fn sample_7a() -> OrientedGraph {
    from_skew_rows7(&[
        [0, 0, 0, -1, 0, 1, 0],
        [0, 0, 0, 0, 1, 0, -1],
        [0, 0, 0, 1, -1, 1, 0],
        [1, 0, -1, 0, 0, 0, 0],
        [0, -1, 1, 0, 0, 0, 0],
        [-1, 0, -1, 0, 0, 0, 1],
        [0, 1, 0, 0, 0, -1, 0],
    ])
}

/// The anti-automorphism of `sample_7a`: the involution (0 3)(2 5)(4 6).
pub fn sample_7a_witness() -> Permutation {
    Permutation::new(vec![3, 1, 5, 0, 6, 2, 4]).unwrap()
}

/// Another certified 7-vertex graph with the same invariant factors
/// (1, 1, 1, 1, 2, 2, 18) as `sample_7a`.
pub fn sample_7b() -> OrientedGraph {
    from_skew_rows7(&[
        [0, 0, 0, 0, 1, 0, -1],
        [0, 0, 1, -1, 0, 0, 1],
        [0, -1, 0, 0, 1, 1, 0],
        [0, 1, 0, 0, -1, 0, -1],
        [-1, 0, -1, 1, 0, 0, 0],
        [0, 0, -1, 0, 0, 0, 1],
        [1, -1, 0, 1, 0, -1, 0],
    ])
}

/// The anti-automorphism of `sample_7b`: the involution (0 5)(1 3)(2 4).
pub fn sample_7b_witness() -> Permutation {
    Permutation::new(vec![5, 3, 4, 1, 2, 0, 6]).unwrap()
}
