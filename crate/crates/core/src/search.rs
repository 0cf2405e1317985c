//! Brute-force machinery: exhaustive enumeration of labelled oriented
//! graphs, self-converse filtering, cospectral mate search with isomorphism
//! classification, level-law verification, and a seeded random generator of
//! self-converse graphs for property suites.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::criterion::{snf_pattern_check, totally_isotropic_check};
use crate::error::{Error, Result};
use crate::graph::{anti_automorphism, find_isomorphism, OrientedGraph, Permutation};
use crate::linalg::{determinant, smith_normal_form};
use crate::spectral::{
    generalized_skew_spectrum, recover_q, walk_matrix, GeneralizedSkewSpectrum, RationalOrthogonal,
};

/// Default cap on exhaustive scans; 3^10 = 59049 graphs at n = 5.
pub const DEFAULT_MAX_EXHAUSTIVE: usize = 5;

// 3^(n(n-1)/2) fits u128 only while the exponent stays below 81.
const MAX_ENUMERABLE_N: usize = 13;

/// Number of labelled oriented graphs on n vertices: 3^(n(n-1)/2).
pub fn orientation_count(n: usize) -> u128 {
    assert!(n <= MAX_ENUMERABLE_N, "enumeration index exceeds u128");
    3u128.pow((n * n.saturating_sub(1) / 2) as u32)
}

/// Decodes an enumeration index into a graph. Vertex pairs are taken in
/// lexicographic order with the first pair most significant; per pair the
/// states are 0 = no arc, 1 = arc (u, v), 2 = arc (v, u).
pub fn graph_from_index(n: usize, index: u128) -> OrientedGraph {
    assert!(index < orientation_count(n), "index out of range");
    let m = (n * n.saturating_sub(1) / 2) as u32;
    let mut arcs = Vec::new();
    let mut rest = index;
    let mut t = 0u32;
    for u in 0..n {
        for v in u + 1..n {
            let place = 3u128.pow(m - 1 - t);
            t += 1;
            match rest / place {
                1 => arcs.push((u, v)),
                2 => arcs.push((v, u)),
                _ => {}
            }
            rest %= place;
        }
    }
    OrientedGraph::new(n, arcs).expect("decoded arcs are valid by construction")
}

/// Streams every labelled oriented graph on n vertices exactly once, in
/// lexicographic pair-state order.
pub fn enumerate_oriented_graphs(n: usize) -> impl Iterator<Item = OrientedGraph> {
    (0..orientation_count(n)).map(move |i| graph_from_index(n, i))
}

/// The subsequence of `enumerate_oriented_graphs(n)` that is self-converse.
pub fn enumerate_self_converse(
    n: usize,
    max_n: usize,
) -> Result<impl Iterator<Item = OrientedGraph>> {
    if n > max_n {
        return Err(Error::BoundExceeded { n, bound: max_n });
    }
    Ok(enumerate_oriented_graphs(n).filter(|g| anti_automorphism(g).is_some()))
}

/// Outcome of an exhaustive cospectral-mate scan for one base graph.
///
/// `cospectral_mates` lists every graph on n vertices (the base included)
/// whose generalized skew spectrum equals the base's, in enumeration order.
/// `nonisomorphic_mates` keeps one representative per isomorphism class not
/// containing the base. For a controllable base, `q_evidence` pairs each
/// cospectral mate index with its verified rational orthogonal matrix.
#[derive(Clone, Debug)]
pub struct MateSearchResult {
    pub base: OrientedGraph,
    pub candidates_scanned: u128,
    pub cospectral_mates: Vec<OrientedGraph>,
    pub nonisomorphic_mates: Vec<OrientedGraph>,
    pub q_evidence: Vec<(usize, RationalOrthogonal)>,
}

impl MateSearchResult {
    pub fn to_json(&self) -> Value {
        let mates: Vec<Value> = self
            .cospectral_mates
            .iter()
            .map(|g| Value::Array(g.arcs().iter().map(|&(u, v)| json!([u, v])).collect()))
            .collect();
        json!({
            "n": self.base.n(),
            "scanned": u64::try_from(self.candidates_scanned)
                .expect("scan count fits u64 at supported orders"),
            "cospectral": self.cospectral_mates.len(),
            "nonisomorphic": self.nonisomorphic_mates.len(),
            "mates": mates,
            "levels": self.q_evidence.iter().map(|(_, q)| q.level().to_string()).collect::<Vec<_>>(),
        })
    }
}

fn classify_mates(
    base: &OrientedGraph,
    mates: &[OrientedGraph],
    controllable: bool,
) -> (Vec<OrientedGraph>, Vec<(usize, RationalOrthogonal)>) {
    let mut reps: Vec<OrientedGraph> = Vec::new();
    for mate in mates {
        if find_isomorphism(base, mate).is_some() {
            continue;
        }
        if reps.iter().any(|r| find_isomorphism(r, mate).is_some()) {
            continue;
        }
        reps.push(mate.clone());
    }
    let mut evidence = Vec::new();
    if controllable {
        for (i, mate) in mates.iter().enumerate() {
            if let Ok(Some(q)) = recover_q(base, mate) {
                evidence.push((i, q));
            }
        }
    }
    (reps, evidence)
}

/// Scans every oriented graph on n(g) vertices for generalized-cospectral
/// mates and classifies them by isomorphism.
pub fn find_mates(g: &OrientedGraph, max_n_for_exhaustive: usize) -> Result<MateSearchResult> {
    let n = g.n();
    if n > max_n_for_exhaustive {
        return Err(Error::BoundExceeded {
            n,
            bound: max_n_for_exhaustive,
        });
    }
    let base_spectrum = generalized_skew_spectrum(g);
    let scanned = orientation_count(n);
    let cospectral: Vec<OrientedGraph> = enumerate_oriented_graphs(n)
        .filter(|h| generalized_skew_spectrum(h) == base_spectrum)
        .collect();

    let controllable = !determinant(walk_matrix(&g.skew_adjacency()).matrix())
        .expect("square")
        .is_zero();
    let (nonisomorphic_mates, q_evidence) = classify_mates(g, &cospectral, controllable);

    Ok(MateSearchResult {
        base: g.clone(),
        candidates_scanned: scanned,
        cospectral_mates: cospectral,
        nonisomorphic_mates,
        q_evidence,
    })
}

/// Per-mate outcome of checking the level laws: the level of every recovered
/// Q divides the last invariant factor of W; when the certification pattern
/// holds, the level must additionally be odd, and in fact 1. For every odd
/// prime p dividing a nontrivial level, the columns of (level * Q) must form
/// a totally isotropic set over F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelLawCheck {
    pub mate_index: usize,
    pub level: BigInt,
    pub divides_last_factor: bool,
    pub odd_when_pattern: Option<bool>,
    pub unit_when_pattern: Option<bool>,
    /// (p, verdict) per odd prime p | level.
    pub scaled_columns_isotropic: Vec<(u64, bool)>,
}

impl LevelLawCheck {
    pub fn passed(&self) -> bool {
        self.divides_last_factor
            && self.odd_when_pattern != Some(false)
            && self.unit_when_pattern != Some(false)
            && self.scaled_columns_isotropic.iter().all(|&(_, ok)| ok)
    }
}

/// Checks the level laws for every Q attached to a mate-search result.
pub fn verify_level_laws(
    g: &OrientedGraph,
    result: &MateSearchResult,
) -> Result<Vec<LevelLawCheck>> {
    let w = walk_matrix(&g.skew_adjacency());
    if determinant(w.matrix())?.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let diagonal = smith_normal_form(w.matrix()).full_diagonal();
    let pattern = snf_pattern_check(&diagonal, g.n())?;
    let last = diagonal.last().cloned().unwrap_or_else(BigInt::one);

    result
        .q_evidence
        .iter()
        .map(|(idx, q)| {
            let level = q.level().clone();
            let mut isotropy = Vec::new();
            if !level.is_one() {
                let factorization = crate::linalg::factorize(&level, 1 << 16)?;
                let scaled = q.scaled();
                for (prime, _) in &factorization.factors {
                    let p = u64::try_from(prime).expect("small prime");
                    if p == 2 {
                        continue;
                    }
                    let columns: Vec<Vec<u64>> = (0..scaled.cols())
                        .map(|j| {
                            (0..scaled.rows())
                                .map(|i| {
                                    let pp = BigInt::from(p);
                                    u64::try_from(&((&scaled[(i, j)] % &pp) + &pp) % &pp)
                                        .expect("residue fits u64")
                                })
                                .collect()
                        })
                        .collect();
                    isotropy.push((p, totally_isotropic_check(&columns, p)?));
                }
            }
            Ok(LevelLawCheck {
                mate_index: *idx,
                divides_last_factor: (&last % &level).is_zero(),
                odd_when_pattern: pattern.matches.then(|| level.is_odd()),
                unit_when_pattern: pattern.matches.then(|| level.is_one()),
                scaled_columns_isotropic: isotropy,
                level,
            })
        })
        .collect()
}

fn involution_counts(n: usize) -> Vec<u128> {
    // t(m) = t(m-1) + (m-1) t(m-2); counts involutions on m points
    let mut t = vec![1u128; n + 1];
    for m in 2..=n {
        t[m] = t[m - 1] + (m as u128 - 1) * t[m - 2];
    }
    t
}

/// Samples an involution on 0..n uniformly at random.
fn random_involution(n: usize, rng: &mut ChaCha12Rng) -> Permutation {
    assert!(n <= 48, "involution weights exceed u128 beyond n = 48");
    let t = involution_counts(n);
    let mut images: Vec<usize> = (0..n).collect();
    let mut remaining: Vec<usize> = (0..n).collect();
    while remaining.len() > 1 {
        let m = remaining.len();
        let r = rng.gen_range(0..t[m]);
        if r < t[m - 1] {
            remaining.remove(0); // smallest vertex stays fixed
        } else {
            let idx = 1 + ((r - t[m - 1]) / t[m - 2]) as usize;
            let u = remaining[0];
            let v = remaining[idx];
            images[u] = v;
            images[v] = u;
            remaining.remove(idx);
            remaining.remove(0);
        }
    }
    Permutation::new(images).expect("pairing yields a bijection")
}

/// Generates a random self-converse oriented graph, deterministically from
/// the seed: samples an involution P uniformly, then walks the orbits of P
/// on vertex pairs and places an arc on each orbit with probability
/// numerator/denominator, mirroring it through P so that P is an
/// anti-automorphism of the result by construction.
///
/// Orbit handling: a pair fixed pointwise by P can never carry an arc (the
/// mirrored arc would form a digon); a pair swapped by P is its own mirror
/// and admits either orientation; an orbit of two pairs gets the arc and its
/// mirror placed jointly.
pub fn random_self_converse(
    n: usize,
    numerator: u32,
    denominator: u32,
    seed: u64,
) -> Result<OrientedGraph> {
    if numerator == 0 || numerator >= denominator {
        return Err(Error::InvalidProbability {
            numerator,
            denominator,
        });
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let p = random_involution(n, &mut rng);

    let mut arcs: Vec<(usize, usize)> = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let (mu, mv) = (p.image(u), p.image(v));
            let mirror = (mu.min(mv), mu.max(mv));
            if mirror == (u, v) {
                if p.image(u) == u {
                    continue; // both endpoints fixed: any arc would digon
                }
                // P swaps u and v; the pair is its own mirror
                if rng.gen_range(0..denominator) < numerator {
                    if rng.gen_range(0..2u8) == 0 {
                        arcs.push((u, v));
                    } else {
                        arcs.push((v, u));
                    }
                }
            } else if (u, v) < mirror {
                // orbit of two pairs; place the arc and its mirror jointly
                if rng.gen_range(0..denominator) < numerator {
                    let (a, b) = if rng.gen_range(0..2u8) == 0 {
                        (u, v)
                    } else {
                        (v, u)
                    };
                    arcs.push((a, b));
                    arcs.push((p.image(b), p.image(a)));
                }
            }
        }
    }
    OrientedGraph::new(n, arcs)
}

/// One pattern-matching base inside an exhaustive sweep.
#[derive(Clone, Debug)]
pub struct SweepBase {
    pub index: u128,
    /// Cospectral graphs found for this base, the base included.
    pub cospectral: usize,
    pub nonisomorphic: usize,
    /// Mates whose rational orthogonal matrix was recovered and verified.
    pub q_verified: usize,
    pub all_levels_one: bool,
}

/// Summary of sweeping every labelled graph on n vertices.
#[derive(Clone, Debug)]
pub struct PatternSweep {
    pub n: usize,
    pub total: u128,
    pub self_converse_count: usize,
    pub pattern_count: usize,
    pub bases: Vec<SweepBase>,
}

impl PatternSweep {
    /// True when no pattern-matching base had a nonisomorphic mate, every
    /// mate's Q was recovered, and all levels were 1.
    pub fn clean(&self) -> bool {
        self.bases
            .iter()
            .all(|b| b.nonisomorphic == 0 && b.q_verified == b.cospectral && b.all_levels_one)
    }
}

fn spectrum_key(spec: &GeneralizedSkewSpectrum) -> String {
    let a: Vec<String> = spec.p_s.iter().map(BigInt::to_string).collect();
    let b: Vec<String> = spec.p_js.iter().map(BigInt::to_string).collect();
    format!("{}|{}", a.join(","), b.join(","))
}

/// Exhaustively validates the certification pattern on all labelled graphs
/// of order n: every self-converse base whose walk-matrix invariant factors
/// match the pattern is checked for nonisomorphic cospectral mates and for
/// the levels of all recovered Q matrices. Spectra are computed once and
/// shared across bases; per-base classification matches `find_mates`.
pub fn dgss_pattern_sweep(n: usize, max_n: usize) -> Result<PatternSweep> {
    if n > max_n {
        return Err(Error::BoundExceeded { n, bound: max_n });
    }
    let total = orientation_count(n);
    let graphs: Vec<OrientedGraph> = enumerate_oriented_graphs(n).collect();

    let keys: Vec<String> = graphs
        .par_iter()
        .map(|g| spectrum_key(&generalized_skew_spectrum(g)))
        .collect();

    // (self-converse, matches pattern with nonsingular W) per graph
    let flags: Vec<(bool, bool)> = graphs
        .par_iter()
        .map(|g| {
            if anti_automorphism(g).is_none() {
                return (false, false);
            }
            let w = walk_matrix(&g.skew_adjacency());
            if determinant(w.matrix()).expect("square").is_zero() {
                return (true, false);
            }
            let diagonal = smith_normal_form(w.matrix()).full_diagonal();
            let pattern = snf_pattern_check(&diagonal, n).expect("full diagonal");
            (true, pattern.matches)
        })
        .collect();

    let mut buckets: HashMap<&str, Vec<usize>> = HashMap::new();
    for (i, key) in keys.iter().enumerate() {
        buckets.entry(key).or_default().push(i);
    }

    let base_indices: Vec<usize> = (0..graphs.len()).filter(|&i| flags[i].1).collect();
    let bases: Vec<SweepBase> = base_indices
        .par_iter()
        .map(|&i| {
            let mates: Vec<OrientedGraph> = buckets[keys[i].as_str()]
                .iter()
                .map(|&j| graphs[j].clone())
                .collect();
            let (reps, evidence) = classify_mates(&graphs[i], &mates, true);
            SweepBase {
                index: i as u128,
                cospectral: mates.len(),
                nonisomorphic: reps.len(),
                q_verified: evidence.len(),
                all_levels_one: evidence.iter().all(|(_, q)| q.level().is_one()),
            }
        })
        .collect();

    Ok(PatternSweep {
        n,
        total,
        self_converse_count: flags.iter().filter(|f| f.0).count(),
        pattern_count: bases.len(),
        bases,
    })
}
