//! Tensor rank.
//!
//! The rank of a tensor equals the minimal number of rank-one 2×3 matrices
//! whose span contains its third contraction space. Two routes are
//! provided: a brute-force oracle that searches witness sets over the full
//! rank-one point list (gated to q <= 3), and the closed-form table per
//! orbit, exact for all q. The two are cross-validated against each other;
//! the q = 2 exceptions (o17 and o11_perp jump from 4 to 5) emerge from the
//! oracle search, not from special-casing it.

use crate::field::{Felt, Field};
use crate::linalg::{rref_rows, Matrix, Subspace};
use crate::orbit::OrbitLabel;
use crate::segre::rank1_points;
use crate::tensor::Tensor;
use crate::{Error, Result};

/// Whether a rank value came from the brute-force search or the table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankSource {
    Oracle,
    Table,
}

impl RankSource {
    pub fn name(self) -> &'static str {
        match self {
            RankSource::Oracle => "oracle",
            RankSource::Table => "table",
        }
    }
}

/// A computed rank, with a spanning witness in oracle mode.
#[derive(Debug, Clone)]
pub struct RankResult {
    pub rank: usize,
    /// Rank-one matrices whose span contains the subspace; length = rank,
    /// empty when the value comes from the table.
    pub witness: Vec<Matrix>,
    pub source: RankSource,
}

const ORACLE_MAX_Q: u64 = 3;

/// Append a vector to an RREF row set, returning the new set if the span
/// grew and None if the vector was already in the span.
fn extend_span(f: &Field, rows: &[Vec<Felt>], v: &[Felt]) -> Option<Vec<Vec<Felt>>> {
    let mut next: Vec<Vec<Felt>> = rows.to_vec();
    next.push(v.to_vec());
    rref_rows(f, &mut next);
    if next.len() > rows.len() {
        Some(next)
    } else {
        None
    }
}

/// Depth-first search for the lexicographically first k-subset of rank-one
/// points whose span contains the target. `u` spans the chosen points, `w`
/// spans the chosen points together with the target; the search prunes as
/// soon as the remaining picks cannot close the gap between them.
fn search_witness(
    f: &Field,
    pts: &[Vec<Felt>],
    k: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    u: &[Vec<Felt>],
    w: &[Vec<Felt>],
) -> Option<Vec<usize>> {
    let t = chosen.len();
    let deficit = w.len() - u.len();
    if deficit > k - t {
        return None;
    }
    if t == k {
        return if deficit == 0 { Some(chosen.clone()) } else { None };
    }
    for i in start..pts.len() {
        if pts.len() - i < k - t {
            break;
        }
        // points already in the span cannot appear in a minimal witness
        let Some(u2) = extend_span(f, u, &pts[i]) else {
            continue;
        };
        let w2 = extend_span(f, w, &pts[i]).unwrap_or_else(|| w.to_vec());
        chosen.push(i);
        if let Some(found) = search_witness(f, pts, k, i + 1, chosen, &u2, &w2) {
            return Some(found);
        }
        chosen.pop();
    }
    None
}

/// Minimal number of projective rank-one points whose span contains the
/// subspace, with the lexicographically first witness. The search ascends
/// from k = dim(S): at k = dim(S) only points inside S can work (an equal
/// dimension superspace is S itself), for larger k the whole rank-one point
/// set is searched with span-deficit pruning.
pub fn subspace_rank(f: &Field, s: &Subspace) -> Result<RankResult> {
    if s.ambient() != 6 {
        return Err(Error::AmbientMismatch {
            expected: 6,
            got: s.ambient(),
        });
    }
    if f.q() > ORACLE_MAX_Q {
        return Err(Error::Budget(format!(
            "rank oracle is limited to q <= {ORACLE_MAX_Q}, got q = {}",
            f.q()
        )));
    }
    let d = s.dim();
    if d == 0 {
        return Ok(RankResult {
            rank: 0,
            witness: Vec::new(),
            source: RankSource::Oracle,
        });
    }

    let mut pts: Vec<Vec<Felt>> = rank1_points(f)
        .iter()
        .map(|m| m.entries().to_vec())
        .collect();
    pts.sort();

    // k = d: S must be spanned by its own rank-one points.
    let inside: Vec<Vec<Felt>> = pts.iter().filter(|p| s.contains(f, p)).cloned().collect();
    let mut span: Vec<Vec<Felt>> = Vec::new();
    let mut witness_idx: Vec<usize> = Vec::new();
    for (i, p) in inside.iter().enumerate() {
        if let Some(next) = extend_span(f, &span, p) {
            span = next;
            witness_idx.push(i);
            if span.len() == d {
                break;
            }
        }
    }
    if span.len() == d {
        return Ok(RankResult {
            rank: d,
            witness: witness_idx
                .into_iter()
                .map(|i| Matrix::from_flat(2, 3, &inside[i]))
                .collect(),
            source: RankSource::Oracle,
        });
    }

    let target: Vec<Vec<Felt>> = s.basis().to_vec();
    for k in (d + 1)..=6 {
        let mut chosen = Vec::with_capacity(k);
        if let Some(found) = search_witness(f, &pts, k, 0, &mut chosen, &[], &target) {
            return Ok(RankResult {
                rank: k,
                witness: found
                    .into_iter()
                    .map(|i| Matrix::from_flat(2, 3, &pts[i]))
                    .collect(),
                source: RankSource::Oracle,
            });
        }
    }
    unreachable!("the full space is spanned by six rank-one points")
}

/// Rank of a tensor: the rank of its third contraction space.
pub fn tensor_rank(f: &Field, t: &Tensor) -> Result<RankResult> {
    subspace_rank(f, &t.contraction_space(f, 3)?)
}

/// Closed-form tensor rank of an orbit. Exact for every finite field; at
/// q = 2 the orbits o17 and o11_perp have rank 5 instead of 4.
pub fn rank_of_label(label: OrbitLabel, f: &Field) -> usize {
    use OrbitLabel::*;
    if f.q() == 2 && (label == O17 || label == O11Perp) {
        return 5;
    }
    match label {
        O0 => 0,
        O1 => 1,
        O2 | O4 | O4T | O5 => 2,
        O3 | O6 | O7 | O7T | O8 | O10 | O11 | O11T | O14 => 3,
        O9 | O12 | O13 | O15 | O16 | O17 | O2Perp | O4TPerp | O5Perp | O7Perp | O11Perp => 4,
        O1Perp | O4Perp | O6Perp | O10Perp => 5,
        O0Perp => 6,
    }
}
