//! Rank-one geometry of `F^2 ⊗ F^3`: the Segre variety, rank distributions,
//! minimal Segre supports, and the shape of the rank-one locus of a subspace.
//!
//! A "line of the first kind" is `F^2 ⊗ v` (common right factor, varying
//! left factor); a "line of the second kind" is `u ⊗ ℓ` (common left
//! factor). This follows the usage of the orbit tables, which the classifier
//! must reproduce.

use std::collections::BTreeMap;
use std::fmt;

use crate::field::{Felt, Field};
use crate::linalg::{projective_tuples, Matrix, Subspace};
use crate::{Error, Result};

/// Dimensions `(left, right)` of the minimal `U ⊗ V` containing a subspace:
/// `U` is spanned by all column spaces of basis matrices, `V` by all rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SegreSupport {
    pub left: usize,
    pub right: usize,
}

/// The geometric shape of the rank-one locus of a line or plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LocusShape {
    Empty,
    Finite { points: u64, collinear: bool },
    LineFirstKind,
    LineSecondKind,
    LinePlusPoint,
    TwoLines,
    Conic,
    FullPlane,
}

impl fmt::Display for LocusShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocusShape::Empty => write!(f, "EMPTY"),
            LocusShape::Finite { points, collinear } => {
                let c = if *collinear { "collinear" } else { "non-collinear" };
                write!(f, "FINITE({points}, {c})")
            }
            LocusShape::LineFirstKind => write!(f, "LINE_FIRST_KIND"),
            LocusShape::LineSecondKind => write!(f, "LINE_SECOND_KIND"),
            LocusShape::LinePlusPoint => write!(f, "LINE_PLUS_POINT"),
            LocusShape::TwoLines => write!(f, "TWO_LINES"),
            LocusShape::Conic => write!(f, "CONIC"),
            LocusShape::FullPlane => write!(f, "FULL_PLANE"),
        }
    }
}

impl serde::Serialize for LocusShape {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The rank-one points of a line or plane together with its shape.
#[derive(Debug, Clone)]
pub struct Rank1Locus {
    pub points: Vec<Matrix>,
    pub shape: LocusShape,
}

/// Every projective rank-one point of `F^2 ⊗ F^3` as a normalized 2×3
/// matrix: exactly `(q+1)(q^2+q+1)` of them, one per pair of projective
/// points of `PG(F^2) × PG(F^3)`.
pub fn rank1_points(f: &Field) -> Vec<Matrix> {
    let lefts = projective_tuples(f, 2);
    let rights = projective_tuples(f, 3);
    let mut out = Vec::with_capacity(lefts.len() * rights.len());
    for a in &lefts {
        for b in &rights {
            let mut m = Matrix::zeros(f, 2, 3);
            for i in 0..2 {
                for j in 0..3 {
                    m.set(i, j, f.mul(a[i], b[j]));
                }
            }
            out.push(m);
        }
    }
    out
}

/// Counts `(n1, n2)` of projective rank-one and rank-two points of a
/// subspace of `F^2 ⊗ F^3`; their sum is `(q^d - 1)/(q - 1)`.
pub fn rank_distribution(f: &Field, s: &Subspace) -> Result<(u64, u64)> {
    if s.ambient() != 6 {
        return Err(Error::AmbientMismatch {
            expected: 6,
            got: s.ambient(),
        });
    }
    let mut n1 = 0;
    let mut n2 = 0;
    for p in s.points(f) {
        match Matrix::from_flat(2, 3, &p).rank(f) {
            1 => n1 += 1,
            2 => n2 += 1,
            r => unreachable!("a nonzero 2x3 matrix has rank 1 or 2, got {r}"),
        }
    }
    Ok((n1, n2))
}

/// Rank multiset of the projective points of a subspace of `F^rows ⊗ F^cols`.
pub fn rank_distribution_general(
    f: &Field,
    s: &Subspace,
    rows: usize,
    cols: usize,
) -> Result<BTreeMap<usize, u64>> {
    if s.ambient() != rows * cols {
        return Err(Error::AmbientMismatch {
            expected: rows * cols,
            got: s.ambient(),
        });
    }
    let mut dist = BTreeMap::new();
    for p in s.points(f) {
        let r = Matrix::from_flat(rows, cols, &p).rank(f);
        *dist.entry(r).or_insert(0) += 1;
    }
    Ok(dist)
}

/// The minimal pair `(dim U, dim V)` with the subspace inside `U ⊗ V`.
pub fn segre_support(f: &Field, s: &Subspace) -> Result<SegreSupport> {
    if s.ambient() != 6 {
        return Err(Error::AmbientMismatch {
            expected: 6,
            got: s.ambient(),
        });
    }
    let mats = s.basis_matrices(2, 3);
    let mut col_vecs = Vec::new();
    let mut row_vecs = Vec::new();
    for m in &mats {
        for j in 0..3 {
            col_vecs.push(m.col(j));
        }
        for i in 0..2 {
            row_vecs.push(m.row(i).to_vec());
        }
    }
    let left = Subspace::from_vectors(f, 2, &col_vecs)?.dim();
    let right = Subspace::from_vectors(f, 3, &row_vecs)?.dim();
    Ok(SegreSupport { left, right })
}

/// Projective direction of the column space of a rank-one 2×3 matrix,
/// normalized so the first nonzero coordinate is 1.
fn left_factor(f: &Field, m: &Matrix) -> Vec<Felt> {
    for j in 0..3 {
        let col = m.col(j);
        if col.iter().any(|e| e.code() != 0) {
            return normalize(f, col);
        }
    }
    unreachable!("rank-one matrix has a nonzero column")
}

/// Projective direction of the row space of a rank-one 2×3 matrix.
fn right_factor(f: &Field, m: &Matrix) -> Vec<Felt> {
    for i in 0..2 {
        let row = m.row(i).to_vec();
        if row.iter().any(|e| e.code() != 0) {
            return normalize(f, row);
        }
    }
    unreachable!("rank-one matrix has a nonzero row")
}

fn normalize(f: &Field, mut v: Vec<Felt>) -> Vec<Felt> {
    let lead = v.iter().position(|e| e.code() != 0).expect("nonzero vector");
    let inv = f.inv(v[lead]).expect("nonzero entry");
    if inv != f.one() {
        for e in v.iter_mut() {
            *e = f.mul(*e, inv);
        }
    }
    v
}

fn all_collinear(f: &Field, pts: &[Vec<Felt>]) -> bool {
    if pts.len() <= 2 {
        return true;
    }
    Subspace::from_vectors(f, 6, pts).expect("shared ambient").dim() <= 2
}

/// Classify the rank-one locus of a line or plane of `F^2 ⊗ F^3`.
///
/// Full rank-one lines inside the locus are detected exactly: a projective
/// line through two locus points is full iff it carries q+1 locus points.
/// A conic is recognized structurally — q+1 points, no three collinear,
/// support 2×2 — which at q = 2 still separates it from a triangle with
/// support 2×3.
pub fn rank1_locus(f: &Field, s: &Subspace) -> Result<Rank1Locus> {
    let dim = s.dim();
    if dim != 2 && dim != 3 {
        return Err(Error::LocusDim(dim));
    }
    if s.ambient() != 6 {
        return Err(Error::AmbientMismatch {
            expected: 6,
            got: s.ambient(),
        });
    }
    let q = f.q();
    let pts: Vec<Vec<Felt>> = s
        .points(f)
        .into_iter()
        .filter(|p| Matrix::from_flat(2, 3, p).rank(f) == 1)
        .collect();
    let k = pts.len() as u64;

    let shape = if k == 0 {
        LocusShape::Empty
    } else if dim == 3 && k == q * q + q + 1 {
        LocusShape::FullPlane
    } else {
        // collect the full rank-one lines inside the locus
        let mut full_lines: Vec<Subspace> = Vec::new();
        for i in 0..pts.len() {
            for j in (i + 1)..pts.len() {
                let line = Subspace::from_vectors(f, 6, &[pts[i].clone(), pts[j].clone()])?;
                if full_lines.contains(&line) {
                    continue;
                }
                let on = pts.iter().filter(|p| line.contains(f, p)).count() as u64;
                if on == q + 1 {
                    full_lines.push(line);
                }
            }
        }
        match (k, full_lines.len()) {
            (k, 1) if k == q + 1 => {
                // the locus is one full line on the Segre variety
                let mats: Vec<Matrix> = pts.iter().map(|p| Matrix::from_flat(2, 3, p)).collect();
                let r0 = right_factor(f, &mats[0]);
                let l0 = left_factor(f, &mats[0]);
                if mats.iter().all(|m| right_factor(f, m) == r0) {
                    LocusShape::LineFirstKind
                } else if mats.iter().all(|m| left_factor(f, m) == l0) {
                    LocusShape::LineSecondKind
                } else {
                    unreachable!("a rank-one line has a common left or right factor")
                }
            }
            (k, 2) if k == 2 * q + 1 => LocusShape::TwoLines,
            (k, 1) if k == q + 2 => LocusShape::LinePlusPoint,
            (k, 0) if k == q + 1 => {
                let sup = segre_support(f, s)?;
                if sup.left == 2 && sup.right == 2 {
                    LocusShape::Conic
                } else {
                    LocusShape::Finite {
                        points: k,
                        collinear: all_collinear(f, &pts),
                    }
                }
            }
            _ => LocusShape::Finite {
                points: k,
                collinear: all_collinear(f, &pts),
            },
        }
    };

    Ok(Rank1Locus {
        points: pts.iter().map(|p| Matrix::from_flat(2, 3, p)).collect(),
        shape,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank1_point_counts() {
        for (p, h, q) in [(2u64, 1u32, 2u64), (3, 1, 3), (2, 2, 4), (5, 1, 5), (7, 1, 7)] {
            let f = Field::new(p, h).unwrap();
            let pts = rank1_points(&f);
            assert_eq!(pts.len() as u64, (q + 1) * (q * q + q + 1));
            for m in &pts {
                assert_eq!(m.rank(&f), 1);
            }
            // no two projectively equal: all normalized and distinct
            let set: std::collections::HashSet<Vec<u64>> = pts
                .iter()
                .map(|m| m.entries().iter().map(|e| e.code()).collect())
                .collect();
            assert_eq!(set.len(), pts.len());
        }
    }

    #[test]
    fn distribution_of_zero_subspace() {
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(rank_distribution(&f2, &Subspace::zero(6)).unwrap(), (0, 0));
    }

    #[test]
    fn distribution_sums_to_point_count() {
        let f3 = Field::new(3, 1).unwrap();
        let s = Subspace::from_vectors(
            &f3,
            6,
            &[
                vec![f3.one(), f3.zero(), f3.zero(), f3.zero(), f3.one(), f3.zero()],
                vec![f3.zero(), f3.one(), f3.zero(), f3.zero(), f3.zero(), f3.one()],
            ],
        )
        .unwrap();
        let (n1, n2) = rank_distribution(&f3, &s).unwrap();
        assert_eq!(n1 + n2, 4); // (3^2 - 1)/2
    }

    #[test]
    fn support_examples() {
        let f2 = Field::new(2, 1).unwrap();
        // whole first row: support (1,3)
        let top = Subspace::from_vectors(
            &f2,
            6,
            &[
                vec![f2.one(), f2.zero(), f2.zero(), f2.zero(), f2.zero(), f2.zero()],
                vec![f2.zero(), f2.one(), f2.zero(), f2.zero(), f2.zero(), f2.zero()],
                vec![f2.zero(), f2.zero(), f2.one(), f2.zero(), f2.zero(), f2.zero()],
            ],
        )
        .unwrap();
        let sup = segre_support(&f2, &top).unwrap();
        assert_eq!((sup.left, sup.right), (1, 3));
        assert_eq!(
            segre_support(&f2, &Subspace::zero(6)).unwrap(),
            SegreSupport { left: 0, right: 0 }
        );
    }

    #[test]
    fn locus_requires_line_or_plane() {
        let f2 = Field::new(2, 1).unwrap();
        assert!(matches!(
            rank1_locus(&f2, &Subspace::zero(6)),
            Err(Error::LocusDim(0))
        ));
    }

    #[test]
    fn representative_distributions_and_supports() {
        use crate::orbit::{canonical_rep, OrbitLabel};
        let f3 = Field::new(3, 1).unwrap();
        let o5 = canonical_rep(&f3, OrbitLabel::O5);
        assert_eq!(rank_distribution(&f3, &o5).unwrap(), (2, 2));

        let f2 = Field::new(2, 1).unwrap();
        let o17 = canonical_rep(&f2, OrbitLabel::O17);
        assert_eq!(rank_distribution(&f2, &o17).unwrap(), (0, 7));

        let o6 = canonical_rep(&f2, OrbitLabel::O6);
        let sup6 = segre_support(&f2, &o6).unwrap();
        assert_eq!((sup6.left, sup6.right), (2, 2));
        let o7 = canonical_rep(&f2, OrbitLabel::O7);
        let sup7 = segre_support(&f2, &o7).unwrap();
        assert_eq!((sup7.left, sup7.right), (2, 3));
        let o3 = canonical_rep(&f2, OrbitLabel::O3);
        let sup3 = segre_support(&f2, &o3).unwrap();
        assert_eq!((sup3.left, sup3.right), (1, 3));
    }
}
