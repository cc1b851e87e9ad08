//! Orbit classification of subspaces of `F^2 ⊗ F^3` under the action of
//! `GL(2,q) × GL(3,q)`, acting on 2×3 matrices by `M ↦ g M hᵀ`.
//!
//! There are 31 orbits across dimensions 0..=6: one of dimension 0, two of
//! points, seven of lines, eleven of planes, and their perps. Dimensions 4
//! and 5 are classified through the perp correspondence, which pairs orbits
//! in complementary dimensions; on planes the pairing fixes every orbit
//! except the pair `o12 ↔ o11T`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::field::{Felt, Field};
use crate::linalg::{Matrix, Subspace};
use crate::segre::{rank1_locus, rank_distribution, segre_support, LocusShape};
use crate::tensor::Tensor;
use crate::{Error, Result};

/// The 31 orbit labels, declared in dimension order. `T` marks the partner
/// of an orbit under the factor-swapping transpose; `Perp` marks the
/// orthogonal-complement orbit of a lower-dimensional one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[allow(clippy::upper_case_acronyms)]
pub enum OrbitLabel {
    O0,
    O1,
    O4,
    O2,
    O4T,
    O5,
    O6,
    O7,
    O10,
    O11,
    O3,
    O7T,
    O8,
    O9,
    O11T,
    O12,
    O13,
    O14,
    O15,
    O16,
    O17,
    O2Perp,
    O4TPerp,
    O5Perp,
    O6Perp,
    O7Perp,
    O10Perp,
    O11Perp,
    O1Perp,
    O4Perp,
    O0Perp,
}

use OrbitLabel::*;

/// All labels in canonical (dimension-major) order.
pub const ALL_LABELS: [OrbitLabel; 31] = [
    O0, O1, O4, O2, O4T, O5, O6, O7, O10, O11, O3, O7T, O8, O9, O11T, O12, O13, O14, O15, O16,
    O17, O2Perp, O4TPerp, O5Perp, O6Perp, O7Perp, O10Perp, O11Perp, O1Perp, O4Perp, O0Perp,
];

/// Number of orbits per subspace dimension 0..=6.
pub const LABELS_PER_DIM: [usize; 7] = [1, 2, 7, 11, 7, 2, 1];

impl OrbitLabel {
    /// The fixed subspace dimension of this orbit.
    pub fn dim(self) -> usize {
        match self {
            O0 => 0,
            O1 | O4 => 1,
            O2 | O4T | O5 | O6 | O7 | O10 | O11 => 2,
            O3 | O7T | O8 | O9 | O11T | O12 | O13 | O14 | O15 | O16 | O17 => 3,
            O2Perp | O4TPerp | O5Perp | O6Perp | O7Perp | O10Perp | O11Perp => 4,
            O1Perp | O4Perp => 5,
            O0Perp => 6,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            O0 => "o0",
            O1 => "o1",
            O4 => "o4",
            O2 => "o2",
            O4T => "o4T",
            O5 => "o5",
            O6 => "o6",
            O7 => "o7",
            O10 => "o10",
            O11 => "o11",
            O3 => "o3",
            O7T => "o7T",
            O8 => "o8",
            O9 => "o9",
            O11T => "o11T",
            O12 => "o12",
            O13 => "o13",
            O14 => "o14",
            O15 => "o15",
            O16 => "o16",
            O17 => "o17",
            O2Perp => "o2_perp",
            O4TPerp => "o4T_perp",
            O5Perp => "o5_perp",
            O6Perp => "o6_perp",
            O7Perp => "o7_perp",
            O10Perp => "o10_perp",
            O11Perp => "o11_perp",
            O1Perp => "o1_perp",
            O4Perp => "o4_perp",
            O0Perp => "o0_perp",
        }
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OrbitLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<OrbitLabel> {
        ALL_LABELS
            .iter()
            .copied()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown orbit label {s:?}")))
    }
}

impl serde::Serialize for OrbitLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// The involution induced on labels by the orthogonal complement: it swaps
/// complementary dimensions and fixes every plane orbit except o12 ↔ o11T.
pub fn perp_label(l: OrbitLabel) -> OrbitLabel {
    match l {
        O0 => O0Perp,
        O0Perp => O0,
        O1 => O1Perp,
        O1Perp => O1,
        O4 => O4Perp,
        O4Perp => O4,
        O2 => O2Perp,
        O2Perp => O2,
        O4T => O4TPerp,
        O4TPerp => O4T,
        O5 => O5Perp,
        O5Perp => O5,
        O6 => O6Perp,
        O6Perp => O6,
        O7 => O7Perp,
        O7Perp => O7,
        O10 => O10Perp,
        O10Perp => O10,
        O11 => O11Perp,
        O11Perp => O11,
        O12 => O11T,
        O11T => O12,
        O3 => O3,
        O7T => O7T,
        O8 => O8,
        O9 => O9,
        O13 => O13,
        O14 => O14,
        O15 => O15,
        O16 => O16,
        O17 => O17,
    }
}

/// Merge a label into its representative under the larger group that also
/// permutes equal-dimension factors. Only r = 2 (factors 1 and 3 swap,
/// merging o2 and o4) and r = 3 (factors 2 and 3 swap, merging each
/// transpose pair) differ from the base group.
pub fn g_label(l: OrbitLabel, r: usize) -> Result<OrbitLabel> {
    if l.dim() > r {
        return Err(Error::LabelBeyondR {
            label: l.name().to_string(),
            dim: l.dim(),
            r,
        });
    }
    Ok(match (l, r) {
        (O4, 2) => O2,
        (O4T, 3) => O4,
        (O7T, 3) => O7,
        (O11T, 3) => O11,
        _ => l,
    })
}

/// The complete invariant computed by the classifier. It is constant on
/// orbits and separates all orbits of equal dimension; dimensions 4 and 5
/// embed the invariant of their perp.
#[derive(Debug, Clone, serde::Serialize)]
pub struct InvariantSignature {
    pub dim: usize,
    pub rank_distribution: (u64, u64),
    pub segre_support: (usize, usize),
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shape: Option<LocusShape>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line_labels: Option<BTreeMap<OrbitLabel, u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perp: Option<Box<InvariantSignature>>,
}

/// Compute the invariant signature of a subspace of `F^2 ⊗ F^3`.
pub fn signature(f: &Field, s: &Subspace) -> Result<InvariantSignature> {
    if s.ambient() != 6 {
        return Err(Error::AmbientMismatch {
            expected: 6,
            got: s.ambient(),
        });
    }
    let dim = s.dim();
    let rd = rank_distribution(f, s)?;
    let sup = segre_support(f, s)?;
    let shape = if dim == 2 || dim == 3 {
        Some(rank1_locus(f, s)?.shape)
    } else {
        None
    };
    // Planes with a single rank-one point split into two orbits, told apart
    // by the types of the constant-rank lines they contain.
    let line_labels = if dim == 3
        && matches!(shape, Some(LocusShape::Finite { points: 1, .. }))
    {
        let mut map: BTreeMap<OrbitLabel, u64> = BTreeMap::new();
        for line in s.hyperplanes(f) {
            *map.entry(classify_subspace(f, &line)?).or_insert(0) += 1;
        }
        Some(map)
    } else {
        None
    };
    let perp = if dim == 4 || dim == 5 {
        Some(Box::new(signature(f, &s.perp(f))?))
    } else {
        None
    };
    Ok(InvariantSignature {
        dim,
        rank_distribution: rd,
        segre_support: (sup.left, sup.right),
        shape,
        line_labels,
        perp,
    })
}

/// Read the orbit label off an invariant signature.
pub fn classify_from_signature(sig: &InvariantSignature) -> OrbitLabel {
    let (n1, n2) = sig.rank_distribution;
    let sup = sig.segre_support;
    match sig.dim {
        0 => O0,
        6 => O0Perp,
        1 => {
            if n1 == 1 {
                O1
            } else {
                O4
            }
        }
        2 => {
            if n2 == 0 {
                // the whole line lies on the Segre variety
                match sup {
                    (1, 2) => O2,
                    (2, 1) => O4T,
                    other => unreachable!("rank-one line with support {other:?}"),
                }
            } else {
                match (n1, sup) {
                    (2, _) => O5,
                    (1, (2, 2)) => O6,
                    (1, (2, 3)) => O7,
                    (0, (2, 2)) => O10,
                    (0, (2, 3)) => O11,
                    other => unreachable!("line with invariants {other:?}"),
                }
            }
        }
        3 => match sig.shape.expect("planes carry a locus shape") {
            LocusShape::FullPlane => O3,
            LocusShape::TwoLines => O7T,
            LocusShape::LinePlusPoint => O8,
            LocusShape::Conic => O11T,
            LocusShape::LineFirstKind => O12,
            LocusShape::LineSecondKind => O9,
            LocusShape::Finite {
                points: 3,
                collinear: false,
            } => O14,
            LocusShape::Finite { points: 2, .. } => O13,
            LocusShape::Finite { points: 1, .. } => {
                let lines = sig
                    .line_labels
                    .as_ref()
                    .expect("one-point planes carry line labels");
                if lines.contains_key(&O10) {
                    O15
                } else if lines.contains_key(&O11) {
                    O16
                } else {
                    unreachable!("one-point plane without constant-rank lines")
                }
            }
            LocusShape::Empty => O17,
            other => unreachable!("plane with locus shape {other}"),
        },
        4 | 5 => {
            let p = sig.perp.as_ref().expect("dims 4 and 5 carry a perp signature");
            perp_label(classify_from_signature(p))
        }
        d => unreachable!("subspace dimension {d} out of range"),
    }
}

/// Map a subspace of `F^2 ⊗ F^3` to its orbit label.
pub fn classify_subspace(f: &Field, s: &Subspace) -> Result<OrbitLabel> {
    Ok(classify_from_signature(&signature(f, s)?))
}

/// Map a tensor to the orbit label of its third contraction space. Orbits
/// of tensors correspond exactly to labels of dimension at most r.
///
/// Note the canonical tensors of the families o4, o7, o11 have their third
/// contraction in the transpose-partner subspace orbit (o4T, o7T, o11T),
/// and vice versa.
pub fn classify_tensor(f: &Field, t: &Tensor) -> Result<OrbitLabel> {
    classify_subspace(f, &t.contraction_space(f, 3)?)
}

/// First (u, v) in lexicographic code order with v ≠ 0 and the binary
/// quadratic form `x² - uv·xy - v·y²` anisotropic. Equivalently the
/// polynomial `λ² - uv·λ - v` has no root, which with v ≠ 0 also forces
/// `v·λ² + uv·λ - 1 ≠ 0` for all λ. Such parameters exist over every finite
/// field; v = 0 is excluded because it degenerates the representative.
pub fn find_o10_params(f: &Field) -> (Felt, Felt) {
    for u in f.elements() {
        for v in f.elements() {
            if v == f.zero() {
                continue;
            }
            let c0 = f.neg(v);
            let c1 = f.neg(f.mul(u, v));
            if !f.poly_has_root(&[c0, c1, f.one()]) {
                debug_assert!(!f.poly_has_root(&[f.neg(f.one()), f.mul(u, v), v]));
                return (u, v);
            }
        }
    }
    unreachable!("anisotropic binary quadratics exist over every finite field")
}

/// First (α, β, γ) in lexicographic code order with `λ³ + γλ² - βλ + α`
/// rootless. Rootless cubics exist over every finite field.
pub fn find_o17_params(f: &Field) -> (Felt, Felt, Felt) {
    for a in f.elements() {
        for b in f.elements() {
            for c in f.elements() {
                if !f.poly_has_root(&[a, f.neg(b), c, f.one()]) {
                    return (a, b, c);
                }
            }
        }
    }
    unreachable!("rootless cubics exist over every finite field")
}

fn span6(f: &Field, mats: &[Matrix]) -> Subspace {
    let vecs: Vec<Vec<Felt>> = mats.iter().map(|m| m.entries().to_vec()).collect();
    Subspace::from_vectors(f, 6, &vecs).expect("2x3 matrices flatten to ambient 6")
}

/// The canonical representative subspace of an orbit, instantiated over the
/// given field. Parameters of the constant-rank families are filled by the
/// deterministic scans, so representatives are reproducible bit-for-bit.
pub fn canonical_rep(f: &Field, label: OrbitLabel) -> Subspace {
    let m = |rows: [[i64; 3]; 2]| Matrix::from_ints(f, rows);
    match label {
        O0 => Subspace::zero(6),
        O0Perp => Subspace::full(f, 6),
        O1 => span6(f, &[m([[1, 0, 0], [0, 0, 0]])]),
        O4 => span6(f, &[m([[1, 0, 0], [0, 1, 0]])]),
        O2 => span6(f, &[m([[1, 0, 0], [0, 0, 0]]), m([[0, 1, 0], [0, 0, 0]])]),
        O4T => span6(f, &[m([[1, 0, 0], [0, 0, 0]]), m([[0, 0, 0], [1, 0, 0]])]),
        O5 => span6(f, &[m([[1, 0, 0], [0, 0, 0]]), m([[0, 0, 0], [0, 1, 0]])]),
        O6 => span6(f, &[m([[1, 0, 0], [0, 1, 0]]), m([[0, 0, 0], [1, 0, 0]])]),
        O7 => span6(f, &[m([[1, 0, 0], [0, 0, 1]]), m([[0, 1, 0], [0, 0, 0]])]),
        O10 => {
            let (u, v) = find_o10_params(f);
            let mut x = m([[1, 0, 0], [0, 1, 0]]);
            x.set(0, 1, u);
            let mut y = m([[0, 1, 0], [0, 0, 0]]);
            y.set(1, 0, v);
            span6(f, &[x, y])
        }
        O11 => span6(f, &[m([[1, 0, 0], [0, 1, 0]]), m([[0, 1, 0], [0, 0, 1]])]),
        O3 => span6(
            f,
            &[
                m([[1, 0, 0], [0, 0, 0]]),
                m([[0, 1, 0], [0, 0, 0]]),
                m([[0, 0, 1], [0, 0, 0]]),
            ],
        ),
        O7T => span6(
            f,
            &[
                m([[1, 0, 0], [0, 0, 0]]),
                m([[0, 0, 0], [1, 0, 0]]),
                m([[0, 0, 0], [0, 1, 0]]),
            ],
        ),
        O8 => span6(
            f,
            &[
                m([[1, 0, 0], [0, 0, 0]]),
                m([[0, 0, 0], [0, 1, 0]]),
                m([[0, 0, 0], [0, 0, 1]]),
            ],
        ),
        O9 => span6(
            f,
            &[
                m([[1, 0, 0], [0, 0, 1]]),
                m([[0, 0, 0], [1, 0, 0]]),
                m([[0, 0, 0], [0, 1, 0]]),
            ],
        ),
        O11T => span6(
            f,
            &[
                m([[1, 0, 0], [0, 0, 0]]),
                m([[0, 1, 0], [1, 0, 0]]),
                m([[0, 0, 0], [0, 1, 0]]),
            ],
        ),
        O12 => span6(
            f,
            &[
                m([[1, 0, 0], [0, 0, 1]]),
                m([[0, 1, 0], [0, 0, 0]]),
                m([[0, 0, 0], [0, 1, 0]]),
            ],
        ),
        O13 => span6(
            f,
            &[
                m([[1, 0, 0], [0, 1, 0]]),
                m([[0, 1, 0], [0, 0, 0]]),
                m([[0, 0, 0], [0, 0, 1]]),
            ],
        ),
        O14 => span6(
            f,
            &[
                m([[1, 0, 0], [0, 0, 0]]),
                m([[0, 1, 0], [0, 1, 0]]),
                m([[0, 0, 0], [0, 0, 1]]),
            ],
        ),
        O15 => {
            let (u, v) = find_o10_params(f);
            let mut x = m([[1, 0, 0], [0, 1, 0]]);
            x.set(0, 1, u);
            let mut y = m([[0, 1, 0], [0, 0, 0]]);
            y.set(1, 0, v);
            let z = m([[0, 0, 1], [0, 0, 0]]);
            span6(f, &[x, y, z])
        }
        O16 => span6(
            f,
            &[
                m([[1, 0, 0], [0, 1, 0]]),
                m([[0, 1, 0], [0, 0, 1]]),
                m([[0, 0, 1], [0, 0, 0]]),
            ],
        ),
        O17 => {
            let (a, b, c) = find_o17_params(f);
            let x = m([[1, 0, 0], [0, 1, 0]]);
            let y = m([[0, 1, 0], [0, 0, 1]]);
            let mut z = m([[0, 0, 1], [0, 0, 0]]);
            z.set(1, 0, a);
            z.set(1, 1, b);
            z.set(1, 2, c);
            span6(f, &[x, y, z])
        }
        O2Perp => span6(
            f,
            &[
                m([[0, 0, 1], [0, 0, 0]]),
                m([[0, 0, 0], [1, 0, 0]]),
                m([[0, 0, 0], [0, 1, 0]]),
                m([[0, 0, 0], [0, 0, 1]]),
            ],
        ),
        O4TPerp => span6(
            f,
            &[
                m([[0, 1, 0], [0, 0, 0]]),
                m([[0, 0, 1], [0, 0, 0]]),
                m([[0, 0, 0], [0, 1, 0]]),
                m([[0, 0, 0], [0, 0, 1]]),
            ],
        ),
        O5Perp => span6(
            f,
            &[
                m([[0, 1, 0], [0, 0, 0]]),
                m([[0, 0, 1], [0, 0, 0]]),
                m([[0, 0, 0], [1, 0, 0]]),
                m([[0, 0, 0], [0, 0, 1]]),
            ],
        ),
        O6Perp => span6(
            f,
            &[
                m([[1, 0, 0], [0, -1, 0]]),
                m([[0, 1, 0], [0, 0, 0]]),
                m([[0, 0, 1], [0, 0, 0]]),
                m([[0, 0, 0], [0, 0, 1]]),
            ],
        ),
        O7Perp => span6(
            f,
            &[
                m([[1, 0, 0], [0, 0, -1]]),
                m([[0, 0, 1], [0, 0, 0]]),
                m([[0, 0, 0], [1, 0, 0]]),
                m([[0, 0, 0], [0, 1, 0]]),
            ],
        ),
        O10Perp => {
            let (u, v) = find_o10_params(f);
            let x = m([[1, 0, 0], [0, -1, 0]]);
            let mut y = Matrix::zeros(f, 2, 3);
            y.set(0, 1, f.neg(v));
            y.set(1, 0, f.one());
            y.set(1, 1, f.mul(u, v));
            let z = m([[0, 0, 1], [0, 0, 0]]);
            let w = m([[0, 0, 0], [0, 0, 1]]);
            span6(f, &[x, y, z, w])
        }
        O11Perp => span6(
            f,
            &[
                m([[1, 0, 0], [0, -1, 0]]),
                m([[0, 1, 0], [0, 0, -1]]),
                m([[0, 0, 1], [0, 0, 0]]),
                m([[0, 0, 0], [1, 0, 0]]),
            ],
        ),
        O1Perp => span6(
            f,
            &[
                m([[0, 1, 0], [0, 0, 0]]),
                m([[0, 0, 1], [0, 0, 0]]),
                m([[0, 0, 0], [1, 0, 0]]),
                m([[0, 0, 0], [0, 1, 0]]),
                m([[0, 0, 0], [0, 0, 1]]),
            ],
        ),
        O4Perp => span6(
            f,
            &[
                m([[1, 0, 0], [0, -1, 0]]),
                m([[0, 1, 0], [0, 0, 0]]),
                m([[0, 0, 1], [0, 0, 0]]),
                m([[0, 0, 0], [1, 0, 0]]),
                m([[0, 0, 0], [0, 0, 1]]),
            ],
        ),
    }
}

fn mat3_from_ints(f: &Field, rows: [[i64; 3]; 3]) -> Matrix {
    Matrix::from_ints(f, rows)
}

/// Assemble the tensor `e1 ⊗ M + e2 ⊗ N` for 3×3 matrices M, N; slice k has
/// top row equal to column k of M and bottom row equal to column k of N.
fn tensor_from_pair(f: &Field, m: &Matrix, n: &Matrix) -> Tensor {
    let mut slices = Vec::with_capacity(3);
    for k in 0..3 {
        let mut s = Matrix::zeros(f, 2, 3);
        for j in 0..3 {
            s.set(0, j, m.get(j, k));
            s.set(1, j, n.get(j, k));
        }
        slices.push(s);
    }
    Tensor::new(slices).expect("three 2x3 slices")
}

/// The canonical tensor of an orbit of `F^2 ⊗ F^3 ⊗ F^3`, for the 21 labels
/// of dimension at most 3. The transpose families are obtained by applying
/// the factor swap to their base form. Returns None for perp labels.
pub fn canonical_tensor(f: &Field, label: OrbitLabel) -> Option<Tensor> {
    let g = |rows| mat3_from_ints(f, rows);
    let zero3 = Matrix::zeros(f, 3, 3);
    let id3 = Matrix::identity(f, 3);
    let pair = |m: &Matrix, n: &Matrix| tensor_from_pair(f, m, n);
    let t = match label {
        O0 => Tensor::zero(f, 3),
        O1 => pair(&g([[1, 0, 0], [0, 0, 0], [0, 0, 0]]), &zero3),
        O2 => pair(&g([[1, 0, 0], [0, 1, 0], [0, 0, 0]]), &zero3),
        O3 => pair(&id3, &zero3),
        O4 => pair(
            &g([[1, 0, 0], [0, 0, 0], [0, 0, 0]]),
            &g([[0, 1, 0], [0, 0, 0], [0, 0, 0]]),
        ),
        O5 => pair(
            &g([[1, 0, 0], [0, 0, 0], [0, 0, 0]]),
            &g([[0, 0, 0], [0, 1, 0], [0, 0, 0]]),
        ),
        O6 => pair(
            &g([[1, 0, 0], [0, 0, 0], [0, 0, 0]]),
            &g([[0, 1, 0], [1, 0, 0], [0, 0, 0]]),
        ),
        O7 => pair(
            &g([[0, 0, 1], [0, 0, 0], [0, 0, 0]]),
            &g([[1, 0, 0], [0, 1, 0], [0, 0, 0]]),
        ),
        O8 => pair(
            &g([[1, 0, 0], [0, 0, 0], [0, 0, 0]]),
            &g([[0, 0, 0], [0, 1, 0], [0, 0, 1]]),
        ),
        O9 => pair(&g([[0, 0, 0], [0, 0, 0], [1, 0, 0]]), &id3),
        O10 => {
            let (u, v) = find_o10_params(f);
            let mut m = g([[1, 0, 0], [0, 1, 0], [0, 0, 0]]);
            m.set(0, 1, u);
            let mut n = g([[0, 1, 0], [0, 0, 0], [0, 0, 0]]);
            n.set(1, 0, v);
            pair(&m, &n)
        }
        O11 => pair(
            &g([[1, 0, 0], [0, 1, 0], [0, 0, 0]]),
            &g([[0, 1, 0], [0, 0, 1], [0, 0, 0]]),
        ),
        O12 => pair(
            &g([[1, 0, 0], [0, 1, 0], [0, 0, 0]]),
            &g([[0, 0, 1], [0, 0, 0], [0, 1, 0]]),
        ),
        O13 => pair(
            &g([[1, 0, 0], [0, 1, 0], [0, 0, 0]]),
            &g([[0, 1, 0], [0, 0, 0], [0, 0, 1]]),
        ),
        O14 => pair(
            &g([[1, 0, 0], [0, 1, 0], [0, 0, 0]]),
            &g([[0, 0, 0], [0, 1, 0], [0, 0, 1]]),
        ),
        O15 => {
            let (u, v) = find_o10_params(f);
            let mut m = id3.clone();
            m.set(0, 1, u);
            let mut n = zero3.clone();
            n.set(0, 1, f.one());
            n.set(1, 0, v);
            pair(&m, &n)
        }
        O16 => pair(&id3, &g([[0, 1, 0], [0, 0, 1], [0, 0, 0]])),
        O17 => {
            let (a, b, c) = find_o17_params(f);
            let mut n = zero3.clone();
            n.set(0, 1, f.one());
            n.set(1, 2, f.one());
            n.set(2, 0, a);
            n.set(2, 1, b);
            n.set(2, 2, c);
            pair(&id3, &n)
        }
        O4T | O7T | O11T => {
            let base = match label {
                O4T => O4,
                O7T => O7,
                _ => O11,
            };
            canonical_tensor(f, base)?
                .transpose(f)
                .expect("canonical tensors have r = 3")
        }
        _ => return None,
    };
    Some(t)
}

/// Order of `GL(n, q)`.
pub fn gl_order(n: u32, q: u64) -> u128 {
    let q = q as u128;
    let qn = q.pow(n);
    (0..n).map(|i| qn - q.pow(i)).product()
}

const GL_ENUM_BUDGET: u128 = 1 << 22;
const BRUTE_FORCE_BUDGET: u128 = 1_000_000;

/// Every invertible n×n matrix over the field, by exhaustive enumeration.
pub fn gl_elements(f: &Field, n: usize) -> Result<Vec<Matrix>> {
    let cells = n * n;
    let total = (f.q() as u128).pow(cells as u32);
    if total > GL_ENUM_BUDGET {
        return Err(Error::Budget(format!(
            "enumerating GL({n}, {}) scans {total} matrices, over the {GL_ENUM_BUDGET} cap",
            f.q()
        )));
    }
    let mut out = Vec::with_capacity(gl_order(n as u32, f.q()) as usize);
    let mut odometer = vec![0u64; cells];
    loop {
        let entries: Vec<Felt> = odometer.iter().map(|&c| f.felt(c)).collect();
        let m = Matrix::new(n, n, entries);
        if m.rank(f) == n {
            out.push(m);
        }
        let mut i = cells;
        loop {
            if i == 0 {
                debug_assert_eq!(out.len() as u128, gl_order(n as u32, f.q()));
                return Ok(out);
            }
            i -= 1;
            odometer[i] += 1;
            if odometer[i] < f.q() {
                break;
            }
            odometer[i] = 0;
        }
    }
}

/// Apply `(g, h) ∈ GL(2) × GL(3)` to a subspace basis by `M ↦ g M hᵀ`.
pub fn apply_action(f: &Field, g: &Matrix, h: &Matrix, s: &Subspace) -> Subspace {
    let ht = h.transpose();
    let vectors: Vec<Vec<Felt>> = s
        .basis_matrices(2, 3)
        .iter()
        .map(|m| g.mul(f, m).mul(f, &ht).entries().to_vec())
        .collect();
    Subspace::from_vectors(f, 6, &vectors).expect("action preserves ambient")
}

/// Brute-force equivalence oracle: precomputes the full group element lists
/// once per field and decides orbit equality by exhaustive search. Entirely
/// independent of the invariant-based classifier.
pub struct BruteForcer {
    gl2: Vec<Matrix>,
    gl3: Vec<Matrix>,
}

impl BruteForcer {
    pub fn new(f: &Field) -> Result<BruteForcer> {
        let size = gl_order(2, f.q()) * gl_order(3, f.q());
        if size > BRUTE_FORCE_BUDGET {
            return Err(Error::Budget(format!(
                "group size {size} exceeds the brute-force cap {BRUTE_FORCE_BUDGET}"
            )));
        }
        Ok(BruteForcer {
            gl2: gl_elements(f, 2)?,
            gl3: gl_elements(f, 3)?,
        })
    }

    pub fn group_size(&self) -> usize {
        self.gl2.len() * self.gl3.len()
    }

    /// True iff some (g, h) maps s1 onto s2.
    pub fn equivalent(&self, f: &Field, s1: &Subspace, s2: &Subspace) -> bool {
        if s1.dim() != s2.dim() {
            return false;
        }
        for g in &self.gl2 {
            for h in &self.gl3 {
                if apply_action(f, g, h, s1) == *s2 {
                    return true;
                }
            }
        }
        false
    }

    /// The full orbit of a subspace under the group.
    pub fn orbit_of(&self, f: &Field, s: &Subspace) -> HashSet<Subspace> {
        let mut orbit = HashSet::new();
        for g in &self.gl2 {
            for h in &self.gl3 {
                orbit.insert(apply_action(f, g, h, s));
            }
        }
        orbit
    }
}

/// One-shot brute-force equivalence test (see [`BruteForcer`]).
pub fn h_equiv_bruteforce(f: &Field, s1: &Subspace, s2: &Subspace) -> Result<bool> {
    Ok(BruteForcer::new(f)?.equivalent(f, s1, s2))
}
