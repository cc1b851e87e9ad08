//! Exact matrices and subspaces over `GF(q)`.
//!
//! Subspaces carry a canonical reduced-row-echelon basis with strictly
//! increasing pivot columns, so structural equality of bases is equality of
//! subspaces and hashing is exact. The six-dimensional ambient space is
//! identified with `F^2 ⊗ F^3` by row-major flattening: a `2×3` matrix `M`
//! becomes the vector `(M11, M12, M13, M21, M22, M23)`, and a pure tensor
//! `a ⊗ b` becomes the matrix `a bᵀ`.

use serde::{Deserialize, Serialize};

use crate::field::{Felt, Field};
use crate::{Error, Result};

/// A dense m×n matrix over a fixed field, entries row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    m: usize,
    n: usize,
    entries: Vec<Felt>,
}

impl Matrix {
    pub fn new(m: usize, n: usize, entries: Vec<Felt>) -> Matrix {
        assert_eq!(entries.len(), m * n, "entry count must equal m*n");
        Matrix { m, n, entries }
    }

    pub fn zeros(f: &Field, m: usize, n: usize) -> Matrix {
        Matrix::new(m, n, vec![f.zero(); m * n])
    }

    pub fn identity(f: &Field, n: usize) -> Matrix {
        let mut mat = Matrix::zeros(f, n, n);
        for i in 0..n {
            mat.set(i, i, f.one());
        }
        mat
    }

    /// Build a matrix from signed integer entries: nonnegative values are
    /// element codes, -1 means the additive inverse of one.
    pub fn from_ints<const M: usize, const N: usize>(f: &Field, rows: [[i64; N]; M]) -> Matrix {
        let mut entries = Vec::with_capacity(M * N);
        for row in rows {
            for v in row {
                let e = if v < 0 {
                    f.neg(f.felt((-v) as u64))
                } else {
                    f.felt(v as u64)
                };
                entries.push(e);
            }
        }
        Matrix::new(M, N, entries)
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Felt {
        self.entries[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Felt) {
        self.entries[i * self.n + j] = v;
    }

    /// Row-major entries; for a 2×3 matrix this is exactly the flattening
    /// into `F^6`.
    pub fn entries(&self) -> &[Felt] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Felt] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn col(&self, j: usize) -> Vec<Felt> {
        (0..self.m).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.code() == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix {
            m: self.n,
            n: self.m,
            entries: vec![Felt::default(); self.entries.len()],
        };
        for i in 0..self.m {
            for j in 0..self.n {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn mul(&self, f: &Field, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.m, "inner dimensions must agree");
        let mut out = Matrix::zeros(f, self.m, other.n);
        for i in 0..self.m {
            for k in 0..self.n {
                let a = self.get(i, k);
                if a.code() == 0 {
                    continue;
                }
                for j in 0..other.n {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Rank by Gaussian elimination over the field.
    pub fn rank(&self, f: &Field) -> usize {
        let mut rows: Vec<Vec<Felt>> = (0..self.m).map(|i| self.row(i).to_vec()).collect();
        rref_rows(f, &mut rows);
        rows.len()
    }

    /// Reinterpret a flattened vector of length m*n as an m×n matrix.
    pub fn from_flat(m: usize, n: usize, v: &[Felt]) -> Matrix {
        assert_eq!(v.len(), m * n);
        Matrix::new(m, n, v.to_vec())
    }
}

/// In-place reduced row echelon form. Zero rows are removed, pivots are 1
/// with zeros above and below, pivot columns strictly increase.
pub fn rref_rows(f: &Field, rows: &mut Vec<Vec<Felt>>) {
    if rows.is_empty() {
        return;
    }
    let n = rows[0].len();
    let mut pivot = 0;
    for col in 0..n {
        let Some(r) = (pivot..rows.len()).find(|&r| rows[r][col].code() != 0) else {
            continue;
        };
        rows.swap(pivot, r);
        let inv = f.inv(rows[pivot][col]).expect("pivot is nonzero");
        if inv != f.one() {
            for j in col..n {
                rows[pivot][j] = f.mul(rows[pivot][j], inv);
            }
        }
        for r2 in 0..rows.len() {
            if r2 == pivot {
                continue;
            }
            let factor = rows[r2][col];
            if factor.code() == 0 {
                continue;
            }
            for j in col..n {
                let sub = f.mul(factor, rows[pivot][j]);
                rows[r2][j] = f.sub(rows[r2][j], sub);
            }
        }
        pivot += 1;
        if pivot == rows.len() {
            break;
        }
    }
    rows.truncate(pivot);
}

/// A subspace of `F^n` in canonical RREF basis.
///
/// Two `Subspace` values are equal as sets iff they are structurally equal,
/// which makes them usable as hash keys during censuses.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Felt>>,
}

impl Subspace {
    /// Canonicalize a spanning set into the RREF basis of its span.
    pub fn from_vectors(f: &Field, ambient: usize, vectors: &[Vec<Felt>]) -> Result<Subspace> {
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::AmbientMismatch {
                    expected: ambient,
                    got: v.len(),
                });
            }
        }
        let mut rows = vectors.to_vec();
        rref_rows(f, &mut rows);
        Ok(Subspace {
            ambient,
            basis: rows,
        })
    }

    pub fn zero(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(f: &Field, ambient: usize) -> Subspace {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![f.zero(); ambient];
                v[i] = f.one();
                v
            })
            .collect();
        Subspace { ambient, basis }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Felt>] {
        &self.basis
    }

    /// Basis vectors viewed as m×n matrices (ambient must equal m*n).
    pub fn basis_matrices(&self, m: usize, n: usize) -> Vec<Matrix> {
        assert_eq!(self.ambient, m * n);
        self.basis.iter().map(|v| Matrix::from_flat(m, n, v)).collect()
    }

    /// Membership test by reduction against the RREF basis.
    pub fn contains(&self, f: &Field, v: &[Felt]) -> bool {
        assert_eq!(v.len(), self.ambient, "ambient mismatch");
        let mut w = v.to_vec();
        for row in &self.basis {
            let pivot = row.iter().position(|e| e.code() != 0).expect("basis row nonzero");
            let c = w[pivot];
            if c.code() != 0 {
                for j in pivot..self.ambient {
                    w[j] = f.sub(w[j], f.mul(c, row[j]));
                }
            }
        }
        w.iter().all(|e| e.code() == 0)
    }

    /// Inclusion test: every basis vector of self lies in other.
    pub fn leq(&self, f: &Field, other: &Subspace) -> bool {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        self.basis.iter().all(|v| other.contains(f, v))
    }

    /// Orthogonal complement with respect to the standard dot product
    /// (entrywise matrix dot product under the fixed flattening).
    pub fn perp(&self, f: &Field) -> Subspace {
        let n = self.ambient;
        let d = self.dim();
        if d == 0 {
            return Subspace::full(f, n);
        }
        // The basis is already in RREF; read off the null space.
        let pivots: Vec<usize> = self
            .basis
            .iter()
            .map(|row| row.iter().position(|e| e.code() != 0).unwrap())
            .collect();
        let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
        let mut vectors = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![f.zero(); n];
            v[fc] = f.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(self.basis[i][fc]);
            }
            vectors.push(v);
        }
        // Null space of the row space, i.e. {x : B xᵀ = 0}; re-canonicalize.
        let s = Subspace::from_vectors(f, n, &vectors).expect("dimensions agree");
        debug_assert_eq!(s.dim(), n - d);
        s
    }

    /// All projective points of the subspace, one normalized representative
    /// per point, (q^d - 1)/(q - 1) in total. Because the basis is RREF with
    /// increasing pivots, normalizing the coefficient tuple (first nonzero
    /// coordinate = 1) also normalizes the ambient vector.
    pub fn points(&self, f: &Field) -> Vec<Vec<Felt>> {
        let d = self.dim();
        let mut out = Vec::new();
        for coeffs in projective_tuples(f, d) {
            let mut v = vec![f.zero(); self.ambient];
            for (i, &c) in coeffs.iter().enumerate() {
                if c.code() == 0 {
                    continue;
                }
                for j in 0..self.ambient {
                    v[j] = f.add(v[j], f.mul(c, self.basis[i][j]));
                }
            }
            out.push(v);
        }
        out
    }

    /// All hyperplanes of this subspace (its (d-1)-dimensional subspaces),
    /// one per projective functional on the coordinate space.
    pub fn hyperplanes(&self, f: &Field) -> Vec<Subspace> {
        let d = self.dim();
        let mut out = Vec::new();
        for lambda in projective_tuples(f, d) {
            let lead = lambda.iter().position(|c| c.code() != 0).unwrap();
            let mut vectors = Vec::with_capacity(d - 1);
            for j in 0..d {
                if j == lead {
                    continue;
                }
                // coordinate vector e_j - lambda_j e_lead lies in the kernel
                let mut v = vec![f.zero(); self.ambient];
                for k in 0..self.ambient {
                    let a = self.basis[j][k];
                    let b = f.mul(lambda[j], self.basis[lead][k]);
                    v[k] = f.sub(a, b);
                }
                vectors.push(v);
            }
            out.push(Subspace::from_vectors(f, self.ambient, &vectors).unwrap());
        }
        out
    }
}

/// Normalized projective coordinate tuples of length d: first nonzero entry
/// is 1, enumerated by leading index then lexicographically.
pub fn projective_tuples(f: &Field, d: usize) -> Vec<Vec<Felt>> {
    let mut out = Vec::new();
    for lead in 0..d {
        let tail = d - lead - 1;
        let mut odometer = vec![0u64; tail];
        loop {
            let mut t = vec![f.zero(); d];
            t[lead] = f.one();
            for (i, &c) in odometer.iter().enumerate() {
                t[lead + 1 + i] = f.felt(c);
            }
            out.push(t);
            // increment base-q odometer, most significant digit first
            let mut i = tail;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                odometer[i] += 1;
                if odometer[i] < f.q() {
                    break;
                }
                odometer[i] = 0;
            }
            if odometer.iter().all(|&c| c == 0) {
                break;
            }
        }
    }
    out
}

/// Gaussian binomial coefficient: the number of d-dimensional subspaces of
/// an n-dimensional space over GF(q). Saturates at `u128::MAX` when the
/// true value overflows, which every budget comparison treats as too big.
pub fn gaussian_binomial(n: u32, d: u32, q: u64) -> u128 {
    if d > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    let q = q as u128;
    for i in 0..d {
        let (Some(nn), Some(dd)) = (
            num.checked_mul(q.pow(n - i) - 1),
            den.checked_mul(q.pow(i + 1) - 1),
        ) else {
            return u128::MAX;
        };
        num = nn;
        den = dd;
    }
    debug_assert_eq!(num % den, 0);
    num / den
}

/// Cap on the number of subspaces a single enumeration may produce.
pub const SUBSPACE_BUDGET: u128 = 2_000_000;

/// Ascending pivot-column patterns for RREF matrices of rank d in n columns.
pub fn pivot_patterns(n: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(d);
    fn rec(n: usize, d: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == d {
            out.push(current.clone());
            return;
        }
        for c in start..n {
            current.push(c);
            rec(n, d, c + 1, current, out);
            current.pop();
        }
    }
    rec(n, d, 0, &mut current, &mut out);
    out
}

/// Stream every d-dimensional subspace with the given pivot columns, in
/// lexicographic order of the free entries (row-major reading). The basis
/// matrices are RREF by construction, so no canonicalization pass is needed.
pub fn subspaces_with_pivots<'a>(
    f: &'a Field,
    n: usize,
    pivots: &[usize],
) -> impl Iterator<Item = Subspace> + 'a {
    let pivots: Vec<usize> = pivots.to_vec();
    let d = pivots.len();
    // Free positions: row i may have arbitrary entries in columns right of
    // its pivot that are not pivot columns themselves.
    let mut free: Vec<(usize, usize)> = Vec::new();
    for (i, &p) in pivots.iter().enumerate() {
        for j in (p + 1)..n {
            if !pivots.contains(&j) {
                free.push((i, j));
            }
        }
    }
    let mut odometer = vec![0u64; free.len()];
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let mut basis = vec![vec![f.zero(); n]; d];
        for (i, &p) in pivots.iter().enumerate() {
            basis[i][p] = f.one();
        }
        for (k, &(i, j)) in free.iter().enumerate() {
            basis[i][j] = f.felt(odometer[k]);
        }
        let mut i = free.len();
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            odometer[i] += 1;
            if odometer[i] < f.q() {
                break;
            }
            odometer[i] = 0;
        }
        Some(Subspace { ambient: n, basis })
    })
}

/// Stream every d-dimensional subspace of `F^n` exactly once, in
/// RREF-lexicographic order (pivot pattern, then free entries). The total
/// equals the Gaussian binomial `[n choose d]_q`; enumerations beyond the
/// budget are refused up front.
pub fn enumerate_subspaces(
    f: &Field,
    n: usize,
    d: usize,
) -> Result<impl Iterator<Item = Subspace> + '_> {
    if d > n {
        return Err(Error::Invalid(format!("dimension {d} exceeds ambient {n}")));
    }
    let count = gaussian_binomial(n as u32, d as u32, f.q());
    if count > SUBSPACE_BUDGET {
        return Err(Error::Budget(format!(
            "{count} subspaces of dimension {d} in GF({})^{n} exceeds limit {SUBSPACE_BUDGET}",
            f.q()
        )));
    }
    Ok(pivot_patterns(n, d)
        .into_iter()
        .flat_map(move |pat| subspaces_with_pivots(f, n, &pat)))
}

/// Wire format for a matrix: `{"m":2,"n":3,"rows":[[c,c,c],[c,c,c]]}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub m: usize,
    pub n: usize,
    pub rows: Vec<Vec<u64>>,
}

impl MatrixJson {
    pub fn from_matrix(mat: &Matrix) -> MatrixJson {
        MatrixJson {
            m: mat.rows(),
            n: mat.cols(),
            rows: (0..mat.rows())
                .map(|i| mat.row(i).iter().map(|e| e.code()).collect())
                .collect(),
        }
    }

    pub fn to_matrix(&self, f: &Field) -> Result<Matrix> {
        if self.rows.len() != self.m || self.rows.iter().any(|r| r.len() != self.n) {
            return Err(Error::Invalid("matrix rows do not match declared shape".into()));
        }
        let mut entries = Vec::with_capacity(self.m * self.n);
        for row in &self.rows {
            for &c in row {
                entries.push(f.try_felt(c)?);
            }
        }
        Ok(Matrix::new(self.m, self.n, entries))
    }
}

/// Wire format for a subspace: `{"ambient":6,"basis":[[c; ambient],...]}`.
/// The basis is always emitted in RREF.
#[derive(Debug, Serialize, Deserialize)]
pub struct SubspaceJson {
    pub ambient: usize,
    pub basis: Vec<Vec<u64>>,
}

impl SubspaceJson {
    pub fn from_subspace(s: &Subspace) -> SubspaceJson {
        SubspaceJson {
            ambient: s.ambient(),
            basis: s
                .basis()
                .iter()
                .map(|v| v.iter().map(|e| e.code()).collect())
                .collect(),
        }
    }

    pub fn to_subspace(&self, f: &Field) -> Result<Subspace> {
        let mut vectors = Vec::with_capacity(self.basis.len());
        for row in &self.basis {
            let mut v = Vec::with_capacity(row.len());
            for &c in row {
                v.push(f.try_felt(c)?);
            }
            vectors.push(v);
        }
        Subspace::from_vectors(f, self.ambient, &vectors)
    }
}
