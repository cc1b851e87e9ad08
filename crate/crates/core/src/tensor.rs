//! Tensors in `F^2 ⊗ F^3 ⊗ F^r`.
//!
//! A tensor is stored by third-factor slices: `r` matrices of shape 2×3,
//! slice `k` being the contraction by the k-th dual basis vector of `F^r`.
//! The whole classification pipeline runs through the third contraction
//! space, so this layout makes that contraction free; the other two are
//! computed on demand.

use serde::{Deserialize, Serialize};

use crate::field::{Felt, Field};
use crate::linalg::{Matrix, MatrixJson, Subspace};
use crate::{Error, Result};

/// An element of `F^2 ⊗ F^3 ⊗ F^r`, as `r` slices of shape 2×3.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tensor {
    r: usize,
    slices: Vec<Matrix>,
}

impl Tensor {
    pub fn new(slices: Vec<Matrix>) -> Result<Tensor> {
        if slices.is_empty() {
            return Err(Error::Invalid("a tensor needs r >= 1 slices".into()));
        }
        for s in &slices {
            if s.rows() != 2 || s.cols() != 3 {
                return Err(Error::Invalid(format!(
                    "slices must be 2x3, got {}x{}",
                    s.rows(),
                    s.cols()
                )));
            }
        }
        Ok(Tensor {
            r: slices.len(),
            slices,
        })
    }

    pub fn zero(f: &Field, r: usize) -> Tensor {
        Tensor {
            r,
            slices: (0..r).map(|_| Matrix::zeros(f, 2, 3)).collect(),
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn slices(&self) -> &[Matrix] {
        &self.slices
    }

    /// Entry `A[i][j][k]` with `i < 2`, `j < 3`, `k < r`.
    pub fn get(&self, i: usize, j: usize, k: usize) -> Felt {
        self.slices[k].get(i, j)
    }

    pub fn is_zero(&self) -> bool {
        self.slices.iter().all(Matrix::is_zero)
    }

    /// The i-th contraction space.
    ///
    /// - factor 3: subspace of `F^2 ⊗ F^3` (ambient 6) spanned by the slices
    /// - factor 1: subspace of `F^3 ⊗ F^r` (ambient 3r) spanned by the two
    ///   row contractions
    /// - factor 2: subspace of `F^2 ⊗ F^r` (ambient 2r) spanned by the three
    ///   column contractions
    pub fn contraction_space(&self, f: &Field, factor: u8) -> Result<Subspace> {
        match factor {
            3 => {
                let vectors: Vec<Vec<Felt>> =
                    self.slices.iter().map(|s| s.entries().to_vec()).collect();
                Subspace::from_vectors(f, 6, &vectors)
            }
            1 => {
                let r = self.r;
                let mut vectors = Vec::with_capacity(2);
                for i in 0..2 {
                    let mut v = vec![f.zero(); 3 * r];
                    for j in 0..3 {
                        for k in 0..r {
                            v[j * r + k] = self.get(i, j, k);
                        }
                    }
                    vectors.push(v);
                }
                Subspace::from_vectors(f, 3 * r, &vectors)
            }
            2 => {
                let r = self.r;
                let mut vectors = Vec::with_capacity(3);
                for j in 0..3 {
                    let mut v = vec![f.zero(); 2 * r];
                    for i in 0..2 {
                        for k in 0..r {
                            v[i * r + k] = self.get(i, j, k);
                        }
                    }
                    vectors.push(v);
                }
                Subspace::from_vectors(f, 2 * r, &vectors)
            }
            other => Err(Error::BadFactor(other)),
        }
    }

    /// The linear map swapping the second and third factors; slice-wise,
    /// output slice k has column j equal to column k of input slice j.
    /// Only defined for r = 3, where it is an involution.
    pub fn transpose(&self, f: &Field) -> Result<Tensor> {
        if self.r != 3 {
            return Err(Error::TransposeNeedsR3(self.r));
        }
        let mut slices = Vec::with_capacity(3);
        for k in 0..3 {
            let mut m = Matrix::zeros(f, 2, 3);
            for i in 0..2 {
                for j in 0..3 {
                    m.set(i, j, self.get(i, k, j));
                }
            }
            slices.push(m);
        }
        Tensor::new(slices)
    }

    /// Lift a subspace of `F^2 ⊗ F^3` to a tensor with that third
    /// contraction space: the RREF basis becomes the leading slices, padded
    /// with zero slices to length r.
    pub fn from_subspace(f: &Field, s: &Subspace, r: usize) -> Result<Tensor> {
        if s.ambient() != 6 {
            return Err(Error::AmbientMismatch {
                expected: 6,
                got: s.ambient(),
            });
        }
        if s.dim() > r {
            return Err(Error::DimExceedsSlices { dim: s.dim(), r });
        }
        let mut slices: Vec<Matrix> = s
            .basis()
            .iter()
            .map(|v| Matrix::from_flat(2, 3, v))
            .collect();
        slices.resize(r, Matrix::zeros(f, 2, 3));
        Tensor::new(slices)
    }
}

/// Wire format for a tensor: `{"r":3,"slices":[matrix,...]}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct TensorJson {
    pub r: usize,
    pub slices: Vec<MatrixJson>,
}

impl TensorJson {
    pub fn from_tensor(t: &Tensor) -> TensorJson {
        TensorJson {
            r: t.r(),
            slices: t.slices().iter().map(MatrixJson::from_matrix).collect(),
        }
    }

    pub fn to_tensor(&self, f: &Field) -> Result<Tensor> {
        if self.slices.len() != self.r {
            return Err(Error::Invalid(
                "slice count does not match declared r".into(),
            ));
        }
        let slices: Result<Vec<Matrix>> = self.slices.iter().map(|m| m.to_matrix(f)).collect();
        Tensor::new(slices?)
    }
}
