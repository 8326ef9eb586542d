use std::ops::Index;

use crate::scalar::Scalar;

use super::VecError;

/// A complex column vector of length `2^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CVector(Vec<Scalar>);

impl CVector {
    pub fn new(entries: Vec<Scalar>) -> Result<Self, VecError> {
        if !entries.len().is_power_of_two() {
            return Err(VecError::BadLength(entries.len()));
        }
        Ok(CVector(entries))
    }

    /// Standard basis vector `e_index` of length `2^n`.
    pub fn basis(n: usize, index: usize) -> Self {
        let mut v = vec![Scalar::ZERO; 1 << n];
        v[index] = Scalar::ONE;
        CVector(v)
    }

    pub fn from_reals(xs: &[f64]) -> Result<Self, VecError> {
        CVector::new(xs.iter().map(|&x| Scalar::real(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `n` such that the length is `2^n`.
    pub fn qubits(&self) -> usize {
        self.0.len().trailing_zeros() as usize
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Scalar> {
        self.0
    }

    pub fn sq_norm(&self) -> f64 {
        self.0.iter().map(|a| a.sq_modulus()).sum()
    }

    /// Largest componentwise `|a_i - b_i|`; infinite on length mismatch.
    pub fn max_abs_diff(&self, other: &CVector) -> f64 {
        if self.len() != other.len() {
            return f64::INFINITY;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (*a - *b).sq_modulus().sqrt())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &CVector, eps: f64) -> bool {
        self.max_abs_diff(other) <= eps
    }
}

impl Index<usize> for CVector {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

/// Dense complex matrix, row-major, with power-of-two dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl CMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self, VecError> {
        if !rows.is_power_of_two() || !cols.is_power_of_two() {
            return Err(VecError::BadShape(format!("{rows}x{cols} is not a power-of-two shape")));
        }
        if data.len() != rows * cols {
            return Err(VecError::BadShape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(CMatrix { rows, cols, data })
    }

    pub fn from_reals(rows: usize, cols: usize, xs: &[f64]) -> Result<Self, VecError> {
        CMatrix::new(rows, cols, xs.iter().map(|&x| Scalar::real(x)).collect())
    }

    pub fn identity(n: usize) -> Self {
        let dim = 1 << n;
        let mut data = vec![Scalar::ZERO; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = Scalar::ONE;
        }
        CMatrix { rows: dim, cols: dim, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.data[r * self.cols + c]
    }

    pub fn column(&self, c: usize) -> CVector {
        CVector((0..self.rows).map(|r| self.get(r, c)).collect())
    }

    /// Columns `start .. start + count` as a new matrix.
    pub fn column_block(&self, start: usize, count: usize) -> CMatrix {
        let data = (0..self.rows)
            .flat_map(|r| (start..start + count).map(move |c| (r, c)))
            .map(|(r, c)| self.get(r, c))
            .collect();
        CMatrix { rows: self.rows, cols: count, data }
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (*a - *b).sq_modulus().sqrt())
            .fold(0.0, f64::max)
    }
}

pub fn vec_add(a: &CVector, b: &CVector) -> Result<CVector, VecError> {
    if a.len() != b.len() {
        return Err(VecError::ShapeMismatch(format!("vectors of length {} and {}", a.len(), b.len())));
    }
    Ok(CVector(a.0.iter().zip(&b.0).map(|(x, y)| *x + *y).collect()))
}

pub fn vec_scale(alpha: Scalar, v: &CVector) -> CVector {
    CVector(v.0.iter().map(|x| alpha * *x).collect())
}

pub fn mat_vec(m: &CMatrix, v: &CVector) -> Result<CVector, VecError> {
    if m.cols != v.len() {
        return Err(VecError::ShapeMismatch(format!("{}x{} matrix times vector of length {}", m.rows, m.cols, v.len())));
    }
    let out = (0..m.rows)
        .map(|r| (0..m.cols).fold(Scalar::ZERO, |acc, c| acc + m.get(r, c) * v[c]))
        .collect();
    Ok(CVector(out))
}

pub fn mat_mul(a: &CMatrix, b: &CMatrix) -> Result<CMatrix, VecError> {
    if a.cols != b.rows {
        return Err(VecError::ShapeMismatch(format!("{}x{} times {}x{}", a.rows, a.cols, b.rows, b.cols)));
    }
    let mut data = vec![Scalar::ZERO; a.rows * b.cols];
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.get(i, k);
            for j in 0..b.cols {
                data[i * b.cols + j] = data[i * b.cols + j] + aik * b.get(k, j);
            }
        }
    }
    Ok(CMatrix { rows: a.rows, cols: b.cols, data })
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (rows, cols) = (a.rows * b.rows, a.cols * b.cols);
    let mut data = vec![Scalar::ZERO; rows * cols];
    for i in 0..a.rows {
        for j in 0..a.cols {
            let aij = a.get(i, j);
            for k in 0..b.rows {
                for l in 0..b.cols {
                    data[(i * b.rows + k) * cols + j * b.cols + l] = aij * b.get(k, l);
                }
            }
        }
    }
    CMatrix { rows, cols, data }
}
