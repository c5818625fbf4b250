//! Dense matrices over F_p and row reduction.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::PrimeField;

/// Row-major dense matrix with entries reduced into [0, p).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Output of [`FpMatrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: FpMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl FpMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FpMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.p();
        }
        m
    }

    /// Builds from raw entries, reducing each mod p.
    pub fn from_vec(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        let p = field.p();
        let data = data.into_iter().map(|x| x % p).collect();
        Ok(FpMatrix {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Builds from signed integer rows.
    pub fn from_i64_rows(field: PrimeField, cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r.iter().map(|&x| field.from_i64(x)));
        }
        Ok(FpMatrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn data(&self) -> &[u32] {
        &self.data
    }
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.field.p();
    }
    #[inline]
    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: &[u32]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FpMatrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let p = self.field.p() as u64;
        let mut out = FpMatrix::zeros(self.field, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                for (slot, &b) in acc.iter_mut().zip(orow) {
                    *slot = (*slot + a * b as u64) % p;
                }
            }
            for (c, &v) in acc.iter().enumerate() {
                out.data[r * other.cols + c] = v as u32;
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.rows);
        let p = self.field.p() as u64;
        let mut acc = vec![0u64; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (slot, &b) in acc.iter_mut().zip(self.row(k)) {
                *slot = (*slot + a as u64 * b as u64) % p;
            }
        }
        acc.into_iter().map(|x| x as u32).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Reduced row echelon form with leftmost pivots; zero rows are dropped.
    pub fn rref(&self) -> Rref {
        let mut data = self.data.clone();
        let pivots = rref_in_place(&mut data, self.rows, self.cols, self.field);
        let rank = pivots.len();
        data.truncate(rank * self.cols);
        Rref {
            matrix: FpMatrix {
                field: self.field,
                rows: rank,
                cols: self.cols,
                data,
            },
            rank,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        let mut data = self.data.clone();
        rank_in_place(&mut data, self.rows, self.cols, self.field)
    }

    /// Basis (in RREF) of {x : x · self = 0}.
    pub fn left_kernel(&self) -> FpMatrix {
        self.transpose().right_kernel()
    }

    /// Basis (in RREF) of {y : self · y^T = 0}.
    pub fn right_kernel(&self) -> FpMatrix {
        let f = self.field;
        let r = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &r.pivots {
            is_pivot[c] = true;
        }
        let mut out = FpMatrix::zeros(f, 0, self.cols);
        let mut v = vec![0u32; self.cols];
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            v.iter_mut().for_each(|x| *x = 0);
            v[free] = 1;
            for (i, &pc) in r.pivots.iter().enumerate() {
                v[pc] = f.neg(r.matrix.get(i, free));
            }
            out.push_row(&v);
        }
        // each basis vector has its own free coordinate, so RREF is one pass away
        out.rref().matrix
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "FpMatrix {}x{} over F_{}",
            self.rows,
            self.cols,
            self.field.p()
        )?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Gauss-Jordan elimination on a row-major buffer; returns pivot columns.
/// Nonzero rows end up first, in RREF.
pub fn rref_in_place(data: &mut [u32], rows: usize, cols: usize, field: PrimeField) -> Vec<usize> {
    let p = field.p() as u64;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(src) = (r..rows).find(|&i| data[i * cols + c] != 0) else {
            continue;
        };
        if src != r {
            for k in 0..cols {
                data.swap(src * cols + k, r * cols + k);
            }
        }
        let inv = field.inv(data[r * cols + c]) as u64;
        for k in c..cols {
            data[r * cols + k] = (data[r * cols + k] as u64 * inv % p) as u32;
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = data[i * cols + c] as u64;
            if factor == 0 {
                continue;
            }
            let neg = p - factor;
            for k in c..cols {
                let v = data[r * cols + k] as u64;
                if v != 0 {
                    data[i * cols + k] = ((data[i * cols + k] as u64 + neg * v) % p) as u32;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank by forward elimination only.
pub fn rank_in_place(data: &mut [u32], rows: usize, cols: usize, field: PrimeField) -> usize {
    let p = field.p() as u64;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(src) = (r..rows).find(|&i| data[i * cols + c] != 0) else {
            continue;
        };
        if src != r {
            for k in c..cols {
                data.swap(src * cols + k, r * cols + k);
            }
        }
        let inv = field.inv(data[r * cols + c]) as u64;
        for i in r + 1..rows {
            let lead = data[i * cols + c] as u64;
            if lead == 0 {
                continue;
            }
            let factor = p - lead * inv % p;
            for k in c..cols {
                let v = data[r * cols + k] as u64;
                if v != 0 {
                    data[i * cols + k] = ((data[i * cols + k] as u64 + factor * v) % p) as u32;
                }
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn identity_is_its_own_rref() {
        let id = FpMatrix::identity(f(5), 3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivots, [0, 1, 2]);
    }

    #[test]
    fn duplicate_rows() {
        let m = FpMatrix::from_i64_rows(f(3), 3, &[vec![1, 2, 0], vec![1, 2, 0]]).unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(FpMatrix::zeros(f(3), 4, 4).rank(), 0);
    }

    #[test]
    fn kernels() {
        let fld = f(7);
        let m = FpMatrix::from_i64_rows(fld, 3, &[vec![1, 2, 3], vec![2, 4, 6]]).unwrap();
        let k = m.right_kernel();
        assert_eq!(k.rows(), 2);
        for r in 0..k.rows() {
            let prod = m
                .mul(&FpMatrix::from_vec(fld, 3, 1, k.row(r).to_vec()).unwrap())
                .unwrap();
            assert!(prod.is_zero());
        }
        let lk = m.left_kernel();
        assert_eq!(lk.rows(), 1);
        assert!(m.transpose().mul(&lk.transpose()).unwrap().is_zero());
    }
}
