//! Canonical subspaces of F_p^d and their enumeration by Schubert cells.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::FpMatrix;

/// A subspace stored as its RREF basis. Equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    basis: FpMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: PrimeField, d: usize) -> Self {
        Subspace {
            basis: FpMatrix::zeros(field, 0, d),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, d: usize) -> Self {
        Subspace {
            basis: FpMatrix::identity(field, d),
            pivots: (0..d).collect(),
        }
    }

    /// Row space of `vectors`, canonicalized.
    pub fn span(vectors: &FpMatrix) -> Self {
        let r = vectors.rref();
        Subspace {
            basis: r.matrix,
            pivots: r.pivots,
        }
    }

    /// Wraps a buffer already in RREF with the given pivots.
    pub(crate) fn from_rref_unchecked(
        field: PrimeField,
        d: usize,
        data: Vec<u32>,
        pivots: Vec<usize>,
    ) -> Self {
        let basis = FpMatrix::from_vec(field, pivots.len(), d, data).expect("shape");
        Subspace { basis, pivots }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }
    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }
    #[inline]
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }
    #[inline]
    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }
    #[inline]
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim()];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient_dim()).filter(|&c| !is_pivot[c]).collect()
    }

    /// v minus its projection along the basis; zero iff v lies in the subspace.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field();
        let mut out = v.to_vec();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let a = out[pc];
            if a == 0 {
                continue;
            }
            for (slot, &b) in out.iter_mut().zip(self.basis.row(r)) {
                if b != 0 {
                    *slot = f.sub(*slot, f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn contains_vector(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|r| self.contains_vector(other.basis.row(r)))
    }

    /// Coordinates of a member vector with respect to the RREF basis.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains_vector(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&c| v[c]).collect())
    }

    fn check_same(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                found: other.ambient_dim(),
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        Ok(Subspace::span(&self.basis.stack(&other.basis)?))
    }

    /// Zassenhaus: reduce [[U, U], [V, 0]] and read off rows with zero left half.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        let d = self.ambient_dim();
        let f = self.field();
        let mut m = FpMatrix::zeros(f, 0, 2 * d);
        let mut row = vec![0u32; 2 * d];
        for r in 0..self.dim() {
            row[..d].copy_from_slice(self.basis.row(r));
            row[d..].copy_from_slice(self.basis.row(r));
            m.push_row(&row);
        }
        for r in 0..other.dim() {
            row[..d].copy_from_slice(other.basis.row(r));
            row[d..].iter_mut().for_each(|x| *x = 0);
            m.push_row(&row);
        }
        let red = m.rref();
        let mut out = FpMatrix::zeros(f, 0, d);
        for (i, &pc) in red.pivots.iter().enumerate() {
            if pc >= d {
                out.push_row(&red.matrix.row(i)[d..]);
            }
        }
        Ok(Subspace::span(&out))
    }

    /// Image of the subspace under x -> x * map.
    pub fn image(&self, map: &FpMatrix) -> Result<Subspace> {
        Ok(Subspace::span(&self.basis.mul(map)?))
    }

    /// {x : x * map lies in target}.
    pub fn preimage(map: &FpMatrix, target: &Subspace) -> Result<Subspace> {
        if map.cols() != target.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: target.ambient_dim(),
                found: map.cols(),
            });
        }
        let f = map.field();
        let free = target.non_pivots();
        // columns of the linear map y -> reduce(y), restricted to non-pivot coordinates
        let mut red = FpMatrix::zeros(f, target.ambient_dim(), free.len());
        for (j, &c) in free.iter().enumerate() {
            red.set(c, j, 1);
            for (r, &pc) in target.pivots.iter().enumerate() {
                red.set(pc, j, f.neg(target.basis.get(r, c)));
            }
        }
        Ok(Subspace::span(&map.mul(&red)?.left_kernel()))
    }

    /// Row-major serialization: rows separated by `|`; single digits when p <= 10,
    /// comma-separated decimals otherwise.
    pub fn to_digit_string(&self) -> String {
        let compact = self.field().p() <= 10;
        let mut s = String::new();
        for r in 0..self.dim() {
            if r > 0 {
                s.push('|');
            }
            for (i, x) in self.basis.row(r).iter().enumerate() {
                if !compact && i > 0 {
                    s.push(',');
                }
                let _ = write!(s, "{x}");
            }
        }
        s
    }

    pub fn from_digit_string(field: PrimeField, d: usize, s: &str) -> Result<Subspace> {
        let mut m = FpMatrix::zeros(field, 0, d);
        if s.is_empty() {
            return Ok(Subspace::span(&m));
        }
        for row in s.split('|') {
            let vals: Vec<u32> = if field.p() <= 10 {
                row.chars()
                    .map(|ch| ch.to_digit(10).ok_or_else(|| Error::Parse(row.into())))
                    .collect::<Result<_>>()?
            } else {
                row.split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::Parse(row.into()))
                    })
                    .collect::<Result<_>>()?
            };
            if vals.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: vals.len(),
                });
            }
            m.push_row(&vals);
        }
        Ok(Subspace::span(&m))
    }
}

/// Advances `comb` to the next k-subset of [0, n) in lexicographic order.
pub fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    for i in (0..k).rev() {
        if comb[i] < n - k + i {
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Free (row, col) positions of the Schubert cell with the given pivots, row-major.
pub fn free_positions(n: usize, pivots: &[usize]) -> Vec<(usize, usize)> {
    let mut is_pivot = vec![false; n];
    for &c in pivots {
        is_pivot[c] = true;
    }
    let mut out = Vec::new();
    for (r, &pc) in pivots.iter().enumerate() {
        out.extend((pc + 1..n).filter(|&c| !is_pivot[c]).map(|c| (r, c)));
    }
    out
}

/// Walks one Schubert cell (optionally with a fixed prefix of free entries),
/// exposing the current RREF matrix without allocation.
#[derive(Clone, Debug)]
pub struct CellCursor {
    n: usize,
    p: u32,
    pivots: Vec<usize>,
    free: Vec<usize>,
    fixed: usize,
    mat: Vec<u32>,
    started: bool,
}

impl CellCursor {
    pub fn new(field: PrimeField, n: usize, pivots: &[usize], prefix: &[u32]) -> Self {
        let k = pivots.len();
        let free: Vec<usize> = free_positions(n, pivots)
            .into_iter()
            .map(|(r, c)| r * n + c)
            .collect();
        assert!(prefix.len() <= free.len());
        let mut mat = vec![0u32; k * n];
        for (r, &pc) in pivots.iter().enumerate() {
            mat[r * n + pc] = 1;
        }
        for (&pos, &v) in free.iter().zip(prefix) {
            mat[pos] = v % field.p();
        }
        CellCursor {
            n,
            p: field.p(),
            pivots: pivots.to_vec(),
            fixed: prefix.len(),
            free,
            mat,
            started: false,
        }
    }

    /// Moves to the next point of the cell; the first call yields the initial point.
    #[inline]
    pub fn advance(&mut self) -> bool {
        if !self.started {
            self.started = true;
            return true;
        }
        for idx in (self.fixed..self.free.len()).rev() {
            let pos = self.free[idx];
            let v = self.mat[pos] + 1;
            if v < self.p {
                self.mat[pos] = v;
                return true;
            }
            self.mat[pos] = 0;
        }
        false
    }

    #[inline]
    pub fn matrix(&self) -> &[u32] {
        &self.mat
    }
    #[inline]
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    #[inline]
    pub fn ambient(&self) -> usize {
        self.n
    }
    pub fn num_free(&self) -> usize {
        self.free.len()
    }
}

/// Streams every m-dimensional subspace of F_p^d exactly once.
pub struct SubspaceIter {
    field: PrimeField,
    d: usize,
    pivots: Option<Vec<usize>>,
    cursor: CellCursor,
}

impl SubspaceIter {
    pub fn new(field: PrimeField, d: usize, m: usize) -> Self {
        assert!(m <= d, "subspace dimension {m} exceeds ambient {d}");
        let pivots: Vec<usize> = (0..m).collect();
        let cursor = CellCursor::new(field, d, &pivots, &[]);
        SubspaceIter {
            field,
            d,
            pivots: Some(pivots),
            cursor,
        }
    }
}

impl Iterator for SubspaceIter {
    type Item = Subspace;
    fn next(&mut self) -> Option<Subspace> {
        loop {
            let piv = self.pivots.as_mut()?;
            if self.cursor.advance() {
                let data = self.cursor.matrix().to_vec();
                return Some(Subspace::from_rref_unchecked(
                    self.field,
                    self.d,
                    data,
                    piv.clone(),
                ));
            }
            if piv.is_empty() || !next_combination(piv, self.d) {
                self.pivots = None;
                return None;
            }
            self.cursor = CellCursor::new(self.field, self.d, piv, &[]);
        }
    }
}

pub fn enumerate_subspaces(field: PrimeField, d: usize, m: usize) -> SubspaceIter {
    SubspaceIter::new(field, d, m)
}

/// Streams every m-dimensional subspace containing `base`, via quotient coordinates.
pub struct SuperspaceIter {
    base: Subspace,
    quotient_cols: Vec<usize>,
    inner: SubspaceIter,
}

impl Iterator for SuperspaceIter {
    type Item = Subspace;
    fn next(&mut self) -> Option<Subspace> {
        let s = self.inner.next()?;
        Some(lift_quotient(
            &self.base,
            &self.quotient_cols,
            s.basis().data(),
            s.dim(),
        ))
    }
}

/// base + span of rows given in quotient coordinates (the non-pivot columns of base).
pub fn lift_quotient(base: &Subspace, quotient_cols: &[usize], rows: &[u32], k: usize) -> Subspace {
    let d = base.ambient_dim();
    let q = quotient_cols.len();
    let mut m = base.basis().clone();
    let mut row = vec![0u32; d];
    for r in 0..k {
        row.iter_mut().for_each(|x| *x = 0);
        for (j, &c) in quotient_cols.iter().enumerate() {
            row[c] = rows[r * q + j];
        }
        m.push_row(&row);
    }
    Subspace::span(&m)
}

pub fn enumerate_superspaces(base: &Subspace, m: usize) -> Result<SuperspaceIter> {
    let d = base.ambient_dim();
    if m < base.dim() || m > d {
        return Err(Error::Precondition(alloc::format!(
            "superspace dimension {m} outside [{}, {d}]",
            base.dim()
        )));
    }
    let quotient_cols = base.non_pivots();
    let inner = SubspaceIter::new(base.field(), quotient_cols.len(), m - base.dim());
    Ok(SuperspaceIter {
        base: base.clone(),
        quotient_cols,
        inner,
    })
}
