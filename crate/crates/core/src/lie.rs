//! The free Lie algebra on X1, X2 inside the free associative algebra, layer by layer.
//!
//! A word of length n is indexed by the binary number whose digits are its letters,
//! X1 -> 0 and X2 -> 1, leftmost letter most significant.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::FpMatrix;
use crate::subspace::Subspace;

/// Largest weight representable in word coordinates.
pub const MAX_WEIGHT: usize = 16;
/// Largest weight for which dense word-coordinate maps are materialized.
pub const MAX_DENSE_WEIGHT: usize = 10;

/// A word over {X1, X2}; letters are 1 or 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<u8>,
}

impl Word {
    pub fn new(letters: &[u8]) -> Result<Self> {
        if letters.iter().any(|&l| l != 1 && l != 2) {
            return Err(Error::Parse("letters must be 1 or 2".into()));
        }
        if letters.len() > MAX_WEIGHT {
            return Err(Error::WeightTooLarge(letters.len()));
        }
        Ok(Word {
            letters: letters.to_vec(),
        })
    }

    pub fn from_index(index: usize, n: usize) -> Self {
        let letters = (0..n)
            .map(|t| 1 + ((index >> (n - 1 - t)) & 1) as u8)
            .collect();
        Word { letters }
    }

    pub fn index(&self) -> usize {
        self.letters
            .iter()
            .fold(0, |acc, &l| (acc << 1) | (l - 1) as usize)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for l in &self.letters {
            write!(f, "X{l}")?;
        }
        Ok(())
    }
}

/// An element of the weight-n part of the free associative algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorVector {
    field: PrimeField,
    weight: usize,
    coords: Vec<u32>,
}

impl TensorVector {
    pub fn zero(field: PrimeField, weight: usize) -> Self {
        assert!(weight <= MAX_WEIGHT, "weight {weight} above {MAX_WEIGHT}");
        TensorVector {
            field,
            weight,
            coords: vec![0; 1 << weight],
        }
    }

    pub fn word(field: PrimeField, w: &Word) -> Self {
        let mut v = Self::zero(field, w.len());
        v.coords[w.index()] = 1;
        v
    }

    pub fn letter(field: PrimeField, i: u8) -> Self {
        Self::word(field, &Word { letters: vec![i] })
    }

    pub fn from_coords(field: PrimeField, weight: usize, coords: Vec<u32>) -> Result<Self> {
        if coords.len() != 1 << weight {
            return Err(Error::DimensionMismatch {
                expected: 1 << weight,
                found: coords.len(),
            });
        }
        Ok(TensorVector {
            field,
            weight,
            coords,
        })
    }

    pub fn weight(&self) -> usize {
        self.weight
    }
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.weight, other.weight);
        let f = self.field;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        TensorVector {
            field: f,
            weight: self.weight,
            coords,
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        let f = self.field;
        let k = f.from_i64(k);
        let coords = self.coords.iter().map(|&a| f.mul(a, k)).collect();
        TensorVector {
            field: f,
            weight: self.weight,
            coords,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    /// Concatenation product.
    pub fn concat(&self, other: &Self) -> Self {
        let f = self.field;
        let w = self.weight + other.weight;
        assert!(w <= MAX_WEIGHT, "weight {w} above {MAX_WEIGHT}");
        let mut out = Self::zero(f, w);
        for (i, &a) in self.coords.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coords.iter().enumerate() {
                if b != 0 {
                    let idx = (i << other.weight) | j;
                    out.coords[idx] = f.add(out.coords[idx], f.mul(a, b));
                }
            }
        }
        out
    }

    /// [P, Q] = PQ - QP
    pub fn bracket(&self, other: &Self) -> Self {
        self.concat(other).sub(&other.concat(self))
    }

    /// phi_i(v) = X_i v - v X_i
    pub fn phi(&self, i: u8) -> Self {
        let mut out = Self::zero(self.field, self.weight + 1);
        phi_into(self.field, i, self.weight, &self.coords, &mut out.coords);
        out
    }
}

/// Adds phi_i(v) into `out` (length 2^(n+1)).
pub fn phi_into(field: PrimeField, i: u8, n: usize, v: &[u32], out: &mut [u32]) {
    let bit = (i - 1) as usize;
    for (w, &a) in v.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let left = (bit << n) | w;
        let right = (w << 1) | bit;
        out[left] = field.add(out[left], a);
        out[right] = field.sub(out[right], a);
    }
}

fn check_dense(n: usize) -> Result<()> {
    if n > MAX_DENSE_WEIGHT {
        return Err(Error::WeightTooLarge(n));
    }
    Ok(())
}

/// Matrix of phi_i from weight n to weight n + 1 in word coordinates (row convention).
pub fn phi_word_map(i: u8, n: usize, field: PrimeField) -> Result<FpMatrix> {
    check_dense(n + 1)?;
    let mut m = FpMatrix::zeros(field, 1 << n, 1 << (n + 1));
    let bit = (i - 1) as usize;
    for w in 0..1usize << n {
        let left = (bit << n) | w;
        let right = (w << 1) | bit;
        m.set(w, left, field.add(m.get(w, left), 1));
        m.set(w, right, field.sub(m.get(w, right), 1));
    }
    Ok(m)
}

/// chi(w) for a single word: right-to-left bracketing.
pub fn chi_word(field: PrimeField, w: &Word) -> TensorVector {
    let letters = w.letters();
    assert!(!letters.is_empty(), "chi is defined from weight 1");
    let mut acc = TensorVector::letter(field, letters[letters.len() - 1]);
    for &l in letters[..letters.len() - 1].iter().rev() {
        acc = acc.phi(l);
    }
    acc
}

/// Matrix of chi on weight n (row for word w is chi(w)).
pub fn chi_map(n: usize, field: PrimeField) -> Result<FpMatrix> {
    if n == 0 {
        return Err(Error::Precondition("chi_map is defined for n >= 1".into()));
    }
    check_dense(n)?;
    let mut m = FpMatrix::zeros(field, 1 << n, 1 << n);
    for w in 0..1usize << n {
        let v = chi_word(field, &Word::from_index(w, n));
        for (j, &x) in v.coords().iter().enumerate() {
            if x != 0 {
                m.set(w, j, x);
            }
        }
    }
    Ok(m)
}

/// Kernel of phi_i on weight n.
pub fn kernel_of_phi_layer(i: u8, n: usize, field: PrimeField) -> Result<Subspace> {
    if n == 0 {
        return Err(Error::Precondition(
            "kernel_of_phi_layer needs n >= 1".into(),
        ));
    }
    Ok(Subspace::span(&phi_word_map(i, n, field)?.left_kernel()))
}

/// Witt's formula for the dimension of the weight-k layer on two generators.
pub fn witt_dimension(k: usize) -> usize {
    assert!(k >= 1);
    let mut total: i128 = 0;
    for j in 1..=k {
        if k.is_multiple_of(j) {
            total += mobius(j) as i128 * (1i128 << (k / j));
        }
    }
    (total / k as i128) as usize
}

fn mobius(mut n: usize) -> i32 {
    let mut result = 1;
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            n /= q;
            if n.is_multiple_of(q) {
                return 0;
            }
            result = -result;
        }
        q += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Layer k of the algebra.
#[derive(Clone, Debug)]
pub struct Layer {
    /// Rows form a basis of L_k in word coordinates, in RREF.
    pub basis: FpMatrix,
    pub pivots: Vec<usize>,
    /// phi_i on basis coordinates, d_k x d_{k+1}; absent on the top layer.
    pub phi1: Option<FpMatrix>,
    pub phi2: Option<FpMatrix>,
    /// Lambda_{k+1} = phi1(L_k) cap phi2(L_k), in L_{k+1} coordinates.
    pub lambda_next: Option<Subspace>,
    /// phi_i^{-1}(Lambda_{k+1}) in L_k coordinates.
    pub w1: Option<Subspace>,
    pub w2: Option<Subspace>,
}

impl Layer {
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Coordinates of a word-coordinate vector lying in this layer.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        let coords: Vec<u32> = self.pivots.iter().map(|&c| v[c]).collect();
        let back = FpMatrix::from_vec(self.basis.field(), 1, coords.len(), coords.clone()).ok()?;
        let rebuilt = back.mul(&self.basis).ok()?;
        (rebuilt.data() == v).then_some(coords)
    }
}

/// The free nilpotent Lie algebra of class c on two generators over F_p.
#[derive(Clone, Debug)]
pub struct GradedLieAlgebra {
    c: usize,
    field: PrimeField,
    layers: Vec<Layer>,
}

/// Builds the algebra; rejects p < c, where the structural lemmas need not hold.
pub fn build_graded_algebra(c: usize, field: PrimeField) -> Result<GradedLieAlgebra> {
    if (field.p() as usize) < c {
        return Err(Error::PrimeBelowClass { p: field.p(), c });
    }
    GradedLieAlgebra::build_any(c, field)
}

impl GradedLieAlgebra {
    /// Builds without the p >= c check. Counts computed from such an algebra are exact
    /// but lie outside the hypotheses of the uniformity statements.
    pub fn build_any(c: usize, field: PrimeField) -> Result<Self> {
        if c == 0 {
            return Err(Error::Precondition("class must be at least 1".into()));
        }
        if c > MAX_WEIGHT {
            return Err(Error::WeightTooLarge(c));
        }
        let mut layers: Vec<Layer> = Vec::with_capacity(c);
        let first = FpMatrix::identity(field, 2);
        layers.push(Layer {
            basis: first,
            pivots: vec![0, 1],
            phi1: None,
            phi2: None,
            lambda_next: None,
            w1: None,
            w2: None,
        });
        for k in 1..c {
            let prev = &layers[k - 1];
            let width = 1usize << (k + 1);
            let mut images = [
                FpMatrix::zeros(field, 0, width),
                FpMatrix::zeros(field, 0, width),
            ];
            let mut buf = vec![0u32; width];
            for (slot, i) in images.iter_mut().zip([1u8, 2]) {
                for r in 0..prev.dim() {
                    buf.iter_mut().for_each(|x| *x = 0);
                    phi_into(field, i, k, prev.basis.row(r), &mut buf);
                    slot.push_row(&buf);
                }
            }
            let next = images[0].stack(&images[1])?.rref();
            let pivots = next.pivots.clone();
            let layer = Layer {
                basis: next.matrix,
                pivots,
                phi1: None,
                phi2: None,
                lambda_next: None,
                w1: None,
                w2: None,
            };
            // coordinates of phi images are their entries at the pivot columns
            let mut maps = Vec::with_capacity(2);
            for img in &images {
                let mut m = FpMatrix::zeros(field, 0, layer.dim());
                for r in 0..img.rows() {
                    let coords = layer
                        .coordinates(img.row(r))
                        .expect("phi image lies in the next layer");
                    m.push_row(&coords);
                }
                maps.push(m);
            }
            let phi2 = maps.pop().unwrap();
            let phi1 = maps.pop().unwrap();
            let im1 = Subspace::span(&phi1);
            let im2 = Subspace::span(&phi2);
            let lambda = im1.intersect(&im2)?;
            let w1 = Subspace::preimage(&phi1, &lambda)?;
            let w2 = Subspace::preimage(&phi2, &lambda)?;
            let prev = &mut layers[k - 1];
            prev.phi1 = Some(phi1);
            prev.phi2 = Some(phi2);
            prev.lambda_next = Some(lambda);
            prev.w1 = Some(w1);
            prev.w2 = Some(w2);
            layers.push(layer);
        }
        Ok(GradedLieAlgebra { c, field, layers })
    }

    pub fn class(&self) -> usize {
        self.c
    }
    pub fn field(&self) -> PrimeField {
        self.field
    }
    /// True when p >= c.
    pub fn within_hypotheses(&self) -> bool {
        self.field.p() as usize >= self.c
    }

    /// Layer k, 1-based.
    pub fn layer(&self, k: usize) -> &Layer {
        &self.layers[k - 1]
    }

    pub fn dim(&self, k: usize) -> usize {
        self.layer(k).dim()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.layers.iter().map(Layer::dim).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims().iter().sum()
    }

    /// l_{k+1} = dim Lambda_{k+1} for k = 1..c-1.
    pub fn l_values(&self) -> Vec<usize> {
        self.layers[..self.c - 1]
            .iter()
            .map(|l| l.lambda_next.as_ref().map_or(0, Subspace::dim))
            .collect()
    }

    pub fn phi_map(&self, i: u8, k: usize) -> &FpMatrix {
        let layer = self.layer(k);
        let m = if i == 1 { &layer.phi1 } else { &layer.phi2 };
        m.as_ref().expect("phi is defined below the top layer")
    }

    /// phi(I) = phi1(I) + phi2(I) for I in L_k coordinates.
    pub fn phi_on_subspace(&self, k: usize, i: &Subspace) -> Result<Subspace> {
        if k >= self.c {
            return Err(Error::Precondition(alloc::format!(
                "phi leaves the algebra at k = {k}"
            )));
        }
        let a = i.basis().mul(self.phi_map(1, k))?;
        let b = i.basis().mul(self.phi_map(2, k))?;
        Ok(Subspace::span(&a.stack(&b)?))
    }

    pub fn dim_collapse(&self, k: usize, i: &Subspace) -> Result<usize> {
        Ok(2 * i.dim() - self.phi_on_subspace(k, i)?.dim())
    }

    /// A basis vector of L_k in word coordinates.
    pub fn basis_vector(&self, k: usize, r: usize) -> TensorVector {
        let row = self.layer(k).basis.row(r).to_vec();
        TensorVector::from_coords(self.field, k, row).expect("layer width")
    }

    /// Matrix (d_k x d_k) of the automorphism induced by X1 -> g00 X1 + g01 X2,
    /// X2 -> g10 X1 + g11 X2 on L_k.
    pub fn substitution_action(&self, k: usize, g: [[u32; 2]; 2]) -> FpMatrix {
        let f = self.field;
        let layer = self.layer(k);
        let mut out = FpMatrix::zeros(f, 0, layer.dim());
        for r in 0..layer.dim() {
            let mut v = layer.basis.row(r).to_vec();
            for t in 0..k {
                let bit = 1usize << t;
                for idx in 0..v.len() {
                    if idx & bit != 0 {
                        continue;
                    }
                    let (a, b) = (v[idx], v[idx | bit]);
                    v[idx] = f.add(f.mul(g[0][0], a), f.mul(g[1][0], b));
                    v[idx | bit] = f.add(f.mul(g[0][1], a), f.mul(g[1][1], b));
                }
            }
            let coords = layer
                .coordinates(&v)
                .expect("automorphisms preserve layers");
            out.push_row(&coords);
        }
        out
    }
}

/// Parses a bracket expression such as `[X1,[X1,X2]]` into word coordinates.
pub fn parse_bracket(field: PrimeField, s: &str) -> Result<TensorVector> {
    let compact: String = s
        .chars()
        .filter(|c| !c.is_whitespace() && *c != '_')
        .collect();
    let (v, rest) = parse_bracket_inner(field, &compact)?;
    if !rest.is_empty() {
        return Err(Error::Parse(alloc::format!("trailing input `{rest}`")));
    }
    Ok(v)
}

fn parse_bracket_inner(field: PrimeField, s: &str) -> Result<(TensorVector, &str)> {
    if let Some(rest) = s.strip_prefix('[') {
        let (a, rest) = parse_bracket_inner(field, rest)?;
        let rest = rest
            .strip_prefix(',')
            .ok_or_else(|| Error::Parse(s.into()))?;
        let (b, rest) = parse_bracket_inner(field, rest)?;
        let rest = rest
            .strip_prefix(']')
            .ok_or_else(|| Error::Parse(s.into()))?;
        Ok((a.bracket(&b), rest))
    } else if let Some(rest) = s.strip_prefix('X') {
        let letter = rest.chars().next().ok_or_else(|| Error::Parse(s.into()))?;
        let i = match letter {
            '1' => 1,
            '2' => 2,
            _ => return Err(Error::Parse(s.into())),
        };
        Ok((TensorVector::letter(field, i), &rest[1..]))
    } else {
        Err(Error::Parse(s.into()))
    }
}
