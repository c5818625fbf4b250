//! Gaussian binomials and subspace counts, over a symbolic or a fixed-p coefficient ring.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::FpMatrix;
use crate::poly::IntPoly;
use crate::subspace::{enumerate_subspaces, Subspace};

/// Arithmetic needed by the closed-form counts. `Symbolic` keeps p formal,
/// `AtPrime` evaluates at a fixed integer.
pub trait CountRing {
    type Value: Clone + PartialEq + Debug;
    fn zero(&self) -> Self::Value;
    fn one(&self) -> Self::Value;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Value;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn p_pow(&self, e: u32) -> Self::Value;
    /// binom(n, i)_p, zero outside 0 <= i <= n.
    fn gaussian(&self, n: i64, i: i64) -> Self::Value;

    /// |GL_r(F_p)| = prod_{e<r} (p^r - p^e)
    fn gl_order(&self, r: u32) -> Self::Value {
        let pr = self.p_pow(r);
        (0..r).fold(self.one(), |acc, e| {
            self.mul(&acc, &self.sub(&pr, &self.p_pow(e)))
        })
    }
}

/// Formal variable p; Gaussian binomials come from the q-Pascal recurrence.
#[derive(Default)]
pub struct Symbolic {
    rows: RefCell<Vec<Vec<IntPoly>>>,
}

impl Symbolic {
    pub fn new() -> Self {
        Self::default()
    }
}

impl CountRing for Symbolic {
    type Value = IntPoly;
    fn zero(&self) -> IntPoly {
        IntPoly::zero()
    }
    fn one(&self) -> IntPoly {
        IntPoly::one()
    }
    fn from_i64(&self, v: i64) -> IntPoly {
        IntPoly::from_i64(&[v])
    }
    fn add(&self, a: &IntPoly, b: &IntPoly) -> IntPoly {
        a + b
    }
    fn sub(&self, a: &IntPoly, b: &IntPoly) -> IntPoly {
        a - b
    }
    fn mul(&self, a: &IntPoly, b: &IntPoly) -> IntPoly {
        a * b
    }
    fn p_pow(&self, e: u32) -> IntPoly {
        IntPoly::monomial(e as usize)
    }
    fn gaussian(&self, n: i64, i: i64) -> IntPoly {
        if n < 0 || i < 0 || i > n {
            return IntPoly::zero();
        }
        let (n, i) = (n as usize, i as usize);
        let mut rows = self.rows.borrow_mut();
        while rows.len() <= n {
            let m = rows.len();
            let row: Vec<IntPoly> = (0..=m)
                .map(|j| {
                    if j == 0 || j == m {
                        return IntPoly::one();
                    }
                    let prev = &rows[m - 1];
                    &prev[j - 1] + &prev[j].shift(j)
                })
                .collect();
            rows.push(row);
        }
        rows[n][i].clone()
    }
}

/// Evaluation at a fixed integer p; Gaussian binomials from the product formula.
pub struct AtPrime {
    p: BigInt,
    cache: RefCell<BTreeMap<(i64, i64), BigInt>>,
}

impl AtPrime {
    pub fn new(p: u64) -> Self {
        AtPrime {
            p: BigInt::from(p),
            cache: RefCell::new(BTreeMap::new()),
        }
    }
    pub fn p(&self) -> &BigInt {
        &self.p
    }
}

impl CountRing for AtPrime {
    type Value = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_i64(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn p_pow(&self, e: u32) -> BigInt {
        num_traits::pow(self.p.clone(), e as usize)
    }
    fn gaussian(&self, n: i64, i: i64) -> BigInt {
        if n < 0 || i < 0 || i > n {
            return BigInt::zero();
        }
        if let Some(v) = self.cache.borrow().get(&(n, i)) {
            return v.clone();
        }
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for j in 0..i {
            num *= self.p_pow((n - j) as u32) - 1;
            den *= self.p_pow((j + 1) as u32) - 1;
        }
        let (q, r) = num.div_rem(&den);
        debug_assert!(r.is_zero());
        self.cache.borrow_mut().insert((n, i), q.clone());
        q
    }
}

pub fn gaussian_binomial(n: i64, i: i64) -> IntPoly {
    Symbolic::new().gaussian(n, i)
}

/// Subspaces of dimension m in a d-space meeting a fixed l-space in dimension s.
pub fn count_intersecting_in<R: CountRing>(ring: &R, d: i64, l: i64, m: i64, s: i64) -> R::Value {
    if s < 0 || m < s || l < s {
        return ring.zero();
    }
    let e = ((l - s) * (m - s)) as u32;
    let t = ring.mul(&ring.gaussian(d - l, m - s), &ring.gaussian(l, s));
    ring.mul(&ring.p_pow(e), &t)
}

pub fn count_intersecting(d: i64, l: i64, m: i64, s: i64) -> IntPoly {
    count_intersecting_in(&Symbolic::new(), d, l, m, s)
}

/// Subspaces of dimension m containing a fixed l-space.
pub fn count_containing_in<R: CountRing>(ring: &R, d: i64, l: i64, m: i64) -> R::Value {
    ring.gaussian(d - l, m - l)
}

/// Subspaces of dimension m meeting a fixed l-space trivially.
pub fn count_disjoint_in<R: CountRing>(ring: &R, d: i64, l: i64, m: i64) -> R::Value {
    count_intersecting_in(ring, d, l, m, 0)
}

fn check_g_args(d: i64, l1: i64, l2: i64) -> Result<()> {
    if l1 < 0 || l2 < 0 || l1 + l2 > d {
        return Err(Error::Precondition(alloc::format!(
            "g needs l1 + l2 <= d, got l1 = {l1}, l2 = {l2}, d = {d}"
        )));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn g_sum<R: CountRing>(
    ring: &R,
    d: i64,
    l1: i64,
    l2: i64,
    n1: i64,
    n2: i64,
    m: i64,
    subtract_r: bool,
) -> R::Value {
    let (a, b, mm) = (l1 - n1, l2 - n2, m - n1 - n2);
    if a < 0 || b < 0 || mm < 0 || n1 < 0 || n2 < 0 {
        return ring.zero();
    }
    let mut acc = ring.zero();
    for r in 0..=a.min(b).min(mm) {
        let mut term = ring.p_pow(((a + b - r) * (mm - r)) as u32);
        term = ring.mul(&term, &ring.gaussian(a, r));
        term = ring.mul(&term, &ring.gaussian(b, r));
        let top = if subtract_r { mm - r } else { mm };
        term = ring.mul(&term, &ring.gaussian(d - l1 - l2, top));
        term = ring.mul(&term, &ring.gl_order(r as u32));
        acc = ring.add(&acc, &term);
    }
    let front = ring.mul(&ring.gaussian(l1, n1), &ring.gaussian(l2, n2));
    ring.mul(&front, &acc)
}

/// m-dimensional subspaces meeting disjoint W1, W2 (dims l1, l2) in dimensions n1, n2.
/// The complement factor is binom(d - l1 - l2, m - n1 - n2 - r)_p.
pub fn g_count_in<R: CountRing>(
    ring: &R,
    d: i64,
    l1: i64,
    l2: i64,
    n1: i64,
    n2: i64,
    m: i64,
) -> Result<R::Value> {
    check_g_args(d, l1, l2)?;
    Ok(g_sum(ring, d, l1, l2, n1, n2, m, true))
}

pub fn g_count(d: i64, l1: i64, l2: i64, n1: i64, n2: i64, m: i64) -> Result<IntPoly> {
    g_count_in(&Symbolic::new(), d, l1, l2, n1, n2, m)
}

/// The same double sum with the complement factor binom(d - l1 - l2, m - n1 - n2)_p,
/// i.e. without the shift by r. Kept to document that this form miscounts.
pub fn g_count_unshifted(d: i64, l1: i64, l2: i64, n1: i64, n2: i64, m: i64) -> Result<IntPoly> {
    check_g_args(d, l1, l2)?;
    Ok(g_sum(&Symbolic::new(), d, l1, l2, n1, n2, m, false))
}

/// Counts by filtering every m-dimensional subspace.
pub fn g_count_bruteforce(
    field: PrimeField,
    d: usize,
    w1: &Subspace,
    w2: &Subspace,
    n1: usize,
    n2: usize,
    m: usize,
) -> Result<u64> {
    if w1.intersect(w2)?.dim() != 0 {
        return Err(Error::Precondition(
            "W1 and W2 must intersect trivially".into(),
        ));
    }
    if m > d {
        return Ok(0);
    }
    let mut n = 0;
    for u in enumerate_subspaces(field, d, m) {
        if u.intersect(w1)?.dim() == n1 && u.intersect(w2)?.dim() == n2 {
            n += 1;
        }
    }
    Ok(n)
}

/// Every (m, n1, n2) tally in one pass, with W1 = span(e_0..e_{l1-1}) and W2 the next
/// l2 coordinate vectors.
pub fn g_table_bruteforce(
    field: PrimeField,
    d: usize,
    l1: usize,
    l2: usize,
) -> Result<BTreeMap<(usize, usize, usize), u64>> {
    if l1 + l2 > d {
        return Err(Error::Precondition(alloc::format!(
            "l1 + l2 = {} exceeds d = {d}",
            l1 + l2
        )));
    }
    let unit = |cols: core::ops::Range<usize>| {
        let mut m = FpMatrix::zeros(field, 0, d);
        for c in cols {
            let mut row = alloc::vec![0u32; d];
            row[c] = 1;
            m.push_row(&row);
        }
        Subspace::span(&m)
    };
    let (w1, w2) = (unit(0..l1), unit(l1..l1 + l2));
    let mut out = BTreeMap::new();
    for m in 0..=d {
        for u in enumerate_subspaces(field, d, m) {
            let key = (m, u.intersect(&w1)?.dim(), u.intersect(&w2)?.dim());
            *out.entry(key).or_insert(0) += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_values() {
        assert_eq!(gaussian_binomial(2, 1), IntPoly::from_i64(&[1, 1]));
        assert_eq!(gaussian_binomial(4, 2), IntPoly::from_i64(&[1, 1, 2, 1, 1]));
        assert!(gaussian_binomial(3, 5).is_zero());
        assert!(gaussian_binomial(3, -1).is_zero());
        assert_eq!(gaussian_binomial(3, 0), IntPoly::one());
        let at = AtPrime::new(7);
        for n in 0..9 {
            for i in -1..=n + 1 {
                assert_eq!(gaussian_binomial(n, i).eval_u64(7), at.gaussian(n, i));
            }
        }
    }

    #[test]
    fn g_small_cases() {
        assert_eq!(
            g_count(2, 1, 1, 0, 0, 1).unwrap(),
            IntPoly::from_i64(&[-1, 1])
        );
        assert!(g_count_unshifted(2, 1, 1, 0, 0, 1).unwrap().is_zero());
        for d in 0..6 {
            for m in 0..=d {
                assert_eq!(g_count(d, 0, 0, 0, 0, m).unwrap(), gaussian_binomial(d, m));
            }
        }
        assert!(g_count(3, 2, 2, 0, 0, 1).is_err());
    }

    #[test]
    fn intersecting_counts() {
        assert_eq!(count_intersecting(4, 2, 2, 0).eval_u64(3), BigInt::from(81));
        assert_eq!(count_intersecting(5, 5, 2, 2), gaussian_binomial(5, 2));
    }
}
