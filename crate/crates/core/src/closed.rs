//! Closed-form counts: the graded zeta function for c <= 5, the collapse counts f_k,
//! the window counts alpha_1 and alpha_2, and the c = 6 codimension-9 predictions.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::counting::{g_count_in, CountRing, Symbolic};
use crate::error::{Error, Result};
use crate::field::{is_prime, PrimeField};
use crate::lie::{build_graded_algebra, witt_dimension, GradedLieAlgebra};
use crate::poly::IntPoly;

/// dim Lambda_k for k = 2, 3, ..., 8, as computed for p >= c.
pub const L_SEQUENCE: [usize; 7] = [1, 0, 1, 0, 3, 0, 6];

/// Coefficients indexed by codimension: entry i multiplies t^i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirichletPoly<V> {
    pub coeffs: Vec<V>,
}

impl<V> DirichletPoly<V> {
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }
    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl DirichletPoly<IntPoly> {
    pub fn eval(&self, p: u64) -> DirichletPoly<BigInt> {
        DirichletPoly {
            coeffs: self.coeffs.iter().map(|c| c.eval_u64(p)).collect(),
        }
    }

    /// `1 + (p+1)t + t^2 + t^3`
    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let coeff = if c.is_monomial() {
                    c.render_compact()
                } else {
                    format!("({})", c.render_compact())
                };
                render_term(&coeff, i)
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl DirichletPoly<BigInt> {
    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| render_term(&format!("{c}"), i))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

fn render_term(coeff: &str, i: usize) -> String {
    let t = match i {
        0 => String::new(),
        1 => "t".into(),
        _ => format!("t^{i}"),
    };
    match (coeff, i) {
        (_, 0) => coeff.into(),
        ("1", _) => t,
        _ => format!("{coeff}{t}"),
    }
}

/// Polynomials attached to unions of residue classes mod `modulus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueFamily {
    pub modulus: u64,
    pub classes: Vec<(Vec<u64>, IntPoly)>,
}

impl ResidueFamily {
    pub fn uniform(poly: IntPoly) -> Self {
        ResidueFamily {
            modulus: 1,
            classes: vec![(vec![0], poly)],
        }
    }

    pub fn is_uniform(&self) -> bool {
        self.classes.len() == 1
    }

    pub fn class_of(&self, p: u64) -> Option<&IntPoly> {
        let r = p % self.modulus;
        self.classes
            .iter()
            .find(|(rs, _)| rs.contains(&r))
            .map(|(_, q)| q)
    }

    pub fn eval(&self, p: u64) -> Option<BigInt> {
        self.class_of(p).map(|q| q.eval_u64(p))
    }

    pub fn render(&self) -> String {
        if self.is_uniform() {
            return format!("{}", self.classes[0].1);
        }
        let parts: Vec<String> = self
            .classes
            .iter()
            .map(|(rs, q)| {
                let rs: Vec<String> = rs.iter().map(|r| format!("{r}")).collect();
                format!("{q}  (p = {} mod {})", rs.join(","), self.modulus)
            })
            .collect();
        parts.join("\n")
    }
}

/// Layer dimensions d_1..d_c and Lambda dimensions l_2..l_c.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerData {
    dims: Vec<usize>,
    lambdas: Vec<usize>,
}

impl LayerData {
    pub fn from_algebra(alg: &GradedLieAlgebra) -> Self {
        LayerData {
            dims: alg.dims(),
            lambdas: alg.l_values(),
        }
    }

    /// Read off an algebra built at a prime p >= max(c, 11), checked against the
    /// Witt formula and the known Lambda sequence.
    pub fn reference(c: usize) -> Result<Self> {
        let mut p = c.max(11) as u64;
        while !is_prime(p) {
            p += 1;
        }
        let data = Self::from_algebra(&build_graded_algebra(c, PrimeField::new(p)?)?);
        for (k, &d) in data.dims.iter().enumerate() {
            if d != witt_dimension(k + 1) {
                return Err(Error::Precondition(format!(
                    "d_{} = {d} disagrees with the Witt formula",
                    k + 1
                )));
            }
        }
        for (i, &l) in data.lambdas.iter().enumerate() {
            if i < L_SEQUENCE.len() && l != L_SEQUENCE[i] {
                return Err(Error::Precondition(format!(
                    "l_{} = {l}, expected {}",
                    i + 2,
                    L_SEQUENCE[i]
                )));
            }
        }
        Ok(data)
    }

    pub fn class(&self) -> usize {
        self.dims.len()
    }
    /// d_k, 1-based.
    pub fn d(&self, k: usize) -> usize {
        self.dims[k - 1]
    }
    /// l_k = dim Lambda_k for 2 <= k <= c.
    pub fn l(&self, k: usize) -> usize {
        self.lambdas[k - 2]
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// dim phi(I_k) as a function of m_k = dim I_k, valid for c <= 5.
pub fn dphi_table(k: usize, m: usize) -> Result<usize> {
    const D: [usize; 5] = [2, 1, 2, 3, 6];
    if !(1..=4).contains(&k) || m > D[k - 1] {
        return Err(Error::Precondition(format!(
            "dphi defined for 1 <= k <= 4, 0 <= m <= d_k; got k = {k}, m = {m}"
        )));
    }
    Ok(match (k, m) {
        (_, 0) => 0,
        (1, _) => 1,
        (2, 1) => 2,
        (3, m) => m + 1,
        (4, m) => 2 * m,
        _ => unreachable!(),
    })
}

/// Graded ideal zeta function of f_{c,2} for c <= 5 by the top-down product over profiles.
pub fn zeta_graded_closed_in<R: CountRing>(ring: &R, c: usize) -> Result<DirichletPoly<R::Value>> {
    const D: [usize; 5] = [2, 1, 2, 3, 6];
    if !(1..=5).contains(&c) {
        return Err(Error::Precondition(format!(
            "closed form needs 1 <= c <= 5, got {c}"
        )));
    }
    let n: usize = D[..c].iter().sum();
    let mut coeffs = vec![ring.zero(); n + 1];
    // stack of (layer, image dim, dims so far, product)
    let mut stack = vec![(1usize, 0usize, 0usize, ring.one())];
    while let Some((k, r, total, prod)) = stack.pop() {
        let d = D[k - 1];
        for m in r..=d {
            let term = ring.mul(&prod, &ring.gaussian((d - r) as i64, (m - r) as i64));
            if k == c {
                let idx = n - total - m;
                coeffs[idx] = ring.add(&coeffs[idx], &term);
            } else {
                stack.push((k + 1, dphi_table(k, m)?, total + m, term));
            }
        }
    }
    Ok(DirichletPoly { coeffs })
}

pub fn zeta_graded_closed(c: usize) -> Result<DirichletPoly<IntPoly>> {
    zeta_graded_closed_in(&Symbolic::new(), c)
}

/// The displayed expansions for c = 2..5, transcribed term by term.
pub fn zeta_graded_displayed(c: usize) -> Result<DirichletPoly<IntPoly>> {
    let g = |n, k| crate::counting::gaussian_binomial(n, k);
    let one = IntPoly::one;
    let coeffs = match c {
        2 => vec![one(), g(2, 1), one(), one()],
        3 => vec![one(), g(2, 1), one(), one(), g(2, 1), one()],
        4 => vec![
            one(),
            g(2, 1),
            one(),
            one(),
            g(2, 1),
            one() + g(2, 1),
            g(3, 2),
            g(3, 1),
            one(),
        ],
        5 => vec![
            one(),
            g(2, 1),
            one(),
            one(),
            g(2, 1),
            one() + g(2, 1),
            g(3, 2) + g(2, 1) * g(2, 1),
            g(2, 1) + g(3, 2) * g(2, 1) + g(3, 1),
            g(3, 2) + g(3, 2) * g(4, 3) + one(),
            g(3, 1) * g(4, 2) + g(6, 5),
            g(3, 1) * g(4, 1) + g(6, 4),
            g(3, 1) + g(6, 3),
            g(6, 2),
            g(6, 1),
            one(),
        ],
        _ => {
            return Err(Error::Precondition(format!(
                "displayed expansions cover c = 2..5, got {c}"
            )))
        }
    };
    Ok(DirichletPoly { coeffs })
}

/// Number of m-dimensional I_k <= L_k with collapse dimension i, where d = d_k and
/// l = l_{k+1}: sum over j of binom(l, j) g(d - j, l - j, j, 0, i, m - j).
pub fn f_k_closed_in<R: CountRing>(
    ring: &R,
    d: usize,
    l: usize,
    m: usize,
    i: usize,
) -> Result<R::Value> {
    if 2 * l > d {
        return Err(Error::Precondition(format!(
            "need 2 l <= d, got l = {l}, d = {d}"
        )));
    }
    let mut acc = ring.zero();
    for j in i..=l.min(m) {
        let g = g_count_in(
            ring,
            (d - j) as i64,
            (l - j) as i64,
            j as i64,
            0,
            i as i64,
            (m - j) as i64,
        )?;
        acc = ring.add(&acc, &ring.mul(&ring.gaussian(l as i64, j as i64), &g));
    }
    Ok(acc)
}

pub fn f_k_closed(d: usize, l: usize, m: usize, i: usize) -> Result<IntPoly> {
    f_k_closed_in(&Symbolic::new(), d, l, m, i)
}

/// The double sum exactly as displayed, with binom(d - l - j, m - j - i) carrying no r.
pub fn f_k_as_printed(d: usize, l: usize, m: usize, i: usize) -> IntPoly {
    let ring = Symbolic::new();
    let (d, l, m, i) = (d as i64, l as i64, m as i64, i as i64);
    let mut acc = IntPoly::zero();
    for j in i..=l {
        let mut inner = IntPoly::zero();
        let top = (l - j).min(j - i).min(m - j - i);
        for r in 0..=top.max(-1) {
            let e = (l - i - r) * (m - j - i - r);
            if e < 0 {
                continue;
            }
            let mut term = ring.p_pow(e as u32);
            term = term * ring.gaussian(l - j, r) * ring.gaussian(j - i, r);
            term = term * ring.gaussian(d - l - j, m - j - i) * ring.gl_order(r as u32);
            inner = inner + term;
        }
        acc = acc + ring.gaussian(l, j) * ring.gaussian(j, i) * inner;
    }
    acc
}

/// (m, dim phi(I_k), number of such I_k) for window start k.
fn image_distribution<R: CountRing>(
    ring: &R,
    layers: &LayerData,
    k: usize,
) -> Result<Vec<(usize, usize, R::Value)>> {
    if k == 1 {
        let p1 = ring.add(&ring.p_pow(1), &ring.one());
        return Ok(vec![(0, 0, ring.one()), (1, 1, p1), (2, 1, ring.one())]);
    }
    let (d, l) = (layers.d(k), layers.l(k + 1));
    let mut out = Vec::new();
    for m in 0..=d {
        for i in 0..=m.min(l) {
            let cnt = f_k_closed_in(ring, d, l, m, i)?;
            if cnt != ring.zero() {
                out.push((m, 2 * m - i, cnt));
            }
        }
    }
    Ok(out)
}

fn check_window(layers: &LayerData, k: usize, n: usize) -> Result<()> {
    if k == 0 || k + n > layers.class() {
        return Err(Error::Precondition(format!(
            "window of {} layers from k = {k} exceeds class {}",
            n + 1,
            layers.class()
        )));
    }
    Ok(())
}

/// alpha_1(a, k) for every a = 0..=d_k + d_{k+1}.
pub fn alpha1_window_in<R: CountRing>(
    ring: &R,
    layers: &LayerData,
    k: usize,
) -> Result<Vec<R::Value>> {
    check_window(layers, k, 1)?;
    let top = layers.d(k) + layers.d(k + 1);
    if k == 1 {
        let mut out = vec![ring.zero(); top + 1];
        out[0] = ring.one();
        out[1] = ring.one();
        out[2] = ring.add(&ring.p_pow(1), &ring.one());
        out[3] = ring.one();
        return Ok(out);
    }
    alpha1_from_distribution(ring, layers, k)
}

/// alpha_1 through the image distribution, including k = 1.
pub fn alpha1_from_distribution<R: CountRing>(
    ring: &R,
    layers: &LayerData,
    k: usize,
) -> Result<Vec<R::Value>> {
    check_window(layers, k, 1)?;
    let next = layers.d(k + 1) as i64;
    let top = layers.d(k) + layers.d(k + 1);
    let mut out = vec![ring.zero(); top + 1];
    for (m, r, cnt) in image_distribution(ring, layers, k)? {
        for (a, slot) in out.iter_mut().enumerate() {
            let b = ring.gaussian(next - r as i64, a as i64 - m as i64 - r as i64);
            *slot = ring.add(slot, &ring.mul(&cnt, &b));
        }
    }
    Ok(out)
}

pub fn alpha1_closed(layers: &LayerData, a: usize, k: usize) -> Result<IntPoly> {
    Ok(alpha1_window_in(&Symbolic::new(), layers, k)?
        .get(a)
        .cloned()
        .unwrap_or_default())
}

/// alpha_2(a, k) for every a, for k with Lambda_{k+2} = 0.
pub fn alpha2_window_in<R: CountRing>(
    ring: &R,
    layers: &LayerData,
    k: usize,
) -> Result<Vec<R::Value>> {
    check_window(layers, k, 2)?;
    if ![1, 3, 5].contains(&k) {
        return Err(Error::Precondition(format!(
            "alpha_2 closed form holds for k in {{1, 3, 5}}, got {k}"
        )));
    }
    if layers.l(k + 2) != 0 {
        return Err(Error::Precondition(format!("Lambda_{} is nonzero", k + 2)));
    }
    let (d1, d2) = (layers.d(k + 1) as i64, layers.d(k + 2) as i64);
    let top = layers.d(k) + layers.d(k + 1) + layers.d(k + 2);
    let mut out = vec![ring.zero(); top + 1];
    for (m, r, cnt) in image_distribution(ring, layers, k)? {
        let (m, r) = (m as i64, r as i64);
        for mp in r..=d1 {
            let mid = ring.mul(&cnt, &ring.gaussian(d1 - r, mp - r));
            for (a, slot) in out.iter_mut().enumerate() {
                let b = ring.gaussian(d2 - 2 * mp, a as i64 - m - mp - 2 * mp);
                *slot = ring.add(slot, &ring.mul(&mid, &b));
            }
        }
    }
    Ok(out)
}

pub fn alpha2_closed(layers: &LayerData, a: usize, k: usize) -> Result<IntPoly> {
    Ok(alpha2_window_in(&Symbolic::new(), layers, k)?
        .get(a)
        .cloned()
        .unwrap_or_default())
}

/// Sum over windows k = 1..c-1 of alpha_1(a, k) t^{d_k + d_{k+1} - a}.
pub fn onestep_zeta_in<R: CountRing>(
    ring: &R,
    layers: &LayerData,
) -> Result<DirichletPoly<R::Value>> {
    let c = layers.class();
    if c < 2 {
        return Err(Error::Precondition("one-step ideals need c >= 2".into()));
    }
    let width = (1..c).map(|k| layers.d(k) + layers.d(k + 1)).max().unwrap();
    let mut coeffs = vec![ring.zero(); width + 1];
    for k in 1..c {
        let top = layers.d(k) + layers.d(k + 1);
        for (a, v) in alpha1_window_in(ring, layers, k)?.into_iter().enumerate() {
            coeffs[top - a] = ring.add(&coeffs[top - a], &v);
        }
    }
    Ok(DirichletPoly { coeffs })
}

pub fn onestep_zeta_closed(c: usize) -> Result<DirichletPoly<IntPoly>> {
    onestep_zeta_in(&Symbolic::new(), &LayerData::reference(c)?)
}

/// The five profiles that can contribute to the codimension-9 coefficient at c = 6.
pub const C6_PROFILES: [[usize; 6]; 5] = [
    [0, 0, 0, 2, 4, 8],
    [0, 0, 0, 2, 5, 7],
    [0, 0, 0, 1, 4, 9],
    [0, 0, 0, 1, 5, 8],
    [0, 0, 0, 0, 5, 9],
];

fn family(p35: &[i64], p17: &[i64]) -> ResidueFamily {
    ResidueFamily {
        modulus: 8,
        classes: vec![
            (vec![3, 5], IntPoly::from_i64(p35)),
            (vec![1, 7], IntPoly::from_i64(p17)),
        ],
    }
}

/// a_{p^9} for f_{6,2}(F_p), p >= 5.
pub fn c6_codim9_prediction() -> ResidueFamily {
    family(&[4, 10, 9, 6, 5, 3, 1], &[4, 8, 9, 6, 5, 3, 1])
}

pub fn c6_codim9_prediction_at(p: u64) -> Result<BigInt> {
    check_c6_prime(p)?;
    Ok(c6_codim9_prediction()
        .eval(p)
        .expect("odd primes fall in a class"))
}

fn check_c6_prime(p: u64) -> Result<()> {
    if p < 5 {
        return Err(Error::Precondition(format!(
            "the c = 6 formulas assume p >= 5, got {p}"
        )));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// b_m for the five codimension-9 profiles.
pub fn c6_profile_prediction(profile: &[usize]) -> Result<ResidueFamily> {
    let g = |n, k| crate::counting::gaussian_binomial(n, k);
    Ok(match profile {
        [0, 0, 0, 2, 4, 8] => ResidueFamily::uniform(IntPoly::from_i64(&[1, 4, 1])),
        [0, 0, 0, 2, 5, 7] => ResidueFamily::uniform(IntPoly::zero()),
        [0, 0, 0, 1, 4, 9] => ResidueFamily::uniform(g(3, 1) * g(4, 2)),
        [0, 0, 0, 1, 5, 8] => family(&[1, 3, 3, 1], &[1, 1, 3, 1]),
        [0, 0, 0, 0, 5, 9] => ResidueFamily::uniform(g(6, 5)),
        _ => {
            return Err(Error::Precondition(format!(
                "no closed form for profile {profile:?}"
            )))
        }
    })
}

pub fn c6_profile_prediction_at(profile: &[usize], p: u64) -> Result<BigInt> {
    check_c6_prime(p)?;
    Ok(c6_profile_prediction(profile)?
        .eval(p)
        .expect("odd primes fall in a class"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn displayed_matches_product_formula() {
        for c in 2..=5 {
            assert_eq!(
                zeta_graded_closed(c).unwrap(),
                zeta_graded_displayed(c).unwrap(),
                "c = {c}"
            );
        }
    }

    #[test]
    fn f3_values() {
        let v = |m, i| f_k_closed(2, 1, m, i).unwrap();
        assert_eq!(v(0, 0), IntPoly::one());
        assert_eq!(v(1, 0), IntPoly::from_i64(&[1, 1]));
        assert!(v(1, 1).is_zero());
        assert!(v(2, 0).is_zero());
        assert_eq!(v(2, 1), IntPoly::one());
    }

    #[test]
    fn k1_alpha_agrees_with_distribution() {
        let layers = LayerData::reference(3).unwrap();
        let ring = Symbolic::new();
        assert_eq!(
            alpha1_window_in(&ring, &layers, 1).unwrap(),
            alpha1_from_distribution(&ring, &layers, 1).unwrap()
        );
    }

    #[test]
    fn c6_profiles_sum_to_prediction() {
        let fam = c6_codim9_prediction();
        for (rs, total) in &fam.classes {
            let sum: IntPoly = C6_PROFILES
                .iter()
                .map(|pr| {
                    c6_profile_prediction(pr)
                        .unwrap()
                        .class_of(rs[0])
                        .unwrap()
                        .clone()
                })
                .sum();
            assert_eq!(&sum, total);
        }
        assert_eq!(c6_codim9_prediction_at(5).unwrap(), BigInt::from(29154));
        assert_eq!(c6_codim9_prediction_at(7).unwrap(), BigInt::from(182634));
        assert!(c6_codim9_prediction_at(3).is_err());
    }

    #[test]
    fn rendering() {
        assert_eq!(
            zeta_graded_closed(2).unwrap().render(),
            "1 + (p+1)t + t^2 + t^3"
        );
        assert_eq!(
            zeta_graded_closed(3).unwrap().eval(5).render(),
            "1 + 6t + t^2 + t^3 + 6t^4 + t^5"
        );
    }
}
