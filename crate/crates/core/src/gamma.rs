//! The word permutations sigma_1, sigma_2, the groups they generate, and the
//! linear-algebra checks tying their fixed spaces to the maps phi_i.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::lie::{chi_map, phi_word_map, TensorVector, Word};
use crate::matrix::FpMatrix;
use crate::subspace::Subspace;

/// Largest weight accepted by the group routines (degree 128).
pub const MAX_GROUP_WEIGHT: usize = 7;

/// A permutation of the words of length n, by word index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WordPermutation {
    n: usize,
    images: Vec<u32>,
}

impl WordPermutation {
    pub fn new(n: usize, images: Vec<u32>) -> Result<Self> {
        if images.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: images.len(),
            });
        }
        let mut seen = vec![false; images.len()];
        for &x in &images {
            let x = x as usize;
            if x >= seen.len() || seen[x] {
                return Err(Error::Precondition("images do not form a bijection".into()));
            }
            seen[x] = true;
        }
        Ok(WordPermutation { n, images })
    }

    pub fn weight(&self) -> usize {
        self.n
    }
    pub fn images(&self) -> &[u32] {
        &self.images
    }
    pub fn apply(&self, w: usize) -> usize {
        self.images[w] as usize
    }

    /// Permutation matrix in the row convention: e_w -> e_{g(w)}.
    pub fn matrix(&self, field: PrimeField) -> FpMatrix {
        let d = self.images.len();
        let mut m = FpMatrix::zeros(field, d, d);
        for (w, &img) in self.images.iter().enumerate() {
            m.set(w, img as usize, 1);
        }
        m
    }
}

/// sigma_i on words of length n: X_j^t X_i w -> w X_i X_j^t with j the other letter;
/// the power X_j^n is fixed.
pub fn sigma(i: u8, n: usize) -> Result<WordPermutation> {
    if i != 1 && i != 2 {
        return Err(Error::Precondition("sigma index must be 1 or 2".into()));
    }
    if n == 0 || n > crate::lie::MAX_WEIGHT {
        return Err(Error::WeightTooLarge(n));
    }
    let images = (0..1usize << n)
        .map(|idx| {
            let w = Word::from_index(idx, n);
            let letters = w.letters();
            let Some(pos) = letters.iter().position(|&l| l == i) else {
                return idx as u32;
            };
            // letters = X_j^pos X_i rest
            let mut out: Vec<u8> = letters[pos + 1..].to_vec();
            out.push(i);
            out.extend(core::iter::repeat_n(3 - i, pos));
            Word::new(&out).expect("valid letters").index() as u32
        })
        .collect();
    WordPermutation::new(n, images)
}

type Perm = Vec<u32>;

fn compose(a: &[u32], b: &[u32]) -> Perm {
    a.iter().map(|&x| b[x as usize]).collect()
}

fn inverse(a: &[u32]) -> Perm {
    let mut inv = vec![0u32; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x as usize] = i as u32;
    }
    inv
}

fn identity(n: usize) -> Perm {
    (0..n as u32).collect()
}

fn is_identity(a: &[u32]) -> bool {
    a.iter().enumerate().all(|(i, &x)| i as u32 == x)
}

/// Order in which new base points are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseOrder {
    Ascending,
    Descending,
}

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Perm>,
    orbit: Vec<usize>,
    /// transversal[x] maps the base point to x
    transversal: Vec<Option<Perm>>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        Level {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            transversal: vec![None; degree],
        }
    }

    fn rebuild(&mut self) {
        let degree = self.transversal.len();
        self.transversal.iter_mut().for_each(|t| *t = None);
        self.transversal[self.base] = Some(identity(degree));
        self.orbit = vec![self.base];
        let mut head = 0;
        while head < self.orbit.len() {
            let x = self.orbit[head];
            head += 1;
            for g in &self.gens {
                let y = g[x] as usize;
                if self.transversal[y].is_none() {
                    let ux = self.transversal[x].as_ref().unwrap();
                    self.transversal[y] = Some(compose(ux, g));
                    self.orbit.push(y);
                }
            }
        }
    }
}

/// A permutation group with a base and strong generating set.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<WordPermutation>,
    levels: Vec<Level>,
}

impl PermutationGroup {
    /// Deterministic Schreier-Sims.
    pub fn new(gens: &[WordPermutation], order: BaseOrder) -> Result<Self> {
        let degree = Self::check_gens(gens)?;
        let strong: Vec<Perm> = gens
            .iter()
            .map(|g| g.images.clone())
            .filter(|g| !is_identity(g))
            .collect();
        let mut grp = PermutationGroup {
            degree,
            generators: gens.to_vec(),
            levels: Vec::new(),
        };
        let pick = |h: &[u32]| -> usize {
            let moved = |x: &usize| h[*x] as usize != *x;
            match order {
                BaseOrder::Ascending => (0..degree).find(moved).unwrap(),
                BaseOrder::Descending => (0..degree).rev().find(moved).unwrap(),
            }
        };
        for g in &strong {
            if grp.levels.iter().all(|l| g[l.base] as usize == l.base) {
                grp.levels.push(Level::new(pick(g), degree));
            }
        }
        for i in 0..grp.levels.len() {
            let fixing: Vec<Perm> = strong
                .iter()
                .filter(|g| grp.levels[..i].iter().all(|l| g[l.base] as usize == l.base))
                .cloned()
                .collect();
            grp.levels[i].gens = fixing;
            grp.levels[i].rebuild();
        }
        let mut i = grp.levels.len() as isize - 1;
        while i >= 0 {
            let iu = i as usize;
            let mut jumped = false;
            'outer: for bi in 0..grp.levels[iu].orbit.len() {
                let beta = grp.levels[iu].orbit[bi];
                for si in 0..grp.levels[iu].gens.len() {
                    let level = &grp.levels[iu];
                    let s = &level.gens[si];
                    let ub = level.transversal[beta].as_ref().unwrap();
                    let usb = level.transversal[s[beta] as usize].as_ref().unwrap();
                    let schreier = compose(&compose(ub, s), &inverse(usb));
                    let (h, mut j) = grp.strip(schreier);
                    let nontrivial = if j < grp.levels.len() {
                        true
                    } else if !is_identity(&h) {
                        grp.levels.push(Level::new(pick(&h), degree));
                        j = grp.levels.len() - 1;
                        true
                    } else {
                        false
                    };
                    if nontrivial {
                        for l in iu + 1..=j {
                            grp.levels[l].gens.push(h.clone());
                            grp.levels[l].rebuild();
                        }
                        i = j as isize;
                        jumped = true;
                        break 'outer;
                    }
                }
            }
            if !jumped {
                i -= 1;
            }
        }
        Ok(grp)
    }

    fn check_gens(gens: &[WordPermutation]) -> Result<usize> {
        let first = gens
            .first()
            .ok_or_else(|| Error::Precondition("no generators".into()))?;
        if first.n > MAX_GROUP_WEIGHT {
            return Err(Error::WeightTooLarge(first.n));
        }
        let degree = first.images.len();
        if gens.iter().any(|g| g.images.len() != degree) {
            return Err(Error::Precondition(
                "generators act on different degrees".into(),
            ));
        }
        Ok(degree)
    }

    /// Sifts h through the chain; returns the residue and the level where it stopped.
    fn strip(&self, mut h: Perm) -> (Perm, usize) {
        for (i, level) in self.levels.iter().enumerate() {
            let beta = h[level.base] as usize;
            match &level.transversal[beta] {
                None => return (h, i),
                Some(u) => h = compose(&h, &inverse(u)),
            }
        }
        (h, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn generators(&self) -> &[WordPermutation] {
        &self.generators
    }
    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }
    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn contains(&self, g: &WordPermutation) -> bool {
        g.images.len() == self.degree && is_identity(&self.strip(g.images.clone()).0)
    }
}

/// Exact order by deterministic Schreier-Sims.
pub fn group_order(gens: &[WordPermutation]) -> Result<BigUint> {
    Ok(PermutationGroup::new(gens, BaseOrder::Ascending)?.order())
}

/// Order estimate from random Schreier-Sims with product-replacement elements.
/// Stops after `patience` consecutive random elements sift to the identity; the
/// result is a lower bound that is exact with high probability.
pub fn random_group_order(gens: &[WordPermutation], seed: u64, patience: usize) -> Result<BigUint> {
    let degree = PermutationGroup::check_gens(gens)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<Perm> = gens.iter().map(|g| g.images.clone()).collect();
    while pool.len() < 10 {
        pool.push(pool[pool.len() % gens.len()].clone());
    }
    let mut acc = identity(degree);
    let mut step = |pool: &mut Vec<Perm>, acc: &mut Perm| {
        let n = pool.len() as u64;
        let i = (rng.next_u64() % n) as usize;
        let mut j = (rng.next_u64() % (n - 1)) as usize;
        if j >= i {
            j += 1;
        }
        let other = if rng.next_u32() & 1 == 0 {
            pool[j].clone()
        } else {
            inverse(&pool[j])
        };
        pool[i] = if rng.next_u32() & 1 == 0 {
            compose(&pool[i], &other)
        } else {
            compose(&other, &pool[i])
        };
        *acc = compose(acc, &pool[i]);
    };
    for _ in 0..60 {
        step(&mut pool, &mut acc);
    }
    let mut grp = PermutationGroup {
        degree,
        generators: gens.to_vec(),
        levels: Vec::new(),
    };
    let mut quiet = 0;
    while quiet < patience {
        step(&mut pool, &mut acc);
        let (h, j) = grp.strip(acc.clone());
        if is_identity(&h) {
            quiet += 1;
            continue;
        }
        quiet = 0;
        if j == grp.levels.len() {
            let b = (0..degree).find(|&x| h[x] as usize != x).unwrap();
            grp.levels.push(Level::new(b, degree));
        }
        for l in 0..=j {
            grp.levels[l].gens.push(h.clone());
            grp.levels[l].rebuild();
        }
    }
    Ok(grp.order())
}

/// Generators of Gamma_n (both sigmas), Gamma_n^1 or Gamma_n^2.
pub fn gamma_generators(n: usize, which: Option<u8>) -> Result<Vec<WordPermutation>> {
    Ok(match which {
        None => vec![sigma(1, n)?, sigma(2, n)?],
        Some(i) => vec![sigma(i, n)?],
    })
}

/// Vectors fixed by every generator: kernel of the stacked P_g - I.
pub fn fixed_space(gens: &[WordPermutation], field: PrimeField) -> Result<Subspace> {
    let d = PermutationGroup::check_gens(gens)?;
    let mut big = FpMatrix::zeros(field, d, d * gens.len());
    for (gi, g) in gens.iter().enumerate() {
        for w in 0..d {
            let img = g.apply(w);
            let off = gi * d;
            big.set(w, off + img, field.add(big.get(w, off + img), 1));
            big.set(w, off + w, field.sub(big.get(w, off + w), 1));
        }
    }
    Ok(Subspace::span(&big.left_kernel()))
}

/// M_n^{X_iX_j} = {a : phi_i(a) in phi_j(weight n)}, computed from the definition.
pub fn m_space(order: (u8, u8), n: usize, field: PrimeField) -> Result<Subspace> {
    let (i, j) = order;
    let target = Subspace::span(&phi_word_map(j, n, field)?);
    Subspace::preimage(&phi_word_map(i, n, field)?, &target)
}

fn check_char(n: usize, field: PrimeField) -> Result<()> {
    if field.p() as usize <= n {
        return Err(Error::Precondition(alloc::format!(
            "needs p > n, got p = {}, n = {n}",
            field.p()
        )));
    }
    if n > MAX_GROUP_WEIGHT {
        return Err(Error::WeightTooLarge(n));
    }
    Ok(())
}

/// The three equalities between M-spaces and fixed spaces.
pub fn verify_prop1(n: usize, field: PrimeField) -> Result<bool> {
    check_char(n, field)?;
    let m12 = m_space((1, 2), n, field)?;
    let m21 = m_space((2, 1), n, field)?;
    let f1 = fixed_space(&gamma_generators(n, Some(1))?, field)?;
    let f2 = fixed_space(&gamma_generators(n, Some(2))?, field)?;
    let f = fixed_space(&gamma_generators(n, None)?, field)?;
    Ok(m12 == f1 && m21 == f2 && m12.intersect(&m21)? == f)
}

/// chi vanishes on the Gamma_n-fixed space.
pub fn verify_thm1(n: usize, field: PrimeField) -> Result<bool> {
    check_char(n, field)?;
    let fixed = fixed_space(&gamma_generators(n, None)?, field)?;
    let chi = chi_map(n, field)?;
    Ok(fixed.basis().mul(&chi)?.is_zero())
}

/// Generator sequence (1 = sigma_1, 2 = sigma_2) carrying w X1 X2 to w X2 X1 in
/// Gamma_{n+2}, found by breadth-first search over the orbit.
pub fn lemma34_path(w: &Word) -> Result<Option<Vec<u8>>> {
    let n = w.len() + 2;
    let gens = gamma_generators(n, None)?;
    let mut start = w.letters().to_vec();
    start.extend([1, 2]);
    let mut goal = w.letters().to_vec();
    goal.extend([2, 1]);
    let (s, t) = (Word::new(&start)?.index(), Word::new(&goal)?.index());
    let mut prev: Vec<Option<(usize, u8)>> = vec![None; 1 << n];
    let mut seen = vec![false; 1 << n];
    seen[s] = true;
    let mut queue = VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        if x == t {
            let mut path = Vec::new();
            let mut cur = t;
            while let Some((from, g)) = prev[cur] {
                path.push(g);
                cur = from;
            }
            path.reverse();
            return Ok(Some(path));
        }
        for (gi, g) in gens.iter().enumerate() {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                prev[y] = Some((x, gi as u8 + 1));
                queue.push_back(y);
            }
        }
    }
    Ok(None)
}

/// w X1 - X1 sigma_1(w) lies in phi_2 of the weight-n part.
pub fn lemma34_membership(w: &Word, field: PrimeField) -> Result<bool> {
    let n = w.len();
    let image = Subspace::span(&phi_word_map(2, n, field)?);
    let x1 = TensorVector::letter(field, 1);
    let wv = TensorVector::word(field, w);
    let sw = TensorVector::word(field, &Word::from_index(sigma(1, n)?.apply(w.index()), n));
    let v = wv.concat(&x1).sub(&x1.concat(&sw));
    Ok(image.contains_vector(v.coords()))
}
