//! Exact enumeration of graded ideal chains I_first <= ... <= I_last with
//! phi(I_k) <= I_{k+1}. The last layer is counted in closed form from dim phi(I_{last-1}).

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::closed::{DirichletPoly, C6_PROFILES};
use crate::counting::{g_count_in, AtPrime, CountRing};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::lie::GradedLieAlgebra;
use crate::matrix::{rank_in_place, FpMatrix};
use crate::subspace::{
    enumerate_subspaces, enumerate_superspaces, next_combination, CellCursor, Subspace,
};

pub const DEFAULT_BUDGET: u128 = 1_000_000_000;

/// Cap on the number of first-layer subspaces handed to the orbit computation.
pub const ORBIT_LIMIT: usize = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Image dimensions at the penultimate layer through a precomputed kernel.
    Fast,
    /// Every image recomputed by row reduction.
    Naive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub budget: u128,
    pub strategy: Strategy,
    /// Weight GL_2 orbits of the first enumerated layer instead of visiting every subspace.
    pub orbits: bool,
    /// Count the last layer by formula rather than by enumeration.
    pub complete_last: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            budget: DEFAULT_BUDGET,
            strategy: Strategy::Fast,
            orbits: false,
            complete_last: true,
        }
    }
}

/// Allowed dimension at one layer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dim {
    Any,
    Exact(usize),
}

impl Dim {
    fn range(self, lo: usize, hi: usize) -> core::ops::RangeInclusive<usize> {
        match self {
            Dim::Any => lo..=hi,
            Dim::Exact(m) if m >= lo && m <= hi => m..=m,
            #[allow(clippy::reversed_empty_ranges)]
            Dim::Exact(_) => 1..=0,
        }
    }
}

/// Nonzero (or named) profiles with their counts.
pub type ProfileCounts = Vec<(Vec<usize>, BigInt)>;

/// A unit of work: one Schubert cell of the first layer, or one weighted orbit representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WorkItem {
    Cell { pivots: Vec<usize> },
    Rep { space: Subspace, weight: u128 },
}

/// Partial counts; merging is plain addition, so any split of the work gives the same totals.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    /// (sum of dims below the last layer, dim phi(I_{last-1})) -> number of chains
    pub hist: BTreeMap<(usize, usize), u128>,
    /// sum of all dims -> chains with an enumerated last layer
    pub direct: BTreeMap<usize, u128>,
    pub nodes: u128,
}

impl Tally {
    pub fn merge(&mut self, other: &Tally) {
        for (k, v) in &other.hist {
            *self.hist.entry(*k).or_default() += v;
        }
        for (k, v) in &other.direct {
            *self.direct.entry(*k).or_default() += v;
        }
        self.nodes += other.nodes;
    }
}

/// Chains over layers first..=last, each with an allowed dimension.
pub struct ChainProblem<'a> {
    alg: &'a GradedLieAlgebra,
    first: usize,
    last: usize,
    dims: Vec<Dim>,
    opts: Options,
}

struct FastPath {
    f: usize,
    q: usize,
    e: usize,
    kappa: usize,
    /// kappa x 2q, first half for phi1
    kernel: Vec<u32>,
}

impl FastPath {
    fn new(alg: &GradedLieAlgebra, k: usize, base: &Subspace) -> Result<Self> {
        let image = alg.phi_on_subspace(k, base)?;
        let cols = base.non_pivots();
        let q = cols.len();
        let width = alg.dim(k + 1);
        let mut t = FpMatrix::zeros(alg.field(), 0, width);
        for i in [1u8, 2] {
            let map = alg.phi_map(i, k);
            for &c in &cols {
                t.push_row(&image.reduce(map.row(c)));
            }
        }
        let ker = t.left_kernel();
        Ok(FastPath {
            f: base.dim(),
            q,
            e: image.dim(),
            kappa: ker.rows(),
            kernel: ker.data().to_vec(),
        })
    }

    /// dim phi(base + S) for S (s x q, RREF with the given pivots) in quotient coordinates.
    #[inline]
    fn image_dim(
        &self,
        field: PrimeField,
        s_mat: &[u32],
        pivots: &[usize],
        free: &[usize],
        buf: &mut Vec<u32>,
    ) -> usize {
        let s = pivots.len();
        if self.kappa == 0 {
            return self.e + 2 * s;
        }
        let p = field.p() as u64;
        let q = self.q;
        let w = free.len();
        buf.clear();
        for t in 0..self.kappa {
            let krow = &self.kernel[t * 2 * q..(t + 1) * 2 * q];
            for h in 0..2 {
                let kh = &krow[h * q..(h + 1) * q];
                for &c in free {
                    let mut acc = kh[c] as u64;
                    for (r, &pc) in pivots.iter().enumerate() {
                        let sv = s_mat[r * q + c] as u64;
                        if sv != 0 {
                            acc += (p - sv) * kh[pc] as u64;
                        }
                    }
                    buf.push((acc % p) as u32);
                }
            }
        }
        let rank = rank_in_place(buf, self.kappa, 2 * w, field);
        self.e + 2 * s - (self.kappa - rank)
    }
}

fn complement(n: usize, pivots: &[usize]) -> Vec<usize> {
    (0..n).filter(|c| !pivots.contains(c)).collect()
}

/// Every Schubert cell (pivot set) of the m-dimensional subspaces of F^n.
fn cells(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut piv: Vec<usize> = (0..m).collect();
    loop {
        out.push(piv.clone());
        if m == 0 || !next_combination(&mut piv, n) {
            break;
        }
    }
    out
}

fn gaussian_u128(p: u64, n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let g = AtPrime::new(p).gaussian(n as i64, k as i64);
    u128::try_from(g).unwrap_or(u128::MAX)
}

impl<'a> ChainProblem<'a> {
    pub fn new(
        alg: &'a GradedLieAlgebra,
        first: usize,
        last: usize,
        dims: Vec<Dim>,
        opts: Options,
    ) -> Result<Self> {
        if first == 0 || first > last || last > alg.class() || dims.len() != last - first + 1 {
            return Err(Error::Precondition(alloc::format!(
                "chain layers {first}..={last} with {} dimension specs in class {}",
                dims.len(),
                alg.class()
            )));
        }
        Ok(ChainProblem {
            alg,
            first,
            last,
            dims,
            opts,
        })
    }

    pub fn first(&self) -> usize {
        self.first
    }

    pub fn last(&self) -> usize {
        self.last
    }

    pub fn options(&self) -> Options {
        self.opts
    }

    fn spec(&self, k: usize) -> Dim {
        self.dims[k - self.first]
    }

    fn p(&self) -> u64 {
        self.alg.field().p() as u64
    }

    /// Work items covering the first layer.
    pub fn plan(&self) -> Result<Vec<WorkItem>> {
        let k = self.first;
        let d = self.alg.dim(k);
        if self.first == self.last {
            return Ok(vec![WorkItem::Rep {
                space: Subspace::zero(self.alg.field(), d),
                weight: 1,
            }]);
        }
        if !self.opts.orbits {
            let mut out = Vec::new();
            for m in self.spec(k).range(0, d) {
                out.extend(
                    cells(d, m)
                        .into_iter()
                        .map(|pivots| WorkItem::Cell { pivots }),
                );
            }
            return Ok(out);
        }
        let mut out = Vec::new();
        for m in self.spec(k).range(0, d) {
            if gaussian_u128(self.p(), d, m) > ORBIT_LIMIT as u128 {
                // too many subspaces to sort into orbits; visit them all
                out.extend(
                    cells(d, m)
                        .into_iter()
                        .map(|pivots| WorkItem::Cell { pivots }),
                );
            } else {
                out.extend(self.orbit_reps(m)?);
            }
        }
        Ok(out)
    }

    fn orbit_reps(&self, m: usize) -> Result<Vec<WorkItem>> {
        let k = self.first;
        let field = self.alg.field();
        let d = self.alg.dim(k);
        let spaces: Vec<Subspace> = enumerate_subspaces(field, d, m).collect();
        let index: BTreeMap<&[u32], usize> = spaces
            .iter()
            .enumerate()
            .map(|(i, s)| (s.basis().data(), i))
            .collect();
        let w = field.primitive_root();
        let gens: Vec<FpMatrix> = [[[1, 1], [0, 1]], [[1, 0], [1, 1]], [[w, 0], [0, 1]]]
            .iter()
            .map(|g| self.alg.substitution_action(k, *g))
            .collect();
        let mut parent: Vec<usize> = (0..spaces.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (i, s) in spaces.iter().enumerate() {
            for g in &gens {
                let img = s.image(g)?;
                let j = index[img.basis().data()];
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut sizes: BTreeMap<usize, u128> = BTreeMap::new();
        for i in 0..spaces.len() {
            *sizes.entry(find(&mut parent, i)).or_default() += 1;
        }
        Ok(sizes
            .into_iter()
            .map(|(r, n)| WorkItem::Rep {
                space: spaces[r].clone(),
                weight: n,
            })
            .collect())
    }

    /// Upper estimate of the nodes visited for the given items, taking image
    /// dimensions to be as large as possible.
    pub fn estimate(&self, items: &[WorkItem]) -> u128 {
        let k = self.first;
        let mut total: u128 = 0;
        for item in items {
            let add = match item {
                WorkItem::Cell { pivots } => {
                    let d = self.alg.dim(k);
                    let free = crate::subspace::free_positions(d, pivots).len() as u32;
                    let size = (self.p() as u128).saturating_pow(free);
                    let gen = self.generic_image(k, pivots.len());
                    size.saturating_mul(1u128.saturating_add(self.estimate_from(k + 1, gen)))
                }
                WorkItem::Rep { space, .. } => {
                    if k == self.last {
                        1
                    } else {
                        1u128.saturating_add(
                            self.estimate_from(k + 1, self.generic_image(k, space.dim())),
                        )
                    }
                }
            };
            total = total.saturating_add(add);
        }
        total
    }

    fn generic_image(&self, k: usize, m: usize) -> usize {
        let next = self.alg.dim(k + 1);
        let raw = if k == 1 { m.min(1) } else { 2 * m };
        raw.min(next)
    }

    fn estimate_from(&self, k: usize, r: usize) -> u128 {
        if k == self.last && self.opts.complete_last {
            return 0;
        }
        let d = self.alg.dim(k);
        let mut total: u128 = 0;
        for m in self.spec(k).range(r, d) {
            let n = gaussian_u128(self.p(), d - r, m - r);
            let below = if k == self.last {
                0
            } else {
                self.estimate_from(k + 1, self.generic_image(k, m))
            };
            total = total.saturating_add(n.saturating_mul(1u128.saturating_add(below)));
        }
        total
    }

    /// Runs the given items. `progress` is called after each item with (done, total).
    pub fn run(&self, items: &[WorkItem], progress: &mut dyn FnMut(usize, usize)) -> Result<Tally> {
        let estimate = self.estimate(items);
        if estimate > self.opts.budget {
            return Err(Error::BudgetExceeded {
                estimate,
                budget: self.opts.budget,
            });
        }
        let mut tally = Tally::default();
        for (done, item) in items.iter().enumerate() {
            match item {
                WorkItem::Cell { pivots } => self.run_cell(pivots, &mut tally)?,
                WorkItem::Rep { space, weight } => {
                    if self.first == self.last {
                        self.visit_last(space.clone(), 0, *weight, &mut tally)?;
                    } else {
                        tally.nodes += 1;
                        self.after_first(space, *weight, &mut tally)?;
                    }
                }
            }
            if tally.nodes > self.opts.budget {
                return Err(Error::BudgetExceeded {
                    estimate: tally.nodes,
                    budget: self.opts.budget,
                });
            }
            progress(done + 1, items.len());
        }
        Ok(tally)
    }

    fn after_first(&self, space: &Subspace, weight: u128, tally: &mut Tally) -> Result<()> {
        let k = self.first;
        let image = self.alg.phi_on_subspace(k, space)?;
        self.descend(k + 1, image, space.dim(), weight, tally)
    }

    fn run_cell(&self, pivots: &[usize], tally: &mut Tally) -> Result<()> {
        let k = self.first;
        let field = self.alg.field();
        let d = self.alg.dim(k);
        let m = pivots.len();
        let mut cursor = CellCursor::new(field, d, pivots, &[]);
        if k + 1 == self.last && self.opts.complete_last && self.opts.strategy == Strategy::Fast {
            let fp = FastPath::new(self.alg, k, &Subspace::zero(field, d))?;
            let free = complement(d, pivots);
            let mut buf = Vec::new();
            let mut local: BTreeMap<usize, u128> = BTreeMap::new();
            while cursor.advance() {
                let r = fp.image_dim(field, cursor.matrix(), pivots, &free, &mut buf);
                *local.entry(r).or_default() += 1;
            }
            for (r, n) in local {
                tally.nodes += n;
                *tally.hist.entry((m, r)).or_default() += n;
            }
            return Ok(());
        }
        while cursor.advance() {
            tally.nodes += 1;
            let s =
                Subspace::from_rref_unchecked(field, d, cursor.matrix().to_vec(), pivots.to_vec());
            self.after_first(&s, 1, tally)?;
        }
        Ok(())
    }

    /// At layer k with phi(I_{k-1}) = base.
    fn descend(
        &self,
        k: usize,
        base: Subspace,
        total: usize,
        weight: u128,
        tally: &mut Tally,
    ) -> Result<()> {
        if k == self.last {
            return self.visit_last(base, total, weight, tally);
        }
        let field = self.alg.field();
        let d = self.alg.dim(k);
        if k + 1 == self.last && self.opts.complete_last && self.opts.strategy == Strategy::Fast {
            let fp = FastPath::new(self.alg, k, &base)?;
            let mut buf = Vec::new();
            for m in self.spec(k).range(fp.f, d) {
                let s = m - fp.f;
                for piv in cells(fp.q, s) {
                    let free = complement(fp.q, &piv);
                    let mut cursor = CellCursor::new(field, fp.q, &piv, &[]);
                    let mut local: BTreeMap<usize, u128> = BTreeMap::new();
                    while cursor.advance() {
                        let r = fp.image_dim(field, cursor.matrix(), &piv, &free, &mut buf);
                        *local.entry(r).or_default() += 1;
                    }
                    for (r, n) in local {
                        tally.nodes += n;
                        *tally.hist.entry((total + m, r)).or_default() += n * weight;
                    }
                }
            }
            return Ok(());
        }
        for m in self.spec(k).range(base.dim(), d) {
            for i in enumerate_superspaces(&base, m)? {
                tally.nodes += 1;
                let image = self.alg.phi_on_subspace(k, &i)?;
                self.descend(k + 1, image, total + m, weight, tally)?;
            }
        }
        Ok(())
    }

    fn visit_last(
        &self,
        base: Subspace,
        total: usize,
        weight: u128,
        tally: &mut Tally,
    ) -> Result<()> {
        if self.opts.complete_last {
            *tally.hist.entry((total, base.dim())).or_default() += weight;
            return Ok(());
        }
        let d = self.alg.dim(self.last);
        for m in self.spec(self.last).range(base.dim(), d) {
            let n = enumerate_superspaces(&base, m)?.count() as u128;
            tally.nodes += n;
            *tally.direct.entry(total + m).or_default() += n * weight;
        }
        Ok(())
    }

    /// Counts by total dimension a = sum of dim I_k over first..=last.
    pub fn finish(&self, tally: &Tally) -> Vec<BigInt> {
        let ring = AtPrime::new(self.p());
        let width: usize = (self.first..=self.last).map(|k| self.alg.dim(k)).sum();
        let mut out = vec![BigInt::zero(); width + 1];
        let d = self.alg.dim(self.last) as i64;
        for (&(total, r), &n) in &tally.hist {
            for m in self.spec(self.last).range(r, d as usize) {
                let ways = ring.gaussian(d - r as i64, (m - r) as i64);
                out[total + m] += ways * BigInt::from(n);
            }
        }
        for (&a, &n) in &tally.direct {
            out[a] += BigInt::from(n);
        }
        out
    }

    /// plan + run + finish in one call.
    pub fn count(&self) -> Result<Vec<BigInt>> {
        let items = self.plan()?;
        let tally = self.run(&items, &mut |_, _| {})?;
        Ok(self.finish(&tally))
    }
}

/// The full graded ideal zeta function at the algebra's prime, coefficients by codimension.
pub fn enumerate_graded_zeta(
    alg: &GradedLieAlgebra,
    opts: Options,
) -> Result<DirichletPoly<BigInt>> {
    let c = alg.class();
    if c > 6 {
        return Err(Error::Precondition(alloc::format!(
            "full enumeration is limited to c <= 6, got {c}"
        )));
    }
    let by_dim = ChainProblem::new(alg, 1, c, vec![Dim::Any; c], opts)?.count()?;
    Ok(DirichletPoly {
        coeffs: by_dim.into_iter().rev().collect(),
    })
}

/// The chain problem for b_m, with leading zero layers and trailing full layers trimmed.
/// Returns None when the count is trivially 1.
pub fn profile_problem<'a>(
    alg: &'a GradedLieAlgebra,
    profile: &[usize],
    opts: Options,
) -> Result<Option<ChainProblem<'a>>> {
    let c = alg.class();
    if profile.len() != c {
        return Err(Error::DimensionMismatch {
            expected: c,
            found: profile.len(),
        });
    }
    for (k, &m) in profile.iter().enumerate() {
        if m > alg.dim(k + 1) {
            return Err(Error::Precondition(alloc::format!(
                "m_{} = {m} exceeds d_{} = {}",
                k + 1,
                k + 1,
                alg.dim(k + 1)
            )));
        }
    }
    let first = profile.iter().position(|&m| m > 0).map(|i| i + 1);
    let last = (1..=c).rev().find(|&k| profile[k - 1] < alg.dim(k));
    match (first, last) {
        (Some(f), Some(l)) if f <= l => {
            let dims = profile[f - 1..l].iter().map(|&m| Dim::Exact(m)).collect();
            Ok(Some(ChainProblem::new(alg, f, l, dims, opts)?))
        }
        _ => Ok(None),
    }
}

/// b_m: graded ideals with dim I_k = m_k for every k.
pub fn count_profile(alg: &GradedLieAlgebra, profile: &[usize], opts: Options) -> Result<BigInt> {
    match profile_problem(alg, profile, opts)? {
        None => Ok(BigInt::from(1)),
        Some(prob) => {
            let a: usize = profile[prob.first - 1..prob.last].iter().sum();
            Ok(prob.count()?.swap_remove(a))
        }
    }
}

/// Every profile (m_1, ..., m_c) with sum of d_k - m_k equal to `codim`.
pub fn profiles_of_codim(dims: &[usize], codim: usize) -> Vec<Vec<usize>> {
    fn rec(dims: &[usize], left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let k = cur.len();
        if k == dims.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let room: usize = dims[k + 1..].iter().sum();
        for gap in 0..=dims[k].min(left) {
            if left - gap > room {
                continue;
            }
            cur.push(dims[k] - gap);
            rec(dims, left - gap, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(dims, codim, &mut Vec::new(), &mut out);
    out
}

/// a_{p^codim}: sum of b_m over every profile of that codimension, with the nonzero terms.
pub fn coefficient_by_profiles(
    alg: &GradedLieAlgebra,
    codim: usize,
    opts: Options,
) -> Result<(BigInt, ProfileCounts)> {
    let mut total = BigInt::zero();
    let mut parts = Vec::new();
    for prof in profiles_of_codim(&alg.dims(), codim) {
        let n = count_profile(alg, &prof, opts)?;
        if !n.is_zero() {
            total += &n;
            parts.push((prof, n));
        }
    }
    Ok((total, parts))
}

/// a_{p^9} of f_{6,2}, summed over every profile of codimension 9. The breakdown lists the
/// five profiles of the published derivation (zero or not) and any other nonzero profile.
pub fn c6_codim9_enumerate(
    alg: &GradedLieAlgebra,
    opts: Options,
) -> Result<(BigInt, ProfileCounts)> {
    if alg.class() != 6 {
        return Err(Error::Precondition("needs the class-6 algebra".into()));
    }
    if alg.field().p() < 5 {
        return Err(Error::Precondition(alloc::format!(
            "needs p >= 5, got {}",
            alg.field().p()
        )));
    }
    let mut total = BigInt::zero();
    let mut parts = Vec::new();
    for prof in profiles_of_codim(&alg.dims(), 9) {
        let n = count_profile(alg, &prof, opts)?;
        total += &n;
        if !n.is_zero() || C6_PROFILES.iter().any(|q| q[..] == prof[..]) {
            parts.push((prof, n));
        }
    }
    Ok((total, parts))
}

fn check_collapse_layer(alg: &GradedLieAlgebra, k: usize) -> Result<()> {
    if k < 2 || k >= alg.class() {
        return Err(Error::Precondition(alloc::format!(
            "collapse counts need 1 < k <= c - 1, got k = {k}"
        )));
    }
    Ok(())
}

/// Number of m-dimensional I_k by collapse dimension i = 2m - dim phi(I_k).
pub fn collapse_distribution(
    alg: &GradedLieAlgebra,
    k: usize,
    m: usize,
    opts: Options,
) -> Result<Vec<u128>> {
    check_collapse_layer(alg, k)?;
    let prob = ChainProblem::new(alg, k, k + 1, vec![Dim::Exact(m), Dim::Any], opts)?;
    let items = prob.plan()?;
    let tally = prob.run(&items, &mut |_, _| {})?;
    let mut out = vec![0u128; m + 1];
    for (&(_, r), &n) in &tally.hist {
        out[2 * m - r] += n;
    }
    Ok(out)
}

pub fn f_k_bruteforce(
    alg: &GradedLieAlgebra,
    k: usize,
    m: usize,
    i: usize,
    opts: Options,
) -> Result<u128> {
    if m > alg.dim(k) {
        return Ok(0);
    }
    Ok(collapse_distribution(alg, k, m, opts)?
        .get(i)
        .copied()
        .unwrap_or(0))
}

/// Windows I_k + ... + I_{k+n} closed under phi, counted by a = total dimension.
pub fn alpha_window_bruteforce(
    alg: &GradedLieAlgebra,
    n: usize,
    k: usize,
    opts: Options,
) -> Result<Vec<BigInt>> {
    if !(1..=2).contains(&n) || k == 0 || k + n > alg.class() {
        return Err(Error::Precondition(alloc::format!(
            "window n = {n} from k = {k} in class {}",
            alg.class()
        )));
    }
    ChainProblem::new(alg, k, k + n, vec![Dim::Any; n + 1], opts)?.count()
}

/// dim (W_{k,1} cap W_{k,2}).
pub fn w_intersection_dim(alg: &GradedLieAlgebra, k: usize) -> Result<usize> {
    if k == 0 || k >= alg.class() {
        return Err(Error::Precondition(alloc::format!(
            "W_k defined for 1 <= k <= c - 1, got {k}"
        )));
    }
    let layer = alg.layer(k);
    let (w1, w2) = (layer.w1.as_ref().unwrap(), layer.w2.as_ref().unwrap());
    Ok(w1.intersect(w2)?.dim())
}

/// alpha_1(., k) by enumerating pairs U_1 <= W_{k,1}, U_2 <= W_{k,2}. The collapse of I
/// depends only on U_i = I cap W_{k,i}, and the number of m-dimensional I meeting
/// W_{k,1}, W_{k,2} exactly in U_1, U_2 is g(d - j1 - j2, l - j1, l - j2, 0, 0, m - j1 - j2).
pub fn alpha1_pair_oracle(alg: &GradedLieAlgebra, k: usize, budget: u128) -> Result<Vec<BigInt>> {
    if k == 0 || k >= alg.class() {
        return Err(Error::Precondition(alloc::format!(
            "window k = {k} in class {}",
            alg.class()
        )));
    }
    if w_intersection_dim(alg, k)? != 0 {
        return Err(Error::Precondition(alloc::format!(
            "W_{{{k},1}} and W_{{{k},2}} intersect"
        )));
    }
    let field = alg.field();
    let p = field.p() as u64;
    let layer = alg.layer(k);
    let (w1, w2) = (layer.w1.as_ref().unwrap(), layer.w2.as_ref().unwrap());
    let l = w1.dim();
    let (d, next) = (alg.dim(k), alg.dim(k + 1));
    let per_side: u128 = (0..=l).map(|j| gaussian_u128(p, l, j)).sum();
    let pairs = per_side.saturating_mul(per_side);
    if pairs > budget {
        return Err(Error::BudgetExceeded {
            estimate: pairs,
            budget,
        });
    }
    let img1: Vec<(usize, FpMatrix)> = subspaces_in(w1, alg.phi_map(1, k))?;
    let img2: Vec<(usize, FpMatrix)> = subspaces_in(w2, alg.phi_map(2, k))?;
    // (j1, j2, i) -> number of pairs
    let mut hist: BTreeMap<(usize, usize, usize), u128> = BTreeMap::new();
    for (j1, a) in &img1 {
        for (j2, b) in &img2 {
            let sum = a.stack(b)?.rank();
            *hist.entry((*j1, *j2, j1 + j2 - sum)).or_default() += 1;
        }
    }
    let ring = AtPrime::new(p);
    let mut out = vec![BigInt::zero(); d + next + 1];
    for (&(j1, j2, i), &n) in &hist {
        for m in j1 + j2..=d {
            let g = g_count_in(
                &ring,
                (d - j1 - j2) as i64,
                (l - j1) as i64,
                (l - j2) as i64,
                0,
                0,
                (m - j1 - j2) as i64,
            )?;
            if g.is_zero() {
                continue;
            }
            let r = 2 * m - i;
            let weight = g * BigInt::from(n);
            for (a, slot) in out.iter_mut().enumerate() {
                let b = ring.gaussian(next as i64 - r as i64, a as i64 - m as i64 - r as i64);
                if !b.is_zero() {
                    *slot += &weight * b;
                }
            }
        }
    }
    Ok(out)
}

/// How a one-step window was counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WindowMethod {
    Direct,
    Pairs,
}

/// alpha_1(., k) by direct enumeration when it fits the budget, otherwise by the pair oracle.
pub fn alpha1_window_enumerated(
    alg: &GradedLieAlgebra,
    k: usize,
    opts: Options,
) -> Result<(Vec<BigInt>, WindowMethod)> {
    let prob = ChainProblem::new(alg, k, k + 1, vec![Dim::Any; 2], opts)?;
    let items = prob.plan()?;
    if prob.estimate(&items) <= opts.budget {
        let tally = prob.run(&items, &mut |_, _| {})?;
        return Ok((prob.finish(&tally), WindowMethod::Direct));
    }
    Ok((
        alpha1_pair_oracle(alg, k, opts.budget)?,
        WindowMethod::Pairs,
    ))
}

/// Sum over windows k = 1..c-1 of alpha_1(a, k) t^{d_k + d_{k+1} - a}, every window counted
/// without the closed form.
pub fn onestep_zeta_enumerated(
    alg: &GradedLieAlgebra,
    opts: Options,
) -> Result<(DirichletPoly<BigInt>, Vec<WindowMethod>)> {
    let c = alg.class();
    if c < 2 {
        return Err(Error::Precondition("one-step ideals need c >= 2".into()));
    }
    let width = (1..c).map(|k| alg.dim(k) + alg.dim(k + 1)).max().unwrap();
    let mut coeffs = vec![BigInt::zero(); width + 1];
    let mut methods = Vec::new();
    for k in 1..c {
        let top = alg.dim(k) + alg.dim(k + 1);
        let (alpha, how) = alpha1_window_enumerated(alg, k, opts)?;
        for (a, v) in alpha.into_iter().enumerate() {
            coeffs[top - a] += v;
        }
        methods.push(how);
    }
    Ok((DirichletPoly { coeffs }, methods))
}

/// Every subspace U of `w` with the matrix of phi(U) (rows spanning it).
fn subspaces_in(w: &Subspace, phi: &FpMatrix) -> Result<Vec<(usize, FpMatrix)>> {
    let field = w.field();
    let l = w.dim();
    let mut out = Vec::new();
    for j in 0..=l {
        for u in enumerate_subspaces(field, l, j) {
            let lifted = u.basis().mul(w.basis())?;
            out.push((j, lifted.mul(phi)?));
        }
    }
    Ok(out)
}

/// Points (a, c) in F_p^2 on 12 a^2 c + 3 a c^2 - 6 a c + 6 a^3 - 3 c^2 = 0.
pub fn residue_curve_points(field: PrimeField) -> u64 {
    let f = field;
    let k = |v: i64| f.from_i64(v);
    let mut n = 0;
    for a in 0..f.p() {
        for c in 0..f.p() {
            let terms = [
                f.mul(k(12), f.mul(f.mul(a, a), c)),
                f.mul(k(3), f.mul(a, f.mul(c, c))),
                f.neg(f.mul(k(6), f.mul(a, c))),
                f.mul(k(6), f.mul(a, f.mul(a, a))),
                f.neg(f.mul(k(3), f.mul(c, c))),
            ];
            if terms.iter().fold(0, |acc, &t| f.add(acc, t)) == 0 {
                n += 1;
            }
        }
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::GradedLieAlgebra;

    fn alg(c: usize, p: u64) -> GradedLieAlgebra {
        GradedLieAlgebra::build_any(c, PrimeField::new(p).unwrap()).unwrap()
    }

    #[test]
    fn class_two() {
        let z = enumerate_graded_zeta(&alg(2, 3), Options::default()).unwrap();
        let expect: Vec<BigInt> = [1, 4, 1, 1].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(z.coeffs, expect);
    }

    #[test]
    fn class_one() {
        let z = enumerate_graded_zeta(&alg(1, 5), Options::default()).unwrap();
        let expect: Vec<BigInt> = [1, 6, 1].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(z.coeffs, expect);
    }

    #[test]
    fn strategies_agree() {
        let a = alg(5, 3);
        let fast = enumerate_graded_zeta(&a, Options::default()).unwrap();
        let naive = enumerate_graded_zeta(
            &a,
            Options {
                strategy: Strategy::Naive,
                ..Options::default()
            },
        )
        .unwrap();
        let full = enumerate_graded_zeta(
            &a,
            Options {
                complete_last: false,
                ..Options::default()
            },
        )
        .unwrap();
        let orb = enumerate_graded_zeta(
            &a,
            Options {
                orbits: true,
                ..Options::default()
            },
        )
        .unwrap();
        assert_eq!(fast, naive);
        assert_eq!(fast, full);
        assert_eq!(fast, orb);
    }

    #[test]
    fn budget_guard() {
        let a = alg(6, 7);
        let tiny = Options {
            budget: 10,
            ..Options::default()
        };
        assert!(matches!(
            enumerate_graded_zeta(&a, tiny),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
