//! Fitting polynomials in p to counts over a set of primes, one per residue class.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FitStatus {
    /// Integral fit reproducing every held-out prime.
    Fitted(IntPoly),
    /// Integral fit with no prime left over to check it against.
    Unconfirmed(IntPoly),
    /// Interpolating polynomial has a non-integer coefficient.
    NonIntegral,
    /// Integral fit that misses the value at this held-out prime.
    HeldOutMismatch {
        prime: u64,
        predicted: BigInt,
        found: BigInt,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFit {
    /// Residues mod the modulus sharing this fit (merged after fitting).
    pub residues: Vec<u64>,
    pub fit_primes: Vec<u64>,
    pub held_out: Vec<u64>,
    pub status: FitStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanResult {
    pub modulus: u64,
    pub degree: usize,
    pub classes: Vec<ClassFit>,
    /// One integral polynomial fits every prime (possibly unconfirmed).
    pub uniform: bool,
}

impl ScanResult {
    pub fn all_fitted(&self) -> bool {
        self.classes
            .iter()
            .all(|c| matches!(c.status, FitStatus::Fitted(_)))
    }

    pub fn polynomial_for(&self, p: u64) -> Option<&IntPoly> {
        let r = p % self.modulus;
        self.classes
            .iter()
            .find(|c| c.residues.contains(&r))
            .and_then(|c| match &c.status {
                FitStatus::Fitted(f) | FitStatus::Unconfirmed(f) => Some(f),
                _ => None,
            })
    }
}

/// Exact Lagrange interpolation through the points; coefficients ascending.
pub fn interpolate(points: &[(u64, BigInt)]) -> Vec<BigRational> {
    let n = points.len();
    let mut out = vec_zero(n);
    for (i, (xi, yi)) in points.iter().enumerate() {
        // basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j)
        let mut basis: Vec<BigInt> = vec_int_one();
        let mut denom = BigInt::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = alloc::vec![BigInt::zero(); basis.len() + 1];
            for (e, c) in basis.iter().enumerate() {
                next[e + 1] += c;
                next[e] -= c * BigInt::from(*xj);
            }
            basis = next;
            denom *= BigInt::from(*xi) - BigInt::from(*xj);
        }
        for (e, c) in basis.into_iter().enumerate() {
            out[e] += BigRational::new(c * yi, denom.clone());
        }
    }
    out
}

fn vec_zero(n: usize) -> Vec<BigRational> {
    alloc::vec![BigRational::zero(); n]
}

fn vec_int_one() -> Vec<BigInt> {
    alloc::vec![BigInt::one()]
}

/// Fit of degree `degree` through the first degree + 1 samples, checked on the rest.
pub fn fit_class(samples: &[(u64, BigInt)], degree: usize) -> FitStatus {
    let (fit, rest) = samples.split_at(degree + 1);
    let coeffs = interpolate(fit);
    if coeffs.iter().any(|c| !c.is_integer()) {
        return FitStatus::NonIntegral;
    }
    let poly = IntPoly::from_coeffs(coeffs.into_iter().map(|c| c.to_integer()).collect());
    for (p, v) in rest {
        let predicted = poly.eval_u64(*p);
        if &predicted != v {
            return FitStatus::HeldOutMismatch {
                prime: *p,
                predicted,
                found: v.clone(),
            };
        }
    }
    if rest.is_empty() {
        return FitStatus::Unconfirmed(poly);
    }
    FitStatus::Fitted(poly)
}

/// Groups samples by p mod `modulus`, fits each class, then merges classes with equal
/// fits. Every residue class present needs degree + 1 primes; a class without a further
/// held-out prime comes back unconfirmed.
pub fn scan(samples: &[(u64, BigInt)], modulus: u64, degree: usize) -> Result<ScanResult> {
    if modulus == 0 {
        return Err(Error::Precondition("modulus must be positive".into()));
    }
    let mut sorted: Vec<(u64, BigInt)> = samples.to_vec();
    sorted.sort_by_key(|s| s.0);
    sorted.dedup_by_key(|s| s.0);
    let mut residues: Vec<u64> = sorted.iter().map(|s| s.0 % modulus).collect();
    residues.sort_unstable();
    residues.dedup();
    if residues.is_empty() {
        return Err(Error::InsufficientPrimes {
            class: "all".into(),
            needed: degree + 2,
            found: 0,
        });
    }
    let mut classes: Vec<ClassFit> = Vec::new();
    for r in residues {
        let pts: Vec<(u64, BigInt)> = sorted
            .iter()
            .filter(|s| s.0 % modulus == r)
            .cloned()
            .collect();
        if pts.len() < degree + 1 {
            return Err(Error::InsufficientPrimes {
                class: alloc::format!("{r} mod {modulus}"),
                needed: degree + 1,
                found: pts.len(),
            });
        }
        let status = fit_class(&pts, degree);
        let primes: Vec<u64> = pts.iter().map(|s| s.0).collect();
        let (fit_primes, held_out) = primes.split_at(degree + 1);
        let merged = classes.iter_mut().find(|c| same_fit(&c.status, &status));
        match merged {
            Some(c) => {
                if matches!(status, FitStatus::Fitted(_)) {
                    c.status = status;
                }
                c.residues.push(r);
                c.fit_primes.extend_from_slice(fit_primes);
                c.held_out.extend_from_slice(held_out);
            }
            None => classes.push(ClassFit {
                residues: alloc::vec![r],
                fit_primes: fit_primes.to_vec(),
                held_out: held_out.to_vec(),
                status,
            }),
        }
    }
    let uniform = classes.len() == 1 && fitted_poly(&classes[0].status).is_some();
    Ok(ScanResult {
        modulus,
        degree,
        classes,
        uniform,
    })
}

fn fitted_poly(s: &FitStatus) -> Option<&IntPoly> {
    match s {
        FitStatus::Fitted(f) | FitStatus::Unconfirmed(f) => Some(f),
        _ => None,
    }
}

fn same_fit(a: &FitStatus, b: &FitStatus) -> bool {
    matches!((fitted_poly(a), fitted_poly(b)), (Some(x), Some(y)) if x == y)
}

/// Primes in [lo, hi].
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(2)..=hi)
        .filter(|&n| crate::field::is_prime(n))
        .collect()
}

/// The first `count` primes >= lo in each residue class mod `modulus` coprime to it.
pub fn primes_per_class(lo: u64, modulus: u64, count: usize) -> Vec<u64> {
    let classes: Vec<u64> = (0..modulus).filter(|r| r.gcd(&modulus) == 1).collect();
    let mut got = alloc::vec![0usize; modulus as usize];
    let mut out = Vec::new();
    let mut n = lo.max(2);
    while classes.iter().any(|&r| got[r as usize] < count) {
        if crate::field::is_prime(n) && !modulus.is_multiple_of(n) {
            let r = (n % modulus) as usize;
            if got[r] < count {
                got[r] += 1;
                out.push(n);
            }
        }
        n += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn samples(f: impl Fn(u64) -> i64, primes: &[u64]) -> Vec<(u64, BigInt)> {
        primes.iter().map(|&p| (p, BigInt::from(f(p)))).collect()
    }

    #[test]
    fn recovers_cubic() {
        let s = samples(|p| (p * p * p + 2 * p + 7) as i64, &[5, 7, 11, 13, 17, 19]);
        let res = scan(&s, 1, 3).unwrap();
        assert!(res.uniform);
        assert_eq!(
            res.polynomial_for(23).unwrap(),
            &IntPoly::from_i64(&[7, 2, 0, 1])
        );
    }

    #[test]
    fn non_integral_and_mismatch() {
        let s = samples(|p| (p / 2) as i64, &[5, 7, 11]);
        assert_eq!(fit_class(&s, 1), FitStatus::NonIntegral);
        let s = samples(|p| ((p * p) / 2) as i64, &[5, 7, 11]);
        assert!(matches!(
            fit_class(&s, 1),
            FitStatus::HeldOutMismatch { prime: 11, .. }
        ));
        let s = samples(
            |p| if p % 4 == 1 { (p * p) as i64 } else { 0 },
            &[5, 7, 13, 17, 19],
        );
        assert!(matches!(
            fit_class(&s, 1),
            FitStatus::HeldOutMismatch { .. } | FitStatus::NonIntegral
        ));
    }

    #[test]
    fn classes_split_and_merge() {
        let primes = primes_per_class(5, 4, 4);
        let s = samples(
            |p| {
                if p % 4 == 1 {
                    (p + 1) as i64
                } else {
                    (p - 1) as i64
                }
            },
            &primes,
        );
        let res = scan(&s, 4, 1).unwrap();
        assert!(!res.uniform);
        assert_eq!(res.classes.len(), 2);
        let s = samples(|p| (p + 1) as i64, &primes);
        let res = scan(&s, 4, 1).unwrap();
        assert!(res.uniform);
        assert_eq!(res.classes[0].residues, [1, 3]);
    }

    #[test]
    fn too_few_primes() {
        let s = samples(|p| p as i64, &[5]);
        assert!(matches!(
            scan(&s, 1, 1),
            Err(Error::InsufficientPrimes { .. })
        ));
        let s = samples(|p| p as i64, &[5, 7]);
        let res = scan(&s, 1, 1).unwrap();
        assert!(res.uniform && !res.all_fitted());
        assert_eq!(
            res.classes[0].status,
            FitStatus::Unconfirmed(IntPoly::from_i64(&[0, 1]))
        );
    }
}
