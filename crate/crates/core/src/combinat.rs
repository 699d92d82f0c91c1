//! Integer combinatorics and plethystic machinery.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{series_exp, series_log, AlgebraError, GradedSeries, LaurentPoly, Rational, RationalFunc};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombinatError {
    #[error("expected a positive integer, got {0}")]
    NonPositive(i64),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Möbius function μ(n) by trial division.
pub fn moebius(n: i64) -> Result<i8, CombinatError> {
    if n < 1 {
        return Err(CombinatError::NonPositive(n));
    }
    let mut n = n as u64;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return Ok(0);
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    Ok(sign)
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|k| n % k == 0).collect()
}

/// Exact binomial coefficient; zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// An unordered partition, parts stored in non-increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Sorts the parts; rejects zero parts.
    pub fn new(mut parts: Vec<u32>) -> Result<Self, CombinatError> {
        if parts.contains(&0) {
            return Err(CombinatError::NonPositive(0));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn length(&self) -> usize {
        self.parts.len()
    }

    /// Order of the automorphism group: product over distinct part values of
    /// (multiplicity)!.
    pub fn aut(&self) -> BigInt {
        let mut acc = BigInt::one();
        let mut i = 0;
        while i < self.parts.len() {
            let j = i + self.parts[i..].iter().take_while(|&&p| p == self.parts[i]).count();
            acc *= factorial((j - i) as u64);
            i = j;
        }
        acc
    }
}

/// Iterator over the partitions of `d` in reverse-lexicographic order,
/// starting from `(d)` and ending at `(1, …, 1)`.
#[derive(Debug, Clone)]
pub struct Partitions {
    current: Option<Vec<u32>>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let out = self.current.take()?;
        // Successor: decrement the rightmost part > 1 and refill greedily.
        let mut next = out.clone();
        if let Some(pos) = next.iter().rposition(|&p| p > 1) {
            let mut rest: u32 = next[pos + 1..].iter().sum::<u32>() + 1;
            let cap = next[pos] - 1;
            next[pos] = cap;
            next.truncate(pos + 1);
            while rest > 0 {
                let part = rest.min(cap);
                next.push(part);
                rest -= part;
            }
            self.current = Some(next);
        }
        Some(Partition { parts: out })
    }
}

/// All partitions of `d`. `d = 0` yields the empty partition once.
pub fn partitions(d: u32) -> Partitions {
    let start = if d == 0 { Vec::new() } else { vec![d] };
    Partitions { current: Some(start) }
}

/// Quantum integer `[m]_q = t^{m-1} + t^{m-3} + … + t^{-(m-1)}`, `t = q^{1/2}`.
pub fn quantum_integer(m: u32) -> LaurentPoly {
    let m = i64::from(m);
    LaurentPoly::from_terms((0..m).map(|j| (m - 1 - 2 * j, Rational::one())))
}

/// Plethystic exponential `Exp(f) = exp(Σ_{k≥1} f(t^k, z^k)/k)`.
pub fn plethystic_exp(s: &GradedSeries) -> Result<GradedSeries, CombinatError> {
    let c0 = s.coeff(0);
    if !c0.is_zero() {
        return Err(AlgebraError::BadConstantTerm { expected: "0", found: c0.to_string() }.into());
    }
    let mut arg = GradedSeries::zero(s.cutoff());
    for k in 1..=s.cutoff().max(1) {
        let term = s.adams(k).scale(&RationalFunc::constant(Rational::new(1.into(), k.into())));
        arg = arg.add(&term);
    }
    Ok(series_exp(&arg)?)
}

/// Plethystic logarithm, the inverse of [`plethystic_exp`]:
/// `Log(F) = Σ_{k≥1} μ(k)/k · (log F)(t^k, z^k)`.
pub fn plethystic_log(s: &GradedSeries) -> Result<GradedSeries, CombinatError> {
    let log = series_log(s)?;
    let mut out = GradedSeries::zero(s.cutoff());
    for k in 1..=s.cutoff().max(1) {
        let mu = moebius(i64::from(k))?;
        if mu == 0 {
            continue;
        }
        let w = Rational::new(BigInt::from(mu), BigInt::from(k));
        out = out.add(&log.adams(k).scale(&RationalFunc::constant(w)));
    }
    Ok(out)
}
