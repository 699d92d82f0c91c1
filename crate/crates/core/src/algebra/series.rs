use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use super::ratfunc::RationalFunc;
use super::rational::Rational;
use super::AlgebraError;

/// How binary operations treat operands with different cutoffs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TruncationPolicy {
    /// Truncate to the smaller cutoff.
    #[default]
    Lenient,
    /// Refuse to combine series with different cutoffs.
    Strict,
}

/// Truncated formal series `Σ_{d=0}^{N} c_d z^d` with rational-function
/// coefficients, exact modulo `z^{N+1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedSeries {
    cutoff: u32,
    coeffs: BTreeMap<u32, RationalFunc>,
}

impl GradedSeries {
    pub fn zero(cutoff: u32) -> Self {
        Self { cutoff, coeffs: BTreeMap::new() }
    }

    pub fn one(cutoff: u32) -> Self {
        Self::monomial(cutoff, 0, RationalFunc::one())
    }

    /// `c z^d`, or zero if `d` exceeds the cutoff.
    pub fn monomial(cutoff: u32, d: u32, c: RationalFunc) -> Self {
        let mut s = Self::zero(cutoff);
        s.set(d, c);
        s
    }

    /// Builds from `(degree, coefficient)` pairs, dropping degrees above the
    /// cutoff. Repeated degrees add up.
    pub fn from_coeffs<I>(cutoff: u32, coeffs: I) -> Self
    where
        I: IntoIterator<Item = (u32, RationalFunc)>,
    {
        let mut s = Self::zero(cutoff);
        for (d, c) in coeffs {
            if d <= cutoff {
                let sum = &s.coeff(d) + &c;
                s.set(d, sum);
            }
        }
        s
    }

    fn set(&mut self, d: u32, c: RationalFunc) {
        if d > self.cutoff {
            return;
        }
        if c.is_zero() {
            self.coeffs.remove(&d);
        } else {
            self.coeffs.insert(d, c);
        }
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn coeff(&self, d: u32) -> RationalFunc {
        self.coeffs.get(&d).cloned().unwrap_or_else(RationalFunc::zero)
    }

    /// Nonzero coefficients in increasing degree.
    pub fn coeffs(&self) -> impl Iterator<Item = (u32, &RationalFunc)> {
        self.coeffs.iter().map(|(&d, c)| (d, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn truncate(&self, cutoff: u32) -> Self {
        let cutoff = cutoff.min(self.cutoff);
        Self { cutoff, coeffs: self.coeffs.range(..=cutoff).map(|(&d, c)| (d, c.clone())).collect() }
    }

    fn common_cutoff(&self, other: &Self, policy: TruncationPolicy) -> Result<u32, AlgebraError> {
        if policy == TruncationPolicy::Strict && self.cutoff != other.cutoff {
            return Err(AlgebraError::CutoffMismatch { left: self.cutoff, right: other.cutoff });
        }
        Ok(self.cutoff.min(other.cutoff))
    }

    pub fn checked_add(&self, other: &Self, policy: TruncationPolicy) -> Result<Self, AlgebraError> {
        let n = self.common_cutoff(other, policy)?;
        let mut out = self.truncate(n);
        for (&d, c) in other.coeffs.range(..=n) {
            let sum = &out.coeff(d) + c;
            out.set(d, sum);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self, policy: TruncationPolicy) -> Result<Self, AlgebraError> {
        let n = self.common_cutoff(other, policy)?;
        let mut out = Self::zero(n);
        for (&i, a) in self.coeffs.range(..=n) {
            for (&j, b) in other.coeffs.range(..=n - i) {
                let sum = &out.coeff(i + j) + &(a * b);
                out.set(i + j, sum);
            }
        }
        Ok(out)
    }

    /// Sum, truncated to the smaller cutoff.
    pub fn add(&self, other: &Self) -> Self {
        self.checked_add(other, TruncationPolicy::Lenient).expect("lenient")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Product, truncated to the smaller cutoff.
    pub fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other, TruncationPolicy::Lenient).expect("lenient")
    }

    pub fn neg(&self) -> Self {
        Self { cutoff: self.cutoff, coeffs: self.coeffs.iter().map(|(&d, c)| (d, -c)).collect() }
    }

    pub fn scale(&self, c: &RationalFunc) -> Self {
        let mut out = Self::zero(self.cutoff);
        for (&d, a) in &self.coeffs {
            out.set(d, a * c);
        }
        out
    }

    /// `z -> z^k` together with `t -> t^k` on every coefficient: the
    /// Adams operation used by plethystic exponentials.
    pub fn adams(&self, k: u32) -> Self {
        assert!(k >= 1, "adams operation requires k >= 1");
        let mut out = Self::zero(self.cutoff);
        for (&d, c) in &self.coeffs {
            if let Some(e) = d.checked_mul(k).filter(|&e| e <= self.cutoff) {
                out.set(e, c.substitute_power(k));
            }
        }
        out
    }

    /// Multiplicative inverse; requires an invertible constant term.
    pub fn recip(&self) -> Result<Self, AlgebraError> {
        let c0 = self.coeff(0);
        let inv0 = c0.recip().map_err(|_| AlgebraError::BadConstantTerm {
            expected: "nonzero",
            found: c0.to_string(),
        })?;
        let mut out = Self::zero(self.cutoff);
        out.set(0, inv0.clone());
        for n in 1..=self.cutoff {
            let mut acc = RationalFunc::zero();
            for (&k, a) in self.coeffs.range(1..=n) {
                acc = &acc + &(a * &out.coeff(n - k));
            }
            out.set(n, -&(&acc * &inv0));
        }
        Ok(out)
    }
}

fn ratio(p: u32, q: u32) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// `exp(S)` modulo `z^{N+1}`; requires `S` to have zero constant term.
pub fn series_exp(s: &GradedSeries) -> Result<GradedSeries, AlgebraError> {
    let c0 = s.coeff(0);
    if !c0.is_zero() {
        return Err(AlgebraError::BadConstantTerm { expected: "0", found: c0.to_string() });
    }
    // n E_n = Σ_{k=1}^{n} k S_k E_{n-k}
    let mut out = GradedSeries::one(s.cutoff);
    for n in 1..=s.cutoff {
        let mut acc = RationalFunc::zero();
        for (&k, sk) in s.coeffs.range(1..=n) {
            let e = out.coeff(n - k);
            if !e.is_zero() {
                acc = &acc + &(sk * &e).scale(&ratio(k, 1));
            }
        }
        out.set(n, acc.scale(&ratio(1, n)));
    }
    Ok(out)
}

/// `log(S)` modulo `z^{N+1}`; requires `S` to have constant term one.
pub fn series_log(s: &GradedSeries) -> Result<GradedSeries, AlgebraError> {
    let c0 = s.coeff(0);
    if !c0.is_one() {
        return Err(AlgebraError::BadConstantTerm { expected: "1", found: c0.to_string() });
    }
    // L_n = S_n - (1/n) Σ_{k=1}^{n-1} k L_k S_{n-k}
    let mut out = GradedSeries::zero(s.cutoff);
    for n in 1..=s.cutoff {
        let mut acc = RationalFunc::zero();
        for (&k, lk) in out.coeffs.range(1..n) {
            let sn = s.coeff(n - k);
            if !sn.is_zero() {
                acc = &acc + &(lk * &sn).scale(&ratio(k, 1));
            }
        }
        let ln = &s.coeff(n) - &acc.scale(&ratio(1, n));
        out.set(n, ln);
    }
    Ok(out)
}

impl fmt::Display for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        }
        for (i, (d, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{c}] z^{d}")?;
        }
        write!(f, " + O(z^{})", self.cutoff + 1)
    }
}

impl fmt::Debug for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedSeries({self})")
    }
}
