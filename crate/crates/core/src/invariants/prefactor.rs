use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{sign, InvariantsError};
use crate::algebra::{format_rational, LaurentPoly, Rational, RationalFunc};
use crate::combinat::factorial;

/// Truncated Laurent series in `v` with rational coefficients, exact up to
/// and including `v^order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VSeries {
    coeffs: BTreeMap<i32, Rational>,
    order: i32,
}

impl VSeries {
    pub fn new<I: IntoIterator<Item = (i32, Rational)>>(order: i32, terms: I) -> Self {
        let coeffs = terms.into_iter().filter(|(k, c)| *k <= order && !c.is_zero()).collect();
        Self { coeffs, order }
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    pub fn coeff(&self, k: i32) -> Rational {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn valuation(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn only_odd_powers(&self) -> bool {
        self.coeffs.keys().all(|k| k.rem_euclid(2) == 1)
    }

    pub fn only_even_powers(&self) -> bool {
        self.coeffs.keys().all(|k| k.rem_euclid(2) == 0)
    }

    /// Product, exact to the order both factors guarantee.
    pub fn mul(&self, other: &Self) -> Self {
        let va = self.valuation().unwrap_or(self.order);
        let vb = other.valuation().unwrap_or(other.order);
        let order = (self.order + vb).min(other.order + va);
        let mut out: BTreeMap<i32, Rational> = BTreeMap::new();
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                if i + j <= order {
                    *out.entry(i + j).or_insert_with(Rational::zero) += a * b;
                }
            }
        }
        Self::new(order, out)
    }
}

impl fmt::Display for VSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in &self.coeffs {
            write!(f, "{}·v^{} + ", format_rational(c), k)?;
        }
        write!(f, "O(v^{})", self.order + 1)
    }
}

impl Serialize for VSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(self.coeffs.len()))?;
        for (k, c) in &self.coeffs {
            map.serialize_entry(&k.to_string(), &format_rational(c))?;
        }
        map.end()
    }
}

/// Expansion of `f(t)` at `t = e^{v/2}` up to `v^order`.
pub fn v_expansion(f: &LaurentPoly, order: u32) -> VSeries {
    let terms = (0..=order).map(|n| {
        let mut acc = Rational::zero();
        for (k, c) in f.terms() {
            acc += c * num_traits::pow(Rational::new(k.into(), 2.into()), n as usize);
        }
        (n as i32, acc / Rational::from_integer(factorial(u64::from(n))))
    });
    VSeries::new(order as i32, terms.collect::<Vec<_>>())
}

/// `(−1)^{D−1} / (t^D − t^{−D})` at `t = e^{v/2}`, i.e. `(−1)^{D−1} / (2 sinh(Dv/2))`,
/// from `v^{-1}` up to `v^order`.
pub fn loglocal_prefactor_series(d_beta: u64, order: i32) -> Result<VSeries, InvariantsError> {
    if d_beta < 1 {
        return Err(InvariantsError::Domain("D·β must be >= 1".into()));
    }
    let d = Rational::from_integer(d_beta.into());
    // g(v) = 2 sinh(Dv/2)/(Dv) = Σ (D/2)^{2n} v^{2n}/(2n+1)!
    let len = (order + 2).max(0) as usize;
    let half = &d / Rational::from_integer(2.into());
    let g: Vec<Rational> = (0..len)
        .map(|k| {
            if k % 2 == 1 {
                Rational::zero()
            } else {
                num_traits::pow(half.clone(), k) / Rational::from_integer(factorial(k as u64 + 1))
            }
        })
        .collect();
    // Power-series reciprocal; g[0] = 1.
    let mut inv: Vec<Rational> = Vec::with_capacity(len);
    for k in 0..len {
        if k == 0 {
            inv.push(Rational::one());
            continue;
        }
        let mut acc = Rational::zero();
        for j in 1..=k {
            acc -= &g[j] * &inv[k - j];
        }
        inv.push(acc);
    }
    let lead = Rational::from_integer(BigInt::from(sign(d_beta as i64 - 1))) / d;
    Ok(VSeries::new(order, inv.into_iter().enumerate().map(|(k, c)| (k as i32 - 1, &lead * c))))
}

/// Refined local coefficient `−Ω̄ / ((t^{D·β} − t^{−D·β})(t − t⁻¹))`.
pub fn local_refined_coefficient(bar: &RationalFunc, d_beta: u64) -> Result<RationalFunc, InvariantsError> {
    let d = d_beta as i64;
    let den = &LaurentPoly::from_ints(&[(d, 1), (-d, -1)]) * &LaurentPoly::from_ints(&[(1, 1), (-1, -1)]);
    Ok(RationalFunc::new(-bar.num(), bar.den() * &den)?)
}
