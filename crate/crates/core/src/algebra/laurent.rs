use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, parse_rational, Rational};

/// Laurent polynomial in `t = q^{1/2}` with rational coefficients.
///
/// Stored as a sparse exponent map; zero coefficients are never stored, so
/// structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    /// `c * t^k`.
    pub fn monomial(k: i64, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Self { terms }
    }

    /// `t^k`.
    pub fn t_pow(k: i64) -> Self {
        Self::monomial(k, Rational::one())
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    /// Convenience constructor from small integer coefficients.
    pub fn from_ints(terms: &[(i64, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(k, c)| (k, Rational::from_integer(c.into()))))
    }

    fn add_term(&mut self, k: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(0).is_one()
    }

    pub fn coeff(&self, k: i64) -> Rational {
        self.terms.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect() }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { terms: self.terms.iter().map(|(&e, v)| (e + k, v.clone())).collect() }
    }

    /// Substitutes `t -> t^k`, i.e. `q^{1/2} -> q^{k/2}`.
    pub fn substitute_power(&self, k: u32) -> Self {
        assert!(k >= 1, "substitute_power requires k >= 1");
        let k = i64::from(k);
        Self { terms: self.terms.iter().map(|(&e, v)| (e * k, v.clone())).collect() }
    }

    /// `t -> t^{-1}`.
    pub fn bar(&self) -> Self {
        Self { terms: self.terms.iter().map(|(&e, v)| (-e, v.clone())).collect() }
    }

    /// True iff `coeff(k) == coeff(-k)` for every `k`.
    pub fn is_palindromic(&self) -> bool {
        self.terms.iter().all(|(&k, c)| self.terms.get(&-k) == Some(c))
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// True iff every exponent of `t` is even, i.e. the polynomial lies in
    /// `Q[q^{±1}]`.
    pub fn in_integer_q_powers(&self) -> bool {
        self.terms.keys().all(|k| k % 2 == 0)
    }

    /// Value at `t = 1`.
    pub fn eval_at_one(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (&k, c) in &self.terms {
            let p = if k >= 0 {
                num_traits::pow(t.clone(), k as usize)
            } else {
                num_traits::pow(t.recip(), (-k) as usize)
            };
            acc += c * p;
        }
        acc
    }

    /// Exact division by a nonzero Laurent polynomial. Returns `None` when
    /// the quotient is not a Laurent polynomial.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        assert!(!divisor.is_zero(), "division by zero Laurent polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (a_low, a) = self.to_dense();
        let (b_low, b) = divisor.to_dense();
        let (q, r) = dense_div_rem(&a, &b);
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_dense(a_low - b_low, q))
    }

    /// Monic greatest common divisor in `Q[t, t^{-1}]`, normalized to lowest
    /// exponent zero. `gcd(0, 0)` is zero.
    pub fn gcd(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return other.normalized_unit();
        }
        if other.is_zero() || self.is_monomial() || other.is_monomial() {
            if other.is_zero() {
                return self.normalized_unit();
            }
            return Self::one();
        }
        let (_, a) = self.to_dense();
        let (_, b) = other.to_dense();
        Self::from_dense(0, dense_gcd(a, b))
    }

    /// Shifts to lowest exponent zero and makes the leading coefficient one.
    fn normalized_unit(&self) -> LaurentPoly {
        match (self.min_exp(), self.leading_coeff()) {
            (Some(low), Some(lead)) => self.shift(-low).scale(&lead.recip()),
            _ => Self::zero(),
        }
    }

    /// Dense coefficient vector starting at the lowest exponent.
    pub(crate) fn to_dense(&self) -> (i64, Vec<Rational>) {
        let (Some(low), Some(high)) = (self.min_exp(), self.max_exp()) else {
            return (0, Vec::new());
        };
        let mut v = vec![Rational::zero(); (high - low + 1) as usize];
        for (&k, c) in &self.terms {
            v[(k - low) as usize] = c.clone();
        }
        (low, v)
    }

    pub(crate) fn from_dense(low: i64, coeffs: Vec<Rational>) -> Self {
        let terms = coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (low + i as i64, c))
            .collect();
        Self { terms }
    }

    /// Renders in powers of `q`, e.g. `"q + 1 + 1/q"` for `t^2 + 1 + t^{-2}`.
    pub fn to_q_string(&self) -> String {
        render(self, |k| {
            if k % 2 == 0 {
                let e = k / 2;
                match e {
                    0 => String::new(),
                    1 => "q".into(),
                    -1 => "/q".into(),
                    e if e > 0 => format!("q^{e}"),
                    e => format!("/q^{}", -e),
                }
            } else {
                format!("q^({k}/2)")
            }
        })
    }
}

/// Shared human rendering; `mono` maps an exponent to its monomial text
/// (empty for the constant, leading `/` for a reciprocal power).
fn render(p: &LaurentPoly, mono: impl Fn(i64) -> String) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (&k, c)) in p.terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let m = mono(k);
        let coeff = if abs.is_integer() {
            abs.to_string()
        } else {
            format!("({abs})")
        };
        if m.is_empty() {
            out.push_str(&coeff);
        } else if m.starts_with('/') {
            out.push_str(&coeff);
            out.push_str(&m);
        } else if abs.is_one() {
            out.push_str(&m);
        } else {
            out.push_str(&coeff);
            out.push_str(&m);
        }
    }
    out
}

fn trim(v: &mut Vec<Rational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Polynomial long division on dense ascending coefficient vectors.
pub(crate) fn dense_div_rem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r: Vec<Rational> = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    assert!(!b.is_empty(), "division by zero polynomial");
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = b.last().unwrap().recip();
    let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
    for i in (0..q.len()).rev() {
        let c = &r[i + b.len() - 1] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                r[i + j] -= &c * bj;
            }
        }
        q[i] = c;
    }
    r.truncate(b.len() - 1);
    trim(&mut r);
    (q, r)
}

fn dense_gcd(mut a: Vec<Rational>, mut b: Vec<Rational>) -> Vec<Rational> {
    trim(&mut a);
    trim(&mut b);
    // Lowest-order zeros are units in the Laurent ring.
    let strip = |v: &mut Vec<Rational>| {
        let z = v.iter().take_while(|c| c.is_zero()).count();
        v.drain(..z);
    };
    strip(&mut a);
    strip(&mut b);
    while !b.is_empty() {
        let (_, r) = dense_div_rem(&a, &b);
        a = b;
        b = r;
        strip(&mut b);
        if let Some(lead) = b.last().cloned() {
            let inv = lead.recip();
            for c in b.iter_mut() {
                *c *= &inv;
            }
        }
    }
    if let Some(lead) = a.last().cloned() {
        let inv = lead.recip();
        for c in a.iter_mut() {
            *c *= &inv;
        }
    }
    a
}

impl fmt::Display for LaurentPoly {
    /// Renders in powers of `t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = render(self, |k| match k {
            0 => String::new(),
            1 => "t".into(),
            k => format!("t^{k}"),
        });
        f.write_str(&s)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&k, c)| (k, -c.clone())).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let (la, a) = self.to_dense();
        let (lb, b) = rhs.to_dense();
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    out[i + j] += ai * bj;
                }
            }
        }
        LaurentPoly::from_dense(la + lb, out)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl From<Rational> for LaurentPoly {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(c)))
    }
}

/// Serialized as `{"k": "p/q", ...}` keyed by `t`-exponent, ascending.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (k, c) in &self.terms {
            map.serialize_entry(&k.to_string(), &format_rational(c))?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = LaurentPoly;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a map from t-exponent to \"p/q\"")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<LaurentPoly, A::Error> {
                let mut out = LaurentPoly::zero();
                while let Some((k, v)) = access.next_entry::<String, String>()? {
                    let k: i64 = k.trim().parse().map_err(|_| de::Error::custom(format!("bad exponent {k:?}")))?;
                    let c = parse_rational(&v).map_err(de::Error::custom)?;
                    out.add_term(k, c);
                }
                Ok(out)
            }
        }
        deserializer.deserialize_map(V)
    }
}
