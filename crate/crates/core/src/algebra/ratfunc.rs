use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::laurent::LaurentPoly;
use super::rational::Rational;
use super::AlgebraError;

/// Reduced quotient of two Laurent polynomials in `t`.
///
/// Canonical form: `gcd(num, den) = 1`, `den` has lowest exponent zero and
/// leading coefficient one, and zero is stored as `0/1`. Structural equality
/// is therefore mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunc {
    /// Reduces `num/den` to canonical form.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides numerator"), den.div_exact(&g).expect("gcd divides denominator"))
        };
        Ok(Self::normalize_coprime(num, den))
    }

    /// Normalizes a pair already known to be coprime.
    fn normalize_coprime(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let low = den.min_exp().expect("nonzero denominator");
        let lead = den.leading_coeff().expect("nonzero denominator").recip();
        Self { num: num.shift(-low).scale(&lead), den: den.shift(-low).scale(&lead) }
    }

    pub fn zero() -> Self {
        Self { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self { num: p, den: LaurentPoly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The underlying Laurent polynomial when the denominator is trivial.
    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        self.den.is_one().then_some(&self.num)
    }

    /// Equality by cross-multiplication, independent of canonical form.
    pub fn cross_eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn recip(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        Ok(Self::normalize_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self, AlgebraError> {
        Ok(self * &other.recip()?)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { num: self.num.shift(k), den: self.den.clone() }
    }

    /// `t -> t^k` applied to numerator and denominator separately.
    pub fn substitute_power(&self, k: u32) -> Self {
        let num = self.num.substitute_power(k);
        let den = self.den.substitute_power(k);
        // Substitution preserves coprimality over Q only up to common
        // cyclotomic factors, so reduce again.
        Self::new(num, den).expect("substitution keeps denominators nonzero")
    }

    /// Value at `t = 1`, or `None` at a pole.
    pub fn eval_at_one(&self) -> Option<Rational> {
        let d = self.den.eval_at_one();
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_at_one() / d)
    }
}

impl Add for &RationalFunc {
    type Output = RationalFunc;
    fn add(self, rhs: &RationalFunc) -> RationalFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunc::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero denominator");
        }
        let g = self.den.gcd(&rhs.den);
        let left_cofactor = rhs.den.div_exact(&g).expect("gcd divides");
        let right_cofactor = self.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &left_cofactor) + &(&rhs.num * &right_cofactor);
        let den = &self.den * &left_cofactor;
        RationalFunc::new(num, den).expect("nonzero denominator")
    }
}

impl Neg for &RationalFunc {
    type Output = RationalFunc;
    fn neg(self) -> RationalFunc {
        RationalFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Sub for &RationalFunc {
    type Output = RationalFunc;
    fn sub(self, rhs: &RationalFunc) -> RationalFunc {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunc {
    type Output = RationalFunc;
    fn mul(self, rhs: &RationalFunc) -> RationalFunc {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunc::from_poly(&self.num * &rhs.num);
        }
        // Cancel across the diagonals so the product is already coprime.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let a = self.num.div_exact(&g1).expect("gcd divides");
        let d = rhs.den.div_exact(&g1).expect("gcd divides");
        let c = rhs.num.div_exact(&g2).expect("gcd divides");
        let b = self.den.div_exact(&g2).expect("gcd divides");
        RationalFunc::normalize_coprime(&a * &c, &b * &d)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RationalFunc {
            type Output = RationalFunc;
            fn $m(self, rhs: RationalFunc) -> RationalFunc {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for RationalFunc {
    type Output = RationalFunc;
    fn neg(self) -> RationalFunc {
        -&self
    }
}

impl Zero for RationalFunc {
    fn zero() -> Self {
        RationalFunc::zero()
    }
    fn is_zero(&self) -> bool {
        RationalFunc::is_zero(self)
    }
}

impl One for RationalFunc {
    fn one() -> Self {
        RationalFunc::one()
    }
}

impl From<LaurentPoly> for RationalFunc {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl From<Rational> for RationalFunc {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl fmt::Display for RationalFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunc({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct RationalFuncRepr {
    num: LaurentPoly,
    den: LaurentPoly,
}

/// Serialized as `{"num": {...}, "den": {...}}` in canonical form.
impl Serialize for RationalFunc {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RationalFuncRepr { num: self.num.clone(), den: self.den.clone() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalFunc {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = RationalFuncRepr::deserialize(deserializer)?;
        RationalFunc::new(repr.num, repr.den).map_err(serde::de::Error::custom)
    }
}
