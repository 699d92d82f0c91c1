use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use super::QtorusError;
use crate::algebra::{LaurentPoly, Rational, RationalFunc};

/// Commutation rule `x^v x^w = (εt)^{p·det(v,w)} x^{v+w}` with pairing `p`
/// and sign `ε = ±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QTorus {
    pairing: i64,
    twisted: bool,
}

impl QTorus {
    /// `x^v x^w = t^{m·det(v,w)} x^{v+w}`.
    pub fn standard(m: u32) -> Self {
        Self { pairing: i64::from(m), twisted: false }
    }

    /// Quiver convention `x^v x^w = (−t)^{⟨v,w⟩} x^{v+w}` with the
    /// antisymmetrized Euler form `⟨v,w⟩ = −m·det(v,w)` of the `m`-Kronecker quiver.
    pub fn quiver(m: u32) -> Self {
        Self { pairing: -i64::from(m), twisted: true }
    }

    pub fn pairing(&self) -> i64 {
        self.pairing
    }

    pub fn twisted(&self) -> bool {
        self.twisted
    }

    /// `(εt)^{p·det(v,w)}`.
    fn factor(&self, v: (u32, u32), w: (u32, u32)) -> (i64, bool) {
        let det = i64::from(v.0) * i64::from(w.1) - i64::from(v.1) * i64::from(w.0);
        let e = self.pairing * det;
        (e, self.twisted && e.rem_euclid(2) == 1)
    }
}

/// Element of the quantum torus truncated at total degree `a + b <= order`.
#[derive(Clone, PartialEq, Eq)]
pub struct QTorusElement {
    torus: QTorus,
    order: u32,
    terms: BTreeMap<(u32, u32), RationalFunc>,
}

impl QTorusElement {
    pub fn zero(torus: QTorus, order: u32) -> Self {
        Self { torus, order, terms: BTreeMap::new() }
    }

    pub fn one(torus: QTorus, order: u32) -> Self {
        Self::monomial(torus, order, (0, 0), RationalFunc::one())
    }

    pub fn monomial(torus: QTorus, order: u32, v: (u32, u32), c: RationalFunc) -> Self {
        let mut out = Self::zero(torus, order);
        out.add_term(v, c);
        out
    }

    pub fn torus(&self) -> QTorus {
        self.torus
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeff(&self, v: (u32, u32)) -> RationalFunc {
        self.terms.get(&v).cloned().unwrap_or_else(RationalFunc::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &RationalFunc)> {
        self.terms.iter().map(|(v, c)| (*v, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff((0, 0)).is_one()
    }

    /// Adds `c·x^v`, dropping it beyond the truncation.
    pub fn add_term(&mut self, v: (u32, u32), c: RationalFunc) {
        if v.0 + v.1 > self.order || c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&v) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(v, sum);
        }
    }

    fn check(&self, other: &Self) -> Result<(), QtorusError> {
        if self.torus != other.torus {
            return Err(QtorusError::TorusMismatch);
        }
        if self.order != other.order {
            return Err(QtorusError::TruncationMismatch { left: self.order, right: other.order });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, QtorusError> {
        self.check(other)?;
        let mut out = self.clone();
        for (v, c) in &other.terms {
            out.add_term(*v, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, QtorusError> {
        self.add(&other.scale(&RationalFunc::constant(-Rational::one())))
    }

    pub fn scale(&self, c: &RationalFunc) -> Self {
        let mut out = Self::zero(self.torus, self.order);
        for (v, x) in &self.terms {
            out.add_term(*v, x * c);
        }
        out
    }

    /// Noncommutative product, exact to the truncation.
    pub fn qt_mul(&self, other: &Self) -> Result<Self, QtorusError> {
        self.check(other)?;
        let mut acc: BTreeMap<(u32, u32), RationalFunc> = BTreeMap::new();
        for (v, a) in &self.terms {
            for (w, b) in &other.terms {
                let s = (v.0 + w.0, v.1 + w.1);
                if s.0 + s.1 > self.order {
                    continue;
                }
                let (e, negate) = self.torus.factor(*v, *w);
                let mut c = (a * b).shift(e);
                if negate {
                    c = -c;
                }
                let slot = acc.entry(s).or_insert_with(RationalFunc::zero);
                *slot = &*slot + &c;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Self { torus: self.torus, order: self.order, terms: acc })
    }

    /// Inverse of an element with constant term 1, `Σ (1 − A)^k`.
    pub fn inverse(&self) -> Result<Self, QtorusError> {
        if !self.coeff((0, 0)).is_one() {
            return Err(QtorusError::NotInvertible);
        }
        let one = Self::one(self.torus, self.order);
        let g = one.sub(self)?;
        let mut out = one.clone();
        let mut power = one;
        for _ in 0..self.order {
            power = power.qt_mul(&g)?;
            if power.is_zero() {
                break;
            }
            out = out.add(&power)?;
        }
        Ok(out)
    }

    /// Terms of total degree exactly `n`.
    pub fn degree_part(&self, n: u32) -> Vec<((u32, u32), RationalFunc)> {
        self.terms.iter().filter(|(v, _)| v.0 + v.1 == n).map(|(v, c)| (*v, c.clone())).collect()
    }
}

impl fmt::Display for QTorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|((a, b), c)| format!("({c})·x^({a},{b})")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for QTorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QTorusElement[{} | order {}]", self, self.order)
    }
}

/// Coefficients `t^{n²}/Π_{i=1}^{n}(t^{2i} − 1)` of the quantum dilogarithm.
pub(crate) fn dilog_coefficients(len: u32) -> Vec<RationalFunc> {
    let mut out = Vec::with_capacity(len as usize + 1);
    let mut den = LaurentPoly::one();
    for n in 0..=len {
        if n > 0 {
            den = &den * &LaurentPoly::from_ints(&[(2 * i64::from(n), 1), (0, -1)]);
        }
        let num = LaurentPoly::t_pow(i64::from(n) * i64::from(n));
        out.push(RationalFunc::new(num, den.clone()).expect("nonzero denominator"));
    }
    out
}

/// `E(x^v) = Σ_{n>=0} t^{n²}/((t²−1)(t⁴−1)⋯(t^{2n}−1)) x^{nv}`, truncated at
/// `n·(a+b) <= order`.
pub fn quantum_dilog(torus: QTorus, v: (u32, u32), order: u32) -> Result<QTorusElement, QtorusError> {
    let w = v.0 + v.1;
    if w == 0 {
        return Err(QtorusError::Domain("quantum dilogarithm needs a nonzero vector".into()));
    }
    let mut out = QTorusElement::zero(torus, order);
    for (n, c) in dilog_coefficients(order / w).into_iter().enumerate() {
        let n = n as u32;
        out.add_term((n * v.0, n * v.1), c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn x(t: QTorus, n: u32) -> QTorusElement {
        QTorusElement::monomial(t, n, (1, 0), RationalFunc::one())
    }
    fn y(t: QTorus, n: u32) -> QTorusElement {
        QTorusElement::monomial(t, n, (0, 1), RationalFunc::one())
    }

    #[test]
    fn commutation() {
        let t = QTorus::standard(3);
        let xy = x(t, 4).qt_mul(&y(t, 4)).unwrap();
        let yx = y(t, 4).qt_mul(&x(t, 4)).unwrap();
        assert_eq!(xy.coeff((1, 1)), RationalFunc::from_poly(LaurentPoly::t_pow(3)));
        assert_eq!(yx.coeff((1, 1)), RationalFunc::from_poly(LaurentPoly::t_pow(-3)));
        let q = QTorus::quiver(3);
        let xy = x(q, 4).qt_mul(&y(q, 4)).unwrap();
        assert_eq!(xy.coeff((1, 1)), RationalFunc::from_poly(LaurentPoly::monomial(-3, int(-1))));
    }

    #[test]
    fn unit_and_associativity() {
        let t = QTorus::standard(2);
        let a = x(t, 5).add(&y(t, 5)).unwrap().add(&QTorusElement::one(t, 5)).unwrap();
        assert_eq!(a.qt_mul(&QTorusElement::one(t, 5)).unwrap(), a);
        let (xx, yy) = (x(t, 5), y(t, 5));
        let l = xx.qt_mul(&yy).unwrap().qt_mul(&xx).unwrap();
        let r = xx.qt_mul(&yy.qt_mul(&xx).unwrap()).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn mismatch_errors() {
        let a = QTorusElement::one(QTorus::standard(1), 3);
        let b = QTorusElement::one(QTorus::standard(1), 4);
        assert_eq!(a.qt_mul(&b), Err(QtorusError::TruncationMismatch { left: 3, right: 4 }));
        let c = QTorusElement::one(QTorus::quiver(1), 3);
        assert_eq!(a.qt_mul(&c), Err(QtorusError::TorusMismatch));
        assert_eq!(QTorusElement::zero(QTorus::standard(1), 3).inverse(), Err(QtorusError::NotInvertible));
    }

    #[test]
    fn dilog_first_terms_and_inverse() {
        let t = QTorus::quiver(2);
        let e = quantum_dilog(t, (1, 0), 4).unwrap();
        let c1 = RationalFunc::new(LaurentPoly::t_pow(1), LaurentPoly::from_ints(&[(2, 1), (0, -1)])).unwrap();
        assert_eq!(e.coeff((1, 0)), c1);
        assert!(e.qt_mul(&e.inverse().unwrap()).unwrap().is_one());
        let f = quantum_dilog(t, (1, 1), 4).unwrap();
        assert!(f.inverse().unwrap().qt_mul(&f).unwrap().is_one());
        assert!(quantum_dilog(t, (0, 0), 4).is_err());
    }
}
