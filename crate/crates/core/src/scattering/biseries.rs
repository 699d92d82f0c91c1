use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{format_rational, Rational};

/// Truncated power series in `x, y` keeping monomials `x^i y^j` with
/// `i + j <= order`.
#[derive(Clone, PartialEq, Eq)]
pub struct BiSeries {
    order: u32,
    coeffs: Vec<Rational>,
}

fn index(i: u32, j: u32) -> usize {
    let n = (i + j) as usize;
    n * (n + 1) / 2 + j as usize
}

impl BiSeries {
    pub fn zero(order: u32) -> Self {
        let n = order as usize + 1;
        Self { order, coeffs: vec![Rational::zero(); n * (n + 1) / 2] }
    }

    pub fn one(order: u32) -> Self {
        Self::monomial(order, 0, 0, Rational::one())
    }

    /// `c·x^i y^j`, or zero if the monomial lies beyond the order.
    pub fn monomial(order: u32, i: u32, j: u32, c: Rational) -> Self {
        let mut s = Self::zero(order);
        s.set(i, j, c);
        s
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        if i + j > self.order {
            return Rational::zero();
        }
        self.coeffs[index(i, j)].clone()
    }

    fn coeff_ref(&self, i: u32, j: u32) -> &Rational {
        &self.coeffs[index(i, j)]
    }

    /// Sets a coefficient; monomials beyond the order are dropped.
    pub fn set(&mut self, i: u32, j: u32, c: Rational) {
        if i + j <= self.order {
            self.coeffs[index(i, j)] = c;
        }
    }

    /// Nonzero terms `(i, j, c)` by total degree, then by `j`.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rational)> {
        (0..=self.order)
            .flat_map(|n| (0..=n).map(move |j| (n - j, j)))
            .map(|(i, j)| (i, j, self.coeff_ref(i, j)))
            .filter(|(_, _, c)| !c.is_zero())
    }

    /// Terms of total degree exactly `n`.
    pub fn degree_part(&self, n: u32) -> Vec<(u32, u32, Rational)> {
        if n > self.order {
            return Vec::new();
        }
        (0..=n).map(|j| (n - j, j, self.coeff(n - j, j))).filter(|(_, _, c)| !c.is_zero()).collect()
    }

    /// Lowest total degree of a nonzero term.
    pub fn valuation(&self) -> Option<u32> {
        self.terms().next().map(|(i, j, _)| i + j)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut out = Self::zero(order);
        for (k, c) in out.coeffs.iter_mut().enumerate() {
            *c = &self.coeffs[k] + &other.coeffs[k];
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { order: self.order, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut out = Self::zero(order);
        let lhs: Vec<_> = self.terms().filter(|(i, j, _)| i + j <= order).collect();
        let rhs: Vec<_> = other.terms().filter(|(i, j, _)| i + j <= order).collect();
        for (i, j, a) in &lhs {
            for (k, l, b) in &rhs {
                if i + j + k + l <= order {
                    out.coeffs[index(i + k, j + l)] += *a * *b;
                }
            }
        }
        out
    }

    /// Integer power of a series with constant term 1, by the binomial series.
    pub fn pow_int(&self, e: i64) -> Self {
        assert!(self.coeffs[0].is_one(), "pow_int needs constant term 1");
        let g = self.sub(&Self::one(self.order));
        let mut out = Self::one(self.order);
        let mut gk = Self::one(self.order);
        let mut binom = Rational::one();
        for k in 1..=i64::from(self.order) {
            gk = gk.mul(&g);
            if gk.is_zero() {
                break;
            }
            binom = binom * Rational::from_integer((e - k + 1).into()) / Rational::from_integer(k.into());
            if binom.is_zero() {
                break;
            }
            out = out.add(&gk.scale(&binom));
        }
        out
    }

    /// `F(x·gx, y·gy)`; `gx` and `gy` must have constant term 1.
    pub fn substitute(&self, gx: &Self, gy: &Self) -> Self {
        let order = self.order.min(gx.order).min(gy.order);
        let xg = gx.shift(1, 0);
        let yg = gy.shift(0, 1);
        let mut xpow = vec![Self::one(order)];
        let mut ypow = vec![Self::one(order)];
        let mut out = Self::zero(order);
        for (i, j, c) in self.terms() {
            if i + j > order {
                continue;
            }
            while xpow.len() <= i as usize {
                let next = xpow.last().unwrap().mul(&xg);
                xpow.push(next);
            }
            while ypow.len() <= j as usize {
                let next = ypow.last().unwrap().mul(&yg);
                ypow.push(next);
            }
            out = out.add(&xpow[i as usize].mul(&ypow[j as usize]).scale(c));
        }
        out
    }

    /// Multiplies by `x^di y^dj`.
    pub fn shift(&self, di: u32, dj: u32) -> Self {
        let mut out = Self::zero(self.order);
        for (i, j, c) in self.terms() {
            out.set(i + di, j + dj, c.clone());
        }
        out
    }

    pub fn truncate(&self, order: u32) -> Self {
        let mut out = Self::zero(order);
        for (i, j, c) in self.terms() {
            out.set(i, j, c.clone());
        }
        out
    }
}

impl fmt::Display for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, j, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", format_rational(c))?;
            if i > 0 {
                write!(f, "·x^{i}")?;
            }
            if j > 0 {
                write!(f, "·y^{j}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({})", self.order + 1)
    }
}

impl fmt::Debug for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Ring automorphism `x ↦ x·fx, y ↦ y·fy` of the truncated power series ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphism {
    pub fx: BiSeries,
    pub fy: BiSeries,
}

impl Automorphism {
    pub fn identity(order: u32) -> Self {
        Self { fx: BiSeries::one(order), fy: BiSeries::one(order) }
    }

    pub fn is_identity(&self) -> bool {
        self.fx.is_one() && self.fy.is_one()
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &Self) -> Self {
        let fx = self.fx.mul(&inner.fx.substitute(&self.fx, &self.fy));
        let fy = self.fy.mul(&inner.fy.substitute(&self.fx, &self.fy));
        Self { fx, fy }
    }

    /// Image of `x^a y^b` as `x^a y^b` times the returned factor.
    pub fn apply_monomial(&self, a: i64, b: i64) -> BiSeries {
        self.fx.pow_int(a).mul(&self.fy.pow_int(b))
    }
}
