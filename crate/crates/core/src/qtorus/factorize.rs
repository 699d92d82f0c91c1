use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_integer::Integer;
use serde::Serialize;

use super::element::dilog_coefficients;
use super::{quantum_dilog, QTorus, QTorusElement, QtorusError};
use crate::algebra::{series_exp, series_log, GradedSeries, LaurentPoly, RationalFunc};
use crate::invariants::multicover_omega_from_bar;

/// Largest `N` accepted by [`ks_factorize`] (truncation at total degree `2N`).
pub const MAX_KS_ORDER: u32 = 8;

/// Refined DT invariant of one dimension vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefinedDT {
    pub dimension_vector: (u32, u32),
    pub omega: LaurentPoly,
}

/// Full slope-ordered factorization
/// `E(x)E(y) = E(y) · Π_{γ, decreasing slope} A_γ · E(x)` in the quiver torus,
/// with `A_γ = Π_{k,j} E(t^j x^{kγ})^{Ω_{kγ,j}}`.
#[derive(Debug, Clone)]
pub struct KsFactorization {
    m: u32,
    order: u32,
    factors: Vec<((u32, u32), Vec<RationalFunc>)>,
    omega: BTreeMap<(u32, u32), LaurentPoly>,
}

/// Orders primitive directions by decreasing slope `b/a`.
fn decreasing_slope(u: &(u32, u32), v: &(u32, u32)) -> Ordering {
    (u64::from(v.1) * u64::from(u.0)).cmp(&(u64::from(u.1) * u64::from(v.0)))
}

fn direction_element(torus: QTorus, order: u32, dir: (u32, u32), coeffs: &[RationalFunc]) -> QTorusElement {
    let mut out = QTorusElement::zero(torus, order);
    for (k, c) in coeffs.iter().enumerate() {
        let k = k as u32;
        out.add_term((k * dir.0, k * dir.1), c.clone());
    }
    out
}

impl KsFactorization {
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Truncation in total degree (`2N`).
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn torus(&self) -> QTorus {
        QTorus::quiver(self.m)
    }

    /// Interior factors `A_γ`, by decreasing slope, as coefficient lists in `x^{kγ}`.
    pub fn factors(&self) -> &[((u32, u32), Vec<RationalFunc>)] {
        &self.factors
    }

    /// `Ω` for every dimension vector with both entries positive.
    pub fn omega(&self) -> &BTreeMap<(u32, u32), LaurentPoly> {
        &self.omega
    }

    /// Diagonal invariants `Ω_{(d,d)}` for `d = 1..=N`.
    pub fn diagonal(&self) -> Vec<RefinedDT> {
        (1..=self.order / 2)
            .map(|d| RefinedDT {
                dimension_vector: (d, d),
                omega: self.omega.get(&(d, d)).cloned().unwrap_or_else(LaurentPoly::zero),
            })
            .collect()
    }

    /// Rebuilds `E(y) · Π_γ Π_{k,j} E(t^j x^{kγ})^{Ω_{kγ,j}} · E(x)` from the
    /// extracted integers alone.
    pub fn reassemble(&self) -> Result<QTorusElement, QtorusError> {
        let torus = self.torus();
        let n = self.order;
        let mut acc = quantum_dilog(torus, (0, 1), n)?;
        for (dir, _) in &self.factors {
            let w = dir.0 + dir.1;
            let cutoff = n / w;
            let mut factor = GradedSeries::one(cutoff);
            for k in 1..=cutoff {
                let Some(om) = self.omega.get(&(k * dir.0, k * dir.1)) else { continue };
                for (j, c) in om.terms() {
                    // E(t^j z^k) as a series in z, raised to the integer power c.
                    let e = GradedSeries::from_coeffs(
                        cutoff,
                        dilog_coefficients(cutoff / k)
                            .into_iter()
                            .enumerate()
                            .map(|(i, a)| ((i as u32) * k, a.shift(j * i as i64))),
                    );
                    let powered = series_exp(&series_log(&e)?.scale(&RationalFunc::constant(c.clone())))?;
                    factor = factor.mul(&powered);
                }
            }
            let coeffs: Vec<RationalFunc> = (0..=cutoff).map(|k| factor.coeff(k)).collect();
            acc = acc.qt_mul(&direction_element(torus, n, *dir, &coeffs))?;
        }
        acc.qt_mul(&quantum_dilog(torus, (1, 0), n)?)
    }

    /// Checks [`reassemble`](Self::reassemble) against `E(x)E(y)`.
    pub fn verify(&self) -> Result<bool, QtorusError> {
        let torus = self.torus();
        let p = quantum_dilog(torus, (1, 0), self.order)?.qt_mul(&quantum_dilog(torus, (0, 1), self.order)?)?;
        Ok(self.reassemble()? == p)
    }
}

/// Slope-ordered factorization of `E(x)E(y)` for the `m`-Kronecker quiver,
/// truncated at total degree `2N`.
pub fn ks_factorize(m: u32, n: u32) -> Result<KsFactorization, QtorusError> {
    if m == 0 || n == 0 {
        return Err(QtorusError::Domain(format!("need m >= 1 and N >= 1, got m = {m}, N = {n}")));
    }
    if n > MAX_KS_ORDER {
        return Err(QtorusError::OrderOverflow { order: n, max: MAX_KS_ORDER });
    }
    let order = 2 * n;
    let torus = QTorus::quiver(m);
    let ex = quantum_dilog(torus, (1, 0), order)?;
    let ey = quantum_dilog(torus, (0, 1), order)?;
    let p = ex.qt_mul(&ey)?;
    let target = ey.inverse()?.qt_mul(&p)?.qt_mul(&ex.inverse()?)?;

    let mut factors: BTreeMap<(u32, u32), Vec<RationalFunc>> = BTreeMap::new();
    let product = |factors: &BTreeMap<(u32, u32), Vec<RationalFunc>>| -> Result<QTorusElement, QtorusError> {
        let mut dirs: Vec<_> = factors.keys().copied().collect();
        dirs.sort_by(decreasing_slope);
        let mut acc = QTorusElement::one(torus, order);
        for d in dirs {
            acc = acc.qt_mul(&direction_element(torus, order, d, &factors[&d]))?;
        }
        Ok(acc)
    };
    for deg in 2..=order {
        let diff = target.sub(&product(&factors)?)?;
        for ((a, b), c) in diff.degree_part(deg) {
            if a == 0 || b == 0 {
                return Err(QtorusError::Domain(format!("unexpected boundary term at ({a},{b})")));
            }
            let g = a.gcd(&b);
            let dir = (a / g, b / g);
            let w = dir.0 + dir.1;
            let entry = factors.entry(dir).or_insert_with(|| {
                let mut v = vec![RationalFunc::zero(); (order / w) as usize + 1];
                v[0] = RationalFunc::one();
                v
            });
            let slot = &mut entry[g as usize];
            *slot = &*slot + &c;
        }
    }

    let t_minus = RationalFunc::from_poly(LaurentPoly::from_ints(&[(1, 1), (-1, -1)]));
    let mut omega = BTreeMap::new();
    for (dir, coeffs) in &factors {
        let cutoff = (coeffs.len() - 1) as u32;
        let series = GradedSeries::from_coeffs(cutoff, coeffs.iter().cloned().enumerate().map(|(k, c)| (k as u32, c)));
        let log = series_log(&series)?;
        let bar: BTreeMap<u32, RationalFunc> = (1..=cutoff).map(|k| (k, &t_minus * &log.coeff(k))).collect();
        for (k, om) in multicover_omega_from_bar(&bar)? {
            if !om.is_zero() {
                omega.insert((k * dir.0, k * dir.1), om);
            }
        }
    }
    let mut ordered: Vec<_> = factors.into_iter().collect();
    ordered.sort_by(|a, b| decreasing_slope(&a.0, &b.0));
    Ok(KsFactorization { m, order, factors: ordered, omega })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;
    use crate::combinat::quantum_integer;

    #[test]
    fn pentagon() {
        let f = ks_factorize(1, 3).unwrap();
        let diag = f.diagonal();
        assert_eq!(diag[0].omega, LaurentPoly::one());
        assert!(diag[1..].iter().all(|r| r.omega.is_zero()));
        assert_eq!(f.omega().len(), 1);
        assert!(f.verify().unwrap());
    }

    #[test]
    fn first_anchor() {
        for m in 1..=4u32 {
            let f = ks_factorize(m, 1).unwrap();
            let sign = if m % 2 == 1 { int(1) } else { int(-1) };
            assert_eq!(f.diagonal()[0].omega, quantum_integer(m).scale(&sign), "m = {m}");
        }
    }

    #[test]
    fn m3_degree_two() {
        let f = ks_factorize(3, 2).unwrap();
        let om = &f.diagonal()[1].omega;
        assert_eq!(om.eval_at_one(), int(-6));
        assert!(om.is_palindromic() && om.has_integer_coeffs());
        assert!(f.verify().unwrap());
    }

    #[test]
    fn bad_parameters() {
        assert!(matches!(ks_factorize(0, 2), Err(QtorusError::Domain(_))));
        assert!(matches!(ks_factorize(3, 99), Err(QtorusError::OrderOverflow { .. })));
    }
}
