use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{local_refined_coefficient, InvariantsError};
use crate::algebra::{series_exp, GradedSeries, LaurentPoly, Rational, RationalFunc, TruncationPolicy};
use crate::combinat::{divisors, plethystic_log, quantum_integer};

/// Checks that the keys are exactly `1..=N` and returns `N`.
fn top_degree<T>(map: &BTreeMap<u32, T>) -> Result<u32, InvariantsError> {
    for (expected, &k) in (1u32..).zip(map.keys()) {
        if k != expected {
            return Err(InvariantsError::IndexGap { missing: expected });
        }
    }
    Ok(map.len() as u32)
}

/// `(t − t⁻¹)/(t^ℓ − t^{−ℓ}) = 1/[ℓ]_t`.
fn cover_weight(l: u32) -> RationalFunc {
    RationalFunc::from_poly(quantum_integer(l))
        .recip()
        .expect("quantum integers are nonzero")
}

/// `Ω̄_d = Σ_{ℓd'=d} (1/ℓ) · (t − t⁻¹)/(t^ℓ − t^{−ℓ}) · Ω_{d'}(t^ℓ)`.
pub fn multicover_bar_from_omega(
    omega: &BTreeMap<u32, LaurentPoly>,
) -> Result<BTreeMap<u32, RationalFunc>, InvariantsError> {
    let n = top_degree(omega)?;
    let mut out = BTreeMap::new();
    for d in 1..=n {
        let mut acc = RationalFunc::zero();
        for l in divisors(d) {
            let term = RationalFunc::from_poly(omega[&(d / l)].substitute_power(l));
            let w = cover_weight(l).scale(&Rational::new(1.into(), l.into()));
            acc = &acc + &(&w * &term);
        }
        out.insert(d, acc);
    }
    Ok(out)
}

/// Inverse of [`multicover_bar_from_omega`], solved degree by degree.
/// Fails with `NotPolynomial` when the data are not the image of Laurent
/// polynomials.
pub fn multicover_omega_from_bar(
    bar: &BTreeMap<u32, RationalFunc>,
) -> Result<BTreeMap<u32, LaurentPoly>, InvariantsError> {
    let n = top_degree(bar)?;
    let mut out: BTreeMap<u32, LaurentPoly> = BTreeMap::new();
    for d in 1..=n {
        let mut acc = bar[&d].clone();
        for l in divisors(d).into_iter().filter(|&l| l > 1) {
            let term = RationalFunc::from_poly(out[&(d / l)].substitute_power(l));
            let w = cover_weight(l).scale(&Rational::new(1.into(), l.into()));
            acc = &acc - &(&w * &term);
        }
        match acc.as_poly() {
            Some(p) => {
                out.insert(d, p.clone());
            }
            None => {
                return Err(InvariantsError::NotPolynomial { degree: d, value: acc.to_string() });
            }
        }
    }
    Ok(out)
}

fn divisor_transform(
    input: &BTreeMap<u32, Rational>,
    power: u32,
    inverse: bool,
) -> Result<BTreeMap<u32, Rational>, InvariantsError> {
    let n = top_degree(input)?;
    let mut out: BTreeMap<u32, Rational> = BTreeMap::new();
    for d in 1..=n {
        let mut acc = if inverse { input[&d].clone() } else { Rational::zero() };
        for k in divisors(d) {
            if inverse && k == 1 {
                continue;
            }
            let src = if inverse { &out[&(d / k)] } else { &input[&(d / k)] };
            let w = Rational::new(1.into(), num_traits::pow(BigInt::from(k), power as usize));
            if inverse {
                acc -= w * src;
            } else {
                acc += w * src;
            }
        }
        out.insert(d, acc);
    }
    Ok(out)
}

/// `t = 1` specialisation: `Ω̄_d(1) = Σ_{ℓd'=d} Ω_{d'}(1)/ℓ²`.
pub fn bar_from_omega_numeric(omega: &BTreeMap<u32, Rational>) -> Result<BTreeMap<u32, Rational>, InvariantsError> {
    divisor_transform(omega, 2, false)
}

pub fn omega_from_bar_numeric(bar: &BTreeMap<u32, Rational>) -> Result<BTreeMap<u32, Rational>, InvariantsError> {
    divisor_transform(bar, 2, true)
}

/// Aspinwall–Morrison: `GW_d = Σ_{k|d} n_{d/k}/k³`.
pub fn gw_from_gv_genus0(gv: &BTreeMap<u32, Rational>) -> Result<BTreeMap<u32, Rational>, InvariantsError> {
    divisor_transform(gv, 3, false)
}

pub fn gv_from_gw_genus0(gw: &BTreeMap<u32, Rational>) -> Result<BTreeMap<u32, Rational>, InvariantsError> {
    divisor_transform(gw, 3, true)
}

/// Runs refined BPS data `Ω_β` (tangency `D·β = mβ`) through the
/// exponential/plethystic-logarithm chain and returns the refined local GV
/// generating coefficients `−(t − t⁻¹)² · [z^β] Log exp(Σ_β −Ω̄_β z^β / ((t^{mβ} − t^{−mβ})(t − t⁻¹)))`,
/// which equal `Ω_β / [mβ]_t`.
///
/// `policy` governs how series of different cutoffs are combined.
pub fn local_gv_from_bps(
    omega: &BTreeMap<u32, LaurentPoly>,
    m: u32,
    policy: TruncationPolicy,
) -> Result<BTreeMap<u32, RationalFunc>, InvariantsError> {
    let n = top_degree(omega)?;
    let bar = multicover_bar_from_omega(omega)?;
    let t_minus = LaurentPoly::from_ints(&[(1, 1), (-1, -1)]);
    let mut log_side = GradedSeries::zero(n);
    for (&d, b) in &bar {
        let c = local_refined_coefficient(b, u64::from(m) * u64::from(d))?;
        log_side = log_side.checked_add(&GradedSeries::monomial(n, d, c), policy)?;
    }
    let f = series_exp(&log_side)?;
    let l = plethystic_log(&f)?;
    let factor = RationalFunc::from_poly(-&(&t_minus * &t_minus));
    Ok((1..=n).map(|d| (d, &factor * &l.coeff(d))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn numeric(vals: &[i64]) -> BTreeMap<u32, Rational> {
        (1u32..).zip(vals.iter().map(|&v| int(v))).collect()
    }

    #[test]
    fn gap_is_rejected() {
        let mut m = numeric(&[1, 2, 3]);
        m.remove(&2);
        assert_eq!(bar_from_omega_numeric(&m), Err(InvariantsError::IndexGap { missing: 2 }));
        let mut p = BTreeMap::new();
        p.insert(2u32, LaurentPoly::one());
        assert!(matches!(multicover_bar_from_omega(&p), Err(InvariantsError::IndexGap { missing: 1 })));
    }

    #[test]
    fn gv_local_p1() {
        let gw: BTreeMap<u32, Rational> = [(1, int(1)), (2, rat(-7, 8))].into_iter().collect();
        let gv = gv_from_gw_genus0(&gw).unwrap();
        assert_eq!(gv[&1], int(1));
        assert_eq!(gv[&2], int(-1));
        assert_eq!(gw_from_gv_genus0(&gv).unwrap(), gw);
    }

    #[test]
    fn numeric_round_trip() {
        let om = numeric(&[3, -6, 18, -84, 465]);
        let bar = bar_from_omega_numeric(&om).unwrap();
        assert_eq!(bar[&2], rat(-6 * 4 + 3, 4));
        assert_eq!(omega_from_bar_numeric(&bar).unwrap(), om);
    }

    #[test]
    fn refined_bar_degree_two() {
        let q3 = quantum_integer(3);
        let om: BTreeMap<u32, LaurentPoly> = [(1, q3.clone()), (2, LaurentPoly::zero())].into_iter().collect();
        let bar = multicover_bar_from_omega(&om).unwrap();
        // Ω̄_2 = (1/2)[3]_{t²}/[2]_t
        let expect = RationalFunc::new(q3.substitute_power(2), quantum_integer(2).scale(&int(2))).unwrap();
        assert_eq!(bar[&2], expect);
        assert_eq!(bar[&2].eval_at_one(), Some(rat(3, 4)));
        assert_eq!(multicover_omega_from_bar(&bar).unwrap(), om);
    }

    #[test]
    fn non_polynomial_bar_fails() {
        let bar: BTreeMap<u32, RationalFunc> = [(1, RationalFunc::one()), (2, RationalFunc::zero())].into_iter().collect();
        assert!(matches!(multicover_omega_from_bar(&bar), Err(InvariantsError::NotPolynomial { degree: 2, .. })));
    }

    #[test]
    fn refined_chain_divides_by_tangency() {
        let om: BTreeMap<u32, LaurentPoly> =
            [(1, quantum_integer(3).scale(&int(1))), (2, quantum_integer(6).scale(&int(-1)))].into_iter().collect();
        let gv = local_gv_from_bps(&om, 3, TruncationPolicy::Strict).unwrap();
        assert_eq!(gv[&1], RationalFunc::one());
        assert_eq!(gv[&2], RationalFunc::constant(int(-1)));
    }
}
