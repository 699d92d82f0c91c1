use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{sign, InvariantsError, PairParams};
use crate::algebra::Rational;
use crate::combinat::{binomial, divisors, moebius, partitions};

fn frac(num: BigInt, den: BigInt) -> Rational {
    Rational::new(num, den)
}

/// Genus-zero maximal-tangency invariant of `(P(1,1,r) | D_r)`:
/// `(r+2)/d² · C((r+1)² d − 1, d − 1)`.
pub fn gw_selfnodal(r: i64, d: i64) -> Result<Rational, InvariantsError> {
    let p = PairParams::new(r, d)?;
    let (r, d) = (u64::from(p.r()), u64::from(p.d()));
    let n = (r + 1) * (r + 1) * d - 1;
    Ok(frac(BigInt::from(r + 2) * binomial(n, (d - 1) as i64), BigInt::from(d * d)))
}

/// Genus-zero local invariant of `O(r) ⊕ O(−r−2)` over `P^1`:
/// `(−1)^{rd−1}/d³ · C((r+1)² d − 1, d − 1)`.
pub fn gw_local_p1(r: i64, d: i64) -> Result<Rational, InvariantsError> {
    let p = PairParams::new(r, d)?;
    let (r, d) = (u64::from(p.r()), u64::from(p.d()));
    let n = (r + 1) * (r + 1) * d - 1;
    let s = sign((r * d) as i64 - 1);
    Ok(frac(BigInt::from(s) * binomial(n, (d - 1) as i64), BigInt::from(d * d * d)))
}

/// Numerical DT invariant `Ω_{(d,d)}(1)` of the `m`-Kronecker quiver,
/// `1/(r d²) Σ_{ℓ|d} μ(d/ℓ) (−1)^{mℓ+1} C((r+1)² ℓ − 1, ℓ)` with `r = m − 2`.
///
/// Defined for `m >= 3` only; smaller `m` go through the scattering engine.
pub fn dt_kronecker_numeric(m: i64, d: i64) -> Result<Rational, InvariantsError> {
    if m < 3 {
        return Err(InvariantsError::Domain(format!(
            "m = {m}: the closed DT formula needs m >= 3; use the scattering pipeline (`scatter --m {m}`)"
        )));
    }
    let p = PairParams::new(m - 2, d)?;
    let (r, d) = (u64::from(p.r()), p.d());
    let mut acc = BigInt::zero();
    for l in divisors(d) {
        let mu = moebius(i64::from(d / l))?;
        if mu == 0 {
            continue;
        }
        let l64 = u64::from(l);
        let s = sign((r + 2) as i64 * l64 as i64 + 1) * i64::from(mu);
        acc += BigInt::from(s) * binomial((r + 1) * (r + 1) * l64 - 1, l64 as i64);
    }
    let d = u64::from(d);
    Ok(frac(acc, BigInt::from(r * d * d)))
}

/// Right-hand side of the Möbius-inversion chain: the closed invariant
/// rebuilt from Kronecker DT invariants,
/// `(−1)^{(r+2)d−1} Σ_{ℓd'=d} Ω_{(d',d')}(1)/ℓ²`.
pub fn gw_selfnodal_via_dt(r: i64, d: i64) -> Result<Rational, InvariantsError> {
    let p = PairParams::new(r, d)?;
    let m = i64::from(p.m());
    let mut acc = Rational::zero();
    for l in divisors(p.d()) {
        let dprime = i64::from(p.d() / l);
        acc += dt_kronecker_numeric(m, dprime)? / Rational::from_integer(BigInt::from(u64::from(l) * u64::from(l)));
    }
    Ok(acc * Rational::from_integer(sign(m * d - 1).into()))
}

/// Genus-zero log/local conversion factor `(−1)^{D·β+1} D·β`.
pub fn log_local_factor(d_beta: u64) -> Rational {
    Rational::from_integer(BigInt::from(sign(d_beta as i64 + 1)) * BigInt::from(d_beta))
}

/// Nef-pair conversion factor `(−1)^{(D+E)·β} (D·β)(E·β)`.
pub fn nef_local_factor(d_beta: u64, e_beta: u64) -> Rational {
    let s = sign((d_beta + e_beta) as i64);
    Rational::from_integer(BigInt::from(s) * BigInt::from(d_beta) * BigInt::from(e_beta))
}

/// Hypergeometric multiple-cover contribution `C(4d−1, d)/d²`.
pub fn c_ord(d: i64) -> Result<Rational, InvariantsError> {
    if d < 1 {
        return Err(InvariantsError::Domain(format!("degree d = {d} must be >= 1")));
    }
    let d = d as u64;
    Ok(frac(binomial(4 * d - 1, d as i64), BigInt::from(d * d)))
}

fn part_factor(j: u32) -> Rational {
    frac(BigInt::from(sign(i64::from(j) - 1)) * binomial(3 * u64::from(j), i64::from(j)), BigInt::from(j))
}

/// Partition sum
/// `Σ_{(d_1..d_ℓ) ⊢ d} 2^{ℓ−1} d^{ℓ−2}/#Aut · Π (−1)^{d_i−1}/d_i · C(3d_i, d_i)`.
///
/// Partitions are grouped by part multiplicities: with `x_j = 2d·(−1)^{j−1}C(3j,j)/j`
/// each partition contributes `Π_j x_j^{m_j}/m_j!`, accumulated part size by
/// part size, and the total is divided by `2d²`.
pub fn partition_sum_lhs(d: i64) -> Result<Rational, InvariantsError> {
    if d < 1 {
        return Err(InvariantsError::Domain(format!("degree d = {d} must be >= 1")));
    }
    let n = d as usize;
    let two_d = Rational::from_integer(BigInt::from(2 * d));
    // acc[w]: sum over partitions of w into the parts seen so far.
    let mut acc = vec![Rational::zero(); n + 1];
    acc[0] = Rational::one();
    for j in 1..=n {
        let x = &two_d * part_factor(j as u32);
        let mut next = acc.clone();
        let mut power = Rational::one();
        for mult in 1..=n / j {
            power = power * &x / Rational::from_integer(BigInt::from(mult));
            for w in mult * j..=n {
                if !acc[w - mult * j].is_zero() {
                    next[w] += &acc[w - mult * j] * &power;
                }
            }
        }
        acc = next;
    }
    Ok(acc[n].clone() / Rational::from_integer(BigInt::from(2 * d * d)))
}

/// The same sum evaluated partition by partition.
pub fn partition_sum_lhs_enumerated(d: i64) -> Result<Rational, InvariantsError> {
    if d < 1 {
        return Err(InvariantsError::Domain(format!("degree d = {d} must be >= 1")));
    }
    let d = d as u32;
    let dd = BigInt::from(d);
    let mut acc = Rational::zero();
    for p in partitions(d) {
        let len = p.length();
        let mut term = Rational::from_integer(BigInt::one() << (len - 1)) / Rational::from_integer(p.aut());
        term = if len >= 2 {
            term * Rational::from_integer(num_traits::pow(dd.clone(), len - 2))
        } else {
            term / Rational::from_integer(dd.clone())
        };
        for &part in p.parts() {
            term *= part_factor(part);
        }
        acc += term;
    }
    Ok(acc)
}

/// Evaluates both sides of `C((r+1)²d−1, d) = r(r+2) C((r+1)²d−1, d−1)`.
pub fn binomial_identity_check(r: u64, d: u64) -> bool {
    if r < 1 || d < 1 {
        return false;
    }
    let n = (r + 1) * (r + 1) * d - 1;
    binomial(n, d as i64) == BigInt::from(r * (r + 2)) * binomial(n, d as i64 - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    #[test]
    fn selfnodal_values() {
        assert_eq!(gw_selfnodal(1, 1).unwrap(), int(3));
        assert_eq!(gw_selfnodal(1, 4).unwrap(), rat(1365, 16));
        assert_eq!(gw_selfnodal(2, 1).unwrap(), int(4));
        assert!(matches!(gw_selfnodal(0, 1), Err(InvariantsError::Domain(_))));
        assert!(matches!(gw_selfnodal(1, 0), Err(InvariantsError::Domain(_))));
    }

    #[test]
    fn selfnodal_from_dt_matches_at_r2() {
        // (2,1): (−1)^{3} Ω_{(1,1)}(1) for m = 4.
        assert_eq!(gw_selfnodal_via_dt(2, 1).unwrap(), int(4));
    }

    #[test]
    fn local_p1_values() {
        assert_eq!(gw_local_p1(1, 1).unwrap(), int(1));
        assert_eq!(gw_local_p1(1, 2).unwrap(), rat(-7, 8));
        assert_eq!(gw_local_p1(2, 1).unwrap(), int(-1));
        assert!(gw_local_p1(-1, 1).is_err());
    }

    #[test]
    fn kronecker_dt_values() {
        assert_eq!(dt_kronecker_numeric(3, 1).unwrap(), int(3));
        // (μ(2)(−1)^4 C(3,1) + μ(1)(−1)^7 C(7,2)) / 4
        assert_eq!(dt_kronecker_numeric(3, 2).unwrap(), int(-6));
        // (1/2)(−1)^5 C(8,1): signed Euler characteristic of P^3.
        assert_eq!(dt_kronecker_numeric(4, 1).unwrap(), int(-4));
        assert!(matches!(dt_kronecker_numeric(2, 1), Err(InvariantsError::Domain(_))));
        assert!(dt_kronecker_numeric(1, 3).unwrap_err().to_string().contains("scatter"));
    }

    #[test]
    fn kronecker_dt_is_integral() {
        for m in 3..=6 {
            for d in 1..=10 {
                assert!(dt_kronecker_numeric(m, d).unwrap().is_integer(), "m={m} d={d}");
            }
        }
    }

    #[test]
    fn conversion_factors() {
        assert_eq!(log_local_factor(1), int(1));
        assert_eq!(log_local_factor(3), int(3));
        assert_eq!(log_local_factor(6), int(-6));
        assert_eq!(nef_local_factor(1, 1), int(1));
        assert_eq!(nef_local_factor(3, 3), int(9));
        assert_eq!(nef_local_factor(2, 1), int(-2));
    }

    #[test]
    fn conversion_factor_links_selfnodal_and_local() {
        for d in 1..=6i64 {
            let lhs = gw_selfnodal(1, d).unwrap();
            let rhs = log_local_factor(3 * d as u64) * gw_local_p1(1, d).unwrap();
            assert_eq!(lhs, rhs, "d = {d}");
        }
    }

    #[test]
    fn c_ord_and_partition_sum() {
        assert_eq!(c_ord(1).unwrap(), int(3));
        assert_eq!(partition_sum_lhs(1).unwrap(), int(3));
        assert_eq!(c_ord(2).unwrap(), rat(21, 4));
        assert_eq!(partition_sum_lhs(2).unwrap(), rat(21, 4));
        assert_eq!(c_ord(6).unwrap(), rat(33649, 12));
        assert_eq!(partition_sum_lhs(6).unwrap(), rat(33649, 12));
        assert!(c_ord(0).is_err());
        assert!(partition_sum_lhs(0).is_err());
        assert!(partition_sum_lhs_enumerated(0).is_err());
        for d in 1..=12 {
            assert_eq!(partition_sum_lhs(d).unwrap(), partition_sum_lhs_enumerated(d).unwrap(), "d = {d}");
        }
    }

    #[test]
    fn binomial_identity_examples() {
        assert!(binomial_identity_check(1, 2));
        assert!(binomial_identity_check(1, 1));
        assert!(binomial_identity_check(3, 2));
        assert!(!binomial_identity_check(0, 2));
    }
}
