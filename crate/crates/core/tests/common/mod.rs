#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use wallcross::algebra::{GradedSeries, LaurentPoly, RationalFunc};

pub type Q = BigRational;

pub fn q(p: i64, d: i64) -> Q {
    Q::new(p.into(), d.into())
}

/// Textbook oracles, written independently of the library.
pub mod oracle {
    use super::*;

    pub fn binom(n: i64, k: i64) -> BigInt {
        if k < 0 || k > n {
            return BigInt::from(0);
        }
        let mut acc = BigInt::from(1);
        for i in 0..k {
            acc = acc * (n - i) / (i + 1);
        }
        acc
    }

    pub fn mobius(n: i64) -> i64 {
        let (mut n, mut sign, mut p) = (n, 1, 2);
        while p * p <= n {
            if n % p == 0 {
                n /= p;
                if n % p == 0 {
                    return 0;
                }
                sign = -sign;
            }
            p += 1;
        }
        if n > 1 {
            -sign
        } else {
            sign
        }
    }

    pub fn pm(e: i64) -> i64 {
        if e % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Reineke's diagonal Kronecker DT invariant at q = 1.
    pub fn reineke(m: i64, d: i64) -> Q {
        let r = m - 2;
        let mut acc = BigInt::from(0);
        for l in (1..=d).filter(|l| d % l == 0) {
            acc += BigInt::from(mobius(d / l) * pm(m * l + 1)) * binom((r + 1) * (r + 1) * l - 1, l);
        }
        Q::new(acc, BigInt::from(r * d * d))
    }

    pub fn selfnodal(r: i64, d: i64) -> Q {
        Q::new(BigInt::from(r + 2) * binom((r + 1) * (r + 1) * d - 1, d - 1), BigInt::from(d * d))
    }

    pub fn local_p1(r: i64, d: i64) -> Q {
        Q::new(BigInt::from(pm(r * d - 1)) * binom((r + 1) * (r + 1) * d - 1, d - 1), BigInt::from(d * d * d))
    }

    /// `[m]_q` in `t = q^{1/2}` as explicit exponents.
    pub fn qint(m: i64) -> LaurentPoly {
        LaurentPoly::from_ints(&(0..m).map(|j| (m - 1 - 2 * j, 1)).collect::<Vec<_>>())
    }
}

pub fn small_rational() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, d)| q(p, d))
}

pub fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..=4, small_rational()), 0..5).prop_map(|terms| {
        terms.into_iter().fold(LaurentPoly::zero(), |acc, (k, c)| &acc + &LaurentPoly::monomial(k, c))
    })
}

pub fn nonzero_laurent() -> impl Strategy<Value = LaurentPoly> {
    laurent().prop_filter("nonzero", |p| !p.is_zero())
}

pub fn palindromic() -> impl Strategy<Value = LaurentPoly> {
    laurent().prop_map(|p| &p + &p.bar())
}

pub fn integer_palindromic() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((0i64..=3, -3i64..=3), 0..3).prop_map(|terms| {
        terms.into_iter().fold(LaurentPoly::zero(), |acc, (k, c)| {
            &acc + &LaurentPoly::from_ints(&if k == 0 { vec![(0, c)] } else { vec![(k, c), (-k, c)] })
        })
    })
}

pub fn ratfunc() -> impl Strategy<Value = RationalFunc> {
    (laurent(), nonzero_laurent()).prop_map(|(n, d)| RationalFunc::new(n, d).unwrap())
}

/// Series with zero constant term and polynomial coefficients.
pub fn series_no_constant(cutoff: u32) -> impl Strategy<Value = GradedSeries> {
    prop::collection::vec(
        prop::collection::vec((-2i64..=2, -3i64..=3), 0..3)
            .prop_map(|t| LaurentPoly::from_ints(&t)),
        cutoff as usize,
    )
    .prop_map(move |cs| {
        GradedSeries::from_coeffs(cutoff, cs.into_iter().enumerate().map(|(i, c)| (i as u32 + 1, RationalFunc::from_poly(c))))
    })
}
