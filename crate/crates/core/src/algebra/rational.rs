use num_bigint::BigInt;
use num_rational::BigRational;

use super::AlgebraError;

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// `p/q` as a [`Rational`]. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Renders as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

/// Inverse of [`format_rational`]. Accepts non-reduced input such as `"4/6"`
/// and rejects zero denominators.
pub fn parse_rational(s: &str) -> Result<Rational, AlgebraError> {
    let s = s.trim();
    let bad = || AlgebraError::ParseRational(s.to_string());
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q == BigInt::from(0) {
                return Err(AlgebraError::ZeroDenominator);
            }
            Ok(Rational::new(p, q))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_integers_without_slash() {
        assert_eq!(format_rational(&int(3)), "3");
        assert_eq!(format_rational(&rat(21, 4)), "21/4");
        assert_eq!(format_rational(&rat(-7, 8)), "-7/8");
        assert_eq!(format_rational(&rat(6, -4)), "-3/2");
    }

    #[test]
    fn parse_round_trips_and_reduces() {
        for s in ["0", "3", "-7/8", "33649/12", "1365/16"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("4/6").unwrap(), rat(2, 3));
        assert_eq!(parse_rational("1/0"), Err(AlgebraError::ZeroDenominator));
        assert!(parse_rational("x/2").is_err());
    }
}
