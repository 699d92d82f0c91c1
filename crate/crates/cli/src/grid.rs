use std::fmt;
use std::str::FromStr;

/// Integer parameter set: `3`, `1..4` (inclusive) or `1,3,5`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid(Vec<i64>);

impl Grid {
    pub fn single(v: i64) -> Self {
        Self(vec![v])
    }

    pub fn range(lo: i64, hi: i64) -> Self {
        Self((lo..=hi).collect())
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn max(&self) -> i64 {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |x: &str| x.trim().parse::<i64>().map_err(|_| format!("not an integer: {x:?}"));
        if let Some((lo, hi)) = s.split_once("..") {
            let (lo, hi) = (parse(lo)?, parse(hi.trim_start_matches('='))?);
            if lo > hi {
                return Err(format!("empty range {s}"));
            }
            if hi - lo > 10_000 {
                return Err(format!("range {s} is too large"));
            }
            return Ok(Self::range(lo, hi));
        }
        let vals = s.split(',').map(parse).collect::<Result<Vec<_>, _>>()?;
        if vals.is_empty() {
            return Err("empty grid".into());
        }
        Ok(Self(vals))
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_forms() {
        assert_eq!("3".parse::<Grid>().unwrap().values(), &[3]);
        assert_eq!("1..4".parse::<Grid>().unwrap().values(), &[1, 2, 3, 4]);
        assert_eq!("1..=2".parse::<Grid>().unwrap().values(), &[1, 2]);
        assert_eq!("-1,0,2".parse::<Grid>().unwrap().values(), &[-1, 0, 2]);
        assert!("4..1".parse::<Grid>().is_err());
        assert!("x".parse::<Grid>().is_err());
    }
}
