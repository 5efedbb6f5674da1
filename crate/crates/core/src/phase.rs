//! `U(1)` represented as `Q/Z`.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;

/// A rational number reduced into `[0, 1)`; `t` stands for `exp(2πi t)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase(BigRational);

impl Phase {
    pub fn new(q: BigRational) -> Phase {
        Phase(mod_one(&q))
    }

    pub fn zero() -> Phase {
        Phase(BigRational::zero())
    }

    pub fn from_ratio(n: i64, d: i64) -> Phase {
        Phase::new(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn scale(&self, k: &BigInt) -> Phase {
        Phase::new(&self.0 * BigRational::from_integer(k.clone()))
    }
}

/// `q − ⌊q⌋`.
pub fn mod_one(q: &BigRational) -> BigRational {
    let floor = q.numer().div_floor(q.denom());
    q - BigRational::from_integer(floor)
}

pub fn is_integer(q: &BigRational) -> bool {
    q.denom().is_one()
}

/// Exact `p/q` rendering with no floating point.
pub fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_rational(&self.0))
    }
}

impl FromStr for Phase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Phase, Error> {
        parse_rational(s).map(Phase::new)
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, o: Phase) -> Phase {
        Phase::new(self.0 + o.0)
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, o: Phase) -> Phase {
        Phase::new(self.0 - o.0)
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase::new(-self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_into_unit_interval() {
        assert_eq!(Phase::from_ratio(-1, 3).to_string(), "2/3");
        assert_eq!(Phase::from_ratio(7, 3).to_string(), "1/3");
        assert_eq!(Phase::from_ratio(4, 2).to_string(), "0");
        assert_eq!("5/4".parse::<Phase>().unwrap(), Phase::from_ratio(1, 4));
        assert!("1/0".parse::<Phase>().is_err());
    }
}
