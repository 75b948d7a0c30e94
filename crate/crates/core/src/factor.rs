//! Exact rational robustness factors.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A positive rational factor `f = num / den` in lowest terms.
///
/// Failure fractions such as `N / (2f)` are evaluated with integer
/// arithmetic so that `f = 5/3` behaves exactly.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    num: u64,
    den: u64,
}

impl Factor {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::invalid("factor must be a positive rational"));
        }
        let g = num.gcd(&den);
        Ok(Factor {
            num: num / g,
            den: den / g,
        })
    }

    pub fn integer(v: u64) -> Result<Self> {
        Factor::new(v, 1)
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn is_greater_than_one(&self) -> bool {
        self.num > self.den
    }

    pub fn is_at_least_one(&self) -> bool {
        self.num >= self.den
    }

    /// `floor(n / (scale * f))`.
    pub fn floor_fraction(&self, n: usize, scale: usize) -> usize {
        let top = n as u128 * self.den as u128;
        let bottom = scale as u128 * self.num as u128;
        (top / bottom) as usize
    }

    /// `n / (scale * f)` when it is an integer.
    pub fn exact_fraction(&self, n: usize, scale: usize) -> Option<usize> {
        let top = n as u128 * self.den as u128;
        let bottom = scale as u128 * self.num as u128;
        top.is_multiple_of(bottom).then_some((top / bottom) as usize)
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Factor {
    type Err = Error;

    /// Accepts `p/q`, integers and plain decimals such as `2.5`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::invalid(format!("cannot parse factor '{s}'"));
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p = p.trim().parse::<u64>().map_err(|_| bad())?;
            let q = q.trim().parse::<u64>().map_err(|_| bad())?;
            return Factor::new(p, q);
        }
        match s.split_once('.') {
            None => Factor::integer(s.parse().map_err(|_| bad())?),
            Some((whole, frac)) => {
                if frac.is_empty() || frac.len() > 12 || !frac.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad());
                }
                let whole: u64 = if whole.is_empty() {
                    0
                } else {
                    whole.parse().map_err(|_| bad())?
                };
                let den = 10u64.pow(frac.len() as u32);
                let frac: u64 = frac.parse().map_err(|_| bad())?;
                Factor::new(whole * den + frac, den)
            }
        }
    }
}
