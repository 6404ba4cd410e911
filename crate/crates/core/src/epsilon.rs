//! Exact rational accuracy parameter.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

/// A strictly positive rational accuracy parameter.
///
/// Parsed exactly from decimal (`"0.3"`) or fraction (`"1/3"`) notation so that
/// threshold tests such as `cost > ε·B` are decided in integer arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Epsilon(Ratio<i64>);

impl Epsilon {
    pub fn new(numer: i64, denom: i64) -> Option<Self> {
        if denom == 0 {
            return None;
        }
        let r = Ratio::new(numer, denom);
        (r > Ratio::from_integer(0)).then_some(Epsilon(r))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn ratio(&self) -> Ratio<i64> {
        self.0
    }

    pub fn half(&self) -> Epsilon {
        Epsilon(self.0 / 2)
    }

    pub fn as_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    /// `⌈1/ε⌉`.
    pub fn inverse_ceil(&self) -> i64 {
        let (n, d) = (self.numer(), self.denom());
        (d + n - 1) / n
    }

    /// `x > ε·y` for nonnegative integers.
    pub fn exceeds_fraction_of(&self, x: i64, y: i64) -> bool {
        x as i128 * self.denom() as i128 > self.numer() as i128 * y as i128
    }

    /// `x ≤ (1+ε)·y`.
    pub fn within_one_plus(&self, x: i64, y: i64) -> bool {
        x as i128 * self.denom() as i128 <= (self.denom() + self.numer()) as i128 * y as i128
    }

    /// `x ≥ (1−ε)·y`.
    pub fn at_least_one_minus(&self, x: i64, y: i64) -> bool {
        x as i128 * self.denom() as i128 >= (self.denom() - self.numer()) as i128 * y as i128
    }

    /// `⌊ε·x / n⌋`.
    pub fn floor_fraction(&self, x: i64, n: i64) -> i64 {
        let num = self.numer() as i128 * x as i128;
        let den = self.denom() as i128 * n as i128;
        (num / den) as i64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid epsilon {0:?}: expected a positive decimal or fraction")]
pub struct EpsilonParseError(String);

impl FromStr for Epsilon {
    type Err = EpsilonParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || EpsilonParseError(s.to_string());
        let t = s.trim();
        if let Some((a, b)) = t.split_once('/') {
            let n: i64 = a.trim().parse().map_err(|_| bad())?;
            let d: i64 = b.trim().parse().map_err(|_| bad())?;
            return Epsilon::new(n, d).ok_or_else(bad);
        }
        let (int, frac) = t.split_once('.').unwrap_or((t, ""));
        if int.is_empty() && frac.is_empty()
            || !int.chars().all(|c| c.is_ascii_digit())
            || !frac.chars().all(|c| c.is_ascii_digit())
            || frac.len() > 12
        {
            return Err(bad());
        }
        let denom = 10i64.pow(frac.len() as u32);
        let int_part: i64 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| bad())?
        };
        let frac_part: i64 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| bad())?
        };
        let numer = int_part
            .checked_mul(denom)
            .and_then(|v| v.checked_add(frac_part))
            .ok_or_else(bad)?;
        Epsilon::new(numer, denom).ok_or_else(bad)
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimal_and_fraction() {
        assert_eq!(
            "0.3".parse::<Epsilon>().unwrap(),
            Epsilon::new(3, 10).unwrap()
        );
        assert_eq!(
            "1/3".parse::<Epsilon>().unwrap(),
            Epsilon::new(1, 3).unwrap()
        );
        assert_eq!("1".parse::<Epsilon>().unwrap(), Epsilon::new(1, 1).unwrap());
        assert_eq!(
            ".5".parse::<Epsilon>().unwrap(),
            Epsilon::new(1, 2).unwrap()
        );
        assert!("0".parse::<Epsilon>().is_err());
        assert!("-0.1".parse::<Epsilon>().is_err());
        assert!("abc".parse::<Epsilon>().is_err());
        assert!("1/0".parse::<Epsilon>().is_err());
    }

    #[test]
    fn integer_threshold_helpers() {
        let third = Epsilon::new(1, 3).unwrap();
        assert_eq!(third.inverse_ceil(), 3);
        assert_eq!(Epsilon::new(3, 10).unwrap().inverse_ceil(), 4);
        assert!(third.within_one_plus(4, 3));
        assert!(!third.within_one_plus(5, 3));
        assert!(third.exceeds_fraction_of(2, 3));
        assert!(!third.exceeds_fraction_of(1, 3));
        assert!(Epsilon::new(1, 2).unwrap().at_least_one_minus(5, 9));
        assert!(!Epsilon::new(1, 2).unwrap().at_least_one_minus(4, 9));
        assert_eq!(Epsilon::new(3, 10).unwrap().floor_fraction(100, 7), 4);
    }
}
