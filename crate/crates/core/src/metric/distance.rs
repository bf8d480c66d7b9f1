use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::Add;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::MetricError;

/// An extended nonnegative rational.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Distance {
    Finite(BigRational),
    Infinite,
}

impl Distance {
    pub fn zero() -> Self {
        Distance::Finite(BigRational::zero())
    }

    pub fn from_integer(n: i64) -> Self {
        Distance::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Distance::Finite(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Distance::Finite(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Distance::Finite(r) => Some(r),
            Distance::Infinite => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Distance::Finite(r) if r.is_zero())
    }

    /// `2·self`.
    pub fn double(&self) -> Distance {
        self + self
    }
}

impl PartialOrd for Distance {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Distance {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Distance::Finite(a), Distance::Finite(b)) => a.cmp(b),
            (Distance::Finite(_), Distance::Infinite) => Ordering::Less,
            (Distance::Infinite, Distance::Finite(_)) => Ordering::Greater,
            (Distance::Infinite, Distance::Infinite) => Ordering::Equal,
        }
    }
}

impl Add for &Distance {
    type Output = Distance;

    fn add(self, rhs: &Distance) -> Distance {
        match (self, rhs) {
            (Distance::Finite(a), Distance::Finite(b)) => Distance::Finite(a + b),
            _ => Distance::Infinite,
        }
    }
}

impl From<BigRational> for Distance {
    fn from(r: BigRational) -> Self {
        Distance::Finite(r)
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Infinite => f.write_str("inf"),
            Distance::Finite(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl fmt::Debug for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `inf`, integers, `p/q` and finite decimals such as `2.75` or
/// `1e-3`, all exactly.
impl FromStr for Distance {
    type Err = MetricError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = || MetricError::InvalidInput(alloc::format!("cannot parse distance {s:?}"));
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") || t == "∞" {
            return Ok(Distance::Infinite);
        }
        let value = if let Some((p, q)) = t.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            BigRational::new(p, q)
        } else {
            parse_decimal(t).ok_or_else(bad)?
        };
        if value.is_negative() {
            return Err(MetricError::InvalidInput(alloc::format!(
                "negative distance {s:?}"
            )));
        }
        Ok(Distance::Finite(value))
    }
}

/// Exact value of a decimal literal.
pub fn parse_decimal(t: &str) -> Option<BigRational> {
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let mut all = String::with_capacity(int.len() + frac.len());
    all.push_str(int);
    all.push_str(frac);
    let numer: BigInt = all.parse().ok()?;
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut r = BigRational::from_integer(numer);
    if scale >= 0 {
        r *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        r /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if neg { -r } else { r })
}

/// Comparison policy for `≤` tests against a radius.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tolerance(Option<BigRational>);

impl Tolerance {
    pub fn exact() -> Self {
        Tolerance(None)
    }

    pub fn epsilon(eps: BigRational) -> Self {
        Tolerance(Some(eps))
    }

    pub fn value(&self) -> Option<&BigRational> {
        self.0.as_ref()
    }

    /// `a ≤ b`, allowing `a` to exceed `b` by at most ε.
    pub fn le(&self, a: &Distance, b: &Distance) -> bool {
        match (&self.0, a, b) {
            (_, Distance::Infinite, _) => matches!(b, Distance::Infinite),
            (_, _, Distance::Infinite) => true,
            (None, Distance::Finite(x), Distance::Finite(y)) => x <= y,
            (Some(eps), Distance::Finite(x), Distance::Finite(y)) => x <= &(y + eps),
        }
    }

    pub fn eq(&self, a: &Distance, b: &Distance) -> bool {
        self.le(a, b) && self.le(b, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn parsing() {
        assert_eq!("3".parse::<Distance>().unwrap(), Distance::from_integer(3));
        assert_eq!(
            "6/4".parse::<Distance>().unwrap(),
            Distance::from_ratio(3, 2)
        );
        assert_eq!(
            "0.25".parse::<Distance>().unwrap(),
            Distance::from_ratio(1, 4)
        );
        assert_eq!(
            "2.5e1".parse::<Distance>().unwrap(),
            Distance::from_integer(25)
        );
        assert_eq!(
            "1e-2".parse::<Distance>().unwrap(),
            Distance::from_ratio(1, 100)
        );
        assert_eq!("inf".parse::<Distance>().unwrap(), Distance::Infinite);
        assert!("-1".parse::<Distance>().is_err());
        assert!("1/0".parse::<Distance>().is_err());
        assert!("abc".parse::<Distance>().is_err());
        assert!(".".parse::<Distance>().is_err());
    }

    #[test]
    fn ordering_and_sum() {
        let one = Distance::from_integer(1);
        assert!(one < Distance::Infinite);
        assert_eq!(&one + &Distance::Infinite, Distance::Infinite);
        assert_eq!(one.double(), Distance::from_integer(2));
    }

    #[test]
    fn tolerance_is_closed_and_widened_by_epsilon() {
        let r = Distance::from_integer(1);
        let exact = Tolerance::exact();
        assert!(exact.le(&Distance::from_integer(1), &r));
        assert!(!exact.le(&Distance::from_ratio(1001, 1000), &r));
        let loose = Tolerance::epsilon(BigRational::new(1.into(), 100.into()));
        assert!(loose.le(&Distance::from_ratio(1001, 1000), &r));
        assert!(!loose.le(&Distance::Infinite, &r));
        assert!(exact.le(&Distance::Infinite, &Distance::Infinite));
    }

    #[test]
    fn display() {
        assert_eq!(Distance::from_ratio(3, 2).to_string(), "3/2");
        assert_eq!(Distance::from_integer(4).to_string(), "4");
        assert_eq!(Distance::Infinite.to_string(), "inf");
    }
}
