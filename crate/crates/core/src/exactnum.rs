//! Exact integers, rationals and the closed-form combinatorial numbers.
//!
//! Everything here is exact. `BigInt` and `Rational` are the `num` types;
//! `BigRational` keeps itself in lowest terms with a positive denominator, so
//! structural equality is value equality.

use std::sync::OnceLock;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use num_bigint::BigInt;
pub use num_rational::BigRational as Rational;

/// Arguments below this bound are served from a table built with the
/// factorial formula.
const CATALAN_TABLE: usize = 48;

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `binom(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `binom(top, k) = top (top-1) ... (top-k+1) / k!` for any integer `top`.
pub fn generalized_binomial(top: i64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(top) - i;
    }
    let (q, r) = acc.div_rem(&factorial(k));
    debug_assert!(r.is_zero());
    q
}

/// `(sum parts)! / prod(parts!)`.
pub fn multinomial(parts: &[u64]) -> BigInt {
    let total: u64 = parts.iter().sum();
    let den = parts
        .iter()
        .fold(BigInt::one(), |acc, &p| acc * factorial(p));
    factorial(total) / den
}

fn bivariate_catalan_uncached(m: u64, n: u64) -> BigInt {
    let num = factorial(2 * m) * factorial(2 * n);
    let den = factorial(m) * factorial(m + n) * factorial(n);
    let (q, r) = num.div_rem(&den);
    assert!(
        r.is_zero(),
        "inexact division computing C({m},{n}): arithmetic bug"
    );
    q
}

fn catalan_table() -> &'static Vec<Vec<BigInt>> {
    static TABLE: OnceLock<Vec<Vec<BigInt>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (0..CATALAN_TABLE as u64)
            .map(|m| {
                (0..CATALAN_TABLE as u64)
                    .map(|n| bivariate_catalan_uncached(m, n))
                    .collect()
            })
            .collect()
    })
}

/// The bivariate Catalan number `(2m)!(2n)! / (m!(m+n)!n!)`.
///
/// Panics if the division leaves a remainder.
pub fn bivariate_catalan(m: u64, n: u64) -> BigInt {
    if (m as usize) < CATALAN_TABLE && (n as usize) < CATALAN_TABLE {
        catalan_table()[m as usize][n as usize].clone()
    } else {
        bivariate_catalan_uncached(m, n)
    }
}

/// `B(m) = binom(2m, m) = C(0, m)`.
pub fn central_binomial(m: u64) -> BigInt {
    bivariate_catalan(0, m)
}

/// `Cat(m) = C(1, m) / 2`.
pub fn catalan(m: u64) -> BigInt {
    let (q, r) = bivariate_catalan(1, m).div_rem(&BigInt::from(2));
    debug_assert!(r.is_zero());
    q
}

/// The four central Catalan families, each half of a bivariate Catalan number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CentralFamily {
    One,
    Two,
    Three,
    Four,
}

impl TryFrom<u8> for CentralFamily {
    type Error = Error;

    fn try_from(value: u8) -> Result<Self> {
        match value {
            1 => Ok(CentralFamily::One),
            2 => Ok(CentralFamily::Two),
            3 => Ok(CentralFamily::Three),
            4 => Ok(CentralFamily::Four),
            other => Err(Error::Parse(format!(
                "central Catalan family must be 1..=4, got {other}"
            ))),
        }
    }
}

pub fn central_catalan(family: CentralFamily, h: u64) -> Rational {
    let c = match family {
        CentralFamily::One => bivariate_catalan(2 * h + 1, h + 1),
        CentralFamily::Two => bivariate_catalan(2 * h, h + 1),
        CentralFamily::Three => bivariate_catalan(2 * h, h),
        CentralFamily::Four => bivariate_catalan(2 * h + 1, h),
    };
    Rational::new(c, BigInt::from(2))
}

/// `binom(m - 1/2, k)` through the falling product.
pub fn half_binomial(m: i64, k: u64) -> Rational {
    let top = Rational::new(BigInt::from(2 * m - 1), BigInt::from(2));
    let mut acc = Rational::one();
    for j in 0..k {
        acc *= &top - Rational::from_integer(BigInt::from(j));
    }
    acc / Rational::from_integer(factorial(k))
}

/// Largest `e` with `2^e | x`.
pub fn two_adic_valuation(x: &BigInt) -> Result<u64> {
    if x.is_zero() {
        return Err(Error::ZeroValuation);
    }
    Ok(x.trailing_zeros().expect("nonzero has a lowest set bit"))
}

/// Number of 1 bits in the binary expansion of `m`.
pub fn binary_digit_sum(m: u64) -> u32 {
    m.count_ones()
}

pub fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}

/// `(-1)^e` as an integer.
pub fn sign(e: u64) -> BigInt {
    if e.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

pub fn int(x: impl Into<BigInt>) -> Rational {
    Rational::from_integer(x.into())
}

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Renders `p/q`, or `p` when `q = 1`.
pub fn render(x: &Rational) -> String {
    x.to_string()
}

/// Parses `p`, `-p`, or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(int(s.parse::<BigInt>().map_err(|_| bad())?)),
    }
}

pub fn is_odd(x: &BigInt) -> bool {
    x.abs().is_odd()
}
