//! The signed refinement sums `H₋(α)` and `H₊(α)` with bivariate Catalan
//! summands, evaluated literally, and their closed forms.

use num_traits::Zero;

use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::exactnum::{bivariate_catalan, central_binomial, int, pow2, BigInt};
use crate::exactnum::Rational;

/// Bivariate Catalan function used by the sums; swappable for testing.
pub type CatalanFn = fn(u64, u64) -> BigInt;

fn signed_catalan(cat: CatalanFn, exp: usize, p: usize, h: usize) -> BigInt {
    if p > h {
        return BigInt::zero();
    }
    let c = cat(p as u64, (h - p) as u64);
    if exp.is_multiple_of(2) {
        c
    } else {
        -c
    }
}

/// `Σ_{β refines α} (-1)^{k(β)+p₋(β)+1} C(p₋(β), ⌊n/2⌋ - p₋(β))`.
pub fn h_minus(alpha: &Composition) -> Rational {
    h_minus_with(alpha, bivariate_catalan)
}

/// [`h_minus`] with a caller-supplied `C(m, n)`.
pub fn h_minus_with(alpha: &Composition, cat: CatalanFn) -> Rational {
    let h = alpha.weight() / 2;
    let total: BigInt = alpha
        .refinements()
        .iter()
        .map(|b| signed_catalan(cat, b.len() + b.p_minus() + 1, b.p_minus(), h))
        .sum();
    int(total)
}

/// `Σ_{β refines α} (-1)^{k(β)+p₊(β)+1} C(p₊(β), n/2 - p₊(β))`, `n` even.
pub fn h_plus(alpha: &Composition) -> Result<Rational> {
    h_plus_with(alpha, bivariate_catalan)
}

/// [`h_plus`] with a caller-supplied `C(m, n)`.
pub fn h_plus_with(alpha: &Composition, cat: CatalanFn) -> Result<Rational> {
    let n = alpha.weight();
    if n % 2 == 1 {
        return Err(Error::OddWeight(n));
    }
    let total: BigInt = alpha
        .refinements()
        .iter()
        .map(|b| signed_catalan(cat, b.len() + b.p_plus() + 1, b.p_plus(), n / 2))
        .sum();
    Ok(int(total))
}

/// Closed form of [`h_minus`] for `n ≥ 1`.
pub fn h_minus_closed(alpha: &Composition) -> Rational {
    let n = alpha.weight();
    match alpha.last() {
        Some(a) if a % 2 == 1 => {
            let ko = alpha.k_odd();
            let sign = if (n - 1).is_multiple_of(2) { 1 } else { -1 };
            int(BigInt::from(sign) * pow2((n - ko) as u64) * central_binomial((ko / 2) as u64))
        }
        _ => Rational::zero(),
    }
}

/// Closed form of [`h_plus`] for even `n ≥ 2`.
pub fn h_plus_closed(alpha: &Composition) -> Result<Rational> {
    let n = alpha.weight();
    if n % 2 == 1 {
        return Err(Error::OddWeight(n));
    }
    let first_odd = alpha.first().is_some_and(|a| a % 2 == 1);
    let last_odd = alpha.last().is_some_and(|a| a % 2 == 1);
    Ok(if alpha.len() == 1 {
        int(pow2(n as u64))
    } else if first_odd && last_odd {
        let ko = alpha.k_odd();
        int(pow2((n - ko) as u64) * bivariate_catalan(1, (ko / 2 - 1) as u64))
    } else {
        Rational::zero()
    })
}
