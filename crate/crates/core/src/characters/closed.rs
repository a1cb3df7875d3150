use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::exactnum::{
    bivariate_catalan, central_binomial, generalized_binomial, half_binomial, int, pow2, sign,
    Rational,
};
use crate::exec::Exec;
use crate::permutation::Permutation;
use crate::qsym::{Basis, QSymElement};

use super::TruncatedCharacter;

/// The canonical characters with explicit formulas on both bases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedFormCharacter {
    Zeta,
    ZetaMinus,
    ZetaPlus,
    ZetaInv,
    ZetaInvMinus,
    ZetaInvPlus,
    Counit,
    /// Convolution power `ζ^m`.
    ZetaPower(i64),
}

use ClosedFormCharacter::*;

impl ClosedFormCharacter {
    /// Every id without a parameter.
    pub const FIXED: [ClosedFormCharacter; 7] = [
        Zeta,
        ZetaMinus,
        ZetaPlus,
        ZetaInv,
        ZetaInvMinus,
        ZetaInvPlus,
        Counit,
    ];

    pub fn id(&self) -> String {
        self.to_string()
    }

    /// Value on `M_α`.
    pub fn eval_m(&self, alpha: &Composition) -> Rational {
        if alpha.is_empty() {
            return Rational::one();
        }
        let s = alpha.stats();
        let n = s.weight;
        let first_odd = alpha.first().is_some_and(|a| a % 2 == 1);
        let last_odd = alpha.last().is_some_and(|a| a % 2 == 1);
        match self {
            Counit => Rational::zero(),
            Zeta => indicator(s.k <= 1),
            ZetaInv => int(sign(s.k as u64)),
            ZetaMinus => {
                if !last_odd {
                    return Rational::zero();
                }
                let h = (s.k_odd / 2) as u64;
                Rational::new(sign(s.k_even as u64) * central_binomial(h), pow2(2 * h))
            }
            ZetaPlus => {
                if n % 2 == 1 {
                    Rational::zero()
                } else if s.k == 1 {
                    Rational::one()
                } else if first_odd && last_odd {
                    let h = (s.k_odd / 2) as u64;
                    Rational::new(
                        sign(s.k_even as u64 + 1) * bivariate_catalan(1, h - 1),
                        pow2(s.k_odd as u64),
                    )
                } else {
                    Rational::zero()
                }
            }
            ZetaInvMinus => {
                if !first_odd {
                    return Rational::zero();
                }
                let h = (s.k_odd / 2) as u64;
                Rational::new(sign(s.k as u64) * central_binomial(h), pow2(2 * h))
            }
            ZetaInvPlus => {
                if n % 2 == 1 {
                    return Rational::zero();
                }
                let h = (s.k_odd / 2) as u64;
                Rational::new(sign(s.k as u64) * central_binomial(h), pow2(s.k_odd as u64))
            }
            ZetaPower(m) => int(generalized_binomial(*m, s.k as u64)),
        }
    }

    /// Value on `F_α`, from the peak statistics of `α` (or of its reversal
    /// or conjugate for the inverse family).
    pub fn eval_f(&self, alpha: &Composition) -> Rational {
        let n = alpha.weight();
        let h = n / 2;
        match self {
            Counit => indicator(alpha.is_empty()),
            Zeta => indicator(alpha.len() <= 1),
            ZetaInv => {
                if alpha.is_all_ones() {
                    int(sign(n as u64))
                } else {
                    Rational::zero()
                }
            }
            ZetaMinus => catalan_weight(alpha.p_minus(), h, 2 * h, 0),
            ZetaPlus => {
                if n % 2 == 1 {
                    Rational::zero()
                } else {
                    catalan_weight(alpha.p_plus(), h, n, 0)
                }
            }
            ZetaInvMinus => catalan_weight(alpha.reversal().p_minus(), h, 2 * h, n),
            ZetaInvPlus => {
                if n % 2 == 1 {
                    Rational::zero()
                } else {
                    catalan_weight(alpha.conjugate().p_plus(), h, n, 0)
                }
            }
            ZetaPower(m) => int(generalized_binomial(
                *m + n as i64 - alpha.len() as i64,
                n as u64,
            )),
        }
    }

    pub fn eval(&self, basis: Basis, alpha: &Composition) -> Rational {
        match basis {
            Basis::M => self.eval_m(alpha),
            Basis::F => self.eval_f(alpha),
        }
    }

    /// Linear extension to an element in either basis.
    pub fn eval_element(&self, x: &QSymElement) -> Rational {
        x.terms()
            .iter()
            .map(|(a, c)| c * self.eval(x.basis(), a))
            .sum()
    }

    /// Value on `F_σ` in the algebra of permutations, read directly from the
    /// peak sets of `σ`.
    pub fn eval_perm(&self, sigma: &Permutation) -> Result<Rational> {
        let n = sigma.len();
        let h = n / 2;
        match self {
            Zeta => Ok(indicator(sigma.descent_set().is_empty())),
            ZetaMinus => Ok(catalan_weight(sigma.p_minus(), h, 2 * h, 0)),
            ZetaPlus => Ok(if n % 2 == 1 {
                Rational::zero()
            } else {
                catalan_weight(sigma.p_plus(), h, n, 0)
            }),
            other => Err(Error::UnsupportedCharacter(format!(
                "{other} has no permutation-level formula; use zeta, zeta-minus or zeta-plus"
            ))),
        }
    }

    /// Tabulate the `M`-basis values up to degree `max_degree`.
    pub fn restrict(&self, max_degree: usize) -> TruncatedCharacter {
        self.restrict_with(max_degree, Exec::default())
    }

    pub fn restrict_with(&self, max_degree: usize, exec: Exec) -> TruncatedCharacter {
        let c = *self;
        TruncatedCharacter::from_fn_with(max_degree, exec, move |a| c.eval_m(a))
    }

    /// The same values written with binomial coefficients at half-integers;
    /// defined for the four even/odd parts only.
    pub fn eval_m_half_binomial(&self, alpha: &Composition) -> Option<Rational> {
        if !matches!(self, ZetaMinus | ZetaPlus | ZetaInvMinus | ZetaInvPlus) {
            return None;
        }
        if alpha.is_empty() {
            return Some(Rational::one());
        }
        let s = alpha.stats();
        let first_odd = alpha.first().is_some_and(|a| a % 2 == 1);
        let last_odd = alpha.last().is_some_and(|a| a % 2 == 1);
        let h = (s.k_odd / 2) as u64;
        let value = match self {
            ZetaMinus if last_odd => signed(s.k_even as u64 + h, half_binomial(0, h)),
            ZetaPlus if s.weight.is_multiple_of(2) && s.k == 1 => Rational::one(),
            ZetaPlus if s.weight.is_multiple_of(2) && first_odd && last_odd => {
                signed(s.k_even as u64 + h, half_binomial(1, h))
            }
            ZetaInvMinus if first_odd => signed(s.k as u64 + h, half_binomial(0, h)),
            ZetaInvPlus if s.weight.is_multiple_of(2) => signed(s.k as u64 + h, half_binomial(0, h)),
            _ => Rational::zero(),
        };
        Some(value)
    }

    /// Half-integer binomial form on `F_α`; see [`Self::eval_m_half_binomial`].
    pub fn eval_f_half_binomial(&self, alpha: &Composition) -> Option<Rational> {
        let n = alpha.weight();
        let h = (n / 2) as u64;
        let value = match self {
            ZetaMinus => signed(h, half_binomial(alpha.p_minus() as i64, h)),
            ZetaPlus if n.is_multiple_of(2) => signed(h, half_binomial(alpha.p_plus() as i64, h)),
            ZetaInvMinus => signed(
                (n as u64).div_ceil(2),
                half_binomial(alpha.reversal().p_minus() as i64, h),
            ),
            ZetaInvPlus if n.is_multiple_of(2) => {
                signed(h, half_binomial(alpha.conjugate().p_plus() as i64, h))
            }
            ZetaPlus | ZetaInvPlus => Rational::zero(),
            _ => return None,
        };
        Some(value)
    }
}

fn indicator(b: bool) -> Rational {
    if b {
        Rational::one()
    } else {
        Rational::zero()
    }
}

fn signed(e: u64, x: Rational) -> Rational {
    if e.is_multiple_of(2) {
        x
    } else {
        -x
    }
}

/// `(-1)^(p + extra) C(p, h - p) / 2^denom_exp`, zero when `p > h`.
fn catalan_weight(p: usize, h: usize, denom_exp: usize, extra_sign: usize) -> Rational {
    if p > h {
        return Rational::zero();
    }
    Rational::new(
        sign((p + extra_sign) as u64) * bivariate_catalan(p as u64, (h - p) as u64),
        pow2(denom_exp as u64),
    )
}

impl fmt::Display for ClosedFormCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Zeta => f.write_str("zeta"),
            ZetaMinus => f.write_str("zeta-minus"),
            ZetaPlus => f.write_str("zeta-plus"),
            ZetaInv => f.write_str("zeta-inv"),
            ZetaInvMinus => f.write_str("zeta-inv-minus"),
            ZetaInvPlus => f.write_str("zeta-inv-plus"),
            Counit => f.write_str("counit"),
            ZetaPower(m) => write!(f, "zeta-pow:{m}"),
        }
    }
}

impl FromStr for ClosedFormCharacter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(m) = s.strip_prefix("zeta-pow:") {
            return m
                .trim()
                .parse::<i64>()
                .map(ZetaPower)
                .map_err(|_| Error::UnknownCharacter(format!("{s}: exponent must be an integer")));
        }
        Self::FIXED
            .into_iter()
            .find(|c| c.to_string() == s)
            .ok_or_else(|| {
                Error::UnknownCharacter(format!(
                    "{s}; expected one of zeta, zeta-plus, zeta-minus, zeta-inv, \
                     zeta-inv-plus, zeta-inv-minus, counit, zeta-pow:<m>"
                ))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    #[test]
    fn m_basis_examples() {
        assert_eq!(ZetaPlus.eval_m(&c("2")), Rational::one());
        assert_eq!(ZetaMinus.eval_m(&c("1,1")), ratio(1, 2));
        assert_eq!(ZetaInv.eval_m(&c("2,1")), Rational::one());
        assert_eq!(ZetaPower(2).eval_m(&c("1,1")), Rational::one());
        assert_eq!(ZetaPlus.eval_m(&c("1,1")), ratio(-1, 2));
    }

    #[test]
    fn f_basis_examples() {
        assert_eq!(ZetaMinus.eval_f(&c("2")), ratio(1, 2));
        assert_eq!(ZetaPlus.eval_f(&c("2")), ratio(1, 2));
        assert_eq!(ZetaInv.eval_f(&c("1,1,1")), -Rational::one());
    }

    #[test]
    fn element_examples() {
        let m3 = QSymElement::m(c("3"));
        assert_eq!(Zeta.eval_element(&m3), Rational::one());
        assert!(ZetaPlus.eval_element(&QSymElement::zero(Basis::M)).is_zero());
        let m2 = QSymElement::m(c("2"));
        assert!(ZetaMinus.eval_element(&m2.to_f()).is_zero());
    }

    #[test]
    fn permutation_examples() {
        let p = |s: &str| s.parse::<Permutation>().unwrap();
        assert_eq!(ZetaMinus.eval_perm(&p("132")).unwrap(), ratio(-1, 2));
        for s in ["123", "132", "213", "231", "312", "321"] {
            assert!(ZetaPlus.eval_perm(&p(s)).unwrap().is_zero());
        }
        assert_eq!(ZetaMinus.eval_perm(&p("12")).unwrap(), ratio(1, 2));
        assert!(ZetaInv.eval_perm(&p("12")).is_err());
    }

    #[test]
    fn restrict_examples() {
        let e = Counit.restrict(3);
        for n in 0..=3 {
            for a in crate::composition::all_compositions(n) {
                assert_eq!(*e.value(&a).unwrap(), indicator(n == 0));
            }
        }
        let z = Zeta.restrict(2);
        assert_eq!(*z.value(&c("1")).unwrap(), Rational::one());
        assert_eq!(*z.value(&c("2")).unwrap(), Rational::one());
        assert!(z.value(&c("1,1")).unwrap().is_zero());
        let zm = ZetaMinus.restrict(2);
        assert_eq!(*zm.value(&c("1")).unwrap(), Rational::one());
        assert!(zm.value(&c("2")).unwrap().is_zero());
        assert_eq!(*zm.value(&c("1,1")).unwrap(), ratio(1, 2));
    }

    #[test]
    fn ids_round_trip() {
        for ch in ClosedFormCharacter::FIXED.into_iter().chain([ZetaPower(-3), ZetaPower(2)]) {
            assert_eq!(ch.to_string().parse::<ClosedFormCharacter>().unwrap(), ch);
        }
        assert!("zeta-pow:x".parse::<ClosedFormCharacter>().is_err());
        assert!("eta".parse::<ClosedFormCharacter>().is_err());
    }
}
