//! Registry of identities between bivariate Catalan numbers, central binomial
//! coefficients and the canonical characters, each checked exhaustively and
//! exactly over a parameter domain.

mod catalog;

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::{bivariate_catalan, render, BigInt, Rational};
use crate::exec::Exec;

/// How far each parameter domain extends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Depth {
    /// Bounds halved; meant for quick smoke runs.
    Small,
    #[default]
    Standard,
    /// Bounds raised by about a quarter.
    Deep,
}

impl Depth {
    /// Scale a standard upper bound.
    pub fn scale(self, standard: usize) -> usize {
        match self {
            Depth::Small => standard.div_ceil(2),
            Depth::Standard => standard,
            Depth::Deep => standard + standard.div_ceil(4),
        }
    }

    /// Largest `n` for sums over all of `S_n`.
    pub fn permutation_bound(self) -> usize {
        match self {
            Depth::Small => 4,
            Depth::Standard => 9,
            Depth::Deep => 10,
        }
    }
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Depth::Small => "small",
            Depth::Standard => "standard",
            Depth::Deep => "deep",
        })
    }
}

impl FromStr for Depth {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "small" => Ok(Depth::Small),
            "standard" => Ok(Depth::Standard),
            "deep" => Ok(Depth::Deep),
            other => Err(Error::Parse(format!(
                "unknown depth `{other}`; expected small, standard or deep"
            ))),
        }
    }
}

macro_rules! identity_ids {
    ($($variant:ident => $name:literal, $desc:literal;)+) => {
        /// Stable identifiers of the registered identities.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum IdentityId {
            $($variant,)+
        }

        impl IdentityId {
            /// Every registered identity, in report order.
            pub const ALL: &'static [IdentityId] = &[$(IdentityId::$variant,)+];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(IdentityId::$variant => $name,)+
                }
            }

            pub fn description(self) -> &'static str {
                match self {
                    $(IdentityId::$variant => $desc,)+
                }
            }
        }
    };
}

identity_ids! {
    ClassicalConv => "classical_conv",
        "central binomial coefficient as twice a Catalan/central-binomial convolution";
    ClassicalConv2 => "classical_conv2",
        "4^m as the self-convolution of central binomial coefficients";
    CentralProd => "central_prod",
        "zeta-minus is multiplicative on M(1^n) M(1^m): Delannoy sum of central binomials";
    CentralProdM1 => "central_prod_m1",
        "central product identity specialised to m = 1";
    CentralProdDiag => "central_prod_diag",
        "central product identity specialised to n = m";
    CatalanProd => "catalan_prod",
        "zeta-plus is multiplicative on M(1^n) M(1^m): Delannoy sum of Catalan numbers";
    CatalanProdM1 => "catalan_prod_m1",
        "Catalan product identity specialised to m = 1, n = 2k + 1";
    CatalanProdDiag => "catalan_prod_diag",
        "Catalan product identity specialised to n = m";
    AntipodeSum => "antipode_sum",
        "zeta-minus composed with the antipode equals its bar: sum over coarsenings with odd first part";
    AppAntipodeM => "app_antipodeM",
        "strict-coarsening sum vanishes when k_e is even and the end parts agree in parity";
    TnVandermonde => "tn_vandermonde",
        "sum over T_n vanishes, its inner Vandermonde sums vanish, and the odd/even part count formula";
    SignsA => "signs_a",
        "signed count of compositions of m with v = j parts larger than 1";
    SignsB => "signs_b",
        "signed count of compositions of m with u = j non-initial parts larger than 1";
    GConvolve => "g_convolve",
        "4^m C(i,j) as a binomial convolution of bivariate Catalan numbers";
    HMinusClosed => "h_minus_closed",
        "refinement sum H-minus equals its closed form";
    HPlusClosed => "h_plus_closed",
        "refinement sum H-plus equals its closed form";
    AppF1 => "app_f1",
        "zeta = zeta-plus * zeta-minus evaluated on F_alpha through ribbon cuts";
    AppF2 => "app_f2",
        "bar(zeta-minus) * zeta-minus = counit evaluated on F_alpha through ribbon cuts";
    Cg6 => "cg6",
        "convolution of central Catalan numbers with index total 6";
    Cg7 => "cg7",
        "convolution of central Catalan numbers with index total 7";
    Cg8 => "cg8",
        "convolution of central Catalan numbers with index total 8";
    AllpermsMinus => "allperms_minus",
        "sum over S_n of interior-peak weighted bivariate Catalan numbers equals 4^floor(n/2)";
    AllpermsPlus => "allperms_plus",
        "sum over S_n of augmented-peak weighted bivariate Catalan numbers vanishes (n even)";
    ShuffleMinus => "shuffle_minus",
        "interior-peak weighted sum over shuffles of two identity permutations";
    ShufflePlus => "shuffle_plus",
        "augmented-peak weighted sum over shuffles of two identity permutations";
    AppZetainvM => "app_zetainv_m",
        "sum of 2^(2m-2j-1) C(j) equals 4^m minus the central binomial coefficient";
    AppZetainvPlusM => "app_zetainv_plus_m",
        "zeta-plus composed with the antipode: coarsening sum with odd end parts";
    GesselRec => "gessel_rec",
        "recursion for bivariate Catalan numbers in the second argument";
    BinomialGessel => "binomial_gessel",
        "central binomial coefficient through bivariate Catalan numbers";
    CatalanGessel => "catalan_gessel",
        "twice a Catalan number through bivariate Catalan numbers";
    Associator => "associator",
        "antisymmetrised bivariate Catalan recursion";
    Power2 => "power2",
        "2-adic valuation of C(p,q) is the binary digit sum of p+q, and the reduced denominator";
    ZetaPower => "zeta_power",
        "binomial formulas for convolution powers of zeta on both bases";
    PeakRevCon => "peak_rev_con",
        "peak numbers of the reversal and of the conjugate in terms of end parts";
    HalfBinomialForms => "half_binomial_forms",
        "closed forms of the even and odd parts agree with their half-integer binomial forms";
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        IdentityId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}

impl Serialize for IdentityId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Parameters of a failing case and both sides of the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub params: String,
    #[serde(serialize_with = "ser_rational")]
    pub left: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub right: Rational,
}

fn ser_rational<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&render(x))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub id: IdentityId,
    pub domain: String,
    #[serde(rename = "cases")]
    pub cases_run: usize,
    pub status: Status,
    #[serde(rename = "counterexample", skip_serializing_if = "Option::is_none")]
    pub first_counterexample: Option<Counterexample>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
        };
        write!(
            f,
            "{:<20} {:<4} {:>8} cases  {}",
            self.id.as_str(),
            status,
            self.cases_run,
            self.domain
        )?;
        if let Some(c) = &self.first_counterexample {
            write!(
                f,
                "\n    counterexample {}: left = {}, right = {}",
                c.params,
                render(&c.left),
                render(&c.right)
            )?;
        }
        Ok(())
    }
}

/// One evaluated instance of an identity.
#[derive(Debug, Clone)]
pub(crate) struct Case {
    pub params: String,
    pub left: Rational,
    pub right: Rational,
}

/// Runs registry checks with a chosen depth, execution mode and
/// bivariate Catalan implementation.
#[derive(Debug, Clone, Copy)]
pub struct Checker {
    depth: Depth,
    exec: Exec,
    catalan: fn(u64, u64) -> BigInt,
}

impl Checker {
    pub fn new(depth: Depth) -> Self {
        Checker {
            depth,
            exec: Exec::default(),
            catalan: bivariate_catalan,
        }
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    /// Replace `C(m, n)` everywhere the checks use it (for mutation testing).
    pub fn with_catalan(mut self, catalan: fn(u64, u64) -> BigInt) -> Self {
        self.catalan = catalan;
        self
    }

    pub fn depth(&self) -> Depth {
        self.depth
    }

    pub fn verify(&self, id: IdentityId) -> CheckReport {
        let (domain, cases) = catalog::run(self, id);
        let counterexample = cases
            .iter()
            .find(|c| c.left != c.right)
            .map(|c| Counterexample {
                params: c.params.clone(),
                left: c.left.clone(),
                right: c.right.clone(),
            });
        CheckReport {
            id,
            domain,
            cases_run: cases.len(),
            status: if counterexample.is_some() {
                Status::Fail
            } else {
                Status::Pass
            },
            first_counterexample: counterexample,
        }
    }

    pub fn verify_all(&self) -> Vec<CheckReport> {
        IdentityId::ALL.iter().map(|&id| self.verify(id)).collect()
    }
}

pub fn verify(id: IdentityId, depth: Depth) -> CheckReport {
    Checker::new(depth).verify(id)
}

/// Look up an id by its registry string and verify it.
pub fn verify_named(name: &str, depth: Depth) -> Result<CheckReport> {
    Ok(verify(name.parse()?, depth))
}

pub fn verify_all(depth: Depth) -> Vec<CheckReport> {
    Checker::new(depth).verify_all()
}
