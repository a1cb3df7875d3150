//! The individual identity checks. Each returns a domain description and the
//! evaluated cases in a fixed order.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::characters::{h_minus_with, h_plus_with, ClosedFormCharacter};
use crate::composition::{all_compositions, Composition};
use crate::exactnum::{
    binary_digit_sum, binomial, catalan, central_binomial, int, multinomial, pow2, ratio,
    two_adic_valuation, BigInt, Rational,
};
use crate::permutation::{factorial_u64, permutations_from, shuffles, unrank, Permutation};
use crate::qsym::Basis;

use super::{Case, Checker, IdentityId};

type Outcome = (String, Vec<Case>);

pub(super) fn run(ch: &Checker, id: IdentityId) -> Outcome {
    use IdentityId::*;
    match id {
        ClassicalConv => classical_conv(ch),
        ClassicalConv2 => classical_conv2(ch),
        CentralProd => central_prod(ch),
        CentralProdM1 => central_prod_m1(ch),
        CentralProdDiag => central_prod_diag(ch),
        CatalanProd => catalan_prod(ch),
        CatalanProdM1 => catalan_prod_m1(ch),
        CatalanProdDiag => catalan_prod_diag(ch),
        AntipodeSum => antipode_sum(ch),
        AppAntipodeM => app_antipode_m(ch),
        TnVandermonde => tn_vandermonde(ch),
        SignsA => signs(ch, false),
        SignsB => signs(ch, true),
        GConvolve => g_convolve(ch),
        HMinusClosed => h_minus_closed(ch),
        HPlusClosed => h_plus_closed(ch),
        AppF1 => app_f1(ch),
        AppF2 => app_f2(ch),
        Cg6 => central_catalan_conv(ch, 6),
        Cg7 => central_catalan_conv(ch, 7),
        Cg8 => central_catalan_conv(ch, 8),
        AllpermsMinus => allperms(ch, false),
        AllpermsPlus => allperms(ch, true),
        ShuffleMinus => shuffle_sum(ch, false),
        ShufflePlus => shuffle_sum(ch, true),
        AppZetainvM => app_zetainv_m(ch),
        AppZetainvPlusM => app_zetainv_plus_m(ch),
        GesselRec => gessel_rec(ch),
        BinomialGessel => gessel_special(ch, false),
        CatalanGessel => gessel_special(ch, true),
        Associator => associator(ch),
        Power2 => power2(ch),
        ZetaPower => zeta_power(ch),
        PeakRevCon => peak_rev_con(ch),
        HalfBinomialForms => half_binomial_forms(ch),
    }
}

// ---- shared helpers -------------------------------------------------------

impl Checker {
    /// `C(m, n)`, zero when `n < 0`.
    fn c(&self, m: usize, n: i64) -> BigInt {
        if n < 0 {
            BigInt::zero()
        } else {
            (self.catalan)(m as u64, n as u64)
        }
    }

    /// Central binomial coefficient `B(m) = C(0, m)`.
    fn b(&self, m: usize) -> BigInt {
        self.c(0, m as i64)
    }

    /// Catalan number `C(m) = C(1, m) / 2`.
    fn cat(&self, m: usize) -> Rational {
        Rational::new(self.c(1, m as i64), 2.into())
    }

    /// Central Catalan numbers `C_1 .. C_4`.
    fn central(&self, r: u8, h: usize) -> Rational {
        let h = h as i64;
        let c = match r {
            1 => self.c(2 * h as usize + 1, h + 1),
            2 => self.c(2 * h as usize, h + 1),
            3 => self.c(2 * h as usize, h),
            _ => self.c(2 * h as usize + 1, h),
        };
        Rational::new(c, 2.into())
    }

    fn bound(&self, standard: usize) -> usize {
        self.depth.scale(standard)
    }

    fn cases<P, L, F>(&self, params: &[P], label: L, f: F) -> Vec<Case>
    where
        P: Sync,
        L: Fn(&P) -> String + Sync + Send,
        F: Fn(&P) -> (Rational, Rational) + Sync + Send,
    {
        self.exec.map(params, |p| {
            let (left, right) = f(p);
            Case {
                params: label(p),
                left,
                right,
            }
        })
    }
}

fn pow4(e: usize) -> BigInt {
    pow2(2 * e as u64)
}

fn over4(x: BigInt, e: usize) -> Rational {
    Rational::new(x, pow4(e))
}

fn sgn(e: usize) -> BigInt {
    if e.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn q(x: impl Into<BigInt>) -> Rational {
    int(x.into())
}

fn compositions_between(lo: usize, hi: usize) -> Vec<Composition> {
    (lo..=hi).flat_map(all_compositions).collect()
}

fn first_odd(a: &Composition) -> bool {
    a.first().is_some_and(|x| x % 2 == 1)
}

fn last_odd(a: &Composition) -> bool {
    a.last().is_some_and(|x| x % 2 == 1)
}

fn grid3(hi: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for a in 0..=hi {
        for b in 0..=hi {
            for c in 0..=hi {
                out.push((a, b, c));
            }
        }
    }
    out
}

// ---- central binomial and Catalan convolutions ----------------------------

fn classical_conv(ch: &Checker) -> Outcome {
    let hi = ch.bound(30);
    let ms: Vec<usize> = (1..=hi).collect();
    let cases = ch.cases(&ms, |m| format!("m={m}"), |&m| {
        let right: Rational = (1..=m)
            .map(|i| ch.cat(i - 1) * q(ch.b(m - i)))
            .sum::<Rational>()
            * q(2);
        (q(ch.b(m)), right)
    });
    (format!("1 <= m <= {hi}"), cases)
}

fn classical_conv2(ch: &Checker) -> Outcome {
    let hi = ch.bound(30);
    let ms: Vec<usize> = (0..=hi).collect();
    let cases = ch.cases(&ms, |m| format!("m={m}"), |&m| {
        let right: BigInt = (0..=m).map(|i| ch.b(i) * ch.b(m - i)).sum();
        (q(pow4(m)), q(right))
    });
    (format!("0 <= m <= {hi}"), cases)
}

fn central_prod_lhs(ch: &Checker, n: usize, m: usize) -> Rational {
    (0..=n.min(m))
        .map(|d| {
            let h = (n + m - 2 * d) / 2;
            let frac = ratio((n + m - 2 * d) as i64, (n + m - d) as i64);
            let paths = multinomial(&[(n - d) as u64, (m - d) as u64, d as u64]);
            frac * over4(sgn(d) * paths * ch.b(h), h)
        })
        .sum()
}

fn central_prod(ch: &Checker) -> Outcome {
    let hi = ch.bound(12);
    let params: Vec<(usize, usize)> = (0..=hi)
        .flat_map(|n| (0..=hi).map(move |m| (n, m)))
        .filter(|&(n, m)| n + m > 0)
        .collect();
    let cases = ch.cases(&params, |(n, m)| format!("n={n}, m={m}"), |&(n, m)| {
        let right = over4(ch.b(n / 2) * ch.b(m / 2), n / 2 + m / 2);
        (central_prod_lhs(ch, n, m), right)
    });
    (format!("0 <= n, m <= {hi}, not both 0"), cases)
}

fn central_prod_m1(ch: &Checker) -> Outcome {
    let hi = ch.bound(12);
    let ns: Vec<usize> = (1..=hi).collect();
    let cases = ch.cases(&ns, |n| format!("n={n}"), |&n| {
        let up = n.div_ceil(2);
        let down = (n - 1) / 2;
        let left = over4(BigInt::from(n + 1) * ch.b(up), up)
            - over4(BigInt::from(n - 1) * ch.b(down), down);
        (left, over4(ch.b(n / 2), n / 2))
    });
    (format!("1 <= n <= {hi}, m = 1"), cases)
}

fn central_prod_diag(ch: &Checker) -> Outcome {
    let hi = ch.bound(12);
    let ns: Vec<usize> = (1..=hi).collect();
    let cases = ch.cases(&ns, |n| format!("n={n}"), |&n| {
        let left: Rational = (0..n)
            .map(|d| {
                let b = ch.b(n - d);
                over4(
                    sgn(d) * binomial((2 * n - d - 1) as u64, d as i64) * &b * &b,
                    n - d,
                )
            })
            .sum();
        let b = ch.b(n / 2);
        (left, over4(&b * &b, 2 * (n / 2)))
    });
    (format!("1 <= n = m <= {hi}"), cases)
}

fn catalan_prod(ch: &Checker) -> Outcome {
    let hi = ch.bound(12);
    let params: Vec<(usize, usize)> = (1..=hi)
        .flat_map(|n| (1..=hi).map(move |m| (n, m)))
        .filter(|&(n, m)| (n + m) % 2 == 0 && (n, m) != (1, 1))
        .collect();
    let cases = ch.cases(&params, |(n, m)| format!("n={n}, m={m}"), |&(n, m)| {
        let s = n + m;
        let left: Rational = (0..=n.min(m))
            .filter(|&d| s > 2 * d)
            .map(|d| {
                let f1 = ratio((s - 2 * d) as i64, (s - d) as i64);
                let f2 = ratio((s - 2 * d - 1) as i64, (s - d - 1) as i64);
                let paths = multinomial(&[(n - d) as u64, (m - d) as u64, d as u64]);
                let pow = Rational::new(sgn(d + 1) * pow4(d), 2.into());
                pow * f1 * f2 * q(paths) * ch.cat(s / 2 - d - 1)
            })
            .sum();
        let right = if n % 2 == 0 {
            ch.cat(n / 2 - 1) * ch.cat(m / 2 - 1)
        } else {
            Rational::zero()
        };
        (left, right)
    });
    (
        format!("1 <= n, m <= {hi}, n = m mod 2, (n, m) != (1, 1)"),
        cases,
    )
}

fn catalan_prod_m1(ch: &Checker) -> Outcome {
    let hi = ch.bound(12);
    let ks: Vec<usize> = (1..=hi).collect();
    let cases = ch.cases(&ks, |k| format!("k={k}"), |&k| {
        let right = ratio(2 * (2 * k as i64 - 1), k as i64 + 1) * ch.cat(k - 1);
        (ch.cat(k), right)
    });
    (format!("1 <= k <= {hi} (n = 2k+1, m = 1)"), cases)
}

fn catalan_prod_diag(ch: &Checker) -> Outcome {
    let hi = ch.bound(12);
    let ns: Vec<usize> = (2..=hi).collect();
    let cases = ch.cases(&ns, |n| format!("n={n}"), |&n| {
        let left: Rational = (0..n)
            .map(|d| {
                let c = ch.cat(n - d - 1);
                q(sgn(d + 1)
                    * pow4(d)
                    * BigInt::from(2 * n - 2 * d - 1)
                    * binomial((2 * n - d - 2) as u64, d as i64))
                    * &c
                    * &c
            })
            .sum();
        let right = if n % 2 == 0 {
            let c = ch.cat(n / 2 - 1);
            &c * &c
        } else {
            Rational::zero()
        };
        (left, right)
    });
    (format!("2 <= n = m <= {hi}"), cases)
}

// ---- antipode-derived sums over coarsenings ------------------------------

/// `(-1)^{k_e} B(⌊k_o/2⌋) / 4^{⌊k_o/2⌋}`.
fn minus_weight(ch: &Checker, a: &Composition) -> Rational {
    let h = a.k_odd() / 2;
    over4(sgn(a.k_even()) * ch.b(h), h)
}

fn antipode_sum(ch: &Checker) -> Outcome {
    let hi = ch.bound(10);
    let betas = compositions_between(1, hi);
    let cases = ch.cases(&betas, |b| format!("beta=({b})"), |beta| {
        let left: Rational = beta
            .coarsenings()
            .iter()
            .filter(|a| first_odd(a))
            .map(|a| minus_weight(ch, a))
            .sum();
        let right = if last_odd(beta) {
            let h = beta.k_odd() / 2;
            over4(ch.b(h), h)
        } else {
            Rational::zero()
        };
        (left, right)
    });
    (format!("all beta with 1 <= |beta| <= {hi}"), cases)
}

fn app_antipode_m(ch: &Checker) -> Outcome {
    let hi = ch.bound(10);
    let betas: Vec<Composition> = compositions_between(1, hi)
        .into_iter()
        .filter(|b| b.k_even() % 2 == 0 && first_odd(b) == last_odd(b))
        .collect();
    let cases = ch.cases(&betas, |b| format!("beta=({b})"), |beta| {
        let left: Rational = beta
            .coarsenings()
            .iter()
            .filter(|a| *a != beta && first_odd(a))
            .map(|a| minus_weight(ch, a))
            .sum();
        (left, Rational::zero())
    });
    (
        format!("beta with k_e even, b_1 = b_k mod 2, 1 <= |beta| <= {hi}"),
        cases,
    )
}

fn tn_term_count(n: usize, r: usize, s: usize) -> BigInt {
    let top = ((n + r) / 2 - 1) as u64;
    binomial(top, (r + s - 1) as i64) * binomial((r + s - 1) as u64, (r - 1) as i64)
}

#[derive(Debug, Clone, Copy)]
enum TnCase {
    Total(usize),
    Inner(usize, usize),
    Count(usize, usize, usize),
}

fn tn_vandermonde(ch: &Checker) -> Outcome {
    let hi = ch.bound(14);
    let count_hi = ch.bound(12);
    let mut params = Vec::new();
    for n in 1..=hi {
        params.push(TnCase::Total(n));
        for r in (1..n).filter(|r| (n - r) % 2 == 0) {
            params.push(TnCase::Inner(n, r));
        }
    }
    for n in 1..=count_hi {
        for r in (1..=n).filter(|r| (n - r) % 2 == 0) {
            for s in 0..=(n - r) / 2 {
                params.push(TnCase::Count(n, r, s));
            }
        }
    }
    // brute-force census: compositions with odd first part by (k_o, k_e)
    let census: HashMap<(usize, usize, usize), u64> = {
        let mut m = HashMap::new();
        for n in 1..=count_hi {
            for a in all_compositions(n).iter().filter(|a| first_odd(a)) {
                *m.entry((n, a.k_odd(), a.k_even())).or_insert(0) += 1;
            }
        }
        m
    };
    let cases = ch.cases(
        &params,
        |p| match p {
            TnCase::Total(n) => format!("T_n sum, n={n}"),
            TnCase::Inner(n, r) => format!("inner sum, n={n}, r={r}"),
            TnCase::Count(n, r, s) => format!("count, n={n}, r={r}, s={s}"),
        },
        |p| match *p {
            TnCase::Total(n) => {
                let mut total = Rational::zero();
                for r in (1..n).filter(|r| (n - r) % 2 == 0) {
                    for s in 0..=(n - r) / 2 {
                        let h = r / 2;
                        total += over4(sgn(s) * tn_term_count(n, r, s) * ch.b(h), h);
                    }
                }
                (total, Rational::zero())
            }
            TnCase::Inner(n, r) => {
                let total: BigInt = (0..=(n - r) / 2)
                    .map(|s| sgn(s) * tn_term_count(n, r, s))
                    .sum();
                (q(total), Rational::zero())
            }
            TnCase::Count(n, r, s) => {
                let brute = census.get(&(n, r, s)).copied().unwrap_or(0);
                (q(brute), q(tn_term_count(n, r, s)))
            }
        },
    );
    (
        format!("T_n and inner sums for 1 <= n <= {hi}; counts for n <= {count_hi}"),
        cases,
    )
}

fn signs(ch: &Checker, first_excluded: bool) -> Outcome {
    let hi = ch.bound(14);
    let lo = usize::from(first_excluded);
    let params: Vec<(usize, usize)> = (lo..=hi)
        .flat_map(|m| (0..=m / 2 + 1).map(move |j| (m, j)))
        .collect();
    let tallies: HashMap<usize, HashMap<usize, i64>> = (lo..=hi)
        .map(|m| {
            let mut t = HashMap::new();
            for g in all_compositions(m) {
                let stat = if first_excluded { g.u() } else { g.v() };
                *t.entry(stat).or_insert(0) += if g.len() % 2 == 0 { 1 } else { -1 };
            }
            (m, t)
        })
        .collect();
    let cases = ch.cases(&params, |(m, j)| format!("m={m}, j={j}"), |&(m, j)| {
        let left = tallies[&m].get(&j).copied().unwrap_or(0);
        let right = if first_excluded && m % 2 == 0 {
            BigInt::zero()
        } else {
            sgn(m + j) * binomial((m / 2) as u64, j as i64)
        };
        (q(left), q(right))
    });
    (format!("{lo} <= m <= {hi}, 0 <= j <= m/2 + 1"), cases)
}

fn g_convolve(ch: &Checker) -> Outcome {
    let hi = ch.bound(10);
    let params = grid3(hi);
    let cases = ch.cases(
        &params,
        |(i, j, m)| format!("i={i}, j={j}, m={m}"),
        |&(i, j, m)| {
            let right: BigInt = (0..=m)
                .map(|b| binomial(m as u64, b as i64) * ch.c(i + b, (m + j - b) as i64))
                .sum();
            (q(pow4(m) * ch.c(i, j as i64)), q(right))
        },
    );
    (format!("0 <= i, j, m <= {hi}"), cases)
}

// ---- H sums and fundamental-basis convolutions ----------------------------

fn h_minus_closed(ch: &Checker) -> Outcome {
    let hi = ch.bound(10);
    let alphas = compositions_between(1, hi);
    let cases = ch.cases(&alphas, |a| format!("alpha=({a})"), |a| {
        let n = a.weight();
        let right = if last_odd(a) {
            let ko = a.k_odd();
            q(sgn(n - 1) * pow2((n - ko) as u64) * ch.b(ko / 2))
        } else {
            Rational::zero()
        };
        (h_minus_with(a, ch.catalan), right)
    });
    (format!("all alpha with 1 <= |alpha| <= {hi}"), cases)
}

fn h_plus_closed(ch: &Checker) -> Outcome {
    let hi = ch.bound(10);
    let alphas: Vec<Composition> = (1..=hi / 2)
        .flat_map(|h| all_compositions(2 * h))
        .collect();
    let cases = ch.cases(&alphas, |a| format!("alpha=({a})"), |a| {
        let n = a.weight();
        let right = if a.len() == 1 {
            q(pow2(n as u64))
        } else if first_odd(a) && last_odd(a) {
            let ko = a.k_odd();
            q(pow2((n - ko) as u64) * ch.c(1, (ko / 2) as i64 - 1))
        } else {
            Rational::zero()
        };
        let left = h_plus_with(a, ch.catalan).expect("even weight");
        (left, right)
    });
    (format!("all alpha with |alpha| even, 2 <= |alpha| <= {hi}"), cases)
}

fn app_f1(ch: &Checker) -> Outcome {
    let hi = ch.bound(10);
    let alphas = compositions_between(1, hi);
    let cases = ch.cases(&alphas, |a| format!("alpha=({a})"), |a| {
        let n = a.weight();
        let h = n / 2;
        let left: BigInt = (0..=h)
            .map(|j| {
                let cut = a.ribbon_cut(2 * j).expect("cut within ribbon");
                let lp = cut.left.p_plus();
                let rm = cut.right.p_minus();
                sgn(lp + rm)
                    * ch.c(lp, j as i64 - lp as i64)
                    * ch.c(rm, (h - j) as i64 - rm as i64)
            })
            .sum();
        let right = if a.len() == 1 { pow4(h) } else { BigInt::zero() };
        (q(left), q(right))
    });
    (format!("all alpha with 1 <= |alpha| <= {hi}"), cases)
}

fn app_f2(ch: &Checker) -> Outcome {
    let hi = ch.bound(10);
    let alphas = compositions_between(1, hi);
    let cases = ch.cases(&alphas, |a| format!("alpha=({a})"), |a| {
        let n = a.weight();
        let left: Rational = a
            .ribbon_cuts()
            .into_iter()
            .map(|cut| {
                let i = cut.index;
                let (hl, hr) = (i / 2, (n - i) / 2);
                let lm = cut.left.p_minus();
                let rm = cut.right.p_minus();
                over4(
                    sgn(lm + rm + i)
                        * ch.c(lm, hl as i64 - lm as i64)
                        * ch.c(rm, hr as i64 - rm as i64),
                    hl + hr,
                )
            })
            .sum();
        (left, Rational::zero())
    });
    (format!("all alpha with 1 <= |alpha| <= {hi}"), cases)
}

fn central_catalan_conv(ch: &Checker, total: u8) -> Outcome {
    let hi = ch.bound(12);
    let hs: Vec<usize> = (1..=hi).collect();
    let conv = |r: u8, s: u8, h: usize| -> Rational {
        (0..=h).map(|j| ch.central(r, j) * ch.central(s, h - j)).sum()
    };
    let cases = ch.cases(&hs, |h| format!("h={h}"), |&h| match total {
        6 => (conv(3, 3, h), conv(2, 1, h - 1) * q(2)),
        7 => (conv(3, 4, h), conv(2, 3, h) + conv(1, 1, h - 1)),
        _ => (conv(4, 4, h), conv(3, 1, h) * q(2)),
    });
    (format!("1 <= h <= {hi}"), cases)
}

// ---- permutation sums -----------------------------------------------------

/// Signed weights `(-1)^p C(p, h - p)` for `p = 0..=h`.
fn peak_weights(ch: &Checker, h: usize) -> Vec<BigInt> {
    (0..=h).map(|p| sgn(p) * ch.c(p, (h - p) as i64)).collect()
}

fn weighted(weights: &[BigInt], histogram: &[u64]) -> BigInt {
    histogram
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(p, &c)| weights.get(p).cloned().unwrap_or_default() * BigInt::from(c))
        .sum()
}

/// Histogram of a peak statistic over `S_n`, split into `n` lexicographic
/// blocks that run independently.
fn peak_histogram(ch: &Checker, n: usize, augmented: bool) -> Vec<u64> {
    let stat = |s: &Permutation| if augmented { s.p_plus() } else { s.p_minus() };
    let blocks = n.max(1);
    let block_len = factorial_u64(n.saturating_sub(1));
    let parts = ch.exec.map_range(0..blocks, |i| {
        let mut hist = vec![0u64; n + 1];
        let start = unrank(n, i as u64 * block_len);
        for s in permutations_from(start).take(block_len as usize) {
            hist[stat(&s)] += 1;
        }
        hist
    });
    parts.into_iter().fold(vec![0u64; n + 1], |mut acc, h| {
        for (a, b) in acc.iter_mut().zip(h) {
            *a += b;
        }
        acc
    })
}

fn allperms(ch: &Checker, augmented: bool) -> Outcome {
    let hi = ch.depth.permutation_bound();
    let ns: Vec<usize> = if augmented {
        (2..=hi).step_by(2).collect()
    } else {
        (0..=hi).collect()
    };
    // the blocks already run in parallel; keep the outer loop sequential
    let cases = ns
        .iter()
        .map(|&n| {
            let h = n / 2;
            let hist = peak_histogram(ch, n, augmented);
            let left = weighted(&peak_weights(ch, h), &hist);
            let right = if augmented { BigInt::zero() } else { pow4(h) };
            Case {
                params: format!("n={n}"),
                left: q(left),
                right: q(right),
            }
        })
        .collect();
    let domain = if augmented {
        format!("even 2 <= n <= {hi}, all of S_n")
    } else {
        format!("0 <= n <= {hi}, all of S_n")
    };
    (domain, cases)
}

fn shuffle_sum(ch: &Checker, augmented: bool) -> Outcome {
    let hi = ch.bound(10);
    let params: Vec<(usize, usize)> = (0..=hi)
        .flat_map(|n| (0..=hi - n).map(move |m| (n, m)))
        .filter(|&(n, m)| !augmented || (n + m) % 2 == 0)
        .collect();
    let cases = ch.cases(&params, |(n, m)| format!("n={n}, m={m}"), |&(n, m)| {
        let h = (n + m) / 2;
        let weights = peak_weights(ch, h);
        let mut hist = vec![0u64; n + m + 1];
        for s in shuffles(&Permutation::identity(n), &Permutation::identity(m)) {
            hist[if augmented { s.p_plus() } else { s.p_minus() }] += 1;
        }
        let left = weighted(&weights, &hist);
        let right = if augmented {
            if n % 2 == 0 {
                ch.b(n / 2) * ch.b(m / 2)
            } else {
                BigInt::zero()
            }
        } else {
            let base = ch.b(n / 2) * ch.b(m / 2);
            if n % 2 == 1 && m % 2 == 1 {
                base * 4
            } else {
                base
            }
        };
        (q(left), q(right))
    });
    let parity = if augmented { ", n = m mod 2" } else { "" };
    (format!("0 <= n + m <= {hi}{parity}"), cases)
}

// ---- inverse-character identities and the Gessel recursion ---------------

fn app_zetainv_m(ch: &Checker) -> Outcome {
    let hi = ch.bound(30);
    let ms: Vec<usize> = (1..=hi).collect();
    let cases = ch.cases(&ms, |m| format!("m={m}"), |&m| {
        let left: Rational = (0..m)
            .map(|j| q(pow2((2 * m - 2 * j - 1) as u64)) * ch.cat(j))
            .sum();
        (left, q(pow4(m) - ch.b(m)))
    });
    (format!("1 <= m <= {hi}"), cases)
}

fn app_zetainv_plus_m(ch: &Checker) -> Outcome {
    let hi = ch.bound(10);
    let betas: Vec<Composition> = (1..=hi / 2)
        .flat_map(|h| all_compositions(2 * h))
        .collect();
    let cases = ch.cases(&betas, |b| format!("beta=({b})"), |beta| {
        let kob = beta.k_odd();
        let left: Rational = beta
            .coarsenings()
            .iter()
            .filter(|a| first_odd(a) && last_odd(a))
            .map(|a| {
                let koa = a.k_odd();
                q(sgn(a.k_even()) * pow2((kob - koa + 1) as u64)) * ch.cat(koa / 2 - 1)
            })
            .sum();
        (left, q(pow2(kob as u64) - ch.b(kob / 2)))
    });
    (format!("all beta with |beta| even, 2 <= |beta| <= {hi}"), cases)
}

fn gessel_rec(ch: &Checker) -> Outcome {
    let hi = ch.bound(10);
    let params = grid3(hi);
    let cases = ch.cases(
        &params,
        |(a, b, c)| format!("a={a}, b={b}, c={c}"),
        |&(a, b, c)| {
            let sum: BigInt = (1..=c)
                .map(|j| pow4(c - j) * ch.c(b + 1, (a + j - 1) as i64))
                .sum();
            let right = pow4(c) * ch.c(b, a as i64) - sum;
            (q(ch.c(b, (a + c) as i64)), q(right))
        },
    );
    (format!("0 <= a, b, c <= {hi}"), cases)
}

fn gessel_special(ch: &Checker, catalan_form: bool) -> Outcome {
    let hi = ch.bound(10);
    let params: Vec<(usize, usize)> = (0..=hi)
        .flat_map(|b| (0..=hi).map(move |c| (b, c)))
        .collect();
    let shift = usize::from(catalan_form);
    let cases = ch.cases(&params, |(b, c)| format!("b={b}, c={c}"), |&(b, c)| {
        let left = if catalan_form {
            q(catalan(b as u64) * 2)
        } else {
            q(central_binomial(b as u64))
        };
        let right: Rational = over4(ch.c(b, (c + shift) as i64), c)
            + (1..=c)
                .map(|j| over4(ch.c(b + 1, (j - 1 + shift) as i64), j))
                .sum::<Rational>();
        (left, right)
    });
    (format!("0 <= b, c <= {hi}"), cases)
}

fn associator(ch: &Checker) -> Outcome {
    let hi = ch.bound(10);
    let params = grid3(hi);
    // H(x, y, z) = C(x, y+z) - C(y, x+z); z may be -1 when y, x >= 1
    let h = |x: usize, y: usize, z: i64| -> BigInt {
        ch.c(x, y as i64 + z) - ch.c(y, x as i64 + z)
    };
    let cases = ch.cases(
        &params,
        |(a, b, c)| format!("a={a}, b={b}, c={c}"),
        |&(a, b, c)| {
            let left = over4(h(a, b, c as i64), c);
            let right: Rational = (1..=c)
                .map(|j| over4(h(b + 1, a + 1, j as i64 - 2), j))
                .sum();
            (left, right)
        },
    );
    (format!("0 <= a, b, c <= {hi}"), cases)
}

fn power2(ch: &Checker) -> Outcome {
    let hi = ch.bound(40);
    let params: Vec<(usize, usize, bool)> = (1..=hi)
        .flat_map(|s| (0..=s).flat_map(move |p| [(p, s - p, false), (p, s - p, true)]))
        .collect();
    let cases = ch.cases(
        &params,
        |(p, qq, reduced)| {
            let form = if *reduced { "reduced denominator" } else { "valuation" };
            format!("p={p}, q={qq}, {form}")
        },
        |&(p, qq, reduced)| {
            let s = p + qq;
            let c = ch.c(p, qq as i64);
            if reduced {
                // C(p,q) / 4^s = N / 2^k, N odd, k = Σ_{i≥0} ⌊s / 2^i⌋
                let k: u64 = (0..64).map(|i| (s as u64) >> i).sum();
                let x = over4(c, s);
                let odd_numer = x.numer() % BigInt::from(2) != BigInt::zero();
                let left = if odd_numer {
                    q(x.denom().clone())
                } else {
                    Rational::zero()
                };
                (left, q(pow2(k)))
            } else {
                let v = two_adic_valuation(&c).map_or(-1, |v| v as i64);
                (q(v), q(binary_digit_sum(s as u64)))
            }
        },
    );
    (format!("0 < p + q <= {hi}, both formulations"), cases)
}

// ---- character formulas ---------------------------------------------------

fn zeta_power(ch: &Checker) -> Outcome {
    let hi = ch.bound(8);
    let zeta = ClosedFormCharacter::Zeta.restrict_with(hi, ch.exec);
    let powers: Vec<(i64, crate::characters::TruncatedCharacter)> = (-3..=3)
        .map(|m| (m, zeta.pow(m).expect("zeta is unital")))
        .collect();
    let alphas = compositions_between(0, hi);
    let mut params = Vec::new();
    for (i, _) in powers.iter().enumerate() {
        for basis in [Basis::M, Basis::F] {
            for a in &alphas {
                params.push((i, basis, a.clone()));
            }
        }
    }
    let cases = ch.cases(
        &params,
        |(i, basis, a)| format!("m={}, {basis}[{a}]", powers[*i].0),
        |(i, basis, a)| {
            let (m, table) = &powers[*i];
            let closed = ClosedFormCharacter::ZetaPower(*m);
            let left = match basis {
                Basis::M => table.value(a).expect("within truncation").clone(),
                Basis::F => table.eval_f(a).expect("within truncation"),
            };
            (left, closed.eval(*basis, a))
        },
    );
    (
        format!("-3 <= m <= 3, all alpha with |alpha| <= {hi}, M and F bases"),
        cases,
    )
}

#[derive(Debug, Clone, Copy)]
enum PeakForm {
    Reversal,
    Conjugate,
}

fn peak_rev_con(ch: &Checker) -> Outcome {
    let hi = ch.bound(10);
    let mut params = Vec::new();
    for a in compositions_between(1, hi) {
        params.push((a.clone(), PeakForm::Reversal));
        if a != Composition::single(1) {
            params.push((a, PeakForm::Conjugate));
        }
    }
    let cases = ch.cases(
        &params,
        |(a, form)| format!("alpha=({a}), {form:?}"),
        |(a, form)| {
            let first_one = a.first() == Some(1);
            let last_one = a.last() == Some(1);
            match form {
                PeakForm::Reversal => {
                    let p = a.p_minus() as i64;
                    let expected = match (first_one, last_one) {
                        (false, true) => p - 1,
                        (true, false) => p + 1,
                        _ => p,
                    };
                    (q(a.reversal().p_minus()), q(expected))
                }
                PeakForm::Conjugate => {
                    let p = a.p_plus() as i64;
                    let expected = match (first_one, last_one) {
                        (true, true) => p - 1,
                        (false, false) => p + 1,
                        _ => p,
                    };
                    (q(a.conjugate().p_plus()), q(expected))
                }
            }
        },
    );
    (
        format!("all alpha with 1 <= |alpha| <= {hi} (conjugate form skips alpha = (1))"),
        cases,
    )
}

fn half_binomial_forms(ch: &Checker) -> Outcome {
    use ClosedFormCharacter::*;
    let hi = ch.bound(9);
    let alphas = compositions_between(0, hi);
    let mut params = Vec::new();
    for c in [ZetaMinus, ZetaPlus, ZetaInvMinus, ZetaInvPlus] {
        for basis in [Basis::M, Basis::F] {
            for a in &alphas {
                params.push((c, basis, a.clone()));
            }
        }
    }
    let cases = ch.cases(
        &params,
        |(c, basis, a)| format!("{c} on {basis}[{a}]"),
        |(c, basis, a)| {
            let half = match basis {
                Basis::M => c.eval_m_half_binomial(a),
                Basis::F => c.eval_f_half_binomial(a),
            }
            .expect("defined for the even and odd parts");
            (c.eval(*basis, a), half)
        },
    );
    (
        format!("zeta-(inv-)plus/minus, all alpha with |alpha| <= {hi}, M and F bases"),
        cases,
    )
}

#[cfg(test)]
mod tests {
    use super::super::{verify, Depth, Status};
    use super::*;

    fn case(ch: &Checker, id: IdentityId, params: &str) -> Case {
        run(ch, id)
            .1
            .into_iter()
            .find(|c| c.params == params)
            .unwrap_or_else(|| panic!("no case {params} in {id}"))
    }

    #[test]
    fn worked_examples() {
        let ch = Checker::new(Depth::Standard);
        let c = case(&ch, IdentityId::ClassicalConv, "m=2");
        assert_eq!((c.left.clone(), c.right.clone()), (q(6), q(6)));
        let c = case(&ch, IdentityId::Cg6, "h=1");
        assert_eq!((c.left.clone(), c.right.clone()), (q(2), q(2)));
        let small = Checker::new(Depth::Small);
        let c = case(&small, IdentityId::AllpermsMinus, "n=3");
        assert_eq!((c.left.clone(), c.right.clone()), (q(4), q(4)));
        let c = case(&small, IdentityId::GesselRec, "a=0, b=0, c=1");
        assert_eq!((c.left.clone(), c.right.clone()), (q(2), q(2)));
    }

    #[test]
    fn every_identity_passes_small() {
        for &id in IdentityId::ALL {
            let r = verify(id, Depth::Small);
            assert_eq!(r.status, Status::Pass, "{r}");
            assert!(r.cases_run > 0, "{id} ran no cases");
        }
    }

    #[test]
    fn sequential_and_parallel_reports_agree() {
        let seq = Checker::new(Depth::Small).with_exec(crate::exec::Exec::Sequential);
        let par = Checker::new(Depth::Small).with_exec(crate::exec::Exec::Parallel);
        for id in [IdentityId::AllpermsMinus, IdentityId::AppF1, IdentityId::GesselRec] {
            assert_eq!(seq.verify(id), par.verify(id));
        }
    }
}
