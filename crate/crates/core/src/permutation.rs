//! Permutations in one-line notation, descent and peak statistics, and the
//! shuffle product of the Hopf algebra of permutations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::exactnum::Rational;

/// Default largest `n` accepted by [`all_permutations`].
pub const DEFAULT_PERMUTATION_BOUND: usize = 9;

/// A permutation of `{1, ..., n}` stored as its one-line word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Permutation {
    word: Vec<usize>,
}

impl Permutation {
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for (pos, &v) in word.iter().enumerate() {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation {
                    input: format!("{word:?}"),
                    reason: format!("entry {v} at position {} is outside 1..={n}", pos + 1),
                });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidPermutation {
                    input: format!("{word:?}"),
                    reason: format!("entry {v} appears more than once"),
                });
            }
        }
        Ok(Permutation { word })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (1..=n).collect(),
        }
    }

    pub fn reverse_identity(n: usize) -> Self {
        Permutation {
            word: (1..=n).rev().collect(),
        }
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// `Des(σ) = {i : σ(i) > σ(i+1)}`, 1-based.
    pub fn descent_set(&self) -> BTreeSet<usize> {
        self.word
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// The composition of `n` whose partial sums are the descents.
    pub fn descent_composition(&self) -> Composition {
        let n = self.len();
        let mask = self
            .descent_set()
            .into_iter()
            .fold(0u64, |m, d| m | (1u64 << (d - 1)));
        Composition::from_mask(n, mask)
    }

    /// `(PeakInt, PeakAug)`; the augmented set uses `σ(0) = 0`.
    pub fn peak_sets(&self) -> (BTreeSet<usize>, BTreeSet<usize>) {
        let n = self.len();
        let at = |i: usize| if i == 0 { 0 } else { self.word[i - 1] };
        let aug: BTreeSet<usize> = (1..n)
            .filter(|&i| at(i - 1) < at(i) && at(i) > at(i + 1))
            .collect();
        let int = aug.iter().copied().filter(|&i| i != 1).collect();
        (int, aug)
    }

    /// `|PeakInt(σ)|`.
    pub fn p_minus(&self) -> usize {
        self.word
            .windows(3)
            .filter(|w| w[0] < w[1] && w[1] > w[2])
            .count()
    }

    /// `|PeakAug(σ)|`.
    pub fn p_plus(&self) -> usize {
        let first = self.word.len() >= 2 && self.word[0] > self.word[1];
        self.p_minus() + usize::from(first)
    }
}

impl fmt::Display for Permutation {
    /// Digits run together for `n ≤ 9`; otherwise comma separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("()");
        }
        let sep = if self.len() <= 9 { "" } else { "," };
        let s: Vec<String> = self.word.iter().map(usize::to_string).collect();
        f.write_str(&s.join(sep))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// `"312546"`, `"3,1,2,5,4,6"` (required when `n > 9`), or `"()"`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .or_else(|| t.strip_prefix('[').and_then(|x| x.strip_suffix(']')))
            .unwrap_or(t)
            .trim();
        if t.is_empty() {
            return Ok(Permutation::default());
        }
        let bad = |reason: String| Error::InvalidPermutation {
            input: s.to_string(),
            reason,
        };
        let word: Vec<usize> = if t.contains(',') {
            t.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| bad(format!("`{}` is not a positive integer", x.trim())))
                })
                .collect::<Result<_>>()?
        } else {
            t.chars()
                .map(|ch| {
                    ch.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| bad(format!("`{ch}` is not a digit")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(word).map_err(|e| match e {
            Error::InvalidPermutation { reason, .. } => bad(reason),
            other => other,
        })
    }
}

/// All interleavings of `σ` with `τ` shifted up by `|σ|`.
pub fn shuffles(sigma: &Permutation, tau: &Permutation) -> Vec<Permutation> {
    let n = sigma.len();
    let shifted: Vec<usize> = tau.word.iter().map(|&v| v + n).collect();
    let mut out = Vec::new();
    let mut buf = Vec::with_capacity(n + shifted.len());
    fn rec(a: &[usize], b: &[usize], buf: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        if a.is_empty() && b.is_empty() {
            out.push(Permutation { word: buf.clone() });
            return;
        }
        if let Some((&x, rest)) = a.split_first() {
            buf.push(x);
            rec(rest, b, buf, out);
            buf.pop();
        }
        if let Some((&y, rest)) = b.split_first() {
            buf.push(y);
            rec(a, rest, buf, out);
            buf.pop();
        }
    }
    rec(&sigma.word, &shifted, &mut buf, &mut out);
    out
}

/// A finite linear combination of the basis `{F_σ}`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SSymElement {
    terms: BTreeMap<Permutation, Rational>,
}

impl SSymElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::basis(Permutation::default())
    }

    pub fn basis(sigma: Permutation) -> Self {
        Self::term(sigma, Rational::from_integer(1.into()))
    }

    pub fn term(sigma: Permutation, coeff: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(sigma, coeff);
        e
    }

    pub fn terms(&self) -> &BTreeMap<Permutation, Rational> {
        &self.terms
    }

    pub fn coeff(&self, sigma: &Permutation) -> Rational {
        self.terms.get(sigma).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, sigma: Permutation, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(sigma).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &SSymElement) -> SSymElement {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), c.clone());
        }
        out
    }

    pub fn multiply(&self, other: &SSymElement) -> SSymElement {
        multiply_ssym(self, other)
    }
}

/// Bilinear extension of `F_σ · F_τ = Σ_{ρ ∈ shuffles(σ, τ)} F_ρ`.
pub fn multiply_ssym(x: &SSymElement, y: &SSymElement) -> SSymElement {
    let mut out = SSymElement::zero();
    for (s, a) in &x.terms {
        for (t, b) in &y.terms {
            let c = a * b;
            for rho in shuffles(s, t) {
                out.add_term(rho, c.clone());
            }
        }
    }
    out
}

/// Every permutation of `n` in lexicographic order; `n` must not exceed
/// [`DEFAULT_PERMUTATION_BOUND`].
pub fn all_permutations(n: usize) -> Result<Lexicographic> {
    all_permutations_bounded(n, DEFAULT_PERMUTATION_BOUND)
}

pub fn all_permutations_bounded(n: usize, bound: usize) -> Result<Lexicographic> {
    if n > bound {
        return Err(Error::PermutationBound { n, bound });
    }
    Ok(Lexicographic {
        next: Some((1..=n).collect()),
    })
}

/// Lexicographic iteration from `start` to the last permutation of its length.
pub fn permutations_from(start: Permutation) -> Lexicographic {
    Lexicographic {
        next: Some(start.word),
    }
}

/// Lexicographic iterator over `S_n`.
#[derive(Debug, Clone)]
pub struct Lexicographic {
    next: Option<Vec<usize>>,
}

impl Iterator for Lexicographic {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.next.take()?;
        let mut w = cur.clone();
        if let Some(i) = (1..w.len()).rev().find(|&i| w[i - 1] < w[i]) {
            let j = (i..w.len()).rev().find(|&j| w[j] > w[i - 1]).unwrap();
            w.swap(i - 1, j);
            w[i..].reverse();
            self.next = Some(w);
        }
        Some(Permutation { word: cur })
    }
}

/// The `index`-th permutation of `n` in lexicographic order, for splitting
/// `S_n` into independent chunks.
pub fn unrank(n: usize, mut index: u64) -> Permutation {
    let mut pool: Vec<usize> = (1..=n).collect();
    let mut fact: Vec<u64> = vec![1; n + 1];
    for i in 1..=n {
        fact[i] = fact[i - 1] * i as u64;
    }
    assert!(index < fact[n], "rank out of range");
    let mut word = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let q = (index / fact[i]) as usize;
        index %= fact[i];
        word.push(pool.remove(q));
    }
    Permutation { word }
}

pub fn factorial_u64(n: usize) -> u64 {
    (1..=n as u64).product()
}
