//! Compositions of integers and the combinatorics built on them.
//!
//! A composition `(a_1, ..., a_k)` of `n` is identified with the subset of
//! partial sums `{a_1, a_1 + a_2, ...} ⊆ {1, ..., n-1}`, stored as a bitmask
//! (bit `s - 1` set for partial sum `s`). The mask gives O(1) refinement tests
//! and a dense index `0..2^(n-1)` used by character tables; enumeration order
//! is increasing mask.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest weight representable by the subset mask.
pub const MAX_MASK_WEIGHT: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Composition {
    parts: Vec<usize>,
}

/// Every statistic of a composition used by the character formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CompositionStats {
    pub weight: usize,
    /// Number of parts.
    pub k: usize,
    pub k_even: usize,
    pub k_odd: usize,
    /// Interior peak number: parts other than the last that exceed 1.
    pub p_minus: usize,
    /// Augmented peak number: `1 + #{interior parts > 1}` when `k > 1`, else 0.
    pub p_plus: usize,
    /// Parts other than the first that exceed 1.
    pub u: usize,
    /// Parts that exceed 1.
    pub v: usize,
    /// `sum floor(a_i / 2)`.
    pub floor_sum: usize,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if let Some(pos) = parts.iter().position(|&p| p == 0) {
            return Err(Error::InvalidComposition {
                input: format!("{parts:?}"),
                reason: format!("part {} is zero; parts must be positive", pos + 1),
            });
        }
        Ok(Composition { parts })
    }

    pub fn empty() -> Self {
        Composition { parts: Vec::new() }
    }

    /// The one-part composition `(n)`; empty when `n = 0`.
    pub fn single(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Composition { parts: vec![n] }
        }
    }

    /// `(1, 1, ..., 1)` with `n` parts.
    pub fn ones(n: usize) -> Self {
        Composition { parts: vec![1; n] }
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<usize>) -> Self {
        debug_assert!(parts.iter().all(|&p| p > 0));
        Composition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of parts `k(α)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn first(&self) -> Option<usize> {
        self.parts.first().copied()
    }

    pub fn last(&self) -> Option<usize> {
        self.parts.last().copied()
    }

    pub fn is_all_ones(&self) -> bool {
        self.parts.iter().all(|&p| p == 1)
    }

    pub fn k_even(&self) -> usize {
        self.parts.iter().filter(|&&p| p % 2 == 0).count()
    }

    pub fn k_odd(&self) -> usize {
        self.parts.iter().filter(|&&p| p % 2 == 1).count()
    }

    pub fn p_minus(&self) -> usize {
        let k = self.len();
        self.parts
            .iter()
            .take(k.saturating_sub(1))
            .filter(|&&p| p > 1)
            .count()
    }

    pub fn p_plus(&self) -> usize {
        let k = self.len();
        if k <= 1 {
            return 0;
        }
        1 + self.parts[1..k - 1].iter().filter(|&&p| p > 1).count()
    }

    pub fn u(&self) -> usize {
        self.parts.iter().skip(1).filter(|&&p| p > 1).count()
    }

    pub fn v(&self) -> usize {
        self.parts.iter().filter(|&&p| p > 1).count()
    }

    pub fn floor_sum(&self) -> usize {
        self.parts.iter().map(|p| p / 2).sum()
    }

    pub fn stats(&self) -> CompositionStats {
        CompositionStats {
            weight: self.weight(),
            k: self.len(),
            k_even: self.k_even(),
            k_odd: self.k_odd(),
            p_minus: self.p_minus(),
            p_plus: self.p_plus(),
            u: self.u(),
            v: self.v(),
            floor_sum: self.floor_sum(),
        }
    }

    /// Partial sums strictly between 0 and the weight.
    pub fn partial_sums(&self) -> Vec<usize> {
        let mut acc = 0;
        let k = self.len();
        self.parts
            .iter()
            .take(k.saturating_sub(1))
            .map(|p| {
                acc += p;
                acc
            })
            .collect()
    }

    /// Subset-of-partial-sums encoding.
    pub fn mask(&self) -> u64 {
        assert!(
            self.weight() <= MAX_MASK_WEIGHT,
            "composition weight exceeds mask capacity"
        );
        self.partial_sums()
            .into_iter()
            .fold(0u64, |m, s| m | (1u64 << (s - 1)))
    }

    /// Inverse of [`Composition::mask`] for a composition of `n`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        if n == 0 {
            return Self::empty();
        }
        assert!(n <= MAX_MASK_WEIGHT);
        debug_assert!(n == 64 || mask >> (n - 1) == 0, "mask has bits beyond n-1");
        let mut parts = Vec::with_capacity(mask.count_ones() as usize + 1);
        let mut prev = 0;
        for s in 1..n {
            if mask & (1u64 << (s - 1)) != 0 {
                parts.push(s - prev);
                prev = s;
            }
        }
        parts.push(n - prev);
        Composition { parts }
    }

    /// True when `self` refines `coarser`: same weight and the partial sums of
    /// `coarser` are among those of `self`.
    pub fn refines(&self, coarser: &Composition) -> bool {
        self.weight() == coarser.weight() && coarser.mask() & !self.mask() == 0
    }

    /// All compositions refining `self` (including itself), increasing mask order.
    pub fn refinements(&self) -> Vec<Composition> {
        let n = self.weight();
        if n == 0 {
            return vec![Self::empty()];
        }
        let base = self.mask();
        let free = full_mask(n) & !base;
        let mut out: Vec<Composition> = subsets_of(free)
            .map(|s| Composition::from_mask(n, base | s))
            .collect();
        out.sort_by_key(Composition::mask);
        out
    }

    /// All compositions that `self` refines (including itself), increasing mask order.
    pub fn coarsenings(&self) -> Vec<Composition> {
        let n = self.weight();
        if n == 0 {
            return vec![Self::empty()];
        }
        let mut out: Vec<Composition> = subsets_of(self.mask())
            .map(|s| Composition::from_mask(n, s))
            .collect();
        out.sort_by_key(Composition::mask);
        out
    }

    pub fn reversal(&self) -> Composition {
        let mut parts = self.parts.clone();
        parts.reverse();
        Composition { parts }
    }

    /// Ribbon reflected across `y = x`: the partial-sum set is the complement
    /// of the reversed partial-sum set.
    pub fn conjugate(&self) -> Composition {
        let n = self.weight();
        if n == 0 {
            return Self::empty();
        }
        let reversed = self.reversal().mask();
        Composition::from_mask(n, full_mask(n) & !reversed)
    }

    /// `(α_i, α^i)`: the first `i` parts and the remaining ones.
    pub fn deconcatenate(&self, i: usize) -> Result<(Composition, Composition)> {
        if i > self.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: self.len(),
            });
        }
        Ok((
            Composition::from_parts_unchecked(self.parts[..i].to_vec()),
            Composition::from_parts_unchecked(self.parts[i..].to_vec()),
        ))
    }

    pub fn concat(&self, other: &Composition) -> Composition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Composition { parts }
    }

    /// Cut the ribbon along edge `i` (`0..=n`), numbering edges between
    /// consecutive squares from the start of the ribbon.
    pub fn ribbon_cut(&self, i: usize) -> Result<CutPair> {
        let n = self.weight();
        if i > n {
            return Err(Error::IndexOutOfRange { index: i, max: n });
        }
        let mut acc = 0;
        for (j, &a) in self.parts.iter().enumerate() {
            if i == acc {
                break;
            }
            if i < acc + a {
                // inside row j
                let mut left = self.parts[..j].to_vec();
                left.push(i - acc);
                let mut right = vec![acc + a - i];
                right.extend_from_slice(&self.parts[j + 1..]);
                return Ok(CutPair {
                    index: i,
                    left: Composition::from_parts_unchecked(left),
                    right: Composition::from_parts_unchecked(right),
                });
            }
            acc += a;
        }
        // i is 0, n, or a row boundary
        let split = self
            .parts
            .iter()
            .scan(0, |s, &a| {
                *s += a;
                Some(*s)
            })
            .position(|s| s == i)
            .map_or(0, |p| p + 1);
        let (left, right) = self.deconcatenate(split)?;
        Ok(CutPair {
            index: i,
            left,
            right,
        })
    }

    /// All `n + 1` ribbon cuts.
    pub fn ribbon_cuts(&self) -> Vec<CutPair> {
        (0..=self.weight())
            .map(|i| self.ribbon_cut(i).expect("index within 0..=n"))
            .collect()
    }
}

impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("()");
        }
        let s: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        f.write_str(&s.join(","))
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// Accepts `"2,1,3"`, optionally wrapped in `()` or `[]`; `"()"` or `""`
    /// is the empty composition.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let inner = trimmed
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .or_else(|| trimmed.strip_prefix('[').and_then(|t| t.strip_suffix(']')))
            .unwrap_or(trimmed)
            .trim();
        if inner.is_empty() {
            return Ok(Self::empty());
        }
        let mut parts = Vec::new();
        for (pos, tok) in inner.split(',').enumerate() {
            let tok = tok.trim();
            let value: i64 = tok.parse().map_err(|_| Error::InvalidComposition {
                input: s.to_string(),
                reason: format!("part {} (`{tok}`) is not an integer", pos + 1),
            })?;
            if value <= 0 {
                return Err(Error::InvalidComposition {
                    input: s.to_string(),
                    reason: format!(
                        "part {} is {value}; parts must be positive integers",
                        pos + 1
                    ),
                });
            }
            parts.push(value as usize);
        }
        Ok(Composition { parts })
    }
}

impl TryFrom<Vec<usize>> for Composition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Composition::new(parts)
    }
}

/// `{1, ..., n-1}` as a mask.
pub fn full_mask(n: usize) -> u64 {
    match n {
        0 | 1 => 0,
        65.. => panic!("weight exceeds mask capacity"),
        _ => u64::MAX >> (65 - n),
    }
}

/// Number of compositions of `n`.
pub fn composition_count(n: usize) -> usize {
    if n == 0 {
        1
    } else {
        1usize << (n - 1)
    }
}

fn subsets_of(set: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(set);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & set) };
        Some(cur)
    })
}

/// Every composition of `n`, in increasing mask order.
pub fn all_compositions(n: usize) -> Vec<Composition> {
    (0..composition_count(n) as u64)
        .map(|m| Composition::from_mask(n, m))
        .collect()
}

/// Every composition of every weight `0..=n`, grouped by weight.
pub fn compositions_up_to(n: usize) -> Vec<Composition> {
    (0..=n).flat_map(all_compositions).collect()
}

/// One cut of a ribbon: `left` has weight `index`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutPair {
    pub index: usize,
    pub left: Composition,
    pub right: Composition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    Horizontal,
    Vertical,
    Diagonal,
}

/// A Delannoy path: unit horizontal, vertical and diagonal steps from the origin.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePath {
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn new(steps: Vec<Step>) -> Self {
        LatticePath { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn endpoint(&self) -> (usize, usize) {
        self.steps.iter().fold((0, 0), |(p, q), s| match s {
            Step::Horizontal => (p + 1, q),
            Step::Vertical => (p, q + 1),
            Step::Diagonal => (p + 1, q + 1),
        })
    }

    pub fn diagonals(&self) -> usize {
        self.steps.iter().filter(|&&s| s == Step::Diagonal).count()
    }
}

/// All Delannoy paths from `(0,0)` to `(p,q)`.
pub fn delannoy_paths(p: usize, q: usize) -> Vec<LatticePath> {
    fn walk(p: usize, q: usize, prefix: &mut Vec<Step>, out: &mut Vec<LatticePath>) {
        if p == 0 && q == 0 {
            out.push(LatticePath::new(prefix.clone()));
            return;
        }
        if p > 0 {
            prefix.push(Step::Horizontal);
            walk(p - 1, q, prefix, out);
            prefix.pop();
        }
        if q > 0 {
            prefix.push(Step::Vertical);
            walk(p, q - 1, prefix, out);
            prefix.pop();
        }
        if p > 0 && q > 0 {
            prefix.push(Step::Diagonal);
            walk(p - 1, q - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    walk(p, q, &mut Vec::with_capacity(p + q), &mut out);
    out
}

/// Read the labels of `alpha` (horizontal) and `beta` (vertical) along `path`;
/// a diagonal step emits the sum of the two labels it consumes.
pub fn quasi_shuffle(
    alpha: &Composition,
    beta: &Composition,
    path: &LatticePath,
) -> Result<Composition> {
    let (pp, pq) = path.endpoint();
    if (pp, pq) != (alpha.len(), beta.len()) {
        return Err(Error::PathMismatch {
            path_p: pp,
            path_q: pq,
            p: alpha.len(),
            q: beta.len(),
        });
    }
    let (mut i, mut j) = (0, 0);
    let parts = path
        .steps()
        .iter()
        .map(|s| match s {
            Step::Horizontal => {
                i += 1;
                alpha.parts[i - 1]
            }
            Step::Vertical => {
                j += 1;
                beta.parts[j - 1]
            }
            Step::Diagonal => {
                i += 1;
                j += 1;
                alpha.parts[i - 1] + beta.parts[j - 1]
            }
        })
        .collect();
    Ok(Composition::from_parts_unchecked(parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{multinomial, BigInt};
    use proptest::prelude::*;

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    #[test]
    fn stats_examples() {
        let s = c("1,3,1,2,2").stats();
        assert_eq!((s.p_minus, s.p_plus), (2, 3));
        assert_eq!(c("5").p_plus(), 0);
        let s = c("2,2").stats();
        assert_eq!((s.k_even, s.k_odd, s.p_minus, s.u, s.v), (2, 0, 1, 1, 2));
        assert_eq!(Composition::empty().stats(), CompositionStats::default());
        assert_eq!(c("3,2,5").floor_sum(), 4);
    }

    #[test]
    fn enumeration() {
        assert_eq!(all_compositions(0), vec![Composition::empty()]);
        let three = all_compositions(3);
        assert_eq!(three, vec![c("3"), c("1,2"), c("2,1"), c("1,1,1")]);
        assert_eq!(all_compositions(5).len(), 16);
        for n in 1..=8 {
            for (m, comp) in all_compositions(n).iter().enumerate() {
                assert_eq!(comp.weight(), n);
                assert_eq!(comp.mask(), m as u64);
            }
        }
    }

    #[test]
    fn refinement_examples() {
        assert!(c("1,1,1").refines(&c("3")));
        assert!(!c("3").refines(&c("1,1,1")));
        assert!(!c("1,1").refines(&c("3")));
        assert_eq!(c("2,1").refinements(), vec![c("2,1"), c("1,1,1")]);
        assert_eq!(c("1,1,1").refinements(), vec![c("1,1,1")]);
        assert_eq!(c("1,2").coarsenings(), vec![c("3"), c("1,2")]);
    }

    #[test]
    fn refinement_is_partial_order() {
        for n in 0..=6 {
            let all = all_compositions(n);
            for a in &all {
                assert!(a.refines(a));
                for b in &all {
                    if a.refines(b) && b.refines(a) {
                        assert_eq!(a, b);
                    }
                    for x in &all {
                        if a.refines(b) && b.refines(x) {
                            assert!(a.refines(x));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn reversal_and_conjugate_examples() {
        assert_eq!(c("2,3,1,2,2").conjugate(), c("1,2,3,1,2,1"));
        assert_eq!(c("1,1").conjugate(), c("2"));
        assert_eq!(c("1,3,2").reversal(), c("2,3,1"));
        assert_eq!(Composition::empty().conjugate(), Composition::empty());
    }

    #[test]
    fn deconcatenate_examples() {
        let a = c("2,1,3");
        assert_eq!(a.deconcatenate(1).unwrap(), (c("2"), c("1,3")));
        assert_eq!(a.deconcatenate(0).unwrap(), (c("()"), c("2,1,3")));
        assert_eq!(a.deconcatenate(3).unwrap(), (c("2,1,3"), c("()")));
        assert!(a.deconcatenate(4).is_err());
    }

    #[test]
    fn quasi_shuffle_examples() {
        use Step::*;
        let alpha = c("1,2,3,4,5");
        let beta = c("10,20,30,40");
        // H V D H D V H
        let path = LatticePath::new(vec![
            Horizontal, Vertical, Diagonal, Horizontal, Diagonal, Vertical, Horizontal,
        ]);
        let q = quasi_shuffle(&alpha, &beta, &path).unwrap();
        // (a1, b1, a2+b2, a3, a4+b3, b4, a5)
        assert_eq!(q, c("1,10,22,3,34,40,5"));

        let one = c("1");
        let hv = LatticePath::new(vec![Horizontal, Vertical]);
        assert_eq!(quasi_shuffle(&one, &one, &hv).unwrap(), c("1,1"));
        let d = LatticePath::new(vec![Diagonal]);
        assert_eq!(quasi_shuffle(&one, &one, &d).unwrap(), c("2"));
        assert!(quasi_shuffle(&one, &c("1,1"), &d).is_err());

        assert_eq!(delannoy_paths(1, 1).len(), 3);
        let d1 = delannoy_paths(2, 2)
            .into_iter()
            .filter(|p| p.diagonals() == 1)
            .count();
        assert_eq!(BigInt::from(d1), multinomial(&[1, 1, 1]));
    }

    #[test]
    fn path_census() {
        for p in 0..=6usize {
            for q in 0..=6usize {
                let paths = delannoy_paths(p, q);
                for path in &paths {
                    assert_eq!(path.endpoint(), (p, q));
                }
                for d in 0..=p.min(q) {
                    let count = paths.iter().filter(|l| l.diagonals() == d).count();
                    assert_eq!(
                        BigInt::from(count),
                        multinomial(&[(p - d) as u64, (q - d) as u64, d as u64])
                    );
                }
            }
        }
    }

    #[test]
    fn ribbon_cut_examples() {
        let cuts = c("2").ribbon_cuts();
        let pairs: Vec<_> = cuts.iter().map(|p| (p.left.clone(), p.right.clone())).collect();
        assert_eq!(
            pairs,
            vec![(c("()"), c("2")), (c("1"), c("1")), (c("2"), c("()"))]
        );
        let mid = c("1,1").ribbon_cut(1).unwrap();
        assert_eq!((mid.left, mid.right), (c("1"), c("1")));
        for a in compositions_up_to(6) {
            assert_eq!(a.ribbon_cuts().len(), a.weight() + 1);
        }
        // edge 4 of (2,3,1,2,2) falls inside the second row
        let cut = c("2,3,1,2,2").ribbon_cut(4).unwrap();
        assert_eq!((cut.left, cut.right), (c("2,2"), c("1,1,2,2")));
        let cut = c("2,3,1,2,2").ribbon_cut(5).unwrap();
        assert_eq!((cut.left, cut.right), (c("2,3"), c("1,2,2")));
    }

    /// Squares of the ribbon as (row, column) cells; a cut splits this sequence.
    fn squares(a: &Composition) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut col = 0;
        for (row, &p) in a.parts().iter().enumerate() {
            for j in 0..p {
                out.push((row, col + j));
            }
            col += p - 1;
        }
        out
    }

    #[test]
    fn cut_compatibility() {
        for n in 0..=10 {
            for a in all_compositions(n) {
                let sq = squares(&a);
                for cut in a.ribbon_cuts() {
                    assert_eq!(cut.left.weight(), cut.index);
                    assert_eq!(cut.left.weight() + cut.right.weight(), n);
                    // the two pieces are the ribbon shapes of the square runs
                    let (l, r) = sq.split_at(cut.index);
                    assert_eq!(shape_of(l), cut.left, "{a} at {}", cut.index);
                    assert_eq!(shape_of(r), cut.right, "{a} at {}", cut.index);
                }
            }
        }
    }

    fn shape_of(cells: &[(usize, usize)]) -> Composition {
        let mut parts: Vec<usize> = Vec::new();
        let mut prev_row = None;
        for &(row, _) in cells {
            if prev_row == Some(row) {
                *parts.last_mut().unwrap() += 1;
            } else {
                parts.push(1);
            }
            prev_row = Some(row);
        }
        Composition::new(parts).unwrap()
    }

    #[test]
    fn odd_parts_parity() {
        for a in compositions_up_to(12) {
            assert_eq!(a.k_odd() % 2, a.weight() % 2);
        }
    }

    #[test]
    fn involutions_and_peak_symmetries() {
        for a in compositions_up_to(10) {
            assert_eq!(a.reversal().reversal(), a);
            assert_eq!(a.conjugate().conjugate(), a);
            assert_eq!(a.conjugate().p_minus(), a.p_minus());
            assert_eq!(a.reversal().p_plus(), a.p_plus());
        }
    }

    #[test]
    fn parse_errors() {
        assert!("2,0,1".parse::<Composition>().is_err());
        assert!("2,-1".parse::<Composition>().is_err());
        assert!("a".parse::<Composition>().is_err());
        assert_eq!(c("()"), Composition::empty());
        assert_eq!(c("[2, 1]"), c("2,1"));
        let err = "3,0".parse::<Composition>().unwrap_err().to_string();
        assert!(err.contains("positive"), "{err}");
    }

    proptest! {
        #[test]
        fn mask_round_trip(n in 1usize..20, seed in any::<u64>()) {
            let mask = seed & full_mask(n);
            let comp = Composition::from_mask(n, mask);
            prop_assert_eq!(comp.weight(), n);
            prop_assert_eq!(comp.mask(), mask);
            let reparsed: Composition = comp.to_string().parse().unwrap();
            prop_assert_eq!(reparsed, comp);
        }
    }
}
