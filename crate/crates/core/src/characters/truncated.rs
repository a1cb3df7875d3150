use num_traits::{One, Zero};

use crate::composition::{all_compositions, composition_count, full_mask, Composition};
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::exec::Exec;
use crate::qsym::{Basis, QSymElement};

/// Largest truncation degree accepted; tables grow as `2^(n-1)`.
pub const MAX_TRUNCATION: usize = 24;

/// A character of QSym known on `M_α` for every `|α| ≤ max_degree`.
///
/// `tables[n][mask]` holds the value on the composition of `n` with that
/// partial-sum mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedCharacter {
    tables: Vec<Vec<Rational>>,
}

/// Offsets where `M_α` deconcatenates: 0, each partial sum, and `n`.
fn cut_points(n: usize, mask: u64) -> impl Iterator<Item = usize> {
    let inner = (1..n).filter(move |s| mask & (1u64 << (s - 1)) != 0);
    std::iter::once(0)
        .chain(inner)
        .chain((n > 0).then_some(n))
}

/// Mask of the first `s` units of a composition.
fn prefix(mask: u64, s: usize) -> u64 {
    if s <= 1 {
        0
    } else {
        mask & full_mask(s)
    }
}

fn suffix(mask: u64, s: usize) -> u64 {
    if s >= 64 {
        0
    } else {
        mask >> s
    }
}

impl TruncatedCharacter {
    pub fn from_fn(max_degree: usize, f: impl Fn(&Composition) -> Rational + Sync) -> Self {
        Self::from_fn_with(max_degree, Exec::default(), f)
    }

    pub fn from_fn_with(
        max_degree: usize,
        exec: Exec,
        f: impl Fn(&Composition) -> Rational + Sync,
    ) -> Self {
        assert!(max_degree <= MAX_TRUNCATION, "truncation degree too large");
        let tables = (0..=max_degree)
            .map(|n| {
                exec.map_range(0..composition_count(n), |m| {
                    f(&Composition::from_mask(n, m as u64))
                })
            })
            .collect();
        TruncatedCharacter { tables }
    }

    /// The unit `ε` of the convolution group.
    pub fn counit(max_degree: usize) -> Self {
        Self::from_fn(max_degree, |a| {
            if a.is_empty() {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn max_degree(&self) -> usize {
        self.tables.len() - 1
    }

    /// Values of degree `n`, indexed by partial-sum mask.
    pub fn degree_table(&self, n: usize) -> &[Rational] {
        &self.tables[n]
    }

    pub fn at(&self, n: usize, mask: u64) -> &Rational {
        &self.tables[n][mask as usize]
    }

    pub fn value(&self, alpha: &Composition) -> Result<&Rational> {
        let n = alpha.weight();
        if n > self.max_degree() {
            return Err(Error::IndexOutOfRange {
                index: n,
                max: self.max_degree(),
            });
        }
        Ok(self.at(n, alpha.mask()))
    }

    /// Value on `F_α = Σ_{β refines α} M_β`.
    pub fn eval_f(&self, alpha: &Composition) -> Result<Rational> {
        alpha
            .refinements()
            .iter()
            .map(|b| self.value(b).cloned())
            .sum()
    }

    pub fn eval_element(&self, x: &QSymElement) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (a, c) in x.terms() {
            let v = match x.basis() {
                Basis::M => self.value(a)?.clone(),
                Basis::F => self.eval_f(a)?,
            };
            acc += c * v;
        }
        Ok(acc)
    }

    /// Lower the truncation degree.
    pub fn truncate(&self, max_degree: usize) -> Self {
        TruncatedCharacter {
            tables: self.tables[..=max_degree.min(self.max_degree())].to_vec(),
        }
    }

    /// First composition (by degree, then mask) where the two differ.
    pub fn first_difference(
        &self,
        other: &TruncatedCharacter,
    ) -> Option<(Composition, Rational, Rational)> {
        let top = self.max_degree().min(other.max_degree());
        (0..=top).find_map(|n| {
            self.tables[n]
                .iter()
                .zip(&other.tables[n])
                .position(|(a, b)| a != b)
                .map(|m| {
                    (
                        Composition::from_mask(n, m as u64),
                        self.tables[n][m].clone(),
                        other.tables[n][m].clone(),
                    )
                })
        })
    }

    fn check_degree(&self, other: &TruncatedCharacter) -> Result<()> {
        if self.max_degree() != other.max_degree() {
            return Err(Error::DegreeMismatch {
                left: self.max_degree(),
                right: other.max_degree(),
            });
        }
        Ok(())
    }

    fn check_unital(&self) -> Result<()> {
        if !self.tables[0][0].is_one() {
            return Err(Error::NotUnital(crate::exactnum::render(&self.tables[0][0])));
        }
        Ok(())
    }

    /// `(φψ)(M_α) = Σ_i φ(M_{α_i}) ψ(M_{α^i})`.
    pub fn convolve(&self, other: &TruncatedCharacter) -> Result<TruncatedCharacter> {
        self.convolve_with(other, Exec::default())
    }

    pub fn convolve_with(
        &self,
        other: &TruncatedCharacter,
        exec: Exec,
    ) -> Result<TruncatedCharacter> {
        self.check_degree(other)?;
        let tables = (0..=self.max_degree())
            .map(|n| {
                exec.map_range(0..composition_count(n), |m| {
                    let mask = m as u64;
                    cut_points(n, mask)
                        .map(|s| {
                            self.at(s, prefix(mask, s)) * other.at(n - s, suffix(mask, s))
                        })
                        .sum()
                })
            })
            .collect();
        Ok(TruncatedCharacter { tables })
    }

    /// Group inverse by `(φ⁻¹)_n = -Σ_{i=1}^n φ_i (φ⁻¹)_{n-i}`.
    pub fn inverse(&self) -> Result<TruncatedCharacter> {
        self.inverse_with(Exec::default())
    }

    pub fn inverse_with(&self, exec: Exec) -> Result<TruncatedCharacter> {
        self.check_unital()?;
        let mut tables: Vec<Vec<Rational>> = vec![vec![Rational::one()]];
        for n in 1..=self.max_degree() {
            let row = exec.map_range(0..composition_count(n), |m| {
                let mask = m as u64;
                let s: Rational = cut_points(n, mask)
                    .filter(|&s| s >= 1)
                    .map(|s| self.at(s, prefix(mask, s)) * &tables[n - s][suffix(mask, s) as usize])
                    .sum();
                -s
            });
            tables.push(row);
        }
        Ok(TruncatedCharacter { tables })
    }

    /// `φ̄`: degree-`n` values times `(-1)^n`.
    pub fn bar(&self) -> TruncatedCharacter {
        let tables = self
            .tables
            .iter()
            .enumerate()
            .map(|(n, row)| {
                if n % 2 == 0 {
                    row.clone()
                } else {
                    row.iter().map(|v| -v).collect()
                }
            })
            .collect();
        TruncatedCharacter { tables }
    }

    /// Unique factorisation `φ = φ₊ φ₋` with `φ₊` even and `φ₋` odd.
    pub fn decompose(&self) -> Result<(TruncatedCharacter, TruncatedCharacter)> {
        self.decompose_with(Exec::default())
    }

    pub fn decompose_with(
        &self,
        exec: Exec,
    ) -> Result<(TruncatedCharacter, TruncatedCharacter)> {
        self.check_unital()?;
        let inv = self.inverse_with(exec)?;
        let half = Rational::new(1.into(), 2.into());
        let mut plus: Vec<Vec<Rational>> = vec![vec![Rational::one()]];
        let mut minus: Vec<Vec<Rational>> = vec![vec![Rational::one()]];
        for n in 1..=self.max_degree() {
            // (-1)^n φ_n = 2 (φ₊)_n + (φ⁻¹)_n + Σ_{i+j+k=n; i,j,k<n} (φ₊)_i (φ⁻¹)_j (φ₊)_k
            let plus_row = exec.map_range(0..composition_count(n), |m| {
                let mask = m as u64;
                let mut rest = Rational::zero();
                let cuts: Vec<usize> = cut_points(n, mask).collect();
                for (a, &s1) in cuts.iter().enumerate() {
                    for &s2 in &cuts[a..] {
                        if s1 == n || s2 - s1 == n || s2 == 0 {
                            continue;
                        }
                        let head = &plus[s1][prefix(mask, s1) as usize];
                        let mid_mask = prefix(suffix(mask, s1), s2 - s1);
                        let mid = inv.at(s2 - s1, mid_mask);
                        let tail = &plus[n - s2][suffix(mask, s2) as usize];
                        rest += head * mid * tail;
                    }
                }
                let phi = self.at(n, mask);
                let signed = if n % 2 == 0 { phi.clone() } else { -phi };
                (signed - inv.at(n, mask) - rest) * &half
            });
            plus.push(plus_row);
            // (φ₋)_n = φ_n - Σ_{i=1}^n (φ₊)_i (φ₋)_{n-i}
            let minus_row = exec.map_range(0..composition_count(n), |m| {
                let mask = m as u64;
                let s: Rational = cut_points(n, mask)
                    .filter(|&s| s >= 1)
                    .map(|s| {
                        &plus[s][prefix(mask, s) as usize]
                            * &minus[n - s][suffix(mask, s) as usize]
                    })
                    .sum();
                self.at(n, mask) - s
            });
            minus.push(minus_row);
        }
        Ok((
            TruncatedCharacter { tables: plus },
            TruncatedCharacter { tables: minus },
        ))
    }

    /// `φ ∘ S`, through `S(M_β) = (-1)^{k(β)} Σ_{α coarsens rev β} M_α`.
    pub fn compose_antipode(&self) -> TruncatedCharacter {
        self.compose_antipode_with(Exec::default())
    }

    pub fn compose_antipode_with(&self, exec: Exec) -> TruncatedCharacter {
        self.pullback(exec, |beta| {
            let total: Rational = beta
                .reversal()
                .coarsenings()
                .iter()
                .map(|a| self.at(a.weight(), a.mask()))
                .sum();
            if beta.len() % 2 == 0 {
                total
            } else {
                -total
            }
        })
    }

    /// `φ ∘ T`, with `T(M_α) = M_{rev α}`.
    pub fn compose_t(&self) -> TruncatedCharacter {
        self.pullback(Exec::default(), |a| {
            self.at(a.weight(), a.reversal().mask()).clone()
        })
    }

    fn pullback(
        &self,
        exec: Exec,
        f: impl Fn(&Composition) -> Rational + Sync,
    ) -> TruncatedCharacter {
        TruncatedCharacter::from_fn_with(self.max_degree(), exec, f)
    }

    /// Convolution power; negative exponents go through [`Self::inverse`].
    pub fn pow(&self, m: i64) -> Result<TruncatedCharacter> {
        let base = if m < 0 { self.inverse()? } else { self.clone() };
        let mut acc = TruncatedCharacter::counit(self.max_degree());
        for _ in 0..m.unsigned_abs() {
            acc = acc.convolve(&base)?;
        }
        Ok(acc)
    }

    /// Every composition with its value, by degree then mask.
    pub fn entries(&self) -> impl Iterator<Item = (Composition, &Rational)> + '_ {
        self.tables.iter().enumerate().flat_map(|(n, row)| {
            all_compositions(n).into_iter().zip(row.iter())
        })
    }
}
