//! Quasi-symmetric functions in the monomial (`M`) and fundamental (`F`)
//! bases: product, coproduct, counit, antipode, basis change, the reversal
//! involution `T`, and the descent map from permutations.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::composition::{delannoy_paths, quasi_shuffle, Composition};
use crate::error::{Error, Result};
use crate::exactnum::{parse_rational, render, Rational};
use crate::permutation::SSymElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    M,
    F,
}

impl Basis {
    pub fn letter(self) -> char {
        match self {
            Basis::M => 'M',
            Basis::F => 'F',
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "M" | "m" => Ok(Basis::M),
            "F" | "f" => Ok(Basis::F),
            other => Err(Error::Parse(format!("unknown basis `{other}`; expected M or F"))),
        }
    }
}

/// A finite linear combination of `M_α` or of `F_α`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSymElement {
    basis: Basis,
    terms: BTreeMap<Composition, Rational>,
}

impl QSymElement {
    pub fn zero(basis: Basis) -> Self {
        QSymElement {
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(basis: Basis) -> Self {
        Self::basis_element(basis, Composition::empty())
    }

    pub fn basis_element(basis: Basis, alpha: Composition) -> Self {
        Self::term(basis, alpha, Rational::one())
    }

    pub fn m(alpha: Composition) -> Self {
        Self::basis_element(Basis::M, alpha)
    }

    pub fn f(alpha: Composition) -> Self {
        Self::basis_element(Basis::F, alpha)
    }

    pub fn term(basis: Basis, alpha: Composition, coeff: Rational) -> Self {
        let mut e = Self::zero(basis);
        e.add_term(alpha, coeff);
        e
    }

    pub fn from_terms(
        basis: Basis,
        terms: impl IntoIterator<Item = (Composition, Rational)>,
    ) -> Self {
        let mut e = Self::zero(basis);
        for (a, c) in terms {
            e.add_term(a, c);
        }
        e
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<Composition, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, alpha: &Composition) -> Rational {
        self.terms.get(alpha).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, alpha: Composition, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(alpha) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_basis(&self, other: &QSymElement) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch {
                left: self.basis.letter(),
                right: other.basis.letter(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &QSymElement) -> Result<QSymElement> {
        self.check_basis(other)?;
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &QSymElement) -> Result<QSymElement> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> QSymElement {
        QSymElement::from_terms(
            self.basis,
            self.terms.iter().map(|(a, x)| (a.clone(), x * c)),
        )
    }

    /// Homogeneous component of weight `n`.
    pub fn component(&self, n: usize) -> QSymElement {
        QSymElement::from_terms(
            self.basis,
            self.terms
                .iter()
                .filter(|(a, _)| a.weight() == n)
                .map(|(a, c)| (a.clone(), c.clone())),
        )
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(Composition::weight).max()
    }

    /// Express in the fundamental basis (identity on `F` elements).
    pub fn to_f(&self) -> QSymElement {
        match self.basis {
            Basis::F => self.clone(),
            Basis::M => {
                let mut out = QSymElement::zero(Basis::F);
                for (alpha, c) in &self.terms {
                    let k = alpha.len();
                    for beta in alpha.refinements() {
                        let sign = if (beta.len() - k) % 2 == 0 { c.clone() } else { -c };
                        out.add_term(beta, sign);
                    }
                }
                out
            }
        }
    }

    /// Express in the monomial basis (identity on `M` elements).
    pub fn to_m(&self) -> QSymElement {
        match self.basis {
            Basis::M => self.clone(),
            Basis::F => {
                let mut out = QSymElement::zero(Basis::M);
                for (alpha, c) in &self.terms {
                    for beta in alpha.refinements() {
                        out.add_term(beta, c.clone());
                    }
                }
                out
            }
        }
    }

    pub fn to_basis(&self, basis: Basis) -> QSymElement {
        match basis {
            Basis::M => self.to_m(),
            Basis::F => self.to_f(),
        }
    }

    /// Quasi-shuffle product in `M`; `F` products route through `M`.
    pub fn multiply(&self, other: &QSymElement) -> Result<QSymElement> {
        self.check_basis(other)?;
        match self.basis {
            Basis::M => Ok(multiply_m(self, other)),
            Basis::F => Ok(multiply_m(&self.to_m(), &other.to_m()).to_f()),
        }
    }

    pub fn pow(&self, e: u32) -> QSymElement {
        let mut acc = QSymElement::one(self.basis);
        for _ in 0..e {
            acc = self.multiply(&acc).expect("same basis");
        }
        acc
    }

    /// Deconcatenation in `M`, ribbon cuts in `F`.
    pub fn coproduct(&self) -> TensorElement {
        let mut out = TensorElement::zero(self.basis);
        for (alpha, c) in &self.terms {
            match self.basis {
                Basis::M => {
                    for i in 0..=alpha.len() {
                        let (l, r) = alpha.deconcatenate(i).expect("i within 0..=k");
                        out.add_term(l, r, c.clone());
                    }
                }
                Basis::F => {
                    for cut in alpha.ribbon_cuts() {
                        out.add_term(cut.left, cut.right, c.clone());
                    }
                }
            }
        }
        out
    }

    /// Coefficient of the empty composition.
    pub fn counit(&self) -> Rational {
        self.coeff(&Composition::empty())
    }

    pub fn antipode(&self) -> QSymElement {
        let mut out = QSymElement::zero(self.basis);
        for (alpha, c) in &self.terms {
            match self.basis {
                Basis::M => {
                    let signed = if alpha.len() % 2 == 0 { c.clone() } else { -c };
                    for gamma in alpha.reversal().coarsenings() {
                        out.add_term(gamma, signed.clone());
                    }
                }
                Basis::F => {
                    let signed = if alpha.weight() % 2 == 0 { c.clone() } else { -c };
                    out.add_term(alpha.conjugate(), signed);
                }
            }
        }
        out
    }

    /// `α ↦ reversal(α)` in either basis.
    pub fn t_involution(&self) -> QSymElement {
        QSymElement::from_terms(
            self.basis,
            self.terms.iter().map(|(a, c)| (a.reversal(), c.clone())),
        )
    }
}

fn multiply_m(x: &QSymElement, y: &QSymElement) -> QSymElement {
    let mut out = QSymElement::zero(Basis::M);
    let mut paths = HashMap::new();
    for (a, ca) in &x.terms {
        for (b, cb) in &y.terms {
            let coeff = ca * cb;
            let ls = paths
                .entry((a.len(), b.len()))
                .or_insert_with(|| delannoy_paths(a.len(), b.len()));
            for l in ls.iter() {
                let q = quasi_shuffle(a, b, l).expect("path sized to operands");
                out.add_term(q, coeff.clone());
            }
        }
    }
    out
}

/// `F_σ ↦ F_{D(σ)}`.
pub fn descent_map(x: &SSymElement) -> QSymElement {
    QSymElement::from_terms(
        Basis::F,
        x.terms()
            .iter()
            .map(|(s, c)| (s.descent_composition(), c.clone())),
    )
}

impl fmt::Display for QSymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (alpha, c)) in self.terms.iter().enumerate() {
            let negative = *c < Rational::zero();
            let abs = if negative { -c } else { c.clone() };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !abs.is_one() {
                write!(f, "{}*", render(&abs))?;
            }
            let inner = if alpha.is_empty() {
                String::new()
            } else {
                alpha.to_string()
            };
            write!(f, "{}[{}]", self.basis, inner)?;
        }
        Ok(())
    }
}

impl FromStr for QSymElement {
    type Err = Error;

    /// Parses `"M[2,1] + 3/2*M[1,1] - M[]"`; a bare `"0"` needs no basis and
    /// is read as zero in `M`.
    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        if text == "0" {
            return Ok(QSymElement::zero(Basis::M));
        }
        let mut basis: Option<Basis> = None;
        let mut terms = Vec::new();
        for (sign, body) in split_signed_terms(text)? {
            let body = body.trim();
            let (coeff, rest) = match body.find('*') {
                Some(pos) => (parse_rational(body[..pos].trim())?, body[pos + 1..].trim()),
                None => (Rational::one(), body),
            };
            let mut chars = rest.chars();
            let letter = chars
                .next()
                .ok_or_else(|| Error::Parse(format!("empty term in `{s}`")))?;
            let b: Basis = letter.to_string().parse()?;
            if let Some(prev) = basis {
                if prev != b {
                    return Err(Error::BasisMismatch {
                        left: prev.letter(),
                        right: b.letter(),
                    });
                }
            }
            basis = Some(b);
            let comp_text = chars.as_str().trim();
            if !(comp_text.starts_with('[') && comp_text.ends_with(']')) {
                return Err(Error::Parse(format!(
                    "term `{body}` must look like {b}[a,b,...]"
                )));
            }
            let comp: Composition = comp_text.parse()?;
            terms.push((comp, if sign { -coeff } else { coeff }));
        }
        Ok(QSymElement::from_terms(basis.unwrap_or(Basis::M), terms))
    }
}

/// Split at top-level `+`/`-`; returns (negated, term text).
fn split_signed_terms(text: &str) -> Result<Vec<(bool, String)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut neg = false;
    for ch in text.chars() {
        match ch {
            '[' | '(' => {
                depth += 1;
                cur.push(ch);
            }
            ']' | ')' => {
                depth -= 1;
                cur.push(ch);
            }
            '+' | '-' if depth == 0 => {
                if cur.trim().is_empty() {
                    // leading or repeated sign
                    if ch == '-' {
                        neg = !neg;
                    }
                    continue;
                }
                out.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            }
            _ => cur.push(ch),
        }
    }
    if cur.trim().is_empty() {
        return Err(Error::Parse(format!("expression `{text}` ends without a term")));
    }
    out.push((neg, cur));
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    comp: Vec<usize>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct JsonElement {
    basis: String,
    terms: Vec<JsonTerm>,
}

impl From<&QSymElement> for JsonElement {
    fn from(x: &QSymElement) -> Self {
        JsonElement {
            basis: x.basis.to_string(),
            terms: x
                .terms
                .iter()
                .map(|(a, c)| JsonTerm {
                    comp: a.parts().to_vec(),
                    coeff: render(c),
                })
                .collect(),
        }
    }
}

impl Serialize for QSymElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        JsonElement::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for QSymElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = JsonElement::deserialize(d)?;
        let basis: Basis = raw.basis.parse().map_err(D::Error::custom)?;
        let mut out = QSymElement::zero(basis);
        for t in raw.terms {
            let comp = Composition::new(t.comp).map_err(D::Error::custom)?;
            let coeff = parse_rational(&t.coeff).map_err(D::Error::custom)?;
            out.add_term(comp, coeff);
        }
        Ok(out)
    }
}

/// A finite sum of `X_α ⊗ X_β` over a single basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement {
    basis: Basis,
    terms: BTreeMap<(Composition, Composition), Rational>,
}

impl TensorElement {
    pub fn zero(basis: Basis) -> Self {
        TensorElement {
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<(Composition, Composition), Rational> {
        &self.terms
    }

    pub fn add_term(&mut self, left: Composition, right: Composition, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let key = (left, right);
        let entry = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Componentwise product `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`.
    pub fn multiply(&self, other: &TensorElement) -> Result<TensorElement> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch {
                left: self.basis.letter(),
                right: other.basis.letter(),
            });
        }
        let mut out = TensorElement::zero(self.basis);
        for ((a, b), x) in &self.terms {
            for ((c, d), y) in &other.terms {
                let left = QSymElement::basis_element(self.basis, a.clone())
                    .multiply(&QSymElement::basis_element(self.basis, c.clone()))?;
                let right = QSymElement::basis_element(self.basis, b.clone())
                    .multiply(&QSymElement::basis_element(self.basis, d.clone()))?;
                let xy = x * y;
                for (l, cl) in left.terms() {
                    for (r, cr) in right.terms() {
                        out.add_term(l.clone(), r.clone(), &xy * cl * cr);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `a ⊗ b ↦ b ⊗ a`.
    pub fn swap(&self) -> TensorElement {
        let mut out = TensorElement::zero(self.basis);
        for ((a, b), c) in &self.terms {
            out.add_term(b.clone(), a.clone(), c.clone());
        }
        out
    }

    /// Apply linear maps to each tensor factor.
    pub fn map_factors(
        &self,
        f: impl Fn(&QSymElement) -> QSymElement,
        g: impl Fn(&QSymElement) -> QSymElement,
    ) -> TensorElement {
        let mut out: Option<TensorElement> = None;
        for ((a, b), c) in &self.terms {
            let fa = f(&QSymElement::basis_element(self.basis, a.clone()));
            let gb = g(&QSymElement::basis_element(self.basis, b.clone()));
            let acc = out.get_or_insert_with(|| TensorElement::zero(fa.basis()));
            for (l, cl) in fa.terms() {
                for (r, cr) in gb.terms() {
                    acc.add_term(l.clone(), r.clone(), c * cl * cr);
                }
            }
        }
        out.unwrap_or_else(|| TensorElement::zero(self.basis))
    }

    /// `Σ x₁ · x₂`.
    pub fn contract(&self) -> QSymElement {
        let mut out = QSymElement::zero(self.basis);
        for ((a, b), c) in &self.terms {
            let p = QSymElement::basis_element(self.basis, a.clone())
                .multiply(&QSymElement::basis_element(self.basis, b.clone()))
                .expect("same basis");
            out = out.add(&p.scale(c)).expect("same basis");
        }
        out
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let side = |a: &Composition| {
            if a.is_empty() {
                "1".to_string()
            } else {
                format!("{}[{}]", self.basis, a)
            }
        };
        for (i, ((a, b), c)) in self.terms.iter().enumerate() {
            let negative = *c < Rational::zero();
            let abs = if negative { -c } else { c.clone() };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !abs.is_one() {
                write!(f, "{}*", render(&abs))?;
            }
            write!(f, "{} ⊗ {}", side(a), side(b))?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct JsonTensorTerm {
    left: Vec<usize>,
    right: Vec<usize>,
    coeff: String,
}

#[derive(Serialize)]
struct JsonTensor {
    basis: String,
    terms: Vec<JsonTensorTerm>,
}

impl Serialize for TensorElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        JsonTensor {
            basis: self.basis.to_string(),
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| JsonTensorTerm {
                    left: a.parts().to_vec(),
                    right: b.parts().to_vec(),
                    coeff: render(c),
                })
                .collect(),
        }
        .serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permutation::Permutation;

    fn q(s: &str) -> QSymElement {
        s.parse().unwrap()
    }

    #[test]
    fn basis_change_examples() {
        assert_eq!(q("F[2]").to_m(), q("M[2] + M[1,1]"));
        assert_eq!(q("M[2]").to_f(), q("F[2] - F[1,1]"));
        assert_eq!(q("M[1]").to_f(), q("F[1]"));
    }

    #[test]
    fn product_examples() {
        assert_eq!(q("M[1]").multiply(&q("M[1]")).unwrap(), q("2*M[1,1] + M[2]"));
        assert_eq!(q("M[]").multiply(&q("M[2,1]")).unwrap(), q("M[2,1]"));
        assert_eq!(q("F[1]").multiply(&q("F[1]")).unwrap(), q("F[1,1] + F[2]"));
        assert!(q("F[1]").multiply(&q("M[1]")).is_err());
    }

    #[test]
    fn coproduct_examples() {
        let d = q("M[2,1]").coproduct();
        assert_eq!(d.terms().len(), 3);
        assert_eq!(d.to_string(), "1 ⊗ M[2,1] + M[2] ⊗ M[1] + M[2,1] ⊗ 1");
        let d = q("F[2]").coproduct();
        assert_eq!(d.to_string(), "1 ⊗ F[2] + F[1] ⊗ F[1] + F[2] ⊗ 1");
        assert_eq!(QSymElement::one(Basis::M).coproduct().to_string(), "1 ⊗ 1");
    }

    #[test]
    fn counit_antipode_t_examples() {
        assert_eq!(q("M[]").counit(), Rational::one());
        assert!(q("M[3]").counit().is_zero());
        assert_eq!(q("F[1] + 2*F[]").counit(), Rational::from_integer(2.into()));
        assert_eq!(q("M[4]").antipode(), q("-M[4]"));
        assert_eq!(q("F[1,1]").antipode(), q("F[2]"));
        assert_eq!(q("M[1,1]").antipode(), q("M[1,1] + M[2]"));
        assert_eq!(q("F[1,2]").t_involution(), q("F[2,1]"));
    }

    #[test]
    fn descent_map_examples() {
        let x = SSymElement::basis("312546".parse::<Permutation>().unwrap());
        assert_eq!(descent_map(&x), q("F[1,3,2]"));
        assert_eq!(descent_map(&SSymElement::one()), q("F[]"));
        let p = SSymElement::basis("12".parse().unwrap())
            .multiply(&SSymElement::basis("312".parse().unwrap()));
        let total: Rational = descent_map(&p).terms().values().sum();
        assert_eq!(total, Rational::from_integer(10.into()));
    }

    #[test]
    fn render_parse_round_trip() {
        let x = q("M[2,1] + 3/2*M[1,1] - M[]");
        assert_eq!(x.to_string(), "-M[] + 3/2*M[1,1] + M[2,1]");
        assert_eq!(q(&x.to_string()), x);
        assert_eq!(QSymElement::zero(Basis::F).to_string(), "0");
        assert!("M[1] + F[1]".parse::<QSymElement>().is_err());
        assert!("M[0]".parse::<QSymElement>().is_err());
        assert!("M[1] +".parse::<QSymElement>().is_err());
    }

    #[test]
    fn json_round_trip() {
        let x = q("F[2,1] - 5/3*F[3]");
        let js = serde_json::to_string(&x).unwrap();
        assert_eq!(
            js,
            r#"{"basis":"F","terms":[{"comp":[2,1],"coeff":"1"},{"comp":[3],"coeff":"-5/3"}]}"#
        );
        let back: QSymElement = serde_json::from_str(&js).unwrap();
        assert_eq!(back, x);
    }
}
