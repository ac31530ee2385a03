//! Noncommutative polynomials with coefficients in `Q(q, rho)`.
//!
//! Two alphabets are supported. The concrete one has the letters `A` and `B`
//! (`B` stands for `A*`). The abstract one names generators: `Wm(i)` is
//! `W_{-i}`, `Wp(i)` is `W_{i+1}`, `G(i)` is `G_{i+1}` and `Gt(i)` is
//! `G~_{i+1}`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::ScalarFraction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
    Wm(u16),
    Wp(u16),
    G(u16),
    Gt(u16),
}

impl Letter {
    pub fn alphabet(self) -> Alphabet {
        match self {
            Letter::A | Letter::B => Alphabet::Concrete,
            _ => Alphabet::Abstract,
        }
    }

    /// The image under the exchange automorphism.
    pub fn exchanged(self) -> Letter {
        match self {
            Letter::A => Letter::B,
            Letter::B => Letter::A,
            Letter::Wm(i) => Letter::Wp(i),
            Letter::Wp(i) => Letter::Wm(i),
            Letter::G(i) => Letter::Gt(i),
            Letter::Gt(i) => Letter::G(i),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::A => write!(f, "A"),
            Letter::B => write!(f, "B"),
            Letter::Wm(i) => write!(f, "Wm{i}"),
            Letter::Wp(i) => write!(f, "Wp{i}"),
            Letter::G(i) => write!(f, "G{i}"),
            Letter::Gt(i) => write!(f, "Gt{i}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Alphabet {
    Concrete,
    Abstract,
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Alphabet::Concrete => "concrete",
            Alphabet::Abstract => "abstract",
        })
    }
}

pub type Word = Vec<Letter>;

/// Canonical word order: shorter first, then lexicographic.
pub fn word_order(a: &[Letter], b: &[Letter]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

pub fn word_to_string(w: &[Letter]) -> String {
    w.iter().map(ToString::to_string).collect()
}

/// Parses `""`, `"ABBA"` or `"Wm3Wp2G1Gt0"`.
pub fn parse_word(text: &str) -> Result<Word> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let index = |i: &mut usize| -> Result<u16> {
        let start = *i;
        while *i < bytes.len() && bytes[*i].is_ascii_digit() {
            *i += 1;
        }
        text[start..*i].parse().map_err(|_| Error::Parse(format!("missing letter index in word {text:?}")))
    };
    while i < bytes.len() {
        let rest = &text[i..];
        let letter = if rest.starts_with("Wm") {
            i += 2;
            Letter::Wm(index(&mut i)?)
        } else if rest.starts_with("Wp") {
            i += 2;
            Letter::Wp(index(&mut i)?)
        } else if rest.starts_with("Gt") {
            i += 2;
            Letter::Gt(index(&mut i)?)
        } else if rest.starts_with('G') {
            i += 1;
            Letter::G(index(&mut i)?)
        } else if rest.starts_with('A') {
            i += 1;
            Letter::A
        } else if rest.starts_with('B') {
            i += 1;
            Letter::B
        } else {
            return Err(Error::Parse(format!("unknown letter in word {text:?}")));
        };
        out.push(letter);
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct NCPolynomial {
    alphabet: Alphabet,
    terms: HashMap<Word, ScalarFraction>,
}

impl NCPolynomial {
    pub fn zero(alphabet: Alphabet) -> Self {
        Self { alphabet, terms: HashMap::new() }
    }

    pub fn constant(alphabet: Alphabet, c: ScalarFraction) -> Self {
        Self::monomial(alphabet, Vec::new(), c)
    }

    pub fn one(alphabet: Alphabet) -> Self {
        Self::constant(alphabet, ScalarFraction::one())
    }

    /// `c * word`; panics if a letter is outside `alphabet`.
    pub fn monomial(alphabet: Alphabet, word: Word, c: ScalarFraction) -> Self {
        assert!(word.iter().all(|l| l.alphabet() == alphabet), "letter outside {alphabet} alphabet");
        let mut p = Self::zero(alphabet);
        if !c.is_zero() {
            p.terms.insert(word, c);
        }
        p
    }

    pub fn letter(l: Letter) -> Self {
        Self::monomial(l.alphabet(), vec![l], ScalarFraction::one())
    }

    pub fn a() -> Self {
        Self::letter(Letter::A)
    }

    pub fn b() -> Self {
        Self::letter(Letter::B)
    }

    /// Builds a polynomial from `(word, coeff)` pairs, adding duplicates.
    pub fn from_terms(alphabet: Alphabet, terms: impl IntoIterator<Item = (Word, ScalarFraction)>) -> Self {
        let mut p = Self::zero(alphabet);
        for (w, c) in terms {
            assert!(w.iter().all(|l| l.alphabet() == alphabet), "letter outside {alphabet} alphabet");
            p.add_term(w, &c);
        }
        p
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, word: &[Letter]) -> ScalarFraction {
        self.terms.get(word).cloned().unwrap_or_default()
    }

    /// Terms sorted in canonical word order.
    pub fn sorted_terms(&self) -> Vec<(&Word, &ScalarFraction)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| word_order(a.0, b.0));
        v
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &ScalarFraction)> {
        self.terms.iter()
    }

    /// Maximal word length, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Vec::len).max()
    }

    pub(crate) fn add_term(&mut self, word: Word, c: &ScalarFraction) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    fn check_alphabet(&self, other: &Self) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(format!("{} vs {}", self.alphabet, other.alphabet)));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_alphabet(other)?;
        Ok(self.add_scaled(other, &ScalarFraction::one()))
    }

    /// `self + c * other`; alphabets must match (panics otherwise).
    pub fn add_scaled(&self, other: &Self, c: &ScalarFraction) -> Self {
        let mut out = self.clone();
        out.add_assign_scaled(other, c);
        out
    }

    /// In-place `self += c * other`; alphabets must match (panics otherwise).
    pub fn add_assign_scaled(&mut self, other: &Self, c: &ScalarFraction) {
        assert_eq!(self.alphabet, other.alphabet, "alphabet mismatch");
        if c.is_zero() {
            return;
        }
        for (w, x) in &other.terms {
            if c.is_one() {
                self.add_term(w.clone(), x);
            } else {
                self.add_term(w.clone(), &(x * c));
            }
        }
    }

    pub fn scale(&self, c: &ScalarFraction) -> Self {
        if c.is_zero() {
            return Self::zero(self.alphabet);
        }
        Self { alphabet: self.alphabet, terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect() }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_alphabet(other)?;
        let mut out = Self::zero(self.alphabet);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = Vec::with_capacity(w1.len() + w2.len());
                w.extend_from_slice(w1);
                w.extend_from_slice(w2);
                out.add_term(w, &(c1 * c2));
            }
        }
        Ok(out)
    }

    /// `q^s * XY - q^-s * YX`
    pub fn q_commutator(&self, other: &Self, s: i32) -> Result<Self> {
        let xy = self.multiply(other)?;
        let yx = other.multiply(self)?;
        Ok(xy.scale(&ScalarFraction::q_pow(s)).add_scaled(&yx, &-ScalarFraction::q_pow(-s)))
    }

    /// `XY - YX`
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.q_commutator(other, 0)
    }

    /// Applies the exchange automorphism letter by letter.
    pub fn exchange(&self) -> Self {
        Self {
            alphabet: self.alphabet,
            terms: self.terms.iter().map(|(w, c)| (w.iter().map(|l| l.exchanged()).collect(), c.clone())).collect(),
        }
    }

    /// Applies `f` to every coefficient, dropping terms that become zero.
    pub fn try_map_coeffs(&self, mut f: impl FnMut(&ScalarFraction) -> Result<ScalarFraction>) -> Result<Self> {
        let mut out = Self::zero(self.alphabet);
        for (w, c) in &self.terms {
            let v = f(c)?;
            if !v.is_zero() {
                out.terms.insert(w.clone(), v);
            }
        }
        Ok(out)
    }

    /// Replaces every abstract letter by a concrete polynomial.
    pub fn substitute(&self, image: impl Fn(Letter) -> Result<NCPolynomial>) -> Result<Self> {
        if self.alphabet != Alphabet::Abstract {
            return Err(Error::AlphabetMismatch("substitute expects an abstract polynomial".into()));
        }
        let mut cache: HashMap<Letter, NCPolynomial> = HashMap::new();
        let mut out = Self::zero(Alphabet::Concrete);
        for (w, c) in self.sorted_terms() {
            let mut acc = Self::constant(Alphabet::Concrete, c.clone());
            for l in w {
                if !cache.contains_key(l) {
                    let img = image(*l)?;
                    if img.alphabet != Alphabet::Concrete {
                        return Err(Error::AlphabetMismatch(format!("image of {l} is not concrete")));
                    }
                    cache.insert(*l, img);
                }
                acc = acc.multiply(&cache[l])?;
            }
            out.add_assign_scaled(&acc, &ScalarFraction::one());
        }
        Ok(out)
    }
}

impl PartialEq for NCPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet
            && self.terms.len() == other.terms.len()
            && self.terms.iter().all(|(w, c)| other.terms.get(w).is_some_and(|d| d == c))
    }
}

impl Eq for NCPolynomial {}

impl std::ops::Add for &NCPolynomial {
    type Output = NCPolynomial;
    fn add(self, rhs: &NCPolynomial) -> NCPolynomial {
        self.add_scaled(rhs, &ScalarFraction::one())
    }
}

impl std::ops::Sub for &NCPolynomial {
    type Output = NCPolynomial;
    fn sub(self, rhs: &NCPolynomial) -> NCPolynomial {
        self.add_scaled(rhs, &-ScalarFraction::one())
    }
}

impl std::ops::Neg for &NCPolynomial {
    type Output = NCPolynomial;
    fn neg(self) -> NCPolynomial {
        self.scale(&-ScalarFraction::one())
    }
}

impl fmt::Display for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if w.is_empty() {
                write!(f, "({c})")?;
            } else if c.is_one() {
                write!(f, "{}", word_to_string(w))?;
            } else {
                write!(f, "({c})*{}", word_to_string(w))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_commutator_expansion() {
        let p = NCPolynomial::b().q_commutator(&NCPolynomial::a(), 1).unwrap();
        assert_eq!(p.coeff(&[Letter::B, Letter::A]), ScalarFraction::q());
        assert_eq!(p.coeff(&[Letter::A, Letter::B]), -ScalarFraction::q_pow(-1));
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        let x = NCPolynomial::letter(Letter::Wm(0));
        assert!(matches!(x.multiply(&NCPolynomial::a()), Err(Error::AlphabetMismatch(_))));
    }

    #[test]
    fn word_text_round_trip() {
        let w = vec![Letter::Wm(3), Letter::Wp(12), Letter::G(1), Letter::Gt(0)];
        assert_eq!(word_to_string(&w), "Wm3Wp12G1Gt0");
        assert_eq!(parse_word("Wm3Wp12G1Gt0").unwrap(), w);
        assert_eq!(parse_word("").unwrap(), Vec::<Letter>::new());
        assert!(parse_word("AxB").is_err());
    }

    #[test]
    fn degree_of_zero_is_none() {
        assert_eq!(NCPolynomial::zero(Alphabet::Concrete).degree(), None);
        assert_eq!(NCPolynomial::one(Alphabet::Concrete).degree(), Some(0));
    }
}
