use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use super::alphabet::{Alphabet, Letter, Word};
use crate::error::{Error, Result};
use crate::exact::{render, Rational};

/// A truncated element of the complete tensor algebra: a finite map from
/// words of length `<= order` to nonzero exact coefficients.
///
/// Equality compares alphabets and coefficient maps; the truncation order is
/// bookkeeping and does not take part in it.
#[derive(Clone, Debug)]
pub struct Series {
    alphabet: Arc<Alphabet>,
    order: usize,
    terms: BTreeMap<Word, Rational>,
}

/// One record of the structured rendering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TermRecord {
    pub word: Vec<String>,
    pub coeff: String,
}

/// First word (in canonical order) on which two series disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub word: Word,
    pub left: Rational,
    pub right: Rational,
}

impl PartialEq for Series {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet && self.terms == other.terms
    }
}

impl Eq for Series {}

pub(crate) fn accumulate(map: &mut BTreeMap<Word, Rational>, word: Word, c: Rational) {
    use std::collections::btree_map::Entry;
    match map.entry(word) {
        Entry::Vacant(e) => {
            if !c.is_zero() {
                e.insert(c);
            }
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

pub(crate) fn ensure_same(a: &Alphabet, b: &Alphabet) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch { left: a.to_string(), right: b.to_string() })
    }
}

impl Series {
    pub fn zero(alphabet: &Arc<Alphabet>, order: usize) -> Self {
        Series { alphabet: alphabet.clone(), order, terms: BTreeMap::new() }
    }

    pub fn one(alphabet: &Arc<Alphabet>, order: usize) -> Self {
        Self::monomial(alphabet, order, Word::empty(), Rational::one())
    }

    pub fn monomial(alphabet: &Arc<Alphabet>, order: usize, word: Word, coeff: Rational) -> Self {
        let mut s = Self::zero(alphabet, order);
        if word.len() <= order && !coeff.is_zero() {
            s.terms.insert(word, coeff);
        }
        s
    }

    pub fn letter(alphabet: &Arc<Alphabet>, order: usize, l: Letter) -> Self {
        Self::monomial(alphabet, order, Word::letter(l), Rational::one())
    }

    /// The series consisting of the single generator `name`.
    pub fn generator(alphabet: &Arc<Alphabet>, order: usize, name: &str) -> Result<Self> {
        Ok(Self::letter(alphabet, order, alphabet.letter(name)?))
    }

    /// Builds a series from `(generator names, coefficient)` pairs; repeated
    /// words are summed.
    pub fn from_named_terms<'a, I>(alphabet: &Arc<Alphabet>, order: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a [&'a str], Rational)>,
    {
        let mut s = Self::zero(alphabet, order);
        for (names, c) in terms {
            let word = Word(
                names.iter().map(|n| alphabet.letter(n).map(|l| l.0)).collect::<Result<Vec<_>>>()?,
            );
            if word.len() <= order {
                accumulate(&mut s.terms, word, c);
            }
        }
        Ok(s)
    }

    pub fn from_terms(alphabet: &Arc<Alphabet>, order: usize, terms: impl IntoIterator<Item = (Word, Rational)>) -> Self {
        let mut s = Self::zero(alphabet, order);
        for (w, c) in terms {
            if w.len() <= order {
                accumulate(&mut s.terms, w, c);
            }
        }
        s
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Word, Rational> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, word: &Word) -> Rational {
        self.terms.get(word).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of the word spelled by generator names.
    pub fn coeff_of(&self, names: &[&str]) -> Result<Rational> {
        let w = Word(names.iter().map(|n| self.alphabet.letter(n).map(|l| l.0)).collect::<Result<_>>()?);
        Ok(self.coeff(&w))
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Word::empty())
    }

    /// Restriction to words of length `<= order` (never raises the order).
    pub fn truncate(&self, order: usize) -> Series {
        let order = order.min(self.order);
        Series {
            alphabet: self.alphabet.clone(),
            order,
            terms: self.terms.iter().filter(|(w, _)| w.len() <= order).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    /// Homogeneous part of word length exactly `n`.
    pub fn length_part(&self, n: usize) -> Series {
        self.filter(|w| w.len() == n)
    }

    pub fn filter(&self, mut keep: impl FnMut(&Word) -> bool) -> Series {
        Series {
            alphabet: self.alphabet.clone(),
            order: self.order,
            terms: self.terms.iter().filter(|(w, _)| keep(w)).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Series {
        if k.is_zero() {
            return Series::zero(&self.alphabet, self.order);
        }
        Series {
            alphabet: self.alphabet.clone(),
            order: self.order,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect(),
        }
    }

    /// Sum, truncated to the smaller of the two orders.
    pub fn try_add(&self, other: &Series) -> Result<Series> {
        ensure_same(&self.alphabet, &other.alphabet)?;
        let order = self.order.min(other.order);
        let mut out = self.truncate(order);
        for (w, c) in other.terms.iter().filter(|(w, _)| w.len() <= order) {
            accumulate(&mut out.terms, w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Series) -> Result<Series> {
        self.try_add(&-other)
    }

    /// In-place `self += k * other`, keeping `self`'s order.
    pub fn add_scaled(&mut self, other: &Series, k: &Rational) -> Result<()> {
        ensure_same(&self.alphabet, &other.alphabet)?;
        if k.is_zero() {
            return Ok(());
        }
        for (w, c) in other.terms.iter().filter(|(w, _)| w.len() <= self.order) {
            accumulate(&mut self.terms, w.clone(), c * k);
        }
        Ok(())
    }

    /// Concatenation product, truncated to `min(order(self), order(other))`.
    pub fn product(&self, other: &Series) -> Result<Series> {
        ensure_same(&self.alphabet, &other.alphabet)?;
        let order = self.order.min(other.order);
        let mut terms = BTreeMap::new();
        for (w1, c1) in &self.terms {
            if w1.len() > order {
                break;
            }
            let room = order - w1.len();
            // `other.terms` is sorted by length first.
            for (w2, c2) in &other.terms {
                if w2.len() > room {
                    break;
                }
                accumulate(&mut terms, w1.concat(w2), c1 * c2);
            }
        }
        Ok(Series { alphabet: self.alphabet.clone(), order, terms })
    }

    pub fn pow(&self, n: usize) -> Result<Series> {
        let mut acc = Series::one(&self.alphabet, self.order);
        for _ in 0..n {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// Degree of every stored word, if they all agree. `None` for the
    /// zero series and for heterogeneous series.
    pub fn homogeneous_degree(&self) -> Option<i32> {
        let mut it = self.terms.keys().map(|w| self.alphabet.word_degree(w));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// True when every stored word has degree `d` (the zero series is
    /// homogeneous of every degree).
    pub fn is_homogeneous_of(&self, d: i32) -> bool {
        self.terms.keys().all(|w| self.alphabet.word_degree(w) == d)
    }

    pub fn require_degree(&self, d: i32) -> Result<()> {
        if self.is_homogeneous_of(d) {
            Ok(())
        } else {
            Err(Error::Degree { expected: d, found: self.to_string() })
        }
    }

    /// Splits into homogeneous components, keyed by degree.
    pub fn components(&self) -> BTreeMap<i32, Series> {
        let mut out: BTreeMap<i32, Series> = BTreeMap::new();
        for (w, c) in &self.terms {
            let d = self.alphabet.word_degree(w);
            out.entry(d)
                .or_insert_with(|| Series::zero(&self.alphabet, self.order))
                .terms
                .insert(w.clone(), c.clone());
        }
        out
    }

    /// True when both agree on all words of length `<= m`.
    pub fn agrees_through(&self, other: &Series, m: usize) -> bool {
        self.first_mismatch_through(other, m).is_none()
    }

    /// First word of length `<= m`, in canonical order, on which the two
    /// coefficient maps differ.
    pub fn first_mismatch_through(&self, other: &Series, m: usize) -> Option<Mismatch> {
        let mut words: Vec<&Word> =
            self.terms.keys().chain(other.terms.keys()).filter(|w| w.len() <= m).collect();
        words.sort();
        words.dedup();
        words.into_iter().find_map(|w| {
            let (l, r) = (self.coeff(w), other.coeff(w));
            (l != r).then(|| Mismatch { word: w.clone(), left: l, right: r })
        })
    }

    /// First nonzero term in canonical order.
    pub fn leading_term(&self) -> Option<(&Word, &Rational)> {
        self.terms.iter().next()
    }

    pub fn word_text(&self, word: &Word) -> String {
        if word.is_empty() {
            "1".to_string()
        } else {
            self.alphabet.word_names(word).join("⊗")
        }
    }

    /// Canonical structured rendering: one record per term, length-lex order.
    pub fn records(&self) -> Vec<TermRecord> {
        self.terms
            .iter()
            .map(|(w, c)| TermRecord { word: self.alphabet.word_names(w), coeff: render(c) })
            .collect()
    }
}

/// Canonical text rendering: `coeff·g1⊗g2` terms in length-lex order joined
/// by ` + `; the empty word renders as its bare coefficient.
impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if w.is_empty() {
                write!(f, "{}", render(c))?;
            } else {
                write!(f, "{}·{}", render(c), self.alphabet.word_names(w).join("⊗"))?;
            }
        }
        Ok(())
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series {
            alphabet: self.alphabet.clone(),
            order: self.order,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Neg for Series {
    type Output = Series;
    fn neg(self) -> Series {
        -&self
    }
}

// Operator forms panic on alphabet mismatch; use the `try_*` methods when
// operands come from different sources.
impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        self.try_add(rhs).expect("series addition")
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        self.try_sub(rhs).expect("series subtraction")
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        self.product(rhs).expect("series product")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Series {
            type Output = Series;
            fn $m(self, rhs: Series) -> Series {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Series> for Series {
            type Output = Series;
            fn $m(self, rhs: &Series) -> Series {
                (&self).$m(rhs)
            }
        }
        impl $tr<Series> for &Series {
            type Output = Series;
            fn $m(self, rhs: Series) -> Series {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};

    fn yx() -> Arc<Alphabet> {
        Alphabet::from_pairs(&[("y", 0), ("x", 0)]).unwrap()
    }

    #[test]
    fn product_of_unit_shifts() {
        let al = yx();
        let one = Series::one(&al, 4);
        let y = Series::generator(&al, 4, "y").unwrap();
        let x = Series::generator(&al, 4, "x").unwrap();
        let p = (&one + &y) * (&one + &x);
        let expected = Series::from_named_terms(
            &al,
            4,
            [(&[][..], int(1)), (&["y"][..], int(1)), (&["x"][..], int(1)), (&["y", "x"][..], int(1))],
        )
        .unwrap();
        assert_eq!(p, expected);
        assert_eq!(&y * &one, y);
    }

    #[test]
    fn product_truncates_to_smaller_order() {
        let u = Alphabet::from_pairs(&[("u", -1)]).unwrap();
        let a = Series::generator(&u, 2, "u").unwrap();
        let b = Series::generator(&u, 5, "u").unwrap();
        let p = a.product(&b).unwrap();
        assert_eq!(p.order(), 2);
        assert_eq!(p.coeff_of(&["u", "u"]).unwrap(), int(1));
        assert!(p.product(&b).unwrap().is_zero());
    }

    #[test]
    fn alphabet_mismatch_is_reported() {
        let a = Series::one(&yx(), 3);
        let b = Series::one(&Alphabet::from_pairs(&[("u", -1)]).unwrap(), 3);
        assert!(matches!(a.product(&b), Err(Error::AlphabetMismatch { .. })));
        assert!(a.try_add(&b).is_err());
    }

    #[test]
    fn zero_coefficients_are_stripped() {
        let al = yx();
        let y = Series::generator(&al, 3, "y").unwrap();
        assert!((&y - &y).is_zero());
        assert_eq!((&y - &y).len(), 0);
    }

    #[test]
    fn text_and_structured_rendering() {
        let al = yx();
        let s = Series::from_named_terms(
            &al,
            3,
            [(&["x", "y"][..], ratio(-1, 2)), (&["y"][..], int(1)), (&[][..], int(2)), (&["y", "x"][..], ratio(1, 2))],
        )
        .unwrap();
        assert_eq!(s.to_string(), "2 + 1·y + 1/2·y⊗x + -1/2·x⊗y");
        let recs = serde_json::to_string(&s.records()).unwrap();
        assert_eq!(
            recs,
            r#"[{"word":[],"coeff":"2"},{"word":["y"],"coeff":"1"},{"word":["y","x"],"coeff":"1/2"},{"word":["x","y"],"coeff":"-1/2"}]"#
        );
        assert_eq!(Series::zero(&al, 2).to_string(), "0");
    }

    #[test]
    fn first_mismatch_is_canonical() {
        let al = yx();
        let a = Series::from_named_terms(&al, 3, [(&["x", "x"][..], int(1)), (&["x"][..], int(2))]).unwrap();
        let b = Series::from_named_terms(&al, 3, [(&["x", "x"][..], int(3))]).unwrap();
        let m = a.first_mismatch_through(&b, 3).unwrap();
        assert_eq!(m.word, Word(vec![1]));
        assert!(a.agrees_through(&b, 0));
    }
}
