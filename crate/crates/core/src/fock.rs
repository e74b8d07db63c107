//! Free (Boltzmannian) Fock space over H = C ⊕ C, restricted to rational
//! scalars.
//!
//! A basis of the n-particle space H^{⊗n} is labelled by words of length n
//! over {0, 1}; the empty word labels the vacuum Ω. Distinct words are
//! orthonormal. A [`FockVector`] is a finitely supported combination of
//! words, kept in canonical sparse form (no stored zero amplitudes) so that
//! structural equality is mathematical equality.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::RationalJson;

/// Exact rational amplitude.
pub type Scalar = BigRational;

/// One of the two basis vectors of the one-particle space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Zero,
    One,
}

impl Letter {
    pub const ALL: [Letter; 2] = [Letter::Zero, Letter::One];

    pub fn new(value: u32) -> Result<Self> {
        match value {
            0 => Ok(Letter::Zero),
            1 => Ok(Letter::One),
            other => Err(Error::InvalidLetter(other)),
        }
    }

    pub fn index(self) -> usize {
        match self {
            Letter::Zero => 0,
            Letter::One => 1,
        }
    }

    pub fn bit(self) -> u8 {
        self.index() as u8
    }

    pub fn flip(self) -> Self {
        match self {
            Letter::Zero => Letter::One,
            Letter::One => Letter::Zero,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Letter::Zero => '0',
            Letter::One => '1',
        }
    }
}

impl TryFrom<char> for Letter {
    type Error = Error;

    fn try_from(c: char) -> Result<Self> {
        match c {
            '0' => Ok(Letter::Zero),
            '1' => Ok(Letter::One),
            other => Err(Error::InvalidCharacter(other)),
        }
    }
}

impl TryFrom<u32> for Letter {
    type Error = Error;

    fn try_from(value: u32) -> Result<Self> {
        Letter::new(value)
    }
}

/// A finite word over {0, 1}, first tensor factor first. The empty word is
/// the vacuum label.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        Word(letters.into_iter().collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn get(&self, index: usize) -> Option<Letter> {
        self.0.get(index).copied()
    }

    /// `letter · self`.
    pub fn prepend(&self, letter: Letter) -> Word {
        let mut letters = Vec::with_capacity(self.0.len() + 1);
        letters.push(letter);
        letters.extend_from_slice(&self.0);
        Word(letters)
    }

    /// The word with its first letter removed, if it starts with `letter`.
    pub fn strip_first(&self, letter: Letter) -> Option<Word> {
        match self.0.split_first() {
            Some((&head, rest)) if head == letter => Some(Word(rest.to_vec())),
            _ => None,
        }
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// All words of exactly `len` letters, in lexicographic order.
    pub fn all_of_length(len: usize) -> impl Iterator<Item = Word> {
        assert!(
            len < usize::BITS as usize,
            "word length too large to enumerate"
        );
        (0usize..(1 << len)).map(move |bits| {
            Word(
                (0..len)
                    .map(|i| {
                        if bits >> (len - 1 - i) & 1 == 1 {
                            Letter::One
                        } else {
                            Letter::Zero
                        }
                    })
                    .collect(),
            )
        })
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(Letter::try_from)
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for letter in &self.0 {
            write!(f, "{}", letter.to_char())?;
        }
        Ok(())
    }
}

/// Finitely supported vector of the free Fock space.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FockVector {
    terms: BTreeMap<Word, Scalar>,
}

impl FockVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Ω, the unit vector labelled by the empty word.
    pub fn vacuum() -> Self {
        Self::basis(Word::empty())
    }

    pub fn basis(word: Word) -> Self {
        Self::single(word, Scalar::one())
    }

    pub fn single(word: Word, amplitude: Scalar) -> Self {
        Self::from_terms([(word, amplitude)])
    }

    /// Sums the given terms, dropping anything that cancels to zero.
    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut map: BTreeMap<Word, Scalar> = BTreeMap::new();
        for (word, amplitude) in terms {
            *map.entry(word).or_insert_with(Scalar::zero) += amplitude;
        }
        map.retain(|_, c| !c.is_zero());
        Self { terms: map }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    /// Amplitude of `word`; zero when absent.
    pub fn amplitude(&self, word: &Word) -> Scalar {
        self.terms.get(word).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    /// A†_i: prepends `letter` to every word.
    pub fn create(&self, letter: Letter) -> FockVector {
        // prepending is injective, so no terms merge and none vanish
        FockVector {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.prepend(letter), c.clone()))
                .collect(),
        }
    }

    /// A_i: strips a leading `letter`, killing words that start with the
    /// other letter and the vacuum.
    pub fn annihilate(&self, letter: Letter) -> FockVector {
        FockVector {
            terms: self
                .terms
                .iter()
                .filter_map(|(w, c)| w.strip_first(letter).map(|rest| (rest, c.clone())))
                .collect(),
        }
    }

    pub fn inner_product(&self, other: &FockVector) -> Scalar {
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        small
            .terms
            .iter()
            .filter_map(|(w, c)| large.terms.get(w).map(|d| c * d))
            .fold(Scalar::zero(), |acc, x| acc + x)
    }

    pub fn norm_squared(&self) -> Scalar {
        self.terms
            .values()
            .fold(Scalar::zero(), |acc, c| acc + c * c)
    }

    pub fn add(&self, other: &FockVector) -> FockVector {
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            let entry = terms.entry(w.clone()).or_insert_with(Scalar::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(w);
            }
        }
        FockVector { terms }
    }

    pub fn sub(&self, other: &FockVector) -> FockVector {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, factor: &Scalar) -> FockVector {
        if factor.is_zero() {
            return FockVector::zero();
        }
        FockVector {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c * factor))
                .collect(),
        }
    }

    /// Canonical serialized form: terms sorted by word.
    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms
            .iter()
            .map(|(w, c)| {
                let r = RationalJson::from(c);
                TermRecord {
                    word: w.to_string(),
                    num: r.num,
                    den: r.den,
                }
            })
            .collect()
    }

    /// Inverse of [`FockVector::to_records`]. Duplicate words are rejected;
    /// fractions are reduced and zero amplitudes dropped.
    pub fn from_records(records: &[TermRecord]) -> Result<FockVector> {
        let mut terms = BTreeMap::new();
        for record in records {
            let word: Word = record.word.parse()?;
            let amplitude = Scalar::try_from(&RationalJson {
                num: record.num.clone(),
                den: record.den.clone(),
            })?;
            if terms.insert(word, amplitude).is_some() {
                return Err(Error::InvalidTerm(format!(
                    "duplicate word {:?}",
                    record.word
                )));
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(FockVector { terms })
    }
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let label = if w.is_empty() {
                "Ω".to_string()
            } else {
                w.to_string()
            };
            write!(f, "({})|{}⟩", crate::rational::format_rational(c), label)?;
        }
        Ok(())
    }
}

/// One term of the serialized form of a [`FockVector`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub word: String,
    pub num: String,
    pub den: String,
}

impl Serialize for FockVector {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.to_records().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FockVector {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let records = Vec::<TermRecord>::deserialize(deserializer)?;
        FockVector::from_records(&records).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::new(n.into(), d.into())
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn vec_of(terms: &[(&str, i64)]) -> FockVector {
        FockVector::from_terms(terms.iter().map(|&(s, c)| (w(s), q(c, 1))))
    }

    #[test]
    fn vacuum_is_single_empty_word() {
        let omega = FockVector::vacuum();
        assert_eq!(omega.support_len(), 1);
        assert_eq!(omega.amplitude(&Word::empty()), q(1, 1));
        assert_eq!(omega.inner_product(&omega), q(1, 1));
        for letter in Letter::ALL {
            assert!(omega.annihilate(letter).is_zero());
        }
    }

    #[test]
    fn create_prepends() {
        assert_eq!(
            FockVector::vacuum().create(Letter::Zero),
            vec_of(&[("0", 1)])
        );
        assert_eq!(
            vec_of(&[("0", 2), ("1", 3)]).create(Letter::One),
            vec_of(&[("10", 2), ("11", 3)])
        );
    }

    #[test]
    fn annihilate_strips_matching_head() {
        assert_eq!(
            vec_of(&[("01", 5)]).annihilate(Letter::Zero),
            vec_of(&[("1", 5)])
        );
        assert!(vec_of(&[("01", 5)]).annihilate(Letter::One).is_zero());
    }

    #[test]
    fn invalid_letters_are_rejected() {
        assert_eq!(Letter::new(2), Err(Error::InvalidLetter(2)));
        assert_eq!(Letter::try_from('2'), Err(Error::InvalidCharacter('2')));
        assert!("01x".parse::<Word>().is_err());
    }

    #[test]
    fn inner_product_on_basis() {
        assert_eq!(
            vec_of(&[("01", 2)]).inner_product(&vec_of(&[("01", 3)])),
            q(6, 1)
        );
        assert_eq!(
            vec_of(&[("0", 1)]).inner_product(&vec_of(&[("1", 1)])),
            q(0, 1)
        );
    }

    #[test]
    fn linear_plumbing() {
        assert!(vec_of(&[("0", 1)]).add(&vec_of(&[("0", -1)])).is_zero());
        assert!(vec_of(&[("0", 1), ("1", 2)]).scale(&q(0, 1)).is_zero());
        assert_eq!(vec_of(&[("0", 3), ("11", 4)]).norm_squared(), q(25, 1));
        let v = vec_of(&[("0", 3), ("11", 4)]);
        assert!(v.sub(&v).is_zero());
    }

    #[test]
    fn words_up_to_length_12_are_orthonormal() {
        // all pairs up to length 6, and every length-12 word against a spread of others
        let short: Vec<Word> = (0..=6).flat_map(Word::all_of_length).collect();
        for a in &short {
            for b in &short {
                let ip = FockVector::basis(a.clone()).inner_product(&FockVector::basis(b.clone()));
                assert_eq!(ip, if a == b { q(1, 1) } else { q(0, 1) });
            }
        }
        let long: Vec<Word> = Word::all_of_length(12).collect();
        for (i, a) in long.iter().enumerate() {
            let b = &long[(i * 37 + 11) % long.len()];
            let ip = FockVector::basis(a.clone()).inner_product(&FockVector::basis(b.clone()));
            assert_eq!(ip, if a == b { q(1, 1) } else { q(0, 1) });
            let c = short[i % short.len()].clone();
            assert!(FockVector::basis(a.clone())
                .inner_product(&FockVector::basis(c))
                .is_zero());
        }
    }

    #[test]
    fn serialization_is_sorted_and_round_trips() {
        let v = FockVector::from_terms([
            (w("1"), q(-3, 4)),
            (Word::empty(), q(1, 1)),
            (w("01"), q(2, 6)),
        ]);
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(
            json,
            r#"[{"word":"","num":"1","den":"1"},{"word":"01","num":"1","den":"3"},{"word":"1","num":"-3","den":"4"}]"#
        );
        let back: FockVector = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }

    #[test]
    fn deserialization_rejects_bad_records() {
        let dup = r#"[{"word":"0","num":"1","den":"1"},{"word":"0","num":"2","den":"1"}]"#;
        assert!(serde_json::from_str::<FockVector>(dup).is_err());
        let zero_den = r#"[{"word":"0","num":"1","den":"0"}]"#;
        assert!(serde_json::from_str::<FockVector>(zero_den).is_err());
        let bad_word = r#"[{"word":"2","num":"1","den":"1"}]"#;
        assert!(serde_json::from_str::<FockVector>(bad_word).is_err());
    }

    fn arb_word(max_len: usize) -> impl Strategy<Value = Word> {
        proptest::collection::vec(
            prop_oneof![Just(Letter::Zero), Just(Letter::One)],
            0..=max_len,
        )
        .prop_map(Word::from)
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        (-30i64..=30, 1i64..=12).prop_map(|(n, d)| q(n, d))
    }

    fn arb_vector() -> impl Strategy<Value = FockVector> {
        proptest::collection::vec((arb_word(8), arb_scalar()), 0..12)
            .prop_map(FockVector::from_terms)
    }

    fn arb_letter() -> impl Strategy<Value = Letter> {
        prop_oneof![Just(Letter::Zero), Just(Letter::One)]
    }

    proptest! {
        #[test]
        fn commutation_relations(v in arb_vector(), i in arb_letter(), j in arb_letter()) {
            let lhs = v.create(j).annihilate(i);
            let rhs = if i == j { v.clone() } else { FockVector::zero() };
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn inner_product_is_bilinear_and_symmetric(
            u in arb_vector(), v in arb_vector(), x in arb_vector(), a in arb_scalar(), b in arb_scalar()
        ) {
            let combo = u.scale(&a).add(&v.scale(&b));
            prop_assert_eq!(
                combo.inner_product(&x),
                &a * u.inner_product(&x) + &b * v.inner_product(&x)
            );
            prop_assert_eq!(u.inner_product(&v), v.inner_product(&u));
            prop_assert_eq!(u.norm_squared(), u.inner_product(&u));
        }

        #[test]
        fn operators_are_linear(u in arb_vector(), v in arb_vector(), a in arb_scalar(), i in arb_letter()) {
            let combo = u.scale(&a).add(&v);
            prop_assert_eq!(combo.create(i), u.create(i).scale(&a).add(&v.create(i)));
            prop_assert_eq!(combo.annihilate(i), u.annihilate(i).scale(&a).add(&v.annihilate(i)));
        }

        #[test]
        fn create_preserves_and_annihilate_shrinks_norm(v in arb_vector(), i in arb_letter()) {
            prop_assert_eq!(v.create(i).norm_squared(), v.norm_squared());
            prop_assert!(v.annihilate(i).norm_squared() <= v.norm_squared());
        }

        #[test]
        fn canonical_form_has_no_zeros(v in arb_vector(), u in arb_vector()) {
            for x in [v.add(&u), v.sub(&u), v.sub(&v)] {
                prop_assert!(x.iter().all(|(_, c)| !c.is_zero()));
            }
        }

        #[test]
        fn serialization_round_trip(v in arb_vector()) {
            let json = serde_json::to_string(&v).unwrap();
            let back: FockVector = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(serde_json::to_string(&back).unwrap(), json);
            prop_assert_eq!(back, v);
        }
    }
}
