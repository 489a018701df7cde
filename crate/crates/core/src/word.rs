//! Finite words over the ordered alphabet `a < b` and the elementary
//! operators the rest of the crate is built on.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A letter of the binary alphabet. The derived order gives `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Letter {
    A = b'a',
    B = b'b',
}

impl Letter {
    pub const BOTH: [Letter; 2] = [Letter::A, Letter::B];

    /// The other letter.
    #[inline]
    pub fn complement(self) -> Letter {
        match self {
            Letter::A => Letter::B,
            Letter::B => Letter::A,
        }
    }

    #[inline]
    pub fn as_char(self) -> char {
        self as u8 as char
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'a' => Some(Letter::A),
            'b' => Some(Letter::B),
            _ => None,
        }
    }

    /// Binary digit under the identification a = 0, b = 1.
    #[inline]
    pub fn bit(self) -> u8 {
        match self {
            Letter::A => 0,
            Letter::B => 1,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Which end of a word an operator acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum End {
    First,
    Last,
}

/// Selects `v₊` (the prefix form) or `₊v` (the suffix form).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Prefix,
    Suffix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Alternation {
    Alternating,
    QuasiAlternating,
    Neither,
}

/// A finite word over `{a, b}`. Ordering is lexicographic with `a < b`
/// and a proper prefix smaller than its extensions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BinaryWord(Vec<Letter>);

impl BinaryWord {
    pub fn empty() -> Self {
        BinaryWord(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        BinaryWord(letters)
    }

    /// `x^n`.
    pub fn power_of(letter: Letter, n: usize) -> Self {
        BinaryWord(vec![letter; n])
    }

    /// Parses an ASCII string over `{a, b}`, reporting the first offending
    /// character.
    pub fn parse(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(position, c)| Letter::from_char(c).ok_or(Error::InvalidLetter { position, found: c }))
            .collect::<Result<Vec<_>>>()
            .map(BinaryWord)
    }

    /// Parses the run-length form `a2b1a1b2`. Each block is a letter followed
    /// by a positive count; a bare letter counts once.
    pub fn parse_run_length(s: &str) -> Result<Self> {
        let mut out = Vec::new();
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let letter = Letter::from_char(chars[i]).ok_or(Error::InvalidLetter { position: i, found: chars[i] })?;
            let start = i + 1;
            let mut j = start;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let count = if j == start {
                1
            } else {
                let digits: String = chars[start..j].iter().collect();
                let n: usize =
                    digits.parse().map_err(|_| Error::InvalidLetter { position: start, found: chars[start] })?;
                if n == 0 {
                    return Err(Error::InvalidLetter { position: start, found: '0' });
                }
                n
            };
            out.extend(std::iter::repeat_n(letter, count));
            i = j;
        }
        Ok(BinaryWord(out))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    /// `|w|_x`.
    pub fn count(&self, letter: Letter) -> usize {
        self.0.iter().filter(|&&l| l == letter).count()
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn extend_from(&mut self, other: &BinaryWord) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn concat(&self, other: &BinaryWord) -> BinaryWord {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        BinaryWord(v)
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> BinaryWord {
        BinaryWord(self.0[range].to_vec())
    }

    pub fn prefix(&self, n: usize) -> BinaryWord {
        BinaryWord(self.0[..n.min(self.len())].to_vec())
    }

    pub fn suffix_from(&self, start: usize) -> BinaryWord {
        BinaryWord(self.0[start.min(self.len())..].to_vec())
    }

    pub fn starts_with(&self, other: &BinaryWord) -> bool {
        self.0.starts_with(&other.0)
    }

    pub fn ends_with(&self, other: &BinaryWord) -> bool {
        self.0.ends_with(&other.0)
    }

    pub fn is_palindrome(&self) -> bool {
        is_palindrome(&self.0)
    }

    /// Constant words are `x^k` with `k >= 0`; the empty word is constant.
    pub fn is_constant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    pub fn complement(&self) -> BinaryWord {
        BinaryWord(self.0.iter().map(|l| l.complement()).collect())
    }

    pub fn reversal(&self) -> BinaryWord {
        BinaryWord(self.0.iter().rev().copied().collect())
    }

    /// `η(w) = |w|_b / |w|_a`.
    pub fn slope(&self) -> Result<Slope> {
        if self.is_empty() {
            return Err(Error::EmptyWord { op: "slope" });
        }
        Ok(Slope::new(self.count(Letter::B) as u64, self.count(Letter::A) as u64))
    }

    /// `⟨w⟩₂`, reading `a` as 0 and `b` as 1.
    pub fn standard_interpretation(&self) -> BigUint {
        let mut acc = BigUint::zero();
        for l in &self.0 {
            acc <<= 1usize;
            if *l == Letter::B {
                acc += 1u32;
            }
        }
        acc
    }

    pub fn integral_representation(&self) -> Result<IntegralRepresentation> {
        let first = self.first().ok_or(Error::EmptyWord { op: "integral representation" })?;
        let mut exponents = vec![1usize];
        for w in self.0.windows(2) {
            if w[0] == w[1] {
                *exponents.last_mut().unwrap() += 1;
            } else {
                exponents.push(1);
            }
        }
        Ok(IntegralRepresentation { first_letter: first, exponents })
    }

    /// `ext(w)`, the number of letter runs; `ext(ε) = 0`.
    pub fn extension(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            1 + self.0.windows(2).filter(|w| w[0] != w[1]).count()
        }
    }

    pub fn has_period(&self, p: usize) -> bool {
        has_period(&self.0, p)
    }

    /// Smallest `p >= 1` with `w_i = w_{i+p}` throughout; `π(ε) = 1`.
    pub fn minimal_period(&self) -> usize {
        minimal_period(&self.0)
    }

    pub fn classify_alternation(&self) -> Result<Alternation> {
        if self.is_empty() {
            return Err(Error::EmptyWord { op: "classify_alternation" });
        }
        let violations = self.0.windows(2).filter(|w| w[0] == w[1]).count();
        Ok(match violations {
            0 => Alternation::Alternating,
            1 => Alternation::QuasiAlternating,
            _ => Alternation::Neither,
        })
    }

    /// `v⁻` (drop the last letter) or `⁻v` (drop the first letter).
    pub fn truncate(&self, end: End) -> Result<BinaryWord> {
        if self.is_empty() {
            return Err(Error::EmptyWord { op: "truncate" });
        }
        Ok(match end {
            End::Last => BinaryWord(self.0[..self.len() - 1].to_vec()),
            End::First => BinaryWord(self.0[1..].to_vec()),
        })
    }

    /// `v₊`: the longest prefix followed by the complement of the last
    /// letter. `₊v`: the longest suffix preceded by the complement of the
    /// first letter. Both require `v` to contain both letters.
    pub fn plus(&self, side: Side) -> Result<BinaryWord> {
        let op = match side {
            Side::Prefix => "v₊",
            Side::Suffix => "₊v",
        };
        if self.is_empty() {
            return Err(Error::EmptyWord { op });
        }
        if self.is_constant() {
            return Err(Error::ConstantWord { op, word: self.to_string() });
        }
        Ok(match side {
            Side::Prefix => {
                let target = self.last().unwrap().complement();
                let j = self.0.iter().rposition(|&l| l == target).unwrap();
                BinaryWord(self.0[..j].to_vec())
            }
            Side::Suffix => {
                let target = self.first().unwrap().complement();
                let j = self.0.iter().position(|&l| l == target).unwrap();
                BinaryWord(self.0[j + 1..].to_vec())
            }
        })
    }

    /// `v₊`.
    pub fn plus_prefix(&self) -> Result<BinaryWord> {
        self.plus(Side::Prefix)
    }

    /// `₊v`.
    pub fn plus_suffix(&self) -> Result<BinaryWord> {
        self.plus(Side::Suffix)
    }

    pub fn is_lyndon(&self) -> Result<bool> {
        if self.is_empty() {
            return Err(Error::EmptyWord { op: "is_lyndon" });
        }
        Ok((1..self.len()).all(|i| self.0[..] < self.0[i..]))
    }

    pub fn iter(&self) -> impl Iterator<Item = Letter> + '_ {
        self.0.iter().copied()
    }

    /// All words of length `n` in lexicographic order.
    pub fn all_of_length(n: usize) -> impl Iterator<Item = BinaryWord> {
        assert!(n < usize::BITS as usize, "length too large to enumerate");
        (0..(1usize << n)).map(move |bits| {
            BinaryWord((0..n).map(|i| if bits >> (n - 1 - i) & 1 == 1 { Letter::B } else { Letter::A }).collect())
        })
    }

    /// All words of length at most `n`, shortest first.
    pub fn all_up_to(n: usize) -> impl Iterator<Item = BinaryWord> {
        (0..=n).flat_map(BinaryWord::all_of_length)
    }
}

impl Index<usize> for BinaryWord {
    type Output = Letter;
    fn index(&self, i: usize) -> &Letter {
        &self.0[i]
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "ε")
        } else {
            write!(f, "{self}")
        }
    }
}

impl FromStr for BinaryWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        BinaryWord::parse(s)
    }
}

impl From<Letter> for BinaryWord {
    fn from(l: Letter) -> Self {
        BinaryWord(vec![l])
    }
}

impl FromIterator<Letter> for BinaryWord {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        BinaryWord(iter.into_iter().collect())
    }
}

impl Serialize for BinaryWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BinaryWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        BinaryWord::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Shorthand for tests and examples; panics on characters outside `{a, b}`.
pub fn w(s: &str) -> BinaryWord {
    BinaryWord::parse(s).expect("word literal over {a, b}")
}

pub(crate) fn is_palindrome<T: PartialEq>(s: &[T]) -> bool {
    let n = s.len();
    (0..n / 2).all(|i| s[i] == s[n - 1 - i])
}

pub(crate) fn has_period<T: PartialEq>(s: &[T], p: usize) -> bool {
    p >= 1 && (p >= s.len() || s.iter().zip(&s[p..]).all(|(x, y)| x == y))
}

pub(crate) fn minimal_period<T: PartialEq>(s: &[T]) -> usize {
    (1..=s.len().max(1)).find(|&p| has_period(s, p)).unwrap()
}

/// Run-length encoding of a nonempty word: `v = x_0^{α_0} ⋯ x_n^{α_n}`
/// with consecutive letters distinct.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralRepresentation {
    pub first_letter: Letter,
    pub exponents: Vec<usize>,
}

impl IntegralRepresentation {
    pub fn extension(&self) -> usize {
        self.exponents.len()
    }

    /// Letter of the `i`-th run.
    pub fn letter(&self, i: usize) -> Letter {
        if i.is_multiple_of(2) {
            self.first_letter
        } else {
            self.first_letter.complement()
        }
    }

    pub fn to_word(&self) -> BinaryWord {
        let mut out = Vec::with_capacity(self.exponents.iter().sum());
        for (i, &e) in self.exponents.iter().enumerate() {
            out.extend(std::iter::repeat_n(self.letter(i), e));
        }
        BinaryWord(out)
    }
}

impl Serialize for Letter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_char(self.as_char())
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let c = char::deserialize(d)?;
        Letter::from_char(c).ok_or_else(|| serde::de::Error::custom(format!("not a letter: {c:?}")))
    }
}

/// The slope `|w|_b / |w|_a` kept as an unreduced pair of counts.
/// A zero denominator is the slope ∞. Equality compares the fractions.
#[derive(Debug, Clone, Copy)]
pub struct Slope {
    pub num: u64,
    pub den: u64,
}

impl Slope {
    pub fn new(num: u64, den: u64) -> Self {
        Slope { num, den }
    }

    pub fn is_infinite(&self) -> bool {
        self.den == 0
    }

    pub fn reduced(&self) -> Slope {
        if self.den == 0 {
            return Slope::new(1, 0);
        }
        let g = num_integer::gcd(self.num, self.den);
        Slope::new(self.num / g, self.den / g)
    }

    /// `(a+c)/(b+d)`.
    pub fn mediant(&self, other: &Slope) -> Slope {
        Slope::new(self.num + other.num, self.den + other.den)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        if self.den == 0 {
            None
        } else {
            Some(BigRational::new(self.num.into(), self.den.into()))
        }
    }
}

impl PartialEq for Slope {
    fn eq(&self, other: &Slope) -> bool {
        (self.num as u128) * (other.den as u128) == (other.num as u128) * (self.den as u128)
            && (self.den == 0) == (other.den == 0)
    }
}

impl Eq for Slope {}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Slope) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Slope {
    fn cmp(&self, other: &Slope) -> Ordering {
        match (self.den == 0, other.den == 0) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            _ => ((self.num as u128) * (other.den as u128)).cmp(&((other.num as u128) * (self.den as u128))),
        }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 0 {
            write!(f, "inf")
        } else {
            let r = self.reduced();
            write!(f, "{}/{}", r.num, r.den)
        }
    }
}

impl Serialize for Slope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let r = self.reduced();
        let mut st = s.serialize_struct("Slope", 2)?;
        st.serialize_field("num", &r.num)?;
        st.serialize_field("den", &r.den)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_examples() {
        assert_eq!(w("").complement(), w(""));
        assert_eq!(w("abba").complement(), w("baab"));
        assert_eq!(w("aabaaabaa").complement(), w("bbabbbabb"));
    }

    #[test]
    fn reversal_examples() {
        assert_eq!(w("").reversal(), w(""));
        assert_eq!(w("ab").reversal(), w("ba"));
        assert_eq!(w("aabaaabaa").reversal(), w("aabaaabaa"));
    }

    #[test]
    fn slope_examples() {
        assert_eq!(w("aaabaaabaab").slope().unwrap(), Slope::new(3, 8));
        assert!(w("b").slope().unwrap().is_infinite());
        assert_eq!(w("ab").slope().unwrap(), Slope::new(1, 1));
        assert_eq!(w("").slope(), Err(Error::EmptyWord { op: "slope" }));
        assert_eq!(w("aabb").slope().unwrap().to_string(), "1/1");
        assert_eq!(w("bb").slope().unwrap().to_string(), "inf");
    }

    #[test]
    fn standard_interpretation_examples() {
        assert_eq!(w("babba").standard_interpretation(), BigUint::from(22u32));
        assert_eq!(w("a").standard_interpretation(), BigUint::from(0u32));
        assert_eq!(w("baababb").standard_interpretation(), BigUint::from(75u32));
        assert_eq!(w("").standard_interpretation(), BigUint::from(0u32));
        // beyond 64 bits
        let long = BinaryWord::power_of(Letter::B, 100);
        assert_eq!(long.standard_interpretation(), (BigUint::from(1u32) << 100usize) - 1u32);
    }

    #[test]
    fn integral_representation_examples() {
        let r = w("aabab").integral_representation().unwrap();
        assert_eq!(r.first_letter, Letter::A);
        assert_eq!(r.exponents, vec![2, 1, 1, 1]);
        assert_eq!(r.extension(), 4);

        let r = w("aaabbababbabaaba").integral_representation().unwrap();
        assert_eq!(r.exponents, vec![3, 2, 1, 1, 1, 2, 1, 1, 2, 1, 1]);
        assert_eq!(r.extension(), 11);

        let r = w("b").integral_representation().unwrap();
        assert_eq!((r.first_letter, r.exponents), (Letter::B, vec![1]));

        assert!(w("").integral_representation().is_err());
        assert_eq!(w("").extension(), 0);
    }

    #[test]
    fn minimal_period_examples() {
        assert_eq!(w("").minimal_period(), 1);
        assert_eq!(w("aabaa").minimal_period(), 3);
        assert_eq!(w("abaabaaba").minimal_period(), 3);
        assert_eq!(w("ab").minimal_period(), 2);
    }

    #[test]
    fn alternation_examples() {
        assert_eq!(w("ababa").classify_alternation().unwrap(), Alternation::Alternating);
        assert_eq!(w("abbab").classify_alternation().unwrap(), Alternation::QuasiAlternating);
        assert_eq!(w("aabab").classify_alternation().unwrap(), Alternation::QuasiAlternating);
        assert_eq!(w("aabb").classify_alternation().unwrap(), Alternation::Neither);
        assert!(w("").classify_alternation().is_err());
    }

    #[test]
    fn truncate_examples() {
        assert_eq!(w("abbabab").truncate(End::Last).unwrap(), w("abbaba"));
        assert_eq!(w("abbabab").truncate(End::First).unwrap(), w("bbabab"));
        assert_eq!(w("a").truncate(End::Last).unwrap(), w(""));
        assert!(w("").truncate(End::First).is_err());
    }

    #[test]
    fn plus_operator_examples() {
        assert_eq!(w("abbabab").plus_prefix().unwrap(), w("abbab"));
        assert_eq!(w("abbabab").plus_suffix().unwrap(), w("babab"));
        assert_eq!(w("abbaab").plus_suffix().unwrap(), w("baab"));
        assert!(matches!(w("aaa").plus_prefix(), Err(Error::ConstantWord { .. })));
        assert!(matches!(w("").plus_suffix(), Err(Error::EmptyWord { .. })));
    }

    #[test]
    fn lyndon_examples() {
        assert!(w("aaab").is_lyndon().unwrap());
        assert!(!w("aba").is_lyndon().unwrap());
        assert!(w("a").is_lyndon().unwrap());
        assert!(w("aabab").is_lyndon().unwrap());
        assert!(!w("abab").is_lyndon().unwrap());
        assert!(w("").is_lyndon().is_err());
    }

    #[test]
    fn parse_errors_carry_position() {
        assert_eq!(BinaryWord::parse("abxa"), Err(Error::InvalidLetter { position: 2, found: 'x' }));
        assert_eq!(BinaryWord::parse_run_length("a2b1a1b2").unwrap(), w("aababb"));
        assert_eq!(BinaryWord::parse_run_length("ab3").unwrap(), w("abbb"));
        assert!(BinaryWord::parse_run_length("a0").is_err());
    }

    #[test]
    fn involutions_commute_exhaustive() {
        for v in BinaryWord::all_up_to(12) {
            assert_eq!(v.complement().complement(), v);
            assert_eq!(v.reversal().reversal(), v);
            assert_eq!(v.complement().reversal(), v.reversal().complement());
        }
    }

    #[test]
    fn integral_representation_round_trips() {
        for v in BinaryWord::all_up_to(14).filter(|v| !v.is_empty()) {
            let r = v.integral_representation().unwrap();
            assert_eq!(r.to_word(), v);
            assert_eq!(r.extension(), v.extension());
        }
    }

    #[test]
    fn factors_inherit_periods() {
        for v in BinaryWord::all_up_to(10) {
            for p in (1..=v.len()).filter(|&p| v.has_period(p)) {
                for i in 0..v.len() {
                    for j in i + 1..=v.len() {
                        assert!(v.slice(i..j).has_period(p), "{v:?} p={p} [{i},{j})");
                    }
                }
            }
        }
    }

    #[test]
    fn plus_operator_mirror_identities() {
        for v in BinaryWord::all_up_to(12).filter(|v| !v.is_constant()) {
            let e = v.complement();
            assert_eq!(e.plus_suffix().unwrap(), v.plus_suffix().unwrap().complement());
            assert_eq!(e.plus_prefix().unwrap(), v.plus_prefix().unwrap().complement());
            assert_eq!(v.plus_suffix().unwrap().reversal(), v.reversal().plus_prefix().unwrap());
        }
    }

    #[test]
    fn alternation_matches_extension() {
        for v in BinaryWord::all_up_to(12).filter(|v| !v.is_empty()) {
            let alt = v.classify_alternation().unwrap();
            assert_eq!(alt == Alternation::Alternating, v.extension() == v.len());
            assert_eq!(alt == Alternation::QuasiAlternating, v.extension() + 1 == v.len());
        }
    }

    #[test]
    fn lexicographic_order() {
        assert!(w("a") < w("ab"));
        assert!(w("aab") < w("ab"));
        assert!(w("") < w("a"));
        let all: Vec<_> = BinaryWord::all_of_length(3).collect();
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
    }
}
