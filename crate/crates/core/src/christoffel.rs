//! Lower Christoffel words: construction, recognition, the derivative ∂,
//! depth chains, the Lyndon standard factorization and slopes.

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::morphism::{decode, lambda_of, Morphism};
use crate::palindrome::{is_central, period_lengths, psi};
use crate::word::{BinaryWord, Letter, Side, Slope};

/// Words longer than this are never materialized from a slope.
pub const MAX_SLOPE_WORD_LEN: u64 = 1 << 26;

/// The lower Christoffel word of slope `p/q`: `|w|_b = p`, `|w|_a = q`.
pub fn from_slope(p: u64, q: u64) -> Result<BinaryWord> {
    if p + q == 0 || num_integer::gcd(p, q) != 1 {
        return Err(Error::InvalidSlope { p, q });
    }
    let n = p + q;
    if n > MAX_SLOPE_WORD_LEN {
        return Err(Error::LimitExceeded {
            what: "Christoffel word length",
            requested: usize::try_from(n).unwrap_or(usize::MAX),
            limit: MAX_SLOPE_WORD_LEN as usize,
        });
    }
    if p == 0 {
        return Ok(Letter::A.into());
    }
    let (p, n) = (p as u128, n as u128);
    let mut prev = 0u128;
    Ok((1..=n)
        .map(|i| {
            let cur = i * p % n;
            let x = if cur > prev { Letter::A } else { Letter::B };
            prev = cur;
            x
        })
        .collect())
}

/// `aψ(v)b`.
pub fn from_directive(v: &BinaryWord) -> BinaryWord {
    frame(&psi(v))
}

pub(crate) fn frame(u: &BinaryWord) -> BinaryWord {
    let mut out = BinaryWord::from(Letter::A);
    out.extend_from(u);
    out.push(Letter::B);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChristoffelAnalysis {
    pub is_christoffel: bool,
    pub is_proper: bool,
    pub directive: Option<BinaryWord>,
    /// First exponent of the directive's integral representation; 0 for `ab`.
    pub index: Option<usize>,
    /// `|w|_b / |w|_a`.
    pub slope: Option<Slope>,
}

/// Index of a directive word.
pub fn directive_index(v: &BinaryWord) -> usize {
    v.integral_representation().map(|r| r.exponents[0]).unwrap_or(0)
}

pub fn classify(w: &BinaryWord) -> Result<ChristoffelAnalysis> {
    if w.is_empty() {
        return Err(Error::EmptyWord { op: "christoffel classify" });
    }
    let not =
        ChristoffelAnalysis { is_christoffel: false, is_proper: false, directive: None, index: None, slope: None };
    if w.len() == 1 {
        return Ok(ChristoffelAnalysis { is_christoffel: true, slope: Some(w.slope()?), ..not });
    }
    if w.first() != Some(Letter::A) || w.last() != Some(Letter::B) {
        return Ok(not);
    }
    let central = is_central(&w.slice(1..w.len() - 1));
    let Some(v) = central.directive else {
        return Ok(not);
    };
    Ok(ChristoffelAnalysis {
        is_christoffel: true,
        is_proper: true,
        index: Some(directive_index(&v)),
        directive: Some(v),
        slope: Some(w.slope()?),
    })
}

pub fn is_christoffel(w: &BinaryWord) -> bool {
    classify(w).map(|c| c.is_christoffel).unwrap_or(false)
}

fn proper_directive(w: &BinaryWord) -> Result<BinaryWord> {
    match classify(w) {
        Ok(ChristoffelAnalysis { is_proper: true, directive: Some(v), .. }) => Ok(v),
        _ => Err(Error::NotChristoffel(w.to_string())),
    }
}

/// ∂w, computed by decoding over `{a^{k+1}b, a^k b}` or `{ab^k, ab^{k+1}}`.
pub fn derivative(w: &BinaryWord) -> Result<BinaryWord> {
    let v = proper_directive(w)?;
    Ok(derivative_of_directive(&v, w))
}

fn derivative_of_directive(v: &BinaryWord, w: &BinaryWord) -> BinaryWord {
    if v.is_empty() {
        return Letter::A.into();
    }
    let k = directive_index(v);
    let code = match v.first().unwrap() {
        Letter::A => Morphism::phi(k),
        Letter::B => Morphism::phi_hat(k),
    };
    decode(&code, w).expect("proper Christoffel words factor over their derivative code")
}

/// ∂w from the directive: `aψ(₊v)b`, or a letter when `v` is constant.
pub fn derivative_by_directive(w: &BinaryWord) -> Result<BinaryWord> {
    let v = proper_directive(w)?;
    if v.is_constant() {
        return Ok(v.first().unwrap_or(Letter::A).into());
    }
    Ok(from_directive(&v.plus(Side::Suffix)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivativeChain {
    /// `w, ∂w, ∂²w, …`, ending with a letter.
    pub words: Vec<BinaryWord>,
    pub depth: usize,
}

pub fn derivative_chain(w: &BinaryWord) -> Result<DerivativeChain> {
    let mut words = vec![w.clone()];
    let mut cur = derivative(w)?;
    while cur.len() > 1 {
        let next = derivative(&cur)?;
        words.push(std::mem::replace(&mut cur, next));
    }
    words.push(cur);
    let depth = words.len() - 1;
    Ok(DerivativeChain { words, depth })
}

/// The unique split `w = w1·w2` into Christoffel words, `w1 <_lex w2`.
pub fn lyndon_factorization(w: &BinaryWord) -> Result<(BinaryWord, BinaryWord)> {
    let v = proper_directive(w)?;
    let (w1, w2) = if v.is_constant() {
        // a^{k+1}b = a·a^k b,  ab^{k+1} = ab^k·b
        let split = if v.first() == Some(Letter::B) { w.len() - 1 } else { 1 };
        (w.prefix(split), w.suffix_from(split))
    } else {
        let plus = from_directive(&v.plus(Side::Prefix)?);
        let minus = from_directive(&v.truncate(crate::word::End::Last)?);
        match v.last().unwrap() {
            Letter::A => (plus, minus),
            Letter::B => (minus, plus),
        }
    };
    debug_assert_eq!(w1.concat(&w2), *w);
    debug_assert!(inverse_lengths_hold(w, w1.len(), w2.len()));
    Ok((w1, w2))
}

/// `|w1|·p ≡ 1` and `|w2|·q ≡ 1 (mod |w|)` with `p = |w|_b`, `q = |w|_a`.
pub fn inverse_lengths_hold(w: &BinaryWord, l1: usize, l2: usize) -> bool {
    let n = w.len() as u128;
    let (p, q) = (w.count(Letter::B) as u128, w.count(Letter::A) as u128);
    n == 2 || ((l1 as u128 * p) % n == 1 && (l2 as u128 * q) % n == 1)
}

/// Value of `[c0; c1, …, cn]`.
pub fn evaluate_cf(coeffs: &[usize]) -> Ratio<BigUint> {
    let mut it = coeffs.iter().rev();
    let Some(&last) = it.next() else {
        return Ratio::zero();
    };
    let mut x = Ratio::from_integer(BigUint::from(last));
    for &c in it {
        x = Ratio::from_integer(BigUint::from(c)) + x.recip();
    }
    x
}

/// Continued fraction of the slope of `aψ(v)b`.
pub fn slope_cf(v: &BinaryWord) -> Result<Vec<usize>> {
    let rep = v.integral_representation()?;
    let mut alpha = rep.exponents;
    *alpha.last_mut().unwrap() += 1;
    if rep.first_letter == Letter::A {
        alpha.insert(0, 0);
    }
    Ok(alpha)
}

/// Continued fraction of the slope of `∂aψ(v)b`.
pub fn derivative_slope_cf(v: &BinaryWord) -> Result<Vec<usize>> {
    let rep = v.integral_representation()?;
    if rep.exponents.len() < 2 {
        return Err(Error::ConstantWord { op: "derivative_slope_cf", word: v.to_string() });
    }
    let mut tail = rep.exponents[1..].to_vec();
    tail[0] -= 1;
    *tail.last_mut().unwrap() += 1;
    if rep.first_letter == Letter::B {
        tail.insert(0, 0);
    }
    Ok(tail)
}

/// Slope of `aψ(v)b` as `p_a(ṽ) / p_b(ṽ)`, without building the word.
pub fn slope_of_directive(v: &BinaryWord) -> Ratio<BigUint> {
    let (pa, pb) = period_lengths(&v.reversal());
    Ratio::new(pa, pb)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ratios {
    /// `p_a(v) / p_b(v)`, the Raney tree label.
    #[serde(serialize_with = "crate::serde_num::ratio")]
    pub raney: Ratio<BigUint>,
    /// Slope of `aψ(v)b`, the Stern–Brocot tree label.
    #[serde(serialize_with = "crate::serde_num::ratio")]
    pub stern_brocot: Ratio<BigUint>,
}

pub fn ratios(v: &BinaryWord) -> Result<Ratios> {
    if v.is_empty() {
        return Err(Error::EmptyWord { op: "ratios" });
    }
    let (pa, pb) = period_lengths(v);
    Ok(Ratios { raney: Ratio::new(pa, pb), stern_brocot: slope_of_directive(v) })
}

/// Rebuilds `w` from its first directive letter, `|w|` and `|∂w|`.
pub fn from_derivative_length(first: Letter, len: usize, derivative_len: usize) -> Result<BinaryWord> {
    if derivative_len == 0 || derivative_len >= len {
        return Err(Error::OutOfRange(format!("|∂w| = {derivative_len} with |w| = {len}")));
    }
    let rest = (len - derivative_len) as u64;
    let d = derivative_len as u64;
    let w = match first {
        Letter::A => from_slope(d, rest)?,
        Letter::B => from_slope(rest, d)?,
    };
    Ok(w)
}

/// Convenience: `λ_v(ab)`.
pub fn via_lambda(v: &BinaryWord) -> BinaryWord {
    lambda_of(v).apply(&BinaryWord::parse("ab").unwrap())
}

pub(crate) fn ratio_of(num: usize, den: usize) -> Ratio<BigUint> {
    Ratio::new(BigUint::from(num), BigUint::from(den))
}
