//! Nonerasing endomorphisms of `{a,b}*`: the μ and λ families, composition,
//! and unique decoding over two-element codes.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::palindrome::psi_inverse;
use crate::word::{BinaryWord, Letter};

/// A morphism given by the images of `a` and `b`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Morphism {
    pub image_a: BinaryWord,
    pub image_b: BinaryWord,
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[a -> {}, b -> {}]", self.image_a, self.image_b)
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Morphism {
    /// Fails when either image is empty.
    pub fn new(image_a: BinaryWord, image_b: BinaryWord) -> Result<Self> {
        if image_a.is_empty() || image_b.is_empty() {
            return Err(Error::EmptyWord { op: "morphism image" });
        }
        Ok(Morphism { image_a, image_b })
    }

    fn raw(a: &str, b: &str) -> Self {
        Morphism { image_a: BinaryWord::parse(a).unwrap(), image_b: BinaryWord::parse(b).unwrap() }
    }

    pub fn identity() -> Self {
        Self::raw("a", "b")
    }

    /// The exchange morphism E.
    pub fn exchange() -> Self {
        Self::raw("b", "a")
    }

    /// μ_x: x ↦ x, y ↦ xy.
    pub fn mu(x: Letter) -> Self {
        match x {
            Letter::A => Self::raw("a", "ab"),
            Letter::B => Self::raw("ba", "b"),
        }
    }

    /// λ_a = μ_a; λ_b: a ↦ ab, b ↦ b.
    pub fn lambda(x: Letter) -> Self {
        match x {
            Letter::A => Self::raw("a", "ab"),
            Letter::B => Self::raw("ab", "b"),
        }
    }

    /// φ_k = λ_{a^k b}: a ↦ a^{k+1}b, b ↦ a^k b.
    pub fn phi(k: usize) -> Self {
        lambda_of(&BinaryWord::power_of(Letter::A, k).concat(&Letter::B.into()))
    }

    /// φ̂_k = λ_{b^k a}: a ↦ ab^k, b ↦ ab^{k+1}.
    pub fn phi_hat(k: usize) -> Self {
        lambda_of(&BinaryWord::power_of(Letter::B, k).concat(&Letter::A.into()))
    }

    /// μ_{a^k b}: a ↦ a^k ba, b ↦ a^k b.
    pub fn mu_k(k: usize) -> Self {
        mu_of(&BinaryWord::power_of(Letter::A, k).concat(&Letter::B.into()))
    }

    /// μ_{b^k a}: a ↦ b^k a, b ↦ b^k ab.
    pub fn mu_hat_k(k: usize) -> Self {
        mu_of(&BinaryWord::power_of(Letter::B, k).concat(&Letter::A.into()))
    }

    pub fn image(&self, x: Letter) -> &BinaryWord {
        match x {
            Letter::A => &self.image_a,
            Letter::B => &self.image_b,
        }
    }

    pub fn apply(&self, w: &BinaryWord) -> BinaryWord {
        apply(self, w)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Morphism) -> Morphism {
        compose(self, other)
    }
}

pub fn apply(m: &Morphism, w: &BinaryWord) -> BinaryWord {
    let mut out = BinaryWord::empty();
    for x in w.iter() {
        out.extend_from(m.image(x));
    }
    out
}

/// `f ∘ g`.
pub fn compose(f: &Morphism, g: &Morphism) -> Morphism {
    Morphism { image_a: apply(f, &g.image_a), image_b: apply(f, &g.image_b) }
}

/// μ_v = μ_{v_1} ∘ ⋯ ∘ μ_{v_n}.
pub fn mu_of(v: &BinaryWord) -> Morphism {
    v.iter().fold(Morphism::identity(), |m, x| compose(&m, &Morphism::mu(x)))
}

/// λ_v = λ_{v_1} ∘ ⋯ ∘ λ_{v_n}.
pub fn lambda_of(v: &BinaryWord) -> Morphism {
    v.iter().fold(Morphism::identity(), |m, x| compose(&m, &Morphism::lambda(x)))
}

/// Decoding strategy certified for an image pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CodeKind {
    PrefixCode,
    SuffixCode,
    BoundedDelay,
}

fn is_prefix_code(x: &BinaryWord, y: &BinaryWord) -> bool {
    x != y && !x.starts_with(y) && !y.starts_with(x)
}

fn comparable(u: &BinaryWord, v: &BinaryWord) -> bool {
    u.starts_with(v) || v.starts_with(u)
}

/// One codeword of lookahead always separates the two possible choices.
fn has_delay_one(x: &BinaryWord, y: &BinaryWord) -> bool {
    if x == y {
        return false;
    }
    let follow = [None, Some(x), Some(y)];
    for (c1, c2) in [(x, y), (y, x)] {
        for d1 in follow {
            for d2 in follow {
                let clash = match (d1, d2) {
                    (None, None) => false,
                    (None, Some(d2)) => c1.starts_with(&c2.concat(d2)),
                    (Some(d1), None) => c2.starts_with(&c1.concat(d1)),
                    (Some(d1), Some(d2)) => comparable(&c1.concat(d1), &c2.concat(d2)),
                };
                if clash {
                    return false;
                }
            }
        }
    }
    true
}

/// Classifies the image pair, preferring prefix, then suffix, then delay-1.
pub fn code_kind(m: &Morphism) -> Result<CodeKind> {
    let (x, y) = (&m.image_a, &m.image_b);
    if x.is_empty() || y.is_empty() {
        return Err(ambiguous(m));
    }
    if is_prefix_code(x, y) {
        Ok(CodeKind::PrefixCode)
    } else if is_prefix_code(&x.reversal(), &y.reversal()) {
        Ok(CodeKind::SuffixCode)
    } else if has_delay_one(x, y) {
        Ok(CodeKind::BoundedDelay)
    } else {
        Err(ambiguous(m))
    }
}

/// Whether the image pair passes the test for `kind`.
pub fn satisfies(m: &Morphism, kind: CodeKind) -> bool {
    let (x, y) = (&m.image_a, &m.image_b);
    if x.is_empty() || y.is_empty() {
        return false;
    }
    match kind {
        CodeKind::PrefixCode => is_prefix_code(x, y),
        CodeKind::SuffixCode => is_prefix_code(&x.reversal(), &y.reversal()),
        CodeKind::BoundedDelay => has_delay_one(x, y),
    }
}

fn ambiguous(m: &Morphism) -> Error {
    Error::AmbiguousCode(m.image_a.to_string(), m.image_b.to_string())
}

/// The unique `v` with `apply(m, v) = w`.
pub fn decode(m: &Morphism, w: &BinaryWord) -> Result<BinaryWord> {
    decode_with(m, w, code_kind(m)?)
}

/// Decodes with a forced strategy; the pair must pass the test for `kind`.
pub fn decode_with(m: &Morphism, w: &BinaryWord, kind: CodeKind) -> Result<BinaryWord> {
    if !satisfies(m, kind) {
        return Err(ambiguous(m));
    }
    let v = match kind {
        CodeKind::PrefixCode => greedy(m, w.letters())?,
        CodeKind::SuffixCode => {
            let rev = Morphism { image_a: m.image_a.reversal(), image_b: m.image_b.reversal() };
            let rw = w.reversal();
            greedy(&rev, rw.letters())
                .map_err(|e| match e {
                    Error::NotInCode { position } => Error::NotInCode { position: w.len() - position },
                    e => e,
                })?
                .reversal()
        }
        CodeKind::BoundedDelay => lookahead(m, w.letters())?,
    };
    debug_assert_eq!(apply(m, &v), *w);
    Ok(v)
}

fn matches_at(text: &[Letter], i: usize, c: &BinaryWord) -> bool {
    text.len() - i >= c.len() && text[i..i + c.len()] == *c.letters()
}

fn greedy(m: &Morphism, text: &[Letter]) -> Result<BinaryWord> {
    let mut out = BinaryWord::empty();
    let mut i = 0;
    while i < text.len() {
        let x = Letter::BOTH
            .into_iter()
            .find(|&x| matches_at(text, i, m.image(x)))
            .ok_or(Error::NotInCode { position: i })?;
        out.push(x);
        i += m.image(x).len();
    }
    Ok(out)
}

/// Choices at `i` that are followed by the end of the text or a codeword.
fn viable(m: &Morphism, text: &[Letter], i: usize) -> Vec<Letter> {
    Letter::BOTH
        .into_iter()
        .filter(|&x| {
            let c = m.image(x);
            if !matches_at(text, i, c) {
                return false;
            }
            let j = i + c.len();
            j == text.len() || Letter::BOTH.iter().any(|&y| matches_at(text, j, m.image(y)))
        })
        .collect()
}

fn lookahead(m: &Morphism, text: &[Letter]) -> Result<BinaryWord> {
    let mut out = BinaryWord::empty();
    let mut i = 0;
    while i < text.len() {
        let choices = viable(m, text, i);
        let [x] = choices[..] else {
            return Err(Error::NotInCode { position: i });
        };
        out.push(x);
        i += m.image(x).len();
    }
    Ok(out)
}

/// Left-to-right decoding of a prefix of an infinite word: decodes as far as
/// the available letters determine the factorization. Returns the decoded
/// word and the number of letters consumed.
pub fn decode_prefix(m: &Morphism, w: &BinaryWord) -> Result<(BinaryWord, usize)> {
    let kind = if satisfies(m, CodeKind::PrefixCode) {
        CodeKind::PrefixCode
    } else if satisfies(m, CodeKind::BoundedDelay) {
        CodeKind::BoundedDelay
    } else {
        return Err(ambiguous(m));
    };
    let text = w.letters();
    let longest = m.image_a.len().max(m.image_b.len());
    let mut out = BinaryWord::empty();
    let mut i = 0;
    loop {
        let rest = text.len() - i;
        let x = match kind {
            CodeKind::PrefixCode => match Letter::BOTH.into_iter().find(|&x| matches_at(text, i, m.image(x))) {
                Some(x) => x,
                None if rest < longest
                    && Letter::BOTH.iter().any(|&x| m.image(x).letters().starts_with(&text[i..])) =>
                {
                    break
                }
                None => return Err(Error::NotInCode { position: i }),
            },
            _ => {
                // need both choices and their successors fully visible
                if rest < 2 * longest {
                    break;
                }
                let mut choices = viable(m, text, i);
                // the end of the text is not the end of the word
                choices.retain(|&x| i + m.image(x).len() < text.len());
                match choices[..] {
                    [x] => x,
                    _ => return Err(Error::NotInCode { position: i }),
                }
            }
        };
        out.push(x);
        i += m.image(x).len();
        if i == text.len() {
            break;
        }
    }
    Ok((out, i))
}

/// Certificate for membership in the monoid generated by λ_a and λ_b.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChristoffelMorphismTest {
    pub is_christoffel: bool,
    pub directive: Option<BinaryWord>,
}

/// `f` preserves Christoffel words iff `f = λ_v`, where `f(ab) = aψ(v)b`.
pub fn is_christoffel_morphism(m: &Morphism) -> ChristoffelMorphismTest {
    let no = ChristoffelMorphismTest { is_christoffel: false, directive: None };
    let fab = m.image_a.concat(&m.image_b);
    if fab.len() < 2 || fab.first() != Some(Letter::A) || fab.last() != Some(Letter::B) {
        return no;
    }
    let Ok(v) = psi_inverse(&fab.slice(1..fab.len() - 1)) else {
        return no;
    };
    // f(a), f(b) must be the standard factorization, i.e. the images of λ_v
    if lambda_of(&v) == *m {
        ChristoffelMorphismTest { is_christoffel: true, directive: Some(v) }
    } else {
        no
    }
}
