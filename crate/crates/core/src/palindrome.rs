//! Right palindromic closure, the palindromization map ψ and its inverse,
//! recognition of central words and their periods.

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{BinaryWord, Letter};

/// KMP failure function over an arbitrary symbol sequence.
pub(crate) fn failure_function<T: PartialEq>(s: &[T]) -> Vec<usize> {
    let mut fail = vec![0usize; s.len()];
    let mut k = 0;
    for i in 1..s.len() {
        while k > 0 && s[i] != s[k] {
            k = fail[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        fail[i] = k;
    }
    fail
}

/// `rev(w) # w`: borders ending at the last position are the palindromic
/// suffixes of `w`. Symbols are `Some(letter)` with `None` as separator.
fn mirror_sequence(first: &[Letter], second: &[Letter]) -> Vec<Option<Letter>> {
    first.iter().map(|&l| Some(l)).chain(std::iter::once(None)).chain(second.iter().map(|&l| Some(l))).collect()
}

/// Length of the longest palindromic suffix of `w` (0 only for ε).
pub fn longest_palindromic_suffix_len(w: &BinaryWord) -> usize {
    if w.is_empty() {
        return 0;
    }
    let rev: Vec<Letter> = w.letters().iter().rev().copied().collect();
    let seq = mirror_sequence(&rev, w.letters());
    *failure_function(&seq).last().unwrap()
}

/// Lengths of all palindromic prefixes of `w`, increasing, starting with 0.
pub fn palindromic_prefix_lengths(w: &BinaryWord) -> Vec<usize> {
    let rev: Vec<Letter> = w.letters().iter().rev().copied().collect();
    let seq = mirror_sequence(w.letters(), &rev);
    let fail = failure_function(&seq);
    let mut lens = vec![0];
    let mut k = *fail.last().unwrap();
    while k > 0 {
        lens.push(k);
        k = fail[k - 1];
    }
    lens.sort_unstable();
    lens
}

/// `w^(+)`, the shortest palindrome having `w` as a prefix.
pub fn palindromic_closure(w: &BinaryWord) -> BinaryWord {
    let q = longest_palindromic_suffix_len(w);
    let head = w.prefix(w.len() - q);
    let mut out = w.clone();
    out.extend_from(&head.reversal());
    out
}

/// ψ(v): iterated right palindromic closure.
pub fn psi(v: &BinaryWord) -> BinaryWord {
    let mut acc = BinaryWord::empty();
    for x in v.iter() {
        acc = psi_step(&acc, x);
    }
    acc
}

/// `(ψ(u)x)^(+)` given `ψ(u)`.
pub fn psi_step(central: &BinaryWord, x: Letter) -> BinaryWord {
    let mut t = central.clone();
    t.push(x);
    palindromic_closure(&t)
}

/// All of ψ(ε), ψ(v_1), …, ψ(v).
pub fn psi_prefixes(v: &BinaryWord) -> Vec<BinaryWord> {
    let mut out = Vec::with_capacity(v.len() + 1);
    out.push(BinaryWord::empty());
    for x in v.iter() {
        let next = psi_step(out.last().unwrap(), x);
        out.push(next);
    }
    out
}

/// The directive word of a central word: the letters following each
/// palindromic prefix, checked by re-running ψ.
pub fn psi_inverse(w: &BinaryWord) -> Result<BinaryWord> {
    if !w.is_palindrome() {
        return Err(Error::NotCentral(w.to_string()));
    }
    let lens = palindromic_prefix_lengths(w);
    let directive: BinaryWord = lens[..lens.len() - 1].iter().map(|&l| w[l]).collect();
    if psi(&directive) == *w {
        Ok(directive)
    } else {
        Err(Error::NotCentral(w.to_string()))
    }
}

/// Periods of `w` in increasing order, from its borders. Every `p > |w|`
/// is also a period and is not listed.
pub fn periods(w: &BinaryWord) -> Vec<usize> {
    let n = w.len();
    if n == 0 {
        return Vec::new();
    }
    let fail = failure_function(w.letters());
    let mut out = vec![n];
    let mut k = fail[n - 1];
    while k > 0 {
        out.push(n - k);
        k = fail[k - 1];
    }
    out.sort_unstable();
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentralAnalysis {
    pub is_central: bool,
    pub directive: Option<BinaryWord>,
    /// Coprime periods `(p, q)`, `p <= q`, `|w| = p + q - 2`, `p = π(w)`.
    pub periods: Option<(usize, usize)>,
}

/// Decides membership in PER from the two-period definition.
pub fn is_central(w: &BinaryWord) -> CentralAnalysis {
    let n = w.len();
    let ps = periods(w);
    let is_period = |p: usize| p > n || ps.binary_search(&p).is_ok();
    let pair = (1..=(n + 2) / 2).map(|p| (p, n + 2 - p)).find(|&(p, q)| p.gcd(&q) == 1 && is_period(p) && is_period(q));
    match pair {
        None => CentralAnalysis { is_central: false, directive: None, periods: None },
        Some((p, q)) => {
            let directive = psi_inverse(w).expect("two-period words are ψ-images");
            debug_assert!(matches_structure(w, p, q) || matches_structure(w, q, p));
            CentralAnalysis { is_central: true, directive: Some(directive), periods: Some((p, q)) }
        }
    }
}

/// `w` is constant, or `w = w1·ab·w2 = w2·ba·w1` with `|w1| = p-2`,
/// `|w2| = q-2`.
pub fn matches_structure(w: &BinaryWord, p: usize, q: usize) -> bool {
    if w.is_constant() {
        return true;
    }
    if p < 2 || q < 2 || p + q - 2 != w.len() {
        return false;
    }
    let (l1, l2) = (p - 2, q - 2);
    let w1 = w.prefix(l1);
    let w2 = w.suffix_from(l1 + 2);
    let left = w1.concat(&BinaryWord::parse("ab").unwrap()).concat(&w2);
    let right = w2.concat(&BinaryWord::parse("ba").unwrap()).concat(&w1);
    debug_assert_eq!(w2.len(), l2);
    left == *w && right == *w
}

/// Lengths `|μ_v(a)|`, `|μ_v(b)|` via the incidence matrix of μ_v.
pub fn period_lengths(v: &BinaryWord) -> (BigUint, BigUint) {
    // m[i][j] = number of letter i in the image of letter j
    let one = || BigUint::from(1u32);
    let zero = || BigUint::from(0u32);
    let mut m = [[one(), zero()], [zero(), one()]];
    for x in v.iter() {
        // right-multiply by the matrix of μ_x
        m = match x {
            // μ_a: a -> a, b -> ab  => [[1,1],[0,1]]
            Letter::A => [[m[0][0].clone(), &m[0][0] + &m[0][1]], [m[1][0].clone(), &m[1][0] + &m[1][1]]],
            // μ_b: a -> ba, b -> b  => [[1,0],[1,1]]
            Letter::B => [[&m[0][0] + &m[0][1], m[0][1].clone()], [&m[1][0] + &m[1][1], m[1][1].clone()]],
        };
    }
    let pa = &m[0][0] + &m[1][0];
    let pb = &m[0][1] + &m[1][1];
    (pa, pb)
}

/// `p_x(v)` for a single letter.
pub fn period_length(v: &BinaryWord, x: Letter) -> BigUint {
    let (pa, pb) = period_lengths(v);
    match x {
        Letter::A => pa,
        Letter::B => pb,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodSpectrum {
    /// Distinct minimal periods of the nonempty prefixes of ψ(v), increasing.
    pub periods: Vec<usize>,
    /// Arithmetic mean of `periods`.
    #[serde(serialize_with = "crate::serde_num::ratio_u64")]
    pub mean: Ratio<u64>,
}

pub fn prefix_period_spectrum(v: &BinaryWord) -> Result<PeriodSpectrum> {
    if v.is_empty() {
        return Err(Error::EmptyWord { op: "prefix_period_spectrum" });
    }
    let c = psi(v);
    let fail = failure_function(c.letters());
    let mut periods: Vec<usize> = (0..c.len()).map(|i| i + 1 - fail[i]).collect();
    periods.sort_unstable();
    periods.dedup();
    let sum: u64 = periods.iter().map(|&p| p as u64).sum();
    let mean = Ratio::new(sum, periods.len() as u64);
    Ok(PeriodSpectrum { periods, mean })
}
