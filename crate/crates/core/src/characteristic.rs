//! Infinite characteristic words `ψ(x)` generated lazily from a directive
//! stream `x`, with the derivative acting on directives.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;
use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::christoffel::evaluate_cf;
use crate::error::{Error, Result};
use crate::morphism::{decode_prefix, Morphism};
use crate::word::{BinaryWord, Letter};

/// Default cap on the length of a generated prefix.
pub const DEFAULT_PREFIX_CAP: usize = 1_000_000;

type Rule = Arc<dyn Fn(usize) -> Letter + Send + Sync>;

/// A directive read from a rule `i ↦ x_i`, defined only below `cap`.
#[derive(Clone)]
pub struct Generator {
    label: String,
    rule: Rule,
    offset: usize,
    cap: usize,
}

impl Generator {
    pub fn new(label: impl Into<String>, cap: usize, rule: impl Fn(usize) -> Letter + Send + Sync + 'static) -> Self {
        Generator { label: label.into(), rule: Arc::new(rule), offset: 0, cap }
    }

    fn letter(&self, i: usize) -> Result<Letter> {
        let at = self.offset + i;
        if at >= self.cap {
            return Err(Error::LimitExceeded { what: "generator directive position", requested: at, limit: self.cap });
        }
        Ok((self.rule)(at))
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Generator")
            .field("label", &self.label)
            .field("offset", &self.offset)
            .field("cap", &self.cap)
            .finish()
    }
}

/// An infinite directive word in which both letters occur infinitely often.
#[derive(Clone, Debug)]
pub enum DirectiveStream {
    /// `u q^ω`, kept with the shortest preperiod and a primitive period.
    UltimatelyPeriodic {
        preperiod: BinaryWord,
        period: BinaryWord,
    },
    Generator(Generator),
}

impl PartialEq for DirectiveStream {
    fn eq(&self, other: &Self) -> bool {
        use DirectiveStream::*;
        match (self, other) {
            (UltimatelyPeriodic { preperiod: u, period: q }, UltimatelyPeriodic { preperiod: u2, period: q2 }) => {
                u == u2 && q == q2
            }
            (Generator(g), Generator(h)) => Arc::ptr_eq(&g.rule, &h.rule) && g.offset == h.offset,
            _ => false,
        }
    }
}

impl DirectiveStream {
    pub fn ultimately_periodic(preperiod: BinaryWord, period: BinaryWord) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidStream("period must be nonempty".into()));
        }
        let p = period.minimal_period();
        let mut q: Vec<Letter> =
            if period.len().is_multiple_of(p) { period.letters()[..p].to_vec() } else { period.into_letters() };
        if q.iter().all(|&x| x == q[0]) {
            return Err(Error::InvalidStream("period must contain both letters".into()));
        }
        let mut u = preperiod.into_letters();
        while let (Some(&x), Some(&y)) = (u.last(), q.last()) {
            if x != y {
                break;
            }
            u.pop();
            q.rotate_right(1);
        }
        Ok(DirectiveStream::UltimatelyPeriodic {
            preperiod: BinaryWord::from_letters(u),
            period: BinaryWord::from_letters(q),
        })
    }

    /// `(ab)^ω`, the directive of the Fibonacci word.
    pub fn fibonacci() -> Self {
        Self::ultimately_periodic(BinaryWord::empty(), "ab".parse().unwrap()).unwrap()
    }

    /// `a b a² b a³ b …`, whose runs of `a` grow without bound.
    pub fn unbounded_runs(cap: usize) -> Self {
        DirectiveStream::Generator(Generator::new("aba2ba3b...", cap, |mut i| {
            let mut n = 1;
            loop {
                if i < n {
                    return Letter::A;
                }
                if i == n {
                    return Letter::B;
                }
                i -= n + 1;
                n += 1;
            }
        }))
    }

    pub fn is_ultimately_periodic(&self) -> bool {
        matches!(self, DirectiveStream::UltimatelyPeriodic { .. })
    }

    pub fn letter(&self, i: usize) -> Result<Letter> {
        match self {
            DirectiveStream::UltimatelyPeriodic { preperiod: u, period: q } => {
                Ok(if i < u.len() { u[i] } else { q[(i - u.len()) % q.len()] })
            }
            DirectiveStream::Generator(g) => g.letter(i),
        }
    }

    /// `x[n]`.
    pub fn directive_prefix(&self, n: usize) -> Result<BinaryWord> {
        (0..n).map(|i| self.letter(i)).collect()
    }

    /// Position just past the first letter of the second run.
    fn second_run_start(&self) -> Result<(usize, usize)> {
        let x0 = self.letter(0)?;
        let mut i = 1;
        while self.letter(i)? == x0 {
            i += 1;
        }
        Ok((i, i + 1))
    }
}

impl fmt::Display for DirectiveStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DirectiveStream::UltimatelyPeriodic { preperiod, period } => write!(f, "{preperiod}|{period}"),
            DirectiveStream::Generator(g) if g.offset == 0 => write!(f, "{}", g.label),
            DirectiveStream::Generator(g) => write!(f, "{} from {}", g.label, g.offset),
        }
    }
}

impl FromStr for DirectiveStream {
    type Err = Error;

    /// `"u|q"` stands for `u q^ω`.
    fn from_str(s: &str) -> Result<Self> {
        let (u, q) = s.split_once('|').ok_or_else(|| Error::InvalidStream(format!("expected \"u|q\", got {s:?}")))?;
        Self::ultimately_periodic(BinaryWord::parse(u.trim())?, BinaryWord::parse(q.trim())?)
    }
}

impl Serialize for DirectiveStream {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharacteristicPrefix {
    pub word: BinaryWord,
    pub source: DirectiveStream,
    /// Directive letters read before `word` reached the requested length.
    pub directive_consumed: BinaryWord,
}

pub fn prefix(s: &DirectiveStream, n: usize) -> Result<CharacteristicPrefix> {
    prefix_with_cap(s, n, DEFAULT_PREFIX_CAP)
}

/// Length-`n` prefix of `ψ(s)` by successive palindromic closures.
pub fn prefix_with_cap(s: &DirectiveStream, n: usize, cap: usize) -> Result<CharacteristicPrefix> {
    if n > cap {
        return Err(Error::LimitExceeded { what: "characteristic prefix length", requested: n, limit: cap });
    }
    let mut word: Vec<Letter> = Vec::with_capacity(n);
    let mut consumed = BinaryWord::empty();
    // |ψ(w1)| where w = w1 x w2 and w2 avoids x
    let mut before_last = [None::<usize>; 2];
    while word.len() < n {
        let x = s.letter(consumed.len())?;
        let old = word.len();
        // the closure of ψ(w)x is ψ(w) followed by a suffix of ψ(w), or by xψ(w)
        match before_last[x.bit() as usize] {
            None => {
                word.push(x);
                word.extend_from_within(..old.min(n.saturating_sub(old + 1)));
            }
            Some(start) => {
                let end = old.min(start + (n - old));
                word.extend_from_within(start..end);
            }
        }
        before_last[x.bit() as usize] = Some(old);
        consumed.push(x);
    }
    word.truncate(n);
    Ok(CharacteristicPrefix { word: BinaryWord::from_letters(word), source: s.clone(), directive_consumed: consumed })
}

/// Length of the first run of the directive.
pub fn index(s: &DirectiveStream) -> Result<usize> {
    Ok(s.second_run_start()?.0)
}

/// Directive of `Ds`: `x^k y^h ξ ↦ y^{h−1} ξ`.
pub fn derivative_stream(s: &DirectiveStream) -> Result<DirectiveStream> {
    let (_, cut) = s.second_run_start()?;
    match s {
        DirectiveStream::UltimatelyPeriodic { preperiod: u, period: q } => {
            if cut <= u.len() {
                DirectiveStream::ultimately_periodic(u.suffix_from(cut), q.clone())
            } else {
                let mut letters = q.letters().to_vec();
                letters.rotate_left((cut - u.len()) % q.len());
                DirectiveStream::ultimately_periodic(BinaryWord::empty(), BinaryWord::from_letters(letters))
            }
        }
        DirectiveStream::Generator(g) => {
            let mut g = g.clone();
            g.offset += cut;
            Ok(DirectiveStream::Generator(g))
        }
    }
}

/// Checks on the first `n` letters that `s` factors over the code of its
/// index, that the decoded word is a prefix of `Ds`, and that decoding over
/// the Christoffel code of the same index gives `bDs` (or `aDs` after
/// prepending `a` when `s` starts with `b`).
pub fn derivative_prefix_check(s: &DirectiveStream, n: usize) -> Result<bool> {
    let k = index(s)?;
    let first = s.letter(0)?;
    let sw = prefix(s, n)?.word;
    let ds = prefix(&derivative_stream(s)?, n)?.word;

    let (mu, phi) = match first {
        Letter::A => (Morphism::mu_k(k), Morphism::phi(k)),
        Letter::B => (Morphism::mu_hat_k(k), Morphism::phi_hat(k)),
    };
    let (decoded, used) = decode_prefix(&mu, &sw)?;
    let longest = mu.image_a.len().max(mu.image_b.len());
    if used + 2 * longest < n || mu.apply(&decoded) != sw.prefix(used) || !ds.starts_with(&decoded) {
        return Ok(false);
    }

    let marker = BinaryWord::from(first.complement());
    let text = if first == Letter::A { sw } else { marker.concat(&sw) };
    let (decoded, used) = decode_prefix(&phi, &text)?;
    let longest = phi.image_a.len().max(phi.image_b.len());
    Ok(used + 2 * longest >= text.len() && marker.concat(&ds).starts_with(&decoded))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Stability {
    /// The `m`-th and `n`-th derivatives coincide.
    Stable { m: usize, n: usize },
    /// No repetition was established within `budget` derivations.
    Undecided { budget: usize },
}

/// Searches for `m < n` with `D^m s = D^n s`. Ultimately periodic directives
/// always repeat; generators cannot be compared and stay undecided.
pub fn is_stable(s: &DirectiveStream, budget: usize) -> Result<Stability> {
    if !s.is_ultimately_periodic() {
        for _ in 0..budget {
            // fails loudly if the generator is malformed within its cap
            derivative_stream(s)?;
        }
        return Ok(Stability::Undecided { budget });
    }
    let mut seen: HashMap<String, usize> = HashMap::new();
    let mut cur = s.clone();
    for step in 0..=budget.max(1) {
        if let Some(&m) = seen.get(&cur.to_string()) {
            return Ok(Stability::Stable { m, n: step });
        }
        seen.insert(cur.to_string(), step);
        cur = derivative_stream(&cur)?;
    }
    Ok(Stability::Undecided { budget })
}

/// First `terms` coefficients of the slope `|s|_b/|s|_a`: `[0; α0, α1, …]`
/// for an `a`-initial directive and `[α0; α1, …]` otherwise.
pub fn slope_cf_stream(s: &DirectiveStream, terms: usize) -> Result<Vec<usize>> {
    if terms == 0 {
        return Err(Error::OutOfRange("terms must be at least 1".into()));
    }
    let mut out = Vec::with_capacity(terms);
    if s.letter(0)? == Letter::A {
        out.push(0);
    }
    let mut i = 0;
    while out.len() < terms {
        let x = s.letter(i)?;
        let start = i;
        while s.letter(i)? == x {
            i += 1;
        }
        out.push(i - start);
    }
    Ok(out)
}

/// Exact value of a finite continued fraction.
pub fn convergent(coeffs: &[usize]) -> Ratio<BigUint> {
    evaluate_cf(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::mu_of;
    use crate::palindrome::{palindromic_prefix_lengths, psi, psi_prefixes};
    use crate::word::w;
    use num_traits::ToPrimitive;

    fn st(s: &str) -> DirectiveStream {
        s.parse().unwrap()
    }

    fn corpus() -> Vec<DirectiveStream> {
        let mut out = Vec::new();
        for u in BinaryWord::all_up_to(4) {
            for q in BinaryWord::all_up_to(4).filter(|q| !q.is_constant()) {
                out.push(DirectiveStream::ultimately_periodic(u.clone(), q).unwrap());
            }
        }
        out
    }

    #[test]
    fn parsing_and_normal_form() {
        assert_eq!(st("|ab"), DirectiveStream::fibonacci());
        assert_eq!(st("ab|abab"), DirectiveStream::fibonacci());
        assert_eq!(st("b|ab"), st("|ba"));
        assert_eq!(st("a|ab").to_string(), "a|ab");
        assert!("ab".parse::<DirectiveStream>().is_err());
        assert!("a|aa".parse::<DirectiveStream>().is_err());
        assert!("a|".parse::<DirectiveStream>().is_err());
        assert!("c|ab".parse::<DirectiveStream>().is_err());
    }

    #[test]
    fn prefix_examples() {
        assert_eq!(prefix(&DirectiveStream::fibonacci(), 13).unwrap().word, w("abaababaabaab"));
        assert_eq!(prefix(&st("a|ab"), 14).unwrap().word, w("aabaaabaabaaab"));
        assert_eq!(prefix(&st("|ab"), 0).unwrap().word, w(""));
        assert!(prefix(&st("|ab"), DEFAULT_PREFIX_CAP + 1).is_err());
        assert!(prefix(&DirectiveStream::unbounded_runs(5), 100).is_err());
    }

    #[test]
    fn prefix_matches_closure_and_morphism_routes() {
        for s in corpus() {
            for m in 1..9 {
                let v = s.directive_prefix(m).unwrap();
                let closed = psi(&v);
                let p = prefix(&s, closed.len()).unwrap();
                assert_eq!(p.word, closed);
                assert_eq!(p.directive_consumed, v);
                let x = s.letter(m).unwrap();
                let next = mu_of(&v).apply(&x.into()).concat(&closed);
                assert!(next.starts_with(&p.word));
                assert_eq!(prefix(&s, next.len()).unwrap().word, next);
            }
        }
    }

    #[test]
    fn prefixes_are_monotone_and_palindromic_prefixes_are_central() {
        for s in corpus().into_iter().step_by(7) {
            let long = prefix(&s, 300).unwrap();
            for n in 0..300 {
                assert!(long.word.starts_with(&prefix(&s, n).unwrap().word));
            }
            let centrals = psi_prefixes(&long.directive_consumed);
            for len in palindromic_prefix_lengths(&long.word) {
                assert!(centrals.iter().any(|c| c.len() == len), "{s}: {len}");
            }
        }
    }

    #[test]
    fn index_examples() {
        assert_eq!(index(&DirectiveStream::fibonacci()).unwrap(), 1);
        assert_eq!(index(&st("aaa|ba")).unwrap(), 3);
        assert_eq!(index(&st("bb|ab")).unwrap(), 2);
        assert_eq!(index(&DirectiveStream::unbounded_runs(100)).unwrap(), 1);
    }

    #[test]
    fn derivative_examples() {
        let f = DirectiveStream::fibonacci();
        assert_eq!(derivative_stream(&f).unwrap(), f);
        for k in 1..6 {
            let s = DirectiveStream::ultimately_periodic(BinaryWord::power_of(Letter::A, k), w("ab")).unwrap();
            assert_eq!(derivative_stream(&s).unwrap(), f);
        }
        let g = DirectiveStream::unbounded_runs(1000);
        let d = derivative_stream(&g).unwrap();
        assert_eq!(d.directive_prefix(6).unwrap(), w("aabaaa"));
    }

    #[test]
    fn derivative_matches_finite_plus() {
        for s in corpus() {
            let d = derivative_stream(&s).unwrap();
            let v = s.directive_prefix(30).unwrap();
            let plus = v.plus_suffix().unwrap();
            assert!(plus.starts_with(&d.directive_prefix(20).unwrap()), "{s}");
        }
    }

    #[test]
    fn prefix_check_examples() {
        assert!(derivative_prefix_check(&DirectiveStream::fibonacci(), 1000).unwrap());
        assert!(derivative_prefix_check(&st("a|ab"), 500).unwrap());
        assert!(derivative_prefix_check(&st("bb|ab"), 500).unwrap());
        assert!(derivative_prefix_check(&DirectiveStream::unbounded_runs(10_000), 500).unwrap());
    }

    #[test]
    fn prefix_check_over_corpus() {
        for s in corpus() {
            assert!(derivative_prefix_check(&s, 200).unwrap(), "{s}");
        }
    }

    #[test]
    fn stability() {
        assert_eq!(is_stable(&DirectiveStream::fibonacci(), 10).unwrap(), Stability::Stable { m: 0, n: 1 });
        for k in 1..5 {
            let s = DirectiveStream::ultimately_periodic(BinaryWord::power_of(Letter::A, k), w("ab")).unwrap();
            assert_eq!(is_stable(&s, 10).unwrap(), Stability::Stable { m: 1, n: 2 });
        }
        for budget in [10, 12] {
            let g = DirectiveStream::unbounded_runs(DEFAULT_PREFIX_CAP);
            assert_eq!(is_stable(&g, budget).unwrap(), Stability::Undecided { budget });
        }
        for s in corpus() {
            assert!(matches!(is_stable(&s, 64).unwrap(), Stability::Stable { .. }), "{s}");
        }
    }

    #[test]
    fn slope_cf_examples() {
        assert_eq!(slope_cf_stream(&DirectiveStream::fibonacci(), 5).unwrap(), vec![0, 1, 1, 1, 1]);
        assert_eq!(slope_cf_stream(&st("|aabb"), 4).unwrap(), vec![0, 2, 2, 2]);
        assert_eq!(slope_cf_stream(&st("|bbaa"), 4).unwrap(), vec![2, 2, 2, 2]);
        assert_eq!(slope_cf_stream(&DirectiveStream::unbounded_runs(100), 6).unwrap(), vec![0, 1, 1, 2, 1, 3]);
        assert!(slope_cf_stream(&DirectiveStream::fibonacci(), 0).is_err());
        let cf = slope_cf_stream(&st("ab|aab"), 21).unwrap();
        assert_eq!(&cf[3..5], &[2, 1]);
        assert!(cf[5..].chunks(2).all(|c| c == [2, 1] || c == [2]));
    }

    #[test]
    fn letter_frequencies_converge_to_the_slope() {
        for s in corpus().into_iter().step_by(5).chain([DirectiveStream::unbounded_runs(100_000)]) {
            let cf = slope_cf_stream(&s, 30).unwrap();
            let target = convergent(&cf);
            let target = target.numer().to_f64().unwrap() / target.denom().to_f64().unwrap();
            for n in [1000, 5000, 20_000] {
                let p = prefix(&s, n).unwrap().word;
                let ratio = p.count(Letter::B) as f64 / p.count(Letter::A) as f64;
                assert!((ratio - target).abs() <= 10.0 / n as f64 * target.max(1.0) * target.max(1.0), "{s} n={n}");
            }
        }
    }

    #[test]
    fn decoding_reencodes() {
        for s in corpus() {
            let k = index(&s).unwrap();
            let mu = if s.letter(0).unwrap() == Letter::A { Morphism::mu_k(k) } else { Morphism::mu_hat_k(k) };
            let p = prefix(&s, 300).unwrap().word;
            let (d, used) = decode_prefix(&mu, &p).unwrap();
            assert_eq!(mu.apply(&d), p.prefix(used));
        }
    }
}
