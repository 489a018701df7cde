//! Brute-force reference implementations and the exhaustive verification
//! report.
//!
//! The `raw_*` functions and the enumerators use only word primitives and
//! the textbook definitions. `verify_all` runs the optimized modules over
//! every directive word up to a bound and checks each identity against
//! these references.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;

use crate::christoffel::{self, ratio_of};
use crate::depth;
use crate::error::{Error, Result};
use crate::morphism::{self, lambda_of, mu_of, Morphism};
use crate::palindrome::{self, period_lengths, psi};
use crate::standard::{self, SuffixOrder};
use crate::word::{Alternation, BinaryWord, End, Letter, Side};

pub const CENTRAL_CAP: usize = 20;
pub const CHRISTOFFEL_CAP: usize = 200;
pub const STANDARD_CAP: usize = 22;
pub const VERIFY_CAP: usize = 12;

// ---------------------------------------------------------------------------
// raw definitions

/// Shortest palindrome with prefix `w`, by scanning for the longest
/// palindromic suffix from the left.
pub fn raw_closure(w: &BinaryWord) -> BinaryWord {
    let s = w.letters();
    let start = (0..=s.len()).find(|&i| crate::word::is_palindrome(&s[i..])).unwrap();
    w.concat(&w.prefix(start).reversal())
}

pub fn raw_psi(v: &BinaryWord) -> BinaryWord {
    v.iter().fold(BinaryWord::empty(), |mut acc, x| {
        acc.push(x);
        raw_closure(&acc)
    })
}

/// Constant, or two coprime periods `p`, `q` with `|w| = p + q − 2`.
pub fn raw_is_central(w: &BinaryWord) -> bool {
    let n = w.len();
    w.is_constant()
        || (1..=n + 1).any(|p| {
            let q = n + 2 - p;
            p.gcd(&q) == 1 && w.has_period(p) && w.has_period(q)
        })
}

/// Lower Christoffel word with `p` letters `b` and `q` letters `a`: the
/// `i`-th letter is `a` exactly when `ip mod (p+q)` increases.
pub fn raw_christoffel(p: usize, q: usize) -> BinaryWord {
    let n = p + q;
    (1..=n).map(|i| if (i - 1) * p % n < i * p % n { Letter::A } else { Letter::B }).collect()
}

pub fn raw_is_christoffel(w: &BinaryWord) -> bool {
    if w.len() <= 1 {
        return w.len() == 1;
    }
    let (p, q) = (w.count(Letter::B), w.count(Letter::A));
    p > 0 && q > 0 && p.gcd(&q) == 1 && raw_christoffel(p, q) == *w
}

pub fn raw_is_proper_christoffel(w: &BinaryWord) -> bool {
    w.len() >= 2 && raw_is_christoffel(w)
}

/// A letter, or a central word followed by `ab` or `ba`.
pub fn raw_is_standard(w: &BinaryWord) -> bool {
    let n = w.len();
    n == 1 || (n >= 2 && w[n - 1] != w[n - 2] && raw_is_central(&w.prefix(n - 2)))
}

// ---------------------------------------------------------------------------
// enumerators

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WordClass {
    Central,
    Christoffel,
    Standard,
}

impl WordClass {
    pub fn default_cap(self) -> usize {
        match self {
            WordClass::Central => CENTRAL_CAP,
            WordClass::Christoffel => CHRISTOFFEL_CAP,
            WordClass::Standard => STANDARD_CAP,
        }
    }
}

impl fmt::Display for WordClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WordClass::Central => "central",
            WordClass::Christoffel => "christoffel",
            WordClass::Standard => "standard",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumerationReport {
    pub length_bound: usize,
    pub class_name: WordClass,
    /// Lexicographic with `a < b`.
    pub members: Vec<BinaryWord>,
    pub count: usize,
}

impl EnumerationReport {
    fn new(class_name: WordClass, length_bound: usize, members: impl IntoIterator<Item = BinaryWord>) -> Self {
        let mut members: Vec<_> = members.into_iter().collect::<HashSet<_>>().into_iter().collect();
        members.sort();
        EnumerationReport { length_bound, class_name, count: members.len(), members }
    }

    pub fn contains(&self, w: &BinaryWord) -> bool {
        self.members.binary_search(w).is_ok()
    }
}

pub fn enumerate(class: WordClass, max_len: usize) -> Result<EnumerationReport> {
    enumerate_with_cap(class, max_len, class.default_cap())
}

pub fn enumerate_with_cap(class: WordClass, max_len: usize, cap: usize) -> Result<EnumerationReport> {
    if max_len > cap {
        return Err(Error::LimitExceeded { what: "enumeration length bound", requested: max_len, limit: cap });
    }
    Ok(match class {
        WordClass::Central => central_words(max_len),
        WordClass::Christoffel => christoffel_words(max_len),
        WordClass::Standard => {
            let by_central = standard_from_central(max_len);
            let by_recurrence = standard_by_recurrence(max_len);
            debug_assert_eq!(by_central, by_recurrence);
            by_central
        }
    })
}

pub fn enumerate_central(max_len: usize) -> Result<EnumerationReport> {
    enumerate(WordClass::Central, max_len)
}

pub fn enumerate_christoffel(max_len: usize) -> Result<EnumerationReport> {
    enumerate(WordClass::Christoffel, max_len)
}

pub fn enumerate_standard(max_len: usize) -> Result<EnumerationReport> {
    enumerate(WordClass::Standard, max_len)
}

/// Exhaustive search over all `2^n` words, one bit per letter.
fn central_words(max_len: usize) -> EnumerationReport {
    let mut members = Vec::new();
    for n in 0..=max_len {
        let full: u64 = (1u64 << n) - 1;
        let periodic = |x: u64, p: usize| p >= n || ((x ^ (x >> p)) & (full >> p)) == 0;
        for x in 0..=full {
            let central = (1..=n + 1).any(|p| {
                let q = n + 2 - p;
                p.gcd(&q) == 1 && periodic(x, p) && periodic(x, q)
            });
            if central {
                members.push((0..n).map(|i| if x >> i & 1 == 1 { Letter::B } else { Letter::A }).collect());
            }
        }
    }
    EnumerationReport::new(WordClass::Central, max_len, members)
}

fn christoffel_words(max_len: usize) -> EnumerationReport {
    let mut members: Vec<BinaryWord> =
        [Letter::A, Letter::B].into_iter().filter(|_| max_len >= 1).map(BinaryWord::from).collect();
    for n in 2..=max_len {
        for p in 1..n {
            if p.gcd(&(n - p)) == 1 {
                members.push(raw_christoffel(p, n - p));
            }
        }
    }
    EnumerationReport::new(WordClass::Christoffel, max_len, members)
}

fn standard_from_central(max_len: usize) -> EnumerationReport {
    let mut members: Vec<BinaryWord> =
        [Letter::A, Letter::B].into_iter().filter(|_| max_len >= 1).map(BinaryWord::from).collect();
    if max_len >= 2 {
        for c in central_words(max_len - 2).members {
            for xy in [[Letter::A, Letter::B], [Letter::B, Letter::A]] {
                members.push(c.concat(&BinaryWord::from_letters(xy.to_vec())));
            }
        }
    }
    EnumerationReport::new(WordClass::Standard, max_len, members)
}

/// Every `s_n` reachable under `s_{-1} = b`, `s_0 = a`,
/// `s_{n+1} = s_n^{c_n} s_{n−1}` with `c_0 >= 0` and `c_n >= 1` afterwards.
fn standard_by_recurrence(max_len: usize) -> EnumerationReport {
    let (a, b) = (BinaryWord::from(Letter::A), BinaryWord::from(Letter::B));
    let mut members = Vec::new();
    if max_len >= 1 {
        members.extend([a.clone(), b.clone()]);
    }
    let mut stack = vec![(b, a, 0usize)];
    while let Some((prev, cur, min_c)) = stack.pop() {
        let mut power = BinaryWord::empty();
        for c in 0.. {
            if c > 0 {
                power.extend_from(&cur);
            }
            let next = power.concat(&prev);
            if next.len() > max_len {
                break;
            }
            if c >= min_c {
                members.push(next.clone());
                stack.push((cur.clone(), next, 1));
            }
        }
    }
    EnumerationReport::new(WordClass::Standard, max_len, members)
}

// ---------------------------------------------------------------------------
// verification report

/// Replaceable operations, so that a deliberately broken implementation can
/// be fed through the report.
#[derive(Clone, Copy)]
pub struct Hooks {
    pub christoffel_derivative: fn(&BinaryWord) -> Result<BinaryWord>,
}

impl Default for Hooks {
    fn default() -> Self {
        Hooks { christoffel_derivative: christoffel::derivative }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremResult {
    pub name: &'static str,
    pub statement: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub max_len: usize,
    pub results: Vec<TheoremResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn result(&self, name: &str) -> Option<&TheoremResult> {
        self.results.iter().find(|r| r.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            match &r.counterexample {
                None => out.push_str(&format!("PASS {:<36} {:>8} cases  {}\n", r.name, r.cases, r.statement)),
                Some(c) => out.push_str(&format!(
                    "FAIL {:<36} {:>8} cases  {}\n     counterexample: {c}\n",
                    r.name, r.cases, r.statement
                )),
            }
        }
        let passed = self.results.iter().filter(|r| r.passed).count();
        out.push_str(&format!(
            "{passed}/{} passed (directive words up to length {})\n",
            self.results.len(),
            self.max_len
        ));
        out
    }
}

struct Fail(String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(e.to_string())
    }
}

type Case = std::result::Result<(), Fail>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(Fail(format!($($fmt)+)));
        }
    };
}

#[derive(Default)]
struct Tally {
    cases: usize,
    counterexample: Option<String>,
}

impl Tally {
    /// Runs `f` on every item until the first failure.
    fn over<T>(&mut self, items: impl IntoIterator<Item = T>, mut f: impl FnMut(&T) -> Case) {
        if self.counterexample.is_some() {
            return;
        }
        for item in items {
            self.cases += 1;
            if let Err(Fail(msg)) = f(&item) {
                self.counterexample = Some(msg);
                return;
            }
        }
    }
}

struct Ctx {
    n: usize,
    hooks: Hooks,
}

impl Ctx {
    fn words(&self) -> impl Iterator<Item = BinaryWord> {
        BinaryWord::all_up_to(self.n)
    }

    fn nonempty(&self) -> impl Iterator<Item = BinaryWord> {
        self.words().filter(|v| !v.is_empty())
    }

    fn nonconstant(&self) -> impl Iterator<Item = BinaryWord> {
        self.words().filter(|v| !v.is_constant())
    }

    fn derive(&self, w: &BinaryWord) -> Result<BinaryWord> {
        (self.hooks.christoffel_derivative)(w)
    }
}

fn wd(s: &str) -> BinaryWord {
    BinaryWord::parse(s).expect("literal word")
}

fn frame(v: &BinaryWord) -> BinaryWord {
    wd("a").concat(&psi(v)).concat(&wd("b"))
}

fn frame_len(v: &BinaryWord) -> usize {
    psi(v).len() + 2
}

fn plus(v: &BinaryWord) -> BinaryWord {
    v.plus(Side::Prefix).unwrap()
}

fn plus_left(v: &BinaryWord) -> BinaryWord {
    v.plus(Side::Suffix).unwrap()
}

fn minus(v: &BinaryWord) -> BinaryWord {
    v.truncate(End::Last).unwrap()
}

fn minus_left(v: &BinaryWord) -> BinaryWord {
    v.truncate(End::First).unwrap()
}

type CheckFn = fn(&Ctx, &mut Tally);

const CHECKS: &[(&str, &str, CheckFn)] = &[
    (
        "psi-definition",
        "ψ agrees with iterated closure; palindromic, injective, prefix-closed, E- and reversal-compatible",
        check_psi,
    ),
    ("justin-formula", "ψ(vu) = μ_v(ψ(u))ψ(v)", check_justin),
    ("mu-of-two-letters", "μ_v(xy) = ψ(v)xy", check_mu_frame),
    ("mu-lambda-images", "μ_v and λ_v images in terms of ψ(v₊), ψ(v⁻)", check_images),
    ("central-split", "ψ(v) = ψ(v₊)yxψ(v⁻) = ψ(v⁻)xyψ(v₊)", check_central_split),
    ("central-two-periods", "central words are the ψ images; closure shapes w₂baw₁abw₂ and w₁abw₂baw₁", check_central),
    (
        "period-identities",
        "p_a, p_b coprime, |ψ(v)| = p_a + p_b − 2, π(ψ(v)) = min, π(ψ(v)) = |aψ(v₊)b|",
        check_periods,
    ),
    (
        "lyndon-factorization",
        "aψ(v)b = aψ(v₊)b · aψ(v⁻)b (order by last letter), inverse lengths mod |w|",
        check_lyndon,
    ),
    ("slope-mediant", "slope of aψ(v)b is the mediant of those of aψ(v₊)b and aψ(v⁻)b", check_mediant),
    ("period-of-reversal", "π(ψ(ṽ)) = |aψ(v)b| counted on the letter other than v's first", check_reversal_period),
    ("frame-length-additivity", "|aψ(v)b| = |aψ(v⁻)b| + |aψ(v₊)b| = |aψ(⁻v)b| + |aψ(₊v)b|", check_additivity),
    (
        "central-length-sums",
        "|ψ(v)| = Σ π(ψ(v_1…v_i)) = Σ |aψ(v_i…v_n)b| on the letter other than v_i",
        check_length_sums,
    ),
    ("raney-stern-brocot", "p_a/p_b and the slope as ratios of neighbouring frame lengths", check_ratios),
    (
        "extension-and-prefix-periods",
        "ext(v) distinct prefix periods; maximal and mean-equal exactly when alternating",
        check_extension,
    ),
    ("lambda-b-conjugation", "bλ_b(v) = μ_b(v)b", check_lambda_b),
    ("lambda-frame", "λ_v(ab) = aψ(v)b and aψ(wv)b = λ_w(aψ(v)b)", check_lambda_frame),
    (
        "christoffel-morphism-certificates",
        "a morphism preserves Christoffel words iff it is some λ_v",
        check_certificates,
    ),
    ("lambda-preimage-closure", "λ_v(w) Christoffel implies w Christoffel", check_preimage),
    ("lambda-mu-akb", "λ_{a^k b}(bv) = μ_{a^k b}(vb) and λ_{a^k b}(av) = aμ_{a^k b}(vb)", check_akb),
    ("image-lengths-are-periods", "|λ_v(x)| = |μ_v(x)| = p_x(v)", check_image_lengths),
    (
        "derivative-code-preimages",
        "for w over X_k or Y_k: w proper Christoffel iff ∂w Christoffel",
        check_code_preimages,
    ),
    ("derivative-over-lyndon-factors", "∂w = ∂w₁∂w₂ is the factorization of ∂w", check_derivative_factors),
    ("derivative-length", "|∂w| = π(ψ(ṽ)) = |w| on the letter other than v's first", check_derivative_length),
    (
        "reconstruction-from-lengths",
        "w is determined by its first directive letter, |w| and |∂w|",
        check_reconstruction,
    ),
    ("central-length-as-derivative-sum", "|ψ(v)| = Σ |∂aψ(v_i…v_n)b|", check_derivative_sum),
    ("derivative-routes-agree", "∂aψ(v)b = aψ(₊v)b", check_routes),
    ("derivative-symmetry", "∂aψ(E(v))b = aψ(E(₊v))b and ∂aψ(ṽ)b = aψ((v₊)~)b", check_symmetry),
    ("frame-length-series", "|aψ(v)b| as an exponent-weighted sum of shorter frame lengths", check_series),
    ("derivative-injectivity", "∂ is injective on words of fixed length and first letter", check_injectivity),
    ("slope-continued-fraction", "slope of aψ(v)b = [0; α_0, …, α_n + 1] or [α_0; …, α_n + 1]", check_slope_cf),
    ("derivative-slope-continued-fraction", "slope of ∂aψ(v)b from the exponents of v", check_derivative_slope_cf),
    ("standard-derivative-codes", "for w over X'_k or Y'_k: w proper standard iff Dw standard", check_standard_codes),
    ("standard-derivative", "Dψ(v)xy = ψ(₊v)xy", check_standard_derivative),
    ("standard-christoffel-bridge", "Dψ(v)ba = a⁻¹∂(aψ(v)b)a, failing only at v = b^k", check_bridge),
    ("depth-equality", "ψ(v)ab, ψ(v)ba and aψ(v)b share the depth h(v) = δ(v) = H(⟨bvb⟩)", check_depths),
];

pub fn verify_all(max_directive_len: usize) -> Result<VerifyReport> {
    verify_all_with(max_directive_len, VERIFY_CAP, Hooks::default())
}

pub fn verify_all_with(max_directive_len: usize, cap: usize, hooks: Hooks) -> Result<VerifyReport> {
    if max_directive_len > cap {
        return Err(Error::LimitExceeded { what: "verification bound", requested: max_directive_len, limit: cap });
    }
    let ctx = Ctx { n: max_directive_len, hooks };
    let results = CHECKS
        .iter()
        .map(|&(name, statement, check)| {
            let mut t = Tally::default();
            check(&ctx, &mut t);
            TheoremResult {
                name,
                statement,
                passed: t.counterexample.is_none(),
                cases: t.cases,
                counterexample: t.counterexample,
            }
        })
        .collect();
    Ok(VerifyReport { max_len: max_directive_len, results })
}

pub fn check_names() -> impl Iterator<Item = &'static str> {
    CHECKS.iter().map(|c| c.0)
}

fn check_psi(c: &Ctx, t: &mut Tally) {
    let mut seen = HashMap::new();
    t.over(c.words(), |v| {
        let p = psi(v);
        ensure!(p == raw_psi(v), "ψ({v}) = {p}, iterated closure gives {}", raw_psi(v));
        ensure!(p.is_palindrome(), "ψ({v}) = {p} is not a palindrome");
        if let Some(u) = seen.insert(p.clone(), v.clone()) {
            ensure!(false, "ψ({u}) = ψ({v})");
        }
        for i in 0..=v.len() {
            let q = psi(&v.prefix(i));
            ensure!(p.starts_with(&q) && p.ends_with(&q), "ψ({}) is not a border of ψ({v})", v.prefix(i));
        }
        let pal = (0..=p.len()).filter(|&i| p.prefix(i).is_palindrome()).count();
        ensure!(pal == v.len() + 1, "ψ({v}) has {pal} palindromic prefixes");
        ensure!(psi(&v.reversal()).len() == p.len(), "|ψ(ṽ)| ≠ |ψ(v)| at {v}");
        ensure!(psi(&v.complement()) == p.complement(), "ψ(E(v)) ≠ E(ψ(v)) at {v}");
        ensure!(palindrome::psi_inverse(&p)? == *v, "ψ⁻¹(ψ({v})) ≠ {v}");
        Ok(())
    });
}

fn check_justin(c: &Ctx, t: &mut Tally) {
    let pairs = c.words().flat_map(|v| BinaryWord::all_up_to(c.n - v.len()).map(move |u| (v.clone(), u)));
    t.over(pairs, |(v, u)| {
        let lhs = psi(&v.concat(u));
        let rhs = mu_of(v).apply(&psi(u)).concat(&psi(v));
        ensure!(lhs == rhs, "v = {v}, u = {u}: {lhs} ≠ {rhs}");
        Ok(())
    });
}

fn check_mu_frame(c: &Ctx, t: &mut Tally) {
    t.over(c.words(), |v| {
        for xy in ["ab", "ba"] {
            let img = mu_of(v).apply(&wd(xy));
            ensure!(img == psi(v).concat(&wd(xy)), "μ_{v}({xy}) = {img}");
        }
        Ok(())
    });
}

fn check_images(c: &Ctx, t: &mut Tally) {
    t.over(c.nonconstant(), |v| {
        let (p, m) = (plus(v), minus(v));
        let (mu, l) = (mu_of(v), lambda_of(v));
        let (long, short) = if v.last() == Some(Letter::A) { (&p, &m) } else { (&m, &p) };
        ensure!(mu.image_a == psi(long).concat(&wd("ba")), "μ_{v}(a) = {}", mu.image_a);
        ensure!(mu.image_b == psi(short).concat(&wd("ab")), "μ_{v}(b) = {}", mu.image_b);
        ensure!(l.image_a == frame(long), "λ_{v}(a) = {}", l.image_a);
        ensure!(l.image_b == frame(short), "λ_{v}(b) = {}", l.image_b);
        Ok(())
    });
}

fn check_central_split(c: &Ctx, t: &mut Tally) {
    t.over(c.nonconstant(), |v| {
        let x: BinaryWord = v.last().unwrap().into();
        let y: BinaryWord = v.last().unwrap().complement().into();
        let (p, m, whole) = (psi(&plus(v)), psi(&minus(v)), psi(v));
        ensure!(whole == p.concat(&y).concat(&x).concat(&m), "ψ({v}) ≠ ψ(v₊)yxψ(v⁻)");
        ensure!(whole == m.concat(&x).concat(&y).concat(&p), "ψ({v}) ≠ ψ(v⁻)xyψ(v₊)");
        Ok(())
    });
}

fn check_central(c: &Ctx, t: &mut Tally) {
    // the definition against the optimized classifier, on all short words
    t.over(BinaryWord::all_up_to(c.n), |w| {
        let a = palindrome::is_central(w);
        ensure!(a.is_central == raw_is_central(w), "is_central({w}) = {}", a.is_central);
        if a.is_central {
            ensure!(psi(a.directive.as_ref().unwrap()) == *w, "directive of {w} is wrong");
        }
        Ok(())
    });
    t.over(c.nonconstant(), |v| {
        let w = psi(v);
        ensure!(raw_is_central(&w), "ψ({v}) fails the two-period definition");
        // w = w1·ab·w2 = w2·ba·w1 with |w1| = p − 2
        let split = (0..w.len().saturating_sub(1)).find(|&i| {
            let (w1, w2) = (w.prefix(i), w.suffix_from(i + 2));
            w.slice(i..i + 2) == wd("ab") && w == w2.concat(&wd("ba")).concat(&w1)
        });
        let Some(i) = split else {
            return Err(Fail(format!("ψ({v}) = {w} has no w₁abw₂ = w₂baw₁ split")));
        };
        let (w1, w2) = (w.prefix(i), w.suffix_from(i + 2));
        let (ab, ba) = (wd("ab"), wd("ba"));
        ensure!(psi(&v.concat(&wd("a"))) == w2.concat(&ba).concat(&w1).concat(&ab).concat(&w2), "ψ({v}a) shape");
        ensure!(psi(&v.concat(&wd("b"))) == w1.concat(&ab).concat(&w2).concat(&ba).concat(&w1), "ψ({v}b) shape");
        Ok(())
    });
}

fn check_periods(c: &Ctx, t: &mut Tally) {
    t.over(c.words(), |v| {
        let (pa, pb) = period_lengths(v);
        let w = psi(v);
        ensure!(pa.gcd(&pb) == BigUint::from(1u32), "gcd(p_a, p_b) ≠ 1 at {v}");
        ensure!(BigUint::from(w.len() + 2) == &pa + &pb, "|ψ({v})| + 2 ≠ p_a + p_b");
        ensure!(BigUint::from(w.minimal_period()) == pa.clone().min(pb.clone()), "π(ψ({v})) ≠ min(p_a, p_b)");
        for (x, px) in [(Letter::A, &pa), (Letter::B, &pb)] {
            let mut wx = w.clone();
            wx.push(x);
            ensure!(BigUint::from(wx.minimal_period()) == *px, "π(ψ({v}){x}) ≠ p_{x}");
            ensure!(w.has_period(wx.minimal_period()), "p_{x}({v}) is not a period of ψ({v})");
        }
        if !v.is_constant() {
            ensure!(w.minimal_period() == frame_len(&plus(v)), "π(ψ({v})) ≠ |aψ(v₊)b|");
        }
        Ok(())
    });
}

fn check_lyndon(c: &Ctx, t: &mut Tally) {
    t.over(c.words(), |v| {
        let w = frame(v);
        ensure!(w.is_lyndon()?, "{w} is not a Lyndon word");
        let (w1, w2) = christoffel::lyndon_factorization(&w)?;
        ensure!(raw_is_christoffel(&w1) && raw_is_christoffel(&w2) && w1 < w2, "bad factorization of {w}");
        ensure!(christoffel::inverse_lengths_hold(&w, w1.len(), w2.len()), "inverse lengths fail at {w}");
        let (pa, pb) = period_lengths(v);
        ensure!((BigUint::from(w1.len()), BigUint::from(w2.len())) == (pa, pb), "|w₁|, |w₂| ≠ p_a, p_b at {v}");
        if !v.is_constant() {
            let expected = match v.last().unwrap() {
                Letter::A => (frame(&plus(v)), frame(&minus(v))),
                Letter::B => (frame(&minus(v)), frame(&plus(v))),
            };
            ensure!((w1.clone(), w2.clone()) == expected, "factorization of {w} is ({w1}, {w2})");
        }
        Ok(())
    });
}

fn check_mediant(c: &Ctx, t: &mut Tally) {
    t.over(c.nonconstant(), |v| {
        let s = frame(v).slope()?;
        let m = frame(&plus(v)).slope()?.mediant(&frame(&minus(v)).slope()?);
        ensure!((m.num, m.den) == (s.num, s.den), "slope at {v} is {}/{}, mediant {}/{}", s.num, s.den, m.num, m.den);
        Ok(())
    });
}

fn check_reversal_period(c: &Ctx, t: &mut Tally) {
    t.over(c.nonempty(), |v| {
        let other = v.first().unwrap().complement();
        ensure!(psi(&v.reversal()).minimal_period() == frame(v).count(other), "at {v}");
        Ok(())
    });
}

fn check_additivity(c: &Ctx, t: &mut Tally) {
    t.over(c.nonconstant(), |v| {
        let n = frame_len(v);
        ensure!(n == frame_len(&minus(v)) + frame_len(&plus(v)), "right split at {v}");
        ensure!(n == frame_len(&minus_left(v)) + frame_len(&plus_left(v)), "left split at {v}");
        let other = v.first().unwrap().complement();
        ensure!(frame_len(&plus_left(v)) == frame(v).count(other), "|aψ(₊v)b| at {v}");
        for x in Letter::BOTH {
            ensure!(frame(v).count(x) == frame(&minus(v)).count(x) + frame(&plus(v)).count(x), "|·|_{x} at {v}");
        }
        Ok(())
    });
}

fn check_length_sums(c: &Ctx, t: &mut Tally) {
    t.over(c.nonempty(), |v| {
        let n = v.len();
        let by_periods: usize = (1..=n).map(|i| psi(&v.prefix(i)).minimal_period()).sum();
        let by_frames: usize = (0..n).map(|i| frame(&v.suffix_from(i)).count(v[i].complement())).sum();
        let len = psi(v).len();
        ensure!(len == by_periods && len == by_frames, "at {v}: {len}, {by_periods}, {by_frames}");
        Ok(())
    });
}

fn check_ratios(c: &Ctx, t: &mut Tally) {
    t.over(c.nonempty(), |v| {
        let r = christoffel::ratios(v)?;
        let (pa, pb) = period_lengths(v);
        ensure!(r.raney == Ratio::new(pa, pb), "Raney ratio at {v}");
        let s = frame(v).slope()?;
        ensure!(r.stern_brocot == ratio_of(s.num as usize, s.den as usize), "Stern–Brocot ratio at {v}");
        if !v.is_constant() {
            let (lp, lm) = (frame_len(&plus(v)), frame_len(&minus(v)));
            let raney = if v.last() == Some(Letter::A) { ratio_of(lp, lm) } else { ratio_of(lm, lp) };
            let (sp, sm) = (frame_len(&plus_left(v)), frame_len(&minus_left(v)));
            let sb = if v.first() == Some(Letter::A) { ratio_of(sp, sm) } else { ratio_of(sm, sp) };
            ensure!(r.raney == raney && r.stern_brocot == sb, "neighbour ratios at {v}");
        }
        Ok(())
    });
}

fn check_extension(c: &Ctx, t: &mut Tally) {
    t.over(c.nonempty(), |v| {
        let w = psi(v);
        let spectrum = palindrome::prefix_period_spectrum(v)?;
        let raw: HashSet<usize> = (1..=w.len()).map(|i| w.prefix(i).minimal_period()).collect();
        let ext = v.extension();
        ensure!(spectrum.periods.len() == ext && raw.len() == ext, "{v}: ext {ext}, {} periods", raw.len());
        let alternating = v.classify_alternation()? == Alternation::Alternating;
        ensure!((ext == v.len()) == alternating, "maximality at {v}");
        let lhs = Ratio::new(w.len() as u64, ext as u64);
        ensure!(lhs >= spectrum.mean && ((lhs == spectrum.mean) == alternating), "mean bound at {v}");
        Ok(())
    });
}

fn check_lambda_b(c: &Ctx, t: &mut Tally) {
    t.over(c.words(), |v| {
        let lhs = wd("b").concat(&Morphism::lambda(Letter::B).apply(v));
        let rhs = Morphism::mu(Letter::B).apply(v).concat(&wd("b"));
        ensure!(lhs == rhs, "at {v}");
        Ok(())
    });
}

fn check_lambda_frame(c: &Ctx, t: &mut Tally) {
    t.over(c.words(), |v| {
        ensure!(lambda_of(v).apply(&wd("ab")) == frame(v), "λ_{v}(ab)");
        Ok(())
    });
    let pairs = c.words().flat_map(|w| BinaryWord::all_up_to(c.n - w.len()).map(move |v| (w.clone(), v)));
    t.over(pairs, |(w, v)| {
        ensure!(frame(&w.concat(v)) == lambda_of(w).apply(&frame(v)), "w = {w}, v = {v}");
        Ok(())
    });
}

fn check_certificates(c: &Ctx, t: &mut Tally) {
    t.over(c.words(), |v| {
        let cert = morphism::is_christoffel_morphism(&lambda_of(v));
        ensure!(cert.is_christoffel && cert.directive.as_ref() == Some(v), "λ_{v} certified as {:?}", cert.directive);
        Ok(())
    });
    let side = c.n.min(5);
    let lambdas: HashMap<Morphism, BinaryWord> = BinaryWord::all_up_to(2 * side).map(|v| (lambda_of(&v), v)).collect();
    let images: Vec<BinaryWord> = BinaryWord::all_up_to(side).filter(|u| !u.is_empty()).collect();
    let pairs = images.iter().flat_map(|x| images.iter().map(move |y| (x.clone(), y.clone())));
    t.over(pairs, |(x, y)| {
        let m = Morphism::new(x.clone(), y.clone())?;
        let cert = morphism::is_christoffel_morphism(&m);
        ensure!(cert.directive.as_ref() == lambdas.get(&m), "({x}, {y}) certified as {:?}", cert.directive);
        // a certified pair maps the short Christoffel words into Christoffel words
        if cert.is_christoffel {
            for w in christoffel_words(4).members {
                ensure!(raw_is_christoffel(&m.apply(&w)), "({x}, {y}) maps {w} outside CH");
            }
        }
        Ok(())
    });
}

fn check_preimage(c: &Ctx, t: &mut Tally) {
    let pairs = BinaryWord::all_up_to(c.n.min(4)).flat_map(|v| BinaryWord::all_up_to(c.n).map(move |w| (v.clone(), w)));
    t.over(pairs, |(v, w)| {
        if raw_is_christoffel(&lambda_of(v).apply(w)) {
            ensure!(raw_is_christoffel(w), "λ_{v}({w}) is Christoffel but {w} is not");
        }
        Ok(())
    });
}

fn check_akb(c: &Ctx, t: &mut Tally) {
    let pairs = (0..=4).flat_map(|k| BinaryWord::all_up_to(c.n.min(8)).map(move |v| (k, v)));
    t.over(pairs, |(k, v)| {
        let akb = BinaryWord::power_of(Letter::A, *k).concat(&wd("b"));
        let (l, mu) = (lambda_of(&akb), mu_of(&akb));
        let vb = v.concat(&wd("b"));
        ensure!(l.apply(&wd("b").concat(v)) == mu.apply(&vb), "k = {k}, v = {v}");
        ensure!(l.apply(&wd("a").concat(v)) == wd("a").concat(&mu.apply(&vb)), "k = {k}, v = {v}");
        Ok(())
    });
}

fn check_image_lengths(c: &Ctx, t: &mut Tally) {
    t.over(c.words(), |v| {
        let (pa, pb) = period_lengths(v);
        let (l, mu) = (lambda_of(v), mu_of(v));
        for (x, px) in [(Letter::A, pa), (Letter::B, pb)] {
            ensure!(
                BigUint::from(l.image(x).len()) == px && BigUint::from(mu.image(x).len()) == px,
                "x = {x}, v = {v}"
            );
        }
        Ok(())
    });
}

fn code_preimages(c: &Ctx, codes: [Morphism; 2]) -> Vec<(Morphism, BinaryWord)> {
    let mut out = Vec::new();
    for code in codes {
        let shortest = code.image_a.len().min(code.image_b.len());
        for d in BinaryWord::all_up_to((c.n + 2) / shortest).filter(|d| !d.is_empty()) {
            if code.apply(&d).len() <= c.n + 2 {
                out.push((code.clone(), d));
            }
        }
    }
    out
}

fn check_code_preimages(c: &Ctx, t: &mut Tally) {
    for k in 1..=3 {
        t.over(code_preimages(c, [Morphism::phi(k), Morphism::phi_hat(k)]), |(code, d)| {
            let w = code.apply(d);
            let proper = raw_is_proper_christoffel(&w);
            ensure!(proper == raw_is_christoffel(d), "k = {k}: {w} over the code, preimage {d}");
            if proper && christoffel::classify(&w)?.index == Some(k) {
                ensure!(c.derive(&w)? == *d, "∂{w} ≠ {d}");
            }
            Ok(())
        });
    }
}

fn check_derivative_factors(c: &Ctx, t: &mut Tally) {
    t.over(c.nonconstant(), |v| {
        let w = frame(v);
        let (w1, w2) = christoffel::lyndon_factorization(&w)?;
        let k = christoffel::directive_index(v);
        let code = if v.first() == Some(Letter::A) { Morphism::phi(k) } else { Morphism::phi_hat(k) };
        let (d1, d2) = (morphism::decode(&code, &w1)?, morphism::decode(&code, &w2)?);
        let dw = c.derive(&w)?;
        ensure!(d1.concat(&d2) == dw, "∂{w} = {dw} ≠ {d1}·{d2}");
        ensure!(raw_is_christoffel(&d1) && raw_is_christoffel(&d2), "factors of ∂{w} not Christoffel");
        if dw.len() > 1 {
            ensure!(christoffel::lyndon_factorization(&dw)? == (d1, d2), "factorization of ∂{w}");
        }
        Ok(())
    });
}

fn check_derivative_length(c: &Ctx, t: &mut Tally) {
    t.over(c.nonempty(), |v| {
        let w = frame(v);
        let d = c.derive(&w)?;
        ensure!(d.len() == psi(&v.reversal()).minimal_period(), "|∂{w}| = {}", d.len());
        ensure!(d.len() == w.count(v.first().unwrap().complement()), "|∂{w}| = {}", d.len());
        Ok(())
    });
}

fn check_reconstruction(c: &Ctx, t: &mut Tally) {
    let mut seen = HashMap::new();
    t.over(c.nonempty(), |v| {
        let w = frame(v);
        let d = c.derive(&w)?;
        let key = (v.first().unwrap(), w.len(), d.len());
        ensure!(christoffel::from_derivative_length(key.0, key.1, key.2)? == w, "rebuilding {w}");
        if let Some(u) = seen.insert(key, v.clone()) {
            ensure!(false, "{u} and {v} share first letter, |w| and |∂w|");
        }
        Ok(())
    });
}

fn check_derivative_sum(c: &Ctx, t: &mut Tally) {
    t.over(c.words(), |v| {
        let mut total = 0;
        for i in 0..v.len() {
            total += c.derive(&frame(&v.suffix_from(i)))?.len();
        }
        ensure!(psi(v).len() == total, "|ψ({v})| = {} ≠ {total}", psi(v).len());
        Ok(())
    });
}

fn check_routes(c: &Ctx, t: &mut Tally) {
    t.over(c.words(), |v| {
        let w = frame(v);
        let d = c.derive(&w)?;
        let expected = match v.first() {
            None => wd("a"),
            Some(x) if v.is_constant() => x.into(),
            _ => wd("a").concat(&raw_psi(&plus_left(v))).concat(&wd("b")),
        };
        ensure!(d == expected, "∂{w} = {d}, expected {expected}");
        Ok(())
    });
}

fn check_symmetry(c: &Ctx, t: &mut Tally) {
    t.over(c.nonconstant(), |v| {
        ensure!(c.derive(&frame(&v.complement()))? == frame(&plus_left(v).complement()), "E at {v}");
        ensure!(c.derive(&frame(&v.reversal()))? == frame(&plus(v).reversal()), "reversal at {v}");
        Ok(())
    });
}

fn check_series(c: &Ctx, t: &mut Tally) {
    t.over(c.nonempty(), |v| {
        let rep = v.integral_representation()?;
        let alpha = &rep.exponents;
        let n = alpha.len() - 1;
        let mut total = alpha[n] + 2;
        for i in 0..n {
            let mut tail = BinaryWord::power_of(rep.letter(i + 1), alpha[i + 1] - 1);
            for (j, &e) in alpha.iter().enumerate().skip(i + 2) {
                tail.extend_from(&BinaryWord::power_of(rep.letter(j), e));
            }
            total += alpha[i] * frame_len(&tail);
        }
        ensure!(total == frame_len(v), "|aψ({v})b| = {} ≠ {total}", frame_len(v));
        Ok(())
    });
}

fn check_injectivity(c: &Ctx, t: &mut Tally) {
    for k in 1..=c.n {
        let mut by_image: HashMap<BinaryWord, Vec<BinaryWord>> = HashMap::new();
        let mut failed = None;
        for v in BinaryWord::all_of_length(k) {
            match c.derive(&frame(&v)) {
                Ok(d) => by_image.entry(d).or_default().push(v),
                Err(e) => failed = Some(e.to_string()),
            }
        }
        if let Some(e) = failed {
            t.over([()], |_| Err(Fail(e.clone())));
        }
        t.over(by_image.into_values(), |group| {
            ensure!(group.len() <= 2, "{} words share a derivative: {group:?}", group.len());
            if let [v1, v2] = &group[..] {
                ensure!(v1.first() != v2.first() && !v1.is_constant() && !v2.is_constant(), "{v1}, {v2}");
                let tail = plus_left(v1);
                ensure!(tail == plus_left(v2), "{v1}, {v2} differ after the first run");
                let r = k - 1 - tail.len();
                let (x, y) = (v1.first().unwrap(), v2.first().unwrap());
                let e1 = BinaryWord::power_of(x, r).concat(&y.into()).concat(&tail);
                let e2 = BinaryWord::power_of(y, r).concat(&x.into()).concat(&tail);
                ensure!(r > 0 && *v1 == e1 && *v2 == e2, "{v1}, {v2} not of the form x^r y(₊v), y^r x(₊v)");
            }
            Ok(())
        });
    }
}

fn check_slope_cf(c: &Ctx, t: &mut Tally) {
    t.over(c.nonempty(), |v| {
        let cf = christoffel::slope_cf(v)?;
        let mut alpha = v.integral_representation()?.exponents;
        *alpha.last_mut().unwrap() += 1;
        if v.first() == Some(Letter::A) {
            alpha.insert(0, 0);
        }
        ensure!(cf == alpha, "cf({v}) = {cf:?}");
        let w = frame(v);
        let value = christoffel::evaluate_cf(&cf);
        ensure!(
            value == ratio_of(w.count(Letter::B), w.count(Letter::A)),
            "cf({v}) does not evaluate to the slope of {w}"
        );
        Ok(())
    });
}

fn check_derivative_slope_cf(c: &Ctx, t: &mut Tally) {
    t.over(c.nonconstant(), |v| {
        let cf = christoffel::derivative_slope_cf(v)?;
        let d = c.derive(&frame(v))?;
        let value = christoffel::evaluate_cf(&cf);
        ensure!(value == ratio_of(d.count(Letter::B), d.count(Letter::A)), "cf {cf:?} vs slope of ∂aψ({v})b = {d}");
        Ok(())
    });
}

fn check_standard_codes(c: &Ctx, t: &mut Tally) {
    for k in 1..=3 {
        t.over(code_preimages(c, [Morphism::mu_k(k), Morphism::mu_hat_k(k)]), |(code, d)| {
            let w = code.apply(d);
            let proper = w.len() >= 2 && raw_is_standard(&w);
            ensure!(proper == raw_is_standard(d), "k = {k}: {w}, preimage {d}");
            if proper && standard::classify(&w)?.index == Some(k) {
                ensure!(standard::derivative(&w)? == *d, "D{w} ≠ {d}");
            }
            Ok(())
        });
        let ak1b = BinaryWord::power_of(Letter::A, k + 1).concat(&wd("b"));
        let bk1a = BinaryWord::power_of(Letter::B, k + 1).concat(&wd("a"));
        t.over([ak1b, bk1a], |w| {
            ensure!(raw_is_standard(&standard::derivative(w)?), "D{w} is not standard");
            Ok(())
        });
    }
}

fn check_standard_derivative(c: &Ctx, t: &mut Tally) {
    t.over(c.nonconstant(), |v| {
        for o in SuffixOrder::BOTH {
            let w = standard::from_directive(v, o);
            let expected = standard::from_directive(&plus_left(v), o);
            ensure!(standard::derivative(&w)? == expected, "D{w} ≠ {expected}");
        }
        Ok(())
    });
}

fn check_bridge(c: &Ctx, t: &mut Tally) {
    t.over(c.words(), |v| {
        let d = standard::derivative(&standard::from_directive(v, SuffixOrder::Ba))?;
        let cd = c.derive(&frame(v))?;
        let conj = cd.suffix_from(1).concat(&wd("a"));
        let exceptional = v.first() == Some(Letter::B) && v.is_constant();
        if exceptional {
            ensure!((d.clone(), cd.clone()) == (wd("a"), wd("b")), "v = {v}: D = {d}, ∂ = {cd}");
        } else {
            ensure!(d == conj, "v = {v}: D = {d}, a⁻¹∂a = {conj}");
        }
        Ok(())
    });
}

fn check_depths(c: &Ctx, t: &mut Tally) {
    t.over(c.words(), |v| {
        let h = depth::height(v);
        ensure!(h == depth::delta(v).delta && h as u64 == depth::height_via_h(v), "heights disagree at {v}");
        let mut chain = 0;
        let mut w = frame(v);
        while w.len() > 1 {
            w = c.derive(&w)?;
            chain += 1;
        }
        ensure!(chain == h, "depth of aψ({v})b is {chain}, h = {h}");
        for o in SuffixOrder::BOTH {
            let d = standard::derivative_chain(&standard::from_directive(v, o))?.depth;
            ensure!(d == h, "depth of ψ({v}){o} is {d}, h = {h}");
        }
        Ok(())
    });
}
