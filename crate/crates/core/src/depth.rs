//! Height of directive words, the δ profile, the H sequence and counts of
//! words by height.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{BinaryWord, Letter, Side};

/// Default cap on the word length for [`enumerate_height_classes`].
pub const DEFAULT_TABLE_CAP: usize = 20;

/// `v_(1) = v, v_(2) = ₊v, …` up to and including the first constant term.
pub fn directive_chain(v: &BinaryWord) -> Vec<BinaryWord> {
    let mut out = vec![v.clone()];
    while !out.last().unwrap().is_constant() {
        let next = out.last().unwrap().plus(Side::Suffix).expect("non-constant");
        out.push(next);
    }
    out
}

/// `h(v)`, the index of the first constant term of the chain; `h(ε) = 1`.
pub fn height(v: &BinaryWord) -> usize {
    directive_chain(v).len()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaProfile {
    /// `δ_0(v) … δ_n(v)`, one bit per run; empty for ε.
    pub bits: Vec<u8>,
    /// Sum of the bits, with δ(ε) = 1.
    pub delta: usize,
}

impl DeltaProfile {
    pub fn bit_string(&self) -> String {
        self.bits.iter().map(|b| char::from(b'0' + b)).collect()
    }
}

fn run_lengths(v: &BinaryWord) -> Vec<usize> {
    v.integral_representation().map(|r| r.exponents).unwrap_or_default()
}

fn delta_bits(alpha: &[usize]) -> Vec<u8> {
    let n = alpha.len();
    let mut bits = vec![1u8; n];
    for i in 1..n.saturating_sub(1) {
        bits[i] = if alpha[i] > 1 {
            1
        } else if alpha[i - 1] > 1 {
            0
        } else {
            1 - bits[i - 1]
        };
    }
    bits
}

pub fn delta(v: &BinaryWord) -> DeltaProfile {
    let bits = delta_bits(&run_lengths(v));
    debug_assert!(bits.windows(2).all(|w| w != [0, 0]));
    let delta = if bits.is_empty() { 1 } else { bits.iter().map(|&b| b as usize).sum() };
    DeltaProfile { bits, delta }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlternatingComponents {
    /// `v_0, u_1, v_2, u_3, …, v_k`: odd positions hold the runs of
    /// exponent 1 strictly inside `v`, grouped maximally.
    pub blocks: Vec<BinaryWord>,
}

impl AlternatingComponents {
    /// `u_1, u_3, …`.
    pub fn components(&self) -> Vec<&BinaryWord> {
        self.blocks.iter().skip(1).step_by(2).collect()
    }

    /// `ext(v) − Σ ⌈|u_i|/2⌉`.
    pub fn delta_formula(&self, ext: usize) -> usize {
        ext - self.components().iter().map(|u| u.len().div_ceil(2)).sum::<usize>()
    }
}

pub fn alternating_components(v: &BinaryWord) -> Result<AlternatingComponents> {
    let rep = v.integral_representation()?;
    let alpha = &rep.exponents;
    let n = alpha.len() - 1;
    let mut blocks: Vec<BinaryWord> = Vec::new();
    let mut cur = BinaryWord::empty();
    let mut cur_alt = false;
    for (i, &e) in alpha.iter().enumerate() {
        let alt = 0 < i && i < n && e == 1;
        if i > 0 && alt != cur_alt {
            blocks.push(std::mem::take(&mut cur));
        }
        cur_alt = alt;
        cur.extend_from(&BinaryWord::power_of(rep.letter(i), e));
    }
    blocks.push(cur);
    Ok(AlternatingComponents { blocks })
}

/// `(u_1, u_2)`: the alternating runs of exponent 1 at the left and right
/// edges, each stopping before the last run on its side.
pub fn boundary_words(v: &BinaryWord) -> Result<(BinaryWord, BinaryWord)> {
    let alpha = v.integral_representation()?.exponents;
    let n = alpha.len() - 1;
    let left = alpha[..n].iter().take_while(|&&e| e == 1).count();
    let right = alpha[1..].iter().rev().take_while(|&&e| e == 1).count();
    Ok((v.prefix(left), v.suffix_from(v.len() - right)))
}

/// Whether `|v_2|` is even, i.e. `v` lies in the set E. Constants and ε do.
pub fn in_e(v: &BinaryWord) -> bool {
    boundary_words(v).map(|(_, u2)| u2.len() % 2 == 0).unwrap_or(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConcatBound {
    pub delta_u: usize,
    pub delta_v: usize,
    pub delta_uv: usize,
    pub is_additive: bool,
}

pub fn delta_concat_bound(u: &BinaryWord, v: &BinaryWord) -> Result<ConcatBound> {
    if u.is_empty() || v.is_empty() {
        return Err(Error::EmptyWord { op: "delta_concat_bound" });
    }
    let (du, dv, duv) = (delta(u).delta, delta(v).delta, delta(&u.concat(v)).delta);
    debug_assert!(du + dv - 1 <= duv && duv <= du + dv);
    Ok(ConcatBound { delta_u: du, delta_v: dv, delta_uv: duv, is_additive: duv == du + dv })
}

/// `u^(L) ≠ v^(F)` and `|u_2|`, `|v_1|` both even.
pub fn additivity_predicted(u: &BinaryWord, v: &BinaryWord) -> Result<bool> {
    let (_, u2) = boundary_words(u)?;
    let (v1, _) = boundary_words(v)?;
    Ok(u.last() != v.first() && u2.len() % 2 == 0 && v1.len() % 2 == 0)
}

/// `H(1) = 0`, `H(2n) = H(n)`, `H(4n ± 1) = H(n) + 1`.
pub fn h_value(n: &BigUint) -> Result<u64> {
    if n.is_zero() {
        return Err(Error::OutOfRange("H is defined for n >= 1".into()));
    }
    let mut n = n.clone();
    let mut h = 0;
    let four = BigUint::from(4u32);
    while !n.is_one() {
        if n.is_even() {
            n >>= 1;
        } else {
            let r = (&n % &four).to_u32().unwrap();
            n = if r == 1 { (n - 1u32) / &four } else { (n + 1u32) / &four };
            h += 1;
        }
    }
    Ok(h)
}

/// `H(1), …, H(len)` by table lookup on smaller arguments.
pub fn h_prefix(len: usize) -> Vec<u64> {
    let mut t = vec![0u64; len + 1];
    for n in 2..=len {
        t[n] = match n % 4 {
            0 | 2 => t[n / 2],
            1 => t[(n - 1) / 4] + 1,
            _ => t[(n + 1) / 4] + 1,
        };
    }
    t.split_off(1)
}

/// `H(⟨bvb⟩)`.
pub fn height_via_h(v: &BinaryWord) -> u64 {
    let framed = BinaryWord::from(Letter::B).concat(v).concat(&Letter::B.into());
    h_value(&framed.standard_interpretation()).expect("⟨bvb⟩ >= 3")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeightBounds {
    pub height: usize,
    /// `⌊ext(v)/2⌋ + 1`.
    pub lower: usize,
    /// `⌊|v|/2⌋ + 1`.
    pub upper: usize,
    pub attains_lower: bool,
    pub attains_upper: bool,
}

pub fn height_bounds(v: &BinaryWord) -> Result<HeightBounds> {
    if v.is_empty() {
        return Err(Error::EmptyWord { op: "height_bounds" });
    }
    let h = delta(v).delta;
    let lower = v.extension() / 2 + 1;
    let upper = v.len() / 2 + 1;
    Ok(HeightBounds { height: h, lower, upper, attains_lower: h == lower, attains_upper: h == upper })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeightRow {
    pub p: usize,
    /// Words of height `p` in E.
    pub e: u64,
    /// Words of height `p` outside E.
    pub o: u64,
    /// `e + o`.
    pub j: u64,
    /// All words of height `p`, in lexicographic order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<BinaryWord>>,
}

impl HeightRow {
    /// Members starting with `a`; the others are their complements.
    pub fn representatives(&self) -> Option<Vec<&BinaryWord>> {
        self.members.as_ref().map(|m| m.iter().filter(|v| v.first() == Some(Letter::A)).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeightTable {
    pub k: usize,
    /// One row for each `p = 1 ..= ⌊k/2⌋ + 1`.
    pub rows: Vec<HeightRow>,
}

impl HeightTable {
    pub fn row(&self, p: usize) -> Option<&HeightRow> {
        p.checked_sub(1).and_then(|i| self.rows.get(i))
    }

    /// Plain-text rendering with aligned columns.
    pub fn to_text(&self) -> String {
        let mut out = format!("k = {}\n{:>3} {:>10} {:>10} {:>10}\n", self.k, "p", "e", "o", "J");
        for r in &self.rows {
            out.push_str(&format!("{:>3} {:>10} {:>10} {:>10}", r.p, r.e, r.o, r.j));
            if let Some(reps) = r.representatives() {
                let list: Vec<String> = reps.iter().map(|v| v.to_string()).collect();
                out.push_str(&format!("  a-initial: {{{}}}", list.join(", ")));
            }
            out.push('\n');
        }
        out
    }
}

/// Buckets all `2^k` words of length `k` by height.
pub fn enumerate_height_classes(k: usize, with_members: bool, cap: usize) -> Result<HeightTable> {
    if k == 0 {
        return Err(Error::OutOfRange("k must be at least 1".into()));
    }
    if k > cap {
        return Err(Error::LimitExceeded { what: "height table word length", requested: k, limit: cap });
    }
    let max_p = k / 2 + 1;
    let mut rows: Vec<HeightRow> =
        (1..=max_p).map(|p| HeightRow { p, e: 0, o: 0, j: 0, members: with_members.then(Vec::new) }).collect();
    for v in BinaryWord::all_of_length(k) {
        let h = delta(&v).delta;
        let row = &mut rows[h - 1];
        if in_e(&v) {
            row.e += 1;
        } else {
            row.o += 1;
        }
        row.j += 1;
        if let Some(m) = row.members.as_mut() {
            m.push(v);
        }
    }
    Ok(HeightTable { k, rows })
}

/// `C(n, m)`, zero when `n < m` or either is negative.
fn binom(n: i64, m: i64) -> BigUint {
    if n < 0 || m < 0 || n < m {
        return BigUint::zero();
    }
    num_integer::binomial(BigUint::from(n as u64), BigUint::from(m as u64))
}

fn pow2(e: i64) -> BigUint {
    BigUint::one() << (e as usize)
}

/// `J_k(p) = 2^{p−1}(C(k−p+1, p−1) + C(k−p, p−1))`.
pub fn j_closed(k: usize, p: usize) -> BigUint {
    if k == 0 || p == 0 {
        return BigUint::zero();
    }
    let (k, p) = (k as i64, p as i64);
    pow2(p - 1) * (binom(k - p + 1, p - 1) + binom(k - p, p - 1))
}

/// `o_k(1) = 0`, `o_k(p) = 2^{p−1} C(k−p, p−2)`.
pub fn o_closed(k: usize, p: usize) -> BigUint {
    if k == 0 || p <= 1 {
        return BigUint::zero();
    }
    let (k, p) = (k as i64, p as i64);
    pow2(p - 1) * binom(k - p, p - 2)
}
