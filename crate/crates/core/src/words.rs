//! The word algebra `h = Z<x, y>`, its monomial submodules and the index codecs.
//!
//! The word `y x^{k1-1} ... y x^{kr-1}` encodes the index `(k1, ..., kr)`.
//! Every word that is empty or starts with `y` lies in `h^1` and corresponds to
//! exactly one index.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X,
    Y,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
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

    /// Letter count, which equals the weight of the encoded index.
    pub fn weight(&self) -> usize {
        self.0.len()
    }

    /// `y x^{k1-1} ... y x^{kr-1}`.
    pub fn from_index(k: &[u32]) -> Result<Self> {
        let mut letters = Vec::with_capacity(k.iter().map(|&x| x as usize).sum());
        for &ki in k {
            if ki == 0 {
                return invalid("index entries must be positive");
            }
            letters.push(Letter::Y);
            letters.extend(std::iter::repeat_n(Letter::X, ki as usize - 1));
        }
        Ok(Word(letters))
    }

    /// Inverse of [`Word::from_index`], defined on words that are empty or start with `y`.
    pub fn to_index(&self) -> Result<Vec<u32>> {
        if self.0.first() == Some(&Letter::X) {
            return Err(Error::NotInSubspace { space: "h^1", word: self.compact() });
        }
        let mut out: Vec<u32> = Vec::new();
        for l in &self.0 {
            match l {
                Letter::Y => out.push(1),
                Letter::X => *out.last_mut().expect("checked above") += 1,
            }
        }
        Ok(out)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `x^k`.
    pub fn x_pow(k: usize) -> Word {
        Word(vec![Letter::X; k])
    }

    /// `y x^h`.
    pub fn y_x_pow(h: usize) -> Word {
        let mut v = vec![Letter::Y];
        v.extend(std::iter::repeat_n(Letter::X, h));
        Word(v)
    }

    /// Compact spelling such as `yxx`; the empty word is the empty string.
    pub fn compact(&self) -> String {
        self.0.iter().map(|l| if *l == Letter::X { 'x' } else { 'y' }).collect()
    }

    pub fn in_space(&self, space: Space) -> bool {
        let w = &self.0;
        if w.is_empty() {
            return true;
        }
        match space {
            Space::H1 => w[0] == Letter::Y,
            Space::H0 => w[0] == Letter::Y && w[w.len() - 1] == Letter::X,
            Space::Hgeq2 => {
                w[0] == Letter::Y
                    && w.iter().enumerate().all(|(i, l)| *l == Letter::X || w.get(i + 1) == Some(&Letter::X))
            }
        }
    }
}

/// Spaced rendering with run exponents, e.g. `y x^2 y`; the empty word is `1`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == l {
                j += 1;
            }
            let name = if l == Letter::X { "x" } else { "y" };
            if l == Letter::Y || j - i == 1 {
                // consecutive y's are spelled out, they start separate index blocks
                for _ in i..j {
                    parts.push(name.to_string());
                }
            } else {
                parts.push(format!("{name}^{}", j - i));
            }
            i = j;
        }
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts the compact spelling (`yxx`), with `1` or the empty string for the empty word.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Word::empty());
        }
        s.chars()
            .map(|c| match c {
                'x' => Ok(Letter::X),
                'y' => Ok(Letter::Y),
                _ => Err(Error::Parse(format!("unexpected letter `{c}` in word `{s}`"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

/// The monomially defined submodules of `h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    /// `Z + y h`
    H1,
    /// `Z + y h x`
    H0,
    /// `Z + yx Z<x, yx>`
    Hgeq2,
}

impl Space {
    pub fn name(self) -> &'static str {
        match self {
            Space::H1 => "h^1",
            Space::H0 => "h^0",
            Space::Hgeq2 => "h^>=2",
        }
    }
}

/// A finite integer combination of words, kept in canonical form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    terms: BTreeMap<Word, BigInt>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::empty())
    }

    pub fn from_word(w: Word) -> Self {
        Self::from_term(w, BigInt::one())
    }

    pub fn from_term(w: Word, c: BigInt) -> Self {
        let mut e = Self::zero();
        e.add_term(w, c);
        e
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

    pub fn coeff(&self, w: &Word) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Terms in lexicographic word order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, w: Word, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add_scaled(&mut self, other: &AlgebraElement, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for (w, v) in &other.terms {
            let slot = self.terms.entry(w.clone()).or_default();
            *slot += v * c;
        }
        self.terms.retain(|_, v| !v.is_zero());
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    /// Concatenation product, extended bilinearly.
    pub fn mul(&self, other: &AlgebraElement) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let slot = out.terms.entry(u.concat(v)).or_default();
                *slot += a * b;
            }
        }
        out.terms.retain(|_, v| !v.is_zero());
        out
    }

    /// Right multiplication by a single word.
    pub fn mul_word(&self, w: &Word) -> Self {
        AlgebraElement { terms: self.terms.iter().map(|(u, c)| (u.concat(w), c.clone())).collect() }
    }

    /// The automorphism `x -> -x`, `y -> -y`: each word picks up `(-1)^length`.
    pub fn theta(&self) -> Self {
        AlgebraElement {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), if w.len() % 2 == 1 { -c } else { c.clone() }))
                .collect(),
        }
    }

    pub fn in_space(&self, space: Space) -> bool {
        self.terms.keys().all(|w| w.in_space(space))
    }

    /// Fails with the first word outside `space`.
    pub fn require_space(&self, space: Space) -> Result<()> {
        match self.terms.keys().find(|w| !w.in_space(space)) {
            Some(w) => Err(Error::NotInSubspace { space: space.name(), word: w.compact() }),
            None => Ok(()),
        }
    }

    /// Part spanned by words of the given length.
    pub fn graded_part(&self, len: usize) -> Self {
        AlgebraElement { terms: self.terms.iter().filter(|(w, _)| w.len() == len).map(|(w, c)| (w.clone(), c.clone())).collect() }
    }

    pub fn max_word_len(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    pub fn to_json(&self) -> ElementJson {
        ElementJson {
            terms: self.terms.iter().map(|(w, c)| TermJson { word: w.compact(), coeff: c.to_string() }).collect(),
        }
    }

    pub fn from_json(j: &ElementJson) -> Result<Self> {
        let mut e = Self::zero();
        for t in &j.terms {
            let c: BigInt = t.coeff.parse().map_err(|_| Error::Parse(format!("bad coefficient `{}`", t.coeff)))?;
            e.add_term(t.word.parse()?, c);
        }
        Ok(e)
    }
}

impl std::ops::Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &BigInt::one());
        out
    }
}

impl std::ops::Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &-BigInt::one());
        out
    }
}

/// Signed integer combination, e.g. `y x^2 - 2 y y x`; zero renders as `0`.
impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if a.is_one() {
                write!(f, "{w}")?;
            } else if w.is_empty() {
                write!(f, "{a}")?;
            } else {
                write!(f, "{a} {w}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub word: String,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub terms: Vec<TermJson>,
}

/// One entry of a bar-index: the formal symbol `1̄` or a positive integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BarEntry {
    Bar,
    Int(u32),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BarIndex(pub Vec<BarEntry>);

impl BarIndex {
    pub fn plain(k: &[u32]) -> Self {
        BarIndex(k.iter().map(|&x| BarEntry::Int(x)).collect())
    }

    pub fn entries(&self) -> &[BarEntry] {
        &self.0
    }

    pub fn is_admissible(&self) -> bool {
        self.0.last() != Some(&BarEntry::Bar)
    }

    /// Bars count 1 toward the weight.
    pub fn weight(&self) -> u32 {
        self.0.iter().map(|e| if let BarEntry::Int(k) = e { *k } else { 1 }).sum()
    }

    /// Run-length encoding `(l1, k1, ..., lr, kr)`: `li - 1` bars precede `ki`.
    pub fn to_pairs(&self) -> Result<PairIndex> {
        if !self.is_admissible() {
            return Err(Error::NotAdmissible(self.to_string()));
        }
        let mut out = Vec::new();
        let mut run = 0;
        for e in &self.0 {
            match e {
                BarEntry::Bar => run += 1,
                BarEntry::Int(k) => {
                    if *k == 0 {
                        return invalid("index entries must be positive");
                    }
                    out.push(run + 1);
                    out.push(*k);
                    run = 0;
                }
            }
        }
        Ok(PairIndex(out))
    }

    pub fn from_pairs(c: &PairIndex) -> Self {
        let mut out = Vec::new();
        for (l, k) in c.pairs() {
            out.extend(std::iter::repeat_n(BarEntry::Bar, l as usize - 1));
            out.push(BarEntry::Int(k));
        }
        BarIndex(out)
    }

    /// Comma-separated entries, with `b` for a bar, e.g. `b,b,3`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(BarIndex::default());
        }
        s.split(',')
            .map(|t| match t.trim() {
                "b" | "B" => Ok(BarEntry::Bar),
                t => t
                    .parse::<u32>()
                    .ok()
                    .filter(|&v| v > 0)
                    .map(BarEntry::Int)
                    .ok_or_else(|| Error::Parse(format!("bad index entry `{t}`"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BarIndex)
    }

    /// The entries as plain integers, failing on any bar.
    pub fn as_plain(&self) -> Result<Vec<u32>> {
        self.0
            .iter()
            .map(|e| match e {
                BarEntry::Int(k) => Ok(*k),
                BarEntry::Bar => invalid("bar entries are not allowed for this model"),
            })
            .collect()
    }
}

impl fmt::Display for BarIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|e| match e {
                BarEntry::Bar => "b".to_string(),
                BarEntry::Int(k) => k.to_string(),
            })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Flattened run-length index `(l1, k1, ..., lr, kr)` with all entries positive.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairIndex(pub Vec<u32>);

impl PairIndex {
    pub fn new(flat: Vec<u32>) -> Result<Self> {
        if !flat.len().is_multiple_of(2) {
            return invalid("a pair index needs an even number of entries");
        }
        if flat.contains(&0) {
            return invalid("pair index entries must be positive");
        }
        Ok(PairIndex(flat))
    }

    pub fn from_lk(l: &[u32], k: &[u32]) -> Result<Self> {
        if l.len() != k.len() {
            return invalid("l and k must have equal length");
        }
        Self::new(l.iter().zip(k).flat_map(|(&a, &b)| [a, b]).collect())
    }

    pub fn flat(&self) -> &[u32] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len() / 2
    }

    pub fn pairs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0.chunks(2).map(|p| (p[0], p[1]))
    }

    /// `sum (kj + lj - 1)`.
    pub fn weight(&self) -> u32 {
        self.pairs().map(|(l, k)| k + l - 1).sum()
    }

    /// `sum c_i`.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The diamond-model index `({1}^{l1-1}, k1+1, ..., {1}^{lr-1}, kr+1)`.
    pub fn diamond_index(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (l, k) in self.pairs() {
            out.extend(std::iter::repeat_n(1, l as usize - 1));
            out.push(k + 1);
        }
        out
    }

    /// All pair indices with entries summing to at most `max_total`, in a fixed order.
    pub fn enumerate(max_total: u32) -> Vec<PairIndex> {
        let mut out = vec![PairIndex::default()];
        let mut r = 1;
        while 2 * r <= max_total as usize {
            for total in 2 * r as u32..=max_total {
                compositions(total, 2 * r, &mut |c| out.push(PairIndex(c.to_vec())));
            }
            r += 1;
        }
        out
    }
}

impl fmt::Display for PairIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Calls `f` on every composition of `total` into `parts` positive entries.
pub fn compositions(total: u32, parts: usize, f: &mut dyn FnMut(&[u32])) {
    fn go(rest: u32, parts: usize, acc: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
        if parts == 0 {
            if rest == 0 {
                f(acc);
            }
            return;
        }
        if rest < parts as u32 {
            return;
        }
        for first in 1..=rest - (parts as u32 - 1) {
            acc.push(first);
            go(rest - first, parts - 1, acc, f);
            acc.pop();
        }
    }
    go(total, parts, &mut Vec::new(), f);
}

/// All plain indices of weight `1..=max_weight` (the empty index excluded).
pub fn indices_up_to_weight(max_weight: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for w in 1..=max_weight {
        for r in 1..=w as usize {
            compositions(w, r, &mut |c| out.push(c.to_vec()));
        }
    }
    out
}

/// The basis words of `h^1` with at most `max_len` letters, shortest first.
pub fn h1_basis(max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::from_letters(vec![Letter::Y])];
    for _ in 1..=max_len {
        out.extend(layer.iter().cloned());
        layer = layer
            .iter()
            .flat_map(|w| [Letter::Y, Letter::X].map(|l| w.concat(&Word::from_letters(vec![l]))))
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn el(terms: &[(&str, i64)]) -> AlgebraElement {
        let mut e = AlgebraElement::zero();
        for (s, c) in terms {
            e.add_term(w(s), BigInt::from(*c));
        }
        e
    }

    #[test]
    fn index_words() {
        assert_eq!(Word::from_index(&[2]).unwrap(), w("yx"));
        assert_eq!(Word::from_index(&[1, 3]).unwrap(), w("yyxx"));
        assert_eq!(Word::from_index(&[]).unwrap(), Word::empty());
        assert!(Word::from_index(&[0]).is_err());
        assert!(matches!(w("xy").to_index(), Err(Error::NotInSubspace { .. })));
        for k in indices_up_to_weight(8) {
            let word = Word::from_index(&k).unwrap();
            assert_eq!(word.weight() as u32, k.iter().sum::<u32>());
            assert_eq!(word.to_index().unwrap(), k);
        }
    }

    #[test]
    fn bar_codec_examples() {
        let b = BarIndex::parse("b,b,3").unwrap();
        assert_eq!(b.to_pairs().unwrap(), PairIndex(vec![3, 3]));
        let b = BarIndex::parse("2,b,1").unwrap();
        assert_eq!(b.to_pairs().unwrap(), PairIndex(vec![1, 2, 2, 1]));
        assert!(BarIndex::parse("1,b").unwrap().to_pairs().is_err());
        assert_eq!(BarIndex::parse("").unwrap(), BarIndex::default());
        assert!(BarIndex::parse("0").is_err());
    }

    #[test]
    fn bar_codec_round_trip() {
        // every admissible bar-index of length <= 5 with integer entries <= 3
        fn all(len: usize) -> Vec<BarIndex> {
            let choices = [BarEntry::Bar, BarEntry::Int(1), BarEntry::Int(2), BarEntry::Int(3)];
            let mut out = vec![vec![]];
            for _ in 0..len {
                out = out.into_iter().flat_map(|v: Vec<BarEntry>| choices.iter().map(move |c| {
                    let mut v = v.clone();
                    v.push(*c);
                    v
                })).collect();
            }
            out.into_iter().map(BarIndex).collect()
        }
        let mut n = 0;
        for len in 0..=5 {
            for b in all(len).into_iter().filter(BarIndex::is_admissible) {
                let p = b.to_pairs().unwrap();
                assert_eq!(BarIndex::from_pairs(&p), b);
                assert_eq!(p.weight(), b.weight());
                n += 1;
            }
        }
        assert!(n > 300);
    }

    #[test]
    fn products_and_cancellation() {
        assert_eq!(el(&[("y", 1)]).mul(&el(&[("x", 1)])), el(&[("yx", 1)]));
        assert_eq!(&el(&[("yx", 2)]) - &el(&[("yx", 1)]), el(&[("yx", 1)]));
        let p = el(&[("y", 1), ("x", 1)]).mul(&el(&[("y", 1), ("x", -1)]));
        assert_eq!(p, el(&[("yy", 1), ("yx", -1), ("xy", 1), ("xx", -1)]));
        assert!((&el(&[("y", 3)]) - &el(&[("y", 3)])).is_zero());
    }

    #[test]
    fn theta_signs() {
        assert_eq!(el(&[("yx", 1)]).theta(), el(&[("yx", 1)]));
        assert_eq!(el(&[("y", 1)]).theta(), el(&[("y", -1)]));
    }

    #[test]
    fn membership_examples() {
        assert!(w("yx").in_space(Space::Hgeq2));
        assert!(!w("yyx").in_space(Space::Hgeq2));
        assert!(!w("yxy").in_space(Space::Hgeq2));
        assert!(w("yxxyx").in_space(Space::Hgeq2));
        assert!(w("yy").in_space(Space::H1) && !w("yy").in_space(Space::H0));
        assert!(!w("xy").in_space(Space::H1));
        assert!(Word::empty().in_space(Space::Hgeq2));
        for k in indices_up_to_weight(7) {
            let ge2 = k.iter().all(|&x| x >= 2);
            assert_eq!(Word::from_index(&k).unwrap().in_space(Space::Hgeq2), ge2, "{k:?}");
        }
    }

    #[test]
    fn weights() {
        assert_eq!(BarIndex::plain(&[2, 3]).weight(), 5);
        assert_eq!(PairIndex(vec![2, 1]).weight(), 2);
        assert_eq!(w("yxx").weight(), 3);
    }

    #[test]
    fn rendering() {
        assert_eq!(w("yxx").to_string(), "y x^2");
        assert_eq!(w("yxxy").to_string(), "y x^2 y");
        assert_eq!(w("yyx").to_string(), "y y x");
        assert_eq!(Word::empty().to_string(), "1");
        assert_eq!(el(&[("yxx", 1), ("yy", -2), ("", 3)]).to_string(), "3 + y x^2 - 2 y y");
        assert_eq!(el(&[("y", -1)]).to_string(), "-y");
        assert_eq!(AlgebraElement::zero().to_string(), "0");
    }

    #[test]
    fn json_sorted_by_word() {
        let e = el(&[("yy", 1), ("yxx", -3), ("", 2)]);
        let j = serde_json::to_string(&e.to_json()).unwrap();
        assert_eq!(j, r#"{"terms":[{"word":"","coeff":"2"},{"word":"yxx","coeff":"-3"},{"word":"yy","coeff":"1"}]}"#);
        assert_eq!(AlgebraElement::from_json(&e.to_json()).unwrap(), e);
    }

    #[test]
    fn enumerations() {
        let basis = h1_basis(4);
        assert_eq!(basis.len(), 16);
        assert!(basis.iter().all(|w| w.in_space(Space::H1)));
        let c = PairIndex::enumerate(6);
        assert_eq!(c.len(), 1 + 15 + 15 + 1);
    }

    fn element(space: Space) -> impl Strategy<Value = AlgebraElement> {
        let gens: Vec<Word> = match space {
            Space::Hgeq2 => vec![w("x"), w("yx")],
            _ => vec![w("x"), w("y")],
        };
        prop::collection::vec((prop::collection::vec(0..gens.len(), 0..5), -3i64..4), 0..6).prop_map(move |ts| {
            let mut e = AlgebraElement::zero();
            for (letters, c) in ts {
                let mut word = match space {
                    Space::H1 => w("y"),
                    Space::H0 | Space::Hgeq2 => w("yx"),
                };
                for g in letters {
                    word = word.concat(&gens[g]);
                }
                if space == Space::H0 {
                    word = word.concat(&w("x"));
                }
                e.add_term(word, BigInt::from(c));
            }
            e
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn subspace_chain(g in element(Space::Hgeq2), h0 in element(Space::H0), h1 in element(Space::H1)) {
            prop_assert!(g.in_space(Space::Hgeq2));
            prop_assert!(g.in_space(Space::H0));
            prop_assert!(g.in_space(Space::H1));
            prop_assert!(h0.in_space(Space::H0) && h0.in_space(Space::H1));
            prop_assert!(h1.in_space(Space::H1));
        }

        #[test]
        fn theta_involution(e in element(Space::H1)) {
            prop_assert_eq!(e.theta().theta(), e.clone());
            let mut again = AlgebraElement::zero();
            again.add_scaled(&e, &BigInt::one());
            prop_assert_eq!(again, e);
        }
    }
}
