//! Position-set machinery on `[n] = {1, ..., n}`: partial domino tilings, the
//! domino statistics `eo`, `oe`, `kappa`, `alpha`, `beta`, the order-preserving
//! relabelling `sigma_S` and the index surgery `c_{A,B}`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{invalid, Error, Result};

/// Largest supported ambient size.
pub const MAX_POSITIONS: usize = 32;

/// A subset of `[n]`; bit `i - 1` stands for position `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mask {
    n: u8,
    bits: u32,
}

impl Mask {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_POSITIONS);
        Mask { n: n as u8, bits: 0 }
    }

    pub fn new(n: usize, bits: u32) -> Result<Self> {
        if n > MAX_POSITIONS {
            return invalid(format!("ambient size {n} exceeds {MAX_POSITIONS}"));
        }
        if n < 32 && bits >> n != 0 {
            return invalid(format!("mask {bits:#b} has positions beyond {n}"));
        }
        Ok(Mask { n: n as u8, bits })
    }

    pub fn from_positions(n: usize, positions: &[usize]) -> Result<Self> {
        let mut bits = 0u32;
        for &p in positions {
            if p == 0 || p > n {
                return invalid(format!("position {p} outside [1, {n}]"));
            }
            bits |= 1 << (p - 1);
        }
        Mask::new(n, bits)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        i >= 1 && i <= self.n() && self.bits >> (i - 1) & 1 == 1
    }

    pub fn positions(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&i| self.contains(i)).collect()
    }

    pub fn is_subset(&self, other: &Mask) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn is_disjoint(&self, other: &Mask) -> bool {
        self.bits & other.bits == 0
    }

    pub fn union(&self, other: &Mask) -> Mask {
        Mask { n: self.n.max(other.n), bits: self.bits | other.bits }
    }

    pub fn difference(&self, other: &Mask) -> Mask {
        Mask { n: self.n, bits: self.bits & !other.bits }
    }

    pub fn complement(&self) -> Mask {
        let full = if self.n == 32 { u32::MAX } else { (1u32 << self.n) - 1 };
        Mask { n: self.n, bits: full & !self.bits }
    }

    /// All subsets of `self`, the empty set first, in increasing bit order.
    pub fn subsets(&self) -> impl Iterator<Item = Mask> + '_ {
        // standard submask enumeration, run upward
        let full = self.bits;
        let n = self.n;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some(((cur | !full).wrapping_add(1)) & full) };
            Some(Mask { n, bits: cur })
        })
    }
}

impl fmt::Display for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.positions().iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", p.join(","))
    }
}

impl Serialize for Mask {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.positions().serialize(s)
    }
}

/// Number of even-odd dominoes `{2j, 2j+1}` contained in `s`.
pub fn eo(s: &Mask) -> usize {
    (1..).take_while(|j| 2 * j < s.n()).filter(|j| s.contains(2 * j) && s.contains(2 * j + 1)).count()
}

/// Number of odd-even dominoes `{2j-1, 2j}` contained in `s`.
pub fn oe(s: &Mask) -> usize {
    (1..).take_while(|j| 2 * j <= s.n()).filter(|j| s.contains(2 * j - 1) && s.contains(2 * j)).count()
}

/// Number of dominoes in a tiling: `#T / 2`.
pub fn kappa(t: &Mask) -> Result<usize> {
    if !t.len().is_multiple_of(2) {
        return invalid(format!("kappa needs an even-cardinality set, got {t}"));
    }
    Ok(t.len() / 2)
}

/// Minimal number of even-odd dominoes covering `b`.
pub fn alpha(b: &Mask) -> usize {
    b.len() - eo(b)
}

/// Minimal number of odd-even dominoes covering `b`.
pub fn beta(b: &Mask) -> usize {
    b.len() - oe(b)
}

/// `sigma_S(i) = #([i] \ S)` for `i` not in `S`.
pub fn sigma(s: &Mask, i: usize) -> Result<usize> {
    if i == 0 {
        return invalid("positions start at 1");
    }
    if s.contains(i) {
        return Err(Error::Overlap(format!("{i} lies in {s}")));
    }
    Ok(i - (1..i).filter(|&j| s.contains(j)).count())
}

/// `sigma_S(B)` as a subset of `[n - #S]`.
pub fn sigma_set(s: &Mask, b: &Mask) -> Result<Mask> {
    if !s.is_disjoint(b) {
        return Err(Error::Overlap(format!("{s} and {b}")));
    }
    let mut out = Vec::with_capacity(b.len());
    for i in b.positions() {
        out.push(sigma(s, i)?);
    }
    Mask::from_positions(s.n().max(b.n()) - s.len(), &out)
}

/// `beta_A(B) = beta(sigma_A(B))`.
pub fn beta_a(a: &Mask, b: &Mask) -> Result<usize> {
    Ok(beta(&sigma_set(a, b)?))
}

fn eo_family(r: usize) -> Vec<Mask> {
    let n = 2 * r;
    let gens = Mask::new(r.saturating_sub(1), if r > 1 { (1 << (r - 1)) - 1 } else { 0 }).unwrap();
    gens.subsets()
        .map(|rr| {
            let mut bits = 0u32;
            for j in rr.positions() {
                bits |= 0b11 << (2 * j - 1);
            }
            Mask::new(n, bits).unwrap()
        })
        .collect()
}

fn oe_star_family(r: usize) -> Vec<Mask> {
    let n = 2 * r;
    let gens = Mask::new(r, if r > 0 { (1 << r) - 1 } else { 0 }).unwrap();
    gens.subsets()
        .map(|rr| {
            let mut bits = 0u32;
            for j in rr.positions() {
                bits |= 0b11 << (2 * j - 2);
            }
            Mask::new(n, bits).unwrap()
        })
        .filter(|s| {
            let p = s.positions();
            p.iter().all(|i| p.iter().all(|j| i.abs_diff(*j) != 2))
        })
        .collect()
}

/// The partial domino tilings `T(r)` of a row of length `2r`, sorted by bit value.
///
/// A subset of `[2r]` is a tiling when it splits as a disjoint union of an
/// even-odd family (`{2j, 2j+1}`, `1 <= j <= r-1`) and an odd-even family
/// (`{2j-1, 2j}`) with no two odd-even dominoes adjacent.
pub fn tilings(r: usize) -> Vec<Mask> {
    assert!(2 * r <= MAX_POSITIONS, "r = {r} is too large");
    let n = 2 * r;
    let eo_sets = eo_family(r);
    let oe_sets = oe_star_family(r);
    let full = Mask::new(n, if n == 32 { u32::MAX } else { (1u32 << n) - 1 }).unwrap();
    full.subsets()
        .filter(|t| {
            eo_sets.iter().any(|s| s.is_subset(t) && oe_sets.contains(&t.difference(s)))
        })
        .collect()
}

/// Splits positions of `c` into `([n]_c^1, [n]_c^{>1})`.
pub fn split_ones(c: &[u32]) -> (Mask, Mask) {
    let n = c.len();
    let mut ones = 0u32;
    for (i, &ci) in c.iter().enumerate() {
        if ci == 1 {
            ones |= 1 << i;
        }
    }
    let ones = Mask::new(n, ones).expect("index too long");
    (ones, ones.complement())
}

/// Removes the entries whose (1-based) positions lie in `t`.
pub fn delete_positions<T: Clone>(seq: &[T], t: &Mask) -> Vec<T> {
    seq.iter().enumerate().filter(|(i, _)| !t.contains(i + 1)).map(|(_, v)| v.clone()).collect()
}

/// `c_{A,B}`: subtract 1 at the positions in `B`, then delete those in `A`.
pub fn index_surgery(c: &[u32], a: &Mask, b: &Mask) -> Result<Vec<u32>> {
    let (ones, big) = split_ones(c);
    if !a.is_subset(&ones) {
        return invalid(format!("A = {a} must only contain positions of entries equal to 1"));
    }
    if !b.is_subset(&big) {
        return invalid(format!("B = {b} must only contain positions of entries greater than 1"));
    }
    let mut out = c.to_vec();
    for i in b.positions() {
        out[i - 1] -= 1;
    }
    Ok(delete_positions(&out, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(n: usize, p: &[usize]) -> Mask {
        Mask::from_positions(n, p).unwrap()
    }

    /// Greedy domino decomposition: the smallest element pairs with its successor.
    /// Returns the odd-even and even-odd dominoes by their left ends.
    fn decompose(t: &Mask) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut rest: Vec<usize> = t.positions();
        let (mut oe_left, mut eo_left) = (vec![], vec![]);
        while let Some(&i) = rest.first() {
            if rest.get(1) != Some(&(i + 1)) {
                return None;
            }
            if i % 2 == 1 {
                oe_left.push(i);
            } else if i < t.n() - 1 {
                eo_left.push(i);
            } else {
                return None;
            }
            rest.drain(..2);
        }
        Some((oe_left, eo_left))
    }

    fn brute_tilings(r: usize) -> Vec<Mask> {
        let n = 2 * r;
        (0u32..1 << n)
            .map(|b| Mask::new(n, b).unwrap())
            .filter(|t| match decompose(t) {
                Some((oe_left, _)) => oe_left.windows(2).all(|w| w[1] - w[0] != 2),
                None => false,
            })
            .collect()
    }

    #[test]
    fn small_tilings() {
        assert_eq!(tilings(0), vec![Mask::empty(0)]);
        assert_eq!(tilings(1), vec![m(2, &[]), m(2, &[1, 2])]);
        assert_eq!(tilings(2), vec![m(4, &[]), m(4, &[1, 2]), m(4, &[2, 3]), m(4, &[3, 4])]);
        assert_eq!(tilings(3).len(), 10);
    }

    #[test]
    fn tiling_counts_match_brute_force() {
        let counts: Vec<usize> = (0..=5).map(|r| tilings(r).len()).collect();
        let brute: Vec<usize> = (0..=5).map(|r| brute_tilings(r).len()).collect();
        assert_eq!(counts, brute);
        // frozen regression values from the brute-force oracle
        assert_eq!(counts, vec![1, 2, 4, 10, 24, 58]);
        for r in 0..=5 {
            assert_eq!(tilings(r), brute_tilings(r));
        }
    }

    #[test]
    fn tilings_decompose_uniquely() {
        for r in 0..=5 {
            for t in tilings(r) {
                assert_eq!(t.len() % 2, 0);
                let (oe_left, eo_left) = decompose(&t).expect("tiling must decompose");
                // oe/eo count every contained pair, not only the dominoes used
                assert!(oe_left.len() <= oe(&t));
                assert!(eo_left.len() <= eo(&t));
                assert_eq!(oe_left.len() + eo_left.len(), kappa(&t).unwrap());
            }
        }
    }

    #[test]
    fn domino_statistics() {
        let s = m(4, &[2, 3]);
        assert_eq!((eo(&s), oe(&s), kappa(&s).unwrap()), (1, 0, 1));
        let e = m(4, &[]);
        assert_eq!((eo(&e), oe(&e), kappa(&e).unwrap()), (0, 0, 0));
        let s = m(6, &[1, 2, 5, 6]);
        assert_eq!((eo(&s), oe(&s), kappa(&s).unwrap()), (0, 2, 2));
        assert!(kappa(&m(4, &[1])).is_err());
    }

    #[test]
    fn sigma_examples() {
        let s = m(6, &[2, 3]);
        assert_eq!(sigma(&s, 1).unwrap(), 1);
        assert_eq!(sigma(&s, 4).unwrap(), 2);
        assert_eq!(sigma(&s, 5).unwrap(), 3);
        assert!(matches!(sigma(&s, 2), Err(Error::Overlap(_))));
        let e = m(6, &[]);
        assert!((1..=6).all(|i| sigma(&e, i).unwrap() == i));
        assert_eq!(sigma(&m(4, &[1, 2]), 3).unwrap(), 1);
    }

    #[test]
    fn cover_count_examples() {
        let b = m(4, &[2, 3]);
        assert_eq!((alpha(&b), beta(&b)), (1, 2));
        let b = m(4, &[1, 4]);
        assert_eq!((alpha(&b), beta(&b)), (2, 2));
        let a = m(4, &[2, 3]);
        assert_eq!(sigma_set(&a, &b).unwrap(), m(2, &[1, 2]));
        assert_eq!(beta_a(&a, &b).unwrap(), 1);
        assert!(beta_a(&a, &m(4, &[3])).is_err());
        assert_eq!((alpha(&m(4, &[])), beta(&m(4, &[]))), (0, 0));
    }

    #[test]
    fn surgery_examples() {
        assert_eq!(index_surgery(&[2, 1], &m(2, &[2]), &m(2, &[1])).unwrap(), vec![1]);
        assert_eq!(index_surgery(&[1, 1], &m(2, &[1, 2]), &m(2, &[])).unwrap(), Vec::<u32>::new());
        assert_eq!(index_surgery(&[3, 2, 1], &m(3, &[]), &m(3, &[1, 2])).unwrap(), vec![2, 1, 1]);
        assert!(index_surgery(&[2, 1], &m(2, &[1]), &m(2, &[])).is_err());
        assert!(index_surgery(&[2, 1], &m(2, &[]), &m(2, &[2])).is_err());
        assert_eq!(split_ones(&[1, 3, 1]), (m(3, &[1, 3]), m(3, &[2])));
        assert_eq!(delete_positions(&['a', 'b', 'c'], &m(3, &[2])), vec!['a', 'c']);
    }

    #[test]
    fn subsets_enumerates_all() {
        let s = m(5, &[1, 3, 4]);
        let subs: Vec<Mask> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|t| t.is_subset(&s)));
        assert_eq!(subs[0], m(5, &[]));
        assert_eq!(Mask::empty(3).subsets().count(), 1);
    }

    proptest! {
        #[test]
        fn cover_bounds(bits in 0u32..256) {
            let b = Mask::new(8, bits).unwrap();
            prop_assert!(alpha(&b) <= b.len());
            prop_assert!(beta(&b) <= b.len());
        }

        #[test]
        fn sigma_is_increasing_onto_prefix(bits in 0u32..256) {
            let s = Mask::new(8, bits).unwrap();
            let image: Vec<usize> = s.complement().positions().into_iter().map(|i| sigma(&s, i).unwrap()).collect();
            let expected: Vec<usize> = (1..=image.len()).collect();
            prop_assert_eq!(image, expected);
        }
    }
}
