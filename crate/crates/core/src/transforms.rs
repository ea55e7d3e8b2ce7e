//! Change of basis between the SZ model and the dagger model.
//!
//! With `b(m; m') = prod C(m_j - 1, m'_j - 1)` and `b̄` the same with sign
//! `(-1)^{m_j - m'_j}`,
//!
//! ```text
//! SZ({0}^{l-1}, k, ...)   = sum b̄(l;l') b̄(k;k') dagger({1̄}^{l'-1}, k', ...)
//! dagger({1̄}^{l-1}, k, ...) = sum b(l;l')  b(k;k')  SZ({0}^{l'-1}, k', ...)
//! ```
//!
//! and their `l = (1, ..., 1)` specialisations. The sums run over `m' <= m`.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::models::{zeta_dagger, zeta_sz};
use crate::series::QSeries;
use crate::verify::Report;
use crate::words::{BarIndex, PairIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoeffKind {
    B,
    BBar,
}

/// `b(m; m')` or `b̄(m; m')`; zero unless `m'_j <= m_j` for every `j`.
pub fn coeff(kind: CoeffKind, m: &[u32], mp: &[u32]) -> Result<BigInt> {
    if m.len() != mp.len() {
        return invalid(format!("length mismatch: {} vs {}", m.len(), mp.len()));
    }
    if m.iter().chain(mp).any(|&x| x == 0) {
        return invalid("entries must be positive");
    }
    let mut out = BigInt::one();
    for (&a, &b) in m.iter().zip(mp) {
        if b > a {
            return Ok(BigInt::zero());
        }
        out *= binomial(BigInt::from(a - 1), BigInt::from(b - 1));
        if kind == CoeffKind::BBar && (a - b) % 2 == 1 {
            out = -out;
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// SZ values written in the dagger model (coefficients `b̄`).
    SzFromDagger,
    /// Dagger values written in the SZ model (coefficients `b`).
    DaggerFromSz,
}

impl Direction {
    pub fn kind(self) -> CoeffKind {
        match self {
            Direction::SzFromDagger => CoeffKind::BBar,
            Direction::DaggerFromSz => CoeffKind::B,
        }
    }

    pub fn inverse(self) -> Self {
        match self {
            Direction::SzFromDagger => Direction::DaggerFromSz,
            Direction::DaggerFromSz => Direction::SzFromDagger,
        }
    }
}

/// One term `coeff * model(l', k')` of an expansion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    #[serde(with = "bigint_string")]
    pub coeff: BigInt,
    pub l: Vec<u32>,
    pub k: Vec<u32>,
}

mod bigint_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// All `m'` with `1 <= m'_j <= m_j`, in lexicographic order.
fn below(m: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &x in m {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                (1..=x).map(move |y| {
                    let mut q = p.clone();
                    q.push(y);
                    q
                })
            })
            .collect();
    }
    out
}

/// The expansion of `source(l, k)` in the target model. Without bars, `l` is
/// taken to be all ones and stays so in every term.
pub fn expand(direction: Direction, with_bars: bool, l: &[u32], k: &[u32]) -> Result<Vec<Term>> {
    let l: Vec<u32> = if with_bars { l.to_vec() } else { vec![1; k.len()] };
    if l.len() != k.len() {
        return invalid(format!("l and k differ in length: {} vs {}", l.len(), k.len()));
    }
    if l.iter().chain(k).any(|&x| x == 0) {
        return invalid("entries of l and k must be positive");
    }
    let kind = direction.kind();
    let mut out = Vec::new();
    for lp in below(&l) {
        let cl = coeff(kind, &l, &lp)?;
        for kp in below(k) {
            let c = &cl * coeff(kind, k, &kp)?;
            out.push(Term { coeff: c, l: lp.clone(), k: kp });
        }
    }
    Ok(out)
}

/// `({0}^{l_1-1}, k_1, ..., {0}^{l_r-1}, k_r)`.
pub fn sz_index(l: &[u32], k: &[u32]) -> Vec<u32> {
    l.iter().zip(k).flat_map(|(&a, &b)| std::iter::repeat_n(0, a as usize - 1).chain([b])).collect()
}

/// `({1̄}^{l_1-1}, k_1, ..., {1̄}^{l_r-1}, k_r)`.
pub fn dagger_index(l: &[u32], k: &[u32]) -> BarIndex {
    let flat: Vec<u32> = l.iter().zip(k).flat_map(|(&a, &b)| [a, b]).collect();
    BarIndex::from_pairs(&PairIndex(flat))
}

fn evaluate(model_is_sz: bool, l: &[u32], k: &[u32], order: usize) -> Result<QSeries> {
    if model_is_sz {
        zeta_sz(&sz_index(l, k), order)
    } else {
        zeta_dagger(&dagger_index(l, k), order)
    }
}

/// Checks formula `which` (1 to 4) as truncated series. Formulas 2 and 4 ignore `l`.
pub fn verify_transform(which: u8, l: &[u32], k: &[u32], order: usize) -> Result<Report> {
    let (direction, with_bars) = match which {
        1 => (Direction::SzFromDagger, true),
        2 => (Direction::SzFromDagger, false),
        3 => (Direction::DaggerFromSz, true),
        4 => (Direction::DaggerFromSz, false),
        _ => return invalid(format!("formula must be 1..4, got {which}")),
    };
    let ones = vec![1; k.len()];
    let l = if with_bars { l } else { &ones[..] };
    let source_is_sz = direction == Direction::SzFromDagger;
    let left = evaluate(source_is_sz, l, k, order)?;
    let mut right = QSeries::zero(order);
    for t in expand(direction, with_bars, l, k)? {
        right += &evaluate(!source_is_sz, &t.l, &t.k, order)?.scale_int(&t.coeff);
    }
    let mut report = Report::new(format!("transform_{which}")).param("k", k).param("order", order);
    if with_bars {
        report = report.param("l", l);
    }
    Ok(report.with_series(&left, &right))
}

/// Substitutes one expansion into the other and collects: the result must be
/// the single term `1 * (l, k)`.
pub fn round_trip(direction: Direction, with_bars: bool, l: &[u32], k: &[u32]) -> Result<Vec<Term>> {
    let mut acc: std::collections::BTreeMap<(Vec<u32>, Vec<u32>), BigInt> = Default::default();
    for t in expand(direction, with_bars, l, k)? {
        for u in expand(direction.inverse(), with_bars, &t.l, &t.k)? {
            *acc.entry((u.l, u.k)).or_default() += &t.coeff * &u.coeff;
        }
    }
    Ok(acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((l, k), coeff)| Term { coeff, l, k }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(c: i64, k: &[u32]) -> Term {
        Term { coeff: c.into(), l: vec![1; k.len()], k: k.to_vec() }
    }

    #[test]
    fn coefficients() {
        assert_eq!(coeff(CoeffKind::B, &[3], &[2]).unwrap(), 2.into());
        assert_eq!(coeff(CoeffKind::BBar, &[3], &[2]).unwrap(), (-2).into());
        assert_eq!(coeff(CoeffKind::B, &[3], &[4]).unwrap(), 0.into());
        for m in below(&[4, 3]) {
            assert_eq!(coeff(CoeffKind::B, &m, &m).unwrap(), 1.into());
            assert_eq!(coeff(CoeffKind::BBar, &m, &m).unwrap(), 1.into());
        }
        assert!(coeff(CoeffKind::B, &[1, 2], &[1]).is_err());
    }

    #[test]
    fn expansions() {
        assert_eq!(expand(Direction::DaggerFromSz, false, &[], &[2]).unwrap(), vec![t(1, &[1]), t(1, &[2])]);
        assert_eq!(expand(Direction::SzFromDagger, false, &[], &[2]).unwrap(), vec![t(-1, &[1]), t(1, &[2])]);
        assert_eq!(expand(Direction::SzFromDagger, true, &[], &[]).unwrap(), vec![t(1, &[])]);
        for term in expand(Direction::DaggerFromSz, true, &[3, 2], &[2, 4]).unwrap() {
            assert!(term.l[0] <= 3 && term.l[1] <= 2 && term.k[0] <= 2 && term.k[1] <= 4);
        }
    }

    #[test]
    fn indices() {
        assert_eq!(sz_index(&[3, 1], &[2, 5]), vec![0, 0, 2, 5]);
        assert_eq!(dagger_index(&[2], &[1]).to_string(), BarIndex::parse("b,1").unwrap().to_string());
    }

    #[test]
    fn formula_examples() {
        assert!(verify_transform(4, &[], &[2], 20).unwrap().passed());
        assert!(verify_transform(3, &[2], &[1], 20).unwrap().passed());
        assert!(verify_transform(2, &[], &[1], 20).unwrap().passed());
        assert!(verify_transform(1, &[2, 3], &[1, 2], 20).unwrap().passed());
        assert!(verify_transform(5, &[], &[1], 20).is_err());
    }

    #[test]
    fn round_trips_are_identity() {
        for k in 1..=5 {
            for d in [Direction::SzFromDagger, Direction::DaggerFromSz] {
                assert_eq!(round_trip(d, false, &[], &[k]).unwrap(), vec![t(1, &[k])]);
            }
        }
        for l in 1..=5u32 {
            for k in 1..=6 - l {
                for d in [Direction::SzFromDagger, Direction::DaggerFromSz] {
                    let expect = vec![Term { coeff: 1.into(), l: vec![l], k: vec![k] }];
                    assert_eq!(round_trip(d, true, &[l], &[k]).unwrap(), expect);
                }
            }
        }
    }

    #[test]
    fn term_json_round_trip() {
        let e = expand(Direction::SzFromDagger, true, &[2], &[3]).unwrap();
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(serde_json::from_str::<Vec<Term>>(&s).unwrap(), e);
    }
}
