//! Executable versions of the identities, each producing a [`Report`].
//!
//! Checks go through a [`Verifier`], which owns the word constructor. A
//! verifier built with a [`Mutation`] uses deliberately wrong words, so the
//! same checks can be shown to fail.

mod rank;
mod report;
mod suite;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub use rank::rank;
pub use report::{Report, Status, Summary, Witness};
pub use suite::{run_suite, run_suite_with, Case, SuiteConfig, SuiteOutcome};

use crate::constructor::{Constructor, Mutation};
use crate::error::{invalid, Result};
use crate::models::{
    bridge_sides, eval_at_rational_q, nested_sum, xi, z_bz, z_bz_at, z_bz_finite, z_classical, z_dagger,
    z_dagger_at, z_dagger_finite, zeta_bz, zeta_dagger, zeta_dagger_finite, zeta_diamond_finite, zeta_n_diamond,
    zeta_n_lk, DiamondVariant, Eps, Factor, FiniteModel, FiniteParams, SeriesKernel, Slot,
};
use crate::rational::{sign, Rational};
use crate::words::{AlgebraElement, BarIndex, PairIndex, Space, Word};

fn coefficient_stats(u: &AlgebraElement) -> String {
    let max = u.terms().map(|(_, c)| c.abs()).max().unwrap_or_else(BigInt::zero);
    let neg = u.terms().filter(|(_, c)| c.is_negative()).count();
    format!("{} terms, {} negative, max |coeff| {}", u.len(), neg, max)
}

fn dual_pair(l: &[u32], k: &[u32]) -> Result<(PairIndex, PairIndex)> {
    let c = PairIndex::from_lk(l, k)?;
    let rl: Vec<u32> = k.iter().rev().copied().collect();
    let rk: Vec<u32> = l.iter().rev().copied().collect();
    Ok((c, PairIndex::from_lk(&rl, &rk)?))
}

/// Runs identity checks with one word constructor.
#[derive(Debug, Default)]
pub struct Verifier {
    constructor: Constructor,
}

impl Verifier {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_mutation(m: Mutation) -> Self {
        Verifier { constructor: Constructor::with_mutation(m) }
    }

    pub fn constructor(&self) -> &Constructor {
        &self.constructor
    }

    /// `xi^eps_{q,N}(c) = Z^dagger_{q,N}(E_q^eps(c))`.
    pub fn main_finite(&self, eps: Eps, c: &PairIndex, n: u32, order: usize) -> Result<Report> {
        let word = self.constructor.e_q(eps, c.flat())?;
        let left = xi(eps, c, FiniteParams::right(n, order)?)?;
        let right = z_dagger_finite(&word, n, order)?;
        Ok(Report::new("main_finite")
            .param("eps", eps.value())
            .param("c", c.flat())
            .param("N", n)
            .param("order", order)
            .detail(coefficient_stats(&word))
            .with_series(&left, &right))
    }

    /// `zeta^{diamond,BZ}_{q,N}({1}^{l-1}, k+1, ...) = Z^BZ_{q,N}(D_q(c))` as series, and at
    /// each rational sample `q` also through the dagger side at `1/q`:
    /// `(-1)^{sum c} Z^dagger_{1/q,N}(E_q^1(c))` and `(-1)^{sum c} xi^1_{1/q,N}(c)`.
    pub fn main_finite_bz(&self, c: &PairIndex, n: u32, order: usize, qsamples: &[Rational]) -> Result<Report> {
        let d = self.constructor.d_q(c.flat())?;
        let k = c.diamond_index();
        let left = zeta_diamond_finite(DiamondVariant::Bz, &k, FiniteParams::right(n, order)?)?;
        let right = z_bz_finite(&d, n, order)?;
        let mut report = Report::new("main_finite_bz")
            .param("c", c.flat())
            .param("N", n)
            .param("order", order)
            .param("q", qsamples.iter().map(|q| q.to_string()).collect::<Vec<_>>())
            .with_series(&left, &right);
        let odd = c.total() % 2 == 1;
        let e1 = self.constructor.e_q(Eps::One, c.flat())?;
        let plain = BarIndex::plain(&k);
        for (i, q) in qsamples.iter().enumerate() {
            let qinv = q.recip();
            let target = eval_at_rational_q(FiniteModel::DiamondBz, &plain, 0, n, q)?;
            report.compare_rational(&[i, 0], &target, &z_bz_at(&d, n, q)?);
            report.compare_rational(&[i, 1], &target, &(sign(odd) * z_dagger_at(&e1, n, &qinv)?));
            let dag = eval_at_rational_q(FiniteModel::DiamondDagger, &plain, 0, n, &qinv)?;
            report.compare_rational(&[i, 2], &target, &(sign(odd) * dag));
        }
        Ok(report)
    }

    /// Both identities of the infinite theorem at truncation `order`, with the
    /// infinite sums evaluated directly.
    pub fn main_infinite(&self, c: &PairIndex, order: usize) -> Result<Report> {
        let e = self.constructor.e_q(Eps::Zero, c.flat())?;
        let d = self.constructor.d_q(c.flat())?;
        let mut report = Report::new("main_infinite").param("c", c.flat()).param("order", order);
        report.compare_series(&[0], &zeta_dagger(&BarIndex::from_pairs(c), order)?, &z_dagger(&e, order)?);
        report.compare_series(&[1], &zeta_bz(&c.diamond_index(), order)?, &z_bz(&d, order)?);
        Ok(report)
    }

    /// `zeta_N(l; k) = Z_N(E(c))` and `zeta_N^diamond = Z_N(D(c))` exactly.
    pub fn classical(&self, c: &PairIndex, n: u32) -> Result<Report> {
        let e = self.constructor.e_classical(Eps::Zero, c.flat())?;
        let d = self.constructor.d_classical(c.flat())?;
        let mut report = Report::new("classical").param("c", c.flat()).param("N", n);
        report.compare_rational(&[0], &zeta_n_lk(c, n)?, &z_classical(&e, n)?);
        report.compare_rational(&[1], &zeta_n_diamond(&c.diamond_index(), n)?, &z_classical(&d, n)?);
        Ok(report)
    }
}

/// `Z^dagger_{1/q,N}(w) = (-1)^{|w|} Z^BZ_{q,N}(w)` for a word of `h^1`.
pub fn verify_bridge(w: &Word, n: u32, q: &Rational) -> Result<Report> {
    let (left, right) = bridge_sides(&AlgebraElement::from_word(w.clone()), n, q)?;
    Ok(Report::new("bridge").param("word", w.compact()).param("N", n).param("q", q.to_string()).with_rational(&left, &right))
}

/// The two dualities and the q-MSW formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RemarkKind {
    DualFlat,
    DualDiamond,
    Qmsw,
}

impl RemarkKind {
    pub fn name(self) -> &'static str {
        match self {
            RemarkKind::DualFlat => "dual_flat",
            RemarkKind::DualDiamond => "dual_diamond",
            RemarkKind::Qmsw => "qmsw",
        }
    }
}

/// Checks one remark identity; `l` is ignored by [`RemarkKind::Qmsw`].
pub fn verify_remark(kind: RemarkKind, l: &[u32], k: &[u32], n: u32, order: usize) -> Result<Report> {
    let p = FiniteParams::right(n, order)?;
    let report = Report::new(kind.name()).param("k", k).param("N", n).param("order", order);
    match kind {
        RemarkKind::DualFlat => {
            let (c, dual) = dual_pair(l, k)?;
            let left = zeta_dagger_finite(&BarIndex::from_pairs(&c), p)?;
            let right = zeta_dagger_finite(&BarIndex::from_pairs(&dual), p)?;
            Ok(report.param("l", l).with_series(&left, &right))
        }
        RemarkKind::DualDiamond => {
            let (c, dual) = dual_pair(l, k)?;
            let left = zeta_diamond_finite(DiamondVariant::Bz, &c.diamond_index(), p)?;
            let right = zeta_diamond_finite(DiamondVariant::Bz, &dual.diamond_index(), p)?;
            Ok(report.param("l", l).with_series(&left, &right))
        }
        RemarkKind::Qmsw => {
            if k.contains(&0) {
                return invalid("entries of k must be positive");
            }
            let left = zeta_dagger_finite(&BarIndex::plain(k), p)?;
            let mut slots = Vec::new();
            for &kj in k {
                slots.push(Slot { factor: Factor::BoundaryBz, weak_after: kj > 1 });
                for i in 1..kj {
                    slots.push(Slot { factor: Factor::Bz(1), weak_after: i + 1 < kj });
                }
            }
            let right = nested_sum(&SeriesKernel { order }, &slots, 0, n as u64, n as u64)?;
            Ok(report.with_series(&left, &right))
        }
    }
}

/// Which evaluation map the rank check uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RankModel {
    Dagger,
    Bz,
}

/// Exact rank of the matrix of q-coefficients of `Z_{q,N}(w)` over the words
/// `w` of `h^1` with weight at most `max_weight` and all `N` in `ns`. Full row
/// rank is evidence of injectivity at this scale, not a proof.
pub fn independence_check(model: RankModel, max_weight: usize, ns: &[u32], order: usize) -> Result<Report> {
    let words = crate::words::h1_basis(max_weight);
    let mut rows = Vec::with_capacity(words.len());
    for w in &words {
        let u = AlgebraElement::from_word(w.clone());
        u.require_space(Space::H1)?;
        let mut row = Vec::new();
        for &n in ns {
            let s = match model {
                RankModel::Dagger => z_dagger_finite(&u, n, order)?,
                RankModel::Bz => z_bz_finite(&u, n, order)?,
            };
            row.extend(s.coeffs().iter().cloned());
        }
        rows.push(row);
    }
    let r = rank(rows);
    let name = match model {
        RankModel::Dagger => "independence_dagger",
        RankModel::Bz => "independence_bz",
    };
    let mut report = Report::new(name)
        .param("max_weight", max_weight)
        .param("N", ns)
        .param("order", order)
        .detail(format!("rank {} of {} basis words (desk-scale evidence, not a proof)", r, words.len()));
    report.compare_rational(&[], &Rational::from_integer(r.into()), &Rational::from_integer(words.len().into()));
    Ok(report)
}
