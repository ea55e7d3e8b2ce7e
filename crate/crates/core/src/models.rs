//! Evaluators for the q-MZV models and the evaluation maps `Z` on words.
//!
//! Every model is a nested sum over a chain `lo < n_1 <=/< n_2 <=/< ... < hi`
//! whose summand is a product of one factor per position. [`nested_sum`]
//! evaluates such chains right to left with suffix sums, so a chain of depth
//! `r` over `N` lattice values costs `O(r N)` multiplications. The same code
//! runs over truncated q-series ([`SeriesKernel`]), exact rational points
//! ([`RationalKernel`]) and the classical `q -> 1` limits ([`ClassicalKernel`]).
//!
//! Infinite models are truncated at order `D`: the rightmost variable always
//! carries a factor `q^{n_r}` or higher, so lattice points with `n_r > D`
//! only contribute above `q^D`, and every other variable is bounded by `n_r`.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::rational::Rational;
use crate::series::{inv_one_minus_qn, QSeries};
use crate::words::{AlgebraElement, BarEntry, BarIndex, PairIndex, Space, Word};

/// The two flavours of the word constructor and of `xi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Eps {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
}

impl Eps {
    pub fn value(self) -> u32 {
        match self {
            Eps::Zero => 0,
            Eps::One => 1,
        }
    }

    pub fn from_u32(e: u32) -> Result<Self> {
        match e {
            0 => Ok(Eps::Zero),
            1 => Ok(Eps::One),
            _ => invalid(format!("eps must be 0 or 1, got {e}")),
        }
    }

    pub fn both() -> [Eps; 2] {
        [Eps::Zero, Eps::One]
    }
}

/// Truncation data of the finite models: `M < n_1`, `n_r < N`, series order `D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteParams {
    pub m: u32,
    pub n: u32,
    pub order: usize,
}

impl FiniteParams {
    pub fn new(m: u32, n: u32, order: usize) -> Result<Self> {
        let p = FiniteParams { m, n, order };
        p.check()?;
        Ok(p)
    }

    /// `M = 0`.
    pub fn right(n: u32, order: usize) -> Result<Self> {
        Self::new(0, n, order)
    }

    fn check(&self) -> Result<()> {
        if self.n == 0 {
            return invalid("N must be positive");
        }
        if self.m >= self.n {
            return invalid(format!("need M < N, got M = {}, N = {}", self.m, self.n));
        }
        Ok(())
    }
}

/// Per-position summand factors. `n` is the summation variable, `N` the right truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    /// `q^n / (1 - q^n)^k`
    Plain(u32),
    /// `q^{n(k-1)} / (1 - q^n)^k`
    Bz(u32),
    /// `q^{nk} / (1 - q^n)^k`; `k = 0` gives 1
    Sz(u32),
    /// `1 / (1 - q^{N-n})`
    Boundary,
    /// `q^{N-n} / (1 - q^{N-n})`
    BoundaryBz,
    One,
}

/// A coefficient domain together with the standard summand factors.
pub trait Kernel {
    type Value: Clone;
    fn zero(&self) -> Self::Value;
    fn one(&self) -> Self::Value;
    fn add_assign(&self, acc: &mut Self::Value, x: &Self::Value);
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn factor(&self, f: Factor, n: u64, big_n: u64) -> Result<Self::Value>;
}

/// Truncated q-series at a fixed order.
#[derive(Clone, Copy, Debug)]
pub struct SeriesKernel {
    pub order: usize,
}

impl Kernel for SeriesKernel {
    type Value = QSeries;

    fn zero(&self) -> QSeries {
        QSeries::zero(self.order)
    }

    fn one(&self) -> QSeries {
        QSeries::one(self.order)
    }

    fn add_assign(&self, acc: &mut QSeries, x: &QSeries) {
        *acc += x;
    }

    fn mul(&self, a: &QSeries, b: &QSeries) -> QSeries {
        a * b
    }

    fn factor(&self, f: Factor, n: u64, big_n: u64) -> Result<QSeries> {
        let d = self.order;
        let n = n as usize;
        let shifted = |base: usize, k: u32, shift: usize| -> Result<QSeries> {
            if shift > d {
                return Ok(QSeries::zero(d));
            }
            Ok(inv_one_minus_qn(base, k, d)?.shift(shift))
        };
        match f {
            Factor::Plain(k) => shifted(n, k, n),
            Factor::Bz(k) => shifted(n, k, n * (k as usize - 1)),
            Factor::Sz(0) => Ok(self.one()),
            Factor::Sz(k) => shifted(n, k, n * k as usize),
            Factor::Boundary => shifted(big_n as usize - n, 1, 0),
            Factor::BoundaryBz => shifted(big_n as usize - n, 1, big_n as usize - n),
            Factor::One => Ok(self.one()),
        }
    }
}

/// Exact values at a rational point `q` with `q` not in `{0, 1, -1}`.
#[derive(Clone, Debug)]
pub struct RationalKernel {
    q: Rational,
}

impl RationalKernel {
    pub fn new(q: Rational) -> Result<Self> {
        if q.is_zero() {
            return invalid("q = 0 is excluded");
        }
        if q.is_one() {
            return Err(Error::VanishingDenominator { n: 1 });
        }
        if q == -Rational::one() {
            return Err(Error::VanishingDenominator { n: 2 });
        }
        Ok(RationalKernel { q })
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    fn qpow(&self, e: u64) -> Rational {
        num_traits::pow(self.q.clone(), e as usize)
    }

    fn one_minus(&self, n: u64) -> Result<Rational> {
        let v = Rational::one() - self.qpow(n);
        if v.is_zero() {
            return Err(Error::VanishingDenominator { n });
        }
        Ok(v)
    }
}

impl Kernel for RationalKernel {
    type Value = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }

    fn one(&self) -> Rational {
        Rational::one()
    }

    fn add_assign(&self, acc: &mut Rational, x: &Rational) {
        *acc += x;
    }

    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }

    fn factor(&self, f: Factor, n: u64, big_n: u64) -> Result<Rational> {
        let pk = |num_exp: u64, base: u64, k: u32| -> Result<Rational> {
            let den = num_traits::pow(self.one_minus(base)?, k as usize);
            Ok(self.qpow(num_exp) / den)
        };
        match f {
            Factor::Plain(k) => pk(n, n, k),
            Factor::Bz(k) => pk(n * (k as u64 - 1), n, k),
            Factor::Sz(k) => pk(n * k as u64, n, k),
            Factor::Boundary => pk(0, big_n - n, 1),
            Factor::BoundaryBz => pk(big_n - n, big_n - n, 1),
            Factor::One => Ok(Rational::one()),
        }
    }
}

/// The classical limits: `q^n/(1-q^n)^k -> 1/n^k` and `1/(1-q^{N-n}) -> 1/(N-n)`
/// after scaling by `(1-q)^weight`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ClassicalKernel;

impl Kernel for ClassicalKernel {
    type Value = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }

    fn one(&self) -> Rational {
        Rational::one()
    }

    fn add_assign(&self, acc: &mut Rational, x: &Rational) {
        *acc += x;
    }

    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }

    fn factor(&self, f: Factor, n: u64, big_n: u64) -> Result<Rational> {
        let inv_pow = |base: u64, k: u32| Rational::new(BigInt::one(), num_traits::pow(BigInt::from(base), k as usize));
        Ok(match f {
            Factor::Plain(k) | Factor::Bz(k) | Factor::Sz(k) => inv_pow(n, k),
            Factor::Boundary | Factor::BoundaryBz => inv_pow(big_n - n, 1),
            Factor::One => Rational::one(),
        })
    }
}

/// One position of a summation chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Slot {
    pub factor: Factor,
    /// `n_i <= n_{i+1}` when set, `n_i < n_{i+1}` otherwise.
    pub weak_after: bool,
}

/// Sums `prod_i factor_i(n_i)` over chains `lo < n_1 ... n_r < hi`.
///
/// The empty chain sums to one.
pub fn nested_sum<K: Kernel>(kernel: &K, slots: &[Slot], lo: u64, hi: u64, big_n: u64) -> Result<K::Value> {
    nested_sum_with(kernel, slots.len(), &|i| slots[i].weak_after, lo, hi, &|i, n| {
        kernel.factor(slots[i].factor, n, big_n)
    })
}

/// [`nested_sum`] with arbitrary per-position factors.
pub fn nested_sum_with<K: Kernel>(
    kernel: &K,
    len: usize,
    weak_after: &dyn Fn(usize) -> bool,
    lo: u64,
    hi: u64,
    factor: &dyn Fn(usize, u64) -> Result<K::Value>,
) -> Result<K::Value> {
    if len == 0 {
        return Ok(kernel.one());
    }
    if hi <= lo + 1 {
        return Ok(kernel.zero());
    }
    let ns: Vec<u64> = (lo + 1..hi).collect();
    let mut cur: Vec<K::Value> = ns.iter().map(|&n| factor(len - 1, n)).collect::<Result<_>>()?;
    for j in (0..len - 1).rev() {
        let weak = weak_after(j);
        let mut acc = kernel.zero();
        let mut next = vec![kernel.zero(); ns.len()];
        for idx in (0..ns.len()).rev() {
            if weak {
                kernel.add_assign(&mut acc, &cur[idx]);
                next[idx] = kernel.mul(&factor(j, ns[idx])?, &acc);
            } else {
                next[idx] = kernel.mul(&factor(j, ns[idx])?, &acc);
                kernel.add_assign(&mut acc, &cur[idx]);
            }
        }
        cur = next;
    }
    let mut total = kernel.zero();
    for v in &cur {
        kernel.add_assign(&mut total, v);
    }
    Ok(total)
}

fn dagger_slots(k: &BarIndex, finite: bool) -> Result<Vec<Slot>> {
    k.entries()
        .iter()
        .map(|e| match e {
            BarEntry::Bar => Ok(Slot { factor: if finite { Factor::Boundary } else { Factor::One }, weak_after: true }),
            BarEntry::Int(0) => invalid("index entries must be positive"),
            BarEntry::Int(k) => Ok(Slot { factor: Factor::Plain(*k), weak_after: false }),
        })
        .collect()
}

fn strict_slots(k: &[u32], factor: fn(u32) -> Factor) -> Vec<Slot> {
    k.iter().map(|&x| Slot { factor: factor(x), weak_after: false }).collect()
}

fn check_positive(k: &[u32]) -> Result<()> {
    if k.contains(&0) {
        return invalid("index entries must be positive");
    }
    Ok(())
}

fn check_dagger_admissible(k: &BarIndex) -> Result<()> {
    if !k.is_admissible() {
        return Err(Error::NotAdmissible(k.to_string()));
    }
    Ok(())
}

fn check_admissible(k: &[u32]) -> Result<()> {
    check_positive(k)?;
    if k.last() == Some(&1) {
        return Err(Error::NotAdmissible(format!("{k:?}")));
    }
    Ok(())
}

/// Which boundary factor the diamond models attach to the positions in `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DiamondVariant {
    /// `q^{N-n}/(1-q^{N-n})` on `A`, `q^{n(k-1)}/(1-q^n)^k` elsewhere.
    Bz,
    /// `1/(1-q^{N-n})` on `A`, `q^n/(1-q^n)^k` elsewhere.
    Dagger,
}

// --- generic model sums -------------------------------------------------------

fn dagger_generic<K: Kernel>(kernel: &K, k: &BarIndex, m: u32, n: u32) -> Result<K::Value> {
    check_dagger_admissible(k)?;
    nested_sum(kernel, &dagger_slots(k, true)?, m as u64, n as u64, n as u64)
}

fn bz_generic<K: Kernel>(kernel: &K, k: &[u32], n: u32) -> Result<K::Value> {
    check_positive(k)?;
    nested_sum(kernel, &strict_slots(k, Factor::Bz), 0, n as u64, n as u64)
}

fn diamond_generic<K: Kernel>(kernel: &K, variant: DiamondVariant, k: &[u32], m: u32, n: u32) -> Result<K::Value> {
    check_admissible(k)?;
    let ones: Vec<usize> = (0..k.len()).filter(|&i| k[i] == 1).collect();
    let mut total = kernel.zero();
    for mask in 0u64..1 << ones.len() {
        let slots: Vec<Slot> = k
            .iter()
            .enumerate()
            .map(|(i, &ki)| {
                let in_a = ones.iter().position(|&o| o == i).is_some_and(|p| mask >> p & 1 == 1);
                match (in_a, variant) {
                    (true, DiamondVariant::Bz) => Slot { factor: Factor::BoundaryBz, weak_after: true },
                    (true, DiamondVariant::Dagger) => Slot { factor: Factor::Boundary, weak_after: true },
                    (false, DiamondVariant::Bz) => Slot { factor: Factor::Bz(ki), weak_after: false },
                    (false, DiamondVariant::Dagger) => Slot { factor: Factor::Plain(ki), weak_after: false },
                }
            })
            .collect();
        let v = nested_sum(kernel, &slots, m as u64, n as u64, n as u64)?;
        kernel.add_assign(&mut total, &v);
    }
    Ok(total)
}

// --- finite models --------------------------------------------------------------

/// The finite dagger model `zeta^dagger_{q,M,N}(k)` for an admissible bar-index.
pub fn zeta_dagger_finite(k: &BarIndex, p: FiniteParams) -> Result<QSeries> {
    p.check()?;
    dagger_generic(&SeriesKernel { order: p.order }, k, p.m, p.n)
}

/// The finite Bradley-Zhao model `zeta^BZ_{q,N}(k)`, defined for every index.
pub fn zeta_bz_finite(k: &[u32], n: u32, order: usize) -> Result<QSeries> {
    FiniteParams::right(n, order)?;
    bz_generic(&SeriesKernel { order }, k, n)
}

/// The diamond models `zeta^{diamond,BZ}_{q,M,N}` and `zeta^{diamond,dagger}_{q,M,N}`.
pub fn zeta_diamond_finite(variant: DiamondVariant, k: &[u32], p: FiniteParams) -> Result<QSeries> {
    p.check()?;
    diamond_generic(&SeriesKernel { order: p.order }, variant, k, p.m, p.n)
}

/// `xi^eps_{q,M,N}(l1, k1, ..., lr, kr)`: the dagger model on
/// `({1̄}^{l1-1}, k1, ...)` for `eps = 0`, the diamond-dagger model on
/// `({1}^{l1-1}, k1+1, ...)` for `eps = 1`.
pub fn xi(eps: Eps, c: &PairIndex, p: FiniteParams) -> Result<QSeries> {
    match eps {
        Eps::Zero => zeta_dagger_finite(&BarIndex::from_pairs(c), p),
        Eps::One => zeta_diamond_finite(DiamondVariant::Dagger, &c.diamond_index(), p),
    }
}

// --- infinite models ------------------------------------------------------------

/// `zeta^dagger_q(k)` truncated at `order`, through the run-length form
/// `sum_{0=n_0<n_1<...<n_r} prod_j C(n_j - n_{j-1} + l_j - 2, l_j - 1) q^{n_j}/(1-q^{n_j})^{k_j}`.
pub fn zeta_dagger(k: &BarIndex, order: usize) -> Result<QSeries> {
    check_dagger_admissible(k)?;
    let c = k.to_pairs()?;
    let kernel = SeriesKernel { order };
    let d = order;
    // prev[n] holds the partial sum with the last strict variable equal to n
    let mut prev: Vec<QSeries> = vec![QSeries::zero(d); d + 1];
    prev[0] = QSeries::one(d);
    for (l, kj) in c.pairs() {
        let mut cur = vec![QSeries::zero(d); d + 1];
        for n in 1..=d {
            let mut s = QSeries::zero(d);
            for (np, pv) in prev.iter().enumerate().take(n) {
                if pv.is_zero() {
                    continue;
                }
                let w = binomial(BigInt::from(n - np + l as usize - 2), BigInt::from(l - 1));
                s += &pv.scale_int(&w);
            }
            if !s.is_zero() {
                cur[n] = &kernel.factor(Factor::Plain(kj), n as u64, 0)? * &s;
            }
        }
        prev = cur;
    }
    if c.depth() == 0 {
        return Ok(QSeries::one(d));
    }
    let mut total = QSeries::zero(d);
    for v in &prev[1..] {
        total += v;
    }
    Ok(total)
}

/// `zeta^dagger_q(k)` as the literal weak/strict nested sum (bars contribute 1).
pub fn zeta_dagger_nested(k: &BarIndex, order: usize) -> Result<QSeries> {
    check_dagger_admissible(k)?;
    nested_sum(&SeriesKernel { order }, &dagger_slots(k, false)?, 0, order as u64 + 1, 0)
}

/// `zeta^BZ_q(k)` for `k` admissible (`k_r >= 2`), truncated at `order`.
pub fn zeta_bz(k: &[u32], order: usize) -> Result<QSeries> {
    check_admissible(k)?;
    nested_sum(&SeriesKernel { order }, &strict_slots(k, Factor::Bz), 0, order as u64 + 1, 0)
}

/// The Schlesinger-Zudilin model; entries may be 0 except the last.
pub fn zeta_sz(k: &[u32], order: usize) -> Result<QSeries> {
    if k.last() == Some(&0) {
        return Err(Error::NotAdmissible(format!("{k:?}")));
    }
    nested_sum(&SeriesKernel { order }, &strict_slots(k, Factor::Sz), 0, order as u64 + 1, 0)
}

/// Infinite models selectable at run time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum InfiniteModel {
    Dagger,
    Bz,
    Sz,
}

/// Dispatches to [`zeta_dagger`], [`zeta_bz`] or [`zeta_sz`]. Bars are only
/// accepted by the dagger model; SZ entries are given as plain integers.
pub fn zeta_infinite(model: InfiniteModel, k: &BarIndex, order: usize) -> Result<QSeries> {
    match model {
        InfiniteModel::Dagger => zeta_dagger(k, order),
        InfiniteModel::Bz => zeta_bz(&k.as_plain()?, order),
        InfiniteModel::Sz => zeta_sz(&k.as_plain()?, order),
    }
}

/// Argument of the polynomial-numerator model: exponents `k_j` and numerators `Q_j`
/// given by coefficient lists (constant term first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyModelArg {
    pub k: Vec<u32>,
    pub polys: Vec<Vec<Rational>>,
}

impl PolyModelArg {
    pub fn new(k: Vec<u32>, polys: Vec<Vec<Rational>>) -> Result<Self> {
        check_positive(&k)?;
        if k.len() != polys.len() {
            return invalid("one numerator polynomial per exponent is required");
        }
        for (j, (kj, q)) in k.iter().zip(&polys).enumerate() {
            let deg = q.iter().rposition(|c| !c.is_zero());
            if deg.is_some_and(|d| d > *kj as usize) {
                return invalid(format!("deg Q_{} exceeds k_{} = {kj}", j + 1, j + 1));
            }
        }
        if let Some(last) = polys.last() {
            if last.first().is_some_and(|c| !c.is_zero()) {
                return invalid("the last numerator must have zero constant term");
            }
        }
        Ok(PolyModelArg { k, polys })
    }
}

/// `zeta_q(k; Q) = sum_{0<n_1<...<n_r} prod_j Q_j(q^{n_j}) / (1 - q^{n_j})^{k_j}`.
pub fn zeta_q_poly(arg: &PolyModelArg, order: usize) -> Result<QSeries> {
    let kernel = SeriesKernel { order };
    nested_sum_with(&kernel, arg.k.len(), &|_| false, 0, order as u64 + 1, &|j, n| {
        let n = n as usize;
        let mut num = QSeries::zero(order);
        for (i, c) in arg.polys[j].iter().enumerate() {
            if !c.is_zero() && n * i <= order {
                num += &QSeries::monomial(c.clone(), n * i, order);
            }
        }
        Ok(&num * &inv_one_minus_qn(n, arg.k[j], order)?)
    })
}

// --- evaluation maps on words -------------------------------------------------------

fn linear<V>(u: &AlgebraElement, zero: V, add: impl Fn(&mut V, V, &BigInt), eval: impl Fn(&[u32]) -> Result<V>) -> Result<V> {
    u.require_space(Space::H1)?;
    let mut acc = zero;
    for (w, c) in u.terms() {
        let v = eval(&w.to_index()?)?;
        add(&mut acc, v, c);
    }
    Ok(acc)
}

fn series_linear(u: &AlgebraElement, order: usize, eval: impl Fn(&[u32]) -> Result<QSeries>) -> Result<QSeries> {
    linear(u, QSeries::zero(order), |acc, v, c| *acc += &v.scale_int(c), eval)
}

fn rational_linear(u: &AlgebraElement, eval: impl Fn(&[u32]) -> Result<Rational>) -> Result<Rational> {
    linear(u, Rational::zero(), |acc, v, c| *acc += v * Rational::from_integer(c.clone()), eval)
}

/// `Z^dagger_{q,N}` on `h^1`.
pub fn z_dagger_finite(u: &AlgebraElement, n: u32, order: usize) -> Result<QSeries> {
    let p = FiniteParams::right(n, order)?;
    series_linear(u, order, |k| zeta_dagger_finite(&BarIndex::plain(k), p))
}

/// `Z^BZ_{q,N}` on `h^1`.
pub fn z_bz_finite(u: &AlgebraElement, n: u32, order: usize) -> Result<QSeries> {
    series_linear(u, order, |k| zeta_bz_finite(k, n, order))
}

/// `Z^dagger_q` on `h^1`.
pub fn z_dagger(u: &AlgebraElement, order: usize) -> Result<QSeries> {
    series_linear(u, order, |k| zeta_dagger(&BarIndex::plain(k), order))
}

/// `Z^BZ_q` on `h^0`.
pub fn z_bz(u: &AlgebraElement, order: usize) -> Result<QSeries> {
    u.require_space(Space::H0)?;
    series_linear(u, order, |k| zeta_bz(k, order))
}

/// `Z_N` on `h^1`: strict harmonic sums `sum_{0<n_1<...<n_r<N} 1/(n_1^{k_1} ... n_r^{k_r})`.
pub fn z_classical(u: &AlgebraElement, n: u32) -> Result<Rational> {
    rational_linear(u, |k| zeta_n(k, n))
}

/// `Z^dagger_{q,N}` evaluated at a rational point.
pub fn z_dagger_at(u: &AlgebraElement, n: u32, q: &Rational) -> Result<Rational> {
    let kernel = RationalKernel::new(q.clone())?;
    FiniteParams::right(n, 0)?;
    rational_linear(u, |k| dagger_generic(&kernel, &BarIndex::plain(k), 0, n))
}

/// `Z^BZ_{q,N}` evaluated at a rational point.
pub fn z_bz_at(u: &AlgebraElement, n: u32, q: &Rational) -> Result<Rational> {
    let kernel = RationalKernel::new(q.clone())?;
    FiniteParams::right(n, 0)?;
    rational_linear(u, |k| bz_generic(&kernel, k, n))
}

/// Evaluation maps selectable at run time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ZModel {
    DaggerFinite,
    BzFinite,
    DaggerInfinite,
    BzInfinite,
    Classical,
}

/// A series for the q-models, an exact rational for the classical map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZValue {
    Series(QSeries),
    Rational(Rational),
}

/// Linear extension of a model over the words of `u`. `n` is ignored by the infinite maps.
pub fn z_map(model: ZModel, u: &AlgebraElement, n: u32, order: usize) -> Result<ZValue> {
    Ok(match model {
        ZModel::DaggerFinite => ZValue::Series(z_dagger_finite(u, n, order)?),
        ZModel::BzFinite => ZValue::Series(z_bz_finite(u, n, order)?),
        ZModel::DaggerInfinite => ZValue::Series(z_dagger(u, order)?),
        ZModel::BzInfinite => ZValue::Series(z_bz(u, order)?),
        ZModel::Classical => ZValue::Rational(z_classical(u, n)?),
    })
}

// --- classical sums ---------------------------------------------------------------

/// `zeta_N(k) = sum_{0<n_1<...<n_r<N} prod 1/n_j^{k_j}`.
pub fn zeta_n(k: &[u32], n: u32) -> Result<Rational> {
    bz_generic(&ClassicalKernel, k, n)
}

/// `zeta_N(l; k)`: weak blocks of lengths `l_j`, the first `l_j - 1` members
/// weighted by `1/(N - n)`, the last by `1/n^{k_j}`.
pub fn zeta_n_lk(c: &PairIndex, n: u32) -> Result<Rational> {
    if n == 0 {
        return invalid("N must be positive");
    }
    dagger_generic(&ClassicalKernel, &BarIndex::from_pairs(c), 0, n)
}

/// `zeta_N^diamond(k)` for admissible `k`.
pub fn zeta_n_diamond(k: &[u32], n: u32) -> Result<Rational> {
    if n == 0 {
        return invalid("N must be positive");
    }
    diamond_generic(&ClassicalKernel, DiamondVariant::Bz, k, 0, n)
}

/// Which classical sum [`classical_sums`] evaluates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassicalSum {
    Zeta(Vec<u32>),
    Diamond(Vec<u32>),
    Binom(PairIndex),
}

pub fn classical_sums(kind: &ClassicalSum, n: u32) -> Result<Rational> {
    match kind {
        ClassicalSum::Zeta(k) => zeta_n(k, n),
        ClassicalSum::Diamond(k) => zeta_n_diamond(k, n),
        ClassicalSum::Binom(c) => zeta_n_lk(c, n),
    }
}

// --- rational points ------------------------------------------------------------------

/// Finite models available at rational points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FiniteModel {
    Dagger,
    Bz,
    DiamondBz,
    DiamondDagger,
}

/// Exact value of a finite model at `q = qval`.
pub fn eval_at_rational_q(model: FiniteModel, k: &BarIndex, m: u32, n: u32, qval: &Rational) -> Result<Rational> {
    FiniteParams::new(m, n, 0)?;
    let kernel = RationalKernel::new(qval.clone())?;
    match model {
        FiniteModel::Dagger => dagger_generic(&kernel, k, m, n),
        FiniteModel::Bz => {
            if m != 0 {
                return invalid("the BZ model has no left truncation");
            }
            bz_generic(&kernel, &k.as_plain()?, n)
        }
        FiniteModel::DiamondBz => diamond_generic(&kernel, DiamondVariant::Bz, &k.as_plain()?, m, n),
        FiniteModel::DiamondDagger => diamond_generic(&kernel, DiamondVariant::Dagger, &k.as_plain()?, m, n),
    }
}

/// Both sides of `Z^dagger_{1/q,N}(u) = Z^BZ_{q,N}(theta(u))`, the word-level form of
/// `Z^dagger_{q^{-1},N}(w) = (-1)^{wt(w)} Z^BZ_{q,N}(w)`.
pub fn bridge_sides(u: &AlgebraElement, n: u32, qval: &Rational) -> Result<(Rational, Rational)> {
    if qval.is_zero() {
        return invalid("q = 0 is excluded");
    }
    let left = z_dagger_at(u, n, &qval.recip())?;
    let right = z_bz_at(&u.theta(), n, qval)?;
    Ok((left, right))
}

/// Convenience for building a one-word element from an index.
pub fn word_element(k: &[u32]) -> Result<AlgebraElement> {
    Ok(AlgebraElement::from_word(Word::from_index(k)?))
}
