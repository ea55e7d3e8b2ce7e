//! Truncated generating functions of `xi` and their recurrences in `N` and `M`.
//!
//! The variables are `u_{2i-1} = [Y_i]` and `u_{2i} = [X_i]` with `[n] = 1 - q^n`;
//! in these variables `[X + Y] = u + v - uv`. Polynomials are truncated to
//! the box `deg_{u_i} <= maxdeg`, which is exact under multiplication, and
//! every identity is checked after clearing denominators, so no series with
//! zero constant term is ever inverted.

use std::collections::BTreeMap;

use crate::combinat::{eo, kappa, tilings};
use crate::error::{invalid, Error, Result};
use crate::models::{xi, Eps, FiniteParams};
use crate::series::{inv_one_minus_qn, QSeries};
use crate::verify::Report;
use crate::words::PairIndex;

/// A polynomial in `nvars` variables with truncated q-series coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    maxdeg: u32,
    order: usize,
    terms: BTreeMap<Vec<u32>, QSeries>,
}

impl MultiPoly {
    pub fn zero(nvars: usize, maxdeg: u32, order: usize) -> Self {
        MultiPoly { nvars, maxdeg, order, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, maxdeg: u32, c: QSeries) -> Self {
        let mut p = Self::zero(nvars, maxdeg, c.order());
        p.add_term(vec![0; nvars], &c);
        p
    }

    pub fn one(nvars: usize, maxdeg: u32, order: usize) -> Self {
        Self::constant(nvars, maxdeg, QSeries::one(order))
    }

    /// The variable `u_i` (1-based) with coefficient `c`.
    pub fn var(nvars: usize, maxdeg: u32, i: usize, c: QSeries) -> Self {
        assert!((1..=nvars).contains(&i));
        let mut p = Self::zero(nvars, maxdeg, c.order());
        let mut e = vec![0; nvars];
        e[i - 1] = 1;
        p.add_term(e, &c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn maxdeg(&self) -> u32 {
        self.maxdeg
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, QSeries> {
        &self.terms
    }

    pub fn coeff(&self, e: &[u32]) -> QSeries {
        self.terms.get(e).cloned().unwrap_or_else(|| QSeries::zero(self.order))
    }

    /// Adds `c u^e`; terms beyond the box are dropped.
    pub fn add_term(&mut self, e: Vec<u32>, c: &QSeries) {
        assert_eq!(e.len(), self.nvars);
        assert_eq!(c.order(), self.order, "coefficient order mismatch");
        if e.iter().any(|&d| d > self.maxdeg) || c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(|| QSeries::zero(c.order()));
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch { left: self.order, right: other.order });
        }
        if self.nvars != other.nvars || self.maxdeg != other.maxdeg {
            return invalid("polynomials live in different rings");
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-QSeries::one(self.order)))
    }

    pub fn scale(&self, c: &QSeries) -> Self {
        let mut out = Self::zero(self.nvars, self.maxdeg, self.order);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), &(v * c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = Self::zero(self.nvars, self.maxdeg, self.order);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let e: Vec<u32> = a.iter().zip(b).map(|(i, j)| i + j).collect();
                if e.iter().all(|&d| d <= self.maxdeg) {
                    out.add_term(e, &(x * y));
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `1/f` for `f` whose constant coefficient is a unit series:
    /// `c_0^{-1} sum_m g^m` with `g = 1 - f/c_0`, which has no constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeff(&vec![0; self.nvars]).invert_unit()?;
        let one = Self::one(self.nvars, self.maxdeg, self.order);
        let g = one.sub(&self.scale(&c0))?;
        let mut acc = one.clone();
        let mut pow = one;
        for _ in 0..self.nvars * self.maxdeg as usize {
            pow = pow.mul(&g)?;
            if pow.is_zero() {
                break;
            }
            acc = acc.add(&pow)?;
        }
        Ok(acc.scale(&c0))
    }

    /// Re-embeds into `nvars` variables, sending `u_i` to `u_{targets[i-1]}`.
    pub fn embed(&self, nvars: usize, targets: &[usize]) -> Result<Self> {
        if targets.len() != self.nvars || targets.iter().any(|&t| t == 0 || t > nvars) {
            return invalid("bad variable embedding");
        }
        let mut out = Self::zero(nvars, self.maxdeg, self.order);
        for (e, c) in &self.terms {
            let mut f = vec![0; nvars];
            for (i, &d) in e.iter().enumerate() {
                f[targets[i] - 1] += d;
            }
            out.add_term(f, c);
        }
        Ok(out)
    }

    /// First exponent tuple and q-exponent where two polynomials differ.
    pub fn first_mismatch(&self, other: &Self) -> Option<(Vec<u32>, usize)> {
        let keys: std::collections::BTreeSet<&Vec<u32>> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter().find_map(|e| self.coeff(e).first_mismatch(&other.coeff(e)).map(|m| (e.clone(), m)))
    }
}

/// Adds both sides' first disagreement to a report.
pub fn compare_poly(report: &mut Report, left: &MultiPoly, right: &MultiPoly) {
    if let Some((e, _)) = left.first_mismatch(right) {
        let prefix: Vec<usize> = e.iter().map(|&d| d as usize).collect();
        report.compare_series(&prefix, &left.coeff(&e), &right.coeff(&e));
    }
}

fn bracket(n: u32, order: usize) -> QSeries {
    QSeries::bracket(n as usize, order)
}

/// `q^{am} / [m]^{b}`, with `b = 0` allowed.
fn q_over_bracket(shift: usize, m: u32, b: u32, order: usize) -> Result<QSeries> {
    let base = if b == 0 { QSeries::one(order) } else { inv_one_minus_qn(m as usize, b, order)? };
    Ok(if shift > order { QSeries::zero(order) } else { base.shift(shift) })
}

/// `[N] - [X + Y]` in the variables `u_i = [X]`, `u_j = [Y]`.
fn bracket_minus_sum(nvars: usize, maxdeg: u32, n: u32, i: usize, j: usize, order: usize) -> Result<MultiPoly> {
    let one = QSeries::one(order);
    let mut p = MultiPoly::constant(nvars, maxdeg, bracket(n, order));
    p = p.sub(&MultiPoly::var(nvars, maxdeg, i, one.clone()))?;
    p = p.sub(&MultiPoly::var(nvars, maxdeg, j, one.clone()))?;
    MultiPoly::var(nvars, maxdeg, i, one.clone()).mul(&MultiPoly::var(nvars, maxdeg, j, one))?.add(&p)
}

fn exponent_box(nvars: usize, maxdeg: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..nvars {
        out = out
            .into_iter()
            .flat_map(|e: Vec<u32>| {
                (0..=maxdeg).map(move |d| {
                    let mut f = e.clone();
                    f.push(d);
                    f
                })
            })
            .collect();
    }
    out
}

/// `G^eps_{q,M,N}` in `2r` variables: the coefficient of `u^e` is `xi^eps_{q,M,N}(e + 1)`.
pub fn g_truncated(eps: Eps, m: u32, n: u32, r: usize, maxdeg: u32, order: usize) -> Result<MultiPoly> {
    let p = FiniteParams::new(m, n, order)?;
    let mut g = MultiPoly::zero(2 * r, maxdeg, order);
    for e in exponent_box(2 * r, maxdeg) {
        let c = PairIndex::new(e.iter().map(|d| d + 1).collect())?;
        g.add_term(e, &xi(eps, &c, p)?);
    }
    Ok(g)
}

/// `G~ = prod_i ([N] - [X_i + Y_i]) G`.
pub fn g_tilde(g: &MultiPoly, n: u32) -> Result<MultiPoly> {
    let mut out = g.clone();
    for i in 1..=g.nvars() / 2 {
        out = out.mul(&bracket_minus_sum(g.nvars(), g.maxdeg(), n, 2 * i - 1, 2 * i, g.order())?)?;
    }
    Ok(out)
}

/// The kernels `A_M(Y)` (one variable) and `B_M(X, Y)` (variables `u_1 = [X]`, `u_2 = [Y]`).
pub fn ab_kernels(eps: Eps, m: u32, n: u32, maxdeg: u32, order: usize) -> Result<(MultiPoly, MultiPoly)> {
    if m == 0 || m >= n {
        return invalid(format!("kernels need 0 < M < N, got M = {m}, N = {n}"));
    }
    let a = kernel_a(eps, m, n, 1, 1, maxdeg, order)?;
    let b = kernel_b(eps, m, n, 2, 1, 2, maxdeg, order)?;
    Ok((a, b))
}

/// `A_M` in variable `y` of an `nvars`-variable ring.
fn kernel_a(eps: Eps, m: u32, n: u32, nvars: usize, y: usize, maxdeg: u32, order: usize) -> Result<MultiPoly> {
    let nm = bracket(n - m, order);
    let den = MultiPoly::constant(nvars, maxdeg, nm.clone()).sub(&MultiPoly::var(nvars, maxdeg, y, QSeries::one(order)))?;
    let mut a = den.inverse()?.scale(&nm);
    if eps == Eps::One {
        let f = MultiPoly::one(nvars, maxdeg, order)
            .add(&MultiPoly::var(nvars, maxdeg, y, q_over_bracket(m as usize, m, 1, order)?))?;
        a = a.mul(&f)?;
    }
    Ok(a)
}

#[allow(clippy::too_many_arguments)]
fn kernel_b(eps: Eps, m: u32, n: u32, nvars: usize, x: usize, y: usize, maxdeg: u32, order: usize) -> Result<MultiPoly> {
    let one = QSeries::one(order);
    let nm = bracket(n - m, order);
    let den_y = MultiPoly::constant(nvars, maxdeg, nm.clone()).sub(&MultiPoly::var(nvars, maxdeg, y, one.clone()))?;
    let den_x = MultiPoly::constant(nvars, maxdeg, bracket(m, order)).sub(&MultiPoly::var(nvars, maxdeg, x, one))?;
    let pre = &q_over_bracket(m as usize, m, eps.value(), order)? * &nm;
    bracket_minus_sum(nvars, maxdeg, n, x, y, order)?.mul(&den_y.inverse()?)?.mul(&den_x.inverse()?).map(|p| p.scale(&pre))
}

/// `B(X,Y) - B(X,Y') = (q^N/[N]^eps)(A(Y) - A(Y'))` with `u_1 = [X]`, `u_2 = [Y]`, `u_3 = [Y']`.
pub fn verify_b_diff(eps: Eps, m: u32, n: u32, maxdeg: u32, order: usize) -> Result<Report> {
    ab_kernels(eps, m, n, maxdeg, order)?;
    let left = kernel_b(eps, m, n, 3, 1, 2, maxdeg, order)?.sub(&kernel_b(eps, m, n, 3, 1, 3, maxdeg, order)?)?;
    let diff = kernel_a(eps, m, n, 3, 2, maxdeg, order)?.sub(&kernel_a(eps, m, n, 3, 3, maxdeg, order)?)?;
    let right = diff.scale(&q_over_bracket(n as usize, n, eps.value(), order)?);
    let mut report = params(Report::new("b_diff"), eps, m, n, None, maxdeg, order);
    compare_poly(&mut report, &left, &right);
    Ok(report)
}

fn params(r: Report, eps: Eps, m: u32, n: u32, depth: Option<usize>, maxdeg: u32, order: usize) -> Report {
    let r = r.param("eps", eps.value()).param("M", m).param("N", n).param("maxdeg", maxdeg).param("order", order);
    match depth {
        Some(d) => r.param("r", d),
        None => r,
    }
}

/// The lemma relating `G_{M-1,N}` to `G_{M,N}`, multiplied through by `[N-M]` and `[M] - [X_1]`:
///
/// `([N-M] - u_1)([M] - u_2) G_{M-1,N}
///    = [N-M]([M] - u_2)(1 + q^M u_1/[M])^eps G_{M,N} + [N-M] (q^M/[M]^eps) G_{M,N}(X without 1,2)`.
pub fn verify_g_diff(eps: Eps, m: u32, n: u32, r: usize, maxdeg: u32, order: usize) -> Result<Report> {
    if m == 0 || m >= n || r == 0 {
        return invalid(format!("need N > M > 0 and r >= 1, got M = {m}, N = {n}, r = {r}"));
    }
    let nv = 2 * r;
    let one = QSeries::one(order);
    let nm = bracket(n - m, order);
    let c = |s: QSeries| MultiPoly::constant(nv, maxdeg, s);
    let u = |i: usize| MultiPoly::var(nv, maxdeg, i, one.clone());
    let f_y = c(nm.clone()).sub(&u(1))?;
    let f_x = c(bracket(m, order)).sub(&u(2))?;

    let g_prev = g_truncated(eps, m - 1, n, r, maxdeg, order)?;
    let g = g_truncated(eps, m, n, r, maxdeg, order)?;
    let left = f_y.mul(&f_x)?.mul(&g_prev)?;

    let mut first = f_x.mul(&g)?.scale(&nm);
    if eps == Eps::One {
        let twist = c(one.clone()).add(&MultiPoly::var(nv, maxdeg, 1, q_over_bracket(m as usize, m, 1, order)?))?;
        first = first.mul(&twist)?;
    }
    let rest: Vec<usize> = (3..=nv).collect();
    let g_del = g_truncated(eps, m, n, r - 1, maxdeg, order)?.embed(nv, &rest)?;
    let second = g_del.scale(&(&q_over_bracket(m as usize, m, eps.value(), order)? * &nm));
    let right = first.add(&second)?;

    let mut report = params(Report::new("g_diff"), eps, m, n, Some(r), maxdeg, order);
    compare_poly(&mut report, &left, &right);
    Ok(report)
}

/// The recurrence in `N`, multiplied through by the boundary factors:
///
/// `prod_{i=0}^{r} ([N] - [X_i + Y_{i+1}]) G_{M,N+1}
///    = ([N] - [M]) sum_{T in T(r)} (-1)^{eo(T)} (q^N/[N]^eps)^{kappa(T)} G~_{M,N}(X without T)`
///
/// with `X_0 = M` and `Y_{r+1} = 0`. At `M = 0` this is the corollary.
pub fn verify_recurrence(eps: Eps, m: u32, n: u32, r: usize, maxdeg: u32, order: usize) -> Result<Report> {
    FiniteParams::new(m, n, order)?;
    let nv = 2 * r;
    let one = QSeries::one(order);
    let bn = bracket(n, order);
    let bm = bracket(m, order);
    let c = |s: QSeries| MultiPoly::constant(nv, maxdeg, s);

    let mut factor = if r == 0 {
        c(&bn - &bm)
    } else {
        // [N] - [M + Y_1] = [N] - [M] - q^M u_1
        let f0 = c(&bn - &bm).sub(&MultiPoly::var(nv, maxdeg, 1, QSeries::q_power(m as usize, order)))?;
        let fr = c(bn.clone()).sub(&MultiPoly::var(nv, maxdeg, nv, one.clone()))?;
        let mut f = f0.mul(&fr)?;
        for i in 1..r {
            f = f.mul(&bracket_minus_sum(nv, maxdeg, n, 2 * i, 2 * i + 1, order)?)?;
        }
        f
    };
    factor = factor.mul(&g_truncated(eps, m, n + 1, r, maxdeg, order)?)?;
    let left = factor;

    let mut tildes: BTreeMap<usize, MultiPoly> = BTreeMap::new();
    let mut sum = MultiPoly::zero(nv, maxdeg, order);
    for t in tilings(r) {
        let k = kappa(&t)?;
        if let std::collections::btree_map::Entry::Vacant(e) = tildes.entry(k) {
            e.insert(g_tilde(&g_truncated(eps, m, n, r - k, maxdeg, order)?, n)?);
        }
        let survivors = t.complement().positions();
        let term = tildes[&k].embed(nv, &survivors)?;
        let w = q_over_bracket(n as usize * k, n, eps.value() * k as u32, order)?;
        let w = if eo(&t) % 2 == 1 { w.scale_int(&(-1).into()) } else { w };
        sum = sum.add(&term.scale(&w))?;
    }
    let right = sum.scale(&(&bn - &bm));

    let name = if m == 0 { "recurrence" } else { "recurrence_with_m" };
    let mut report = params(Report::new(name), eps, m, n, Some(r), maxdeg, order);
    compare_poly(&mut report, &left, &right);
    Ok(report)
}
