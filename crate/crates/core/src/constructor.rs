//! The recursive word constructors `E_q^eps`, `D_q` and their classical limits.
//!
//! `E_q^eps(c)` recurses on `c_{A,B}`, which always has a smaller entry sum,
//! so the recursion terminates at the empty tuple. Results are memoised per
//! constructor; a [`Constructor`] can also carry one deliberate sign mutation,
//! used to check that the verification harness notices broken words.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::binomial;
use serde::{Deserialize, Serialize};

use crate::combinat::{alpha, beta, beta_a, eo, index_surgery, kappa, oe, sigma_set, split_ones, tilings, Mask};
use crate::error::{invalid, Result};
use crate::models::Eps;
use crate::words::{AlgebraElement, Letter, Word};

/// A single sign flip in the constructor, for mutation testing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mutation {
    /// The leading minus of the first sum becomes a plus.
    Term1Sign,
    /// The factor `(-1)^{eo(A)}` of the third sum is dropped.
    EoSign,
    /// `theta` leaves `x` alone.
    ThetaX,
    /// `theta` leaves `y` alone.
    ThetaY,
    /// The prefactor `(-1)^{c_1 + ... + c_2r}` of `D_q` is dropped.
    DPrefactor,
}

impl Mutation {
    pub const ALL: [Mutation; 5] =
        [Mutation::Term1Sign, Mutation::EoSign, Mutation::ThetaX, Mutation::ThetaY, Mutation::DPrefactor];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Kind {
    Q(Eps),
    Classical(Eps),
}

/// Memoising evaluator of the word recursions.
#[derive(Debug, Default)]
pub struct Constructor {
    mutation: Option<Mutation>,
    memo: RwLock<HashMap<(Kind, Vec<u32>), AlgebraElement>>,
    tilings: RwLock<HashMap<usize, Arc<Vec<u32>>>>,
}

impl Constructor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_mutation(mutation: Mutation) -> Self {
        Constructor { mutation: Some(mutation), ..Self::default() }
    }

    pub fn mutation(&self) -> Option<Mutation> {
        self.mutation
    }

    /// `E_q^eps(c)` for a flattened pair index `c = (l_1, k_1, ..., l_r, k_r)`.
    pub fn e_q(&self, eps: Eps, c: &[u32]) -> Result<AlgebraElement> {
        check_c(c)?;
        self.memoised(Kind::Q(eps), c)
    }

    /// `D_q(c) = (-1)^{sum c} theta(E_q^1(c))`.
    pub fn d_q(&self, c: &[u32]) -> Result<AlgebraElement> {
        let e1 = self.e_q(Eps::One, c)?;
        let mut out = self.theta(&e1);
        let odd = c.iter().map(|&x| x as u64).sum::<u64>() % 2 == 1;
        if odd && self.mutation != Some(Mutation::DPrefactor) {
            out = out.scale(&BigInt::from(-1));
        }
        Ok(out)
    }

    /// The classical words `E^eps(c)`.
    pub fn e_classical(&self, eps: Eps, c: &[u32]) -> Result<AlgebraElement> {
        check_c(c)?;
        self.memoised(Kind::Classical(eps), c)
    }

    /// `D(c) = E^1(c)`.
    pub fn d_classical(&self, c: &[u32]) -> Result<AlgebraElement> {
        self.e_classical(Eps::One, c)
    }

    fn theta(&self, u: &AlgebraElement) -> AlgebraElement {
        match self.mutation {
            Some(Mutation::ThetaX) => theta_partial(u, false, true),
            Some(Mutation::ThetaY) => theta_partial(u, true, false),
            _ => u.theta(),
        }
    }

    fn tilings_bits(&self, r: usize) -> Arc<Vec<u32>> {
        if let Some(t) = self.tilings.read().unwrap().get(&r) {
            return t.clone();
        }
        let t = Arc::new(tilings(r).iter().map(Mask::bits).collect::<Vec<_>>());
        self.tilings.write().unwrap().insert(r, t.clone());
        t
    }

    fn memoised(&self, kind: Kind, c: &[u32]) -> Result<AlgebraElement> {
        let key = (kind, c.to_vec());
        if let Some(v) = self.memo.read().unwrap().get(&key) {
            return Ok(v.clone());
        }
        // computed outside the lock; a concurrent duplicate computes the same value
        let v = match kind {
            Kind::Q(eps) => self.compute_q(eps, c)?,
            Kind::Classical(eps) => self.compute_classical(eps, c)?,
        };
        self.memo.write().unwrap().insert(key, v.clone());
        Ok(v)
    }

    fn compute_q(&self, eps: Eps, c: &[u32]) -> Result<AlgebraElement> {
        if c.is_empty() {
            return Ok(AlgebraElement::one());
        }
        let r = c.len() / 2;
        let (ones, big) = split_ones(c);
        let empty = Mask::empty(c.len());
        let mut out = AlgebraElement::zero();

        let term1_sign = if self.mutation == Some(Mutation::Term1Sign) { 1 } else { -1 };
        for b in big.subsets().filter(|b| !b.is_empty()) {
            let sub = self.memoised(Kind::Q(eps), &index_surgery(c, &empty, &b)?)?;
            let s = parity(b.len());
            let (a, bt) = (alpha(&b), beta(&b));
            out.add_scaled(&sub.mul_word(&Word::x_pow(a)), &BigInt::from(term1_sign * s));
            out.add_scaled(&sub.mul(&signed_range(a, bt)), &BigInt::from(s));
        }

        let tiles = self.tilings_bits(r);
        for a in ones.subsets().filter(|a| !a.is_empty() && tiles.binary_search(&a.bits()).is_ok()) {
            let k = kappa(&a)?;
            let e = if self.mutation == Some(Mutation::EoSign) { 0 } else { eo(&a) };
            for b in big.subsets() {
                let sub = self.memoised(Kind::Q(eps), &index_surgery(c, &a, &b)?)?;
                let ba = beta_a(&a, &b)?;
                for h in 1..=k {
                    let sign = parity(e + b.len() + k - h);
                    let coeff = binomial(BigInt::from(k - 1), BigInt::from(h - 1)) * sign;
                    let exp = h + eps.value() as usize * k + ba - 1;
                    out.add_scaled(&sub.mul_word(&Word::y_x_pow(exp)), &coeff);
                }
            }
        }
        Ok(out)
    }

    fn compute_classical(&self, eps: Eps, c: &[u32]) -> Result<AlgebraElement> {
        if c.is_empty() {
            return Ok(AlgebraElement::one());
        }
        let r = c.len() / 2;
        let (ones, big) = split_ones(c);
        let empty = Mask::empty(c.len());
        let mut out = AlgebraElement::zero();

        for b in big.subsets().filter(|b| eo(b) == 0 && !b.is_empty()) {
            let sub = self.memoised(Kind::Classical(eps), &index_surgery(c, &empty, &b)?)?;
            let s = -parity(b.len());
            out.add_scaled(&sub.mul_word(&Word::x_pow(b.len())), &BigInt::from(s));
            if b.len() >= 2 {
                out.add_scaled(&sub.mul_word(&Word::y_x_pow(b.len() - 1)), &BigInt::from(s));
            }
        }

        let tiles = self.tilings_bits(r);
        for a in ones.subsets().filter(|a| tiles.binary_search(&a.bits()).is_ok()) {
            let k = kappa(&a)?;
            for b in big.subsets() {
                if a.len() + b.len() < 2 || oe(&sigma_set(&a, &b)?) != 0 {
                    continue;
                }
                let sub = self.memoised(Kind::Classical(eps), &index_surgery(c, &a, &b)?)?;
                let exp = (1 + eps.value() as usize) * k + b.len() - 1;
                out.add_scaled(&sub.mul_word(&Word::y_x_pow(exp)), &BigInt::from(parity(eo(&a) + b.len())));
            }
        }
        Ok(out)
    }
}

fn check_c(c: &[u32]) -> Result<()> {
    if !c.len().is_multiple_of(2) {
        return invalid(format!("c must have even length, got {}", c.len()));
    }
    if c.contains(&0) {
        return invalid("entries of c must be positive");
    }
    if c.len() > 32 {
        return invalid("c is too long");
    }
    Ok(())
}

fn parity(n: usize) -> i64 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `sum_{h=a+1}^{b} y x^{h-1}`, read as `-sum_{h=b+1}^{a} y x^{h-1}` when `a > b`.
fn signed_range(a: usize, b: usize) -> AlgebraElement {
    let (lo, hi, sign) = if a <= b { (a, b, 1) } else { (b, a, -1) };
    let mut out = AlgebraElement::zero();
    for h in lo + 1..=hi {
        out.add_term(Word::y_x_pow(h - 1), BigInt::from(sign));
    }
    out
}

fn theta_partial(u: &AlgebraElement, neg_x: bool, neg_y: bool) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (w, c) in u.terms() {
        let flips = w.letters().iter().filter(|l| match l {
            Letter::X => neg_x,
            Letter::Y => neg_y,
        });
        let s = parity(flips.count());
        out.add_term(w.clone(), c * s);
    }
    out
}

/// `(c_1, ..., c_2r) -> (c_2r, ..., c_1)`.
pub fn symmetry_reverse(c: &[u32]) -> Result<Vec<u32>> {
    if !c.len().is_multiple_of(2) {
        return invalid(format!("c must have even length, got {}", c.len()));
    }
    Ok(c.iter().rev().copied().collect())
}

fn shared() -> &'static Constructor {
    static C: OnceLock<Constructor> = OnceLock::new();
    C.get_or_init(Constructor::new)
}

/// `E_q^eps(c)` through a process-wide cache.
pub fn e_q(eps: Eps, c: &[u32]) -> Result<AlgebraElement> {
    shared().e_q(eps, c)
}

/// `D_q(c)` through a process-wide cache.
pub fn d_q(c: &[u32]) -> Result<AlgebraElement> {
    shared().d_q(c)
}

pub fn e_classical(eps: Eps, c: &[u32]) -> Result<AlgebraElement> {
    shared().e_classical(eps, c)
}

pub fn d_classical(c: &[u32]) -> Result<AlgebraElement> {
    shared().d_classical(c)
}
