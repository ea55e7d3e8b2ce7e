//! Acceptance criteria, one line each. Runs without the libtest harness so the
//! lines always reach the terminal; a failing criterion makes the process exit 1.

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::binomial;

use qmzv::constructor::{d_q, e_q, symmetry_reverse, Mutation};
use qmzv::genfun::{verify_b_diff, verify_g_diff, verify_recurrence};
use qmzv::models::{
    zeta_bz, zeta_bz_finite, zeta_dagger, zeta_dagger_finite, zeta_diamond_finite, zeta_n, zeta_n_diamond,
    DiamondVariant, Eps, FiniteParams,
};
use qmzv::rational::{parse_rational, Rational};
use qmzv::series::{inv_one_minus_qn, QSeries};
use qmzv::transforms::{round_trip, verify_transform, Direction, Term};
use qmzv::verify::{independence_check, verify_remark, RankModel, RemarkKind, Report, Verifier};
use qmzv::words::{indices_up_to_weight, BarEntry, BarIndex, PairIndex, Space};
use qmzv::Result;

type Criterion = fn() -> (bool, String);

/// Counts cases and keeps the first failure.
#[derive(Default)]
struct Tally {
    cases: usize,
    first_failure: Option<String>,
}

impl Tally {
    fn report(&mut self, r: Result<Report>) {
        match r {
            Ok(r) => self.check(r.passed(), || format!("{} {:?} witness {:?}", r.identity, r.params, r.witness)),
            Err(e) => self.check(false, || format!("error: {e}")),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.first_failure.is_none() {
            self.first_failure = Some(describe());
        }
    }

    fn outcome(self, extra: &str) -> (bool, String) {
        match self.first_failure {
            None => (true, format!("{} cases{extra}", self.cases)),
            Some(f) => (false, format!("{} cases, first failure: {f}", self.cases)),
        }
    }
}

fn pairs(max_total: u32) -> Vec<PairIndex> {
    PairIndex::enumerate(max_total)
}

fn q_samples() -> Vec<Rational> {
    ["2", "1/2", "3"].iter().map(|s| parse_rational(s).unwrap()).collect()
}

fn criterion_1() -> (bool, String) {
    let v = Verifier::new();
    let start = Instant::now();
    let mut t = Tally::default();
    for c in pairs(6) {
        for n in 1..=8 {
            t.report(v.main_finite(Eps::Zero, &c, n, 30));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 60.0 {
        t.check(false, || format!("took {secs:.1}s, budget 60s"));
    }
    t.outcome(&format!(" in {secs:.2}s single-threaded"))
}

fn criterion_2() -> (bool, String) {
    let v = Verifier::new();
    let qs = q_samples();
    let mut t = Tally::default();
    for c in pairs(6) {
        for n in 1..=8 {
            let rational = c.total() <= 5 && n <= 5;
            t.report(v.main_finite_bz(&c, n, 30, if rational { &qs } else { &[] }));
        }
    }
    t.outcome(", rational points 2, 1/2, 3 on the sum <= 5, N <= 5 corner")
}

fn criterion_3() -> (bool, String) {
    let v = Verifier::new();
    let mut t = Tally::default();
    for c in pairs(5) {
        t.report(v.main_infinite(&c, 20));
    }
    t.outcome("")
}

fn criterion_4() -> (bool, String) {
    let mut t = Tally::default();
    for n in 1..=4u32 {
        for m in 0..n {
            for eps in Eps::both() {
                for r in 0..=2usize {
                    if m > 0 && r > 0 {
                        t.report(verify_g_diff(eps, m, n, r, 2, 15));
                    }
                    t.report(verify_recurrence(eps, m, n, r, 2, 15));
                }
                if m > 0 {
                    t.report(verify_b_diff(eps, m, n, 2, 15));
                }
            }
        }
    }
    t.outcome("")
}

fn criterion_5() -> (bool, String) {
    let mut grid: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
    for l in 1..=4 {
        for k in 1..=4 {
            grid.push((vec![l], vec![k]));
        }
    }
    for c in pairs(8).into_iter().filter(|c| c.depth() == 2) {
        let f = c.flat();
        grid.push((vec![f[0], f[2]], vec![f[1], f[3]]));
    }
    let mut t = Tally::default();
    for (l, k) in &grid {
        for which in [1, 3] {
            t.report(verify_transform(which, l, k, 20));
        }
        if l.iter().all(|&x| x == 1) {
            for which in [2, 4] {
                t.report(verify_transform(which, &[], k, 20));
            }
        }
        for d in [Direction::SzFromDagger, Direction::DaggerFromSz] {
            for bars in [true, false] {
                let expect_l = if bars { l.clone() } else { vec![1; k.len()] };
                let identity = vec![Term { coeff: 1.into(), l: expect_l, k: k.clone() }];
                let got = round_trip(d, bars, l, k);
                t.check(got.as_ref() == Ok(&identity), || format!("round trip {d:?} bars={bars} l={l:?} k={k:?}"));
            }
        }
    }
    t.outcome(" plus round trips")
}

fn criterion_6() -> (bool, String) {
    let mut t = Tally::default();
    for c in pairs(6).into_iter().filter(|c| c.depth() > 0) {
        let l: Vec<u32> = c.pairs().map(|p| p.0).collect();
        let k: Vec<u32> = c.pairs().map(|p| p.1).collect();
        for n in 1..=6 {
            t.report(verify_remark(RemarkKind::DualFlat, &l, &k, n, 25));
            t.report(verify_remark(RemarkKind::DualDiamond, &l, &k, n, 25));
        }
    }
    for k in indices_up_to_weight(5) {
        for n in 1..=6 {
            t.report(verify_remark(RemarkKind::Qmsw, &[], &k, n, 25));
        }
    }
    t.outcome("")
}

fn criterion_7() -> (bool, String) {
    let v = Verifier::new();
    let mut t = Tally::default();
    for c in pairs(7) {
        for n in 1..=12 {
            t.report(v.classical(&c, n));
        }
    }
    let nine_eighths = parse_rational("9/8").unwrap();
    let fixture = (zeta_n_diamond(&[1, 2], 3), zeta_n(&[3], 3));
    t.check(fixture == (Ok(nine_eighths.clone()), Ok(nine_eighths)), || format!("fixture gave {fixture:?}"));
    t.outcome(", fixture zeta_3^diamond(1,2) = zeta_3(3) = 9/8")
}

fn bar_variants(k: &[u32]) -> Vec<BarIndex> {
    let ones: Vec<usize> = (0..k.len().saturating_sub(1)).filter(|&i| k[i] == 1).collect();
    (0u32..1 << ones.len())
        .map(|mask| {
            BarIndex(
                k.iter()
                    .enumerate()
                    .map(|(i, &x)| match ones.iter().position(|&j| j == i) {
                        Some(b) if mask >> b & 1 == 1 => BarEntry::Bar,
                        _ => BarEntry::Int(x),
                    })
                    .collect(),
            )
        })
        .collect()
}

fn criterion_8() -> (bool, String) {
    let mut t = Tally::default();
    for c in pairs(7) {
        let c = c.flat();
        for eps in Eps::both() {
            match (e_q(eps, c), symmetry_reverse(c).and_then(|r| e_q(eps, &r))) {
                (Ok(e), Ok(rev)) => {
                    t.check(e.in_space(Space::H1), || format!("E_q^{} {c:?} not in h^1", eps.value()));
                    t.check(e == rev, || format!("E_q^{} {c:?} not symmetric", eps.value()));
                    t.check(e.theta().theta() == e, || format!("theta not an involution on E {c:?}"));
                }
                (a, b) => t.check(false, || format!("E {c:?}: {:?} / {:?}", a.err(), b.err())),
            }
        }
        match d_q(c) {
            Ok(d) => t.check(d.in_space(Space::Hgeq2), || format!("D_q {c:?} not in h^(>=2)")),
            Err(e) => t.check(false, || format!("D {c:?}: {e}")),
        }
    }
    for k in indices_up_to_weight(5) {
        for n in 1..=8u32 {
            let order = n as usize - 1;
            for b in bar_variants(&k) {
                let fin = zeta_dagger_finite(&b, FiniteParams::right(n, order).unwrap());
                t.check(fin.is_ok() && fin == zeta_dagger(&b, order), || format!("dagger {b} unstable below N={n}"));
            }
            if k.last() != Some(&1) {
                let inf = zeta_bz(&k, order);
                t.check(zeta_bz_finite(&k, n, order) == inf, || format!("bz {k:?} unstable below N={n}"));
                let dia = zeta_diamond_finite(DiamondVariant::Bz, &k, FiniteParams::right(n, order).unwrap());
                t.check(dia == inf, || format!("diamond {k:?} unstable below N={n}"));
            }
        }
    }
    let d = 20;
    let kernel = |n: usize, e: u32| inv_one_minus_qn(n, e, d).unwrap();
    for n in 1..=4usize {
        for m in 1..=6u32 {
            let mut sum = QSeries::zero(d);
            for h in 1..=m {
                sum += &kernel(n, h);
            }
            t.check(kernel(n, m) == &QSeries::one(d) + &sum.shift(n), || format!("telescoping N={n} m={m}"));
        }
        for m in 1..=4u32 {
            for eps in 0..=1u32 {
                let lhs = kernel(n, (1 + eps) * m).shift(n * m as usize);
                let mut rhs = QSeries::zero(d);
                for mp in 1..=m {
                    let c = binomial(BigInt::from(m - 1), BigInt::from(mp - 1));
                    let c = if (m - mp) % 2 == 1 { -c } else { c };
                    rhs += &kernel(n, mp + eps * m).shift(n).scale_int(&c);
                }
                t.check(lhs == rhs, || format!("binomial expansion N={n} m={m} eps={eps}"));
            }
        }
    }
    t.outcome("")
}

fn criterion_9() -> (bool, String) {
    let ns: Vec<u32> = (1..=6).collect();
    let mut notes = Vec::new();
    let mut ok = true;
    for model in [RankModel::Dagger, RankModel::Bz] {
        match independence_check(model, 4, &ns, 25) {
            Ok(r) => {
                let detail = r.details.clone().unwrap_or_default();
                ok &= r.passed() && detail.starts_with("rank 16 of 16 ");
                notes.push(format!("{model:?}: {detail}"));
            }
            Err(e) => {
                ok = false;
                notes.push(format!("{model:?}: {e}"));
            }
        }
    }
    (ok, notes.join("; "))
}

/// The first failing case of criteria 1-2 under a mutated constructor.
fn first_witness(v: &Verifier) -> Option<String> {
    let qs = q_samples();
    for c in pairs(6) {
        for n in 1..=8 {
            let rational = c.total() <= 5 && n <= 5;
            for r in [v.main_finite(Eps::Zero, &c, n, 30), v.main_finite_bz(&c, n, 30, if rational { &qs } else { &[] })].into_iter().flatten() {
                if let Some(w) = r.witness.as_ref().filter(|_| !r.passed()) {
                    return Some(format!("{} c={:?} N={n} at {:?}: {} vs {}", r.identity, c.flat(), w.position, w.left, w.right));
                }
            }
        }
    }
    None
}

fn criterion_10() -> (bool, String) {
    let mut ok = true;
    let mut notes = Vec::new();
    for m in Mutation::ALL {
        match first_witness(&Verifier::with_mutation(m)) {
            Some(w) => notes.push(format!("{m:?} caught by {w}")),
            None => {
                ok = false;
                notes.push(format!("{m:?} NOT caught"));
            }
        }
    }
    (ok, notes.join("; "))
}

fn main() {
    let criteria: [(&str, Criterion); 10] = [
        ("finite main theorem, dagger side", criterion_1),
        ("finite main theorem, BZ side and rational points", criterion_2),
        ("infinite main theorem", criterion_3),
        ("generating-function recurrences", criterion_4),
        ("transform formulas", criterion_5),
        ("dualities and q-MSW", criterion_6),
        ("classical corollary", criterion_7),
        ("structural invariants", criterion_8),
        ("injectivity evidence", criterion_9),
        ("mutation sensitivity", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let (ok, note) = run();
        if !ok {
            failed += 1;
        }
        println!("criterion {:>2} {}: {name} ({note})", i + 1, if ok { "PASS" } else { "FAIL" });
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
