use proptest::prelude::*;

use qmzv::constructor::{d_q, e_q};
use qmzv::models::{
    word_element, xi, z_bz_finite, z_dagger_finite, zeta_bz_finite, zeta_dagger_finite, Eps, FiniteParams,
};
use qmzv::verify::{run_suite, Report, SuiteConfig};
use qmzv::words::{AlgebraElement, BarIndex, ElementJson, PairIndex, Space, Word};

fn pair_index() -> impl Strategy<Value = Vec<u32>> {
    (0usize..=2).prop_flat_map(|r| proptest::collection::vec(1u32..=2, 2 * r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn main_theorem_on_random_indices(c in pair_index(), n in 1u32..=6, eps in 0u32..=1) {
        let eps = Eps::from_u32(eps).unwrap();
        let pc = PairIndex::new(c.clone()).unwrap();
        let left = xi(eps, &pc, FiniteParams::right(n, 15).unwrap()).unwrap();
        let right = z_dagger_finite(&e_q(eps, &c).unwrap(), n, 15).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn words_round_trip_through_json(c in pair_index()) {
        let u = d_q(&c).unwrap();
        prop_assert!(u.in_space(Space::Hgeq2));
        let text = serde_json::to_string(&u.to_json()).unwrap();
        let back: ElementJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(AlgebraElement::from_json(&back).unwrap(), u);
    }

    #[test]
    fn forward_difference_appends_a_letter_block(k in proptest::collection::vec(1u32..=3, 0..=2), last in 1u32..=3, n in 1u32..=5) {
        // Z(u y x^{k-1}) grows by q^N/[N]^k * Z(u) when N steps to N + 1
        let d = 12;
        let mut full = k.clone();
        full.push(last);
        let u = word_element(&k).unwrap();
        let diff = &z_dagger_finite(&word_element(&full).unwrap(), n + 1, d).unwrap()
            - &z_dagger_finite(&word_element(&full).unwrap(), n, d).unwrap();
        let kernel = qmzv::series::inv_one_minus_qn(n as usize, last, d).unwrap().shift(n as usize);
        prop_assert_eq!(diff, &kernel * &z_dagger_finite(&u, n, d).unwrap());
    }
}

#[test]
fn z_maps_agree_with_direct_evaluators_on_basis_words() {
    for w in qmzv::words::h1_basis(4) {
        let k = w.to_index().unwrap();
        let u = AlgebraElement::from_word(w.clone());
        for n in 1..=5 {
            let p = FiniteParams::right(n, 12).unwrap();
            assert_eq!(z_dagger_finite(&u, n, 12).unwrap(), zeta_dagger_finite(&BarIndex::plain(&k), p).unwrap());
            assert_eq!(z_bz_finite(&u, n, 12).unwrap(), zeta_bz_finite(&k, n, 12).unwrap());
        }
    }
    assert_eq!("1".parse::<Word>().unwrap(), Word::empty());
}

#[test]
fn reports_are_byte_identical_across_thread_counts() {
    let text = |threads: usize| {
        let cfg = SuiteConfig {
            max_weight: 3,
            max_n: 4,
            order: 12,
            rational_max_weight: 2,
            rational_max_n: 3,
            infinite_max_weight: 3,
            infinite_order: 10,
            genfun_max_n: 3,
            max_r: 1,
            genfun_order: 8,
            transform_max_entry: 2,
            transform_max_total: 4,
            transform_order: 10,
            remark_max_total: 4,
            qmsw_max_weight: 3,
            remark_max_n: 4,
            remark_order: 10,
            classical_max_weight: 4,
            classical_max_n: 5,
            bridge_max_weight: 2,
            independence_max_weight: 2,
            independence_max_n: 3,
            independence_order: 10,
            parallelism: Some(threads),
            ..SuiteConfig::default()
        };
        let out = run_suite(&cfg).unwrap();
        assert!(out.summary.all_passed(), "{:?}", out.summary);
        serde_json::to_string(&out.reports).unwrap()
    };
    let one = text(1);
    assert_eq!(one, text(4));
    let back: Vec<Report> = serde_json::from_str(&one).unwrap();
    assert_eq!(serde_json::to_string(&back).unwrap(), one);
}

#[test]
fn vacuous_and_empty_suites() {
    let cfg = SuiteConfig { filter: vec!["nothing".into()], ..SuiteConfig::default() };
    let out = run_suite(&cfg).unwrap();
    assert!(out.reports.is_empty() && out.summary.all_passed());
    assert_eq!(serde_json::to_string(&out.reports).unwrap(), "[]");
    assert!(SuiteConfig::from_toml("no_such_key = 1").is_err());
}
