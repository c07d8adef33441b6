use gstower::group_lab::{fox_derivative, magnus_embed, magnus_relator, Letter, NcTruncPoly, Word};
use gstower::gs_check::{check_inequality, classify_ztypes, inequality_poly, CheckMode, RelationProfile};
use gstower::jennings::{jennings_transform, DimensionSequence};
use gstower::search::{greedy_fill, relaxed_fails_at};
use gstower::series::{positive_on_open_unit_interval, series_inverse, ExactPoly, TruncSeries};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn small_poly() -> impl Strategy<Value = ExactPoly> {
    prop::collection::vec(-6i64..=6, 1..8).prop_map(|c| ExactPoly::from_ints(&c))
}

fn word(vars: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..vars, any::<bool>()), 0..6)
        .prop_map(|ls| Word(ls.into_iter().map(|(generator, inverse)| Letter { generator, inverse }).collect()))
}

fn caps_11() -> Vec<u32> {
    vec![2, 1, 1, 1, 2, 2, 3, 5, 8]
}

fn capped_sequence() -> impl Strategy<Value = Vec<u32>> {
    caps_11().into_iter().map(|c| 0..=c).collect::<Vec<_>>()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn series_inverse_is_an_inverse(mut c in prop::collection::vec(-5i64..=5, 1..6), deg in 0usize..10) {
        if c[0] == 0 {
            c[0] = 1;
        }
        let f = TruncSeries::from_poly(&ExactPoly::from_ints(&c), deg);
        let g = series_inverse(&f).unwrap();
        prop_assert!(f.mul(&g).is_one());
    }

    #[test]
    fn evaluation_is_a_ring_map(f in small_poly(), g in small_poly(), n in -7i64..=7, d in 1i64..=9) {
        let t = q(n, d);
        prop_assert_eq!((&f * &g).eval(&t), f.eval(&t) * g.eval(&t));
        prop_assert_eq!((&f + &g).eval(&t), f.eval(&t) + g.eval(&t));
    }

    /// A positive verdict is consistent with a fine sample; a negative one
    /// carries a point where the value really is non-positive.
    #[test]
    fn positivity_verdicts_are_sound(f in small_poly()) {
        prop_assume!(!f.is_zero());
        let rep = positive_on_open_unit_interval(&f).unwrap();
        if rep.holds() {
            for k in 1..1000 {
                prop_assert!(f.eval(&q(k, 1000)).is_positive());
            }
        } else if let Some(t) = rep.witness().unwrap().point() {
            prop_assert!(t.is_positive() && t < &BigRational::one());
            prop_assert!(!f.eval(t).is_positive());
        }
    }
}

proptest! {
    // Exact mode at p = 11 builds polynomials of degree several hundred.
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn exact_holds_implies_relaxed_holds(seq in capped_sequence()) {
        let a = DimensionSequence::from_slice(11, &seq).unwrap();
        let profile = RelationProfile::zt37();
        let exact = check_inequality(&profile, &a, CheckMode::Exact).unwrap();
        let relaxed = check_inequality(&profile, &a, CheckMode::Relaxed).unwrap();
        prop_assert!(!exact.holds() || relaxed.holds());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn quick_grid_agrees_with_expansion(seq in capped_sequence(), k in 1u64..20) {
        let a = DimensionSequence::from_slice(11, &seq).unwrap();
        let f = inequality_poly(&RelationProfile::zt37(), &a, CheckMode::Relaxed);
        prop_assert_eq!(relaxed_fails_at(&seq, k, 20), !f.eval(&q(k as i64, 20)).is_positive());
    }

    #[test]
    fn jennings_top_coefficient_is_group_order(seq in prop::collection::vec(0u32..3, 1..5), p in prop::sample::select(vec![2u32, 3, 5])) {
        let a = DimensionSequence::from_slice(p, &seq).unwrap();
        let j = jennings_transform(&a);
        prop_assert_eq!(j.c.last().unwrap(), &j.group_order());
        prop_assert_eq!(j.c.len(), a.stabilization_index() + 2);
        let b_sum: BigInt = j.b.iter().sum();
        prop_assert_eq!(b_sum, j.group_order());
        // b is palindromic.
        let rev: Vec<BigInt> = j.b.iter().rev().cloned().collect();
        prop_assert_eq!(&j.b, &rev);
    }

    #[test]
    fn magnus_is_multiplicative(u in word(2), v in word(2)) {
        let (p, cap) = (3, 5);
        let lhs = magnus_embed(&u.concat(&v), p, 2, cap).unwrap();
        let rhs = magnus_embed(&u, p, 2, cap).unwrap().mul(&magnus_embed(&v, p, 2, cap).unwrap());
        prop_assert_eq!(lhs, rhs);
        let inv = magnus_embed(&u, p, 2, cap).unwrap().mul(&magnus_embed(&u.inverse(), p, 2, cap).unwrap());
        prop_assert_eq!(inv, NcTruncPoly::one(p, 2, cap));
    }

    #[test]
    fn fox_derivatives_reconstruct(w in word(3)) {
        let (p, cap) = (5, 4);
        let f = magnus_relator(&w, p, 3, cap).unwrap();
        let mut sum = NcTruncPoly::zero(p, 3, cap);
        for j in 0..3 {
            sum = sum.add(&fox_derivative(&f, j).unwrap().mul(&NcTruncPoly::variable(p, 3, cap, j)));
        }
        prop_assert_eq!(sum, f);
    }
}

#[test]
fn ztypes_do_not_depend_on_max_level() {
    let base = classify_ztypes(9).unwrap();
    for max in [10, 13, 17, 31, 41] {
        assert_eq!(classify_ztypes(max).unwrap(), base);
    }
}

/// Filling low indices first gives the pointwise smallest product among
/// capped sequences with the same total, checked at t = k/100.
#[test]
fn greedy_fill_minimises_the_product() {
    let caps = caps_11();
    let product = |seq: &[u32], t: &BigRational| {
        seq.iter().enumerate().fold(BigRational::one(), |acc, (i, &a)| {
            let base = BigRational::one() - num_traits::pow(t.clone(), i + 1);
            acc * num_traits::pow(base, a as usize)
        })
    };
    for total in [3u32, 5, 8] {
        let greedy = greedy_fill(&caps, total).unwrap();
        let others: Vec<Vec<u32>> = gstower::search::enumerate_capped(&caps, total)
            .into_iter()
            .filter(|s| s.iter().sum::<u32>() == total)
            .collect();
        for k in (5..100).step_by(15) {
            let t = q(k, 100);
            let g = product(&greedy, &t);
            for s in &others {
                assert!(g <= product(s, &t), "total {total}, {s:?} beats greedy at {t}");
            }
        }
    }
}

/// `prod (1 - t^n)^{a_n} <= prod P_n(t)^{a_n}` on `(0, 1)`, so the relaxed
/// difference dominates the exact one.
#[test]
fn relaxed_product_is_below_jennings_product() {
    let profile = RelationProfile::zt37();
    let a = DimensionSequence::from_slice(11, &[2, 1, 1, 1, 2]).unwrap();
    let relaxed = inequality_poly(&profile, &a, CheckMode::Relaxed);
    let lhs = gstower::gs_check::gs_lhs_poly(&profile);
    let j = jennings_transform(&a);
    for k in 1..20 {
        let t = q(k, 20);
        let pn = BigRational::one() / j.jennings_poly.eval(&t);
        assert!(lhs.eval(&t) - pn <= relaxed.eval(&t));
    }
}
