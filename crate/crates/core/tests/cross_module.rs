//! Checks that tie several modules together directly, outside the suites.

use num_bigint::{BigInt, BigUint};

use flowvol::closed::{car_volume_closed, ps_volume_closed, VolumeId};
use flowvol::ct::{
    car_ct_expression, evaluate, evaluate_series_certified, kostant_ct_expression, ps_ct_expression,
};
use flowvol::cyclic::{enumerate_ew, enumerate_prefix_ew, ExtendedWord, PrefixExtendedWord};
use flowvol::dyck::{
    count_dld, count_ld, enumerate_dld, enumerate_ld, enumerate_prefixes, parse_word,
    DyckPrefixWord, LabelFilter, ParsedWord,
};
use flowvol::kostant::kpf;
use flowvol::lidskii::volume;
use flowvol::model::{build_car, build_ps, NetFlow};
use flowvol::verify::{small_multigraphs, zero_sum_flows};

#[test]
fn family_out_degrees() {
    for n in 3..=8 {
        let mut ps = vec![2; n - 1];
        ps.extend([1, 0]);
        assert_eq!(build_ps(n).unwrap().out_degrees(), ps, "PS n={n}");

        let mut car = vec![n - 1];
        car.extend(vec![2; n - 2]);
        car.extend([1, 0]);
        assert_eq!(build_car(n).unwrap().out_degrees(), car, "Car n={n}");
    }
}

/// The Kostant count is the constant term of `x^-a prod (1 - x_i/x_j)^-1`,
/// read off by the truncated-series evaluator.
#[test]
fn kpf_matches_series_extraction() {
    let mut checked = 0;
    for g in small_multigraphs(4, 2, 6) {
        if g.vertex_count() > 4 {
            continue;
        }
        for a in zero_sum_flows(g.vertex_count(), -2, 2) {
            let e = kostant_ct_expression(&g, &a).unwrap();
            let (series, _) = evaluate_series_certified(&e, 6).unwrap();
            assert_eq!(kpf(&g, &a).unwrap(), series, "{g} {a}");
            assert_eq!(evaluate(&e), series, "{g} {a}");
            checked += 1;
        }
    }
    assert!(checked > 1000);
}

#[test]
fn constant_terms_count_labeled_words() {
    for n in 2..=6usize {
        for k in 1..=3u32 {
            let ps = evaluate(&ps_ct_expression(n, k).unwrap());
            let ld = count_ld(n - 1, k, &LabelFilter::Zeros(0)).unwrap();
            assert_eq!(ps, BigUint::from(ld), "PS n={n} k={k}");

            let car = evaluate(&car_ct_expression(n, k).unwrap());
            let dld = count_dld(n - 1, k).unwrap();
            assert_eq!(car, BigUint::from(dld), "Car n={n} k={k}");
        }
    }
}

#[test]
fn closed_volume_wrappers_match_lidskii() {
    let g = build_ps(4).unwrap();
    let a = NetFlow::from_i64s(&[2, 1, 1, 3, -7]).unwrap();
    assert_eq!(
        ps_volume_closed(VolumeId::Eq1, 4, 2, 1, 0, 3).unwrap(),
        volume(&g, &a).unwrap()
    );
    let g = build_car(4).unwrap();
    let a = NetFlow::from_i64s(&[2, 3, 3, 3, -11]).unwrap();
    assert_eq!(
        car_volume_closed(VolumeId::Eq6, 4, 2, 3, 0).unwrap(),
        volume(&g, &a).unwrap()
    );
    assert!(ps_volume_closed(VolumeId::Eq6, 4, 1, 1, 1, 1).is_err());
    assert_eq!(
        volume(
            &build_ps(4).unwrap(),
            &NetFlow::from_i64s(&[1, 1, 1, 1, -4]).unwrap()
        )
        .unwrap(),
        BigInt::from(16)
    );
}

#[test]
fn every_enumerated_word_round_trips() {
    for n in 0..=4 {
        for k in 1..=2 {
            for w in enumerate_ld(n, k, &LabelFilter::None).unwrap() {
                assert_eq!(
                    parse_word(&w.to_string(), k).unwrap(),
                    ParsedWord::Labeled(w)
                );
            }
            for w in enumerate_dld(n, k).unwrap() {
                assert_eq!(
                    parse_word(&w.to_string(), k).unwrap(),
                    ParsedWord::Doubly(w)
                );
            }
            for w in enumerate_ew(n, k) {
                assert_eq!(ExtendedWord::parse(&w.to_string(), k).unwrap(), w);
            }
            for i in 0..=n {
                for w in enumerate_prefix_ew(n, i, k).unwrap() {
                    assert_eq!(
                        PrefixExtendedWord::parse(&w.to_string(), n, i, k).unwrap(),
                        w
                    );
                }
                for comp in flowvol::arith::weak_compositions((n - i) as u64, k as usize + 1) {
                    let comp: Vec<usize> = comp.iter().map(|&x| x as usize).collect();
                    for w in enumerate_prefixes(n, i, k, &comp).unwrap() {
                        assert_eq!(DyckPrefixWord::parse(&w.to_string(), k, i).unwrap(), w);
                    }
                }
            }
        }
    }
}
