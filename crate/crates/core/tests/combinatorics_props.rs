use lambda_pairs::combinatorics::*;
use proptest::prelude::*;

fn a_boxes(max: u32) -> Vec<BoxShape> {
    (0..=max)
        .flat_map(|k| (0..=max).map(move |l| BoxShape::A { k, l }))
        .collect()
}

fn d_boxes(max: u32) -> Vec<BoxShape> {
    (1..=max).map(|k| BoxShape::D { k }).collect()
}

fn h(twice: i64) -> HalfInt {
    HalfInt::from_twice(twice).unwrap()
}

fn nested(pairs: &[LambdaPair]) -> bool {
    pairs.iter().all(|p| {
        pairs.iter().all(|q| {
            let disjoint = p.beta < q.alpha || q.beta < p.alpha;
            disjoint || p.le(q) || q.le(p)
        })
    })
}

fn check_type_a(lam: &Partition, r: i64) {
    let w = Window::symmetric(r);
    let f = lambda_pairs(lam, w, None);
    for g in HalfInt::range(w.lo, w.hi) {
        assert_eq!(
            f.pairs
                .iter()
                .filter(|p| p.alpha == g || p.beta == g)
                .count(),
            1,
            "{lam} {g}"
        );
    }
    assert!(nested(&f.pairs), "{lam}");
    for p in &f.pairs {
        assert!(lam.phi(p.alpha) == -1 && lam.phi(p.beta) == 1, "{lam} {p}");
    }
}

#[test]
fn type_a_pairs_partition_the_window_and_nest() {
    for b in a_boxes(4) {
        for lam in b.enumerate() {
            check_type_a(&lam, 8);
        }
    }
}

#[test]
fn type_d_pairs_cover_each_absolute_value_once() {
    for b in d_boxes(5) {
        for lam in b.enumerate() {
            let r = 2 * 5 + 2;
            let f = lambda_pairs_d(&lam, Window::symmetric(r), None).unwrap();
            for g in HalfInt::range(h(1), h(2 * r - 7)) {
                let n = f
                    .pairs
                    .iter()
                    .filter(|p| [p.alpha, p.beta].iter().any(|&x| x == g || x == -g))
                    .count();
                assert_eq!(n, 1, "{lam} {g}");
            }
        }
    }
    assert!(lambda_pairs_d(&"2,1".parse().unwrap(), Window::symmetric(4), None).is_err());
}

#[test]
fn phi_profile_roundtrip() {
    for b in a_boxes(4) {
        for lam in b.enumerate() {
            for extra in [0, 3] {
                assert_eq!(
                    partition_from_phi(&lam.natural_profile(extra)).unwrap(),
                    lam
                );
            }
        }
    }
}

#[test]
fn moves_grow_by_an_odd_amount() {
    for b in a_boxes(4).into_iter().chain(d_boxes(4)) {
        let flavor = b.flavor();
        for lam in b.enumerate() {
            for (pi, to) in arrows_from(&lam, &b).unwrap() {
                assert!(b.contains(&to));
                assert!(lam.size() < to.size(), "{lam} -> {to}");
                assert!(arrow_between(&to, &lam, flavor).is_none());
                if flavor == Flavor::A {
                    assert_eq!(
                        (to.size() - lam.size()) as i64 * 2,
                        pi.beta.twice() - pi.alpha.twice()
                    );
                }
                let d = cell_dim(&to, flavor) - cell_dim(&lam, flavor);
                assert_eq!(d % 2, 1, "{b}: {lam} -> {to}");
            }
        }
    }
}

#[test]
fn results_are_window_stable() {
    for b in a_boxes(3).into_iter().chain(d_boxes(4)) {
        let w = b.default_window();
        for lam in b.enumerate() {
            let small = b.forest_in(&lam, w).unwrap();
            let big = b.forest_in(&lam, w.enlarge(2)).unwrap();
            assert_eq!(small.box_pairs(), big.box_pairs(), "{b} {lam}");
            for p in small.box_pairs() {
                assert_eq!(small.parent_of(&p), big.parent_of(&p), "{b} {lam} {p}");
            }
        }
    }
}

#[test]
fn sibling_diamonds_commute_and_agree_with_search() {
    for b in a_boxes(3).into_iter().chain(d_boxes(4)) {
        let flavor = b.flavor();
        for lam in b.enumerate() {
            let arrows = arrows_from(&lam, &enlarged(&b)).unwrap();
            for (i, (p1, l1)) in arrows.iter().enumerate() {
                for (p2, l2) in &arrows[i + 1..] {
                    let built = complete_diamond(&lam, l1, l2, flavor).unwrap();
                    let searched = completions(&lam, l1, l2, flavor);
                    assert_eq!(built, searched, "{b} {lam}: {l1} {l2}");
                    let siblings = !parent(&lam, p1).same_endpoints(p2)
                        && !parent(&lam, p2).same_endpoints(p1);
                    if siblings && flavor == Flavor::A {
                        let via1 = apply_move(l1, p2).unwrap();
                        assert_eq!(via1, apply_move(l2, p1).unwrap());
                        assert_eq!(built, vec![via1]);
                    }
                }
            }
        }
    }
}

fn enlarged(b: &BoxShape) -> BoxShape {
    match *b {
        BoxShape::A { k, l } => BoxShape::A { k: k + 2, l: l + 2 },
        BoxShape::D { k } => BoxShape::D { k: k + 2 },
    }
}

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(0u32..10, 0..10).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

proptest! {
    #[test]
    fn random_partitions_pair_up(lam in partition()) {
        check_type_a(&lam, lam.support_radius() + 3);
        prop_assert_eq!(partition_from_phi(&lam.natural_profile(2)).unwrap(), lam);
    }

    #[test]
    fn pairs_ignore_the_window(lam in partition(), extra in 1i64..4) {
        let w = Window::symmetric(lam.support_radius() + 2);
        let small = lambda_pairs(&lam, w, None);
        let big = lambda_pairs(&lam, w.enlarge(extra), None);
        for p in &small.pairs {
            prop_assert!(big.index_of(p).is_some());
        }
    }
}
