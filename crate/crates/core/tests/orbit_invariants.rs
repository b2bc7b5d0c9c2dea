use std::collections::{BTreeMap, BTreeSet};

use lambda_pairs::combinatorics::{adjacent, arrows_from, BoxShape, Flavor, Partition};
use lambda_pairs::orbit::*;

fn boxes() -> Vec<BoxShape> {
    let mut v = vec![];
    for k in 1..=3 {
        for l in 1..=3 {
            v.push(BoxShape::A { k, l });
        }
    }
    for k in 2..=4 {
        v.push(BoxShape::D { k });
    }
    v
}

fn regions() -> Vec<Region> {
    boxes()
        .into_iter()
        .flat_map(|b| {
            b.enumerate()
                .into_iter()
                .map(move |lam| Region::new(lam, b).unwrap())
        })
        .collect()
}

#[test]
fn tau_roundtrip() {
    for r in regions() {
        for a in enumerate_matrices(&r) {
            assert_eq!(matrix_from_tau(&tau(&a), &r).unwrap(), a, "{r:?}");
        }
    }
}

#[test]
fn reconstruction_ignores_tie_break() {
    for r in regions() {
        for a in enumerate_matrices(&r) {
            let s = tau(&a);
            let last = matrix_from_tau_with(&s, &r, |m| *m.iter().max().unwrap()).unwrap();
            let by_col =
                matrix_from_tau_with(&s, &r, |m| *m.iter().min_by_key(|c| (c.1, c.0)).unwrap())
                    .unwrap();
            assert_eq!(last, a);
            assert_eq!(by_col, a);
            let n = r.default_window();
            let s1 = hat_completion(&a, n).unwrap();
            let s2 = hat_completion_with(&a, n, |m| *m.iter().max().unwrap()).unwrap();
            assert_eq!(s1, s2, "{:?}", a.support);
        }
    }
}

#[test]
fn completion_restricts_to_matrix_and_is_window_stable() {
    for r in regions() {
        let n = r.default_window();
        let zero = ZeroOneMatrix::zero(r.clone());
        // type D tails are 2-cycles, each adding one inversion
        let shift = hat_completion(&zero, n + 2).unwrap().length()
            - hat_completion(&zero, n).unwrap().length();
        assert_eq!(shift, if r.flavor() == Flavor::D { 1 } else { 0 });
        for a in enumerate_matrices(&r) {
            let s = hat_completion(&a, n).unwrap();
            let inside: BTreeSet<Cell> = s.cells().into_iter().filter(|&c| r.contains(c)).collect();
            assert_eq!(inside, a.full_support());
            let bigger = hat_completion(&a, n + 2).unwrap();
            assert_eq!(&bigger.images()[..n], s.images(), "{r:?} {:?}", a.support);
            assert_eq!(bigger.length(), s.length() + shift, "{r:?} {:?}", a.support);
        }
    }
}

#[test]
fn dim_length() {
    for r in regions() {
        let n = r.default_window();
        let zero_len = hat_completion(&ZeroOneMatrix::zero(r.clone()), n)
            .unwrap()
            .length();
        for a in enumerate_matrices(&r) {
            let len = hat_completion(&a, n).unwrap().length();
            let dim = orbit_dim(&a).unwrap();
            match r.flavor() {
                Flavor::A => assert_eq!(len, r.rows() * r.cols() - dim),
                Flavor::D => assert_eq!(len + 2 * dim, zero_len, "{:?} {:?}", r, a.support),
            }
        }
    }
}

#[test]
fn rank_recursion_matches_completion() {
    for r in regions().into_iter().filter(|r| r.flavor() == Flavor::A) {
        for a in enumerate_matrices(&r) {
            let n = r.default_window();
            let s = hat_completion(&a, n).unwrap();
            let rec = rank_by_recursion(&a, n);
            for p in 1..=n {
                for q in 1..=n {
                    assert_eq!(rec[p][q], s.rank(p, q));
                }
            }
        }
    }
}

#[test]
fn closure_triple_equivalence() {
    for r in regions() {
        let all = enumerate_matrices(&r);
        let n = r.default_window();
        let sig: Vec<_> = all.iter().map(|a| hat_completion(a, n).unwrap()).collect();
        let idx: BTreeMap<_, _> = all
            .iter()
            .enumerate()
            .map(|(i, a)| (a.support.clone(), i))
            .collect();
        let down: Vec<Vec<usize>> = all
            .iter()
            .map(|a| {
                codim_one_degenerations(a)
                    .unwrap()
                    .iter()
                    .map(|d| idx[&d.support])
                    .collect()
            })
            .collect();
        for (i, a) in all.iter().enumerate() {
            let dim = orbit_dim(a).unwrap();
            for &j in &down[i] {
                assert_eq!(
                    orbit_dim(&all[j]).unwrap() + 1,
                    dim,
                    "{:?} -> {:?}",
                    a.support,
                    all[j].support
                );
            }
            let mut reach = BTreeSet::from([i]);
            let mut stack = vec![i];
            while let Some(x) = stack.pop() {
                for &y in &down[x] {
                    if reach.insert(y) {
                        stack.push(y);
                    }
                }
            }
            for (j, b) in all.iter().enumerate() {
                let rank = closure_leq(b, a);
                let bruhat = bruhat_leq(&sig[i], &sig[j]);
                assert_eq!(rank, bruhat, "{r:?}: {:?} vs {:?}", b.support, a.support);
                assert_eq!(
                    rank,
                    reach.contains(&j),
                    "{r:?}: {:?} vs {:?}",
                    b.support,
                    a.support
                );
            }
        }
    }
}

#[test]
fn no_gaps() {
    for r in regions() {
        let all = enumerate_matrices(&r);
        let top = top_matrix(&r.lambda, &r.shape).unwrap();
        let top_dim = orbit_dim(&top).unwrap();
        for a in &all {
            let d = orbit_dim(a).unwrap();
            assert!(d <= top_dim);
            if d < top_dim {
                let covered = all
                    .iter()
                    .any(|b| orbit_dim(b).unwrap() == d + 1 && closure_leq(a, b));
                assert!(covered, "{:?}", a.support);
            }
        }
    }
}

#[test]
fn top_matrix_is_open() {
    for r in regions() {
        let top = top_matrix(&r.lambda, &r.shape).unwrap();
        let cells: BTreeSet<Cell> = r.cells().into_iter().collect();
        assert_eq!(tau(&top), cells, "{r:?}");
    }
}

#[test]
fn codim_one_census() {
    for b in boxes() {
        for lam in b.enumerate() {
            let top = top_matrix(&lam, &b).unwrap();
            let top_dim = orbit_dim(&top).unwrap();
            let orbits = codim_one_orbits(&lam, &b).unwrap();
            assert_eq!(orbits.len(), b.box_pairs(&lam).unwrap().len());
            let degen: BTreeSet<_> = codim_one_degenerations(&top)
                .unwrap()
                .into_iter()
                .map(|m| m.support)
                .collect();
            let built: BTreeSet<_> = orbits.iter().map(|o| o.matrix.support.clone()).collect();
            assert_eq!(built, degen, "{lam} in {b}");
            for o in &orbits {
                assert_eq!(orbit_dim(&o.matrix).unwrap() + 1, top_dim);
                let mut want: BTreeSet<Cell> = top.region.cells().into_iter().collect();
                want.remove(&o.dual);
                if b.flavor() == Flavor::D {
                    want.remove(&(o.dual.1, o.dual.0));
                }
                assert_eq!(tau(&o.matrix), want, "{lam} {}", o.pair);
            }
            let targets: BTreeSet<Partition> = orbits.iter().map(|o| o.target.clone()).collect();
            let arrows: BTreeSet<Partition> = arrows_from(&lam, &b)
                .unwrap()
                .into_iter()
                .map(|x| x.1)
                .collect();
            assert_eq!(targets, arrows);
        }
    }
}

#[test]
fn each_slice_has_one_open_orbit() {
    for r in regions().into_iter().filter(|r| r.flavor() == Flavor::A) {
        let slices = dual_slices(&r).unwrap();
        let in_box: BTreeSet<Partition> = r
            .shape
            .enumerate()
            .into_iter()
            .filter(|m| r.lambda.is_contained_in(m))
            .collect();
        assert_eq!(
            slices.keys().cloned().collect::<BTreeSet<_>>(),
            in_box,
            "{r:?}"
        );
        for (lam, orbits) in &slices {
            let open: Vec<_> = orbits
                .iter()
                .filter(|a| is_open_in_slice(a).unwrap().as_ref() == Some(lam))
                .collect();
            assert_eq!(open.len(), 1, "{r:?} {lam}");
            for a in orbits {
                if let Some(other) = is_open_in_slice(a).unwrap() {
                    assert_eq!(&other, lam, "{r:?} {:?}", a.support);
                }
            }
        }
    }
}

fn enlarged(b: &BoxShape) -> BoxShape {
    match *b {
        BoxShape::A { k, l } => BoxShape::A { k: k + 3, l: l + 3 },
        BoxShape::D { k } => BoxShape::D { k: k + 3 },
    }
}

#[test]
fn codim_two_classification() {
    let mut shapes = boxes();
    shapes.push(BoxShape::D { k: 5 });
    for b in shapes {
        let flavor = b.flavor();
        for lam in b.enumerate() {
            let got = codim_two_orbits(&lam, &b).unwrap();
            assert_eq!(got.len(), orbits_by_codim(&lam, &b, 2).unwrap()[2].len());
            let ones = codim_one_orbits(&lam, &b).unwrap();
            let mut seen = BTreeSet::new();
            for o in &got {
                assert!(matches!(o.covers.len(), 1 | 2), "{lam} {}", o.label);
                let covered: BTreeSet<Partition> = ones
                    .iter()
                    .filter(|c| o.covers.contains(&c.pair))
                    .map(|c| c.target.clone())
                    .collect();
                if let OrbitLabel::Child(pi) = o.label {
                    assert_eq!(flavor, Flavor::D);
                    assert_eq!(o.covers, vec![pi]);
                    assert!(o.diamond.is_none());
                    continue;
                }
                let d = o
                    .diamond
                    .as_ref()
                    .unwrap_or_else(|| panic!("{b} {lam} {}", o.label));
                assert_eq!(d.0[0], lam);
                assert_eq!(d.0[2], o.target);
                let sides: BTreeSet<Partition> = [&d.0[1], &d.0[3]]
                    .into_iter()
                    .filter(|m| b.contains(m))
                    .cloned()
                    .collect();
                assert_eq!(covered, sides, "{b} {lam} {}", o.label);
                assert!(
                    seen.insert(o.target.clone()),
                    "{b} {lam}: repeated {}",
                    o.target
                );
                if flavor == Flavor::A {
                    let dual = ZeroOneMatrix::new(o.matrix.region.clone(), o.dual.iter().copied())
                        .unwrap();
                    assert_eq!(
                        slice_by_graph(&dual).unwrap(),
                        o.target,
                        "{lam} {}",
                        o.label
                    );
                }
            }
            // every diamond with a side in the box and far corner in the box is hit
            let arrows: Vec<Partition> = arrows_from(&lam, &enlarged(&b))
                .unwrap()
                .into_iter()
                .map(|x| x.1)
                .collect();
            let mut want = BTreeSet::new();
            for far in b.enumerate() {
                for (i, l1) in arrows.iter().enumerate() {
                    for l2 in &arrows[i + 1..] {
                        let hit = (b.contains(l1) || b.contains(l2))
                            && ![&lam, l1, l2].contains(&&far)
                            && adjacent(l1, &far, flavor)
                            && adjacent(&far, l2, flavor);
                        if hit {
                            want.insert(far.clone());
                        }
                    }
                }
            }
            assert_eq!(seen, want, "{b} {lam}");
        }
    }
}

#[test]
fn pi1_rank_and_loops() {
    let mut shapes = boxes();
    shapes.push(BoxShape::D { k: 5 });
    for b in shapes {
        for lam in b.enumerate() {
            let pres = pi1_presentation(&lam, &b).unwrap();
            let pairs = b.box_pairs(&lam).unwrap();
            assert_eq!(pres.rank(), pairs.len(), "{b} {lam}");
            assert!(pres.is_torsion_free(), "{b} {lam}");
            let top = top_matrix(&lam, &b).unwrap();
            // relations act trivially on the open orbit's base point
            for rel in &pres.relations {
                let word = LoopClass {
                    flavor: b.flavor(),
                    word: rel
                        .iter()
                        .enumerate()
                        .flat_map(|(i, &n)| std::iter::repeat_n(pres.generators[i], n as usize))
                        .collect(),
                };
                for &c in &top.full_support() {
                    assert_eq!(loop_weight(&lam, &word, c).unwrap(), 0, "{b} {lam} {rel:?}");
                }
            }
            for o in codim_one_orbits(&lam, &b).unwrap() {
                let l = loop_class(&lam, &b, &o.pair).unwrap();
                assert_eq!(
                    loop_weight(&lam, &l, o.dual).unwrap(),
                    1,
                    "{b} {lam} {}",
                    o.pair
                );
                for &c in &o.matrix.full_support() {
                    assert_eq!(
                        loop_weight(&lam, &l, c).unwrap(),
                        0,
                        "{b} {lam} {} at {c:?}",
                        o.pair
                    );
                }
            }
        }
    }
}
