use lambda_pairs::combinatorics::{BoxShape, HalfInt, Partition};
use lambda_pairs::quiver::*;

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn h(s: &str) -> HalfInt {
    s.parse().unwrap()
}

fn b(s: &str) -> BoxShape {
    s.parse().unwrap()
}

#[test]
fn simples_pass() {
    for shape in ["A1x1", "A2x2", "A2x3", "D3", "D4"] {
        for rep in enumerate_simples(&b(shape)) {
            let r = check_relations(&rep).unwrap();
            assert!(r.passes(), "{shape}: {:?}", r.failures);
        }
    }
}

#[test]
fn one_by_one_example() {
    let mut rep = QuiverRep::zero(b("A1x1"));
    rep.dims.insert(p("0"), 1);
    rep.dims.insert(p("1"), 1);
    rep.p
        .insert((p("0"), p("1")), QMatrix::from_ints(1, 1, &[1]).unwrap());
    let r = check_relations(&rep).unwrap();
    assert!(r.passes(), "{:?}", r.failures);
    assert!(r.checked[&RelationId::R3] >= 2);
    // a nonidentity t_{1/2} on V_∅ breaks relation 3
    rep.t
        .insert((h("1/2"), p("0")), QMatrix::from_ints(1, 1, &[2]).unwrap());
    let r = check_relations(&rep).unwrap();
    assert!(r.failed(RelationId::R3) || r.failed(RelationId::R2));
}

#[test]
fn chain_vanishing_in_d3() {
    let mut rep = QuiverRep::zero(b("D3"));
    for l in ["0", "2,2", "3,2,1"] {
        rep.dims.insert(p(l), 1);
    }
    let one = QMatrix::from_ints(1, 1, &[1]).unwrap();
    rep.p.insert((p("0"), p("2,2")), one.clone());
    rep.p.insert((p("2,2"), p("3,2,1")), one);
    let r = check_relations(&rep).unwrap();
    assert!(r.failed(RelationId::R4sB), "{:?}", r.failures);
}

#[test]
fn shape_errors_are_not_relation_failures() {
    let mut rep = QuiverRep::zero(b("A1x1"));
    rep.dims.insert(p("0"), 2);
    rep.p
        .insert((p("0"), p("1")), QMatrix::from_ints(1, 1, &[1]).unwrap());
    assert!(check_relations(&rep).is_err());
}

#[test]
fn fixtures_satisfy_the_consequences() {
    for (shape, simples) in [("A2x2", 6), ("D3", 4), ("A2x3", 10), ("D4", 8)] {
        let shape = b(shape);
        assert_eq!(enumerate_simples(&shape).len(), simples);
        let g = BoxGraph::new(shape).unwrap();
        let reps = fixtures(&shape, 3, 10).unwrap();
        let mut nonidentity = 0;
        for rep in &reps {
            assert!(check_relations(rep).unwrap().passes());
            assert!(check_unipotence(rep).unwrap());
            for lam in &g.nodes {
                for gamma in g.active_range() {
                    if shape.flavor() == lambda_pairs::combinatorics::Flavor::D
                        && !gamma.is_positive()
                    {
                        continue;
                    }
                    assert!(
                        t_from_mu_identity(rep, lam, gamma).unwrap(),
                        "{shape} {lam} {gamma}"
                    );
                }
            }
            if g.edges()
                .iter()
                .any(|&(i, j)| !rep.mu(&g.nodes[i], &g.nodes[j]).unwrap().is_identity())
            {
                nonidentity += 1;
            }
        }
        assert!(nonidentity >= 1, "{shape}");
    }
}

#[test]
fn one_dimensional_reps_are_simple() {
    let mut rep = simple_rep(&p("1"), &b("A2x2")).unwrap();
    assert!(check_relations(&rep).unwrap().passes());
    rep.t
        .insert((h("1/2"), p("1")), QMatrix::from_ints(1, 1, &[2]).unwrap());
    assert!(!check_relations(&rep).unwrap().passes());
}
