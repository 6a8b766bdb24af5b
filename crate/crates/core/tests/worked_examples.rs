mod common;

use common::q;
use fatpoint::bezout::{
    bezout_fixed_check, emptiness_certificate, mu_fixed_multiplicity, reduce_by_component,
    verify_certificate, Justification, TerminalReason,
};
use fatpoint::configs::{
    closed_form_of, mu_d, reproduce_table, table_rows, verify_type, ClosedForm, RowKind, Status,
};
use fatpoint::geometry::FatPointScheme;
use fatpoint::geometry::{
    build_recipe, generic_k_config, generic_parts, line_through, monomial_index, multiplicity_at,
    named, standard_k_config, validate_k_config, CurveComponent, CurveRecipe, Exactness, HomogPoly,
    KConfigType, Line, PolyCurve, ProjPoint, Shape,
};
use fatpoint::linsys::{
    alpha, alpha_symbolic, dim_linear_system, has_linear_component, system_basis, Alpha,
    LinearSystemQuery,
};
use fatpoint::waldschmidt::{
    bracket, chudnovsky_lower_bound, closed_form, verify_stabilization, wc_sequence,
    ClosedFormResult,
};
use num_bigint::BigInt;
use std::time::Duration;

fn pt(a: i64, b: i64, c: i64) -> ProjPoint {
    ProjPoint::from_ints(a, b, c)
}

fn ty(d: &[u32]) -> KConfigType {
    KConfigType::new(d.to_vec()).unwrap()
}

fn standard(d: &[u32]) -> Vec<ProjPoint> {
    standard_k_config(&ty(d))
}

fn poly(degree: u32, terms: &[([u32; 3], i64)]) -> PolyCurve {
    let mut c = vec![BigInt::from(0); ((degree + 1) * (degree + 2) / 2) as usize];
    for &(e, v) in terms {
        c[monomial_index(e)] = BigInt::from(v);
    }
    PolyCurve::new(HomogPoly::new(degree, c).unwrap()).unwrap()
}

/// `b` points on `x2 = 0`, `b` on `x2 = x0`, and `R = [2:1:4]` with
/// multiplicity `b - 1`.
fn lemma_scheme(b: i64) -> FatPointScheme {
    let mut s: Vec<(ProjPoint, u32)> = Vec::new();
    for j in 0..b {
        s.push((pt(1, j, 0), 1));
        s.push((pt(1, j, 1), 1));
    }
    s.push((pt(2, 1, 4), (b - 1) as u32));
    FatPointScheme::new(s).unwrap()
}

fn dim(z: &FatPointScheme, d: u32) -> usize {
    dim_linear_system(&LinearSystemQuery::new(z.clone(), d)).dimension
}

#[test]
fn standard_configurations() {
    assert_eq!(standard(&[1]), vec![pt(1, 0, 0)]);
    let mut got = standard(&[1, 2, 3]);
    let mut want = vec![
        pt(1, 0, 2),
        pt(1, 0, 1),
        pt(1, 1, 1),
        pt(1, 0, 0),
        pt(1, 1, 0),
        pt(1, 2, 0),
    ];
    got.sort();
    want.sort();
    assert_eq!(got, want);
    let two_three = standard(&[2, 3]);
    assert_eq!(two_three.len(), 5);
    let (upper, lower) = (Line::from_ints(1, 0, -1), Line::from_ints(0, 0, 1));
    assert_eq!(two_three.iter().filter(|p| upper.contains(p)).count(), 2);
    assert_eq!(two_three.iter().filter(|p| lower.contains(p)).count(), 3);
}

#[test]
fn generic_configurations() {
    for seed in [0, 1, 99] {
        let parts = generic_parts(&ty(&[1, 2]), seed).unwrap();
        assert_eq!(parts.iter().map(|p| p.points.len()).sum::<usize>(), 3);
        assert!(!parts[1].line.contains(&parts[0].points[0]));
    }
    let t = ty(&[1, 2, 3]);
    assert_eq!(generic_k_config(&t, 42).unwrap().len(), 6);
    assert!(validate_k_config(&t, &generic_parts(&t, 42).unwrap()));
    let parts = generic_parts(&ty(&[2, 3]), 7).unwrap();
    let all: Vec<&ProjPoint> = parts.iter().flat_map(|p| &p.points).collect();
    assert!(all
        .iter()
        .all(|p| !(parts[0].line.contains(p) && parts[1].line.contains(p))));
}

#[test]
fn lines_through_points() {
    assert_eq!(
        line_through(&pt(1, 0, 0), &pt(1, 1, 0)).unwrap(),
        Line::from_ints(0, 0, 1)
    );
    let m1 = line_through(&pt(1, 0, 2), &pt(1, 0, 1)).unwrap();
    assert_eq!(m1, Line::from_ints(0, 1, 0));
    assert!(m1.contains(&pt(1, 0, 0)));
    let (a, b) = (pt(3, -7, 11), pt(-2, 5, 13));
    let l = line_through(&a, &b).unwrap();
    assert!(l.contains(&a) && l.contains(&b));
}

#[test]
fn recipe_multiplicities() {
    let double = CurveRecipe {
        components: vec![CurveComponent::line(named::l1(), 2, "L")],
        declared_degree: 2,
        declared_point_multiplicity: 2,
        exactness: Exactness::Exact,
        degenerate: false,
    };
    assert_eq!(multiplicity_at(&double, &pt(1, 5, 0)), 2);
    assert_eq!(
        multiplicity_at(&build_recipe(&ty(&[1, 2, 4])).unwrap(), &named::p(1)),
        3
    );
    assert_eq!(
        multiplicity_at(&build_recipe(&ty(&[1, 5, 6])).unwrap(), &named::r()),
        8
    );
}

#[test]
fn recipes() {
    let t = ty(&[1, 2, 6]);
    let r = build_recipe(&t).unwrap();
    assert_eq!(r.degree(), 5);
    let labels: Vec<(String, u32)> = r
        .components
        .iter()
        .map(|c| (c.label.clone(), c.multiplicity))
        .collect();
    for want in [("L1", 2), ("L2", 1), ("M1", 1), ("M2", 1)] {
        assert!(labels.contains(&(want.0.to_string(), want.1)), "{labels:?}");
    }
    assert!(r
        .audit(&standard_k_config(&t))
        .per_point
        .iter()
        .all(|&m| m >= 2));

    let t = ty(&[1, 5, 6]);
    let r = build_recipe(&t).unwrap();
    let a = r.audit(&standard_k_config(&t));
    assert_eq!((a.degree, a.per_point.len()), (22, 12));
    assert!(a.per_point.iter().all(|&m| m == 8));
    assert_eq!(r.exactness, Exactness::Exact);

    let t = ty(&[2, 3, 4]);
    let r = build_recipe(&t).unwrap();
    let a = r.audit(&standard_k_config(&t));
    assert!(a.passed());
    assert_eq!(a.degree, 17);
    assert!(a.per_point.iter().all(|&m| m == 6));
    assert_eq!(
        r.components
            .iter()
            .filter(|c| matches!(&c.shape, Shape::Curve(k) if k.degree() == 2))
            .count(),
        1
    );
}

#[test]
fn dimensions() {
    let one = FatPointScheme::uniform(&[pt(1, 2, 3)], 1).unwrap();
    assert_eq!(dim(&one, 1), 2);
    assert_eq!(dim(&one.scaled(2), 1), 0);
    assert_eq!(dim(&lemma_scheme(3), 3), 1);
}

#[test]
fn initial_degrees() {
    for m in 1..=5 {
        let z = FatPointScheme::uniform(&[pt(1, 2, 3)], m).unwrap();
        assert_eq!(alpha(&z, 20), Alpha::Found(m));
    }
    let collinear =
        FatPointScheme::uniform(&[pt(1, 0, 0), pt(1, 1, 0), pt(1, 2, 0), pt(1, 3, 0)], 1).unwrap();
    assert_eq!(alpha(&collinear, 5), Alpha::Found(1));
    let x = FatPointScheme::uniform(&standard(&[1, 2, 4]), 3).unwrap();
    assert_eq!(alpha(&x, 20), Alpha::Found(7));

    assert_eq!(alpha_symbolic(&[pt(1, 2, 3)], 5, 10), Alpha::Found(5));
    assert_eq!(
        alpha_symbolic(&generic_k_config(&ty(&[2, 3]), 7).unwrap(), 3, 20),
        Alpha::Found(6)
    );
    assert_eq!(
        alpha_symbolic(&standard(&[1, 2, 6]), 2, 20),
        Alpha::Found(5)
    );
}

#[test]
fn bases() {
    let (a, b) = (pt(1, 0, 0), pt(1, 1, 0));
    let basis = system_basis(&LinearSystemQuery::new(
        FatPointScheme::uniform(&[a.clone(), b.clone()], 1).unwrap(),
        1,
    ));
    assert_eq!(basis.len(), 1);
    assert_eq!(basis[0].as_line(), Some(line_through(&a, &b).unwrap()));

    let z = lemma_scheme(2);
    let basis = system_basis(&LinearSystemQuery::new(z.clone(), 2));
    assert_eq!(basis.len(), 1);
    assert_eq!(basis[0].degree(), 2);
    assert!(z.supports().iter().all(|(p, m)| basis[0].order_at(p) >= *m));

    let five = [
        pt(1, 0, 0),
        pt(0, 1, 0),
        pt(0, 0, 1),
        pt(1, 1, 1),
        pt(1, 2, 5),
    ];
    let basis = system_basis(&LinearSystemQuery::new(
        FatPointScheme::uniform(&five, 1).unwrap(),
        2,
    ));
    assert_eq!(basis.len(), 1);
    assert!(five.iter().all(|p| basis[0].order_at(p) >= 1));
}

#[test]
fn linear_components() {
    let x1x2 = poly(2, &[([0, 1, 1], 1)]);
    let found = has_linear_component(&x1x2, &[Line::from_ints(0, 1, 0), Line::from_ints(1, 0, 0)]);
    assert_eq!(found, vec![Line::from_ints(0, 1, 0)]);

    let z = lemma_scheme(3);
    let curve = system_basis(&LinearSystemQuery::new(z.clone(), 3)).remove(0);
    let pts: Vec<ProjPoint> = z.points().cloned().collect();
    let mut lines = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            lines.push(line_through(&pts[i], &pts[j]).unwrap());
        }
    }
    assert!(has_linear_component(&curve, &lines).is_empty());

    let conic = poly(2, &[([1, 0, 1], 1), ([0, 2, 0], -1)]);
    assert!(has_linear_component(&conic, &lines).is_empty());
}

#[test]
fn sequences() {
    let seq = wc_sequence(&[pt(1, 0, 0)], 3, 10);
    let got: Vec<(u32, u32)> = seq
        .iter()
        .map(|e| (e.t, e.alpha.value().unwrap()))
        .collect();
    assert_eq!(got, vec![(1, 1), (2, 2), (3, 3)]);
    assert!(seq.iter().all(|e| e.ratio == Some(q(1, 1))));

    let seq = wc_sequence(&standard(&[2, 3]), 3, 12);
    assert_eq!(
        seq.iter()
            .map(|e| e.alpha.value().unwrap())
            .collect::<Vec<_>>(),
        vec![2, 4, 6]
    );
    assert!(seq.iter().all(|e| e.ratio == Some(q(2, 1))));

    let seq = wc_sequence(&standard(&[1, 2]), 2, 10);
    assert_eq!(seq.last().unwrap().ratio, Some(q(3, 2)));
}

#[test]
fn chudnovsky_bounds() {
    assert_eq!(chudnovsky_lower_bound(&[pt(1, 0, 0)]), q(1, 1));
    assert_eq!(chudnovsky_lower_bound(&standard(&[3, 4, 5])), q(2, 1));
    assert_eq!(chudnovsky_lower_bound(&standard(&[2, 3])), q(3, 2));
}

#[test]
fn stabilization() {
    assert!(verify_stabilization(&standard(&[2, 3]), 1, 2, 3).passed());
    let s = verify_stabilization(&standard(&[1, 2, 6]), 2, 5, 3);
    assert!(s.passed());
    assert_eq!(s.implied_value(), Some(q(5, 2)));
    let s = verify_stabilization(&standard(&[1, 2, 6]), 2, 4, 1);
    assert!(!s.entries[0].passed());
}

#[test]
fn brackets() {
    let b = bracket(&[pt(1, 0, 0)], &[1, 2]);
    assert_eq!((b.lower, b.upper), (q(1, 1), Some(q(1, 1))));

    let b = bracket(&standard(&[2, 3, 4]), &[6]);
    assert_eq!(b.lower, q(2, 1));
    assert!(b.upper.unwrap() <= q(17, 6));

    let b = bracket(&standard(&[2, 3, 5]), &[1, 2, 3, 4]);
    assert!(b.lower <= q(17, 6));
    assert!(b.upper.unwrap() >= q(71, 24));
}

fn exact(t: &[u32]) -> ClosedForm {
    match closed_form(&ty(t)) {
        ClosedFormResult::Known { value, .. } => value,
        ClosedFormResult::Unknown => panic!("{t:?} has no closed form"),
    }
}

#[test]
fn closed_forms() {
    assert_eq!(exact(&[1, 3, 8]), ClosedForm::Exact(q(8, 3)));
    assert_eq!(exact(&[1, 3, 7]), ClosedForm::Exact(q(45, 17)));
    assert_eq!(exact(&[4, 5, 6]), ClosedForm::Exact(q(3, 1)));
    assert_eq!(exact(&[1, 4, 5]), ClosedForm::Exact(q(32, 12)));
}

#[test]
fn fixed_multiplicities() {
    assert_eq!(mu_fixed_multiplicity(&[1, 1], 1).unwrap(), 1);
    assert_eq!(mu_fixed_multiplicity(&[8; 6], 21).unwrap(), 6);
    assert_eq!(mu_fixed_multiplicity(&[3, 3, 3], 9).unwrap(), 0);
}

#[test]
fn component_removal() {
    let three = FatPointScheme::uniform(&[pt(1, 0, 0), pt(1, 1, 0), pt(1, 2, 0)], 1).unwrap();
    let l = CurveComponent::line(named::l1(), 1, "L");
    let (r, d) = reduce_by_component(&three, 2, &l, 1).unwrap();
    assert!(r.is_empty());
    assert_eq!(d, 1);

    let t = ty(&[1, 5, 6]);
    let z = FatPointScheme::uniform(&standard_k_config(&t), 8).unwrap();
    let (r, d) = reduce_by_component(&z, 21, &l, 5).unwrap();
    assert_eq!(d, 16);
    for i in 1..=6 {
        assert_eq!(r.multiplicity(&named::p(i)), 3);
    }
    assert_eq!(r.multiplicity(&named::q(1)), 8);

    let mixed =
        FatPointScheme::new(vec![(pt(1, 0, 0), 1), (pt(1, 1, 0), 3), (pt(1, 0, 1), 2)]).unwrap();
    let (r, d) = reduce_by_component(&mixed, 5, &l, 2).unwrap();
    assert_eq!(d, 3);
    assert_eq!(r.multiplicity(&pt(1, 0, 0)), 0);
    assert_eq!(r.multiplicity(&pt(1, 1, 0)), 1);
    assert_eq!(r.multiplicity(&pt(1, 0, 1)), 2);
}

#[test]
fn bezout_excess() {
    let two = FatPointScheme::uniform(&[pt(1, 0, 0), pt(1, 1, 0)], 1).unwrap();
    let line = PolyCurve::new(HomogPoly::from_line(&named::l1())).unwrap();
    assert!(bezout_fixed_check(&two, 1, &line).is_some());

    let t = ty(&[1, 2, 4]);
    let recipe = build_recipe(&t).unwrap();
    let c = recipe.components.iter().find(|c| c.degree() == 2).unwrap();
    let Shape::Curve(curve) = &c.shape else {
        panic!("expected a conic")
    };
    let z = FatPointScheme::uniform(&standard_k_config(&t), 3).unwrap();
    let step = bezout_fixed_check(&z, 6, curve).unwrap();
    assert_eq!(
        step.justification,
        Justification::BezoutExcess {
            intersection_count: 15,
            degree_product: 12
        }
    );

    let conic = poly(2, &[([1, 0, 1], 1), ([0, 2, 0], -1)]);
    let three = FatPointScheme::uniform(&[pt(1, 0, 0), pt(1, 1, 1), pt(1, 2, 4)], 1).unwrap();
    assert!(bezout_fixed_check(&three, 2, &conic).is_none());
}

#[test]
fn certificates() {
    let two = FatPointScheme::uniform(&[pt(1, 0, 0), pt(1, 1, 0)], 1).unwrap();
    let c = emptiness_certificate(&two, 0, &[]).unwrap();
    assert!(verify_certificate(&c));

    // two points on each of x2 = 0 and x2 = x0
    let x =
        FatPointScheme::uniform(&[pt(1, 0, 0), pt(1, 1, 0), pt(1, 0, 1), pt(1, 1, 1)], 1).unwrap();
    let c = emptiness_certificate(&x, 1, &[]).unwrap();
    assert_eq!(c.steps.len(), 1);
    assert_eq!(c.steps[0].forced_multiplicity, 1);
    assert!(
        matches!(&c.terminal, TerminalReason::DegreeExhausted { blocking } if blocking.component.degree() == 1)
    );
    assert!(verify_certificate(&c));

    let t = ty(&[1, 5, 6]);
    let z = FatPointScheme::uniform(&standard_k_config(&t), 8).unwrap();
    let hints: Vec<CurveComponent> = build_recipe(&t)
        .unwrap()
        .components
        .into_iter()
        .map(|c| CurveComponent {
            multiplicity: 1,
            ..c
        })
        .collect();
    let c = emptiness_certificate(&z, 21, &hints).unwrap();
    assert!(verify_certificate(&c));
    assert_eq!(dim(&z, 21), 0);

    let mut tampered = c.clone();
    tampered.steps[0].forced_multiplicity += 1;
    assert!(!verify_certificate(&tampered));
    let mut wrong = c;
    wrong.terminal = TerminalReason::PointExceedsDegree {
        point: pt(1, 0, 0),
        multiplicity: 30,
    };
    assert!(!verify_certificate(&wrong));
}

#[test]
fn catalogue_rows() {
    assert_eq!(table_rows().len(), 16);
    assert_eq!(
        closed_form_of(RowKind::A, &ty(&[7])),
        ClosedForm::Exact(q(1, 1))
    );
    for b in 2..=5 {
        let t = ty(&[1, b, 2 * b]);
        let b = b as i64;
        assert_eq!(
            closed_form_of(RowKind::OneB2b, &t),
            ClosedForm::Exact(q(6 * b - 5, 2 * b - 1))
        );
        assert_eq!(
            mu_d(RowKind::OneB2b, &t),
            Some(((2 * b - 1) as u64, (6 * b - 5) as u64))
        );
    }
    assert_eq!(
        closed_form_of(RowKind::T235, &ty(&[2, 3, 5])),
        ClosedForm::Interval(q(17, 6), q(71, 24))
    );
}

#[test]
fn type_verification() {
    let budget = Duration::from_secs(120);
    let o = verify_type(&ty(&[2, 3, 4]), 1, budget).unwrap();
    assert_eq!(o.status(), Status::Passed);
    assert!(o.alphas.contains(&(6, 17)));

    let o = verify_type(&ty(&[3, 4, 5]), 3, budget).unwrap();
    assert_eq!(o.status(), Status::Passed);
    for m in 1..=3 {
        assert!(o.alphas.contains(&(m, 3 * m)));
    }

    let o = verify_type(&ty(&[1, 4, 5]), 1, budget).unwrap();
    assert_eq!(o.mu_d, Some((6, 16)));
    assert!(o.alphas.contains(&(6, 16)));
    assert_eq!(o.status(), Status::Passed);
}

#[test]
fn small_table() {
    let r = reproduce_table(3, 7, 1);
    assert!(r.rows_covered().len() >= 8);
    assert_eq!(r.failures(), 0);
    assert!(r.outcomes.iter().any(|o| o.row == RowKind::T235));

    let even = closed_form(&ty(&[1, 5, 6]));
    let odd = closed_form(&ty(&[1, 5, 7]));
    let want = ClosedForm::Exact(q(44, 16));
    assert!(matches!(even, ClosedFormResult::Known { ref value, .. } if *value == want));
    assert!(matches!(odd, ClosedFormResult::Known { ref value, .. } if *value == want));
}
