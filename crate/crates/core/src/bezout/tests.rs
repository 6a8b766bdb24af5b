use super::*;
use crate::geometry::{build_recipe, named, standard_k_config, KConfigType};
use crate::linsys::dim_linear_system;

fn pt(a: i64, b: i64, c: i64) -> ProjPoint {
    ProjPoint::from_ints(a, b, c)
}

fn is_empty_by_rank(z: &FatPointScheme, d: u32) -> bool {
    dim_linear_system(&LinearSystemQuery::new(z.clone(), d)).dimension == 0
}

#[test]
fn mu_formula() {
    assert_eq!(mu_fixed_multiplicity(&[1, 1], 1).unwrap(), 1);
    assert_eq!(mu_fixed_multiplicity(&[8; 6], 21).unwrap(), 6);
    assert_eq!(mu_fixed_multiplicity(&[3, 3, 3], 9).unwrap(), 0);
    assert!(mu_fixed_multiplicity(&[4], 1).is_err());
}

#[test]
fn reduce_simple_cases() {
    let z = FatPointScheme::uniform(&[pt(1, 0, 0), pt(1, 1, 0), pt(1, 2, 0)], 1).unwrap();
    let l = CurveComponent::line(named::l1(), 1, "L");
    let (r, d) = reduce_by_component(&z, 2, &l, 1).unwrap();
    assert!(r.is_empty());
    assert_eq!(d, 1);
    let (r, _) = reduce_by_component(&z, 2, &l, 2).unwrap();
    assert!(r.is_empty());
    assert!(reduce_by_component(&z, 1, &l, 2).is_err());
}

#[test]
fn reduce_five_six_first_line() {
    let t = KConfigType::new(vec![1, 5, 6]).unwrap();
    let z = FatPointScheme::uniform(&standard_k_config(&t), 8).unwrap();
    let l = CurveComponent::line(named::l1(), 1, "L1");
    let (r, d) = reduce_by_component(&z, 21, &l, 5).unwrap();
    assert_eq!(d, 16);
    for i in 1..=6 {
        assert_eq!(r.multiplicity(&named::p(i)), 3);
    }
    assert_eq!(r.multiplicity(&named::q(1)), 8);
    assert_eq!(r.multiplicity(&named::r()), 8);
}

#[test]
fn reduction_is_additive() {
    let t = KConfigType::new(vec![2, 3, 4]).unwrap();
    let z = FatPointScheme::uniform(&standard_k_config(&t), 3).unwrap();
    let l = CurveComponent::line(named::l1(), 1, "L1");
    for (k, j) in [(1, 1), (1, 2), (2, 3)] {
        let (a, da) = reduce_by_component(&z, 10, &l, k).unwrap();
        let (a, da) = reduce_by_component(&a, da, &l, j).unwrap();
        let (b, db) = reduce_by_component(&z, 10, &l, k + j).unwrap();
        assert_eq!((a, da), (b, db));
    }
}

#[test]
fn bezout_checks() {
    let z = FatPointScheme::uniform(&[pt(1, 0, 0), pt(1, 1, 0)], 1).unwrap();
    let line = PolyCurve::new(crate::geometry::HomogPoly::from_line(&named::l1())).unwrap();
    let step = bezout_fixed_check(&z, 1, &line).unwrap();
    assert_eq!(
        step.justification,
        Justification::BezoutExcess {
            intersection_count: 2,
            degree_product: 1
        }
    );
    // x0 x2 - x1^2 through three of its points
    let conic = PolyCurve::new(
        crate::geometry::HomogPoly::new(
            2,
            [0, 0, 1, -1, 0, 0].map(num_bigint::BigInt::from).to_vec(),
        )
        .unwrap(),
    )
    .unwrap();
    let three = FatPointScheme::uniform(&[pt(1, 0, 0), pt(1, 1, 1), pt(1, 2, 4)], 1).unwrap();
    assert!(bezout_fixed_check(&three, 2, &conic).is_none());
}

#[test]
fn bezout_check_two_four() {
    // the degree-2 curve of type (1,2,4) against 3X in degree 6
    let t = KConfigType::new(vec![1, 2, 4]).unwrap();
    let recipe = build_recipe(&t).unwrap();
    let c = recipe.components.iter().find(|c| c.degree() == 2).unwrap();
    let Shape::Curve(curve) = &c.shape else {
        panic!()
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
}

#[test]
fn two_points_in_degree_zero() {
    let z = FatPointScheme::uniform(&[pt(1, 0, 0), pt(1, 1, 0)], 1).unwrap();
    let c = emptiness_certificate(&z, 0, &[]).unwrap();
    assert!(matches!(
        c.terminal,
        TerminalReason::PointExceedsDegree { .. }
    ));
    assert!(verify_certificate(&c));
}

#[test]
fn two_lines_two_points_each() {
    let z =
        FatPointScheme::uniform(&[pt(1, 0, 0), pt(1, 1, 0), pt(1, 0, 1), pt(1, 1, 1)], 1).unwrap();
    let c = emptiness_certificate(&z, 1, &[]).unwrap();
    assert_eq!(c.steps.len(), 1);
    assert!(matches!(c.terminal, TerminalReason::DegreeExhausted { .. }));
    assert!(verify_certificate(&c));
    assert!(is_empty_by_rank(&z, 1));
}

#[test]
fn five_six_certificate_with_hints() {
    let t = KConfigType::new(vec![1, 5, 6]).unwrap();
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
    assert!(is_empty_by_rank(&z, 21));
}

#[test]
fn inconclusive_when_nonempty() {
    let t = KConfigType::new(vec![2, 3, 4]).unwrap();
    let z = FatPointScheme::uniform(&standard_k_config(&t), 6).unwrap();
    let err = emptiness_certificate(&z, 17, &[]).unwrap_err();
    assert!(err.residual_dimension.unwrap() > 0);
}

#[test]
fn tampering_is_detected() {
    let t = KConfigType::new(vec![3, 4, 5]).unwrap();
    let z = FatPointScheme::uniform(&standard_k_config(&t), 2).unwrap();
    let c = emptiness_certificate(&z, 5, &[]).unwrap();
    assert!(verify_certificate(&c));

    let mut bumped = c.clone();
    bumped.steps[0].forced_multiplicity += 1;
    assert!(!verify_certificate(&bumped));

    let mut wrong_reason = c.clone();
    wrong_reason.terminal = TerminalReason::PointExceedsDegree {
        point: pt(1, 0, 0),
        multiplicity: 9,
    };
    assert!(!verify_certificate(&wrong_reason));
}

#[test]
fn json_roundtrip() {
    let t = KConfigType::new(vec![2, 3, 4]).unwrap();
    let z = FatPointScheme::uniform(&standard_k_config(&t), 6).unwrap();
    let hints: Vec<CurveComponent> = build_recipe(&t)
        .unwrap()
        .components
        .into_iter()
        .map(|c| CurveComponent {
            multiplicity: 1,
            ..c
        })
        .collect();
    let c = emptiness_certificate(&z, 16, &hints).unwrap();
    let v = certificate_to_json(&c);
    let back = certificate_from_json(&v).unwrap();
    assert_eq!(back, c);
    assert!(verify_certificate(&back));
    assert_eq!(certificate_to_json(&back).to_string(), v.to_string());
}

#[test]
fn forced_line_reduction_preserves_dimension() {
    let t = KConfigType::new(vec![2, 3, 5]).unwrap();
    let pts = standard_k_config(&t);
    for (m, d) in [(2u32, 6u32), (3, 9), (4, 11), (6, 17)] {
        let z = FatPointScheme::uniform(&pts, m).unwrap();
        let full = dim_linear_system(&LinearSystemQuery::new(z.clone(), d)).dimension;
        match forced_line_reduction(&z, d) {
            Some((rz, rd, _)) => {
                assert_eq!(
                    dim_linear_system(&LinearSystemQuery::new(rz, rd)).dimension,
                    full
                )
            }
            None => assert_eq!(full, 0),
        }
    }
}
