use super::*;
use crate::weil::{is_weil_root_locus, FactorShape, FieldParams, WeilCoeffs};

fn coeffs(q: u64, s: i64, t: i64, u: i64) -> WeilCoeffs {
    WeilCoeffs::new(FieldParams::from_q(q).unwrap(), s, t, u)
}

fn profile(q: u64, s: i64, t: i64, u: i64) -> Profile {
    Profile::new(coeffs(q, s, t, u)).unwrap()
}

/// Profile whose real Weil polynomial is `x^3 + a x^2 + b x + c`.
fn from_real(q: u64, a: i64, b: i64, c: i64) -> Profile {
    let qi = q as i64;
    profile(q, a, b + 3 * qi, c + 2 * qi * a)
}

/// Profile with `g = (x + alpha)(x + beta)(x + gamma)`.
fn from_linear(q: u64, alpha: i64, beta: i64, gamma: i64) -> Profile {
    from_real(
        q,
        alpha + beta + gamma,
        alpha * beta + alpha * gamma + beta * gamma,
        alpha * beta * gamma,
    )
}

fn from_lin_quad(q: u64, alpha: i64, delta: i64, epsilon: i64) -> Profile {
    from_real(q, alpha + delta, alpha * delta + epsilon, alpha * epsilon)
}

fn ids(v: &Verdict) -> Vec<&'static str> {
    v.fired.iter().map(|r| r.as_str()).collect()
}

fn engine() -> RuleEngine {
    RuleEngine::default()
}

#[test]
fn registry_is_sorted_unique_and_complete() {
    let labels: Vec<_> = REGISTRY.iter().map(|r| r.id).collect();
    assert_eq!(labels.len(), 24);
    let mut sorted = labels.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted, labels);
    assert!("9.9.9.9".parse::<RuleId>().is_err());
}

#[test]
fn classify_reference_labels() {
    let v = engine().classify(&profile(25, 5, -24, -245));
    assert!(ids(&v).contains(&"1.N.N.0"));
    assert!(v.obstructed);
    let v = engine().classify(&profile(23, 2, 4, 92));
    assert!(v.fired.is_empty(), "{v:?}");
    assert!(!v.obstructed);
}

#[test]
fn classify_cube_of_elliptic() {
    let p = from_linear(3, 3, 3, 3);
    assert!(ids(&engine().classify(&p)).contains(&"N.3.N.0"));
}

#[test]
fn point_count_examples() {
    // s = 4 > q + 1 over F_2, with any completing (t, u)
    let f = FieldParams::from_q(2).unwrap();
    let mut found = 0;
    for t in -30..=30 {
        for u in -60..=60 {
            let c = WeilCoeffs::new(f, 4, t, u);
            if is_weil_root_locus(&c) {
                assert!(point_count_obstruction(&Profile::new(c).unwrap()));
                found += 1;
            }
        }
    }
    assert!(found > 0);
    assert!(!point_count_obstruction(&profile(23, 2, 4, 92)));
}

#[test]
fn double_cover_bound_only_for_small_fields() {
    // over F_49 the count 1 + 49 + 15 = 65 stays below 2 * 50
    let f = FieldParams::from_q(49).unwrap();
    for t in -700..=700 {
        let c = WeilCoeffs::new(f, -15, t, 0);
        if is_weil_root_locus(&c) {
            assert!(!point_count_obstruction(&Profile::new(c).unwrap()));
        }
    }
}

#[test]
fn resultant_one_examples() {
    // LinearQuadratic(0, 0, 1) is not a real Weil polynomial (x^2 + 1), so
    // exercise the closed forms through shapes built from valid cubics.
    let p = from_linear(5, 0, 1, 1);
    assert!(resultant_one_obstruction(&p));
    let p = from_linear(5, 0, 2, 4);
    assert!(!resultant_one_obstruction(&p));
    let p = from_linear(7, 2, 2, 2);
    assert!(!resultant_one_obstruction(&p));
    // (x + 1)(x^2 - 2) has alpha^2 - alpha delta + epsilon = 1 - 0 - 2 = -1
    let p = from_lin_quad(5, 1, 0, -2);
    assert!(resultant_one_obstruction(&p));
}

#[test]
fn type_obstruction_examples() {
    // g = (x - 6)(x^2 + x - 5) over F_9; h0(6) = 37
    let p = from_real(9, -5, -11, 30);
    assert!(type_obstruction(&p, TypeEvaluation::SplitRoot));
    assert!(ids(&engine().classify(&p)).contains(&"N.N.N.2"));
    // no factor x ± 6
    let p = from_real(9, 0, -6, 1);
    assert!(!type_obstruction(&p, TypeEvaluation::SplitRoot));
    // nonsquare field: gate
    let p = from_real(7, 0, -6, 1);
    assert!(!type_obstruction(&p, TypeEvaluation::SplitRoot));
    // h0 = x + 1 over F_9 is ordinary: type [6, 6, 1] ~ (x+6)^2 (x+1), h0(-6) = -5
    let p = from_linear(9, 1, 6, 6);
    assert!(type_obstruction(&p, TypeEvaluation::SplitRoot));
    // h0(+6) = 7 is also squarefree
    assert!(type_obstruction(&p, TypeEvaluation::PlusRoot));
    // h0 = x + 3 is supersingular over F_9
    let p = from_linear(9, 3, 6, 6);
    assert!(!type_obstruction(&p, TypeEvaluation::SplitRoot));
    // (x + 6)^3: h0 constant
    let p = from_linear(9, 6, 6, 6);
    assert!(!type_obstruction(&p, TypeEvaluation::SplitRoot));
}

#[test]
fn discriminant_examples() {
    assert!(discriminant_obstruction(&from_linear(3, 3, 3, 3)));
    assert!(discriminant_obstruction(&from_linear(4, 4, 4, 4)));
    assert!(discriminant_obstruction(&from_linear(7, 1, 1, 1)));
    assert!(!discriminant_obstruction(&from_linear(7, 2, 2, 2)));
    assert!(!discriminant_obstruction(&from_linear(7, 1, 1, 2)));
}

#[test]
fn supersingular_char2_examples() {
    assert!(char2_supersingular_obstruction(&profile(4, 0, 0, 0)));
    let p = profile(2, 0, 0, 2);
    assert_eq!(p.p_rank, 0);
    assert!(!char2_supersingular_obstruction(&p));
    let v = engine().classify(&p);
    assert!(v.advisory.is_some());
    assert!(!ids(&v).contains(&"0.N.0.0"));
    assert!(!char2_supersingular_obstruction(&profile(9, 0, 0, 0)));
}

#[test]
fn parity_examples() {
    assert!(parity_rule(&profile(25, 5, -24, -245)));
    assert!(!parity_rule(&profile(23, 2, 4, 92)));
    let f = FieldParams::from_q(4).unwrap();
    let p = Profile::new_unchecked(WeilCoeffs::new(f, 1, 1, 0));
    assert!(parity_rule(&p));
}

#[test]
fn table_rule_examples() {
    let e = engine();
    // q = 5: g = x (x^2 + x - 3), p-rank 2
    let p = from_lin_quad(5, 0, 1, -3);
    assert_eq!(p.p_rank, 2);
    assert!(e.conjectured_table_rule("1.2.2.0", &p).unwrap());
    let p = from_linear(7, -2, -2, -1);
    assert!(e.conjectured_table_rule("1.3.N.0", &p).unwrap());
    // q = 4: (x - 1) x (x + 1) has 2-rank 2
    let p = from_linear(4, -1, 0, 1);
    assert_eq!(p.p_rank, 2);
    assert!(e.conjectured_table_rule("0.3.2.0", &p).unwrap());
    assert!(e.conjectured_table_rule("X.Y.Z.W", &p).is_err());
}

#[test]
fn table_rules_respect_gates() {
    let e = engine();
    // same type as the 1.3.N.0 example but over an even field
    let p = from_linear(8, -2, -2, -1);
    assert!(!e.conjectured_table_rule("1.3.N.0", &p).unwrap());
    // 0.3.2.0 needs 2-rank 2: (0, 1, 2) over F_4 has 2-rank 1
    let p = from_linear(4, 0, 1, 2);
    assert_eq!(p.p_rank, 1);
    assert!(!e.conjectured_table_rule("0.3.2.0", &p).unwrap());
}

#[test]
fn pvq_rules() {
    let e = engine();
    // q = 9: p v_p(q) = 6. 1.3.2.0: gamma = 6 and beta - alpha = 2
    let p = from_linear(9, -1, 1, 6);
    assert_eq!(p.p_rank, 2);
    assert!(e.conjectured_table_rule("1.3.2.0", &p).unwrap());
    // N.3.0.1: (beta, gamma) = (6, 6)
    let p = from_linear(9, 3, 6, 6);
    assert_eq!(p.p_rank, 0);
    assert!(e.conjectured_table_rule("N.3.0.1", &p).unwrap());
    // q = 8: p v_p(q) = 6 but floor(2 sqrt 8) = 5
    let p = from_linear(8, -4, 2, 2);
    assert_eq!(p.p_rank, 0);
    let f = p.coeffs.field;
    assert_eq!((f.p(), f.r()), (2, 3));
    assert_eq!(p_times_vp(&p, PvqReading::PTimesR), 6);
    assert_eq!(p_times_vp(&p, PvqReading::FloorTwoSqrtQ), 5);
    assert!(e.conjectured_table_rule("N.3.0.0", &p).unwrap());
    let mut interp = Interpretation::default();
    interp.apply("N.3.0.0=floor-two-sqrt-q").unwrap();
    assert_eq!(interp.pvq("N.3.0.0"), PvqReading::FloorTwoSqrtQ);
    assert_eq!(interp.pvq("N.3.0.1"), PvqReading::PTimesR);
}

#[test]
fn interpretation_parsing() {
    let mut i = Interpretation::default();
    i.apply("N.N.N.2=plus-root").unwrap();
    assert_eq!(i.type_evaluation, TypeEvaluation::PlusRoot);
    i.apply("factor-count=distinct").unwrap();
    assert_eq!(i.factor_count, FactorCountConvention::Distinct);
    assert!(i.apply("1.N.N.0=p-times-r").is_err());
    assert!(i.apply("N.N.N.2").is_err());
    assert!(i.apply("N.N.N.2=sideways").is_err());
}

#[test]
fn zero_one_overlap_with_resultant() {
    // gamma - alpha = 1 over F_2 with 2-rank 1 fires both rules
    let e = engine();
    for (a, b, c) in [(0, 0, 1), (0, 1, 1), (-1, -1, 0), (-1, 0, 0)] {
        let p = from_linear(2, a, b, c);
        if e.evaluate("0.3.1.0".parse().unwrap(), &p) {
            assert!(resultant_one_obstruction(&p));
        }
    }
}

#[test]
fn catalog_lists_every_rule() {
    let c = catalog();
    assert_eq!(c.len(), 24);
    assert_eq!(c.iter().filter(|e| e.provenance == Provenance::Proved).count(), 5);
    assert_eq!(c.iter().filter(|e| e.provenance == Provenance::Partial).count(), 2);
    let json = serde_json::to_string(&c).unwrap();
    assert!(json.contains("\"0.N.N.0\""));
}

#[test]
fn shapes_used_by_helpers() {
    assert_eq!(
        from_lin_quad(5, 0, 1, -3).shape,
        FactorShape::LinearQuadratic { alpha: 0, delta: 1, epsilon: -3 }
    );
}
