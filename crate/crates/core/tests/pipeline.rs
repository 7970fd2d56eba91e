use torusknot::chebyshev::{divided_difference, ChebT};
use torusknot::exactpoly::{int, rat, Rational};
use torusknot::knotforge::{
    certify_a, crossing_oracle, crossing_oracle_pairs, degrees, solve_deformation, synthesize,
    x_poly, CnBasis, NodeSet, SynthOptions, DEFAULT_GRID,
};

fn fixture_y() -> ChebT {
    let mut c = vec![Rational::from_integer(0.into()); 15];
    for (k, v) in [
        (0, int(56)),
        (2, int(-100)),
        (4, int(85)),
        (6, int(-64)),
        (8, int(42)),
        (10, int(-23)),
        (12, int(10)),
        (14, rat(-27, 10)),
    ] {
        c[k] = v;
    }
    ChebT::new(c)
}

#[test]
fn sweep_to_21() {
    for n in (1..=21).step_by(2) {
        let s = synthesize(n, &SynthOptions::default()).unwrap();
        let (_, dy, dz) = degrees(n);
        assert_eq!(s.curve.plane.y.degree(), Some(dy), "N = {n}");
        assert_eq!(s.curve.z.degree(), Some(dz), "N = {n}");
        assert_eq!(s.report.crossings.len(), n);
        assert!(s.report.ordering_ok && s.report.signs_alternate);
        for (i, c) in s.report.crossings.iter().enumerate() {
            assert_eq!(c.sign, if i % 2 == 0 { -1 } else { 1 });
        }
        let a = divided_difference(&s.curve.plane.y).to_poly();
        assert!(certify_a(&a, n));
        // The default ε = 1/4 is accepted at the first attempt throughout this range.
        assert_eq!(s.halvings, 0, "N = {n}");
    }
}

#[test]
fn degree_examples() {
    assert_eq!(degrees(3), (3, 4, 5));
    assert_eq!(degrees(9), (3, 14, 13));
    let s = synthesize(9, &SynthOptions::default()).unwrap();
    assert_eq!(s.curve.plane.y.degree(), Some(14));
    assert_eq!(s.curve.z.degree(), Some(13));
}

#[test]
fn oracle_matches_certified_count() {
    for n in (1..=11).step_by(2) {
        let s = synthesize(n, &SynthOptions::default()).unwrap();
        let pairs = crossing_oracle_pairs(&x_poly(), &s.curve.plane.y.to_poly(), DEFAULT_GRID);
        assert_eq!(pairs.len(), n, "N = {n}");
        for ((s_o, t_o), c) in pairs.iter().zip(&s.report.crossings) {
            assert!(
                (s_o - c.s).abs() < 1e-6 && (t_o - c.t).abs() < 1e-6,
                "N = {n}"
            );
        }
    }
}

#[test]
fn n9_fixture_has_nine_crossings() {
    let y = fixture_y();
    let r = divided_difference(&y).to_poly();
    let rep = torusknot::knotforge::crossings(&r, 9).unwrap();
    assert!(rep.min_ordering_gap > 1e-8);
    assert_eq!(crossing_oracle(&x_poly(), &y.to_poly(), DEFAULT_GRID), 9);
    // Two of the nine abscissae lie in (1, 2), so the strict (-1, 1) certificate used for
    // planted curves does not apply to this example.
    assert!(!certify_a(&r, 9));
}

/// Solved `a_k(ε)` shrink like `ε^{2(n-k)}` as the nodes contract.
#[test]
fn deformation_coefficients_scale() {
    for n in 1..=6 {
        let basis = CnBasis::build(n).unwrap();
        let solve = |e: Rational| {
            solve_deformation(&basis, &NodeSet::uniform(n, &e).unwrap())
                .unwrap()
                .a
        };
        let a8 = solve(rat(1, 8));
        let a16 = solve(rat(1, 16));
        for k in 0..n {
            let bound = 1.5 / f64::powi(2.0, 2 * (n - k) as i32);
            let ratio = torusknot::exactpoly::to_f64(&(&a16[k] / &a8[k])).abs();
            assert!(
                ratio <= bound,
                "n = {n}, k = {k}: ratio {ratio}, bound {bound}"
            );
        }
    }
}
