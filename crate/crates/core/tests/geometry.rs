use num_traits::Zero;
use proptest::prelude::*;

use qgrass::geometry::{
    build_system, lambda_form, lambda_form_symbolic, pi_map, quantum_pluecker_relations, section_from_plane,
    PlaneCondition, PolySystem, ScheduleKind, SectionsSpec,
};
use qgrass::polyalg::{frac, pluecker_extract, rat, BigRational, BinaryForm, PlueckerVector};
use qgrass::qposet::{leq, rank, QuantumPoset};
use qgrass::ProblemShape;

fn shape(m: usize, p: usize, q: usize) -> ProblemShape {
    ProblemShape::new(m, p, q).unwrap()
}

/// Dropping the variables not below `x` from `Lambda(1,t)` leaves only powers
/// `t^e` with `N - |x| <= e <= N`.
#[test]
fn truncated_pencil_is_divisible() {
    for s in [shape(2, 2, 0), shape(2, 2, 1), shape(3, 2, 1), shape(2, 3, 2)] {
        let lam = lambda_form_symbolic(&s).unwrap();
        let ti = lam.registry().len() - 1;
        let big_n = s.dimension() as u32;
        let indices = s.indices();
        for x in &indices {
            let r = rank(&s, x).unwrap() as u32;
            let mut seen = 0;
            for (mono, _) in lam.terms() {
                let var = mono.exponents().iter().position(|&e| e == 1).unwrap();
                if !leq(&s, &indices[var], x).unwrap() {
                    continue;
                }
                let e = mono.exponents()[ti];
                assert!(e >= big_n - r && e <= big_n, "{s}: t^{e} below {x}");
                seen += 1;
            }
            let poset = QuantumPoset::new(s).unwrap();
            let below = (0..poset.len()).filter(|&i| poset.leq(i, poset.index_of(x).unwrap())).count();
            assert_eq!(seen, below);
        }
    }
}

#[test]
fn flagship_relations_render_exactly() {
    let rendered: Vec<String> =
        quantum_pluecker_relations(&shape(2, 2, 1)).iter().map(qgrass::polyalg::render_poly).collect();
    assert_eq!(
        rendered,
        [
            "z12_0*z34_0 - z13_0*z24_0 + z14_0*z23_0",
            "z12_0*z34_1 - z13_0*z24_1 + z14_0*z23_1 + z23_0*z14_1 - z24_0*z13_1 + z34_0*z12_1",
            "z12_1*z34_1 - z13_1*z24_1 + z14_1*z23_1",
        ]
    );
    assert_eq!(quantum_pluecker_relations(&shape(3, 2, 0)).len(), 5);
}

#[test]
fn boundary_points_lie_on_relations() {
    // pi(A, B, x) of a curve point is again a curve point
    let s = shape(2, 2, 1);
    let lower = s.lower_degree().unwrap();
    let forms = vec![
        [1, 2, 0, -1].map(|v| BinaryForm::constant(rat(v))).to_vec(),
        [0, 1, 3, 2].map(|v| BinaryForm::constant(rat(v))).to_vec(),
    ];
    let x = pluecker_extract(&lower, &forms).unwrap();
    let z = pi_map(&s, &rat(3), &frac(-1, 2), &x).unwrap();
    for r in quantum_pluecker_relations(&s) {
        assert!(r.evaluate(z.coords()).is_zero());
    }
}

#[test]
fn osculating_and_general_planes_agree() {
    // an osculating plane given as a constant matrix produces the same system
    let s = shape(2, 2, 0);
    let ts: Vec<BigRational> = (1..=4).map(rat).collect();
    let osc = build_system(&s, &SectionsSpec::Osculating(ts.clone()), None).unwrap();
    let plane = qgrass::geometry::osculating_matrix(2, 4).unwrap();
    let general: Vec<PlaneCondition> = ts
        .iter()
        .map(|t| (plane.at(&rat(1), t), (rat(1), num_traits::pow(t.clone(), 4))))
        .collect();
    let gen = build_system(&s, &SectionsSpec::General(general), None).unwrap();
    let (a, b) = (osc.reduction().unwrap(), gen.reduction().unwrap());
    assert_eq!(a.num_free(), b.num_free());
    assert_eq!(a.scaled_quadrics().len(), b.scaled_quadrics().len());
    for (f, g) in a.scaled_quadrics().iter().zip(b.scaled_quadrics()) {
        let neg = &qgrass::polyalg::SparsePoly::zero(g.registry()) - &g;
        assert!(*f == g || *f == neg);
    }
}

#[test]
fn system_text_round_trip_keeps_reduction() {
    let s = shape(2, 2, 1);
    let spec = SectionsSpec::from_schedule(&s, &ScheduleKind::Power(6)).unwrap();
    let system = build_system(&s, &spec, None).unwrap();
    let back = PolySystem::parse(&system.render()).unwrap();
    assert_eq!(back.render(), system.render());
    let (a, b) = (system.reduction().unwrap(), back.reduction().unwrap());
    assert_eq!(a.scaled_quadrics(), b.scaled_quadrics());
    assert_eq!(a.scales, b.scales);
}

fn small_shape() -> impl Strategy<Value = ProblemShape> {
    (2usize..=3, 2usize..=3, 0usize..=1).prop_map(|(m, p, q)| shape(m, p, q))
}

fn curve(s: ProblemShape) -> impl Strategy<Value = (ProblemShape, Vec<Vec<BinaryForm>>)> {
    let (p, n, q) = (s.p(), s.n(), s.q());
    (proptest::collection::vec(0..p, q), proptest::collection::vec(-4i64..=4, p * n * (q + 1))).prop_map(
        move |(bumps, values)| {
            let mut degrees = vec![0; p];
            for b in bumps {
                degrees[b] += 1;
            }
            let mut it = values.into_iter();
            let forms = degrees
                .iter()
                .map(|&d| {
                    (0..n)
                        .map(|_| BinaryForm::new((0..=d).map(|_| rat(it.next().unwrap())).collect::<Vec<_>>()))
                        .collect()
                })
                .collect();
            (s, forms)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn extracted_curves_satisfy_relations((s, forms) in small_shape().prop_flat_map(curve)) {
        if let Ok(z) = pluecker_extract(&s, &forms) {
            for r in quantum_pluecker_relations(&s) {
                prop_assert!(r.evaluate(z.coords()).is_zero());
            }
        }
    }

    /// The section of the osculating plane at `t = u`, taken at `(1, u^n)`, is
    /// a multiple of the pencil at `u`.
    #[test]
    fn pencil_at_points_is_osculating_section(k in 1i64..40, den in 1i64..6) {
        let s = shape(2, 2, 1);
        let u = frac(k, den);
        let plane = qgrass::geometry::osculating_matrix(2, 4).unwrap().at(&rat(1), &u);
        let from_plane = section_from_plane(&s, &plane, &rat(1), &num_traits::pow(u.clone(), 4)).unwrap();
        let pencil = lambda_form(&s, &rat(1), &u).unwrap();
        let (a, _) = from_plane.form.linear_parts().unwrap();
        let (b, _) = pencil.form.linear_parts().unwrap();
        let ratio = &a[0] / &b[0];
        prop_assert!(a.iter().zip(&b).all(|(x, y)| *x == y * &ratio));
    }

    #[test]
    fn lifted_points_satisfy_sections(values in proptest::collection::vec(-20i64..=20, 3)) {
        let s = shape(2, 2, 1);
        let spec = SectionsSpec::from_schedule(&s, &ScheduleKind::Power(1)).unwrap();
        let system = build_system(&s, &spec, None).unwrap();
        let red = system.reduction().unwrap();
        let x: Vec<BigRational> = values.iter().map(|&v| rat(v)).collect();
        let z = red.lift_point(&x);
        for section in &system.sections {
            prop_assert!(section.form.evaluate(&z).is_zero());
        }
        let patch = s.position(&system.patch).unwrap();
        prop_assert_eq!(z[patch].clone(), rat(1));
    }

    #[test]
    fn boundary_map_is_linear_in_a_and_b(a in -5i64..=5, b in -5i64..=5, c in 1i64..=4) {
        prop_assume!(a != 0 || b != 0);
        let s = shape(3, 2, 1);
        let lower = s.lower_degree().unwrap();
        let x = PlueckerVector::new(lower, (1..=lower.num_coordinates() as i64).map(rat).collect()).unwrap();
        let z = pi_map(&s, &rat(a), &rat(b), &x).unwrap();
        let zc = pi_map(&s, &rat(a * c), &rat(b * c), &x).unwrap();
        prop_assert!(z.coords().iter().zip(zc.coords()).all(|(u, v)| u * rat(c) == *v));
    }
}
