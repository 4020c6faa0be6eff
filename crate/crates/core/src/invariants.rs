//! Property-based invariants over random parameter sets.

use crate::grid::Execution;
use crate::sweep::{self, SweepSpec};
use crate::zeros::interlacing_check;
use crate::{
    find_zeros, q_gamma, q_number, NormalizedFamily, Property, QBase, QmlParams, QmlSeries, RadiusQuery, RadiusSolver,
    SeriesKind, Tolerance, ZeroKind, ZeroOptions,
};
use proptest::prelude::*;

const TIGHT: Tolerance = Tolerance::Absolute(1e-16);

fn params() -> impl Strategy<Value = QmlParams> {
    (0.02f64..0.35, 0.0f64..2.0, 0.3f64..3.0)
        .prop_map(|(q, g, s)| QmlParams::new(q, g, s).unwrap())
        .prop_filter("reality condition", |p| p.reality().holds)
}

fn eval(kind: SeriesKind, p: &QmlParams, z: f64, d: u32) -> f64 {
    QmlSeries::new(kind, p).eval(z, d, TIGHT).unwrap().value
}

fn close(a: f64, b: f64, scale: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * scale.max(a.abs()).max(b.abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn q_gamma_recurrence(q in 0.01f64..0.95, x in 0.1f64..6.0) {
        let b = QBase::new(q).unwrap();
        let lhs = q_gamma(x + 1.0, b).unwrap();
        let rhs = q_number(x, b) * q_gamma(x, b).unwrap();
        prop_assert!(close(lhs, rhs, 0.0, 1e-11), "{lhs} vs {rhs}");
    }

    #[test]
    fn derivative_matches_finite_difference(p in params(), t in 0.05f64..1.5) {
        let lam = QmlSeries::new(SeriesKind::Lambda, &p);
        let eps1 = find_zeros(ZeroKind::Epsilon, &p, 1, 1e-13).unwrap().zeros[0];
        let z = t * eps1;
        let h = 1e-5 * eps1;
        let fd = (lam.eval(z + h, 0, TIGHT).unwrap().value - lam.eval(z - h, 0, TIGHT).unwrap().value) / (2.0 * h);
        let exact = lam.eval(z, 1, TIGHT).unwrap().value;
        prop_assert!(close(fd, exact, 1.0 / eps1, 1e-6), "{fd} vs {exact}");
    }

    #[test]
    fn companions_are_wired_to_lambda(p in params(), t in 0.05f64..1.5) {
        let z = t * find_zeros(ZeroKind::Epsilon, &p, 1, 1e-13).unwrap().zeros[0];
        let (lam, dlam) = (eval(SeriesKind::Lambda, &p, z, 0), eval(SeriesKind::Lambda, &p, z, 1));
        let phi = eval(SeriesKind::PhiSmall, &p, z, 0);
        let scale = lam.abs() + z * dlam.abs();
        prop_assert!(close(phi, lam + z * dlam, scale, 1e-12));
        let reduced = eval(SeriesKind::PsiPrimeReduced, &p, z, 0);
        prop_assert!(close(reduced, z * dlam + (p.gamma + 1.0) * lam, scale * (p.gamma + 2.0), 1e-12));
        let big = eval(SeriesKind::BigPhi, &p, z, 0);
        let dphi = eval(SeriesKind::PhiSmall, &p, z, 1);
        prop_assert!(close(big, phi + z * dphi, phi.abs() + z * dphi.abs(), 1e-12));
        let x = z * z;
        let varphi = eval(SeriesKind::VarPhi, &p, x, 0);
        prop_assert!(close(varphi, lam + 0.5 * z * dlam, scale, 1e-12));
        let dvarphi = eval(SeriesKind::VarPhi, &p, x, 1);
        let psi = eval(SeriesKind::PsiSmall, &p, x, 0);
        prop_assert!(close(psi, varphi + x * dvarphi, varphi.abs() + x * dvarphi.abs(), 1e-12));
    }

    #[test]
    fn tail_bound_covers_truncation(p in params(), z in 0.1f64..4.0, coarse in 1e-9f64..1e-3) {
        let lam = QmlSeries::new(SeriesKind::Lambda, &p);
        let rough = lam.eval(z, 0, Tolerance::Absolute(coarse)).unwrap();
        let fine = lam.eval(z, 0, TIGHT).unwrap();
        prop_assert!(rough.tail_bound <= coarse);
        let slack = 1e-14 * fine.value.abs().max(1.0);
        prop_assert!((rough.value - fine.value).abs() <= rough.tail_bound + fine.tail_bound + slack);
    }

    #[test]
    fn epsilon_and_xi_interlace(p in params()) {
        let eps = find_zeros(ZeroKind::Epsilon, &p, 8, 1e-13).unwrap();
        let xi = find_zeros(ZeroKind::Xi, &p, 8, 1e-13).unwrap();
        let il = interlacing_check(&eps, &xi).unwrap();
        prop_assert!(il.interlaced, "{:?}", il.first_violation);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn radius_decreases_in_alpha(
        p in params(),
        a in 0.0f64..0.9,
        gap in 0.01f64..0.09,
        fam in prop::sample::select(NormalizedFamily::ALL.to_vec()),
        prop_kind in prop::sample::select(Property::ALL.to_vec()),
    ) {
        let mut s = RadiusSolver::new(p, ZeroOptions::default()).unwrap();
        let r1 = s.radius(RadiusQuery::new(fam, prop_kind, a).unwrap()).unwrap().value;
        let r2 = s.radius(RadiusQuery::new(fam, prop_kind, a + gap).unwrap()).unwrap().value;
        prop_assert!(r2 < r1, "{fam:?} {prop_kind:?}: r({}) = {r2} >= r({a}) = {r1}", a + gap);
    }

    #[test]
    fn sweep_order_is_independent_of_execution(
        qs in prop::collection::vec(0.05f64..0.3, 1..3),
        gammas in prop::collection::vec(0.0f64..2.0, 1..3),
        alphas in prop::collection::vec(0.0f64..0.9, 1..3),
    ) {
        let spec = SweepSpec {
            q_values: qs,
            gamma_values: gammas,
            sigma_values: vec![1.0],
            alpha_values: alphas,
            ..SweepSpec::default()
        };
        let par = sweep::run(&spec, Execution::Parallel, false, 1e-12).unwrap();
        let seq = sweep::run(&spec, Execution::Sequential, false, 1e-12).unwrap();
        prop_assert_eq!(par.len(), spec.row_count());
        let (mut a, mut b) = (Vec::new(), Vec::new());
        sweep::write_csv(&mut a, &par).unwrap();
        sweep::write_csv(&mut b, &seq).unwrap();
        prop_assert_eq!(a, b);
    }
}
