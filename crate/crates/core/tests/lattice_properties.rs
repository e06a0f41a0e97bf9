use num_integer::Integer;
use proptest::prelude::*;
use sesh_core::curves::{curve_class, intersect_bundle, sigma_degree};
use sesh_core::{BigInt, CurveClass, NSClass, SurfaceContext};

fn bi(n: i64) -> BigInt {
    BigInt::from(n)
}

fn coprime_pair(max: i64) -> impl Strategy<Value = (i64, i64)> {
    (-max..=max, -max..=max).prop_filter("coprime", |(a, b)| a.gcd(b) == 1)
}

fn class(max: i64) -> impl Strategy<Value = (i64, i64, i64)> {
    (-max..=max, -max..=max, -max..=max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn determinant_matches_self_intersection(d in 1i64..60, (a1, a2, a3) in class(200)) {
        let ctx = SurfaceContext::new(d).unwrap();
        let l = NSClass::new(a1, a2, a3);
        let m = ctx.matrix_of(&l);
        prop_assert_eq!(m.det_times_four(), 2 * bi(d) * ctx.self_intersection(&l));
        prop_assert_eq!(ctx.class_of_matrix(&m).unwrap(), l);
    }

    #[test]
    fn delta_basis_round_trips(d in 1i64..60, (a1, a2, a3) in class(200)) {
        let ctx = SurfaceContext::new(d).unwrap();
        let l = NSClass::new(a1, a2, a3);
        let (c1, c2, c3) = ctx.to_delta_basis(&l);
        prop_assert_eq!(ctx.from_delta_basis(c1, c2, c3), l);
    }

    #[test]
    fn pairing_is_symmetric_and_bilinear(d in 1i64..40, x in class(50), y in class(50), z in class(50), k in -9i64..=9) {
        let ctx = SurfaceContext::new(d).unwrap();
        let (x, y, z) = (NSClass::new(x.0, x.1, x.2), NSClass::new(y.0, y.1, y.2), NSClass::new(z.0, z.1, z.2));
        prop_assert_eq!(ctx.intersect(&x, &y), ctx.intersect(&y, &x));
        let lhs = ctx.intersect(&(&x.scale(&bi(k)) + &y), &z);
        prop_assert_eq!(lhs, bi(k) * ctx.intersect(&x, &z) + ctx.intersect(&y, &z));
    }

    #[test]
    fn ampleness_is_positive_definiteness(d in 1i64..40, (a1, a2, a3) in class(40)) {
        let ctx = SurfaceContext::new(d).unwrap();
        let l = NSClass::new(a1, a2, a3);
        prop_assert_eq!(ctx.is_ample(&l), ctx.matrix_of(&l).is_positive_definite());
        prop_assert_eq!(ctx.is_ample(&l), ctx.ampleness_failure(&l).is_none());
    }

    #[test]
    fn curve_classes_have_zero_square(d in 1i64..60, (a, b) in coprime_pair(60)) {
        let ctx = SurfaceContext::new(d).unwrap();
        let n = curve_class(&ctx, &bi(a), &bi(b)).unwrap();
        prop_assert_eq!(ctx.self_intersection(&n), bi(0));
        prop_assert_eq!(sigma_degree(&ctx, &bi(a), &bi(b)).unwrap(), bi(a).gcd(&bi(d)));
        let c = CurveClass::new(&ctx, a, b).unwrap();
        prop_assert_eq!(c.ns_class(&ctx), n);
    }

    #[test]
    fn distinct_curves_meet_positively(d in 1i64..40, p in coprime_pair(30), q in coprime_pair(30)) {
        let ctx = SurfaceContext::new(d).unwrap();
        let np = curve_class(&ctx, &bi(p.0), &bi(p.1)).unwrap();
        let nq = curve_class(&ctx, &bi(q.0), &bi(q.1)).unwrap();
        let same = p == q || p == (-q.0, -q.1);
        let meet = ctx.intersect(&np, &nq);
        prop_assert!(meet >= bi(0));
        prop_assert_eq!(meet == bi(0), same);
    }

    #[test]
    fn bundle_intersection_agrees_with_pairing(d in 1i64..40, (a1, a2, a3) in class(60), (a, b) in coprime_pair(40)) {
        let ctx = SurfaceContext::new(d).unwrap();
        let l = NSClass::new(a1, a2, a3);
        let n = curve_class(&ctx, &bi(a), &bi(b)).unwrap();
        let via_form = intersect_bundle(&ctx, &l, &bi(a), &bi(b)).unwrap();
        prop_assert_eq!(&via_form, &ctx.intersect(&l, &n));
        if ctx.is_ample(&l) {
            prop_assert!(via_form > bi(0));
        }
    }
}

#[test]
fn ampleness_sweep_matches_definiteness() {
    for d in 1..=6i64 {
        let ctx = SurfaceContext::new(d).unwrap();
        for a1 in -6..=6 {
            for a2 in -6..=6 {
                for a3 in -6..=6 {
                    let l = NSClass::new(a1, a2, a3);
                    assert_eq!(ctx.is_ample(&l), ctx.matrix_of(&l).is_positive_definite(), "{l}");
                    let reason = ctx.ampleness_failure(&l);
                    if a1 <= 0 {
                        assert_eq!(reason, Some("a1 > 0"));
                    } else if a1 * a2 - d * a3 * a3 <= 0 {
                        assert_eq!(reason, Some("a1*a2 - d*a3^2 > 0"));
                    }
                }
            }
        }
    }
}

#[test]
fn degenerate_inputs_are_rejected() {
    let ctx = SurfaceContext::new(5).unwrap();
    assert!(SurfaceContext::new(0).is_err());
    assert!(curve_class(&ctx, &bi(0), &bi(0)).is_err());
    assert!(intersect_bundle(&ctx, &NSClass::f1(), &bi(2), &bi(4)).is_err());
    assert!(CurveClass::new(&ctx, 0, 0).is_err());
}
